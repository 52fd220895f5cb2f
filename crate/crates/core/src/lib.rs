pub mod generate;
pub mod groebner;
pub mod lattice;
pub mod order;
pub mod overlap;
pub mod path;
pub mod poly;
pub mod primitive;
