pub mod algebra;
pub mod error;
pub mod groebner;
pub mod mixed;
pub mod parser;
pub mod rational;
pub mod lattice;
pub mod polar;
pub mod discgeom;
pub mod thomprobe;
pub mod milnor;
pub mod fixture;
pub mod report;
