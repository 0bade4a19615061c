pub mod algebraic;
pub mod complex;
pub mod embed;
pub mod hypgeom;
pub mod pipeline;
pub mod spectral;
