pub mod cyc12;
pub mod jones_poly;
pub mod laurent;
pub mod omega;

pub use cyc12::Cyc12;
pub use jones_poly::{to_jones_units, HalfRoot, JonesPoly};
pub use laurent::LaurentPoly;
pub use omega::{classify_omega, classify_omega_capped, realize, OmegaClass, DEFAULT_D_CAP};
