pub mod expr;
pub mod jet;
pub mod lorentz;
pub mod curve;
pub mod quad;
pub mod strip;
pub mod surface;
pub mod tol;
pub mod vjet;
