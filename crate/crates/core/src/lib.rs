//! Schur superalgebras `S(m|n,d)` and their quantum analogues, realized as
//! images of enveloping (super)algebras acting on tensor space.

pub mod kostant;
pub mod linalg;
pub mod matrix;
pub mod qalgebra;
pub mod qfield;
pub mod qreplift;
pub mod scalar;
pub mod superroot;
pub mod replift;
pub mod report;
