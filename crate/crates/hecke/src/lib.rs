//! Class groups, Hecke L-functions and zero statistics for imaginary
//! quadratic fields Q(sqrt(-q)).

pub mod arith;
pub mod cli;
pub mod convolution;
pub mod lfun;
pub mod quadforms;
pub mod special;
pub mod sum;
pub mod zeros;
