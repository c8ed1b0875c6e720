//! Well-balanced path-conservative central-upwind schemes for the rotating
//! shallow-water MHD equations in one and two dimensions.

pub mod cubic;
pub mod diagnostics;
pub mod error;
pub mod experiment;
pub mod field;
pub mod grid;
pub mod line;
pub mod model;
pub mod reconstruct;
pub mod solver1d;
pub mod solver2d;
pub mod timeint;
pub mod topography;
pub mod verification;

pub use error::{Error, Result};
