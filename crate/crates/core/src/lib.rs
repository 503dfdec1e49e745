pub mod autcheck;
pub mod bits;
pub mod bivar;
pub mod census;
pub mod ellcurve;
pub mod error;
pub mod funcfield;
pub mod gf2m;
pub mod group;
pub mod places;
pub mod plane;
pub mod poly;
pub mod ratfun;
pub mod residue;
pub mod series;
pub mod text;
pub mod tower;

pub use error::{Error, Result};
