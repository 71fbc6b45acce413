pub mod error;
pub mod exact;
pub mod hg;
pub mod accessory;
pub mod series;
pub mod df;
pub mod sampling;
pub mod verify;

pub use error::{Error, Result};
