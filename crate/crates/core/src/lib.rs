pub mod cli;
pub mod closedform;
pub mod error;
pub mod exactnum;
pub mod grassmann;
pub mod identities;
pub mod localization;
pub mod series;
pub use error::{Error, Result};
