pub mod capacity;
pub mod cli;
pub mod error;
pub mod field;
pub mod instances;
pub mod limits;
pub mod lp;
pub mod matrix;
pub mod model;
pub mod nsumbox;
pub mod oracle;
pub mod rational;
pub mod scheme;

pub use error::{Error, Result};
