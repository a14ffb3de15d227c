pub mod classes;
pub mod codes;
pub mod error;
pub mod field;
pub mod forms;
pub mod geometry;
pub mod hermitian;
pub mod linalg;
pub mod poly;
pub mod theorems;

pub use error::{Error, Result};
