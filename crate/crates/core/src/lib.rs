pub mod cf;
pub mod cli;
pub mod error;
pub mod exactnum;
pub mod forms;
pub mod hypgeo;
pub mod markov;
pub mod moebius;

pub use error::{Error, Result};
pub use exactnum::{QuadExt, Rational};
pub mod teich;
pub mod render;
pub mod verify;
