pub mod cf;
pub mod error;
pub mod input;
pub mod scalar;
pub mod surd;
pub mod series;
pub mod operator;
pub mod complex;
pub mod lindstedt;

pub use scalar::{MpReal, Real};

pub type Real32 = f32;
pub type Real64 = f64;
pub type Real128 = MpReal<128>;
pub type Real256 = MpReal<256>;
