pub mod arith;
pub mod classification;
pub mod deformation;
pub mod family;
pub mod linalg;
pub mod number_field;
pub mod padic;
pub mod poly;
pub mod s3;
