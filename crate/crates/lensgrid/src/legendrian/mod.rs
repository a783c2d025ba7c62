pub mod braid;
pub mod classical;
pub mod destab;
pub mod moves;
pub mod pentagon;
