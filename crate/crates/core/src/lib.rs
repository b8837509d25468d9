pub mod exactmath;
pub mod projgroup;
pub mod catalog;
pub mod invariants;
pub mod netlab;
pub mod birational;
pub mod verify;
