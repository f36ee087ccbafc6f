pub mod chain;
pub mod eval;
pub mod search;
pub mod sweep;
pub mod verify;
