//! Independent evaluators for checking relations: truncated real MZV sums
//! and finite MZVs modulo primes.

pub mod finite;
pub mod numeric;
pub mod verify;
