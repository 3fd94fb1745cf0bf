//! Quotients of the free metabelian group: free nilpotent of class 2 and the
//! lamplighter groups `Z^d wr H` for cyclic `H`.
//!
//! The abelian quotient is the endpoint of a word's path
//! ([`Word::abelianization`](crate::Word::abelianization)) and the free group
//! is handled by [`free_reduce`](crate::free_reduce).

mod lamplighter;
mod nilpotent;

pub use lamplighter::{ll_eval, ll_project, LampGroupSpec, LamplighterElement};
pub use nilpotent::{nil_eval, nil_inv, nil_mul, nil_project, NilpotentElement};
