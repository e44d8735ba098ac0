//! Exact and p-adic computations around Mazur–Tate elements of rational
//! elliptic curves over real abelian fields.
//!
//! The crate is organised bottom-up: [`arith`] (rationals, cyclotomic
//! fields, elementary number theory), [`linalg`], [`elliptic`],
//! [`characters`], [`modsym`], [`grouprings`], [`lvalues`], [`theta`] and
//! [`padic`].

pub mod arith;
pub mod characters;
pub mod elliptic;
pub mod grouprings;
pub mod linalg;
pub mod lvalues;
pub mod modsym;
pub mod padic;
pub mod theta;
