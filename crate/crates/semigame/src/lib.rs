//! Compiler and exact verifier for certified semi-algebraic sets as
//! equilibrium projections of binary games.

pub mod algebraic;
pub mod bounds;
pub mod cert;
pub mod compile;
pub mod export;
pub mod formula;
pub mod game;
pub mod integer;
pub mod interval;
pub mod numeric;
pub mod parse;
pub mod poly;
pub mod rational;
pub mod unipoly;
pub mod replay;
pub mod verify;
