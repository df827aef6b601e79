//! Signed, labelled fat graphs on compact surfaces and the combinatorial
//! checks used to rule out pairs of intersection graphs.

pub mod surface;
pub mod pair;
pub mod blocks;
pub mod detect;
pub mod io;
pub mod lemmas;
pub mod enumerate;
