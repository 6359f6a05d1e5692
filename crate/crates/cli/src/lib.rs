//! Catalog of worked examples, the verification suite and the input
//! plumbing behind the `graphflow` binary.

pub mod catalog;
pub mod input;
pub mod verify;
