//! Finite category theory for unrolling generalized Reedy categories:
//! composition tables, bounded free categories with normal forms, the
//! unrolled category `D_R → R`, Reedy axiom checkers, density and
//! cofibering criteria, and the tribe of finite categories.

pub mod cattribe;
pub mod error;
pub mod factcheck;
pub mod fincat;
pub mod format;
pub mod freecat;
pub mod reedy;
pub mod report;
pub mod unroll;
pub mod verify;
pub mod zoo;

pub use error::{Error, Result};
pub use report::CheckReport;
