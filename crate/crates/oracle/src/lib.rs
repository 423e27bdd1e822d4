//! Deliberately naive reference implementations. Nothing here shares code
//! with the fast paths in `nilgeom` beyond reading structure constants.

pub mod closed_form;
pub mod dynkin;
pub mod enumerate;
pub mod lcs;
pub mod rewrite;
