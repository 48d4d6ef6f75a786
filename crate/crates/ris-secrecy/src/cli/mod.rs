//! Command-line surface. (in progress)
pub fn placeholder() {}
