//! Exact computations for Banakh metric spaces: metric spaces in which every nonempty
//! sphere of positive radius `r` consists of exactly two points at distance `2r`.

pub mod builder;
pub mod graph;
pub mod group;
pub mod io;
pub mod monoid;
pub mod rat;
pub mod space;
pub mod surd;

pub use rat::Rat;
pub use surd::Surd;
