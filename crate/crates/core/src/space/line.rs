use num_traits::{Signed, Zero};

use super::SphereOracle;
use crate::rat::{is_integer, Rat};
use crate::surd::Surd;

/// The integers or the rationals with `|x - y|`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LineOracle {
    integral: bool,
}

impl LineOracle {
    pub fn integers() -> Self {
        LineOracle { integral: true }
    }

    pub fn rationals() -> Self {
        LineOracle { integral: false }
    }

    pub fn contains(&self, x: &Rat) -> bool {
        !self.integral || is_integer(x)
    }
}

impl SphereOracle for LineOracle {
    type Point = Rat;
    type Dist = Surd;

    fn dist(&self, x: &Rat, y: &Rat) -> Surd {
        Surd::from_rat((x - y).abs())
    }

    fn sphere(&self, c: &Rat, r: &Surd) -> Vec<Rat> {
        let Some(r) = r.as_rat() else { return vec![] };
        if r.is_negative() || !self.contains(c) || !self.contains(r) {
            return vec![];
        }
        if r.is_zero() {
            return vec![c.clone()];
        }
        vec![c - r, c + r]
    }
}
