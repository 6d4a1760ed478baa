//! Exact game-theoretic attributions for classifier instances.
//!
//! The characteristic value of a feature set S is the average prediction
//! over the subcube that fixes S at the instance point. Each feature's
//! attribution is the usual factorial-weighted sum of its marginal
//! contributions over all subsets of the remaining features.
//!
//! Everything is computed in integer arithmetic: every term is scaled onto
//! the common denominator m!·2^m, accumulated in i128, and reduced once at
//! the end. Floating point is deliberately kept out of this module — sums
//! of tiny binary fractions carry enough rounding error to flip equality
//! and ordering tests downstream, which is exactly what this crate exists
//! to measure.

use crate::problem::ExplanationProblem;
use crate::rational::Rational;
use crate::sets::FeatureSet;
use crate::{Error, Result, HARD_MAX_ARITY};

/// 0! through 20!. 20! is the largest factorial that fits in i64, which is
/// what pins [`HARD_MAX_ARITY`].
pub(crate) const FACTORIALS: [i64; HARD_MAX_ARITY + 1] = {
    let mut t = [1i64; HARD_MAX_ARITY + 1];
    let mut i = 1;
    while i <= HARD_MAX_ARITY {
        t[i] = t[i - 1] * i as i64;
        i += 1;
    }
    t
};

/// Average prediction over the points that agree with the instance on `s`.
pub fn phi(e: &ExplanationProblem, s: FeatureSet) -> Rational {
    let m = e.arity();
    let pmask = s.point_mask(m);
    let free = (1u32 << m) - 1 & !pmask;
    let base = e.point().index() & pmask;
    let mut ones: i128 = 0;
    // Walk the subcube by enumerating submasks of the free positions.
    let mut sub = free;
    loop {
        ones += e.function().bit(base | sub) as i128;
        if sub == 0 {
            break;
        }
        sub = (sub - 1) & free;
    }
    Rational::reduced(ones, 1i128 << (m - s.len()))
}

/// All m attributions for an instance.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ShapleyVector {
    values: Vec<Rational>,
}

impl ShapleyVector {
    pub fn arity(&self) -> usize {
        self.values.len()
    }

    /// The attribution of feature `i` (1-based).
    pub fn get(&self, i: usize) -> Rational {
        self.values[i - 1]
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }
}

fn numerator_for(counts: &[u64], m: usize, i: usize) -> i128 {
    let bit = 1u32 << (i - 1);
    let full = (1u32 << m) - 1;
    let mut num: i128 = 0;
    for s in 0..=full {
        if s & bit != 0 {
            continue;
        }
        let k = s.count_ones() as usize;
        let weight = FACTORIALS[k] as i128 * FACTORIALS[m - 1 - k] as i128;
        let with = counts[(s | bit) as usize] as i128;
        let without = counts[s as usize] as i128;
        num += weight * ((with << (k + 1)) - (without << k));
    }
    num
}

pub(crate) fn shapley_from_counts(counts: &[u64], m: usize) -> ShapleyVector {
    let den = FACTORIALS[m] as i128 * (1i128 << m);
    let values = (1..=m)
        .map(|i| Rational::reduced(numerator_for(counts, m, i), den))
        .collect();
    ShapleyVector { values }
}

/// Computes every feature's attribution in one pass over the agreement
/// counts.
pub fn shapley_all(e: &ExplanationProblem) -> ShapleyVector {
    shapley_from_counts(&e.agreement_ones(), e.arity())
}

/// The attribution of a single feature.
pub fn shapley_value(e: &ExplanationProblem, i: usize) -> Result<Rational> {
    let m = e.arity();
    if i < 1 || i > m {
        return Err(Error::FeatureOutOfRange(i, m));
    }
    let counts = e.agreement_ones();
    let den = FACTORIALS[m] as i128 * (1i128 << m);
    Ok(Rational::reduced(numerator_for(&counts, m, i), den))
}

impl serde::Serialize for ShapleyVector {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeSeq;
        #[derive(serde::Serialize)]
        struct Entry {
            feature: usize,
            numerator: i64,
            denominator: i64,
            float: f64,
        }
        let mut seq = serializer.serialize_seq(Some(self.values.len()))?;
        for (idx, v) in self.values.iter().enumerate() {
            seq.serialize_element(&Entry {
                feature: idx + 1,
                numerator: v.numerator(),
                denominator: v.denominator(),
                float: v.to_f64(),
            })?;
        }
        seq.end()
    }
}
