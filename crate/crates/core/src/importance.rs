//! Explanation-based feature importance.
//!
//! Instead of attributing the prediction through a cooperative game, score
//! each feature by the abductive explanations it appears in: every
//! explanation distributes one unit of weight among its members (or a
//! size-discounted unit under the alternative rule). A feature scores
//! above zero exactly when it is relevant, so these scores cannot exhibit
//! the attribution pathologies tracked in [`crate::audit`].

use crate::rational::Rational;
use crate::sets::FeatureSet;
use serde::ser::SerializeSeq;

/// How much one explanation of size k contributes to each of its members.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Default)]
pub enum WeightRule {
    /// 1/k — the explanation splits one unit evenly.
    #[default]
    ReciprocalSize,
    /// 1/2^k — smaller explanations dominate outright.
    ReciprocalPow2,
}

impl WeightRule {
    fn weight(self, k: usize) -> Rational {
        match self {
            WeightRule::ReciprocalSize => Rational::new(1, k as i64),
            WeightRule::ReciprocalPow2 => Rational::new(1, 1i64 << k),
        }
    }
}

/// Per-feature explanation scores.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ImportanceVector {
    scores: Vec<Rational>,
}

impl ImportanceVector {
    pub fn arity(&self) -> usize {
        self.scores.len()
    }

    /// The score of feature `i` (1-based).
    pub fn get(&self, i: usize) -> Rational {
        self.scores[i - 1]
    }

    pub fn values(&self) -> &[Rational] {
        &self.scores
    }
}

/// Scores every feature from the explanation family.
///
/// Explanations are never empty for the instance problems this crate
/// builds, so the per-set weights are well defined.
pub fn axp_importance(axps: &[FeatureSet], m: usize, rule: WeightRule) -> ImportanceVector {
    let mut scores = vec![Rational::ZERO; m];
    for x in axps {
        let w = rule.weight(x.len());
        for i in x.iter() {
            scores[i - 1] = scores[i - 1] + w;
        }
    }
    ImportanceVector { scores }
}

impl serde::Serialize for ImportanceVector {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(serde::Serialize)]
        struct Entry {
            feature: usize,
            score: String,
            float: f64,
            relevant: bool,
        }
        let mut seq = serializer.serialize_seq(Some(self.scores.len()))?;
        for (idx, s) in self.scores.iter().enumerate() {
            seq.serialize_element(&Entry {
                feature: idx + 1,
                score: s.to_string(),
                float: s.to_f64(),
                relevant: !s.is_zero(),
            })?;
        }
        seq.end()
    }
}
