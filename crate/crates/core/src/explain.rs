//! Abductive and contrastive explanations.
//!
//! A feature set S is *sufficient* for an instance if fixing S at the
//! instance point forces the prediction on the whole remaining subcube.
//! Sufficiency is monotone, so its minimal sets — the abductive
//! explanations (AXps) — can be read off with an immediate-predecessor
//! test. Contrastive explanations (CXps) are the minimal sets whose
//! release allows the prediction to change; they are the minimal true
//! points of the dual predicate and the minimal hitting sets of the AXps.

use crate::problem::ExplanationProblem;
use crate::sets::FeatureSet;
use serde::ser::{SerializeSeq, SerializeStruct};

/// The sufficiency predicate of one instance, tabulated over all 2^m
/// feature sets.
#[derive(Clone, Debug)]
pub struct SigmaTable {
    m: usize,
    bits: Vec<u64>,
}

impl SigmaTable {
    pub fn arity(&self) -> usize {
        self.m
    }

    /// Whether fixing `s` at the instance point forces the prediction.
    pub fn get(&self, s: FeatureSet) -> bool {
        let idx = s.mask() as usize;
        debug_assert!(idx < 1 << self.m);
        self.bits[idx / 64] >> (idx % 64) & 1 == 1
    }
}

pub(crate) fn sigma_from_counts(counts: &[u64], m: usize, class: bool) -> SigmaTable {
    let n = 1usize << m;
    let mut bits = vec![0u64; n.div_ceil(64)];
    for s in 0..n {
        let size = 1u64 << (m - (s as u32).count_ones() as usize);
        let sufficient = if class {
            counts[s] == size
        } else {
            counts[s] == 0
        };
        if sufficient {
            bits[s / 64] |= 1u64 << (s % 64);
        }
    }
    SigmaTable { m, bits }
}

/// Tabulates sufficiency for every feature set of an instance.
///
/// A set is sufficient exactly when every point of its subcube keeps the
/// predicted class, i.e. when the subcube's count of 1-points is all of it
/// (class 1) or none of it (class 0).
pub fn sigma_build(e: &ExplanationProblem) -> SigmaTable {
    sigma_from_counts(&e.agreement_ones(), e.arity(), e.class())
}

/// Sufficiency decided straight from the definition, by scanning the
/// subcube. Independent of [`sigma_build`] on purpose: the two routes
/// cross-check each other in tests.
pub fn waxp(e: &ExplanationProblem, s: FeatureSet) -> bool {
    let m = e.arity();
    let pmask = s.point_mask(m);
    let free = (1u32 << m) - 1 & !pmask;
    let base = e.point().index() & pmask;
    let mut sub = free;
    loop {
        if e.function().bit(base | sub) != e.class() {
            return false;
        }
        if sub == 0 {
            return true;
        }
        sub = (sub - 1) & free;
    }
}

/// Whether releasing `y` (fixing everything else) lets the prediction
/// change.
pub fn wcxp(e: &ExplanationProblem, y: FeatureSet) -> bool {
    !waxp(e, y.complement(e.arity()))
}

fn minimal_true_points(
    m: usize,
    pred: impl Fn(FeatureSet) -> bool,
) -> Vec<FeatureSet> {
    let mut out = Vec::new();
    for mask in 0..1u32 << m {
        let s = FeatureSet::from_mask(mask);
        if pred(s) && s.iter().all(|b| !pred(s.remove(b))) {
            out.push(s);
        }
    }
    out.sort_by_key(|s| (s.len(), s.mask()));
    out
}

/// All abductive explanations, in ascending cardinality and, within a
/// cardinality, ascending mask order.
pub fn enumerate_axps(sigma: &SigmaTable) -> Vec<FeatureSet> {
    minimal_true_points(sigma.m, |s| sigma.get(s))
}

/// All contrastive explanations, in the same order.
pub fn enumerate_cxps(sigma: &SigmaTable) -> Vec<FeatureSet> {
    minimal_true_points(sigma.m, |y| !sigma.get(y.complement(sigma.m)))
}

/// Whether feature `i` ever changes sufficiency, i.e. appears in some
/// explanation.
pub fn relevant(sigma: &SigmaTable, i: usize) -> bool {
    let m = sigma.m;
    debug_assert!((1..=m).contains(&i));
    for mask in 0..1u32 << m {
        if mask >> (i - 1) & 1 != 0 {
            continue;
        }
        let w = FeatureSet::from_mask(mask);
        if !sigma.get(w) && sigma.get(w.insert(i)) {
            return true;
        }
    }
    false
}

/// The set of relevant features.
pub fn relevancy_all(sigma: &SigmaTable) -> FeatureSet {
    FeatureSet::from_features((1..=sigma.m).filter(|&i| relevant(sigma, i)))
}

/// Both explanation families of an instance, plus the relevancy set.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ExplanationSet {
    pub axps: Vec<FeatureSet>,
    pub cxps: Vec<FeatureSet>,
    pub relevant: FeatureSet,
}

impl ExplanationSet {
    pub fn build(e: &ExplanationProblem) -> Self {
        let sigma = sigma_build(e);
        ExplanationSet {
            axps: enumerate_axps(&sigma),
            cxps: enumerate_cxps(&sigma),
            relevant: relevancy_all(&sigma),
        }
    }
}

fn feature_lists<S: serde::Serializer>(
    sets: &[FeatureSet],
    serializer: S,
) -> std::result::Result<S::Ok, S::Error> {
    let mut seq = serializer.serialize_seq(Some(sets.len()))?;
    for s in sets {
        seq.serialize_element(&s.iter().collect::<Vec<_>>())?;
    }
    seq.end()
}

impl serde::Serialize for ExplanationSet {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        struct Lists<'a>(&'a [FeatureSet]);
        impl serde::Serialize for Lists<'_> {
            fn serialize<S: serde::Serializer>(
                &self,
                serializer: S,
            ) -> std::result::Result<S::Ok, S::Error> {
                feature_lists(self.0, serializer)
            }
        }
        let mut st = serializer.serialize_struct("ExplanationSet", 3)?;
        st.serialize_field("axps", &Lists(&self.axps))?;
        st.serialize_field("cxps", &Lists(&self.cxps))?;
        st.serialize_field("relevant", &self.relevant.iter().collect::<Vec<_>>())?;
        st.end()
    }
}
