//! Detectors for misleading attribution patterns.
//!
//! An attribution misleads when it disagrees with relevancy: a feature that
//! appears in no explanation gets weight, a feature that appears in some
//! explanation gets none, or an irrelevant feature outranks a relevant one.
//! The four issue predicates, the top/bottom-K ranking diagnostics, and the
//! pairwise-order comparator below all reduce to exact comparisons between
//! rationals, so a verdict is never an artifact of rounding.

use crate::rational::Rational;
use crate::sets::FeatureSet;
use crate::shapley::ShapleyVector;
use crate::{Error, Result};

/// Which misleadingness conditions an instance exhibits.
///
/// - `i1`: some irrelevant feature has nonzero attribution.
/// - `i2`: some irrelevant feature has strictly larger magnitude than some
///   relevant one.
/// - `i3`: some relevant feature has zero attribution.
/// - `i4`: both `i1` and `i3` at once.
///
/// Witnesses are the smallest qualifying indices (pairs scan the irrelevant
/// index first), so reports are deterministic.
#[derive(Clone, Copy, PartialEq, Eq, Debug, serde::Serialize)]
pub struct IssueReport {
    pub i1: bool,
    pub i2: bool,
    pub i3: bool,
    pub i4: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub i1_witness: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub i2_witness: Option<(usize, usize)>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub i3_witness: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub i4_witness: Option<(usize, usize)>,
}

/// Checks an attribution vector against the relevancy set.
pub fn detect_issues(sv: &ShapleyVector, relevant: FeatureSet) -> IssueReport {
    let m = sv.arity();
    let rel: Vec<usize> = (1..=m).filter(|&i| relevant.contains(i)).collect();
    let irr: Vec<usize> = (1..=m).filter(|&i| !relevant.contains(i)).collect();

    let i1_witness = irr.iter().copied().find(|&i| !sv.get(i).is_zero());
    let i3_witness = rel.iter().copied().find(|&i| sv.get(i).is_zero());
    let i2_witness = irr.iter().copied().find_map(|i| {
        rel.iter()
            .copied()
            .find(|&r| sv.get(i).abs() > sv.get(r).abs())
            .map(|r| (i, r))
    });
    let i4_witness = i1_witness.zip(i3_witness);

    IssueReport {
        i1: i1_witness.is_some(),
        i2: i2_witness.is_some(),
        i3: i3_witness.is_some(),
        i4: i4_witness.is_some(),
        i1_witness,
        i2_witness,
        i3_witness,
        i4_witness,
    }
}

/// Whether every irrelevant feature outweighs every relevant one in
/// magnitude. False when either side is empty.
pub fn all_irrelevant_dominate(sv: &ShapleyVector, relevant: FeatureSet) -> bool {
    let m = sv.arity();
    let rel: Vec<Rational> = (1..=m)
        .filter(|&i| relevant.contains(i))
        .map(|i| sv.get(i).abs())
        .collect();
    let irr: Vec<Rational> = (1..=m)
        .filter(|&i| !relevant.contains(i))
        .map(|i| sv.get(i).abs())
        .collect();
    if rel.is_empty() || irr.is_empty() {
        return false;
    }
    let max_rel = rel.iter().max().unwrap();
    irr.iter().all(|v| v > max_rel)
}

/// What a score means for ranking purposes.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Default)]
pub enum RankingMode {
    /// Rank by magnitude (the usual reading of attribution strength).
    #[default]
    Absolute,
    /// Rank by the signed value itself.
    Signed,
}

impl RankingMode {
    fn key(self, v: Rational) -> Rational {
        match self {
            RankingMode::Absolute => v.abs(),
            RankingMode::Signed => v,
        }
    }

    fn key_f64(self, v: f64) -> f64 {
        match self {
            RankingMode::Absolute => v.abs(),
            RankingMode::Signed => v,
        }
    }
}

/// Features (1-based) from strongest to weakest. Ties break toward the
/// smaller feature index, so the ranking is a deterministic permutation.
pub fn rank_features(scores: &[Rational], mode: RankingMode) -> Vec<usize> {
    let mut order: Vec<usize> = (1..=scores.len()).collect();
    order.sort_by(|&a, &b| {
        mode.key(scores[b - 1])
            .cmp(&mode.key(scores[a - 1]))
            .then(a.cmp(&b))
    });
    order
}

/// [`rank_features`] over floating-point scores. Intended for finite
/// scores; comparisons involving NaN fall back to the index tiebreak.
pub fn rank_features_f64(scores: &[f64], mode: RankingMode) -> Vec<usize> {
    let mut order: Vec<usize> = (1..=scores.len()).collect();
    order.sort_by(|&a, &b| {
        mode.key_f64(scores[b - 1])
            .partial_cmp(&mode.key_f64(scores[a - 1]))
            .unwrap_or(std::cmp::Ordering::Equal)
            .then(a.cmp(&b))
    });
    order
}

/// How relevancy lines up with the top and bottom of a ranking.
#[derive(Clone, Copy, PartialEq, Eq, Debug, serde::Serialize)]
pub struct RankingDiagnostics {
    pub k: usize,
    /// Some irrelevant feature scores strictly above some relevant one.
    pub out_of_order: bool,
    /// A relevant feature sits in the bottom K while some irrelevant
    /// feature scores strictly above it.
    pub exists_r_in_botk: bool,
    /// Relevant features form a majority of the bottom K, and the pair
    /// above exists.
    pub maj_r_in_botk: bool,
    /// An irrelevant feature sits in the top K while scoring strictly
    /// above some relevant feature.
    pub exists_i_in_topk: bool,
    /// Irrelevant features form a majority of the top K, and the pair
    /// above exists.
    pub maj_i_in_topk: bool,
}

/// Evaluates the top/bottom-K flags for an attribution vector.
pub fn ranking_diagnostics(
    sv: &ShapleyVector,
    relevant: FeatureSet,
    k: usize,
    mode: RankingMode,
) -> Result<RankingDiagnostics> {
    let m = sv.arity();
    if k < 1 || k > m {
        return Err(Error::KOutOfRange(k, m));
    }
    let key = |i: usize| mode.key(sv.get(i));
    let rel: Vec<usize> = (1..=m).filter(|&i| relevant.contains(i)).collect();
    let irr: Vec<usize> = (1..=m).filter(|&i| !relevant.contains(i)).collect();

    let out_of_order = irr
        .iter()
        .any(|&i| rel.iter().any(|&r| key(i) > key(r)));

    let ranking = rank_features(sv.values(), mode);
    let topk = &ranking[..k];
    let botk = &ranking[m - k..];

    let exists_r_in_botk = botk
        .iter()
        .any(|&r| relevant.contains(r) && irr.iter().any(|&i| key(i) > key(r)));
    let rel_in_botk = botk.iter().filter(|&&r| relevant.contains(r)).count();
    let maj_r_in_botk = rel_in_botk * 2 > k && exists_r_in_botk;

    let exists_i_in_topk = topk
        .iter()
        .any(|&i| !relevant.contains(i) && rel.iter().any(|&r| key(i) > key(r)));
    let irr_in_topk = topk.iter().filter(|&&i| !relevant.contains(i)).count();
    let maj_i_in_topk = irr_in_topk * 2 > k && exists_i_in_topk;

    Ok(RankingDiagnostics {
        k,
        out_of_order,
        exists_r_in_botk,
        maj_r_in_botk,
        exists_i_in_topk,
        maj_i_in_topk,
    })
}

/// Pairwise order agreement between a candidate attribution and an exact
/// reference.
#[derive(Clone, Copy, PartialEq, Eq, Debug, serde::Serialize)]
pub struct WrongPairs {
    /// Strictly ordered reference pairs the candidate fails to reproduce.
    pub wrong: u64,
    /// Reference pairs with strictly different magnitudes.
    pub total: u64,
}

/// Counts reference pairs `|ref_i| > |ref_j|` where the candidate does not
/// also satisfy `|cand_i| > |cand_j|`. Pairs tied in the reference are
/// skipped, so any order-preserving rescaling of the reference scores
/// zero wrong pairs.
pub fn wrong_pairs(candidate: &[f64], reference: &[Rational]) -> Result<WrongPairs> {
    if candidate.len() != reference.len() {
        return Err(Error::LengthMismatch {
            candidate: candidate.len(),
            reference: reference.len(),
        });
    }
    let mut wrong = 0;
    let mut total = 0;
    for i in 0..reference.len() {
        for j in 0..reference.len() {
            if i == j {
                continue;
            }
            if reference[i].abs() > reference[j].abs() {
                total += 1;
                if !(candidate[i].abs() > candidate[j].abs()) {
                    wrong += 1;
                }
            }
        }
    }
    Ok(WrongPairs { wrong, total })
}

/// Parses a per-feature score file: one `feature,score` line per feature,
/// with an optional `feature,score` header. Features must cover 1..=n
/// exactly once; scores must be finite. Returns scores indexed by feature.
pub fn parse_attribution(text: &str) -> Result<Vec<f64>> {
    let mut entries: Vec<(usize, f64, usize)> = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        let mut parts = line.splitn(2, ',');
        let (left, right) = (
            parts.next().unwrap_or("").trim(),
            parts.next().unwrap_or("").trim(),
        );
        let parsed = left
            .parse::<usize>()
            .ok()
            .zip(right.parse::<f64>().ok());
        match parsed {
            Some((feature, score)) => {
                if !score.is_finite() {
                    return Err(Error::AttributionFormat {
                        line: lineno + 1,
                        msg: format!("score for feature {feature} is not finite"),
                    });
                }
                entries.push((feature, score, lineno + 1));
            }
            None if lineno == 0 => {} // header row
            None => {
                return Err(Error::AttributionFormat {
                    line: lineno + 1,
                    msg: format!("expected `feature,score`, got `{line}`"),
                });
            }
        }
    }
    if entries.is_empty() {
        return Err(Error::AttributionFormat {
            line: 1,
            msg: "no feature scores found".into(),
        });
    }
    let n = entries.len();
    let mut out = vec![None; n];
    for (feature, score, lineno) in entries {
        if feature < 1 || feature > n {
            return Err(Error::AttributionFormat {
                line: lineno,
                msg: format!("feature {feature} out of range 1..={n}"),
            });
        }
        if out[feature - 1].replace(score).is_some() {
            return Err(Error::AttributionFormat {
                line: lineno,
                msg: format!("duplicate entry for feature {feature}"),
            });
        }
    }
    Ok(out.into_iter().map(Option::unwrap).collect())
}
