//! Exhaustive audits over every Boolean function of a small arity.
//!
//! For a given m, enumerate all 2^(2^m) truth tables (function index n has
//! table bit `idx` equal to bit `idx` of n), run the full per-instance
//! pipeline on each of the 2^m instances, and aggregate issue and ranking
//! statistics. m = 4 is the last feasible rung: 65536 functions and about a
//! million instance analyses.
//!
//! Work is split into contiguous index ranges, one private summary per
//! worker, merged at the end. Every counter is a plain sum over instances
//! or functions, so the result is bit-identical for any worker count.

use crate::audit::{all_irrelevant_dominate, detect_issues, ranking_diagnostics, RankingMode};
use crate::explain::{relevancy_all, sigma_from_counts};
use crate::function::{BooleanFunction, Point};
use crate::problem::ExplanationProblem;
use crate::shapley::shapley_from_counts;
use crate::{Error, Result, MAX_SCAN_ARITY};

/// Parameters of one exhaustive scan.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct ScanConfig {
    pub m: usize,
    /// Skip the two constant functions (the default): their instances have
    /// no explanations, so every issue predicate is vacuous on them. When
    /// they are included they count toward the totals and contribute zero
    /// to every issue counter either way.
    pub exclude_constants: bool,
    /// Ranking depth for the top/bottom-K diagnostics.
    pub k: usize,
    pub workers: usize,
}

impl ScanConfig {
    pub fn new(m: usize) -> Self {
        ScanConfig {
            m,
            exclude_constants: true,
            k: 1,
            workers: 1,
        }
    }
}

/// Aggregated results of a scan. `with_*` counters tally functions with at
/// least one instance raising the issue; `instances_*` counters tally the
/// instances themselves.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct ScanSummary {
    pub m: usize,
    pub exclude_constants: bool,
    pub k: usize,
    /// Function indices enumerated, including skipped constants.
    pub functions_total: u64,
    /// Functions actually analyzed.
    pub functions_scanned: u64,
    pub with_i1: u64,
    pub with_i2: u64,
    pub with_i3: u64,
    pub with_i4: u64,
    pub instances_total: u64,
    pub instances_i1: u64,
    pub instances_i2: u64,
    pub instances_i3: u64,
    pub instances_i4: u64,
    pub instances_all_irrelevant_dominate: u64,
    pub instances_out_of_order: u64,
    pub instances_exists_r_in_botk: u64,
    pub instances_maj_r_in_botk: u64,
    pub instances_exists_i_in_topk: u64,
    pub instances_maj_i_in_topk: u64,
}

impl ScanSummary {
    /// The all-zero summary for a configuration; the identity of [`merge`].
    pub fn empty(cfg: &ScanConfig) -> Self {
        ScanSummary {
            m: cfg.m,
            exclude_constants: cfg.exclude_constants,
            k: cfg.k,
            functions_total: 0,
            functions_scanned: 0,
            with_i1: 0,
            with_i2: 0,
            with_i3: 0,
            with_i4: 0,
            instances_total: 0,
            instances_i1: 0,
            instances_i2: 0,
            instances_i3: 0,
            instances_i4: 0,
            instances_all_irrelevant_dominate: 0,
            instances_out_of_order: 0,
            instances_exists_r_in_botk: 0,
            instances_maj_r_in_botk: 0,
            instances_exists_i_in_topk: 0,
            instances_maj_i_in_topk: 0,
        }
    }

    /// Function-level percentages for i1..i4, on the scanned denominator,
    /// rounded to two decimals.
    pub fn pcts(&self) -> [f64; 4] {
        [self.with_i1, self.with_i2, self.with_i3, self.with_i4].map(|c| {
            if self.functions_scanned == 0 {
                0.0
            } else {
                let pct = 100.0 * c as f64 / self.functions_scanned as f64;
                (pct * 100.0).round() / 100.0
            }
        })
    }

    /// One header line plus one data row.
    pub fn to_csv(&self) -> String {
        let [p1, p2, p3, p4] = self.pcts();
        let header = "m,pct_i1,pct_i2,pct_i3,pct_i4,functions_total,functions_scanned,\
                      with_i1,with_i2,with_i3,with_i4,instances_total,instances_i1,\
                      instances_i2,instances_i3,instances_i4,\
                      instances_all_irrelevant_dominate,k,instances_out_of_order,\
                      instances_exists_r_in_botk,instances_maj_r_in_botk,\
                      instances_exists_i_in_topk,instances_maj_i_in_topk";
        format!(
            "{header}\n{},{p1:.2},{p2:.2},{p3:.2},{p4:.2},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{}\n",
            self.m,
            self.functions_total,
            self.functions_scanned,
            self.with_i1,
            self.with_i2,
            self.with_i3,
            self.with_i4,
            self.instances_total,
            self.instances_i1,
            self.instances_i2,
            self.instances_i3,
            self.instances_i4,
            self.instances_all_irrelevant_dominate,
            self.k,
            self.instances_out_of_order,
            self.instances_exists_r_in_botk,
            self.instances_maj_r_in_botk,
            self.instances_exists_i_in_topk,
            self.instances_maj_i_in_topk,
        )
    }
}

impl serde::Serialize for ScanSummary {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let [p1, p2, p3, p4] = self.pcts();
        let mut st = serializer.serialize_struct("ScanSummary", 22)?;
        st.serialize_field("m", &self.m)?;
        st.serialize_field("exclude_constants", &self.exclude_constants)?;
        st.serialize_field("k", &self.k)?;
        st.serialize_field("functions_total", &self.functions_total)?;
        st.serialize_field("functions_scanned", &self.functions_scanned)?;
        st.serialize_field("pct_i1", &p1)?;
        st.serialize_field("pct_i2", &p2)?;
        st.serialize_field("pct_i3", &p3)?;
        st.serialize_field("pct_i4", &p4)?;
        st.serialize_field("with_i1", &self.with_i1)?;
        st.serialize_field("with_i2", &self.with_i2)?;
        st.serialize_field("with_i3", &self.with_i3)?;
        st.serialize_field("with_i4", &self.with_i4)?;
        st.serialize_field("instances_total", &self.instances_total)?;
        st.serialize_field("instances_i1", &self.instances_i1)?;
        st.serialize_field("instances_i2", &self.instances_i2)?;
        st.serialize_field("instances_i3", &self.instances_i3)?;
        st.serialize_field("instances_i4", &self.instances_i4)?;
        st.serialize_field(
            "instances_all_irrelevant_dominate",
            &self.instances_all_irrelevant_dominate,
        )?;
        st.serialize_field("instances_out_of_order", &self.instances_out_of_order)?;
        st.serialize_field("instances_exists_r_in_botk", &self.instances_exists_r_in_botk)?;
        st.serialize_field("instances_maj_r_in_botk", &self.instances_maj_r_in_botk)?;
        st.serialize_field("instances_exists_i_in_topk", &self.instances_exists_i_in_topk)?;
        st.serialize_field("instances_maj_i_in_topk", &self.instances_maj_i_in_topk)?;
        st.end()
    }
}

/// Component-wise sum of two summaries over the same configuration.
pub fn merge(a: &ScanSummary, b: &ScanSummary) -> Result<ScanSummary> {
    if a.m != b.m {
        return Err(Error::ConfigMismatch("m"));
    }
    if a.exclude_constants != b.exclude_constants {
        return Err(Error::ConfigMismatch("exclude_constants"));
    }
    if a.k != b.k {
        return Err(Error::ConfigMismatch("k"));
    }
    Ok(ScanSummary {
        m: a.m,
        exclude_constants: a.exclude_constants,
        k: a.k,
        functions_total: a.functions_total + b.functions_total,
        functions_scanned: a.functions_scanned + b.functions_scanned,
        with_i1: a.with_i1 + b.with_i1,
        with_i2: a.with_i2 + b.with_i2,
        with_i3: a.with_i3 + b.with_i3,
        with_i4: a.with_i4 + b.with_i4,
        instances_total: a.instances_total + b.instances_total,
        instances_i1: a.instances_i1 + b.instances_i1,
        instances_i2: a.instances_i2 + b.instances_i2,
        instances_i3: a.instances_i3 + b.instances_i3,
        instances_i4: a.instances_i4 + b.instances_i4,
        instances_all_irrelevant_dominate: a.instances_all_irrelevant_dominate
            + b.instances_all_irrelevant_dominate,
        instances_out_of_order: a.instances_out_of_order + b.instances_out_of_order,
        instances_exists_r_in_botk: a.instances_exists_r_in_botk + b.instances_exists_r_in_botk,
        instances_maj_r_in_botk: a.instances_maj_r_in_botk + b.instances_maj_r_in_botk,
        instances_exists_i_in_topk: a.instances_exists_i_in_topk + b.instances_exists_i_in_topk,
        instances_maj_i_in_topk: a.instances_maj_i_in_topk + b.instances_maj_i_in_topk,
    })
}

/// Scans one contiguous range of function indices.
pub(crate) fn scan_range(cfg: &ScanConfig, start: u64, end: u64) -> ScanSummary {
    let m = cfg.m;
    let points = 1u32 << m;
    let last = (1u64 << points) - 1;
    let mut acc = ScanSummary::empty(cfg);
    for n in start..end {
        acc.functions_total += 1;
        let constant = n == 0 || n == last;
        if constant && cfg.exclude_constants {
            continue;
        }
        acc.functions_scanned += 1;
        if constant {
            // Included for the totals only: no explanations exist, every
            // attribution is zero, no issue can arise.
            acc.instances_total += points as u64;
            continue;
        }
        let f = BooleanFunction::from_bits(m, n).expect("scan arity validated");
        let (mut f1, mut f2, mut f3, mut f4) = (false, false, false, false);
        for idx in 0..points {
            let v = Point::from_index(m, idx).expect("index in range");
            let e = ExplanationProblem::new(&f, v).expect("non-constant");
            let counts = e.agreement_ones();
            let sv = shapley_from_counts(&counts, m);
            let sigma = sigma_from_counts(&counts, m, e.class());
            let relevant = relevancy_all(&sigma);
            let report = detect_issues(&sv, relevant);
            let diag = ranking_diagnostics(&sv, relevant, cfg.k, RankingMode::Absolute)
                .expect("k validated");
            acc.instances_total += 1;
            acc.instances_i1 += report.i1 as u64;
            acc.instances_i2 += report.i2 as u64;
            acc.instances_i3 += report.i3 as u64;
            acc.instances_i4 += report.i4 as u64;
            acc.instances_all_irrelevant_dominate +=
                all_irrelevant_dominate(&sv, relevant) as u64;
            acc.instances_out_of_order += diag.out_of_order as u64;
            acc.instances_exists_r_in_botk += diag.exists_r_in_botk as u64;
            acc.instances_maj_r_in_botk += diag.maj_r_in_botk as u64;
            acc.instances_exists_i_in_topk += diag.exists_i_in_topk as u64;
            acc.instances_maj_i_in_topk += diag.maj_i_in_topk as u64;
            f1 |= report.i1;
            f2 |= report.i2;
            f3 |= report.i3;
            f4 |= report.i4;
        }
        acc.with_i1 += f1 as u64;
        acc.with_i2 += f2 as u64;
        acc.with_i3 += f3 as u64;
        acc.with_i4 += f4 as u64;
    }
    acc
}

/// Runs the exhaustive scan described by the configuration.
pub fn scan_functions(cfg: &ScanConfig) -> Result<ScanSummary> {
    let m = cfg.m;
    if m < 1 || m > MAX_SCAN_ARITY {
        return Err(Error::ScanArityOutOfRange(m));
    }
    if cfg.k < 1 || cfg.k > m {
        return Err(Error::KOutOfRange(cfg.k, m));
    }
    if cfg.workers == 0 {
        return Err(Error::NoWorkers);
    }
    let total = 1u64 << (1u32 << m);
    let workers = cfg.workers.min(total as usize) as u64;
    if workers == 1 {
        return Ok(scan_range(cfg, 0, total));
    }
    let chunk = total.div_ceil(workers);
    let mut parts: Vec<ScanSummary> = Vec::with_capacity(workers as usize);
    std::thread::scope(|s| {
        let handles: Vec<_> = (0..workers)
            .map(|w| {
                let start = w * chunk;
                let end = total.min(start + chunk);
                s.spawn(move || scan_range(cfg, start, end))
            })
            .collect();
        for h in handles {
            parts.push(h.join().expect("scan worker panicked"));
        }
    });
    let mut acc = ScanSummary::empty(cfg);
    for part in &parts {
        acc = merge(&acc, part)?;
    }
    Ok(acc)
}
