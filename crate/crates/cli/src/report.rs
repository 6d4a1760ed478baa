//! JSON shapes emitted by the CLI.
//!
//! Field order is fixed by struct order, so reports diff cleanly across
//! runs. Everything the flag fields claim can be recomputed from the raw
//! values also present in the report.

use serde::Serialize;

use svaudit_core::{
    axp_importance, detect_issues, rank_features, ranking_diagnostics, ExplanationProblem,
    ExplanationSet, FeatureSet, ImportanceVector, IssueReport, RankingDiagnostics, RankingMode,
    ShapleyVector, WeightRule,
};

#[derive(Serialize)]
pub struct FunctionEcho {
    pub arity: usize,
    pub truth_table: String,
    pub ones: u64,
}

#[derive(Serialize)]
pub struct InstanceEcho {
    pub point: String,
    pub class: u8,
}

#[derive(Serialize)]
pub struct Relevancy {
    pub relevant: Vec<usize>,
    pub irrelevant: Vec<usize>,
}

/// Everything `analyze` knows about one instance, in one document.
#[derive(Serialize)]
pub struct AnalysisReport {
    pub function: FunctionEcho,
    pub instance: InstanceEcho,
    pub shapley: ShapleyVector,
    pub relevancy: Relevancy,
    pub axps: Vec<Vec<usize>>,
    pub cxps: Vec<Vec<usize>>,
    pub importance: ImportanceVector,
    pub issues: IssueReport,
    pub ranking: Vec<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub diagnostics: Option<RankingDiagnostics>,
}

fn feature_lists(sets: &[FeatureSet]) -> Vec<Vec<usize>> {
    sets.iter().map(|s| s.iter().collect()).collect()
}

pub fn build_report(
    problem: &ExplanationProblem<'_>,
    mode: RankingMode,
    topk: Option<usize>,
) -> svaudit_core::Result<AnalysisReport> {
    let m = problem.arity();
    let function = problem.function();
    let sv = svaudit_core::shapley_all(problem);
    let explanations = ExplanationSet::build(problem);
    let importance = axp_importance(&explanations.axps, m, WeightRule::ReciprocalSize);
    let issues = detect_issues(&sv, explanations.relevant);
    let ranking = rank_features(sv.values(), mode);
    let diagnostics = match topk {
        Some(k) => Some(ranking_diagnostics(&sv, explanations.relevant, k, mode)?),
        None => None,
    };

    let relevant: Vec<usize> = explanations.relevant.iter().collect();
    let irrelevant: Vec<usize> = (1..=m)
        .filter(|&i| !explanations.relevant.contains(i))
        .collect();
    let point = (1..=m)
        .map(|i| if problem.point().coordinate(i) { "1" } else { "0" })
        .collect::<Vec<_>>()
        .join(",");

    Ok(AnalysisReport {
        function: FunctionEcho {
            arity: m,
            truth_table: function.render(),
            ones: function.ones(),
        },
        instance: InstanceEcho {
            point,
            class: problem.class() as u8,
        },
        shapley: sv,
        relevancy: Relevancy { relevant, irrelevant },
        axps: feature_lists(&explanations.axps),
        cxps: feature_lists(&explanations.cxps),
        importance,
        issues,
        ranking,
        diagnostics,
    })
}

/// Output of `compare`: how an external attribution orders pairs relative
/// to the exact reference.
#[derive(Serialize)]
pub struct CompareReport {
    pub wrong: u64,
    pub total: u64,
    pub reference_ranking: Vec<usize>,
    pub candidate_ranking: Vec<usize>,
}

/// Output of `circuit-check`.
#[derive(Serialize)]
pub struct CircuitReport {
    pub file: String,
    pub arity: usize,
    pub nodes: usize,
    pub decomposable: bool,
    pub deterministic: bool,
    pub constant: bool,
    pub truth_table: String,
    pub ones: u64,
}
