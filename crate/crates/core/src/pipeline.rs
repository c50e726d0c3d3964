//! End-to-end runs with a per-stage report and the width bound that applies
//! to the input's connectivity class.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::augmenter::{biconnect, connect, outerplanar_maximalize, remove_helpers, split_by_component};
use crate::error::{Error, Result};
use crate::generate::is_three_connected;
use crate::multi_triangulator::multi_triangulate;
use crate::oracle;
use crate::path_decomp::PathDecomposition;
use crate::planar::{components, cut_vertices, is_multi_triangulated, EmbeddedMultigraph, VertexId};
use crate::simplifier::{simplify, SimplifyOptions, SimplifyOutcome};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Auto,
    #[serde(rename = "2conn")]
    TwoConn,
    #[serde(rename = "3conn")]
    ThreeConn,
    General,
    Outerplanar,
}

impl FromStr for Mode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "auto" => Mode::Auto,
            "2conn" => Mode::TwoConn,
            "3conn" => Mode::ThreeConn,
            "general" => Mode::General,
            "outerplanar" => Mode::Outerplanar,
            _ => return Err(Error::InvalidArgument(format!("unknown mode `{s}`"))),
        })
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Auto => "auto",
            Mode::TwoConn => "2conn",
            Mode::ThreeConn => "3conn",
            Mode::General => "general",
            Mode::Outerplanar => "outerplanar",
        })
    }
}

/// Where the input decomposition came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum DecompositionSource {
    Given,
    Oracle,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StageReport {
    pub name: String,
    pub vertices: usize,
    pub edges: usize,
    pub width: usize,
    /// Width the stage may reach, when it has one of its own.
    pub bound: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SimplifyReport {
    pub input_width: usize,
    pub c: usize,
    pub target_width: usize,
    pub steps: usize,
    pub growth_within_budget: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LedgerReport {
    pub checks: usize,
    pub violations: Vec<String>,
    pub starved: Vec<String>,
    pub warnings: Vec<String>,
    pub invariant_held: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PipelineReport {
    pub mode: Mode,
    /// `3conn`, `2conn`, `general` or `outerplanar`.
    pub class: Mode,
    pub decomposition_source: DecompositionSource,
    pub stages: Vec<StageReport>,
    pub input_width: usize,
    pub bound_formula: String,
    pub bound: usize,
    pub output_width: usize,
    pub bound_satisfied: bool,
    pub oracle_input_width: Option<usize>,
    pub oracle_output_width: Option<usize>,
    /// For 3-connected input with an optimal decomposition: the optimal
    /// width did not change.
    pub width_preserved: Option<bool>,
    pub simple: bool,
    pub triangulated: Option<bool>,
    pub maximal_outerplanar: Option<bool>,
    pub vertex_set_preserved: bool,
    pub input_edges_preserved: bool,
    pub decomposition_valid: bool,
    pub simplify: Option<SimplifyReport>,
    pub ledger: Option<LedgerReport>,
    pub all_green: bool,
}

#[derive(Clone, Debug)]
pub struct PipelineResult {
    pub graph: EmbeddedMultigraph,
    pub decomposition: PathDecomposition,
    pub report: PipelineReport,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PipelineOptions {
    pub mode: Mode,
    pub debug_tokens: bool,
    pub source: DecompositionSource,
    /// Compute exact widths of input and output when small enough.
    pub oracle_widths: bool,
}

impl Default for PipelineOptions {
    fn default() -> Self {
        PipelineOptions { mode: Mode::Auto, debug_tokens: false, source: DecompositionSource::Given, oracle_widths: true }
    }
}

/// Connectivity class used by `auto`.
pub fn classify(g: &EmbeddedMultigraph) -> Mode {
    if components(g).len() > 1 || g.vertex_count() < 3 {
        return Mode::General;
    }
    match cut_vertices(g) {
        Ok(c) if c.is_empty() => {}
        _ => return Mode::General,
    }
    if g.vertex_count() >= 4 && is_three_connected(g) {
        Mode::ThreeConn
    } else {
        Mode::TwoConn
    }
}

/// The bound formula and its value for input width `w`.
pub fn bound_for(class: Mode, w: usize) -> (String, usize) {
    match class {
        Mode::ThreeConn => ("w".into(), w),
        Mode::TwoConn => ("8w - 5".into(), (8 * w).saturating_sub(5)),
        Mode::Outerplanar => ("4w + 4".into(), 4 * w + 4),
        _ => ("16 max(w, 1) + 3".into(), 16 * w.max(1) + 3),
    }
}

fn stage(name: &str, g: &EmbeddedMultigraph, p: &PathDecomposition, bound: Option<usize>) -> StageReport {
    StageReport { name: name.into(), vertices: g.vertex_count(), edges: g.edge_count(), width: p.width(), bound }
}

fn exact_width(g: &EmbeddedMultigraph) -> Option<usize> {
    oracle::exact_pathwidth(g).ok().map(|r| r.width)
}

/// Runs the pipeline selected by `opts.mode` on a simple planar embedded
/// graph and a decomposition of it.
pub fn run(g: &EmbeddedMultigraph, p: &PathDecomposition, opts: PipelineOptions) -> Result<PipelineResult> {
    if !g.is_simple() {
        return Err(Error::InvalidArgument("input has parallel edges".into()));
    }
    if !g.is_planar_embedding() {
        return Err(Error::NonPlanar);
    }
    p.check(g)?;
    let class = match opts.mode {
        Mode::Auto => classify(g),
        m => m,
    };
    let n = g.vertex_count();
    if class != Mode::Outerplanar && n < 3 {
        return Err(Error::NotApplicable(format!("triangulation needs at least 3 vertices, got {n}")));
    }
    match class {
        Mode::TwoConn if !crate::planar::is_biconnected(g) => {
            return Err(match cut_vertices(g) {
                Ok(c) if !c.is_empty() => Error::NotBiconnected(c[0]),
                _ => Error::Disconnected,
            })
        }
        Mode::ThreeConn if !(crate::planar::is_biconnected(g) && is_three_connected(g)) => {
            return Err(Error::NotTriconnected)
        }
        _ => {}
    }
    let sopts = SimplifyOptions { debug_tokens: opts.debug_tokens };
    let w = p.width();
    let (bound_formula, bound) = bound_for(class, w);
    let mut h = g.clone();
    let mut q = p.clone();
    let mut stages = vec![stage("input", &h, &q, None)];
    let simplified: Option<SimplifyOutcome> = if class == Mode::Outerplanar {
        let out = outerplanar_maximalize(&mut h, &mut q, sopts)?;
        stages.push(stage("outerplanar_maximalize", &h, &q, Some(bound)));
        out.simplify
    } else {
        if components(&h).len() > 1 {
            let parts = split_by_component(&h, &q);
            let (joined, _) = connect(&mut h, &parts)?;
            q = joined;
            stages.push(stage("connect", &h, &q, Some(w.max(1))));
        }
        let helpers = if class == Mode::General { biconnect(&mut h, &mut q)? } else { Vec::new() };
        if class == Mode::General {
            let wc = stages.last().unwrap().width;
            stages.push(stage("biconnect", &h, &q, Some(2 * wc + 1)));
        }
        let frozen = q.width();
        multi_triangulate(&mut h, &q)?;
        stages.push(stage("multi_triangulate", &h, &q, Some(frozen)));
        let out = simplify(&mut h, &mut q, sopts)?;
        stages.push(stage("simplify", &h, &q, Some(out.budget.target_width)));
        if !helpers.is_empty() {
            remove_helpers(&mut h, &mut q, &helpers)?;
            stages.push(stage("remove_helpers", &h, &q, Some(bound)));
        }
        Some(out)
    };
    let output_width = q.width();
    let in_vertices: BTreeSet<VertexId> = g.vertices().collect();
    let out_vertices: BTreeSet<VertexId> = h.vertices().collect();
    let out_edges: BTreeSet<(VertexId, VertexId)> = h.simple_edges().into_iter().collect();
    let input_edges_preserved = g.simple_edges().iter().all(|e| out_edges.contains(e));
    let simple = h.is_simple();
    let (triangulated, maximal_outerplanar) = if class == Mode::Outerplanar {
        (None, Some(oracle::is_maximal_outerplanar(&h)))
    } else {
        (Some(simple && is_multi_triangulated(&h)?), None)
    };
    let small = opts.oracle_widths && n <= oracle::node_cap();
    let oracle_input_width = if small { exact_width(g) } else { None };
    let oracle_output_width = if small { exact_width(&h) } else { None };
    let width_preserved = match (class, opts.source, oracle_input_width, oracle_output_width) {
        (Mode::ThreeConn, DecompositionSource::Oracle, Some(a), Some(b)) => Some(a == b),
        _ => None,
    };
    let simplify_report = simplified.as_ref().map(|s| SimplifyReport {
        input_width: s.budget.input_width,
        c: s.budget.c,
        target_width: s.budget.target_width,
        steps: s.steps.len(),
        growth_within_budget: s.growth_within_budget(),
    });
    let ledger = simplified.as_ref().and_then(|s| s.ledger.as_ref()).map(|a| LedgerReport {
        checks: a.checks,
        violations: a.violations.clone(),
        starved: a.starved.clone(),
        warnings: a.warnings.clone(),
        invariant_held: a.ok(),
    });
    let mut report = PipelineReport {
        mode: opts.mode,
        class,
        decomposition_source: opts.source,
        stages,
        input_width: w,
        bound_formula,
        bound,
        output_width,
        bound_satisfied: output_width <= bound,
        oracle_input_width,
        oracle_output_width,
        width_preserved,
        simple,
        triangulated,
        maximal_outerplanar,
        vertex_set_preserved: in_vertices == out_vertices,
        input_edges_preserved,
        decomposition_valid: q.validate(&h),
        simplify: simplify_report,
        ledger,
        all_green: false,
    };
    report.all_green = report.bound_satisfied
        && report.simple
        && report.triangulated.unwrap_or(true)
        && report.maximal_outerplanar.unwrap_or(true)
        && report.vertex_set_preserved
        && report.input_edges_preserved
        && report.decomposition_valid
        && report.width_preserved.unwrap_or(true)
        && report.simplify.as_ref().is_none_or(|s| s.growth_within_budget)
        && report.ledger.as_ref().is_none_or(|l| l.invariant_held);
    Ok(PipelineResult { graph: h, decomposition: q, report })
}
