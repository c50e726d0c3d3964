//! Turns a multi-triangulated graph into a simple triangulation. Each
//! multi-edge `(u, v)` is a cutting pair; copies are traded for edges
//! between peripheral vertices of its cut-components, and the path
//! decomposition is widened only over the bag-interval the new edge needs.

mod ledger;

pub use ledger::{LedgerAudit, TokenLedger};

use crate::error::{Error, Result};
use crate::path_decomp::{BagInterval, PathDecomposition};
use crate::planar::{
    cut_components, is_multi_triangulated, replace_multiedge_copy_between, CutComponents, EmbeddedMultigraph,
    VertexId,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PeripheralPair {
    pub component_index: usize,
    pub b_left: VertexId,
    pub b_right: VertexId,
    /// Leftmost bag containing `{u, v, b_left}`.
    pub bag_left: usize,
    /// Leftmost bag containing `{u, v, b_right}`.
    pub bag_right: usize,
    pub is_child: bool,
}

impl PeripheralPair {
    pub fn bag_interval(&self) -> BagInterval {
        BagInterval::new(self.bag_left, self.bag_right)
    }
}

#[derive(Clone, Debug)]
pub struct CuttingPairRecord {
    pub u: VertexId,
    pub v: VertexId,
    pub multiplicity: usize,
    pub components: CutComponents,
    pub peripheral: Vec<PeripheralPair>,
    pub parent_index: usize,
}

impl CuttingPairRecord {
    pub fn children(&self) -> impl Iterator<Item = &PeripheralPair> {
        self.peripheral.iter().filter(|p| p.is_child)
    }

    /// Least interior vertex of component `i`; names the component.
    pub fn component_key(&self, i: usize) -> VertexId {
        self.components.components[i].interior[0]
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SimplifyBudget {
    pub input_width: usize,
    /// Most multi-edges with both ends inside a single input bag.
    pub c: usize,
    pub target_width: usize,
}

impl SimplifyBudget {
    pub fn new(g: &EmbeddedMultigraph, p: &PathDecomposition) -> Self {
        let input_width = p.width();
        let c = p.max_multi_edges_in_a_bag(g);
        SimplifyBudget { input_width, c, target_width: 2 * input_width + 1 + 2 * c }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Case {
    /// Child bag-intervals interleave strictly.
    Interleaved(usize, usize),
    /// Child bag-interval `j` lies inside that of `i`.
    Nested(usize, usize),
    /// Child bag-intervals are pairwise disjoint.
    Disjoint,
}

/// One resolution step, for reports and tests.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Step {
    pub u: VertexId,
    pub v: VertexId,
    pub case: Case,
    pub added: Vec<(VertexId, VertexId)>,
}

#[derive(Clone, Debug)]
pub struct SimplifyOutcome {
    pub budget: SimplifyBudget,
    pub anchor: Option<(VertexId, VertexId)>,
    pub steps: Vec<Step>,
    pub growth: Vec<BagGrowth>,
    pub ledger: Option<LedgerAudit>,
}

impl SimplifyOutcome {
    /// Every bag gained at most its tokens, `|X_i| + 2c`.
    pub fn growth_within_budget(&self) -> bool {
        self.growth.iter().all(|b| b.gained <= b.size + 2 * self.budget.c)
    }
}

/// Growth of one bag over a whole run.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BagGrowth {
    pub gained: usize,
    /// Size before the run.
    pub size: usize,
    /// Multi-edges with both ends in the bag before the run.
    pub pairs: usize,
}

/// Lexicographically least edge of multiplicity one.
pub fn pick_anchor_edge(g: &EmbeddedMultigraph) -> Result<(VertexId, VertexId)> {
    g.simple_edges()
        .into_iter()
        .find(|&(a, b)| g.multiplicity(a, b) == 1)
        .ok_or_else(|| Error::Internal("every edge is a multi-edge".into()))
}

/// Cut-components of `{u, v}` with their peripheral pairs read at `v`, bags
/// chosen leftmost and sides oriented so that `bag_left <= bag_right`.
pub fn compute_record(
    g: &EmbeddedMultigraph,
    p: &PathDecomposition,
    u: VertexId,
    v: VertexId,
    anchor: (VertexId, VertexId),
) -> Result<CuttingPairRecord> {
    let (u, v) = if u < v { (u, v) } else { (v, u) };
    let multiplicity = g.multiplicity(u, v);
    let mut components = cut_components(g, &[u, v]);
    if components.len() != multiplicity || !components.alternates {
        return Err(Error::Internal(format!(
            "multi-edge ({u}, {v}) of multiplicity {multiplicity} has {} cut-components",
            components.len()
        )));
    }
    let parent = components
        .components
        .iter()
        .position(|c| c.contains(anchor.0) || c.contains(anchor.1))
        .ok_or_else(|| Error::Internal(format!("anchor edge lies in no cut-component of ({u}, {v})")))?;
    components.parent_index = Some(parent);
    let mut peripheral = Vec::with_capacity(components.len());
    for (i, comp) in components.components.iter().enumerate() {
        let run = &comp.runs[1];
        let first = g.target(run[0]);
        let last = g.target(*run.last().unwrap());
        let bag = |b: VertexId| {
            p.leftmost_common_bag(&[u, v, b]).ok_or_else(|| {
                Error::InvalidDecomposition(format!("no bag contains the triangle ({u}, {v}, {b})"))
            })
        };
        let (xf, xl) = (bag(first)?, bag(last)?);
        let (b_left, b_right, bag_left, bag_right) =
            if xf <= xl { (first, last, xf, xl) } else { (last, first, xl, xf) };
        peripheral.push(PeripheralPair { component_index: i, b_left, b_right, bag_left, bag_right, is_child: i != parent });
    }
    Ok(CuttingPairRecord { u, v, multiplicity, components, peripheral, parent_index: parent })
}

/// Nested pairs are looked for first, then strictly interleaved ones; the
/// least `(i, j)` wins.
pub fn classify_case(rec: &CuttingPairRecord) -> Case {
    let kids: Vec<&PeripheralPair> = rec.children().collect();
    for a in &kids {
        for b in &kids {
            if a.component_index != b.component_index
                && a.bag_left <= b.bag_left
                && b.bag_left <= b.bag_right
                && b.bag_right <= a.bag_right
            {
                return Case::Nested(a.component_index, b.component_index);
            }
        }
    }
    for a in &kids {
        for b in &kids {
            if a.component_index != b.component_index
                && a.bag_left < b.bag_left
                && b.bag_left < a.bag_right
                && a.bag_right < b.bag_right
            {
                return Case::Interleaved(a.component_index, b.component_index);
            }
        }
    }
    Case::Disjoint
}

/// Adds `x` over `range` and returns the bags that actually gained it.
fn widen_tracked(p: &mut PathDecomposition, x: VertexId, range: BagInterval) -> Result<Vec<usize>> {
    let gained: Vec<usize> = (range.lo + 1..=range.hi).filter(|&i| !p.contains(i, x)).collect();
    p.widen(x, range)?;
    Ok(gained)
}

/// Edge `(b_j^l, b_i^r)`; `b_j^l` spreads right to `X(b_i^r)`.
pub fn resolve_case1(
    g: &mut EmbeddedMultigraph,
    p: &mut PathDecomposition,
    rec: &CuttingPairRecord,
    i: usize,
    j: usize,
    ledger: Option<&mut TokenLedger>,
) -> Result<Step> {
    let (pi, pj) = (rec.peripheral[i], rec.peripheral[j]);
    let (x, y) = (pj.b_left, pi.b_right);
    replace_multiedge_copy_between(g, rec.u, rec.v, x, y)?;
    let gained = widen_tracked(p, x, BagInterval::new(pj.bag_left, pi.bag_right))?;
    if let Some(l) = ledger {
        let keys = [(rec.u, rec.v, rec.component_key(i)), (rec.u, rec.v, rec.component_key(j))];
        l.spend_child_tokens(&gained, &keys, x);
        l.merge_children(&keys);
    }
    Ok(Step { u: rec.u, v: rec.v, case: Case::Interleaved(i, j), added: vec![(x, y)] })
}

/// Edge `(b_i^l, b_j^l)`; `b_i^l` spreads right to `X(b_j^l)`.
pub fn resolve_case2(
    g: &mut EmbeddedMultigraph,
    p: &mut PathDecomposition,
    rec: &CuttingPairRecord,
    i: usize,
    j: usize,
    ledger: Option<&mut TokenLedger>,
) -> Result<Step> {
    let (pi, pj) = (rec.peripheral[i], rec.peripheral[j]);
    let (x, y) = (pi.b_left, pj.b_left);
    replace_multiedge_copy_between(g, rec.u, rec.v, x, y)?;
    let gained = widen_tracked(p, x, BagInterval::new(pi.bag_left, pj.bag_left))?;
    if let Some(l) = ledger {
        let key_i = (rec.u, rec.v, rec.component_key(i));
        let key_j = (rec.u, rec.v, rec.component_key(j));
        l.spend_child_tokens(&gained, &[key_i], x);
        l.merge_children(&[key_i, key_j]);
    }
    Ok(Step { u: rec.u, v: rec.v, case: Case::Nested(i, j), added: vec![(x, y)] })
}

/// Chains the children in bag order, `(b_k^r, b_{k+1}^l)`, then closes with
/// `(b_1^l, b_0^r)` to the parent. Leaves `(u, v)` with multiplicity one.
pub fn resolve_case3(
    g: &mut EmbeddedMultigraph,
    p: &mut PathDecomposition,
    rec: &CuttingPairRecord,
    ledger: Option<&mut TokenLedger>,
) -> Result<Step> {
    let mut kids: Vec<PeripheralPair> = rec.children().copied().collect();
    kids.sort_by_key(|k| (k.bag_left, k.bag_right, k.component_index));
    let parent = rec.peripheral[rec.parent_index];
    let mut added = Vec::new();
    let mut spent: Vec<(Vec<usize>, VertexId)> = Vec::new();
    for w in kids.windows(2) {
        let (a, b) = (w[0], w[1]);
        replace_multiedge_copy_between(g, rec.u, rec.v, a.b_right, b.b_left)?;
        added.push((a.b_right, b.b_left));
        let gained = widen_tracked(p, a.b_right, BagInterval::new(a.bag_right, b.bag_left))?;
        spent.push((gained, a.b_right));
    }
    let first = kids[0];
    replace_multiedge_copy_between(g, rec.u, rec.v, first.b_left, parent.b_right)?;
    added.push((first.b_left, parent.b_right));
    // Either end may spread over the bags between the two, all of which
    // hold {u, v}; take the one that gains fewer bags.
    let (a, b) = (first.bag_left.min(parent.bag_right), first.bag_left.max(parent.bag_right));
    let options = [(first.b_left, first.bag_left), (parent.b_right, parent.bag_right)];
    let cost = |x: VertexId| (a..=b).filter(|&i| !p.contains(i, x)).count();
    let (x, _) = *options.iter().min_by_key(|&&(x, at)| (cost(x), at != a)).unwrap();
    let gained: Vec<usize> = (a..=b).filter(|&i| !p.contains(i, x)).collect();
    p.widen_span(x, a, b)?;
    if let Some(l) = ledger {
        for (bags, who) in &spent {
            l.spend_pair_tokens(bags, (rec.u, rec.v), *who);
        }
        l.spend_pair_tokens(&gained, (rec.u, rec.v), x);
        let keys: Vec<_> = kids.iter().map(|k| (rec.u, rec.v, rec.component_key(k.component_index))).collect();
        l.retire_pair((rec.u, rec.v), &keys);
    }
    debug_assert_eq!(g.multiplicity(rec.u, rec.v), 1);
    Ok(Step { u: rec.u, v: rec.v, case: Case::Disjoint, added })
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SimplifyOptions {
    /// Maintain the token ledger and audit it after every step.
    pub debug_tokens: bool,
}

/// Removes every multi-edge. Bags only grow; the final width is at most
/// `2w + 1 + 2c` for input width `w`.
pub fn simplify(g: &mut EmbeddedMultigraph, p: &mut PathDecomposition, opts: SimplifyOptions) -> Result<SimplifyOutcome> {
    if !is_multi_triangulated(g)? {
        return Err(Error::NotMultiTriangulated);
    }
    p.check(g)?;
    let budget = SimplifyBudget::new(g, p);
    let initial: Vec<Vec<VertexId>> = p.bags().to_vec();
    let pair_counts: Vec<usize> = (0..p.len()).map(|i| p.multi_edges_in_bag(g, i)).collect();
    let mut outcome = SimplifyOutcome { budget, anchor: None, steps: Vec::new(), growth: Vec::new(), ledger: None };
    if !g.is_simple() {
        let anchor = pick_anchor_edge(g)?;
        outcome.anchor = Some(anchor);
        let mut ledger = if opts.debug_tokens { Some(TokenLedger::new(g, p, anchor)?) } else { None };
        if let Some(l) = ledger.as_mut() {
            l.audit(g, p, anchor, "initial assignment");
        }
        while let Some(((u, v), _)) = g.multi_edges().first().copied() {
            let before = g.total_multiplicity_excess();
            let rec = compute_record(g, p, u, v, anchor)?;
            let case = classify_case(&rec);
            log::debug!("cutting pair ({u}, {v}) x{}: {case:?}", rec.multiplicity);
            let step = match case {
                Case::Interleaved(i, j) => resolve_case1(g, p, &rec, i, j, ledger.as_mut())?,
                Case::Nested(i, j) => resolve_case2(g, p, &rec, i, j, ledger.as_mut())?,
                Case::Disjoint => resolve_case3(g, p, &rec, ledger.as_mut())?,
            };
            if g.total_multiplicity_excess() >= before {
                return Err(Error::Internal("resolution did not reduce multiplicities".into()));
            }
            if let Some(l) = ledger.as_mut() {
                l.rebalance(g, p, anchor)?;
                l.audit(g, p, anchor, &format!("after {case:?} at ({u}, {v})"));
            }
            outcome.steps.push(step);
        }
        outcome.ledger = ledger.map(TokenLedger::finish);
    }
    outcome.growth = initial
        .iter()
        .enumerate()
        .map(|(i, bag)| BagGrowth { gained: p.bag(i).len() - bag.len(), size: bag.len(), pairs: pair_counts[i] })
        .collect();
    if !g.is_simple() || !is_multi_triangulated(g)? {
        return Err(Error::Internal("simplify left a non-simple or non-triangulated graph".into()));
    }
    p.check(g)?;
    Ok(outcome)
}
