//! Token accounting for the simplifier. Every bag starts with one token
//! per vertex and `2c` pair tokens, two for each cutting pair inside it and
//! the rest spare; vertex tokens along a path through each child component
//! are handed to that child's peripheral pair. After every step, obligations
//! the step created elsewhere (a cutting pair that now shares a bag, a child
//! pair whose bag-interval grew) are funded from free tokens of the bag:
//! spare pair tokens, tokens left by retired pairs, unowned vertex tokens.
//! Widening a bag must be paid with a token, and the audit re-derives the
//! live cutting pairs and checks that every bag still holds what it owes.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use super::compute_record;
use crate::error::Result;
use crate::path_decomp::PathDecomposition;
use crate::planar::{EmbeddedMultigraph, VertexId};

/// A child-peripheral-pair: cutting pair plus least interior vertex of
/// the child component.
pub type CppKey = (VertexId, VertexId, VertexId);

type Pair = (VertexId, VertexId);

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LedgerAudit {
    /// Number of times the invariant was checked.
    pub checks: usize,
    pub violations: Vec<String>,
    /// Bags that had to grow without a token to pay for it.
    pub starved: Vec<String>,
    /// Token paths of two child pairs that share a vertex.
    pub warnings: Vec<String>,
}

impl LedgerAudit {
    pub fn ok(&self) -> bool {
        self.violations.is_empty() && self.starved.is_empty()
    }
}

#[derive(Clone, Debug)]
pub struct TokenLedger {
    /// Per bag: vertex tokens still unspent, with their child owner.
    vertex: Vec<BTreeMap<VertexId, Option<CppKey>>>,
    /// Per bag: cutting-pair tokens still unspent.
    pair: Vec<BTreeMap<Pair, usize>>,
    /// Per bag: pair tokens not yet held by any pair, out of `2c`.
    spare: Vec<usize>,
    audit: LedgerAudit,
}

fn interior_path(g: &EmbeddedMultigraph, interior: &[VertexId], from: VertexId, to: VertexId) -> Option<Vec<VertexId>> {
    let inside: BTreeSet<VertexId> = interior.iter().copied().collect();
    let mut prev: BTreeMap<VertexId, VertexId> = BTreeMap::new();
    let mut queue = VecDeque::from([from]);
    prev.insert(from, from);
    while let Some(x) = queue.pop_front() {
        if x == to {
            break;
        }
        let mut nbrs = g.neighbors(x);
        nbrs.sort_unstable();
        nbrs.dedup();
        for y in nbrs {
            if inside.contains(&y) && !prev.contains_key(&y) {
                prev.insert(y, x);
                queue.push_back(y);
            }
        }
    }
    prev.get(&to)?;
    let mut path = vec![to];
    let mut x = to;
    while x != from {
        x = prev[&x];
        path.push(x);
    }
    path.reverse();
    Some(path)
}

impl TokenLedger {
    /// Initial assignment, then redistribution along shortest interior paths.
    pub fn new(g: &EmbeddedMultigraph, p: &PathDecomposition, anchor: Pair) -> Result<Self> {
        let multi: Vec<Pair> = g.multi_edges().into_iter().map(|(k, _)| k).collect();
        let c = p.max_multi_edges_in_a_bag(g);
        let mut vertex = Vec::with_capacity(p.len());
        let mut pair = Vec::with_capacity(p.len());
        let mut spare = Vec::with_capacity(p.len());
        for i in 0..p.len() {
            vertex.push(p.bag(i).iter().map(|&w| (w, None)).collect());
            let held: BTreeMap<Pair, usize> =
                multi.iter().filter(|(a, b)| p.contains(i, *a) && p.contains(i, *b)).map(|&k| (k, 2)).collect();
            spare.push(2 * c - 2 * held.len());
            pair.push(held);
        }
        let mut ledger = TokenLedger { vertex, pair, spare, audit: LedgerAudit::default() };
        for &(u, v) in &multi {
            let rec = compute_record(g, p, u, v, anchor)?;
            for pp in rec.children() {
                let comp = &rec.components.components[pp.component_index];
                let key = (u, v, rec.component_key(pp.component_index));
                let Some(path) = interior_path(g, &comp.interior, pp.b_left, pp.b_right) else {
                    ledger.audit.warnings.push(format!("no interior path for child pair {key:?}"));
                    continue;
                };
                for w in path {
                    let Some((lo, hi)) = p.interval(w) else { continue };
                    for bag in &mut ledger.vertex[lo..=hi] {
                        match bag.get_mut(&w) {
                            Some(owner @ None) => *owner = Some(key),
                            Some(Some(other)) => {
                                let other = *other;
                                ledger
                                    .audit
                                    .warnings
                                    .push(format!("token paths of {other:?} and {key:?} share vertex {w}"));
                                break;
                            }
                            None => {}
                        }
                    }
                }
            }
        }
        Ok(ledger)
    }

    /// Pays for `x` entering each bag with a token owned by one of `keys`.
    pub(crate) fn spend_child_tokens(&mut self, bags: &[usize], keys: &[CppKey], x: VertexId) {
        for &b in bags {
            let hit = self.vertex[b].iter().find(|(_, o)| o.is_some_and(|k| keys.contains(&k))).map(|(&w, _)| w);
            match hit {
                Some(w) => {
                    self.vertex[b].remove(&w);
                }
                None => self.audit.starved.push(format!("bag {b} gained {x} with no token of {keys:?}")),
            }
        }
    }

    /// Pays for `x` entering each bag with a token of cutting pair `pair`.
    pub(crate) fn spend_pair_tokens(&mut self, bags: &[usize], pair: Pair, x: VertexId) {
        for &b in bags {
            match self.pair[b].get_mut(&pair) {
                Some(n) if *n > 0 => *n -= 1,
                _ => self.audit.starved.push(format!("bag {b} gained {x} with no token of pair {pair:?}")),
            }
        }
    }

    /// A vertex token of `bag` that no child pair needs there: unowned, or
    /// owned by a child whose bag-interval does not reach the bag.
    fn free_token(&self, bag: usize, needs: &BTreeMap<CppKey, (usize, usize)>) -> Option<VertexId> {
        self.vertex[bag]
            .iter()
            .find(|(_, o)| match o {
                None => true,
                Some(k) => needs.get(k).is_none_or(|&(lo, hi)| bag <= lo || bag > hi),
            })
            .map(|(&w, _)| w)
    }

    /// Funds obligations created by earlier steps from tokens the bag does
    /// not need: child pairs whose bag-interval grew, and cutting pairs that
    /// now share a bag. Spare pair tokens go first, then vertex tokens no
    /// child needs in that bag.
    pub(crate) fn rebalance(&mut self, g: &EmbeddedMultigraph, p: &PathDecomposition, anchor: Pair) -> Result<()> {
        let live: Vec<Pair> = g.multi_edges().into_iter().map(|(k, _)| k).collect();
        let mut needs: BTreeMap<CppKey, (usize, usize)> = BTreeMap::new();
        for &(u, v) in &live {
            let rec = compute_record(g, p, u, v, anchor)?;
            for pp in rec.children() {
                needs.insert((u, v, rec.component_key(pp.component_index)), (pp.bag_left, pp.bag_right));
            }
        }
        for (&key, &(lo, hi)) in &needs {
            for bag in lo + 1..=hi {
                if self.child_tokens(bag, key) == 0 {
                    if let Some(w) = self.free_token(bag, &needs) {
                        self.vertex[bag].insert(w, Some(key));
                    }
                }
            }
        }
        for &(u, v) in &live {
            for bag in 0..p.len() {
                if !(p.contains(bag, u) && p.contains(bag, v)) {
                    continue;
                }
                let mut have = self.pair[bag].get(&(u, v)).copied().unwrap_or(0);
                let take = (2 - have.min(2)).min(self.spare[bag]);
                have += take;
                self.spare[bag] -= take;
                while have < 2 {
                    let Some(w) = self.free_token(bag, &needs) else { break };
                    self.vertex[bag].remove(&w);
                    have += 1;
                }
                self.pair[bag].insert((u, v), have);
            }
        }
        Ok(())
    }

    /// Re-owns the tokens of several children to their merged component.
    pub(crate) fn merge_children(&mut self, keys: &[CppKey]) {
        let merged = *keys.iter().min_by_key(|k| k.2).expect("no keys");
        for bag in &mut self.vertex {
            for owner in bag.values_mut() {
                if owner.is_some_and(|k| keys.contains(&k)) {
                    *owner = Some(merged);
                }
            }
        }
    }

    /// The pair stopped being a cutting pair: its unspent tokens return to
    /// the spare pool and its children's claims lapse.
    pub(crate) fn retire_pair(&mut self, pair: Pair, keys: &[CppKey]) {
        for (bag, spare) in self.pair.iter_mut().zip(&mut self.spare) {
            *spare += bag.remove(&pair).unwrap_or(0);
        }
        for bag in &mut self.vertex {
            for owner in bag.values_mut() {
                if owner.is_some_and(|k| keys.contains(&k)) {
                    *owner = None;
                }
            }
        }
    }

    fn child_tokens(&self, bag: usize, key: CppKey) -> usize {
        self.vertex[bag].values().filter(|o| **o == Some(key)).count()
    }

    /// Both clauses of the invariant against the live cutting pairs of `g`
    /// and the current bags. Reports the first starved bag.
    pub fn verify_invariant1(&self, g: &EmbeddedMultigraph, p: &PathDecomposition, anchor: Pair) -> std::result::Result<(), String> {
        for ((u, v), _) in g.multi_edges() {
            let rec = compute_record(g, p, u, v, anchor).map_err(|e| e.to_string())?;
            for pp in rec.children() {
                let key = (u, v, rec.component_key(pp.component_index));
                for bag in pp.bag_left + 1..=pp.bag_right {
                    if self.child_tokens(bag, key) == 0 {
                        return Err(format!(
                            "bag {bag} in the interval of child pair {{{}, {}}} of ({u}, {v}) holds none of its tokens",
                            pp.b_left, pp.b_right
                        ));
                    }
                }
            }
            for bag in 0..p.len() {
                if p.contains(bag, u) && p.contains(bag, v) {
                    let have = self.pair[bag].get(&(u, v)).copied().unwrap_or(0);
                    if have < 2 {
                        return Err(format!(
                            "bag {bag} holds {have} tokens of cutting pair ({u}, {v}), {} spare, {} vertex tokens",
                            self.spare[bag],
                            self.vertex[bag].len()
                        ));
                    }
                }
            }
        }
        Ok(())
    }

    pub(crate) fn audit(&mut self, g: &EmbeddedMultigraph, p: &PathDecomposition, anchor: Pair, stage: &str) {
        self.audit.checks += 1;
        if let Err(msg) = self.verify_invariant1(g, p, anchor) {
            self.audit.violations.push(format!("{stage}: {msg}"));
        }
    }

    pub fn finish(self) -> LedgerAudit {
        self.audit
    }
}
