//! Path decompositions with a per-vertex interval index.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::planar::{EmbeddedMultigraph, FacialCircuit, VertexId};

/// Left-open bag range `(lo, hi]`; empty when `lo >= hi`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BagInterval {
    pub lo: usize,
    pub hi: usize,
}

impl BagInterval {
    pub fn new(lo: usize, hi: usize) -> Self {
        BagInterval { lo, hi }
    }

    pub fn is_empty(&self) -> bool {
        self.lo >= self.hi
    }

    pub fn contains(&self, i: usize) -> bool {
        self.lo < i && i <= self.hi
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PathDecomposition {
    bags: Vec<Vec<VertexId>>,
    interval: BTreeMap<VertexId, (usize, usize)>,
}

impl PathDecomposition {
    /// Builds a decomposition; bags are sorted and deduplicated. Fails if
    /// some vertex occupies a non-contiguous set of bags.
    pub fn new(bags: Vec<Vec<VertexId>>) -> Result<Self> {
        let mut p = PathDecomposition { bags, interval: BTreeMap::new() };
        for b in p.bags.iter_mut() {
            b.sort_unstable();
            b.dedup();
        }
        p.reindex()?;
        Ok(p)
    }

    fn reindex(&mut self) -> Result<()> {
        let mut interval: BTreeMap<VertexId, (usize, usize)> = BTreeMap::new();
        for (i, b) in self.bags.iter().enumerate() {
            for &v in b {
                match interval.get_mut(&v) {
                    Some(iv) if iv.1 + 1 == i => iv.1 = i,
                    Some(_) => {
                        return Err(Error::InvalidDecomposition(format!(
                            "bags containing vertex {v} do not form an interval"
                        )))
                    }
                    None => {
                        interval.insert(v, (i, i));
                    }
                }
            }
        }
        self.interval = interval;
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.bags.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bags.is_empty()
    }

    pub fn bags(&self) -> &[Vec<VertexId>] {
        &self.bags
    }

    pub fn bag(&self, i: usize) -> &[VertexId] {
        &self.bags[i]
    }

    /// `max |X_i| - 1`, and 0 for a decomposition without vertices.
    pub fn width(&self) -> usize {
        self.bags.iter().map(Vec::len).max().unwrap_or(0).saturating_sub(1)
    }

    /// First and last bag index holding `v`.
    pub fn interval(&self, v: VertexId) -> Option<(usize, usize)> {
        self.interval.get(&v).copied()
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.interval.keys().copied()
    }

    pub fn contains(&self, i: usize, v: VertexId) -> bool {
        matches!(self.interval(v), Some((a, b)) if a <= i && i <= b)
    }

    /// Leftmost bag containing every vertex of `set`.
    pub fn leftmost_common_bag(&self, set: &[VertexId]) -> Option<usize> {
        let mut lo = 0;
        let mut hi = usize::MAX;
        for &v in set {
            let (a, b) = self.interval(v)?;
            lo = lo.max(a);
            hi = hi.min(b);
        }
        (lo <= hi && lo < self.bags.len()).then_some(lo)
    }

    pub fn shares_bag(&self, a: VertexId, b: VertexId) -> bool {
        self.leftmost_common_bag(&[a, b]).is_some()
    }

    /// Checks all three decomposition conditions against the underlying
    /// simple graph of `g` and reports the first violation.
    pub fn check(&self, g: &EmbeddedMultigraph) -> Result<()> {
        for v in g.vertices() {
            if self.interval(v).is_none() {
                return Err(Error::InvalidDecomposition(format!("vertex {v} is in no bag")));
            }
        }
        for v in self.vertices() {
            if !g.is_vertex(v) {
                return Err(Error::InvalidDecomposition(format!("bag holds unknown vertex {v}")));
            }
        }
        for (a, b) in g.simple_edges() {
            if !self.shares_bag(a, b) {
                return Err(Error::InvalidDecomposition(format!("edge ({a}, {b}) is in no bag")));
            }
        }
        Ok(())
    }

    pub fn validate(&self, g: &EmbeddedMultigraph) -> bool {
        self.check(g).is_ok()
    }

    /// Lexicographically least pair `(a, b)`, `a < b`, of non-consecutive
    /// vertices of a simple face that share a bag.
    pub fn find_chord_in_face(&self, g: &EmbeddedMultigraph, face: &FacialCircuit) -> Result<(VertexId, VertexId)> {
        let seq = face.vertices(g);
        let k = seq.len();
        let mut sorted = seq.clone();
        sorted.sort_unstable();
        sorted.dedup();
        if k < 4 || sorted.len() != k {
            return Err(Error::Internal(format!("face of length {k} is not a simple cycle of length >= 4")));
        }
        let pos: BTreeMap<VertexId, usize> = seq.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        for (ia, &a) in sorted.iter().enumerate() {
            for &b in &sorted[ia + 1..] {
                let gap = pos[&a].abs_diff(pos[&b]);
                if gap == 1 || gap == k - 1 {
                    continue;
                }
                if self.shares_bag(a, b) {
                    return Ok((a, b));
                }
            }
        }
        Err(Error::Internal("no chord shares a bag; decomposition invalid for this face".into()))
    }

    /// Adds `v` to every bag of `range`. The result must keep `v`'s bags
    /// contiguous.
    pub fn widen(&mut self, v: VertexId, range: BagInterval) -> Result<()> {
        if range.is_empty() {
            return Ok(());
        }
        self.widen_span(v, range.lo + 1, range.hi)
    }

    /// Adds `v` to bags `first..=last`, keeping its bags contiguous.
    pub fn widen_span(&mut self, v: VertexId, first: usize, last: usize) -> Result<()> {
        if first > last {
            return Ok(());
        }
        if last >= self.bags.len() {
            return Err(Error::InvalidArgument(format!("bag {last} out of range")));
        }
        let merged = match self.interval(v) {
            None => (first, last),
            Some((a, b)) => {
                if first > b + 1 || a > last + 1 {
                    return Err(Error::InvalidDecomposition(format!(
                        "widening {v} over [{first}, {last}] leaves a gap"
                    )));
                }
                (a.min(first), b.max(last))
            }
        };
        for i in first..=last {
            if let Err(at) = self.bags[i].binary_search(&v) {
                self.bags[i].insert(at, v);
            }
        }
        self.interval.insert(v, merged);
        Ok(())
    }

    /// Puts `z` into every bag that contains `v`.
    pub fn shadow(&mut self, v: VertexId, z: VertexId) -> Result<()> {
        let (a, b) = self.interval(v).ok_or_else(|| Error::InvalidArgument(format!("vertex {v} is in no bag")))?;
        self.widen_span(z, a, b)
    }

    /// Puts `z` into every bag.
    pub fn add_everywhere(&mut self, z: VertexId) {
        if self.bags.is_empty() {
            self.bags.push(Vec::new());
        }
        for b in self.bags.iter_mut() {
            if let Err(at) = b.binary_search(&z) {
                b.insert(at, z);
            }
        }
        self.interval.insert(z, (0, self.bags.len() - 1));
    }

    pub fn remove_vertex(&mut self, z: VertexId) {
        for b in self.bags.iter_mut() {
            b.retain(|&x| x != z);
        }
        self.interval.remove(&z);
    }

    /// Replaces `z` by `y` in every bag. Fails if `y` would lose contiguity.
    pub fn rename(&mut self, z: VertexId, y: VertexId) -> Result<()> {
        for b in self.bags.iter_mut() {
            if let Ok(at) = b.binary_search(&z) {
                b.remove(at);
                if let Err(at) = b.binary_search(&y) {
                    b.insert(at, y);
                }
            }
        }
        self.reindex()
    }

    /// Applies a vertex relabelling to every bag.
    pub fn relabel(&self, f: impl Fn(VertexId) -> VertexId) -> Result<Self> {
        PathDecomposition::new(self.bags.iter().map(|b| b.iter().map(|&v| f(v)).collect()).collect())
    }

    /// Restriction to the vertices accepted by `keep`.
    pub fn restrict(&self, keep: impl Fn(VertexId) -> bool) -> Self {
        let bags = self.bags.iter().map(|b| b.iter().copied().filter(|&v| keep(v)).collect()).collect();
        PathDecomposition::new(bags).expect("restriction keeps intervals")
    }

    /// Drops empty bags at both ends.
    pub fn trim(&self) -> Self {
        let lo = self.bags.iter().position(|b| !b.is_empty()).unwrap_or(self.bags.len());
        let hi = self.bags.iter().rposition(|b| !b.is_empty()).map_or(lo, |i| i + 1);
        PathDecomposition::new(self.bags[lo..hi].to_vec()).expect("trimming keeps intervals")
    }

    /// Chains decompositions of vertex-disjoint graphs. `links[i] = (a, b)`
    /// with `a` in the last bag of `ps[i]` and `b` in the first bag of
    /// `ps[i + 1]`; the bag `{a, b}` is placed between them.
    pub fn concatenate(ps: &[PathDecomposition], links: &[(VertexId, VertexId)]) -> Result<Self> {
        if ps.is_empty() {
            return Ok(PathDecomposition::default());
        }
        if links.len() + 1 != ps.len() {
            return Err(Error::InvalidArgument(format!(
                "{} decompositions need {} links, got {}",
                ps.len(),
                ps.len() - 1,
                links.len()
            )));
        }
        let mut bags: Vec<Vec<VertexId>> = ps[0].bags.clone();
        for (i, &(a, b)) in links.iter().enumerate() {
            let prev = &ps[i];
            let next = &ps[i + 1];
            if !prev.bags.last().is_some_and(|x| x.contains(&a)) {
                return Err(Error::InvalidArgument(format!("{a} is not in the last bag of part {i}")));
            }
            if !next.bags.first().is_some_and(|x| x.contains(&b)) {
                return Err(Error::InvalidArgument(format!("{b} is not in the first bag of part {}", i + 1)));
            }
            bags.push(vec![a, b]);
            bags.extend(next.bags.iter().cloned());
        }
        PathDecomposition::new(bags)
    }

    /// Number of vertex pairs with multiplicity at least two inside bag `i`.
    pub fn multi_edges_in_bag(&self, g: &EmbeddedMultigraph, i: usize) -> usize {
        g.multi_edges().into_iter().filter(|((a, b), _)| self.contains(i, *a) && self.contains(i, *b)).count()
    }

    /// Maximum over bags of [`Self::multi_edges_in_bag`].
    pub fn max_multi_edges_in_a_bag(&self, g: &EmbeddedMultigraph) -> usize {
        (0..self.len()).map(|i| self.multi_edges_in_bag(g, i)).max().unwrap_or(0)
    }
}
