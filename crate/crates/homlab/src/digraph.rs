//! Immutable digraph values.
//!
//! Vertices are the dense integers `0..n`. The arc relation is stored as one
//! bitset row per vertex plus the transposed rows, so interval queries reduce
//! to a single word-wise intersection. Loops are ordinary arcs; the loopless
//! companion `G*` is obtained with [`Digraph::strip_loops`].
//!
//! Values never change after construction and every operation is pure.

use std::fmt::Write as _;

use crate::error::{Error, Result};

/// A finite digraph on vertex set `0..n` with loops permitted.
///
/// Equality is literal: same vertex count and same arc set. Isomorphism lives
/// in the catalog module.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Digraph {
    n: usize,
    wpr: usize,
    fwd: Vec<u64>,
    rev: Vec<u64>,
}

impl std::fmt::Debug for Digraph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Digraph(n={}, arcs={:?})", self.n, self.arcs().collect::<Vec<_>>())
    }
}

fn words_for(n: usize) -> usize {
    n.div_ceil(64).max(1)
}

impl Digraph {
    /// The arc-free digraph on `n` vertices.
    pub fn empty(n: usize) -> Self {
        assert!(n >= 1, "digraphs have a non-empty vertex set");
        let wpr = words_for(n);
        Digraph {
            n,
            wpr,
            fwd: vec![0; n * wpr],
            rev: vec![0; n * wpr],
        }
    }

    /// Builds a digraph from an explicit arc list. Out-of-range endpoints are
    /// rejected; duplicate arcs collapse.
    pub fn from_arcs(n: usize, arcs: &[(usize, usize)]) -> Result<Self> {
        let mut g = Self::empty(n);
        for &(u, v) in arcs {
            if u >= n || v >= n {
                return Err(Error::Parse(format!("arc {u} -> {v} out of range for n = {n}")));
            }
            g.set_arc(u, v);
        }
        Ok(g)
    }

    fn set_arc(&mut self, u: usize, v: usize) {
        self.fwd[u * self.wpr + v / 64] |= 1u64 << (v % 64);
        self.rev[v * self.wpr + u / 64] |= 1u64 << (u % 64);
    }

    /// The chain `C_n`: the reflexive transitive order on `0..=n` with
    /// `i -> j` iff `i <= j`.
    pub fn chain(n: usize) -> Self {
        let mut g = Self::empty(n + 1);
        for i in 0..=n {
            for j in i..=n {
                g.set_arc(i, j);
            }
        }
        g
    }

    /// The singleton with loop, `E = C_0`.
    pub fn singleton_with_loop() -> Self {
        Self::chain(0)
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn has_arc(&self, u: usize, v: usize) -> bool {
        debug_assert!(u < self.n && v < self.n);
        self.fwd[u * self.wpr + v / 64] >> (v % 64) & 1 == 1
    }

    pub(crate) fn out_row(&self, v: usize) -> &[u64] {
        &self.fwd[v * self.wpr..(v + 1) * self.wpr]
    }

    pub(crate) fn in_row(&self, v: usize) -> &[u64] {
        &self.rev[v * self.wpr..(v + 1) * self.wpr]
    }

    pub fn out_neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        iter_bits(self.out_row(v))
    }

    pub fn in_neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        iter_bits(self.in_row(v))
    }

    /// All arcs in ascending lexicographic order.
    pub fn arcs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |u| self.out_neighbors(u).map(move |v| (u, v)))
    }

    /// All proper arcs (loops skipped) in ascending lexicographic order.
    pub fn proper_arcs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.arcs().filter(|&(u, v)| u != v)
    }

    pub fn arc_count(&self) -> usize {
        self.fwd.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn has_loop(&self, v: usize) -> bool {
        self.has_arc(v, v)
    }

    pub fn loop_count(&self) -> usize {
        (0..self.n).filter(|&v| self.has_loop(v)).count()
    }

    /// `G* = (V(G), A(G) \ Δ_G)`: the digraph with loops removed. Idempotent.
    pub fn strip_loops(&self) -> Digraph {
        let mut g = self.clone();
        for v in 0..self.n {
            g.fwd[v * g.wpr + v / 64] &= !(1u64 << (v % 64));
            g.rev[v * g.wpr + v / 64] &= !(1u64 << (v % 64));
        }
        g
    }

    /// Reflexive closure: every loop added. Convenience for building posets in
    /// tests and tools.
    pub fn with_all_loops(&self) -> Digraph {
        let mut g = self.clone();
        for v in 0..self.n {
            g.set_arc(v, v);
        }
        g
    }

    /// A vertex is isolated iff its neighborhood is contained in itself, so a
    /// lone loop does not count as company.
    pub fn is_isolated(&self, v: usize) -> bool {
        for (i, w) in self
            .out_row(v)
            .iter()
            .zip(self.in_row(v))
            .map(|(a, b)| a | b)
            .enumerate()
        {
            let mut m = w;
            if i == v / 64 {
                m &= !(1u64 << (v % 64));
            }
            if m != 0 {
                return false;
            }
        }
        true
    }

    pub fn isolated_vertices(&self) -> Vec<usize> {
        (0..self.n).filter(|&v| self.is_isolated(v)).collect()
    }

    pub fn is_reflexive(&self) -> bool {
        (0..self.n).all(|v| self.has_loop(v))
    }

    pub fn is_antisymmetric(&self) -> bool {
        self.proper_arcs().all(|(u, v)| !self.has_arc(v, u))
    }

    pub fn is_transitive(&self) -> bool {
        for u in 0..self.n {
            for v in self.out_neighbors(u) {
                for w in self.out_neighbors(v) {
                    if !self.has_arc(u, w) {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Reflexive, antisymmetric and transitive.
    pub fn is_poset(&self) -> bool {
        self.is_reflexive() && self.is_antisymmetric() && self.is_transitive()
    }

    /// Whether the loopless part `G*` contains no closed walk.
    pub fn is_proper_acyclic(&self) -> bool {
        self.topo_order_proper().is_ok()
    }

    /// A topological order of `G*`, or an error if `G*` has a cycle.
    pub fn topo_order_proper(&self) -> Result<Vec<usize>> {
        let mut indeg = vec![0usize; self.n];
        for (u, v) in self.proper_arcs() {
            let _ = u;
            indeg[v] += 1;
        }
        let mut queue: Vec<usize> = (0..self.n).filter(|&v| indeg[v] == 0).collect();
        let mut order = Vec::with_capacity(self.n);
        let mut head = 0;
        while head < queue.len() {
            let u = queue[head];
            head += 1;
            order.push(u);
            for v in self.out_neighbors(u) {
                if v == u {
                    continue;
                }
                indeg[v] -= 1;
                if indeg[v] == 0 {
                    queue.push(v);
                }
            }
        }
        if order.len() == self.n {
            Ok(order)
        } else {
            Err(Error::NotInTa)
        }
    }

    /// The interval `[v, w]_G`, defined for arcs only.
    pub fn interval(&self, v: usize, w: usize) -> Result<Vec<usize>> {
        if !self.has_arc(v, w) {
            return Err(Error::ArcNotPresent(v, w));
        }
        let mut out = Vec::new();
        for (i, word) in self
            .out_row(v)
            .iter()
            .zip(self.in_row(w))
            .map(|(a, b)| a & b)
            .enumerate()
        {
            let mut m = word;
            while m != 0 {
                let b = m.trailing_zeros() as usize;
                out.push(i * 64 + b);
                m &= m - 1;
            }
        }
        Ok(out)
    }

    /// `ι(v, w)_G`, the cardinality of the interval.
    pub fn iota(&self, v: usize, w: usize) -> Result<usize> {
        if !self.has_arc(v, w) {
            return Err(Error::ArcNotPresent(v, w));
        }
        Ok(self.iota_unchecked(v, w))
    }

    /// Interval cardinality without the arc precondition; `N^out ∩ N^in` is
    /// well defined for any pair.
    pub(crate) fn iota_unchecked(&self, v: usize, w: usize) -> usize {
        self.out_row(v)
            .iter()
            .zip(self.in_row(w))
            .map(|(a, b)| (a & b).count_ones() as usize)
            .sum()
    }

    /// The transitive hull `Tr(G)`: `uv` is an arc iff a walk of length at
    /// least one runs from `u` to `v`. Contains all loops of `G`.
    pub fn transitive_hull(&self) -> Digraph {
        let mut g = self.clone();
        for k in 0..self.n {
            let krow = g.fwd[k * g.wpr..(k + 1) * g.wpr].to_vec();
            for i in 0..self.n {
                if g.fwd[i * g.wpr + k / 64] >> (k % 64) & 1 == 1 {
                    for w in 0..g.wpr {
                        g.fwd[i * g.wpr + w] |= krow[w];
                    }
                }
            }
        }
        // rebuild the transpose
        let mut rev = vec![0u64; g.n * g.wpr];
        for u in 0..g.n {
            for w in 0..g.wpr {
                let mut m = g.fwd[u * g.wpr + w];
                while m != 0 {
                    let v = w * 64 + m.trailing_zeros() as usize;
                    rev[v * g.wpr + u / 64] |= 1u64 << (u % 64);
                    m &= m - 1;
                }
            }
        }
        g.rev = rev;
        g
    }

    /// `G^i`: arcs are the endpoint pairs of walks of length exactly `i`.
    pub fn walk_power(&self, i: usize) -> Digraph {
        assert!(i >= 1);
        let mut acc = self.clone();
        for _ in 1..i {
            acc = acc.compose(self);
        }
        acc
    }

    /// Relational composition: `uv` iff some `w` has `u -> w` here and
    /// `w -> v` in `other`.
    fn compose(&self, other: &Digraph) -> Digraph {
        assert_eq!(self.n, other.n);
        let mut g = Digraph::empty(self.n);
        for u in 0..self.n {
            for w in self.out_neighbors(u) {
                for t in 0..g.wpr {
                    g.fwd[u * g.wpr + t] |= other.fwd[w * other.wpr + t];
                }
            }
        }
        let mut rev = vec![0u64; g.n * g.wpr];
        for u in 0..g.n {
            for w in 0..g.wpr {
                let mut m = g.fwd[u * g.wpr + w];
                while m != 0 {
                    let v = w * 64 + m.trailing_zeros() as usize;
                    rev[v * g.wpr + u / 64] |= 1u64 << (u % 64);
                    m &= m - 1;
                }
            }
        }
        g.rev = rev;
        g
    }

    /// The digraph induced on `verts` (ascending), reindexed to `0..len`.
    pub fn induced(&self, verts: &[usize]) -> Digraph {
        debug_assert!(verts.windows(2).all(|w| w[0] < w[1]));
        let mut g = Digraph::empty(verts.len().max(1));
        for (i, &u) in verts.iter().enumerate() {
            for (j, &v) in verts.iter().enumerate() {
                if self.has_arc(u, v) {
                    g.set_arc(i, j);
                }
            }
        }
        g
    }

    /// Serializes to the plain text format: a `digraph <n>` header followed by
    /// one `u v` line per arc in ascending lexicographic order.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "digraph {}", self.n);
        for (u, v) in self.arcs() {
            let _ = writeln!(s, "{u} {v}");
        }
        s
    }

    /// Parses the text format. `#` starts a comment line; blank lines are
    /// skipped; arcs may appear in any order.
    pub fn from_text(text: &str) -> Result<Digraph> {
        let mut lines = text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'));
        let header = lines.next().ok_or_else(|| Error::Parse("empty digraph text".into()))?;
        let mut it = header.split_whitespace();
        match (it.next(), it.next(), it.next()) {
            (Some("digraph"), Some(ns), None) => {
                let n: usize = ns
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad vertex count `{ns}`")))?;
                if n == 0 {
                    return Err(Error::Parse("vertex count must be at least 1".into()));
                }
                let mut arcs = Vec::new();
                for line in lines {
                    let mut t = line.split_whitespace();
                    match (t.next(), t.next(), t.next()) {
                        (Some(us), Some(vs), None) => {
                            let u: usize = us
                                .parse()
                                .map_err(|_| Error::Parse(format!("bad arc line `{line}`")))?;
                            let v: usize = vs
                                .parse()
                                .map_err(|_| Error::Parse(format!("bad arc line `{line}`")))?;
                            arcs.push((u, v));
                        }
                        _ => return Err(Error::Parse(format!("bad arc line `{line}`"))),
                    }
                }
                Digraph::from_arcs(n, &arcs)
            }
            _ => Err(Error::Parse(format!("bad header `{header}`"))),
        }
    }

    /// DOT rendering for eyeballing; not part of any exchange format.
    pub fn to_dot(&self, name: &str) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "digraph {name} {{");
        for v in 0..self.n {
            let _ = writeln!(s, "  {v};");
        }
        for (u, v) in self.arcs() {
            let _ = writeln!(s, "  {u} -> {v};");
        }
        s.push_str("}\n");
        s
    }
}

pub(crate) fn iter_bits(words: &[u64]) -> impl Iterator<Item = usize> + '_ {
    words.iter().enumerate().flat_map(|(i, &w)| {
        let mut m = w;
        std::iter::from_fn(move || {
            if m == 0 {
                None
            } else {
                let b = m.trailing_zeros() as usize;
                m &= m - 1;
                Some(i * 64 + b)
            }
        })
    })
}

/// A subgraph of a host digraph: an ascending vertex list together with the
/// digraph induced by the chosen arc subset, reindexed to `0..len`.
///
/// The arc set need not be the full induced one; path covers keep only the
/// consecutive cover arcs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subgraph {
    pub verts: Vec<usize>,
    pub graph: Digraph,
}

impl Subgraph {
    /// The whole host as a subgraph of itself.
    pub fn whole(host: &Digraph) -> Subgraph {
        Subgraph {
            verts: (0..host.vertex_count()).collect(),
            graph: host.clone(),
        }
    }

    /// The full induced subgraph on `verts`.
    pub fn induced(host: &Digraph, verts: &[usize]) -> Subgraph {
        let mut vs: Vec<usize> = verts.to_vec();
        vs.sort_unstable();
        vs.dedup();
        let graph = host.induced(&vs);
        Subgraph { verts: vs, graph }
    }

    pub fn local_index(&self, host_vertex: usize) -> Option<usize> {
        self.verts.binary_search(&host_vertex).ok()
    }

    /// Proper arcs in host vertex ids, ascending.
    pub fn proper_arcs_global(&self) -> Vec<(usize, usize)> {
        let mut out: Vec<(usize, usize)> = self
            .graph
            .proper_arcs()
            .map(|(u, v)| (self.verts[u], self.verts[v]))
            .collect();
        out.sort_unstable();
        out
    }

    /// Checks `V ⊆ V(host)` and `A ⊆ A(host)`.
    pub fn is_subgraph_of(&self, host: &Digraph) -> bool {
        self.verts.iter().all(|&v| v < host.vertex_count())
            && self
                .graph
                .arcs()
                .all(|(u, v)| host.has_arc(self.verts[u], self.verts[v]))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn chain_counts() {
        assert_eq!(Digraph::chain(0).vertex_count(), 1);
        assert_eq!(Digraph::chain(0).arc_count(), 1);
        assert_eq!(Digraph::chain(1).arc_count(), 3);
        assert_eq!(Digraph::chain(2).arc_count(), 6);
        assert!(Digraph::chain(5).is_poset());
    }

    #[test]
    fn strip_loops_cases() {
        let c2 = Digraph::chain(2);
        let s = c2.strip_loops();
        assert_eq!(s.arc_count(), 3);
        assert_eq!(s.strip_loops(), s);
        let loopless = Digraph::from_arcs(3, &[(0, 1), (1, 2)]).unwrap();
        assert_eq!(loopless.strip_loops(), loopless);
        let e = Digraph::singleton_with_loop();
        assert_eq!(e.strip_loops().arc_count(), 0);
    }

    #[test]
    fn interval_chain() {
        let c2 = Digraph::chain(2);
        assert_eq!(c2.interval(0, 2).unwrap(), vec![0, 1, 2]);
        assert_eq!(c2.iota(0, 2).unwrap(), 3);
        assert_eq!(c2.interval(0, 1).unwrap(), vec![0, 1]);
        assert!(matches!(c2.interval(2, 0), Err(Error::ArcNotPresent(2, 0))));
        // reflexivity puts v into [v, v]
        assert!(c2.interval(1, 1).unwrap().contains(&1));
    }

    #[test]
    fn transitive_hull_cases() {
        let cn = Digraph::chain(3);
        assert_eq!(cn.transitive_hull(), cn);
        let p = Digraph::from_arcs(3, &[(0, 1), (1, 2)]).unwrap();
        let t = p.transitive_hull();
        assert!(t.has_arc(0, 2));
        assert_eq!(t.arc_count(), 3);
        let two_cycle = Digraph::from_arcs(2, &[(0, 1), (1, 0)]).unwrap();
        let t = two_cycle.transitive_hull();
        assert!(t.has_loop(0) && t.has_loop(1) && t.has_arc(0, 1) && t.has_arc(1, 0));
    }

    #[test]
    fn hull_is_idempotent_and_contains() {
        let g = Digraph::from_arcs(5, &[(0, 1), (1, 2), (3, 1), (2, 4), (4, 4)]).unwrap();
        let t = g.transitive_hull();
        assert_eq!(t.transitive_hull(), t);
        for (u, v) in g.arcs() {
            assert!(t.has_arc(u, v));
        }
        assert!(t.is_transitive());
    }

    #[test]
    fn text_round_trip() {
        let g = Digraph::from_arcs(4, &[(0, 1), (2, 3), (3, 3)]).unwrap();
        let text = g.to_text();
        assert_eq!(text, "digraph 4\n0 1\n2 3\n3 3\n");
        assert_eq!(Digraph::from_text(&text).unwrap(), g);
        let commented = "# a comment\ndigraph 2\n\n0 1\n# trailing\n";
        assert_eq!(
            Digraph::from_text(commented).unwrap(),
            Digraph::from_arcs(2, &[(0, 1)]).unwrap()
        );
        assert!(Digraph::from_text("graph 2\n").is_err());
        assert!(Digraph::from_text("digraph 2\n0 5\n").is_err());
    }

    #[test]
    fn isolated_detection() {
        let g = Digraph::from_arcs(3, &[(0, 1), (2, 2)]).unwrap();
        assert!(!g.is_isolated(0));
        assert!(!g.is_isolated(1));
        assert!(g.is_isolated(2));
    }

    #[test]
    fn walk_powers() {
        let p = Digraph::from_arcs(4, &[(0, 1), (1, 2), (2, 3)]).unwrap();
        let p2 = p.walk_power(2);
        assert!(p2.has_arc(0, 2) && p2.has_arc(1, 3));
        assert_eq!(p2.arc_count(), 2);
        let p3 = p.walk_power(3);
        assert!(p3.has_arc(0, 3));
        assert_eq!(p3.arc_count(), 1);
    }
}
