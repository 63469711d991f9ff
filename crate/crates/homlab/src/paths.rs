//! Path structure of digraphs with acyclic loopless part.
//!
//! For such a digraph every path is determined by its vertex set, so maximal
//! paths, heights, the top-path subgraph and the transitive reduction are all
//! computed on the cover digraph, which has the same maximal paths but fewer
//! arcs.

use crate::digraph::{Digraph, Subgraph};
use crate::error::{Error, Result};
use crate::homs::{self, VertexMap};

/// A directed path: pairwise distinct vertices, consecutive pairs arcs.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PathSeq {
    verts: Vec<usize>,
}

impl PathSeq {
    pub fn new(g: &Digraph, verts: Vec<usize>) -> Result<PathSeq> {
        if verts.is_empty() {
            return Err(Error::Parse("a path has at least one vertex".into()));
        }
        let mut seen = vec![false; g.vertex_count()];
        for &v in &verts {
            if v >= g.vertex_count() || seen[v] {
                return Err(Error::Parse("path vertices must be distinct".into()));
            }
            seen[v] = true;
        }
        for w in verts.windows(2) {
            if w[0] == w[1] || !g.has_arc(w[0], w[1]) {
                return Err(Error::ArcNotPresent(w[0], w[1]));
            }
        }
        Ok(PathSeq { verts })
    }

    pub fn len(&self) -> usize {
        self.verts.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn verts(&self) -> &[usize] {
        &self.verts
    }

    pub fn start(&self) -> usize {
        self.verts[0]
    }

    pub fn end(&self) -> usize {
        *self.verts.last().unwrap()
    }

    pub fn vertex_set(&self) -> Vec<usize> {
        let mut s = self.verts.clone();
        s.sort_unstable();
        s
    }
}

/// Every path of `g`, singletons included, in depth-first order from each
/// start vertex. Exponential in the worst case; meant for desk-scale hosts.
pub fn all_paths(g: &Digraph) -> Vec<PathSeq> {
    let gs = g.strip_loops();
    let mut out = Vec::new();
    let mut stack = Vec::new();
    let mut on = vec![false; g.vertex_count()];
    for start in 0..g.vertex_count() {
        stack.push(start);
        on[start] = true;
        dfs_paths(&gs, &mut stack, &mut on, &mut out);
        on[start] = false;
        stack.pop();
    }
    out
}

fn dfs_paths(gs: &Digraph, stack: &mut Vec<usize>, on: &mut [bool], out: &mut Vec<PathSeq>) {
    out.push(PathSeq {
        verts: stack.clone(),
    });
    let tip = *stack.last().unwrap();
    for w in gs.out_neighbors(tip) {
        if !on[w] {
            stack.push(w);
            on[w] = true;
            dfs_paths(gs, stack, on, out);
            on[w] = false;
            stack.pop();
        }
    }
}

/// Reconstructs the unique path with the given vertex set, if one exists:
/// repeatedly peel the vertex with no strict in-neighbor inside the set.
/// Returns `None` when some step has no unique choice or a consecutive arc is
/// missing.
pub fn path_from_vertex_set(g: &Digraph, set: &[usize]) -> Option<PathSeq> {
    let mut remaining: Vec<usize> = set.to_vec();
    remaining.sort_unstable();
    remaining.dedup();
    if remaining.len() != set.len() || remaining.is_empty() {
        return None;
    }
    let mut seq = Vec::with_capacity(remaining.len());
    while !remaining.is_empty() {
        let mut candidates = remaining.iter().copied().filter(|&v| {
            !remaining
                .iter()
                .any(|&u| u != v && g.has_arc(u, v))
        });
        let first = candidates.next()?;
        if candidates.next().is_some() {
            return None;
        }
        if let Some(&prev) = seq.last() {
            if !g.has_arc(prev, first) {
                return None;
            }
        }
        seq.push(first);
        remaining.retain(|&v| v != first);
    }
    Some(PathSeq { verts: seq })
}

/// The transitive reduction `Rd(G)` of a digraph with acyclic loopless part:
/// arcs through which a two-or-more-step walk of `G*` runs are erased; loops
/// stay.
pub fn transitive_reduction(g: &Digraph) -> Result<Digraph> {
    if !g.is_proper_acyclic() {
        return Err(Error::NotInTa);
    }
    let gs = g.strip_loops();
    // union of A((G*)^i) for i >= 2; walk lengths beyond n-1 are impossible
    let mut long = Digraph::empty(g.vertex_count());
    let mut power = gs.clone();
    for _ in 2..g.vertex_count().max(2) {
        power = power_step(&power, &gs);
        long = union(&long, &power);
    }
    let arcs: Vec<(usize, usize)> = g
        .arcs()
        .filter(|&(u, v)| !long.has_arc(u, v))
        .collect();
    Digraph::from_arcs(g.vertex_count(), &arcs)
}

fn power_step(acc: &Digraph, step: &Digraph) -> Digraph {
    let n = acc.vertex_count();
    let mut arcs = Vec::new();
    for u in 0..n {
        for w in acc.out_neighbors(u) {
            for v in step.out_neighbors(w) {
                arcs.push((u, v));
            }
        }
    }
    Digraph::from_arcs(n, &arcs).unwrap()
}

fn union(a: &Digraph, b: &Digraph) -> Digraph {
    let arcs: Vec<(usize, usize)> = a.arcs().chain(b.arcs()).collect();
    Digraph::from_arcs(a.vertex_count(), &arcs).unwrap()
}

/// The cover digraph `G_× = Rd(G)*`.
pub fn cover_digraph(g: &Digraph) -> Result<Digraph> {
    Ok(transitive_reduction(g)?.strip_loops())
}

/// Height plus per-vertex longest-path data, all computed on the cover
/// digraph.
#[derive(Clone, Debug)]
pub struct TopData {
    pub cover: Digraph,
    /// longest path length ending at v
    pub lin: Vec<usize>,
    /// longest path length starting at v
    pub lout: Vec<usize>,
    pub height: usize,
}

pub fn top_data(g: &Digraph) -> Result<TopData> {
    let cover = cover_digraph(g)?;
    let order = cover.topo_order_proper()?;
    let n = g.vertex_count();
    let mut lin = vec![0usize; n];
    let mut lout = vec![0usize; n];
    for &v in &order {
        for w in cover.out_neighbors(v) {
            lin[w] = lin[w].max(lin[v] + 1);
        }
    }
    for &v in order.iter().rev() {
        for w in cover.in_neighbors(v) {
            lout[w] = lout[w].max(lout[v] + 1);
        }
    }
    let height = (0..n).map(|v| lin[v]).max().unwrap_or(0);
    Ok(TopData {
        cover,
        lin,
        lout,
        height,
    })
}

/// The height `h_G`: the largest length of a path.
pub fn height(g: &Digraph) -> Result<usize> {
    Ok(top_data(g)?.height)
}

impl TopData {
    /// Vertices lying on some path of maximal length.
    pub fn top_vertices(&self) -> Vec<usize> {
        (0..self.lin.len())
            .filter(|&v| self.lin[v] + self.lout[v] == self.height)
            .collect()
    }

    pub fn off_top_vertices(&self) -> Vec<usize> {
        (0..self.lin.len())
            .filter(|&v| self.lin[v] + self.lout[v] != self.height)
            .collect()
    }
}

/// Full top-path structure of a digraph with acyclic loopless part.
#[derive(Clone, Debug)]
pub struct TopStructure {
    pub data: TopData,
    /// the paths of maximal length, ordered lexicographically by sequence
    pub top_paths: Vec<PathSeq>,
    pub v_top: Vec<usize>,
    pub v_off: Vec<usize>,
    /// position of each top vertex on every maximal-length path through it
    pub g_of: Vec<Option<usize>>,
}

pub fn tops(g: &Digraph) -> Result<TopStructure> {
    let data = top_data(g)?;
    let n = g.vertex_count();
    let h = data.height;
    let mut top_paths = Vec::new();
    let mut stack = Vec::new();
    for v in 0..n {
        if data.lin[v] == 0 && data.lout[v] == h {
            stack.push(v);
            dfs_top(&data, h, &mut stack, &mut top_paths);
            stack.pop();
        }
    }
    top_paths.sort();
    let v_top = data.top_vertices();
    let v_off = data.off_top_vertices();
    let mut g_of = vec![None; n];
    for &v in &v_top {
        g_of[v] = Some(data.lin[v]);
    }
    // self-check: every maximal-length path places each vertex at its
    // unique position
    for p in &top_paths {
        for (i, &v) in p.verts().iter().enumerate() {
            assert_eq!(g_of[v], Some(i), "position map disagrees on a top path");
        }
    }
    Ok(TopStructure {
        data,
        top_paths,
        v_top,
        v_off,
        g_of,
    })
}

fn dfs_top(data: &TopData, h: usize, stack: &mut Vec<usize>, out: &mut Vec<PathSeq>) {
    let v = *stack.last().unwrap();
    if stack.len() == h + 1 {
        out.push(PathSeq {
            verts: stack.clone(),
        });
        return;
    }
    let pos = stack.len() - 1;
    for w in data.cover.out_neighbors(v) {
        if data.lin[w] == pos + 1 && data.lin[w] + data.lout[w] == h {
            stack.push(w);
            dfs_top(data, h, stack, out);
            stack.pop();
        }
    }
}

/// All maximal paths of `g`: exactly the source-to-sink paths of the cover
/// digraph.
pub fn maximal_paths(g: &Digraph) -> Result<Vec<PathSeq>> {
    let cover = cover_digraph(g)?;
    let n = g.vertex_count();
    let mut out = Vec::new();
    let mut stack = Vec::new();
    for v in 0..n {
        if cover.in_neighbors(v).next().is_none() {
            stack.push(v);
            dfs_sink(&cover, &mut stack, &mut out);
            stack.pop();
        }
    }
    out.sort();
    Ok(out)
}

fn dfs_sink(cover: &Digraph, stack: &mut Vec<usize>, out: &mut Vec<PathSeq>) {
    let v = *stack.last().unwrap();
    let mut extended = false;
    for w in cover.out_neighbors(v) {
        extended = true;
        stack.push(w);
        dfs_sink(cover, stack, out);
        stack.pop();
    }
    if !extended {
        out.push(PathSeq {
            verts: stack.clone(),
        });
    }
}

/// `P_×`: the cover of the induced digraph on a path, i.e. the loopless
/// digraph carrying exactly the consecutive arcs of `P`.
pub fn path_cover(g: &Digraph, p: &PathSeq) -> Subgraph {
    let mut verts = p.verts().to_vec();
    verts.sort_unstable();
    let mut local = Digraph::empty(verts.len());
    let pos = |v: usize| verts.binary_search(&v).unwrap();
    let mut arcs = Vec::new();
    for w in p.verts().windows(2) {
        arcs.push((pos(w[0]), pos(w[1])));
    }
    local = union(&local, &Digraph::from_arcs(verts.len(), &arcs).unwrap());
    let _ = g;
    Subgraph {
        verts,
        graph: local,
    }
}

/// The family `ℒ(G)`: one path cover per maximal-length path.
pub fn top_path_family(g: &Digraph) -> Result<Vec<Subgraph>> {
    let t = tops(g)?;
    Ok(t.top_paths.iter().map(|p| path_cover(g, p)).collect())
}

/// The pair of strict homomorphisms into the chain `C_n`: the longest-path
/// position map and its variant sending out-degree-free vertices to the top.
pub fn lambda_maps(g: &Digraph, n: usize) -> Result<(VertexMap, VertexMap)> {
    let data = top_data(g)?;
    if n < data.height {
        return Err(Error::BelowHeight {
            given: n,
            height: data.height,
        });
    }
    let nv = g.vertex_count();
    let lambda = VertexMap::new(nv, n + 1, (0..nv).map(|v| data.lin[v]).collect());
    let lambda_hat = VertexMap::new(
        nv,
        n + 1,
        (0..nv)
            .map(|v| {
                if g.out_neighbors(v).next().is_some() {
                    data.lin[v]
                } else {
                    n
                }
            })
            .collect(),
    );
    let chain = Digraph::chain(n);
    assert!(
        homs::is_strict_hom(g, &chain, &lambda),
        "longest-path map must be strict into the chain"
    );
    assert!(
        homs::is_strict_hom(g, &chain, &lambda_hat),
        "variant map must be strict into the chain"
    );
    Ok((lambda, lambda_hat))
}
