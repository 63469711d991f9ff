//! Exact enumeration and counting of homomorphisms and strict homomorphisms.
//!
//! The engine backtracks over the source vertices in decreasing proper-degree
//! order, keeping one 64-bit candidate mask per vertex over the target and
//! pruning by arc consistency against already-assigned neighbors. Counting
//! never samples and never approximates; results are exact big integers.
//!
//! Targets are limited to 64 vertices. Sources may be arbitrarily large,
//! which is what clamp expansions need.

use std::collections::HashMap;

use num_bigint::BigUint;
use num_traits::Zero;

use crate::digraph::{Digraph, Subgraph};
use crate::error::{Error, Result};

/// A total map `V(G) -> V(H)`, stored as one image byte per source vertex.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexMap {
    dom: usize,
    cod: usize,
    img: Vec<u8>,
}

impl std::fmt::Debug for VertexMap {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.to_text())
    }
}

impl VertexMap {
    pub fn new(dom: usize, cod: usize, img: Vec<usize>) -> VertexMap {
        assert_eq!(img.len(), dom);
        assert!(cod <= 256);
        assert!(img.iter().all(|&y| y < cod));
        VertexMap {
            dom,
            cod,
            img: img.into_iter().map(|y| y as u8).collect(),
        }
    }

    pub fn domain_size(&self) -> usize {
        self.dom
    }

    pub fn codomain_size(&self) -> usize {
        self.cod
    }

    pub fn image(&self, v: usize) -> usize {
        self.img[v] as usize
    }

    pub fn images(&self) -> Vec<usize> {
        self.img.iter().map(|&y| y as usize).collect()
    }

    /// Pre-restriction to a set of domain vertices, reindexed in ascending
    /// vertex order.
    pub fn restrict(&self, verts: &[usize]) -> VertexMap {
        debug_assert!(verts.windows(2).all(|w| w[0] < w[1]));
        VertexMap {
            dom: verts.len(),
            cod: self.cod,
            img: verts.iter().map(|&v| self.img[v]).collect(),
        }
    }

    /// `rho ∘ self`: first this map, then `rho`.
    pub fn then(&self, rho: &VertexMap) -> VertexMap {
        assert_eq!(self.cod, rho.dom);
        VertexMap {
            dom: self.dom,
            cod: rho.cod,
            img: self.img.iter().map(|&y| rho.img[y as usize]).collect(),
        }
    }

    /// Single-line text form: `map 0->2 1->1 ...`.
    pub fn to_text(&self) -> String {
        let mut s = String::from("map");
        for (v, &y) in self.img.iter().enumerate() {
            s.push_str(&format!(" {v}->{y}"));
        }
        s
    }

    pub fn from_text(text: &str, cod: usize) -> Result<VertexMap> {
        let mut it = text.split_whitespace();
        if it.next() != Some("map") {
            return Err(Error::Parse("vertex map text must start with `map`".into()));
        }
        let mut img = Vec::new();
        for (i, tok) in it.enumerate() {
            let (vs, ys) = tok
                .split_once("->")
                .ok_or_else(|| Error::Parse(format!("bad map entry `{tok}`")))?;
            let v: usize = vs.parse().map_err(|_| Error::Parse(format!("bad map entry `{tok}`")))?;
            let y: usize = ys.parse().map_err(|_| Error::Parse(format!("bad map entry `{tok}`")))?;
            if v != i || y >= cod {
                return Err(Error::Parse(format!("bad map entry `{tok}`")));
            }
            img.push(y);
        }
        Ok(VertexMap::new(img.len(), cod, img))
    }
}

/// Does `xi` send every arc of `g` to an arc of `h`?
pub fn is_hom(g: &Digraph, h: &Digraph, xi: &VertexMap) -> bool {
    xi.dom == g.vertex_count()
        && xi.cod == h.vertex_count()
        && g.arcs().all(|(u, v)| h.has_arc(xi.image(u), xi.image(v)))
}

/// A homomorphism that additionally sends proper arcs to proper arcs.
pub fn is_strict_hom(g: &Digraph, h: &Digraph, xi: &VertexMap) -> bool {
    is_hom(g, h, xi)
        && g.proper_arcs()
            .all(|(u, v)| xi.image(u) != xi.image(v))
}

/// `ι_ξ(u, v) = ι(ξ(u), ξ(v))_H`.
pub fn iota_of(h: &Digraph, xi: &VertexMap, u: usize, v: usize) -> u64 {
    h.iota_unchecked(xi.image(u), xi.image(v)) as u64
}

/// `μ_ξ(G)`: the iota values summed over the proper arcs of `g`.
pub fn mu(g: &Digraph, h: &Digraph, xi: &VertexMap) -> u64 {
    g.proper_arcs().map(|(u, v)| iota_of(h, xi, u, v)).sum()
}

/// The restriction of `ι_ξ` to a fixed arc list: the equality key for
/// selecting weights and for the profile classes.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct IotaProfile {
    pub arcs: Vec<(usize, usize)>,
    pub values: Vec<u64>,
}

impl IotaProfile {
    /// Profile of `xi` (a map into `h`) on the given arcs of the source.
    pub fn of(h: &Digraph, xi: &VertexMap, arcs: &[(usize, usize)]) -> IotaProfile {
        IotaProfile {
            arcs: arcs.to_vec(),
            values: arcs.iter().map(|&(u, v)| iota_of(h, xi, u, v)).collect(),
        }
    }

    /// The constant-two profile on the given arcs.
    pub fn constant_two(arcs: &[(usize, usize)]) -> IotaProfile {
        IotaProfile {
            arcs: arcs.to_vec(),
            values: vec![2; arcs.len()],
        }
    }
}

const MAX_TARGET: usize = 64;

fn all_mask(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// Precomputed target-side masks.
struct TargetMasks {
    nh: usize,
    loops: u64,
    out: Vec<u64>,
    inn: Vec<u64>,
    out_strict: Vec<u64>,
    in_strict: Vec<u64>,
}

impl TargetMasks {
    fn new(h: &Digraph) -> Result<TargetMasks> {
        let nh = h.vertex_count();
        if nh > MAX_TARGET {
            return Err(Error::CodomainTooLarge(nh));
        }
        let mut loops = 0u64;
        let mut out = vec![0u64; nh];
        let mut inn = vec![0u64; nh];
        for y in 0..nh {
            if h.has_loop(y) {
                loops |= 1 << y;
            }
            out[y] = h.out_row(y)[0];
            inn[y] = h.in_row(y)[0];
        }
        let out_strict = (0..nh).map(|y| out[y] & !(1 << y)).collect();
        let in_strict = (0..nh).map(|y| inn[y] & !(1 << y)).collect();
        Ok(TargetMasks {
            nh,
            loops,
            out,
            inn,
            out_strict,
            in_strict,
        })
    }
}

/// One backtracking search over `ℋ(g, h)` or `𝒮(g, h)`, optionally with a
/// frozen prefix assignment and per-arc iota requirements.
struct Search<'a> {
    g: &'a Digraph,
    tm: TargetMasks,
    strict: bool,
    /// search order over the free vertices
    order: Vec<usize>,
    /// required interval size per source arc, if constrained
    iota_req: Option<&'a HashMap<(usize, usize), u64>>,
    /// masks `{b : arc y->b and iota(y,b) = r}` built on demand
    iota_out: HashMap<(usize, u64), u64>,
    iota_in: HashMap<(usize, u64), u64>,
    h: &'a Digraph,
}

enum Mode {
    Count { shortcut: bool },
    Collect,
}

impl<'a> Search<'a> {
    fn new(
        g: &'a Digraph,
        h: &'a Digraph,
        strict: bool,
        prefix: usize,
        by_degree: bool,
        iota_req: Option<&'a HashMap<(usize, usize), u64>>,
    ) -> Result<Search<'a>> {
        let tm = TargetMasks::new(h)?;
        let gs = g.strip_loops();
        let mut order: Vec<usize> = (prefix..g.vertex_count()).collect();
        if by_degree {
            let deg = |v: usize| {
                gs.out_neighbors(v).count() + gs.in_neighbors(v).count()
            };
            order.sort_by_key(|&v| (std::cmp::Reverse(deg(v)), v));
        }
        Ok(Search {
            g,
            tm,
            strict,
            order,
            iota_req,
            iota_out: HashMap::new(),
            iota_in: HashMap::new(),
            h,
        })
    }

    fn iota_out_mask(&mut self, y: usize, r: u64) -> u64 {
        if let Some(&m) = self.iota_out.get(&(y, r)) {
            return m;
        }
        let mut m = 0u64;
        for b in 0..self.tm.nh {
            if self.h.has_arc(y, b) && self.h.iota_unchecked(y, b) as u64 == r {
                m |= 1 << b;
            }
        }
        self.iota_out.insert((y, r), m);
        m
    }

    fn iota_in_mask(&mut self, y: usize, r: u64) -> u64 {
        if let Some(&m) = self.iota_in.get(&(y, r)) {
            return m;
        }
        let mut m = 0u64;
        for a in 0..self.tm.nh {
            if self.h.has_arc(a, y) && self.h.iota_unchecked(a, y) as u64 == r {
                m |= 1 << a;
            }
        }
        self.iota_in.insert((y, r), m);
        m
    }

    /// Propagation mask for assigning image `y` to `v`, constraining the
    /// still-free neighbor `u`.
    fn mask_for(&mut self, v: usize, y: usize, u: usize, outgoing: bool) -> u64 {
        let proper = u != v;
        let mut m = if outgoing {
            if self.strict && proper {
                self.tm.out_strict[y]
            } else {
                self.tm.out[y]
            }
        } else if self.strict && proper {
            self.tm.in_strict[y]
        } else {
            self.tm.inn[y]
        };
        if let Some(req) = self.iota_req {
            let key = if outgoing { (v, u) } else { (u, v) };
            if let Some(&r) = req.get(&key) {
                m &= if outgoing {
                    self.iota_out_mask(y, r)
                } else {
                    self.iota_in_mask(y, r)
                };
            }
        }
        m
    }

    fn run(
        &mut self,
        assigned: &mut Vec<Option<u8>>,
        cand: &mut Vec<u64>,
        mode: Mode,
        sink: &mut dyn FnMut(&[Option<u8>]),
    ) -> BigUint {
        // positions from which the remaining vertices are pairwise
        // non-adjacent, so their counts multiply
        let shortcut_from = match mode {
            Mode::Count { shortcut: true } => {
                let mut from = self.order.len();
                'outer: while from > 0 {
                    let v = self.order[from - 1];
                    for &u in &self.order[from - 1..] {
                        if u != v && (self.g.has_arc(u, v) || self.g.has_arc(v, u)) {
                            break 'outer;
                        }
                    }
                    from -= 1;
                }
                from
            }
            _ => usize::MAX,
        };
        let collect = matches!(mode, Mode::Collect);
        let mut count = BigCounter::default();
        let mut trail: Vec<(usize, u64)> = Vec::with_capacity(4 * self.order.len() + 8);
        self.dfs(
            0,
            shortcut_from,
            collect,
            assigned,
            cand,
            &mut trail,
            &mut count,
            sink,
        );
        count.into_big()
    }

    #[allow(clippy::too_many_arguments)]
    fn dfs(
        &mut self,
        depth: usize,
        shortcut_from: usize,
        collect: bool,
        assigned: &mut Vec<Option<u8>>,
        cand: &mut Vec<u64>,
        trail: &mut Vec<(usize, u64)>,
        count: &mut BigCounter,
        sink: &mut dyn FnMut(&[Option<u8>]),
    ) {
        if depth >= shortcut_from {
            let mut prod: u128 = 1;
            let mut big: Option<BigUint> = None;
            for &v in &self.order[depth..] {
                let c = cand[v].count_ones() as u128;
                match prod.checked_mul(c) {
                    Some(p) => prod = p,
                    None => {
                        let b = big.get_or_insert_with(|| BigUint::from(prod));
                        *b *= BigUint::from(c);
                        prod = 1;
                    }
                }
            }
            match big {
                None => count.add_u128(prod),
                Some(mut b) => {
                    b *= BigUint::from(prod);
                    count.add_big(b);
                }
            }
            return;
        }
        if depth == self.order.len() {
            count.add_u128(1);
            if collect {
                sink(assigned);
            }
            return;
        }
        // every surviving candidate of the last free vertex has been checked
        // against all of its neighbors, so the tail is a popcount
        if !collect && depth + 1 == self.order.len() {
            count.add_u128(cand[self.order[depth]].count_ones() as u128);
            return;
        }
        let v = self.order[depth];
        let mut choices = cand[v];
        while choices != 0 {
            let y = choices.trailing_zeros() as usize;
            choices &= choices - 1;
            assigned[v] = Some(y as u8);
            // forward-check every free neighbor of v, undo via the trail
            let mark = trail.len();
            let mut dead = false;
            for u in self.g.out_neighbors(v) {
                if assigned[u].is_none() {
                    let m = self.mask_for(v, y, u, true);
                    let old = cand[u];
                    let new = old & m;
                    if new != old {
                        trail.push((u, old));
                        cand[u] = new;
                        if new == 0 {
                            dead = true;
                            break;
                        }
                    }
                }
            }
            if !dead {
                for u in self.g.in_neighbors(v) {
                    if assigned[u].is_none() {
                        let m = self.mask_for(v, y, u, false);
                        let old = cand[u];
                        let new = old & m;
                        if new != old {
                            trail.push((u, old));
                            cand[u] = new;
                            if new == 0 {
                                dead = true;
                                break;
                            }
                        }
                    }
                }
            }
            if !dead {
                self.dfs(
                    depth + 1,
                    shortcut_from,
                    collect,
                    assigned,
                    cand,
                    trail,
                    count,
                    sink,
                );
            }
            while trail.len() > mark {
                let (u, old) = trail.pop().unwrap();
                cand[u] = old;
            }
            assigned[v] = None;
        }
    }
}

/// Exact big-integer counter with a cheap word-sized fast path.
#[derive(Default)]
struct BigCounter {
    small: u128,
    big: BigUint,
}

impl BigCounter {
    fn add_u128(&mut self, x: u128) {
        match self.small.checked_add(x) {
            Some(s) => self.small = s,
            None => {
                self.big += BigUint::from(self.small);
                self.small = x;
            }
        }
    }

    fn add_big(&mut self, x: BigUint) {
        self.big += x;
    }

    fn into_big(self) -> BigUint {
        self.big + BigUint::from(self.small)
    }
}

fn initial_candidates(g: &Digraph, tm: &TargetMasks) -> Vec<u64> {
    let all = all_mask(tm.nh);
    (0..g.vertex_count())
        .map(|v| if g.has_loop(v) { tm.loops } else { all })
        .collect()
}

/// Exact `#ℋ(g, h)` or `#𝒮(g, h)`.
pub fn hom_count(g: &Digraph, h: &Digraph, strict: bool) -> Result<BigUint> {
    let mut s = Search::new(g, h, strict, 0, true, None)?;
    let mut assigned = vec![None; g.vertex_count()];
    let mut cand = initial_candidates(g, &s.tm);
    Ok(s.run(
        &mut assigned,
        &mut cand,
        Mode::Count { shortcut: true },
        &mut |_| {},
    ))
}

/// The full list `ℋ(g, h)` (or `𝒮(g, h)`), in lexicographic order of image
/// tuples.
pub fn enumerate_homs(g: &Digraph, h: &Digraph, strict: bool) -> Result<Vec<VertexMap>> {
    let mut s = Search::new(g, h, strict, 0, true, None)?;
    let mut assigned = vec![None; g.vertex_count()];
    let mut cand = initial_candidates(g, &s.tm);
    let mut out: Vec<VertexMap> = Vec::new();
    let dom = g.vertex_count();
    let cod = h.vertex_count();
    s.run(&mut assigned, &mut cand, Mode::Collect, &mut |a| {
        out.push(VertexMap {
            dom,
            cod,
            img: a.iter().map(|x| x.unwrap()).collect(),
        });
    });
    out.sort();
    Ok(out)
}

/// Reference oracle: filter all `|V(h)|^|V(g)|` maps by the definition,
/// returned in lexicographic image order. Exponential; test and verification
/// use only.
pub fn naive_homs(g: &Digraph, h: &Digraph, strict: bool) -> Vec<VertexMap> {
    let n = g.vertex_count();
    let m = h.vertex_count();
    let mut img = vec![0usize; n];
    let mut out = Vec::new();
    'outer: loop {
        let xi = VertexMap::new(n, m, img.clone());
        let ok = if strict {
            is_strict_hom(g, h, &xi)
        } else {
            is_hom(g, h, &xi)
        };
        if ok {
            out.push(xi);
        }
        // odometer
        let mut i = 0;
        loop {
            if i == n {
                break 'outer;
            }
            img[i] += 1;
            if img[i] < m {
                break;
            }
            img[i] = 0;
            i += 1;
        }
    }
    out.sort();
    out
}

fn check_prefix_subgraph(gsmall: &Digraph, gbig: &Digraph) -> Result<()> {
    if gsmall.vertex_count() > gbig.vertex_count() {
        return Err(Error::NotASubgraph);
    }
    for (u, v) in gsmall.arcs() {
        if !gbig.has_arc(u, v) {
            return Err(Error::NotASubgraph);
        }
    }
    Ok(())
}

/// The extension class `[ξ]_{gbig}`: all homomorphisms of `gbig` into `h`
/// restricting to `xi` on the leading `|V(gsmall)|` vertices. May be empty.
pub fn extensions(
    gsmall: &Digraph,
    gbig: &Digraph,
    h: &Digraph,
    xi: &VertexMap,
) -> Result<Vec<VertexMap>> {
    let mut out = Vec::new();
    let dom = gbig.vertex_count();
    let cod = h.vertex_count();
    extensions_run(gsmall, gbig, h, xi, true, &mut |a: &[Option<u8>]| {
        out.push(VertexMap {
            dom,
            cod,
            img: a.iter().map(|x| x.unwrap()).collect(),
        })
    })?;
    out.sort();
    Ok(out)
}

/// Brute-force cardinality of `[ξ]_{gbig}`, visiting every extension once.
pub fn count_extensions(
    gsmall: &Digraph,
    gbig: &Digraph,
    h: &Digraph,
    xi: &VertexMap,
) -> Result<BigUint> {
    extensions_run(gsmall, gbig, h, xi, false, &mut |_| {})
}

fn extensions_run(
    gsmall: &Digraph,
    gbig: &Digraph,
    h: &Digraph,
    xi: &VertexMap,
    collect: bool,
    f: &mut dyn FnMut(&[Option<u8>]),
) -> Result<BigUint> {
    check_prefix_subgraph(gsmall, gbig)?;
    if !is_hom(gsmall, h, xi) {
        return Err(Error::NotAHomomorphism);
    }
    let m = gsmall.vertex_count();
    // the prefix must already satisfy every arc of gbig among its vertices
    for u in 0..m {
        for v in gbig.out_neighbors(u) {
            if v < m && !h.has_arc(xi.image(u), xi.image(v)) {
                return Ok(BigUint::zero());
            }
        }
    }
    let mut s = Search::new(gbig, h, false, m, false, None)?;
    let mut assigned: Vec<Option<u8>> = vec![None; gbig.vertex_count()];
    let mut cand = initial_candidates(gbig, &s.tm);
    // seed candidate sets from the frozen prefix
    for v in 0..m {
        let y = xi.image(v);
        assigned[v] = Some(y as u8);
        for u in gbig.out_neighbors(v) {
            if u >= m {
                cand[u] &= s.mask_for(v, y, u, true);
            }
        }
        for u in gbig.in_neighbors(v) {
            if u >= m {
                cand[u] &= s.mask_for(v, y, u, false);
            }
        }
    }
    if gbig.vertex_count() > m && cand[m..].iter().any(|&c| c == 0) {
        return Ok(BigUint::zero());
    }
    let mode = if collect {
        Mode::Collect
    } else {
        Mode::Count { shortcut: false }
    };
    Ok(s.run(&mut assigned, &mut cand, mode, f))
}

/// `μ̂(l, h)` together with the argmax set `ℳ(l, h)`.
///
/// The maximum over an empty homomorphism set is undefined and reported as an
/// error.
pub fn mu_hat(l: &Digraph, h: &Digraph) -> Result<(u64, Vec<VertexMap>)> {
    let homs = enumerate_homs(l, h, false)?;
    if homs.is_empty() {
        return Err(Error::EmptyHomSet);
    }
    let best = homs.iter().map(|xi| mu(l, h, xi)).max().unwrap();
    let class = homs
        .into_iter()
        .filter(|xi| mu(l, h, xi) == best)
        .collect();
    Ok((best, class))
}

fn check_family(g: &Digraph, family: &[Subgraph]) -> Result<()> {
    for l in family {
        if !l.is_subgraph_of(g) {
            return Err(Error::NotASubgraph);
        }
    }
    Ok(())
}

/// `μ_{ξ|L}(L)` evaluated without materializing the restriction: the iota
/// values of `xi` summed over the proper arcs of `l` in host coordinates.
pub fn mu_on(l: &Subgraph, h: &Digraph, xi: &VertexMap) -> u64 {
    l.proper_arcs_global()
        .iter()
        .map(|&(u, v)| iota_of(h, xi, u, v))
        .sum()
}

/// `ℳ^ℒ(g, h)`: the homomorphisms whose restriction to every member of the
/// family is mu-maximal.
pub fn m_class(g: &Digraph, h: &Digraph, family: &[Subgraph]) -> Result<Vec<VertexMap>> {
    check_family(g, family)?;
    let homs = enumerate_homs(g, h, false)?;
    if homs.is_empty() {
        return Ok(Vec::new());
    }
    let mut hats = Vec::with_capacity(family.len());
    for l in family {
        let (hat, _) = mu_hat(&l.graph, h)?;
        hats.push(hat);
    }
    Ok(homs
        .into_iter()
        .filter(|xi| {
            family
                .iter()
                .zip(&hats)
                .all(|(l, &hat)| mu_on(l, h, xi) == hat)
        })
        .collect())
}

/// The combined proper arc set `B = ∪_L A(L*)` of a family, ascending and
/// deduplicated.
pub fn family_arcs(family: &[Subgraph]) -> Vec<(usize, usize)> {
    let mut arcs: Vec<(usize, usize)> = family
        .iter()
        .flat_map(|l| l.proper_arcs_global())
        .collect();
    arcs.sort_unstable();
    arcs.dedup();
    arcs
}

/// `ℐ^ℒ(g, h)`: the distinct iota profiles of `ℳ^ℒ(g, h)` on the combined
/// arc set.
pub fn i_class(g: &Digraph, h: &Digraph, family: &[Subgraph]) -> Result<Vec<IotaProfile>> {
    let arcs = family_arcs(family);
    let mut profiles: Vec<IotaProfile> = m_class(g, h, family)?
        .iter()
        .map(|xi| IotaProfile::of(h, xi, &arcs))
        .collect();
    profiles.sort();
    profiles.dedup();
    Ok(profiles)
}

/// `𝒥^ℒ(ξ)` against a (possibly different) reflexive target: the maps into
/// `target` whose iota profile matches that of `xi` on every family member.
pub fn j_class(
    g: &Digraph,
    xi_cod: &Digraph,
    xi: &VertexMap,
    target: &Digraph,
    family: &[Subgraph],
) -> Result<Vec<VertexMap>> {
    check_family(g, family)?;
    if !is_hom(g, xi_cod, xi) {
        return Err(Error::NotAHomomorphism);
    }
    let arcs = family_arcs(family);
    let want = IotaProfile::of(xi_cod, xi, &arcs);
    let homs = enumerate_homs(g, target, false)?;
    Ok(homs
        .into_iter()
        .filter(|zeta| IotaProfile::of(target, zeta, &arcs) == want)
        .collect())
}

/// Cardinality of `𝒥^ℒ(ξ)` by profile-constrained backtracking; equal to
/// `j_class(..).len()` but without materializing the maps.
pub fn j_count(
    g: &Digraph,
    xi_cod: &Digraph,
    xi: &VertexMap,
    target: &Digraph,
    family: &[Subgraph],
) -> Result<BigUint> {
    check_family(g, family)?;
    if !is_hom(g, xi_cod, xi) {
        return Err(Error::NotAHomomorphism);
    }
    let arcs = family_arcs(family);
    let req: HashMap<(usize, usize), u64> = arcs
        .iter()
        .map(|&(u, v)| ((u, v), iota_of(xi_cod, xi, u, v)))
        .collect();
    let mut s = Search::new(g, target, false, 0, true, Some(&req))?;
    let mut assigned = vec![None; g.vertex_count()];
    let mut cand = initial_candidates(g, &s.tm);
    Ok(s.run(
        &mut assigned,
        &mut cand,
        Mode::Count { shortcut: false },
        &mut |_| {},
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(n: usize) -> Digraph {
        Digraph::chain(n)
    }

    #[test]
    fn chain_self_counts() {
        assert_eq!(hom_count(&c(1), &c(1), false).unwrap(), 3u32.into());
        assert_eq!(hom_count(&c(1), &c(1), true).unwrap(), 1u32.into());
    }

    #[test]
    fn singleton_counts_loops() {
        let e = Digraph::singleton_with_loop();
        let h = Digraph::from_arcs(4, &[(0, 0), (2, 2), (1, 3)]).unwrap();
        assert_eq!(hom_count(&e, &h, false).unwrap(), BigUint::from(2u32));
    }

    #[test]
    fn strict_needs_proper_arcs() {
        let g = Digraph::from_arcs(2, &[(0, 1)]).unwrap();
        let anti = Digraph::from_arcs(2, &[(0, 0), (1, 1)]).unwrap();
        assert_eq!(hom_count(&g, &anti, true).unwrap(), BigUint::zero());
    }

    #[test]
    fn engine_matches_naive_on_samples() {
        let gs = [
            Digraph::chain(2),
            Digraph::from_arcs(3, &[(0, 1), (1, 2), (2, 0)]).unwrap(),
            Digraph::from_arcs(4, &[(0, 1), (2, 3), (1, 1)]).unwrap(),
            Digraph::empty(3).with_all_loops(),
        ];
        let hs = [
            Digraph::chain(2),
            Digraph::from_arcs(3, &[(0, 1), (0, 2), (1, 1), (2, 2), (0, 0)]).unwrap(),
            Digraph::from_arcs(2, &[(0, 1), (1, 0)]).unwrap(),
        ];
        for g in &gs {
            for h in &hs {
                for strict in [false, true] {
                    let fast = enumerate_homs(g, h, strict).unwrap();
                    let slow = naive_homs(g, h, strict);
                    assert_eq!(fast, slow, "g={g:?} h={h:?} strict={strict}");
                    assert_eq!(
                        hom_count(g, h, strict).unwrap(),
                        BigUint::from(slow.len()),
                    );
                }
            }
        }
    }

    #[test]
    fn enumeration_is_lexicographic() {
        let g = Digraph::empty(2).with_all_loops();
        let h = c(1);
        let homs = enumerate_homs(&g, &h, false).unwrap();
        let images: Vec<Vec<usize>> = homs.iter().map(|m| m.images()).collect();
        let mut sorted = images.clone();
        sorted.sort();
        assert_eq!(images, sorted);
        assert_eq!(homs.len(), 4);
    }

    #[test]
    fn extension_partition() {
        // Gbig = G: the class is the singleton
        let g = c(1);
        let homs = enumerate_homs(&g, &c(2), false).unwrap();
        for xi in &homs {
            let ext = extensions(&g, &g, &c(2), xi).unwrap();
            assert_eq!(ext, vec![xi.clone()]);
        }
        // partition identity over a strictly larger host
        let gbig = Digraph::from_arcs(3, &[(0, 0), (1, 1), (0, 1), (1, 2), (2, 2)]).unwrap();
        let gsmall = Digraph::from_arcs(2, &[(0, 0), (1, 1), (0, 1)]).unwrap();
        let h = c(2);
        let total: usize = enumerate_homs(&gsmall, &h, false)
            .unwrap()
            .iter()
            .map(|xi| extensions(&gsmall, &gbig, &h, xi).unwrap().len())
            .sum();
        assert_eq!(BigUint::from(total), hom_count(&gbig, &h, false).unwrap());
        // disjointness
        let all: Vec<VertexMap> = enumerate_homs(&gsmall, &h, false)
            .unwrap()
            .iter()
            .flat_map(|xi| extensions(&gsmall, &gbig, &h, xi).unwrap())
            .collect();
        let mut dedup = all.clone();
        dedup.sort();
        dedup.dedup();
        assert_eq!(all.len(), dedup.len());
    }

    #[test]
    fn extensions_reject_non_subgraph() {
        let g = Digraph::from_arcs(2, &[(0, 1), (1, 0)]).unwrap();
        let gbig = Digraph::from_arcs(2, &[(0, 1)]).unwrap();
        let xi = VertexMap::new(2, 2, vec![0, 1]);
        assert!(matches!(
            extensions(&g, &gbig, &c(1), &xi),
            Err(Error::NotASubgraph)
        ));
    }

    #[test]
    fn mu_hat_on_cover_arc() {
        // single proper arc, target C1: maps (0,0),(0,1),(1,1) have mu 1,2,1
        let l = Digraph::from_arcs(2, &[(0, 1)]).unwrap();
        let (hat, class) = mu_hat(&l, &c(1)).unwrap();
        assert_eq!(hat, 2);
        assert_eq!(class.len(), 1);
        assert_eq!(class[0].images(), vec![0, 1]);
        let mus: Vec<u64> = enumerate_homs(&l, &c(1), false)
            .unwrap()
            .iter()
            .map(|xi| mu(&l, &c(1), xi))
            .collect();
        assert_eq!(mus, vec![1, 2, 1]);
    }

    #[test]
    fn mu_hat_empty_domain_arcs() {
        let l = Digraph::empty(2).with_all_loops();
        let (hat, class) = mu_hat(&l, &c(1)).unwrap();
        assert_eq!(hat, 0);
        assert_eq!(class.len(), 4);
    }

    #[test]
    fn mu_hat_rejects_empty_homset() {
        let l = Digraph::singleton_with_loop();
        let h = Digraph::empty(2); // no loops at all
        assert!(matches!(mu_hat(&l, &h), Err(Error::EmptyHomSet)));
    }

    #[test]
    fn m_class_degenerate_families() {
        let g = c(2);
        let h = c(1);
        let all = enumerate_homs(&g, &h, false).unwrap();
        assert_eq!(m_class(&g, &h, &[]).unwrap(), all);
        let whole = Subgraph::whole(&g);
        let (_, mclass) = mu_hat(&g, &h).unwrap();
        assert_eq!(m_class(&g, &h, &[whole]).unwrap(), mclass);
    }

    #[test]
    fn j_class_empty_family_is_everything() {
        let g = c(1);
        let homs = enumerate_homs(&g, &c(2), false).unwrap();
        let xi = &homs[0];
        let j = j_class(&g, &c(2), xi, &c(2), &[]).unwrap();
        assert_eq!(j.len(), homs.len());
    }

    #[test]
    fn j_count_matches_j_class() {
        let g = crate::fixtures::chain_plus_z();
        let fam = crate::paths::top_path_family(&g).unwrap();
        let target = c(3);
        let sigma = enumerate_homs(&g, &target, true).unwrap();
        assert!(!sigma.is_empty());
        for s in &sigma {
            let listed = j_class(&g, &target, s, &target, &fam).unwrap();
            let counted = j_count(&g, &target, s, &target, &fam).unwrap();
            assert_eq!(BigUint::from(listed.len()), counted);
            assert_eq!(listed.len(), 4);
        }
    }

    #[test]
    fn map_text_round_trip() {
        let m = VertexMap::new(3, 4, vec![2, 0, 3]);
        assert_eq!(m.to_text(), "map 0->2 1->0 2->3");
        assert_eq!(VertexMap::from_text(&m.to_text(), 4).unwrap(), m);
        assert!(VertexMap::from_text("map 0->9", 4).is_err());
    }
}
