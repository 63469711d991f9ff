//! Shell encapsulation of off-top vertices and the exact ratio `φ`.
//!
//! Vertices missing every maximal-length path fall into connectivity
//! components of the cover digraph restricted to the off-top set. A component
//! is encapsulated when each member has a bottom and an upper shell inside
//! the top vertex set, and the whole bundle fits into one interval of the
//! transitive hull. From the capsule bounds an exact rational `φ` is read off
//! that ties strict-homomorphism counts to profile-class sizes.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::One;

use crate::digraph::Digraph;
use crate::error::{Error, Result};
use crate::homs;
use crate::paths::{self, TopStructure};

/// One encapsulated component with its shells, bounds and chain data.
#[derive(Clone, Debug)]
pub struct CapsuleData {
    /// component members, ascending
    pub z: Vec<usize>,
    /// bottom shell per member, parallel to `z`
    pub bottom: Vec<Vec<usize>>,
    /// upper shell per member, parallel to `z`
    pub upper: Vec<Vec<usize>>,
    pub b_z: usize,
    pub u_z: usize,
    /// length of the chain the capsule interval maps onto
    pub k_z: u64,
    /// lower chain bound per member, parallel to `z`
    pub m_lo: Vec<u64>,
    /// upper chain bound per member, parallel to `z`
    pub m_hi: Vec<u64>,
    /// the digraph induced on the component, reindexed along `z`
    pub z_graph: Digraph,
}

/// Connectivity components (undirected, via adjacency) of the cover digraph
/// restricted to the off-top vertices. Empty exactly when every vertex lies
/// on a maximal-length path.
pub fn z_components(g: &Digraph) -> Result<Vec<Vec<usize>>> {
    let t = paths::tops(g)?;
    Ok(z_components_of(&t))
}

fn z_components_of(t: &TopStructure) -> Vec<Vec<usize>> {
    let off = &t.v_off;
    let cover = &t.data.cover;
    let mut comp: Vec<Vec<usize>> = Vec::new();
    let mut seen = vec![false; t.g_of.len()];
    for &start in off {
        if seen[start] {
            continue;
        }
        let mut members = vec![start];
        seen[start] = true;
        let mut queue = vec![start];
        while let Some(v) = queue.pop() {
            for w in cover.out_neighbors(v).chain(cover.in_neighbors(v)) {
                if !seen[w] && off.binary_search(&w).is_ok() {
                    seen[w] = true;
                    members.push(w);
                    queue.push(w);
                }
            }
        }
        members.sort_unstable();
        comp.push(members);
    }
    comp.sort();
    comp
}

/// Off-top vertices from which `z` is reachable inside the off-top set,
/// `z` included, walking the cover digraph.
fn offtop_ancestors(cover: &Digraph, is_top: &[bool], z: usize) -> Vec<usize> {
    let mut seen = vec![false; is_top.len()];
    seen[z] = true;
    let mut stack = vec![z];
    let mut out = vec![z];
    while let Some(v) = stack.pop() {
        for u in cover.in_neighbors(v) {
            if !is_top[u] && !seen[u] {
                seen[u] = true;
                out.push(u);
                stack.push(u);
            }
        }
    }
    out
}

fn offtop_descendants(cover: &Digraph, is_top: &[bool], z: usize) -> Vec<usize> {
    let mut seen = vec![false; is_top.len()];
    seen[z] = true;
    let mut stack = vec![z];
    let mut out = vec![z];
    while let Some(v) = stack.pop() {
        for u in cover.out_neighbors(v) {
            if !is_top[u] && !seen[u] {
                seen[u] = true;
                out.push(u);
                stack.push(u);
            }
        }
    }
    out
}

/// The minimum bottom shell of an off-top vertex: the top vertices starting a
/// cover path to it with no intermediate top vertex. Every valid bottom shell
/// contains this one, so encapsulation succeeds for some shell choice iff it
/// succeeds here.
pub fn frontier_bottom_shell(t: &TopStructure, z: usize) -> Vec<usize> {
    let is_top: Vec<bool> = (0..t.g_of.len()).map(|v| t.g_of[v].is_some()).collect();
    let anc = offtop_ancestors(&t.data.cover, &is_top, z);
    let mut shell: Vec<usize> = Vec::new();
    for &a in &anc {
        for p in t.data.cover.in_neighbors(a) {
            if is_top[p] {
                shell.push(p);
            }
        }
    }
    shell.sort_unstable();
    shell.dedup();
    shell
}

pub fn frontier_upper_shell(t: &TopStructure, z: usize) -> Vec<usize> {
    let is_top: Vec<bool> = (0..t.g_of.len()).map(|v| t.g_of[v].is_some()).collect();
    let desc = offtop_descendants(&t.data.cover, &is_top, z);
    let mut shell: Vec<usize> = Vec::new();
    for &d in &desc {
        for p in t.data.cover.out_neighbors(d) {
            if is_top[p] {
                shell.push(p);
            }
        }
    }
    shell.sort_unstable();
    shell.dedup();
    shell
}

/// Finds the capsule for one component: frontier shells for every member and
/// the lexicographically first `(b_Z, u_Z)` whose hull interval contains the
/// whole bundle. `None` when no bound pair works.
pub fn find_shells(g: &Digraph, z_comp: &[usize]) -> Result<Option<CapsuleData>> {
    let t = paths::tops(g)?;
    let comps = z_components_of(&t);
    if !comps.iter().any(|c| c == z_comp) {
        return Err(Error::Parse("not a component of the off-top cover".into()));
    }
    Ok(capsule_for(g, &t, z_comp))
}

fn capsule_for(g: &Digraph, t: &TopStructure, z_comp: &[usize]) -> Option<CapsuleData> {
    let bottom: Vec<Vec<usize>> = z_comp.iter().map(|&z| frontier_bottom_shell(t, z)).collect();
    let upper: Vec<Vec<usize>> = z_comp.iter().map(|&z| frontier_upper_shell(t, z)).collect();
    if bottom.iter().any(|b| b.is_empty()) || upper.iter().any(|u| u.is_empty()) {
        return None;
    }
    let mut bundle: Vec<usize> = z_comp.to_vec();
    bundle.extend(bottom.iter().flatten());
    bundle.extend(upper.iter().flatten());
    bundle.sort_unstable();
    bundle.dedup();

    let hull = g.transitive_hull();
    let (b_z, u_z) = 'search: {
        for &b in &t.v_top {
            for &u in &t.v_top {
                if bundle
                    .iter()
                    .all(|&w| hull.has_arc(b, w) && hull.has_arc(w, u))
                {
                    break 'search (b, u);
                }
            }
        }
        return None;
    };

    let g_of = |v: usize| t.g_of[v].expect("shell members sit on top paths") as i64;
    let f_of = |v: usize| {
        let f = g_of(v) - g_of(b_z);
        assert!(f >= 0, "positions inside the capsule cannot precede the base");
        f as u64
    };
    let k_z = f_of(u_z);
    let m_lo: Vec<u64> = bottom.iter().map(|b| b.iter().map(|&a| f_of(a)).max().unwrap()).collect();
    let m_hi: Vec<u64> = upper.iter().map(|u| u.iter().map(|&c| f_of(c)).min().unwrap()).collect();
    let z_graph = g.induced(z_comp);
    Some(CapsuleData {
        z: z_comp.to_vec(),
        bottom,
        upper,
        b_z,
        u_z,
        k_z,
        m_lo,
        m_hi,
        z_graph,
    })
}

/// Capsules for every component, or `None` as soon as one component has no
/// encapsulation.
pub fn capsules(g: &Digraph) -> Result<Option<Vec<CapsuleData>>> {
    let t = paths::tops(g)?;
    let mut out = Vec::new();
    for comp in z_components_of(&t) {
        match capsule_for(g, &t, &comp) {
            Some(c) => out.push(c),
            None => return Ok(None),
        }
    }
    Ok(Some(out))
}

/// Counts homomorphisms and strict homomorphisms of a component digraph into
/// the chain of length `k`, subject to per-vertex bounds: weak bounds for the
/// plain count, strictly-between bounds for the strict one.
pub fn bounded_chain_counts(
    z_sub: &Digraph,
    m_lo: &[u64],
    m_hi: &[u64],
    k: u64,
) -> Result<(BigUint, BigUint)> {
    if m_lo.len() != z_sub.vertex_count() || m_hi.len() != z_sub.vertex_count() {
        return Err(Error::LengthMismatch(
            "bounds",
            m_lo.len().min(m_hi.len()),
            z_sub.vertex_count(),
        ));
    }
    let chain = Digraph::chain(k as usize);
    let mut weak = 0u64;
    let mut strict = 0u64;
    for theta in homs::enumerate_homs(z_sub, &chain, false)? {
        let within = |strictly: bool| {
            (0..z_sub.vertex_count()).all(|v| {
                let y = theta.image(v) as u64;
                if strictly {
                    m_lo[v] < y && y < m_hi[v]
                } else {
                    m_lo[v] <= y && y <= m_hi[v]
                }
            })
        };
        if within(false) {
            weak += 1;
        }
        if within(true) && homs::is_strict_hom(z_sub, &chain, &theta) {
            strict += 1;
        }
    }
    Ok((BigUint::from(weak), BigUint::from(strict)))
}

/// The exact ratio `φ_G`: over all capsules, the product of strict bounded
/// chain counts over plain bounded chain counts. Equals one when nothing is
/// off the top paths.
pub fn phi(g: &Digraph) -> Result<BigRational> {
    let caps = capsules(g)?.ok_or(Error::NotShellEncapsulated)?;
    let mut ratio = BigRational::one();
    for cap in &caps {
        let (weak, strict) = bounded_chain_counts(&cap.z_graph, &cap.m_lo, &cap.m_hi, cap.k_z)?;
        assert!(
            weak > BigUint::from(0u32) && strict > BigUint::from(0u32),
            "capsule counts are positive whenever encapsulation holds"
        );
        ratio *= BigRational::new(BigInt::from(strict), BigInt::from(weak));
    }
    Ok(ratio)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn ratio(n: u32, d: u32) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn chain_has_no_components() {
        assert!(z_components(&Digraph::chain(4)).unwrap().is_empty());
    }

    #[test]
    fn two_incomparable_singletons() {
        // chain 0<1<2<3 with 4 and 5 both squeezed between the ends
        let g = fixtures::poset(6, &[(0, 1), (1, 2), (2, 3), (0, 4), (4, 3), (0, 5), (5, 3)]);
        let comps = z_components(&g).unwrap();
        assert_eq!(comps, vec![vec![4], vec![5]]);
    }

    #[test]
    fn chain_plus_z_capsule() {
        let g = fixtures::chain_plus_z();
        let comps = z_components(&g).unwrap();
        assert_eq!(comps, vec![vec![4]]);
        let cap = find_shells(&g, &[4]).unwrap().unwrap();
        assert_eq!(cap.bottom, vec![vec![0]]);
        assert_eq!(cap.upper, vec![vec![3]]);
        assert_eq!((cap.b_z, cap.u_z), (0, 3));
        assert_eq!(cap.k_z, 3);
        assert_eq!(cap.m_lo, vec![0]);
        assert_eq!(cap.m_hi, vec![3]);
        assert_eq!(phi(&g).unwrap(), ratio(1, 2));
    }

    #[test]
    fn no_upper_route_means_no_capsule() {
        // z hangs below the chain with no way back up
        let g = fixtures::poset(5, &[(0, 1), (1, 2), (2, 3), (0, 4)]);
        assert!(find_shells(&g, &[4]).unwrap().is_none());
        assert!(capsules(&g).unwrap().is_none());
        assert!(matches!(phi(&g), Err(Error::NotShellEncapsulated)));
    }

    #[test]
    fn two_element_bottom_shell() {
        let g = fixtures::double_ladder_plus_c();
        let comps = z_components(&g).unwrap();
        assert_eq!(comps, vec![vec![8]]);
        let cap = find_shells(&g, &[8]).unwrap().unwrap();
        assert_eq!(cap.bottom, vec![vec![1, 4]]);
        assert_eq!(cap.upper, vec![vec![7]]);
        assert_eq!((cap.b_z, cap.u_z), (0, 7));
        assert_eq!(cap.k_z, 4);
        assert_eq!(cap.m_lo, vec![1]);
        assert_eq!(cap.m_hi, vec![4]);
        assert_eq!(phi(&g).unwrap(), ratio(2, 4).reduced());
    }

    #[test]
    fn bounded_counts_examples() {
        let single = Digraph::singleton_with_loop();
        let (w, s) = bounded_chain_counts(&single, &[0], &[3], 3).unwrap();
        assert_eq!(w, BigUint::from(4u32));
        assert_eq!(s, BigUint::from(2u32));
        let (w, s) = bounded_chain_counts(&single, &[0], &[1], 1).unwrap();
        assert_eq!(w, BigUint::from(2u32));
        assert_eq!(s, BigUint::from(0u32));
        let (w, s) = bounded_chain_counts(&single, &[2], &[1], 3).unwrap();
        assert_eq!(w, BigUint::from(0u32));
        assert_eq!(s, BigUint::from(0u32));
    }

    #[test]
    fn phi_is_one_without_capsules() {
        assert_eq!(phi(&Digraph::chain(3)).unwrap(), BigRational::one());
    }

    #[test]
    fn disjoint_extra_chain_keeps_phi() {
        // chain+z together with a separate full chain of the same height
        let mut rel = vec![(0, 1), (1, 2), (2, 3), (0, 4), (4, 3)];
        rel.extend([(5, 6), (6, 7), (7, 8)]);
        let g = fixtures::poset(9, &rel);
        assert_eq!(phi(&g).unwrap(), ratio(1, 2));
    }

    #[test]
    fn shells_satisfy_their_defining_bullets() {
        // frontier shells: every member reaches z off-top, and every cover
        // path from a top vertex into z meets the shell
        let g = fixtures::double_ladder_plus_c();
        let t = crate::paths::tops(&g).unwrap();
        let z = 8;
        let shell = frontier_bottom_shell(&t, z);
        let cover = &t.data.cover;
        // bullet one: a cover path from each shell member to z
        let hull = cover.transitive_hull();
        for &b in &shell {
            assert!(hull.has_arc(b, z));
        }
        // bullet two: enumerate every cover path ending in z that starts on
        // a top path; each must intersect the shell
        for p in crate::paths::all_paths(cover) {
            if p.end() == z && t.g_of[p.start()].is_some() {
                assert!(p.verts().iter().any(|v| shell.binary_search(v).is_ok()));
            }
        }
    }
}
