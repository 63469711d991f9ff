//! Arc weights, clamp expansions and selecting weights.
//!
//! An arc weight assigns a natural number to every proper arc of its host.
//! The expansion `G(α)_ν` clamps `ν·α(v,w)` fresh midpoints into each
//! positively weighted arc; counting homomorphisms of the expansion into a
//! reflexive target then becomes an exact exponential sum in `ν`, whose
//! leading term a selecting weight pins to a single profile class.

use std::fmt::Write as _;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, Zero};

use crate::digraph::{Digraph, Subgraph};
use crate::error::{Error, Result};
use crate::homs::{self, IotaProfile, VertexMap};

/// A map `A(G*) -> ℕ₀`, stored densely over the host's proper arcs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ArcWeight {
    host_n: usize,
    arcs: Vec<(usize, usize)>,
    values: Vec<u64>,
}

impl ArcWeight {
    /// The zero weight of `host`.
    pub fn zero(host: &Digraph) -> ArcWeight {
        let arcs: Vec<_> = host.proper_arcs().collect();
        ArcWeight {
            host_n: host.vertex_count(),
            arcs: arcs.clone(),
            values: vec![0; arcs.len()],
        }
    }

    /// Builds a weight from `(arc, value)` pairs; every arc must be a proper
    /// arc of the host.
    pub fn from_pairs(host: &Digraph, pairs: &[((usize, usize), u64)]) -> Result<ArcWeight> {
        let mut w = ArcWeight::zero(host);
        for &((u, v), k) in pairs {
            let i = w.arcs.binary_search(&(u, v)).map_err(|_| Error::HostMismatch)?;
            w.values[i] = k;
        }
        Ok(w)
    }

    pub fn hosted_on(&self, g: &Digraph) -> bool {
        self.host_n == g.vertex_count() && self.arcs.iter().copied().eq(g.proper_arcs())
    }

    pub fn get(&self, u: usize, v: usize) -> Option<u64> {
        self.arcs.binary_search(&(u, v)).ok().map(|i| self.values[i])
    }

    pub fn entries(&self) -> impl Iterator<Item = ((usize, usize), u64)> + '_ {
        self.arcs.iter().copied().zip(self.values.iter().copied())
    }

    /// `D(α)`: the positively weighted arcs, ascending.
    pub fn support(&self) -> Vec<(usize, usize)> {
        self.entries()
            .filter(|&(_, k)| k > 0)
            .map(|(a, _)| a)
            .collect()
    }

    pub fn total(&self) -> u64 {
        self.values.iter().sum()
    }

    /// Text form: a `weight` header, then one `u v k` line per positive entry.
    pub fn to_text(&self) -> String {
        let mut s = String::from("weight\n");
        for ((u, v), k) in self.entries() {
            if k > 0 {
                let _ = writeln!(s, "{u} {v} {k}");
            }
        }
        s
    }

    pub fn from_text(host: &Digraph, text: &str) -> Result<ArcWeight> {
        let mut lines = text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'));
        if lines.next() != Some("weight") {
            return Err(Error::Parse("weight text must start with `weight`".into()));
        }
        let mut pairs = Vec::new();
        for line in lines {
            let mut t = line.split_whitespace();
            match (t.next(), t.next(), t.next(), t.next()) {
                (Some(us), Some(vs), Some(ks), None) => {
                    let u = us.parse().map_err(|_| Error::Parse(format!("bad weight line `{line}`")))?;
                    let v = vs.parse().map_err(|_| Error::Parse(format!("bad weight line `{line}`")))?;
                    let k = ks.parse().map_err(|_| Error::Parse(format!("bad weight line `{line}`")))?;
                    pairs.push(((u, v), k));
                }
                _ => return Err(Error::Parse(format!("bad weight line `{line}`"))),
            }
        }
        ArcWeight::from_pairs(host, &pairs)
    }
}

/// `π_α(ξ) = Π ι_ξ(v,w)^{α(v,w)}` over the proper arcs of the host.
///
/// Defined here for reflexive targets only, which is where the expansion
/// counting identity lives.
pub fn pi_alpha(g: &Digraph, h: &Digraph, xi: &VertexMap, alpha: &ArcWeight) -> Result<BigUint> {
    if !alpha.hosted_on(g) {
        return Err(Error::HostMismatch);
    }
    if !h.is_reflexive() {
        return Err(Error::NotReflexive);
    }
    if !homs::is_hom(g, h, xi) {
        return Err(Error::NotAHomomorphism);
    }
    let mut p = BigUint::one();
    for ((u, v), k) in alpha.entries() {
        if k > 0 {
            p *= BigUint::from(homs::iota_of(h, xi, u, v)).pow(k as u32);
        }
    }
    Ok(p)
}

/// The clamp expansion `G(α)_ν`, or the poset variant `G'(α)_ν`.
#[derive(Clone, Debug)]
pub struct Expansion {
    pub base: Digraph,
    pub weight: ArcWeight,
    pub nu: u64,
    pub poset_variant: bool,
    pub result: Digraph,
    /// clamp vertex block per support arc, in ascending arc order
    pub clamp_sets: Vec<((usize, usize), Vec<usize>)>,
}

/// Builds `G(α)_ν`: clamp vertices are numbered contiguously after `V(G)`,
/// support arcs in ascending order, which fixes the construction literally.
///
/// With `poset_variant` the result is the transitive hull with loops added on
/// every clamp vertex; the base must be a poset, and the result is checked to
/// be one.
pub fn expand(g: &Digraph, alpha: &ArcWeight, nu: u64, poset_variant: bool) -> Result<Expansion> {
    if !alpha.hosted_on(g) {
        return Err(Error::HostMismatch);
    }
    if poset_variant && !g.is_poset() {
        return Err(Error::NotAPoset);
    }
    let n = g.vertex_count();
    let mut clamp_sets = Vec::new();
    let mut next = n;
    for ((u, v), k) in alpha.entries() {
        if k > 0 {
            let block: Vec<usize> = (next..next + (nu * k) as usize).collect();
            next += block.len();
            clamp_sets.push(((u, v), block));
        }
    }
    let mut arcs: Vec<(usize, usize)> = g.arcs().collect();
    for ((u, v), block) in &clamp_sets {
        for &x in block {
            arcs.push((*u, x));
            arcs.push((x, *v));
        }
    }
    let mut result = Digraph::from_arcs(next, &arcs)?;
    if poset_variant {
        result = result.transitive_hull();
        let loops: Vec<(usize, usize)> = (n..next).map(|x| (x, x)).collect();
        let mut all: Vec<(usize, usize)> = result.arcs().collect();
        all.extend(loops);
        result = Digraph::from_arcs(next, &all)?;
        assert!(result.is_poset(), "poset expansion must stay a poset");
    } else if g.is_proper_acyclic() {
        assert!(
            result.is_proper_acyclic(),
            "expansion must preserve the acyclic loopless part"
        );
    }
    Ok(Expansion {
        base: g.clone(),
        weight: alpha.clone(),
        nu,
        poset_variant,
        result,
        clamp_sets,
    })
}

/// One failed comparison from [`check_extension_formula`].
#[derive(Clone, Debug)]
pub struct ExtensionViolation {
    pub poset_variant: bool,
    pub xi: VertexMap,
    pub expected: BigUint,
    pub got: BigUint,
    pub what: &'static str,
}

/// Verifies the expansion counting identities against brute force: every
/// extension class has exactly `π_α(ξ)^ν` members, and the class sizes add up
/// to the full homomorphism count of the expansion.
///
/// For a poset base the poset variant is checked as well. Its per-class
/// equality is asserted only against transitive targets; against a merely
/// reflexive target the hull can cut extensions away, so there the brute
/// count must not exceed `π_α(ξ)^ν` and only the partition total is an
/// equality.
pub fn check_extension_formula(
    g: &Digraph,
    alpha: &ArcWeight,
    h: &Digraph,
    nu: u64,
) -> Result<Vec<ExtensionViolation>> {
    if !h.is_reflexive() {
        return Err(Error::NotReflexive);
    }
    let mut violations = Vec::new();
    let variants = if g.is_poset() { vec![false, true] } else { vec![false] };
    for poset_variant in variants {
        let exp = expand(g, alpha, nu, poset_variant)?;
        let homs_base = homs::enumerate_homs(g, h, false)?;
        let mut total = BigUint::zero();
        for xi in &homs_base {
            let got = homs::count_extensions(g, &exp.result, h, xi)?;
            let expected = pi_alpha(g, h, xi, alpha)?.pow(nu as u32);
            let exact = !poset_variant || h.is_transitive();
            if exact && got != expected {
                violations.push(ExtensionViolation {
                    poset_variant,
                    xi: xi.clone(),
                    expected: expected.clone(),
                    got: got.clone(),
                    what: "class size differs from pi^nu",
                });
            }
            if !exact && got > expected {
                violations.push(ExtensionViolation {
                    poset_variant,
                    xi: xi.clone(),
                    expected: expected.clone(),
                    got: got.clone(),
                    what: "hulled class size exceeds pi^nu",
                });
            }
            total += got;
        }
        let whole = homs::hom_count(&exp.result, h, false)?;
        if total != whole {
            violations.push(ExtensionViolation {
                poset_variant,
                xi: VertexMap::new(0, h.vertex_count().max(1), vec![]),
                expected: whole,
                got: total,
                what: "class sizes do not add up to the full count",
            });
        }
    }
    Ok(violations)
}

/// Lemma-style weight combination: values of the per-subgraph weights added
/// arc by arc over the host.
pub fn combine_weights(g: &Digraph, parts: &[(Subgraph, ArcWeight)]) -> Result<ArcWeight> {
    let mut beta = ArcWeight::zero(g);
    for (l, alpha_l) in parts {
        if !l.is_subgraph_of(g) {
            return Err(Error::NotASubgraph);
        }
        if !alpha_l.hosted_on(&l.graph) {
            return Err(Error::HostMismatch);
        }
        for ((lu, lv), k) in alpha_l.entries() {
            let (u, v) = (l.verts[lu], l.verts[lv]);
            let i = beta.arcs.binary_search(&(u, v)).map_err(|_| Error::NotASubgraph)?;
            beta.values[i] += k;
        }
    }
    Ok(beta)
}

/// Checks the product identity behind weight combination:
/// `π_β(θ) = Π_L π_{α_L}(θ|_L)` for a given map.
pub fn check_combination_product(
    g: &Digraph,
    h: &Digraph,
    parts: &[(Subgraph, ArcWeight)],
    theta: &VertexMap,
) -> Result<bool> {
    let beta = combine_weights(g, parts)?;
    let lhs = pi_alpha(g, h, theta, &beta)?;
    let mut rhs = BigUint::one();
    for (l, alpha_l) in parts {
        let restricted = theta.restrict(&l.verts);
        rhs *= pi_alpha(&l.graph, h, &restricted, alpha_l)?;
    }
    Ok(lhs == rhs)
}

/// The selecting weight `γ_ζ^ℒ(v,w) = ι_ζ(v,w) · #{L : vw ∈ A(L*)}` for a
/// map that is mu-maximal on every family member.
pub fn selecting_weight(
    g: &Digraph,
    h: &Digraph,
    zeta: &VertexMap,
    family: &[Subgraph],
) -> Result<ArcWeight> {
    if !h.is_reflexive() {
        return Err(Error::NotReflexive);
    }
    if !homs::is_hom(g, h, zeta) {
        return Err(Error::NotAHomomorphism);
    }
    for l in family {
        if !l.is_subgraph_of(g) {
            return Err(Error::NotASubgraph);
        }
        let (hat, _) = homs::mu_hat(&l.graph, h)?;
        if homs::mu_on(l, h, zeta) != hat {
            return Err(Error::NotMuMaximal);
        }
    }
    let mut mult: std::collections::HashMap<(usize, usize), u64> = std::collections::HashMap::new();
    for l in family {
        for arc in l.proper_arcs_global() {
            *mult.entry(arc).or_insert(0) += 1;
        }
    }
    let mut gamma = ArcWeight::zero(g);
    for i in 0..gamma.arcs.len() {
        let (u, v) = gamma.arcs[i];
        if let Some(&m) = mult.get(&(u, v)) {
            gamma.values[i] = homs::iota_of(h, zeta, u, v) * m;
        }
    }
    Ok(gamma)
}

/// Outcome of a selecting-weight check.
#[derive(Clone, Debug)]
pub enum Selecting {
    Yes,
    /// a map violating the defining inequality or its equality case
    No {
        xi: VertexMap,
        what: &'static str,
    },
}

impl Selecting {
    pub fn is_selecting(&self) -> bool {
        matches!(self, Selecting::Yes)
    }
}

/// Decides whether `alpha` is `zeta`-selecting within `ℋ(g, h)`: every map's
/// product is at most `π_α(ζ)`, with equality exactly on the maps sharing
/// `zeta`'s iota profile on the support.
pub fn is_selecting(
    g: &Digraph,
    h: &Digraph,
    alpha: &ArcWeight,
    zeta: &VertexMap,
) -> Result<Selecting> {
    if !h.is_reflexive() {
        return Err(Error::NotReflexive);
    }
    if !homs::is_hom(g, h, zeta) {
        return Err(Error::NotAHomomorphism);
    }
    let support = alpha.support();
    let p_zeta = pi_alpha(g, h, zeta, alpha)?;
    let prof_zeta = IotaProfile::of(h, zeta, &support);
    for xi in homs::enumerate_homs(g, h, false)? {
        let p = pi_alpha(g, h, &xi, alpha)?;
        let same_profile = IotaProfile::of(h, &xi, &support) == prof_zeta;
        if p > p_zeta {
            return Ok(Selecting::No {
                xi,
                what: "product exceeds the zeta product",
            });
        }
        if p == p_zeta && !same_profile {
            return Ok(Selecting::No {
                xi,
                what: "equal product with a different profile",
            });
        }
        if p < p_zeta && same_profile {
            return Ok(Selecting::No {
                xi,
                what: "matching profile with a smaller product",
            });
        }
    }
    Ok(Selecting::Yes)
}

/// Gibbs inequality on positive integers: given `Σx ≤ Σy`, verifies
/// `Π x_i^{y_i} ≤ Π y_i^{y_i}` with equality exactly for `x = y`.
/// Exact integer arithmetic throughout.
pub fn gibbs_check(x: &[u64], y: &[u64]) -> Result<bool> {
    if x.len() != y.len() {
        return Err(Error::LengthMismatch("gibbs", x.len(), y.len()));
    }
    if x.iter().any(|&v| v == 0) || y.iter().any(|&v| v == 0) {
        return Err(Error::NotPositive);
    }
    let sx: u64 = x.iter().sum();
    let sy: u64 = y.iter().sum();
    if sx > sy {
        return Err(Error::SumExceeds(sx, sy));
    }
    let mut lhs = BigUint::one();
    let mut rhs = BigUint::one();
    for (&a, &b) in x.iter().zip(y) {
        lhs *= BigUint::from(a).pow(b as u32);
        rhs *= BigUint::from(b).pow(b as u32);
    }
    Ok(if x == y { lhs == rhs } else { lhs < rhs })
}

/// An exact multiset of `(coefficient, base)` pairs representing
/// `ν ↦ Σ aᵢ·xᵢ^ν`, bases distinct and ascending.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExpoSum {
    terms: Vec<(BigUint, BigUint)>,
}

impl ExpoSum {
    pub fn from_pairs(pairs: impl IntoIterator<Item = (BigUint, BigUint)>) -> ExpoSum {
        let mut by_base: std::collections::BTreeMap<BigUint, BigUint> =
            std::collections::BTreeMap::new();
        for (coeff, base) in pairs {
            if !coeff.is_zero() {
                *by_base.entry(base).or_default() += coeff;
            }
        }
        ExpoSum {
            terms: by_base.into_iter().map(|(b, c)| (c, b)).collect(),
        }
    }

    /// `(coefficient, base)` pairs, bases ascending.
    pub fn terms(&self) -> &[(BigUint, BigUint)] {
        &self.terms
    }

    pub fn eval(&self, nu: u64) -> BigUint {
        let mut s = BigUint::zero();
        for (c, b) in &self.terms {
            s += c * b.pow(nu as u32);
        }
        s
    }

    /// The pair with the largest base; `None` for the empty sum.
    pub fn leading_term(&self) -> Option<(&BigUint, &BigUint)> {
        self.terms.last().map(|(c, b)| (c, b))
    }

    /// Larger base wins; on equal bases the coefficient decides. Empty sums
    /// compare below everything.
    pub fn cmp_leading(&self, other: &ExpoSum) -> std::cmp::Ordering {
        let key = |s: &ExpoSum| s.leading_term().map(|(c, b)| (b.clone(), c.clone()));
        key(self).cmp(&key(other))
    }

    /// The smallest `ν ≥ 0` where `self` evaluates strictly above `other`,
    /// or `None` if no such `ν` exists. Decided exactly: the signed term
    /// difference fixes the eventual sign, and a bounded scan up to the
    /// analytic crossover covers the finite prefix.
    pub fn first_strictly_greater(&self, other: &ExpoSum) -> Option<u64> {
        let mut signed: std::collections::BTreeMap<BigUint, BigInt> =
            std::collections::BTreeMap::new();
        for (c, b) in &self.terms {
            *signed.entry(b.clone()).or_default() += BigInt::from(c.clone());
        }
        for (c, b) in &other.terms {
            *signed.entry(b.clone()).or_default() -= BigInt::from(c.clone());
        }
        signed.retain(|_, c| !c.is_zero());
        let (b_star, c_star) = signed.iter().next_back()?;
        if c_star.is_positive() {
            // negative mass sits at strictly smaller bases and is eventually
            // dominated; scan upward until the evaluations cross
            let neg_mass: BigInt = signed.values().filter(|c| c.is_negative()).map(|c| -c).sum();
            let neg_base = signed
                .iter()
                .filter(|(_, c)| c.is_negative())
                .map(|(b, _)| b.clone())
                .next_back();
            let bound = match neg_base {
                None => 0,
                Some(b2) => crossover(c_star.magnitude(), b_star, &neg_mass.magnitude().clone(), &b2),
            };
            for nu in 0..=bound {
                if self.eval(nu) > other.eval(nu) {
                    return Some(nu);
                }
            }
            unreachable!("dominant positive term must win by the crossover bound");
        } else {
            // eventually below; only a finite prefix can be above
            let pos_mass: BigInt = signed.values().filter(|c| c.is_positive()).cloned().sum();
            if pos_mass.is_zero() {
                return None;
            }
            let pos_base = signed
                .iter()
                .filter(|(_, c)| c.is_positive())
                .map(|(b, _)| b.clone())
                .next_back()
                .unwrap();
            let bound = crossover(c_star.magnitude(), b_star, &pos_mass.magnitude().clone(), &pos_base);
            (0..bound).find(|&nu| self.eval(nu) > other.eval(nu))
        }
    }
}

/// Smallest `t` from which `c·B^ν > m·b^ν` holds for all `ν ≥ t`, for
/// `B > b ≥ 1`. Found by direct exact scan; desk-scale inputs keep it tiny.
fn crossover(c: &BigUint, big_base: &BigUint, m: &BigUint, small_base: &BigUint) -> u64 {
    assert!(big_base > small_base);
    let mut lhs = c.clone();
    let mut rhs = m.clone();
    let mut t = 0u64;
    while lhs <= rhs {
        lhs *= big_base;
        rhs *= small_base;
        t += 1;
        assert!(t < 100_000, "crossover scan exploded; inputs out of scale");
    }
    t
}

/// The exact exponential sum `ν ↦ #ℋ(G(α)_ν, H)` for a reflexive target:
/// homomorphisms of the base aggregated by their `π_α` value.
pub fn hom_count_expo(g: &Digraph, alpha: &ArcWeight, h: &Digraph) -> Result<ExpoSum> {
    if !h.is_reflexive() {
        return Err(Error::NotReflexive);
    }
    if !alpha.hosted_on(g) {
        return Err(Error::HostMismatch);
    }
    let mut pairs = Vec::new();
    for xi in homs::enumerate_homs(g, h, false)? {
        pairs.push((BigUint::one(), pi_alpha(g, h, &xi, alpha)?));
    }
    Ok(ExpoSum::from_pairs(pairs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn c(n: usize) -> Digraph {
        Digraph::chain(n)
    }

    fn single_arc() -> Digraph {
        Digraph::from_arcs(2, &[(0, 1)]).unwrap()
    }

    #[test]
    fn weight_text_round_trip() {
        let g = c(2);
        let w = ArcWeight::from_pairs(&g, &[((0, 1), 2), ((1, 2), 1)]).unwrap();
        assert_eq!(w.to_text(), "weight\n0 1 2\n1 2 1\n");
        assert_eq!(ArcWeight::from_text(&g, &w.to_text()).unwrap(), w);
        assert!(ArcWeight::from_pairs(&g, &[((2, 0), 1)]).is_err());
        assert!(ArcWeight::from_pairs(&g, &[((0, 0), 1)]).is_err());
    }

    #[test]
    fn pi_alpha_examples() {
        let g = single_arc();
        let h = c(1);
        let xi01 = VertexMap::new(2, 2, vec![0, 1]);
        let zero = ArcWeight::zero(&g);
        assert_eq!(pi_alpha(&g, &h, &xi01, &zero).unwrap(), BigUint::one());
        let w1 = ArcWeight::from_pairs(&g, &[((0, 1), 1)]).unwrap();
        assert_eq!(pi_alpha(&g, &h, &xi01, &w1).unwrap(), BigUint::from(2u32));
        let w3 = ArcWeight::from_pairs(&g, &[((0, 1), 3)]).unwrap();
        assert_eq!(pi_alpha(&g, &h, &xi01, &w3).unwrap(), BigUint::from(8u32));
        let loopless = Digraph::from_arcs(2, &[(0, 1)]).unwrap();
        assert!(matches!(
            pi_alpha(&g, &loopless, &xi01, &w1),
            Err(Error::NotReflexive)
        ));
    }

    #[test]
    fn expansion_sizes_match_figure() {
        // V = {a,b,c}, arcs ab and ac, weights 1 and 2
        let g = Digraph::from_arcs(3, &[(0, 1), (0, 2)]).unwrap();
        let alpha = ArcWeight::from_pairs(&g, &[((0, 1), 1), ((0, 2), 2)]).unwrap();
        assert_eq!(expand(&g, &alpha, 1, false).unwrap().result.vertex_count(), 6);
        assert_eq!(expand(&g, &alpha, 2, false).unwrap().result.vertex_count(), 9);
        assert_eq!(expand(&g, &alpha, 0, false).unwrap().result, g);
        let zero = ArcWeight::zero(&g);
        assert_eq!(expand(&g, &zero, 5, false).unwrap().result, g);
    }

    #[test]
    fn expansion_intervals_absorb_clamps() {
        let g = c(2);
        let alpha = ArcWeight::from_pairs(&g, &[((0, 2), 2)]).unwrap();
        let exp = expand(&g, &alpha, 1, false).unwrap();
        let mut iv = exp.result.interval(0, 2).unwrap();
        let mut expected = g.interval(0, 2).unwrap();
        expected.extend(exp.clamp_sets[0].1.iter());
        iv.sort_unstable();
        expected.sort_unstable();
        assert_eq!(iv, expected);
    }

    #[test]
    fn poset_expansion_stays_poset() {
        let g = fixtures::diamond();
        let alpha = ArcWeight::from_pairs(&g, &[((0, 3), 2), ((1, 3), 1)]).unwrap();
        for nu in 0..=2 {
            let exp = expand(&g, &alpha, nu, true).unwrap();
            assert!(exp.result.is_poset());
        }
        let non_poset = single_arc();
        let alpha = ArcWeight::from_pairs(&non_poset, &[((0, 1), 1)]).unwrap();
        assert!(matches!(
            expand(&non_poset, &alpha, 1, true),
            Err(Error::NotAPoset)
        ));
    }

    #[test]
    fn extension_formula_single_arc() {
        // two clamps between a and b, target C1, base map (0,1): 4 extensions
        let g = single_arc();
        let alpha = ArcWeight::from_pairs(&g, &[((0, 1), 1)]).unwrap();
        let exp = expand(&g, &alpha, 2, false).unwrap();
        let xi = VertexMap::new(2, 2, vec![0, 1]);
        let ext = homs::extensions(&g, &exp.result, &c(1), &xi).unwrap();
        assert_eq!(ext.len(), 4);
        assert!(check_extension_formula(&g, &alpha, &c(1), 2)
            .unwrap()
            .is_empty());
    }

    #[test]
    fn extension_formula_nu_zero_and_fig2() {
        let g = Digraph::from_arcs(3, &[(0, 1), (0, 2)]).unwrap();
        let alpha = ArcWeight::from_pairs(&g, &[((0, 1), 1), ((0, 2), 2)]).unwrap();
        assert!(check_extension_formula(&g, &alpha, &c(2), 0).unwrap().is_empty());
        assert!(check_extension_formula(&g, &alpha, &c(2), 1).unwrap().is_empty());
    }

    #[test]
    fn combination_adds_on_shared_arcs() {
        let g = fixtures::diamond();
        let fam = crate::paths::top_path_family(&g).unwrap();
        assert_eq!(fam.len(), 2);
        let parts: Vec<(Subgraph, ArcWeight)> = fam
            .iter()
            .map(|l| {
                let w = ArcWeight::from_pairs(
                    &l.graph,
                    &l.graph
                        .proper_arcs()
                        .map(|a| (a, 1))
                        .collect::<Vec<_>>(),
                )
                .unwrap();
                (l.clone(), w)
            })
            .collect();
        let beta = combine_weights(&g, &parts).unwrap();
        // both top paths run through the cover arcs; nothing is shared in a
        // diamond, so every cover arc carries weight 1 and the long arc 0
        assert_eq!(beta.get(0, 1), Some(1));
        assert_eq!(beta.get(1, 3), Some(1));
        assert_eq!(beta.get(0, 3), Some(0));
        let h = c(2);
        for theta in homs::enumerate_homs(&g, &h, false).unwrap() {
            assert!(check_combination_product(&g, &h, &parts, &theta).unwrap());
        }
        // single whole-host part reproduces its weight
        let whole = Subgraph::whole(&g);
        let w = ArcWeight::from_pairs(&g, &[((0, 3), 2)]).unwrap();
        let back = combine_weights(&g, &[(whole, w.clone())]).unwrap();
        assert_eq!(back, w);
    }

    #[test]
    fn zero_weight_is_always_selecting() {
        let g = fixtures::diamond();
        let h = c(1);
        let zero = ArcWeight::zero(&g);
        for zeta in homs::enumerate_homs(&g, &h, false).unwrap() {
            assert!(is_selecting(&g, &h, &zero, &zeta).unwrap().is_selecting());
        }
    }

    #[test]
    fn selecting_weight_on_whole_host() {
        let g = single_arc();
        let h = c(1);
        let whole = Subgraph::whole(&g);
        let (_, mclass) = homs::mu_hat(&g, &h).unwrap();
        let zeta = &mclass[0];
        let gamma = selecting_weight(&g, &h, zeta, &[whole]).unwrap();
        // multiplicity one: the weight is the iota profile itself
        assert_eq!(gamma.get(0, 1), Some(2));
        assert!(is_selecting(&g, &h, &gamma, zeta).unwrap().is_selecting());
        // non-maximal maps are rejected
        let bad = VertexMap::new(2, 2, vec![0, 0]);
        assert!(matches!(
            selecting_weight(&g, &h, &bad, &[Subgraph::whole(&g)]),
            Err(Error::NotMuMaximal)
        ));
    }

    #[test]
    fn corrupted_weight_caught() {
        // weight 1 on a chain's long arc is not selecting for the strict map:
        // collapsing maps reach the same product with a different profile or
        // a larger one
        let g = c(2);
        let h = c(2);
        let strict = VertexMap::new(3, 3, vec![0, 1, 2]);
        let w = ArcWeight::from_pairs(&g, &[((0, 1), 1)]).unwrap();
        let verdict = is_selecting(&g, &h, &w, &strict).unwrap();
        assert!(!verdict.is_selecting());
    }

    #[test]
    fn gibbs_examples() {
        assert!(gibbs_check(&[2, 2], &[2, 2]).unwrap());
        assert!(gibbs_check(&[1, 3], &[2, 2]).unwrap());
        assert!(gibbs_check(&[2, 1], &[2, 2]).unwrap());
        assert!(matches!(
            gibbs_check(&[1], &[1, 1]),
            Err(Error::LengthMismatch("gibbs", 1, 2))
        ));
        assert!(matches!(
            gibbs_check(&[3, 3], &[2, 2]),
            Err(Error::SumExceeds(6, 4))
        ));
        assert!(matches!(gibbs_check(&[0], &[1]), Err(Error::NotPositive)));
    }

    #[test]
    fn expo_sum_single_arc() {
        let g = single_arc();
        let alpha = ArcWeight::from_pairs(&g, &[((0, 1), 1)]).unwrap();
        let f = hom_count_expo(&g, &alpha, &c(1)).unwrap();
        // maps (0,0) and (1,1) carry product 1, map (0,1) carries product 2
        let terms: Vec<(u32, u32)> = f
            .terms()
            .iter()
            .map(|(c, b)| (c.try_into().unwrap(), b.try_into().unwrap()))
            .collect();
        assert_eq!(terms, vec![(2, 1), (1, 2)]);
        for nu in 0..=2 {
            let exp = expand(&g, &alpha, nu, false).unwrap();
            assert_eq!(f.eval(nu), homs::hom_count(&exp.result, &c(1), false).unwrap());
        }
        assert_eq!(f.eval(0), BigUint::from(3u32));
        assert_eq!(f.eval(1), BigUint::from(4u32));
        assert_eq!(f.eval(2), BigUint::from(6u32));
    }

    #[test]
    fn expo_sum_zero_weight() {
        let g = single_arc();
        let f = hom_count_expo(&g, &ArcWeight::zero(&g), &c(1)).unwrap();
        assert_eq!(f.terms().len(), 1);
        assert_eq!(f.leading_term().unwrap().0, &BigUint::from(3u32));
        assert_eq!(f.leading_term().unwrap().1, &BigUint::one());
    }

    #[test]
    fn first_greater_basics() {
        let f = ExpoSum::from_pairs([(BigUint::from(1u32), BigUint::from(3u32))]);
        let g = ExpoSum::from_pairs([(BigUint::from(5u32), BigUint::from(2u32))]);
        // 3^nu vs 5*2^nu: crossing at nu = 4 (81 > 40)
        assert_eq!(f.first_strictly_greater(&g), Some(4));
        assert_eq!(g.first_strictly_greater(&f), Some(0));
        assert_eq!(f.first_strictly_greater(&f), None);
        // early lead, eventual loss: 5*1^nu vs 2^nu is above until nu = 3
        let early = ExpoSum::from_pairs([(BigUint::from(5u32), BigUint::from(1u32))]);
        let late = ExpoSum::from_pairs([(BigUint::from(1u32), BigUint::from(2u32))]);
        assert_eq!(early.first_strictly_greater(&late), Some(0));
        let never = ExpoSum::from_pairs([(BigUint::from(1u32), BigUint::from(1u32))]);
        assert_eq!(never.first_strictly_greater(&late), None);
    }

    #[test]
    fn leading_comparison_matches_eventual_order() {
        let f = ExpoSum::from_pairs([
            (BigUint::from(2u32), BigUint::from(4u32)),
            (BigUint::from(9u32), BigUint::from(2u32)),
        ]);
        let g = ExpoSum::from_pairs([(BigUint::from(7u32), BigUint::from(3u32))]);
        assert_eq!(f.cmp_leading(&g), std::cmp::Ordering::Greater);
        let nu = f.first_strictly_greater(&g).unwrap();
        for v in nu..nu + 5 {
            assert!(f.eval(v) > g.eval(v));
        }
    }
}
