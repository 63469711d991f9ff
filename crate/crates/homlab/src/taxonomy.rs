//! Membership predicates for the digraph classes driving the verification
//! sweeps, and a serializable per-digraph classification record.

use serde::Serialize;

use crate::digraph::Digraph;
use crate::error::{Error, Result};
use crate::homs::{self, VertexMap};
use crate::paths::{self, PathSeq};
use crate::shells;

/// Loopless part acyclic; equivalently, the transitive hull is antisymmetric.
pub fn in_ta(g: &Digraph) -> bool {
    g.is_proper_acyclic()
}

/// Height at most one. Only meaningful inside the acyclic-loopless class.
pub fn is_flat(g: &Digraph) -> Result<bool> {
    Ok(paths::height(g)? <= 1)
}

/// Which route decides membership in the strict-self-map class.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RMethod {
    /// the path sum condition `Σ ι(P_{i-1}, P_i) ≤ h + ℓ(P)`
    SumCondition,
    /// a strict self-map that is mu-maximal on every top path cover
    Direct,
}

/// Evidence backing an `in_r` verdict.
#[derive(Clone, Debug)]
pub enum RCertificate {
    /// membership holds; for the direct method, a witness self-map
    Witness(Option<VertexMap>),
    /// a path violating the sum condition
    ViolatingPath(PathSeq),
    /// direct method found no strict mu-maximal self-map
    NoWitness,
}

/// Membership in the class of reflexive digraphs whose strict self-maps reach
/// the mu maximum on every top path cover. Two independent decision routes
/// are provided; they must agree, and the verifier sweeps that equivalence.
pub fn in_r(g: &Digraph, method: RMethod) -> Result<(bool, RCertificate)> {
    if !g.is_reflexive() {
        return Err(Error::NotReflexive);
    }
    if !in_ta(g) {
        return Err(Error::NotInTa);
    }
    match method {
        RMethod::SumCondition => {
            let h = paths::height(g)?;
            for p in paths::all_paths(g) {
                let total: usize = p
                    .verts()
                    .windows(2)
                    .map(|w| g.iota(w[0], w[1]).unwrap())
                    .sum();
                if total > h + p.len() {
                    return Ok((false, RCertificate::ViolatingPath(p)));
                }
            }
            Ok((true, RCertificate::Witness(None)))
        }
        RMethod::Direct => {
            let family = paths::top_path_family(g)?;
            let witness = homs::m_class(g, g, &family)?
                .into_iter()
                .find(|xi| homs::is_strict_hom(g, g, xi));
            match witness {
                Some(w) => Ok((true, RCertificate::Witness(Some(w)))),
                None => Ok((false, RCertificate::NoWitness)),
            }
        }
    }
}

/// Height exactly `n` and every vertex on a path of maximal length.
pub fn in_taghn(g: &Digraph, n: usize) -> Result<bool> {
    if !in_ta(g) {
        return Err(Error::NotInTa);
    }
    let data = paths::top_data(g)?;
    Ok(data.height == n && data.off_top_vertices().is_empty())
}

/// Poset whose maximal paths all have length `n` and whose intervals are
/// paths.
pub fn in_chn(g: &Digraph, n: usize) -> bool {
    if !g.is_poset() {
        return false;
    }
    let maximal = paths::maximal_paths(g).expect("posets have acyclic loopless part");
    if !maximal.iter().all(|p| p.len() == n) {
        return false;
    }
    for (u, v) in g.arcs() {
        let iv = g.interval(u, v).unwrap();
        if paths::path_from_vertex_set(g, &iv).is_none() {
            return false;
        }
    }
    true
}

/// Height exactly `n` with every off-top vertex shell-encapsulated; the
/// certificate carries the chosen shells and capsule bounds.
pub fn in_taghna(g: &Digraph, n: usize) -> Result<(bool, Vec<shells::CapsuleData>)> {
    if !in_ta(g) {
        return Err(Error::NotInTa);
    }
    let h = paths::height(g)?;
    if h != n {
        return Err(Error::HeightMismatch {
            expected: n,
            found: h,
        });
    }
    match shells::capsules(g)? {
        Some(caps) => Ok((true, caps)),
        None => Ok((false, Vec::new())),
    }
}

/// One classification record, serialized with stable key order.
#[derive(Clone, Debug, Serialize)]
pub struct ClassReport {
    pub n: usize,
    pub reflexive: bool,
    pub antisymmetric: bool,
    pub transitive: bool,
    pub poset: bool,
    pub in_ta: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub height: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub flat: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub param_n: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub in_taghn: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub in_taghna: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub in_chn: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub in_r: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub in_r_method: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub in_r_certificate: Option<String>,
}

/// Classifies a digraph. The parameterized memberships are evaluated at
/// `param_n` when given, otherwise at the height.
pub fn class_report(g: &Digraph, param_n: Option<usize>) -> ClassReport {
    let ta = in_ta(g);
    let height = if ta { paths::height(g).ok() } else { None };
    let mut report = ClassReport {
        n: g.vertex_count(),
        reflexive: g.is_reflexive(),
        antisymmetric: g.is_antisymmetric(),
        transitive: g.is_transitive(),
        poset: g.is_poset(),
        in_ta: ta,
        height,
        flat: height.map(|h| h <= 1),
        param_n: None,
        in_taghn: None,
        in_taghna: None,
        in_chn: None,
        in_r: None,
        in_r_method: None,
        in_r_certificate: None,
    };
    if let Some(h) = height {
        let k = param_n.unwrap_or(h);
        report.param_n = Some(k);
        report.in_taghn = Some(in_taghn(g, k).unwrap_or(false));
        report.in_taghna = Some(match in_taghna(g, k) {
            Ok((m, _)) => m,
            Err(_) => false,
        });
        report.in_chn = Some(in_chn(g, k));
        if report.reflexive {
            let (by_sum, cert_sum) = in_r(g, RMethod::SumCondition).unwrap();
            let (by_direct, cert_direct) = in_r(g, RMethod::Direct).unwrap();
            report.in_r = Some(by_sum);
            report.in_r_method = Some(if by_sum == by_direct {
                "sum_condition=direct".to_string()
            } else {
                "DISAGREE".to_string()
            });
            report.in_r_certificate = Some(match (cert_sum, cert_direct) {
                (RCertificate::ViolatingPath(p), _) => format!("path {:?}", p.verts()),
                (_, RCertificate::Witness(Some(w))) => w.to_text(),
                _ => "trivial".to_string(),
            });
        }
    }
    report
}

impl ClassReport {
    pub fn to_json_line(&self) -> String {
        serde_json::to_string(self).expect("report serialization cannot fail")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn ta_membership() {
        assert!(in_ta(&fixtures::diamond()));
        assert!(!in_ta(&Digraph::from_arcs(2, &[(0, 1), (1, 0)]).unwrap()));
        let dag_loops = Digraph::from_arcs(3, &[(0, 1), (1, 2), (0, 0), (2, 2)]).unwrap();
        assert!(in_ta(&dag_loops));
        // cross-check against the hull characterization
        for g in [
            fixtures::diamond(),
            dag_loops,
            Digraph::from_arcs(3, &[(0, 1), (1, 2), (2, 0)]).unwrap(),
        ] {
            assert_eq!(in_ta(&g), g.transitive_hull().is_antisymmetric());
        }
    }

    #[test]
    fn chains_and_flat_posets_are_in_r() {
        for n in 0..=4 {
            let c = Digraph::chain(n);
            assert!(in_r(&c, RMethod::SumCondition).unwrap().0);
            assert!(in_r(&c, RMethod::Direct).unwrap().0);
        }
        // every flat poset on <= 3 vertices
        let flat = [
            Digraph::empty(3).with_all_loops(),
            fixtures::poset(3, &[(0, 1)]),
            fixtures::poset(3, &[(0, 1), (0, 2)]),
            fixtures::poset(3, &[(0, 2), (1, 2)]),
        ];
        for g in flat {
            assert!(in_r(&g, RMethod::SumCondition).unwrap().0);
            assert!(in_r(&g, RMethod::Direct).unwrap().0);
        }
    }

    #[test]
    fn diamond_is_not_in_r() {
        // the long arc's interval has four elements: the one-arc path 0,3
        // breaks the sum condition (4 > 2 + 1)
        let g = fixtures::diamond();
        let (ok, cert) = in_r(&g, RMethod::SumCondition).unwrap();
        assert!(!ok);
        assert!(matches!(cert, RCertificate::ViolatingPath(_)));
        let (ok, _) = in_r(&g, RMethod::Direct).unwrap();
        assert!(!ok);
    }

    #[test]
    fn in_r_rejects_bad_inputs() {
        let loopless = Digraph::from_arcs(2, &[(0, 1)]).unwrap();
        assert!(matches!(
            in_r(&loopless, RMethod::SumCondition),
            Err(Error::NotReflexive)
        ));
        let cyc = Digraph::from_arcs(2, &[(0, 0), (1, 1), (0, 1), (1, 0)]).unwrap();
        assert!(matches!(in_r(&cyc, RMethod::Direct), Err(Error::NotInTa)));
    }

    #[test]
    fn taghn_cases() {
        assert!(in_taghn(&Digraph::chain(3), 3).unwrap());
        assert!(!in_taghn(&Digraph::chain(3), 2).unwrap());
        let flat_iso = fixtures::poset(3, &[(0, 1)]);
        assert!(!in_taghn(&flat_iso, 1).unwrap());
        // G restricted to its top vertices always qualifies at its height
        let g = fixtures::chain_plus_z();
        let t = crate::paths::tops(&g).unwrap();
        let gh = g.induced(&t.v_top);
        assert!(in_taghn(&gh, 3).unwrap());
    }

    #[test]
    fn chn_cases() {
        assert!(in_chn(&Digraph::chain(2), 2));
        assert!(!in_chn(&Digraph::chain(2), 1));
        assert!(!in_chn(&fixtures::diamond(), 2));
        // disjoint union of two equal chains
        let two = fixtures::poset(6, &[(0, 1), (1, 2), (3, 4), (4, 5)]);
        assert!(in_chn(&two, 2));
        // antichains sit at level zero
        assert!(in_chn(&Digraph::empty(3).with_all_loops(), 0));
    }

    #[test]
    fn taghna_cases() {
        let g = fixtures::chain_plus_z();
        let (ok, caps) = in_taghna(&g, 3).unwrap();
        assert!(ok);
        assert_eq!(caps.len(), 1);
        assert!(matches!(
            in_taghna(&g, 2),
            Err(Error::HeightMismatch { expected: 2, found: 3 })
        ));
        // a member of the plain top class has no capsules at all
        let (ok, caps) = in_taghna(&Digraph::chain(2), 2).unwrap();
        assert!(ok);
        assert!(caps.is_empty());
        // dangling low vertex with no route back to a top path
        let g = fixtures::poset(5, &[(0, 1), (1, 2), (2, 3), (0, 4)]);
        let (ok, _) = in_taghna(&g, 3).unwrap();
        assert!(!ok);
    }

    #[test]
    fn report_on_chain() {
        let r = class_report(&Digraph::chain(3), None);
        assert!(r.poset && r.in_ta);
        assert_eq!(r.height, Some(3));
        assert_eq!(r.in_r, Some(true));
        assert_eq!(r.in_chn, Some(true));
        let line = r.to_json_line();
        assert!(line.starts_with("{\"n\":4,\"reflexive\":true"));
    }
}
