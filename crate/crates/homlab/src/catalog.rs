//! Exhaustive catalogs of non-isomorphic small digraphs.
//!
//! The canonical form of a digraph is the lexicographically minimal
//! adjacency-matrix bit string over all vertex permutations; equality of
//! canonical forms decides isomorphism. Catalogs are built by extending
//! smaller members with one fresh vertex in every possible way and
//! deduplicating canonically, which is complete because every kind here is
//! closed under induced subgraphs.
//!
//! Everything is bounded: canonicalization runs a full permutation scan with
//! row-wise early exit, fine up to nine vertices.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::sync::{Mutex, OnceLock};

use rayon::prelude::*;

use crate::digraph::Digraph;
use crate::error::{Error, Result};
use crate::paths;
use crate::taxonomy;

const CANON_MAX: usize = 9;

/// The digraph kinds a catalog can hold.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CatalogKind {
    All,
    Reflexive,
    Ta,
    Posets,
    FlatPosets,
    Chn(usize),
    Taghn(usize),
    TaghnA(usize),
}

impl CatalogKind {
    pub fn token(&self) -> String {
        match self {
            CatalogKind::All => "all".into(),
            CatalogKind::Reflexive => "reflexive".into(),
            CatalogKind::Ta => "ta".into(),
            CatalogKind::Posets => "posets".into(),
            CatalogKind::FlatPosets => "flat-posets".into(),
            CatalogKind::Chn(n) => format!("chn{n}"),
            CatalogKind::Taghn(n) => format!("taghn{n}"),
            CatalogKind::TaghnA(n) => format!("taghna{n}"),
        }
    }

    pub fn parse(token: &str) -> Result<CatalogKind> {
        let grab = |prefix: &str| -> Option<usize> {
            token
                .strip_prefix(prefix)
                .and_then(|rest| rest.parse().ok())
        };
        match token {
            "all" => Ok(CatalogKind::All),
            "reflexive" => Ok(CatalogKind::Reflexive),
            "ta" => Ok(CatalogKind::Ta),
            "posets" => Ok(CatalogKind::Posets),
            "flat-posets" => Ok(CatalogKind::FlatPosets),
            _ => {
                if let Some(n) = grab("chn") {
                    Ok(CatalogKind::Chn(n))
                } else if let Some(n) = grab("taghna") {
                    Ok(CatalogKind::TaghnA(n))
                } else if let Some(n) = grab("taghn") {
                    Ok(CatalogKind::Taghn(n))
                } else {
                    Err(Error::UnknownKind(token.to_string()))
                }
            }
        }
    }

    /// Feasibility bound below the global cap: dense kinds explode earlier.
    fn kind_cap(&self) -> usize {
        match self {
            CatalogKind::All | CatalogKind::Reflexive => 5,
            CatalogKind::Ta | CatalogKind::Taghn(_) | CatalogKind::TaghnA(_) => 6,
            _ => 7,
        }
    }
}

/// A complete, duplicate-free list of the canonical members of one kind, for
/// every vertex count up to the bound.
#[derive(Clone, Debug)]
pub struct Catalog {
    pub kind: CatalogKind,
    pub max_n: usize,
    pub members: Vec<Digraph>,
}

const HARD_CAP: usize = 7;

fn perms(n: usize) -> &'static [Vec<u8>] {
    const EMPTY: OnceLock<Vec<Vec<u8>>> = OnceLock::new();
    static PERMS: [OnceLock<Vec<Vec<u8>>>; CANON_MAX + 1] = [EMPTY; CANON_MAX + 1];
    PERMS[n].get_or_init(|| {
        let mut out = Vec::new();
        let mut cur: Vec<u8> = (0..n as u8).collect();
        heap_permute(&mut cur, n, &mut out);
        out.sort();
        out
    })
}

fn heap_permute(cur: &mut Vec<u8>, k: usize, out: &mut Vec<Vec<u8>>) {
    if k <= 1 {
        out.push(cur.clone());
        return;
    }
    for i in 0..k {
        heap_permute(cur, k - 1, out);
        if k % 2 == 0 {
            cur.swap(i, k - 1);
        } else {
            cur.swap(0, k - 1);
        }
    }
}

fn rows_of(g: &Digraph) -> [u16; CANON_MAX] {
    let n = g.vertex_count();
    let mut rows = [0u16; CANON_MAX];
    for i in 0..n {
        let mut r = 0u16;
        for j in 0..n {
            if g.has_arc(i, j) {
                r |= 1 << (n - 1 - j);
            }
        }
        rows[i] = r;
    }
    rows
}

fn row_under(g: &Digraph, sigma: &[u8], i: usize) -> u16 {
    let n = g.vertex_count();
    let mut r = 0u16;
    for j in 0..n {
        if g.has_arc(sigma[i] as usize, sigma[j] as usize) {
            r |= 1 << (n - 1 - j);
        }
    }
    r
}

/// The minimal relabeling and its row image.
fn canonical_rows(g: &Digraph) -> Result<([u16; CANON_MAX], Vec<u8>)> {
    let n = g.vertex_count();
    if n > CANON_MAX {
        return Err(Error::TooManyVertices(n, CANON_MAX));
    }
    let mut best = rows_of(g);
    let mut best_sigma: Vec<u8> = (0..n as u8).collect();
    for sigma in perms(n) {
        for i in 0..n {
            let r = row_under(g, sigma, i);
            if r > best[i] {
                break;
            }
            if r < best[i] {
                best[i] = r;
                for k in i + 1..n {
                    best[k] = row_under(g, sigma, k);
                }
                best_sigma = sigma.clone();
                break;
            }
        }
    }
    Ok((best, best_sigma))
}

/// Canonical key: the minimal adjacency bit string packed row-major.
pub fn canonical_key(g: &Digraph) -> Result<u128> {
    let n = g.vertex_count();
    let (rows, _) = canonical_rows(g)?;
    let mut key = 0u128;
    for r in rows.iter().take(n) {
        key = (key << n) | *r as u128;
    }
    Ok(key)
}

/// The canonical representative: idempotent and isomorphism-invariant.
pub fn canonical(g: &Digraph) -> Result<Digraph> {
    let (_, sigma) = canonical_rows(g)?;
    let n = g.vertex_count();
    let mut arcs = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if g.has_arc(sigma[i] as usize, sigma[j] as usize) {
                arcs.push((i, j));
            }
        }
    }
    Digraph::from_arcs(n, &arcs)
}

pub fn is_isomorphic(g: &Digraph, h: &Digraph) -> Result<bool> {
    if g.vertex_count() != h.vertex_count() {
        return Ok(false);
    }
    Ok(canonical_key(g)? == canonical_key(h)?)
}

/// All permutations mapping the digraph onto itself.
pub fn automorphisms(g: &Digraph) -> Result<Vec<Vec<u8>>> {
    let n = g.vertex_count();
    if n > CANON_MAX {
        return Err(Error::TooManyVertices(n, CANON_MAX));
    }
    let id = rows_of(g);
    Ok(perms(n)
        .iter()
        .filter(|sigma| (0..n).all(|i| row_under(g, sigma, i) == id[i]))
        .cloned()
        .collect())
}

/// Extends every member by one fresh vertex with every in/out/loop pattern,
/// keeps what the filter accepts, and deduplicates canonically.
fn extend_level<F>(prev: &[Digraph], n: usize, force_loop: bool, keep: F) -> Vec<Digraph>
where
    F: Fn(&Digraph) -> bool + Sync,
{
    let pattern_bits = 2 * (n - 1) + usize::from(!force_loop);
    let found: Vec<(u128, Digraph)> = prev
        .par_iter()
        .flat_map_iter(|parent| {
            let mut local = Vec::new();
            let v = n - 1;
            for pattern in 0u32..(1 << pattern_bits) {
                let mut arcs: Vec<(usize, usize)> = parent.arcs().collect();
                for u in 0..n - 1 {
                    if pattern >> u & 1 == 1 {
                        arcs.push((u, v));
                    }
                    if pattern >> (n - 1 + u) & 1 == 1 {
                        arcs.push((v, u));
                    }
                }
                if force_loop || pattern >> (2 * (n - 1)) & 1 == 1 {
                    arcs.push((v, v));
                }
                let g = Digraph::from_arcs(n, &arcs).unwrap();
                if keep(&g) {
                    let c = canonical(&g).unwrap();
                    let key = canonical_key(&c).unwrap();
                    local.push((key, c));
                }
            }
            local
        })
        .collect();
    let dedup: BTreeMap<u128, Digraph> = found.into_iter().collect();
    dedup.into_values().collect()
}

fn base_level(force_loop: bool, keep: impl Fn(&Digraph) -> bool) -> Vec<Digraph> {
    let mut out = Vec::new();
    let bare = Digraph::empty(1);
    let looped = Digraph::singleton_with_loop();
    if !force_loop && keep(&bare) {
        out.push(bare);
    }
    if keep(&looped) {
        out.push(looped);
    }
    out
}

fn generate_by_extension<F>(max_n: usize, force_loop: bool, keep: F) -> Vec<Digraph>
where
    F: Fn(&Digraph) -> bool + Sync + Copy,
{
    let mut all = Vec::new();
    let mut level = base_level(force_loop, keep);
    all.extend(level.iter().cloned());
    for n in 2..=max_n {
        level = extend_level(&level, n, force_loop, keep);
        all.extend(level.iter().cloned());
    }
    all
}

/// Acyclic-loopless-part members via their loopless skeletons: generate the
/// acyclic skeletons, then decorate each with one loop set per automorphism
/// orbit. Far fewer canonicalizations than raw extension.
fn generate_ta(max_n: usize) -> Vec<Digraph> {
    let dags = generate_by_extension(max_n, false, |g: &Digraph| {
        g.loop_count() == 0 && g.is_proper_acyclic()
    });
    let decorated: Vec<(usize, u128, Digraph)> = dags
        .par_iter()
        .flat_map_iter(|dag| {
            let n = dag.vertex_count();
            let aut = automorphisms(dag).unwrap();
            let mut local = Vec::new();
            for mask in 0u32..(1 << n) {
                let is_rep = aut.iter().all(|sigma| {
                    let mut image = 0u32;
                    for i in 0..n {
                        if mask >> sigma[i] & 1 == 1 {
                            image |= 1 << i;
                        }
                    }
                    image >= mask
                });
                if !is_rep {
                    continue;
                }
                let mut arcs: Vec<(usize, usize)> = dag.arcs().collect();
                for v in 0..n {
                    if mask >> v & 1 == 1 {
                        arcs.push((v, v));
                    }
                }
                let g = canonical(&Digraph::from_arcs(n, &arcs).unwrap()).unwrap();
                let key = canonical_key(&g).unwrap();
                local.push((n, key, g));
            }
            local
        })
        .collect();
    let dedup: BTreeMap<(usize, u128), Digraph> = decorated
        .into_iter()
        .map(|(n, k, g)| ((n, k), g))
        .collect();
    dedup.into_values().collect()
}

fn filter_catalog(base: Vec<Digraph>, keep: impl Fn(&Digraph) -> bool) -> Vec<Digraph> {
    base.into_iter().filter(|g| keep(g)).collect()
}

/// Generates the complete catalog of a kind up to `max_n` vertices, enforcing
/// the global and per-kind caps.
pub fn generate(kind: CatalogKind, max_n: usize) -> Result<Catalog> {
    if max_n > HARD_CAP {
        return Err(Error::CatalogCap {
            kind: "any",
            given: max_n,
            cap: HARD_CAP,
        });
    }
    if max_n > kind.kind_cap() {
        return Err(Error::CatalogCap {
            kind: match kind {
                CatalogKind::All => "all",
                CatalogKind::Reflexive => "reflexive",
                CatalogKind::Ta => "ta",
                CatalogKind::Posets => "posets",
                CatalogKind::FlatPosets => "flat-posets",
                CatalogKind::Chn(_) => "chn",
                CatalogKind::Taghn(_) => "taghn",
                CatalogKind::TaghnA(_) => "taghna",
            },
            given: max_n,
            cap: kind.kind_cap(),
        });
    }
    generate_unchecked(kind, max_n)
}

/// As [`generate`] but without the per-kind feasibility cap. Oversized dense
/// kinds can take hours and gigabytes; the global canonicalization limit
/// still applies.
pub fn generate_unchecked(kind: CatalogKind, max_n: usize) -> Result<Catalog> {
    if max_n == 0 || max_n > HARD_CAP {
        return Err(Error::CatalogCap {
            kind: "any",
            given: max_n,
            cap: HARD_CAP,
        });
    }
    let members = match kind {
        CatalogKind::All => generate_by_extension(max_n, false, |_| true),
        CatalogKind::Reflexive => generate_by_extension(max_n, true, |_| true),
        CatalogKind::Ta => generate_ta(max_n),
        CatalogKind::Posets => generate_by_extension(max_n, true, |g: &Digraph| g.is_poset()),
        CatalogKind::FlatPosets => filter_catalog(
            generate_by_extension(max_n, true, |g: &Digraph| g.is_poset()),
            |g| paths::height(g).unwrap() <= 1,
        ),
        CatalogKind::Chn(k) => filter_catalog(
            generate_by_extension(max_n, true, |g: &Digraph| g.is_poset()),
            |g| taxonomy::in_chn(g, k),
        ),
        CatalogKind::Taghn(k) => filter_catalog(generate_ta(max_n), |g| {
            taxonomy::in_taghn(g, k).unwrap_or(false)
        }),
        CatalogKind::TaghnA(k) => filter_catalog(generate_ta(max_n), |g| {
            matches!(taxonomy::in_taghna(g, k), Ok((true, _)))
        }),
    };
    let mut members = members;
    members.sort_by_key(|g| (g.vertex_count(), canonical_key(g).unwrap()));
    Ok(Catalog {
        kind,
        max_n,
        members,
    })
}

impl Catalog {
    pub fn count(&self) -> usize {
        self.members.len()
    }

    pub fn members_with(&self, n: usize) -> impl Iterator<Item = &Digraph> {
        self.members.iter().filter(move |g| g.vertex_count() == n)
    }

    /// File form: a `catalog <kind> <max_n> <count>` header followed by the
    /// concatenated digraph records.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "catalog {} {} {}", self.kind.token(), self.max_n, self.count());
        for g in &self.members {
            s.push_str(&g.to_text());
        }
        s
    }

    pub fn from_text(text: &str) -> Result<Catalog> {
        let mut lines = text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'))
            .peekable();
        let header = lines
            .next()
            .ok_or_else(|| Error::Parse("empty catalog text".into()))?;
        let parts: Vec<&str> = header.split_whitespace().collect();
        if parts.len() != 4 || parts[0] != "catalog" {
            return Err(Error::Parse(format!("bad catalog header `{header}`")));
        }
        let kind = CatalogKind::parse(parts[1])?;
        let max_n: usize = parts[2]
            .parse()
            .map_err(|_| Error::Parse("bad catalog bound".into()))?;
        let count: usize = parts[3]
            .parse()
            .map_err(|_| Error::Parse("bad catalog count".into()))?;
        let mut members = Vec::with_capacity(count);
        let mut record = String::new();
        for line in lines {
            if line.starts_with("digraph") && !record.is_empty() {
                members.push(Digraph::from_text(&record)?);
                record.clear();
            }
            record.push_str(line);
            record.push('\n');
        }
        if !record.is_empty() {
            members.push(Digraph::from_text(&record)?);
        }
        if members.len() != count {
            return Err(Error::Parse(format!(
                "catalog claims {count} members, found {}",
                members.len()
            )));
        }
        Ok(Catalog {
            kind,
            max_n,
            members,
        })
    }

    pub fn save(&self, path: &std::path::Path) -> Result<()> {
        std::fs::write(path, self.to_text())?;
        Ok(())
    }

    pub fn load(path: &std::path::Path) -> Result<Catalog> {
        Catalog::from_text(&std::fs::read_to_string(path)?)
    }
}

/// Process-wide cache: catalogs are pure functions of their parameters and
/// several verification sweeps share the expensive ones.
pub fn cached(kind: CatalogKind, max_n: usize) -> Result<std::sync::Arc<Catalog>> {
    static CACHE: OnceLock<Mutex<std::collections::HashMap<(CatalogKind, usize), std::sync::Arc<Catalog>>>> =
        OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(std::collections::HashMap::new()));
    if let Some(hit) = cache.lock().unwrap().get(&(kind, max_n)) {
        return Ok(hit.clone());
    }
    let built = std::sync::Arc::new(generate(kind, max_n)?);
    cache
        .lock()
        .unwrap()
        .insert((kind, max_n), built.clone());
    Ok(built)
}
