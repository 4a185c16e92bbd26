//! Classical homomorphisms and endomorphisms, supports, the WAC relation,
//! Schmidt pairs and the resulting no-go verdicts.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bits;
use crate::error::{Error, Result};
use crate::graph::Graph;

/// Backtracking homomorphism search from `h` to `g`.
///
/// Vertices of `h` are assigned in index order with candidate images in
/// ascending order, so solutions come out lexicographically. After each
/// assignment the domains of later neighbours are intersected with the
/// image's neighbourhood (forward checking).
pub struct HomSearch<'a> {
    h: &'a Graph,
    g: &'a Graph,
    domains: Vec<u64>,
    words: usize,
}

impl<'a> HomSearch<'a> {
    pub fn new(h: &'a Graph, g: &'a Graph, pins: &[(usize, usize)]) -> Result<Self> {
        let words = g.words();
        let mut domains = vec![0u64; h.n() * words];
        for u in 0..h.n() {
            let d = &mut domains[u * words..(u + 1) * words];
            for v in 0..g.n() {
                bits::insert(d, v);
            }
        }
        for &(u, v) in pins {
            h.check_vertex(u)?;
            g.check_vertex(v)?;
            let d = &mut domains[u * words..(u + 1) * words];
            let keep = bits::contains(d, v);
            d.fill(0);
            if keep {
                bits::insert(d, v);
            }
        }
        Ok(HomSearch {
            h,
            g,
            domains,
            words,
        })
    }

    /// Calls `visit` on each homomorphism in lexicographic order until it
    /// returns `false`.
    pub fn for_each(mut self, mut visit: impl FnMut(&[usize]) -> bool) {
        if self.h.n() == 0 {
            visit(&[]);
            return;
        }
        if self.g.n() == 0 {
            return;
        }
        let mut map = vec![0usize; self.h.n()];
        self.rec(0, &mut map, &mut visit);
    }

    fn rec(
        &mut self,
        i: usize,
        map: &mut [usize],
        visit: &mut impl FnMut(&[usize]) -> bool,
    ) -> bool {
        let n = self.h.n();
        if i == n {
            return visit(map);
        }
        let w = self.words;
        let candidates: Vec<usize> = bits::ones(&self.domains[i * w..(i + 1) * w]).collect();
        let later: Vec<usize> = self.h.neighbors(i).filter(|&j| j > i).collect();
        for c in candidates {
            let saved: Vec<u64> = later
                .iter()
                .flat_map(|&j| self.domains[j * w..(j + 1) * w].to_vec())
                .collect();
            let mut ok = true;
            for &j in &later {
                let d = &mut self.domains[j * w..(j + 1) * w];
                bits::and_into(d, self.g.row(c));
                if bits::is_empty(d) {
                    ok = false;
                }
            }
            if ok {
                map[i] = c;
                if !self.rec(i + 1, map, visit) {
                    return false;
                }
            }
            for (k, &j) in later.iter().enumerate() {
                self.domains[j * w..(j + 1) * w].copy_from_slice(&saved[k * w..(k + 1) * w]);
            }
        }
        true
    }
}

/// Homomorphisms `h -> g` extending `pins`, in lexicographic order, at most
/// `limit` of them (`None` for all).
pub fn enumerate_homomorphisms(
    h: &Graph,
    g: &Graph,
    pins: &[(usize, usize)],
    limit: Option<usize>,
) -> Result<Vec<Vec<usize>>> {
    if limit == Some(0) {
        return Err(Error::Precondition("limit must be at least 1".into()));
    }
    let mut out = Vec::new();
    HomSearch::new(h, g, pins)?.for_each(|m| {
        out.push(m.to_vec());
        limit.is_none_or(|l| out.len() < l)
    });
    Ok(out)
}

/// First homomorphism extending `pins`, if any.
pub fn find_homomorphism(
    h: &Graph,
    g: &Graph,
    pins: &[(usize, usize)],
) -> Result<Option<Vec<usize>>> {
    Ok(enumerate_homomorphisms(h, g, pins, Some(1))?.pop())
}

/// A vertex map of a graph into itself that preserves edges.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Endomorphism(Vec<usize>);

impl Endomorphism {
    pub fn new(g: &Graph, map: Vec<usize>) -> Result<Self> {
        if map.len() != g.n() {
            return Err(Error::GraphMismatch(format!(
                "map has {} entries for a graph on {} vertices",
                map.len(),
                g.n()
            )));
        }
        if !g.is_homomorphism(g, &map) {
            return Err(Error::NotHomomorphism(format!(
                "{map:?} does not preserve edges"
            )));
        }
        Ok(Endomorphism(map))
    }

    pub fn identity(n: usize) -> Self {
        Endomorphism((0..n).collect())
    }

    pub fn map(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn apply(&self, x: usize) -> usize {
        self.0[x]
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &v)| i == v)
    }

    pub fn is_bijective(&self) -> bool {
        let mut seen = vec![false; self.0.len()];
        self.0
            .iter()
            .all(|&v| !std::mem::replace(&mut seen[v], true))
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Endomorphism) -> Endomorphism {
        Endomorphism(other.0.iter().map(|&v| self.0[v]).collect())
    }

    pub fn power(&self, i: u32) -> Endomorphism {
        (0..i).fold(Endomorphism::identity(self.len()), |acc, _| {
            self.compose(&acc)
        })
    }

    /// Vertices moved by the map.
    pub fn support(&self) -> Vec<usize> {
        self.0
            .iter()
            .enumerate()
            .filter(|(i, v)| i != *v)
            .map(|(i, _)| i)
            .collect()
    }

    fn support_mask(&self) -> Vec<bool> {
        self.0.iter().enumerate().map(|(i, &v)| i != v).collect()
    }
}

/// All endomorphisms, identity first, the rest in lexicographic order.
pub fn enumerate_endomorphisms(g: &Graph, bound: usize) -> Result<Vec<Endomorphism>> {
    check_bound(g, bound)?;
    let id = Endomorphism::identity(g.n());
    let mut out = vec![id.clone()];
    HomSearch::new(g, g, &[])?.for_each(|m| {
        if m != id.map() {
            out.push(Endomorphism(m.to_vec()));
        }
        true
    });
    Ok(out)
}

fn check_bound(g: &Graph, bound: usize) -> Result<()> {
    if g.n() > bound {
        Err(Error::SizeBound { n: g.n(), bound })
    } else {
        Ok(())
    }
}

fn same_graph(g: &Graph, f: &Endomorphism, h: &Endomorphism) -> Result<()> {
    if f.len() != g.n() || h.len() != g.n() {
        return Err(Error::GraphMismatch(
            "endomorphisms act on graphs of different sizes".into(),
        ));
    }
    Ok(())
}

/// Weak adjacency congruence: adjacent points `x ∈ supp(f)`, `y ∈ supp(h)`
/// must map to adjacent points `f(x) ∼ h(y)`.
pub fn is_wac(g: &Graph, f: &Endomorphism, h: &Endomorphism) -> Result<bool> {
    same_graph(g, f, h)?;
    let sh = h.support_mask();
    Ok(f.support().into_iter().all(|x| {
        g.neighbors(x)
            .filter(|&y| sh[y])
            .all(|y| g.adjacent(f.apply(x), h.apply(y)))
    }))
}

pub fn supports_disjoint(g: &Graph, f: &Endomorphism, h: &Endomorphism) -> Result<bool> {
    same_graph(g, f, h)?;
    let sh = h.support_mask();
    Ok(f.support().into_iter().all(|x| !sh[x]))
}

/// Disjoint supports with no edge between them.
pub fn supports_disconnected(g: &Graph, f: &Endomorphism, h: &Endomorphism) -> Result<bool> {
    if !supports_disjoint(g, f, h)? {
        return Ok(false);
    }
    let sh = h.support_mask();
    Ok(f.support()
        .into_iter()
        .all(|x| g.neighbors(x).all(|y| !sh[y])))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SchmidtMode {
    DisjointWac,
    Disconnected,
}

/// Two non-identity endomorphisms certifying non-classical quantum
/// endomorphisms.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SchmidtCertificate {
    pub f: Endomorphism,
    pub g: Endomorphism,
    pub mode: SchmidtMode,
    /// `x ∈ supp(f)` and `y ∈ supp(g)`, the smallest of each.
    pub witness: (usize, usize),
}

impl SchmidtCertificate {
    /// Re-checks every claim the certificate makes against `graph`.
    pub fn verify(&self, graph: &Graph) -> Result<()> {
        let fail = |m: &str| Err(Error::Verification(format!("Schmidt certificate: {m}")));
        let f = Endomorphism::new(graph, self.f.0.clone())?;
        let g = Endomorphism::new(graph, self.g.0.clone())?;
        if f.is_identity() || g.is_identity() {
            return fail("identity map in pair");
        }
        if !supports_disjoint(graph, &f, &g)? {
            return fail("supports intersect");
        }
        match self.mode {
            SchmidtMode::DisjointWac if !is_wac(graph, &f, &g)? => return fail("pair is not WAC"),
            SchmidtMode::Disconnected if !supports_disconnected(graph, &f, &g)? => {
                return fail("supports are joined by an edge")
            }
            _ => {}
        }
        let (x, y) = self.witness;
        if x == y || f.apply(x) == x || g.apply(y) == y {
            return fail("witness vertices not in the supports");
        }
        Ok(())
    }
}

fn certificate(f: &Endomorphism, g: &Endomorphism, mode: SchmidtMode) -> SchmidtCertificate {
    SchmidtCertificate {
        f: f.clone(),
        g: g.clone(),
        mode,
        witness: (f.support()[0], g.support()[0]),
    }
}

/// Searches pairs `(f, g)` of non-identity endomorphisms in lexicographic
/// order of their positions in [`enumerate_endomorphisms`]. With `oracular`
/// the supports must be disconnected, otherwise disjoint and WAC.
pub fn find_schmidt_pair(
    g: &Graph,
    oracular: bool,
    bound: usize,
) -> Result<Option<SchmidtCertificate>> {
    let endos = enumerate_endomorphisms(g, bound)?;
    Ok(schmidt_in(g, &endos, oracular))
}

fn schmidt_in(g: &Graph, endos: &[Endomorphism], oracular: bool) -> Option<SchmidtCertificate> {
    let mode = if oracular {
        SchmidtMode::Disconnected
    } else {
        SchmidtMode::DisjointWac
    };
    let masks: Vec<Vec<bool>> = endos.iter().map(Endomorphism::support_mask).collect();
    (1..endos.len()).into_par_iter().find_map_first(|i| {
        (i + 1..endos.len()).find_map(|j| {
            let (f, h) = (&endos[i], &endos[j]);
            if masks[i].iter().zip(&masks[j]).any(|(a, b)| *a && *b) {
                return None;
            }
            let ok = if oracular {
                supports_disconnected(g, f, h).unwrap_or(false)
            } else {
                is_wac(g, f, h).unwrap_or(false)
            };
            ok.then(|| certificate(f, h, mode))
        })
    })
}

/// Whether every endomorphism is a bijection.
pub fn is_core(g: &Graph, bound: usize) -> Result<bool> {
    check_bound(g, bound)?;
    let mut core = true;
    HomSearch::new(g, g, &[])?.for_each(|m| {
        let e = Endomorphism(m.to_vec());
        core = e.is_bijective();
        core
    });
    Ok(core)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum VerdictKind {
    /// Neither an oracular nor a non-oracular commutativity gadget exists.
    NoGadgetAtAll,
    /// No non-oracular commutativity gadget exists; the oracular case is
    /// not settled by the certificate.
    NoNonOracularGadget,
    KnownGadget,
    Unknown,
}

/// A positive gadget recognised from the graph's construction label.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KnownGadget {
    pub gadget: String,
    pub x: usize,
    pub y: usize,
    pub oracular: bool,
    pub reason: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub kind: VerdictKind,
    pub certificate: Option<SchmidtCertificate>,
    pub known_gadget: Option<KnownGadget>,
    pub notes: Vec<String>,
}

impl Verdict {
    /// Negative verdicts must carry a certificate that re-verifies.
    pub fn verify(&self, g: &Graph) -> Result<()> {
        match (self.kind, &self.certificate) {
            (VerdictKind::NoGadgetAtAll | VerdictKind::NoNonOracularGadget, Some(c)) => c.verify(g),
            (VerdictKind::NoGadgetAtAll | VerdictKind::NoNonOracularGadget, None) => Err(
                Error::Verification("negative verdict without a certificate".into()),
            ),
            _ => Ok(()),
        }
    }
}

/// Looks up a known oracular gadget from the construction label only.
///
/// Complete graphs `K:k` with `k >= 3` use the complement of `C_2k` with
/// distinguished vertices 0 and 1; categorical products of two factors
/// sharing the same gadget inherit it.
pub fn known_gadget_for_label(label: &str) -> Option<KnownGadget> {
    if let Some(k) = label
        .strip_prefix("K:")
        .and_then(|s| s.parse::<usize>().ok())
    {
        return (k >= 3).then(|| KnownGadget {
            gadget: format!("cmpl(C:{})", 2 * k),
            x: 0,
            y: 1,
            oracular: true,
            reason: format!("complement of C_{} with distinguished vertices 0,1 is an oracular algebraic commutativity gadget for K_{k}", 2 * k),
        });
    }
    let inner = label.strip_prefix("tensor(")?.strip_suffix(')')?;
    let (a, b) = split_top_level(inner)?;
    let (ga, gb) = (known_gadget_for_label(a)?, known_gadget_for_label(b)?);
    (ga.gadget == gb.gadget && (ga.x, ga.y) == (gb.x, gb.y)).then(|| KnownGadget {
        reason: format!(
            "an oracular gadget shared by both factors transfers to their categorical product ({a} x {b})"
        ),
        ..ga
    })
}

fn split_top_level(s: &str) -> Option<(&str, &str)> {
    let mut depth = 0i32;
    let mut in_kg = false;
    for (i, c) in s.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' if depth == 0 => {
                // `KG:n,k` contains a comma of its own
                if in_kg {
                    in_kg = false;
                    continue;
                }
                return Some((&s[..i], &s[i + 1..]));
            }
            _ => {}
        }
        if depth == 0 && s[..=i].ends_with("KG:") {
            in_kg = true;
        }
    }
    None
}

/// Combines the Schmidt searches and the known-family table into a verdict.
pub fn nogo_verdict(g: &Graph, bound: usize) -> Result<Verdict> {
    let endos = enumerate_endomorphisms(g, bound)?;
    let known = g.label().and_then(known_gadget_for_label);
    if let Some(cert) = schmidt_in(g, &endos, true) {
        return Ok(Verdict {
            kind: VerdictKind::NoGadgetAtAll,
            certificate: Some(cert),
            known_gadget: None,
            notes: vec![
                "endomorphisms with disconnected supports give a non-commuting oracular quantum endomorphism; they are also WAC, so neither oracular nor non-oracular gadgets exist".into(),
            ],
        });
    }
    if let Some(cert) = schmidt_in(g, &endos, false) {
        let mut notes = vec![
            "disjoint-support WAC endomorphisms give a non-commuting quantum endomorphism, so no non-oracular gadget exists".into(),
        ];
        notes.push(match &known {
            Some(k) => format!(
                "known oracular gadget: {} with x={}, y={}",
                k.gadget, k.x, k.y
            ),
            None => {
                "no pair with disconnected supports exists; existence of an oracular gadget is open"
                    .into()
            }
        });
        return Ok(Verdict {
            kind: VerdictKind::NoNonOracularGadget,
            certificate: Some(cert),
            known_gadget: known,
            notes,
        });
    }
    if let Some(k) = known {
        return Ok(Verdict {
            kind: VerdictKind::KnownGadget,
            certificate: None,
            notes: vec![k.reason.clone()],
            known_gadget: Some(k),
        });
    }
    Ok(Verdict {
        kind: VerdictKind::Unknown,
        certificate: None,
        known_gadget: None,
        notes: vec![
            "exhaustive search found no Schmidt pair; this does not show that all quantum endomorphisms are classical".into(),
        ],
    })
}
