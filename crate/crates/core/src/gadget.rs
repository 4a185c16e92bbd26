//! Commutativity gadget candidates `(G, x, y)` for a target graph `A`.
//!
//! Property (i) of a gadget asks for a homomorphism `G -> A` sending
//! `(x, y)` to every pair `(a, b)`; here it is checked with classical
//! witnesses only. Property (ii), the forced commutation of the PVMs at `x`
//! and `y`, is never verified positively: it is either refuted by an explicit
//! noncommuting representation or recorded as a known result through
//! [`GadgetStatus::ProvenOracular`].

use std::collections::{BTreeMap, BTreeSet};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::endo::find_homomorphism;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::qrep::{
    commutator_norm, lift_box_rep, lifted_witness, path_to_cycle_rep, verify_rep, Gen, QuantumRep,
};
use crate::walks::{bfs, Length, WalkTable};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GadgetStatus {
    /// Nothing is claimed about property (ii).
    Candidate,
    /// Known to be an oracular algebraic commutativity gadget.
    ProvenOracular,
    Refuted,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "CandidateDoc")]
pub struct GadgetCandidate {
    pub gadget: Graph,
    pub x: usize,
    pub y: usize,
    pub target: Graph,
    pub status: GadgetStatus,
    pub provenance: String,
}

#[derive(Deserialize)]
struct CandidateDoc {
    gadget: Graph,
    x: usize,
    y: usize,
    target: Graph,
    #[serde(default = "default_status")]
    status: GadgetStatus,
    #[serde(default)]
    provenance: String,
}

fn default_status() -> GadgetStatus {
    GadgetStatus::Candidate
}

impl TryFrom<CandidateDoc> for GadgetCandidate {
    type Error = Error;

    fn try_from(d: CandidateDoc) -> Result<Self> {
        let mut c = GadgetCandidate::new(d.gadget, d.x, d.y, d.target)?;
        c.status = d.status;
        c.provenance = d.provenance;
        Ok(c)
    }
}

impl GadgetCandidate {
    pub fn new(gadget: Graph, x: usize, y: usize, target: Graph) -> Result<Self> {
        gadget.check_vertex(x)?;
        gadget.check_vertex(y)?;
        if x == y {
            return Err(Error::Precondition(
                "distinguished vertices must differ".into(),
            ));
        }
        Ok(GadgetCandidate {
            gadget,
            x,
            y,
            target,
            status: GadgetStatus::Candidate,
            provenance: "user supplied".into(),
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PropertyEntry {
    pub a: usize,
    pub b: usize,
    /// Homomorphism with `x -> a`, `y -> b`, if one exists.
    pub witness: Option<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PropertyTable {
    /// Row-major over `A × A`.
    pub entries: Vec<PropertyEntry>,
    pub found: usize,
    pub complete: bool,
    pub conclusion: String,
}

impl PropertyTable {
    fn from_entries(entries: Vec<PropertyEntry>) -> Self {
        let found = entries.iter().filter(|e| e.witness.is_some()).count();
        let complete = found == entries.len();
        let conclusion = if complete {
            "property (i) holds with classical witnesses, so the candidate is oracular whenever it is a gadget".into()
        } else {
            format!(
                "{} pairs have no classical witness: property (i) fails classically; inconclusive for quantum witnesses",
                entries.len() - found
            )
        };
        PropertyTable {
            entries,
            found,
            complete,
            conclusion,
        }
    }

    /// Re-checks every recorded witness.
    pub fn verify(&self, c: &GadgetCandidate) -> Result<()> {
        for e in &self.entries {
            if let Some(w) = &e.witness {
                if w.len() != c.gadget.n()
                    || w[c.x] != e.a
                    || w[c.y] != e.b
                    || !c.gadget.is_homomorphism(&c.target, w)
                {
                    return Err(Error::Verification(format!(
                        "bad witness for pair ({}, {})",
                        e.a, e.b
                    )));
                }
            }
        }
        Ok(())
    }
}

fn check_size(g: &Graph, bound: usize) -> Result<()> {
    if g.n() > bound {
        return Err(Error::SizeBound { n: g.n(), bound });
    }
    Ok(())
}

/// Pinned homomorphism search for every `(a, b) ∈ A × A`.
pub fn check_property_i_classical(c: &GadgetCandidate, bound: usize) -> Result<PropertyTable> {
    check_size(&c.gadget, bound)?;
    let na = c.target.n();
    let entries = (0..na * na)
        .into_par_iter()
        .map(|i| {
            let (a, b) = (i / na, i % na);
            let witness = find_homomorphism(&c.gadget, &c.target, &[(c.x, a), (c.y, b)])?;
            Ok(PropertyEntry { a, b, witness })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(PropertyTable::from_entries(entries))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WalkObstruction {
    pub length: usize,
    /// A target pair with no walk of this length.
    pub a: usize,
    pub b: usize,
}

pub fn default_walk_lmax(c: &GadgetCandidate) -> usize {
    2 * (c.gadget.n() + c.target.n())
}

/// First length `ℓ ≤ lmax` (then first pair `(a, b)` in lexicographic order)
/// such that `x` reaches `y` by a walk of length `ℓ` in the gadget while `a`
/// does not reach `b` in the target. Any homomorphism maps walks to walks, so
/// such an obstruction rules out property (i) even for quantum witnesses.
pub fn walk_obstruction(c: &GadgetCandidate, lmax: Option<usize>) -> Option<WalkObstruction> {
    let lmax = lmax.unwrap_or_else(|| default_walk_lmax(c));
    let wg = WalkTable::new(&c.gadget, lmax);
    let wa = WalkTable::new(&c.target, lmax);
    let na = c.target.n();
    (1..=lmax)
        .filter(|&l| wg.exists(l, c.x, c.y))
        .find_map(|l| {
            (0..na * na)
                .map(|i| (i / na, i % na))
                .find(|&(a, b)| !wa.exists(l, a, b))
                .map(|(a, b)| WalkObstruction { length: l, a, b })
        })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DistanceBound {
    pub distance: Length,
    pub required: usize,
    pub holds: bool,
}

/// Necessary condition for a gadget targeting `C_{2n+1}`: `d(x, y) ≥ 2n`.
pub fn odd_cycle_distance_bound(c: &GadgetCandidate, n: usize) -> Result<DistanceBound> {
    let expected = Graph::cycle(2 * n + 1)?;
    if c.target != expected {
        return Err(Error::GraphMismatch(format!(
            "target is not C_{}",
            2 * n + 1
        )));
    }
    let distance: Length = bfs(&c.gadget, c.x)[c.y].into();
    let holds = distance.finite().is_none_or(|d| d >= 2 * n);
    Ok(DistanceBound {
        distance,
        required: 2 * n,
        holds,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BuiltGadget {
    pub candidate: GadgetCandidate,
    pub distance: Length,
    pub table: PropertyTable,
    pub walk_lmax: usize,
    pub obstruction: Option<WalkObstruction>,
}

/// `(complement(C_{2k}), 0, 1)` for `K_k`, re-checked on every call.
pub fn complement_cycle_gadget(k: usize) -> Result<BuiltGadget> {
    if k < 3 {
        return Err(Error::OutOfRange(format!(
            "complement-cycle gadget needs k >= 3, got {k}"
        )));
    }
    let gadget = Graph::cycle(2 * k)?.complement();
    let mut c = GadgetCandidate::new(gadget, 0, 1, Graph::complete(k)?)?;
    c.status = GadgetStatus::ProvenOracular;
    c.provenance = format!(
        "the complement of C_{} with distinguished vertices 0,1 is a known oracular algebraic commutativity gadget for K_{k}",
        2 * k
    );
    let table = check_property_i_classical(&c, usize::MAX)?;
    table.verify(&c)?;
    if !table.complete {
        return Err(Error::Verification(format!(
            "property (i) table incomplete for k = {k}"
        )));
    }
    let walk_lmax = default_walk_lmax(&c);
    let obstruction = walk_obstruction(&c, Some(walk_lmax));
    if obstruction.is_some() {
        return Err(Error::Verification(format!(
            "walk obstruction found for k = {k}"
        )));
    }
    let distance = bfs(&c.gadget, 0)[1].into();
    Ok(BuiltGadget {
        candidate: c,
        distance,
        table,
        walk_lmax,
        obstruction,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TransferResult {
    pub candidate: GadgetCandidate,
    pub table: PropertyTable,
}

/// Transfers a gadget shared by targets `H` and `K` to `H × K`. Property (i)
/// for `((v,w), (v',w'))` uses the paired witness `z -> (π_{v,v'}(z),
/// π_{w,w'}(z))`.
pub fn product_transfer(
    c1: &GadgetCandidate,
    c2: &GadgetCandidate,
    bound: usize,
) -> Result<TransferResult> {
    if c1.gadget != c2.gadget || (c1.x, c1.y) != (c2.x, c2.y) {
        return Err(Error::GraphMismatch(
            "candidates do not share the gadget and distinguished vertices".into(),
        ));
    }
    let target = c1.target.categorical_product(&c2.target)?;
    let t1 = check_property_i_classical(c1, bound)?;
    let t2 = check_property_i_classical(c2, bound)?;
    let (nh, nk) = (c1.target.n(), c2.target.n());
    let lookup =
        |t: &PropertyTable, n: usize, a: usize, b: usize| t.entries[a * n + b].witness.clone();
    let mut entries = Vec::with_capacity(target.n() * target.n());
    for p in 0..target.n() {
        for q in 0..target.n() {
            let (v, w, v2, w2) = (p / nk, p % nk, q / nk, q % nk);
            let witness = match (lookup(&t1, nh, v, v2), lookup(&t2, nk, w, w2)) {
                (Some(f1), Some(f2)) => Some(f1.iter().zip(&f2).map(|(a, b)| a * nk + b).collect()),
                _ => None,
            };
            entries.push(PropertyEntry {
                a: p,
                b: q,
                witness,
            });
        }
    }
    let status =
        if c1.status == GadgetStatus::ProvenOracular && c2.status == GadgetStatus::ProvenOracular {
            GadgetStatus::ProvenOracular
        } else {
            GadgetStatus::Candidate
        };
    let candidate = GadgetCandidate {
        gadget: c1.gadget.clone(),
        x: c1.x,
        y: c1.y,
        target,
        status,
        provenance: match status {
            GadgetStatus::ProvenOracular => {
                "an oracular gadget shared by two targets is an oracular gadget for their categorical product".into()
            }
            _ => "product of candidates; nothing claimed about property (ii)".into(),
        },
    };
    let table = PropertyTable::from_entries(entries);
    table.verify(&candidate)?;
    Ok(TransferResult { candidate, table })
}

/// Glues a fresh copy of the gadget onto each pair `(u, v)` of `h`,
/// identifying `x` with `u` and `y` with `v`. Original vertices keep their
/// indices; copy `i` occupies the next `|G| - 2` indices in gadget order.
pub fn splice_gadget(h: &Graph, pairs: &[(usize, usize)], c: &GadgetCandidate) -> Result<Graph> {
    for &(u, v) in pairs {
        h.check_vertex(u)?;
        h.check_vertex(v)?;
        if u == v {
            return Err(Error::Precondition(format!(
                "pair ({u}, {v}) repeats a vertex"
            )));
        }
    }
    let g = &c.gadget;
    let inner = g.n() - 2;
    let n = h.n() + pairs.len() * inner;
    let mut edges: BTreeSet<(usize, usize)> = h.edges().into_iter().collect();
    for (i, &(u, v)) in pairs.iter().enumerate() {
        let base = h.n() + i * inner;
        let mut place = vec![0usize; g.n()];
        let mut next = base;
        for (z, slot) in place.iter_mut().enumerate() {
            *slot = if z == c.x {
                u
            } else if z == c.y {
                v
            } else {
                next += 1;
                next - 1
            };
        }
        for (a, b) in g.edges() {
            let (p, q) = (place[a], place[b]);
            edges.insert((p.min(q), p.max(q)));
        }
    }
    Graph::from_edges(n, &edges.into_iter().collect::<Vec<_>>())
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Refutation {
    /// `d(x, y) < 2n`.
    Distance { distance: usize, required: usize },
    /// A verified representation of `Mor(C_m □ P_k, C_m)` in which the PVMs
    /// at the two distinguished vertices fail to commute.
    NoncommutingRep {
        s0: usize,
        t0: usize,
        witness: (Gen, Gen),
        commutator_norm: f64,
        max_residual: f64,
        oracular_passed: bool,
        /// The path representation that was lifted.
        path_rep: Box<QuantumRep>,
    },
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CandidateRefutation {
    /// `((a0, s0), (b0, t0))` in `C_m × P_k` coordinates.
    pub pair: ((usize, usize), (usize, usize)),
    pub vertices: (usize, usize),
    /// Number of unordered pairs in the symmetry class.
    pub class_size: usize,
    pub refutation: Refutation,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct DisproofReport {
    pub n: usize,
    pub k: usize,
    pub graph: String,
    pub target: String,
    pub total_pairs: usize,
    pub classes: usize,
    pub distance_refuted: usize,
    pub representation_refuted: usize,
    pub all_refuted: bool,
    pub refutations: Vec<CandidateRefutation>,
}

type Point = (usize, usize);

/// Canonical representative of an unordered pair of `C_m □ P_k` vertices
/// under rotations and reflections of the cycle and reflection of the path.
pub fn canonical_pair(p: Point, q: Point, m: usize, k: usize) -> (Point, Point) {
    let mut best: Option<(Point, Point)> = None;
    for r in 0..m {
        for flip_c in [false, true] {
            for flip_p in [false, true] {
                let act = |(a, s): Point| {
                    let a = if flip_c { (m - a) % m } else { a };
                    ((a + r) % m, if flip_p { k - s } else { s })
                };
                let (x, y) = (act(p), act(q));
                let pair = if x <= y { (x, y) } else { (y, x) };
                if best.is_none_or(|b| pair < b) {
                    best = Some(pair);
                }
            }
        }
    }
    best.expect("cycle is nonempty")
}

/// Unordered vertex pairs grouped by symmetry class, in canonical order.
pub fn pair_classes(m: usize, k: usize) -> BTreeMap<(Point, Point), usize> {
    let pts: Vec<Point> = (0..m).flat_map(|a| (0..=k).map(move |s| (a, s))).collect();
    let mut classes = BTreeMap::new();
    for i in 0..pts.len() {
        for j in i + 1..pts.len() {
            *classes
                .entry(canonical_pair(pts[i], pts[j], m, k))
                .or_insert(0) += 1;
        }
    }
    classes
}

/// Refutes one candidate pair of `C_{2n+1} □ P_k`.
pub fn refute_pair(n: usize, k: usize, p: Point, q: Point) -> Result<Refutation> {
    let m = 2 * n + 1;
    let g = Graph::cycle(m)?.box_product(&Graph::path(k)?)?;
    let idx = |(a, s): Point| a * (k + 1) + s;
    let d = bfs(&g, idx(p))[idx(q)]
        .ok_or_else(|| Error::Verification("box product is disconnected".into()))?;
    if d < 2 * n {
        return Ok(Refutation::Distance {
            distance: d,
            required: 2 * n,
        });
    }
    let ((a0, s0), (b0, t0)) = if p.1 <= q.1 { (p, q) } else { (q, p) };
    if t0 < s0 + 2 {
        return Err(Error::Verification(format!(
            "distance {d} >= {} but path coordinates {s0}, {t0} are too close",
            2 * n
        )));
    }
    let path_rep = path_to_cycle_rep(k, s0, t0, n)?;
    let lifted = lift_box_rep(&path_rep, m)?;
    let report = verify_rep(&lifted, false);
    if !report.passed {
        return Err(Error::Verification(format!(
            "lifted representation for ({a0},{s0}), ({b0},{t0}) fails its relations"
        )));
    }
    let oracular_passed = verify_rep(&lifted, true).passed;
    let witness = lifted_witness(k, m, (a0, s0), (b0, t0));
    let norm = commutator_norm(&lifted, witness.0, witness.1);
    if norm <= lifted.tol {
        return Err(Error::Verification(format!(
            "witness pair for ({a0},{s0}), ({b0},{t0}) commutes"
        )));
    }
    Ok(Refutation::NoncommutingRep {
        s0,
        t0,
        witness,
        commutator_norm: norm,
        max_residual: report.max_residual,
        oracular_passed,
        path_rep: Box::new(path_rep),
    })
}

/// Shows that no pair of distinguished vertices makes `C_{2n+1} □ P_k` a
/// commutativity gadget for `C_{2n+1}` (`n ≥ 2`): each symmetry class of
/// pairs is refuted by distance or by an explicit noncommuting
/// representation.
pub fn disprove_box_path_gadget(n: usize, k: usize) -> Result<DisproofReport> {
    if n < 2 {
        return Err(Error::OutOfRange(
            "n must be >= 2; for n = 1 the prism box(C:3,P:1) is a gadget for K_3 = C_3".into(),
        ));
    }
    let m = 2 * n + 1;
    let g = Graph::cycle(m)?.box_product(&Graph::path(k)?)?;
    let classes: Vec<_> = pair_classes(m, k).into_iter().collect();
    let refutations = classes
        .par_iter()
        .map(|&((p, q), class_size)| {
            Ok(CandidateRefutation {
                pair: (p, q),
                vertices: (p.0 * (k + 1) + p.1, q.0 * (k + 1) + q.1),
                class_size,
                refutation: refute_pair(n, k, p, q)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let distance_refuted = refutations
        .iter()
        .filter(|r| matches!(r.refutation, Refutation::Distance { .. }))
        .count();
    let total_pairs = g.n() * (g.n() - 1) / 2;
    let covered: usize = refutations.iter().map(|r| r.class_size).sum();
    Ok(DisproofReport {
        n,
        k,
        graph: format!("box(C:{m},P:{k})"),
        target: format!("C:{m}"),
        total_pairs,
        classes: refutations.len(),
        distance_refuted,
        representation_refuted: refutations.len() - distance_refuted,
        all_refuted: covered == total_pairs,
        refutations,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn family(s: &str) -> Graph {
        Graph::from_family(s).unwrap()
    }

    fn cand(g: &str, x: usize, y: usize, t: &str) -> GadgetCandidate {
        GadgetCandidate::new(family(g), x, y, family(t)).unwrap()
    }

    #[test]
    fn property_tables() {
        let t = check_property_i_classical(&cand("cmpl(C:6)", 0, 1, "K:3"), 12).unwrap();
        assert!(t.complete);
        assert_eq!(t.entries.len(), 9);
        let t = check_property_i_classical(&cand("K:2", 0, 1, "K:3"), 12).unwrap();
        let missing: Vec<_> = t
            .entries
            .iter()
            .filter(|e| e.witness.is_none())
            .map(|e| (e.a, e.b))
            .collect();
        assert_eq!(missing, vec![(0, 0), (1, 1), (2, 2)]);
        let t = check_property_i_classical(&cand("cmpl(C:8)", 0, 1, "K:4"), 12).unwrap();
        assert!(t.complete && t.found == 16);
        assert!(matches!(
            check_property_i_classical(&cand("C:13", 0, 1, "K:3"), 12),
            Err(Error::SizeBound { .. })
        ));
    }

    #[test]
    fn walk_obstructions() {
        assert_eq!(
            walk_obstruction(&cand("P:1", 0, 1, "C:5"), None),
            Some(WalkObstruction {
                length: 1,
                a: 0,
                b: 0
            })
        );
        assert_eq!(
            walk_obstruction(&cand("cmpl(C:6)", 0, 1, "K:3"), Some(12)),
            None
        );
        // d(x, y) <= 3 in any gadget for C_5
        let o = walk_obstruction(&cand("P:3", 0, 3, "C:5"), None).unwrap();
        assert_eq!(o.length, 3);
        assert_eq!((o.a, o.b), (0, 0));
    }

    #[test]
    fn distance_bounds() {
        let c = cand("box(C:5,P:3)", 1, 2 * 4 + 3, "C:5");
        let b = odd_cycle_distance_bound(&c, 2).unwrap();
        assert_eq!(b.distance, Length::Finite(4));
        assert!(b.holds);
        let g = family("box(C:5,P:1)");
        for x in 0..g.n() {
            for y in x + 1..g.n() {
                let c = GadgetCandidate::new(g.clone(), x, y, family("C:5")).unwrap();
                assert!(!odd_cycle_distance_bound(&c, 2).unwrap().holds);
            }
        }
        assert!(odd_cycle_distance_bound(&c, 3).is_err());
        let prism = cand("box(C:3,P:1)", 1, 2, "C:3");
        let b = odd_cycle_distance_bound(&prism, 1).unwrap();
        assert_eq!(b.distance, Length::Finite(2));
    }

    #[test]
    fn complement_cycle_family() {
        for k in 3..=5 {
            let b = complement_cycle_gadget(k).unwrap();
            assert_eq!(b.table.entries.len(), k * k);
            assert!(b.table.complete);
            assert_eq!(b.candidate.status, GadgetStatus::ProvenOracular);
        }
        let prism = family("box(C:3,P:1)");
        assert_eq!(
            complement_cycle_gadget(3)
                .unwrap()
                .candidate
                .gadget
                .edge_count(),
            prism.edge_count()
        );
        assert!(complement_cycle_gadget(2).is_err());
    }

    #[test]
    fn transfer() {
        let c = complement_cycle_gadget(3).unwrap().candidate;
        let t = product_transfer(&c, &c, 12).unwrap();
        assert_eq!(t.table.entries.len(), 81);
        assert!(t.table.complete);
        assert_eq!(t.candidate.status, GadgetStatus::ProvenOracular);
        let mut plain = c.clone();
        plain.status = GadgetStatus::Candidate;
        assert_eq!(
            product_transfer(&c, &plain, 12).unwrap().candidate.status,
            GadgetStatus::Candidate
        );
        let mut moved = c.clone();
        moved.y = 2;
        assert!(product_transfer(&c, &moved, 12).is_err());
    }

    #[test]
    fn splicing() {
        let prism = complement_cycle_gadget(3).unwrap().candidate;
        let s = splice_gadget(&family("E:2"), &[(0, 1)], &prism).unwrap();
        assert_eq!((s.n(), s.edge_count()), (6, 9));
        let k3 = family("K:3");
        assert_eq!(splice_gadget(&k3, &[], &prism).unwrap(), k3);
        let s = splice_gadget(&k3, &[(0, 1)], &prism).unwrap();
        assert_eq!((s.n(), s.edge_count()), (7, 12));
        assert_eq!(s.induced(&[0, 1, 2]).unwrap(), k3);
        assert!(splice_gadget(&k3, &[(0, 3)], &prism).is_err());
    }

    #[test]
    fn symmetry_classes_cover_all_pairs() {
        for k in 0..=3 {
            let classes = pair_classes(5, k);
            let pts = 5 * (k + 1);
            assert_eq!(classes.values().sum::<usize>(), pts * (pts - 1) / 2);
        }
    }

    #[test]
    fn disproof_small() {
        let r = disprove_box_path_gadget(2, 1).unwrap();
        assert!(r.all_refuted);
        assert_eq!(r.distance_refuted, r.classes);
        let r = disprove_box_path_gadget(2, 3).unwrap();
        assert!(r.all_refuted);
        assert!(r.representation_refuted > 0);
        assert!(disprove_box_path_gadget(1, 2).is_err());
    }
}
