//! Defects of finite-dimensional strategies under the normalised trace
//! `τ = Tr / dim`.
//!
//! A [`Strategy`] for an instance graph `H` and target `G` holds a PVM
//! `{P^u_a}_{a ∈ G}` per vertex of `H`, optionally a PVM
//! `{Φ^{(x,y)}_{(a,b)}}` per directed edge of `H` whose outcomes range over
//! directed edges of `G`, and a probability distribution on directed edges
//! of `H`. Weights are exact rationals in input and become floats only when
//! a defect is evaluated.

use std::collections::BTreeMap;
use std::str::FromStr;

use num_rational::Ratio;
use num_traits::{CheckedAdd, ToPrimitive};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::qrep::{matrix_from_doc, matrix_to_doc, parse_key, CMatrix, QuantumRep};

pub type Weight = Ratio<i64>;
pub type DirectedEdge = (usize, usize);
/// Weights on ordered pairs of directed edges of the instance.
pub type PairDist = BTreeMap<(DirectedEdge, DirectedEdge), Weight>;

#[derive(Clone, Debug)]
pub struct Strategy {
    instance: Graph,
    target: Graph,
    dim: usize,
    tol: f64,
    /// `vertex_pvms[u][a] = P^u_a`.
    vertex_pvms: Vec<Vec<CMatrix>>,
    edge_pvms: Option<BTreeMap<DirectedEdge, BTreeMap<DirectedEdge, CMatrix>>>,
    dist: BTreeMap<DirectedEdge, Weight>,
}

impl Strategy {
    /// Validates every PVM and the distribution.
    pub fn new(
        instance: Graph,
        target: Graph,
        dim: usize,
        vertex_pvms: Vec<Vec<CMatrix>>,
        edge_pvms: Option<BTreeMap<DirectedEdge, BTreeMap<DirectedEdge, CMatrix>>>,
        dist: BTreeMap<DirectedEdge, Weight>,
    ) -> Result<Self> {
        let s = Strategy {
            instance,
            target,
            dim,
            tol: crate::DEFAULT_TOL,
            vertex_pvms,
            edge_pvms,
            dist,
        };
        s.validate()?;
        Ok(s)
    }

    pub fn with_tol(mut self, tol: f64) -> Result<Self> {
        self.tol = tol;
        self.validate()?;
        Ok(self)
    }

    /// Uniform weight over the undirected edges of `h`, split evenly between
    /// the two orientations.
    pub fn uniform_dist(h: &Graph) -> Result<BTreeMap<DirectedEdge, Weight>> {
        let m = h.edge_count();
        if m == 0 {
            return Err(Error::Strategy("instance has no edges".into()));
        }
        let w = Weight::new(1, 2 * m as i64);
        Ok(h.edges()
            .into_iter()
            .flat_map(|(u, v)| [((u, v), w), ((v, u), w)])
            .collect())
    }

    /// Dimension-one strategy assigning `map[u]` to `u`. When `map` is a
    /// homomorphism the edge PVMs are the matching deterministic outcomes.
    pub fn classical(
        h: &Graph,
        g: &Graph,
        map: &[usize],
        dist: BTreeMap<DirectedEdge, Weight>,
    ) -> Result<Self> {
        if map.len() != h.n() {
            return Err(Error::GraphMismatch(
                "map length differs from instance size".into(),
            ));
        }
        for &v in map {
            g.check_vertex(v)?;
        }
        let one = CMatrix::identity(1);
        let vertex_pvms = map
            .iter()
            .map(|&v| {
                (0..g.n())
                    .map(|a| {
                        if a == v {
                            one.clone()
                        } else {
                            CMatrix::zeros(1)
                        }
                    })
                    .collect()
            })
            .collect();
        let edge_pvms = h.is_homomorphism(g, map).then(|| {
            directed_edges(h)
                .map(|(x, y)| ((x, y), BTreeMap::from([((map[x], map[y]), one.clone())])))
                .collect()
        });
        Strategy::new(h.clone(), g.clone(), 1, vertex_pvms, edge_pvms, dist)
    }

    /// Vertex PVMs taken from the rows of a representation of `Mor(H, G)`.
    pub fn from_rep(rep: &QuantumRep, dist: BTreeMap<DirectedEdge, Weight>) -> Result<Self> {
        let vertex_pvms = (0..rep.domain.n())
            .map(|u| {
                (0..rep.codomain.n())
                    .map(|a| rep.get_or_zero(u, a))
                    .collect()
            })
            .collect();
        Strategy::new(
            rep.domain.clone(),
            rep.codomain.clone(),
            rep.dim,
            vertex_pvms,
            None,
            dist,
        )
        .and_then(|s| s.with_tol(rep.tol))
    }

    /// Replaces the edge PVMs by `Φ^{(x,y)}_{(a,b)} = P^x_a P^y_b`, which is a
    /// PVM only when the vertex PVMs commute along edges and never place
    /// weight on non-edges.
    pub fn with_product_edge_pvms(mut self) -> Result<Self> {
        let mut edges = BTreeMap::new();
        for (x, y) in directed_edges(&self.instance) {
            let mut fam = BTreeMap::new();
            for (a, b) in directed_edges(&self.target) {
                let m = &self.vertex_pvms[x][a] * &self.vertex_pvms[y][b];
                if !m.is_zero() {
                    fam.insert((a, b), m);
                }
            }
            edges.insert((x, y), fam);
        }
        self.edge_pvms = Some(edges);
        self.validate()?;
        Ok(self)
    }

    pub fn instance(&self) -> &Graph {
        &self.instance
    }

    pub fn target(&self) -> &Graph {
        &self.target
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn tol(&self) -> f64 {
        self.tol
    }

    pub fn pvm(&self, u: usize, a: usize) -> &CMatrix {
        &self.vertex_pvms[u][a]
    }

    pub fn dist(&self) -> &BTreeMap<DirectedEdge, Weight> {
        &self.dist
    }

    pub fn has_edge_pvms(&self) -> bool {
        self.edge_pvms.is_some()
    }

    fn validate(&self) -> Result<()> {
        let (h, g, d) = (&self.instance, &self.target, self.dim);
        if d == 0 {
            return Err(Error::Strategy("dimension must be positive".into()));
        }
        if self.tol.is_nan() || self.tol < 0.0 {
            return Err(Error::Strategy("tolerance must be nonnegative".into()));
        }
        if self.vertex_pvms.len() != h.n() {
            return Err(Error::Strategy(format!(
                "{} vertex PVMs for an instance on {} vertices",
                self.vertex_pvms.len(),
                h.n()
            )));
        }
        for (u, fam) in self.vertex_pvms.iter().enumerate() {
            if fam.len() != g.n() {
                return Err(Error::Strategy(format!(
                    "PVM at vertex {u} has {} outcomes",
                    fam.len()
                )));
            }
            check_pvm(fam.iter(), d, self.tol)
                .map_err(|e| Error::Strategy(format!("vertex {u}: {e}")))?;
        }
        if let Some(edges) = &self.edge_pvms {
            for e in directed_edges(h) {
                if !edges.contains_key(&e) {
                    return Err(Error::Strategy(format!("missing edge PVM for {e:?}")));
                }
            }
            for (e, fam) in edges {
                if e.0 >= h.n() || e.1 >= h.n() || !h.adjacent(e.0, e.1) {
                    return Err(Error::Strategy(format!("edge PVM keyed by non-edge {e:?}")));
                }
                for o in fam.keys() {
                    if o.0 >= g.n() || o.1 >= g.n() || !g.adjacent(o.0, o.1) {
                        return Err(Error::Strategy(format!(
                            "edge PVM {e:?} has non-edge outcome {o:?}"
                        )));
                    }
                }
                check_pvm(fam.values(), d, self.tol)
                    .map_err(|err| Error::Strategy(format!("edge {e:?}: {err}")))?;
            }
        }
        for e in self.dist.keys() {
            if e.0 >= h.n() || e.1 >= h.n() || !h.adjacent(e.0, e.1) {
                return Err(Error::Strategy(format!(
                    "distribution weight on non-edge {e:?}"
                )));
            }
        }
        check_distribution(self.dist.values())
    }
}

fn directed_edges(g: &Graph) -> impl Iterator<Item = DirectedEdge> + '_ {
    g.edges().into_iter().flat_map(|(u, v)| [(u, v), (v, u)])
}

fn check_pvm<'a>(
    fam: impl Iterator<Item = &'a CMatrix> + Clone,
    dim: usize,
    tol: f64,
) -> Result<(), String> {
    let mut sum = CMatrix::zeros(dim);
    for (i, p) in fam.clone().enumerate() {
        if p.dim() != dim {
            return Err(format!("outcome {i} has dimension {}", p.dim()));
        }
        if p.hermitian_residual() > tol || p.idempotent_residual() > tol {
            return Err(format!("outcome {i} is not a projection"));
        }
        sum = &sum + p;
    }
    if (&sum - &CMatrix::identity(dim)).max_abs() > tol {
        return Err("outcomes do not sum to the identity".into());
    }
    let all: Vec<&CMatrix> = fam.collect();
    for i in 0..all.len() {
        for j in i + 1..all.len() {
            if (all[i] * all[j]).max_abs() > tol {
                return Err(format!("outcomes {i} and {j} are not orthogonal"));
            }
        }
    }
    Ok(())
}

fn check_distribution<'a>(ws: impl Iterator<Item = &'a Weight>) -> Result<()> {
    let mut total = Weight::from_integer(0);
    for w in ws {
        if *w < Weight::from_integer(0) {
            return Err(Error::Strategy(format!("negative weight {w}")));
        }
        total = total
            .checked_add(w)
            .ok_or_else(|| Error::Strategy("weight sum overflows".into()))?;
    }
    if total != Weight::from_integer(1) {
        return Err(Error::Strategy(format!("weights sum to {total}, not 1")));
    }
    Ok(())
}

fn to_f64(w: &Weight) -> f64 {
    w.to_f64().unwrap_or(f64::NAN)
}

/// `τ(M)`, real part.
fn tau(m: &CMatrix) -> f64 {
    m.normalized_trace().re
}

/// Σ over directed edges `(x,y)` of `dist(x,y)` times
/// Σ over `(a,b)` with `a = b` or `a ≁ b` of `τ(P^y_b P^x_a P^y_b)`.
pub fn assignment_defect(s: &Strategy) -> f64 {
    let g = &s.target;
    let mut total = 0.0;
    for (&(x, y), w) in &s.dist {
        let mut term = 0.0;
        for a in 0..g.n() {
            let pa = &s.vertex_pvms[x][a];
            if pa.is_zero() {
                continue;
            }
            for b in 0..g.n() {
                if g.adjacent(a, b) {
                    continue;
                }
                let pb = &s.vertex_pvms[y][b];
                if !pb.is_zero() {
                    term += tau(&(&(pb * pa) * pb));
                }
            }
        }
        total += to_f64(w) * term;
    }
    total
}

fn require_edges(s: &Strategy) -> Result<&BTreeMap<DirectedEdge, BTreeMap<DirectedEdge, CMatrix>>> {
    s.edge_pvms
        .as_ref()
        .ok_or_else(|| Error::Strategy("edge PVMs are required for this defect".into()))
}

/// Σ over directed edges `(x,y)`, endpoints `i`, and outcomes `(a,b)` of
/// `dist(x,y)/2 · τ(|Φ^{(x,y)}_{(a,b)}(1 - P^{x_i}_{c_i})|²)` with
/// `c = (a, b)`.
pub fn cv_defect(s: &Strategy) -> Result<f64> {
    let edges = require_edges(s)?;
    let id = CMatrix::identity(s.dim);
    let mut total = 0.0;
    for (&(x, y), w) in &s.dist {
        let mut term = 0.0;
        for (&(a, b), phi) in &edges[&(x, y)] {
            for (v, c) in [(x, a), (y, b)] {
                term += (phi * &(&id - &s.vertex_pvms[v][c])).tau_norm_sqr();
            }
        }
        total += to_f64(w) / 2.0 * term;
    }
    Ok(total)
}

/// Σ over weighted pairs of directed edges `(e, e')` and outcome pairs that
/// disagree on a shared vertex (`e_i = e'_j` but `o_i ≠ o'_j`) of
/// `π(e, e') · τ(|Φ^e_o Φ^{e'}_{o'}|²)`. Pairs without a shared vertex
/// contribute nothing.
pub fn cc_defect(s: &Strategy, pair_dist: &PairDist) -> Result<f64> {
    let edges = require_edges(s)?;
    for (e, e2) in pair_dist.keys() {
        for f in [e, e2] {
            if !edges.contains_key(f) {
                return Err(Error::Strategy(format!(
                    "pair distribution uses non-edge {f:?}"
                )));
            }
        }
    }
    check_distribution(pair_dist.values())?;
    let mut total = 0.0;
    for (&(e, e2), w) in pair_dist {
        let (ev, e2v) = ([e.0, e.1], [e2.0, e2.1]);
        let mut term = 0.0;
        for (&o, phi) in &edges[&e] {
            for (&o2, phi2) in &edges[&e2] {
                let (ov, o2v) = ([o.0, o.1], [o2.0, o2.1]);
                let clash = (0..2).any(|i| (0..2).any(|j| ev[i] == e2v[j] && ov[i] != o2v[j]));
                if clash {
                    term += (phi * phi2).tau_norm_sqr();
                }
            }
        }
        total += to_f64(w) * term;
    }
    Ok(total)
}

/// `Σ_{a,b} τ(C†C)` with `C = [P^x_a, P^y_b]`.
pub fn commutator_defect(s: &Strategy, x: usize, y: usize) -> Result<f64> {
    s.instance.check_vertex(x)?;
    s.instance.check_vertex(y)?;
    let mut total = 0.0;
    for pa in s.vertex_pvms[x].iter().filter(|m| !m.is_zero()) {
        for pb in s.vertex_pvms[y].iter().filter(|m| !m.is_zero()) {
            total += pa.commutator(pb).tau_norm_sqr();
        }
    }
    Ok(total)
}

/// Parses `"p/q"` or `"p"` as an exact weight.
pub fn parse_weight(text: &str) -> Result<Weight> {
    Weight::from_str(text.trim()).map_err(|_| Error::Strategy(format!("bad weight `{text}`")))
}

/// Parses a pair-distribution key `"x,y;x',y'"`.
pub fn parse_pair_key(key: &str) -> Option<(DirectedEdge, DirectedEdge)> {
    let (a, b) = key.split_once(';')?;
    Some((parse_key(a)?, parse_key(b)?))
}

pub fn parse_pair_dist(doc: &BTreeMap<String, String>) -> Result<PairDist> {
    doc.iter()
        .map(|(k, v)| {
            let key =
                parse_pair_key(k).ok_or_else(|| Error::Strategy(format!("bad pair key `{k}`")))?;
            Ok((key, parse_weight(v)?))
        })
        .collect()
}

type MatDoc = Vec<Vec<[f64; 2]>>;

#[derive(Serialize, Deserialize)]
struct StrategyDoc {
    instance: Graph,
    target: Graph,
    dim: usize,
    #[serde(default = "default_tol")]
    tol: f64,
    vertex_pvms: BTreeMap<String, MatDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    edge_pvms: Option<BTreeMap<String, BTreeMap<String, MatDoc>>>,
    dist: BTreeMap<String, String>,
}

fn default_tol() -> f64 {
    crate::DEFAULT_TOL
}

impl Serialize for Strategy {
    fn serialize<S: Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        let mut vertex_pvms = BTreeMap::new();
        for (u, fam) in self.vertex_pvms.iter().enumerate() {
            for (a, m) in fam.iter().enumerate() {
                if !m.is_zero() {
                    vertex_pvms.insert(format!("{u},{a}"), matrix_to_doc(m));
                }
            }
        }
        let edge_pvms = self.edge_pvms.as_ref().map(|edges| {
            edges
                .iter()
                .map(|((x, y), fam)| {
                    let fam = fam
                        .iter()
                        .map(|((a, b), m)| (format!("{a},{b}"), matrix_to_doc(m)))
                        .collect();
                    (format!("{x},{y}"), fam)
                })
                .collect()
        });
        StrategyDoc {
            instance: self.instance.clone(),
            target: self.target.clone(),
            dim: self.dim,
            tol: self.tol,
            vertex_pvms,
            edge_pvms,
            dist: self
                .dist
                .iter()
                .map(|((x, y), w)| (format!("{x},{y}"), w.to_string()))
                .collect(),
        }
        .serialize(ser)
    }
}

impl<'de> Deserialize<'de> for Strategy {
    fn deserialize<D: Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let doc = StrategyDoc::deserialize(de)?;
        from_doc(doc).map_err(D::Error::custom)
    }
}

fn from_doc(doc: StrategyDoc) -> Result<Strategy> {
    let (h, g, d) = (&doc.instance, &doc.target, doc.dim);
    let key = |k: &str| parse_key(k).ok_or_else(|| Error::RepFormat(format!("bad key `{k}`")));
    let mut vertex_pvms = vec![vec![CMatrix::zeros(d); g.n()]; h.n()];
    for (k, m) in &doc.vertex_pvms {
        let (u, a) = key(k)?;
        h.check_vertex(u)?;
        g.check_vertex(a)?;
        vertex_pvms[u][a] = matrix_from_doc(m, d)?;
    }
    let edge_pvms = match &doc.edge_pvms {
        None => None,
        Some(edges) => {
            let mut out = BTreeMap::new();
            for (k, fam) in edges {
                let e = key(k)?;
                let mut f = BTreeMap::new();
                for (ko, m) in fam {
                    f.insert(key(ko)?, matrix_from_doc(m, d)?);
                }
                out.insert(e, f);
            }
            Some(out)
        }
    };
    let mut dist = BTreeMap::new();
    for (k, w) in &doc.dist {
        dist.insert(key(k)?, parse_weight(w)?);
    }
    let s = Strategy {
        instance: doc.instance,
        target: doc.target,
        dim: d,
        tol: doc.tol,
        vertex_pvms,
        edge_pvms,
        dist,
    };
    s.validate()?;
    Ok(s)
}
