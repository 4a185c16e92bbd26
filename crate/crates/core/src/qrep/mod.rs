//! Finite-dimensional representations of quantum homomorphism algebras.
//!
//! A [`QuantumRep`] assigns a projection to each generator `p_{uv}`
//! (`u` in the domain graph, `v` in the codomain). Missing entries are zero
//! matrices. [`verify_rep`] checks the defining relations numerically:
//!
//! - every matrix is a projection,
//! - each row `{p_{uv}}_v` sums to the identity,
//! - `p_{uv} p_{u'v'} = 0` whenever `u ~ u'` but `v` and `v'` are not adjacent,
//! - in oracular mode, `[p_{uv}, p_{u'v'}] = 0` whenever `u ~ u'`.

mod build;
pub mod matrix;

use std::collections::BTreeMap;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

pub use build::{
    classical_rep, compose_reps, four_cycle_rep, lift_box_rep, lifted_witness, pair_swap_rep,
    path_to_cycle_rep, schmidt_rep, schmidt_witness,
};
pub use matrix::CMatrix;

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Generator index `(u, v)` for `p_{uv}`.
pub type Gen = (usize, usize);

#[derive(Clone, Debug)]
pub struct QuantumRep {
    pub domain: Graph,
    pub codomain: Graph,
    pub dim: usize,
    pub tol: f64,
    mats: BTreeMap<Gen, CMatrix>,
}

impl QuantumRep {
    pub fn new(domain: Graph, codomain: Graph, dim: usize) -> Self {
        QuantumRep {
            domain,
            codomain,
            dim,
            tol: crate::DEFAULT_TOL,
            mats: BTreeMap::new(),
        }
    }

    pub fn with_tol(mut self, tol: f64) -> Self {
        self.tol = tol;
        self
    }

    /// Sets `p_{uv}`; zero matrices are dropped.
    pub fn set(&mut self, u: usize, v: usize, m: CMatrix) -> Result<()> {
        self.domain.check_vertex(u)?;
        self.codomain.check_vertex(v)?;
        if m.dim() != self.dim {
            return Err(Error::RepFormat(format!(
                "matrix for ({u},{v}) has dimension {}, expected {}",
                m.dim(),
                self.dim
            )));
        }
        if m.is_zero() {
            self.mats.remove(&(u, v));
        } else {
            self.mats.insert((u, v), m);
        }
        Ok(())
    }

    pub fn get(&self, u: usize, v: usize) -> Option<&CMatrix> {
        self.mats.get(&(u, v))
    }

    /// `p_{uv}`, materialising the zero matrix for absent entries.
    pub fn get_or_zero(&self, u: usize, v: usize) -> CMatrix {
        self.get(u, v)
            .cloned()
            .unwrap_or_else(|| CMatrix::zeros(self.dim))
    }

    pub fn entries(&self) -> impl Iterator<Item = (&Gen, &CMatrix)> {
        self.mats.iter()
    }

    /// Present entries of row `u`.
    pub fn row(&self, u: usize) -> impl Iterator<Item = (usize, &CMatrix)> {
        self.mats
            .range((u, 0)..(u + 1, 0))
            .map(|(&(_, v), m)| (v, m))
    }

    /// Largest entrywise difference between two representations on the same
    /// graphs and dimension.
    pub fn max_difference(&self, other: &QuantumRep) -> Result<f64> {
        if self.dim != other.dim || self.domain != other.domain || self.codomain != other.codomain {
            return Err(Error::GraphMismatch(
                "representations have different shapes".into(),
            ));
        }
        let mut worst = 0.0f64;
        for key in self.mats.keys().chain(other.mats.keys()) {
            let a = self.get_or_zero(key.0, key.1);
            let b = other.get_or_zero(key.0, key.1);
            worst = worst.max((&a - &b).max_abs());
        }
        Ok(worst)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "relation", rename_all = "snake_case")]
pub enum Violation {
    NotHermitian {
        generator: Gen,
        residual: f64,
    },
    NotIdempotent {
        generator: Gen,
        residual: f64,
    },
    RowSum {
        u: usize,
        residual: f64,
    },
    Orthogonality {
        left: Gen,
        right: Gen,
        residual: f64,
    },
    Commutation {
        left: Gen,
        right: Gen,
        residual: f64,
    },
}

impl Violation {
    pub fn residual(&self) -> f64 {
        match self {
            Violation::NotHermitian { residual, .. }
            | Violation::NotIdempotent { residual, .. }
            | Violation::RowSum { residual, .. }
            | Violation::Orthogonality { residual, .. }
            | Violation::Commutation { residual, .. } => *residual,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub passed: bool,
    pub oracular: bool,
    pub tol: f64,
    /// Largest residual over every relation checked, in max-entry norm.
    pub max_residual: f64,
    pub relations_checked: usize,
    pub violations: Vec<Violation>,
}

/// Checks every defining relation of `r`; see the module docs.
pub fn verify_rep(r: &QuantumRep, oracular: bool) -> VerificationReport {
    let tol = r.tol;
    let mut max_residual = 0.0f64;
    let mut checked = 0usize;
    let mut violations = Vec::new();
    let mut record = |v: Violation, violations: &mut Vec<Violation>| {
        let res = v.residual();
        max_residual = max_residual.max(res);
        if res > tol || res.is_nan() {
            violations.push(v);
        }
    };

    for (&generator, m) in r.entries() {
        checked += 2;
        let residual = m.hermitian_residual();
        record(
            Violation::NotHermitian {
                generator,
                residual,
            },
            &mut violations,
        );
        let residual = m.idempotent_residual();
        record(
            Violation::NotIdempotent {
                generator,
                residual,
            },
            &mut violations,
        );
    }

    let id = CMatrix::identity(r.dim);
    for u in 0..r.domain.n() {
        let sum = r.row(u).fold(CMatrix::zeros(r.dim), |acc, (_, m)| &acc + m);
        checked += 1;
        let residual = (&sum - &id).max_abs();
        record(Violation::RowSum { u, residual }, &mut violations);
    }

    let g = &r.codomain;
    for (u, u2) in r.domain.edges() {
        for (a, b) in [(u, u2), (u2, u)] {
            for (v, pv) in r.row(a) {
                for (v2, pv2) in r.row(b) {
                    if !g.adjacent(v, v2) {
                        checked += 1;
                        let residual = (pv * pv2).max_abs();
                        record(
                            Violation::Orthogonality {
                                left: (a, v),
                                right: (b, v2),
                                residual,
                            },
                            &mut violations,
                        );
                    }
                    if oracular && a < b {
                        checked += 1;
                        let residual = pv.commutator(pv2).max_abs();
                        record(
                            Violation::Commutation {
                                left: (a, v),
                                right: (b, v2),
                                residual,
                            },
                            &mut violations,
                        );
                    }
                }
            }
        }
    }

    VerificationReport {
        passed: violations.is_empty(),
        oracular,
        tol,
        max_residual,
        relations_checked: checked,
        violations,
    }
}

/// Operator norm of `[p_{uv}, p_{u'v'}]`.
pub fn commutator_norm(r: &QuantumRep, a: Gen, b: Gen) -> f64 {
    match (r.get(a.0, a.1), r.get(b.0, b.1)) {
        (Some(x), Some(y)) => x.commutator(y).op_norm(),
        _ => 0.0,
    }
}

#[derive(Serialize, Deserialize)]
struct RepDoc {
    domain: Graph,
    codomain: Graph,
    dim: usize,
    tol: f64,
    mats: BTreeMap<String, Vec<Vec<[f64; 2]>>>,
}

impl Serialize for QuantumRep {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mats = self
            .mats
            .iter()
            .map(|(&(u, v), m)| {
                let rows = m
                    .rows()
                    .map(|r| r.iter().map(|z| [z.re, z.im]).collect())
                    .collect();
                (format!("{u},{v}"), rows)
            })
            .collect();
        RepDoc {
            domain: self.domain.clone(),
            codomain: self.codomain.clone(),
            dim: self.dim,
            tol: self.tol,
            mats,
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for QuantumRep {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let doc = RepDoc::deserialize(d)?;
        if doc.dim == 0 {
            return Err(D::Error::custom("dimension must be positive"));
        }
        if doc.tol.is_nan() || doc.tol < 0.0 {
            return Err(D::Error::custom("tolerance must be nonnegative"));
        }
        let mut rep = QuantumRep::new(doc.domain, doc.codomain, doc.dim).with_tol(doc.tol);
        for (key, rows) in doc.mats {
            let (u, v) =
                parse_key(&key).ok_or_else(|| D::Error::custom(format!("bad key `{key}`")))?;
            let m = matrix_from_doc(&rows, doc.dim).map_err(D::Error::custom)?;
            rep.set(u, v, m).map_err(D::Error::custom)?;
        }
        Ok(rep)
    }
}

pub fn parse_key(key: &str) -> Option<(usize, usize)> {
    let (a, b) = key.split_once(',')?;
    Some((a.trim().parse().ok()?, b.trim().parse().ok()?))
}

pub fn matrix_from_doc(rows: &[Vec<[f64; 2]>], dim: usize) -> Result<CMatrix> {
    if rows.len() != dim || rows.iter().any(|r| r.len() != dim) {
        return Err(Error::RepFormat(format!("matrix is not {dim}x{dim}")));
    }
    if rows.iter().flatten().flatten().any(|x| !x.is_finite()) {
        return Err(Error::RepFormat("non-finite matrix entry".into()));
    }
    Ok(CMatrix::from_rows(
        rows.iter()
            .map(|r| {
                r.iter()
                    .map(|&[re, im]| num_complex::Complex64::new(re, im))
                    .collect()
            })
            .collect(),
    ))
}

pub fn matrix_to_doc(m: &CMatrix) -> Vec<Vec<[f64; 2]>> {
    m.rows()
        .map(|r| r.iter().map(|z| [z.re, z.im]).collect())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::matrix::qubit::*;
    use super::*;

    #[test]
    fn broken_rep_reports_violations() {
        let k2 = Graph::complete(2).unwrap();
        let mut r = QuantumRep::new(k2.clone(), k2, 2);
        // both endpoints coloured 0: violates the edge relation
        r.set(0, 0, CMatrix::identity(2)).unwrap();
        r.set(1, 0, p0()).unwrap();
        r.set(1, 1, p0()).unwrap();
        let rep = verify_rep(&r, false);
        assert!(!rep.passed);
        assert!(rep
            .violations
            .iter()
            .any(|v| matches!(v, Violation::RowSum { u: 1, .. })));
        assert!(rep.violations.iter().any(|v| matches!(
            v,
            Violation::Orthogonality {
                left: (0, 0),
                right: (1, 0),
                ..
            }
        )));
        assert!(rep.max_residual >= 1.0);
    }

    #[test]
    fn json_roundtrip() {
        let r = pair_swap_rep(4).unwrap();
        let text = serde_json::to_string(&r).unwrap();
        let back: QuantumRep = serde_json::from_str(&text).unwrap();
        assert_eq!(back.max_difference(&r).unwrap(), 0.0);
        assert_eq!(serde_json::to_string(&back).unwrap(), text);
    }

    #[test]
    fn json_rejects_bad_documents() {
        let k = r#"{"n":2,"edges":[[0,1]]}"#;
        let doc = |mats: &str, dim: usize| {
            format!(r#"{{"domain":{k},"codomain":{k},"dim":{dim},"tol":1e-9,"mats":{mats}}}"#)
        };
        assert!(serde_json::from_str::<QuantumRep>(&doc(r#"{"0,5":[[[1,0]]]}"#, 1)).is_err());
        assert!(serde_json::from_str::<QuantumRep>(&doc(r#"{"0-1":[[[1,0]]]}"#, 1)).is_err());
        assert!(serde_json::from_str::<QuantumRep>(&doc(r#"{"0,1":[[[1,0],[0,0]]]}"#, 1)).is_err());
        assert!(serde_json::from_str::<QuantumRep>(&doc("{}", 0)).is_err());
        assert!(serde_json::from_str::<QuantumRep>(&doc(r#"{"0,1":[[[1,0]]]}"#, 1)).is_ok());
    }

    #[test]
    fn commutator_norm_of_absent_entry_is_zero() {
        let r = pair_swap_rep(4).unwrap();
        assert_eq!(commutator_norm(&r, (0, 2), (2, 2)), 0.0);
        assert!((commutator_norm(&r, (0, 0), (2, 2)) - 0.5).abs() < 1e-12);
        let _ = (q0(), q1(), p1());
    }
}
