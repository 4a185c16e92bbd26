//! Walk-based quantum-core certificates.
//!
//! For every pair of distinct vertices `a, a'` a *column length* `ℓ` has a
//! walk of length `ℓ` from `a` to `a'` while no closed walk of length `ℓ`
//! exists anywhere; this makes `p_{ba} p_{ba'} = 0` in every quantum
//! endomorphism, so columns sum to the identity. For every pair of distinct
//! non-adjacent vertices a *cross length* `ℓ` has such a walk while no
//! adjacent pair is joined by a walk of length `ℓ`, which yields the
//! transposed relations. Together they force every quantum endomorphism to
//! be a quantum automorphism.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::endo::{find_schmidt_pair, is_core, SchmidtCertificate};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::walks::WalkTable;

pub type PairLengths = BTreeMap<(usize, usize), usize>;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuantumCoreCertificate {
    pub n: usize,
    /// Every pair `a < a'`.
    #[serde(with = "pair_keys")]
    pub column_lengths: PairLengths,
    /// Every non-adjacent pair `a < a'`.
    #[serde(with = "pair_keys")]
    pub cross_lengths: PairLengths,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Condition {
    Column,
    Cross,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateFailure {
    pub condition: Condition,
    pub a: usize,
    pub b: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateSearch {
    pub lmax: usize,
    pub certificate: Option<QuantumCoreCertificate>,
    /// First pair, in lexicographic order, with no admissible length.
    pub failure: Option<CertificateFailure>,
}

struct Admissible {
    column: Vec<bool>,
    cross: Vec<bool>,
}

impl Admissible {
    fn new(t: &WalkTable) -> Self {
        let ls = 0..=t.lmax();
        Admissible {
            column: ls.clone().map(|l| !t.any_closed(l)).collect(),
            cross: ls.map(|l| !t.any_edge_walk(l)).collect(),
        }
    }

    fn first(&self, t: &WalkTable, cond: Condition, a: usize, b: usize) -> Option<usize> {
        let ok = match cond {
            Condition::Column => &self.column,
            Condition::Cross => &self.cross,
        };
        (1..=t.lmax()).find(|&l| ok[l] && t.exists(l, a, b))
    }
}

impl QuantumCoreCertificate {
    /// Re-checks every recorded length against a fresh walk table and checks
    /// that every required pair is covered.
    pub fn verify(&self, g: &Graph) -> Result<()> {
        let fail = |m: String| {
            Err(Error::Verification(format!(
                "quantum core certificate: {m}"
            )))
        };
        if self.n != g.n() {
            return fail("vertex count differs".into());
        }
        let lmax = self
            .column_lengths
            .values()
            .chain(self.cross_lengths.values())
            .copied()
            .max()
            .unwrap_or(0);
        let t = WalkTable::new(g, lmax);
        for a in 0..g.n() {
            for b in a + 1..g.n() {
                let Some(&l) = self.column_lengths.get(&(a, b)) else {
                    return fail(format!("no column length for ({a}, {b})"));
                };
                if l == 0 || !t.exists(l, a, b) || t.any_closed(l) {
                    return fail(format!("column length {l} invalid for ({a}, {b})"));
                }
                match (g.adjacent(a, b), self.cross_lengths.get(&(a, b))) {
                    (true, Some(_)) => {
                        return fail(format!("cross length recorded for edge ({a}, {b})"))
                    }
                    (false, None) => return fail(format!("no cross length for ({a}, {b})")),
                    (false, Some(&l)) if l == 0 || !t.exists(l, a, b) || t.any_edge_walk(l) => {
                        return fail(format!("cross length {l} invalid for ({a}, {b})"))
                    }
                    _ => {}
                }
            }
        }
        if self.column_lengths.len() != g.n() * g.n().saturating_sub(1) / 2 {
            return fail("extra column entries".into());
        }
        Ok(())
    }
}

/// Searches minimal lengths `ℓ ≤ lmax` for every pair.
pub fn search_certificate(g: &Graph, lmax: usize) -> Result<CertificateSearch> {
    if lmax < 1 {
        return Err(Error::OutOfRange("lmax must be >= 1".into()));
    }
    let t = WalkTable::new(g, lmax);
    let adm = Admissible::new(&t);
    type Row = Vec<(usize, Option<usize>, Option<Option<usize>>)>;
    let rows: Vec<Row> = (0..g.n())
        .into_par_iter()
        .map(|a| {
            (a + 1..g.n())
                .map(|b| {
                    let col = adm.first(&t, Condition::Column, a, b);
                    let cross = (!g.adjacent(a, b)).then(|| adm.first(&t, Condition::Cross, a, b));
                    (b, col, cross)
                })
                .collect()
        })
        .collect();
    let mut column_lengths = PairLengths::new();
    let mut cross_lengths = PairLengths::new();
    let mut failure = None;
    for (a, row) in rows.into_iter().enumerate() {
        for (b, col, cross) in row {
            match col {
                Some(l) => {
                    column_lengths.insert((a, b), l);
                }
                None => {
                    failure.get_or_insert(CertificateFailure {
                        condition: Condition::Column,
                        a,
                        b,
                    });
                }
            }
            match cross {
                Some(Some(l)) => {
                    cross_lengths.insert((a, b), l);
                }
                Some(None) => {
                    failure.get_or_insert(CertificateFailure {
                        condition: Condition::Cross,
                        a,
                        b,
                    });
                }
                None => {}
            }
        }
    }
    let certificate = failure.is_none().then_some(QuantumCoreCertificate {
        n: g.n(),
        column_lengths,
        cross_lengths,
    });
    Ok(CertificateSearch {
        lmax,
        certificate,
        failure,
    })
}

/// Certificate with minimal per-pair lengths, or `None` when some pair has
/// no admissible length up to `lmax` (inconclusive).
pub fn quantum_core_certificate(g: &Graph, lmax: usize) -> Result<Option<QuantumCoreCertificate>> {
    Ok(search_certificate(g, lmax)?.certificate)
}

/// Default search horizon `2n + 2`.
pub fn default_lmax(g: &Graph) -> usize {
    2 * g.n() + 2
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ClassicalConclusion {
    /// All links hold.
    OnlyClassicalEndomorphisms,
    /// Quantum core and core established; the symmetry link was not asserted.
    ContingentOnSymmetry,
    /// A Schmidt pair exhibits non-classical quantum endomorphisms.
    NonClassicalEndomorphisms,
    Inconclusive,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ClassicalOnlyReport {
    pub quantum_core: CertificateSearch,
    /// `None` when the graph exceeds the enumeration bound.
    pub is_core: Option<bool>,
    pub schmidt: Option<SchmidtCertificate>,
    /// Externally sourced: the graph has no quantum symmetry.
    pub assume_no_quantum_symmetry: bool,
    pub conclusion: ClassicalConclusion,
    pub broken_links: Vec<String>,
    pub message: String,
}

/// Chains the quantum-core certificate, classical coreness and the external
/// no-quantum-symmetry assumption. A quantum core whose quantum automorphism
/// group is classical has only classical quantum endomorphisms exactly when
/// it is also a core.
pub fn classical_only_report(
    g: &Graph,
    assume_no_quantum_symmetry: bool,
    bound: usize,
) -> Result<ClassicalOnlyReport> {
    let quantum_core = search_certificate(g, default_lmax(g))?;
    let within = g.n() <= bound;
    let is_core = if within {
        Some(is_core(g, bound)?)
    } else {
        None
    };
    let schmidt = if within {
        find_schmidt_pair(g, false, bound)?
    } else {
        None
    };

    let mut broken = Vec::new();
    if quantum_core.certificate.is_none() {
        broken.push("no walk certificate for quantum coreness (inconclusive)".to_string());
    }
    match is_core {
        Some(false) => broken.push("not a core: a non-bijective endomorphism exists".into()),
        None => broken.push(format!(
            "coreness not decided: {} vertices exceed the bound {bound}",
            g.n()
        )),
        Some(true) => {}
    }
    if schmidt.is_some() {
        broken.push("Schmidt pair found: non-classical quantum endomorphisms exist".into());
    }
    if !assume_no_quantum_symmetry {
        broken.push("no-quantum-symmetry not asserted".into());
    }

    let (conclusion, message) = if schmidt.is_some() {
        (
            ClassicalConclusion::NonClassicalEndomorphisms,
            "non-classical quantum endomorphisms exist".to_string(),
        )
    } else if quantum_core.certificate.is_some() && is_core == Some(true) {
        if assume_no_quantum_symmetry {
            (
                ClassicalConclusion::OnlyClassicalEndomorphisms,
                "only classical endomorphisms (no-quantum-symmetry taken from an external result)"
                    .to_string(),
            )
        } else {
            (
                ClassicalConclusion::ContingentOnSymmetry,
                "quantum core certified; classicality contingent on external symmetry result"
                    .to_string(),
            )
        }
    } else {
        (
            ClassicalConclusion::Inconclusive,
            "inconclusive".to_string(),
        )
    };
    Ok(ClassicalOnlyReport {
        quantum_core,
        is_core,
        schmidt,
        assume_no_quantum_symmetry,
        conclusion,
        broken_links: broken,
        message,
    })
}

mod pair_keys {
    use super::*;

    pub fn serialize<S: Serializer>(m: &PairLengths, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeMap;
        // numeric pair order rather than string order
        let mut map = s.serialize_map(Some(m.len()))?;
        for ((a, b), l) in m {
            map.serialize_entry(&format!("{a},{b}"), l)?;
        }
        map.end()
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(
        d: D,
    ) -> std::result::Result<PairLengths, D::Error> {
        use serde::de::Error as _;
        let doc = BTreeMap::<String, usize>::deserialize(d)?;
        doc.into_iter()
            .map(|(k, l)| {
                crate::qrep::parse_key(&k)
                    .map(|p| (p, l))
                    .ok_or_else(|| D::Error::custom(format!("bad pair key `{k}`")))
            })
            .collect()
    }
}
