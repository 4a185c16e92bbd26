//! Explicit representations.
//!
//! Qubit states are indexed with the first tensor factor major, so `|xy>` is
//! basis vector `2x + y`.

use num_complex::Complex64;

use super::matrix::qubit::{p0, p1, q0, q1};
use super::matrix::CMatrix;
use super::{Gen, QuantumRep};
use crate::endo::{is_wac, supports_disconnected, supports_disjoint, Endomorphism};
use crate::error::{Error, Result};
use crate::graph::Graph;

/// The one-dimensional representation `p_{uv} = [v == map(u)]`.
pub fn classical_rep(h: &Graph, g: &Graph, map: &[usize]) -> Result<QuantumRep> {
    if map.len() != h.n() {
        return Err(Error::GraphMismatch(format!(
            "map has {} entries for a graph on {} vertices",
            map.len(),
            h.n()
        )));
    }
    if !h.is_homomorphism(g, map) {
        return Err(Error::NotHomomorphism(format!(
            "{map:?} does not preserve edges"
        )));
    }
    let mut r = QuantumRep::new(h.clone(), g.clone(), 1);
    for (u, &v) in map.iter().enumerate() {
        r.set(u, v, CMatrix::identity(1))?;
    }
    Ok(r)
}

/// Two-dimensional representation of the endomorphism algebra built from a
/// pair of non-identity endomorphisms with disjoint supports that are WAC:
///
/// `p_{xy} = [x=y](p0 + q0 - 1) + [f(x)=y] p1 + [g(x)=y] q1`.
///
/// On a point moved by `f` this puts `p0` at `p_{xx}` and `p1` at
/// `p_{x f(x)}`; the labelling of the two qubit projectors is a convention,
/// and only the noncommutation of the witness pair (see [`schmidt_witness`])
/// matters.
pub fn schmidt_rep(g: &Graph, f: &Endomorphism, h: &Endomorphism) -> Result<QuantumRep> {
    let f = Endomorphism::new(g, f.map().to_vec())?;
    let h = Endomorphism::new(g, h.map().to_vec())?;
    if f.is_identity() || h.is_identity() {
        return Err(Error::Precondition(
            "both endomorphisms must be non-identity".into(),
        ));
    }
    if !supports_disjoint(g, &f, &h)? {
        return Err(Error::Precondition("supports must be disjoint".into()));
    }
    if !is_wac(g, &f, &h)? {
        return Err(Error::Precondition("pair is not WAC".into()));
    }
    let id = CMatrix::identity(2);
    let diag = &(&p0() + &q0()) - &id;
    let mut r = QuantumRep::new(g.clone(), g.clone(), 2);
    for x in 0..g.n() {
        let mut row = vec![CMatrix::zeros(2); g.n()];
        row[x] = &row[x] + &diag;
        row[f.apply(x)] = &row[f.apply(x)] + &p1();
        row[h.apply(x)] = &row[h.apply(x)] + &q1();
        for (y, m) in row.into_iter().enumerate() {
            r.set(x, y, clean(m))?;
        }
    }
    Ok(r)
}

/// `((x, f(x)), (y, h(y)))` for the smallest moved points `x` of `f` and `y`
/// of `h`; these two entries of [`schmidt_rep`] do not commute.
pub fn schmidt_witness(f: &Endomorphism, h: &Endomorphism) -> Option<(Gen, Gen)> {
    let x = *f.support().first()?;
    let y = *h.support().first()?;
    Some(((x, f.apply(x)), (y, h.apply(y))))
}

/// Non-oracular two-dimensional representation of the endomorphism algebra
/// of `K_k` that swaps `{0,1}` along one basis and `{2,3}` along a rotated
/// one. `p_{00}` and `p_{22}` do not commute.
pub fn pair_swap_rep(k: usize) -> Result<QuantumRep> {
    if k < 4 {
        return Err(Error::OutOfRange(format!(
            "pair swap needs k >= 4, got {k}"
        )));
    }
    let kk = Graph::complete(k)?;
    let mut r = QuantumRep::new(kk.clone(), kk, 2);
    for (u, v, m) in [
        (0, 0, p0()),
        (1, 1, p0()),
        (0, 1, p1()),
        (1, 0, p1()),
        (2, 2, q0()),
        (3, 3, q0()),
        (2, 3, q1()),
        (3, 2, q1()),
    ] {
        r.set(u, v, m)?;
    }
    for a in 4..k {
        r.set(a, a, CMatrix::identity(2))?;
    }
    Ok(r)
}

/// Four-dimensional non-oracular representation of `Mor(K_2, g)` supported
/// on a 4-cycle `a b c d`. `p_{0a}` and `p_{1b}` do not commute.
pub fn four_cycle_rep(g: &Graph, cycle: [usize; 4]) -> Result<QuantumRep> {
    for &v in &cycle {
        g.check_vertex(v)?;
    }
    let [a, b, c, d] = cycle;
    let distinct = (0..4).all(|i| (i + 1..4).all(|j| cycle[i] != cycle[j]));
    if !distinct || !(g.adjacent(a, b) && g.adjacent(b, c) && g.adjacent(c, d) && g.adjacent(d, a))
    {
        return Err(Error::Precondition(format!("{cycle:?} is not a 4-cycle")));
    }
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let ket = |x: usize, second: [f64; 2]| {
        let mut v = vec![Complex64::new(0.0, 0.0); 4];
        v[2 * x] = Complex64::new(second[0], 0.0);
        v[2 * x + 1] = Complex64::new(second[1], 0.0);
        CMatrix::projector(&v)
    };
    let (zero, one, plus, minus) = ([1.0, 0.0], [0.0, 1.0], [s, s], [s, -s]);
    let k2 = Graph::complete(2)?;
    let mut r = QuantumRep::new(k2, g.clone(), 4);
    r.set(0, a, ket(0, zero))?;
    r.set(0, b, ket(1, zero))?;
    r.set(0, c, ket(0, one))?;
    r.set(0, d, ket(1, one))?;
    r.set(1, a, ket(1, plus))?;
    r.set(1, b, ket(0, plus))?;
    r.set(1, c, ket(1, minus))?;
    r.set(1, d, ket(0, minus))?;
    Ok(r)
}

/// Cocomposition: `p_{ac} = Σ_b p_{ab} ⊗ p_{bc}`, left factor from `r1`.
pub fn compose_reps(r1: &QuantumRep, r2: &QuantumRep) -> Result<QuantumRep> {
    if r1.codomain != r2.domain {
        return Err(Error::GraphMismatch(
            "codomain of the first representation differs from the domain of the second".into(),
        ));
    }
    let dim = r1.dim * r2.dim;
    let mut out =
        QuantumRep::new(r1.domain.clone(), r2.codomain.clone(), dim).with_tol(r1.tol.max(r2.tol));
    for a in 0..r1.domain.n() {
        let mut row: Vec<Option<CMatrix>> = vec![None; r2.codomain.n()];
        for (b, m1) in r1.row(a) {
            for (c, m2) in r2.row(b) {
                let term = m1.kron(m2);
                row[c] = Some(match row[c].take() {
                    Some(acc) => &acc + &term,
                    None => term,
                });
            }
        }
        for (c, m) in row.into_iter().enumerate() {
            if let Some(m) = m {
                out.set(a, c, m)?;
            }
        }
    }
    Ok(out)
}

/// Representation of `Mor(P_k, C_{2n+1})` in which `p_{s0, s0 mod m}` and
/// `p_{t0, t0 mod m}` do not commute (`m = 2n+1`).
///
/// Built from the shifts `s -> s+2` on `s <= s0` and `s -> s-2` on `s >= t0`,
/// whose supports are disconnected, followed by the wrap `s -> s mod m`.
pub fn path_to_cycle_rep(k: usize, s0: usize, t0: usize, n: usize) -> Result<QuantumRep> {
    if n < 1 {
        return Err(Error::OutOfRange(format!(
            "cycle parameter n must be >= 1, got {n}"
        )));
    }
    if t0 < s0 + 2 || t0 > k {
        return Err(Error::Precondition(format!(
            "need s0 + 2 <= t0 <= k, got s0={s0}, t0={t0}, k={k}"
        )));
    }
    let path = Graph::path(k)?;
    let f: Vec<usize> = (0..=k).map(|s| if s <= s0 { s + 2 } else { s }).collect();
    let h: Vec<usize> = (0..=k).map(|s| if s >= t0 { s - 2 } else { s }).collect();
    let f = Endomorphism::new(&path, f)?;
    let h = Endomorphism::new(&path, h)?;
    debug_assert!(supports_disconnected(&path, &f, &h)?);
    let m = 2 * n + 1;
    let cycle = Graph::cycle(m)?;
    let wrap: Vec<usize> = (0..=k).map(|s| s % m).collect();
    compose_reps(
        &schmidt_rep(&path, &f, &h)?,
        &classical_rep(&path, &cycle, &wrap)?,
    )
}

/// Lifts a representation of `Mor(P_k, C_m)` to `Mor(C_m □ P_k, C_m)` by
/// `p'_{(a,s) b} = p_{s, a+b mod m}`. Vertex `(a, s)` has index `a(k+1) + s`.
pub fn lift_box_rep(r: &QuantumRep, m: usize) -> Result<QuantumRep> {
    let cycle = Graph::cycle(m)?;
    if r.codomain != cycle {
        return Err(Error::GraphMismatch(format!("codomain is not C_{m}")));
    }
    let len = r.domain.n();
    if len == 0 || r.domain != Graph::path(len - 1)? {
        return Err(Error::GraphMismatch("domain is not a path".into()));
    }
    let domain = cycle.box_product(&r.domain)?;
    let mut out = QuantumRep::new(domain, cycle, r.dim).with_tol(r.tol);
    for a in 0..m {
        for s in 0..len {
            for (c, mat) in r.row(s) {
                // c = a + b mod m
                let b = (c + m - a) % m;
                out.set(a * len + s, b, mat.clone())?;
            }
        }
    }
    Ok(out)
}

/// Noncommuting pair of the lifted representation: the images of the path
/// witnesses `(s0, s0 mod m)` and `(t0, t0 mod m)` at copies `a0` and `b0`.
pub fn lifted_witness(
    k: usize,
    m: usize,
    (a0, s0): (usize, usize),
    (b0, t0): (usize, usize),
) -> (Gen, Gen) {
    let len = k + 1;
    (
        (a0 * len + s0, (s0 % m + m - a0 % m) % m),
        (b0 * len + t0, (t0 % m + m - b0 % m) % m),
    )
}

/// Snaps entries within rounding of zero to zero so that exact zeros are
/// dropped from the sparse map.
fn clean(m: CMatrix) -> CMatrix {
    if m.max_abs() < 1e-15 {
        CMatrix::zeros(m.dim())
    } else {
        m
    }
}
