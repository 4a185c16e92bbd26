//! Walk existence, distances, girths, bipartiteness and 4-cycle detection.

use std::collections::VecDeque;
use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::bits;
use crate::error::{Error, Result};
use crate::graph::Graph;

/// A length that may be infinite. Serialises as a number or the string `"inf"`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Length {
    Finite(usize),
    Infinite,
}

impl Length {
    pub fn finite(self) -> Option<usize> {
        match self {
            Length::Finite(l) => Some(l),
            Length::Infinite => None,
        }
    }

    pub fn is_finite(self) -> bool {
        matches!(self, Length::Finite(_))
    }
}

impl From<Option<usize>> for Length {
    fn from(v: Option<usize>) -> Self {
        v.map_or(Length::Infinite, Length::Finite)
    }
}

impl fmt::Display for Length {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Length::Finite(l) => write!(f, "{l}"),
            Length::Infinite => f.write_str("inf"),
        }
    }
}

impl Serialize for Length {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Length::Finite(l) => s.serialize_u64(*l as u64),
            Length::Infinite => s.serialize_str("inf"),
        }
    }
}

impl<'de> Deserialize<'de> for Length {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            N(u64),
            S(String),
        }
        match Raw::deserialize(d)? {
            Raw::N(n) => Ok(Length::Finite(n as usize)),
            Raw::S(s) if s == "inf" => Ok(Length::Infinite),
            Raw::S(s) => Err(serde::de::Error::custom(format!("bad length `{s}`"))),
        }
    }
}

/// Boolean walk-existence table: `exists(l, u, v)` iff there is a walk of
/// length exactly `l` from `u` to `v`, for `0 <= l <= lmax`.
#[derive(Clone, Debug)]
pub struct WalkTable {
    g: Graph,
    lmax: usize,
    words: usize,
    // Row (u, l) lives at ((u * (lmax + 1)) + l) * words.
    data: Vec<u64>,
}

impl WalkTable {
    pub fn new(g: &Graph, lmax: usize) -> Self {
        let n = g.n();
        let words = g.words();
        let block = (lmax + 1) * words;
        let mut data = vec![0u64; n * block];
        if block > 0 {
            data.par_chunks_mut(block)
                .enumerate()
                .for_each(|(u, rows)| {
                    bits::insert(&mut rows[..words], u);
                    for l in 1..=lmax {
                        let (prev, next) = rows.split_at_mut(l * words);
                        let prev = &prev[(l - 1) * words..];
                        let next = &mut next[..words];
                        for w in bits::ones(prev) {
                            bits::or_into(next, g.row(w));
                        }
                    }
                });
        }
        WalkTable {
            g: g.clone(),
            lmax,
            words,
            data,
        }
    }

    /// Table with the default bound `lmax = 2n + 2`.
    pub fn auto(g: &Graph) -> Self {
        WalkTable::new(g, 2 * g.n() + 2)
    }

    pub fn graph(&self) -> &Graph {
        &self.g
    }

    pub fn lmax(&self) -> usize {
        self.lmax
    }

    /// Endpoints reachable from `u` by walks of length exactly `l`.
    #[inline]
    pub fn row(&self, l: usize, u: usize) -> &[u64] {
        let at = (u * (self.lmax + 1) + l) * self.words;
        &self.data[at..at + self.words]
    }

    #[inline]
    pub fn exists(&self, l: usize, u: usize, v: usize) -> bool {
        l <= self.lmax && bits::contains(self.row(l, u), v)
    }

    /// Whether any vertex has a closed walk of length `l`.
    pub fn any_closed(&self, l: usize) -> bool {
        (0..self.g.n()).any(|u| self.exists(l, u, u))
    }

    /// Whether any edge `{b, b'}` is joined by a walk of length `l`.
    pub fn any_edge_walk(&self, l: usize) -> bool {
        (0..self.g.n()).any(|b| bits::intersects(self.row(l, b), self.g.row(b)))
    }

    /// Shortest walk length from `u` to `v`. Pairs not joined within `lmax`
    /// fall back to breadth-first search, which also confirms infinity.
    pub fn distance(&self, u: usize, v: usize) -> Length {
        match (0..=self.lmax).find(|&l| self.exists(l, u, v)) {
            Some(l) => Length::Finite(l),
            None => bfs(&self.g, u)[v].into(),
        }
    }
}

/// Breadth-first distances from `src`.
pub fn bfs(g: &Graph, src: usize) -> Vec<Option<usize>> {
    let mut dist = vec![None; g.n()];
    let mut queue = VecDeque::from([src]);
    dist[src] = Some(0);
    while let Some(u) = queue.pop_front() {
        let du = dist[u].unwrap();
        for w in g.neighbors(u) {
            if dist[w].is_none() {
                dist[w] = Some(du + 1);
                queue.push_back(w);
            }
        }
    }
    dist
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Girths {
    pub girth: Length,
    pub odd_girth: Length,
    pub odd_walk_girth: Length,
    pub diameter: Length,
}

/// Girth and odd girth come from breadth-first search over paths; the odd
/// walk girth is read independently off the walk-table diagonal.
pub fn girths(g: &Graph) -> Girths {
    let n = g.n();
    let mut girth = None::<usize>;
    let mut odd = None::<usize>;
    let mut diameter = Some(0usize);
    for r in 0..n {
        let (dist, parent) = bfs_tree(g, r);
        for d in &dist {
            diameter = match (diameter, d) {
                (Some(a), Some(b)) => Some(a.max(*b)),
                _ => None,
            };
        }
        for (u, v) in g.edges() {
            let (Some(du), Some(dv)) = (dist[u], dist[v]) else {
                continue;
            };
            if parent[u] != Some(v) && parent[v] != Some(u) {
                let len = du + dv + 1;
                girth = Some(girth.map_or(len, |x| x.min(len)));
            }
            if du == dv {
                let len = 2 * du + 1;
                odd = Some(odd.map_or(len, |x| x.min(len)));
            }
        }
    }
    if n == 0 {
        diameter = Some(0);
    }
    let table = WalkTable::new(g, n.max(1));
    let odd_walk = (1..=table.lmax()).step_by(2).find(|&l| table.any_closed(l));
    Girths {
        girth: girth.into(),
        odd_girth: odd.into(),
        odd_walk_girth: odd_walk.into(),
        diameter: diameter.into(),
    }
}

fn bfs_tree(g: &Graph, src: usize) -> (Vec<Option<usize>>, Vec<Option<usize>>) {
    let mut dist = vec![None; g.n()];
    let mut parent = vec![None; g.n()];
    let mut queue = VecDeque::from([src]);
    dist[src] = Some(0);
    while let Some(u) = queue.pop_front() {
        let du = dist[u].unwrap();
        for w in g.neighbors(u) {
            if dist[w].is_none() {
                dist[w] = Some(du + 1);
                parent[w] = Some(u);
                queue.push_back(w);
            }
        }
    }
    (dist, parent)
}

/// A proper 2-colouring (`false`/`true` sides) if one exists.
pub fn bipartition(g: &Graph) -> Option<Vec<bool>> {
    let mut side = vec![None; g.n()];
    for s in 0..g.n() {
        if side[s].is_some() {
            continue;
        }
        side[s] = Some(false);
        let mut queue = VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            let su = side[u].unwrap();
            for w in g.neighbors(u) {
                match side[w] {
                    None => {
                        side[w] = Some(!su);
                        queue.push_back(w);
                    }
                    Some(sw) if sw == su => return None,
                    Some(_) => {}
                }
            }
        }
    }
    Some(side.into_iter().map(Option::unwrap).collect())
}

pub fn is_bipartite(g: &Graph) -> bool {
    bipartition(g).is_some()
}

/// Lexicographically first 4-cycle `(a, b, c, d)` with all entries distinct.
pub fn find_four_cycle(g: &Graph) -> Option<[usize; 4]> {
    for a in 0..g.n() {
        for b in g.neighbors(a) {
            for c in g.neighbors(b).filter(|&c| c != a) {
                let d = g
                    .neighbors(c)
                    .find(|&d| d != b && d != a && g.adjacent(d, a));
                if let Some(d) = d {
                    return Some([a, b, c, d]);
                }
            }
        }
    }
    None
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Oracularisability {
    pub oracularisable: bool,
    pub four_cycle: Option<[usize; 4]>,
}

/// A graph is oracularisable iff it has no cyclic path of length 4.
pub fn is_oracularisable(g: &Graph) -> Oracularisability {
    let four_cycle = find_four_cycle(g);
    Oracularisability {
        oracularisable: four_cycle.is_none(),
        four_cycle,
    }
}

/// Decides whether `Mor^+(h, g)` is nonzero for a bipartite target `g`.
///
/// For bipartite targets this coincides with classical homomorphism
/// existence: an edgeless target admits only edgeless instances, and a
/// target with an edge admits exactly the bipartite instances.
pub fn decide_bipartite_target(h: &Graph, g: &Graph) -> Result<bool> {
    if !is_bipartite(g) {
        return Err(Error::Precondition("target graph is not bipartite".into()));
    }
    if g.edge_count() == 0 {
        return Ok(h.edge_count() == 0);
    }
    Ok(is_bipartite(h))
}
