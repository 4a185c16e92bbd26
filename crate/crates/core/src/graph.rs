//! Finite simple undirected loop-free graphs.
//!
//! Vertices are always `0..n`. Adjacency is stored as one bitset row per
//! vertex; for `n <= 64` every row is a single machine word. Graphs are
//! immutable once built.
//!
//! Named families follow the usual conventions, shifted to 0-based indices:
//! the path `P:n` has vertices `0..=n`, and the diamond (usually drawn on
//! `1..=4`) has vertices `0..=3` with vertex `i` stored as `i - 1`.

use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::bits;
use crate::error::{Error, Result};

/// Largest vertex count accepted anywhere in the crate.
pub const MAX_VERTICES: usize = 4096;

#[derive(Clone)]
pub struct Graph {
    n: usize,
    words: usize,
    rows: Vec<u64>,
    label: Option<String>,
}

impl PartialEq for Graph {
    /// Structural equality; labels are metadata and are ignored.
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.rows == other.rows
    }
}

impl Eq for Graph {}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field("n", &self.n)
            .field("label", &self.label)
            .field("edges", &self.edges())
            .finish()
    }
}

impl Graph {
    /// Edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Result<Self> {
        if n > MAX_VERTICES {
            return Err(Error::OutOfRange(format!(
                "{n} vertices exceeds the supported maximum of {MAX_VERTICES}"
            )));
        }
        let words = bits::words_for(n).max(1);
        Ok(Graph {
            n,
            words,
            rows: vec![0; n * words],
            label: None,
        })
    }

    /// Builds a graph from an edge list, rejecting loops, duplicates and
    /// out-of-range endpoints.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Graph::empty(n)?;
        for &(u, v) in edges {
            g.check_vertex(u)?;
            g.check_vertex(v)?;
            if u == v {
                return Err(Error::Precondition(format!("loop edge at vertex {u}")));
            }
            if g.adjacent(u, v) {
                return Err(Error::Precondition(format!("duplicate edge {{{u},{v}}}")));
            }
            g.link(u, v);
        }
        Ok(g)
    }

    fn link(&mut self, u: usize, v: usize) {
        debug_assert!(u != v);
        let w = self.words;
        bits::insert(&mut self.rows[u * w..(u + 1) * w], v);
        bits::insert(&mut self.rows[v * w..(v + 1) * w], u);
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = Some(label.into());
        self
    }

    pub fn label(&self) -> Option<&str> {
        self.label.as_deref()
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of `u64` words in each adjacency row.
    #[inline]
    pub fn words(&self) -> usize {
        self.words
    }

    #[inline]
    pub fn row(&self, u: usize) -> &[u64] {
        &self.rows[u * self.words..(u + 1) * self.words]
    }

    #[inline]
    pub fn adjacent(&self, u: usize, v: usize) -> bool {
        bits::contains(self.row(u), v)
    }

    pub fn neighbors(&self, u: usize) -> bits::Ones<'_> {
        bits::ones(self.row(u))
    }

    pub fn degree(&self, u: usize) -> usize {
        bits::count(self.row(u))
    }

    pub fn edge_count(&self) -> usize {
        (0..self.n).map(|u| self.degree(u)).sum::<usize>() / 2
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for u in 0..self.n {
            out.extend(self.neighbors(u).filter(|&v| v > u).map(|v| (u, v)));
        }
        out
    }

    pub fn check_vertex(&self, v: usize) -> Result<()> {
        if v < self.n {
            Ok(())
        } else {
            Err(Error::VertexOutOfRange {
                vertex: v,
                n: self.n,
            })
        }
    }

    /// Whether `map` sends every edge of `self` to an edge of `target`.
    pub fn is_homomorphism(&self, target: &Graph, map: &[usize]) -> bool {
        map.len() == self.n
            && map.iter().all(|&v| v < target.n)
            && self
                .edges()
                .iter()
                .all(|&(u, v)| target.adjacent(map[u], map[v]))
    }

    // ---------------------------------------------------------------------
    // Families
    // ---------------------------------------------------------------------

    pub fn complete(n: usize) -> Result<Self> {
        if n < 1 {
            return Err(Error::OutOfRange("K:n requires n >= 1".into()));
        }
        let mut g = Graph::empty(n)?;
        for u in 0..n {
            for v in u + 1..n {
                g.link(u, v);
            }
        }
        Ok(g.with_label(format!("K:{n}")))
    }

    pub fn edgeless(n: usize) -> Result<Self> {
        Ok(Graph::empty(n)?.with_label(format!("E:{n}")))
    }

    pub fn cycle(n: usize) -> Result<Self> {
        if n < 3 {
            return Err(Error::OutOfRange(format!("C:{n} requires n >= 3")));
        }
        let mut g = Graph::empty(n)?;
        for u in 0..n {
            g.link(u, (u + 1) % n);
        }
        Ok(g.with_label(format!("C:{n}")))
    }

    /// Path of length `n` on vertices `0..=n`.
    pub fn path(n: usize) -> Result<Self> {
        let mut g = Graph::empty(n + 1)?;
        for u in 0..n {
            g.link(u, u + 1);
        }
        Ok(g.with_label(format!("P:{n}")))
    }

    /// Kneser graph on the `k`-subsets of `{0..n}` in lexicographic order,
    /// adjacent iff disjoint.
    pub fn kneser(n: usize, k: usize) -> Result<Self> {
        if k < 1 || n < k {
            return Err(Error::OutOfRange(format!(
                "KG:{n},{k} requires n >= k >= 1"
            )));
        }
        if n > 63 {
            return Err(Error::OutOfRange(format!(
                "KG:{n},{k}: ground set too large"
            )));
        }
        let subsets = k_subsets(n, k);
        if subsets.len() > MAX_VERTICES {
            return Err(Error::OutOfRange(format!(
                "KG:{n},{k} has {} vertices, above {MAX_VERTICES}",
                subsets.len()
            )));
        }
        let mut g = Graph::empty(subsets.len())?;
        for (i, a) in subsets.iter().enumerate() {
            for (j, b) in subsets.iter().enumerate().skip(i + 1) {
                if a & b == 0 {
                    g.link(i, j);
                }
            }
        }
        Ok(g.with_label(format!("KG:{n},{k}")))
    }

    /// Odd graph `O_n = K(2n-1, n-1)`.
    pub fn odd(n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::OutOfRange(format!("O:{n} requires n >= 2")));
        }
        Ok(Graph::kneser(2 * n - 1, n - 1)?.with_label(format!("O:{n}")))
    }

    pub fn petersen() -> Self {
        Graph::kneser(5, 2)
            .expect("K(5,2) is valid")
            .with_label("petersen")
    }

    /// The 4-cycle `0-1-2-3-0` with chord `{1,3}`.
    pub fn diamond() -> Self {
        Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3), (3, 0), (1, 3)])
            .expect("diamond edges are valid")
            .with_label("diamond")
    }

    /// `C_6` with the extra chord `{0,3}`.
    pub fn dprime() -> Self {
        let mut g = Graph::cycle(6).expect("C_6 is valid");
        g.link(0, 3);
        g.with_label("dprime")
    }

    // ---------------------------------------------------------------------
    // Operations
    // ---------------------------------------------------------------------

    pub fn complement(&self) -> Graph {
        let mut g = Graph::empty(self.n).expect("same size as input");
        for u in 0..self.n {
            for v in u + 1..self.n {
                if !self.adjacent(u, v) {
                    g.link(u, v);
                }
            }
        }
        g.label = self.label.as_ref().map(|l| format!("cmpl({l})"));
        g
    }

    /// Cartesian product; vertex `(x, y)` has index `x * |V(h)| + y`.
    pub fn box_product(&self, h: &Graph) -> Result<Graph> {
        let m = h.n;
        let mut g = Graph::empty(self.n * m)?;
        for x in 0..self.n {
            for (y, y2) in h.edges() {
                g.link(x * m + y, x * m + y2);
            }
        }
        for (x, x2) in self.edges() {
            for y in 0..m {
                g.link(x * m + y, x2 * m + y);
            }
        }
        g.label = product_label("box", self, h);
        Ok(g)
    }

    /// Categorical (tensor) product with the same indexing as
    /// [`Graph::box_product`].
    pub fn categorical_product(&self, h: &Graph) -> Result<Graph> {
        let m = h.n;
        let mut g = Graph::empty(self.n * m)?;
        for (x, x2) in self.edges() {
            for (y, y2) in h.edges() {
                g.link(x * m + y, x2 * m + y2);
                g.link(x * m + y2, x2 * m + y);
            }
        }
        g.label = product_label("tensor", self, h);
        Ok(g)
    }

    /// Relabels vertices: vertex `v` of `self` becomes `perm[v]`.
    pub fn permuted(&self, perm: &[usize]) -> Result<Graph> {
        if perm.len() != self.n {
            return Err(Error::Precondition("permutation length mismatch".into()));
        }
        let edges: Vec<_> = self
            .edges()
            .iter()
            .map(|&(u, v)| (perm[u], perm[v]))
            .collect();
        let mut g = Graph::from_edges(self.n, &edges)?;
        g.label = self.label.clone();
        Ok(g)
    }

    /// Subgraph induced on the given vertices, renumbered in the given order.
    pub fn induced(&self, vertices: &[usize]) -> Result<Graph> {
        let mut g = Graph::empty(vertices.len())?;
        for (i, &u) in vertices.iter().enumerate() {
            self.check_vertex(u)?;
            for (j, &v) in vertices.iter().enumerate().skip(i + 1) {
                if self.adjacent(u, v) {
                    g.link(i, j);
                }
            }
        }
        Ok(g)
    }

    // ---------------------------------------------------------------------
    // Text formats
    // ---------------------------------------------------------------------

    /// Parses a family descriptor such as `K:4`, `KG:5,2`,
    /// `box(C:5,P:3)` or `cmpl(tensor(K:2,K:2))`.
    pub fn from_family(spec: &str) -> Result<Graph> {
        let mut p = DslParser { src: spec, pos: 0 };
        let g = p.graph()?;
        p.skip_ws();
        if p.pos != spec.len() {
            return Err(p.err("trailing input"));
        }
        Ok(g)
    }

    /// Parses the edge-list format: `#` comments, a header `n m`, then `m`
    /// lines `u v`.
    pub fn parse_edge_list(text: &str) -> Result<Graph> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

        let (hline, header) = lines.next().ok_or(Error::EdgeList {
            line: 0,
            reason: "missing header line `n m`".into(),
        })?;
        let (n, m) = parse_pair(header).ok_or_else(|| Error::EdgeList {
            line: hline,
            reason: format!("malformed header `{header}`"),
        })?;
        let mut g = Graph::empty(n).map_err(|e| Error::EdgeList {
            line: hline,
            reason: e.to_string(),
        })?;

        let mut seen = 0;
        for (line, text) in lines {
            let (u, v) = parse_pair(text).ok_or_else(|| Error::EdgeList {
                line,
                reason: format!("malformed edge `{text}`"),
            })?;
            let fail = |reason: String| Error::EdgeList { line, reason };
            if u >= n || v >= n {
                return Err(fail(format!("vertex index out of range for n = {n}")));
            }
            if u == v {
                return Err(fail(format!("loop edge at vertex {u}")));
            }
            if g.adjacent(u, v) {
                return Err(fail(format!("duplicate edge {{{u},{v}}}")));
            }
            g.link(u, v);
            seen += 1;
        }
        if seen != m {
            return Err(Error::EdgeList {
                line: hline,
                reason: format!("header declares {m} edges but {seen} were given"),
            });
        }
        Ok(g)
    }

    /// Canonical edge-list text: optional label comment, header, then edges
    /// `u v` with `u < v` in lexicographic order.
    pub fn to_edge_list(&self) -> String {
        let edges = self.edges();
        let mut out = String::new();
        if let Some(l) = &self.label {
            out.push_str(&format!("# {l}\n"));
        }
        out.push_str(&format!("{} {}\n", self.n, edges.len()));
        for (u, v) in edges {
            out.push_str(&format!("{u} {v}\n"));
        }
        out
    }
}

fn product_label(op: &str, g: &Graph, h: &Graph) -> Option<String> {
    match (&g.label, &h.label) {
        (Some(a), Some(b)) => Some(format!("{op}({a},{b})")),
        _ => None,
    }
}

fn parse_pair(s: &str) -> Option<(usize, usize)> {
    let mut it = s.split_whitespace();
    let a = it.next()?.parse().ok()?;
    let b = it.next()?.parse().ok()?;
    it.next().is_none().then_some((a, b))
}

/// All `k`-subsets of `{0..n}` as bitmasks, in lexicographic order of their
/// sorted element lists.
pub fn k_subsets(n: usize, k: usize) -> Vec<u64> {
    fn rec(start: usize, n: usize, k: usize, acc: u64, out: &mut Vec<u64>) {
        if k == 0 {
            out.push(acc);
            return;
        }
        for i in start..n {
            if n - i < k {
                break;
            }
            rec(i + 1, n, k - 1, acc | 1 << i, out);
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, 0, &mut out);
    out
}

struct DslParser<'a> {
    src: &'a str,
    pos: usize,
}

impl DslParser<'_> {
    fn err(&self, reason: &str) -> Error {
        Error::Descriptor {
            spec: self.src.to_string(),
            reason: format!("{reason} at offset {}", self.pos),
        }
    }

    fn skip_ws(&mut self) {
        while self.src[self.pos..].starts_with(char::is_whitespace) {
            self.pos += 1;
        }
    }

    fn eat(&mut self, s: &str) -> bool {
        self.skip_ws();
        if self.src[self.pos..].starts_with(s) {
            self.pos += s.len();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, s: &str) -> Result<()> {
        if self.eat(s) {
            Ok(())
        } else {
            Err(self.err(&format!("expected `{s}`")))
        }
    }

    fn number(&mut self) -> Result<usize> {
        self.skip_ws();
        let rest = &self.src[self.pos..];
        let len = rest.bytes().take_while(u8::is_ascii_digit).count();
        if len == 0 {
            return Err(self.err("expected a number"));
        }
        let v = rest[..len]
            .parse()
            .map_err(|_| self.err("number too large"))?;
        self.pos += len;
        Ok(v)
    }

    fn graph(&mut self) -> Result<Graph> {
        let range = |e: Error, p: &Self| match e {
            Error::OutOfRange(reason) => Error::Descriptor {
                spec: p.src.to_string(),
                reason,
            },
            other => other,
        };
        if self.eat("cmpl(") {
            let g = self.graph()?;
            self.expect(")")?;
            return Ok(g.complement());
        }
        for op in ["box(", "tensor("] {
            if self.eat(op) {
                let a = self.graph()?;
                self.expect(",")?;
                let b = self.graph()?;
                self.expect(")")?;
                let g = if op == "box(" {
                    a.box_product(&b)
                } else {
                    a.categorical_product(&b)
                };
                return g.map_err(|e| range(e, self));
            }
        }
        if self.eat("petersen") {
            return Ok(Graph::petersen());
        }
        if self.eat("diamond") {
            return Ok(Graph::diamond());
        }
        if self.eat("dprime") {
            return Ok(Graph::dprime());
        }
        if self.eat("KG:") {
            let n = self.number()?;
            self.expect(",")?;
            let k = self.number()?;
            return Graph::kneser(n, k).map_err(|e| range(e, self));
        }
        let family: Option<fn(usize) -> Result<Graph>> = if self.eat("K:") {
            Some(Graph::complete)
        } else if self.eat("C:") {
            Some(Graph::cycle)
        } else if self.eat("P:") {
            Some(Graph::path)
        } else if self.eat("O:") {
            Some(Graph::odd)
        } else if self.eat("E:") {
            Some(Graph::edgeless)
        } else {
            None
        };
        match family {
            Some(build) => {
                let n = self.number()?;
                build(n).map_err(|e| range(e, self))
            }
            None => Err(self.err("unknown graph family")),
        }
    }
}

#[derive(Serialize, Deserialize)]
struct GraphDoc {
    n: usize,
    edges: Vec<(usize, usize)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    label: Option<String>,
}

impl Serialize for Graph {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        GraphDoc {
            n: self.n,
            edges: self.edges(),
            label: self.label.clone(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Graph {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let doc = GraphDoc::deserialize(d)?;
        let mut g = Graph::from_edges(doc.n, &doc.edges).map_err(serde::de::Error::custom)?;
        g.label = doc.label;
        Ok(g)
    }
}
