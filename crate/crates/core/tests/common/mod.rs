#![allow(clippy::needless_range_loop, dead_code)]

use qgadget::Graph;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn family(s: &str) -> Graph {
    Graph::from_family(s).unwrap_or_else(|e| panic!("{s}: {e}"))
}

/// Named graphs on at most `max_n` vertices.
pub fn corpus(max_n: usize) -> Vec<Graph> {
    let specs = [
        "K:1",
        "K:2",
        "K:3",
        "K:4",
        "K:5",
        "E:2",
        "E:3",
        "C:3",
        "C:4",
        "C:5",
        "C:6",
        "C:7",
        "C:8",
        "C:9",
        "C:10",
        "C:11",
        "P:1",
        "P:2",
        "P:3",
        "P:4",
        "P:6",
        "diamond",
        "dprime",
        "petersen",
        "O:2",
        "KG:5,2",
        "KG:6,2",
        "cmpl(C:6)",
        "cmpl(C:7)",
        "cmpl(C:8)",
        "cmpl(P:4)",
        "box(C:3,P:1)",
        "box(C:4,P:1)",
        "box(K:2,K:2)",
        "box(C:3,P:2)",
        "box(C:5,P:1)",
        "tensor(K:3,K:2)",
        "tensor(K:2,K:2)",
        "tensor(C:5,K:2)",
        "tensor(K:3,K:3)",
        "box(P:1,P:2)",
        "cmpl(petersen)",
    ];
    specs
        .iter()
        .map(|s| family(s))
        .filter(|g| g.n() <= max_n)
        .collect()
}

pub fn random_graph(rng: &mut ChaCha8Rng, n: usize, p: f64) -> Graph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, &edges).unwrap()
}

/// Plain backtracking over vertices in index order, one connected component
/// at a time, checking only edges back to assigned vertices.
pub fn naive_hom_exists(h: &Graph, g: &Graph) -> bool {
    let n = h.n();
    let mut comp = vec![usize::MAX; n];
    let mut comps: Vec<Vec<usize>> = Vec::new();
    for s in 0..n {
        if comp[s] != usize::MAX {
            continue;
        }
        let id = comps.len();
        let mut stack = vec![s];
        let mut members = Vec::new();
        comp[s] = id;
        while let Some(u) = stack.pop() {
            members.push(u);
            for v in 0..n {
                if h.adjacent(u, v) && comp[v] == usize::MAX {
                    comp[v] = id;
                    stack.push(v);
                }
            }
        }
        comps.push(members);
    }
    fn rec(h: &Graph, g: &Graph, order: &[usize], i: usize, map: &mut [usize]) -> bool {
        if i == order.len() {
            return true;
        }
        let u = order[i];
        for c in 0..g.n() {
            if order[..i]
                .iter()
                .all(|&w| !h.adjacent(u, w) || g.adjacent(c, map[w]))
            {
                map[u] = c;
                if rec(h, g, order, i + 1, map) {
                    return true;
                }
            }
        }
        false
    }
    let mut map = vec![0; n];
    comps.iter().all(|order| rec(h, g, order, 0, &mut map))
}

/// Every map `h -> g` in lexicographic order.
pub fn all_maps(hn: usize, gn: usize) -> impl Iterator<Item = Vec<usize>> {
    let total = (gn as u64).pow(hn as u32);
    (0..total).map(move |mut code| {
        let mut m = vec![0; hn];
        for slot in m.iter_mut().rev() {
            *slot = (code % gn as u64) as usize;
            code /= gn as u64;
        }
        m
    })
}
