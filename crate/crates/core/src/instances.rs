//! Named test polytopes, a seeded triangulation generator, and the `pg/1`
//! text format.

use std::fmt::Write as _;

use crate::embedding::{EmbeddedGraph, Triangulation};
use crate::error::{Error, Result};

/// Names accepted by [`named`].
pub const NAMES: [&str; 5] = ["k4", "octahedron", "cube", "icosahedron", "c4"];

/// Canonical rotation systems for a few small graphs.
///
/// Numbering:
/// - `k4`: vertices 0..4.
/// - `octahedron`: 0 top, 1..5 equator in cyclic order, 5 bottom.
/// - `cube`: 0..4 top square, 4..8 bottom square with `i + 4` below `i`.
/// - `icosahedron`: 0 top, 1..6 upper ring, 6..11 lower ring with `6 + i`
///   between `1 + i` and `1 + (i + 1) % 5`, 11 bottom.
/// - `c4`: the 4-cycle 0-1-2-3.
pub fn named(name: &str) -> Result<EmbeddedGraph> {
    match name {
        "k4" => EmbeddedGraph::from_triangles(4, &[[0, 1, 2], [0, 2, 3], [0, 3, 1], [1, 3, 2]]),
        "octahedron" => {
            let mut faces = Vec::new();
            for i in 0..4 {
                let (a, b) = (1 + i, 1 + (i + 1) % 4);
                faces.push([0, a, b]);
                faces.push([5, b, a]);
            }
            EmbeddedGraph::from_triangles(6, &faces)
        }
        "icosahedron" => {
            let mut faces = Vec::new();
            for i in 0..5 {
                let (u, u1) = (1 + i, 1 + (i + 1) % 5);
                let (l, l1) = (6 + i, 6 + (i + 1) % 5);
                faces.push([0, u, u1]);
                faces.push([u, l, u1]);
                faces.push([u1, l, l1]);
                faces.push([11, l1, l]);
            }
            EmbeddedGraph::from_triangles(12, &faces)
        }
        "cube" => EmbeddedGraph::build(vec![
            vec![1, 3, 4],
            vec![2, 0, 5],
            vec![3, 1, 6],
            vec![0, 2, 7],
            vec![7, 5, 0],
            vec![4, 6, 1],
            vec![5, 7, 2],
            vec![6, 4, 3],
        ]),
        "c4" => EmbeddedGraph::build(vec![vec![1, 3], vec![2, 0], vec![3, 1], vec![0, 2]]),
        other => Err(Error::UnknownName(other.to_string())),
    }
}

/// Triangulation with a hub (vertex 0) whose link vertices `1..=d` have the
/// given degrees. Outside the link sits a ring of connector vertices (degree
/// 4 or 5) and a pole, the last vertex. Degrees must be at least 4 and
/// contribute at least three connectors in total.
pub fn hub_with_link(link_degrees: &[usize]) -> Triangulation {
    let d = link_degrees.len();
    let runs: Vec<usize> = link_degrees.iter().map(|&t| t.checked_sub(3).expect("degree >= 4")).collect();
    let m: usize = runs.iter().map(|k| k - 1).sum();
    assert!(d >= 3 && m >= 3, "link too small for a connector ring");
    let a = |i: usize| 1 + i % d;
    let b = |j: usize| 1 + d + j % m;
    let pole = 1 + d + m;
    let mut faces = Vec::new();
    let mut s = 0;
    for (i, &run) in runs.iter().enumerate() {
        faces.push([0, a(i), a(i + 1)]);
        for j in s..s + run - 1 {
            faces.push([a(i), b(j), b(j + 1)]);
        }
        s += run - 1;
        faces.push([a(i), b(s), a(i + 1)]);
    }
    for j in 0..m {
        faces.push([pole, b(j + 1), b(j)]);
    }
    let g = EmbeddedGraph::from_triangles(pole + 1, &faces).expect("hub gadget is a triangulation");
    Triangulation::new(g).expect("hub gadget is a triangulation")
}

/// SplitMix64: a fixed 64-bit mixing generator, so generated corpora are
/// byte-identical on every platform.
#[derive(Clone, Debug)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        SplitMix64 { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    /// Uniform-ish integer in `0..bound` by multiply-shift.
    pub fn below(&mut self, bound: usize) -> usize {
        ((self.next_u64() as u128 * bound as u128) >> 64) as usize
    }
}

/// Parameters of one generated triangulation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct GenSpec {
    pub seed: u64,
    pub n: usize,
    pub flips: usize,
    /// When set, extra flips push every degree to at least 5.
    pub min_degree_5: bool,
}

impl GenSpec {
    pub fn new(seed: u64, n: usize, flips: usize) -> Self {
        GenSpec { seed, n, flips, min_degree_5: false }
    }

    pub fn shaped(mut self) -> Self {
        self.min_degree_5 = true;
        self
    }
}

/// Result of [`generate_report`]: the triangulation plus whether the
/// minimum-degree shaping reached its goal within budget.
#[derive(Clone, Debug)]
pub struct Generated {
    pub triangulation: Triangulation,
    pub shaping_exhausted: bool,
}

pub fn generate(spec: GenSpec) -> Triangulation {
    generate_report(spec).triangulation
}

/// Grows a stacked triangulation from K4 by random face splits, then applies
/// random legal edge flips and optional minimum-degree shaping.
pub fn generate_report(spec: GenSpec) -> Generated {
    assert!(spec.n >= 4, "generator needs n >= 4");
    let mut rng = SplitMix64::new(spec.seed);
    let mut rot: Vec<Vec<usize>> = vec![vec![1, 2, 3], vec![0, 3, 2], vec![0, 1, 3], vec![0, 2, 1]];
    let mut faces: Vec<[usize; 3]> = vec![[0, 1, 2], [0, 2, 3], [0, 3, 1], [1, 3, 2]];
    while rot.len() < spec.n {
        let fi = rng.below(faces.len());
        let [a, b, c] = faces[fi];
        let x = rot.len();
        insert_after(&mut rot[a], b, x);
        insert_after(&mut rot[b], c, x);
        insert_after(&mut rot[c], a, x);
        rot.push(vec![a, b, c]);
        faces[fi] = [a, b, x];
        faces.push([b, c, x]);
        faces.push([c, a, x]);
    }
    let mut g = EmbeddedGraph::from_parts(rot);

    for _ in 0..spec.flips {
        // Up to a few retries per requested flip; illegal picks are skipped.
        for _ in 0..8 {
            let u = rng.below(g.id_bound());
            let w = g.rotation(u)[rng.below(g.degree(u))];
            if try_flip(&mut g, u, w, 3) {
                break;
            }
        }
    }

    let mut exhausted = false;
    if spec.min_degree_5 {
        exhausted = !shape_min_degree(&mut g, &mut rng);
    }
    debug_assert!(g.validate().is_ok());
    let triangulation = Triangulation::new(g).expect("flips preserve triangulation");
    Generated { triangulation, shaping_exhausted: exhausted }
}

fn insert_after(rot: &mut Vec<usize>, after: usize, x: usize) {
    let i = rot.iter().position(|&v| v == after).expect("corner present");
    rot.insert(i + 1, x);
}

/// Replaces edge `u-w` by the opposite diagonal of its two triangles when
/// that keeps the graph simple and both ends at degree `>= floor` afterwards.
fn try_flip(g: &mut EmbeddedGraph, u: usize, w: usize, floor: usize) -> bool {
    if g.degree(u) <= floor || g.degree(w) <= floor {
        return false;
    }
    let i = g.position(u, w).expect("edge present") as isize;
    let a = g.neighbor_at(u, i + 1);
    let b = g.neighbor_at(u, i - 1);
    if a == b || g.has_edge(a, b) {
        return false;
    }
    let iu = g.position(u, w).unwrap();
    g.rotation_mut(u).remove(iu);
    let iw = g.position(w, u).unwrap();
    g.rotation_mut(w).remove(iw);
    insert_after(g.rotation_mut(a), u, b);
    insert_after(g.rotation_mut(b), w, a);
    debug_assert!(g.rotation(a).contains(&b));
    true
}

/// Flips edges opposite to low-degree vertices until every degree is at least
/// five. Returns false when the retry budget runs out first.
fn shape_min_degree(g: &mut EmbeddedGraph, rng: &mut SplitMix64) -> bool {
    let n = g.id_bound();
    if n < 12 {
        return false;
    }
    let budget = 200 * n;
    for _ in 0..budget {
        let low: Vec<usize> = g.vertices().filter(|&v| g.degree(v) < 5).collect();
        if low.is_empty() {
            return true;
        }
        let x = low[rng.below(low.len())];
        let d = g.degree(x);
        let start = rng.below(d);
        let mut done = false;
        for s in 0..d {
            let a = g.rotation(x)[(start + s) % d];
            let b = g.rotation(x)[(start + s + 1) % d];
            if g.degree(a) >= 6 && g.degree(b) >= 6 && try_flip(g, a, b, 5) {
                done = true;
                break;
            }
        }
        if !done {
            // Perturb: a random legal flip near x.
            let a = g.rotation(x)[start];
            let w = g.rotation(a)[rng.below(g.degree(a))];
            if w != x {
                try_flip(g, a, w, 3);
            }
        }
    }
    g.vertices().all(|v| g.degree(v) >= 5)
}

/// Serializes to `pg/1`: a `pg <n>` header and one `<v>: <rotation>` line per
/// vertex in ascending id.
pub fn write_pg(g: &EmbeddedGraph) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "pg {}", g.id_bound());
    for v in 0..g.id_bound() {
        let _ = write!(out, "{v}:");
        for &u in g.rotation(v) {
            let _ = write!(out, " {u}");
        }
        out.push('\n');
    }
    out
}

/// Parses `pg/1`. `#` starts a comment; vertex lines may come in any order
/// but all `n` must be present.
pub fn read_pg(text: &str) -> Result<EmbeddedGraph> {
    let mut n: Option<usize> = None;
    let mut rot: Vec<Option<Vec<usize>>> = Vec::new();
    let mut last_line = 0;
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        last_line = line_no;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let parse_err = |message: String| Error::Parse { line: line_no, message };
        match n {
            None => {
                let mut parts = line.split_whitespace();
                if parts.next() != Some("pg") {
                    return Err(parse_err("expected header `pg <n>`".into()));
                }
                let count = parts
                    .next()
                    .and_then(|s| s.parse::<usize>().ok())
                    .ok_or_else(|| parse_err("header needs a vertex count".into()))?;
                if parts.next().is_some() {
                    return Err(parse_err("trailing tokens after header".into()));
                }
                n = Some(count);
                rot = vec![None; count];
            }
            Some(count) => {
                let (head, tail) =
                    line.split_once(':').ok_or_else(|| parse_err("expected `<v>: <neighbors>`".into()))?;
                let v: usize =
                    head.trim().parse().map_err(|_| parse_err(format!("bad vertex id `{}`", head.trim())))?;
                if v >= count {
                    return Err(parse_err(format!("vertex {v} out of range 0..{count}")));
                }
                if rot[v].is_some() {
                    return Err(parse_err(format!("vertex {v} listed twice")));
                }
                let nbrs = tail
                    .split_whitespace()
                    .map(|t| t.parse::<usize>().map_err(|_| parse_err(format!("bad neighbor `{t}`"))))
                    .collect::<Result<Vec<_>>>()?;
                rot[v] = Some(nbrs);
            }
        }
    }
    if n.is_none() {
        return Err(Error::Parse { line: last_line.max(1), message: "missing header".into() });
    }
    let mut full = Vec::with_capacity(rot.len());
    for (v, r) in rot.into_iter().enumerate() {
        match r {
            Some(r) => full.push(r),
            None => {
                return Err(Error::Parse { line: last_line.max(1), message: format!("missing line for vertex {v}") })
            }
        }
    }
    EmbeddedGraph::build(full)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn named_shapes() {
        let ico = named("icosahedron").unwrap();
        assert_eq!((ico.vertex_count(), ico.edge_count()), (12, 30));
        assert!(ico.vertices().all(|v| ico.degree(v) == 5));

        let cube = named("cube").unwrap();
        assert_eq!(cube.vertex_count(), 8);
        assert!(cube.vertices().all(|v| cube.degree(v) == 3));
        assert!(cube.trace_faces().iter().all(|f| f.len() == 4));

        let k4 = named("k4").unwrap();
        assert_eq!((k4.vertex_count(), k4.edge_count()), (4, 6));

        let oct = named("octahedron").unwrap();
        assert!(oct.vertices().all(|v| oct.degree(v) == 4));

        assert_eq!(named("dodecahedron"), Err(Error::UnknownName("dodecahedron".into())));
    }

    #[test]
    fn hub_gadget_degrees() {
        let link = [5, 5, 5, 7, 7, 5, 5, 7, 7];
        let t = hub_with_link(&link);
        assert_eq!(t.degree(0), 9);
        for (i, &deg) in link.iter().enumerate() {
            assert_eq!(t.degree(1 + i), deg);
        }
        assert_eq!(t.rotation(0), &[1, 2, 3, 4, 5, 6, 7, 8, 9]);
        assert_eq!(t.edge_count(), 3 * t.vertex_count() - 6);
    }

    #[test]
    fn generator_basics() {
        let t = generate(GenSpec::new(1, 4, 0));
        let k4 = named("k4").unwrap();
        for v in 0..4 {
            let (a, b) = (t.rotation(v), k4.rotation(v));
            let k = b.iter().position(|&x| x == a[0]).unwrap();
            assert_eq!(a, [&b[k..], &b[..k]].concat(), "rotation of {v}");
        }

        let t = generate(GenSpec::new(7, 100, 500));
        assert_eq!((t.vertex_count(), t.edge_count()), (100, 294));
        assert!(t.trace_faces().iter().all(|f| f.len() == 3));

        let a = write_pg(&generate(GenSpec::new(7, 100, 500)));
        let b = write_pg(&generate(GenSpec::new(7, 100, 500)));
        assert_eq!(a, b);
    }

    #[test]
    fn shaping_reaches_min_degree_five() {
        for seed in 1..6 {
            let g = generate_report(GenSpec::new(seed, 200, 400).shaped());
            assert!(!g.shaping_exhausted, "seed {seed}");
            assert!(g.triangulation.min_degree().unwrap() >= 5);
        }
        // 10 vertices cannot reach minimum degree 5
        assert!(generate_report(GenSpec::new(1, 10, 20).shaped()).shaping_exhausted);
    }

    #[test]
    fn pg_round_trip_and_errors() {
        let k4 = named("k4").unwrap();
        let text = write_pg(&k4);
        assert_eq!(read_pg(&text).unwrap(), k4);
        assert_eq!(write_pg(&read_pg(&text).unwrap()), text);

        let shuffled = "# comment\npg 3\n2: 0 1\n0: 1 2 # trailing\n1: 2 0\n";
        let g = read_pg(shuffled).unwrap();
        assert_eq!(g.rotation(0), &[1, 2]);

        assert!(matches!(read_pg("pg 3\n0: 1 2\n1: 2 0\n"), Err(Error::Parse { .. })));
        assert!(matches!(read_pg("pg 2\n0: 1\n1:\n"), Err(Error::AsymmetricAdjacency { .. })));
        assert!(matches!(read_pg("graph 2\n"), Err(Error::Parse { line: 1, .. })));
    }
}
