//! Finds catalog configurations in a triangulation.
//!
//! Matching is a deterministic template walk: the anchor fixes a vertex and
//! a link offset, every other template vertex is read off a link cycle, and
//! the result is accepted only if images are pairwise distinct, every
//! template edge exists and every degree is within its cap.

use std::collections::VecDeque;

use crate::catalog::{self, ConfigurationSpec, Family, Place, Scheme};
use crate::embedding::EmbeddedGraph;
use crate::error::{Error, Result};

/// A matched configuration.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Occurrence {
    /// Index of the entry in the catalog it was matched against.
    pub entry: usize,
    pub id: String,
    pub family: Family,
    /// Image of each template vertex. For hub schemes: the hub, then the
    /// leaves in link order.
    pub vertices: Vec<usize>,
    pub offset: usize,
    /// Matched hub degree for F7/F8.
    pub hub_degree: Option<usize>,
    /// Non-leaf link vertices of the hub for F7/F8.
    pub separators: Vec<usize>,
    /// Fifth-color candidates in priority order.
    pub candidates: Vec<usize>,
}

impl Occurrence {
    pub fn contains(&self, v: usize) -> bool {
        self.vertices.contains(&v)
    }

    pub fn hub(&self) -> Option<usize> {
        self.hub_degree.map(|_| self.vertices[0])
    }
}

/// One slot of a realized rotation template.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Slot {
    /// A template edge to the given template vertex.
    Edge(usize),
    /// A run of this many edges leaving the configuration.
    Half(usize),
}

/// F1 at the lowest-id vertex of degree at most four.
pub fn find_low_degree(g: &EmbeddedGraph) -> Option<Occurrence> {
    let v = g.vertices().find(|&v| g.degree(v) <= 4)?;
    let cat = catalog::builtin();
    let entry = cat.iter().position(|e| e.scheme == Scheme::PlainZero).expect("F1 entry");
    Some(Occurrence {
        entry,
        id: cat[entry].id.clone(),
        family: Family::F1,
        vertices: vec![v],
        offset: 0,
        hub_degree: None,
        separators: Vec::new(),
        candidates: Vec::new(),
    })
}

/// Tries `spec` with its anchor at `anchor` and link offset `offset`.
pub fn match_at(
    g: &EmbeddedGraph,
    catalog: &[ConfigurationSpec],
    entry: usize,
    anchor: usize,
    offset: usize,
) -> Option<Occurrence> {
    let spec = &catalog[entry];
    if !g.is_alive(anchor) {
        return None;
    }
    let deg = g.degree(anchor);
    let (vertices, hub_degree, separators) = match spec.scheme {
        Scheme::PlainZero => {
            if deg > spec.vertices[0].cap {
                return None;
            }
            (vec![anchor], None, Vec::new())
        }
        Scheme::VirtualHub => match_hub(g, anchor, offset)?,
        Scheme::TrialSequence(_) | Scheme::NinePattern => {
            if deg != spec.vertices[0].cap || offset >= deg {
                return None;
            }
            let vertices = place(g, spec, anchor, offset)?;
            if spec.scheme == Scheme::NinePattern {
                let seps = (0..deg)
                    .map(|k| g.neighbor_at(anchor, (offset + k) as isize))
                    .filter(|u| !vertices.contains(u))
                    .collect();
                (vertices, Some(deg), seps)
            } else {
                (vertices, None, Vec::new())
            }
        }
    };
    let candidates = match &spec.scheme {
        Scheme::PlainZero => Vec::new(),
        Scheme::TrialSequence(trial) => trial.iter().map(|&t| vertices[t]).collect(),
        Scheme::VirtualHub | Scheme::NinePattern => vertices.clone(),
    };
    Some(Occurrence {
        entry,
        id: spec.id.clone(),
        family: spec.family,
        vertices,
        offset,
        hub_degree,
        separators,
        candidates,
    })
}

fn place(g: &EmbeddedGraph, spec: &ConfigurationSpec, anchor: usize, offset: usize) -> Option<Vec<usize>> {
    let mut img = Vec::with_capacity(spec.len());
    img.push(anchor);
    for t in &spec.vertices[1..] {
        let Place::Link { from, via, step } = t.place else { return None };
        let f = img[from];
        let base = match via {
            None => offset as isize,
            Some(w) => g.position(f, img[w])? as isize,
        };
        let u = g.neighbor_at(f, base + step);
        if g.degree(u) > t.cap || img.contains(&u) {
            return None;
        }
        img.push(u);
    }
    spec.edges.iter().all(|&(a, b)| g.has_edge(img[a], img[b])).then_some(img)
}

type HubMatch = (Vec<usize>, Option<usize>, Vec<usize>);

/// First `d - 3` link vertices of degree at most five, scanning from
/// `offset`; the rest of the link are separators.
fn match_hub(g: &EmbeddedGraph, hub: usize, offset: usize) -> Option<HubMatch> {
    let d = g.degree(hub);
    if d < 8 || offset >= d {
        return None;
    }
    let mut leaves = vec![hub];
    let mut seps = Vec::new();
    for k in 0..d {
        let u = g.neighbor_at(hub, (offset + k) as isize);
        if leaves.len() < d - 2 && g.degree(u) <= 5 {
            leaves.push(u);
        } else {
            seps.push(u);
        }
    }
    if leaves.len() < d - 2 {
        return None;
    }
    Some((leaves, Some(d), seps))
}

/// The first occurrence in scan order: F1, then families F2, F3, F4, F7, F8,
/// F5, F6, each by ascending anchor id, link offset and entry order.
pub fn find_occurrence(g: &EmbeddedGraph) -> Option<Occurrence> {
    find_occurrence_in(g, catalog::builtin())
}

pub fn find_occurrence_in(g: &EmbeddedGraph, catalog: &[ConfigurationSpec]) -> Option<Occurrence> {
    if let Some(v) = g.vertices().find(|&v| g.degree(v) <= 4) {
        if let Some(e) = catalog.iter().position(|e| e.scheme == Scheme::PlainZero) {
            return match_at(g, catalog, e, v, 0);
        }
    }
    for family in Family::SCAN_ORDER {
        let entries: Vec<usize> = (0..catalog.len()).filter(|&i| catalog[i].family == family).collect();
        if entries.is_empty() {
            continue;
        }
        for v in g.vertices() {
            if let Some(occ) = match_anchor(g, catalog, &entries, v) {
                return Some(occ);
            }
        }
    }
    None
}

fn anchor_fits(spec: &ConfigurationSpec, d: usize) -> bool {
    match spec.scheme {
        Scheme::PlainZero => d <= spec.vertices[0].cap,
        Scheme::VirtualHub => d >= 8,
        _ => d == spec.vertices[0].cap,
    }
}

fn match_anchor(g: &EmbeddedGraph, catalog: &[ConfigurationSpec], entries: &[usize], v: usize) -> Option<Occurrence> {
    let d = g.degree(v);
    let fitting: Vec<usize> = entries.iter().copied().filter(|&e| anchor_fits(&catalog[e], d)).collect();
    if fitting.is_empty() {
        return None;
    }
    for offset in 0..d.max(1) {
        for &e in &fitting {
            if let Some(occ) = match_at(g, catalog, e, v, offset) {
                return Some(occ);
            }
        }
    }
    None
}

/// Like [`find_occurrence`], but a graph of minimum degree at least five
/// without any match is reported as a completeness breach.
pub fn find_reducible(g: &EmbeddedGraph) -> Result<Occurrence> {
    find_reducible_in(g, catalog::builtin())
}

pub fn find_reducible_in(g: &EmbeddedGraph, catalog: &[ConfigurationSpec]) -> Result<Occurrence> {
    find_occurrence_in(g, catalog).ok_or(Error::CompletenessBreach { vertices: g.vertex_count() })
}

/// Re-checks an occurrence against the raw graph: distinct images, caps,
/// template edges, and for hub schemes the leaf/separator split of the link.
pub fn verify_occurrence(
    g: &EmbeddedGraph,
    catalog: &[ConfigurationSpec],
    occ: &Occurrence,
) -> std::result::Result<(), String> {
    let spec = &catalog[occ.entry];
    let vs = &occ.vertices;
    for (i, &v) in vs.iter().enumerate() {
        if !g.is_alive(v) {
            return Err(format!("vertex {v} is not alive"));
        }
        if vs[..i].contains(&v) {
            return Err(format!("vertex {v} used twice"));
        }
    }
    match spec.scheme {
        Scheme::VirtualHub => {
            let hub = vs[0];
            let d = g.degree(hub);
            if occ.hub_degree != Some(d) || vs.len() != d - 2 || occ.separators.len() != 3 {
                return Err("hub degree and leaf count disagree".into());
            }
            for &l in &vs[1..] {
                if g.degree(l) > 5 || !g.has_edge(hub, l) {
                    return Err(format!("leaf {l} is not a low-degree link vertex"));
                }
            }
            for &s in &occ.separators {
                if !g.has_edge(hub, s) || vs.contains(&s) {
                    return Err(format!("separator {s} is not on the link"));
                }
            }
        }
        _ => {
            if vs.len() != spec.len() {
                return Err("wrong number of images".into());
            }
            for (t, &v) in spec.vertices.iter().zip(vs) {
                if g.degree(v) > t.cap {
                    return Err(format!("vertex {v} has degree {} > cap {}", g.degree(v), t.cap));
                }
            }
            if !matches!(spec.scheme, Scheme::PlainZero) && g.degree(vs[0]) != spec.vertices[0].cap {
                return Err("anchor degree differs from its cap".into());
            }
            for &(a, b) in &spec.edges {
                if !g.has_edge(vs[a], vs[b]) {
                    return Err(format!("template edge {a}-{b} missing"));
                }
            }
            if place(g, spec, vs[0], occ.offset).as_ref() != Some(vs) && spec.len() > 1 {
                return Err("template walk does not reproduce the images".into());
            }
        }
    }
    Ok(())
}

/// Per template vertex, its rotation read as template edges and runs of
/// edges leaving the configuration.
pub fn rotation_template(g: &EmbeddedGraph, catalog: &[ConfigurationSpec], occ: &Occurrence) -> Vec<Vec<Slot>> {
    let spec = &catalog[occ.entry];
    let edges: Vec<(usize, usize)> = match spec.scheme {
        Scheme::VirtualHub => {
            let mut e: Vec<(usize, usize)> = (1..occ.vertices.len()).map(|i| (0, i)).collect();
            for i in 1..occ.vertices.len() {
                for j in i + 1..occ.vertices.len() {
                    if g.has_edge(occ.vertices[i], occ.vertices[j]) {
                        e.push((i, j));
                    }
                }
            }
            e
        }
        _ => spec.edges.clone(),
    };
    let index = |u: usize| occ.vertices.iter().position(|&w| w == u);
    occ.vertices
        .iter()
        .enumerate()
        .map(|(i, &x)| {
            let rot = g.rotation(x);
            let is_h =
                |u: usize| index(u).is_some_and(|j| edges.iter().any(|&(a, b)| (a, b) == (i, j) || (a, b) == (j, i)));
            // start right after an H-edge so runs are not split at index 0
            let start = (0..rot.len()).find(|&k| is_h(rot[k])).map_or(0, |k| k + 1);
            let mut slots = Vec::new();
            let mut run = 0;
            for k in 0..rot.len() {
                let u = rot[(start + k) % rot.len()];
                if is_h(u) {
                    if run > 0 {
                        slots.push(Slot::Half(run));
                        run = 0;
                    }
                    slots.push(Slot::Edge(index(u).unwrap()));
                } else {
                    run += 1;
                }
            }
            if run > 0 {
                slots.push(Slot::Half(run));
            }
            slots
        })
        .collect()
}

/// Vertices within `radius` hops of `center`, ascending.
pub fn ball(g: &EmbeddedGraph, center: usize, radius: usize) -> Vec<usize> {
    let mut dist = vec![usize::MAX; g.id_bound()];
    let mut queue = VecDeque::from([center]);
    dist[center] = 0;
    while let Some(u) = queue.pop_front() {
        if dist[u] == radius {
            continue;
        }
        for &w in g.rotation(u) {
            if dist[w] == usize::MAX {
                dist[w] = dist[u] + 1;
                queue.push_back(w);
            }
        }
    }
    (0..g.id_bound()).filter(|&v| dist[v] != usize::MAX).collect()
}

/// Some occurrence lying entirely within distance `radius` of `center`.
pub fn find_within(
    g: &EmbeddedGraph,
    catalog: &[ConfigurationSpec],
    center: usize,
    radius: usize,
) -> Option<Occurrence> {
    let near = ball(g, center, radius);
    let inside = |occ: &Occurrence| occ.vertices.iter().all(|v| near.binary_search(v).is_ok());
    for &v in &near {
        let d = g.degree(v);
        for e in 0..catalog.len() {
            if !anchor_fits(&catalog[e], d) {
                continue;
            }
            for offset in 0..d.max(1) {
                if let Some(occ) = match_at(g, catalog, e, v, offset) {
                    if inside(&occ) {
                        return Some(occ);
                    }
                }
            }
        }
    }
    None
}
