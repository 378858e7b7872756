//! The coloring driver.
//!
//! Forward pass: find a configuration, delete it, re-triangulate around the
//! hole, repeat until the graph is empty. Every edit goes to an undo log, so
//! the backward pass can restore each level exactly and extend the coloring
//! there: pick the fifth-color vertex, then reinsert the peeled vertices in
//! reverse order with Kempe chains.

use crate::catalog::{self, ConfigurationSpec, Family};
use crate::coloring::{is_proper_partial, Coloring};
use crate::embedding::EmbeddedGraph;
use crate::error::{Error, Result};
use crate::kempe::free_color;
use crate::matcher::{find_reducible_in, Occurrence};

/// Knobs for [`color_planar_with`].
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct ColorOptions {
    /// Re-check properness, the fifth-class invariants and the running bound
    /// after every level.
    pub audit: bool,
    /// Keep a [`ReductionStep`] with a graph snapshot per level.
    pub record: bool,
}

/// What happened at one level of the backward pass.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReductionStep {
    pub occurrence: Occurrence,
    pub fifth: Option<usize>,
    /// Candidates skipped because a neighbor already had the fifth color.
    pub blocked: Vec<usize>,
    /// Fifth-colored vertices outside the configuration adjacent to it.
    pub outside_fifth: Vec<usize>,
    pub peel: Vec<usize>,
    /// The graph at this level, when recording.
    pub snapshot: Option<EmbeddedGraph>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RunStats {
    pub levels: usize,
    /// Levels per family, indexed like [`Family::ALL`].
    pub by_family: [usize; 8],
    pub free_color_calls: usize,
    pub swaps: usize,
    pub fifth_assignments: usize,
    /// Class-5 set checks performed (audit mode).
    pub fifth_checks: usize,
}

#[derive(Clone, Debug)]
pub struct ColorRun {
    pub coloring: Coloring,
    pub stats: RunStats,
    pub steps: Vec<ReductionStep>,
    /// Edges added by the initial triangulation.
    pub fill: Vec<(usize, usize)>,
}

/// Colors `g` with five colors so that at most `n / 6` vertices get color 5.
pub fn color_planar(g: &EmbeddedGraph) -> Result<Coloring> {
    color_planar_with(g, ColorOptions::default()).map(|r| r.coloring)
}

pub fn color_planar_with(g: &EmbeddedGraph, opts: ColorOptions) -> Result<ColorRun> {
    color_planar_in(g, catalog::builtin(), opts)
}

pub fn color_planar_in(g: &EmbeddedGraph, catalog: &[ConfigurationSpec], opts: ColorOptions) -> Result<ColorRun> {
    let mut w = g.clone();
    let mut log = Vec::new();
    let fill = w.triangulate_all(&mut log)?;
    let mut levels: Vec<(Occurrence, usize)> = Vec::new();
    let mut around = Vec::new();
    while w.vertex_count() > 0 {
        let occ = find_reducible_in(&w, catalog)?;
        let mark = log.len();
        around.clear();
        for &v in &occ.vertices {
            around.extend(w.rotation(v).iter().copied().filter(|u| !occ.contains(*u)));
        }
        around.sort_unstable();
        around.dedup();
        for &v in &occ.vertices {
            w.kill_vertex(v, &mut log);
        }
        w.triangulate_near(&around, &mut log)?;
        levels.push((occ, mark));
    }

    let mut col = Coloring::new(g.id_bound());
    let mut stats = RunStats::default();
    let mut steps = Vec::new();
    let mut fifth_so_far: Vec<usize> = Vec::new();
    while let Some((occ, mark)) = levels.pop() {
        w.undo_to(&mut log, mark);
        let family_index = Family::ALL.iter().position(|&f| f == occ.family).unwrap();
        let snapshot = opts.record.then(|| w.clone());
        let step = reduce_once(&w, &mut col, occ, &mut stats)?;
        stats.levels += 1;
        stats.by_family[family_index] += 1;
        if let Some(f) = step.fifth {
            fifth_so_far.push(f);
        }
        if opts.audit {
            audit_level(&w, &col, &fifth_so_far, &step)?;
            stats.fifth_checks += 1;
        }
        if opts.record {
            steps.push(ReductionStep { snapshot, ..step });
        }
    }
    Ok(ColorRun { coloring: col, stats, steps, fill })
}

fn audit_level(w: &EmbeddedGraph, col: &Coloring, fifth: &[usize], step: &ReductionStep) -> Result<()> {
    let fail = |detail: String| Error::ValidationFailure {
        entry: step.occurrence.id.clone(),
        scenario: "audit".into(),
        detail,
    };
    if !is_proper_partial(w, col) {
        return Err(fail("coloring not proper after reinsertion".into()));
    }
    if w.vertices().any(|v| col.get(v).is_none()) {
        return Err(fail("uncolored vertex after reinsertion".into()));
    }
    if col.fifth_class_size() != fifth.len() || fifth.iter().any(|&v| col.get(v) != Some(5)) {
        return Err(fail("fifth class changed outside a fifth assignment".into()));
    }
    if 6 * fifth.len() > w.vertex_count() {
        return Err(fail(format!("{} fifth-colored of {}", fifth.len(), w.vertex_count())));
    }
    Ok(())
}

/// Extends a coloring of `g - V(H)` to `g`: fifth vertex first, then the
/// peel order in reverse.
pub fn reduce_once(
    g: &EmbeddedGraph,
    col: &mut Coloring,
    occ: Occurrence,
    stats: &mut RunStats,
) -> Result<ReductionStep> {
    let sel = select_fifth(g, col, &occ)?;
    if let Some(f) = sel.fifth {
        col.set(f, 5);
        stats.fifth_assignments += 1;
    }
    let (calls, swaps) = reinsert(g, &sel.peel, col)?;
    stats.free_color_calls += calls;
    stats.swaps += swaps;
    Ok(ReductionStep {
        occurrence: occ,
        fifth: sel.fifth,
        blocked: sel.blocked,
        outside_fifth: sel.outside_fifth,
        peel: sel.peel,
        snapshot: None,
    })
}

/// Result of [`select_fifth`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Selection {
    pub fifth: Option<usize>,
    pub peel: Vec<usize>,
    pub blocked: Vec<usize>,
    pub outside_fifth: Vec<usize>,
}

/// Tries the occurrence's candidates in order, then no fifth vertex. A
/// candidate qualifies when none of its neighbors has color 5 and the rest
/// of the configuration then peels.
pub fn select_fifth(g: &EmbeddedGraph, col: &Coloring, occ: &Occurrence) -> Result<Selection> {
    let mut outside_fifth: Vec<usize> =
        occ.vertices.iter().flat_map(|&v| g.rotation(v).iter().copied()).filter(|&u| col.get(u) == Some(5)).collect();
    outside_fifth.sort_unstable();
    outside_fifth.dedup();
    let mut blocked = Vec::new();
    let candidates = if occ.hub_degree.is_some() { hub_candidates(g, col, occ) } else { occ.candidates.clone() };
    let options = candidates.into_iter().map(Some).chain([None]);
    for cand in options {
        if let Some(c) = cand {
            if g.rotation(c).iter().any(|&u| col.get(u) == Some(5)) {
                blocked.push(c);
                continue;
            }
        }
        if let Some(peel) = peel_order(g, col, &occ.vertices, cand) {
            return Ok(Selection { fifth: cand, peel, blocked, outside_fifth });
        }
    }
    Err(Error::SchemeExhausted { entry: occ.id.clone() })
}

/// Hub first, then leaves of runs that no fifth-colored separator touches,
/// then the remaining leaves; link order within each group.
fn hub_candidates(g: &EmbeddedGraph, col: &Coloring, occ: &Occurrence) -> Vec<usize> {
    let leaves = &occ.vertices[1..];
    let touched_leaf = |l: usize| occ.separators.iter().any(|&s| col.get(s) == Some(5) && g.has_edge(s, l));
    let mut run_of = vec![0usize; leaves.len()];
    for i in 1..leaves.len() {
        run_of[i] = run_of[i - 1] + usize::from(!g.has_edge(leaves[i - 1], leaves[i]));
    }
    // the last run wraps onto the first when the link closes between them
    let runs = run_of.last().map_or(0, |r| r + 1);
    if runs > 1 && g.has_edge(leaves[0], leaves[leaves.len() - 1]) {
        let last = runs - 1;
        for r in &mut run_of {
            if *r == last {
                *r = 0;
            }
        }
    }
    let mut touched = vec![false; runs];
    for (i, &l) in leaves.iter().enumerate() {
        if touched_leaf(l) {
            touched[run_of[i]] = true;
        }
    }
    let mut out = vec![occ.vertices[0]];
    out.extend(leaves.iter().enumerate().filter(|&(i, _)| !touched[run_of[i]]).map(|(_, &l)| l));
    out.extend(leaves.iter().enumerate().filter(|&(i, _)| touched[run_of[i]]).map(|(_, &l)| l));
    out
}

/// Greedy peel of `h` (minus `fifth`) in `g`: a vertex goes when at most four
/// of its neighbors are neither peeled nor fifth-colored; lowest id first.
pub fn peel_order(g: &EmbeddedGraph, col: &Coloring, h: &[usize], fifth: Option<usize>) -> Option<Vec<usize>> {
    let mut verts: Vec<usize> = h.iter().copied().filter(|&v| Some(v) != fifth).collect();
    verts.sort_unstable();
    let idx = |u: usize| verts.binary_search(&u).ok();
    let mut eff: Vec<usize> = verts
        .iter()
        .map(|&v| g.rotation(v).iter().filter(|&&u| Some(u) != fifth && col.get(u) != Some(5)).count())
        .collect();
    let mut done = vec![false; verts.len()];
    let mut order = Vec::with_capacity(verts.len());
    while order.len() < verts.len() {
        let i = (0..verts.len()).find(|&i| !done[i] && eff[i] <= 4)?;
        done[i] = true;
        order.push(verts[i]);
        for &u in g.rotation(verts[i]) {
            if let Some(j) = idx(u) {
                eff[j] -= 1;
            }
        }
    }
    Some(order)
}

/// Colors the peeled vertices in reverse peel order. Returns the number of
/// [`free_color`] calls and swaps.
pub fn reinsert(g: &EmbeddedGraph, peel: &[usize], col: &mut Coloring) -> Result<(usize, usize)> {
    let mut swaps = 0;
    for &v in peel.iter().rev() {
        let r = free_color(g, col, v)?;
        swaps += r.swaps;
        col.set(v, r.color);
    }
    Ok((peel.len(), swaps))
}

/// Replays a recorded step against its snapshot: the peel must be legal
/// given the fifth vertex and the fifth-colored outside neighbors.
pub fn replay_step(step: &ReductionStep) -> bool {
    let Some(g) = &step.snapshot else { return false };
    let mut col = Coloring::new(g.id_bound());
    for &u in &step.outside_fifth {
        col.set(u, 5);
    }
    let mut h: Vec<usize> = step.occurrence.vertices.clone();
    h.sort_unstable();
    let mut expected: Vec<usize> = h.iter().copied().filter(|&v| Some(v) != step.fifth).collect();
    let mut got = step.peel.clone();
    got.sort_unstable();
    expected.sort_unstable();
    if got != expected {
        return false;
    }
    // each vertex at most four live, non-fifth neighbors when removed
    let mut gone: Vec<usize> = step.fifth.into_iter().collect();
    for &v in &step.peel {
        let eff = g.rotation(v).iter().filter(|&&u| !gone.contains(&u) && col.get(u) != Some(5)).count();
        if eff > 4 {
            return false;
        }
        gone.push(v);
    }
    true
}
