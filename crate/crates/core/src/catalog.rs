//! Reducible configurations as data, plus the offline validator that
//! certifies every entry by peel simulation.
//!
//! A configuration is a small template graph `H` whose vertices carry degree
//! caps. Caps are upper bounds: a matched vertex may have lower degree, which
//! only makes peeling easier. Every vertex except the anchor is placed by a
//! walk through link cycles, so the matcher never searches.

use std::collections::BTreeSet;
use std::fmt;
use std::sync::OnceLock;

use crate::error::{Error, Result};

/// Configuration families, from the single low-degree vertex up to the degree-9 pattern.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    /// A vertex of degree at most four.
    F1,
    /// Degree-5 wheel whose rim has caps 6, 6, 6, 7, 8.
    F2,
    /// Degree-7 vertex with four degree-5 neighbors and one degree-8 neighbor.
    F3,
    /// Degree-7 vertex with a link path of four degree-5 vertices.
    F4,
    F5,
    F6,
    /// Degree-`d` hub with `d - 3` degree-5 link vertices.
    F7,
    /// Degree-9 hub with degree-5 runs of lengths 3 and 2.
    F8,
}

impl Family {
    pub const ALL: [Family; 8] =
        [Family::F1, Family::F2, Family::F3, Family::F4, Family::F5, Family::F6, Family::F7, Family::F8];

    /// Order in which the matcher scans families after F1.
    pub const SCAN_ORDER: [Family; 7] =
        [Family::F2, Family::F3, Family::F4, Family::F7, Family::F8, Family::F5, Family::F6];

    pub fn name(self) -> &'static str {
        match self {
            Family::F1 => "F1",
            Family::F2 => "F2",
            Family::F3 => "F3",
            Family::F4 => "F4",
            Family::F5 => "F5",
            Family::F6 => "F6",
            Family::F7 => "F7",
            Family::F8 => "F8",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Where a template vertex sits relative to already placed ones.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Place {
    Anchor,
    /// The neighbor of `from` at rotation index `index(via) + step`; with
    /// `via = None` the index is `offset + step` (anchor only).
    Link {
        from: usize,
        via: Option<usize>,
        step: isize,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TemplateVertex {
    pub cap: usize,
    pub place: Place,
}

/// How a matched configuration is colored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Scheme {
    /// Single vertex of degree at most four; no fifth color.
    PlainZero,
    /// Fifth-color candidates in order, by template index.
    TrialSequence(Vec<usize>),
    /// Hub of any degree `d >= 8` with `d - 3` degree-5 leaves on its link.
    VirtualHub,
    /// Degree-9 hub with leaves at link positions {0, 1, 2, 5, 6}.
    NinePattern,
}

/// One catalog entry. For [`Scheme::VirtualHub`] only the hub is stored; the
/// leaves depend on the matched degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConfigurationSpec {
    pub id: String,
    pub family: Family,
    pub vertices: Vec<TemplateVertex>,
    pub edges: Vec<(usize, usize)>,
    pub scheme: Scheme,
}

impl ConfigurationSpec {
    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn caps(&self) -> Vec<usize> {
        self.vertices.iter().map(|t| t.cap).collect()
    }

    pub fn h_graph(&self) -> HGraph {
        HGraph::new(self.caps(), &self.edges)
    }

    /// Number of template edges at `v` that leave `H`.
    pub fn halfedges(&self, v: usize) -> usize {
        let deg = self.edges.iter().filter(|&&(a, b)| a == v || b == v).count();
        self.vertices[v].cap.saturating_sub(deg)
    }

    /// Concrete hub instance of a VirtualHub entry at hub degree `d`, leaves
    /// filling the first `d - 3` link positions.
    pub fn instantiate(&self, d: usize) -> Option<HubLayout> {
        match self.scheme {
            Scheme::VirtualHub if d >= 8 => Some(HubLayout::new((0..d).map(|p| p < d - 3).collect())),
            Scheme::NinePattern if d == 9 => Some(HubLayout::nine_pattern()),
            _ => None,
        }
    }
}

/// Vertex-labelled template graph with degree caps.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HGraph {
    pub caps: Vec<usize>,
    pub adj: Vec<Vec<usize>>,
}

impl HGraph {
    pub fn new(caps: Vec<usize>, edges: &[(usize, usize)]) -> Self {
        let mut adj = vec![Vec::new(); caps.len()];
        for &(a, b) in edges {
            adj[a].push(b);
            adj[b].push(a);
        }
        for row in &mut adj {
            row.sort_unstable();
            row.dedup();
        }
        HGraph { caps, adj }
    }

    pub fn len(&self) -> usize {
        self.caps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.caps.is_empty()
    }

    pub fn halfedges(&self, v: usize) -> usize {
        self.caps[v].saturating_sub(self.adj[v].len())
    }
}

/// Why a peel stopped: the order achieved so far and every remaining vertex
/// with its effective degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PeelStuck {
    pub order: Vec<usize>,
    pub remaining: Vec<(usize, usize)>,
}

impl fmt::Display for PeelStuck {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "peeled {:?}, stuck at", self.order)?;
        for (v, e) in &self.remaining {
            write!(f, " v{v}(eff {e})")?;
        }
        Ok(())
    }
}

/// Greedy peel of `h` with `deleted` removed up front. Effective degree of a
/// vertex is `cap - (deleted H-neighbors) - lowering`; the lowest-id vertex
/// at effective degree at most four goes next.
pub fn blocked_peel(h: &HGraph, deleted: &[usize], lowering: &[usize]) -> std::result::Result<Vec<usize>, PeelStuck> {
    let n = h.len();
    let mut gone = vec![false; n];
    for &v in deleted {
        gone[v] = true;
    }
    let eff = |v: usize, gone: &[bool]| {
        let lost = h.adj[v].iter().filter(|&&u| gone[u]).count();
        h.caps[v].saturating_sub(lost + lowering.get(v).copied().unwrap_or(0))
    };
    let mut order = Vec::with_capacity(n);
    loop {
        let next = (0..n).find(|&v| !gone[v] && eff(v, &gone) <= 4);
        match next {
            Some(v) => {
                gone[v] = true;
                order.push(v);
            }
            None => break,
        }
    }
    if gone.iter().all(|&g| g) {
        Ok(order)
    } else {
        let remaining = (0..n).filter(|&v| !gone[v]).map(|v| (v, eff(v, &gone))).collect();
        Err(PeelStuck { order, remaining })
    }
}

/// Link layout of a hub scheme: `leaf[p]` tells whether link position `p`
/// holds a leaf; the other positions are separators.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct HubLayout {
    pub leaf: Vec<bool>,
}

impl HubLayout {
    pub fn new(leaf: Vec<bool>) -> Self {
        HubLayout { leaf }
    }

    pub fn nine_pattern() -> Self {
        HubLayout::new([0, 1, 2, 5, 6].iter().fold(vec![false; 9], |mut v, &p| {
            v[p] = true;
            v
        }))
    }

    pub fn degree(&self) -> usize {
        self.leaf.len()
    }

    pub fn leaf_positions(&self) -> Vec<usize> {
        (0..self.degree()).filter(|&p| self.leaf[p]).collect()
    }

    pub fn separator_positions(&self) -> Vec<usize> {
        (0..self.degree()).filter(|&p| !self.leaf[p]).collect()
    }

    /// Lengths of the maximal leaf runs, starting after the first separator.
    pub fn runs(&self) -> Vec<usize> {
        let d = self.degree();
        let Some(start) = (0..d).find(|&p| !self.leaf[p]) else {
            return vec![d];
        };
        let mut runs = Vec::new();
        let mut cur = 0;
        for s in 1..=d {
            if self.leaf[(start + s) % d] {
                cur += 1;
            } else if cur > 0 {
                runs.push(cur);
                cur = 0;
            }
        }
        runs
    }

    /// Template graph: index 0 is the hub, leaves follow in link order.
    pub fn h_graph(&self) -> HGraph {
        let d = self.degree();
        let leaves = self.leaf_positions();
        let mut edges = Vec::new();
        for (i, &p) in leaves.iter().enumerate() {
            edges.push((0, i + 1));
            if let Some(j) = leaves.iter().position(|&q| q == (p + 1) % d) {
                if j != i {
                    edges.push((i + 1, j + 1));
                }
            }
        }
        let mut caps = vec![d];
        caps.extend(std::iter::repeat_n(5, leaves.len()));
        HGraph::new(caps, &edges)
    }

    /// Smallest image under rotation and reflection of the link cycle.
    fn canonical(&self) -> HubLayout {
        let d = self.degree();
        let mut best = self.leaf.clone();
        for r in 0..d {
            let fwd: Vec<bool> = (0..d).map(|i| self.leaf[(r + i) % d]).collect();
            let bwd: Vec<bool> = (0..d).map(|i| self.leaf[(r + d - i) % d]).collect();
            best = best.min(fwd).min(bwd);
        }
        HubLayout::new(best)
    }
}

impl fmt::Display for HubLayout {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let runs: Vec<String> = self.runs().iter().map(usize::to_string).collect();
        write!(f, "d={} runs={}", self.degree(), runs.join("+"))
    }
}

/// All ways to place `d - 3` leaves and three separators on a `d`-cycle, one
/// per dihedral class.
pub fn hub_layouts(d: usize) -> Vec<HubLayout> {
    let mut seen = BTreeSet::new();
    for a in 0..d {
        for b in a + 1..d {
            for c in b + 1..d {
                let leaf = (0..d).map(|p| p != a && p != b && p != c).collect();
                seen.insert(HubLayout::new(leaf).canonical());
            }
        }
    }
    seen.into_iter().collect()
}

/// Hub degrees the validator certifies for VirtualHub entries.
pub const HUB_DEGREES: std::ops::RangeInclusive<usize> = 8..=12;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Outcome {
    /// Peel order by template index (for hub layouts, the number of
    /// separator/blocking cases checked).
    Pass(Vec<usize>),
    Fail(String),
    /// The scenario needs a blocked vertex that has no halfedge.
    Unreachable,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Scenario {
    pub name: String,
    pub outcome: Outcome,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValidationReport {
    pub entry: String,
    pub scenarios: Vec<Scenario>,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.scenarios.iter().all(|s| !matches!(s.outcome, Outcome::Fail(_)))
    }

    pub fn first_failure(&self) -> Option<&Scenario> {
        self.scenarios.iter().find(|s| matches!(s.outcome, Outcome::Fail(_)))
    }

    pub fn reachable(&self) -> impl Iterator<Item = &Scenario> {
        self.scenarios.iter().filter(|s| s.outcome != Outcome::Unreachable)
    }
}

/// Runs every scenario of `spec`.
pub fn validate_entry(spec: &ConfigurationSpec) -> ValidationReport {
    let mut scenarios = Vec::new();
    if let Err(detail) = check_structure(spec) {
        scenarios.push(Scenario { name: "structure".into(), outcome: Outcome::Fail(detail) });
        return ValidationReport { entry: spec.id.clone(), scenarios };
    }
    match &spec.scheme {
        Scheme::PlainZero => {
            let cap = spec.vertices[0].cap;
            let outcome = if cap <= 4 { Outcome::Pass(vec![0]) } else { Outcome::Fail(format!("cap {cap} > 4")) };
            scenarios.push(Scenario { name: "cap<=4".into(), outcome });
        }
        Scheme::TrialSequence(trial) => scenarios = trial_scenarios(&spec.h_graph(), trial),
        Scheme::VirtualHub => {
            for d in HUB_DEGREES {
                for layout in hub_layouts(d) {
                    scenarios.push(Scenario { name: layout.to_string(), outcome: validate_layout(&layout) });
                }
            }
        }
        Scheme::NinePattern => {
            let layout = HubLayout::nine_pattern();
            scenarios.push(Scenario { name: layout.to_string(), outcome: validate_layout(&layout) });
        }
    }
    ValidationReport { entry: spec.id.clone(), scenarios }
}

/// [`validate_entry`] as a `Result`, failing on the first bad scenario.
pub fn check_entry(spec: &ConfigurationSpec) -> Result<ValidationReport> {
    let report = validate_entry(spec);
    if let Some(s) = report.first_failure() {
        let Outcome::Fail(detail) = &s.outcome else { unreachable!() };
        return Err(Error::ValidationFailure {
            entry: spec.id.clone(),
            scenario: s.name.clone(),
            detail: detail.clone(),
        });
    }
    Ok(report)
}

fn check_structure(spec: &ConfigurationSpec) -> std::result::Result<(), String> {
    let n = spec.len();
    if n == 0 {
        return Err("empty template".into());
    }
    if spec.vertices[0].place != Place::Anchor {
        return Err("vertex 0 must be the anchor".into());
    }
    for (i, t) in spec.vertices.iter().enumerate().skip(1) {
        match t.place {
            Place::Anchor => return Err(format!("second anchor at {i}")),
            Place::Link { from, via, .. } => {
                if from >= i || via.is_some_and(|w| w >= i) {
                    return Err(format!("vertex {i} placed from a later vertex"));
                }
                if via.is_none() && from != 0 {
                    return Err(format!("vertex {i} uses the offset away from the anchor"));
                }
            }
        }
    }
    let mut seen = BTreeSet::new();
    for &(a, b) in &spec.edges {
        if a >= n || b >= n || a == b || !seen.insert((a.min(b), a.max(b))) {
            return Err(format!("bad edge {a}-{b}"));
        }
    }
    let h = spec.h_graph();
    if let Some(v) = (0..n).find(|&v| h.adj[v].len() > h.caps[v]) {
        return Err(format!("vertex {v} has more template edges than its cap"));
    }
    if let Scheme::TrialSequence(trial) = &spec.scheme {
        if n < 6 {
            return Err(format!("trial sequence on {n} < 6 vertices"));
        }
        let distinct: BTreeSet<_> = trial.iter().collect();
        if trial.is_empty() || distinct.len() != trial.len() || trial.iter().any(|&v| v >= n) {
            return Err("malformed trial sequence".into());
        }
    }
    Ok(())
}

/// Scenario `i`: trial vertices before `i` are each lowered by exactly one,
/// vertex `i` takes the fifth color. The last scenario blocks every trial
/// vertex and uses no fifth color.
fn trial_scenarios(h: &HGraph, trial: &[usize]) -> Vec<Scenario> {
    let mut out = Vec::new();
    let mut lowering = vec![0; h.len()];
    let mut reachable = true;
    for (i, &v) in trial.iter().enumerate() {
        let name = format!("t{}:v{}", i + 1, v);
        if !reachable {
            out.push(Scenario { name, outcome: Outcome::Unreachable });
            continue;
        }
        let outcome = match blocked_peel(h, &[v], &lowering) {
            Ok(order) => Outcome::Pass(order),
            Err(stuck) => Outcome::Fail(format!("fifth v{v}: {stuck}")),
        };
        out.push(Scenario { name, outcome });
        if h.halfedges(v) == 0 {
            reachable = false;
        }
        lowering[v] = 1;
    }
    let outcome = if reachable {
        match blocked_peel(h, &[], &lowering) {
            Ok(order) => Outcome::Pass(order),
            Err(stuck) => Outcome::Fail(format!("no fifth: {stuck}")),
        }
    } else {
        Outcome::Unreachable
    };
    out.push(Scenario { name: "all-blocked".into(), outcome });
    out
}

/// Case analysis of a hub layout. For every set `S` of separators carrying
/// the fifth color and every set `B` of leaves with a further fifth-colored
/// neighbor, some option (hub, an unblocked leaf, or no fifth vertex) must
/// peel.
pub fn validate_layout(layout: &HubLayout) -> Outcome {
    let d = layout.degree();
    let h = layout.h_graph();
    let leaves = layout.leaf_positions();
    let seps = layout.separator_positions();
    let sep_touch: Vec<Vec<usize>> = seps
        .iter()
        .map(|&s| {
            leaves
                .iter()
                .enumerate()
                .filter(|&(_, &p)| p == (s + 1) % d || (p + 1) % d == s)
                .map(|(i, _)| i + 1)
                .collect()
        })
        .collect();
    let mut cases = 0usize;
    for s_mask in 0u32..(1 << seps.len()) {
        for b_mask in 0u32..(1 << leaves.len()) {
            cases += 1;
            let mut lowering = vec![0; h.len()];
            lowering[0] = s_mask.count_ones() as usize;
            for (k, touched) in sep_touch.iter().enumerate() {
                if s_mask >> k & 1 == 1 {
                    for &l in touched {
                        lowering[l] += 1;
                    }
                }
            }
            for l in 0..leaves.len() {
                if b_mask >> l & 1 == 1 {
                    lowering[l + 1] += 1;
                }
            }
            let options = (0..h.len()).filter(|&v| lowering[v] == 0).map(Some).chain([None]);
            let ok = options.into_iter().any(|o| blocked_peel(&h, o.as_slice(), &lowering).is_ok());
            if !ok {
                return Outcome::Fail(format!("separators {s_mask:#b} leaves {b_mask:#b}: no option peels"));
            }
        }
    }
    Outcome::Pass(vec![cases])
}

struct Builder {
    vertices: Vec<TemplateVertex>,
    edges: Vec<(usize, usize)>,
}

impl Builder {
    fn new(anchor_cap: usize) -> Self {
        Builder { vertices: vec![TemplateVertex { cap: anchor_cap, place: Place::Anchor }], edges: Vec::new() }
    }

    fn at(&mut self, step: isize, cap: usize) -> usize {
        self.link(0, None, step, cap)
    }

    fn link(&mut self, from: usize, via: Option<usize>, step: isize, cap: usize) -> usize {
        self.vertices.push(TemplateVertex { cap, place: Place::Link { from, via, step } });
        self.vertices.len() - 1
    }

    fn edges(&mut self, pairs: &[(usize, usize)]) {
        self.edges.extend_from_slice(pairs);
    }

    fn done(self, id: String, family: Family, scheme: Scheme) -> ConfigurationSpec {
        ConfigurationSpec { id, family, vertices: self.vertices, edges: self.edges, scheme }
    }
}

/// Wheel around an anchor of exact degree `d`: spokes to every placed link
/// vertex and rim edges between cyclically consecutive positions.
fn wheel(anchor_cap: usize, rim: &[(isize, usize)]) -> Builder {
    let mut b = Builder::new(anchor_cap);
    let d = anchor_cap as isize;
    for &(pos, cap) in rim {
        let i = b.at(pos, cap);
        b.edges(&[(0, i)]);
    }
    for i in 0..rim.len() {
        for j in i + 1..rim.len() {
            let diff = (rim[i].0 - rim[j].0).rem_euclid(d);
            if diff == 1 || diff == d - 1 {
                b.edges(&[(i + 1, j + 1)]);
            }
        }
    }
    b
}

fn mirror_suffix(sign: isize) -> &'static str {
    if sign > 0 {
        ""
    } else {
        ".m"
    }
}

fn family_f2() -> Vec<ConfigurationSpec> {
    // Rim caps by link position, and the trial sequence by template index
    // (rim vertex at position k is template vertex k + 1).
    let arrangements: [(&str, [usize; 5], [usize; 4]); 4] = [
        ("F2.adj", [8, 7, 6, 6, 6], [1, 2, 3, 0]),
        ("F2.adj.m", [8, 6, 6, 6, 7], [1, 5, 4, 0]),
        ("F2.sep", [8, 6, 7, 6, 6], [1, 3, 2, 0]),
        ("F2.sep.m", [8, 6, 6, 7, 6], [1, 4, 5, 0]),
    ];
    arrangements
        .iter()
        .map(|(id, caps, trial)| {
            let rim: Vec<(isize, usize)> = caps.iter().enumerate().map(|(k, &c)| (k as isize, c)).collect();
            wheel(5, &rim).done(id.to_string(), Family::F2, Scheme::TrialSequence(trial.to_vec()))
        })
        .collect()
}

fn family_f3() -> Vec<ConfigurationSpec> {
    let pairs = [(2, 3), (2, 4), (2, 5), (3, 4), (3, 5), (4, 5)];
    pairs
        .iter()
        .map(|&(p, q)| {
            let b = wheel(7, &[(0, 8), (1, 5), (-1, 5), (p, 5), (q, 5)]);
            let h = HGraph::new(b.vertices.iter().map(|t| t.cap).collect(), &b.edges);
            let third =
                (2..6).find(|&v| h.adj[v].iter().any(|&u| u != 0 && h.caps[u] == 5)).expect("two link-adjacent fives");
            b.done(format!("F3.p{p}{q}"), Family::F3, Scheme::TrialSequence(vec![1, 0, third]))
        })
        .collect()
}

fn family_f4() -> Vec<ConfigurationSpec> {
    let mut out = Vec::new();
    for sign in [1isize, -1] {
        for (s, cap) in [(1isize, 7usize), (2, 6), (3, 7)] {
            let mut b = wheel(7, &[(0, 5), (sign, 5), (2 * sign, 5), (3 * sign, 5)]);
            let v6 = b.link(1, Some(0), sign * s, cap);
            b.edges(&[(1, v6)]);
            match s {
                1 => b.edges(&[(0, v6)]),
                3 => b.edges(&[(2, v6)]),
                _ => {}
            }
            out.push(b.done(
                format!("F4.s{s}{}", mirror_suffix(sign)),
                Family::F4,
                Scheme::TrialSequence(vec![v6, 0, 1]),
            ));
        }
    }
    out
}

fn family_f5() -> Vec<ConfigurationSpec> {
    let mut out = Vec::new();
    for sign in [1isize, -1] {
        for seven in 1..=4usize {
            let rim: Vec<(isize, usize)> =
                (1..=4).map(|k| ((k as isize - 1) * sign, if k == seven { 7 } else { 6 })).collect();
            let mut b = wheel(5, &rim);
            let f = b.link(1, Some(0), 2 * sign, 5);
            b.edges(&[(1, f)]);
            let partner = if seven == 1 { 2 } else { seven - 1 };
            out.push(b.done(
                format!("F5.a{seven}{}", mirror_suffix(sign)),
                Family::F5,
                Scheme::TrialSequence(vec![seven, partner, 0]),
            ));
        }
    }
    out
}

fn family_f6() -> Vec<ConfigurationSpec> {
    let mut out = Vec::new();
    for sign in [1isize, -1] {
        let rim = [(0, 6), (sign, 6), (2 * sign, 6), (3 * sign, 5)];
        let mut a = wheel(5, &rim);
        let z = a.link(4, Some(0), 2 * sign, 6);
        a.edges(&[(4, z), (3, z)]);
        out.push(a.done(format!("F6.a{}", mirror_suffix(sign)), Family::F6, Scheme::TrialSequence(vec![1, 0])));

        let mut b = wheel(5, &rim);
        let v7 = b.link(4, Some(0), -2 * sign, 6);
        b.edges(&[(4, v7)]);
        out.push(b.done(format!("F6.b{}", mirror_suffix(sign)), Family::F6, Scheme::TrialSequence(vec![v7, 4])));
    }
    out
}

fn family_f8() -> ConfigurationSpec {
    let rim: Vec<(isize, usize)> = [0, 1, 2, 5, 6].iter().map(|&p| (p, 5)).collect();
    wheel(9, &rim).done("F8".into(), Family::F8, Scheme::NinePattern)
}

/// Builds the full catalog, every oriented variant as its own entry.
pub fn builtin_catalog() -> Vec<ConfigurationSpec> {
    let mut out = vec![Builder::new(4).done("F1".into(), Family::F1, Scheme::PlainZero)];
    out.extend(family_f2());
    out.extend(family_f3());
    out.extend(family_f4());
    out.extend(family_f5());
    out.extend(family_f6());
    out.push(Builder::new(8).done("F7".into(), Family::F7, Scheme::VirtualHub));
    out.push(family_f8());
    out
}

/// Shared copy of [`builtin_catalog`].
pub fn builtin() -> &'static [ConfigurationSpec] {
    static CATALOG: OnceLock<Vec<ConfigurationSpec>> = OnceLock::new();
    CATALOG.get_or_init(builtin_catalog)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashMap;

    fn entry(id: &str) -> ConfigurationSpec {
        builtin_catalog().into_iter().find(|e| e.id == id).unwrap()
    }

    /// Exhaustive search over deletion orders: does any order peel `h`?
    fn any_order_peels(h: &HGraph, deleted: &[usize], lowering: &[usize]) -> bool {
        fn go(h: &HGraph, gone: u32, low: &[usize], memo: &mut HashMap<u32, bool>) -> bool {
            let n = h.len();
            if gone == (1u32 << n) - 1 {
                return true;
            }
            if let Some(&r) = memo.get(&gone) {
                return r;
            }
            let r = (0..n).any(|v| {
                gone >> v & 1 == 0 && {
                    let lost = h.adj[v].iter().filter(|&&u| gone >> u & 1 == 1).count();
                    h.caps[v].saturating_sub(lost + low[v]) <= 4 && go(h, gone | 1 << v, low, memo)
                }
            });
            memo.insert(gone, r);
            r
        }
        let start = deleted.iter().fold(0u32, |m, &v| m | 1 << v);
        go(h, start, lowering, &mut HashMap::new())
    }

    #[test]
    fn family_counts() {
        let cat = builtin_catalog();
        let count = |f: Family| cat.iter().filter(|e| e.family == f).count();
        assert_eq!(count(Family::F1), 1);
        assert_eq!(count(Family::F2), 4);
        // four cases up to reflection, six oriented
        assert_eq!(count(Family::F3), 6);
        assert_eq!(count(Family::F4), 6);
        assert_eq!(count(Family::F5), 8);
        assert_eq!(count(Family::F6), 4);
        assert_eq!(count(Family::F7), 1);
        assert_eq!(count(Family::F8), 1);
        let ids: BTreeSet<_> = cat.iter().map(|e| e.id.clone()).collect();
        assert_eq!(ids.len(), cat.len());
    }

    #[test]
    fn every_entry_passes() {
        for e in builtin_catalog() {
            let report = validate_entry(&e);
            assert!(report.passed(), "{}: {:?}", e.id, report.first_failure());
            assert!(check_entry(&e).is_ok());
        }
    }

    #[test]
    fn f2_has_four_reachable_scenarios() {
        for id in ["F2.adj", "F2.adj.m", "F2.sep", "F2.sep.m"] {
            let r = validate_entry(&entry(id));
            let names: Vec<_> = r.scenarios.iter().map(|s| (s.name.as_str(), &s.outcome)).collect();
            assert_eq!(r.reachable().count(), 4, "{names:?}");
            assert_eq!(r.scenarios.last().unwrap().outcome, Outcome::Unreachable);
        }
        // separated arrangement, cap-8 vertex fifth: hub first, then the rim
        let r = validate_entry(&entry("F2.sep"));
        assert_eq!(r.scenarios[0].outcome, Outcome::Pass(vec![0, 2, 5, 4, 3]));
    }

    #[test]
    fn broken_plain_entry_fails() {
        let bad = Builder::new(9).done("bad".into(), Family::F1, Scheme::PlainZero);
        assert!(!validate_entry(&bad).passed());
        assert!(matches!(check_entry(&bad), Err(Error::ValidationFailure { .. })));
    }

    #[test]
    fn short_trial_entry_is_malformed() {
        let mut b = wheel(5, &[(0, 5), (1, 5)]);
        b.edges(&[]);
        let e = b.done("short".into(), Family::F2, Scheme::TrialSequence(vec![1]));
        assert_eq!(validate_entry(&e).scenarios[0].name, "structure");
    }

    #[test]
    fn peel_basics() {
        let path = HGraph::new(vec![4, 4, 4], &[(0, 1), (1, 2)]);
        assert_eq!(blocked_peel(&path, &[], &[0, 0, 0]), Ok(vec![0, 1, 2]));
        let single = HGraph::new(vec![5], &[]);
        assert!(blocked_peel(&single, &[], &[0]).is_err());
        assert_eq!(blocked_peel(&single, &[], &[1]), Ok(vec![0]));

        // wheel minus the cap-8 rim vertex: everything else peels
        let e = entry("F2.sep");
        assert!(blocked_peel(&e.h_graph(), &[1], &[0; 6]).is_ok());
    }

    #[test]
    fn hub_layout_splits() {
        for d in 8..=10 {
            let layouts = hub_layouts(d);
            let comps: BTreeSet<usize> = layouts.iter().map(|l| l.runs().len()).collect();
            assert_eq!(comps, BTreeSet::from([1, 2, 3]), "d={d}");
            for l in &layouts {
                assert_eq!(l.leaf_positions().len(), d - 3);
                assert!(matches!(validate_layout(l), Outcome::Pass(_)), "{l}");
            }
        }
        // d = 8 with components {3, 2}: leaves 0..3 and 4..6
        let l = HubLayout::new(vec![true, true, true, false, true, true, false, false]);
        assert_eq!(l.canonical().runs().len(), 2);
        assert!(matches!(validate_layout(&l), Outcome::Pass(_)));
        assert_eq!(HubLayout::nine_pattern().runs(), vec![2, 3]);
    }

    #[test]
    fn virtual_hub_instance() {
        let f7 = entry("F7");
        let l = f7.instantiate(8).unwrap();
        assert_eq!(l.leaf_positions().len(), 5);
        assert_eq!(l.h_graph().len(), 6);
        assert_eq!(l.h_graph().caps[0], 8);
        assert!(f7.instantiate(7).is_none());
    }

    #[test]
    fn greedy_agrees_with_exhaustive_search() {
        for e in builtin_catalog() {
            let Scheme::TrialSequence(trial) = &e.scheme else { continue };
            let h = e.h_graph();
            let n = h.len();
            // every fifth choice and every lowering vector in {0, 1}^n
            for fifth in (0..n).map(Some).chain([None]) {
                for mask in 0u32..(1 << n) {
                    let low: Vec<usize> = (0..n).map(|v| (mask >> v & 1) as usize).collect();
                    let del: Vec<usize> = fifth.into_iter().collect();
                    assert_eq!(
                        blocked_peel(&h, &del, &low).is_ok(),
                        any_order_peels(&h, &del, &low),
                        "{} fifth {fifth:?} mask {mask:b}",
                        e.id
                    );
                }
            }
            let _ = trial;
        }
    }

    #[test]
    fn dominance_lowering_a_cap_still_passes() {
        for e in builtin_catalog() {
            if !matches!(e.scheme, Scheme::TrialSequence(_)) {
                continue;
            }
            let h = e.h_graph();
            for v in 0..e.len() {
                if e.vertices[v].cap > h.adj[v].len() {
                    let mut lower = e.clone();
                    lower.vertices[v].cap -= 1;
                    assert!(validate_entry(&lower).passed(), "{} cap of v{v}", e.id);
                }
            }
        }
    }

    #[test]
    fn halfedge_counts_add_up() {
        for e in builtin_catalog() {
            let h = e.h_graph();
            for v in 0..e.len() {
                assert_eq!(e.vertices[v].cap, h.adj[v].len() + e.halfedges(v), "{}", e.id);
            }
        }
    }
}
