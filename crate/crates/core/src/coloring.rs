//! Partial vertex colorings with tracked class sizes, and the final check.

use crate::embedding::EmbeddedGraph;

/// Colors `1..=5` by vertex id; `None` means uncolored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Coloring {
    colors: Vec<u8>,
    sizes: [usize; 6],
}

impl Coloring {
    /// All `n` ids uncolored.
    pub fn new(n: usize) -> Self {
        Coloring { colors: vec![0; n], sizes: [n, 0, 0, 0, 0, 0] }
    }

    /// From raw colors, 0 meaning uncolored. Colors above 5 are rejected.
    pub fn from_colors(colors: Vec<u8>) -> Option<Self> {
        let mut sizes = [0; 6];
        for &c in &colors {
            *sizes.get_mut(c as usize)? += 1;
        }
        Some(Coloring { colors, sizes })
    }

    pub fn len(&self) -> usize {
        self.colors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.colors.is_empty()
    }

    pub fn get(&self, v: usize) -> Option<u8> {
        match self.colors[v] {
            0 => None,
            c => Some(c),
        }
    }

    pub fn set(&mut self, v: usize, c: u8) {
        assert!((1..=5).contains(&c), "color {c} out of range");
        self.sizes[self.colors[v] as usize] -= 1;
        self.sizes[c as usize] += 1;
        self.colors[v] = c;
    }

    pub fn clear(&mut self, v: usize) {
        self.sizes[self.colors[v] as usize] -= 1;
        self.sizes[0] += 1;
        self.colors[v] = 0;
    }

    /// Size of class `c`; class 0 counts uncolored ids.
    pub fn class_size(&self, c: u8) -> usize {
        self.sizes[c as usize]
    }

    pub fn fifth_class_size(&self) -> usize {
        self.sizes[5]
    }

    pub fn fifth_class(&self) -> Vec<usize> {
        (0..self.colors.len()).filter(|&v| self.colors[v] == 5).collect()
    }

    pub fn raw(&self) -> &[u8] {
        &self.colors
    }
}

/// Outcome of [`check_coloring`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ColoringReport {
    pub n: usize,
    pub fifth: usize,
    /// Edges `(u, v)`, `u < v`, whose ends share a color.
    pub violations: Vec<(usize, usize)>,
    /// Live vertices without a color.
    pub uncolored: Vec<usize>,
}

impl ColoringReport {
    pub fn proper(&self) -> bool {
        self.violations.is_empty() && self.uncolored.is_empty()
    }

    pub fn bound_ok(&self) -> bool {
        6 * self.fifth <= self.n
    }
}

/// Checks properness on every edge of `g` and the bound `6 |V5| <= n`.
pub fn check_coloring(g: &EmbeddedGraph, col: &Coloring) -> ColoringReport {
    let color = |v: usize| if v < col.len() { col.get(v) } else { None };
    let violations = g.edges().into_iter().filter(|&(u, v)| color(u).is_some() && color(u) == color(v)).collect();
    let uncolored = g.vertices().filter(|&v| color(v).is_none()).collect();
    let fifth = g.vertices().filter(|&v| color(v) == Some(5)).count();
    ColoringReport { n: g.vertex_count(), fifth, violations, uncolored }
}

/// True when no edge among colored vertices joins equal colors.
pub fn is_proper_partial(g: &EmbeddedGraph, col: &Coloring) -> bool {
    g.vertices().all(|v| match col.get(v) {
        None => true,
        Some(c) => g.rotation(v).iter().all(|&u| col.get(u) != Some(c)),
    })
}
