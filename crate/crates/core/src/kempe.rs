//! Two-color Kempe chains over colors 1..4.
//!
//! The fifth color never takes part in a chain: asking for a pair that
//! contains it is an error, so swaps cannot change the fifth class.

use std::collections::HashSet;

use crate::coloring::Coloring;
use crate::embedding::EmbeddedGraph;
use crate::error::{Error, Result};

/// A connected component of the subgraph induced by two color classes,
/// restricted to colored vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainView {
    pub pair: (u8, u8),
    pub anchor: usize,
    /// Members in discovery order.
    pub members: Vec<usize>,
}

impl ChainView {
    pub fn contains(&self, v: usize) -> bool {
        self.members.contains(&v)
    }
}

fn check_pair(a: u8, b: u8) -> Result<()> {
    if a == 5 || b == 5 || a == b || a == 0 || b == 0 || a > 5 || b > 5 {
        return Err(Error::BadColorPair(a, b));
    }
    Ok(())
}

/// The `{a, b}` chain through `start`.
pub fn chain(g: &EmbeddedGraph, col: &Coloring, start: usize, a: u8, b: u8) -> Result<ChainView> {
    check_pair(a, b)?;
    let in_pair = |v: usize| matches!(col.get(v), Some(c) if c == a || c == b);
    let mut members = Vec::new();
    if in_pair(start) {
        let mut seen = HashSet::from([start]);
        members.push(start);
        let mut i = 0;
        while i < members.len() {
            let u = members[i];
            i += 1;
            for &w in g.rotation(u) {
                if in_pair(w) && seen.insert(w) {
                    members.push(w);
                }
            }
        }
    }
    Ok(ChainView { pair: (a, b), anchor: start, members })
}

/// Exchanges the two colors on the chain's members.
pub fn swap(col: &mut Coloring, chain: &ChainView) {
    let (a, b) = chain.pair;
    for &v in &chain.members {
        match col.get(v) {
            Some(c) if c == a => col.set(v, b),
            Some(c) if c == b => col.set(v, a),
            other => panic!("vertex {v} with color {other:?} is not on a {a}/{b} chain"),
        }
    }
}

/// Result of [`free_color`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FreeColor {
    pub color: u8,
    /// Kempe swaps performed (0 or 1).
    pub swaps: usize,
}

/// A color in 1..4 that no neighbor of the uncolored vertex `v` uses, after
/// at most one Kempe swap. Neighbors that are uncolored or carry the fifth
/// color are ignored.
pub fn free_color(g: &EmbeddedGraph, col: &mut Coloring, v: usize) -> Result<FreeColor> {
    let mut w = Vec::with_capacity(4);
    let mut present = [false; 5];
    for &u in g.rotation(v) {
        match col.get(u) {
            Some(c) if c < 5 => {
                present[c as usize] = true;
                w.push(u);
            }
            _ => {}
        }
    }
    if let Some(c) = (1..=4u8).find(|&c| !present[c as usize]) {
        return Ok(FreeColor { color: c, swaps: 0 });
    }
    if w.len() > 4 {
        return Err(Error::TooManyColoredNeighbors { vertex: v });
    }
    let c: Vec<u8> = w.iter().map(|&u| col.get(u).unwrap()).collect();
    // Diagonal pairs (w1, w3) and (w2, w4) interleave around v, so planarity
    // forbids both from being chain-connected.
    for (x, y) in [(0, 2), (1, 3)] {
        let ch = chain(g, col, w[x], c[x], c[y])?;
        if !ch.contains(w[y]) {
            swap(col, &ch);
            return Ok(FreeColor { color: c[x], swaps: 1 });
        }
    }
    Err(Error::DiagonalContradiction { vertex: v })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coloring::is_proper_partial;

    fn path() -> EmbeddedGraph {
        EmbeddedGraph::build(vec![vec![1], vec![0, 2], vec![1]]).unwrap()
    }

    /// Every proper coloring of `g` with colors 1..=4 on the listed vertices
    /// (others fixed as in `base`).
    fn all_recolorings(g: &EmbeddedGraph, base: &Coloring, free: &[usize]) -> Vec<Vec<u8>> {
        let mut out = Vec::new();
        let total = 4usize.pow(free.len() as u32);
        for code in 0..total {
            let mut c = base.clone();
            let mut k = code;
            for &v in free {
                c.set(v, (k % 4) as u8 + 1);
                k /= 4;
            }
            if is_proper_partial(g, &c) {
                out.push(free.iter().map(|&v| c.get(v).unwrap()).collect());
            }
        }
        out
    }

    #[test]
    fn chains_on_a_path() {
        let g = path();
        let col = Coloring::from_colors(vec![1, 2, 1]).unwrap();
        assert_eq!(chain(&g, &col, 0, 1, 2).unwrap().members, vec![0, 1, 2]);
        assert_eq!(chain(&g, &col, 0, 1, 3).unwrap().members, vec![0]);
        assert_eq!(chain(&g, &col, 0, 2, 5), Err(Error::BadColorPair(2, 5)));
    }

    #[test]
    fn swaps() {
        let g = path();
        let mut col = Coloring::from_colors(vec![1, 2, 1]).unwrap();
        let ch = chain(&g, &col, 0, 1, 2).unwrap();
        swap(&mut col, &ch);
        assert_eq!(col.raw(), &[2, 1, 2]);
        swap(&mut col, &ch);
        assert_eq!(col.raw(), &[1, 2, 1]);

        let single = chain(&g, &col, 0, 1, 3).unwrap();
        swap(&mut col, &single);
        assert_eq!(col.raw(), &[3, 2, 1]);
    }

    #[test]
    fn three_colors_present() {
        // star: center 0, leaves colored 1, 2, 3
        let g = EmbeddedGraph::build(vec![vec![1, 2, 3], vec![0], vec![0], vec![0]]).unwrap();
        let mut col = Coloring::from_colors(vec![0, 1, 2, 3]).unwrap();
        assert_eq!(free_color(&g, &mut col, 0).unwrap(), FreeColor { color: 4, swaps: 0 });
    }

    /// W4 hub 0 with rim 1..=4 and an outer vertex 5 joined to the whole rim.
    fn wheel_gadget() -> EmbeddedGraph {
        EmbeddedGraph::from_triangles(
            6,
            &[[0, 1, 2], [0, 2, 3], [0, 3, 4], [0, 4, 1], [5, 2, 1], [5, 3, 2], [5, 4, 3], [5, 1, 4]],
        )
        .unwrap()
    }

    #[test]
    fn wheel_rim_singleton_chain() {
        // Rim colored 1..4 forces the outer vertex to color 5.
        let g = wheel_gadget();
        let mut col = Coloring::from_colors(vec![0, 1, 2, 3, 4, 5]).unwrap();
        // oracle: with the hub free, rim vertex 1 can move to 3 alone
        let base = col.clone();
        let options = all_recolorings(&g, &base, &[1]);
        assert_eq!(options, vec![vec![1], vec![3]]);

        let r = free_color(&g, &mut col, 0).unwrap();
        assert_eq!(r, FreeColor { color: 1, swaps: 1 });
        assert_eq!(&col.raw()[1..5], &[3, 2, 3, 4]);
        assert_eq!(col.fifth_class(), vec![5]);
        col.set(0, r.color);
        assert!(is_proper_partial(&g, &col));
    }

    #[test]
    fn second_diagonal_when_first_is_linked() {
        // Hub 0, rim 1..=4 colored 1..4; outer 5 (3) and 6 (1) link rim 1 to
        // rim 3 in colors {1, 3}; 7 closes the outside.
        let g = EmbeddedGraph::from_triangles(
            8,
            &[
                [0, 1, 2],
                [0, 2, 3],
                [0, 3, 4],
                [0, 4, 1],
                [5, 2, 1],
                [6, 3, 2],
                [5, 6, 2],
                [7, 4, 3],
                [7, 1, 4],
                [7, 3, 6],
                [7, 6, 5],
                [7, 5, 1],
            ],
        )
        .unwrap();
        let mut col = Coloring::from_colors(vec![0, 1, 2, 3, 4, 3, 1, 2]).unwrap();
        assert!(is_proper_partial(&g, &col));
        assert!(chain(&g, &col, 1, 1, 3).unwrap().contains(3));

        // oracle by exhaustive recoloring: rim 1 cannot change alone, rim 2
        // can move to 4
        let without = |v: usize| {
            let mut b = col.clone();
            b.clear(v);
            all_recolorings(&g, &b, &[v])
        };
        assert_eq!(without(1), vec![vec![1]]);
        assert_eq!(without(2), vec![vec![2], vec![4]]);

        let r = free_color(&g, &mut col, 0).unwrap();
        assert_eq!(r, FreeColor { color: 2, swaps: 1 });
        assert_eq!(col.get(2), Some(4));
        col.set(0, 2);
        assert!(is_proper_partial(&g, &col));
    }

    #[test]
    fn fifth_neighbors_are_ignored() {
        let g = wheel_gadget();
        let mut col = Coloring::from_colors(vec![0, 1, 2, 5, 3, 4]).unwrap();
        assert_eq!(free_color(&g, &mut col, 0).unwrap().color, 4);
    }
}
