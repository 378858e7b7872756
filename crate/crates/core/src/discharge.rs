//! Exact discharging: every vertex starts with charge `6 - deg(v)`, which
//! sums to 12 on a triangulation, and Rules A and B move charge locally.

use std::collections::BTreeMap;

use num_rational::Ratio;
use num_traits::{One, Zero};

use crate::embedding::EmbeddedGraph;
use crate::error::{Error, Result};

pub type Rational = Ratio<i64>;

/// Every charge and transfer denominator divides this.
pub const DENOMINATOR_BOUND: i64 = 360;

fn q(n: i64, d: i64) -> Rational {
    Rational::new(n, d)
}

/// Transfers `c(v, u)` and the resulting charges.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ChargeLedger {
    pub initial: BTreeMap<usize, Rational>,
    /// Nonzero transfers keyed by `(from, to)`.
    pub transfers: BTreeMap<(usize, usize), Rational>,
}

impl ChargeLedger {
    pub fn transfer(&self, from: usize, to: usize) -> Rational {
        self.transfers.get(&(from, to)).copied().unwrap_or_else(Rational::zero)
    }

    pub fn sent(&self, v: usize) -> Rational {
        self.transfers.range((v, 0)..(v + 1, 0)).map(|(_, &x)| x).sum()
    }
}

fn degree_counts(g: &EmbeddedGraph, v: usize) -> (i64, i64, Vec<usize>) {
    let (mut n7, mut n8, mut n9) = (0, 0, Vec::new());
    for &u in g.rotation(v) {
        match g.degree(u) {
            7 => n7 += 1,
            8 => n8 += 1,
            d if d >= 9 => n9.push(u),
            _ => {}
        }
    }
    (n7, n8, n9)
}

/// Rule A from a degree-5 vertex `v`: 1/3 to each degree-7 neighbor, 1/2 to
/// each degree-8 neighbor, and `max(1/3, r / |N9+|)` to each neighbor of
/// degree at least 9, where `r = 1 - |N7|/3 - |N8|/2`.
fn rule_a(g: &EmbeddedGraph, v: usize, out: &mut Vec<(usize, usize, Rational)>) {
    let (n7, n8, n9) = degree_counts(g, v);
    let r = Rational::one() - q(n7, 3) - q(n8, 2);
    let big = if n9.is_empty() { Rational::zero() } else { (r / n9.len() as i64).max(q(1, 3)) };
    for &u in g.rotation(v) {
        let x = match g.degree(u) {
            7 => q(1, 3),
            8 => q(1, 2),
            d if d >= 9 => big,
            _ => continue,
        };
        out.push((v, u, x));
    }
}

/// Rule B from a degree-7 vertex with exactly four degree-5 neighbors: if
/// they run consecutively around the link, 1/6 to each end of the run;
/// otherwise 1/3 to each degree-9+ neighbor flanked on the link by two
/// degree-5 vertices.
fn rule_b(g: &EmbeddedGraph, v: usize, out: &mut Vec<(usize, usize, Rational)>) {
    let link = g.rotation(v);
    let d = link.len();
    let five: Vec<bool> = link.iter().map(|&u| g.degree(u) == 5).collect();
    if five.iter().filter(|&&b| b).count() != 4 {
        return;
    }
    let start = (0..d).find(|&i| five[i] && !five[(i + d - 1) % d]);
    let is_path = start.is_some_and(|s| (0..4).all(|k| five[(s + k) % d]));
    if let (true, Some(s)) = (is_path, start) {
        out.push((v, link[s], q(1, 6)));
        out.push((v, link[(s + 3) % d], q(1, 6)));
    } else {
        for i in 0..d {
            if g.degree(link[i]) >= 9 && five[(i + d - 1) % d] && five[(i + 1) % d] {
                out.push((v, link[i], q(1, 3)));
            }
        }
    }
}

/// Transfers sent by `v` alone.
pub fn transfers_from(g: &EmbeddedGraph, v: usize) -> Vec<(usize, usize, Rational)> {
    let mut out = Vec::new();
    match g.degree(v) {
        5 => rule_a(g, v, &mut out),
        7 => rule_b(g, v, &mut out),
        _ => {}
    }
    out
}

/// All transfers of a triangulation.
pub fn transfers(g: &EmbeddedGraph) -> ChargeLedger {
    let verts: Vec<usize> = g.vertices().collect();
    let per_vertex = crate::par::map(&verts, |&v| transfers_from(g, v));
    let mut ledger = ChargeLedger::default();
    for &v in &verts {
        ledger.initial.insert(v, Rational::from_integer(6 - g.degree(v) as i64));
    }
    for (v, u, x) in per_vertex.into_iter().flatten() {
        *ledger.transfers.entry((v, u)).or_insert_with(Rational::zero) += x;
    }
    ledger
}

/// `c(v) = (6 - deg v) - sum_u (c(v, u) - c(u, v))`, checked to sum to 12
/// and to have denominators dividing 360.
pub fn final_charges(ledger: &ChargeLedger) -> Result<BTreeMap<usize, Rational>> {
    let mut charge = ledger.initial.clone();
    for (&(v, u), &x) in &ledger.transfers {
        *charge.get_mut(&v).expect("sender is a vertex") -= x;
        *charge.get_mut(&u).expect("receiver is a vertex") += x;
    }
    let total: Rational = charge.values().copied().sum();
    let odd_denominator = ledger.transfers.values().chain(charge.values()).find(|x| DENOMINATOR_BOUND % x.denom() != 0);
    if let Some(x) = odd_denominator {
        return Err(Error::SumMismatch { found: format!("{total} (denominator of {x} does not divide 360)") });
    }
    if total != Rational::from_integer(12) {
        return Err(Error::SumMismatch { found: total.to_string() });
    }
    Ok(charge)
}

/// Outcome of [`audit`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AuditReport {
    pub sum: Rational,
    pub charges: BTreeMap<usize, Rational>,
    /// Vertices with positive final charge, ascending.
    pub positive: Vec<usize>,
    /// Minimum degree at least five and no configuration matched: the listed
    /// positive vertices are where one should have been found.
    pub inconsistency: Option<Vec<usize>>,
}

/// Charges of `g` plus the consistency flag against the matcher's verdict.
pub fn audit(g: &EmbeddedGraph, matched: bool) -> Result<AuditReport> {
    let charges = final_charges(&transfers(g))?;
    let sum = charges.values().copied().sum();
    let positive: Vec<usize> = charges.iter().filter(|(_, x)| **x > Rational::zero()).map(|(&v, _)| v).collect();
    let min5 = g.min_degree().is_some_and(|d| d >= 5);
    let inconsistency = (min5 && !matched).then(|| positive.clone());
    Ok(AuditReport { sum, charges, positive, inconsistency })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instances::{generate, hub_with_link, named, GenSpec};

    #[test]
    fn rule_a_seven_seven_seven_nine_nine() {
        let t = hub_with_link(&[7, 7, 7, 9, 9]);
        assert_eq!(t.degree(0), 5);
        let out = transfers_from(&t, 0);
        let to = |u: usize| out.iter().find(|x| x.1 == u).unwrap().2;
        assert_eq!(to(1), q(1, 3));
        assert_eq!(to(4), q(1, 3));
        assert_eq!(to(5), q(1, 3));
        let total: Rational = out.iter().map(|x| x.2).sum();
        assert_eq!(total, q(5, 3));
    }

    #[test]
    fn rule_a_shares_remainder() {
        // one 7 and two 9s: r = 2/3, each 9 gets max(1/3, 1/3) = 1/3
        let t = hub_with_link(&[7, 6, 9, 6, 9]);
        let out = transfers_from(&t, 0);
        assert_eq!(out.iter().filter(|x| x.2 == q(1, 3)).count(), 3);
        // a lone 9: r = 1
        let t = hub_with_link(&[6, 6, 9, 6, 6]);
        assert_eq!(transfers_from(&t, 0), vec![(0, 3, q(1, 1))]);
    }

    #[test]
    fn rule_b_path_sends_sixths() {
        let t = hub_with_link(&[5, 5, 5, 5, 9, 6, 9]);
        let out = transfers_from(&t, 0);
        assert_eq!(out, vec![(0, 1, q(1, 6)), (0, 4, q(1, 6))]);
    }

    #[test]
    fn rule_b_split_sends_thirds_to_flanked() {
        // fives at 0, 1, 3, 5; 9s at 2 (flanked) and 4 (flanked), 6 not flanked
        let t = hub_with_link(&[5, 5, 9, 5, 9, 5, 6]);
        let out = transfers_from(&t, 0);
        assert_eq!(out, vec![(0, 3, q(1, 3)), (0, 5, q(1, 3))]);
    }

    #[test]
    fn platonic_charges() {
        let ico = named("icosahedron").unwrap();
        let l = transfers(&ico);
        assert!(l.transfers.is_empty());
        let c = final_charges(&l).unwrap();
        assert!(c.values().all(|&x| x == Rational::one()));

        let oct = named("octahedron").unwrap();
        let c = final_charges(&transfers(&oct)).unwrap();
        assert!(c.values().all(|&x| x == q(2, 1)));
        assert_eq!(c.len(), 6);
    }

    #[test]
    fn generated_sums_are_twelve() {
        for seed in 1..10 {
            let t = generate(GenSpec::new(seed, 300, 900).shaped());
            let c = final_charges(&transfers(&t)).unwrap();
            assert_eq!(c.values().copied().sum::<Rational>(), q(12, 1));
        }
    }

    #[test]
    fn final_formula_matches_per_vertex() {
        let t = generate(GenSpec::new(5, 200, 600).shaped());
        let l = transfers(&t);
        let c = final_charges(&l).unwrap();
        for v in t.vertices() {
            let mut x = Rational::from_integer(6 - t.degree(v) as i64);
            for &u in t.rotation(v) {
                x -= l.transfer(v, u) - l.transfer(u, v);
            }
            assert_eq!(c[&v], x);
        }
    }

    #[test]
    fn audit_flags() {
        let ico = named("icosahedron").unwrap();
        let r = audit(&ico, true).unwrap();
        assert_eq!(r.positive.len(), 12);
        assert!(r.inconsistency.is_none());
        assert_eq!(r.sum, q(12, 1));
        let r = audit(&ico, false).unwrap();
        assert_eq!(r.inconsistency, Some((0..12).collect()));
        let oct = named("octahedron").unwrap();
        assert!(audit(&oct, false).unwrap().inconsistency.is_none());
    }

    #[test]
    fn corrupted_ledger_trips() {
        let ico = named("icosahedron").unwrap();
        let mut l = transfers(&ico);
        l.initial.insert(0, q(2, 1));
        assert!(matches!(final_charges(&l), Err(Error::SumMismatch { .. })));
    }
}
