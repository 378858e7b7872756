use fivecolor::coloring::is_proper_partial;
use fivecolor::discharge::{final_charges, transfers, transfers_from};
use fivecolor::instances::{generate, read_pg, write_pg, GenSpec};
use fivecolor::matcher::ball;
use fivecolor::{chain, check_coloring, color_planar, free_color, swap, EmbeddedGraph, Rational};
use proptest::prelude::*;

fn spec() -> impl Strategy<Value = GenSpec> {
    (any::<u64>(), 4usize..160, 0usize..500, any::<bool>()).prop_map(|(seed, n, flips, shaped)| {
        let s = GenSpec::new(seed, n, flips);
        if shaped {
            s.shaped()
        } else {
            s
        }
    })
}

/// A generated triangulation with a random subset of vertices removed.
fn punctured() -> impl Strategy<Value = (EmbeddedGraph, EmbeddedGraph, Vec<usize>)> {
    (spec(), prop::collection::vec(any::<prop::sample::Index>(), 0..20)).prop_map(|(s, picks)| {
        let g = generate(s).into_graph();
        let mut removed: Vec<usize> = picks.iter().map(|i| i.index(g.id_bound())).collect();
        removed.sort_unstable();
        removed.dedup();
        let h = g.remove_vertices(&removed);
        (g, h, removed)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn euler_counts(s in spec()) {
        let t = generate(s);
        let n = t.vertex_count();
        prop_assert_eq!(n, s.n);
        prop_assert!(t.validate().is_ok());
        prop_assert_eq!(t.edge_count(), 3 * n - 6);
        prop_assert_eq!(t.face_count(), 2 * n - 4);
        prop_assert!(t.min_degree().unwrap() >= 3);
    }

    #[test]
    fn generation_is_deterministic(s in spec()) {
        prop_assert_eq!(write_pg(&generate(s)), write_pg(&generate(s)));
    }

    #[test]
    fn pg_round_trip((_, h, _) in punctured()) {
        let text = write_pg(&h);
        let back = read_pg(&text).unwrap();
        prop_assert_eq!(write_pg(&back), text);
    }

    #[test]
    fn removal_lowers_degrees((g, h, removed) in punctured()) {
        for v in h.vertices() {
            let gone = g.rotation(v).iter().filter(|u| removed.contains(u)).count();
            prop_assert_eq!(h.degree(v), g.degree(v) - gone);
        }
        prop_assert_eq!(h.vertex_count(), g.vertex_count() - removed.len());
        prop_assert!(h.validate().is_ok());
    }

    #[test]
    fn single_hole_refills(s in spec(), pick in any::<prop::sample::Index>()) {
        prop_assume!(s.n >= 5);
        let g = generate(s).into_graph();
        let v = pick.index(g.id_bound());
        let h = g.remove_vertices(&[v]);
        let t = h.triangulate().unwrap();
        let n = t.vertex_count();
        prop_assert_eq!(t.edge_count(), 3 * n - 6);
        prop_assert_eq!(t.fill_edges().len(), g.degree(v) - 3);
        // a second pass adds nothing
        let again = t.graph().triangulate().unwrap();
        prop_assert!(again.fill_edges().is_empty());
        prop_assert_eq!(again.graph(), t.graph());
    }

    #[test]
    fn colorings_are_proper_and_bounded((_, h, _) in punctured()) {
        let col = color_planar(&h).unwrap();
        let r = check_coloring(&h, &col);
        prop_assert!(r.proper(), "violations {:?} uncolored {:?}", r.violations, r.uncolored);
        prop_assert!(r.bound_ok(), "{} fifth of {}", r.fifth, r.n);
    }

    #[test]
    fn swaps_keep_properness(s in spec(), pick in any::<prop::sample::Index>(), a in 1u8..5, b in 1u8..5) {
        prop_assume!(a != b);
        let g = generate(s).into_graph();
        let mut col = color_planar(&g).unwrap();
        let fifth = col.fifth_class();
        let v = pick.index(g.id_bound());
        let ch = chain(&g, &col, v, a, b).unwrap();
        swap(&mut col, &ch);
        prop_assert!(is_proper_partial(&g, &col));
        prop_assert_eq!(col.fifth_class(), fifth);
    }

    #[test]
    fn free_color_extends(s in spec(), pick in any::<prop::sample::Index>()) {
        let g = generate(s).into_graph();
        let mut col = color_planar(&g).unwrap();
        // find a vertex with at most four neighbors outside the fifth class
        let start = pick.index(g.id_bound());
        let v = (0..g.id_bound()).map(|k| (start + k) % g.id_bound()).find(|&v| {
            col.get(v) != Some(5) && g.rotation(v).iter().filter(|&&u| col.get(u) != Some(5)).count() <= 4
        });
        prop_assume!(v.is_some());
        let v = v.unwrap();
        let fifth = col.fifth_class();
        col.clear(v);
        let r = free_color(&g, &mut col, v).unwrap();
        col.set(v, r.color);
        prop_assert!(r.color <= 4 && r.swaps <= 1);
        prop_assert!(is_proper_partial(&g, &col));
        prop_assert_eq!(col.fifth_class(), fifth);
    }

    #[test]
    fn charges_sum_to_twelve(s in spec()) {
        let t = generate(s);
        let c = final_charges(&transfers(&t)).unwrap();
        prop_assert_eq!(c.values().copied().sum::<Rational>(), Rational::from_integer(12));
    }

    #[test]
    fn transfers_are_local(s in spec(), pick in any::<prop::sample::Index>()) {
        let g = generate(s).into_graph();
        let v = pick.index(g.id_bound());
        let keep = ball(&g, v, 2);
        let outside: Vec<usize> = g.vertices().filter(|u| !keep.contains(u)).collect();
        let snapshot = g.remove_vertices(&outside);
        prop_assert_eq!(transfers_from(&snapshot, v), transfers_from(&g, v));
    }
}
