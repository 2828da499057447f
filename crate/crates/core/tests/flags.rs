use cutlab::flags::{
    brute_force_cut_cost, density, expected_cut_cost, inequality_residual, labeled_density, Anchor,
    AnchorKind, Flag, Params,
};
use cutlab::gen::Enumerator;
use cutlab::graph::{blow_up, complete_bipartite, cycle, Graph};
use cutlab::Rational;
use proptest::prelude::*;

fn q(a: i128, b: i128) -> Rational {
    Rational::new(a, b)
}

fn graph_from_bits(n: usize, bits: u64) -> Graph {
    let mut edges = Vec::new();
    let mut i = 0;
    for v in 1..n {
        for u in 0..v {
            if bits >> (i % 64) & 1 == 1 {
                edges.push((u, v));
            }
            i += 1;
        }
    }
    Graph::new(n, edges).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn densities_of_all_patterns_sum_to_one(n in 4usize..=8, bits in any::<u64>()) {
        let g = graph_from_bits(n, bits);
        for m in 1..=4 {
            let patterns = Enumerator::new(m + 1).unwrap().level(m).unwrap();
            let total: Rational = patterns.iter().map(|h| density(h, &g).unwrap()).sum();
            prop_assert_eq!(total, Rational::from_integer(1));
        }
    }

    #[test]
    fn degree_flag_is_normalized_degree(n in 2usize..=9, bits in any::<u64>()) {
        let g = graph_from_bits(n, bits);
        let deg = Flag::parse("lu:2").unwrap();
        for v in 0..n {
            let d = labeled_density(&deg, &g, &Anchor::new(vec![v])).unwrap();
            prop_assert_eq!(d, q(g.degree(v) as i128, n as i128 - 1));
        }
    }
}

fn anchors(g: &Graph) -> Vec<AnchorKind> {
    let n = g.n();
    let mut out: Vec<AnchorKind> = (0..n).map(AnchorKind::Vertex).collect();
    for (u, v) in g.edges() {
        for (a, b) in [(u, v), (v, u)] {
            out.push(AnchorKind::Edge(a, b));
            for w in 0..n {
                if w != a && w != b && !g.has_edge(w, a) && !g.has_edge(w, b) {
                    out.push(AnchorKind::EdgePlusNonneighbor(a, b, w));
                }
            }
        }
    }
    out
}

#[test]
fn closed_form_matches_completions_at_eight_vertices() {
    let graphs = Enumerator::new(3).unwrap().level(8).unwrap();
    let mut sizes: Vec<Vec<usize>> = (0..=8).map(|a| vec![a, 8 - a]).collect();
    sizes.extend([
        vec![3, 3, 2],
        vec![3, 2, 3],
        vec![2, 3, 3],
        vec![4, 2, 2],
        vec![2, 2, 4],
    ]);
    let mut compared = 0;
    for g in &graphs {
        for a in anchors(g) {
            for s in &sizes {
                match (expected_cut_cost(g, &a, s), brute_force_cut_cost(g, &a, s)) {
                    (Ok(x), Ok(y)) => {
                        assert_eq!(x, y, "{} {a:?} {s:?}", g.to_graph6());
                        compared += 1;
                    }
                    (Err(_), Err(_)) => {}
                    (x, y) => panic!("{} {a:?} {s:?}: {x:?} vs {y:?}", g.to_graph6()),
                }
            }
        }
    }
    assert!(compared > 10_000);
}

#[test]
fn expected_cut_examples() {
    let c4 = cycle(4).unwrap();
    let zero = Rational::from_integer(0);
    assert_eq!(
        expected_cut_cost(&c4, &AnchorKind::Vertex(0), &[2, 2]).unwrap(),
        vec![zero; 2]
    );

    let empty = Graph::empty(6).unwrap();
    for s in [[3, 3], [4, 2], [0, 6]] {
        assert_eq!(
            expected_cut_cost(&empty, &AnchorKind::Vertex(1), &s).unwrap(),
            vec![zero; 2]
        );
    }

    // one side of K_{3,3} is N(u), the other N(v): a single completion
    let k33 = complete_bipartite(3, 3).unwrap();
    let (u, v) = k33.edges().next().unwrap();
    let e = expected_cut_cost(&k33, &AnchorKind::Edge(u, v), &[3, 3]).unwrap();
    assert_eq!(
        e,
        brute_force_cut_cost(&k33, &AnchorKind::Edge(u, v), &[3, 3]).unwrap()
    );
    assert_eq!(e, vec![zero; 2]);
}

#[test]
fn eighth_inequality_on_k31() {
    let g = complete_bipartite(3, 1).unwrap();
    let r = inequality_residual(&g, "vertex-cut-eighth", &Params::new()).unwrap();
    // the centre has no non-neighbours and is skipped; each leaf gives 1/6 - 1/8
    assert_eq!((r.anchors, r.skipped), (3, 1));
    assert_eq!(r.mean, Some(q(1, 24)));
    // the underlying statement: the average of e(A) + e(A^c) over bisections
    // with A containing N(v) is at least n^2/16, here with equality
    for leaf in 0..3 {
        let e = expected_cut_cost(&g, &AnchorKind::Vertex(leaf), &[2, 2]).unwrap();
        assert_eq!(e[0] + e[1], Rational::from_integer(1));
    }
}

#[test]
fn near_regular_third_on_c6() {
    let g = cycle(6).unwrap();
    let mut p = Params::new();
    p.insert("eps".into(), Rational::from_integer(0));
    let r = inequality_residual(&g, "near-regular-third", &p).unwrap();
    let cherry = density(&Graph::from_graph6("Bg").unwrap(), &g).unwrap();
    let edge = density(&Graph::from_graph6("A_").unwrap(), &g).unwrap();
    assert_eq!(cherry, q(6, 20));
    assert_eq!(edge, q(6, 15));
    assert_eq!(r.mean, Some(cherry / 3 - edge * 2 / 3 + q(1, 9)));
}

#[test]
fn blow_ups_contain_their_pattern() {
    let c5 = cycle(5).unwrap();
    let mut last = None;
    for s in 1..=2 {
        let g = blow_up(&c5, &[s; 5]).unwrap();
        let d = density(&c5, &g).unwrap();
        assert!(d > Rational::from_integer(0));
        // only transversal copies are induced C5's
        let transversal = Rational::from_integer((s as i128).pow(5))
            / Rational::from_integer(binomial(5 * s as i128, 5));
        assert_eq!(d, transversal);
        if let Some(prev) = last {
            assert!(d < prev);
        }
        last = Some(d);
    }
}

fn binomial(n: i128, k: i128) -> i128 {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}
