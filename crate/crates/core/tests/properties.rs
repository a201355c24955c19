//! Property tests for the algebraic core: sign rules, the Leibniz rule,
//! d^2 = 0, basis counts against an independent generating-function
//! oracle, and parser round trips.

use proptest::prelude::*;

use almostfree::algebra::{Element, SullivanAlgebra};
use almostfree::graph::{is_colorable, parse_dimacs, to_dimacs, Coloring, Graph, SplitMix64};
use almostfree::oracle::MonomialOrder;
use almostfree::reduction::encode_shifted;
use almostfree::scalar::scalar_int;

/// Deterministic random graph on 2..=6 vertices.
fn random_graph(rng: &mut SplitMix64) -> Graph {
    let n = 2 + (rng.next_below(5) as u32);
    let p = 200 + rng.next_below(600) as u32;
    Graph::gnp(n, p, rng.next_u64())
}

/// Random homogeneous element of `algebra` with nonzero degree <= 9.
fn random_homogeneous(algebra: &SullivanAlgebra, rng: &mut SplitMix64) -> Option<(Element, u32)> {
    for _ in 0..12 {
        let degree = 1 + rng.next_below(9) as u32;
        let basis = algebra.monomial_basis(degree);
        if basis.is_empty() {
            continue;
        }
        let mut e = Element::zero();
        let picks = 1 + rng.next_below(3);
        for _ in 0..picks {
            let m = basis[rng.next_below(basis.len() as u64) as usize].clone();
            let c = rng.next_below(9) as i64 - 4;
            e.add_term(m, scalar_int(c));
        }
        if !e.is_zero() {
            return Some((e, degree));
        }
    }
    None
}

#[test]
fn graded_commutativity_thousand_cases() {
    let mut rng = SplitMix64::new(0x5eed_0001);
    let mut checked = 0u32;
    while checked < 1000 {
        let graph = random_graph(&mut rng);
        let k = 2 + rng.next_below(2) as u32;
        let algebra = encode_shifted(&graph, k).unwrap();
        let Some((a, da)) = random_homogeneous(&algebra, &mut rng) else { continue };
        let Some((b, db)) = random_homogeneous(&algebra, &mut rng) else { continue };
        let ab = algebra.multiply(&a, &b).unwrap();
        let ba = algebra.multiply(&b, &a).unwrap();
        let expected = if (da * db) % 2 == 1 { ba.neg() } else { ba };
        assert_eq!(ab, expected, "graded commutativity failed at case {checked}");
        checked += 1;
    }
}

#[test]
fn leibniz_rule_thousand_cases() {
    let mut rng = SplitMix64::new(0x5eed_0002);
    let mut checked = 0u32;
    while checked < 1000 {
        let graph = random_graph(&mut rng);
        let k = 2 + rng.next_below(2) as u32;
        let algebra = encode_shifted(&graph, k).unwrap();
        let Some((a, da)) = random_homogeneous(&algebra, &mut rng) else { continue };
        let Some((b, _)) = random_homogeneous(&algebra, &mut rng) else { continue };
        let product = algebra.multiply(&a, &b).unwrap();
        let lhs = algebra.apply_differential(&product).unwrap();
        let d_a = algebra.apply_differential(&a).unwrap();
        let d_b = algebra.apply_differential(&b).unwrap();
        let sign = if da % 2 == 1 { -1 } else { 1 };
        let rhs = algebra
            .multiply(&d_a, &b)
            .unwrap()
            .add(&algebra.multiply(&a, &d_b).unwrap().scale(&scalar_int(sign)));
        assert_eq!(lhs, rhs, "Leibniz failed at case {checked}");
        checked += 1;
    }
}

#[test]
fn differential_squares_to_zero_on_random_elements() {
    let mut rng = SplitMix64::new(0x5eed_0003);
    let mut checked = 0u32;
    while checked < 300 {
        let graph = random_graph(&mut rng);
        let k = 2 + rng.next_below(2) as u32;
        let algebra = encode_shifted(&graph, k).unwrap();
        let Some((a, _)) = random_homogeneous(&algebra, &mut rng) else { continue };
        let da = algebra.apply_differential(&a).unwrap();
        let dda = algebra.apply_differential(&da).unwrap();
        assert!(dda.is_zero(), "d^2 != 0 at case {checked}");
        if let Some(deg) = da.homogeneous_degree() {
            assert_eq!(deg, a.homogeneous_degree().unwrap() + 1, "degree +1 violated");
        }
        checked += 1;
    }
}

/// Independent count of the degree-n graded piece: coefficient of q^n in
/// prod_even 1/(1 - q^deg) * prod_odd (1 + q^deg), expanded directly on
/// integer coefficient arrays.
fn generating_function_count(gens: &[(u32, bool)], n: usize) -> u64 {
    let mut coeffs = vec![0u64; n + 1];
    coeffs[0] = 1;
    for &(degree, is_even) in gens {
        let d = degree as usize;
        let mut next = vec![0u64; n + 1];
        if is_even {
            // geometric series in q^d
            for (start, &c) in coeffs.iter().enumerate() {
                if c == 0 {
                    continue;
                }
                let mut at = start;
                loop {
                    next[at] += c;
                    if at + d > n {
                        break;
                    }
                    at += d;
                }
            }
        } else {
            for (start, &c) in coeffs.iter().enumerate() {
                if c == 0 {
                    continue;
                }
                next[start] += c;
                if start + d <= n {
                    next[start + d] += c;
                }
            }
        }
        coeffs = next;
    }
    coeffs[n]
}

#[test]
fn basis_counts_match_generating_function_oracle() {
    let mut rng = SplitMix64::new(0x5eed_0004);
    for _ in 0..40 {
        let graph = random_graph(&mut rng);
        let k = 2 + rng.next_below(2) as u32;
        let algebra = encode_shifted(&graph, k).unwrap();
        let gens: Vec<(u32, bool)> =
            algebra.generators().iter().map(|g| (g.degree, g.is_even())).collect();
        for n in 0..=14u32 {
            let enumerated = algebra.monomial_basis(n).len() as u64;
            let counted = generating_function_count(&gens, n as usize);
            assert_eq!(enumerated, counted, "degree {n}");
            assert_eq!(algebra.graded_dimension(n), u128::from(counted), "gf fast path {n}");
        }
    }
}

#[test]
fn basis_is_duplicate_free_and_sorted() {
    let mut rng = SplitMix64::new(0x5eed_0005);
    for _ in 0..20 {
        let graph = random_graph(&mut rng);
        let algebra = encode_shifted(&graph, 2).unwrap();
        for n in 0..=10u32 {
            let basis = algebra.monomial_basis(n);
            for pair in basis.windows(2) {
                assert!(pair[0] > pair[1], "basis not strictly descending at degree {n}");
            }
            for m in &basis {
                assert_eq!(m.degree(), n);
            }
        }
    }
}

proptest! {
    #[test]
    fn monomial_orders_are_total_and_multiplicative(
        a in proptest::collection::vec(0u32..5, 4),
        b in proptest::collection::vec(0u32..5, 4),
        c in proptest::collection::vec(0u32..3, 4),
    ) {
        for order in [MonomialOrder::GrevLex, MonomialOrder::GrLex] {
            let ab = order.cmp(&a, &b);
            let ba = order.cmp(&b, &a);
            prop_assert_eq!(ab, ba.reverse());
            if ab == std::cmp::Ordering::Equal {
                prop_assert_eq!(&a, &b);
            }
            // multiplying by a common monomial preserves the comparison
            let ac: Vec<u32> = a.iter().zip(&c).map(|(x, y)| x + y).collect();
            let bc: Vec<u32> = b.iter().zip(&c).map(|(x, y)| x + y).collect();
            prop_assert_eq!(order.cmp(&ac, &bc), ab);
        }
    }

    #[test]
    fn dimacs_roundtrip(
        n in 1u32..8,
        edges in proptest::collection::vec((1u32..8, 1u32..8), 0..12),
    ) {
        let filtered: Vec<(u32, u32)> = edges
            .into_iter()
            .filter(|&(a, b)| a != b && a <= n && b <= n)
            .collect();
        let graph = Graph::new(n, filtered).unwrap();
        let text = to_dimacs(&graph);
        let parsed = parse_dimacs(&text).unwrap();
        prop_assert_eq!(parsed, graph);
    }

    #[test]
    fn colorable_monotone_and_proper(seed in 0u64..5000) {
        let mut rng = SplitMix64::new(seed);
        let graph = random_graph(&mut rng);
        let mut previous = false;
        for c in 1..=4u32 {
            let found = is_colorable(&graph, c);
            if let Some(col) = &found {
                prop_assert!(col.is_proper(&graph));
            }
            let now = found.is_some();
            prop_assert!(!previous || now, "colorability must be monotone in c");
            previous = now;
        }
    }

    #[test]
    fn proper_colorings_pass_the_morphism_check(seed in 0u64..2000) {
        let mut rng = SplitMix64::new(seed);
        let graph = random_graph(&mut rng);
        let k = 2 + rng.next_below(2) as u32;
        if let Some(coloring) = is_colorable(&graph, k + 1) {
            let (accepted, proper) =
                almostfree::certificate::verify_is_proper_iff(&coloring, &graph, k).unwrap();
            prop_assert!(proper);
            prop_assert!(accepted);
        }
        // and a deliberately constant coloring fails iff there is an edge
        let constant = Coloring::new(vec![0; graph.vertex_count() as usize]);
        let (accepted, proper) =
            almostfree::certificate::verify_is_proper_iff(&constant, &graph, k).unwrap();
        prop_assert_eq!(accepted, proper);
        prop_assert_eq!(proper, graph.edge_count() == 0);
    }
}
