//! Hilbert function of `Q[x]/I` by counting standard monomials.

use super::{exp_divides, GroebnerBasis};

/// Dimension of `Q[x]/I` in each cohomological degree `0..=cutoff`
/// (variables sit in cohomological degree 2, so odd degrees are zero and
/// degree `2d` counts the standard monomials of polynomial degree `d` —
/// those divisible by no leading monomial of the basis).
///
/// The result is eventually zero iff the ideal is zero-dimensional.
pub fn quotient_hilbert(gb: &GroebnerBasis, nvars: usize, cutoff: u32) -> Vec<u64> {
    let leading: Vec<Vec<u32>> = gb.leading_monomials().map(|s| s.to_vec()).collect();
    let mut dims = vec![0u64; cutoff as usize + 1];
    for d in 0..=cutoff / 2 {
        let mut count = 0u64;
        let mut exps = vec![0u32; nvars];
        count_standard(&leading, &mut exps, 0, d, &mut count);
        if (2 * d) as usize <= cutoff as usize {
            dims[(2 * d) as usize] = count;
        }
    }
    dims
}

fn count_standard(
    leading: &[Vec<u32>],
    exps: &mut Vec<u32>,
    var: usize,
    remaining: u32,
    count: &mut u64,
) {
    if var == exps.len() {
        if remaining == 0 && !leading.iter().any(|lm| exp_divides(lm, exps)) {
            *count += 1;
        }
        return;
    }
    if var + 1 == exps.len() {
        exps[var] = remaining;
        if !leading.iter().any(|lm| exp_divides(lm, exps)) {
            *count += 1;
        }
        exps[var] = 0;
        return;
    }
    for e in 0..=remaining {
        exps[var] = e;
        count_standard(leading, exps, var + 1, remaining - e, count);
    }
    exps[var] = 0;
}

#[cfg(test)]
mod tests {
    use super::super::{buchberger, GroebnerConfig, MonomialOrder, Poly, PolyIdeal};
    use super::*;
    use crate::graph::Graph;
    use crate::reduction::edge_ideal;
    use crate::scalar::scalar_int;

    #[test]
    fn free_polynomial_algebra_one_variable() {
        let ideal = PolyIdeal::new(1);
        let gb = buchberger(&ideal, MonomialOrder::GrevLex, &GroebnerConfig::default()).unwrap();
        let dims = quotient_hilbert(&gb, 1, 8);
        assert_eq!(dims, vec![1, 0, 1, 0, 1, 0, 1, 0, 1]);
    }

    #[test]
    fn square_ideal_has_three_standard_monomials() {
        // I = (x1^2, x1 x2, x2^2): standard monomials 1, x1, x2
        let mut ideal = PolyIdeal::new(2);
        for exps in [[2, 0], [1, 1], [0, 2]] {
            ideal.push(Poly::from_terms(
                2,
                [(exps.to_vec(), scalar_int(1))],
                MonomialOrder::GrevLex,
            ));
        }
        let gb = buchberger(&ideal, MonomialOrder::GrevLex, &GroebnerConfig::default()).unwrap();
        let dims = quotient_hilbert(&gb, 2, 6);
        assert_eq!(dims, vec![1, 0, 2, 0, 0, 0, 0]);
    }

    #[test]
    fn k4_quotient_vanishes_eventually() {
        let ideal = edge_ideal(&Graph::complete(4), 2);
        let gb = buchberger(&ideal, MonomialOrder::GrevLex, &GroebnerConfig::default()).unwrap();
        let dims = quotient_hilbert(&gb, 4, 24);
        assert!(dims[0] == 1);
        assert!(dims.iter().rev().take(6).all(|&d| d == 0), "{dims:?}");
        assert!(dims.iter().any(|&d| d > 0));
    }

    #[test]
    fn k3_quotient_never_vanishes() {
        let ideal = edge_ideal(&Graph::complete(3), 2);
        let gb = buchberger(&ideal, MonomialOrder::GrevLex, &GroebnerConfig::default()).unwrap();
        let dims = quotient_hilbert(&gb, 3, 30);
        for n in (0..=30).step_by(2) {
            assert!(dims[n] > 0, "degree {n} vanished: {dims:?}");
        }
    }
}
