//! Degreewise Betti numbers of a Sullivan algebra by exact rank
//! computations on the differential matrices.

use super::OracleError;
use crate::algebra::SullivanAlgebra;

/// Guard against graded pieces too large to materialize; refusal is
/// explicit (an error naming the degree), never silent truncation.
#[derive(Debug, Clone)]
pub struct CohomologyConfig {
    pub basis_budget: u128,
}

impl Default for CohomologyConfig {
    fn default() -> Self {
        CohomologyConfig { basis_budget: 200_000 }
    }
}

/// Default evidence window for encoded graphs: the pure-algebra formal
/// dimension estimate `s(2k-1) - r` plus a margin of 6 (elliptic cases
/// must vanish above the estimate, so the margin shows the vanishing).
pub fn default_cutoff(r: u32, s: u32, k: u32) -> u32 {
    let formal = (s * (2 * k - 1)).saturating_sub(r);
    formal + 6
}

/// `dim H^n = dim ker d|_n - rank d|_{n-1}` for `n <= cutoff`.
/// `H^0 = Q` always (constants are closed, nothing hits degree 0).
pub fn cohomology_dims(
    algebra: &SullivanAlgebra,
    cutoff: u32,
    config: &CohomologyConfig,
) -> Result<Vec<u64>, OracleError> {
    for n in 0..=cutoff + 1 {
        let size = algebra.graded_dimension(n);
        if size > config.basis_budget {
            return Err(OracleError::BasisTooLarge {
                degree: n,
                size,
                budget: config.basis_budget,
            });
        }
    }
    let mut ranks = Vec::with_capacity(cutoff as usize + 1);
    for n in 0..=cutoff {
        let matrix = algebra.differential_matrix(n)?;
        ranks.push(matrix.rank() as u64);
    }
    let mut dims = Vec::with_capacity(cutoff as usize + 1);
    for n in 0..=cutoff as usize {
        let dim_n = algebra.graded_dimension(n as u32) as u64;
        let rank_n = ranks[n];
        let rank_prev = if n == 0 { 0 } else { ranks[n - 1] };
        // im(d) not inside ker(d) means the input was not a complex
        let kernel = dim_n - rank_n;
        let Some(dim) = kernel.checked_sub(rank_prev) else {
            return Err(OracleError::NotAComplex { degree: n as u32 });
        };
        dims.push(dim);
    }
    Ok(dims)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Graph;
    use crate::reduction::encode_shifted;

    #[test]
    fn h0_is_always_one() {
        for (g, k) in [(Graph::complete(3), 2), (Graph::path(2), 3), (Graph::complete(4), 2)] {
            let a = encode_shifted(&g, k).unwrap();
            let dims = cohomology_dims(&a, 4, &CohomologyConfig::default()).unwrap();
            assert_eq!(dims[0], 1);
        }
    }

    #[test]
    fn free_polynomial_algebra_on_one_generator() {
        let g = Graph::new(1, []).unwrap();
        let a = encode_shifted(&g, 2).unwrap();
        let dims = cohomology_dims(&a, 10, &CohomologyConfig::default()).unwrap();
        for (n, &dim) in dims.iter().enumerate() {
            assert_eq!(dim, u64::from(n % 2 == 0), "degree {n}");
        }
    }

    #[test]
    fn edge_algebra_betti_numbers() {
        // K2, k=2: H = (1, 0, 2, 0, 2, 0, 2, ...); the degree-4 value is the
        // hand computation 3 - rank(1x3 map) = 2.
        let a = encode_shifted(&Graph::path(2), 2).unwrap();
        let dims = cohomology_dims(&a, 8, &CohomologyConfig::default()).unwrap();
        assert_eq!(dims, vec![1, 0, 2, 0, 2, 0, 2, 0, 2]);
    }

    #[test]
    fn budget_refusal_is_explicit() {
        let a = encode_shifted(&Graph::complete(5), 2).unwrap();
        let tiny = CohomologyConfig { basis_budget: 3 };
        match cohomology_dims(&a, 10, &tiny) {
            Err(OracleError::BasisTooLarge { .. }) => {}
            other => panic!("expected refusal, got {other:?}"),
        }
    }

    #[test]
    fn word_length_zero_classes_match_quotient_hilbert() {
        use super::super::{buchberger, quotient_hilbert, GroebnerConfig, MonomialOrder};
        use crate::graph::SplitMix64;
        use crate::reduction::edge_ideal;
        // For pure encoded algebras the image of d inside Lambda(x) is
        // exactly the edge ideal, so Q[x]/I embeds degreewise into H:
        // hilbert[n] <= dims[n] everywhere, with equality below deg y =
        // 2k-1 where no y-monomials exist yet.
        let mut rng = SplitMix64::new(77);
        for _ in 0..6 {
            let n = 3 + rng.next_below(2) as u32;
            let g = Graph::gnp(n, 500, rng.next_u64());
            let k = 2 + rng.next_below(2) as u32;
            let cutoff = 10;
            let a = encode_shifted(&g, k).unwrap();
            let dims = cohomology_dims(&a, cutoff, &CohomologyConfig::default()).unwrap();
            let ideal = edge_ideal(&g, k);
            let gb =
                buchberger(&ideal, MonomialOrder::GrevLex, &GroebnerConfig::default()).unwrap();
            let hilbert = quotient_hilbert(&gb, n as usize, cutoff);
            for d in 0..=cutoff as usize {
                assert!(
                    hilbert[d] <= dims[d],
                    "quotient does not embed at degree {d}: {hilbert:?} vs {dims:?}"
                );
                if (d as u32) < 2 * k - 1 {
                    assert_eq!(hilbert[d], dims[d], "y-free degrees must agree at {d}");
                }
            }
        }
    }
}
