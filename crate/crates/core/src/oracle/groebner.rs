//! Buchberger's algorithm with the two classical pair criteria, reduced
//! basis postprocessing, and the zero-dimensionality test.

use num_traits::One;

use super::{exp_divides, exp_lcm, MonomialOrder, OracleError, Poly, PolyIdeal};
use crate::scalar::Scalar;

/// Reduced Groebner basis: monic generators, no leading monomial divides
/// another, every tail fully reduced.
#[derive(Debug, Clone)]
pub struct GroebnerBasis {
    order: MonomialOrder,
    polys: Vec<Poly>,
}

impl GroebnerBasis {
    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn polys(&self) -> &[Poly] {
        &self.polys
    }

    pub fn leading_monomials(&self) -> impl Iterator<Item = &[u32]> {
        self.polys.iter().filter_map(|p| p.leading().map(|(e, _)| e.as_slice()))
    }

    /// Fully reduces `p` modulo the basis.
    pub fn reduce(&self, p: &Poly) -> Poly {
        normal_form(p, &self.polys, self.order)
    }

    /// Serialization: a monomial-order header followed by one polynomial
    /// per line in the shared syntax.
    pub fn to_text(&self) -> String {
        let mut out = format!("groebner order={}\n", self.order.name());
        for p in &self.polys {
            out.push_str(&super::poly_to_string(p));
            out.push('\n');
        }
        out
    }
}

/// Step budget for the reduction loop; exhausting it is reported
/// explicitly rather than looping on a runaway input.
#[derive(Debug, Clone)]
pub struct GroebnerConfig {
    pub max_reductions: u64,
}

impl Default for GroebnerConfig {
    fn default() -> Self {
        GroebnerConfig { max_reductions: 500_000 }
    }
}

/// Full multivariate division: returns the remainder of `p` by `basis`.
fn normal_form(p: &Poly, basis: &[Poly], order: MonomialOrder) -> Poly {
    let mut rest = p.clone();
    let mut remainder: Vec<(Vec<u32>, Scalar)> = Vec::new();
    'outer: while let Some((le, lc)) = rest.leading().cloned() {
        for g in basis {
            let Some((ge, gc)) = g.leading() else { continue };
            if exp_divides(ge, &le) {
                let shift: Vec<u32> = le.iter().zip(ge).map(|(a, b)| a - b).collect();
                let coeff = &lc / gc;
                rest = rest.sub_scaled_shifted(g, &shift, &coeff, order);
                continue 'outer;
            }
        }
        remainder.push((le, lc));
        rest.pop_leading();
    }
    Poly::from_terms(p.nvars(), remainder, order)
}

/// S-polynomial of two monic-or-not polynomials.
fn s_polynomial(f: &Poly, g: &Poly, order: MonomialOrder) -> Poly {
    let (fe, fc) = f.leading().expect("nonzero");
    let (ge, gc) = g.leading().expect("nonzero");
    let lcm = exp_lcm(fe, ge);
    let shift_f: Vec<u32> = lcm.iter().zip(fe).map(|(l, e)| l - e).collect();
    let shift_g: Vec<u32> = lcm.iter().zip(ge).map(|(l, e)| l - e).collect();
    // lcm/lt(f) * f - lcm/lt(g) * g
    let zero = Poly::zero(f.nvars());
    let scaled_f = zero.sub_scaled_shifted(f, &shift_f, &(-(Scalar::one() / fc)), order);
    scaled_f.sub_scaled_shifted(g, &shift_g, &(Scalar::one() / gc), order)
}

/// Computes the reduced Groebner basis of `ideal` under `order`. Ideal
/// membership of every input generator is re-verified by reduction to zero
/// before returning.
pub fn buchberger(
    ideal: &PolyIdeal,
    order: MonomialOrder,
    config: &GroebnerConfig,
) -> Result<GroebnerBasis, OracleError> {
    let mut basis: Vec<Poly> = Vec::new();
    for g in ideal.generators() {
        let mut p = g.clone();
        p.normalize(order);
        if !p.is_zero() {
            basis.push(p.monic());
        }
    }
    let mut pairs: Vec<(usize, usize)> = Vec::new();
    let mut processed: std::collections::HashSet<(usize, usize)> = Default::default();
    for i in 0..basis.len() {
        for j in 0..i {
            pairs.push((j, i));
        }
    }
    let mut steps: u64 = 0;
    while !pairs.is_empty() {
        // normal selection: the pair with the smallest lcm
        let best = pairs
            .iter()
            .enumerate()
            .min_by(|(_, &(i1, j1)), (_, &(i2, j2))| {
                let l1 = pair_lcm(&basis, i1, j1);
                let l2 = pair_lcm(&basis, i2, j2);
                order.cmp(&l1, &l2)
            })
            .map(|(idx, _)| idx)
            .expect("nonempty");
        let (i, j) = pairs.swap_remove(best);
        processed.insert((i, j));
        let (fi, fj) = (&basis[i], &basis[j]);
        let (ei, _) = fi.leading().expect("basis nonzero");
        let (ej, _) = fj.leading().expect("basis nonzero");
        let lcm = exp_lcm(ei, ej);
        // first criterion: coprime leading monomials
        if lcm.iter().zip(ei.iter().zip(ej)).all(|(l, (a, b))| *l == a + b) {
            continue;
        }
        // chain criterion: some k with lm_k | lcm and both side pairs done
        let chain = (0..basis.len()).any(|k| {
            if k == i || k == j {
                return false;
            }
            let (ek, _) = basis[k].leading().expect("nonzero");
            exp_divides(ek, &lcm)
                && processed.contains(&key(i, k))
                && processed.contains(&key(j, k))
        });
        if chain {
            continue;
        }
        steps += 1;
        if steps > config.max_reductions {
            return Err(OracleError::BudgetExhausted { steps, limit: config.max_reductions });
        }
        let s = s_polynomial(fi, fj, order);
        let r = normal_form(&s, &basis, order);
        if !r.is_zero() {
            let new_idx = basis.len();
            basis.push(r.monic());
            for t in 0..new_idx {
                pairs.push((t, new_idx));
            }
        }
    }
    // minimize: drop generators whose leading monomial is divisible by another's
    let mut keep = vec![true; basis.len()];
    for i in 0..basis.len() {
        if !keep[i] {
            continue;
        }
        let (ei, _) = basis[i].leading().expect("nonzero").clone();
        for j in 0..basis.len() {
            if i == j || !keep[j] {
                continue;
            }
            let (ej, _) = basis[j].leading().expect("nonzero");
            if exp_divides(ej, &ei) && (ej != &ei || j < i) {
                keep[i] = false;
                break;
            }
        }
    }
    let minimal: Vec<Poly> = basis
        .into_iter()
        .zip(keep)
        .filter_map(|(p, k)| k.then_some(p))
        .collect();
    // reduce: every tail fully reduced against the others
    let mut reduced: Vec<Poly> = Vec::with_capacity(minimal.len());
    for i in 0..minimal.len() {
        let others: Vec<Poly> = minimal
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .map(|(_, p)| p.clone())
            .collect();
        let r = normal_form(&minimal[i], &others, order);
        debug_assert!(!r.is_zero());
        reduced.push(r.monic());
    }
    reduced.sort_by(|a, b| {
        let (ea, _) = a.leading().expect("nonzero");
        let (eb, _) = b.leading().expect("nonzero");
        order.cmp(eb, ea)
    });
    let gb = GroebnerBasis { order, polys: reduced };
    for g in ideal.generators() {
        // Deciding from a bad basis would be worse than stopping.
        assert!(
            gb.reduce(g).is_zero(),
            "groebner postcondition failed: input generator does not reduce to zero"
        );
    }
    Ok(gb)
}

fn key(a: usize, b: usize) -> (usize, usize) {
    (a.min(b), a.max(b))
}

fn pair_lcm(basis: &[Poly], i: usize, j: usize) -> Vec<u32> {
    let (ei, _) = basis[i].leading().expect("nonzero");
    let (ej, _) = basis[j].leading().expect("nonzero");
    exp_lcm(ei, ej)
}

/// `Q[x]/I` is finite-dimensional iff every variable has some pure power
/// among the leading monomials of a (reduced) Groebner basis.
pub fn is_zero_dimensional(gb: &GroebnerBasis, nvars: usize) -> bool {
    if nvars == 0 {
        return true;
    }
    // unit ideal: a nonzero constant in the basis
    if gb
        .polys()
        .iter()
        .any(|p| p.leading().is_some_and(|(e, _)| e.iter().all(|&x| x == 0)))
    {
        return true;
    }
    (0..nvars).all(|i| {
        gb.leading_monomials().any(|lm| {
            lm[i] > 0 && lm.iter().enumerate().all(|(j, &e)| j == i || e == 0)
        })
    })
}
