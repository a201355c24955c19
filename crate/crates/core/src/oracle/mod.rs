//! Algebraic finite-dimensionality machinery: Groebner bases over exact
//! rationals, standard-monomial Hilbert functions, and degreewise Betti
//! numbers of Sullivan algebras.
//!
//! Variables carry cohomological degree 2 outside this module; in here
//! everything runs in plain polynomial degree (half the cohomological one)
//! with the conversion at the boundary.

mod cohomology;
mod groebner;
mod hilbert;

pub use cohomology::{cohomology_dims, default_cutoff, CohomologyConfig};
pub use groebner::{buchberger, is_zero_dimensional, GroebnerBasis, GroebnerConfig};
pub use hilbert::quotient_hilbert;

use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::scalar::{scalar_to_string, Scalar};

#[derive(Debug, Error)]
pub enum OracleError {
    #[error("groebner step budget exhausted after {steps} reductions (limit {limit})")]
    BudgetExhausted { steps: u64, limit: u64 },
    #[error("degree {degree} basis has {size} monomials, over the budget of {budget}")]
    BasisTooLarge { degree: u32, size: u128, budget: u128 },
    #[error("differential does not square to zero at degree {degree}; not a cochain complex")]
    NotAComplex { degree: u32 },
    #[error("algebra error: {0}")]
    Algebra(#[from] crate::algebra::AlgebraError),
}

/// Supported monomial orders (both graded; ties broken lexicographically
/// or reverse-lexicographically).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MonomialOrder {
    GrevLex,
    GrLex,
}

impl MonomialOrder {
    pub fn name(self) -> &'static str {
        match self {
            MonomialOrder::GrevLex => "grevlex",
            MonomialOrder::GrLex => "grlex",
        }
    }

    /// Compares exponent vectors; `Greater` means `a` is the larger monomial.
    pub fn cmp(self, a: &[u32], b: &[u32]) -> std::cmp::Ordering {
        use std::cmp::Ordering;
        let da: u64 = a.iter().map(|&e| u64::from(e)).sum();
        let db: u64 = b.iter().map(|&e| u64::from(e)).sum();
        match da.cmp(&db) {
            Ordering::Equal => {}
            ord => return ord,
        }
        match self {
            MonomialOrder::GrLex => {
                for (x, y) in a.iter().zip(b) {
                    match x.cmp(y) {
                        Ordering::Equal => {}
                        ord => return ord,
                    }
                }
                Ordering::Equal
            }
            MonomialOrder::GrevLex => {
                // rightmost nonzero entry of a - b negative => a larger
                for (x, y) in a.iter().zip(b).rev() {
                    match x.cmp(y) {
                        Ordering::Equal => {}
                        Ordering::Less => return Ordering::Greater,
                        Ordering::Greater => return Ordering::Less,
                    }
                }
                Ordering::Equal
            }
        }
    }
}

/// Sparse commutative polynomial on a fixed variable count. Terms are kept
/// sorted leading-first under the order the caller is working with.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Poly {
    nvars: usize,
    terms: Vec<(Vec<u32>, Scalar)>,
}

impl Poly {
    pub fn zero(nvars: usize) -> Self {
        Poly { nvars, terms: Vec::new() }
    }

    pub fn from_terms(
        nvars: usize,
        terms: impl IntoIterator<Item = (Vec<u32>, Scalar)>,
        order: MonomialOrder,
    ) -> Self {
        let mut p = Poly { nvars, terms: terms.into_iter().collect() };
        p.normalize(order);
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &[(Vec<u32>, Scalar)] {
        &self.terms
    }

    pub fn leading(&self) -> Option<&(Vec<u32>, Scalar)> {
        self.terms.first()
    }

    /// Total polynomial degree (terms are homogeneous in this crate's uses,
    /// but the maximum is taken anyway).
    pub fn degree(&self) -> u32 {
        self.terms
            .iter()
            .map(|(e, _)| e.iter().sum::<u32>())
            .max()
            .unwrap_or(0)
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut deg = None;
        for (e, _) in &self.terms {
            let d: u32 = e.iter().sum();
            match deg {
                None => deg = Some(d),
                Some(x) if x != d => return false,
                _ => {}
            }
        }
        true
    }

    /// Sorts leading-first under `order` and combines/drops coefficients.
    pub fn normalize(&mut self, order: MonomialOrder) {
        self.terms.sort_by(|(a, _), (b, _)| order.cmp(b, a));
        let mut out: Vec<(Vec<u32>, Scalar)> = Vec::with_capacity(self.terms.len());
        for (e, c) in self.terms.drain(..) {
            match out.last_mut() {
                Some((le, lc)) if *le == e => *lc += c,
                _ => out.push((e, c)),
            }
        }
        out.retain(|(_, c)| !c.is_zero());
        self.terms = out;
    }

    /// self - coeff * x^shift * other, all sorted under `order`.
    pub fn sub_scaled_shifted(
        &self,
        other: &Poly,
        shift: &[u32],
        coeff: &Scalar,
        order: MonomialOrder,
    ) -> Poly {
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let mut i = 0;
        let mut j = 0;
        while i < self.terms.len() || j < other.terms.len() {
            let pick_left = match (self.terms.get(i), other.terms.get(j)) {
                (Some((ea, _)), Some((eb, _))) => {
                    let shifted: Vec<u32> = eb.iter().zip(shift).map(|(x, s)| x + s).collect();
                    match order.cmp(ea, &shifted) {
                        std::cmp::Ordering::Greater => true,
                        std::cmp::Ordering::Less => false,
                        std::cmp::Ordering::Equal => {
                            let c = &self.terms[i].1 - &(&other.terms[j].1 * coeff);
                            if !c.is_zero() {
                                out.push((shifted, c));
                            }
                            i += 1;
                            j += 1;
                            continue;
                        }
                    }
                }
                (Some(_), None) => true,
                (None, Some(_)) => false,
                (None, None) => break,
            };
            if pick_left {
                out.push(self.terms[i].clone());
                i += 1;
            } else {
                let (eb, cb) = &other.terms[j];
                let shifted: Vec<u32> = eb.iter().zip(shift).map(|(x, s)| x + s).collect();
                out.push((shifted, -(cb * coeff)));
                j += 1;
            }
        }
        Poly { nvars: self.nvars, terms: out }
    }

    pub fn scale(&self, s: &Scalar) -> Poly {
        if s.is_zero() {
            return Poly::zero(self.nvars);
        }
        Poly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), c * s)).collect(),
        }
    }

    pub fn monic(&self) -> Poly {
        match self.leading() {
            Some((_, lc)) => {
                let inv = Scalar::one() / lc;
                self.scale(&inv)
            }
            None => self.clone(),
        }
    }

    pub(crate) fn pop_leading(&mut self) -> Option<(Vec<u32>, Scalar)> {
        if self.terms.is_empty() {
            None
        } else {
            Some(self.terms.remove(0))
        }
    }
}

/// Renders in the shared polynomial syntax (`2*x1^2*x2 - x3`), variables
/// named `x1..xr`, terms leading-first.
pub fn poly_to_string(poly: &Poly) -> String {
    if poly.is_zero() {
        return "0".into();
    }
    let mut out = String::new();
    for (idx, (exps, c)) in poly.terms().iter().enumerate() {
        let mag = c.abs();
        if idx == 0 {
            if c.is_negative() {
                out.push('-');
            }
        } else if c.is_negative() {
            out.push_str(" - ");
        } else {
            out.push_str(" + ");
        }
        let mut factors = Vec::new();
        for (i, &e) in exps.iter().enumerate() {
            if e == 1 {
                factors.push(format!("x{}", i + 1));
            } else if e > 1 {
                factors.push(format!("x{}^{e}", i + 1));
            }
        }
        if factors.is_empty() {
            out.push_str(&scalar_to_string(&mag));
        } else {
            if !mag.is_one() {
                out.push_str(&scalar_to_string(&mag));
                out.push('*');
            }
            out.push_str(&factors.join("*"));
        }
    }
    out
}

/// Homogeneous ideal in `Q[x_1..x_r]` (polynomial degrees).
#[derive(Debug, Clone)]
pub struct PolyIdeal {
    nvars: usize,
    gens: Vec<Poly>,
}

impl PolyIdeal {
    pub fn new(nvars: usize) -> Self {
        PolyIdeal { nvars, gens: Vec::new() }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn generators(&self) -> &[Poly] {
        &self.gens
    }

    pub fn push(&mut self, poly: Poly) {
        assert_eq!(poly.nvars(), self.nvars);
        debug_assert!(poly.is_homogeneous());
        if !poly.is_zero() {
            self.gens.push(poly);
        }
    }

    /// `sum_{l=0..k} x_a^{k-l} x_b^l`, the edge relation in polynomial
    /// degree k.
    pub fn push_edge_relation(&mut self, a: usize, b: usize, k: u32) {
        assert!(a != b && a < self.nvars && b < self.nvars);
        let mut terms = Vec::new();
        for l in 0..=k {
            let mut exps = vec![0u32; self.nvars];
            exps[a] += k - l;
            exps[b] += l;
            terms.push((exps, Scalar::one()));
        }
        self.push(Poly::from_terms(self.nvars, terms, MonomialOrder::GrevLex));
    }
}

pub(crate) fn exp_divides(divisor: &[u32], multiple: &[u32]) -> bool {
    divisor.iter().zip(multiple).all(|(d, m)| d <= m)
}

pub(crate) fn exp_lcm(a: &[u32], b: &[u32]) -> Vec<u32> {
    a.iter().zip(b).map(|(x, y)| *x.max(y)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::scalar_int;

    #[test]
    fn orders_disagree_where_they_should() {
        // classic: x1*x3 vs x2^2 under grlex and grevlex (x1>x2>x3)
        let a = vec![1, 0, 1];
        let b = vec![0, 2, 0];
        assert_eq!(MonomialOrder::GrLex.cmp(&a, &b), std::cmp::Ordering::Greater);
        assert_eq!(MonomialOrder::GrevLex.cmp(&a, &b), std::cmp::Ordering::Less);
        // degree dominates both
        let c = vec![3, 0, 0];
        assert_eq!(MonomialOrder::GrevLex.cmp(&c, &a), std::cmp::Ordering::Greater);
    }

    #[test]
    fn edge_relation_shape() {
        let mut ideal = PolyIdeal::new(3);
        ideal.push_edge_relation(0, 2, 2);
        let p = &ideal.generators()[0];
        assert_eq!(p.terms().len(), 3);
        assert!(p.is_homogeneous());
        assert_eq!(p.degree(), 2);
        assert_eq!(poly_to_string(p), "x1^2 + x1*x3 + x3^2");
    }

    #[test]
    fn sub_scaled_shifted_cancels_leading() {
        // (x^2 + xy) - x*(x + y) = 0
        let f = Poly::from_terms(
            2,
            vec![(vec![2, 0], scalar_int(1)), (vec![1, 1], scalar_int(1))],
            MonomialOrder::GrevLex,
        );
        let g = Poly::from_terms(
            2,
            vec![(vec![1, 0], scalar_int(1)), (vec![0, 1], scalar_int(1))],
            MonomialOrder::GrevLex,
        );
        let r = f.sub_scaled_shifted(&g, &[1, 0], &scalar_int(1), MonomialOrder::GrevLex);
        assert!(r.is_zero());
    }
}
