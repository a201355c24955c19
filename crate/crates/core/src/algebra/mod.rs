//! Graded-commutative algebra over exact rationals.
//!
//! A [`SullivanAlgebra`] is a free graded-commutative algebra on named
//! generators (even degree: polynomial, odd degree: exterior) together with
//! a degree +1 differential given on generators and extended as a derivation.
//! Elements are sparse maps from canonical monomials to rational
//! coefficients; the Koszul sign rule is baked into multiplication.

pub mod format;

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};
use thiserror::Error;

use crate::linalg::SparseMatrix;
use crate::scalar::{scalar_int, Scalar};

/// Index of a generator inside its algebra (position in the generator list).
pub type GenId = u32;

#[derive(Debug, Error)]
pub enum AlgebraError {
    #[error("unknown generator id {0}")]
    UnknownGenerator(GenId),
    #[error("generator universe mismatch: {0}")]
    UniverseMismatch(String),
    #[error("generator degree must be positive (generator `{0}`)")]
    NonPositiveDegree(String),
    #[error("duplicate generator name `{0}`")]
    DuplicateName(String),
    #[error("differential of `{gen}` is not homogeneous of degree {expected}")]
    InhomogeneousDifferential { gen: String, expected: u32 },
}

/// A named generator. Parity is derived from the degree: even-degree
/// generators commute and admit arbitrary powers, odd-degree generators
/// anticommute and square to zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Generator {
    pub name: String,
    pub degree: u32,
}

impl Generator {
    pub fn is_even(&self) -> bool {
        self.degree.is_multiple_of(2)
    }
}

/// Canonical basis monomial: even generators with positive exponents
/// (sorted by id) and a strictly increasing list of odd generator ids.
///
/// Ordering is graded lexicographic by generator id: total degree first,
/// then the exponent vectors compared position by position in id order
/// (larger exponent at the first differing id wins). This fixes
/// serialization and matrix bases once and for all.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    degree: u32,
    even: Vec<(GenId, u32)>,
    odd: Vec<GenId>,
}

impl Monomial {
    pub fn one() -> Self {
        Monomial { degree: 0, even: Vec::new(), odd: Vec::new() }
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn is_constant(&self) -> bool {
        self.even.is_empty() && self.odd.is_empty()
    }

    pub fn even_part(&self) -> &[(GenId, u32)] {
        &self.even
    }

    pub fn odd_part(&self) -> &[GenId] {
        &self.odd
    }

    /// Exponent of generator `id` in this monomial (0/1 for odd ids).
    pub fn exponent(&self, id: GenId) -> u32 {
        if let Ok(pos) = self.even.binary_search_by_key(&id, |&(g, _)| g) {
            return self.even[pos].1;
        }
        u32::from(self.odd.binary_search(&id).is_ok())
    }

    /// Iterates (id, exponent) over all generators present, in id order.
    pub fn support(&self) -> impl Iterator<Item = (GenId, u32)> + '_ {
        let mut ev = self.even.iter().peekable();
        let mut od = self.odd.iter().peekable();
        std::iter::from_fn(move || match (ev.peek(), od.peek()) {
            (Some(&&(g, e)), Some(&&o)) => {
                if g < o {
                    ev.next();
                    Some((g, e))
                } else {
                    od.next();
                    Some((o, 1))
                }
            }
            (Some(&&(g, e)), None) => {
                ev.next();
                Some((g, e))
            }
            (None, Some(&&o)) => {
                od.next();
                Some((o, 1))
            }
            (None, None) => None,
        })
    }

    fn word_length(&self) -> usize {
        self.odd.len()
    }

    /// Product with Koszul sign; `None` when an odd generator repeats.
    fn mul(&self, other: &Monomial) -> Option<(Monomial, i32)> {
        let mut even = Vec::with_capacity(self.even.len() + other.even.len());
        let (mut i, mut j) = (0, 0);
        while i < self.even.len() || j < other.even.len() {
            match (self.even.get(i), other.even.get(j)) {
                (Some(&(g, e)), Some(&(h, f))) => {
                    if g < h {
                        even.push((g, e));
                        i += 1;
                    } else if h < g {
                        even.push((h, f));
                        j += 1;
                    } else {
                        even.push((g, e + f));
                        i += 1;
                        j += 1;
                    }
                }
                (Some(&(g, e)), None) => {
                    even.push((g, e));
                    i += 1;
                }
                (None, Some(&(h, f))) => {
                    even.push((h, f));
                    j += 1;
                }
                (None, None) => unreachable!(),
            }
        }
        // Merge odd parts counting transpositions: moving other's generator
        // past the tail of self's flips the sign once per crossing.
        let mut odd = Vec::with_capacity(self.odd.len() + other.odd.len());
        let mut inversions = 0usize;
        let (mut i, mut j) = (0, 0);
        while i < self.odd.len() || j < other.odd.len() {
            match (self.odd.get(i), other.odd.get(j)) {
                (Some(&a), Some(&b)) => {
                    if a == b {
                        return None;
                    }
                    if a < b {
                        odd.push(a);
                        i += 1;
                    } else {
                        odd.push(b);
                        inversions += self.odd.len() - i;
                        j += 1;
                    }
                }
                (Some(&a), None) => {
                    odd.push(a);
                    i += 1;
                }
                (None, Some(&b)) => {
                    odd.push(b);
                    j += 1;
                }
                (None, None) => unreachable!(),
            }
        }
        let sign = if inversions.is_multiple_of(2) { 1 } else { -1 };
        Some((Monomial { degree: self.degree + other.degree, even, odd }, sign))
    }

    /// Copy with the exponent of even generator `id` lowered by one;
    /// the degree field is fixed up by the caller.
    fn with_even_lowered(&self, id: GenId) -> Monomial {
        let mut m = self.clone();
        let pos = m
            .even
            .binary_search_by_key(&id, |&(g, _)| g)
            .expect("generator present");
        if m.even[pos].1 == 1 {
            m.even.remove(pos);
        } else {
            m.even[pos].1 -= 1;
        }
        m
    }

    fn without_odd(&self, id: GenId) -> Monomial {
        let mut m = self.clone();
        let pos = m.odd.binary_search(&id).expect("generator present");
        m.odd.remove(pos);
        m
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        use std::cmp::Ordering;
        match self.degree.cmp(&other.degree) {
            Ordering::Equal => {}
            ord => return ord,
        }
        let mut a = self.support();
        let mut b = other.support();
        loop {
            match (a.next(), b.next()) {
                (Some((ga, ea)), Some((gb, eb))) => {
                    if ga != gb {
                        // The monomial whose first exponent sits at the
                        // smaller id has the lexicographically larger vector.
                        return if ga < gb { Ordering::Greater } else { Ordering::Less };
                    }
                    if ea != eb {
                        return ea.cmp(&eb);
                    }
                }
                (Some(_), None) => return Ordering::Greater,
                (None, Some(_)) => return Ordering::Less,
                (None, None) => return Ordering::Equal,
            }
        }
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Sparse element: finite map from monomials to nonzero rational
/// coefficients. Immutable value semantics; every operation returns a
/// fresh element, so elements are freely shareable across threads.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Element {
    terms: BTreeMap<Monomial, Scalar>,
}

impl Element {
    pub fn zero() -> Self {
        Element::default()
    }

    pub fn constant(c: Scalar) -> Self {
        let mut e = Element::zero();
        e.add_term(Monomial::one(), c);
        e
    }

    pub fn from_monomial(m: Monomial, c: Scalar) -> Self {
        let mut e = Element::zero();
        e.add_term(m, c);
        e
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    /// Terms in ascending canonical order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter()
    }

    /// Terms leading-first (descending canonical order); this is the
    /// serialization order.
    pub fn terms_desc(&self) -> impl Iterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter().rev()
    }

    pub fn coefficient(&self, m: &Monomial) -> Scalar {
        self.terms.get(m).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn add_term(&mut self, m: Monomial, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = o.get() + &c;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn add(&self, other: &Element) -> Element {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Element) -> Element {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }

    pub fn neg(&self) -> Element {
        let mut out = Element::zero();
        for (m, c) in &self.terms {
            out.terms.insert(m.clone(), -c.clone());
        }
        out
    }

    pub fn scale(&self, s: &Scalar) -> Element {
        if s.is_zero() {
            return Element::zero();
        }
        let mut out = Element::zero();
        for (m, c) in &self.terms {
            out.terms.insert(m.clone(), c * s);
        }
        out
    }

    /// Graded-commutative product. Monomials refer to the same generator
    /// universe; [`SullivanAlgebra::multiply`] is the checked entry point.
    pub fn mul(&self, other: &Element) -> Element {
        let mut out = Element::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                if let Some((m, sign)) = ma.mul(mb) {
                    let mut c = ca * cb;
                    if sign < 0 {
                        c = -c;
                    }
                    out.add_term(m, c);
                }
            }
        }
        out
    }

    /// Total degree if the element is homogeneous; `None` for 0 or mixed.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut deg = None;
        for m in self.terms.keys() {
            match deg {
                None => deg = Some(m.degree()),
                Some(d) if d != m.degree() => return None,
                _ => {}
            }
        }
        deg
    }

    /// Largest generator id mentioned, if any.
    fn max_generator_id(&self) -> Option<GenId> {
        self.terms
            .keys()
            .filter_map(|m| m.support().map(|(g, _)| g).max())
            .max()
    }
}

/// Lists every violated invariant; empty means valid.
#[derive(Debug, Clone, Default)]
pub struct ValidationReport {
    pub problems: Vec<String>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.problems.is_empty()
    }

    pub fn push(&mut self, msg: impl Into<String>) {
        self.problems.push(msg.into());
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.problems.is_empty() {
            write!(f, "ok")
        } else {
            for p in &self.problems {
                writeln!(f, "{p}")?;
            }
            Ok(())
        }
    }
}

/// Free graded-commutative algebra with a differential given on generators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SullivanAlgebra {
    generators: Vec<Generator>,
    differentials: Vec<Element>,
}

impl SullivanAlgebra {
    /// Builds the algebra with zero differential; degrees must be positive
    /// and names unique.
    pub fn new(gens: Vec<(String, u32)>) -> Result<Self, AlgebraError> {
        let mut seen = std::collections::BTreeSet::new();
        for (name, degree) in &gens {
            if *degree == 0 {
                return Err(AlgebraError::NonPositiveDegree(name.clone()));
            }
            if !seen.insert(name.clone()) {
                return Err(AlgebraError::DuplicateName(name.clone()));
            }
        }
        let n = gens.len();
        Ok(SullivanAlgebra {
            generators: gens
                .into_iter()
                .map(|(name, degree)| Generator { name, degree })
                .collect(),
            differentials: vec![Element::zero(); n],
        })
    }

    pub fn generator_count(&self) -> usize {
        self.generators.len()
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn generator(&self, id: GenId) -> Result<&Generator, AlgebraError> {
        self.generators
            .get(id as usize)
            .ok_or(AlgebraError::UnknownGenerator(id))
    }

    pub fn generator_id(&self, name: &str) -> Option<GenId> {
        self.generators
            .iter()
            .position(|g| g.name == name)
            .map(|p| p as GenId)
    }

    pub fn set_differential(&mut self, id: GenId, image: Element) -> Result<(), AlgebraError> {
        self.generator(id)?;
        self.validate_element(&image)?;
        self.differentials[id as usize] = image;
        Ok(())
    }

    pub fn differential_of(&self, id: GenId) -> Result<&Element, AlgebraError> {
        self.generator(id)?;
        Ok(&self.differentials[id as usize])
    }

    /// The generator as a degree-`deg` element with coefficient 1.
    pub fn generator_element(&self, id: GenId) -> Result<Element, AlgebraError> {
        let g = self.generator(id)?;
        let m = if g.is_even() {
            Monomial { degree: g.degree, even: vec![(id, 1)], odd: Vec::new() }
        } else {
            Monomial { degree: g.degree, even: Vec::new(), odd: vec![id] }
        };
        Ok(Element::from_monomial(m, Scalar::one()))
    }

    /// Builds `coeff * prod(evens) * odds` with odds taken in the written
    /// order (the Koszul sign of sorting is applied; a repeated odd
    /// generator gives zero).
    pub fn monomial_element(
        &self,
        evens: &[(GenId, u32)],
        odds: &[GenId],
        coeff: Scalar,
    ) -> Result<Element, AlgebraError> {
        let mut acc = Element::constant(coeff);
        for &(id, exp) in evens {
            let g = self.generator(id)?;
            if !g.is_even() {
                return Err(AlgebraError::UniverseMismatch(format!(
                    "generator `{}` is odd but used with an exponent",
                    g.name
                )));
            }
            for _ in 0..exp {
                acc = acc.mul(&self.generator_element(id)?);
            }
        }
        for &id in odds {
            let g = self.generator(id)?;
            if g.is_even() {
                return Err(AlgebraError::UniverseMismatch(format!(
                    "generator `{}` is even but listed as odd",
                    g.name
                )));
            }
            acc = acc.mul(&self.generator_element(id)?);
        }
        Ok(acc)
    }

    /// Checks that `e` only references this algebra's generators with the
    /// right parities and consistent degrees.
    pub fn validate_element(&self, e: &Element) -> Result<(), AlgebraError> {
        if let Some(max) = e.max_generator_id() {
            if max as usize >= self.generators.len() {
                return Err(AlgebraError::UnknownGenerator(max));
            }
        }
        for m in e.terms.keys() {
            let mut deg = 0u32;
            for &(id, exp) in &m.even {
                let g = self.generator(id)?;
                if !g.is_even() {
                    return Err(AlgebraError::UniverseMismatch(format!(
                        "odd generator `{}` appears in the even part",
                        g.name
                    )));
                }
                deg += g.degree * exp;
            }
            for &id in &m.odd {
                let g = self.generator(id)?;
                if g.is_even() {
                    return Err(AlgebraError::UniverseMismatch(format!(
                        "even generator `{}` appears in the odd part",
                        g.name
                    )));
                }
                deg += g.degree;
            }
            if deg != m.degree() {
                return Err(AlgebraError::UniverseMismatch(format!(
                    "monomial claims degree {} but has degree {} here",
                    m.degree(),
                    deg
                )));
            }
        }
        Ok(())
    }

    /// Checked graded-commutative product.
    pub fn multiply(&self, a: &Element, b: &Element) -> Result<Element, AlgebraError> {
        self.validate_element(a)?;
        self.validate_element(b)?;
        Ok(a.mul(b))
    }

    /// Extends the generator assignments as a derivation of degree +1:
    /// `d(ab) = (da) b + (-1)^{|a|} a (db)`.
    pub fn apply_differential(&self, e: &Element) -> Result<Element, AlgebraError> {
        self.validate_element(e)?;
        let mut out = Element::zero();
        for (m, c) in &e.terms {
            let dm = self.d_monomial(m);
            out = out.add(&dm.scale(c));
        }
        Ok(out)
    }

    fn d_monomial(&self, m: &Monomial) -> Element {
        let mut out = Element::zero();
        let odd_sign = if m.word_length().is_multiple_of(2) { 1i64 } else { -1 };
        for &(id, exp) in &m.even {
            let dg = &self.differentials[id as usize];
            if dg.is_zero() {
                continue;
            }
            // d(g^a . rest) contributes a . g^{a-1} . dg . rest; pulling dg
            // (odd degree) to the right past the odd tail costs odd_sign.
            let mut rest = m.with_even_lowered(id);
            rest.degree = m.degree - self.generators[id as usize].degree;
            let factor = scalar_int(odd_sign * i64::from(exp));
            out = out.add(&Element::from_monomial(rest, factor).mul(dg));
        }
        for (pos, &id) in m.odd.iter().enumerate() {
            let dg = &self.differentials[id as usize];
            if dg.is_zero() {
                continue;
            }
            let mut rest = m.without_odd(id);
            rest.degree = m.degree - self.generators[id as usize].degree;
            let sign = if pos % 2 == 0 { 1 } else { -1 };
            out = out.add(&Element::from_monomial(rest, scalar_int(sign)).mul(dg));
        }
        out
    }

    /// Reports every violated Sullivan invariant: dangling references,
    /// non-homogeneous or wrong-degree differentials, and d^2 != 0 on a
    /// generator (which, d being a derivation, settles d^2 = 0 everywhere).
    pub fn check_well_formed(&self) -> ValidationReport {
        let mut report = ValidationReport::default();
        for (id, gen) in self.generators.iter().enumerate() {
            let dg = &self.differentials[id];
            if let Err(e) = self.validate_element(dg) {
                report.push(format!("d {} references bad generators: {e}", gen.name));
                continue;
            }
            if !dg.is_zero() {
                match dg.homogeneous_degree() {
                    Some(d) if d == gen.degree + 1 => {}
                    Some(d) => report.push(format!(
                        "d {} has degree {} (expected {})",
                        gen.name,
                        d,
                        gen.degree + 1
                    )),
                    None => report.push(format!("d {} is not homogeneous", gen.name)),
                }
            }
            match self.apply_differential(dg) {
                Ok(dd) => {
                    if !dd.is_zero() {
                        report.push(format!("d^2 {} != 0", gen.name));
                    }
                }
                Err(e) => report.push(format!("d^2 {} could not be evaluated: {e}", gen.name)),
            }
        }
        report
    }

    /// All monomials of total degree exactly `n`, leading-first in the
    /// canonical (graded lexicographic by generator id) order.
    pub fn monomial_basis(&self, n: u32) -> Vec<Monomial> {
        let mut out = Vec::new();
        let mut even = Vec::new();
        let mut odd = Vec::new();
        self.enumerate_basis(0, n, &mut even, &mut odd, &mut out);
        out.sort_by(|a, b| b.cmp(a));
        out
    }

    fn enumerate_basis(
        &self,
        from: usize,
        remaining: u32,
        even: &mut Vec<(GenId, u32)>,
        odd: &mut Vec<GenId>,
        out: &mut Vec<Monomial>,
    ) {
        if remaining == 0 {
            let mut degree = 0;
            for &(id, e) in even.iter() {
                degree += self.generators[id as usize].degree * e;
            }
            for &id in odd.iter() {
                degree += self.generators[id as usize].degree;
            }
            out.push(Monomial { degree, even: even.clone(), odd: odd.clone() });
            return;
        }
        if from >= self.generators.len() {
            return;
        }
        let gen = &self.generators[from];
        // exponent 0 first
        self.enumerate_basis(from + 1, remaining, even, odd, out);
        if gen.is_even() {
            let mut exp = 1;
            while exp * gen.degree <= remaining {
                even.push((from as GenId, exp));
                self.enumerate_basis(from + 1, remaining - exp * gen.degree, even, odd, out);
                even.pop();
                exp += 1;
            }
        } else if gen.degree <= remaining {
            odd.push(from as GenId);
            self.enumerate_basis(from + 1, remaining - gen.degree, even, odd, out);
            odd.pop();
        }
    }

    /// dim of the degree-`n` graded piece, by generating-function
    /// convolution (no basis materialization).
    pub fn graded_dimension(&self, n: u32) -> u128 {
        let n = n as usize;
        let mut coeffs = vec![0u128; n + 1];
        coeffs[0] = 1;
        for gen in &self.generators {
            let d = gen.degree as usize;
            if gen.is_even() {
                // multiply by 1/(1 - q^d)
                for i in d..=n {
                    coeffs[i] = coeffs[i].saturating_add(coeffs[i - d]);
                }
            } else {
                // multiply by (1 + q^d)
                for i in (d..=n).rev() {
                    coeffs[i] = coeffs[i].saturating_add(coeffs[i - d]);
                }
            }
        }
        coeffs[n]
    }

    /// Matrix of `d: degree n -> degree n+1` with respect to the canonical
    /// bases (rows: degree n+1 basis, columns: degree n basis).
    pub fn differential_matrix(&self, n: u32) -> Result<SparseMatrix, AlgebraError> {
        let source = self.monomial_basis(n);
        let target = self.monomial_basis(n + 1);
        let index: BTreeMap<&Monomial, usize> =
            target.iter().enumerate().map(|(i, m)| (m, i)).collect();
        let mut mat = SparseMatrix::new(target.len(), source.len());
        for (j, m) in source.iter().enumerate() {
            let dm = self.d_monomial(m);
            for (mono, coeff) in dm.terms() {
                let Some(&i) = index.get(mono) else {
                    let gen = mono
                        .support()
                        .next()
                        .and_then(|(g, _)| self.generators.get(g as usize))
                        .map(|g| g.name.clone())
                        .unwrap_or_default();
                    return Err(AlgebraError::InhomogeneousDifferential { gen, expected: n + 1 });
                };
                mat.push(i, j, coeff.clone());
            }
        }
        Ok(mat)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::scalar_int;

    fn two_odd_two_even() -> SullivanAlgebra {
        SullivanAlgebra::new(vec![
            ("xa".into(), 2),
            ("xb".into(), 2),
            ("y1".into(), 3),
            ("y2".into(), 3),
        ])
        .unwrap()
    }

    #[test]
    fn odd_generators_anticommute() {
        let a = two_odd_two_even();
        let y1 = a.generator_element(2).unwrap();
        let y2 = a.generator_element(3).unwrap();
        let fwd = a.multiply(&y1, &y2).unwrap();
        let bwd = a.multiply(&y2, &y1).unwrap();
        assert_eq!(fwd, bwd.neg());
        assert!(!fwd.is_zero());
    }

    #[test]
    fn odd_square_is_zero() {
        let a = two_odd_two_even();
        let y1 = a.generator_element(2).unwrap();
        assert!(a.multiply(&y1, &y1).unwrap().is_zero());
    }

    #[test]
    fn even_square_expands() {
        let a = two_odd_two_even();
        let xa = a.generator_element(0).unwrap();
        let xb = a.generator_element(1).unwrap();
        let sum = xa.add(&xb);
        let sq = a.multiply(&sum, &sum).unwrap();
        let expected = a
            .monomial_element(&[(0, 2)], &[], scalar_int(1))
            .unwrap()
            .add(&a.monomial_element(&[(0, 1), (1, 1)], &[], scalar_int(2)).unwrap())
            .add(&a.monomial_element(&[(1, 2)], &[], scalar_int(1)).unwrap());
        assert_eq!(sq, expected);
    }

    #[test]
    fn koszul_sign_via_written_order() {
        let a = two_odd_two_even();
        let fwd = a.monomial_element(&[], &[2, 3], scalar_int(1)).unwrap();
        let bwd = a.monomial_element(&[], &[3, 2], scalar_int(1)).unwrap();
        assert_eq!(fwd, bwd.neg());
        assert!(a.monomial_element(&[], &[2, 2], scalar_int(1)).unwrap().is_zero());
    }

    /// d y = xa^2 + xa xb + xb^2 on one edge, the k = 2 shape.
    fn edge_algebra() -> SullivanAlgebra {
        let mut a = SullivanAlgebra::new(vec![
            ("x1".into(), 2),
            ("x2".into(), 2),
            ("y".into(), 3),
        ])
        .unwrap();
        let dy = a
            .monomial_element(&[(0, 2)], &[], scalar_int(1))
            .unwrap()
            .add(&a.monomial_element(&[(0, 1), (1, 1)], &[], scalar_int(1)).unwrap())
            .add(&a.monomial_element(&[(1, 2)], &[], scalar_int(1)).unwrap());
        a.set_differential(2, dy).unwrap();
        a
    }

    #[test]
    fn leibniz_on_x_times_y() {
        // d(x1 y) = x1 dy since d x1 = 0
        let a = edge_algebra();
        let x1y = a.monomial_element(&[(0, 1)], &[2], scalar_int(1)).unwrap();
        let d = a.apply_differential(&x1y).unwrap();
        let x1 = a.generator_element(0).unwrap();
        let dy = a.differential_of(2).unwrap().clone();
        assert_eq!(d, a.multiply(&x1, &dy).unwrap());
        assert_eq!(d.homogeneous_degree(), Some(6));
    }

    #[test]
    fn d_squared_zero_on_generators() {
        let a = edge_algebra();
        assert!(a.check_well_formed().is_valid());
        for id in 0..a.generator_count() as GenId {
            let dd = a
                .apply_differential(a.differential_of(id).unwrap())
                .unwrap();
            assert!(dd.is_zero());
        }
    }

    #[test]
    fn degree_violation_reported() {
        // d x1 = x2 raises degree by 0, not 1
        let mut a = SullivanAlgebra::new(vec![("x1".into(), 2), ("x2".into(), 2)]).unwrap();
        let x2 = a.generator_element(1).unwrap();
        a.set_differential(0, x2).unwrap();
        let report = a.check_well_formed();
        assert!(!report.is_valid());
        assert!(report.problems.iter().any(|p| p.contains("degree")));
    }

    #[test]
    fn d_squared_violation_reported() {
        // g (odd, 1) -> g' (even, 2) -> g'' would need d g' closed; make it not
        let mut a = SullivanAlgebra::new(vec![
            ("g".into(), 1),
            ("gp".into(), 2),
            ("gq".into(), 3),
        ])
        .unwrap();
        let gp = a.generator_element(1).unwrap();
        let gq = a.generator_element(2).unwrap();
        a.set_differential(0, gp).unwrap();
        a.set_differential(1, gq).unwrap();
        let report = a.check_well_formed();
        assert!(report.problems.iter().any(|p| p.contains("d^2 g")));
    }

    #[test]
    fn basis_small_degrees() {
        let a = edge_algebra();
        let names = |v: &Vec<Monomial>| -> Vec<String> {
            v.iter().map(|m| format::monomial_to_string(&a, m)).collect()
        };
        assert_eq!(names(&a.monomial_basis(2)), vec!["x1", "x2"]);
        assert_eq!(names(&a.monomial_basis(3)), vec!["y"]);
        assert_eq!(names(&a.monomial_basis(4)), vec!["x1^2", "x1*x2", "x2^2"]);
        assert_eq!(a.monomial_basis(1).len(), 0);
        assert_eq!(a.monomial_basis(0).len(), 1);
    }

    #[test]
    fn basis_counts_match_generating_function() {
        let a = edge_algebra();
        for n in 0..=16 {
            assert_eq!(a.monomial_basis(n).len() as u128, a.graded_dimension(n), "degree {n}");
        }
    }

    #[test]
    fn edge_matrix_is_ones_row() {
        let a = edge_algebra();
        let m = a.differential_matrix(3).unwrap();
        assert_eq!((m.rows(), m.cols()), (3, 1));
        let dense = m.to_dense();
        for row in &dense {
            assert_eq!(row[0], scalar_int(1));
        }
    }

    #[test]
    fn consecutive_matrices_compose_to_zero() {
        let a = edge_algebra();
        for n in 0..10 {
            let d_n = a.differential_matrix(n).unwrap();
            let d_n1 = a.differential_matrix(n + 1).unwrap();
            assert!(d_n1.compose(&d_n).is_zero(), "degree {n}");
        }
    }

    #[test]
    fn empty_degree_gives_empty_matrix() {
        let a = edge_algebra();
        let m = a.differential_matrix(1).unwrap();
        assert_eq!(m.cols(), 0);
        assert_eq!(m.rank(), 0);
    }

    #[test]
    fn values_are_shareable_across_threads() {
        fn assert_send_sync<T: Send + Sync>() {}
        assert_send_sync::<Element>();
        assert_send_sync::<Monomial>();
        assert_send_sync::<SullivanAlgebra>();
        assert_send_sync::<crate::graph::Graph>();
        assert_send_sync::<crate::linalg::SparseMatrix>();
        // operations are pure: concurrent reads of one algebra are fine
        let a = std::sync::Arc::new(edge_algebra());
        let handles: Vec<_> = (0..4)
            .map(|n| {
                let a = a.clone();
                std::thread::spawn(move || a.differential_matrix(n).unwrap().rank())
            })
            .collect();
        for h in handles {
            h.join().unwrap();
        }
    }
}
