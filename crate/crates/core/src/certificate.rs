//! Coloring certificates as algebra morphisms.
//!
//! A proposed (k+1)-coloring transcribes to the assignment
//! `x_i -> zeta^{e_i} z` into `Q(zeta_{k+1})[z]` (deg z = 2, zeta a
//! primitive (k+1)-st root of unity represented modulo the cyclotomic
//! polynomial Phi_{k+1}); odd generators go to 0 for degree reasons. The
//! verifier accepts iff the assignment commutes with differentials, i.e.
//! iff every edge relation maps to 0 — a polynomial-time check.

use std::fmt;

use num_traits::{One, Zero};
use thiserror::Error;

use crate::algebra::{GenId, SullivanAlgebra};
use crate::graph::{Coloring, Graph};
use crate::reduction::encode_shifted;
use crate::scalar::Scalar;
use crate::ParseError;

#[derive(Debug, Error)]
pub enum CertificateError {
    #[error("color {color} of vertex {vertex} out of range 0..={max}")]
    ColorOutOfRange { vertex: u32, color: u32, max: u32 },
    #[error("assignment covers {got} degree-2 generators, algebra has {expected}")]
    CoverageMismatch { got: usize, expected: usize },
    #[error("generator `{0}` has even degree {1} != 2; not an encoded algebra")]
    UnsupportedEvenDegree(String, u32),
    #[error("differential of `{0}` involves odd generators; not an encoded algebra")]
    UnsupportedDifferential(String),
    #[error("certificate covers vertex {vertex} not in 1..={n}")]
    VertexOutOfRange { vertex: u32, n: u32 },
    #[error("certificate misses vertex {0}")]
    MissingVertex(u32),
    #[error("k must be at least 2 (got {0})")]
    KTooSmall(u32),
}

/// Element of Q(zeta_m): rational coefficient vector modulo Phi_m.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CyclotomicScalar {
    m: u32,
    coeffs: Vec<Scalar>,
}

impl CyclotomicScalar {
    pub fn order(&self) -> u32 {
        self.m
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }
}

impl fmt::Display for CyclotomicScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| match i {
                0 => crate::scalar::scalar_to_string(c),
                1 => format!("{}*zeta", crate::scalar::scalar_to_string(c)),
                _ => format!("{}*zeta^{}", crate::scalar::scalar_to_string(c), i),
            })
            .collect();
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

/// Q(zeta_m) with precomputed reductions of zeta powers.
#[derive(Debug, Clone)]
pub struct CyclotomicField {
    m: u32,
    /// Phi_m, ascending coefficients, monic of degree phi(m).
    modulus: Vec<Scalar>,
    /// zeta^j for 0 <= j < max(m, 2 deg - 1), reduced.
    powers: Vec<Vec<Scalar>>,
}

impl CyclotomicField {
    pub fn new(m: u32) -> Self {
        assert!(m >= 1, "root order must be positive");
        let modulus = cyclotomic_polynomial(m);
        let deg = modulus.len() - 1;
        let table = deg.max(1) * 2;
        let mut powers = Vec::with_capacity(table.max(m as usize));
        let mut current = vec![Scalar::one()];
        for _ in 0..table.max(m as usize) {
            powers.push(reduce_mod(&current, &modulus));
            current.insert(0, Scalar::zero()); // multiply by x
        }
        CyclotomicField { m, modulus, powers }
    }

    pub fn order(&self) -> u32 {
        self.m
    }

    pub fn degree(&self) -> usize {
        self.modulus.len() - 1
    }

    pub fn modulus(&self) -> &[Scalar] {
        &self.modulus
    }

    pub fn zero(&self) -> CyclotomicScalar {
        CyclotomicScalar { m: self.m, coeffs: vec![Scalar::zero(); self.degree().max(1)] }
    }

    pub fn one(&self) -> CyclotomicScalar {
        self.zeta_pow(0)
    }

    /// zeta^e (exponent taken mod m), reduced mod Phi_m.
    pub fn zeta_pow(&self, e: u64) -> CyclotomicScalar {
        let e = (e % u64::from(self.m)) as usize;
        let mut coeffs = self.powers[e].clone();
        coeffs.resize(self.degree().max(1), Scalar::zero());
        CyclotomicScalar { m: self.m, coeffs }
    }

    pub fn add(&self, a: &CyclotomicScalar, b: &CyclotomicScalar) -> CyclotomicScalar {
        assert_eq!(a.m, self.m);
        assert_eq!(b.m, self.m);
        let coeffs = a
            .coeffs
            .iter()
            .zip(&b.coeffs)
            .map(|(x, y)| x + y)
            .collect();
        CyclotomicScalar { m: self.m, coeffs }
    }

    pub fn scale(&self, a: &CyclotomicScalar, s: &Scalar) -> CyclotomicScalar {
        CyclotomicScalar { m: self.m, coeffs: a.coeffs.iter().map(|x| x * s).collect() }
    }

    pub fn mul(&self, a: &CyclotomicScalar, b: &CyclotomicScalar) -> CyclotomicScalar {
        assert_eq!(a.m, self.m);
        assert_eq!(b.m, self.m);
        let mut conv = vec![Scalar::zero(); a.coeffs.len() + b.coeffs.len()];
        for (i, x) in a.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.coeffs.iter().enumerate() {
                if !y.is_zero() {
                    conv[i + j] += x * y;
                }
            }
        }
        let mut coeffs = reduce_mod(&conv, &self.modulus);
        coeffs.resize(self.degree().max(1), Scalar::zero());
        CyclotomicScalar { m: self.m, coeffs }
    }
}

/// Phi_m by the standard recursion: divide x^m - 1 by Phi_d for every
/// proper divisor d of m. Ascending coefficients, exact division.
pub fn cyclotomic_polynomial(m: u32) -> Vec<Scalar> {
    assert!(m >= 1);
    if m == 1 {
        return vec![-Scalar::one(), Scalar::one()]; // x - 1
    }
    let mut num = vec![Scalar::zero(); m as usize + 1];
    num[0] = -Scalar::one();
    num[m as usize] = Scalar::one();
    for d in 1..m {
        if m.is_multiple_of(d) {
            let phi_d = cyclotomic_polynomial(d);
            num = poly_div_exact(&num, &phi_d);
        }
    }
    num
}

/// Exact polynomial division (panics on nonzero remainder — callers divide
/// known factors only). Ascending coefficients.
fn poly_div_exact(num: &[Scalar], den: &[Scalar]) -> Vec<Scalar> {
    let mut rem: Vec<Scalar> = num.to_vec();
    let dd = den.len() - 1;
    let lead = &den[dd];
    assert!(!lead.is_zero());
    let mut quot = vec![Scalar::zero(); rem.len().saturating_sub(dd)];
    for i in (dd..rem.len()).rev() {
        if rem[i].is_zero() {
            continue;
        }
        let q = &rem[i] / lead;
        quot[i - dd] = q.clone();
        for j in 0..=dd {
            let delta = &den[j] * &q;
            rem[i - dd + j] = &rem[i - dd + j] - &delta;
        }
    }
    assert!(rem.iter().all(|c| c.is_zero()), "division was not exact");
    while quot.len() > 1 && quot.last().is_some_and(|c| c.is_zero()) {
        quot.pop();
    }
    quot
}

fn reduce_mod(poly: &[Scalar], modulus: &[Scalar]) -> Vec<Scalar> {
    let deg = modulus.len() - 1;
    let mut rem: Vec<Scalar> = poly.to_vec();
    for i in (deg..rem.len()).rev() {
        if rem[i].is_zero() {
            continue;
        }
        let q = rem[i].clone(); // modulus is monic
        for j in 0..=deg {
            let delta = &modulus[j] * &q;
            rem[i - deg + j] = &rem[i - deg + j] - &delta;
        }
    }
    rem.truncate(deg.max(1));
    rem.resize(deg.max(1), Scalar::zero());
    rem
}

/// Morphism data on degree-2 generators: `x_i -> zeta_m^{e_i} z`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Assignment {
    pub m: u32,
    pub exponents: Vec<u32>,
}

/// Transcribes a coloring with colors in `0..=k` to the assignment with
/// m = k+1 and e_i = color(i). Unchecked beyond the color range: improper
/// colorings transcribe fine and fail verification later.
pub fn assignment_from_coloring(coloring: &Coloring, k: u32) -> Result<Assignment, CertificateError> {
    if k < 2 {
        return Err(CertificateError::KTooSmall(k));
    }
    for (i, &c) in coloring.colors().iter().enumerate() {
        if c > k {
            return Err(CertificateError::ColorOutOfRange {
                vertex: i as u32 + 1,
                color: c,
                max: k,
            });
        }
    }
    Ok(Assignment { m: k + 1, exponents: coloring.colors().to_vec() })
}

/// Result of the morphism check; a rejection names the first failing edge
/// generator and the nonzero cyclotomic sum it produced.
#[derive(Debug, Clone)]
pub enum VerifyOutcome {
    Accepted,
    Rejected {
        generator: String,
        edge: Option<(u32, u32)>,
        residue: CyclotomicScalar,
    },
}

impl VerifyOutcome {
    pub fn accepted(&self) -> bool {
        matches!(self, VerifyOutcome::Accepted)
    }

    pub fn describe(&self) -> String {
        match self {
            VerifyOutcome::Accepted => "accept: assignment commutes with differentials".into(),
            VerifyOutcome::Rejected { generator, edge, residue } => match edge {
                Some((a, b)) => format!(
                    "reject: edge ({a},{b}) (generator {generator}) maps to {residue} != 0"
                ),
                None => format!("reject: generator {generator} maps to {residue} != 0"),
            },
        }
    }
}

fn edge_of_generator_name(name: &str) -> Option<(u32, u32)> {
    let rest = name.strip_prefix("y_")?;
    let (a, b) = rest.split_once('_')?;
    Some((a.parse().ok()?, b.parse().ok()?))
}

/// Checks whether `x_i -> zeta^{e_i} z`, `y -> 0` defines a morphism of
/// differential graded algebras out of an encoded algebra: for every odd
/// generator the image of its differential must vanish in
/// `Q(zeta_m)[z]`. Runs in time polynomial in (edges, k).
pub fn verify_morphism(
    algebra: &SullivanAlgebra,
    assignment: &Assignment,
) -> Result<VerifyOutcome, CertificateError> {
    let field = CyclotomicField::new(assignment.m);
    let mut even_index = Vec::new(); // gen id -> exponent slot
    for (id, gen) in algebra.generators().iter().enumerate() {
        if gen.is_even() {
            if gen.degree != 2 {
                return Err(CertificateError::UnsupportedEvenDegree(
                    gen.name.clone(),
                    gen.degree,
                ));
            }
            even_index.push(id as GenId);
        }
    }
    if even_index.len() != assignment.exponents.len() {
        return Err(CertificateError::CoverageMismatch {
            got: assignment.exponents.len(),
            expected: even_index.len(),
        });
    }
    let exponent_of = |id: GenId| -> Option<u64> {
        even_index
            .iter()
            .position(|&g| g == id)
            .map(|slot| u64::from(assignment.exponents[slot]))
    };
    for (id, gen) in algebra.generators().iter().enumerate() {
        if gen.is_even() {
            continue;
        }
        let image = algebra.differential_of(id as GenId).expect("id in range");
        // bucket the substituted image by powers of z
        let mut buckets: std::collections::BTreeMap<u32, CyclotomicScalar> = Default::default();
        for (mono, coeff) in image.terms() {
            if !mono.odd_part().is_empty() {
                return Err(CertificateError::UnsupportedDifferential(gen.name.clone()));
            }
            let mut zeta_exp: u64 = 0;
            let mut z_power: u32 = 0;
            for &(g, e) in mono.even_part() {
                let Some(exp) = exponent_of(g) else {
                    return Err(CertificateError::UnsupportedDifferential(gen.name.clone()));
                };
                zeta_exp = (zeta_exp + exp * u64::from(e)) % u64::from(assignment.m);
                z_power += e;
            }
            let term = field.scale(&field.zeta_pow(zeta_exp), coeff);
            let entry = buckets.entry(z_power).or_insert_with(|| field.zero());
            *entry = field.add(entry, &term);
        }
        for (_, sum) in buckets {
            if !sum.is_zero() {
                return Ok(VerifyOutcome::Rejected {
                    generator: gen.name.clone(),
                    edge: edge_of_generator_name(&gen.name),
                    residue: sum,
                });
            }
        }
    }
    Ok(VerifyOutcome::Accepted)
}

/// Soundness/completeness bridge: the morphism check on
/// `encode_shifted(G, k)` accepts exactly the proper (k+1)-colorings.
/// Returns both sides for reporting.
pub fn verify_is_proper_iff(
    coloring: &Coloring,
    graph: &Graph,
    k: u32,
) -> Result<(bool, bool), CertificateError> {
    let algebra = encode_shifted(graph, k).map_err(|_| CertificateError::KTooSmall(k))?;
    let assignment = assignment_from_coloring(coloring, k)?;
    let accepted = verify_morphism(&algebra, &assignment)?.accepted();
    Ok((accepted, coloring.is_proper(graph)))
}

/// Parsed certificate file: coloring form (`v` lines) or raw exponent form
/// (`e` lines).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CertificateFile {
    pub k: u32,
    pub raw: bool,
    pub entries: Vec<(u32, u32)>,
}

/// Format: first line `cert k=<k>`, then either `v <vertex> <color>` lines
/// or `e <vertex> <exponent>` lines (not mixed).
pub fn parse_certificate(text: &str) -> Result<CertificateFile, ParseError> {
    let mut lines = text.lines().enumerate();
    let header = loop {
        match lines.next() {
            Some((lineno, raw)) => {
                let line = raw.trim();
                if line.is_empty() {
                    continue;
                }
                break (lineno + 1, line.to_string());
            }
            None => return Err(ParseError::new(1, "empty certificate")),
        }
    };
    let (hline, htext) = header;
    let k = htext
        .strip_prefix("cert")
        .map(str::trim)
        .and_then(|rest| rest.strip_prefix("k="))
        .and_then(|v| v.trim().parse::<u32>().ok())
        .ok_or_else(|| ParseError::new(hline, "expected header `cert k=<k>`"))?;
    let mut raw_kind: Option<bool> = None;
    let mut entries = Vec::new();
    for (lineno, rawline) in lines {
        let lineno = lineno + 1;
        let line = rawline.trim();
        if line.is_empty() || line.starts_with('c') {
            continue;
        }
        let words: Vec<&str> = line.split_whitespace().collect();
        if words.len() != 3 || (words[0] != "v" && words[0] != "e") {
            return Err(ParseError::new(lineno, "expected `v <vertex> <color>` or `e <vertex> <exponent>`"));
        }
        let is_raw = words[0] == "e";
        match raw_kind {
            None => raw_kind = Some(is_raw),
            Some(prev) if prev != is_raw => {
                return Err(ParseError::new(lineno, "cannot mix `v` and `e` lines"));
            }
            _ => {}
        }
        let vertex: u32 = words[1]
            .parse()
            .map_err(|_| ParseError::new(lineno, "bad vertex index"))?;
        let value: u32 = words[2]
            .parse()
            .map_err(|_| ParseError::new(lineno, "bad value"))?;
        entries.push((vertex, value));
    }
    Ok(CertificateFile { k, raw: raw_kind.unwrap_or(false), entries })
}

/// Completes a parsed certificate against a graph on `n` vertices.
pub fn certificate_to_assignment(
    cert: &CertificateFile,
    n: u32,
) -> Result<Assignment, CertificateError> {
    if cert.k < 2 {
        return Err(CertificateError::KTooSmall(cert.k));
    }
    let m = cert.k + 1;
    let mut values: Vec<Option<u32>> = vec![None; n as usize];
    for &(vertex, value) in &cert.entries {
        if vertex == 0 || vertex > n {
            return Err(CertificateError::VertexOutOfRange { vertex, n });
        }
        if !cert.raw && value > cert.k {
            return Err(CertificateError::ColorOutOfRange {
                vertex,
                color: value,
                max: cert.k,
            });
        }
        values[vertex as usize - 1] = Some(value % m);
    }
    let mut exponents = Vec::with_capacity(n as usize);
    for (i, v) in values.into_iter().enumerate() {
        exponents.push(v.ok_or(CertificateError::MissingVertex(i as u32 + 1))?);
    }
    Ok(Assignment { m, exponents })
}
