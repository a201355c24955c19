//! Textual algebra format.
//!
//! ```text
//! sullivan v1
//! gen x1 2
//! gen x2 2
//! gen y_1_2 3
//! d x1 = 0
//! d x2 = 0
//! d y_1_2 = x1^2 + x1*x2 + x2^2
//! ```
//!
//! Polynomials use `+`, `-`, integer or rational coefficients, `*` and `^`;
//! whitespace is insignificant. Generator order in the file fixes ids, and
//! the writer is canonical: re-parsing a serialized algebra reproduces it
//! byte for byte.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::{Element, GenId, Monomial, SullivanAlgebra};
use crate::scalar::{scalar_to_string, Scalar};
use crate::ParseError;

pub fn monomial_to_string(algebra: &SullivanAlgebra, m: &Monomial) -> String {
    if m.is_constant() {
        return "1".to_string();
    }
    let mut parts = Vec::new();
    for (id, exp) in m.support() {
        let name = &algebra.generators()[id as usize].name;
        if exp == 1 {
            parts.push(name.clone());
        } else {
            parts.push(format!("{name}^{exp}"));
        }
    }
    parts.join("*")
}

pub fn element_to_string(algebra: &SullivanAlgebra, e: &Element) -> String {
    if e.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (idx, (m, c)) in e.terms_desc().enumerate() {
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
        if m.is_constant() {
            out.push_str(&scalar_to_string(&mag));
        } else if mag.is_one() {
            out.push_str(&monomial_to_string(algebra, m));
        } else {
            out.push_str(&scalar_to_string(&mag));
            out.push('*');
            out.push_str(&monomial_to_string(algebra, m));
        }
    }
    out
}

pub fn algebra_to_string(algebra: &SullivanAlgebra) -> String {
    let mut out = String::from("sullivan v1\n");
    for g in algebra.generators() {
        out.push_str(&format!("gen {} {}\n", g.name, g.degree));
    }
    for (id, g) in algebra.generators().iter().enumerate() {
        let d = algebra.differential_of(id as GenId).expect("id in range");
        out.push_str(&format!("d {} = {}\n", g.name, element_to_string(algebra, d)));
    }
    out
}

pub fn parse_algebra(text: &str) -> Result<SullivanAlgebra, ParseError> {
    let mut gens: Vec<(String, u32)> = Vec::new();
    let mut d_lines: Vec<(usize, String, String)> = Vec::new();
    let mut saw_header = false;
    for (lineno, raw) in text.lines().enumerate() {
        let lineno = lineno + 1;
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        if !saw_header {
            if line.split_whitespace().collect::<Vec<_>>() != ["sullivan", "v1"] {
                return Err(ParseError::new(lineno, "expected header `sullivan v1`"));
            }
            saw_header = true;
            continue;
        }
        let mut words = line.split_whitespace();
        match words.next() {
            Some("gen") => {
                let name = words
                    .next()
                    .ok_or_else(|| ParseError::new(lineno, "gen line needs a name"))?;
                check_ident(name, lineno)?;
                let degree: u32 = words
                    .next()
                    .and_then(|w| w.parse().ok())
                    .filter(|&d| d > 0)
                    .ok_or_else(|| ParseError::new(lineno, "gen line needs a positive degree"))?;
                if words.next().is_some() {
                    return Err(ParseError::new(lineno, "trailing tokens on gen line"));
                }
                gens.push((name.to_string(), degree));
            }
            Some("d") => {
                let rest = line[1..].trim_start();
                let (name, poly) = rest
                    .split_once('=')
                    .ok_or_else(|| ParseError::new(lineno, "d line needs `= <polynomial>`"))?;
                d_lines.push((lineno, name.trim().to_string(), poly.trim().to_string()));
            }
            _ => return Err(ParseError::new(lineno, "expected `gen` or `d` line")),
        }
    }
    if !saw_header {
        return Err(ParseError::new(1, "missing `sullivan v1` header"));
    }
    let mut algebra = SullivanAlgebra::new(gens)
        .map_err(|e| ParseError::new(1, format!("bad generator list: {e}")))?;
    let mut assigned = vec![false; algebra.generator_count()];
    for (lineno, name, poly) in d_lines {
        let id = algebra
            .generator_id(&name)
            .ok_or_else(|| ParseError::new(lineno, format!("unknown generator `{name}`")))?;
        if assigned[id as usize] {
            return Err(ParseError::new(lineno, format!("duplicate d line for `{name}`")));
        }
        assigned[id as usize] = true;
        let image = parse_polynomial(&algebra, &poly, lineno)?;
        algebra
            .set_differential(id, image)
            .map_err(|e| ParseError::new(lineno, format!("bad differential: {e}")))?;
    }
    Ok(algebra)
}

fn check_ident(name: &str, lineno: usize) -> Result<(), ParseError> {
    let mut chars = name.chars();
    let head_ok = chars.next().is_some_and(|c| c.is_ascii_alphabetic() || c == '_');
    if head_ok && chars.all(|c| c.is_ascii_alphanumeric() || c == '_') {
        Ok(())
    } else {
        Err(ParseError::new(lineno, format!("invalid generator name `{name}`")))
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Num(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Caret,
    Slash,
}

fn tokenize(text: &str, lineno: usize) -> Result<Vec<Token>, ParseError> {
    let mut out = Vec::new();
    let mut chars = text.chars().peekable();
    while let Some(&c) = chars.peek() {
        match c {
            ' ' | '\t' => {
                chars.next();
            }
            '+' => {
                chars.next();
                out.push(Token::Plus);
            }
            '-' => {
                chars.next();
                out.push(Token::Minus);
            }
            '*' => {
                chars.next();
                out.push(Token::Star);
            }
            '^' => {
                chars.next();
                out.push(Token::Caret);
            }
            '/' => {
                chars.next();
                out.push(Token::Slash);
            }
            '0'..='9' => {
                let mut digits = String::new();
                while let Some(&d) = chars.peek() {
                    if d.is_ascii_digit() {
                        digits.push(d);
                        chars.next();
                    } else {
                        break;
                    }
                }
                out.push(Token::Num(digits.parse().expect("digits")));
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let mut name = String::new();
                while let Some(&d) = chars.peek() {
                    if d.is_ascii_alphanumeric() || d == '_' {
                        name.push(d);
                        chars.next();
                    } else {
                        break;
                    }
                }
                out.push(Token::Ident(name));
            }
            other => {
                return Err(ParseError::new(
                    lineno,
                    format!("unexpected character `{other}` in polynomial"),
                ));
            }
        }
    }
    Ok(out)
}

/// Parses a sum of signed terms; each term is an optional rational
/// coefficient and `*`-separated generator powers, in written order (so
/// `y2*y1` comes out as `-y1*y2`).
pub fn parse_polynomial(
    algebra: &SullivanAlgebra,
    text: &str,
    lineno: usize,
) -> Result<Element, ParseError> {
    let tokens = tokenize(text, lineno)?;
    if tokens.is_empty() {
        return Err(ParseError::new(lineno, "empty polynomial"));
    }
    let mut pos = 0usize;
    let mut result = Element::zero();
    loop {
        let mut negative = false;
        match tokens.get(pos) {
            Some(Token::Minus) => {
                negative = true;
                pos += 1;
            }
            Some(Token::Plus) => {
                pos += 1;
            }
            _ => {}
        }
        let term = parse_term(algebra, &tokens, &mut pos, lineno)?;
        result = if negative { result.sub(&term) } else { result.add(&term) };
        match tokens.get(pos) {
            None => break,
            Some(Token::Plus) | Some(Token::Minus) => continue,
            Some(t) => {
                return Err(ParseError::new(lineno, format!("unexpected token {t:?} in polynomial")));
            }
        }
    }
    Ok(result)
}

fn parse_term(
    algebra: &SullivanAlgebra,
    tokens: &[Token],
    pos: &mut usize,
    lineno: usize,
) -> Result<Element, ParseError> {
    let mut coeff: Option<Scalar> = None;
    if let Some(Token::Num(n)) = tokens.get(*pos) {
        let mut c = Scalar::from_integer(n.clone());
        *pos += 1;
        if let Some(Token::Slash) = tokens.get(*pos) {
            *pos += 1;
            match tokens.get(*pos) {
                Some(Token::Num(d)) if !d.is_zero() => {
                    c /= Scalar::from_integer(d.clone());
                    *pos += 1;
                }
                _ => return Err(ParseError::new(lineno, "expected nonzero denominator after `/`")),
            }
        }
        coeff = Some(c);
        if let Some(Token::Star) = tokens.get(*pos) {
            *pos += 1;
        }
    }
    let had_coeff = coeff.is_some();
    let mut acc = Element::constant(coeff.unwrap_or_else(Scalar::one));
    let mut saw_factor = false;
    loop {
        match tokens.get(*pos) {
            Some(Token::Ident(name)) => {
                let id = algebra.generator_id(name).ok_or_else(|| {
                    ParseError::new(lineno, format!("unknown generator `{name}`"))
                })?;
                *pos += 1;
                let mut exp = 1u32;
                if let Some(Token::Caret) = tokens.get(*pos) {
                    *pos += 1;
                    match tokens.get(*pos) {
                        Some(Token::Num(n)) => {
                            exp = n.try_into().map_err(|_| {
                                ParseError::new(lineno, "exponent out of range")
                            })?;
                            *pos += 1;
                        }
                        _ => return Err(ParseError::new(lineno, "expected exponent after `^`")),
                    }
                }
                let g = algebra.generator_element(id).expect("id in range");
                for _ in 0..exp {
                    acc = acc.mul(&g);
                }
                saw_factor = true;
                if let Some(Token::Star) = tokens.get(*pos) {
                    *pos += 1;
                    continue;
                }
                // adjacency without `*` also accepted
                if matches!(tokens.get(*pos), Some(Token::Ident(_))) {
                    continue;
                }
                break;
            }
            _ => {
                if saw_factor || had_coeff {
                    break;
                }
                return Err(ParseError::new(lineno, "expected coefficient or generator"));
            }
        }
    }
    Ok(acc)
}
