//! The polynomial-time encoders and the top-level almost-freeness decision.
//!
//! `encode_shifted(G, k)` realizes the graph as the Sullivan algebra with
//! `d y_(a,b) = sum_{l=0..k} x_a^{k-l} x_b^l`; the action it models is
//! almost free iff that algebra has finite-dimensional cohomology iff `G`
//! is not (k+1)-colorable. `encode_original` is the unshifted variant
//! (valid from k >= 3) with `d y_(a,b) = sum_{l=1..k} x_a^{k-l} x_b^{l-1}`.

use thiserror::Error;

use crate::algebra::{Element, SullivanAlgebra};
use crate::certificate::{assignment_from_coloring, verify_morphism};
use crate::graph::{is_colorable, Coloring, Graph};
use crate::oracle::{buchberger, is_zero_dimensional, GroebnerConfig, MonomialOrder, PolyIdeal};
use crate::scalar::scalar_int;

#[derive(Debug, Error)]
pub enum ReductionError {
    #[error("shifted encoding needs k >= 2 (got k = {0})")]
    ShiftedKTooSmall(u32),
    #[error("original encoding needs k >= 3 (got k = {0})")]
    OriginalKTooSmall(u32),
    #[error(
        "graph is disconnected and not (k+1)-colorable while its Borel algebra has \
         infinite-dimensional cohomology; no coloring witness exists outside the \
         connected problem class"
    )]
    DisconnectedWithoutWitness,
    #[error("groebner step budget exhausted: {0}")]
    Budget(String),
    #[error("internal: groebner and coloring answers disagree on a connected graph")]
    Inconsistent,
}

/// Which encoder family to use.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EncoderVariant {
    Original,
    Shifted,
}

/// How to decide almost-freeness.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    /// Zero-dimensionality of the edge-relation ideal via a reduced
    /// Groebner basis: the genuinely algebraic route.
    Groebner,
    /// Exhaustion of all (k+1)^r colorings, each candidate checked as a
    /// certificate: the NP-search route.
    CertificateSearch,
}

impl Method {
    pub fn name(self) -> &'static str {
        match self {
            Method::Groebner => "groebner",
            Method::CertificateSearch => "certificate_search",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    AlmostFree,
    NotAlmostFree,
}

impl Verdict {
    pub fn name(self) -> &'static str {
        match self {
            Verdict::AlmostFree => "AlmostFree",
            Verdict::NotAlmostFree => "NotAlmostFree",
        }
    }
}

/// Decision outcome. `NotAlmostFree` always carries a witness coloring that
/// has been re-verified through the certificate checker.
#[derive(Debug, Clone)]
pub struct Decision {
    pub verdict: Verdict,
    pub witness: Option<Coloring>,
    pub method: Method,
}

/// Generator names are fixed as `x<i>` and `y_<a>_<b>` with a < b so that
/// serialized algebras are stable across runs.
fn edge_generator_name(a: u32, b: u32) -> String {
    format!("y_{a}_{b}")
}

fn build_encoding(
    graph: &Graph,
    y_degree: u32,
    edge_image: impl Fn(&SullivanAlgebra, u32, u32) -> Element,
) -> SullivanAlgebra {
    let r = graph.vertex_count();
    let mut gens: Vec<(String, u32)> = (1..=r).map(|i| (format!("x{i}"), 2)).collect();
    for &(a, b) in graph.edges() {
        gens.push((edge_generator_name(a, b), y_degree));
    }
    let mut algebra = SullivanAlgebra::new(gens).expect("encoder names are unique");
    for (idx, &(a, b)) in graph.edges().iter().enumerate() {
        let image = edge_image(&algebra, a, b);
        algebra
            .set_differential(r + idx as u32, image)
            .expect("edge image lies in the algebra");
    }
    algebra
}

/// Eq.-(2)-style encoder: `deg x_i = 2`, `deg y_(a,b) = 2k-1`,
/// `d y_(a,b) = sum_{l=0..k} x_a^{k-l} x_b^l`. Requires k >= 2.
pub fn encode_shifted(graph: &Graph, k: u32) -> Result<SullivanAlgebra, ReductionError> {
    if k < 2 {
        return Err(ReductionError::ShiftedKTooSmall(k));
    }
    Ok(build_encoding(graph, 2 * k - 1, |alg, a, b| {
        let mut sum = Element::zero();
        for l in 0..=k {
            let term = alg
                .monomial_element(&[(a - 1, k - l), (b - 1, l)], &[], scalar_int(1))
                .expect("vertex generators exist");
            sum = sum.add(&term);
        }
        sum
    }))
}

/// Eq.-(1)-style encoder: `deg y_(a,b) = 2k-3`,
/// `d y_(a,b) = sum_{l=1..k} x_a^{k-l} x_b^{l-1}`. Requires k >= 3.
/// Structurally identical to `encode_shifted(graph, k-1)`.
pub fn encode_original(graph: &Graph, k: u32) -> Result<SullivanAlgebra, ReductionError> {
    if k < 3 {
        return Err(ReductionError::OriginalKTooSmall(k));
    }
    Ok(build_encoding(graph, 2 * k - 3, |alg, a, b| {
        let mut sum = Element::zero();
        for l in 1..=k {
            let term = alg
                .monomial_element(&[(a - 1, k - l), (b - 1, l - 1)], &[], scalar_int(1))
                .expect("vertex generators exist");
            sum = sum.add(&term);
        }
        sum
    }))
}

/// The edge-relation ideal of the shifted encoding, in polynomial degrees
/// (x_i has polynomial degree 1; each generator is homogeneous of degree k).
pub fn edge_ideal(graph: &Graph, k: u32) -> PolyIdeal {
    let r = graph.vertex_count() as usize;
    let mut ideal = PolyIdeal::new(r);
    for &(a, b) in graph.edges() {
        ideal.push_edge_relation(a as usize - 1, b as usize - 1, k);
    }
    ideal
}

/// Decides almost-freeness of the torus action encoded by `(graph, k)`
/// with the shifted encoder. Both methods return, for `NotAlmostFree`, a
/// verified coloring witness.
pub fn decide_almost_free(
    graph: &Graph,
    k: u32,
    method: Method,
) -> Result<Decision, ReductionError> {
    decide_almost_free_with_order(graph, k, method, MonomialOrder::GrevLex)
}

/// As [`decide_almost_free`] with an explicit monomial order for the
/// groebner route (the verdict is order-independent; the basis is not).
pub fn decide_almost_free_with_order(
    graph: &Graph,
    k: u32,
    method: Method,
    order: MonomialOrder,
) -> Result<Decision, ReductionError> {
    if k < 2 {
        return Err(ReductionError::ShiftedKTooSmall(k));
    }
    match method {
        Method::Groebner => decide_groebner(graph, k, order),
        Method::CertificateSearch => Ok(decide_certificate_search_counted(graph, k).0),
    }
}

fn decide_groebner(graph: &Graph, k: u32, order: MonomialOrder) -> Result<Decision, ReductionError> {
    let ideal = edge_ideal(graph, k);
    let gb = buchberger(&ideal, order, &GroebnerConfig::default())
        .map_err(|e| ReductionError::Budget(e.to_string()))?;
    if is_zero_dimensional(&gb, graph.vertex_count() as usize) {
        return Ok(Decision { verdict: Verdict::AlmostFree, witness: None, method: Method::Groebner });
    }
    // Infinite-dimensional cohomology: produce and re-verify a coloring
    // witness. Absence of one is only possible off the connected class.
    let Some(coloring) = is_colorable(graph, k + 1) else {
        return Err(if graph.is_connected() {
            ReductionError::Inconsistent
        } else {
            ReductionError::DisconnectedWithoutWitness
        });
    };
    debug_assert!(verified(graph, k, &coloring));
    Ok(Decision {
        verdict: Verdict::NotAlmostFree,
        witness: Some(coloring),
        method: Method::Groebner,
    })
}

fn verified(graph: &Graph, k: u32, coloring: &Coloring) -> bool {
    let algebra = encode_shifted(graph, k).expect("k validated");
    let asg = match assignment_from_coloring(coloring, k) {
        Ok(a) => a,
        Err(_) => return false,
    };
    matches!(verify_morphism(&algebra, &asg), Ok(outcome) if outcome.accepted())
}

/// The literal NP-search: enumerate all (k+1)^r assignments in
/// lexicographic order (vertex 1 most significant) and return the first
/// proper one, verified. The assignment count comes back alongside the
/// decision so scaling tests can use exact work instead of wall time.
pub fn decide_certificate_search_counted(graph: &Graph, k: u32) -> (Decision, u64) {
    let r = graph.vertex_count();
    let c = (k + 1) as u64;
    let mut colors = vec![0u32; r as usize];
    let mut examined = 0u64;
    loop {
        examined += 1;
        let coloring = Coloring::new(colors.clone());
        if coloring.is_proper(graph) {
            debug_assert!(verified(graph, k, &coloring));
            return (
                Decision {
                    verdict: Verdict::NotAlmostFree,
                    witness: Some(coloring),
                    method: Method::CertificateSearch,
                },
                examined,
            );
        }
        // increment base-(k+1) counter, least significant digit last
        let mut pos = r as usize;
        loop {
            if pos == 0 {
                return (
                    Decision {
                        verdict: Verdict::AlmostFree,
                        witness: None,
                        method: Method::CertificateSearch,
                    },
                    examined,
                );
            }
            pos -= 1;
            colors[pos] += 1;
            if u64::from(colors[pos]) < c {
                break;
            }
            colors[pos] = 0;
        }
    }
}
