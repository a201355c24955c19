//! Torus actions on products of edge-spheres and their Borel models.
//!
//! Each edge of the graph gets a sphere `B = U(k)^{k+2} / (U(k-1) x
//! U(k)^{k+1})`: the corner `U(k-1)` block is included diagonally into all
//! numerator factors, and the `k+1` full blocks land in the first and one
//! other factor each. The rank-2 torus of an edge `(a,b)` enters the
//! maximal torus of every non-first factor with weight rows `t_a` (first
//! `i` coordinates) and `t_b` (rest), `0 <= i <= k`; the first factor never
//! receives the torus.
//!
//! The Sullivan model of the Borel construction is built additively at the
//! torus level: the even generators are the torus generators plus one
//! degree-2 Chern root per denominator-block coordinate, and each odd
//! generator `v_{j,i}` (degree `2i-1`) has `d v_{j,i} = e_i(H-side roots of
//! factor j) - e_i(torus weights of factor j)`. Block Chern classes are
//! recovered as elementary symmetric functions of the block's roots.

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use thiserror::Error;

use crate::algebra::{Element, GenId, SullivanAlgebra};
use crate::graph::Graph;
use crate::linalg::dense_kernel;
use crate::scalar::{scalar_int, Scalar};
use crate::ParseError;

#[derive(Debug, Error)]
pub enum BorelError {
    #[error("edge spheres need k >= 2 (got k = {0})")]
    KTooSmall(u32),
    #[error("bad edge ({0}, {1}): need 1 <= a < b <= {2}")]
    BadEdge(u32, u32, u32),
    #[error("edge ({0}, {1}) is not in the graph")]
    MissingEdge(u32, u32),
    #[error("malformed action data: {0}")]
    MalformedAction(String),
    #[error("algebra error: {0}")]
    Algebra(#[from] crate::algebra::AlgebraError),
}

/// Block data of one edge-sphere `U(k)^{k+2} / (U(k-1) x U(k)^{k+1})`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomogeneousSpaceData {
    pub k: u32,
}

impl HomogeneousSpaceData {
    pub fn numerator_factors(&self) -> u32 {
        self.k + 2
    }

    /// Full U(k) denominator blocks; block `b` maps into factors 1 and b+2.
    pub fn full_blocks(&self) -> u32 {
        self.k + 1
    }

    /// dim = (k+2) k^2 - ((k-1)^2 + (k+1) k^2), which collapses to 2k-1.
    pub fn dimension(&self) -> i128 {
        dimension_from_blocks(self.k)
    }
}

/// Left-hand side of the dimension identity, computed blockwise from
/// `dim U(n) = n^2`; valid for every k >= 1.
pub fn dimension_from_blocks(k: u32) -> i128 {
    let k = i128::from(k);
    (k + 2) * k * k - ((k - 1) * (k - 1) + (k + 1) * k * k)
}

pub fn build_edge_sphere(k: u32) -> Result<HomogeneousSpaceData, BorelError> {
    if k < 2 {
        return Err(BorelError::KTooSmall(k));
    }
    Ok(HomogeneousSpaceData { k })
}

/// Integer weight matrix of a torus homomorphism: rows index target torus
/// coordinates, columns index source coordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightMatrix {
    pub entries: Vec<Vec<i64>>,
}

impl WeightMatrix {
    pub fn rows(&self) -> usize {
        self.entries.len()
    }

    pub fn cols(&self) -> usize {
        self.entries.first().map_or(0, Vec::len)
    }
}

/// One sphere of the action: its edge (absent for the bare homogeneous
/// space) and the k+1 weight matrices of torus blocks i = 0..k, block i
/// mapping into numerator factor i+2. The never-included first factor's
/// zero matrix is implicit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeSphere {
    pub edge: Option<(u32, u32)>,
    pub blocks: Vec<WeightMatrix>,
}

/// The full `T^r` action on the product of edge-spheres.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TorusActionData {
    pub k: u32,
    pub rank: u32,
    pub spheres: Vec<EdgeSphere>,
}

/// Weight matrices of `S^1_a x S^1_b` into the non-first numerator torus
/// factors of one edge-sphere: block `i` has rows `t_a` (first i
/// coordinates) and `t_b` (the remaining k-i); the first `t_b` sits at
/// position i+1.
pub fn build_torus_inclusion(
    edge: (u32, u32),
    k: u32,
    r: u32,
) -> Result<Vec<WeightMatrix>, BorelError> {
    if k < 2 {
        return Err(BorelError::KTooSmall(k));
    }
    let (a, b) = edge;
    if a == b || a == 0 || a > b || b > r {
        return Err(BorelError::BadEdge(a, b, r));
    }
    let mut blocks = Vec::with_capacity(k as usize + 1);
    for i in 0..=k {
        let mut entries = Vec::with_capacity(k as usize);
        for m in 1..=k {
            let mut row = vec![0i64; r as usize];
            let vertex = if m <= i { a } else { b };
            row[vertex as usize - 1] = 1;
            entries.push(row);
        }
        blocks.push(WeightMatrix { entries });
    }
    Ok(blocks)
}

/// One sphere per edge, all sharing the rank-r torus.
pub fn assemble_action(graph: &Graph, k: u32) -> Result<TorusActionData, BorelError> {
    if k < 2 {
        return Err(BorelError::KTooSmall(k));
    }
    let r = graph.vertex_count();
    let mut spheres = Vec::with_capacity(graph.edge_count());
    for &(a, b) in graph.edges() {
        spheres.push(EdgeSphere {
            edge: Some((a, b)),
            blocks: build_torus_inclusion((a, b), k, r)?,
        });
    }
    Ok(TorusActionData { k, rank: r, spheres })
}

/// A single sphere with the trivial torus: the bare homogeneous space.
pub fn homogeneous_space_action(k: u32) -> Result<TorusActionData, BorelError> {
    if k < 2 {
        return Err(BorelError::KTooSmall(k));
    }
    let blocks = (0..=k)
        .map(|_| WeightMatrix { entries: vec![Vec::new(); k as usize] })
        .collect();
    Ok(TorusActionData { k, rank: 0, spheres: vec![EdgeSphere { edge: None, blocks }] })
}

/// Generator bookkeeping for one sphere of a built model.
#[derive(Debug, Clone)]
pub struct SphereGenerators {
    pub edge: Option<(u32, u32)>,
    /// Corner U(k-1) roots s_1..s_{k-1}.
    pub corner_roots: Vec<GenId>,
    /// `block_roots[b]` = the k roots of full block b (0..=k).
    pub block_roots: Vec<Vec<GenId>>,
    /// `odd[j-1][i-1]` = v_{j,i} for factor j = 1..k+2, i = 1..k.
    pub odd: Vec<Vec<GenId>>,
}

impl SphereGenerators {
    /// vol_j = v_{j,k}, the top odd generator of factor j (1-based).
    pub fn volume(&self, factor: u32) -> GenId {
        let row = &self.odd[factor as usize - 1];
        row[row.len() - 1]
    }
}

/// The Sullivan model of the Borel construction plus the generator map
/// needed to locate volumes and block roots afterwards.
#[derive(Debug, Clone)]
pub struct BorelModel {
    pub algebra: SullivanAlgebra,
    pub k: u32,
    pub torus: Vec<GenId>,
    pub spheres: Vec<SphereGenerators>,
}

/// `e_0..e_upto` of the given linear forms, as algebra elements.
fn elementary_symmetric(forms: &[Element], upto: usize) -> Vec<Element> {
    let mut es: Vec<Element> = Vec::with_capacity(upto + 1);
    es.push(Element::constant(Scalar::one()));
    for _ in 0..upto {
        es.push(Element::zero());
    }
    for f in forms {
        for i in (1..=upto).rev() {
            let bump = es[i - 1].mul(f);
            es[i] = es[i].add(&bump);
        }
    }
    es
}

/// Differentials of the odd generators of one U(k) factor from its H-side
/// roots and torus weights: `d v_i = e_i(roots) - e_i(weights)`.
/// With identical roots and weights (the diagonal toy case) every image
/// vanishes.
pub fn factor_differentials(roots: &[Element], weights: &[Element], k: u32) -> Vec<Element> {
    let eh = elementary_symmetric(roots, k as usize);
    let et = elementary_symmetric(weights, k as usize);
    (1..=k as usize).map(|i| eh[i].sub(&et[i])).collect()
}

pub fn borel_model(action: &TorusActionData) -> Result<BorelModel, BorelError> {
    let k = action.k;
    if k < 2 {
        return Err(BorelError::KTooSmall(k));
    }
    let r = action.rank;
    for (idx, sphere) in action.spheres.iter().enumerate() {
        if sphere.blocks.len() != k as usize + 1 {
            return Err(BorelError::MalformedAction(format!(
                "sphere {idx} has {} torus blocks, expected k+1 = {}",
                sphere.blocks.len(),
                k + 1
            )));
        }
        for (b, block) in sphere.blocks.iter().enumerate() {
            if block.rows() != k as usize || block.entries.iter().any(|row| row.len() != r as usize)
            {
                return Err(BorelError::MalformedAction(format!(
                    "sphere {idx} block {b} is not a {k} x {r} weight matrix"
                )));
            }
        }
    }
    // generator list: torus first, then per sphere corner roots, block
    // roots, odd generators
    let mut gens: Vec<(String, u32)> = (1..=r).map(|i| (format!("t{i}"), 2)).collect();
    let torus: Vec<GenId> = (0..r).collect();
    let mut spheres = Vec::with_capacity(action.spheres.len());
    let mut next_id = r;
    for (idx, sphere) in action.spheres.iter().enumerate() {
        let p = idx + 1;
        let mut corner_roots = Vec::new();
        for m in 1..k {
            gens.push((format!("s{p}_{m}"), 2));
            corner_roots.push(next_id);
            next_id += 1;
        }
        let mut block_roots = Vec::new();
        for b in 0..=k {
            let mut roots = Vec::new();
            for m in 1..=k {
                gens.push((format!("u{p}_{b}_{m}"), 2));
                roots.push(next_id);
                next_id += 1;
            }
            block_roots.push(roots);
        }
        let mut odd = Vec::new();
        for j in 1..=k + 2 {
            let mut row = Vec::new();
            for i in 1..=k {
                gens.push((format!("v{p}_{j}_{i}"), 2 * i - 1));
                row.push(next_id);
                next_id += 1;
            }
            odd.push(row);
        }
        spheres.push(SphereGenerators { edge: sphere.edge, corner_roots, block_roots, odd });
    }
    let mut algebra = SullivanAlgebra::new(gens)?;
    let mut assignments: Vec<(GenId, Element)> = Vec::new();
    {
        let gen_elem = |id: GenId| algebra.generator_element(id).expect("id in range");
        for (sphere_data, sphere_gens) in action.spheres.iter().zip(&spheres) {
            for j in 1..=k + 2 {
                // H-side roots of factor j, additively at the torus level
                let mut roots: Vec<Element> = Vec::with_capacity(k as usize);
                for m in 1..=k {
                    let mut form = Element::zero();
                    if m < k {
                        form = form.add(&gen_elem(sphere_gens.corner_roots[m as usize - 1]));
                    }
                    for (b, block) in sphere_gens.block_roots.iter().enumerate() {
                        let maps_into = j == 1 || j == b as u32 + 2;
                        if maps_into {
                            form = form.add(&gen_elem(block[m as usize - 1]));
                        }
                    }
                    roots.push(form);
                }
                // torus weights of factor j; factor 1 is never included
                let mut weights: Vec<Element> = Vec::with_capacity(k as usize);
                for m in 1..=k {
                    let mut form = Element::zero();
                    if j >= 2 {
                        let matrix = &sphere_data.blocks[j as usize - 2];
                        let row = &matrix.entries[m as usize - 1];
                        for (col, &w) in row.iter().enumerate() {
                            if w != 0 {
                                let t = gen_elem(torus[col]);
                                form = form.add(&t.scale(&scalar_int(w)));
                            }
                        }
                    }
                    weights.push(form);
                }
                let images = factor_differentials(&roots, &weights, k);
                for (i, image) in images.into_iter().enumerate() {
                    assignments.push((sphere_gens.odd[j as usize - 1][i], image));
                }
            }
        }
    }
    for (id, image) in assignments {
        algebra.set_differential(id, image)?;
    }
    Ok(BorelModel { algebra, k, torus, spheres })
}

/// Keeps only the monomials supported inside `allowed`.
fn restrict_support(e: &Element, allowed: &[GenId]) -> Element {
    let set: std::collections::BTreeSet<GenId> = allowed.iter().copied().collect();
    let mut out = Element::zero();
    for (m, c) in e.terms() {
        if m.support().all(|(g, _)| set.contains(&g)) {
            out.add_term(m.clone(), c.clone());
        }
    }
    out
}

/// Writes a symmetric polynomial in `roots` as a polynomial in the
/// elementary symmetric functions e_1..e_n, by the classic leading-
/// partition subtraction. Returns (multidegree in e's, coefficient) pairs;
/// errors with a message if the input is not symmetric.
fn decompose_elementary(
    poly: &Element,
    roots: &[GenId],
) -> Result<Vec<(Vec<u32>, Scalar)>, String> {
    let n = roots.len();
    let position: BTreeMap<GenId, usize> =
        roots.iter().enumerate().map(|(i, &g)| (g, i)).collect();
    // exponent-vector form
    let mut current: BTreeMap<Vec<u32>, Scalar> = BTreeMap::new();
    for (m, c) in poly.terms() {
        let mut exps = vec![0u32; n];
        for (g, e) in m.support() {
            let Some(&pos) = position.get(&g) else {
                return Err("polynomial mentions generators outside the block".into());
            };
            exps[pos] = e;
        }
        *current.entry(exps).or_insert_with(Scalar::zero) += c;
    }
    current.retain(|_, c| !c.is_zero());
    // precompute e_p as exponent-vector polynomials
    let mut e_polys: Vec<BTreeMap<Vec<u32>, Scalar>> = Vec::with_capacity(n + 1);
    for p in 0..=n {
        let mut map = BTreeMap::new();
        subsets(n, p, &mut map);
        e_polys.push(map);
    }
    let mut out = Vec::new();
    let mut guard = 0usize;
    while let Some(lead) = current.keys().max_by(|a, b| lex(a, b)).cloned() {
        guard += 1;
        if guard > 100_000 {
            return Err("elementary-symmetric decomposition did not terminate".into());
        }
        if lead.windows(2).any(|w| w[0] < w[1]) {
            return Err(format!("not symmetric: leading exponent vector {lead:?}"));
        }
        let coeff = current[&lead].clone();
        // e-multidegree: mu_p = lead_p - lead_{p+1}
        let mut mu = vec![0u32; n];
        for p in 0..n {
            let next = if p + 1 < n { lead[p + 1] } else { 0 };
            mu[p] = lead[p] - next;
        }
        // subtract coeff * prod e_{p+1}^{mu_p}
        let mut product: BTreeMap<Vec<u32>, Scalar> = BTreeMap::new();
        product.insert(vec![0; n], coeff.clone());
        for (p, &mult) in mu.iter().enumerate() {
            for _ in 0..mult {
                product = poly_mul(&product, &e_polys[p + 1]);
            }
        }
        for (e, c) in product {
            let entry = current.entry(e).or_insert_with(Scalar::zero);
            *entry -= c;
        }
        current.retain(|_, c| !c.is_zero());
        out.push((mu, coeff));
    }
    Ok(out)
}

fn lex(a: &[u32], b: &[u32]) -> std::cmp::Ordering {
    for (x, y) in a.iter().zip(b) {
        match x.cmp(y) {
            std::cmp::Ordering::Equal => {}
            ord => return ord,
        }
    }
    std::cmp::Ordering::Equal
}

fn subsets(n: usize, p: usize, out: &mut BTreeMap<Vec<u32>, Scalar>) {
    fn rec(n: usize, p: usize, from: usize, acc: &mut Vec<usize>, out: &mut BTreeMap<Vec<u32>, Scalar>) {
        if acc.len() == p {
            let mut exps = vec![0u32; n];
            for &i in acc.iter() {
                exps[i] = 1;
            }
            out.insert(exps, Scalar::one());
            return;
        }
        for i in from..n {
            acc.push(i);
            rec(n, p, i + 1, acc, out);
            acc.pop();
        }
    }
    rec(n, p, 0, &mut Vec::new(), out);
}

fn poly_mul(
    a: &BTreeMap<Vec<u32>, Scalar>,
    b: &BTreeMap<Vec<u32>, Scalar>,
) -> BTreeMap<Vec<u32>, Scalar> {
    let mut out: BTreeMap<Vec<u32>, Scalar> = BTreeMap::new();
    for (ea, ca) in a {
        for (eb, cb) in b {
            let e: Vec<u32> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
            let entry = out.entry(e).or_insert_with(Scalar::zero);
            *entry += ca * cb;
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

/// Outcome of the volume-kernel check on the bare homogeneous space: the linear
/// part of d on the span of factor volumes, and its kernel.
#[derive(Debug, Clone)]
pub struct VolumeKernelReport {
    pub k: u32,
    /// (factor j, block b) -> linear coefficient of the block's top Chern
    /// class in d vol_j.
    pub linear_map: Vec<Vec<Scalar>>,
    pub kernel_dimension: usize,
    /// Kernel vector normalized to leading coefficient 1, if 1-dimensional.
    pub kernel_vector: Option<Vec<Scalar>>,
    pub problems: Vec<String>,
}

impl VolumeKernelReport {
    pub fn is_ok(&self) -> bool {
        self.problems.is_empty()
    }
}

/// Verifies, for the bare edge-sphere, the linear behaviour of the
/// differential on volumes: `d vol_1` hits the top Chern class of every
/// full denominator block, `d vol_j` (j >= 2) exactly the block mapping
/// into factor j, and the kernel of this linear map is spanned by
/// `vol_1 - vol_2 - ... - vol_{k+2}`.
pub fn volume_kernel_check(k: u32) -> Result<VolumeKernelReport, BorelError> {
    let model = borel_model(&homogeneous_space_action(k)?)?;
    let sphere = &model.spheres[0];
    let factors = (k + 2) as usize;
    let blocks = (k + 1) as usize;
    let mut problems = Vec::new();
    // rows: (block, e-index p = k) columns: factor
    let mut linear_map = vec![vec![Scalar::zero(); blocks]; factors];
    for j in 1..=factors as u32 {
        let vol = sphere.volume(j);
        let image = model.algebra.differential_of(vol)?.clone();
        // corner block must contribute nothing in the top degree
        let corner = restrict_support(&image, &sphere.corner_roots);
        if !sphere.corner_roots.is_empty() {
            match decompose_elementary(&corner, &sphere.corner_roots) {
                Ok(parts) => {
                    if parts.iter().any(|(mu, _)| mu.iter().sum::<u32>() == 1) {
                        problems.push(format!(
                            "corner block contributes linearly to d vol_{j}"
                        ));
                    }
                }
                Err(e) => problems.push(format!("corner restriction of d vol_{j}: {e}")),
            }
        }
        for (b, roots) in sphere.block_roots.iter().enumerate() {
            let restricted = restrict_support(&image, roots);
            match decompose_elementary(&restricted, roots) {
                Ok(parts) => {
                    for (mu, c) in parts {
                        let linear: Vec<usize> = mu
                            .iter()
                            .enumerate()
                            .filter(|(_, &m)| m > 0)
                            .map(|(p, _)| p)
                            .collect();
                        if linear.len() == 1 && mu[linear[0]] == 1 {
                            if linear[0] + 1 == k as usize {
                                linear_map[j as usize - 1][b] = c;
                            } else {
                                problems.push(format!(
                                    "d vol_{j} hits e_{} of block {b}, expected only e_{k}",
                                    linear[0] + 1
                                ));
                            }
                        }
                    }
                }
                Err(e) => problems.push(format!("block {b} restriction of d vol_{j}: {e}")),
            }
        }
    }
    // expected shape: factor 1 hits every block once, factor j >= 2 exactly
    // block j-2
    for (j, row) in linear_map.iter().enumerate() {
        for (b, c) in row.iter().enumerate() {
            let expected = if j == 0 || b + 2 == j + 1 { Scalar::one() } else { Scalar::zero() };
            if *c != expected {
                problems.push(format!(
                    "linear coefficient of block {b} in d vol_{} is {c}, expected {expected}",
                    j + 1
                ));
            }
        }
    }
    // kernel of the linear map (rows: blocks, columns: factors)
    let mut rows = vec![vec![Scalar::zero(); factors]; blocks];
    for (j, row) in linear_map.iter().enumerate() {
        for (b, c) in row.iter().enumerate() {
            rows[b][j] = c.clone();
        }
    }
    let kernel = dense_kernel(&rows, factors);
    let kernel_dimension = kernel.len();
    if kernel_dimension != 1 {
        problems.push(format!("kernel dimension is {kernel_dimension}, expected 1"));
    }
    let kernel_vector = kernel.into_iter().next().map(|v| {
        let lead = v.iter().find(|c| !c.is_zero()).cloned().unwrap_or_else(Scalar::one);
        v.into_iter().map(|c| c / &lead).collect::<Vec<Scalar>>()
    });
    if let Some(vector) = &kernel_vector {
        let mut expected = vec![-Scalar::one(); factors];
        expected[0] = Scalar::one();
        if *vector != expected {
            problems.push(format!(
                "kernel is spanned by {vector:?}, expected vol_1 - vol_2 - ... - vol_{factors}"
            ));
        }
    }
    Ok(VolumeKernelReport { k, linear_map, kernel_dimension, kernel_vector, problems })
}

/// Outcome of the volume-differential check for one edge.
#[derive(Debug, Clone)]
pub struct VolumeReport {
    pub edge: (u32, u32),
    /// +1 when the pure-torus part equals `+sum t_a^{k-l} t_b^l`, -1 for
    /// the opposite orientation. The sign must be the same across edges.
    pub sign: Option<i8>,
    pub torus_part: String,
    pub problems: Vec<String>,
}

impl VolumeReport {
    pub fn is_ok(&self) -> bool {
        self.problems.is_empty() && self.sign.is_some()
    }
}

/// In the Borel model of the assembled action, computes
/// `d(vol_1 - vol_2 - ... - vol_{k+2})` for the sphere of `edge` and checks
/// that its pure-torus part (terms free of denominator roots) is
/// `±sum_{l=0..k} t_a^{k-l} t_b^l`, one global sign.
pub fn verify_volume_differential(
    model: &BorelModel,
    edge: (u32, u32),
) -> Result<VolumeReport, BorelError> {
    let k = model.k;
    let sphere = model
        .spheres
        .iter()
        .find(|s| s.edge == Some(edge))
        .ok_or(BorelError::MissingEdge(edge.0, edge.1))?;
    let algebra = &model.algebra;
    let mut combination = Element::zero();
    for j in 1..=k + 2 {
        let d = algebra.differential_of(sphere.volume(j))?;
        combination = if j == 1 { combination.add(d) } else { combination.sub(d) };
    }
    let torus_part = restrict_support(&combination, &model.torus);
    // expected: sum_{l=0..k} t_a^{k-l} t_b^l
    let (a, b) = edge;
    let mut expected = Element::zero();
    for l in 0..=k {
        let term = algebra
            .monomial_element(
                &[(model.torus[a as usize - 1], k - l), (model.torus[b as usize - 1], l)],
                &[],
                scalar_int(1),
            )
            .expect("torus generators exist");
        expected = expected.add(&term);
    }
    let mut problems = Vec::new();
    let sign = if torus_part == expected {
        Some(1)
    } else if torus_part == expected.neg() {
        Some(-1)
    } else {
        problems.push(format!(
            "pure-torus part of the volume differential is `{}`, expected ±({})",
            crate::algebra::format::element_to_string(algebra, &torus_part),
            crate::algebra::format::element_to_string(algebra, &expected),
        ));
        None
    };
    Ok(VolumeReport {
        edge,
        sign,
        torus_part: crate::algebra::format::element_to_string(algebra, &torus_part),
        problems,
    })
}

/// Serialization: `action k=<k> r=<r>`, then per sphere `sphere <a> <b>`
/// followed by `block <i>` headers and k rows of r integers.
pub fn action_to_string(action: &TorusActionData) -> String {
    let mut out = format!("action k={} r={}\n", action.k, action.rank);
    for sphere in &action.spheres {
        let (a, b) = sphere.edge.expect("serialized actions come from graphs");
        out.push_str(&format!("sphere {a} {b}\n"));
        for (i, block) in sphere.blocks.iter().enumerate() {
            out.push_str(&format!("block {i}\n"));
            for row in &block.entries {
                let cells: Vec<String> = row.iter().map(|w| w.to_string()).collect();
                out.push_str(&cells.join(" "));
                out.push('\n');
            }
        }
    }
    out
}

pub fn parse_action(text: &str) -> Result<TorusActionData, ParseError> {
    let mut lines = text.lines().enumerate().peekable();
    let (k, r) = loop {
        let Some((lineno, raw)) = lines.next() else {
            return Err(ParseError::new(1, "empty action file"));
        };
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        let parts: Vec<&str> = line.split_whitespace().collect();
        let parsed = (|| {
            if parts.len() != 3 || parts[0] != "action" {
                return None;
            }
            let k = parts[1].strip_prefix("k=")?.parse::<u32>().ok()?;
            let r = parts[2].strip_prefix("r=")?.parse::<u32>().ok()?;
            Some((k, r))
        })();
        match parsed {
            Some(kr) => break kr,
            None => {
                return Err(ParseError::new(lineno + 1, "expected header `action k=<k> r=<r>`"))
            }
        }
    };
    if k < 2 {
        return Err(ParseError::new(1, "action needs k >= 2"));
    }
    let mut spheres = Vec::new();
    while let Some((lineno, raw)) = lines.next() {
        let lineno = lineno + 1;
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        let parts: Vec<&str> = line.split_whitespace().collect();
        if parts[0] != "sphere" || parts.len() != 3 {
            return Err(ParseError::new(lineno, "expected `sphere <a> <b>`"));
        }
        let a: u32 = parts[1]
            .parse()
            .map_err(|_| ParseError::new(lineno, "bad vertex"))?;
        let b: u32 = parts[2]
            .parse()
            .map_err(|_| ParseError::new(lineno, "bad vertex"))?;
        let mut blocks = Vec::new();
        for expected_block in 0..=k {
            let Some((bl_no, bl_raw)) = lines.next() else {
                return Err(ParseError::new(lineno, "truncated sphere: missing block"));
            };
            let bl = bl_raw.trim();
            if bl != format!("block {expected_block}") {
                return Err(ParseError::new(bl_no + 1, format!("expected `block {expected_block}`")));
            }
            let mut entries = Vec::new();
            for _ in 0..k {
                let Some((row_no, row_raw)) = lines.next() else {
                    return Err(ParseError::new(bl_no + 1, "truncated block: missing row"));
                };
                let row: Result<Vec<i64>, _> =
                    row_raw.split_whitespace().map(str::parse).collect();
                let row =
                    row.map_err(|_| ParseError::new(row_no + 1, "bad integer in weight row"))?;
                if row.len() != r as usize {
                    return Err(ParseError::new(
                        row_no + 1,
                        format!("expected {r} weights, got {}", row.len()),
                    ));
                }
                entries.push(row);
            }
            blocks.push(WeightMatrix { entries });
        }
        spheres.push(EdgeSphere { edge: Some((a, b)), blocks });
    }
    Ok(TorusActionData { k, rank: r, spheres })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::format::element_to_string;
    use crate::graph::Graph;

    #[test]
    fn dimension_identity_small() {
        // k=2: 4*4 - (1 + 3*4) = 3 = dim S^3; k=3: 5*9 - (4 + 4*9) = 5
        assert_eq!(dimension_from_blocks(2), 3);
        assert_eq!(dimension_from_blocks(3), 5);
        for k in 1..=50 {
            assert_eq!(dimension_from_blocks(k), 2 * i128::from(k) - 1);
        }
        let b = build_edge_sphere(2).unwrap();
        assert_eq!(b.numerator_factors(), 4);
        assert_eq!(b.full_blocks(), 3);
        assert_eq!(b.dimension(), 3);
        assert!(build_edge_sphere(1).is_err());
    }

    #[test]
    fn torus_inclusion_weight_rows() {
        let blocks = build_torus_inclusion((1, 2), 2, 2).unwrap();
        assert_eq!(blocks.len(), 3);
        // block 0: both rows t_b
        assert_eq!(blocks[0].entries, vec![vec![0, 1], vec![0, 1]]);
        // block 1: rows t_a then t_b (identity here)
        assert_eq!(blocks[1].entries, vec![vec![1, 0], vec![0, 1]]);
        // block 2: both rows t_a
        assert_eq!(blocks[2].entries, vec![vec![1, 0], vec![1, 0]]);
        assert!(build_torus_inclusion((2, 2), 2, 3).is_err());
        assert!(build_torus_inclusion((2, 1), 2, 3).is_err());
    }

    #[test]
    fn assembled_action_shape() {
        let action = assemble_action(&Graph::complete(3), 2).unwrap();
        assert_eq!(action.rank, 3);
        assert_eq!(action.spheres.len(), 3);
        // sphere (1,3) uses columns 1 and 3 only
        let s13 = action
            .spheres
            .iter()
            .find(|s| s.edge == Some((1, 3)))
            .unwrap();
        for block in &s13.blocks {
            for row in &block.entries {
                assert_eq!(row[1], 0);
                assert_eq!(row.iter().sum::<i64>(), 1);
            }
        }
        let single = assemble_action(&Graph::path(2), 2).unwrap();
        assert_eq!((single.rank, single.spheres.len()), (2, 1));
        assert_eq!(single.spheres[0].blocks.len(), 3);
        let empty = assemble_action(&Graph::new(3, []).unwrap(), 2).unwrap();
        assert!(empty.spheres.is_empty());
    }

    #[test]
    fn elementary_symmetric_decomposition_matches_textbook_identities() {
        // p_2 = e_1^2 - 2 e_2 and p_3 = e_1^3 - 3 e_1 e_2 + 3 e_3
        let algebra = SullivanAlgebra::new(vec![
            ("r1".into(), 2),
            ("r2".into(), 2),
            ("r3".into(), 2),
        ])
        .unwrap();
        let roots: Vec<GenId> = vec![0, 1, 2];
        let power_sum = |p: u32| {
            let mut acc = Element::zero();
            for &g in &roots {
                let term = algebra.monomial_element(&[(g, p)], &[], scalar_int(1)).unwrap();
                acc = acc.add(&term);
            }
            acc
        };
        let decompose = |e: &Element| {
            let mut parts = decompose_elementary(e, &roots).unwrap();
            parts.sort();
            parts
        };
        assert_eq!(
            decompose(&power_sum(2)),
            vec![(vec![0, 1, 0], scalar_int(-2)), (vec![2, 0, 0], scalar_int(1))]
        );
        assert_eq!(
            decompose(&power_sum(3)),
            vec![
                (vec![0, 0, 1], scalar_int(3)),
                (vec![1, 1, 0], scalar_int(-3)),
                (vec![3, 0, 0], scalar_int(1)),
            ]
        );
        // non-symmetric input is refused
        let lone = algebra.generator_element(0).unwrap();
        assert!(decompose_elementary(&lone, &roots).is_err());
    }

    #[test]
    fn diagonal_toy_case_vanishes() {
        // identical H-side and T-side forms kill every differential
        let algebra = SullivanAlgebra::new(vec![("t1".into(), 2), ("t2".into(), 2)]).unwrap();
        let forms = vec![
            algebra.generator_element(0).unwrap(),
            algebra.generator_element(1).unwrap(),
        ];
        for image in factor_differentials(&forms, &forms, 2) {
            assert!(image.is_zero());
        }
    }

    #[test]
    fn borel_model_is_well_formed() {
        for k in [2u32, 3] {
            for graph in [Graph::path(2), Graph::complete(3)] {
                let model = borel_model(&assemble_action(&graph, k).unwrap()).unwrap();
                let report = model.algebra.check_well_formed();
                assert!(report.is_valid(), "k={k}: {report}");
            }
            let bare = borel_model(&homogeneous_space_action(k).unwrap()).unwrap();
            assert!(bare.algebra.check_well_formed().is_valid());
        }
    }

    #[test]
    fn t_side_contribution_matches_block_power() {
        // K2, k=2, block i=2 maps both rows to t1, so e_2(t-side) = t1^2
        let model = borel_model(&assemble_action(&Graph::path(2), 2).unwrap()).unwrap();
        let sphere = &model.spheres[0];
        // factor of block 2 is j = 4
        let v_top = sphere.odd[3][1];
        let image = model.algebra.differential_of(v_top).unwrap();
        let torus_terms = restrict_support(image, &model.torus);
        assert_eq!(element_to_string(&model.algebra, &torus_terms), "-t1^2");
    }

    #[test]
    fn volume_kernel_for_small_k() {
        for k in [2u32, 3, 4] {
            let report = volume_kernel_check(k).unwrap();
            assert!(report.is_ok(), "k={k}: {:?}", report.problems);
            assert_eq!(report.kernel_dimension, 1);
            let v = report.kernel_vector.unwrap();
            assert_eq!(v[0], Scalar::one());
            assert!(v[1..].iter().all(|c| *c == -Scalar::one()));
        }
    }

    #[test]
    fn volume_differential_k2_and_k3() {
        for (k, graph) in [(2u32, Graph::path(2)), (3, Graph::path(2))] {
            let model = borel_model(&assemble_action(&graph, k).unwrap()).unwrap();
            let report = verify_volume_differential(&model, (1, 2)).unwrap();
            assert!(report.is_ok(), "{:?}", report.problems);
            assert_eq!(report.sign, Some(1));
        }
    }

    #[test]
    fn volume_differential_respects_edge_support() {
        let model = borel_model(&assemble_action(&Graph::complete(3), 2).unwrap()).unwrap();
        let report = verify_volume_differential(&model, (1, 3)).unwrap();
        assert!(report.is_ok());
        assert!(!report.torus_part.contains("t2"), "{}", report.torus_part);
        assert!(verify_volume_differential(&model, (2, 4)).is_err());
    }

    #[test]
    fn malformed_action_is_rejected() {
        let mut action = assemble_action(&Graph::path(2), 2).unwrap();
        action.spheres[0].blocks.pop();
        assert!(matches!(borel_model(&action), Err(BorelError::MalformedAction(_))));
        let mut action = assemble_action(&Graph::path(2), 2).unwrap();
        action.spheres[0].blocks[1].entries[0].pop();
        assert!(matches!(borel_model(&action), Err(BorelError::MalformedAction(_))));
    }

    #[test]
    fn action_serialization_roundtrip() {
        let action = assemble_action(&Graph::complete(3), 2).unwrap();
        let text = action_to_string(&action);
        assert!(text.starts_with("action k=2 r=3\nsphere 1 2\nblock 0\n"));
        let parsed = parse_action(&text).unwrap();
        assert_eq!(parsed, action);
        assert!(parse_action("action k=2\n").is_err());
        assert!(parse_action("action k=2 r=2\nsphere 1 2\nblock 1\n").is_err());
    }
}
