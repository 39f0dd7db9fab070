//! Closed-form orbit deciders.
//!
//! The dual decider runs a fixed pipeline: zero handling, transport of both
//! functionals to the free space on the spanning set, splitting along the
//! connected components of `G(S)`, and one theorem per component:
//!
//! * `p ≠ 2`: same orbit iff `β − α ∈ im ω`;
//! * `p = 2`, orthogonal type: some `x` has `ω(x) = α + β` and `Q_S(x) = α(x)`;
//! * `p = 2`, line graph of a root multigraph: `γ − β ∈ im ω` and either
//!   `β ∉ im δ` or the `d`-values of `δ`-preimages agree.
//!
//! Witnesses are not produced by the theorems; [`find_witness`] searches for
//! one separately.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::field::{self, FieldMatrix, FieldVector};
use crate::graphs::{self, FormGraph, GraphClass, Multigraph};
use crate::symplectic::{Functional, QuadraticForm, SymplecticSpace};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    #[serde(rename = "same")]
    SameOrbit,
    #[serde(rename = "different")]
    DifferentOrbit,
}

/// The criterion that separated two orbits.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Certificate {
    /// Exactly one of the two is zero; zero is fixed by every generator.
    ZeroVsNonzero,
    /// The difference is not in the image of `ω`.
    ImOmegaGap,
    /// No preimage `x` of `α + β` under `ω` has `(Q_S + α)(x) = 0`.
    QConditionFail,
    /// Both lie in `im δ` but their preimages have different `d`-values.
    DMismatch,
    /// The restrictions to one component of `G(S)` lie in different orbits.
    ComponentMismatch { component: usize, cause: Box<Certificate> },
    /// One of the two vectors lies in `ker ω` and is therefore fixed.
    KernelFixedPoint,
    /// Different values of `Q_S`.
    QValueMismatch,
    /// Different minimal orbit-sum lengths.
    SevenDMismatch,
    /// `y − x` leaves the span of the components that move both vectors.
    SpanGap,
}

/// One generator: the transvection at spanning vector `s` with scalar `k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Move {
    pub s: usize,
    pub k: u8,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Decision {
    pub verdict: Verdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certificate: Option<Certificate>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Vec<Move>>,
}

impl Decision {
    pub fn same() -> Self {
        Self {
            verdict: Verdict::SameOrbit,
            certificate: None,
            witness: None,
        }
    }

    pub fn identity() -> Self {
        Self {
            witness: Some(Vec::new()),
            ..Self::same()
        }
    }

    pub fn different(cert: Certificate) -> Self {
        Self {
            verdict: Verdict::DifferentOrbit,
            certificate: Some(cert),
            witness: None,
        }
    }

    pub fn is_same(&self) -> bool {
        self.verdict == Verdict::SameOrbit
    }

    fn from_check(c: Option<Certificate>) -> Self {
        c.map_or_else(Self::same, Self::different)
    }
}

#[derive(Clone, Debug)]
pub struct DualProblem {
    pub space: SymplecticSpace,
    pub alpha: Functional,
    pub beta: Functional,
}

impl DualProblem {
    pub fn new(space: SymplecticSpace, alpha: Functional, beta: Functional) -> Result<Self> {
        check_functional(&space, &alpha)?;
        check_functional(&space, &beta)?;
        Ok(Self { space, alpha, beta })
    }
}

fn check_functional(sp: &SymplecticSpace, f: &Functional) -> Result<()> {
    if f.coords().p() != sp.p() || f.len() != sp.dim() {
        return invalid(format!(
            "functional of length {} over GF({}) does not match GF({})^{}",
            f.len(),
            f.coords().p(),
            sp.p(),
            sp.dim()
        ));
    }
    Ok(())
}

fn check_vector(sp: &SymplecticSpace, x: &FieldVector) -> Result<()> {
    if x.p() != sp.p() || x.len() != sp.dim() {
        return invalid(format!("vector {x:?} does not live in GF({})^{}", sp.p(), sp.dim()));
    }
    Ok(())
}

/// The free space on a spanning set, with `ω_Y(b_s, b_t) = ω(s, t)`.
/// Functionals move over by evaluation on each spanning vector.
#[derive(Clone, Debug)]
pub struct Lift {
    pub space: SymplecticSpace,
    spanning: Vec<FieldVector>,
}

impl Lift {
    /// `α ↦ α ∘ p`, whose dual-basis coordinates are the values `α(s)`.
    pub fn transport(&self, alpha: &Functional) -> Functional {
        let p = alpha.coords().p();
        Functional(FieldVector::new(p, self.spanning.iter().map(|s| alpha.eval(s)).collect()).expect("residues"))
    }
}

pub fn lift_spanning(space: &SymplecticSpace) -> Lift {
    let lifted = SymplecticSpace::new(space.spanning_gram(), None)
        .expect("Gram matrix of an alternating form on a finite set is alternating");
    Lift {
        space: lifted,
        spanning: space.spanning_set().to_vec(),
    }
}

/// Top-level dual decider.
pub fn decide_dual(prob: &DualProblem) -> Result<Decision> {
    let DualProblem { space, alpha, beta } = prob;
    check_functional(space, alpha)?;
    check_functional(space, beta)?;
    if alpha == beta {
        return Ok(Decision::identity());
    }
    if alpha.is_zero() || beta.is_zero() {
        return Ok(Decision::different(Certificate::ZeroVsNonzero));
    }
    // Work on the free space over S. When S is already the standard basis
    // this changes nothing; otherwise it is the linear-dependence reduction
    // (and, for a basis in other coordinates, a change of basis).
    let lift = lift_spanning(space);
    let a = lift.transport(alpha);
    let b = lift.transport(beta);
    let gram = lift.space.gram();
    let graph = FormGraph::from_space(&lift.space)?;
    let comps = graph.connected_components();
    let single = comps.len() == 1;
    for (i, comp) in comps.iter().enumerate() {
        let g = gram.select(comp, comp);
        let (ac, bc) = (a.0.select(comp), b.0.select(comp));
        if let Some(cause) = decide_component(&g, &ac, &bc)? {
            let cert = if single {
                cause
            } else {
                Certificate::ComponentMismatch {
                    component: i,
                    cause: Box::new(cause),
                }
            };
            return Ok(Decision::different(cert));
        }
    }
    Ok(Decision::same())
}

/// One connected component in basis coordinates; `None` means same orbit.
fn decide_component(gram: &FieldMatrix, a: &FieldVector, b: &FieldVector) -> Result<Option<Certificate>> {
    if a == b {
        return Ok(None);
    }
    if a.is_zero() || b.is_zero() {
        return Ok(Some(Certificate::ZeroVsNonzero));
    }
    if gram.p() != 2 {
        return general_field_check(gram, a, b);
    }
    let graph = FormGraph::from_edges(gram.rows(), &graph_edges(gram))?;
    match graphs::classify(&graph)? {
        GraphClass::OrthogonalType => orthogonal_check(gram, a, b),
        GraphClass::LineGraph(root) => linegraph_check(gram, &root, a, b),
    }
}

fn graph_edges(gram: &FieldMatrix) -> Vec<(usize, usize)> {
    (0..gram.rows())
        .flat_map(|u| (0..u).map(move |v| (u, v)))
        .filter(|&(u, v)| gram.get(u, v) != 0)
        .collect()
}

fn general_field_check(gram: &FieldMatrix, a: &FieldVector, b: &FieldVector) -> Result<Option<Certificate>> {
    // ω(x) = xᵀG; G is skew so its row and column spaces coincide
    Ok((!field::image_contains(gram, &b.sub(a))?).then_some(Certificate::ImOmegaGap))
}

fn orthogonal_check(gram: &FieldMatrix, a: &FieldVector, b: &FieldVector) -> Result<Option<Certificate>> {
    let sol = field::solve_affine(gram, &a.add(b))?;
    let Some(x) = sol.particular else {
        return Ok(Some(Certificate::ImOmegaGap));
    };
    let q = QuadraticForm::from_basis_gram(gram)?;
    let q_plus_alpha = |v: &FieldVector| -> Result<u8> { Ok((q.eval(v)? + a.dot(v)) % 2) };
    // Q_S + α is linear on ker ω; if it is not identically zero there, both
    // values occur on every coset
    for x0 in &sol.kernel_basis {
        if q_plus_alpha(x0)? == 1 {
            return Ok(None);
        }
    }
    Ok((q_plus_alpha(&x)? != 0).then_some(Certificate::QConditionFail))
}

fn d_value(y: &FieldVector) -> usize {
    let ones = y.weight();
    ones.min(y.len() - ones)
}

fn linegraph_check(
    gram: &FieldMatrix,
    root: &Multigraph,
    b: &FieldVector,
    c: &FieldVector,
) -> Result<Option<Certificate>> {
    if root.edges.len() != gram.rows() || root.line_graph()?.gram() != *gram {
        return invalid("root multigraph does not match the form graph");
    }
    if !field::image_contains(gram, &c.sub(b))? {
        return Ok(Some(Certificate::ImOmegaGap));
    }
    let maps = root.root_graph_maps()?;
    let Some(y) = field::solve_affine(&maps.coboundary, b)?.particular else {
        return Ok(None);
    };
    let Some(z) = field::solve_affine(&maps.coboundary, c)?.particular else {
        return invalid("root multigraph does not match the form graph");
    };
    Ok((d_value(&y) != d_value(&z)).then_some(Certificate::DMismatch))
}

/// Basis coordinates of a connected spanning set, after checking the common
/// preconditions of the single-component deciders.
fn connected_component_coords(
    space: &SymplecticSpace,
    alpha: &Functional,
    beta: &Functional,
    need_basis: bool,
) -> Result<(FieldMatrix, FieldVector, FieldVector)> {
    check_functional(space, alpha)?;
    check_functional(space, beta)?;
    if need_basis && !space.is_basis() {
        return invalid("spanning set must be a basis");
    }
    if !FormGraph::from_space(space)?.is_connected() {
        return invalid("G(S) must be connected");
    }
    let lift = lift_spanning(space);
    let (a, b) = (lift.transport(alpha), lift.transport(beta));
    Ok((lift.space.gram().clone(), a.0, b.0))
}

/// Dual orbits over a field with more than two elements and connected `G(S)`.
pub fn decide_general_field(space: &SymplecticSpace, alpha: &Functional, beta: &Functional) -> Result<Decision> {
    if space.p() == 2 {
        return invalid("decide_general_field needs p != 2");
    }
    if alpha.is_zero() || beta.is_zero() {
        return invalid("functionals must be nonzero");
    }
    let (g, a, b) = connected_component_coords(space, alpha, beta, false)?;
    Ok(Decision::from_check(general_field_check(&g, &a, &b)?))
}

/// Dual orbits over GF(2) for a connected basis of orthogonal type.
pub fn decide_orthogonal(
    space: &SymplecticSpace,
    alpha: &Functional,
    beta: &Functional,
    q: &QuadraticForm,
) -> Result<Decision> {
    if space.p() != 2 {
        return invalid("decide_orthogonal needs p = 2");
    }
    if alpha.is_zero() || beta.is_zero() {
        return invalid("functionals must be nonzero");
    }
    let (g, a, b) = connected_component_coords(space, alpha, beta, true)?;
    if *q != QuadraticForm::from_basis_gram(&g)? {
        return invalid("quadratic form does not belong to this basis");
    }
    Ok(Decision::from_check(orthogonal_check(&g, &a, &b)?))
}

/// Dual orbits over GF(2) for a connected basis whose graph is the line
/// graph of `root` (root edge `i` is basis vector `i`).
pub fn decide_linegraph(
    space: &SymplecticSpace,
    beta: &Functional,
    gamma: &Functional,
    root: &Multigraph,
) -> Result<Decision> {
    if space.p() != 2 {
        return invalid("decide_linegraph needs p = 2");
    }
    let (g, b, c) = connected_component_coords(space, beta, gamma, true)?;
    Ok(Decision::from_check(linegraph_check(&g, root, &b, &c)?))
}

/// Minimal number of summands from the orbit of `S`, tabulated for every
/// vector of a GF(2) space with a connected basis.
pub struct SevenD {
    dim: usize,
    table: Vec<u8>,
}

/// Default cap on the dimension for which [`SevenD`] is tabulated.
pub const SEVEN_D_MAX_DIM: usize = 14;

impl SevenD {
    pub fn new(space: &SymplecticSpace, max_dim: usize) -> Result<Self> {
        if space.p() != 2 || !space.is_basis() {
            return invalid("d is defined for a basis over GF(2)");
        }
        if !FormGraph::from_space(space)?.is_connected() {
            return invalid("d needs a connected G(S)");
        }
        let n = space.dim();
        if n > max_dim || n > 30 {
            return Err(Error::BudgetExceeded {
                what: format!("d-function table in dimension {n}"),
                limit: 1 << max_dim.min(30),
            });
        }
        let size = 1usize << n;
        let mask = |v: &FieldVector| v.encode() as usize;
        let omega_rows: Vec<usize> = space
            .spanning_set()
            .iter()
            .map(|s| mask(&space.gram().mul_vec(s)))
            .collect();
        let gens: Vec<usize> = space.spanning_set().iter().map(mask).collect();
        let parity = |x: usize| x.count_ones() & 1 == 1;

        // orbit of the first basis vector under the transvections τ_s
        let mut in_orbit = vec![false; size];
        let start = gens.first().copied().unwrap_or(0);
        in_orbit[start] = true;
        let mut orbit = vec![start];
        let mut head = 0;
        while head < orbit.len() {
            let x = orbit[head];
            head += 1;
            for (s, row) in gens.iter().zip(&omega_rows) {
                if parity(x & row) {
                    let y = x ^ s;
                    if !in_orbit[y] {
                        in_orbit[y] = true;
                        orbit.push(y);
                    }
                }
            }
        }
        if gens.iter().any(|&s| !in_orbit[s]) {
            return invalid("basis does not lie in a single transvection orbit");
        }

        let mut table = vec![0u8; size];
        let mut layer = in_orbit.clone();
        let mut remaining = size;
        let mut depth = 1u8;
        while remaining > 0 {
            for (x, &hit) in layer.iter().enumerate() {
                if hit && table[x] == 0 {
                    table[x] = depth;
                    remaining -= 1;
                }
            }
            if remaining == 0 || depth as usize > n + 2 {
                break;
            }
            let mut next = vec![false; size];
            for (x, &hit) in layer.iter().enumerate() {
                if hit {
                    for &o in &orbit {
                        next[x ^ o] = true;
                    }
                }
            }
            layer = next;
            depth += 1;
        }
        Ok(Self { dim: n, table })
    }

    pub fn get(&self, x: &FieldVector) -> usize {
        debug_assert_eq!(x.len(), self.dim);
        self.table[x.encode() as usize] as usize
    }
}

/// `d(x)`: the least number of elements of the orbit containing `S` that
/// sum to `x`.
pub fn compute_d_seven(space: &SymplecticSpace, x: &FieldVector) -> Result<usize> {
    check_vector(space, x)?;
    Ok(SevenD::new(space, SEVEN_D_MAX_DIM)?.get(x))
}

/// Orbits of the ordinary (non-dual) transvection group.
pub fn decide_nondual(space: &SymplecticSpace, x: &FieldVector, y: &FieldVector) -> Result<Decision> {
    decide_nondual_with(space, x, y, None)
}

/// As [`decide_nondual`], reusing a precomputed `d` table when the GF(2)
/// line-graph case needs one.
pub fn decide_nondual_with(
    space: &SymplecticSpace,
    x: &FieldVector,
    y: &FieldVector,
    seven: Option<&SevenD>,
) -> Result<Decision> {
    check_vector(space, x)?;
    check_vector(space, y)?;
    if x == y {
        return Ok(Decision::identity());
    }
    if space.in_kernel(x) || space.in_kernel(y) {
        return Ok(Decision::different(Certificate::KernelFixedPoint));
    }
    let graph = FormGraph::from_space(space)?;
    let comps = graph.connected_components();
    if space.p() != 2 {
        // y − x must lie in the span of the components moving both x and y
        let moves = |v: &FieldVector, comp: &[usize]| {
            comp.iter().any(|&i| space.omega(v, &space.spanning_set()[i]) != 0)
        };
        let span: Vec<FieldVector> = comps
            .iter()
            .filter(|c| moves(x, c) && moves(y, c))
            .flat_map(|c| c.iter().map(|&i| space.spanning_set()[i].clone()))
            .collect();
        let m = FieldMatrix::from_columns(space.p(), space.dim(), &span);
        let inside = field::image_contains(&m, &y.sub(x))?;
        return Ok(Decision::from_check((!inside).then_some(Certificate::SpanGap)));
    }
    if !space.is_basis() || comps.len() != 1 {
        return Err(Error::Unsupported(
            "non-dual orbits over GF(2) need a basis with connected G(S)".into(),
        ));
    }
    match graphs::classify(&graph)? {
        GraphClass::OrthogonalType => {
            let q = QuadraticForm::for_space(space)?;
            let qx = q.eval(&space.basis_coordinates(x)?)?;
            let qy = q.eval(&space.basis_coordinates(y)?)?;
            Ok(Decision::from_check((qx != qy).then_some(Certificate::QValueMismatch)))
        }
        GraphClass::LineGraph(_) => {
            let owned;
            let table = match seven {
                Some(t) => t,
                None => {
                    owned = SevenD::new(space, SEVEN_D_MAX_DIM)?;
                    &owned
                }
            };
            Ok(Decision::from_check(
                (table.get(x) != table.get(y)).then_some(Certificate::SevenDMismatch),
            ))
        }
    }
}

/// Applies a move sequence to a functional, first move first.
pub fn replay_dual(space: &SymplecticSpace, alpha: &Functional, moves: &[Move]) -> Result<Functional> {
    moves.iter().try_fold(alpha.clone(), |acc, m| {
        let s = space
            .spanning_set()
            .get(m.s)
            .ok_or_else(|| Error::InvalidInput(format!("move refers to spanning vector {}", m.s)))?;
        space.dual_transvection_apply(s, m.k, &acc)
    })
}

/// Bidirectional breadth-first search for generators `g_1, …, g_m` with
/// `α ∘ g_1 ∘ … ∘ g_m = β`. Gives up after visiting `budget` states.
pub fn find_witness(prob: &DualProblem, budget: usize) -> Result<Option<Vec<Move>>> {
    let DualProblem { space, alpha, beta } = prob;
    check_functional(space, alpha)?;
    check_functional(space, beta)?;
    if alpha == beta {
        return Ok(Some(Vec::new()));
    }
    let p = space.p();
    let moves: Vec<Move> = (0..space.spanning_set().len())
        .flat_map(|s| (1..p).map(move |k| Move { s, k }))
        .collect();
    let step = |f: &Functional, m: Move| -> Functional {
        space
            .dual_transvection_apply(&space.spanning_set()[m.s], m.k, f)
            .expect("validated move")
    };

    // forward: state -> (predecessor, move applied to predecessor)
    let mut fwd: HashMap<Functional, Option<(Functional, Move)>> = HashMap::from([(alpha.clone(), None)]);
    // backward: state -> (successor, move taking state to successor)
    let mut bwd: HashMap<Functional, Option<(Functional, Move)>> = HashMap::from([(beta.clone(), None)]);
    let mut fwd_frontier = vec![alpha.clone()];
    let mut bwd_frontier = vec![beta.clone()];

    let meet = loop {
        if fwd_frontier.is_empty() || bwd_frontier.is_empty() {
            return Ok(None);
        }
        if fwd.len() + bwd.len() > budget {
            return Ok(None);
        }
        let forward = fwd_frontier.len() <= bwd_frontier.len();
        let mut next = Vec::new();
        let mut found = None;
        if forward {
            'outer: for f in &fwd_frontier {
                for &m in &moves {
                    let g = step(f, m);
                    if fwd.contains_key(&g) {
                        continue;
                    }
                    fwd.insert(g.clone(), Some((f.clone(), m)));
                    if bwd.contains_key(&g) {
                        found = Some(g);
                        break 'outer;
                    }
                    next.push(g);
                }
            }
            fwd_frontier = next;
        } else {
            'outer: for f in &bwd_frontier {
                for &m in &moves {
                    let inverse = Move { s: m.s, k: field::neg(p, m.k) };
                    let g = step(f, inverse);
                    if bwd.contains_key(&g) {
                        continue;
                    }
                    bwd.insert(g.clone(), Some((f.clone(), m)));
                    if fwd.contains_key(&g) {
                        found = Some(g);
                        break 'outer;
                    }
                    next.push(g);
                }
            }
            bwd_frontier = next;
        }
        if let Some(g) = found {
            break g;
        }
    };

    let mut path = Vec::new();
    let mut cur = meet.clone();
    while let Some(Some((prev, m))) = fwd.get(&cur) {
        path.push(*m);
        cur = prev.clone();
    }
    path.reverse();
    let mut cur = meet;
    while let Some(Some((next, m))) = bwd.get(&cur) {
        path.push(*m);
        cur = next.clone();
    }
    Ok(Some(path))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs::e6_graph;
    use crate::oracle::{self, DEFAULT_BUDGET};

    fn functional(p: u8, c: &[u8]) -> Functional {
        Functional::new(p, c.to_vec()).unwrap()
    }

    fn graph_space(n: usize, edges: &[(usize, usize)]) -> SymplecticSpace {
        SymplecticSpace::from_graph(n, edges).unwrap()
    }

    fn all_functionals(sp: &SymplecticSpace) -> Vec<Functional> {
        let total = (sp.p() as u64).pow(sp.dim() as u32);
        (0..total)
            .map(|c| Functional(FieldVector::decode(sp.p(), sp.dim(), c)))
            .collect()
    }

    /// Decider and oracle agree on every ordered pair.
    fn assert_matches_oracle(sp: &SymplecticSpace) {
        let part = oracle::enumerate_dual_orbits(sp, DEFAULT_BUDGET).unwrap();
        let fs = all_functionals(sp);
        for a in &fs {
            for b in &fs {
                let prob = DualProblem::new(sp.clone(), a.clone(), b.clone()).unwrap();
                let d = decide_dual(&prob).unwrap();
                assert_eq!(
                    d.is_same(),
                    part.same_block(a.0.encode(), b.0.encode()),
                    "{a:?} vs {b:?}: {d:?}"
                );
            }
        }
    }

    #[test]
    fn identical_functionals() {
        let sp = graph_space(3, &[(0, 1), (1, 2)]);
        let a = functional(2, &[1, 0, 1]);
        let d = decide_dual(&DualProblem::new(sp, a.clone(), a).unwrap()).unwrap();
        assert_eq!(d, Decision::identity());
    }

    #[test]
    fn single_edge() {
        let sp = graph_space(2, &[(0, 1)]);
        assert_matches_oracle(&sp);
        let d = decide_dual(
            &DualProblem::new(sp.clone(), functional(2, &[1, 0]), functional(2, &[0, 0])).unwrap(),
        )
        .unwrap();
        assert_eq!(d.certificate, Some(Certificate::ZeroVsNonzero));
        let root = graphs::recognize_root_multigraph(&FormGraph::from_space(&sp).unwrap()).unwrap();
        let d = decide_linegraph(&sp, &functional(2, &[1, 0]), &functional(2, &[0, 1]), &root).unwrap();
        assert!(d.is_same());
    }

    #[test]
    fn two_components() {
        let sp = graph_space(4, &[(0, 1), (2, 3)]);
        assert_matches_oracle(&sp);
        // agree on the first edge, differ by a non-image gap on the second:
        // ω is nondegenerate there, so use a zero/nonzero split instead
        let a = functional(2, &[1, 0, 1, 0]);
        let b = functional(2, &[1, 0, 0, 0]);
        let d = decide_dual(&DualProblem::new(sp, a, b).unwrap()).unwrap();
        assert!(matches!(d.certificate, Some(Certificate::ComponentMismatch { component: 1, .. })));
    }

    #[test]
    fn two_components_im_omega_gap() {
        // path 0-1-2 has a one-dimensional kernel, so im ω is a proper subspace
        let sp = graph_space(5, &[(0, 1), (2, 3), (3, 4)]);
        assert_matches_oracle(&sp);
        let a = functional(2, &[1, 0, 1, 1, 0]);
        let b = functional(2, &[1, 0, 0, 1, 0]);
        let d = decide_dual(&DualProblem::new(sp, a, b).unwrap()).unwrap();
        assert_eq!(
            d.certificate,
            Some(Certificate::ComponentMismatch {
                component: 1,
                cause: Box::new(Certificate::ImOmegaGap)
            })
        );
    }

    #[test]
    fn cycle_c4_line_graph() {
        let sp = graph_space(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]);
        assert_matches_oracle(&sp);
    }

    #[test]
    fn e6_orthogonal() {
        let sp = SymplecticSpace::new(e6_graph().gram(), None).unwrap();
        assert_matches_oracle(&sp);
        let q = QuadraticForm::for_space(&sp).unwrap();
        let a = functional(2, &[1, 0, 0, 0, 0, 0]);
        assert!(decide_orthogonal(&sp, &a, &a, &q).unwrap().is_same());
        assert!(decide_orthogonal(&sp, &a, &Functional::zero(2, 6), &q).is_err());
    }

    #[test]
    fn gf3_examples() {
        let g = FieldMatrix::from_rows(3, &[vec![0, 1], vec![2, 0]]).unwrap();
        let sp = SymplecticSpace::new(g, None).unwrap();
        let nonzero: Vec<_> = all_functionals(&sp).into_iter().filter(|f| !f.is_zero()).collect();
        assert_eq!(nonzero.len(), 8);
        for a in &nonzero {
            for b in &nonzero {
                assert!(decide_general_field(&sp, a, b).unwrap().is_same());
            }
        }
        // degenerate three-dimensional form with a one-dimensional kernel
        let g = FieldMatrix::from_rows(3, &[vec![0, 1, 2], vec![2, 0, 1], vec![1, 2, 0]]).unwrap();
        let sp = SymplecticSpace::new(g, None).unwrap();
        assert_matches_oracle(&sp);
    }

    #[test]
    fn lifting() {
        let sp = graph_space(3, &[(0, 1)]);
        let lift = lift_spanning(&sp);
        assert_eq!(lift.space, sp);
        let a = functional(2, &[1, 1, 0]);
        assert_eq!(lift.transport(&a), a);

        let g = FieldMatrix::zeros(2, 1, 1);
        let s = FieldVector::new(2, vec![1]).unwrap();
        let sp = SymplecticSpace::new(g, Some(vec![s.clone(), s])).unwrap();
        let lift = lift_spanning(&sp);
        assert_eq!(lift.space.dim(), 2);
        assert_eq!(FormGraph::from_space(&lift.space).unwrap().edge_count(), 0);
    }

    #[test]
    fn lifted_random_spanning_set() {
        use rand::{rngs::StdRng, Rng, SeedableRng};
        let mut rng = StdRng::seed_from_u64(21);
        let mut done = 0;
        while done < 20 {
            let mut g = FieldMatrix::zeros(2, 3, 3);
            for i in 0..3 {
                for j in 0..i {
                    let v = rng.gen_range(0..2);
                    g.set(i, j, v);
                    g.set(j, i, v);
                }
            }
            let set: Vec<FieldVector> = (0..4)
                .map(|_| FieldVector::new(2, (0..3).map(|_| rng.gen_range(0..2)).collect()).unwrap())
                .collect();
            let Ok(sp) = SymplecticSpace::new(g, Some(set)) else {
                continue;
            };
            assert_matches_oracle(&sp);
            done += 1;
        }
    }

    #[test]
    fn seven_d_values() {
        let sp = graph_space(3, &[(0, 1), (1, 2)]);
        for s in sp.spanning_set() {
            assert_eq!(compute_d_seven(&sp, s).unwrap(), 1);
        }
        let table = SevenD::new(&sp, 10).unwrap();
        let part = oracle::enumerate_vector_orbits(&sp, DEFAULT_BUDGET).unwrap();
        let e0e1 = FieldVector::new(2, vec![1, 1, 0]).unwrap();
        if !part.same_block(e0e1.encode(), sp.spanning_set()[0].encode()) {
            assert_eq!(table.get(&e0e1), 2);
        }
    }

    #[test]
    fn nondual_examples() {
        let g = FieldMatrix::from_rows(3, &[vec![0, 1], vec![2, 0]]).unwrap();
        let sp = SymplecticSpace::new(g, None).unwrap();
        let xs: Vec<FieldVector> = (1..9).map(|c| FieldVector::decode(3, 2, c)).collect();
        for x in &xs {
            for y in &xs {
                assert!(decide_nondual(&sp, x, y).unwrap().is_same());
            }
        }
        let sp = SymplecticSpace::new(e6_graph().gram(), None).unwrap();
        let part = oracle::enumerate_vector_orbits(&sp, DEFAULT_BUDGET).unwrap();
        for a in 1..64 {
            for b in 1..64 {
                let (x, y) = (FieldVector::decode(2, 6, a), FieldVector::decode(2, 6, b));
                assert_eq!(decide_nondual(&sp, &x, &y).unwrap().is_same(), part.same_block(a, b));
            }
        }
        let disconnected = graph_space(4, &[(0, 1), (2, 3)]);
        let x = FieldVector::new(2, vec![1, 0, 0, 0]).unwrap();
        let y = FieldVector::new(2, vec![0, 1, 0, 0]).unwrap();
        assert!(matches!(decide_nondual(&disconnected, &x, &y), Err(Error::Unsupported(_))));
    }

    #[test]
    fn witnesses_replay() {
        let sp = graph_space(2, &[(0, 1)]);
        let (a, b) = (functional(2, &[1, 0]), functional(2, &[0, 1]));
        let prob = DualProblem::new(sp.clone(), a.clone(), b.clone()).unwrap();
        let w = find_witness(&prob, 1000).unwrap().unwrap();
        assert!(w.len() <= 2);
        assert_eq!(replay_dual(&sp, &a, &w).unwrap(), b);
        let same = DualProblem::new(sp, a.clone(), a).unwrap();
        assert_eq!(find_witness(&same, 10).unwrap(), Some(vec![]));

        let sp = SymplecticSpace::new(e6_graph().gram(), None).unwrap();
        let fs = all_functionals(&sp);
        for a in fs.iter().step_by(7) {
            for b in fs.iter().step_by(5) {
                let prob = DualProblem::new(sp.clone(), a.clone(), b.clone()).unwrap();
                if let Some(w) = find_witness(&prob, 10_000).unwrap() {
                    assert_eq!(replay_dual(&sp, a, &w).unwrap(), *b);
                    assert!(decide_dual(&prob).unwrap().is_same());
                }
            }
        }
    }
}
