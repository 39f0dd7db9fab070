//! Alternating forms, transvections (linear, dual and affine) and the
//! quadratic form attached to a basis over GF(2).

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};
use crate::field::{self, FieldMatrix, FieldVector};

/// A finite-dimensional space over GF(p) with an alternating form given by
/// its Gram matrix in the standard basis, together with a spanning set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymplecticSpace {
    gram: FieldMatrix,
    spanning_set: Vec<FieldVector>,
}

/// Element of the dual space, as a row in the dual standard basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Functional(pub FieldVector);

impl Functional {
    pub fn zero(p: u8, dim: usize) -> Self {
        Self(FieldVector::zero(p, dim))
    }

    pub fn new(p: u8, coords: Vec<u8>) -> Result<Self> {
        FieldVector::new(p, coords).map(Self)
    }

    pub fn coords(&self) -> &FieldVector {
        &self.0
    }

    pub fn eval(&self, x: &FieldVector) -> u8 {
        self.0.dot(x)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn add(&self, other: &Self) -> Self {
        Self(self.0.add(&other.0))
    }

    pub fn sub(&self, other: &Self) -> Self {
        Self(self.0.sub(&other.0))
    }
}

impl SymplecticSpace {
    /// Builds a space from an alternating Gram matrix. Without an explicit
    /// spanning set the standard basis is used.
    pub fn new(gram: FieldMatrix, spanning_set: Option<Vec<FieldVector>>) -> Result<Self> {
        field::check_prime(gram.p())?;
        if !gram.is_alternating() {
            return invalid("Gram matrix is not alternating (skew-symmetric with zero diagonal)");
        }
        let (p, n) = (gram.p(), gram.rows());
        let spanning_set =
            spanning_set.unwrap_or_else(|| (0..n).map(|i| FieldVector::unit(p, n, i)).collect());
        for s in &spanning_set {
            if s.p() != p || s.len() != n {
                return invalid(format!("spanning vector {s:?} does not live in GF({p})^{n}"));
            }
        }
        if FieldMatrix::from_columns(p, n, &spanning_set).rank() != n {
            return invalid("spanning set does not span the space");
        }
        Ok(Self { gram, spanning_set })
    }

    /// The sigma-game space of a simple graph: the free GF(2) space on the
    /// vertices with `ω(u, v) = 1` exactly on edges.
    pub fn from_graph(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut gram = FieldMatrix::zeros(2, n, n);
        for &(u, v) in edges {
            if u == v || u >= n || v >= n {
                return invalid(format!("bad edge ({u}, {v}) for {n} vertices"));
            }
            gram.set(u, v, 1);
            gram.set(v, u, 1);
        }
        Self::new(gram, None)
    }

    pub fn p(&self) -> u8 {
        self.gram.p()
    }

    pub fn dim(&self) -> usize {
        self.gram.rows()
    }

    pub fn gram(&self) -> &FieldMatrix {
        &self.gram
    }

    pub fn spanning_set(&self) -> &[FieldVector] {
        &self.spanning_set
    }

    pub fn is_basis(&self) -> bool {
        self.spanning_set.len() == self.dim()
    }

    pub fn omega(&self, x: &FieldVector, y: &FieldVector) -> u8 {
        self.gram.vec_mul(x).dot(y)
    }

    /// The curried form `ω(x) = ω(x, ·)`.
    pub fn omega_map(&self, x: &FieldVector) -> Functional {
        Functional(self.gram.vec_mul(x))
    }

    /// Gram matrix of ω on the spanning set, `[ω(s_i, s_j)]`.
    pub fn spanning_gram(&self) -> FieldMatrix {
        let m = self.spanning_set.len();
        let mut g = FieldMatrix::zeros(self.p(), m, m);
        for i in 0..m {
            let row = self.omega_map(&self.spanning_set[i]);
            for j in 0..m {
                g.set(i, j, row.eval(&self.spanning_set[j]));
            }
        }
        g
    }

    /// Coordinates of `x` with respect to the spanning set, which must be a basis.
    pub fn basis_coordinates(&self, x: &FieldVector) -> Result<FieldVector> {
        if !self.is_basis() {
            return invalid("spanning set is not a basis");
        }
        let m = FieldMatrix::from_columns(self.p(), self.dim(), &self.spanning_set);
        field::solve_affine(&m, x)?
            .particular
            .ok_or_else(|| crate::Error::InvalidInput("vector outside the space".into()))
    }

    fn check_vector(&self, x: &FieldVector) -> Result<()> {
        if x.p() != self.p() || x.len() != self.dim() {
            return invalid(format!("vector {x:?} does not live in GF({})^{}", self.p(), self.dim()));
        }
        Ok(())
    }

    fn check_scalar(&self, k: u8) -> Result<u8> {
        let k = k % self.p();
        if k == 0 {
            return invalid("transvection scalar must be nonzero");
        }
        Ok(k)
    }

    /// `x + k ω(x, s) s`
    pub fn transvection_apply(&self, s: &FieldVector, k: u8, x: &FieldVector) -> Result<FieldVector> {
        let k = self.check_scalar(k)?;
        self.check_vector(s)?;
        self.check_vector(x)?;
        let c = field::mul(self.p(), k, self.omega(x, s));
        Ok(x.add_scaled(c, s))
    }

    /// `x + k (ω(x, s) + a) s`
    pub fn affine_transvection_apply(
        &self,
        s: &FieldVector,
        k: u8,
        a: u8,
        x: &FieldVector,
    ) -> Result<FieldVector> {
        let k = self.check_scalar(k)?;
        self.check_vector(s)?;
        self.check_vector(x)?;
        let p = self.p();
        let c = field::mul(p, k, field::add(p, self.omega(x, s), a % p));
        Ok(x.add_scaled(c, s))
    }

    /// `α ∘ τ_{s,k}`, which sends `x` to `α(x) + k ω(x, s) α(s)`.
    pub fn dual_transvection_apply(
        &self,
        s: &FieldVector,
        k: u8,
        alpha: &Functional,
    ) -> Result<Functional> {
        let k = self.check_scalar(k)?;
        self.check_vector(s)?;
        self.check_vector(&alpha.0)?;
        let p = self.p();
        let c = field::mul(p, k, alpha.eval(s));
        // ω(·, s) as a row is the column G·s
        Ok(Functional(alpha.0.add_scaled(c, &self.gram.mul_vec(s))))
    }

    /// Matrix of `τ_{s,k}` acting on column vectors.
    pub fn transvection_matrix(&self, s: &FieldVector, k: u8) -> Result<FieldMatrix> {
        self.check_scalar(k)?;
        let n = self.dim();
        let mut m = FieldMatrix::zeros(self.p(), n, n);
        for j in 0..n {
            let col = self.transvection_apply(s, k, &FieldVector::unit(self.p(), n, j))?;
            for i in 0..n {
                m.set(i, j, col.get(i));
            }
        }
        Ok(m)
    }

    /// Kernel of ω as a list of basis vectors.
    pub fn kernel(&self) -> Vec<FieldVector> {
        field::solve_affine(&self.gram, &FieldVector::zero(self.p(), self.dim()))
            .expect("square Gram matrix")
            .kernel_basis
    }

    pub fn in_kernel(&self, x: &FieldVector) -> bool {
        self.omega_map(x).is_zero()
    }
}

/// Quadratic form over GF(2) stored as a lower-triangular matrix in some
/// basis: `Q(x) = xᵀ Q x`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadraticForm {
    qmat: FieldMatrix,
}

impl QuadraticForm {
    /// `Q_S` for a basis `S` whose form has Gram matrix `gram` in that basis:
    /// ones on the diagonal, the lower triangle of `gram` below it.
    pub fn from_basis_gram(gram: &FieldMatrix) -> Result<Self> {
        if gram.p() != 2 {
            return invalid("quadratic forms are only defined here over GF(2)");
        }
        if !gram.is_alternating() {
            return invalid("Gram matrix is not alternating");
        }
        let n = gram.rows();
        let mut qmat = FieldMatrix::zeros(2, n, n);
        for i in 0..n {
            qmat.set(i, i, 1);
            for j in 0..i {
                qmat.set(i, j, gram.get(i, j));
            }
        }
        Ok(Self { qmat })
    }

    /// `Q_S` of a space whose spanning set is a basis; evaluate it on
    /// coordinates with respect to that basis.
    pub fn for_space(sp: &SymplecticSpace) -> Result<Self> {
        if !sp.is_basis() {
            return invalid("Q_S needs the spanning set to be a basis");
        }
        Self::from_basis_gram(&sp.spanning_gram())
    }

    pub fn matrix(&self) -> &FieldMatrix {
        &self.qmat
    }

    pub fn dim(&self) -> usize {
        self.qmat.rows()
    }

    pub fn eval(&self, x: &FieldVector) -> Result<u8> {
        if x.p() != 2 {
            return invalid("quadratic form evaluation needs a GF(2) vector");
        }
        if x.len() != self.dim() {
            return invalid("dimension mismatch");
        }
        Ok(self.qmat.mul_vec(x).dot(x))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{rngs::StdRng, Rng, SeedableRng};

    pub(crate) fn random_alternating(rng: &mut StdRng, p: u8, n: usize) -> FieldMatrix {
        let mut g = FieldMatrix::zeros(p, n, n);
        for i in 0..n {
            for j in 0..i {
                let v = rng.gen_range(0..p);
                g.set(i, j, v);
                g.set(j, i, field::neg(p, v));
            }
        }
        g
    }

    fn random_vec(rng: &mut StdRng, p: u8, n: usize) -> FieldVector {
        FieldVector::new(p, (0..n).map(|_| rng.gen_range(0..p)).collect()).unwrap()
    }

    fn edge() -> SymplecticSpace {
        SymplecticSpace::from_graph(2, &[(0, 1)]).unwrap()
    }

    fn e(i: usize) -> FieldVector {
        FieldVector::unit(2, 2, i)
    }

    #[test]
    fn rejects_bad_forms() {
        let g = FieldMatrix::from_rows(2, &[vec![1, 0], vec![0, 0]]).unwrap();
        assert!(SymplecticSpace::new(g, None).is_err());
        let g = FieldMatrix::from_rows(3, &[vec![0, 1], vec![1, 0]]).unwrap();
        assert!(SymplecticSpace::new(g, None).is_err());
        let g = FieldMatrix::zeros(2, 2, 2);
        assert!(SymplecticSpace::new(g, Some(vec![e(0)])).is_err());
    }

    #[test]
    fn transvection_basics() {
        let sp = edge();
        assert_eq!(sp.transvection_apply(&e(0), 1, &e(0)).unwrap(), e(0));
        assert_eq!(
            sp.transvection_apply(&e(0), 1, &e(1)).unwrap(),
            FieldVector::new(2, vec![1, 1]).unwrap()
        );
        assert!(sp.transvection_apply(&e(0), 0, &e(1)).is_err());
        assert!(sp.affine_transvection_apply(&e(0), 2, 0, &e(1)).is_err());
    }

    #[test]
    fn affine_single_edge() {
        let sp = edge();
        let x = FieldVector::zero(2, 2);
        assert_eq!(sp.affine_transvection_apply(&e(0), 1, 1, &x).unwrap(), e(0));
    }

    #[test]
    fn inverse_identities() {
        let mut rng = StdRng::seed_from_u64(1);
        for _ in 0..1000 {
            let p = [2u8, 3, 5, 7][rng.gen_range(0..4)];
            let n = rng.gen_range(1..=5);
            let sp = SymplecticSpace::new(random_alternating(&mut rng, p, n), None).unwrap();
            let s = random_vec(&mut rng, p, n);
            let x = random_vec(&mut rng, p, n);
            let k = rng.gen_range(1..p);
            let a = rng.gen_range(0..p);
            let y = sp.transvection_apply(&s, k, &x).unwrap();
            assert_eq!(sp.transvection_apply(&s, field::neg(p, k), &y).unwrap(), x);
            let y = sp.affine_transvection_apply(&s, k, a, &x).unwrap();
            assert_eq!(sp.affine_transvection_apply(&s, field::neg(p, k), a, &y).unwrap(), x);
            assert_eq!(
                sp.affine_transvection_apply(&s, k, 0, &x).unwrap(),
                sp.transvection_apply(&s, k, &x).unwrap()
            );
        }
    }

    #[test]
    fn dual_matches_matrix_route() {
        let mut rng = StdRng::seed_from_u64(2);
        for _ in 0..300 {
            let p = [2u8, 3, 5][rng.gen_range(0..3)];
            let n = rng.gen_range(1..=5);
            let sp = SymplecticSpace::new(random_alternating(&mut rng, p, n), None).unwrap();
            let s = random_vec(&mut rng, p, n);
            let k = rng.gen_range(1..p);
            let alpha = Functional(random_vec(&mut rng, p, n));
            let m = sp.transvection_matrix(&s, k).unwrap();
            assert_eq!(
                sp.dual_transvection_apply(&s, k, &alpha).unwrap(),
                Functional(m.vec_mul(&alpha.0))
            );
            // transvections preserve ω
            let x = random_vec(&mut rng, p, n);
            let y = random_vec(&mut rng, p, n);
            assert_eq!(sp.omega(&m.mul_vec(&x), &m.mul_vec(&y)), sp.omega(&x, &y));
        }
    }

    #[test]
    fn dual_single_edge() {
        let sp = edge();
        let alpha = Functional::new(2, vec![1, 0]).unwrap();
        assert_eq!(
            sp.dual_transvection_apply(&e(0), 1, &alpha).unwrap(),
            Functional::new(2, vec![1, 1]).unwrap()
        );
        let zero = Functional::zero(2, 2);
        assert_eq!(sp.dual_transvection_apply(&e(1), 1, &zero).unwrap(), zero);
    }

    #[test]
    fn omega_map_is_skew() {
        let mut rng = StdRng::seed_from_u64(9);
        let sp = SymplecticSpace::new(random_alternating(&mut rng, 3, 4), None).unwrap();
        assert!(sp.omega_map(&FieldVector::zero(3, 4)).is_zero());
        for k in sp.kernel() {
            assert!(sp.omega_map(&k).is_zero());
        }
        for _ in 0..100 {
            let x = random_vec(&mut rng, 3, 4);
            let y = random_vec(&mut rng, 3, 4);
            assert_eq!(sp.omega_map(&x).eval(&y), field::neg(3, sp.omega_map(&y).eval(&x)));
        }
    }

    #[test]
    fn quadratic_form_basics() {
        let sp = SymplecticSpace::from_graph(3, &[(0, 1), (1, 2)]).unwrap();
        let q = QuadraticForm::for_space(&sp).unwrap();
        for i in 0..3 {
            assert_eq!(q.eval(&FieldVector::unit(2, 3, i)).unwrap(), 1);
        }
        assert_eq!(q.eval(&FieldVector::zero(2, 3)).unwrap(), 0);
        assert!(q.eval(&FieldVector::zero(3, 3)).is_err());
        assert!(QuadraticForm::from_basis_gram(&FieldMatrix::zeros(3, 2, 2)).is_err());
    }

    #[test]
    fn quadratic_form_polarizes_to_omega() {
        let mut rng = StdRng::seed_from_u64(4);
        for _ in 0..50 {
            let n = rng.gen_range(1..=6);
            let sp = SymplecticSpace::new(random_alternating(&mut rng, 2, n), None).unwrap();
            let q = QuadraticForm::for_space(&sp).unwrap();
            let x = random_vec(&mut rng, 2, n);
            let y = random_vec(&mut rng, 2, n);
            let lhs = (q.eval(&x.add(&y)).unwrap() + q.eval(&x).unwrap() + q.eval(&y).unwrap()) % 2;
            assert_eq!(lhs, sp.omega(&x, &y));
        }
    }

    #[test]
    fn quadratic_form_is_euler_characteristic() {
        let mut rng = StdRng::seed_from_u64(6);
        let n = 5;
        let sp = SymplecticSpace::new(random_alternating(&mut rng, 2, n), None).unwrap();
        let q = QuadraticForm::for_space(&sp).unwrap();
        for code in 0..1u64 << n {
            let x = FieldVector::decode(2, n, code);
            let support: Vec<usize> = (0..n).filter(|&i| x.get(i) == 1).collect();
            let edges = support
                .iter()
                .enumerate()
                .flat_map(|(a, &u)| support[a + 1..].iter().map(move |&v| (u, v)))
                .filter(|&(u, v)| sp.gram().get(u, v) == 1)
                .count();
            assert_eq!(q.eval(&x).unwrap() as usize, (support.len() + edges) % 2);
        }
    }

    #[test]
    fn basis_coordinates_roundtrip() {
        let g = FieldMatrix::from_rows(2, &[vec![0, 1], vec![1, 0]]).unwrap();
        let s = vec![
            FieldVector::new(2, vec![1, 1]).unwrap(),
            FieldVector::new(2, vec![0, 1]).unwrap(),
        ];
        let sp = SymplecticSpace::new(g, Some(s)).unwrap();
        let x = FieldVector::new(2, vec![1, 0]).unwrap();
        assert_eq!(sp.basis_coordinates(&x).unwrap(), FieldVector::new(2, vec![1, 1]).unwrap());
    }
}
