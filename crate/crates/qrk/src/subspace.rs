//! Canonical subspaces of coordinate spaces and the lattice operations on
//! them (sum, intersection, preimage), plus the matrix ops that produce or
//! consume subspaces (image, kernel, induced maps).
//!
//! A subspace is stored as the unique reduced row-echelon basis of its row
//! space, so two values are equal as sets exactly when they are equal as
//! data. That makes the fixed-point loops downstream terminate on plain
//! `==` and keeps every computation reproducible bit for bit.

use crate::error::{Error, Result};
use crate::field::{FieldSpec, Scalar};
use crate::matrix::Matrix;

#[derive(Clone, PartialEq, Eq)]
pub struct Subspace {
    ambient_dim: usize,
    /// RREF matrix whose rows are the basis; `basis.cols() == ambient_dim`.
    basis: Matrix,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(field: FieldSpec, ambient_dim: usize) -> Self {
        Subspace {
            ambient_dim,
            basis: Matrix::zero(field, 0, ambient_dim),
            pivots: Vec::new(),
        }
    }

    pub fn full(field: FieldSpec, ambient_dim: usize) -> Self {
        Subspace {
            ambient_dim,
            basis: Matrix::identity(field, ambient_dim),
            pivots: (0..ambient_dim).collect(),
        }
    }

    /// Canonicalizes an arbitrary generating set (rows of `gens`).
    pub fn from_generators(gens: &Matrix) -> Self {
        let (mut rref, pivots, rank) = gens.rref();
        let cols = rref.cols();
        let field = rref.field();
        // drop the zero rows below the pivot rows
        if rank < rref.rows() {
            let mut top = Vec::with_capacity(rank * cols);
            for i in 0..rank {
                top.extend(rref.row(i).iter().cloned());
            }
            rref = Matrix::from_entries(field, rank, cols, top).expect("shape by construction");
        }
        Subspace {
            ambient_dim: cols,
            basis: rref,
            pivots,
        }
    }

    /// Trusted constructor: `basis` must already be in RREF with the given
    /// pivot columns. Used by enumeration loops that emit RREF directly.
    pub(crate) fn from_rref_unchecked(basis: Matrix, pivots: Vec<usize>) -> Self {
        debug_assert_eq!(basis.rows(), pivots.len());
        Subspace {
            ambient_dim: basis.cols(),
            basis,
            pivots,
        }
    }

    pub fn field(&self) -> FieldSpec {
        self.basis.field()
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    pub fn is_full(&self) -> bool {
        self.dim() == self.ambient_dim
    }

    fn check_compatible(&self, other: &Subspace) -> Result<()> {
        if self.field() != other.field() {
            return Err(Error::FieldMismatch(self.field(), other.field()));
        }
        if self.ambient_dim != other.ambient_dim {
            return Err(Error::DimMismatch(format!(
                "ambient dimensions differ: {} vs {}",
                self.ambient_dim, other.ambient_dim
            )));
        }
        Ok(())
    }

    /// Reduces `v` modulo this subspace; the result is zero iff `v` lies in it.
    /// The subtracted pivot coefficients are exactly the coordinates of `v`
    /// in the stored basis when the residue is zero.
    pub fn reduce(&self, v: &[Scalar]) -> (Vec<Scalar>, Vec<Scalar>) {
        assert_eq!(v.len(), self.ambient_dim);
        let f = self.field();
        let mut res = v.to_vec();
        let mut coords = Vec::with_capacity(self.dim());
        for (i, &p) in self.pivots.iter().enumerate() {
            let c = res[p].clone();
            coords.push(c.clone());
            if c.is_zero() {
                continue;
            }
            for j in 0..self.ambient_dim {
                let b = &self.basis[(i, j)];
                if b.is_zero() {
                    continue;
                }
                res[j] = f.sub(&res[j], &f.mul(&c, b));
            }
        }
        (res, coords)
    }

    pub fn contains_vector(&self, v: &[Scalar]) -> bool {
        self.reduce(v).0.iter().all(Scalar::is_zero)
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> Result<bool> {
        self.check_compatible(other)?;
        Ok((0..self.dim()).all(|i| other.contains_vector(self.basis.row(i))))
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        self.check_compatible(other)?;
        Ok(Subspace::from_generators(&self.basis.vstack(&other.basis)?))
    }

    /// Intersection via the kernel of the stacked generator system: a linear
    /// relation between the two bases singles out a vector lying in both.
    pub fn intersect(&self, other: &Subspace) -> Result<Subspace> {
        self.check_compatible(other)?;
        let f = self.field();
        let k = self.dim();
        let stacked = self.basis.vstack(&other.basis)?;
        let relations = stacked.transpose().kernel();
        let mut gens = Matrix::zero(f, relations.dim(), self.ambient_dim);
        for (r, rel) in (0..relations.dim()).map(|r| (r, relations.basis().row(r))) {
            for i in 0..k {
                if rel[i].is_zero() {
                    continue;
                }
                for j in 0..self.ambient_dim {
                    let add = f.mul(&rel[i], &self.basis[(i, j)]);
                    gens[(r, j)] = f.add(&gens[(r, j)], &add);
                }
            }
        }
        Ok(Subspace::from_generators(&gens))
    }

    /// Basis of `{ y : <y, s> = 0 for all s in self }`, the annihilator under
    /// the standard bilinear form.
    pub fn annihilator(&self) -> Subspace {
        self.basis.kernel()
    }

    /// dim S - dim (S ∩ U): the rank of the composite S -> V -> V/U.
    pub fn rank_through(&self, u: &Subspace) -> Result<usize> {
        self.check_compatible(u)?;
        Ok(self.dim() - self.intersect(u)?.dim())
    }

    /// Re-expresses a contained subspace in this subspace's own basis
    /// coordinates, as a subspace of `K^{dim self}`.
    pub fn coordinates_of(&self, inner: &Subspace) -> Result<Subspace> {
        self.check_compatible(inner)?;
        let f = self.field();
        let mut gens = Matrix::zero(f, inner.dim(), self.dim());
        for i in 0..inner.dim() {
            let (res, coords) = self.reduce(inner.basis().row(i));
            if res.iter().any(|e| !e.is_zero()) {
                return Err(Error::NotContained(
                    "cannot take coordinates of a space that is not contained".into(),
                ));
            }
            for (j, c) in coords.into_iter().enumerate() {
                gens[(i, j)] = c;
            }
        }
        Ok(Subspace::from_generators(&gens))
    }
}

impl std::fmt::Debug for Subspace {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "Subspace(dim {} of K^{}) {}",
            self.dim(),
            self.ambient_dim,
            self.basis.to_text()
        )
    }
}

impl Matrix {
    /// Column span as a subspace of the codomain.
    pub fn image(&self) -> Subspace {
        Subspace::from_generators(&self.transpose())
    }

    /// Solution space of `m x = 0` as a subspace of the domain.
    pub fn kernel(&self) -> Subspace {
        let f = self.field();
        let n = self.cols();
        let (rref, pivots, rank) = self.rref();
        let free: Vec<usize> = (0..n).filter(|j| !pivots.contains(j)).collect();
        let mut gens = Matrix::zero(f, n - rank, n);
        for (r, &fc) in free.iter().enumerate() {
            gens[(r, fc)] = f.one();
            for (i, &p) in pivots.iter().enumerate() {
                gens[(r, p)] = f.neg(&rref[(i, fc)]);
            }
        }
        Subspace::from_generators(&gens)
    }

    /// Image of a subspace of the domain under this matrix.
    pub fn map_subspace(&self, s: &Subspace) -> Result<Subspace> {
        if s.field() != self.field() {
            return Err(Error::FieldMismatch(s.field(), self.field()));
        }
        if s.ambient_dim() != self.cols() {
            return Err(Error::DimMismatch(format!(
                "subspace of K^{} fed to a matrix with {} columns",
                s.ambient_dim(),
                self.cols()
            )));
        }
        Ok(Subspace::from_generators(&s.basis().mul(&self.transpose())?))
    }

    /// `{ x : m x ∈ T }`, computed as the x-part of the kernel of `[m | -B^T]`
    /// where the rows of `B` are a basis of `T`.
    pub fn preimage(&self, t: &Subspace) -> Result<Subspace> {
        if t.field() != self.field() {
            return Err(Error::FieldMismatch(t.field(), self.field()));
        }
        if t.ambient_dim() != self.rows() {
            return Err(Error::DimMismatch(format!(
                "preimage target lives in K^{}, matrix has {} rows",
                t.ambient_dim(),
                self.rows()
            )));
        }
        let f = self.field();
        let d = t.dim();
        if d == 0 {
            return Ok(self.kernel());
        }
        let neg_bt = Matrix::from_fn(f, self.rows(), d, |i, j| f.neg(&t.basis()[(j, i)]));
        let aug = self.hstack(&neg_bt)?;
        let ker = aug.kernel();
        let gens = Matrix::from_fn(f, ker.dim(), self.cols(), |i, j| ker.basis()[(i, j)].clone());
        Ok(Subspace::from_generators(&gens))
    }

    /// Matrix of the restriction `S -> T` of this map in the stored bases.
    /// Fails if the image of `S` is not contained in `T`.
    pub fn induced(&self, s: &Subspace, t: &Subspace) -> Result<Matrix> {
        if s.field() != self.field() || t.field() != self.field() {
            return Err(Error::FieldMismatch(s.field(), self.field()));
        }
        if s.ambient_dim() != self.cols() || t.ambient_dim() != self.rows() {
            return Err(Error::DimMismatch(format!(
                "induced map needs S in K^{} and T in K^{}, got K^{} and K^{}",
                self.cols(),
                self.rows(),
                s.ambient_dim(),
                t.ambient_dim()
            )));
        }
        let mut out = Matrix::zero(self.field(), t.dim(), s.dim());
        for j in 0..s.dim() {
            let w = self.apply(s.basis().row(j));
            let (res, coords) = t.reduce(&w);
            if res.iter().any(|e| !e.is_zero()) {
                return Err(Error::NotContained(
                    "image of the source subspace is not inside the target".into(),
                ));
            }
            for (i, c) in coords.into_iter().enumerate() {
                out[(i, j)] = c;
            }
        }
        Ok(out)
    }

    /// Matrix of the map induced on the quotient `K^n / W` in the canonical
    /// quotient coordinates (residue entries at the non-pivot columns of `W`).
    pub fn induced_on_quotient(&self, w_domain: &Subspace, w_codomain: &Subspace) -> Result<Matrix> {
        let f = self.field();
        if w_domain.ambient_dim() != self.cols() || w_codomain.ambient_dim() != self.rows() {
            return Err(Error::DimMismatch(
                "quotient subspaces do not match the matrix shape".into(),
            ));
        }
        let dom_free: Vec<usize> =
            (0..self.cols()).filter(|j| !w_domain.pivots().contains(j)).collect();
        let cod_free: Vec<usize> =
            (0..self.rows()).filter(|j| !w_codomain.pivots().contains(j)).collect();
        let mut out = Matrix::zero(f, cod_free.len(), dom_free.len());
        for (j, &src) in dom_free.iter().enumerate() {
            // section of the quotient: the standard basis vector at a free column
            let mut v = vec![f.zero(); self.cols()];
            v[src] = f.one();
            let (res, _) = w_codomain.reduce(&self.apply(&v));
            for (i, &c) in cod_free.iter().enumerate() {
                out[(i, j)] = res[c].clone();
            }
        }
        Ok(out)
    }
}

/// Canonical coordinates of `v + W` in `K^n / W`: the residue of `v` modulo
/// `W`, read off at the non-pivot columns of `W`.
pub fn quotient_coordinates(w: &Subspace, v: &[Scalar]) -> Vec<Scalar> {
    let (res, _) = w.reduce(v);
    (0..w.ambient_dim())
        .filter(|j| !w.pivots().contains(j))
        .map(|j| res[j].clone())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    const Q: FieldSpec = FieldSpec::Rationals;

    fn span(rows: &[&[i64]], _n: usize) -> Subspace {
        Subspace::from_generators(&Matrix::from_i64(Q, rows))
    }

    #[test]
    fn kernel_and_image_basics() {
        let id = Matrix::identity(Q, 3);
        assert!(id.kernel().is_zero());
        assert!(Matrix::zero(Q, 2, 3).image().is_zero());
        // kernel([[0,1],[0,0]]) = span{e1}
        let m = Matrix::from_i64(Q, &[&[0, 1], &[0, 0]]);
        let k = m.kernel();
        assert_eq!(k.dim(), 1);
        assert!(k.contains_vector(&[Q.one(), Q.zero()]));
    }

    #[test]
    fn rank_nullity_small() {
        let m = Matrix::from_i64(Q, &[&[1, 2, 3], &[2, 4, 6]]);
        assert_eq!(m.image().dim() + m.kernel().dim(), m.cols());
    }

    #[test]
    fn intersect_complementary_lines() {
        let s = span(&[&[1, 0]], 2);
        let t = span(&[&[0, 1]], 2);
        assert!(s.intersect(&t).unwrap().is_zero());
        assert_eq!(s.intersect(&s).unwrap(), s);
        let u = span(&[&[1, 0]], 2);
        assert_eq!(s.intersect(&u).unwrap().dim(), 1);
    }

    #[test]
    fn sum_and_modular_law() {
        let s = span(&[&[1, 0, 0], &[0, 1, 0]], 3);
        let t = span(&[&[0, 1, 1]], 3);
        let sum = s.sum(&t).unwrap();
        let int = s.intersect(&t).unwrap();
        assert_eq!(s.dim() + t.dim(), sum.dim() + int.dim());
    }

    #[test]
    fn preimage_cases() {
        let m = Matrix::from_i64(Q, &[&[1, 0], &[0, 0]]);
        let full = Subspace::full(Q, 2);
        let zero = Subspace::zero(Q, 2);
        assert!(m.preimage(&full).unwrap().is_full());
        assert_eq!(m.preimage(&zero).unwrap(), m.kernel());
        let id = Matrix::identity(Q, 2);
        let t = span(&[&[1, 1]], 2);
        assert_eq!(id.preimage(&t).unwrap(), t);
        // preimage always contains the kernel
        assert!(m.kernel().is_subspace_of(&m.preimage(&t).unwrap()).unwrap());
    }

    #[test]
    fn rank_through_cases() {
        let full = Subspace::full(Q, 2);
        let zero = Subspace::zero(Q, 2);
        assert_eq!(full.rank_through(&zero).unwrap(), 2);
        let s = span(&[&[1, 1]], 2);
        assert_eq!(s.rank_through(&full).unwrap(), 0);
        let a = span(&[&[1, 0]], 2);
        let u = span(&[&[1, 1]], 2);
        assert_eq!(a.rank_through(&u).unwrap(), 1);
    }

    #[test]
    fn induced_matrix_cases() {
        let m = Matrix::from_i64(Q, &[&[0, 1], &[0, 0]]);
        let s = span(&[&[0, 1]], 2);
        let t = span(&[&[1, 0]], 2);
        let ind = m.induced(&s, &t).unwrap();
        assert_eq!(ind, Matrix::from_i64(Q, &[&[1]]));
        let full = Subspace::full(Q, 2);
        assert_eq!(m.induced(&full, &full).unwrap(), m);
        let id = Matrix::identity(Q, 2);
        assert_eq!(id.induced(&s, &s).unwrap(), Matrix::identity(Q, 1));
        // containment violation
        assert!(id.induced(&s, &t).is_err());
    }

    #[test]
    fn canonical_equality_ignores_generators() {
        let s1 = span(&[&[1, 1, 0], &[0, 0, 1]], 3);
        let s2 = span(&[&[1, 1, 1], &[0, 0, 2], &[2, 2, 2]], 3);
        assert_eq!(s1, s2);
    }

    #[test]
    fn zero_ambient_space() {
        let z = Subspace::zero(Q, 0);
        let f = Subspace::full(Q, 0);
        assert_eq!(z, f);
        assert_eq!(z.sum(&f).unwrap(), z);
        assert_eq!(z.intersect(&f).unwrap(), z);
    }

    #[test]
    fn quotient_map_via_free_columns() {
        let w = span(&[&[1, 0, 1]], 3);
        let id = Matrix::identity(Q, 3);
        let q = id.induced_on_quotient(&w, &w).unwrap();
        assert_eq!(q, Matrix::identity(Q, 2));
        let v = [Q.from_i64(1), Q.from_i64(2), Q.from_i64(3)];
        let coords = quotient_coordinates(&w, &v);
        assert_eq!(coords.len(), 2);
    }
}
