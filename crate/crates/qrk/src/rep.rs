//! Representations of quivers: a vector space dimension per vertex and a
//! matrix per arrow, together with the structure maps between representation
//! spaces — restriction along a quiver morphism (pullback) and its left-ish
//! companion built from fiberwise direct sums (pushforward) — plus base
//! change, duality, and morphism-space dimensions.

use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::error::{Error, Result};
use crate::field::{FieldSpec, Scalar};
use crate::matrix::Matrix;
use crate::quiver::{DimVector, Quiver, QuiverMorphism};
use crate::subspace::Subspace;

/// A point of the representation space: `maps[a]` has shape
/// `dims[head(a)] x dims[tail(a)]` and acts on column vectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Representation {
    quiver: Arc<Quiver>,
    field: FieldSpec,
    dims: DimVector,
    maps: Vec<Matrix>,
}

impl Representation {
    pub fn new(quiver: Arc<Quiver>, field: FieldSpec, dims: DimVector, maps: Vec<Matrix>) -> Result<Self> {
        if dims.len() != quiver.num_vertices() {
            return Err(Error::DimMismatch(format!(
                "dimension vector has {} entries for {} vertices",
                dims.len(),
                quiver.num_vertices()
            )));
        }
        if maps.len() != quiver.num_arrows() {
            return Err(Error::DimMismatch(format!(
                "{} matrices given for {} arrows",
                maps.len(),
                quiver.num_arrows()
            )));
        }
        for (i, a) in quiver.arrows().iter().enumerate() {
            let m = &maps[i];
            if m.field() != field {
                return Err(Error::FieldMismatch(m.field(), field));
            }
            if m.rows() != dims[a.head] || m.cols() != dims[a.tail] {
                return Err(Error::DimMismatch(format!(
                    "arrow `{}` needs a {}x{} matrix, got {}x{}",
                    a.name,
                    dims[a.head],
                    dims[a.tail],
                    m.rows(),
                    m.cols()
                )));
            }
        }
        Ok(Representation { quiver, field, dims, maps })
    }

    pub fn zero_maps(quiver: Arc<Quiver>, field: FieldSpec, dims: DimVector) -> Self {
        let maps = quiver
            .arrows()
            .iter()
            .map(|a| Matrix::zero(field, dims[a.head], dims[a.tail]))
            .collect();
        Representation { quiver, field, dims, maps }
    }

    pub fn random(quiver: &Arc<Quiver>, field: FieldSpec, dims: &[usize], rng: &mut impl Rng) -> Self {
        let maps = quiver
            .arrows()
            .iter()
            .map(|a| Matrix::from_fn(field, dims[a.head], dims[a.tail], |_, _| random_scalar(field, rng)))
            .collect();
        Representation {
            quiver: quiver.clone(),
            field,
            dims: dims.to_vec(),
            maps,
        }
    }

    pub fn quiver(&self) -> &Arc<Quiver> {
        &self.quiver
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn dim(&self, v: usize) -> usize {
        self.dims[v]
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn map(&self, a: usize) -> &Matrix {
        &self.maps[a]
    }

    pub fn maps(&self) -> &[Matrix] {
        &self.maps
    }

    /// Restriction along `f`: a representation of `f.source()` that places
    /// at `x` the space this representation puts at `f(x)`.
    pub fn pullback(&self, f: &QuiverMorphism) -> Result<Representation> {
        if self.quiver.as_ref() != f.target().as_ref() {
            return Err(Error::QuiverMismatch(
                "pullback needs a representation of the morphism's target".into(),
            ));
        }
        let src = f.source().clone();
        let dims: DimVector = (0..src.num_vertices())
            .map(|x| self.dims[f.vertex_image(x)])
            .collect();
        let maps = (0..src.num_arrows())
            .map(|b| self.maps[f.arrow_image(b)].clone())
            .collect();
        Ok(Representation {
            quiver: src,
            field: self.field,
            dims,
            maps,
        })
    }

    /// Pushforward along `f`: at a target vertex, the direct sum of the
    /// fiber's spaces in source declaration order; on a target arrow, the
    /// block matrix whose `(z, y)` block is the sum of the maps of all
    /// fiber arrows running `y -> z`.
    pub fn pushforward(&self, f: &QuiverMorphism) -> Result<Representation> {
        if self.quiver.as_ref() != f.source().as_ref() {
            return Err(Error::QuiverMismatch(
                "pushforward needs a representation of the morphism's source".into(),
            ));
        }
        let target = f.target().clone();
        let mut dims = vec![0usize; target.num_vertices()];
        let mut offset = vec![0usize; self.quiver.num_vertices()];
        for y in 0..target.num_vertices() {
            let mut off = 0;
            for x in f.vertex_fiber(y) {
                offset[x] = off;
                off += self.dims[x];
            }
            dims[y] = off;
        }
        let mut maps = Vec::with_capacity(target.num_arrows());
        for (ai, a) in target.arrows().iter().enumerate() {
            let mut m = Matrix::zero(self.field, dims[a.head], dims[a.tail]);
            for (bi, b) in self.quiver.arrows().iter().enumerate() {
                if f.arrow_image(bi) != ai {
                    continue;
                }
                let blk = &self.maps[bi];
                let (ro, co) = (offset[b.head], offset[b.tail]);
                for i in 0..blk.rows() {
                    for j in 0..blk.cols() {
                        m[(ro + i, co + j)] = self.field.add(&m[(ro + i, co + j)], &blk[(i, j)]);
                    }
                }
            }
            maps.push(m);
        }
        Ok(Representation {
            quiver: target,
            field: self.field,
            dims,
            maps,
        })
    }

    /// The dual representation over the opposite quiver (transposed maps).
    pub fn dual(&self) -> Representation {
        Representation {
            quiver: self.quiver.opposite(),
            field: self.field,
            dims: self.dims.clone(),
            maps: self.maps.iter().map(Matrix::transpose).collect(),
        }
    }

    pub fn direct_sum(&self, other: &Representation) -> Result<Representation> {
        if self.quiver.as_ref() != other.quiver.as_ref() {
            return Err(Error::QuiverMismatch("direct sum over different quivers".into()));
        }
        if self.field != other.field {
            return Err(Error::FieldMismatch(self.field, other.field));
        }
        let dims = self.dims.iter().zip(&other.dims).map(|(a, b)| a + b).collect();
        let maps = self
            .maps
            .iter()
            .zip(&other.maps)
            .map(|(a, b)| a.block_diag(b))
            .collect::<Result<_>>()?;
        Ok(Representation {
            quiver: self.quiver.clone(),
            field: self.field,
            dims,
            maps,
        })
    }

    fn check_spaces(&self, spaces: &[Subspace]) -> Result<()> {
        if spaces.len() != self.quiver.num_vertices() {
            return Err(Error::DimMismatch(
                "one subspace per vertex is required".into(),
            ));
        }
        for (x, s) in spaces.iter().enumerate() {
            if s.field() != self.field {
                return Err(Error::FieldMismatch(s.field(), self.field));
            }
            if s.ambient_dim() != self.dims[x] {
                return Err(Error::DimMismatch(format!(
                    "subspace at vertex `{}` lives in K^{}, space has dim {}",
                    self.quiver.vertex_name(x),
                    s.ambient_dim(),
                    self.dims[x]
                )));
            }
        }
        Ok(())
    }

    /// Do the given per-vertex subspaces form a subrepresentation?
    pub fn is_invariant(&self, spaces: &[Subspace]) -> Result<bool> {
        self.check_spaces(spaces)?;
        for (i, a) in self.quiver.arrows().iter().enumerate() {
            let img = self.maps[i].map_subspace(&spaces[a.tail])?;
            if !img.is_subspace_of(&spaces[a.head])? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// The representation carried by an invariant family of subspaces, in
    /// the stored subspace bases.
    pub fn restrict(&self, spaces: &[Subspace]) -> Result<Representation> {
        self.check_spaces(spaces)?;
        let dims: DimVector = spaces.iter().map(Subspace::dim).collect();
        let maps = self
            .quiver
            .arrows()
            .iter()
            .enumerate()
            .map(|(i, a)| self.maps[i].induced(&spaces[a.tail], &spaces[a.head]))
            .collect::<Result<_>>()?;
        Ok(Representation {
            quiver: self.quiver.clone(),
            field: self.field,
            dims,
            maps,
        })
    }

    /// The representation induced on the per-vertex quotients by an
    /// invariant family of subspaces.
    pub fn quotient(&self, spaces: &[Subspace]) -> Result<Representation> {
        if !self.is_invariant(spaces)? {
            return Err(Error::NotContained(
                "quotient requires an invariant family of subspaces".into(),
            ));
        }
        let dims: DimVector = spaces
            .iter()
            .enumerate()
            .map(|(x, s)| self.dims[x] - s.dim())
            .collect();
        let maps = self
            .quiver
            .arrows()
            .iter()
            .enumerate()
            .map(|(i, a)| self.maps[i].induced_on_quotient(&spaces[a.tail], &spaces[a.head]))
            .collect::<Result<_>>()?;
        Ok(Representation {
            quiver: self.quiver.clone(),
            field: self.field,
            dims,
            maps,
        })
    }

    /// Dimension of the space of representation morphisms `self -> other`:
    /// families `g_x` with `g_{head} phi_a = psi_a g_{tail}` for every arrow.
    /// Solved as one homogeneous linear system in the entries of the `g_x`.
    pub fn hom_dim(&self, other: &Representation) -> Result<usize> {
        if self.quiver.as_ref() != other.quiver.as_ref() {
            return Err(Error::QuiverMismatch("hom over different quivers".into()));
        }
        if self.field != other.field {
            return Err(Error::FieldMismatch(self.field, other.field));
        }
        let q = &self.quiver;
        let nv = q.num_vertices();
        // unknown block for vertex x: g_x of shape other.dims[x] x self.dims[x]
        let mut offset = vec![0usize; nv + 1];
        for x in 0..nv {
            offset[x + 1] = offset[x] + other.dims[x] * self.dims[x];
        }
        let unknowns = offset[nv];
        let total_rows: usize = q
            .arrows()
            .iter()
            .map(|a| other.dims[a.head] * self.dims[a.tail])
            .sum();
        let f = self.field;
        let mut sys = Matrix::zero(f, total_rows, unknowns);
        let mut r = 0;
        for (ai, a) in q.arrows().iter().enumerate() {
            let phi = &self.maps[ai];
            let psi = &other.maps[ai];
            for i in 0..other.dims[a.head] {
                for j in 0..self.dims[a.tail] {
                    for k in 0..self.dims[a.head] {
                        let col = offset[a.head] + i * self.dims[a.head] + k;
                        sys[(r, col)] = f.add(&sys[(r, col)], &phi[(k, j)]);
                    }
                    for l in 0..other.dims[a.tail] {
                        let col = offset[a.tail] + l * self.dims[a.tail] + j;
                        sys[(r, col)] = f.sub(&sys[(r, col)], &psi[(i, l)]);
                    }
                    r += 1;
                }
            }
        }
        Ok(unknowns - sys.rank())
    }
}

/// One invertible matrix per vertex, acting on representations by
/// conjugation along every arrow.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BaseChange {
    field: FieldSpec,
    mats: Vec<Matrix>,
}

impl BaseChange {
    pub fn new(field: FieldSpec, mats: Vec<Matrix>) -> Result<Self> {
        for m in &mats {
            if m.field() != field {
                return Err(Error::FieldMismatch(m.field(), field));
            }
            if !m.is_invertible() {
                return Err(Error::Singular);
            }
        }
        Ok(BaseChange { field, mats })
    }

    pub fn identity(field: FieldSpec, dims: &[usize]) -> Self {
        BaseChange {
            field,
            mats: dims.iter().map(|&d| Matrix::identity(field, d)).collect(),
        }
    }

    /// A random invertible matrix per vertex, built as P·L·D·U so it is
    /// invertible by construction (unit triangular factors, nonzero
    /// diagonal, permutation).
    pub fn random(field: FieldSpec, dims: &[usize], rng: &mut impl Rng) -> Self {
        let mats = dims.iter().map(|&d| random_invertible(field, d, rng)).collect();
        BaseChange { field, mats }
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn mats(&self) -> &[Matrix] {
        &self.mats
    }

    pub fn mat(&self, v: usize) -> &Matrix {
        &self.mats[v]
    }

    /// `phi_a` becomes `g_{head} phi_a g_{tail}^{-1}`.
    pub fn apply(&self, rep: &Representation) -> Result<Representation> {
        if self.field != rep.field() {
            return Err(Error::FieldMismatch(self.field, rep.field()));
        }
        if self.mats.len() != rep.quiver().num_vertices() {
            return Err(Error::DimMismatch("one matrix per vertex is required".into()));
        }
        for (x, m) in self.mats.iter().enumerate() {
            if m.rows() != rep.dim(x) {
                return Err(Error::DimMismatch(format!(
                    "base change at vertex `{}` is {}x{}, space has dim {}",
                    rep.quiver().vertex_name(x),
                    m.rows(),
                    m.cols(),
                    rep.dim(x)
                )));
            }
        }
        let inverses: Vec<Matrix> = self
            .mats
            .iter()
            .map(|m| m.inverse())
            .collect::<Result<_>>()?;
        let maps = rep
            .quiver()
            .arrows()
            .iter()
            .enumerate()
            .map(|(i, a)| self.mats[a.head].mul(rep.map(i))?.mul(&inverses[a.tail]))
            .collect::<Result<_>>()?;
        Representation::new(rep.quiver().clone(), self.field, rep.dims().to_vec(), maps)
    }

    pub fn inverse(&self) -> Result<BaseChange> {
        Ok(BaseChange {
            field: self.field,
            mats: self.mats.iter().map(|m| m.inverse()).collect::<Result<_>>()?,
        })
    }
}

pub fn random_scalar(field: FieldSpec, rng: &mut impl Rng) -> Scalar {
    match field {
        FieldSpec::Rationals => field.from_i64(rng.gen_range(-3..=3)),
        FieldSpec::Prime(p) => field.from_residue(rng.gen_range(0..p)),
    }
}

fn random_nonzero_scalar(field: FieldSpec, rng: &mut impl Rng) -> Scalar {
    match field {
        FieldSpec::Rationals => {
            let n: i64 = if rng.gen() { rng.gen_range(1..=3) } else { -rng.gen_range(1..=3) };
            field.from_i64(n)
        }
        FieldSpec::Prime(p) => field.from_residue(rng.gen_range(1..p)),
    }
}

fn random_invertible(field: FieldSpec, n: usize, rng: &mut impl Rng) -> Matrix {
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    let p = Matrix::from_fn(field, n, n, |i, j| {
        if perm[i] == j { field.one() } else { field.zero() }
    });
    let l = Matrix::from_fn(field, n, n, |i, j| {
        if i == j {
            field.one()
        } else if i > j {
            random_scalar(field, rng)
        } else {
            field.zero()
        }
    });
    let d = Matrix::from_fn(field, n, n, |i, j| {
        if i == j { random_nonzero_scalar(field, rng) } else { field.zero() }
    });
    let u = Matrix::from_fn(field, n, n, |i, j| {
        if i == j {
            field.one()
        } else if i < j {
            random_scalar(field, rng)
        } else {
            field.zero()
        }
    });
    p.mul(&l).and_then(|m| m.mul(&d)).and_then(|m| m.mul(&u)).expect("square factors")
}
