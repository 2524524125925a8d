//! The rank machinery: the largest epimorphic subrepresentation, its
//! "absorbing" counterpart built from kernels, the vertexwise ranks they
//! induce, and chains of pull/push steps ending in a global rank.
//!
//! Independent oracle computations for three special quiver shapes live at
//! the bottom; the test suites pit the general sweeps against them.

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::quiver::QuiverMorphism;
use crate::rep::Representation;
use crate::subspace::Subspace;

/// Largest subrepresentation `W` on which every arrow map restricts to a
/// surjection `W_{tail} -> W_{head}`. Computed as the fixed point of a
/// decreasing sweep that replaces `W_{head}` by its intersection with the
/// image of `W_{tail}` and `W_{tail}` by its intersection with the preimage
/// of `W_{head}`.
pub fn sigma(phi: &Representation) -> Result<Vec<Subspace>> {
    let q = phi.quiver().clone();
    let f = phi.field();
    let mut w: Vec<Subspace> = (0..q.num_vertices())
        .map(|x| Subspace::full(f, phi.dim(x)))
        .collect();
    // every changing sweep strictly drops the total dimension
    for _ in 0..phi.total_dim() + 1 {
        let mut changed = false;
        for (i, a) in q.arrows().iter().enumerate() {
            let img = phi.map(i).map_subspace(&w[a.tail])?;
            let new_head = w[a.head].intersect(&img)?;
            if new_head != w[a.head] {
                w[a.head] = new_head;
                changed = true;
            }
            let pre = phi.map(i).preimage(&w[a.head])?;
            let new_tail = w[a.tail].intersect(&pre)?;
            if new_tail != w[a.tail] {
                w[a.tail] = new_tail;
                changed = true;
            }
        }
        if !changed {
            return Ok(w);
        }
    }
    Err(Error::Internal("descending sweep failed to stabilize".into()))
}

/// Smallest subrepresentation `U` that contains every arrow kernel and is
/// closed under taking images and preimages along arrows. Computed as the
/// fixed point of the increasing sweep dual to [`sigma`].
pub fn iota_kernel(phi: &Representation) -> Result<Vec<Subspace>> {
    let q = phi.quiver().clone();
    let f = phi.field();
    let mut u: Vec<Subspace> = (0..q.num_vertices())
        .map(|x| Subspace::zero(f, phi.dim(x)))
        .collect();
    for _ in 0..phi.total_dim() + 1 {
        let mut changed = false;
        for (i, a) in q.arrows().iter().enumerate() {
            let pre = phi.map(i).preimage(&u[a.head])?;
            let new_tail = u[a.tail].sum(&pre)?;
            if new_tail != u[a.tail] {
                u[a.tail] = new_tail;
                changed = true;
            }
            let img = phi.map(i).map_subspace(&u[a.tail])?;
            let new_head = u[a.head].sum(&img)?;
            if new_head != u[a.head] {
                u[a.head] = new_head;
                changed = true;
            }
        }
        if !changed {
            return Ok(u);
        }
    }
    Err(Error::Internal("ascending sweep failed to stabilize".into()))
}

/// The representation induced on the per-vertex quotients by the kernel
/// subrepresentation of [`iota_kernel`].
pub fn iota_rep(phi: &Representation) -> Result<Representation> {
    phi.quotient(&iota_kernel(phi)?)
}

/// At every vertex, the dimension of the image of `Sigma_x` in the quotient
/// by `U_x`.
pub fn vertex_ranks(phi: &Representation) -> Result<Vec<usize>> {
    let s = sigma(phi)?;
    let u = iota_kernel(phi)?;
    s.iter()
        .zip(&u)
        .map(|(sx, ux)| sx.rank_through(ux))
        .collect()
}

/// The common vertexwise rank of a representation of a connected quiver.
///
/// Fails with [`Error::Disconnected`] when the quiver is not connected, and
/// with [`Error::Internal`] if the vertexwise ranks ever disagree — that
/// would falsify the invariant the whole crate is built on.
pub fn global_rank(phi: &Representation) -> Result<usize> {
    if !phi.quiver().is_connected() {
        return Err(Error::Disconnected);
    }
    let ranks = vertex_ranks(phi)?;
    let r = ranks[0];
    if let Some(x) = ranks.iter().position(|&v| v != r) {
        return Err(Error::Internal(format!(
            "vertexwise ranks disagree: {} at `{}` vs {} at `{}`",
            r,
            phi.quiver().vertex_name(0),
            ranks[x],
            phi.quiver().vertex_name(x)
        )));
    }
    Ok(r)
}

/// The rank read off independently on every connected component, in the
/// order reported by [`crate::quiver::Quiver::components`].
pub fn component_ranks(phi: &Representation) -> Result<Vec<usize>> {
    let q = phi.quiver();
    let mut out = Vec::new();
    for comp in q.components() {
        let back: Vec<usize> = comp.clone();
        let names: Vec<String> = back.iter().map(|&x| q.vertex_name(x).to_string()).collect();
        let mut arrows = Vec::new();
        let mut maps = Vec::new();
        for (i, a) in q.arrows().iter().enumerate() {
            // components are closed under arrows, so tail-in implies head-in
            if let Some(t) = back.iter().position(|&x| x == a.tail) {
                let h = back.iter().position(|&x| x == a.head).expect("component is arrow-closed");
                arrows.push((a.name.clone(), names[t].clone(), names[h].clone()));
                maps.push(phi.map(i).clone());
            }
        }
        let sub_q = crate::quiver::Quiver::new(q.name(), names.clone(), arrows)?;
        let dims = back.iter().map(|&x| phi.dim(x)).collect();
        let sub_rep = Representation::new(sub_q, phi.field(), dims, maps)?;
        out.push(global_rank(&sub_rep)?);
    }
    Ok(out)
}

/// The representation `Sigma / (Sigma ∩ U)` realized on explicit bases: the
/// restriction to the largest epimorphic subrepresentation, then the
/// quotient by its intersection with the kernel subrepresentation. Its
/// dimension at every vertex of a connected quiver is the global rank.
pub fn rank_rep(phi: &Representation) -> Result<Representation> {
    let s = sigma(phi)?;
    let u = iota_kernel(phi)?;
    let restricted = phi.restrict(&s)?;
    let inner: Vec<Subspace> = s
        .iter()
        .zip(&u)
        .map(|(sx, ux)| sx.coordinates_of(&sx.intersect(ux)?))
        .collect::<Result<_>>()?;
    restricted.quotient(&inner)
}

/// One step of a rank chain: restrict along a morphism, or push forward
/// along one.
#[derive(Clone, Debug)]
pub enum ChainStep {
    Pull(QuiverMorphism),
    Push(QuiverMorphism),
}

/// A composable sequence of pull/push steps; evaluating the chain on a
/// representation applies the steps left to right and reads off the global
/// rank at the end.
#[derive(Clone, Debug, Default)]
pub struct RankChain {
    steps: Vec<ChainStep>,
}

impl RankChain {
    pub fn new(steps: Vec<ChainStep>) -> Self {
        RankChain { steps }
    }

    pub fn steps(&self) -> &[ChainStep] {
        &self.steps
    }

    pub fn push_step(&mut self, step: ChainStep) {
        self.steps.push(step);
    }

    pub fn apply(&self, rep: &Representation) -> Result<Representation> {
        let mut cur = rep.clone();
        for step in &self.steps {
            cur = match step {
                ChainStep::Pull(f) => cur.pullback(f)?,
                ChainStep::Push(f) => cur.pushforward(f)?,
            };
        }
        Ok(cur)
    }

    pub fn eval(&self, rep: &Representation) -> Result<usize> {
        global_rank(&self.apply(rep)?)
    }
}

fn mat_pow(m: &Matrix, k: usize) -> Matrix {
    let mut acc = Matrix::identity(m.field(), m.rows());
    for _ in 0..k {
        acc = acc.mul(m).expect("square");
    }
    acc
}

/// Two maps into a common space: the dimension of the intersection of their
/// images. Independent of the sweep machinery.
pub fn oracle_two_subspace(a: &Matrix, b: &Matrix) -> Result<usize> {
    Ok(a.image().intersect(&b.image())?.dim())
}

/// `n` maps into a common space: the dimension of the intersection of all
/// the images.
pub fn oracle_n_subspace(mats: &[Matrix]) -> Result<usize> {
    let first = mats.first().ok_or_else(|| Error::Invalid("need at least one map".into()))?;
    let mut acc = first.image();
    for m in &mats[1..] {
        acc = acc.intersect(&m.image())?;
    }
    Ok(acc.dim())
}

/// Two endomorphisms `a, b` of one space: rank computed through the fitting
/// decomposition. `L` is the greatest subspace of `im(a^n) ∩ im(b^n)` stable
/// under both maps (on which both then act invertibly); `S` is the least
/// stable subspace containing `ker(a^n) + ker(b^n)`. The answer is
/// `dim L - dim(L ∩ S)`.
pub fn oracle_double_loop(a: &Matrix, b: &Matrix) -> Result<usize> {
    if a.rows() != a.cols() || b.rows() != b.cols() || a.rows() != b.rows() {
        return Err(Error::DimMismatch("need two square matrices of one size".into()));
    }
    let n = a.rows();
    let an = mat_pow(a, n);
    let bn = mat_pow(b, n);
    let mut l = an.image().intersect(&bn.image())?;
    loop {
        let next = l.intersect(&a.preimage(&l)?)?.intersect(&b.preimage(&l)?)?;
        if next == l {
            break;
        }
        l = next;
    }
    let mut s = an.kernel().sum(&bn.kernel())?;
    loop {
        let next = s.sum(&a.map_subspace(&s)?)?.sum(&b.map_subspace(&s)?)?;
        if next == s {
            break;
        }
        s = next;
    }
    Ok(l.dim() - l.intersect(&s)?.dim())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldSpec;
    use crate::quiver::Quiver;
    use std::sync::Arc;

    const Q: FieldSpec = FieldSpec::Rationals;

    fn two_subspace_quiver() -> Arc<Quiver> {
        Quiver::build("A3", &["1", "2", "3"], &[("a", "1", "2"), ("b", "3", "2")])
    }

    fn two_subspace_rep(a: &[&[i64]], b: &[&[i64]]) -> Representation {
        Representation::new(
            two_subspace_quiver(),
            Q,
            vec![1, 2, 1],
            vec![Matrix::from_i64(Q, a), Matrix::from_i64(Q, b)],
        )
        .unwrap()
    }

    #[test]
    fn two_lines_in_the_plane() {
        // distinct axes, equal lines, one line degenerate to zero
        let x = two_subspace_rep(&[&[1], &[0]], &[&[0], &[1]]);
        let y = two_subspace_rep(&[&[1], &[0]], &[&[1], &[0]]);
        let z = two_subspace_rep(&[&[1], &[0]], &[&[0], &[0]]);
        assert_eq!(global_rank(&x).unwrap(), 0);
        assert_eq!(global_rank(&y).unwrap(), 1);
        assert_eq!(global_rank(&z).unwrap(), 0);
        // and the oracle agrees
        for (rep, want) in [(&x, 0), (&y, 1), (&z, 0)] {
            assert_eq!(oracle_two_subspace(rep.map(0), rep.map(1)).unwrap(), want);
        }
    }

    #[test]
    fn sigma_of_semisimple_loop() {
        let loopq = Quiver::build("L", &["v"], &[("l", "v", "v")]);
        let m = Matrix::from_i64(Q, &[&[2, 0], &[0, 0]]);
        let phi = Representation::new(loopq.clone(), Q, vec![2], vec![m]).unwrap();
        let s = sigma(&phi).unwrap();
        assert_eq!(s[0].dim(), 1);
        assert!(s[0].contains_vector(&[Q.one(), Q.zero()]));
        let u = iota_kernel(&phi).unwrap();
        assert_eq!(u[0].dim(), 1);
        assert!(u[0].contains_vector(&[Q.zero(), Q.one()]));
        assert_eq!(global_rank(&phi).unwrap(), 1);
        let zero = Representation::zero_maps(loopq, Q, vec![2]);
        assert_eq!(global_rank(&zero).unwrap(), 0);
    }

    #[test]
    fn single_arrow_rank_is_matrix_rank() {
        let a2 = Quiver::build("A2", &["1", "2"], &[("a", "1", "2")]);
        let m = Matrix::from_i64(Q, &[&[1, 2, 3], &[2, 4, 6]]);
        let phi = Representation::new(a2, Q, vec![3, 2], vec![m.clone()]).unwrap();
        assert_eq!(global_rank(&phi).unwrap(), m.rank());
        let rr = rank_rep(&phi).unwrap();
        assert_eq!(rr.dims(), &[1, 1]);
        assert!(rr.map(0).is_invertible());
    }

    #[test]
    fn double_loop_oracle_handpicked() {
        let j0 = Matrix::from_i64(Q, &[&[0, 1], &[0, 0]]);
        let id = Matrix::identity(Q, 2);
        let j1 = Matrix::from_i64(Q, &[&[1, 1], &[0, 1]]);
        assert_eq!(oracle_double_loop(&j0, &j0).unwrap(), 0);
        assert_eq!(oracle_double_loop(&id, &id).unwrap(), 2);
        assert_eq!(oracle_double_loop(&j1, &id).unwrap(), 2);
        let d10 = Matrix::from_i64(Q, &[&[1, 0], &[0, 0]]);
        let d01 = Matrix::from_i64(Q, &[&[0, 0], &[0, 1]]);
        assert_eq!(oracle_double_loop(&d10, &d01).unwrap(), 0);
        // and the sweeps agree
        let ll = Quiver::build("LL", &["v"], &[("a", "v", "v"), ("b", "v", "v")]);
        for (a, b, want) in [(&j0, &j0, 0), (&id, &id, 2), (&j1, &id, 2), (&d10, &d01, 0)] {
            let phi = Representation::new(ll.clone(), Q, vec![2], vec![a.clone(), b.clone()]).unwrap();
            assert_eq!(global_rank(&phi).unwrap(), want);
        }
    }

    #[test]
    fn disconnected_quiver_is_refused_but_components_work() {
        let two = Quiver::build("2pts", &["x", "y"], &[]);
        let phi = Representation::zero_maps(two, Q, vec![1, 2]);
        assert!(matches!(global_rank(&phi), Err(Error::Disconnected)));
        // a vertex with no arrows carries full rank
        assert_eq!(component_ranks(&phi).unwrap(), vec![1, 2]);
    }

    #[test]
    fn chain_of_identity_steps() {
        let a2 = Quiver::build("A2", &["1", "2"], &[("a", "1", "2")]);
        let id = QuiverMorphism::identity(a2.clone());
        let chain = RankChain::new(vec![ChainStep::Pull(id.clone()), ChainStep::Push(id)]);
        let m = Matrix::from_i64(Q, &[&[3]]);
        let phi = Representation::new(a2, Q, vec![1, 1], vec![m]).unwrap();
        assert_eq!(chain.eval(&phi).unwrap(), 1);
        assert_eq!(RankChain::default().eval(&phi).unwrap(), 1);
    }

    #[test]
    fn vertex_with_no_arrows() {
        let pt = Quiver::build("pt", &["x"], &[]);
        let phi = Representation::zero_maps(pt, Q, vec![5]);
        // no arrows: everything is epimorphic, nothing is absorbed
        assert_eq!(global_rank(&phi).unwrap(), 5);
    }
}
