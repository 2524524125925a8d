//! Interval decomposition for representations of path quivers (type A, any
//! orientation): interval rank functions `r_{i,j}` via pullback to interval
//! subquivers, and the multiplicity table recovered from them by
//! inclusion-exclusion.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::FieldSpec;
use crate::matrix::Matrix;
use crate::quiver::{Quiver, QuiverMorphism};
use crate::rank::{ChainStep, RankChain};
use crate::rep::Representation;

/// Requires the vertices, in declaration order, to form a path: exactly one
/// arrow between each pair of consecutive vertices (either direction), no
/// other arrows.
pub fn check_path(q: &Quiver) -> Result<()> {
    let n = q.num_vertices();
    if n == 0 {
        return Err(Error::Invalid("a path quiver needs at least one vertex".into()));
    }
    if q.num_arrows() != n - 1 {
        return Err(Error::Invalid(format!(
            "a path on {n} vertices has {} arrows, found {}",
            n - 1,
            q.num_arrows()
        )));
    }
    let mut seen = vec![false; n.saturating_sub(1)];
    for a in q.arrows() {
        let lo = a.tail.min(a.head);
        let hi = a.tail.max(a.head);
        if hi != lo + 1 {
            return Err(Error::Invalid(format!(
                "arrow `{}` joins non-consecutive vertices; declare vertices in path order",
                a.name
            )));
        }
        if seen[lo] {
            return Err(Error::Invalid(format!(
                "parallel arrow `{}` is not allowed on a path",
                a.name
            )));
        }
        seen[lo] = true;
    }
    Ok(())
}

/// Inclusion of the subquiver spanned by vertices `i..=j` (1-based along
/// the path) into the path quiver.
pub fn interval_inclusion(q: &Arc<Quiver>, i: usize, j: usize) -> Result<QuiverMorphism> {
    check_path(q)?;
    let n = q.num_vertices();
    if !(1 <= i && i <= j && j <= n) {
        return Err(Error::Invalid(format!("interval [{i},{j}] is out of range 1..={n}")));
    }
    let vertices: Vec<String> = (i - 1..j).map(|x| q.vertex_name(x).to_string()).collect();
    let mut arrows = Vec::new();
    let mut vertex_map = Vec::new();
    let mut arrow_map = Vec::new();
    for x in i - 1..j {
        vertex_map.push(x);
    }
    for (ai, a) in q.arrows().iter().enumerate() {
        if a.tail >= i - 1 && a.tail < j && a.head >= i - 1 && a.head < j {
            arrows.push((
                a.name.clone(),
                q.vertex_name(a.tail).to_string(),
                q.vertex_name(a.head).to_string(),
            ));
            arrow_map.push(ai);
        }
    }
    let sub = Quiver::new(&format!("{}[{i},{j}]", q.name()), vertices, arrows)?;
    QuiverMorphism::new(sub, q.clone(), vertex_map, arrow_map)
}

/// The interval rank `r_{i,j}`: global rank after pulling back to the
/// subquiver spanned by vertices `i..=j`. Out-of-range indices give 0 by
/// convention, which is what the inclusion-exclusion below relies on.
pub fn typea_rank(phi: &Representation, i: i64, j: i64) -> Result<usize> {
    check_path(phi.quiver())?;
    let n = phi.quiver().num_vertices() as i64;
    if i < 1 || j > n || i > j {
        return Ok(0);
    }
    let incl = interval_inclusion(phi.quiver(), i as usize, j as usize)?;
    RankChain::new(vec![ChainStep::Pull(incl)]).eval(phi)
}

/// Multiplicities of the interval representations in a path-quiver
/// representation, recovered from interval ranks:
/// `m_{kl} = r_{k,l} + r_{k-1,l+1} - r_{k-1,l} - r_{k,l+1}`.
/// Only nonzero entries are returned; a negative value can never arise from
/// an actual representation and is reported as an internal error.
pub fn typea_multiplicities(phi: &Representation) -> Result<BTreeMap<(usize, usize), usize>> {
    check_path(phi.quiver())?;
    let n = phi.quiver().num_vertices();
    // r[i][j] with indices shifted by one so 0 and n+1 are in range
    let mut r = vec![vec![0i64; n + 2]; n + 2];
    for i in 1..=n {
        for j in i..=n {
            r[i][j] = typea_rank(phi, i as i64, j as i64)? as i64;
        }
    }
    let mut table = BTreeMap::new();
    for k in 1..=n {
        for l in k..=n {
            let m = r[k][l] + r[k - 1][l + 1] - r[k - 1][l] - r[k][l + 1];
            if m < 0 {
                return Err(Error::Internal(format!(
                    "negative multiplicity {m} at interval [{k},{l}]"
                )));
            }
            if m > 0 {
                table.insert((k, l), m as usize);
            }
        }
    }
    Ok(table)
}

/// The interval representation `V_{kl}`: one-dimensional on vertices
/// `k..=l`, identity over every arrow inside the interval, zero elsewhere.
pub fn interval_rep(q: &Arc<Quiver>, field: FieldSpec, k: usize, l: usize) -> Result<Representation> {
    check_path(q)?;
    let n = q.num_vertices();
    if !(1 <= k && k <= l && l <= n) {
        return Err(Error::Invalid(format!("interval [{k},{l}] is out of range 1..={n}")));
    }
    let dims: Vec<usize> = (0..n).map(|x| usize::from(x >= k - 1 && x < l)).collect();
    let maps = q
        .arrows()
        .iter()
        .map(|a| {
            if dims[a.tail] == 1 && dims[a.head] == 1 {
                Matrix::identity(field, 1)
            } else {
                Matrix::zero(field, dims[a.head], dims[a.tail])
            }
        })
        .collect();
    Representation::new(q.clone(), field, dims, maps)
}

/// A path quiver `1 - 2 - ... - n` with the given arrow orientations:
/// `tails_right[i]` says the arrow between `i+1` and `i+2` points right.
pub fn path_quiver(n: usize, rightward: &[bool]) -> Result<Arc<Quiver>> {
    if n == 0 || rightward.len() != n - 1 {
        return Err(Error::Invalid("need one orientation per consecutive pair".into()));
    }
    let vertices: Vec<String> = (1..=n).map(|i| i.to_string()).collect();
    let arrows: Vec<(String, String, String)> = rightward
        .iter()
        .enumerate()
        .map(|(i, &right)| {
            let (t, h) = if right { (i + 1, i + 2) } else { (i + 2, i + 1) };
            (format!("e{}", i + 1), t.to_string(), h.to_string())
        })
        .collect();
    Quiver::new(&format!("A{n}"), vertices, arrows)
}

#[cfg(test)]
mod tests {
    use super::*;

    const F: FieldSpec = FieldSpec::Rationals;

    #[test]
    fn path_validation() {
        let good = path_quiver(4, &[true, false, true]).unwrap();
        assert!(check_path(&good).is_ok());
        let star = Quiver::build("S", &["1", "2", "3"], &[("a", "1", "3"), ("b", "2", "3")]);
        assert!(check_path(&star).is_err());
        let cycle = Quiver::build(
            "C",
            &["1", "2"],
            &[("a", "1", "2"), ("b", "2", "1")],
        );
        assert!(check_path(&cycle).is_err());
    }

    #[test]
    fn interval_reps_have_unit_rank_exactly_inside() {
        let q = path_quiver(4, &[true, true, false]).unwrap();
        let v23 = interval_rep(&q, F, 2, 3).unwrap();
        for i in 1..=4i64 {
            for j in i..=4 {
                let want = usize::from(i >= 2 && j <= 3);
                assert_eq!(typea_rank(&v23, i, j).unwrap(), want, "r_{{{i},{j}}}");
            }
        }
        assert_eq!(typea_rank(&v23, 0, 2).unwrap(), 0);
        assert_eq!(typea_rank(&v23, 2, 5).unwrap(), 0);
    }

    #[test]
    fn multiplicities_of_interval_and_zero() {
        let q = path_quiver(3, &[true, true]).unwrap();
        let v12 = interval_rep(&q, F, 1, 2).unwrap();
        let table = typea_multiplicities(&v12).unwrap();
        assert_eq!(table, BTreeMap::from([((1, 2), 1)]));
        let zero = Representation::zero_maps(q, F, vec![0, 0, 0]);
        assert!(typea_multiplicities(&zero).unwrap().is_empty());
    }

    #[test]
    fn multiplicities_of_a_small_sum() {
        let q = path_quiver(3, &[true, true]).unwrap();
        let v12 = interval_rep(&q, F, 1, 2).unwrap();
        let v23 = interval_rep(&q, F, 2, 3).unwrap();
        let sum = v12.direct_sum(&v23).unwrap().direct_sum(&v23).unwrap();
        let table = typea_multiplicities(&sum).unwrap();
        assert_eq!(table, BTreeMap::from([((1, 2), 1), ((2, 3), 2)]));
        // dimension vectors reconcile
        let mut dims = vec![0usize; 3];
        for (&(k, l), &m) in &table {
            for x in k - 1..l {
                dims[x] += m;
            }
        }
        assert_eq!(dims.as_slice(), sum.dims());
    }

    #[test]
    fn identity_rep_has_full_diagonal_rank() {
        let q = path_quiver(3, &[true, false]).unwrap();
        let maps = vec![Matrix::identity(F, 2), Matrix::identity(F, 2)];
        let phi = Representation::new(q, F, vec![2, 2, 2], maps).unwrap();
        for i in 1..=3 {
            assert_eq!(typea_rank(&phi, i, i).unwrap(), 2);
        }
        let table = typea_multiplicities(&phi).unwrap();
        assert_eq!(table, BTreeMap::from([((1, 3), 2)]));
    }
}
