//! Rank-locus predicates: finite lists of linear constraints on the values
//! of rank chains, evaluated pointwise on representations.

use crate::error::{Error, Result};
use crate::rank::RankChain;
use crate::rep::Representation;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Relation {
    Eq,
    Le,
    Lt,
    Ge,
    Gt,
    Ne,
}

impl Relation {
    pub fn holds(self, lhs: i64, rhs: i64) -> bool {
        match self {
            Relation::Eq => lhs == rhs,
            Relation::Le => lhs <= rhs,
            Relation::Lt => lhs < rhs,
            Relation::Ge => lhs >= rhs,
            Relation::Gt => lhs > rhs,
            Relation::Ne => lhs != rhs,
        }
    }
}

impl std::fmt::Display for Relation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Relation::Eq => "=",
            Relation::Le => "<=",
            Relation::Lt => "<",
            Relation::Ge => ">=",
            Relation::Gt => ">",
            Relation::Ne => "!=",
        })
    }
}

/// One linear constraint `sum_i coeffs[i] * value_i  <rel>  constant`.
#[derive(Clone, Debug)]
pub struct Constraint {
    pub coeffs: Vec<i64>,
    pub rel: Relation,
    pub constant: i64,
}

/// A named list of rank chains together with linear constraints on their
/// values; a representation satisfies the predicate when every constraint
/// holds.
#[derive(Clone, Debug)]
pub struct RankLocusPredicate {
    chains: Vec<RankChain>,
    constraints: Vec<Constraint>,
}

impl RankLocusPredicate {
    pub fn new(chains: Vec<RankChain>, constraints: Vec<Constraint>) -> Result<Self> {
        if constraints.is_empty() {
            return Err(Error::Invalid("a predicate needs at least one constraint".into()));
        }
        for c in &constraints {
            if c.coeffs.len() != chains.len() {
                return Err(Error::Invalid(format!(
                    "constraint has {} coefficients for {} chains",
                    c.coeffs.len(),
                    chains.len()
                )));
            }
        }
        Ok(RankLocusPredicate { chains, constraints })
    }

    pub fn chains(&self) -> &[RankChain] {
        &self.chains
    }

    /// The chain values the constraints are tested against.
    pub fn values(&self, phi: &Representation) -> Result<Vec<usize>> {
        self.chains.iter().map(|c| c.eval(phi)).collect()
    }

    pub fn eval(&self, phi: &Representation) -> Result<bool> {
        let values = self.values(phi)?;
        Ok(self.constraints.iter().all(|c| {
            let lhs: i64 = c
                .coeffs
                .iter()
                .zip(&values)
                .map(|(&co, &v)| co * v as i64)
                .sum();
            c.rel.holds(lhs, c.constant)
        }))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldSpec;
    use crate::matrix::Matrix;
    use crate::quiver::Quiver;
    use crate::rep::Representation;

    const Q: FieldSpec = FieldSpec::Rationals;

    fn two_lines(a: &[&[i64]], b: &[&[i64]]) -> Representation {
        let q = Quiver::build("A3", &["1", "2", "3"], &[("a", "1", "2"), ("b", "3", "2")]);
        Representation::new(q, Q, vec![1, 2, 1], vec![Matrix::from_i64(Q, a), Matrix::from_i64(Q, b)]).unwrap()
    }

    #[test]
    fn tautology_is_always_true() {
        let p = RankLocusPredicate::new(
            vec![],
            vec![Constraint { coeffs: vec![], rel: Relation::Eq, constant: 0 }],
        )
        .unwrap();
        let x = two_lines(&[&[1], &[0]], &[&[0], &[1]]);
        assert!(p.eval(&x).unwrap());
    }

    #[test]
    fn rank_one_locus_separates_points() {
        let p = RankLocusPredicate::new(
            vec![RankChain::default()],
            vec![Constraint { coeffs: vec![1], rel: Relation::Eq, constant: 1 }],
        )
        .unwrap();
        let x = two_lines(&[&[1], &[0]], &[&[0], &[1]]);
        let y = two_lines(&[&[1], &[0]], &[&[1], &[0]]);
        let z = two_lines(&[&[1], &[0]], &[&[0], &[0]]);
        assert!(!p.eval(&x).unwrap());
        assert!(p.eval(&y).unwrap());
        assert!(!p.eval(&z).unwrap());
    }

    #[test]
    fn shape_validation() {
        let bad = RankLocusPredicate::new(
            vec![RankChain::default()],
            vec![Constraint { coeffs: vec![1, 2], rel: Relation::Le, constant: 0 }],
        );
        assert!(bad.is_err());
        assert!(RankLocusPredicate::new(vec![], vec![]).is_err());
    }
}
