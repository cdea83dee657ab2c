//! Exact feasibility of linear inequality systems by Fourier–Motzkin
//! elimination.
//!
//! Constraints have the form `a · x + c > 0` or `a · x + c ≥ 0`. Variables
//! are eliminated one at a time; a feasible system is then solved by
//! back-substitution, picking each coordinate strictly inside its interval
//! of allowed values. Systems here have a handful of variables, so the
//! quadratic growth per elimination step is harmless.

use std::collections::BTreeSet;

use num_traits::{One, Signed, Zero};

use crate::linalg::{is_positive, Matrix, Scalar, Solution, Vector};
use crate::simplex::GeometricSimplex;

/// `coeffs · x + constant > 0` (strict) or `≥ 0`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Constraint {
    pub coeffs: Vec<Scalar>,
    pub constant: Scalar,
    pub strict: bool,
}

impl Constraint {
    pub fn strict(coeffs: Vec<Scalar>, constant: Scalar) -> Self {
        Constraint {
            coeffs,
            constant,
            strict: true,
        }
    }

    pub fn non_strict(coeffs: Vec<Scalar>, constant: Scalar) -> Self {
        Constraint {
            coeffs,
            constant,
            strict: false,
        }
    }

    fn value(&self, x: &[Scalar]) -> Scalar {
        self.coeffs
            .iter()
            .zip(x)
            .fold(self.constant.clone(), |acc, (a, v)| acc + a * v)
    }

    pub fn holds(&self, x: &[Scalar]) -> bool {
        let v = self.value(x);
        if self.strict {
            v.is_positive()
        } else {
            !v.is_negative()
        }
    }

    /// Scales so the largest coefficient magnitude is one; duplicates then
    /// compare equal.
    fn normalized(mut self) -> Self {
        let scale = self
            .coeffs
            .iter()
            .map(|a| a.abs())
            .max()
            .filter(|m| !m.is_zero());
        if let Some(m) = scale {
            for a in &mut self.coeffs {
                *a /= &m;
            }
            self.constant /= &m;
        }
        self
    }

    fn is_constant(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }
}

/// Finds a point satisfying every constraint, or `None` if there is none.
///
/// All constraints must have `num_vars` coefficients.
pub fn find_point(num_vars: usize, constraints: &[Constraint]) -> Option<Vec<Scalar>> {
    // stages[k] holds the constraints mentioning only variables 0..k.
    let mut stages: Vec<Vec<Constraint>> = vec![Vec::new(); num_vars + 1];
    stages[num_vars] = tidy(constraints.iter().cloned())?;

    for k in (0..num_vars).rev() {
        let current = &stages[k + 1];
        let mut next = Vec::new();
        let (mut lower, mut upper) = (Vec::new(), Vec::new());
        for c in current {
            let a = &c.coeffs[k];
            if a.is_zero() {
                next.push(c.clone());
            } else if a.is_positive() {
                lower.push(c);
            } else {
                upper.push(c);
            }
        }
        for lo in &lower {
            for hi in &upper {
                let a_lo = lo.coeffs[k].clone();
                let a_hi = -hi.coeffs[k].clone();
                let coeffs = lo
                    .coeffs
                    .iter()
                    .zip(&hi.coeffs)
                    .map(|(l, h)| l * &a_hi + h * &a_lo)
                    .collect();
                next.push(Constraint {
                    coeffs,
                    constant: &lo.constant * &a_hi + &hi.constant * &a_lo,
                    strict: lo.strict || hi.strict,
                });
            }
        }
        stages[k] = tidy(next.into_iter())?;
    }

    let mut x: Vec<Scalar> = vec![Scalar::zero(); num_vars];
    for k in 0..num_vars {
        let mut lo: Option<(Scalar, bool)> = None;
        let mut hi: Option<(Scalar, bool)> = None;
        for c in &stages[k + 1] {
            let a = &c.coeffs[k];
            if a.is_zero() {
                continue;
            }
            // a x_k + rest > 0 with the other free variables still zero.
            let rest = c.value(&x);
            let bound = -rest / a;
            if a.is_positive() {
                if lo
                    .as_ref()
                    .is_none_or(|(b, s)| bound > *b || (bound == *b && c.strict && !s))
                {
                    lo = Some((bound, c.strict));
                }
            } else if hi
                .as_ref()
                .is_none_or(|(b, s)| bound < *b || (bound == *b && c.strict && !s))
            {
                hi = Some((bound, c.strict));
            }
        }
        x[k] = match (lo, hi) {
            (None, None) => Scalar::zero(),
            (Some((l, _)), None) => l + Scalar::one(),
            (None, Some((h, _))) => h - Scalar::one(),
            (Some((l, _)), Some((h, _))) if l == h => l,
            (Some((l, _)), Some((h, _))) => (l + h) / Scalar::from_integer(2.into()),
        };
    }
    debug_assert!(constraints.iter().all(|c| c.holds(&x)));
    Some(x)
}

/// Normalizes, deduplicates and drops constant constraints; `None` when a
/// constant constraint is violated.
fn tidy(constraints: impl Iterator<Item = Constraint>) -> Option<Vec<Constraint>> {
    let mut kept = BTreeSet::new();
    for c in constraints {
        if c.is_constant() {
            if !c.holds(&vec![Scalar::zero(); c.coeffs.len()]) {
                return None;
            }
            continue;
        }
        kept.insert(c.normalized());
    }
    Some(kept.into_iter().collect())
}

fn coordinate_range(s: &GeometricSimplex, r: usize) -> (&Scalar, &Scalar) {
    let coords = s.vertices().iter().map(|v| &v[r]);
    let lo = coords.clone().min().expect("simplices are nonempty");
    (lo, coords.max().expect("simplices are nonempty"))
}

impl GeometricSimplex {
    /// A point lying in the interiors of both simplices, if any.
    ///
    /// Solves `Σ s_i a_i = Σ t_j b_j`, `Σ s_i = 1`, `Σ t_j = 1` exactly and
    /// then decides `s > 0, t > 0` over the solution family by elimination.
    pub fn interior_intersection(&self, other: &GeometricSimplex) -> Option<Vector> {
        assert_eq!(
            self.ambient_dim(),
            other.ambient_dim(),
            "simplices in different spaces"
        );
        let n = self.ambient_dim();
        // Closed bounding boxes that miss each other rule out any common point.
        let separated = (0..n).any(|r| {
            let (lo_a, hi_a) = coordinate_range(self, r);
            let (lo_b, hi_b) = coordinate_range(other, r);
            hi_a < lo_b || hi_b < lo_a
        });
        if separated {
            return None;
        }
        let (p, q) = (self.vertices().len(), other.vertices().len());
        let mut rows = Vec::with_capacity(n + 2);
        for r in 0..n {
            let mut row: Vec<Scalar> = self.vertices().iter().map(|a| a[r].clone()).collect();
            row.extend(other.vertices().iter().map(|b| -b[r].clone()));
            rows.push(row);
        }
        let ones = |first: bool| -> Vec<Scalar> {
            (0..p + q)
                .map(|i| {
                    if (i < p) == first {
                        Scalar::one()
                    } else {
                        Scalar::zero()
                    }
                })
                .collect()
        };
        rows.push(ones(true));
        rows.push(ones(false));
        let rhs: Vector = (0..n + 2)
            .map(|i| if i < n { Scalar::zero() } else { Scalar::one() })
            .collect();
        let system = Matrix::from_rows(rows).expect("rows have equal length");

        let weights = match system.solve(&rhs).expect("shapes agree") {
            Solution::Inconsistent => return None,
            Solution::Unique(w) => w.iter().all(is_positive).then_some(w)?,
            Solution::Infinite {
                particular,
                nullspace,
            } => {
                let constraints: Vec<Constraint> = (0..p + q)
                    .map(|i| {
                        Constraint::strict(
                            nullspace.iter().map(|v| v[i].clone()).collect(),
                            particular[i].clone(),
                        )
                    })
                    .collect();
                let lambda = find_point(nullspace.len(), &constraints)?;
                let shift = Vector::combination(p + q, lambda.iter().zip(&nullspace));
                &particular + &shift
            }
        };
        let s = &weights.entries()[..p];
        Some(Vector::combination(n, s.iter().zip(self.vertices())))
    }
}
