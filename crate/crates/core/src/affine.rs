//! Geometric independence, affine planes and affine maps.
//!
//! A finite set `{a_0, …, a_n}` is geometrically independent exactly when the
//! relative vectors `a_i − a_0` are linearly independent, which is decided by
//! the rank of the matrix having those vectors as columns.

use num_traits::One;

use crate::error::{Error, Result};
use crate::linalg::{Matrix, Scalar, Solution, Vector};
use crate::simplex::BarycentricCoords;

/// A nonempty ordered list of points sharing one ambient dimension.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PointSet {
    points: Vec<Vector>,
}

/// Rank certificate produced by [`PointSet::independence`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Independence {
    pub independent: bool,
    pub rank: usize,
    /// Number of relative vectors, i.e. the rank needed for independence.
    pub required: usize,
    /// Relative vectors as columns.
    pub matrix: Matrix,
}

impl PointSet {
    pub fn new(points: Vec<Vector>) -> Result<Self> {
        let first = points.first().ok_or(Error::EmptyPointSet)?;
        let dim = first.dim();
        for p in &points {
            p.check_dim(dim)?;
        }
        Ok(PointSet { points })
    }

    pub fn from_ints(points: &[&[i64]]) -> Result<Self> {
        Self::new(points.iter().map(|p| Vector::from_ints(p)).collect())
    }

    pub fn points(&self) -> &[Vector] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn ambient_dim(&self) -> usize {
        self.points[0].dim()
    }

    pub fn base(&self) -> &Vector {
        &self.points[0]
    }

    /// `a_i − a_0` for `i = 1..n`; empty for a singleton.
    pub fn relative_vectors(&self) -> Vec<Vector> {
        let base = self.base();
        self.points[1..].iter().map(|p| p - base).collect()
    }

    /// The matrix whose columns are [`relative_vectors`](Self::relative_vectors).
    pub fn relative_matrix(&self) -> Matrix {
        Matrix::from_columns(self.ambient_dim(), &self.relative_vectors())
            .expect("points share the ambient dimension")
    }

    pub fn independence(&self) -> Independence {
        let matrix = self.relative_matrix();
        let rank = matrix.rank();
        let required = self.len() - 1;
        Independence {
            independent: rank == required,
            rank,
            required,
            matrix,
        }
    }

    pub fn is_geometrically_independent(&self) -> bool {
        self.independence().independent
    }

    /// The affine plane through these points. Fails on dependent input.
    pub fn plane(&self) -> Result<AffinePlane> {
        let witness = self.independence();
        if !witness.independent {
            return Err(Error::DependentVertices {
                rank: witness.rank,
                expected: witness.required,
            });
        }
        Ok(AffinePlane {
            base: self.base().clone(),
            directions: self.relative_vectors(),
        })
    }

    /// Tests whether adding `w` keeps the set geometrically independent.
    pub fn extend(&self, w: &Vector) -> Result<Extension> {
        w.check_dim(self.ambient_dim())?;
        let before = self.independence();
        if !before.independent {
            return Err(Error::DependentVertices {
                rank: before.rank,
                expected: before.required,
            });
        }
        let after = before.matrix.augment(&(w - self.base()))?.rank();
        Ok(if after == before.rank + 1 {
            Extension::Extended {
                rank_before: before.rank,
                rank_after: after,
            }
        } else {
            Extension::NotExtendable { rank: before.rank }
        })
    }

    /// Inserts `w` at the end. Used after a successful [`extend`](Self::extend).
    pub fn with_point(&self, w: Vector) -> Result<PointSet> {
        w.check_dim(self.ambient_dim())?;
        let mut points = self.points.clone();
        points.push(w);
        Ok(PointSet { points })
    }
}

/// Result of [`PointSet::extend`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Extension {
    Extended {
        rank_before: usize,
        rank_after: usize,
    },
    NotExtendable {
        rank: usize,
    },
}

/// The plane `{a_0 + Σ s_i v_i}` spanned by a geometrically independent set.
///
/// A 0-plane (single point) has no directions.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AffinePlane {
    base: Vector,
    directions: Vec<Vector>,
}

/// Result of [`AffinePlane::membership`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Membership {
    /// Affine coefficients `(t_0, …, t_n)` with `w = Σ t_i a_i`.
    OnPlane(BarycentricCoords),
    OffPlane,
}

impl AffinePlane {
    pub fn base(&self) -> &Vector {
        &self.base
    }

    pub fn directions(&self) -> &[Vector] {
        &self.directions
    }

    pub fn ambient_dim(&self) -> usize {
        self.base.dim()
    }

    pub fn dim(&self) -> usize {
        self.directions.len()
    }

    pub fn direction_matrix(&self) -> Matrix {
        Matrix::from_columns(self.ambient_dim(), &self.directions)
            .expect("directions share the ambient dimension")
    }

    /// The spanning points `a_0, a_0 + v_1, …`.
    pub fn spanning_points(&self) -> Vec<Vector> {
        std::iter::once(self.base.clone())
            .chain(self.directions.iter().map(|v| &self.base + v))
            .collect()
    }

    /// Coordinates `s` with `w − a_0 = Σ s_i v_i`, or `None` off the plane.
    pub fn direction_coords(&self, w: &Vector) -> Result<Option<Vector>> {
        w.check_dim(self.ambient_dim())?;
        match self.direction_matrix().solve(&(w - &self.base))? {
            Solution::Unique(s) => Ok(Some(s)),
            Solution::Inconsistent => Ok(None),
            Solution::Infinite { .. } => unreachable!("plane directions are independent"),
        }
    }

    /// Decides whether `w` lies on the plane and, if so, returns its affine
    /// coefficients with respect to the spanning points.
    pub fn membership(&self, w: &Vector) -> Result<Membership> {
        let Some(s) = self.direction_coords(w)? else {
            return Ok(Membership::OffPlane);
        };
        let t0 = Scalar::one() - s.sum();
        let coeffs: Vec<Scalar> = std::iter::once(t0).chain(s.into_entries()).collect();
        let coords = BarycentricCoords::new(coeffs).expect("affine coefficients sum to one");
        let rebuilt = coords.combine(&self.spanning_points());
        assert_eq!(
            &rebuilt, w,
            "affine coefficients fail to reconstruct the point"
        );
        Ok(Membership::OnPlane(coords))
    }

    pub fn contains(&self, w: &Vector) -> Result<bool> {
        Ok(matches!(self.membership(w)?, Membership::OnPlane(_)))
    }
}

/// `x ↦ A x + b` on `R^N`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AffineMap {
    matrix: Matrix,
    translation: Vector,
}

impl AffineMap {
    pub fn new(matrix: Matrix, translation: Vector) -> Result<Self> {
        if !matrix.is_square() {
            return Err(Error::NonSquareMatrix {
                rows: matrix.rows(),
                cols: matrix.cols(),
            });
        }
        translation.check_dim(matrix.rows())?;
        Ok(AffineMap {
            matrix,
            translation,
        })
    }

    pub fn identity(dim: usize) -> Self {
        AffineMap {
            matrix: Matrix::identity(dim),
            translation: Vector::zeros(dim),
        }
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn translation(&self) -> &Vector {
        &self.translation
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn is_invertible(&self) -> bool {
        self.matrix.is_invertible()
    }

    pub fn apply(&self, x: &Vector) -> Result<Vector> {
        Ok(&self.matrix.mul_vec(x)? + &self.translation)
    }

    pub fn apply_to_set(&self, a: &PointSet) -> Result<PointSet> {
        a.points()
            .iter()
            .map(|p| self.apply(p))
            .collect::<Result<Vec<_>>>()
            .and_then(PointSet::new)
    }
}
