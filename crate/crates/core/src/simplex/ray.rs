use num_traits::{Signed, Zero};

use super::{GeometricSimplex, PointClassification};
use crate::error::{Error, Result};
use crate::linalg::{is_positive, Scalar, Solution, Vector};

/// The half-line `{w + t p : t ≥ 0}` with `p ≠ 0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Ray {
    origin: Vector,
    direction: Vector,
}

impl Ray {
    pub fn new(origin: Vector, direction: Vector) -> Result<Self> {
        direction.check_dim(origin.dim())?;
        if direction.is_zero() {
            return Err(Error::ZeroDirection);
        }
        Ok(Ray { origin, direction })
    }

    pub fn origin(&self) -> &Vector {
        &self.origin
    }

    pub fn direction(&self) -> &Vector {
        &self.direction
    }

    /// `w + t p`.
    pub fn at(&self, t: &Scalar) -> Vector {
        &self.origin + &self.direction.scale(t)
    }
}

/// Where a ray from an interior point leaves a simplex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RayHit {
    Hit {
        t_star: Scalar,
        point: Vector,
        /// Vertices whose coordinate is still positive at the hit point.
        face: Vec<usize>,
    },
    /// The direction is not parallel to the simplex's plane, so the ray
    /// leaves the simplex immediately.
    LeavesPlane,
}

impl GeometricSimplex {
    /// Barycentric rate of change along `direction`: `d` with `Σ d_i = 0`
    /// and `Σ d_i a_i = direction`, or `None` if the direction leaves the plane.
    pub fn barycentric_direction(&self, direction: &Vector) -> Result<Option<Vec<Scalar>>> {
        direction.check_dim(self.ambient_dim())?;
        let s = match self.plane().direction_matrix().solve(direction)? {
            Solution::Unique(s) => s,
            Solution::Inconsistent => return Ok(None),
            Solution::Infinite { .. } => unreachable!("plane directions are independent"),
        };
        let d0 = -s.sum();
        Ok(Some(std::iter::once(d0).chain(s.into_entries()).collect()))
    }

    /// Casts `ray` from an interior point and returns the unique boundary
    /// point it crosses.
    pub fn ray_boundary_hit(&self, ray: &Ray) -> Result<RayHit> {
        ray.origin().check_dim(self.ambient_dim())?;
        let PointClassification::Interior(start) = self.classify(ray.origin())? else {
            return Err(Error::OriginNotInterior);
        };
        let Some(rate) = self.barycentric_direction(ray.direction())? else {
            return Ok(RayHit::LeavesPlane);
        };
        // Coordinate i reaches zero at t = -t_i / d_i for every d_i < 0.
        let t_star = start
            .coeffs()
            .iter()
            .zip(&rate)
            .filter(|(_, d)| d.is_negative())
            .map(|(t, d)| -(t / d))
            .min()
            .expect("a nonzero in-plane direction decreases some coordinate");
        let face = start
            .coeffs()
            .iter()
            .zip(&rate)
            .enumerate()
            .filter(|(_, (t, d))| is_positive(&(*t + &t_star * *d)))
            .map(|(i, _)| i)
            .collect();
        debug_assert!(!t_star.is_zero());
        Ok(RayHit::Hit {
            point: ray.at(&t_star),
            t_star,
            face,
        })
    }
}
