//! Radial homeomorphism between a simplex and the closed unit ball.
//!
//! Points are measured from the barycenter `c` in the coordinates of the
//! simplex's direction basis `v_i = a_i − a_0`. A point `x ≠ c` is sent to the
//! ball point of radius `μ(x)` pointing along `x − c`, where `μ` is the gauge
//! of the simplex: `x = c + μ(x) (h − c)` with `h` the boundary point hit by
//! the ray from `c` through `x`. The gauge is rational, but the unit vector
//! along `x − c` generally is not, so a ball point is stored as the boundary
//! offset `h − c` together with the radius. The squared norm of the ball
//! point is then `μ²`, which is exact.

use num_traits::{One, Signed, Zero};

use super::{GeometricSimplex, PointClassification, Ray, RayHit};
use crate::error::{Error, Result};
use crate::linalg::{rational_sqrt, Scalar, Vector};

/// A point of the closed unit ball `B^n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BallPoint {
    /// Direction coordinates of `h − c`; all zeros at the center.
    offset: Vector,
    radius: Scalar,
}

impl BallPoint {
    pub fn radius(&self) -> &Scalar {
        &self.radius
    }

    /// Direction coordinates of the boundary point in this direction,
    /// relative to the barycenter.
    pub fn offset(&self) -> &Vector {
        &self.offset
    }

    pub fn dim(&self) -> usize {
        self.offset.dim()
    }

    /// Squared Euclidean norm, exactly.
    pub fn norm_sq(&self) -> Scalar {
        &self.radius * &self.radius
    }

    pub fn is_interior(&self) -> bool {
        self.radius < Scalar::one()
    }

    pub fn on_sphere(&self) -> bool {
        self.radius.is_one()
    }

    /// Exact ball coordinates, available when `|h − c|` is rational.
    pub fn exact_coords(&self) -> Option<Vector> {
        if self.radius.is_zero() {
            return Some(Vector::zeros(self.dim()));
        }
        let len = rational_sqrt(&self.offset.norm_sq())?;
        Some(self.offset.scale(&(&self.radius / len)))
    }

    /// Floating-point ball coordinates, for display.
    pub fn approx_coords(&self) -> Vec<f64> {
        use num_traits::ToPrimitive;
        let len = self.offset.norm_sq().to_f64().unwrap_or(0.0).sqrt();
        let r = self.radius.to_f64().unwrap_or(0.0);
        self.offset
            .iter()
            .map(|e| {
                if len == 0.0 {
                    0.0
                } else {
                    r * e.to_f64().unwrap_or(0.0) / len
                }
            })
            .collect()
    }
}

impl GeometricSimplex {
    /// Direction coordinates of `x − c`, or `None` off the plane.
    fn centered_coords(&self, x: &Vector) -> Result<Option<Vector>> {
        let Some(s) = self.plane().direction_coords(x)? else {
            return Ok(None);
        };
        let share = Scalar::new(1.into(), (self.dim() + 1).into());
        Ok(Some(s.iter().map(|e| e - &share).collect()))
    }

    fn ambient_direction(&self, y: &Vector) -> Vector {
        Vector::combination(self.ambient_dim(), y.iter().zip(self.plane().directions()))
    }

    fn uncentered(&self, y: &Vector) -> Vector {
        &self.barycenter() + &self.ambient_direction(y)
    }

    /// Boundary offset along the direction `y` (direction coordinates) and
    /// the ray parameter at which the boundary is reached.
    fn boundary_offset(&self, y: &Vector) -> Result<(Vector, Scalar)> {
        let ray = Ray::new(self.barycenter(), self.ambient_direction(y))?;
        match self.ray_boundary_hit(&ray)? {
            RayHit::Hit { t_star, .. } => Ok((y.scale(&t_star), t_star)),
            RayHit::LeavesPlane => unreachable!("direction built inside the plane"),
        }
    }

    /// The ball point with the given radius in direction `y`.
    ///
    /// `y` is given in direction coordinates and need not be normalized;
    /// it is ignored when `radius` is zero.
    pub fn ball_point(&self, y: &Vector, radius: Scalar) -> Result<BallPoint> {
        y.check_dim(self.dim())?;
        if radius.is_negative() || radius > Scalar::one() {
            return Err(Error::OutsideBall);
        }
        if radius.is_zero() {
            return Ok(BallPoint {
                offset: Vector::zeros(self.dim()),
                radius,
            });
        }
        if y.is_zero() {
            return Err(Error::ZeroDirection);
        }
        let (offset, _) = self.boundary_offset(y)?;
        Ok(BallPoint { offset, radius })
    }

    /// Sends a point of the simplex to the unit ball. Boundary points land on
    /// the unit sphere and the barycenter at the origin.
    pub fn ball_map(&self, x: &Vector) -> Result<BallPoint> {
        if let PointClassification::Outside(_) = self.classify(x)? {
            return Err(Error::NotInSimplex);
        }
        let y = self
            .centered_coords(x)?
            .expect("in-simplex points lie on the plane");
        if y.is_zero() {
            return Ok(BallPoint {
                offset: y,
                radius: Scalar::zero(),
            });
        }
        let (offset, t_star) = self.boundary_offset(&y)?;
        Ok(BallPoint {
            offset,
            radius: t_star.recip(),
        })
    }

    /// Inverse of [`ball_map`](Self::ball_map).
    pub fn ball_map_inverse(&self, u: &BallPoint) -> Result<Vector> {
        u.offset.check_dim(self.dim())?;
        if u.radius.is_negative() || u.radius > Scalar::one() {
            return Err(Error::OutsideBall);
        }
        Ok(self.uncentered(&u.offset.scale(&u.radius)))
    }

    /// Inverse map on a rational ball vector. Its norm must be rational.
    pub fn ball_map_inverse_coords(&self, u: &Vector) -> Result<Vector> {
        u.check_dim(self.dim())?;
        let norm_sq = u.norm_sq();
        if norm_sq > Scalar::one() {
            return Err(Error::OutsideBall);
        }
        let radius = rational_sqrt(&norm_sq).ok_or(Error::IrrationalRadius)?;
        let point = self.ball_point(u, radius)?;
        self.ball_map_inverse(&point)
    }
}
