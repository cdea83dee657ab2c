//! Geometric simplices and barycentric coordinates.
//!
//! A [`GeometricSimplex`] is the convex hull of a geometrically independent
//! point set. Every point of its affine plane has unique affine coefficients
//! with respect to the vertices; the signs of those coefficients decide
//! whether the point is interior, on the boundary (and on which face) or
//! outside.
//!
//! A simplex is already closed, so its closure is itself and no separate
//! operation exists for it.

mod ball;
mod ray;

pub use ball::BallPoint;
pub use ray::{Ray, RayHit};

use itertools::Itertools;
use num_traits::{One, Signed, Zero};

use crate::affine::{AffinePlane, Membership, PointSet};
use crate::error::{Error, Result};
use crate::linalg::{is_positive, Scalar, Vector};

/// Affine coefficients `(t_0, …, t_n)` with `Σ t_i = 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BarycentricCoords {
    coeffs: Vec<Scalar>,
}

impl BarycentricCoords {
    /// Returns `None` unless the coefficients sum to exactly one.
    pub fn new(coeffs: Vec<Scalar>) -> Option<Self> {
        let sum = coeffs.iter().fold(Scalar::zero(), |acc, c| acc + c);
        sum.is_one().then_some(BarycentricCoords { coeffs })
    }

    /// The `i`-th vertex indicator `(0, …, 1, …, 0)`.
    pub fn vertex(len: usize, i: usize) -> Self {
        let mut coeffs = vec![Scalar::zero(); len];
        coeffs[i] = Scalar::one();
        BarycentricCoords { coeffs }
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `Σ t_i p_i`.
    pub fn combine(&self, points: &[Vector]) -> Vector {
        assert_eq!(points.len(), self.len(), "one point per coefficient");
        Vector::combination(points[0].dim(), self.coeffs.iter().zip(points))
    }

    pub fn all_positive(&self) -> bool {
        self.coeffs.iter().all(is_positive)
    }

    pub fn all_nonnegative(&self) -> bool {
        self.coeffs.iter().all(|c| !c.is_negative())
    }

    /// Indices of the strictly positive coefficients.
    pub fn support(&self) -> Vec<usize> {
        self.coeffs.iter().positions(is_positive).collect()
    }

    /// Restriction to `indices`, for a point known to vanish elsewhere.
    pub fn restrict(&self, indices: &[usize]) -> BarycentricCoords {
        let coeffs: Vec<Scalar> = indices.iter().map(|&i| self.coeffs[i].clone()).collect();
        BarycentricCoords::new(coeffs).expect("dropped coefficients must be zero")
    }
}

impl std::fmt::Display for BarycentricCoords {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({})", self.coeffs.iter().join(", "))
    }
}

/// Result of [`GeometricSimplex::barycentric`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BarycentricResult {
    /// Coordinates may be negative when the point is outside the simplex.
    InPlane(BarycentricCoords),
    OffPlane,
}

/// Where a point sits relative to a simplex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PointClassification {
    /// Every coordinate strictly positive.
    Interior(BarycentricCoords),
    /// All coordinates nonnegative with at least one zero. `carrier` lists the
    /// vertices of the face whose interior holds the point.
    Boundary {
        carrier: Vec<usize>,
        coords: BarycentricCoords,
    },
    /// Off the affine plane (`None`) or some coordinate negative.
    Outside(Option<BarycentricCoords>),
}

impl PointClassification {
    pub fn is_interior(&self) -> bool {
        matches!(self, PointClassification::Interior(_))
    }

    pub fn is_boundary(&self) -> bool {
        matches!(self, PointClassification::Boundary { .. })
    }

    pub fn is_outside(&self) -> bool {
        matches!(self, PointClassification::Outside(_))
    }

    /// Interior or boundary.
    pub fn in_simplex(&self) -> bool {
        !self.is_outside()
    }

    pub fn coords(&self) -> Option<&BarycentricCoords> {
        match self {
            PointClassification::Interior(c) => Some(c),
            PointClassification::Boundary { coords, .. } => Some(coords),
            PointClassification::Outside(c) => c.as_ref(),
        }
    }
}

/// Decomposition of a point along the cone from vertex `a_0` over the
/// opposite face: `x = t_0 a_0 + (1 − t_0) y`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConeCoords {
    pub apex_weight: Scalar,
    /// `y` and its coordinates on the opposite face; `None` when `x = a_0`.
    pub base: Option<(Vector, BarycentricCoords)>,
}

/// The convex hull of `n + 1` geometrically independent points.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GeometricSimplex {
    vertices: PointSet,
    plane: AffinePlane,
}

impl GeometricSimplex {
    pub fn new(vertices: PointSet) -> Result<Self> {
        let plane = vertices.plane()?;
        Ok(GeometricSimplex { vertices, plane })
    }

    pub fn from_points(points: Vec<Vector>) -> Result<Self> {
        Self::new(PointSet::new(points)?)
    }

    pub fn from_ints(points: &[&[i64]]) -> Result<Self> {
        Self::new(PointSet::from_ints(points)?)
    }

    pub fn dim(&self) -> usize {
        self.vertices.len() - 1
    }

    pub fn ambient_dim(&self) -> usize {
        self.vertices.ambient_dim()
    }

    pub fn vertices(&self) -> &[Vector] {
        self.vertices.points()
    }

    pub fn vertex(&self, i: usize) -> &Vector {
        &self.vertices.points()[i]
    }

    pub fn point_set(&self) -> &PointSet {
        &self.vertices
    }

    pub fn plane(&self) -> &AffinePlane {
        &self.plane
    }

    /// `(1/(n+1)) Σ a_i`.
    pub fn barycenter(&self) -> Vector {
        let n = self.vertices.len();
        let w = Scalar::new(1.into(), n.into());
        let weights = vec![w; n];
        Vector::combination(self.ambient_dim(), weights.iter().zip(self.vertices()))
    }

    /// The point with the given barycentric coordinates.
    pub fn point_at(&self, coords: &BarycentricCoords) -> Vector {
        coords.combine(self.vertices())
    }

    pub fn barycentric(&self, x: &Vector) -> Result<BarycentricResult> {
        Ok(match self.plane.membership(x)? {
            Membership::OnPlane(c) => BarycentricResult::InPlane(c),
            Membership::OffPlane => BarycentricResult::OffPlane,
        })
    }

    pub fn classify(&self, x: &Vector) -> Result<PointClassification> {
        let BarycentricResult::InPlane(coords) = self.barycentric(x)? else {
            return Ok(PointClassification::Outside(None));
        };
        Ok(if coords.all_positive() {
            PointClassification::Interior(coords)
        } else if coords.all_nonnegative() {
            PointClassification::Boundary {
                carrier: coords.support(),
                coords,
            }
        } else {
            PointClassification::Outside(Some(coords))
        })
    }

    pub fn contains(&self, x: &Vector) -> Result<bool> {
        Ok(self.classify(x)?.in_simplex())
    }

    /// The face spanned by the vertices at `indices` (kept in the given order).
    pub fn face(&self, indices: &[usize]) -> Result<GeometricSimplex> {
        if indices.is_empty() {
            return Err(Error::EmptySimplex);
        }
        let points = indices
            .iter()
            .map(|&i| {
                self.vertices()
                    .get(i)
                    .cloned()
                    .ok_or(Error::VertexIndexOutOfRange {
                        index: i,
                        dim: self.dim(),
                    })
            })
            .collect::<Result<Vec<_>>>()?;
        // Subsets of an independent set are independent.
        GeometricSimplex::from_points(points)
    }

    /// Vertex index sets of all `k`-faces, lexicographic.
    pub fn face_indices(&self, k: usize) -> Result<Vec<Vec<usize>>> {
        if k > self.dim() {
            return Err(Error::FaceDimensionOutOfRange { k, dim: self.dim() });
        }
        Ok((0..=self.dim()).combinations(k + 1).collect())
    }

    /// All `C(n+1, k+1)` faces of dimension `k`, lexicographic by vertex index.
    pub fn faces(&self, k: usize) -> Result<Vec<GeometricSimplex>> {
        self.face_indices(k)?
            .iter()
            .map(|ix| self.face(ix))
            .collect()
    }

    /// Every face of dimension below `n`, ordered by dimension then
    /// lexicographically. Empty for a 0-simplex.
    pub fn proper_faces(&self) -> Vec<GeometricSimplex> {
        (0..self.dim())
            .flat_map(|k| self.faces(k).expect("k < dim"))
            .collect()
    }

    /// The `(n−1)`-face spanned by every vertex except `i`.
    pub fn face_opposite(&self, i: usize) -> Result<GeometricSimplex> {
        if i > self.dim() {
            return Err(Error::VertexIndexOutOfRange {
                index: i,
                dim: self.dim(),
            });
        }
        if self.dim() == 0 {
            return Err(Error::NoOppositeFace);
        }
        let rest: Vec<usize> = (0..=self.dim()).filter(|&j| j != i).collect();
        self.face(&rest)
    }

    /// Writes `x` as a point on the segment from `a_0` to a point `y` of
    /// the face opposite `a_0`.
    pub fn cone_decompose(&self, x: &Vector) -> Result<ConeCoords> {
        if self.dim() == 0 {
            return Err(Error::NoOppositeFace);
        }
        let coords = match self.classify(x)? {
            PointClassification::Outside(_) => return Err(Error::NotInSimplex),
            c => c
                .coords()
                .cloned()
                .expect("in-simplex points carry coordinates"),
        };
        let t0 = coords.coeffs()[0].clone();
        if t0.is_one() {
            return Ok(ConeCoords {
                apex_weight: t0,
                base: None,
            });
        }
        let rest = Scalar::one() - &t0;
        let base_coords =
            BarycentricCoords::new(coords.coeffs()[1..].iter().map(|t| t / &rest).collect())
                .expect("normalized tail sums to one");
        let y = base_coords.combine(&self.vertices()[1..]);
        debug_assert_eq!(&(&self.vertex(0).scale(&t0) + &y.scale(&rest)), x);
        Ok(ConeCoords {
            apex_weight: t0,
            base: Some((y, base_coords)),
        })
    }
}
