//! Queries on the underlying space `|K|` of a complex.
//!
//! Points are located by a linear scan over the simplices in decreasing
//! dimension with exact barycentric solves. In a valid complex every point
//! of `|K|` lies in the interior of exactly one simplex, its carrier.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::complex::{AbstractSimplex, SimplicialComplex};
use crate::error::{Error, Result};
use crate::linalg::{Scalar, Vector};
use crate::simplex::{BarycentricCoords, PointClassification};

/// The simplex whose interior holds a point, with strictly positive
/// coordinates in label order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Carrier {
    pub simplex: AbstractSimplex,
    pub coords: BarycentricCoords,
}

impl Carrier {
    /// Coordinate of vertex `label`, zero when the carrier avoids it.
    pub fn weight(&self, label: &str) -> Scalar {
        self.simplex
            .labels()
            .iter()
            .position(|l| l == label)
            .map_or_else(
                || Scalar::from_integer(0.into()),
                |i| self.coords.coeffs()[i].clone(),
            )
    }
}

/// A vertex value: a scalar or a vector.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum PlValue {
    Scalar(#[serde(serialize_with = "as_literal")] Scalar),
    Vector(Vector),
}

fn as_literal<S: serde::Serializer>(x: &Scalar, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(x)
}

impl PlValue {
    fn entries(&self) -> Vec<Scalar> {
        match self {
            PlValue::Scalar(x) => vec![x.clone()],
            PlValue::Vector(v) => v.entries().to_vec(),
        }
    }
}

impl std::fmt::Display for PlValue {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            PlValue::Scalar(x) => write!(f, "{x}"),
            PlValue::Vector(v) => write!(f, "{v}"),
        }
    }
}

/// A piecewise-linear map given by its values at vertices and extended
/// linearly over each simplex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlMap {
    values: BTreeMap<String, PlValue>,
    /// `None` for scalar maps, `Some(len)` for vector-valued ones.
    shape: Option<usize>,
}

impl PlMap {
    /// All values must be scalars, or all vectors of one length.
    pub fn new(values: BTreeMap<String, PlValue>) -> Result<Self> {
        let shape_of = |v: &PlValue| match v {
            PlValue::Scalar(_) => None,
            PlValue::Vector(v) => Some(v.dim()),
        };
        let mut shapes = values.values().map(shape_of);
        let shape = shapes.next().flatten();
        if shapes.any(|s| s != shape) {
            return Err(Error::InconsistentValues);
        }
        Ok(PlMap { values, shape })
    }

    pub fn values(&self) -> &BTreeMap<String, PlValue> {
        &self.values
    }

    pub fn value(&self, label: &str) -> Result<&PlValue> {
        self.values
            .get(label)
            .ok_or_else(|| Error::MissingValue(label.to_string()))
    }

    /// `Σ t_i f(v_i)` over the labels of `simplex`.
    fn combine(&self, simplex: &AbstractSimplex, coords: &BarycentricCoords) -> Result<PlValue> {
        let len = self.shape.unwrap_or(1);
        let mut acc = vec![Scalar::from_integer(0.into()); len];
        for (label, t) in simplex.labels().iter().zip(coords.coeffs()) {
            for (a, y) in acc.iter_mut().zip(self.value(label)?.entries()) {
                *a += t * y;
            }
        }
        Ok(match self.shape {
            None => PlValue::Scalar(acc.pop().expect("one entry")),
            Some(_) => PlValue::Vector(Vector::new(acc)),
        })
    }
}

/// Extent and size of a complex.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Summary {
    /// Coordinatewise minimum and maximum over the vertices of simplices.
    pub bounding_box: (Vector, Vector),
    pub counts: BTreeMap<usize, usize>,
    /// Always `true`: a finite complex is compact.
    pub is_compact: bool,
}

impl SimplicialComplex {
    /// The carrier of `x`, or [`Error::NotInRealization`].
    ///
    /// Takes the first closed simplex (largest dimension first) containing
    /// `x` and reduces to the face spanned by the positive coordinates. For a
    /// valid complex that face belongs to the complex and is unique.
    pub fn locate(&self, x: &Vector) -> Result<Carrier> {
        x.check_dim(self.ambient_dim())?;
        let by_dim_desc = self.simplices().iter().rev();
        for s in by_dim_desc {
            let Ok(g) = self.geometric(s) else { continue };
            match g.classify(x)? {
                PointClassification::Interior(coords) => {
                    return Ok(Carrier {
                        simplex: s.clone(),
                        coords,
                    })
                }
                PointClassification::Boundary { carrier, coords } => {
                    let labels = carrier.iter().map(|&i| s.labels()[i].clone());
                    return Ok(Carrier {
                        simplex: AbstractSimplex::new(labels)?,
                        coords: coords.restrict(&carrier),
                    });
                }
                PointClassification::Outside(_) => {}
            }
        }
        Err(Error::NotInRealization)
    }

    /// Every simplex whose closed geometric simplex contains `x`, with the
    /// coordinates of `x` in it.
    pub fn containing_simplices(
        &self,
        x: &Vector,
    ) -> Result<Vec<(AbstractSimplex, BarycentricCoords)>> {
        x.check_dim(self.ambient_dim())?;
        let mut found = Vec::new();
        for s in self.simplices() {
            let Ok(g) = self.geometric(s) else { continue };
            let class = g.classify(x)?;
            if class.in_simplex() {
                found.push((s.clone(), class.coords().expect("in-simplex").clone()));
            }
        }
        Ok(found)
    }

    /// The barycentric coordinate function of vertex `j` at `x`.
    pub fn lambda(&self, j: &str, x: &Vector) -> Result<Scalar> {
        if !self.simplices().contains(&AbstractSimplex::vertex(j)) {
            return Err(Error::UnknownVertex(j.to_string()));
        }
        Ok(self.locate(x)?.weight(j))
    }

    /// Evaluates the linear extension of `f` at `x` on its carrier.
    pub fn eval_pl(&self, f: &PlMap, x: &Vector) -> Result<PlValue> {
        let carrier = self.locate(x)?;
        f.combine(&carrier.simplex, &carrier.coords)
    }

    /// Evaluates `f` at `x` using the closed simplex `s`, which must contain
    /// `x`. Agrees with [`eval_pl`](Self::eval_pl) on a valid complex.
    pub fn eval_pl_on(&self, f: &PlMap, s: &AbstractSimplex, x: &Vector) -> Result<PlValue> {
        let class = self.geometric(s)?.classify(x)?;
        if !class.in_simplex() {
            return Err(Error::NotInSimplex);
        }
        f.combine(s, class.coords().expect("in-simplex"))
    }

    pub fn summary(&self) -> Result<Summary> {
        let labels: std::collections::BTreeSet<&String> =
            self.simplices().iter().flat_map(|s| s.labels()).collect();
        let mut points = labels.into_iter().map(|l| self.point(l));
        let first = points.next().ok_or(Error::EmptyComplex)??.clone();
        let (mut lo, mut hi) = (first.clone().into_entries(), first.into_entries());
        for p in points {
            for (i, e) in p?.iter().enumerate() {
                if *e < lo[i] {
                    lo[i] = e.clone();
                }
                if *e > hi[i] {
                    hi[i] = e.clone();
                }
            }
        }
        Ok(Summary {
            bounding_box: (Vector::new(lo), Vector::new(hi)),
            counts: self.counts_by_dim(),
            is_compact: true,
        })
    }
}
