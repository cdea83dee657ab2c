//! Simplicial complexes over a labelled vertex table.
//!
//! A complex stores coordinates once per vertex label and its simplices as
//! sorted label sets. Two validators are provided and must always agree:
//!
//! - [`SimplicialComplex::validate_definitional`] checks face closure and that
//!   every two simplices meet in their common face (or not at all).
//! - [`SimplicialComplex::validate_disjoint_interiors`] checks face closure and
//!   that distinct simplices have disjoint open interiors.
//!
//! Both decide geometric questions exactly through
//! [`GeometricSimplex::interior_intersection`].

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use itertools::Itertools;
use serde::Serialize;

use crate::affine::PointSet;
use crate::error::{Error, Result};
use crate::linalg::Vector;
use crate::simplex::GeometricSimplex;

/// A simplex named by its vertex labels, kept sorted and distinct.
///
/// Ordering is by dimension first, then lexicographic on labels.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(transparent)]
pub struct AbstractSimplex(Vec<String>);

impl AbstractSimplex {
    pub fn new<I, S>(labels: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let mut labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        if labels.is_empty() {
            return Err(Error::EmptySimplex);
        }
        labels.sort();
        if let Some((a, _)) = labels.iter().tuple_windows().find(|(a, b)| a == b) {
            return Err(Error::RepeatedLabel(a.clone()));
        }
        Ok(AbstractSimplex(labels))
    }

    pub fn vertex(label: impl Into<String>) -> Self {
        AbstractSimplex(vec![label.into()])
    }

    pub fn labels(&self) -> &[String] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len() - 1
    }

    pub fn contains(&self, label: &str) -> bool {
        self.0.binary_search_by(|l| l.as_str().cmp(label)).is_ok()
    }

    pub fn is_face_of(&self, other: &AbstractSimplex) -> bool {
        self.0.iter().all(|l| other.contains(l))
    }

    /// Every nonempty subset of the labels, including the simplex itself.
    pub fn faces(&self) -> impl Iterator<Item = AbstractSimplex> + '_ {
        (1..=self.0.len())
            .flat_map(move |k| self.0.iter().cloned().combinations(k).map(AbstractSimplex))
    }

    pub fn proper_faces(&self) -> impl Iterator<Item = AbstractSimplex> + '_ {
        self.faces().filter(move |f| f.0.len() < self.0.len())
    }

    /// Labels present in both, or `None` when disjoint.
    pub fn intersection(&self, other: &AbstractSimplex) -> Option<AbstractSimplex> {
        let shared: Vec<String> = self
            .0
            .iter()
            .filter(|l| other.contains(l))
            .cloned()
            .collect();
        (!shared.is_empty()).then_some(AbstractSimplex(shared))
    }

    pub fn union(&self, other: &AbstractSimplex) -> AbstractSimplex {
        AbstractSimplex(
            self.0
                .iter()
                .chain(&other.0)
                .cloned()
                .sorted()
                .dedup()
                .collect(),
        )
    }
}

impl Ord for AbstractSimplex {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.0
            .len()
            .cmp(&other.0.len())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for AbstractSimplex {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for AbstractSimplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.0.join(","))
    }
}

/// Why two simplices fail to meet properly.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Diagnosis {
    /// The simplices share these vertices but the shared face is not in the
    /// complex.
    SharedFaceMissing { face: AbstractSimplex },
    /// The open simplices spanned by these label sets meet at `witness`.
    InteriorsMeet {
        faces: (AbstractSimplex, AbstractSimplex),
        witness: Vector,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BadIntersection {
    pub first: AbstractSimplex,
    pub second: AbstractSimplex,
    pub diagnosis: Diagnosis,
}

/// Diagnostics from a validator. The complex is valid iff every list is empty.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    /// `(simplex, absent face)` pairs.
    pub missing_faces: Vec<(AbstractSimplex, AbstractSimplex)>,
    pub dependent_simplices: Vec<AbstractSimplex>,
    pub bad_intersections: Vec<BadIntersection>,
}

impl ValidationReport {
    pub fn ok(&self) -> bool {
        self.missing_faces.is_empty()
            && self.dependent_simplices.is_empty()
            && self.bad_intersections.is_empty()
    }
}

/// Which criterion a validation run applies.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ValidationMethod {
    Definitional,
    DisjointInteriors,
}

/// A finite collection of simplices over a vertex table `label → point`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialComplex {
    ambient_dim: usize,
    vertices: BTreeMap<String, Vector>,
    simplices: BTreeSet<AbstractSimplex>,
}

impl SimplicialComplex {
    /// Builds a complex. Every label used by a simplex must be in the table
    /// and every coordinate vector must have length `ambient_dim`. No
    /// geometric validation happens here.
    pub fn new(
        ambient_dim: usize,
        vertices: BTreeMap<String, Vector>,
        simplices: impl IntoIterator<Item = AbstractSimplex>,
    ) -> Result<Self> {
        for point in vertices.values() {
            point.check_dim(ambient_dim)?;
        }
        let simplices: BTreeSet<AbstractSimplex> = simplices.into_iter().collect();
        for s in &simplices {
            if let Some(l) = s.labels().iter().find(|l| !vertices.contains_key(*l)) {
                return Err(Error::UnknownVertex(l.clone()));
            }
        }
        Ok(SimplicialComplex {
            ambient_dim,
            vertices,
            simplices,
        })
    }

    /// The complex made of `simplex` and all its faces, with vertex labels
    /// taken from `labels` in order.
    pub fn from_simplex(simplex: &GeometricSimplex, labels: &[&str]) -> Result<Self> {
        if labels.len() != simplex.vertices().len() {
            return Err(Error::DimensionMismatch {
                expected: simplex.vertices().len(),
                found: labels.len(),
            });
        }
        let table = labels
            .iter()
            .map(|l| l.to_string())
            .zip(simplex.vertices().iter().cloned())
            .collect();
        let top = AbstractSimplex::new(labels.iter().copied())?;
        let faces: Vec<_> = top.faces().collect();
        Self::new(simplex.ambient_dim(), table, faces)
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn vertex_table(&self) -> &BTreeMap<String, Vector> {
        &self.vertices
    }

    pub fn simplices(&self) -> &BTreeSet<AbstractSimplex> {
        &self.simplices
    }

    pub fn len(&self) -> usize {
        self.simplices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.simplices.is_empty()
    }

    pub fn contains(&self, s: &AbstractSimplex) -> bool {
        self.simplices.contains(s)
    }

    pub fn point(&self, label: &str) -> Result<&Vector> {
        self.vertices
            .get(label)
            .ok_or_else(|| Error::UnknownVertex(label.to_string()))
    }

    pub fn point_set(&self, s: &AbstractSimplex) -> Result<PointSet> {
        s.labels()
            .iter()
            .map(|l| self.point(l).cloned())
            .collect::<Result<Vec<_>>>()
            .and_then(PointSet::new)
    }

    /// The geometric simplex for `s`, with vertices in label order.
    pub fn geometric(&self, s: &AbstractSimplex) -> Result<GeometricSimplex> {
        GeometricSimplex::new(self.point_set(s)?)
    }

    /// A complex with the same vertex table and the given simplices.
    fn with_simplices(&self, simplices: impl IntoIterator<Item = AbstractSimplex>) -> Self {
        SimplicialComplex {
            ambient_dim: self.ambient_dim,
            vertices: self.vertices.clone(),
            simplices: simplices.into_iter().collect(),
        }
    }

    /// Largest simplex dimension.
    pub fn dimension(&self) -> Result<usize> {
        self.simplices
            .iter()
            .map(AbstractSimplex::dim)
            .max()
            .ok_or(Error::EmptyComplex)
    }

    /// Number of simplices of each dimension.
    pub fn counts_by_dim(&self) -> BTreeMap<usize, usize> {
        self.simplices
            .iter()
            .map(AbstractSimplex::dim)
            .counts()
            .into_iter()
            .collect()
    }

    fn missing_faces(&self) -> Vec<(AbstractSimplex, AbstractSimplex)> {
        self.simplices
            .iter()
            .flat_map(|s| {
                s.proper_faces()
                    .filter(|f| !self.simplices.contains(f))
                    .map(move |f| (s.clone(), f))
                    .collect::<Vec<_>>()
            })
            .collect()
    }

    /// Geometric simplices of the independent members, and the dependent ones.
    fn realize_all(
        &self,
    ) -> (
        Vec<(&AbstractSimplex, GeometricSimplex)>,
        Vec<AbstractSimplex>,
    ) {
        let mut good = Vec::new();
        let mut dependent = Vec::new();
        for s in &self.simplices {
            match self.geometric(s) {
                Ok(g) => good.push((s, g)),
                Err(Error::DependentVertices { .. }) => dependent.push(s.clone()),
                Err(e) => unreachable!("labels were checked at construction: {e}"),
            }
        }
        (good, dependent)
    }

    fn require_nonempty(&self) -> Result<()> {
        if self.simplices.is_empty() {
            Err(Error::EmptyComplex)
        } else {
            Ok(())
        }
    }

    /// Checks face closure, independence of every simplex, and that any two
    /// simplices intersect exactly in the simplex spanned by their shared
    /// vertices, which must itself belong to the complex.
    ///
    /// The geometric part holds iff for every pair of faces `σ' ≤ σ`,
    /// `τ' ≤ τ` with different vertex sets the open simplices are disjoint:
    /// each point of a simplex lies in the interior of exactly one face, so a
    /// point of `σ ∩ τ` outside the common face would sit in the interiors
    /// of two different faces.
    pub fn validate_definitional(&self) -> Result<ValidationReport> {
        self.require_nonempty()?;
        let (good, dependent) = self.realize_all();
        let mut report = ValidationReport {
            missing_faces: self.missing_faces(),
            dependent_simplices: dependent,
            bad_intersections: Vec::new(),
        };
        let mut cache: HashMap<(AbstractSimplex, AbstractSimplex), Option<Vector>> = HashMap::new();
        for ((s, _), (t, _)) in good.iter().tuple_combinations() {
            if let Some(shared) = s.intersection(t) {
                if !self.simplices.contains(&shared) {
                    report.bad_intersections.push(BadIntersection {
                        first: (*s).clone(),
                        second: (*t).clone(),
                        diagnosis: Diagnosis::SharedFaceMissing { face: shared },
                    });
                }
            }
            if let Some((faces, witness)) = self.first_meeting_faces(s, t, &mut cache) {
                report.bad_intersections.push(BadIntersection {
                    first: (*s).clone(),
                    second: (*t).clone(),
                    diagnosis: Diagnosis::InteriorsMeet { faces, witness },
                });
            }
        }
        Ok(report)
    }

    fn first_meeting_faces(
        &self,
        s: &AbstractSimplex,
        t: &AbstractSimplex,
        cache: &mut HashMap<(AbstractSimplex, AbstractSimplex), Option<Vector>>,
    ) -> Option<((AbstractSimplex, AbstractSimplex), Vector)> {
        for fs in s.faces() {
            for ft in t.faces() {
                // Distinct faces of one simplex never share interior points.
                let joined = fs.union(&ft);
                if fs == ft || joined.is_face_of(s) || joined.is_face_of(t) {
                    continue;
                }
                let key = if fs <= ft {
                    (fs.clone(), ft.clone())
                } else {
                    (ft.clone(), fs.clone())
                };
                let hit = cache
                    .entry(key)
                    .or_insert_with_key(|(a, b)| self.open_simplices_meet(a, b))
                    .clone();
                if let Some(w) = hit {
                    return Some(((fs, ft), w));
                }
            }
        }
        None
    }

    fn open_simplices_meet(&self, a: &AbstractSimplex, b: &AbstractSimplex) -> Option<Vector> {
        let ga = self
            .geometric(a)
            .expect("faces of independent simplices are independent");
        let gb = self
            .geometric(b)
            .expect("faces of independent simplices are independent");
        ga.interior_intersection(&gb)
    }

    /// Checks face closure, independence of every simplex, and that distinct
    /// simplices have disjoint open interiors.
    pub fn validate_disjoint_interiors(&self) -> Result<ValidationReport> {
        self.require_nonempty()?;
        let (good, dependent) = self.realize_all();
        let mut report = ValidationReport {
            missing_faces: self.missing_faces(),
            dependent_simplices: dependent,
            bad_intersections: Vec::new(),
        };
        report.bad_intersections = meeting_interiors(&good)
            .map(|(s, t, witness)| BadIntersection {
                first: s.clone(),
                second: t.clone(),
                diagnosis: Diagnosis::InteriorsMeet {
                    faces: (s.clone(), t.clone()),
                    witness,
                },
            })
            .collect();
        Ok(report)
    }

    pub fn validate(&self, method: ValidationMethod) -> Result<ValidationReport> {
        match method {
            ValidationMethod::Definitional => self.validate_definitional(),
            ValidationMethod::DisjointInteriors => self.validate_disjoint_interiors(),
        }
    }

    /// Same verdict as `validate_disjoint_interiors().ok()`, stopping at the
    /// first defect.
    pub fn is_valid(&self) -> bool {
        if self.simplices.is_empty() || !self.missing_faces().is_empty() {
            return false;
        }
        let (good, dependent) = self.realize_all();
        dependent.is_empty() && meeting_interiors(&good).next().is_none()
    }

    /// `true` iff `self` is a valid complex whose simplices all belong to
    /// `parent` with matching vertex coordinates.
    pub fn is_subcomplex_of(&self, parent: &SimplicialComplex) -> bool {
        let coords_agree = self
            .simplices
            .iter()
            .flat_map(|s| s.labels())
            .all(|l| self.vertices.get(l) == parent.vertices.get(l));
        coords_agree && self.simplices.is_subset(&parent.simplices) && self.is_valid()
    }

    /// All simplices of dimension at most `p`.
    pub fn skeleton(&self, p: usize) -> SimplicialComplex {
        self.with_simplices(self.simplices.iter().filter(|s| s.dim() <= p).cloned())
    }

    /// Labels of the 0-simplices, sorted.
    pub fn vertices(&self) -> Vec<String> {
        self.simplices
            .iter()
            .filter(|s| s.dim() == 0)
            .map(|s| s.labels()[0].clone())
            .collect()
    }

    fn require_vertex(&self, v: &str) -> Result<()> {
        if self.simplices.iter().any(|s| s.contains(v)) {
            Ok(())
        } else {
            Err(Error::UnknownVertex(v.to_string()))
        }
    }

    /// Every simplex containing `v`, including `{v}` itself.
    pub fn star(&self, v: &str) -> Result<BTreeSet<AbstractSimplex>> {
        self.require_vertex(v)?;
        Ok(self
            .simplices
            .iter()
            .filter(|s| s.contains(v))
            .cloned()
            .collect())
    }

    /// The star of `v` together with all faces of its simplices.
    pub fn closed_star(&self, v: &str) -> Result<SimplicialComplex> {
        let star = self.star(v)?;
        Ok(self.with_simplices(face_closure(&star)))
    }

    /// Simplices of the closed star that avoid `v`.
    pub fn link(&self, v: &str) -> Result<BTreeSet<AbstractSimplex>> {
        Ok(self
            .closed_star(v)?
            .simplices
            .into_iter()
            .filter(|s| !s.contains(v))
            .collect())
    }

    /// Always `true` for a finite complex; returns the star size of every
    /// vertex as the certificate.
    pub fn local_finiteness(&self) -> (bool, BTreeMap<String, usize>) {
        let sizes = self
            .vertices()
            .into_iter()
            .map(|v| {
                let n = self.simplices.iter().filter(|s| s.contains(&v)).count();
                (v, n)
            })
            .collect();
        (true, sizes)
    }
}

/// Pairs of independent simplices whose interiors meet, with a witness. A
/// face and its coface never qualify, so those pairs are skipped.
fn meeting_interiors<'a>(
    good: &'a [(&'a AbstractSimplex, GeometricSimplex)],
) -> impl Iterator<Item = (&'a AbstractSimplex, &'a AbstractSimplex, Vector)> + 'a {
    good.iter()
        .tuple_combinations()
        .filter(|((s, _), (t, _))| !s.is_face_of(t) && !t.is_face_of(s))
        .filter_map(|((s, gs), (t, gt))| Some((*s, *t, gs.interior_intersection(gt)?)))
}

/// All faces of all members of `set`.
pub fn face_closure(set: &BTreeSet<AbstractSimplex>) -> BTreeSet<AbstractSimplex> {
    set.iter()
        .flat_map(|s| s.faces().collect::<Vec<_>>())
        .collect()
}

/// Members of `set` that are not a proper face of another member.
pub fn maximal_faces(set: &BTreeSet<AbstractSimplex>) -> BTreeSet<AbstractSimplex> {
    set.iter()
        .filter(|s| !set.iter().any(|t| t != *s && s.is_face_of(t)))
        .cloned()
        .collect()
}
