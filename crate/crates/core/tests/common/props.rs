//! Property checks paired with their input strategies. The proptest suites in
//! this directory and the CLI crate's acceptance runner both use them.

use std::collections::{BTreeMap, BTreeSet};

use itertools::Itertools;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;
use proptest::test_runner::TestCaseError;
use simplicial::complex::{Diagnosis, ValidationReport};
use simplicial::{
    AbstractSimplex, BarycentricCoords, GeometricSimplex, PlMap, PlValue, PointSet, Ray, RayHit,
    Scalar, SimplicialComplex, Vector,
};

use super::*;

pub type Check = Result<(), TestCaseError>;

// ---- oracles ----

/// Determinant by the Leibniz permutation sum.
pub fn leibniz(m: &[Vec<i128>]) -> i128 {
    let n = m.len();
    (0..n)
        .permutations(n)
        .map(|p| {
            let inversions = (0..n)
                .tuple_combinations()
                .filter(|&(i, j)| p[i] > p[j])
                .count();
            let sign = if inversions % 2 == 0 { 1 } else { -1 };
            sign * (0..n).map(|i| m[i][p[i]]).product::<i128>()
        })
        .sum()
}

/// Points are affinely independent iff the homogenized columns `(p, 1)` have
/// a nonzero maximal minor.
pub fn independent_by_minors(pts: &[Vec<i64>]) -> bool {
    let k = pts.len();
    let rows: Vec<Vec<i128>> = (0..=pts[0].len())
        .map(|r| {
            pts.iter()
                .map(|p| if r < p.len() { p[r] as i128 } else { 1 })
                .collect()
        })
        .collect();
    if k > rows.len() {
        return false;
    }
    rows.iter()
        .combinations(k)
        .any(|chosen| leibniz(&chosen.into_iter().cloned().collect::<Vec<_>>()) != 0)
}

/// Searches small integer coefficients `c ≠ 0` with `Σ c_i = 0` and
/// `Σ c_i p_i = 0`. Finding one proves dependence.
pub fn small_dependence(pts: &[Vec<i64>]) -> bool {
    (0..pts.len())
        .map(|_| -2..=2i64)
        .multi_cartesian_product()
        .filter(|c| c.iter().any(|&x| x != 0) && c.iter().sum::<i64>() == 0)
        .any(|c| {
            (0..pts[0].len()).all(|r| pts.iter().zip(&c).map(|(p, x)| p[r] * x).sum::<i64>() == 0)
        })
}

/// Barycentric coordinates in a triangle by Cramer's rule.
pub fn cramer(tri: &[(Scalar, Scalar); 3], x: &Scalar, y: &Scalar) -> [Scalar; 3] {
    let [(x0, y0), (x1, y1), (x2, y2)] = tri;
    let det = (x1 - x0) * (y2 - y0) - (x2 - x0) * (y1 - y0);
    let s = ((x - x0) * (y2 - y0) - (x2 - x0) * (y - y0)) / &det;
    let t = ((x1 - x0) * (y - y0) - (x - x0) * (y1 - y0)) / &det;
    [Scalar::one() - &s - &t, s, t]
}

// ---- oracle equivalence ----

pub fn gi_cases() -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1..=4usize, 1..=5usize).prop_flat_map(|(m, k)| points(m, k, 2))
}

pub fn gi_matches_minors(pts: Vec<Vec<i64>>) -> Check {
    let set = PointSet::new(pts.iter().map(|p| ints(p)).collect()).unwrap();
    let ours = set.is_geometrically_independent();
    prop_assert_eq!(ours, independent_by_minors(&pts));
    if small_dependence(&pts) {
        prop_assert!(!ours);
    }
    Ok(())
}

pub fn validators_agree(k: SimplicialComplex) -> Check {
    let d = k.validate_definitional().unwrap();
    let i = k.validate_disjoint_interiors().unwrap();
    prop_assert_eq!(d.ok(), i.ok(), "definitional {:?}\ndisjoint {:?}", d, i);
    prop_assert_eq!(k.is_valid(), i.ok());
    prop_assert_eq!(d.missing_faces, i.missing_faces);
    prop_assert_eq!(d.dependent_simplices, i.dependent_simplices);
    Ok(())
}

pub fn barycentric_round_trip((s, w): (GeometricSimplex, BarycentricCoords)) -> Check {
    let x = s.point_at(&w);
    let class = s.classify(&x).unwrap();
    prop_assert_eq!(class.coords(), Some(&w));
    prop_assert_eq!(class.is_interior(), w.all_positive());
    Ok(())
}

pub type RayCase = (GeometricSimplex, BarycentricCoords, Vec<i64>);

pub fn ray_cases() -> impl Strategy<Value = RayCase> {
    simplex_and_weights(3, true)
        .prop_filter("needs a direction", |(s, _)| s.dim() > 0)
        .prop_flat_map(|(s, w)| {
            let n = s.dim();
            (Just(s), Just(w), prop::collection::vec(-3..=3i64, n))
        })
        .prop_filter("zero direction", |(_, _, d)| d.iter().any(|&x| x != 0))
}

/// The hit parameter is checked by walking the ray on a grid of multiples of
/// t*/8: points before t* stay inside, t* itself is on the boundary and
/// points past it are outside.
pub fn ray_hit_matches_grid((s, w, dir): RayCase) -> Check {
    let origin = s.point_at(&w);
    let rel = s.point_set().relative_vectors();
    let coeffs: Vec<Scalar> = dir.iter().map(|&c| q(c, 1)).collect();
    let direction = Vector::combination(s.ambient_dim(), coeffs.iter().zip(&rel));
    let ray = Ray::new(origin, direction).unwrap();
    let RayHit::Hit { t_star, point, .. } = s.ray_boundary_hit(&ray).unwrap() else {
        return Err(TestCaseError::fail(
            "in-plane direction reported as leaving",
        ));
    };
    prop_assert!(t_star.is_positive());
    prop_assert_eq!(&point, &ray.at(&t_star));
    for j in 0..=16i64 {
        let class = s.classify(&ray.at(&(&t_star * q(j, 8)))).unwrap();
        match j.cmp(&8) {
            std::cmp::Ordering::Less => prop_assert!(class.is_interior()),
            std::cmp::Ordering::Equal => prop_assert!(class.is_boundary()),
            std::cmp::Ordering::Greater => prop_assert!(class.is_outside()),
        }
    }
    Ok(())
}

// ---- structural invariants ----

pub type ConvexCase = (GeometricSimplex, BarycentricCoords, BarycentricCoords, i64);

pub fn convex_cases() -> impl Strategy<Value = ConvexCase> {
    simplex(3).prop_flat_map(|s| {
        let n = s.vertices().len();
        (
            Just(s),
            nonnegative_weights(n),
            nonnegative_weights(n),
            0..=12i64,
        )
    })
}

pub fn convex_combinations_stay_inside((s, u, v, t): ConvexCase) -> Check {
    let (x, y) = (s.point_at(&u), s.point_at(&v));
    let t = q(t, 12);
    let z = &x.scale(&t) + &y.scale(&(Scalar::one() - &t));
    prop_assert!(s.contains(&z).unwrap());
    Ok(())
}

pub fn cone_cases() -> impl Strategy<Value = (GeometricSimplex, BarycentricCoords)> {
    simplex_and_weights(3, false).prop_filter("needs an opposite face", |(s, _)| s.dim() > 0)
}

pub fn cone_reconstructs_point((s, w): (GeometricSimplex, BarycentricCoords)) -> Check {
    let x = s.point_at(&w);
    let c = s.cone_decompose(&x).unwrap();
    let rebuilt = match &c.base {
        None => {
            prop_assert!(c.apex_weight.is_one());
            s.vertex(0).clone()
        }
        Some((y, coords)) => {
            let face = s.face_opposite(0).unwrap();
            prop_assert!(face.contains(y).unwrap());
            prop_assert_eq!(&face.point_at(coords), y);
            &s.vertex(0).scale(&c.apex_weight) + &y.scale(&(Scalar::one() - &c.apex_weight))
        }
    };
    prop_assert_eq!(rebuilt, x);
    Ok(())
}

pub fn simplex_with_faces_is_a_complex(s: GeometricSimplex) -> Check {
    let labels: Vec<String> = (0..s.vertices().len()).map(label).collect();
    let refs: Vec<&str> = labels.iter().map(String::as_str).collect();
    let k = SimplicialComplex::from_simplex(&s, &refs).unwrap();
    prop_assert!(k.validate_definitional().unwrap().ok());
    prop_assert!(k.validate_disjoint_interiors().unwrap().ok());
    prop_assert_eq!(k.dimension().unwrap(), s.dim());
    Ok(())
}

pub type PointCase = (SimplicialComplex, AbstractSimplex, Vector);

pub fn carrier_is_unique((k, s, x): PointCase) -> Check {
    let interiors: Vec<AbstractSimplex> = k
        .simplices()
        .iter()
        .filter(|t| k.geometric(t).unwrap().classify(&x).unwrap().is_interior())
        .cloned()
        .collect();
    prop_assert_eq!(&interiors, &vec![s.clone()]);
    let c = k.locate(&x).unwrap();
    prop_assert_eq!(&c.simplex, &s);
    prop_assert!(c.coords.all_positive());
    Ok(())
}

pub fn lambdas_partition_unity((k, s, x): PointCase) -> Check {
    let total = k
        .vertices()
        .iter()
        .map(|v| k.lambda(v, &x).unwrap())
        .fold(Scalar::zero(), |a, b| a + b);
    prop_assert!(total.is_one());
    for v in k.vertices() {
        if !s.contains(&v) {
            prop_assert!(k.lambda(&v, &x).unwrap().is_zero());
        }
    }
    Ok(())
}

/// On one closed simplex each λ_j is affine, so along a segment its values
/// interpolate linearly.
pub fn lambdas_interpolate_affinely(((k, s, x), t): (PointCase, i64)) -> Check {
    let a = k.geometric(&s).unwrap().vertex(0).clone();
    let t = q(t, 10);
    let z = &x.scale(&t) + &a.scale(&(Scalar::one() - &t));
    for v in s.labels() {
        let expected =
            k.lambda(v, &x).unwrap() * &t + k.lambda(v, &a).unwrap() * (Scalar::one() - &t);
        prop_assert_eq!(k.lambda(v, &z).unwrap(), expected);
    }
    Ok(())
}

pub fn pl_cases() -> impl Strategy<Value = (PointCase, Vec<i64>)> {
    (complex_and_point(), prop::collection::vec(-5..=5i64, 6))
}

pub fn pl_value_independent_of_simplex(((k, _, x), values): (PointCase, Vec<i64>)) -> Check {
    let f = PlMap::new(
        k.vertex_table()
            .keys()
            .zip(&values)
            .map(|(l, &v)| (l.clone(), PlValue::Scalar(q(v, 1))))
            .collect(),
    )
    .unwrap();
    let carried = k.eval_pl(&f, &x).unwrap();
    let containing = k.containing_simplices(&x).unwrap();
    prop_assert!(!containing.is_empty());
    for (s, _) in containing {
        prop_assert_eq!(&k.eval_pl_on(&f, &s, &x).unwrap(), &carried);
    }
    Ok(())
}

pub fn skeleton_identities((k, p): (SimplicialComplex, usize)) -> Check {
    prop_assert!(k.skeleton(p).is_subcomplex_of(&k));
    prop_assert_eq!(&k.skeleton(k.dimension().unwrap()), &k);
    let zero: Vec<String> = k
        .skeleton(0)
        .simplices()
        .iter()
        .map(|s| s.labels()[0].clone())
        .collect();
    prop_assert_eq!(k.vertices(), zero);
    Ok(())
}

pub fn star_and_link_identities((k, pick): (SimplicialComplex, prop::sample::Index)) -> Check {
    let vertices = k.vertices();
    let v = pick.get(&vertices);
    let star = k.star(v).unwrap();
    let closed = k.closed_star(v).unwrap();
    let link = k.link(v).unwrap();
    prop_assert!(star.is_subset(closed.simplices()));
    let difference: BTreeSet<_> = closed.simplices().difference(&star).cloned().collect();
    prop_assert_eq!(&link, &difference);
    prop_assert!(link.iter().all(|s| !s.contains(v)));
    prop_assert!(closed.is_subcomplex_of(&k));
    // Minimality: dropping any simplex loses validity or part of the star.
    for s in closed.simplices() {
        let rest: Vec<_> = closed
            .simplices()
            .iter()
            .filter(|t| *t != s)
            .cloned()
            .collect();
        let smaller =
            SimplicialComplex::new(k.ambient_dim(), k.vertex_table().clone(), rest.clone())
                .unwrap();
        let keeps_star = star.iter().all(|t| rest.contains(t));
        prop_assert!(!(keeps_star && smaller.is_valid()));
    }
    Ok(())
}

type ReportShape = (
    bool,
    BTreeSet<(AbstractSimplex, AbstractSimplex)>,
    BTreeSet<AbstractSimplex>,
    BTreeSet<(AbstractSimplex, AbstractSimplex, bool)>,
);

fn relabel(s: &AbstractSimplex, map: &BTreeMap<String, String>) -> AbstractSimplex {
    AbstractSimplex::new(s.labels().iter().map(|l| map[l].clone())).unwrap()
}

/// A report with labels mapped through `map` and list order forgotten.
fn report_shape(r: &ValidationReport, map: Option<&BTreeMap<String, String>>) -> ReportShape {
    let fix = |s: &AbstractSimplex| map.map_or(s.clone(), |m| relabel(s, m));
    let pair = |a: &AbstractSimplex, b: &AbstractSimplex| {
        let (a, b) = (fix(a), fix(b));
        if a <= b {
            (a, b)
        } else {
            (b, a)
        }
    };
    (
        r.ok(),
        r.missing_faces
            .iter()
            .map(|(s, f)| (fix(s), fix(f)))
            .collect(),
        r.dependent_simplices.iter().map(fix).collect(),
        r.bad_intersections
            .iter()
            .map(|b| {
                let (x, y) = pair(&b.first, &b.second);
                (
                    x,
                    y,
                    matches!(b.diagnosis, Diagnosis::SharedFaceMissing { .. }),
                )
            })
            .collect(),
    )
}

/// Relabels the vertices by a seeded permutation, so every enumeration order
/// changes, and compares the reports.
pub fn validation_is_order_independent((k, seed): (SimplicialComplex, u64)) -> Check {
    let labels: Vec<String> = k.vertex_table().keys().cloned().collect();
    let mut perm: Vec<usize> = (0..labels.len()).collect();
    let mut state = seed;
    for i in (1..perm.len()).rev() {
        state = state
            .wrapping_mul(6364136223846793005)
            .wrapping_add(1442695040888963407);
        perm.swap(i, (state >> 33) as usize % (i + 1));
    }
    let rename: BTreeMap<String, String> = labels
        .iter()
        .enumerate()
        .map(|(i, l)| (l.clone(), format!("z{}", perm[i])))
        .collect();
    let back: BTreeMap<String, String> =
        rename.iter().map(|(a, b)| (b.clone(), a.clone())).collect();
    let table = k
        .vertex_table()
        .iter()
        .map(|(l, p)| (rename[l].clone(), p.clone()))
        .collect();
    let renamed = SimplicialComplex::new(
        k.ambient_dim(),
        table,
        k.simplices().iter().map(|s| relabel(s, &rename)),
    )
    .unwrap();
    prop_assert_eq!(
        report_shape(&k.validate_definitional().unwrap(), None),
        report_shape(&renamed.validate_definitional().unwrap(), Some(&back))
    );
    prop_assert_eq!(
        report_shape(&k.validate_disjoint_interiors().unwrap(), None),
        report_shape(&renamed.validate_disjoint_interiors().unwrap(), Some(&back))
    );
    Ok(())
}

/// Locating against a subcomplex agrees with the whole complex whenever the
/// carrier lies in the subcomplex.
pub fn subcomplex_location_agrees(((k, _, x), p): (PointCase, usize)) -> Check {
    let l = k.skeleton(p);
    let carrier = k.locate(&x).unwrap();
    if l.contains(&carrier.simplex) {
        prop_assert_eq!(l.locate(&x).unwrap(), carrier);
    } else {
        prop_assert!(l.locate(&x).is_err());
    }
    Ok(())
}

/// Membership in |K| by point location equals membership in the union of
/// closed simplices, on a grid around the complex.
pub fn membership_matches_union(k: SimplicialComplex) -> Check {
    let (lo, hi) = k.summary().unwrap().bounding_box;
    let axes: Vec<Vec<Scalar>> = lo
        .iter()
        .zip(hi.iter())
        .map(|(a, b)| {
            [-1, 0, 1, 3, 4, 5]
                .iter()
                .map(|&j| a + (b - a) * q(j, 4))
                .collect()
        })
        .collect();
    for p in axes.iter().multi_cartesian_product() {
        let x = Vector::new(p.into_iter().cloned().collect());
        let in_union = k
            .simplices()
            .iter()
            .any(|s| k.geometric(s).unwrap().contains(&x).unwrap());
        prop_assert_eq!(k.locate(&x).is_ok(), in_union);
    }
    Ok(())
}

// ---- ball homeomorphism ----

pub fn fixed_simplices_of_dim(n: usize) -> Vec<GeometricSimplex> {
    let raw: Vec<Vec<&[i64]>> = match n {
        1 => vec![
            vec![&[0, 0], &[4, 0]],
            vec![&[1, 1], &[4, 2]],
            vec![&[-2, 5, 1], &[3, -1, 2]],
        ],
        2 => vec![
            vec![&[0, 0], &[4, 0], &[2, 3]],
            vec![&[1, 1], &[4, 2], &[2, 5]],
            vec![&[0, 0, 0], &[1, 0, 0], &[0, 1, 1]],
        ],
        3 => vec![
            vec![&[0, 0, 0], &[1, 0, 0], &[0, 1, 0], &[0, 0, 1]],
            vec![&[0, 0, 0], &[2, 1, 0], &[1, 3, 1], &[0, 1, 4]],
            vec![&[0, 0, 0, 0], &[1, 0, 0, 0], &[0, 1, 0, 0], &[0, 0, 1, 1]],
        ],
        _ => unreachable!(),
    };
    raw.into_iter()
        .map(|pts| GeometricSimplex::from_ints(&pts).unwrap())
        .collect()
}

/// Distinct barycentric points with integer weights in `0..=m`, split into
/// interior and boundary ones.
pub fn grid_samples(n: usize, m: i64) -> (Vec<BarycentricCoords>, Vec<BarycentricCoords>) {
    let all: BTreeSet<Vec<Scalar>> = (0..=n)
        .map(|_| 0..=m)
        .multi_cartesian_product()
        .filter(|w| w.iter().any(|&x| x > 0))
        .map(|w| normalize(w).coeffs().to_vec())
        .collect();
    all.into_iter()
        .map(|c| BarycentricCoords::new(c).unwrap())
        .partition(|c| c.all_positive())
}

/// Runs the forward-then-inverse identity and the sphere/boundary
/// correspondence over grid samples of three simplices per dimension 1..=3.
/// Returns the number of points checked per dimension.
pub fn ball_grid_check() -> Result<BTreeMap<usize, (usize, usize)>, String> {
    let mut counts = BTreeMap::new();
    for (n, m) in [(1, 15), (2, 12), (3, 5)] {
        let (interior, boundary) = grid_samples(n, m);
        // A segment's boundary is its two endpoints.
        if interior.len() < 100 || boundary.len() < if n == 1 { 2 } else { 100 } {
            return Err(format!("dim {n}: too few samples"));
        }
        for s in fixed_simplices_of_dim(n) {
            let samples = interior
                .iter()
                .map(|c| (c, false))
                .chain(boundary.iter().map(|c| (c, true)));
            for (coords, on_boundary) in samples {
                let x = s.point_at(coords);
                let u = s.ball_map(&x).map_err(|e| format!("{x}: {e}"))?;
                if s.ball_map_inverse(&u).map_err(|e| e.to_string())? != x {
                    return Err(format!("inverse of the image of {x} differs"));
                }
                let n2 = u.norm_sq();
                if on_boundary != n2.is_one() || !on_boundary != (n2 < Scalar::one()) {
                    return Err(format!("{x}: norm^2 {n2} but boundary = {on_boundary}"));
                }
            }
            if !s.ball_map(&s.barycenter()).unwrap().norm_sq().is_zero() {
                return Err("barycenter does not map to the origin".into());
            }
        }
        counts.insert(n, (interior.len(), boundary.len()));
    }
    Ok(counts)
}

/// Rational points on the unit sphere by inverse stereographic projection.
pub fn sphere_point(t: &[i64], d: i64) -> Vector {
    let t: Vec<Scalar> = t.iter().map(|&x| q(x, d)).collect();
    let s: Scalar = t.iter().map(|x| x * x).fold(Scalar::zero(), |a, b| a + b);
    let denom = &s + Scalar::one();
    let mut v: Vec<Scalar> = t
        .iter()
        .map(|x| x * Scalar::from_integer(2.into()) / &denom)
        .collect();
    v.push((&s - Scalar::one()) / &denom);
    Vector::new(v)
}

pub type BallCase = (GeometricSimplex, Vec<i64>, i64, i64);

pub fn ball_cases() -> impl Strategy<Value = BallCase> {
    simplex(3)
        .prop_filter("positive dimension", |s| s.dim() > 0)
        .prop_flat_map(|s| {
            let n = s.dim();
            (
                Just(s),
                prop::collection::vec(-6..=6i64, n - 1),
                1..=4i64,
                0..=8i64,
            )
        })
}

/// Ball points of radius r/8 on rational directions map back exactly.
pub fn ball_inverse_then_forward((s, t, d, r): BallCase) -> Check {
    let u = sphere_point(&t, d).scale(&q(r, 8));
    prop_assert_eq!(u.norm_sq(), q(r * r, 64));
    let x = s.ball_map_inverse_coords(&u).unwrap();
    let class = s.classify(&x).unwrap();
    prop_assert_eq!(class.is_boundary(), r == 8);
    prop_assert_eq!(class.is_interior(), r < 8);
    prop_assert_eq!(s.ball_map(&x).unwrap().exact_coords(), Some(u));
    Ok(())
}

pub fn ball_round_trip((s, w): (GeometricSimplex, BarycentricCoords)) -> Check {
    let x = s.point_at(&w);
    let u = s.ball_map(&x).unwrap();
    prop_assert_eq!(s.ball_map_inverse(&u).unwrap(), x);
    prop_assert_eq!(u.norm_sq() < Scalar::one(), w.all_positive());
    prop_assert_eq!(u.norm_sq().is_one(), !w.all_positive());
    Ok(())
}
