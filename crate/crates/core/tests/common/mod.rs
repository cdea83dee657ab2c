#![allow(dead_code)]

pub mod props;

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use proptest::prelude::*;
use simplicial::complex::face_closure;
use simplicial::{
    AbstractSimplex, BarycentricCoords, GeometricSimplex, Scalar, SimplicialComplex, Vector,
};

pub fn q(n: i64, d: i64) -> Scalar {
    Scalar::new(BigInt::from(n), BigInt::from(d))
}

pub fn ints(v: &[i64]) -> Vector {
    Vector::from_ints(v)
}

pub fn label(i: usize) -> String {
    format!("a{i}")
}

pub fn points(ambient: usize, count: usize, range: i64) -> impl Strategy<Value = Vec<Vec<i64>>> {
    prop::collection::vec(prop::collection::vec(-range..=range, ambient), count)
}

/// A geometrically independent simplex with small integer vertices, in
/// ambient dimension `1..=max_ambient`.
pub fn simplex(max_ambient: usize) -> impl Strategy<Value = GeometricSimplex> {
    (1..=max_ambient)
        .prop_flat_map(|m| (Just(m), 0..=m))
        .prop_flat_map(|(m, n)| points(m, n + 1, 4))
        .prop_filter_map("dependent vertices", |pts| {
            let vs = pts.iter().map(|p| ints(p)).collect();
            GeometricSimplex::from_points(vs).ok()
        })
}

/// Strictly positive weights summing to one.
pub fn positive_weights(n: usize) -> impl Strategy<Value = BarycentricCoords> {
    prop::collection::vec(1..=20i64, n).prop_map(normalize)
}

/// Nonnegative weights summing to one, with zeros likely.
pub fn nonnegative_weights(n: usize) -> impl Strategy<Value = BarycentricCoords> {
    prop::collection::vec(prop_oneof![Just(0i64), 1..=20i64], n)
        .prop_filter("all zero", |w| w.iter().any(|&x| x > 0))
        .prop_map(normalize)
}

pub fn normalize(w: Vec<i64>) -> BarycentricCoords {
    let total: i64 = w.iter().sum();
    BarycentricCoords::new(w.iter().map(|&x| q(x, total)).collect()).unwrap()
}

pub fn simplex_and_weights(
    max_ambient: usize,
    positive: bool,
) -> impl Strategy<Value = (GeometricSimplex, BarycentricCoords)> {
    simplex(max_ambient).prop_flat_map(move |s| {
        let n = s.vertices().len();
        let w = if positive {
            positive_weights(n).boxed()
        } else {
            nonnegative_weights(n).boxed()
        };
        (Just(s), w)
    })
}

fn table(pts: &[Vec<i64>]) -> BTreeMap<String, Vector> {
    pts.iter()
        .enumerate()
        .map(|(i, p)| (label(i), ints(p)))
        .collect()
}

fn subset(mask: u32, n: usize) -> Option<AbstractSimplex> {
    let labels: Vec<String> = (0..n).filter(|i| mask & (1 << i) != 0).map(label).collect();
    AbstractSimplex::new(labels).ok()
}

/// Random complexes with up to six vertices in ambient dimension at most
/// three: arbitrary simplex lists, face-closed ones, and valid complexes with
/// one simplex removed. Roughly half come out valid.
pub fn any_complex() -> impl Strategy<Value = SimplicialComplex> {
    prop_oneof![
        raw_complex(false),
        raw_complex(true),
        valid_complex(),
        valid_complex()
            .prop_flat_map(|k| {
                let n = k.len();
                (Just(k), 0..n)
            })
            .prop_map(|(k, drop)| {
                let kept: Vec<_> = k
                    .simplices()
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| *i != drop)
                    .map(|(_, s)| s.clone())
                    .collect();
                if kept.is_empty() {
                    return k;
                }
                SimplicialComplex::new(k.ambient_dim(), k.vertex_table().clone(), kept).unwrap()
            }),
    ]
}

fn raw_complex(closed: bool) -> impl Strategy<Value = SimplicialComplex> {
    (1..=3usize, 1..=6usize)
        .prop_flat_map(|(m, n)| {
            (
                Just(m),
                points(m, n, 2),
                prop::collection::vec(1u32..(1 << n), 1..=4),
            )
        })
        .prop_map(move |(m, pts, masks)| {
            let n = pts.len();
            let mut set: BTreeSet<AbstractSimplex> =
                masks.iter().filter_map(|&k| subset(k, n)).collect();
            if closed {
                set = face_closure(&set);
            }
            SimplicialComplex::new(m, table(&pts), set).unwrap()
        })
}

/// Valid complexes built greedily: candidate simplices are added with all
/// their faces whenever the result stays valid.
pub fn valid_complex() -> impl Strategy<Value = SimplicialComplex> {
    (1..=3usize, 1..=6usize)
        .prop_flat_map(|(m, n)| {
            (
                Just(m),
                points(m, n, 3),
                prop::collection::vec(1u32..(1 << n), 1..=6),
            )
        })
        .prop_map(|(m, pts, masks)| {
            let n = pts.len();
            let vertex_table = table(&pts);
            let mut current: BTreeSet<AbstractSimplex> = BTreeSet::new();
            for mask in std::iter::once(1u32).chain(masks) {
                let Some(s) = subset(mask, n) else { continue };
                let mut trial = current.clone();
                trial.extend(face_closure(&BTreeSet::from([s])));
                let k = SimplicialComplex::new(m, vertex_table.clone(), trial.clone()).unwrap();
                if k.is_valid() {
                    current = trial;
                }
            }
            SimplicialComplex::new(m, vertex_table, current).unwrap()
        })
}

/// A valid complex together with a point of its realization, taken from a
/// random simplex with random positive weights.
pub fn complex_and_point() -> impl Strategy<Value = (SimplicialComplex, AbstractSimplex, Vector)> {
    valid_complex()
        .prop_flat_map(|k| {
            let n = k.len();
            (Just(k), 0..n)
        })
        .prop_flat_map(|(k, i)| {
            let s = k.simplices().iter().nth(i).unwrap().clone();
            let w = positive_weights(s.labels().len());
            (Just(k), Just(s), w)
        })
        .prop_map(|(k, s, w)| {
            let x = k.geometric(&s).unwrap().point_at(&w);
            (k, s, x)
        })
}
