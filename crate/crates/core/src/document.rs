//! The `.scx` complex document: a strict TOML schema.
//!
//! ```toml
//! ambient_dim = 2
//! simplices = [
//!     ["a0"],
//!     ["a1"],
//!     ["a0", "a1"],
//! ]
//!
//! [values]
//! a0 = "0"
//! a1 = "1/2"
//!
//! [vertices]
//! a0 = ["0", "0"]
//! a1 = ["4", "0"]
//! ```
//!
//! Coordinates and values are rational literals (`"p/q"` or integers).
//! Values are optional and may be scalars or coordinate-style lists.
//! Labels use `[A-Za-z0-9_-]`. Unknown keys, duplicate labels, ragged
//! coordinates, bad literals and an empty `simplices` list are rejected with
//! a line and column.
//!
//! [`ComplexDocument::to_canonical_string`] writes keys and simplices in
//! sorted order with every number quoted, so parsing its output gives back
//! an equal document.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::{self, Write as _};
use std::ops::Range;

use serde::de::{self, Deserializer, Visitor};
use serde::Deserialize;
use toml::Spanned;

use crate::complex::{AbstractSimplex, SimplicialComplex};
use crate::linalg::{parse_scalar, Scalar, Vector};
use crate::realization::{PlMap, PlValue};

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("line {line}, column {column}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl ParseError {
    fn at(text: &str, offset: usize, message: impl Into<String>) -> Self {
        let before = &text[..offset.min(text.len())];
        let line = before.matches('\n').count() + 1;
        let column = before.chars().rev().take_while(|&c| c != '\n').count() + 1;
        ParseError {
            line,
            column,
            message: message.into(),
        }
    }
}

/// A parsed `.scx` file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComplexDocument {
    pub ambient_dim: usize,
    pub vertices: BTreeMap<String, Vector>,
    pub simplices: BTreeSet<AbstractSimplex>,
    pub values: Option<BTreeMap<String, PlValue>>,
}

/// An integer or a quoted rational literal.
struct Literal(String);

impl<'de> Deserialize<'de> for Literal {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        struct V;
        impl Visitor<'_> for V {
            type Value = Literal;
            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("an integer or a rational literal string")
            }
            fn visit_i64<E: de::Error>(self, v: i64) -> Result<Literal, E> {
                Ok(Literal(v.to_string()))
            }
            fn visit_u64<E: de::Error>(self, v: u64) -> Result<Literal, E> {
                Ok(Literal(v.to_string()))
            }
            fn visit_str<E: de::Error>(self, v: &str) -> Result<Literal, E> {
                Ok(Literal(v.to_string()))
            }
        }
        d.deserialize_any(V)
    }
}

#[derive(Deserialize)]
#[serde(untagged)]
enum RawValue {
    One(Literal),
    Many(Vec<Literal>),
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawDocument {
    ambient_dim: Spanned<i64>,
    simplices: Spanned<Vec<Spanned<Vec<Spanned<String>>>>>,
    vertices: BTreeMap<String, Spanned<Vec<Spanned<Literal>>>>,
    values: Option<BTreeMap<String, Spanned<RawValue>>>,
}

fn valid_label(label: &str) -> bool {
    !label.is_empty()
        && label
            .chars()
            .all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '-')
}

impl ComplexDocument {
    pub fn parse(text: &str) -> Result<Self, ParseError> {
        let raw: RawDocument = toml::from_str(text).map_err(|e| {
            let offset = e.span().map_or(0, |s| s.start);
            ParseError::at(text, offset, e.message().trim())
        })?;
        let fail = |span: Range<usize>, msg: String| ParseError::at(text, span.start, msg);

        let ambient_dim = match usize::try_from(*raw.ambient_dim.get_ref()) {
            Ok(n) if n > 0 => n,
            _ => {
                return Err(fail(
                    raw.ambient_dim.span(),
                    "ambient_dim must be a positive integer".into(),
                ))
            }
        };

        let literal = |lit: &Spanned<Literal>| -> Result<Scalar, ParseError> {
            parse_scalar(&lit.get_ref().0).map_err(|e| fail(lit.span(), e.to_string()))
        };

        let mut vertices = BTreeMap::new();
        for (label, coords) in &raw.vertices {
            if !valid_label(label) {
                return Err(fail(
                    coords.span(),
                    format!("invalid vertex label {label:?}"),
                ));
            }
            if coords.get_ref().len() != ambient_dim {
                return Err(fail(
                    coords.span(),
                    format!(
                        "vertex {label:?} has {} coordinates, expected {ambient_dim}",
                        coords.get_ref().len()
                    ),
                ));
            }
            let point = coords
                .get_ref()
                .iter()
                .map(literal)
                .collect::<Result<Vector, _>>()?;
            vertices.insert(label.clone(), point);
        }

        if raw.simplices.get_ref().is_empty() {
            return Err(fail(
                raw.simplices.span(),
                "simplices must list at least one simplex".into(),
            ));
        }
        let mut simplices = BTreeSet::new();
        for entry in raw.simplices.get_ref() {
            for label in entry.get_ref() {
                if !vertices.contains_key(label.get_ref()) {
                    return Err(fail(
                        label.span(),
                        format!("unknown vertex label {:?}", label.get_ref()),
                    ));
                }
            }
            let simplex = AbstractSimplex::new(entry.get_ref().iter().map(|l| l.get_ref().clone()))
                .map_err(|e| fail(entry.span(), e.to_string()))?;
            if !simplices.insert(simplex.clone()) {
                return Err(fail(
                    entry.span(),
                    format!("simplex {simplex} listed twice"),
                ));
            }
        }

        let values = match raw.values {
            None => None,
            Some(raw_values) => {
                let mut values = BTreeMap::new();
                for (label, value) in &raw_values {
                    if !vertices.contains_key(label) {
                        return Err(fail(
                            value.span(),
                            format!("value for unknown vertex {label:?}"),
                        ));
                    }
                    let lit = |l: &Literal| {
                        parse_scalar(&l.0).map_err(|e| fail(value.span(), e.to_string()))
                    };
                    let parsed = match value.get_ref() {
                        RawValue::One(l) => PlValue::Scalar(lit(l)?),
                        RawValue::Many(ls) => {
                            PlValue::Vector(ls.iter().map(lit).collect::<Result<Vector, _>>()?)
                        }
                    };
                    values.insert(label.clone(), parsed);
                }
                PlMap::new(values.clone())
                    .map_err(|e| ParseError::at(text, 0, format!("values: {e}")))?;
                Some(values)
            }
        };

        Ok(ComplexDocument {
            ambient_dim,
            vertices,
            simplices,
            values,
        })
    }

    pub fn from_complex(k: &SimplicialComplex, values: Option<&PlMap>) -> Self {
        ComplexDocument {
            ambient_dim: k.ambient_dim(),
            vertices: k.vertex_table().clone(),
            simplices: k.simplices().clone(),
            values: values.map(|f| f.values().clone()),
        }
    }

    pub fn complex(&self) -> SimplicialComplex {
        SimplicialComplex::new(
            self.ambient_dim,
            self.vertices.clone(),
            self.simplices.iter().cloned(),
        )
        .expect("checked while parsing")
    }

    pub fn pl_map(&self) -> Option<PlMap> {
        self.values
            .as_ref()
            .map(|v| PlMap::new(v.clone()).expect("checked while parsing"))
    }

    /// The canonical text form.
    pub fn to_canonical_string(&self) -> String {
        fn quoted<'a>(xs: impl Iterator<Item = &'a Scalar>) -> String {
            let parts: Vec<String> = xs.map(|x| format!("\"{x}\"")).collect();
            format!("[{}]", parts.join(", "))
        }
        let mut out = String::new();
        writeln!(out, "ambient_dim = {}", self.ambient_dim).unwrap();
        out.push_str("simplices = [\n");
        for s in &self.simplices {
            let labels: Vec<String> = s.labels().iter().map(|l| format!("\"{l}\"")).collect();
            writeln!(out, "    [{}],", labels.join(", ")).unwrap();
        }
        out.push_str("]\n");
        if let Some(values) = &self.values {
            out.push_str("\n[values]\n");
            for (label, value) in values {
                match value {
                    PlValue::Scalar(x) => writeln!(out, "{label} = \"{x}\""),
                    PlValue::Vector(v) => writeln!(out, "{label} = {}", quoted(v.iter())),
                }
                .unwrap();
            }
        }
        out.push_str("\n[vertices]\n");
        for (label, point) in &self.vertices {
            writeln!(out, "{label} = {}", quoted(point.iter())).unwrap();
        }
        out
    }
}
