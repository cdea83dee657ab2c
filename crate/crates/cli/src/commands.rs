use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::path::Path;
use std::process::ExitCode;

use serde_json::{json, Value};
use simplicial::complex::{BadIntersection, Diagnosis, ValidationMethod};
use simplicial::document::ComplexDocument;
use simplicial::{
    AbstractSimplex, AffineMap, BarycentricCoords, BarycentricResult, Error, Extension,
    GeometricSimplex, Matrix, Membership, PointClassification, PointSet, Ray, RayHit, Scalar,
    SimplicialComplex, ValidationReport, Vector,
};

use crate::{Command, Format, Method};

/// What a command prints and how it exits.
pub struct Outcome {
    code: u8,
    text: String,
    json: Value,
    is_error: bool,
}

impl Outcome {
    fn new(code: u8, text: String, json: Value) -> Self {
        Outcome {
            code,
            text,
            json,
            is_error: false,
        }
    }

    fn ok(text: String, json: Value) -> Self {
        Self::new(0, text, json)
    }

    fn verdict(positive: bool, text: String, json: Value) -> Self {
        Self::new(if positive { 0 } else { 1 }, text, json)
    }

    pub fn emit(self, format: Format) -> ExitCode {
        let body = match format {
            Format::Text => self.text,
            Format::Structured => {
                let mut s =
                    serde_json::to_string_pretty(&self.json).expect("json values serialize");
                s.push('\n');
                s
            }
        };
        if self.is_error {
            eprint!("{body}");
        } else {
            print!("{body}");
        }
        ExitCode::from(self.code)
    }
}

pub enum Failure {
    /// Bad arguments or an unreadable/invalid file: exit 2.
    Usage(String),
    /// A library error: exit 1.
    Domain(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Domain(e)
    }
}

impl Failure {
    fn into_outcome(self) -> Outcome {
        let (code, name, message) = match self {
            Failure::Usage(m) => (2, "UsageError".to_string(), m),
            Failure::Domain(e) => (1, e.name().to_string(), e.to_string()),
        };
        Outcome {
            code,
            text: format!("error: {name}: {message}\n"),
            json: json!({ "error": name, "message": message }),
            is_error: true,
        }
    }
}

type CmdResult = Result<Outcome, Failure>;

pub fn run(command: Command) -> Outcome {
    dispatch(command).unwrap_or_else(Failure::into_outcome)
}

fn dispatch(command: Command) -> CmdResult {
    match command {
        Command::Independent { points } => independent(&points),
        Command::PlaneMember { points, point } => plane_member(&points, &point),
        Command::Extend { points, point } => extend(&points, &point),
        Command::Barycentric { points, point } => barycentric(&points, &point),
        Command::Classify { points, point } => classify(&points, &point),
        Command::Faces { points, k } => faces(&points, k),
        Command::Cone { points, point } => cone(&points, &point),
        Command::Ray {
            points,
            origin,
            direction,
        } => ray(&points, &origin, &direction),
        Command::Ball { points, point } => ball(&points, &point),
        Command::AffineMap {
            points,
            matrix,
            translation,
        } => affine_map(&points, &matrix, &translation),
        Command::Validate { file, method } => validate(&file, method),
        Command::Dimension { file } => {
            let k = load(&file)?.complex();
            let d = k.dimension()?;
            Ok(Outcome::ok(format!("{d}\n"), json!({ "dimension": d })))
        }
        Command::Vertices { file } => {
            let v = load(&file)?.complex().vertices();
            Ok(Outcome::ok(lines(&v), json!({ "vertices": v })))
        }
        Command::Skeleton { file, p } => {
            let k = load(&file)?.complex().skeleton(p);
            Ok(listing("skeleton", k.simplices()))
        }
        Command::Star { file, v } => Ok(listing("star", &load(&file)?.complex().star(&v)?)),
        Command::ClosedStar { file, v } => {
            let k = load(&file)?.complex().closed_star(&v)?;
            Ok(listing("closed_star", k.simplices()))
        }
        Command::Link { file, v } => Ok(listing("link", &load(&file)?.complex().link(&v)?)),
        Command::Locate { file, point } => locate(&file, &point),
        Command::Lambda { file, v, point } => {
            let k = load(&file)?.complex();
            let value = k.lambda(&v, &parse_point(&point)?)?;
            Ok(Outcome::ok(
                format!("{value}\n"),
                json!({ "vertex": v, "lambda": lit(&value) }),
            ))
        }
        Command::Eval { file, point } => eval(&file, &point),
        Command::Summary { file } => summary(&file),
        Command::Canonical { file } => {
            let text = load(&file)?.to_canonical_string();
            Ok(Outcome::ok(text.clone(), json!({ "canonical": text })))
        }
    }
}

fn parse_point(text: &str) -> Result<Vector, Failure> {
    Vector::parse(text).map_err(|e| Failure::Usage(format!("point {text:?}: {e}")))
}

fn parse_points(texts: &[String]) -> Result<Vec<Vector>, Failure> {
    texts.iter().map(|t| parse_point(t)).collect()
}

fn simplex(texts: &[String]) -> Result<GeometricSimplex, Failure> {
    Ok(GeometricSimplex::from_points(parse_points(texts)?)?)
}

fn load(path: &Path) -> Result<ComplexDocument, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    ComplexDocument::parse(&text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn lit(x: &Scalar) -> Value {
    Value::String(x.to_string())
}

fn lits<'a>(xs: impl IntoIterator<Item = &'a Scalar>) -> Value {
    Value::Array(xs.into_iter().map(lit).collect())
}

fn coords_json(c: &BarycentricCoords) -> Value {
    lits(c.coeffs())
}

fn lines(items: &[impl ToString]) -> String {
    items
        .iter()
        .map(|i| format!("{}\n", i.to_string()))
        .collect()
}

fn listing(what: &str, set: &BTreeSet<AbstractSimplex>) -> Outcome {
    let items: Vec<&AbstractSimplex> = set.iter().collect();
    Outcome::ok(lines(&items), json!({ what: set }))
}

fn independent(points: &[String]) -> CmdResult {
    let ind = PointSet::new(parse_points(points)?)?.independence();
    let text = format!(
        "{}\nrank {} (required {})\n",
        if ind.independent {
            "independent"
        } else {
            "dependent"
        },
        ind.rank,
        ind.required
    );
    let json = json!({
        "independent": ind.independent,
        "rank": ind.rank,
        "required": ind.required,
    });
    Ok(Outcome::verdict(ind.independent, text, json))
}

fn plane_member(points: &[String], point: &str) -> CmdResult {
    let plane = PointSet::new(parse_points(points)?)?.plane()?;
    Ok(match plane.membership(&parse_point(point)?)? {
        Membership::OnPlane(c) => Outcome::ok(
            format!("on plane\ncoefficients {c}\n"),
            json!({ "on_plane": true, "coefficients": coords_json(&c) }),
        ),
        Membership::OffPlane => {
            Outcome::verdict(false, "off plane\n".into(), json!({ "on_plane": false }))
        }
    })
}

fn extend(points: &[String], point: &str) -> CmdResult {
    let set = PointSet::new(parse_points(points)?)?;
    Ok(match set.extend(&parse_point(point)?)? {
        Extension::Extended {
            rank_before,
            rank_after,
        } => Outcome::ok(
            format!("extended\nrank {rank_before} -> {rank_after}\n"),
            json!({ "extended": true, "rank_before": rank_before, "rank_after": rank_after }),
        ),
        Extension::NotExtendable { rank } => Outcome::verdict(
            false,
            format!("not extendable\nrank {rank}\n"),
            json!({ "extended": false, "rank": rank }),
        ),
    })
}

fn barycentric(points: &[String], point: &str) -> CmdResult {
    let s = simplex(points)?;
    Ok(match s.barycentric(&parse_point(point)?)? {
        BarycentricResult::InPlane(c) => Outcome::ok(
            format!("{c}\n"),
            json!({ "on_plane": true, "coordinates": coords_json(&c) }),
        ),
        BarycentricResult::OffPlane => {
            Outcome::verdict(false, "off plane\n".into(), json!({ "on_plane": false }))
        }
    })
}

fn classify(points: &[String], point: &str) -> CmdResult {
    let s = simplex(points)?;
    Ok(match s.classify(&parse_point(point)?)? {
        PointClassification::Interior(c) => Outcome::ok(
            format!("interior\ncoordinates {c}\n"),
            json!({ "class": "interior", "coordinates": coords_json(&c) }),
        ),
        PointClassification::Boundary { carrier, coords } => Outcome::ok(
            format!("boundary\ncarrier face {carrier:?}\ncoordinates {coords}\n"),
            json!({ "class": "boundary", "carrier": carrier, "coordinates": coords_json(&coords) }),
        ),
        PointClassification::Outside(c) => {
            let mut text = "outside\n".to_string();
            match &c {
                Some(c) => writeln!(text, "coordinates {c}").unwrap(),
                None => text.push_str("off plane\n"),
            }
            Outcome::verdict(
                false,
                text,
                json!({ "class": "outside", "coordinates": c.as_ref().map(coords_json) }),
            )
        }
    })
}

fn faces(points: &[String], k: usize) -> CmdResult {
    let idx = simplex(points)?.face_indices(k)?;
    let text = idx.iter().map(|f| format!("{f:?}\n")).collect();
    Ok(Outcome::ok(text, json!({ "faces": idx })))
}

fn cone(points: &[String], point: &str) -> CmdResult {
    let c = simplex(points)?.cone_decompose(&parse_point(point)?)?;
    let mut text = format!("apex weight {}\n", c.apex_weight);
    let base = match &c.base {
        Some((y, coords)) => {
            writeln!(text, "base point {y}\nbase coordinates {coords}").unwrap();
            json!({ "point": y, "coordinates": coords_json(coords) })
        }
        None => {
            text.push_str("base point none\n");
            Value::Null
        }
    };
    Ok(Outcome::ok(
        text,
        json!({ "apex_weight": lit(&c.apex_weight), "base": base }),
    ))
}

fn ray(points: &[String], origin: &str, direction: &str) -> CmdResult {
    let s = simplex(points)?;
    let r = Ray::new(parse_point(origin)?, parse_point(direction)?)?;
    Ok(match s.ray_boundary_hit(&r)? {
        RayHit::Hit {
            t_star,
            point,
            face,
        } => Outcome::ok(
            format!("t* {t_star}\nhit {point}\nface {face:?}\n"),
            json!({ "t_star": lit(&t_star), "point": point, "face": face }),
        ),
        RayHit::LeavesPlane => Outcome::verdict(
            false,
            "leaves plane\n".into(),
            json!({ "leaves_plane": true }),
        ),
    })
}

fn ball(points: &[String], point: &str) -> CmdResult {
    let u = simplex(points)?.ball_map(&parse_point(point)?)?;
    let position = if u.on_sphere() { "sphere" } else { "interior" };
    let mut text = format!(
        "radius {}\nnorm^2 {}\n{position}\n",
        u.radius(),
        u.norm_sq()
    );
    let exact = u.exact_coords();
    match &exact {
        Some(v) => writeln!(text, "coordinates {v}").unwrap(),
        None => {
            let approx: Vec<String> = u
                .approx_coords()
                .iter()
                .map(|x| format!("{x:.6}"))
                .collect();
            writeln!(text, "coordinates ~{}", approx.join(",")).unwrap();
        }
    }
    Ok(Outcome::ok(
        text,
        json!({
            "radius": lit(u.radius()),
            "norm_sq": lit(&u.norm_sq()),
            "position": position,
            "offset": u.offset(),
            "coordinates": exact,
        }),
    ))
}

fn affine_map(points: &[String], matrix: &str, translation: &str) -> CmdResult {
    let rows = matrix
        .split(';')
        .map(|r| parse_point(r).map(Vector::into_entries))
        .collect::<Result<Vec<_>, _>>()?;
    let m = Matrix::from_rows(rows).map_err(|e| Failure::Usage(format!("matrix: {e}")))?;
    let map = AffineMap::new(m, parse_point(translation)?)?;
    let pts = parse_points(points)?;
    let images = pts
        .iter()
        .map(|p| map.apply(p))
        .collect::<Result<Vec<_>, _>>()?;
    let text = pts
        .iter()
        .zip(&images)
        .map(|(p, q)| format!("{p} -> {q}\n"))
        .collect();
    Ok(Outcome::ok(
        text,
        json!({ "images": images, "invertible": map.is_invertible() }),
    ))
}

fn describe(b: &BadIntersection) -> String {
    match &b.diagnosis {
        Diagnosis::SharedFaceMissing { face } => {
            format!("{} & {}: shared face {face} missing", b.first, b.second)
        }
        Diagnosis::InteriorsMeet { faces, witness } => format!(
            "{} & {}: interiors of {} and {} meet at {witness}",
            b.first, b.second, faces.0, faces.1
        ),
    }
}

fn report_text(title: &str, r: &ValidationReport) -> String {
    let mut t = format!("{title}: {}\n", if r.ok() { "valid" } else { "invalid" });
    let section = |t: &mut String, name: &str, items: Vec<String>| {
        if items.is_empty() {
            writeln!(t, "  {name}: none").unwrap();
        } else {
            writeln!(t, "  {name}:").unwrap();
            for i in items {
                writeln!(t, "    {i}").unwrap();
            }
        }
    };
    section(
        &mut t,
        "missing faces",
        r.missing_faces
            .iter()
            .map(|(s, f)| format!("{s} lacks {f}"))
            .collect(),
    );
    section(
        &mut t,
        "dependent simplices",
        r.dependent_simplices
            .iter()
            .map(ToString::to_string)
            .collect(),
    );
    section(
        &mut t,
        "bad intersections",
        r.bad_intersections.iter().map(describe).collect(),
    );
    t
}

fn report_json(r: &ValidationReport) -> Value {
    let mut v = serde_json::to_value(r).expect("reports serialize");
    v["ok"] = Value::Bool(r.ok());
    v
}

fn validate(file: &Path, method: Method) -> CmdResult {
    let k = load(file)?.complex();
    let methods: &[(ValidationMethod, &str)] = match method {
        Method::Definitional => &[(ValidationMethod::Definitional, "definitional")],
        Method::DisjointInteriors => &[(ValidationMethod::DisjointInteriors, "disjoint-interiors")],
        Method::Both => &[
            (ValidationMethod::Definitional, "definitional"),
            (ValidationMethod::DisjointInteriors, "disjoint-interiors"),
        ],
    };
    let mut text = String::new();
    let mut json = serde_json::Map::new();
    let mut verdicts = Vec::new();
    for (m, name) in methods {
        let report = k.validate(*m)?;
        text.push_str(&report_text(name, &report));
        json.insert(name.to_string(), report_json(&report));
        verdicts.push(report.ok());
    }
    let ok = verdicts.iter().all(|&v| v);
    if verdicts.iter().any(|&v| v != ok) {
        text.push_str("criteria disagree\n");
    }
    json.insert("ok".into(), Value::Bool(ok));
    Ok(Outcome::verdict(ok, text, Value::Object(json)))
}

fn locate(file: &Path, point: &str) -> CmdResult {
    let k = load(file)?.complex();
    let c = k.locate(&parse_point(point)?)?;
    Ok(Outcome::ok(
        format!("carrier {}\ncoordinates {}\n", c.simplex, c.coords),
        json!({ "carrier": c.simplex, "coordinates": coords_json(&c.coords) }),
    ))
}

fn eval(file: &Path, point: &str) -> CmdResult {
    let doc = load(file)?;
    let f = doc
        .pl_map()
        .ok_or_else(|| Failure::Usage(format!("{}: no [values] block", file.display())))?;
    let value = doc.complex().eval_pl(&f, &parse_point(point)?)?;
    Ok(Outcome::ok(format!("{value}\n"), json!({ "value": value })))
}

fn summary(file: &Path) -> CmdResult {
    let k: SimplicialComplex = load(file)?.complex();
    let s = k.summary()?;
    let (lo, hi) = &s.bounding_box;
    let mut text = String::from("bounding box");
    for (a, b) in lo.iter().zip(hi.iter()) {
        write!(text, " [{a},{b}]").unwrap();
    }
    text.push('\n');
    for (d, n) in &s.counts {
        writeln!(text, "{d}-simplices {n}").unwrap();
    }
    writeln!(text, "compact {}", s.is_compact).unwrap();
    Ok(Outcome::ok(
        text,
        serde_json::to_value(&s).expect("summaries serialize"),
    ))
}
