//! `scx`: command-line front-end for the `simplicial` library.
//!
//! Exit codes: 0 success or positive verdict, 1 negative verdict or domain
//! error, 2 usage or parse error.

mod commands;

use std::ffi::OsString;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

#[derive(Parser)]
#[command(
    name = "scx",
    version,
    about = "Exact queries on simplices and simplicial complexes"
)]
struct Cli {
    /// Report style.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    /// JSON, for pipelines.
    Structured,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Definitional,
    DisjointInteriors,
    Both,
}

/// Points are comma-separated rationals such as `1/2,0,-3`.
#[derive(Subcommand)]
pub enum Command {
    /// Geometric independence of a point set.
    Independent {
        #[arg(required = true)]
        points: Vec<String>,
    },
    /// Membership of a point in the plane spanned by independent points.
    PlaneMember {
        #[arg(required = true)]
        points: Vec<String>,
        #[arg(long, allow_hyphen_values = true)]
        point: String,
    },
    /// Whether adding a point keeps the set independent.
    Extend {
        #[arg(required = true)]
        points: Vec<String>,
        #[arg(long, allow_hyphen_values = true)]
        point: String,
    },
    /// Barycentric coordinates of a point with respect to a simplex.
    Barycentric {
        #[arg(required = true)]
        points: Vec<String>,
        #[arg(long, allow_hyphen_values = true)]
        point: String,
    },
    /// Interior, boundary (with carrier face) or outside.
    Classify {
        #[arg(required = true)]
        points: Vec<String>,
        #[arg(long, allow_hyphen_values = true)]
        point: String,
    },
    /// The k-dimensional faces of a simplex, by vertex index.
    Faces {
        #[arg(required = true)]
        points: Vec<String>,
        #[arg(short)]
        k: usize,
    },
    /// Writes a point as a combination of vertex 0 and the opposite face.
    Cone {
        #[arg(required = true)]
        points: Vec<String>,
        #[arg(long, allow_hyphen_values = true)]
        point: String,
    },
    /// Where a ray from an interior point leaves a simplex.
    Ray {
        #[arg(required = true)]
        points: Vec<String>,
        #[arg(long, allow_hyphen_values = true)]
        origin: String,
        #[arg(long, allow_hyphen_values = true)]
        direction: String,
    },
    /// Image of a point of a simplex under the radial map to the unit ball.
    Ball {
        #[arg(required = true)]
        points: Vec<String>,
        #[arg(long, allow_hyphen_values = true)]
        point: String,
    },
    /// Applies x -> A x + b to each point.
    AffineMap {
        #[arg(required = true)]
        points: Vec<String>,
        /// Matrix rows separated by `;`, e.g. `2,1;1,3`.
        #[arg(long, allow_hyphen_values = true)]
        matrix: String,
        #[arg(long, allow_hyphen_values = true)]
        translation: String,
    },
    /// Validates a complex file.
    Validate {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = Method::Both)]
        method: Method,
    },
    /// Dimension of a complex.
    Dimension { file: PathBuf },
    /// Labels of the 0-simplices.
    Vertices { file: PathBuf },
    /// Simplices of dimension at most p.
    Skeleton {
        file: PathBuf,
        #[arg(short)]
        p: usize,
    },
    /// Simplices having v as a vertex.
    Star {
        file: PathBuf,
        #[arg(short)]
        v: String,
    },
    /// Smallest subcomplex containing the star of v.
    ClosedStar {
        file: PathBuf,
        #[arg(short)]
        v: String,
    },
    /// Simplices of the closed star that miss v.
    Link {
        file: PathBuf,
        #[arg(short)]
        v: String,
    },
    /// Carrier simplex and coordinates of a point of the realization.
    Locate {
        file: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        point: String,
    },
    /// Barycentric coordinate function of one vertex.
    Lambda {
        file: PathBuf,
        #[arg(short)]
        v: String,
        #[arg(long, allow_hyphen_values = true)]
        point: String,
    },
    /// Piecewise-linear map from the file's values block.
    Eval {
        file: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        point: String,
    },
    /// Bounding box, simplex counts and compactness.
    Summary { file: PathBuf },
    /// Rewrites a file in canonical form on stdout.
    Canonical { file: PathBuf },
}

/// Coordinates such as `-1,2` would be taken for flags, so they get a leading
/// space, which the point parser ignores.
fn shield_coordinates(arg: OsString) -> OsString {
    match arg.to_str() {
        Some(text)
            if text.starts_with('-')
                && text[1..].starts_with(|c: char| c.is_ascii_digit() || c == '.') =>
        {
            format!(" {text}").into()
        }
        _ => arg,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse_from(std::env::args_os().map(shield_coordinates));
    let outcome = commands::run(cli.command);
    outcome.emit(cli.format)
}
