use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use gft_core::catalog::CatalogError;
use gft_core::margins::{classify, scan, ClassSpec, GridConfig, MarginError, Theorem};
use gft_core::operators::OperatorError;
use gft_core::oracle::{
    boundary_curve_with, convexity_defect, oracle_concave, real_axis_crossings, OracleError, PolePlacement,
    ORACLE_RADII,
};
use gft_core::report::{curve_csv, margins_csv, to_json};
use gft_core::verify::run_suite;
use gft_core::FamilySpec;
use serde::Serialize;

const EXIT_VIOLATION: u8 = 1;
const EXIT_INPUT: u8 = 2;
const EXIT_NUMERICAL: u8 = 3;

#[derive(Parser)]
#[command(name = "gft", version, about = "Numerical membership tests for concave univalent maps of the unit disk")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run every margin scan of a class and the boundary-curve oracle.
    Classify {
        #[arg(long)]
        function: String,
        /// co | coalpha:alpha=R | co0 | cop:p=R
        #[arg(long)]
        class: String,
        #[command(flatten)]
        grid: GridArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Scan one theorem margin over the grid.
    Margins {
        #[arg(long)]
        function: String,
        /// thm1 | thm2:alpha=R | co0 | thm3 | corollary | thm4:p=R[,a=R] | co_alpha_lhs:alpha=R | reM:p=R
        #[arg(long)]
        theorem: String,
        #[command(flatten)]
        grid: GridArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Sample the image of the circle |z| = r.
    Curve {
        #[arg(long)]
        function: String,
        #[arg(long, default_value_t = 0.999)]
        r: f64,
        #[arg(long, default_value_t = 4096)]
        n: usize,
        #[arg(long, default_value_t = gft_core::catalog::DEFAULT_EXCLUSION)]
        epsilon: f64,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Run the self-check suite over the catalog.
    Verify {
        #[command(flatten)]
        grid: GridArgs,
        /// Directory receiving the report bundle.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// List the function families and their parameter ranges.
    Catalog {
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
}

#[derive(Args)]
struct GridArgs {
    /// Comma-separated radii, or geom:MIN:MAX:COUNT.
    #[arg(long)]
    radii: Option<String>,
    #[arg(long)]
    angles: Option<usize>,
    #[arg(long)]
    epsilon: Option<f64>,
    #[arg(long)]
    tol: Option<f64>,
    /// Leave out the sample at z = 0.
    #[arg(long)]
    no_center: bool,
}

#[derive(Args)]
struct OutputArgs {
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum)]
    format: Option<Format>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

/// Error carrying its process exit code.
struct Failure {
    code: u8,
    message: String,
}

fn input(message: impl Into<String>) -> Failure {
    Failure { code: EXIT_INPUT, message: message.into() }
}

fn catalog_code(e: &CatalogError) -> u8 {
    match e {
        CatalogError::Jet(_) | CatalogError::PoleProximity { .. } => EXIT_NUMERICAL,
        _ => EXIT_INPUT,
    }
}

impl From<MarginError> for Failure {
    fn from(e: MarginError) -> Self {
        let code = match &e {
            MarginError::InvalidGrid(_) | MarginError::InvalidParameter(_) | MarginError::Parse { .. } => EXIT_INPUT,
            MarginError::Catalog(c) => catalog_code(c),
            MarginError::Operator(OperatorError::InvalidParameter(_)) => EXIT_INPUT,
            MarginError::Operator(OperatorError::Catalog(c)) => catalog_code(c),
            MarginError::EmptyScan { .. } | MarginError::Operator(_) => EXIT_NUMERICAL,
        };
        Failure { code, message: e.to_string() }
    }
}

impl From<OracleError> for Failure {
    fn from(e: OracleError) -> Self {
        match e {
            OracleError::Margin(m) => m.into(),
            OracleError::Catalog(c) => Failure { code: catalog_code(&c), message: c.to_string() },
            OracleError::InvalidParameter(_) => input(e.to_string()),
            OracleError::AllExcluded { .. } | OracleError::Degenerate => {
                Failure { code: EXIT_NUMERICAL, message: e.to_string() }
            }
        }
    }
}

fn parse_radii(text: &str) -> Result<Vec<f64>, Failure> {
    if let Some(rest) = text.strip_prefix("geom:") {
        let parts: Vec<&str> = rest.split(':').collect();
        let [min, max, count] = parts.as_slice() else {
            return Err(input(format!("--radii '{text}': expected geom:MIN:MAX:COUNT")));
        };
        let min: f64 = min.parse().map_err(|_| input(format!("--radii: bad minimum '{min}'")))?;
        let max: f64 = max.parse().map_err(|_| input(format!("--radii: bad maximum '{max}'")))?;
        let count: usize = count.parse().map_err(|_| input(format!("--radii: bad count '{count}'")))?;
        if !(min > 0.0 && max > min) {
            return Err(input("--radii: need 0 < MIN < MAX"));
        }
        return Ok(gft_core::margins::geometric(min, max, count));
    }
    text.split(',')
        .map(|s| s.trim().parse::<f64>().map_err(|_| input(format!("--radii: bad radius '{s}'"))))
        .collect()
}

impl GridArgs {
    fn resolve(&self) -> Result<GridConfig, Failure> {
        let mut grid = GridConfig::from_env()?;
        if let Some(r) = &self.radii {
            grid.radii = parse_radii(r)?;
        }
        if let Some(n) = self.angles {
            grid.angles = n;
        }
        if let Some(e) = self.epsilon {
            grid.exclusion_radius = e;
        }
        if let Some(t) = self.tol {
            grid.margin_tol = t;
        }
        if self.no_center {
            grid.include_center = false;
        }
        grid.validate()?;
        Ok(grid)
    }
}

fn parse_function(text: &str) -> Result<FamilySpec, Failure> {
    text.parse().map_err(|e| input(format!("--function '{text}' {e}")))
}

fn emit(out: Option<&Path>, content: &str) -> Result<(), Failure> {
    match out {
        Some(path) => fs::write(path, content)
            .map_err(|e| Failure { code: EXIT_INPUT, message: format!("cannot write {}: {e}", path.display()) }),
        None => {
            let mut stdout = std::io::stdout().lock();
            match stdout.write_all(content.as_bytes()).and_then(|_| stdout.flush()) {
                Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => {
                    Err(Failure { code: EXIT_INPUT, message: format!("cannot write to stdout: {e}") })
                }
                _ => Ok(()),
            }
        }
    }
}

#[derive(Serialize)]
struct ClassifyBundle {
    classification: gft_core::margins::Classification,
    oracle: gft_core::oracle::OracleReport,
}

#[derive(Serialize)]
struct CurveReport {
    function: String,
    r: f64,
    n: usize,
    epsilon: f64,
    excluded_arcs: Vec<(f64, f64)>,
    orientation: gft_core::oracle::Orientation,
    defect: gft_core::oracle::Defect,
    real_axis_crossings: Vec<f64>,
}

#[derive(Serialize)]
struct FamilyInfo {
    name: &'static str,
    syntax: &'static str,
    parameters: &'static str,
}

fn catalog_entries() -> Vec<FamilyInfo> {
    let f = |name, syntax, parameters| FamilyInfo { name, syntax, parameters };
    vec![
        f("halfplane", "halfplane", "z/(1-z); no parameters"),
        f("koebe", "koebe", "z/(1-z)^2; no parameters"),
        f("identity", "identity", "z; no parameters"),
        f("kalpha", "kalpha:alpha=R", "alpha in [1,2]"),
        f("anglemap", "anglemap:a=C[,A=C,B=C]", "a != 0, |a|^2 != Re a, phi'(1) in [0,1/3]; A != 0"),
        f("kp", "kp:p=R", "p in (0,1)"),
        f("co0cubic", "co0cubic:a0=C", "any complex a0"),
        f("laurent", "laurent:[p=R;res=C;]b=[C,...]", "pole p in [0,1) or none; residue != 0 with a pole"),
        f("dilated", "dilated:rho=R;f=SPEC", "rho in (0,1]"),
        f("affine", "affine:c=C;d=C;f=SPEC", "c != 0"),
    ]
}

fn run(cli: Cli) -> Result<u8, Failure> {
    match cli.command {
        Command::Classify { function, class, grid, output } => {
            let spec = parse_function(&function)?;
            let cls: ClassSpec = class.parse()?;
            let grid = grid.resolve()?;
            if output.format == Some(Format::Csv) {
                return Err(input("classify writes JSON only"));
            }
            let classification = classify(&spec, &cls, &grid)?;
            let pole = cls.pole().map_or(PolePlacement::Boundary, PolePlacement::Interior);
            let oracle = oracle_concave(&spec, pole, &ORACLE_RADII)?;
            let consistent = classification.verdict.is_consistent();
            eprintln!("{}: {} ({}), oracle {}", spec, classification.verdict, cls, oracle.verdict);
            emit(output.out.as_deref(), &to_json(&ClassifyBundle { classification, oracle }))?;
            Ok(if consistent { 0 } else { EXIT_VIOLATION })
        }
        Command::Margins { function, theorem, grid, output } => {
            let spec = parse_function(&function)?;
            let th: Theorem = theorem.parse()?;
            let grid = grid.resolve()?;
            let report = scan(&spec, &th, &grid)?;
            let text = match output.format.unwrap_or(Format::Json) {
                Format::Json => to_json(&report),
                Format::Csv => margins_csv(&report),
            };
            emit(output.out.as_deref(), &text)?;
            Ok(if report.verdict.is_consistent() { 0 } else { EXIT_VIOLATION })
        }
        Command::Curve { function, r, n, epsilon, output } => {
            let spec = parse_function(&function)?;
            let curve = boundary_curve_with(&spec, r, n, epsilon)?;
            let text = match output.format.unwrap_or(Format::Csv) {
                Format::Csv => curve_csv(&curve),
                Format::Json => {
                    let orientation = PolePlacement::of(&spec).orientation();
                    to_json(&CurveReport {
                        function: spec.to_string(),
                        r,
                        n,
                        epsilon,
                        excluded_arcs: curve.excluded_arcs.clone(),
                        orientation,
                        defect: convexity_defect(&curve, orientation)?,
                        real_axis_crossings: real_axis_crossings(&curve),
                    })
                }
            };
            emit(output.out.as_deref(), &text)?;
            Ok(0)
        }
        Command::Verify { grid, out } => {
            let grid = grid.resolve()?;
            let report = run_suite(&grid);
            for c in &report.criteria {
                eprintln!("{} criterion {:>2}: {}", if c.passed { "PASS" } else { "FAIL" }, c.id, c.name);
                for note in &c.notes {
                    eprintln!("      {note}");
                }
            }
            let json = to_json(&report);
            match out {
                Some(dir) => {
                    fs::create_dir_all(&dir)
                        .map_err(|e| input(format!("cannot create {}: {e}", dir.display())))?;
                    emit(Some(&dir.join("verify.json")), &json)?;
                }
                None => emit(None, &json)?,
            }
            Ok(if report.all_passed { 0 } else { EXIT_VIOLATION })
        }
        Command::Catalog { format } => {
            let entries = catalog_entries();
            let text = match format {
                Format::Json => to_json(&entries),
                Format::Csv => {
                    let mut s = String::from("name,syntax,parameters\n");
                    for e in &entries {
                        s.push_str(&format!("{},\"{}\",\"{}\"\n", e.name, e.syntax, e.parameters));
                    }
                    s
                }
            };
            emit(None, &text)?;
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_INPUT } else { 0 });
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
