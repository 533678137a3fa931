//! Subcommand dispatch: one command per report, one process per command.

use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use qforge_core::clifford::{
    clifford_condition, clifford_map_space, overlap_space, theta_from_central, CliffordMap,
    HypersurfaceInput,
};
use qforge_core::deform::{build_deformation, frobenius_form, strong_grading_check, z2_components};
use qforge_core::error::ErrorClass;
use qforge_core::extensions::{
    double_branched_cover_dual, extend_clifford_map, knorrer_corner_witness,
    knorrer_semisimple_transfer, upsilon_iso_check, TransferReport,
};
use qforge_core::quadalg::{Limits, QuadraticPresentation, DEFAULT_WORD_CAP};
use qforge_core::scalar::Scalar;
use qforge_core::structure::{
    even_part_algebra, graded_semisimple, hypersurface_dual_data, jacobson_radical,
    localization_corner_crosscheck, section4_theta, singularity_verdict,
};
use qforge_core::tensor::Tensor;

use crate::dsl::{print_poly, PresentationFile};
use crate::report::{
    algebra_value, emit_error, emit_report, poly_strings, scalar_vec, structure_constants,
    subspace_value, Format, Report,
};

pub const RESOURCE_CAP_ENV: &str = "QFORGE_RESOURCE_CAP";

#[derive(Parser, Debug)]
#[command(
    name = "qforge",
    version,
    about = "Exact computations with quadratic algebra presentations"
)]
pub struct Cli {
    /// Emit the report as JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Degree bound for series reports.
    #[arg(long, global = true)]
    pub max_degree: Option<usize>,
    /// Cap on the number of words enumerated in a single degree.
    #[arg(long, global = true)]
    pub resource_cap: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Parse a presentation file and validate its named data.
    Check { file: PathBuf },
    /// Dimensions of the graded components.
    Hilbert {
        file: PathBuf,
        #[arg(long)]
        maxdeg: Option<usize>,
    },
    /// The quadratic dual presentation.
    Dual { file: PathBuf },
    /// The degree-3 overlap of the relation space with itself.
    Overlap { file: PathBuf },
    /// The space of admissible deformation vectors.
    CliffordSpace { file: PathBuf },
    /// Central elements of the given degree (only degree 2 is supported).
    Center {
        file: PathBuf,
        #[arg(long, default_value_t = 2)]
        degree: usize,
    },
    /// Deformation vector induced on the dual by a named central element.
    ThetaFromCentral {
        file: PathBuf,
        #[arg(long)]
        central: String,
    },
    /// Build the deformed algebra for a named vector.
    Deform {
        file: PathBuf,
        #[arg(long)]
        theta: String,
    },
    /// Gram matrix of the top-coefficient pairing.
    Frobenius {
        file: PathBuf,
        #[arg(long)]
        theta: String,
    },
    /// Radical and graded-semisimplicity report.
    Semisimple {
        file: PathBuf,
        #[arg(long)]
        theta: String,
    },
    /// Isolated-singularity verdict for a named central element.
    Verdict {
        file: PathBuf,
        #[arg(long)]
        central: String,
    },
    /// The even-parity subalgebra of a deformation.
    EvenPart {
        file: PathBuf,
        #[arg(long)]
        theta: String,
    },
    /// Compare the stabilized corner with the even part of the quotient
    /// deformation.
    CornerCrosscheck {
        file: PathBuf,
        #[arg(long)]
        central: String,
    },
    /// Trivial extension(s) and the extended deformation vector.
    Ext {
        file: PathBuf,
        #[arg(long)]
        theta: String,
        #[arg(long, default_value_t = 1)]
        times: usize,
    },
    /// Full corner-idempotent certificate for the double extension.
    Knorrer {
        file: PathBuf,
        #[arg(long)]
        theta: String,
    },
    /// Semisimplicity transfer across one trivial extension.
    Transfer {
        file: PathBuf,
        #[arg(long)]
        theta: String,
    },
}

#[derive(Debug)]
pub struct Failure {
    pub exit: i32,
    pub code: String,
    pub message: String,
}

impl From<qforge_core::Error> for Failure {
    fn from(e: qforge_core::Error) -> Self {
        Failure {
            exit: match e.class() {
                ErrorClass::Math => 1,
                ErrorClass::Input => 2,
            },
            code: e.code().to_string(),
            message: e.to_string(),
        }
    }
}

impl From<crate::dsl::DslError> for Failure {
    fn from(e: crate::dsl::DslError) -> Self {
        Failure {
            exit: 2,
            code: e.code().to_string(),
            message: e.to_string(),
        }
    }
}

fn usage(message: impl Into<String>) -> Failure {
    Failure {
        exit: 2,
        code: "Usage".to_string(),
        message: message.into(),
    }
}

fn math_failure(code: &str, message: impl Into<String>) -> Failure {
    Failure {
        exit: 1,
        code: code.to_string(),
        message: message.into(),
    }
}

struct Loaded {
    file_name: String,
    file: PresentationFile,
    presentation: QuadraticPresentation,
}

fn load(path: &Path, cli: &Cli) -> Result<Loaded, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure {
        exit: 2,
        code: "Io".to_string(),
        message: format!("{}: {e}", path.display()),
    })?;
    let file = PresentationFile::parse(&text)?;
    let cap = cli
        .resource_cap
        .or_else(|| {
            std::env::var(RESOURCE_CAP_ENV)
                .ok()
                .and_then(|v| v.parse().ok())
        })
        .unwrap_or(DEFAULT_WORD_CAP);
    let presentation = file.to_presentation(Limits { word_cap: cap })?;
    Ok(Loaded {
        file_name: file.name.clone(),
        file,
        presentation,
    })
}

fn named_theta(loaded: &Loaded, name: &str) -> Result<CliffordMap, Failure> {
    let values = loaded
        .file
        .clifford_vectors
        .get(name)
        .ok_or_else(|| usage(format!("no clifford vector named `{name}` in the file")))?;
    Ok(CliffordMap::from_relation_values(
        loaded.presentation.clone(),
        &loaded.file.relations,
        values,
    )?)
}

fn named_central(loaded: &Loaded, name: &str) -> Result<Tensor, Failure> {
    loaded
        .file
        .central_elements
        .get(name)
        .cloned()
        .ok_or_else(|| usage(format!("no central element named `{name}` in the file")))
}

fn hypersurface(loaded: &Loaded, name: &str) -> Result<HypersurfaceInput, Failure> {
    let central = named_central(loaded, name)?;
    Ok(HypersurfaceInput::new(
        loaded.presentation.clone(),
        central,
        loaded.file.assertions,
    )?)
}

fn hypotheses_value(h: qforge_core::clifford::Hypotheses) -> Value {
    json!({
        "as_regular_asserted": h.as_regular,
        "gldim_ge2_asserted": h.gldim_ge2,
        "koszul_asserted": h.koszul,
    })
}

pub fn run(cli: &Cli) -> Result<Report, Failure> {
    let max_degree = cli.max_degree.unwrap_or(8);
    match &cli.command {
        Command::Check { file } => {
            let loaded = load(file, cli)?;
            let p = &loaded.presentation;
            let names = p.generators();
            let mut clifford_valid = serde_json::Map::new();
            for (name, values) in &loaded.file.clifford_vectors {
                let valid =
                    CliffordMap::from_relation_values(p.clone(), &loaded.file.relations, values)
                        .is_ok();
                clifford_valid.insert(name.clone(), Value::Bool(valid));
            }
            let mut central_valid = serde_json::Map::new();
            let center = p.central_degree2()?;
            for (name, z) in &loaded.file.central_elements {
                let coords = p.degree2_coords(z)?;
                let ok = !coords.iter().all(Scalar::is_zero) && center.contains(coords);
                central_valid.insert(name.clone(), Value::Bool(ok));
            }
            let koszul = p.koszul_numeric_check(6)?;
            let result = json!({
                "central_elements_central": Value::Object(central_valid),
                "clifford_vectors_admissible": Value::Object(clifford_valid),
                "hilbert_series": p.hilbert_series(6)?,
                "hypotheses": hypotheses_value(loaded.file.assertions),
                "koszul_numeric_pass": koszul.pass,
                "listed_relations": loaded.file.relations.len(),
                "relation_dim": p.relations().dim(),
                "relations_echelon": poly_strings(p.relations().basis(), names),
            });
            Ok(Report::new("check", &loaded.file_name, p, result))
        }
        Command::Hilbert { file, maxdeg } => {
            let loaded = load(file, cli)?;
            let bound = maxdeg.unwrap_or(max_degree);
            let series = loaded.presentation.hilbert_series(bound)?;
            let result = json!({
                "max_degree": bound,
                "series": series,
            });
            Ok(Report::new(
                "hilbert",
                &loaded.file_name,
                &loaded.presentation,
                result,
            ))
        }
        Command::Dual { file } => {
            let loaded = load(file, cli)?;
            let dual = loaded.presentation.quadratic_dual();
            let result = json!({
                "generators": dual.generators(),
                "hilbert_series": dual.hilbert_series(max_degree.min(8))?,
                "relation_dim": dual.relations().dim(),
                "relations": poly_strings(dual.relations().basis(), dual.generators()),
            });
            Ok(Report::new(
                "dual",
                &loaded.file_name,
                &loaded.presentation,
                result,
            ))
        }
        Command::Overlap { file } => {
            let loaded = load(file, cli)?;
            let overlap = overlap_space(&loaded.presentation)?;
            let result = json!({
                "overlap": subspace_value(&overlap, loaded.presentation.generators()),
            });
            Ok(Report::new(
                "overlap",
                &loaded.file_name,
                &loaded.presentation,
                result,
            ))
        }
        Command::CliffordSpace { file } => {
            let loaded = load(file, cli)?;
            let p = &loaded.presentation;
            let space = clifford_map_space(p)?;
            let mut basis = Vec::new();
            for v in space.basis() {
                let theta = CliffordMap::new(p.clone(), v.to_vec())?;
                let listed: Vec<Scalar> = loaded
                    .file
                    .relations
                    .iter()
                    .map(|r| theta.apply(r))
                    .collect::<qforge_core::Result<_>>()?;
                basis.push(json!({
                    "values_on_echelon_basis": scalar_vec(v),
                    "values_on_listed_relations": scalar_vec(&listed),
                }));
            }
            let result = json!({
                "dim": space.dim(),
                "basis": basis,
            });
            Ok(Report::new("clifford-space", &loaded.file_name, p, result))
        }
        Command::Center { file, degree } => {
            if *degree != 2 {
                return Err(usage("only --degree 2 is supported"));
            }
            let loaded = load(file, cli)?;
            let p = &loaded.presentation;
            let center = p.central_degree2()?;
            let slice2 = p.slice(2)?;
            let elements: Vec<Value> = center
                .basis()
                .iter()
                .map(|v| {
                    let t = slice2.tensor_from_coords(p.field(), v);
                    Value::String(print_poly(&t, p.generators()))
                })
                .collect();
            let result = json!({
                "degree": 2,
                "dim": center.dim(),
                "elements": elements,
            });
            Ok(Report::new("center", &loaded.file_name, p, result))
        }
        Command::ThetaFromCentral { file, central } => {
            let loaded = load(file, cli)?;
            let input = hypersurface(&loaded, central)?;
            let theta = theta_from_central(&input)?;
            let dual = theta.presentation();
            let result = json!({
                "central": central,
                "dual_relations": poly_strings(dual.relations().basis(), dual.generators()),
                "lift": print_poly(&input.canonical_lift()?, loaded.presentation.generators()),
                "theta_on_dual_echelon_basis": scalar_vec(theta.values()),
            });
            Ok(Report::new(
                "theta-from-central",
                &loaded.file_name,
                &loaded.presentation,
                result,
            ))
        }
        Command::Deform { file, theta } => {
            let loaded = load(file, cli)?;
            let map = named_theta(&loaded, theta)?;
            let d = build_deformation(&map)?;
            let (dim0, dim1, _) = z2_components(d.algebra());
            let (even, _) = even_part_algebra(d.algebra());
            let result = json!({
                "algebra": algebra_value(d.algebra()),
                "dim": d.dim(),
                "dim_even": dim0,
                "dim_odd": dim1,
                "even_part": {
                    "dim": even.dim(),
                    "labels": even.labels(),
                    "structure_constants": structure_constants(&even),
                },
                "strongly_graded": strong_grading_check(d.algebra()),
                "theta": theta,
                "top_degree": d.top_degree(),
            });
            Ok(Report::new(
                "deform",
                &loaded.file_name,
                &loaded.presentation,
                result,
            ))
        }
        Command::Frobenius { file, theta } => {
            let loaded = load(file, cli)?;
            let map = named_theta(&loaded, theta)?;
            let d = build_deformation(&map)?;
            let form = frobenius_form(&d)?;
            let mut entries = Vec::new();
            for i in 0..form.dim() {
                for j in 0..form.dim() {
                    if !form.entry(i, j).is_zero() {
                        entries.push(json!([i, j, form.entry(i, j).to_string()]));
                    }
                }
            }
            let top = (0..d.dim())
                .find(|&i| d.algebra().degree(i) == d.top_degree())
                .expect("unique top-degree basis word");
            let result = json!({
                "basis_labels": d.algebra().labels(),
                "form_parity": form.parity(),
                "functional": format!(
                    "coefficient of {} (the unique top-degree basis word)",
                    d.algebra().labels()[top]
                ),
                "gram": Value::Array(entries),
                "rank": form.dim(),
                "theta": theta,
            });
            Ok(Report::new(
                "frobenius",
                &loaded.file_name,
                &loaded.presentation,
                result,
            ))
        }
        Command::Semisimple { file, theta } => {
            let loaded = load(file, cli)?;
            let map = named_theta(&loaded, theta)?;
            let d = build_deformation(&map)?;
            let radical = jacobson_radical(d.algebra());
            let graded = graded_semisimple(d.algebra())?;
            let basis: Vec<Value> = radical.basis.iter().map(|v| scalar_vec(v)).collect();
            let result = json!({
                "basis_labels": d.algebra().labels(),
                "graded_semisimple": graded,
                "radical_basis": basis,
                "radical_dim": radical.dim,
                "radical_homogeneous": radical.homogeneous,
                "semisimple": radical.semisimple,
                "theta": theta,
            });
            Ok(Report::new(
                "semisimple",
                &loaded.file_name,
                &loaded.presentation,
                result,
            ))
        }
        Command::Verdict { file, central } => {
            let loaded = load(file, cli)?;
            let input = hypersurface(&loaded, central)?;
            let verdict = singularity_verdict(&input)?;
            let result = json!({
                "central": central,
                "centrality_verified": verdict.centrality_verified,
                "conclusion": verdict.conclusion,
                "hypotheses": hypotheses_value(verdict.hypotheses),
                "koszul_numeric_pass": verdict.koszul_check.pass,
                "radical_dim": verdict.radical_dim,
                "regularity_bound": verdict.regularity.bound,
                "regular_up_to_bound": verdict.regularity.regular_up_to_bound(),
                "semisimple": verdict.semisimple,
            });
            Ok(Report::new(
                "verdict",
                &loaded.file_name,
                &loaded.presentation,
                result,
            ))
        }
        Command::EvenPart { file, theta } => {
            let loaded = load(file, cli)?;
            let map = named_theta(&loaded, theta)?;
            let d = build_deformation(&map)?;
            let (even, indices) = even_part_algebra(d.algebra());
            let result = json!({
                "algebra": algebra_value(&even),
                "indices_in_full_algebra": indices,
                "theta": theta,
            });
            Ok(Report::new(
                "even-part",
                &loaded.file_name,
                &loaded.presentation,
                result,
            ))
        }
        Command::CornerCrosscheck { file, central } => {
            let loaded = load(file, cli)?;
            let z = named_central(&loaded, central)?;
            let (_, theta) = section4_theta(&loaded.presentation, &z)?;
            let report = localization_corner_crosscheck(&loaded.presentation, &z, &theta)?;
            if !report.pass() {
                return Err(math_failure(
                    "CornerMismatch",
                    format!("corner comparison failed: {report:?}"),
                ));
            }
            let result = json!({
                "central": central,
                "corner_dim": report.corner_dim,
                "even_dim": report.even_dim,
                "linear_bijection": report.linear_bijection,
                "multiplicative": report.multiplicative,
                "pass": report.pass(),
                "stabilization_exponent": report.stabilization_exponent,
                "unital": report.unital,
            });
            Ok(Report::new(
                "corner-crosscheck",
                &loaded.file_name,
                &loaded.presentation,
                result,
            ))
        }
        Command::Ext { file, theta, times } => {
            if !(1..=2).contains(times) {
                return Err(usage("--times must be 1 or 2"));
            }
            let loaded = load(file, cli)?;
            let mut map = named_theta(&loaded, theta)?;
            for _ in 0..*times {
                map = extend_clifford_map(&map)?;
            }
            let ext = map.presentation();
            let condition = clifford_condition(ext, map.values())?;
            let scan = qforge_core::quadalg::TOP_DEGREE_SCAN_LIMIT;
            let base_dim: usize = loaded
                .presentation
                .hilbert_series(loaded.presentation.top_degree(scan)?)?
                .iter()
                .sum();
            let ext_dim: usize = ext.hilbert_series(ext.top_degree(scan)?)?.iter().sum();
            let result = json!({
                "admissible": condition.holds,
                "base_dim": base_dim,
                "extended_dim": ext_dim,
                "extended_generators": ext.generators(),
                "extended_relations": poly_strings(ext.relations().basis(), ext.generators()),
                "extended_theta_on_echelon_basis": scalar_vec(map.values()),
                "times": times,
            });
            Ok(Report::new(
                "ext",
                &loaded.file_name,
                &loaded.presentation,
                result,
            ))
        }
        Command::Knorrer { file, theta } => {
            let loaded = load(file, cli)?;
            let map = named_theta(&loaded, theta)?;
            let upsilon = upsilon_iso_check(loaded.presentation.field())?;
            let bundle = knorrer_corner_witness(&map)?;
            if !bundle.pass() || !upsilon.valid() {
                return Err(math_failure(
                    "KnorrerCertificateFailure",
                    format!("certificate bundle failed: {bundle:?}"),
                ));
            }
            let labels = json!({
                "idempotent_support": bundle
                    .idempotent
                    .iter()
                    .enumerate()
                    .filter(|(_, c)| !c.is_zero())
                    .map(|(i, c)| json!([i, c.to_string()]))
                    .collect::<Vec<_>>(),
            });
            let result = json!({
                "base_dim": bundle.base_dim,
                "corner_iso_ok": bundle.corner_iso_ok,
                "double_dim": bundle.double_dim,
                "first_extension_valid": bundle.first_extension.valid(),
                "fullness_ok": bundle.fullness_ok,
                "idempotent": labels,
                "idempotent_ok": bundle.idempotent_ok,
                "idempotent_proper": bundle.idempotent_proper,
                "pass": bundle.pass(),
                "second_extension_valid": bundle.second_extension.valid(),
                "theta": theta,
                "upsilon_valid": upsilon.valid(),
            });
            Ok(Report::new(
                "knorrer",
                &loaded.file_name,
                &loaded.presentation,
                result,
            ))
        }
        Command::Transfer { file, theta } => {
            let loaded = load(file, cli)?;
            let map = named_theta(&loaded, theta)?;
            let report = knorrer_semisimple_transfer(&map)?;
            let result = match &report {
                TransferReport::OutsideHypothesis { reason } => json!({
                    "gated": true,
                    "reason": reason,
                    "theta": theta,
                }),
                TransferReport::Checked {
                    base_semisimple,
                    extended_semisimple,
                    pass,
                } => {
                    if !pass {
                        return Err(math_failure(
                            "TransferMismatch",
                            "semisimplicity did not transfer across the extension",
                        ));
                    }
                    json!({
                        "base_semisimple": base_semisimple,
                        "extended_semisimple": extended_semisimple,
                        "gated": false,
                        "pass": pass,
                        "theta": theta,
                    })
                }
            };
            Ok(Report::new(
                "transfer",
                &loaded.file_name,
                &loaded.presentation,
                result,
            ))
        }
    }
}

/// Run from raw arguments, print, and return the process exit code.
pub fn run_command<I, T>(argv: I, stdout: &mut impl std::io::Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            // clap prints its own usage text; map to input-error code.
            let _ = e.print();
            return 2;
        }
    };
    let format = if cli.json { Format::Json } else { Format::Text };
    match run(&cli) {
        Ok(report) => {
            let _ = stdout.write_all(emit_report(&report, format).as_bytes());
            0
        }
        Err(failure) => {
            eprint!("{}", emit_error(&failure.code, &failure.message, format));
            failure.exit
        }
    }
}

/// Extra data used by the acceptance suite: run the full dual pipeline
/// from a file-named central element.
pub fn dual_pipeline(
    path: &Path,
    central: &str,
) -> Result<qforge_core::structure::DualData, Failure> {
    let cli = Cli {
        json: false,
        max_degree: None,
        resource_cap: None,
        command: Command::Check {
            file: path.to_path_buf(),
        },
    };
    let loaded = load(path, &cli)?;
    let input = hypersurface(&loaded, central)?;
    Ok(hypersurface_dual_data(&input)?)
}

/// Double-cover pipeline from a file-named central element.
pub fn cover_pipeline(
    path: &Path,
    central: &str,
    times: usize,
) -> Result<qforge_core::extensions::CoverData, Failure> {
    let cli = Cli {
        json: false,
        max_degree: None,
        resource_cap: None,
        command: Command::Check {
            file: path.to_path_buf(),
        },
    };
    let loaded = load(path, &cli)?;
    let input = hypersurface(&loaded, central)?;
    Ok(double_branched_cover_dual(&input, times)?)
}
