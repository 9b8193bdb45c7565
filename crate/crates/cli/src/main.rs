//! Command-line front end: reproducible verification runs over the bundled
//! configuration or user-supplied structure equations, with text or JSON
//! reports.
//!
//! Exit codes: 0 all checks passed, 1 a check failed, 2 bad input.

mod verify;

use clap::{Args, Parser, Subcommand, ValueEnum};
use nilg2::cdga::{parse_form, parse_salamon, Cdga, Involution};
use nilg2::cohomology::{CochainComplex, MasseyOutcome};
use nilg2::nilgroup::GroupElement;
use nilg2::report::*;
use nilg2::resring::{LiftVerdict, ResolutionRing};
use nilg2::{builtin, g2};
use num_rational::BigRational;
use serde::Deserialize;
use serde::Serialize;
use std::collections::BTreeMap;
use std::fmt::Display;
use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;

#[derive(Parser)]
#[command(name = "nilg2", version, about = "Exact verification of a closed G2 nilmanifold construction", long_about = None)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum, PartialEq)]
enum Format {
    Text,
    Json,
}

#[derive(Args)]
struct CommonArgs {
    /// Structure-equation config: a JSON file path, or "builtin".
    #[arg(long, default_value = "builtin")]
    input: String,
    /// Output format.
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
}

#[derive(Subcommand)]
enum Command {
    /// Lie algebra checks from structure equations.
    Lie {
        #[command(subcommand)]
        action: LieAction,
    },
    /// Cohomology of the involution-invariant subcomplex.
    Invariant {
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Triple Massey products on the invariant subcomplex.
    Massey {
        #[command(flatten)]
        common: CommonArgs,
        /// First input class (text form syntax).
        #[arg(long)]
        xi1: Option<String>,
        /// Middle input class.
        #[arg(long)]
        xi2: Option<String>,
        /// Third input class.
        #[arg(long)]
        xi3: Option<String>,
    },
    /// G2 form verification.
    G2 {
        #[command(subcommand)]
        action: G2Action,
    },
    /// Nilpotent group arithmetic over the bundled lattice.
    Nilgroup {
        #[command(subcommand)]
        action: NilgroupAction,
    },
    /// The cohomology ring of the resolution.
    Resolve {
        #[command(subcommand)]
        action: ResolveAction,
    },
    /// Run every bundled verification in sequence.
    VerifyAll {
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        /// Seed for the randomized property checks.
        #[arg(long, default_value_t = 7)]
        seed: u64,
        /// Trials for the random lattice-closure check.
        #[arg(long, default_value_t = 10_000)]
        trials: usize,
        /// Grid resolution per axis for the fixed-locus scan.
        #[arg(long, default_value_t = 9)]
        grid: u32,
        /// Search box radius for lattice witnesses.
        #[arg(long, default_value_t = 8)]
        r#box: i64,
    },
}

#[derive(Subcommand)]
enum LieAction {
    /// d², Jacobi.
    Check {
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Betti numbers of the full Chevalley–Eilenberg complex.
    Betti {
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Cohomology basis of one degree of the full complex.
    Basis {
        #[command(flatten)]
        common: CommonArgs,
        #[arg(long)]
        degree: usize,
    },
}

#[derive(Subcommand)]
enum G2Action {
    /// Gram matrix, definiteness, conformal factor, closedness.
    Verify {
        /// File containing a 3-form in text syntax, or "builtin".
        #[arg(long, default_value = "builtin")]
        form: String,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Eigenstructure of a diagonal involution against a form.
    Involution {
        #[arg(long, default_value = "builtin")]
        form: String,
        /// Comma-separated signs, e.g. "-1,-1,1,1,-1,-1,1".
        #[arg(long, default_value = "-1,-1,1,1,-1,-1,1")]
        signs: String,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
}

#[derive(Subcommand)]
enum NilgroupAction {
    /// x * y in exponential coordinates.
    Product {
        /// Comma-separated rational coordinates of x.
        #[arg(long)]
        x: String,
        #[arg(long)]
        y: String,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Fundamental-domain reduction x = γ * d.
    Reduce {
        #[arg(long)]
        x: String,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Fixed-locus enumeration and off-locus grid scan.
    Fixed {
        #[arg(long, default_value_t = 9)]
        grid: u32,
        #[arg(long, default_value_t = 8)]
        r#box: i64,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Commutators of the lattice generators.
    Commutators {
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
}

#[derive(Subcommand)]
enum ResolveAction {
    /// Graded dimensions of the resolution ring.
    Betti {
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Assemble the product table; optionally audit it exhaustively.
    Ring {
        #[arg(long)]
        audit: bool,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// The lifted triple-product obstruction.
    MasseyLift {
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
}

/// Structured input: structure equations plus an optional involution.
#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ConfigFile {
    dimension: u8,
    salamon: String,
    #[serde(default)]
    involution_signs: Option<Vec<i8>>,
}

struct LoadedConfig {
    cdga: Cdga,
    signs: Vec<i8>,
}

#[derive(Debug)]
enum CliError {
    Input(String),
    CheckFailed,
}

impl Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Input(msg) => write!(f, "input error: {msg}"),
            CliError::CheckFailed => write!(f, "one or more checks failed"),
        }
    }
}

fn input_err<E: Display>(e: E) -> CliError {
    CliError::Input(e.to_string())
}

fn load_config(input: &str) -> Result<LoadedConfig, CliError> {
    if input == "builtin" {
        return Ok(LoadedConfig {
            cdga: builtin::cdga(),
            signs: builtin::INVOLUTION_SIGNS.to_vec(),
        });
    }
    let text = std::fs::read_to_string(PathBuf::from(input)).map_err(input_err)?;
    let parsed: ConfigFile = serde_json::from_str(&text).map_err(input_err)?;
    let differentials = parse_salamon(&parsed.salamon).map_err(input_err)?;
    if differentials.len() != parsed.dimension as usize {
        return Err(CliError::Input(format!(
            "dimension {} does not match {} structure-equation entries",
            parsed.dimension,
            differentials.len()
        )));
    }
    let cdga = Cdga::new(parsed.dimension, differentials).map_err(input_err)?;
    let signs = parsed
        .involution_signs
        .unwrap_or_else(|| vec![1; parsed.dimension as usize]);
    Ok(LoadedConfig { cdga, signs })
}

fn load_form(arg: &str) -> Result<nilg2::Form, CliError> {
    if arg == "builtin" {
        return Ok(builtin::g2_form());
    }
    let text = std::fs::read_to_string(PathBuf::from(arg)).map_err(input_err)?;
    parse_form(7, text.trim()).map_err(input_err)
}

fn parse_coords(arg: &str) -> Result<GroupElement, CliError> {
    let coords: Result<Vec<BigRational>, CliError> = arg
        .split(',')
        .map(|part| {
            let trimmed = part.trim();
            BigRational::from_str(trimmed)
                .map_err(|e| CliError::Input(format!("bad rational '{trimmed}': {e}")))
        })
        .collect();
    let coords = coords?;
    if coords.len() != 7 {
        return Err(CliError::Input(format!(
            "expected seven comma-separated coordinates, got {}",
            coords.len()
        )));
    }
    Ok(GroupElement::from_rationals(coords))
}

fn parse_signs(arg: &str) -> Result<Vec<i8>, CliError> {
    arg.split(',')
        .map(|part| {
            part.trim()
                .parse::<i8>()
                .map_err(|e| CliError::Input(format!("bad sign '{part}': {e}")))
        })
        .collect()
}

fn emit<T: Serialize>(format: Format, report: &T, text: impl FnOnce() -> String) {
    match format {
        Format::Json => println!(
            "{}",
            serde_json::to_string_pretty(report).expect("reports serialize")
        ),
        Format::Text => println!("{}", text()),
    }
}

fn group_strings(x: &GroupElement) -> Vec<String> {
    x.0.iter().map(|c| c.to_string()).collect()
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::CheckFailed) => {
            eprintln!("FAILED");
            ExitCode::from(1)
        }
        Err(e @ CliError::Input(_)) => {
            eprintln!("{e}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Lie { action } => run_lie(action),
        Command::Invariant { common } => run_invariant(common),
        Command::Massey {
            common,
            xi1,
            xi2,
            xi3,
        } => run_massey(common, xi1, xi2, xi3),
        Command::G2 { action } => run_g2(action),
        Command::Nilgroup { action } => run_nilgroup(action),
        Command::Resolve { action } => run_resolve(action),
        Command::VerifyAll {
            format,
            seed,
            trials,
            grid,
            r#box,
        } => run_verify_all(format, seed, trials, grid, r#box),
    }
}

fn run_lie(action: LieAction) -> Result<(), CliError> {
    match action {
        LieAction::Check { common } => {
            let config = load_config(&common.input)?;
            let d2 = config.cdga.check_d_squared();
            let jacobi = config.cdga.to_lie_algebra().check_jacobi();
            let report = LieReport {
                dimension: config.cdga.generators(),
                d_squared_ok: d2.is_ok(),
                d_squared_witness: d2.as_ref().err().map(|w| w.to_string()),
                jacobi_ok: jacobi.is_ok(),
                betti: None,
                bases: BTreeMap::new(),
            };
            let ok = report.d_squared_ok && report.jacobi_ok;
            emit(common.format, &report, || {
                format!(
                    "d^2 = 0: {}\nJacobi: {}",
                    verdict(report.d_squared_ok),
                    verdict(report.jacobi_ok)
                )
            });
            if ok {
                Ok(())
            } else {
                Err(CliError::CheckFailed)
            }
        }
        LieAction::Betti { common } => {
            let config = load_config(&common.input)?;
            ensure_d_squared(&config.cdga)?;
            let complex = CochainComplex::full(config.cdga.clone());
            let betti = complex.betti();
            let report = LieReport {
                dimension: config.cdga.generators(),
                d_squared_ok: true,
                d_squared_witness: None,
                jacobi_ok: true,
                betti: Some(betti.clone()),
                bases: BTreeMap::new(),
            };
            emit(common.format, &report, || format!("betti: {betti:?}"));
            Ok(())
        }
        LieAction::Basis { common, degree } => {
            let config = load_config(&common.input)?;
            ensure_d_squared(&config.cdga)?;
            let complex = CochainComplex::full(config.cdga.clone());
            if degree > complex.top_degree() {
                return Err(CliError::Input(format!(
                    "degree {degree} out of range 0..={}",
                    complex.top_degree()
                )));
            }
            let classes: Vec<String> = complex
                .cohomology_basis(degree)
                .iter()
                .map(|c| c.representative.to_string())
                .collect();
            let mut bases = BTreeMap::new();
            bases.insert(degree, classes.clone());
            let report = LieReport {
                dimension: config.cdga.generators(),
                d_squared_ok: true,
                d_squared_witness: None,
                jacobi_ok: true,
                betti: None,
                bases,
            };
            emit(common.format, &report, || {
                format!("H^{degree} basis:\n  {}", classes.join("\n  "))
            });
            Ok(())
        }
    }
}

fn ensure_d_squared(cdga: &Cdga) -> Result<(), CliError> {
    cdga.check_d_squared()
        .map_err(|w| CliError::Input(format!("structure equations fail d^2 = 0: {w}")))
}

fn run_invariant(common: CommonArgs) -> Result<(), CliError> {
    let config = load_config(&common.input)?;
    ensure_d_squared(&config.cdga)?;
    let involution =
        Involution::from_signs(&config.cdga, &config.signs).map_err(input_err)?;
    let complex = CochainComplex::invariant(config.cdga.clone(), &involution);
    let betti = complex.betti();
    let mut bases = BTreeMap::new();
    for k in 0..=complex.top_degree() {
        bases.insert(
            k,
            complex
                .cohomology_basis(k)
                .iter()
                .map(|c| c.representative.to_string())
                .collect::<Vec<_>>(),
        );
    }
    let fixed: Vec<String> = involution
        .eigen_monomials(config.cdga.generators(), 1, 1)
        .iter()
        .map(|m| m.to_string())
        .collect();
    let report = InvariantReport {
        signs: config.signs.clone(),
        fixed_degree_one: fixed,
        betti: betti.clone(),
        bases,
    };
    emit(common.format, &report, || {
        let mut out = format!("invariant betti: {betti:?}\n");
        for (k, classes) in &report.bases {
            out.push_str(&format!("H^{k}: {}\n", classes.join(", ")));
        }
        out.trim_end().to_string()
    });
    Ok(())
}

fn run_massey(
    common: CommonArgs,
    xi1: Option<String>,
    xi2: Option<String>,
    xi3: Option<String>,
) -> Result<(), CliError> {
    let config = load_config(&common.input)?;
    ensure_d_squared(&config.cdga)?;
    let involution =
        Involution::from_signs(&config.cdga, &config.signs).map_err(input_err)?;
    let complex = CochainComplex::invariant(config.cdga.clone(), &involution);
    let n = config.cdga.generators();
    let default1 = builtin::massey_xi1_representative().to_string();
    let default2 = builtin::massey_xi2_corrected().to_string();
    let parse = |arg: &Option<String>, fallback: &str| -> Result<nilg2::Form, CliError> {
        parse_form(n, arg.as_deref().unwrap_or(fallback)).map_err(input_err)
    };
    let f1 = parse(&xi1, &default1)?;
    let f2 = parse(&xi2, &default2)?;
    let f3 = parse(&xi3, &default1)?;
    let c1 = complex.class_of(&f1).map_err(input_err)?;
    let c2 = complex.class_of(&f2).map_err(input_err)?;
    let c3 = complex.class_of(&f3).map_err(input_err)?;
    let outcome = complex.massey_triple(&c1, &c2, &c3).map_err(input_err)?;
    let report = match &outcome {
        MasseyOutcome::Undefined { pair, obstruction } => MasseyReport {
            xi1: f1.to_string(),
            xi2: f2.to_string(),
            xi3: f3.to_string(),
            defined: false,
            obstruction: Some(format!(
                "cup of inputs {} and {} is non-zero: [{}]",
                pair.0, pair.1, obstruction.representative
            )),
            representative: None,
            indeterminacy_dimension: None,
            trivial: None,
        },
        MasseyOutcome::Defined(t) => MasseyReport {
            xi1: f1.to_string(),
            xi2: f2.to_string(),
            xi3: f3.to_string(),
            defined: true,
            obstruction: None,
            representative: Some(t.representative.representative.to_string()),
            indeterminacy_dimension: Some(t.indeterminacy_dim()),
            trivial: Some(t.trivial),
        },
    };
    emit(common.format, &report, || match &outcome {
        MasseyOutcome::Undefined { .. } => format!(
            "undefined: {}",
            report.obstruction.clone().unwrap_or_default()
        ),
        MasseyOutcome::Defined(t) => format!(
            "defined: {} (indeterminacy dim {}), representative [{}]",
            if t.trivial { "trivial" } else { "NON-TRIVIAL" },
            t.indeterminacy_dim(),
            t.representative.representative
        ),
    });
    Ok(())
}

fn run_g2(action: G2Action) -> Result<(), CliError> {
    match action {
        G2Action::Verify { form, format } => {
            let phi = load_form(&form)?;
            let report = g2::gram_from_threeform(&phi).map_err(input_err)?;
            let builtin_checks = form == "builtin";
            let (closed, invariant) = if builtin_checks {
                let cdga = builtin::cdga();
                let j = builtin::involution();
                (
                    Some(cdga.differential(&phi).is_zero()),
                    Some(j.apply(&phi) == phi),
                )
            } else {
                (None, None)
            };
            let json = G2VerifyReport {
                gram: matrix_strings(&report.gram),
                det: report.det.to_string(),
                definite: report.is_g2(),
                definiteness_sign: report.definiteness.map(|d| match d {
                    g2::Definiteness::Positive => 1,
                    g2::Definiteness::Negative => -1,
                }),
                scale_ninth: report.scale_ninth.to_string(),
                conformal_factor: report.conformal_factor.as_ref().map(|c| c.to_string()),
                metric: report.metric.as_ref().map(matrix_strings),
                closed_in_complex: closed,
                involution_invariant: invariant,
            };
            let ok = json.definite
                && closed.unwrap_or(true)
                && invariant.unwrap_or(true);
            emit(format, &json, || {
                format!(
                    "definite: {}\nconformal factor: {}\nclosed: {}\ninvolution-invariant: {}",
                    json.definite,
                    json.conformal_factor.clone().unwrap_or_else(|| "-".into()),
                    closed.map(|b| b.to_string()).unwrap_or_else(|| "-".into()),
                    invariant.map(|b| b.to_string()).unwrap_or_else(|| "-".into()),
                )
            });
            if ok {
                Ok(())
            } else {
                Err(CliError::CheckFailed)
            }
        }
        G2Action::Involution {
            form,
            signs,
            format,
        } => {
            let phi = load_form(&form)?;
            let signs = parse_signs(&signs)?;
            match g2::check_g2_involution(&phi, &signs) {
                Ok(report) => {
                    let json = G2InvolutionJson {
                        signs,
                        preserves_form: true,
                        fixed_dim: report.fixed_dim,
                        anti_dim: report.anti_dim,
                        fixed_indices: report.fixed_indices.clone(),
                        restricted_coefficient: report.restricted_coefficient.to_string(),
                        unit_volume_identity: report.unit_volume_identity,
                    };
                    let ok = report.dims_are_3_4
                        && report.unit_volume_identity != Some(false);
                    emit(format, &json, || {
                        format!(
                            "preserves form; eigenspace dims ({}, {}); fixed indices {:?}; unit volume identity: {:?}",
                            report.fixed_dim,
                            report.anti_dim,
                            report.fixed_indices,
                            report.unit_volume_identity
                        )
                    });
                    if ok {
                        Ok(())
                    } else {
                        Err(CliError::CheckFailed)
                    }
                }
                Err(e) => Err(CliError::Input(e.to_string())),
            }
        }
    }
}

fn matrix_strings(m: &nilg2::Matrix<nilg2::FieldElement>) -> Vec<Vec<String>> {
    (0..m.rows())
        .map(|i| (0..m.cols()).map(|j| m[(i, j)].to_string()).collect())
        .collect()
}

fn run_nilgroup(action: NilgroupAction) -> Result<(), CliError> {
    let group = builtin::nilpotent_group();
    match action {
        NilgroupAction::Product { x, y, format } => {
            let (x, y) = (parse_coords(&x)?, parse_coords(&y)?);
            let z = group.bch_product(&x, &y);
            let report = GroupProductReport {
                x: group_strings(&x),
                y: group_strings(&y),
                product: group_strings(&z),
            };
            emit(format, &report, || format!("{z}"));
            Ok(())
        }
        NilgroupAction::Reduce { x, format } => {
            let x = parse_coords(&x)?;
            let (gamma, d) = group
                .reduce_to_fundamental_domain(&x)
                .map_err(input_err)?;
            let report = ReduceReport {
                x: group_strings(&x),
                lattice_part: group_strings(&gamma),
                domain_part: group_strings(&d),
            };
            emit(format, &report, || format!("gamma = {gamma}\nd = {d}"));
            Ok(())
        }
        NilgroupAction::Fixed { grid, r#box, format } => {
            let report = group
                .enumerate_isotropy_components(
                    &builtin::INVOLUTION_SIGNS,
                    r#box,
                    grid,
                    &builtin::fixed_subgroup_samples(),
                )
                .map_err(input_err)?;
            let json = FixedLocusReport {
                component_count: report.components.len(),
                representatives: report
                    .components
                    .iter()
                    .map(|(eps, _)| group_strings(eps))
                    .collect(),
                fixed_subgroup_samples_ok: report.fixed_subgroup_samples_ok,
                grid_points_tested: report.grid_points_tested,
                grid_all_fail: report.grid_all_fail,
            };
            let ok = json.component_count == builtin::COMPONENT_COUNT
                && json.fixed_subgroup_samples_ok
                && json.grid_all_fail;
            emit(format, &json, || {
                format!(
                    "components: {}\nfixed-subgroup samples ok: {}\ngrid points tested: {} (all fail: {})",
                    json.component_count,
                    json.fixed_subgroup_samples_ok,
                    json.grid_points_tested,
                    json.grid_all_fail
                )
            });
            if ok {
                Ok(())
            } else {
                Err(CliError::CheckFailed)
            }
        }
        NilgroupAction::Commutators { format } => {
            let table = group.commutator_table();
            let nonzero: Vec<CommutatorEntry> = table
                .iter()
                .filter(|(_, _, z)| !z.is_zero())
                .map(|(i, j, z)| CommutatorEntry {
                    i: *i,
                    j: *j,
                    value: group_strings(z),
                })
                .collect();
            let frozen = builtin::expected_commutator_table();
            let matches = table.iter().all(|(i, j, z)| {
                let expected = frozen
                    .iter()
                    .find(|(a, b, _)| (a, b) == (i, j))
                    .map(|(_, _, v)| v.clone())
                    .unwrap_or_else(|| GroupElement::zero(7));
                *z == expected
            });
            let transcribed = builtin::transcribed_commutator_table();
            let discrepancies: Vec<CommutatorEntry> = table
                .iter()
                .filter_map(|(i, j, z)| {
                    let listed = transcribed
                        .iter()
                        .find(|(a, b, _)| (a, b) == (i, j))
                        .map(|(_, _, v)| v.clone())
                        .unwrap_or_else(|| GroupElement::zero(7));
                    (listed != *z).then(|| CommutatorEntry {
                        i: *i,
                        j: *j,
                        value: group_strings(z),
                    })
                })
                .collect();
            let report = CommutatorReport {
                nonzero,
                matches_frozen_table: matches,
                transcription_discrepancies: discrepancies,
            };
            emit(format, &report, || {
                let mut out = String::new();
                for e in &report.nonzero {
                    out.push_str(&format!("[u{}, u{}] = ({})\n", e.i, e.j, e.value.join(", ")));
                }
                out.push_str(&format!("matches frozen table: {}", report.matches_frozen_table));
                out
            });
            if report.matches_frozen_table {
                Ok(())
            } else {
                Err(CliError::CheckFailed)
            }
        }
    }
}

fn run_resolve(action: ResolveAction) -> Result<(), CliError> {
    let ring = ResolutionRing::build().map_err(input_err)?;
    match action {
        ResolveAction::Betti { format } => {
            let report = ResolveReport {
                dims: ring.dims().to_vec(),
                associative: None,
                graded_commutative: None,
                tau_relations_ok: None,
                poincare_dual: None,
                massey_lift: None,
            };
            emit(format, &report, || format!("dims: {:?}", report.dims));
            Ok(())
        }
        ResolveAction::Ring { audit, format } => {
            let (assoc, comm, tau) = if audit {
                (
                    Some(ring.audit_associativity().is_ok()),
                    Some(ring.audit_graded_commutativity().is_ok()),
                    Some(ring.audit_tau_relations()),
                )
            } else {
                (None, None, None)
            };
            let pd: Vec<String> = ring
                .poincare_dual()
                .iter()
                .map(|c| c.to_string())
                .collect();
            let report = ResolveReport {
                dims: ring.dims().to_vec(),
                associative: assoc,
                graded_commutative: comm,
                tau_relations_ok: tau,
                poincare_dual: Some(pd),
                massey_lift: None,
            };
            let ok = assoc.unwrap_or(true) && comm.unwrap_or(true) && tau.unwrap_or(true);
            emit(format, &report, || {
                format!(
                    "dims: {:?}\nassociative: {:?}\ngraded-commutative: {:?}\ntau relations: {:?}\nPD[L] coords: {:?}",
                    report.dims, assoc, comm, tau, report.poincare_dual
                )
            });
            if ok {
                Ok(())
            } else {
                Err(CliError::CheckFailed)
            }
        }
        ResolveAction::MasseyLift { format } => {
            let verdict = ring.massey_lift_check().map_err(input_err)?;
            let text = match &verdict {
                LiftVerdict::ObstructionPersists => "obstruction-persists".to_string(),
                LiftVerdict::Counterexample(sol) => format!(
                    "counterexample: {:?}",
                    sol.iter().map(|c| c.to_string()).collect::<Vec<_>>()
                ),
            };
            let report = ResolveReport {
                dims: ring.dims().to_vec(),
                associative: None,
                graded_commutative: None,
                tau_relations_ok: None,
                poincare_dual: None,
                massey_lift: Some(text.clone()),
            };
            emit(format, &report, || text.clone());
            if matches!(verdict, LiftVerdict::ObstructionPersists) {
                Ok(())
            } else {
                Err(CliError::CheckFailed)
            }
        }
    }
}

fn run_verify_all(
    format: Format,
    seed: u64,
    trials: usize,
    grid: u32,
    box_radius: i64,
) -> Result<(), CliError> {
    let report = verify::run_battery(seed, trials, grid, box_radius);
    emit(format, &report, || {
        let mut out = String::new();
        for check in &report.checks {
            out.push_str(&format!(
                "[{}] {} — {}\n",
                if check.passed { "PASS" } else { "FAIL" },
                check.name,
                check.details
            ));
        }
        if !report.errata.is_empty() {
            out.push_str("\ntranscription errata (verified, corrections applied):\n");
            for e in &report.errata {
                out.push_str(&format!("  - {}: {}\n", e.id, e.description));
            }
        }
        out.push_str(&format!(
            "\n{} of {} checks passed",
            report.checks.iter().filter(|c| c.passed).count(),
            report.checks.len()
        ));
        out
    });
    if report.all_passed {
        Ok(())
    } else {
        Err(CliError::CheckFailed)
    }
}

fn verdict(ok: bool) -> &'static str {
    if ok {
        "ok"
    } else {
        "FAILED"
    }
}
