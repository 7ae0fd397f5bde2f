use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Parser, Subcommand};
use groupoid_homology::abelian::FgAbGroup;
use groupoid_homology::algebra::{convolve, GroupoidFunction};
use groupoid_homology::groupoid::{validate_groupoid, FiniteGroupoid};
use groupoid_homology::moore::{homology_result, moore_complex, ChainComplex, CoefficientSpec, HomologyResult};
use groupoid_homology::nerve::{build_nerve_with_budget, DEFAULT_TUPLE_BUDGET};
use groupoid_homology::sequences::{
    cohomology_result, dual_cochain_complex, mv_les, snake_les, subgroupoid_ses, uct_cohomology, uct_homology, MvCover,
};
use groupoid_homology::sft::{sft_disjoint_union, sft_homology_with_coefficients, SftSpec};
use num_bigint::BigInt;
use serde_json::{json, Value};

use crate::document::{InputDocument, Model};
use crate::render;
use crate::CliError;

#[derive(Debug, Parser)]
#[command(name = "ghom", version, about = "Homology of finite groupoids and shifts of finite type")]
pub struct Cli {
    /// Emit machine-readable JSON instead of tables.
    #[arg(long, global = true)]
    json: bool,
    /// Largest number of composable tuples built per nerve level.
    #[arg(long, global = true, default_value_t = DEFAULT_TUPLE_BUDGET)]
    tuple_budget: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Check that a document describes a valid groupoid or shift.
    Validate { file: PathBuf },
    /// Homology in degrees 0..=K.
    Homology {
        file: PathBuf,
        #[arg(long)]
        max_degree: usize,
        /// Z, Z/m or FG:d1,d2[+rK].
        #[arg(long, default_value = "Z")]
        coefficients: String,
    },
    /// Cohomology in degrees 0..=K.
    Cohomology {
        file: PathBuf,
        #[arg(long)]
        max_degree: usize,
        #[arg(long)]
        coefficients: String,
    },
    /// Universal coefficient sequence in one degree.
    Uct {
        file: PathBuf,
        #[arg(long)]
        degree: usize,
        #[arg(long)]
        coefficients: String,
    },
    /// Mayer-Vietoris sequence of a cover by two named unit sets.
    MayerVietoris {
        file: PathBuf,
        #[arg(long)]
        u1: String,
        #[arg(long)]
        u2: String,
        #[arg(long)]
        max_degree: usize,
        /// Use chains supported on the pieces; the sets need not be saturated.
        #[arg(long)]
        support_local: bool,
    },
    /// Long exact sequence of a named wide subgroupoid.
    SubgroupoidLes {
        file: PathBuf,
        #[arg(long)]
        sub: String,
        #[arg(long)]
        max_degree: usize,
    },
    /// Convolution of two integer functions on the arrows.
    Convolve {
        file: PathBuf,
        /// Comma-separated values, one per arrow.
        #[arg(long, allow_hyphen_values = true)]
        f: String,
        #[arg(long, allow_hyphen_values = true)]
        g: String,
    },
}

/// Exit status with the text destined for standard output and error.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome {
                    code: 2,
                    stdout: String::new(),
                    stderr: text,
                }
            } else {
                Outcome {
                    code: 0,
                    stdout: text,
                    stderr: String::new(),
                }
            };
        }
    };
    match dispatch(&cli) {
        Ok(stdout) => Outcome {
            code: 0,
            stdout,
            stderr: String::new(),
        },
        Err((e, stdout)) => Outcome {
            code: e.exit_code(),
            stdout,
            stderr: format!("error: {e}\n"),
        },
    }
}

fn load(path: &PathBuf) -> Result<InputDocument, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))?;
    InputDocument::parse(&text)
}

fn coefficients(s: &str) -> Result<CoefficientSpec, CliError> {
    s.parse().map_err(|e: groupoid_homology::moore::MooreError| CliError::Parse(e.to_string()))
}

fn invalid(e: impl std::fmt::Display) -> CliError {
    CliError::Invalid(e.to_string())
}

fn finite(model: Model, command: &str) -> Result<FiniteGroupoid, CliError> {
    match model {
        Model::Finite(g) => Ok(g),
        Model::Sft(_) => Err(CliError::Invalid(format!("{command} needs a finite groupoid"))),
    }
}

fn complex(cli: &Cli, g: &FiniteGroupoid, n_max: usize) -> Result<ChainComplex, CliError> {
    let nv = build_nerve_with_budget(g, n_max, cli.tuple_budget).map_err(invalid)?;
    Ok(moore_complex(&nv))
}

fn integral(cli: &Cli, model: &Model, top: usize) -> Result<HomologyResult, CliError> {
    match model {
        Model::Finite(g) => homology_result(&complex(cli, g, top + 1)?, &CoefficientSpec::Integers).map_err(invalid),
        Model::Sft(parts) => Ok(sft_disjoint_union(parts, top)),
    }
}

fn emit(cli: &Cli, json: Value, text: String) -> String {
    if cli.json {
        let mut s = serde_json::to_string_pretty(&json).expect("json values serialize");
        s.push('\n');
        s
    } else {
        text
    }
}

fn dispatch(cli: &Cli) -> Result<String, (CliError, String)> {
    match &cli.command {
        Command::Validate { file } => validate(cli, file),
        other => compute(cli, other).map_err(|e| (e, String::new())),
    }
}

fn validate(cli: &Cli, file: &PathBuf) -> Result<String, (CliError, String)> {
    let doc = load(file).map_err(|e| (e, String::new()))?;
    let model = doc.model_unchecked().map_err(|e| (e, String::new()))?;
    let (json, text) = match &model {
        Model::Finite(g) => {
            let report = validate_groupoid(g);
            if !report.is_empty() {
                let lines: Vec<String> = report.violations.iter().map(|v| v.to_string()).collect();
                let json = json!({ "valid": false, "violations": lines });
                let text = format!("invalid groupoid\n{}\n", lines.join("\n"));
                let out = emit(cli, json, text);
                return Err((CliError::Invalid(format!("{} axiom violation(s)", lines.len())), out));
            }
            (
                json!({ "valid": true, "kind": "finite_groupoid", "arrows": g.arrow_count(), "units": g.unit_count() }),
                format!("valid finite groupoid: {} arrows, {} units\n", g.arrow_count(), g.unit_count()),
            )
        }
        Model::Sft(parts) => {
            let sizes: Vec<usize> = parts.iter().map(SftSpec::size).collect();
            (
                json!({ "valid": true, "kind": "sft", "parts": sizes }),
                format!("valid shift of finite type: {} part(s), sizes {:?}\n", parts.len(), sizes),
            )
        }
    };
    for name in doc.subsets.keys() {
        doc.subset(name).map_err(|e| (e, String::new()))?;
    }
    Ok(emit(cli, json, text))
}

fn parse_values(s: &str) -> Result<Vec<BigInt>, CliError> {
    s.split(',')
        .map(|x| {
            x.trim()
                .parse::<BigInt>()
                .map_err(|_| CliError::Parse(format!("{x:?} is not an integer")))
        })
        .collect()
}

fn compute(cli: &Cli, command: &Command) -> Result<String, CliError> {
    match command {
        Command::Validate { .. } => unreachable!("handled by dispatch"),
        Command::Homology {
            file,
            max_degree,
            coefficients: c,
        } => {
            let a = coefficients(c)?;
            let model = load(file)?.model()?;
            let groups = match &model {
                Model::Finite(g) => homology_result(&complex(cli, g, max_degree + 1)?, &a).map_err(invalid)?.groups,
                Model::Sft(parts) => {
                    let block = SftSpec::block_diagonal(parts).map_err(invalid)?;
                    (0..=*max_degree)
                        .map(|n| sft_homology_with_coefficients(&block, &a, n).map_err(invalid))
                        .collect::<Result<Vec<_>, _>>()?
                }
            };
            let json = json!({ "command": "homology", "coefficients": a.to_string(), "degrees": render::degrees(&groups) });
            Ok(emit(cli, json, render::table(&format!("homology, coefficients {a}"), "H", &groups)))
        }
        Command::Cohomology {
            file,
            max_degree,
            coefficients: c,
        } => {
            let a = coefficients(c)?;
            let model = load(file)?.model()?;
            let groups: Vec<FgAbGroup> = match &model {
                Model::Finite(g) => {
                    let cc = dual_cochain_complex(&complex(cli, g, max_degree + 1)?, &a).map_err(invalid)?;
                    cohomology_result(&cc).map_err(invalid)?.groups
                }
                Model::Sft(_) => {
                    let h = integral(cli, &model, *max_degree)?;
                    (0..=*max_degree)
                        .map(|n| uct_cohomology(&h, &a, n).map(|u| u.middle).map_err(invalid))
                        .collect::<Result<Vec<_>, _>>()?
                }
            };
            let json = json!({ "command": "cohomology", "coefficients": a.to_string(), "degrees": render::degrees(&groups) });
            Ok(emit(cli, json, render::table(&format!("cohomology, coefficients {a}"), "H^", &groups)))
        }
        Command::Uct {
            file,
            degree,
            coefficients: c,
        } => {
            let a = coefficients(c)?;
            let model = load(file)?.model()?;
            let h = integral(cli, &model, *degree)?;
            let u = uct_homology(&h, &a, *degree).map_err(invalid)?;
            let n = *degree;
            let prev = if n == 0 { "H_-1".to_string() } else { format!("H{}", n - 1) };
            let labels = [format!("H{n} (x) A"), format!("H{n}(-; A)"), format!("Tor({prev}, A)")];
            let text = render::uct_text(&u, [&labels[0], &labels[1], &labels[2]]);
            Ok(emit(cli, render::uct_json("uct", &u), text))
        }
        Command::MayerVietoris {
            file,
            u1,
            u2,
            max_degree,
            support_local,
        } => {
            let doc = load(file)?;
            let (s1, s2) = (doc.subset(u1)?.to_vec(), doc.subset(u2)?.to_vec());
            let g = finite(doc.model()?, "mayer-vietoris")?;
            let cover = if *support_local {
                MvCover::new_unsaturated(&g, &s1, &s2)
            } else {
                MvCover::new(&g, &s1, &s2)
            }
            .map_err(invalid)?;
            let les = mv_les(&cover, *max_degree, *support_local).map_err(invalid)?;
            Ok(emit(cli, render::les_json("mayer-vietoris", &les), render::les_text(&les)))
        }
        Command::SubgroupoidLes { file, sub, max_degree } => {
            let doc = load(file)?;
            let arrows = doc.subset(sub)?.to_vec();
            let g = finite(doc.model()?, "subgroupoid-les")?;
            let ses = subgroupoid_ses(&g, &arrows, max_degree + 1).map_err(invalid)?;
            let les = snake_les(&ses, *max_degree).map_err(invalid)?;
            Ok(emit(cli, render::les_json("subgroupoid-les", &les), render::les_text(&les)))
        }
        Command::Convolve { file, f, g: gv } => {
            let g = finite(load(file)?.model()?, "convolve")?;
            let f1 = GroupoidFunction::new(&g, parse_values(f)?).map_err(invalid)?;
            let f2 = GroupoidFunction::new(&g, parse_values(gv)?).map_err(invalid)?;
            let h = convolve(&g, &f1, &f2).map_err(invalid)?;
            let vals: Vec<String> = h.values().iter().map(ToString::to_string).collect();
            let json = json!({ "command": "convolve", "values": h.values().iter().map(render::big).collect::<Vec<_>>() });
            Ok(emit(cli, json, format!("{}\n", vals.join(","))))
        }
    }
}
