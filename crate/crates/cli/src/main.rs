use std::io::{Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use catkit::apolarity::{hilbert_sequence, tangent_dim_gor, tangent_dim_vr};
use catkit::binary::{decompose_form, Decomposition};
use catkit::catalecticant::{build_cat, emit_minors};
use catkit::forms::graded_dim;
use catkit::harness::{
    export_generators, format_form, format_generators, parse_form, run_suite, sample,
    SampleFamily, SampleSpec, SUITES,
};
use catkit::varieties::{classify_ps2, hilbert_cap, singular_test, t2s_sequence};
use catkit::{Basis, CatError, ExactMatrix, Family, Rational, RationalForm};

#[derive(Parser)]
#[command(name = "catkit", version, about = "Catalecticant ranks, apolarity and secant membership for forms")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct FormInput {
    /// Form file (JSON); standard input when absent.
    #[arg(long)]
    form: Option<PathBuf>,
}

#[derive(Args)]
struct FamilyArgs {
    /// vr, ps2 or gor (also accepts vr:2, gor:3).
    #[arg(long)]
    family: String,
    /// Rank bound for vr.
    #[arg(long)]
    r: Option<usize>,
    /// Stratum parameter for gor.
    #[arg(long)]
    s: Option<usize>,
}

impl FamilyArgs {
    fn family(&self) -> catkit::Result<Family> {
        let spelled = match (self.family.as_str(), self.r, self.s) {
            ("vr", Some(r), _) => format!("vr:{r}"),
            ("gor", _, Some(s)) => format!("gor:{s}"),
            ("vr", None, _) => return Err(CatError::Parse("--family vr needs --r".into())),
            ("gor", _, None) => return Err(CatError::Parse("--family gor needs --s".into())),
            (other, _, _) => other.to_string(),
        };
        spelled.parse()
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum BasisArg {
    Monomial,
    Divided,
}

impl From<BasisArg> for Basis {
    fn from(b: BasisArg) -> Self {
        match b {
            BasisArg::Monomial => Basis::Monomial,
            BasisArg::Divided => Basis::Divided,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Print the catalecticant Cat(i, d-i).
    Cat {
        #[arg(long)]
        i: usize,
        #[command(flatten)]
        input: FormInput,
    },
    /// Rank of Cat(i, d-i).
    Rank {
        #[arg(long)]
        i: usize,
        #[command(flatten)]
        input: FormInput,
    },
    /// Hilbert sequence of the apolar algebra.
    Hilbert {
        #[command(flatten)]
        input: FormInput,
    },
    /// Membership in vr(r), ps2 or gor(s).
    Member {
        #[command(flatten)]
        family: FamilyArgs,
        #[command(flatten)]
        input: FormInput,
    },
    /// Normal form of a member of PS(2).
    Classify {
        #[command(flatten)]
        input: FormInput,
    },
    /// Waring or generalized additive decomposition of a form with two essential variables.
    Decompose {
        #[command(flatten)]
        input: FormInput,
    },
    /// Tangent space dimension; with --singular, the Jacobian test against the family's generators.
    Tangent {
        #[command(flatten)]
        family: FamilyArgs,
        /// Catalecticant index for the vr formula.
        #[arg(long, default_value_t = 1)]
        i: usize,
        #[arg(long)]
        singular: bool,
        #[command(flatten)]
        input: FormInput,
    },
    /// Minors of the generic catalecticant, in the export format.
    Minors {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        d: usize,
        #[arg(long)]
        i: usize,
        #[arg(long)]
        size: usize,
        /// Write to a file instead of standard output.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Draw a seeded sample form.
    Sample {
        /// power, ps:R, tangent, gor:S, generic or vr:R.
        #[arg(long)]
        family: String,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        d: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 10)]
        bound: i64,
        #[arg(long, value_enum, default_value_t = BasisArg::Monomial)]
        basis: BasisArg,
    },
    /// Run property suites; exits 2 when a trial fails.
    Verify {
        /// Suite name, or "all".
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long, default_value_t = 20)]
        trials: u64,
        #[arg(long, default_value_t = 7)]
        seed: u64,
    },
    /// Expected dimension of a family in S_d.
    Dims {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        d: usize,
    },
}

enum Failure {
    Usage(String),
    Internal(String),
}

impl From<CatError> for Failure {
    fn from(e: CatError) -> Self {
        if e.is_internal() {
            Failure::Internal(e.to_string())
        } else {
            Failure::Usage(e.to_string())
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Internal(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn read_input(input: &FormInput) -> catkit::Result<RationalForm> {
    let text = match &input.form {
        Some(path) => std::fs::read_to_string(path)?,
        None => {
            let mut s = String::new();
            std::io::stdin().read_to_string(&mut s)?;
            s
        }
    };
    parse_form(&text)
}

/// Write to stdout; a reader that hung up early (`| head`) is not an error.
fn emit(text: &str) {
    let mut out = std::io::stdout().lock();
    let _ = out.write_all(text.as_bytes()).and_then(|_| out.flush());
}

fn print(v: Value) {
    emit(&format!("{}\n", serde_json::to_string_pretty(&v).expect("json values serialize")));
}

fn strings(m: &ExactMatrix<Rational>) -> Vec<Vec<String>> {
    (0..m.rows())
        .map(|r| m.row(r).iter().map(|v| v.to_string()).collect())
        .collect()
}

fn decomposition_json(dec: &Decomposition<Rational>) -> Value {
    let components: Vec<Value> = dec
        .components
        .iter()
        .map(|c| {
            json!({
                "g": c.g.to_string(),
                "l": [c.l[0].to_string(), c.l[1].to_string()],
                "exponent": c.exponent,
            })
        })
        .collect();
    json!({
        "kind": dec.kind,
        "d": dec.d,
        "root_type": dec.root_type,
        "apolar_form": dec.apolar_form.to_string(),
        "components": components,
        "embedding": dec.embedding.as_ref().map(|e| json!({
            "lift": strings(&e.lift),
            "project": strings(&e.project),
        })),
    })
}

fn run(command: Command) -> Result<(), Failure> {
    match command {
        Command::Cat { i, input } => {
            let f = read_input(&input)?;
            let cat = build_cat(&f, i)?;
            print(json!({
                "n": cat.n,
                "d": cat.d,
                "i": cat.i,
                "rows": cat.row_index.iter().map(|u| u.exponents().to_vec()).collect::<Vec<_>>(),
                "cols": cat.col_index.iter().map(|v| v.exponents().to_vec()).collect::<Vec<_>>(),
                "matrix": strings(&cat.body),
            }));
        }
        Command::Rank { i, input } => {
            let f = read_input(&input)?;
            print(json!({ "i": i, "rank": build_cat(&f, i)?.rank() }));
        }
        Command::Hilbert { input } => {
            let f = read_input(&input)?;
            let h = hilbert_sequence(&f)?;
            print(json!({ "hilbert": h.entries(), "symmetric": h.is_symmetric() }));
        }
        Command::Member { family, input } => {
            let family = family.family()?;
            let f = read_input(&input)?;
            print(json!({ "family": family.to_string(), "member": family.contains(&f)? }));
        }
        Command::Classify { input } => {
            let f = read_input(&input)?;
            let class = classify_ps2(&f)?;
            print(json!({
                "tag": class.tag,
                "witnesses": class.witnesses.as_ref().map(decomposition_json),
            }));
        }
        Command::Decompose { input } => {
            let f = read_input(&input)?;
            print(decomposition_json(&decompose_form(&f)?));
        }
        Command::Tangent {
            family,
            i,
            singular,
            input,
        } => {
            let family = family.family()?;
            let f = read_input(&input)?;
            if singular {
                print(serde_json::to_value(singular_test(&f, family)?).expect("serializable"));
            } else {
                let dim = match family {
                    Family::Vr(r) => tangent_dim_vr(&f, i, r)?,
                    Family::Ps2 => tangent_dim_vr(&f, i, 2)?,
                    Family::Gor(_) => tangent_dim_gor(&f)?,
                };
                print(json!({
                    "family": family.to_string(),
                    "ambient_dim": graded_dim(f.n(), f.d()),
                    "tangent_dim": dim,
                }));
            }
        }
        Command::Minors { n, d, i, size, out } => {
            let g = emit_minors(n, d, i, size)?;
            match out {
                Some(path) => export_generators(&g, &path)?,
                None => emit(&format_generators(&g)),
            }
        }
        Command::Sample {
            family,
            n,
            d,
            seed,
            bound,
            basis,
        } => {
            let family: SampleFamily = family.parse()?;
            let mut spec = SampleSpec::new(family, n, d, seed);
            spec.coeff_bound = bound;
            let f: RationalForm = sample(&spec)?;
            emit(&format!("{}\n", format_form(&f, basis.into())));
        }
        Command::Verify {
            suite,
            trials,
            seed,
        } => {
            let names: Vec<&str> = if suite == "all" {
                SUITES.to_vec()
            } else {
                vec![suite.as_str()]
            };
            let mut reports = Vec::new();
            let mut failed = false;
            for name in names {
                let rep = run_suite(name, trials, seed)?;
                failed |= !rep.passed();
                reports.push(json!({
                    "suite": rep.suite,
                    "trials": rep.trials,
                    "failures": rep.failures,
                    "wall_time": rep.wall_time.as_secs_f64(),
                }));
            }
            print(Value::Array(reports));
            if failed {
                return Err(Failure::Internal("property suite failures".into()));
            }
        }
        Command::Dims { family, n, d } => {
            let family = family.family()?;
            let mut out = json!({
                "family": family.to_string(),
                "n": n,
                "d": d,
                "ambient_dim": graded_dim(n, d),
                "dimension": family.dimension(n, d)?,
            });
            match family {
                Family::Vr(r) => out["hilbert_bound"] = json!(hilbert_cap(r, d, n)?.entries()),
                Family::Gor(s) => out["hilbert_bound"] = json!(t2s_sequence(d, s)?.entries()),
                Family::Ps2 => {}
            }
            print(out);
        }
    }
    Ok(())
}
