use std::io::Write;

use acluster_core::basis::{expand, BasisTable, DimBox};
use acluster_core::frieze::knit;
use acluster_core::laurent::to_fraction_string;
use acluster_core::rep::{CountConfig, GrassmannianEngine, PrimeSchedule};
use acluster_core::tube::{delta_variable, delta_variable_counted, normal_form, tube_multiply, RegularLabel, TubeContext};
use acluster_core::{LaurentPoly, Preset};
use clap::{Args, Parser, Subcommand};
use serde_json::json;

use crate::formats::{element_json, expansion_json, formal_sum_json, frieze_json, laurent_json, parse_laurent};
use crate::spec::{parse_object, parse_product, Resolver};
use crate::{verify, CliError, EXIT_OK, EXIT_USAGE};

#[derive(Parser, Debug)]
#[command(name = "acluster", version, about = "Generalized cluster variables of affine quivers")]
struct Cli {
    #[command(flatten)]
    opts: GlobalOpts,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
struct GlobalOpts {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Enumeration budget for one Grassmannian computation.
    #[arg(long, global = true, default_value_t = 10_000_000)]
    budget: u128,
    /// First sampled prime.
    #[arg(long, global = true, default_value_t = 5)]
    prime_start: u64,
    /// Parameter value for homogeneous families.
    #[arg(long, global = true, default_value_t = 2)]
    lambda: i64,
    /// Largest quasi-length computed in a tube.
    #[arg(long, global = true, default_value_t = acluster_core::tube::DEFAULT_CAP)]
    cap: usize,
}

impl GlobalOpts {
    fn config(&self) -> CountConfig {
        CountConfig { budget: self.budget, lambda: self.lambda, schedule: PrimeSchedule::From(self.prime_start), ..CountConfig::default() }
    }
}

fn parse_preset(s: &str) -> Result<Preset, String> {
    s.parse::<Preset>().map_err(|e| e.to_string())
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Generalized cluster variable of an object.
    Var {
        #[arg(long, value_parser = parse_preset)]
        preset: Preset,
        #[arg(long)]
        object: String,
        /// Print the Laurent expansion instead of a single fraction.
        #[arg(long)]
        expanded: bool,
    },
    /// Euler characteristic of a quiver Grassmannian.
    Gr {
        #[arg(long, value_parser = parse_preset)]
        preset: Preset,
        #[arg(long)]
        module: String,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, required = true)]
        e: Vec<i64>,
    },
    /// Knit the transjective component.
    Frieze {
        #[arg(long, value_parser = parse_preset)]
        preset: Preset,
        #[arg(long, default_value_t = 2)]
        forward: usize,
        #[arg(long, default_value_t = 2)]
        backward: usize,
        #[arg(long)]
        dump: bool,
    },
    /// Multiply X_{E_i[k]} by X_{E_j[mr+l]} inside a tube of rank r.
    TubeMul {
        #[arg(long)]
        rank: usize,
        /// i,k
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, required = true)]
        left: Vec<i64>,
        /// j,m,l
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, required = true)]
        right: Vec<i64>,
        /// `generic` or `preset:tube`; the result is checked there.
        #[arg(long)]
        ctx: Option<String>,
        /// Rewrite until every product is a direct sum.
        #[arg(long)]
        nf: bool,
    },
    /// X_{n delta}.
    Delta {
        #[arg(long, value_parser = parse_preset)]
        preset: Preset,
        #[arg(long)]
        n: usize,
        /// Require Grassmannian counting, no recursion fallback.
        #[arg(long)]
        counted: bool,
        #[arg(long)]
        expanded: bool,
    },
    /// Build the basis on a box of dimension vectors.
    Basis {
        #[arg(long, value_parser = parse_preset)]
        preset: Preset,
        /// `a1:b1,...,an:bn`, or `a:b` for every coordinate.
        #[arg(long = "box", allow_hyphen_values = true)]
        bounds: String,
        #[arg(long)]
        dump: bool,
    },
    /// Expand a Laurent polynomial (file) or a product of objects in the basis.
    Expand {
        #[arg(long, value_parser = parse_preset)]
        preset: Preset,
        #[arg(long)]
        input: String,
        /// Table box; by default derived from the input.
        #[arg(long = "box", allow_hyphen_values = true)]
        bounds: Option<String>,
    },
    /// Run acceptance criteria.
    Verify {
        #[arg(long)]
        all: bool,
        #[arg(long = "criterion")]
        criteria: Vec<usize>,
    },
}

fn parse_box(s: &str, n: usize) -> Result<DimBox, CliError> {
    let pairs: Vec<(i64, i64)> = s
        .split(',')
        .map(|p| {
            let (a, b) = p.split_once(':').ok_or_else(|| CliError::Usage(format!("box entry {p:?} is not a:b")))?;
            let a = a.trim().parse().map_err(|_| CliError::Usage(format!("bad bound {a:?}")))?;
            let b = b.trim().parse().map_err(|_| CliError::Usage(format!("bad bound {b:?}")))?;
            Ok((a, b))
        })
        .collect::<Result<_, CliError>>()?;
    let pairs = if pairs.len() == 1 { vec![pairs[0]; n] } else { pairs };
    if pairs.len() != n {
        return Err(CliError::Usage(format!("box has {} coordinates, quiver has {n} vertices", pairs.len())));
    }
    Ok(DimBox::new(pairs.iter().map(|p| p.0).collect(), pairs.iter().map(|p| p.1).collect())?)
}

fn out_err(e: std::io::Error) -> CliError {
    CliError::Io(e.to_string())
}

fn print_value(out: &mut dyn Write, json: bool, expanded: bool, p: &LaurentPoly) -> Result<(), CliError> {
    if json {
        writeln!(out, "{}", laurent_json(p)).map_err(out_err)
    } else if expanded {
        writeln!(out, "{p}").map_err(out_err)
    } else {
        writeln!(out, "{}", to_fraction_string(p)).map_err(out_err)
    }
}

fn tube_context(spec: &str, rank: usize, cap: usize, config: &CountConfig) -> Result<TubeContext, CliError> {
    let ctx = if spec == "generic" {
        TubeContext::generic(rank, cap)?
    } else {
        let (preset, tube) = spec.rsplit_once(':').ok_or_else(|| CliError::Usage(format!("--ctx {spec:?} is not preset:tube")))?;
        let preset = parse_preset(preset).map_err(CliError::Usage)?;
        let tube = tube.parse().map_err(|_| CliError::Usage(format!("bad tube index {tube:?}")))?;
        TubeContext::from_preset(preset, tube, cap, config)?
    };
    if ctx.rank() != rank {
        return Err(acluster_core::Error::InvalidParameter(format!("{} has rank {}, not {rank}", ctx.provenance(), ctx.rank())).into());
    }
    Ok(ctx)
}

fn execute(cli: Cli, out: &mut dyn Write) -> Result<i32, CliError> {
    let o = &cli.opts;
    let config = o.config();
    match cli.command {
        Command::Var { preset, object, expanded } => {
            let r = Resolver::new(preset, config, o.cap)?;
            let v = r.resolve(&parse_object(&object)?)?;
            print_value(out, o.json, expanded, &v.value)?;
        }
        Command::Gr { preset, module, e } => {
            let r = Resolver::new(preset, config.clone(), o.cap)?;
            let m = r.module(&parse_object(&module)?)?;
            if e.iter().any(|&x| x < 0) {
                return Err(CliError::Usage("e must be nonnegative".into()));
            }
            let e: Vec<usize> = e.iter().map(|&x| x as usize).collect();
            let mut engine = GrassmannianEngine::new(&m, config)?;
            let chi = engine.euler_char(&e)?;
            if o.json {
                let poly: Vec<_> = chi.poly.iter().map(crate::formats::int_json).collect();
                let v = json!({"e": e, "chi": crate::formats::int_json(&chi.chi), "poly": poly, "primes": chi.primes});
                writeln!(out, "{v}").map_err(out_err)?;
            } else {
                let poly: Vec<String> = chi.poly.iter().map(|c| c.to_string()).collect();
                writeln!(out, "chi = {}", chi.chi).map_err(out_err)?;
                writeln!(out, "counting polynomial (constant first) = [{}]", poly.join(", ")).map_err(out_err)?;
            }
        }
        Command::Frieze { preset, forward, backward, dump } => {
            let q = acluster_core::Quiver::from_preset(preset)?;
            let t = knit(&q, forward, backward)?;
            if !t.check_meshes() {
                return Err(CliError::Breach("mesh relation".into()));
            }
            if o.json {
                writeln!(out, "{}", frieze_json(&t)).map_err(out_err)?;
            } else if dump {
                write!(out, "{}", t.dump()).map_err(out_err)?;
            } else {
                writeln!(out, "slices -{backward}..{forward}: {} entries, mesh relations hold", t.len()).map_err(out_err)?;
            }
        }
        Command::TubeMul { rank, left, right, ctx, nf } => {
            if left.len() != 2 || right.len() != 3 || left.iter().chain(&right).any(|&x| x < 0) {
                return Err(CliError::Usage("--left i,k and --right j,m,l take nonnegative integers".into()));
            }
            let [i, k] = [left[0] as usize, left[1] as usize];
            let [j, m, l] = [right[0] as usize, right[1] as usize, right[2] as usize];
            let (case, sum) = tube_multiply(rank, i, k, j, m, l)?;
            let sum = if nf { normal_form(rank, &[RegularLabel::new(i, k), RegularLabel::new(j, m * rank + l)])? } else { sum };
            if let Some(spec) = ctx {
                let c = tube_context(&spec, rank, o.cap, &config)?;
                let lhs = c.tube_variable(i, k)? * c.tube_variable(j, m * rank + l)?;
                if sum.evaluate(&c)? != lhs {
                    return Err(CliError::Breach(format!("product formula fails in {}", c.provenance())));
                }
            }
            if o.json {
                let mut v = formal_sum_json(&sum);
                v["case"] = json!(case.label());
                writeln!(out, "{v}").map_err(out_err)?;
            } else {
                writeln!(out, "{sum}").map_err(out_err)?;
            }
        }
        Command::Delta { preset, n, counted, expanded } => {
            let v = if counted { delta_variable_counted(preset, n, &config)? } else { delta_variable(preset, n, &config)? };
            print_value(out, o.json, expanded, &v)?;
        }
        Command::Basis { preset, bounds, dump } => {
            let q = acluster_core::Quiver::from_preset(preset)?;
            let b = parse_box(&bounds, q.n())?;
            let t = BasisTable::build(preset, b, &config)?;
            let missing = t.missing();
            if o.json {
                let els: Vec<_> = t.elements().map(element_json).collect();
                writeln!(out, "{}", json!({"box": t.bounds().to_string(), "elements": els, "missing": missing})).map_err(out_err)?;
            } else {
                if dump {
                    write!(out, "{}", t.dump()).map_err(out_err)?;
                }
                writeln!(out, "{} elements on box {}, {} vectors missing", t.len(), t.bounds(), missing.len()).map_err(out_err)?;
            }
        }
        Command::Expand { preset, input, bounds } => {
            let r = Resolver::new(preset, config.clone(), o.cap)?;
            let n = r.quiver.n();
            let p = if std::path::Path::new(&input).is_file() {
                let text = std::fs::read_to_string(&input).map_err(|e| CliError::Io(format!("{input}: {e}")))?;
                parse_laurent(&text, n)?
            } else {
                r.resolve_product(&parse_product(&input)?)?.value
            };
            let b = match bounds {
                Some(s) => parse_box(&s, n)?,
                None => default_box(&p)?,
            };
            let t = BasisTable::build(preset, b, &config)?;
            let e = expand(&p, &t)?;
            if e.reconstruct(&t)? != p {
                return Err(CliError::Breach("expansion does not reproduce the input".into()));
            }
            if o.json {
                writeln!(out, "{}", expansion_json(&e, &t)).map_err(out_err)?;
            } else {
                for (c, d) in &e.terms {
                    let el = t.get(d).expect("expanded against the table");
                    let dims: Vec<String> = d.iter().map(|x| x.to_string()).collect();
                    writeln!(out, "{c} ({}) {} {}", dims.join(","), el.kind, el.description()).map_err(out_err)?;
                }
            }
        }
        Command::Verify { all, criteria } => {
            let ids: Vec<usize> = if all || criteria.is_empty() { (1..=verify::COUNT).collect() } else { criteria };
            let mut failed = 0;
            let mut reports = Vec::new();
            for id in ids {
                let r = verify::run_criterion(id).map_err(|e| CliError::Usage(e.to_string()))?;
                if !r.passed {
                    failed += 1;
                }
                if !o.json {
                    writeln!(out, "{}", r.line()).map_err(out_err)?;
                }
                reports.push(r);
            }
            if o.json {
                writeln!(out, "{}", serde_json::to_string(&reports).expect("serializable")).map_err(out_err)?;
            }
            return Ok(if failed == 0 { EXIT_OK } else { crate::EXIT_DOMAIN });
        }
    }
    Ok(EXIT_OK)
}

/// Upper corner at the input's denominator vector; the lower corner sits
/// below every exponent of the input by the total size of that vector, which
/// leaves room for the lower terms elimination introduces.
fn default_box(p: &LaurentPoly) -> Result<DimBox, CliError> {
    let d = p.denominator_vector()?;
    let (_, hi) = p.exponent_bounds().expect("nonzero");
    let slack = d.iter().map(|x| x.abs()).sum::<i64>() + 2;
    let lower: Vec<i64> = d.iter().zip(&hi).map(|(&di, &h)| di.min(-(h as i64)) - slack).collect();
    Ok(DimBox::new(lower, d)?)
}

/// Runs one invocation; returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{e}");
                    EXIT_OK
                }
                _ => {
                    let _ = write!(err, "{e}");
                    EXIT_USAGE
                }
            };
        }
    };
    match execute(cli, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}
