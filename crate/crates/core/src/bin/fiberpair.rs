use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde_json::{json, Value};

use fiberpair::fiber::{self, validate_with, KodairaType, SpecialFiber, ValidationOptions};
use fiberpair::group::ComponentGroup;
use fiberpair::oracle::{
    artinian_norm_check, local_multiplicity, local_multiplicity_by_length, pairing_principal,
    parse_poly, parse_split, ClosedPoint, RationalFunction, ZeroCycle,
};
use fiberpair::pairing::{extendability_test, gross_hriljac};
use fiberpair::{Error, Result};

/// Component groups, Néron-type pairings and local intersection numbers
/// for special fibers of arithmetic surfaces.
#[derive(Parser)]
#[command(name = "fiberpair", version)]
struct Cli {
    /// Output style.
    #[arg(long, value_enum, default_value_t = Format::Human, global = true)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Human,
    Json,
}

#[derive(Args, Clone)]
struct FiberSource {
    /// Fiber description in JSON.
    #[arg(required_unless_present = "fixture", conflicts_with = "fixture")]
    file: Option<PathBuf>,
    /// Built-in Kodaira configuration, e.g. I3, I*0, IV*.
    #[arg(long, value_name = "TAG")]
    fixture: Option<String>,
}

impl FiberSource {
    fn load(&self) -> Result<SpecialFiber> {
        match (&self.file, &self.fixture) {
            (_, Some(tag)) => fiber::kodaira(tag.parse::<KodairaType>()?),
            (Some(path), None) => fiber::load(path),
            (None, None) => unreachable!("clap enforces a source"),
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Check the structural invariants of a fiber.
    Validate {
        #[command(flatten)]
        source: FiberSource,
        /// Allow negative off-diagonal entries.
        #[arg(long)]
        permissive: bool,
    },
    /// Print the component group.
    Group {
        #[command(flatten)]
        source: FiberSource,
    },
    /// Evaluate the pairing on two vectors, or tabulate it on generators.
    Pairing {
        #[command(flatten)]
        source: FiberSource,
        #[arg(long, num_args = 2, value_names = ["T", "T'"], allow_hyphen_values = true,
              value_parser = parse_vector, required_unless_present = "table", conflicts_with = "table")]
        pair: Option<Vec<Vec<BigInt>>>,
        #[arg(long)]
        table: bool,
        /// Compute table rows in parallel.
        #[arg(long, requires = "table")]
        parallel: bool,
    },
    /// Horizontal plus vertical decomposition of the local pairing.
    Gh {
        #[command(flatten)]
        source: FiberSource,
        #[arg(long, allow_hyphen_values = true, value_name = "K")]
        horiz: BigInt,
        #[arg(long = "rho-c", allow_hyphen_values = true, value_parser = parse_vector)]
        rho_c: ::std::vec::Vec<BigInt>,
        #[arg(long = "rho-d", allow_hyphen_values = true, value_parser = parse_vector)]
        rho_d: ::std::vec::Vec<BigInt>,
    },
    /// Decide whether a multidegree extends to a divisor orthogonal to all components.
    Extend {
        #[command(flatten)]
        source: FiberSource,
        #[arg(long = "rho-d", allow_hyphen_values = true, value_parser = parse_vector)]
        rho_d: ::std::vec::Vec<BigInt>,
    },
    /// Local intersection numbers on the projective line over Q.
    Oracle {
        #[command(subcommand)]
        which: OracleCommand,
    },
    /// Write a built-in configuration as a fiber file.
    Fixture {
        tag: String,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Method {
    Resultant,
    Length,
    Both,
}

#[derive(Args)]
struct FunctionArgs {
    /// Numerator of f.
    #[arg(long, allow_hyphen_values = true)]
    f: String,
    /// Denominator of f.
    #[arg(long, allow_hyphen_values = true)]
    den: Option<String>,
}

impl FunctionArgs {
    fn function(&self) -> Result<RationalFunction> {
        RationalFunction::parse(&self.f, self.den.as_deref())
    }
}

#[derive(Subcommand)]
enum OracleCommand {
    /// Multiplicity of div(f) at the point g = 0 over p.
    Local {
        #[arg(long, allow_hyphen_values = true)]
        g: String,
        #[command(flatten)]
        f: FunctionArgs,
        #[arg(long)]
        prime: u64,
        #[arg(long, value_enum, default_value_t = Method::Resultant)]
        method: Method,
    },
    /// Pairing of a degree-zero cycle with div(f).
    Principal {
        /// Cycle term `N:POLY`, repeatable.
        #[arg(long = "term", required = true, allow_hyphen_values = true, value_parser = parse_term)]
        terms: Vec<(BigInt, String)>,
        #[command(flatten)]
        f: FunctionArgs,
        #[arg(long)]
        prime: u64,
    },
    /// Norm of c from Q[x]/(h) against the product of its values at the roots.
    Norm {
        /// Split polynomial such as (x-1)^2(x-2).
        #[arg(long)]
        h: String,
        #[arg(long, allow_hyphen_values = true)]
        c: String,
    },
}

fn parse_vector(s: &str) -> std::result::Result<Vec<BigInt>, String> {
    if s.trim().is_empty() {
        return Ok(Vec::new());
    }
    s.split(',')
        .map(|t| {
            t.trim()
                .parse::<BigInt>()
                .map_err(|_| format!("`{}` is not an integer", t.trim()))
        })
        .collect()
}

fn parse_term(s: &str) -> std::result::Result<(BigInt, String), String> {
    let (n, g) = s
        .split_once(':')
        .ok_or_else(|| format!("expected N:POLY, got `{s}`"))?;
    let n = n
        .trim()
        .parse::<BigInt>()
        .map_err(|_| format!("`{}` is not an integer", n.trim()))?;
    Ok((n, g.trim().to_string()))
}

fn rat_json(q: &BigRational) -> Value {
    Value::String(format!("{}/{}", q.numer(), q.denom()))
}

fn int_json(n: &BigInt) -> Value {
    match n.to_i64() {
        Some(v) => json!(v),
        None => Value::String(n.to_string()),
    }
}

fn ints_json(v: &[BigInt]) -> Value {
    Value::Array(v.iter().map(int_json).collect())
}

fn rats_json(v: &[BigRational]) -> Value {
    Value::Array(v.iter().map(rat_json).collect())
}

fn fmt_rats(v: &[BigRational]) -> String {
    let parts: Vec<String> = v.iter().map(ToString::to_string).collect();
    format!("({})", parts.join(", "))
}

/// What a command produced: human text, a JSON payload, and whether the
/// check it performed succeeded.
struct Outcome {
    fiber: Option<String>,
    human: String,
    json: Value,
    ok: bool,
}

impl Outcome {
    fn new(fiber: Option<&SpecialFiber>, human: String, json: Value) -> Self {
        Outcome {
            fiber: fiber.map(|f| f.name().to_string()),
            human,
            json,
            ok: true,
        }
    }

    fn failing(mut self, failed: bool) -> Self {
        self.ok = !failed;
        self
    }
}

fn run(command: &Command) -> Result<Outcome> {
    match command {
        Command::Validate { source, permissive } => {
            let f = source.load()?;
            let opts = if *permissive {
                ValidationOptions::permissive()
            } else {
                ValidationOptions::default()
            };
            let report = validate_with(&f, opts);
            let mut lines = Vec::new();
            let mut checks = Vec::new();
            for c in &report.checks {
                let key = c.invariant.key();
                if c.passed {
                    lines.push(format!("{key}: ok"));
                } else {
                    lines.push(format!("{key}: FAILED ({})", c.detail));
                }
                checks.push(json!({"invariant": key, "passed": c.passed, "detail": c.detail}));
            }
            let valid = report.passed();
            lines.push(if valid { "valid" } else { "invalid" }.to_string());
            let out = Outcome::new(
                Some(&f),
                lines.join("\n"),
                json!({"valid": valid, "checks": checks}),
            );
            Ok(out.failing(!valid))
        }
        Command::Group { source } => {
            let f = source.load()?;
            let g = ComponentGroup::new(&f)?;
            let gens: Vec<Value> = g.generators().iter().map(|v| ints_json(v)).collect();
            Ok(Outcome::new(
                Some(&f),
                g.to_string(),
                json!({
                    "group": g.to_string(),
                    "invariant_factors": ints_json(g.invariant_factors()),
                    "order": int_json(g.order()),
                    "exponent": int_json(g.exponent()),
                    "generators": gens,
                }),
            ))
        }
        Command::Pairing {
            source,
            pair,
            table,
            parallel,
        } => {
            let f = source.load()?;
            let g = ComponentGroup::new(&f)?;
            if let (Some(pair), false) = (pair, table) {
                let v = g.pairing(&pair[0], &pair[1])?;
                return Ok(Outcome::new(
                    Some(&f),
                    v.to_string(),
                    json!({"t": ints_json(&pair[0]), "t_prime": ints_json(&pair[1]), "value": rat_json(v.value())}),
                ));
            }
            let rows = if *parallel {
                g.pairing_table_parallel()?
            } else {
                g.pairing_table()?
            };
            let human = if rows.is_empty() {
                "(empty table: trivial group)".to_string()
            } else {
                rows.iter()
                    .map(|r| {
                        r.iter()
                            .map(ToString::to_string)
                            .collect::<Vec<_>>()
                            .join(" ")
                    })
                    .collect::<Vec<_>>()
                    .join("\n")
            };
            let table: Vec<Value> = rows
                .iter()
                .map(|r| Value::Array(r.iter().map(|q| rat_json(q.value())).collect()))
                .collect();
            let gens: Vec<Value> = g.generators().iter().map(|v| ints_json(v)).collect();
            Ok(Outcome::new(
                Some(&f),
                human,
                json!({"generators": gens, "table": table}),
            ))
        }
        Command::Gh {
            source,
            horiz,
            rho_c,
            rho_d,
        } => {
            let f = source.load()?;
            let r = gross_hriljac(&f, horiz, rho_c, rho_d)?;
            let human = format!(
                "horizontal: {}\nvertical: {}\nV: {}\ntotal: {}",
                r.horizontal,
                r.vertical,
                fmt_rats(&r.v_used),
                r.total
            );
            Ok(Outcome::new(
                Some(&f),
                human,
                json!({
                    "horizontal": int_json(&r.horizontal),
                    "vertical": rat_json(&r.vertical),
                    "v": rats_json(&r.v_used),
                    "total": rat_json(&r.total),
                }),
            ))
        }
        Command::Extend { source, rho_d } => {
            let f = source.load()?;
            let g = ComponentGroup::new(&f)?;
            let e = extendability_test(&g, rho_d)?;
            let mut human = match e.obstruction() {
                None => "extendable".to_string(),
                Some(q) => format!("obstructed, probe value {q}"),
            };
            if let Some(w) = &e.witness {
                human.push_str(&format!("\nwitness: {}", fmt_rats(w)));
            }
            let out = Outcome::new(
                Some(&f),
                human,
                json!({
                    "extendable": e.extendable,
                    "probe_values": rats_json(&e.probe_values),
                    "obstruction": e.obstruction().map(|q| rat_json(q.value())),
                    "witness": e.witness.as_deref().map(rats_json),
                }),
            );
            Ok(out.failing(!e.extendable))
        }
        Command::Oracle { which } => run_oracle(which),
        Command::Fixture { tag, output } => {
            let f = fiber::kodaira(tag.parse::<KodairaType>()?)?;
            let text = fiber::to_json_string(&f)?;
            let human = match output {
                Some(path) => {
                    fiber::save(path, &f)?;
                    format!("wrote {}", path.display())
                }
                None => text.trim_end().to_string(),
            };
            let payload: Value = serde_json::from_str(&text)
                .map_err(|e| Error::Internal(format!("fixture JSON: {e}")))?;
            Ok(Outcome::new(Some(&f), human, payload))
        }
    }
}

fn run_oracle(which: &OracleCommand) -> Result<Outcome> {
    match which {
        OracleCommand::Local {
            g,
            f,
            prime,
            method,
        } => {
            let pt = ClosedPoint::parse(g)?;
            let func = f.function()?;
            let by_resultant = match method {
                Method::Length => None,
                _ => Some(local_multiplicity(&pt, &func, *prime)?),
            };
            let by_length = match method {
                Method::Resultant => None,
                _ => {
                    if !func.denominator().is_monic() || func.denominator().degree() != Some(0) {
                        return Err(Error::Polynomial(
                            "the length method takes a polynomial f".into(),
                        ));
                    }
                    Some(local_multiplicity_by_length(&pt, func.numerator(), *prime)?)
                }
            };
            let (human, agree) = match (by_resultant, by_length) {
                (Some(a), Some(b)) if a == b => (format!("{a} = {b} OK"), true),
                (Some(a), Some(b)) => (format!("{a} != {b} MISMATCH"), false),
                (Some(a), None) | (None, Some(a)) => (a.to_string(), true),
                (None, None) => unreachable!(),
            };
            let out = Outcome::new(
                None,
                human,
                json!({
                    "point": pt.poly().to_string(),
                    "prime": prime,
                    "resultant": by_resultant,
                    "length": by_length,
                }),
            );
            Ok(out.failing(!agree))
        }
        OracleCommand::Principal { terms, f, prime } => {
            let points = terms
                .iter()
                .map(|(n, g)| Ok((n.clone(), ClosedPoint::parse(g)?)))
                .collect::<Result<Vec<_>>>()?;
            let cycle = ZeroCycle::new(points)?;
            let value = pairing_principal(&cycle, &f.function()?, *prime)?;
            Ok(Outcome::new(
                None,
                value.to_string(),
                json!({"prime": prime, "value": int_json(&value)}),
            ))
        }
        OracleCommand::Norm { h, c } => {
            let factors = parse_split(h)?;
            let c = parse_poly(c)?;
            let r = artinian_norm_check(&factors, &c)?;
            let human = if r.equal {
                format!("{} = {} OK", r.lhs, r.rhs)
            } else {
                format!("{} != {} MISMATCH", r.lhs, r.rhs)
            };
            let out = Outcome::new(
                None,
                human,
                json!({"lhs": rat_json(&r.lhs), "rhs": rat_json(&r.rhs), "equal": r.equal}),
            );
            Ok(out.failing(!r.equal))
        }
    }
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Validate { .. } => "validate",
        Command::Group { .. } => "group",
        Command::Pairing { .. } => "pairing",
        Command::Gh { .. } => "gh",
        Command::Extend { .. } => "extend",
        Command::Fixture { .. } => "fixture",
        Command::Oracle { which } => match which {
            OracleCommand::Local { .. } => "oracle local",
            OracleCommand::Principal { .. } => "oracle principal",
            OracleCommand::Norm { .. } => "oracle norm",
        },
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let name = command_name(&cli.command);
    let args: Vec<String> = std::env::args().skip(1).collect();
    match run(&cli.command) {
        Ok(out) => {
            match cli.format {
                Format::Human => println!("{}", out.human),
                Format::Json => {
                    let env = json!({
                        "command": name,
                        "args": args,
                        "fiber": out.fiber,
                        "result": out.json,
                    });
                    println!(
                        "{}",
                        serde_json::to_string_pretty(&env).expect("serialisable")
                    );
                }
            }
            if out.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            if cli.format == Format::Json {
                let env = json!({"command": name, "args": args, "error": e.to_string()});
                println!(
                    "{}",
                    serde_json::to_string_pretty(&env).expect("serialisable")
                );
            }
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
