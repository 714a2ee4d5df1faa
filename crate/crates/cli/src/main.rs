use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use clonoid_core::clonoid::{clonoid_closure_at_arity, ClonoidLattice};
use clonoid_core::verify::verify_pair;
use clonoid_core::{
    build_lattice, count_clonoids, factor, target_poly, ClonoidId, Error, Factorization, Field,
    FieldPair, FnTable, Guard, Poly,
};
use serde_json::{json, Value};

#[derive(Parser, Debug)]
#[command(
    name = "clonoid",
    version,
    about = "Enumerate and query (F_p, F_q)-linearly closed clonoids"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Factor x^(q-1) - 1 over F_p, or the polynomial given with --poly
    Factor {
        #[command(flatten)]
        common: Common,
        /// Polynomial over F_p, e.g. "x^2+1" or a JSON coefficient array (low degree first)
        #[arg(long)]
        poly: Option<String>,
    },
    /// Number of clonoids
    Count {
        #[command(flatten)]
        common: Common,
    },
    /// The full clonoid lattice
    Lattice {
        #[command(flatten)]
        common: Common,
    },
    /// A single unary generator of the addressed clonoid
    Generator {
        #[command(flatten)]
        common: Common,
        /// Clonoid identifier, e.g. '{"constants":true,"exponents":[2]}'
        #[arg(long)]
        clonoid: String,
    },
    /// The n-ary part of the clonoid generated by the tables in --file
    Closure {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        arity: usize,
        /// JSON file with one table or an array of tables
        #[arg(long)]
        file: PathBuf,
    },
    /// Membership of each table in --file in the addressed clonoid
    Member {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        clonoid: String,
        #[arg(long)]
        file: PathBuf,
    },
    /// Run every applicable check for the pair
    Verify {
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Args, Debug)]
struct Common {
    /// Order of the target field F_p
    #[arg(short = 'p', value_parser = clap::value_parser!(u64).range(2..))]
    p: u64,
    /// Order of the source field F_q
    #[arg(short = 'q', value_parser = clap::value_parser!(u64).range(2..))]
    q: Option<u64>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Lift the desk-scale enumeration bounds
    #[arg(long)]
    force: bool,
    /// Seed for sampled checks
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Dot,
}

enum Failure {
    Core(Error),
    Usage(String),
    Io(PathBuf, std::io::Error),
    Verify(usize),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

type Outcome = Result<String, Failure>;

impl Common {
    fn guard(&self) -> Guard {
        Guard { force: self.force }
    }

    fn q(&self) -> Result<u64, Failure> {
        self.q
            .ok_or_else(|| Failure::Usage("-q is required for this command".into()))
    }

    fn fields(&self) -> Result<(Field, Field), Failure> {
        let q = self.q()?;
        Ok((Field::new(self.p)?, Field::new(q)?))
    }

    fn pair(&self) -> Result<FieldPair, Failure> {
        let (p, q) = self.fields()?;
        Ok(FieldPair::new(&p, &q)?)
    }

    fn no_dot(&self) -> Result<(), Failure> {
        if self.format == Format::Dot {
            return Err(Failure::Usage(
                "--format dot is only available for lattice".into(),
            ));
        }
        Ok(())
    }
}

fn pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("json values serialize")
}

fn factorization_json(f: &Factorization) -> Value {
    let factors: Vec<Value> = f
        .factors
        .iter()
        .map(|(p, k)| json!({"factor": p.to_string(), "coeffs": p.to_ints(), "multiplicity": k}))
        .collect();
    json!({"unit": f.unit.0, "factors": factors, "text": f.to_string()})
}

fn read_tables(path: &PathBuf, pair: &FieldPair) -> Result<Vec<FnTable>, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure::Io(path.clone(), e))?;
    let tables = FnTable::parse_many(&text)?;
    for t in &tables {
        pair.same_as(t.pair())?;
    }
    Ok(tables)
}

fn cmd_factor(c: &Common, poly: Option<&str>) -> Outcome {
    c.no_dot()?;
    let p = Field::new(c.p)?;
    let (target, label) = match poly {
        Some(text) => {
            let f = Poly::parse(&p, text)?;
            let label = f.to_string();
            (f, label)
        }
        None => {
            let q = Field::new(c.q()?)?;
            (target_poly(&p, &q)?, format!("x^{}-1", q.order() - 1))
        }
    };
    let f = factor(&target)?;
    Ok(match c.format {
        Format::Json => {
            let mut v = factorization_json(&f);
            v["p"] = json!(c.p);
            v["poly"] = json!(label);
            pretty(&v)
        }
        _ => f.to_string(),
    })
}

fn cmd_count(c: &Common) -> Outcome {
    c.no_dot()?;
    let (p, q) = c.fields()?;
    let n = count_clonoids(&p, &q)?;
    Ok(match c.format {
        Format::Json => {
            let f = factor(&target_poly(&p, &q)?)?;
            pretty(
                &json!({"p": c.p, "q": c.q, "count": n, "factorization": factorization_json(&f)}),
            )
        }
        _ => n.to_string(),
    })
}

fn cmd_lattice(c: &Common) -> Outcome {
    let lat = ClonoidLattice::new(&c.pair()?, c.guard())?;
    let l = build_lattice(lat.clonoids())?;
    Ok(match c.format {
        Format::Dot => l.to_dot().trim_end().to_string(),
        Format::Json => {
            let nodes: Vec<Value> = lat
                .clonoids()
                .iter()
                .enumerate()
                .map(|(i, cl)| {
                    json!({
                        "index": i,
                        "label": cl.label(),
                        "id": cl.id(),
                        "dim": cl.dim(),
                        "unary_part": cl.unary_part().to_json(),
                    })
                })
                .collect();
            let edges: Vec<Value> = l.covers().into_iter().map(|(a, b)| json!([a, b])).collect();
            let factors: Vec<String> = lat
                .primary()
                .factorization
                .factors
                .iter()
                .map(|(f, _)| f.to_string())
                .collect();
            pretty(&json!({"p": c.p, "q": c.q, "factors": factors, "nodes": nodes, "edges": edges}))
        }
        Format::Text => {
            let mut lines = Vec::new();
            for cl in lat.clonoids() {
                let basis: Vec<String> = cl
                    .unary_part()
                    .basis_vectors()
                    .iter()
                    .map(|v| format!("{:?}", v.iter().map(|x| x.0).collect::<Vec<_>>()))
                    .collect();
                lines.push(format!(
                    "{:<16} {}  basis {}",
                    cl.label(),
                    cl.id(),
                    basis.join(" ")
                ));
            }
            lines.push(format!(
                "{} clonoids, {} covering pairs",
                l.len(),
                l.covers().len()
            ));
            lines.join("\n")
        }
    })
}

fn cmd_generator(c: &Common, id: &str) -> Outcome {
    c.no_dot()?;
    let lat = ClonoidLattice::new(&c.pair()?, c.guard())?;
    let cl = lat.get(&ClonoidId::parse(id)?)?;
    let g = lat.unary_generator(cl)?;
    Ok(match c.format {
        Format::Json => serde_json::to_string(&g.to_json()).expect("tables serialize"),
        _ => format!("{:?}", g.values().iter().map(|x| x.0).collect::<Vec<_>>()),
    })
}

fn cmd_closure(c: &Common, arity: usize, file: &PathBuf) -> Outcome {
    c.no_dot()?;
    let pair = c.pair()?;
    let tables = read_tables(file, &pair)?;
    let s = clonoid_closure_at_arity(&pair, &tables, arity, c.guard())?;
    Ok(match c.format {
        Format::Json => pretty(&serde_json::to_value(s.to_json()).expect("subspaces serialize")),
        _ => {
            let mut lines = vec![format!("dim {} of {}", s.dim(), s.ambient())];
            for v in s.basis_vectors() {
                lines.push(format!("{:?}", v.iter().map(|x| x.0).collect::<Vec<_>>()));
            }
            lines.join("\n")
        }
    })
}

fn cmd_member(c: &Common, id: &str, file: &PathBuf) -> Outcome {
    c.no_dot()?;
    let pair = c.pair()?;
    let lat = ClonoidLattice::new(&pair, c.guard())?;
    let cl = lat.get(&ClonoidId::parse(id)?)?;
    let tables = read_tables(file, &pair)?;
    let verdicts = tables
        .iter()
        .map(|t| cl.contains(t))
        .collect::<Result<Vec<bool>, Error>>()?;
    Ok(match c.format {
        Format::Json => pretty(&json!({"clonoid": cl.id(), "member": verdicts})),
        _ => verdicts
            .iter()
            .map(bool::to_string)
            .collect::<Vec<_>>()
            .join("\n"),
    })
}

fn cmd_verify(c: &Common) -> Outcome {
    c.no_dot()?;
    let (p, q) = c.fields()?;
    let report = verify_pair(&p, &q, c.guard(), c.seed)?;
    let text = match c.format {
        Format::Json => {
            let checks: Vec<Value> = report
                .checks
                .iter()
                .map(|ch| json!({"name": ch.name, "status": format!("{:?}", ch.status).to_lowercase(), "detail": ch.detail}))
                .collect();
            pretty(
                &json!({"p": c.p, "q": c.q, "seed": c.seed, "passed": report.all_passed(), "checks": checks}),
            )
        }
        _ => report.to_string(),
    };
    if report.all_passed() {
        Ok(text)
    } else {
        println!("{text}");
        Err(Failure::Verify(report.failures()))
    }
}

fn run(cli: &Cli) -> Outcome {
    match &cli.command {
        Command::Factor { common, poly } => cmd_factor(common, poly.as_deref()),
        Command::Count { common } => cmd_count(common),
        Command::Lattice { common } => cmd_lattice(common),
        Command::Generator { common, clonoid } => cmd_generator(common, clonoid),
        Command::Closure {
            common,
            arity,
            file,
        } => cmd_closure(common, *arity, file),
        Command::Member {
            common,
            clonoid,
            file,
        } => cmd_member(common, clonoid, file),
        Command::Verify { common } => cmd_verify(common),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            println!("{out}");
            ExitCode::SUCCESS
        }
        // exit codes: 1 failed checks, 2 domain or input error, 3 guard violation
        Err(Failure::Core(e)) => {
            eprintln!("error[{}]: {e}", e.code());
            ExitCode::from(if e.is_guard_violation() { 3 } else { 2 })
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error[Usage]: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Io(path, e)) => {
            eprintln!("error[Io]: {}: {e}", path.display());
            ExitCode::from(2)
        }
        Err(Failure::Verify(n)) => {
            eprintln!("error[VerifyFailed]: {n} checks failed");
            ExitCode::from(1)
        }
    }
}
