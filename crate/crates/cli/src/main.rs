use std::io::Write;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use superschur::kostant::{dimension_count, enumerate_basis_y, KostantFactor, KostantMonomial};
use superschur::qalgebra::{enumerate_basis_yq, Letter, QAtom, QTerm};
use superschur::qfield::{RatFn, Rational};
use superschur::qreplift::{
    basis_rank_certify_q, coordinates_in_yq, qmatrix_to_json, verify_commutation_quantum, verify_idempotents_quantum,
    verify_omega, verify_relations_quantum, QRep,
};
use superschur::replift::{
    basis_rank_certify, commutant_dimension, coordinates_in_y, matrix_to_csv, matrix_to_json, verify_commutation_classical,
    verify_idempotents_classical, verify_relations_classical, verify_schur_weyl, ClassicalRep, Generator,
};
use superschur::report::{Check, VerificationReport};
use superschur::superroot::{Dims, Root, Weight};

const SIZE_LIMIT: u128 = 4096;

#[derive(Parser)]
#[command(name = "superschur", about = "Exact computations in Schur superalgebras and q-Schur superalgebras")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Dimension formula, basis size and commutant dimension.
    Dim(Common),
    /// Run a verification suite.
    Verify {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_enum, default_value = "all")]
        suite: Suite,
    },
    /// List the basis `e_A 1_λ f_C` (or `E_A 1_λ F_C`).
    Basis(Common),
    /// Export the matrix of a generator on tensor space.
    Matrix {
        #[command(flatten)]
        common: Common,
        /// `e1`, `f1`, `H1` (classical) or `E1`, `F1`, `K1`, `K1^-1` (quantum).
        #[arg(long)]
        gen: String,
    },
    /// Coordinates of a monomial in the basis.
    Coords {
        #[command(flatten)]
        common: Common,
        /// JSON list of factors, e.g. `[["f",1],["e",1]]`.
        #[arg(long)]
        input: String,
    },
}

#[derive(Args, Clone)]
struct Common {
    #[arg(long)]
    m: usize,
    #[arg(long)]
    n: usize,
    #[arg(long)]
    d: usize,
    #[arg(long, value_enum, default_value = "classical")]
    mode: Mode,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
    #[arg(long, default_value_t = 2)]
    max_power: u32,
    /// Specialization point for the quantum rank computation.
    #[arg(long, default_value = "2")]
    q0: String,
    /// Lift the (m+n)^d <= 4096 size guard.
    #[arg(long)]
    allow_large: bool,
}

#[derive(ValueEnum, Clone, Copy, PartialEq, Eq)]
enum Mode {
    Classical,
    Quantum,
}

#[derive(ValueEnum, Clone, Copy, PartialEq, Eq)]
enum Format {
    Json,
    Csv,
}

#[derive(ValueEnum, Clone, Copy, PartialEq, Eq, Debug)]
enum Suite {
    Relations,
    Commutation,
    Basis,
    Idempotents,
    SchurWeyl,
    Omega,
    All,
}

enum Failure {
    Usage(String),
    Math(String),
}

type Outcome = Result<(), Failure>;

fn usage(msg: impl Into<String>) -> Failure {
    Failure::Usage(msg.into())
}

fn dims_of(c: &Common) -> Result<Dims, Failure> {
    if c.max_power == 0 {
        return Err(usage("--max-power must be at least 1"));
    }
    let dims = Dims::new(c.m, c.n, c.d).map_err(|e| usage(e.to_string()))?;
    let size = (c.m as u128 + c.n as u128).checked_pow(c.d as u32);
    if !c.allow_large && size.is_none_or(|s| s > SIZE_LIMIT) {
        return Err(usage(format!(
            "tensor space dimension (m+n)^d exceeds {SIZE_LIMIT}; pass --allow-large to proceed"
        )));
    }
    Ok(dims)
}

fn emit(v: &Value) {
    println!("{}", serde_json::to_string(v).expect("serializable"));
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn print_check(format: Format, c: &Check) {
    match format {
        Format::Json => emit(&serde_json::to_value(c).expect("serializable")),
        Format::Csv => println!(
            "{},{},{},{}",
            if c.passed { "PASS" } else { "FAIL" },
            csv_field(&c.name),
            csv_field(&c.citation),
            csv_field(c.witness.as_deref().unwrap_or(""))
        ),
    }
    std::io::stdout().flush().ok();
}

fn cmd_dim(c: &Common) -> Outcome {
    let dims = dims_of(c)?;
    let count = dimension_count(&dims);
    let y = enumerate_basis_y(&dims).len() as u128;
    let commutant = commutant_dimension(&dims) as u128;
    let agree = count == y && y == commutant;
    match c.format {
        Format::Json => emit(&json!({
            "m": c.m, "n": c.n, "d": c.d,
            "dimension_count": count.to_string(),
            "basis_size": y.to_string(),
            "commutant_dimension": commutant.to_string(),
            "agree": agree,
        })),
        Format::Csv => {
            println!("dimension_count,basis_size,commutant_dimension");
            println!("{count},{y},{commutant}");
        }
    }
    if agree {
        Ok(())
    } else {
        Err(Failure::Math(format!("dimension {count}, |Y| {y}, commutant {commutant}")))
    }
}

fn cmd_verify(c: &Common, suite: Suite) -> Outcome {
    let dims = dims_of(c)?;
    let quantum = c.mode == Mode::Quantum;
    match (suite, quantum) {
        (Suite::SchurWeyl, true) => return Err(usage("the schur-weyl suite is classical only")),
        (Suite::Omega, false) => return Err(usage("the omega suite is quantum only")),
        _ => {}
    }
    let q0: Rational = c.q0.parse().map_err(|_| usage(format!("cannot parse --q0 `{}`", c.q0)))?;
    let selected: Vec<Suite> = match suite {
        Suite::All if quantum => vec![Suite::Relations, Suite::Commutation, Suite::Basis, Suite::Idempotents, Suite::Omega],
        Suite::All => vec![Suite::Relations, Suite::Commutation, Suite::Basis, Suite::Idempotents, Suite::SchurWeyl],
        s => vec![s],
    };
    let format = c.format;
    if format == Format::Csv {
        println!("status,name,citation,witness");
    }
    let mut all = VerificationReport::new(format!("{dims}")).with_observer(move |ch| print_check(format, ch));
    for s in selected {
        eprintln!("running {s:?} on {dims} ({})", if quantum { "quantum" } else { "classical" });
        let report = match (s, quantum) {
            (Suite::Relations, false) => verify_relations_classical(&dims),
            (Suite::Relations, true) => verify_relations_quantum(&dims),
            (Suite::Commutation, false) => verify_commutation_classical(&dims, c.max_power),
            (Suite::Commutation, true) => verify_commutation_quantum(&dims, c.max_power),
            (Suite::Basis, false) => basis_rank_certify(&dims).0,
            (Suite::Basis, true) => {
                basis_rank_certify_q(&dims, &q0, false)
                    .map_err(|e| usage(e.to_string()))?
                    .0
            }
            (Suite::Idempotents, false) => verify_idempotents_classical(&dims),
            (Suite::Idempotents, true) => verify_idempotents_quantum(&dims),
            (Suite::SchurWeyl, _) => verify_schur_weyl(&dims),
            (Suite::Omega, _) => {
                let (report, parts) = verify_omega(&dims);
                let diag = |m: &superschur::qreplift::QMatrix| -> Vec<String> {
                    (0..m.n_rows()).map(|k| m.get(k, k).to_string()).collect()
                };
                let (omega, sigma) = (diag(&parts.omega), diag(&parts.sigma));
                match format {
                    Format::Json => emit(&json!({"omega_diagonal": omega, "sigma_diagonal": sigma})),
                    Format::Csv => {
                        println!("omega_diagonal,{}", omega.join(";"));
                        println!("sigma_diagonal,{}", sigma.join(";"));
                    }
                }
                report
            }
            (Suite::All, _) => unreachable!("expanded above"),
        };
        all.extend(report);
    }
    let failed = all.failures().count();
    if format == Format::Json {
        emit(&json!({"checks": all.len(), "failed": failed, "passed": failed == 0}));
    }
    if failed == 0 {
        Ok(())
    } else {
        Err(Failure::Math(format!("{failed} of {} checks failed", all.len())))
    }
}

fn cmd_basis(c: &Common) -> Outcome {
    let dims = dims_of(c)?;
    let ys = if c.mode == Mode::Quantum {
        enumerate_basis_yq(&dims)
    } else {
        enumerate_basis_y(&dims)
    };
    match c.format {
        Format::Json => emit(&serde_json::to_value(ys.iter().map(|y| y.to_json(&dims)).collect::<Vec<_>>()).expect("serializable")),
        Format::Csv => {
            println!("A,lambda,C");
            for y in &ys {
                let j = y.to_json(&dims);
                let trip = |t: &[(usize, usize, u32)]| {
                    t.iter().map(|(i, j, r)| format!("{i}:{j}:{r}")).collect::<Vec<_>>().join(";")
                };
                let l: Vec<String> = j.lambda.iter().map(i64::to_string).collect();
                println!("{},{},{}", trip(&j.a), l.join(";"), trip(&j.c));
            }
        }
    }
    Ok(())
}

fn cmd_matrix(c: &Common, gen: &str) -> Outcome {
    let dims = dims_of(c)?;
    match c.mode {
        Mode::Classical => {
            let g: Generator = gen.parse().map_err(|e: superschur::replift::ReplError| usage(e.to_string()))?;
            let m = ClassicalRep::new(&dims).generator(g).map_err(|e| usage(e.to_string()))?;
            match c.format {
                Format::Json => emit(&matrix_to_json(&m)),
                Format::Csv => print!("{}", matrix_to_csv(&m)),
            }
        }
        Mode::Quantum => {
            let l: Letter = gen.parse().map_err(|e: superschur::qalgebra::QAlgebraError| usage(e.to_string()))?;
            let rep = QRep::new(&dims);
            let m = rep.letter(l).map_err(|e| usage(e.to_string()))?;
            match c.format {
                Format::Json => emit(&qmatrix_to_json(m)),
                Format::Csv => print!("{}", matrix_to_csv(m)),
            }
        }
    }
    Ok(())
}

/// One parsed factor of a coordinates query.
enum Factor {
    Root { a: usize, b: usize, r: u32 },
    Binom { a: usize, s: u32 },
    K { a: usize, exp: i64 },
    Idem(Vec<i64>),
}

fn parse_factors(input: &str) -> Result<Vec<Factor>, Failure> {
    let bad = |why: &str| usage(format!("bad --input: {why}"));
    let v: Value = serde_json::from_str(input).map_err(|e| bad(&e.to_string()))?;
    let items = v.as_array().ok_or_else(|| bad("expected a JSON list"))?;
    let num = |x: &Value| x.as_i64().ok_or_else(|| bad("expected an integer"));
    let idx = |x: &Value| num(x).and_then(|k| usize::try_from(k).map_err(|_| bad("negative index")));
    let pow = |x: &Value| num(x).and_then(|k| u32::try_from(k).map_err(|_| bad("negative power")));
    items
        .iter()
        .map(|item| {
            let parts = item.as_array().ok_or_else(|| bad("each factor is a list"))?;
            let tag = parts.first().and_then(Value::as_str).ok_or_else(|| bad("factor tag must be a string"))?;
            let arg = |k: usize| parts.get(k).ok_or_else(|| bad(&format!("factor `{tag}` is missing arguments")));
            Ok(match tag {
                "e" | "E" => {
                    let a = idx(arg(1)?)?;
                    Factor::Root { a, b: a + 1, r: 1 }
                }
                "f" | "F" => {
                    let a = idx(arg(1)?)?;
                    Factor::Root { a: a + 1, b: a, r: 1 }
                }
                "x" => Factor::Root {
                    a: idx(arg(1)?)?,
                    b: idx(arg(2)?)?,
                    r: pow(arg(3)?)?,
                },
                "H" | "binom" => Factor::Binom {
                    a: idx(arg(1)?)?,
                    s: pow(arg(2)?)?,
                },
                "K" => Factor::K {
                    a: idx(arg(1)?)?,
                    exp: num(arg(2)?)?,
                },
                "1" => {
                    let w = arg(1)?.as_array().ok_or_else(|| bad("idempotent needs a weight list"))?;
                    Factor::Idem(w.iter().map(num).collect::<Result<_, _>>()?)
                }
                other => return Err(bad(&format!("unknown factor `{other}`"))),
            })
        })
        .collect()
}

fn cmd_coords(c: &Common, input: &str) -> Outcome {
    let dims = dims_of(c)?;
    let factors = parse_factors(input)?;
    let check_idx = |a: usize| dims.check_index(a).map_err(|e| usage(e.to_string()));
    let check_weight = |w: &[i64]| {
        if w.len() == dims.rank() {
            Ok(())
        } else {
            Err(usage(format!("weight has length {}, expected {}", w.len(), dims.rank())))
        }
    };
    let coords: Vec<(Value, String)> = match c.mode {
        Mode::Classical => {
            let (_, cert) = basis_rank_certify(&dims);
            if !cert.passed() {
                return Err(Failure::Math(format!("basis images are not independent: {cert:?}")));
            }
            let mut mono = KostantMonomial::one();
            for f in factors {
                mono.push(match f {
                    Factor::Root { a, b, r } => KostantFactor::RootPower {
                        root: Root::new(&dims, a, b).map_err(|e| usage(e.to_string()))?,
                        r,
                    },
                    Factor::Binom { a, s } => {
                        check_idx(a)?;
                        KostantFactor::CartanBinom { i: a, s }
                    }
                    Factor::K { .. } => return Err(usage("K factors exist only in quantum mode")),
                    Factor::Idem(w) => {
                        check_weight(&w)?;
                        KostantFactor::Idem(Weight(w))
                    }
                });
            }
            coordinates_in_y(&dims, &mono)
                .map_err(|e| Failure::Math(e.to_string()))?
                .into_iter()
                .map(|(y, x)| (serde_json::to_value(y.to_json(&dims)).expect("serializable"), x.to_string()))
                .collect()
        }
        Mode::Quantum => {
            let q0: Rational = c.q0.parse().map_err(|_| usage(format!("cannot parse --q0 `{}`", c.q0)))?;
            let (_, cert) = basis_rank_certify_q(&dims, &q0, false).map_err(|e| usage(e.to_string()))?;
            if !cert.passed() {
                return Err(Failure::Math(format!("basis images are not independent: {cert:?}")));
            }
            let mut atoms = Vec::new();
            for f in factors {
                atoms.push(match f {
                    Factor::Root { a, b, r } => {
                        Root::new(&dims, a, b).map_err(|e| usage(e.to_string()))?;
                        QAtom::root(a, b, r)
                    }
                    Factor::Binom { a, s } => {
                        check_idx(a)?;
                        QAtom::KBinom { a, c: 0, t: s }
                    }
                    Factor::K { a, exp } => {
                        check_idx(a)?;
                        QAtom::K { a, exp }
                    }
                    Factor::Idem(w) => {
                        check_weight(&w)?;
                        QAtom::Idem(Weight(w))
                    }
                });
            }
            coordinates_in_yq(&dims, &QTerm::new(RatFn::one(), atoms))
                .map_err(|e| Failure::Math(e.to_string()))?
                .into_iter()
                .map(|(y, x)| (serde_json::to_value(y.to_json(&dims)).expect("serializable"), x.to_string()))
                .collect()
        }
    };
    match c.format {
        Format::Json => emit(&Value::Array(
            coords.into_iter().map(|(y, x)| json!({"element": y, "coefficient": x})).collect(),
        )),
        Format::Csv => {
            println!("element,coefficient");
            for (y, x) in coords {
                println!("{},{}", csv_field(&y.to_string()), csv_field(&x));
            }
        }
    }
    Ok(())
}

fn configure_threads() {
    if let Ok(v) = std::env::var("SUPERSCHUR_THREADS") {
        match v.parse::<usize>() {
            Ok(n) if n > 0 => {
                rayon::ThreadPoolBuilder::new().num_threads(n).build_global().ok();
            }
            _ => eprintln!("ignoring SUPERSCHUR_THREADS={v}"),
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    configure_threads();
    let outcome = match &cli.command {
        Command::Dim(c) => cmd_dim(c),
        Command::Verify { common, suite } => cmd_verify(common, *suite),
        Command::Basis(c) => cmd_basis(c),
        Command::Matrix { common, gen } => cmd_matrix(common, gen),
        Command::Coords { common, input } => cmd_coords(common, input),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Math(msg)) => {
            eprintln!("failure: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
