use std::fs;
use std::io::Write;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use chern_core::chern::{MembershipSolver, DEFAULT_BUDGET};
use chern_core::dickson::{dickson_all, dickson_macdonald};
use chern_core::identities::CATALOGUE;
use chern_core::report::Mode;
use chern_core::runner::{self, check_params, RunConfig, SUITES};
use chern_core::{expr, ChernContext, Error, PrimeField, Subspace, SymplecticSpace};

#[derive(Parser)]
#[command(name = "chern", version, about = "Exact checks of Chern class identities for extraspecial p-groups")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Args)]
struct Output {
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
    /// Write the report to this file instead of stdout.
    #[arg(long)]
    out: Option<std::path::PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Run verification suites.
    Verify {
        #[arg(long)]
        p: u32,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Worker threads.
        #[arg(long, env = "CHERN_WORKERS")]
        jobs: Option<usize>,
        /// Flip one sign in every identity (negative control).
        #[arg(long)]
        perturb: bool,
        #[command(flatten)]
        output: Output,
    },
    /// Decide whether a class lies in the subring generated by alpha_i, beta_i.
    Membership {
        #[arg(long)]
        p: u32,
        #[arg(long)]
        n: usize,
        /// Product of powers of kappaR, zeta, alphaI, betaI, e.g. kappa0^4.
        #[arg(long)]
        target: String,
        /// Use every monomial as an unknown instead of the reduced basis.
        #[arg(long)]
        full_basis: bool,
        /// Cap on the dense system size.
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
        #[command(flatten)]
        output: Output,
    },
    /// Tabulate the Dickson invariants of a subspace.
    Dickson {
        #[arg(long)]
        p: u32,
        /// Basis vectors, e.g. "1,0,0;0,1,2".
        #[arg(long)]
        basis: String,
        /// Also compute each invariant by the punctured-product sum and compare.
        #[arg(long)]
        macdonald: bool,
        #[command(flatten)]
        output: Output,
    },
    /// Count or list the Lagrangian subspaces.
    Lagrangians {
        #[arg(long)]
        p: u32,
        #[arg(long)]
        n: usize,
        /// Print every basis, not just the count.
        #[arg(long)]
        list: bool,
        #[command(flatten)]
        output: Output,
    },
    /// Print the identity catalogue and the suites.
    Explain {
        #[command(flatten)]
        output: Output,
    },
}

/// Largest subspace the `dickson` subcommand expands.
const DICKSON_MAX_ELEMENTS: u64 = 729;

fn emit(output: &Output, text: &str, json: &Value) -> Result<(), Error> {
    let body = match output.format {
        Format::Text => text.to_string(),
        Format::Json => serde_json::to_string_pretty(json).expect("plain data serializes") + "\n",
    };
    match &output.out {
        Some(path) => fs::write(path, body).map_err(|e| Error::Usage(format!("cannot write {}: {e}", path.display()))),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(body.as_bytes())
                .and_then(|_| out.flush())
                .map_err(|e| Error::Usage(format!("cannot write to stdout: {e}")))
        }
    }
}

fn verify(config: RunConfig, output: &Output) -> Result<bool, Error> {
    let (reports, skipped) = runner::run(&config)?;
    for (suite, why) in &skipped {
        eprintln!("skipped suite {suite}: {why}");
    }
    let passed = reports.iter().filter(|r| r.passed()).count();
    let mut text = String::new();
    for r in &reports {
        text.push_str(&format!("{r}\n"));
    }
    text.push_str(&format!("{passed}/{} passed\n", reports.len()));
    let json = Value::Array(reports.iter().map(|r| serde_json::to_value(r).unwrap()).collect());
    emit(output, &text, &json)?;
    Ok(passed == reports.len())
}

fn membership(p: u32, n: usize, target: &str, full: bool, budget: u64, output: &Output) -> Result<bool, Error> {
    check_params(p, n)?;
    let parsed = expr::parse(target)?;
    let ctx = ChernContext::new(p, n)?;
    let class = parsed.evaluate(&ctx)?;
    let mut solver = MembershipSolver::new(&ctx).with_budget(budget);
    if full {
        solver = solver.full_basis();
    }
    let res = solver.solve(&class)?;
    let witness = res.witness_string();
    let verdict = if res.is_member() { "MEMBER" } else { "NOT_A_MEMBER" };
    let mut text = format!(
        "{target} at p = {p}, n = {n}: {verdict} (degree {}, {} unknowns, {} equations, rank {})\n",
        res.degree, res.unknowns, res.equations, res.rank
    );
    if let Some(w) = &witness {
        text.push_str(&format!("witness: {w}\n"));
    }
    let json = json!({
        "target": target,
        "p": p,
        "n": n,
        "result": verdict,
        "witness": witness,
        "degree": res.degree,
        "unknowns": res.unknowns,
        "equations": res.equations,
        "rank": res.rank,
    });
    emit(output, &text, &json)?;
    Ok(true)
}

fn parse_basis(field: PrimeField, basis: &str) -> Result<Subspace, Error> {
    let rows: Vec<Vec<u32>> = basis
        .split(';')
        .map(|row| {
            row.split(',')
                .map(|x| {
                    x.trim()
                        .parse::<i64>()
                        .map(|v| field.reduce(v))
                        .map_err(|_| Error::Usage(format!("bad coordinate '{x}'")))
                })
                .collect()
        })
        .collect::<Result<_, _>>()?;
    let m = rows[0].len();
    if rows.iter().any(|r| r.len() != m) {
        return Err(Error::Usage("basis vectors have different lengths".into()));
    }
    Subspace::span(field, m, &rows)
}

fn dickson(p: u32, basis: &str, macdonald: bool, output: &Output) -> Result<bool, Error> {
    let field = PrimeField::new(p)?;
    let v = parse_basis(field, basis)?;
    let size = (p as u64).checked_pow(v.dim() as u32).unwrap_or(u64::MAX);
    if size > DICKSON_MAX_ELEMENTS {
        return Err(Error::Envelope(format!(
            "subspace has {size} elements; the limit is {DICKSON_MAX_ELEMENTS}"
        )));
    }
    let all = dickson_all(&v)?;
    let mut ok = true;
    let mut text = format!("V = span {:?} in F_{p}^{}\n", v.basis(), v.ambient_dim());
    let mut rows = Vec::new();
    for (r, d) in all.iter().enumerate() {
        let agrees = if macdonald {
            let same = dickson_macdonald(&v, r)? == *d;
            ok &= same;
            Some(same)
        } else {
            None
        };
        text.push_str(&format!("D_{r} = {d}\n"));
        if let Some(same) = agrees {
            text.push_str(&format!("    punctured-product sum agrees: {same}\n"));
        }
        rows.push(json!({ "r": r, "degree": d.degree(), "polynomial": d.to_string(), "macdonald_agrees": agrees }));
    }
    let json = json!({ "p": p, "basis": v.basis(), "invariants": rows });
    emit(output, &text, &json)?;
    Ok(ok)
}

fn lagrangians(p: u32, n: usize, list: bool, output: &Output) -> Result<bool, Error> {
    check_params(p, n)?;
    let space = SymplecticSpace::new(PrimeField::new(p)?, n)?;
    let all = space.lagrangians();
    let expected: u64 = (1..=n as u32).map(|i| (p as u64).pow(i) + 1).product();
    let mut text = format!("{} Lagrangian subspaces of F_{p}^{} (prod (p^i + 1) = {expected})\n", all.len(), 2 * n);
    if list {
        for (i, l) in all.iter().enumerate() {
            text.push_str(&format!("{i}: {:?}\n", l.basis()));
        }
    }
    let json = json!({
        "p": p,
        "n": n,
        "count": all.len(),
        "expected": expected,
        "lagrangians": list.then(|| all.iter().map(|l| l.basis().to_vec()).collect::<Vec<_>>()),
    });
    emit(output, &text, &json)?;
    Ok(all.len() as u64 == expected)
}

fn explain(output: &Output) -> Result<bool, Error> {
    let mut text = String::from("identities:\n");
    for (id, statement) in CATALOGUE {
        text.push_str(&format!("  {id}: {statement}\n"));
    }
    text.push_str(&format!("suites: all, {}\n", SUITES.join(", ")));
    let json = json!({
        "identities": CATALOGUE.iter().map(|(id, s)| json!({ "identity": id, "paper_ref": s })).collect::<Vec<_>>(),
        "suites": SUITES,
    });
    emit(output, &text, &json)?;
    Ok(true)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Verify { p, n, suite, seed, jobs, perturb, output } => {
            let config = RunConfig {
                p,
                n,
                suite,
                seed,
                mode: if perturb { Mode::Perturbed } else { Mode::Faithful },
                jobs,
            };
            verify(config, &output)
        }
        Command::Membership { p, n, target, full_basis, budget, output } => {
            membership(p, n, &target, full_basis, budget, &output)
        }
        Command::Dickson { p, basis, macdonald, output } => dickson(p, &basis, macdonald, &output),
        Command::Lagrangians { p, n, list, output } => lagrangians(p, n, list, &output),
        Command::Explain { output } => explain(&output),
    };
    match outcome {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
