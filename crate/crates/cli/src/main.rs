use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::json;

use eulersum::check::{conjecture_check, run_check, CheckEntry, CheckOptions, CheckReport, IdentityFile};
use eulersum::expr::{eval, parse, parse_rational};
use eulersum::quadrature;
use eulersum::series::eval_qmzv;
use eulersum::symbolic::{drinfeld_expand, euler_decomposition, euler_reduction, kummer_expand, witten_reduce, zeta_poly_eval, Relation};
use eulersum::wordcalc::{dualize, parse_word_poly, shuffle, shuffle_compositions, solve_transform_coeffs, stuffle, SignedComposition, Word};
use eulersum::{Ball, Error, PrecisionContext};

/// Multiple zeta values and alternating Euler sums.
#[derive(Parser)]
#[command(name = "eulersum", version)]
struct Cli {
    /// Target precision in decimal digits.
    #[arg(long, global = true, env = "EULERSUM_DIGITS", default_value_t = 30)]
    digits: u32,
    /// Absolute tolerance (check: default per entry; int: quadrature target).
    #[arg(long, global = true)]
    tol: Option<f64>,
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Worker threads.
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Term budget for series evaluation.
    #[arg(long, global = true)]
    max_terms: Option<u64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate an expression, e.g. "8*zeta(-2,1) - zeta(3)".
    Eval {
        #[arg(allow_hyphen_values = true)]
        expr: String,
    },
    /// Check every identity in a file; exit 0 all pass, 1 some fail, 2 errors.
    Check { file: PathBuf },
    /// Dual composition, e.g. "(2,1)" -> "(3)".
    Dual { composition: String },
    /// Shuffle product of two words over {a,b,c} or two compositions.
    Shuffle { u: String, v: String },
    /// Stuffle product of two compositions.
    Stuffle { u: String, v: String },
    /// Relation generators.
    Reduce {
        #[command(subcommand)]
        family: Family,
    },
    /// q-analogue ζ_q(s_1,…,s_k) for 0 < q < 1.
    Qeval { q: String, composition: String },
    /// Integrate a catalog entry and compare with its claimed value.
    Int { id: String },
    /// 8^n ζ({-2,1}^n) against ζ({3}^n) for n ≤ 3.
    Conjecture { n: u32 },
    /// Solve target = Σ r_i basis_i in Q<a,b,c>.
    SolveTransform { target: String, basis: Vec<String> },
}

#[derive(Subcommand)]
enum Family {
    /// 2ζ(m,1) in terms of depth-one values.
    Euler { m: u32 },
    /// Decomposition of ζ(s)ζ(t)-type sums for ζ(s,t).
    Decomposition { s: u32, t: u32 },
    /// ζ(m+2,{1}^n) for m ≤ M, n ≤ N.
    Drinfeld { m: u32, n: u32 },
    /// Witten sum W(r,s,t) as a combination of depth-two values.
    Witten { r: i64, s: i64, t: i64 },
    /// Coefficient relations of the Kummer expansion up to total degree `order`.
    Kummer { order: u32 },
}

fn context(cli: &Cli) -> PrecisionContext {
    let ctx = PrecisionContext::new(cli.digits);
    match cli.max_terms {
        Some(n) => ctx.with_max_terms(n),
        None => ctx,
    }
}

fn ball_json(b: &Ball, digits: usize) -> serde_json::Value {
    json!({ "value": b.mid_string(digits), "radius": b.rad_string(), "empirical": b.is_empirical() })
}

fn print_relations(cli: &Cli, rels: &[Relation]) {
    if cli.json {
        let list: Vec<String> = rels.iter().map(Relation::render).collect();
        println!("{}", json!(list));
    } else {
        for r in rels {
            println!("{r}");
        }
    }
}

fn print_report(cli: &Cli, report: &CheckReport) -> Result<(), Error> {
    if cli.json {
        println!("{}", serde_json::to_string_pretty(report).map_err(|e| Error::Domain(e.to_string()))?);
    } else {
        print!("{}", report.render_text());
    }
    Ok(())
}

fn composition(text: &str) -> Result<SignedComposition, Error> {
    text.parse()
}

fn run(cli: &Cli) -> Result<u8, Error> {
    let ctx = context(cli);
    let digits = cli.digits as usize;
    match &cli.command {
        Command::Eval { expr } => {
            let e = parse(expr)?;
            let v = eval(&e, &ctx)?;
            if cli.json {
                let mut j = ball_json(&v, digits);
                j["expr"] = json!(e.render());
                println!("{j}");
            } else {
                println!("{v:.digits$}");
            }
            Ok(0)
        }
        Command::Check { file } => {
            let text = std::fs::read_to_string(file).map_err(|e| Error::Domain(format!("{}: {e}", file.display())))?;
            let mut opts = CheckOptions { tolerance: cli.tol, ..CheckOptions::default() };
            if let Some(j) = cli.jobs {
                opts.jobs = j.max(1);
            }
            let report = run_check(&IdentityFile::parse(&text), &ctx, &opts)?;
            print_report(cli, &report)?;
            Ok(report.exit_code() as u8)
        }
        Command::Dual { composition: c } => {
            let d = dualize(&composition(c)?)?;
            if cli.json {
                println!("{}", json!(d.to_string()));
            } else {
                println!("{d}");
            }
            Ok(0)
        }
        Command::Shuffle { u, v } => {
            let text = if u.trim_start().starts_with('(') {
                shuffle_compositions(&composition(u)?, &composition(v)?)?.to_string()
            } else {
                shuffle(&u.parse::<Word>()?, &v.parse::<Word>()?).to_string()
            };
            println!("{}", if cli.json { json!(text).to_string() } else { text });
            Ok(0)
        }
        Command::Stuffle { u, v } => {
            let text = stuffle(&composition(u)?, &composition(v)?).to_string();
            println!("{}", if cli.json { json!(text).to_string() } else { text });
            Ok(0)
        }
        Command::Reduce { family } => {
            let rels = match family {
                Family::Euler { m } => vec![euler_reduction(*m)?],
                Family::Decomposition { s, t } => vec![euler_decomposition(*s, *t)?],
                Family::Drinfeld { m, n } => {
                    let table = drinfeld_expand(*m, *n)?;
                    let mut out = Vec::new();
                    for i in 0..=*m {
                        for j in 0..=*n {
                            out.extend(table.relation(i, j));
                        }
                    }
                    out
                }
                Family::Kummer { order } => kummer_expand(*order)?.relations().map(|(_, r)| r.clone()).collect(),
                Family::Witten { r, s, t } => {
                    let p = witten_reduce(*r, *s, *t)?;
                    let line = format!("witten({r},{s},{t}) == {p}");
                    println!("{}", if cli.json { json!([line]).to_string() } else { line });
                    return Ok(0);
                }
            };
            print_relations(cli, &rels);
            Ok(0)
        }
        Command::Qeval { q, composition: c } => {
            let v = eval_qmzv(&parse_rational(q)?, &composition(c)?, &ctx)?;
            if cli.json {
                println!("{}", ball_json(&v, digits));
            } else {
                println!("{v:.digits$}");
            }
            Ok(0)
        }
        Command::Int { id } => {
            let entry = quadrature::find_entry(id)?;
            let tol = cli.tol.unwrap_or_else(|| 10f64.powi(-(cli.digits as i32 + 2)).max(1e-30));
            let v = quadrature::integrate(id, tol, &ctx)?;
            let claimed = entry.claimed_value();
            let c = zeta_poly_eval(&claimed, &ctx)?;
            let residual = v.sub_ball(&c);
            let ok = residual.contains_zero();
            if cli.json {
                let mut j = ball_json(&v, digits);
                j["id"] = json!(id);
                j["claimed"] = json!(claimed.to_string());
                j["matches"] = json!(ok);
                println!("{j}");
            } else {
                println!("{id}: {}", entry.formula);
                println!("  value   {v:.digits$}");
                println!("  claimed {claimed} = {c:.digits$}");
                println!("  {}", if ok { "match" } else { "MISMATCH" });
            }
            Ok(if ok { 0 } else { 1 })
        }
        Command::Conjecture { n } => {
            let row: CheckEntry = conjecture_check(*n, &ctx)?;
            let report = CheckReport { entries: vec![row] };
            print_report(cli, &report)?;
            Ok(report.exit_code() as u8)
        }
        Command::SolveTransform { target, basis } => {
            let t = parse_word_poly(target)?;
            let b = basis.iter().map(|s| parse_word_poly(s)).collect::<Result<Vec<_>, _>>()?;
            let sol = solve_transform_coeffs(&t, &b)?;
            let coeffs: Vec<String> = sol.coeffs.iter().map(|c| c.to_string()).collect();
            if cli.json {
                println!("{}", json!({ "coeffs": coeffs, "nullity": sol.nullity }));
            } else {
                println!("({})", coeffs.join(", "));
                if sol.nullity > 0 {
                    println!("nullity {}", sol.nullity);
                }
            }
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(j) = cli.jobs {
        eulersum::par::with_jobs(j.max(1), || finish(run(&cli)))
    } else {
        finish(run(&cli))
    }
}

fn finish(r: Result<u8, Error>) -> ExitCode {
    match r {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
