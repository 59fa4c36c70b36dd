//! Identity files and the check runner.
//!
//! An identity file holds one equality per line:
//!
//! ```text
//! # comment
//! zeta(2,1) == zeta(3)
//! 8*zeta(-2,1) == zeta(3) | tol=1e-12 | tag=alt21
//! ```

use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::ball::Ball;
use crate::context::PrecisionContext;
use crate::error::{Error, Result};
use crate::expr::{eval, parse_equation, Expr};
use crate::par;
use crate::wordcalc::SignedComposition;

/// Default tolerance by the largest zeta depth in an entry.
pub fn default_tolerance(depth: usize) -> f64 {
    match depth {
        0..=2 => 1e-10,
        3..=4 => 1e-8,
        _ => 1e-6,
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct IdentityEntry {
    /// 1-based line number in the source file.
    pub line: usize,
    pub text: String,
    pub parsed: std::result::Result<(Expr, Expr), Error>,
    pub tolerance: Option<f64>,
    pub tag: Option<String>,
}

impl IdentityEntry {
    pub fn depth(&self) -> usize {
        match &self.parsed {
            Ok((l, r)) => l.max_depth().max(r.max_depth()),
            Err(_) => 0,
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct IdentityFile {
    pub entries: Vec<IdentityEntry>,
}

impl IdentityFile {
    /// Splits into entries. Malformed lines become entries carrying their
    /// error so that a run reports them instead of aborting.
    pub fn parse(text: &str) -> IdentityFile {
        let mut entries = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let mut fields = line.split('|').map(str::trim);
            let eq = fields.next().unwrap_or_default();
            let mut tolerance = None;
            let mut tag = None;
            let mut option_error = None;
            for f in fields {
                match f.split_once('=').map(|(k, v)| (k.trim(), v.trim())) {
                    Some(("tol", v)) => match v.parse::<f64>() {
                        Ok(t) if t > 0.0 && t.is_finite() => tolerance = Some(t),
                        _ => option_error = Some(Error::Domain(format!("bad tolerance {v:?}"))),
                    },
                    Some(("tag", v)) if !v.is_empty() => tag = Some(v.to_string()),
                    _ => option_error = Some(Error::Syntax { offset: 0, message: format!("unknown option {f:?}") }),
                }
            }
            let parsed = match option_error {
                Some(e) => Err(e),
                None => parse_equation(eq),
            };
            entries.push(IdentityEntry { line: i + 1, text: eq.to_string(), parsed, tolerance, tag });
        }
        IdentityFile { entries }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Pass,
    EmpiricalPass,
    Fail,
    Error,
}

impl Verdict {
    pub fn name(self) -> &'static str {
        match self {
            Verdict::Pass => "pass",
            Verdict::EmpiricalPass => "empirical-pass",
            Verdict::Fail => "fail",
            Verdict::Error => "error",
        }
    }

    pub fn passed(self) -> bool {
        matches!(self, Verdict::Pass | Verdict::EmpiricalPass)
    }

    /// Pass when the residual encloses 0 and its magnitude bound is within
    /// `tol`; empirical when any input carried a heuristic radius.
    pub fn of_residual(residual: &Ball, tol: f64) -> Verdict {
        let ok = residual.contains_zero() && residual.abs_upper_f64() <= tol;
        match (ok, residual.is_empirical()) {
            (true, false) => Verdict::Pass,
            (true, true) => Verdict::EmpiricalPass,
            (false, _) => Verdict::Fail,
        }
    }
}

/// One row of a report. Field order is the JSON key order.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckEntry {
    pub entry: String,
    pub lhs: String,
    pub rhs: String,
    pub residual: String,
    pub radius: String,
    pub verdict: Verdict,
    pub ms: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tag: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct CheckReport {
    pub entries: Vec<CheckEntry>,
}

impl CheckReport {
    /// 0 if every entry passed, 2 if any entry errored, else 1.
    pub fn exit_code(&self) -> i32 {
        if self.entries.iter().any(|e| e.verdict == Verdict::Error) {
            2
        } else if self.entries.iter().all(|e| e.verdict.passed()) {
            0
        } else {
            1
        }
    }

    pub fn all_passed(&self) -> bool {
        self.exit_code() == 0
    }

    /// Aligned plain-text table.
    pub fn render_text(&self) -> String {
        let w = self.entries.iter().map(|e| e.entry.chars().count()).max().unwrap_or(5).max(5);
        let mut out = format!("{:<w$}  {:<14}  {:<10}  {:>7}  {}\n", "entry", "verdict", "residual", "ms", "radius");
        for e in &self.entries {
            let residual = if e.error.is_some() { "-".to_string() } else { short(&e.residual) };
            out.push_str(&format!(
                "{:<w$}  {:<14}  {:<10}  {:>7}  {}",
                e.entry,
                e.verdict.name(),
                residual,
                e.ms,
                e.radius
            ));
            if let Some(err) = &e.error {
                out.push_str(&format!("  {err}"));
            }
            out.push('\n');
        }
        let passed = self.entries.iter().filter(|e| e.verdict.passed()).count();
        out.push_str(&format!("{passed}/{} passed\n", self.entries.len()));
        out
    }
}

fn short(s: &str) -> String {
    s.parse::<f64>().map(|x| format!("{x:.2e}")).unwrap_or_else(|_| s.to_string())
}

fn digits_of(ctx: &PrecisionContext) -> usize {
    ctx.target_digits as usize
}

fn ball_entry(entry: String, lhs: &Ball, rhs: &Ball, tol: f64, ctx: &PrecisionContext) -> CheckEntry {
    let residual = lhs.sub_ball(rhs);
    CheckEntry {
        entry,
        lhs: lhs.mid_string(digits_of(ctx)),
        rhs: rhs.mid_string(digits_of(ctx)),
        residual: residual.mid_string(6),
        radius: residual.rad_string(),
        verdict: Verdict::of_residual(&residual, tol),
        ms: 0,
        tag: None,
        error: None,
    }
}

fn error_entry(entry: String, err: &Error) -> CheckEntry {
    CheckEntry {
        entry,
        lhs: String::new(),
        rhs: String::new(),
        residual: String::new(),
        radius: String::new(),
        verdict: Verdict::Error,
        ms: 0,
        tag: None,
        error: Some(err.to_string()),
    }
}

/// Settings for a run beyond the precision context.
#[derive(Clone, Copy, Debug)]
pub struct CheckOptions {
    /// Worker limit for concurrent entries.
    pub jobs: usize,
    /// Tolerance used when an entry has none; `None` picks by depth.
    pub tolerance: Option<f64>,
}

impl Default for CheckOptions {
    fn default() -> Self {
        CheckOptions { jobs: std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1), tolerance: None }
    }
}

fn check_entry(e: &IdentityEntry, ctx: &PrecisionContext, opts: &CheckOptions) -> CheckEntry {
    let start = Instant::now();
    let mut row = match &e.parsed {
        Err(err) => error_entry(e.text.clone(), err),
        Ok((l, r)) => {
            let name = format!("{l} == {r}");
            let tol = e.tolerance.or(opts.tolerance).unwrap_or_else(|| default_tolerance(e.depth()));
            match (eval(l, ctx), eval(r, ctx)) {
                (Ok(a), Ok(b)) => ball_entry(name, &a, &b, tol, ctx),
                (Err(err), _) | (_, Err(err)) => error_entry(name, &err),
            }
        }
    };
    row.tag = e.tag.clone();
    row.ms = start.elapsed().as_millis() as u64;
    row
}

/// Evaluates every entry, in parallel up to `opts.jobs`; rows keep file order.
pub fn run_check(file: &IdentityFile, ctx: &PrecisionContext, opts: &CheckOptions) -> Result<CheckReport> {
    ctx.validate()?;
    let entries = par::with_jobs(opts.jobs, || par::map(&file.entries, |e| check_entry(e, ctx, opts)));
    Ok(CheckReport { entries })
}

/// 8^n ζ({2̄,1}^n) - ζ({3}^n) for n ≤ 3. The n = 1 case is a theorem and
/// gets a rigorous verdict; larger n are reported as empirical.
pub fn conjecture_check(n: u32, ctx: &PrecisionContext) -> Result<CheckEntry> {
    if !(1..=3).contains(&n) {
        return Err(Error::OutOfRange(format!("conjecture_check needs 1 <= n <= 3, got {n}")));
    }
    ctx.validate()?;
    let start = Instant::now();
    let base = SignedComposition::from_signed(&[-2, 1])?;
    let lhs_comp = base.repeat(n as usize);
    let rhs_comp = SignedComposition::positive(&[3]).repeat(n as usize);
    let lhs = crate::series::eval_mzv(&lhs_comp, ctx)?.mul_int(8i64.pow(n));
    let rhs = crate::series::eval_mzv(&rhs_comp, ctx)?;
    let (lhs, rhs) = if n >= 2 { (lhs.mark_empirical(), rhs) } else { (lhs, rhs) };
    let tol = default_tolerance(2 * n as usize);
    let name = format!("{}*{} == {}", 8u64.pow(n), Expr::Zeta(lhs_comp), Expr::Zeta(rhs_comp));
    let mut row = ball_entry(name, &lhs, &rhs, tol, ctx);
    if lhs.rad_f64().max(rhs.rad_f64()) > tol {
        return Err(Error::PrecisionUnreachable { digits: ctx.target_digits, max_terms: ctx.max_terms });
    }
    row.ms = start.elapsed().as_millis() as u64;
    Ok(row)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx() -> PrecisionContext {
        PrecisionContext::new(20)
    }

    #[test]
    fn file_format() {
        let f = IdentityFile::parse("# header\n\nzeta(2,1) == zeta(3) | tol=1e-12 | tag=z21\n  zeta(4) == pi^4/90\nzeta( == 1\n");
        assert_eq!(f.entries.len(), 3);
        assert_eq!(f.entries[0].line, 3);
        assert_eq!(f.entries[0].tolerance, Some(1e-12));
        assert_eq!(f.entries[0].tag.as_deref(), Some("z21"));
        assert_eq!(f.entries[1].line, 4);
        assert!(f.entries[2].parsed.is_err());
        assert!(IdentityFile::parse("zeta(3) == zeta(3) | colour=red").entries[0].parsed.is_err());
    }

    #[test]
    fn exit_codes() {
        let opts = CheckOptions::default();
        let empty = run_check(&IdentityFile::parse(""), &ctx(), &opts).unwrap();
        assert!(empty.entries.is_empty());
        assert_eq!(empty.exit_code(), 0);
        let good = run_check(&IdentityFile::parse("zeta(2,1) == zeta(3)"), &ctx(), &opts).unwrap();
        assert_eq!(good.entries[0].verdict, Verdict::Pass);
        assert_eq!(good.exit_code(), 0);
        let bad = run_check(&IdentityFile::parse("zeta(2,1) == zeta(3)\nzeta(2,1) == zeta(3) + 1"), &ctx(), &opts).unwrap();
        assert_eq!(bad.entries[1].verdict, Verdict::Fail);
        let r: f64 = bad.entries[1].residual.parse().unwrap();
        assert!((r + 1.0).abs() < 1e-9);
        assert_eq!(bad.exit_code(), 1);
        let broken = run_check(&IdentityFile::parse("zeta(2,1) == zeta(3) + 1\nzeta(1) == 0"), &ctx(), &opts).unwrap();
        assert_eq!(broken.entries[1].verdict, Verdict::Error);
        assert_eq!(broken.exit_code(), 2);
    }

    #[test]
    fn rows_keep_file_order() {
        let text: String = (2..10).map(|k| format!("zeta({k}) == zeta({k}) | tag=t{k}\n")).collect();
        let opts = CheckOptions { jobs: 4, tolerance: None };
        let rep = run_check(&IdentityFile::parse(&text), &ctx(), &opts).unwrap();
        let tags: Vec<_> = rep.entries.iter().map(|e| e.tag.clone().unwrap()).collect();
        assert_eq!(tags, (2..10).map(|k| format!("t{k}")).collect::<Vec<_>>());
    }

    #[test]
    fn conjecture_small_cases() {
        let one = conjecture_check(1, &ctx()).unwrap();
        assert_eq!(one.verdict, Verdict::Pass);
        assert_eq!(one.entry, "8*zeta(-2,1) == zeta(3)");
        assert!(conjecture_check(4, &ctx()).is_err());
        assert!(conjecture_check(0, &ctx()).is_err());
    }
}
