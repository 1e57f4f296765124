//! Consolidated per-n report: exact counts, asymptotic values, error-bound
//! ratios and per-theorem verdicts in one document.
//!
//! Numeric values are displayed at 20 significant digits, rounded to
//! nearest. Displayed decimals are for reading only; every verdict column is
//! computed from exact integers or certified interval comparisons, never
//! from the displayed strings. Given the same table and options the output
//! is byte-for-byte deterministic.

use crate::asymptotic::{
    delta_error_bound, delta_main_term, equidist_error_bound, mk_envelope, mu, mu_at_least,
    MK_ENVELOPE_MU_THRESHOLD,
};
use crate::certify::y_k_exact;
use crate::error::Result;
use crate::real::{decide, suggested_precision, RealInterval, Verdict, DEFAULT_MAX_DOUBLINGS};
use crate::table::CrankParityTable;
use rayon::prelude::*;
use rug::{Float, Integer, Rational};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy)]
pub struct ReportOptions {
    pub from: u64,
    pub to: u64,
    pub precision_bits: u32,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct ReportRow {
    pub n: u64,
    pub p: String,
    pub delta: String,
    pub m0: String,
    pub m1: String,
    pub mu: Option<String>,
    pub main_term: Option<String>,
    pub e_beta_ratio: Option<String>,
    pub y0: Option<String>,
    pub y1: Option<String>,
    pub sign_ok: bool,
    pub convex0: Option<bool>,
    pub convex1: Option<bool>,
    pub logconcave0: Option<bool>,
    pub logconcave1: Option<bool>,
    pub turan0: Option<bool>,
    pub turan1: Option<bool>,
    pub equidist_ok: Option<String>,
    pub envelope_ok: Option<String>,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct Report {
    pub from: u64,
    pub to: u64,
    pub precision_bits: u32,
    pub rows: Vec<ReportRow>,
}

/// 20 significant decimal digits, round to nearest. Display only.
pub fn format_sig20(f: &Float) -> String {
    if f.is_zero() {
        return "0".into();
    }
    format!("{:.19e}", f)
}

fn format_rational_sig20(r: &Rational) -> String {
    format_sig20(&Float::with_val(96, r))
}

fn verdict_label(v: Verdict) -> String {
    match v {
        Verdict::True => "true".into(),
        Verdict::False => "false".into(),
        Verdict::Undecided => "undecided".into(),
    }
}

fn convexity_at(table: &CrankParityTable, k: u8, n: u64) -> Option<bool> {
    if n < 1 || n + 1 > table.max_n() {
        return None;
    }
    let sum = Integer::from(table.mk(k, n - 1) + table.mk(k, n + 1));
    Some(sum > Integer::from(table.mk(k, n) * 2u32))
}

fn log_concavity_at(table: &CrankParityTable, k: u8, n: u64) -> Option<bool> {
    if n < 1 || n + 1 > table.max_n() {
        return None;
    }
    let square = Integer::from(table.mk(k, n) * table.mk(k, n));
    Some(square >= Integer::from(table.mk(k, n - 1) * table.mk(k, n + 1)))
}

fn turan_at(table: &CrankParityTable, k: u8, n: u64) -> Option<bool> {
    if n < 1 || n + 2 > table.max_n() {
        return None;
    }
    let a = table.mk(k, n - 1);
    let b = table.mk(k, n);
    let c = table.mk(k, n + 1);
    let d = table.mk(k, n + 2);
    let lhs = 4u32
        * (Integer::from(b * b) - Integer::from(a * c))
        * (Integer::from(c * c) - Integer::from(b * d));
    let inner = Integer::from(b * c) - Integer::from(a * d);
    Some(lhs >= Integer::from(&inner * &inner))
}

fn build_row(table: &CrankParityTable, n: u64, base_prec: u32) -> ReportRow {
    let prec = suggested_precision(n.max(1), base_prec);
    let mu_str = (n >= 1).then(|| format_sig20(&mu(n, prec).mid()));
    let (main_str, ratio_str) = if n >= 3 {
        let main = delta_main_term(n, prec).expect("n >= 3");
        let bound = delta_error_bound(n, prec).expect("n >= 3");
        let dev = RealInterval::from_integer(table.delta(n)).sub(&main).abs();
        let ratio = dev.div(&bound);
        (
            Some(format_sig20(&main.mid())),
            Some(format_sig20(&ratio.mid())),
        )
    } else {
        (None, None)
    };
    let y_str = |k: u8| {
        y_k_exact(table, n, k)
            .ok()
            .map(|y| format_rational_sig20(&y))
    };
    let sign_ok = if n % 2 == 0 {
        *table.delta(n) > 0
    } else {
        *table.delta(n) < 0
    };
    let equidist_ok = (n >= 4).then(|| {
        let deviation = Rational::from((
            Integer::from(table.delta(n).abs_ref()),
            Integer::from(table.p(n) * 2u32),
        ));
        verdict_label(decide(base_prec, DEFAULT_MAX_DOUBLINGS, |p| {
            let bound = equidist_error_bound(n, p).expect("n >= 4");
            if *bound.lo() >= deviation {
                Verdict::True
            } else if *bound.hi() < deviation {
                Verdict::False
            } else {
                Verdict::Undecided
            }
        }))
    });
    let envelope_ok = (n >= 1
        && mu_at_least(n, MK_ENVELOPE_MU_THRESHOLD, base_prec) == Verdict::True)
        .then(|| {
            verdict_label(decide(prec, DEFAULT_MAX_DOUBLINGS, |p| {
                match mk_envelope(n, p) {
                    Ok(env) => env
                        .contains_integer(table.m0(n))
                        .and(env.contains_integer(table.m1(n))),
                    Err(_) => Verdict::Undecided,
                }
            }))
        });
    ReportRow {
        n,
        p: table.p(n).to_string(),
        delta: table.delta(n).to_string(),
        m0: table.m0(n).to_string(),
        m1: table.m1(n).to_string(),
        mu: mu_str,
        main_term: main_str,
        e_beta_ratio: ratio_str,
        y0: y_str(0),
        y1: y_str(1),
        sign_ok,
        convex0: convexity_at(table, 0, n),
        convex1: convexity_at(table, 1, n),
        logconcave0: log_concavity_at(table, 0, n),
        logconcave1: log_concavity_at(table, 1, n),
        turan0: turan_at(table, 0, n),
        turan1: turan_at(table, 1, n),
        equidist_ok,
        envelope_ok,
    }
}

pub fn build_report(table: &CrankParityTable, opts: ReportOptions) -> Result<Report> {
    if opts.to > table.max_n() {
        return Err(crate::error::Error::RangeNotCovered {
            from: opts.from,
            to: opts.to,
            min: 0,
            max: table.max_n(),
        });
    }
    let rows: Vec<ReportRow> = (opts.from..=opts.to)
        .into_par_iter()
        .map(|n| build_row(table, n, opts.precision_bits))
        .collect();
    Ok(Report {
        from: opts.from,
        to: opts.to,
        precision_bits: opts.precision_bits,
        rows,
    })
}

pub const CSV_HEADER: &str = "n,p,delta,m0,m1,mu,main_term,e_beta_ratio,y0,y1,sign_ok,convex0,convex1,logconcave0,logconcave1,turan0,turan1,equidist_ok,envelope_ok";

fn opt_str(v: &Option<String>) -> &str {
    v.as_deref().unwrap_or("NA")
}

fn opt_bool(v: Option<bool>) -> &'static str {
    match v {
        Some(true) => "true",
        Some(false) => "false",
        None => "NA",
    }
}

/// CSV: comma-separated, fixed header row, UTF-8, LF line endings.
pub fn render_csv(report: &Report) -> String {
    let mut out = String::with_capacity(64 * report.rows.len() + 128);
    out.push_str(CSV_HEADER);
    out.push('\n');
    for r in &report.rows {
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{}\n",
            r.n,
            r.p,
            r.delta,
            r.m0,
            r.m1,
            opt_str(&r.mu),
            opt_str(&r.main_term),
            opt_str(&r.e_beta_ratio),
            opt_str(&r.y0),
            opt_str(&r.y1),
            if r.sign_ok { "true" } else { "false" },
            opt_bool(r.convex0),
            opt_bool(r.convex1),
            opt_bool(r.logconcave0),
            opt_bool(r.logconcave1),
            opt_bool(r.turan0),
            opt_bool(r.turan1),
            opt_str(&r.equidist_ok),
            opt_str(&r.envelope_ok),
        ));
    }
    out
}

pub fn render_json(report: &Report) -> String {
    serde_json::to_string_pretty(report).expect("report serializes")
}

pub fn render_text(report: &Report) -> String {
    let mut out = String::new();
    out.push_str(&format!(
        "crank parity report, n = {}..{}, precision {} bits\n",
        report.from, report.to, report.precision_bits
    ));
    for r in &report.rows {
        out.push_str(&format!(
            "n={} p={} delta={} m0={} m1={} mu={} e_beta_ratio={} sign_ok={}\n",
            r.n,
            r.p,
            r.delta,
            r.m0,
            r.m1,
            opt_str(&r.mu),
            opt_str(&r.e_beta_ratio),
            r.sign_ok,
        ));
    }
    out
}
