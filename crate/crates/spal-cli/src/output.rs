//! Rendering for every subcommand in the three output styles. The csv
//! and json shapes are stable: fixed headers, fixed key sets, and a
//! schema version stamped into every json document.

use std::collections::BTreeSet;
use std::fmt;

use clap::ValueEnum;
use serde_json::{json, Map, Value};

use spal::palcount::LengthProfile;
use spal::verify::{
    records_to_csv, BoundReport, ConjectureCheck, ExtremalRecord, SampleReport, Verdict,
};
use spal::{Count, Word};

/// Version stamp embedded in every json document.
pub const SCHEMA_VERSION: u64 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    /// Human-oriented lines; not schema-stable.
    Plain,
    /// Comma-separated rows under a fixed header.
    Csv,
    /// One json document per invocation.
    Json,
}

impl fmt::Display for OutputFormat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            OutputFormat::Plain => "plain",
            OutputFormat::Csv => "csv",
            OutputFormat::Json => "json",
        })
    }
}

/// Comma-free spelling for csv cells: ascii when the letters fit, dotted
/// ids otherwise.
fn csv_word(w: &Word) -> String {
    w.to_ascii().unwrap_or_else(|| {
        let parts: Vec<String> = w.letters().iter().map(|x| x.to_string()).collect();
        parts.join(".")
    })
}

fn verdict_name(v: Verdict) -> &'static str {
    match v {
        Verdict::Holds => "holds",
        Verdict::Violated => "violated",
        Verdict::NotApplicable => "not-applicable",
    }
}

fn join<T: ToString>(items: impl IntoIterator<Item = T>, sep: &str) -> String {
    let parts: Vec<String> = items.into_iter().map(|x| x.to_string()).collect();
    parts.join(sep)
}

pub fn render_count(
    format: OutputFormat,
    word: &Word,
    profile: &LengthProfile,
    factors: Count,
) -> String {
    match format {
        OutputFormat::Plain => format!(
            "word: {word}\nn: {}\nq: {}\npal_factors: {factors}\nspal: {}\nodd: {}\neven: {}\nprofile: {}\n",
            word.len(),
            word.alphabet_size(),
            profile.total(),
            profile.odd_total(),
            profile.even_total(),
            join(profile.by_length().iter(), ","),
        ),
        OutputFormat::Csv => format!(
            "word,n,q,pal_factors,spal,odd,even,profile\n{},{},{},{factors},{},{},{},{}\n",
            csv_word(word),
            word.len(),
            word.alphabet_size(),
            profile.total(),
            profile.odd_total(),
            profile.even_total(),
            join(profile.by_length().iter(), " "),
        ),
        OutputFormat::Json => format!(
            "{}\n",
            json!({
                "schema_version": SCHEMA_VERSION,
                "word": word.to_string(),
                "n": word.len(),
                "q": word.alphabet_size(),
                "pal_factors": factors,
                "spal": profile.total(),
                "odd_total": profile.odd_total(),
                "even_total": profile.even_total(),
                "profile": profile.by_length(),
            })
        ),
    }
}

pub fn render_enumerate(
    format: OutputFormat,
    word: &Word,
    spal_list: &[Word],
    pal_list: &[Word],
) -> String {
    match format {
        OutputFormat::Plain => {
            let mut out = format!("spal ({}):\n", spal_list.len());
            for p in spal_list {
                out.push_str(&format!("{p}\n"));
            }
            out.push_str(&format!("pal ({}):\n", pal_list.len()));
            for p in pal_list {
                out.push_str(&format!("{p}\n"));
            }
            out
        }
        OutputFormat::Csv => {
            let mut out = String::from("kind,word\n");
            for p in spal_list {
                out.push_str(&format!("spal,{}\n", csv_word(p)));
            }
            for p in pal_list {
                out.push_str(&format!("pal,{}\n", csv_word(p)));
            }
            out
        }
        OutputFormat::Json => format!(
            "{}\n",
            json!({
                "schema_version": SCHEMA_VERSION,
                "word": word.to_string(),
                "spal": spal_list.iter().map(|p| p.to_string()).collect::<Vec<_>>(),
                "pal_factors": pal_list.iter().map(|p| p.to_string()).collect::<Vec<_>>(),
            })
        ),
    }
}

pub fn render_audit(format: OutputFormat, report: &BoundReport) -> String {
    match format {
        OutputFormat::Plain => {
            let mut out = format!(
                "word: {}\nn: {}  q: {}  pal_factors: {}  spal: {}  block_word: {}\n",
                report.word, report.n, report.q, report.pal_factors, report.spal, report.block_word
            );
            for c in &report.checks {
                match c.verdict {
                    Verdict::NotApplicable => {
                        out.push_str(&format!("  {}: not applicable\n", c.id));
                    }
                    Verdict::Holds => {
                        out.push_str(&format!(
                            "  {}: holds ({} within {})\n",
                            c.id, c.observed, c.bound
                        ));
                    }
                    Verdict::Violated => {
                        out.push_str(&format!(
                            "  {}: VIOLATED ({} against {})\n",
                            c.id, c.observed, c.bound
                        ));
                    }
                }
            }
            let violated = report.violations().len();
            if violated == 0 {
                out.push_str("all applicable bounds hold\n");
            } else {
                out.push_str(&format!("{violated} bound(s) violated\n"));
            }
            out
        }
        OutputFormat::Csv => {
            let mut out = String::from("check,verdict,observed,bound\n");
            for c in &report.checks {
                if c.verdict == Verdict::NotApplicable {
                    out.push_str(&format!("{},{},,\n", c.id, verdict_name(c.verdict)));
                } else {
                    out.push_str(&format!(
                        "{},{},{},{}\n",
                        c.id,
                        verdict_name(c.verdict),
                        c.observed,
                        c.bound
                    ));
                }
            }
            out
        }
        OutputFormat::Json => {
            let checks: Vec<Value> = report
                .checks
                .iter()
                .map(|c| {
                    if c.verdict == Verdict::NotApplicable {
                        json!({
                            "id": c.id,
                            "verdict": verdict_name(c.verdict),
                            "observed": Value::Null,
                            "bound": Value::Null,
                        })
                    } else {
                        json!({
                            "id": c.id,
                            "verdict": verdict_name(c.verdict),
                            "observed": c.observed,
                            "bound": c.bound,
                        })
                    }
                })
                .collect();
            format!(
                "{}\n",
                json!({
                    "schema_version": SCHEMA_VERSION,
                    "word": report.word.to_string(),
                    "n": report.n,
                    "q": report.q,
                    "pal_factors": report.pal_factors,
                    "spal": report.spal,
                    "odd_total": report.profile.odd_total(),
                    "even_total": report.profile.even_total(),
                    "profile": report.profile.by_length(),
                    "block_word": report.block_word,
                    "all_hold": report.all_hold(),
                    "checks": checks,
                })
            )
        }
    }
}

pub fn render_table(format: OutputFormat, records: &[ExtremalRecord]) -> String {
    match format {
        OutputFormat::Plain => {
            let mut out = String::new();
            for r in records {
                out.push_str(&format!(
                    "n={} q={} max={} witnesses: {}\n",
                    r.n,
                    r.q,
                    r.max_sp,
                    join(r.witnesses.iter(), " "),
                ));
            }
            out
        }
        OutputFormat::Csv => records_to_csv(records),
        OutputFormat::Json => {
            let rows: Vec<Value> = records
                .iter()
                .map(|r| {
                    json!({
                        "n": r.n,
                        "q": r.q,
                        "max_sp": r.max_sp,
                        "witnesses": r.witnesses.iter().map(|w| w.to_string()).collect::<Vec<_>>(),
                    })
                })
                .collect();
            format!(
                "{}\n",
                json!({"schema_version": SCHEMA_VERSION, "records": rows})
            )
        }
    }
}

pub fn render_conjecture(format: OutputFormat, checks: &[ConjectureCheck]) -> String {
    let all = checks.iter().all(|c| c.holds);
    match format {
        OutputFormat::Plain => {
            let mut out = String::new();
            for c in checks {
                let mark = if c.holds { "holds" } else { "FAILS" };
                out.push_str(&format!(
                    "n={}: {mark}  max={} at q={{{}}}  predicted {} at q={{{}}}\n",
                    c.n,
                    c.observed_max,
                    join(c.observed_q.iter(), " "),
                    c.predicted.max_sp,
                    join(c.predicted.achieving_q.iter(), " "),
                ));
                if !c.holds {
                    let shown: Vec<String> =
                        c.witnesses.iter().take(8).map(|w| w.to_string()).collect();
                    let extra = c.witnesses.len().saturating_sub(shown.len());
                    let suffix = if extra > 0 {
                        format!(" (+{extra} more)")
                    } else {
                        String::new()
                    };
                    out.push_str(&format!("  witnesses: {}{suffix}\n", shown.join(" ")));
                }
            }
            out.push_str(if all {
                "prediction holds for every length checked\n"
            } else {
                "PREDICTION FAILED, see lines above\n"
            });
            out
        }
        OutputFormat::Csv => {
            let mut out =
                String::from("n,holds,observed_max,observed_q,predicted_max,predicted_q\n");
            for c in checks {
                out.push_str(&format!(
                    "{},{},{},{},{},{}\n",
                    c.n,
                    c.holds,
                    c.observed_max,
                    join(c.observed_q.iter(), " "),
                    c.predicted.max_sp,
                    join(c.predicted.achieving_q.iter(), " "),
                ));
            }
            out
        }
        OutputFormat::Json => {
            let rows: Vec<Value> = checks
                .iter()
                .map(|c| {
                    json!({
                        "n": c.n,
                        "holds": c.holds,
                        "observed_max": c.observed_max,
                        "observed_q": c.observed_q,
                        "predicted_max": c.predicted.max_sp,
                        "predicted_q": c.predicted.achieving_q,
                        "witnesses": c.witnesses.iter().map(|w| w.to_string()).collect::<Vec<_>>(),
                    })
                })
                .collect();
            format!(
                "{}\n",
                json!({
                    "schema_version": SCHEMA_VERSION,
                    "mode": "exhaustive",
                    "holds": all,
                    "lengths": rows,
                })
            )
        }
    }
}

pub fn render_samples(format: OutputFormat, reports: &[SampleReport], seed: u64) -> String {
    let all = reports.iter().all(|r| r.holds());
    match format {
        OutputFormat::Plain => {
            let mut out = String::new();
            for r in reports {
                if r.holds() {
                    out.push_str(&format!(
                        "n={} q={}: ok  max {} within {}  ({} samples)\n",
                        r.n, r.q, r.observed_max, r.bound, r.samples
                    ));
                } else {
                    out.push_str(&format!(
                        "n={} q={}: EXCEEDED  max {} over {}  witnesses: {}\n",
                        r.n,
                        r.q,
                        r.observed_max,
                        r.bound,
                        join(r.violations.iter(), " "),
                    ));
                }
            }
            out.push_str(if all {
                "no sampled word beats the predicted maximum\n"
            } else {
                "PREDICTION FAILED, see lines above\n"
            });
            out
        }
        OutputFormat::Csv => {
            let mut out = String::from("n,q,samples,observed_max,bound,violations\n");
            for r in reports {
                let viol: Vec<String> = r.violations.iter().map(|w| csv_word(w.word())).collect();
                out.push_str(&format!(
                    "{},{},{},{},{},{}\n",
                    r.n,
                    r.q,
                    r.samples,
                    r.observed_max,
                    r.bound,
                    viol.join(" ")
                ));
            }
            out
        }
        OutputFormat::Json => {
            let rows: Vec<Value> = reports
                .iter()
                .map(|r| {
                    json!({
                        "n": r.n,
                        "q": r.q,
                        "samples": r.samples,
                        "observed_max": r.observed_max,
                        "bound": r.bound,
                        "violations": r.violations.iter().map(|w| w.to_string()).collect::<Vec<_>>(),
                    })
                })
                .collect();
            format!(
                "{}\n",
                json!({
                    "schema_version": SCHEMA_VERSION,
                    "mode": "sample",
                    "seed": seed,
                    "holds": all,
                    "cells": rows,
                })
            )
        }
    }
}

/// Closed-form bound values for one `(n, q)` query; `None` marks a bound
/// whose side conditions the query does not meet.
pub struct BoundsReport {
    pub n: usize,
    pub q: Option<usize>,
    pub rows: Vec<(&'static str, Option<Count>)>,
    /// Alphabet sizes predicted to attain the overall maximum.
    pub conjectured_q: Option<BTreeSet<usize>>,
}

pub fn render_bounds(format: OutputFormat, report: &BoundsReport) -> String {
    match format {
        OutputFormat::Plain => {
            let mut out = format!("n: {}\n", report.n);
            if let Some(q) = report.q {
                out.push_str(&format!("q: {q}\n"));
            }
            for (name, value) in &report.rows {
                match value {
                    Some(v) => {
                        if *name == "conjectured_max" {
                            if let Some(qs) = &report.conjectured_q {
                                out.push_str(&format!(
                                    "{name}: {v} (at q = {})\n",
                                    join(qs.iter(), " ")
                                ));
                                continue;
                            }
                        }
                        out.push_str(&format!("{name}: {v}\n"));
                    }
                    None => out.push_str(&format!("{name}: -\n")),
                }
            }
            out
        }
        OutputFormat::Csv => {
            let mut out = String::from("bound,value\n");
            for (name, value) in &report.rows {
                match value {
                    Some(v) => out.push_str(&format!("{name},{v}\n")),
                    None => out.push_str(&format!("{name},\n")),
                }
                if *name == "conjectured_max" {
                    match &report.conjectured_q {
                        Some(qs) => {
                            out.push_str(&format!("conjectured_q,{}\n", join(qs.iter(), " ")));
                        }
                        None => out.push_str("conjectured_q,\n"),
                    }
                }
            }
            out
        }
        OutputFormat::Json => {
            let mut map = Map::new();
            for (name, value) in &report.rows {
                map.insert(
                    (*name).to_string(),
                    match value {
                        Some(v) => json!(v),
                        None => Value::Null,
                    },
                );
            }
            format!(
                "{}\n",
                json!({
                    "schema_version": SCHEMA_VERSION,
                    "n": report.n,
                    "q": report.q,
                    "bounds": Value::Object(map),
                    "conjectured_q": report.conjectured_q,
                })
            )
        }
    }
}
