//! Text, JSON and CSV forms of every CLI output. Each is a pure function of its input.

use std::fmt::Write;

use serde::Serialize;
use torsorlab::suites::Report;
use torsorlab::symmetry::{RowVerdict, SIGN_TABLE};
use torsorlab::{FiniteGroup, Subset};

use crate::{Format, Invalid};

fn elements(s: &Subset) -> Vec<usize> {
    s.iter().collect()
}

fn json(value: &impl Serialize) -> Result<String, Invalid> {
    let mut s = serde_json::to_string_pretty(value)?;
    s.push('\n');
    Ok(s)
}

fn csv_text(header: &[&str], rows: impl IntoIterator<Item = Vec<String>>) -> Result<String, Invalid> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header)?;
    for row in rows {
        w.write_record(&row)?;
    }
    let bytes = w.into_inner().map_err(|e| Invalid(e.to_string()))?;
    Ok(String::from_utf8(bytes)?)
}

pub fn map_value(format: Format, g: &FiniteGroup, map: &str, value: &Subset) -> Result<String, Invalid> {
    #[derive(Serialize)]
    struct Out<'a> {
        group: &'a str,
        map: &'a str,
        result: Vec<usize>,
    }
    match format {
        Format::Text => Ok(format!("{value}\n")),
        Format::Json => json(&Out { group: g.name(), map, result: elements(value) }),
        Format::Csv => csv_text(&["group", "map", "result"], [vec![g.name().into(), map.into(), value.to_string()]]),
    }
}

/// A sorted list of subsets with a noun for the count line.
#[derive(Serialize)]
pub struct Listing {
    group: String,
    what: String,
    #[serde(skip)]
    noun: &'static str,
    count: usize,
    items: Vec<Vec<usize>>,
}

impl Listing {
    pub fn new(g: &FiniteGroup, what: &str, noun: &'static str, mut items: Vec<Subset>) -> Self {
        items.sort();
        Listing {
            group: g.name().to_string(),
            what: what.to_string(),
            noun,
            count: items.len(),
            items: items.iter().map(elements).collect(),
        }
    }
}

fn join(v: &[usize]) -> String {
    if v.is_empty() {
        return "{}".into();
    }
    v.iter().map(|e| e.to_string()).collect::<Vec<_>>().join(",")
}

pub fn listing(format: Format, l: &Listing) -> Result<String, Invalid> {
    match format {
        Format::Text => {
            let mut s = String::new();
            for item in &l.items {
                writeln!(s, "{}", join(item))?;
            }
            writeln!(s, "{} {}", l.count, l.noun)?;
            Ok(s)
        }
        Format::Json => json(l),
        Format::Csv => csv_text(&["index", "subset"], l.items.iter().enumerate().map(|(i, v)| vec![i.to_string(), join(v)])),
    }
}

pub fn report(format: Format, r: &Report) -> Result<String, Invalid> {
    match format {
        Format::Json => json(r),
        Format::Csv => csv_text(
            &["check_id", "instance", "status", "mode", "checked", "group", "witness", "note", "statement"],
            r.checks.iter().map(|c| {
                vec![
                    c.check_id.clone(),
                    c.instance.clone().unwrap_or_default(),
                    c.status.as_str().to_string(),
                    c.mode.clone(),
                    c.checked.to_string(),
                    c.group.clone(),
                    c.witness.as_ref().map(|w| w.to_string()).unwrap_or_default(),
                    c.note.clone().unwrap_or_default(),
                    c.statement.clone(),
                ]
            }),
        ),
        Format::Text => {
            let mut s = String::new();
            for c in &r.checks {
                let id = match &c.instance {
                    Some(i) => format!("{} [{i}]", c.check_id),
                    None => c.check_id.clone(),
                };
                write!(s, "{:<7} {id}  {}", c.status.as_str().to_uppercase(), c.mode)?;
                if let Some(w) = &c.witness {
                    write!(s, "  witness: {w}")?;
                }
                if let Some(n) = &c.note {
                    write!(s, "  ({n})")?;
                }
                s.push('\n');
            }
            let m = &r.summary;
            writeln!(s, "{}: {} pass, {} fail, {} skipped (seed {})", r.group, m.pass, m.fail, m.skipped, r.seed)?;
            Ok(s)
        }
    }
}

pub fn sign_rows(format: Format, g: &FiniteGroup, rows: &[RowVerdict]) -> Result<String, Invalid> {
    let derived = |r: &RowVerdict| r.derived.iter().map(|s| s.to_string()).collect::<Vec<_>>().join(" ");
    let status = |r: &RowVerdict| if r.passed() { "pass" } else { "fail" };
    match format {
        Format::Json => {
            #[derive(Serialize)]
            struct Row {
                permutation: &'static str,
                letters: &'static str,
                printed: String,
                printed_holds: bool,
                checked_vector: String,
                status: &'static str,
                derived: Vec<String>,
            }
            #[derive(Serialize)]
            struct Out {
                group: String,
                rows: Vec<Row>,
            }
            let rows = rows
                .iter()
                .map(|r| Row {
                    permutation: r.s4,
                    letters: r.letters,
                    printed: r.printed.to_string(),
                    printed_holds: r.printed_holds(),
                    checked_vector: r.expected.to_string(),
                    status: status(r),
                    derived: r.derived.iter().map(|s| s.to_string()).collect(),
                })
                .collect();
            json(&Out { group: g.name().to_string(), rows })
        }
        Format::Csv => csv_text(
            &["permutation", "letters", "printed", "printed_holds", "checked_vector", "status", "derived"],
            rows.iter().map(|r| {
                vec![
                    r.s4.to_string(),
                    r.letters.to_string(),
                    r.printed.to_string(),
                    r.printed_holds().to_string(),
                    r.expected.to_string(),
                    status(r).to_string(),
                    derived(r),
                ]
            }),
        ),
        Format::Text => {
            let mut s = String::new();
            writeln!(s, "{:<10} {:<12} {:<36} {:<7} derived on {}", "σ", "letters", "s(σ)", "status", g.name())?;
            for r in rows {
                let mut vector = r.printed.to_string();
                if !r.printed_holds() {
                    vector = format!("{vector} → {}", r.expected);
                }
                writeln!(s, "{:<10} {:<12} {:<36} {:<7} {}", r.s4, r.letters, vector, status(r).to_uppercase(), derived(r))?;
            }
            let fixed = SIGN_TABLE.iter().filter(|r| r.erratum.is_some()).count();
            let held = rows.iter().filter(|r| r.printed_holds()).count();
            writeln!(
                s,
                "{} of 24 rows pass; {held} printed vectors hold as printed, {fixed} checked against a corrected vector",
                rows.iter().filter(|r| r.passed()).count()
            )?;
            Ok(s)
        }
    }
}
