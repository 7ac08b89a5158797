//! Command-line front end.
//!
//! Exit status: 0 on success, 1 for parse and domain errors, 2 when a
//! space or capacity is outside what can be computed. Diagnostics go to
//! the error stream as one line, `error[<code>]: <message>`.

mod parse;

use std::io::Write;

use clap::{Parser, Subcommand};
use num_bigint::BigUint;
use serde::Serialize;

pub use parse::{parse_group, parse_space};

use crate::abelian::{count_direct_summands, enumerate_direct_summands, FgAbelianGroup};
use crate::capacity::{
    borsuk_report, Count, capacity_report, default_bound, enumerate_dominated, CounterexampleReport,
    ExtendedCount, Rule,
};
use crate::error::{Error, Result};
use crate::spaces::SpaceExpr;

#[derive(Debug, Clone, Parser)]
#[command(name = "borsuk", version, about = "Homology and Borsuk capacity of spaces")]
pub struct Cli {
    /// Emit one JSON document instead of text.
    #[arg(long, global = true)]
    pub json: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, PartialEq, Eq, Subcommand)]
pub enum Command {
    /// Homology groups H_0 .. H_bound.
    Homology {
        space: String,
        /// Highest degree (default: max(10, dimension)).
        #[arg(long)]
        bound: Option<u32>,
    },
    /// Capacity, optionally with the dominated homotopy types.
    Capacity {
        space: String,
        #[arg(long)]
        enumerate: bool,
    },
    /// Compare homology and capacities of two spaces.
    Compare {
        x: String,
        y: String,
        /// Highest degree compared (default: max(10, dimensions)).
        #[arg(long)]
        bound: Option<u32>,
    },
    /// Direct-summand classes of an abelian group.
    Summands { group: String },
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Parse { .. } | Error::Domain { .. } | Error::InvalidSpace(_) => 1,
        Error::UnsupportedSpace(_) | Error::UnsupportedCapacity(_) | Error::SizeLimit { .. } => 2,
    }
}

/// Runs one command, writing the result to `out` and diagnostics to `err`.
/// Returns the process exit status.
pub fn run(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    match execute(&cli.command) {
        Ok(output) => {
            let written = if cli.json {
                serde_json::to_string_pretty(&output)
                    .map_err(std::io::Error::other)
                    .and_then(|s| writeln!(out, "{s}"))
            } else {
                out.write_all(output.render_text().as_bytes())
            };
            match written {
                Ok(()) => 0,
                Err(e) => {
                    let _ = writeln!(err, "error[io_error]: {e}");
                    1
                }
            }
        }
        Err(e) => {
            let _ = if cli.json {
                let doc = serde_json::json!({ "error": e.code(), "message": e.to_string() });
                writeln!(err, "{doc}")
            } else {
                writeln!(err, "error[{}]: {e}", e.code())
            };
            exit_code(&e)
        }
    }
}

#[derive(Debug, Serialize)]
#[serde(tag = "command", rename_all = "snake_case")]
pub enum Output {
    Homology(HomologyOutput),
    Capacity(CapacityOutput),
    Compare(CounterexampleReport),
    Summands(SummandsOutput),
}

#[derive(Debug, Serialize)]
pub struct HomologyOutput {
    pub space: SpaceExpr,
    pub bound: u32,
    pub exact_above_bound: bool,
    pub groups: Vec<DegreeGroup>,
}

#[derive(Debug, Serialize)]
pub struct DegreeGroup {
    pub degree: u32,
    pub group: FgAbelianGroup,
}

#[derive(Debug, Serialize)]
pub struct CapacityOutput {
    pub space: SpaceExpr,
    pub canonical: SpaceExpr,
    pub capacity: ExtendedCount,
    pub rule: Rule,
    pub notes: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dominated: Option<Vec<SpaceExpr>>,
}

#[derive(Debug, Serialize)]
pub struct SummandsOutput {
    pub group: FgAbelianGroup,
    #[serde(serialize_with = "serialize_count")]
    pub count: BigUint,
    pub summands: Vec<FgAbelianGroup>,
}

pub fn execute(command: &Command) -> Result<Output> {
    match command {
        Command::Homology { space, bound } => {
            let space = parse_space(space)?;
            let bound = bound.unwrap_or_else(|| default_bound(&[&space]));
            let profile = space.homology_profile(bound)?;
            Ok(Output::Homology(HomologyOutput {
                bound,
                exact_above_bound: profile.exact_above_bound(),
                groups: profile
                    .groups()
                    .iter()
                    .enumerate()
                    .map(|(d, g)| DegreeGroup { degree: d as u32, group: g.clone() })
                    .collect(),
                space,
            }))
        }
        Command::Capacity { space, enumerate } => {
            let space = parse_space(space)?;
            let report = capacity_report(&space);
            let dominated = if *enumerate {
                Some(enumerate_dominated(&space)?)
            } else {
                None
            };
            let notes = if report.rule.is_extension() {
                vec![format!("extension: {}", report.rule.description())]
            } else {
                Vec::new()
            };
            Ok(Output::Capacity(CapacityOutput {
                space,
                canonical: report.space,
                capacity: report.capacity,
                rule: report.rule,
                notes,
                dominated,
            }))
        }
        Command::Compare { x, y, bound } => {
            let x = parse_space(x)?;
            let y = parse_space(y)?;
            let bound = bound.unwrap_or_else(|| default_bound(&[&x, &y]));
            Ok(Output::Compare(borsuk_report(&x, &y, bound)?))
        }
        Command::Summands { group } => {
            let group = parse_group(group)?;
            Ok(Output::Summands(SummandsOutput {
                count: count_direct_summands(&group),
                summands: enumerate_direct_summands(&group),
                group,
            }))
        }
    }
}

fn serialize_count<S: serde::Serializer>(n: &BigUint, s: S) -> std::result::Result<S::Ok, S::Error> {
    Count(n).serialize(s)
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

impl Output {
    pub fn render_text(&self) -> String {
        let mut s = String::new();
        let mut line = |l: String| {
            s.push_str(&l);
            s.push('\n');
        };
        match self {
            Output::Homology(h) => {
                line(format!("space: {}", h.space));
                line("degree  group".into());
                for dg in &h.groups {
                    line(format!("{:<6}  {}", dg.degree, dg.group));
                }
                if h.exact_above_bound {
                    line(format!("all groups above degree {} vanish", h.bound));
                } else {
                    line(format!("computed up to degree {}; higher degrees not shown", h.bound));
                }
            }
            Output::Capacity(c) => {
                line(format!("space:     {}", c.space));
                if c.canonical != c.space {
                    line(format!("canonical: {}", c.canonical));
                }
                line(format!("capacity:  {}", c.capacity));
                line(format!("rule:      {}", c.rule.description()));
                for n in &c.notes {
                    line(format!("note: {n}"));
                }
                if let Some(d) = &c.dominated {
                    line(format!("dominated homotopy types ({}):", d.len()));
                    for x in d {
                        line(format!("  {x}"));
                    }
                }
            }
            Output::Compare(r) => {
                line(format!("X: {}", r.space_x));
                line(format!("Y: {}", r.space_y));
                let scope = if r.exact_comparison {
                    "all degrees"
                } else {
                    "verified up to this degree only"
                };
                line(format!(
                    "homology compared up to degree {} (exact: {}, {scope})",
                    r.compared_up_to,
                    yes_no(r.exact_comparison)
                ));
                line(format!("homology agrees: {}", yes_no(r.homology_agrees)));
                line(format!("C(X) = {}", r.capacity_x));
                line(format!("C(Y) = {}", r.capacity_y));
                line(format!("counterexample: {}", yes_no(r.is_counterexample)));
                for n in &r.notes {
                    line(format!("note: {n}"));
                }
            }
            Output::Summands(o) => {
                line(format!("group: {}", o.group));
                line(format!("direct summands up to isomorphism: {}", o.count));
                for g in &o.summands {
                    line(format!("  {g}"));
                }
            }
        }
        s
    }
}
