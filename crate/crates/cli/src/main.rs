use std::fmt::Write as _;
use std::path::Path;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde::Serialize;
use serde_json::json;

use polymix_core::catalog::{self, lookup};
use polymix_core::engine::{COSET_LIMIT_ENV, DEFAULT_COSET_LIMIT};
use polymix_core::mixer::{
    chirality_criteria, classify_mix, face_vector, mix, mix_polytopality, self_dual_mix, MixResult,
    Variant,
};
use polymix_core::oracle::{run_oracle, DEFAULT_ORACLE_BUDGET};
use polymix_core::par::Execution;
use polymix_core::reproduce::{reproduce, RowStatus, DEFAULT_PARAMETERS};
use polymix_core::rotation::classify;
use polymix_core::{Error, Presentation, RotationSystem};

/// Build and classify self-dual chiral polytopes from rotation groups.
///
/// Inputs named `P`, `A` or `B` are presentation files or catalog names
/// such as `{3,6}(1,2)`, `[4,3,3]+` or `dual:{3,6}(1,2)`.
#[derive(Parser, Debug)]
#[command(name = "polymix", version)]
struct Cli {
    /// Maximum number of cosets (or group elements) before giving up.
    #[arg(long, global = true, env = COSET_LIMIT_ENV, default_value_t = DEFAULT_COSET_LIMIT)]
    limit: usize,

    /// Maximum group order accepted by the face-poset oracle.
    #[arg(long, global = true, default_value_t = DEFAULT_ORACLE_BUDGET)]
    budget: usize,

    /// Emit JSON instead of a table.
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// List the named presentations.
    Catalog,
    /// Write a named presentation in the file format.
    Emit {
        #[arg(long)]
        name: String,
        /// Output file; stdout when omitted.
        #[arg(long)]
        out: Option<std::path::PathBuf>,
    },
    /// Classify one rotation group.
    Classify {
        #[arg(long = "pres", value_name = "P")]
        pres: String,
    },
    /// Mix two rotation groups and classify the result.
    Mix { a: String, b: String },
    /// Mix a rotation group with its dual or mirrored dual.
    Selfdual {
        p: String,
        #[arg(long, default_value = "proper")]
        variant: Variant,
    },
    /// Evaluate the chirality criteria for the mix with the dual.
    Criteria { p: String },
    /// Check the polytope axioms on the coset face poset.
    Oracle { p: String },
    /// Recompute the worked torus-map examples.
    Reproduce {
        #[arg(long, default_value_t = 6)]
        section: u32,
        /// Parameters `b,c`; may be repeated.
        #[arg(long = "param", value_parser = parse_param)]
        params: Vec<(u64, u64)>,
    },
}

fn parse_param(s: &str) -> Result<(u64, u64), String> {
    let (b, c) = s.split_once(',').ok_or("expected b,c")?;
    let b = b.trim().parse().map_err(|_| format!("bad b in {s:?}"))?;
    let c = c.trim().parse().map_err(|_| format!("bad c in {s:?}"))?;
    Ok((b, c))
}

/// Validated settings for one invocation.
#[derive(Debug)]
struct JobConfig {
    command: Command,
    limit: usize,
    budget: usize,
    json: bool,
}

impl JobConfig {
    fn from_cli(cli: Cli) -> Result<Self, Error> {
        if cli.limit == 0 || cli.budget == 0 {
            return Err(Error::Invalid(
                "--limit and --budget must be positive".into(),
            ));
        }
        Ok(JobConfig {
            command: cli.command,
            limit: cli.limit,
            budget: cli.budget,
            json: cli.json,
        })
    }
}

/// Output of a successful job: JSON value plus its table rendering.
struct Output {
    json: serde_json::Value,
    table: String,
    ok: bool,
}

impl Output {
    fn new(value: impl Serialize, table: String) -> Self {
        Output {
            json: serde_json::to_value(value).expect("reports serialize"),
            table,
            ok: true,
        }
    }
}

fn load(input: &str) -> Result<Presentation, Error> {
    if Path::new(input).is_file() {
        let text = std::fs::read_to_string(input)
            .map_err(|e| Error::Invalid(format!("cannot read {input}: {e}")))?;
        Presentation::parse(&text)
    } else {
        lookup(input)
    }
}

fn system(input: &str, limit: usize) -> Result<RotationSystem, Error> {
    RotationSystem::from_presentation(&load(input)?, limit)
}

fn table<I, K, V>(rows: I) -> String
where
    I: IntoIterator<Item = (K, V)>,
    K: std::fmt::Display,
    V: std::fmt::Display,
{
    let mut out = String::new();
    for (k, v) in rows {
        writeln!(out, "{k:<22} {v}").expect("writing to a string");
    }
    out
}

fn value_table(value: &serde_json::Value) -> String {
    match value.as_object() {
        Some(map) => table(map.iter().map(|(k, v)| (k.clone(), v.to_string()))),
        None => format!("{value}\n"),
    }
}

fn mix_output(m: &MixResult) -> Output {
    let report = classify_mix(m);
    let polytopality = mix_polytopality(m);
    let (p, q) = &m.factors;
    let fv = face_vector(&m.system);
    let value = json!({
        "order": report.order,
        "type": report.schlafli,
        "polytopal": report.polytopal,
        "polytopality_rule": polytopality.rule,
        "witness": report.witness,
        "regularity": report.regularity,
        "self_duality": report.self_duality,
        "criteria_fired": report.criteria_fired,
        "comix_order": m.comix_order,
        "size_identity_ok": m.order() * m.comix_order == p.order() * q.order(),
        "factor_orders": [p.order(), q.order()],
        "faces": fv.faces,
        "flags": fv.flags,
    });
    let table = value_table(&value);
    Output {
        json: value,
        table,
        ok: true,
    }
}

fn run(config: &JobConfig) -> Result<Output, Error> {
    let limit = config.limit;
    match &config.command {
        Command::Catalog => {
            let entries = catalog::entries();
            let table = table(entries.iter().map(|e| {
                let order = e.rotation_group_order.map_or("?".into(), |o| o.to_string());
                (e.name.clone(), format!("{order:>6}  {}", e.description))
            }));
            Ok(Output::new(entries, table))
        }
        Command::Emit { name, out } => {
            let text = lookup(name)?.to_text();
            if let Some(path) = out {
                std::fs::write(path, &text)
                    .map_err(|e| Error::Invalid(format!("cannot write {}: {e}", path.display())))?;
            }
            Ok(Output::new(
                json!({ "name": name, "presentation": text }),
                text,
            ))
        }
        Command::Classify { pres } => {
            let report = classify(&system(pres, limit)?);
            let value = serde_json::to_value(&report).expect("reports serialize");
            let table = value_table(&value);
            Ok(Output {
                json: value,
                table,
                ok: true,
            })
        }
        Command::Mix { a, b } => {
            let m = mix(&system(a, limit)?, &system(b, limit)?, limit)?;
            Ok(mix_output(&m))
        }
        Command::Selfdual { p, variant } => {
            let m = self_dual_mix(&system(p, limit)?, *variant, limit)?;
            let mut out = mix_output(&m);
            out.json["variant"] = json!(variant);
            out.table = value_table(&out.json);
            Ok(out)
        }
        Command::Criteria { p } => {
            let report = chirality_criteria(&system(p, limit)?, limit)?;
            let value = serde_json::to_value(&report).expect("reports serialize");
            let mut table = value_table(&value);
            if !report.consistent {
                table.push_str("warning: a criterion fired on a directly regular mix\n");
            }
            Ok(Output {
                json: value,
                table,
                ok: report.consistent,
            })
        }
        Command::Oracle { p } => {
            let report = run_oracle(&system(p, limit)?, config.budget)?;
            let value = serde_json::to_value(&report).expect("reports serialize");
            let table = value_table(&value);
            Ok(Output {
                json: value,
                table,
                ok: true,
            })
        }
        Command::Reproduce { section, params } => {
            if *section != 6 {
                return Err(Error::Invalid(format!(
                    "only the torus-map examples (--section 6) are available, not {section}"
                )));
            }
            let params = if params.is_empty() {
                DEFAULT_PARAMETERS.to_vec()
            } else {
                params.clone()
            };
            let rows = reproduce(&params, limit, Execution::default());
            let mut table = String::new();
            for row in &rows {
                let status = match &row.status {
                    RowStatus::Passed => "PASS".to_string(),
                    RowStatus::Failed { failing } => format!("FAIL: {}", failing.join("; ")),
                    RowStatus::Skipped { reason } => format!("SKIP: {reason}"),
                    RowStatus::Error { message } => format!("ERROR: {message}"),
                };
                writeln!(
                    table,
                    "(b,c) = ({},{})  m = {:<4} {status}",
                    row.b, row.c, row.m
                )
                .expect("writing to a string");
                for check in &row.checks {
                    let mark = if check.pass { "ok " } else { "BAD" };
                    writeln!(
                        table,
                        "    {mark} {:<40} expected {:<20} got {}",
                        check.name, check.expected, check.actual
                    )
                    .expect("writing to a string");
                }
            }
            let ok = rows
                .iter()
                .all(|r| matches!(r.status, RowStatus::Passed | RowStatus::Skipped { .. }));
            let mut out = Output::new(&rows, table);
            out.ok = ok;
            Ok(out)
        }
    }
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::EnumerationOverflow { .. } | Error::BudgetExceeded { .. } => 2,
        _ => 1,
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let result = JobConfig::from_cli(cli).and_then(|config| Ok((run(&config)?, config.json)));
    match result {
        Ok((out, as_json)) => {
            if as_json {
                println!(
                    "{}",
                    serde_json::to_string_pretty(&out.json).expect("reports serialize")
                );
            } else {
                print!("{}", out.table);
            }
            if out.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
