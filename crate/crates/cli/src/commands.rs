use std::path::PathBuf;
use std::time::Instant;

use serde_json::{json, Map, Value};

use hultman::genfunc::{verify_pg_one_recursion, verify_pg_properties};
use hultman::ginibre::mc_verify;
use hultman::gluing::glue_polygon;
use hultman::numbers::p_family_via_recursion;
use hultman::perm::alternating_cycle_decomposition;
use hultman::verify::{verify, Tier, TierParams};
use hultman::{Error, McConfig, Permutation, Result};

use crate::cache::{self, Cached, Key, Object};
use crate::output::{self, CsvTable, RunReport, Status};
use crate::{CacheAction, Cli, Command};

struct Outcome {
    status: Status,
    payload: Value,
    csv: CsvTable,
}

impl Outcome {
    fn new(passed: bool, payload: Value, csv: CsvTable) -> Self {
        Outcome {
            status: Status::from_passed(passed),
            payload,
            csv,
        }
    }
}

fn command_name(cmd: &Command) -> &'static str {
    match cmd {
        Command::Table { .. } => "table",
        Command::Pn { .. } => "pn",
        Command::Pg { .. } => "pg",
        Command::Cycles { .. } => "cycles",
        Command::Verify { .. } => "verify",
        Command::Mc { .. } => "mc",
        Command::Cache {
            action: CacheAction::Store(_),
        } => "cache store",
        Command::Cache {
            action: CacheAction::Load(_),
        } => "cache load",
    }
}

fn params(cli: &Cli) -> Map<String, Value> {
    let mut p = Map::new();
    let mut put = |k: &str, v: Value| {
        p.insert(k.to_string(), v);
    };
    match &cli.command {
        Command::Table { n_max, source } => {
            put("n_max", json!(n_max));
            put("source", json!(hultman::TableSource::from(*source)));
            put("cap", json!(cli.cap));
        }
        Command::Pn { n_max, source } => {
            put("n_max", json!(n_max));
            put("source", json!(hultman::numbers::PnSource::from(*source)));
            put("cap", json!(cli.cap));
        }
        Command::Pg { g_max, source } => {
            put("g_max", json!(g_max));
            put("source", json!(source));
        }
        Command::Cycles { perm } => put("perm", json!(perm)),
        Command::Verify { suite, tier } => {
            put("suite", json!(suite));
            put("tier", json!(Tier::from(*tier)));
            put("seed", json!(cli.seed));
        }
        Command::Mc {
            dim,
            order,
            samples,
            z_threshold,
        } => {
            put("N", json!(dim));
            put("n", json!(order));
            put("samples", json!(samples));
            put("seed", json!(cli.seed));
            put("z_threshold", json!(z_threshold));
        }
        Command::Cache { action } => {
            let (CacheAction::Store(t) | CacheAction::Load(t)) = action;
            put("kind", json!(t.kind));
            put("source", json!(t.source));
            put("size", json!(t.size));
            put("cap", json!(cli.cap));
        }
    }
    if let Some(dir) = &cli.cache_dir {
        put("cache_dir", json!(dir.display().to_string()));
    }
    p
}

pub fn run(cli: &Cli) -> RunReport {
    let start = Instant::now();
    let outcome = dispatch(cli).unwrap_or_else(|e| {
        let status = match e {
            Error::Inconsistency(_) => Status::Fail,
            _ => Status::Error,
        };
        Outcome {
            status,
            payload: json!({ "error": e.to_string() }),
            csv: error_csv(&e.to_string()),
        }
    });
    RunReport {
        command: command_name(&cli.command).to_string(),
        params: params(cli),
        status: outcome.status,
        payload: outcome.payload,
        csv: outcome.csv,
        elapsed_ms: start.elapsed().as_millis(),
    }
}

pub fn error_report(cli: &Cli, message: String) -> RunReport {
    RunReport {
        command: command_name(&cli.command).to_string(),
        params: params(cli),
        status: Status::Error,
        payload: json!({ "error": message }),
        csv: error_csv(&message),
        elapsed_ms: 0,
    }
}

fn error_csv(message: &str) -> CsvTable {
    let mut csv = CsvTable::new(vec!["error"]);
    csv.push(vec![message.to_string()]);
    csv
}

fn cache_dir_or_default(cli: &Cli) -> PathBuf {
    cli.cache_dir
        .clone()
        .unwrap_or_else(|| PathBuf::from("cache"))
}

fn dispatch(cli: &Cli) -> Result<Outcome> {
    let mut data = Cached::new(cli.cache_dir.clone(), cli.cap);
    match &cli.command {
        Command::Table { n_max, source } => {
            let key = Key::Table((*source).into(), *n_max);
            Ok(object_outcome(&data.get(key)?))
        }
        Command::Pn { n_max, source } => {
            let key = Key::Pn((*source).into(), *n_max);
            Ok(object_outcome(&data.get(key)?))
        }
        Command::Pg { g_max, source } => {
            let Object::Pg(pgs) = data.get(Key::Pg(*source, *g_max))? else {
                unreachable!("pg key yields polynomials")
            };
            pg_outcome(&pgs)
        }
        Command::Cycles { perm } => cycles(perm),
        Command::Verify { suite, tier } => {
            let params = TierParams::new((*tier).into(), cli.seed);
            data.inner.cap = data.inner.cap.max(params.enumeration_n_max());
            let report = verify(*suite, (*tier).into(), cli.seed, &mut data)?;
            let mut csv = CsvTable::new(vec!["suite", "check", "passed", "detail"]);
            for s in &report.suites {
                for c in &s.checks {
                    csv.push(vec![
                        s.suite.to_string(),
                        c.name.clone(),
                        c.passed.to_string(),
                        c.detail.clone(),
                    ]);
                }
            }
            let payload = serde_json::to_value(&report).expect("reports serialize");
            Ok(Outcome::new(report.passed, payload, csv))
        }
        Command::Mc {
            dim,
            order,
            samples,
            z_threshold,
        } => {
            if !(z_threshold.is_finite() && *z_threshold > 0.0) {
                return Err(Error::InvalidInput(
                    "z threshold must be a positive number".into(),
                ));
            }
            let cfg = McConfig::new(*dim, *order, *samples, cli.seed);
            let pn = p_family_via_recursion(*order)?;
            let r = mc_verify(&cfg, &pn, *z_threshold)?;
            let mut csv = CsvTable::new(vec![
                "N",
                "n",
                "samples",
                "seed",
                "mean",
                "std_error",
                "exact",
                "z",
                "passed",
            ]);
            csv.push(vec![
                dim.to_string(),
                order.to_string(),
                r.estimate.samples.to_string(),
                cli.seed.to_string(),
                r.estimate.mean.to_string(),
                r.estimate.std_error.to_string(),
                r.estimate.exact_value.to_string(),
                r.estimate.z_score.to_string(),
                r.passed.to_string(),
            ]);
            let payload = serde_json::to_value(&r).expect("reports serialize");
            Ok(Outcome::new(r.passed, payload, csv))
        }
        Command::Cache { action } => {
            let dir = cache_dir_or_default(cli);
            let (CacheAction::Store(t) | CacheAction::Load(t)) = action;
            let key = Key::parse(t.kind, &t.source, t.size)?;
            let obj = match action {
                CacheAction::Store(_) => {
                    let obj = cache::compute(key, &mut data.inner)?;
                    cache::store(&dir, key, &obj)?;
                    obj
                }
                CacheAction::Load(_) => cache::load(&dir, key)?.ok_or_else(|| {
                    Error::InvalidInput(format!(
                        "no cache file {}",
                        cache::path_for(&dir, key).display()
                    ))
                })?,
            };
            let mut out = object_outcome(&obj);
            out.payload = json!({
                "path": cache::path_for(&dir, key).display().to_string(),
                "object": out.payload,
            });
            Ok(out)
        }
    }
}

fn object_outcome(obj: &Object) -> Outcome {
    match obj {
        Object::Table(t) => Outcome::new(true, output::table_payload(t), output::table_csv(t)),
        Object::Pn(f) => {
            let polys: Vec<_> = f.polys().iter().enumerate().collect();
            Outcome::new(true, output::pn_payload(f), output::poly_csv("n", &polys))
        }
        Object::Pg(pgs) => {
            let polys: Vec<_> = pgs.iter().map(|p| (p.g, &p.poly)).collect();
            Outcome::new(
                true,
                output::pg_polys_payload(pgs),
                output::poly_csv("g", &polys),
            )
        }
    }
}

fn pg_outcome(pgs: &[hultman::PgPolynomial]) -> Result<Outcome> {
    let mut out = object_outcome(&Object::Pg(pgs.to_vec()));
    let properties = pgs[1..]
        .iter()
        .map(verify_pg_properties)
        .collect::<Result<Vec<_>>>()?;
    let mut passed = properties.iter().all(|r| r.passed);
    let mut payload = out.payload.as_object().cloned().unwrap_or_default();
    payload.insert(
        "properties".into(),
        serde_json::to_value(&properties).expect("serializes"),
    );
    if pgs.len() >= 2 {
        let r = verify_pg_one_recursion(pgs)?;
        passed &= r.passed;
        payload.insert(
            "values_at_one".into(),
            serde_json::to_value(&r).expect("serializes"),
        );
    }
    out.payload = Value::Object(payload);
    out.status = Status::from_passed(passed);
    Ok(out)
}

fn parse_perm(text: &str) -> Result<Permutation> {
    let values = if text.trim().is_empty() {
        Vec::new()
    } else {
        text.split(',')
            .map(|s| {
                s.trim()
                    .parse::<i64>()
                    .map_err(|_| Error::InvalidInput(format!("{s:?} is not an integer")))
            })
            .collect::<Result<Vec<_>>>()?
    };
    Permutation::new(&values)
}

fn cycles(text: &str) -> Result<Outcome> {
    let pi = parse_perm(text)?;
    let dec = alternating_cycle_decomposition(&pi);
    let glued = glue_polygon(&pi);
    let walks = dec.cycle_strings();
    let mut csv = CsvTable::new(vec!["k", "genus", "vertex_orbits", "cycle"]);
    for w in &walks {
        csv.push(vec![
            dec.k().to_string(),
            glued.genus.to_string(),
            glued.vertex_orbits.to_string(),
            w.clone(),
        ]);
    }
    let payload = json!({
        "permutation": pi.values(),
        "n": pi.n(),
        "k": dec.k(),
        "cycles": walks,
        "genus": glued.genus,
        "vertex_orbits": glued.vertex_orbits,
        "disjoint_cycles": pi.disjoint_cycle_count(),
    });
    Ok(Outcome::new(true, payload, csv))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn perm_literals() {
        assert_eq!(parse_perm("2,3,1,4").unwrap().values(), &[2, 3, 1, 4]);
        assert_eq!(parse_perm(" 1 ").unwrap().n(), 1);
        assert_eq!(parse_perm("").unwrap().n(), 0);
        assert!(parse_perm("2,2,3").is_err());
        assert!(parse_perm("1,x").is_err());
        assert!(parse_perm("0").is_err());
    }

    #[test]
    fn cycles_of_the_running_example() {
        let out = cycles("2,3,1,4").unwrap();
        assert_eq!(out.payload["k"], 3);
        assert_eq!(out.payload["genus"], 1);
        assert_eq!(out.payload["cycles"][0], "0-1-3-4-1-2-0");
    }
}
