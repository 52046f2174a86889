//! `photonq selftest`: run the full acceptance battery and print the
//! pass/fail table.

use photonq::selftest::run_all;

use crate::config::RunConfig;
use crate::output::{emit, json_provenance, text_header};
use crate::{CliError, OutputFormat};

pub fn run(cfg: &RunConfig) -> Result<(), CliError> {
    let canonical = cfg.canonical("selftest", "");
    let reports = run_all();
    let failed: Vec<&str> = reports
        .iter()
        .filter(|r| !r.passed)
        .map(|r| r.name)
        .collect();

    match cfg.format {
        OutputFormat::Json => {
            let rows: Vec<serde_json::Value> = reports
                .iter()
                .map(|r| {
                    serde_json::json!({
                        "id": r.id, "name": r.name, "passed": r.passed, "details": r.details,
                    })
                })
                .collect();
            let doc = serde_json::json!({
                "provenance": json_provenance(&canonical),
                "criteria": rows,
                "all_passed": failed.is_empty(),
            });
            emit(
                cfg.out.as_deref(),
                serde_json::to_string_pretty(&doc).unwrap().as_bytes(),
            )?;
        }
        _ => {
            let mut text = text_header(&canonical);
            for r in &reports {
                let mark = if r.passed { "PASS" } else { "FAIL" };
                text.push_str(&format!(
                    "[{mark}] criterion {:>2}: {} -- {}\n",
                    r.id, r.name, r.details
                ));
            }
            text.push_str(&format!(
                "{} of {} criteria passed\n",
                reports.len() - failed.len(),
                reports.len()
            ));
            emit(cfg.out.as_deref(), text.as_bytes())?;
        }
    }

    if !failed.is_empty() {
        return Err(CliError::Physics(format!(
            "acceptance criteria failed: {}",
            failed.join("; ")
        )));
    }
    Ok(())
}
