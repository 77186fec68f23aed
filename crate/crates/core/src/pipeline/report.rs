use std::fmt::Write as _;
use std::path::Path;

use serde::Serialize;

use super::verify::CaseReport;
use crate::error::Result;

#[derive(Serialize)]
struct Bundle<'a> {
    passed: bool,
    cases: &'a [CaseReport],
}

pub fn report_json(reports: &[CaseReport]) -> String {
    let b = Bundle { passed: reports.iter().all(|r| r.passed), cases: reports };
    let mut s = serde_json::to_string_pretty(&b).expect("reports serialize");
    s.push('\n');
    s
}

pub fn report_markdown(reports: &[CaseReport]) -> String {
    let mut s = String::new();
    let verdict = |b: bool| if b { "pass" } else { "FAIL" };
    let _ = writeln!(s, "# Verification report\n");
    let _ = writeln!(s, "| case | verdict | failed stages |");
    let _ = writeln!(s, "|---|---|---|");
    for r in reports {
        let failed: Vec<&str> = r.stages.iter().filter(|x| !x.passed).map(|x| x.stage.as_str()).collect();
        let _ = writeln!(s, "| {} | {} | {} |", r.name, verdict(r.passed), failed.join(", "));
    }
    for r in reports {
        let _ = writeln!(s, "\n## {} ({})\n", r.name, r.group);
        if let Some(d) = &r.discriminant {
            let rp: Vec<String> = d.ramified_primes.iter().map(|(p, e)| format!("{p}^{e}")).collect();
            let _ = writeln!(s, "Discriminant {} (ramified: {}).\n", d.computed, rp.join(" "));
        }
        for st in &r.stages {
            let _ = write!(s, "- {}: {}", st.stage, verdict(st.passed));
            if !st.detail.is_empty() {
                let _ = write!(s, " ({})", st.detail);
            }
            s.push('\n');
        }
        for f in &r.factorizations {
            let _ = writeln!(s, "- mod {}: {}", f.p, f.computed);
        }
        for g in &r.resolvents {
            if let Some(x) = &g.regenerated {
                let _ = writeln!(s, "- {} regenerated (index {}): {}", g.label, g.index, x.polynomial);
            }
        }
    }
    s
}

/// Writes `report.json` and `report.md` into `dir`.
pub fn emit_report(reports: &[CaseReport], dir: &Path) -> Result<()> {
    std::fs::create_dir_all(dir)?;
    std::fs::write(dir.join("report.json"), report_json(reports))?;
    std::fs::write(dir.join("report.md"), report_markdown(reports))?;
    Ok(())
}
