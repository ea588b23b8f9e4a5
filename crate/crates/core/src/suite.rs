//! Named end-to-end checks of the published examples, run by
//! `polyreal paper-suite`.

use std::sync::Arc;
use std::time::Instant;

use serde::Serialize;

use crate::chartable::{CharacterTable, TableCache};
use crate::h4::{self, QSqrt5};
use crate::perm::conjugacy_classes;
use crate::psl;
use crate::realization::ReportOptions;
use crate::wreath;

#[derive(Debug, Clone, Serialize)]
pub struct SuiteCheck {
    pub name: String,
    pub passed: bool,
    pub detail: String,
    pub seconds: f64,
}

fn run(name: &str, f: impl FnOnce() -> Result<(bool, String), String>) -> SuiteCheck {
    let start = Instant::now();
    let (passed, detail) = f().unwrap_or_else(|e| (false, format!("error: {e}")));
    SuiteCheck {
        name: name.to_string(),
        passed,
        detail,
        seconds: start.elapsed().as_secs_f64(),
    }
}

pub fn psl19_example(cache: Option<&TableCache>) -> SuiteCheck {
    run("psl19_example", || {
        let r = psl::example_pipeline(cache, ReportOptions::default()).map_err(|e| e.to_string())?;
        let ok = r.cone.group_order == 3420
            && r.string_c
            && r.schlafli == [9, 3]
            && r.stabilizer_order == 6
            && r.weil.degree == 9
            && r.weil.kind == "C"
            && r.weil.multiplicity == 2
            && r.weil.subcone_dim == 4
            && r.cone.checks.all_pass();
        Ok((
            ok,
            format!(
                "|G|={} type={:?} |H|={} chi(1)={} m={} dim={}",
                r.cone.group_order, r.schlafli, r.stabilizer_order, r.weil.degree, r.weil.multiplicity, r.weil.subcone_dim
            ),
        ))
    })
}

pub fn weil_characters(cache: Option<&TableCache>) -> SuiteCheck {
    run("weil_characters", || {
        let mut detail = Vec::new();
        let mut ok = true;
        for p in [7u64, 11, 19, 23] {
            let g = psl::psl_group(p).map_err(|e| e.to_string())?;
            let cd = Arc::new(conjugacy_classes(&g));
            let t = CharacterTable::compute_cached(&cd, cache).map_err(|e| e.to_string())?;
            let w = psl::weil_constituent_check(&t, p).map_err(|e| e.to_string())?;
            ok &= w.unique() && w.degree == (p as i64 - 1) / 2;
            detail.push(format!("p={p}: {} pair(s) of degree {}", w.pairs.len(), w.degree));
        }
        Ok((ok, detail.join("; ")))
    })
}

pub fn generation_lemma() -> SuiteCheck {
    run("generation_lemma", || {
        let mut ok = true;
        let mut n = 0;
        for p in [19u64, 23] {
            let g = psl::psl_group(p).map_err(|e| e.to_string())?;
            let (a, b) = psl::find_ab(p);
            for y in 2..p - 1 {
                let params = psl::PslParams::new(p, y, a, b).map_err(|e| e.to_string())?;
                let s = psl::lemma_generators(&g, p, &params.matrices()).map_err(|e| e.to_string())?;
                let r = psl::generation_check(&g, p, &s);
                if r.lemma_hypothesis {
                    n += 1;
                    ok &= r.generates;
                }
            }
        }
        Ok((ok, format!("{n} triples with an element of order >= 6 all generate")))
    })
}

pub fn large_wythoff(cache: Option<&TableCache>) -> SuiteCheck {
    run("large_wythoff_p43", || {
        let p = 43;
        let y = psl::element_of_order(p, 7).ok_or("no element of order 7")?;
        let r = psl::counterexample_pipeline(p, y, cache, ReportOptions { products: false })
            .map_err(|e| e.to_string())?;
        let ok = r.string_c
            && r.generation.generates
            && r.stabilizer_order == 14
            && r.weil.kind == "C"
            && r.bound_satisfied == Some(true)
            && r.cone.checks.all_pass();
        Ok((
            ok,
            format!("y={y} m={} bound={}", r.weil.multiplicity, r.bound.unwrap_or_default()),
        ))
    })
}

pub fn h4_roots() -> SuiteCheck {
    run("h4_roots", || {
        let roots = h4::root_system_h4();
        let prod = roots[0] * roots[1];
        let norms = roots.iter().all(|a| a.norm() == QSqrt5::one());
        let u = h4::icosian_group().map_err(|e| e.to_string())?;
        let m = h4::h4_group().map_err(|e| e.to_string())?;
        let ok = norms
            && prod * prod == roots[3]
            && u.len() == 120
            && m.group.order() == 14400
            && m.stabilizer(&[0, 1, 2]).order() == 120;
        Ok((ok, format!("|U|={} |G|={}", u.len(), m.group.order())))
    })
}

pub fn sixhundred_cell(cache: Option<&TableCache>) -> SuiteCheck {
    run("600_cell", || {
        let (r, _) = wreath::sixhundred_cell_report(cache, ReportOptions::default())
            .map_err(|e| e.to_string())?;
        let cross = h4::cross_check_600cell(cache).map_err(|e| e.to_string())?;
        let ok = r.layer_count == 9
            && r.pure_dimensions == [1, 4, 4, 9, 9, 16, 16, 25, 36]
            && r.cosines_match
            && r.gelfand == "gelfand"
            && r.cone.checks.all_pass()
            && cross.passed();
        Ok((ok, format!("layers={} dims={:?}", r.layer_count, r.pure_dimensions)))
    })
}

pub fn hundredtwenty_cell(cache: Option<&TableCache>) -> SuiteCheck {
    run("120_cell", || {
        let r = h4::validate_120cell(cache, ReportOptions::default()).map_err(|e| e.to_string())?;
        Ok((r.report.checks.all_pass(), r.cone))
    })
}

pub fn paper_suite(cache: Option<&TableCache>) -> Vec<SuiteCheck> {
    vec![
        psl19_example(cache),
        generation_lemma(),
        weil_characters(cache),
        large_wythoff(cache),
        h4_roots(),
        sixhundred_cell(cache),
        hundredtwenty_cell(cache),
    ]
}

pub fn suite_table(checks: &[SuiteCheck], timings: bool) -> String {
    let mut out = String::new();
    for c in checks {
        let verdict = if c.passed { "PASS" } else { "FAIL" };
        if timings {
            out.push_str(&format!("{:<20} {verdict:<4} {:>8.2}s  {}\n", c.name, c.seconds, c.detail));
        } else {
            out.push_str(&format!("{:<20} {verdict:<4} {}\n", c.name, c.detail));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quick_checks_pass() {
        assert!(h4_roots().passed);
        let c = psl19_example(None);
        assert!(c.passed, "{}", c.detail);
    }

    #[test]
    fn failures_are_reported() {
        let c = run("x", || Err("boom".into()));
        assert!(!c.passed);
        assert_eq!(c.detail, "error: boom");
        assert!(suite_table(&[c], false).contains("FAIL"));
    }
}
