//! Runs the requested check families for one configuration.

use std::time::Instant;

use rayon::prelude::*;
use sha2::{Digest, Sha256};

use crate::algebra::qgroup::{check_centralizer_local, check_factorization, check_tower_relations, towers_for};
use crate::algebra::reps::{blob_negative_control, check_theta_transcription};
use crate::algebra::{check_blob, AlgebraParams, LocalRep, Model, QGroupName};
use crate::baxterize::{
    check_conditions, check_limits, check_re, check_re_identity, check_ybe, re_negative_control, ybe_negative_control,
    LaxFactory,
};
use crate::check::{Expect, Finding, NEGATIVE_THRESHOLD, TOL_CHAINED};
use crate::config::{RunConfig, Suite};
use crate::report::{CheckReport, SpectrumRow};
use crate::sampling::{sample_lambdas, sample_pairs};
use crate::tensor::{c, CMatrix, C64};
use crate::transfer::{
    check_duality, check_exchange, check_k_intertwining, check_reflection_intertwiner, check_symmetry, check_transfer,
    compare_spectra, degeneracies, gram_rank_diagnostic, spectrum, DoubleRow, Outcome,
};

/// Relative tolerance for grouping eigenvalues into degenerate clusters.
pub const DEGENERACY_TOL: f64 = 1e-8;

/// One result of a task before it becomes a report.
enum Item {
    Check(Finding),
    Skipped { id: String, reason: String },
    Diagnostic { id: String, notes: String },
}

impl From<Finding> for Item {
    fn from(f: Finding) -> Self {
        Item::Check(f)
    }
}

type TaskResult = Result<Vec<Item>, String>;

/// Everything a task needs, built once per run.
struct Context {
    params: AlgebraParams,
    n: usize,
    lambdas: Vec<C64>,
    pairs: Vec<(C64, C64)>,
}

impl Context {
    fn tag(&self) -> String {
        format!("{}.{}.N{}", self.params.model, self.params.boundary, self.n)
    }

    fn factory(&self) -> Result<LaxFactory, String> {
        Ok(LaxFactory::new(&LocalRep::new(&self.params, 2).map_err(err)?))
    }

    fn double_row(&self) -> Result<DoubleRow, String> {
        DoubleRow::new(&self.params, self.n).map_err(err)
    }
}

fn err(e: impl std::fmt::Display) -> String {
    e.to_string()
}

fn findings(v: Vec<Finding>) -> Vec<Item> {
    v.into_iter().map(Item::from).collect()
}

struct Task {
    suite: Suite,
    name: &'static str,
    run: fn(&Context) -> TaskResult,
}

fn tasks_for(suite: Suite) -> Vec<Task> {
    let t = |name, run| Task { suite, name, run };
    match suite {
        Suite::Algebra => vec![t("blob", algebra_blob), t("qgroup", algebra_qgroup)],
        Suite::Ybe => vec![t("ybe", ybe)],
        Suite::Re => vec![t("re", re)],
        Suite::Conditions => vec![t("conditions", conditions)],
        Suite::Transfer => vec![t("transfer", transfer), t("intertwiner", intertwiner)],
        Suite::Symmetry => vec![t("symmetry", symmetry)],
        Suite::Exchange => vec![t("exchange", exchange)],
        Suite::Duality => vec![t("duality", duality)],
        Suite::Spectrum => vec![t("spectrum", spectrum_suite)],
    }
}

fn algebra_blob(cx: &Context) -> TaskResult {
    let rep = LocalRep::new(&cx.params, cx.n).map_err(err)?;
    let mut out = findings(check_blob(&rep));
    out.push(blob_negative_control(&rep).into());
    Ok(out)
}

fn qgroup_names(model: Model) -> &'static [QGroupName] {
    match model {
        Model::Xxz => &[QGroupName::Rho],
        Model::Twin => &[QGroupName::Sigma1, QGroupName::Sigma2, QGroupName::Rho1, QGroupName::Rho2],
    }
}

fn algebra_qgroup(cx: &Context) -> TaskResult {
    let p = &cx.params;
    let rep = LocalRep::new(p, cx.n).map_err(err)?;
    let towers = towers_for(qgroup_names(p.model), p, cx.n).map_err(err)?;
    let mut out = Vec::new();
    for t in &towers {
        out.extend(findings(check_tower_relations(t).map_err(err)?));
    }
    out.extend(findings(check_centralizer_local(&rep, &towers)));
    if p.model == Model::Twin {
        out.extend(findings(check_factorization(p)));
        out.push(check_theta_transcription(p).into());
    }
    Ok(out)
}

fn ybe(cx: &Context) -> TaskResult {
    let f = cx.factory()?;
    Ok(vec![check_ybe(&f, &cx.pairs).into(), ybe_negative_control(&f, &cx.pairs).into()])
}

fn re(cx: &Context) -> TaskResult {
    let f = cx.factory()?;
    Ok(vec![
        check_re(&f, &cx.pairs).into(),
        check_re_identity(&f, &cx.pairs).into(),
        re_negative_control(&f, &cx.pairs).into(),
    ])
}

fn conditions(cx: &Context) -> TaskResult {
    let f = cx.factory()?;
    let mut out = findings(check_conditions(&f, &cx.lambdas));
    out.extend(findings(check_limits(&f)));
    Ok(out)
}

fn transfer(cx: &Context) -> TaskResult {
    let dr = cx.double_row()?;
    Ok(check_transfer(&dr, &cx.pairs, &cx.lambdas)
        .map_err(err)?
        .into_iter()
        .map(|o| match o {
            Outcome::Done(f) => Item::Check(f),
            Outcome::Skipped { id, reason } => Item::Skipped { id, reason },
        })
        .collect())
}

fn intertwiner(cx: &Context) -> TaskResult {
    Ok(findings(check_reflection_intertwiner(&cx.factory()?, &cx.pairs).map_err(err)?))
}

fn symmetry(cx: &Context) -> TaskResult {
    let dr = cx.double_row()?;
    let mut out = findings(check_symmetry(&dr, &cx.lambdas).map_err(err)?);
    out.extend(findings(check_k_intertwining(&dr.lax, &cx.lambdas).map_err(err)?));
    Ok(out)
}

fn exchange(cx: &Context) -> TaskResult {
    let v = check_exchange(&cx.params, cx.n, &cx.lambdas).map_err(err)?;
    if v.is_empty() {
        return Ok(vec![Item::Skipped {
            id: format!("exchange.{}.relations", cx.tag()),
            reason: format!("no exchange relations are stated for the {} boundary", cx.params.boundary),
        }]);
    }
    Ok(findings(v))
}

fn duality(cx: &Context) -> TaskResult {
    let dr = cx.double_row()?;
    let mut out = findings(check_duality(&dr, &cx.lambdas).map_err(err)?);
    if let Some(g) = gram_rank_diagnostic(&dr).map_err(err)? {
        out.push(Item::Diagnostic {
            id: format!("duality.{}.gram-rank", cx.tag()),
            notes: format!("diagnostic: rank blocks={} charges={} union={}", g.blocks, g.charges, g.union),
        });
    }
    Ok(out)
}

fn spectrum_suite(cx: &Context) -> TaskResult {
    let dr = cx.double_row()?;
    let h = dr.hamiltonian().map_err(err)?;
    let sp = spectrum(&h).map_err(err)?;
    let sum: C64 = sp.iter().sum();
    let trace = h.trace();
    let consistency = (sum - trace).norm() / trace.norm().max(1.0);
    let counts: Vec<String> = degeneracies(&sp, DEGENERACY_TOL).iter().map(|g| g.1.to_string()).collect();
    let tag = cx.tag();
    // A small boundary-local shift must visibly move the spectrum.
    let shifted = &h + &dr.rep.u_gens[0].scale(c(0.1, 0.0));
    let moved = compare_spectra(&sp, &spectrum(&shifted).map_err(err)?);
    Ok(vec![
        Finding::holds(format!("spectrum.{tag}.trace"), consistency, TOL_CHAINED)
            .with_notes(format!("degeneracies: {}", counts.join(" ")))
            .into(),
        Finding::violated(format!("spectrum.{tag}.negative.shifted-hamiltonian"), moved, NEGATIVE_THRESHOLD).into(),
    ])
}

/// First 16 hex digits of the SHA-256 of the canonical parameter string.
pub fn params_digest(cfg: &RunConfig, p: &AlgebraParams) -> String {
    let canonical = format!("{};N={};seed={};lambda_samples={}", p.canonical(), cfg.n, cfg.seed, cfg.lambda_samples);
    Sha256::digest(canonical.as_bytes())
        .iter()
        .take(8)
        .map(|b| format!("{b:02x}"))
        .collect()
}

fn to_report(item: Item, digest: &str, tolerance: f64, elapsed_ms: f64) -> CheckReport {
    let base = |check_id: String, residual: f64, tol: f64, passed: bool, notes: String| CheckReport {
        check_id,
        params_digest: digest.to_string(),
        residual,
        tolerance: tol,
        passed,
        elapsed_ms,
        notes,
    };
    match item {
        Item::Check(mut f) => {
            if f.expect == Expect::Holds {
                f.tolerance = f.tolerance.min(tolerance);
            }
            let passed = f.passed();
            base(f.id, f.residual, f.tolerance, passed, f.notes)
        }
        Item::Skipped { id, reason } => base(id, 0.0, tolerance, true, format!("skipped: {reason}")),
        Item::Diagnostic { id, notes } => base(id, 0.0, tolerance, true, notes),
    }
}

/// Runs every requested suite. Reports are sorted by id; a task that cannot
/// build its operators yields one failed report instead of aborting the run.
/// `elapsed_ms` is the wall time of the producing task when `timings` is set
/// and 0 otherwise, so that untimed output is reproducible byte for byte.
pub fn run_suite(cfg: &RunConfig, timings: bool) -> Vec<CheckReport> {
    if cfg.suites.is_empty() {
        return Vec::new();
    }
    let params = match cfg.params() {
        Ok(p) => p,
        Err(e) => {
            return vec![CheckReport {
                check_id: "config.parameters".into(),
                params_digest: String::new(),
                residual: f64::INFINITY,
                tolerance: cfg.tolerance,
                passed: false,
                elapsed_ms: 0.0,
                notes: format!("construction failed: {e}"),
            }]
        }
    };
    let cx = Context {
        params,
        n: cfg.n,
        lambdas: sample_lambdas(cfg.seed, cfg.lambda_samples, cfg.mu),
        pairs: sample_pairs(cfg.seed, cfg.lambda_samples, cfg.mu),
    };
    let digest = params_digest(cfg, &params);
    let tasks: Vec<Task> = cfg.suites.iter().flat_map(|&s| tasks_for(s)).collect();
    let mut reports: Vec<CheckReport> = tasks
        .par_iter()
        .flat_map_iter(|task| {
            let start = Instant::now();
            let result = (task.run)(&cx);
            let elapsed = if timings { start.elapsed().as_secs_f64() * 1e3 } else { 0.0 };
            match result {
                Ok(items) => items.into_iter().map(|it| to_report(it, &digest, cfg.tolerance, elapsed)).collect::<Vec<_>>(),
                Err(e) => vec![CheckReport {
                    check_id: format!("{}.{}.{}.construction", task.suite, cx.tag(), task.name),
                    params_digest: digest.clone(),
                    residual: f64::INFINITY,
                    tolerance: cfg.tolerance,
                    passed: false,
                    elapsed_ms: elapsed,
                    notes: format!("construction failed: {e}"),
                }],
            }
        })
        .collect();
    reports.sort_by(|a, b| a.check_id.cmp(&b.check_id));
    reports
}

/// Hamiltonian spectrum of the configured chain with cluster sizes.
pub fn spectrum_rows(cfg: &RunConfig) -> Result<Vec<SpectrumRow>, String> {
    let p = cfg.params().map_err(err)?;
    let h: CMatrix = DoubleRow::new(&p, cfg.n).map_err(err)?.hamiltonian().map_err(err)?;
    let sp = spectrum(&h).map_err(err)?;
    let groups = degeneracies(&sp, DEGENERACY_TOL);
    let scale = sp.iter().map(|z| z.norm()).fold(1.0, f64::max);
    let label = format!("{}.{}.N{}", p.model, p.boundary, cfg.n);
    Ok(sp
        .iter()
        .enumerate()
        .map(|(index, &value)| {
            let multiplicity = groups
                .iter()
                .find(|g| (g.0 - value).norm() <= DEGENERACY_TOL * scale)
                .map_or(1, |g| g.1);
            SpectrumRow { label: label.clone(), index, value, multiplicity }
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::parse_config;
    use std::collections::HashSet;

    fn cfg(model: &str, boundary: &str, n: usize, extra: &str) -> RunConfig {
        parse_config(&format!("model = \"{model}\"\nboundary = \"{boundary}\"\nN = {n}\nmu = 0.7\nQ = \"2,0\"\nlambda_samples = 3\n{extra}")).unwrap()
    }

    #[test]
    fn twin_i_full_run_passes() {
        let r = run_suite(&cfg("twin", "i", 2, ""), false);
        assert!(r.len() >= 40, "{}", r.len());
        for x in &r {
            assert!(x.passed, "{x:?}");
        }
        let ids: HashSet<&str> = r.iter().map(|x| x.check_id.as_str()).collect();
        assert_eq!(ids.len(), r.len(), "duplicate ids");
        assert!(r.windows(2).all(|w| w[0].check_id < w[1].check_id));
        for s in ["algebra", "ybe", "re", "conditions", "transfer", "symmetry", "exchange", "duality"] {
            assert!(r.iter().any(|x| x.suite() == s && x.is_negative_control()), "no control in {s}");
        }
    }

    #[test]
    fn every_pair_passes() {
        for (m, b, n) in [("xxz", "trivial", 3), ("xxz", "xxz-m", 2), ("twin", "trivial", 2), ("twin", "plus", 2), ("twin", "iii", 2), ("twin", "ii", 2)] {
            let r = run_suite(&cfg(m, b, n, "suites = [\"algebra\", \"ybe\", \"re\", \"conditions\", \"transfer\", \"symmetry\", \"exchange\", \"duality\", \"spectrum\"]"), false);
            for x in &r {
                assert!(x.passed, "{m} {b}: {x:?}");
            }
            let ids: HashSet<&str> = r.iter().map(|x| x.check_id.as_str()).collect();
            assert_eq!(ids.len(), r.len(), "duplicate ids for {m} {b}");
        }
    }

    #[test]
    fn empty_and_unattainable() {
        assert!(run_suite(&cfg("xxz", "xxz-m", 2, "suites = []"), false).is_empty());
        let r = run_suite(&cfg("xxz", "xxz-m", 2, "tolerance = 1e-20\nsuites = [\"ybe\", \"re\"]"), false);
        for x in r.iter().filter(|x| !x.is_negative_control()) {
            assert!(!x.passed, "{x:?}");
        }
    }

    #[test]
    fn xxz_m_exchange_is_skipped() {
        let r = run_suite(&cfg("xxz", "xxz-m", 2, "suites = [\"exchange\"]"), false);
        assert_eq!(r.len(), 1);
        assert!(r[0].passed && r[0].is_skipped());
    }

    #[test]
    fn digest_is_short_hex() {
        let c = cfg("twin", "i", 2, "");
        let d = params_digest(&c, &c.params().unwrap());
        assert_eq!(d.len(), 16);
        assert!(d.chars().all(|ch| ch.is_ascii_hexdigit()));
    }

    #[test]
    fn spectrum_rows_cover_the_space() {
        let rows = spectrum_rows(&cfg("twin", "i", 2, "")).unwrap();
        assert_eq!(rows.len(), 16);
        assert!(rows.iter().all(|r| r.multiplicity >= 1));
    }
}
