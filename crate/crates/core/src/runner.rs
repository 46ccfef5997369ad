//! Suite selection and parallel execution of verifications.

use std::sync::Arc;

use rayon::prelude::*;

use crate::chern::ChernContext;
use crate::error::{usage, Error, Result};
use crate::field::is_prime;
use crate::group;
use crate::identities;
use crate::report::{Mode, VerificationReport};

/// Suites in report order. `all` runs every one that applies.
pub const SUITES: &[&str] = &[
    "ty-relations",
    "newrel",
    "intro-presentation",
    "kappa-n",
    "kr-dr",
    "kr-pvy",
    "kappa-integral",
    "mt-properties",
    "independence",
    "group-oracle",
    "characters",
];

/// Largest `p^n` the full suites accept.
pub const MAX_PN: u64 = 25;

/// Random linear forms per newrel run.
pub const NEWREL_SAMPLES: usize = 25;

#[derive(Clone, Debug)]
pub struct RunConfig {
    pub p: u32,
    pub n: usize,
    pub suite: String,
    pub seed: u64,
    pub mode: Mode,
    /// Worker threads; `None` uses rayon's default.
    pub jobs: Option<usize>,
}

impl RunConfig {
    pub fn new(p: u32, n: usize, suite: &str) -> RunConfig {
        RunConfig {
            p,
            n,
            suite: suite.to_string(),
            seed: 0,
            mode: Mode::Faithful,
            jobs: None,
        }
    }

    pub fn validate(&self) -> Result<()> {
        check_params(self.p, self.n)?;
        if self.suite != "all" && !SUITES.contains(&self.suite.as_str()) {
            return usage(format!(
                "unknown suite '{}'; expected one of: all, {}",
                self.suite,
                SUITES.join(", ")
            ));
        }
        if self.jobs == Some(0) {
            return usage("worker count must be at least 1");
        }
        Ok(())
    }
}

/// `p` an odd prime, `n >= 1`, and `p^n` inside the supported envelope.
pub fn check_params(p: u32, n: usize) -> Result<()> {
    if p == 2 || !is_prime(p) {
        return usage(format!("p = {p} is not an odd prime"));
    }
    if n == 0 {
        return usage("n must be at least 1");
    }
    let pn = (p as u64).checked_pow(n as u32).unwrap_or(u64::MAX);
    if pn > MAX_PN {
        return usage(format!(
            "(p, n) = ({p}, {n}) is outside the supported envelope p^n <= {MAX_PN}"
        ));
    }
    Ok(())
}

/// `(suite, reason)` for suites an `all` run left out.
pub type Skipped = Vec<(String, String)>;

type Job = Box<dyn Fn() -> Result<VerificationReport> + Send + Sync>;

/// Whether `suite` can run at `(p, n)`; the reason when it cannot.
pub fn applicable(suite: &str, p: u32, n: usize) -> std::result::Result<(), String> {
    match suite {
        "intro-presentation" if n != 1 => Err("needs n = 1".into()),
        "group-oracle" => {
            let order = (p as u64).pow(2 * n as u32 + 1);
            if order > group::MAX_ORDER {
                Err(format!("group order {order} exceeds {}", group::MAX_ORDER))
            } else {
                Ok(())
            }
        }
        "characters" => {
            applicable("group-oracle", p, n)?;
            let cost = group::character_cost(p, n);
            if cost > group::CHARACTER_BUDGET {
                Err(format!("character check cost {cost} exceeds {}", group::CHARACTER_BUDGET))
            } else {
                Ok(())
            }
        }
        _ => Ok(()),
    }
}

fn jobs_for(suite: &str, ctx: &Arc<ChernContext>, seed: u64, mode: Mode) -> Vec<Job> {
    let (p, n) = (ctx.p(), ctx.n());
    let mut jobs: Vec<Job> = Vec::new();
    macro_rules! job {
        ($body:expr) => {{
            let ctx = ctx.clone();
            jobs.push(Box::new(move || $body(&ctx)));
        }};
    }
    match suite {
        "ty-relations" => job!(|c| identities::ty_relations(c, mode)),
        "newrel" => job!(|c| identities::newrel(c, mode, seed, NEWREL_SAMPLES)),
        "intro-presentation" => job!(|c| identities::intro_presentation(c, mode)),
        "kappa-n" => {
            let low = 1usize << n;
            let top = if n == 1 { low + 1 } else { low };
            for s in low..=top {
                job!(move |c| identities::kappa_n(c, mode, s));
            }
        }
        "kr-dr" => {
            for r in 0..n {
                for s in n - r..=n {
                    job!(move |c| identities::kr_dr(c, mode, seed, r, s));
                }
            }
        }
        "kr-pvy" => {
            for r in 0..n {
                for s in 0..=r {
                    job!(move |c| identities::kr_pvy(c, mode, seed, r, s));
                }
            }
        }
        "kappa-integral" => {
            for r in 0..n {
                for s in 0..=n {
                    job!(move |c| identities::kappa_integral(c, mode, r, s));
                }
            }
            for r in 0..n {
                job!(move |c| identities::kappa_integral_membership(c, mode, r));
            }
            job!(|c| identities::kappa0_membership(c, mode));
        }
        "mt-properties" => job!(|c| identities::mt_properties(c, mode)),
        "independence" => {
            let bound = 2 * (p as u64).pow(n as u32);
            job!(move |c| identities::independence(c, mode, bound));
        }
        "group-oracle" => {
            jobs.push(Box::new(move || group::commutator_form_check(p, n, mode, seed)));
            jobs.push(Box::new(move || group::maximal_abelians_check(p, n, mode)));
        }
        "characters" => jobs.push(Box::new(move || group::verify_induced_characters(p, n, mode))),
        _ => unreachable!("suite names are validated"),
    }
    jobs
}

/// Runs the selected suites and returns the reports in catalogue order.
/// Under `all`, suites that do not apply at `(p, n)` are left out and
/// listed in the second return value.
pub fn run(config: &RunConfig) -> Result<(Vec<VerificationReport>, Skipped)> {
    config.validate()?;
    let (p, n) = (config.p, config.n);
    let mut skipped = Vec::new();
    let selected: Vec<&str> = if config.suite == "all" {
        SUITES
            .iter()
            .copied()
            .filter(|s| match applicable(s, p, n) {
                Ok(()) => true,
                Err(why) => {
                    skipped.push((s.to_string(), why));
                    false
                }
            })
            .collect()
    } else {
        let s = config.suite.as_str();
        if let Err(why) = applicable(s, p, n) {
            return usage(format!("suite {s} cannot run at (p, n) = ({p}, {n}): {why}"));
        }
        vec![s]
    };
    let ctx = ChernContext::new(p, n)?;
    let jobs: Vec<Job> = selected
        .iter()
        .flat_map(|s| jobs_for(s, &ctx, config.seed, config.mode))
        .collect();
    let execute = || jobs.par_iter().map(|job| job()).collect::<Result<Vec<_>>>();
    let reports = match config.jobs {
        Some(k) => rayon::ThreadPoolBuilder::new()
            .num_threads(k)
            .build()
            .map_err(|e| Error::Usage(format!("cannot start {k} workers: {e}")))?
            .install(execute)?,
        None => execute()?,
    };
    Ok((reports, skipped))
}
