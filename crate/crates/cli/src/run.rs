//! Task execution.

use std::time::Instant;

use logtk_core::localalg::is_regular_local;
use logtk_core::logdiff::{base_change_check, check_conormal_sequence, check_first_sequence};
use logtk_core::regcheck::{
    fundamental_verdict, is_log_complete_intersection, is_log_regular, is_log_regular_ideal, is_log_smooth_sufficient,
    kato_criterion, log_smoothness_over_field, regularity_smoothness_crosscheck, smoothness_equivalence, LogCiRoute,
};
use logtk_core::{CheckOptions, Precondition, Result, Verdict};
use rayon::prelude::*;

use crate::manifest::{Manifest, Procedure, Task};
use crate::report::Report;

/// Procedure name recorded when an engine error stops a task early.
fn engine_name(t: &Task) -> &'static str {
    match t.procedure {
        Procedure::Validate => "validate",
        Procedure::RegularLocal => "is_regular_local",
        Procedure::Integral => "is_integral",
        Procedure::Saturated => "is_saturated",
        Procedure::LogRegular => "log_regular",
        Procedure::LogRegularIdeal => "log_regular_ideal",
        Procedure::Kato => "kato",
        Procedure::LogCi if t.presentation.is_some() => "log_ci_presentation",
        Procedure::LogCi => "log_ci_direct",
        Procedure::LogSmooth => match (&t.map, &t.prelog) {
            (Some(_), Some(_)) => "smoothness_equivalence",
            (Some(_), None) => "log_smooth_sufficient",
            _ => "log_smooth_over_field",
        },
        Procedure::Crosscheck => "crosscheck",
        Procedure::Fundamental => "fundamental",
        Procedure::FirstSequence => "first_sequence",
        Procedure::ConormalSequence => "conormal_sequence",
        Procedure::BaseChange => "base_change",
    }
}

fn verdict(m: &Manifest, t: &Task, opts: &CheckOptions) -> Result<Verdict> {
    let prelog = || &m.prelogs[t.prelog.as_ref().expect("resolved at parse time")].value;
    let prelog_map = |n: &String| m.maps[n].prelog().expect("resolved at parse time");
    Ok(match t.procedure {
        Procedure::Validate => prelog().validate(),
        Procedure::RegularLocal => match &t.ring {
            Some(r) => is_regular_local(&m.rings[r]),
            None => is_regular_local(&prelog().ring),
        },
        Procedure::Integral => m.monoids[t.monoid.as_ref().expect("resolved")].is_integral(),
        Procedure::Saturated => m.monoids[t.monoid.as_ref().expect("resolved")].is_saturated(opts.budget)?,
        Procedure::LogRegular => is_log_regular(prelog(), opts),
        Procedure::LogRegularIdeal => is_log_regular_ideal(prelog(), &t.ideal, opts),
        Procedure::Kato => kato_criterion(prelog(), opts),
        Procedure::LogCi => {
            let route = match &t.presentation {
                Some(pr) => LogCiRoute::Presentation {
                    q: m.prelogs[&pr.prelog].value.clone(),
                    j: pr.ideal.clone(),
                },
                None => LogCiRoute::Direct,
            };
            is_log_complete_intersection(prelog(), &route, opts)
        }
        Procedure::LogSmooth => match (&t.map, &t.prelog) {
            (Some(h), Some(_)) => smoothness_equivalence(m.maps[h].monoid().expect("resolved"), prelog())?,
            (Some(h), None) => is_log_smooth_sufficient(m.maps[h].monoid().expect("resolved"), m.field)?,
            _ => log_smoothness_over_field(prelog())?,
        },
        Procedure::Crosscheck => regularity_smoothness_crosscheck(prelog(), opts),
        Procedure::Fundamental => fundamental_verdict(prelog_map(t.map.as_ref().expect("resolved")))?,
        Procedure::FirstSequence => check_first_sequence(prelog_map(&t.maps[0]), prelog_map(&t.maps[1]))?,
        Procedure::ConormalSequence => check_conormal_sequence(prelog_map(&t.maps[0]), prelog_map(&t.maps[1]))?,
        Procedure::BaseChange => base_change_check(prelog_map(&t.maps[0]), prelog_map(&t.maps[1]), prelog_map(&t.maps[2])),
    })
}

pub fn run_task(m: &Manifest, name: &str, t: &Task, opts: &CheckOptions) -> Report {
    let start = Instant::now();
    let v = verdict(m, t, opts)
        .unwrap_or_else(|e| Verdict::refused(engine_name(t), vec![Precondition::failed("input", e.to_string())]));
    Report::new(name, t.procedure, v, start.elapsed().as_millis() as u64)
}

/// Runs the selected tasks concurrently; reports come back in the given
/// order.
pub fn run_tasks(m: &Manifest, tasks: &[(String, Task)], opts: &CheckOptions) -> Vec<Report> {
    tasks.par_iter().map(|(n, t)| run_task(m, n, t, opts)).collect()
}

/// The manifest's tasks for `procedure`; without any, one task per object
/// the procedure applies to on its own.
pub fn tasks_for(m: &Manifest, procedure: Procedure) -> Vec<(String, Task)> {
    let declared: Vec<(String, Task)> = m
        .tasks
        .iter()
        .filter(|(_, t)| t.procedure == procedure)
        .map(|(n, t)| (n.clone(), t.clone()))
        .collect();
    if !declared.is_empty() {
        return declared;
    }
    let mut out = Vec::new();
    match procedure {
        Procedure::Validate
        | Procedure::LogRegular
        | Procedure::Kato
        | Procedure::LogCi
        | Procedure::LogSmooth
        | Procedure::Crosscheck
        | Procedure::RegularLocal => {
            for n in m.prelogs.keys() {
                let mut t = Task::new(procedure);
                t.prelog = Some(n.clone());
                out.push((n.clone(), t));
            }
        }
        Procedure::Integral | Procedure::Saturated => {
            for n in m.monoids.keys() {
                let mut t = Task::new(procedure);
                t.monoid = Some(n.clone());
                out.push((n.clone(), t));
            }
        }
        Procedure::Fundamental => {
            for (n, d) in &m.maps {
                if d.prelog().is_some() {
                    let mut t = Task::new(procedure);
                    t.map = Some(n.clone());
                    out.push((n.clone(), t));
                }
            }
        }
        Procedure::LogRegularIdeal | Procedure::FirstSequence | Procedure::ConormalSequence | Procedure::BaseChange => {}
    }
    out
}
