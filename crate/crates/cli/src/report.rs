//! Reports: one per task, as JSON or as indented text.

use std::fmt::Write as _;

use logtk_core::{Certificate, Fact, Precondition, Status, Verdict};
use serde::{Deserialize, Serialize};

use crate::manifest::Procedure;

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Stats {
    /// The certificate and all its parts.
    pub certificates: usize,
    pub facts: usize,
    /// Standard basis elements recorded across all facts.
    pub basis_elements: usize,
    /// `label: rows x cols, rank r` per Smith form.
    pub snf: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub replay_ok: Option<bool>,
}

impl Stats {
    pub fn of(c: &Certificate) -> Stats {
        let mut s = Stats::default();
        s.add(c);
        s
    }

    fn add(&mut self, c: &Certificate) {
        self.certificates += 1;
        self.facts += c.facts.len();
        for f in &c.facts {
            match f {
                Fact::Dimension { basis, .. } => self.basis_elements += basis.len(),
                Fact::Membership { ring_basis, basis, .. } => self.basis_elements += ring_basis.len() + basis.len(),
                Fact::Homology {
                    ring_basis,
                    boundary_basis,
                    ..
                } => self.basis_elements += ring_basis.len() + boundary_basis.len(),
                Fact::Snf { label, matrix, snf } => self.snf.push(format!(
                    "{label}: {}x{}, rank {}",
                    matrix.rows(),
                    matrix.cols(),
                    snf.rank()
                )),
                _ => {}
            }
        }
        for p in &c.parts {
            self.add(p);
        }
    }
}

/// Field order is the JSON key order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub task: String,
    pub procedure: String,
    pub status: Status,
    pub certificate: Certificate,
    pub preconditions: Vec<Precondition>,
    pub stats: Stats,
    pub ms: u64,
}

impl Report {
    pub fn new(task: &str, procedure: Procedure, v: Verdict, ms: u64) -> Report {
        Report {
            task: task.to_string(),
            procedure: procedure.name().to_string(),
            status: v.status,
            stats: Stats::of(&v.certificate),
            certificate: v.certificate,
            preconditions: v.preconditions,
            ms,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("reports serialize")
    }

    pub fn render(&self) -> String {
        let mut out = format!("{} [{}]: {}\n", self.task, self.procedure, self.status);
        render_certificate(&self.certificate, 1, &mut out);
        if let Some(ok) = self.stats.replay_ok {
            let _ = writeln!(out, "  replay: {}", if ok { "ok" } else { "MISMATCH" });
        }
        out
    }
}

fn render_certificate(c: &Certificate, depth: usize, out: &mut String) {
    let pad = "  ".repeat(depth);
    if !c.reason.is_empty() {
        let _ = writeln!(out, "{pad}reason: {}", c.reason);
    }
    for p in c.preconditions.iter().filter(|p| !p.ok) {
        let _ = writeln!(out, "{pad}precondition `{}` failed: {}", p.name, p.detail);
    }
    for f in &c.facts {
        let _ = writeln!(out, "{pad}{}", describe_fact(f, &pad));
    }
    for (k, v) in &c.data {
        let _ = writeln!(out, "{pad}{k} = {v}");
    }
    for p in &c.parts {
        let _ = writeln!(out, "{pad}{}: {}", p.procedure, p.status);
        render_certificate(p, depth + 1, out);
    }
}

fn column(v: &[String]) -> String {
    format!("({})", v.join(", "))
}

fn describe_fact(f: &Fact, pad: &str) -> String {
    match f {
        Fact::Dimension { label, basis, value, .. } => {
            format!("{label}: dimension {value} from {} standard basis elements", basis.len())
        }
        Fact::EmbeddingDimension { label, value, .. } => format!("{label}: embedding dimension {value}"),
        Fact::Snf { label, snf, .. } => {
            let d: Vec<String> = snf.diagonal().iter().map(|x| x.to_string()).collect();
            format!("{label}: Smith form diag({})", d.join(", "))
        }
        Fact::Membership { label, contained, .. } => {
            let k = contained.iter().filter(|b| **b).count();
            format!("{label}: {k} of {} elements in the submodule", contained.len())
        }
        Fact::Homology {
            label,
            cycles,
            bounded,
            dim,
            ..
        } => {
            let mut s = format!("{label}: homology of dimension {dim}");
            let open: Vec<String> = cycles
                .iter()
                .zip(bounded)
                .filter(|(_, b)| !**b)
                .map(|(z, _)| column(z))
                .collect();
            if !open.is_empty() {
                let _ = write!(s, "\n{pad}  cycles outside the boundaries: {}", open.join(", "));
            }
            s
        }
        Fact::Number { label, value } => format!("{label} = {value}"),
        Fact::Flag { label, value, detail } => {
            if detail.is_empty() {
                format!("{label}: {value}")
            } else {
                format!("{label}: {value} ({detail})")
            }
        }
    }
}

/// 0 if everything holds, 1 if something fails, 2 if anything is
/// indeterminate.
pub fn exit_code<'a>(statuses: impl IntoIterator<Item = &'a Status>) -> i32 {
    statuses.into_iter().map(Status::exit_code).max().unwrap_or(0)
}
