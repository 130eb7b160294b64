//! Decision outcomes and replayable certificates.
//!
//! A certificate lists facts, each of which can be re-verified with normal
//! form reductions, SNF checks and small linear algebra. Completeness of
//! recorded generator lists (syzygies, kernel generators) is taken on trust;
//! everything the status depends on is re-derived from the facts.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::abgroups::Snf;
use crate::arith::Field;
use crate::intmat::IntMat;
use crate::localalg::RingSpec;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Holds,
    Fails,
    Indeterminate,
}

impl Status {
    pub fn from_bool(b: bool) -> Status {
        if b {
            Status::Holds
        } else {
            Status::Fails
        }
    }

    /// Process exit code: 0 holds, 1 fails, 2 indeterminate.
    pub fn exit_code(&self) -> i32 {
        match self {
            Status::Holds => 0,
            Status::Fails => 1,
            Status::Indeterminate => 2,
        }
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Holds => "holds",
            Status::Fails => "fails",
            Status::Indeterminate => "indeterminate",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Precondition {
    pub name: String,
    pub ok: bool,
    #[serde(default, skip_serializing_if = "String::is_empty")]
    pub detail: String,
}

impl Precondition {
    pub fn ok(name: &str) -> Self {
        Precondition {
            name: name.into(),
            ok: true,
            detail: String::new(),
        }
    }

    pub fn failed(name: &str, detail: impl Into<String>) -> Self {
        Precondition {
            name: name.into(),
            ok: false,
            detail: detail.into(),
        }
    }
}

/// Polynomial data is written with the variable names of `ring`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Fact {
    /// `basis` is a standard basis of the ring's ideal; `value` is the
    /// dimension read from its leading monomials.
    Dimension {
        label: String,
        ring: RingSpec,
        basis: Vec<String>,
        value: usize,
    },
    /// Variables minus the rank of the linear parts of the generators.
    EmbeddingDimension {
        label: String,
        ring: RingSpec,
        value: usize,
    },
    /// A verified Smith form; `rank` and `invariant_factors` derive from it.
    Snf {
        label: String,
        matrix: IntMat,
        snf: Snf,
    },
    /// `contained[i]` says whether `elements[i]` lies in the submodule of
    /// `R^rank` generated by `generators` and the ring's ideal; `basis` is a
    /// standard basis of that submodule.
    Membership {
        label: String,
        ring: RingSpec,
        ring_basis: Vec<String>,
        rank: usize,
        generators: Vec<Vec<String>>,
        basis: Vec<Vec<String>>,
        elements: Vec<Vec<String>>,
        contained: Vec<bool>,
    },
    /// Homology of `R^a -f-> R^b -g-> R^c` at the middle. `cycles` satisfy
    /// `g z = 0`; `bounded[i]` records membership of `cycles[i]` in the image
    /// of `f`, decided against `boundary_basis`. `relations` present the
    /// homology on the cycles; `dim` is its residue-field dimension.
    Homology {
        label: String,
        ring: RingSpec,
        ring_basis: Vec<String>,
        rank_b: usize,
        rank_c: usize,
        f: Vec<Vec<String>>,
        g: Vec<Vec<String>>,
        cycles: Vec<Vec<String>>,
        boundary_basis: Vec<Vec<String>>,
        bounded: Vec<bool>,
        relations: Vec<Vec<String>>,
        dim: usize,
    },
    /// A scalar computed outside the certificate's verification scope.
    Number { label: String, value: i64 },
    Flag {
        label: String,
        value: bool,
        #[serde(default, skip_serializing_if = "String::is_empty")]
        detail: String,
    },
}

impl Fact {
    pub fn label(&self) -> &str {
        match self {
            Fact::Dimension { label, .. }
            | Fact::EmbeddingDimension { label, .. }
            | Fact::Snf { label, .. }
            | Fact::Membership { label, .. }
            | Fact::Homology { label, .. }
            | Fact::Number { label, .. }
            | Fact::Flag { label, .. } => label,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub procedure: String,
    pub status: Status,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub field: Option<Field>,
    #[serde(default)]
    pub facts: Vec<Fact>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub parts: Vec<Certificate>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub data: BTreeMap<String, i64>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub preconditions: Vec<Precondition>,
    #[serde(default, skip_serializing_if = "String::is_empty")]
    pub reason: String,
}

impl Certificate {
    pub fn new(procedure: &str) -> Self {
        Certificate {
            procedure: procedure.into(),
            status: Status::Indeterminate,
            field: None,
            facts: Vec::new(),
            parts: Vec::new(),
            data: BTreeMap::new(),
            preconditions: Vec::new(),
            reason: String::new(),
        }
    }

    pub fn fact(&self, label: &str) -> Option<&Fact> {
        self.facts.iter().find(|f| f.label() == label)
    }

    pub fn part(&self, procedure: &str) -> Option<&Certificate> {
        self.parts.iter().find(|c| c.procedure == procedure)
    }

    pub fn number(&self, label: &str) -> Option<i64> {
        self.data.get(label).copied()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub status: Status,
    pub certificate: Certificate,
    pub preconditions: Vec<Precondition>,
}

impl Verdict {
    /// Assembles a verdict; the status is copied into the certificate.
    pub fn new(status: Status, mut certificate: Certificate, preconditions: Vec<Precondition>) -> Self {
        certificate.status = status;
        certificate.preconditions = preconditions.clone();
        Verdict {
            status,
            certificate,
            preconditions,
        }
    }

    /// Indeterminate because a precondition failed.
    pub fn refused(procedure: &str, preconditions: Vec<Precondition>) -> Self {
        let mut c = Certificate::new(procedure);
        c.reason = preconditions
            .iter()
            .filter(|p| !p.ok)
            .map(|p| format!("{}: {}", p.name, p.detail))
            .collect::<Vec<_>>()
            .join("; ");
        Verdict::new(Status::Indeterminate, c, preconditions)
    }

    pub fn holds(&self) -> bool {
        self.status == Status::Holds
    }

    pub fn preconditions_ok(&self) -> bool {
        self.preconditions.iter().all(|p| p.ok)
    }
}
