//! Certificate replay: re-verifies recorded facts and re-derives each
//! procedure's status from them.
//!
//! Facts are checked with normal form reductions against the recorded
//! standard bases, Buchberger criteria on those bases and Smith form
//! identities; no standard basis is recomputed. Parts are replayed
//! recursively and their replayed statuses feed the parent's status.

use serde::{Deserialize, Serialize};

use crate::abgroups::verify_snf;
use crate::error::{Error, Result};
use crate::groebner::{Engine, MVec};
use crate::localalg::{dimension_from_leading, Col, FpModule, PresentedRing, RingSpec};
use crate::poly::{Mono, Poly};
use crate::regcheck::{crosscheck_status, fundamental_consistent_from_data, snf_functor_dims};
use crate::verdict::{Certificate, Fact, Status};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReplayReport {
    pub procedure: String,
    pub recorded: Status,
    pub replayed: Status,
    pub facts_checked: usize,
    pub failures: Vec<String>,
}

impl ReplayReport {
    /// Every fact verified and the re-derived status matches the record.
    pub fn ok(&self) -> bool {
        self.failures.is_empty() && self.recorded == self.replayed
    }
}

pub fn replay(cert: &Certificate) -> ReplayReport {
    let mut failures = Vec::new();
    let mut checked = 0;
    let status = replay_into(cert, "", &mut failures, &mut checked);
    ReplayReport {
        procedure: cert.procedure.clone(),
        recorded: cert.status,
        replayed: status,
        facts_checked: checked,
        failures,
    }
}

fn replay_into(cert: &Certificate, path: &str, failures: &mut Vec<String>, checked: &mut usize) -> Status {
    let here = if path.is_empty() {
        cert.procedure.clone()
    } else {
        format!("{path}/{}", cert.procedure)
    };
    for f in &cert.facts {
        *checked += 1;
        if let Err(e) = verify_fact(f) {
            failures.push(format!("{here}: fact {}: {e}", f.label()));
        }
    }
    let parts: Vec<(String, Status)> = cert
        .parts
        .iter()
        .map(|p| {
            let s = replay_into(p, &here, failures, checked);
            if s != p.status {
                failures.push(format!("{here}/{}: recorded {}, replayed {}", p.procedure, p.status, s));
            }
            (p.procedure.clone(), s)
        })
        .collect();
    match derive_status(cert, &parts) {
        Some(s) => s,
        None => {
            failures.push(format!("{here}: cannot derive status from the recorded facts"));
            Status::Indeterminate
        }
    }
}

fn part(parts: &[(String, Status)], name: &str) -> Option<Status> {
    parts.iter().find(|(p, _)| p == name).map(|(_, s)| *s)
}

fn memberships_all(cert: &Certificate) -> bool {
    cert.facts.iter().all(|f| match f {
        Fact::Membership { contained, .. } => contained.iter().all(|&c| c),
        _ => true,
    })
}

fn homology_vanishes(cert: &Certificate, label: &str) -> Option<bool> {
    match cert.fact(label)? {
        Fact::Homology { bounded, .. } => Some(bounded.iter().all(|&b| b)),
        _ => None,
    }
}

fn fact_value(cert: &Certificate, label: &str) -> Option<usize> {
    match cert.fact(label)? {
        Fact::Dimension { value, .. } | Fact::EmbeddingDimension { value, .. } => Some(*value),
        _ => None,
    }
}

fn snf_dims(cert: &Certificate, label: &str) -> Option<(usize, usize)> {
    match cert.fact(label)? {
        Fact::Snf { matrix, snf, .. } => Some(snf_functor_dims(matrix, &snf.diagonal(), cert.field?)),
        _ => None,
    }
}

fn snf_rank(cert: &Certificate, label: &str) -> Option<usize> {
    match cert.fact(label)? {
        Fact::Snf { matrix, snf, .. } => Some(matrix.rows() - snf.rank()),
        _ => None,
    }
}

/// The status each procedure assigns to its facts and parts.
fn derive_status(cert: &Certificate, parts: &[(String, Status)]) -> Option<Status> {
    if cert.preconditions.iter().any(|p| !p.ok) {
        return Some(Status::Indeterminate);
    }
    let b = Status::from_bool;
    match cert.procedure.as_str() {
        "validate" | "is_integral" | "first_sequence" | "conormal_sequence" | "base_change" => {
            Some(b(memberships_all(cert)))
        }
        "koszul_h1" => match cert.fact("koszul_h1") {
            None => Some(Status::Holds),
            Some(_) => homology_vanishes(cert, "koszul_h1").map(b),
        },
        "is_regular_local" => {
            let nonzero = match cert.fact("dim")? {
                Fact::Dimension { ring, basis, .. } => {
                    let r = PresentedRing::from_spec(ring).ok()?;
                    let lead = leading(&r, basis).ok()?;
                    dimension_from_leading(&lead, r.nvars()).is_some()
                }
                _ => return None,
            };
            Some(b(nonzero && fact_value(cert, "dim")? == fact_value(cert, "embdim")?))
        }
        "is_saturated" => match cert.fact("saturated") {
            Some(Fact::Flag { value, .. }) => Some(b(*value)),
            Some(_) => None,
            None => Some(b(cert.number("rank") == Some(0))),
        },
        "log_regular" | "log_regular_ideal" => {
            Some(b(part(parts, "koszul_h1")? == Status::Holds && homology_vanishes(cert, "tor1")?))
        }
        "kato" => {
            let regular = part(parts, "is_regular_local")?;
            let dim_q = cert.part("is_regular_local").and_then(|p| fact_value(p, "dim"))?;
            let dims = fact_value(cert, "dim_a")? == dim_q + snf_rank(cert, "gp")?;
            Some(b(regular == Status::Holds && dims))
        }
        "log_ci_direct" => part(parts, "koszul_h1"),
        "log_ci_presentation" => part(parts, "log_regular_ideal"),
        "log_smooth_sufficient" => {
            let (hom_ker, _) = snf_dims(cert, "ker")?;
            let (_, ext_coker) = snf_dims(cert, "coker")?;
            Some(b(hom_ker == 0 && ext_coker == 0))
        }
        "smoothness_equivalence" => {
            Some(b(homology_vanishes(cert, "tor1")? && part(parts, "is_regular_local")? == Status::Holds))
        }
        "log_smooth_over_field" => match part(parts, "log_smooth_sufficient")? {
            Status::Holds => part(parts, "smoothness_equivalence"),
            _ => Some(Status::Indeterminate),
        },
        "crosscheck" => Some(crosscheck_status(
            part(parts, "log_regular")?,
            part(parts, "log_smooth_over_field")?,
        )),
        "fundamental" => fundamental_consistent_from_data(cert).map(b),
        _ => None,
    }
}

fn bad(msg: impl Into<String>) -> Error {
    Error::Precondition(msg.into())
}

fn polys(r: &PresentedRing, xs: &[String]) -> Result<Vec<Poly>> {
    xs.iter().map(|s| Ok(r.parse_poly(s)?)).collect()
}

fn cols(r: &PresentedRing, xs: &[Vec<String>]) -> Result<Vec<Col>> {
    xs.iter().map(|c| polys(r, c)).collect()
}

fn leading(r: &PresentedRing, basis: &[String]) -> Result<Vec<Mono>> {
    let engine = r.module_engine(1, 0);
    Ok(polys(r, basis)?
        .iter()
        .filter(|p| !p.is_zero())
        .map(|p| engine.vec(std::slice::from_ref(p)).lead_term().mono.clone())
        .collect())
}

/// `sum x_i cols[i]` without simplification.
fn combine(r: &PresentedRing, cols: &[Col], rank: usize, x: &[Poly]) -> Col {
    let mut out = vec![r.zero(); rank];
    for (c, a) in cols.iter().zip(x) {
        for i in 0..rank {
            out[i] = out[i].add(&c[i].mul(a));
        }
    }
    out
}

/// Checks that `basis` passes the Buchberger criterion and that `gens` and
/// `I R^rank` reduce to zero against it. That each basis element lies in the
/// generated submodule is taken on trust.
fn verify_module_basis(
    r: &PresentedRing,
    ring_basis: &[Poly],
    rank: usize,
    gens: &[Col],
    basis: &[Col],
) -> Result<(Engine, Vec<MVec>)> {
    let engine = r.module_engine(rank, 0);
    let mut all: Vec<MVec> = Vec::new();
    for c in gens.iter().chain(basis) {
        if c.len() != rank {
            return Err(bad("column of the wrong length"));
        }
    }
    all.extend(gens.iter().map(|c| engine.vec(c)));
    for g in ring_basis {
        for i in 0..rank {
            let mut c = vec![r.zero(); rank];
            c[i] = g.clone();
            all.push(engine.vec(&c));
        }
    }
    let b: Vec<MVec> = basis.iter().map(|c| engine.vec(c)).collect();
    if !engine.is_standard_basis(&b) {
        return Err(bad("recorded basis fails the Buchberger criterion"));
    }
    if all.iter().any(|v| !engine.reduce(v, &b).is_zero()) {
        return Err(bad("a generator does not reduce to zero"));
    }
    Ok((engine, b))
}

/// The ring with its recorded standard basis, checked against the ideal
/// generators.
fn verified_ring(spec: &RingSpec, basis: &[String]) -> Result<PresentedRing> {
    let r = PresentedRing::from_spec(spec)?;
    let rb = polys(&r, basis)?;
    let gens: Vec<Col> = r.ideal().iter().map(|p| vec![p.clone()]).collect();
    let rows: Vec<Col> = rb.iter().map(|p| vec![p.clone()]).collect();
    verify_module_basis(&r, &[], 1, &gens, &rows)?;
    PresentedRing::with_standard_basis(spec, rb)
}

pub fn verify_fact(f: &Fact) -> Result<()> {
    match f {
        Fact::Dimension { ring, basis, value, .. } => {
            let r = verified_ring(ring, basis)?;
            let d = dimension_from_leading(&leading(&r, basis)?, r.nvars()).unwrap_or(0);
            if d != *value {
                return Err(bad(format!("dimension {d}, recorded {value}")));
            }
            Ok(())
        }
        Fact::EmbeddingDimension { ring, value, .. } => {
            let r = PresentedRing::from_spec(ring)?;
            if r.embedding_dimension() != *value {
                return Err(bad("embedding dimension differs"));
            }
            Ok(())
        }
        Fact::Snf { matrix, snf, .. } => {
            if verify_snf(matrix, snf) {
                Ok(())
            } else {
                Err(bad("Smith form identity fails"))
            }
        }
        Fact::Membership {
            ring,
            ring_basis,
            rank,
            generators,
            basis,
            elements,
            contained,
            ..
        } => {
            let r = verified_ring(ring, ring_basis)?;
            let (engine, b) = verify_module_basis(&r, r.standard_basis(), *rank, &cols(&r, generators)?, &cols(&r, basis)?)?;
            let elems = cols(&r, elements)?;
            if elems.len() != contained.len() {
                return Err(bad("element count differs"));
            }
            for (e, &c) in elems.iter().zip(contained) {
                if engine.reduce(&engine.vec(e), &b).is_zero() != c {
                    return Err(bad("membership flag differs from normal form"));
                }
            }
            Ok(())
        }
        Fact::Homology {
            ring,
            ring_basis,
            rank_b,
            rank_c,
            f,
            g,
            cycles,
            boundary_basis,
            bounded,
            relations,
            dim,
            ..
        } => {
            let r = verified_ring(ring, ring_basis)?;
            let fc = cols(&r, f)?;
            let gc = cols(&r, g)?;
            let zero = |v: &Col| v.iter().all(|p| r.is_zero(p));
            if fc.iter().any(|c| !zero(&combine(&r, &gc, *rank_c, c))) {
                return Err(bad("composite is nonzero"));
            }
            let zs = cols(&r, cycles)?;
            if zs.iter().any(|z| !zero(&combine(&r, &gc, *rank_c, z))) {
                return Err(bad("a recorded cycle is not a cycle"));
            }
            let (engine, b) = verify_module_basis(&r, r.standard_basis(), *rank_b, &fc, &cols(&r, boundary_basis)?)?;
            if zs.len() != bounded.len() {
                return Err(bad("cycle count differs"));
            }
            for (z, &c) in zs.iter().zip(bounded) {
                if engine.reduce(&engine.vec(z), &b).is_zero() != c {
                    return Err(bad("boundary flag differs from normal form"));
                }
            }
            let labels = (0..zs.len()).map(|i| format!("z{i}")).collect();
            let h = FpModule::new(r.clone(), zs.len(), cols(&r, relations)?, labels);
            if h.residue_dimension() != *dim {
                return Err(bad("homology dimension differs"));
            }
            Ok(())
        }
        Fact::Number { .. } | Fact::Flag { .. } => Ok(()),
    }
}
