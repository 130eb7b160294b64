//! Decision procedures: log regular ideals and rings, Kato's dimension
//! criterion, log complete intersections, log smoothness criteria and the
//! low-degree part of the fundamental sequence.

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::abgroups::{cone_homology_dims, functor_dims, kernel_cokernel, smith_normal_form, FgAbGroup};
use crate::arith::Field;
use crate::error::{Error, Result};
use crate::intmat::IntMat;
use crate::localalg::{
    dimension_fact, is_regular_local, koszul_h1_vanishes, minimal_generators, tor_cyclic, PresentedRing, RingMode,
};
use crate::logdiff::{
    conormal_module, gp_cokernel_module, ideal_mod_square_dim, log_differentials, monoid_differentials,
    ring_differentials,
};
use crate::monoids::{FinMonoid, MonoidHom};
use crate::poly::{Mono, Poly};
use crate::prelog::{PrelogHom, PrelogRing};
use crate::verdict::{Certificate, Fact, Precondition, Status, Verdict};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckOptions {
    /// Degree bound for monoid preimage enumeration.
    pub degree_bound: u32,
    /// Lattice point budget for saturation tests.
    pub budget: usize,
}

impl Default for CheckOptions {
    fn default() -> Self {
        CheckOptions {
            degree_bound: 8,
            budget: 10_000,
        }
    }
}

const CHART_HINT: &str = "replace by a sharp integral chart inducing the same log structure";

fn snf_fact(label: &str, g: &FgAbGroup) -> Fact {
    let m = g.presentation.clone();
    Fact::Snf {
        label: label.into(),
        snf: smith_normal_form(&m),
        matrix: m,
    }
}

/// Validity plus the chart conditions: no absorbing element, integral,
/// sharp and, if `free_gp`, torsion-free group completion.
fn chart_preconditions(p: &PrelogRing, free_gp: bool) -> Vec<Precondition> {
    let mut pre = Vec::new();
    let v = p.validate();
    pre.push(if v.holds() {
        Precondition::ok("valid prelog ring")
    } else {
        Precondition::failed("valid prelog ring", v.certificate.reason)
    });
    let m = &p.monoid;
    if m.is_pointed() {
        pre.push(Precondition::failed("no absorbing element", "monoid is pointed"));
        return pre;
    }
    if !m.is_integral().holds() {
        pre.push(Precondition::failed("integral monoid", CHART_HINT));
        return pre;
    }
    pre.push(Precondition::ok("integral monoid"));
    let sharp = m.unit_generators().is_empty() || m.units_and_sharpness().map(|u| u.is_sharp).unwrap_or(false);
    pre.push(if sharp {
        Precondition::ok("sharp monoid")
    } else {
        Precondition::failed("sharp monoid", CHART_HINT)
    });
    if free_gp {
        pre.push(if m.gp().is_free() {
            Precondition::ok("free group completion")
        } else {
            Precondition::failed(
                "free group completion",
                "group completion has torsion; replace by a chart with free group completion",
            )
        });
    }
    pre
}

fn all_ok(pre: &[Precondition]) -> bool {
    pre.iter().all(|p| p.ok)
}

/// Monomials `x^e` of the monoid algebra for the given exponent rows.
fn monomials(r0: &PresentedRing, rows: &[Vec<u32>]) -> Vec<Poly> {
    rows.iter()
        .map(|e| Poly::monomial(r0.field(), Mono(e.clone()), r0.field().one()))
        .collect()
}

/// Whether `J` is a log regular ideal of `P`: the kernel of `A/I -> A/J` is
/// generated by a regular sequence, and `Tor_1^{K[M]}(A, K[M]/I') = 0`,
/// where `I'` is generated by the monoid preimage of `J` and `I` by its
/// image.
pub fn is_log_regular_ideal(p: &PrelogRing, j: &[Poly], opts: &CheckOptions) -> Verdict {
    log_regular_ideal_as("log_regular_ideal", p, j, opts)
}

fn log_regular_ideal_as(procedure: &str, p: &PrelogRing, j: &[Poly], opts: &CheckOptions) -> Verdict {
    let mut pre = chart_preconditions(p, true);
    if !all_ok(&pre) {
        return Verdict::refused(procedure, pre);
    }
    if !p.inside_maximal(j) {
        pre.push(Precondition::failed("ideal inside the maximal ideal", "an ideal generator is a unit"));
        return Verdict::refused(procedure, pre);
    }
    pre.push(Precondition::ok("ideal inside the maximal ideal"));
    let preimage = match p.monoid_preimage_ideal(j, opts.degree_bound) {
        Ok(x) if x.complete => x,
        Ok(_) => {
            pre.push(Precondition::failed(
                "monoid preimage complete",
                format!("new generators still appear at degree {}", opts.degree_bound + 1),
            ));
            return Verdict::refused(procedure, pre);
        }
        Err(e) => {
            pre.push(Precondition::failed("monoid preimage complete", e.to_string()));
            return Verdict::refused(procedure, pre);
        }
    };
    pre.push(Precondition::ok("monoid preimage complete"));
    let field = p.ring.field();
    let mut cert = Certificate::new(procedure);
    cert.field = Some(field);
    let i = p.ideal_of(&preimage.ideal);
    let a_mod_i = p.ring.quotient(&i);
    let jgens = minimal_generators(&a_mod_i, j);
    let koszul = koszul_h1_vanishes(&a_mod_i, &jgens).expect("generators are minimal");
    let r0 = p.monoid.algebra(field);
    let iprime = monomials(&r0, &preimage.ideal.generators);
    let tor = tor_cyclic(&r0, &p.ring, &p.alpha, &iprime, 1);
    cert.facts.push(tor.fact("tor1", &p.ring));
    cert.data.insert("preimage_generators".into(), preimage.ideal.generators.len() as i64);
    cert.data.insert("sequence_length".into(), jgens.len() as i64);
    cert.data.insert("tor1_dim".into(), tor.dimension() as i64);
    let mut reasons = Vec::new();
    if !koszul.holds() {
        reasons.push(format!(
            "kernel of A/I -> A/J is not generated by a regular sequence ({})",
            koszul.certificate.reason
        ));
    }
    if !tor.vanishes() {
        reasons.push(format!("Tor_1 has dimension {} over the residue field", tor.dimension()));
    }
    let holds = koszul.holds() && tor.vanishes();
    cert.parts.push(koszul.certificate);
    cert.reason = reasons.join("; ");
    Verdict::new(Status::from_bool(holds), cert, pre)
}

/// Log regularity: the maximal ideal is a log regular ideal.
pub fn is_log_regular(p: &PrelogRing, opts: &CheckOptions) -> Verdict {
    log_regular_ideal_as("log_regular", p, &p.maximal_ideal(), opts)
}

/// `A/I` regular and `dim A = dim A/I + rank M^gp`, with `I` generated by
/// the images of the non-unit generators.
pub fn kato_criterion(p: &PrelogRing, opts: &CheckOptions) -> Verdict {
    let mut pre = chart_preconditions(p, false);
    if !all_ok(&pre) {
        return Verdict::refused("kato", pre);
    }
    let preimage = match p.monoid_preimage_ideal(&p.maximal_ideal(), opts.degree_bound) {
        Ok(x) if x.complete => x,
        _ => {
            pre.push(Precondition::failed("monoid preimage complete", "preimage of the maximal ideal"));
            return Verdict::refused("kato", pre);
        }
    };
    pre.push(Precondition::ok("monoid preimage complete"));
    let mut cert = Certificate::new("kato");
    cert.field = Some(p.ring.field());
    let i = p.ideal_of(&preimage.ideal);
    let quotient = p.ring.quotient(&i);
    let reg = is_regular_local(&quotient);
    let gp = p.monoid.gp();
    let dim_a = p.ring.krull_dimension();
    let dim_q = quotient.krull_dimension();
    cert.facts.push(dimension_fact("dim_a", &p.ring));
    cert.facts.push(snf_fact("gp", &gp));
    cert.data.insert("dim_a".into(), dim_a as i64);
    cert.data.insert("dim_quotient".into(), dim_q as i64);
    cert.data.insert("rank".into(), gp.rank as i64);
    let dims_ok = dim_a == dim_q + gp.rank;
    let mut reasons = Vec::new();
    if !reg.holds() {
        reasons.push(format!(
            "A/I is not regular (dim {}, embedding dim {})",
            reg.certificate.number("dim").unwrap_or(0),
            reg.certificate.number("embdim").unwrap_or(0)
        ));
    }
    if !dims_ok {
        reasons.push(format!("(dim A, dim A/I + rank) = ({dim_a}, {})", dim_q + gp.rank));
    }
    let holds = reg.holds() && dims_ok;
    cert.parts.push(reg.certificate);
    cert.reason = reasons.join("; ");
    Verdict::new(Status::from_bool(holds), cert, pre)
}

/// Which log complete intersection test to run.
#[derive(Clone, Debug)]
pub enum LogCiRoute {
    /// Requires `A` regular: tests the monoid ideal of `K[M]` at the origin.
    Direct,
    /// `P = Q / J` with `Q` log regular: tests whether `J` is log regular.
    Presentation { q: PrelogRing, j: Vec<Poly> },
}

pub fn is_log_complete_intersection(p: &PrelogRing, route: &LogCiRoute, opts: &CheckOptions) -> Verdict {
    match route {
        LogCiRoute::Direct => log_ci_direct(p),
        LogCiRoute::Presentation { q, j } => log_ci_presentation(q, j, opts),
    }
}

/// The monoid algebra localized at the origin.
pub fn local_monoid_algebra(m: &FinMonoid, field: Field) -> Result<PresentedRing> {
    PresentedRing::new(m.names.clone(), field, m.algebra_ideal(field), RingMode::Local)
}

/// For regular `A`: the ideal of `K[M]_0` generated by the non-unit
/// generators is generated by a regular sequence.
pub fn log_ci_direct(p: &PrelogRing) -> Verdict {
    let mut pre = Vec::new();
    let v = p.validate();
    pre.push(if v.holds() {
        Precondition::ok("valid prelog ring")
    } else {
        Precondition::failed("valid prelog ring", v.certificate.reason)
    });
    let reg = is_regular_local(&p.ring);
    pre.push(if reg.holds() {
        Precondition::ok("regular ring")
    } else {
        Precondition::failed("regular ring", "the direct test needs a regular local ring")
    });
    let units = p.monoid.unit_generators();
    pre.push(if units.is_empty() {
        Precondition::ok("sharp monoid")
    } else {
        Precondition::failed("sharp monoid", CHART_HINT)
    });
    let field = p.ring.field();
    let local = local_monoid_algebra(&p.monoid, field);
    if let Err(e) = &local {
        pre.push(Precondition::failed("monoid algebra at the origin", e.to_string()));
    }
    if !all_ok(&pre) {
        let mut out = Verdict::refused("log_ci_direct", pre);
        out.certificate.parts.push(reg.certificate);
        return out;
    }
    let local = local.expect("checked");
    let gens: Vec<Poly> = (0..local.nvars()).map(|i| local.var(i)).collect();
    let mins = minimal_generators(&local, &gens);
    let koszul = koszul_h1_vanishes(&local, &mins).expect("generators are minimal");
    let mut cert = Certificate::new("log_ci_direct");
    cert.field = Some(field);
    cert.data.insert("minimal_generators".into(), mins.len() as i64);
    cert.data.insert("dim_monoid_algebra".into(), local.krull_dimension() as i64);
    if !koszul.holds() {
        cert.reason = format!(
            "the monoid ideal needs {} generators and is not generated by a regular sequence ({})",
            mins.len(),
            koszul.certificate.reason
        );
    }
    let status = koszul.status;
    cert.parts.push(reg.certificate);
    cert.parts.push(koszul.certificate);
    Verdict::new(status, cert, pre)
}

/// `P = Q / J`: log complete intersection iff `J` is a log regular ideal of
/// the log regular `Q`.
pub fn log_ci_presentation(q: &PrelogRing, j: &[Poly], opts: &CheckOptions) -> Verdict {
    let base = is_log_regular(q, opts);
    let mut pre = base.preconditions.clone();
    pre.push(if base.holds() {
        Precondition::ok("presenting ring is log regular")
    } else {
        Precondition::failed("presenting ring is log regular", base.certificate.reason.clone())
    });
    if !all_ok(&pre) {
        let mut out = Verdict::refused("log_ci_presentation", pre);
        out.certificate.parts.push(base.certificate);
        return out;
    }
    let ideal = is_log_regular_ideal(q, j, opts);
    pre.extend(ideal.preconditions.iter().cloned());
    let mut cert = Certificate::new("log_ci_presentation");
    cert.field = Some(q.ring.field());
    cert.reason = ideal.certificate.reason.clone();
    let status = ideal.status;
    cert.parts.push(base.certificate);
    cert.parts.push(ideal.certificate);
    Verdict::new(status, cert, pre)
}

/// `dim Hom(ker, k)` and `dim Ext^1(coker, k)` of `M^gp -> N^gp`.
pub fn is_log_smooth_sufficient(h: &MonoidHom, field: Field) -> Result<Verdict> {
    if h.target.is_pointed() || !h.target.is_integral().holds() {
        return Err(Error::NotIntegral);
    }
    let (ker, coker) = kernel_cokernel(&h.gp_map()?)?;
    let dk = functor_dims(&ker.group, field);
    let dc = functor_dims(&coker, field);
    let mut cert = Certificate::new("log_smooth_sufficient");
    cert.field = Some(field);
    cert.facts.push(snf_fact("ker", &ker.group));
    cert.facts.push(snf_fact("coker", &coker));
    cert.data.insert("hom_ker".into(), dk.hom as i64);
    cert.data.insert("ext1_coker".into(), dc.ext1 as i64);
    let mut reasons = Vec::new();
    if dk.hom > 0 {
        reasons.push(format!("Hom(ker, k) has dimension {} (ker = {})", dk.hom, ker.group.describe()));
    }
    if dc.ext1 > 0 {
        reasons.push(format!(
            "Ext^1(coker, k) has dimension {} (coker = {})",
            dc.ext1,
            coker.describe()
        ));
    }
    cert.reason = reasons.join("; ");
    Ok(Verdict::new(
        Status::from_bool(dk.hom == 0 && dc.ext1 == 0),
        cert,
        vec![Precondition::ok("integral target monoid")],
    ))
}

/// For `B` over `(K[N], N)` reached through `h: M -> N` with
/// `A = K[M]`: `B` is formally smooth over `K[N]` at the origin, decided as
/// flatness (`Tor_1^{K[N]}(B, k) = 0`) plus regularity of the closed fiber.
pub fn smoothness_equivalence(h: &MonoidHom, b: &PrelogRing) -> Result<Verdict> {
    if b.monoid != h.target {
        return Err(Error::Shape("the prelog ring must carry the target monoid".into()));
    }
    if h.target.is_pointed() || !h.target.is_integral().holds() {
        return Err(Error::NotIntegral);
    }
    let field = b.ring.field();
    let (ker, coker) = kernel_cokernel(&h.gp_map()?)?;
    let dk = functor_dims(&ker.group, field);
    let dc = functor_dims(&coker, field);
    let mut cert = Certificate::new("smoothness_equivalence");
    cert.field = Some(field);
    cert.facts.push(snf_fact("ker", &ker.group));
    cert.facts.push(snf_fact("coker", &coker));
    let mut pre = vec![Precondition::ok("integral target monoid")];
    let v = b.validate();
    pre.push(if v.holds() {
        Precondition::ok("valid prelog ring")
    } else {
        Precondition::failed("valid prelog ring", v.certificate.reason)
    });
    let hyp = [
        ("Hom(ker, k) = 0", dk.hom),
        ("Ext^1(coker, k) = 0", dc.ext1),
        ("Hom(coker, k) = 0", dc.hom),
    ];
    for (name, d) in hyp {
        pre.push(if d == 0 {
            Precondition::ok(name)
        } else {
            Precondition::failed(name, format!("dimension {d}"))
        });
    }
    if !all_ok(&pre) {
        let mut out = Verdict::refused("smoothness_equivalence", pre);
        out.certificate.facts = cert.facts;
        return Ok(out);
    }
    let r0 = h.target.algebra(field);
    let m_gens = h.target.maximal_ideal().generators;
    let tor = tor_cyclic(&r0, &b.ring, &b.alpha, &monomials(&r0, &m_gens), 1);
    let fiber_ideal: Vec<Poly> = m_gens.iter().map(|e| b.alpha_of(e)).collect();
    let fiber = is_regular_local(&b.ring.quotient(&fiber_ideal));
    cert.facts.push(tor.fact("tor1", &b.ring));
    cert.data.insert("tor1_dim".into(), tor.dimension() as i64);
    let mut reasons = Vec::new();
    if !tor.vanishes() {
        reasons.push(format!("not flat over the monoid algebra: Tor_1 has dimension {}", tor.dimension()));
    }
    if !fiber.holds() {
        reasons.push("closed fiber is not regular".to_string());
    }
    let holds = tor.vanishes() && fiber.holds();
    cert.parts.push(fiber.certificate);
    cert.reason = reasons.join("; ");
    Ok(Verdict::new(Status::from_bool(holds), cert, pre))
}

/// The smoothness decision over `(k, 1)` available for `P`: `(K[N], N)` is
/// log smooth over `(k, 1)` by the group criterion, and `B` is formally
/// smooth over `K[N]`.
pub fn log_smoothness_over_field(p: &PrelogRing) -> Result<Verdict> {
    let field = p.ring.field();
    let trivial = MonoidHom::new(FinMonoid::trivial(), p.monoid.clone(), Vec::new())?;
    let base = is_log_smooth_sufficient(&trivial, field)?;
    let rel = smoothness_equivalence(&MonoidHom::identity(&p.monoid), p)?;
    let mut cert = Certificate::new("log_smooth_over_field");
    cert.field = Some(field);
    let status = match (base.status, rel.status) {
        (Status::Holds, s) => s,
        _ => Status::Indeterminate,
    };
    if status == Status::Indeterminate {
        cert.reason = "smoothness criterion not applicable".into();
    } else {
        cert.reason = rel.certificate.reason.clone();
    }
    let pre = rel.preconditions.clone();
    cert.parts.push(base.certificate);
    cert.parts.push(rel.certificate);
    Ok(Verdict::new(status, cert, pre))
}

/// Runs log regularity and the smoothness decision and compares them.
/// Holds when both agree, fails on disagreement, indeterminate when the
/// smoothness side is not applicable.
pub fn regularity_smoothness_crosscheck(p: &PrelogRing, opts: &CheckOptions) -> Verdict {
    let mut pre = vec![Precondition::ok("perfect field")];
    let m = &p.monoid;
    if m.is_pointed() || !m.is_integral().holds() {
        pre.push(Precondition::failed("integral monoid", CHART_HINT));
        return Verdict::refused("crosscheck", pre);
    }
    pre.push(Precondition::ok("integral monoid"));
    match m.is_saturated(opts.budget) {
        Ok(v) if v.holds() => pre.push(Precondition::ok("saturated monoid")),
        Ok(v) => pre.push(Precondition::failed("saturated monoid", v.certificate.reason)),
        Err(e) => pre.push(Precondition::failed("saturated monoid", e.to_string())),
    }
    if !all_ok(&pre) {
        return Verdict::refused("crosscheck", pre);
    }
    let lr = is_log_regular(p, opts);
    let sm = match log_smoothness_over_field(p) {
        Ok(v) => v,
        Err(e) => {
            pre.push(Precondition::failed("smoothness criterion applicable", e.to_string()));
            return Verdict::refused("crosscheck", pre);
        }
    };
    let mut cert = Certificate::new("crosscheck");
    cert.field = Some(p.ring.field());
    let status = crosscheck_status(lr.status, sm.status);
    cert.reason = match status {
        Status::Holds => format!("both {}", lr.status),
        Status::Fails => format!("log regular {}, smoothness {}", lr.status, sm.status),
        Status::Indeterminate => format!("not comparable: log regular {}, smoothness {}", lr.status, sm.status),
    };
    cert.parts.push(lr.certificate);
    cert.parts.push(sm.certificate);
    Verdict::new(status, cert, pre)
}

pub fn crosscheck_status(log_regular: Status, smooth: Status) -> Status {
    match (log_regular, smooth) {
        (Status::Indeterminate, _) | (_, Status::Indeterminate) => Status::Indeterminate,
        (a, b) => Status::from_bool(a == b),
    }
}

/// Dimensions around `Γ` for `M^gp -> N^gp` tensored with `k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GammaDims {
    /// `H_1` of the mapping cone tensored with `k`.
    pub gamma: usize,
    pub ker_tensor: usize,
    pub coker_tor1: usize,
    pub coker_tensor: usize,
}

impl GammaDims {
    pub fn identity_holds(&self) -> bool {
        self.gamma == self.ker_tensor + self.coker_tor1
    }
}

pub fn gamma_dims(h: &MonoidHom, field: Field) -> Result<GammaDims> {
    let f = h.gp_map()?;
    let (_, gamma, _) = cone_homology_dims(&f, field);
    let (ker, coker) = kernel_cokernel(&f)?;
    let dk = functor_dims(&ker.group, field);
    let dc = functor_dims(&coker, field);
    Ok(GammaDims {
        gamma,
        ker_tensor: dk.tensor,
        coker_tor1: dc.tor1,
        coker_tensor: dc.tensor,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurjectiveRow {
    /// Minimal number of generators of `ker(K[M] -> K[N])` at the origin.
    pub monoid_kernel: Option<usize>,
    pub ideal_mod_square: usize,
    /// Conormal module, minimally presented.
    pub conormal: usize,
    /// Conormal module from the raw pushout presentation.
    pub conormal_pushout: usize,
}

/// Residue-field dimensions of the low-degree terms.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FundamentalReport {
    pub omega_monoid: usize,
    pub omega_ring: usize,
    pub gp_cokernel: usize,
    /// `Ω ⊗ k`, from the minimal presentation.
    pub omega_log: usize,
    /// `Ω ⊗ k` from the raw pushout presentation.
    pub omega_log_h0: usize,
    pub gamma: GammaDims,
    pub surjective: Option<SurjectiveRow>,
    pub consistent: bool,
}

pub fn fundamental_sequence_low_degree(f: &PrelogHom) -> Result<FundamentalReport> {
    let field = f.target.ring.field();
    let omega_monoid = monoid_differentials(f).residue_dimension();
    let omega_ring = ring_differentials(f).residue_dimension();
    let gp_cokernel = gp_cokernel_module(f).residue_dimension();
    let omega = log_differentials(f);
    let omega_log = omega.minimalize().rank;
    let omega_log_h0 = omega.residue_dimension();
    let gamma = gamma_dims(&f.monoid_map, field)?;
    let surjective = if f.is_quotient_map() && f.monoid_map.is_surjective() {
        let n = conormal_module(f)?;
        let monoid_kernel = local_monoid_algebra(&f.source.monoid, field).ok().map(|r| {
            let bins: Vec<Poly> = f
                .monoid_map
                .kernel_binomials()
                .iter()
                .map(|(a, b)| Poly::binomial(field, a, b))
                .collect();
            minimal_generators(&r, &bins).len()
        });
        Some(SurjectiveRow {
            monoid_kernel,
            ideal_mod_square: ideal_mod_square_dim(f),
            conormal: n.module.minimalize().rank,
            conormal_pushout: n.module.residue_dimension(),
        })
    } else {
        None
    };
    let mut report = FundamentalReport {
        omega_monoid,
        omega_ring,
        gp_cokernel,
        omega_log,
        omega_log_h0,
        gamma,
        surjective,
        consistent: false,
    };
    report.consistent = report_consistent(&report);
    Ok(report)
}

/// The checks asserted by the report: both routes to `Ω ⊗ k` agree and lie
/// within the bounds of the `H_0` row, the `Γ` identity, and both routes to
/// the conormal module agree within the bounds of its pushout.
pub fn report_consistent(r: &FundamentalReport) -> bool {
    let h0 = r.omega_log == r.omega_log_h0
        && r.omega_log <= r.omega_ring + r.gp_cokernel
        && r.omega_log + r.omega_monoid >= r.omega_ring + r.gp_cokernel;
    let h1 = r.surjective.is_none_or(|s| {
        s.conormal == s.conormal_pushout && s.conormal <= s.ideal_mod_square + r.gamma.ker_tensor
    });
    h0 && h1 && r.gamma.identity_holds()
}

/// The report as a verdict: holds iff consistent.
pub fn fundamental_verdict(f: &PrelogHom) -> Result<Verdict> {
    let r = fundamental_sequence_low_degree(f)?;
    let mut cert = Certificate::new("fundamental");
    cert.field = Some(f.target.ring.field());
    let mut put = |k: &str, v: usize| {
        cert.data.insert(k.into(), v as i64);
    };
    put("omega_monoid", r.omega_monoid);
    put("omega_ring", r.omega_ring);
    put("gp_cokernel", r.gp_cokernel);
    put("omega_log", r.omega_log);
    put("omega_log_h0", r.omega_log_h0);
    put("gamma", r.gamma.gamma);
    put("ker_tensor", r.gamma.ker_tensor);
    put("coker_tor1", r.gamma.coker_tor1);
    put("coker_tensor", r.gamma.coker_tensor);
    if let Some(s) = r.surjective {
        put("ideal_mod_square", s.ideal_mod_square);
        put("conormal", s.conormal);
        put("conormal_pushout", s.conormal_pushout);
        if let Some(k) = s.monoid_kernel {
            put("monoid_kernel", k);
        }
    }
    if !r.consistent {
        cert.reason = "low-degree dimensions are inconsistent".into();
    }
    Ok(Verdict::new(Status::from_bool(r.consistent), cert, Vec::new()))
}

/// Rebuilds the report's consistency from recorded dimensions.
pub fn fundamental_consistent_from_data(c: &Certificate) -> Option<bool> {
    let g = |k: &str| c.number(k).map(|v| v as usize);
    let surjective = match g("conormal") {
        Some(conormal) => Some(SurjectiveRow {
            monoid_kernel: g("monoid_kernel"),
            ideal_mod_square: g("ideal_mod_square")?,
            conormal,
            conormal_pushout: g("conormal_pushout")?,
        }),
        None => None,
    };
    let r = FundamentalReport {
        omega_monoid: g("omega_monoid")?,
        omega_ring: g("omega_ring")?,
        gp_cokernel: g("gp_cokernel")?,
        omega_log: g("omega_log")?,
        omega_log_h0: g("omega_log_h0")?,
        gamma: GammaDims {
            gamma: g("gamma")?,
            ker_tensor: g("ker_tensor")?,
            coker_tor1: g("coker_tor1")?,
            coker_tensor: g("coker_tensor")?,
        },
        surjective,
        consistent: false,
    };
    Some(report_consistent(&r))
}

/// `dim Hom`/`Ext^1` over `k` read off a Smith form: free rank plus the
/// invariant factors divisible by the characteristic.
pub fn snf_functor_dims(matrix: &IntMat, diag: &[BigInt], field: Field) -> (usize, usize) {
    let nonzero: Vec<&BigInt> = diag.iter().filter(|d| !num_traits::Zero::is_zero(*d)).collect();
    let rank = matrix.rows() - nonzero.len();
    let p = field.characteristic();
    let divisible = if p == 0 {
        0
    } else {
        let pb = BigInt::from(p);
        nonzero
            .iter()
            .filter(|d| num_traits::Signed::abs(**d) != BigInt::from(1) && num_integer::Integer::is_multiple_of(**d, &pb))
            .count()
    };
    (rank + divisible, divisible)
}
