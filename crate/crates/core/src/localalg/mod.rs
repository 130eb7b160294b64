//! Presented rings (global or local at the origin), finitely presented
//! modules, and the local tests built on them: minimal generators, Koszul
//! `H_1`, `Tor` against cyclic modules, regularity.

mod module;
mod ring;

pub use module::{homology, kernel, mat_vec, syzygies, Col, FpModule, Homology, ModMap, Submodule};
pub use ring::{coef_rank, dimension_from_leading, int_rank, PresentedRing, RingMode, RingSpec};

use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::verdict::{Certificate, Fact, Precondition, Status, Verdict};

/// Drops generators that are redundant modulo `m Q + I`. The survivors map
/// to a basis of `Q / m Q`.
pub fn minimal_generators(ring: &PresentedRing, q: &[Poly]) -> Vec<Poly> {
    let mut kept: Vec<Poly> = q.iter().filter(|p| !ring.is_zero(p)).cloned().collect();
    let mq: Vec<Poly> = kept
        .iter()
        .flat_map(|g| (0..ring.nvars()).map(move |i| (g, i)))
        .map(|(g, i)| g.mul(&ring.var(i)))
        .collect();
    let mut i = 0;
    while i < kept.len() {
        let mut others: Vec<Poly> = kept
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != i)
            .map(|(_, p)| p.clone())
            .collect();
        others.extend(mq.iter().cloned());
        if ring.ideal_contains(&others, &kept[i]) {
            kept.remove(i);
        } else {
            i += 1;
        }
    }
    kept
}

fn strings(ring: &PresentedRing, cols: &[Col]) -> Vec<Vec<String>> {
    cols.iter()
        .map(|c| c.iter().map(|p| ring.show(p)).collect())
        .collect()
}

pub fn dimension_fact(label: &str, ring: &PresentedRing) -> Fact {
    Fact::Dimension {
        label: label.into(),
        ring: ring.spec(),
        basis: ring.standard_basis().iter().map(|p| ring.show(p)).collect(),
        value: ring.krull_dimension(),
    }
}

pub fn embedding_fact(label: &str, ring: &PresentedRing) -> Fact {
    Fact::EmbeddingDimension {
        label: label.into(),
        ring: ring.spec(),
        value: ring.embedding_dimension(),
    }
}

pub fn homology_fact(
    label: &str,
    ring: &PresentedRing,
    f: &[Col],
    g: &[Col],
    rank_b: usize,
    rank_c: usize,
    h: &Homology,
) -> Fact {
    Fact::Homology {
        label: label.into(),
        ring: ring.spec(),
        ring_basis: ring.standard_basis().iter().map(|p| ring.show(p)).collect(),
        rank_b,
        rank_c,
        f: strings(ring, f),
        g: strings(ring, g),
        cycles: strings(ring, &h.cycles),
        boundary_basis: strings(ring, &h.boundary_basis),
        bounded: h.bounded.clone(),
        relations: strings(ring, &h.presentation.relations),
        dim: h.module.residue_dimension(),
    }
}

pub fn membership_fact(label: &str, sub_ring: &PresentedRing, rank: usize, generators: &[Col], elements: &[Col]) -> (Fact, Vec<bool>) {
    let sub = Submodule::new(sub_ring, rank, generators);
    let contained: Vec<bool> = elements.iter().map(|e| sub.contains(e)).collect();
    (
        Fact::Membership {
            label: label.into(),
            ring: sub_ring.spec(),
            ring_basis: sub_ring.standard_basis().iter().map(|p| sub_ring.show(p)).collect(),
            rank,
            generators: strings(sub_ring, generators),
            basis: strings(sub_ring, &sub.basis()),
            elements: strings(sub_ring, elements),
            contained: contained.clone(),
        },
        contained,
    )
}

/// Koszul differentials of `g`: `d1` is the row `(g_1 .. g_k)` as columns of
/// length one, `d2` has columns `g_j e_i - g_i e_j` for `i < j`.
pub fn koszul_differentials(ring: &PresentedRing, g: &[Poly]) -> (Vec<Col>, Vec<Col>) {
    let k = g.len();
    let d1: Vec<Col> = g.iter().map(|p| vec![p.clone()]).collect();
    let mut d2 = Vec::new();
    for i in 0..k {
        for j in i + 1..k {
            let mut c = vec![ring.zero(); k];
            c[i] = g[j].clone();
            c[j] = g[i].neg();
            d2.push(c);
        }
    }
    (d1, d2)
}

/// Whether `H_1` of the Koszul complex on `g` vanishes over the local ring,
/// i.e. whether the minimal system `g` is a regular sequence.
pub fn koszul_h1_vanishes(ring: &PresentedRing, g: &[Poly]) -> Result<Verdict> {
    let mut pre = vec![];
    if !ring.is_local() {
        return Err(Error::Precondition("Koszul test needs a local ring".into()));
    }
    if let Some(p) = g.iter().find(|p| !p.constant_term().is_zero()) {
        return Err(Error::Precondition(format!(
            "{} is not in the maximal ideal",
            ring.show(p)
        )));
    }
    pre.push(Precondition::ok("local ring, elements in the maximal ideal"));
    let mu = minimal_generators(ring, g).len();
    if mu < g.len() {
        return Err(Error::NotMinimal {
            minimal: mu,
            given: g.len(),
        });
    }
    pre.push(Precondition::ok("minimal system"));
    let mut cert = Certificate::new("koszul_h1");
    cert.field = Some(ring.field());
    cert.data.insert("length".into(), g.len() as i64);
    if g.is_empty() {
        return Ok(Verdict::new(Status::Holds, cert, pre));
    }
    let (d1, d2) = koszul_differentials(ring, g);
    let h = homology(ring, &d2, &d1, g.len(), &[], 1, &[]);
    cert.facts
        .push(homology_fact("koszul_h1", ring, &d2, &d1, g.len(), 1, &h));
    if let Some(w) = h.witness() {
        cert.reason = format!(
            "syzygy ({}) is not Koszul",
            h.cycles[w]
                .iter()
                .map(|p| ring.show(p))
                .collect::<Vec<_>>()
                .join(", ")
        );
    }
    Ok(Verdict::new(Status::from_bool(h.vanishes()), cert, pre))
}

/// `Tor_n^{R0}(A, R0/I')` for `n = 1, 2`, computed from a free resolution of
/// `R0/I'` over the global ring `R0`, base changed along `R0 -> A` given by
/// the images `phi` of `R0`'s variables.
#[derive(Clone, Debug)]
pub struct TorResult {
    pub degree: usize,
    /// `phi(d_n)` and `phi(d_{n+1})` over `A`.
    pub d_in: Vec<Col>,
    pub d_out: Vec<Col>,
    pub rank_in: usize,
    pub rank_out: usize,
    pub homology: Homology,
}

impl TorResult {
    pub fn vanishes(&self) -> bool {
        self.homology.vanishes()
    }

    pub fn dimension(&self) -> usize {
        self.homology.module.residue_dimension()
    }

    pub fn module(&self) -> &FpModule {
        &self.homology.module
    }

    pub fn fact(&self, label: &str, a: &PresentedRing) -> Fact {
        homology_fact(label, a, &self.d_out, &self.d_in, self.rank_out, self.rank_in, &self.homology)
    }
}

pub fn tor_cyclic(r0: &PresentedRing, a: &PresentedRing, phi: &[Poly], iprime: &[Poly], degree: usize) -> TorResult {
    assert!(degree == 1 || degree == 2, "only Tor_1 and Tor_2 are supported");
    assert_eq!(phi.len(), r0.nvars(), "one image per variable");
    let gens: Vec<Poly> = iprime.iter().filter(|p| !r0.is_zero(p)).cloned().collect();
    // resolution R0^{s3} -> R0^{s2} -> R0^{s} -> R0
    let d1: Vec<Col> = gens.iter().map(|p| vec![p.clone()]).collect();
    let s = d1.len();
    let d2 = syzygies(r0, &d1, 1);
    let d3 = if degree == 2 { syzygies(r0, &d2, s) } else { Vec::new() };
    let base_change = |cols: &[Col]| -> Vec<Col> {
        cols.iter()
            .map(|c| c.iter().map(|p| a.simplify(&p.compose(phi))).collect())
            .collect()
    };
    let (d_in, d_out, rank_in, rank_out) = match degree {
        1 => (base_change(&d1), base_change(&d2), 1, s),
        _ => (base_change(&d2), base_change(&d3), s, d2.len()),
    };
    let h = homology(a, &d_out, &d_in, rank_out, &[], rank_in, &[]);
    TorResult {
        degree,
        d_in,
        d_out,
        rank_in,
        rank_out,
        homology: h,
    }
}

/// Regular local ring test: embedding dimension equals Krull dimension.
pub fn is_regular_local(ring: &PresentedRing) -> Verdict {
    if !ring.is_local() {
        return Verdict::refused(
            "is_regular_local",
            vec![Precondition::failed("local ring", "ring is not in local mode")],
        );
    }
    let mut cert = Certificate::new("is_regular_local");
    let dim = ring.krull_dimension();
    let emb = ring.embedding_dimension();
    cert.facts.push(dimension_fact("dim", ring));
    cert.facts.push(embedding_fact("embdim", ring));
    cert.data.insert("dim".into(), dim as i64);
    cert.data.insert("embdim".into(), emb as i64);
    let status = if ring.is_zero_ring() {
        cert.reason = "zero ring".into();
        Status::Fails
    } else {
        Status::from_bool(dim == emb)
    };
    Verdict::new(status, cert, vec![Precondition::ok("local ring")])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::Field;

    fn local(vars: &[&str], ideal: &[&str]) -> PresentedRing {
        PresentedRing::parse(vars, Field::Rational, ideal, RingMode::Local).unwrap()
    }

    fn polys(r: &PresentedRing, v: &[&str]) -> Vec<Poly> {
        v.iter().map(|s| r.parse_poly(s).unwrap()).collect()
    }

    #[test]
    fn minimal_generator_examples() {
        let r = local(&["x"], &[]);
        assert_eq!(minimal_generators(&r, &polys(&r, &["x", "x + x^2"])).len(), 1);
        let r = local(&["x", "y"], &[]);
        assert_eq!(minimal_generators(&r, &polys(&r, &["x", "y"])).len(), 2);
        assert!(minimal_generators(&r, &[]).is_empty());
    }

    #[test]
    fn koszul_examples() {
        let r = local(&["x", "y"], &[]);
        let v = koszul_h1_vanishes(&r, &polys(&r, &["x", "y"])).unwrap();
        assert_eq!(v.status, Status::Holds);
        let node = local(&["x", "y"], &["x*y"]);
        let v = koszul_h1_vanishes(&node, &polys(&node, &["x", "y"])).unwrap();
        assert_eq!(v.status, Status::Fails);
        let v = koszul_h1_vanishes(&node, &[]).unwrap();
        assert_eq!(v.status, Status::Holds);
        let e = koszul_h1_vanishes(&r, &polys(&r, &["x", "x + x^2"])).unwrap_err();
        assert_eq!(e, Error::NotMinimal { minimal: 1, given: 2 });
    }

    #[test]
    fn full_regular_sequences() {
        for n in 1..=4 {
            let names: Vec<String> = (0..n).map(|i| format!("x{i}")).collect();
            let refs: Vec<&str> = names.iter().map(String::as_str).collect();
            let r = local(&refs, &[]);
            let g: Vec<Poly> = (0..n).map(|i| r.var(i)).collect();
            assert!(koszul_h1_vanishes(&r, &g).unwrap().holds(), "n = {n}");
        }
    }

    #[test]
    fn tor_examples() {
        let q = Field::Rational;
        let r0 = PresentedRing::parse(&["t"], q, &[], RingMode::Affine).unwrap();
        let a = local(&["t"], &[]);
        let t = tor_cyclic(&r0, &a, &[a.var(0)], &polys(&r0, &["t^2"]), 1);
        assert!(t.vanishes());
        assert_eq!(t.module().rank, 0);

        let r0 = PresentedRing::parse(&["u", "v"], q, &[], RingMode::Affine).unwrap();
        let node = local(&["x", "y"], &["x*y"]);
        let phi = vec![node.var(0), node.var(1)];
        let t = tor_cyclic(&r0, &node, &phi, &polys(&r0, &["u", "v"]), 1);
        assert!(!t.vanishes());
        assert_eq!(t.dimension(), 1);

        let t = tor_cyclic(&r0, &node, &phi, &polys(&r0, &["1"]), 1);
        assert!(t.vanishes());
    }

    #[test]
    fn regular_local_examples() {
        assert!(is_regular_local(&local(&["x", "y"], &[])).holds());
        assert_eq!(is_regular_local(&local(&["x", "y"], &["x*y"])).status, Status::Fails);
        assert!(is_regular_local(&local(&["x", "y"], &["y - x^2"])).holds());
    }
}
