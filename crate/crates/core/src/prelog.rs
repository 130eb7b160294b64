//! Prelog rings: a local ring, a monoid, and a multiplicative map sending
//! the monoid into the ring.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::localalg::{membership_fact, Col, PresentedRing, RingMode};
use crate::monoids::{Elem, FinMonoid, MonoidHom, MonoidIdeal};
use crate::poly::Poly;
use crate::verdict::{Certificate, Status, Verdict};

/// Distinct monoid elements examined by one preimage computation.
pub const CLASS_BUDGET: usize = 100_000;

#[derive(Clone, Debug)]
pub struct PrelogRing {
    pub ring: PresentedRing,
    pub monoid: FinMonoid,
    /// Image of each monoid generator.
    pub alpha: Vec<Poly>,
}

impl PrelogRing {
    pub fn new(ring: PresentedRing, monoid: FinMonoid, alpha: Vec<Poly>) -> Result<Self> {
        if ring.mode() != RingMode::Local {
            return Err(Error::Shape("a prelog ring needs a local ring".into()));
        }
        if alpha.len() != monoid.num_generators() {
            return Err(Error::Shape(format!(
                "{} images for {} monoid generators",
                alpha.len(),
                monoid.num_generators()
            )));
        }
        if alpha.iter().any(|p| p.nvars() != ring.nvars() || p.field() != ring.field()) {
            return Err(Error::Shape("images must live in the ring".into()));
        }
        let alpha = alpha.iter().map(|p| ring.simplify(p)).collect();
        Ok(PrelogRing { ring, monoid, alpha })
    }

    pub fn parse(ring: PresentedRing, monoid: FinMonoid, alpha: &[&str]) -> Result<Self> {
        let alpha = alpha
            .iter()
            .map(|s| ring.parse_poly(s))
            .collect::<std::result::Result<Vec<_>, _>>()?;
        Self::new(ring, monoid, alpha)
    }

    /// `α(e)` for an exponent row.
    pub fn alpha_of(&self, e: &[u32]) -> Poly {
        let mut out = self.ring.one();
        for (a, &k) in self.alpha.iter().zip(e) {
            if k > 0 {
                out = self.ring.simplify(&out.mul(&a.pow(k)));
            }
        }
        out
    }

    /// The maximal ideal, generated by the variables.
    pub fn maximal_ideal(&self) -> Vec<Poly> {
        (0..self.ring.nvars()).map(|i| self.ring.var(i)).collect()
    }

    /// Multiplicativity and locality of `α`.
    pub fn validate(&self) -> Verdict {
        let mut cert = Certificate::new("validate");
        cert.field = Some(self.ring.field());
        let f = self.ring.field();
        let binomials = self.monoid.algebra_ideal(f);
        let images: Vec<Col> = binomials
            .iter()
            .map(|b| vec![self.ring.simplify(&b.compose(&self.alpha))])
            .collect();
        let (fact, mult) = membership_fact("multiplicative", &self.ring, 1, &[], &images);
        cert.facts.push(fact);
        let units = self.monoid.unit_generators();
        let nonunits: Vec<usize> = (0..self.monoid.num_generators())
            .filter(|i| !units.contains(i))
            .collect();
        let local_elems: Vec<Col> = nonunits.iter().map(|&i| vec![self.alpha[i].clone()]).collect();
        let m: Vec<Col> = self.maximal_ideal().into_iter().map(|p| vec![p]).collect();
        let (fact, local) = membership_fact("local", &self.ring, 1, &m, &local_elems);
        cert.facts.push(fact);
        let mut reasons = Vec::new();
        if let Some(i) = mult.iter().position(|&b| !b) {
            reasons.push(format!(
                "relation {} is not respected: {} is nonzero",
                binomials[i].to_string_with(&self.monoid.names).replace(' ', ""),
                self.ring.show(&images[i][0])
            ));
        }
        if let Some(i) = local.iter().position(|&b| !b) {
            reasons.push(format!(
                "generator {} maps to a unit",
                self.monoid.names[nonunits[i]]
            ));
        }
        cert.reason = reasons.join("; ");
        let ok = mult.iter().chain(&local).all(|&b| b);
        Verdict::new(Status::from_bool(ok), cert, Vec::new())
    }

    fn quotient_ring(&self, j: &[Poly]) -> PresentedRing {
        self.ring.quotient(j)
    }

    /// Whether the ideal `j` is proper and inside the maximal ideal.
    pub fn inside_maximal(&self, j: &[Poly]) -> bool {
        j.iter().all(|p| !self.ring.is_unit_at_origin(p))
    }

    /// Generators of `α^{-1}(J)`.
    ///
    /// Exact when `α` sends every non-unit generator into `J`, or when `J`
    /// contains a power of the maximal ideal reachable within twice the
    /// degree bound; otherwise complete means one further degree layer
    /// brought no new generator.
    pub fn monoid_preimage_ideal(&self, j: &[Poly], degree_bound: u32) -> Result<Preimage> {
        if !self.inside_maximal(j) {
            return Err(Error::Precondition("the ideal must lie in the maximal ideal".into()));
        }
        let q = self.quotient_ring(j);
        let units = self.monoid.unit_generators();
        let g = self.monoid.num_generators();
        let nonunits: Vec<usize> = (0..g).filter(|i| !units.contains(i)).collect();
        if !nonunits.is_empty() && nonunits.iter().all(|&i| q.is_zero(&self.alpha[i])) {
            return Ok(Preimage {
                ideal: MonoidIdeal {
                    generators: nonunits.iter().map(|&i| self.monoid.generator(i)).collect(),
                },
                complete: true,
                method: PreimageMethod::Generators,
                bound: 1,
            });
        }
        let primary = if units.is_empty() {
            primary_degree(&q, 2 * degree_bound.max(1)).filter(|&d| d <= 2 * degree_bound.max(1))
        } else {
            None
        };
        let (top, method) = match primary {
            Some(d) => (d, PreimageMethod::PowerOfMaximal),
            None => (degree_bound + 1, PreimageMethod::Layer),
        };
        let mut gens: Vec<Elem> = Vec::new();
        let mut member = self.monoid.ideal_membership(&gens);
        let mut seen = BTreeSet::new();
        let mut last_new = 0;
        for d in 0..=top {
            let mut layer = Vec::new();
            crate::monoids::rows_of_degree(g, d, &mut vec![0; g], 0, &mut layer);
            for e in layer {
                if !seen.insert(self.monoid.normal_form(&e)) {
                    continue;
                }
                if seen.len() > CLASS_BUDGET {
                    return Err(Error::BudgetExceeded(CLASS_BUDGET));
                }
                if member.contains(&e) {
                    continue;
                }
                if q.is_zero(&self.alpha_of(&e)) {
                    gens.push(e);
                    member = self.monoid.ideal_membership(&gens);
                    last_new = d;
                }
            }
        }
        let complete = match method {
            PreimageMethod::Layer => gens.is_empty() || last_new < top,
            _ => true,
        };
        Ok(Preimage {
            ideal: MonoidIdeal { generators: gens },
            complete,
            method,
            bound: top,
        })
    }

    /// `I = <α(α^{-1}(J))>`, the ideal generated by the monoid part of `J`.
    pub fn log_ideal(&self, j: &[Poly], degree_bound: u32) -> Result<Vec<Poly>> {
        let pre = self.monoid_preimage_ideal(j, degree_bound)?;
        if !pre.complete {
            return Err(Error::Precondition(format!(
                "monoid preimage is incomplete at degree bound {degree_bound}"
            )));
        }
        Ok(self.ideal_of(&pre.ideal))
    }

    /// `<α(m) : m ∈ gens>`.
    pub fn ideal_of(&self, ideal: &MonoidIdeal) -> Vec<Poly> {
        ideal
            .generators
            .iter()
            .map(|e| self.alpha_of(e))
            .filter(|p| !p.is_zero())
            .collect()
    }

    /// `(A/J, M/α^{-1}(J))` with the induced map.
    pub fn quotient_prelog(&self, j: &[Poly], degree_bound: u32) -> Result<PrelogRing> {
        let pre = self.monoid_preimage_ideal(j, degree_bound)?;
        if !pre.complete {
            return Err(Error::Precondition(format!(
                "monoid preimage is incomplete at degree bound {degree_bound}"
            )));
        }
        let ring = self.quotient_ring(j);
        let monoid = self.monoid.quotient_by_ideal(&pre.ideal)?;
        let alpha = self.alpha.iter().map(|p| ring.simplify(p)).collect();
        PrelogRing::new(ring, monoid, alpha)
    }

    /// The same data with generators permuted: generator `i` of the result
    /// is generator `perm[i]` of `self`.
    pub fn permute_generators(&self, perm: &[usize]) -> Result<PrelogRing> {
        let m = &self.monoid;
        let pick = |e: &Elem| -> Elem { perm.iter().map(|&i| e[i]).collect() };
        let monoid = FinMonoid::new(
            perm.iter().map(|&i| m.names[i].clone()).collect(),
            m.relations.iter().map(|(a, b)| (pick(a), pick(b))).collect(),
            m.ideal.iter().map(pick).collect(),
        )?;
        let alpha = perm.iter().map(|&i| self.alpha[i].clone()).collect();
        PrelogRing::new(self.ring.clone(), monoid, alpha)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PreimageMethod {
    /// Every non-unit generator lies in the preimage.
    Generators,
    /// `J` contains a power of the maximal ideal; enumeration is exhaustive.
    PowerOfMaximal,
    /// Layer-by-layer search.
    Layer,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Preimage {
    pub ideal: MonoidIdeal,
    pub complete: bool,
    pub method: PreimageMethod,
    /// Highest degree examined.
    pub bound: u32,
}

/// Smallest `d <= cap` with `m^d = 0` in the local ring `q`, if any.
fn primary_degree(q: &PresentedRing, cap: u32) -> Option<u32> {
    let n = q.nvars();
    let mut total = 1u32;
    for i in 0..n {
        let x = q.var(i);
        let k = (1..=cap).find(|&k| q.is_zero(&x.pow(k)))?;
        total += k - 1;
    }
    // every monoid element of degree `total` maps into m^total
    Some(total.max(1))
}

/// A homomorphism of prelog rings.
#[derive(Clone, Debug)]
pub struct PrelogHom {
    pub source: PrelogRing,
    pub target: PrelogRing,
    /// Images of the source ring's variables in the target ring.
    pub ring_map: Vec<Poly>,
    pub monoid_map: MonoidHom,
}

impl PrelogHom {
    pub fn new(source: PrelogRing, target: PrelogRing, ring_map: Vec<Poly>, monoid_images: Vec<Elem>) -> Result<Self> {
        if ring_map.len() != source.ring.nvars() {
            return Err(Error::Shape("one image per source variable".into()));
        }
        let monoid_map = MonoidHom::new(source.monoid.clone(), target.monoid.clone(), monoid_images)?;
        let ring_map: Vec<Poly> = ring_map.iter().map(|p| target.ring.simplify(p)).collect();
        let h = PrelogHom {
            source,
            target,
            ring_map,
            monoid_map,
        };
        h.check()?;
        Ok(h)
    }

    pub fn parse(source: PrelogRing, target: PrelogRing, ring_map: &[&str], monoid_images: Vec<Elem>) -> Result<Self> {
        let images = ring_map
            .iter()
            .map(|s| target.ring.parse_poly(s))
            .collect::<std::result::Result<Vec<_>, _>>()?;
        Self::new(source, target, images, monoid_images)
    }

    /// Applies the ring map to a polynomial in the source variables.
    pub fn map_poly(&self, p: &Poly) -> Poly {
        self.target.ring.simplify(&p.compose(&self.ring_map))
    }

    fn check(&self) -> Result<()> {
        let t = &self.target.ring;
        for g in self.source.ring.ideal() {
            if !t.is_zero(&self.map_poly(g)) {
                return Err(Error::IllFormedMap(format!(
                    "relation {} does not map to zero",
                    self.source.ring.show(g)
                )));
            }
        }
        for (i, p) in self.ring_map.iter().enumerate() {
            if t.is_unit_at_origin(p) {
                return Err(Error::IllFormedMap(format!(
                    "variable {} maps outside the maximal ideal",
                    self.source.ring.vars()[i]
                )));
            }
        }
        for i in 0..self.source.monoid.num_generators() {
            let lhs = self.target.alpha_of(&self.monoid_map.images[i]);
            let rhs = self.map_poly(&self.source.alpha[i]);
            if !t.is_zero(&lhs.sub(&rhs)) {
                return Err(Error::IllFormedMap(format!(
                    "square does not commute on generator {}",
                    self.source.monoid.names[i]
                )));
            }
        }
        Ok(())
    }

    pub fn identity(p: &PrelogRing) -> Self {
        PrelogHom {
            source: p.clone(),
            target: p.clone(),
            ring_map: (0..p.ring.nvars()).map(|i| p.ring.var(i)).collect(),
            monoid_map: MonoidHom::identity(&p.monoid),
        }
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &PrelogHom) -> Result<PrelogHom> {
        let ring_map = self.ring_map.iter().map(|p| other.map_poly(p)).collect();
        let images = self
            .monoid_map
            .images
            .iter()
            .map(|e| other.monoid_map.apply(e))
            .collect();
        PrelogHom::new(self.source.clone(), other.target.clone(), ring_map, images)
    }

    /// Same variables on both sides with the identity ring map.
    pub fn is_quotient_map(&self) -> bool {
        self.source.ring.vars() == self.target.ring.vars()
            && self
                .ring_map
                .iter()
                .enumerate()
                .all(|(i, p)| self.target.ring.is_zero(&p.sub(&self.target.ring.var(i))))
    }
}

/// The structure map `(K, 1) -> (A, M)` from the base field.
pub fn base_point(field: crate::arith::Field) -> PrelogRing {
    let ring = PresentedRing::polynomial(&[], field, RingMode::Local);
    PrelogRing::new(ring, FinMonoid::trivial(), Vec::new()).expect("base point")
}

pub fn from_base(p: &PrelogRing) -> PrelogHom {
    let base = base_point(p.ring.field());
    PrelogHom::new(base, p.clone(), Vec::new(), Vec::new()).expect("maps from the base point")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::Field;

    pub(crate) fn log_point() -> PrelogRing {
        let r = PresentedRing::parse(&["s", "t"], Field::Rational, &[], RingMode::Local).unwrap();
        PrelogRing::parse(r, FinMonoid::free(&["a", "b"]), &["s", "t"]).unwrap()
    }

    fn line() -> PrelogRing {
        let r = PresentedRing::parse(&["t"], Field::Rational, &[], RingMode::Local).unwrap();
        PrelogRing::parse(r, FinMonoid::free(&["a"]), &["t"]).unwrap()
    }

    #[test]
    fn validation() {
        assert!(log_point().validate().holds());
        let node = PresentedRing::parse(&["x", "y"], Field::Rational, &["x*y"], RingMode::Local).unwrap();
        let p = PrelogRing::parse(node, FinMonoid::free(&["a", "b"]), &["x", "y"]).unwrap();
        assert!(p.validate().holds());
        let r = PresentedRing::parse(&["x"], Field::Rational, &[], RingMode::Local).unwrap();
        let m = FinMonoid::parse(&["a"], &["2*a = 3*a"], &[]).unwrap();
        let v = PrelogRing::parse(r.clone(), m, &["x"]).unwrap().validate();
        assert_eq!(v.status, Status::Fails);
        assert!(v.certificate.reason.contains("not respected"));
        let v = PrelogRing::parse(r, FinMonoid::free(&["a"]), &["1 + x"]).unwrap().validate();
        assert_eq!(v.status, Status::Fails);
    }

    #[test]
    fn preimages() {
        let p = log_point();
        let pre = p.monoid_preimage_ideal(&p.maximal_ideal(), 8).unwrap();
        assert!(pre.complete);
        assert_eq!(pre.ideal.generators, vec![vec![1, 0], vec![0, 1]]);
        let l = line();
        let t2 = vec![l.ring.parse_poly("t^2").unwrap()];
        let pre = l.monoid_preimage_ideal(&t2, 8).unwrap();
        assert!(pre.complete);
        assert_eq!(pre.ideal.generators, vec![vec![2]]);
        assert_eq!(l.log_ideal(&t2, 8).unwrap(), t2);
        let st = vec![p.ring.parse_poly("s + t").unwrap()];
        let pre = p.monoid_preimage_ideal(&st, 6).unwrap();
        assert!(pre.complete && pre.ideal.is_empty());
        assert!(p.log_ideal(&st, 6).unwrap().is_empty());
    }

    #[test]
    fn quotient_prelog_rings() {
        let l = line();
        let t2 = vec![l.ring.parse_poly("t^2").unwrap()];
        let q = l.quotient_prelog(&t2, 8).unwrap();
        assert!(q.monoid.is_pointed());
        assert!(q.validate().holds());
        // rerunning on the quotient gives back the image ideal
        let pre = q.monoid_preimage_ideal(&t2, 8).unwrap();
        assert!(pre.complete);
        assert_eq!(pre.ideal.generators, vec![vec![2]]);
        assert!(pre.ideal.generators.iter().all(|e| q.monoid.is_absorbing(e)));
    }

    #[test]
    fn permuted_generators_still_validate() {
        let p = log_point().permute_generators(&[1, 0]).unwrap();
        assert!(p.validate().holds());
        assert_eq!(p.monoid.names, vec!["b", "a"]);
    }

    #[test]
    fn homomorphisms() {
        let p = log_point();
        let id = PrelogHom::identity(&p);
        assert!(id.is_quotient_map());
        let l = line();
        // t -> s*t, a -> a + b
        let h = PrelogHom::parse(l.clone(), p.clone(), &["s*t"], vec![vec![1, 1]]).unwrap();
        assert!(!h.is_quotient_map());
        assert!(PrelogHom::parse(l, p.clone(), &["s"], vec![vec![1, 1]]).is_err());
        assert!(from_base(&p).then(&id).is_ok());
    }
}
