use std::fmt;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::arith::{Coef, Field};
use crate::error::{Error, ParseError, Result};
use crate::groebner::{Engine, MVec, ModOrder, MonoOrder};
use crate::intmat::IntMat;
use crate::poly::{Mono, Poly};

/// How a presented ring is read: graded and affine rings are global
/// (degrevlex Gröbner bases), local rings are localized at the origin
/// (negative degrevlex standard bases).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RingMode {
    Graded,
    Affine,
    Local,
}

impl RingMode {
    pub fn order(&self) -> MonoOrder {
        match self {
            RingMode::Local => MonoOrder::NegDegRevLex,
            _ => MonoOrder::DegRevLex,
        }
    }
}

impl fmt::Display for RingMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RingMode::Graded => "graded",
            RingMode::Affine => "affine",
            RingMode::Local => "local",
        })
    }
}

/// `K[x_1..x_n] / I`, possibly localized at the origin.
#[derive(Clone, Debug)]
pub struct PresentedRing {
    vars: Vec<String>,
    field: Field,
    ideal: Vec<Poly>,
    mode: RingMode,
    sb: OnceLock<Vec<Poly>>,
    global: OnceLock<Vec<Poly>>,
}

impl PartialEq for PresentedRing {
    fn eq(&self, o: &Self) -> bool {
        self.vars == o.vars && self.field == o.field && self.ideal == o.ideal && self.mode == o.mode
    }
}

impl Eq for PresentedRing {}

/// Serializable form with polynomials written out.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RingSpec {
    pub vars: Vec<String>,
    pub field: Field,
    pub ideal: Vec<String>,
    pub mode: RingMode,
}

impl PresentedRing {
    /// Checks the mode invariants: local generators vanish at the origin,
    /// graded generators are homogeneous.
    pub fn new(vars: Vec<String>, field: Field, ideal: Vec<Poly>, mode: RingMode) -> Result<Self> {
        for p in &ideal {
            if p.nvars() != vars.len() || p.field() != field {
                return Err(Error::Shape("ideal generator from another ring".into()));
            }
            match mode {
                RingMode::Local if !p.constant_term().is_zero() => {
                    return Err(Error::Precondition(format!(
                        "local ring generator {} does not vanish at the origin",
                        p.to_string_with(&vars)
                    )));
                }
                RingMode::Graded if !p.is_homogeneous() => {
                    return Err(Error::Precondition(format!(
                        "graded ring generator {} is not homogeneous",
                        p.to_string_with(&vars)
                    )));
                }
                _ => {}
            }
        }
        Ok(Self::new_unchecked(vars, field, ideal, mode))
    }

    pub(crate) fn new_unchecked(vars: Vec<String>, field: Field, ideal: Vec<Poly>, mode: RingMode) -> Self {
        let ideal = ideal.into_iter().filter(|p| !p.is_zero()).collect();
        PresentedRing {
            vars,
            field,
            ideal,
            mode,
            sb: OnceLock::new(),
            global: OnceLock::new(),
        }
    }

    pub fn polynomial(vars: &[&str], field: Field, mode: RingMode) -> Self {
        Self::new_unchecked(vars.iter().map(|s| s.to_string()).collect(), field, Vec::new(), mode)
    }

    /// Builds a ring from variable names and generator strings.
    pub fn parse(vars: &[&str], field: Field, ideal: &[&str], mode: RingMode) -> Result<Self> {
        let names: Vec<String> = vars.iter().map(|s| s.to_string()).collect();
        let gens = ideal
            .iter()
            .map(|s| Poly::parse(s, &names, field))
            .collect::<std::result::Result<Vec<_>, ParseError>>()?;
        Self::new(names, field, gens, mode)
    }

    pub fn from_spec(s: &RingSpec) -> Result<Self> {
        let gens = s
            .ideal
            .iter()
            .map(|p| Poly::parse(p, &s.vars, s.field))
            .collect::<std::result::Result<Vec<_>, ParseError>>()?;
        Ok(Self::new_unchecked(s.vars.clone(), s.field, gens, s.mode))
    }

    /// A ring with a known standard basis for its own order, e.g. one read
    /// back from a verified certificate.
    pub fn with_standard_basis(s: &RingSpec, basis: Vec<Poly>) -> Result<Self> {
        let r = Self::from_spec(s)?;
        let _ = r.sb.set(basis);
        Ok(r)
    }

    pub fn spec(&self) -> RingSpec {
        RingSpec {
            vars: self.vars.clone(),
            field: self.field,
            ideal: self.ideal.iter().map(|p| self.show(p)).collect(),
            mode: self.mode,
        }
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn mode(&self) -> RingMode {
        self.mode
    }

    pub fn ideal(&self) -> &[Poly] {
        &self.ideal
    }

    pub fn is_local(&self) -> bool {
        self.mode == RingMode::Local
    }

    pub fn with_mode(&self, mode: RingMode) -> Self {
        Self::new_unchecked(self.vars.clone(), self.field, self.ideal.clone(), mode)
    }

    pub fn order(&self) -> MonoOrder {
        self.mode.order()
    }

    pub fn var(&self, i: usize) -> Poly {
        Poly::var(self.nvars(), self.field, i)
    }

    pub fn zero(&self) -> Poly {
        Poly::zero(self.nvars(), self.field)
    }

    pub fn one(&self) -> Poly {
        Poly::one(self.nvars(), self.field)
    }

    pub fn constant(&self, c: i64) -> Poly {
        Poly::constant(self.nvars(), self.field, self.field.from_i64(c))
    }

    pub fn parse_poly(&self, s: &str) -> std::result::Result<Poly, ParseError> {
        Poly::parse(s, &self.vars, self.field)
    }

    pub fn show(&self, p: &Poly) -> String {
        p.to_string_with(&self.vars)
    }

    /// Standard basis of the ideal for the ring's own order.
    pub fn standard_basis(&self) -> &[Poly] {
        self.sb.get_or_init(|| {
            crate::groebner::ideal_basis(&self.ideal, self.nvars(), self.field, self.order())
        })
    }

    /// Reduced degrevlex Gröbner basis, used for exact simplification of
    /// representatives (normal forms that differ by elements of the ideal).
    pub fn global_basis(&self) -> &[Poly] {
        if self.order() == MonoOrder::DegRevLex {
            return self.standard_basis();
        }
        self.global.get_or_init(|| {
            crate::groebner::ideal_basis(&self.ideal, self.nvars(), self.field, MonoOrder::DegRevLex)
        })
    }

    /// A representative of `p` modulo the ideal; equal classes give equal
    /// representatives in global modes.
    pub fn simplify(&self, p: &Poly) -> Poly {
        crate::groebner::ideal_reduce(p, self.global_basis(), MonoOrder::DegRevLex)
    }

    /// Zero test in the ring (local rings: in the localization).
    pub fn is_zero(&self, p: &Poly) -> bool {
        crate::groebner::ideal_reduce(p, self.standard_basis(), self.order()).is_zero()
    }

    /// Membership of `p` in the ideal generated by `gens` plus the ring's ideal.
    pub fn ideal_contains(&self, gens: &[Poly], p: &Poly) -> bool {
        let sb = self.ideal_sb(gens);
        crate::groebner::ideal_reduce(p, &sb, self.order()).is_zero()
    }

    /// Standard basis of `gens + I` in the ring's order.
    pub fn ideal_sb(&self, gens: &[Poly]) -> Vec<Poly> {
        let mut all: Vec<Poly> = self.standard_basis().to_vec();
        all.extend(gens.iter().cloned());
        crate::groebner::ideal_basis(&all, self.nvars(), self.field, self.order())
    }

    pub fn is_zero_ring(&self) -> bool {
        self.standard_basis().iter().any(|g| {
            let e = Engine::ideal(self.nvars(), self.field, self.order());
            MVec::from_poly(&e.order, g).lead_term().mono.is_one()
        })
    }

    /// A unit of the local ring at the origin.
    pub fn is_unit_at_origin(&self, p: &Poly) -> bool {
        !p.constant_term().is_zero()
    }

    pub fn quotient(&self, extra: &[Poly]) -> Self {
        let mut ideal = self.ideal.clone();
        ideal.extend(extra.iter().filter(|p| !p.is_zero()).cloned());
        Self::new_unchecked(self.vars.clone(), self.field, ideal, self.mode)
    }

    /// Leading monomials of the standard basis.
    pub fn leading_monomials(&self) -> Vec<Mono> {
        let e = Engine::ideal(self.nvars(), self.field, self.order());
        self.standard_basis()
            .iter()
            .map(|g| MVec::from_poly(&e.order, g).lead_term().mono.clone())
            .collect()
    }

    /// Krull dimension (at the origin in local mode) read off the leading
    /// ideal. The zero ring is reported as dimension 0.
    pub fn krull_dimension(&self) -> usize {
        dimension_from_leading(&self.leading_monomials(), self.nvars()).unwrap_or(0)
    }

    /// `dim_K m/m^2` at the origin: variables minus the rank of the linear
    /// parts of the generators. Assumes the generators vanish at the origin.
    pub fn embedding_dimension(&self) -> usize {
        self.nvars() - self.linear_part_rank()
    }

    pub fn linear_part_rank(&self) -> usize {
        let rows: Vec<Vec<Coef>> = self.ideal.iter().map(Poly::linear_part).collect();
        coef_rank(&rows, self.nvars())
    }

    /// Substitution `x_i -> images[i]` applied to a polynomial of this ring.
    pub fn map_poly(p: &Poly, images: &[Poly]) -> Poly {
        p.compose(images)
    }

    pub fn module_engine(&self, rank: usize, split: usize) -> Engine {
        Engine::new(self.nvars(), rank, self.field, ModOrder::with_split(self.order(), split))
    }
}

/// Largest set of variables containing the support of no leading monomial;
/// `None` when a leading monomial is constant.
pub fn dimension_from_leading(leading: &[Mono], n: usize) -> Option<usize> {
    if leading.iter().any(Mono::is_one) {
        return None;
    }
    let supports: Vec<u64> = leading
        .iter()
        .map(|m| {
            m.0.iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .fold(0u64, |acc, (i, _)| acc | (1 << i))
        })
        .collect();
    assert!(n < 64, "too many variables for the dimension search");
    let mut best = 0;
    for s in 0u64..(1u64 << n) {
        let size = s.count_ones() as usize;
        if size > best && supports.iter().all(|&sup| sup & !s != 0) {
            best = size;
        }
    }
    Some(best)
}

/// Rank of a coefficient matrix given by rows.
pub fn coef_rank(rows: &[Vec<Coef>], ncols: usize) -> usize {
    let mut a: Vec<Vec<Coef>> = rows.to_vec();
    let mut rank = 0;
    for c in 0..ncols {
        let Some(piv) = (rank..a.len()).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(rank, piv);
        let inv = a[rank][c].inv();
        for i in 0..a.len() {
            if i != rank && !a[i][c].is_zero() {
                let f = &a[i][c] * &inv;
                for j in 0..ncols {
                    let v = &a[i][j] - &(&f * &a[rank][j]);
                    a[i][j] = v;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Rank of an integer matrix read in the field.
pub fn int_rank(m: &IntMat, field: Field) -> usize {
    m.rank_mod(field.characteristic())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dimensions() {
        let q = Field::Rational;
        let r = PresentedRing::parse(&["x", "y"], q, &[], RingMode::Local).unwrap();
        assert_eq!(r.krull_dimension(), 2);
        let r = PresentedRing::parse(&["x", "y"], q, &["x*y"], RingMode::Local).unwrap();
        assert_eq!(r.krull_dimension(), 1);
        assert_eq!(r.embedding_dimension(), 2);
        let r = PresentedRing::parse(&["u", "v", "w"], q, &["u*w - v^2"], RingMode::Local).unwrap();
        assert_eq!(r.krull_dimension(), 2);
        let r = PresentedRing::parse(&["x", "y"], q, &["y - x^2"], RingMode::Local).unwrap();
        assert_eq!((r.krull_dimension(), r.embedding_dimension()), (1, 1));
    }

    #[test]
    fn local_versus_global_dimension() {
        // (x(1 - x)) is the origin plus the point x = 1; locally it is x = 0
        let q = Field::Rational;
        let l = PresentedRing::parse(&["x", "y"], q, &["x - x^2"], RingMode::Local).unwrap();
        assert!(l.is_zero(&l.parse_poly("x").unwrap()));
        let a = l.with_mode(RingMode::Affine);
        assert!(!a.is_zero(&a.parse_poly("x").unwrap()));
    }

    #[test]
    fn mode_invariants() {
        let q = Field::Rational;
        assert!(PresentedRing::parse(&["x"], q, &["1 + x"], RingMode::Local).is_err());
        assert!(PresentedRing::parse(&["x"], q, &["x + x^2"], RingMode::Graded).is_err());
        assert!(PresentedRing::parse(&["x"], q, &["1 + x"], RingMode::Affine).is_ok());
    }

    #[test]
    fn dimension_is_invariant_under_permutation_and_redundancy() {
        let q = Field::Rational;
        let a = PresentedRing::parse(&["x", "y", "z"], q, &["x*y", "y*z"], RingMode::Local).unwrap();
        let b = PresentedRing::parse(&["z", "y", "x"], q, &["x*y", "y*z", "x*y^2*z"], RingMode::Local).unwrap();
        assert_eq!(a.krull_dimension(), b.krull_dimension());
        assert_eq!(a.krull_dimension(), 2);
    }
}
