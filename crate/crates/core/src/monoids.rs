//! Finitely presented commutative monoids, written additively on exponent
//! rows of a fixed generating set.
//!
//! Congruence is decided in the monoid algebra: two rows are equal in the
//! monoid exactly when the corresponding monomials have the same normal form
//! modulo the binomial ideal.

use std::collections::BTreeSet;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::abgroups::{kernel_cokernel, smith_normal_form, AbGroupMap, FgAbGroup};
use crate::arith::Field;
use crate::error::{Error, ParseError, Result};
use crate::groebner::{ideal_basis, ideal_reduce, MonoOrder};
use crate::intmat::IntMat;
use crate::localalg::{membership_fact, PresentedRing, RingMode};
use crate::poly::{Mono, Poly};
use crate::verdict::{Certificate, Fact, Precondition, Status, Verdict};

/// An element: one exponent per generator.
pub type Elem = Vec<u32>;

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FinMonoid {
    pub names: Vec<String>,
    pub relations: Vec<(Elem, Elem)>,
    /// Generators of the ideal collapsed to the absorbing element; empty for
    /// an ordinary monoid.
    #[serde(default)]
    pub ideal: Vec<Elem>,
    #[serde(skip)]
    gb: OnceLock<Vec<Poly>>,
}

impl PartialEq for FinMonoid {
    fn eq(&self, o: &Self) -> bool {
        self.names == o.names && self.relations == o.relations && self.ideal == o.ideal
    }
}

impl Eq for FinMonoid {}

/// A monoid ideal given by generators.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MonoidIdeal {
    pub generators: Vec<Elem>,
}

impl MonoidIdeal {
    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }
}

impl FinMonoid {
    pub fn new(names: Vec<String>, relations: Vec<(Elem, Elem)>, ideal: Vec<Elem>) -> Result<Self> {
        let g = names.len();
        for (a, b) in &relations {
            if a.len() != g || b.len() != g {
                return Err(Error::Shape("relation row has the wrong length".into()));
            }
        }
        if ideal.iter().any(|i| i.len() != g) {
            return Err(Error::Shape("ideal row has the wrong length".into()));
        }
        Ok(FinMonoid {
            names,
            relations,
            ideal,
            gb: OnceLock::new(),
        })
    }

    /// `N^g` with the given generator names.
    pub fn free(names: &[&str]) -> Self {
        Self::new(names.iter().map(|s| s.to_string()).collect(), Vec::new(), Vec::new()).expect("free monoid")
    }

    pub fn free_n(g: usize) -> Self {
        let names: Vec<String> = (0..g).map(|i| format!("e{}", i + 1)).collect();
        Self::new(names, Vec::new(), Vec::new()).expect("free monoid")
    }

    pub fn trivial() -> Self {
        Self::free(&[])
    }

    /// Parses relations written like `a+b = 2*b`.
    pub fn parse(names: &[&str], relations: &[&str], ideal: &[&str]) -> Result<Self> {
        let names: Vec<String> = names.iter().map(|s| s.to_string()).collect();
        let rels = relations
            .iter()
            .map(|r| parse_relation(r, &names))
            .collect::<std::result::Result<Vec<_>, _>>()?;
        let ideal = ideal
            .iter()
            .map(|e| parse_element(e, &names))
            .collect::<std::result::Result<Vec<_>, _>>()?;
        Self::new(names, rels, ideal)
    }

    pub fn num_generators(&self) -> usize {
        self.names.len()
    }

    pub fn is_pointed(&self) -> bool {
        !self.ideal.is_empty()
    }

    pub fn zero(&self) -> Elem {
        vec![0; self.num_generators()]
    }

    pub fn generator(&self, i: usize) -> Elem {
        let mut e = self.zero();
        e[i] = 1;
        e
    }

    pub fn show(&self, e: &[u32]) -> String {
        element_string(e, &self.names)
    }

    /// Binomial (and pointed) generators of the defining ideal of `K[M]`.
    pub fn algebra_ideal(&self, field: Field) -> Vec<Poly> {
        let mut gens: Vec<Poly> = self
            .relations
            .iter()
            .map(|(a, b)| Poly::binomial(field, a, b))
            .filter(|p| !p.is_zero())
            .collect();
        gens.extend(pointed_binomials(field, &self.ideal, self.num_generators()));
        gens
    }

    /// `K[M]` as an affine ring in the generator names. For a pointed monoid
    /// the absorbing element stays a basis element, so this is `K[M]/𝔞` with
    /// `𝔞` spanned by differences of ideal elements.
    pub fn algebra(&self, field: Field) -> PresentedRing {
        PresentedRing::new(self.names.clone(), field, self.algebra_ideal(field), RingMode::Affine)
            .expect("binomial ideal is well formed")
    }

    fn basis(&self) -> &[Poly] {
        self.gb.get_or_init(|| {
            ideal_basis(
                &self.algebra_ideal(Field::Rational),
                self.num_generators(),
                Field::Rational,
                MonoOrder::DegRevLex,
            )
        })
    }

    /// Canonical representative of an element.
    pub fn normal_form(&self, e: &[u32]) -> Elem {
        let m = Poly::monomial(Field::Rational, Mono(e.to_vec()), Field::Rational.one());
        let r = ideal_reduce(&m, self.basis(), MonoOrder::DegRevLex);
        r.as_monomial()
            .map(|m| m.0.clone())
            .expect("normal form of a monomial modulo a binomial ideal is a monomial")
    }

    pub fn equal(&self, a: &[u32], b: &[u32]) -> bool {
        self.normal_form(a) == self.normal_form(b)
    }

    pub fn add(&self, a: &[u32], b: &[u32]) -> Elem {
        a.iter().zip(b).map(|(x, y)| x + y).collect()
    }

    /// Whether `e` is the absorbing element (pointed monoids only).
    pub fn is_absorbing(&self, e: &[u32]) -> bool {
        self.ideal.first().is_some_and(|z| self.equal(e, z))
    }

    /// Membership of `e` in the monoid ideal generated by `gens`.
    pub fn in_ideal(&self, gens: &[Elem], e: &[u32]) -> bool {
        self.ideal_membership(gens).contains(e)
    }

    /// Membership tester for the monoid ideal generated by `gens`: `K[M]`
    /// modulo the monomials of the ideal has the complement as a basis.
    pub fn ideal_membership(&self, gens: &[Elem]) -> IdealMembership {
        let f = Field::Rational;
        let basis = if gens.is_empty() {
            Vec::new()
        } else {
            let mut all = self.basis().to_vec();
            all.extend(gens.iter().map(|g| Poly::monomial(f, Mono(g.clone()), f.one())));
            ideal_basis(&all, self.num_generators(), f, MonoOrder::DegRevLex)
        };
        IdealMembership { basis }
    }

    /// Number of distinct elements among exponent rows of total degree at
    /// most `d` (standard monomials of the binomial ideal).
    pub fn count_normal_forms(&self, d: u32) -> usize {
        let mut seen = BTreeSet::new();
        for e in rows_up_to(self.num_generators(), d) {
            seen.insert(self.normal_form(&e));
        }
        seen.len()
    }

    /// Integer relation matrix of `M^gp` (relations as columns). Pointed
    /// monoids complete to the trivial group.
    pub fn gp_presentation(&self) -> IntMat {
        let g = self.num_generators();
        let mut cols: Vec<Vec<BigInt>> = self
            .relations
            .iter()
            .map(|(a, b)| a.iter().zip(b).map(|(x, y)| BigInt::from(*x as i64 - *y as i64)).collect())
            .collect();
        if self.is_pointed() {
            for i in 0..g {
                let mut c = vec![BigInt::zero(); g];
                c[i] = BigInt::from(1);
                cols.push(c);
            }
        }
        IntMat::from_columns(g, &cols)
    }

    /// `M^gp`, defined for every monoid (trivial when pointed).
    pub fn gp(&self) -> FgAbGroup {
        FgAbGroup::from_presentation(&self.gp_presentation())
    }

    /// `M^gp` with generator `i` mapping to the `i`-th presentation
    /// generator. Refuses pointed monoids.
    pub fn group_completion(&self) -> Result<FgAbGroup> {
        if self.is_pointed() {
            return Err(Error::PointedMonoid);
        }
        Ok(self.gp())
    }

    /// Image of an element in `M^gp`, in canonical coordinates.
    pub fn gp_image(&self, e: &[u32]) -> Vec<BigInt> {
        let g = self.gp();
        let v: Vec<BigInt> = e.iter().map(|&x| BigInt::from(x)).collect();
        g.canonical(&v)
    }

    /// Integrality: the binomial ideal equals its saturation by the product
    /// of the variables.
    pub fn is_integral(&self) -> Verdict {
        let mut cert = Certificate::new("is_integral");
        if self.is_pointed() {
            return Verdict::refused(
                "is_integral",
                vec![Precondition::failed("no absorbing element", "monoid is pointed")],
            );
        }
        let f = Field::Rational;
        let ring = self.algebra(f);
        let sat = saturate_by_variables(&ring);
        let gens: Vec<Vec<Poly>> = ring.ideal().iter().map(|p| vec![p.clone()]).collect();
        let elements: Vec<Vec<Poly>> = sat.iter().map(|p| vec![p.clone()]).collect();
        let base = PresentedRing::new(ring.vars().to_vec(), f, Vec::new(), RingMode::Affine).expect("polynomial ring");
        let (fact, contained) = membership_fact("saturation_in_ideal", &base, 1, &gens, &elements);
        cert.facts.push(fact);
        let holds = contained.iter().all(|&b| b);
        if !holds {
            let i = contained.iter().position(|&b| !b).expect("some element");
            cert.reason = format!("{} lies in the saturation but not in the ideal", ring.show(&sat[i]));
        }
        Verdict::new(Status::from_bool(holds), cert, vec![Precondition::ok("no absorbing element")])
    }

    pub fn integral(&self) -> bool {
        !self.is_pointed() && self.is_integral().holds()
    }

    /// Whether generator `i` is invertible.
    pub fn generator_is_unit(&self, i: usize) -> bool {
        let f = Field::Rational;
        let ring = self.algebra(f);
        ring.ideal_contains(&[ring.var(i)], &ring.one())
    }

    pub fn unit_generators(&self) -> Vec<usize> {
        (0..self.num_generators())
            .filter(|&i| self.generator_is_unit(i))
            .collect()
    }

    pub fn is_unit(&self, e: &[u32]) -> bool {
        let units = self.unit_generators();
        e.iter()
            .enumerate()
            .all(|(i, &x)| x == 0 || units.contains(&i))
    }

    /// Unit group, sharpness and `𝔪_M = M - M*`.
    pub fn units_and_sharpness(&self) -> Result<UnitsData> {
        if self.is_pointed() || !self.is_integral().holds() {
            return Err(Error::NotIntegral);
        }
        let units = self.unit_generators();
        let gp = self.gp();
        let u = units.len();
        let cols: Vec<Vec<BigInt>> = units
            .iter()
            .map(|&i| {
                let mut c = vec![BigInt::zero(); self.num_generators()];
                c[i] = BigInt::from(1);
                c
            })
            .collect();
        let inc = IntMat::from_columns(self.num_generators(), &cols);
        let map = AbGroupMap::new(FgAbGroup::free(u), gp, inc)?;
        let (ker, _) = kernel_cokernel(&map)?;
        let unit_group = FgAbGroup::from_presentation(&ker.inclusion);
        let maximal_ideal = MonoidIdeal {
            generators: (0..self.num_generators())
                .filter(|i| !units.contains(i))
                .map(|i| self.generator(i))
                .collect(),
        };
        Ok(UnitsData {
            is_sharp: unit_group.is_trivial(),
            units: unit_group,
            maximal_ideal,
        })
    }

    /// Generators of `𝔪_M`: the non-unit generators.
    pub fn maximal_ideal(&self) -> MonoidIdeal {
        let units = self.unit_generators();
        MonoidIdeal {
            generators: (0..self.num_generators())
                .filter(|i| !units.contains(i))
                .map(|i| self.generator(i))
                .collect(),
        }
    }

    pub fn is_sharp(&self) -> bool {
        self.units_and_sharpness().map(|u| u.is_sharp).unwrap_or(false)
    }

    /// `M / I`, pointed. Errors when an ideal generator is a unit.
    pub fn quotient_by_ideal(&self, ideal: &MonoidIdeal) -> Result<FinMonoid> {
        if ideal.is_empty() {
            return Ok(self.clone());
        }
        if ideal.generators.iter().any(|e| self.is_unit(e)) {
            return Err(Error::ImproperIdeal);
        }
        let mut gens = self.ideal.clone();
        gens.extend(ideal.generators.iter().cloned());
        FinMonoid::new(self.names.clone(), self.relations.clone(), gens)
    }

    /// `S^{-1} M`: one inverse generator `name'` per element of `S`.
    pub fn localization(&self, s: &[Elem]) -> Result<FinMonoid> {
        if self.is_pointed() {
            return Err(Error::PointedMonoid);
        }
        let g = self.num_generators();
        let k = s.len();
        let mut names = self.names.clone();
        for (j, e) in s.iter().enumerate() {
            let base = match e.iter().position(|&x| x > 0) {
                Some(i) if e.iter().sum::<u32>() == 1 => self.names[i].clone(),
                _ => format!("s{j}"),
            };
            let mut name = format!("{base}_inv");
            while names.contains(&name) {
                name.push('_');
            }
            names.push(name);
        }
        let widen = |e: &[u32]| -> Elem {
            let mut v = e.to_vec();
            v.extend(std::iter::repeat_n(0, k));
            v
        };
        let mut rels: Vec<(Elem, Elem)> = self.relations.iter().map(|(a, b)| (widen(a), widen(b))).collect();
        for (j, e) in s.iter().enumerate() {
            let mut lhs = widen(e);
            lhs[g + j] += 1;
            rels.push((lhs, vec![0; g + k]));
        }
        FinMonoid::new(names, rels, Vec::new())
    }

    /// Saturation test inside `M^gp` (modulo units): every lattice point of
    /// the cone spanned by the generators lies in the monoid. Candidates are
    /// the lattice points of the half-open parallelepipeds of all simplicial
    /// subcones, at most `budget` in total.
    pub fn is_saturated(&self, budget: usize) -> Result<Verdict> {
        let integral = self.is_integral();
        if !integral.holds() {
            return Err(Error::NotIntegral);
        }
        // pass to M / M*: add the unit generators as relations of the group
        let units = self.unit_generators();
        let g = self.num_generators();
        let mut pres = self.gp_presentation();
        if !units.is_empty() {
            let cols: Vec<Vec<BigInt>> = units
                .iter()
                .map(|&i| (0..g).map(|k| BigInt::from((k == i) as i64)).collect())
                .collect();
            pres = pres.hstack(&IntMat::from_columns(g, &cols));
        }
        let gp = FgAbGroup::from_presentation(&pres);
        if !gp.is_free() {
            return Err(Error::TorsionCompletion);
        }
        let r = gp.rank;
        let gens: Vec<Vec<BigInt>> = (0..g)
            .filter(|i| !units.contains(i))
            .map(|i| {
                let e: Vec<BigInt> = (0..g).map(|k| BigInt::from((k == i) as i64)).collect();
                gp.canonical(&e)
            })
            .filter(|v| v.iter().any(|x| !x.is_zero()))
            .collect();
        let mut cert = Certificate::new("is_saturated");
        cert.data.insert("rank".into(), r as i64);
        let pre = vec![Precondition::ok("integral"), Precondition::ok("torsion-free completion")];
        if r == 0 {
            return Ok(Verdict::new(Status::Holds, cert, pre));
        }
        let ell = positive_functional(&gens, budget).ok_or(Error::BudgetExceeded(budget))?;
        let mut checked = 0usize;
        let mut candidates: BTreeSet<Vec<BigInt>> = BTreeSet::new();
        for subset in combinations(gens.len(), r) {
            let cols: Vec<Vec<BigInt>> = subset.iter().map(|&i| gens[i].clone()).collect();
            let v = IntMat::from_columns(r, &cols);
            let det = v.determinant();
            if det.is_zero() {
                continue;
            }
            checked += det.abs().to_usize().unwrap_or(usize::MAX);
            if checked > budget {
                return Err(Error::BudgetExceeded(budget));
            }
            for x in parallelepiped_points(&v, &det) {
                if x.iter().any(|c| !c.is_zero()) {
                    candidates.insert(x);
                }
            }
        }
        cert.data.insert("candidates".into(), candidates.len() as i64);
        for x in &candidates {
            if !in_generated_monoid(&gens, &ell, x, budget)? {
                let shown: Vec<String> = x.iter().map(|c| c.to_string()).collect();
                cert.reason = format!("lattice point ({}) of the cone is not in the monoid", shown.join(", "));
                cert.facts.push(Fact::Flag {
                    label: "saturated".into(),
                    value: false,
                    detail: cert.reason.clone(),
                });
                return Ok(Verdict::new(Status::Fails, cert, pre));
            }
        }
        cert.facts.push(Fact::Flag {
            label: "saturated".into(),
            value: true,
            detail: String::new(),
        });
        Ok(Verdict::new(Status::Holds, cert, pre))
    }

    /// Exponent rows of total degree at most `d`, by increasing degree.
    pub fn rows_up_to(&self, d: u32) -> Vec<Elem> {
        rows_up_to(self.num_generators(), d)
    }
}

pub struct IdealMembership {
    basis: Vec<Poly>,
}

impl IdealMembership {
    pub fn contains(&self, e: &[u32]) -> bool {
        if self.basis.is_empty() {
            return false;
        }
        let f = Field::Rational;
        let m = Poly::monomial(f, Mono(e.to_vec()), f.one());
        ideal_reduce(&m, &self.basis, MonoOrder::DegRevLex).is_zero()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnitsData {
    pub units: FgAbGroup,
    pub is_sharp: bool,
    pub maximal_ideal: MonoidIdeal,
}

fn pointed_binomials(field: Field, ideal: &[Elem], g: usize) -> Vec<Poly> {
    let Some(first) = ideal.first() else {
        return Vec::new();
    };
    let mut out = Vec::new();
    for i in &ideal[1..] {
        let p = Poly::binomial(field, i, first);
        if !p.is_zero() {
            out.push(p);
        }
    }
    for j in 0..g {
        let mut shifted = first.clone();
        shifted[j] += 1;
        out.push(Poly::binomial(field, &shifted, first));
    }
    out
}

/// `I : (x_1 ... x_n)^∞` by eliminating an inverse variable.
pub fn saturate_by_variables(ring: &PresentedRing) -> Vec<Poly> {
    let n = ring.nvars();
    let f = ring.field();
    let positions: Vec<usize> = (1..=n).collect();
    let mut gens: Vec<Poly> = ring.ideal().iter().map(|p| p.embed(n + 1, &positions)).collect();
    let mut prod = Poly::var(n + 1, f, 0);
    for i in 1..=n {
        prod = prod.mul(&Poly::var(n + 1, f, i));
    }
    gens.push(prod.sub(&Poly::one(n + 1, f)));
    let gb = ideal_basis(&gens, n + 1, f, MonoOrder::Elim(1));
    let back: Vec<usize> = (0..n).collect();
    gb.into_iter()
        .filter(|p| p.terms().all(|(m, _)| m.0[0] == 0))
        .map(|p| {
            Poly::from_terms(
                n,
                f,
                p.terms()
                    .map(|(m, c)| (Mono(back.iter().map(|&i| m.0[i + 1]).collect()), c.clone())),
            )
        })
        .collect()
}

pub fn rows_up_to(g: usize, d: u32) -> Vec<Elem> {
    let mut out = Vec::new();
    for deg in 0..=d {
        rows_of_degree(g, deg, &mut vec![0; g], 0, &mut out);
    }
    out
}

pub fn rows_of_degree(g: usize, deg: u32, cur: &mut Elem, i: usize, out: &mut Vec<Elem>) {
    if g == 0 {
        if deg == 0 {
            out.push(Vec::new());
        }
        return;
    }
    if i == g - 1 {
        cur[i] = deg;
        out.push(cur.clone());
        cur[i] = 0;
        return;
    }
    for k in (0..=deg).rev() {
        cur[i] = k;
        rows_of_degree(g, deg - k, cur, i + 1, out);
    }
    cur[i] = 0;
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

fn dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// An integer functional strictly positive on every vector (perceptron
/// iteration); `None` if none is found within `budget` updates.
fn positive_functional(vs: &[Vec<BigInt>], budget: usize) -> Option<Vec<BigInt>> {
    let r = vs.first()?.len();
    let mut ell = vec![BigInt::zero(); r];
    for _ in 0..budget.max(1) {
        match vs.iter().find(|v| dot(&ell, v) <= BigInt::zero()) {
            None => return Some(ell),
            Some(v) => {
                for (a, b) in ell.iter_mut().zip(v) {
                    *a += b;
                }
            }
        }
    }
    None
}

/// Lattice points `V λ` with `λ ∈ [0,1)^r`, one per coset of the column
/// lattice of `V` in `Z^r`.
fn parallelepiped_points(v: &IntMat, det: &BigInt) -> Vec<Vec<BigInt>> {
    let r = v.rows();
    let s = smith_normal_form(v);
    let diag = s.diagonal();
    // adjugate-based solve: λ = V^{-1} y
    let inv = rational_inverse(v, det);
    let mut out = Vec::new();
    let mut idx = vec![BigInt::zero(); r];
    loop {
        let y = s.u_inv.mul_vec(&idx);
        let lambda: Vec<BigRational> = (0..r)
            .map(|i| (0..r).map(|j| &inv[i][j] * BigRational::from_integer(y[j].clone())).sum())
            .collect();
        let floors: Vec<BigInt> = lambda.iter().map(|l| l.floor().to_integer()).collect();
        let shift = v.mul_vec(&floors);
        out.push(y.iter().zip(&shift).map(|(a, b)| a - b).collect());
        // odometer over 0 <= idx_i < d_i
        let mut k = 0;
        loop {
            if k == r {
                return out;
            }
            idx[k] += 1;
            if idx[k] < diag[k] {
                break;
            }
            idx[k] = BigInt::zero();
            k += 1;
        }
    }
}

fn rational_inverse(v: &IntMat, det: &BigInt) -> Vec<Vec<BigRational>> {
    let r = v.rows();
    let mut inv = vec![vec![BigRational::zero(); r]; r];
    for i in 0..r {
        for j in 0..r {
            // cofactor C_ji
            let rows: Vec<usize> = (0..r).filter(|&k| k != j).collect();
            let cols: Vec<usize> = (0..r).filter(|&k| k != i).collect();
            let minor = v.select_rows(&rows).select_columns(&cols).determinant();
            let sign = if (i + j).is_even() { BigInt::from(1) } else { BigInt::from(-1) };
            inv[i][j] = BigRational::new(sign * minor, det.clone());
        }
    }
    inv
}

/// Whether `x` is a nonnegative integer combination of `gens`, using the
/// positive functional `ell` to bound the search.
fn in_generated_monoid(gens: &[Vec<BigInt>], ell: &[BigInt], x: &[BigInt], budget: usize) -> Result<bool> {
    let weights: Vec<BigInt> = gens.iter().map(|g| dot(ell, g)).collect();
    let mut steps = 0usize;
    fn rec(
        gens: &[Vec<BigInt>],
        weights: &[BigInt],
        ell: &[BigInt],
        j: usize,
        rem: Vec<BigInt>,
        steps: &mut usize,
        budget: usize,
        seen: &mut BTreeSet<(usize, Vec<BigInt>)>,
    ) -> Result<bool> {
        if rem.iter().all(Zero::is_zero) {
            return Ok(true);
        }
        if j == gens.len() {
            return Ok(false);
        }
        if !seen.insert((j, rem.clone())) {
            return Ok(false);
        }
        *steps += 1;
        if *steps > budget {
            return Err(Error::BudgetExceeded(budget));
        }
        let level = dot(ell, &rem);
        if level.is_negative() {
            return Ok(false);
        }
        let max = (&level / &weights[j]).to_usize().unwrap_or(usize::MAX);
        let mut cur = rem;
        for _ in 0..=max {
            if rec(gens, weights, ell, j + 1, cur.clone(), steps, budget, seen)? {
                return Ok(true);
            }
            cur = cur.iter().zip(&gens[j]).map(|(a, b)| a - b).collect();
        }
        Ok(false)
    }
    let mut seen = BTreeSet::new();
    rec(gens, &weights, ell, 0, x.to_vec(), &mut steps, budget, &mut seen)
}

/// Parses `2*a + b`, `a+b`, `0`.
pub fn parse_element(s: &str, names: &[String]) -> std::result::Result<Elem, ParseError> {
    let mut e = vec![0u32; names.len()];
    let t = s.trim();
    if t == "0" {
        return Ok(e);
    }
    let mut offset = 0;
    for part in s.split('+') {
        let p = part.trim();
        if p.is_empty() {
            return Err(ParseError::new(s, offset, "a term"));
        }
        let (k, name) = match p.split_once('*') {
            Some((k, n)) => (
                k.trim()
                    .parse::<u32>()
                    .map_err(|_| ParseError::new(s, offset, "a nonnegative integer coefficient"))?,
                n.trim(),
            ),
            None => {
                let digits = p.chars().take_while(|c| c.is_ascii_digit()).count();
                if digits > 0 && digits < p.len() {
                    (p[..digits].parse().expect("digits"), p[digits..].trim())
                } else if p == "0" {
                    (0, "")
                } else {
                    (1, p)
                }
            }
        };
        if name.is_empty() {
            offset += part.len() + 1;
            continue;
        }
        let i = names
            .iter()
            .position(|n| n == name)
            .ok_or_else(|| ParseError::new(s, offset + part.find(name).unwrap_or(0), &format!("a generator name (found `{name}`)")))?;
        e[i] += k;
        offset += part.len() + 1;
    }
    Ok(e)
}

pub fn parse_relation(s: &str, names: &[String]) -> std::result::Result<(Elem, Elem), ParseError> {
    let (l, r) = s
        .split_once('=')
        .ok_or_else(|| ParseError::new(s, 0, "`=` in a relation"))?;
    let a = parse_element(l, names)?;
    let b = parse_element(r, names).map_err(|mut e| {
        e.offset += l.len() + 1;
        e.input = s.to_string();
        e
    })?;
    Ok((a, b))
}

pub fn element_string(e: &[u32], names: &[String]) -> String {
    let parts: Vec<String> = e
        .iter()
        .enumerate()
        .filter(|(_, &k)| k > 0)
        .map(|(i, &k)| if k == 1 { names[i].clone() } else { format!("{k}*{}", names[i]) })
        .collect();
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join(" + ")
    }
}

/// A monoid homomorphism given by the images of the source generators.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MonoidHom {
    pub source: FinMonoid,
    pub target: FinMonoid,
    pub images: Vec<Elem>,
}

impl MonoidHom {
    pub fn new(source: FinMonoid, target: FinMonoid, images: Vec<Elem>) -> Result<Self> {
        if images.len() != source.num_generators() || images.iter().any(|e| e.len() != target.num_generators()) {
            return Err(Error::Shape("one target row per source generator".into()));
        }
        let h = MonoidHom { source, target, images };
        h.check()?;
        Ok(h)
    }

    pub fn apply(&self, e: &[u32]) -> Elem {
        let mut out = self.target.zero();
        for (k, img) in e.iter().zip(&self.images) {
            for (o, x) in out.iter_mut().zip(img) {
                *o += k * x;
            }
        }
        out
    }

    fn check(&self) -> Result<()> {
        for (a, b) in &self.source.relations {
            if !self.target.equal(&self.apply(a), &self.apply(b)) {
                return Err(Error::IllFormedMap(format!(
                    "relation {} = {} is not respected",
                    self.source.show(a),
                    self.source.show(b)
                )));
            }
        }
        for i in &self.source.ideal {
            if !self.target.is_absorbing(&self.apply(i)) {
                return Err(Error::IllFormedMap(format!(
                    "absorbing element {} does not map to the absorbing element",
                    self.source.show(i)
                )));
            }
        }
        Ok(())
    }

    pub fn identity(m: &FinMonoid) -> Self {
        let images = (0..m.num_generators()).map(|i| m.generator(i)).collect();
        MonoidHom {
            source: m.clone(),
            target: m.clone(),
            images,
        }
    }

    /// The induced map `M^gp -> N^gp` in presentation coordinates.
    pub fn gp_map(&self) -> Result<AbGroupMap> {
        let g = self.source.num_generators();
        let h = self.target.num_generators();
        let mut m = IntMat::zeros(h, g);
        for (j, img) in self.images.iter().enumerate() {
            for (i, &x) in img.iter().enumerate() {
                m.set(i, j, BigInt::from(x));
            }
        }
        AbGroupMap::new(self.source.gp(), self.target.gp(), m)
    }

    /// Reduced basis of `I_N(t) + <x_i - t^{h(e_i)}>` in `K[t, x]` under an
    /// order eliminating the target variables `t`, which come first.
    fn elimination_basis(&self) -> Vec<Poly> {
        let f = Field::Rational;
        let g = self.source.num_generators();
        let h = self.target.num_generators();
        let n = g + h;
        let tpos: Vec<usize> = (0..h).collect();
        let mut gens: Vec<Poly> = self
            .target
            .algebra_ideal(f)
            .iter()
            .map(|p| p.embed(n, &tpos))
            .collect();
        for (i, img) in self.images.iter().enumerate() {
            let mut x = vec![0; n];
            x[h + i] = 1;
            let mut t = img.clone();
            t.extend(std::iter::repeat_n(0, g));
            gens.push(Poly::binomial(f, &x, &t));
        }
        ideal_basis(&gens, n, f, MonoOrder::Elim(h))
    }

    /// Every target generator is the image of a source element: its normal
    /// form modulo the elimination basis is free of target variables.
    pub fn is_surjective(&self) -> bool {
        let f = Field::Rational;
        let h = self.target.num_generators();
        let n = h + self.source.num_generators();
        let basis = self.elimination_basis();
        (0..h).all(|i| {
            let t = Poly::var(n, f, i);
            let r = ideal_reduce(&t, &basis, MonoOrder::Elim(h));
            let free = r.terms().all(|(m, _)| m.0[..h].iter().all(|&e| e == 0));
            free
        })
    }

    /// Binomial generators `x^{l1} - x^{l2}` of `ker(K[L] -> K[N])`, as pairs
    /// `(l1, l2)` with `l1` the leading exponent.
    pub fn kernel_binomials(&self) -> Vec<(Elem, Elem)> {
        let h = self.target.num_generators();
        let order = MonoOrder::Elim(h);
        let mut out = Vec::new();
        for p in self.elimination_basis() {
            if p.terms().any(|(m, _)| m.0[..h].iter().any(|&e| e > 0)) {
                continue;
            }
            let mut terms: Vec<(Mono, bool)> = p.terms().map(|(m, c)| (m.clone(), c.is_one())).collect();
            terms.sort_by(|a, b| order.cmp(&b.0, &a.0));
            let strip = |m: &Mono| m.0[h..].to_vec();
            match terms.as_slice() {
                [(a, _), (b, _)] => out.push((strip(a), strip(b))),
                other => panic!("binomial elimination produced {} terms", other.len()),
            }
        }
        out
    }
}
