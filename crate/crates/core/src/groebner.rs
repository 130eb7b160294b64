//! Gröbner and standard bases for submodules of `K[x]^r`.
//!
//! Global orders use Buchberger's algorithm with full reduction and return
//! the reduced basis. The local order (negative degrevlex) uses Mora's
//! normal form, which computes in the localization at the origin.
//! Ideals are the rank one case.

use std::cmp::Ordering;
use std::sync::atomic::{AtomicBool, AtomicUsize, Ordering as AtomicOrdering};

use crate::arith::{Coef, Field};
use crate::poly::{Mono, Poly};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum MonoOrder {
    DegRevLex,
    /// Negative degree reverse lexicographic; a local order.
    NegDegRevLex,
    Lex,
    /// Block order: degrevlex on the first `k` variables, then degrevlex on
    /// the rest. Eliminates the first `k` variables.
    Elim(usize),
}

impl MonoOrder {
    pub fn is_global(&self) -> bool {
        !matches!(self, MonoOrder::NegDegRevLex)
    }

    pub fn cmp(&self, a: &Mono, b: &Mono) -> Ordering {
        match self {
            MonoOrder::DegRevLex => degrevlex(&a.0, &b.0),
            MonoOrder::NegDegRevLex => a
                .degree()
                .cmp(&b.degree())
                .reverse()
                .then_with(|| revlex(&a.0, &b.0)),
            MonoOrder::Lex => a.0.cmp(&b.0),
            MonoOrder::Elim(k) => {
                degrevlex(&a.0[..*k], &b.0[..*k]).then_with(|| degrevlex(&a.0[*k..], &b.0[*k..]))
            }
        }
    }
}

fn revlex(a: &[u32], b: &[u32]) -> Ordering {
    for (x, y) in a.iter().zip(b).rev() {
        if x != y {
            return y.cmp(x);
        }
    }
    Ordering::Equal
}

fn degrevlex(a: &[u32], b: &[u32]) -> Ordering {
    let da: u32 = a.iter().sum();
    let db: u32 = b.iter().sum();
    da.cmp(&db).then_with(|| revlex(a, b))
}

/// A term order on `K[x]^r`. Components below `split` form a block that
/// dominates the rest (position over term between blocks); inside a block
/// monomials are compared first and smaller component indices win ties.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ModOrder {
    pub mono: MonoOrder,
    pub split: usize,
}

impl ModOrder {
    pub fn new(mono: MonoOrder) -> Self {
        ModOrder { mono, split: 0 }
    }

    pub fn with_split(mono: MonoOrder, split: usize) -> Self {
        ModOrder { mono, split }
    }

    pub fn cmp(&self, a: &Term, b: &Term) -> Ordering {
        let ba = a.comp >= self.split;
        let bb = b.comp >= self.split;
        if ba != bb {
            return if ba { Ordering::Less } else { Ordering::Greater };
        }
        self.mono
            .cmp(&a.mono, &b.mono)
            .then_with(|| b.comp.cmp(&a.comp))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Term {
    pub comp: usize,
    pub mono: Mono,
}

/// An element of `K[x]^r`, terms sorted decreasingly for a fixed order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MVec {
    terms: Vec<(Term, Coef)>,
}

impl MVec {
    pub fn zero() -> MVec {
        MVec { terms: Vec::new() }
    }

    pub fn from_polys(order: &ModOrder, comps: &[Poly]) -> MVec {
        let mut terms = Vec::new();
        for (i, p) in comps.iter().enumerate() {
            for (m, c) in p.terms() {
                terms.push((
                    Term {
                        comp: i,
                        mono: m.clone(),
                    },
                    c.clone(),
                ));
            }
        }
        terms.sort_by(|a, b| order.cmp(&b.0, &a.0));
        MVec { terms }
    }

    pub fn from_poly(order: &ModOrder, p: &Poly) -> MVec {
        MVec::from_polys(order, std::slice::from_ref(p))
    }

    /// Splits back into `rank` component polynomials.
    pub fn to_polys(&self, rank: usize, nvars: usize, field: Field) -> Vec<Poly> {
        let mut out = vec![Poly::zero(nvars, field); rank];
        for (t, c) in &self.terms {
            out[t.comp].add_term(t.mono.clone(), c.clone());
        }
        out
    }

    pub fn to_poly(&self, nvars: usize, field: Field) -> Poly {
        self.to_polys(1, nvars, field).pop().expect("rank one")
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &[(Term, Coef)] {
        &self.terms
    }

    pub fn lead(&self) -> Option<&(Term, Coef)> {
        self.terms.first()
    }

    pub fn lead_term(&self) -> &Term {
        &self.terms[0].0
    }

    fn max_degree(&self) -> u32 {
        self.terms.iter().map(|(t, _)| t.mono.degree()).max().unwrap_or(0)
    }

    fn ecart(&self) -> u32 {
        self.max_degree() - self.lead_term().mono.degree()
    }

    pub fn make_monic(&mut self) {
        if let Some((_, c)) = self.terms.first() {
            if !c.is_one() {
                let inv = c.inv();
                for (_, a) in &mut self.terms {
                    *a = &*a * &inv;
                }
            }
        }
    }

    /// `self - c * m * g`.
    fn sub_mul(&self, order: &ModOrder, c: &Coef, m: &Mono, g: &MVec) -> MVec {
        let mut out = Vec::with_capacity(self.terms.len() + g.terms.len());
        let mut i = 0;
        let mut shifted = g.terms.iter().map(|(t, a)| {
            (
                Term {
                    comp: t.comp,
                    mono: t.mono.mul(m),
                },
                -(a * c),
            )
        });
        let mut next = shifted.next();
        while i < self.terms.len() || next.is_some() {
            match (self.terms.get(i), &next) {
                (Some(a), Some(b)) => match order.cmp(&a.0, &b.0) {
                    Ordering::Greater => {
                        out.push(a.clone());
                        i += 1;
                    }
                    Ordering::Less => {
                        out.push(next.take().expect("present"));
                        next = shifted.next();
                    }
                    Ordering::Equal => {
                        let s = &a.1 + &b.1;
                        if !s.is_zero() {
                            out.push((a.0.clone(), s));
                        }
                        i += 1;
                        next = shifted.next();
                    }
                },
                (Some(a), None) => {
                    out.push(a.clone());
                    i += 1;
                }
                (None, Some(_)) => {
                    out.push(next.take().expect("present"));
                    next = shifted.next();
                }
                (None, None) => break,
            }
        }
        MVec { terms: out }
    }

    pub fn scale(&self, c: &Coef) -> MVec {
        if c.is_zero() {
            return MVec::zero();
        }
        MVec {
            terms: self.terms.iter().map(|(t, a)| (t.clone(), a * c)).collect(),
        }
    }
}

static AUDIT: AtomicBool = AtomicBool::new(false);
static AUDITED: AtomicUsize = AtomicUsize::new(0);
static AUDIT_FAILURES: AtomicUsize = AtomicUsize::new(0);

/// Turns on self-checking: every basis returned by [`Engine::standard_basis`]
/// is re-verified with [`Engine::is_standard_basis`] and tallied.
pub fn enable_audit() {
    AUDIT.store(true, AtomicOrdering::SeqCst);
}

/// `(bases checked, bases failing the check)` since the audit was enabled.
pub fn audit_counts() -> (usize, usize) {
    (
        AUDITED.load(AtomicOrdering::SeqCst),
        AUDIT_FAILURES.load(AtomicOrdering::SeqCst),
    )
}

/// Computation context: arity, rank, field and term order.
#[derive(Clone, Debug)]
pub struct Engine {
    pub nvars: usize,
    pub rank: usize,
    pub field: Field,
    pub order: ModOrder,
}

struct Pair {
    i: usize,
    j: usize,
    lcm: Term,
}

impl Engine {
    pub fn new(nvars: usize, rank: usize, field: Field, order: ModOrder) -> Self {
        Engine {
            nvars,
            rank,
            field,
            order,
        }
    }

    pub fn ideal(nvars: usize, field: Field, mono: MonoOrder) -> Self {
        Engine::new(nvars, 1, field, ModOrder::new(mono))
    }

    pub fn is_global(&self) -> bool {
        self.order.mono.is_global()
    }

    pub fn vec(&self, comps: &[Poly]) -> MVec {
        assert_eq!(comps.len(), self.rank, "component count");
        MVec::from_polys(&self.order, comps)
    }

    pub fn polys(&self, v: &MVec) -> Vec<Poly> {
        v.to_polys(self.rank, self.nvars, self.field)
    }

    fn spoly(&self, f: &MVec, g: &MVec) -> Option<MVec> {
        let (tf, cf) = f.lead()?;
        let (tg, cg) = g.lead()?;
        if tf.comp != tg.comp {
            return None;
        }
        let l = tf.mono.lcm(&tg.mono);
        let mf = tf.mono.quotient_of(&l);
        let mg = tg.mono.quotient_of(&l);
        let left = MVec::zero().sub_mul(&self.order, &(-&cf.inv()), &mf, f);
        Some(left.sub_mul(&self.order, &cg.inv(), &mg, g))
    }

    fn find_reducer<'a>(&self, t: &Term, basis: &'a [MVec]) -> Option<(usize, &'a MVec)> {
        basis.iter().enumerate().find(|(_, g)| {
            let lt = g.lead_term();
            lt.comp == t.comp && lt.mono.divides(&t.mono)
        })
    }

    /// Normal form of `h`. For global orders this is the fully reduced
    /// remainder; for the local order it is Mora's weak normal form, which is
    /// zero exactly when `h` lies in the submodule generated over the local
    /// ring, provided `basis` is a standard basis.
    pub fn reduce(&self, h: &MVec, basis: &[MVec]) -> MVec {
        if self.is_global() {
            self.reduce_full(h, basis)
        } else {
            self.reduce_mora(h, basis)
        }
    }

    fn reduce_full(&self, h: &MVec, basis: &[MVec]) -> MVec {
        let mut h = h.clone();
        let mut rest: Vec<(Term, Coef)> = Vec::new();
        while let Some((t, c)) = h.lead().cloned() {
            match self.find_reducer(&t, basis) {
                Some((_, g)) => {
                    let (tg, cg) = g.lead().expect("nonzero");
                    let m = tg.mono.quotient_of(&t.mono);
                    h = h.sub_mul(&self.order, &(&c * &cg.inv()), &m, g);
                }
                None => {
                    rest.push((t, c));
                    h.terms.remove(0);
                }
            }
        }
        MVec { terms: rest }
    }

    /// Leading-term-only reduction for global orders.
    fn reduce_top(&self, h: &MVec, basis: &[MVec]) -> MVec {
        let mut h = h.clone();
        while let Some((t, c)) = h.lead().cloned() {
            match self.find_reducer(&t, basis) {
                Some((_, g)) => {
                    let (tg, cg) = g.lead().expect("nonzero");
                    let m = tg.mono.quotient_of(&t.mono);
                    h = h.sub_mul(&self.order, &(&c * &cg.inv()), &m, g);
                }
                None => break,
            }
        }
        h
    }

    fn reduce_mora(&self, h: &MVec, basis: &[MVec]) -> MVec {
        let mut h = h.clone();
        let mut extra: Vec<MVec> = Vec::new();
        loop {
            let Some((t, c)) = h.lead().cloned() else {
                return h;
            };
            let mut best: Option<(u32, &MVec)> = None;
            for g in basis.iter().chain(extra.iter()) {
                let lt = g.lead_term();
                if lt.comp == t.comp && lt.mono.divides(&t.mono) {
                    let e = g.ecart();
                    if best.is_none_or(|(b, _)| e < b) {
                        best = Some((e, g));
                    }
                }
            }
            let Some((eg, g)) = best else {
                return h;
            };
            let g = g.clone();
            if eg > h.ecart() {
                extra.push(h.clone());
            }
            let (tg, cg) = g.lead().expect("nonzero");
            let m = tg.mono.quotient_of(&t.mono);
            h = h.sub_mul(&self.order, &(&c * &cg.inv()), &m, &g);
        }
    }

    /// Standard basis of the submodule generated by `gens`. For global orders
    /// the result is the reduced Gröbner basis, sorted by leading term.
    pub fn standard_basis(&self, gens: &[MVec]) -> Vec<MVec> {
        let basis = self.buchberger(gens);
        let basis = self.finish(basis);
        if AUDIT.load(AtomicOrdering::Relaxed) {
            AUDITED.fetch_add(1, AtomicOrdering::SeqCst);
            if !self.is_standard_basis(&basis) || !gens.iter().all(|g| self.reduce(g, &basis).is_zero()) {
                AUDIT_FAILURES.fetch_add(1, AtomicOrdering::SeqCst);
            }
        }
        basis
    }

    fn buchberger(&self, gens: &[MVec]) -> Vec<MVec> {
        let mut basis: Vec<MVec> = Vec::new();
        let mut pairs: Vec<Pair> = Vec::new();
        let mut live: Vec<bool> = Vec::new();
        let mut input: Vec<MVec> = gens.iter().filter(|g| !g.is_zero()).cloned().collect();
        input.sort_by(|a, b| self.order.cmp(a.lead_term(), b.lead_term()));
        for g in input {
            let h = if self.is_global() {
                self.reduce_top(&g, &basis)
            } else {
                self.reduce_mora(&g, &basis)
            };
            if !h.is_zero() {
                self.insert(h, &mut basis, &mut pairs, &mut live);
            }
        }
        while let Some(p) = self.pop_pair(&mut pairs) {
            let Some(s) = self.spoly(&basis[p.i], &basis[p.j]) else {
                continue;
            };
            let h = if self.is_global() {
                self.reduce_top(&s, &basis)
            } else {
                self.reduce_mora(&s, &basis)
            };
            if !h.is_zero() {
                self.insert(h, &mut basis, &mut pairs, &mut live);
            }
        }
        basis
            .into_iter()
            .zip(live)
            .filter_map(|(g, l)| l.then_some(g))
            .collect()
    }

    fn pop_pair(&self, pairs: &mut Vec<Pair>) -> Option<Pair> {
        if pairs.is_empty() {
            return None;
        }
        // smallest lcm first; for the local order the smallest is the
        // highest degree, so select by degree there to keep ecarts small
        let key = |p: &Pair| p.lcm.mono.degree();
        let mut best = 0;
        for k in 1..pairs.len() {
            let (a, b) = (&pairs[k], &pairs[best]);
            let ord = key(a)
                .cmp(&key(b))
                .then_with(|| self.order.cmp(&a.lcm, &b.lcm))
                .then_with(|| (a.j, a.i).cmp(&(b.j, b.i)));
            if ord == Ordering::Less {
                best = k;
            }
        }
        Some(pairs.swap_remove(best))
    }

    /// Adds `h` to the basis with the Gebauer–Möller pair update.
    fn insert(&self, mut h: MVec, basis: &mut Vec<MVec>, pairs: &mut Vec<Pair>, live: &mut Vec<bool>) {
        h.make_monic();
        let t = basis.len();
        let ht = h.lead_term().clone();
        let lcm_with = |g: &MVec| -> Option<Term> {
            let gt = g.lead_term();
            (gt.comp == ht.comp).then(|| Term {
                comp: ht.comp,
                mono: gt.mono.lcm(&ht.mono),
            })
        };
        // chain criterion on old pairs
        pairs.retain(|p| {
            let divides = p.lcm.comp == ht.comp && ht.mono.divides(&p.lcm.mono);
            if !divides {
                return true;
            }
            let li = lcm_with(&basis[p.i]);
            let lj = lcm_with(&basis[p.j]);
            li.as_ref() == Some(&p.lcm) || lj.as_ref() == Some(&p.lcm)
        });
        // new pairs, pruned by proper divisibility and equal lcms
        let mut cands: Vec<(usize, Term, bool)> = Vec::new();
        for (i, g) in basis.iter().enumerate() {
            if !live[i] {
                continue;
            }
            if let Some(l) = lcm_with(g) {
                let coprime = self.rank == 1 && self.is_global() && g.lead_term().mono.is_coprime(&ht.mono);
                cands.push((i, l, coprime));
            }
        }
        let mut keep: Vec<bool> = vec![true; cands.len()];
        for a in 0..cands.len() {
            for b in 0..cands.len() {
                if a != b && keep[b] && cands[b].1.mono != cands[a].1.mono && cands[b].1.mono.divides(&cands[a].1.mono) {
                    keep[a] = false;
                    break;
                }
            }
        }
        for a in 0..cands.len() {
            if !keep[a] {
                continue;
            }
            // among equal lcms keep one, preferring a coprime representative
            let same: Vec<usize> = (0..cands.len())
                .filter(|&b| keep[b] && cands[b].1.mono == cands[a].1.mono)
                .collect();
            let any_coprime = same.iter().any(|&b| cands[b].2);
            for &b in &same {
                keep[b] = false;
            }
            if !any_coprime {
                pairs.push(Pair {
                    i: cands[a].0,
                    j: t,
                    lcm: cands[a].1.clone(),
                });
            }
        }
        basis.push(h);
        live.push(true);
    }

    fn finish(&self, basis: Vec<MVec>) -> Vec<MVec> {
        // minimal: drop elements whose leading term is divisible by another's
        let mut minimal: Vec<MVec> = Vec::new();
        for (i, g) in basis.iter().enumerate() {
            let gt = g.lead_term();
            let redundant = basis.iter().enumerate().any(|(j, o)| {
                let ot = o.lead_term();
                j != i && ot.comp == gt.comp && ot.mono.divides(&gt.mono) && (ot.mono != gt.mono || j < i)
            });
            if !redundant {
                minimal.push(g.clone());
            }
        }
        if self.is_global() {
            let snapshot = minimal.clone();
            for (i, g) in minimal.iter_mut().enumerate() {
                let (lt, lc) = g.lead().cloned().expect("nonzero");
                let others: Vec<MVec> = snapshot
                    .iter()
                    .enumerate()
                    .filter(|(j, _)| *j != i)
                    .map(|(_, o)| o.clone())
                    .collect();
                let tail = MVec {
                    terms: g.terms[1..].to_vec(),
                };
                let mut r = self.reduce_full(&tail, &others);
                r.terms.insert(0, (lt, lc));
                r.make_monic();
                *g = r;
            }
        } else {
            for g in &mut minimal {
                g.make_monic();
            }
        }
        minimal.sort_by(|a, b| self.order.cmp(a.lead_term(), b.lead_term()));
        minimal
    }

    /// Buchberger criterion: all S-vectors reduce to zero.
    pub fn is_standard_basis(&self, basis: &[MVec]) -> bool {
        for i in 0..basis.len() {
            for j in i + 1..basis.len() {
                if let Some(s) = self.spoly(&basis[i], &basis[j]) {
                    if !self.reduce(&s, basis).is_zero() {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Leading terms of a basis.
    pub fn leading_terms(&self, basis: &[MVec]) -> Vec<Term> {
        basis.iter().map(|g| g.lead_term().clone()).collect()
    }
}

/// Convenience wrappers for ideals.
pub fn ideal_basis(polys: &[Poly], nvars: usize, field: Field, mono: MonoOrder) -> Vec<Poly> {
    let e = Engine::ideal(nvars, field, mono);
    let gens: Vec<MVec> = polys.iter().map(|p| MVec::from_poly(&e.order, p)).collect();
    e.standard_basis(&gens)
        .iter()
        .map(|g| g.to_poly(nvars, field))
        .collect()
}

pub fn ideal_reduce(p: &Poly, basis: &[Poly], mono: MonoOrder) -> Poly {
    let e = Engine::ideal(p.nvars(), p.field(), mono);
    let b: Vec<MVec> = basis.iter().map(|g| MVec::from_poly(&e.order, g)).collect();
    e.reduce(&MVec::from_poly(&e.order, p), &b).to_poly(p.nvars(), p.field())
}

pub fn is_ideal_basis(basis: &[Poly], mono: MonoOrder) -> bool {
    let Some(first) = basis.first() else {
        return true;
    };
    let e = Engine::ideal(first.nvars(), first.field(), mono);
    let b: Vec<MVec> = basis.iter().map(|g| MVec::from_poly(&e.order, g)).collect();
    e.is_standard_basis(&b)
}
