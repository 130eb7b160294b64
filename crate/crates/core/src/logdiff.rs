//! Log differentials and conormal modules as explicit cokernels, and the
//! exactness checks relating them.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::abgroups::{kernel_cokernel, solve_integer, Kernel};
use crate::error::{Error, Result};
use crate::intmat::IntMat;
use crate::localalg::{mat_vec, membership_fact, syzygies, Col, FpModule, PresentedRing};
use crate::monoids::{Elem, MonoidHom};
use crate::poly::Poly;
use crate::prelog::{PrelogHom, PrelogRing};
use crate::verdict::{Certificate, Status, Verdict};

fn jacobian(ring: &PresentedRing, p: &Poly) -> Col {
    (0..ring.nvars()).map(|j| ring.simplify(&p.derivative(j))).collect()
}

fn constant(ring: &PresentedRing, n: &BigInt) -> Poly {
    let c = ring.field().from_bigint(n);
    Poly::constant(ring.nvars(), ring.field(), c)
}

fn int_col(ring: &PresentedRing, v: impl IntoIterator<Item = BigInt>) -> Col {
    v.into_iter().map(|n| constant(ring, &n)).collect()
}

fn zeros(ring: &PresentedRing, k: usize) -> Col {
    vec![ring.zero(); k]
}

fn stack(top: Col, bottom: Col) -> Col {
    let mut c = top;
    c.extend(bottom);
    c
}

/// Integer relation columns of `N^gp / im M^gp` on the generators of `N`.
pub fn gp_cokernel_relations(h: &MonoidHom) -> IntMat {
    let n = h.target.num_generators();
    let pres = h.target.gp_presentation();
    let imgs: Vec<Vec<BigInt>> = h
        .images
        .iter()
        .map(|e| e.iter().map(|&x| BigInt::from(x)).collect())
        .collect();
    pres.hstack(&IntMat::from_columns(n, &imgs))
}

fn diff_labels(f: &PrelogHom) -> Vec<String> {
    let mut labels: Vec<String> = f.target.ring.vars().iter().map(|v| format!("d{v}")).collect();
    labels.extend(f.target.monoid.names.iter().map(|n| format!("dlog {n}")));
    labels
}

/// `Ω_{B|A}`: generators `dy_j`, relations the differentials of `B`'s
/// relations and of the images of `A`'s variables.
pub fn ring_differentials(f: &PrelogHom) -> FpModule {
    let b = &f.target.ring;
    let mut rels: Vec<Col> = b.ideal().iter().map(|r| jacobian(b, r)).collect();
    rels.extend(f.ring_map.iter().map(|p| jacobian(b, p)));
    let labels = b.vars().iter().map(|v| format!("d{v}")).collect();
    FpModule::new(b.clone(), b.nvars(), rels, labels)
}

/// `B ⊗ (N^gp / im M^gp)` on the generators of `N`.
pub fn gp_cokernel_module(f: &PrelogHom) -> FpModule {
    let b = &f.target.ring;
    let rels = gp_cokernel_relations(&f.monoid_map)
        .columns()
        .into_iter()
        .map(|c| int_col(b, c))
        .collect();
    let labels = f.target.monoid.names.iter().map(|n| format!("dlog {n}")).collect();
    FpModule::new(b.clone(), f.target.monoid.num_generators(), rels, labels)
}

/// `B ⊗ Ω_{K[N]|K[M]}` on the generators `dt_k`, with coefficients pushed
/// into `B` through `α`.
pub fn monoid_differentials(f: &PrelogHom) -> FpModule {
    let b = &f.target.ring;
    let n = &f.target.monoid;
    let alg = n.algebra(b.field());
    let to_b = |c: Col| -> Col { c.iter().map(|p| b.simplify(&p.compose(&f.target.alpha))).collect() };
    let mut rels: Vec<Col> = alg.ideal().iter().map(|r| to_b(jacobian_raw(r))).collect();
    for img in &f.monoid_map.images {
        let m = Poly::monomial(b.field(), crate::poly::Mono(img.clone()), b.field().one());
        rels.push(to_b(jacobian_raw(&m)));
    }
    let labels = n.names.iter().map(|v| format!("dt_{v}")).collect();
    FpModule::new(b.clone(), n.num_generators(), rels, labels)
}

fn jacobian_raw(p: &Poly) -> Col {
    (0..p.nvars()).map(|j| p.derivative(j)).collect()
}

/// `Ω_{(B,N)|(A,M)}` as the pushout of `Ω_{B|A}` and `B ⊗ (N^gp/im M^gp)`
/// along `dt_k ↦ dα(n_k)` and `dt_k ↦ α(n_k) ⊗ n_k`.
pub fn log_differentials(f: &PrelogHom) -> FpModule {
    let b = &f.target.ring;
    let m = b.nvars();
    let h = f.target.monoid.num_generators();
    let omega = ring_differentials(f);
    let c = gp_cokernel_module(f);
    let mut rels: Vec<Col> = omega.relations.iter().map(|r| stack(r.clone(), zeros(b, h))).collect();
    rels.extend(c.relations.iter().map(|r| stack(zeros(b, m), r.clone())));
    for (k, a) in f.target.alpha.iter().enumerate() {
        let mut bottom = zeros(b, h);
        bottom[k] = a.neg();
        rels.push(stack(jacobian(b, a), bottom));
    }
    FpModule::new(b.clone(), m + h, rels, diff_labels(f))
}

/// `M ⊗_B C` along a ring map given by the images of `B`'s variables.
pub fn base_change(module: &FpModule, target: &PresentedRing, images: &[Poly]) -> FpModule {
    let rels = module
        .relations
        .iter()
        .map(|c| c.iter().map(|p| target.simplify(&p.compose(images))).collect())
        .collect();
    FpModule::new(target.clone(), module.rank, rels, module.labels.clone())
}

/// The map `J/J² -> K[N] ⊗ W` on binomial generators of `J = ker(K[L] ->
/// K[N])`, with `W = ker(L^gp -> N^gp)`.
#[derive(Clone, Debug)]
pub struct NuMap {
    pub map: MonoidHom,
    /// `(l1, l2)` for each binomial `x^{l1} - x^{l2}`.
    pub binomials: Vec<(Elem, Elem)>,
    pub w: Kernel,
    /// Coordinates of `l1 - l2` on the generators of `W`.
    pub coords: Vec<Vec<BigInt>>,
    /// `g(l2)`, the monomial factor of each image.
    pub factors: Vec<Elem>,
}

impl NuMap {
    pub fn rank_w(&self) -> usize {
        self.w.inclusion.cols()
    }

    /// Image columns in `K[N]^{rank W}`, over the monoid algebra of the target.
    pub fn matrix(&self, ring: &PresentedRing) -> Vec<Col> {
        self.coords
            .iter()
            .zip(&self.factors)
            .map(|(c, t)| {
                let mono = Poly::monomial(ring.field(), crate::poly::Mono(t.clone()), ring.field().one());
                c.iter().map(|x| ring.simplify(&mono.scale(&ring.field().from_bigint(x)))).collect()
            })
            .collect()
    }

    /// `W` coordinates of `p - q` for `p, q` with equal images.
    pub fn w_coords(&self, p: &[u32], q: &[u32]) -> Vec<BigInt> {
        let v: Vec<BigInt> = p.iter().zip(q).map(|(a, b)| BigInt::from(*a as i64 - *b as i64)).collect();
        w_coords(&self.map, &self.w, &v)
    }

    /// `ν(Σ c_k (x^{p_k} - x^{q_k}))` collected by the normal form of the
    /// factor `g(q_k)`, in canonical coordinates of `W`; zero entries are
    /// dropped.
    pub fn value(&self, terms: &[(i64, Elem, Elem)]) -> BTreeMap<Elem, Vec<BigInt>> {
        let mut out: BTreeMap<Elem, Vec<BigInt>> = BTreeMap::new();
        for (c, p, q) in terms {
            let key = self.map.target.normal_form(&self.map.apply(q));
            let w = self.w.group.canonical(&self.w_coords(p, q));
            let e = out.entry(key).or_insert_with(|| vec![BigInt::zero(); w.len()]);
            for (a, b) in e.iter_mut().zip(&w) {
                *a += BigInt::from(*c) * b;
            }
        }
        for v in out.values_mut() {
            *v = self.w.group.canonical(v);
        }
        out.retain(|_, v| v.iter().any(|x| !x.is_zero()));
        out
    }
}

fn w_coords(map: &MonoidHom, w: &Kernel, v: &[BigInt]) -> Vec<BigInt> {
    let q = w.inclusion.cols();
    let pres = map.source.gp_presentation();
    let sol = solve_integer(&w.inclusion.hstack(&pres), v).expect("difference lies in the kernel");
    sol[..q].to_vec()
}

/// `ν_g` on the binomial generators of `ker(K[L] -> K[N])`.
pub fn nu_g(g: &MonoidHom) -> Result<NuMap> {
    if !g.is_surjective() {
        return Err(Error::NotSurjective);
    }
    let (w, _) = kernel_cokernel(&g.gp_map()?)?;
    let binomials = g.kernel_binomials();
    let mut coords = Vec::new();
    let mut factors = Vec::new();
    for (p, q) in &binomials {
        let v: Vec<BigInt> = p.iter().zip(q).map(|(a, b)| BigInt::from(*a as i64 - *b as i64)).collect();
        coords.push(w_coords(g, &w, &v));
        factors.push(g.apply(q));
    }
    Ok(NuMap {
        map: g.clone(),
        binomials,
        w,
        coords,
        factors,
    })
}

/// Presentation data of a conormal module.
#[derive(Clone, Debug)]
pub struct Conormal {
    pub module: FpModule,
    /// Generators of `I` used for `I/I²`, in the source ring.
    pub ideal_gens: Vec<Poly>,
    pub nu: NuMap,
}

/// `N_{(B,N)|(C,L)}` for a surjection with identity ring map: the pushout of
/// `I/I² <- B ⊗ J/J² -> B ⊗ W`.
pub fn conormal_module(s: &PrelogHom) -> Result<Conormal> {
    if !s.is_quotient_map() {
        return Err(Error::Precondition(
            "the ring map must be the quotient map on the same variables".into(),
        ));
    }
    let nu = nu_g(&s.monoid_map)?;
    let c = &s.source.ring;
    let b = &s.target.ring;
    let mut gens: Vec<Poly> = b
        .ideal()
        .iter()
        .map(|p| c.simplify(p))
        .filter(|p| !p.is_zero())
        .collect();
    let mut glue_index = Vec::new();
    for (p, q) in &nu.binomials {
        let u = c.simplify(&s.source.alpha_of(p).sub(&s.source.alpha_of(q)));
        if u.is_zero() {
            glue_index.push(None);
        } else {
            glue_index.push(Some(gens.len()));
            gens.push(u);
        }
    }
    let r = gens.len();
    let q = nu.rank_w();
    let cols: Vec<Col> = gens.iter().map(|p| vec![p.clone()]).collect();
    let mut rels: Vec<Col> = syzygies(c, &cols, 1)
        .into_iter()
        .map(|s| stack(s.iter().map(|p| b.simplify(p)).collect(), zeros(b, q)))
        .collect();
    for col in nu.w.group.presentation.columns() {
        rels.push(stack(zeros(b, r), int_col(b, col)));
    }
    for (k, (_, l2)) in nu.binomials.iter().enumerate() {
        let mut top = zeros(b, r);
        if let Some(i) = glue_index[k] {
            top[i] = b.one();
        }
        let factor = s.source.alpha_of(l2);
        let bottom: Col = nu.coords[k]
            .iter()
            .map(|x| b.simplify(&factor.scale(&b.field().from_bigint(x)).neg()))
            .collect();
        rels.push(stack(top, bottom));
    }
    let mut labels: Vec<String> = gens.iter().map(|p| format!("[{}]", c.show(p))).collect();
    labels.extend((0..q).map(|i| format!("w{}", i + 1)));
    Ok(Conormal {
        module: FpModule::new(b.clone(), r + q, rels, labels),
        ideal_gens: gens,
        nu,
    })
}

/// Residue-field dimension of `I/I²`.
pub fn ideal_mod_square_dim(s: &PrelogHom) -> usize {
    let c = &s.source.ring;
    let b = &s.target.ring;
    let gens: Vec<Poly> = b.ideal().iter().map(|p| c.simplify(p)).filter(|p| !p.is_zero()).collect();
    let cols: Vec<Col> = gens.iter().map(|p| vec![p.clone()]).collect();
    let rels = syzygies(c, &cols, 1)
        .into_iter()
        .map(|s| s.iter().map(|p| b.simplify(p)).collect())
        .collect();
    FpModule::new(b.clone(), gens.len(), rels, vec![String::new(); gens.len()]).residue_dimension()
}

fn unit(ring: &PresentedRing, n: usize, i: usize) -> Col {
    (0..n).map(|k| if k == i { ring.one() } else { ring.zero() }).collect()
}

/// Decides exactness of `M1 -a-> M2 -b-> M3 -> 0` over one ring; every check
/// is recorded as a membership fact.
pub fn check_right_exact(procedure: &str, m1: &FpModule, m2: &FpModule, m3: &FpModule, a: &[Col], b: &[Col]) -> Verdict {
    let ring = &m2.ring;
    let mut cert = Certificate::new(procedure);
    cert.field = Some(ring.field());
    let mut ok = true;
    let mut reasons = Vec::new();
    let mut record = |label: &str, rank: usize, gens: &[Col], elems: &[Col], expect_all: bool, cert: &mut Certificate| {
        let (fact, contained) = membership_fact(label, ring, rank, gens, elems);
        cert.facts.push(fact);
        let good = contained.iter().all(|&c| c);
        if expect_all && !good {
            ok = false;
            reasons.push(label.to_string());
        }
    };
    let a_rels: Vec<Col> = m1.relations.iter().map(|r| mat_vec(ring, a, m2.rank, r)).collect();
    record("left_well_defined", m2.rank, &m2.relations, &a_rels, true, &mut cert);
    let b_rels: Vec<Col> = m2.relations.iter().map(|r| mat_vec(ring, b, m3.rank, r)).collect();
    record("right_well_defined", m3.rank, &m3.relations, &b_rels, true, &mut cert);
    let ba: Vec<Col> = a.iter().map(|c| mat_vec(ring, b, m3.rank, c)).collect();
    record("composition_zero", m3.rank, &m3.relations, &ba, true, &mut cert);
    let cycles = crate::localalg::kernel(ring, b, &m3.relations, m3.rank);
    let b_cycles: Vec<Col> = cycles.iter().map(|z| mat_vec(ring, b, m3.rank, z)).collect();
    record("cycles", m3.rank, &m3.relations, &b_cycles, true, &mut cert);
    let mut bound = a.to_vec();
    bound.extend(m2.relations.iter().cloned());
    record("exact_middle", m2.rank, &bound, &cycles, true, &mut cert);
    let mut image = b.to_vec();
    image.extend(m3.relations.iter().cloned());
    let units: Vec<Col> = (0..m3.rank).map(|i| unit(ring, m3.rank, i)).collect();
    record("surjective_right", m3.rank, &image, &units, true, &mut cert);
    cert.data.insert("rank_left".into(), m1.rank as i64);
    cert.data.insert("rank_middle".into(), m2.rank as i64);
    cert.data.insert("rank_right".into(), m3.rank as i64);
    if !ok {
        cert.reason = format!("failed: {}", reasons.join(", "));
    }
    Verdict::new(Status::from_bool(ok), cert, Vec::new())
}

/// Decides whether `a: M1 -> M2` is an isomorphism.
pub fn check_isomorphism(procedure: &str, m1: &FpModule, m2: &FpModule, a: &[Col]) -> Verdict {
    let ring = &m2.ring;
    let mut cert = Certificate::new(procedure);
    cert.field = Some(ring.field());
    let a_rels: Vec<Col> = m1.relations.iter().map(|r| mat_vec(ring, a, m2.rank, r)).collect();
    let (f1, c1) = membership_fact("well_defined", ring, m2.rank, &m2.relations, &a_rels);
    let mut image = a.to_vec();
    image.extend(m2.relations.iter().cloned());
    let units: Vec<Col> = (0..m2.rank).map(|i| unit(ring, m2.rank, i)).collect();
    let (f2, c2) = membership_fact("surjective", ring, m2.rank, &image, &units);
    let ker = crate::localalg::kernel(ring, a, &m2.relations, m2.rank);
    let images: Vec<Col> = ker.iter().map(|z| mat_vec(ring, a, m2.rank, z)).collect();
    let (f3, c3) = membership_fact("cycles", ring, m2.rank, &m2.relations, &images);
    let (f4, c4) = membership_fact("injective", ring, m1.rank, &m1.relations, &ker);
    cert.facts.extend([f1, f2, f3, f4]);
    let mut failed = Vec::new();
    for (name, c) in [("well_defined", &c1), ("surjective", &c2), ("cycles", &c3), ("injective", &c4)] {
        if !c.iter().all(|&b| b) {
            failed.push(name);
        }
    }
    if !failed.is_empty() {
        cert.reason = format!("failed: {}", failed.join(", "));
    }
    Verdict::new(Status::from_bool(failed.is_empty()), cert, Vec::new())
}

/// Columns of the canonical map `C ⊗ Ω_{(B,N)|..} -> Ω_{(C,P)|..}` induced
/// by `g: (B,N) -> (C,P)`: `dy ↦ d g(y)`, `dlog n ↦ dlog g(n)`.
fn induced_columns(g: &PrelogHom) -> Vec<Col> {
    let c = &g.target.ring;
    let hp = g.target.monoid.num_generators();
    let mut cols: Vec<Col> = g
        .ring_map
        .iter()
        .map(|p| stack(jacobian(c, p), zeros(c, hp)))
        .collect();
    for img in &g.monoid_map.images {
        cols.push(stack(zeros(c, c.nvars()), int_col(c, img.iter().map(|&x| BigInt::from(x)))));
    }
    cols
}

fn identity_columns(ring: &PresentedRing, n: usize) -> Vec<Col> {
    (0..n).map(|i| unit(ring, n, i)).collect()
}

/// `C ⊗ Ω_{(B,N)|(A,M)} -> Ω_{(C,P)|(A,M)} -> Ω_{(C,P)|(B,N)} -> 0`.
pub fn check_first_sequence(f: &PrelogHom, g: &PrelogHom) -> Result<Verdict> {
    let composite = f.then(g)?;
    let c = &g.target.ring;
    let m1 = base_change(&log_differentials(f), c, &g.ring_map);
    let m2 = log_differentials(&composite);
    let m3 = log_differentials(g);
    let a = induced_columns(g);
    let b = identity_columns(c, m2.rank);
    Ok(check_right_exact("first_sequence", &m1, &m2, &m3, &a, &b))
}

/// `N_{(B,N)|(C,L)} -> B ⊗ Ω_{(C,L)|(A,M)} -> Ω_{(B,N)|(A,M)} -> 0` for a
/// surjection `s: (C,L) -> (B,N)`.
pub fn check_conormal_sequence(f: &PrelogHom, s: &PrelogHom) -> Result<Verdict> {
    let composite = f.then(s)?;
    let b = &s.target.ring;
    let conormal = conormal_module(s)?;
    let m1 = &conormal.module;
    let m2 = base_change(&log_differentials(f), b, &s.ring_map);
    let m3 = log_differentials(&composite);
    let nvars = b.nvars();
    let hl = s.source.monoid.num_generators();
    let mut a: Vec<Col> = conormal
        .ideal_gens
        .iter()
        .map(|p| stack(jacobian(b, p), zeros(b, hl)))
        .collect();
    for col in conormal.nu.w.inclusion.columns() {
        a.push(stack(zeros(b, nvars), int_col(b, col)));
    }
    let bcols = induced_columns(s);
    Ok(check_right_exact("conormal_sequence", m1, &m2, &m3, &a, &bcols))
}

/// Base change: for `h1: (A1,M1) -> (B1,N1)`, `h2: (A2,M2) -> (B2,N2)` with
/// `(B2,N2)` the pushout along `(A1,M1) -> (A2,M2)`, and the canonical map
/// `q: (B1,N1) -> (B2,N2)`, decides whether `B2 ⊗ Ω_{h1} -> Ω_{h2}` is an
/// isomorphism.
pub fn base_change_check(h1: &PrelogHom, h2: &PrelogHom, q: &PrelogHom) -> Verdict {
    let b2 = &h2.target.ring;
    let m1 = base_change(&log_differentials(h1), b2, &q.ring_map);
    let m2 = log_differentials(h2);
    check_isomorphism("base_change", &m1, &m2, &induced_columns(q))
}

/// `dim_k Hom(Ω, k)` against the number of minimal generators of `Ω`.
pub fn pairing_rank_identity(omega: &FpModule) -> bool {
    omega.dual_residue_dimension() == omega.minimalize().rank
}

/// The free prelog algebra `(A[X, Y], M ⊕ N^Y)` over `p`: new variables
/// `xs`, new monoid generators `ys` mapping to new variables of the same
/// name.
pub fn free_prelog_algebra(p: &PrelogRing, xs: &[&str], ys: &[&str]) -> Result<PrelogHom> {
    let r = &p.ring;
    let n = r.nvars();
    let extra = xs.len() + ys.len();
    let mut vars: Vec<String> = r.vars().to_vec();
    vars.extend(xs.iter().chain(ys).map(|s| s.to_string()));
    let positions: Vec<usize> = (0..n).collect();
    let ideal: Vec<Poly> = r.ideal().iter().map(|q| q.embed(n + extra, &positions)).collect();
    let ring = PresentedRing::new(vars, r.field(), ideal, r.mode())?;
    let g = p.monoid.num_generators();
    let widen = |e: &Elem| -> Elem {
        let mut v = e.clone();
        v.extend(std::iter::repeat_n(0, ys.len()));
        v
    };
    let mut names = p.monoid.names.clone();
    names.extend(ys.iter().map(|s| format!("{s}_log")));
    let monoid = crate::monoids::FinMonoid::new(
        names,
        p.monoid.relations.iter().map(|(a, b)| (widen(a), widen(b))).collect(),
        p.monoid.ideal.iter().map(widen).collect(),
    )?;
    let mut alpha: Vec<Poly> = p.alpha.iter().map(|a| a.embed(n + extra, &positions)).collect();
    alpha.extend((0..ys.len()).map(|j| ring.var(n + xs.len() + j)));
    let target = PrelogRing::new(ring.clone(), monoid, alpha)?;
    let ring_map = (0..n).map(|i| ring.var(i)).collect();
    let images = (0..g).map(|i| target.monoid.generator(i)).collect();
    PrelogHom::new(p.clone(), target, ring_map, images)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::Field;
    use crate::localalg::RingMode;
    use crate::monoids::FinMonoid;
    use crate::prelog::from_base;

    fn local(vars: &[&str], ideal: &[&str]) -> PresentedRing {
        PresentedRing::parse(vars, Field::Rational, ideal, RingMode::Local).unwrap()
    }

    fn log_point() -> PrelogRing {
        PrelogRing::parse(local(&["s", "t"], &[]), FinMonoid::free(&["a", "b"]), &["s", "t"]).unwrap()
    }

    #[test]
    fn log_point_differentials_are_free_on_dlogs() {
        let omega = log_differentials(&from_base(&log_point())).minimalize();
        assert_eq!(omega.rank, 2);
        assert!(omega.relations.is_empty());
        assert_eq!(omega.labels, vec!["dlog a", "dlog b"]);
    }

    #[test]
    fn surjective_monoid_map_gives_ring_differentials() {
        // (K[x], N) -> (K[x,y]/(y - x^2), N) with the identity on N
        let a = PrelogRing::parse(local(&["x"], &[]), FinMonoid::free(&["a"]), &["x"]).unwrap();
        let b = PrelogRing::parse(local(&["x", "y"], &["y - x^2"]), FinMonoid::free(&["a"]), &["x"]).unwrap();
        let f = PrelogHom::parse(a, b, &["x"], vec![vec![1]]).unwrap();
        assert!(log_differentials(&f).is_zero());
        assert!(ring_differentials(&f).is_zero());
    }

    #[test]
    fn free_algebra_is_free() {
        let p = log_point();
        let f = free_prelog_algebra(&p, &["x"], &["y"]).unwrap();
        let omega = log_differentials(&f).minimalize();
        assert_eq!(omega.rank, 2);
        assert!(omega.relations.is_empty());
    }

    #[test]
    fn nu_of_addition_map() {
        let n2 = FinMonoid::free(&["x", "y"]);
        let n = FinMonoid::free(&["t"]);
        let g = MonoidHom::new(n2, n.clone(), vec![vec![1], vec![1]]).unwrap();
        let nu = nu_g(&g).unwrap();
        assert_eq!(nu.binomials, vec![(vec![1, 0], vec![0, 1])]);
        assert_eq!(nu.factors, vec![vec![1]]);
        assert_eq!(nu.rank_w(), 1);
        let ring = n.algebra(Field::Rational);
        let m = nu.matrix(&ring);
        assert_eq!(ring.show(&m[0][0]).trim_start_matches('-'), "t");
        // additivity
        let once = nu.value(&[(1, vec![1, 0], vec![0, 1])]);
        let twice = nu.value(&[(2, vec![1, 0], vec![0, 1])]);
        let doubled: Vec<BigInt> = once[&vec![1]].iter().map(|x| x * 2).collect();
        assert_eq!(twice[&vec![1]], doubled);
        let id = MonoidHom::identity(&n);
        let nu = nu_g(&id).unwrap();
        assert!(nu.binomials.is_empty());
        assert_eq!(nu.rank_w(), 0);
        let twice_map = MonoidHom::new(n.clone(), n, vec![vec![2]]).unwrap();
        assert_eq!(nu_g(&twice_map).unwrap_err(), Error::NotSurjective);
    }

    #[test]
    fn conormal_of_point_quotient() {
        // (K[x], N) -> (K, N/<1>)
        let c = PrelogRing::parse(local(&["x"], &[]), FinMonoid::free(&["a"]), &["x"]).unwrap();
        let b = c.quotient_prelog(&c.maximal_ideal(), 8).unwrap();
        let s = PrelogHom::parse(c.clone(), b, &["x"], vec![vec![1]]).unwrap();
        let n = conormal_module(&s).unwrap();
        assert_eq!(n.module.residue_dimension(), 1);
        // with trivial kernel the conormal module is I/I^2
        let b = PrelogRing::parse(local(&["x"], &["x^2"]), FinMonoid::free(&["a"]), &["x"]).unwrap();
        let s = PrelogHom::parse(c.clone(), b, &["x"], vec![vec![1]]).unwrap();
        let n = conormal_module(&s).unwrap();
        assert_eq!(n.module.residue_dimension(), 1);
        assert_eq!(ideal_mod_square_dim(&s), 1);
        let id = PrelogHom::identity(&c);
        assert!(conormal_module(&id).unwrap().module.is_zero());
    }

    #[test]
    fn sequences_on_small_towers() {
        let k = crate::prelog::base_point(Field::Rational);
        let line = PrelogRing::parse(local(&["s"], &[]), FinMonoid::free(&["a"]), &["s"]).unwrap();
        let plane = log_point();
        let f = PrelogHom::new(k.clone(), line.clone(), vec![], vec![]).unwrap();
        let g = PrelogHom::parse(line.clone(), plane.clone(), &["s"], vec![vec![1, 0]]).unwrap();
        assert!(check_first_sequence(&f, &g).unwrap().holds());
        // degenerate tower
        assert!(check_first_sequence(&f, &PrelogHom::identity(&line)).unwrap().holds());
        // node quotient
        let node = PrelogRing::parse(local(&["s", "t"], &["s*t"]), FinMonoid::free(&["a", "b"]), &["s", "t"]).unwrap();
        let q = PrelogHom::parse(plane.clone(), node, &["s", "t"], vec![vec![1, 0], vec![0, 1]]).unwrap();
        let f0 = from_base(&plane);
        assert!(check_first_sequence(&f0, &q).unwrap().holds());
        assert!(check_conormal_sequence(&f0, &q).unwrap().holds());
        // log point modulo <s> with the induced monoid quotient
        let sq = plane.quotient_prelog(&[plane.ring.var(0)], 8).unwrap();
        let s = PrelogHom::parse(plane.clone(), sq, &["s", "t"], vec![vec![1, 0], vec![0, 1]]).unwrap();
        assert!(check_conormal_sequence(&f0, &s).unwrap().holds());
        assert!(check_conormal_sequence(&f0, &PrelogHom::identity(&plane)).unwrap().holds());
    }

    #[test]
    fn base_change_of_identity() {
        let p = log_point();
        let h = from_base(&p);
        assert!(base_change_check(&h, &h, &PrelogHom::identity(&p)).holds());
    }

    #[test]
    fn pairing_identity_on_examples() {
        let p = log_point();
        assert!(pairing_rank_identity(&log_differentials(&from_base(&p))));
        let node = PrelogRing::parse(local(&["x", "y"], &["x*y"]), FinMonoid::free(&["a", "b"]), &["x", "y"]).unwrap();
        assert!(pairing_rank_identity(&log_differentials(&from_base(&node))));
    }
}
