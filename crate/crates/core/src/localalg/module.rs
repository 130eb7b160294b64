use crate::arith::Coef;
use crate::groebner::{Engine, MVec};
use crate::poly::Poly;

use super::ring::{coef_rank, PresentedRing};

/// A column vector over a ring.
pub type Col = Vec<Poly>;

/// Submodule of `R^rank` generated by columns, together with `I R^rank`.
/// Membership is decided by normal forms against a standard basis.
#[derive(Clone, Debug)]
pub struct Submodule {
    pub rank: usize,
    engine: Engine,
    basis: Vec<MVec>,
}

impl Submodule {
    pub fn new(ring: &PresentedRing, rank: usize, gens: &[Col]) -> Submodule {
        let engine = ring.module_engine(rank, 0);
        let mut all: Vec<MVec> = gens.iter().map(|c| engine.vec(c)).collect();
        all.extend(ideal_multiples(ring, &engine, rank, 0));
        let basis = engine.standard_basis(&all);
        Submodule {
            rank,
            engine,
            basis,
        }
    }

    pub fn contains(&self, v: &[Poly]) -> bool {
        self.engine.reduce(&self.engine.vec(v), &self.basis).is_zero()
    }

    pub fn reduce(&self, v: &[Poly]) -> Col {
        self.engine.polys(&self.engine.reduce(&self.engine.vec(v), &self.basis))
    }

    pub fn basis(&self) -> Vec<Col> {
        self.basis.iter().map(|b| self.engine.polys(b)).collect()
    }

    pub fn engine(&self) -> &Engine {
        &self.engine
    }

    pub fn raw_basis(&self) -> &[MVec] {
        &self.basis
    }
}

/// `g e_i` for the ring's standard basis elements `g`, placed in components
/// `offset .. offset + rank` of the engine's free module.
fn ideal_multiples(ring: &PresentedRing, engine: &Engine, rank: usize, offset: usize) -> Vec<MVec> {
    let mut out = Vec::new();
    for g in ring.standard_basis() {
        for i in 0..rank {
            let mut comps = vec![ring.zero(); engine.rank];
            comps[offset + i] = g.clone();
            out.push(engine.vec(&comps));
        }
    }
    out
}

/// Generators of the syzygies of `cols` (each of length `rank`) over the ring.
pub fn syzygies(ring: &PresentedRing, cols: &[Col], rank: usize) -> Vec<Col> {
    let m = cols.len();
    if m == 0 {
        return Vec::new();
    }
    let engine = ring.module_engine(rank + m, rank);
    let mut gens = Vec::with_capacity(m);
    for (j, c) in cols.iter().enumerate() {
        assert_eq!(c.len(), rank, "column length");
        let mut comps = c.clone();
        comps.extend((0..m).map(|k| if k == j { ring.one() } else { ring.zero() }));
        gens.push(engine.vec(&comps));
    }
    gens.extend(ideal_multiples(ring, &engine, rank, 0));
    let basis = engine.standard_basis(&gens);
    let mut out = Vec::new();
    for b in basis {
        if b.lead_term().comp >= rank {
            let comps = engine.polys(&b);
            let s: Col = comps[rank..].iter().map(|p| ring.simplify(p)).collect();
            if s.iter().any(|p| !p.is_zero()) {
                out.push(s);
            }
        }
    }
    out
}

/// Columns `x` of length `m` with `G x` in the span of `rels` (all in
/// `R^rank`), i.e. the kernel of `R^m -> R^rank / <rels>`.
pub fn kernel(ring: &PresentedRing, g: &[Col], rels: &[Col], rank: usize) -> Vec<Col> {
    let m = g.len();
    let mut all = g.to_vec();
    all.extend(rels.iter().cloned());
    let mut out: Vec<Col> = syzygies(ring, &all, rank)
        .into_iter()
        .map(|s| s[..m].to_vec())
        .filter(|s| s.iter().any(|p| !p.is_zero()))
        .collect();
    out.dedup();
    out
}

pub fn mat_vec(ring: &PresentedRing, cols: &[Col], rank: usize, x: &[Poly]) -> Col {
    let mut out = vec![ring.zero(); rank];
    for (c, a) in cols.iter().zip(x) {
        if a.is_zero() {
            continue;
        }
        for i in 0..rank {
            out[i] = out[i].add(&c[i].mul(a));
        }
    }
    out.into_iter().map(|p| ring.simplify(&p)).collect()
}

/// A finitely presented module `R^rank / <relations>` with labelled
/// generators.
#[derive(Clone, Debug)]
pub struct FpModule {
    pub ring: PresentedRing,
    pub rank: usize,
    pub relations: Vec<Col>,
    pub labels: Vec<String>,
}

impl FpModule {
    pub fn new(ring: PresentedRing, rank: usize, relations: Vec<Col>, labels: Vec<String>) -> FpModule {
        assert_eq!(labels.len(), rank, "one label per generator");
        for r in &relations {
            assert_eq!(r.len(), rank, "relation length");
        }
        FpModule {
            ring,
            rank,
            relations,
            labels,
        }
    }

    pub fn free(ring: PresentedRing, labels: Vec<String>) -> FpModule {
        let rank = labels.len();
        FpModule::new(ring, rank, Vec::new(), labels)
    }

    pub fn zero(ring: PresentedRing) -> FpModule {
        FpModule::new(ring, 0, Vec::new(), Vec::new())
    }

    pub fn submodule(&self) -> Submodule {
        Submodule::new(&self.ring, self.rank, &self.relations)
    }

    /// Whether a vector of `R^rank` is zero in the module.
    pub fn is_zero_element(&self, v: &[Poly]) -> bool {
        self.submodule().contains(v)
    }

    pub fn direct_sum(&self, o: &FpModule) -> FpModule {
        let rank = self.rank + o.rank;
        let mut rels = Vec::new();
        for r in &self.relations {
            let mut c = r.clone();
            c.extend((0..o.rank).map(|_| self.ring.zero()));
            rels.push(c);
        }
        for r in &o.relations {
            let mut c: Col = (0..self.rank).map(|_| self.ring.zero()).collect();
            c.extend(r.iter().cloned());
            rels.push(c);
        }
        let mut labels = self.labels.clone();
        labels.extend(o.labels.iter().cloned());
        FpModule::new(self.ring.clone(), rank, rels, labels)
    }

    /// `W / <extra columns>`.
    pub fn cokernel_of(&self, extra: &[Col]) -> FpModule {
        let mut rels = self.relations.clone();
        rels.extend(extra.iter().cloned());
        FpModule::new(self.ring.clone(), self.rank, rels, self.labels.clone())
    }

    /// `W ⊗ R/J`, as a module over `R/J`.
    pub fn tensor_quotient(&self, j: &[Poly]) -> FpModule {
        let ring = self.ring.quotient(j);
        FpModule::new(ring, self.rank, self.relations.clone(), self.labels.clone())
    }

    /// Relations evaluated at the origin, as rows of a `rank x #relations`
    /// coefficient matrix (transposed: one row per relation).
    fn constant_rows(&self) -> Vec<Vec<Coef>> {
        self.relations
            .iter()
            .map(|c| c.iter().map(Poly::constant_term).collect())
            .collect()
    }

    /// `dim_k W ⊗ k` for the residue field at the origin.
    pub fn residue_dimension(&self) -> usize {
        self.rank - coef_rank(&self.constant_rows(), self.rank)
    }

    /// `dim_k Hom(W, k)`: the kernel of the transposed constant matrix.
    pub fn dual_residue_dimension(&self) -> usize {
        // Hom(coker P, k) = {phi in k^rank : phi P(0) = 0}
        let p0 = self.constant_rows();
        let mut cols: Vec<Vec<Coef>> = vec![Vec::with_capacity(p0.len()); self.rank];
        for row in &p0 {
            for (i, c) in row.iter().enumerate() {
                cols[i].push(c.clone());
            }
        }
        self.rank - coef_rank(&cols, p0.len())
    }

    /// Minimal presentation at the origin: eliminates generators against
    /// relation entries that are units, then drops relations that vanish.
    pub fn minimalize(&self) -> FpModule {
        let ring = &self.ring;
        let mut rank = self.rank;
        let mut labels = self.labels.clone();
        let mut rels: Vec<Col> = self
            .relations
            .iter()
            .map(|c| c.iter().map(|p| ring.simplify(p)).collect())
            .collect();
        loop {
            let pivot = rels.iter().enumerate().find_map(|(c, col)| {
                col.iter()
                    .enumerate()
                    .filter(|(_, p)| ring.is_unit_at_origin(p))
                    .min_by_key(|(_, p)| p.num_terms())
                    .map(|(i, _)| (i, c))
            });
            let Some((i, c)) = pivot else {
                break;
            };
            let pc = rels.remove(c);
            let u = pc[i].clone();
            for col in rels.iter_mut() {
                let a = col[i].clone();
                let mut new = Vec::with_capacity(rank - 1);
                for k in 0..rank {
                    if k == i {
                        continue;
                    }
                    let v = if a.is_zero() {
                        col[k].mul(&u)
                    } else {
                        col[k].mul(&u).sub(&pc[k].mul(&a))
                    };
                    new.push(ring.simplify(&v));
                }
                *col = new;
            }
            rank -= 1;
            labels.remove(i);
        }
        rels.retain(|c| c.iter().any(|p| !ring.is_zero(p)));
        FpModule::new(ring.clone(), rank, rels, labels)
    }

    /// Free at the origin: the minimal presentation has no relations.
    pub fn is_free(&self) -> bool {
        self.minimalize().relations.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.residue_dimension() == 0
    }

    pub fn show_relations(&self) -> Vec<Vec<String>> {
        self.relations
            .iter()
            .map(|c| c.iter().map(|p| self.ring.show(p)).collect())
            .collect()
    }
}

/// A homomorphism of finitely presented modules: column `j` is the image of
/// source generator `j` in target coordinates.
#[derive(Clone, Debug)]
pub struct ModMap {
    pub source: FpModule,
    pub target: FpModule,
    pub columns: Vec<Col>,
}

impl ModMap {
    pub fn new(source: FpModule, target: FpModule, columns: Vec<Col>) -> ModMap {
        assert_eq!(columns.len(), source.rank, "one image per source generator");
        for c in &columns {
            assert_eq!(c.len(), target.rank, "image length");
        }
        ModMap {
            source,
            target,
            columns,
        }
    }

    fn apply(&self, x: &[Poly]) -> Col {
        mat_vec(&self.source.ring, &self.columns, self.target.rank, x)
    }

    /// Every source relation maps into the target relations.
    pub fn is_well_defined(&self) -> bool {
        let sub = self.target.submodule();
        self.source
            .relations
            .iter()
            .all(|r| sub.contains(&self.apply(r)))
    }

    pub fn is_surjective(&self) -> bool {
        let mut gens = self.columns.clone();
        gens.extend(self.target.relations.iter().cloned());
        let sub = Submodule::new(&self.target.ring, self.target.rank, &gens);
        let ring = &self.target.ring;
        (0..self.target.rank).all(|i| {
            let e: Col = (0..self.target.rank)
                .map(|k| if k == i { ring.one() } else { ring.zero() })
                .collect();
            sub.contains(&e)
        })
    }

    pub fn compose_is_zero(&self, g: &ModMap) -> bool {
        let sub = g.target.submodule();
        self.columns.iter().all(|c| sub.contains(&g.apply(c)))
    }

    /// Generators of the kernel, as vectors in source coordinates.
    pub fn kernel_generators(&self) -> Vec<Col> {
        kernel(&self.source.ring, &self.columns, &self.target.relations, self.target.rank)
    }

    /// Injectivity: each kernel generator is zero in the source.
    pub fn is_injective(&self) -> bool {
        let sub = self.source.submodule();
        self.kernel_generators().iter().all(|k| sub.contains(k))
    }
}

/// Outcome of comparing `ker g` with `im f` for `W1 -f-> W2 -g-> W3`.
#[derive(Clone, Debug)]
pub struct Homology {
    /// Kernel generators in `R^{rank W2}`.
    pub cycles: Vec<Col>,
    /// For each cycle, whether it lies in `im f + rel W2`.
    pub bounded: Vec<bool>,
    /// Standard basis of `im f + rel W2 + I R^b`.
    pub boundary_basis: Vec<Col>,
    /// `ker g / im f` presented on the cycles.
    pub presentation: FpModule,
    /// The same module, minimally presented.
    pub module: FpModule,
}

impl Homology {
    pub fn vanishes(&self) -> bool {
        self.bounded.iter().all(|&b| b)
    }

    /// Index of a cycle that is not a boundary.
    pub fn witness(&self) -> Option<usize> {
        self.bounded.iter().position(|&b| !b)
    }
}

/// Homology at the middle of `R^a -f-> R^b / rels_b -g-> R^c / rels_c`,
/// with maps given by columns.
pub fn homology(
    ring: &PresentedRing,
    f: &[Col],
    g: &[Col],
    rank_b: usize,
    rels_b: &[Col],
    rank_c: usize,
    rels_c: &[Col],
) -> Homology {
    let cycles = if rank_c == 0 {
        (0..rank_b)
            .map(|i| {
                (0..rank_b)
                    .map(|k| if k == i { ring.one() } else { ring.zero() })
                    .collect()
            })
            .collect()
    } else {
        kernel(ring, g, rels_c, rank_c)
    };
    let mut bgens = f.to_vec();
    bgens.extend(rels_b.iter().cloned());
    let boundaries = Submodule::new(ring, rank_b, &bgens);
    let bounded: Vec<bool> = cycles.iter().map(|z| boundaries.contains(z)).collect();
    let k = cycles.len();
    let rels = if bounded.iter().all(|&b| b) {
        // all cycles are boundaries: the quotient is zero
        (0..k)
            .map(|i| (0..k).map(|j| if j == i { ring.one() } else { ring.zero() }).collect())
            .collect()
    } else {
        let mut all = cycles.clone();
        all.extend(bgens.iter().cloned());
        syzygies(ring, &all, rank_b)
            .into_iter()
            .map(|s| s[..k].to_vec())
            .filter(|s| s.iter().any(|p| !p.is_zero()))
            .collect()
    };
    let labels = (0..k).map(|i| format!("z{i}")).collect();
    let presentation = FpModule::new(ring.clone(), k, rels, labels);
    Homology {
        module: presentation.minimalize(),
        presentation,
        boundary_basis: boundaries.basis(),
        cycles,
        bounded,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::Field;
    use crate::localalg::ring::RingMode;

    fn local(vars: &[&str], ideal: &[&str]) -> PresentedRing {
        PresentedRing::parse(vars, Field::Rational, ideal, RingMode::Local).unwrap()
    }

    #[test]
    fn syzygies_of_xy_in_node() {
        let r = local(&["x", "y"], &["x*y"]);
        let x = r.var(0);
        let y = r.var(1);
        let syz = syzygies(&r, &[vec![x.clone()], vec![y.clone()]], 1);
        // every syzygy is one, and (y, 0) is among the module they generate
        for s in &syz {
            assert!(r.is_zero(&s[0].mul(&x).add(&s[1].mul(&y))));
        }
        let sub = Submodule::new(&r, 2, &syz);
        assert!(sub.contains(&[y.clone(), r.zero()]));
        assert!(sub.contains(&[r.zero(), x.clone()]));
    }

    #[test]
    fn module_examples() {
        let r = local(&["x", "y"], &[]);
        let free = FpModule::free(r.clone(), vec!["a".into(), "b".into()]);
        assert!(free.is_free());
        assert_eq!(free.residue_dimension(), 2);
        let r1 = local(&["x"], &[]);
        let m = FpModule::new(r1.clone(), 1, vec![vec![r1.var(0)]], vec!["a".into()]);
        assert_eq!(m.residue_dimension(), 1);
        assert!(!m.is_free());
        let w = FpModule::new(r.clone(), 1, vec![vec![r.var(0)], vec![r.var(1)]], vec!["a".into()]);
        assert_eq!(w.residue_dimension(), 1);
        assert_eq!(w.dual_residue_dimension(), 1);
    }

    #[test]
    fn minimalize_eliminates_unit_relations() {
        let r = local(&["x"], &[]);
        let x = r.var(0);
        let one_plus_x = r.one().add(&x);
        // generators a, b with relation (1+x) a - x b: free of rank 1 on b
        let m = FpModule::new(
            r.clone(),
            2,
            vec![vec![one_plus_x, x.neg()]],
            vec!["a".into(), "b".into()],
        );
        let mm = m.minimalize();
        assert_eq!(mm.rank, 1);
        assert!(mm.relations.is_empty());
        assert_eq!(mm.labels, vec!["b".to_string()]);
    }

    #[test]
    fn homology_of_koszul_on_node() {
        let r = local(&["x", "y"], &["x*y"]);
        let (x, y) = (r.var(0), r.var(1));
        let d1 = vec![vec![x.clone()], vec![y.clone()]];
        let d2 = vec![vec![y.clone(), x.neg()]];
        let h = homology(&r, &d2, &d1, 2, &[], 1, &[]);
        assert!(!h.vanishes());
        assert_eq!(h.module.residue_dimension(), 1);
        let r2 = local(&["x", "y"], &[]);
        let (x, y) = (r2.var(0), r2.var(1));
        let h = homology(
            &r2,
            &[vec![y.clone(), x.neg()]],
            &[vec![x], vec![y]],
            2,
            &[],
            1,
            &[],
        );
        assert!(h.vanishes());
        assert_eq!(h.module.rank, 0);
    }
}
