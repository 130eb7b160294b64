//! Finitely generated abelian groups via Smith normal form, and the
//! dimensions of `Hom`, `Ext^1`, `Tor_1` and `⊗` into a prime field or `Q`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::Field;
use crate::error::{Error, Result};
use crate::intmat::IntMat;

/// `U * A * V = D` with `U`, `V` unimodular and `D` diagonal with
/// `d_1 | d_2 | ...`, all `d_i >= 0`. Also carries `U^{-1}` and `V^{-1}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Snf {
    pub u: IntMat,
    pub d: IntMat,
    pub v: IntMat,
    pub u_inv: IntMat,
    pub v_inv: IntMat,
}

impl Snf {
    pub fn rank(&self) -> usize {
        self.diagonal().iter().take_while(|x| !x.is_zero()).count()
    }

    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.d.rows().min(self.d.cols()))
            .map(|i| self.d.get(i, i).clone())
            .collect()
    }
}

fn min_abs_entry(d: &IntMat, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for i in t..d.rows() {
        for j in t..d.cols() {
            let x = d.get(i, j);
            if x.is_zero() {
                continue;
            }
            if best.is_none_or(|(bi, bj)| x.abs() < d.get(bi, bj).abs()) {
                best = Some((i, j));
            }
        }
    }
    best
}

/// Smith normal form by repeated minimal-absolute-value pivoting. The output
/// is a deterministic function of the input.
pub fn smith_normal_form(a: &IntMat) -> Snf {
    let (m, n) = (a.rows(), a.cols());
    let mut d = a.clone();
    let mut u = IntMat::identity(m);
    let mut u_inv = IntMat::identity(m);
    let mut v = IntMat::identity(n);
    let mut v_inv = IntMat::identity(n);

    // row ops act on U from the left and on U^{-1} from the right (inverse
    // column ops); column ops likewise on V and V^{-1}
    let swap_rows = |d: &mut IntMat, u: &mut IntMat, ui: &mut IntMat, a: usize, b: usize| {
        d.swap_rows(a, b);
        u.swap_rows(a, b);
        ui.swap_cols(a, b);
    };
    let swap_cols = |d: &mut IntMat, v: &mut IntMat, vi: &mut IntMat, a: usize, b: usize| {
        d.swap_cols(a, b);
        v.swap_cols(a, b);
        vi.swap_rows(a, b);
    };
    // row dst += q row src
    let add_row = |d: &mut IntMat, u: &mut IntMat, ui: &mut IntMat, dst: usize, src: usize, q: &BigInt| {
        d.add_row(dst, src, q);
        u.add_row(dst, src, q);
        ui.add_col(src, dst, &-q);
    };
    let add_col = |d: &mut IntMat, v: &mut IntMat, vi: &mut IntMat, dst: usize, src: usize, q: &BigInt| {
        d.add_col(dst, src, q);
        v.add_col(dst, src, q);
        vi.add_row(src, dst, &-q);
    };

    for t in 0..m.min(n) {
        let Some((pi, pj)) = min_abs_entry(&d, t) else {
            break;
        };
        swap_rows(&mut d, &mut u, &mut u_inv, t, pi);
        swap_cols(&mut d, &mut v, &mut v_inv, t, pj);
        loop {
            let p = d.get(t, t).clone();
            let mut clean = true;
            for i in t + 1..m {
                if !d.get(i, t).is_zero() {
                    let q = d.get(i, t).div_floor(&p);
                    add_row(&mut d, &mut u, &mut u_inv, i, t, &-q);
                    if !d.get(i, t).is_zero() {
                        clean = false;
                    }
                }
            }
            for j in t + 1..n {
                if !d.get(t, j).is_zero() {
                    let q = d.get(t, j).div_floor(&p);
                    add_col(&mut d, &mut v, &mut v_inv, j, t, &-q);
                    if !d.get(t, j).is_zero() {
                        clean = false;
                    }
                }
            }
            if !clean {
                // a smaller remainder exists in row or column t: pivot on it
                let mut best = (t, t);
                for i in t + 1..m {
                    let x = d.get(i, t);
                    if !x.is_zero() && x.abs() < d.get(best.0, best.1).abs() {
                        best = (i, t);
                    }
                }
                for j in t + 1..n {
                    let x = d.get(t, j);
                    if !x.is_zero() && x.abs() < d.get(best.0, best.1).abs() {
                        best = (t, j);
                    }
                }
                swap_rows(&mut d, &mut u, &mut u_inv, t, best.0);
                swap_cols(&mut d, &mut v, &mut v_inv, t, best.1);
                continue;
            }
            let bad = (t + 1..m)
                .flat_map(|i| (t + 1..n).map(move |j| (i, j)))
                .find(|&(i, j)| !d.get(i, j).is_multiple_of(&p));
            match bad {
                Some((i, _)) => add_row(&mut d, &mut u, &mut u_inv, t, i, &BigInt::one()),
                None => break,
            }
        }
        if d.get(t, t).is_negative() {
            d.negate_row(t);
            u.negate_row(t);
            u_inv.negate_col(t);
        }
    }
    Snf { u, d, v, u_inv, v_inv }
}

/// Checks `U A V = D`, the divisibility chain, and unimodularity of `U`, `V`.
pub fn verify_snf(a: &IntMat, s: &Snf) -> bool {
    if s.u.mul(a).mul(&s.v) != s.d {
        return false;
    }
    for i in 0..s.d.rows() {
        for j in 0..s.d.cols() {
            if i != j && !s.d.get(i, j).is_zero() {
                return false;
            }
        }
    }
    let diag = s.diagonal();
    if diag.iter().any(|x| x.is_negative()) {
        return false;
    }
    for w in diag.windows(2) {
        let ok = if w[0].is_zero() {
            w[1].is_zero()
        } else {
            w[1].is_multiple_of(&w[0])
        };
        if !ok {
            return false;
        }
    }
    s.u.determinant().abs().is_one() && s.v.determinant().abs().is_one()
}

/// Integer solution of `A x = b`, if one exists.
pub fn solve_integer(a: &IntMat, b: &[BigInt]) -> Option<Vec<BigInt>> {
    solve_with(&smith_normal_form(a), a.cols(), b)
}

fn solve_with(s: &Snf, ncols: usize, b: &[BigInt]) -> Option<Vec<BigInt>> {
    let ub = s.u.mul_vec(b);
    let r = s.rank();
    let diag = s.diagonal();
    let mut y = vec![BigInt::zero(); ncols];
    for (i, c) in ub.iter().enumerate() {
        if i < r {
            if !c.is_multiple_of(&diag[i]) {
                return None;
            }
            y[i] = c / &diag[i];
        } else if !c.is_zero() {
            return None;
        }
    }
    Some(s.v.mul_vec(&y))
}

/// A basis of the integer kernel of `A`, as columns.
pub fn integer_kernel(a: &IntMat) -> IntMat {
    let s = smith_normal_form(a);
    let r = s.rank();
    let idx: Vec<usize> = (r..a.cols()).collect();
    s.v.select_columns(&idx)
}

/// A basis of the lattice spanned by the columns of `a`.
pub fn lattice_basis(a: &IntMat) -> IntMat {
    let s = smith_normal_form(a);
    let diag = s.diagonal();
    let cols: Vec<Vec<BigInt>> = (0..s.rank())
        .map(|i| s.u_inv.column(i).iter().map(|x| x * &diag[i]).collect())
        .collect();
    IntMat::from_columns(a.rows(), &cols)
}

/// `Z^n / (column span of presentation)` in invariant-factor form.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FgAbGroup {
    pub rank: usize,
    #[serde(with = "crate::intmat::bigint_vec_serde")]
    pub invariant_factors: Vec<BigInt>,
    /// Relations as columns; one row per presentation generator.
    pub presentation: IntMat,
    /// Rows map presentation coordinates to canonical coordinates
    /// (torsion coordinates first, then free ones).
    pub to_canonical: IntMat,
    /// Columns are the canonical generators in presentation coordinates.
    pub from_canonical: IntMat,
}

impl FgAbGroup {
    pub fn from_presentation(r: &IntMat) -> FgAbGroup {
        let n = r.rows();
        let s = smith_normal_form(r);
        let diag = s.diagonal();
        let mut torsion_idx = Vec::new();
        let mut invariant_factors = Vec::new();
        for (i, d) in diag.iter().enumerate() {
            if d.is_zero() {
                break;
            }
            if !d.is_one() {
                torsion_idx.push(i);
                invariant_factors.push(d.clone());
            }
        }
        let free_idx: Vec<usize> = (s.rank()..n).collect();
        let keep: Vec<usize> = torsion_idx.iter().chain(&free_idx).copied().collect();
        FgAbGroup {
            rank: free_idx.len(),
            invariant_factors,
            presentation: r.clone(),
            to_canonical: s.u.select_rows(&keep),
            from_canonical: s.u_inv.select_columns(&keep),
        }
    }

    pub fn free(n: usize) -> FgAbGroup {
        FgAbGroup::from_presentation(&IntMat::zeros(n, 0))
    }

    pub fn num_generators(&self) -> usize {
        self.presentation.rows()
    }

    pub fn is_trivial(&self) -> bool {
        self.rank == 0 && self.invariant_factors.is_empty()
    }

    pub fn is_free(&self) -> bool {
        self.invariant_factors.is_empty()
    }

    pub fn is_finite(&self) -> bool {
        self.rank == 0
    }

    /// Structural isomorphism test.
    pub fn isomorphic(&self, o: &FgAbGroup) -> bool {
        self.rank == o.rank && self.invariant_factors == o.invariant_factors
    }

    /// Canonical coordinates of an element: torsion parts reduced.
    pub fn canonical(&self, x: &[BigInt]) -> Vec<BigInt> {
        let mut c = self.to_canonical.mul_vec(x);
        for (i, d) in self.invariant_factors.iter().enumerate() {
            c[i] = c[i].mod_floor(d);
        }
        c
    }

    pub fn is_zero_element(&self, x: &[BigInt]) -> bool {
        self.canonical(x).iter().all(Zero::is_zero)
    }

    /// Diagonal presentation in canonical coordinates.
    pub fn canonical_presentation(&self) -> IntMat {
        let t = self.invariant_factors.len();
        let n = t + self.rank;
        let mut m = IntMat::zeros(n, t);
        for (i, d) in self.invariant_factors.iter().enumerate() {
            m.set(i, i, d.clone());
        }
        m
    }

    pub fn describe(&self) -> String {
        let mut parts: Vec<String> = self
            .invariant_factors
            .iter()
            .map(|d| format!("Z/{d}"))
            .collect();
        match self.rank {
            0 => {}
            1 => parts.push("Z".into()),
            r => parts.push(format!("Z^{r}")),
        }
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" + ")
        }
    }
}

/// Homomorphism given by an integer matrix in presentation coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AbGroupMap {
    pub source: FgAbGroup,
    pub target: FgAbGroup,
    pub matrix: IntMat,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Kernel {
    pub group: FgAbGroup,
    /// Columns are the kernel generators in source presentation coordinates.
    pub inclusion: IntMat,
}

impl AbGroupMap {
    pub fn new(source: FgAbGroup, target: FgAbGroup, matrix: IntMat) -> Result<AbGroupMap> {
        if matrix.rows() != target.num_generators() || matrix.cols() != source.num_generators() {
            return Err(Error::Shape(format!(
                "map matrix is {}x{}, expected {}x{}",
                matrix.rows(),
                matrix.cols(),
                target.num_generators(),
                source.num_generators()
            )));
        }
        let f = AbGroupMap {
            source,
            target,
            matrix,
        };
        f.check()?;
        Ok(f)
    }

    fn check(&self) -> Result<()> {
        let image = self.matrix.mul(&self.source.presentation);
        for (j, col) in image.columns().iter().enumerate() {
            if !self.target.is_zero_element(col) {
                return Err(Error::IllFormedMap(format!(
                    "relation {j} of the source maps to a nonzero element"
                )));
            }
        }
        Ok(())
    }

    /// Matrix in canonical coordinates of source and target.
    pub fn canonical_matrix(&self) -> IntMat {
        self.target
            .to_canonical
            .mul(&self.matrix)
            .mul(&self.source.from_canonical)
    }
}

/// Kernel and cokernel of a well-defined map.
pub fn kernel_cokernel(f: &AbGroupMap) -> Result<(Kernel, FgAbGroup)> {
    f.check()?;
    let g = &f.source;
    let h = &f.target;
    let coker = FgAbGroup::from_presentation(&h.presentation.hstack(&f.matrix));
    // x lies in the kernel iff F x is in the relation lattice of the target
    let stacked = f.matrix.hstack(&h.presentation.neg());
    let z = integer_kernel(&stacked);
    let ng = g.num_generators();
    let proj = z.select_rows(&(0..ng).collect::<Vec<_>>());
    let basis = lattice_basis(&proj.hstack(&g.presentation));
    let s = smith_normal_form(&basis);
    let rels: Vec<Vec<BigInt>> = g
        .presentation
        .columns()
        .iter()
        .map(|r| solve_with(&s, basis.cols(), r).expect("relations lie in the kernel lattice"))
        .collect();
    let group = FgAbGroup::from_presentation(&IntMat::from_columns(basis.cols(), &rels));
    Ok((
        Kernel {
            group,
            inclusion: basis,
        },
        coker,
    ))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FunctorDims {
    pub hom: usize,
    pub ext1: usize,
    pub tor1: usize,
    pub tensor: usize,
}

/// `K`-dimensions of `Hom(G,K)`, `Ext^1(G,K)`, `Tor_1(G,K)` and `G ⊗ K`.
pub fn functor_dims(g: &FgAbGroup, field: Field) -> FunctorDims {
    let p = field.characteristic();
    let divisible = if p == 0 {
        0
    } else {
        let pb = BigInt::from(p);
        g.invariant_factors
            .iter()
            .filter(|d| d.is_multiple_of(&pb))
            .count()
    };
    FunctorDims {
        hom: g.rank + divisible,
        ext1: divisible,
        tor1: divisible,
        tensor: g.rank + divisible,
    }
}

/// Homology of the mapping cone of `f` on free resolutions, tensored with
/// `K`: returns `(h0, h1, h2)`. Here `h1` is the middle term of
/// `0 -> ker f ⊗ K -> h1 -> Tor_1(coker f, K) -> 0`.
pub fn cone_homology_dims(f: &AbGroupMap, field: Field) -> (usize, usize, usize) {
    let rm = f.source.canonical_presentation();
    let rn = f.target.canonical_presentation();
    let fc = f.canonical_matrix();
    // lift F R_M through R_N
    let fr = fc.mul(&rm);
    let sn = smith_normal_form(&rn);
    let lift: Vec<Vec<BigInt>> = fr
        .columns()
        .iter()
        .map(|c| solve_with(&sn, rn.cols(), c).expect("map is well defined"))
        .collect();
    let ftilde = IntMat::from_columns(rn.cols(), &lift);
    let d1 = rn.hstack(&fc);
    let d2 = ftilde.neg().vstack(&rm);
    let p = field.characteristic();
    let r1 = d1.rank_mod(p);
    let r2 = d2.rank_mod(p);
    let h0 = d1.rows() - r1;
    let h1 = d1.cols() - r1 - r2;
    let h2 = d2.cols() - r2;
    (h0, h1, h2)
}
