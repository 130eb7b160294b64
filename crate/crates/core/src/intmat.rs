//! Dense integer matrices with arbitrary-precision entries.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::ParseError;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntMat {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMat {
    pub fn zeros(rows: usize, cols: usize) -> IntMat {
        IntMat {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> IntMat {
        let mut m = IntMat::zeros(n, n);
        for i in 0..n {
            m.set(i, i, BigInt::one());
        }
        m
    }

    pub fn from_rows(rows: usize, cols: usize, entries: Vec<Vec<BigInt>>) -> IntMat {
        assert_eq!(entries.len(), rows, "row count");
        let mut data = Vec::with_capacity(rows * cols);
        for r in entries {
            assert_eq!(r.len(), cols, "ragged matrix");
            data.extend(r);
        }
        IntMat { rows, cols, data }
    }

    pub fn from_i64(rows: usize, cols: usize, entries: &[i64]) -> IntMat {
        assert_eq!(entries.len(), rows * cols, "entry count");
        IntMat {
            rows,
            cols,
            data: entries.iter().map(|&x| BigInt::from(x)).collect(),
        }
    }

    /// Matrix whose columns are the given vectors, each of length `rows`.
    pub fn from_columns(rows: usize, columns: &[Vec<BigInt>]) -> IntMat {
        let mut m = IntMat::zeros(rows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            assert_eq!(c.len(), rows, "column length");
            for (i, x) in c.iter().enumerate() {
                m.set(i, j, x.clone());
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> Vec<BigInt> {
        self.data[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    pub fn column(&self, j: usize) -> Vec<BigInt> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vec<BigInt>> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn transpose(&self) -> IntMat {
        let mut t = IntMat::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, o: &IntMat) -> IntMat {
        assert_eq!(self.cols, o.rows, "shape mismatch in product");
        let mut r = IntMat::zeros(self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    let v = r.get(i, j) + a * o.get(k, j);
                    r.set(i, j, v);
                }
            }
        }
        r
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(self.cols, v.len(), "shape mismatch in product");
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.get(i, j) * &v[j]).sum())
            .collect()
    }

    pub fn neg(&self) -> IntMat {
        IntMat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| -x).collect(),
        }
    }

    /// `[self | o]`.
    pub fn hstack(&self, o: &IntMat) -> IntMat {
        assert_eq!(self.rows, o.rows, "row count in hstack");
        let mut r = IntMat::zeros(self.rows, self.cols + o.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                r.set(i, j, self.get(i, j).clone());
            }
            for j in 0..o.cols {
                r.set(i, self.cols + j, o.get(i, j).clone());
            }
        }
        r
    }

    /// `self` on top of `o`.
    pub fn vstack(&self, o: &IntMat) -> IntMat {
        assert_eq!(self.cols, o.cols, "column count in vstack");
        let mut data = self.data.clone();
        data.extend(o.data.iter().cloned());
        IntMat {
            rows: self.rows + o.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn select_columns(&self, idx: &[usize]) -> IntMat {
        IntMat::from_columns(self.rows, &idx.iter().map(|&j| self.column(j)).collect::<Vec<_>>())
    }

    pub fn select_rows(&self, idx: &[usize]) -> IntMat {
        let rows: Vec<Vec<BigInt>> = idx.iter().map(|&i| self.row(i)).collect();
        IntMat::from_rows(idx.len(), self.cols, rows)
    }

    pub(crate) fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    pub(crate) fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for i in 0..self.rows {
                self.data.swap(i * self.cols + a, i * self.cols + b);
            }
        }
    }

    /// row `dst` += q * row `src`.
    pub(crate) fn add_row(&mut self, dst: usize, src: usize, q: &BigInt) {
        for j in 0..self.cols {
            let v = self.get(dst, j) + q * self.get(src, j);
            self.set(dst, j, v);
        }
    }

    /// column `dst` += q * column `src`.
    pub(crate) fn add_col(&mut self, dst: usize, src: usize, q: &BigInt) {
        for i in 0..self.rows {
            let v = self.get(i, dst) + q * self.get(i, src);
            self.set(i, dst, v);
        }
    }

    pub(crate) fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let v = -self.get(i, j);
            self.set(i, j, v);
        }
    }

    pub(crate) fn negate_col(&mut self, j: usize) {
        for i in 0..self.rows {
            let v = -self.get(i, j);
            self.set(i, j, v);
        }
    }

    /// Determinant by fraction-free (Bareiss) elimination.
    pub fn determinant(&self) -> BigInt {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut a = self.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a.get(k, k).is_zero() {
                match (k + 1..n).find(|&i| !a.get(i, k).is_zero()) {
                    Some(i) => {
                        a.swap_rows(i, k);
                        sign = -sign;
                    }
                    None => return BigInt::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (a.get(i, j) * a.get(k, k) - a.get(i, k) * a.get(k, j)) / &prev;
                    a.set(i, j, v);
                }
            }
            prev = a.get(k, k).clone();
        }
        sign * a.get(n - 1, n - 1)
    }

    /// Rank over `Q` (`p == 0`) or over `F_p`.
    pub fn rank_mod(&self, p: u32) -> usize {
        if p == 0 {
            return self.rank_rational();
        }
        let pm = BigInt::from(p);
        let mut a: Vec<Vec<u64>> = (0..self.rows)
            .map(|i| {
                (0..self.cols)
                    .map(|j| self.get(i, j).mod_floor(&pm).to_u64().expect("residue"))
                    .collect()
            })
            .collect();
        let p = p as u64;
        let mut rank = 0;
        for c in 0..self.cols {
            let Some(piv) = (rank..self.rows).find(|&i| a[i][c] != 0) else {
                continue;
            };
            a.swap(rank, piv);
            let inv = crate::arith::Field::Prime(p as u32)
                .from_i64(a[rank][c] as i64)
                .inv();
            let inv = match inv {
                crate::arith::Coef::Fp(v, _) => v as u64,
                _ => unreachable!(),
            };
            for i in 0..self.rows {
                if i != rank && a[i][c] != 0 {
                    let f = a[i][c] * inv % p;
                    for j in 0..self.cols {
                        a[i][j] = (a[i][j] + p * p - f * a[rank][j] % p) % p;
                    }
                }
            }
            rank += 1;
        }
        rank
    }

    fn rank_rational(&self) -> usize {
        let mut a = self.clone();
        let mut rank = 0;
        for c in 0..self.cols {
            let Some(piv) = (rank..self.rows).find(|&i| !a.get(i, c).is_zero()) else {
                continue;
            };
            a.swap_rows(rank, piv);
            for i in rank + 1..self.rows {
                if !a.get(i, c).is_zero() {
                    let (f, g) = (a.get(rank, c).clone(), a.get(i, c).clone());
                    for j in 0..self.cols {
                        let v = a.get(i, j) * &f - a.get(rank, j) * &g;
                        a.set(i, j, v);
                    }
                }
            }
            rank += 1;
        }
        rank
    }

    /// Parses `"2,4;0,6"` (rows separated by `;`).
    pub fn parse(text: &str) -> Result<IntMat, ParseError> {
        let t = text.trim();
        if t.is_empty() {
            return Ok(IntMat::zeros(0, 0));
        }
        let mut rows = Vec::new();
        let mut offset = 0;
        for r in t.split(';') {
            let mut row = Vec::new();
            for e in r.split(',') {
                let v: BigInt = e
                    .trim()
                    .parse()
                    .map_err(|_| ParseError::new(text, offset, "an integer entry"))?;
                row.push(v);
                offset += e.len() + 1;
            }
            rows.push(row);
        }
        let cols = rows[0].len();
        if rows.iter().any(|r| r.len() != cols) {
            return Err(ParseError::new(text, 0, "rows of equal length"));
        }
        Ok(IntMat::from_rows(rows.len(), cols, rows))
    }

    pub fn max_abs_entry(&self) -> BigInt {
        self.data.iter().map(|x| x.abs()).max().unwrap_or_default()
    }
}

impl fmt::Display for IntMat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cells: Vec<String> = self.data.iter().map(|x| x.to_string()).collect();
        let w = cells.iter().map(String::len).max().unwrap_or(1);
        for i in 0..self.rows {
            write!(f, "[")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{:>w$}", cells[i * self.cols + j])?;
            }
            writeln!(f, "]")?;
        }
        Ok(())
    }
}

/// JSON-friendly integer: a number when it fits in `i64`, a string otherwise.
pub(crate) mod bigint_serde {
    use super::*;

    pub fn to_value(x: &BigInt) -> Wire {
        match x.to_i64() {
            Some(v) => Wire::Small(v),
            None => Wire::Big(x.to_string()),
        }
    }

    pub fn from_value(w: Wire) -> Result<BigInt, String> {
        match w {
            Wire::Small(v) => Ok(BigInt::from(v)),
            Wire::Big(s) => s.parse().map_err(|_| format!("bad integer `{s}`")),
        }
    }

    #[derive(Serialize, Deserialize)]
    #[serde(untagged)]
    pub enum Wire {
        Small(i64),
        Big(String),
    }
}

pub(crate) mod bigint_vec_serde {
    use super::bigint_serde::{from_value, to_value, Wire};
    use super::*;

    pub fn serialize<S: Serializer>(x: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
        x.iter().map(to_value).collect::<Vec<_>>().serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigInt>, D::Error> {
        Vec::<Wire>::deserialize(d)?
            .into_iter()
            .map(|w| from_value(w).map_err(D::Error::custom))
            .collect()
    }
}

#[derive(Serialize, Deserialize)]
struct WireMat {
    rows: usize,
    cols: usize,
    entries: Vec<Vec<bigint_serde::Wire>>,
}

impl Serialize for IntMat {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        WireMat {
            rows: self.rows,
            cols: self.cols,
            entries: (0..self.rows)
                .map(|i| self.row(i).iter().map(bigint_serde::to_value).collect())
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for IntMat {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let w = WireMat::deserialize(d)?;
        if w.entries.len() != w.rows || w.entries.iter().any(|r| r.len() != w.cols) {
            return Err(D::Error::custom("matrix shape does not match its entries"));
        }
        let mut data = Vec::with_capacity(w.rows * w.cols);
        for r in w.entries {
            for e in r {
                data.push(bigint_serde::from_value(e).map_err(D::Error::custom)?);
            }
        }
        Ok(IntMat {
            rows: w.rows,
            cols: w.cols,
            data,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn determinant_small() {
        let m = IntMat::from_i64(3, 3, &[2, 0, 1, 1, 3, 2, 1, 1, 1]);
        assert_eq!(m.determinant(), BigInt::from(2 * (3 - 2) + (1 - 3)));
        assert_eq!(IntMat::from_i64(2, 2, &[0, 1, 1, 0]).determinant(), BigInt::from(-1));
    }

    #[test]
    fn ranks() {
        let m = IntMat::from_i64(2, 2, &[2, 4, 1, 2]);
        assert_eq!(m.rank_mod(0), 1);
        let m = IntMat::from_i64(2, 2, &[2, 0, 0, 3]);
        assert_eq!(m.rank_mod(0), 2);
        assert_eq!(m.rank_mod(2), 1);
        assert_eq!(m.rank_mod(3), 1);
        assert_eq!(m.rank_mod(5), 2);
    }

    #[test]
    fn parse_and_serde() {
        let m = IntMat::parse("2,4;0,6").unwrap();
        assert_eq!(m, IntMat::from_i64(2, 2, &[2, 4, 0, 6]));
        assert!(IntMat::parse("1,2;3").is_err());
        let json = serde_json::to_string(&m).unwrap();
        let back: IntMat = serde_json::from_str(&json).unwrap();
        assert_eq!(back, m);
    }
}
