//! Sparse multivariate polynomials over a [`Field`], with a small parser and a
//! printer that round-trips through it.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;

use crate::arith::{Coef, Field};
use crate::error::ParseError;

/// Exponent vector of a monomial.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Mono(pub Vec<u32>);

impl Mono {
    pub fn one(n: usize) -> Mono {
        Mono(vec![0; n])
    }

    pub fn var(n: usize, i: usize) -> Mono {
        let mut e = vec![0; n];
        e[i] = 1;
        Mono(e)
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, o: &Mono) -> Mono {
        Mono(self.0.iter().zip(&o.0).map(|(a, b)| a + b).collect())
    }

    pub fn divides(&self, o: &Mono) -> bool {
        self.0.iter().zip(&o.0).all(|(a, b)| a <= b)
    }

    /// `o / self`, assuming `self` divides `o`.
    pub fn quotient_of(&self, o: &Mono) -> Mono {
        Mono(o.0.iter().zip(&self.0).map(|(b, a)| b - a).collect())
    }

    pub fn lcm(&self, o: &Mono) -> Mono {
        Mono(self.0.iter().zip(&o.0).map(|(a, b)| *a.max(b)).collect())
    }

    pub fn is_coprime(&self, o: &Mono) -> bool {
        self.0.iter().zip(&o.0).all(|(a, b)| *a == 0 || *b == 0)
    }
}

/// A polynomial in `nvars` variables. Terms are kept in a map without zero
/// coefficients, so structural equality is polynomial equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Poly {
    nvars: usize,
    field: Field,
    terms: BTreeMap<Mono, Coef>,
}

impl Poly {
    pub fn zero(nvars: usize, field: Field) -> Poly {
        Poly {
            nvars,
            field,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, field: Field, c: Coef) -> Poly {
        let mut p = Poly::zero(nvars, field);
        p.add_term(Mono::one(nvars), c);
        p
    }

    pub fn one(nvars: usize, field: Field) -> Poly {
        Poly::constant(nvars, field, field.one())
    }

    pub fn var(nvars: usize, field: Field, i: usize) -> Poly {
        Poly::monomial(field, Mono::var(nvars, i), field.one())
    }

    pub fn monomial(field: Field, m: Mono, c: Coef) -> Poly {
        let mut p = Poly::zero(m.nvars(), field);
        p.add_term(m, c);
        p
    }

    /// `x^a - x^b`.
    pub fn binomial(field: Field, a: &[u32], b: &[u32]) -> Poly {
        let n = a.len();
        let mut p = Poly::monomial(field, Mono(a.to_vec()), field.one());
        p.add_term(Mono(b.to_vec()), field.from_i64(-1));
        debug_assert_eq!(p.nvars, n);
        p
    }

    pub fn from_terms(nvars: usize, field: Field, terms: impl IntoIterator<Item = (Mono, Coef)>) -> Poly {
        let mut p = Poly::zero(nvars, field);
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Mono, &Coef)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Mono) -> Coef {
        self.terms.get(m).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn add_term(&mut self, m: Mono, c: Coef) {
        assert_eq!(m.nvars(), self.nvars, "monomial arity");
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = o.get() + &c;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn constant_term(&self) -> Coef {
        self.coeff(&Mono::one(self.nvars))
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Mono::is_one)
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(Mono::degree).max()
    }

    pub fn min_degree(&self) -> Option<u32> {
        self.terms.keys().map(Mono::degree).min()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut d = self.terms.keys().map(Mono::degree);
        match d.next() {
            None => true,
            Some(first) => d.all(|x| x == first),
        }
    }

    /// Coefficients of the degree-one part, one per variable.
    pub fn linear_part(&self) -> Vec<Coef> {
        (0..self.nvars)
            .map(|i| self.coeff(&Mono::var(self.nvars, i)))
            .collect()
    }

    pub fn scale(&self, c: &Coef) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.nvars, self.field);
        }
        Poly {
            nvars: self.nvars,
            field: self.field,
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    pub fn mul_mono(&self, m: &Mono) -> Poly {
        Poly {
            nvars: self.nvars,
            field: self.field,
            terms: self.terms.iter().map(|(k, a)| (k.mul(m), a.clone())).collect(),
        }
    }

    pub fn add(&self, o: &Poly) -> Poly {
        let mut r = self.clone();
        for (m, c) in &o.terms {
            r.add_term(m.clone(), c.clone());
        }
        r
    }

    pub fn sub(&self, o: &Poly) -> Poly {
        let mut r = self.clone();
        for (m, c) in &o.terms {
            r.add_term(m.clone(), -c);
        }
        r
    }

    pub fn neg(&self) -> Poly {
        self.scale(&self.field.from_i64(-1))
    }

    pub fn mul(&self, o: &Poly) -> Poly {
        let mut r = Poly::zero(self.nvars, self.field);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &o.terms {
                r.add_term(m1.mul(m2), c1 * c2);
            }
        }
        r
    }

    pub fn pow(&self, mut e: u32) -> Poly {
        let mut base = self.clone();
        let mut acc = Poly::one(self.nvars, self.field);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    pub fn derivative(&self, i: usize) -> Poly {
        let mut r = Poly::zero(self.nvars, self.field);
        for (m, c) in &self.terms {
            let e = m.0[i];
            if e > 0 {
                let mut m2 = m.clone();
                m2.0[i] -= 1;
                r.add_term(m2, c * &self.field.from_i64(e as i64));
            }
        }
        r
    }

    /// Substitutes `images[i]` for variable `i`. The images all live in one
    /// ring whose arity becomes the arity of the result.
    pub fn compose(&self, images: &[Poly]) -> Poly {
        assert_eq!(images.len(), self.nvars, "one image per variable");
        let target_n = images.first().map_or(0, |p| p.nvars);
        let mut r = Poly::zero(target_n, self.field);
        for (m, c) in &self.terms {
            let mut t = Poly::constant(target_n, self.field, c.clone());
            for (i, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    t = t.mul(&images[i].pow(e));
                }
            }
            r = r.add(&t);
        }
        r
    }

    /// Reinterprets the polynomial in a ring with more variables; variable `i`
    /// becomes variable `positions[i]`.
    pub fn embed(&self, nvars: usize, positions: &[usize]) -> Poly {
        let mut r = Poly::zero(nvars, self.field);
        for (m, c) in &self.terms {
            let mut e = vec![0; nvars];
            for (i, &x) in m.0.iter().enumerate() {
                e[positions[i]] += x;
            }
            r.add_term(Mono(e), c.clone());
        }
        r
    }

    /// Exponent vector when the polynomial is a single monomial with
    /// coefficient one.
    pub fn as_monomial(&self) -> Option<&Mono> {
        if self.terms.len() != 1 {
            return None;
        }
        let (m, c) = self.terms.iter().next()?;
        c.is_one().then_some(m)
    }

    pub fn display<'a>(&'a self, names: &'a [String]) -> PolyDisplay<'a> {
        PolyDisplay { poly: self, names }
    }

    pub fn to_string_with(&self, names: &[String]) -> String {
        self.display(names).to_string()
    }

    pub fn parse(text: &str, names: &[String], field: Field) -> Result<Poly, ParseError> {
        let mut p = Parser {
            src: text,
            bytes: text.as_bytes(),
            pos: 0,
            names,
            field,
        };
        let r = p.expr()?;
        p.skip_ws();
        if p.pos != p.bytes.len() {
            return Err(p.err("an operator or end of input"));
        }
        Ok(r)
    }
}

/// Printer: terms by descending total degree, ties broken lexicographically
/// in declared variable order.
pub struct PolyDisplay<'a> {
    poly: &'a Poly,
    names: &'a [String],
}

impl fmt::Display for PolyDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p = self.poly;
        if p.is_zero() {
            return write!(f, "0");
        }
        let mut terms: Vec<_> = p.terms.iter().collect();
        terms.sort_by(|(a, _), (b, _)| b.degree().cmp(&a.degree()).then_with(|| b.0.cmp(&a.0)));
        for (k, (m, c)) in terms.into_iter().enumerate() {
            let neg = c.is_negative();
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            let mut factors = Vec::new();
            let abs = c.abs_string();
            if abs != "1" || m.is_one() {
                factors.push(abs);
            }
            for (i, &e) in m.0.iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(self.names[i].clone()),
                    _ => factors.push(format!("{}^{}", self.names[i], e)),
                }
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

struct Parser<'a> {
    src: &'a str,
    bytes: &'a [u8],
    pos: usize,
    names: &'a [String],
    field: Field,
}

impl Parser<'_> {
    fn err(&self, expected: &str) -> ParseError {
        ParseError::new(self.src, self.pos, expected)
    }

    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.bytes.get(self.pos).copied()
    }

    fn n(&self) -> usize {
        self.names.len()
    }

    fn expr(&mut self) -> Result<Poly, ParseError> {
        let mut acc = self.term()?;
        while let Some(c) = self.peek() {
            match c {
                b'+' => {
                    self.pos += 1;
                    acc = acc.add(&self.term()?);
                }
                b'-' => {
                    self.pos += 1;
                    acc = acc.sub(&self.term()?);
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Poly, ParseError> {
        let mut acc = self.unary()?;
        while self.peek() == Some(b'*') {
            self.pos += 1;
            acc = acc.mul(&self.unary()?);
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<Poly, ParseError> {
        match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                Ok(self.unary()?.neg())
            }
            Some(b'+') => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<Poly, ParseError> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let e = self.integer()?;
            let e: u32 = e
                .try_into()
                .map_err(|_| self.err("a small exponent"))?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn integer(&mut self) -> Result<BigInt, ParseError> {
        let start = self.pos;
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("an integer"));
        }
        Ok(self.src[start..self.pos].parse().expect("digits"))
    }

    fn atom(&mut self) -> Result<Poly, ParseError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.err("`)`"));
                }
                self.pos += 1;
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => {
                let num = self.integer()?;
                let mut den = BigInt::from(1);
                if self.peek() == Some(b'/') {
                    self.pos += 1;
                    self.skip_ws();
                    den = self.integer()?;
                }
                let c = self
                    .field
                    .from_ratio(&num, &den)
                    .ok_or_else(|| self.err("a denominator invertible in the field"))?;
                Ok(Poly::constant(self.n(), self.field, c))
            }
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                let start = self.pos;
                while self.pos < self.bytes.len()
                    && (self.bytes[self.pos].is_ascii_alphanumeric()
                        || self.bytes[self.pos] == b'_'
                        || self.bytes[self.pos] == b'\'')
                {
                    self.pos += 1;
                }
                let name = &self.src[start..self.pos];
                match self.names.iter().position(|v| v == name) {
                    Some(i) => Ok(Poly::var(self.n(), self.field, i)),
                    None => {
                        self.pos = start;
                        Err(self.err(&format!("a declared variable (found `{name}`)")))
                    }
                }
            }
            _ => Err(self.err("a number, variable or `(`")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn names(v: &[&str]) -> Vec<String> {
        v.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn parse_and_print() {
        let n = names(&["x", "y", "z"]);
        let p = Poly::parse("x^2*y - 3*z + 2/3", &n, Field::Rational).unwrap();
        assert_eq!(p.to_string_with(&n), "x^2*y - 3*z + 2/3");
        let q = Poly::parse("(x+y)^2 - x*x - y^2", &n, Field::Rational).unwrap();
        assert_eq!(q.to_string_with(&n), "2*x*y");
    }

    #[test]
    fn parse_prime_field() {
        let n = names(&["x"]);
        let p = Poly::parse("-x + 1/2", &n, Field::Prime(5)).unwrap();
        assert_eq!(p.to_string_with(&n), "4*x + 3");
        assert!(Poly::parse("1/5", &n, Field::Prime(5)).is_err());
    }

    #[test]
    fn parse_errors_are_positioned() {
        let n = names(&["x", "y"]);
        let e = Poly::parse("x + w", &n, Field::Rational).unwrap_err();
        assert_eq!(e.offset, 4);
        let e = Poly::parse("x + ", &n, Field::Rational).unwrap_err();
        assert_eq!(e.offset, 4);
        assert!(Poly::parse("(x", &n, Field::Rational).is_err());
    }

    #[test]
    fn compose_and_derivative() {
        let n = names(&["x", "y"]);
        let f = Field::Rational;
        let p = Poly::parse("x^2*y", &n, f).unwrap();
        let imgs = vec![
            Poly::parse("x+y", &n, f).unwrap(),
            Poly::parse("y", &n, f).unwrap(),
        ];
        let c = p.compose(&imgs);
        assert_eq!(c, Poly::parse("x^2*y + 2*x*y^2 + y^3", &n, f).unwrap());
        assert_eq!(p.derivative(0), Poly::parse("2*x*y", &n, f).unwrap());
    }
}
