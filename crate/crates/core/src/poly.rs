//! Sparse multivariate polynomials over a prime field.
//!
//! Monomials pack up to eight exponents (each below 256) into one `u64`,
//! variable 0 in the most significant byte, so comparing keys of equal total
//! degree is lexicographic comparison of exponent vectors.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::field::Field;

pub const MAX_VARS: usize = 8;
pub const MAX_EXP: u32 = 255;

/// Exponent vector of a monomial, packed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Monomial(u64);

#[inline]
fn shift(i: usize) -> u32 {
    (56 - 8 * i) as u32
}

impl Monomial {
    pub const ONE: Monomial = Monomial(0);

    pub fn var(i: usize) -> Monomial {
        assert!(i < MAX_VARS);
        Monomial(1u64 << shift(i))
    }

    pub fn from_exps(exps: &[u32]) -> Result<Monomial> {
        if exps.len() > MAX_VARS {
            return Err(Error::Input(format!(
                "at most {MAX_VARS} variables are supported"
            )));
        }
        let mut k = 0u64;
        let mut deg = 0u32;
        for (i, &e) in exps.iter().enumerate() {
            deg += e;
            if e > MAX_EXP || deg > MAX_EXP {
                return Err(Error::Input(format!(
                    "monomial degree above {MAX_EXP} is not supported"
                )));
            }
            k |= (e as u64) << shift(i);
        }
        Ok(Monomial(k))
    }

    #[inline]
    pub fn key(&self) -> u64 {
        self.0
    }

    #[inline]
    pub fn from_key(k: u64) -> Monomial {
        Monomial(k)
    }

    #[inline]
    pub fn exp(&self, i: usize) -> u32 {
        ((self.0 >> shift(i)) & 0xff) as u32
    }

    pub fn exps(&self, nvars: usize) -> Vec<u32> {
        (0..nvars).map(|i| self.exp(i)).collect()
    }

    #[inline]
    pub fn degree(&self) -> u32 {
        let mut k = self.0;
        let mut d = 0u32;
        while k != 0 {
            d += (k & 0xff) as u32;
            k >>= 8;
        }
        d
    }

    /// Product; `None` when the total degree would exceed [`MAX_EXP`].
    #[inline]
    pub fn mul(&self, o: &Monomial) -> Option<Monomial> {
        if self.degree() + o.degree() > MAX_EXP {
            None
        } else {
            Some(Monomial(self.0 + o.0))
        }
    }

    pub fn divides(&self, o: &Monomial) -> bool {
        (0..MAX_VARS).all(|i| self.exp(i) <= o.exp(i))
    }

    /// All monomials in `nvars` variables of exactly degree `d`, descending lex.
    pub fn of_degree(nvars: usize, d: u32) -> Vec<Monomial> {
        let mut out = Vec::new();
        let mut cur = vec![0u32; nvars];
        fn rec(i: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Monomial>) {
            let n = cur.len();
            if i + 1 == n {
                cur[i] = left;
                out.push(Monomial::from_exps(cur).expect("degree bounded"));
                return;
            }
            for e in (0..=left).rev() {
                cur[i] = e;
                rec(i + 1, left - e, cur, out);
            }
            cur[i] = 0;
        }
        if nvars == 0 {
            if d == 0 {
                out.push(Monomial::ONE);
            }
            return out;
        }
        rec(0, d, &mut cur, &mut out);
        out
    }
}

impl Ord for Monomial {
    fn cmp(&self, o: &Self) -> Ordering {
        self.degree()
            .cmp(&o.degree())
            .then_with(|| self.0.cmp(&o.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

/// The order `v(f)`: least total degree of a term, infinite for zero.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Order {
    Finite(u32),
    Infinite,
}

impl Order {
    pub fn finite(&self) -> Option<u32> {
        match self {
            Order::Finite(d) => Some(*d),
            Order::Infinite => None,
        }
    }
}

impl fmt::Display for Order {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Order::Finite(d) => write!(f, "{d}"),
            Order::Infinite => write!(f, "inf"),
        }
    }
}

/// A polynomial; terms are kept sorted in descending degree-lex order with no
/// zero coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    nvars: usize,
    field: Field,
    terms: Vec<(Monomial, u64)>,
}

/// Operation selector for [`poly_arith`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PolyOp {
    Add,
    Sub,
    Mul,
}

/// Checked binary arithmetic: fails when the operands live in different rings.
pub fn poly_arith(a: &Poly, b: &Poly, op: PolyOp) -> Result<Poly> {
    if a.nvars != b.nvars || a.field != b.field {
        return Err(Error::Dimension(format!(
            "operands over {} and {} variables (p = {} and {})",
            a.nvars,
            b.nvars,
            a.field.p(),
            b.field.p()
        )));
    }
    Ok(match op {
        PolyOp::Add => a.add(b),
        PolyOp::Sub => a.sub(b),
        PolyOp::Mul => a.mul(b),
    })
}

impl Poly {
    pub fn zero(nvars: usize, field: Field) -> Poly {
        Poly {
            nvars,
            field,
            terms: Vec::new(),
        }
    }

    pub fn constant(nvars: usize, field: Field, c: i64) -> Poly {
        Poly::from_terms(nvars, field, vec![(Monomial::ONE, field.from_i64(c))])
    }

    pub fn var(nvars: usize, field: Field, i: usize) -> Poly {
        assert!(i < nvars);
        Poly {
            nvars,
            field,
            terms: vec![(Monomial::var(i), 1)],
        }
    }

    pub fn monomial(nvars: usize, field: Field, m: Monomial, c: u64) -> Poly {
        Poly::from_terms(nvars, field, vec![(m, c)])
    }

    /// Collects like terms, drops zeros and sorts.
    pub fn from_terms(nvars: usize, field: Field, terms: Vec<(Monomial, u64)>) -> Poly {
        let mut acc: HashMap<Monomial, u64> = HashMap::with_capacity(terms.len());
        for (m, c) in terms {
            let e = acc.entry(m).or_insert(0);
            *e = field.add(*e, c % field.p());
        }
        let mut terms: Vec<(Monomial, u64)> = acc.into_iter().filter(|&(_, c)| c != 0).collect();
        terms.sort_unstable_by(|a, b| b.0.cmp(&a.0));
        Poly {
            nvars,
            field,
            terms,
        }
    }

    #[inline]
    pub fn nvars(&self) -> usize {
        self.nvars
    }

    #[inline]
    pub fn field(&self) -> Field {
        self.field
    }

    #[inline]
    pub fn terms(&self) -> &[(Monomial, u64)] {
        &self.terms
    }

    #[inline]
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn order(&self) -> Order {
        self.terms
            .iter()
            .map(|(m, _)| m.degree())
            .min()
            .map(Order::Finite)
            .unwrap_or(Order::Infinite)
    }

    /// Total degree; zero for the zero polynomial.
    pub fn degree(&self) -> u32 {
        self.terms.first().map(|(m, _)| m.degree()).unwrap_or(0)
    }

    pub fn coeff(&self, m: &Monomial) -> u64 {
        self.terms
            .iter()
            .find(|(t, _)| t == m)
            .map(|&(_, c)| c)
            .unwrap_or(0)
    }

    pub fn add(&self, o: &Poly) -> Poly {
        debug_assert_eq!(self.nvars, o.nvars);
        let mut t = self.terms.clone();
        t.extend_from_slice(&o.terms);
        Poly::from_terms(self.nvars, self.field, t)
    }

    pub fn neg(&self) -> Poly {
        Poly {
            nvars: self.nvars,
            field: self.field,
            terms: self
                .terms
                .iter()
                .map(|&(m, c)| (m, self.field.neg(c)))
                .collect(),
        }
    }

    pub fn sub(&self, o: &Poly) -> Poly {
        self.add(&o.neg())
    }

    pub fn scale(&self, c: u64) -> Poly {
        let c = c % self.field.p();
        if c == 0 {
            return Poly::zero(self.nvars, self.field);
        }
        Poly {
            nvars: self.nvars,
            field: self.field,
            terms: self
                .terms
                .iter()
                .map(|&(m, a)| (m, self.field.mul(a, c)))
                .collect(),
        }
    }

    pub fn mul(&self, o: &Poly) -> Poly {
        debug_assert_eq!(self.nvars, o.nvars);
        let mut acc: HashMap<Monomial, u64> = HashMap::new();
        for &(m1, c1) in &self.terms {
            for &(m2, c2) in &o.terms {
                let m = m1.mul(&m2).expect("polynomial degree above 255");
                let e = acc.entry(m).or_insert(0);
                *e = self.field.add(*e, self.field.mul(c1, c2));
            }
        }
        let mut terms: Vec<(Monomial, u64)> = acc.into_iter().filter(|&(_, c)| c != 0).collect();
        terms.sort_unstable_by(|a, b| b.0.cmp(&a.0));
        Poly {
            nvars: self.nvars,
            field: self.field,
            terms,
        }
    }

    pub fn mul_monomial(&self, m: &Monomial, c: u64) -> Poly {
        let c = c % self.field.p();
        if c == 0 {
            return Poly::zero(self.nvars, self.field);
        }
        Poly {
            nvars: self.nvars,
            field: self.field,
            terms: self
                .terms
                .iter()
                .map(|&(t, a)| {
                    (
                        t.mul(m).expect("polynomial degree above 255"),
                        self.field.mul(a, c),
                    )
                })
                .collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut r = Poly::constant(self.nvars, self.field, 1);
        for _ in 0..e {
            r = r.mul(self);
        }
        r
    }

    /// Sum of the terms of exact degree `d`.
    pub fn homogeneous_part(&self, d: u32) -> Poly {
        Poly {
            nvars: self.nvars,
            field: self.field,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree() == d)
                .copied()
                .collect(),
        }
    }

    /// Drops every term of degree `>= n`.
    pub fn truncate(&self, n: u32) -> Poly {
        Poly {
            nvars: self.nvars,
            field: self.field,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree() < n)
                .copied()
                .collect(),
        }
    }

    /// Substitutes `images[i]` for variable `i`; the images fix the target ring.
    pub fn compose(&self, images: &[Poly]) -> Poly {
        assert_eq!(images.len(), self.nvars);
        let (tn, tf) = match images.first() {
            Some(p) => (p.nvars, p.field),
            None => (0, self.field),
        };
        let mut cache: Vec<Vec<Poly>> = images
            .iter()
            .map(|p| vec![Poly::constant(tn, tf, 1), p.clone()])
            .collect();
        let mut out = Poly::zero(tn, tf);
        for &(m, c) in &self.terms {
            let mut t = Poly::constant(tn, tf, c as i64);
            for (i, powers) in cache.iter_mut().enumerate() {
                let e = m.exp(i) as usize;
                while powers.len() <= e {
                    let next = powers.last().unwrap().mul(&images[i]);
                    powers.push(next);
                }
                if e > 0 {
                    t = t.mul(&powers[e]);
                }
            }
            out = out.add(&t);
        }
        out
    }

    /// Renders with the given variable names, e.g. `x^2*y - 3*y^3`.
    pub fn to_string_with(&self, names: &[String]) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut s = String::new();
        for (k, &(m, c)) in self.terms.iter().enumerate() {
            let sc = self.field.to_signed(c);
            let (neg, mag) = if sc < 0 { (true, -sc) } else { (false, sc) };
            if k == 0 {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            let mut factors: Vec<String> = Vec::new();
            for (i, name) in names.iter().enumerate().take(self.nvars) {
                match m.exp(i) {
                    0 => {}
                    1 => factors.push(name.clone()),
                    e => factors.push(format!("{name}^{e}")),
                }
            }
            if factors.is_empty() {
                s.push_str(&mag.to_string());
            } else {
                if mag != 1 {
                    s.push_str(&mag.to_string());
                    s.push('*');
                }
                s.push_str(&factors.join("*"));
            }
        }
        s
    }
}

/// Default variable names `x1..xn` for display.
pub fn default_names(n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("x{i}")).collect()
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_string_with(&default_names(self.nvars)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f() -> Field {
        Field::default()
    }

    #[test]
    fn difference_of_squares() {
        let x = Poly::var(2, f(), 0);
        let y = Poly::var(2, f(), 1);
        let lhs = x.add(&y).mul(&x.sub(&y));
        let rhs = x.mul(&x).sub(&y.mul(&y));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn zero_is_additive_identity() {
        let x = Poly::var(2, f(), 0);
        let g = x.mul(&x).add(&Poly::constant(2, f(), 5));
        assert_eq!(Poly::zero(2, f()).add(&g), g);
    }

    #[test]
    fn monomial_product_order() {
        let x = Poly::var(2, f(), 0);
        let y = Poly::var(2, f(), 1);
        let p = x.mul(&y.mul(&y));
        assert_eq!(p.terms().len(), 1);
        assert_eq!(p.order(), Order::Finite(3));
    }

    #[test]
    fn orders() {
        let y = Poly::var(2, f(), 1);
        assert_eq!(y.pow(3).order(), Order::Finite(3));
        assert_eq!(Poly::zero(2, f()).order(), Order::Infinite);
        let x = Poly::var(2, f(), 0);
        assert_eq!(x.add(&y.pow(2)).order(), Order::Finite(1));
        assert!(Order::Finite(1000) < Order::Infinite);
    }

    #[test]
    fn deglex_sorting() {
        let names = vec!["x".to_string(), "y".to_string()];
        let x = Poly::var(2, f(), 0);
        let y = Poly::var(2, f(), 1);
        let p = y.pow(3).scale(f().from_i64(-3)).add(&x.pow(2).mul(&y));
        assert_eq!(p.to_string_with(&names), "x^2*y - 3*y^3");
    }

    #[test]
    fn mismatched_rings_rejected() {
        let a = Poly::var(2, f(), 0);
        let b = Poly::var(3, f(), 0);
        assert!(matches!(
            poly_arith(&a, &b, PolyOp::Add),
            Err(Error::Dimension(_))
        ));
    }

    #[test]
    fn monomials_of_degree() {
        let ms = Monomial::of_degree(3, 2);
        assert_eq!(ms.len(), 6);
        assert!(ms.windows(2).all(|w| w[0] > w[1]));
        assert_eq!(Monomial::of_degree(0, 0), vec![Monomial::ONE]);
    }

    #[test]
    fn compose_substitutes() {
        let x = Poly::var(2, f(), 0);
        let y = Poly::var(2, f(), 1);
        let p = x.mul(&y);
        let q = p.compose(&[x.add(&y), y.clone()]);
        assert_eq!(q, x.mul(&y).add(&y.mul(&y)));
    }
}
