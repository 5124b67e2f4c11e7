//! h-polynomials, dimension detection and Hilbert coefficients.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::presentations::{self, ModulePresentation};

/// A finite window of exact lengths.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LengthSeries {
    pub values: Vec<usize>,
    pub stabilized: bool,
    pub slack_used: usize,
}

impl LengthSeries {
    pub fn new(values: Vec<usize>, stabilized: bool, slack_used: usize) -> Self {
        LengthSeries {
            values,
            stabilized,
            slack_used,
        }
    }

    pub fn raw(values: Vec<usize>) -> Self {
        Self::new(values, false, 0)
    }
}

/// `h(z)` with `H(z) = h(z)/(1-z)^r`, plus the postulation number of the
/// Hilbert-Samuel function (least `n ≥ 0` from which it agrees with its
/// polynomial on the observed window).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HPolynomial {
    pub coeffs: Vec<i64>,
    pub dim_r: usize,
    pub postulation: usize,
}

pub fn binomial(n: i64, k: i64) -> i64 {
    if k < 0 || n < 0 || k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut r: i64 = 1;
    for i in 0..k {
        r = r * (n - i) / (i + 1);
    }
    r
}

/// Coefficients of `(1-z)^r * s(z)` on the window of `s`.
pub fn difference(s: &[i64], r: usize) -> Vec<i64> {
    let mut c = s.to_vec();
    for _ in 0..r {
        for n in (1..c.len()).rev() {
            c[n] -= c[n - 1];
        }
    }
    c
}

/// First `len` coefficients of `h(z)/(1-z)^r`.
pub fn expand(h: &[i64], r: usize, len: usize) -> Vec<i64> {
    let mut c = vec![0i64; len];
    for (i, &a) in h.iter().enumerate().take(len) {
        c[i] = a;
    }
    for _ in 0..r {
        for n in 1..len {
            c[n] += c[n - 1];
        }
    }
    c
}

pub fn poly_eval(h: &[i64], z: i64) -> i64 {
    h.iter().rev().fold(0, |acc, &a| acc * z + a)
}

fn trim(mut v: Vec<i64>) -> Vec<i64> {
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

/// Minimal `r` with `(1-z)^r H(z)` a polynomial on the window, requiring at
/// least `slack` trailing zero coefficients.
pub fn extract_h_polynomial(h: &LengthSeries, slack: usize) -> Result<HPolynomial> {
    let vals: Vec<i64> = h.values.iter().map(|&v| v as i64).collect();
    let len = vals.len();
    if len <= slack {
        return Err(Error::NoStabilization(format!(
            "window of length {len} is not longer than slack {slack}"
        )));
    }
    if vals.iter().all(|&v| v == 0) {
        return Ok(HPolynomial {
            coeffs: Vec::new(),
            dim_r: 0,
            postulation: 0,
        });
    }
    for r in 0..len {
        let c = difference(&vals, r);
        if c[len - slack..].iter().all(|&v| v == 0) {
            let coeffs = trim(c);
            let postulation = postulation_number(&vals, &coeffs, r);
            return Ok(HPolynomial {
                coeffs,
                dim_r: r,
                postulation,
            });
        }
    }
    let tail: Vec<String> = vals[len.saturating_sub(slack + 2)..]
        .iter()
        .map(|v| v.to_string())
        .collect();
    Err(Error::NoStabilization(format!(
        "tail of the window: {}",
        tail.join(",")
    )))
}

/// Hilbert-Samuel polynomial `p(i) = Σ_k (-1)^k e_k C(i + r - k, r - k)`.
pub fn samuel_polynomial_value(e: &[i64], r: usize, i: i64) -> i64 {
    (0..=r)
        .map(|k| {
            let sign = if k % 2 == 0 { 1 } else { -1 };
            let ek = e.get(k).copied().unwrap_or(0);
            let n = i + (r - k) as i64;
            let b = if r - k == 0 {
                1
            } else if n < 0 {
                // C(n, m) for negative n with the polynomial convention.
                let m = (r - k) as i64;
                let mut num: i64 = 1;
                let mut den: i64 = 1;
                for t in 0..m {
                    num *= n - t;
                    den *= t + 1;
                }
                num / den
            } else {
                binomial(n, (r - k) as i64)
            };
            sign * ek * b
        })
        .sum()
}

fn postulation_number(h_vals: &[i64], coeffs: &[i64], r: usize) -> usize {
    let e = e_coefficients(coeffs, r);
    let mut cum = 0i64;
    let samuel: Vec<i64> = h_vals
        .iter()
        .map(|&v| {
            cum += v;
            cum
        })
        .collect();
    let mut post = samuel.len();
    for i in (0..samuel.len()).rev() {
        if samuel_polynomial_value(&e, r, i as i64) == samuel[i] {
            post = i;
        } else {
            break;
        }
    }
    post
}

/// `e_i = Σ_{k≥i} C(k,i) a_k` for `i = 0..=i_max`.
pub fn e_coefficients(h: &[i64], i_max: usize) -> Vec<i64> {
    (0..=i_max)
        .map(|i| {
            h.iter()
                .enumerate()
                .skip(i)
                .map(|(k, &a)| binomial(k as i64, i as i64) * a)
                .sum()
        })
        .collect()
}

/// `χ_i(f)` by the alternating sum `Σ_{j≤i} (-1)^{i-j} e_j + (-1)^{i+1} f(0)`.
pub fn chi_alternating(h: &[i64], i_max: usize) -> Vec<i64> {
    let e = e_coefficients(h, i_max);
    let f0 = h.first().copied().unwrap_or(0);
    (0..=i_max)
        .map(|i| {
            let s: i64 = (0..=i)
                .map(|j| {
                    let sign = if (i - j) % 2 == 0 { 1 } else { -1 };
                    sign * e[j]
                })
                .sum();
            let last = if (i + 1) % 2 == 0 { f0 } else { -f0 };
            s + last
        })
        .collect()
}

/// `χ_i(f) = Σ_{k≥i+1} C(k-1,i) a_k`.
pub fn chi_binomial(h: &[i64], i_max: usize) -> Vec<i64> {
    (0..=i_max)
        .map(|i| {
            h.iter()
                .enumerate()
                .skip(i + 1)
                .map(|(k, &a)| binomial(k as i64 - 1, i as i64) * a)
                .sum()
        })
        .collect()
}

/// Both closed forms of `χ_i(f)`, cross-checked.
pub fn chi_of_poly(h: &[i64], i_max: usize) -> Result<Vec<i64>> {
    let a = chi_alternating(h, i_max);
    let b = chi_binomial(h, i_max);
    if a != b {
        return Err(Error::Internal(format!(
            "chi forms disagree: alternating {a:?}, binomial {b:?}"
        )));
    }
    Ok(a)
}

/// `χ_i(M)` using `μ(M)`; requires `h(0) = μ`.
pub fn chi_coefficients(h: &HPolynomial, mu: usize, i_max: usize) -> Result<Vec<i64>> {
    let h0 = h.coeffs.first().copied().unwrap_or(0);
    if h0 != mu as i64 {
        return Err(Error::Precondition(format!(
            "h(0) = {h0} differs from mu = {mu}"
        )));
    }
    chi_of_poly(&h.coeffs, i_max)
}

impl HPolynomial {
    pub fn e(&self, i_max: usize) -> Vec<i64> {
        e_coefficients(&self.coeffs, i_max)
    }

    pub fn e_i(&self, i: usize) -> i64 {
        self.e(i)[i]
    }

    pub fn chi(&self, i_max: usize) -> Result<Vec<i64>> {
        chi_of_poly(&self.coeffs, i_max)
    }

    pub fn chi_i(&self, i: usize) -> i64 {
        chi_binomial(&self.coeffs, i)[i]
    }

    /// `h(z)(1-z)^k`, the numerator over a denominator of dimension `dim_r + k`.
    pub fn lifted(&self, k: usize) -> Vec<i64> {
        let mut c = self.coeffs.clone();
        c.resize(self.coeffs.len() + k, 0);
        trim(difference(&c, k))
    }

    pub fn is_nonnegative(&self) -> bool {
        self.coeffs.iter().all(|&a| a >= 0)
    }
}

/// Hilbert data of a module: H on the window, h-polynomial, μ.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ModuleSeries {
    pub label: String,
    pub hilbert: LengthSeries,
    pub h: HPolynomial,
    pub mu: usize,
    pub n_max: usize,
}

impl ModuleSeries {
    pub fn e(&self, i_max: usize) -> Vec<i64> {
        self.h.e(i_max)
    }
    pub fn chi(&self, i_max: usize) -> Result<Vec<i64>> {
        chi_coefficients(&self.h, self.mu, i_max)
    }
    pub fn dim(&self) -> usize {
        self.h.dim_r
    }
}

/// Computes `H(M, 0..=n_max+2)`, extracts `h` from the first `n_max+1`
/// values and re-verifies the two extra values.
pub fn module_series(
    m: &ModulePresentation,
    n_max: usize,
    slack: usize,
    cap: usize,
) -> Result<ModuleSeries> {
    let full = presentations::hilbert_function(m, n_max + 2, cap)?;
    let window = LengthSeries::new(full[..=n_max].to_vec(), true, slack);
    let h = extract_h_polynomial(&window, slack)?;
    let predicted = expand(&h.coeffs, h.dim_r, n_max + 3);
    for n in n_max + 1..=n_max + 2 {
        if predicted[n] != full[n] as i64 {
            return Err(Error::NoStabilization(format!(
                "'{}': predicted H({n}) = {}, computed {}",
                m.label, predicted[n], full[n]
            )));
        }
    }
    Ok(ModuleSeries {
        label: m.label.clone(),
        mu: full[0],
        hilbert: window,
        h,
        n_max,
    })
}

/// Outcome of checking the conclusions of the series identity lemma.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IdentityReport {
    pub i_max: usize,
    pub e_equalities: bool,
    pub chi_equalities: bool,
    pub g_nonnegative: bool,
    pub inequalities: Option<bool>,
}

impl IdentityReport {
    pub fn all_hold(&self) -> bool {
        self.e_equalities && self.chi_equalities && self.inequalities.unwrap_or(true)
    }
}

/// Given `(1-z)g = p - q + r`, verifies the e- and χ-relations between the four polynomials.
pub fn series_identity_check(g: &[i64], p: &[i64], q: &[i64], r: &[i64]) -> Result<IdentityReport> {
    let len = [g.len() + 1, p.len(), q.len(), r.len()]
        .into_iter()
        .max()
        .unwrap_or(0);
    let at = |v: &[i64], i: usize| v.get(i).copied().unwrap_or(0);
    for n in 0..len {
        let lhs = at(g, n) - if n > 0 { at(g, n - 1) } else { 0 };
        let rhs = at(p, n) - at(q, n) + at(r, n);
        if lhs != rhs {
            return Err(Error::Precondition(format!(
                "(1-z)g differs from p - q + r in degree {n}: {lhs} vs {rhs}"
            )));
        }
    }
    let i_max = len;
    let (eg, ep, eq, er) = (
        e_coefficients(g, i_max),
        e_coefficients(p, i_max),
        e_coefficients(q, i_max),
        e_coefficients(r, i_max),
    );
    let (cg, cp, cq, cr) = (
        chi_of_poly(g, i_max)?,
        chi_of_poly(p, i_max)?,
        chi_of_poly(q, i_max)?,
        chi_of_poly(r, i_max)?,
    );
    let mut e_ok = eq[0] == ep[0] + er[0];
    let mut chi_ok = cq[0] == cp[0] + cr[0] + at(g, 0);
    for i in 1..=i_max {
        e_ok &= eq[i] == ep[i] + er[i] + eg[i - 1];
        chi_ok &= cq[i] == cp[i] + cr[i] + cg[i - 1];
    }
    let g_nonneg = g.iter().all(|&a| a >= 0);
    let inequalities = if g_nonneg {
        Some((0..=i_max).all(|i| eq[i] >= ep[i] + er[i] && cq[i] >= cp[i] + cr[i]))
    } else {
        None
    };
    Ok(IdentityReport {
        i_max,
        e_equalities: e_ok,
        chi_equalities: chi_ok,
        g_nonnegative: g_nonneg,
        inequalities,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn artinian_series() {
        let h = extract_h_polynomial(&LengthSeries::raw(vec![1, 1, 1, 0, 0, 0, 0]), 3).unwrap();
        assert_eq!(h.coeffs, vec![1, 1, 1]);
        assert_eq!(h.dim_r, 0);
    }

    #[test]
    fn constant_h() {
        assert_eq!(e_coefficients(&[4], 3), vec![4, 0, 0, 0]);
        assert_eq!(chi_of_poly(&[1], 3).unwrap(), vec![0, 0, 0, 0]);
    }

    #[test]
    fn expand_inverts_difference() {
        let h = vec![1, 3, 0, 3, -1];
        let s = expand(&h, 2, 12);
        let back = difference(&s, 2);
        assert_eq!(&back[..5], &h[..]);
        assert!(back[5..].iter().all(|&v| v == 0));
    }

    #[test]
    fn identity_precondition() {
        assert!(matches!(
            series_identity_check(&[1], &[1], &[0], &[0]),
            Err(Error::Precondition(_))
        ));
        let rep = series_identity_check(&[], &[1, 1], &[1, 1], &[]).unwrap();
        assert!(rep.all_hold());
    }

    #[test]
    fn chi_mu_mismatch() {
        let h = HPolynomial {
            coeffs: vec![2, 1],
            dim_r: 1,
            postulation: 0,
        };
        assert!(chi_coefficients(&h, 1, 2).is_err());
        assert_eq!(chi_coefficients(&h, 2, 1).unwrap(), vec![1, 0]);
    }
}
