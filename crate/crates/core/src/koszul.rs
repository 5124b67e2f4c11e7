//! Truncated Koszul complexes `C^(n)(y) = K(y)/K^(n)(y)` with chain modules
//! `(A/m^{n+1-i})^{C(r,i)}`, their homology, and `w(y, n)`.

use std::collections::HashMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::matrix::DenseMatrix;
use crate::poly::Poly;
use crate::presentations::{hilbert_function, hilbert_samuel, module_span, RingPresentation, TruncatedSpan};
use crate::series::{self, binomial};
use crate::superficial::{quotient_by_forms, LinearForm};

/// Index subsets of `0..r` of size `k`, lexicographic.
fn subsets(r: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, r: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..r {
            cur.push(i);
            go(i + 1, r, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, r, k, &mut Vec::new(), &mut out);
    out
}

/// One complex `C^(n)`: chain dimensions and differentials `d_i: C_i → C_{i-1}`.
#[derive(Debug, Clone)]
pub struct TruncatedKoszul {
    pub n: usize,
    pub r: usize,
    pub chain_dims: Vec<usize>,
    /// `differentials[i-1]` is `d_i` as a `dim C_i × dim C_{i-1}` matrix acting on rows.
    pub differentials: Vec<DenseMatrix>,
}

impl TruncatedKoszul {
    pub fn ranks(&self) -> Vec<usize> {
        self.differentials.iter().map(|d| d.rank()).collect()
    }

    /// `λ(H_i)` for `i = 0..=r`.
    pub fn homology_lengths(&self) -> Vec<usize> {
        let rk = self.ranks();
        (0..=self.r)
            .map(|i| {
                let out = if i >= 1 { rk[i - 1] } else { 0 };
                let inc = if i < self.r { rk[i] } else { 0 };
                self.chain_dims[i] - out - inc
            })
            .collect()
    }

    /// `d_i ∘ d_{i+1} = 0` for all `i`.
    pub fn is_complex(&self) -> bool {
        let fld = match self.differentials.first() {
            Some(d) => d.field(),
            None => return true,
        };
        self.differentials.windows(2).all(|w| {
            let (hi, lo) = (&w[1], &w[0]);
            (0..hi.rows()).all(|a| {
                (0..lo.cols()).all(|c| {
                    let mut s = 0;
                    for b in 0..hi.cols() {
                        s = fld.add(s, fld.mul(hi.get(a, b), lo.get(b, c)));
                    }
                    s == 0
                })
            })
        })
    }
}

/// Builds `C^(n)(y)` for `n ≤ span bound - 1` from a span of `q` in a
/// truncation of bound at least `n + 1`.
fn build_complex(span: &mut TruncatedSpan, forms: &[Poly], n: usize) -> TruncatedKoszul {
    let r = forms.len();
    let fld = span.trunc.field;
    let std_below = |span: &TruncatedSpan, k: isize| -> Vec<usize> {
        if k <= 0 {
            Vec::new()
        } else {
            span.standard_cols_below(k as u32)
        }
    };
    let bases: Vec<Vec<usize>> = (0..=r)
        .map(|i| std_below(span, n as isize + 1 - i as isize))
        .collect();
    let sets: Vec<Vec<Vec<usize>>> = (0..=r).map(|i| subsets(r, i)).collect();
    let chain_dims: Vec<usize> = (0..=r).map(|i| bases[i].len() * sets[i].len()).collect();
    let mut differentials = Vec::with_capacity(r);
    for i in 1..=r {
        let tgt_pos: HashMap<usize, usize> = bases[i - 1].iter().enumerate().map(|(k, &c)| (c, k)).collect();
        let set_pos: HashMap<&Vec<usize>, usize> = sets[i - 1].iter().enumerate().map(|(k, s)| (s, k)).collect();
        let tb = bases[i - 1].len();
        let mut d = DenseMatrix::zeros(chain_dims[i], chain_dims[i - 1], fld);
        for (si, set) in sets[i].iter().enumerate() {
            for (bi, &c) in bases[i].iter().enumerate() {
                let row = si * bases[i].len() + bi;
                let mono = span.trunc.basis.monos[c];
                for (q, &j) in set.iter().enumerate() {
                    let mut face = set.clone();
                    face.remove(q);
                    let fidx = set_pos[&face];
                    let sign_neg = q % 2 == 1;
                    let prod = span.trunc.row_of(std::slice::from_ref(&forms[j]), &mono, 1);
                    for (col, v) in span.ech.normal_form(&prod) {
                        if let Some(&k) = tgt_pos.get(&(col as usize)) {
                            let v = if sign_neg { fld.neg(v) } else { v };
                            let cc = fidx * tb + k;
                            d.set(row, cc, fld.add(d.get(row, cc), v));
                        }
                    }
                }
            }
        }
        differentials.push(d);
    }
    TruncatedKoszul {
        n,
        r,
        chain_dims,
        differentials,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WSequence {
    /// `w(y, n)` for `n = 0..=n_max`.
    pub values: Vec<i64>,
    /// `λ(H_i(C^(n)))` for each `n`, `i = 0..=r`.
    pub homology: Vec<Vec<usize>>,
    /// Least `n` from which `w` vanishes on the window.
    pub vanishing_from: Option<usize>,
    pub complexes_ok: bool,
    pub euler_ok: bool,
    pub warnings: Vec<String>,
}

fn check_forms(a: &RingPresentation, forms: &[LinearForm]) -> Result<Vec<Poly>> {
    if forms.is_empty() {
        return Err(Error::Input("at least one linear form is required".into()));
    }
    forms
        .iter()
        .map(|y| {
            if y.coeffs.len() != a.nvars() {
                Err(Error::Dimension("linear form length differs from ring".into()))
            } else {
                Ok(y.to_poly(a.field))
            }
        })
        .collect()
}

/// `w(y, n) = Σ_{i≥1} (-1)^i λ(H_i(C^(n)(y)))` for `n = 0..=n_max`.
pub fn koszul_w(
    a: &RingPresentation,
    forms: &[LinearForm],
    n_max: usize,
    slack: usize,
    cap: usize,
) -> Result<WSequence> {
    let polys = check_forms(a, forms)?;
    let r = forms.len();
    let mut warnings = Vec::new();
    let dim_a = series::module_series(&a.as_module(), n_max, slack, cap)?.dim();
    if r > a.nvars() {
        return Err(Error::Precondition(format!(
            "{r} forms exceed the {} variables",
            a.nvars()
        )));
    }
    if r > dim_a {
        warnings.push(format!("{r} forms exceed dim A = {dim_a}; w need not vanish"));
    }
    for k in 1..=r.min(dim_a) {
        let q = quotient_by_forms(&a.as_module(), &forms[..k])?;
        let dq = series::module_series(&q, n_max, slack, cap)?.dim();
        if dq + k != dim_a {
            warnings.push(format!(
                "forms 1..{k} are not a superficial sequence: dimension drops to {dq}"
            ));
        }
    }
    let mut span = module_span(&a.as_module(), n_max as u32 + 2, cap)?;
    let mut values = Vec::with_capacity(n_max + 1);
    let mut homology = Vec::with_capacity(n_max + 1);
    let mut complexes_ok = true;
    let mut euler_ok = true;
    for n in 0..=n_max {
        let c = build_complex(&mut span, &polys, n);
        complexes_ok &= c.is_complex();
        let h = c.homology_lengths();
        let chain_alt: i64 = c
            .chain_dims
            .iter()
            .enumerate()
            .map(|(i, &v)| if i % 2 == 0 { v as i64 } else { -(v as i64) })
            .sum();
        let hom_alt: i64 = h
            .iter()
            .enumerate()
            .map(|(i, &v)| if i % 2 == 0 { v as i64 } else { -(v as i64) })
            .sum();
        euler_ok &= chain_alt == hom_alt;
        let w: i64 = h
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &v)| if i % 2 == 0 { v as i64 } else { -(v as i64) })
            .sum();
        values.push(w);
        homology.push(h);
    }
    let vanishing_from = match values.iter().rposition(|&v| v != 0) {
        None => Some(0),
        Some(i) if i < n_max => Some(i + 1),
        _ => None,
    };
    Ok(WSequence {
        values,
        homology,
        vanishing_from,
        complexes_ok,
        euler_ok,
        warnings,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DifferenceIdentityReport {
    pub lhs: Vec<i64>,
    pub quotient_lengths: Vec<i64>,
    pub w: WSequence,
    pub holds: bool,
    pub first_mismatch: Option<usize>,
}

/// `Δ^r λ(A/m^{n+1}) = λ(A/(y, m^{n+1})) + w(y, n)` with the three terms
/// computed independently.
pub fn difference_identity_check(
    a: &RingPresentation,
    forms: &[LinearForm],
    n_max: usize,
    slack: usize,
    cap: usize,
) -> Result<DifferenceIdentityReport> {
    let r = forms.len();
    let w = koszul_w(a, forms, n_max, slack, cap)?;
    let samuel = hilbert_samuel(&a.as_module(), n_max, cap)?;
    let lam = |k: i64| -> i64 {
        if k < 0 {
            0
        } else {
            samuel[k as usize] as i64
        }
    };
    let lhs: Vec<i64> = (0..=n_max as i64)
        .map(|n| {
            (0..=r as i64)
                .map(|i| {
                    let s = if i % 2 == 0 { 1 } else { -1 };
                    s * binomial(r as i64, i) * lam(n - i)
                })
                .sum()
        })
        .collect();
    let q = quotient_by_forms(&a.as_module(), forms)?;
    let hq = hilbert_function(&q, n_max, cap)?;
    let mut acc = 0i64;
    let quotient_lengths: Vec<i64> = hq
        .iter()
        .map(|&v| {
            acc += v as i64;
            acc
        })
        .collect();
    let first_mismatch = (0..=n_max).find(|&n| lhs[n] != quotient_lengths[n] + w.values[n]);
    if let Some(n) = first_mismatch {
        return Err(Error::Internal(format!(
            "difference identity fails at n = {n}: {} vs {} + {}",
            lhs[n], quotient_lengths[n], w.values[n]
        )));
    }
    Ok(DifferenceIdentityReport {
        holds: w.complexes_ok && w.euler_ok,
        lhs,
        quotient_lengths,
        w,
        first_mismatch,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InvarianceSample {
    pub forms: Vec<LinearForm>,
    pub hilbert: Vec<usize>,
    pub generic: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum InvarianceVerdict {
    Agree,
    Inconclusive,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InvarianceReport {
    pub r: usize,
    pub samples: Vec<InvarianceSample>,
    pub hilbert: Option<Vec<usize>>,
    pub h_polynomial: Option<Vec<i64>>,
    pub reseeds: usize,
    pub verdict: InvarianceVerdict,
}

/// Hilbert functions of `A/(y)` for independent random `r`-tuples `y`;
/// minority samples are redrawn up to `retries` times.
pub fn generic_invariance_sample(
    a: &RingPresentation,
    r: usize,
    samples: usize,
    seed: u64,
    n_max: usize,
    retries: usize,
    slack: usize,
    cap: usize,
) -> Result<InvarianceReport> {
    if samples < 2 {
        return Err(Error::Input("at least two samples are required".into()));
    }
    let dim_a = series::module_series(&a.as_module(), n_max, slack, cap)?.dim();
    if r == 0 || r > dim_a {
        return Err(Error::Precondition(format!("need 1 <= r <= dim A = {dim_a}, got {r}")));
    }
    let mut stream = 0u64;
    let draw = |stream: &mut u64| -> Result<InvarianceSample> {
        let forms: Vec<LinearForm> = (0..r)
            .map(|_| {
                let f = LinearForm::seeded(a.nvars(), a.field, seed, *stream);
                *stream += 1;
                f
            })
            .collect();
        let q = quotient_by_forms(&a.as_module(), &forms)?;
        let hilbert = hilbert_function(&q, n_max, cap)?;
        Ok(InvarianceSample {
            forms,
            hilbert,
            generic: true,
        })
    };
    let mut pool: Vec<InvarianceSample> = (0..samples).map(|_| draw(&mut stream)).collect::<Result<_>>()?;
    let mut reseeds = 0;
    let mut history = Vec::new();
    loop {
        let mut counts: HashMap<&Vec<usize>, usize> = HashMap::new();
        for s in &pool {
            *counts.entry(&s.hilbert).or_default() += 1;
        }
        let (best, nbest) = counts
            .iter()
            .max_by_key(|(h, c)| (**c, std::cmp::Reverse(h.iter().sum::<usize>())))
            .map(|(h, c)| ((*h).clone(), *c))
            .expect("nonempty pool");
        if nbest == pool.len() {
            let q_series = series::extract_h_polynomial(&series::LengthSeries::new(best.clone(), true, slack), slack).ok();
            history.extend(pool);
            return Ok(InvarianceReport {
                r,
                samples: history,
                h_polynomial: q_series.map(|h| h.coeffs),
                hilbert: Some(best),
                reseeds,
                verdict: InvarianceVerdict::Agree,
            });
        }
        if reseeds >= retries || 2 * nbest <= pool.len() {
            history.extend(pool);
            return Ok(InvarianceReport {
                r,
                samples: history,
                hilbert: None,
                h_polynomial: None,
                reseeds,
                verdict: InvarianceVerdict::Inconclusive,
            });
        }
        reseeds += 1;
        let mut next = Vec::with_capacity(pool.len());
        for mut s in pool {
            if s.hilbert == best {
                next.push(s);
            } else {
                s.generic = false;
                history.push(s);
                next.push(draw(&mut stream)?);
            }
        }
        pool = next;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Field;
    use crate::presentations::DEFAULT_MEMORY_CAP as CAP;

    fn fld() -> Field {
        Field::default()
    }

    #[test]
    fn subsets_are_lexicographic() {
        assert_eq!(subsets(3, 2), vec![vec![0, 1], vec![0, 2], vec![1, 2]]);
        assert_eq!(subsets(2, 0), vec![Vec::<usize>::new()]);
    }

    #[test]
    fn line_times_artinian() {
        let a = RingPresentation::from_strs("A", &["x", "y"], &["y^3"], fld()).unwrap();
        let w = koszul_w(&a, &[LinearForm::variable(2, 0)], 8, 3, CAP).unwrap();
        assert!(w.values.iter().all(|&v| v == 0));
        assert!(w.complexes_ok && w.euler_ok);
        let rep = difference_identity_check(&a, &[LinearForm::variable(2, 0)], 8, 3, CAP).unwrap();
        assert!(rep.holds);
    }

    #[test]
    fn regular_ring_two_forms() {
        let a = RingPresentation::from_strs("S", &["x", "y", "z"], &[], fld()).unwrap();
        let forms = [LinearForm::seeded(3, fld(), 4, 0), LinearForm::seeded(3, fld(), 4, 1)];
        let rep = difference_identity_check(&a, &forms, 6, 3, CAP).unwrap();
        assert!(rep.w.values.iter().all(|&v| v == 0));
        assert_eq!(rep.quotient_lengths, vec![1, 2, 3, 4, 5, 6, 7]);
    }

    #[test]
    fn non_superficial_form_still_satisfies_identity() {
        let a = RingPresentation::from_strs("A", &["x", "y"], &["y^3"], fld()).unwrap();
        let rep = difference_identity_check(&a, &[LinearForm::variable(2, 1)], 6, 3, CAP).unwrap();
        assert!(!rep.w.warnings.is_empty());
        assert!(rep.w.values.iter().any(|&v| v != 0));
    }

    #[test]
    fn invariance_on_artinian_line() {
        let a = RingPresentation::from_strs("A", &["x", "y"], &["y^3"], fld()).unwrap();
        let rep = generic_invariance_sample(&a, 1, 5, 3, 6, 3, 3, CAP).unwrap();
        assert_eq!(rep.verdict, InvarianceVerdict::Agree);
        assert_eq!(rep.hilbert.unwrap(), vec![1, 1, 1, 0, 0, 0, 0]);
    }
}
