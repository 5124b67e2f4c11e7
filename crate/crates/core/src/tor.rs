//! `λ(Tor₁^A(M, A/m^{n+1}))`, the polynomial `l_M(z)` and kernels of
//! multiplication by a linear form between successive `M/m^n M`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::matrix::DenseMatrix;
use crate::poly::Poly;
use crate::presentations::{module_span, ModulePresentation, ModuleTruncation, SpanGenerator, TruncatedSpan};
use crate::series::{self, expand, LengthSeries};
use crate::superficial::LinearForm;

fn ideal_generators(m: &ModulePresentation) -> Vec<SpanGenerator> {
    let z = Poly::zero(m.nvars(), m.field());
    let mut out = Vec::new();
    for f in &m.ring.ideal {
        for j in 0..m.gens {
            let mut v = vec![z.clone(); m.gens];
            v[j] = f.clone();
            out.push(SpanGenerator::all(v));
        }
    }
    out
}

/// Lengths of `Tor₁^A(M, A/m^{n+1}) = (K ∩ m^{n+1}F)/m^{n+1}K` for the
/// presentation `0 → K → F → M → 0` given by the relation columns of `M`.
/// Each value is computed in `F/m^T F` at `T = n+1+slack` and `T+1`.
pub fn tor1_lengths(m: &ModulePresentation, n_max: usize, slack: usize, cap: usize) -> Result<LengthSeries> {
    let t_top = (n_max + slack + 3) as u32;
    let w = module_span(m, t_top, cap)?;
    let qgens = ideal_generators(m);
    let q = TruncatedSpan::build(w.trunc.clone(), &qgens);
    let mut out = Vec::with_capacity(n_max + 1);
    for n in 0..=n_max {
        let mut ygens: Vec<SpanGenerator> = m
            .relations
            .iter()
            .map(|c| SpanGenerator {
                vector: c.clone(),
                min_mult_degree: n as u32 + 1,
            })
            .collect();
        ygens.extend(qgens.iter().cloned());
        let y = TruncatedSpan::build(w.trunc.clone(), &ygens);
        let n32 = n as u32;
        let at = |t: u32| -> usize {
            let x = w.pivots_below(t) - w.pivots_below(n32 + 1) + q.pivots_below(n32 + 1);
            x - y.pivots_below(t)
        };
        let t = n32 + 1 + slack as u32;
        let (a, b) = (at(t), at(t + 1));
        if a != b {
            return Err(Error::Inconclusive(format!(
                "Tor length of '{}' in degree {n} changes from {a} to {b} between truncations {t} and {}",
                m.label,
                t + 1
            )));
        }
        out.push(a);
    }
    Ok(LengthSeries::new(out, true, slack))
}

/// Tor lengths together with `l_M(z)`, where `Σ λ(Tor₁(M, A/m^{n+1})) z^n =
/// l_M(z)/(1-z)^d`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TorSeries {
    pub lengths: LengthSeries,
    pub l_poly: Vec<i64>,
    pub dim_used: usize,
    /// `(1-z)·l_M = h_K - g·h_A + h_M` reproduces the computed lengths.
    pub identity_holds: bool,
    pub generators: usize,
}

/// Divides by `1 - z`; `None` when the remainder is nonzero.
fn divide_one_minus_z(p: &[i64]) -> Option<Vec<i64>> {
    if p.iter().sum::<i64>() != 0 {
        return None;
    }
    let mut q = Vec::with_capacity(p.len());
    let mut acc = 0;
    for &c in p.iter().take(p.len().saturating_sub(1)) {
        acc += c;
        q.push(acc);
    }
    while q.last() == Some(&0) {
        q.pop();
    }
    Some(q)
}

fn lift(h: &series::HPolynomial, d: usize) -> Result<Vec<i64>> {
    if h.coeffs.is_empty() {
        return Ok(Vec::new());
    }
    if h.dim_r > d {
        return Err(Error::Precondition(format!(
            "module dimension {} exceeds ring dimension {d}",
            h.dim_r
        )));
    }
    Ok(h.lifted(d - h.dim_r))
}

fn poly_combine(parts: &[(i64, &[i64])]) -> Vec<i64> {
    let len = parts.iter().map(|(_, p)| p.len()).max().unwrap_or(0);
    let mut out = vec![0; len];
    for (c, p) in parts {
        for (i, &a) in p.iter().enumerate() {
            out[i] += c * a;
        }
    }
    while out.last() == Some(&0) {
        out.pop();
    }
    out
}

/// `l_M(z)` from the identity with `h_K`, `h_A`, `h_M`, checked against
/// the Tor lengths on the window.
pub fn l_polynomial(
    m: &ModulePresentation,
    k: &ModulePresentation,
    n_max: usize,
    slack: usize,
    cap: usize,
) -> Result<TorSeries> {
    if k.ring != m.ring {
        return Err(Error::Dimension("syzygy lives over a different ring".into()));
    }
    let a = m.ring.as_module();
    let ha = series::module_series(&a, n_max, slack, cap)?;
    let hm = series::module_series(m, n_max, slack, cap)?;
    let hk = series::module_series(k, n_max, slack, cap)?;
    let d = ha.dim();
    let (la, lm, lk) = (lift(&ha.h, d)?, lift(&hm.h, d)?, lift(&hk.h, d)?);
    let g = m.gens as i64;
    let rhs = poly_combine(&[(1, &lk), (-g, &la), (1, &lm)]);
    let lengths = tor1_lengths(m, n_max, slack, cap)?;
    let (l_poly, identity_holds) = match divide_one_minus_z(&rhs) {
        Some(l) => {
            let pred = expand(&l, d, n_max + 1);
            let ok = pred
                .iter()
                .zip(&lengths.values)
                .all(|(&p, &v)| p == v as i64);
            (l, ok)
        }
        None => (Vec::new(), false),
    };
    Ok(TorSeries {
        lengths,
        l_poly,
        dim_used: d,
        identity_holds,
        generators: m.gens,
    })
}

/// `dim ker(M/m^n M --x--> M/m^{n+1} M)` for `n = 0..=n_max`, from dense
/// matrices on standard-monomial bases.
pub fn xmap_kernel_dims(m: &ModulePresentation, x: &LinearForm, n_max: usize, cap: usize) -> Result<LengthSeries> {
    if x.coeffs.len() != m.nvars() {
        return Err(Error::Dimension("linear form length differs from ring".into()));
    }
    let bound = n_max as u32 + 2;
    let mut w = module_span(m, bound, cap)?;
    let trunc: ModuleTruncation = w.trunc.clone();
    let xp = x.to_poly(m.field());
    let z = Poly::zero(m.nvars(), m.field());
    let mut out = Vec::with_capacity(n_max + 1);
    for n in 0..=n_max as u32 {
        let src = w.standard_cols_below(n);
        let dst = w.standard_cols_below(n + 1);
        if src.is_empty() {
            out.push(0);
            continue;
        }
        let pos: std::collections::HashMap<usize, usize> =
            dst.iter().enumerate().map(|(i, &c)| (c, i)).collect();
        let mut mat = DenseMatrix::zeros(src.len(), dst.len(), m.field());
        for (r, &c) in src.iter().enumerate() {
            let g = c % trunc.gens;
            let mono = trunc.basis.monos[c / trunc.gens];
            let mut v = vec![z.clone(); trunc.gens];
            v[g] = xp.clone();
            let row = trunc.row_of(&v, &mono, 1);
            for (col, val) in w.ech.normal_form(&row) {
                if let Some(&j) = pos.get(&(col as usize)) {
                    mat.set(r, j, val);
                }
            }
        }
        out.push(src.len() - mat.rank());
    }
    Ok(LengthSeries::new(out, true, 0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Field;
    use crate::presentations::{RingPresentation, DEFAULT_MEMORY_CAP as CAP};
    use crate::superficial::b_sequence;

    fn fld() -> Field {
        Field::default()
    }

    #[test]
    fn residue_field_over_artinian_line() {
        let a = RingPresentation::from_strs("B", &["y"], &["y^3"], fld()).unwrap();
        let k = ModulePresentation::from_strs("k", a.clone(), &[&["y"]]).unwrap();
        let syz = ModulePresentation::from_strs("K", a, &[&["y^2"]]).unwrap();
        let t = tor1_lengths(&k, 5, 3, CAP).unwrap();
        assert_eq!(t.values, vec![1, 1, 0, 0, 0, 0]);
        let l = l_polynomial(&k, &syz, 5, 3, CAP).unwrap();
        assert_eq!(l.l_poly, vec![1, 1]);
        assert!(l.identity_holds);
    }

    #[test]
    fn free_module_has_no_tor() {
        let a = RingPresentation::from_strs("A", &["x", "y"], &["y^3"], fld()).unwrap();
        let t = tor1_lengths(&a.free(2), 6, 3, CAP).unwrap();
        assert!(t.values.iter().all(|&v| v == 0));
    }

    #[test]
    fn depth_zero_example_kernels() {
        let a = RingPresentation::from_strs("A", &["x", "y"], &["y^3"], fld()).unwrap();
        let m = ModulePresentation::from_strs("M", a.clone(), &[&["x", "y"], &["-y^2", "0"]]).unwrap();
        let syz = ModulePresentation::from_strs("K", a, &[&["0", "-y"], &["y^2", "x"]]).unwrap();
        let x = LinearForm::variable(2, 0);
        let k = xmap_kernel_dims(&m, &x, 8, CAP).unwrap();
        let b = b_sequence(&m, &x, 8, 3, CAP).unwrap();
        assert_eq!(k.values, b.values);
        assert_eq!(k.values[0], 0);
        let l = l_polynomial(&m, &syz, 10, 3, CAP).unwrap();
        assert!(l.identity_holds);
        let tail = &l.lengths.values[6..];
        assert!(tail[0] > 0 && tail.iter().all(|&v| v == tail[0]));
    }
}
