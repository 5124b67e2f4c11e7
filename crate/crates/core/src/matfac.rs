//! Matrix factorizations `φψ = ψφ = f·I` of hypersurfaces `A = Q/(f)`.

use rand::seq::SliceRandom;
use rand::Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::poly::{Monomial, Order, Poly};
use crate::presentations::{
    annihilator_socle_dim, hilbert_function, ModulePresentation, RingPresentation,
};
use crate::series;
use crate::superficial::{quotient_by_forms, rng_for, LinearForm};

pub type PolyMatrix = Vec<Vec<Poly>>;

pub fn transpose(m: &PolyMatrix) -> PolyMatrix {
    let n = m.len();
    let c = m.first().map(|r| r.len()).unwrap_or(0);
    (0..c).map(|j| (0..n).map(|i| m[i][j].clone()).collect()).collect()
}

pub fn mat_mul(a: &PolyMatrix, b: &PolyMatrix, nvars: usize, field: Field) -> PolyMatrix {
    let n = a.len();
    let k = b.len();
    let m = b.first().map(|r| r.len()).unwrap_or(0);
    (0..n)
        .map(|i| {
            (0..m)
                .map(|j| {
                    let mut s = Poly::zero(nvars, field);
                    for l in 0..k {
                        if !a[i][l].is_zero() && !b[l][j].is_zero() {
                            s = s.add(&a[i][l].mul(&b[l][j]));
                        }
                    }
                    s
                })
                .collect()
        })
        .collect()
}

fn minor(m: &PolyMatrix, row: usize, col: usize) -> PolyMatrix {
    m.iter()
        .enumerate()
        .filter(|(i, _)| *i != row)
        .map(|(_, r)| {
            r.iter()
                .enumerate()
                .filter(|(j, _)| *j != col)
                .map(|(_, p)| p.clone())
                .collect()
        })
        .collect()
}

/// Determinant by cofactor expansion; matrices here are small.
pub fn det(m: &PolyMatrix, nvars: usize, field: Field) -> Poly {
    let n = m.len();
    match n {
        0 => Poly::constant(nvars, field, 1),
        1 => m[0][0].clone(),
        2 => m[0][0].mul(&m[1][1]).sub(&m[0][1].mul(&m[1][0])),
        _ => {
            let mut s = Poly::zero(nvars, field);
            for j in 0..n {
                if m[0][j].is_zero() {
                    continue;
                }
                let t = m[0][j].mul(&det(&minor(m, 0, j), nvars, field));
                s = if j % 2 == 0 { s.add(&t) } else { s.sub(&t) };
            }
            s
        }
    }
}

/// Classical adjoint: `adj(φ)·φ = φ·adj(φ) = det(φ)·I`.
pub fn adjugate(m: &PolyMatrix, nvars: usize, field: Field) -> PolyMatrix {
    let n = m.len();
    if n == 1 {
        return vec![vec![Poly::constant(nvars, field, 1)]];
    }
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let c = det(&minor(m, j, i), nvars, field);
                    if (i + j) % 2 == 0 {
                        c
                    } else {
                        c.neg()
                    }
                })
                .collect()
        })
        .collect()
}

/// Least order over all entries (`Infinite` for the zero matrix).
pub fn entry_order(m: &PolyMatrix) -> Order {
    m.iter()
        .flatten()
        .map(|p| p.order())
        .min()
        .unwrap_or(Order::Infinite)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatrixFactorization {
    pub vars: Vec<String>,
    pub field: Field,
    pub phi: PolyMatrix,
    pub psi: PolyMatrix,
    pub f: Poly,
    pub e: u32,
    pub warnings: Vec<String>,
}

fn check_square(m: &PolyMatrix, name: &str, nvars: usize) -> Result<usize> {
    let n = m.len();
    if n == 0 {
        return Err(Error::Validation(format!("{name} is empty")));
    }
    for (i, r) in m.iter().enumerate() {
        if r.len() != n {
            return Err(Error::Validation(format!(
                "{name} is not square: row {i} has {} entries, expected {n}",
                r.len()
            )));
        }
        if r.iter().any(|p| p.nvars() != nvars) {
            return Err(Error::Dimension(format!(
                "{name} row {i} uses a different variable count"
            )));
        }
    }
    Ok(n)
}

impl MatrixFactorization {
    /// Checks `φψ = ψφ = f·I` with `order(f) ≥ 2`.
    pub fn validate(vars: Vec<String>, field: Field, phi: PolyMatrix, psi: PolyMatrix) -> Result<Self> {
        let nv = vars.len();
        let n = check_square(&phi, "phi", nv)?;
        let m = check_square(&psi, "psi", nv)?;
        if n != m {
            return Err(Error::Validation(format!(
                "phi is {n}x{n} but psi is {m}x{m}"
            )));
        }
        let pq = mat_mul(&phi, &psi, nv, field);
        let qp = mat_mul(&psi, &phi, nv, field);
        let f = pq[0][0].clone();
        for i in 0..n {
            for j in 0..n {
                let want = if i == j { f.clone() } else { Poly::zero(nv, field) };
                if pq[i][j] != want {
                    return Err(Error::Validation(format!(
                        "phi*psi is not scalar: entry ({},{}) is {}",
                        i + 1,
                        j + 1,
                        pq[i][j].to_string_with(&vars)
                    )));
                }
                if qp[i][j] != want {
                    return Err(Error::Validation(format!(
                        "psi*phi differs from phi*psi at entry ({},{}): {}",
                        i + 1,
                        j + 1,
                        qp[i][j].to_string_with(&vars)
                    )));
                }
            }
        }
        let e = match f.order() {
            Order::Infinite => return Err(Error::Validation("phi*psi is zero".into())),
            Order::Finite(e) if e < 2 => {
                return Err(Error::Validation(format!(
                    "f = {} has order {e}; need order at least 2",
                    f.to_string_with(&vars)
                )))
            }
            Order::Finite(e) => e,
        };
        let mut warnings = Vec::new();
        for (name, mat) in [("phi", &phi), ("psi", &psi)] {
            if entry_order(mat) == Order::Finite(0) {
                warnings.push(format!("{name} has a unit entry; the factorization is not minimal"));
            }
        }
        Ok(MatrixFactorization {
            vars,
            field,
            phi,
            psi,
            f,
            e,
            warnings,
        })
    }

    /// `(φ, adj φ)`, a factorization of `det φ`.
    pub fn from_adjugate(vars: Vec<String>, field: Field, phi: PolyMatrix) -> Result<Self> {
        let nv = vars.len();
        check_square(&phi, "phi", nv)?;
        let psi = adjugate(&phi, nv, field);
        Self::validate(vars, field, phi, psi)
    }

    pub fn from_strs(vars: &[&str], field: Field, phi: &[&[&str]], psi: Option<&[&[&str]]>) -> Result<Self> {
        let vars: Vec<String> = vars.iter().map(|s| s.to_string()).collect();
        let parse = |m: &[&[&str]]| -> Result<PolyMatrix> {
            m.iter()
                .map(|r| {
                    r.iter()
                        .map(|s| crate::parse::parse_poly(s, &vars, field))
                        .collect()
                })
                .collect()
        };
        let phi = parse(phi)?;
        match psi {
            Some(p) => {
                let psi = parse(p)?;
                Self::validate(vars, field, phi, psi)
            }
            None => Self::from_adjugate(vars, field, phi),
        }
    }

    pub fn size(&self) -> usize {
        self.phi.len()
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    /// `A = Q/(f)`.
    pub fn ring(&self) -> Result<RingPresentation> {
        RingPresentation::new("Q/(f)", self.vars.clone(), self.field, vec![self.f.clone()])
    }

    /// `coker φ` over `A`.
    pub fn module(&self, label: &str) -> Result<ModulePresentation> {
        ModulePresentation::from_matrix(label, self.ring()?, &self.phi)
    }

    /// `Syz¹_A(coker φ) = coker ψ`.
    pub fn syzygy_module(&self, label: &str) -> Result<ModulePresentation> {
        ModulePresentation::from_matrix(label, self.ring()?, &self.psi)
    }

    /// `(ψ, φ)`, the factorization of the first syzygy.
    pub fn syzygy(&self) -> Self {
        MatrixFactorization {
            phi: self.psi.clone(),
            psi: self.phi.clone(),
            ..self.clone()
        }
    }

    /// `(φᵀ, ψᵀ)`, presenting `M* = Hom_A(M, A)`.
    pub fn dual(&self) -> Self {
        MatrixFactorization {
            phi: transpose(&self.phi),
            psi: transpose(&self.psi),
            ..self.clone()
        }
    }

    /// `S^A(M) = Syz¹(M*)*`.
    pub fn s_factorization(&self) -> Self {
        self.dual().syzygy().dual()
    }

    pub fn s_module(&self, label: &str) -> Result<ModulePresentation> {
        self.s_factorization().module(label)
    }

    /// Removes constant unit entries of `φ` (zero summands of `coker φ`) and
    /// of `ψ` (free summands), keeping `φψ = f·I` throughout.
    pub fn split_units(&self) -> Result<SplitFactorization> {
        let nv = self.nvars();
        let fld = self.field;
        let mut a = self.phi.clone();
        let mut b = self.psi.clone();
        let mut trivial = 0;
        let mut free = 0;
        loop {
            let mut hit = None;
            for (side, mat) in [(0, &a), (1, &b)] {
                for (i, r) in mat.iter().enumerate() {
                    for (j, p) in r.iter().enumerate() {
                        if p.order() == Order::Finite(0) {
                            if p.degree() != 0 {
                                return Err(Error::Validation(format!(
                                    "entry ({},{}) of {} is a non-constant unit; supply a minimal factorization",
                                    i + 1,
                                    j + 1,
                                    if side == 0 { "phi" } else { "psi" }
                                )));
                            }
                            hit.get_or_insert((side, i, j));
                        }
                    }
                }
            }
            let Some((side, i, j)) = hit else { break };
            if side == 0 {
                eliminate_unit(&mut a, &mut b, i, j, nv, fld);
                trivial += 1;
            } else {
                eliminate_unit(&mut b, &mut a, i, j, nv, fld);
                free += 1;
            }
        }
        let core = if a.is_empty() {
            None
        } else {
            let mut mf = Self::validate(self.vars.clone(), fld, a, b)
                .map_err(|e| Error::Internal(format!("unit splitting broke the factorization: {e}")))?;
            if mf.f != self.f {
                return Err(Error::Internal("unit splitting changed f".into()));
            }
            mf.warnings.clear();
            Some(mf)
        };
        Ok(SplitFactorization {
            core,
            free_rank: free,
            trivial_rank: trivial,
        })
    }

    /// The factorization with zero summands of `coker φ` removed and each
    /// free summand written as the block `(f, 1)`; `φ` is then a minimal
    /// presentation matrix.
    pub fn minimal(&self) -> Result<(Self, SplitFactorization)> {
        let split = self.split_units()?;
        let nv = self.nvars();
        let z = Poly::zero(nv, self.field);
        let one = Poly::constant(nv, self.field, 1);
        let (mut phi, mut psi) = match &split.core {
            Some(c) => (c.phi.clone(), c.psi.clone()),
            None => (Vec::new(), Vec::new()),
        };
        let n = phi.len();
        let total = n + split.free_rank;
        for (a, b) in phi.iter_mut().zip(psi.iter_mut()) {
            a.resize(total, z.clone());
            b.resize(total, z.clone());
        }
        for k in 0..split.free_rank {
            let mut a = vec![z.clone(); total];
            let mut b = vec![z.clone(); total];
            a[n + k] = self.f.clone();
            b[n + k] = one.clone();
            phi.push(a);
            psi.push(b);
        }
        let mf = MatrixFactorization {
            phi,
            psi,
            warnings: Vec::new(),
            ..self.clone()
        };
        Ok((mf, split))
    }

    /// `i(M)`, `order(det φ)`, `μ(M)` and `e` after removing zero summands.
    pub fn invariants(&self) -> Result<MfInvariants> {
        let (min, split) = self.minimal()?;
        let mu = min.size();
        let phi = min.phi;
        let i_m = match entry_order(&phi) {
            Order::Finite(i) => i,
            Order::Infinite => self.e,
        };
        let d = det(&phi, self.nvars(), self.field);
        let det_order = d.order().finite().ok_or_else(|| {
            Error::Internal("determinant of a factorization vanished".into())
        })?;
        if (det_order as usize) < i_m as usize * mu {
            return Err(Error::Internal(format!(
                "det order {det_order} below i*mu = {}",
                i_m as usize * mu
            )));
        }
        Ok(MfInvariants {
            i_m,
            det_order,
            mu,
            e: self.e,
            free_rank: split.free_rank,
            trivial_rank: split.trivial_rank,
        })
    }

    /// `det φ_{i(M)} ≠ 0` for the degree-`i(M)` part of a minimal `φ`,
    /// cross-checked against `order(det φ) = i(M)·μ(M)`.
    pub fn leading_form_det_test(&self) -> Result<LeadingFormTest> {
        let (min, _) = self.minimal()?;
        if min.size() == 0 {
            return Ok(LeadingFormTest {
                i_m: self.e,
                leading_det_nonzero: true,
                det_order_is_minimal: true,
            });
        }
        let inv = min.invariants()?;
        let i = inv.i_m;
        let lead: PolyMatrix = min
            .phi
            .iter()
            .map(|r| r.iter().map(|p| p.homogeneous_part(i)).collect())
            .collect();
        let nonzero = !det(&lead, self.nvars(), self.field).is_zero();
        let minimal = inv.det_order as usize == i as usize * inv.mu;
        if nonzero != minimal {
            return Err(Error::Internal(
                "leading-form determinant disagrees with determinant order".into(),
            ));
        }
        Ok(LeadingFormTest {
            i_m: i,
            leading_det_nonzero: nonzero,
            det_order_is_minimal: minimal,
        })
    }

    pub fn is_free(&self) -> Result<bool> {
        Ok(self.invariants()?.i_m == self.e)
    }

    pub fn phi_strings(&self) -> Vec<Vec<String>> {
        self.phi
            .iter()
            .map(|r| r.iter().map(|p| p.to_string_with(&self.vars)).collect())
            .collect()
    }

    pub fn psi_strings(&self) -> Vec<Vec<String>> {
        self.psi
            .iter()
            .map(|r| r.iter().map(|p| p.to_string_with(&self.vars)).collect())
            .collect()
    }
}

/// With `a[i][j] = c` a nonzero constant, clears row `i` and column `j` of
/// `a` by elementary operations, applies the inverse operations to `b`, and
/// deletes the split-off `1x1` block from both.
fn eliminate_unit(a: &mut PolyMatrix, b: &mut PolyMatrix, i: usize, j: usize, nv: usize, fld: Field) {
    let n = a.len();
    let c = a[i][j].coeff(&Monomial::ONE);
    let cinv = fld.inv(c);
    for k in 0..n {
        if k == i || a[k][j].is_zero() {
            continue;
        }
        let t = a[k][j].scale(cinv);
        for l in 0..n {
            let s = t.mul(&a[i][l]);
            a[k][l] = a[k][l].sub(&s);
        }
        for r in 0..n {
            let s = b[r][k].mul(&t);
            b[r][i] = b[r][i].add(&s);
        }
    }
    for l in 0..n {
        if l == j || a[i][l].is_zero() {
            continue;
        }
        let t = a[i][l].scale(cinv);
        for k in 0..n {
            let s = a[k][j].mul(&t);
            a[k][l] = a[k][l].sub(&s);
        }
        for r in 0..n {
            let s = t.mul(&b[l][r]);
            b[j][r] = b[j][r].add(&s);
        }
    }
    a.remove(i);
    for r in a.iter_mut() {
        r.remove(j);
    }
    b.remove(j);
    for r in b.iter_mut() {
        r.remove(i);
    }
    let _ = nv;
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SplitFactorization {
    /// The part without unit entries; `None` when nothing is left.
    pub core: Option<MatrixFactorization>,
    pub free_rank: usize,
    pub trivial_rank: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct MfInvariants {
    pub i_m: u32,
    pub det_order: u32,
    pub mu: usize,
    pub e: u32,
    pub free_rank: usize,
    pub trivial_rank: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct LeadingFormTest {
    pub i_m: u32,
    pub leading_det_nonzero: bool,
    pub det_order_is_minimal: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TypeReport {
    pub cm_type: usize,
    pub forms: Vec<LinearForm>,
    pub reduced_length: usize,
    pub attempts: usize,
}

/// Cohen-Macaulay type of `coker φ`: socle dimension after reducing by
/// `d = ν - 1` generic forms, accepted only when the reduction has length
/// `e₀(M)`.
pub fn cm_type(
    mf: &MatrixFactorization,
    seed: u64,
    tries: usize,
    n_max: usize,
    slack: usize,
    cap: usize,
) -> Result<TypeReport> {
    let m = mf.module("M")?;
    cm_type_of_module(&m, seed, tries, n_max, slack, cap)
}

pub fn cm_type_of_module(
    m: &ModulePresentation,
    seed: u64,
    tries: usize,
    n_max: usize,
    slack: usize,
    cap: usize,
) -> Result<TypeReport> {
    let ser = series::module_series(m, n_max, slack, cap)?;
    let d = ser.dim();
    let e0 = ser.h.e_i(0);
    if e0 <= 0 {
        return Err(Error::Precondition(format!("'{}' has multiplicity {e0}", m.label)));
    }
    let e0 = e0 as usize;
    for attempt in 0..tries.max(1) {
        let forms: Vec<LinearForm> = (0..d)
            .map(|j| LinearForm::seeded(m.nvars(), m.field(), seed, (attempt * d + j) as u64))
            .collect();
        let q = quotient_by_forms(m, &forms)?;
        let h = hilbert_function(&q, e0 + 1, cap)?;
        let len: usize = h.iter().sum();
        if h[e0 + 1] == 0 && len == e0 {
            let t = annihilator_socle_dim(&q, e0 + 1, cap)?;
            return Ok(TypeReport {
                cm_type: t,
                forms,
                reduced_length: len,
                attempts: attempt + 1,
            });
        }
    }
    Err(Error::Inconclusive(format!(
        "no superficial sequence for '{}' found in {tries} attempts; try another seed",
        m.label
    )))
}

/// `M ≅ ⊕ Q/(y^{a_i})` over a one-variable ring, with the consequences
/// for `i(M)`, `h_M` and the syzygy.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DvrDecomposition {
    pub exponents: Vec<u32>,
    pub e: u32,
    pub h: Vec<i64>,
    pub syzygy_exponents: Vec<u32>,
    pub i_m: Option<u32>,
    pub i_equals_a1: Option<bool>,
    pub h_matches_series: bool,
    pub h_nonincreasing: bool,
    pub free_iff_i_is_e: bool,
}

type Series1 = Vec<u64>;

fn ser_ord(s: &Series1) -> usize {
    s.iter().position(|&c| c != 0).unwrap_or(s.len())
}

fn ser_mul(a: &[u64], b: &[u64], fld: Field) -> Series1 {
    let n = a.len();
    let mut out = vec![0; n];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate().take(n - i) {
            out[i + j] = fld.add(out[i + j], fld.mul(x, y));
        }
    }
    out
}

fn ser_inv(a: &[u64], fld: Field) -> Series1 {
    let n = a.len();
    let mut inv = vec![0; n];
    let c = fld.inv(a[0]);
    inv[0] = c;
    for k in 1..n {
        let mut s = 0;
        for j in 1..=k {
            s = fld.add(s, fld.mul(a[j], inv[k - j]));
        }
        inv[k] = fld.neg(fld.mul(s, c));
    }
    inv
}

fn ser_shift_down(a: &[u64], o: usize) -> Series1 {
    let mut out = vec![0; a.len()];
    out[..a.len() - o].copy_from_slice(&a[o..]);
    out
}

/// Diagonalizes the relation matrix over `k[y]/(y^e)` by order pivots.
pub fn dvr_exponents(m: &ModulePresentation) -> Result<(Vec<u32>, u32)> {
    if m.nvars() != 1 {
        return Err(Error::Precondition(format!(
            "'{}' lives over {} variables; the DVR normal form needs one",
            m.label,
            m.nvars()
        )));
    }
    let e = m
        .ring
        .ideal
        .iter()
        .filter_map(|g| g.order().finite())
        .min()
        .ok_or_else(|| Error::Precondition("ring is k[y] itself; need f = y^e".into()))?;
    let fld = m.field();
    let n = e as usize;
    let to_ser = |p: &Poly| -> Series1 {
        let mut s = vec![0; n];
        for &(mono, c) in p.terms() {
            let d = mono.degree() as usize;
            if d < n {
                s[d] = c;
            }
        }
        s
    };
    let rows = m.gens;
    let cols = m.relations.len();
    let mut a: Vec<Vec<Series1>> = (0..rows)
        .map(|i| (0..cols).map(|j| to_ser(&m.relations[j][i])).collect())
        .collect();
    let mut exps = Vec::new();
    let mut k = 0;
    while k < rows.min(cols) {
        let mut best = (n, 0, 0);
        for (i, row) in a.iter().enumerate().skip(k) {
            for (j, s) in row.iter().enumerate().skip(k) {
                let o = ser_ord(s);
                if o < best.0 {
                    best = (o, i, j);
                }
            }
        }
        let (o, pi, pj) = best;
        if o == n {
            break;
        }
        a.swap(k, pi);
        for r in a.iter_mut() {
            r.swap(k, pj);
        }
        let uinv = ser_inv(&ser_shift_down(&a[k][k], o), fld);
        for i in k + 1..rows {
            if ser_ord(&a[i][k]) == n {
                continue;
            }
            let t = ser_mul(&ser_shift_down(&a[i][k], o), &uinv, fld);
            for j in k..cols {
                let s = ser_mul(&t, &a[k][j], fld);
                for (x, y) in a[i][j].iter_mut().zip(s) {
                    *x = fld.sub(*x, y);
                }
            }
        }
        for j in k + 1..cols {
            if ser_ord(&a[k][j]) == n {
                continue;
            }
            let t = ser_mul(&ser_shift_down(&a[k][j], o), &uinv, fld);
            for i in k..rows {
                let s = ser_mul(&t, &a[i][k], fld);
                for (x, y) in a[i][j].iter_mut().zip(s) {
                    *x = fld.sub(*x, y);
                }
            }
        }
        exps.push(o as u32);
        k += 1;
    }
    exps.extend(std::iter::repeat_n(e, rows - k));
    exps.retain(|&a| a > 0);
    exps.sort_unstable();
    Ok((exps, e))
}

pub fn dvr_normal_form(m: &ModulePresentation, slack: usize, cap: usize) -> Result<DvrDecomposition> {
    let (exps, e) = dvr_exponents(m)?;
    let top = exps.iter().copied().max().unwrap_or(0) as usize;
    let mut h = vec![0i64; top];
    for &a in &exps {
        for c in h.iter_mut().take(a as usize) {
            *c += 1;
        }
    }
    let ser = series::module_series(m, e as usize + slack + 1, slack, cap)?;
    let i_m = if m.is_minimal() {
        Some(match entry_order(&transpose(&m.relations)) {
            Order::Finite(i) => i.min(e),
            Order::Infinite => e,
        })
    } else {
        None
    };
    let mut syz: Vec<u32> = exps.iter().map(|&a| e - a).filter(|&b| b > 0).collect();
    syz.sort_unstable();
    let a1 = exps.first().copied();
    let is_free = exps.iter().all(|&a| a == e);
    Ok(DvrDecomposition {
        i_equals_a1: i_m.map(|i| Some(i) == a1 || (a1.is_none() && i == e)),
        i_m,
        h_matches_series: ser.h.coeffs == h && ser.dim() == 0,
        h_nonincreasing: h.windows(2).all(|w| w[0] >= w[1]),
        free_iff_i_is_e: is_free == (a1.unwrap_or(e) == e),
        syzygy_exponents: syz,
        exponents: exps,
        e,
        h,
    })
}

/// Shape of generated factorizations.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CorpusParams {
    pub count: usize,
    pub nvars: Vec<usize>,
    pub sizes: Vec<usize>,
    pub min_order: u32,
    pub max_order: u32,
    pub terms_per_entry: usize,
}

impl Default for CorpusParams {
    fn default() -> Self {
        CorpusParams {
            count: 8,
            nvars: vec![2, 3],
            sizes: vec![2, 3],
            min_order: 1,
            max_order: 2,
            terms_per_entry: 2,
        }
    }
}

fn random_entry(nv: usize, field: Field, order: u32, terms: usize, rng: &mut impl Rng) -> Poly {
    let mut p = Poly::zero(nv, field);
    for t in 0..terms.max(1) {
        let d = if t == 0 { order } else { order + rng.gen_range(0..2) };
        let monos = Monomial::of_degree(nv, d);
        let m = *monos.choose(rng).expect("nonempty");
        let c = rng.gen_range(1..field.p());
        p = p.add(&Poly::monomial(nv, field, m, c));
    }
    if p.order() != Order::Finite(order) {
        let m = Monomial::of_degree(nv, order)[0];
        p = p.add(&Poly::monomial(nv, field, m, 1));
    }
    p
}

/// Seeded `(φ, adj φ)` pairs with entry orders in `[min_order, max_order]`.
pub fn generate_corpus(params: &CorpusParams, field: Field, seed: u64) -> Result<Vec<(String, MatrixFactorization)>> {
    if params.nvars.is_empty() || params.sizes.is_empty() || params.min_order == 0 || params.min_order > params.max_order {
        return Err(Error::Input("corpus parameters are empty or inconsistent".into()));
    }
    let mut out = Vec::with_capacity(params.count);
    for k in 0..params.count {
        let mut rng = rng_for(seed, 1_000_000 + k as u64);
        let nv = params.nvars[k % params.nvars.len()];
        let n = params.sizes[(k / params.nvars.len()) % params.sizes.len()];
        let vars: Vec<String> = ["x", "y", "z", "w", "u", "v", "s", "t"][..nv]
            .iter()
            .map(|s| s.to_string())
            .collect();
        let mf = loop {
            let phi: PolyMatrix = (0..n)
                .map(|_| {
                    (0..n)
                        .map(|_| {
                            let o = rng.gen_range(params.min_order..=params.max_order);
                            random_entry(nv, field, o, params.terms_per_entry, &mut rng)
                        })
                        .collect()
                })
                .collect();
            match MatrixFactorization::from_adjugate(vars.clone(), field, phi) {
                Ok(mf) => break mf,
                Err(Error::Validation(_)) => continue,
                Err(e) => return Err(e),
            }
        };
        out.push((format!("mf-{seed}-{k}"), mf));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentations::DEFAULT_MEMORY_CAP as CAP;

    fn fld() -> Field {
        Field::default()
    }

    fn depth_zero_mf() -> MatrixFactorization {
        MatrixFactorization::from_strs(
            &["x", "y"],
            fld(),
            &[&["x", "y"], &["-y^2", "0"]],
            Some(&[&["0", "-y"], &["y^2", "x"]]),
        )
        .unwrap()
    }

    #[test]
    fn example_factorization() {
        let mf = depth_zero_mf();
        assert_eq!(mf.f.to_string_with(&mf.vars), "y^3");
        assert_eq!(mf.e, 3);
        let inv = mf.invariants().unwrap();
        assert_eq!((inv.i_m, inv.det_order, inv.mu), (1, 3, 2));
        assert!(!mf.leading_form_det_test().unwrap().leading_det_nonzero);
        let adj = MatrixFactorization::from_adjugate(mf.vars.clone(), fld(), mf.phi.clone()).unwrap();
        assert_eq!(adj.psi, mf.psi);
    }

    #[test]
    fn rejects_bad_pairs() {
        let r = MatrixFactorization::from_strs(&["x", "y"], fld(), &[&["x", "y"], &["0", "x"]], Some(&[&["x", "0"], &["0", "x"]]));
        assert!(matches!(r, Err(Error::Validation(_))));
        let r = MatrixFactorization::from_strs(&["x"], fld(), &[&["x"]], Some(&[&["1"]]));
        assert!(matches!(r, Err(Error::Validation(_))));
    }

    #[test]
    fn generic_two_by_two_is_ulrich() {
        let mf = MatrixFactorization::from_strs(&["a", "b", "c", "d"], fld(), &[&["a", "b"], &["c", "d"]], None).unwrap();
        let inv = mf.invariants().unwrap();
        assert_eq!((inv.i_m, inv.det_order, inv.mu, inv.e), (1, 2, 2, 2));
        assert!(mf.leading_form_det_test().unwrap().leading_det_nonzero);
        let t = cm_type(&mf, 5, 3, 6, 3, CAP).unwrap();
        assert_eq!(t.cm_type, 2);
    }

    #[test]
    fn unit_splitting() {
        let mf = MatrixFactorization::from_strs(&["y"], fld(), &[&["y^2", "0"], &["0", "y^3"]], Some(&[&["y", "0"], &["0", "1"]]))
            .unwrap();
        assert!(!mf.warnings.is_empty());
        let s = mf.split_units().unwrap();
        assert_eq!(s.free_rank, 1);
        let core = s.core.unwrap();
        assert_eq!(core.phi[0][0].to_string_with(&mf.vars), "y^2");
        let inv = mf.invariants().unwrap();
        assert_eq!((inv.i_m, inv.mu, inv.free_rank), (2, 2, 1));
    }

    #[test]
    fn unit_splitting_mixed_entries() {
        let f = fld();
        let vars: Vec<String> = vec!["x".into(), "y".into()];
        let phi = vec![
            vec![Poly::constant(2, f, 1), Poly::var(2, f, 0)],
            vec![Poly::var(2, f, 1), Poly::var(2, f, 0).mul(&Poly::var(2, f, 1)).add(&Poly::var(2, f, 1).pow(2))],
        ];
        let mf = MatrixFactorization::from_adjugate(vars, f, phi).unwrap();
        let s = mf.split_units().unwrap();
        // coker φ ≅ Q/(y^2) = A: one zero summand and one free summand
        assert_eq!((s.trivial_rank, s.free_rank), (1, 1));
        assert!(s.core.is_none());
        let inv = mf.invariants().unwrap();
        assert_eq!((inv.i_m, inv.mu), (mf.e, 1));
        assert!(mf.is_free().unwrap());
    }

    #[test]
    fn dvr_decomposition() {
        let r = RingPresentation::from_strs("B", &["y"], &["y^3"], fld()).unwrap();
        let m = ModulePresentation::from_strs("M", r, &[&["y^2", "0"], &["0", "y^3"]]).unwrap();
        let d = dvr_normal_form(&m, 3, CAP).unwrap();
        assert_eq!(d.exponents, vec![2, 3]);
        assert_eq!(d.h, vec![2, 2, 1]);
        assert_eq!(d.syzygy_exponents, vec![1]);
        assert!(d.h_matches_series && d.h_nonincreasing && d.free_iff_i_is_e);
        assert_eq!(d.i_equals_a1, Some(true));
    }

    #[test]
    fn dvr_mixed_matrix() {
        let r = RingPresentation::from_strs("B", &["y"], &["y^5"], fld()).unwrap();
        let m = ModulePresentation::from_strs("M", r, &[&["y^2 + y^3", "y^4"], &["y^3", "y^2 - y^4"]]).unwrap();
        let d = dvr_normal_form(&m, 3, CAP).unwrap();
        assert!(d.h_matches_series);
        assert_eq!(d.exponents.iter().sum::<u32>() as i64, d.h.iter().sum::<i64>());
    }

    #[test]
    fn s_module_is_syzygy_presentation() {
        let mf = depth_zero_mf();
        let s = mf.s_factorization();
        assert_eq!(s.phi, mf.psi);
        assert_eq!(mf.dual().dual(), mf);
    }

    #[test]
    fn corpus_is_reproducible() {
        let p = CorpusParams::default();
        let a = generate_corpus(&p, fld(), 9).unwrap();
        let b = generate_corpus(&p, fld(), 9).unwrap();
        assert_eq!(a, b);
        for (_, mf) in &a {
            let inv = mf.invariants().unwrap();
            assert_eq!(
                inv.det_order + det(&mf.psi, mf.nvars(), fld()).order().finite().unwrap(),
                mf.size() as u32 * mf.e
            );
        }
    }
}
