//! Named, machine-checkable statements about computed invariants.
//!
//! Every verdict is windowed: a statement about all `n` is tested for
//! `n ≤ n_max` only, and the window is recorded in the witness.

use std::cell::RefCell;
use std::collections::HashMap;

use serde::Serialize;
use serde_json::{Map, Value};

use crate::config::RunConfig;
use crate::error::{Error, Result};
use crate::koszul;
use crate::matfac::{self, CorpusParams, MatrixFactorization};
use crate::poly::{Order, Poly};
use crate::presentations::{self, ModulePresentation, RingPresentation};
use crate::series::{self, binomial, ModuleSeries};
use crate::superficial::{self, quotient_by_form, quotient_by_forms, DepthReport, LinearForm};
use crate::tor;

/// Canonical module supplied with a ring; `tau` is the expected type.
#[derive(Debug, Clone)]
pub struct OmegaInput {
    pub omega: ModulePresentation,
    pub tau: usize,
}

/// Everything a check may consult: a ring and optionally a module with its
/// first syzygy, the factorization producing them, a canonical module, an
/// ideal for `I`-adic filtrations and a short exact sequence `0 → M → A → E → 0`.
#[derive(Debug, Clone)]
pub struct Instance {
    pub label: String,
    pub ring: RingPresentation,
    pub module: Option<ModulePresentation>,
    pub syzygy: Option<ModulePresentation>,
    pub mf: Option<MatrixFactorization>,
    pub omega: Option<OmegaInput>,
    pub ideal_i: Option<Vec<Poly>>,
    pub sequence: Option<(ModulePresentation, ModulePresentation)>,
}

impl Instance {
    pub fn ring(label: &str, ring: RingPresentation) -> Self {
        Instance {
            label: label.to_string(),
            ring,
            module: None,
            syzygy: None,
            mf: None,
            omega: None,
            ideal_i: None,
            sequence: None,
        }
    }

    pub fn module(label: &str, module: ModulePresentation, syzygy: Option<ModulePresentation>) -> Self {
        let mut inst = Instance::ring(label, module.ring.clone());
        inst.module = Some(module);
        inst.syzygy = syzygy;
        inst
    }

    /// Uses the minimal form of `mf`, so `φ` is a minimal presentation.
    pub fn from_mf(label: &str, mf: &MatrixFactorization) -> Result<Self> {
        let (min, _) = mf.minimal()?;
        if min.size() == 0 {
            return Err(Error::Input(format!("factorization '{label}' presents the zero module")));
        }
        let m = min.module("M")?;
        let k = min.syzygy_module("K")?;
        let mut inst = Instance::module(label, m, Some(k));
        inst.mf = Some(min);
        Ok(inst)
    }

    fn has(&self, need: Need) -> bool {
        match need {
            Need::Module => self.module.is_some(),
            Need::Syzygy => self.syzygy.is_some(),
            Need::Mf => self.mf.is_some(),
            Need::Omega => self.omega.is_some(),
            Need::IdealI => self.ideal_i.is_some(),
            Need::Sequence => self.sequence.is_some(),
        }
    }

    fn m(&self) -> &ModulePresentation {
        self.module.as_ref().expect("checked by needs")
    }

    fn k(&self) -> &ModulePresentation {
        self.syzygy.as_ref().expect("checked by needs")
    }

    fn mf(&self) -> &MatrixFactorization {
        self.mf.as_ref().expect("checked by needs")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Holds,
    Fails,
    Inconclusive,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TheoremCheck {
    pub check_id: String,
    pub instance: String,
    pub verdict: Verdict,
    pub witness: Value,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Need {
    Module,
    Syzygy,
    Mf,
    Omega,
    IdealI,
    Sequence,
}

type CheckFn = fn(&Ctx, &Instance, &mut Witness) -> Result<Verdict>;

pub struct CheckInfo {
    pub id: &'static str,
    pub statement: &'static str,
    needs: &'static [Need],
    run: CheckFn,
}

impl CheckInfo {
    pub fn applies_to(&self, inst: &Instance) -> bool {
        self.needs.iter().all(|&n| inst.has(n))
    }
}

/// Ordered key-value record of intermediate numbers.
#[derive(Debug, Default)]
pub struct Witness(Map<String, Value>);

impl Witness {
    fn put<T: Serialize>(&mut self, k: &str, v: T) {
        self.0
            .insert(k.to_string(), serde_json::to_value(v).expect("serializable witness"));
    }

    fn hypothesis(&mut self, name: &str, status: &str) {
        let entry = self
            .0
            .entry("hypotheses")
            .or_insert_with(|| Value::Object(Map::new()));
        if let Value::Object(m) = entry {
            m.insert(name.to_string(), Value::String(status.to_string()));
        }
    }
}

/// Caches for series, depth estimates and Cohen-Macaulay certificates
/// shared by the checks of one run.
pub struct Ctx<'c> {
    pub cfg: &'c RunConfig,
    series: RefCell<HashMap<String, ModuleSeries>>,
    depth: RefCell<HashMap<String, DepthReport>>,
    cm: RefCell<HashMap<String, CmCertificate>>,
}

/// Reduction of `M` by `dim M` generic forms.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CmCertificate {
    pub dim: usize,
    pub e0: i64,
    pub reduced_hilbert: Vec<usize>,
    pub reduced_length: usize,
    /// `λ(M/(y)M) = e₀(M)`.
    pub cm: bool,
    /// `m²(M/(y)M) = 0` for the same reduction.
    pub minimal_multiplicity: bool,
    pub attempts: usize,
}

fn key(m: &ModulePresentation) -> String {
    format!("{:?}|{}|{:?}", m.ring.ideal, m.gens, m.relations)
}

const CM_STREAM: u64 = 1 << 20;
const FORM_STREAM: u64 = 1 << 21;
/// Windows for the dense cross-checks, whose cost grows quickly with `n`.
const DENSE_WINDOW: usize = 12;
const IDEAL_WINDOW: usize = 8;

impl<'c> Ctx<'c> {
    pub fn new(cfg: &'c RunConfig) -> Self {
        Ctx {
            cfg,
            series: RefCell::new(HashMap::new()),
            depth: RefCell::new(HashMap::new()),
            cm: RefCell::new(HashMap::new()),
        }
    }

    fn cap(&self) -> usize {
        self.cfg.memory_cap
    }

    pub fn series(&self, m: &ModulePresentation) -> Result<ModuleSeries> {
        let k = key(m);
        if let Some(s) = self.series.borrow().get(&k) {
            return Ok(s.clone());
        }
        let s = series::module_series(m, self.cfg.n_max, self.cfg.slack, self.cap())?;
        self.series.borrow_mut().insert(k, s.clone());
        Ok(s)
    }

    pub fn depth(&self, m: &ModulePresentation) -> Result<DepthReport> {
        let k = key(m);
        if let Some(d) = self.depth.borrow().get(&k) {
            return Ok(d.clone());
        }
        let d = superficial::depth_g_estimate(m, self.cfg.tries, self.cfg.n_max, self.cfg.slack, self.cfg.seed, self.cap())?;
        self.depth.borrow_mut().insert(k, d.clone());
        Ok(d)
    }

    pub fn cm(&self, m: &ModulePresentation) -> Result<CmCertificate> {
        let k = key(m);
        if let Some(c) = self.cm.borrow().get(&k) {
            return Ok(c.clone());
        }
        let c = self.cm_uncached(m)?;
        self.cm.borrow_mut().insert(k, c.clone());
        Ok(c)
    }

    fn cm_uncached(&self, m: &ModulePresentation) -> Result<CmCertificate> {
        let s = self.series(m)?;
        let d = s.dim();
        let e0 = s.h.e_i(0);
        let mut best: Option<CmCertificate> = None;
        for t in 0..self.cfg.tries {
            let forms: Vec<LinearForm> = (0..d)
                .map(|j| LinearForm::seeded(m.nvars(), m.field(), self.cfg.seed, CM_STREAM + (t * d + j) as u64))
                .collect();
            let q = if d == 0 { m.clone() } else { quotient_by_forms(m, &forms)? };
            let h = presentations::hilbert_function(&q, self.cfg.n_max, self.cap())?;
            if h.last().copied().unwrap_or(0) != 0 {
                return Err(Error::Inconclusive(format!(
                    "reduction of '{}' is not of finite length within the window",
                    m.label
                )));
            }
            let len: usize = h.iter().sum();
            let cm = len as i64 == e0;
            let cert = CmCertificate {
                dim: d,
                e0,
                minimal_multiplicity: cm && self.squares_into_reduction(m, &forms)?,
                reduced_length: len,
                reduced_hilbert: trim_zeros(h),
                cm,
                attempts: t + 1,
            };
            if cm || d == 0 {
                return Ok(cert);
            }
            best.get_or_insert(cert);
        }
        Ok(best.expect("at least one try"))
    }

    /// `m²M = J·mM` for `J` generated by `forms`, compared through
    /// `λ(M/J·mM) = λ(M/m²M)`.
    fn squares_into_reduction(&self, m: &ModulePresentation, forms: &[LinearForm]) -> Result<bool> {
        let z = Poly::zero(m.nvars(), m.field());
        let mut rels = m.relations.clone();
        for y in forms {
            let yp = y.to_poly(m.field());
            for v in 0..m.nvars() {
                let yv = yp.mul(&m.ring.var(v));
                for g in 0..m.gens {
                    let mut col = vec![z.clone(); m.gens];
                    col[g] = yv.clone();
                    rels.push(col);
                }
            }
        }
        let q = ModulePresentation::new(&m.label, m.ring.clone(), m.gens, rels)?;
        let hq = presentations::hilbert_function(&q, self.cfg.n_max, self.cap())?;
        if hq.last().copied().unwrap_or(0) != 0 {
            return Ok(false);
        }
        let hm = presentations::hilbert_function(m, 1, self.cap())?;
        Ok(hq.iter().sum::<usize>() == hm.iter().sum::<usize>())
    }

    fn form(&self, nvars: usize, k: u64) -> LinearForm {
        LinearForm::seeded(nvars, self.cfg.field(), self.cfg.seed, FORM_STREAM + k)
    }

    fn ring_series(&self, inst: &Instance) -> Result<ModuleSeries> {
        self.series(&inst.ring.as_module())
    }
}

fn trim_zeros(mut v: Vec<usize>) -> Vec<usize> {
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

fn nondecreasing(v: &[usize]) -> bool {
    v.windows(2).all(|w| w[0] <= w[1])
}

/// `μ(1 + z + … + z^{k-1})`.
fn geometric(mu: usize, k: u32) -> Vec<i64> {
    vec![mu as i64; k as usize]
}

/// Index bound covering every nonzero `e_i` of the given h-polynomials.
fn i_bound(hs: &[&ModuleSeries]) -> usize {
    hs.iter().map(|s| s.h.coeffs.len()).max().unwrap_or(0).max(3)
}

fn e_vec(s: &ModuleSeries, i_max: usize) -> Vec<i64> {
    s.e(i_max)
}

fn chi_vec(s: &ModuleSeries, i_max: usize) -> Result<Vec<i64>> {
    s.chi(i_max)
}

fn series_json(s: &ModuleSeries) -> Value {
    serde_json::json!({
        "hilbert": s.hilbert.values,
        "h": s.h.coeffs,
        "dim": s.h.dim_r,
        "mu": s.mu,
    })
}

fn require_cm(ctx: &Ctx, w: &mut Witness, name: &str, m: &ModulePresentation, dim: Option<usize>) -> Result<bool> {
    let c = ctx.cm(m)?;
    let ok = c.cm && dim.is_none_or(|d| c.dim == d);
    w.put(&format!("cm_{name}"), &c);
    w.hypothesis(
        &match dim {
            Some(d) => format!("{name} is Cohen-Macaulay of dimension {d}"),
            None => format!("{name} is Cohen-Macaulay"),
        },
        if ok { "certified" } else { "not certified" },
    );
    Ok(ok)
}

fn require_g_cm(ctx: &Ctx, w: &mut Witness, name: &str, m: &ModulePresentation) -> Result<bool> {
    let d = ctx.depth(m)?;
    w.put(&format!("depth_G_{name}"), serde_json::json!({"depth": d.depth, "dim": d.dim}));
    w.hypothesis(
        &format!("G({name}) is Cohen-Macaulay"),
        if d.certified_maximal { "certified" } else { "refuted" },
    );
    Ok(d.certified_maximal)
}

fn hypothesis(w: &mut Witness, name: &str, ok: bool) -> bool {
    w.hypothesis(name, if ok { "certified" } else { "not satisfied" });
    ok
}

fn vacuous(w: &mut Witness) -> Result<Verdict> {
    w.put("vacuous", true);
    Ok(Verdict::Holds)
}

fn verdict(ok: bool) -> Verdict {
    if ok {
        Verdict::Holds
    } else {
        Verdict::Fails
    }
}

fn is_hypersurface(ring: &RingPresentation) -> bool {
    ring.ideal.len() == 1
}

// ---------------------------------------------------------------------------
// monotonicity statements

fn thm1_monotone(ctx: &Ctx, inst: &Instance, w: &mut Witness) -> Result<Verdict> {
    let a = ctx.ring_series(inst)?;
    let m = inst.m();
    let d = a.dim();
    let mut ok = hypothesis(w, "A is a hypersurface", is_hypersurface(&inst.ring));
    ok &= hypothesis(w, "dim A > 0", d > 0);
    ok &= require_cm(ctx, w, "M", m, Some(d))?;
    let s = ctx.series(m)?;
    w.put("M", series_json(&s));
    if !ok {
        return Ok(Verdict::Inconclusive);
    }
    Ok(verdict(nondecreasing(&s.hilbert.values)))
}

fn c2thmo(ctx: &Ctx, inst: &Instance, w: &mut Witness) -> Result<Verdict> {
    let a = ctx.ring_series(inst)?;
    let d = a.dim();
    let nv = inst.ring.nvars();
    let mut ok = hypothesis(w, "q has two generators", inst.ring.ideal.len() == 2);
    // two elements of a regular local ring form a regular sequence iff the height is two
    ok &= hypothesis(w, "height of q is 2", d + 2 == nv);
    ok &= hypothesis(w, "dim A > 0", d > 0);
    w.put("A", series_json(&a));
    if !ok {
        return Ok(Verdict::Inconclusive);
    }
    Ok(verdict(nondecreasing(&a.hilbert.values)))
}

fn minimal_generators(ctx: &Ctx, a: &RingPresentation, gens: &[Poly]) -> Result<usize> {
    let am = a.as_module();
    let mut mi = Vec::new();
    for g in gens {
        for v in 0..a.nvars() {
            mi.push(g.mul(&a.var(v)));
        }
    }
    let l_i = presentations::colength_ideal_power(&am, gens, 1, ctx.cap())?;
    let l_mi = presentations::colength_ideal_power(&am, &mi, 1, ctx.cap())?;
    Ok(l_mi - l_i)
}

fn mu_i(ctx: &Ctx, inst: &Instance, w: &mut Witness) -> Result<Verdict> {
    let a = ctx.ring_series(inst)?;
    let d = a.dim();
    let m = inst.m();
    let gens = inst.ideal_i.as_ref().expect("checked by needs");
    let mu = minimal_generators(ctx, &inst.ring, gens)?;
    w.put("mu_I", mu);
    let mut ok = hypothesis(w, "dim A > 0", d > 0);
    ok &= hypothesis(w, "mu(I) = d + 1", mu == d + 1);
    ok &= require_cm(ctx, w, "M", m, Some(d))?;
    if !ok {
        return Ok(Verdict::Inconclusive);
    }
    let window = ctx.cfg.n_max.min(IDEAL_WINDOW);
    let h = presentations::hilbert_function_ideal(m, gens, window, ctx.cap())?;
    w.put("ideal_window", window);
    w.put("hilbert_I", &h);
    Ok(verdict(nondecreasing(&h)))
}

// ---------------------------------------------------------------------------
// hypersurface statements

struct MfData {
    i: u32,
    e: u32,
    mu: usize,
    s: ModuleSeries,
}

fn mf_data(ctx: &Ctx, inst: &Instance, w: &mut Witness) -> Result<MfData> {
    let inv = inst.mf().invariants()?;
    let s = ctx.series(inst.m())?;
    w.put("i_M", inv.i_m);
    w.put("e", inv.e);
    w.put("mu", inv.mu);
    w.put("det_order", inv.det_order);
    w.put("M", series_json(&s));
    Ok(MfData {
        i: inv.i_m,
        e: inv.e,
        mu: inv.mu,
        s,
    })
}

fn mthy_1(ctx: &Ctx, inst: &Instance, w: &mut Witness) -> Result<Verdict> {
    let d = mf_data(ctx, inst, w)?;
    let e = d.s.e(1);
    let (lhs0, rhs0) = (e[0], (d.mu as i64) * d.i as i64);
    let (lhs1, rhs1) = (e[1], (d.mu as i64) * binomial(d.i as i64, 2));
    w.put("e0", lhs0);
    w.put("mu_i", rhs0);
    w.put("e1", lhs1);
    w.put("mu_binom_i_2", rhs1);
    if !hypothesis(w, "e >= 2", d.e >= 2) {
        return Ok(Verdict::Inconclusive);
    }
    Ok(verdict(lhs0 >= rhs0 && lhs1 >= rhs1))
}

fn is_free_by_hilbert(ctx: &Ctx, inst: &Instance, mu: usize) -> Result<bool> {
    let a = ctx.ring_series(inst)?;
    let m = ctx.series(inst.m())?;
    Ok(a
        .hilbert
        .values
        .iter()
        .zip(&m.hilbert.values)
        .all(|(&x, &y)| x * mu == y))
}

fn mthy_2(ctx: &Ctx, inst: &Instance, w: &mut Witness) -> Result<Verdict> {
    let d = mf_data(ctx, inst, w)?;
    let free = is_free_by_hilbert(ctx, inst, d.mu)?;
    w.put("free_by_hilbert", free);
    if !hypothesis(w, "e >= 2", d.e >= 2) {
        return Ok(Verdict::Inconclusive);
    }
    Ok(verdict(free == (d.i == d.e)))
}

fn mthy_3(ctx: &Ctx, inst: &Instance, w: &mut Witness) -> Result<Verdict> {
    let d = mf_data(ctx, inst, w)?;
    if !hypothesis(w, "e >= 2", d.e >= 2) {
        return Ok(Verdict::Inconclusive);
    }
    if d.i + 1 != d.e {
        return vacuous(w);
    }
    let g = ctx.depth(inst.m())?;
    w.put("depth_G_M", g.depth);
    Ok(verdict(g.certified_maximal))
}

fn mthy_4(ctx: &Ctx, inst: &Instance, w: &mut Witness) -> Result<Verdict> {
    let d = mf_data(ctx, inst, w)?;
    if !hypothesis(w, "e >= 2", d.e >= 2) {
        return Ok(Verdict::Inconclusive);
    }
    let e = d.s.e(1);
    let c1 = e[0] == (d.mu as i64) * d.i as i64;
    let c2 = e[1] == (d.mu as i64) * binomial(d.i as i64, 2);
    let g = ctx.depth(inst.m())?;
    let c3 = g.certified_maximal && d.s.h.coeffs == geometric(d.mu, d.i);
    w.put("conditions", [c1, c2, c3]);
    w.put("depth_G_M", g.depth);
    let mut ok = c1 == c2 && c2 == c3;
    let free = d.i == d.e;
    if ok && c1 && !free {
        let k = inst.k();
        let gk = ctx.depth(k)?;
        let sk = ctx.series(k)?;
        let tail = geometric(d.mu, d.e - d.i);
        w.put("K", series_json(&sk));
        w.put("G_K_cm", gk.certified_maximal);
        w.put("h_K_expected", &tail);
        ok &= gk.certified_maximal && sk.h.coeffs == tail;
    }
    Ok(verdict(ok))
}

fn eqchar(ctx: &Ctx, inst: &Instance, w: &mut Witness) -> Result<Verdict> {
    let d = mf_data(ctx, inst, w)?;
    let t = inst.mf().leading_form_det_test()?;
    w.put("leading_det_nonzero", t.leading_det_nonzero);
    let short = d.s.h.coeffs == geometric(d.mu, d.i);
    w.put("h_is_geometric", short);
    Ok(verdict(t.leading_det_nonzero == short))
}

fn dim1a(ctx: &Ctx, inst: &Instance, w: &mut Witness) -> Result<Verdict> {
    let d = mf_data(ctx, inst, w)?;
    let mut ok = hypothesis(w, "Q has dimension 2", inst.ring.nvars() == 2);
    ok &= hypothesis(w, "e >= 2", d.e >= 2);
    if !ok {
        return Ok(Verdict::Inconclusive);
    }
    let h = &d.s.h.coeffs;
    let head = geometric(d.mu, d.i);
    let prefix = h.len() >= head.len() && h[..head.len()] == head[..];
    Ok(verdict(prefix && d.s.h.is_nonnegative()))
}

fn example_f(ctx: &Ctx, inst: &Instance, w: &mut Witness) -> Result<Verdict> {
    let mf = inst.mf();
    if mf.size() != 2 {
        return vacuous(w);
    }
    let adj = matfac::adjugate(&mf.phi, mf.nvars(), mf.field);
    let fdet = matfac::det(&mf.phi, mf.nvars(), mf.field);
    let mut ok = hypothesis(w, "psi is the adjugate of phi", adj == mf.psi);
    ok &= hypothesis(w, "f = det phi", fdet == mf.f);
    ok &= hypothesis(w, "entries of phi lie in n", matfac::entry_order(&mf.phi) >= Order::Finite(1));
    w.put("ord_f", mf.e);
    if !ok {
        return Ok(Verdict::Inconclusive);
    }
    let sm = ctx.series(inst.m())?;
    let sk = ctx.series(inst.k())?;
    w.put("M", series_json(&sm));
    w.put("K", series_json(&sk));
    let ulrich = |s: &ModuleSeries| s.h.e_i(0) == s.mu as i64;
    match mf.e {
        2 => Ok(verdict(ulrich(&sm))),
        3 => {
            let chi_m = sm.chi(1)?[1];
            let chi_k = sk.chi(1)?[1];
            let l = tor::l_polynomial(inst.m(), inst.k(), ctx.cfg.n_max, ctx.cfg.slack, ctx.cap())?;
            let l0 = l.l_poly.first().copied().unwrap_or(0);
            w.put("chi1_M", chi_m);
            w.put("chi1_K", chi_k);
            w.put("l_M", &l.l_poly);
            Ok(verdict(
                (chi_m == 0 || chi_k == 0) && !ulrich(&sm) && !ulrich(&sk) && l0 == sk.mu as i64,
            ))
        }
        _ => vacuous(w),
    }
}

// ---------------------------------------------------------------------------
// superficial elements in dimension one

fn dim_one_setup(ctx: &Ctx, inst: &Instance, w: &mut Witness) -> Result<(bool, ModuleSeries)> {
    let a = ctx.ring_series(inst)?;
    let mut ok = hypothesis(w, "dim A = 1", a.dim() == 1);
    ok &= require_cm(ctx, w, "A", &inst.ring.as_module(), None)?;
    Ok((ok, a))
}

fn vanishes_from(m: &ModulePresentation, x: &LinearForm, from: usize, ctx: &Ctx, w: &mut Witness) -> Result<bool> {
    let q = quotient_by_form(m, x)?;
    let h = presentations::hilbert_function(&q, ctx.cfg.n_max, ctx.cap())?;
    w.put("hilbert_M_mod_x", &h);
    Ok(h.iter().skip(from).all(|&v| v == 0))
}

fn u1(ctx: &Ctx, inst: &Instance, w: &mut Witness) -> Result<Verdict> {
    let a = ctx.ring_series(inst)?;
    let d = mf_data(ctx, inst, w)?;
    let m = inst.m();
    let mut ok = hypothesis(w, "dim A > 0", a.dim() > 0);
    ok &= require_cm(ctx, w, "M", m, Some(1))?;
    let ga = ctx.depth(&inst.ring.as_module())?;
    ok &= hypothesis(w, "depth G(A) >= 1", ga.depth >= 1);
    if !ok {
        return Ok(Verdict::Inconclusive);
    }
    let x = ctx.form(m.nvars(), 0);
    let b = superficial::b_sequence(m, &x, ctx.cfg.n_max, ctx.cfg.slack, ctx.cap())?;
    w.put("b", &b.values);
    let l = d.i as usize;
    let part1 = b.values.iter().take(l).all(|&v| v == 0);
    let contained = vanishes_from(m, &x, l, ctx, w)?;
    w.put("m_l_M_in_xM", contained);
    let part2 = !contained || b.values.iter().all(|&v| v == 0);
    Ok(verdict(part1 && part2))
}

fn ur1(ctx: &Ctx, inst: &Instance, w: &mut Witness) -> Result<Verdict> {
    let (mut ok, a) = dim_one_setup(ctx, inst, w)?;
    let m = inst.module.clone().unwrap_or_else(|| inst.ring.as_module());
    ok &= require_cm(ctx, w, "M", &m, Some(1))?;
    if !ok {
        return Ok(Verdict::Inconclusive);
    }
    let e0 = a.h.e_i(0).max(0) as usize;
    w.put("e0_A", e0);
    let x = ctx.form(m.nvars(), 1);
    Ok(verdict(vanishes_from(&m, &x, e0, ctx, w)?))
}

fn u3(ctx: &Ctx, inst: &Instance, w: &mut Witness) -> Result<Verdict> {
    let (mut ok, a) = dim_one_setup(ctx, inst, w)?;
    let l = inst.m();
    ok &= require_cm(ctx, w, "L", l, Some(1))?;
    let mu = ctx.series(l)?.mu;
    ok &= hypothesis(w, "L is not free", !is_free_by_hilbert(ctx, inst, mu)?);
    if !ok {
        return Ok(Verdict::Inconclusive);
    }
    let e0 = a.h.e_i(0).max(1) as usize;
    w.put("e0_A", e0);
    let x = ctx.form(l.nvars(), 2);
    Ok(verdict(vanishes_from(inst.k(), &x, e0 - 1, ctx, w)?))
}

/// `e_i = Σ_{j ≥ i-1} C(j, i-1) ρ_j` and `H(M, n) = e - ρ_n` against the
/// h-polynomial.
fn rho_sums(ctx: &Ctx, inst: &Instance, w: &mut Witness) -> Result<Verdict> {
    let m = inst.module.clone().unwrap_or_else(|| inst.ring.as_module());
    let s = ctx.series(&m)?;
    let mut ok = hypothesis(w, "dim M = 1", s.dim() == 1);
    ok &= require_cm(ctx, w, "M", &m, None)?;
    if !ok {
        return Ok(Verdict::Inconclusive);
    }
    let x = ctx.form(m.nvars(), 3);
    let rho = superficial::rho_sequence(&m, &x, ctx.cfg.n_max, ctx.cfg.slack, ctx.cap())?;
    w.put("rho", &rho.values);
    if rho.values.iter().rev().take(ctx.cfg.slack).any(|&v| v != 0) {
        w.put("reason", "rho has not vanished by the end of the window");
        return Ok(Verdict::Inconclusive);
    }
    let i_max = s.h.coeffs.len() + 1;
    let e = s.e(i_max);
    let from_rho: Vec<i64> = (1..=i_max)
        .map(|i| {
            rho.values
                .iter()
                .enumerate()
                .filter(|&(j, _)| j + 1 >= i)
                .map(|(j, &r)| binomial(j as i64, i as i64 - 1) * r as i64)
                .sum()
        })
        .collect();
    w.put("e_from_h", &e[1..]);
    w.put("e_from_rho", &from_rho);
    let h_ok = s
        .hilbert
        .values
        .iter()
        .zip(&rho.values)
        .all(|(&h, &r)| h as i64 == e[0] - r as i64);
    Ok(verdict(from_rho[..] == e[1..] && h_ok))
}

fn xmap_b(ctx: &Ctx, inst: &Instance, w: &mut Witness) -> Result<Verdict> {
    let m = inst.module.clone().unwrap_or_else(|| inst.ring.as_module());
    let window = ctx.cfg.n_max.min(DENSE_WINDOW);
    let x = ctx.form(m.nvars(), 4);
    let k = tor::xmap_kernel_dims(&m, &x, window, ctx.cap())?;
    let b = superficial::b_sequence(&m, &x, window, ctx.cfg.slack, ctx.cap())?;
    w.put("dense_window", window);
    w.put("kernel_dims", &k.values);
    w.put("b", &b.values);
    Ok(verdict(k.values == b.values))
}

fn pr2_9(ctx: &Ctx, inst: &Instance, w: &mut Witness) -> Result<Verdict> {
    let m = inst.module.clone().unwrap_or_else(|| inst.ring.as_module());
    if !require_cm(ctx, w, "M", &m, None)? {
        return Ok(Verdict::Inconclusive);
    }
    let s = ctx.series(&m)?;
    let chi1 = s.chi(1)?[1];
    let mm = ctx.cm(&m)?.minimal_multiplicity;
    w.put("chi1", chi1);
    w.put("minimal_multiplicity", mm);
    Ok(verdict(mm == (chi1 == 0)))
}

// ---------------------------------------------------------------------------
// Tor and syzygy inequalities

fn beqn(ctx: &Ctx, inst: &Instance, w: &mut Witness) -> Result<Verdict> {
    let t = tor::l_polynomial(inst.m(), inst.k(), ctx.cfg.n_max, ctx.cfg.slack, ctx.cap())?;
    w.put("tor_lengths", &t.lengths.values);
    w.put("l_M", &t.l_poly);
    w.put("generators", t.generators);
    Ok(verdict(t.identity_holds))
}

fn compare_all(
    w: &mut Witness,
    name: &str,
    lhs: &[i64],
    rhs: &[i64],
    from: usize,
) -> bool {
    w.put(&format!("{name}_lhs"), lhs);
    w.put(&format!("{name}_rhs"), rhs);
    lhs.iter().zip(rhs).skip(from).all(|(a, b)| a >= b)
}

fn scale(v: &[i64], c: i64) -> Vec<i64> {
    v.iter().map(|x| x * c).collect()
}

fn plus(a: &[i64], b: &[i64]) -> Vec<i64> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

fn dim0form(ctx: &Ctx, inst: &Instance, w: &mut Witness) -> Result<Verdict> {
    let a = ctx.ring_series(inst)?;
    if !hypothesis(w, "dim A = 0", a.dim() == 0) {
        return Ok(Verdict::Inconclusive);
    }
    let sm = ctx.series(inst.m())?;
    let sk = ctx.series(inst.k())?;
    let n = i_bound(&[&a, &sm, &sk]);
    let mu = sm.mu as i64;
    let ea = scale(&e_vec(&a, n), mu);
    let ca = scale(&chi_vec(&a, n)?, mu);
    let (em, ek) = (e_vec(&sm, n), e_vec(&sk, n));
    let (cm, ck) = (chi_vec(&sm, n)?, chi_vec(&sk, n)?);
    let mut ok = compare_all(w, "e_with_syzygy", &ea, &plus(&em, &ek), 0);
    ok &= compare_all(w, "chi_with_syzygy", &ca, &plus(&cm, &ck), 0);
    ok &= compare_all(w, "e", &ea, &em, 0);
    ok &= compare_all(w, "chi", &ca, &cm, 0);
    Ok(verdict(ok))
}

fn geqgeq(ctx: &Ctx, inst: &Instance, w: &mut Witness) -> Result<Verdict> {
    let a = ctx.ring_series(inst)?;
    let m = inst.m();
    let mut ok = require_cm(ctx, w, "M", m, Some(a.dim()))?;
    ok &= require_g_cm(ctx, w, "A", &inst.ring.as_module())?;
    ok &= require_g_cm(ctx, w, "M", m)?;
    if !ok {
        return Ok(Verdict::Inconclusive);
    }
    let sm = ctx.series(m)?;
    let n = i_bound(&[&a, &sm]);
    let ea = scale(&e_vec(&a, n), sm.mu as i64);
    Ok(verdict(compare_all(w, "e", &ea, &e_vec(&sm, n), 0)))
}

fn dim1_3(ctx: &Ctx, inst: &Instance, w: &mut Witness) -> Result<Verdict> {
    let (mut ok, a) = dim_one_setup(ctx, inst, w)?;
    let (m, k) = (inst.m(), inst.k());
    ok &= require_cm(ctx, w, "M", m, Some(1))?;
    let sm = ctx.series(m)?;
    ok &= hypothesis(w, "M is not free", !is_free_by_hilbert(ctx, inst, sm.mu)?);
    ok &= require_g_cm(ctx, w, "E", k)?;
    if !ok {
        return Ok(Verdict::Inconclusive);
    }
    let sk = ctx.series(k)?;
    let n = i_bound(&[&a, &sm, &sk]);
    let g = m.gens as i64;
    let ef = scale(&e_vec(&a, n), g);
    let cf = scale(&chi_vec(&a, n)?, g);
    let mut good = compare_all(w, "e", &ef, &plus(&e_vec(&sm, n), &e_vec(&sk, n)), 0);
    good &= compare_all(w, "chi", &cf, &plus(&chi_vec(&sm, n)?, &chi_vec(&sk, n)?), 0);
    Ok(verdict(good))
}

// ---------------------------------------------------------------------------
// Gorenstein rings

fn the2_setup(ctx: &Ctx, inst: &Instance, w: &mut Witness) -> Result<Option<(ModuleSeries, ModuleSeries, ModuleSeries, usize)>> {
    let a = ctx.ring_series(inst)?;
    let d = a.dim();
    let am = inst.ring.as_module();
    let m = inst.m();
    let mut ok = require_cm(ctx, w, "A", &am, None)?;
    if ok {
        let ta = superficial_type(ctx, &am)?;
        w.put("type_A", ta);
        ok &= hypothesis(w, "A is Gorenstein", ta == 1);
    }
    ok &= require_cm(ctx, w, "M", m, Some(d))?;
    ok &= require_g_cm(ctx, w, "M", m)?;
    let ga = ctx.depth(&am)?;
    w.put("depth_G_A", ga.depth);
    let approx = ga.depth + 1 == d && !ga.certified_maximal;
    w.put("hypothesis_approximate", approx);
    ok &= hypothesis(w, "depth G(A) >= d - 1", ga.depth + 1 >= d);
    if !ok {
        return Ok(None);
    }
    let tau = superficial_type(ctx, m)?;
    let s = ctx.series(&inst.mf().s_module("S")?)?;
    let sm = ctx.series(m)?;
    w.put("type_M", tau);
    w.put("A", series_json(&a));
    w.put("S", series_json(&s));
    Ok(Some((a, sm, s, tau)))
}

fn superficial_type(ctx: &Ctx, m: &ModulePresentation) -> Result<usize> {
    Ok(matfac::cm_type_of_module(m, ctx.cfg.seed, ctx.cfg.tries, ctx.cfg.n_max, ctx.cfg.slack, ctx.cap())?.cm_type)
}

fn the2_1(ctx: &Ctx, inst: &Instance, w: &mut Witness) -> Result<Verdict> {
    let Some((a, m, s, tau)) = the2_setup(ctx, inst, w)? else {
        return Ok(Verdict::Inconclusive);
    };
    let t = tau as i64;
    let (ea, em, es) = (a.e(2)[2], m.e(2)[2], s.e(2)[2]);
    let (ca, cm, cs) = (a.chi(2)?[2], m.chi(2)?[2], s.chi(2)?[2]);
    let ok = compare_all(w, "e2", &[t * ea], &[em + es], 0) & compare_all(w, "chi2", &[t * ca], &[cm + cs], 0);
    Ok(verdict(ok))
}

fn the2_2(ctx: &Ctx, inst: &Instance, w: &mut Witness) -> Result<Verdict> {
    let Some((a, m, _, tau)) = the2_setup(ctx, inst, w)? else {
        return Ok(Verdict::Inconclusive);
    };
    let n = i_bound(&[&a, &m]);
    let t = tau as i64;
    let ok = compare_all(w, "e", &scale(&a.e(n), t), &m.e(n), 0)
        & compare_all(w, "chi", &scale(&a.chi(n)?, t), &m.chi(n)?, 0);
    Ok(verdict(ok))
}

/// Reproduces the failure of the `e₃` inequality when `depth G(A)` is too
/// small: `μ(E)e₃(A) < e₃(M) + e₃(E)` for `0 → M → A → E → 0`.
fn the2_counterexample(ctx: &Ctx, inst: &Instance, w: &mut Witness) -> Result<Verdict> {
    let (m, e) = inst.sequence.as_ref().expect("checked by needs");
    let a = ctx.ring_series(inst)?;
    let d = a.dim();
    let sm = ctx.series(m)?;
    let se = ctx.series(e)?;
    let mut ok = require_cm(ctx, w, "M", m, Some(d))?;
    ok &= require_cm(ctx, w, "E", e, Some(d))?;
    ok &= require_g_cm(ctx, w, "M", m)?;
    ok &= require_g_cm(ctx, w, "E", e)?;
    let ga = ctx.depth(&inst.ring.as_module())?;
    w.put("depth_G_A", ga.depth);
    ok &= hypothesis(w, "depth G(A) < d - 1", ga.depth + 1 < d);
    let (ea, em, ee) = (a.e(3)[3], sm.e(3)[3], se.e(3)[3]);
    let mu = se.mu as i64;
    w.put("A", series_json(&a));
    w.put("M", series_json(&sm));
    w.put("E", series_json(&se));
    w.put("e3", serde_json::json!({"A": ea, "M": em, "E": ee}));
    w.put("mu_E", mu);
    let broken = mu * ea < em + ee && mu * ea < em;
    w.put("inequality_fails", broken);
    Ok(verdict(ok && broken))
}

// ---------------------------------------------------------------------------
// canonical modules

struct OmegaData {
    tau: usize,
    a: ModuleSeries,
    o: ModuleSeries,
}

fn omega_setup(ctx: &Ctx, inst: &Instance, w: &mut Witness) -> Result<Option<OmegaData>> {
    let input = inst.omega.as_ref().expect("checked by needs");
    let a = ctx.ring_series(inst)?;
    let o = ctx.series(&input.omega)?;
    if a.h.e_i(0) != o.h.e_i(0) {
        return Err(Error::Validation(format!(
            "canonical module of '{}' rejected: e0 = {} but e0(A) = {}",
            inst.label,
            o.h.e_i(0),
            a.h.e_i(0)
        )));
    }
    if a.dim() == 0 {
        return Err(Error::Precondition("canonical-module bounds need dim A >= 1".into()));
    }
    let am = inst.ring.as_module();
    if !require_cm(ctx, w, "A", &am, None)? {
        return Ok(None);
    }
    let tau = superficial_type(ctx, &am)?;
    if tau != input.tau || o.mu != tau {
        return Err(Error::Validation(format!(
            "canonical module of '{}' rejected: type(A) = {tau}, supplied {}, mu(omega) = {}",
            inst.label, input.tau, o.mu
        )));
    }
    w.put("tau", tau);
    w.put("A", series_json(&a));
    w.put("omega", series_json(&o));
    Ok(Some(OmegaData { tau, a, o }))
}

fn omega_1(ctx: &Ctx, inst: &Instance, w: &mut Witness) -> Result<Verdict> {
    let Some(d) = omega_setup(ctx, inst, w)? else {
        return Ok(Verdict::Inconclusive);
    };
    let t = d.tau as i64;
    let (e1a, e1w) = (d.a.e(1)[1], d.o.e(1)[1]);
    w.put("e1_A", e1a);
    w.put("e1_omega", e1w);
    Ok(verdict(e1a <= t * e1w && e1w <= t * e1a))
}

fn omega_2(ctx: &Ctx, inst: &Instance, w: &mut Witness) -> Result<Verdict> {
    let Some(d) = omega_setup(ctx, inst, w)? else {
        return Ok(Verdict::Inconclusive);
    };
    let t = d.tau as i64;
    let (e1a, e1w) = (d.a.e(1)[1], d.o.e(1)[1]);
    let am = inst.ring.as_module();
    let mm = ctx.cm(&am)?.minimal_multiplicity;
    let chi1 = d.a.chi(1)?[1];
    let gor = d.tau == 1;
    w.put("e1_A", e1a);
    w.put("e1_omega", e1w);
    w.put("gorenstein", gor);
    w.put("minimal_multiplicity", mm);
    w.put("chi1_A", chi1);
    let a2 = (e1w == t * e1a) == gor;
    let b2 = (e1a == t * e1w) == (gor || mm);
    w.put("part_a", a2);
    w.put("part_b", b2);
    Ok(verdict(a2 && b2 && mm == (chi1 == 0)))
}

fn omega_3(ctx: &Ctx, inst: &Instance, w: &mut Witness) -> Result<Verdict> {
    let Some(d) = omega_setup(ctx, inst, w)? else {
        return Ok(Verdict::Inconclusive);
    };
    let mut ok = hypothesis(w, "dim A = 1", d.a.dim() == 1);
    ok &= require_g_cm(ctx, w, "A", &inst.ring.as_module())?;
    if !ok {
        return Ok(Verdict::Inconclusive);
    }
    let n = i_bound(&[&d.a, &d.o]);
    let t = d.tau as i64;
    let good = compare_all(w, "e", &scale(&d.o.e(n), t), &d.a.e(n), 1)
        & compare_all(w, "chi", &scale(&d.o.chi(n)?, t), &d.a.chi(n)?, 1);
    Ok(verdict(good))
}

// ---------------------------------------------------------------------------
// generic quotients

fn generic_quotient(ctx: &Ctx, a: &RingPresentation, r: usize, stream: u64) -> Result<ModulePresentation> {
    let forms: Vec<LinearForm> = (0..r).map(|j| ctx.form(a.nvars(), stream + j as u64)).collect();
    if r == 0 {
        return Ok(a.as_module());
    }
    quotient_by_forms(&a.as_module(), &forms)
}

fn exist_r(ctx: &Ctx, inst: &Instance, w: &mut Witness, part: u8) -> Result<Verdict> {
    let a = ctx.ring_series(inst)?;
    let d = a.dim();
    let m = inst.m();
    let mut ok = hypothesis(w, "dim A > 0", d > 0);
    ok &= require_cm(ctx, w, "A", &inst.ring.as_module(), None)?;
    ok &= require_cm(ctx, w, "M", m, Some(d))?;
    ok &= require_g_cm(ctx, w, "M", m)?;
    if part == 2 {
        ok &= hypothesis(
            w,
            "q is generated by a regular sequence",
            inst.ring.ideal.len() + d == inst.ring.nvars(),
        );
    }
    if !ok {
        return Ok(Verdict::Inconclusive);
    }
    let sm = ctx.series(m)?;
    let (aux, factor) = if part == 1 {
        (generic_quotient(ctx, &inst.ring, d, 100)?, sm.mu)
    } else {
        (generic_quotient(ctx, &inst.ring, d - 1, 200)?, superficial_type(ctx, m)?)
    };
    let sr = ctx.series(&aux)?;
    w.put("comparison_ring", series_json(&sr));
    w.put("factor", factor);
    let n = 3;
    let f = factor as i64;
    let good = compare_all(w, "e", &scale(&sr.e(n), f), &sm.e(n), 0)
        & compare_all(w, "chi", &scale(&sr.chi(n)?, f), &sm.chi(n)?, 0);
    Ok(verdict(good))
}

fn exist_r_1(ctx: &Ctx, inst: &Instance, w: &mut Witness) -> Result<Verdict> {
    exist_r(ctx, inst, w, 1)
}

fn exist_r_2(ctx: &Ctx, inst: &Instance, w: &mut Witness) -> Result<Verdict> {
    exist_r(ctx, inst, w, 2)
}

fn suffgen(ctx: &Ctx, inst: &Instance, w: &mut Witness) -> Result<Verdict> {
    let a = ctx.ring_series(inst)?;
    let d = a.dim();
    if d == 0 {
        return vacuous(w);
    }
    let mut all = true;
    let mut rows = Vec::new();
    for r in 1..=d {
        let rep = koszul::generic_invariance_sample(
            &inst.ring,
            r,
            5,
            ctx.cfg.seed,
            ctx.cfg.n_max,
            ctx.cfg.tries,
            ctx.cfg.slack,
            ctx.cap(),
        )?;
        all &= rep.verdict == koszul::InvarianceVerdict::Agree;
        rows.push(serde_json::json!({
            "r": r,
            "samples": 5,
            "reseeds": rep.reseeds,
            "hilbert": rep.hilbert,
            "verdict": rep.verdict,
        }));
    }
    w.put("per_r", rows);
    Ok(if all { Verdict::Holds } else { Verdict::Inconclusive })
}

fn marley_identity(ctx: &Ctx, inst: &Instance, w: &mut Witness) -> Result<Verdict> {
    let a = ctx.ring_series(inst)?;
    let d = a.dim();
    let window = ctx.cfg.n_max.min(DENSE_WINDOW);
    w.put("dense_window", window);
    let mut ok = true;
    let mut rows = Vec::new();
    for r in 1..=inst.ring.nvars().min(2) {
        let forms: Vec<LinearForm> = (0..r).map(|j| ctx.form(inst.ring.nvars(), 300 + j as u64)).collect();
        let rep = koszul::difference_identity_check(&inst.ring, &forms, window, ctx.cfg.slack, ctx.cap())?;
        let q = quotient_by_forms(&inst.ring.as_module(), &forms)?;
        let sq = ctx.series(&q)?;
        let bound = (a.h.postulation + r).max(sq.h.postulation);
        let vanish = if r <= d {
            Some(rep.w.values.iter().skip(bound).all(|&v| v == 0))
        } else {
            None
        };
        ok &= rep.holds && rep.w.complexes_ok && rep.w.euler_ok && vanish != Some(false);
        rows.push(serde_json::json!({
            "r": r,
            "identity": rep.holds,
            "w": rep.w.values,
            "homology": rep.w.homology,
            "vanishing_bound": bound,
            "w_vanishes_beyond_bound": vanish,
            "warnings": rep.w.warnings,
        }));
    }
    w.put("per_r", rows);
    Ok(verdict(ok))
}

fn dim0(ctx: &Ctx, inst: &Instance, w: &mut Witness) -> Result<Verdict> {
    let m = inst.m();
    if !hypothesis(w, "one variable", m.nvars() == 1) {
        return Ok(Verdict::Inconclusive);
    }
    let dec = matfac::dvr_normal_form(m, ctx.cfg.slack, ctx.cap())?;
    w.put("decomposition", &dec);
    let ok = dec.i_equals_a1 != Some(false) && dec.h_matches_series && dec.h_nonincreasing && dec.free_iff_i_is_e;
    Ok(verdict(ok))
}

// ---------------------------------------------------------------------------
// registry

macro_rules! check {
    ($id:expr, $st:expr, [$($n:ident),*], $f:expr) => {
        CheckInfo { id: $id, statement: $st, needs: &[$(Need::$n),*], run: $f }
    };
}

pub static REGISTRY: &[CheckInfo] = &[
    check!("Beqn", "(1-z) l_M(z) = h_K(z) - g h_A(z) + h_M(z) for a presentation with g generators", [Module, Syzygy], beqn),
    check!("Pr2.6b", "for CM M of dimension one, e_i(M) = sum_{j >= i-1} C(j, i-1) rho_j(M) for i >= 1", [], rho_sums),
    check!("Pr2.9", "a CM module has minimal multiplicity iff chi_1(M) = 0", [], pr2_9),
    check!("U1", "entries of a presentation in m^l force b_i(x, M) = 0 for i < l; if also m^l M lies in xM then depth G(M) >= 1", [Mf, Module], u1),
    check!("U3", "for a non-free MCM L over a one-dimensional ring, m^(e0(A)-1) Syz(L) lies in x Syz(L)", [Module, Syzygy], u3),
    check!("Ur1", "over a one-dimensional CM ring, m^e0(A) M lies in xM for MCM M", [], ur1),
    check!("c2thMo", "a codimension-two complete intersection of positive dimension has non-decreasing Hilbert function", [], c2thmo),
    check!("dim0", "over k[y]/(y^e), i(M) = a_1, h_M is non-increasing and M is free iff i(M) = e", [Module], dim0),
    check!("dim0form", "over an Artinian ring, mu(M) e_i(A) >= e_i(M) + e_i(Syz M) and the same for chi_i", [Module, Syzygy], dim0form),
    check!("dim1-3", "over a one-dimensional CM ring with G(E) CM, e_i(F) >= e_i(M) + e_i(E) and the same for chi_i", [Module, Syzygy], dim1_3),
    check!("dim1a", "for MCM M over a two-variable hypersurface, h_M starts with mu(M)(1 + ... + z^(i-1)) and is non-negative", [Mf, Module], dim1a),
    check!("eqchar", "det phi_i(M) != 0 iff h_M = mu(M)(1 + ... + z^(i-1))", [Mf, Module], eqchar),
    check!("exampleF", "for phi = [[a,b],[c,d]] with f = ad - bc: order 2 gives an Ulrich module; order 3 gives chi_1(M) = 0 or chi_1(K) = 0", [Mf, Module, Syzygy], example_f),
    check!("existR-1", "e_i(M) <= e_i(R) mu(M) and chi_i(M) <= chi_i(R) mu(M) with R = A/(d generic forms)", [Module], exist_r_1),
    check!("existR-2", "e_i(M) <= e_i(T) type(M) and chi_i(M) <= chi_i(T) type(M) with T = A/(d-1 generic forms)", [Module], exist_r_2),
    check!("geqgeq", "if G(A) and G(M) are CM then mu(M) e_i(A) >= e_i(M)", [Module], geqgeq),
    check!("marley-identity", "Delta^r lambda(A/m^(n+1)) = lambda(A/(y, m^(n+1))) + w(y, n), with w eventually zero", [], marley_identity),
    check!("mtHy-1", "e(M) >= mu(M) i(M) and e_1(M) >= mu(M) C(i(M), 2)", [Mf, Module], mthy_1),
    check!("mtHy-2", "M is free iff i(M) = e", [Mf, Module], mthy_2),
    check!("mtHy-3", "i(M) = e - 1 implies G(M) is CM", [Mf, Module], mthy_3),
    check!("mtHy-4", "e(M) = mu(M) i(M) iff e_1(M) = mu(M) C(i(M), 2) iff G(M) is CM with h_M = mu(M)(1 + ... + z^(i-1)); then G(K) is CM and h_K = mu(M)(1 + ... + z^(e-i-1))", [Mf, Module, Syzygy], mthy_4),
    check!("muI", "for MCM M and m-primary I with mu(I) = d + 1, the I-adic Hilbert function of M is non-decreasing", [Module, IdealI], mu_i),
    check!("omega-1", "e_1(A)/type(A) <= e_1(omega) <= type(A) e_1(A)", [Omega], omega_1),
    check!("omega-2", "e_1(omega) = type(A) e_1(A) iff A is Gorenstein; e_1(A) = type(A) e_1(omega) iff A is Gorenstein or has minimal multiplicity", [Omega], omega_2),
    check!("omega-3", "in dimension one with G(A) CM, e_i(A) <= type(A) e_i(omega) and chi_i(A) <= type(A) chi_i(omega) for i >= 1", [Omega], omega_3),
    check!("suffgen", "H(A/(y), n) is the same for all sufficiently general r-tuples y of linear forms", [], suffgen),
    check!("the2-1", "over a Gorenstein ring with depth G(A) >= d-1 and G(M) CM, type(M) e_2(A) >= e_2(M) + e_2(S(M)) and the same for chi_2", [Mf, Module], the2_1),
    check!("the2-2", "over a Gorenstein ring with depth G(A) >= d-1 and G(M) CM, type(M) e_i(A) >= e_i(M) and the same for chi_i", [Mf, Module], the2_2),
    check!("the2-counterexample", "without the depth G(A) hypothesis, mu(E) e_3(A) < e_3(M) + e_3(E) can happen", [Sequence], the2_counterexample),
    check!("thm1-monotone", "the Hilbert function of an MCM module over a hypersurface of positive dimension is non-decreasing", [Module], thm1_monotone),
    check!("xmap-b", "dim ker(M/m^n M -x-> M/m^(n+1) M) = b_n(x, M)", [], xmap_b),
];

pub fn lookup(id: &str) -> Result<&'static CheckInfo> {
    REGISTRY
        .iter()
        .find(|c| c.id == id)
        .ok_or_else(|| Error::Input(format!("unknown check id '{id}'")))
}

/// Runs one check. Input errors propagate; numerical trouble becomes an
/// inconclusive verdict and internal inconsistencies become failures.
pub fn run_check(id: &str, inst: &Instance, ctx: &Ctx) -> Result<TheoremCheck> {
    let info = lookup(id)?;
    if !info.applies_to(inst) {
        let missing: Vec<String> = info
            .needs
            .iter()
            .filter(|&&n| !inst.has(n))
            .map(|n| format!("{n:?}").to_lowercase())
            .collect();
        return Err(Error::Input(format!(
            "check '{id}' on '{}' is missing inputs: {}",
            inst.label,
            missing.join(", ")
        )));
    }
    let mut w = Witness::default();
    w.put("statement", info.statement);
    w.put("n_max", ctx.cfg.n_max);
    let v = match (info.run)(ctx, inst, &mut w) {
        Ok(v) => v,
        Err(e) if e.is_input_error() => return Err(e),
        Err(Error::Internal(msg)) => {
            w.put("error", format!("internal: {msg}"));
            Verdict::Fails
        }
        Err(e) => {
            w.put("error", e.to_string());
            Verdict::Inconclusive
        }
    };
    Ok(TheoremCheck {
        check_id: id.to_string(),
        instance: inst.label.clone(),
        verdict: v,
        witness: Value::Object(w.0),
    })
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub holds: usize,
    pub fails: usize,
    pub inconclusive: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerifyReport {
    pub config: RunConfig,
    pub window: String,
    pub summary: Summary,
    pub checks: Vec<TheoremCheck>,
}

impl VerifyReport {
    pub fn any_fails(&self) -> bool {
        self.summary.fails > 0
    }
}

/// Runs `ids` (every applicable check when `None`) on every instance, in
/// order of check id and then instance label.
pub fn run_checks(ids: Option<&[String]>, instances: &[Instance], cfg: &RunConfig) -> Result<VerifyReport> {
    let selected: Vec<&CheckInfo> = match ids {
        Some(ids) => ids.iter().map(|i| lookup(i)).collect::<Result<_>>()?,
        None => REGISTRY.iter().collect(),
    };
    let ctx = Ctx::new(cfg);
    let mut rows = Vec::new();
    for info in &selected {
        let mut any = false;
        for inst in instances {
            if info.applies_to(inst) {
                any = true;
                rows.push(run_check(info.id, inst, &ctx)?);
            }
        }
        if !any && ids.is_some() && !instances.is_empty() {
            let inst = &instances[0];
            run_check(info.id, inst, &ctx)?;
        }
    }
    rows.sort_by(|a, b| (&a.check_id, &a.instance).cmp(&(&b.check_id, &b.instance)));
    let mut summary = Summary::default();
    for r in &rows {
        match r.verdict {
            Verdict::Holds => summary.holds += 1,
            Verdict::Fails => summary.fails += 1,
            Verdict::Inconclusive => summary.inconclusive += 1,
        }
    }
    Ok(VerifyReport {
        window: format!("all statements tested for n <= {} only", cfg.n_max),
        config: cfg.clone(),
        summary,
        checks: rows,
    })
}

/// Generates the seeded corpus and runs `ids` on every member.
pub fn corpus_run(cfg: &RunConfig, params: &CorpusParams, ids: Option<&[String]>) -> Result<VerifyReport> {
    let corpus = matfac::generate_corpus(params, cfg.field(), cfg.seed)?;
    let instances = corpus
        .iter()
        .map(|(label, mf)| Instance::from_mf(label, mf))
        .collect::<Result<Vec<_>>>()?;
    run_checks(ids, &instances, cfg)
}

/// Every part of the canonical-module theorem on one input.
pub fn omega_bounds_check(inst: &Instance, cfg: &RunConfig) -> Result<Vec<TheoremCheck>> {
    let ctx = Ctx::new(cfg);
    ["omega-1", "omega-2", "omega-3"]
        .iter()
        .map(|id| run_check(id, inst, &ctx))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Field;

    fn cfg() -> RunConfig {
        RunConfig {
            n_max: 14,
            ..RunConfig::default()
        }
    }

    fn hyper_y3() -> Instance {
        let mf = MatrixFactorization::from_strs(&["x", "y"], Field::default(), &[&["x", "y"], &["-y^2", "0"]], None).unwrap();
        Instance::from_mf("hyper-y3", &mf).unwrap()
    }

    #[test]
    fn registry_ids_are_unique_and_sorted() {
        let ids: Vec<&str> = REGISTRY.iter().map(|c| c.id).collect();
        let mut s = ids.clone();
        s.sort_unstable();
        s.dedup();
        assert_eq!(ids, s);
    }

    #[test]
    fn depth_zero_module_is_still_monotone() {
        let c = cfg();
        let ctx = Ctx::new(&c);
        let r = run_check("thm1-monotone", &hyper_y3(), &ctx).unwrap();
        assert_eq!(r.verdict, Verdict::Holds, "{}", r.witness);
        let d = ctx.depth(hyper_y3().m()).unwrap();
        assert_eq!(d.depth, 0);
    }

    #[test]
    fn all_checks_on_depth_zero_example() {
        let rep = run_checks(None, &[hyper_y3()], &cfg()).unwrap();
        for r in &rep.checks {
            assert_ne!(r.verdict, Verdict::Fails, "{} failed: {}", r.check_id, r.witness);
        }
        assert!(rep.summary.holds >= 10, "{:?}", rep.summary);
    }

    #[test]
    fn unknown_and_missing() {
        let c = cfg();
        let ctx = Ctx::new(&c);
        assert!(run_check("nope", &hyper_y3(), &ctx).unwrap_err().is_input_error());
        assert!(run_check("omega-1", &hyper_y3(), &ctx).unwrap_err().is_input_error());
    }

    #[test]
    fn empty_corpus() {
        let p = CorpusParams {
            count: 0,
            ..CorpusParams::default()
        };
        let rep = corpus_run(&cfg(), &p, None).unwrap();
        assert!(rep.checks.is_empty());
    }
}
