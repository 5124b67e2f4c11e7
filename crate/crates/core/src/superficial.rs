//! Generic linear forms, `b_n(x, M)`, `ρ_n(M)`, reduction modulo a linear
//! form, and the depth of the associated graded module.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::poly::Poly;
use crate::presentations::{
    module_span, ModulePresentation, ModuleTruncation, RingPresentation, SpanGenerator,
    TruncatedSpan,
};
use crate::series::{self, LengthSeries};

/// Seeded generator for an independent stream derived from a root seed.
pub fn rng_for(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut r = ChaCha8Rng::seed_from_u64(seed);
    r.set_stream(stream);
    r
}

/// `y = Σ α_i x_i`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LinearForm {
    pub coeffs: Vec<u64>,
    /// Seed and stream the coefficients were drawn from, if random.
    pub provenance: Option<(u64, u64)>,
}

impl LinearForm {
    pub fn new(coeffs: Vec<u64>) -> Result<Self> {
        if coeffs.iter().all(|&c| c == 0) {
            return Err(Error::Input("linear form must be nonzero".into()));
        }
        Ok(LinearForm {
            coeffs,
            provenance: None,
        })
    }

    /// The coordinate function `x_i`.
    pub fn variable(nvars: usize, i: usize) -> Self {
        let mut c = vec![0; nvars];
        c[i] = 1;
        LinearForm {
            coeffs: c,
            provenance: None,
        }
    }

    /// Uniform nonzero coefficients.
    pub fn random(nvars: usize, field: Field, rng: &mut ChaCha8Rng) -> Self {
        let coeffs = (0..nvars).map(|_| rng.gen_range(1..field.p())).collect();
        LinearForm {
            coeffs,
            provenance: None,
        }
    }

    pub fn seeded(nvars: usize, field: Field, seed: u64, stream: u64) -> Self {
        let mut rng = rng_for(seed, stream);
        let mut f = Self::random(nvars, field, &mut rng);
        f.provenance = Some((seed, stream));
        f
    }

    pub fn to_poly(&self, field: Field) -> Poly {
        let n = self.coeffs.len();
        let mut p = Poly::zero(n, field);
        for (i, &c) in self.coeffs.iter().enumerate() {
            if c != 0 {
                p = p.add(&Poly::var(n, field, i).scale(c));
            }
        }
        p
    }

    fn pivot(&self) -> usize {
        self.coeffs
            .iter()
            .rposition(|&c| c != 0)
            .expect("nonzero form")
    }
}

/// Substitution eliminating the pivot variable of `x`: images of the old
/// variables in the ring with that variable removed.
fn elimination_images(x: &LinearForm, field: Field) -> (usize, Vec<Poly>) {
    let k = x.pivot();
    let n = x.coeffs.len();
    let m = n - 1;
    let inv = field.inv(x.coeffs[k]);
    let newvar = |i: usize| if i < k { i } else { i - 1 };
    let images = (0..n)
        .map(|i| {
            if i != k {
                Poly::var(m, field, newvar(i))
            } else {
                let mut p = Poly::zero(m, field);
                for (j, &a) in x.coeffs.iter().enumerate() {
                    if j != k && a != 0 {
                        let c = field.neg(field.mul(a, inv));
                        p = p.add(&Poly::var(m, field, newvar(j)).scale(c));
                    }
                }
                p
            }
        })
        .collect();
    (k, images)
}

/// `A/(x)` with one variable fewer.
pub fn quotient_ring_by_form(a: &RingPresentation, x: &LinearForm) -> Result<RingPresentation> {
    if x.coeffs.len() != a.nvars() {
        return Err(Error::Dimension("linear form length differs from ring".into()));
    }
    let (k, images) = elimination_images(x, a.field);
    let ideal = a.ideal.iter().map(|g| g.compose(&images)).collect();
    let mut vars = a.vars.clone();
    vars.remove(k);
    RingPresentation::new(&format!("{}/(y)", a.label), vars, a.field, ideal)
}

/// `M/xM` as a module over `A/(x)`, obtained by sending `x` to a coordinate
/// and setting it to zero.
pub fn quotient_by_form(m: &ModulePresentation, x: &LinearForm) -> Result<ModulePresentation> {
    if x.coeffs.len() != m.nvars() {
        return Err(Error::Dimension("linear form length differs from ring".into()));
    }
    let (_, images) = elimination_images(x, m.field());
    let ring = quotient_ring_by_form(&m.ring, x)?;
    let relations = m
        .relations
        .iter()
        .map(|c| c.iter().map(|p| p.compose(&images)).collect())
        .collect();
    ModulePresentation::new(&format!("{}/(y)", m.label), ring, m.gens, relations)
}

/// Expresses the form `y` in the coordinates left after eliminating by `x`.
pub fn transform_form(x: &LinearForm, y: &LinearForm, field: Field) -> Result<LinearForm> {
    let (_, images) = elimination_images(x, field);
    let p = y.to_poly(field).compose(&images);
    let n = x.coeffs.len() - 1;
    let coeffs: Vec<u64> = (0..n)
        .map(|i| p.coeff(&crate::poly::Monomial::var(i)))
        .collect();
    if coeffs.iter().all(|&c| c == 0) {
        return Err(Error::Precondition(
            "linear forms are dependent; the sequence collapses".into(),
        ));
    }
    Ok(LinearForm {
        coeffs,
        provenance: y.provenance,
    })
}

/// `M/(y_1..y_r)M` by successive eliminations.
pub fn quotient_by_forms(m: &ModulePresentation, forms: &[LinearForm]) -> Result<ModulePresentation> {
    let mut cur = m.clone();
    let mut rest: Vec<LinearForm> = forms.to_vec();
    while !rest.is_empty() {
        let x = rest.remove(0);
        let next = quotient_by_form(&cur, &x)?;
        rest = rest
            .iter()
            .map(|y| transform_form(&x, y, m.field()))
            .collect::<Result<_>>()?;
        cur = next;
    }
    Ok(cur)
}

fn form_span(m: &ModulePresentation, x: &LinearForm, bound: u32, cap: usize) -> Result<TruncatedSpan> {
    let trunc = ModuleTruncation::new(m.nvars(), m.gens, bound, m.field(), cap)?;
    let xp = x.to_poly(m.field());
    let z = Poly::zero(m.nvars(), m.field());
    let mut gens: Vec<SpanGenerator> = m
        .submodule_generators()
        .into_iter()
        .map(SpanGenerator::all)
        .collect();
    for j in 0..m.gens {
        let mut v = vec![z.clone(); m.gens];
        v[j] = xp.clone();
        gens.push(SpanGenerator::all(v));
    }
    Ok(TruncatedSpan::build(trunc, &gens))
}

/// `b_n` for `n ≤ n_max`, computing the colon `(m^{n+1}F + U) :_F x` inside `F/m^T F`.
fn b_values_at(m: &ModulePresentation, x: &LinearForm, n_max: usize, bound: u32, cap: usize) -> Result<Vec<usize>> {
    assert!(bound as usize > n_max);
    let w = module_span(m, bound, cap)?;
    let s = form_span(m, x, bound, cap)?;
    Ok((0..=n_max)
        .map(|n| {
            let n32 = n as u32;
            // kernel of multiplication by x from F/m^n F into F/(U + m^{n+1} F)
            let colon = w.trunc.cols_below(n32) + w.pivots_below(n32 + 1) - s.pivots_below(n32 + 1);
            colon - w.pivots_below(n32)
        })
        .collect())
}

/// `b_n(x, M) = λ((m^{n+1}M :_M x)/m^n M)` for `n = 0..=n_max`, computed at
/// truncation slack `Δ` and re-verified at `Δ + 1`.
pub fn b_sequence(
    m: &ModulePresentation,
    x: &LinearForm,
    n_max: usize,
    slack: usize,
    cap: usize,
) -> Result<LengthSeries> {
    let t = (n_max + 1 + slack) as u32;
    let a = b_values_at(m, x, n_max, t, cap)?;
    let b = b_values_at(m, x, n_max, t + 1, cap)?;
    let stable = a == b;
    Ok(LengthSeries::new(a, stable, slack))
}

/// `ρ_n(M) = λ(m^{n+1}M / x m^n M)` for `n = 0..=n_max`; requires `dim M = 1`.
pub fn rho_sequence(
    m: &ModulePresentation,
    x: &LinearForm,
    n_max: usize,
    slack: usize,
    cap: usize,
) -> Result<LengthSeries> {
    let ser = series::module_series(m, n_max.max(2 * slack + 2), slack, cap)?;
    if ser.dim() != 1 {
        return Err(Error::Precondition(format!(
            "rho sequence needs dim M = 1, '{}' has dimension {}",
            m.label,
            ser.dim()
        )));
    }
    let samuel = crate::presentations::hilbert_samuel(m, n_max + 1, cap)?;
    let xp = x.to_poly(m.field());
    let z = Poly::zero(m.nvars(), m.field());
    let base: Vec<SpanGenerator> = m
        .submodule_generators()
        .into_iter()
        .map(SpanGenerator::all)
        .collect();
    let mut out = Vec::with_capacity(n_max + 1);
    let mut bound = 2u32;
    for n in 0..=n_max {
        let mut gens = base.clone();
        for j in 0..m.gens {
            let mut v = vec![z.clone(); m.gens];
            v[j] = xp.clone();
            gens.push(SpanGenerator {
                vector: v,
                min_mult_degree: n as u32,
            });
        }
        bound = bound.max(n as u32 + 2);
        let colength = loop {
            let trunc = ModuleTruncation::new(m.nvars(), m.gens, bound, m.field(), cap)?;
            let span = TruncatedSpan::build(trunc, &gens);
            if span.top_degree_full() {
                break span.colength_below(bound);
            }
            bound += 1;
        };
        out.push(colength - samuel[n]);
    }
    Ok(LengthSeries::new(out, true, slack))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SuperficialVerdict {
    Superficial,
    NotSuperficial,
    Inconclusive,
}

/// b-sequence evidence for one form, windowed by `n_max`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SuperficialReport {
    pub form: LinearForm,
    pub b_values: LengthSeries,
    pub rho_values: Option<LengthSeries>,
    pub verdict: SuperficialVerdict,
    /// Least `c` with `b_n = 0` for all observed `n ≥ c`.
    pub c_observed: Option<usize>,
    pub n_max: usize,
}

/// Superficiality evidence: the b-sequence must vanish on a tail of at
/// least `slack` entries and `M/xM` must drop dimension by one.
pub fn superficial_report(
    m: &ModulePresentation,
    x: &LinearForm,
    n_max: usize,
    slack: usize,
    cap: usize,
) -> Result<SuperficialReport> {
    let b = b_sequence(m, x, n_max, slack, cap)?;
    let dim_m = series::module_series(m, n_max, slack, cap)?.dim();
    let c_observed = {
        let last_nonzero = b.values.iter().rposition(|&v| v != 0);
        match last_nonzero {
            None => Some(0),
            Some(i) if i < n_max => Some(i + 1),
            _ => None,
        }
    };
    let verdict = if !b.stabilized {
        SuperficialVerdict::Inconclusive
    } else if dim_m == 0 {
        SuperficialVerdict::Superficial
    } else {
        let q = quotient_by_form(m, x)?;
        let dim_q = series::module_series(&q, n_max, slack, cap)?.dim();
        if dim_q + 1 != dim_m {
            SuperficialVerdict::NotSuperficial
        } else if c_observed.map(|c| c + slack <= n_max + 1).unwrap_or(false) {
            SuperficialVerdict::Superficial
        } else {
            SuperficialVerdict::Inconclusive
        }
    };
    let rho_values = if dim_m == 1 && verdict == SuperficialVerdict::Superficial {
        Some(rho_sequence(m, x, n_max, slack, cap)?)
    } else {
        None
    };
    Ok(SuperficialReport {
        form: x.clone(),
        b_values: b,
        rho_values,
        verdict,
        c_observed,
        n_max,
    })
}

/// One descent step of the depth estimate.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DepthStage {
    pub module: String,
    pub form: LinearForm,
    pub b_values: Vec<usize>,
    pub regular: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DepthReport {
    /// Number of successive forms whose initial forms were found regular.
    pub depth: usize,
    pub dim: usize,
    /// `depth == dim`: `G(M)` is Cohen-Macaulay on the window.
    pub certified_maximal: bool,
    /// The descent stopped because every tried generic form had a nonzero `b_n`.
    pub stopped_by_nonzero_b: bool,
    pub stages: Vec<DepthStage>,
    pub n_max: usize,
}

impl DepthReport {
    pub fn is_cm(&self) -> bool {
        self.certified_maximal
    }
}

/// Greedy Sally descent with random forms; `b_n = 0` for every `n ≤ n_max`
/// is taken as regularity of the initial form.
pub fn depth_g_estimate(
    m: &ModulePresentation,
    tries: usize,
    n_max: usize,
    slack: usize,
    seed: u64,
    cap: usize,
) -> Result<DepthReport> {
    if tries == 0 {
        return Err(Error::Input("tries must be at least 1".into()));
    }
    let dim = series::module_series(m, n_max, slack, cap)?.dim();
    let mut cur = m.clone();
    let mut stages = Vec::new();
    let mut depth = 0usize;
    let mut stream = 0u64;
    let mut stopped = false;
    while depth < dim {
        let mut advanced = false;
        for _ in 0..tries {
            let x = LinearForm::seeded(cur.nvars(), cur.field(), seed, stream);
            stream += 1;
            let b = b_sequence(&cur, &x, n_max, slack, cap)?;
            if !b.stabilized {
                return Err(Error::Inconclusive(format!(
                    "b-sequence of '{}' unstable across truncations",
                    cur.label
                )));
            }
            let regular = b.values.iter().all(|&v| v == 0);
            stages.push(DepthStage {
                module: cur.label.clone(),
                form: x.clone(),
                b_values: b.values.clone(),
                regular,
            });
            if regular {
                cur = quotient_by_form(&cur, &x)?;
                depth += 1;
                advanced = true;
                break;
            }
        }
        if !advanced {
            stopped = true;
            break;
        }
    }
    Ok(DepthReport {
        depth,
        dim,
        certified_maximal: depth == dim,
        stopped_by_nonzero_b: stopped,
        stages,
        n_max,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentations::{hilbert_function, DEFAULT_MEMORY_CAP as CAP};

    fn a3() -> RingPresentation {
        RingPresentation::from_strs("A", &["x", "y"], &["y^3"], Field::default()).unwrap()
    }

    fn depth_zero_module() -> ModulePresentation {
        ModulePresentation::from_strs("M", a3(), &[&["x", "y"], &["-y^2", "0"]]).unwrap()
    }

    #[test]
    fn coordinate_form_on_ring() {
        let a = a3().as_module();
        let b = b_sequence(&a, &LinearForm::variable(2, 0), 8, 3, CAP).unwrap();
        assert!(b.stabilized);
        assert!(b.values.iter().all(|&v| v == 0));
        let rho = rho_sequence(&a, &LinearForm::variable(2, 0), 5, 3, CAP).unwrap();
        assert_eq!(rho.values, vec![2, 1, 0, 0, 0, 0]);
    }

    #[test]
    fn depth_zero_example() {
        let m = depth_zero_module();
        let b = b_sequence(&m, &LinearForm::variable(2, 0), 8, 3, CAP).unwrap();
        assert_eq!(b.values[0], 0);
        assert!(b.values[1] >= 1);
        let rep = depth_g_estimate(&m, 3, 8, 3, 7, CAP).unwrap();
        assert_eq!(rep.depth, 0);
        assert!(rep.stopped_by_nonzero_b);
        assert!(rep.stages.iter().all(|s| s.b_values[1] >= 1));
    }

    #[test]
    fn ring_has_maximal_depth() {
        let rep = depth_g_estimate(&a3().as_module(), 3, 8, 3, 1, CAP).unwrap();
        assert_eq!((rep.depth, rep.dim), (1, 1));
        assert!(rep.certified_maximal);
    }

    #[test]
    fn artinian_module_is_exact_zero() {
        let r = RingPresentation::from_strs("B", &["y"], &["y^3"], Field::default()).unwrap();
        let rep = depth_g_estimate(&r.as_module(), 1, 6, 3, 1, CAP).unwrap();
        assert_eq!(rep.depth, 0);
        assert!(rep.certified_maximal);
    }

    #[test]
    fn quotient_by_coordinate() {
        let q = quotient_by_form(&a3().as_module(), &LinearForm::variable(2, 0)).unwrap();
        assert_eq!(q.ring.vars, vec!["y".to_string()]);
        assert_eq!(hilbert_function(&q, 4, CAP).unwrap(), vec![1, 1, 1, 0, 0]);
    }

    #[test]
    fn hilbert_sum_identity() {
        // H(M,n) = Σ_{i≤n} H(M/xM,i) - b_n
        let f = Field::default();
        for m in [a3().as_module(), depth_zero_module()] {
            for stream in 0..2 {
                let x = LinearForm::seeded(2, f, 11, stream);
                let n = 8;
                let h = hilbert_function(&m, n, CAP).unwrap();
                let hq = hilbert_function(&quotient_by_form(&m, &x).unwrap(), n, CAP).unwrap();
                let b = b_sequence(&m, &x, n, 3, CAP).unwrap();
                let mut acc = 0;
                for i in 0..=n {
                    acc += hq[i];
                    assert_eq!(h[i] + b.values[i], acc, "{} n={i}", m.label);
                }
            }
        }
    }

    #[test]
    fn transform_keeps_chain_consistent() {
        let f = Field::default();
        let r = RingPresentation::from_strs("C", &["x", "y", "z"], &["x*y - z^2"], f).unwrap();
        let forms = [LinearForm::seeded(3, f, 3, 0), LinearForm::seeded(3, f, 3, 1)];
        let q = quotient_by_forms(&r.as_module(), &forms).unwrap();
        assert_eq!(q.nvars(), 1);
        // a generic 2-form sequence cuts the quadric cone down to length 2
        assert_eq!(hilbert_function(&q, 3, CAP).unwrap(), vec![1, 1, 0, 0]);
    }
}
