//! Built-in instances with expected invariants.
//!
//! Names: `hyper-y3`, `paper-s5`, `generic-2x2-ord2`, `generic-2x2-ord3`,
//! `ci-codim2`, `dvr-(a1,..,ak;e)` and `semigroup-(a,b,c)`.

use rand::Rng;
use serde::Serialize;
use serde_json::{json, Value};

use crate::config::RunConfig;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::matfac::{self, MatrixFactorization, PolyMatrix};
use crate::poly::{Monomial, Poly};
use crate::presentations::{self, ModulePresentation, RingPresentation};
use crate::semigroup::Semigroup;
use crate::superficial::rng_for;
use crate::verify::{Ctx, Instance, OmegaInput};

/// Where an expected value comes from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Origin {
    /// Stated for this example in the literature.
    Stated,
    /// Produced by an independent computation and frozen.
    Derived,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Golden {
    pub key: String,
    pub expected: Value,
    pub origin: Origin,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GoldenResult {
    pub key: String,
    pub expected: Value,
    pub actual: Value,
    pub origin: Origin,
    pub matches: bool,
}

#[derive(Debug, Clone)]
pub struct Example {
    pub name: String,
    pub description: String,
    pub instance: Instance,
    pub golden: Vec<Golden>,
}

/// Fixed names plus one representative of each parametric family.
pub const BUILTINS: &[(&str, &str)] = &[
    ("hyper-y3", "k[x,y]/(y^3) with a rank-one module whose associated graded module has depth 0"),
    ("paper-s5", "five-variable ring of depth-0 tangent cone with negative e3 and an exact sequence 0 -> M -> A -> E -> 0"),
    ("generic-2x2-ord2", "generic 2x2 linear matrix over k[y1,y2,y3]; cokernel over its determinant"),
    ("generic-2x2-ord3", "2x2 matrix with a linear and a quadratic column over k[y1,y2,y3]; determinant of order 3"),
    ("ci-codim2", "k[x,y,z]/(x^2 - yz, y^2 - xz), a one-dimensional complete intersection"),
    ("dvr-(2,3;3)", "k[y]/(y^3)-module k[y]/(y^2) + k[y]/(y^3); family dvr-(a1,..,ak;e)"),
    ("semigroup-(3,4,5)", "k[[t^3,t^4,t^5]] with its canonical module; family semigroup-(a,b,c)"),
    ("semigroup-(3,5,7)", "k[[t^3,t^5,t^7]] with its canonical module"),
    ("semigroup-(4,5,6)", "k[[t^4,t^5,t^6]] with its canonical module"),
    ("semigroup-(4,5,11)", "k[[t^4,t^5,t^11]] with its canonical module"),
];

fn golden(key: &str, expected: Value, origin: Origin) -> Golden {
    Golden {
        key: key.to_string(),
        expected,
        origin,
    }
}

fn strs(v: &[&str]) -> Vec<String> {
    v.iter().map(|s| s.to_string()).collect()
}

pub fn load(name: &str, cfg: &RunConfig) -> Result<Example> {
    let field = cfg.field();
    if let Some(rest) = name.strip_prefix("dvr-") {
        return dvr(name, rest, field);
    }
    if let Some(rest) = name.strip_prefix("semigroup-") {
        return semigroup(name, rest, field);
    }
    let description = BUILTINS
        .iter()
        .find(|(n, _)| *n == name)
        .map(|(_, d)| d.to_string())
        .ok_or_else(|| Error::Input(format!("unknown example '{name}'; see `examples --list`")))?;
    let (instance, golden) = match name {
        "hyper-y3" => hyper_y3(field)?,
        "paper-s5" => paper_s5(field)?,
        "generic-2x2-ord2" => generic_2x2(name, field, cfg.seed, 1)?,
        "generic-2x2-ord3" => generic_2x2(name, field, cfg.seed, 2)?,
        "ci-codim2" => ci_codim2(field)?,
        _ => unreachable!("listed above"),
    };
    Ok(Example {
        name: name.to_string(),
        description,
        instance,
        golden,
    })
}

/// Every fixed built-in; parametric families contribute their listed members.
pub fn load_all(cfg: &RunConfig) -> Result<Vec<Example>> {
    BUILTINS.iter().map(|(n, _)| load(n, cfg)).collect()
}

fn hyper_y3(field: Field) -> Result<(Instance, Vec<Golden>)> {
    let mf = MatrixFactorization::from_strs(
        &["x", "y"],
        field,
        &[&["x", "y"], &["-y^2", "0"]],
        Some(&[&["0", "-y"], &["y^2", "x"]]),
    )?;
    let mut inst = Instance::from_mf("hyper-y3", &mf)?;
    inst.ideal_i = Some(vec![inst.ring.parse("x^2")?, inst.ring.parse("y")?]);
    let g = vec![
        golden("hilbert_A", json!([1, 2, 3, 3, 3, 3, 3]), Origin::Derived),
        golden("depth_G_M", json!(0), Origin::Stated),
        golden("hilbert_M_nondecreasing", json!(true), Origin::Stated),
        golden("i_M", json!(1), Origin::Derived),
        golden("h_M", json!([2, 0, 1]), Origin::Derived),
    ];
    Ok((inst, g))
}

fn paper_s5(field: Field) -> Result<(Instance, Vec<Golden>)> {
    let ring = RingPresentation::from_strs(
        "paper-s5",
        &["x", "y", "z", "u", "v"],
        &["z^2", "z*u", "z*v", "u*v", "y*z - u^3", "x*z - v^3"],
        field,
    )?;
    let p = |s: &str| ring.parse(s);
    // zA is isomorphic to A/(z, u, v)
    let m = ring.cyclic("M", vec![p("z")?, p("u")?, p("v")?]);
    let e = ring.cyclic("E", vec![p("z")?]);
    let mut inst = Instance::ring("paper-s5", ring);
    inst.sequence = Some((m, e));
    let g = vec![
        golden("h_A", json!([1, 3, 0, 3, -1]), Origin::Stated),
        golden("e3_A", json!(-1), Origin::Stated),
        golden("h_E", json!([1, 2, 2]), Origin::Stated),
        golden("h_M", json!([1]), Origin::Stated),
        golden("mu_E", json!(1), Origin::Stated),
        golden("e3_M", json!(0), Origin::Stated),
        golden("e3_E", json!(0), Origin::Stated),
        golden("depth_G_A", json!(0), Origin::Stated),
        golden("dim_A", json!(2), Origin::Stated),
    ];
    Ok((inst, g))
}

fn random_form(nv: usize, field: Field, deg: u32, rng: &mut impl Rng) -> Poly {
    let terms = Monomial::of_degree(nv, deg)
        .into_iter()
        .map(|m| (m, rng.gen_range(1..field.p())))
        .collect();
    Poly::from_terms(nv, field, terms)
}

/// `φ = [[a, b], [c, d]]` with `a, b` linear and `c, d` of degree `deg_cd`.
fn generic_2x2(name: &str, field: Field, seed: u64, deg_cd: u32) -> Result<(Instance, Vec<Golden>)> {
    let nv = 3;
    let mut rng = rng_for(seed, 7_000 + deg_cd as u64);
    let phi: PolyMatrix = vec![
        vec![random_form(nv, field, 1, &mut rng), random_form(nv, field, 1, &mut rng)],
        vec![random_form(nv, field, deg_cd, &mut rng), random_form(nv, field, deg_cd, &mut rng)],
    ];
    let mf = MatrixFactorization::from_adjugate(strs(&["y1", "y2", "y3"]), field, phi)?;
    if mf.e != deg_cd + 1 {
        return Err(Error::Inconclusive(format!("seed {seed} gave a non-generic determinant")));
    }
    let inst = Instance::from_mf(name, &mf)?;
    let g = if deg_cd == 1 {
        vec![
            golden("h_M", json!([2]), Origin::Stated),
            golden("i_M", json!(1), Origin::Stated),
            golden("ulrich_M", json!(true), Origin::Stated),
        ]
    } else {
        vec![
            golden("ord_f", json!(3), Origin::Stated),
            golden("chi1_M_or_K_zero", json!(true), Origin::Stated),
            golden("ulrich_M", json!(false), Origin::Stated),
            golden("ulrich_K", json!(false), Origin::Stated),
        ]
    };
    Ok((inst, g))
}

fn ci_codim2(field: Field) -> Result<(Instance, Vec<Golden>)> {
    let ring = RingPresentation::from_strs("ci-codim2", &["x", "y", "z"], &["x^2 - y*z", "y^2 - x*z"], field)?;
    let g = vec![
        golden("dim_A", json!(1), Origin::Derived),
        golden("h_A", json!([1, 2, 1]), Origin::Derived),
    ];
    Ok((Instance::ring("ci-codim2", ring), g))
}

fn parse_ints(s: &str, what: &str) -> Result<Vec<u32>> {
    s.split(',')
        .map(|t| {
            t.trim()
                .parse::<u32>()
                .map_err(|_| Error::Input(format!("bad {what} '{t}' in example name")))
        })
        .collect()
}

fn dvr(name: &str, rest: &str, field: Field) -> Result<Example> {
    let inner = rest
        .strip_prefix('(')
        .and_then(|r| r.strip_suffix(')'))
        .ok_or_else(|| Error::Input(format!("expected dvr-(a1,..,ak;e), got '{name}'")))?;
    let (a, e) = inner
        .split_once(';')
        .ok_or_else(|| Error::Input(format!("missing ';e' in '{name}'")))?;
    let a = parse_ints(a, "exponent")?;
    let e = parse_ints(e, "exponent")?;
    let e = match e[..] {
        [e] if e >= 2 => e,
        _ => return Err(Error::Input(format!("need a single e >= 2 in '{name}'"))),
    };
    if a.is_empty() || a.iter().any(|&x| x == 0 || x > e) {
        return Err(Error::Input(format!("exponents in '{name}' must lie in 1..=e")));
    }
    let y = Poly::var(1, field, 0);
    let z = Poly::zero(1, field);
    let diag = |ex: &dyn Fn(u32) -> u32| -> PolyMatrix {
        (0..a.len())
            .map(|i| {
                (0..a.len())
                    .map(|j| if i == j { y.pow(ex(a[i])) } else { z.clone() })
                    .collect()
            })
            .collect()
    };
    let mf = MatrixFactorization::validate(strs(&["y"]), field, diag(&|x| x), diag(&|x| e - x))?;
    let inst = Instance::from_mf(name, &mf)?;
    let mut golden_rows = Vec::new();
    let len: u32 = a.iter().sum();
    let i = *a.iter().min().expect("nonempty");
    golden_rows.push(golden("e0_M", json!(len), Origin::Derived));
    golden_rows.push(golden("i_M", json!(i), Origin::Derived));
    if a == [2, 3] && e == 3 {
        golden_rows.push(golden("l_M", json!([1, 1]), Origin::Stated));
    }
    Ok(Example {
        name: name.to_string(),
        description: format!("k[y]/(y^{e})-module with cyclic summands k[y]/(y^a), a in {a:?}"),
        instance: inst,
        golden: golden_rows,
    })
}

fn semigroup(name: &str, rest: &str, field: Field) -> Result<Example> {
    let inner = rest
        .strip_prefix('(')
        .and_then(|r| r.strip_suffix(')'))
        .ok_or_else(|| Error::Input(format!("expected semigroup-(a,b,c), got '{name}'")))?;
    let g = parse_ints(inner, "generator")?;
    let [a, b, c] = g[..] else {
        return Err(Error::Input(format!("'{name}' needs three generators")));
    };
    let s = Semigroup::new(a, b, c)?;
    let ring = s.ring(name, field)?;
    let omega = s.canonical_module("omega", field)?;
    let tau = s.cm_type();
    let mut inst = Instance::ring(name, ring);
    inst.omega = Some(OmegaInput { omega, tau });
    let window = 10;
    let kgens = s.canonical_generators();
    let mut golden_rows = vec![
        golden("tau", json!(tau), Origin::Derived),
        golden("hilbert_A", json!(s.hilbert_function(&[0], window)), Origin::Derived),
        golden("hilbert_omega", json!(s.hilbert_function(&kgens, window)), Origin::Derived),
    ];
    if s.gens == [3, 4, 5] {
        golden_rows.push(golden("h_A", json!([1, 2]), Origin::Derived));
        golden_rows.push(golden("h_omega", json!([2, 1]), Origin::Derived));
        golden_rows.push(golden("e1_A", json!(2), Origin::Derived));
        golden_rows.push(golden("e1_omega", json!(1), Origin::Derived));
    }
    Ok(Example {
        name: name.to_string(),
        description: format!("k[[t^{a},t^{b},t^{c}]] with its canonical module"),
        instance: inst,
        golden: golden_rows,
    })
}

fn module_of<'a>(inst: &'a Instance, which: &str) -> Result<&'a ModulePresentation> {
    let found = match which {
        "M" => inst.module.as_ref().or(inst.sequence.as_ref().map(|s| &s.0)),
        "K" => inst.syzygy.as_ref(),
        "E" => inst.sequence.as_ref().map(|s| &s.1),
        "omega" => inst.omega.as_ref().map(|o| &o.omega),
        _ => None,
    };
    found.ok_or_else(|| Error::Internal(format!("golden key refers to missing module {which}")))
}

impl Example {
    /// Recomputes every golden value on the configured window.
    pub fn check_golden(&self, cfg: &RunConfig) -> Result<Vec<GoldenResult>> {
        let ctx = Ctx::new(cfg);
        self.golden
            .iter()
            .map(|g| {
                let actual = self.actual(&g.key, &g.expected, &ctx)?;
                Ok(GoldenResult {
                    key: g.key.clone(),
                    matches: actual == g.expected,
                    expected: g.expected.clone(),
                    actual,
                    origin: g.origin,
                })
            })
            .collect()
    }

    fn actual(&self, key: &str, expected: &Value, ctx: &Ctx) -> Result<Value> {
        let inst = &self.instance;
        let cap = ctx.cfg.memory_cap;
        let am = inst.ring.as_module();
        match key {
            "tau" => {
                let t = matfac::cm_type_of_module(&am, ctx.cfg.seed, ctx.cfg.tries, ctx.cfg.n_max, ctx.cfg.slack, cap)?;
                return Ok(json!(t.cm_type));
            }
            "i_M" => return Ok(json!(self.mf()?.invariants()?.i_m)),
            "ord_f" => return Ok(json!(self.mf()?.e)),
            "l_M" => {
                let t = crate::tor::l_polynomial(module_of(inst, "M")?, module_of(inst, "K")?, ctx.cfg.n_max, ctx.cfg.slack, cap)?;
                return Ok(json!(t.l_poly));
            }
            "chi1_M_or_K_zero" => {
                let c = |w| -> Result<i64> { Ok(ctx.series(module_of(inst, w)?)?.chi(1)?[1]) };
                return Ok(json!(c("M")? == 0 || c("K")? == 0));
            }
            "hilbert_M_nondecreasing" => {
                let h = ctx.series(module_of(inst, "M")?)?.hilbert.values;
                return Ok(json!(h.windows(2).all(|w| w[0] <= w[1])));
            }
            _ => {}
        }
        let (stem, which) = key
            .rsplit_once('_')
            .ok_or_else(|| Error::Internal(format!("no evaluator for golden key '{key}'")))?;
        let target = if which == "A" { am } else { module_of(inst, which)?.clone() };
        let v = match stem {
            "hilbert" => {
                let n = expected.as_array().map_or(0, |a| a.len().saturating_sub(1));
                json!(presentations::hilbert_function(&target, n, cap)?)
            }
            "h" => json!(ctx.series(&target)?.h.coeffs),
            "dim" => json!(ctx.series(&target)?.dim()),
            "mu" => json!(ctx.series(&target)?.mu),
            "e0" => json!(ctx.series(&target)?.h.e_i(0)),
            "e1" => json!(ctx.series(&target)?.h.e_i(1)),
            "e3" => json!(ctx.series(&target)?.h.e_i(3)),
            "depth_G" => json!(ctx.depth(&target)?.depth),
            "ulrich" => {
                let s = ctx.series(&target)?;
                json!(s.h.e_i(0) == s.mu as i64)
            }
            _ => return Err(Error::Internal(format!("no evaluator for golden key '{key}'"))),
        };
        Ok(v)
    }

    fn mf(&self) -> Result<&MatrixFactorization> {
        self.instance
            .mf
            .as_ref()
            .ok_or_else(|| Error::Internal(format!("'{}' has no factorization", self.name)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg() -> RunConfig {
        RunConfig {
            n_max: 14,
            ..RunConfig::default()
        }
    }

    fn assert_golden(name: &str) {
        let ex = load(name, &cfg()).unwrap();
        for r in ex.check_golden(&cfg()).unwrap() {
            assert!(r.matches, "{name}: {} expected {} got {}", r.key, r.expected, r.actual);
        }
    }

    #[test]
    fn small_builtins_match_golden() {
        for n in ["hyper-y3", "dvr-(2,3;3)", "ci-codim2", "generic-2x2-ord2", "generic-2x2-ord3"] {
            assert_golden(n);
        }
    }

    #[test]
    fn semigroups_match_oracle() {
        for n in ["semigroup-(3,4,5)", "semigroup-(3,5,7)", "semigroup-(4,5,6)", "semigroup-(4,5,11)"] {
            assert_golden(n);
        }
    }

    #[test]
    fn bad_names() {
        for n in ["nope", "dvr-(0;3)", "dvr-(2,3)", "semigroup-(2,4,6)", "semigroup-(3,4)"] {
            assert!(load(n, &cfg()).unwrap_err().is_input_error(), "{n}");
        }
    }
}
