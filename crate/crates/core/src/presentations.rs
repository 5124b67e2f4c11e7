//! Local rings `A = k[x]/q`, finitely presented modules, and exact m-adic
//! (and I-adic) Hilbert functions by truncated linear algebra.
//!
//! A module `M = F0 / (R + q F0)` is realized inside `V_N = F0 / m^N F0`,
//! whose basis is (monomial of degree `< N`) x (generator), ordered by
//! ascending degree. The image `W_N` of `R + q F0` is spanned by truncated
//! monomial multiples of the relation columns and of `q`. Because pivots are
//! lowest-degree terms, the image of `W_N` in `V_n` has dimension equal to
//! the number of pivots of degree `< n`, so one echelon form yields
//! `λ(M/m^n M)` for every `n ≤ N`.

use std::collections::HashMap;
use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::matrix::{DenseMatrix, SparseEchelon, SparseRow};
use crate::poly::{Monomial, Order, Poly};

/// Default cap on the dimension of a truncated free module.
pub const DEFAULT_MEMORY_CAP: usize = 200_000;

/// `A = k[x_1..x_ν]/q` localized at the origin, with `q ⊆ (x)^2`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RingPresentation {
    pub label: String,
    pub vars: Vec<String>,
    pub field: Field,
    pub ideal: Vec<Poly>,
}

impl RingPresentation {
    /// Validates `q ⊆ (x)^2`; zero generators are dropped.
    pub fn new(label: &str, vars: Vec<String>, field: Field, ideal: Vec<Poly>) -> Result<Self> {
        let n = vars.len();
        let mut gens = Vec::new();
        for (i, g) in ideal.into_iter().enumerate() {
            if g.nvars() != n {
                return Err(Error::Dimension(format!(
                    "ideal generator {i} has {} variables, ring has {n}",
                    g.nvars()
                )));
            }
            match g.order() {
                Order::Infinite => continue,
                Order::Finite(d) if d < 2 => {
                    return Err(Error::Input(format!(
                        "ideal generator {} of ring '{label}' has order {d}; q must lie in (x)^2",
                        i + 1
                    )))
                }
                _ => gens.push(g),
            }
        }
        Ok(RingPresentation {
            label: label.to_string(),
            vars,
            field,
            ideal: gens,
        })
    }

    /// Ring from variable names and generator strings.
    pub fn from_strs(label: &str, vars: &[&str], ideal: &[&str], field: Field) -> Result<Self> {
        let vars: Vec<String> = vars.iter().map(|s| s.to_string()).collect();
        let gens = ideal
            .iter()
            .map(|s| crate::parse::parse_poly(s, &vars, field))
            .collect::<Result<Vec<_>>>()?;
        Self::new(label, vars, field, gens)
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn var(&self, i: usize) -> Poly {
        Poly::var(self.nvars(), self.field, i)
    }

    pub fn parse(&self, s: &str) -> Result<Poly> {
        crate::parse::parse_poly(s, &self.vars, self.field)
    }

    /// The ring as a cyclic module over itself.
    pub fn as_module(&self) -> ModulePresentation {
        ModulePresentation {
            label: self.label.clone(),
            ring: self.clone(),
            gens: 1,
            relations: Vec::new(),
        }
    }

    /// Free module `A^r`.
    pub fn free(&self, r: usize) -> ModulePresentation {
        ModulePresentation {
            label: format!("{}^{}", self.label, r),
            ring: self.clone(),
            gens: r,
            relations: Vec::new(),
        }
    }

    /// `A/(extra)` as a cyclic module.
    pub fn cyclic(&self, label: &str, extra: Vec<Poly>) -> ModulePresentation {
        ModulePresentation {
            label: label.to_string(),
            ring: self.clone(),
            gens: 1,
            relations: extra.into_iter().map(|p| vec![p]).collect(),
        }
    }
}

/// Cokernel of a `gens`-row polynomial matrix over a [`RingPresentation`];
/// the submodule `q F0` is implicit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModulePresentation {
    pub label: String,
    pub ring: RingPresentation,
    pub gens: usize,
    /// Relation columns, each of length `gens`.
    pub relations: Vec<Vec<Poly>>,
}

impl ModulePresentation {
    pub fn new(
        label: &str,
        ring: RingPresentation,
        gens: usize,
        relations: Vec<Vec<Poly>>,
    ) -> Result<Self> {
        for (j, col) in relations.iter().enumerate() {
            if col.len() != gens {
                return Err(Error::Dimension(format!(
                    "relation column {j} of '{label}' has {} entries, expected {gens}",
                    col.len()
                )));
            }
            if col.iter().any(|p| p.nvars() != ring.nvars()) {
                return Err(Error::Dimension(format!(
                    "relation column {j} of '{label}' uses a different variable count"
                )));
            }
        }
        Ok(ModulePresentation {
            label: label.to_string(),
            ring,
            gens,
            relations,
        })
    }

    /// Presentation built from a square or rectangular matrix whose columns are relations.
    pub fn from_matrix(label: &str, ring: RingPresentation, m: &[Vec<Poly>]) -> Result<Self> {
        let rows = m.len();
        let cols = m.first().map(|r| r.len()).unwrap_or(0);
        let relations = (0..cols)
            .map(|j| (0..rows).map(|i| m[i][j].clone()).collect())
            .collect();
        Self::new(label, ring, rows, relations)
    }

    /// Cokernel of a matrix given row by row as polynomial strings.
    pub fn from_strs(label: &str, ring: RingPresentation, rows: &[&[&str]]) -> Result<Self> {
        let m = rows
            .iter()
            .map(|r| r.iter().map(|s| ring.parse(s)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        Self::from_matrix(label, ring, &m)
    }

    pub fn nvars(&self) -> usize {
        self.ring.nvars()
    }

    pub fn field(&self) -> Field {
        self.ring.field
    }

    /// Direct sum of two modules over the same ring.
    pub fn direct_sum(&self, o: &ModulePresentation) -> Result<ModulePresentation> {
        if self.ring != o.ring {
            return Err(Error::Dimension("direct sum over different rings".into()));
        }
        let z = Poly::zero(self.nvars(), self.field());
        let mut rels = Vec::new();
        for c in &self.relations {
            let mut v = c.clone();
            v.extend(std::iter::repeat_n(z.clone(), o.gens));
            rels.push(v);
        }
        for c in &o.relations {
            let mut v: Vec<Poly> = std::iter::repeat_n(z.clone(), self.gens).collect();
            v.extend(c.iter().cloned());
            rels.push(v);
        }
        Ok(ModulePresentation {
            label: format!("{}+{}", self.label, o.label),
            ring: self.ring.clone(),
            gens: self.gens + o.gens,
            relations: rels,
        })
    }

    /// Minimality as defined for presentations: every relation entry lies in
    /// `m` (then `μ(M) = gens`).
    pub fn is_minimal(&self) -> bool {
        self.relations
            .iter()
            .flatten()
            .all(|p| p.order() >= Order::Finite(1))
    }

    /// All generators of `R + q F0` as module elements.
    pub fn submodule_generators(&self) -> Vec<Vec<Poly>> {
        let z = Poly::zero(self.nvars(), self.field());
        let mut out: Vec<Vec<Poly>> = self.relations.clone();
        for f in &self.ring.ideal {
            for j in 0..self.gens {
                let mut v = vec![z.clone(); self.gens];
                v[j] = f.clone();
                out.push(v);
            }
        }
        out
    }
}

/// Monomials of degree `< bound`, ascending degree, descending lex inside a degree.
#[derive(Debug)]
pub struct MonomialBasis {
    pub nvars: usize,
    pub bound: u32,
    pub monos: Vec<Monomial>,
    index: HashMap<u64, u32>,
    /// `deg_start[d]` is the index of the first monomial of degree `d`; length `bound + 1`.
    pub deg_start: Vec<usize>,
}

fn binom(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut r: u64 = 1;
    for i in 0..k {
        r = r * (n - i) / (i + 1);
    }
    r
}

/// Number of monomials of degree `< bound` in `nvars` variables.
pub fn monomial_count_below(nvars: usize, bound: u32) -> usize {
    if bound == 0 {
        return 0;
    }
    binom(bound as u64 - 1 + nvars as u64, nvars as u64) as usize
}

impl MonomialBasis {
    pub fn new(nvars: usize, bound: u32) -> Self {
        let mut monos = Vec::new();
        let mut deg_start = Vec::with_capacity(bound as usize + 1);
        for d in 0..bound {
            deg_start.push(monos.len());
            monos.extend(Monomial::of_degree(nvars, d));
        }
        deg_start.push(monos.len());
        let index = monos
            .iter()
            .enumerate()
            .map(|(i, m)| (m.key(), i as u32))
            .collect();
        MonomialBasis {
            nvars,
            bound,
            monos,
            index,
            deg_start,
        }
    }

    #[inline]
    pub fn index_of(&self, m: &Monomial) -> Option<u32> {
        self.index.get(&m.key()).copied()
    }

    pub fn len(&self) -> usize {
        self.monos.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monos.is_empty()
    }
}

/// Coordinates of `F0/m^N F0`: column `c` is monomial `c / g` times generator `c % g`.
#[derive(Debug, Clone)]
pub struct ModuleTruncation {
    pub basis: Arc<MonomialBasis>,
    pub gens: usize,
    pub field: Field,
}

impl ModuleTruncation {
    pub fn new(nvars: usize, gens: usize, bound: u32, field: Field, cap: usize) -> Result<Self> {
        let size = monomial_count_below(nvars, bound) * gens;
        if size > cap {
            return Err(Error::Resource {
                degree: bound as usize,
                size,
                cap,
            });
        }
        Ok(ModuleTruncation {
            basis: Arc::new(MonomialBasis::new(nvars, bound)),
            gens,
            field,
        })
    }

    pub fn bound(&self) -> u32 {
        self.basis.bound
    }

    pub fn ncols(&self) -> usize {
        self.basis.len() * self.gens
    }

    /// Number of columns of degree `< d`.
    pub fn cols_below(&self, d: u32) -> usize {
        let d = d.min(self.bound()) as usize;
        self.basis.deg_start[d] * self.gens
    }

    #[inline]
    pub fn degree_of_col(&self, c: usize) -> u32 {
        self.basis.monos[c / self.gens].degree()
    }

    #[inline]
    pub fn col(&self, m: &Monomial, gen: usize) -> Option<usize> {
        if m.degree() >= self.bound() {
            return None;
        }
        self.basis
            .index_of(m)
            .map(|i| i as usize * self.gens + gen)
    }

    pub fn unit(&self, m: &Monomial, gen: usize) -> SparseRow {
        self.col(m, gen)
            .map(|c| vec![(c as u32, 1u64)])
            .unwrap_or_default()
    }

    /// Truncation of `mono * v` as a sparse row.
    pub fn row_of(&self, v: &[Poly], mono: &Monomial, coef: u64) -> SparseRow {
        let f = self.field;
        let mdeg = mono.degree();
        let bound = self.bound();
        let mut out: SparseRow = Vec::new();
        for (j, p) in v.iter().enumerate() {
            for &(t, c) in p.terms() {
                if t.degree() + mdeg >= bound {
                    continue;
                }
                let m = t.mul(mono).expect("degree bounded");
                let col = self.col(&m, j).expect("monomial in basis");
                out.push((col as u32, f.mul(c, coef)));
            }
        }
        out.sort_unstable_by_key(|e| e.0);
        out
    }

    /// Module element from a sparse row.
    pub fn to_vector(&self, row: &[(u32, u64)]) -> Vec<Poly> {
        let n = self.basis.nvars;
        let mut terms: Vec<Vec<(Monomial, u64)>> = vec![Vec::new(); self.gens];
        for &(c, v) in row {
            let c = c as usize;
            terms[c % self.gens].push((self.basis.monos[c / self.gens], v));
        }
        terms
            .into_iter()
            .map(|t| Poly::from_terms(n, self.field, t))
            .collect()
    }
}

/// A generator of a submodule together with the least degree of monomial
/// multipliers to use (0 for the whole submodule it generates).
#[derive(Debug, Clone)]
pub struct SpanGenerator {
    pub vector: Vec<Poly>,
    pub min_mult_degree: u32,
}

impl SpanGenerator {
    pub fn all(v: Vec<Poly>) -> Self {
        SpanGenerator {
            vector: v,
            min_mult_degree: 0,
        }
    }
}

/// Inserts all truncated monomial multiples of `gens` into `ech`.
pub fn insert_span(trunc: &ModuleTruncation, ech: &mut SparseEchelon, gens: &[SpanGenerator]) {
    let bound = trunc.bound();
    let basis = trunc.basis.clone();
    for g in gens {
        let ord = g
            .vector
            .iter()
            .map(|p| p.order())
            .min()
            .unwrap_or(Order::Infinite);
        let Order::Finite(o) = ord else { continue };
        if o >= bound {
            continue;
        }
        let top = bound - o;
        let start = basis.deg_start[(g.min_mult_degree.min(bound)) as usize];
        let end = basis.deg_start[top as usize];
        for mi in start..end {
            let m = basis.monos[mi];
            let row = trunc.row_of(&g.vector, &m, 1);
            ech.insert(&row);
        }
    }
}

/// Echelon form of a submodule of `F0/m^N F0` together with per-degree pivot counts.
#[derive(Debug, Clone)]
pub struct TruncatedSpan {
    pub trunc: ModuleTruncation,
    pub ech: SparseEchelon,
    /// `piv_deg[d]` = number of pivots of degree `d`, for `d < N`.
    pub piv_deg: Vec<usize>,
}

impl TruncatedSpan {
    pub fn build(trunc: ModuleTruncation, gens: &[SpanGenerator]) -> Self {
        let mut ech = SparseEchelon::new(trunc.ncols(), trunc.field);
        insert_span(&trunc, &mut ech, gens);
        Self::from_parts(trunc, ech)
    }

    pub fn from_parts(trunc: ModuleTruncation, ech: SparseEchelon) -> Self {
        let mut piv_deg = vec![0usize; trunc.bound() as usize];
        for c in ech.pivot_cols() {
            piv_deg[trunc.degree_of_col(c) as usize] += 1;
        }
        TruncatedSpan {
            trunc,
            ech,
            piv_deg,
        }
    }

    /// Pivots of degree `< d`.
    pub fn pivots_below(&self, d: u32) -> usize {
        self.piv_deg.iter().take(d as usize).sum()
    }

    /// `dim V_n - dim π_n(W)`, i.e. the colength of the span in `F0/m^n F0`.
    pub fn colength_below(&self, n: u32) -> usize {
        assert!(n <= self.trunc.bound());
        self.trunc.cols_below(n) - self.pivots_below(n)
    }

    /// Whether every column of the top degree is a pivot.
    pub fn top_degree_full(&self) -> bool {
        let b = self.trunc.bound();
        if b == 0 {
            return true;
        }
        let top = (b - 1) as usize;
        self.piv_deg[top] == self.trunc.cols_below(b) - self.trunc.cols_below(b - 1)
    }

    /// Standard (non-pivot) columns of degree `< n`.
    pub fn standard_cols_below(&self, n: u32) -> Vec<usize> {
        (0..self.trunc.cols_below(n))
            .filter(|&c| !self.ech.is_pivot(c))
            .collect()
    }
}

/// Echelon data of `M` at truncation `N`.
pub fn module_span(m: &ModulePresentation, bound: u32, cap: usize) -> Result<TruncatedSpan> {
    let trunc = ModuleTruncation::new(m.nvars(), m.gens, bound, m.field(), cap)?;
    let gens: Vec<SpanGenerator> = m
        .submodule_generators()
        .into_iter()
        .map(SpanGenerator::all)
        .collect();
    Ok(TruncatedSpan::build(trunc, &gens))
}

/// `λ(M/m^{n+1}M)` for `n = 0..=n_max`.
pub fn hilbert_samuel(m: &ModulePresentation, n_max: usize, cap: usize) -> Result<Vec<usize>> {
    let span = module_span(m, n_max as u32 + 1, cap)?;
    Ok((0..=n_max)
        .map(|n| span.colength_below(n as u32 + 1))
        .collect())
}

/// `H(M, n)` for `n = 0..=n_max`.
pub fn hilbert_function(m: &ModulePresentation, n_max: usize, cap: usize) -> Result<Vec<usize>> {
    let span = module_span(m, n_max as u32 + 1, cap)?;
    Ok(hilbert_from_span(&span, n_max))
}

pub fn hilbert_from_span(span: &TruncatedSpan, n_max: usize) -> Vec<usize> {
    (0..=n_max)
        .map(|n| span.colength_below(n as u32 + 1) - span.colength_below(n as u32))
        .collect()
}

/// Basis of `m^n M / m^{n+1} M` by standard monomials of degree `n`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GradedPieceBasis {
    pub degree: usize,
    pub dim: usize,
    /// Pairs (exponent vector, generator index).
    pub standard: Vec<(Vec<u32>, usize)>,
}

pub fn graded_piece_basis(m: &ModulePresentation, n: usize, cap: usize) -> Result<GradedPieceBasis> {
    let span = module_span(m, n as u32 + 1, cap)?;
    let lo = span.trunc.cols_below(n as u32);
    let hi = span.trunc.cols_below(n as u32 + 1);
    let g = span.trunc.gens;
    let standard: Vec<(Vec<u32>, usize)> = (lo..hi)
        .filter(|&c| !span.ech.is_pivot(c))
        .map(|c| (span.trunc.basis.monos[c / g].exps(m.nvars()), c % g))
        .collect();
    Ok(GradedPieceBasis {
        degree: n,
        dim: standard.len(),
        standard,
    })
}

/// Products of `k` elements from `gens` (multisets), as polynomials.
pub fn ideal_power(gens: &[Poly], k: usize, nvars: usize, field: Field) -> Vec<Poly> {
    let mut out = vec![Poly::constant(nvars, field, 1)];
    let mut idx: Vec<usize> = vec![0];
    for _ in 0..k {
        let mut next = Vec::new();
        let mut nidx = Vec::new();
        for (p, &start) in out.iter().zip(&idx) {
            for (j, g) in gens.iter().enumerate().skip(start) {
                next.push(p.mul(g));
                nidx.push(j);
            }
        }
        out = next;
        idx = nidx;
    }
    out
}

/// `λ(M/I^k M)`, searching for a truncation `N` with `m^N F0 ⊆ U + I^k F0`.
pub fn colength_ideal_power(
    m: &ModulePresentation,
    i_gens: &[Poly],
    k: usize,
    cap: usize,
) -> Result<usize> {
    if k == 0 {
        return Ok(0);
    }
    let nv = m.nvars();
    let f = m.field();
    let power = ideal_power(i_gens, k, nv, f);
    let z = Poly::zero(nv, f);
    let mut gens: Vec<SpanGenerator> = m
        .submodule_generators()
        .into_iter()
        .map(SpanGenerator::all)
        .collect();
    for p in &power {
        for j in 0..m.gens {
            let mut v = vec![z.clone(); m.gens];
            v[j] = p.clone();
            gens.push(SpanGenerator::all(v));
        }
    }
    let maxdeg = i_gens.iter().map(|p| p.degree()).max().unwrap_or(1).max(1);
    let mut bound = (k as u32) * maxdeg + 1;
    loop {
        let trunc = match ModuleTruncation::new(nv, m.gens, bound, f, cap) {
            Ok(t) => t,
            Err(Error::Resource { .. }) => {
                return Err(Error::Precondition(format!(
                    "ideal is not m-primary on '{}' within the truncation cap (power {k}, degree {bound})",
                    m.label
                )))
            }
            Err(e) => return Err(e),
        };
        let span = TruncatedSpan::build(trunc, &gens);
        if span.top_degree_full() {
            return Ok(span.colength_below(bound));
        }
        bound += 1;
    }
}

/// `λ(I^n M / I^{n+1} M)` for `n = 0..=n_max`.
pub fn hilbert_function_ideal(
    m: &ModulePresentation,
    i_gens: &[Poly],
    n_max: usize,
    cap: usize,
) -> Result<Vec<usize>> {
    let mut prev = 0usize;
    let mut out = Vec::with_capacity(n_max + 1);
    for k in 1..=n_max + 1 {
        let cur = colength_ideal_power(m, i_gens, k, cap)?;
        out.push(cur - prev);
        prev = cur;
    }
    Ok(out)
}

/// Least `s` with `m^s M = 0`, if it occurs for `s ≤ limit`.
pub fn nilpotency_index(m: &ModulePresentation, limit: usize, cap: usize) -> Result<Option<usize>> {
    let h = hilbert_function(m, limit, cap)?;
    Ok(h.iter().position(|&v| v == 0))
}

/// Dimension of the socle `{v ∈ M : x_i v = 0 for all i}` of a module of finite length.
pub fn annihilator_socle_dim(m: &ModulePresentation, limit: usize, cap: usize) -> Result<usize> {
    let s = nilpotency_index(m, limit, cap)?.ok_or_else(|| {
        Error::Precondition(format!(
            "'{}' is not of finite length within degree {limit}",
            m.label
        ))
    })?;
    let mut span = module_span(m, s as u32, cap)?;
    let std = span.standard_cols_below(s as u32);
    let dim = std.len();
    if dim == 0 {
        return Ok(0);
    }
    let pos: HashMap<usize, usize> = std.iter().enumerate().map(|(i, &c)| (c, i)).collect();
    let g = span.trunc.gens;
    let nv = m.nvars();
    let mut mat = DenseMatrix::zeros(dim, nv * dim, m.field());
    for (bi, &c) in std.iter().enumerate() {
        let mono = span.trunc.basis.monos[c / g];
        for i in 0..nv {
            let prod = mono.mul(&Monomial::var(i)).expect("degree bounded");
            let row = span.trunc.unit(&prod, c % g);
            let nf = span.ech.normal_form(&row);
            for (col, v) in nf {
                mat.set(bi, i * dim + pos[&(col as usize)], v);
            }
        }
    }
    Ok(dim - mat.rank())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring(vars: &[&str], ideal: &[&str]) -> RingPresentation {
        let vars: Vec<String> = vars.iter().map(|s| s.to_string()).collect();
        let f = Field::default();
        let gens = ideal
            .iter()
            .map(|s| crate::parse::parse_poly(s, &vars, f).unwrap())
            .collect();
        RingPresentation::new("t", vars, f, gens).unwrap()
    }

    #[test]
    fn artinian_line() {
        let a = ring(&["y"], &["y^3"]);
        assert_eq!(
            hilbert_function(&a.as_module(), 3, DEFAULT_MEMORY_CAP).unwrap(),
            vec![1, 1, 1, 0]
        );
    }

    #[test]
    fn rejects_order_one_generators() {
        let vars = vec!["x".to_string()];
        let f = Field::default();
        let g = crate::parse::parse_poly("x + x^2", &vars, f).unwrap();
        assert!(matches!(
            RingPresentation::new("bad", vars, f, vec![g]),
            Err(Error::Input(_))
        ));
    }

    #[test]
    fn resource_cap() {
        let a = ring(&["x", "y", "z"], &[]);
        match hilbert_function(&a.as_module(), 40, 1000) {
            Err(Error::Resource { degree, .. }) => assert_eq!(degree, 41),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn socle_of_line() {
        let a = ring(&["y"], &["y^3"]);
        assert_eq!(
            annihilator_socle_dim(&a.as_module(), 10, DEFAULT_MEMORY_CAP).unwrap(),
            1
        );
    }

    #[test]
    fn graded_piece() {
        let a = ring(&["x", "y"], &["y^3"]);
        let b = graded_piece_basis(&a.as_module(), 3, DEFAULT_MEMORY_CAP).unwrap();
        assert_eq!(b.dim, 3);
        assert!(b.standard.iter().all(|(e, _)| e[1] < 3));
    }
}
