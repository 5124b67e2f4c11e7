//! Rings `k[[t^a, t^b, t^c]]` and their canonical modules.
//!
//! Two independent routes are kept side by side: integer-set computations
//! inside the semigroup (the oracle) and binomial presentations over
//! `k[x, y, z]` that feed the general machinery.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::poly::{Monomial, Poly};
use crate::presentations::{ModulePresentation, RingPresentation};

/// Numerical semigroup generated by three coprime positive integers, none
/// in the span of the others.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Semigroup {
    pub gens: [u32; 3],
    member: Vec<bool>,
    conductor: u32,
}

fn gcd(a: u32, b: u32) -> u32 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

impl Semigroup {
    pub fn new(a: u32, b: u32, c: u32) -> Result<Self> {
        let mut g = [a, b, c];
        g.sort_unstable();
        if g[0] < 2 || gcd(gcd(g[0], g[1]), g[2]) != 1 {
            return Err(Error::Input(format!(
                "semigroup generators {a},{b},{c} must be coprime and at least 2"
            )));
        }
        let limit = (g[0] * g[1] * g[2] + 1) as usize;
        let mut member = vec![false; limit];
        member[0] = true;
        for n in 1..limit {
            member[n] = g.iter().any(|&s| n >= s as usize && member[n - s as usize]);
        }
        for (i, &s) in g.iter().enumerate() {
            let others: Vec<u32> = g.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, &v)| v).collect();
            let reach = (0..=s / others[0].max(1))
                .any(|p| (0..=s / others[1].max(1)).any(|q| p * others[0] + q * others[1] == s));
            if reach {
                return Err(Error::Input(format!(
                    "semigroup generator {s} is a combination of the others"
                )));
            }
        }
        let conductor = (0..limit).rev().find(|&n| !member[n]).map(|f| f as u32 + 1).unwrap_or(0);
        Ok(Semigroup {
            gens: g,
            member,
            conductor,
        })
    }

    pub fn contains(&self, n: i64) -> bool {
        if n < 0 {
            return false;
        }
        let n = n as usize;
        n >= self.member.len() || self.member[n]
    }

    pub fn frobenius(&self) -> i64 {
        self.conductor as i64 - 1
    }

    /// `K = {k : F - k ∉ S}`, the standard canonical ideal.
    pub fn canonical_ideal(&self, bound: u32) -> Vec<bool> {
        let f = self.frobenius();
        (0..bound).map(|k| !self.contains(f - k as i64)).collect()
    }

    /// Minimal generators of `K` as an `S`-ideal, ascending.
    pub fn canonical_generators(&self) -> Vec<u32> {
        let bound = self.conductor + 1;
        let k = self.canonical_ideal(bound);
        (0..bound)
            .filter(|&v| {
                k[v as usize]
                    && !self
                        .gens
                        .iter()
                        .any(|&s| v >= s && k[(v - s) as usize])
            })
            .collect()
    }

    /// `H(J, n) = #(m^n J \ m^{n+1} J)` where `J = ideal_gens + S`.
    pub fn hilbert_function(&self, ideal_gens: &[u32], n_max: usize) -> Vec<usize> {
        let top = *ideal_gens.iter().max().unwrap_or(&0);
        let len = ((n_max as u32 + 2) * self.gens[2] + self.conductor + top + 1) as usize;
        let mut cur: BTreeSet<usize> = ideal_gens.iter().map(|&g| g as usize).collect();
        let close = |gens: &BTreeSet<usize>| -> Vec<bool> {
            let mut v = vec![false; len];
            for &g in gens {
                for (n, slot) in v.iter_mut().enumerate().skip(g) {
                    if self.contains((n - g) as i64) {
                        *slot = true;
                    }
                }
            }
            v
        };
        let mut out = Vec::with_capacity(n_max + 1);
        let mut cur_set = close(&cur);
        for _ in 0..=n_max {
            let next: BTreeSet<usize> = cur
                .iter()
                .flat_map(|&g| self.gens.iter().map(move |&s| g + s as usize))
                .filter(|&v| v < len)
                .collect();
            let next_set = close(&next);
            out.push(cur_set.iter().zip(&next_set).filter(|&(&a, &b)| a && !b).count());
            cur = next;
            cur_set = next_set;
        }
        out
    }

    fn weight(&self, e: &[u32]) -> u32 {
        e.iter().zip(&self.gens).map(|(a, b)| a * b).sum()
    }

    /// Exponent vectors of weight exactly `w`.
    fn monomials_of_weight(&self, w: u32) -> Vec<[u32; 3]> {
        let [a, b, c] = self.gens;
        let mut out = Vec::new();
        for i in 0..=w / a {
            for j in 0..=(w - i * a) / b {
                let rest = w - i * a - j * b;
                if rest.is_multiple_of(c) {
                    out.push([i, j, rest / c]);
                }
            }
        }
        out.sort_unstable_by(|x, y| {
            let dx: u32 = x.iter().sum();
            let dy: u32 = y.iter().sum();
            dx.cmp(&dy).then(x.cmp(y))
        });
        out
    }

    /// Binomial moves in each weight up to `w_max`, added greedily until
    /// every weight class of terms `x^α e_g` is connected. `shifts[g]` is the
    /// weight of generator `g`; `base` moves act on every generator.
    fn connect(&self, shifts: &[u32], base: &[Binomial], w_max: u32) -> Vec<Binomial> {
        let mut moves: Vec<Binomial> = Vec::new();
        for w in 0..=w_max {
            let mut nodes: Vec<(usize, [u32; 3])> = Vec::new();
            for (g, &s) in shifts.iter().enumerate() {
                if w >= s {
                    for e in self.monomials_of_weight(w - s) {
                        nodes.push((g, e));
                    }
                }
            }
            if nodes.len() < 2 {
                continue;
            }
            let idx = |n: &(usize, [u32; 3])| nodes.iter().position(|m| m == n);
            let mut parent: Vec<usize> = (0..nodes.len()).collect();
            fn find(p: &mut Vec<usize>, i: usize) -> usize {
                let mut r = i;
                while p[r] != r {
                    r = p[r];
                }
                let mut i = i;
                while p[i] != r {
                    let n = p[i];
                    p[i] = r;
                    i = n;
                }
                r
            }
            let join = |p: &mut Vec<usize>, u: usize, v: usize| {
                let (ru, rv) = (find(p, u), find(p, v));
                if ru != rv {
                    p[ru.max(rv)] = ru.min(rv);
                }
            };
            let apply = |mv: &Binomial, gens: &[usize], parent: &mut Vec<usize>| {
                for &g in gens {
                    let (g1, a1) = (if mv.module { mv.lhs.0 } else { g }, mv.lhs.1);
                    let (g2, a2) = (if mv.module { mv.rhs.0 } else { g }, mv.rhs.1);
                    let w1 = shifts[g1] + self.weight(&a1);
                    if w1 > w {
                        continue;
                    }
                    for gam in self.monomials_of_weight(w - w1) {
                        let u = (g1, add3(a1, gam));
                        let v = (g2, add3(a2, gam));
                        if let (Some(i), Some(j)) = (idx(&u), idx(&v)) {
                            join(parent, i, j);
                        }
                    }
                }
            };
            let all: Vec<usize> = (0..shifts.len()).collect();
            for mv in base {
                apply(mv, &all, &mut parent);
            }
            for mv in &moves {
                apply(mv, &[0], &mut parent);
            }
            for i in 1..nodes.len() {
                if find(&mut parent, i) != find(&mut parent, 0) {
                    let mv = Binomial {
                        module: true,
                        lhs: nodes[0],
                        rhs: nodes[i],
                    };
                    apply(&mv, &[0], &mut parent);
                    moves.push(mv);
                }
            }
        }
        moves
    }

    fn weight_bound(&self) -> u32 {
        self.gens[1] * self.gens[2]
    }

    /// Binomial generators of the kernel of `k[x,y,z] → k[t]`.
    fn ring_moves(&self) -> Vec<Binomial> {
        self.connect(&[0], &[], self.weight_bound())
            .into_iter()
            .map(|mut b| {
                b.module = false;
                b
            })
            .collect()
    }

    /// `k[x, y, z]/q` with `x, y, z ↦ t^a, t^b, t^c`.
    pub fn ring(&self, label: &str, field: Field) -> Result<RingPresentation> {
        let gens = self.ring_moves().iter().map(|b| b.poly(field)).collect();
        RingPresentation::new(label, vec!["x".into(), "y".into(), "z".into()], field, gens)
    }

    /// Presentation of `ω ≅ ⊕_{k ∈ K} k·t^k` on its minimal generators.
    pub fn canonical_module(&self, label: &str, field: Field) -> Result<ModulePresentation> {
        let ring = self.ring(&format!("{label}-ring"), field)?;
        let shifts = self.canonical_generators();
        let base = self.ring_moves();
        let top = *shifts.iter().max().unwrap_or(&0);
        let moves = self.connect(&shifts, &base, top + self.weight_bound());
        let z = Poly::zero(3, field);
        let rels = moves
            .iter()
            .map(|b| {
                let mut col = vec![z.clone(); shifts.len()];
                col[b.lhs.0] = col[b.lhs.0].add(&mono(b.lhs.1, field, 1));
                col[b.rhs.0] = col[b.rhs.0].add(&mono(b.rhs.1, field, field.neg(1)));
                col
            })
            .collect();
        ModulePresentation::new(label, ring, shifts.len(), rels)
    }

    /// Cohen-Macaulay type: the number of pseudo-Frobenius numbers.
    pub fn cm_type(&self) -> usize {
        self.canonical_generators().len()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct Binomial {
    module: bool,
    lhs: (usize, [u32; 3]),
    rhs: (usize, [u32; 3]),
}

impl Binomial {
    fn poly(&self, field: Field) -> Poly {
        mono(self.lhs.1, field, 1).sub(&mono(self.rhs.1, field, 1))
    }
}

fn add3(a: [u32; 3], b: [u32; 3]) -> [u32; 3] {
    [a[0] + b[0], a[1] + b[1], a[2] + b[2]]
}

fn mono(e: [u32; 3], field: Field, c: u64) -> Poly {
    Poly::monomial(3, field, Monomial::from_exps(&e).expect("small exponents"), c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentations::{hilbert_function, DEFAULT_MEMORY_CAP as CAP};

    #[test]
    fn three_four_five() {
        let s = Semigroup::new(3, 4, 5).unwrap();
        assert_eq!(s.frobenius(), 2);
        assert_eq!(s.canonical_generators(), vec![0, 1]);
        assert_eq!(s.hilbert_function(&[0], 4), vec![1, 3, 3, 3, 3]);
        assert_eq!(s.hilbert_function(&[0, 1], 4), vec![2, 3, 3, 3, 3]);
    }

    #[test]
    fn rejects_redundant_generators() {
        assert!(Semigroup::new(3, 6, 7).is_err());
        assert!(Semigroup::new(2, 4, 6).is_err());
    }

    #[test]
    fn presentations_match_oracle() {
        for (a, b, c) in [(3, 4, 5), (3, 5, 7), (4, 5, 6), (4, 5, 11)] {
            let s = Semigroup::new(a, b, c).unwrap();
            let f = Field::default();
            let ring = s.ring("A", f).unwrap();
            let h = hilbert_function(&ring.as_module(), 10, CAP).unwrap();
            assert_eq!(h, s.hilbert_function(&[0], 10), "ring ({a},{b},{c})");
            let w = s.canonical_module("w", f).unwrap();
            let k = s.canonical_generators();
            let hw = hilbert_function(&w, 10, CAP).unwrap();
            assert_eq!(hw, s.hilbert_function(&k, 10), "omega ({a},{b},{c})");
        }
    }
}
