//! Monomials with packed exponent vectors and the three monomial orders the
//! toolkit uses: graded reverse lexicographic, lexicographic, and a block
//! elimination order (first block eliminated).

use serde::{Deserialize, Serialize};
use std::cmp::Ordering;

/// Hard cap on ring size: 4 ambient variables plus auxiliary/elimination
/// variables is all the toolkit ever needs.
pub const MAX_VARS: usize = 8;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum MonomialOrder {
    /// Graded reverse lexicographic (the default).
    GrevLex,
    /// Pure lexicographic.
    Lex,
    /// Elimination order: variables `0..k` form the first block; grevlex is
    /// used inside each block. Monomials free of the first block are smaller
    /// than any monomial involving it.
    Block(usize),
}

#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: [u16; MAX_VARS],
}

impl std::fmt::Debug for Monomial {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Monomial{:?}", self.exps)
    }
}

impl Monomial {
    pub fn one() -> Self {
        Monomial {
            exps: [0; MAX_VARS],
        }
    }

    pub fn variable(i: usize) -> Self {
        let mut m = Self::one();
        m.exps[i] = 1;
        m
    }

    pub fn from_exps(exps: &[u16]) -> Self {
        let mut m = Self::one();
        m.exps[..exps.len()].copy_from_slice(exps);
        m
    }

    #[inline]
    pub fn exp(&self, i: usize) -> u16 {
        self.exps[i]
    }

    #[inline]
    pub fn set_exp(&mut self, i: usize, e: u16) {
        self.exps[i] = e;
    }

    #[inline]
    pub fn degree(&self) -> u32 {
        self.exps.iter().map(|&e| e as u32).sum()
    }

    fn degree_range(&self, lo: usize, hi: usize) -> u32 {
        self.exps[lo..hi].iter().map(|&e| e as u32).sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut out = *self;
        for i in 0..MAX_VARS {
            out.exps[i] += other.exps[i];
        }
        out
    }

    /// Componentwise division; `None` when `other` does not divide `self`.
    pub fn checked_div(&self, other: &Monomial) -> Option<Monomial> {
        let mut out = *self;
        for i in 0..MAX_VARS {
            if other.exps[i] > self.exps[i] {
                return None;
            }
            out.exps[i] -= other.exps[i];
        }
        Some(out)
    }

    #[inline]
    pub fn divides(&self, other: &Monomial) -> bool {
        (0..MAX_VARS).all(|i| self.exps[i] <= other.exps[i])
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        let mut out = *self;
        for i in 0..MAX_VARS {
            out.exps[i] = out.exps[i].max(other.exps[i]);
        }
        out
    }

    pub fn coprime(&self, other: &Monomial) -> bool {
        (0..MAX_VARS).all(|i| self.exps[i] == 0 || other.exps[i] == 0)
    }

    /// Grevlex comparison restricted to the variable window `[lo, hi)`.
    fn cmp_grevlex_range(&self, other: &Monomial, lo: usize, hi: usize) -> Ordering {
        let da = self.degree_range(lo, hi);
        let db = other.degree_range(lo, hi);
        if da != db {
            return da.cmp(&db);
        }
        for i in (lo..hi).rev() {
            if self.exps[i] != other.exps[i] {
                // Smaller exponent on the last differing variable wins.
                return other.exps[i].cmp(&self.exps[i]);
            }
        }
        Ordering::Equal
    }

    pub fn cmp_order(&self, other: &Monomial, n_vars: usize, order: MonomialOrder) -> Ordering {
        match order {
            MonomialOrder::GrevLex => self.cmp_grevlex_range(other, 0, n_vars),
            MonomialOrder::Lex => {
                for i in 0..n_vars {
                    if self.exps[i] != other.exps[i] {
                        return self.exps[i].cmp(&other.exps[i]);
                    }
                }
                Ordering::Equal
            }
            MonomialOrder::Block(k) => {
                let k = k.min(n_vars);
                self.cmp_grevlex_range(other, 0, k)
                    .then_with(|| self.cmp_grevlex_range(other, k, n_vars))
            }
        }
    }

    /// True when no variable of the leading block appears.
    pub fn free_of_block(&self, k: usize) -> bool {
        self.exps[..k].iter().all(|&e| e == 0)
    }
}

/// All monomials of degree `t` in `n_vars` variables, descending in `order`.
pub fn monomials_of_degree(n_vars: usize, t: u32, order: MonomialOrder) -> Vec<Monomial> {
    let mut out = Vec::new();
    let mut current = Monomial::one();
    fill(&mut out, &mut current, 0, n_vars, t);
    out.sort_by(|a, b| b.cmp_order(a, n_vars, order));
    out
}

fn fill(out: &mut Vec<Monomial>, current: &mut Monomial, var: usize, n_vars: usize, rem: u32) {
    if var + 1 == n_vars {
        current.set_exp(var, rem as u16);
        out.push(*current);
        current.set_exp(var, 0);
        return;
    }
    for e in 0..=rem {
        current.set_exp(var, e as u16);
        fill(out, current, var + 1, n_vars, rem - e);
    }
    current.set_exp(var, 0);
}

/// C(t + n − 1, n − 1): the number of degree-`t` monomials in `n` variables.
/// Zero for negative `t`.
pub fn dim_forms(n_vars: usize, t: i64) -> usize {
    if t < 0 {
        return 0;
    }
    binomial(t as u64 + n_vars as u64 - 1, n_vars as u64 - 1) as usize
}

pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u64 = 1;
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}
