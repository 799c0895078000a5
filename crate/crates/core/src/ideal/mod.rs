//! Gröbner-basis computations and ideal-theoretic operations.
//!
//! Buchberger with the sugar selection strategy and the Gebauer-Möller pair
//! update (which installs the coprime and chain criteria). Paper-scale ideals
//! stay comfortably in Buchberger range; no F4/F5.

pub mod hilbert;
pub mod ops;

pub use hilbert::{hilbert_function, HilbertData};

use crate::error::{Error, Result};
use crate::poly::{Monomial, MonomialOrder, Polynomial, RingSpec};
use std::sync::{Arc, OnceLock};

/// Resource cap for a single Gröbner-basis call: the number of S-pair
/// reductions performed. Exceeding it is a reported error, never a silent
/// wrong answer.
#[derive(Clone, Copy, Debug)]
pub struct GbBudget {
    pub max_spair_reductions: u64,
}

impl Default for GbBudget {
    fn default() -> Self {
        GbBudget {
            max_spair_reductions: 2_000_000,
        }
    }
}

/// A homogeneous ideal with a write-once cache for its reduced Gröbner basis
/// (with respect to the ring's own order).
#[derive(Debug)]
pub struct Ideal {
    ring: RingSpec,
    gens: Vec<Polynomial>,
    gb: OnceLock<Arc<Vec<Polynomial>>>,
}

impl Clone for Ideal {
    fn clone(&self) -> Self {
        let gb = OnceLock::new();
        if let Some(b) = self.gb.get() {
            let _ = gb.set(b.clone());
        }
        Ideal {
            ring: self.ring,
            gens: self.gens.clone(),
            gb,
        }
    }
}

impl PartialEq for Ideal {
    /// Structural equality of generator lists (not ideal equality; use
    /// [`Ideal::equals`] for that).
    fn eq(&self, other: &Self) -> bool {
        self.ring == other.ring && self.gens == other.gens
    }
}

impl Ideal {
    /// A homogeneous ideal from generators (zero generators dropped).
    pub fn new(ring: RingSpec, gens: Vec<Polynomial>) -> Result<Self> {
        for g in &gens {
            if !g.is_homogeneous() {
                return Err(Error::Inhomogeneous(format!(
                    "ideal generator `{g}` is not homogeneous"
                )));
            }
        }
        Ok(Self::new_unchecked(ring, gens))
    }

    /// Internal constructor without the homogeneity requirement (used by the
    /// elimination tricks, which are inhomogeneous by design).
    pub(crate) fn new_unchecked(ring: RingSpec, gens: Vec<Polynomial>) -> Self {
        let gens = gens.into_iter().filter(|g| !g.is_zero()).collect();
        Ideal {
            ring,
            gens,
            gb: OnceLock::new(),
        }
    }

    pub fn zero(ring: RingSpec) -> Self {
        Self::new_unchecked(ring, Vec::new())
    }

    pub fn unit(ring: RingSpec) -> Self {
        Self::new_unchecked(ring, vec![Polynomial::constant(ring, 1)])
    }

    pub fn ring(&self) -> RingSpec {
        self.ring
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.gens
    }

    /// The reduced Gröbner basis for the ring's order, computed on first use.
    pub fn gb(&self, budget: GbBudget) -> Result<Arc<Vec<Polynomial>>> {
        if let Some(b) = self.gb.get() {
            return Ok(b.clone());
        }
        let basis = buchberger(self.ring, &self.gens, budget)?;
        let arc = Arc::new(basis);
        // A concurrent computation may have won the race; either result is
        // the same reduced basis.
        let _ = self.gb.set(arc);
        Ok(self.gb.get().unwrap().clone())
    }

    pub fn cached_gb(&self) -> Option<&[Polynomial]> {
        self.gb.get().map(|b| b.as_slice())
    }

    /// Returns self with a reduced Gröbner basis cached for `order`.
    /// Idempotent: when the order matches a cached basis, no work is done.
    pub fn groebner(&self, order: MonomialOrder, budget: GbBudget) -> Result<Ideal> {
        if order == self.ring.order {
            self.gb(budget)?;
            return Ok(self.clone());
        }
        let ring = self.ring.with_order(order);
        let gens: Vec<Polynomial> = self.gens.iter().map(|g| g.with_order(order)).collect();
        let out = Ideal {
            ring,
            gens,
            gb: OnceLock::new(),
        };
        out.gb(budget)?;
        Ok(out)
    }

    /// Fully reduced normal form modulo the cached/computed basis.
    pub fn normal_form(&self, f: &Polynomial, budget: GbBudget) -> Result<Polynomial> {
        let gb = self.gb(budget)?;
        let f = if f.ring().order == self.ring.order {
            f.clone()
        } else {
            f.with_order(self.ring.order)
        };
        Ok(normal_form(&f, &gb, self.ring))
    }

    pub fn contains(&self, f: &Polynomial, budget: GbBudget) -> Result<bool> {
        Ok(self.normal_form(f, budget)?.is_zero())
    }

    pub fn is_unit(&self, budget: GbBudget) -> Result<bool> {
        let gb = self.gb(budget)?;
        Ok(gb.len() == 1 && gb[0].is_constant())
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    /// Ideal equality via reduced Gröbner bases (which are canonical).
    pub fn equals(&self, other: &Ideal, budget: GbBudget) -> Result<bool> {
        self.ring.same_ring(&other.ring)?;
        let a = self.gb(budget)?;
        let b = other.groebner(self.ring.order, budget)?;
        let b = b.gb(budget)?;
        Ok(*a == *b)
    }

    /// Product ideal (pairwise products of generators, deduplicated).
    pub fn product(&self, other: &Ideal) -> Result<Ideal> {
        self.ring.same_ring(&other.ring)?;
        let mut gens: Vec<Polynomial> = Vec::new();
        for a in &self.gens {
            for b in &other.gens {
                let p = a.mul(b);
                if !gens.contains(&p) {
                    gens.push(p);
                }
            }
        }
        Ok(Ideal::new_unchecked(self.ring, gens))
    }

    /// Sum ideal (concatenated generators).
    pub fn sum(&self, other: &Ideal) -> Result<Ideal> {
        self.ring.same_ring(&other.ring)?;
        let mut gens = self.gens.clone();
        gens.extend(other.gens.iter().cloned());
        Ok(Ideal::new_unchecked(self.ring, gens))
    }

    pub fn power(&self, e: u32) -> Ideal {
        let mut acc = Ideal::unit(self.ring);
        for _ in 0..e {
            acc = acc.product(self).unwrap();
        }
        acc
    }
}

/// One full reduction of `f` against `basis`: every term of the result is
/// reduced.
pub fn normal_form(f: &Polynomial, basis: &[Polynomial], ring: RingSpec) -> Polynomial {
    let mut rest = f.clone();
    let mut out: Vec<(Monomial, u64)> = Vec::new();
    'outer: while let Some((lm, lc)) = rest.leading() {
        let lm = *lm;
        for g in basis {
            let (gm, gc) = match g.leading() {
                Some(x) => x,
                None => continue,
            };
            if let Some(q) = lm.checked_div(gm) {
                let factor = ring.field.mul(lc, ring.field.inv(gc));
                rest = rest.sub_scaled_shifted(factor, &q, g);
                continue 'outer;
            }
        }
        // No reducer: move the leading term to the result. The leading
        // monomial strictly decreases, so `out` stays sorted.
        out.push((lm, lc));
        rest = Polynomial::from_sorted_terms(ring, rest.terms()[1..].to_vec());
    }
    Polynomial::from_sorted_terms(ring, out)
}

struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
    sugar: u32,
}

/// Buchberger's algorithm returning the reduced Gröbner basis.
pub fn buchberger(
    ring: RingSpec,
    gens: &[Polynomial],
    budget: GbBudget,
) -> Result<Vec<Polynomial>> {
    let mut basis: Vec<Polynomial> = Vec::new();
    let mut sugars: Vec<u32> = Vec::new();
    let mut pairs: Vec<Pair> = Vec::new();

    let mut inputs: Vec<Polynomial> = gens
        .iter()
        .filter(|g| !g.is_zero())
        .map(|g| {
            if g.ring().order == ring.order {
                g.clone()
            } else {
                g.with_order(ring.order)
            }
        })
        .collect();
    // Feeding smaller polynomials first keeps early reducers cheap.
    inputs.sort_by_key(|g| (g.degree().unwrap_or(0), g.terms().len()));

    let mut reductions: u64 = 0;

    let add_poly = |h: Polynomial,
                    sugar: u32,
                    basis: &mut Vec<Polynomial>,
                    sugars: &mut Vec<u32>,
                    pairs: &mut Vec<Pair>| {
        let t = basis.len();
        let lt_h = *h.leading().unwrap().0;
        // Gebauer-Moeller update. New pairs (i, t):
        let mut cand: Vec<Pair> = (0..t)
            .map(|i| {
                let lt_i = *basis[i].leading().unwrap().0;
                let lcm = lt_i.lcm(&lt_h);
                let sug = (sugars[i] + (lcm.degree() - lt_i.degree()))
                    .max(sugar + (lcm.degree() - lt_h.degree()));
                Pair {
                    i,
                    j: t,
                    lcm,
                    sugar: sug,
                }
            })
            .collect();
        let mut kept: Vec<Pair> = Vec::new();
        while let Some(p) = cand.pop() {
            let lt_i = *basis[p.i].leading().unwrap().0;
            let coprime = lt_i.coprime(&lt_h);
            let dominated = cand.iter().any(|q| q.lcm.divides(&p.lcm) && q.lcm != p.lcm)
                || kept.iter().any(|q| q.lcm.divides(&p.lcm));
            if coprime {
                continue; // Buchberger's first criterion.
            }
            if !dominated {
                kept.push(p);
            }
        }
        // Prune old pairs via the chain criterion.
        pairs.retain(|p| {
            !(lt_h.divides(&p.lcm)
                && basis[p.i].leading().unwrap().0.lcm(&lt_h) != p.lcm
                && basis[p.j].leading().unwrap().0.lcm(&lt_h) != p.lcm)
        });
        pairs.extend(kept);
        basis.push(h);
        sugars.push(sugar);
    };

    for g in inputs {
        let sugar = g.degree().unwrap_or(0);
        let h = normal_form(&g, &basis, ring);
        if !h.is_zero() {
            add_poly(h.monic(), sugar, &mut basis, &mut sugars, &mut pairs);
        }
    }

    while !pairs.is_empty() {
        // Sugar strategy: smallest sugar first, ties by lcm degree.
        let best = pairs
            .iter()
            .enumerate()
            .min_by_key(|(_, p)| (p.sugar, p.lcm.degree()))
            .map(|(k, _)| k)
            .unwrap();
        let p = pairs.swap_remove(best);

        reductions += 1;
        if reductions > budget.max_spair_reductions {
            return Err(Error::BudgetExceeded(format!(
                "S-pair reduction cap {} reached",
                budget.max_spair_reductions
            )));
        }

        let (fi, fj) = (&basis[p.i], &basis[p.j]);
        let (mi, _) = fi.leading().unwrap();
        let (mj, _) = fj.leading().unwrap();
        let qi = p.lcm.checked_div(mi).unwrap();
        let qj = p.lcm.checked_div(mj).unwrap();
        // Both are monic, so the S-polynomial is qi*fi - qj*fj.
        let spoly = shift(fi, &qi).sub(&shift(fj, &qj));
        let h = normal_form(&spoly, &basis, ring);
        if !h.is_zero() {
            add_poly(h.monic(), p.sugar, &mut basis, &mut sugars, &mut pairs);
        }
    }

    Ok(reduce_basis(basis, ring))
}

fn shift(f: &Polynomial, m: &Monomial) -> Polynomial {
    // Multiplying every term by one monomial preserves the sort order.
    Polynomial::from_sorted_terms(
        f.ring(),
        f.terms().iter().map(|&(mm, c)| (mm.mul(m), c)).collect(),
    )
}

/// Interreduce a Gröbner basis into the reduced basis: minimal leading terms,
/// fully reduced tails, monic, sorted by leading monomial.
fn reduce_basis(mut basis: Vec<Polynomial>, ring: RingSpec) -> Vec<Polynomial> {
    basis.retain(|g| !g.is_zero());
    // Minimalize: drop any element whose leading term is divisible by another's.
    let mut keep = vec![true; basis.len()];
    for i in 0..basis.len() {
        if !keep[i] {
            continue;
        }
        let mi = *basis[i].leading().unwrap().0;
        for j in 0..basis.len() {
            if i == j || !keep[j] {
                continue;
            }
            let mj = *basis[j].leading().unwrap().0;
            if mj.divides(&mi) && (mj != mi || j < i) {
                keep[i] = false;
                break;
            }
        }
    }
    let minimal: Vec<Polynomial> = basis
        .into_iter()
        .zip(keep)
        .filter_map(|(g, k)| k.then_some(g))
        .collect();
    // Tail-reduce each element against the others.
    let mut reduced = Vec::with_capacity(minimal.len());
    for i in 0..minimal.len() {
        let others: Vec<Polynomial> = minimal
            .iter()
            .enumerate()
            .filter(|&(j, _g)| j != i)
            .map(|(_j, g)| g.clone())
            .collect();
        let nf = normal_form(&minimal[i], &others, ring);
        if !nf.is_zero() {
            reduced.push(nf.monic());
        }
    }
    // Descending by leading monomial.
    reduced.sort_by(|a, b| {
        b.leading()
            .unwrap()
            .0
            .cmp_order(a.leading().unwrap().0, ring.n_vars, ring.order)
    });
    reduced
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::FieldSpec;

    fn r4() -> RingSpec {
        RingSpec::p3(FieldSpec::default_prime())
    }

    fn b() -> GbBudget {
        GbBudget::default()
    }

    fn parse(s: &str, r: RingSpec) -> Polynomial {
        Polynomial::parse(s, r).unwrap()
    }

    #[test]
    fn principal_ideal_gb_is_monic_generator() {
        let r = r4();
        let f = parse("3*x0^2 + 6*x1*x2", r);
        let ideal = Ideal::new(r, vec![f.clone()]).unwrap();
        let gb = ideal.gb(b()).unwrap();
        assert_eq!(gb.len(), 1);
        assert_eq!(gb[0], f.monic());
    }

    #[test]
    fn linear_ideal_already_reduced() {
        let r = r4();
        let ideal = Ideal::new(r, vec![parse("x0", r), parse("x1", r)]).unwrap();
        let gb = ideal.gb(b()).unwrap();
        assert_eq!(gb.len(), 2);
        assert_eq!(*gb, vec![parse("x0", r), parse("x1", r)]);
    }

    #[test]
    fn buchberger_criterion_holds_exhaustively() {
        // ((x+y)^3, z) as generators: reduced basis of 2 elements and every
        // S-polynomial of basis pairs reduces to zero.
        let r = RingSpec::p2(FieldSpec::default_prime());
        let ideal = Ideal::new(r, vec![parse("(x+y)^3", r), parse("z", r)]).unwrap();
        let gb = ideal.gb(b()).unwrap();
        assert_eq!(gb.len(), 2);
        for i in 0..gb.len() {
            for j in i + 1..gb.len() {
                let (mi, _) = gb[i].leading().unwrap();
                let (mj, _) = gb[j].leading().unwrap();
                let lcm = mi.lcm(mj);
                let qi = lcm.checked_div(mi).unwrap();
                let qj = lcm.checked_div(mj).unwrap();
                let s = super::shift(&gb[i], &qi).sub(&super::shift(&gb[j], &qj));
                assert!(normal_form(&s, &gb, r).is_zero());
            }
        }
    }

    #[test]
    fn groebner_is_idempotent() {
        let r = r4();
        let ideal = Ideal::new(r, vec![parse("x0*x1 - x2^2", r), parse("x0^2", r)]).unwrap();
        let once = ideal.groebner(MonomialOrder::GrevLex, b()).unwrap();
        let twice = once.groebner(MonomialOrder::GrevLex, b()).unwrap();
        assert_eq!(once.cached_gb().unwrap(), twice.cached_gb().unwrap());
    }

    #[test]
    fn normal_form_membership() {
        let r = r4();
        let ideal = Ideal::new(r, vec![parse("x0^2 - x1*x2", r), parse("x3", r)]).unwrap();
        let member = parse("(x0^2 - x1*x2)*(x0 + 5*x3) + x3*x2^2", r);
        assert!(ideal.contains(&member, b()).unwrap());
        assert!(!ideal.contains(&parse("x0^2", r), b()).unwrap());
    }

    #[test]
    fn rejects_inhomogeneous_public_ideals() {
        let r = r4();
        assert!(Ideal::new(r, vec![parse("x0 + 1", r)]).is_err());
    }

    #[test]
    fn twisted_cubic_gb_in_grevlex_and_lex_agree_on_membership() {
        let r = r4();
        let gens = vec![
            parse("x0*x2 - x1^2", r),
            parse("x0*x3 - x1*x2", r),
            parse("x1*x3 - x2^2", r),
        ];
        let ideal = Ideal::new(r, gens).unwrap();
        let lex = ideal.groebner(MonomialOrder::Lex, b()).unwrap();
        let f = parse("(x0*x2 - x1^2)*x3 + (x1*x3 - x2^2)*x0", r);
        assert!(ideal.contains(&f, b()).unwrap());
        assert!(lex.contains(&f, b()).unwrap());
    }
}
