//! Sparse multivariate polynomial arithmetic over a prime field, together
//! with monomial orders, ring descriptors, binary forms for parametrized
//! components, and the text parser/printer.

mod binary;
pub mod monomial;
mod parse;

pub use binary::BinaryForm;
pub use monomial::{binomial, dim_forms, monomials_of_degree, Monomial, MonomialOrder, MAX_VARS};
pub use parse::{parse_ideal_file, print_ideal_file};

use crate::error::{Error, Result};
use crate::gf::FieldSpec;
use serde::{Deserialize, Serialize};
use std::collections::HashMap;

/// Ambient polynomial ring: number of variables, coefficient field, monomial
/// order. 4 variables for P3, 3 for P2, 2 for a parametrizing line.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RingSpec {
    pub n_vars: usize,
    pub field: FieldSpec,
    pub order: MonomialOrder,
}

impl RingSpec {
    pub fn new(n_vars: usize, field: FieldSpec, order: MonomialOrder) -> Result<Self> {
        if n_vars == 0 || n_vars > MAX_VARS {
            return Err(Error::Invalid(format!(
                "n_vars must be in 1..={MAX_VARS}, got {n_vars}"
            )));
        }
        Ok(RingSpec {
            n_vars,
            field,
            order,
        })
    }

    /// K[x0..x3] with grevlex: the coordinate ring of P3.
    pub fn p3(field: FieldSpec) -> Self {
        RingSpec {
            n_vars: 4,
            field,
            order: MonomialOrder::GrevLex,
        }
    }

    /// K[x0..x2] with grevlex: the coordinate ring of P2.
    pub fn p2(field: FieldSpec) -> Self {
        RingSpec {
            n_vars: 3,
            field,
            order: MonomialOrder::GrevLex,
        }
    }

    pub fn var_name(&self, i: usize) -> String {
        format!("x{i}")
    }

    /// All monomials of degree `t` in the declared order (empty for t < 0).
    pub fn monomial_basis(&self, t: i64) -> Vec<Monomial> {
        if t < 0 {
            return Vec::new();
        }
        monomials_of_degree(self.n_vars, t as u32, self.order)
    }

    /// dim [R]_t = C(t + n − 1, n − 1).
    pub fn dim_t(&self, t: i64) -> usize {
        dim_forms(self.n_vars, t)
    }

    pub fn same_ring(&self, other: &RingSpec) -> Result<()> {
        if self.n_vars != other.n_vars || self.field != other.field {
            return Err(Error::RingMismatch(format!(
                "{} vars over GF({}) vs {} vars over GF({})",
                self.n_vars,
                self.field.p(),
                other.n_vars,
                other.field.p()
            )));
        }
        Ok(())
    }

    pub fn with_order(&self, order: MonomialOrder) -> RingSpec {
        RingSpec { order, ..*self }
    }
}

/// Sparse polynomial: terms sorted descending in the ring's monomial order,
/// no zero coefficients stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polynomial {
    ring: RingSpec,
    terms: Vec<(Monomial, u64)>,
}

impl Polynomial {
    pub fn zero(ring: RingSpec) -> Self {
        Polynomial {
            ring,
            terms: Vec::new(),
        }
    }

    pub fn constant(ring: RingSpec, c: u64) -> Self {
        let c = c % ring.field.p();
        if c == 0 {
            return Self::zero(ring);
        }
        Polynomial {
            ring,
            terms: vec![(Monomial::one(), c)],
        }
    }

    pub fn variable(ring: RingSpec, i: usize) -> Self {
        assert!(i < ring.n_vars);
        Polynomial {
            ring,
            terms: vec![(Monomial::variable(i), 1)],
        }
    }

    pub fn from_terms(ring: RingSpec, terms: Vec<(Monomial, u64)>) -> Self {
        let mut map: HashMap<Monomial, u64> = HashMap::with_capacity(terms.len());
        let f = ring.field;
        for (m, c) in terms {
            let c = c % f.p();
            if c == 0 {
                continue;
            }
            let e = map.entry(m).or_insert(0);
            *e = f.add(*e, c);
        }
        let mut terms: Vec<(Monomial, u64)> = map.into_iter().filter(|&(_, c)| c != 0).collect();
        terms.sort_by(|a, b| b.0.cmp_order(&a.0, ring.n_vars, ring.order));
        Polynomial { ring, terms }
    }

    /// Terms already sorted descending in the ring order, no zeros: used on
    /// hot paths to skip the re-sort in `from_terms`.
    pub(crate) fn from_sorted_terms(ring: RingSpec, terms: Vec<(Monomial, u64)>) -> Self {
        debug_assert!(terms.windows(2).all(|w| {
            w[0].0.cmp_order(&w[1].0, ring.n_vars, ring.order) == std::cmp::Ordering::Greater
        }));
        debug_assert!(terms.iter().all(|&(_, c)| c != 0 && c < ring.field.p()));
        Polynomial { ring, terms }
    }

    /// Linear form c0·x0 + ... given its coefficient vector.
    pub fn linear_form(ring: RingSpec, coeffs: &[u64]) -> Self {
        assert_eq!(coeffs.len(), ring.n_vars);
        Self::from_terms(
            ring,
            coeffs
                .iter()
                .enumerate()
                .map(|(i, &c)| (Monomial::variable(i), c))
                .collect(),
        )
    }

    #[inline]
    pub fn ring(&self) -> RingSpec {
        self.ring
    }

    #[inline]
    pub fn terms(&self) -> &[(Monomial, u64)] {
        &self.terms
    }

    #[inline]
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0 == Monomial::one()
    }

    pub fn leading(&self) -> Option<(&Monomial, u64)> {
        self.terms.first().map(|(m, c)| (m, *c))
    }

    pub fn degree(&self) -> Option<u32> {
        self.terms.iter().map(|(m, _)| m.degree()).max()
    }

    /// The common degree of all terms; `None` for zero or inhomogeneous input.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let d = self.terms.first()?.0.degree();
        self.terms.iter().all(|(m, _)| m.degree() == d).then_some(d)
    }

    pub fn is_homogeneous(&self) -> bool {
        self.is_zero() || self.homogeneous_degree().is_some()
    }

    pub fn coefficient(&self, m: &Monomial) -> u64 {
        self.terms
            .iter()
            .find(|(mm, _)| mm == m)
            .map_or(0, |&(_, c)| c)
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        debug_assert_eq!(self.ring, other.ring);
        let f = self.ring.field;
        let (n, ord) = (self.ring.n_vars, self.ring.order);
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() && j < other.terms.len() {
            let (ma, ca) = self.terms[i];
            let (mb, cb) = other.terms[j];
            match ma.cmp_order(&mb, n, ord) {
                std::cmp::Ordering::Greater => {
                    out.push((ma, ca));
                    i += 1;
                }
                std::cmp::Ordering::Less => {
                    out.push((mb, cb));
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    let c = f.add(ca, cb);
                    if c != 0 {
                        out.push((ma, c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.terms[i..]);
        out.extend_from_slice(&other.terms[j..]);
        Polynomial {
            ring: self.ring,
            terms: out,
        }
    }

    pub fn neg(&self) -> Polynomial {
        let f = self.ring.field;
        Polynomial {
            ring: self.ring,
            terms: self.terms.iter().map(|&(m, c)| (m, f.neg(c))).collect(),
        }
    }

    pub fn sub(&self, other: &Polynomial) -> Polynomial {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: u64) -> Polynomial {
        let f = self.ring.field;
        let c = c % f.p();
        if c == 0 {
            return Self::zero(self.ring);
        }
        Polynomial {
            ring: self.ring,
            terms: self.terms.iter().map(|&(m, a)| (m, f.mul(a, c))).collect(),
        }
    }

    /// self − c·m·other, the basic reduction step.
    pub fn sub_scaled_shifted(&self, c: u64, m: &Monomial, other: &Polynomial) -> Polynomial {
        let f = self.ring.field;
        let shifted = Polynomial {
            ring: other.ring,
            terms: other
                .terms
                .iter()
                .map(|&(mm, cc)| (mm.mul(m), f.mul(cc, c)))
                .collect(),
        };
        self.sub(&shifted)
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        debug_assert_eq!(self.ring, other.ring);
        let f = self.ring.field;
        let mut map: HashMap<Monomial, u64> =
            HashMap::with_capacity(self.terms.len() * other.terms.len());
        for &(ma, ca) in &self.terms {
            for &(mb, cb) in &other.terms {
                let m = ma.mul(&mb);
                let e = map.entry(m).or_insert(0);
                *e = f.add(*e, f.mul(ca, cb));
            }
        }
        let mut terms: Vec<(Monomial, u64)> = map.into_iter().filter(|&(_, c)| c != 0).collect();
        terms.sort_by(|a, b| b.0.cmp_order(&a.0, self.ring.n_vars, self.ring.order));
        Polynomial {
            ring: self.ring,
            terms,
        }
    }

    pub fn pow(&self, e: u32) -> Polynomial {
        let mut acc = Polynomial::constant(self.ring, 1);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Make the leading coefficient 1.
    pub fn monic(&self) -> Polynomial {
        match self.leading() {
            None => self.clone(),
            Some((_, c)) => self.scale(self.ring.field.inv(c)),
        }
    }

    pub fn partial_derivative(&self, var: usize) -> Polynomial {
        let f = self.ring.field;
        let terms = self
            .terms
            .iter()
            .filter_map(|&(m, c)| {
                let e = m.exp(var);
                if e == 0 {
                    return None;
                }
                let mut m2 = m;
                m2.set_exp(var, e - 1);
                Some((m2, f.mul(c, e as u64 % f.p())))
            })
            .collect();
        Polynomial::from_terms(self.ring, terms)
    }

    /// Ring homomorphism sending variable i to `images[i]` (all in one target
    /// ring). For homogeneous input with images homogeneous of one common
    /// degree d, the result is homogeneous of degree d·deg(f).
    pub fn substitute(&self, images: &[Polynomial]) -> Result<Polynomial> {
        if images.len() != self.ring.n_vars {
            return Err(Error::ArityMismatch {
                expected: self.ring.n_vars,
                got: images.len(),
            });
        }
        let target = images
            .first()
            .map(|f| f.ring())
            .ok_or_else(|| Error::Invalid("substitute needs at least one image".into()))?;
        let mut common: Option<u32> = None;
        for img in images {
            img.ring().same_ring(&target)?;
            if let Some(d) = img.homogeneous_degree() {
                match common {
                    None => common = Some(d),
                    Some(c) if c == d => {}
                    _ => return Err(Error::Inhomogeneous("images have different degrees".into())),
                }
            } else if !img.is_zero() {
                return Err(Error::Inhomogeneous("image is not homogeneous".into()));
            }
        }
        let mut acc = Polynomial::zero(target);
        for &(m, c) in &self.terms {
            let mut term = Polynomial::constant(target, c);
            for (v, img) in images.iter().enumerate() {
                for _ in 0..m.exp(v) {
                    term = term.mul(img);
                }
            }
            acc = acc.add(&term);
        }
        Ok(acc)
    }

    /// Restrict through a parametrization: substitute binary forms for the
    /// variables, yielding a binary form of degree d·t for homogeneous input.
    pub fn restrict(&self, param: &[BinaryForm]) -> Result<BinaryForm> {
        if param.len() != self.ring.n_vars {
            return Err(Error::ArityMismatch {
                expected: self.ring.n_vars,
                got: param.len(),
            });
        }
        let d = param[0].degree();
        let f = self.ring.field;
        let t = self
            .homogeneous_degree()
            .ok_or_else(|| Error::Inhomogeneous("restrict needs homogeneous input".into()))?;
        let mut acc = BinaryForm::zero(f, d * t);
        for &(m, c) in &self.terms {
            let mut term = BinaryForm::one(f);
            for (v, form) in param.iter().enumerate() {
                for _ in 0..m.exp(v) {
                    term = term.mul(form);
                }
            }
            acc = acc.add(&term.scale(c));
        }
        Ok(acc)
    }

    pub fn evaluate(&self, point: &[u64]) -> u64 {
        let f = self.ring.field;
        let mut acc = 0;
        for &(m, c) in &self.terms {
            let mut v = c;
            for (i, &x) in point.iter().enumerate().take(self.ring.n_vars) {
                v = f.mul(v, f.pow(x, m.exp(i) as u64));
            }
            acc = f.add(acc, v);
        }
        acc
    }

    /// Same polynomial viewed under a different monomial order.
    pub fn with_order(&self, order: MonomialOrder) -> Polynomial {
        let ring = self.ring.with_order(order);
        let mut terms = self.terms.clone();
        terms.sort_by(|a, b| b.0.cmp_order(&a.0, ring.n_vars, order));
        Polynomial { ring, terms }
    }

    /// Move into a wider/narrower ring, shifting variable indices by `shift`.
    pub fn map_vars(&self, target: RingSpec, shift: &[usize]) -> Polynomial {
        assert_eq!(shift.len(), self.ring.n_vars);
        let terms = self
            .terms
            .iter()
            .map(|&(m, c)| {
                let mut m2 = Monomial::one();
                for (v, &slot) in shift.iter().enumerate() {
                    let e = m.exp(v);
                    if e > 0 {
                        m2.set_exp(slot, e);
                    }
                }
                (m2, c)
            })
            .collect();
        Polynomial::from_terms(target, terms)
    }
}

impl std::fmt::Display for Polynomial {
    fn fmt(&self, out: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.terms.is_empty() {
            return write!(out, "0");
        }
        let mut first = true;
        for (m, c) in &self.terms {
            if !first {
                write!(out, " + ")?;
            }
            first = false;
            let mut printed = false;
            if *c != 1 || m.degree() == 0 {
                write!(out, "{c}")?;
                printed = true;
            }
            for v in 0..self.ring.n_vars {
                let e = m.exp(v);
                if e == 0 {
                    continue;
                }
                if printed {
                    write!(out, "*")?;
                }
                printed = true;
                write!(out, "{}", self.ring.var_name(v))?;
                if e > 1 {
                    write!(out, "^{e}")?;
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::FieldSpec;

    fn r4() -> RingSpec {
        RingSpec::p3(FieldSpec::default_prime())
    }

    #[test]
    fn monomial_basis_examples() {
        assert_eq!(r4().monomial_basis(0).len(), 1);
        assert_eq!(r4().monomial_basis(2).len(), 10);
        assert_eq!(
            RingSpec::p2(FieldSpec::default_prime())
                .monomial_basis(7)
                .len(),
            36
        );
        assert!(r4().monomial_basis(-3).is_empty());
    }

    #[test]
    fn arithmetic_and_homogeneity() {
        let r = r4();
        let x0 = Polynomial::variable(r, 0);
        let x1 = Polynomial::variable(r, 1);
        let s = x0.add(&x1);
        let cube = s.pow(3);
        assert_eq!(cube.terms().len(), 4);
        assert_eq!(cube.homogeneous_degree(), Some(3));
        let zero = x0.mul(&x1).sub(&x1.mul(&x0));
        assert!(zero.is_zero());

        let f = s.mul(&cube);
        assert_eq!(f.degree(), Some(4));
        assert_eq!(
            f.homogeneous_degree().unwrap(),
            s.homogeneous_degree().unwrap() + cube.homogeneous_degree().unwrap()
        );
    }

    #[test]
    fn substitute_segre_kills_quadric() {
        let field = FieldSpec::default_prime();
        let r = RingSpec::p3(field);
        // x0*x3 - x1*x2 restricted to the Segre parametrization (sv, sw, uv, uw)
        let q = Polynomial::variable(r, 0)
            .mul(&Polynomial::variable(r, 3))
            .sub(&Polynomial::variable(r, 1).mul(&Polynomial::variable(r, 2)));
        let r4p = RingSpec::new(4, field, MonomialOrder::GrevLex).unwrap();
        let s = Polynomial::variable(r4p, 0);
        let u = Polynomial::variable(r4p, 1);
        let v = Polynomial::variable(r4p, 2);
        let w = Polynomial::variable(r4p, 3);
        let images = [s.mul(&v), s.mul(&w), u.mul(&v), u.mul(&w)];
        assert!(q.substitute(&images).unwrap().is_zero());
    }

    #[test]
    fn substitute_is_a_ring_map() {
        let field = FieldSpec::default_prime();
        let r = r4();
        let r2 = RingSpec::new(2, field, MonomialOrder::GrevLex).unwrap();
        let s = Polynomial::variable(r2, 0);
        let u = Polynomial::variable(r2, 1);
        let images = [s.add(&u), s.sub(&u), s.scale(3), u.scale(7).add(&s)];
        let f = Polynomial::from_terms(
            r,
            vec![
                (Monomial::from_exps(&[2, 0, 0, 0]), 1),
                (Monomial::from_exps(&[0, 1, 1, 0]), 5),
            ],
        );
        let g = Polynomial::from_terms(
            r,
            vec![
                (Monomial::from_exps(&[1, 0, 0, 1]), 2),
                (Monomial::from_exps(&[0, 0, 2, 0]), 11),
            ],
        );
        let lhs = f.mul(&g).substitute(&images).unwrap();
        let rhs = f
            .substitute(&images)
            .unwrap()
            .mul(&g.substitute(&images).unwrap());
        assert_eq!(lhs, rhs);
        let lhs2 = f.add(&g).substitute(&images).unwrap();
        let rhs2 = f
            .substitute(&images)
            .unwrap()
            .add(&g.substitute(&images).unwrap());
        assert_eq!(lhs2, rhs2);
    }

    #[test]
    fn substitute_rejects_bad_images() {
        let r = r4();
        let x0 = Polynomial::variable(r, 0);
        assert!(matches!(
            x0.substitute(std::slice::from_ref(&x0)),
            Err(Error::ArityMismatch { .. })
        ));
        let inhom = x0.add(&Polynomial::constant(r, 1));
        let imgs = [inhom.clone(), x0.clone(), x0.clone(), x0.clone()];
        assert!(matches!(x0.substitute(&imgs), Err(Error::Inhomogeneous(_))));
    }

    #[test]
    fn restrict_line_parametrization() {
        let field = FieldSpec::default_prime();
        let r = r4();
        // f = x0 restricted to the line (s, u, 0, 0) is s.
        let x0 = Polynomial::variable(r, 0);
        let param = [
            BinaryForm::linear(field, 1, 0),
            BinaryForm::linear(field, 0, 1),
            BinaryForm::zero(field, 1),
            BinaryForm::zero(field, 1),
        ];
        let restricted = x0.restrict(&param).unwrap();
        assert_eq!(restricted.coeffs(), &[1, 0]);
    }

    #[test]
    fn derivative_basic() {
        let r = r4();
        let x0 = Polynomial::variable(r, 0);
        let f = x0.pow(3);
        let df = f.partial_derivative(0);
        assert_eq!(df, x0.pow(2).scale(3));
        assert!(f.partial_derivative(2).is_zero());
    }
}
