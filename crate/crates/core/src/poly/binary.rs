//! Homogeneous binary forms in the parameter variables (s, u) of a rational
//! component. Coefficient `i` multiplies `s^(d−i) u^i`.

use crate::error::{Error, Result};
use crate::gf::FieldSpec;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BinaryForm {
    field: FieldSpec,
    coeffs: Vec<u64>,
}

impl BinaryForm {
    pub fn new(field: FieldSpec, coeffs: Vec<u64>) -> Self {
        assert!(!coeffs.is_empty(), "binary form needs degree >= 0");
        let p = field.p();
        BinaryForm {
            field,
            coeffs: coeffs.into_iter().map(|c| c % p).collect(),
        }
    }

    pub fn zero(field: FieldSpec, degree: u32) -> Self {
        BinaryForm {
            field,
            coeffs: vec![0; degree as usize + 1],
        }
    }

    pub fn one(field: FieldSpec) -> Self {
        BinaryForm {
            field,
            coeffs: vec![1],
        }
    }

    /// a·s + b·u
    pub fn linear(field: FieldSpec, a: u64, b: u64) -> Self {
        Self::new(field, vec![a, b])
    }

    #[inline]
    pub fn degree(&self) -> u32 {
        (self.coeffs.len() - 1) as u32
    }

    #[inline]
    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn add(&self, other: &BinaryForm) -> BinaryForm {
        assert_eq!(self.degree(), other.degree(), "degree mismatch in add");
        let f = self.field;
        BinaryForm {
            field: f,
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(&a, &b)| f.add(a, b))
                .collect(),
        }
    }

    pub fn scale(&self, c: u64) -> BinaryForm {
        let f = self.field;
        BinaryForm {
            field: f,
            coeffs: self.coeffs.iter().map(|&a| f.mul(a, c)).collect(),
        }
    }

    pub fn mul(&self, other: &BinaryForm) -> BinaryForm {
        let f = self.field;
        let mut out = vec![0u64; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                if b == 0 {
                    continue;
                }
                out[i + j] = f.add(out[i + j], f.mul(a, b));
            }
        }
        BinaryForm {
            field: f,
            coeffs: out,
        }
    }

    pub fn pow(&self, e: u32) -> BinaryForm {
        let mut acc = BinaryForm::one(self.field);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn eval(&self, s: u64, u: u64) -> u64 {
        let f = self.field;
        let d = self.degree() as u64;
        let mut acc = 0;
        for (i, &c) in self.coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let term = f.mul(c, f.mul(f.pow(s, d - i as u64), f.pow(u, i as u64)));
            acc = f.add(acc, term);
        }
        acc
    }

    /// Substitute (s, u) = (a·s' + b·u', c·s' + d·u').
    pub fn compose_linear(&self, a: u64, b: u64, c: u64, d: u64) -> BinaryForm {
        let f = self.field;
        let deg = self.degree();
        let row1 = BinaryForm::linear(f, a, b);
        let row2 = BinaryForm::linear(f, c, d);
        let mut acc = BinaryForm::zero(f, deg);
        for (i, &coef) in self.coeffs.iter().enumerate() {
            if coef == 0 {
                continue;
            }
            let term = row1
                .pow(deg - i as u32)
                .mul(&row2.pow(i as u32))
                .scale(coef);
            acc = acc.add(&term);
        }
        acc
    }

    /// Gcd (up to scalar), counting the common root at (0:1).
    ///
    /// Dehomogenizes to x = u/s and runs the Euclidean algorithm; the root at
    /// s = 0 is handled by comparing nominal and actual x-degrees.
    pub fn gcd(&self, other: &BinaryForm) -> BinaryForm {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        let inf_a = self.degree() as usize - univ_degree(&self.coeffs);
        let inf_b = other.degree() as usize - univ_degree(&other.coeffs);
        let m_inf = inf_a.min(inf_b);
        let mut a = trim(&self.coeffs);
        let mut b = trim(&other.coeffs);
        let f = self.field;
        while !b.is_empty() {
            let r = univ_rem(f, &a, &b);
            a = b;
            b = r;
        }
        let mut coeffs = a;
        coeffs.extend(std::iter::repeat_n(0, m_inf));
        BinaryForm::new(f, coeffs)
    }

    /// Degree of the gcd with `other`.
    pub fn gcd_degree(&self, other: &BinaryForm) -> usize {
        self.gcd(other).degree() as usize
    }

    /// Remainder of `self` modulo `divisor`, dehomogenized at x = u/s.
    ///
    /// Requires the divisor to have no root at (0:1) (full degree in x), which
    /// callers arrange by a parameter change. Returns the `deg(divisor)` low
    /// coefficients; the form is divisible iff all of them vanish.
    pub fn rem_coefficients(&self, divisor: &BinaryForm) -> Result<Vec<u64>> {
        let d = divisor.degree() as usize;
        if *divisor.coeffs.last().unwrap() == 0 {
            return Err(Error::DegenerateSection(
                "divisor has a root at the parameter point (0:1)".into(),
            ));
        }
        if (self.degree() as usize) < d {
            let mut out = self.coeffs.clone();
            out.resize(d, 0);
            return Ok(out);
        }
        let f = self.field;
        let mut rem = self.coeffs.clone();
        let lead_inv = f.inv(divisor.coeffs[d]);
        for i in (d..rem.len()).rev() {
            let c = rem[i];
            if c == 0 {
                continue;
            }
            let q = f.mul(c, lead_inv);
            for (j, &dv) in divisor.coeffs.iter().enumerate() {
                let idx = i - d + j;
                rem[idx] = f.sub(rem[idx], f.mul(q, dv));
            }
        }
        rem.truncate(d);
        Ok(rem)
    }
}

fn trim(coeffs: &[u64]) -> Vec<u64> {
    let mut v = coeffs.to_vec();
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

fn univ_degree(coeffs: &[u64]) -> usize {
    coeffs.iter().rposition(|&c| c != 0).unwrap_or(0)
}

fn univ_rem(f: FieldSpec, a: &[u64], b: &[u64]) -> Vec<u64> {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    let lead_inv = f.inv(b[db]);
    while r.len() > db {
        let c = *r.last().unwrap();
        if c != 0 {
            let q = f.mul(c, lead_inv);
            let shift = r.len() - 1 - db;
            for (j, &bv) in b.iter().enumerate() {
                r[shift + j] = f.sub(r[shift + j], f.mul(q, bv));
            }
        }
        r.pop();
        while r.last() == Some(&0) {
            r.pop();
        }
    }
    r
}
