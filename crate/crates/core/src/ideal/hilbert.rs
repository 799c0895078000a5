//! Hilbert functions via standard monomials.
//!
//! dim [R/I]_t is the number of degree-t monomials outside the leading-term
//! ideal of a Gröbner basis; the h-vector (first differences) and the Hilbert
//! polynomial data (scheme degree and dimension) are read off the tail once
//! the difference cascade stabilizes.

use super::{GbBudget, Ideal};
use crate::error::Result;
use crate::poly::Monomial;
use serde::Serialize;
use std::collections::BTreeMap;

#[derive(Clone, Debug, Serialize)]
pub struct HilbertData {
    /// t -> dim [R/I]_t
    pub dims_quotient: BTreeMap<i64, usize>,
    /// t -> dim [I]_t
    pub dims_ideal: BTreeMap<i64, usize>,
    /// First differences of the quotient dimensions, for one-dimensional
    /// (cone over points) quotients; trailing zeros trimmed.
    pub h_vector: Option<Vec<usize>>,
    /// (degree of scheme, projective dimension of scheme), when the
    /// difference cascade stabilized inside the computed window.
    pub hilbert_polynomial: Option<(usize, usize)>,
}

impl HilbertData {
    pub fn to_json(&self) -> serde_json::Value {
        let dims: BTreeMap<String, usize> = self
            .dims_quotient
            .iter()
            .map(|(t, d)| (t.to_string(), *d))
            .collect();
        serde_json::json!({
            "dims_quotient": dims,
            "h_vector": self.h_vector,
            "degree": self.hilbert_polynomial.map(|(d, _)| d),
            "dim": self.hilbert_polynomial.map(|(_, k)| k),
        })
    }
}

/// Hilbert function of R/I for 0 <= t <= t_max.
pub fn hilbert_function(ideal: &Ideal, t_max: i64, budget: GbBudget) -> Result<HilbertData> {
    let ring = ideal.ring();
    let gb = ideal.gb(budget)?;
    let lead: Vec<Monomial> = gb
        .iter()
        .filter_map(|g| g.leading().map(|(m, _)| *m))
        .collect();

    let mut dims_quotient = BTreeMap::new();
    let mut dims_ideal = BTreeMap::new();
    let mut values = Vec::new();
    for t in 0..=t_max.max(0) {
        let basis = ring.monomial_basis(t);
        let standard = basis
            .iter()
            .filter(|m| !lead.iter().any(|l| l.divides(m)))
            .count();
        dims_quotient.insert(t, standard);
        dims_ideal.insert(t, basis.len() - standard);
        values.push(standard as i64);
    }

    let (h_vector, hilbert_polynomial) = analyze_tail(&values);
    Ok(HilbertData {
        dims_quotient,
        dims_ideal,
        h_vector,
        hilbert_polynomial,
    })
}

/// Difference cascade on the computed window. Stable means the last three
/// entries of a difference row agree.
fn analyze_tail(values: &[i64]) -> (Option<Vec<usize>>, Option<(usize, usize)>) {
    if values.len() < 4 {
        return (None, None);
    }
    let mut rows: Vec<Vec<i64>> = vec![values.to_vec()];
    for _ in 0..4 {
        let prev = rows.last().unwrap();
        if prev.len() < 2 {
            break;
        }
        let mut next = Vec::with_capacity(prev.len());
        next.push(prev[0]); // difference against the empty degree -1
        for i in 1..prev.len() {
            next.push(prev[i] - prev[i - 1]);
        }
        rows.push(next);
    }

    let stable = |row: &[i64]| {
        row.len() >= 3 && {
            let tail = &row[row.len() - 3..];
            tail[0] == tail[1] && tail[1] == tail[2]
        }
    };

    // Scheme (projective) dimension k: the (k+1)-st difference row dies.
    let mut hp = None;
    for k in 0..rows.len().saturating_sub(1) {
        if stable(&rows[k + 1]) && *rows[k + 1].last().unwrap() == 0 {
            let degree = *rows[k].last().unwrap();
            if degree >= 0 {
                hp = Some((degree as usize, k));
            }
            break;
        }
    }

    let h_vector = match hp {
        Some((_, 0)) => {
            // Zero-dimensional scheme: first differences, trailing zeros trimmed.
            let mut h: Vec<i64> = rows[1].clone();
            while h.last() == Some(&0) {
                h.pop();
            }
            if h.iter().all(|&v| v >= 0) {
                Some(h.into_iter().map(|v| v as usize).collect())
            } else {
                None
            }
        }
        _ => None,
    };
    (h_vector, hp)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::FieldSpec;
    use crate::poly::{Polynomial, RingSpec};

    fn b() -> GbBudget {
        GbBudget::default()
    }

    #[test]
    fn zero_ideal_full_polynomial_ring() {
        let r = RingSpec::p3(FieldSpec::default_prime());
        let data = hilbert_function(&Ideal::zero(r), 8, b()).unwrap();
        for t in 0..=8i64 {
            assert_eq!(data.dims_quotient[&t], r.dim_t(t));
            assert_eq!(data.dims_ideal[&t], 0);
        }
    }

    #[test]
    fn smooth_quadric_dims() {
        let r = RingSpec::p3(FieldSpec::default_prime());
        let q = Polynomial::parse("x0*x3 - x1*x2", r).unwrap();
        let data = hilbert_function(&Ideal::new(r, vec![q]).unwrap(), 10, b()).unwrap();
        for t in 0..=10i64 {
            assert_eq!(data.dims_quotient[&t], ((t + 1) * (t + 1)) as usize);
        }
        // Surface of degree 2 in P3.
        assert_eq!(data.hilbert_polynomial, Some((2, 2)));
    }

    #[test]
    fn single_point_is_degree_one() {
        let r = RingSpec::p3(FieldSpec::default_prime());
        let gens = vec![
            Polynomial::parse("x0", r).unwrap(),
            Polynomial::parse("x1", r).unwrap(),
            Polynomial::parse("x2", r).unwrap(),
        ];
        let data = hilbert_function(&Ideal::new(r, gens).unwrap(), 6, b()).unwrap();
        assert_eq!(data.hilbert_polynomial, Some((1, 0)));
        assert_eq!(data.h_vector, Some(vec![1]));
    }

    #[test]
    fn complete_intersection_of_two_conics_in_plane() {
        // Four points in P2: h-vector (1, 2, 1).
        let r = RingSpec::p2(FieldSpec::default_prime());
        let gens = vec![
            Polynomial::parse("x^2 - y^2", r).unwrap(),
            Polynomial::parse("x*y - z^2", r).unwrap(),
        ];
        let data = hilbert_function(&Ideal::new(r, gens).unwrap(), 8, b()).unwrap();
        assert_eq!(data.hilbert_polynomial, Some((4, 0)));
        assert_eq!(data.h_vector, Some(vec![1, 2, 1]));
        let deg: usize = data.h_vector.unwrap().iter().sum();
        assert_eq!(deg, 4);
    }

    #[test]
    fn ideal_plus_quotient_dims_add_up() {
        let r = RingSpec::p3(FieldSpec::default_prime());
        let gens = vec![Polynomial::parse("x0^2 + x1*x3", r).unwrap()];
        let data = hilbert_function(&Ideal::new(r, gens).unwrap(), 9, b()).unwrap();
        for t in 0..=9i64 {
            assert_eq!(data.dims_ideal[&t] + data.dims_quotient[&t], r.dim_t(t));
        }
    }
}
