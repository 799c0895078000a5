//! Ideal-theoretic operations built on the Buchberger core: intersection via
//! a one-variable elimination trick, colon ideals generator-by-generator,
//! saturation by iterated colon with Gröbner-equality stopping, elimination
//! of variable blocks, and the Jacobian singular locus.

use super::{buchberger, GbBudget, Ideal};
use crate::error::{Error, Result};
use crate::poly::{Monomial, MonomialOrder, Polynomial, RingSpec};

/// The irrelevant maximal ideal (x0, ..., x_{n-1}).
pub fn irrelevant_ideal(ring: RingSpec) -> Ideal {
    let gens = (0..ring.n_vars)
        .map(|i| Polynomial::variable(ring, i))
        .collect();
    Ideal::new_unchecked(ring, gens)
}

/// Split generators into their homogeneous components. Valid whenever the
/// generated ideal is homogeneous (each component then lies in the ideal).
fn homogeneous_components(ring: RingSpec, gens: &[Polynomial]) -> Vec<Polynomial> {
    let mut out = Vec::new();
    for g in gens {
        if g.is_homogeneous() {
            if !g.is_zero() {
                out.push(g.clone());
            }
            continue;
        }
        let max_deg = g.degree().unwrap();
        for d in 0..=max_deg {
            let part: Vec<(Monomial, u64)> = g
                .terms()
                .iter()
                .filter(|(m, _)| m.degree() == d)
                .cloned()
                .collect();
            if !part.is_empty() {
                out.push(Polynomial::from_terms(ring, part));
            }
        }
    }
    out
}

/// I ∩ J via the auxiliary-variable trick: eliminate t from t·I + (1−t)·J.
pub fn intersect(a: &Ideal, b: &Ideal, budget: GbBudget) -> Result<Ideal> {
    a.ring().same_ring(&b.ring())?;
    let ring = a.ring();
    if a.is_zero() || b.is_zero() {
        return Ok(Ideal::zero(ring));
    }
    if a.is_unit(budget)? {
        return Ok(b.clone());
    }
    if b.is_unit(budget)? {
        return Ok(a.clone());
    }

    let ext = RingSpec::new(ring.n_vars + 1, ring.field, MonomialOrder::Block(1))?;
    let shift: Vec<usize> = (1..=ring.n_vars).collect();
    let t = Polynomial::variable(ext, 0);
    let one_minus_t = Polynomial::constant(ext, 1).sub(&t);
    let mut gens = Vec::with_capacity(a.generators().len() + b.generators().len());
    for f in a.generators() {
        gens.push(t.mul(&f.map_vars(ext, &shift)));
    }
    for g in b.generators() {
        gens.push(one_minus_t.mul(&g.map_vars(ext, &shift)));
    }
    let basis = buchberger(ext, &gens, budget)?;

    // Drop the aux slot; only exponent-zero entries remain there.
    let mut drop_map = vec![0usize; ring.n_vars + 1];
    for (i, slot) in drop_map.iter_mut().enumerate().skip(1) {
        *slot = i - 1;
    }
    let kept: Vec<Polynomial> = basis
        .iter()
        .filter(|p| p.terms().iter().all(|(m, _)| m.exp(0) == 0))
        .map(|p| p.map_vars(ring, &drop_map))
        .collect();
    // I ∩ J is homogeneous for homogeneous inputs, so components may be split.
    Ok(Ideal::new_unchecked(
        ring,
        homogeneous_components(ring, &kept),
    ))
}

/// Left fold of pairwise intersections.
pub fn intersect_many(ideals: &[Ideal], budget: GbBudget) -> Result<Ideal> {
    let mut iter = ideals.iter();
    let first = iter
        .next()
        .ok_or_else(|| Error::Invalid("intersect_many needs at least one ideal".into()))?;
    let mut acc = first.clone();
    for next in iter {
        acc = intersect(&acc, next, budget)?;
        // Keep the running generators small: replace by the reduced basis.
        let gb = acc.gb(budget)?;
        acc = Ideal::new_unchecked(acc.ring(), gb.as_ref().clone());
    }
    Ok(acc)
}

/// Exact division f / g for f in (g).
fn divide_exact(f: &Polynomial, g: &Polynomial) -> Result<Polynomial> {
    let ring = f.ring();
    let field = ring.field;
    let (gm, gc) = g
        .leading()
        .ok_or_else(|| Error::Invalid("division by zero polynomial".into()))?;
    let gm = *gm;
    let gcinv = field.inv(gc);
    let mut rest = f.clone();
    let mut q = Vec::new();
    while let Some((fm, fc)) = rest.leading() {
        let m = fm
            .checked_div(&gm)
            .ok_or_else(|| Error::Invalid(format!("`{f}` is not divisible by `{g}`")))?;
        let c = field.mul(fc, gcinv);
        q.push((m, c));
        rest = rest.sub_scaled_shifted(c, &m, g);
    }
    Ok(Polynomial::from_terms(ring, q))
}

/// I : (g) = (I ∩ (g)) / g.
pub fn quotient_by_element(a: &Ideal, g: &Polynomial, budget: GbBudget) -> Result<Ideal> {
    let ring = a.ring();
    if g.is_zero() {
        return Ok(Ideal::unit(ring));
    }
    let inter = intersect(a, &Ideal::new_unchecked(ring, vec![g.clone()]), budget)?;
    let gens = inter
        .generators()
        .iter()
        .map(|f| divide_exact(f, g))
        .collect::<Result<Vec<_>>>()?;
    Ok(Ideal::new_unchecked(ring, gens))
}

/// I : J = { f : f·J ⊆ I }, intersected generator-by-generator.
pub fn quotient(a: &Ideal, b: &Ideal, budget: GbBudget) -> Result<Ideal> {
    a.ring().same_ring(&b.ring())?;
    if b.is_zero() {
        return Ok(Ideal::unit(a.ring()));
    }
    let parts = b
        .generators()
        .iter()
        .map(|g| quotient_by_element(a, g, budget))
        .collect::<Result<Vec<_>>>()?;
    intersect_many(&parts, budget)
}

/// Iterated colon until stabilization. Returns the stable ideal and the
/// saturation index (number of strict quotient steps).
pub fn saturate(a: &Ideal, b: &Ideal, budget: GbBudget) -> Result<(Ideal, usize)> {
    let mut current = a.clone();
    // The index is bounded by the highest degree appearing; runaway loops
    // indicate a bug, so fail loudly rather than spin.
    for index in 0..512 {
        let next = quotient(&current, b, budget)?;
        if next.equals(&current, budget)? {
            return Ok((current, index));
        }
        current = next;
    }
    Err(Error::BudgetExceeded(
        "saturation did not stabilize within 512 colon steps".into(),
    ))
}

/// Elimination: returns I ∩ K[kept variables] as an ideal of the same ring,
/// assuming the elimination ideal is homogeneous (true for the projective
/// workloads here: implicitization and intersections).
pub fn eliminate(a: &Ideal, keep: &[usize], budget: GbBudget) -> Result<Ideal> {
    let ring = a.ring();
    let eliminated: Vec<usize> = (0..ring.n_vars).filter(|v| !keep.contains(v)).collect();
    if eliminated.is_empty() {
        return Ok(a.clone());
    }
    let k = eliminated.len();
    // Permute: eliminated block first.
    let mut place = vec![0usize; ring.n_vars];
    for (slot, &v) in eliminated.iter().enumerate() {
        place[v] = slot;
    }
    for (offset, &v) in keep.iter().enumerate() {
        place[v] = k + offset;
    }
    let permuted = RingSpec::new(ring.n_vars, ring.field, MonomialOrder::Block(k))?;
    let gens: Vec<Polynomial> = a
        .generators()
        .iter()
        .map(|g| g.map_vars(permuted, &place))
        .collect();
    let basis = buchberger(permuted, &gens, budget)?;
    let mut unplace = vec![0usize; ring.n_vars];
    for (v, &slot) in place.iter().enumerate() {
        unplace[slot] = v;
    }
    let kept: Vec<Polynomial> = basis
        .iter()
        .filter(|p| p.terms().iter().all(|(m, _)| m.free_of_block(k)))
        .map(|p| p.map_vars(ring, &unplace))
        .collect();
    Ok(Ideal::new_unchecked(
        ring,
        homogeneous_components(ring, &kept),
    ))
}

/// I + (codim × codim minors of the Jacobian of the generating set).
/// The input scheme is smooth iff the saturation of the result with respect
/// to the irrelevant ideal is the unit ideal.
pub fn singular_locus(a: &Ideal, codim: usize, _budget: GbBudget) -> Result<Ideal> {
    let ring = a.ring();
    if codim == 0 || codim > ring.n_vars {
        return Err(Error::Invalid(format!(
            "codimension {codim} out of range for {} variables",
            ring.n_vars
        )));
    }
    let gens = a.generators();
    if gens.len() < codim {
        return Err(Error::Invalid(format!(
            "need at least {codim} generators for {codim}x{codim} minors, have {}",
            gens.len()
        )));
    }
    let jac: Vec<Vec<Polynomial>> = gens
        .iter()
        .map(|g| (0..ring.n_vars).map(|v| g.partial_derivative(v)).collect())
        .collect();
    let mut minors = Vec::new();
    let row_sets = combinations(gens.len(), codim);
    let col_sets = combinations(ring.n_vars, codim);
    for rows in &row_sets {
        for cols in &col_sets {
            let det = minor_det(&jac, rows, cols, ring);
            if !det.is_zero() {
                minors.push(det);
            }
        }
    }
    let mut all = gens.to_vec();
    all.extend(minors);
    Ideal::new(ring, all)
}

fn minor_det(
    jac: &[Vec<Polynomial>],
    rows: &[usize],
    cols: &[usize],
    ring: RingSpec,
) -> Polynomial {
    // Laplace expansion along the first row; minors here are at most 3x3.
    if rows.len() == 1 {
        return jac[rows[0]][cols[0]].clone();
    }
    let mut acc = Polynomial::zero(ring);
    for (k, &c) in cols.iter().enumerate() {
        let sub_rows = &rows[1..];
        let sub_cols: Vec<usize> = cols
            .iter()
            .enumerate()
            .filter_map(|(i, &cc)| (i != k).then_some(cc))
            .collect();
        let sub = minor_det(jac, sub_rows, &sub_cols, ring);
        let term = jac[rows[0]][c].mul(&sub);
        acc = if k % 2 == 0 {
            acc.add(&term)
        } else {
            acc.sub(&term)
        };
    }
    acc
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::FieldSpec;
    use crate::ideal::hilbert::hilbert_function;

    fn b() -> GbBudget {
        GbBudget::default()
    }

    fn r4() -> RingSpec {
        RingSpec::p3(FieldSpec::default_prime())
    }

    fn parse(s: &str, r: RingSpec) -> Polynomial {
        Polynomial::parse(s, r).unwrap()
    }

    #[test]
    fn intersect_with_self_and_unit() {
        let r = r4();
        let i = Ideal::new(r, vec![parse("x0^2 - x1*x2", r), parse("x3^2", r)]).unwrap();
        let with_self = intersect(&i, &i, b()).unwrap();
        assert!(with_self.equals(&i, b()).unwrap());
        let with_unit = intersect(&i, &Ideal::unit(r), b()).unwrap();
        assert!(with_unit.equals(&i, b()).unwrap());
    }

    #[test]
    fn intersect_two_points_in_plane() {
        let r = RingSpec::p2(FieldSpec::default_prime());
        let p1 = Ideal::new(r, vec![parse("x", r), parse("y", r)]).unwrap();
        let p2 = Ideal::new(r, vec![parse("x", r), parse("z", r)]).unwrap();
        let both = intersect(&p1, &p2, b()).unwrap();
        // Two points on the line x = 0.
        assert!(both.contains(&parse("x", r), b()).unwrap());
        assert!(both.contains(&parse("y*z", r), b()).unwrap());
        assert!(!both.contains(&parse("y", r), b()).unwrap());
        let data = hilbert_function(&both, 6, b()).unwrap();
        assert_eq!(data.hilbert_polynomial, Some((2, 0)));
    }

    #[test]
    fn cubic_triple_intersection_is_spanned_by_xyz() {
        let r = RingSpec::p2(FieldSpec::default_prime());
        let i1 = Ideal::new(r, vec![parse("(x+y)^3", r), parse("z", r)]).unwrap();
        let i2 = Ideal::new(r, vec![parse("(x+z)^3", r), parse("y", r)]).unwrap();
        let i3 = Ideal::new(r, vec![parse("(y-z)^3", r), parse("x", r)]).unwrap();
        let all = intersect_many(&[i1, i2, i3], b()).unwrap();
        let data = hilbert_function(&all, 4, b()).unwrap();
        assert_eq!(data.dims_ideal[&3], 1);
        assert!(all.contains(&parse("x*y*z", r), b()).unwrap());
    }

    #[test]
    fn quotient_examples() {
        let r = r4();
        let i = Ideal::new(r, vec![parse("x0*x1", r)]).unwrap();
        let by_x0 = quotient(&i, &Ideal::new(r, vec![parse("x0", r)]).unwrap(), b()).unwrap();
        assert!(by_x0
            .equals(&Ideal::new(r, vec![parse("x1", r)]).unwrap(), b())
            .unwrap());
        let by_unit = quotient(&i, &Ideal::unit(r), b()).unwrap();
        assert!(by_unit.equals(&i, b()).unwrap());
    }

    #[test]
    fn quotient_contains_and_multiplies_back() {
        let r = r4();
        let i = Ideal::new(r, vec![parse("x0^2*x1 - x2^3", r), parse("x3^3", r)]).unwrap();
        let j = Ideal::new(r, vec![parse("x0", r), parse("x3", r)]).unwrap();
        let q = quotient(&i, &j, b()).unwrap();
        // I ⊆ I : J and (I : J)·J ⊆ I.
        for g in i.generators() {
            assert!(q.contains(g, b()).unwrap());
        }
        let prod = q.product(&j).unwrap();
        for g in prod.generators() {
            assert!(i.contains(g, b()).unwrap());
        }
    }

    #[test]
    fn saturation_removes_embedded_component() {
        let r = r4();
        let i = Ideal::new(
            r,
            vec![
                parse("x0^2", r),
                parse("x0*x1", r),
                parse("x0*x2", r),
                parse("x0*x3", r),
            ],
        )
        .unwrap();
        let (sat, index) = saturate(&i, &irrelevant_ideal(r), b()).unwrap();
        assert!(sat
            .equals(&Ideal::new(r, vec![parse("x0", r)]).unwrap(), b())
            .unwrap());
        assert_eq!(index, 1);
        // Idempotent, and a saturated input reports index 0.
        let (sat2, index2) = saturate(&sat, &irrelevant_ideal(r), b()).unwrap();
        assert!(sat2.equals(&sat, b()).unwrap());
        assert_eq!(index2, 0);
    }

    #[test]
    fn eliminate_nothing_returns_input() {
        let r = r4();
        let i = Ideal::new(r, vec![parse("x0^2 - x1*x2", r)]).unwrap();
        let same = eliminate(&i, &[0, 1, 2, 3], b()).unwrap();
        assert!(same.equals(&i, b()).unwrap());
    }

    #[test]
    fn twisted_cubic_implicitization() {
        // Graph ideal of (s^3, s^2 u, s u^2, u^3) in K[s,u,x0..x3]; eliminating
        // the parameters leaves the three catalecticant quadrics.
        let field = FieldSpec::default_prime();
        let ext = RingSpec::new(6, field, MonomialOrder::Block(2)).unwrap();
        let s = Polynomial::variable(ext, 0);
        let u = Polynomial::variable(ext, 1);
        let x = |i: usize| Polynomial::variable(ext, 2 + i);
        let gens = vec![
            x(0).sub(&s.pow(3)),
            x(1).sub(&s.pow(2).mul(&u)),
            x(2).sub(&s.mul(&u.pow(2))),
            x(3).sub(&u.pow(3)),
        ];
        let graph = Ideal::new_unchecked(ext, gens);
        let curve_ext = eliminate(&graph, &[2, 3, 4, 5], b()).unwrap();

        // Map down to the 4-variable ring and compare with the minors.
        let r = r4();
        let narrowed: Vec<Polynomial> = curve_ext
            .generators()
            .iter()
            .map(|g| {
                let map = vec![0usize, 0, 0, 1, 2, 3];
                g.map_vars(r, &map)
            })
            .collect();
        let curve = Ideal::new(r, narrowed).unwrap();
        let minors = Ideal::new(
            r,
            vec![
                parse("x0*x2 - x1^2", r),
                parse("x0*x3 - x1*x2", r),
                parse("x1*x3 - x2^2", r),
            ],
        )
        .unwrap();
        assert!(curve.equals(&minors, b()).unwrap());
    }

    #[test]
    fn singular_locus_of_smooth_quadric_is_empty() {
        let r = r4();
        let q = Ideal::new(r, vec![parse("x0*x3 - x1*x2", r)]).unwrap();
        let sing = singular_locus(&q, 1, b()).unwrap();
        let (sat, _) = saturate(&sing, &irrelevant_ideal(r), b()).unwrap();
        assert!(sat.is_unit(b()).unwrap());
    }

    #[test]
    fn singular_locus_of_quadric_cone_is_its_vertex_line() {
        let r = r4();
        let cone = Ideal::new(r, vec![parse("x0*x2 - x1^2", r)]).unwrap();
        let sing = singular_locus(&cone, 1, b()).unwrap();
        let (sat, _) = saturate(&sing, &irrelevant_ideal(r), b()).unwrap();
        let vertex = Ideal::new(r, vec![parse("x0", r), parse("x1", r), parse("x2", r)]).unwrap();
        assert!(sat.equals(&vertex, b()).unwrap());
        assert!(!sat.is_unit(b()).unwrap());
    }
}
