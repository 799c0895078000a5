//! Named constructors for every configuration studied: general skew lines,
//! lines on a quadric ruling (with or without extra general lines), flat fat
//! points in the plane, rational curves, bidegree (1,b) curves on a quadric,
//! incident lines, and the quintic liaison pipeline.
//!
//! Constructors are deterministic in (recipe, parameters, seed, prime):
//! re-running reproduces the identical configuration bit for bit.
//!
//! One known configuration has no constructor here, on purpose: there is a
//! smooth irreducible arithmetically Buchsbaum curve of degree 15 and
//! arithmetic genus 25 whose Rao module is one-dimensional in each of two
//! consecutive degrees (so multiplication by every linear form fails maximal
//! rank between them). Its existence comes from liaison-theoretic minimal
//! curve arguments and no explicit equations are available at desk scale, so
//! its module profile is recorded here as documentation only.

use crate::error::{Error, Result};
use crate::gf::{FieldMatrix, FieldSpec};
use crate::ideal::{ops, GbBudget, Ideal};
use crate::poly::{BinaryForm, Monomial, Polynomial, RingSpec};
use crate::restriction::{ComponentKind, ConfigMeta, Configuration, NodeSpec, ParamComponent};
use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use serde_json::json;

const MAX_RESAMPLES: usize = 10;

/// Seeded field-element sampler.
pub struct Sampler {
    rng: ChaCha8Rng,
    field: FieldSpec,
}

impl Sampler {
    pub fn new(seed: u64, field: FieldSpec) -> Self {
        Sampler {
            rng: ChaCha8Rng::seed_from_u64(seed),
            field,
        }
    }

    pub fn element(&mut self) -> u64 {
        self.rng.next_u64() % self.field.p()
    }

    pub fn nonzero(&mut self) -> u64 {
        loop {
            let x = self.element();
            if x != 0 {
                return x;
            }
        }
    }

    /// A projective point: a not-identically-zero coordinate vector.
    pub fn point(&mut self, n: usize) -> Vec<u64> {
        loop {
            let v: Vec<u64> = (0..n).map(|_| self.element()).collect();
            if v.iter().any(|&x| x != 0) {
                return v;
            }
        }
    }

    /// A linear form with all coefficients sampled, not identically zero.
    pub fn linear_form(&mut self, ring: RingSpec) -> Polynomial {
        loop {
            let f = Polynomial::linear_form(ring, &self.point(ring.n_vars));
            if !f.is_zero() {
                return f;
            }
        }
    }

    pub fn binary_form(&mut self, degree: u32) -> BinaryForm {
        loop {
            let coeffs: Vec<u64> = (0..=degree).map(|_| self.element()).collect();
            if coeffs.iter().any(|&c| c != 0) {
                return BinaryForm::new(self.field, coeffs);
            }
        }
    }
}

/// Two lines in P3 are disjoint iff their four spanning points are linearly
/// independent (nonzero 4x4 determinant, tested by rank).
fn lines_disjoint(field: FieldSpec, a: &ParamComponent, b: &ParamComponent) -> bool {
    let rows = vec![
        a.point_at(1, 0),
        a.point_at(0, 1),
        b.point_at(1, 0),
        b.point_at(0, 1),
    ];
    FieldMatrix::from_rows(field, &rows).is_ok_and(|m| m.rank() == 4)
}

/// r general lines in P3, each through two independently sampled points;
/// pairwise disjointness verified per pair, resampling up to 10 times.
pub fn general_skew_lines(r: usize, seed: u64, field: FieldSpec) -> Result<Configuration> {
    if r < 1 {
        return Err(Error::Invalid("need r >= 1 lines".into()));
    }
    let ring = RingSpec::p3(field);
    let mut sampler = Sampler::new(seed, field);
    let mut components: Vec<ParamComponent> = Vec::with_capacity(r);
    for idx in 0..r {
        let mut ok = false;
        for _ in 0..MAX_RESAMPLES {
            let p = sampler.point(4);
            let q = sampler.point(4);
            if super_proportional(field, &p, &q) {
                continue; // the two points must span a line
            }
            let cand = ParamComponent::line(field, 4, &p, &q);
            if components.iter().all(|c| lines_disjoint(field, c, &cand)) {
                components.push(cand);
                ok = true;
                break;
            }
        }
        if !ok {
            return Err(Error::ResampleExhausted {
                attempts: MAX_RESAMPLES,
                what: format!("disjoint line {idx} of {r}"),
            });
        }
    }
    let mut cfg = Configuration::new(ring, components, vec![]);
    cfg.meta = ConfigMeta {
        recipe: "general-skew-lines".into(),
        seed,
        label: format!("{r} general skew lines"),
    };
    cfg.validate()?;
    Ok(cfg)
}

/// The fixed smooth quadric x0·x3 − x1·x2.
pub fn canonical_quadric(ring: RingSpec) -> Polynomial {
    Polynomial::parse("x0*x3 - x1*x2", ring).unwrap()
}

/// Line of the first ruling at parameter (v : w): (s, u) -> (sv, sw, uv, uw).
pub fn ruling_line(field: FieldSpec, v: u64, w: u64) -> ParamComponent {
    ParamComponent::line(field, 4, &[v, w, 0, 0], &[0, 0, v, w])
}

/// Line of the opposite ruling at parameter (c0 : c1): (v, w) -> (c0·v, c0·w, c1·v, c1·w).
pub fn other_ruling_line(field: FieldSpec, c0: u64, c1: u64) -> ParamComponent {
    ParamComponent::line(field, 4, &[c0, 0, c1, 0], &[0, c0, 0, c1])
}

/// r lines in one ruling of the canonical quadric, at distinct random
/// parameters.
pub fn quadric_ruling_lines(r: usize, seed: u64, field: FieldSpec) -> Result<Configuration> {
    if r < 2 {
        return Err(Error::Invalid("need r >= 2 ruling lines".into()));
    }
    let ring = RingSpec::p3(field);
    let mut sampler = Sampler::new(seed, field);
    let mut params: Vec<(u64, u64)> = Vec::with_capacity(r);
    for idx in 0..r {
        let mut ok = false;
        for _ in 0..MAX_RESAMPLES {
            let cand = (1u64, sampler.element());
            if !params.contains(&cand) {
                params.push(cand);
                ok = true;
                break;
            }
        }
        if !ok {
            return Err(Error::ResampleExhausted {
                attempts: MAX_RESAMPLES,
                what: format!("distinct ruling parameter {idx}"),
            });
        }
    }
    let components = params
        .iter()
        .map(|&(v, w)| ruling_line(field, v, w))
        .collect();
    let mut cfg = Configuration::new(ring, components, vec![]);
    cfg.meta = ConfigMeta {
        recipe: "quadric-ruling-lines".into(),
        seed,
        label: format!("{r} lines in a ruling of the quadric"),
    };
    cfg.validate()?;
    let q = canonical_quadric(ring);
    for c in &cfg.components {
        if !c.restrict(&q)?.is_zero() {
            return Err(Error::DegenerateConfiguration(
                "ruling line does not lie on the quadric".into(),
            ));
        }
    }
    Ok(cfg)
}

/// r lines in a ruling of the quadric plus n general lines off the quadric.
pub fn quadric_plus_general(
    r_on_quadric: usize,
    n_general: usize,
    seed: u64,
    field: FieldSpec,
) -> Result<Configuration> {
    if r_on_quadric < 2 {
        return Err(Error::Invalid("need r >= 2 ruling lines".into()));
    }
    let ruling = quadric_ruling_lines(r_on_quadric, seed, field)?;
    let ring = ruling.ring;
    let q = canonical_quadric(ring);
    let mut sampler = Sampler::new(seed.wrapping_add(0x9E3779B97F4A7C15), field);
    let mut components = ruling.components;
    for idx in 0..n_general {
        let mut ok = false;
        for _ in 0..MAX_RESAMPLES {
            let p = sampler.point(4);
            let qq = sampler.point(4);
            let cand = ParamComponent::line(field, 4, &p, &qq);
            if cand.restrict(&q)?.is_zero() {
                continue; // lies on the quadric
            }
            // Disjoint from everything so far and off the quadric entirely:
            // a general line meets the quadric in two points, neither on a
            // ruling line already chosen; disjointness from lines is what
            // matters.
            if components.iter().all(|c| lines_disjoint(field, c, &cand)) {
                components.push(cand);
                ok = true;
                break;
            }
        }
        if !ok {
            return Err(Error::ResampleExhausted {
                attempts: MAX_RESAMPLES,
                what: format!("general line {idx} off the quadric"),
            });
        }
    }
    let mut cfg = Configuration::new(ring, components, vec![]);
    cfg.meta = ConfigMeta {
        recipe: "quadric-plus-general".into(),
        seed,
        label: format!("{r_on_quadric} ruling lines + {n_general} general lines"),
    };
    cfg.validate()?;
    Ok(cfg)
}

/// s flat fat points of multiplicity m in P2, at random points with random
/// transverse directions. Optional explicit direction points override the
/// sampled ones (used by specialization experiments).
pub fn flat_fat_points_plane(
    s: usize,
    m: u32,
    seed: u64,
    directions: Option<&[Vec<u64>]>,
    field: FieldSpec,
) -> Result<Configuration> {
    if s < 1 || m < 1 {
        return Err(Error::Invalid("need s >= 1 and m >= 1".into()));
    }
    let ring = RingSpec::p2(field);
    let mut sampler = Sampler::new(seed, field);
    let mut components: Vec<ParamComponent> = Vec::with_capacity(s);
    for idx in 0..s {
        let mut ok = false;
        for _ in 0..MAX_RESAMPLES {
            let support = sampler.point(3);
            let direction = match directions.and_then(|d| d.get(idx)) {
                Some(d) => d.clone(),
                None => sampler.point(3),
            };
            let Some(cand) = plane_flat_fat(field, ring, &support, &direction, m) else {
                continue;
            };
            let distinct = components.iter().all(|c| {
                let existing = flat_fat_support(c);
                !super_proportional(field, &existing, &support)
            });
            if distinct {
                components.push(cand);
                ok = true;
                break;
            }
        }
        if !ok {
            return Err(Error::ResampleExhausted {
                attempts: MAX_RESAMPLES,
                what: format!("flat fat point {idx}"),
            });
        }
    }
    let mut cfg = Configuration::new(ring, components, vec![]);
    cfg.meta = ConfigMeta {
        recipe: "flat-fat-points-plane".into(),
        seed,
        label: format!("{s} flat fat points of multiplicity {m}"),
    };
    cfg.validate()?;
    Ok(cfg)
}

/// Support point of a flat-fat component: by construction the parameter (1,0).
fn flat_fat_support(c: &ParamComponent) -> Vec<u64> {
    c.point_at(1, 0)
}

fn super_proportional(field: FieldSpec, a: &[u64], b: &[u64]) -> bool {
    for i in 0..a.len() {
        for j in i + 1..a.len() {
            if field.sub(field.mul(a[i], b[j]), field.mul(a[j], b[i])) != 0 {
                return false;
            }
        }
    }
    true
}

/// A flat fat point at `support` along the line toward `direction`, with a
/// transverse form vanishing at the support but not at the direction point.
/// The parametrization places the support at (s:u) = (1:0).
pub(crate) fn plane_flat_fat(
    field: FieldSpec,
    ring: RingSpec,
    support: &[u64],
    direction: &[u64],
    m: u32,
) -> Option<ParamComponent> {
    if super_proportional(field, support, direction) {
        return None;
    }
    // Forms vanishing at the support: kernel of the 1-row evaluation matrix.
    let eval = FieldMatrix::from_rows(field, &[support.to_vec()]).ok()?;
    let k = eval.kernel_basis();
    // Pick a kernel vector not vanishing at the direction point.
    for j in 0..k.cols() {
        let coeffs: Vec<u64> = (0..ring.n_vars).map(|v| k.at(v, j)).collect();
        let ell = Polynomial::linear_form(ring, &coeffs);
        if ell.evaluate(direction) != 0 {
            return Some(ParamComponent::flat_fat(
                field,
                ring.n_vars,
                support,
                direction,
                m,
                ell,
            ));
        }
    }
    None
}

/// One general rational curve of degree d in P3: four random degree-d binary
/// forms, base-point-freeness verified.
pub fn rational_curve(d: u32, seed: u64, field: FieldSpec) -> Result<Configuration> {
    if d < 3 {
        return Err(Error::Invalid(
            "rational curves of degree < 3 in P3 are degenerate; need d >= 3".into(),
        ));
    }
    let ring = RingSpec::p3(field);
    let mut sampler = Sampler::new(seed, field);
    for _ in 0..MAX_RESAMPLES {
        let forms: Vec<BinaryForm> = (0..4).map(|_| sampler.binary_form(d)).collect();
        let mut g = forms[0].clone();
        for f in &forms[1..] {
            g = g.gcd(f);
        }
        if g.degree() != 0 {
            continue; // base point: resample
        }
        let cand = ParamComponent::rational(forms);
        let mut cfg = Configuration::new(ring, vec![cand], vec![]);
        cfg.meta = ConfigMeta {
            recipe: "rational-curve".into(),
            seed,
            label: format!("general rational curve of degree {d}"),
        };
        cfg.validate()?;
        return Ok(cfg);
    }
    Err(Error::ResampleExhausted {
        attempts: MAX_RESAMPLES,
        what: format!("base-point-free degree-{d} parametrization"),
    })
}

/// Smooth curve of type (1, b) on the canonical quadric: the parametrization
/// composes t -> (t, g(t)) with the Segre map. General (a, b) with both
/// a, b >= 2 is out of scope.
pub fn bidegree_curve_on_quadric(
    a: u32,
    b: u32,
    seed: u64,
    field: FieldSpec,
) -> Result<Configuration> {
    let (a, b) = (a.min(b), a.max(b));
    if a != 1 {
        return Err(Error::UnsupportedBidegree(a, b));
    }
    let ring = RingSpec::p3(field);
    let mut sampler = Sampler::new(seed, field);
    for _ in 0..MAX_RESAMPLES {
        let g0 = sampler.binary_form(b);
        let g1 = sampler.binary_form(b);
        if g0.gcd(&g1).degree() != 0 {
            continue;
        }
        let s = BinaryForm::linear(field, 1, 0);
        let u = BinaryForm::linear(field, 0, 1);
        let forms = vec![s.mul(&g0), s.mul(&g1), u.mul(&g0), u.mul(&g1)];
        let cand = ParamComponent::rational(forms);
        let q = canonical_quadric(ring);
        if !cand.restrict(&q)?.is_zero() {
            return Err(Error::DegenerateConfiguration(
                "bidegree curve not on the quadric".into(),
            ));
        }
        let mut cfg = Configuration::new(ring, vec![cand], vec![]);
        cfg.meta = ConfigMeta {
            recipe: "bidegree-on-quadric".into(),
            seed,
            label: format!("curve of type (1,{b}) on the quadric"),
        };
        cfg.validate()?;
        return Ok(cfg);
    }
    Err(Error::ResampleExhausted {
        attempts: MAX_RESAMPLES,
        what: format!("base-point-free (1,{b}) parametrization"),
    })
}

/// Add a general line through a random point of the target component,
/// registering one node. The node sits at parameter (1:0) on the new line.
pub fn incident_line(cfg: &Configuration, target: usize, seed: u64) -> Result<Configuration> {
    if target >= cfg.components.len() {
        return Err(Error::Invalid(format!(
            "component index {target} out of range"
        )));
    }
    let field = cfg.field();
    let mut sampler = Sampler::new(seed, field);
    for _ in 0..MAX_RESAMPLES {
        let s0 = sampler.element();
        let u0 = sampler.nonzero();
        let p = cfg.components[target].point_at(s0, u0);
        if p.iter().all(|&x| x == 0) {
            continue;
        }
        let q = sampler.point(4);
        let cand = ParamComponent::line(field, 4, &p, &q);
        let mut next = cfg.clone();
        let new_idx = next.components.len();
        next.components.push(cand);
        next.nodes.push(NodeSpec {
            i: new_idx,
            j: target,
            p_i: (1, 0),
            p_j: (s0, u0),
        });
        next.meta.label = format!("{} + incident line", cfg.meta.label);
        if next.validate().is_ok() {
            return Ok(next);
        }
    }
    Err(Error::ResampleExhausted {
        attempts: MAX_RESAMPLES,
        what: "incident line through the target component".into(),
    })
}

/// The arithmetic-genus-zero configuration: a (1,7) curve on the quadric plus
/// two general incident lines.
pub fn arith_genus_zero(seed: u64, field: FieldSpec) -> Result<Configuration> {
    let base = bidegree_curve_on_quadric(1, 7, seed, field)?;
    let with_one = incident_line(&base, 0, seed.wrapping_add(1))?;
    let mut cfg = incident_line(&with_one, 0, seed.wrapping_add(2))?;
    cfg.meta = ConfigMeta {
        recipe: "arith-genus-zero".into(),
        seed,
        label: "(1,7) curve + two incident lines".into(),
    };
    Ok(cfg)
}

/// The specialization experiment behind the triple-point Hilbert function
/// theorem: r general lines with the first k replaced, in the section data,
/// by flat fat points of multiplicity m whose direction lies inside the
/// sampled plane.
pub struct SpecializationExperiment {
    /// The r transverse lines.
    pub lines: Configuration,
    /// The sampled plane.
    pub plane: Polynomial,
    /// Section scheme in the plane: (r−k) simple points + k flat fat points
    /// of multiplicity m, natively in P2 coordinates.
    pub section_plane: Configuration,
    /// Residual: the r−k unspecialized lines of multiplicity m−1 data.
    pub residual: Configuration,
    pub k: usize,
    pub m: u32,
}

pub fn skew_lines_specialized(
    r: usize,
    k: usize,
    m: u32,
    seed: u64,
    field: FieldSpec,
) -> Result<SpecializationExperiment> {
    if k > r {
        return Err(Error::Invalid(
            "cannot specialize more lines than exist".into(),
        ));
    }
    if m < 2 {
        return Err(Error::Invalid("specialization needs m >= 2".into()));
    }
    let lines = general_skew_lines(r, seed, field)?;
    let ring3 = lines.ring;
    let ring2 = RingSpec::p2(field);
    let mut sampler = Sampler::new(seed.wrapping_add(0xA5A5A5A5), field);
    let plane = sampler.linear_form(ring3);

    // Plane coordinates: columns of B span the plane L = 0.
    let coeffs: Vec<u64> = (0..4)
        .map(|v| plane.coefficient(&Monomial::variable(v)))
        .collect();
    let b = FieldMatrix::from_rows(field, &[coeffs])?.kernel_basis();

    let mut section_components: Vec<ParamComponent> = Vec::with_capacity(r);
    for (idx, line) in lines.components.iter().enumerate() {
        // Intersection parameter with the plane: root of L|_line = a·s + b·u.
        let rl = plane.restrict(&line.param)?;
        let (ca, cb) = (rl.coeffs()[0], rl.coeffs()[1]);
        if ca == 0 && cb == 0 {
            return Err(Error::DegenerateSection("line inside the plane".into()));
        }
        let ambient = line.point_at(cb, field.neg(ca));
        let y = b
            .solve(&ambient)?
            .ok_or_else(|| Error::DegenerateSection("plane point outside the plane".into()))?;
        let mult = if idx < k { m } else { 1 };
        let mut comp = None;
        for _ in 0..MAX_RESAMPLES {
            let direction = sampler.point(3);
            if let Some(c) = plane_flat_fat(field, ring2, &y, &direction, mult) {
                let distinct = section_components
                    .iter()
                    .all(|e| !super_proportional(field, &flat_fat_support(e), &y));
                if distinct {
                    comp = Some(c);
                    break;
                }
            }
        }
        section_components.push(comp.ok_or(Error::ResampleExhausted {
            attempts: MAX_RESAMPLES,
            what: format!("plane flat fat point for line {idx}"),
        })?);
    }
    let mut section_plane = Configuration::new(ring2, section_components, vec![]);
    section_plane.meta = ConfigMeta {
        recipe: "skew-lines-specialized/section".into(),
        seed,
        label: format!("{} simple + {k} triple plane points", r - k),
    };
    section_plane.validate()?;

    let mut residual = Configuration::new(ring3, lines.components[k..].to_vec(), vec![]);
    residual.meta = ConfigMeta {
        recipe: "skew-lines-specialized/residual".into(),
        seed,
        label: format!("{} unspecialized lines", r - k),
    };
    residual.validate()?;

    Ok(SpecializationExperiment {
        lines,
        plane,
        section_plane,
        residual,
        k,
        m,
    })
}

/// Ideal of one component via exact linear algebra (lines, flat fats) or
/// implicitization (rational curves).
pub fn component_ideal(comp: &ParamComponent, ring: RingSpec, budget: GbBudget) -> Result<Ideal> {
    match comp.kind {
        ComponentKind::LineP3 | ComponentKind::LineP2 => Ideal::new(ring, comp.line_forms(ring)?),
        ComponentKind::FlatFatPoint => {
            let mut gens = comp.line_forms(ring)?;
            let ell = comp.transverse.clone().unwrap();
            gens.push(ell.pow(comp.multiplicity));
            Ideal::new(ring, gens)
        }
        ComponentKind::RationalCurveP3 => {
            // Graph ideal in K[s, u, x0..x3]; eliminate the parameters.
            let ext = RingSpec::new(6, ring.field, crate::poly::MonomialOrder::Block(2))?;
            let d = comp.degree();
            let mut gens = Vec::new();
            for (i, f) in comp.param.iter().enumerate() {
                // x_i − f(s, u)
                let mut terms: Vec<(Monomial, u64)> = vec![(Monomial::variable(2 + i), 1)];
                for (j, &c) in f.coeffs().iter().enumerate() {
                    if c != 0 {
                        let mut mono = Monomial::one();
                        mono.set_exp(0, (d as usize - j) as u16);
                        mono.set_exp(1, j as u16);
                        terms.push((mono, ring.field.neg(c)));
                    }
                }
                gens.push(Polynomial::from_terms(ext, terms));
            }
            let graph = Ideal::new_unchecked(ext, gens);
            let eliminated = ops::eliminate(&graph, &[2, 3, 4, 5], budget)?;
            let map = vec![0usize, 0, 0, 1, 2, 3];
            let narrowed: Vec<Polynomial> = eliminated
                .generators()
                .iter()
                .map(|g| g.map_vars(ring, &map))
                .collect();
            Ideal::new(ring, narrowed)
        }
    }
}

/// Saturated ideal of a whole configuration: intersection of the component
/// ideals (nodal data does not change the ideal of a reduced union).
pub fn configuration_ideal(cfg: &Configuration, budget: GbBudget) -> Result<Ideal> {
    let ideals: Vec<Ideal> = cfg
        .components
        .iter()
        .map(|c| component_ideal(c, cfg.ring, budget))
        .collect::<Result<Vec<_>>>()?;
    ops::intersect_many(&ideals, budget)
}

/// Output of the quintic liaison pipeline: the triple-line complete
/// intersection link and its residuals.
pub struct LiaisonPipeline {
    /// deg C1 = 6: the triple structure on the coordinate line.
    pub deg_c1: usize,
    /// deg C2 = 19: residual of C1 in the (5,5) complete intersection.
    pub deg_c2: usize,
    /// Degree removed by the final colon (the double-line structure): 3.
    pub deg_removed: usize,
    /// deg C3 = 16.
    pub deg_c3: usize,
    pub c3: Ideal,
}

/// The liaison chain: I_lambda^3 for a coordinate line, two random quintics
/// F, G inside it, the residual (F,G) : I_lambda^3, and the further colon by
/// I_lambda^2, producing a smooth degree-16 curve on the quintic pencil.
pub fn liaison_quintic_pipeline(
    seed: u64,
    field: FieldSpec,
    budget: GbBudget,
) -> Result<LiaisonPipeline> {
    let ring = RingSpec::p3(field);
    let lambda = Ideal::new(
        ring,
        vec![Polynomial::variable(ring, 0), Polynomial::variable(ring, 1)],
    )?;
    let cubes = lambda.power(3);

    // Random quintics in I_lambda^3: combinations of the degree-5 monomials
    // with x0-and-x1 degree at least 3.
    let mut sampler = Sampler::new(seed, field);
    let basis: Vec<Monomial> = ring
        .monomial_basis(5)
        .into_iter()
        .filter(|m| m.exp(0) + m.exp(1) >= 3)
        .collect();
    let quintic = |sampler: &mut Sampler| {
        Polynomial::from_terms(
            ring,
            basis.iter().map(|&m| (m, sampler.element())).collect(),
        )
    };
    let f = quintic(&mut sampler);
    let g = quintic(&mut sampler);
    let ci = Ideal::new(ring, vec![f, g])?;

    let c2 = ops::quotient(&ci, &cubes, budget)?;
    let c3 = ops::quotient(&c2, &lambda.power(2), budget)?;

    let deg_of = |ideal: &Ideal, t_max: i64| -> Result<usize> {
        let data = crate::ideal::hilbert_function(ideal, t_max, budget)?;
        data.hilbert_polynomial
            .filter(|&(_, dim)| dim == 1)
            .map(|(deg, _)| deg)
            .ok_or_else(|| Error::Invalid("expected a curve (dimension 1)".into()))
    };
    let deg_c1 = deg_of(&cubes, 10)?;
    let deg_c2 = deg_of(&c2, 16)?;
    let deg_c3 = deg_of(&c3, 20)?;

    Ok(LiaisonPipeline {
        deg_c1,
        deg_c2,
        deg_removed: deg_c2 - deg_c3,
        deg_c3,
        c3,
    })
}

/// Recipe manifest accepted by the command-line front end.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Recipe {
    pub recipe: String,
    #[serde(default)]
    pub params: serde_json::Value,
    pub seed: u64,
}

impl Recipe {
    pub fn build(&self, field: FieldSpec) -> Result<Configuration> {
        let p = |k: &str| -> Option<u64> { self.params.get(k).and_then(|v| v.as_u64()) };
        match self.recipe.as_str() {
            "general-skew-lines" => {
                let r = p("r").ok_or_else(|| Error::Invalid("missing param r".into()))?;
                general_skew_lines(r as usize, self.seed, field)
            }
            "quadric-ruling-lines" => {
                let r = p("r").ok_or_else(|| Error::Invalid("missing param r".into()))?;
                quadric_ruling_lines(r as usize, self.seed, field)
            }
            "quadric-plus-general" => {
                let r = p("r").ok_or_else(|| Error::Invalid("missing param r".into()))?;
                let n = p("n").unwrap_or(0);
                quadric_plus_general(r as usize, n as usize, self.seed, field)
            }
            "flat-fat-points-plane" => {
                let s = p("s").ok_or_else(|| Error::Invalid("missing param s".into()))?;
                let m = p("m").unwrap_or(1);
                flat_fat_points_plane(s as usize, m as u32, self.seed, None, field)
            }
            "rational-curve" => {
                let d = p("d").ok_or_else(|| Error::Invalid("missing param d".into()))?;
                rational_curve(d as u32, self.seed, field)
            }
            "bidegree-on-quadric" => {
                let a = p("a").unwrap_or(1);
                let b = p("b").ok_or_else(|| Error::Invalid("missing param b".into()))?;
                bidegree_curve_on_quadric(a as u32, b as u32, self.seed, field)
            }
            "arith-genus-zero" => arith_genus_zero(self.seed, field),
            other => Err(Error::UnknownTag(other.to_string())),
        }
    }
}

/// Rebuild a configuration from the interchange JSON shape. Accepted
/// component kinds: `line` (two spanning points), `ruling-line` (parameter
/// on the canonical quadric), `rational` (parametrizing forms), `flat-fat`
/// (support, direction, multiplicity, transverse form).
pub fn configuration_from_json(value: &serde_json::Value) -> Result<Configuration> {
    let obj = value
        .as_object()
        .ok_or_else(|| Error::Invalid("configuration JSON must be an object".into()))?;
    let p = obj.get("p").and_then(|v| v.as_u64()).unwrap_or(32003);
    let field = FieldSpec::new(p)?;
    let ambient = obj.get("ambient").and_then(|v| v.as_str()).unwrap_or("P3");
    let ring = match ambient {
        "P3" => RingSpec::p3(field),
        "P2" => RingSpec::p2(field),
        other => return Err(Error::Invalid(format!("unknown ambient `{other}`"))),
    };
    let vecs = |v: &serde_json::Value| -> Result<Vec<u64>> {
        v.as_array()
            .map(|a| a.iter().filter_map(|x| x.as_u64()).collect())
            .ok_or_else(|| Error::Invalid("expected a coordinate array".into()))
    };
    let mut components = Vec::new();
    for c in obj
        .get("components")
        .and_then(|v| v.as_array())
        .ok_or_else(|| Error::Invalid("missing components".into()))?
    {
        let kind = c.get("kind").and_then(|v| v.as_str()).unwrap_or("");
        let comp = match kind {
            "line" => {
                let pts = c
                    .get("points")
                    .and_then(|v| v.as_array())
                    .ok_or_else(|| Error::Invalid("line needs points".into()))?;
                if pts.len() != 2 {
                    return Err(Error::Invalid("line needs exactly two points".into()));
                }
                ParamComponent::line(field, ring.n_vars, &vecs(&pts[0])?, &vecs(&pts[1])?)
            }
            "ruling-line" => {
                let pr = vecs(
                    c.get("param")
                        .ok_or_else(|| Error::Invalid("ruling-line needs param".into()))?,
                )?;
                if pr.len() != 2 {
                    return Err(Error::Invalid("ruling parameter is a pair".into()));
                }
                ruling_line(field, pr[0], pr[1])
            }
            "rational" => {
                let forms = c
                    .get("param")
                    .and_then(|v| v.as_array())
                    .ok_or_else(|| Error::Invalid("rational needs param forms".into()))?
                    .iter()
                    .map(|f| Ok(BinaryForm::new(field, vecs(f)?)))
                    .collect::<Result<Vec<_>>>()?;
                ParamComponent::rational(forms)
            }
            "flat-fat" => {
                let support = vecs(
                    c.get("support")
                        .ok_or_else(|| Error::Invalid("flat-fat needs support".into()))?,
                )?;
                let direction = vecs(
                    c.get("direction")
                        .ok_or_else(|| Error::Invalid("flat-fat needs direction".into()))?,
                )?;
                let m = c.get("m").and_then(|v| v.as_u64()).unwrap_or(1) as u32;
                let ell = match c.get("transverse").and_then(|v| v.as_str()) {
                    Some(text) => Polynomial::parse(text, ring)?,
                    None => plane_flat_fat(field, ring, &support, &direction, m)
                        .ok_or_else(|| {
                            Error::DegenerateConfiguration("flat-fat data degenerate".into())
                        })?
                        .transverse
                        .clone()
                        .unwrap(),
                };
                ParamComponent::flat_fat(field, ring.n_vars, &support, &direction, m, ell)
            }
            other => return Err(Error::Invalid(format!("unknown component kind `{other}`"))),
        };
        components.push(comp);
    }
    let mut nodes = Vec::new();
    if let Some(list) = obj.get("nodes").and_then(|v| v.as_array()) {
        for n in list {
            let quad = n
                .as_array()
                .filter(|a| a.len() == 4)
                .ok_or_else(|| Error::Invalid("node must be [i, j, [s,u], [s,u]]".into()))?;
            let pi = vecs(&quad[2])?;
            let pj = vecs(&quad[3])?;
            nodes.push(NodeSpec {
                i: quad[0].as_u64().unwrap_or(0) as usize,
                j: quad[1].as_u64().unwrap_or(0) as usize,
                p_i: (pi[0], pi[1]),
                p_j: (pj[0], pj[1]),
            });
        }
    }
    let mut cfg = Configuration::new(ring, components, nodes);
    cfg.meta = ConfigMeta {
        recipe: obj
            .get("recipe")
            .and_then(|v| v.as_str())
            .unwrap_or("json")
            .to_string(),
        seed: obj.get("seed").and_then(|v| v.as_u64()).unwrap_or(0),
        label: obj
            .get("label")
            .and_then(|v| v.as_str())
            .unwrap_or("configuration from JSON")
            .to_string(),
    };
    cfg.validate()?;
    Ok(cfg)
}

/// Serialize a configuration to the interchange JSON shape.
pub fn configuration_to_json(cfg: &Configuration) -> serde_json::Value {
    let ambient = if cfg.ring.n_vars == 4 { "P3" } else { "P2" };
    let components: Vec<serde_json::Value> = cfg
        .components
        .iter()
        .map(|c| match c.kind {
            ComponentKind::LineP3 | ComponentKind::LineP2 => json!({
                "kind": "line",
                "points": [c.point_at(1, 0), c.point_at(0, 1)],
            }),
            ComponentKind::RationalCurveP3 => json!({
                "kind": "rational",
                "degree": c.degree(),
                "param": c.param.iter().map(|f| f.coeffs().to_vec()).collect::<Vec<_>>(),
            }),
            ComponentKind::FlatFatPoint => json!({
                "kind": "flat-fat",
                "m": c.multiplicity,
                "support": c.point_at(1, 0),
                "direction": c.point_at(0, 1),
                "transverse": c.transverse.as_ref().map(|f| f.to_string()),
            }),
        })
        .collect();
    let nodes: Vec<serde_json::Value> = cfg
        .nodes
        .iter()
        .map(|n| json!([n.i, n.j, [n.p_i.0, n.p_i.1], [n.p_j.0, n.p_j.1]]))
        .collect();
    json!({
        "ambient": ambient,
        "p": cfg.field().p(),
        "seed": cfg.meta.seed,
        "recipe": cfg.meta.recipe,
        "label": cfg.meta.label,
        "components": components,
        "nodes": nodes,
    })
}
