//! The fast, Gröbner-free engine.
//!
//! A configuration is a union of parametrized rational components (lines,
//! rational curves, flat fat points) with optional node (gluing) data. Every
//! graded dimension is the rank or kernel of a condition matrix assembled
//! from the parametrizations:
//!
//! * `ideal_dimension`: dim of the degree-t piece of the ideal, as the kernel
//!   of the restriction map to the components;
//! * `section_scheme_dimension`: dim of the ideal of the scheme cut by the
//!   m-fold thickening of a sampled plane, as divisibility conditions on the
//!   restricted forms;
//! * `rao_profile`: degree-wise presentation of the Rao module as the
//!   cokernel of the restriction map into the node-compatible sections of the
//!   components, with multiplication maps computed on the presentation.

use crate::error::{Error, Result};
use crate::gf::{FieldMatrix, FieldSpec};
use crate::poly::{BinaryForm, Monomial, Polynomial, RingSpec};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum ComponentKind {
    LineP3,
    LineP2,
    RationalCurveP3,
    FlatFatPoint,
}

/// One parametrized component: forms of a common degree d in the parameters
/// (s, u), one per ambient variable, with no common zero on the line.
#[derive(Clone, Debug)]
pub struct ParamComponent {
    pub kind: ComponentKind,
    pub param: Vec<BinaryForm>,
    /// Thickening along the supporting line; 1 unless flat-fat.
    pub multiplicity: u32,
    /// Transverse linear form for a flat fat point.
    pub transverse: Option<Polynomial>,
}

impl ParamComponent {
    pub fn line(field: FieldSpec, n_vars: usize, p: &[u64], q: &[u64]) -> Self {
        assert_eq!(p.len(), n_vars);
        assert_eq!(q.len(), n_vars);
        let param = (0..n_vars)
            .map(|v| BinaryForm::linear(field, p[v], q[v]))
            .collect();
        ParamComponent {
            kind: if n_vars == 4 {
                ComponentKind::LineP3
            } else {
                ComponentKind::LineP2
            },
            param,
            multiplicity: 1,
            transverse: None,
        }
    }

    pub fn rational(param: Vec<BinaryForm>) -> Self {
        ParamComponent {
            kind: ComponentKind::RationalCurveP3,
            param,
            multiplicity: 1,
            transverse: None,
        }
    }

    pub fn flat_fat(
        field: FieldSpec,
        n_vars: usize,
        support: &[u64],
        direction: &[u64],
        multiplicity: u32,
        transverse: Polynomial,
    ) -> Self {
        let mut c = Self::line(field, n_vars, support, direction);
        c.kind = ComponentKind::FlatFatPoint;
        c.multiplicity = multiplicity;
        c.transverse = Some(transverse);
        c
    }

    /// Common degree of the parametrizing forms.
    pub fn degree(&self) -> u32 {
        self.param[0].degree()
    }

    pub fn is_curve(&self) -> bool {
        !matches!(self.kind, ComponentKind::FlatFatPoint)
    }

    /// Evaluate the parametrization at a parameter point.
    pub fn point_at(&self, s: u64, u: u64) -> Vec<u64> {
        self.param.iter().map(|f| f.eval(s, u)).collect()
    }

    /// Restriction of an ambient form to this component.
    pub fn restrict(&self, f: &Polynomial) -> Result<BinaryForm> {
        f.restrict(&self.param)
    }

    fn validate(&self, ring: &RingSpec) -> Result<()> {
        if self.param.len() != ring.n_vars {
            return Err(Error::DegenerateConfiguration(format!(
                "component has {} parametrizing forms in a {}-variable ring",
                self.param.len(),
                ring.n_vars
            )));
        }
        let d = self.degree();
        if self.param.iter().any(|f| f.degree() != d) {
            return Err(Error::DegenerateConfiguration(
                "parametrizing forms of mixed degree".into(),
            ));
        }
        match self.kind {
            ComponentKind::LineP3 | ComponentKind::LineP2 | ComponentKind::FlatFatPoint => {
                if d != 1 {
                    return Err(Error::DegenerateConfiguration(
                        "line component of degree != 1".into(),
                    ));
                }
            }
            ComponentKind::RationalCurveP3 => {}
        }
        // Base-point freeness: the forms share no root on the line.
        let mut g = self.param[0].clone();
        for f in &self.param[1..] {
            g = g.gcd(f);
        }
        if g.degree() > 0 || g.is_zero() {
            return Err(Error::DegenerateConfiguration(
                "parametrizing forms share a base point".into(),
            ));
        }
        if self.kind == ComponentKind::FlatFatPoint {
            let ell = self.transverse.as_ref().ok_or_else(|| {
                Error::DegenerateConfiguration("flat fat point without transverse form".into())
            })?;
            if ell.homogeneous_degree() != Some(1) {
                return Err(Error::DegenerateConfiguration(
                    "transverse form must be linear".into(),
                ));
            }
            if ell.restrict(&self.param)?.is_zero() {
                return Err(Error::DegenerateConfiguration(
                    "transverse form vanishes on the supporting line".into(),
                ));
            }
        } else if self.multiplicity != 1 {
            return Err(Error::DegenerateConfiguration(
                "multiplicity > 1 on a curve component".into(),
            ));
        }
        Ok(())
    }

    /// Ideal of the supporting line (for lines and flat-fat points): the
    /// linear forms vanishing on the two spanning points.
    pub fn line_forms(&self, ring: RingSpec) -> Result<Vec<Polynomial>> {
        if self.degree() != 1 {
            return Err(Error::Invalid(
                "line_forms is only defined for degree-1 components".into(),
            ));
        }
        let p = self.point_at(1, 0);
        let q = self.point_at(0, 1);
        let m = FieldMatrix::from_rows(ring.field, &[p, q])?;
        let k = m.kernel_basis();
        Ok((0..k.cols())
            .map(|j| {
                let coeffs: Vec<u64> = (0..ring.n_vars).map(|v| k.at(v, j)).collect();
                Polynomial::linear_form(ring, &coeffs)
            })
            .collect())
    }
}

/// A declared gluing: parameter points on components i and j mapping to one
/// ambient point.
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct NodeSpec {
    pub i: usize,
    pub j: usize,
    pub p_i: (u64, u64),
    pub p_j: (u64, u64),
}

#[derive(Clone, Debug, Default, Serialize, Deserialize)]
pub struct ConfigMeta {
    pub recipe: String,
    pub seed: u64,
    pub label: String,
}

/// A curve or zero-scheme in P3 or P2 described by parametrized components
/// and gluing data.
#[derive(Clone, Debug)]
pub struct Configuration {
    pub ring: RingSpec,
    pub components: Vec<ParamComponent>,
    pub nodes: Vec<NodeSpec>,
    pub meta: ConfigMeta,
}

impl Configuration {
    pub fn new(ring: RingSpec, components: Vec<ParamComponent>, nodes: Vec<NodeSpec>) -> Self {
        Configuration {
            ring,
            components,
            nodes,
            meta: ConfigMeta::default(),
        }
    }

    pub fn field(&self) -> FieldSpec {
        self.ring.field
    }

    /// Sum of component degrees over curve components.
    pub fn curve_degree(&self) -> usize {
        self.components
            .iter()
            .filter(|c| c.is_curve())
            .map(|c| c.degree() as usize)
            .sum()
    }

    /// Arithmetic genus from component/node combinatorics: all components are
    /// rational, so p_a = #nodes − #components + 1.
    pub fn arithmetic_genus(&self) -> i64 {
        self.nodes.len() as i64 - self.components.len() as i64 + 1
    }

    pub fn validate(&self) -> Result<()> {
        for c in &self.components {
            c.validate(&self.ring)?;
        }
        // Declared nodes glue equal ambient points.
        for n in &self.nodes {
            if n.i >= self.components.len() || n.j >= self.components.len() || n.i == n.j {
                return Err(Error::DegenerateConfiguration(format!(
                    "node references invalid components ({}, {})",
                    n.i, n.j
                )));
            }
            let a = self.components[n.i].point_at(n.p_i.0, n.p_i.1);
            let b = self.components[n.j].point_at(n.p_j.0, n.p_j.1);
            if a.iter().all(|&x| x == 0) || !proportional(self.field(), &a, &b) {
                return Err(Error::DegenerateConfiguration(format!(
                    "node ({}, {}) does not glue equal ambient points",
                    n.i, n.j
                )));
            }
        }
        self.validate_disjointness()?;
        // Node conditions must be independent in every positive degree;
        // degree 1 and 2 ranks detect degenerate gluing data.
        if !self.nodes.is_empty() {
            for t in [1i64, 2] {
                let nm = self.node_matrix(t)?;
                if nm.rank() < self.nodes.len() {
                    return Err(Error::DegenerateConfiguration(format!(
                        "node evaluation matrix is rank-deficient in degree {t}"
                    )));
                }
            }
        }
        Ok(())
    }

    /// Components must be pairwise disjoint except at declared nodes. For a
    /// pair involving a degree-1 component the check is exact: the supporting
    /// line's equations restricted to the partner share exactly one root per
    /// declared node. Pairs of positive-degree rational curves never occur in
    /// the constructed configurations.
    fn validate_disjointness(&self) -> Result<()> {
        let n = self.components.len();
        for i in 0..n {
            for j in i + 1..n {
                let declared = self
                    .nodes
                    .iter()
                    .filter(|nd| (nd.i == i && nd.j == j) || (nd.i == j && nd.j == i))
                    .count();
                if self.components[i].kind == ComponentKind::FlatFatPoint
                    && self.components[j].kind == ComponentKind::FlatFatPoint
                {
                    // Zero-schemes: distinct support points suffice.
                    let pi = self.flat_fat_support_point(i)?;
                    let pj = self.flat_fat_support_point(j)?;
                    if proportional(self.field(), &pi, &pj) {
                        return Err(Error::DegenerateConfiguration(
                            "two flat fat points share a support point".into(),
                        ));
                    }
                    continue;
                }
                let (line_idx, other_idx) = if self.components[i].degree() == 1 {
                    (i, j)
                } else if self.components[j].degree() == 1 {
                    (j, i)
                } else {
                    continue;
                };
                let line = &self.components[line_idx];
                let other = &self.components[other_idx];
                let forms = line.line_forms(self.ring)?;
                let mut g: Option<BinaryForm> = None;
                for f in &forms {
                    let r = f.restrict(&other.param)?;
                    g = Some(match g {
                        None => r,
                        Some(prev) => prev.gcd(&r),
                    });
                }
                let meeting = g.map_or(0, |g| {
                    if g.is_zero() {
                        usize::MAX
                    } else {
                        g.degree() as usize
                    }
                });
                if meeting != declared {
                    return Err(Error::DegenerateConfiguration(format!(
                        "components {i} and {j} meet in {meeting} point(s), {declared} declared"
                    )));
                }
            }
        }
        Ok(())
    }

    fn flat_fat_support_point(&self, idx: usize) -> Result<Vec<u64>> {
        let c = &self.components[idx];
        let ell = c
            .transverse
            .as_ref()
            .ok_or_else(|| Error::DegenerateConfiguration("missing transverse form".into()))?;
        let restricted = ell.restrict(&c.param)?;
        // Root of a·s + b·u is (b : -a).
        let a = restricted.coeffs()[0];
        let b = restricted.coeffs()[1];
        Ok(c.point_at(b, self.field().neg(a)))
    }

    /// Node evaluation matrix in degree t: one row per node, columns indexed
    /// by the concatenated monomial bases of the component sections.
    fn node_matrix(&self, t: i64) -> Result<FieldMatrix> {
        let field = self.field();
        let block_dims = self.block_dims(t);
        let offsets = offsets_of(&block_dims);
        let total: usize = block_dims.iter().sum();
        let mut rows = Vec::with_capacity(self.nodes.len());
        for node in &self.nodes {
            let vi = self.components[node.i].point_at(node.p_i.0, node.p_i.1);
            let vj = self.components[node.j].point_at(node.p_j.0, node.p_j.1);
            let k = vi
                .iter()
                .position(|&x| x != 0)
                .ok_or_else(|| Error::DegenerateConfiguration("node at zero point".into()))?;
            let (ai, aj) = (vi[k], vj[k]);
            let mut row = vec![0u64; total];
            // Section value on branch i is f_i(p_i) / a_i^t; clearing
            // denominators gives a_j^t f_i(p_i) − a_i^t f_j(p_j) = 0.
            let wi = field.pow(aj, t as u64);
            let wj = field.pow(ai, t as u64);
            fill_eval_row(
                &mut row[offsets[node.i]..offsets[node.i] + block_dims[node.i]],
                field,
                node.p_i,
                wi,
                false,
            );
            fill_eval_row(
                &mut row[offsets[node.j]..offsets[node.j] + block_dims[node.j]],
                field,
                node.p_j,
                wj,
                true,
            );
            rows.push(row);
        }
        FieldMatrix::from_rows(field, &rows)
    }

    /// Dimensions of the section spaces H0(O_{P1}(d_i·t)) per curve component.
    fn block_dims(&self, t: i64) -> Vec<usize> {
        self.components
            .iter()
            .map(|c| {
                if c.is_curve() {
                    (c.degree() as i64 * t + 1).max(0) as usize
                } else {
                    0
                }
            })
            .collect()
    }
}

fn proportional(field: FieldSpec, a: &[u64], b: &[u64]) -> bool {
    for i in 0..a.len() {
        for j in i + 1..a.len() {
            if field.sub(field.mul(a[i], b[j]), field.mul(a[j], b[i])) != 0 {
                return false;
            }
        }
    }
    true
}

fn offsets_of(dims: &[usize]) -> Vec<usize> {
    let mut out = Vec::with_capacity(dims.len());
    let mut acc = 0;
    for &d in dims {
        out.push(acc);
        acc += d;
    }
    out
}

/// Write weight · (s^(D-k) u^k evaluated at p) into a section-coefficient row.
fn fill_eval_row(row: &mut [u64], field: FieldSpec, p: (u64, u64), weight: u64, negate: bool) {
    let dd = row.len() - 1;
    for (k, slot) in row.iter_mut().enumerate() {
        let v = field.mul(field.pow(p.0, (dd - k) as u64), field.pow(p.1, k as u64));
        let v = field.mul(v, weight);
        *slot = field.add(*slot, if negate { field.neg(v) } else { v });
    }
}

/// Powers of the parametrizing forms, for fast monomial restriction.
struct PowerTable {
    pows: Vec<Vec<BinaryForm>>,
}

impl PowerTable {
    fn build(comp: &ParamComponent, t: u32) -> PowerTable {
        let pows = comp
            .param
            .iter()
            .map(|f| {
                let mut v = Vec::with_capacity(t as usize + 1);
                v.push(BinaryForm::one(f.field()));
                for _ in 1..=t {
                    let prev = v.last().unwrap();
                    v.push(prev.mul(f));
                }
                v
            })
            .collect();
        PowerTable { pows }
    }

    fn restrict(&self, m: &Monomial, n_vars: usize) -> BinaryForm {
        let mut acc: Option<BinaryForm> = None;
        for v in 0..n_vars {
            let e = m.exp(v) as usize;
            if e == 0 {
                continue;
            }
            let p = &self.pows[v][e];
            acc = Some(match acc {
                None => p.clone(),
                Some(prev) => prev.mul(p),
            });
        }
        acc.unwrap_or_else(|| BinaryForm::one(self.pows[0][0].field()))
    }
}

/// dim [I_C]_t: the kernel of the stacked condition matrix.
pub fn ideal_dimension(cfg: &Configuration, t: i64) -> Result<usize> {
    if t < 0 {
        return Ok(0);
    }
    let m = condition_matrix(cfg, t)?;
    Ok(m.cols() - m.rank())
}

/// Condition matrix in degree t: one row per linear condition imposed by the
/// components, one column per degree-t monomial.
pub fn condition_matrix(cfg: &Configuration, t: i64) -> Result<FieldMatrix> {
    let ring = cfg.ring;
    let field = ring.field;
    let basis = ring.monomial_basis(t);
    let mut rows: Vec<Vec<u64>> = Vec::new();
    for comp in &cfg.components {
        let table = PowerTable::build(comp, t as u32);
        match comp.kind {
            ComponentKind::LineP3 | ComponentKind::LineP2 | ComponentKind::RationalCurveP3 => {
                // f|_C = 0: all coefficients of the restricted binary form.
                let n_rows = comp.degree() as usize * t as usize + 1;
                let mut block = vec![vec![0u64; basis.len()]; n_rows];
                for (col, m) in basis.iter().enumerate() {
                    let r = table.restrict(m, ring.n_vars);
                    for (k, &c) in r.coeffs().iter().enumerate() {
                        block[k][col] = c;
                    }
                }
                rows.extend(block);
            }
            ComponentKind::FlatFatPoint => {
                rows.extend(flat_fat_rows(cfg, comp, &table, &basis, t)?);
            }
        }
    }
    if rows.is_empty() {
        return Ok(FieldMatrix::zero(field, 0, basis.len()));
    }
    FieldMatrix::from_rows(field, &rows)
}

/// Conditions for membership in (I_line, ell^m): after a parameter change
/// sending ell|_line to the coordinate u, the m lowest coefficients of the
/// restriction must vanish.
fn flat_fat_rows(
    cfg: &Configuration,
    comp: &ParamComponent,
    table: &PowerTable,
    basis: &[Monomial],
    t: i64,
) -> Result<Vec<Vec<u64>>> {
    let ring = cfg.ring;
    let field = ring.field;
    let ell = comp.transverse.as_ref().unwrap();
    let rl = ell.restrict(&comp.param)?;
    let (a, b) = (rl.coeffs()[0], rl.coeffs()[1]);
    // (s, u) = A(s', u') with ell|_line mapped to u'.
    let (alpha, beta, gamma, delta) = if b != 0 {
        let binv = field.inv(b);
        (1, 0, field.neg(field.mul(a, binv)), binv)
    } else {
        (0, field.inv(a), 1, 0)
    };
    let m_conditions = (comp.multiplicity as usize).min(t as usize + 1);
    let mut block = vec![vec![0u64; basis.len()]; m_conditions];
    for (col, m) in basis.iter().enumerate() {
        let r = table.restrict(m, ring.n_vars);
        let changed = r.compose_linear(alpha, beta, gamma, delta);
        for (k, row) in block.iter_mut().enumerate() {
            row[col] = changed.coeffs()[k];
        }
    }
    Ok(block)
}

/// dim [I_{Z_m}]_t for the scheme Z_m cut on the curve components by the
/// m-fold thickening of the plane L = 0. Conditions per component: the
/// restriction is divisible by (L|_component)^m. Flat-fat components whose
/// supporting line lies inside the plane contribute nothing (they vanish
/// from the residual); any other flat-fat component is rejected.
pub fn section_scheme_dimension(
    cfg: &Configuration,
    plane: &Polynomial,
    m: u32,
    t: i64,
) -> Result<usize> {
    if t < 0 {
        return Ok(0);
    }
    let matrix = section_condition_matrix(cfg, plane, m, t)?;
    Ok(matrix.cols() - matrix.rank())
}

pub fn section_condition_matrix(
    cfg: &Configuration,
    plane: &Polynomial,
    m: u32,
    t: i64,
) -> Result<FieldMatrix> {
    let ring = cfg.ring;
    let field = ring.field;
    if plane.homogeneous_degree() != Some(1) {
        return Err(Error::DegenerateSection("plane form must be linear".into()));
    }
    let basis = ring.monomial_basis(t);
    let mut rows: Vec<Vec<u64>> = Vec::new();
    for comp in &cfg.components {
        let restricted_plane = plane.restrict(&comp.param)?;
        if comp.kind == ComponentKind::FlatFatPoint {
            if restricted_plane.is_zero() {
                continue; // specialized into the plane: vanishes from the residual
            }
            return Err(Error::DegenerateSection(
                "flat fat point transverse to the section plane".into(),
            ));
        }
        if restricted_plane.is_zero() {
            return Err(Error::DegenerateSection(
                "plane vanishes identically on a component".into(),
            ));
        }
        // Parameter change so that (L|_C)^m has no root at (0:1).
        let (alpha, beta, gamma, delta) = normalize_change(field, &restricted_plane)?;
        let changed_comp = ParamComponent {
            param: comp
                .param
                .iter()
                .map(|f| f.compose_linear(alpha, beta, gamma, delta))
                .collect(),
            ..comp.clone()
        };
        let divisor = plane.restrict(&changed_comp.param)?.pow(m);
        let table = PowerTable::build(&changed_comp, t as u32);
        let n_rows = divisor.degree() as usize;
        let mut block = vec![vec![0u64; basis.len()]; n_rows];
        for (col, mono) in basis.iter().enumerate() {
            let r = table.restrict(mono, ring.n_vars);
            let rem = r.rem_coefficients(&divisor)?;
            for (k, &c) in rem.iter().enumerate() {
                block[k][col] = c;
            }
        }
        rows.extend(block);
    }
    if rows.is_empty() {
        return Ok(FieldMatrix::zero(field, 0, basis.len()));
    }
    FieldMatrix::from_rows(field, &rows)
}

/// Deterministic GL2 change making the restricted plane nonzero at (0:1).
fn normalize_change(field: FieldSpec, restricted: &BinaryForm) -> Result<(u64, u64, u64, u64)> {
    let candidates: Vec<(u64, u64)> = [(0u64, 1u64), (1, 0)]
        .into_iter()
        .chain((1..=restricted.degree() as u64 + 2).map(|k| (1, k)))
        .collect();
    for (s0, u0) in candidates {
        if restricted.eval(s0, u0) != 0 {
            // (beta, delta) = image of (0:1) must be (s0, u0).
            let (beta, delta) = (s0, u0);
            let (alpha, gamma) = if delta != 0 { (1, 0) } else { (0, 1) };
            let det = field.sub(field.mul(alpha, delta), field.mul(beta, gamma));
            debug_assert!(det != 0);
            return Ok((alpha, beta, gamma, delta));
        }
    }
    Err(Error::DegenerateSection(
        "could not normalize the section plane on a component".into(),
    ))
}

/// Degree of Z_m = m · (sum of curve component degrees).
pub fn section_scheme_degree(cfg: &Configuration, m: u32) -> usize {
    m as usize * cfg.curve_degree()
}

/// dim H0(O_C(t)): tuples of degree d_i·t forms on the parametrizing lines
/// agreeing at all declared nodes.
pub fn h0_structure_sheaf(cfg: &Configuration, t: i64) -> Result<usize> {
    if t < 0 {
        return Ok(0);
    }
    if cfg.components.iter().any(|c| !c.is_curve()) {
        return Err(Error::DegenerateConfiguration(
            "h0_structure_sheaf needs a curve configuration".into(),
        ));
    }
    let total: usize = cfg.block_dims(t).iter().sum();
    if cfg.nodes.is_empty() {
        return Ok(total);
    }
    let nm = cfg.node_matrix(t)?;
    Ok(total - nm.rank())
}

/// Per-degree presentation data: a basis of the node-compatible section space
/// V_t (in the coordinates of the concatenated component sections U_t) and
/// the image W_t of the degree-t forms of the ambient ring.
#[derive(Clone, Debug)]
pub struct DegreeData {
    pub t: i64,
    pub block_dims: Vec<usize>,
    /// U_t × dim V_t basis of the node-compatible subspace.
    pub v_basis: FieldMatrix,
    /// U_t × dim [R]_t restriction images.
    pub w_cols: FieldMatrix,
    pub rank_w: usize,
    pub dim_ideal: usize,
    pub h0: usize,
    pub dim_m: usize,
}

/// Per-degree dimensions of the Rao module with the materialized
/// presentation.
#[derive(Clone, Debug)]
pub struct RaoProfile {
    pub dims: BTreeMap<i64, usize>,
    pub ideal_dims: BTreeMap<i64, usize>,
    pub h0s: BTreeMap<i64, usize>,
    pub horizon: i64,
    data: Vec<DegreeData>,
}

impl RaoProfile {
    pub fn dim_m(&self, t: i64) -> usize {
        self.dims.get(&t).copied().unwrap_or(0)
    }

    pub fn dim_ideal(&self, t: i64) -> Option<usize> {
        if t < 0 {
            return Some(0);
        }
        self.ideal_dims.get(&t).copied()
    }

    pub fn degree_data(&self, t: i64) -> Option<&DegreeData> {
        self.data.iter().find(|d| d.t == t)
    }

    /// Degrees with a nonzero component, as an inclusive range.
    pub fn support(&self) -> Option<(i64, i64)> {
        let mut nonzero = self.dims.iter().filter(|&(_, &d)| d > 0).map(|(&t, _)| t);
        let first = nonzero.next()?;
        let last = nonzero.next_back().unwrap_or(first);
        Some((first, last))
    }

    /// Total K-dimension.
    pub fn total_dimension(&self) -> usize {
        self.dims.values().sum()
    }
}

const MIN_HORIZON: i64 = 6;
const MAX_HORIZON: i64 = 64;

/// Build the graded presentation of M(C) degree by degree until the
/// dimensions vanish twice past the support (and at least up to degree 6).
///
/// Each degree is computed two ways which must agree: the alternating-sum
/// formula h0 − dim [R]_t + dim [I_C]_t, and the presentation quotient
/// dim V_t − rank W_t.
pub fn rao_profile(cfg: &Configuration) -> Result<RaoProfile> {
    let ring = cfg.ring;
    let mut data = Vec::new();
    let mut dims = BTreeMap::new();
    let mut ideal_dims = BTreeMap::new();
    let mut h0s = BTreeMap::new();
    let mut t = 0i64;
    loop {
        let dd = degree_data(cfg, t)?;
        let formula = dd.h0 as i64 - ring.dim_t(t) as i64 + dd.dim_ideal as i64;
        if formula != dd.dim_m as i64 {
            return Err(Error::RouteDisagreement {
                m: 0,
                t,
                formula,
                presentation: dd.dim_m as i64,
            });
        }
        dims.insert(t, dd.dim_m);
        ideal_dims.insert(t, dd.dim_ideal);
        h0s.insert(t, dd.h0);
        data.push(dd);
        let two_zeros = t >= 1 && dims[&t] == 0 && dims[&(t - 1)] == 0;
        if t >= MIN_HORIZON && two_zeros {
            break;
        }
        if t >= MAX_HORIZON {
            return Err(Error::DegenerateConfiguration(
                "Rao module dimensions did not stabilize".into(),
            ));
        }
        t += 1;
    }
    Ok(RaoProfile {
        dims,
        ideal_dims,
        h0s,
        horizon: t,
        data,
    })
}

fn degree_data(cfg: &Configuration, t: i64) -> Result<DegreeData> {
    let ring = cfg.ring;
    let field = ring.field;
    let block_dims = cfg.block_dims(t);
    let total: usize = block_dims.iter().sum();
    let v_basis = if cfg.nodes.is_empty() {
        FieldMatrix::identity(field, total)
    } else {
        cfg.node_matrix(t)?.kernel_basis()
    };
    let w_cols = restriction_columns(cfg, t)?;
    let rank_w = w_cols.rank();
    let dim_ideal = ring.dim_t(t) - rank_w;
    let h0 = v_basis.cols();
    let dim_m = h0 - rank_w;
    Ok(DegreeData {
        t,
        block_dims,
        v_basis,
        w_cols,
        rank_w,
        dim_ideal,
        h0,
        dim_m,
    })
}

/// U_t × dim [R]_t matrix of restrictions of the degree-t monomials.
fn restriction_columns(cfg: &Configuration, t: i64) -> Result<FieldMatrix> {
    let ring = cfg.ring;
    let field = ring.field;
    let basis = ring.monomial_basis(t);
    let block_dims = cfg.block_dims(t);
    let offsets = offsets_of(&block_dims);
    let total: usize = block_dims.iter().sum();
    let mut m = FieldMatrix::zero(field, total, basis.len());
    for (ci, comp) in cfg.components.iter().enumerate() {
        if !comp.is_curve() {
            return Err(Error::DegenerateConfiguration(
                "presentation requires a curve configuration".into(),
            ));
        }
        let table = PowerTable::build(comp, t as u32);
        for (col, mono) in basis.iter().enumerate() {
            let r = table.restrict(mono, ring.n_vars);
            for (k, &c) in r.coeffs().iter().enumerate() {
                if c != 0 {
                    m.set(offsets[ci] + k, col, c);
                }
            }
        }
    }
    Ok(m)
}

/// Blockwise multiplication map on concatenated sections given one binary
/// form per component (the restriction of the multiplier).
fn multiplication_matrix(
    cfg: &Configuration,
    multipliers: &[BinaryForm],
    t_from: i64,
) -> Result<FieldMatrix> {
    let field = cfg.field();
    let from_dims = cfg.block_dims(t_from);
    let from_offsets = offsets_of(&from_dims);
    let from_total: usize = from_dims.iter().sum();
    let to_dims: Vec<usize> = from_dims
        .iter()
        .zip(multipliers)
        .map(|(&fd, p)| fd + p.degree() as usize)
        .collect();
    let to_offsets = offsets_of(&to_dims);
    let to_total: usize = to_dims.iter().sum();
    let mut m = FieldMatrix::zero(field, to_total, from_total);
    for (ci, p) in multipliers.iter().enumerate() {
        for a in 0..from_dims[ci] {
            for (k, &c) in p.coeffs().iter().enumerate() {
                if c != 0 {
                    m.set(to_offsets[ci] + a + k, from_offsets[ci] + a, c);
                }
            }
        }
    }
    Ok(m)
}

/// Rank of ×L^m: [M]_{t−m} → [M]_t, computed two ways which must agree:
///
/// * formula route: dim ker = dim [I_{Z_m|H^m}]_t − dim [I_C]_t +
///   dim [I_C]_{t−m}, with dim [I_{Z_m|H^m}]_t = dim [I_{Z_m}]_t −
///   dim [R]_{t−m}; rank = dim [M]_{t−m} − dim ker;
/// * presentation route: rank of the induced map on the V/W quotients.
pub fn multiplication_rank(
    profile: &RaoProfile,
    cfg: &Configuration,
    plane: &Polynomial,
    m: u32,
    t: i64,
) -> Result<usize> {
    let ring = cfg.ring;
    let src = profile.dim_m(t - m as i64);
    let tgt = profile.dim_m(t);
    if src == 0 || tgt == 0 {
        return Ok(0);
    }

    // Formula route.
    let z_dim = section_scheme_dimension(cfg, plane, m, t)?;
    let z_in_surface = z_dim as i64 - ring.dim_t(t - m as i64) as i64;
    let di_t = profile
        .dim_ideal(t)
        .ok_or_else(|| Error::Invalid("profile does not cover t".into()))?;
    let di_s = profile
        .dim_ideal(t - m as i64)
        .ok_or_else(|| Error::Invalid("profile does not cover t − m".into()))?;
    let ker = z_in_surface - di_t as i64 + di_s as i64;
    let formula = src as i64 - ker;

    // Presentation route.
    let from = profile
        .degree_data(t - m as i64)
        .ok_or_else(|| Error::Invalid("profile presentation does not cover t − m".into()))?;
    let to = profile
        .degree_data(t)
        .ok_or_else(|| Error::Invalid("profile presentation does not cover t".into()))?;
    let multipliers: Vec<BinaryForm> = cfg
        .components
        .iter()
        .map(|c| plane.restrict(&c.param).map(|r| r.pow(m)))
        .collect::<Result<Vec<_>>>()?;
    let mult = multiplication_matrix(cfg, &multipliers, t - m as i64)?;
    let lv = mult.mul(&from.v_basis)?;
    let presentation = lv.image_sum_dimension(&to.w_cols)? as i64 - to.rank_w as i64;

    if formula != presentation {
        return Err(Error::RouteDisagreement {
            m,
            t,
            formula,
            presentation,
        });
    }
    Ok(presentation as usize)
}

/// Per-degree socle dimensions: elements killed by every coordinate form,
/// via intersected kernels on the presentation quotient.
pub fn socle_dimensions(
    profile: &RaoProfile,
    cfg: &Configuration,
    t_range: impl IntoIterator<Item = i64>,
) -> Result<BTreeMap<i64, usize>> {
    let ring = cfg.ring;
    let field = ring.field;
    let mut out = BTreeMap::new();
    for t in t_range {
        let dim_here = profile.dim_m(t);
        if dim_here == 0 {
            out.insert(t, 0);
            continue;
        }
        if profile.dim_m(t + 1) == 0 {
            // The next degree vanishes, so everything here is socle.
            out.insert(t, dim_here);
            continue;
        }
        let from = profile.degree_data(t).unwrap();
        let to = profile.degree_data(t + 1).unwrap();
        // v is in the socle preimage iff x_k·v ∈ W_{t+1} for every coordinate:
        // stack the coordinate maps against per-block copies of W_{t+1}.
        let mut a_blocks: Vec<FieldMatrix> = Vec::new();
        for k in 0..ring.n_vars {
            let xk = Polynomial::variable(ring, k);
            let multipliers: Vec<BinaryForm> = cfg
                .components
                .iter()
                .map(|c| xk.restrict(&c.param))
                .collect::<Result<Vec<_>>>()?;
            let mult = multiplication_matrix(cfg, &multipliers, t)?;
            a_blocks.push(mult.mul(&from.v_basis)?);
        }
        let u_to: usize = to.block_dims.iter().sum();
        let w_cols = to.w_cols.cols();
        let v_dim = from.v_basis.cols();
        let rows = ring.n_vars * u_to;
        let cols = v_dim + ring.n_vars * w_cols;
        let mut big = FieldMatrix::zero(field, rows, cols);
        for (k, block) in a_blocks.iter().enumerate() {
            for r in 0..u_to {
                for c in 0..v_dim {
                    let v = block.at(r, c);
                    if v != 0 {
                        big.set(k * u_to + r, c, v);
                    }
                }
                for c in 0..w_cols {
                    let v = to.w_cols.at(r, c);
                    if v != 0 {
                        big.set(k * u_to + r, v_dim + k * w_cols + c, v);
                    }
                }
            }
        }
        let ker = big.kernel_dimension();
        let ker_b = ring.n_vars * (w_cols - to.rank_w);
        let preimage = ker - ker_b;
        out.insert(t, preimage - from.rank_w);
    }
    Ok(out)
}
