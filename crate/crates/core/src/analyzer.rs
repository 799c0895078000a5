//! Orchestration: Rao profiles, h-vectors, multiplication-rank sweeps,
//! WLP/SLP verdicts with sampling semantics, flat-fat genericity tests, and
//! conjecture scans.
//!
//! Verdict semantics: maximal rank achieved for at least one sampled linear
//! form certifies the generic verdict (semicontinuity); failure for all
//! samples is reported as failure with a "probabilistic" caveat.

use crate::configs::{self, Sampler};
use crate::error::{Error, Result};
use crate::gf::{FieldMatrix, FieldSpec};
use crate::poly::{dim_forms, Monomial, Polynomial, RingSpec};
use crate::restriction::{self, ComponentKind, Configuration, RaoProfile};
use serde::Serialize;
use std::collections::BTreeMap;

/// First-difference sequence of a Hilbert function; entries sum to the
/// scheme degree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HVector(pub Vec<usize>);

impl std::fmt::Display for HVector {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "({})",
            self.0
                .iter()
                .map(|v| v.to_string())
                .collect::<Vec<_>>()
                .join(",")
        )
    }
}

impl HVector {
    pub fn degree(&self) -> usize {
        self.0.iter().sum()
    }

    fn from_hilbert_function(hf: &[usize]) -> HVector {
        let mut out = Vec::with_capacity(hf.len());
        let mut prev = 0usize;
        for &v in hf {
            out.push(v - prev);
            prev = v;
        }
        while out.last() == Some(&0) {
            out.pop();
        }
        HVector(out)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Holds,
    Fails,
    Vacuous,
}

#[derive(Clone, Debug, Serialize)]
pub struct LefschetzRow {
    pub t: i64,
    pub dim_src: usize,
    pub dim_tgt: usize,
    pub rank: usize,
    pub maximal: bool,
}

/// Per-degree ranks of ×L^m with the overall verdict and replay data.
#[derive(Clone, Debug, Serialize)]
pub struct LefschetzReport {
    pub recipe: String,
    pub m: u32,
    pub prime: u64,
    pub rows: Vec<LefschetzRow>,
    pub verdict: Verdict,
    pub failing_degrees: Vec<i64>,
    pub seeds: Vec<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub caveat: Option<String>,
    pub dims: BTreeMap<i64, usize>,
    /// Set when the rank at some (m, t) varied across the sampled forms.
    pub rank_variance: bool,
}

impl LefschetzReport {
    pub fn to_markdown(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!(
            "## {} — ×L^{} ({:?}, p = {})\n\n",
            self.recipe, self.m, self.verdict, self.prime
        ));
        out.push_str("| t | dim src | dim tgt | rank | maximal |\n|---|---|---|---|---|\n");
        for r in &self.rows {
            out.push_str(&format!(
                "| {} | {} | {} | {} | {} |\n",
                r.t, r.dim_src, r.dim_tgt, r.rank, r.maximal
            ));
        }
        if let Some(c) = &self.caveat {
            out.push_str(&format!("\ncaveat: {c}\n"));
        }
        out
    }
}

fn derive_seed(base: u64, k: u64) -> u64 {
    // splitmix64 step
    let mut z = base.wrapping_add(0x9E3779B97F4A7C15u64.wrapping_mul(k.wrapping_add(1)));
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58476D1CE4E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D049BB133111EB);
    z ^ (z >> 31)
}

/// A linear form not vanishing identically on any curve component.
pub fn sample_plane(cfg: &Configuration, seed: u64) -> Result<Polynomial> {
    let mut sampler = Sampler::new(seed, cfg.field());
    for _ in 0..32 {
        let plane = sampler.linear_form(cfg.ring);
        let ok = cfg
            .components
            .iter()
            .filter(|c| c.is_curve())
            .all(|c| !c.restrict(&plane).map(|r| r.is_zero()).unwrap_or(true));
        if ok {
            return Ok(plane);
        }
    }
    Err(Error::ResampleExhausted {
        attempts: 32,
        what: "linear form transverse to all components".into(),
    })
}

/// Sweep ×L^m over the support window for `trials` sampled forms.
pub fn slp_range_verdict(cfg: &Configuration, m: u32, trials: usize) -> Result<LefschetzReport> {
    let trials = trials.max(1);
    let profile = restriction::rao_profile(cfg)?;
    slp_range_verdict_with_profile(cfg, &profile, m, trials)
}

pub fn slp_range_verdict_with_profile(
    cfg: &Configuration,
    profile: &RaoProfile,
    m: u32,
    trials: usize,
) -> Result<LefschetzReport> {
    let base = LefschetzReport {
        recipe: cfg.meta.recipe.clone(),
        m,
        prime: cfg.field().p(),
        rows: vec![],
        verdict: Verdict::Vacuous,
        failing_degrees: vec![],
        seeds: vec![],
        caveat: None,
        dims: profile.dims.clone(),
        rank_variance: false,
    };
    let Some((lo, hi)) = profile.support() else {
        return Ok(base); // the module is zero: vacuous
    };
    let window: Vec<i64> = (lo..=hi + m as i64)
        .filter(|&t| profile.dim_m(t - m as i64) + profile.dim_m(t) > 0)
        .collect();
    if window.is_empty() {
        return Ok(base);
    }

    let mut seeds = Vec::with_capacity(trials);
    let mut ranks: BTreeMap<i64, Vec<usize>> = window.iter().map(|&t| (t, vec![])).collect();
    for k in 0..trials {
        let seed = derive_seed(cfg.meta.seed, 0xA11CE ^ (((m as u64) << 32) | k as u64));
        let plane = sample_plane(cfg, seed)?;
        seeds.push(seed);
        for &t in &window {
            let rank = restriction::multiplication_rank(profile, cfg, &plane, m, t)?;
            ranks.get_mut(&t).unwrap().push(rank);
        }
    }

    let mut rows = Vec::with_capacity(window.len());
    let mut failing = Vec::new();
    let mut variance = false;
    for &t in &window {
        let dim_src = profile.dim_m(t - m as i64);
        let dim_tgt = profile.dim_m(t);
        let observed = &ranks[&t];
        let best = *observed.iter().max().unwrap();
        if dim_src.min(dim_tgt) > 0 && observed.iter().any(|&r| r != best) {
            variance = true;
        }
        let maximal = best == dim_src.min(dim_tgt);
        if !maximal {
            failing.push(t);
        }
        rows.push(LefschetzRow {
            t,
            dim_src,
            dim_tgt,
            rank: best,
            maximal,
        });
    }
    let all_trivial = rows.iter().all(|r| r.dim_src == 0 || r.dim_tgt == 0);
    let verdict = if !failing.is_empty() {
        Verdict::Fails
    } else if all_trivial {
        // Every map in the window has zero source or target.
        Verdict::Vacuous
    } else {
        Verdict::Holds
    };
    Ok(LefschetzReport {
        rows,
        verdict,
        caveat: (!failing.is_empty()).then(|| "probabilistic".to_string()),
        failing_degrees: failing,
        seeds,
        rank_variance: variance,
        ..base
    })
}

/// WLP is the m = 1 sweep.
pub fn wlp_verdict(cfg: &Configuration, trials: usize) -> Result<LefschetzReport> {
    slp_range_verdict(cfg, 1, trials)
}

/// Hilbert function of the section scheme Z_m up to stabilization at its
/// degree.
pub fn section_hilbert_function(
    cfg: &Configuration,
    plane: &Polynomial,
    m: u32,
) -> Result<Vec<usize>> {
    let deg = restriction::section_scheme_degree(cfg, m);
    let ring = cfg.ring;
    let mut hf = Vec::new();
    for t in 0..64i64 {
        let v = ring.dim_t(t) - restriction::section_scheme_dimension(cfg, plane, m, t)?;
        hf.push(v);
        if v == deg && t >= 1 && hf[t as usize - 1] == deg {
            break;
        }
    }
    Ok(hf)
}

/// First differences of the section scheme's Hilbert function.
///
/// For m = 1 on a line configuration the scheme is computed natively in the
/// plane (simple points in P2); for m >= 2 the conditions are assembled in
/// the ambient ring.
pub fn h_vector_of_section(cfg: &Configuration, plane: &Polynomial, m: u32) -> Result<HVector> {
    if m == 1
        && cfg
            .components
            .iter()
            .all(|c| matches!(c.kind, ComponentKind::LineP3))
    {
        let plane_cfg = plane_section_config(cfg, plane)?;
        let hf = plane_hilbert_function(&plane_cfg)?;
        return Ok(HVector::from_hilbert_function(&hf));
    }
    let hf = section_hilbert_function(cfg, plane, m)?;
    Ok(HVector::from_hilbert_function(&hf))
}

/// Hilbert function of a P2 configuration of flat fat points, up to
/// stabilization.
pub fn plane_hilbert_function(cfg: &Configuration) -> Result<Vec<usize>> {
    let ring = cfg.ring;
    let deg: usize = cfg.components.iter().map(|c| c.multiplicity as usize).sum();
    let mut hf = Vec::new();
    for t in 0..64i64 {
        let v = ring.dim_t(t) - restriction::ideal_dimension(cfg, t)?;
        hf.push(v);
        if v == deg && t >= 1 && hf[t as usize - 1] == deg {
            break;
        }
    }
    Ok(hf)
}

/// The plane section Z_1|H of a configuration of lines, as a native P2
/// configuration of simple points.
pub fn plane_section_config(cfg: &Configuration, plane: &Polynomial) -> Result<Configuration> {
    let field = cfg.field();
    let ring2 = RingSpec::p2(field);
    let coeffs: Vec<u64> = (0..cfg.ring.n_vars)
        .map(|v| plane.coefficient(&Monomial::variable(v)))
        .collect();
    let basis = FieldMatrix::from_rows(field, &[coeffs])?.kernel_basis();
    let mut sampler = Sampler::new(derive_seed(cfg.meta.seed, 0x9EC7), field);
    let mut comps = Vec::with_capacity(cfg.components.len());
    for line in &cfg.components {
        let rl = plane.restrict(&line.param)?;
        let (a, b) = (rl.coeffs()[0], rl.coeffs()[1]);
        if a == 0 && b == 0 {
            return Err(Error::DegenerateSection("line inside the plane".into()));
        }
        let ambient = line.point_at(b, field.neg(a));
        let y = basis
            .solve(&ambient)?
            .ok_or_else(|| Error::DegenerateSection("section point off the plane".into()))?;
        let comp = (0..32)
            .find_map(|_| {
                let dir = sampler.point(3);
                plane_flat_fat_public(field, ring2, &y, &dir, 1)
            })
            .ok_or(Error::ResampleExhausted {
                attempts: 32,
                what: "direction for a section point".into(),
            })?;
        comps.push(comp);
    }
    let mut out = Configuration::new(ring2, comps, vec![]);
    out.meta = cfg.meta.clone();
    out.meta.label = format!("{} ∩ H", cfg.meta.label);
    out.validate()?;
    Ok(out)
}

fn plane_flat_fat_public(
    field: FieldSpec,
    ring: RingSpec,
    support: &[u64],
    direction: &[u64],
    m: u32,
) -> Option<restriction::ParamComponent> {
    configs::plane_flat_fat(field, ring, support, direction, m)
}

/// Genericity report for unions of flat fat points in the plane.
#[derive(Clone, Debug, Serialize)]
pub struct FlatFatReport {
    pub s: usize,
    pub m: u32,
    pub generic: bool,
    pub expected: Vec<usize>,
    /// Pointwise best observed Hilbert function across the trials.
    pub observed: Vec<usize>,
    pub trials: usize,
    pub seeds: Vec<u64>,
}

/// Compare the observed Hilbert function of s random flat fat points of
/// multiplicity m against min {ms, C(j+2,2)}. Genericity is certified by any
/// one generic sample (semicontinuity).
pub fn genericity_test_flatfat(
    s: usize,
    m: u32,
    trials: usize,
    base_seed: u64,
    field: FieldSpec,
) -> Result<FlatFatReport> {
    let trials = trials.max(1);
    let deg = m as usize * s;
    let mut j_stop = 0i64;
    while dim_forms(3, j_stop) < deg {
        j_stop += 1;
    }
    j_stop += 1;
    let expected: Vec<usize> = (0..=j_stop).map(|j| deg.min(dim_forms(3, j))).collect();
    let mut observed = vec![0usize; expected.len()];
    let mut generic = false;
    let mut seeds = Vec::with_capacity(trials);
    for k in 0..trials {
        let seed = derive_seed(base_seed, 0xFA7 ^ k as u64);
        seeds.push(seed);
        let cfg = configs::flat_fat_points_plane(s, m, seed, None, field)?;
        let hf: Vec<usize> = (0..=j_stop)
            .map(|j| restriction::ideal_dimension(&cfg, j).map(|d| dim_forms(3, j) - d))
            .collect::<Result<Vec<_>>>()?;
        for (slot, &v) in observed.iter_mut().zip(&hf) {
            *slot = (*slot).max(v);
        }
        if hf == expected {
            generic = true;
        }
    }
    Ok(FlatFatReport {
        s,
        m,
        generic,
        expected,
        observed,
        trials,
        seeds,
    })
}

/// h-vectors (X1, X2) of the specialization experiment: r general lines with
/// k components moved into the sampled plane.
pub fn specialization_h_vectors(
    r: usize,
    k: usize,
    seed: u64,
    field: FieldSpec,
) -> Result<(HVector, HVector)> {
    let exp = configs::skew_lines_specialized(r, k, 3, seed, field)?;
    let x1_hf = plane_hilbert_function(&exp.section_plane)?;
    let x1 = HVector::from_hilbert_function(&x1_hf);
    let x2_hf = section_hilbert_function(&exp.residual, &exp.plane, 2)?;
    let x2 = HVector::from_hilbert_function(&x2_hf);
    Ok((x1, x2))
}

/// Per-degree check of the generic-position dichotomy: in every degree,
/// either the section scheme imposes no conditions inside the thickened
/// plane (dim [I_{Z|H^m}]_t = 0) or it imposes independent conditions
/// (h1(I_Z(t)) = 0). When the dichotomy holds everywhere, every ×L^m map has
/// maximal rank without computing any presentation rank.
pub fn generic_position_certificate(
    cfg: &Configuration,
    plane: &Polynomial,
    m: u32,
    t_max: i64,
) -> Result<bool> {
    let ring = cfg.ring;
    let deg = restriction::section_scheme_degree(cfg, m);
    for t in 0..=t_max {
        let z = restriction::section_scheme_dimension(cfg, plane, m, t)?;
        let in_surface = z as i64 - ring.dim_t(t - m as i64) as i64;
        let h1 = deg as i64 - (ring.dim_t(t) as i64 - z as i64);
        if in_surface > 0 && h1 > 0 {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Injectivity-suffices shortcut for lines on a quadric: with a symmetric
/// profile and socle concentrated in the last degree, WLP follows from
/// injectivity of the single map into the middle degree.
pub fn wlp_via_injectivity_shortcut(
    cfg: &Configuration,
    profile: &RaoProfile,
    plane: &Polynomial,
) -> Result<bool> {
    let Some((lo, hi)) = profile.support() else {
        return Ok(true);
    };
    let mid = lo + (hi - lo) / 2 + (hi - lo) % 2; // ceil of the midpoint
    let t = mid.max(lo + 1);
    let rank = restriction::multiplication_rank(profile, cfg, plane, 1, t)?;
    Ok(rank == profile.dim_m(t - 1))
}

/// One cell of a conjecture scan.
#[derive(Clone, Debug, Serialize)]
pub struct ScanCell {
    pub cell: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub verdict: Option<Verdict>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub generic: Option<bool>,
    pub seeds: Vec<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ScanTable {
    pub kind: String,
    pub cells: Vec<ScanCell>,
}

impl ScanTable {
    pub fn to_markdown(&self) -> String {
        let mut out = format!(
            "## scan: {}\n\n| cell | result | note |\n|---|---|---|\n",
            self.kind
        );
        for c in &self.cells {
            let result = match (&c.verdict, &c.generic) {
                (Some(v), _) => format!("{v:?}"),
                (_, Some(g)) => {
                    if *g {
                        "generic".into()
                    } else {
                        "not generic".into()
                    }
                }
                _ => "-".into(),
            };
            let note = c.error.clone().unwrap_or_default();
            out.push_str(&format!("| {} | {} | {} |\n", c.cell, result, note));
        }
        out
    }
}

/// Scan specification: SLP verdicts over ranges of r and m, or flat-fat
/// genericity over a range of s at fixed m.
#[derive(Clone, Debug, serde::Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum ScanSpec {
    Slp {
        r: (usize, usize),
        m: (u32, u32),
        #[serde(default = "default_trials")]
        trials: usize,
        #[serde(default)]
        seed: u64,
    },
    FlatFat {
        m: u32,
        s: (usize, usize),
        #[serde(default = "default_trials")]
        trials: usize,
        #[serde(default)]
        seed: u64,
    },
}

fn default_trials() -> usize {
    5
}

/// Tabulate evidence; never asserts a conjecture. Cells run in parallel
/// (each is an independent pure computation) and are merged in cell order;
/// per-cell errors are recorded and the scan continues.
pub fn conjecture_scan(spec: &ScanSpec, field: FieldSpec) -> Result<ScanTable> {
    let (kind, jobs): (
        &str,
        Vec<Box<dyn Fn() -> (String, Result<ScanCell>) + Send + Sync>>,
    ) = match spec {
        ScanSpec::Slp { r, m, trials, seed } => {
            let mut jobs: Vec<Box<dyn Fn() -> (String, Result<ScanCell>) + Send + Sync>> =
                Vec::new();
            for rr in r.0..=r.1 {
                for mm in m.0..=m.1 {
                    let (trials, seed) = (*trials, *seed);
                    jobs.push(Box::new(move || {
                        let cell = format!("r={rr}, m={mm}");
                        let out =
                            configs::general_skew_lines(rr, derive_seed(seed, rr as u64), field)
                                .and_then(|cfg| slp_range_verdict(&cfg, mm, trials))
                                .map(|rep| ScanCell {
                                    cell: cell.clone(),
                                    verdict: Some(rep.verdict),
                                    generic: None,
                                    seeds: rep.seeds,
                                    error: None,
                                });
                        (cell, out)
                    }));
                }
            }
            ("slp", jobs)
        }
        ScanSpec::FlatFat { m, s, trials, seed } => {
            let mut jobs: Vec<Box<dyn Fn() -> (String, Result<ScanCell>) + Send + Sync>> =
                Vec::new();
            for ss in s.0..=s.1 {
                let (m, trials, seed) = (*m, *trials, *seed);
                jobs.push(Box::new(move || {
                    let cell = format!("s={ss}, m={m}");
                    let out =
                        genericity_test_flatfat(ss, m, trials, derive_seed(seed, ss as u64), field)
                            .map(|rep| ScanCell {
                                cell: cell.clone(),
                                verdict: None,
                                generic: Some(rep.generic),
                                seeds: rep.seeds,
                                error: None,
                            });
                    (cell, out)
                }));
            }
            ("flat-fat", jobs)
        }
    };

    let n = jobs.len();
    let mut cells: Vec<Option<ScanCell>> = (0..n).map(|_| None).collect();
    let threads = std::thread::available_parallelism()
        .map(|p| p.get())
        .unwrap_or(1)
        .min(n.max(1));
    let next = std::sync::atomic::AtomicUsize::new(0);
    let jobs = &jobs;
    let results = std::sync::Mutex::new(&mut cells);
    std::thread::scope(|scope| {
        for _ in 0..threads {
            scope.spawn(|| loop {
                let i = next.fetch_add(1, std::sync::atomic::Ordering::Relaxed);
                if i >= n {
                    break;
                }
                let (cell, out) = jobs[i]();
                let done = match out {
                    Ok(c) => c,
                    Err(e) => ScanCell {
                        cell,
                        verdict: None,
                        generic: None,
                        seeds: vec![],
                        error: Some(e.to_string()),
                    },
                };
                results.lock().unwrap()[i] = Some(done);
            });
        }
    });
    Ok(ScanTable {
        kind: kind.into(),
        cells: cells.into_iter().map(|c| c.unwrap()).collect(),
    })
}
