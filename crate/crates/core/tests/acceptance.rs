//! Acceptance suite: one test per criterion, exact values, with the stated
//! runtime budgets enforced where they are part of the criterion.

use raolab::analyzer::{self, Verdict};
use raolab::configs;
use raolab::gf::FieldSpec;
use raolab::ideal::{hilbert_function, ops, GbBudget, Ideal};
use raolab::poly::{binomial, Polynomial, RingSpec};
use raolab::restriction;
use std::time::Instant;

fn field() -> FieldSpec {
    FieldSpec::default_prime()
}

fn budget() -> GbBudget {
    GbBudget::default()
}

#[test]
fn criterion_01_twenty_nine_general_lines_tables() {
    let start = Instant::now();
    let cfg = configs::general_skew_lines(29, 17, field()).unwrap();
    let plane = analyzer::sample_plane(&cfg, 99).unwrap();

    let z1 = analyzer::h_vector_of_section(&cfg, &plane, 1).unwrap();
    assert_eq!(z1.0, vec![1, 2, 3, 4, 5, 6, 7, 1]);

    let z2 = analyzer::h_vector_of_section(&cfg, &plane, 2).unwrap();
    assert_eq!(z2.0, vec![1, 3, 5, 7, 9, 11, 13, 9]);

    let expected_ideal = [1usize, 4, 10, 20, 35, 62];
    for (i, t) in (3..=8i64).enumerate() {
        let dim = restriction::section_scheme_dimension(&cfg, &plane, 2, t - 1).unwrap();
        assert_eq!(dim, expected_ideal[i], "dim [I_Z2] at t-1 = {}", t - 1);
    }

    let ring = cfg.ring;
    let z1_plane = |t: i64| {
        restriction::section_scheme_dimension(&cfg, &plane, 1, t).unwrap() - ring.dim_t(t - 1)
    };
    assert_eq!(z1_plane(7), 7);
    assert_eq!(z1_plane(8), 16);

    let hf6 = ring.dim_t(6) - restriction::section_scheme_dimension(&cfg, &plane, 2, 6).unwrap();
    assert_eq!(
        restriction::section_scheme_degree(&cfg, 2) - hf6,
        9,
        "h1(I_Z2(6))"
    );

    let elapsed = start.elapsed();
    assert!(elapsed.as_secs_f64() < 5.0, "budget 5 s, took {elapsed:?}");
    println!("criterion 1 (29 general lines, section tables): PASS in {elapsed:?}");
}

#[test]
fn criterion_02_triple_section_hilbert_function() {
    let start = Instant::now();
    let cfg = configs::general_skew_lines(29, 17, field()).unwrap();
    let plane = analyzer::sample_plane(&cfg, 99).unwrap();
    let hf = analyzer::section_hilbert_function(&cfg, &plane, 3).unwrap();
    for (j, &v) in hf.iter().enumerate() {
        let expected = (87usize).min(3 * binomial(j as u64 + 1, 2) as usize + 1);
        assert_eq!(v, expected, "h_Z3({j})");
    }
    assert_eq!(
        &hf[..9],
        &[1, 4, 10, 19, 31, 46, 64, 85, 87],
        "values at j = 0..8"
    );
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs_f64() < 5.0, "budget 5 s, took {elapsed:?}");
    println!("criterion 2 (triple section of 29 lines): PASS in {elapsed:?}");
}

#[test]
fn criterion_03_specialization_h_vectors() {
    let expected: [(usize, &[usize], &[usize]); 3] = [
        (0, &[1, 2, 3, 4, 5, 6, 4], &[1, 3, 5, 7, 9, 11, 13, 1]),
        (1, &[1, 2, 3, 4, 5, 6, 6], &[1, 3, 5, 7, 9, 11, 12]),
        (2, &[1, 2, 3, 4, 5, 6, 7, 1], &[1, 3, 5, 7, 9, 11, 10]),
    ];
    for (k, x1_expected, x2_expected) in expected {
        let (x1, x2) = analyzer::specialization_h_vectors(25, k, 23, field()).unwrap();
        assert_eq!(x1.0, x1_expected, "X1 at k = {k}");
        assert_eq!(x2.0, x2_expected, "X2 at k = {k}");
    }
    println!("criterion 3 (25-line specialization): PASS");
}

#[test]
fn criterion_04_general_lines_maximal_rank_range_three() {
    let start = Instant::now();
    for r in 4..=12usize {
        for seed in [5u64, 6, 7] {
            let cfg = configs::general_skew_lines(r, seed, field()).unwrap();
            let profile = restriction::rao_profile(&cfg).unwrap();
            for m in 1..=3u32 {
                let rep = analyzer::slp_range_verdict_with_profile(&cfg, &profile, m, 3).unwrap();
                // Small r with m close to the support span have no nontrivial
                // maps; those sweeps certify maximal rank vacuously.
                assert_ne!(
                    rep.verdict,
                    Verdict::Fails,
                    "r = {r}, m = {m}, seed = {seed}"
                );
                assert!(rep.rows.iter().all(|row| row.maximal));
            }
        }
    }
    let elapsed = start.elapsed();
    assert!(
        elapsed.as_secs_f64() < 60.0,
        "budget 60 s, took {elapsed:?}"
    );
    println!("criterion 4 (general lines, powers 1..3): PASS in {elapsed:?}");
}

#[test]
fn criterion_05_lines_on_a_quadric() {
    for r in 4..=10usize {
        let cfg = configs::quadric_ruling_lines(r, 7, field()).unwrap();
        let profile = restriction::rao_profile(&cfg).unwrap();
        assert_eq!(profile.dim_m(0), r - 1, "initial dimension at r = {r}");
        assert_eq!(
            profile.support(),
            Some((0, r as i64 - 2)),
            "support at r = {r}"
        );
        let last = r as i64 - 2;
        for t in 0..=last {
            assert_eq!(
                profile.dim_m(t),
                profile.dim_m(last - t),
                "symmetry at r = {r}, t = {t}"
            );
        }
        let socle = restriction::socle_dimensions(&profile, &cfg, 0..=last).unwrap();
        for t in 0..last {
            assert_eq!(socle[&t], 0, "socle must vanish below the last degree");
        }
        assert_eq!(socle[&last], profile.dim_m(last));
        let rep = analyzer::slp_range_verdict_with_profile(&cfg, &profile, 1, 5).unwrap();
        assert_eq!(rep.verdict, Verdict::Holds, "WLP at r = {r}");
    }
    println!("criterion 5 (lines on a quadric): PASS");
}

#[test]
fn criterion_06_all_but_one_line_on_a_quadric() {
    for r in 6..=10usize {
        let cfg = configs::quadric_plus_general(r, 1, 9, field()).unwrap();
        let profile = restriction::rao_profile(&cfg).unwrap();
        for t in 1..r as i64 {
            let expected = (t + 1) * (r as i64 + 1) - binomial(t as u64 + 3, 3) as i64
                + binomial(t as u64 + 1, 3) as i64
                - (t - 1);
            assert_eq!(
                profile.dim_m(t) as i64,
                expected,
                "dimension formula at r = {r}, t = {t}"
            );
        }
        let rep = analyzer::slp_range_verdict_with_profile(&cfg, &profile, 1, 5).unwrap();
        assert_eq!(rep.verdict, Verdict::Holds, "WLP at r = {r}");
    }
    println!("criterion 6 (all but one line on a quadric): PASS");
}

#[test]
fn criterion_07_all_but_two_fails() {
    for s in 10..=12usize {
        let cfg = configs::quadric_plus_general(s - 2, 2, 13, field()).unwrap();
        let profile = restriction::rao_profile(&cfg).unwrap();
        assert_eq!(profile.dim_m(2), 3 * s - 10, "dim [M]_2 at s = {s}");
        assert_eq!(profile.dim_m(3), 4 * s - 20, "dim [M]_3 at s = {s}");
        let rep = analyzer::slp_range_verdict_with_profile(&cfg, &profile, 1, 5).unwrap();
        assert_eq!(rep.verdict, Verdict::Fails, "failure expected at s = {s}");
        assert!(rep.failing_degrees.contains(&3), "failing map is 2 -> 3");
        assert_eq!(rep.seeds.len(), 5, "failure must persist over 5 samples");
        assert_eq!(rep.caveat.as_deref(), Some("probabilistic"));
    }
    println!("criterion 7 (all but two lines): PASS");
}

#[test]
fn criterion_08_ten_plus_three_and_eleven_plus_four() {
    let cfg = configs::quadric_plus_general(10, 3, 13, field()).unwrap();
    let profile = restriction::rao_profile(&cfg).unwrap();
    assert_eq!(profile.dim_m(3), 32);
    assert_eq!(profile.dim_m(4), 31);
    assert_eq!(profile.dim_ideal(4), Some(1));
    let plane = analyzer::sample_plane(&cfg, 31).unwrap();
    let z_plane_4 =
        restriction::section_scheme_dimension(&cfg, &plane, 1, 4).unwrap() - cfg.ring.dim_t(3);
    assert_eq!(z_plane_4, 3, "plane section quartics");
    let rep = analyzer::slp_range_verdict_with_profile(&cfg, &profile, 1, 5).unwrap();
    assert_eq!(rep.verdict, Verdict::Fails);
    assert!(rep.failing_degrees.contains(&4), "failure at 3 -> 4");

    let cfg = configs::quadric_plus_general(11, 4, 13, field()).unwrap();
    let profile = restriction::rao_profile(&cfg).unwrap();
    assert_eq!(profile.dim_m(3), 40);
    assert_eq!(profile.dim_m(4), 40);
    let plane = analyzer::sample_plane(&cfg, 37).unwrap();
    let rank = restriction::multiplication_rank(&profile, &cfg, &plane, 1, 4).unwrap();
    assert_eq!(rank, 38, "the rank is not even submaximal");
    println!("criterion 8 (dimension/rank tables): PASS");
}

#[test]
fn criterion_09_arithmetic_genus_zero() {
    let cfg = configs::arith_genus_zero(11, field()).unwrap();
    assert_eq!(cfg.curve_degree(), 10);
    assert_eq!(cfg.arithmetic_genus(), 0);
    let profile = restriction::rao_profile(&cfg).unwrap();
    let dims: Vec<usize> = (0..=3i64).map(|t| profile.dim_m(t)).collect();
    assert_eq!(dims, vec![0, 7, 11, 11]);
    let rep = analyzer::wlp_verdict(&cfg, 5).unwrap();
    assert_eq!(rep.verdict, Verdict::Fails);
    assert!(rep.failing_degrees.contains(&3), "failure at 2 -> 3");
    println!("criterion 9 (genus-zero failure): PASS");
}

#[test]
fn criterion_10_flat_fat_genericity() {
    // m <= 3: the theorem, including the designed failures at m = 3, s <= 2.
    for m in 1..=3u32 {
        for s in 1..=10usize {
            let rep = analyzer::genericity_test_flatfat(s, m, 5, 1000 + s as u64, field()).unwrap();
            let expected = m < 3 || s >= 3;
            assert_eq!(rep.generic, expected, "(s, m) = ({s}, {m})");
        }
    }
    // m = 4: non-genericity for s <= 4 is forced (the union of s lines);
    // genericity for 5 <= s <= 10 is recorded as conjecture evidence only.
    for s in 1..=10usize {
        let rep = analyzer::genericity_test_flatfat(s, 4, 5, 2000 + s as u64, field()).unwrap();
        assert_eq!(rep.generic, s >= 5, "(s, m) = ({s}, 4), evidence");
    }
    println!("criterion 10 (flat fat points): PASS");
}

#[test]
fn criterion_11_cubic_intersection_identity() {
    let start = Instant::now();
    let ring = RingSpec::p2(field());
    let parse = |s: &str| Polynomial::parse(s, ring).unwrap();
    let i1 = Ideal::new(ring, vec![parse("(x+y)^3"), parse("z")]).unwrap();
    let i2 = Ideal::new(ring, vec![parse("(x+z)^3"), parse("y")]).unwrap();
    let i3 = Ideal::new(ring, vec![parse("(y-z)^3"), parse("x")]).unwrap();
    let all = ops::intersect_many(&[i1, i2, i3], budget()).unwrap();
    let data = hilbert_function(&all, 4, budget()).unwrap();
    assert_eq!(data.dims_ideal[&3], 1, "degree-3 component is a line");
    assert!(all.contains(&parse("x*y*z"), budget()).unwrap());
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs_f64() < 1.0, "budget 1 s, took {elapsed:?}");
    println!("criterion 11 (cubic intersection): PASS in {elapsed:?}");
}

#[test]
fn criterion_12_liaison_pipeline() {
    let start = Instant::now();
    let out = configs::liaison_quintic_pipeline(41, field(), budget()).unwrap();
    assert_eq!(out.deg_c1, 6);
    assert_eq!(out.deg_c2, 19);
    assert_eq!(out.deg_removed, 3);
    assert_eq!(out.deg_c3, 16);
    let data = hilbert_function(&out.c3, 6, budget()).unwrap();
    assert_eq!(data.dims_ideal[&5], 2, "the quintic pencil");
    let sing = ops::singular_locus(&out.c3, 2, budget()).unwrap();
    let (sat, _) = ops::saturate(&sing, &ops::irrelevant_ideal(out.c3.ring()), budget()).unwrap();
    assert!(
        sat.is_unit(budget()).unwrap(),
        "the residual curve is smooth"
    );
    let elapsed = start.elapsed();
    assert!(
        elapsed.as_secs_f64() < 300.0,
        "budget 5 min, took {elapsed:?}"
    );
    println!("criterion 12 (liaison pipeline): PASS in {elapsed:?}");
}

#[test]
fn criterion_13a_exactness_bookkeeping() {
    // Ten configurations; at every degree and power the alternating sum
    // dim [I_C]_{t-m} - dim [I_C]_t + dim [I_{Z_m|H^m}]_t - dim ker = 0,
    // with every term computed independently.
    let f = field();
    let cfgs: Vec<restriction::Configuration> = vec![
        configs::general_skew_lines(3, 101, f).unwrap(),
        configs::general_skew_lines(5, 102, f).unwrap(),
        configs::general_skew_lines(7, 103, f).unwrap(),
        configs::general_skew_lines(9, 104, f).unwrap(),
        configs::quadric_ruling_lines(5, 105, f).unwrap(),
        configs::quadric_ruling_lines(8, 106, f).unwrap(),
        configs::quadric_plus_general(6, 1, 107, f).unwrap(),
        configs::quadric_plus_general(8, 2, 108, f).unwrap(),
        configs::rational_curve(6, 109, f).unwrap(),
        configs::arith_genus_zero(110, f).unwrap(),
    ];
    for cfg in &cfgs {
        let profile = restriction::rao_profile(cfg).unwrap();
        let plane = analyzer::sample_plane(cfg, cfg.meta.seed ^ 0xD00D).unwrap();
        for m in 1..=3u32 {
            for t in 0..=profile.horizon {
                let src = profile.dim_m(t - m as i64);
                let tgt = profile.dim_m(t);
                if src == 0 || tgt == 0 {
                    continue;
                }
                // The presentation-route rank, cross-checked internally.
                let rank = restriction::multiplication_rank(&profile, cfg, &plane, m, t).unwrap();
                let ker = src as i64 - rank as i64;
                let a = restriction::ideal_dimension(cfg, t - m as i64).unwrap() as i64;
                let b = restriction::ideal_dimension(cfg, t).unwrap() as i64;
                let z = restriction::section_scheme_dimension(cfg, &plane, m, t).unwrap() as i64
                    - cfg.ring.dim_t(t - m as i64) as i64;
                assert_eq!(
                    a - b + z - ker,
                    0,
                    "exactness at {} (m = {m}, t = {t})",
                    cfg.meta.label
                );
            }
        }
    }
    println!("criterion 13a (exactness bookkeeping, 10 configurations): PASS");
}

#[test]
fn criterion_13b_cross_engine_audit() {
    // Restriction-engine dimensions equal the Gröbner-route dimensions on
    // every configuration with <= 6 components, all t <= 8, sections m <= 3.
    let f = field();
    let max_t = 8i64;
    let mut checks = 0usize;
    let mut audit = |cfg: &restriction::Configuration, with_sections: bool| {
        let ideal = configs::configuration_ideal(cfg, budget()).unwrap();
        let data = hilbert_function(&ideal, max_t, budget()).unwrap();
        for t in 0..=max_t {
            assert_eq!(
                restriction::ideal_dimension(cfg, t).unwrap(),
                data.dims_ideal[&t],
                "{} at t = {t}",
                cfg.meta.label
            );
            checks += 1;
        }
        if with_sections {
            let plane = analyzer::sample_plane(cfg, cfg.meta.seed ^ 0x5EC7).unwrap();
            for m in 1..=3u32 {
                let lm = Ideal::new(cfg.ring, vec![plane.pow(m)]).unwrap();
                let summed = ideal.sum(&lm).unwrap();
                let (sat, _) =
                    ops::saturate(&summed, &ops::irrelevant_ideal(cfg.ring), budget()).unwrap();
                let sat_data = hilbert_function(&sat, max_t, budget()).unwrap();
                for t in 0..=max_t {
                    assert_eq!(
                        restriction::section_scheme_dimension(cfg, &plane, m, t).unwrap(),
                        sat_data.dims_ideal[&t],
                        "{} section m = {m} at t = {t}",
                        cfg.meta.label
                    );
                    checks += 1;
                }
            }
        }
    };
    for r in 2..=6usize {
        audit(
            &configs::general_skew_lines(r, 200 + r as u64, f).unwrap(),
            true,
        );
    }
    audit(&configs::quadric_ruling_lines(4, 207, f).unwrap(), true);
    audit(
        &configs::flat_fat_points_plane(3, 2, 208, None, f).unwrap(),
        false,
    );
    audit(
        &configs::flat_fat_points_plane(4, 3, 209, None, f).unwrap(),
        false,
    );
    println!("criterion 13b (cross-engine audit, {checks} checks): PASS");
}

#[test]
fn criterion_13c_linalg_and_ideal_invariants() {
    use raolab::gf::FieldMatrix;
    let f = field();
    // rank/kernel and order-independence invariants.
    let mut state = 0xFEEDFACEu64;
    let mut next = move || {
        state ^= state << 13;
        state ^= state >> 7;
        state ^= state << 17;
        state % f.p()
    };
    for (rows, cols) in [(7usize, 5usize), (5, 9), (8, 8)] {
        let m =
            FieldMatrix::new(f, rows, cols, (0..rows * cols).map(|_| next()).collect()).unwrap();
        assert_eq!(m.rank(), m.transpose().rank());
        assert_eq!(m.kernel_dimension() + m.rank(), cols);
        // Row-permuted copy has the same rank.
        let mut rows_v: Vec<Vec<u64>> = (0..rows)
            .map(|r| (0..cols).map(|c| m.at(r, c)).collect())
            .collect();
        rows_v.reverse();
        let permuted = FieldMatrix::from_rows(f, &rows_v).unwrap();
        assert_eq!(m.rank(), permuted.rank());
    }

    // Hilbert functions are independent of the Gröbner order.
    let ring = RingSpec::p3(f);
    let mut sampler = configs::Sampler::new(99, f);
    for _ in 0..5 {
        let gens: Vec<Polynomial> = (0..2)
            .map(|_| {
                let basis = ring.monomial_basis(2);
                Polynomial::from_terms(
                    ring,
                    basis.iter().map(|&mm| (mm, sampler.element())).collect(),
                )
            })
            .collect();
        let ideal = Ideal::new(ring, gens).unwrap();
        let grevlex = hilbert_function(&ideal, 7, budget()).unwrap();
        let lex_ideal = ideal
            .groebner(raolab::poly::MonomialOrder::Lex, budget())
            .unwrap();
        let lex = hilbert_function(&lex_ideal, 7, budget()).unwrap();
        assert_eq!(grevlex.dims_quotient, lex.dims_quotient);
    }
    println!("criterion 13c (rank/kernel/order-independence invariants): PASS");
}

#[test]
fn criterion_note_rational_curves_evidence() {
    // Sampled-evidence verdicts for general rational curves of degree <= 10:
    // never a failure across 5 seeds each (trivially maximal at d = 3, 4).
    for d in 3..=10u32 {
        for seed in [1u64, 2, 3, 4, 5] {
            let cfg = configs::rational_curve(d, seed, field()).unwrap();
            let rep = analyzer::wlp_verdict(&cfg, 5).unwrap();
            assert_ne!(rep.verdict, Verdict::Fails, "d = {d}, seed = {seed}");
        }
    }
    println!("criterion note (rational curves up to degree 10): PASS");
}
