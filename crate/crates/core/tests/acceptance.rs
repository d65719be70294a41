//! Acceptance suite: one test per criterion, each printing a PASS line.
//! All arithmetic is exact, so every comparison below is equality or a
//! strict inequality; the only tolerances are the stated runtime budgets.

use std::time::Instant;

use scrollhn_core::exact::{poly_identity_check, Int, Rational, UniPoly};
use scrollhn_core::genpos::{containment_count, li_basis_check, pointing_span_oracle};
use scrollhn_core::genus6::{genus6_slopes, hn_genus6, quadrics_through_segre, SegreParam};
use scrollhn_core::nodal::destabilizer_search;
use scrollhn_core::pbundle::{
    rnc_normal_bundle, scroll_inclusion_map, scroll_restriction, scroll_syzygy_map, ParityModel,
    SplitBundle,
};
use scrollhn_core::trigonal::{
    hn_report, mu_canonical_normal, mu_curve_in_pn, small_genus_cases,
};

const SEED: u64 = 0xC0FFEE;

#[test]
fn criterion_01_slope_formula() {
    let start = Instant::now();
    for g in 3..=100u32 {
        let gi = g as i64;
        let mu = mu_canonical_normal(g).unwrap();
        let closed = Rational::from(2 * gi + 4) + Rational::new(6, gi - 2).unwrap();
        assert_eq!(mu, closed, "closed form fails at g={g}");
        let euler = mu_curve_in_pn(2 * gi - 2, gi, gi - 1).unwrap();
        assert_eq!(mu, euler, "Euler-sequence route fails at g={g}");
    }
    assert_eq!(
        mu_canonical_normal(6).unwrap(),
        Rational::new(35, 2).unwrap()
    );
    let elapsed = start.elapsed();
    assert!(
        elapsed.as_secs_f64() < 1.0,
        "slope sweep took {elapsed:?}, budget 1s"
    );
    println!(
        "acceptance 01 PASS: mu(N) = 2g+4+6/(g-2) on [3,100], both routes, in {elapsed:?}"
    );
}

#[test]
fn criterion_02_destabilization_inequality() {
    for g in 5..=100i64 {
        let mu = mu_canonical_normal(g as u32).unwrap();
        assert!(
            Rational::from(3 * g + 6) > mu,
            "3g+6 fails to destabilize at g={g}"
        );
    }
    // Polynomial statement: (g+2)(g-2) >= 6 for g >= 4, certified by
    // rewriting over g = t + 4 with nonnegative coefficients.
    let p = UniPoly::from_int_coeffs(&[2, 1]) * UniPoly::from_int_coeffs(&[-2, 1]);
    let margin = p - UniPoly::constant(6);
    let shifted = margin.shift(&Rational::from(4));
    assert!(shifted.all_coeffs_nonneg());
    assert!(shifted.eval(&Rational::zero()) >= Rational::zero());
    println!("acceptance 02 PASS: 3g+6 > 2g+4+6/(g-2) on [5,100] and (g+2)(g-2) >= 6 for g >= 4");
}

#[test]
fn criterion_03_coprimality_identity() {
    // 2g^2 - 3g - 8 - (2g+3)(g-3) = 1 as polynomials.
    let quotient_degree = UniPoly::from_int_coeffs(&[-8, -3, 2]);
    let product = UniPoly::from_int_coeffs(&[3, 2]) * UniPoly::from_int_coeffs(&[-3, 1]);
    assert!(poly_identity_check(
        &(quotient_degree - product),
        &UniPoly::constant(1)
    ));
    println!("acceptance 03 PASS: 2g^2-3g-8-(2g+3)(g-3) = 1 as an exact polynomial identity");
}

#[test]
fn criterion_04_kernel_and_cokernel_splitting() {
    let start = Instant::now();
    let mut pairs = 0;
    for g in (5..=41u32).step_by(2) {
        for d in 1..=(g - 1) / 2 {
            let k = (g as i64 + 2 * d as i64 - 3) / 2;
            let span_rank = (g as i64 - k - 2) as usize;
            let inclusion = scroll_inclusion_map(g, d, ParityModel::Odd).unwrap();
            let kernel = inclusion.dual().kernel_splitting().unwrap();
            assert_eq!(
                kernel,
                SplitBundle::uniform(-k - 1, span_rank),
                "kernel fails at (g,d)=({g},{d})"
            );
            let cokernel = inclusion.cokernel_splitting().unwrap();
            assert_eq!(
                cokernel,
                SplitBundle::uniform(k + 1, span_rank),
                "cokernel fails at (g,d)=({g},{d})"
            );
            // The full restriction is the rational-normal-curve part plus
            // the cokernel.
            assert_eq!(
                rnc_normal_bundle(k).unwrap().direct_sum(&cokernel),
                scroll_restriction(g, d, ParityModel::Odd).unwrap()
            );
            pairs += 1;
        }
    }
    // Bidiagonal pencil as the independent oracle on sampled pairs: it
    // composes to zero with the dual monomial row, is fiberwise injective,
    // and its source matches the probed kernel exactly.
    for (g, d) in [(5u32, 1u32), (7, 2), (13, 3), (25, 5), (41, 20)] {
        let phi = scroll_inclusion_map(g, d, ParityModel::Odd).unwrap().dual();
        let pencil = scroll_syzygy_map(g, d, ParityModel::Odd).unwrap();
        assert!(phi.compose(&pencil).unwrap().is_zero());
        assert_eq!(pencil.generic_rank(), pencil.source().rank());
        assert_eq!(phi.kernel_splitting().unwrap(), pencil.source().clone());
    }
    let elapsed = start.elapsed();
    assert!(
        elapsed.as_secs_f64() < 10.0,
        "splitting sweep took {elapsed:?}, budget 10s"
    );
    println!(
        "acceptance 04 PASS: kernel/cokernel splittings for {pairs} odd (g,d) pairs plus 5 pencil cross-checks in {elapsed:?}"
    );
}

#[test]
fn criterion_05_destabilizer_search_sweep() {
    let start = Instant::now();
    let mut total_candidates = 0u64;
    for g in 5..=100u32 {
        let report = destabilizer_search(g, SEED).expect("no case analysis gap");
        let gi = g as i64;
        let ceiling = Rational::from(2 * gi + 3);
        assert!(
            report.max_adjusted_bound <= ceiling,
            "bound exceeds 2g+3 at g={g}"
        );
        assert!(ceiling < report.mu_total, "margin collapses at g={g}");
        assert!(report.verdict, "verdict false at g={g}");
        assert!(report.side_checks.all_ok(), "side checks fail at g={g}");
        assert_eq!(report.rule_histogram.total(), report.candidates_checked);
        total_candidates += report.candidates_checked;
    }
    let elapsed = start.elapsed();
    assert!(
        elapsed.as_secs_f64() < 30.0,
        "destabilizer sweep took {elapsed:?}, budget 30s"
    );
    println!(
        "acceptance 05 PASS: {total_candidates} candidates over g in [5,100], no gaps, all verdicts true, in {elapsed:?}"
    );
}

#[test]
fn criterion_06_pointing_span_oracle() {
    let mut subsets = 0u64;
    for d in 4..=12u32 {
        for seed in 0..50u64 {
            let report = pointing_span_oracle(d, seed).unwrap();
            assert!(
                report.all_ok(),
                "pointing oracle failed at d={d}, seed={seed}"
            );
            assert_eq!(report.subsets_checked, (1u64 << (d - 1)) - 1);
            subsets += report.subsets_checked;
        }
    }
    println!(
        "acceptance 06 PASS: pointing-span oracle, d in [4,12] x 50 seeds, {subsets} facet subsets verified"
    );
}

#[test]
fn criterion_07_containment_count_bound() {
    let mut checks = 0u64;
    for g in [8u32, 10, 12] {
        for a2 in 1..=((g - 2) / 2) as usize {
            for seed in 0..50u64 {
                let report = containment_count(g, a2, seed).unwrap();
                assert!(
                    report.ok,
                    "count {} exceeds bound {} at g={g}, a2={a2}, seed={seed}",
                    report.count, report.bound
                );
                checks += 1;
            }
        }
    }
    println!("acceptance 07 PASS: containment counts within floor((g-2)/2)-a2 in {checks} runs");
}

#[test]
fn criterion_08_genus6_table() {
    let table = genus6_slopes().unwrap();
    let slope_of = |label: &str| {
        table
            .rows
            .iter()
            .find(|r| r.label == label)
            .unwrap_or_else(|| panic!("missing row {label}"))
            .slope
            .clone()
    };
    assert_eq!(slope_of("N_{C/S}"), Rational::from(20));
    assert_eq!(slope_of("N_{C/P^5}"), Rational::new(35, 2).unwrap());
    assert_eq!(slope_of("N_{C/Q}"), Rational::from(18));
    assert_eq!(slope_of("N_{S/Q}|_C"), Rational::from(16));
    assert_eq!(slope_of("N_{Q/P^5}|_C"), Rational::from(17));

    let deg_of = |label: &str| {
        table
            .rows
            .iter()
            .find(|r| r.label == label)
            .unwrap()
            .degree
            .clone()
    };
    assert_eq!(
        deg_of("N_{Q/Y_p}|_C(s_1+s_2)") + deg_of("O_C(2-s_1-s_2)"),
        Int::from(34)
    );

    let hn = hn_genus6().unwrap();
    assert_eq!(
        hn.slopes(),
        vec![Rational::from(20), Rational::new(50, 3).unwrap()]
    );
    assert!(hn.slopes_strictly_decreasing());
    let total: Int = hn.filtration.iter().map(|s| s.degree.clone()).sum();
    assert_eq!(total, Int::from(70));

    assert_eq!(
        table.three_step_slopes,
        [
            Rational::from(20),
            Rational::from(16),
            Rational::from(17)
        ]
    );
    assert!(!table.three_step_decreasing);
    println!(
        "acceptance 08 PASS: genus-6 slopes (20, 35/2, 18, 16, 17), 34 = 18+16, 70 = 20+50, HN (20, 50/3) decreasing, three-step factors not decreasing"
    );
}

#[test]
fn criterion_09_segre_quadrics() {
    let m = SegreParam::substitution_matrix();
    assert_eq!((m.rows(), m.cols()), (18, 21));
    let quadrics = quadrics_through_segre().unwrap();
    assert_eq!(quadrics.len(), 3);
    for q in &quadrics {
        let (rank, sing_dim) = q.singular_locus_dim().unwrap();
        assert_eq!(rank, 4);
        assert_eq!(sing_dim, 1);
        assert!(SegreParam::annihilates(q));
    }
    println!(
        "acceptance 09 PASS: dim H^0(I_Q(2)) = 3 from the 18x21 substitution matrix; all generators rank 4 with line singular locus"
    );
}

#[test]
fn criterion_10_small_genus() {
    let r3 = small_genus_cases(3).unwrap();
    assert_eq!(r3.filtration.len(), 1);
    assert_eq!(r3.filtration[0].rank, 1);
    assert_eq!(r3.filtration[0].degree, Int::from(16));

    let r4 = small_genus_cases(4).unwrap();
    assert_eq!(
        r4.slopes(),
        vec![Rational::from(18), Rational::from(12)]
    );
    let total: Int = r4.filtration.iter().map(|s| s.degree.clone()).sum();
    assert_eq!(total, Int::from(30));
    assert_eq!(
        Rational::from(30),
        Rational::from(2) * &mu_canonical_normal(4).unwrap()
    );

    // The small cases glue onto the general pipeline at g = 5.
    let r5 = hn_report(5, SEED).unwrap();
    assert!(r5.degeneration_verdict);
    println!("acceptance 10 PASS: g=3 stable line bundle of degree 16; g=4 slopes (18,12) summing to 30 = 2*15");
}
