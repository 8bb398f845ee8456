use dimer_core::caloric::{
    caloric_curve, delta_s_magnetic, isentrope_magnetic, refrigerant_capacity, CaloricMode, RcMode,
};
use dimer_core::model::{analytic_spectrum, hamiltonian_matrix, Fields, ModelParams};
use dimer_core::oracle::{numeric_free_energy, numeric_spectrum};
use dimer_core::phases::{
    boundary_qfm_fp, boundary_qfm_qfp, boundary_qfp_fp, classify_ground_state,
    qfm_below_fp_closed_form, qfm_below_qfp_closed_form, PhaseLabel,
};
use dimer_core::scan::{evaluate_grid, extract_isolines, linspace, Grid2D};
use dimer_core::thermo::{entropy, free_energy, thermo_point};
use proptest::prelude::*;

fn params() -> impl Strategy<Value = ModelParams> {
    (0.0..2.0f64, -2.0..2.0f64, 0.5..4.0f64, 0.5..4.0f64).prop_map(|(delta, d, g1, g2)| {
        ModelParams {
            j: 1.0,
            delta,
            d,
            g1,
            g2,
            mu: 1.0,
        }
    })
}

fn fields() -> impl Strategy<Value = Fields> {
    (0.0..4.0f64, 0.0..4.0f64).prop_map(|(b, e)| Fields::new(b, e))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn spectrum_matches_eigensolver(p in params(), f in fields()) {
        let num = numeric_spectrum(&hamiltonian_matrix(&p, &f)).unwrap();
        let ana = analytic_spectrum(&p, &f).sorted();
        for (a, b) in ana.iter().zip(num.eigenvalues.iter()) {
            prop_assert!((a - b).abs() < 1e-10);
        }
    }

    #[test]
    fn free_energy_matches_eigenvalue_sum(p in params(), f in fields(), t in 0.01..10.0f64) {
        let a = free_energy(&p, &f, t).unwrap();
        let b = numeric_free_energy(&p, &f, t).unwrap();
        prop_assert!((a - b).abs() <= 1e-10 * b.abs().max(1.0));
    }

    #[test]
    fn entropy_bounded_and_increasing(p in params(), f in fields(), t in 0.01..10.0f64) {
        let s1 = entropy(&p, &f, t).unwrap();
        let s2 = entropy(&p, &f, 1.1 * t).unwrap();
        prop_assert!(s1 >= -1e-12 && s1 <= 6f64.ln() + 1e-12);
        prop_assert!(s2 >= s1 - 1e-12);
    }

    #[test]
    fn thermo_identity(p in params(), f in fields(), t in 0.05..5.0f64) {
        // F = U - T S with U from the Boltzmann average of the eigenvalues
        let tp = thermo_point(&p, &f, t).unwrap();
        let eps = analytic_spectrum(&p, &f).eps;
        let w: Vec<f64> = eps.iter().map(|e| (-(e - tp.ground) / t).exp()).collect();
        let z: f64 = w.iter().sum();
        let u: f64 = eps.iter().zip(&w).map(|(e, w)| e * w).sum::<f64>() / z;
        prop_assert!((tp.f - (u - t * tp.s)).abs() < 1e-9 * (1.0 + tp.f.abs()));
    }

    #[test]
    fn magnetization_within_bounds(p in params(), f in fields(), t in 0.01..5.0f64) {
        let tp = thermo_point(&p, &f, t).unwrap();
        prop_assert!(tp.m_over_ms >= -1e-12 && tp.m_over_ms <= 1.0 + 1e-12);
        prop_assert!(tp.p >= -1e-12);
    }

    #[test]
    fn boundaries_are_level_crossings(p in params(), e in 0.0..4.0f64) {
        let gap = |b: f64| {
            let s = analytic_spectrum(&p, &Fields::new(b, e));
            (s.e_qf_plus(), s.e_qf_minus(), s.e_f_plus())
        };
        let (qp, _, fp) = gap(boundary_qfp_fp(&p, e));
        prop_assert!((qp - fp).abs() < 1e-9);
        let (_, qm, fp) = gap(boundary_qfm_fp(&p, e));
        prop_assert!((qm - fp).abs() < 1e-9);
        if let Some(b) = boundary_qfm_qfp(&p, e) {
            let (qp, qm, _) = gap(b);
            prop_assert!((qp - qm).abs() < 1e-9);
        }
    }

    #[test]
    fn closed_form_phase_tests_agree_where_defined(p in params(), f in fields()) {
        let s = analytic_spectrum(&p, &f);
        let d_fp = s.e_qf_minus() - s.e_f_plus();
        if d_fp.abs() > 1e-9 {
            if let Some(v) = qfm_below_fp_closed_form(&p, &f) {
                prop_assert_eq!(v, d_fp < 0.0);
            }
        }
        let d_qp = s.e_qf_minus() - s.e_qf_plus();
        if d_qp.abs() > 1e-9 {
            if let Some(v) = qfm_below_qfp_closed_form(&p, &f) {
                prop_assert_eq!(v, d_qp < 0.0);
            }
        }
    }

    #[test]
    fn ground_state_label_has_lowest_level(p in params(), f in fields()) {
        let (label, e0) = classify_ground_state(&p, &f);
        let s = analytic_spectrum(&p, &f);
        prop_assert!((e0 - s.ground_energy()).abs() < 1e-12);
        prop_assert!(!label.contains(&PhaseLabel::QfMinus) || s.e_qf_minus() - e0 < 1e-9);
    }

    #[test]
    fn delta_s_is_antisymmetric(p in params(), e in 0.0..2.0f64, t in 0.05..3.0f64, span in 0.0..3.0f64) {
        let forward = delta_s_magnetic(&p, e, t, span).unwrap();
        let s_span = entropy(&p, &Fields::new(span, e), t).unwrap();
        let s_zero = entropy(&p, &Fields::new(0.0, e), t).unwrap();
        prop_assert_eq!(forward, -(s_zero - s_span));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn isentrope_samples_hit_target(p in params(), e in 0.0..2.0f64, target in 0.05..1.7f64) {
        let line = isentrope_magnetic(&p, e, target, &linspace(0.0, 3.0, 31)).unwrap();
        for &(b, t) in &line.samples {
            prop_assert!((entropy(&p, &Fields::new(b, e), t).unwrap() - target).abs() < 1e-8);
        }
        prop_assert_eq!(line.samples.len() + line.gaps.len(), 31);
    }

    #[test]
    fn isoline_points_reproduce_level(p in params(), level in 0.2..1.6f64) {
        let x = linspace(0.0, 3.0, 40);
        let y = linspace(0.05, 3.0, 40);
        let values = evaluate_grid(&x, &y, |b, t| entropy(&p, &Fields::new(b, 0.0), t).unwrap(), true);
        let grid = Grid2D {
            x_label: "b".into(),
            y_label: "t".into(),
            value_label: "s".into(),
            x,
            y,
            values,
        };
        for line in extract_isolines(&grid, &[level]) {
            for &(px, py) in &line.points {
                let v = grid.interpolate(px, py).unwrap();
                prop_assert!((v - level).abs() < 1e-10, "{} vs {}", v, level);
            }
        }
    }
}

#[test]
fn parallel_and_serial_grids_are_identical() {
    let p = ModelParams::default().with_g(2.0, 0.8).with_d(-1.0);
    let x = linspace(0.0, 3.0, 61);
    let y = linspace(0.01, 2.0, 57);
    let f = |b: f64, t: f64| entropy(&p, &Fields::new(b, 0.3), t).unwrap();
    let a = evaluate_grid(&x, &y, f, true);
    let b = evaluate_grid(&x, &y, f, false);
    assert!(a.iter().zip(&b).all(|(u, v)| u.to_bits() == v.to_bits()));
}

#[test]
fn isotropic_magnetic_effect_is_conventional() {
    let p = ModelParams::default();
    for span in linspace(0.0, 4.0, 41) {
        for t in linspace(0.01, 3.0, 60) {
            assert!(-delta_s_magnetic(&p, 0.0, t, span).unwrap() >= -1e-12);
        }
    }
}

#[test]
fn fixed_upper_limit_enlarges_capacity() {
    let p = ModelParams::default();
    let t_grid = linspace(0.01, 5.0, 400);
    let curve = caloric_curve(&p, CaloricMode::Magnetic, 0.0, 1.5, &t_grid).unwrap();
    let auto = refrigerant_capacity(&curve, RcMode::Conventional, None).unwrap();
    for t2 in [auto.t2, auto.t2 + 0.3, 4.5] {
        let fixed = refrigerant_capacity(&curve, RcMode::Conventional, Some(t2)).unwrap();
        assert!(fixed.rc_abs >= auto.rc_abs - 1e-12);
        assert_eq!(fixed.t1, auto.t1);
    }
}

#[test]
fn triple_point_of_three_boundaries() {
    // where QF-/QF+ meets QF+/F+, all three levels coincide
    let p = ModelParams::default().with_d(-1.0).with_g(2.0, 0.8);
    let e = 0.0;
    let b1 = boundary_qfm_fp(&p, e);
    let s = analytic_spectrum(&p, &Fields::new(b1, e));
    assert!((s.e_qf_minus() - s.e_f_plus()).abs() < 1e-12);
    // with the QF-/QF+ and QF+/F+ fields separated, QF+ never owns the ground
    let b2 = boundary_qfm_qfp(&p, e).unwrap();
    let b3 = boundary_qfp_fp(&p, e);
    assert!(b2 > b1 && b3 < b1);
}

#[test]
fn ln2_isoline_dips_at_transition_field() {
    use dimer_core::phases::crossing_field;
    use dimer_core::scan::{entropy_map, Range1D};
    let p = ModelParams::default();
    let grid = entropy_map(
        &p,
        0.0,
        Range1D::new(0.0, 2.0, 201).unwrap(),
        Range1D::new(0.005, 1.0, 200).unwrap(),
    )
    .unwrap();
    let b_cross =
        crossing_field(&p, 0.0, &PhaseLabel::QfPlus, &PhaseLabel::FPlus, 0.1, 2.0).unwrap();
    let lines = extract_isolines(&grid, &[2f64.ln()]);
    let lowest = lines
        .iter()
        .flat_map(|l| l.points.iter().copied())
        .filter(|&(b, _)| b > 0.3 && b < 1.5)
        .min_by(|a, b| a.1.total_cmp(&b.1))
        .unwrap();
    assert!((lowest.0 - b_cross).abs() <= 2.0 * (grid.x[1] - grid.x[0]), "{lowest:?}");
}

#[test]
fn traced_boundaries_are_degenerate() {
    use dimer_core::phases::phase_diagram;
    use dimer_core::scan::Range1D;
    for p in [
        ModelParams::default(),
        ModelParams::default().with_g(2.0, 0.8).with_d(-1.0),
        ModelParams::default().with_g(2.0, 3.0).with_d(0.5).with_delta(0.4),
    ] {
        let pd = phase_diagram(
            &p,
            Range1D::new(0.0, 3.0, 31).unwrap(),
            Range1D::new(0.0, 3.0, 37).unwrap(),
        );
        assert!(!pd.boundaries.is_empty());
        for c in &pd.boundaries {
            for &(e, b) in &c.samples {
                assert!(classify_ground_state(&p, &Fields::new(b, e)).0.is_degenerate());
            }
        }
    }
}
