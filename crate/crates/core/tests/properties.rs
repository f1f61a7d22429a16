//! Randomized invariants across modules, with fixed seeds.

mod common;

use common::*;
use esd_core::deathclock::{evolve_density_scheduled, Piecewise, ReducedDiscriminant, DEFAULT_TOL};
use esd_core::linalg::{self, max_abs_diff4};
use esd_core::qstate::eigenvalues_hermitian4;
use esd_core::*;

#[test]
fn pt_spectrum_is_the_same_for_either_subsystem() {
    let mut r = rng(11);
    for _ in 0..2000 {
        let m = random_density(&mut r);
        let a = partial_transpose(&m, Subsystem::A).eigenvalues().unwrap();
        let b = partial_transpose(&m, Subsystem::B).eigenvalues().unwrap();
        for (x, y) in a.iter().zip(&b) {
            assert!((x - y).abs() < 1e-12);
        }
    }
}

#[test]
fn partial_transpose_preserves_trace_and_hermiticity() {
    let mut r = rng(12);
    for _ in 0..2000 {
        let m = random_density(&mut r);
        for sub in [Subsystem::A, Subsystem::B] {
            let pt = partial_transpose(&m, sub);
            assert!((pt.trace() - 1.0).abs() < 1e-12);
            assert!(linalg::hermitian_deviation(pt.entries()) < 1e-15);
            assert_eq!(pt.partial_transpose(sub).entries(), m.entries());
        }
    }
}

#[test]
fn eigendecomposition_reconstructs_input() {
    let mut r = rng(13);
    for _ in 0..2000 {
        let m = random_density(&mut r);
        let h = partial_transpose(&m, Subsystem::B);
        let e = h.eigen().unwrap();
        assert!(max_abs_diff4(&e.reconstruct(), h.entries()) <= 1e-10);
        let sum: f64 = e.values.iter().sum();
        assert!((sum - h.trace()).abs() <= 1e-10);
        assert!(e.values.windows(2).all(|w| w[0] <= w[1]));
        // per-pair residual ‖Mv − λv‖
        for k in 0..4 {
            let mut worst: f64 = 0.0;
            for i in 0..4 {
                let mut mv = num_complex::Complex64::new(0.0, 0.0);
                for j in 0..4 {
                    mv += h.entries()[i][j] * e.vectors[j][k];
                }
                worst = worst.max((mv - e.vectors[i][k] * e.values[k]).norm());
            }
            assert!(worst <= 1e-10);
        }
        assert_eq!(eigenvalues_hermitian4(h.entries()).unwrap(), e.values);
    }
}

#[test]
fn negativity_and_concurrence_vanish_together() {
    let mut r = rng(14);
    let (mut entangled, mut separable) = (0, 0);
    for _ in 0..5000 {
        let m = random_density(&mut r);
        let n = negativity(&m).unwrap().value();
        let c = concurrence(&m).unwrap().value();
        // stay clear of the boundary, where both are tiny and round-off decides
        if n.max(c) < 1e-6 && n.max(c) > 0.0 {
            continue;
        }
        assert_eq!(n > 1e-9, c > 1e-9, "N = {n}, C = {c}");
        if n > 0.0 {
            entangled += 1;
        } else {
            separable += 1;
        }
    }
    assert!(
        entangled > 100 && separable > 100,
        "{entangled} / {separable}"
    );
}

#[test]
fn concurrence_matches_pure_state_formula() {
    let mut r = rng(15);
    for _ in 0..1000 {
        let (v, m) = random_pure(&mut r);
        let want = 2.0 * (v[0] * v[3] - v[1] * v[2]).norm();
        let got = concurrence(&m).unwrap().value();
        assert!((got - want).abs() < 1e-6, "{got} vs {want}");
    }
}

#[test]
fn concurrence_matches_xstate_formula() {
    let mut r = rng(16);
    for i in 0..2000 {
        let s = random_xstate(&mut r, i % 2 == 1);
        let want = (2.0 / 3.0)
            * (s.z_inner().abs() - (s.a() * s.d()).sqrt())
                .max(s.z_corner().abs() - (s.b() * s.c()).sqrt())
                .max(0.0);
        let got = concurrence(&s.to_density_matrix()).unwrap().value();
        assert!((got - want).abs() < 1e-6, "{got} vs {want}");
    }
}

#[test]
fn entropy_is_bounded() {
    let mut r = rng(17);
    for _ in 0..2000 {
        let s = von_neumann_entropy(&random_density(&mut r))
            .unwrap()
            .value();
        assert!((0.0..=4f64.ln() + 1e-12).contains(&s));
    }
}

#[test]
fn measures_are_local_unitary_invariant() {
    let mut r = rng(18);
    for _ in 0..2000 {
        let m = random_density(&mut r);
        let op = random_local(&mut r);
        let u = apply(&m, &op);
        assert!((u.trace() - 1.0).abs() < 1e-12);
        let dn = negativity(&u).unwrap().value() - negativity(&m).unwrap().value();
        assert!(dn.abs() <= 1e-12, "negativity drift {dn}");
        let ds =
            von_neumann_entropy(&u).unwrap().value() - von_neumann_entropy(&m).unwrap().value();
        assert!(ds.abs() <= 1e-12);
        let ev_m = m.eigenvalues().unwrap();
        let ev_u = u.eigenvalues().unwrap();
        for (x, y) in ev_m.iter().zip(&ev_u) {
            assert!((x - y).abs() <= 1e-12);
        }
    }
}

#[test]
fn both_propagators_preserve_trace_and_positivity() {
    let mut r = rng(19);
    for i in 0..2000 {
        let tau = [0.05, 0.4, 1.7, 8.0][i % 4];
        let m = evolve_kraus(&random_density(&mut r), tau).unwrap();
        assert!((m.trace() - 1.0).abs() <= 1e-12);
        assert!(m.eigenvalues().unwrap()[0] >= -1e-10);
        let s = evolve_xstate_closed(&random_xstate(&mut r, i % 2 == 0), tau).unwrap();
        s.validate().unwrap();
        let ms = s.to_density_matrix();
        assert!((ms.trace() - 1.0).abs() <= 1e-12);
        assert!(ms.eigenvalues().unwrap()[0] >= -1e-10);
    }
}

#[test]
fn semigroup_composition() {
    let mut r = rng(20);
    for i in 0..1000 {
        let (t1, t2) = (0.1 + 0.3 * (i % 5) as f64, 0.05 + 0.7 * (i % 3) as f64);
        let s = random_xstate(&mut r, i % 2 == 0);
        let once = evolve_xstate_closed(&s, t1 + t2).unwrap();
        let twice = evolve_xstate_closed(&evolve_xstate_closed(&s, t1).unwrap(), t2).unwrap();
        assert!(once.max_abs_diff(&twice) <= 1e-12);

        let m = random_density(&mut r);
        let once = evolve_kraus(&m, t1 + t2).unwrap();
        let twice = evolve_kraus(&evolve_kraus(&m, t1).unwrap(), t2).unwrap();
        assert!(once.max_abs_diff(&twice) <= 1e-12);
    }
}

#[test]
fn coherences_decay_monotonically() {
    let mut r = rng(21);
    for i in 0..500 {
        let s = random_xstate(&mut r, i % 2 == 0);
        let mut last = s.z_inner().abs() + s.z_corner().abs();
        for tau in linspace(0.0, 6.0, 60) {
            let e = evolve_xstate_closed(&s, tau).unwrap();
            let now = e.z_inner().abs() + e.z_corner().abs();
            assert!(now <= last);
            last = now;
        }
    }
}

#[test]
fn both_propagators_reach_ground_state() {
    let mut r = rng(22);
    let ground = XState64::new(0.0, 0.0, 0.0, 3.0, 0.0, 0.0)
        .unwrap()
        .to_density_matrix();
    for i in 0..200 {
        let m = evolve_kraus(&random_density(&mut r), 60.0).unwrap();
        assert!(m.max_abs_diff(&ground) <= 1e-8);
        let s = evolve_xstate_closed(&random_xstate(&mut r, i % 2 == 0), 60.0).unwrap();
        assert!(s.to_density_matrix().max_abs_diff(&ground) <= 1e-8);
    }
}

#[test]
fn scheduled_general_unitaries_keep_density_invariants() {
    let mut r = rng(23);
    for _ in 0..200 {
        let sched = Schedule::new(vec![
            ScheduledOp {
                tau: 0.1,
                op: random_local(&mut r),
            },
            ScheduledOp {
                tau: 0.4,
                op: random_local(&mut r),
            },
        ])
        .unwrap();
        let m = evolve_density_scheduled(&random_density(&mut r), &sched, 0.9).unwrap();
        m.validate().unwrap();
    }
}

#[test]
fn piecewise_closed_form_matches_kraus_route_under_switches() {
    let mut r = rng(24);
    for i in 0..300 {
        let s = random_xstate(&mut r, i % 2 == 0);
        let sws = [Switch::Both, Switch::Alice, Switch::Bob];
        let sched = Schedule::new(vec![
            ScheduledOp {
                tau: 0.15,
                op: sws[i % 3].into(),
            },
            ScheduledOp {
                tau: 0.5,
                op: sws[(i / 3) % 3].into(),
            },
        ])
        .unwrap();
        let pw = Piecewise::new(&s, &sched).unwrap();
        for tau in [0.0, 0.1, 0.15, 0.3, 0.5, 1.2] {
            let closed = pw.state_at(tau).unwrap().to_density_matrix();
            let oracle = evolve_density_scheduled(&s.to_density_matrix(), &sched, tau).unwrap();
            assert!(closed.max_abs_diff(&oracle) <= 1e-12);
        }
    }
}

#[test]
fn death_time_agrees_with_negativity_boundary_and_no_revival() {
    let mut r = rng(25);
    let mut finite = 0;
    for i in 0..300 {
        let s = random_xstate(&mut r, i % 2 == 0);
        let tsw = 0.05 + 0.5 * (i % 7) as f64 / 7.0;
        let sched = Schedule::single(tsw, [Switch::Both, Switch::Alice][i % 2]).unwrap();
        let rep = find_t_end(&s, &sched, DEFAULT_TOL).unwrap();
        let Fate::FiniteEnd(t_end) = rep.fate else {
            continue;
        };
        finite += 1;
        let pw = Piecewise::new(&s, &sched).unwrap();
        // negativity is positive just before and zero just after
        let before =
            negativity_xstate(&pw.state_at((t_end - 10.0 * DEFAULT_TOL).max(0.0)).unwrap())
                .unwrap();
        let after = negativity_xstate(&pw.state_at(t_end + 10.0 * DEFAULT_TOL).unwrap()).unwrap();
        assert!(after.value() <= 1e-12, "{s:?} {tsw}");
        if t_end > 20.0 * DEFAULT_TOL {
            assert!(before.value() >= 0.0);
        }
        // final segment: no root of the reduced quadratic below x(t_end)
        let last_start = if t_end >= tsw { tsw } else { 0.0 };
        let seg_state = pw.state_at(last_start).unwrap();
        let q = ReducedDiscriminant::for_segment(&seg_state).unwrap();
        let x_end = (last_start - t_end).exp();
        let disc = q.q1 * q.q1 - 4.0 * q.q0 * q.q2;
        if q.q2 > 0.0 && disc > 0.0 {
            for root in [
                (-q.q1 - disc.sqrt()) / (2.0 * q.q2),
                (-q.q1 + disc.sqrt()) / (2.0 * q.q2),
            ] {
                assert!(
                    !(root > 0.0 && root < x_end * (1.0 - 1e-8)) || q.eval(root * 0.5) >= 0.0,
                    "revival root {root} below {x_end}"
                );
            }
        }
        if t_end >= tsw {
            assert!(q.eval(0.0) >= 0.0 || !q.entangled_asymptotically());
        }
    }
    assert!(finite > 50);
}

#[test]
fn double_switch_threshold_is_single() {
    let s0 = XState64::with_excited_admixture();
    let t_a = find_t_a(&s0).unwrap();
    let grid = linspace(0.0, t_a, 200);
    let curve = sweep_tsw(&s0, Switch::Both, &grid, 1e-9).unwrap();
    let changes = curve
        .rows
        .windows(2)
        .filter(|w| w[0].report.fate.code() != w[1].report.fate.code())
        .count();
    assert_eq!(changes, 1);
    assert!(curve.rows[0].report.is_averted());
    assert!(curve.rows.last().unwrap().report.tau_end().is_some());
}

#[test]
fn sweep_curve_is_continuous_on_finite_branch() {
    let s0 = XState64::with_excited_admixture();
    for sw in [Switch::Both, Switch::Alice] {
        let grid = linspace(0.0, t0() * 0.999, 150);
        let curve = sweep_tsw(&s0, sw, &grid, 1e-10).unwrap();
        let pts: Vec<_> = curve.finite_points().collect();
        let step = grid[1] - grid[0];
        for w in pts.windows(2) {
            // skip the divergence next to the averted region
            if w[0].1 > 1.5 || w[1].1 > 1.5 {
                continue;
            }
            let dt = (w[1].0 - w[0].0).max(step);
            assert!((w[1].1 - w[0].1).abs() < 10.0 * dt * 5.0, "{w:?}");
        }
    }
}

#[test]
fn sweep_is_deterministic() {
    let s0 = XState64::with_excited_admixture();
    let grid = linspace(0.0, 0.5, 40);
    let a = sweep_tsw(&s0, Switch::Both, &grid, 1e-10).unwrap();
    let b = sweep_tsw(&s0, Switch::Both, &grid, 1e-10).unwrap();
    assert_eq!(a, b);
}

#[test]
fn eq5_maps_unit_interval_into_itself() {
    let mut prev: f64 = eq5_curve(1e-9).unwrap();
    for x in linspace(1e-6f64, 1.0, 2000) {
        let y = eq5_curve(x).unwrap();
        assert!(y > 0.0 && y <= 1.0);
        assert!((y - prev).abs() < 1e-2);
        prev = y;
    }
}

#[test]
fn f32_scalar_runs_the_main_pipeline() {
    let s0 = XState::<f32>::with_excited_admixture();
    let r = find_t_end(&s0, &Schedule::empty(), 1e-5f32).unwrap();
    assert!((r.tau_end().unwrap() as f64 - t0()).abs() < 1e-4);
    let m = evolve_kraus(&s0.to_density_matrix(), 0.3f32).unwrap();
    let c = evolve_xstate_closed(&s0, 0.3f32)
        .unwrap()
        .to_density_matrix();
    assert!(m.max_abs_diff(&c) < 1e-6);
}

#[test]
fn closed_form_negativity_matches_general_path_on_ten_thousand_states() {
    let mut r = rng(26);
    let mut worst: f64 = 0.0;
    for i in 0..10_000 {
        let s = random_xstate(&mut r, i % 2 == 0);
        let s = evolve_xstate_closed(&s, 0.5 * (i % 5) as f64).unwrap();
        let closed = negativity_xstate(&s).unwrap().value();
        let general = negativity(&s.to_density_matrix()).unwrap().value();
        worst = worst.max((closed - general).abs());
    }
    assert!(worst <= 1e-12, "{worst}");
}

#[test]
fn switch_at_t_a_leaves_trajectory_unchanged() {
    let s0 = XState64::with_excited_admixture();
    let t_a = find_t_a(&s0).unwrap();
    let grid = linspace(t_a, 1.5, 50);
    let plain = trajectory(&s0, &Schedule::empty(), &grid).unwrap();
    let switched = trajectory(&s0, &Schedule::single(t_a, Switch::Both).unwrap(), &grid).unwrap();
    for ((_, a), (_, b)) in plain.iter().zip(&switched) {
        assert!((a.value() - b.value()).abs() < 1e-12);
    }
}
