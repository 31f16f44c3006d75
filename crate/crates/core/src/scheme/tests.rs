use super::*;
use crate::sbp::weighted_inner;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type C = Complex<f64>;

fn c(re: f64, im: f64) -> C {
    Complex::new(re, im)
}

fn grid(n: usize) -> GridCircle<f64> {
    GridCircle::new(2.0, n).unwrap()
}

fn random_state(rng: &mut ChaCha8Rng, g: GridCircle<f64>, rep: Representation) -> WaveFunction<f64> {
    let n = g.points(rep);
    let v = (0..n)
        .map(|_| c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
        .collect();
    WaveFunction::new(g, rep, v).unwrap()
}

fn scalings() -> [LScaling<f64>; 3] {
    [
        LScaling::ExplicitBound,
        LScaling::Power {
            coeff: 1e3,
            exponent: 2,
        },
        LScaling::Power {
            coeff: 1e3,
            exponent: 3,
        },
    ]
}

fn sigma_norm_sq(op: &SbpOperator<f64>, u: &WaveFunction<f64>) -> f64 {
    weighted_inner(op, u, u).unwrap().re
}

fn interface(order: usize, n: usize, cfg: SchemeConfig<f64>) -> InterfaceScheme<f64> {
    InterfaceScheme::new(SbpOperator::new(order).unwrap(), grid(n), cfg).unwrap()
}

fn potential() -> SchemeConfig<f64> {
    SchemeConfig::default().with_potential(|x: f64, t: f64| (3.0 * x).sin() + t)
}

#[test]
fn zero_state_gives_zero_rhs() {
    let s = interface(8, 64, potential().with_epsilon(0.1));
    let u = WaveFunction::zeros(grid(64), Representation::Interface);
    assert!(s.rhs(&u, 0.3).unwrap().values().iter().all(|z| *z == c(0.0, 0.0)));
    let p = PeriodicScheme::new(PeriodicStencil::new(8).unwrap(), grid(64), potential()).unwrap();
    let u = WaveFunction::zeros(grid(64), Representation::Periodic);
    assert!(p.rhs(&u, 0.3).unwrap().values().iter().all(|z| *z == c(0.0, 0.0)));
}

#[test]
fn periodic_plane_wave_follows_the_stencil_symbol() {
    for order in [2, 4, 6, 8] {
        let st = PeriodicStencil::<f64>::new(order).unwrap();
        let g = grid(200);
        let dx = g.dx();
        let k = 2.0 * std::f64::consts::PI * 10.0 / g.length();
        let u = WaveFunction::from_fn(g, Representation::Periodic, |x| c(0.0, k * x).exp());
        let p = PeriodicScheme::new(st.clone(), g, SchemeConfig::default()).unwrap();
        let r = p.rhs(&u, 0.0).unwrap();
        let k_eff: f64 = st
            .coefficients()
            .iter()
            .enumerate()
            .map(|(m, a)| 2.0 * a * ((m + 1) as f64 * k * dx).sin())
            .sum::<f64>()
            / dx;
        for (z, w) in r.values().iter().zip(u.values()) {
            let want = c(0.0, k_eff * k_eff) * w;
            assert!((z - want).norm() < 1e-9 * k * k, "order {order}");
        }
        // and close to the exact +ik² for a resolved mode
        let rel = (k_eff * k_eff - k * k).abs() / (k * k);
        assert!(rel < [4e-2, 2e-3, 1e-4, 1e-5][order / 2 - 1], "order {order}: {rel}");
    }
}

#[test]
fn periodic_rhs_is_anti_hermitian_with_real_potential() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for order in [2, 4, 6, 8] {
        let p = PeriodicScheme::new(PeriodicStencil::new(order).unwrap(), grid(64), potential()).unwrap();
        for _ in 0..20 {
            let u = random_state(&mut rng, grid(64), Representation::Periodic);
            let r = p.rhs(&u, 0.2).unwrap();
            let ip: C = u.values().iter().zip(r.values()).map(|(a, b)| a.conj() * b).sum();
            let scale: f64 = u.values().iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
                * r.values().iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
            assert!(ip.re.abs() <= 1e-13 * scale);
        }
    }
}

#[test]
fn interface_rhs_is_anti_hermitian() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for order in [2, 4, 6, 8] {
        for l in scalings() {
            let s = interface(order, 64, potential().with_l(l));
            let op = s.operator().clone();
            for _ in 0..20 {
                let u = random_state(&mut rng, grid(64), Representation::Interface);
                let v = random_state(&mut rng, grid(64), Representation::Interface);
                let ru = s.rhs(&u, 0.1).unwrap();
                let rv = s.rhs(&v, 0.1).unwrap();
                let sum = weighted_inner(&op, &v, &ru).unwrap() + weighted_inner(&op, &rv, &u).unwrap();
                let scale = (sigma_norm_sq(&op, &v) * sigma_norm_sq(&op, &ru)).sqrt()
                    + (sigma_norm_sq(&op, &rv) * sigma_norm_sq(&op, &u)).sqrt();
                assert!(sum.norm() <= 1e-12 * scale, "order {order}, L {l}: {}", sum.norm() / scale);
            }
        }
    }
}

#[test]
fn uncorrected_scheme_leaks_the_boundary_flux() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for order in [2, 4, 6, 8] {
        let cfg = SchemeConfig {
            sat_correction: false,
            ..SchemeConfig::default()
        }
        .with_l(LScaling::Fixed(c(0.0, 0.0)));
        let s = interface(order, 64, cfg);
        let op = s.operator().clone();
        for _ in 0..10 {
            let u = random_state(&mut rng, grid(64), Representation::Interface);
            let r = s.rhs(&u, 0.0).unwrap();
            let got = weighted_inner(&op, &u, &r).unwrap().re;
            let (d0, dn) = s.boundary_derivatives(u.values());
            let n = u.len() - 1;
            let flux = (u.values()[n].conj() * dn - u.values()[0].conj() * d0).im;
            assert!((got - flux).abs() <= 1e-11 * flux.abs().max(1.0), "{got} vs {flux}");
        }
    }
}

#[test]
fn corrections_vanish_for_matched_flat_ends() {
    let g = grid(100);
    // flat within 12 points of each end, equal end values
    let bump = |x: f64| {
        if (x - 1.0).abs() < 0.7 {
            let s = (x - 1.0) / 0.7;
            c((1.0 - s * s).powi(6), 0.5 * (1.0 - s * s).powi(7))
        } else {
            c(0.0, 0.0)
        }
    };
    let u = WaveFunction::from_fn(g, Representation::Interface, |x| bump(x) + c(0.3, -0.1));
    for order in [2, 4, 6, 8] {
        let full = interface(order, 100, SchemeConfig::default()).rhs(&u, 0.0).unwrap();
        let bare = interface(
            order,
            100,
            SchemeConfig {
                sat_correction: false,
                ..SchemeConfig::default()
            }
            .with_l(LScaling::Fixed(c(0.0, 0.0))),
        )
        .rhs(&u, 0.0)
        .unwrap();
        // only round-off of D applied to a constant remains
        for j in [0, 100] {
            assert!((full.values()[j] - bare.values()[j]).norm() < 1e-9, "order {order}");
        }
        assert!(full.values()[0].norm() < 1e-9);
    }
}

#[test]
fn split_reconstructs_the_full_rhs() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let s = interface(8, 128, potential().with_epsilon(0.1).with_l(scalings()[2]));
    for _ in 0..100 {
        let u = random_state(&mut rng, grid(128), Representation::Interface);
        let full = s.rhs(&u, 0.5).unwrap();
        let (e, st) = s.rhs_split(&u, 0.5).unwrap();
        let scale = full.values().iter().map(|z| z.norm()).fold(0.0, f64::max);
        for ((f, a), b) in full.values().iter().zip(e.values()).zip(st.values()) {
            assert!((f - (a + b)).norm() <= 1e-14 * scale);
        }
        for (j, z) in st.values().iter().enumerate() {
            if j != 0 && j != 128 {
                assert_eq!(*z, c(0.0, 0.0));
            }
        }
    }
    let mut u = random_state(&mut rng, grid(128), Representation::Interface);
    let v0 = u.values()[0];
    u.values_mut()[128] = v0;
    let (_, st) = s.rhs_split(&u, 0.0).unwrap();
    assert!(st.values().iter().all(|z| *z == c(0.0, 0.0)));
}

#[test]
fn stiff_solve_satisfies_the_implicit_equation() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let s = interface(4, 64, SchemeConfig::default().with_l(LScaling::Fixed(c(3e5, -20.0))));
    let u = random_state(&mut rng, grid(64), Representation::Interface);
    let mut v = u.values().to_vec();
    let coeff = 1e-3;
    s.solve_stiff(0.0, coeff, &mut v);
    let mut st = vec![c(0.0, 0.0); v.len()];
    s.stiff_into(0.0, &v, &mut st);
    for ((a, b), p) in v.iter().zip(u.values()).zip(&st) {
        assert!((a - (b + p * coeff)).norm() < 1e-12);
    }
}

#[test]
fn rhs_is_linear() {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let s = interface(6, 64, potential().with_epsilon(0.2).with_l(scalings()[1]));
    let (a, b) = (c(0.3, -1.2), c(-2.0, 0.5));
    for _ in 0..10 {
        let u = random_state(&mut rng, grid(64), Representation::Interface);
        let v = random_state(&mut rng, grid(64), Representation::Interface);
        let w: Vec<C> = u.values().iter().zip(v.values()).map(|(x, y)| a * x + b * y).collect();
        let lhs = s.rhs(&u.with_values(w).unwrap(), 0.7).unwrap();
        let ru = s.rhs(&u, 0.7).unwrap();
        let rv = s.rhs(&v, 0.7).unwrap();
        let scale = lhs.values().iter().map(|z| z.norm()).fold(0.0, f64::max);
        for ((l, x), y) in lhs.values().iter().zip(ru.values()).zip(rv.values()) {
            assert!((l - (a * x + b * y)).norm() <= 1e-13 * scale);
        }
    }
}

#[test]
fn dissipation_and_lossy_penalty_never_grow_the_norm() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for order in [2, 4, 6, 8] {
        let cases = [
            SchemeConfig::default().with_epsilon(0.1),
            SchemeConfig::default().with_l(LScaling::Fixed(c(1e4, -50.0))),
            potential().with_epsilon(0.05).with_l(LScaling::Fixed(c(10.0, -1e3))),
        ];
        for cfg in cases {
            let s = interface(order, 64, cfg);
            let op = s.operator().clone();
            for _ in 0..20 {
                let u = random_state(&mut rng, grid(64), Representation::Interface);
                let r = s.rhs(&u, 0.0).unwrap();
                let re = weighted_inner(&op, &u, &r).unwrap().re;
                let scale = (sigma_norm_sq(&op, &u) * sigma_norm_sq(&op, &r)).sqrt();
                assert!(re <= 1e-12 * scale);
                assert!(re < 0.0);
            }
        }
    }
}

#[test]
fn dissipation_annihilates_constants_and_lines() {
    let g = grid(64);
    let op = SbpOperator::<f64>::new(8).unwrap();
    let constant = WaveFunction::from_fn(g, Representation::Interface, |_| c(2.0, -1.0));
    let line = WaveFunction::from_fn(g, Representation::Interface, |x| c(x, 3.0 * x));
    for u in [constant, line] {
        let m = ko_dissipation_interface(&op, 0.2, &u).unwrap();
        assert!(m.values().iter().all(|z| z.norm() < 1e-6), "{:?}", m.values());
    }
    let constant = WaveFunction::from_fn(g, Representation::Periodic, |_| c(2.0, -1.0));
    let m = ko_dissipation_periodic(0.2, &constant).unwrap();
    assert!(m.values().iter().all(|z| z.norm() < 1e-9));
    let line = WaveFunction::from_fn(g, Representation::Periodic, |x| c(x, 0.0));
    let m = ko_dissipation_periodic(0.2, &line).unwrap();
    assert!(m.values()[4..60].iter().all(|z| z.norm() < 1e-6));
}

#[test]
fn dissipation_symbol_on_a_periodic_mode() {
    let g = grid(128);
    let dx = g.dx();
    let eps = 0.1;
    for m in [1, 5, 20, 64] {
        let k = 2.0 * std::f64::consts::PI * m as f64 / g.length();
        let u = WaveFunction::from_fn(g, Representation::Periodic, |x| c(0.0, k * x).exp());
        let out = ko_dissipation_periodic(eps, &u).unwrap();
        let rate = -eps * dx.powi(7) * (4.0 * (k * dx / 2.0).sin().powi(2) / (dx * dx)).powi(4);
        assert!(rate <= 0.0);
        for (z, w) in out.values().iter().zip(u.values()) {
            assert!((z - w * rate).norm() <= 1e-9 * rate.abs().max(1.0), "mode {m}");
        }
    }
}

#[test]
fn interface_dissipation_is_off_near_the_ends_and_plain_inside() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let g = grid(64);
    let op = SbpOperator::<f64>::new(8).unwrap();
    let u = random_state(&mut rng, g, Representation::Interface);
    let m = ko_dissipation_interface(&op, 0.1, &u).unwrap();
    for j in (0..4).chain(61..65) {
        assert_eq!(m.values()[j], c(0.0, 0.0), "row {j}");
    }
    let dx = g.dx();
    for j in 8..=56 {
        let mut want = c(0.0, 0.0);
        for (m, w) in [1.0, -8.0, 28.0, -56.0, 70.0, -56.0, 28.0, -8.0, 1.0].iter().enumerate() {
            want += u.values()[j + m - 4] * (-0.1 / dx * w);
        }
        assert!((m.values()[j] - want).norm() < 1e-10 * want.norm().max(1.0), "row {j}");
    }
}

#[test]
fn interaction_factor_scalings() {
    let op = SbpOperator::<f64>::new(8).unwrap();
    let g = grid(2000);
    let s0 = op.sigma(2000)[0];
    let s = InterfaceScheme::new(op.clone(), g, SchemeConfig::default()).unwrap();
    let want = 1.0 / (s0 * 1e-6);
    assert!((s.interaction_factor().re - want).abs() < 1e-9 * want);
    let s = InterfaceScheme::new(op.clone(), g, SchemeConfig::default().with_l(scalings()[2])).unwrap();
    assert!((s.interaction_factor().re - 1e12).abs() < 1e-3);
    assert!(InterfaceScheme::new(
        op.clone(),
        g,
        SchemeConfig::default().with_l(LScaling::Fixed(c(-1.0, 0.0)))
    )
    .is_err());
    assert!(InterfaceScheme::new(op, g, SchemeConfig::default().with_epsilon(-0.1)).is_err());
}

#[test]
fn wrong_representation_is_rejected() {
    let s = interface(4, 64, SchemeConfig::default());
    let u = WaveFunction::zeros(grid(64), Representation::Periodic);
    assert!(matches!(s.rhs(&u, 0.0), Err(Error::Mismatch(_))));
    let u = WaveFunction::zeros(grid(32), Representation::Interface);
    assert!(matches!(s.rhs(&u, 0.0), Err(Error::Mismatch(_))));
    let p = PeriodicScheme::new(PeriodicStencil::new(4).unwrap(), grid(64), SchemeConfig::default()).unwrap();
    let u = WaveFunction::zeros(grid(64), Representation::Interface);
    assert!(matches!(p.rhs(&u, 0.0), Err(Error::Mismatch(_))));
    assert!(ko_dissipation_periodic(0.1, &u).is_err());
}

#[test]
fn potential_enters_as_minus_i_v() {
    let g = grid(64);
    let cfg = SchemeConfig::default().with_potential(|x: f64, t: f64| x + 10.0 * t);
    let with = interface(8, 64, cfg.clone());
    let without = interface(8, 64, SchemeConfig::default());
    let u = WaveFunction::from_fn(g, Representation::Interface, |x| c(x.cos(), 1.0));
    let a = with.rhs(&u, 0.25).unwrap();
    let b = without.rhs(&u, 0.25).unwrap();
    for j in 0..=64 {
        let v = g.x(j) + 2.5;
        let want = c(0.0, -v) * u.values()[j];
        assert!((a.values()[j] - b.values()[j] - want).norm() < 1e-9);
    }
}
