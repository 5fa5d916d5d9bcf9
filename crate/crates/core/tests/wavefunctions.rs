use std::f64::consts::FRAC_PI_2;

use pdmwell::analytic::{
    normalization_consistency, pct_phase, pdm_normalization, PdmEigenfunction, ScarfEigenfunction,
};
use pdmwell::model::{mass, pct_map, scarf_params, scarf_potential, u_of_x, x_of_u};
use pdmwell::specfun::gauss_legendre;
use pdmwell::{ExtensionKind, ScarfParams, WellParams};

const CLOSED: [ExtensionKind; 2] = [ExtensionKind::Base, ExtensionKind::X1];

fn interior_angles(count: usize) -> impl Iterator<Item = f64> {
    (1..=count).map(move |i| -FRAC_PI_2 + std::f64::consts::PI * i as f64 / (count + 1) as f64)
}

#[test]
fn scarf_states_have_unit_norm() {
    let s = ScarfParams::new(3.5, 1.5);
    let rule = gauss_legendre(400).unwrap();
    for kind in CLOSED {
        for n in 0..=5 {
            let f = ScarfEigenfunction::new(&s, n, kind).unwrap();
            let norm = rule.integrate_on(-FRAC_PI_2, FRAC_PI_2, |u| f.eval(u).unwrap().value.powi(2));
            assert!((norm - 1.0).abs() < 1e-9, "{kind} n={n}: {norm}");
        }
    }
}

#[test]
fn scarf_node_counts() {
    let s = ScarfParams::new(3.5, 1.5);
    for kind in CLOSED {
        for n in 0..=5 {
            let f = ScarfEigenfunction::new(&s, n, kind).unwrap();
            let vals: Vec<f64> = interior_angles(10_000).map(|u| f.eval(u).unwrap().value).collect();
            let nodes = vals.windows(2).filter(|w| w[0] * w[1] < 0.0).count();
            assert_eq!(nodes, n as usize, "{kind}");
        }
    }
}

#[test]
fn scarf_states_solve_the_equation() {
    for &(a, b) in &[(3.5, 1.5), (5.0, 2.0)] {
        let s = ScarfParams::new(a, b);
        for kind in CLOSED {
            for n in 0..=5 {
                let f = ScarfEigenfunction::new(&s, n, kind).unwrap();
                let eps = f.energy();
                let evals: Vec<_> = interior_angles(50)
                    .map(|u| (u, f.eval(u).unwrap()))
                    .collect();
                let peak = evals.iter().fold(0.0_f64, |m, (_, e)| m.max(e.value.abs()));
                for (u, e) in evals {
                    let pot = scarf_potential(&s, u, kind).unwrap();
                    let r = -e.d2 + pot * e.value - eps * e.value;
                    assert!(r.abs() < 1e-8 * eps * peak, "{kind} n={n} u={u}: {r}");
                }
            }
        }
    }
}

#[test]
fn x_space_states_are_the_transformed_scarf_states() {
    for p in [WellParams::reference(), WellParams::new(2.0, 0.5, 2.0).unwrap()] {
        let s = scarf_params(&p).unwrap();
        let lambda = pct_map(&p).lambda;
        for kind in CLOSED {
            for n in 0..=5 {
                let psi = PdmEigenfunction::new(&p, n, kind).unwrap();
                let phi = ScarfEigenfunction::new(&s, n as u32, kind).unwrap();
                let sigma = pct_phase(&p, n, kind).unwrap();
                if kind == ExtensionKind::Base {
                    assert_eq!(sigma, if n % 2 == 0 { 1.0 } else { -1.0 });
                }
                for i in 1..=200 {
                    let x = p.a + p.width() * f64::from(i) / 201.0;
                    let lhs = psi.eval(x).unwrap().value;
                    let rhs = sigma
                        * lambda
                        * mass(&p, x).unwrap().powf(0.25)
                        * phi.eval(u_of_x(&p, x).unwrap()).unwrap().value;
                    assert!((lhs - rhs).abs() < 1e-10, "{p} {kind} n={n} x={x}: {lhs} vs {rhs}");
                }
            }
        }
    }
}

#[test]
fn x_space_states_are_orthonormal() {
    let rule = gauss_legendre(1000).unwrap();
    for p in [WellParams::reference(), WellParams::new(2.0, 0.5, 2.0).unwrap()] {
        for kind in CLOSED {
            let states: Vec<_> = (0..=5)
                .map(|n| PdmEigenfunction::new(&p, n, kind).unwrap())
                .collect();
            for i in 0..states.len() {
                for j in i..states.len() {
                    // x = x(u) clusters nodes at the walls; |dx/du| = ((b−a)/2) cos u.
                    let g = rule.integrate_on(-FRAC_PI_2, FRAC_PI_2, |u| {
                        let x = x_of_u(&p, u).unwrap();
                        states[i].eval(x).unwrap().value
                            * states[j].eval(x).unwrap().value
                            * 0.5
                            * p.width()
                            * u.cos()
                    });
                    let target = if i == j { 1.0 } else { 0.0 };
                    assert!((g - target).abs() < 1e-8, "{p} {kind} ({i},{j}): {g}");
                }
            }
        }
    }
}

#[test]
fn normalization_routes_agree() {
    for p in [WellParams::reference(), WellParams::new(2.0, 0.5, 2.0).unwrap()] {
        for kind in CLOSED {
            for n in 0..=8 {
                let d = normalization_consistency(&p, n, kind).unwrap();
                assert!(d < 1e-12, "{p} {kind} n={n}: {d}");
                assert!(pdm_normalization(&p, n, kind).unwrap() > 0.0);
            }
        }
    }
}

#[test]
fn states_vanish_at_walls() {
    let p = WellParams::reference();
    for kind in CLOSED {
        for n in 0..=3 {
            let psi = PdmEigenfunction::new(&p, n, kind).unwrap();
            let near = |x: f64| psi.eval(x).unwrap().value.abs();
            assert!(near(1.0 + 1e-8) < 1e-4);
            assert!(near(3.0 - 1e-8) < 1e-4);
            assert!(near(1.0 + 1e-10) < near(1.0 + 1e-8));
        }
    }
}

#[test]
fn no_closed_form_for_x2_or_negative_labels() {
    let p = WellParams::reference();
    assert!(PdmEigenfunction::new(&p, 0, ExtensionKind::X2TypeI).is_err());
    assert!(PdmEigenfunction::new(&p, -2, ExtensionKind::Base).is_err());
    assert!(PdmEigenfunction::new(&p, 0, ExtensionKind::Base)
        .unwrap()
        .eval(0.5)
        .is_err());
}
