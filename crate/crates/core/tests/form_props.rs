//! Form-level properties: d∘d = 0, the Leibniz rule, naturality of the
//! pullback, star signs, and black-box/polynomial derivative consistency.

use chainlet_core::exterior::{binomial, KVector, MultiIndex};
use chainlet_core::forms::{DifferentialForm, Poly, SmoothMap};
use chainlet_core::linalg::Mat;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

type Form = DifferentialForm<f64>;

fn random_poly(rng: &mut StdRng, n: usize, max_degree: u32) -> Poly<f64> {
    let mut p = Poly::zero(n);
    for _ in 0..3 {
        let mut exps = vec![0u32; n];
        let mut left = max_degree;
        for e in exps.iter_mut() {
            *e = rng.gen_range(0..=left);
            left -= *e;
        }
        p = p.add(&Poly::monomial(n, exps, rng.gen_range(-2.0..2.0)));
    }
    p
}

fn random_form(rng: &mut StdRng, n: usize, k: usize, max_degree: u32) -> Form {
    let terms = MultiIndex::all(n, k)
        .into_iter()
        .map(|h| (h, random_poly(rng, n, max_degree)))
        .collect();
    Form::polynomial(n, k, terms).unwrap()
}

fn random_point(rng: &mut StdRng, n: usize) -> Vec<f64> {
    (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect()
}

fn random_kvector(rng: &mut StdRng, n: usize, k: usize) -> KVector<f64> {
    let coeffs = (0..binomial(n, k)).map(|_| rng.gen_range(-1.0..1.0)).collect();
    KVector::from_coeffs(n, k, coeffs).unwrap()
}

#[test]
fn d_squared_vanishes_identically() {
    let mut rng = StdRng::seed_from_u64(101);
    for n in 1..=4usize {
        for k in 0..n.saturating_sub(1) {
            for _ in 0..5 {
                let w = random_form(&mut rng, n, k, 3);
                let ddw = w.d().unwrap().d().unwrap();
                // polynomial flavor: exact zero coefficients
                for h in MultiIndex::all(n, (k + 2).min(n)) {
                    let p = random_point(&mut rng, n);
                    assert_eq!(ddw.coeff(&p, &h), 0.0);
                }
            }
        }
    }
}

#[test]
fn leibniz_rule_at_random_points() {
    let mut rng = StdRng::seed_from_u64(103);
    for _ in 0..20 {
        let (n, j, k) = (3usize, 1usize, 1usize);
        let a = random_form(&mut rng, n, j, 3);
        let b = random_form(&mut rng, n, k, 3);
        let lhs = a.wedge(&b).d().unwrap();
        let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
        let rhs = a
            .d()
            .unwrap()
            .wedge(&b)
            .add(&a.wedge(&b.d().unwrap()).scale(sign));
        for _ in 0..5 {
            let p = random_point(&mut rng, n);
            let alpha = random_kvector(&mut rng, n, j + k + 1);
            let l = lhs.eval(&p, &alpha).unwrap();
            let r = rhs.eval(&p, &alpha).unwrap();
            assert!((l - r).abs() < 1e-10, "{} vs {}", l, r);
        }
    }
}

#[test]
fn pullback_commutes_with_d_for_affine_maps() {
    let mut rng = StdRng::seed_from_u64(107);
    for _ in 0..15 {
        let vals: Vec<f64> = (0..9).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let a = Mat::from_fn(3, 3, |i, j| vals[3 * i + j]);
        let b = random_point(&mut rng, 3);
        let f = SmoothMap::affine(a, b);
        let w = random_form(&mut rng, 3, 1, 3);
        let lhs = w.pullback(&f).unwrap().d().unwrap();
        let rhs = w.d().unwrap().pullback(&f).unwrap();
        for _ in 0..5 {
            let p = random_point(&mut rng, 3);
            let alpha = random_kvector(&mut rng, 3, 2);
            let l = lhs.eval(&p, &alpha).unwrap();
            let r = rhs.eval(&p, &alpha).unwrap();
            assert!((l - r).abs() < 1e-10, "{} vs {}", l, r);
        }
    }
}

#[test]
fn pullback_is_contravariant_functorial() {
    // (g ∘ f)* = f* ∘ g* for affine maps, exactly
    let mut rng = StdRng::seed_from_u64(109);
    for _ in 0..10 {
        let fv: Vec<f64> = (0..6).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let f = SmoothMap::affine(
            Mat::from_fn(3, 2, |i, j| fv[2 * i + j]),
            random_point(&mut rng, 3),
        );
        let gv: Vec<f64> = (0..9).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let g = SmoothMap::affine(
            Mat::from_fn(3, 3, |i, j| gv[3 * i + j]),
            random_point(&mut rng, 3),
        );
        let w = random_form(&mut rng, 3, 1, 2);
        let composed = w.pullback(&g.compose(&f)).unwrap();
        let chained = w.pullback(&g).unwrap().pullback(&f).unwrap();
        for _ in 0..5 {
            let p = random_point(&mut rng, 2);
            let alpha = random_kvector(&mut rng, 2, 1);
            let l = composed.eval(&p, &alpha).unwrap();
            let r = chained.eval(&p, &alpha).unwrap();
            assert!((l - r).abs() < 1e-11, "{} vs {}", l, r);
        }
    }
}

#[test]
fn star_squares_with_grade_sign_pointwise() {
    let mut rng = StdRng::seed_from_u64(113);
    for n in 1..=4usize {
        for k in 0..=n {
            let w = random_form(&mut rng, n, k, 2);
            let ss = w.star().star();
            let sign = if (k * (n - k)) % 2 == 0 { 1.0 } else { -1.0 };
            for _ in 0..5 {
                let p = random_point(&mut rng, n);
                for h in MultiIndex::all(n, k) {
                    assert_eq!(ss.coeff(&p, &h), sign * w.coeff(&p, &h));
                }
            }
        }
    }
}

#[test]
fn black_box_directional_derivative_tracks_exact_one() {
    let mut rng = StdRng::seed_from_u64(127);
    for _ in 0..10 {
        let poly = random_poly(&mut rng, 2, 3);
        let exact_form = Form::polynomial(
            2,
            1,
            vec![(MultiIndex::new(vec![1], 2).unwrap(), poly.clone())],
        )
        .unwrap();
        let bb = Form::black_box(2, 1, 1, move |p, h| {
            if h.contains(1) {
                poly.eval(p)
            } else {
                0.0
            }
        });
        let v = random_point(&mut rng, 2);
        let exact_d = exact_form.dir_deriv(&v).unwrap();
        let approx_d = bb.dir_deriv(&v).unwrap();
        for _ in 0..5 {
            let p = random_point(&mut rng, 2);
            let alpha = KVector::axis(2, 1);
            let e = exact_d.eval(&p, &alpha).unwrap();
            let a = approx_d.eval(&p, &alpha).unwrap();
            let scale = 1.0f64.max(e.abs());
            assert!((e - a).abs() / scale < 1e-6, "{} vs {}", e, a);
        }
    }
}

#[test]
fn norm_estimate_dominated_by_derivative_level() {
    // |dω|_{r−1} ≤ |ω|_r on monomial dictionary entries, via exact norms
    use chainlet_core::forms::exact_monomial_norm;
    use chainlet_core::region::AxisBox;
    let region = AxisBox::unit(2);
    for (exps, h) in [
        (vec![1u32, 0u32], MultiIndex::new(vec![1], 2).unwrap()),
        (vec![0, 1], MultiIndex::new(vec![1], 2).unwrap()),
        (vec![1, 1], MultiIndex::new(vec![2], 2).unwrap()),
        (vec![2, 0], MultiIndex::new(vec![2], 2).unwrap()),
    ] {
        let w = Form::monomial(2, h.clone(), exps.clone(), 1.0).unwrap();
        let dw = w.d().unwrap();
        for r in 1..=2usize {
            let w_norm = exact_monomial_norm(&region, &exps, 1.0, &h, r).unwrap();
            // |dω|_{r−1} via the sampled estimator (a lower bound of the true
            // value, which still must not exceed |ω|_r)
            let est = chainlet_core::forms::estimate_form_norm(
                &dw,
                r - 1,
                &region,
                0.1,
                &chainlet_core::forms::default_translations(2, 0.2),
            )
            .unwrap();
            assert!(
                est.combined <= w_norm + 1e-9,
                "exps {:?} r {}: {} > {}",
                exps,
                r,
                est.combined,
                w_norm
            );
        }
    }
}
