//! Certificate-backed norm brackets on the canonical Cauchy sequences: the
//! shrinking weighted squares, staircases against the diagonal, boundary
//! transport, and the small-support Vec bounds.

use chainlet_core::chains::{DifferenceCell, DifferenceChain, PolyChain, Simplex};
use chainlet_core::exterior::MultiIndex;
use chainlet_core::norms::{
    bracket_poly, natural_lower, natural_upper, ChainRef, DecompositionCert, FormDictionary,
};
use chainlet_core::region::AxisBox;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

type Chain = PolyChain<f64>;

fn dict(n: usize, k: usize) -> FormDictionary<f64> {
    FormDictionary::monomials(n, k, 2, &AxisBox::centered(n, 2.0), 3).unwrap()
}

fn dict_all(n: usize) -> FormDictionary<f64> {
    FormDictionary::monomials_all_grades(n, 2, &AxisBox::centered(n, 2.0), 3).unwrap()
}

/// `σ_k`: the positively oriented square centered at the origin with edge
/// `2^{-k}`; `P_k = 2^{2k} σ_k` has unit mass.
fn weighted_square(k: i32) -> Chain {
    let h = 0.5f64.powi(k);
    let sigma = Chain::axis_cube(&[-h / 2.0, -h / 2.0], &MultiIndex::full(2), h).unwrap();
    sigma.scale(4.0f64.powi(k))
}

/// Certificate for `P_k − P_{k+1}` as four first-order difference cells:
/// each quarter of σ_k pairs against a quarter-weight copy of σ_{k+1}.
fn squares_step_cert(k: i32) -> (Chain, DecompositionCert<f64>) {
    let h = 0.5f64.powi(k + 1); // subsquare edge
    let weight = 4.0f64.powi(k);
    let mut cells = Vec::new();
    for (cx, cy) in [(-h, -h), (0.0, -h), (-h, 0.0), (0.0, 0.0)] {
        let sub = Chain::axis_cube(&[cx, cy], &MultiIndex::full(2), h).unwrap();
        // translate the subsquare onto the centered square σ_{k+1}
        let v = vec![-h / 2.0 - cx, -h / 2.0 - cy];
        cells.push((weight, DifferenceCell::new(sub, vec![v])));
    }
    let diff = weighted_square(k).sub(&weighted_square(k + 1));
    let cert = DecompositionCert::from_diffs(vec![
        DifferenceChain::empty(),
        DifferenceChain::new(cells),
    ]);
    (diff, cert)
}

#[test]
fn shrinking_squares_are_natural_cauchy() {
    // upper brackets for |P_k − P_{k+1}|^{♮1} decay geometrically
    let d = dict(2, 2);
    let mut uppers = Vec::new();
    for k in 0..6 {
        let (diff, cert) = squares_step_cert(k);
        let up = natural_upper(&diff, &cert, 1, &d).unwrap();
        let expected = 2.0f64.sqrt() * 0.25 * 0.5f64.powi(k);
        assert!((up - expected).abs() < 1e-12, "k={}: {}", k, up);
        uppers.push(up);
    }
    for pair in uppers.windows(2) {
        assert!((pair[1] / pair[0] - 0.5).abs() < 1e-9);
    }
}

#[test]
fn shrinking_square_boundaries_are_two_natural_cauchy() {
    // |∂(P_k − P_{k+1})|^{♮2} ≤ |P_k − P_{k+1}|^{♮1} via the transported cert
    let d = dict_all(2);
    for k in 0..5 {
        let (diff, cert) = squares_step_cert(k);
        let boundary = diff.boundary();
        let transported = DecompositionCert::boundary_of(diff.clone(), cert.clone());
        let up2 = natural_upper(&boundary, &transported, 2, &d).unwrap();
        let up1 = natural_upper(&diff, &cert, 1, &d).unwrap();
        assert!(up2 <= up1 + 1e-12, "k={}: {} vs {}", k, up2, up1);
    }
}

/// n-step staircase from (0,0) to (1,1) walking right-then-up, and the
/// triangles between the staircase and the diagonal whose boundaries the
/// difference is.
fn staircase_cert(steps: usize) -> (Chain, DecompositionCert<f64>) {
    let h = 1.0 / steps as f64;
    let mut staircase = Chain::empty(2, 1);
    let mut triangles = Chain::empty(2, 2);
    for i in 0..steps {
        let x = i as f64 * h;
        let y = i as f64 * h;
        let right = Simplex::positively_oriented(vec![vec![x, y], vec![x + h, y]]).unwrap();
        let up =
            Simplex::positively_oriented(vec![vec![x + h, y], vec![x + h, y + h]]).unwrap();
        staircase = staircase
            .add(&Chain::from_simplex(right))
            .add(&Chain::from_simplex(up));
        let tri = Simplex::positively_oriented(vec![
            vec![x, y],
            vec![x + h, y],
            vec![x + h, y + h],
        ])
        .unwrap();
        triangles = triangles.add(&Chain::from_simplex(tri));
    }
    let diagonal = Chain::from_simplex(
        Simplex::positively_oriented(vec![vec![0.0, 0.0], vec![1.0, 1.0]]).unwrap(),
    );
    let diff = staircase.sub(&diagonal);
    let cert = DecompositionCert::boundary_of(triangles.clone(), DecompositionCert::trivial(&triangles));
    (diff, cert)
}

#[test]
fn staircase_approaches_diagonal_in_one_natural_norm() {
    let d = dict(2, 1);
    for steps in [2usize, 4, 8, 16] {
        let (diff, cert) = staircase_cert(steps);
        let up = natural_upper(&diff, &cert, 1, &d).unwrap();
        // total triangle area is 1/(2n)
        assert!(
            (up - 0.5 / steps as f64).abs() < 1e-12,
            "steps {}: upper {}",
            steps,
            up
        );
        let (lower, _) = natural_lower(&ChainRef::Poly(&diff), 1, &d).unwrap();
        assert!(lower <= up + 1e-12);
    }
}

#[test]
fn upper_bounds_decrease_in_r() {
    // the same certificate extended trivially can only improve at higher r
    let d = dict(2, 2);
    let p = weighted_square(2);
    let cert = DecompositionCert::trivial(&p);
    let mut prev = f64::INFINITY;
    for r in 0..=3 {
        let up = natural_upper(&p, &cert, r, &d).unwrap();
        assert!(up <= prev + 1e-12, "r={}: {} vs {}", r, up, prev);
        prev = up;
    }
}

#[test]
fn boundary_bound_bracket_ordering_random_chains() {
    let mut rng = StdRng::seed_from_u64(67);
    let d = dict_all(2);
    for _ in 0..40 {
        let corner = [rng.gen_range(-1.0..0.5), rng.gen_range(-1.0..0.5)];
        let edge = rng.gen_range(0.1..0.8);
        let p = Chain::axis_cube(&corner, &MultiIndex::full(2), edge)
            .unwrap()
            .scale(rng.gen_range(-2.0..2.0));
        for r in 1..=2usize {
            let cert_p = DecompositionCert::trivial(&p);
            let upper_p = natural_upper(&p, &cert_p, r - 1, &d).unwrap();
            let transported = DecompositionCert::boundary_of(p.clone(), cert_p);
            let b = p.boundary();
            let bracket = bracket_poly(&b, &transported, r, &d, "transported").unwrap();
            assert!(bracket.is_consistent());
            assert!(
                bracket.upper <= upper_p + 1e-12,
                "|∂P|_{} = {} > |P|_{} = {}",
                r,
                bracket.upper,
                r - 1,
                upper_p
            );
        }
    }
}

#[test]
fn vec_lower_bound_and_small_support_upper() {
    let mut rng = StdRng::seed_from_u64(71);
    for _ in 0..20 {
        // P = a·σ + b·(σ' − T_v σ') inside an ε-ball
        let eps = rng.gen_range(0.05..0.3);
        let edge = eps / 4.0;
        let a = rng.gen_range(0.5..2.0);
        let b = rng.gen_range(0.5..2.0);
        let sigma = Chain::axis_cube(&[0.0, 0.0], &MultiIndex::full(2), edge).unwrap();
        let sigma2 = Chain::axis_cube(&[-edge, -edge], &MultiIndex::full(2), edge).unwrap();
        let v = vec![rng.gen_range(0.0..eps / 2.0), 0.0];
        let p = sigma
            .scale(a)
            .add(&sigma2.scale(b))
            .sub(&sigma2.translate(&v).scale(b));

        let cell0 = DifferenceCell::new(sigma.clone(), vec![]);
        let cell1 = DifferenceCell::new(sigma2.clone(), vec![v.clone()]);
        let cert = DecompositionCert::from_diffs(vec![
            DifferenceChain::new(vec![(a, cell0)]),
            DifferenceChain::new(vec![(b, cell1)]),
        ]);
        let mut d = dict(2, 2);
        d.push_aligned_constant(&p.vec(), 3);
        let upper = natural_upper(&p, &cert, 1, &d).unwrap();

        // M(Vec(P)) ≤ lower ≤ upper (the aligned constant form certifies it)
        let (lower, _) = natural_lower(&ChainRef::Poly(&p), 1, &d).unwrap();
        let vec_mass = p.vec().mass();
        assert!(vec_mass <= lower + 1e-12);
        assert!(lower <= upper + 1e-12);

        // |P|^{♮1} ≤ M(Vec(P)) + ε M(P) on this ε-ball construction
        let bound = vec_mass + eps * p.mass();
        assert!(
            upper <= bound + 1e-12,
            "upper {} vs M(Vec)+εM = {}",
            upper,
            bound
        );
    }
}
