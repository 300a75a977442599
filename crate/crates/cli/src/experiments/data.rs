//! Seeded random test data shared across experiments.

use chainlet_core::exterior::{binomial, KVector, MultiIndex};
use chainlet_core::{DifferentialForm, ElementChain, Poly};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub type Rng8 = ChaCha8Rng;

pub fn random_point(rng: &mut Rng8, n: usize, scale: f64) -> Vec<f64> {
    (0..n).map(|_| rng.gen_range(-scale..scale)).collect()
}

pub fn random_poly(rng: &mut Rng8, n: usize, max_degree: u32, scale: f64) -> Poly {
    let mut p = Poly::zero(n);
    for _ in 0..3 {
        let mut exps = vec![0u32; n];
        let mut left = max_degree;
        for e in exps.iter_mut() {
            *e = rng.gen_range(0..=left);
            left -= *e;
        }
        p = p.add(&Poly::monomial(n, exps, rng.gen_range(-scale..scale)));
    }
    p
}

pub fn random_form(rng: &mut Rng8, n: usize, k: usize, max_degree: u32) -> DifferentialForm {
    let mut terms = Vec::new();
    for h in MultiIndex::all(n, k) {
        terms.push((h, random_poly(rng, n, max_degree, 2.0)));
    }
    DifferentialForm::polynomial(n, k, terms).expect("random form is well-shaped")
}

pub fn random_kvector(rng: &mut Rng8, n: usize, k: usize) -> KVector<f64> {
    let coeffs = (0..binomial(n, k))
        .map(|_| rng.gen_range(-2.0..2.0))
        .collect();
    KVector::from_coeffs(n, k, coeffs).expect("coefficient count matches")
}

pub fn random_element_chain(
    rng: &mut Rng8,
    n: usize,
    k: usize,
    max_order: usize,
    terms: usize,
) -> ElementChain {
    let mut acc = ElementChain::empty(n, k);
    for _ in 0..terms {
        let mut term = ElementChain::monopole(random_point(rng, n, 1.0), random_kvector(rng, n, k));
        let order = rng.gen_range(0..=max_order);
        for _ in 0..order {
            term = term.nabla(&random_point(rng, n, 1.0));
        }
        acc = acc.add(&term);
    }
    acc
}
