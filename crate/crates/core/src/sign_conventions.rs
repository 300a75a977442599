//! The sign ledger. Every duality identity in this library carries a global
//! sign that depends only on the ambient dimension n and the grade k of the
//! chain. The signs below are fixed once by two primitive conventions and
//! everything else is derived from them; theorem tests assert identities with
//! exactly these signs.
//!
//! Primitive conventions:
//!
//! 1. **Star.** `★` on k-vectors satisfies `α ∧ ★α = M(α)² vol` with the
//!    standard basis positively oriented; `★` on forms acts coefficientwise
//!    on the Riesz vector. Together these make `∫_{★E} ★ω = ∫_E ω` exact
//!    with sign +1.
//! 2. **Derivative.** `∇_v` pairs as the forward directional derivative
//!    `∇_v ω = lim (ω(p+tv) − ω(p))/t`, so the discrete approximant of the
//!    dipole `∇_v α_p` is `2^i (T_{v/2^i} α_p − α_p)`.
//!
//! Derived table (E a k-element chain in R^n, ω of the grade that pairs):
//!
//! | identity                                   | sign                  |
//! |--------------------------------------------|-----------------------|
//! | `∫_{∂E} ω = ∫_E dω`                        | `+1`                  |
//! | `∫_{★E} ★ω = ∫_E ω`                        | `+1`                  |
//! | `∫_{★E} ω = s·∫_E ★ω`                      | `s = (−1)^{k(n−k)}`   |
//! | `∫_{∂★E} ω = ∫_{★E} dω`                    | `+1` (Stokes on ★E)   |
//! | `∫_{∂★E} ω = s·∫_E ★dω` (curl)             | `s = (−1)^{k(n−k)}`   |
//! | `∫_{★∂E} ω = s·∫_E d★ω` (divergence)       | `s = (−1)^{(k−1)(n−k−1)}` |
//! | `∫_{◇E} ω = s·∫_E δω`, `δ = ★d★`           | `s = (−1)^{n+1}`      |
//! | `∫_{ΔE} ω = s·∫_E □ω`, `□ = dδ + δd`       | `s = (−1)^{n−1}`      |
//!
//! The element-level cup Leibniz rule, with constant ω and β = Vec(ω):
//! `∂(α_p ∪ β_p) = (∂α_p) ∪ β_p + (−1)^k α_p ∪ (∂β_p)` for grade-k α,
//! where the last term left-wedges α onto each boundary term of the
//! β-monopole. The sign was determined empirically over the full grade sweep
//! (n ≤ 4) and is asserted in the tests; expressing the left wedge through
//! the right-cup API costs an extra `(−1)^{k(j−1)}` commutation.

/// `(−1)^e` as a scalar-friendly f64 sign.
fn parity_sign(e: i64) -> f64 {
    if e.rem_euclid(2) == 0 {
        1.0
    } else {
        -1.0
    }
}

/// Sign in `∫_{★E} ω = s · ∫_E ★ω` for a k-chain E in R^n.
pub fn star_duality_sign(n: usize, k: usize) -> f64 {
    parity_sign((k * (n - k)) as i64)
}

/// Sign in the generalized curl identity `∫_{∂★E} ω = s · ∫_E ★dω`.
pub fn curl_sign(n: usize, k: usize) -> f64 {
    star_duality_sign(n, k)
}

/// Sign in the generalized divergence identity `∫_{★∂E} ω = s · ∫_E d★ω`,
/// for a k-chain E with k ≥ 1.
pub fn divergence_sign(n: usize, k: usize) -> f64 {
    parity_sign((k as i64 - 1) * (n as i64 - k as i64 - 1))
}

/// Sign in the coboundary pairing `∫_{◇E} ω = s · ∫_E δω` with `δ = ★d★`.
pub fn coboundary_sign(n: usize) -> f64 {
    parity_sign(n as i64 + 1)
}

/// Sign in the Laplace pairing `∫_{ΔE} ω = s · ∫_E □ω` with `□ = dδ + δd`.
pub fn laplace_sign(n: usize) -> f64 {
    parity_sign(n as i64 - 1)
}

/// Sign of the form term in the cup-product Leibniz rule for grade-k chains.
pub fn cup_leibniz_sign(k: usize) -> f64 {
    parity_sign(k as i64)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn divergence_sign_matches_reduced_exponent() {
        // (k−1)(n−k−1) and (k−1)(n−k+1) agree mod 2
        for n in 1..=6i64 {
            for k in 1..=n {
                let a = parity_sign((k - 1) * (n - k - 1));
                let b = parity_sign((k - 1) * (n - k + 1));
                assert_eq!(a, b);
            }
        }
    }

    #[test]
    fn coboundary_sign_composes_from_parts() {
        // ◇ = ★∂★ chains the divergence and star signs:
        // (n−k−1)(k+1) + k(n−k) ≡ n+1 (mod 2)
        for n in 1..=6i64 {
            for k in 0..=n {
                let composed = parity_sign((n - k - 1) * (k + 1) + k * (n - k));
                assert_eq!(composed, coboundary_sign(n as usize));
            }
        }
    }
}
