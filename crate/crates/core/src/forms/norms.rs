//! B^r norms of differential forms: sampled estimation of the translation
//! seminorms, and exact closed forms for the monomial dictionary.
//!
//! The level-0 seminorm is approximated by the pointwise Euclidean norm of the
//! coefficient vector. That is an upper bound for the comass (exact whenever
//! the covector value is simple, in particular for every single-covector
//! form), and the cell-average sup it stands in for converges to it in the
//! small-cell limit. Translation levels maximize over a *finite* supplied set
//! of directions, so the sampled estimates are certified lower bounds of the
//! true suprema; the report says which reading applies.

use crate::error::{ChainletError, Result};
use crate::exterior::MultiIndex;
use crate::forms::form::DifferentialForm;
use crate::region::AxisBox;
use crate::scalar::{vec_norm, Scalar};

/// Estimates of `‖ω‖_0 .. ‖ω‖_r`, `‖dω‖_0 .. ‖dω‖_{r-1}` and the combined
/// `|ω|_r`, with the sampling metadata that produced them.
#[derive(Debug, Clone)]
pub struct FormNormReport<S> {
    pub r: usize,
    /// `‖ω‖_0 ..= ‖ω‖_r`.
    pub levels: Vec<S>,
    /// `‖dω‖_0 ..= ‖dω‖_{r-1}`; stands in for the primed seminorm chain.
    pub d_levels: Vec<S>,
    /// `|ω|_r = max` of every level above.
    pub combined: S,
    pub grid_spacing: S,
    pub translation_count: usize,
    /// Translation levels are maximized over a finite direction set, so they
    /// are lower bounds of the true suprema.
    pub lower_bound_only: bool,
}

/// Default translation set: ± coordinate directions at three scales.
pub fn default_translations<S: Scalar>(n: usize, base: S) -> Vec<Vec<S>> {
    let mut out = Vec::new();
    for axis in 0..n {
        for scale in [base, base / S::from_f(2.0), base / S::from_f(4.0)] {
            for sign in [S::one(), -S::one()] {
                let mut v = vec![S::zero(); n];
                v[axis] = sign * scale;
                out.push(v);
            }
        }
    }
    out
}

/// `‖ω‖_level` estimated as the sup over sample points and over all choices
/// of `level` translation vectors from the supplied set of the iterated
/// difference `Σ_{T} (−1)^{|T|} ω(p − Σ_{i∈T} v_i)` (coefficient-vector
/// Euclidean norm), divided by `Π |v_i|`. All `2^level` evaluation points
/// must lie inside the region, honoring the support restriction of the
/// seminorm definition, so
/// the result is a genuine lower bound of the translation seminorm.
fn translation_level<S: Scalar>(
    w: &DifferentialForm<S>,
    level: usize,
    samples: &[Vec<S>],
    translations: &[Vec<S>],
    region: &AxisBox<S>,
) -> S {
    let idxs = MultiIndex::all(w.n(), w.degree());
    let coeff_vec = |p: &[S]| -> Vec<S> { idxs.iter().map(|h| w.coeff(p, h)).collect() };

    let mut chosen: Vec<&Vec<S>> = Vec::with_capacity(level);
    let mut best = S::zero();
    sup_over_choices(
        level,
        samples,
        translations,
        region,
        &coeff_vec,
        &mut chosen,
        &mut best,
    );
    best
}

#[allow(clippy::too_many_arguments)]
fn sup_over_choices<'a, S: Scalar>(
    remaining: usize,
    samples: &[Vec<S>],
    translations: &'a [Vec<S>],
    region: &AxisBox<S>,
    coeff_vec: &dyn Fn(&[S]) -> Vec<S>,
    chosen: &mut Vec<&'a Vec<S>>,
    best: &mut S,
) {
    if remaining > 0 {
        for v in translations {
            if vec_norm(v) == S::zero() {
                continue;
            }
            chosen.push(v);
            sup_over_choices(
                remaining - 1,
                samples,
                translations,
                region,
                coeff_vec,
                chosen,
                best,
            );
            chosen.pop();
        }
        return;
    }
    let level = chosen.len();
    let denom = chosen.iter().fold(S::one(), |acc, v| acc * vec_norm(v));
    'samples: for p in samples {
        let mut acc = vec![S::zero(); coeff_vec(p).len().max(1)];
        let mut any = false;
        for mask in 0u32..(1 << level) {
            let mut q = p.clone();
            let mut sign = S::one();
            for (bit, v) in chosen.iter().enumerate() {
                if mask >> bit & 1 == 1 {
                    for (qc, &vc) in q.iter_mut().zip(v.iter()) {
                        *qc -= vc;
                    }
                    sign = -sign;
                }
            }
            if !region.contains(&q) {
                continue 'samples;
            }
            let cv = coeff_vec(&q);
            for (a, c) in acc.iter_mut().zip(cv) {
                *a += sign * c;
            }
            any = true;
        }
        if any {
            let value = vec_norm(&acc) / denom;
            if value > *best {
                *best = value;
            }
        }
    }
}

/// Estimate the B^r data of a form over a box. `‖ω‖_0` uses a grid of spacing
/// `h`; higher levels take suprema over the supplied translation set; the
/// primed chain is replaced by `‖dω‖` levels.
pub fn estimate_form_norm<S: Scalar>(
    w: &DifferentialForm<S>,
    r: usize,
    region: &AxisBox<S>,
    h: S,
    translations: &[Vec<S>],
) -> Result<FormNormReport<S>> {
    if h <= S::zero() {
        return Err(ChainletError::InvalidInput("grid spacing must be positive".into()));
    }
    if r >= 1 && translations.is_empty() {
        return Err(ChainletError::EmptyTranslations { r });
    }
    let widths = region.widths();
    let mut per_axis = widths
        .iter()
        .map(|&wd| ((wd / h).to_f().ceil() as usize + 1).clamp(2, 33))
        .max()
        .unwrap_or(2);
    // keep the total grid size desk-scale in higher dimensions
    while per_axis > 2 && per_axis.pow(region.n() as u32) > 100_000 {
        per_axis -= 1;
    }
    let samples = region.sample_grid(per_axis);

    let mut levels = Vec::with_capacity(r + 1);
    for level in 0..=r {
        levels.push(translation_level(w, level, &samples, translations, region));
    }
    let mut d_levels = Vec::new();
    if r >= 1 {
        let dw = w.d()?;
        for level in 0..r {
            d_levels.push(translation_level(&dw, level, &samples, translations, region));
        }
    }
    let combined = levels
        .iter()
        .chain(d_levels.iter())
        .fold(S::zero(), |acc, &x| acc.max(x));
    Ok(FormNormReport {
        r,
        levels,
        d_levels,
        combined,
        grid_spacing: h,
        translation_count: translations.len(),
        lower_bound_only: r >= 1,
    })
}

/// Exact `‖ω‖_0 ..= ‖ω‖_r` and `‖dω‖` levels for a single monomial form
/// `c·x^a dx^H` of total degree ≤ 2 over a box, derived in closed form:
/// level 0 is the sup of `|c·x^a|` (attained at the max-abs corner), level 1
/// is the Lipschitz constant `sup |∇(c·x^a)|`, level 2 is the spectral norm
/// of the constant Hessian, and all higher levels vanish.
pub fn exact_monomial_norm<S: Scalar>(
    region: &AxisBox<S>,
    exps: &[u32],
    c: S,
    h: &MultiIndex,
    r: usize,
) -> Result<S> {
    let n = region.n();
    let total: u32 = exps.iter().sum();
    if total > 2 {
        return Err(ChainletError::Unsupported(
            "exact norms only for monomials of degree <= 2".into(),
        ));
    }
    let corner = region.max_abs_corner();
    let eval_abs = |e: &[u32]| -> S {
        let mut acc = S::one();
        for (x, &p) in corner.iter().zip(e) {
            for _ in 0..p {
                acc *= x.abs();
            }
        }
        acc
    };

    // gradient entries are monomials again; they share the max-abs corner
    let grad_norm = |e: &[u32], coeff: S| -> S {
        let mut acc = S::zero();
        for i in 0..n {
            if e[i] == 0 {
                continue;
            }
            let mut de = e.to_vec();
            de[i] -= 1;
            let g = coeff * S::from_us(e[i] as usize) * eval_abs(&de);
            acc += g * g;
        }
        acc.sqrt()
    };

    // level seminorms of the scalar coefficient c·x^a
    let coeff_level = |level: usize| -> S {
        match (level, total) {
            (0, _) => c.abs() * eval_abs(exps),
            (1, _) => grad_norm(exps, c),
            (2, 2) => {
                // Hessian norm: 2|c| for x_i², |c| for x_i x_j
                if exps.contains(&2) {
                    c.abs() * S::from_f(2.0)
                } else {
                    c.abs()
                }
            }
            _ => S::zero(),
        }
    };

    let mut best = S::zero();
    for level in 0..=r {
        best = best.max(coeff_level(level));
    }

    if r >= 1 {
        // dω has coefficient ∂_i(c·x^a) on dx^{i∧H} for i ∉ H; its level-0
        // norm is the Euclidean norm of those entries at the shared corner and
        // its level-1 norm is the constant Jacobian norm (degree ≤ 2 input).
        let mut sq0 = S::zero();
        let mut sq1 = S::zero();
        for i in 0..n {
            if exps[i] == 0 || h.contains(i + 1) {
                continue;
            }
            let mut de = exps.to_vec();
            de[i] -= 1;
            let coeff_i = c * S::from_us(exps[i] as usize);
            let v0 = coeff_i.abs() * eval_abs(&de);
            sq0 += v0 * v0;
            let v1 = grad_norm(&de, coeff_i);
            sq1 += v1 * v1;
        }
        best = best.max(sq0.sqrt());
        if r >= 2 {
            // the Jacobian of the dω coefficient vector is constant here; its
            // operator norm is bounded by (and for our dictionary equals up to
            // the single-entry case) the Frobenius norm
            best = best.max(sq1.sqrt());
        }
    }
    Ok(best)
}

/// Exact *upper* bound on `|ω|_r` for a polynomial form whose coefficient
/// monomials all have degree ≤ 2: the triangle inequality over single
/// monomial terms, each evaluated in closed form. Safe wherever a certified
/// upper bound is needed (Fundamental Integral Inequality budgets).
pub fn exact_polyform_norm_upper<S: Scalar>(
    w: &DifferentialForm<S>,
    region: &AxisBox<S>,
    r: usize,
) -> Result<S> {
    let map = w.polynomial_terms().ok_or_else(|| {
        ChainletError::Unsupported("exact norm bounds need a polynomial form".into())
    })?;
    let mut total = S::zero();
    for (h, poly) in map {
        for (exps, &c) in poly.terms() {
            total += exact_monomial_norm(region, exps, c, h, r)?;
        }
    }
    Ok(total)
}
