//! Computable bounds for the r-natural norm
//! `|P|^{♮_r} = inf { Σ ‖D^j‖_j + |C|^{♮_{r−1}} : P = Σ D^j + ∂C }`.
//!
//! The infimum itself is not computed; every answer is a bracket: upper
//! bounds come from explicit decomposition certificates, lower bounds from
//! the dual characterization `sup { ∫_A ω : |ω|_r ≤ 1 }` over a finite form
//! dictionary with exactly-known norms.

use crate::chains::{DifferenceChain, PolyChain};
use crate::elements::ElementChain;
use crate::error::{ChainletError, Result};
use crate::exterior::{KVector, MultiIndex};
use crate::forms::{exact_monomial_norm, DifferentialForm};
use crate::region::AxisBox;
use crate::scalar::{vec_norm, vec_sub, Scalar};

/// Tolerance for certificate reassembly residuals, scaled by chain mass.
pub const CERT_RESIDUAL_TOL: f64 = 1e-8;

/// A decomposition `P = Σ_j D^j + ∂C` with a nested certificate for C.
#[derive(Debug, Clone)]
pub struct DecompositionCert<S> {
    /// Difference chains by order; index j holds order-j cells.
    pub diffs: Vec<DifferenceChain<S>>,
    /// Boundary witness and its own certificate one level down.
    pub witness: Option<(PolyChain<S>, Box<DecompositionCert<S>>)>,
}

impl<S: Scalar> DecompositionCert<S> {
    /// The trivial decomposition `D^0 = P`.
    pub fn trivial(p: &PolyChain<S>) -> Self {
        let cell = crate::chains::DifferenceCell::new(p.clone(), vec![]);
        DecompositionCert {
            diffs: vec![DifferenceChain::new(vec![(S::one(), cell)])],
            witness: None,
        }
    }

    /// Difference chains only, no boundary witness.
    pub fn from_diffs(diffs: Vec<DifferenceChain<S>>) -> Self {
        DecompositionCert {
            diffs,
            witness: None,
        }
    }

    /// Boundary-only decomposition `∂P = ∂(C)` with `C = P`: the transported
    /// certificate behind `|∂P|^{♮_r} ≤ |P|^{♮_{r−1}}`.
    pub fn boundary_of(c: PolyChain<S>, cert_for_c: DecompositionCert<S>) -> Self {
        DecompositionCert {
            diffs: vec![],
            witness: Some((c, Box::new(cert_for_c))),
        }
    }

    /// Reassemble `Σ D^j + ∂C` as a polyhedral chain.
    pub fn reassemble(&self, n: usize, k: usize) -> PolyChain<S> {
        let mut acc = PolyChain::empty(n, k);
        for d in &self.diffs {
            acc = acc.add(&d.expand(n, k));
        }
        if let Some((c, _)) = &self.witness {
            acc = acc.add(&c.boundary());
        }
        acc
    }

    pub fn max_order(&self) -> usize {
        self.diffs
            .iter()
            .filter_map(|d| d.order())
            .max()
            .unwrap_or(0)
    }
}

/// A dictionary form with its exactly-known `|ω|_0 ..= |ω|_R` values.
#[derive(Clone)]
pub struct DictEntry<S> {
    pub id: String,
    pub grade: usize,
    pub form: DifferentialForm<S>,
    norms: Vec<S>,
}

impl<S: Scalar> DictEntry<S> {
    /// `|ω|_r`, saturating at the top precomputed level. For the degree ≤ 2
    /// monomial dictionary the levels are exact and constant from r = 2 on
    /// (higher translation differences of a quadratic vanish), and the
    /// constructors always precompute through level 2, so saturation loses
    /// nothing.
    pub fn norm_at(&self, r: usize) -> S {
        let r = r.min(self.norms.len() - 1);
        self.norms[r]
    }
}

/// A finite dictionary of forms used for dual lower bounds and certificate
/// verification. Entries may span several grades; certificate recursion
/// needs one grade up from the chain it certifies.
#[derive(Clone)]
pub struct FormDictionary<S> {
    pub n: usize,
    entries: Vec<DictEntry<S>>,
}

impl<S: Scalar> FormDictionary<S> {
    /// All grade-k monomial-coefficient forms of total degree ≤ `max_degree`
    /// (capped at 2) over all basis covectors, with exact norms over `region`.
    pub fn monomials(
        n: usize,
        k: usize,
        max_degree: u32,
        region: &AxisBox<S>,
        max_r: usize,
    ) -> Result<Self> {
        let mut dict = FormDictionary { n, entries: vec![] };
        dict.add_monomials(k, max_degree, region, max_r)?;
        Ok(dict)
    }

    /// Monomial forms of every grade `0..=n`.
    pub fn monomials_all_grades(
        n: usize,
        max_degree: u32,
        region: &AxisBox<S>,
        max_r: usize,
    ) -> Result<Self> {
        let mut dict = FormDictionary { n, entries: vec![] };
        for k in 0..=n {
            dict.add_monomials(k, max_degree, region, max_r)?;
        }
        Ok(dict)
    }

    pub fn add_monomials(
        &mut self,
        k: usize,
        max_degree: u32,
        region: &AxisBox<S>,
        max_r: usize,
    ) -> Result<()> {
        let max_degree = max_degree.min(2);
        let levels = max_r.max(2);
        for h in MultiIndex::all(self.n, k) {
            for exps in exponent_tuples(self.n, max_degree) {
                let form = DifferentialForm::monomial(self.n, h.clone(), exps.clone(), S::one())?;
                let norms = (0..=levels)
                    .map(|r| exact_monomial_norm(region, &exps, S::one(), &h, r))
                    .collect::<Result<Vec<S>>>()?;
                let id = format!("x^{:?} dx_{:?}", exps, h.indices());
                self.entries.push(DictEntry {
                    id,
                    grade: k,
                    form,
                    norms,
                });
            }
        }
        Ok(())
    }

    /// Add the constant form aligned with a unit version of `v`; its norm is
    /// 1 at every level, so it certifies `M(Vec(P))` as a lower bound.
    pub fn push_aligned_constant(&mut self, v: &KVector<S>, max_r: usize) {
        let m = v.mass();
        if m == S::zero() {
            return;
        }
        let unit = v.scale(S::one() / m);
        let form = DifferentialForm::constant(self.n, &unit);
        self.entries.push(DictEntry {
            id: "aligned-constant".into(),
            grade: v.grade(),
            form,
            norms: vec![S::one(); max_r + 1],
        });
    }

    pub fn entries(&self) -> &[DictEntry<S>] {
        &self.entries
    }

    /// Entries whose form pairs with grade-k chains.
    pub fn entries_for(&self, k: usize) -> impl Iterator<Item = &DictEntry<S>> {
        self.entries.iter().filter(move |e| e.grade == k)
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

fn exponent_tuples(n: usize, max_total: u32) -> Vec<Vec<u32>> {
    let mut out = vec![vec![0u32; n]];
    for total in 1..=max_total {
        let mut stack = vec![(vec![], total)];
        while let Some((prefix, remaining)) = stack.pop() {
            let pos = prefix.len();
            if pos == n {
                if remaining == 0 {
                    out.push(prefix);
                }
                continue;
            }
            for e in 0..=remaining {
                let mut next = prefix.clone();
                next.push(e);
                stack.push((next, remaining - e));
            }
        }
    }
    out
}

/// Either kind of chain the dual bound accepts.
pub enum ChainRef<'a, S> {
    Poly(&'a PolyChain<S>),
    Element(&'a ElementChain<S>),
}

impl<'a, S: Scalar> ChainRef<'a, S> {
    pub fn integrate(&self, w: &DifferentialForm<S>) -> Result<S> {
        match self {
            ChainRef::Poly(p) => p.integrate(w),
            ChainRef::Element(e) => e.integrate(w),
        }
    }
}

/// Upper bound on `|P|^{♮_r}` from a certificate. Verifies that the
/// certificate reassembles P (integration equality against the dictionary),
/// then sums difference norms plus the witness's (r−1)-level bound. Level 0
/// is the mass.
pub fn natural_upper<S: Scalar>(
    p: &PolyChain<S>,
    cert: &DecompositionCert<S>,
    r: usize,
    dict: &FormDictionary<S>,
) -> Result<S> {
    if r == 0 {
        return Ok(p.mass());
    }
    if cert.max_order() > r {
        return Err(ChainletError::OrderAboveLevel {
            order: cert.max_order(),
            r,
        });
    }
    let rebuilt = cert.reassemble(p.n(), p.dim());
    let defect = rebuilt.sub(p);
    if !defect.is_empty() {
        let scale = S::one() + p.mass();
        let tol = S::from_f(CERT_RESIDUAL_TOL) * scale;
        let mut checked = 0usize;
        for entry in dict.entries_for(p.dim()) {
            let residual = defect.integrate(&entry.form)?.abs();
            if residual > tol {
                return Err(ChainletError::CertMismatch {
                    residual: residual.to_f(),
                    form: entry.id.clone(),
                });
            }
            checked += 1;
        }
        if checked == 0 {
            return Err(ChainletError::InvalidInput(format!(
                "dictionary has no grade-{} forms to verify the certificate",
                p.dim()
            )));
        }
    }
    let mut total = cert
        .diffs
        .iter()
        .fold(S::zero(), |acc, d| acc + d.norm());
    if let Some((c, nested)) = &cert.witness {
        total += natural_upper(c, nested, r - 1, dict)?;
    }
    Ok(total)
}

/// Certified dual lower bound `max |∫_A ω| / |ω|_r` over the dictionary,
/// returning the witnessing form id.
pub fn natural_lower<S: Scalar>(
    a: &ChainRef<S>,
    r: usize,
    dict: &FormDictionary<S>,
) -> Result<(S, String)> {
    let mut best = S::zero();
    let mut witness = String::from("none");
    let grade = match a {
        ChainRef::Poly(p) => p.dim(),
        ChainRef::Element(e) => e.grade(),
    };
    for entry in dict.entries_for(grade) {
        let norm = entry.norm_at(r);
        if norm <= S::zero() {
            continue;
        }
        let val = a.integrate(&entry.form)?.abs() / norm;
        if val > best {
            best = val;
            witness = entry.id.clone();
        }
    }
    Ok((best, witness))
}

/// A `(lower, upper)` bracket for `|·|^{♮_r}` with witnesses.
#[derive(Debug, Clone)]
pub struct NormBracket<S> {
    pub r: usize,
    pub lower: S,
    pub upper: S,
    pub lower_witness: String,
    pub upper_witness: String,
}

impl<S: Scalar> NormBracket<S> {
    pub fn is_consistent(&self) -> bool {
        self.lower <= self.upper + S::from_f(1e-12)
            && self.lower.is_finite()
            && self.upper.is_finite()
    }
}

/// Bracket a polyhedral chain's r-natural norm with an explicit certificate.
pub fn bracket_poly<S: Scalar>(
    p: &PolyChain<S>,
    cert: &DecompositionCert<S>,
    r: usize,
    dict: &FormDictionary<S>,
    upper_witness: &str,
) -> Result<NormBracket<S>> {
    let upper = natural_upper(p, cert, r, dict)?;
    let (lower, lower_witness) = natural_lower(&ChainRef::Poly(p), r, dict)?;
    Ok(NormBracket {
        r,
        lower,
        upper,
        lower_witness,
        upper_witness: upper_witness.to_string(),
    })
}

/// Upper bound on the r-natural norm of an element chain by the equivalent
/// discrete norm: each order-s term contributes its own difference norm
/// `|a| M(α) Π |u_i|`, after a greedy pass that pairs opposite same-direction
/// terms at nearby points into one-higher-order differences whenever that
/// lowers the bound.
pub fn element_norm_upper<S: Scalar>(e: &ElementChain<S>, r: usize) -> Result<S> {
    if e.max_order() > r {
        return Err(ChainletError::OrderAboveLevel {
            order: e.max_order(),
            r,
        });
    }
    // working entries: (point, dvecs, unit direction, magnitude, order)
    struct Entry<S> {
        point: Vec<S>,
        dvec_norm_product: S,
        dvecs_key: Vec<Vec<S>>,
        direction: KVector<S>,
        magnitude: S,
        order: usize,
    }
    let mut entries: Vec<Entry<S>> = e
        .terms()
        .iter()
        .map(|t| {
            let kv = t.kvec.scale(t.coeff);
            let mag = kv.mass();
            Entry {
                point: t.point.clone(),
                dvec_norm_product: t
                    .dvecs
                    .iter()
                    .fold(S::one(), |acc, u| acc * vec_norm(u)),
                dvecs_key: t.dvecs.clone(),
                direction: kv.scale(S::one() / mag),
                magnitude: mag,
                order: t.order(),
            }
        })
        .collect();

    let mut total = S::zero();
    let tol = S::from_f(1e-12);
    // one pairing pass per order level
    for s in 0..r {
        let mut i = 0;
        while i < entries.len() {
            if entries[i].order != s || entries[i].magnitude <= tol {
                i += 1;
                continue;
            }
            // nearest opposite-direction partner with identical dvecs
            let mut best: Option<(usize, S)> = None;
            for j in 0..entries.len() {
                if j == i || entries[j].order != s || entries[j].magnitude <= tol {
                    continue;
                }
                if entries[j].dvecs_key != entries[i].dvecs_key {
                    continue;
                }
                let opposite = entries[i]
                    .direction
                    .add(&entries[j].direction)
                    .mass()
                    < S::from_f(1e-9);
                if !opposite {
                    continue;
                }
                let dist = vec_norm(&vec_sub(&entries[j].point, &entries[i].point));
                if best.map(|(_, d)| dist < d).unwrap_or(true) {
                    best = Some((j, dist));
                }
            }
            if let Some((j, dist)) = best {
                // pairing helps iff |p−q| < 2 (replaces a mass of 2m by m·|p−q|)
                if dist < S::from_f(2.0) && s < r && dist > S::zero() {
                    let m = entries[i].magnitude.min(entries[j].magnitude);
                    let base = entries[i].dvec_norm_product;
                    total += m * base * dist;
                    entries[i].magnitude -= m;
                    entries[j].magnitude -= m;
                }
            }
            i += 1;
        }
    }
    for entry in &entries {
        total += entry.magnitude * entry.dvec_norm_product;
    }
    Ok(total)
}

/// One row of a Fundamental Integral Inequality check:
/// `|∫_P ω| ≤ upper(P, r) · |ω|_r`.
#[derive(Debug, Clone)]
pub struct InequalityReport<S> {
    pub form_id: String,
    pub integral: S,
    pub upper: S,
    pub form_norm: S,
    pub holds: bool,
}

/// Verify the Fundamental Integral Inequality for one chain and every
/// dictionary form; a violation means a bug, since the bound is a theorem.
pub fn check_integral_inequality<S: Scalar>(
    p: &PolyChain<S>,
    cert: &DecompositionCert<S>,
    r: usize,
    dict: &FormDictionary<S>,
) -> Result<Vec<InequalityReport<S>>> {
    let upper = natural_upper(p, cert, r, dict)?;
    let slack = S::from_f(1e-9);
    dict.entries_for(p.dim())
        .map(|entry| {
            let integral = p.integrate(&entry.form)?;
            let form_norm = entry.norm_at(r);
            let holds = integral.abs() <= upper * form_norm + slack;
            Ok(InequalityReport {
                form_id: entry.id.clone(),
                integral,
                upper,
                form_norm,
                holds,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chains::{DifferenceCell, Simplex};
    use crate::elements::ElementChain;

    fn unit_square() -> PolyChain<f64> {
        PolyChain::axis_cube(&[0.0, 0.0], &MultiIndex::full(2), 1.0).unwrap()
    }

    fn dict2(k: usize) -> FormDictionary<f64> {
        FormDictionary::monomials(2, k, 2, &AxisBox::centered(2, 2.0), 3).unwrap()
    }

    #[test]
    fn trivial_cert_gives_mass() {
        let p = unit_square();
        let cert = DecompositionCert::trivial(&p);
        let dict = dict2(2);
        let up = natural_upper(&p, &cert, 1, &dict).unwrap();
        assert!((up - 1.0).abs() < 1e-12);
        assert!((natural_upper(&p, &cert, 0, &dict).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn cert_mismatch_detected() {
        let p = unit_square();
        let wrong = unit_square().translate(&[0.5, 0.0]);
        let cert = DecompositionCert::trivial(&wrong);
        let dict = dict2(2);
        assert!(matches!(
            natural_upper(&p, &cert, 1, &dict),
            Err(ChainletError::CertMismatch { .. })
        ));
    }

    #[test]
    fn lower_bound_on_unit_segment() {
        // ∫ dx over the unit segment is 1 and |dx|_1 = 1
        let seg = PolyChain::from_simplex(
            Simplex::positively_oriented(vec![vec![0.0, 0.0], vec![1.0, 0.0]]).unwrap(),
        );
        let dict = dict2(1);
        let (lower, witness) = natural_lower(&ChainRef::Poly(&seg), 1, &dict).unwrap();
        assert!(lower >= 1.0 - 1e-12, "lower {} via {}", lower, witness);
        // zero chain → 0
        let zero = PolyChain::empty(2, 1);
        let (l0, _) = natural_lower(&ChainRef::Poly(&zero), 1, &dict).unwrap();
        assert_eq!(l0, 0.0);
    }

    #[test]
    fn monopole_pair_brackets_sandwich() {
        // α_p − α_q: upper ≤ |p−q| M(α) by pairing; dual lower never exceeds it
        let p = vec![0.1, 0.2];
        let q = vec![0.4, 0.6];
        let alpha = KVector::<f64>::axis(2, 1);
        let e = ElementChain::monopole(p.clone(), alpha.clone())
            .sub(&ElementChain::monopole(q.clone(), alpha.clone()));
        let up = element_norm_upper(&e, 1).unwrap();
        let dist = 0.5;
        assert!((up - dist).abs() < 1e-12, "upper {}", up);
        let dict = dict2(1);
        let (lower, _) = natural_lower(&ChainRef::Element(&e), 1, &dict).unwrap();
        assert!(lower <= up + 1e-12, "{} vs {}", lower, up);
        assert!(lower > 0.0);
    }

    #[test]
    fn element_norm_examples() {
        // single order-0 element of mass m → m
        let e = ElementChain::monopole(vec![0.0, 0.0], KVector::<f64>::axis(2, 2).scale(3.0));
        assert!((element_norm_upper(&e, 0).unwrap() - 3.0).abs() < 1e-12);
        // dipole ∇_v α_p with unit mass → |v| at r ≥ 1
        let v = [0.3, 0.4];
        let d = ElementChain::monopole(vec![0.0, 0.0], KVector::<f64>::axis(2, 1)).nabla(&v);
        assert!((element_norm_upper(&d, 1).unwrap() - 0.5).abs() < 1e-12);
        assert!(matches!(
            element_norm_upper(&d, 0),
            Err(ChainletError::OrderAboveLevel { .. })
        ));
    }

    #[test]
    fn integral_inequality_on_squares() {
        let p = unit_square();
        let cert = DecompositionCert::trivial(&p);
        let dict = dict2(2);
        for r in 0..=2 {
            let reports = check_integral_inequality(&p, &cert, r, &dict).unwrap();
            assert!(reports.iter().all(|rep| rep.holds), "r = {}", r);
        }
    }

    #[test]
    fn difference_cell_bound_example() {
        // |∫_{D¹} ω| ≤ ‖D¹‖₁ ‖ω‖₁ for ω = x dy on a translated square pair
        let square = unit_square();
        let cell = DifferenceCell::new(square, vec![vec![0.25, 0.0]]);
        let expanded = cell.expand();
        let w = DifferentialForm::monomial(
            2,
            MultiIndex::new(vec![1, 2], 2).unwrap(),
            vec![1, 0],
            1.0,
        )
        .unwrap();
        let region = AxisBox::centered(2, 2.0);
        let wnorm =
            exact_monomial_norm(&region, &[1, 0], 1.0, &MultiIndex::new(vec![1, 2], 2).unwrap(), 1)
                .unwrap();
        let integral = expanded.integrate(&w).unwrap().abs();
        assert!(integral <= cell.norm() * wnorm + 1e-9);
    }
}
