//! Koch snowflake geometry: polygon generations, the closed-form area
//! recurrence, dyadic quantization of the interior, and exact integration
//! over the region via a signed fan triangulation.

use chainlet_core::elements::ElementTerm;
use chainlet_core::exterior::KVector;
use chainlet_core::{DifferentialForm, ElementChain, PolyChain, Result, Simplex};

/// Counterclockwise snowflake polygon at generation g, grown from the unit
/// equilateral triangle by replacing each edge with four, bump outward.
pub fn koch_polygon(generation: u32) -> Vec<[f64; 2]> {
    let mut poly = vec![
        [0.0, 0.0],
        [1.0, 0.0],
        [0.5, 3.0f64.sqrt() / 2.0],
    ];
    let bump = 3.0f64.sqrt() / 6.0;
    for _ in 0..generation {
        let mut next = Vec::with_capacity(poly.len() * 4);
        for i in 0..poly.len() {
            let a = poly[i];
            let b = poly[(i + 1) % poly.len()];
            let d = [b[0] - a[0], b[1] - a[1]];
            // outward of a ccw polygon is to the right of the edge
            let out = [d[1], -d[0]];
            next.push(a);
            next.push([a[0] + d[0] / 3.0, a[1] + d[1] / 3.0]);
            next.push([
                a[0] + d[0] / 2.0 + out[0] * bump,
                a[1] + d[1] / 2.0 + out[1] * bump,
            ]);
            next.push([a[0] + 2.0 * d[0] / 3.0, a[1] + 2.0 * d[1] / 3.0]);
        }
        poly = next;
    }
    poly
}

/// Shoelace area (positive for ccw polygons).
pub fn polygon_area(poly: &[[f64; 2]]) -> f64 {
    let mut twice = 0.0;
    for i in 0..poly.len() {
        let a = poly[i];
        let b = poly[(i + 1) % poly.len()];
        twice += a[0] * b[1] - b[0] * a[1];
    }
    twice / 2.0
}

/// Closed-form area of generation g:
/// `A_g = A_0 (1 + (1/3) Σ_{i<g} (4/9)^i)`, tending to `(8/5) A_0`.
pub fn koch_area_closed_form(generation: u32) -> f64 {
    let a0 = 3.0f64.sqrt() / 4.0;
    let mut sum = 0.0;
    for i in 0..generation {
        sum += (4.0f64 / 9.0).powi(i as i32);
    }
    a0 * (1.0 + sum / 3.0)
}

/// Crossing-number point-in-polygon test.
pub fn point_in_polygon(p: [f64; 2], poly: &[[f64; 2]]) -> bool {
    let mut inside = false;
    for i in 0..poly.len() {
        let a = poly[i];
        let b = poly[(i + 1) % poly.len()];
        if (a[1] > p[1]) != (b[1] > p[1]) {
            let x = a[0] + (p[1] - a[1]) / (b[1] - a[1]) * (b[0] - a[0]);
            if p[0] < x {
                inside = !inside;
            }
        }
    }
    inside
}

/// Quantize the polygon interior at dyadic level j: one area element per
/// lattice cell of edge `2^{-j}` whose midpoint lies inside.
pub fn quantize_interior(poly: &[[f64; 2]], level: u32) -> Result<ElementChain> {
    let h = 0.5f64.powi(level as i32);
    let (mut lo, mut hi) = ([f64::INFINITY; 2], [f64::NEG_INFINITY; 2]);
    for v in poly {
        for i in 0..2 {
            lo[i] = lo[i].min(v[i]);
            hi[i] = hi[i].max(v[i]);
        }
    }
    let cell_lo = [(lo[0] / h).floor() as i64, (lo[1] / h).floor() as i64];
    let cell_hi = [(hi[0] / h).ceil() as i64, (hi[1] / h).ceil() as i64];
    let kvec = KVector::<f64>::vol(2).scale(h * h);
    let mut terms = Vec::new();
    for cx in cell_lo[0]..=cell_hi[0] {
        for cy in cell_lo[1]..=cell_hi[1] {
            let mid = [(cx as f64 + 0.5) * h, (cy as f64 + 0.5) * h];
            if point_in_polygon(mid, poly) {
                terms.push(ElementTerm {
                    coeff: 1.0,
                    point: mid.to_vec(),
                    kvec: kvec.clone(),
                    dvecs: vec![],
                });
            }
        }
    }
    ElementChain::new(2, 2, terms)
}

/// The polygon interior as a signed fan of triangles from the centroid;
/// overlapping fans cancel, so integrals of 2-forms over it equal integrals
/// over the region exactly.
pub fn polygon_fan_chain(poly: &[[f64; 2]]) -> Result<PolyChain> {
    let m = poly.len() as f64;
    let centroid = poly.iter().fold([0.0, 0.0], |acc, v| {
        [acc[0] + v[0] / m, acc[1] + v[1] / m]
    });
    let mut terms = Vec::with_capacity(poly.len());
    for i in 0..poly.len() {
        let a = poly[i];
        let b = poly[(i + 1) % poly.len()];
        let tri = Simplex::positively_oriented(vec![
            centroid.to_vec(),
            a.to_vec(),
            b.to_vec(),
        ])?;
        terms.push((1.0, tri));
    }
    PolyChain::new(2, 2, terms)
}

/// Exact integral of a polynomial 2-form over the polygon interior.
pub fn integrate_over_polygon(poly: &[[f64; 2]], w: &DifferentialForm) -> Result<f64> {
    polygon_fan_chain(poly)?.integrate(w)
}

#[cfg(test)]
mod tests {
    use super::*;
    use chainlet_core::exterior::MultiIndex;

    #[test]
    fn generation_zero_is_unit_triangle() {
        let p = koch_polygon(0);
        assert_eq!(p.len(), 3);
        assert!((polygon_area(&p) - 3.0f64.sqrt() / 4.0).abs() < 1e-15);
    }

    #[test]
    fn edge_count_quadruples() {
        for g in 0..4 {
            assert_eq!(koch_polygon(g).len(), 3 * 4usize.pow(g));
        }
    }

    #[test]
    fn shoelace_matches_closed_form() {
        for g in 0..=5 {
            let poly = koch_polygon(g);
            let got = polygon_area(&poly);
            let expect = koch_area_closed_form(g);
            assert!((got - expect).abs() < 1e-12, "g={}: {} vs {}", g, got, expect);
        }
    }

    #[test]
    fn fan_chain_integrates_area_exactly() {
        for g in 0..=3 {
            let poly = koch_polygon(g);
            let vol = DifferentialForm::constant(2, &KVector::<f64>::vol(2));
            let got = integrate_over_polygon(&poly, &vol).unwrap();
            assert!((got - polygon_area(&poly)).abs() < 1e-12);
        }
    }

    #[test]
    fn quantized_area_converges() {
        let poly = koch_polygon(2);
        let vol = DifferentialForm::constant(2, &KVector::<f64>::vol(2));
        let exact = polygon_area(&poly);
        let mut prev = f64::INFINITY;
        for j in 2..=6 {
            let e = quantize_interior(&poly, j).unwrap();
            let got = e.integrate(&vol).unwrap();
            let err = (got - exact).abs();
            assert!(err < prev.max(1e-4), "j={}: {} vs {}", j, err, prev);
            prev = err;
        }
        assert!(prev < 2e-2);
    }

    #[test]
    fn bump_points_outward() {
        // generation 1 area exceeds generation 0 area
        assert!(koch_area_closed_form(1) > koch_area_closed_form(0));
        let p1 = koch_polygon(1);
        assert!((polygon_area(&p1) - koch_area_closed_form(1)).abs() < 1e-12);
        let _ = MultiIndex::full(2);
    }
}
