//! Transitions between the neighbourhoods of the two saddles.

use crate::error::{Error, Result};
use crate::local::{expect_section, Mat2};
use crate::model::{SectionId, SectionPoint, Sheet, UnfoldingModel};

/// `Out(v) -> In(w)`: radial scaling by `gain` (identity for `gain = 1`),
/// angle and sheet kept.
pub fn psi_vw(p: &SectionPoint, gain: f64) -> Result<SectionPoint> {
    expect_section(p, SectionId::OutV)?;
    if !(gain > 0.0) {
        return Err(Error::InvalidInput(format!("psi_vw gain {gain} must be positive")));
    }
    Ok(SectionPoint::disc(SectionId::InW, gain * p.b, p.a, p.sheet))
}

/// `Out(w) -> In(v)`: rotation by `Δ` and the shear `y -> y - g(x)`.
///
/// The lower sheet uses the mirrored curve `-g`, so the map commutes with
/// `y -> -y`. The lift of the angle is kept.
pub fn psi_wv(p: &SectionPoint, model: &UnfoldingModel) -> Result<SectionPoint> {
    expect_section(p, SectionId::OutW)?;
    let y = p.b - p.sheet.sign() * model.g(p.a);
    Ok(SectionPoint {
        section: SectionId::InV,
        a: p.a + model.delta_offset,
        b: y,
        sheet: Sheet::of(y, p.sheet),
    })
}

pub fn d_psi_wv(p: &SectionPoint, model: &UnfoldingModel) -> Mat2 {
    Mat2::new(1.0, 0.0, -p.sheet.sign() * model.g_prime(p.a), 1.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;
    use std::f64::consts::{FRAC_PI_2, PI, TAU};

    fn m() -> UnfoldingModel {
        UnfoldingModel::default()
    }

    #[test]
    fn psi_vw_is_identity_at_unit_gain() {
        for sheet in [Sheet::Upper, Sheet::Lower] {
            let p = SectionPoint::disc(SectionId::OutV, 0.2, 1.3, sheet);
            let q = psi_vw(&p, 1.0).unwrap();
            assert_eq!((q.section, q.a, q.b, q.sheet), (SectionId::InW, 1.3, 0.2, sheet));
        }
        let c = psi_vw(&SectionPoint::disc(SectionId::OutV, 0.0, 0.4, Sheet::Upper), 1.0).unwrap();
        assert_eq!(c.b, 0.0);
    }

    #[test]
    fn connection_points_correspond() {
        let q = psi_wv(&SectionPoint::out_w(m().pw1, 0.0), &m()).unwrap();
        assert_relative_eq!(q.a, m().pv1(), epsilon = 1e-15);
        assert_eq!(q.b, 0.0);
        let q = psi_wv(&SectionPoint::out_w(m().pw2(), 0.0), &m()).unwrap();
        assert_relative_eq!(q.a, m().pv2(), epsilon = 1e-15);
        assert!(q.b.abs() < 1e-17);
    }

    #[test]
    fn lobe_interior_goes_below() {
        let q = psi_wv(&SectionPoint::out_w(FRAC_PI_2, 0.005), &m()).unwrap();
        assert_relative_eq!(q.a, 5.0 * PI / 6.0, epsilon = 1e-15);
        assert_relative_eq!(q.b, -0.005, epsilon = 1e-17);
        assert_eq!(q.sheet, Sheet::Lower);
        let q = psi_wv(&SectionPoint::out_w(1.5 * PI, 0.005), &m()).unwrap();
        assert_relative_eq!(q.a, 11.0 * PI / 6.0, epsilon = 1e-15);
        assert_relative_eq!(q.b, 0.015, epsilon = 1e-16);
    }

    #[test]
    fn shear_jacobian() {
        let j = d_psi_wv(&SectionPoint::out_w(m().pw1, 0.3), &m());
        assert_eq!(j.determinant(), 1.0);
        assert_eq!(j[(1, 0)], -0.01);
        let (x, y) = (0.7, 0.02);
        let h = 1e-6;
        let f = |x: f64, y: f64| psi_wv(&SectionPoint::out_w(x, y), &m()).unwrap();
        let col0 = ((f(x + h, y).a - f(x - h, y).a) / (2.0 * h), (f(x + h, y).b - f(x - h, y).b) / (2.0 * h));
        let j = d_psi_wv(&SectionPoint::out_w(x, y), &m());
        assert!((col0.0 - j[(0, 0)]).abs() < 1e-6);
        assert!(((col0.1 - j[(1, 0)]) / j[(1, 0)]).abs() < 1e-6);
    }

    #[test]
    fn g_graph_maps_to_zero_and_zero_maps_to_h() {
        let model = m();
        for i in 0..1000 {
            let x = TAU * i as f64 / 1000.0;
            let on_graph = SectionPoint { sheet: Sheet::Upper, ..SectionPoint::out_w(x, model.g(x)) };
            let q = psi_wv(&on_graph, &model).unwrap();
            assert!(q.b.abs() < 1e-15);
            let q = psi_wv(&SectionPoint::out_w(x, 0.0), &model).unwrap();
            assert!((q.b - model.h(q.a)).abs() < 1e-15);
        }
    }

    #[test]
    fn region_mapping() {
        let model = m();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..10_000 {
            let x = rng.gen_range(0.0..TAU);
            let y = rng.gen_range(0.0..0.02);
            if y == 0.0 {
                continue;
            }
            let q = psi_wv(&SectionPoint::out_w(x, y), &model).unwrap();
            let inside = model.in_positive_lobe(x) && y < model.g(x);
            assert_eq!(q.b < 0.0, inside, "x={x} y={y}");
        }
    }

    #[test]
    fn lower_sheet_mirrors() {
        let model = m();
        let up = psi_wv(&SectionPoint::out_w(1.0, 0.003), &model).unwrap();
        let lo = psi_wv(&SectionPoint::out_w(1.0, -0.003), &model).unwrap();
        assert_eq!(lo.b, -up.b);
        assert_eq!(lo.sheet, up.sheet.flip());
    }
}
