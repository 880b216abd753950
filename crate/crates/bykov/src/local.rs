//! Linearized passages near the two saddle-foci.

use nalgebra::Matrix2;

use crate::error::{Error, Result};
use crate::model::{SaddleParameters, SectionId, SectionPoint};

pub type Mat2 = Matrix2<f64>;

pub(crate) fn expect_section(p: &SectionPoint, expected: SectionId) -> Result<()> {
    if p.section == expected {
        Ok(())
    } else {
        Err(Error::WrongSection { expected, got: p.section })
    }
}

pub(crate) fn check_floor(height: f64, floor: f64) -> Result<()> {
    // NaN heights are rejected as well.
    if height.abs() >= floor {
        Ok(())
    } else {
        Err(Error::OnStableManifold { height, floor })
    }
}

/// Passage near `v`: `(x, y) -> (r, φ) = (|y|^δv, x - ln|y| / E_v)`.
pub fn phi_v(p: &SectionPoint, saddles: &SaddleParameters, y_floor: f64) -> Result<SectionPoint> {
    expect_section(p, SectionId::InV)?;
    check_floor(p.b, y_floor)?;
    let y = p.b.abs();
    let r = y.powf(saddles.delta_v());
    let phi = p.a - y.ln() / saddles.e_v;
    Ok(SectionPoint::disc(SectionId::OutV, r, phi, p.sheet))
}

/// Passage near `w`: `(r, φ) -> (x, y) = (φ - ln r / E_w, ±r^δw)`.
pub fn phi_w(p: &SectionPoint, saddles: &SaddleParameters, y_floor: f64) -> Result<SectionPoint> {
    expect_section(p, SectionId::InW)?;
    check_floor(p.b, y_floor)?;
    let r = p.b;
    let x = p.a - r.ln() / saddles.e_w;
    let y = p.sheet.sign() * r.powf(saddles.delta_w());
    Ok(SectionPoint { section: SectionId::OutW, a: x, b: y, sheet: p.sheet })
}

/// Jacobian of [`phi_v`]; rows `(r, φ)`, columns `(x, y)`.
pub fn d_phi_v(p: &SectionPoint, saddles: &SaddleParameters, y_floor: f64) -> Result<Mat2> {
    expect_section(p, SectionId::InV)?;
    check_floor(p.b, y_floor)?;
    let y = p.b;
    let dv = saddles.delta_v();
    Ok(Mat2::new(0.0, dv * y.abs().powf(dv - 1.0) * y.signum(), 1.0, -1.0 / (saddles.e_v * y)))
}

/// Jacobian of [`phi_w`]; rows `(x, y)`, columns `(r, φ)`.
pub fn d_phi_w(p: &SectionPoint, saddles: &SaddleParameters, y_floor: f64) -> Result<Mat2> {
    expect_section(p, SectionId::InW)?;
    check_floor(p.b, y_floor)?;
    let r = p.b;
    let dw = saddles.delta_w();
    Ok(Mat2::new(-1.0 / (saddles.e_w * r), 1.0, p.sheet.sign() * dw * r.powf(dw - 1.0), 0.0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::Sheet;
    use approx::assert_relative_eq;

    fn sp() -> SaddleParameters {
        SaddleParameters::default()
    }

    #[test]
    fn phi_v_closed_form() {
        let q = phi_v(&SectionPoint::in_v(1.0, (-2.0f64).exp()), &sp(), 1e-14).unwrap();
        assert_relative_eq!(q.b, (-4.0f64).exp(), max_relative = 1e-15);
        assert_relative_eq!(q.a, 3.0, max_relative = 1e-15);
        let q = phi_v(&SectionPoint::in_v(0.0, 1.0), &sp(), 1e-14).unwrap();
        assert_eq!((q.b, q.a), (1.0, 0.0));
    }

    #[test]
    fn phi_v_lower_sheet_mirrors_upper() {
        let up = phi_v(&SectionPoint::in_v(0.0, (-2.0f64).exp()), &sp(), 1e-14).unwrap();
        let lo = phi_v(&SectionPoint::in_v(0.0, -(-2.0f64).exp()), &sp(), 1e-14).unwrap();
        assert_eq!(lo.sheet, Sheet::Lower);
        assert_eq!((lo.a, lo.b), (up.a, up.b));
        assert_relative_eq!(lo.a, 2.0, max_relative = 1e-15);
    }

    #[test]
    fn phi_w_closed_form() {
        let f = |r: f64, phi: f64| {
            phi_w(&SectionPoint::disc(SectionId::InW, r, phi, Sheet::Upper), &sp(), 1e-14).unwrap()
        };
        let q = f((-2.0f64).exp(), 1.0);
        assert_relative_eq!(q.a, 3.0, max_relative = 1e-15);
        assert_relative_eq!(q.b, (-4.0f64).exp(), max_relative = 1e-15);
        let q = f(1.0, 0.7);
        assert_eq!((q.a, q.b), (0.7, 1.0));
        let q = f((-4.0f64).exp(), 0.0);
        assert_relative_eq!(q.a, 4.0, max_relative = 1e-15);
        assert_relative_eq!(q.b, (-8.0f64).exp(), max_relative = 1e-15);
    }

    #[test]
    fn floor_and_section_errors() {
        let e = phi_v(&SectionPoint::in_v(0.0, 1e-15), &sp(), 1e-14).unwrap_err();
        assert!(matches!(e, Error::OnStableManifold { .. }));
        let e = phi_v(&SectionPoint::out_w(0.0, 0.5), &sp(), 1e-14).unwrap_err();
        assert!(matches!(e, Error::WrongSection { .. }));
        let p = SectionPoint::disc(SectionId::InW, 0.0, 1.0, Sheet::Upper);
        assert!(phi_w(&p, &sp(), 1e-14).is_err());
    }

    #[test]
    fn d_phi_v_entries() {
        let j = d_phi_v(&SectionPoint::in_v(0.3, 0.1), &sp(), 1e-14).unwrap();
        assert_relative_eq!(j[(0, 1)], 0.2, max_relative = 1e-15);
        assert_relative_eq!(j[(1, 1)], -10.0, max_relative = 1e-15);
        let jm = d_phi_v(&SectionPoint::in_v(0.3, -0.1), &sp(), 1e-14).unwrap();
        assert_eq!(jm[(0, 1)], -j[(0, 1)]);
    }

    fn fd_column_error(analytic: Mat2, f: impl Fn(f64, f64) -> (f64, f64), a: f64, b: f64) -> f64 {
        let ha = 1e-6;
        let hb = 1e-6 * b.abs();
        let (pa, qa) = f(a + ha, b);
        let (ma, na) = f(a - ha, b);
        let (pb, qb) = f(a, b + hb);
        let (mb, nb) = f(a, b - hb);
        let fd = Mat2::new((pa - ma) / (2.0 * ha), (pb - mb) / (2.0 * hb), (qa - na) / (2.0 * ha), (qb - nb) / (2.0 * hb));
        let mut worst: f64 = 0.0;
        for c in 0..2 {
            let col = analytic.column(c);
            worst = worst.max((fd.column(c) - col).norm() / col.norm());
        }
        worst
    }

    #[test]
    fn jacobians_match_central_differences() {
        let s = sp();
        let jv = d_phi_v(&SectionPoint::in_v(0.3, 0.05), &s, 1e-14).unwrap();
        let err = fd_column_error(
            jv,
            |x, y| {
                let q = phi_v(&SectionPoint::in_v(x, y), &s, 1e-14).unwrap();
                (q.b, q.a)
            },
            0.3,
            0.05,
        );
        assert!(err < 1e-6, "{err}");
        let p = SectionPoint::disc(SectionId::InW, 0.05, 0.3, Sheet::Lower);
        let jw = d_phi_w(&p, &s, 1e-14).unwrap();
        let err = fd_column_error(
            jw,
            |r, phi| {
                let q = phi_w(&SectionPoint::disc(SectionId::InW, r, phi, Sheet::Lower), &s, 1e-14).unwrap();
                (q.a, q.b)
            },
            0.05,
            0.3,
        );
        assert!(err < 1e-6, "{err}");
    }

    proptest::proptest! {
        #[test]
        fn radius_law(y in 1e-6f64..0.5) {
            let q = phi_v(&SectionPoint::in_v(0.0, y), &sp(), 1e-14).unwrap();
            proptest::prop_assert!((q.b.ln() / y.ln() - 2.0).abs() < 1e-12);
        }

        #[test]
        fn equivariance(x in -10.0f64..10.0, y in 1e-8f64..1.0) {
            let up = phi_v(&SectionPoint::in_v(x, y), &sp(), 1e-14).unwrap();
            let lo = phi_v(&SectionPoint::in_v(x, -y), &sp(), 1e-14).unwrap();
            proptest::prop_assert_eq!((up.a, up.b), (lo.a, lo.b));
            proptest::prop_assert_eq!(lo.sheet, up.sheet.flip());
        }

        #[test]
        fn monotone_phase_along_vertical(x in -3.0f64..3.0, y1 in 1e-8f64..0.9, f in 0.01f64..0.99) {
            let y2 = y1 * f;
            let a = phi_v(&SectionPoint::in_v(x, y1), &sp(), 1e-14).unwrap();
            let b = phi_v(&SectionPoint::in_v(x, y2), &sp(), 1e-14).unwrap();
            proptest::prop_assert!(b.a > a.a);
            proptest::prop_assert_eq!(a.a, x - y1.ln());
        }
    }
}
