//! Algebraic identities of the quaternion core, checked against an
//! independent multiplication table oracle and as proptest invariants.

use proptest::prelude::*;
use wahba_core::{conjugate_by, is_similar, quat_sqrt, Quaternion, SqrtResult, DEFAULT_TOL};

/// Product via bilinear expansion over the basis {1, i, j, k}.
fn table_product(a: Quaternion, b: Quaternion) -> Quaternion {
    // TABLE[r][c] = (sign, index) of e_r e_c
    const TABLE: [[(f64, usize); 4]; 4] = [
        [(1.0, 0), (1.0, 1), (1.0, 2), (1.0, 3)],
        [(1.0, 1), (-1.0, 0), (1.0, 3), (-1.0, 2)],
        [(1.0, 2), (-1.0, 3), (-1.0, 0), (1.0, 1)],
        [(1.0, 3), (1.0, 2), (-1.0, 1), (-1.0, 0)],
    ];
    let (ac, bc) = (a.to_array(), b.to_array());
    let mut out = [0.0; 4];
    for r in 0..4 {
        for c in 0..4 {
            let (s, k) = TABLE[r][c];
            out[k] += s * ac[r] * bc[c];
        }
    }
    Quaternion::from_array(out)
}

fn quat() -> impl Strategy<Value = Quaternion> {
    prop::array::uniform4(-10.0f64..10.0).prop_map(Quaternion::from_array)
}

fn pure() -> impl Strategy<Value = Quaternion> {
    prop::array::uniform3(-10.0f64..10.0).prop_map(Quaternion::pure)
}

fn nonzero_quat() -> impl Strategy<Value = Quaternion> {
    quat().prop_filter("nonzero", |q| q.norm() > 1e-3)
}

#[test]
fn worked_products_match_table() {
    let one_i = Quaternion::new(1.0, 1.0, 0.0, 0.0);
    let one_j = Quaternion::new(1.0, 0.0, 1.0, 0.0);
    assert_eq!(table_product(one_i, one_j), Quaternion::new(1.0, 1.0, 1.0, 1.0));
    assert_eq!(one_i * one_j, table_product(one_i, one_j));
    // q⁻¹ i q and q⁻¹ j q for q = (1+i+j+k)/2
    let q = Quaternion::new(0.5, 0.5, 0.5, 0.5);
    let qi = Quaternion::new(0.5, -0.5, -0.5, -0.5);
    assert_eq!(table_product(table_product(qi, Quaternion::I), q), Quaternion::K);
    assert_eq!(conjugate_by(q, Quaternion::I).unwrap(), Quaternion::K);
    assert_eq!(conjugate_by(q, Quaternion::J).unwrap(), Quaternion::I);
}

proptest! {
    #[test]
    fn product_matches_table(a in quat(), b in quat()) {
        let d = a * b - table_product(a, b);
        prop_assert!(d.norm() <= 1e-12 * (1.0 + a.norm() * b.norm()));
    }

    #[test]
    fn modulus_is_multiplicative(a in quat(), b in quat()) {
        let lhs = (a * b).norm();
        let rhs = a.norm() * b.norm();
        prop_assert!((lhs - rhs).abs() <= 1e-14 * rhs.max(f64::MIN_POSITIVE));
    }

    #[test]
    fn scalar_part_commutes(a in quat(), b in quat()) {
        prop_assert!(((a * b).w - (b * a).w).abs() <= 1e-13 * (1.0 + a.norm() * b.norm()));
    }

    #[test]
    fn norm_of_sum(a in quat(), b in quat()) {
        let cross = (a * b.conj()).w;
        let plus = (a + b).norm_sqr() - (a.norm_sqr() + 2.0 * cross + b.norm_sqr());
        let minus = (a - b).norm_sqr() - (a.norm_sqr() - 2.0 * cross + b.norm_sqr());
        let s = 1.0 + (a.norm() + b.norm()).powi(2);
        prop_assert!(plus.abs() <= 1e-13 * s && minus.abs() <= 1e-13 * s);
    }

    #[test]
    fn cross_product_anticommutes(a in pure(), b in pure()) {
        let c = (a * b).im();
        let anti = a * c + c * a;
        prop_assert!(anti.norm() <= 1e-12 * (1.0 + a.norm() * c.norm()));
    }

    #[test]
    fn pure_identities(a in pure(), b in pure()) {
        prop_assert!((a * a - Quaternion::real(-a.norm_sqr())).norm() <= 1e-13 * (1.0 + a.norm_sqr()));
        let sym = a * b + b * a - Quaternion::real(2.0 * (a * b).w);
        prop_assert!(sym.norm() <= 1e-12 * (1.0 + a.norm() * b.norm()));
    }

    #[test]
    fn inverse_is_two_sided(a in nonzero_quat()) {
        let inv = a.inverse().unwrap();
        prop_assert!((a * inv - Quaternion::ONE).norm() <= 1e-12);
        prop_assert!((inv * a - Quaternion::ONE).norm() <= 1e-12);
    }

    #[test]
    fn conjugation_preserves_scalar_and_modulus(q in nonzero_quat(), a in quat()) {
        let c = conjugate_by(q, a).unwrap();
        prop_assert!((c.w - a.w).abs() <= 1e-12 * (1.0 + a.norm()));
        prop_assert!((c.norm() - a.norm()).abs() <= 1e-12 * (1.0 + a.norm()));
    }

    #[test]
    fn similarity_is_conjugation_invariant(q in nonzero_quat(), a in quat().prop_filter("nonreal", |a| a.im_norm() > 1e-2)) {
        let b = conjugate_by(q, a).unwrap();
        prop_assert!(is_similar(a, b, DEFAULT_TOL).unwrap().verdict);
    }

    #[test]
    fn sqrt_round_trip(a in nonzero_quat()) {
        match quat_sqrt(a).unwrap() {
            SqrtResult::Roots { root, .. } => {
                for r in [root, -root] {
                    prop_assert!((r * r - a).norm() <= 1e-12 * a.norm());
                }
                prop_assert!(root.w >= 0.0);
            }
            SqrtResult::NegativeReal { .. } => prop_assert!(a.im_norm() == 0.0),
        }
    }

    #[test]
    fn negative_real_family_members(w in -100.0f64..-1e-3, d in pure().prop_filter("nonzero", |d| d.norm() > 1e-3)) {
        let a = Quaternion::real(w);
        let r = quat_sqrt(a).unwrap().member(d).unwrap();
        prop_assert!((r * r - a).norm() <= 1e-12 * a.norm());
    }

    #[test]
    fn near_branch_roots_stay_exact(w in -100.0f64..-1e-3, v in prop::array::uniform3(-1.0f64..1.0), e in -15i32..-10) {
        let im = Quaternion::pure(v) * (w.abs() * 10f64.powi(e));
        let a = Quaternion::real(w) + im;
        prop_assume!(im.norm() > 0.0);
        let r = quat_sqrt(a).unwrap();
        prop_assert!(r.near_branch_warning());
        let root = r.principal().unwrap();
        prop_assert!((root * root - a).norm() <= 1e-12 * a.norm());
    }
}
