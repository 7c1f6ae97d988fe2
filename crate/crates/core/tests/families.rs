mod common;

use common::{existent, rel};
use mink_core::minkowski::mink_residuals;
use mink_core::verify::random_matrix;
use mink_core::{
    compose_13m_14m, factorization_witnesses, mink_adjoint, mink_inverse_frf, one_four_m, one_three_m,
    sylvester_witnesses, Tolerance,
};

#[test]
fn family_members_share_their_projector() {
    let t = Tolerance::default();
    for i in 0..15 {
        let a = existent(i);
        let (m, n) = a.shape();
        let minv = mink_inverse_frf(&a, &t).unwrap().result;
        let ax = &a * &minv;
        let xa = &minv * &a;
        for j in 0..6 {
            let y = random_matrix(n, m, 100 * i + j, 1.0);
            let z = random_matrix(n, m, 100 * i + j + 50, 1.0);
            let x13 = one_three_m(&a, &y, &t).unwrap();
            let x14 = one_four_m(&a, &z, &t).unwrap();
            let r13 = mink_residuals(&a, &x13);
            let r14 = mink_residuals(&a, &x14);
            assert!(r13[0] < 1e-9 && r13[2] < 1e-9, "instance {i}: {r13:?}");
            assert!(r14[0] < 1e-9 && r14[3] < 1e-9, "instance {i}: {r14:?}");
            assert!(rel(&(&a * &x13), &ax) < 1e-9, "instance {i}");
            assert!(rel(&(&x14 * &a), &xa) < 1e-9, "instance {i}");
            assert!(rel(&compose_13m_14m(&a, &x13, &x14, &t).unwrap(), &minv) < 1e-9, "instance {i}");
        }
    }
}

#[test]
fn compose_rejects_a_wrong_witness() {
    let t = Tolerance::default();
    let a = existent(3);
    let x = mink_inverse_frf(&a, &t).unwrap().result;
    let bad = x.scale(mink_core::C64::new(2.0, 0.0));
    assert!(compose_13m_14m(&a, &bad, &x, &t).is_err());
    assert!(compose_13m_14m(&a, &x, &bad, &t).is_err());
}

#[test]
fn witnesses_satisfy_their_identities() {
    let t = Tolerance::default();
    for i in 0..30 {
        let a = existent(i);
        let minv = mink_inverse_frf(&a, &t).unwrap().result;
        let f = factorization_witnesses(&a, &t).unwrap();
        assert!(f.holds(&t), "instance {i}: {:?}", f.residuals);
        assert!(rel(&mink_adjoint(&(&f.x * &a)), &minv) < 1e-9);
        let s = sylvester_witnesses(&a, &t).unwrap();
        assert!(s.holds(&t), "instance {i}: {:?}", s.residuals);
        assert!(rel(&(&mink_adjoint(&a) * &s.x), &minv) < 1e-9);
    }
}

#[test]
fn witnesses_refuse_without_inverse() {
    let t = Tolerance::default();
    let a = mink_core::fixtures::no_inverse_5x4();
    assert!(factorization_witnesses(&a, &t).is_err());
    assert!(sylvester_witnesses(&a, &t).is_err());
    assert!(one_three_m(&a, &random_matrix(4, 5, 1, 1.0), &t).is_err());
}
