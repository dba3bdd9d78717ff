use std::sync::Arc;

use extfinite::chebyshev::x_matrix;
use extfinite::dynamics::{apply_x, iterate_dimvec, DimVector};
use extfinite::modcat::*;
use extfinite::{Error, ExactMatrix, RatFun};

fn qext() -> AlgebraRef {
    Arc::new(make_qext_algebra())
}

fn c(k: i64) -> ModuleRep {
    make_c_module(&qext(), &RatFun::q_pow(k)).unwrap()
}

fn dv(t: &[i64], s: &[i64]) -> DimVector {
    DimVector::new(t.to_vec(), s.to_vec())
}

#[test]
fn omega_orbit_of_c_lowers_the_parameter() {
    let mut m = c(1);
    for k in 1..=5 {
        m = syzygy(&m, false).unwrap();
        assert_eq!(c_module_parameter(&m), Some(RatFun::q_pow(1 - k)));
        assert!(is_isomorphic(&m, &c(1 - k)).unwrap());
    }
}

#[test]
fn omega_commutes_with_induction() {
    for r in 2..=3 {
        let ind = induce(&c(2), r).unwrap();
        let om = syzygy(&ind, true).unwrap();
        let expected = induce(&c(1), r).unwrap();
        assert!(is_isomorphic(&om, &expected).unwrap(), "r = {r}");
        assert!(!is_isomorphic(&om, &ind).unwrap());
    }
}

// C(lam) as the submodule of Lambda generated by zeta = -lam q x + y, with
// basis zeta, x zeta.
#[test]
fn zeta_presentation_matches_the_matrices() {
    let l = ModuleRep::projective(qext(), 0);
    for k in [-2, 1, 3] {
        let lam = RatFun::q_pow(k);
        let zeta = vec![RatFun::zero(), -&(&lam * &RatFun::q()), RatFun::one(), RatFun::zero()];
        let x_zeta = l.action(0).mul_vec(&zeta);
        let (sub, _) = l.submodule(&[vec![zeta, x_zeta]]).unwrap();
        assert_eq!(sub.dim(), 2);
        assert_eq!(c_module_parameter(&sub), Some(lam.clone()));
        assert!(is_isomorphic(&sub, &make_c_module(&qext(), &lam).unwrap()).unwrap());
    }
}

#[test]
fn induced_free_module_is_the_regular_module() {
    for r in 2..=3 {
        let free = induce(&ModuleRep::projective(qext(), 0), r).unwrap();
        assert_eq!(free.dim(), 4 * r);
        let st = strip_summands(&free).unwrap();
        assert!(st.core.is_zero());
        assert_eq!(st.projective_count, vec![1; r]);
        let reg = ModuleRep::regular(free.algebra_ref().clone());
        assert!(is_isomorphic(&free, &reg).unwrap());
    }
}

#[test]
fn hom_between_inductions_has_rank_dimension() {
    for r in 2..=3 {
        let base = induce(&c(1), r).unwrap();
        for s in 1..=4 {
            let src = induce(&c(1 - s), r).unwrap();
            let h = hom_space(&src, &base).unwrap();
            assert_eq!(h.dim(), r);
            assert!(h.verify());
        }
        let back = restrict_to_qext(&base).unwrap();
        assert_eq!(socle(&back).dim(), r);
    }
}

#[test]
fn ext_values_for_c_modules() {
    // Ext^1(C(mu), C(q)) vanishes away from mu = q and mu = q^2
    for j in -5..=5 {
        let e = ext_dim(&c(1 + j), &c(1), 1).unwrap();
        let expected = usize::from(j == 0 || j == 1);
        assert_eq!(e, expected, "mu = q^{}", 1 + j);
        assert_eq!(ext_dim_oracle(&c(1 + j), &c(1), 1).unwrap(), e);
    }
    for k in 2..=8 {
        assert_eq!(ext_dim(&c(1), &c(1), k).unwrap(), 0);
    }
    assert_eq!(ext_dim_oracle(&c(1), &c(1), 1).unwrap(), 1);
}

#[test]
fn dimension_vectors_of_standard_modules() {
    assert_eq!(dim_vector(&c(1), false).unwrap(), dv(&[1], &[1]));
    let ind = induce(&c(1), 3).unwrap();
    assert_eq!(dim_vector(&ind, false).unwrap(), dv(&[1, 1, 1], &[1, 1, 1]));
    let rad_l = syzygy(&ModuleRep::simple(qext(), 0), false).unwrap();
    assert_eq!(dim_vector(&rad_l, false).unwrap(), dv(&[2], &[1]));
}

#[test]
fn dimension_vector_recursion_along_orbits() {
    let mut modules = vec![c(1)];
    for r in 2..=4 {
        modules.push(induce(&c(1), r).unwrap());
    }
    for m in modules {
        let e = m.algebra().e_matrix();
        let mut cur = m;
        let mut v = dim_vector(&cur, false).unwrap();
        let orbit = iterate_dimvec(&e, &v, 8).unwrap();
        for step in orbit.iter().skip(1) {
            cur = syzygy(&cur, false).unwrap();
            let next = dim_vector(&cur, false).unwrap();
            assert_eq!(next, apply_x(&e, &v).unwrap());
            assert_eq!(&next, step);
            v = next;
        }
    }
}

#[test]
fn syzygies_of_simples_follow_x() {
    for alg in [qext(), Arc::new(make_dnak_algebra(2).unwrap()), Arc::new(make_dnak_algebra(3).unwrap())] {
        let e = alg.e_matrix();
        let x = x_matrix(&e).unwrap();
        let n = alg.vertices();
        let mut m = ModuleRep::simple(alg.clone(), 0);
        let mut col: Vec<RatFun> = (0..2 * n).map(|i| RatFun::from_int(i64::from(i == 0))).collect();
        for k in 1..=6 {
            m = syzygy(&m, false).unwrap();
            col = x.mul_vec(&col);
            let v = dim_vector(&m, false).unwrap();
            let got: Vec<RatFun> = v.t.iter().chain(&v.s).map(|&a| RatFun::from_int(a)).collect();
            assert_eq!(got, col, "{} step {k}", alg.family());
            assert_eq!(m.dim() % 2, 1);
        }
    }
}

#[test]
fn strip_and_dim_vector_errors() {
    let l = ModuleRep::projective(qext(), 0);
    assert_eq!(dim_vector(&l, false), Err(Error::HasSummands));
    let mixed = c(1).direct_sum(&ModuleRep::simple(qext(), 0)).unwrap().direct_sum(&l).unwrap();
    let st = strip_summands(&mixed).unwrap();
    assert!(is_isomorphic(&st.core, &c(1)).unwrap());
    assert_eq!(st.simple_count, vec![1]);
    assert_eq!(st.projective_count, vec![1]);
    let a = Arc::new(make_dnak_algebra(2).unwrap());
    assert_eq!(
        c(1).direct_sum(&ModuleRep::simple(a, 0)).unwrap_err(),
        Error::AlgebraMismatch
    );
}

#[test]
fn induction_needs_a_qext_module() {
    let a = Arc::new(make_dnak_algebra(3).unwrap());
    assert_eq!(
        induce(&ModuleRep::simple(a.clone(), 0), 2).unwrap_err(),
        Error::AlgebraMismatch
    );
    assert_eq!(induce(&c(1), 1).unwrap_err(), Error::RankTooSmall(1));
    assert!(restrict_to_qext(&c(1)).is_err());
}

#[test]
fn module_json_round_trip_for_induced_modules() {
    let m = induce(&c(-1), 3).unwrap();
    let text = serde_json::to_string(&m).unwrap();
    let back: ModuleRep = serde_json::from_str(&text).unwrap();
    assert_eq!(back, m);
    let e = ExactMatrix::from_ints(&[&[0, 1, 1], &[1, 0, 1], &[1, 1, 0]]);
    assert_eq!(back.algebra().e_matrix(), e);
}
