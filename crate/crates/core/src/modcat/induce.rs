use std::sync::Arc;

use super::algebra::{make_dnak_algebra, AlgebraRef, AlgebraSpec, Family};
use super::module::ModuleRep;
use super::structure::top_generators;
use crate::error::{Error, Result};
use crate::exactnum::RatFun;
use crate::linalg::{ExactMatrix, Matrix};

fn qext_only(n: &ModuleRep) -> Result<()> {
    if n.algebra().family() != Family::QExterior {
        return Err(Error::AlgebraMismatch);
    }
    Ok(())
}

/// The images `x = sum_j q^{r-j} a_j` and `y = sum_j b_j` of the generators
/// of the q-exterior algebra inside `A(q^{-r})`, checked against
/// `x^2 = y^2 = 0` and `xy + q yx = 0`.
pub fn qext_embedding(alg: &AlgebraSpec) -> Result<(Vec<RatFun>, Vec<RatFun>)> {
    let Family::DoubleNakayama { rank: r } = alg.family() else {
        return Err(Error::AlgebraMismatch);
    };
    let mut x = vec![RatFun::zero(); alg.dim()];
    let mut y = vec![RatFun::zero(); alg.dim()];
    for j in 0..r {
        x[alg.generators()[j]] = RatFun::q_pow((r - j) as i64);
        y[alg.generators()[r + j]] = RatFun::one();
    }
    let zero = |v: &[RatFun]| v.iter().all(RatFun::is_zero);
    let xy = alg.mul(&x, &y);
    let yx = alg.mul(&y, &x);
    let rel: Vec<RatFun> = xy.iter().zip(&yx).map(|(a, b)| a + &(&RatFun::q() * b)).collect();
    if !zero(&alg.mul(&x, &x)) || !zero(&alg.mul(&y, &y)) || !zero(&rel) {
        return Err(Error::RelationViolated("embedded generators".into()));
    }
    Ok((x, y))
}

/// `A` is free over the embedded subalgebra on both sides: `dim A = 4r` and
/// multiplication by the socle element `xy` has rank `r`, on the left and
/// on the right.
pub fn is_free_over_qext(alg: &AlgebraSpec) -> Result<bool> {
    let Family::DoubleNakayama { rank: r } = alg.family() else {
        return Err(Error::AlgebraMismatch);
    };
    let (x, y) = qext_embedding(alg)?;
    let xy = alg.mul(&x, &y);
    Ok(alg.dim() == 4 * r
        && alg.left_mult_matrix(&xy).rank() == r
        && alg.right_mult_matrix(&xy).rank() == r)
}

/// `A (x)_Lambda N` for a q-exterior module `N`.
///
/// Block `i` is a copy of `N`; `a_i` maps block `i` to block `i+1` by
/// `q^{-(r-i)} X_N` and `b_j` maps block `j+1` to block `j` by `Y_N`.
pub fn induce(n: &ModuleRep, r: usize) -> Result<ModuleRep> {
    qext_only(n)?;
    let alg: AlgebraRef = Arc::new(make_dnak_algebra(r)?);
    let x = n.action(0);
    let y = n.action(1);
    let mut actions: Vec<ExactMatrix> = (0..r)
        .map(|i| x.scale(&RatFun::q_pow(-((r - i) as i64))))
        .collect();
    actions.extend((0..r).map(|_| y.clone()));
    ModuleRep::new(alg, vec![n.dim(); r], actions)
}

/// Restriction along the embedding of [`qext_embedding`].
pub fn restrict_to_qext(m: &ModuleRep) -> Result<ModuleRep> {
    let alg = m.algebra();
    let Family::DoubleNakayama { rank: r } = alg.family() else {
        return Err(Error::AlgebraMismatch);
    };
    let d = m.dim();
    let mut x = Matrix::zeros(d, d);
    let mut y = Matrix::zeros(d, d);
    for j in 0..r {
        x = x.add(&m.action_full(j).scale(&RatFun::q_pow((r - j) as i64)));
        y = y.add(&m.action_full(r + j));
    }
    ModuleRep::new(Arc::new(super::make_qext_algebra()), vec![d], vec![x, y])
}

/// The `lam` with `M = C(lam)`, read off a top generator `v` from
/// `y v = lam x v`; `None` when `M` is not of this form.
pub fn c_module_parameter(m: &ModuleRep) -> Option<RatFun> {
    if m.algebra().family() != Family::QExterior || m.dim() != 2 {
        return None;
    }
    let tops = top_generators(m);
    if tops[0].len() != 1 {
        return None;
    }
    let v = &tops[0][0];
    let xv = m.action(0).mul_vec(v);
    let yv = m.action(1).mul_vec(v);
    let i = xv.iter().position(|c| !c.is_zero())?;
    let lam = &yv[i] / &xv[i];
    if lam.is_zero() || xv.iter().zip(&yv).any(|(a, b)| &(a * &lam) != b) {
        return None;
    }
    Some(lam)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::modcat::{make_c_module, make_qext_algebra, socle, syzygy};

    fn qext() -> AlgebraRef {
        Arc::new(make_qext_algebra())
    }

    #[test]
    fn embedding_and_freeness() {
        for r in 2..=5 {
            let a = make_dnak_algebra(r).unwrap();
            let (x, y) = qext_embedding(&a).unwrap();
            assert!(is_free_over_qext(&a).unwrap());
            // e_i (yx) = (yx) e_i = q^{r-i} b_i a_i
            let yx = a.mul(&y, &x);
            for i in 0..r {
                let e = a.basis_vector(a.idempotents()[i]);
                let c = RatFun::q_pow((r - i) as i64);
                let s: Vec<RatFun> = a.basis_vector(a.socle_basis()[i]).iter().map(|x| x * &c).collect();
                assert_eq!(a.mul(&e, &yx), s);
                assert_eq!(a.mul(&yx, &e), s);
            }
        }
        assert!(qext_embedding(&make_qext_algebra()).is_err());
    }

    #[test]
    fn induced_dimensions() {
        let c = make_c_module(&qext(), &RatFun::q()).unwrap();
        for r in 2..=4 {
            let m = induce(&c, r).unwrap();
            assert_eq!(m.dim(), 2 * r);
            let back = restrict_to_qext(&m).unwrap();
            assert_eq!(socle(&back).dim(), r);
        }
        let free = induce(&ModuleRep::projective(qext(), 0), 3).unwrap();
        assert_eq!(free.dim(), 12);
        assert!(induce(&free, 2).is_err());
    }

    #[test]
    fn parameters() {
        let c3 = make_c_module(&qext(), &RatFun::q_pow(3)).unwrap();
        assert_eq!(c_module_parameter(&c3), Some(RatFun::q_pow(3)));
        let om = syzygy(&c3, false).unwrap();
        assert_eq!(c_module_parameter(&om), Some(RatFun::q_pow(2)));
        assert_eq!(c_module_parameter(&ModuleRep::projective(qext(), 0)), None);
        let two_simples = ModuleRep::simple(qext(), 0)
            .direct_sum(&ModuleRep::simple(qext(), 0))
            .unwrap();
        assert_eq!(c_module_parameter(&two_simples), None);
    }
}
