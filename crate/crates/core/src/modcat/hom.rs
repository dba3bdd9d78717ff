use super::module::ModuleRep;
use super::structure::{assemble, free_map, projective_cover, syzygy, syzygy_data};
use crate::error::{Error, Result};
use crate::exactnum::RatFun;
use crate::linalg::{rank_of, ExactMatrix};

/// A basis of `Hom_A(M, N)`. Each map is stored blockwise, one
/// `dim_v(N) x dim_v(M)` matrix per vertex.
#[derive(Clone, Debug)]
pub struct HomSpace {
    pub source: ModuleRep,
    pub target: ModuleRep,
    pub basis: Vec<Vec<ExactMatrix>>,
}

impl HomSpace {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// The `dim N x dim M` matrix of basis element `i`.
    pub fn full(&self, i: usize) -> ExactMatrix {
        assemble(
            &self.basis[i],
            self.target.block_dims(),
            self.source.block_dims(),
        )
    }

    /// Checks `H G^M_g = G^N_g H` for every basis element and generator.
    pub fn verify(&self) -> bool {
        (0..self.dim()).all(|i| {
            let h = self.full(i);
            (0..self.source.algebra().generator_count()).all(|g| {
                h.mul(&self.source.action_full(g)) == self.target.action_full(g).mul(&h)
            })
        })
    }
}

fn same_algebra(m: &ModuleRep, n: &ModuleRep) -> Result<()> {
    if m.algebra().family() != n.algebra().family() {
        return Err(Error::AlgebraMismatch);
    }
    Ok(())
}

/// Solves `H_t G^M_g - G^N_g H_s = 0` for all generators `g: s -> t`.
pub fn hom_space(m: &ModuleRep, n: &ModuleRep) -> Result<HomSpace> {
    same_algebra(m, n)?;
    let alg = m.algebra();
    let nv = alg.vertices();
    let mut offsets = Vec::with_capacity(nv);
    let mut unknowns = 0;
    for v in 0..nv {
        offsets.push(unknowns);
        unknowns += n.block_dim(v) * m.block_dim(v);
    }
    let var = |v: usize, i: usize, j: usize| offsets[v] + i * m.block_dim(v) + j;
    let mut rows: Vec<Vec<RatFun>> = Vec::new();
    for g in 0..alg.generator_count() {
        let el = alg.generator(g);
        let (s, t) = (el.source, el.target);
        let (am, an) = (m.action(g), n.action(g));
        for i in 0..n.block_dim(t) {
            for j in 0..m.block_dim(s) {
                let mut row = vec![RatFun::zero(); unknowns];
                for k in 0..m.block_dim(t) {
                    let c = am.get(k, j);
                    if !c.is_zero() {
                        let p = var(t, i, k);
                        row[p] = &row[p] + c;
                    }
                }
                for k in 0..n.block_dim(s) {
                    let c = an.get(i, k);
                    if !c.is_zero() {
                        let p = var(s, k, j);
                        row[p] = &row[p] - c;
                    }
                }
                if row.iter().any(|x| !x.is_zero()) {
                    rows.push(row);
                }
            }
        }
    }
    let kernel: Vec<Vec<RatFun>> = if unknowns == 0 {
        Vec::new()
    } else if rows.is_empty() {
        (0..unknowns)
            .map(|i| {
                let mut v = vec![RatFun::zero(); unknowns];
                v[i] = RatFun::one();
                v
            })
            .collect()
    } else {
        ExactMatrix::from_rows(rows)?.kernel_basis()
    };
    let basis = kernel
        .into_iter()
        .map(|sol| {
            (0..nv)
                .map(|v| {
                    ExactMatrix::from_fn(n.block_dim(v), m.block_dim(v), |i, j| {
                        sol[var(v, i, j)].clone()
                    })
                })
                .collect()
        })
        .collect();
    Ok(HomSpace {
        source: m.clone(),
        target: n.clone(),
        basis,
    })
}

fn flatten(blocks: &[ExactMatrix]) -> Vec<RatFun> {
    blocks.iter().flat_map(|b| b.entries().iter().cloned()).collect()
}

fn compose(left: &[ExactMatrix], right: &[ExactMatrix]) -> Vec<ExactMatrix> {
    left.iter().zip(right).map(|(l, r)| l.mul(r)).collect()
}

/// `dim Hom(M, N)` minus the dimension of the maps factoring through a
/// projective, computed as the image of `Hom(M, P_N)` under the cover `P_N -> N`.
pub fn stable_hom_dim(m: &ModuleRep, n: &ModuleRep) -> Result<usize> {
    same_algebra(m, n)?;
    let total = hom_space(m, n)?.dim();
    let cover = projective_cover(n);
    let through = hom_space(m, &cover.projective)?;
    let images: Vec<Vec<RatFun>> = through
        .basis
        .iter()
        .map(|g| flatten(&compose(&cover.epi, g)))
        .collect();
    let len = images.first().map_or(0, Vec::len);
    Ok(total - rank_of(&images, len))
}

/// `dim Ext^k(M, N)` as the stable Hom from `Omega^k M` to `N`.
pub fn ext_dim(m: &ModuleRep, n: &ModuleRep, k: usize) -> Result<usize> {
    same_algebra(m, n)?;
    if k == 0 {
        return Err(Error::InvalidInput("Ext degree must be at least 1".into()));
    }
    let mut cur = m.clone();
    for _ in 0..k {
        cur = syzygy(&cur, false)?;
    }
    stable_hom_dim(&cur, n)
}

/// `dim Ext^k(M, N)` as the cohomology of `Hom(P_*, N)` for the minimal
/// projective resolution `P_*`.
///
/// A map `P_j -> N` is fixed by the images of the top generators of `P_j`,
/// so `dim Hom(P_j, N) = sum_v t_v dim e_v N`; `delta_j` is precomposition
/// with `d_j = iota_{j-1} pi_j`.
pub fn ext_dim_oracle(m: &ModuleRep, n: &ModuleRep, k: usize) -> Result<usize> {
    same_algebra(m, n)?;
    if k == 0 {
        return Err(Error::InvalidInput("Ext degree must be at least 1".into()));
    }
    let mut tops = Vec::new();
    let mut diffs: Vec<Vec<ExactMatrix>> = vec![Vec::new()];
    let mut prev_incl: Option<Vec<ExactMatrix>> = None;
    let mut cur = m.clone();
    for j in 0..=k + 1 {
        let sd = syzygy_data(&cur)?;
        if let Some(incl) = prev_incl.take() {
            debug_assert!(j >= 1);
            diffs.push(compose(&incl, &sd.cover.epi));
        }
        tops.push(sd.cover.top.clone());
        prev_incl = Some(sd.inclusion);
        cur = sd.module;
    }
    let hom_dim = |j: usize| -> usize {
        tops[j]
            .iter()
            .enumerate()
            .map(|(v, t)| t * n.block_dim(v))
            .sum()
    };
    // rank of delta_j: Hom(P_{j-1}, N) -> Hom(P_j, N)
    let delta_rank = |j: usize| -> usize {
        let nv = n.algebra().vertices();
        let mut images = Vec::new();
        for (v, &count) in tops[j - 1].iter().enumerate() {
            for c in 0..count {
                for b in 0..n.block_dim(v) {
                    let gens: Vec<Vec<Vec<RatFun>>> = (0..nv)
                        .map(|w| {
                            (0..tops[j - 1][w])
                                .map(|cc| {
                                    let mut vec = vec![RatFun::zero(); n.block_dim(w)];
                                    if w == v && cc == c {
                                        vec[b] = RatFun::one();
                                    }
                                    vec
                                })
                                .collect()
                        })
                        .collect();
                    let phi = free_map(n, &gens).1;
                    images.push(flatten(&compose(&phi, &diffs[j])));
                }
            }
        }
        let len = images.first().map_or(0, Vec::len);
        rank_of(&images, len)
    };
    Ok(hom_dim(k) - delta_rank(k + 1) - delta_rank(k))
}

/// An explicit isomorphism `M -> N` (blockwise), searched among a few
/// deterministic combinations of a Hom basis.
pub fn find_isomorphism(m: &ModuleRep, n: &ModuleRep) -> Result<Option<Vec<ExactMatrix>>> {
    same_algebra(m, n)?;
    if m.block_dims() != n.block_dims() {
        return Ok(None);
    }
    if m.is_zero() {
        return Ok(Some(
            (0..m.algebra().vertices()).map(|_| ExactMatrix::zeros(0, 0)).collect(),
        ));
    }
    let h = hom_space(m, n)?;
    let d = h.dim();
    let mut candidates: Vec<Vec<RatFun>> = Vec::new();
    for i in 0..d {
        let mut c = vec![RatFun::zero(); d];
        c[i] = RatFun::one();
        candidates.push(c);
    }
    for p in 0..d + 3 {
        candidates.push(
            (0..d)
                .map(|i| RatFun::from_int(((i + 1) as i64).pow(p as u32)))
                .collect(),
        );
    }
    for c in candidates {
        let mut blocks: Vec<ExactMatrix> = (0..m.algebra().vertices())
            .map(|v| ExactMatrix::zeros(n.block_dim(v), m.block_dim(v)))
            .collect();
        for (ci, b) in c.iter().zip(&h.basis) {
            if ci.is_zero() {
                continue;
            }
            for (acc, x) in blocks.iter_mut().zip(b) {
                *acc = acc.add(&x.scale(ci));
            }
        }
        if blocks.iter().all(|b| b.rows() == 0 || !b.det().map(|x| x.is_zero()).unwrap_or(true)) {
            return Ok(Some(blocks));
        }
    }
    Ok(None)
}

pub fn is_isomorphic(m: &ModuleRep, n: &ModuleRep) -> Result<bool> {
    Ok(find_isomorphism(m, n)?.is_some())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::modcat::{make_c_module, make_dnak_algebra, make_qext_algebra, AlgebraRef};
    use std::sync::Arc;

    fn qext() -> AlgebraRef {
        Arc::new(make_qext_algebra())
    }

    fn c(k: i64) -> ModuleRep {
        make_c_module(&qext(), &RatFun::q_pow(k)).unwrap()
    }

    #[test]
    fn hom_dimensions() {
        let l = ModuleRep::projective(qext(), 0);
        let h = hom_space(&l, &c(1)).unwrap();
        assert_eq!(h.dim(), 2);
        assert!(h.verify());
        assert_eq!(hom_space(&c(3), &c(1)).unwrap().dim(), 1);
        assert_eq!(hom_space(&c(1), &c(1)).unwrap().dim(), 2);
        let a = Arc::new(make_dnak_algebra(2).unwrap());
        assert_eq!(
            hom_space(&l, &ModuleRep::projective(a, 0)).unwrap_err(),
            Error::AlgebraMismatch
        );
    }

    #[test]
    fn stable_hom_values() {
        let l = ModuleRep::projective(qext(), 0);
        assert_eq!(stable_hom_dim(&l, &c(1)).unwrap(), 0);
        assert_eq!(stable_hom_dim(&c(1), &c(1)).unwrap(), 1);
        assert_eq!(stable_hom_dim(&c(4), &c(1)).unwrap(), 0);
    }

    // The top-to-socle map of C(lam) factors through the cover Lambda -> C(lam).
    #[test]
    fn top_to_socle_factors_explicitly() {
        let m = c(1);
        let cover = projective_cover(&m);
        let epi = cover.epi_full(&m);
        let nil = ExactMatrix::from_ints(&[&[0, 0], &[1, 0]]);
        let lift = hom_space(&m, &cover.projective).unwrap();
        let found = (0..lift.dim()).any(|i| epi.mul(&lift.full(i)) == nil)
            || {
                let cols: Vec<Vec<RatFun>> = (0..lift.dim())
                    .map(|i| epi.mul(&lift.full(i)).entries().to_vec())
                    .collect();
                let sys = ExactMatrix::from_columns(4, &cols);
                sys.solve(nil.entries()).unwrap().is_some()
            };
        assert!(found);
    }

    #[test]
    fn ext_between_c_modules() {
        assert_eq!(ext_dim(&c(1), &c(1), 1).unwrap(), 1);
        assert_eq!(ext_dim(&c(5), &c(1), 1).unwrap(), 0);
        for k in 2..=4 {
            assert_eq!(ext_dim(&c(1), &c(1), k).unwrap(), 0);
        }
        for (a, b, k) in [(1, 1, 1), (1, 1, 2), (5, 1, 1), (2, 1, 1), (0, 1, 1)] {
            assert_eq!(
                ext_dim(&c(a), &c(b), k).unwrap(),
                ext_dim_oracle(&c(a), &c(b), k).unwrap(),
                "{a} {b} {k}"
            );
        }
        assert!(ext_dim(&c(1), &c(1), 0).is_err());
    }

    #[test]
    fn isomorphism_search() {
        let om = syzygy(&c(2), false).unwrap();
        assert!(is_isomorphic(&om, &c(1)).unwrap());
        assert!(!is_isomorphic(&om, &c(2)).unwrap());
        let iso = find_isomorphism(&om, &c(1)).unwrap().unwrap();
        assert!(!iso[0].det().unwrap().is_zero());
    }
}
