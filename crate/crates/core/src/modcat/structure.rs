use super::hom::hom_space;
use super::module::{BlockVectors, ModuleRep};
use crate::dynamics::DimVector;
use crate::error::{Error, Result};
use crate::exactnum::RatFun;
use crate::linalg::{echelon_span, rank_of, ExactMatrix};

/// A subspace given blockwise by echelon bases in local coordinates.
#[derive(Clone, PartialEq, Debug)]
pub struct BlockSubspace {
    pub per_vertex: Vec<BlockVectors>,
}

impl BlockSubspace {
    fn from_spanning(m: &ModuleRep, per_vertex: Vec<BlockVectors>) -> Self {
        BlockSubspace {
            per_vertex: per_vertex
                .into_iter()
                .enumerate()
                .map(|(v, vs)| echelon_span(&vs, m.block_dim(v)).0)
                .collect(),
        }
    }

    pub fn dims(&self) -> Vec<usize> {
        self.per_vertex.iter().map(Vec::len).collect()
    }

    pub fn dim(&self) -> usize {
        self.dims().iter().sum()
    }

    /// Basis vectors in the coordinates of the whole module.
    pub fn to_full(&self, m: &ModuleRep) -> Vec<Vec<RatFun>> {
        let n = m.dim();
        let mut out = Vec::new();
        for (v, vs) in self.per_vertex.iter().enumerate() {
            let off = m.offset(v);
            for w in vs {
                let mut full = vec![RatFun::zero(); n];
                for (i, x) in w.iter().enumerate() {
                    full[off + i] = x.clone();
                }
                out.push(full);
            }
        }
        out
    }
}

/// `J M`: the span of the images of all generators.
pub fn radical(m: &ModuleRep) -> BlockSubspace {
    let alg = m.algebra();
    let mut per_vertex: Vec<BlockVectors> = vec![Vec::new(); alg.vertices()];
    for g in 0..alg.generator_count() {
        let t = alg.generator(g).target;
        let a = m.action(g);
        for j in 0..a.cols() {
            per_vertex[t].push(a.col(j));
        }
    }
    BlockSubspace::from_spanning(m, per_vertex)
}

/// Elements annihilated by every generator.
pub fn socle(m: &ModuleRep) -> BlockSubspace {
    let alg = m.algebra();
    let per_vertex = (0..alg.vertices())
        .map(|v| {
            let rows: Vec<Vec<RatFun>> = (0..alg.generator_count())
                .filter(|&g| alg.generator(g).source == v)
                .flat_map(|g| m.action(g).to_rows())
                .collect();
            let d = m.block_dim(v);
            if rows.is_empty() {
                return (0..d).map(|i| unit(d, i)).collect();
            }
            ExactMatrix::from_rows(rows).expect("equal widths").kernel_basis()
        })
        .collect();
    BlockSubspace::from_spanning(m, per_vertex)
}

fn unit(d: usize, i: usize) -> Vec<RatFun> {
    let mut v = vec![RatFun::zero(); d];
    v[i] = RatFun::one();
    v
}

/// Standard basis vectors of each block completing `sub` to the whole block.
fn complement(m: &ModuleRep, v: usize, sub: &BlockVectors) -> BlockVectors {
    let d = m.block_dim(v);
    let mut span = sub.clone();
    let mut rank = rank_of(&span, d);
    let mut out = Vec::new();
    for i in 0..d {
        span.push(unit(d, i));
        let r = rank_of(&span, d);
        if r > rank {
            rank = r;
            out.push(unit(d, i));
        } else {
            span.pop();
        }
    }
    out
}

/// Top multiplicities `dim e_v M - dim e_v JM`.
pub fn top_dims(m: &ModuleRep) -> Vec<usize> {
    let r = radical(m).dims();
    m.block_dims().iter().zip(r).map(|(d, r)| d - r).collect()
}

/// Representatives of a basis of `M / JM`, chosen among standard vectors.
pub fn top_generators(m: &ModuleRep) -> Vec<BlockVectors> {
    let rad = radical(m);
    (0..m.algebra().vertices())
        .map(|v| complement(m, v, &rad.per_vertex[v]))
        .collect()
}

/// The map `sum_v sum_c P_v -> M` sending the idempotent of copy `c` at
/// vertex `v` to `gens[v][c]`.
pub fn free_map(m: &ModuleRep, gens: &[BlockVectors]) -> (ModuleRep, Vec<ExactMatrix>) {
    let alg = m.algebra_ref().clone();
    let n = alg.vertices();
    let mut parts = Vec::new();
    let mut cols: Vec<Vec<Vec<RatFun>>> = vec![Vec::new(); n];
    for v in 0..n {
        let basis = projective_basis(&alg, v);
        for g in &gens[v] {
            parts.push(ModuleRep::projective(alg.clone(), v));
            for &p in &basis {
                let t = alg.element(p).target;
                cols[t].push(m.elem_block(p).mul_vec(g));
            }
        }
    }
    // direct_sum_all keeps summands in order inside every block, matching
    // the column order built above
    let p = ModuleRep::direct_sum_all(alg, &parts);
    let maps = (0..n)
        .map(|t| ExactMatrix::from_columns(m.block_dim(t), &cols[t]))
        .collect();
    (p, maps)
}

/// Basis of `A e_v` in the order used by [`ModuleRep::projective`].
pub fn projective_basis(alg: &super::AlgebraSpec, v: usize) -> Vec<usize> {
    let mut paths = alg.paths_from(v);
    paths.sort_by_key(|&p| (alg.element(p).target, alg.element(p).degree));
    paths
}

/// A projective cover `P -> M` with `P = sum_v t_v P_v`.
#[derive(Clone, Debug)]
pub struct ProjectiveCover {
    pub projective: ModuleRep,
    /// One `dim_v(M) x dim_v(P)` block per vertex.
    pub epi: Vec<ExactMatrix>,
    pub top: Vec<usize>,
}

impl ProjectiveCover {
    pub fn epi_full(&self, m: &ModuleRep) -> ExactMatrix {
        assemble(&self.epi, m.block_dims(), self.projective.block_dims())
    }
}

/// Block-diagonal assembly of per-vertex maps into a full matrix.
pub fn assemble(blocks: &[ExactMatrix], rows: &[usize], cols: &[usize]) -> ExactMatrix {
    let (r, c): (usize, usize) = (rows.iter().sum(), cols.iter().sum());
    let mut out = ExactMatrix::zeros(r, c);
    let (mut ro, mut co) = (0, 0);
    for (v, b) in blocks.iter().enumerate() {
        for i in 0..b.rows() {
            for j in 0..b.cols() {
                out.set(ro + i, co + j, b.get(i, j).clone());
            }
        }
        ro += rows[v];
        co += cols[v];
    }
    out
}

pub fn projective_cover(m: &ModuleRep) -> ProjectiveCover {
    let gens = top_generators(m);
    let top = gens.iter().map(Vec::len).collect();
    let (projective, epi) = free_map(m, &gens);
    ProjectiveCover {
        projective,
        epi,
        top,
    }
}

/// `Omega(M)` with its inclusion into the projective cover.
#[derive(Clone, Debug)]
pub struct Syzygy {
    pub module: ModuleRep,
    pub inclusion: Vec<ExactMatrix>,
    pub cover: ProjectiveCover,
}

pub fn syzygy_data(m: &ModuleRep) -> Result<Syzygy> {
    let cover = projective_cover(m);
    let kernels: Vec<BlockVectors> = cover.epi.iter().enumerate().map(|(v, e)| {
        if e.rows() == 0 {
            (0..cover.projective.block_dim(v))
                .map(|i| unit(cover.projective.block_dim(v), i))
                .collect()
        } else {
            e.kernel_basis()
        }
    }).collect();
    let (module, inclusion) = cover.projective.submodule(&kernels)?;
    Ok(Syzygy {
        module,
        inclusion,
        cover,
    })
}

/// Kernel of the projective cover; with `strip`, projective summands are
/// removed as well (a minimal cover leaves none when `M` has none).
pub fn syzygy(m: &ModuleRep, strip: bool) -> Result<ModuleRep> {
    let s = syzygy_data(m)?.module;
    if strip {
        Ok(strip_projective(&s)?.0)
    } else {
        Ok(s)
    }
}

/// `M, Omega M, ..., Omega^k M`.
pub fn syzygy_orbit(m: &ModuleRep, k: usize) -> Result<Vec<ModuleRep>> {
    let mut out = vec![m.clone()];
    for _ in 0..k {
        let next = syzygy(out.last().unwrap(), false)?;
        out.push(next);
    }
    Ok(out)
}

/// Result of splitting off simple and projective summands.
#[derive(Clone, Debug)]
pub struct Stripped {
    pub core: ModuleRep,
    pub simple_count: Vec<usize>,
    pub projective_count: Vec<usize>,
}

/// Multiplicity of `P_v` as a summand: the rank of the socle element of
/// `A e_v` acting on `M`.
pub fn projective_multiplicities(m: &ModuleRep) -> Vec<usize> {
    let alg = m.algebra();
    alg.socle_basis()
        .iter()
        .map(|&s| m.elem_block(s).rank())
        .collect()
}

fn strip_projective(m: &ModuleRep) -> Result<(ModuleRep, Vec<usize>)> {
    let counts = projective_multiplicities(m);
    if counts.iter().all(|&c| c == 0) {
        return Ok((m.clone(), counts));
    }
    let alg = m.algebra();
    // generators whose socle images are independent span an injective copy of
    // the projective part
    let gens: Vec<BlockVectors> = (0..alg.vertices())
        .map(|v| {
            let s = m.elem_block(alg.socle_basis()[v]);
            let d = m.block_dim(v);
            let mut chosen = Vec::new();
            let mut images: Vec<Vec<RatFun>> = Vec::new();
            for i in 0..d {
                if chosen.len() == counts[v] {
                    break;
                }
                images.push(s.col(i));
                if rank_of(&images, d) > chosen.len() {
                    chosen.push(unit(d, i));
                } else {
                    images.pop();
                }
            }
            chosen
        })
        .collect();
    let (u, phi) = free_map(m, &gens);
    // a retraction rho: M -> U with rho phi = id exists because U is injective
    let homs = hom_space(m, &u)?;
    let mut columns: Vec<Vec<RatFun>> = Vec::new();
    for h in &homs.basis {
        let mut flat = Vec::new();
        for (hv, pv) in h.iter().zip(&phi) {
            flat.extend(hv.mul(pv).entries().iter().cloned());
        }
        columns.push(flat);
    }
    let mut target = Vec::new();
    for v in 0..alg.vertices() {
        let d = u.block_dim(v);
        target.extend(ExactMatrix::identity(d).entries().iter().cloned());
    }
    let sys = ExactMatrix::from_columns(target.len(), &columns);
    let c = sys
        .solve(&target)?
        .ok_or_else(|| Error::InvalidInput("no retraction onto the projective part".into()))?;
    let kernels: Vec<BlockVectors> = (0..alg.vertices())
        .map(|v| {
            let mut rho = ExactMatrix::zeros(u.block_dim(v), m.block_dim(v));
            for (cl, h) in c.iter().zip(&homs.basis) {
                if !cl.is_zero() {
                    rho = rho.add(&h[v].scale(cl));
                }
            }
            if rho.rows() == 0 {
                (0..m.block_dim(v)).map(|i| unit(m.block_dim(v), i)).collect()
            } else {
                rho.kernel_basis()
            }
        })
        .collect();
    Ok((m.submodule(&kernels)?.0, counts))
}

/// Splits `M = core + simples + projectives` and returns the core together
/// with the multiplicities of the removed summands per vertex.
pub fn strip_summands(m: &ModuleRep) -> Result<Stripped> {
    let (no_proj, projective_count) = strip_projective(m)?;
    let rad = radical(&no_proj);
    let soc = socle(&no_proj);
    let mut simple_count = Vec::new();
    let mut keep: Vec<BlockVectors> = Vec::new();
    for v in 0..no_proj.algebra().vertices() {
        let d = no_proj.block_dim(v);
        let r = &rad.per_vertex[v];
        let mut sr = r.clone();
        sr.extend(soc.per_vertex[v].iter().cloned());
        let sr = echelon_span(&sr, d).0;
        simple_count.push(sr.len() - r.len());
        // rad + (complement of soc + rad) contains JM, hence is a submodule
        let mut k = r.clone();
        k.extend(complement(&no_proj, v, &sr));
        keep.push(k);
    }
    let core = if simple_count.iter().all(|&c| c == 0) {
        no_proj
    } else {
        no_proj.submodule(&keep)?.0
    };
    Ok(Stripped {
        core,
        simple_count,
        projective_count,
    })
}

fn same_span(a: &BlockVectors, b: &BlockVectors, d: usize) -> bool {
    let mut all = a.clone();
    all.extend(b.iter().cloned());
    a.len() == b.len() && rank_of(&all, d) == a.len()
}

/// `soc M = rad M` blockwise.
pub fn socle_equals_radical(m: &ModuleRep) -> bool {
    let (r, s) = (radical(m), socle(m));
    (0..m.algebra().vertices())
        .all(|v| same_span(&r.per_vertex[v], &s.per_vertex[v], m.block_dim(v)))
}

/// `(t | s)`: top multiplicities and socle multiplicities.
///
/// Strict mode requires `soc M = rad M` (no simple or projective summands).
/// Tolerant mode reports the radical multiplicities as `s`, which agrees
/// with the socle in the strict case and gives `(1 | 0)` for a simple module.
pub fn dim_vector(m: &ModuleRep, tolerant: bool) -> Result<DimVector> {
    let to_i64 = |v: Vec<usize>| v.into_iter().map(|x| x as i64).collect::<Vec<_>>();
    let t = to_i64(top_dims(m));
    if tolerant {
        return Ok(DimVector::new(t, to_i64(radical(m).dims())));
    }
    if !socle_equals_radical(m) {
        return Err(Error::HasSummands);
    }
    Ok(DimVector::new(t, to_i64(socle(m).dims())))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::modcat::{make_c_module, make_dnak_algebra, make_qext_algebra, AlgebraRef};
    use std::sync::Arc;

    fn qext() -> AlgebraRef {
        Arc::new(make_qext_algebra())
    }

    #[test]
    fn c_module_radical_and_socle() {
        let c = make_c_module(&qext(), &RatFun::q()).unwrap();
        let r = radical(&c);
        let s = socle(&c);
        assert_eq!(r.per_vertex[0], vec![vec![RatFun::zero(), RatFun::one()]]);
        assert_eq!(r, s);
        assert_eq!(dim_vector(&c, false).unwrap(), DimVector::new(vec![1], vec![1]));
    }

    #[test]
    fn regular_qext_layers() {
        let l = ModuleRep::projective(qext(), 0);
        assert_eq!(radical(&l).dim(), 3);
        assert_eq!(socle(&l).dim(), 1);
        let z = ModuleRep::zero(qext());
        assert_eq!(radical(&z).dim(), 0);
        assert_eq!(socle(&z).dim(), 0);
    }

    #[test]
    fn covers_and_kernels() {
        let c = make_c_module(&qext(), &RatFun::q()).unwrap();
        let s = syzygy_data(&c).unwrap();
        assert_eq!(s.cover.projective.dim(), 4);
        assert_eq!(s.module.dim(), 2);
        let a = Arc::new(make_dnak_algebra(2).unwrap());
        let s0 = ModuleRep::simple(a.clone(), 0);
        let d = syzygy_data(&s0).unwrap();
        assert_eq!(d.cover.projective.dim(), 4);
        assert_eq!(d.module.dim(), 3);
        let p0 = ModuleRep::projective(a, 0);
        let d = syzygy_data(&p0).unwrap();
        assert_eq!(d.cover.projective.dim(), 4);
        assert_eq!(d.module.dim(), 0);
    }

    #[test]
    fn epi_is_a_surjective_homomorphism() {
        let c = make_c_module(&qext(), &RatFun::q_pow(3)).unwrap();
        let cov = projective_cover(&c);
        let e = cov.epi_full(&c);
        assert_eq!(e.rank(), 2);
        for g in 0..2 {
            assert_eq!(
                e.mul(&cov.projective.action_full(g)),
                c.action_full(g).mul(&e)
            );
        }
    }

    #[test]
    fn stripping() {
        let l = ModuleRep::projective(qext(), 0);
        let st = strip_summands(&l).unwrap();
        assert!(st.core.is_zero());
        assert_eq!(st.projective_count, vec![1]);

        let c = make_c_module(&qext(), &RatFun::q()).unwrap();
        let st = strip_summands(&c).unwrap();
        assert_eq!(st.core, c);
        assert_eq!((st.simple_count, st.projective_count), (vec![0], vec![0]));

        let cs = c.direct_sum(&ModuleRep::simple(qext(), 0)).unwrap();
        let st = strip_summands(&cs).unwrap();
        assert_eq!(st.core.dim(), 2);
        assert_eq!(st.simple_count, vec![1]);
        assert!(socle_equals_radical(&st.core));

        let big = cs.direct_sum(&l).unwrap();
        let st = strip_summands(&big).unwrap();
        assert_eq!(st.core.dim(), 2);
        assert_eq!((st.simple_count, st.projective_count), (vec![1], vec![1]));
    }

    #[test]
    fn dim_vectors() {
        let s = ModuleRep::simple(qext(), 0);
        assert_eq!(dim_vector(&s, false), Err(Error::HasSummands));
        assert_eq!(dim_vector(&s, true).unwrap(), DimVector::new(vec![1], vec![0]));
        let om = syzygy(&s, false).unwrap();
        assert_eq!(dim_vector(&om, false).unwrap(), DimVector::new(vec![2], vec![1]));
    }
}
