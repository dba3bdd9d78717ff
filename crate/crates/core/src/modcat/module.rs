use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{de, Deserialize, Deserializer, Serialize, Serializer};

use super::algebra::{AlgebraRef, AlgebraSpec, Family};
use crate::error::{Error, Result};
use crate::exactnum::RatFun;
use crate::linalg::{echelon_span, ExactMatrix, Matrix};

/// Local coordinates of vectors in one vertex block.
pub type BlockVectors = Vec<Vec<RatFun>>;

/// A finite-dimensional left module.
///
/// The basis is vertex-major: block `i` (a basis of `e_i M`) occupies a
/// contiguous range. For each generator `g: s -> t` only the block
/// `e_t M <- e_s M` of its action is stored, as a `dim_t x dim_s` matrix
/// acting on column vectors.
#[derive(Clone, Debug)]
pub struct ModuleRep {
    algebra: AlgebraRef,
    block_dims: Vec<usize>,
    actions: Vec<ExactMatrix>,
}

impl PartialEq for ModuleRep {
    fn eq(&self, other: &Self) -> bool {
        self.algebra.family() == other.algebra.family()
            && self.block_dims == other.block_dims
            && self.actions == other.actions
    }
}

impl ModuleRep {
    /// Builds a module from action blocks and checks every defining relation.
    pub fn new(algebra: AlgebraRef, block_dims: Vec<usize>, actions: Vec<ExactMatrix>) -> Result<Self> {
        if block_dims.len() != algebra.vertices() {
            return Err(Error::DimensionMismatch(format!(
                "{} blocks for {} vertices",
                block_dims.len(),
                algebra.vertices()
            )));
        }
        if actions.len() != algebra.generator_count() {
            return Err(Error::DimensionMismatch(format!(
                "{} actions for {} generators",
                actions.len(),
                algebra.generator_count()
            )));
        }
        for (g, m) in actions.iter().enumerate() {
            let el = algebra.generator(g);
            if m.rows() != block_dims[el.target] || m.cols() != block_dims[el.source] {
                return Err(Error::DimensionMismatch(format!(
                    "action of {} is {}x{}, expected {}x{}",
                    el.name,
                    m.rows(),
                    m.cols(),
                    block_dims[el.target],
                    block_dims[el.source]
                )));
            }
        }
        let m = ModuleRep {
            algebra,
            block_dims,
            actions,
        };
        m.check_relations()?;
        Ok(m)
    }

    pub(crate) fn new_unchecked(
        algebra: AlgebraRef,
        block_dims: Vec<usize>,
        actions: Vec<ExactMatrix>,
    ) -> Self {
        let m = ModuleRep {
            algebra,
            block_dims,
            actions,
        };
        debug_assert!(m.check_relations().is_ok());
        m
    }

    pub fn algebra(&self) -> &AlgebraSpec {
        &self.algebra
    }

    pub fn algebra_ref(&self) -> &AlgebraRef {
        &self.algebra
    }

    pub fn dim(&self) -> usize {
        self.block_dims.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    pub fn block_dims(&self) -> &[usize] {
        &self.block_dims
    }

    pub fn block_dim(&self, v: usize) -> usize {
        self.block_dims[v]
    }

    pub fn offset(&self, v: usize) -> usize {
        self.block_dims[..v].iter().sum()
    }

    /// Basis indices of each vertex block.
    pub fn blocks(&self) -> Vec<Vec<usize>> {
        (0..self.block_dims.len())
            .map(|v| (self.offset(v)..self.offset(v) + self.block_dims[v]).collect())
            .collect()
    }

    /// The stored block of generator `g`.
    pub fn action(&self, g: usize) -> &ExactMatrix {
        &self.actions[g]
    }

    pub fn actions(&self) -> &[ExactMatrix] {
        &self.actions
    }

    /// Full `dim x dim` matrix of generator `g`.
    pub fn action_full(&self, g: usize) -> ExactMatrix {
        let el = self.algebra.generator(g);
        self.embed_block(el.target, el.source, &self.actions[g])
    }

    pub fn action_by_name(&self, name: &str) -> Option<ExactMatrix> {
        self.algebra.generator_index(name).map(|g| self.action_full(g))
    }

    pub(crate) fn embed_block(&self, t: usize, s: usize, b: &ExactMatrix) -> ExactMatrix {
        let n = self.dim();
        let (ot, os) = (self.offset(t), self.offset(s));
        let mut out = ExactMatrix::zeros(n, n);
        for i in 0..b.rows() {
            for j in 0..b.cols() {
                out.set(ot + i, os + j, b.get(i, j).clone());
            }
        }
        out
    }

    /// Action of basis element `p` as a `dim_target x dim_source` block.
    pub fn elem_block(&self, p: usize) -> ExactMatrix {
        let el = self.algebra.element(p);
        match el.word.as_slice() {
            [] => Matrix::identity(self.block_dims[el.source]),
            [g] => self.actions[*g].clone(),
            words => {
                let mut acc = self.actions[*words.last().unwrap()].clone();
                for g in words[..words.len() - 1].iter().rev() {
                    acc = self.actions[*g].mul(&acc);
                }
                acc
            }
        }
    }

    /// Checks `g h = sum c_w w` for every composable pair of generators.
    pub fn check_relations(&self) -> Result<()> {
        let alg = &self.algebra;
        for g in 0..alg.generator_count() {
            for h in 0..alg.generator_count() {
                let (eg, eh) = (alg.generator(g), alg.generator(h));
                if eg.source != eh.target {
                    continue;
                }
                let lhs = self.actions[g].mul(&self.actions[h]);
                let mut rhs = ExactMatrix::zeros(lhs.rows(), lhs.cols());
                for (w, c) in alg.mult_basis(alg.generators()[g], alg.generators()[h]) {
                    rhs = rhs.add(&self.elem_block(*w).scale(c));
                }
                if lhs != rhs {
                    return Err(Error::RelationViolated(format!(
                        "{} {} on the module",
                        eg.name, eh.name
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn zero(algebra: AlgebraRef) -> Self {
        let n = algebra.vertices();
        let actions = (0..algebra.generator_count())
            .map(|_| ExactMatrix::zeros(0, 0))
            .collect();
        ModuleRep::new_unchecked(algebra, vec![0; n], actions)
    }

    /// The simple module at `vertex`.
    pub fn simple(algebra: AlgebraRef, vertex: usize) -> Self {
        let mut dims = vec![0; algebra.vertices()];
        dims[vertex] = 1;
        let actions = (0..algebra.generator_count())
            .map(|g| {
                let el = algebra.generator(g);
                ExactMatrix::zeros(dims[el.target], dims[el.source])
            })
            .collect();
        ModuleRep::new_unchecked(algebra, dims, actions)
    }

    /// `A e_vertex`, with basis the paths from `vertex` sorted by target and
    /// then degree.
    pub fn projective(algebra: AlgebraRef, vertex: usize) -> Self {
        let mut paths = algebra.paths_from(vertex);
        paths.sort_by_key(|&p| (algebra.element(p).target, algebra.element(p).degree));
        let n = algebra.vertices();
        let mut dims = vec![0; n];
        let mut local = vec![0; algebra.dim()];
        for &p in &paths {
            let t = algebra.element(p).target;
            local[p] = dims[t];
            dims[t] += 1;
        }
        let actions = (0..algebra.generator_count())
            .map(|g| {
                let el = algebra.generator(g);
                let mut m = ExactMatrix::zeros(dims[el.target], dims[el.source]);
                for &p in &paths {
                    if algebra.element(p).target != el.source {
                        continue;
                    }
                    for (w, c) in algebra.mult_basis(algebra.generators()[g], p) {
                        m.set(local[*w], local[p], c.clone());
                    }
                }
                m
            })
            .collect();
        ModuleRep::new_unchecked(algebra, dims, actions)
    }

    /// The regular module `A = P_0 + ... + P_{n-1}`.
    pub fn regular(algebra: AlgebraRef) -> Self {
        let parts: Vec<ModuleRep> = (0..algebra.vertices())
            .map(|v| ModuleRep::projective(algebra.clone(), v))
            .collect();
        ModuleRep::direct_sum_all(algebra, &parts)
    }

    pub fn direct_sum(&self, other: &ModuleRep) -> Result<ModuleRep> {
        if self.algebra.family() != other.algebra.family() {
            return Err(Error::AlgebraMismatch);
        }
        Ok(Self::direct_sum_all(self.algebra.clone(), &[self.clone(), other.clone()]))
    }

    /// Direct sum; within each vertex block the summands appear in order.
    pub fn direct_sum_all(algebra: AlgebraRef, parts: &[ModuleRep]) -> ModuleRep {
        let n = algebra.vertices();
        let dims: Vec<usize> = (0..n).map(|v| parts.iter().map(|p| p.block_dims[v]).sum()).collect();
        let actions = (0..algebra.generator_count())
            .map(|g| {
                let blocks: Vec<&ExactMatrix> = parts.iter().map(|p| &p.actions[g]).collect();
                Matrix::block_diagonal(&blocks)
            })
            .collect();
        ModuleRep::new_unchecked(algebra, dims, actions)
    }

    /// The submodule spanned blockwise by the given local vectors, together
    /// with its inclusion (one `dim_v(M) x dim_v(sub)` block per vertex).
    ///
    /// Each block basis is put in reduced echelon form, so the coordinates of
    /// a vector of the submodule are its entries at the pivot positions.
    pub fn submodule(&self, per_vertex: &[BlockVectors]) -> Result<(ModuleRep, Vec<ExactMatrix>)> {
        let n = self.block_dims.len();
        let spans: Vec<(BlockVectors, Vec<usize>)> = (0..n)
            .map(|v| echelon_span(&per_vertex[v], self.block_dims[v]))
            .collect();
        let dims: Vec<usize> = spans.iter().map(|s| s.0.len()).collect();
        let mut actions = Vec::with_capacity(self.actions.len());
        for g in 0..self.actions.len() {
            let el = self.algebra.generator(g);
            let (src, tgt) = (&spans[el.source], &spans[el.target]);
            let mut m = ExactMatrix::zeros(dims[el.target], dims[el.source]);
            for (k, w) in src.0.iter().enumerate() {
                let image = self.actions[g].mul_vec(w);
                let coords: Vec<RatFun> = tgt.1.iter().map(|&p| image[p].clone()).collect();
                let mut rebuilt = vec![RatFun::zero(); image.len()];
                for (c, b) in coords.iter().zip(&tgt.0) {
                    if c.is_zero() {
                        continue;
                    }
                    for (r, x) in rebuilt.iter_mut().zip(b) {
                        *r = &*r + &(c * x);
                    }
                }
                if rebuilt != image {
                    return Err(Error::InvalidInput(format!(
                        "subspace is not closed under {}",
                        el.name
                    )));
                }
                for (l, c) in coords.into_iter().enumerate() {
                    m.set(l, k, c);
                }
            }
            actions.push(m);
        }
        let incl = spans
            .iter()
            .zip(&self.block_dims)
            .map(|((b, _), &d)| ExactMatrix::from_columns(d, b))
            .collect();
        Ok((
            ModuleRep::new_unchecked(self.algebra.clone(), dims, actions),
            incl,
        ))
    }
}

/// The 2-dimensional module `C(lam)` over the q-exterior algebra.
///
/// Basis `(m, x m)`: `x m = m'`, `y m = lam m'`. These matrices are the
/// transposes of the usual row-vector presentation.
pub fn make_c_module(algebra: &AlgebraRef, lam: &RatFun) -> Result<ModuleRep> {
    if algebra.family() != Family::QExterior {
        return Err(Error::AlgebraMismatch);
    }
    if lam.is_zero() {
        return Err(Error::ZeroParameter);
    }
    let z = RatFun::zero();
    let x = ExactMatrix::from_rows(vec![vec![z.clone(), z.clone()], vec![RatFun::one(), z.clone()]])?;
    let y = ExactMatrix::from_rows(vec![vec![z.clone(), z.clone()], vec![lam.clone(), z]])?;
    ModuleRep::new(algebra.clone(), vec![2], vec![x, y])
}

#[derive(Serialize, Deserialize)]
struct ModuleWire {
    algebra: AlgebraSpec,
    dim: usize,
    blocks: Vec<Vec<usize>>,
    actions: BTreeMap<String, ExactMatrix>,
}

impl Serialize for ModuleRep {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let actions = (0..self.actions.len())
            .map(|g| (self.algebra.generator(g).name.clone(), self.action_full(g)))
            .collect();
        ModuleWire {
            algebra: (*self.algebra).clone(),
            dim: self.dim(),
            blocks: self.blocks(),
            actions,
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for ModuleRep {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let w = ModuleWire::deserialize(d)?;
        from_wire(w).map_err(de::Error::custom)
    }
}

fn from_wire(w: ModuleWire) -> Result<ModuleRep> {
    let alg = Arc::new(w.algebra);
    if w.blocks.len() != alg.vertices() {
        return Err(Error::InvalidInput(format!(
            "{} blocks for {} vertices",
            w.blocks.len(),
            alg.vertices()
        )));
    }
    let order: Vec<usize> = w.blocks.iter().flatten().copied().collect();
    let mut seen = vec![false; w.dim];
    for &i in &order {
        if i >= w.dim || std::mem::replace(&mut seen[i], true) {
            return Err(Error::InvalidInput("blocks do not partition the basis".into()));
        }
    }
    if order.len() != w.dim {
        return Err(Error::InvalidInput("blocks do not partition the basis".into()));
    }
    let dims: Vec<usize> = w.blocks.iter().map(Vec::len).collect();
    let offsets: Vec<usize> = (0..dims.len()).map(|v| dims[..v].iter().sum()).collect();
    let mut actions = Vec::with_capacity(alg.generator_count());
    for g in 0..alg.generator_count() {
        let el = alg.generator(g);
        let full = w
            .actions
            .get(&el.name)
            .ok_or_else(|| Error::InvalidInput(format!("missing action of {}", el.name)))?;
        if full.rows() != w.dim || full.cols() != w.dim {
            return Err(Error::DimensionMismatch(format!(
                "action of {} is not {}x{}",
                el.name, w.dim, w.dim
            )));
        }
        // permute into vertex-major order, then keep the (target, source) block
        let p = full.submatrix(&order, &order);
        for i in 0..w.dim {
            for j in 0..w.dim {
                let in_block = (offsets[el.target]..offsets[el.target] + dims[el.target])
                    .contains(&i)
                    && (offsets[el.source]..offsets[el.source] + dims[el.source]).contains(&j);
                if !in_block && !p.get(i, j).is_zero() {
                    return Err(Error::InvalidInput(format!(
                        "action of {} does not respect the vertex blocks",
                        el.name
                    )));
                }
            }
        }
        let rows: Vec<usize> = (offsets[el.target]..offsets[el.target] + dims[el.target]).collect();
        let cols: Vec<usize> = (offsets[el.source]..offsets[el.source] + dims[el.source]).collect();
        actions.push(p.submatrix(&rows, &cols));
    }
    if let Some(extra) = w.actions.keys().find(|k| alg.generator_index(k).is_none()) {
        return Err(Error::InvalidInput(format!("unknown generator '{extra}'")));
    }
    ModuleRep::new(alg, dims, actions)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::modcat::algebra::{make_dnak_algebra, make_qext_algebra};

    fn qext() -> AlgebraRef {
        Arc::new(make_qext_algebra())
    }

    #[test]
    fn c_module_relations_hold() {
        let m = make_c_module(&qext(), &RatFun::q()).unwrap();
        let x = m.action_by_name("x").unwrap();
        let y = m.action_by_name("y").unwrap();
        let rel = x.mul(&y).add(&y.mul(&x).scale(&RatFun::q()));
        assert!(rel.is_zero());
        assert_eq!(make_c_module(&qext(), &RatFun::zero()), Err(Error::ZeroParameter));
    }

    #[test]
    fn bad_actions_are_rejected() {
        let z = ExactMatrix::zeros(1, 1);
        let one = ExactMatrix::from_ints(&[&[1]]);
        // x acting by a nonzero scalar violates x^2 = 0
        assert!(matches!(
            ModuleRep::new(qext(), vec![1], vec![one, z]),
            Err(Error::RelationViolated(_))
        ));
    }

    #[test]
    fn projectives_have_expected_shape() {
        let l = ModuleRep::projective(qext(), 0);
        assert_eq!(l.block_dims(), &[4]);
        let a = Arc::new(make_dnak_algebra(3).unwrap());
        let p0 = ModuleRep::projective(a.clone(), 0);
        assert_eq!(p0.block_dims(), &[2, 1, 1]);
        let reg = ModuleRep::regular(a);
        assert_eq!(reg.dim(), 12);
        reg.check_relations().unwrap();
    }

    #[test]
    fn json_round_trip_and_block_permutation() {
        let a = Arc::new(make_dnak_algebra(2).unwrap());
        let p = ModuleRep::projective(a, 1);
        let s = serde_json::to_string(&p).unwrap();
        let back: ModuleRep = serde_json::from_str(&s).unwrap();
        assert_eq!(back, p);

        let m = make_c_module(&qext(), &RatFun::q()).unwrap();
        let v = serde_json::to_value(&m).unwrap();
        assert_eq!(v["dim"], 2);
        assert_eq!(v["blocks"], serde_json::json!([[0, 1]]));
        let text = r#"{"algebra":{"family":"Q_EXTERIOR"},"dim":2,"blocks":[[0,1]],
            "actions":{"x":{"rows":2,"cols":2,"entries":[[0,0],[1,0]]},
                       "y":{"rows":2,"cols":2,"entries":[[0,0],["q",0]]}}}"#;
        let parsed: ModuleRep = serde_json::from_str(text).unwrap();
        assert_eq!(parsed, m);
        let broken = text.replace(r#"[[0,0],[1,0]]"#, r#"[[1,0],[1,0]]"#);
        assert!(serde_json::from_str::<ModuleRep>(&broken).is_err());
    }
}
