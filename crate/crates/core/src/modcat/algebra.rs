use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::exactnum::RatFun;
use crate::linalg::ExactMatrix;

/// The two algebra families with Perron root 2.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Family {
    QExterior,
    DoubleNakayama { rank: usize },
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::QExterior => write!(f, "Q_EXTERIOR"),
            Family::DoubleNakayama { rank } => write!(f, "DOUBLE_NAKAYAMA(rank {rank})"),
        }
    }
}

/// A basis path: idempotent (degree 0), arrow (1) or socle element (2).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BasisElement {
    pub name: String,
    pub source: usize,
    pub target: usize,
    pub degree: usize,
    /// Generator indices `[u, v]` with this element equal to `u * v`
    /// (apply `v` first); a single index for arrows, empty for idempotents.
    pub word: Vec<usize>,
}

type Term = (usize, RatFun);

/// Finite-dimensional basic algebra given by structure constants.
#[derive(Clone, Debug)]
pub struct AlgebraSpec {
    family: Family,
    vertices: usize,
    basis: Vec<BasisElement>,
    // table[u][v] = u * v as a sparse combination of basis elements
    table: Vec<Vec<Vec<Term>>>,
    generators: Vec<usize>,
    idempotents: Vec<usize>,
    socle: Vec<usize>,
}

impl PartialEq for AlgebraSpec {
    fn eq(&self, other: &Self) -> bool {
        self.family == other.family
    }
}

impl Eq for AlgebraSpec {}

impl AlgebraSpec {
    pub fn family(&self) -> Family {
        self.family
    }

    pub fn vertices(&self) -> usize {
        self.vertices
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[BasisElement] {
        &self.basis
    }

    pub fn element(&self, i: usize) -> &BasisElement {
        &self.basis[i]
    }

    /// Basis indices of the arrows, in generator order.
    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    pub fn generator_count(&self) -> usize {
        self.generators.len()
    }

    pub fn generator(&self, g: usize) -> &BasisElement {
        &self.basis[self.generators[g]]
    }

    pub fn generator_names(&self) -> Vec<String> {
        self.generators.iter().map(|&b| self.basis[b].name.clone()).collect()
    }

    pub fn generator_index(&self, name: &str) -> Option<usize> {
        self.generators.iter().position(|&b| self.basis[b].name == name)
    }

    pub fn idempotents(&self) -> &[usize] {
        &self.idempotents
    }

    /// Socle basis: one element per vertex.
    pub fn socle_basis(&self) -> &[usize] {
        &self.socle
    }

    /// Basis indices of the paths starting at `vertex`, i.e. a basis of `A e_vertex`.
    pub fn paths_from(&self, vertex: usize) -> Vec<usize> {
        (0..self.dim()).filter(|&b| self.basis[b].source == vertex).collect()
    }

    pub fn mult_basis(&self, u: usize, v: usize) -> &[Term] {
        &self.table[u][v]
    }

    /// Product of two elements given by coordinates.
    pub fn mul(&self, u: &[RatFun], v: &[RatFun]) -> Vec<RatFun> {
        let mut out = vec![RatFun::zero(); self.dim()];
        for (i, a) in u.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in v.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let ab = a * b;
                for (k, c) in &self.table[i][j] {
                    out[*k] = &out[*k] + &(&ab * c);
                }
            }
        }
        out
    }

    pub fn basis_vector(&self, i: usize) -> Vec<RatFun> {
        let mut v = vec![RatFun::zero(); self.dim()];
        v[i] = RatFun::one();
        v
    }

    /// Matrix of `a -> u * a` in the basis.
    pub fn left_mult_matrix(&self, u: &[RatFun]) -> ExactMatrix {
        let cols: Vec<Vec<RatFun>> = (0..self.dim())
            .map(|b| self.mul(u, &self.basis_vector(b)))
            .collect();
        ExactMatrix::from_columns(self.dim(), &cols)
    }

    /// Matrix of `a -> a * u` in the basis.
    pub fn right_mult_matrix(&self, u: &[RatFun]) -> ExactMatrix {
        let cols: Vec<Vec<RatFun>> = (0..self.dim())
            .map(|b| self.mul(&self.basis_vector(b), u))
            .collect();
        ExactMatrix::from_columns(self.dim(), &cols)
    }

    /// Verifies associativity of the structure constants on all basis triples.
    pub fn check_associative(&self) -> Result<()> {
        let n = self.dim();
        for a in 0..n {
            for b in 0..n {
                let ab = self.mul(&self.basis_vector(a), &self.basis_vector(b));
                for c in 0..n {
                    let cv = self.basis_vector(c);
                    let left = self.mul(&ab, &cv);
                    let bc = self.mul(&self.basis_vector(b), &cv);
                    let right = self.mul(&self.basis_vector(a), &bc);
                    if left != right {
                        return Err(Error::RelationViolated(format!(
                            "({0} {1}) {2} != {0} ({1} {2})",
                            self.basis[a].name, self.basis[b].name, self.basis[c].name
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// Radical cube zero with nonzero square, and each projective has
    /// simple socle on its own vertex.
    pub fn check_structure(&self) -> Result<()> {
        let n = self.dim();
        let rad: Vec<usize> = (0..n).filter(|&b| self.basis[b].degree > 0).collect();
        let mut square_nonzero = false;
        for &a in &rad {
            for &b in &rad {
                if !self.table[a][b].is_empty() {
                    square_nonzero = true;
                }
                for &c in &rad {
                    let ab = self.mul(&self.basis_vector(a), &self.basis_vector(b));
                    if self.mul(&ab, &self.basis_vector(c)).iter().any(|x| !x.is_zero()) {
                        return Err(Error::RelationViolated("J^3 != 0".into()));
                    }
                }
            }
        }
        if !square_nonzero {
            return Err(Error::RelationViolated("J^2 = 0".into()));
        }
        for (v, &s) in self.socle.iter().enumerate() {
            let el = &self.basis[s];
            if el.source != v || el.target != v {
                return Err(Error::RelationViolated(format!(
                    "socle of P_{v} does not lie on vertex {v}"
                )));
            }
            for &g in &self.generators {
                if !self.table[g][s].is_empty() {
                    return Err(Error::RelationViolated(format!(
                        "{} is not in the socle",
                        el.name
                    )));
                }
            }
        }
        Ok(())
    }

    /// `E[i][j]` = multiplicity of `S_j` in `rad P_i / soc P_i`, read off the
    /// degree-one paths.
    pub fn e_matrix(&self) -> ExactMatrix {
        let n = self.vertices;
        let mut e = ExactMatrix::zeros(n, n);
        for &g in &self.generators {
            let el = &self.basis[g];
            let v = e.get(el.source, el.target) + &RatFun::one();
            e.set(el.source, el.target, v);
        }
        e
    }
}

impl Serialize for AlgebraSpec {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.family.serialize(s)
    }
}

impl<'de> Deserialize<'de> for AlgebraSpec {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let f = Family::deserialize(d)?;
        build_family(f).map_err(serde::de::Error::custom)
    }
}

pub fn build_family(f: Family) -> Result<AlgebraSpec> {
    match f {
        Family::QExterior => Ok(make_qext_algebra()),
        Family::DoubleNakayama { rank } => make_dnak_algebra(rank),
    }
}

fn elem(name: &str, source: usize, target: usize, degree: usize, word: Vec<usize>) -> BasisElement {
    BasisElement {
        name: name.into(),
        source,
        target,
        degree,
        word,
    }
}

/// `K<x, y> / (x^2, y^2, xy + q yx)` with basis `1, x, y, xy`.
pub fn make_qext_algebra() -> AlgebraSpec {
    let basis = vec![
        elem("1", 0, 0, 0, vec![]),
        elem("x", 0, 0, 1, vec![0]),
        elem("y", 0, 0, 1, vec![1]),
        elem("xy", 0, 0, 2, vec![0, 1]),
    ];
    let mut table = vec![vec![Vec::new(); 4]; 4];
    for b in 0..4 {
        table[0][b] = vec![(b, RatFun::one())];
        table[b][0] = vec![(b, RatFun::one())];
    }
    table[1][2] = vec![(3, RatFun::one())];
    table[2][1] = vec![(3, -&RatFun::q_pow(-1))];
    let alg = AlgebraSpec {
        family: Family::QExterior,
        vertices: 1,
        basis,
        table,
        generators: vec![1, 2],
        idempotents: vec![0],
        socle: vec![3],
    };
    debug_assert!(alg.check_associative().is_ok());
    alg
}

/// The Double Nakayama algebra on `r` vertices with `t = q^{-r}`.
///
/// Arrows `a_i: i -> i+1`, `b_i: i+1 -> i`; relations `a_{i+1} a_i`,
/// `b_i b_{i+1}`, `b_i a_i + a_{i-1} b_{i-1}` for `i != 0` and
/// `b_0 a_0 + t a_{r-1} b_{r-1}`. The basis of `A e_i` is
/// `e_i, a_i, b_{i-1}, b_i a_i`, at indices `4i .. 4i+3`.
pub fn make_dnak_algebra(r: usize) -> Result<AlgebraSpec> {
    if r < 2 {
        return Err(Error::RankTooSmall(r));
    }
    let e = |i: usize| 4 * (i % r);
    let a = |i: usize| 4 * (i % r) + 1;
    let b = |i: usize| 4 * ((i + 1) % r) + 2;
    let s = |i: usize| 4 * (i % r) + 3;
    let mut basis = Vec::with_capacity(4 * r);
    for i in 0..r {
        let prev = (i + r - 1) % r;
        basis.push(elem(&format!("e{i}"), i, i, 0, vec![]));
        basis.push(elem(&format!("a{i}"), i, (i + 1) % r, 1, vec![i]));
        basis.push(elem(&format!("b{prev}"), i, prev, 1, vec![r + prev]));
        basis.push(elem(&format!("b{i}a{i}"), i, i, 2, vec![r + i, i]));
    }
    let n = 4 * r;
    let mut table = vec![vec![Vec::new(); n]; n];
    for u in 0..n {
        for v in 0..n {
            let (bu, bv) = (&basis[u], &basis[v]);
            if bu.source != bv.target {
                continue;
            }
            if bu.degree == 0 {
                table[u][v] = vec![(v, RatFun::one())];
            } else if bv.degree == 0 {
                table[u][v] = vec![(u, RatFun::one())];
            }
        }
    }
    let t_inv = RatFun::q_pow(r as i64);
    for j in 0..r {
        table[b(j)][a(j)] = vec![(s(j), RatFun::one())];
        let coeff = if (j + 1) % r == 0 { -&t_inv } else { -RatFun::one() };
        table[a(j)][b(j)] = vec![(s(j + 1), coeff)];
    }
    let alg = AlgebraSpec {
        family: Family::DoubleNakayama { rank: r },
        vertices: r,
        basis,
        table,
        generators: (0..r).map(a).chain((0..r).map(b)).collect(),
        idempotents: (0..r).map(e).collect(),
        socle: (0..r).map(s).collect(),
    };
    debug_assert!(alg.check_associative().is_ok());
    Ok(alg)
}

/// Shared handle to an algebra.
pub type AlgebraRef = Arc<AlgebraSpec>;
