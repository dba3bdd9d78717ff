//! Self-check suites run by `extfinite verify`.
//!
//! Every check is a pure computation with its own seeded generator, so a
//! suite gives the same statuses and details on every run with a given seed.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::chebyshev::{
    cheb_poly, default_search_bound, detect_periodicity, eigenvalue_row_table, select_nonsingular,
    select_nonsingular_inductive, x_matrix, x_power_blocks,
};
use crate::dynamics::{
    apply_x, check_quadratic_constraint, coefficient_vector_c, expand_3k, extfinite_verdict,
    iterate_dimvec, next_beta, orthogonality_defect, perron_projection, Conclusion, DimVector,
    FamilyTag,
};
use crate::exactnum::{rational, Rational};
use crate::linalg::{
    char_poly, spectral_classify, Certified, ExactMatrix, Field, LambdaClass, Matrix,
    RationalMatrix,
};
use crate::modcat::{
    c_module_parameter, dim_vector, ext_dim, ext_dim_oracle, hom_space, induce,
    is_free_over_qext, make_c_module, make_dnak_algebra, make_qext_algebra, qext_embedding,
    syzygy, AlgebraRef, ModuleRep,
};
use crate::RatFun;

pub const DEFAULT_SEED: u64 = 0x5EED_2024;
pub const REPORT_SCHEMA: u32 = 1;

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Linalg,
    Chebyshev,
    Modcat,
    Dynamics,
    All,
}

impl Suite {
    pub const NAMES: [&'static str; 5] = ["linalg", "chebyshev", "modcat", "dynamics", "all"];

    fn includes(self, other: Suite) -> bool {
        self == Suite::All || self == other
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Suite::Linalg => "linalg",
            Suite::Chebyshev => "chebyshev",
            Suite::Modcat => "modcat",
            Suite::Dynamics => "dynamics",
            Suite::All => "all",
        })
    }
}

impl FromStr for Suite {
    type Err = crate::Error;

    fn from_str(s: &str) -> crate::Result<Self> {
        match s {
            "linalg" => Ok(Suite::Linalg),
            "chebyshev" => Ok(Suite::Chebyshev),
            "modcat" => Ok(Suite::Modcat),
            "dynamics" => Ok(Suite::Dynamics),
            "all" => Ok(Suite::All),
            _ => Err(crate::Error::Parse(format!("unknown suite '{s}'"))),
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct CheckResult {
    pub id: String,
    pub suite: Suite,
    pub title: String,
    pub passed: bool,
    pub detail: String,
    pub millis: u64,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct SuiteReport {
    pub schema: u32,
    pub suite: Suite,
    pub seed: u64,
    pub passed: bool,
    pub checks: Vec<CheckResult>,
    pub total_millis: u64,
}

type Outcome = std::result::Result<String, String>;

struct Check {
    id: &'static str,
    suite: Suite,
    title: &'static str,
    run: fn(&mut ChaCha8Rng) -> Outcome,
}

const CHECKS: &[Check] = &[
    Check {
        id: "linalg.classify",
        suite: Suite::Linalg,
        title: "Perron classification of reference matrices",
        run: linalg_classify,
    },
    Check {
        id: "linalg.char_poly",
        suite: Suite::Linalg,
        title: "characteristic polynomial against det(cI - E)",
        run: linalg_char_poly,
    },
    Check {
        id: "chebyshev.golden_rows",
        suite: Suite::Chebyshev,
        title: "row table for eigenvalues 1, -1 and period of the swap matrix",
        run: cheb_golden_rows,
    },
    Check {
        id: "chebyshev.path_char_poly",
        suite: Suite::Chebyshev,
        title: "f_k is the characteristic polynomial of the path A_k",
        run: cheb_path_char_poly,
    },
    Check {
        id: "chebyshev.x_power_blocks",
        suite: Suite::Chebyshev,
        title: "block form of X^k against literal powers",
        run: cheb_x_power_blocks,
    },
    Check {
        id: "chebyshev.select_nonsingular",
        suite: Suite::Chebyshev,
        title: "nonsingular row selection",
        run: cheb_select,
    },
    Check {
        id: "modcat.dimvec_recursion",
        suite: Suite::Modcat,
        title: "dim_vector(Omega M) = X dim_vector(M) along orbits",
        run: modcat_dimvec_recursion,
    },
    Check {
        id: "modcat.omega_c_parameters",
        suite: Suite::Modcat,
        title: "Omega^m C(q) = C(q^{1-m})",
        run: modcat_omega_parameters,
    },
    Check {
        id: "modcat.ext_c_modules",
        suite: Suite::Modcat,
        title: "Ext between C-modules",
        run: modcat_ext_c,
    },
    Check {
        id: "modcat.embedding",
        suite: Suite::Modcat,
        title: "q-exterior subalgebra of A(q^{-r}) and freeness",
        run: modcat_embedding,
    },
    Check {
        id: "modcat.induced_hom_ext",
        suite: Suite::Modcat,
        title: "Hom and Ext of induced C-modules",
        run: modcat_induced,
    },
    Check {
        id: "modcat.parity",
        suite: Suite::Modcat,
        title: "parity of syzygy dimensions",
        run: modcat_parity,
    },
    Check {
        id: "dynamics.defects",
        suite: Suite::Dynamics,
        title: "orthogonality defects and their Chebyshev expansion",
        run: dynamics_defects,
    },
    Check {
        id: "dynamics.certificates",
        suite: Suite::Dynamics,
        title: "violation certificates for lambda > 2",
        run: dynamics_certificates,
    },
    Check {
        id: "dynamics.beta_recursion",
        suite: Suite::Dynamics,
        title: "beta recursion and the quadratic identity on lambda = 2 orbits",
        run: dynamics_beta_recursion,
    },
    Check {
        id: "dynamics.verdicts",
        suite: Suite::Dynamics,
        title: "existence verdicts",
        run: dynamics_verdicts,
    },
];

/// Ids of the checks a suite runs, in report order.
pub fn check_ids(suite: Suite) -> Vec<&'static str> {
    CHECKS
        .iter()
        .filter(|c| suite.includes(c.suite))
        .map(|c| c.id)
        .collect()
}

/// Runs the checks of `suite` concurrently; check `i` draws from a generator
/// seeded with `seed + i`.
pub fn run_suite(suite: Suite, seed: u64) -> SuiteReport {
    let start = Instant::now();
    let selected: Vec<(usize, &Check)> = CHECKS
        .iter()
        .enumerate()
        .filter(|(_, c)| suite.includes(c.suite))
        .collect();
    let checks: Vec<CheckResult> = std::thread::scope(|scope| {
        let handles: Vec<_> = selected
            .iter()
            .map(|&(i, c)| scope.spawn(move || run_check(c, seed.wrapping_add(i as u64))))
            .collect();
        handles
            .into_iter()
            .zip(&selected)
            .map(|(h, (_, c))| {
                h.join().unwrap_or_else(|_| CheckResult {
                    id: c.id.into(),
                    suite: c.suite,
                    title: c.title.into(),
                    passed: false,
                    detail: "check panicked".into(),
                    millis: 0,
                })
            })
            .collect()
    });
    SuiteReport {
        schema: REPORT_SCHEMA,
        suite,
        seed,
        passed: checks.iter().all(|c| c.passed),
        checks,
        total_millis: start.elapsed().as_millis() as u64,
    }
}

fn run_check(c: &Check, seed: u64) -> CheckResult {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (passed, detail) = match (c.run)(&mut rng) {
        Ok(d) => (true, d),
        Err(d) => (false, d),
    };
    CheckResult {
        id: c.id.into(),
        suite: c.suite,
        title: c.title.into(),
        passed,
        detail,
        millis: start.elapsed().as_millis() as u64,
    }
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> std::result::Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err<E: fmt::Display>(e: E) -> String {
    e.to_string()
}

fn ints(rows: &[Vec<i64>]) -> ExactMatrix {
    let refs: Vec<&[i64]> = rows.iter().map(Vec::as_slice).collect();
    ExactMatrix::from_ints(&refs)
}

fn random_symmetric(rng: &mut ChaCha8Rng, n: usize, max: i64) -> ExactMatrix {
    let mut rows = vec![vec![0i64; n]; n];
    for i in 0..n {
        for j in i..n {
            let v = rng.gen_range(0..=max);
            rows[i][j] = v;
            rows[j][i] = v;
        }
    }
    ints(&rows)
}

fn random_dimvec(rng: &mut ChaCha8Rng, n: usize, max: i64) -> DimVector {
    loop {
        let t: Vec<i64> = (0..n).map(|_| rng.gen_range(0..=max)).collect();
        let s: Vec<i64> = (0..n).map(|_| rng.gen_range(0..=max)).collect();
        let v = DimVector::new(t, s);
        if !v.is_zero() {
            return v;
        }
    }
}

fn path(k: usize) -> ExactMatrix {
    let rows: Vec<Vec<i64>> = (0..k)
        .map(|i| (0..k).map(|j| i64::from(i.abs_diff(j) == 1)).collect())
        .collect();
    ints(&rows)
}

pub(crate) fn cycle(r: usize) -> ExactMatrix {
    let mut rows = vec![vec![0i64; r]; r];
    for (i, row) in rows.iter_mut().enumerate() {
        row[(i + 1) % r] += 1;
        row[(i + r - 1) % r] += 1;
    }
    ints(&rows)
}

fn qext() -> AlgebraRef {
    Arc::new(make_qext_algebra())
}

fn c_module(k: i64) -> std::result::Result<ModuleRep, String> {
    make_c_module(&qext(), &RatFun::q_pow(k)).map_err(err)
}

fn linalg_classify(_: &mut ChaCha8Rng) -> Outcome {
    let cases: [(ExactMatrix, LambdaClass); 5] = [
        (ints(&[vec![2]]), LambdaClass::EqualTwo),
        (ints(&[vec![0, 1], vec![1, 0]]), LambdaClass::BelowTwo),
        (ints(&[vec![0, 3], vec![3, 0]]), LambdaClass::AboveTwo),
        (cycle(4), LambdaClass::EqualTwo),
        (path(3), LambdaClass::BelowTwo),
    ];
    for (e, class) in &cases {
        let sc = spectral_classify(e).map_err(err)?;
        ensure(sc.class == *class, || format!("{e}: got {}", sc.class))?;
        ensure(sc.perron_multiplicity_one, || format!("{e}: Perron root not simple"))?;
        ensure(sc.perron_vector.iter().all(Certified::is_positive), || {
            format!("{e}: Perron vector not positive")
        })?;
    }
    let sc = spectral_classify(&path(3)).map_err(err)?;
    let i = sc.perron_root.interval();
    ensure(&i.lo * &i.lo <= rational(2) && &i.hi * &i.hi >= rational(2), || {
        format!("sqrt 2 not enclosed by {i}")
    })?;
    Ok(format!("{} matrices classified", cases.len()))
}

fn linalg_char_poly(rng: &mut ChaCha8Rng) -> Outcome {
    for _ in 0..20 {
        let n = rng.gen_range(1..=5);
        let e = random_symmetric(rng, n, 3);
        let p = char_poly(&e).map_err(err)?;
        let er: RationalMatrix = e.to_rational().map_err(err)?;
        for c in -3..=3 {
            let shifted = Matrix::identity(n).scale(&rational(c)).sub(&er);
            ensure(shifted.det().map_err(err)? == p.eval(&rational(c)), || {
                format!("char poly of {e} wrong at {c}")
            })?;
        }
    }
    Ok("20 random matrices, 7 points each".into())
}

fn cheb_golden_rows(_: &mut ChaCha8Rng) -> Outcome {
    let period: [[i64; 2]; 6] = [[1, -1], [0, 0], [-1, 1], [-1, -1], [0, 0], [1, 1]];
    let table = eigenvalue_row_table(&[rational(1), rational(-1)], 1, 12).map_err(err)?;
    for (m, row) in table.iter().enumerate() {
        let want: Vec<Rational> = period[m % 6].iter().map(|&x| rational(x)).collect();
        ensure(*row == want, || format!("row {} is {:?}", m + 1, row))?;
    }
    let swap = ints(&[vec![0, 1], vec![1, 0]]);
    let p = detect_periodicity(&swap, 20).map_err(err)?;
    ensure(p.map(|p| p.period) == Some(6), || format!("period {p:?}"))?;
    Ok("12 rows exact, period 6".into())
}

fn cheb_path_char_poly(_: &mut ChaCha8Rng) -> Outcome {
    for k in 1..=8 {
        let p = char_poly(&path(k)).map_err(err)?;
        ensure(p == cheb_poly(k), || format!("k = {k}: {p} vs {}", cheb_poly(k)))?;
    }
    Ok("k = 1..8".into())
}

fn cheb_x_power_blocks(rng: &mut ChaCha8Rng) -> Outcome {
    for _ in 0..50 {
        let n = rng.gen_range(1..=5);
        let e = random_symmetric(rng, n, 3);
        let x = x_matrix(&e).map_err(err)?;
        let mut power = Matrix::identity(2 * n);
        for k in 0..=20 {
            let blocks = x_power_blocks(&e, k).map_err(err)?;
            ensure(blocks.to_matrix() == power, || format!("E = {e}, k = {k}"))?;
            power = power.mul(&x);
        }
    }
    Ok("50 matrices, k = 0..20".into())
}

fn cheb_select(_: &mut ChaCha8Rng) -> Outcome {
    let sets: [&[i64]; 4] = [&[1, -1], &[2, 0], &[2, 1, -1], &[2, 0, -2]];
    let mut count = 0;
    for set in sets {
        let mus: Vec<Rational> = set.iter().map(|&x| rational(x)).collect();
        for floor in [0, 3, 7] {
            let bound = default_search_bound(mus.len(), floor);
            for sel in [
                select_nonsingular(&mus, floor, bound).map_err(err)?,
                select_nonsingular_inductive(&mus, floor, bound).map_err(err)?,
            ] {
                let sel = sel.ok_or_else(|| format!("{set:?} above {floor}: none found"))?;
                ensure(sel.n > floor, || format!("{sel:?} not above {floor}"))?;
                let det = sel.matrix(&mus).det().map_err(err)?;
                ensure(!det.is_zero(), || format!("{set:?}: {sel:?} singular"))?;
                count += 1;
            }
        }
    }
    Ok(format!("{count} selections nonsingular"))
}

fn modcat_dimvec_recursion(_: &mut ChaCha8Rng) -> Outcome {
    let mut modules = vec![c_module(1)?];
    for r in 2..=4 {
        modules.push(induce(&modules[0], r).map_err(err)?);
    }
    for m in &modules {
        let e = m.algebra().e_matrix();
        let mut cur = m.clone();
        let mut v = dim_vector(&cur, false).map_err(err)?;
        for k in 1..=8 {
            cur = syzygy(&cur, false).map_err(err)?;
            let next = dim_vector(&cur, false).map_err(err)?;
            let want = apply_x(&e, &v).map_err(err)?;
            ensure(next == want, || {
                format!("{} step {k}: {next} vs {want}", m.algebra().family())
            })?;
            v = next;
        }
    }
    Ok(format!("{} modules, depth 8", modules.len()))
}

fn modcat_omega_parameters(_: &mut ChaCha8Rng) -> Outcome {
    let mut m = c_module(1)?;
    for k in 1..=6 {
        m = syzygy(&m, false).map_err(err)?;
        let lam = c_module_parameter(&m);
        ensure(lam == Some(RatFun::q_pow(1 - k)), || {
            format!("m = {k}: parameter {lam:?}")
        })?;
    }
    Ok("m = 1..6".into())
}

fn modcat_ext_c(_: &mut ChaCha8Rng) -> Outcome {
    let lam = RatFun::q();
    let target = c_module(1)?;
    let mut generic: Vec<RatFun> = (-5..=5)
        .filter(|j| *j != 0 && *j != 1)
        .map(|j| &lam * &RatFun::q_pow(j))
        .collect();
    generic.push(&lam * &RatFun::from_int(2));
    for mu in &generic {
        let src = make_c_module(&qext(), mu).map_err(err)?;
        let e = ext_dim(&src, &target, 1).map_err(err)?;
        let o = ext_dim_oracle(&src, &target, 1).map_err(err)?;
        ensure(e == 0 && o == 0, || format!("mu = {mu}: Ext^1 = {e}, oracle {o}"))?;
    }
    for mu in [lam.clone(), &lam * &RatFun::q()] {
        let src = make_c_module(&qext(), &mu).map_err(err)?;
        let e = ext_dim(&src, &target, 1).map_err(err)?;
        let o = ext_dim_oracle(&src, &target, 1).map_err(err)?;
        ensure(e == 1 && o == 1, || format!("mu = {mu}: Ext^1 = {e}, oracle {o}"))?;
    }
    for k in 2..=8 {
        let e = ext_dim(&target, &target, k).map_err(err)?;
        ensure(e == 0, || format!("Ext^{k}(C, C) = {e}"))?;
    }
    Ok(format!("{} generic parameters, 2 exceptional, k = 2..8", generic.len()))
}

fn modcat_embedding(_: &mut ChaCha8Rng) -> Outcome {
    let c = c_module(1)?;
    for r in 2..=4 {
        let a = make_dnak_algebra(r).map_err(err)?;
        qext_embedding(&a).map_err(err)?;
        ensure(is_free_over_qext(&a).map_err(err)?, || format!("r = {r}: not free"))?;
        let ind = induce(&c, r).map_err(err)?;
        ensure(ind.dim() == 2 * r, || format!("r = {r}: dim {}", ind.dim()))?;
    }
    Ok("r = 2..4".into())
}

fn modcat_induced(_: &mut ChaCha8Rng) -> Outcome {
    for r in 2..=3 {
        let base = induce(&c_module(1)?, r).map_err(err)?;
        for s in 1..=4 {
            let src = induce(&c_module(1 - s)?, r).map_err(err)?;
            let h = hom_space(&src, &base).map_err(err)?;
            ensure(h.dim() == r && h.verify(), || {
                format!("r = {r}, shift {s}: Hom dimension {}", h.dim())
            })?;
        }
        for k in 2..=6 {
            let e = ext_dim(&base, &base, k).map_err(err)?;
            let o = ext_dim_oracle(&base, &base, k).map_err(err)?;
            ensure(e == 0 && o == 0, || format!("r = {r}: Ext^{k} = {e}, oracle {o}"))?;
        }
    }
    Ok("r = 2, 3".into())
}

fn modcat_parity(_: &mut ChaCha8Rng) -> Outcome {
    let c = c_module(1)?;
    let mut cases = Vec::new();
    cases.push((qext(), c.clone()));
    for r in 2..=3 {
        let a: AlgebraRef = Arc::new(make_dnak_algebra(r).map_err(err)?);
        cases.push((a, induce(&c, r).map_err(err)?));
    }
    for (alg, cm) in cases {
        for v in 0..alg.vertices() {
            let mut m = ModuleRep::simple(alg.clone(), v);
            for k in 0..=8 {
                ensure(m.dim() % 2 == 1, || {
                    format!("{}: Omega^{k} S_{v} has dim {}", alg.family(), m.dim())
                })?;
                m = syzygy(&m, false).map_err(err)?;
            }
        }
        let mut m = cm;
        for k in 0..=8 {
            ensure(m.dim() % 2 == 0, || format!("{}: Omega^{k} C odd", alg.family()))?;
            m = syzygy(&m, false).map_err(err)?;
        }
    }
    Ok("k = 0..8, ranks 1..3".into())
}

fn dynamics_defects(rng: &mut ChaCha8Rng) -> Outcome {
    let c = c_module(1)?;
    let mut modules = vec![c.clone()];
    for r in 2..=3 {
        modules.push(induce(&c, r).map_err(err)?);
    }
    for m in &modules {
        let e = m.algebra().e_matrix();
        let v = dim_vector(m, false).map_err(err)?;
        for k in 1..=10 {
            let d = orthogonality_defect(&e, &v, k).map_err(err)?;
            ensure(d.is_zero(), || format!("{v} at k = {k}: defect {d}"))?;
        }
    }
    for _ in 0..100 {
        let n = rng.gen_range(1..=4);
        let e = random_symmetric(rng, n, 3);
        let v = random_dimvec(rng, n, 4);
        let k = rng.gen_range(1..=8);
        let a = orthogonality_defect(&e, &v, k).map_err(err)?;
        let b = expand_3k(&e, &v, k).map_err(err)?;
        ensure(a == b, || format!("E = {e}, v = {v}, k = {k}: {a} vs {b}"))?;
    }
    Ok("3 module vectors at k = 1..10, 100 random expansions".into())
}

/// A reason why no ext-finite module has dimension vector `v`.
fn violation(e: &ExactMatrix, v: &DimVector) -> std::result::Result<Option<String>, String> {
    match coefficient_vector_c(e, v) {
        Ok(cs) => {
            if let Some(c) = cs.iter().find(|c| !c.c.is_zero()) {
                return Ok(Some(format!("c = {} at eigenvalue {}", c.c, c.eigenvalue)));
            }
        }
        Err(crate::Error::IrrationalSpectrum) => {}
        Err(e) => return Err(err(e)),
    }
    let sc = spectral_classify(e).map_err(err)?;
    let both = v.t.iter().any(|&x| x != 0) && v.s.iter().any(|&x| x != 0);
    if sc.perron_multiplicity_one && both {
        let p = perron_projection(e, v).map_err(err)?;
        let res = check_quadratic_constraint(&p).map_err(err)?;
        if !res.interval().contains_zero() {
            return Ok(Some(format!("quadratic residual {res}")));
        }
    }
    for k in 1..=crate::dynamics::DEFAULT_DEPTH {
        let d = orthogonality_defect(e, v, k).map_err(err)?;
        if d != Rational::from_integer(0.into()) {
            return Ok(Some(format!("defect {d} at k = {k}")));
        }
    }
    Ok(None)
}

fn dynamics_certificates(rng: &mut ChaCha8Rng) -> Outcome {
    let cases = [
        ints(&[vec![3]]),
        ints(&[vec![0, 3], vec![3, 0]]),
        ints(&[vec![1, 1, 1], vec![1, 0, 1], vec![1, 1, 0]]),
    ];
    for e in &cases {
        let sc = spectral_classify(e).map_err(err)?;
        ensure(sc.class == LambdaClass::AboveTwo, || format!("{e}: {}", sc.class))?;
        let verdict = extfinite_verdict(e, None, None).map_err(err)?;
        ensure(verdict.conclusion == Conclusion::NoneExist, || {
            format!("{e}: {}", verdict.conclusion)
        })?;
        for _ in 0..20 {
            let v = random_dimvec(rng, e.rows(), 6);
            let why = violation(e, &v)?;
            ensure(why.is_some(), || format!("{e}: no certificate for {v}"))?;
        }
    }
    Ok("3 matrices, 20 vectors each".into())
}

fn dynamics_beta_recursion(_: &mut ChaCha8Rng) -> Outcome {
    let two = ints(&[vec![2]]);
    let orbit = iterate_dimvec(&two, &DimVector::new(vec![2], vec![1]), 10).map_err(err)?;
    let mut orbits = vec![(two, orbit)];
    let c = c_module(1)?;
    let mut starts = vec![c.clone(), ModuleRep::simple(qext(), 0)];
    for r in 2..=3 {
        starts.push(induce(&c, r).map_err(err)?);
        let a: AlgebraRef = Arc::new(make_dnak_algebra(r).map_err(err)?);
        starts.push(ModuleRep::simple(a, 0));
    }
    for m in &starts {
        let e = m.algebra().e_matrix();
        let mut cur = syzygy(m, false).map_err(err)?;
        let mut vs = Vec::new();
        for _ in 0..6 {
            vs.push(dim_vector(&cur, false).map_err(err)?);
            cur = syzygy(&cur, false).map_err(err)?;
        }
        orbits.push((e, vs));
    }
    let mut fixed = 0;
    for (e, vs) in &orbits {
        for w in vs.windows(2) {
            let p = perron_projection(e, &w[0]).map_err(err)?;
            let q = perron_projection(e, &w[1]).map_err(err)?;
            let pred = next_beta(&p).map_err(err)?;
            ensure(Certified::Exact(pred.clone()) == q.beta1, || {
                format!("{} -> {}: predicted {pred}", w[0], w[1])
            })?;
            ensure(q.alpha1 == p.beta1, || format!("{} -> {}: alpha shift", w[0], w[1]))?;
        }
        if vs.windows(2).all(|w| w[0] == w[1]) {
            for v in vs {
                let p = perron_projection(e, v).map_err(err)?;
                let res = check_quadratic_constraint(&p).map_err(err)?;
                ensure(res == Certified::Exact(<Rational as Field>::zero()), || {
                    format!("{v}: residual {res}")
                })?;
            }
            fixed += 1;
        }
    }
    ensure(fixed >= 3, || format!("only {fixed} fixed-point orbits"))?;
    Ok(format!("{} orbits, {fixed} at the fixed point", orbits.len()))
}

fn dynamics_verdicts(_: &mut ChaCha8Rng) -> Outcome {
    let cases = [
        (ints(&[vec![2]]), Some(FamilyTag::QExterior), Some(true), Conclusion::ExtFiniteExists),
        (cycle(4), Some(FamilyTag::DoubleNakayama), Some(true), Conclusion::ExtFiniteExists),
        (ints(&[vec![0, 3], vec![3, 0]]), None, None, Conclusion::NoneExist),
        (ints(&[vec![0, 1], vec![1, 0]]), None, None, Conclusion::NoneExist),
        (cycle(3), None, None, Conclusion::NeedsFamilyData),
    ];
    for (e, fam, generic, want) in &cases {
        let v = extfinite_verdict(e, *fam, *generic).map_err(err)?;
        ensure(v.conclusion == *want, || format!("{e}: {} not {want}", v.conclusion))?;
    }
    Ok(format!("{} verdicts", cases.len()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_names_parse() {
        for name in Suite::NAMES {
            let s: Suite = name.parse().unwrap();
            assert_eq!(s.to_string(), name);
        }
        assert!("bogus".parse::<Suite>().is_err());
    }

    #[test]
    fn chebyshev_suite_passes_and_round_trips() {
        let r = run_suite(Suite::Chebyshev, DEFAULT_SEED);
        assert!(r.passed, "{r:?}");
        assert_eq!(r.checks.len(), check_ids(Suite::Chebyshev).len());
        let s = serde_json::to_string(&r).unwrap();
        assert!(s.contains("\"schema\":1"));
        assert_eq!(serde_json::from_str::<SuiteReport>(&s).unwrap(), r);
    }

    #[test]
    fn checks_are_partitioned_by_suite() {
        let total: usize = [Suite::Linalg, Suite::Chebyshev, Suite::Modcat, Suite::Dynamics]
            .iter()
            .map(|s| check_ids(*s).len())
            .sum();
        assert_eq!(total, check_ids(Suite::All).len());
    }
}
