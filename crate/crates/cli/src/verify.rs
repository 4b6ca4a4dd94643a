//! The consolidated verification suite.
//!
//! Each criterion is a function returning a [`CriterionResult`]. Details
//! are built only from exact values so that repeated runs give identical
//! reports. Wall-clock budgets affect only the pass flag.

use std::time::{Duration, Instant};

use num_bigint::BigInt;
use serde::Serialize;

use tropvertex::exactnum::{int, rat, GaussianRational};
use tropvertex::realenum::{
    eval_minus_one, minus_one_from_invariants, spectrum_polynomial, spectrum_rhs, spectrum_value, welschinger_spectrum,
};
use tropvertex::scattering::{extract_ck, factor, reconstruct, Ordering, ScatteringResult};
use tropvertex::torus::Monomial;
use tropvertex::tropical::TropicalProblem;
use tropvertex::vertexgroup::commutator;
use tropvertex::{Evaluation, Mode, RationalFunction, TruncatedSeries};

use crate::invariants_with_retry;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CriterionResult {
    pub id: u32,
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl CriterionResult {
    /// `PASS [n] name: detail` or `FAIL [n] name: detail`.
    pub fn line(&self) -> String {
        format!("{} [{}] {}: {}", if self.passed { "PASS" } else { "FAIL" }, self.id, self.name, self.detail)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    pub criteria: Vec<CriterionResult>,
}

impl VerifyReport {
    pub fn all_passed(&self) -> bool {
        self.criteria.iter().all(|c| c.passed)
    }
}

/// Parameter grid for the reconstruction and specialization checks.
pub const SCATTERING_GRID: [(i64, i64); 4] = [(1, 1), (1, 2), (2, 2), (3, 2)];
const SCATTERING_ORDER: u32 = 6;
/// Seeds used wherever several configurations are compared.
pub const SUITE_SEEDS: [u64; 5] = [1, 2, 3, 4, 5];

/// Tropical problems exercised by the suite criteria.
pub fn suite() -> Vec<TropicalProblem> {
    let p = |a, b, k, al: &[i64], alp: &[i64]| {
        TropicalProblem::new(a, b, k, al.to_vec(), alp.to_vec()).expect("valid suite problem")
    };
    vec![
        p(1, 1, 1, &[1], &[1]),
        p(2, 1, 1, &[2], &[1]),
        p(2, 1, 1, &[1, 1], &[1]),
        p(1, 1, 2, &[1, 1], &[1, 1]),
        p(3, 2, 1, &[1, 2], &[1, 1]),
        p(1, 1, 3, &[1, 2], &[3]),
        p(1, 1, 3, &[1, 1, 1], &[2, 1]),
    ]
}

struct Check {
    id: u32,
    name: &'static str,
    failures: Vec<String>,
    notes: Vec<String>,
    start: Instant,
    budget: Option<Duration>,
}

impl Check {
    fn new(id: u32, name: &'static str, budget: Option<Duration>) -> Self {
        Self { id, name, failures: vec![], notes: vec![], start: Instant::now(), budget }
    }

    fn expect(&mut self, ok: bool, what: impl FnOnce() -> String) {
        if !ok {
            self.failures.push(what());
        }
    }

    fn note(&mut self, s: impl Into<String>) {
        self.notes.push(s.into());
    }

    fn finish(mut self) -> CriterionResult {
        if let Some(b) = self.budget {
            if self.start.elapsed() > b {
                self.failures.push(format!("exceeded the {} s budget", b.as_secs()));
            }
        }
        let passed = self.failures.is_empty();
        let detail = if passed { self.notes.join("; ") } else { self.failures.join("; ") };
        CriterionResult { id: self.id, name: self.name.into(), passed, detail }
    }
}

fn factor_grid_point(l1: i64, l2: i64, mode: Mode) -> Result<(ScatteringResult, bool), String> {
    let c = commutator(l1, l2, mode, SCATTERING_ORDER).map_err(|e| e.to_string())?;
    let r = factor(&c, Ordering::default()).map_err(|e| e.to_string())?;
    let ok = reconstruct(&r).map_err(|e| e.to_string())? == c;
    Ok((r, ok))
}

/// Pentagon: one wall `(1,1)` with `c^k = (−1)^{k+1}/k`, and the commutator
/// equals the single-wall automorphism of `1 + t²xy` built directly.
pub fn criterion_1() -> CriterionResult {
    let mut ch = Check::new(1, "pentagon factorization", Some(Duration::from_secs(1)));
    let n = 8;
    let mode = Mode::Commutative;
    match commutator(1, 1, mode, n) {
        Err(e) => ch.expect(false, || e.to_string()),
        Ok(c) => {
            let f = &TruncatedSeries::one(mode, n)
                + &TruncatedSeries::monomial(mode, n, 2, Monomial::new(1, 1), RationalFunction::one());
            let oracle_x = f.inverse().map(|fi| &fi * &TruncatedSeries::x(mode, n));
            let oracle_y = &f * &TruncatedSeries::y(mode, n);
            ch.expect(oracle_x.as_ref() == Ok(c.img_x()) && &oracle_y == c.img_y(), || {
                "commutator differs from the single-wall oracle".into()
            });
            match factor(&c, Ordering::default()) {
                Err(e) => ch.expect(false, || e.to_string()),
                Ok(r) => {
                    ch.expect(r.directions() == vec![(1, 1)], || format!("walls {:?}", r.directions()));
                    let cs: Vec<String> = (1..=4u32)
                        .map(|k| extract_ck(&r, 1, 1, k).map(|c| c.to_string()).unwrap_or_default())
                        .collect();
                    for k in 1..=4u32 {
                        let want: RationalFunction = rat(if k % 2 == 1 { 1 } else { -1 }, k as i64).into();
                        ch.expect(extract_ck(&r, 1, 1, k).as_ref() == Ok(&want), || {
                            format!("c^{k} = {}", cs[k as usize - 1])
                        });
                    }
                    ch.note(format!("walls {:?}, c^1..c^4 = [{}]", r.directions(), cs.join(", ")));
                }
            }
        }
    }
    ch.finish()
}

/// `reconstruct(factor(C)) = C` over the grid in both modes.
pub fn criterion_2() -> CriterionResult {
    let mut ch = Check::new(2, "reconstruction", Some(Duration::from_secs(60)));
    let mut walls = vec![];
    for mode in [Mode::Commutative, Mode::Quantum] {
        for (l1, l2) in SCATTERING_GRID {
            match factor_grid_point(l1, l2, mode) {
                Ok((r, ok)) => {
                    ch.expect(ok, || format!("{mode} ({l1},{l2}) does not reconstruct"));
                    walls.push(format!("{mode} ({l1},{l2}): {}", r.walls.len()));
                }
                Err(e) => ch.expect(false, || format!("{mode} ({l1},{l2}): {e}")),
            }
        }
    }
    ch.note(format!("exact to t^{SCATTERING_ORDER}; wall counts {}", walls.join(", ")));
    ch.finish()
}

/// Quantum wall coefficients at `s = 1` equal the commutative ones.
pub fn criterion_3() -> CriterionResult {
    let mut ch = Check::new(3, "q = 1 specialization of wall coefficients", None);
    let mut count = 0;
    for (l1, l2) in SCATTERING_GRID {
        let q = factor_grid_point(l1, l2, Mode::Quantum);
        let c = factor_grid_point(l1, l2, Mode::Commutative);
        match (q, c) {
            (Ok((q, _)), Ok((c, _))) => {
                let (qs, cs) = (q.coefficients_at_s_one(), c.coefficients_at_s_one());
                match (qs, cs) {
                    (Ok(qs), Ok(cs)) => {
                        count += cs.len();
                        ch.expect(qs == cs, || format!("({l1},{l2}): coefficients differ at s = 1"));
                    }
                    (Err(e), _) | (_, Err(e)) => ch.expect(false, || format!("({l1},{l2}): {e}")),
                }
            }
            (Err(e), _) | (_, Err(e)) => ch.expect(false, || format!("({l1},{l2}): {e}")),
        }
    }
    ch.note(format!("{count} coefficients agree over {} grid points", SCATTERING_GRID.len()));
    ch.finish()
}

/// `N^trop` and `N̂` of the two tripod problems.
pub fn criterion_4() -> CriterionResult {
    let mut ch = Check::new(4, "tropical golden values", Some(Duration::from_secs(1)));
    for p in [suite()[0].clone(), suite()[1].clone()] {
        match invariants_with_retry(&p, 1) {
            Ok((_, _, v)) => {
                ch.expect(v.classical == int(1) && v.refined.is_one(), || {
                    format!("{p}: N = {}, N̂ = {}", v.classical, v.refined)
                });
                ch.note(format!("{p}: N = {}, N̂ = {}", v.classical, v.refined));
            }
            Err(e) => ch.expect(false, || format!("{p}: {e}")),
        }
    }
    ch.finish()
}

/// Refined invariants agree exactly across the suite seeds.
pub fn criterion_5() -> CriterionResult {
    let mut ch = Check::new(5, "position invariance", Some(Duration::from_secs(120)));
    let problems = suite();
    ch.expect(problems.len() >= 4, || "suite has fewer than four problems".into());
    ch.expect(problems.iter().any(|p| p.alpha.len() + p.alpha_prime.len() == 4), || {
        "suite has no problem with four constrained ends".into()
    });
    for p in &problems {
        let mut values = vec![];
        for &s in &SUITE_SEEDS {
            match invariants_with_retry(p, s) {
                Ok((_, _, v)) => values.push(v.refined),
                Err(e) => ch.expect(false, || format!("{p} seed {s}: {e}")),
            }
        }
        let same = values.len() == SUITE_SEEDS.len() && values.windows(2).all(|w| w[0] == w[1]);
        ch.expect(same, || format!("{p}: values differ across seeds"));
        if let Some(v) = values.first() {
            ch.note(format!("{p}: {v}"));
        }
    }
    ch.finish()
}

/// `N̂(s⁻¹) = N̂(s)` and `N̂(1) = N^trop` for the suite.
pub fn criterion_6() -> CriterionResult {
    let mut ch = Check::new(6, "symmetry and specialization", None);
    for p in suite() {
        match invariants_with_retry(&p, 1) {
            Ok((_, _, v)) => {
                ch.expect(v.refined.invert_s() == v.refined, || format!("{p}: not symmetric"));
                let at_one = v.refined.eval_rational(&int(1));
                ch.expect(at_one == Ok(Some(v.classical.clone())), || format!("{p}: N̂(1) ≠ {}", v.classical));
            }
            Err(e) => ch.expect(false, || format!("{p}: {e}")),
        }
    }
    ch.note(format!("{} problems", suite().len()));
    ch.finish()
}

/// `2I = μ − P + 2` with `I ≥ 0` at every vertex of every placed curve.
pub fn criterion_7() -> CriterionResult {
    let mut ch = Check::new(7, "Pick identity", None);
    let mut vertices = 0;
    for p in suite() {
        for &s in &SUITE_SEEDS {
            match invariants_with_retry(&p, s) {
                Ok((_, _, v)) => {
                    for c in &v.curves {
                        match c.vertex_stats() {
                            Ok(stats) => {
                                for st in stats {
                                    vertices += 1;
                                    ch.expect(st.interior >= 0 && 2 * st.interior == st.mu - st.perimeter + 2, || {
                                        format!("{p}: vertex {st:?}")
                                    });
                                }
                            }
                            Err(e) => ch.expect(false, || format!("{p}: {e}")),
                        }
                    }
                }
                Err(e) => ch.expect(false, || format!("{p} seed {s}: {e}")),
            }
        }
    }
    ch.note(format!("{vertices} vertices checked"));
    ch.finish()
}

/// Per-curve closed forms sum to `N̂(−1)`, which is real, for odd `k`.
pub fn criterion_8() -> CriterionResult {
    let mut ch = Check::new(8, "q = -1 structural vs symbolic", None);
    for p in suite().into_iter().filter(|p| p.k % 2 == 1) {
        match invariants_with_retry(&p, 1) {
            Ok((_, _, v)) => {
                let symbolic = eval_minus_one(&v);
                match minus_one_from_invariants(&p, v) {
                    Ok(r) => {
                        let total = r.per_curve.iter().fold(GaussianRational::zero(), |a, x| &a + x);
                        ch.expect(Evaluation::Value(total.clone()) == symbolic && total.is_real(), || {
                            format!("{p}: structural {total}, symbolic {symbolic:?}")
                        });
                        ch.note(format!("{p}: {total}"));
                    }
                    Err(e) => ch.expect(false, || format!("{p}: {e}")),
                }
            }
            Err(e) => ch.expect(false, || format!("{p}: {e}")),
        }
    }
    ch.finish()
}

/// `(1,1,2,(2),(2))` has a pole at `q = −1`.
pub fn criterion_9() -> CriterionResult {
    let mut ch = Check::new(9, "divergence diagnostics", None);
    let p = TropicalProblem::new(1, 1, 2, vec![2], vec![2]).expect("valid problem");
    match invariants_with_retry(&p, 1) {
        Ok((_, _, v)) => {
            let e = eval_minus_one(&v);
            ch.expect(e.is_pole(), || format!("{p}: N̂ = {} evaluates to {e:?}", v.refined));
            ch.note(format!("{p}: N̂ = {} has a pole at s = i", v.refined));
        }
        Err(e) => ch.expect(false, || format!("{p}: {e}")),
    }
    ch.finish()
}

/// Welschinger spectra: golden values and admissibility over the suite.
pub fn criterion_10() -> CriterionResult {
    let mut ch = Check::new(10, "Welschinger spectrum", Some(Duration::from_secs(5)));
    let one = BigInt::from(1);
    let golden: [(TropicalProblem, Vec<(i64, BigInt)>); 2] = [
        (suite()[0].clone(), vec![(-2, one.clone()), (2, one.clone())]),
        (suite()[1].clone(), vec![(-4, one.clone()), (4, one.clone())]),
    ];
    for (p, want) in golden {
        match invariants_with_retry(&p, 1).map(|(_, _, v)| welschinger_spectrum(&p, &v.refined)) {
            Ok(Ok(s)) => {
                let got: Vec<(i64, BigInt)> = s.iter().map(|e| (e.kappa, e.w.clone())).collect();
                for (kappa, w) in &want {
                    let have = spectrum_value(&s, *kappa);
                    ch.expect(&have == w, || format!("{p}: W^{kappa} = {have}, expected {w}"));
                }
                ch.expect(got.len() == want.len(), || {
                    format!("{p}: support {:?}", got.iter().map(|g| g.0).collect::<Vec<_>>())
                });
                ch.note(format!(
                    "{p}: {}",
                    got.iter().map(|(k, w)| format!("W^{k} = {w}")).collect::<Vec<_>>().join(", ")
                ));
            }
            Ok(Err(e)) => ch.expect(false, || format!("{p}: {e}")),
            Err(e) => ch.expect(false, || format!("{p}: {e}")),
        }
    }
    for p in suite() {
        let res = invariants_with_retry(&p, 1).map_err(|e| e.to_string()).and_then(|(_, _, v)| {
            let rhs = spectrum_rhs(&p, &v.refined).map_err(|e| e.to_string())?;
            let s = welschinger_spectrum(&p, &v.refined).map_err(|e| e.to_string())?;
            Ok((rhs, s))
        });
        match res {
            Ok((rhs, s)) => {
                let bound = 2 * p.k * p.k * p.a * p.b;
                for e in &s {
                    ch.expect(e.kappa % 2 == 0 && e.kappa.abs() <= bound, || format!("{p}: κ = {}", e.kappa));
                    ch.expect((p.k * p.k * p.a * p.b - e.kappa / 2) % 2 == 0, || format!("{p}: κ = {} sign", e.kappa));
                }
                ch.expect(spectrum_polynomial(&p, &s) == rhs, || format!("{p}: spectrum does not reproduce {rhs}"));
            }
            Err(e) => ch.expect(false, || format!("{p}: {e}")),
        }
    }
    ch.finish()
}

/// Criteria 1–10.
pub fn run_core() -> Vec<CriterionResult> {
    vec![
        criterion_1(),
        criterion_2(),
        criterion_3(),
        criterion_4(),
        criterion_5(),
        criterion_6(),
        criterion_7(),
        criterion_8(),
        criterion_9(),
        criterion_10(),
    ]
}

/// Two runs of criteria 1–10 serialize to the same bytes.
pub fn criterion_11_from(first: &[CriterionResult]) -> CriterionResult {
    let mut ch = Check::new(11, "determinism", None);
    let second = run_core();
    let a = serde_json::to_string(first).expect("serializes");
    let b = serde_json::to_string(&second).expect("serializes");
    ch.expect(a == b, || "two runs produced different reports".into());
    ch.note(format!("{} report bytes identical across two runs", a.len()));
    ch.finish()
}

pub fn criterion_11() -> CriterionResult {
    criterion_11_from(&run_core())
}

pub fn run_all() -> VerifyReport {
    let mut criteria = run_core();
    let det = criterion_11_from(&criteria);
    criteria.push(det);
    VerifyReport { criteria }
}
