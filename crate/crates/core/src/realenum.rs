//! Real-enumerative data read off the refined tropical invariant.
//!
//! * `q = −1`: the refined invariant evaluated at `s = i`, compared curve by
//!   curve with the closed-form limit of each refined multiplicity.
//! * The Welschinger spectrum: coefficients of
//!   `N̂ · ∏[α_i]_q · ∏[α'_j]_q · (s − s⁻¹)^{#α+#α'−1}`, read as
//!   `Σ_κ (−1)^{k²ab/2 − κ/4} W^κ s^{κ/2}`.
//!
//! The per-curve limit at `s = i` uses `[m]_q → i^{m−1}` for odd `m`; each
//! even factor vanishes to first order with leading coefficient
//! `m·i^{m−1}`. So a curve survives exactly when every even-weight vertex
//! can be paired off with an even end. That is the case when each
//! component of the even-weight subgraph has exactly one univalent vertex.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::exactnum::{
    quantum_integer, Evaluation, GaussianRational, LaurentPoly, Rational, RationalFunction,
};
use crate::tropical::{
    invariants, ConstraintConfig, InvariantValues, LatticeStats, PlacedCurve, TropicalError,
    TropicalProblem,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RealEnumError {
    #[error("structural evaluation needs k odd and gcd(a, b) = 1, got a = {a}, b = {b}, k = {k}")]
    HypothesisViolation { a: i64, b: i64, k: i64 },
    #[error("structural sum {structural} differs from the symbolic value {symbolic}")]
    Mismatch {
        structural: String,
        symbolic: String,
    },
    #[error("value {0} at q = −1 is not real")]
    NonReal(String),
    #[error("even-weight subgraph is malformed: {0}")]
    MalformedEvenGraph(String),
    #[error("spectrum right-hand side {0} is not a Laurent polynomial")]
    NotPolynomial(String),
    #[error("spectrum exponent s^{exponent} is outside the admissible support")]
    SupportViolation { exponent: i64 },
    #[error("spectrum coefficient {0} is not an integer")]
    NonIntegerInvariant(String),
    #[error(transparent)]
    Tropical(#[from] TropicalError),
}

/// `N̂` at `q = −1`, i.e. `s = i`, on the reduced form.
pub fn eval_minus_one(v: &InvariantValues) -> Evaluation {
    eval_at_i(&v.refined)
}

fn eval_at_i(f: &RationalFunction) -> Evaluation {
    f.eval(&GaussianRational::i()).expect("i is nonzero")
}

/// A connected component of the even-weight subgraph.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EvenComponent {
    /// Vertex indices of the curve.
    pub vertices: Vec<usize>,
    /// Edges as clusters (see [`crate::tropical::CombinatorialType`]).
    pub edges: Vec<u64>,
    /// Ends of the curve in this component.
    pub ends: usize,
    /// Vertices of degree one inside the component.
    pub univalent: usize,
}

/// The even-weight subgraph `G(Γ)` of a placed curve and its vertex data.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StructuralData {
    pub components: Vec<EvenComponent>,
    /// Number of vertices of degree three in `G(Γ)`.
    pub v3: usize,
    /// Curve vertices lying on `G(Γ)`.
    pub even_vertices: Vec<usize>,
    pub stats: Vec<LatticeStats>,
}

/// Builds `G(Γ)`: the edges of even weight, with an even end counted as an
/// edge incident to its single finite vertex.
pub fn structural_data(c: &PlacedCurve) -> Result<StructuralData, RealEnumError> {
    let t = &c.ctype;
    let n = t.vertices().len();
    let stats: Vec<LatticeStats> = c.vertex_stats()?;
    // incidence: edge cluster → curve vertices on it
    let mut edge_ends: BTreeMap<u64, Vec<usize>> = BTreeMap::new();
    for i in 0..n {
        for e in t.incident_edges(i) {
            if t.edge_weight(e) % 2 == 0 {
                edge_ends.entry(e).or_default().push(i);
            }
        }
    }
    let mut degree = vec![0usize; n];
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        let mut y = x;
        while p[y] != r {
            let nx = p[y];
            p[y] = r;
            y = nx;
        }
        r
    }
    for ends in edge_ends.values() {
        for &v in ends {
            degree[v] += 1;
        }
        if let [u, v] = ends[..] {
            let (ru, rv) = (find(&mut parent, u), find(&mut parent, v));
            parent[ru] = rv;
        }
    }
    if let Some(v) = (0..n).find(|&v| degree[v] == 2) {
        return Err(RealEnumError::MalformedEvenGraph(format!(
            "vertex {v} is bivalent"
        )));
    }
    for v in 0..n {
        if (degree[v] > 0) != (stats[v].mu % 2 == 0) {
            return Err(RealEnumError::MalformedEvenGraph(format!(
                "vertex {v} has multiplicity {} but even degree {}",
                stats[v].mu, degree[v]
            )));
        }
    }
    let even_vertices: Vec<usize> = (0..n).filter(|&v| degree[v] > 0).collect();
    let mut by_root: BTreeMap<usize, EvenComponent> = BTreeMap::new();
    for &v in &even_vertices {
        let r = find(&mut parent, v);
        let comp = by_root.entry(r).or_insert_with(|| EvenComponent {
            vertices: vec![],
            edges: vec![],
            ends: 0,
            univalent: 0,
        });
        comp.vertices.push(v);
        if degree[v] == 1 {
            comp.univalent += 1;
        }
    }
    for (&e, ends) in &edge_ends {
        let r = find(&mut parent, ends[0]);
        let comp = by_root
            .get_mut(&r)
            .expect("edge endpoint is an even vertex");
        comp.edges.push(e);
        if ends.len() == 1 {
            comp.ends += 1;
        }
    }
    let mut components: Vec<EvenComponent> = by_root.into_values().collect();
    components.sort_by(|x, y| x.vertices.cmp(&y.vertices));
    let v3 = degree.iter().filter(|&&d| d == 3).count();
    Ok(StructuralData {
        components,
        v3,
        even_vertices,
        stats,
    })
}

fn check_hypotheses(p: &TropicalProblem) -> Result<(), RealEnumError> {
    if p.k % 2 == 0 || p.a.gcd(&p.b) != 1 {
        return Err(RealEnumError::HypothesisViolation {
            a: p.a,
            b: p.b,
            k: p.k,
        });
    }
    Ok(())
}

/// `r = Σ_V (μ(Γ,V) − 1) + #α + #α' − ka − kb`.
fn exponent_r(stats: &[LatticeStats], p: &TropicalProblem) -> i64 {
    stats.iter().map(|s| s.mu - 1).sum::<i64>() + (p.alpha.len() + p.alpha_prime.len()) as i64
        - p.k * p.a
        - p.k * p.b
}

/// Closed-form contribution of one curve to `N̂(−1)`.
///
/// With all parts odd: `0` if some vertex multiplicity is even, otherwise
/// `i^r`. In general: `0` if a component of `G(Γ)` has more than one
/// univalent vertex, otherwise
/// `i^r · ∏_{V ∈ G(Γ)} μ(Γ,V) · ∏_{α_i even} 1/α_i · ∏_{α'_j even} 1/α'_j`.
pub fn structural_minus_one(
    c: &PlacedCurve,
    p: &TropicalProblem,
) -> Result<GaussianRational, RealEnumError> {
    check_hypotheses(p)?;
    let all_odd = p.alpha.iter().chain(&p.alpha_prime).all(|w| w % 2 == 1);
    if all_odd {
        let stats = c.vertex_stats()?;
        if stats.iter().any(|s| s.mu % 2 == 0) {
            return Ok(GaussianRational::zero());
        }
        return Ok(GaussianRational::i_pow(exponent_r(&stats, p)));
    }
    let data = structural_data(c)?;
    if data.components.iter().any(|g| g.univalent != 1) {
        return Ok(GaussianRational::zero());
    }
    let mut factor = Rational::one();
    for &v in &data.even_vertices {
        factor *= Rational::from_integer(data.stats[v].mu.into());
    }
    for &w in p
        .alpha
        .iter()
        .chain(&p.alpha_prime)
        .filter(|&&w| w % 2 == 0)
    {
        factor /= Rational::from_integer(w.into());
    }
    Ok(GaussianRational::i_pow(exponent_r(&data.stats, p)).scale(&factor))
}

/// The `q = −1` comparison for one configuration.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinusOneResult {
    /// `N̂(−1)`.
    pub value: Evaluation,
    /// `(−1)^{(k−1)/2} N̂(−1)`, the predicted signed count of real curves.
    pub wc0: Option<Rational>,
    pub per_curve: Vec<GaussianRational>,
    /// Indices of curves whose individual contribution is not real.
    pub imaginary_curves: Vec<usize>,
    pub invariants: InvariantValues,
}

/// Computes `N̂(−1)` symbolically and from the per-curve structure, and
/// checks that they agree and are real.
pub fn minus_one_report(
    p: &TropicalProblem,
    cfg: &ConstraintConfig,
) -> Result<MinusOneResult, RealEnumError> {
    check_hypotheses(p)?;
    let inv = invariants(p, cfg)?;
    minus_one_from_invariants(p, inv)
}

pub fn minus_one_from_invariants(
    p: &TropicalProblem,
    inv: InvariantValues,
) -> Result<MinusOneResult, RealEnumError> {
    check_hypotheses(p)?;
    let value = eval_minus_one(&inv);
    let per_curve: Vec<GaussianRational> = inv
        .curves
        .iter()
        .map(|c| structural_minus_one(c, p))
        .collect::<Result<_, _>>()?;
    let total = per_curve
        .iter()
        .fold(GaussianRational::zero(), |acc, v| &acc + v);
    let symbolic = match &value {
        Evaluation::Value(v) => v.clone(),
        Evaluation::Pole => {
            return Err(RealEnumError::Mismatch {
                structural: total.to_string(),
                symbolic: "pole".into(),
            });
        }
    };
    if total != symbolic {
        return Err(RealEnumError::Mismatch {
            structural: total.to_string(),
            symbolic: symbolic.to_string(),
        });
    }
    if !symbolic.is_real() {
        return Err(RealEnumError::NonReal(symbolic.to_string()));
    }
    let imaginary_curves = per_curve
        .iter()
        .enumerate()
        .filter(|(_, v)| !v.is_real())
        .map(|(i, _)| i)
        .collect();
    let sign = if (p.k - 1) / 2 % 2 == 0 {
        Rational::one()
    } else {
        -Rational::one()
    };
    let wc0 = Some(sign * symbolic.re.clone());
    Ok(MinusOneResult {
        value,
        wc0,
        per_curve,
        imaginary_curves,
        invariants: inv,
    })
}

/// One nonzero value `W^κ`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SpectrumEntry {
    pub kappa: i64,
    #[serde(rename = "W")]
    #[serde(serialize_with = "as_string")]
    pub w: BigInt,
}

fn as_string<S: serde::Serializer>(v: &BigInt, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

/// `N̂ · ∏[α_i]_q · ∏[α'_j]_q · (s − s⁻¹)^{#α+#α'−1}`.
pub fn spectrum_rhs(
    p: &TropicalProblem,
    refined: &RationalFunction,
) -> Result<LaurentPoly, RealEnumError> {
    let mut f = refined.clone();
    for &w in p.alpha.iter().chain(&p.alpha_prime) {
        f = &f * &RationalFunction::from(quantum_integer(w as u32));
    }
    let d = &LaurentPoly::s() - &LaurentPoly::s_pow(-1);
    f = &f * &RationalFunction::from(d.pow((p.alpha.len() + p.alpha_prime.len() - 1) as u32));
    f.as_laurent()
        .cloned()
        .ok_or_else(|| RealEnumError::NotPolynomial(f.to_string()))
}

/// `k²ab/2 − κ/4` for `κ = 2e`, i.e. `(k²ab − e)/2`, when integral.
fn sign_exponent(p: &TropicalProblem, e: i64) -> Option<i64> {
    let twice = p.k * p.k * p.a * p.b - e;
    (twice % 2 == 0).then_some(twice / 2)
}

fn sign(exp: i64) -> BigInt {
    if exp.rem_euclid(2) == 0 {
        BigInt::one()
    } else {
        -BigInt::one()
    }
}

/// Reads `W^κ` off the right-hand side, by increasing `κ`. Zero values are
/// omitted.
pub fn welschinger_spectrum(
    p: &TropicalProblem,
    refined: &RationalFunction,
) -> Result<Vec<SpectrumEntry>, RealEnumError> {
    let rhs = spectrum_rhs(p, refined)?;
    let bound = 2 * p.k * p.k * p.a * p.b;
    let mut out = Vec::new();
    for (e, c) in rhs.terms() {
        let kappa = 2 * e;
        if kappa.abs() > bound {
            return Err(RealEnumError::SupportViolation { exponent: e });
        }
        let exp = sign_exponent(p, e).ok_or(RealEnumError::SupportViolation { exponent: e })?;
        if !c.is_integer() {
            return Err(RealEnumError::NonIntegerInvariant(c.to_string()));
        }
        out.push(SpectrumEntry {
            kappa,
            w: sign(exp) * c.to_integer(),
        });
    }
    Ok(out)
}

/// Inverse of [`welschinger_spectrum`]: `Σ_κ (−1)^{k²ab/2 − κ/4} W^κ s^{κ/2}`.
pub fn spectrum_polynomial(p: &TropicalProblem, entries: &[SpectrumEntry]) -> LaurentPoly {
    LaurentPoly::from_terms(entries.iter().map(|en| {
        let e = en.kappa / 2;
        let exp = sign_exponent(p, e).expect("entry produced from an admissible exponent");
        (e, Rational::from_integer(sign(exp) * &en.w))
    }))
}

/// `W^κ` looked up by `κ`, zero when absent.
pub fn spectrum_value(entries: &[SpectrumEntry], kappa: i64) -> BigInt {
    entries
        .iter()
        .find(|e| e.kappa == kappa)
        .map(|e| e.w.clone())
        .unwrap_or_else(BigInt::zero)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::int;
    use crate::tropical::{enumerate_types, place, random_config};

    fn prob(a: i64, b: i64, k: i64, al: &[i64], alp: &[i64]) -> TropicalProblem {
        TropicalProblem::new(a, b, k, al.to_vec(), alp.to_vec()).unwrap()
    }

    fn single_curve(p: &TropicalProblem) -> PlacedCurve {
        let t = &enumerate_types(p)[0];
        place(t, p, &ConstraintConfig::from_integers(&[0], &[0], 0))
            .unwrap()
            .unwrap()
    }

    #[test]
    fn minus_one_golden_values() {
        for p in [prob(1, 1, 1, &[1], &[1]), prob(2, 1, 1, &[2], &[1])] {
            let r = minus_one_report(&p, &random_config(&p, 1)).unwrap();
            assert_eq!(r.value, Evaluation::Value(GaussianRational::one()));
            assert_eq!(r.wc0, Some(int(1)));
            assert_eq!(r.per_curve, vec![GaussianRational::one()]);
        }
    }

    #[test]
    fn even_k_diverges() {
        let p = prob(1, 1, 2, &[2], &[2]);
        let v = invariants(&p, &random_config(&p, 1)).unwrap();
        assert_eq!(eval_minus_one(&v), Evaluation::Pole);
        assert_eq!(
            minus_one_report(&p, &random_config(&p, 1)),
            Err(RealEnumError::HypothesisViolation { a: 1, b: 1, k: 2 })
        );
    }

    #[test]
    fn tripod_structure() {
        let p = prob(2, 1, 1, &[2], &[1]);
        let c = single_curve(&p);
        let d = structural_data(&c).unwrap();
        assert_eq!(d.components.len(), 1);
        assert_eq!(d.components[0].univalent, 1);
        assert_eq!(d.components[0].ends, 1);
        assert_eq!(d.even_vertices, vec![0]);
        assert_eq!(d.v3, 0);
        assert_eq!(
            structural_minus_one(&c, &p).unwrap(),
            GaussianRational::one()
        );

        let p = prob(1, 1, 1, &[1], &[1]);
        let d = structural_data(&single_curve(&p)).unwrap();
        assert!(d.components.is_empty());
    }

    #[test]
    fn even_vertex_kills_all_odd_curves() {
        // (3,2,1,(1,1,1),(1,1)): some curve has a vertex of even multiplicity
        let p = prob(3, 2, 1, &[1, 1, 1], &[1, 1]);
        let v = invariants(&p, &random_config(&p, 4)).unwrap();
        let mut seen_even = false;
        for c in &v.curves {
            let has_even = c.vertex_stats().unwrap().iter().any(|s| s.mu % 2 == 0);
            if has_even {
                seen_even = true;
                assert!(structural_minus_one(c, &p).unwrap().is_zero());
            }
        }
        assert!(seen_even);
    }

    #[test]
    fn structural_matches_symbolic_on_mixed_parities() {
        for (p, seed) in [
            (prob(3, 2, 1, &[1, 2], &[1, 1]), 2),
            (prob(1, 1, 3, &[1, 1, 1], &[2, 1]), 5),
            (prob(2, 1, 3, &[3, 3], &[1, 2]), 1),
            (prob(1, 1, 3, &[1, 2], &[3]), 9),
            (prob(1, 2, 3, &[2, 1], &[2, 2, 2]), 3),
        ] {
            let r = minus_one_report(&p, &random_config(&p, seed)).unwrap();
            assert!(r.value.value().unwrap().is_real(), "{p}");
        }
    }

    #[test]
    fn spectrum_of_the_simplest_problem() {
        let p = prob(1, 1, 1, &[1], &[1]);
        let s = welschinger_spectrum(&p, &RationalFunction::one()).unwrap();
        assert_eq!(s.len(), 2);
        assert_eq!(spectrum_value(&s, 2), BigInt::one());
        assert_eq!(spectrum_value(&s, -2), BigInt::one());
        assert_eq!(spectrum_value(&s, 0), BigInt::zero());
    }

    #[test]
    fn spectrum_reads_signs_from_the_exponent() {
        // RHS = s² − s⁻²; k²ab = 2, so the sign exponents are 0 at κ = 4 and 2 at κ = −4
        let p = prob(2, 1, 1, &[2], &[1]);
        assert_eq!(
            spectrum_rhs(&p, &RationalFunction::one()).unwrap(),
            &LaurentPoly::s_pow(2) - &LaurentPoly::s_pow(-2)
        );
        let s = welschinger_spectrum(&p, &RationalFunction::one()).unwrap();
        assert_eq!(spectrum_value(&s, 4), BigInt::one());
        assert_eq!(spectrum_value(&s, -4), -BigInt::one());
    }

    #[test]
    fn spectrum_errors() {
        let p = prob(1, 1, 1, &[1], &[1]);
        let half = RationalFunction::constant(crate::exactnum::rat(1, 2));
        assert!(matches!(
            welschinger_spectrum(&p, &half),
            Err(RealEnumError::NonIntegerInvariant(_))
        ));
        let pole = RationalFunction::one()
            .checked_div(&quantum_integer(3).into())
            .unwrap();
        assert!(matches!(
            welschinger_spectrum(&p, &pole),
            Err(RealEnumError::NotPolynomial(_))
        ));
        let wide = RationalFunction::s_pow(4);
        assert!(matches!(
            welschinger_spectrum(&p, &wide),
            Err(RealEnumError::SupportViolation { .. })
        ));
        let parity = RationalFunction::s_pow(1);
        assert!(matches!(
            welschinger_spectrum(&p, &parity),
            Err(RealEnumError::SupportViolation { .. })
        ));
    }

    #[test]
    fn spectrum_round_trip_and_antisymmetry() {
        for p in [
            prob(1, 1, 2, &[1, 1], &[1, 1]),
            prob(2, 1, 3, &[3, 3], &[1, 2]),
            prob(3, 2, 1, &[1, 2], &[1, 1]),
        ] {
            let v = invariants(&p, &random_config(&p, 1)).unwrap();
            let rhs = spectrum_rhs(&p, &v.refined).unwrap();
            let s = welschinger_spectrum(&p, &v.refined).unwrap();
            assert_eq!(spectrum_polynomial(&p, &s), rhs);
            let n = p.alpha.len() + p.alpha_prime.len();
            let flipped = if (n - 1) % 2 == 0 { rhs.clone() } else { -&rhs };
            assert_eq!(rhs.invert_s(), flipped);
            assert!(s.iter().all(|e| e.kappa % 2 == 0));
        }
    }
}
