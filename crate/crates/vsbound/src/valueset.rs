//! Value-set enumeration and the upper bounds it is checked against:
//! the polytope bound q^n - min{q, mu (q-1)}, the degree-only bound
//! q^n - min{q, n(q-1)/deg}, the univariate bound q - (q-1)/d, and the
//! invariant bound q^n - U. Bound arithmetic is exact: the min terms stay
//! rational until the final comparison, and the reported integer bound is
//! the floor of the rational one (flooring earlier could falsely certify
//! sharpness).
//!
//! Degenerate inputs are handled as follows: a missing variable makes the
//! dilation invariant infinite, the min term collapses to q and the
//! instance is flagged `degenerate_mu`; maps with constant components or
//! with component count different from the variable count are refused
//! outright.

use crate::fields::{factor_prime_power, make_field, make_tower, FFElement, FieldError, FieldSpec};
use crate::padic::{compute_u, PadicError};
use crate::poly::{
    default_varnames, format_vector, parse_vector, Monomial, MultiPoly, ParseError, PolyError,
    PolyVector,
};
use crate::polytope::{newton_polytope, LatticePolytope, MuResult, PolytopeError};
use crate::rational::ExtRat;
use crate::ring::Ring;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use std::collections::HashSet;
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum VsError {
    Budget { points: u64, budget: u64 },
    ConstantComponent { index: usize },
    ZeroComponent { index: usize },
    ComponentCount { components: usize, nvars: usize },
    VariableMissing { index: usize },
    ConstantMap,
    Field(FieldError),
    Padic(PadicError),
    Polytope(PolytopeError),
    Poly(PolyError),
    Parse(ParseError),
}

impl fmt::Display for VsError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VsError::Budget { points, budget } => {
                write!(f, "domain of {points} points exceeds budget {budget}")
            }
            VsError::ConstantComponent { index } => {
                write!(
                    f,
                    "component {} is constant; the bounds do not cover this case",
                    index + 1
                )
            }
            VsError::ZeroComponent { index } => {
                write!(f, "component {} is identically zero", index + 1)
            }
            VsError::ComponentCount { components, nvars } => {
                write!(f, "map has {components} components in {nvars} variables; a self-map needs equal counts")
            }
            VsError::VariableMissing { index } => {
                write!(
                    f,
                    "variable {} appears in no component; the collection is polynomial in a proper variable subset",
                    index + 1
                )
            }
            VsError::ConstantMap => write!(f, "the map is constant"),
            VsError::Field(e) => write!(f, "{e}"),
            VsError::Padic(e) => write!(f, "{e}"),
            VsError::Polytope(e) => write!(f, "{e}"),
            VsError::Poly(e) => write!(f, "{e}"),
            VsError::Parse(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for VsError {}

impl From<FieldError> for VsError {
    fn from(e: FieldError) -> Self {
        VsError::Field(e)
    }
}

impl From<PadicError> for VsError {
    fn from(e: PadicError) -> Self {
        VsError::Padic(e)
    }
}

impl From<PolytopeError> for VsError {
    fn from(e: PolytopeError) -> Self {
        VsError::Polytope(e)
    }
}

impl From<PolyError> for VsError {
    fn from(e: PolyError) -> Self {
        VsError::Poly(e)
    }
}

impl From<ParseError> for VsError {
    fn from(e: ParseError) -> Self {
        VsError::Parse(e)
    }
}

/// `Budget`, `BudgetExceeded` and friends from any layer.
pub fn is_budget_error(e: &VsError) -> bool {
    matches!(
        e,
        VsError::Budget { .. }
            | VsError::Field(FieldError::BudgetExceeded { .. })
            | VsError::Padic(PadicError::BudgetExceeded { .. })
            | VsError::Polytope(PolytopeError::OracleBudget { .. })
    )
}

/// Enumeration budgets for the expensive quantities.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VerifyOptions {
    /// Max domain points for the value-set scan.
    pub budget_domain: u64,
    /// Max domain points for the invariant scan (each k costs a full pass).
    pub budget_u: u64,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            budget_domain: 1 << 20,
            budget_u: 512,
        }
    }
}

/// |f(F_q^n)| by exhaustive evaluation.
pub fn value_set_size(f: &PolyVector, spec: &FieldSpec, budget: u64) -> Result<u64, VsError> {
    let q = spec.q();
    let n = f.nvars();
    let points = q.checked_pow(n as u32).ok_or(VsError::Budget {
        points: u64::MAX,
        budget,
    })?;
    if points > budget {
        return Err(VsError::Budget { points, budget });
    }
    let mut image = HashSet::with_capacity(points as usize);
    crate::fields::for_each_point(spec, n, |pt| {
        image.insert(f.evaluate(spec, pt));
    });
    Ok(image.len() as u64)
}

fn domain_size(spec: &FieldSpec, n: usize) -> Result<u64, VsError> {
    spec.q().checked_pow(n as u32).ok_or(VsError::Budget {
        points: u64::MAX,
        budget: crate::fields::ENUM_BUDGET,
    })
}

/// min{q, x} as an exact extended rational.
fn min_with_q(q: u64, x: &ExtRat) -> ExtRat {
    ExtRat::from_int(q).min(x.clone())
}

/// floor(domain - min_term): the reported integer bound. `min_term` must be
/// finite (it is capped by q).
fn floored_bound(domain: u64, min_term: &ExtRat) -> u64 {
    let ceil = min_term
        .ceil_int()
        .expect("min term is capped by q, hence finite");
    let bound = BigInt::from(domain) - ceil;
    bound
        .to_u64()
        .expect("bounds of enumerable instances fit in u64")
}

fn require_nonconstant(f: &PolyVector) -> Result<u32, VsError> {
    match f.total_degree() {
        Some(d) if d >= 1 => Ok(d),
        _ => Err(VsError::ConstantMap),
    }
}

/// q^n - min{q, mu (q-1)}, floored. Errors on constant maps.
pub fn bound_polytope(f: &PolyVector, spec: &FieldSpec) -> Result<u64, VsError> {
    require_nonconstant(f)?;
    let domain = domain_size(spec, f.nvars())?;
    let mu = newton_polytope(f)?.mu().mu;
    let min_term = min_with_q(spec.q(), &mu.mul_int(spec.q() - 1));
    Ok(floored_bound(domain, &min_term))
}

/// q^n - min{q, n(q-1)/deg f}, floored. Errors on constant maps.
pub fn bound_mww(f: &PolyVector, spec: &FieldSpec) -> Result<u64, VsError> {
    let deg = require_nonconstant(f)?;
    let domain = domain_size(spec, f.nvars())?;
    let ratio = BigRational::new(
        BigInt::from(f.nvars() as u64 * (spec.q() - 1)),
        BigInt::from(deg),
    );
    let min_term = min_with_q(spec.q(), &ExtRat::Finite(ratio));
    Ok(floored_bound(domain, &min_term))
}

/// The exact univariate bound q - (q-1)/d, as a rational (the caller
/// floors when comparing with cardinalities).
pub fn bound_univariate(d: u64, q: u64) -> BigRational {
    assert!(d >= 1, "degree must be positive");
    BigRational::from_integer(BigInt::from(q))
        - BigRational::new(BigInt::from(q - 1), BigInt::from(d))
}

/// q^n - U for the tower encoding of f.
pub fn bound_from_u(
    f: &PolyVector,
    tower: &crate::fields::TowerSpec,
    budget: u64,
) -> Result<u64, VsError> {
    let u = compute_u(f, tower, budget)?;
    Ok(tower.order() - u.u)
}

// ---- reports ----

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct FieldDesc {
    pub p: u64,
    pub e: usize,
    pub modulus: Vec<u64>,
}

impl FieldDesc {
    pub fn of(spec: &FieldSpec) -> FieldDesc {
        FieldDesc {
            p: spec.p(),
            e: spec.e(),
            modulus: spec.modulus().to_vec(),
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct InstanceDesc {
    pub field: FieldDesc,
    pub vars: Vec<String>,
    pub map: String,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct ReportFlags {
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub permutation: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub theorem_holds: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub sharp: Option<bool>,
    pub degenerate_mu: bool,
    pub mww_dominated: bool,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub lemma3_holds: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub lemma6_holds: Option<bool>,
}

/// Everything computed about one instance. Budget-excluded quantities are
/// omitted (`None`), never approximated.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct BoundsReport {
    pub instance: InstanceDesc,
    pub q: u64,
    pub nvars: usize,
    pub domain_size: u64,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub vf_size: Option<u64>,
    pub mu: ExtRat,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub mu_witness: Option<Vec<u32>>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub u_invariant: Option<u64>,
    /// Exact min{q, mu (q-1)}.
    pub polytope_min_term: ExtRat,
    /// Exact min{q, n(q-1)/deg}.
    pub mww_min_term: ExtRat,
    pub bound_polytope: u64,
    pub bound_mww: u64,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub bound_from_u: Option<u64>,
    pub flags: ReportFlags,
}

impl BoundsReport {
    /// True when every computed check holds (vacuous checks count as held).
    pub fn all_checks_hold(&self) -> bool {
        self.flags.theorem_holds.unwrap_or(true)
            && self.flags.mww_dominated
            && self.flags.lemma3_holds.unwrap_or(true)
            && self.flags.lemma6_holds.unwrap_or(true)
    }
}

/// Computes every quantity within budget for the self-map `f` and checks
/// the inequalities between them. Refuses constant components and maps
/// whose component count differs from the variable count.
pub fn verify_bounds(
    f: &PolyVector,
    spec: &FieldSpec,
    vars: &[String],
    options: &VerifyOptions,
) -> Result<BoundsReport, VsError> {
    let n = f.nvars();
    if f.len() != n {
        return Err(VsError::ComponentCount {
            components: f.len(),
            nvars: n,
        });
    }
    for (i, comp) in f.components().iter().enumerate() {
        if comp.is_constant_poly() {
            return Err(VsError::ConstantComponent { index: i });
        }
    }
    let q = spec.q();
    let domain = domain_size(spec, n)?;
    let deg = f.total_degree().expect("nonconstant map has a degree") as u64;

    let MuResult { mu, witness } = newton_polytope(f)?.mu();
    let polytope_min_term = min_with_q(q, &mu.mul_int(q - 1));
    let mww_min_term = min_with_q(
        q,
        &ExtRat::Finite(BigRational::new(
            BigInt::from(n as u64 * (q - 1)),
            BigInt::from(deg),
        )),
    );
    let bound_polytope = floored_bound(domain, &polytope_min_term);
    let bound_mww = floored_bound(domain, &mww_min_term);

    let vf_size = if domain <= options.budget_domain {
        Some(value_set_size(f, spec, options.budget_domain)?)
    } else {
        None
    };

    let u_invariant = if domain <= options.budget_u {
        let tower = make_tower(spec, n)?;
        match compute_u(f, &tower, options.budget_u) {
            Ok(r) => Some(r.u),
            // A map that is constant as a function (nonconstant polynomials
            // notwithstanding) has no invariant below any cap; report it
            // absent rather than failing everything else.
            Err(PadicError::ConstantMap) => None,
            Err(e) => return Err(e.into()),
        }
    } else {
        None
    };

    let theorem_holds = vf_size.map(|v| {
        v == domain || {
            // exact-rational comparison: v <= domain - min_term
            let lhs = BigRational::from_integer(BigInt::from(v));
            let rhs = BigRational::from_integer(BigInt::from(domain))
                - polytope_min_term.as_finite().expect("capped by q").clone();
            lhs <= rhs
        }
    });
    let lemma3_holds = match (vf_size, u_invariant) {
        (Some(v), Some(u)) => Some(v == domain || v <= domain - u),
        _ => None,
    };
    let lemma6_holds = u_invariant.map(|u| ExtRat::from_int(u) >= polytope_min_term);

    let flags = ReportFlags {
        permutation: vf_size.map(|v| v == domain),
        theorem_holds,
        sharp: vf_size.map(|v| v == bound_polytope),
        degenerate_mu: mu.is_infinite(),
        mww_dominated: bound_polytope <= bound_mww,
        lemma3_holds,
        lemma6_holds,
    };

    Ok(BoundsReport {
        instance: InstanceDesc {
            field: FieldDesc::of(spec),
            vars: vars.to_vec(),
            map: format_vector(f, spec, vars),
        },
        q,
        nvars: n,
        domain_size: domain,
        vf_size,
        mu,
        mu_witness: witness,
        u_invariant,
        polytope_min_term,
        mww_min_term,
        bound_polytope,
        bound_mww,
        bound_from_u: u_invariant.map(|u| domain - u),
        flags,
    })
}

// ---- variety valuation check ----

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct VarietyCheck {
    pub instance: InstanceDesc,
    pub m: usize,
    pub nvars: usize,
    pub n_points: u64,
    /// v_p(N)/e, infinite when the variety is empty.
    pub ord_q: ExtRat,
    pub mu_aux: ExtRat,
    pub holds: bool,
}

/// Counts F_q-rational points of V(f_1, ..., f_m) and checks that the
/// q-adic valuation of the count is at least mu(aux) - m, where aux is the
/// polynomial sum f_i(x) y_i in n + m variables. The hypothesis that every
/// variable actually occurs is enforced, as are nonzero components.
pub fn variety_ord_check(
    fs: &PolyVector,
    spec: &FieldSpec,
    vars: &[String],
    budget: u64,
) -> Result<VarietyCheck, VsError> {
    let n = fs.nvars();
    let m = fs.len();
    for (i, comp) in fs.components().iter().enumerate() {
        if comp.is_zero() {
            return Err(VsError::ZeroComponent { index: i });
        }
    }
    for j in 0..n {
        let covered = fs.support().iter().any(|mono| mono.exponents()[j] > 0);
        if !covered {
            return Err(VsError::VariableMissing { index: j });
        }
    }

    let points = domain_size(spec, n)?;
    if points > budget {
        return Err(VsError::Budget { points, budget });
    }
    let mut count: u64 = 0;
    crate::fields::for_each_point(spec, n, |pt| {
        let all_zero = fs
            .components()
            .iter()
            .all(|c| spec.is_zero(&c.evaluate(spec, pt)));
        if all_zero {
            count += 1;
        }
    });

    let ord_q = if count == 0 {
        ExtRat::Infinity
    } else {
        let vp = crate::padic::v_p(spec.p(), count);
        ExtRat::Finite(BigRational::new(
            BigInt::from(vp),
            BigInt::from(spec.e() as u64),
        ))
    };

    // Auxiliary polytope in n + m coordinates: (V, e_i) per support point.
    let mut gens = Vec::new();
    for (i, comp) in fs.components().iter().enumerate() {
        for mono in comp.support() {
            let mut v = mono.exponents().to_vec();
            v.extend(std::iter::repeat_n(0, m));
            v[n + i] = 1;
            gens.push(v);
        }
    }
    let aux = LatticePolytope::new(n + m, gens)?;
    let mu_aux = aux.mu().mu;

    let holds = match (&ord_q, &mu_aux) {
        (ExtRat::Infinity, _) => true,
        (ExtRat::Finite(_), ExtRat::Infinity) => false,
        (ExtRat::Finite(ord), ExtRat::Finite(mu)) => {
            *ord >= mu - BigRational::from_integer(BigInt::from(m as u64))
        }
    };

    Ok(VarietyCheck {
        instance: InstanceDesc {
            field: FieldDesc::of(spec),
            vars: vars.to_vec(),
            map: format_vector(fs, spec, vars),
        },
        m,
        nvars: n,
        n_points: count,
        ord_q,
        mu_aux,
        holds,
    })
}

// ---- sharp families ----

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SharpFamilyKind {
    /// f = (x1, x1^a x2) over F_q, which meets the polytope bound exactly.
    PolytopeSharp { q: u64, a: u32 },
    /// f = (x+1) x^(q-1) over F_{q^k}, the classical sharp family for the
    /// univariate degree bound.
    CusickMuller { q: u64, k: u32 },
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct SharpInstance {
    pub instance: InstanceDesc,
    pub expectation: SharpExpectation,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SharpExpectation {
    Polytope {
        expected_vf: u64,
        expected_mu: ExtRat,
    },
    /// The literature formula for this family reads q^k - (q^k - 1)/q,
    /// which is never an integer (q^k - 1 is coprime to q); the brute-forced
    /// cardinality is recorded next to it instead of asserting it.
    CusickMuller {
        vf_brute: u64,
        printed_formula: ExtRat,
        printed_formula_integral: bool,
        printed_formula_floor: u64,
    },
}

/// Builds a sharp-family instance together with its predicted values.
pub fn sharp_family(
    kind: &SharpFamilyKind,
    budget: u64,
) -> Result<(PolyVector, FieldSpec, SharpInstance), VsError> {
    match *kind {
        SharpFamilyKind::PolytopeSharp { q, a } => {
            let (p, e) = factor_prime_power(q).ok_or(VsError::Field(FieldError::NotPrime(q)))?;
            let spec = make_field(p, e)?;
            let vars = default_varnames(2);
            let mut first = MultiPoly::zero(2);
            first.add_term(&spec, Monomial::new(vec![1, 0]), spec.one());
            let mut second = MultiPoly::zero(2);
            second.add_term(&spec, Monomial::new(vec![a, 1]), spec.one());
            let f = PolyVector::new(2, vec![first, second])?;
            let instance = InstanceDesc {
                field: FieldDesc::of(&spec),
                vars: vars.clone(),
                map: format_vector(&f, &spec, &vars),
            };
            let expectation = SharpExpectation::Polytope {
                expected_vf: q * q - (q - 1),
                expected_mu: ExtRat::from_int(1),
            };
            Ok((
                f,
                spec,
                SharpInstance {
                    instance,
                    expectation,
                },
            ))
        }
        SharpFamilyKind::CusickMuller { q, k } => {
            let (p, e) = factor_prime_power(q).ok_or(VsError::Field(FieldError::NotPrime(q)))?;
            let spec = make_field(p, e * k as usize)?;
            let vars = vec!["x".to_string()];
            // (x+1) x^(q-1) = x^q + x^(q-1)
            let mut poly = MultiPoly::zero(1);
            poly.add_term(&spec, Monomial::new(vec![q as u32]), spec.one());
            poly.add_term(&spec, Monomial::new(vec![q as u32 - 1]), spec.one());
            let f = PolyVector::new(1, vec![poly])?;
            let vf_brute = value_set_size(&f, &spec, budget)?;
            let qk = BigInt::from(spec.q());
            let formula =
                BigRational::from_integer(qk.clone()) - BigRational::new(qk - 1, BigInt::from(q));
            let integral = formula.is_integer();
            let floor = formula
                .floor()
                .to_integer()
                .to_u64()
                .expect("small instance");
            let instance = InstanceDesc {
                field: FieldDesc::of(&spec),
                vars: vars.clone(),
                map: format_vector(&f, &spec, &vars),
            };
            let expectation = SharpExpectation::CusickMuller {
                vf_brute,
                printed_formula: ExtRat::Finite(formula),
                printed_formula_integral: integral,
                printed_formula_floor: floor,
            };
            Ok((
                f,
                spec,
                SharpInstance {
                    instance,
                    expectation,
                },
            ))
        }
    }
}

// ---- random sweeps ----

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SweepFamily {
    Random,
    PolytopeSharp { a_min: u32, a_max: u32 },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SweepConfig {
    /// Field orders; every entry must be a prime power.
    pub q_values: Vec<u64>,
    pub nvars: usize,
    pub deg_max: u32,
    pub samples: u64,
    pub seed: u64,
    pub family: SweepFamily,
    pub options: VerifyOptions,
}

#[derive(Debug, Clone, Serialize, Default, PartialEq, Eq)]
pub struct ViolationCounts {
    pub theorem: u64,
    pub lemma3: u64,
    pub lemma6: u64,
    pub dominance: u64,
}

impl ViolationCounts {
    pub fn total(&self) -> u64 {
        self.theorem + self.lemma3 + self.lemma6 + self.dominance
    }
}

#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct SweepSummary {
    pub instances: u64,
    pub permutations: u64,
    pub sharp: u64,
    pub degenerate_mu: u64,
    /// Instances where the polytope bound is strictly stronger.
    pub dominance_strict: u64,
    pub violations: ViolationCounts,
}

#[derive(Debug, Clone, Serialize)]
pub struct SweepOutput {
    pub reports: Vec<BoundsReport>,
    pub summary: SweepSummary,
}

/// Samples one self-map: each component picks a uniformly random subset of
/// the monomials of total degree <= deg_max (coefficients uniform in
/// F_q^*), resampling any component that is constant as a function of
/// F_q^n. Polynomial-level constancy is not enough: over small fields a
/// nonconstant polynomial such as x^2 + x on F_2 induces a constant map,
/// and the invariant machinery rightly refuses those.
pub fn sample_map(
    rng: &mut ChaCha8Rng,
    spec: &FieldSpec,
    nvars: usize,
    deg_max: u32,
) -> PolyVector {
    let monomials = monomials_up_to(nvars, deg_max);
    let q = spec.q();
    let mut components = Vec::with_capacity(nvars);
    for _ in 0..nvars {
        loop {
            let mut poly = MultiPoly::zero(nvars);
            for mono in &monomials {
                if rng.random_bool(0.5) {
                    let c = spec.element_from_index(rng.random_range(1..q));
                    poly.add_term(spec, mono.clone(), c);
                }
            }
            if !poly.is_constant_poly() && !is_constant_component(&poly, spec, nvars) {
                components.push(poly);
                break;
            }
        }
    }
    PolyVector::new(nvars, components).expect("sampled components share nvars")
}

fn is_constant_component(poly: &MultiPoly<FFElement>, spec: &FieldSpec, nvars: usize) -> bool {
    let mut first: Option<FFElement> = None;
    let mut constant = true;
    crate::fields::for_each_point(spec, nvars, |pt| {
        if constant {
            let v = poly.evaluate(spec, pt);
            match &first {
                None => first = Some(v),
                Some(f0) => constant = v == *f0,
            }
        }
    });
    constant
}

/// All monomials in `nvars` variables of total degree at most `deg_max`,
/// in a fixed deterministic order.
pub fn monomials_up_to(nvars: usize, deg_max: u32) -> Vec<Monomial> {
    let mut out = Vec::new();
    let mut exps = vec![0u32; nvars];
    loop {
        out.push(Monomial::new(exps.clone()));
        // odometer with total-degree cap
        let mut i = 0;
        loop {
            if i == nvars {
                return out;
            }
            exps[i] += 1;
            if exps.iter().sum::<u32>() <= deg_max {
                break;
            }
            exps[i] = 0;
            i += 1;
        }
    }
}

/// Runs the sweep: samples per q in order (one seeded stream for the whole
/// run), verifies every instance, and tallies the summary.
pub fn run_sweep(cfg: &SweepConfig) -> Result<SweepOutput, VsError> {
    use rand::SeedableRng;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut reports = Vec::new();
    for &q in &cfg.q_values {
        let (p, e) = factor_prime_power(q).ok_or(VsError::Field(FieldError::NotPrime(q)))?;
        let spec = make_field(p, e)?;
        let vars = default_varnames(cfg.nvars);
        match cfg.family {
            SweepFamily::Random => {
                for _ in 0..cfg.samples {
                    let f = sample_map(&mut rng, &spec, cfg.nvars, cfg.deg_max);
                    reports.push(verify_bounds(&f, &spec, &vars, &cfg.options)?);
                }
            }
            SweepFamily::PolytopeSharp { a_min, a_max } => {
                for a in a_min..=a_max {
                    let (f, spec, _) = sharp_family(
                        &SharpFamilyKind::PolytopeSharp { q, a },
                        cfg.options.budget_domain,
                    )?;
                    let vars = default_varnames(2);
                    reports.push(verify_bounds(&f, &spec, &vars, &cfg.options)?);
                }
            }
        }
    }

    let mut summary = SweepSummary {
        instances: reports.len() as u64,
        permutations: 0,
        sharp: 0,
        degenerate_mu: 0,
        dominance_strict: 0,
        violations: ViolationCounts::default(),
    };
    for r in &reports {
        if r.flags.permutation == Some(true) {
            summary.permutations += 1;
        }
        if r.flags.sharp == Some(true) {
            summary.sharp += 1;
        }
        if r.flags.degenerate_mu {
            summary.degenerate_mu += 1;
        }
        if r.bound_polytope < r.bound_mww {
            summary.dominance_strict += 1;
        }
        if r.flags.theorem_holds == Some(false) {
            summary.violations.theorem += 1;
        }
        if r.flags.lemma3_holds == Some(false) {
            summary.violations.lemma3 += 1;
        }
        if r.flags.lemma6_holds == Some(false) {
            summary.violations.lemma6 += 1;
        }
        if !r.flags.mww_dominated {
            summary.violations.dominance += 1;
        }
    }
    Ok(SweepOutput { reports, summary })
}

/// Re-parses a serialized instance (field + map text) for report
/// round-trip checks. The modulus in the description must match the
/// deterministic one.
pub fn instance_from_desc(desc: &InstanceDesc) -> Result<(FieldSpec, PolyVector), VsError> {
    let spec = make_field(desc.field.p, desc.field.e)?;
    debug_assert_eq!(spec.modulus(), desc.field.modulus.as_slice());
    let f = parse_vector(&desc.map, &spec, &desc.vars)?;
    Ok((spec, f))
}

/// CSV rows for a list of reports (header + one line per instance; the map
/// text is quoted).
pub fn reports_to_csv(reports: &[BoundsReport]) -> String {
    let mut out = String::from(
        "q,nvars,map,domain_size,vf_size,mu,u,bound_polytope,bound_mww,bound_from_u,\
         permutation,theorem_holds,sharp,degenerate_mu,mww_dominated,lemma3_holds,lemma6_holds\n",
    );
    let opt = |v: &Option<u64>| v.map_or(String::new(), |x| x.to_string());
    let optb = |v: &Option<bool>| v.map_or(String::new(), |x| x.to_string());
    for r in reports {
        out.push_str(&format!(
            "{},{},\"{}\",{},{},{},{},{},{},{},{},{},{},{},{},{},{}\n",
            r.q,
            r.nvars,
            r.instance.map,
            r.domain_size,
            opt(&r.vf_size),
            r.mu,
            opt(&r.u_invariant),
            r.bound_polytope,
            r.bound_mww,
            opt(&r.bound_from_u),
            optb(&r.flags.permutation),
            optb(&r.flags.theorem_holds),
            optb(&r.flags.sharp),
            r.flags.degenerate_mu,
            r.flags.mww_dominated,
            optb(&r.flags.lemma3_holds),
            optb(&r.flags.lemma6_holds),
        ));
    }
    out
}
