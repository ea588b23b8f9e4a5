//! `PSL(2,p)` on the projective line and the string C-group families built
//! from the matrices
//!
//! ```text
//! S0 = [[0, 1], [-1, 0]],  S1 = [[0, y], [-1/y, 0]],  S2 = [[a, b], [b, -a]]
//! ```
//!
//! with `y != 0, 1, -1`, `a^2 + b^2 = -1` and `a != 0`.
//!
//! Points are `0, 1, ..., p-1` and `infinity = p`. A matrix
//! `[[alpha, beta], [gamma, delta]]` acts on row vectors, so
//! `x -> (alpha x + gamma) / (beta x + delta)`; this is a right action and
//! matrix products match permutation products.

use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::Serialize;
use thiserror::Error;

use crate::chartable::{CharTableError, CharacterTable, RealType, TableCache};
use crate::perm::{
    conjugacy_classes, enumerate_group, subgroup_generated, Group, PermError, Permutation,
    DEFAULT_CAP,
};
use crate::realization::{
    analyze_gset, coset_action, cone_report, ConeReport, RealizationError, ReportOptions,
};
use crate::stringc::{verify_string_cgroup, StringCError, StringCReport};

pub const MAX_PRIME: u64 = 50;

pub type Mat2 = [[i64; 2]; 2];

#[derive(Debug, Error)]
pub enum PslError {
    #[error("{0} is not an odd prime")]
    NotPrime(u64),
    #[error("p = {0} exceeds the supported bound {MAX_PRIME}")]
    PrimeTooLarge(u64),
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("generators do not form a string C-group")]
    StringCFailed,
    #[error("no character with the Weil pattern for p = {0}")]
    NoMatch(u64),
    #[error(transparent)]
    Perm(#[from] PermError),
    #[error(transparent)]
    CharTable(#[from] CharTableError),
    #[error(transparent)]
    Realization(#[from] RealizationError),
    #[error(transparent)]
    StringC(#[from] StringCError),
}

fn is_odd_prime(p: u64) -> bool {
    p > 2 && (2..p).take_while(|d| d * d <= p).all(|d| p % d != 0)
}

fn md(x: i64, p: u64) -> u64 {
    x.rem_euclid(p as i64) as u64
}

fn inv(x: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    let (mut b, mut e) = (x % p, p - 2);
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    acc
}

pub fn multiplicative_order(y: u64, p: u64) -> u64 {
    let y = y % p;
    if y == 0 {
        return 0;
    }
    let mut x = y;
    let mut k = 1;
    while x != 1 {
        x = x * y % p;
        k += 1;
    }
    k
}

pub fn determinant(m: &Mat2, p: u64) -> u64 {
    md(m[0][0] * m[1][1] - m[0][1] * m[1][0], p)
}

/// Permutation of the projective line induced by `m`.
pub fn mobius_permutation(p: u64, m: &Mat2) -> Permutation {
    let [[a, b], [c, d]] = m.map(|row| row.map(|x| md(x, p)));
    let images = (0..=p)
        .map(|x| {
            let (num, den) = if x == p {
                (a, b)
            } else {
                ((a * x + c) % p, (b * x + d) % p)
            };
            if den == 0 {
                p as u32
            } else {
                (num * inv(den, p) % p) as u32
            }
        })
        .collect();
    Permutation::from_images(images).expect("invertible matrix")
}

fn check_prime(p: u64) -> Result<(), PslError> {
    if !is_odd_prime(p) {
        return Err(PslError::NotPrime(p));
    }
    if p > MAX_PRIME {
        return Err(PslError::PrimeTooLarge(p));
    }
    Ok(())
}

/// `PSL(2,p)` generated by `[[1,1],[0,1]]` and `[[1,0],[1,1]]`.
pub fn psl_group(p: u64) -> Result<Arc<Group>, PslError> {
    check_prime(p)?;
    let gens = [
        mobius_permutation(p, &[[1, 1], [0, 1]]),
        mobius_permutation(p, &[[1, 0], [1, 1]]),
    ];
    Ok(Arc::new(enumerate_group(&gens, DEFAULT_CAP)?))
}

pub fn psl_order(p: u64) -> u64 {
    p * (p * p - 1) / 2
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct PslParams {
    pub p: u64,
    pub y: u64,
    pub a: u64,
    pub b: u64,
}

impl PslParams {
    pub fn new(p: u64, y: u64, a: u64, b: u64) -> Result<Self, PslError> {
        check_prime(p)?;
        let (y, a, b) = (y % p, a % p, b % p);
        if y == 0 || y == 1 || y == p - 1 {
            return Err(PslError::InvalidParams(format!("y = {y} must avoid 0, 1, -1")));
        }
        if a == 0 {
            return Err(PslError::InvalidParams("a must be nonzero".into()));
        }
        if (a * a + b * b + 1) % p != 0 {
            return Err(PslError::InvalidParams(format!("{a}^2 + {b}^2 != -1 mod {p}")));
        }
        Ok(PslParams { p, y, a, b })
    }

    /// `y` with `(a, b)` from [`find_ab`].
    pub fn with_y(p: u64, y: u64) -> Result<Self, PslError> {
        check_prime(p)?;
        let (a, b) = find_ab(p);
        Self::new(p, y, a, b)
    }

    pub fn matrices(&self) -> [Mat2; 3] {
        let p = self.p as i64;
        let (y, a, b) = (self.y as i64, self.a as i64, self.b as i64);
        let y_inv = inv(self.y, self.p) as i64;
        [
            [[0, 1], [p - 1, 0]],
            [[0, y], [(p - y_inv) % p, 0]],
            [[a, b], [b, (p - a) % p]],
        ]
    }
}

/// The three matrices of the worked example in `PSL(2,19)`, as printed.
pub fn example_matrices() -> (PslParams, [Mat2; 3]) {
    let params = PslParams::new(19, 2, 8, 12).expect("valid example");
    (params, [[[0, 1], [-1, 0]], [[0, 2], [9, 0]], [[8, -7], [-7, -8]]])
}

/// Smallest `a >= 1`, then smallest `b >= 0`, with `a^2 + b^2 = -1`.
pub fn find_ab(p: u64) -> (u64, u64) {
    for a in 1..p {
        for b in 0..p {
            if (a * a + b * b + 1) % p == 0 {
                return (a, b);
            }
        }
    }
    unreachable!("-1 is a sum of two squares in every prime field")
}

/// Group elements for three matrices of determinant 1.
pub fn lemma_generators(group: &Group, p: u64, mats: &[Mat2; 3]) -> Result<[u32; 3], PslError> {
    let mut out = [0u32; 3];
    for (slot, m) in out.iter_mut().zip(mats) {
        if determinant(m, p) != 1 {
            return Err(PslError::InvalidParams(format!("{m:?} has determinant != 1")));
        }
        *slot = group
            .index_of(&mobius_permutation(p, m))
            .ok_or_else(|| PslError::InvalidParams(format!("{m:?} not in the group")))?;
    }
    Ok(out)
}

#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct GenerationReport {
    pub generated_order: usize,
    pub expected_order: u64,
    pub generates: bool,
    /// Whether `s0 s1` or `s1 s2` has order at least 6.
    pub lemma_hypothesis: bool,
}

pub fn generation_check(group: &Arc<Group>, p: u64, s: &[u32; 3]) -> GenerationReport {
    let sub = subgroup_generated(group, s);
    let o01 = group.element_order(group.mul(s[0], s[1]));
    let o12 = group.element_order(group.mul(s[1], s[2]));
    GenerationReport {
        generated_order: sub.order(),
        expected_order: psl_order(p),
        generates: sub.order() as u64 == psl_order(p),
        lemma_hypothesis: o01 >= 6 || o12 >= 6,
    }
}

#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct WeilReport {
    pub p: u64,
    pub degree: i64,
    /// Conjugate pairs `(chi, conj chi)` with the pattern.
    pub pairs: Vec<(usize, usize)>,
}

impl WeilReport {
    pub fn unique(&self) -> bool {
        self.pairs.len() == 1
    }
}

/// Characters of degree `(p-1)/2` that are non-real exactly on elements of
/// order `p` and take values in `{-1, 0, 1}` on the other nontrivial classes.
pub fn weil_constituent_check(table: &CharacterTable, p: u64) -> Result<WeilReport, PslError> {
    let cd = table.classes();
    let degree = (p as i64 - 1) / 2;
    let allowed = [-1i64, 0, 1].map(crate::cyclotomic::Cyclo::from_int);
    let mut pairs = Vec::new();
    for (i, chi) in table.irreducibles().iter().enumerate() {
        let j = table.conjugate_of(i);
        if chi.degree() != degree || j <= i {
            continue;
        }
        let pattern = (0..cd.len()).all(|c| {
            let v = chi.value(c);
            let o = cd.element_order(c) as u64;
            if o == 1 {
                true
            } else if o == p {
                !v.is_real()
            } else {
                allowed.contains(v)
            }
        });
        if pattern {
            pairs.push((i, j));
        }
    }
    if pairs.is_empty() {
        return Err(PslError::NoMatch(p));
    }
    Ok(WeilReport { p, degree, pairs })
}

#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct WeilMultiplicity {
    pub degree: i64,
    pub sigma: usize,
    #[serde(rename = "type")]
    pub kind: String,
    pub multiplicity: i64,
    pub subcone_dim: i64,
}

#[derive(Debug, Clone, Serialize)]
pub struct PolytopeReport {
    pub p: u64,
    pub y: u64,
    pub a: u64,
    pub b: u64,
    pub schlafli: Vec<u32>,
    pub string_c: bool,
    pub string_c_detail: StringCReport,
    pub generation: GenerationReport,
    pub stabilizer: Vec<usize>,
    pub stabilizer_order: usize,
    pub weil: WeilMultiplicity,
    /// `(p-1)/28 - 13/14`, when the stabilizer is `<s0, s1>` with `y` of order 7.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bound: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bound_satisfied: Option<bool>,
    pub cone: ConeReport,
}

/// The lower bound `(p-1)/28 - 13/14`.
pub fn wythoff_bound(p: u64) -> BigRational {
    BigRational::new(BigInt::from(p as i64 - 1), 28.into()) - BigRational::new(13.into(), 14.into())
}

/// Builds `<S0,S1,S2>`, verifies it, and analyzes the coset G-set of the
/// subgroup generated by the listed generators.
pub fn psl_polytope(
    params: PslParams,
    mats: &[Mat2; 3],
    stabilizer: &[usize],
    cache: Option<&TableCache>,
    options: ReportOptions,
) -> Result<PolytopeReport, PslError> {
    let p = params.p;
    let group = psl_group(p)?;
    let s = lemma_generators(&group, p, mats)?;
    let detail = verify_string_cgroup(&group, &s)?;
    let generation = generation_check(&group, p, &s);
    if !detail.is_string_c_group() || !generation.generates {
        return Err(PslError::StringCFailed);
    }
    let cd = Arc::new(conjugacy_classes(&group));
    let table = Arc::new(CharacterTable::compute_cached(&cd, cache)?);
    let weil = weil_constituent_check(&table, p)?;
    let h_gens: Vec<u32> = stabilizer.iter().map(|&i| s[i]).collect();
    let h = subgroup_generated(&group, &h_gens);
    let gset = Arc::new(coset_action(&h));
    let analysis = analyze_gset(&table, &gset)?;
    let (chi, _) = weil.pairs[0];
    let sigma = analysis.sigma_of_chi(chi);
    let real = &analysis.real_irreducibles()[sigma];
    let weil_m = WeilMultiplicity {
        degree: weil.degree,
        sigma,
        kind: real.kind.symbol().to_string(),
        multiplicity: analysis.m_sigma()[sigma],
        subcone_dim: analysis.subcone_dim(sigma),
    };
    debug_assert_eq!(real.kind, RealType::C);
    let cone = cone_report(&analysis, options);
    Ok(PolytopeReport {
        p,
        y: params.y,
        a: params.a,
        b: params.b,
        schlafli: detail.schlafli.clone(),
        string_c: detail.is_string_c_group(),
        string_c_detail: detail,
        generation,
        stabilizer: stabilizer.to_vec(),
        stabilizer_order: h.order(),
        weil: weil_m,
        bound: None,
        bound_satisfied: None,
        cone,
    })
}

/// The worked example: `p = 19`, vertex stabilizer `<s1, s2>`.
pub fn example_pipeline(
    cache: Option<&TableCache>,
    options: ReportOptions,
) -> Result<PolytopeReport, PslError> {
    let (params, mats) = example_matrices();
    psl_polytope(params, &mats, &[1, 2], cache, options)
}

/// Large essential Wythoff dimension: `p = 3 mod 4`, `y` of order 7,
/// vertex stabilizer `<s0, s1>` (dihedral of order 14).
pub fn counterexample_pipeline(
    p: u64,
    y: u64,
    cache: Option<&TableCache>,
    options: ReportOptions,
) -> Result<PolytopeReport, PslError> {
    check_prime(p)?;
    if p % 4 != 3 {
        return Err(PslError::InvalidParams(format!("p = {p} is not 3 mod 4")));
    }
    if multiplicative_order(y, p) != 7 {
        return Err(PslError::InvalidParams(format!("y = {y} does not have order 7 mod {p}")));
    }
    let params = PslParams::with_y(p, y)?;
    let mut report = psl_polytope(params, &params.matrices(), &[0, 1], cache, options)?;
    let bound = wythoff_bound(p);
    report.bound_satisfied = Some(BigRational::from_integer(report.weil.multiplicity.into()) >= bound);
    report.bound = Some(crate::cyclotomic::format_rational(&bound));
    Ok(report)
}

/// Smallest `y` of multiplicative order `k` mod `p`.
pub fn element_of_order(p: u64, k: u64) -> Option<u64> {
    (2..p).find(|&y| multiplicative_order(y, p) == k)
}

#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct SearchRow {
    pub y: u64,
    pub a: u64,
    pub b: u64,
    pub schlafli: Vec<u32>,
    pub string_c: bool,
    pub generates: bool,
}

#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct PslSearch {
    pub p: u64,
    /// One verified representative per Schlafli type, sorted by type.
    pub types: Vec<SearchRow>,
    /// Some generating triple has `s0 s1` of order 3.
    pub order_three: bool,
}

/// Exploratory scan of the whole matrix family for one prime: every valid
/// `(y, a, b)` is classified by Schlafli type, and one triple per type is
/// fully verified (string C-group and generation).
pub fn psl_search(p: u64) -> Result<PslSearch, PslError> {
    let group = psl_group(p)?;
    let mut seen: std::collections::BTreeMap<Vec<u32>, SearchRow> = Default::default();
    for y in 2..p - 1 {
        for a in 1..p {
            for b in 0..p {
                if (a * a + b * b + 1) % p != 0 {
                    continue;
                }
                let params = PslParams::new(p, y, a, b)?;
                let s = lemma_generators(&group, p, &params.matrices())?;
                let schlafli = vec![
                    group.element_order(group.mul(s[0], s[1])),
                    group.element_order(group.mul(s[1], s[2])),
                ];
                if let Some(row) = seen.get(&schlafli) {
                    if row.generates {
                        continue;
                    }
                }
                let rep = verify_string_cgroup(&group, &s)?;
                let generates = generation_check(&group, p, &s).generates;
                let better = seen.get(&schlafli).is_none_or(|r| !r.generates && generates);
                if better {
                    seen.insert(
                        schlafli.clone(),
                        SearchRow { y, a, b, schlafli, string_c: rep.is_string_c_group(), generates },
                    );
                }
            }
        }
    }
    let types: Vec<SearchRow> = seen.into_values().collect();
    let order_three = types.iter().any(|r| r.generates && r.string_c && r.schlafli[0] == 3);
    Ok(PslSearch { p, types, order_three })
}
