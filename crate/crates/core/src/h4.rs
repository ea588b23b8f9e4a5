//! Exact quaternions over `Q(sqrt 5)`, the icosians and the reflection group
//! of type H4 acting on them.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_rational::Rational64;
use num_traits::Zero;
use serde::Serialize;
use thiserror::Error;

use crate::chartable::{CharTableError, CharacterTable, TableCache};
use crate::cyclotomic::{rational, Cyclo};
use crate::perm::{conjugacy_classes, enumerate_group, subgroup_generated, Group, PermError, Permutation, Subgroup};
use crate::realization::{
    analyze_gset, coset_action, cone_report, ConeReport, GSetAnalysis, RealizationError,
    ReportOptions,
};
use crate::stringc::{verify_string_cgroup, StringCError, StringCReport};

#[derive(Debug, Error)]
pub enum H4Error {
    #[error("icosian closure exceeded {0} elements")]
    ClosureOverflow(usize),
    #[error("120-cell profile mismatch: {0}")]
    ProfileMismatch(String),
    #[error("cross-check failed: {0}")]
    CrossCheckFailed(String),
    #[error(transparent)]
    Perm(#[from] PermError),
    #[error(transparent)]
    CharTable(#[from] CharTableError),
    #[error(transparent)]
    Realization(#[from] RealizationError),
    #[error(transparent)]
    StringC(#[from] StringCError),
}

/// `x + y sqrt 5`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct QSqrt5 {
    pub x: Rational64,
    pub y: Rational64,
}

impl QSqrt5 {
    pub fn new(x: Rational64, y: Rational64) -> Self {
        QSqrt5 { x, y }
    }

    pub fn int(n: i64) -> Self {
        QSqrt5::new(n.into(), 0.into())
    }

    pub fn zero() -> Self {
        QSqrt5::default()
    }

    pub fn one() -> Self {
        QSqrt5::int(1)
    }

    pub fn sqrt5() -> Self {
        QSqrt5::new(0.into(), 1.into())
    }

    pub fn is_zero(&self) -> bool {
        self.x.is_zero() && self.y.is_zero()
    }

    pub fn scale(self, r: Rational64) -> Self {
        QSqrt5::new(self.x * r, self.y * r)
    }

    pub fn to_f64(self) -> f64 {
        let f = |r: Rational64| *r.numer() as f64 / *r.denom() as f64;
        f(self.x) + f(self.y) * 5f64.sqrt()
    }

    /// The same number inside the cyclotomic field.
    pub fn to_cyclo(self) -> Cyclo {
        let r = |q: Rational64| rational(*q.numer(), *q.denom());
        Cyclo::from_rational(r(self.x)) + crate::cyclotomic::sqrt5().scale(&r(self.y))
    }
}

impl Add for QSqrt5 {
    type Output = QSqrt5;
    fn add(self, o: QSqrt5) -> QSqrt5 {
        QSqrt5::new(self.x + o.x, self.y + o.y)
    }
}

impl Sub for QSqrt5 {
    type Output = QSqrt5;
    fn sub(self, o: QSqrt5) -> QSqrt5 {
        QSqrt5::new(self.x - o.x, self.y - o.y)
    }
}

impl Mul for QSqrt5 {
    type Output = QSqrt5;
    fn mul(self, o: QSqrt5) -> QSqrt5 {
        QSqrt5::new(
            self.x * o.x + Rational64::from(5) * self.y * o.y,
            self.x * o.y + self.y * o.x,
        )
    }
}

impl Neg for QSqrt5 {
    type Output = QSqrt5;
    fn neg(self) -> QSqrt5 {
        QSqrt5::new(-self.x, -self.y)
    }
}

impl fmt::Display for QSqrt5 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.x.is_zero(), self.y.is_zero()) {
            (_, true) => write!(f, "{}", self.x),
            (true, false) => write!(f, "{}*r5", self.y),
            _ => write!(f, "{}+{}*r5", self.x, self.y),
        }
    }
}

/// `w + x i + y j + z k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct QuatQ5 {
    pub w: QSqrt5,
    pub x: QSqrt5,
    pub y: QSqrt5,
    pub z: QSqrt5,
}

impl QuatQ5 {
    pub fn new(w: QSqrt5, x: QSqrt5, y: QSqrt5, z: QSqrt5) -> Self {
        QuatQ5 { w, x, y, z }
    }

    pub fn one() -> Self {
        QuatQ5::new(QSqrt5::one(), QSqrt5::zero(), QSqrt5::zero(), QSqrt5::zero())
    }

    pub fn i() -> Self {
        QuatQ5::new(QSqrt5::zero(), QSqrt5::one(), QSqrt5::zero(), QSqrt5::zero())
    }

    pub fn j() -> Self {
        QuatQ5::new(QSqrt5::zero(), QSqrt5::zero(), QSqrt5::one(), QSqrt5::zero())
    }

    pub fn k() -> Self {
        QuatQ5::new(QSqrt5::zero(), QSqrt5::zero(), QSqrt5::zero(), QSqrt5::one())
    }

    pub fn coords(&self) -> [QSqrt5; 4] {
        [self.w, self.x, self.y, self.z]
    }

    pub fn conj(self) -> Self {
        QuatQ5::new(self.w, -self.x, -self.y, -self.z)
    }

    pub fn norm(self) -> QSqrt5 {
        self.coords().iter().fold(QSqrt5::zero(), |acc, &c| acc + c * c)
    }

    /// Euclidean inner product of the coordinate vectors.
    pub fn dot(self, o: QuatQ5) -> QSqrt5 {
        self.coords()
            .iter()
            .zip(o.coords())
            .fold(QSqrt5::zero(), |acc, (&a, b)| acc + a * b)
    }

    pub fn scale(self, r: Rational64) -> Self {
        QuatQ5::new(self.w.scale(r), self.x.scale(r), self.y.scale(r), self.z.scale(r))
    }

    /// `x -> -alpha conj(x) alpha`, the reflection in a unit `alpha`.
    pub fn reflect(self, alpha: QuatQ5) -> Self {
        -(alpha * self.conj() * alpha)
    }
}

impl Mul for QuatQ5 {
    type Output = QuatQ5;
    fn mul(self, o: QuatQ5) -> QuatQ5 {
        let (a1, b1, c1, d1) = (self.w, self.x, self.y, self.z);
        let (a2, b2, c2, d2) = (o.w, o.x, o.y, o.z);
        QuatQ5::new(
            a1 * a2 - b1 * b2 - c1 * c2 - d1 * d2,
            a1 * b2 + b1 * a2 + c1 * d2 - d1 * c2,
            a1 * c2 - b1 * d2 + c1 * a2 + d1 * b2,
            a1 * d2 + b1 * c2 - c1 * b2 + d1 * a2,
        )
    }
}

impl Neg for QuatQ5 {
    type Output = QuatQ5;
    fn neg(self) -> QuatQ5 {
        QuatQ5::new(-self.w, -self.x, -self.y, -self.z)
    }
}

impl Add for QuatQ5 {
    type Output = QuatQ5;
    fn add(self, o: QuatQ5) -> QuatQ5 {
        QuatQ5::new(self.w + o.w, self.x + o.x, self.y + o.y, self.z + o.z)
    }
}

impl Serialize for QuatQ5 {
    /// Four coordinates, each `[x, y]` as rational strings for `x + y sqrt 5`.
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let pairs: Vec<[String; 2]> = self
            .coords()
            .iter()
            .map(|c| [c.x.to_string(), c.y.to_string()])
            .collect();
        pairs.serialize(s)
    }
}

/// `2 cos(2 pi / 5) = (-1 + sqrt 5) / 2`.
pub fn golden_a() -> QSqrt5 {
    QSqrt5::new(Rational64::new(-1, 2), Rational64::new(1, 2))
}

/// `2 cos(4 pi / 5) = (-1 - sqrt 5) / 2`.
pub fn golden_b() -> QSqrt5 {
    QSqrt5::new(Rational64::new(-1, 2), Rational64::new(-1, 2))
}

/// Simple roots `j`, `(a i + b j - k)/2`, `k`, `(a + b i - k)/2`.
pub fn root_system_h4() -> [QuatQ5; 4] {
    let (a, b, z) = (golden_a(), golden_b(), QSqrt5::zero());
    let half = Rational64::new(1, 2);
    [
        QuatQ5::j(),
        QuatQ5::new(z, a, b, -QSqrt5::one()).scale(half),
        QuatQ5::k(),
        QuatQ5::new(a, b, z, -QSqrt5::one()).scale(half),
    ]
}

const ICOSIAN_CAP: usize = 1000;

/// Closure of `alpha_1, alpha_2, alpha_3, -1`, breadth-first from 1.
pub fn icosian_group() -> Result<Vec<QuatQ5>, H4Error> {
    let [a1, a2, a3, _] = root_system_h4();
    let gens = [a1, a2, a3, -QuatQ5::one()];
    let mut elems = vec![QuatQ5::one()];
    let mut seen: HashMap<QuatQ5, usize> = HashMap::from([(QuatQ5::one(), 0)]);
    let mut next = 0;
    while next < elems.len() {
        let x = elems[next];
        next += 1;
        for &g in &gens {
            let y = x * g;
            if !seen.contains_key(&y) {
                if elems.len() >= ICOSIAN_CAP {
                    return Err(H4Error::ClosureOverflow(ICOSIAN_CAP));
                }
                seen.insert(y, elems.len());
                elems.push(y);
            }
        }
    }
    Ok(elems)
}

fn index_map(points: &[QuatQ5]) -> HashMap<QuatQ5, u32> {
    points.iter().enumerate().map(|(i, &q)| (q, i as u32)).collect()
}

fn point_permutation(points: &[QuatQ5], index: &HashMap<QuatQ5, u32>, f: impl Fn(QuatQ5) -> QuatQ5) -> Permutation {
    let images = points.iter().map(|&q| index[&f(q)]).collect();
    Permutation::from_images(images).expect("bijection on the icosians")
}

/// The icosians acting on themselves by right multiplication, a faithful
/// permutation model of `SL(2,5)` on 120 points.
pub fn icosian_permutation_group() -> Result<Arc<Group>, H4Error> {
    let icosians = icosian_group()?;
    let index = index_map(&icosians);
    let [a1, a2, a3, _] = root_system_h4();
    let gens: Vec<Permutation> = [a1, a2, a3, -QuatQ5::one()]
        .iter()
        .map(|&g| point_permutation(&icosians, &index, |x| x * g))
        .collect();
    Ok(Arc::new(enumerate_group(&gens, 1000)?))
}

/// The reflection group generated by `s_1, ..., s_4` acting on the icosians.
#[derive(Debug, Clone)]
pub struct H4Model {
    pub icosians: Vec<QuatQ5>,
    pub group: Arc<Group>,
    /// `s_1, ..., s_4` as element indices.
    pub s: [u32; 4],
}

impl H4Model {
    /// Point index of the icosian `1`.
    pub fn base_point(&self) -> u32 {
        0
    }

    pub fn stabilizer(&self, which: &[usize]) -> Subgroup {
        let gens: Vec<u32> = which.iter().map(|&i| self.s[i]).collect();
        subgroup_generated(&self.group, &gens)
    }

    pub fn string_c(&self) -> Result<StringCReport, H4Error> {
        Ok(verify_string_cgroup(&self.group, &self.s)?)
    }
}

pub fn h4_group() -> Result<H4Model, H4Error> {
    let icosians = icosian_group()?;
    let index = index_map(&icosians);
    let gens: Vec<Permutation> = root_system_h4()
        .iter()
        .map(|&alpha| point_permutation(&icosians, &index, |x| x.reflect(alpha)))
        .collect();
    let group = Arc::new(enumerate_group(&gens, 200_000)?);
    let g = group.generators();
    let s = [g[0], g[1], g[2], g[3]];
    Ok(H4Model { icosians, group, s })
}

/// One row of a multiplicity profile.
#[derive(Debug, Clone, Serialize, PartialEq, Eq, PartialOrd, Ord)]
pub struct ProfileEntry {
    pub multiplicity: i64,
    pub degree: i64,
    #[serde(rename = "type")]
    pub kind: String,
}

pub fn multiplicity_profile(a: &GSetAnalysis) -> Vec<ProfileEntry> {
    let real = a.real_irreducibles();
    let mut out: Vec<ProfileEntry> = a
        .constituents()
        .into_iter()
        .map(|s| ProfileEntry {
            multiplicity: a.m_sigma()[s],
            degree: real[s].degree(),
            kind: real[s].kind.symbol().to_string(),
        })
        .collect();
    out.sort();
    out
}

#[derive(Debug, Clone, Serialize)]
pub struct Cell120Report {
    pub stabilizer_order: usize,
    pub profile: Vec<ProfileEntry>,
    pub multiplicity_one: usize,
    pub multiplicity_two_degrees: Vec<i64>,
    pub multiplicity_three_degrees: Vec<i64>,
    pub all_real: bool,
    /// e.g. `15 x half-line, 3 x PSD 2x2, 2 x PSD 3x3`.
    pub cone: String,
    pub report: ConeReport,
}

fn degrees_with(profile: &[ProfileEntry], m: i64) -> Vec<i64> {
    let mut d: Vec<i64> = profile.iter().filter(|e| e.multiplicity == m).map(|e| e.degree).collect();
    d.sort();
    d
}

pub fn cone_shape(profile: &[ProfileEntry]) -> String {
    let max = profile.iter().map(|e| e.multiplicity).max().unwrap_or(0);
    (1..=max)
        .filter_map(|m| {
            let n = profile.iter().filter(|e| e.multiplicity == m).count();
            (n > 0).then(|| {
                if m == 1 {
                    format!("{n} x half-line")
                } else {
                    format!("{n} x PSD {m}x{m}")
                }
            })
        })
        .collect::<Vec<_>>()
        .join(", ")
}

pub fn h4_table(model: &H4Model, cache: Option<&TableCache>) -> Result<Arc<CharacterTable>, H4Error> {
    let cd = Arc::new(conjugacy_classes(&model.group));
    Ok(Arc::new(CharacterTable::compute_cached(&cd, cache)?))
}

/// The vertex set of the 120-cell: cosets of `<s2, s3, s4>` (order 24).
pub fn validate_120cell(cache: Option<&TableCache>, options: ReportOptions) -> Result<Cell120Report, H4Error> {
    let model = h4_group()?;
    let table = h4_table(&model, cache)?;
    let h = model.stabilizer(&[1, 2, 3]);
    let gset = Arc::new(coset_action(&h));
    let a = analyze_gset(&table, &gset)?;
    let profile = multiplicity_profile(&a);
    let report = Cell120Report {
        stabilizer_order: h.order(),
        multiplicity_one: profile.iter().filter(|e| e.multiplicity == 1).count(),
        multiplicity_two_degrees: degrees_with(&profile, 2),
        multiplicity_three_degrees: degrees_with(&profile, 3),
        all_real: profile.iter().all(|e| e.kind == "R"),
        cone: cone_shape(&profile),
        report: cone_report(&a, options),
        profile,
    };
    let expected = report.multiplicity_one == 15
        && report.multiplicity_two_degrees == [16, 16, 48]
        && report.multiplicity_three_degrees == [25, 36]
        && report.all_real
        && report.profile.iter().all(|e| e.multiplicity <= 3);
    if !expected {
        return Err(H4Error::ProfileMismatch(report.cone.clone()));
    }
    Ok(report)
}

/// Layer sizes with, per constituent, the sorted `(size, cosine)` pairs.
/// Independent of how layers and characters are numbered.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CosineSignature {
    pub layer_sizes: Vec<usize>,
    pub profile: Vec<ProfileEntry>,
    pub cosines: Vec<Vec<(usize, String)>>,
}

pub fn cosine_signature(a: &GSetAnalysis) -> CosineSignature {
    let sizes = &a.layers().sizes;
    let mut layer_sizes = sizes.clone();
    layer_sizes.sort();
    let mut cosines: Vec<Vec<(usize, String)>> = a
        .constituents()
        .into_iter()
        .map(|s| {
            let mut col: Vec<(usize, String)> = a
                .layer_cosine_sums(s)
                .iter()
                .zip(sizes)
                .map(|(c, &n)| (n, c.to_string()))
                .collect();
            col.sort();
            col
        })
        .collect();
    cosines.sort();
    CosineSignature {
        layer_sizes,
        profile: multiplicity_profile(a),
        cosines,
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Cell600Geometry {
    pub stabilizer_order: usize,
    pub stabilizer_is_point_stabilizer: bool,
    /// Some degree-4 constituent has cosine vector `Re(x)` over the layers.
    pub natural_realization_found: bool,
    pub signature: CosineSignature,
}

/// The 600-cell from the geometric model: cosets of `<s1, s2, s3>`, the
/// stabilizer of the icosian 1.
pub fn sixhundred_cell_geometric(
    model: &H4Model,
    table: &Arc<CharacterTable>,
) -> Result<(Cell600Geometry, GSetAnalysis), H4Error> {
    let h = model.stabilizer(&[0, 1, 2]);
    let base = model.base_point();
    let fixes = h.members().iter().all(|&g| model.group.images(g)[base as usize] == base);
    let point_stab = model
        .group
        .order()
        .checked_div(h.order())
        .is_some_and(|idx| idx == model.icosians.len());
    let gset = Arc::new(coset_action(&h));
    let a = analyze_gset(table, &gset)?;
    let real_parts: Vec<Cyclo> = a
        .layers()
        .reps
        .iter()
        .map(|&p| {
            let g = gset.rep(p);
            let x = model.icosians[model.group.images(g)[base as usize] as usize];
            x.w.to_cyclo()
        })
        .collect();
    let real = a.real_irreducibles();
    let natural = a
        .constituents()
        .into_iter()
        .any(|s| real[s].degree() == 4 && a.layer_cosine_sums(s) == real_parts);
    let geometry = Cell600Geometry {
        stabilizer_order: h.order(),
        stabilizer_is_point_stabilizer: fixes && point_stab,
        natural_realization_found: natural,
        signature: cosine_signature(&a),
    };
    Ok((geometry, a))
}

#[derive(Debug, Clone, Serialize)]
pub struct CrossCheck600 {
    pub layers_geometric: usize,
    pub layers_wreath: usize,
    pub layer_sizes_equal: bool,
    pub profiles_equal: bool,
    pub cosines_equal: bool,
}

impl CrossCheck600 {
    pub fn passed(&self) -> bool {
        self.layer_sizes_equal && self.profiles_equal && self.cosines_equal
    }
}

/// Compares the geometric 600-cell with the wreath-product model.
pub fn cross_check_600cell(cache: Option<&TableCache>) -> Result<CrossCheck600, H4Error> {
    let model = h4_group()?;
    let table = h4_table(&model, cache)?;
    let (geo, a) = sixhundred_cell_geometric(&model, &table)?;
    let (_, wa) = crate::wreath::sixhundred_cell_report(cache, ReportOptions { products: false })
        .map_err(|e| H4Error::CrossCheckFailed(e.to_string()))?;
    let wsig = cosine_signature(&wa);
    let check = CrossCheck600 {
        layers_geometric: a.layers().len(),
        layers_wreath: wa.layers().len(),
        layer_sizes_equal: geo.signature.layer_sizes == wsig.layer_sizes,
        profiles_equal: geo.signature.profile == wsig.profile,
        cosines_equal: geo.signature.cosines == wsig.cosines,
    };
    if !check.passed() {
        return Err(H4Error::CrossCheckFailed(format!("{check:?}")));
    }
    Ok(check)
}

pub fn icosians_json() -> Result<serde_json::Value, H4Error> {
    Ok(serde_json::to_value(icosian_group()?).expect("serializable"))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> Rational64 {
        Rational64::new(n, d)
    }

    #[test]
    fn golden_ratio_identities() {
        let (a, b) = (golden_a(), golden_b());
        assert_eq!(a + b, QSqrt5::int(-1));
        assert_eq!(a * b, QSqrt5::int(-1));
        assert_eq!(a * a + b * b, QSqrt5::int(3));
        assert_eq!(QSqrt5::sqrt5() * QSqrt5::sqrt5(), QSqrt5::int(5));
        assert!((a.to_f64() - 2.0 * (2.0 * std::f64::consts::PI / 5.0).cos()).abs() < 1e-12);
    }

    #[test]
    fn cyclotomic_embedding() {
        let q = QSqrt5::new(r(1, 3), r(-2, 7));
        let c = q.to_cyclo();
        assert!((c.to_complex().0 - q.to_f64()).abs() < 1e-12);
        assert_eq!((q * q).to_cyclo(), &c * &c);
    }

    #[test]
    fn quaternion_rules() {
        let (i, j, k) = (QuatQ5::i(), QuatQ5::j(), QuatQ5::k());
        assert_eq!(i * j, k);
        assert_eq!(j * k, i);
        assert_eq!(k * i, j);
        assert_eq!(i * i, -QuatQ5::one());
        let [_, a2, _, a4] = root_system_h4();
        assert_eq!((a2 * a4).norm(), QSqrt5::one());
        assert_eq!((a2 * a4).conj(), a4.conj() * a2.conj());
    }

    #[test]
    fn simple_roots() {
        let roots = root_system_h4();
        for a in roots {
            assert_eq!(a.norm(), QSqrt5::one());
        }
        let a4 = roots[3];
        let p = roots[0] * roots[1];
        assert_eq!(p * p, a4);
        // Coxeter angles: <a_i, a_j> = -cos(pi / m)
        let cos = |m: u32| -> QSqrt5 {
            match m {
                2 => QSqrt5::zero(),
                3 => QSqrt5::new(r(-1, 2), r(0, 1)),
                5 => QSqrt5::new(r(-1, 4), r(-1, 4)),
                _ => unreachable!(),
            }
        };
        assert_eq!(roots[0].dot(roots[1]), cos(5));
        assert_eq!(roots[1].dot(roots[2]), cos(3));
        assert_eq!(roots[2].dot(roots[3]), cos(3));
        assert_eq!(roots[0].dot(roots[2]), cos(2));
        assert_eq!(roots[0].dot(roots[3]), cos(2));
        assert_eq!(roots[1].dot(roots[3]), cos(2));
    }

    #[test]
    fn icosians() {
        let u = icosian_group().unwrap();
        assert_eq!(u.len(), 120);
        for q in [QuatQ5::one(), QuatQ5::i(), QuatQ5::j(), QuatQ5::k()] {
            assert!(u.contains(&q) && u.contains(&-q));
        }
        let set: std::collections::HashSet<_> = u.iter().collect();
        for &x in &u {
            assert_eq!(x.norm(), QSqrt5::one());
            assert!(set.contains(&x.conj()));
            assert_eq!(x * x.conj(), QuatQ5::one());
        }
        for &x in u.iter().step_by(7) {
            for &y in &u {
                assert!(set.contains(&(x * y)));
            }
        }
        assert!(set.contains(&root_system_h4()[3]));
    }

    #[test]
    fn sl25_invariants() {
        let g = icosian_permutation_group().unwrap();
        assert_eq!(g.order(), 120);
        assert_eq!(g.center().len(), 2);
        let cd = Arc::new(conjugacy_classes(&g));
        let mut sizes = cd.sizes();
        sizes.sort();
        assert_eq!(sizes, [1, 1, 12, 12, 12, 12, 20, 20, 30]);
        let t = CharacterTable::compute(&cd).unwrap();
        let mut deg = t.degrees();
        deg.sort();
        assert_eq!(deg, [1, 2, 2, 3, 3, 4, 4, 5, 6]);
    }

    #[test]
    fn reflection_group() {
        let m = h4_group().unwrap();
        assert_eq!(m.group.order(), 14400);
        for (i, &s) in m.s.iter().enumerate() {
            assert_eq!(m.group.element_order(s), 2, "s{}", i + 1);
        }
        let alpha = root_system_h4();
        for (x, a) in m.icosians.iter().zip(alpha.iter().cycle()) {
            assert_eq!(x.reflect(*a).norm(), x.norm());
            assert_eq!(x.reflect(*a).reflect(*a), *x);
        }
        let rep = m.string_c().unwrap();
        assert!(rep.is_string_c_group());
        assert_eq!(rep.schlafli, [5, 3, 3]);
        assert_eq!(m.stabilizer(&[0, 1, 2]).order(), 120);
        assert_eq!(m.stabilizer(&[1, 2, 3]).order(), 24);
        // faithful: only the identity fixes every icosian
        assert_eq!(
            (0..m.group.order() as u32)
                .filter(|&g| m.group.images(g).iter().enumerate().all(|(i, &x)| i as u32 == x))
                .count(),
            1
        );
    }

    #[test]
    fn cone_shape_strings() {
        let e = |m, d| ProfileEntry { multiplicity: m, degree: d, kind: "R".into() };
        assert_eq!(cone_shape(&[e(1, 1), e(2, 4)]), "1 x half-line, 1 x PSD 2x2");
    }

    #[test]
    fn icosian_export() {
        let v = icosians_json().unwrap();
        assert_eq!(v.as_array().unwrap().len(), 120);
        assert_eq!(v[0], serde_json::json!([["1", "0"], ["0", "0"], ["0", "0"], ["0", "0"]]));
    }
}
