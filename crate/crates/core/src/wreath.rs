//! `U wr C2` acting imprimitively on two copies of the points of `U`, its
//! irreducible characters read off from `Irr(U)`, and the 600-cell.
//!
//! `(u, v)` moves the first copy by `u` and the second by `v`; `t` swaps the
//! copies. An element with flip bit set is written `t (u, v)`, so
//! `t^-1 (u, v) t = (v, u)`.

use std::sync::Arc;

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::chartable::dixon::choose_prime;
use crate::chartable::{induced_trivial_character, CharTableError, Character, CharacterTable, TableCache};
use crate::cyclotomic::{rational, Cyclo};
use crate::perm::{
    conjugacy_classes, double_cosets, enumerate_with_degree, subgroup_generated, ClassData, Group,
    PermError, Permutation, Subgroup, DEFAULT_CAP,
};
use crate::realization::{
    analyze_gset, coset_action, cone_report, ConeReport, GSetAnalysis, RealizationError,
    ReportOptions,
};

#[derive(Debug, Error)]
pub enum WreathError {
    #[error("quotient has order {got}, expected {expected}")]
    QuotientMismatch { got: usize, expected: usize },
    #[error("constituent {0} has multiplicity {1}, expected 1")]
    MultiplicityMismatch(usize, i64),
    #[error("cross-check failed: {0}")]
    CrossCheckFailed(String),
    #[error(transparent)]
    Perm(#[from] PermError),
    #[error(transparent)]
    CharTable(#[from] CharTableError),
    #[error(transparent)]
    Realization(#[from] RealizationError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct WreathElement {
    pub flip: bool,
    pub u: u32,
    pub v: u32,
}

#[derive(Debug, Clone)]
pub struct WreathGroup {
    base: Arc<Group>,
    group: Arc<Group>,
    hat_h: Subgroup,
    center: Vec<u32>,
    flip: u32,
}

pub fn wreath_c2(base: &Arc<Group>) -> Result<WreathGroup, WreathError> {
    wreath_c2_capped(base, DEFAULT_CAP)
}

pub fn wreath_c2_capped(base: &Arc<Group>, cap: usize) -> Result<WreathGroup, WreathError> {
    let n = base.degree();
    let id = base.identity();
    let mut gens: Vec<Permutation> = base
        .generators()
        .iter()
        .map(|&g| encode_perm(base, WreathElement { flip: false, u: g, v: id }))
        .collect();
    let t = encode_perm(base, WreathElement { flip: true, u: id, v: id });
    gens.push(t.clone());
    let group = Arc::new(enumerate_with_degree(2 * n, &gens, cap)?);
    let flip = group.index_of(&t).expect("generator");
    let mut h_gens: Vec<u32> = base
        .generators()
        .iter()
        .map(|&g| {
            let p = encode_perm(base, WreathElement { flip: false, u: g, v: g });
            group.index_of(&p).expect("diagonal element")
        })
        .collect();
    h_gens.push(flip);
    let hat_h = subgroup_generated(&group, &h_gens);
    let center = group.center();
    Ok(WreathGroup {
        base: Arc::clone(base),
        group,
        hat_h,
        center,
        flip,
    })
}

fn encode_perm(base: &Group, e: WreathElement) -> Permutation {
    let n = base.degree() as u32;
    let (u, v) = (base.images(e.u), base.images(e.v));
    let images = if e.flip {
        v.iter().map(|&x| x + n).chain(u.iter().copied()).collect()
    } else {
        u.iter().copied().chain(v.iter().map(|&x| x + n)).collect()
    };
    Permutation::from_images(images).expect("valid permutation")
}

impl WreathGroup {
    pub fn base(&self) -> &Arc<Group> {
        &self.base
    }

    pub fn group(&self) -> &Arc<Group> {
        &self.group
    }

    /// `{1, t} . {(u, u)}`.
    pub fn hat_h(&self) -> &Subgroup {
        &self.hat_h
    }

    pub fn center(&self) -> &[u32] {
        &self.center
    }

    pub fn flip(&self) -> u32 {
        self.flip
    }

    pub fn decode(&self, x: u32) -> WreathElement {
        let n = self.base.degree();
        let imgs = self.group.images(x);
        let flip = (imgs[0] as usize) >= n;
        let first: Vec<u32> = imgs[..n].iter().map(|&i| i % n as u32).collect();
        let second: Vec<u32> = imgs[n..].iter().map(|&i| i % n as u32).collect();
        let (u, v) = if flip { (second, first) } else { (first, second) };
        let find = |p: &[u32]| self.base.index_of_images(p).expect("component in base group");
        WreathElement { flip, u: find(&u), v: find(&v) }
    }

    pub fn encode(&self, e: WreathElement) -> u32 {
        self.group
            .index_of(&encode_perm(&self.base, e))
            .expect("element of the wreath product")
    }

    /// Action of `e` on the right cosets of `hat H`. The coset of `(x, y)`
    /// or `t (x, y)` is labelled by the base element `x^-1 y`, so the points
    /// are the elements of `U` and the base point is `1`.
    fn coset_image(&self, e: WreathElement) -> Permutation {
        let b = &self.base;
        let xi = b.inverse(e.u);
        let images = (0..b.order() as u32)
            .map(|w| {
                let w = if e.flip { b.inverse(w) } else { w };
                b.mul(b.mul(xi, w), e.v)
            })
            .collect();
        Permutation::from_images(images).expect("bijection")
    }

    /// Permutation image on the right cosets of `hat H`; its kernel is the
    /// center, which is checked by comparing orders.
    pub fn quotient(&self) -> Result<Arc<Group>, WreathError> {
        let gens: Vec<Permutation> = self
            .group
            .generators()
            .iter()
            .map(|&g| self.coset_image(self.decode(g)))
            .collect();
        let q = Arc::new(enumerate_with_degree(self.base.order(), &gens, DEFAULT_CAP)?);
        let expected = self.group.order() / self.center.len();
        if q.order() != expected {
            return Err(WreathError::QuotientMismatch { got: q.order(), expected });
        }
        Ok(q)
    }

    /// Image of `hat H` in [`WreathGroup::quotient`].
    pub fn quotient_stabilizer(&self, q: &Arc<Group>) -> Subgroup {
        let images: Vec<u32> = self
            .hat_h
            .generators()
            .iter()
            .map(|&h| q.index_of(&self.coset_image(self.decode(h))).expect("in quotient"))
            .collect();
        subgroup_generated(q, &images)
    }
}

/// Base classes `c` merged with `c^-1`, in order of first member.
pub fn symmetrized_classes(cd: &ClassData) -> Vec<Vec<usize>> {
    let mut out: Vec<Vec<usize>> = Vec::new();
    for c in 0..cd.len() {
        let d = cd.inverse_class(c);
        if d >= c {
            out.push(if d == c { vec![c] } else { vec![c, d] });
        }
    }
    out
}

/// Which irreducible of `U wr C2` a row comes from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum WreathLabel {
    /// Induced from `phi x theta`, `phi < theta`.
    Induced { phi: usize, theta: usize },
    /// Extension of `phi x phi` with `chi(t (u, v)) = sign phi(uv)`.
    Extension { phi: usize, sign: i8 },
}

/// Value of the labelled character at `e`.
pub fn wreath_value(u_table: &CharacterTable, label: WreathLabel, e: WreathElement) -> Cyclo {
    let cd = u_table.classes();
    let b = cd.group();
    let irr = u_table.irreducibles();
    let at = |phi: usize, x: u32| irr[phi].value(cd.class_of(x)).clone();
    match (label, e.flip) {
        (WreathLabel::Induced { .. }, true) => Cyclo::zero(),
        (WreathLabel::Induced { phi, theta }, false) => {
            &at(phi, e.u) * &at(theta, e.v) + &at(phi, e.v) * &at(theta, e.u)
        }
        (WreathLabel::Extension { phi, .. }, false) => &at(phi, e.u) * &at(phi, e.v),
        (WreathLabel::Extension { phi, sign }, true) => at(phi, b.mul(e.u, e.v)).scale_int(sign as i64),
    }
}

pub fn wreath_labels(u_table: &CharacterTable) -> Vec<WreathLabel> {
    let k = u_table.len();
    let mut out = Vec::with_capacity(k * (k - 1) / 2 + 2 * k);
    for phi in 0..k {
        for sign in [1, -1] {
            out.push(WreathLabel::Extension { phi, sign });
        }
        for theta in phi + 1..k {
            out.push(WreathLabel::Induced { phi, theta });
        }
    }
    out
}

pub fn wreath_character(
    w: &WreathGroup,
    classes: &ClassData,
    u_table: &CharacterTable,
    label: WreathLabel,
) -> Character {
    Character::new(
        (0..classes.len())
            .map(|c| wreath_value(u_table, label, w.decode(classes.representative(c))))
            .collect(),
    )
}

/// The irreducible table of `U wr C2` built from `Irr(U)`, sorted like a
/// computed table.
pub fn wreath_irreducibles(
    w: &WreathGroup,
    classes: &Arc<ClassData>,
    u_table: &CharacterTable,
) -> Result<CharacterTable, WreathError> {
    let rows: Vec<Character> = wreath_labels(u_table)
        .into_par_iter()
        .map(|l| wreath_character(w, classes, u_table, l))
        .collect();
    let exponent = classes.exponent();
    let prime = choose_prime(exponent, w.group().order() as u64)?;
    Ok(CharacterTable::from_rows(classes, rows, prime, exponent)?)
}

#[derive(Debug, Clone, Serialize)]
pub struct VertexConstituent {
    pub label: WreathLabel,
    pub degree: i64,
    pub multiplicity: i64,
}

/// Constituents of the permutation character on the cosets of `hat H`:
/// the `nu2(phi)`-extension for real `phi`, the induced `phi x conj(phi)`
/// once per non-real pair. Each multiplicity is checked to be 1.
pub fn wreath_vertex_constituents(
    w: &WreathGroup,
    classes: &ClassData,
    u_table: &CharacterTable,
) -> Result<Vec<VertexConstituent>, WreathError> {
    let pi = induced_trivial_character(classes, w.hat_h());
    let order = w.group().order() as i64;
    let mut out = Vec::new();
    for phi in 0..u_table.len() {
        let partner = u_table.conjugate_of(phi);
        let label = if partner == phi {
            let sign = u_table.frobenius_schur(&u_table.irreducibles()[phi]);
            WreathLabel::Extension { phi, sign }
        } else if phi < partner {
            WreathLabel::Induced { phi, theta: partner }
        } else {
            continue;
        };
        let chi = wreath_character(w, classes, u_table, label);
        let inner = sum_inner(classes, &pi, &chi, order);
        let m = inner.as_integer().and_then(|m| i64::try_from(m).ok()).unwrap_or(-1);
        if m != 1 {
            return Err(WreathError::MultiplicityMismatch(phi, m));
        }
        out.push(VertexConstituent { label, degree: chi.degree(), multiplicity: m });
    }
    Ok(out)
}

fn sum_inner(classes: &ClassData, a: &Character, b: &Character, order: i64) -> Cyclo {
    let total = Cyclo::sum(
        (0..classes.len())
            .map(|c| (a.value(c) * &b.value(c).conj()).scale_int(classes.size(c) as i64))
            .collect::<Vec<_>>()
            .iter(),
    );
    total.scale(&rational(1, order))
}

/// `phi(u) / phi(1)`.
pub fn wreath_cosine(u_table: &CharacterTable, phi: usize, u_class: usize) -> Cyclo {
    let chi = &u_table.irreducibles()[phi];
    chi.value(u_class).scale(&rational(1, chi.degree()))
}

#[derive(Debug, Clone, Serialize)]
pub struct CosineRow {
    pub phi: usize,
    pub degree: i64,
    pub values: Vec<Cyclo>,
}

/// Rows are `Irr(U)`, columns the symmetrized classes in layer order.
#[derive(Debug, Clone, Serialize)]
pub struct CosineTable {
    /// Base class of `x^-1 y` for each layer.
    pub columns: Vec<usize>,
    pub layer_sizes: Vec<usize>,
    pub rows: Vec<CosineRow>,
}

impl CosineTable {
    /// One line per character: exact value then float for each layer.
    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        let mut header = vec!["phi".to_string(), "degree".to_string()];
        for (i, c) in self.columns.iter().enumerate() {
            header.push(format!("layer{i}_class{c}"));
            header.push(format!("layer{i}_float"));
        }
        w.write_record(&header).expect("in-memory write");
        for r in &self.rows {
            let mut rec = vec![r.phi.to_string(), r.degree.to_string()];
            for v in &r.values {
                rec.push(v.to_string());
                rec.push(format!("{:.12}", v.to_complex().0));
            }
            w.write_record(&rec).expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("flush")).expect("utf8")
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct WreathVertexReport {
    pub base_order: usize,
    pub wreath_order: usize,
    pub center_order: usize,
    pub quotient_order: usize,
    pub stabilizer_order: usize,
    pub base_classes: usize,
    pub symmetrized_classes: usize,
    pub layer_count: usize,
    pub wreath_irreducibles: usize,
    pub wreath_orthogonality: bool,
    pub constituents: Vec<VertexConstituent>,
    pub pure_dimensions: Vec<i64>,
    /// Every pure cosine vector equals some `phi(u)/phi(1)` row, bijectively.
    pub cosines_match: bool,
    pub gelfand: String,
    pub cosine_table: CosineTable,
    pub cone: ConeReport,
}

/// Builds `U wr C2`, its central quotient acting on the cosets of
/// `hat H`, runs the generic pipeline there, and compares with the formulas
/// coming from `Irr(U)`.
pub fn wreath_vertex_report(
    base: &Arc<Group>,
    cache: Option<&TableCache>,
    options: ReportOptions,
) -> Result<(WreathVertexReport, GSetAnalysis), WreathError> {
    let u_cd = Arc::new(conjugacy_classes(base));
    let u_table = CharacterTable::compute_cached(&u_cd, cache)?;
    let w = wreath_c2(base)?;
    let w_cd = Arc::new(conjugacy_classes(w.group()));
    let w_table = wreath_irreducibles(&w, &w_cd, &u_table)?;
    let constituents = wreath_vertex_constituents(&w, &w_cd, &u_table)?;

    let q = w.quotient()?;
    let h = w.quotient_stabilizer(&q);
    if h.members().iter().any(|&g| q.images(g)[0] != 0) || h.order() * base.order() != q.order() {
        return Err(WreathError::CrossCheckFailed("stabilizer of 1 in the quotient".into()));
    }
    let q_cd = Arc::new(conjugacy_classes(&q));
    let q_table = Arc::new(CharacterTable::compute_cached(&q_cd, cache)?);
    let gset = Arc::new(coset_action(&h));
    let a = analyze_gset(&q_table, &gset)?;

    let columns: Vec<usize> = a
        .layers()
        .reps
        .iter()
        .map(|&p| u_cd.class_of(q.images(gset.rep(p))[0]))
        .collect();
    let sym = symmetrized_classes(&u_cd);
    let mut seen: Vec<usize> = columns
        .iter()
        .map(|&c| sym.iter().position(|s| s.contains(&c)).expect("class"))
        .collect();
    seen.sort();
    seen.dedup();
    if seen.len() != columns.len() || seen.len() != sym.len() {
        return Err(WreathError::CrossCheckFailed("layers vs symmetrized classes".into()));
    }

    let rows: Vec<CosineRow> = (0..u_table.len())
        .map(|phi| CosineRow {
            phi,
            degree: u_table.irreducibles()[phi].degree(),
            values: columns.iter().map(|&c| wreath_cosine(&u_table, phi, c)).collect(),
        })
        .collect();
    let real = a.real_irreducibles();
    let present = a.constituents();
    let pure: Vec<(i64, Vec<Cyclo>)> = present
        .iter()
        .map(|&s| Ok((real[s].degree(), a.cosine_vector_pure(s)?)))
        .collect::<Result<_, RealizationError>>()?;
    let mut used = vec![false; pure.len()];
    let mut cosines_match = pure.len() == constituents.len();
    for c in &constituents {
        let phi = match c.label {
            WreathLabel::Extension { phi, .. } | WreathLabel::Induced { phi, .. } => phi,
        };
        // a non-real phi only enters through phi + conj(phi)
        let expected: Vec<Cyclo> = rows[phi]
            .values
            .iter()
            .map(|v| (v + &v.conj()).scale(&rational(1, 2)))
            .collect();
        let hit = (0..pure.len())
            .find(|&i| !used[i] && pure[i].0 == c.degree && pure[i].1 == expected);
        match hit {
            Some(i) => used[i] = true,
            None => cosines_match = false,
        }
    }

    let mut pure_dimensions: Vec<i64> = pure.iter().map(|p| p.0).collect();
    pure_dimensions.sort();
    let report = WreathVertexReport {
        base_order: base.order(),
        wreath_order: w.group().order(),
        center_order: w.center().len(),
        quotient_order: q.order(),
        stabilizer_order: h.order(),
        base_classes: u_cd.len(),
        symmetrized_classes: sym.len(),
        layer_count: a.layers().len(),
        wreath_irreducibles: w_table.len(),
        wreath_orthogonality: w_table.check_orthogonality(),
        constituents,
        pure_dimensions,
        cosines_match,
        gelfand: a.gelfand_classify().as_str().to_string(),
        cosine_table: CosineTable {
            columns,
            layer_sizes: a.layers().sizes.clone(),
            rows,
        },
        cone: cone_report(&a, options),
    };
    Ok((report, a))
}

/// The 600-cell: `U = SL(2,5)` as the icosians.
pub fn sixhundred_cell_report(
    cache: Option<&TableCache>,
    options: ReportOptions,
) -> Result<(WreathVertexReport, GSetAnalysis), WreathError> {
    let u = crate::h4::icosian_permutation_group()
        .map_err(|e| WreathError::CrossCheckFailed(e.to_string()))?;
    let (report, a) = wreath_vertex_report(&u, cache, options)?;
    let ok = report.layer_count == 9
        && report.pure_dimensions == [1, 4, 4, 9, 9, 16, 16, 25, 36]
        && report.cone.sigma.iter().all(|s| s.multiplicity == 1)
        && report.cosines_match
        && report.gelfand == "gelfand";
    if !ok {
        return Err(WreathError::CrossCheckFailed("600-cell profile".into()));
    }
    Ok((report, a))
}

/// Number of `(hat H, hat H)` double cosets, by enumeration.
pub fn hat_double_coset_count(w: &WreathGroup) -> usize {
    double_cosets(w.group(), w.hat_h(), w.hat_h()).len()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups;
    use crate::perm::enumerate_group;

    fn base(gens: Vec<Permutation>) -> Arc<Group> {
        Arc::new(enumerate_group(&gens, DEFAULT_CAP).unwrap())
    }

    #[test]
    fn orders_and_center() {
        let t = base(vec![Permutation::identity(1)]);
        let w = wreath_c2(&t).unwrap();
        assert_eq!(w.group().order(), 2);
        let s3 = base(groups::symmetric(3));
        let w = wreath_c2(&s3).unwrap();
        assert_eq!(w.group().order(), 72);
        assert_eq!(w.hat_h().order(), 12);
        assert_eq!(w.center().len(), 1);
        let q8 = base(groups::quaternion());
        let w = wreath_c2(&q8).unwrap();
        assert_eq!(w.center().len(), 2);
        assert_eq!(w.quotient().unwrap().order(), 64);
    }

    #[test]
    fn encode_decode_and_twist() {
        let s3 = base(groups::symmetric(3));
        let w = wreath_c2(&s3).unwrap();
        let g = w.group();
        for x in 0..g.order() as u32 {
            assert_eq!(w.encode(w.decode(x)), x);
        }
        let t = w.flip();
        for u in 0..6 {
            for v in 0..6 {
                let x = w.encode(WreathElement { flip: false, u, v });
                let swapped = w.encode(WreathElement { flip: false, u: v, v: u });
                assert_eq!(g.conjugate(x, t), swapped);
                assert_eq!(g.mul(t, x), w.encode(WreathElement { flip: true, u, v }));
            }
        }
    }

    #[test]
    fn hat_h_is_c2_times_u() {
        let s3 = base(groups::symmetric(3));
        let w = wreath_c2(&s3).unwrap();
        let g = w.group();
        let t = w.flip();
        // t is central in hat H, and the diagonal is a copy of U
        for &h in w.hat_h().members() {
            assert_eq!(g.mul(h, t), g.mul(t, h));
        }
        for a in 0..6u32 {
            for b in 0..6u32 {
                let d = |x| w.encode(WreathElement { flip: false, u: x, v: x });
                assert_eq!(g.mul(d(a), d(b)), d(s3.mul(a, b)));
            }
        }
    }

    fn check_against_dixon(u: Arc<Group>) {
        let u_cd = Arc::new(conjugacy_classes(&u));
        let u_table = CharacterTable::compute(&u_cd).unwrap();
        let w = wreath_c2(&u).unwrap();
        let cd = Arc::new(conjugacy_classes(w.group()));
        let built = wreath_irreducibles(&w, &cd, &u_table).unwrap();
        let k = u_table.len();
        assert_eq!(built.len(), k * (k - 1) / 2 + 2 * k);
        assert!(built.check_orthogonality());
        let dixon = CharacterTable::compute(&cd).unwrap();
        assert_eq!(built.irreducibles(), dixon.irreducibles());
    }

    #[test]
    fn matches_dixon() {
        check_against_dixon(base(vec![Permutation::identity(1)]));
        check_against_dixon(base(groups::cyclic(3)));
        check_against_dixon(base(groups::symmetric(3)));
        check_against_dixon(base(groups::quaternion()));
    }

    #[test]
    fn vertex_constituents() {
        let c3 = base(groups::cyclic(3));
        let u_cd = Arc::new(conjugacy_classes(&c3));
        let u_table = CharacterTable::compute(&u_cd).unwrap();
        let w = wreath_c2(&c3).unwrap();
        let cd = conjugacy_classes(w.group());
        let v = wreath_vertex_constituents(&w, &cd, &u_table).unwrap();
        assert_eq!(v.len(), 2);
        assert_eq!(v[0].label, WreathLabel::Extension { phi: 0, sign: 1 });
        assert!(matches!(v[1].label, WreathLabel::Induced { .. }));
        assert_eq!(v[1].degree, 2);
    }

    #[test]
    fn double_cosets_vs_symmetrized() {
        for u in [base(groups::cyclic(3)), base(groups::symmetric(3)), base(groups::quaternion())] {
            let w = wreath_c2(&u).unwrap();
            let cd = conjugacy_classes(&u);
            assert_eq!(hat_double_coset_count(&w), symmetrized_classes(&cd).len());
        }
    }

    #[test]
    fn small_vertex_reports() {
        for u in [base(groups::cyclic(3)), base(groups::symmetric(3)), base(groups::quaternion()), base(groups::dihedral(4))] {
            let (r, _) = wreath_vertex_report(&u, None, ReportOptions::default()).unwrap();
            assert!(r.cosines_match);
            assert!(r.cone.checks.all_pass());
            assert_eq!(r.gelfand, "gelfand");
            assert_eq!(r.layer_count, r.symmetrized_classes);
            assert_eq!(r.pure_dimensions.iter().sum::<i64>(), u.order() as i64);
        }
    }

    #[test]
    fn cosine_basics() {
        let s3 = base(groups::symmetric(3));
        let cd = Arc::new(conjugacy_classes(&s3));
        let t = CharacterTable::compute(&cd).unwrap();
        let id = cd.class_of(s3.identity());
        for phi in 0..t.len() {
            assert!(wreath_cosine(&t, phi, id).is_one());
        }
        for c in 0..cd.len() {
            assert!(wreath_cosine(&t, 0, c).is_one());
        }
    }
}
