//! Exact character tables and the real-irreducible layer built on them.

mod cache;
pub mod dixon;

use std::cmp::Ordering;
use std::collections::HashMap;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use cache::{group_hash, TableCache};

use crate::cyclotomic::Cyclo;
use crate::perm::{ClassData, Subgroup};

#[derive(Debug, Error)]
pub enum CharTableError {
    #[error("no prime = 1 mod {exponent} below {limit}")]
    PrimeSearchFailed { exponent: u64, limit: u64 },
    #[error("character table computation failed: {0}")]
    Internal(String),
    #[error("cache i/o: {0}")]
    Cache(String),
}

/// A class function, one value per conjugacy class.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Character {
    pub values: Vec<Cyclo>,
}

impl Character {
    pub fn new(values: Vec<Cyclo>) -> Self {
        Character { values }
    }

    pub fn value(&self, class: usize) -> &Cyclo {
        &self.values[class]
    }

    /// Value at the identity class.
    pub fn degree(&self) -> i64 {
        self.values[0]
            .as_integer()
            .and_then(|d| d.to_i64())
            .expect("character degree is an integer")
    }

    pub fn is_real(&self) -> bool {
        self.values.iter().all(Cyclo::is_real)
    }

    pub fn conj(&self) -> Character {
        Character::new(self.values.iter().map(Cyclo::conj).collect())
    }

    pub fn add(&self, other: &Character) -> Character {
        Character::new(self.values.iter().zip(&other.values).map(|(a, b)| a + b).collect())
    }

    pub fn scale_int(&self, k: i64) -> Character {
        Character::new(self.values.iter().map(|a| a.scale_int(k)).collect())
    }

    fn table_cmp(&self, other: &Character) -> Ordering {
        self.values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| a.table_cmp(b))
            .find(|o| o.is_ne())
            .unwrap_or(Ordering::Equal)
    }
}

/// Sorts rows: trivial character first, then by degree, then by values.
pub fn sort_rows(rows: &mut [Character]) {
    rows.sort_by(|a, b| {
        let ta = a.values.iter().all(Cyclo::is_one);
        let tb = b.values.iter().all(Cyclo::is_one);
        tb.cmp(&ta)
            .then(a.degree().cmp(&b.degree()))
            .then_with(|| a.table_cmp(b))
    });
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum RealType {
    R,
    C,
    H,
}

impl RealType {
    pub fn norm(self) -> u32 {
        match self {
            RealType::R => 1,
            RealType::C => 2,
            RealType::H => 4,
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            RealType::R => "R",
            RealType::C => "C",
            RealType::H => "H",
        }
    }
}

/// Character of a simple real module: `chi`, `chi + conj(chi)` or `2 chi`.
#[derive(Debug, Clone)]
pub struct RealIrreducible {
    pub kind: RealType,
    pub constituents: Vec<usize>,
    pub sigma: Character,
}

impl RealIrreducible {
    pub fn norm(&self) -> u32 {
        self.kind.norm()
    }

    pub fn degree(&self) -> i64 {
        self.sigma.degree()
    }
}

#[derive(Debug)]
pub struct CharacterTable {
    classes: Arc<ClassData>,
    irreducibles: Vec<Character>,
    conjugate_of: Vec<usize>,
    prime: u64,
    exponent: u64,
}

impl CharacterTable {
    /// Dixon–Schneider without caching.
    pub fn compute(classes: &Arc<ClassData>) -> Result<Self, CharTableError> {
        let exponent = classes.exponent();
        let order = classes.group().order() as u64;
        let prime = dixon::choose_prime(exponent, order)?;
        let constants = dixon::class_constants(classes);
        let vectors = dixon::common_eigenvectors(&constants, prime)?;
        let mut rows = Vec::with_capacity(vectors.len());
        for w in &vectors {
            let (degree, residues) = dixon::modular_character(classes, w, prime)?;
            rows.push(Character::new(dixon::lift_character(
                classes, degree, &residues, prime, exponent,
            )?));
        }
        let squares: i64 = rows.iter().map(|c| c.degree() * c.degree()).sum();
        if squares as u64 != order {
            return Err(CharTableError::Internal(format!(
                "sum of squared degrees {squares} != {order}"
            )));
        }
        Self::from_rows(classes, rows, prime, exponent)
    }

    /// Loads from `cache` when present, otherwise computes and stores.
    pub fn compute_cached(
        classes: &Arc<ClassData>,
        cache: Option<&TableCache>,
    ) -> Result<Self, CharTableError> {
        let Some(cache) = cache else {
            return Self::compute(classes);
        };
        let hash = group_hash(classes);
        if let Some(entry) = cache.load(&hash) {
            if entry.irreducibles.len() == classes.len()
                && entry.irreducibles.iter().all(|r| r.len() == classes.len())
            {
                let rows = entry.irreducibles.into_iter().map(Character::new).collect();
                if let Ok(t) = Self::from_rows(classes, rows, entry.prime, entry.exponent) {
                    return Ok(t);
                }
            }
        }
        let table = Self::compute(classes)?;
        cache.store(&hash, &table)?;
        Ok(table)
    }

    /// Wraps externally constructed irreducibles (sorted canonically).
    pub fn from_rows(
        classes: &Arc<ClassData>,
        mut rows: Vec<Character>,
        prime: u64,
        exponent: u64,
    ) -> Result<Self, CharTableError> {
        sort_rows(&mut rows);
        let position: HashMap<&Character, usize> =
            rows.iter().enumerate().map(|(i, r)| (r, i)).collect();
        let conjugate_of = rows
            .iter()
            .map(|r| {
                let c = Character::new(
                    (0..classes.len())
                        .map(|k| r.values[classes.inverse_class(k)].clone())
                        .collect(),
                );
                position.get(&c).copied().ok_or_else(|| {
                    CharTableError::Internal("table not closed under conjugation".into())
                })
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(CharacterTable {
            classes: Arc::clone(classes),
            irreducibles: rows,
            conjugate_of,
            prime,
            exponent,
        })
    }

    pub fn classes(&self) -> &Arc<ClassData> {
        &self.classes
    }

    pub fn irreducibles(&self) -> &[Character] {
        &self.irreducibles
    }

    pub fn len(&self) -> usize {
        self.irreducibles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.irreducibles.is_empty()
    }

    pub fn conjugate_of(&self, i: usize) -> usize {
        self.conjugate_of[i]
    }

    pub fn prime(&self) -> u64 {
        self.prime
    }

    pub fn exponent(&self) -> u64 {
        self.exponent
    }

    pub fn degrees(&self) -> Vec<i64> {
        self.irreducibles.iter().map(Character::degree).collect()
    }

    /// `(1/|G|) sum_g a(g) conj(b(g))`, summed one rational class at a time.
    pub fn inner_product(&self, a: &Character, b: &Character) -> Cyclo {
        let cd = &self.classes;
        let mut total = Cyclo::zero();
        for rc in cd.rational_classes() {
            let mut part = Cyclo::zero();
            for &c in &rc {
                let term = &a.values[c] * &b.values[c].conj();
                part = &part + &term.scale_int(cd.size(c) as i64);
            }
            total = &total + &part;
        }
        total.scale(&BigRational::new(1.into(), BigInt::from(cd.group().order())))
    }

    /// Integer inner product of two characters.
    pub fn multiplicity(&self, a: &Character, b: &Character) -> i64 {
        let v = self.inner_product(a, b);
        v.as_integer()
            .and_then(|n| n.to_i64())
            .unwrap_or_else(|| panic!("inner product of characters is not an integer: {v}"))
    }

    /// Frobenius–Schur indicator `(1/|G|) sum_g chi(g^2)`.
    pub fn frobenius_schur(&self, chi: &Character) -> i8 {
        let cd = &self.classes;
        let mut total = Cyclo::zero();
        for rc in cd.rational_classes() {
            let mut part = Cyclo::zero();
            for &c in &rc {
                part = &part + &chi.values[cd.power(c, 2)].scale_int(cd.size(c) as i64);
            }
            total = &total + &part;
        }
        let v = total.scale(&BigRational::new(1.into(), BigInt::from(cd.group().order())));
        v.as_integer()
            .and_then(|n| n.to_i8())
            .filter(|n| (-1..=1).contains(n))
            .unwrap_or_else(|| panic!("indicator out of range: {v}"))
    }

    pub fn indicators(&self) -> Vec<i8> {
        self.irreducibles.iter().map(|c| self.frobenius_schur(c)).collect()
    }

    /// One entry per pair `{chi, conj(chi)}`, in table order.
    pub fn real_irreducibles(&self) -> Vec<RealIrreducible> {
        let mut out = Vec::new();
        for (i, chi) in self.irreducibles.iter().enumerate() {
            let j = self.conjugate_of[i];
            if j < i {
                continue;
            }
            let entry = if j != i {
                RealIrreducible {
                    kind: RealType::C,
                    constituents: vec![i, j],
                    sigma: chi.add(&self.irreducibles[j]),
                }
            } else if self.frobenius_schur(chi) == 1 {
                RealIrreducible {
                    kind: RealType::R,
                    constituents: vec![i],
                    sigma: chi.clone(),
                }
            } else {
                RealIrreducible {
                    kind: RealType::H,
                    constituents: vec![i],
                    sigma: chi.scale_int(2),
                }
            };
            out.push(entry);
        }
        out
    }

    /// The regular character.
    pub fn regular_character(&self) -> Character {
        let n = self.classes.group().order() as i64;
        Character::new(
            (0..self.classes.len())
                .map(|c| Cyclo::from_int(if c == 0 { n } else { 0 }))
                .collect(),
        )
    }

    /// Checks both orthogonality relations exactly.
    pub fn check_orthogonality(&self) -> bool {
        let rows_ok = self.irreducibles.iter().enumerate().all(|(i, a)| {
            self.irreducibles.iter().enumerate().all(|(j, b)| {
                let v = self.inner_product(a, b);
                if i == j {
                    v.is_one()
                } else {
                    v.is_zero()
                }
            })
        });
        let cd = &self.classes;
        let cols_ok = (0..cd.len()).all(|g| {
            (0..cd.len()).all(|h| {
                let s = Cyclo::sum(
                    self.irreducibles
                        .iter()
                        .map(|chi| &chi.values[g] * &chi.values[h].conj())
                        .collect::<Vec<_>>()
                        .iter(),
                );
                if g == h {
                    s == Cyclo::from_int(cd.centralizer_order(g) as i64)
                } else {
                    s.is_zero()
                }
            })
        });
        rows_ok && cols_ok
    }
}

/// Permutation character of the action on right cosets of `h`:
/// `pi(g) = |C_G(g)| |g^G cap H| / |H|`.
pub fn induced_trivial_character(classes: &ClassData, h: &Subgroup) -> Character {
    let mut counts = vec![0usize; classes.len()];
    for &x in h.members() {
        counts[classes.class_of(x)] += 1;
    }
    Character::new(
        counts
            .iter()
            .enumerate()
            .map(|(c, &k)| {
                let v = classes.centralizer_order(c) * k / h.order();
                Cyclo::from_int(v as i64)
            })
            .collect(),
    )
}

/// Values of a class function summed over `members` (element indices).
pub fn sum_over_elements(classes: &ClassData, chi: &Character, members: &[u32]) -> Cyclo {
    let mut counts = vec![0i64; classes.len()];
    for &x in members {
        counts[classes.class_of(x)] += 1;
    }
    weighted_sum(chi, &counts)
}

pub(crate) fn weighted_sum(chi: &Character, counts: &[i64]) -> Cyclo {
    let mut acc = Cyclo::zero();
    for (c, &k) in counts.iter().enumerate() {
        if k != 0 && !chi.values[c].is_zero() {
            acc = &acc + &chi.values[c].scale_int(k);
        }
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::{conjugacy_classes, enumerate_group, subgroup_generated, Permutation, DEFAULT_CAP};

    fn group(n: usize, gens: &[&[&[u32]]]) -> Arc<ClassData> {
        let perms: Vec<Permutation> = gens
            .iter()
            .map(|c| {
                Permutation::from_cycles(n, &c.iter().map(|c| c.to_vec()).collect::<Vec<_>>())
                    .unwrap()
            })
            .collect();
        Arc::new(conjugacy_classes(&Arc::new(enumerate_group(&perms, DEFAULT_CAP).unwrap())))
    }

    fn s3() -> Arc<ClassData> {
        group(3, &[&[&[0, 1]], &[&[0, 1, 2]]])
    }

    fn c3() -> Arc<ClassData> {
        group(3, &[&[&[0, 1, 2]]])
    }

    fn q8() -> Arc<ClassData> {
        group(8, &[&[&[0, 2, 1, 3], &[4, 7, 5, 6]], &[&[0, 4, 1, 5], &[2, 6, 3, 7]]])
    }

    #[test]
    fn s3_table() {
        let t = CharacterTable::compute(&s3()).unwrap();
        assert_eq!(t.degrees(), vec![1, 1, 2]);
        assert!(t.check_orthogonality());
        assert!(t.real_irreducibles().iter().all(|s| s.kind == RealType::R));
        assert_eq!(t.real_irreducibles().len(), 3);
    }

    #[test]
    fn q8_table_and_indicators() {
        let t = CharacterTable::compute(&q8()).unwrap();
        assert_eq!(t.degrees(), vec![1, 1, 1, 1, 2]);
        assert!(t.check_orthogonality());
        assert_eq!(t.indicators(), vec![1, 1, 1, 1, -1]);
        // Brute-force indicator of the degree-2 character over the 8 squares.
        let cd = t.classes();
        let g = cd.group();
        let chi = &t.irreducibles()[4];
        let s: i64 = (0..8u32)
            .map(|x| chi.values[cd.class_of(g.mul(x, x))].as_integer().unwrap().to_i64().unwrap())
            .sum();
        assert_eq!(s / 8, -1);
        let h: Vec<_> = t.real_irreducibles().into_iter().filter(|s| s.kind == RealType::H).collect();
        assert_eq!(h.len(), 1);
        assert_eq!((h[0].degree(), h[0].norm()), (4, 4));
    }

    #[test]
    fn cyclic_three_has_complex_pair() {
        let t = CharacterTable::compute(&c3()).unwrap();
        assert_eq!(t.indicators(), vec![1, 0, 0]);
        let real = t.real_irreducibles();
        assert_eq!(real.len(), 2);
        let c = &real[1];
        assert_eq!((c.kind, c.degree(), c.norm()), (RealType::C, 2, 2));
        assert!(c.sigma.is_real());
        assert_eq!(t.multiplicity(&c.sigma, &c.sigma), 2);
    }

    #[test]
    fn regular_and_permutation_characters() {
        let cd = s3();
        let t = CharacterTable::compute(&cd).unwrap();
        let reg = t.regular_character();
        for chi in t.irreducibles() {
            assert_eq!(t.multiplicity(&reg, chi), chi.degree());
            assert!(t.inner_product(chi, chi).is_one());
        }
        let g = cd.group();
        let whole = subgroup_generated(g, g.generators());
        let pi = induced_trivial_character(&cd, &whole);
        assert!(pi.values.iter().all(Cyclo::is_one));
        let triv = subgroup_generated(g, &[]);
        assert_eq!(induced_trivial_character(&cd, &triv), reg);
    }

    #[test]
    fn cache_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let cache = TableCache::new(dir.path());
        let cd = q8();
        let a = CharacterTable::compute_cached(&cd, Some(&cache)).unwrap();
        assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 1);
        let b = CharacterTable::compute_cached(&cd, Some(&cache)).unwrap();
        assert_eq!(a.irreducibles(), b.irreducibles());
        assert_eq!(a.prime(), b.prime());
    }
}
