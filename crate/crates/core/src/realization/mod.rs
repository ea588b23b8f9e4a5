//! Realization cones of transitive G-sets.
//!
//! Points of a [`GSet`] are right cosets `Hx`; the base point is `H` itself
//! (point 0). A layer is a diagonal class seen from the base point: the
//! `H`-orbit of a point merged with the orbit of its paired point, so that
//! invariant symmetric matrices are determined by one value per layer.

mod matrix;
mod psd;
mod report;

use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use thiserror::Error;

pub use matrix::{InvariantMatrix, ProductStructure};
pub use psd::{psd_sqrt_commuting, PsdSqrt};
pub use report::{cone_report, ConeReport, LayerEntry, ReportChecks, ReportOptions, SigmaEntry, SCHEMA};

use crate::chartable::{
    induced_trivial_character, weighted_sum, Character, CharacterTable, RealIrreducible, RealType,
};
use crate::cyclotomic::Cyclo;
use crate::perm::{right_cosets, Group, RightCosets, Subgroup};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum RealizationError {
    #[error("multiplicity of character {0} is not a non-negative integer")]
    NonIntegralMultiplicity(usize),
    #[error("real irreducible {sigma} has multiplicity {m}, pure cosine vectors need 1")]
    MultiplicityNotOne { sigma: usize, m: i64 },
    #[error("matrices live on different G-sets")]
    DimensionMismatch,
    #[error("matrix is not positive semidefinite (eigenvalue {0})")]
    NotPsd(f64),
    #[error("matrix is not invariant under the group (deviation {0})")]
    NotInvariant(f64),
    #[error("matrix is not symmetric (deviation {0})")]
    NotSymmetric(f64),
    #[error("square root residual {0} exceeds tolerance")]
    Residual(f64),
    #[error("the character table belongs to a different group")]
    GroupMismatch,
}

/// Transitive action of a group on the right cosets of a subgroup.
pub struct GSet {
    group: Arc<Group>,
    stabilizer: Subgroup,
    cosets: RightCosets,
}

impl std::fmt::Debug for GSet {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("GSet")
            .field("points", &self.len())
            .field("stabilizer", &self.stabilizer.order())
            .finish()
    }
}

/// The coset G-set of `h`: points `Hx`, base point `H`.
pub fn coset_action(h: &Subgroup) -> GSet {
    let group = Arc::clone(h.group());
    let cosets = right_cosets(&group, h);
    GSet {
        group,
        stabilizer: h.clone(),
        cosets,
    }
}

impl GSet {
    pub fn group(&self) -> &Arc<Group> {
        &self.group
    }

    pub fn stabilizer(&self) -> &Subgroup {
        &self.stabilizer
    }

    pub fn len(&self) -> usize {
        self.cosets.reps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cosets.reps.is_empty()
    }

    /// Smallest element `x` with `alpha x` equal to `point`.
    pub fn rep(&self, point: u32) -> u32 {
        self.cosets.reps[point as usize]
    }

    /// Image of the base point under `g`.
    pub fn point_of(&self, g: u32) -> u32 {
        self.cosets.coset_of[g as usize]
    }

    pub fn act(&self, point: u32, g: u32) -> u32 {
        self.point_of(self.group.mul(self.rep(point), g))
    }

    /// Permutations of the points induced by the group's generators.
    pub fn generator_actions(&self) -> Vec<Vec<u32>> {
        self.group
            .generators()
            .iter()
            .map(|&g| (0..self.len() as u32).map(|p| self.act(p, g)).collect())
            .collect()
    }

    /// Number of fixed points of `g`.
    pub fn fixed_points(&self, g: u32) -> usize {
        (0..self.len() as u32).filter(|&p| self.act(p, g) == p).count()
    }

    /// Layer of the ordered pair `(xi, eta)`: the layer of `eta x^-1` where
    /// `x` carries the base point to `xi`.
    pub fn relative_point(&self, xi: u32, eta: u32) -> u32 {
        self.act(eta, self.group.inverse(self.rep(xi)))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Suborbit {
    pub rep: u32,
    pub size: usize,
    pub layer: usize,
}

#[derive(Debug, Clone)]
pub struct LayerData {
    /// Smallest point of each layer; layer 0 is the base point.
    pub reps: Vec<u32>,
    pub sizes: Vec<usize>,
    pub layer_of: Vec<u32>,
    /// `H`-orbits, ordered by smallest point.
    pub suborbits: Vec<Suborbit>,
}

impl LayerData {
    pub fn len(&self) -> usize {
        self.reps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reps.is_empty()
    }
}

pub fn compute_layers(gset: &GSet) -> LayerData {
    let n = gset.len();
    let h = gset.stabilizer();
    let mut orbit_of = vec![u32::MAX; n];
    let mut orbits: Vec<Vec<u32>> = Vec::new();
    for start in 0..n as u32 {
        if orbit_of[start as usize] != u32::MAX {
            continue;
        }
        let id = orbits.len() as u32;
        orbit_of[start as usize] = id;
        let mut orbit = vec![start];
        let mut i = 0;
        while i < orbit.len() {
            for &g in h.generators() {
                let q = gset.act(orbit[i], g);
                if orbit_of[q as usize] == u32::MAX {
                    orbit_of[q as usize] = id;
                    orbit.push(q);
                }
            }
            i += 1;
        }
        orbits.push(orbit);
    }
    let group = gset.group();
    let mut layer_of_orbit = vec![usize::MAX; orbits.len()];
    let mut reps = Vec::new();
    let mut sizes = Vec::new();
    for (o, orbit) in orbits.iter().enumerate() {
        if layer_of_orbit[o] != usize::MAX {
            continue;
        }
        let paired = orbit_of[gset.point_of(group.inverse(gset.rep(orbit[0]))) as usize] as usize;
        let l = reps.len();
        layer_of_orbit[o] = l;
        layer_of_orbit[paired] = l;
        reps.push(orbit[0]);
        sizes.push(if paired == o {
            orbit.len()
        } else {
            orbit.len() + orbits[paired].len()
        });
    }
    let layer_of = orbit_of.iter().map(|&o| layer_of_orbit[o as usize] as u32).collect();
    let suborbits = orbits
        .iter()
        .enumerate()
        .map(|(o, orbit)| Suborbit {
            rep: orbit[0],
            size: orbit.len(),
            layer: layer_of_orbit[o],
        })
        .collect();
    LayerData {
        reps,
        sizes,
        layer_of,
        suborbits,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Gelfand {
    NotGelfand,
    GelfandOverROnly,
    Gelfand,
}

impl Gelfand {
    pub fn as_str(self) -> &'static str {
        match self {
            Gelfand::NotGelfand => "not_gelfand",
            Gelfand::GelfandOverROnly => "gelfand_over_R_only",
            Gelfand::Gelfand => "gelfand",
        }
    }
}

/// Permutation character, multiplicities and per-layer class statistics of
/// a coset G-set.
#[derive(Debug)]
pub struct GSetAnalysis {
    table: Arc<CharacterTable>,
    gset: Arc<GSet>,
    layers: LayerData,
    pi: Character,
    m_chi: Vec<i64>,
    indicators: Vec<i8>,
    real: Vec<RealIrreducible>,
    m_sigma: Vec<i64>,
    /// `counts[i][c]` = number of `h` in `H` with `h x_i` in class `c`,
    /// where `x_i` carries the base point to the representative of layer `i`.
    counts: Vec<Vec<i64>>,
}

pub fn analyze_gset(
    table: &Arc<CharacterTable>,
    gset: &Arc<GSet>,
) -> Result<GSetAnalysis, RealizationError> {
    let cd = table.classes();
    if !Arc::ptr_eq(cd.group(), gset.group()) {
        return Err(RealizationError::GroupMismatch);
    }
    let layers = compute_layers(gset);
    let pi = induced_trivial_character(cd, gset.stabilizer());
    let m_chi = table
        .irreducibles()
        .iter()
        .enumerate()
        .map(|(i, chi)| {
            table
                .inner_product(&pi, chi)
                .as_integer()
                .and_then(|v| v.to_i64())
                .filter(|&v| v >= 0)
                .ok_or(RealizationError::NonIntegralMultiplicity(i))
        })
        .collect::<Result<Vec<_>, _>>()?;
    let indicators = table.indicators();
    let real = table.real_irreducibles();
    let m_sigma = real
        .iter()
        .map(|s| {
            let m = m_chi[s.constituents[0]];
            match s.kind {
                RealType::H if m % 2 != 0 => {
                    Err(RealizationError::NonIntegralMultiplicity(s.constituents[0]))
                }
                RealType::H => Ok(m / 2),
                _ => Ok(m),
            }
        })
        .collect::<Result<Vec<_>, _>>()?;
    let group = gset.group();
    let h = gset.stabilizer();
    let counts = layers
        .reps
        .iter()
        .map(|&p| {
            let x = gset.rep(p);
            let mut c = vec![0i64; cd.len()];
            for &hh in h.members() {
                c[cd.class_of(group.mul(hh, x))] += 1;
            }
            c
        })
        .collect();
    Ok(GSetAnalysis {
        table: Arc::clone(table),
        gset: Arc::clone(gset),
        layers,
        pi,
        m_chi,
        indicators,
        real,
        m_sigma,
        counts,
    })
}

impl GSetAnalysis {
    pub fn table(&self) -> &Arc<CharacterTable> {
        &self.table
    }

    pub fn gset(&self) -> &Arc<GSet> {
        &self.gset
    }

    pub fn layers(&self) -> &LayerData {
        &self.layers
    }

    pub fn permutation_character(&self) -> &Character {
        &self.pi
    }

    pub fn m_chi(&self) -> &[i64] {
        &self.m_chi
    }

    pub fn indicators(&self) -> &[i8] {
        &self.indicators
    }

    pub fn real_irreducibles(&self) -> &[RealIrreducible] {
        &self.real
    }

    pub fn m_sigma(&self) -> &[i64] {
        &self.m_sigma
    }

    pub fn omega(&self) -> usize {
        self.gset.len()
    }

    /// Indices of real irreducibles occurring in the permutation character.
    pub fn constituents(&self) -> Vec<usize> {
        (0..self.real.len()).filter(|&s| self.m_sigma[s] > 0).collect()
    }

    /// Index of the real irreducible containing complex character `chi`.
    pub fn sigma_of_chi(&self, chi: usize) -> usize {
        self.real
            .iter()
            .position(|s| s.constituents.contains(&chi))
            .expect("every irreducible lies in some real irreducible")
    }

    /// `pi = sum m_sigma sigma`, class by class.
    pub fn check_decomposition(&self) -> bool {
        let r = self.table.classes().len();
        (0..r).all(|c| {
            let total = Cyclo::sum(
                self.real
                    .iter()
                    .zip(&self.m_sigma)
                    .map(|(s, &m)| s.sigma.values[c].scale_int(m))
                    .collect::<Vec<_>>()
                    .iter(),
            );
            total == self.pi.values[c]
        })
    }

    /// `(1/(<sigma,sigma> |H|)) sum_h sigma(h g)`.
    pub fn wythoff_cosine_sum(&self, sigma: usize, g: u32) -> Cyclo {
        let cd = self.table.classes();
        let group = self.gset.group();
        let mut counts = vec![0i64; cd.len()];
        for &h in self.gset.stabilizer().members() {
            counts[cd.class_of(group.mul(h, g))] += 1;
        }
        self.cosine_from_counts(sigma, &counts)
    }

    fn cosine_from_counts(&self, sigma: usize, counts: &[i64]) -> Cyclo {
        let s = &self.real[sigma];
        let denom = s.norm() as i64 * self.gset.stabilizer().order() as i64;
        weighted_sum(&s.sigma, counts).scale(&BigRational::new(1.into(), denom.into()))
    }

    /// Wythoff cosine sums at the layer representatives.
    pub fn layer_cosine_sums(&self, sigma: usize) -> Vec<Cyclo> {
        self.counts
            .iter()
            .map(|c| self.cosine_from_counts(sigma, c))
            .collect()
    }

    /// Cosine vector of the pure realization for `m_sigma = 1`.
    pub fn cosine_vector_pure(&self, sigma: usize) -> Result<Vec<Cyclo>, RealizationError> {
        let m = self.m_sigma[sigma];
        if m != 1 {
            return Err(RealizationError::MultiplicityNotOne { sigma, m });
        }
        Ok(self.layer_cosine_sums(sigma))
    }

    /// Cosine vector of the balanced realization `Q_sigma` (any `m >= 1`):
    /// the layer sums divided by `m_sigma`.
    pub fn balanced_cosine_vector(&self, sigma: usize) -> Option<Vec<Cyclo>> {
        let m = self.m_sigma[sigma];
        if m == 0 {
            return None;
        }
        let inv = BigRational::new(1.into(), m.into());
        Some(self.layer_cosine_sums(sigma).iter().map(|v| v.scale(&inv)).collect())
    }

    /// Compressed matrix of the central idempotent `e_sigma` on the
    /// permutation module.
    pub fn homogeneous_projection(&self, sigma: usize) -> InvariantMatrix {
        let s = &self.real[sigma];
        let factor = BigRational::new(
            BigInt::from(s.degree()),
            BigInt::from(self.omega()),
        );
        let values = self
            .layer_cosine_sums(sigma)
            .iter()
            .map(|v| v.scale(&factor))
            .collect();
        InvariantMatrix::new(self.omega(), values)
    }

    pub fn gelfand_classify(&self) -> Gelfand {
        if self.m_chi.iter().all(|&m| m <= 1) {
            Gelfand::Gelfand
        } else if self.m_sigma.iter().all(|&m| m <= 1) {
            Gelfand::GelfandOverROnly
        } else {
            Gelfand::NotGelfand
        }
    }

    /// `l_i * cosine_i` for each layer, with its integrality.
    pub fn integrality_certificate(
        &self,
        sigma: usize,
    ) -> Result<Vec<(usize, Cyclo, bool)>, RealizationError> {
        let cos = self.cosine_vector_pure(sigma)?;
        Ok(cos
            .iter()
            .enumerate()
            .map(|(i, c)| {
                let v = c.scale_int(self.layers.sizes[i] as i64);
                let ok = v.is_algebraic_integer();
                (i, v, ok)
            })
            .collect())
    }

    /// Dimension of the subcone for `sigma`: `m + m(m-1)/2 <sigma,sigma>`.
    pub fn subcone_dim(&self, sigma: usize) -> i64 {
        let m = self.m_sigma[sigma];
        m + m * (m - 1) / 2 * self.real[sigma].norm() as i64
    }

    /// Both layer-count formulas: `(sum over sigma, half sum over chi)`.
    pub fn layer_count_formulas(&self) -> (i64, BigRational) {
        let by_sigma = (0..self.real.len()).map(|s| self.subcone_dim(s)).sum();
        let twice: i64 = self
            .m_chi
            .iter()
            .zip(&self.indicators)
            .map(|(&m, &nu)| m * (m + nu as i64))
            .sum();
        (by_sigma, BigRational::new(twice.into(), 2.into()))
    }

    /// Class counts of `h x_i` over `h` in `H` for each layer.
    pub fn layer_class_counts(&self) -> &[Vec<i64>] {
        &self.counts
    }
}

/// `s_chi(g) = (1/|H|) sum_h chi(h g)`.
pub fn spherical_function(table: &CharacterTable, h: &Subgroup, chi: &Character, g: u32) -> Cyclo {
    let cd = table.classes();
    let group = cd.group();
    let mut counts = vec![0i64; cd.len()];
    for &x in h.members() {
        counts[cd.class_of(group.mul(x, g))] += 1;
    }
    weighted_sum(chi, &counts).scale(&BigRational::new(1.into(), BigInt::from(h.order())))
}
