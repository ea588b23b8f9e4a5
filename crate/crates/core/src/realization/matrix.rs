//! Invariant symmetric matrices stored as one value per layer.

use num_bigint::BigInt;
use num_rational::BigRational;
use rayon::prelude::*;

use super::{GSet, LayerData, RealizationError};
use crate::cyclotomic::Cyclo;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InvariantMatrix {
    omega: usize,
    values: Vec<Cyclo>,
}

impl InvariantMatrix {
    pub fn new(omega: usize, values: Vec<Cyclo>) -> Self {
        InvariantMatrix { omega, values }
    }

    pub fn identity(layers: &LayerData) -> Self {
        let omega = layers.layer_of.len();
        let values = (0..layers.len())
            .map(|i| if i == 0 { Cyclo::one() } else { Cyclo::zero() })
            .collect();
        InvariantMatrix { omega, values }
    }

    pub fn constant(layers: &LayerData, v: Cyclo) -> Self {
        InvariantMatrix {
            omega: layers.layer_of.len(),
            values: vec![v; layers.len()],
        }
    }

    pub fn zero(layers: &LayerData) -> Self {
        Self::constant(layers, Cyclo::zero())
    }

    pub fn values(&self) -> &[Cyclo] {
        &self.values
    }

    pub fn omega(&self) -> usize {
        self.omega
    }

    fn check(&self, other: &InvariantMatrix) -> Result<(), RealizationError> {
        if self.omega != other.omega || self.values.len() != other.values.len() {
            Err(RealizationError::DimensionMismatch)
        } else {
            Ok(())
        }
    }

    /// Inner product matrix of the blend (orthogonal sum).
    pub fn blend(&self, other: &InvariantMatrix) -> Result<Self, RealizationError> {
        self.check(other)?;
        Ok(InvariantMatrix {
            omega: self.omega,
            values: self.values.iter().zip(&other.values).map(|(a, b)| a + b).collect(),
        })
    }

    /// Inner product matrix after scaling the realization by `lambda`.
    pub fn scale(&self, lambda: &BigRational) -> Self {
        let sq = lambda * lambda;
        InvariantMatrix {
            omega: self.omega,
            values: self.values.iter().map(|a| a.scale(&sq)).collect(),
        }
    }

    /// Inner product matrix of the tensor product.
    pub fn hadamard(&self, other: &InvariantMatrix) -> Result<Self, RealizationError> {
        self.check(other)?;
        Ok(InvariantMatrix {
            omega: self.omega,
            values: self.values.iter().zip(&other.values).map(|(a, b)| a * b).collect(),
        })
    }

    pub fn trace(&self) -> Cyclo {
        self.values[0].scale_int(self.omega as i64)
    }

    /// `(1/|Omega|) sum_i l_i a_i b_i`.
    pub fn lambda_inner(
        &self,
        other: &InvariantMatrix,
        layers: &LayerData,
    ) -> Result<Cyclo, RealizationError> {
        self.check(other)?;
        if layers.len() != self.values.len() {
            return Err(RealizationError::DimensionMismatch);
        }
        let mut acc = Cyclo::zero();
        for ((a, b), &l) in self.values.iter().zip(&other.values).zip(&layers.sizes) {
            acc = &acc + &(a * b).scale_int(l as i64);
        }
        Ok(acc.scale(&BigRational::new(1.into(), BigInt::from(self.omega))))
    }

    /// Full `Omega x Omega` matrix.
    pub fn expand(&self, gset: &GSet, layers: &LayerData) -> Vec<Vec<Cyclo>> {
        let n = gset.len() as u32;
        (0..n)
            .map(|xi| {
                (0..n)
                    .map(|eta| {
                        let l = layers.layer_of[gset.relative_point(xi, eta) as usize];
                        self.values[l as usize].clone()
                    })
                    .collect()
            })
            .collect()
    }

    /// Floating-point expansion (real parts).
    pub fn expand_f64(&self, gset: &GSet, layers: &LayerData) -> Vec<Vec<f64>> {
        let vals: Vec<f64> = self.values.iter().map(|v| v.to_complex().0).collect();
        let n = gset.len() as u32;
        (0..n)
            .map(|xi| {
                (0..n)
                    .map(|eta| vals[layers.layer_of[gset.relative_point(xi, eta) as usize] as usize])
                    .collect()
            })
            .collect()
    }
}

/// Intersection numbers for multiplying invariant matrices in compressed
/// form: for each `H`-orbit representative `eta_k`, the counts of points
/// `xi` by (layer of `xi`, layer of `(xi, eta_k)`).
#[derive(Debug, Clone)]
pub struct ProductStructure {
    /// Per suborbit: sparse `(i, j, count)`.
    entries: Vec<Vec<(u32, u32, i64)>>,
    suborbit_layer: Vec<usize>,
    layer_count: usize,
}

impl ProductStructure {
    pub fn new(gset: &GSet, layers: &LayerData) -> Self {
        let n = gset.len() as u32;
        let entries = layers
            .suborbits
            .par_iter()
            .map(|s| {
                let mut counts = std::collections::BTreeMap::new();
                for xi in 0..n {
                    let i = layers.layer_of[xi as usize];
                    let j = layers.layer_of[gset.relative_point(xi, s.rep) as usize];
                    *counts.entry((i, j)).or_insert(0i64) += 1;
                }
                counts.into_iter().map(|((i, j), c)| (i, j, c)).collect()
            })
            .collect();
        ProductStructure {
            entries,
            suborbit_layer: layers.suborbits.iter().map(|s| s.layer).collect(),
            layer_count: layers.len(),
        }
    }

    /// Row of the base point of `A B`, one value per suborbit (a product of
    /// symmetric invariant matrices need not be symmetric).
    pub fn product(&self, a: &InvariantMatrix, b: &InvariantMatrix) -> Vec<Cyclo> {
        self.left_factor(a)
            .iter()
            .map(|row| row_dot(row, b))
            .collect()
    }

    /// `C[k][j] = sum_i N_k[i][j] a_i`, reused across products with `a` on
    /// the left.
    pub fn left_factor(&self, a: &InvariantMatrix) -> Vec<Vec<(u32, Cyclo)>> {
        self.entries
            .iter()
            .map(|ent| {
                let mut acc: Vec<Option<Cyclo>> = vec![None; self.layer_count];
                for &(i, j, c) in ent {
                    let v = &a.values[i as usize];
                    if v.is_zero() {
                        continue;
                    }
                    let term = v.scale_int(c);
                    let slot = &mut acc[j as usize];
                    *slot = Some(match slot.take() {
                        Some(s) => &s + &term,
                        None => term,
                    });
                }
                acc.into_iter()
                    .enumerate()
                    .filter_map(|(j, v)| v.filter(|v| !v.is_zero()).map(|v| (j as u32, v)))
                    .collect()
            })
            .collect()
    }

    /// Compares `A B` with an invariant matrix `C`, suborbit by suborbit.
    pub fn product_equals(
        &self,
        left: &[Vec<(u32, Cyclo)>],
        b: &InvariantMatrix,
        c: &InvariantMatrix,
    ) -> bool {
        left.iter()
            .zip(&self.suborbit_layer)
            .all(|(row, &l)| row_dot(row, b) == c.values[l])
    }
}

fn row_dot(row: &[(u32, Cyclo)], b: &InvariantMatrix) -> Cyclo {
    let mut acc = Cyclo::zero();
    for (j, v) in row {
        let w = &b.values[*j as usize];
        if !w.is_zero() {
            acc = &acc + &(v * w);
        }
    }
    acc
}
