//! The realization-cone report and its embedded identity checks.

use num_bigint::BigInt;
use num_rational::BigRational;
use rayon::prelude::*;
use serde::Serialize;

use super::{GSetAnalysis, InvariantMatrix, ProductStructure};
use crate::cyclotomic::Cyclo;

pub const SCHEMA: &str = "polyreal/1";

#[derive(Debug, Clone, Copy)]
pub struct ReportOptions {
    /// Also verify `Q_sigma Q_tau = delta Q_sigma` with full products.
    pub products: bool,
}

impl Default for ReportOptions {
    fn default() -> Self {
        ReportOptions { products: true }
    }
}

#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct SigmaEntry {
    pub index: usize,
    pub constituents: Vec<usize>,
    pub degree: i64,
    #[serde(rename = "type")]
    pub kind: String,
    pub norm: u32,
    pub multiplicity: i64,
    pub subcone_dim: i64,
    pub cone: String,
}

#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct LayerEntry {
    pub rep: u32,
    pub size: usize,
}

#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct ReportChecks {
    pub decomposition: bool,
    pub layer_identity: bool,
    pub orthogonality: bool,
    pub trace: bool,
    pub sum_to_identity: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub idempotents: Option<bool>,
}

impl ReportChecks {
    pub fn all_pass(&self) -> bool {
        self.decomposition
            && self.layer_identity
            && self.orthogonality
            && self.trace
            && self.sum_to_identity
            && self.idempotents.unwrap_or(true)
    }
}

#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct ConeReport {
    pub schema: String,
    pub group_order: usize,
    pub stabilizer_order: usize,
    pub omega: usize,
    pub sigma: Vec<SigmaEntry>,
    pub layers: Vec<LayerEntry>,
    pub layer_count: usize,
    pub total_dim: i64,
    pub checks: ReportChecks,
    pub gelfand: String,
}

impl ConeReport {
    /// Human-readable summary, one line per constituent.
    pub fn to_table(&self) -> String {
        let mut out = format!(
            "|G| = {}  |H| = {}  |Omega| = {}  layers = {}  dim = {}  {}\n",
            self.group_order,
            self.stabilizer_order,
            self.omega,
            self.layer_count,
            self.total_dim,
            self.gelfand
        );
        out.push_str("sigma  type  degree  norm  m  dim  cone\n");
        for s in &self.sigma {
            out.push_str(&format!(
                "{:<6} {:<5} {:<7} {:<5} {:<2} {:<4} {}\n",
                s.index, s.kind, s.degree, s.norm, s.multiplicity, s.subcone_dim, s.cone
            ));
        }
        let c = &self.checks;
        out.push_str(&format!(
            "checks: decomposition={} layer_identity={} orthogonality={} trace={} sum_to_identity={} idempotents={}\n",
            c.decomposition,
            c.layer_identity,
            c.orthogonality,
            c.trace,
            c.sum_to_identity,
            c.idempotents.map_or("skipped".to_string(), |b| b.to_string())
        ));
        out
    }
}

fn omega_sq_inv(omega: usize) -> BigRational {
    let o = BigInt::from(omega);
    BigRational::new(1.into(), &o * &o)
}

pub fn cone_report(a: &GSetAnalysis, options: ReportOptions) -> ConeReport {
    let real = a.real_irreducibles();
    let m = a.m_sigma();
    let layers = a.layers();
    let omega = a.omega();
    let present = a.constituents();
    let projections: Vec<InvariantMatrix> = present
        .par_iter()
        .map(|&s| a.homogeneous_projection(s))
        .collect();

    let sigma: Vec<SigmaEntry> = present
        .iter()
        .map(|&s| SigmaEntry {
            index: s,
            constituents: real[s].constituents.clone(),
            degree: real[s].degree(),
            kind: real[s].kind.symbol().to_string(),
            norm: real[s].norm(),
            multiplicity: m[s],
            subcone_dim: a.subcone_dim(s),
            cone: format!("PSD {}x{} over {}", m[s], m[s], real[s].kind.symbol()),
        })
        .collect();

    let (by_sigma, by_chi) = a.layer_count_formulas();
    let r1 = layers.len() as i64;
    let layer_identity = by_sigma == r1 && by_chi == BigRational::from_integer(r1.into());

    let trace = present
        .iter()
        .zip(&projections)
        .all(|(&s, q)| q.trace() == Cyclo::from_int(m[s] * real[s].degree()));

    let sum = projections
        .iter()
        .fold(InvariantMatrix::zero(layers), |acc, q| acc.blend(q).expect("same G-set"));
    let sum_to_identity = sum == InvariantMatrix::identity(layers);

    let pairs: Vec<(usize, usize)> = (0..present.len())
        .flat_map(|i| (i..present.len()).map(move |j| (i, j)))
        .collect();
    let scale = omega_sq_inv(omega);
    let orthogonality = pairs.par_iter().all(|&(i, j)| {
        let v = projections[i]
            .lambda_inner(&projections[j], layers)
            .expect("same G-set");
        if i == j {
            let s = present[i];
            v == Cyclo::from_int(m[s] * real[s].degree()).scale(&scale)
        } else {
            v.is_zero()
        }
    });

    let idempotents = options.products.then(|| {
        let ps = ProductStructure::new(a.gset(), layers);
        let zero = InvariantMatrix::zero(layers);
        projections.par_iter().enumerate().all(|(i, qi)| {
            let left = ps.left_factor(qi);
            projections.iter().enumerate().all(|(j, qj)| {
                let target = if i == j { qi } else { &zero };
                ps.product_equals(&left, qj, target)
            })
        })
    });

    ConeReport {
        schema: SCHEMA.to_string(),
        group_order: a.gset().group().order(),
        stabilizer_order: a.gset().stabilizer().order(),
        omega,
        total_dim: sigma.iter().map(|s| s.subcone_dim).sum(),
        sigma,
        layers: layers
            .reps
            .iter()
            .zip(&layers.sizes)
            .map(|(&rep, &size)| LayerEntry { rep, size })
            .collect(),
        layer_count: layers.len(),
        checks: ReportChecks {
            decomposition: a.check_decomposition(),
            layer_identity,
            orthogonality,
            trace,
            sum_to_identity,
            idempotents,
        },
        gelfand: a.gelfand_classify().as_str().to_string(),
    }
}
