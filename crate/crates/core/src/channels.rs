//! Class-averaged oracle channels.
//!
//! Averaging `U_f rho U_f^dag` over the two constant oracles leaves `rho`
//! unchanged. Averaging uniformly over every balanced oracle gives
//!
//! ```text
//! rho -> (N dephase(rho) - rho) / (N - 1)
//! ```
//!
//! where `dephase` keeps only the computational-basis diagonal. Both are
//! provided in closed form, alongside [`apply_ensemble_channel`], which forms
//! the weighted sum over explicitly enumerated oracle unitaries.

use crate::error::{Error, Result};
use crate::linalg::{ComplexMatrix, DensityOperator};
use crate::oracle::{self, FunctionClass, DEFAULT_ENUMERATION_CAP};
use crate::DEFAULT_TOL;

/// A class of oracles together with the probabilities `p_f` of applying each member.
#[derive(Clone, Debug, PartialEq)]
pub struct ClassEnsemble {
    class: FunctionClass,
    n: usize,
    weights: Option<Vec<f64>>,
}

impl ClassEnsemble {
    pub fn uniform(class: FunctionClass, n: usize) -> Result<Self> {
        Self::new(class, n, None)
    }

    /// `weights` align with the enumeration order of the class; `None` means uniform.
    pub fn new(class: FunctionClass, n: usize, weights: Option<Vec<f64>>) -> Result<Self> {
        if class == FunctionClass::Neither {
            return Err(Error::BadWeights("ensemble class must be constant or balanced".into()));
        }
        if let Some(w) = &weights {
            let expected = match class {
                FunctionClass::Constant => 2,
                _ => oracle::balanced_count(n)
                    .filter(|&c| c <= DEFAULT_ENUMERATION_CAP)
                    .ok_or_else(|| Error::ResourceLimit(format!("n = {n} balanced class exceeds cap")))?
                    as usize,
            };
            if w.len() != expected {
                return Err(Error::BadWeights(format!("expected {expected} weights, got {}", w.len())));
            }
            if let Some(bad) = w.iter().find(|&&p| !p.is_finite() || p < 0.0) {
                return Err(Error::BadWeights(format!("weight {bad} is not a nonnegative number")));
            }
            let total: f64 = w.iter().sum();
            if (total - 1.0).abs() > DEFAULT_TOL {
                return Err(Error::BadWeights(format!("weights sum to {total}")));
            }
        }
        Ok(ClassEnsemble { class, n, weights })
    }

    pub fn class(&self) -> FunctionClass {
        self.class
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn weights(&self) -> Option<&[f64]> {
        self.weights.as_deref()
    }
}

/// Constant-class channel: the identity map.
pub fn apply_constant_channel(rho: &DensityOperator) -> DensityOperator {
    rho.clone()
}

/// Uniform balanced-class channel, `(N dephase(rho) - rho) / (N - 1)`.
pub fn apply_balanced_channel(rho: &DensityOperator) -> Result<DensityOperator> {
    let dim = rho.dim();
    if dim < 2 {
        return Err(Error::DimTooSmall(dim));
    }
    let m = rho.matrix();
    let n = dim as f64;
    let scale = 1.0 / (n - 1.0);
    let mut out = m.scale(-scale);
    for x in 0..dim {
        out[(x, x)] = m[(x, x)];
    }
    Ok(DensityOperator::from_matrix_unchecked(out))
}

/// `Σ_f p_f U_f rho U_f^dag` over the explicitly enumerated class members.
///
/// Terms are accumulated in enumeration order so results are reproducible.
pub fn apply_ensemble_channel(ens: &ClassEnsemble, rho: &DensityOperator) -> Result<DensityOperator> {
    let dim = 1usize << ens.n;
    if rho.dim() != dim {
        return Err(Error::DimMismatch(rho.dim(), dim));
    }
    let members = match ens.class {
        FunctionClass::Constant => oracle::enumerate_constant(ens.n)?,
        FunctionClass::Balanced => oracle::enumerate_balanced(ens.n)?,
        FunctionClass::Neither => unreachable!("rejected at construction"),
    };
    let uniform = 1.0 / members.len() as f64;
    let mut acc = ComplexMatrix::zeros(dim);
    for (i, f) in members.iter().enumerate() {
        let p = ens.weights.as_ref().map_or(uniform, |w| w[i]);
        if p == 0.0 {
            continue;
        }
        let u = f.unitary();
        let term = &(&u * rho.matrix()) * &u.adjoint();
        acc = &acc + &term.scale(p);
    }
    Ok(DensityOperator::from_matrix_unchecked(acc))
}

/// `Λ = Σ_x P_x rho P_x`: the computational-basis diagonal of `rho`.
pub fn dephase(rho: &DensityOperator) -> DensityOperator {
    let diag = rho.matrix().diagonal();
    DensityOperator::from_matrix_unchecked(ComplexMatrix::from_diag(&diag))
}
