//! Two-outcome discrimination between the constant and balanced class channels.
//!
//! An initial state `rho_i` is sent through one of the two class channels and
//! measured with a POVM `{E_const, E_bal}`. Perfect discrimination for all
//! priors requires the two outputs to have orthogonal supports, which for a
//! uniform balanced ensemble reduces to
//!
//! ```text
//! [rho_i, Λ] = 0,    N Λ rho_i = rho_i^2,    Λ = dephase(rho_i)
//! ```
//!
//! and these hold exactly for `rho_i = |φ><φ|` with `|φ(x)|^2 = 1/N`.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::channels::{apply_balanced_channel, apply_constant_channel, dephase};
use crate::error::{Error, Result};
use crate::linalg::{hermitian_eig, hermitian_eig_unchecked, trace_norm, ComplexMatrix, DensityOperator, PureState, C64};
use crate::sampling;
use crate::DEFAULT_TOL;

/// Largest `n` accepted by [`search_perfect_state`].
pub const MAX_SEARCH_BITS: usize = 3;

/// POVM `{E_const, E_bal}`; outcome `E_const` is read as "constant".
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TwoOutcomePovm {
    e_const: ComplexMatrix,
    e_bal: ComplexMatrix,
}

fn min_eigenvalue(m: &ComplexMatrix, tol: f64) -> Result<f64> {
    Ok(hermitian_eig(m, tol)?.eigenvalues[0])
}

impl TwoOutcomePovm {
    pub fn new(e_const: ComplexMatrix, e_bal: ComplexMatrix, tol: f64) -> Result<Self> {
        if e_const.dim() != e_bal.dim() {
            return Err(Error::DimMismatch(e_const.dim(), e_bal.dim()));
        }
        for (name, e) in [("e_const", &e_const), ("e_bal", &e_bal)] {
            let min = min_eigenvalue(e, tol)?;
            if min < -tol {
                return Err(Error::InvalidPovm(format!("{name} has negative eigenvalue {min:e}")));
            }
        }
        let sum = &e_const + &e_bal;
        let residual = (&sum - &ComplexMatrix::identity(sum.dim())).frobenius_norm();
        if residual > tol {
            return Err(Error::InvalidPovm(format!("elements sum to I only within {residual:e}")));
        }
        Ok(TwoOutcomePovm { e_const, e_bal })
    }

    /// `{E, I - E}`
    pub fn complement(e_const: ComplexMatrix, tol: f64) -> Result<Self> {
        let e_bal = &ComplexMatrix::identity(e_const.dim()) - &e_const;
        Self::new(e_const, e_bal, tol)
    }

    /// `E_const = E_bal = I/2`: an uninformative measurement.
    pub fn identity_half(dim: usize) -> Self {
        let half = ComplexMatrix::identity(dim).scale(0.5);
        TwoOutcomePovm { e_const: half.clone(), e_bal: half }
    }

    pub fn e_const(&self) -> &ComplexMatrix {
        &self.e_const
    }

    pub fn e_bal(&self) -> &ComplexMatrix {
        &self.e_bal
    }

    pub fn dim(&self) -> usize {
        self.e_const.dim()
    }
}

/// Prior probabilities of drawing a constant or balanced oracle.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Priors {
    p_const: f64,
    p_bal: f64,
}

impl Priors {
    pub fn new(p_const: f64, p_bal: f64, tol: f64) -> Result<Self> {
        let in_unit = |p: f64| (0.0..=1.0).contains(&p);
        if !in_unit(p_const) || !in_unit(p_bal) || (p_const + p_bal - 1.0).abs() > tol {
            return Err(Error::BadPriors(p_const, p_bal));
        }
        Ok(Priors { p_const, p_bal })
    }

    pub fn from_const(p_const: f64) -> Result<Self> {
        Self::new(p_const, 1.0 - p_const, DEFAULT_TOL)
    }

    pub fn equal() -> Self {
        Priors { p_const: 0.5, p_bal: 0.5 }
    }

    pub fn p_const(&self) -> f64 {
        self.p_const
    }

    pub fn p_bal(&self) -> f64 {
        self.p_bal
    }
}

/// `p_const Tr(rho_const E_const) + p_bal Tr(rho_bal E_bal)` with both channel outputs formed from `rho_i`.
pub fn success_probability(rho_i: &DensityOperator, povm: &TwoOutcomePovm, priors: Priors) -> Result<f64> {
    if rho_i.dim() != povm.dim() {
        return Err(Error::DimMismatch(rho_i.dim(), povm.dim()));
    }
    let rho_const = apply_constant_channel(rho_i);
    let rho_bal = apply_balanced_channel(rho_i)?;
    let p = priors.p_const * rho_const.matrix().trace_product(&povm.e_const).re
        + priors.p_bal * rho_bal.matrix().trace_product(&povm.e_bal).re;
    Ok(p.clamp(0.0, 1.0))
}

/// Optimal two-state success `(1 + ||p_const rho_a - p_bal rho_b||_1) / 2`.
///
/// `rho_a` is weighted by `priors.p_const()` and `rho_b` by `priors.p_bal()`.
pub fn helstrom_success(rho_a: &DensityOperator, rho_b: &DensityOperator, priors: Priors) -> Result<f64> {
    if rho_a.dim() != rho_b.dim() {
        return Err(Error::DimMismatch(rho_a.dim(), rho_b.dim()));
    }
    let diff = &rho_a.matrix().scale(priors.p_const) - &rho_b.matrix().scale(priors.p_bal);
    let p = 0.5 * (1.0 + trace_norm(&diff)?);
    Ok(p.clamp(priors.p_const.max(priors.p_bal), 1.0))
}

/// Residuals of the conditions for certain discrimination, all Frobenius norms.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CertaintyCertificate {
    /// `||[rho_i, Λ]||`
    pub commutator_residual: f64,
    /// `||N Λ rho_i - rho_i^2||`
    pub lambda_rho_residual: f64,
    /// `||rho_const rho_bal||`
    pub orthogonality_residual: f64,
    /// Present only when `rho_i` and `Λ` commute within tolerance.
    pub eq8_residual: Option<f64>,
    pub verdict: bool,
}

pub fn certainty_certificate(rho_i: &DensityOperator, tol: f64) -> CertaintyCertificate {
    let rho = rho_i.matrix();
    let n = rho_i.dim() as f64;
    let lambda = dephase(rho_i);
    let lam = lambda.matrix();

    let commutator_residual = rho.commutator(lam).frobenius_norm();
    let lambda_rho_residual = (&(lam * rho).scale(n) - &(rho * rho)).frobenius_norm();
    let orthogonality_residual = match apply_balanced_channel(rho_i) {
        Ok(rho_bal) => (rho * rho_bal.matrix()).frobenius_norm(),
        // a 1-dimensional space cannot hold two orthogonal states
        Err(_) => f64::INFINITY,
    };
    let eq8_residual = if commutator_residual <= tol {
        eq8_balance(rho_i, tol).ok()
    } else {
        None
    };

    let verdict = [commutator_residual, lambda_rho_residual, orthogonality_residual]
        .into_iter()
        .chain(eq8_residual)
        .all(|r| r <= tol);

    CertaintyCertificate {
        commutator_residual,
        lambda_rho_residual,
        orthogonality_residual,
        eq8_residual,
        verdict,
    }
}

/// A common eigenbasis of `rho` and `Λ`, as `(p_j, φ_j)` pairs.
///
/// Diagonalizes `rho`, then diagonalizes `Λ` within each eigenspace of `rho`
/// (eigenvalues closer than `tol` are grouped together).
fn joint_eigenbasis(rho: &ComplexMatrix, lambda: &ComplexMatrix, tol: f64) -> Vec<(f64, Vec<C64>)> {
    let dim = rho.dim();
    let eig = hermitian_eig_unchecked(rho);
    let mut out = Vec::with_capacity(dim);
    let mut start = 0;
    while start < dim {
        let mut end = start + 1;
        while end < dim && eig.eigenvalues[end] - eig.eigenvalues[end - 1] <= tol {
            end += 1;
        }
        let block = &eig.eigenvectors[start..end];
        let k = block.len();
        if k == 1 {
            out.push(block[0].clone());
        } else {
            // Λ restricted to the block: B^dag Λ B
            let mut restricted = ComplexMatrix::zeros(k);
            for (i, vi) in block.iter().enumerate() {
                let lv = lambda.apply(vi);
                for (j, vj) in block.iter().enumerate() {
                    restricted[(j, i)] = vj.iter().zip(&lv).map(|(a, b)| a.conj() * b).sum();
                }
            }
            let inner = hermitian_eig_unchecked(&restricted);
            for w in &inner.eigenvectors {
                let mut v = vec![C64::new(0.0, 0.0); dim];
                for (coef, basis) in w.iter().zip(block) {
                    for (vx, bx) in v.iter_mut().zip(basis) {
                        *vx += coef * bx;
                    }
                }
                out.push(v);
            }
        }
        start = end;
    }
    out.into_iter()
        .map(|v| {
            let applied = rho.apply(&v);
            let p: f64 = v.iter().zip(&applied).map(|(a, b)| (a.conj() * b).re).sum();
            (p.max(0.0), v)
        })
        .collect()
}

/// Magnitudes of `v` after rotating its first non-negligible amplitude to the positive real axis.
fn magnitude_key(v: &[C64], tol: f64) -> Vec<f64> {
    let phase = v
        .iter()
        .find(|z| z.norm() > tol)
        .map_or(C64::new(1.0, 0.0), |z| z.conj() / z.norm());
    v.iter().map(|z| (z * phase).norm()).collect()
}

fn lexicographically_larger(a: &[f64], b: &[f64], tol: f64) -> bool {
    for (x, y) in a.iter().zip(b) {
        if (x - y).abs() > tol {
            return x > y;
        }
    }
    false
}

/// `|p1/N - (p1 Σ|φ1|^4 + Σ_{k≠1} p_k Σ|φ_k|^2 |φ1|^2)|` in a joint eigenbasis of `rho_i` and `Λ`.
///
/// `φ1` is the eigenvector of the largest eigenvalue `p1`. Among degenerate
/// candidates the one with the lexicographically largest magnitude sequence
/// wins.
pub fn eq8_balance(rho_i: &DensityOperator, tol: f64) -> Result<f64> {
    let rho = rho_i.matrix();
    let lambda = dephase(rho_i);
    let comm = rho.commutator(lambda.matrix()).frobenius_norm();
    if comm > tol {
        return Err(Error::NotCommuting(comm));
    }
    let basis = joint_eigenbasis(rho, lambda.matrix(), tol);
    let p1 = basis.iter().map(|(p, _)| *p).fold(0.0, f64::max);
    if p1 <= tol {
        return Err(Error::ZeroState);
    }

    let mut leading: Option<(usize, Vec<f64>)> = None;
    for (j, (p, v)) in basis.iter().enumerate() {
        if *p < p1 - tol {
            continue;
        }
        let key = magnitude_key(v, tol);
        if leading.as_ref().is_none_or(|(_, best)| lexicographically_larger(&key, best, tol)) {
            leading = Some((j, key));
        }
    }
    let (lead, _) = leading.expect("at least one eigenvalue equals p1");
    let (p_lead, phi1) = &basis[lead];
    let weights1: Vec<f64> = phi1.iter().map(|z| z.norm_sqr()).collect();

    let self_term = p_lead * weights1.iter().map(|w| w * w).sum::<f64>();
    let cross_term: f64 = basis
        .iter()
        .enumerate()
        .filter(|(k, _)| *k != lead)
        .map(|(_, (pk, phik))| pk * phik.iter().zip(&weights1).map(|(z, w1)| z.norm_sqr() * w1).sum::<f64>())
        .sum();

    let n = rho_i.dim() as f64;
    Ok((p_lead / n - (self_term + cross_term)).abs())
}

/// `Σ_x |φ(x)|^4`, bounded below by `1/N`.
pub fn inverse_participation(phi: &PureState) -> Result<f64> {
    let norm_sqr = phi.norm_sqr();
    if (norm_sqr - 1.0).abs() > DEFAULT_TOL {
        return Err(Error::NotNormalized(norm_sqr));
    }
    Ok(phi.amplitudes().iter().map(|z| z.norm_sqr().powi(2)).sum())
}

/// True iff `rho_i` is pure (largest eigenvalue at least `1 - tol`) with every diagonal entry within `tol` of `1/N`.
pub fn is_perfect_initial_state(rho_i: &DensityOperator, tol: f64) -> bool {
    let target = 1.0 / rho_i.dim() as f64;
    let flat = rho_i.matrix().diagonal().iter().all(|d| (d.re - target).abs() <= tol);
    flat && rho_i.largest_eigenvalue() >= 1.0 - tol
}

/// `E_const = |φ><φ|`, `E_bal = I - E_const`.
pub fn build_certainty_povm(phi: &PureState) -> Result<TwoOutcomePovm> {
    let rho = phi.projector()?;
    if !phi.is_normalized(DEFAULT_TOL) || !is_perfect_initial_state(&rho, DEFAULT_TOL) {
        return Err(Error::NotPerfectState);
    }
    TwoOutcomePovm::complement(rho.into_matrix(), DEFAULT_TOL)
}

/// Equal-priors Helstrom success for the two channel outputs of `|ψ><ψ|`.
pub fn state_objective(psi: &PureState) -> Result<f64> {
    let rho = psi.projector()?;
    let rho_bal = apply_balanced_channel(&rho)?;
    helstrom_success(&apply_constant_channel(&rho), &rho_bal, Priors::equal())
}

const FD_STEP: f64 = 1e-6;
const INITIAL_STEP: f64 = 0.1;
const MIN_STEP: f64 = 1e-14;
const TARGET_GAP: f64 = 1e-13;

fn params_to_state(x: &[f64]) -> Result<PureState> {
    let dim = x.len() / 2;
    let amps = (0..dim).map(|i| C64::new(x[i], x[dim + i])).collect();
    PureState::new(amps)?.normalized()
}

fn normalize_params(x: &mut [f64]) {
    let norm = x.iter().map(|v| v * v).sum::<f64>().sqrt();
    if norm > 0.0 {
        x.iter_mut().for_each(|v| *v /= norm);
    }
}

fn objective_at(x: &[f64]) -> f64 {
    params_to_state(x).and_then(|s| state_objective(&s)).unwrap_or(0.0)
}

/// Projected gradient ascent from one start, with central-difference gradients over the 2N real parameters.
fn ascend(start: &PureState, iterations: usize) -> Result<(PureState, f64)> {
    let dim = start.dim();
    let mut x: Vec<f64> = start
        .amplitudes()
        .iter()
        .map(|z| z.re)
        .chain(start.amplitudes().iter().map(|z| z.im))
        .collect();
    normalize_params(&mut x);
    let mut value = objective_at(&x);
    let mut step = INITIAL_STEP;
    let mut grad = vec![0.0; 2 * dim];

    for _ in 0..iterations {
        if value >= 1.0 - TARGET_GAP || step < MIN_STEP {
            break;
        }
        for i in 0..2 * dim {
            let orig = x[i];
            x[i] = orig + FD_STEP;
            let up = objective_at(&x);
            x[i] = orig - FD_STEP;
            let down = objective_at(&x);
            x[i] = orig;
            grad[i] = (up - down) / (2.0 * FD_STEP);
        }
        let gnorm = grad.iter().map(|g| g * g).sum::<f64>().sqrt();
        if gnorm == 0.0 {
            break;
        }
        loop {
            let mut trial: Vec<f64> = x.iter().zip(&grad).map(|(xi, gi)| xi + step * gi / gnorm).collect();
            normalize_params(&mut trial);
            let trial_value = objective_at(&trial);
            if trial_value > value {
                x = trial;
                value = trial_value;
                step *= 1.5;
                break;
            }
            step *= 0.5;
            if step < MIN_STEP {
                break;
            }
        }
    }
    Ok((params_to_state(&x)?, value))
}

/// Searches for an initial pure state maximizing equal-priors Helstrom success between the two class-channel outputs.
///
/// Runs `max(restarts, 1)` independent ascents, each from a Haar-random start
/// drawn from stream `r` of a ChaCha8 generator seeded with `seed`. With
/// `iterations == 0` the random start itself is returned. The winner is the
/// highest success, ties going to the lowest restart index.
pub fn search_perfect_state(n: usize, seed: u64, restarts: usize, iterations: usize) -> Result<(PureState, f64)> {
    if n == 0 || n > MAX_SEARCH_BITS {
        return Err(Error::ResourceLimit(format!(
            "state search supports 1 <= n <= {MAX_SEARCH_BITS}, got {n}"
        )));
    }
    let dim = 1usize << n;
    let mut best: Option<(PureState, f64)> = None;
    for r in 0..restarts.max(1) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(r as u64);
        let start = sampling::haar_pure_state(dim, &mut rng);
        let candidate = ascend(&start, iterations)?;
        if best.as_ref().is_none_or(|(_, s)| candidate.1 > *s) {
            best = Some(candidate);
        }
    }
    Ok(best.expect("at least one restart"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::frobenius_distance;
    use rand::SeedableRng;
    use std::f64::consts::PI;

    fn basis0(dim: usize) -> DensityOperator {
        PureState::basis(dim, 0).unwrap().projector().unwrap()
    }

    #[test]
    fn success_of_certainty_povm_is_one() {
        let phi = PureState::uniform(4).unwrap();
        let povm = build_certainty_povm(&phi).unwrap();
        for p in [0.0, 0.3, 0.5, 1.0] {
            let s = success_probability(&phi.projector().unwrap(), &povm, Priors::from_const(p).unwrap()).unwrap();
            assert!((s - 1.0).abs() < 1e-12, "p = {p}: {s}");
        }
    }

    #[test]
    fn success_of_uninformative_povm_is_half() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let rho = sampling::random_mixed_state(4, &mut rng);
        let povm = TwoOutcomePovm::identity_half(4);
        let s = success_probability(&rho, &povm, Priors::from_const(0.2).unwrap()).unwrap();
        assert!((s - 0.5).abs() < 1e-12);
    }

    #[test]
    fn success_with_diagonal_fixed_point() {
        // |0><0| is fixed by both channels, so E_const = I always answers "constant".
        let povm = TwoOutcomePovm::complement(ComplexMatrix::identity(2), 1e-12).unwrap();
        let s = success_probability(&basis0(2), &povm, Priors::new(0.7, 0.3, 1e-12).unwrap()).unwrap();
        assert!((s - 0.7).abs() < 1e-15);
    }

    #[test]
    fn success_dim_mismatch() {
        let povm = TwoOutcomePovm::identity_half(4);
        assert_eq!(
            success_probability(&basis0(2), &povm, Priors::equal()),
            Err(Error::DimMismatch(2, 4))
        );
    }

    #[test]
    fn helstrom_examples() {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        let rho = sampling::random_mixed_state(4, &mut rng);
        let p = Priors::new(0.7, 0.3, 1e-12).unwrap();
        assert!((helstrom_success(&rho, &rho, p).unwrap() - 0.7).abs() < 1e-12);

        let one = PureState::basis(2, 1).unwrap().projector().unwrap();
        assert!((helstrom_success(&basis0(2), &one, Priors::equal()).unwrap() - 1.0).abs() < 1e-12);

        let u = PureState::uniform(8).unwrap().projector().unwrap();
        let bal = apply_balanced_channel(&u).unwrap();
        assert!((helstrom_success(&u, &bal, Priors::equal()).unwrap() - 1.0).abs() < 1e-10);
        assert!(helstrom_success(&u, &basis0(2), Priors::equal()).is_err());
    }

    #[test]
    fn certificate_for_perfect_states() {
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        for dim in [2, 4, 8] {
            let phi = PureState::with_phases(&sampling::random_phases(dim, &mut rng)).unwrap();
            let cert = certainty_certificate(&phi.projector().unwrap(), 1e-9);
            assert!(cert.verdict, "{cert:?}");
            assert!(cert.commutator_residual <= 1e-12);
            assert!(cert.lambda_rho_residual <= 1e-12);
            assert!(cert.orthogonality_residual <= 1e-12);
            assert!(cert.eq8_residual.unwrap() <= 1e-12);
        }
    }

    #[test]
    fn certificate_for_basis_state() {
        let cert = certainty_certificate(&basis0(2), 1e-9);
        assert!(!cert.verdict);
        assert!((cert.lambda_rho_residual - 1.0).abs() < 1e-15);
        assert_eq!(cert.commutator_residual, 0.0);
        assert!((cert.eq8_residual.unwrap() - 0.5).abs() < 1e-15);
    }

    #[test]
    fn certificate_for_maximally_mixed() {
        for dim in [2usize, 4] {
            let n = dim as f64;
            let cert = certainty_certificate(&DensityOperator::maximally_mixed(dim).unwrap(), 1e-9);
            assert!(!cert.verdict);
            // ||I/N - I/N^2||_F = sqrt(N) (1/N - 1/N^2)
            let expected = n.sqrt() * (1.0 / n - 1.0 / (n * n));
            assert!((cert.lambda_rho_residual - expected).abs() < 1e-15);
        }
    }

    #[test]
    fn certificate_json_field_names() {
        let cert = certainty_certificate(&basis0(2), 1e-9);
        let v: serde_json::Value = serde_json::to_value(&cert).unwrap();
        let keys: Vec<&str> = v.as_object().unwrap().keys().map(|k| k.as_str()).collect();
        for k in ["commutator_residual", "lambda_rho_residual", "orthogonality_residual", "eq8_residual", "verdict"] {
            assert!(keys.contains(&k), "missing {k}");
        }
    }

    #[test]
    fn eq8_examples() {
        let u = PureState::uniform(4).unwrap().projector().unwrap();
        assert!(eq8_balance(&u, 1e-9).unwrap() <= 1e-12);
        assert!((eq8_balance(&basis0(2), 1e-9).unwrap() - 0.5).abs() <= 1e-12);
        // diag(1/2, 1/2): p1 / N = 1/4 while p1 Σ|φ1|^4 = 1/2 and the cross term vanishes
        let half = DensityOperator::maximally_mixed(2).unwrap();
        assert!((eq8_balance(&half, 1e-9).unwrap() - 0.25).abs() <= 1e-12);
    }

    #[test]
    fn eq8_requires_commuting() {
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        let rho = sampling::random_mixed_state(4, &mut rng);
        assert!(matches!(eq8_balance(&rho, 1e-9), Err(Error::NotCommuting(_))));
    }

    #[test]
    fn eq8_degenerate_leading_eigenvector() {
        // both eigenvalues 1/2; tie broken toward |0>, which has magnitudes (1, 0)
        let rho = DensityOperator::from_probabilities(&[0.5, 0.5, 0.0, 0.0], 1e-12).unwrap();
        // p1/N = 1/8, RHS = 1/2
        assert!((eq8_balance(&rho, 1e-9).unwrap() - 0.375).abs() <= 1e-12);
    }

    #[test]
    fn ipr_examples() {
        assert!((inverse_participation(&PureState::uniform(4).unwrap()).unwrap() - 0.25).abs() < 1e-15);
        assert_eq!(inverse_participation(&PureState::basis(4, 2).unwrap()).unwrap(), 1.0);
        let s = PureState::new(vec![C64::new(3f64.sqrt() / 2.0, 0.0), C64::new(0.5, 0.0)]).unwrap();
        assert!((inverse_participation(&s).unwrap() - 0.625).abs() < 1e-15);
        let unnorm = PureState::new(vec![C64::new(1.0, 0.0), C64::new(1.0, 0.0)]).unwrap();
        assert!(matches!(inverse_participation(&unnorm), Err(Error::NotNormalized(_))));
    }

    #[test]
    fn perfect_state_predicate() {
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        let phi = PureState::with_phases(&sampling::random_phases(4, &mut rng)).unwrap();
        assert!(is_perfect_initial_state(&phi.projector().unwrap(), 1e-9));
        assert!(!is_perfect_initial_state(&basis0(4), 1e-9));
        assert!(!is_perfect_initial_state(&DensityOperator::maximally_mixed(4).unwrap(), 1e-9));
    }

    #[test]
    fn certainty_povm_examples() {
        let povm = build_certainty_povm(&PureState::uniform(2).unwrap()).unwrap();
        let expected = ComplexMatrix::from_real_rows(&[&[0.5, 0.5], &[0.5, 0.5]]).unwrap();
        assert!(frobenius_distance(povm.e_const(), &expected).unwrap() < 1e-15);
        let sum = povm.e_const() + povm.e_bal();
        assert!(frobenius_distance(&sum, &ComplexMatrix::identity(2)).unwrap() < 1e-15);

        let minus = build_certainty_povm(&PureState::with_phases(&[0.0, PI]).unwrap()).unwrap();
        let expected = ComplexMatrix::from_real_rows(&[&[0.5, -0.5], &[-0.5, 0.5]]).unwrap();
        assert!(frobenius_distance(minus.e_const(), &expected).unwrap() < 1e-15);

        assert_eq!(
            build_certainty_povm(&PureState::basis(2, 0).unwrap()),
            Err(Error::NotPerfectState)
        );
    }

    #[test]
    fn povm_validation() {
        let i2 = ComplexMatrix::identity(2);
        assert!(TwoOutcomePovm::new(i2.clone(), i2.clone(), 1e-9).is_err());
        let neg = ComplexMatrix::from_real_diag(&[1.5, 0.5]);
        assert!(TwoOutcomePovm::complement(neg, 1e-9).is_err());
        assert!(TwoOutcomePovm::new(i2, ComplexMatrix::zeros(3), 1e-9).is_err());
    }

    #[test]
    fn priors_validation() {
        assert!(Priors::new(0.6, 0.6, 1e-9).is_err());
        assert!(Priors::new(-0.1, 1.1, 1e-9).is_err());
        assert!(Priors::from_const(1.0).is_ok());
    }

    #[test]
    fn search_n1_reaches_optimum() {
        let (state, success) = search_perfect_state(1, 7, 20, 500).unwrap();
        assert!(success >= 1.0 - 1e-6, "{success}");
        for z in state.amplitudes() {
            assert!((z.norm_sqr() - 0.5).abs() < 1e-3);
        }
    }

    #[test]
    fn search_zero_budget_returns_start() {
        let (state, success) = search_perfect_state(1, 7, 0, 0).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        rng.set_stream(0);
        let start = sampling::haar_pure_state(2, &mut rng);
        assert!(frobenius_distance(
            state.projector().unwrap().matrix(),
            start.projector().unwrap().matrix()
        )
        .unwrap()
            < 1e-15);
        assert!(success < 1.0 - 1e-6);
        assert!((success - state_objective(&start).unwrap()).abs() < 1e-15);
    }

    #[test]
    fn search_cap() {
        assert!(matches!(search_perfect_state(8, 7, 1, 1), Err(Error::ResourceLimit(_))));
        assert!(matches!(search_perfect_state(0, 7, 1, 1), Err(Error::ResourceLimit(_))));
    }
}
