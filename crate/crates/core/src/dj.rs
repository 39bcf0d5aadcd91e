//! Deutsch-Jozsa runs in oracle-algorithm form.
//!
//! A pipeline is the algorithm unitary `V_M U_f ... V_1 U_f V_0`; the oracle
//! is the only input-dependent factor. [`run_discrimination`] measures
//! `U_f|φ>` with a two-outcome POVM, [`sweep_all`] does so for every
//! admissible oracle, and [`classical_witness`] exhibits the deterministic
//! classical query bound `2^(n-1) + 1`.

use serde::{Deserialize, Serialize};

use crate::discrimination::TwoOutcomePovm;
use crate::error::{Error, Result};
use crate::linalg::{ComplexMatrix, PureState, C64};
use crate::oracle::{self, BooleanOracle, FunctionClass};
use crate::DEFAULT_TOL;

/// Largest `n` for [`classical_witness`].
pub const MAX_CLASSICAL_BITS: usize = 4;

/// `H^{⊗n}`
pub fn hadamard_transform(n: usize) -> ComplexMatrix {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let h = ComplexMatrix::from_real_rows(&[&[s, s], &[s, -s]]).expect("2x2");
    (1..n).fold(h.clone(), |acc, _| acc.kron(&h))
}

/// Oracle-independent unitaries `V_0, ..., V_M` interleaved with `M` oracle calls.
#[derive(Clone, Debug)]
pub struct OraclePipeline {
    n: usize,
    interleave: Vec<ComplexMatrix>,
}

impl OraclePipeline {
    pub fn new(n: usize, interleave: Vec<ComplexMatrix>, tol: f64) -> Result<Self> {
        if n == 0 || n > oracle::MAX_BITS {
            return Err(Error::InvalidPipeline(format!("n = {n} out of range")));
        }
        if interleave.len() < 2 {
            return Err(Error::InvalidPipeline("need V_0 and V_1 at least (M >= 1)".into()));
        }
        let dim = 1usize << n;
        for (i, v) in interleave.iter().enumerate() {
            if v.dim() != dim {
                return Err(Error::DimMismatch(v.dim(), dim));
            }
            let residual = v.unitarity_residual();
            if residual > tol {
                return Err(Error::InvalidPipeline(format!("V_{i} is not unitary (residual {residual:e})")));
            }
        }
        Ok(OraclePipeline { n, interleave })
    }

    /// All `V_i = I`.
    pub fn identity(n: usize, invocations: usize) -> Result<Self> {
        let dim = 1usize << n.min(oracle::MAX_BITS);
        Self::new(n, vec![ComplexMatrix::identity(dim); invocations + 1], DEFAULT_TOL)
    }

    /// `V_0 = V_1 = H^{⊗n}`, one oracle call.
    pub fn textbook(n: usize) -> Result<Self> {
        if n == 0 || n > oracle::MAX_BITS {
            return Err(Error::InvalidPipeline(format!("n = {n} out of range")));
        }
        let h = hadamard_transform(n);
        Self::new(n, vec![h.clone(), h], DEFAULT_TOL)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// `M`, the number of oracle calls.
    pub fn invocations(&self) -> usize {
        self.interleave.len() - 1
    }

    pub fn interleave(&self) -> &[ComplexMatrix] {
        &self.interleave
    }
}

fn apply_oracle(f: &BooleanOracle, psi: &[C64]) -> Vec<C64> {
    psi.iter().zip(f.signs()).map(|(a, s)| a * s).collect()
}

/// `|Ψ_f> = V_M U_f ... V_1 U_f V_0 |Ψ_i>`
pub fn run_pipeline(p: &OraclePipeline, f: &BooleanOracle, psi_i: &PureState) -> Result<PureState> {
    let dim = 1usize << p.n;
    if f.domain_size() != dim {
        return Err(Error::DimMismatch(f.domain_size(), dim));
    }
    if psi_i.dim() != dim {
        return Err(Error::DimMismatch(psi_i.dim(), dim));
    }
    let (first, rest) = p.interleave.split_first().expect("M >= 1");
    let mut psi = first.apply(psi_i.amplitudes());
    for v in rest {
        psi = v.apply(&apply_oracle(f, &psi));
    }
    PureState::new(psi)
}

/// Outcome probabilities and inferred class for one oracle.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunOutcome {
    pub prob_const_outcome: f64,
    pub prob_bal_outcome: f64,
    pub inferred: FunctionClass,
    pub correct: bool,
}

impl RunOutcome {
    fn new(prob_const_outcome: f64, prob_bal_outcome: f64, actual: FunctionClass) -> Self {
        // ties go to Constant
        let inferred = if prob_const_outcome >= prob_bal_outcome {
            FunctionClass::Constant
        } else {
            FunctionClass::Balanced
        };
        RunOutcome {
            prob_const_outcome,
            prob_bal_outcome,
            inferred,
            correct: inferred == actual,
        }
    }

    /// Probability of the outcome that names the true class.
    pub fn success(&self, actual: FunctionClass) -> f64 {
        match actual {
            FunctionClass::Constant => self.prob_const_outcome,
            _ => self.prob_bal_outcome,
        }
    }
}

/// Measures `U_f|φ>` with `povm` and infers the class from the likelier outcome.
pub fn run_discrimination(f: &BooleanOracle, phi: &PureState, povm: &TwoOutcomePovm) -> Result<RunOutcome> {
    let class = f.classify();
    if class == FunctionClass::Neither {
        return Err(Error::PromiseViolation);
    }
    if phi.dim() != f.domain_size() {
        return Err(Error::DimMismatch(phi.dim(), f.domain_size()));
    }
    if povm.dim() != phi.dim() {
        return Err(Error::DimMismatch(povm.dim(), phi.dim()));
    }
    if !phi.is_normalized(DEFAULT_TOL) {
        return Err(Error::NotNormalized(phi.norm_sqr()));
    }
    let out = PureState::new(apply_oracle(f, phi.amplitudes()))?;
    Ok(measure(&out, povm, class))
}

pub(crate) fn measure(psi: &PureState, povm: &TwoOutcomePovm, actual: FunctionClass) -> RunOutcome {
    let p_const = psi.expectation(povm.e_const()).re;
    let p_bal = psi.expectation(povm.e_bal()).re;
    RunOutcome::new(p_const, p_bal, actual)
}

/// Min and mean success over every constant and balanced oracle.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SweepSummary {
    pub n: usize,
    pub oracle_count: usize,
    pub min_success: f64,
    pub mean_success: f64,
}

pub fn sweep_all(n: usize, phi: &PureState, povm: &TwoOutcomePovm) -> Result<SweepSummary> {
    let oracles = oracle::enumerate_admissible(n)?;
    let mut min_success = f64::INFINITY;
    let mut total = 0.0;
    for f in &oracles {
        let outcome = run_discrimination(f, phi, povm)?;
        let s = outcome.success(f.classify());
        min_success = min_success.min(s);
        total += s;
    }
    Ok(SweepSummary {
        n,
        oracle_count: oracles.len(),
        min_success,
        mean_success: total / oracles.len() as f64,
    })
}

/// A query set with identical answers that a constant and a balanced oracle share.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct InsufficiencyWitness {
    pub queries: Vec<usize>,
    pub answers: Vec<u8>,
    pub constant: BooleanOracle,
    pub balanced: BooleanOracle,
}

/// Pigeonhole record: `queries_sufficient` equal answers exceed what any balanced oracle can give.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SufficiencyRecord {
    pub queries_sufficient: usize,
    pub balanced_max_equal_answers: usize,
    pub rule: String,
}

/// Counts from checking every query set of the two critical sizes.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExhaustiveCheck {
    pub sets_of_size_half: usize,
    pub fooled_sets_of_size_half: usize,
    pub sets_of_size_half_plus_one: usize,
    pub ambiguous_sets_of_size_half_plus_one: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ClassicalWitness {
    pub n: usize,
    pub domain_size: usize,
    pub queries_required: usize,
    pub insufficiency: InsufficiencyWitness,
    pub sufficiency: SufficiencyRecord,
    pub exhaustive: ExhaustiveCheck,
    pub verified: bool,
}

/// Every `k`-subset of `0..size` as a bit mask.
fn subsets(size: usize, k: usize) -> impl Iterator<Item = u64> {
    let limit: u128 = 1 << size;
    let mut v: u128 = if k == 0 { 0 } else { (1 << k) - 1 };
    let mut done = false;
    std::iter::from_fn(move || {
        if done || v >= limit {
            return None;
        }
        let current = v as u64;
        if v == 0 {
            done = true;
        } else {
            let c = v & v.wrapping_neg();
            let r = v + c;
            v = (((r ^ v) >> 2) / c) | r;
        }
        Some(current)
    })
}

fn exhaustive_check(n: usize) -> Result<ExhaustiveCheck> {
    let size = 1usize << n;
    let half = size / 2;
    let zero = BooleanOracle::constant(n, false)?.mask();
    let constants: Vec<u64> = oracle::enumerate_constant(n)?.iter().map(BooleanOracle::mask).collect();
    let balanced: Vec<u64> = oracle::enumerate_balanced(n)?.iter().map(BooleanOracle::mask).collect();

    // An adversary answering 0 to everything keeps the all-zeros oracle consistent.
    let mut sets_half = 0;
    let mut fooled = 0;
    for q in subsets(size, half) {
        sets_half += 1;
        if balanced.iter().any(|b| (b ^ zero) & q == 0) {
            fooled += 1;
        }
    }

    let mut sets_more = 0;
    let mut ambiguous = 0;
    for q in subsets(size, half + 1) {
        sets_more += 1;
        let clash = constants
            .iter()
            .any(|c| balanced.iter().any(|b| (b ^ c) & q == 0));
        if clash {
            ambiguous += 1;
        }
    }
    Ok(ExhaustiveCheck {
        sets_of_size_half: sets_half,
        fooled_sets_of_size_half: fooled,
        sets_of_size_half_plus_one: sets_more,
        ambiguous_sets_of_size_half_plus_one: ambiguous,
    })
}

impl ClassicalWitness {
    /// Re-checks every claim in the record from its own fields.
    pub fn verify(&self) -> bool {
        let ins = &self.insufficiency;
        let half = self.domain_size / 2;
        let agree = ins
            .queries
            .iter()
            .zip(&ins.answers)
            .all(|(&x, &a)| ins.constant.eval(x) as u8 == a && ins.balanced.eval(x) as u8 == a);
        let mut distinct = ins.queries.clone();
        distinct.sort_unstable();
        distinct.dedup();
        let insufficiency_ok = ins.queries.len() == half
            && distinct.len() == half
            && ins.queries.iter().all(|&x| x < self.domain_size)
            && agree
            && ins.constant.classify() == FunctionClass::Constant
            && ins.balanced.classify() == FunctionClass::Balanced;

        let suf = &self.sufficiency;
        let sufficiency_ok = suf.queries_sufficient == half + 1
            && suf.balanced_max_equal_answers == half
            && suf.queries_sufficient > suf.balanced_max_equal_answers
            && self.queries_required == suf.queries_sufficient;

        let ex = &self.exhaustive;
        let exhaustive_ok = ex.sets_of_size_half > 0
            && ex.fooled_sets_of_size_half == ex.sets_of_size_half
            && ex.sets_of_size_half_plus_one > 0
            && ex.ambiguous_sets_of_size_half_plus_one == 0;

        insufficiency_ok && sufficiency_ok && exhaustive_ok
    }
}

/// Witness that deterministic classical solutions need exactly `2^(n-1) + 1` queries.
pub fn classical_witness(n: usize) -> Result<ClassicalWitness> {
    if n == 0 || n > MAX_CLASSICAL_BITS {
        return Err(Error::ResourceLimit(format!(
            "classical witness supports 1 <= n <= {MAX_CLASSICAL_BITS}, got {n}"
        )));
    }
    let size = 1usize << n;
    let half = size / 2;
    let queries: Vec<usize> = (0..half).collect();
    let constant = BooleanOracle::constant(n, false)?;
    let balanced = BooleanOracle::new(n, (0..size).map(|x| x >= half).collect())?;
    let mut witness = ClassicalWitness {
        n,
        domain_size: size,
        queries_required: half + 1,
        insufficiency: InsufficiencyWitness {
            answers: vec![0; half],
            queries,
            constant,
            balanced,
        },
        sufficiency: SufficiencyRecord {
            queries_sufficient: half + 1,
            balanced_max_equal_answers: half,
            rule: "two differing answers imply balanced; more than N/2 equal answers imply constant".into(),
        },
        exhaustive: exhaustive_check(n)?,
        verified: false,
    };
    witness.verified = witness.verify();
    Ok(witness)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::discrimination::build_certainty_povm;
    use crate::sampling;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn bits(s: &str) -> BooleanOracle {
        BooleanOracle::from_bits(s).unwrap()
    }

    #[test]
    fn identity_pipeline_applies_oracle() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let psi = sampling::haar_pure_state(4, &mut rng);
        let f = bits("0110");
        let out = run_pipeline(&OraclePipeline::identity(2, 1).unwrap(), &f, &psi).unwrap();
        let expected = f.unitary().apply(psi.amplitudes());
        assert_eq!(out.amplitudes(), expected.as_slice());
    }

    #[test]
    fn textbook_pipeline_on_constant() {
        for n in 1..=3 {
            let p = OraclePipeline::textbook(n).unwrap();
            let zero = PureState::basis(1 << n, 0).unwrap();
            for (f, sign) in [(BooleanOracle::constant(n, false).unwrap(), 1.0), (BooleanOracle::constant(n, true).unwrap(), -1.0)] {
                let out = run_pipeline(&p, &f, &zero).unwrap();
                assert!((out.amplitudes()[0] - C64::new(sign, 0.0)).norm() < 1e-12);
                assert!(out.amplitudes()[1..].iter().all(|z| z.norm() < 1e-12));
            }
        }
    }

    #[test]
    fn textbook_pipeline_on_balanced_never_returns_to_zero() {
        let p = OraclePipeline::textbook(3).unwrap();
        let zero = PureState::basis(8, 0).unwrap();
        for f in oracle::enumerate_balanced(3).unwrap() {
            let out = run_pipeline(&p, &f, &zero).unwrap();
            assert!(out.amplitudes()[0].norm() < 1e-12);
        }
    }

    #[test]
    fn two_calls_cancel() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let psi = sampling::haar_pure_state(4, &mut rng);
        let p = OraclePipeline::identity(2, 2).unwrap();
        assert_eq!(p.invocations(), 2);
        for f in oracle::enumerate_admissible(2).unwrap() {
            let out = run_pipeline(&p, &f, &psi).unwrap();
            assert_eq!(out.amplitudes(), psi.amplitudes());
        }
    }

    #[test]
    fn pipeline_validation() {
        assert!(OraclePipeline::new(1, vec![ComplexMatrix::identity(2)], 1e-9).is_err());
        let not_unitary = ComplexMatrix::from_real_diag(&[1.0, 2.0]);
        assert!(OraclePipeline::new(1, vec![ComplexMatrix::identity(2), not_unitary], 1e-9).is_err());
        assert!(OraclePipeline::new(1, vec![ComplexMatrix::identity(4); 2], 1e-9).is_err());
        let p = OraclePipeline::identity(1, 1).unwrap();
        assert!(run_pipeline(&p, &bits("0110"), &PureState::uniform(2).unwrap()).is_err());
        assert!(run_pipeline(&p, &bits("01"), &PureState::uniform(4).unwrap()).is_err());
    }

    #[test]
    fn discrimination_examples() {
        let phi = PureState::uniform(4).unwrap();
        let povm = build_certainty_povm(&phi).unwrap();

        let out = run_discrimination(&bits("0110"), &phi, &povm).unwrap();
        assert!((out.prob_bal_outcome - 1.0).abs() < 1e-12);
        assert_eq!(out.inferred, FunctionClass::Balanced);
        assert!(out.correct);

        let out = run_discrimination(&bits("0000"), &phi, &povm).unwrap();
        assert!((out.prob_const_outcome - 1.0).abs() < 1e-12);
        assert_eq!(out.inferred, FunctionClass::Constant);
        assert!(out.correct);

        // |0> only picks up a global sign, so the class is invisible
        let zero = PureState::basis(4, 0).unwrap();
        let blind = TwoOutcomePovm::complement(zero.projector().unwrap().into_matrix(), 1e-12).unwrap();
        let out = run_discrimination(&bits("0110"), &zero, &blind).unwrap();
        assert!((out.prob_const_outcome - 1.0).abs() < 1e-15);
        assert_eq!(out.inferred, FunctionClass::Constant);
        assert!(!out.correct);

        assert_eq!(run_discrimination(&bits("0001"), &phi, &povm), Err(Error::PromiseViolation));
    }

    #[test]
    fn ties_resolve_to_constant() {
        let phi = PureState::uniform(2).unwrap();
        let out = run_discrimination(&bits("01"), &phi, &TwoOutcomePovm::identity_half(2)).unwrap();
        assert_eq!(out.inferred, FunctionClass::Constant);
        assert!(!out.correct);
    }

    #[test]
    fn sweep_examples() {
        let phi = PureState::uniform(8).unwrap();
        let s = sweep_all(3, &phi, &build_certainty_povm(&phi).unwrap()).unwrap();
        assert_eq!(s.oracle_count, 72);
        assert!(s.min_success >= 1.0 - 1e-10);

        let zero = PureState::basis(2, 0).unwrap();
        let always_const = TwoOutcomePovm::complement(ComplexMatrix::identity(2), 1e-12).unwrap();
        let s = sweep_all(1, &zero, &always_const).unwrap();
        assert_eq!(s.oracle_count, 4);
        assert_eq!(s.min_success, 0.0);
        assert!((s.mean_success - 0.5).abs() < 1e-15);

        let u4 = PureState::uniform(4).unwrap();
        let s = sweep_all(2, &u4, &TwoOutcomePovm::identity_half(4)).unwrap();
        assert_eq!(s.oracle_count, 8);
        assert!((s.min_success - 0.5).abs() < 1e-15);
    }

    #[test]
    fn witness_n2() {
        let w = classical_witness(2).unwrap();
        assert!(w.verified);
        assert_eq!(w.insufficiency.queries, vec![0, 1]);
        assert_eq!(w.insufficiency.answers, vec![0, 0]);
        assert_eq!(w.insufficiency.constant.to_string(), "0000");
        assert_eq!(w.insufficiency.balanced.to_string(), "0011");
        assert_eq!(w.queries_required, 3);
    }

    #[test]
    fn witness_small_and_large() {
        assert_eq!(classical_witness(1).unwrap().queries_required, 2);
        let w3 = classical_witness(3).unwrap();
        assert_eq!(w3.sufficiency.queries_sufficient, 5);
        assert_eq!(w3.sufficiency.balanced_max_equal_answers, 4);
        assert_eq!(w3.exhaustive.sets_of_size_half, 70);
        assert_eq!(w3.exhaustive.sets_of_size_half_plus_one, 56);
        assert!(w3.verified);
        assert!(matches!(classical_witness(5), Err(Error::ResourceLimit(_))));
    }

    #[test]
    fn tampered_witness_fails_verification() {
        let mut w = classical_witness(2).unwrap();
        w.insufficiency.balanced = bits("0110");
        assert!(!w.verify());
        let mut w = classical_witness(2).unwrap();
        w.sufficiency.queries_sufficient = 2;
        assert!(!w.verify());
    }

    #[test]
    fn subset_enumeration_counts() {
        assert_eq!(subsets(4, 2).count(), 6);
        assert_eq!(subsets(8, 5).count(), 56);
        assert_eq!(subsets(3, 0).collect::<Vec<_>>(), vec![0]);
        assert!(subsets(8, 4).all(|m| m.count_ones() == 4));
    }
}
