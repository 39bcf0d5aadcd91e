//! Dense complex linear algebra for small operators.
//!
//! Everything here is sized for Hilbert spaces of a few qubits: matrices are
//! stored row-major in a flat `Vec` and the Hermitian eigensolver is a cyclic
//! complex Jacobi iteration.

use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Sub};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::DEFAULT_TOL;

pub type C64 = Complex64;

/// Largest supported Hilbert-space dimension (2^10).
pub const MAX_DIM: usize = 1 << 10;

/// Eigenvalues in `[-PSD_CLIP, 0)` are treated as exact zeros.
pub const PSD_CLIP: f64 = 1e-12;

const MAX_JACOBI_SWEEPS: usize = 64;

/// Square complex matrix, row-major.
#[derive(Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "MatrixRepr", into = "MatrixRepr")]
pub struct ComplexMatrix {
    dim: usize,
    data: Vec<C64>,
}

#[derive(Serialize, Deserialize)]
struct MatrixRepr {
    dim: usize,
    data: Vec<[f64; 2]>,
}

impl TryFrom<MatrixRepr> for ComplexMatrix {
    type Error = Error;

    fn try_from(repr: MatrixRepr) -> Result<Self> {
        let entries = repr.data.iter().map(|&[re, im]| C64::new(re, im)).collect();
        ComplexMatrix::from_vec(repr.dim, entries)
    }
}

impl From<ComplexMatrix> for MatrixRepr {
    fn from(m: ComplexMatrix) -> Self {
        MatrixRepr {
            dim: m.dim,
            data: m.data.iter().map(|z| [z.re, z.im]).collect(),
        }
    }
}

fn check_dim(dim: usize) -> Result<()> {
    if dim == 0 || dim > MAX_DIM {
        return Err(Error::BadDimension(format!(
            "dimension must be in 1..={MAX_DIM}, got {dim}"
        )));
    }
    Ok(())
}

impl ComplexMatrix {
    pub fn from_vec(dim: usize, data: Vec<C64>) -> Result<Self> {
        check_dim(dim)?;
        if data.len() != dim * dim {
            return Err(Error::BadDimension(format!(
                "expected {} entries for dim {dim}, got {}",
                dim * dim,
                data.len()
            )));
        }
        Ok(ComplexMatrix { dim, data })
    }

    pub fn from_rows(rows: &[Vec<C64>]) -> Result<Self> {
        let dim = rows.len();
        if rows.iter().any(|r| r.len() != dim) {
            return Err(Error::BadDimension("rows must form a square matrix".into()));
        }
        Self::from_vec(dim, rows.concat())
    }

    /// Real-valued rows, mostly a convenience for fixtures.
    pub fn from_real_rows(rows: &[&[f64]]) -> Result<Self> {
        let rows: Vec<Vec<C64>> = rows
            .iter()
            .map(|r| r.iter().map(|&x| C64::new(x, 0.0)).collect())
            .collect();
        Self::from_rows(&rows)
    }

    pub fn zeros(dim: usize) -> Self {
        ComplexMatrix {
            dim,
            data: vec![C64::new(0.0, 0.0); dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m[(i, i)] = C64::new(1.0, 0.0);
        }
        m
    }

    pub fn from_diag(diag: &[C64]) -> Self {
        let mut m = Self::zeros(diag.len());
        for (i, &d) in diag.iter().enumerate() {
            m[(i, i)] = d;
        }
        m
    }

    pub fn from_real_diag(diag: &[f64]) -> Self {
        let d: Vec<C64> = diag.iter().map(|&x| C64::new(x, 0.0)).collect();
        Self::from_diag(&d)
    }

    /// `|a><b|`
    pub fn outer(a: &[C64], b: &[C64]) -> Self {
        assert_eq!(a.len(), b.len(), "outer product of unequal lengths");
        let dim = a.len();
        let mut data = Vec::with_capacity(dim * dim);
        for ai in a {
            for bj in b {
                data.push(ai * bj.conj());
            }
        }
        ComplexMatrix { dim, data }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn as_slice(&self) -> &[C64] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[C64] {
        &self.data[i * self.dim..(i + 1) * self.dim]
    }

    pub fn diagonal(&self) -> Vec<C64> {
        (0..self.dim).map(|i| self[(i, i)]).collect()
    }

    pub fn adjoint(&self) -> Self {
        let n = self.dim;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for j in 0..n {
                out[(j, i)] = self[(i, j)].conj();
            }
        }
        out
    }

    pub fn trace(&self) -> C64 {
        (0..self.dim).map(|i| self[(i, i)]).sum()
    }

    pub fn scale(&self, s: f64) -> Self {
        ComplexMatrix {
            dim: self.dim,
            data: self.data.iter().map(|z| z * s).collect(),
        }
    }

    pub fn scale_complex(&self, s: C64) -> Self {
        ComplexMatrix {
            dim: self.dim,
            data: self.data.iter().map(|z| z * s).collect(),
        }
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// `A B - B A`
    pub fn commutator(&self, other: &ComplexMatrix) -> ComplexMatrix {
        &(self * other) - &(other * self)
    }

    /// `Tr(A B)` without forming the product.
    pub fn trace_product(&self, other: &ComplexMatrix) -> C64 {
        assert_eq!(self.dim, other.dim, "dimension mismatch");
        let n = self.dim;
        let mut acc = C64::new(0.0, 0.0);
        for i in 0..n {
            for k in 0..n {
                acc += self[(i, k)] * other[(k, i)];
            }
        }
        acc
    }

    pub fn apply(&self, v: &[C64]) -> Vec<C64> {
        assert_eq!(self.dim, v.len(), "dimension mismatch");
        (0..self.dim)
            .map(|i| self.row(i).iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }

    /// Largest entrywise `|A_ij - conj(A_ji)|`.
    pub fn hermitian_deviation(&self) -> f64 {
        let n = self.dim;
        let mut worst = 0.0f64;
        for i in 0..n {
            for j in i..n {
                worst = worst.max((self[(i, j)] - self[(j, i)].conj()).norm());
            }
        }
        worst
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.hermitian_deviation() <= tol
    }

    /// `||U U^dag - I||_F`
    pub fn unitarity_residual(&self) -> f64 {
        let prod = self * &self.adjoint();
        frobenius(&prod, &Self::identity(self.dim))
    }

    pub fn is_unitary(&self, tol: f64) -> bool {
        self.unitarity_residual() <= tol
    }

    /// Kronecker product `self ⊗ other`.
    pub fn kron(&self, other: &ComplexMatrix) -> ComplexMatrix {
        let (a, b) = (self.dim, other.dim);
        let dim = a * b;
        let mut out = Self::zeros(dim);
        for i in 0..a {
            for j in 0..a {
                let s = self[(i, j)];
                for k in 0..b {
                    for l in 0..b {
                        out[(i * b + k, j * b + l)] = s * other[(k, l)];
                    }
                }
            }
        }
        out
    }
}

impl Index<(usize, usize)> for ComplexMatrix {
    type Output = C64;

    fn index(&self, (i, j): (usize, usize)) -> &C64 {
        &self.data[i * self.dim + j]
    }
}

impl IndexMut<(usize, usize)> for ComplexMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut C64 {
        &mut self.data[i * self.dim + j]
    }
}

impl Add for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn add(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch");
        ComplexMatrix {
            dim: self.dim,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn sub(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch");
        ComplexMatrix {
            dim: self.dim,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Mul for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn mul(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch");
        let n = self.dim;
        let mut out = ComplexMatrix::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self[(i, k)];
                if a == C64::new(0.0, 0.0) {
                    continue;
                }
                for j in 0..n {
                    out.data[i * n + j] += a * rhs[(k, j)];
                }
            }
        }
        out
    }
}

impl fmt::Debug for ComplexMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ComplexMatrix({}x{}) [", self.dim, self.dim)?;
        for i in 0..self.dim {
            write!(f, "  ")?;
            for z in self.row(i) {
                write!(f, "{:+.6}{:+.6}i  ", z.re, z.im)?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

fn frobenius(a: &ComplexMatrix, b: &ComplexMatrix) -> f64 {
    a.data
        .iter()
        .zip(&b.data)
        .map(|(x, y)| (x - y).norm_sqr())
        .sum::<f64>()
        .sqrt()
}

/// `||A - B||_F`.
pub fn frobenius_distance(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<f64> {
    if a.dim != b.dim {
        return Err(Error::DimMismatch(a.dim, b.dim));
    }
    Ok(frobenius(a, b))
}

/// State vector. Not required to be normalized; see [`PureState::is_normalized`].
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "StateRepr", into = "StateRepr")]
pub struct PureState {
    amplitudes: Vec<C64>,
}

#[derive(Serialize, Deserialize)]
struct StateRepr {
    dim: usize,
    amplitudes: Vec<[f64; 2]>,
}

impl TryFrom<StateRepr> for PureState {
    type Error = Error;

    fn try_from(repr: StateRepr) -> Result<Self> {
        if repr.amplitudes.len() != repr.dim {
            return Err(Error::BadDimension(format!(
                "dim {} but {} amplitudes",
                repr.dim,
                repr.amplitudes.len()
            )));
        }
        PureState::new(repr.amplitudes.iter().map(|&[re, im]| C64::new(re, im)).collect())
    }
}

impl From<PureState> for StateRepr {
    fn from(s: PureState) -> Self {
        StateRepr {
            dim: s.dim(),
            amplitudes: s.amplitudes.iter().map(|z| [z.re, z.im]).collect(),
        }
    }
}

impl PureState {
    pub fn new(amplitudes: Vec<C64>) -> Result<Self> {
        check_dim(amplitudes.len())?;
        Ok(PureState { amplitudes })
    }

    /// Computational basis state `|x>`.
    pub fn basis(dim: usize, x: usize) -> Result<Self> {
        check_dim(dim)?;
        if x >= dim {
            return Err(Error::BadDimension(format!("basis index {x} out of range for dim {dim}")));
        }
        let mut amps = vec![C64::new(0.0, 0.0); dim];
        amps[x] = C64::new(1.0, 0.0);
        Ok(PureState { amplitudes: amps })
    }

    /// Equal-weight superposition `N^{-1/2} Σ_x |x>`.
    pub fn uniform(dim: usize) -> Result<Self> {
        Self::with_phases(&vec![0.0; dim])
    }

    /// `N^{-1/2} Σ_x e^{iθ_x} |x>`, with `N = phases.len()`.
    pub fn with_phases(phases: &[f64]) -> Result<Self> {
        check_dim(phases.len())?;
        let amp = 1.0 / (phases.len() as f64).sqrt();
        Ok(PureState {
            amplitudes: phases.iter().map(|&t| C64::from_polar(amp, t)).collect(),
        })
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &[C64] {
        &self.amplitudes
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amplitudes.iter().map(|z| z.norm_sqr()).sum()
    }

    pub fn is_normalized(&self, tol: f64) -> bool {
        (self.norm_sqr() - 1.0).abs() <= tol
    }

    pub fn normalized(&self) -> Result<Self> {
        let norm = self.norm_sqr().sqrt();
        if norm == 0.0 || !norm.is_finite() {
            return Err(Error::NotNormalized(norm * norm));
        }
        Ok(PureState {
            amplitudes: self.amplitudes.iter().map(|z| z / norm).collect(),
        })
    }

    /// `<self|other>`
    pub fn inner(&self, other: &PureState) -> C64 {
        self.amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(a, b)| a.conj() * b)
            .sum()
    }

    /// `<ψ|A|ψ>`
    pub fn expectation(&self, op: &ComplexMatrix) -> C64 {
        let applied = op.apply(&self.amplitudes);
        self.amplitudes
            .iter()
            .zip(&applied)
            .map(|(a, b)| a.conj() * b)
            .sum()
    }

    /// `|ψ><ψ|` for the normalized vector.
    pub fn projector(&self) -> Result<DensityOperator> {
        let s = self.normalized()?;
        Ok(DensityOperator(ComplexMatrix::outer(&s.amplitudes, &s.amplitudes)))
    }
}

/// Hermitian, positive semidefinite, unit-trace operator.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct DensityOperator(ComplexMatrix);

impl DensityOperator {
    /// Validates Hermiticity, positivity and trace within `tol`.
    pub fn new(matrix: ComplexMatrix, tol: f64) -> Result<Self> {
        let dev = matrix.hermitian_deviation();
        if dev > tol {
            return Err(Error::NotHermitian(dev));
        }
        let tr = matrix.trace();
        if (tr.re - 1.0).abs() > tol || tr.im.abs() > tol {
            return Err(Error::BadTrace(tr.re));
        }
        let eig = hermitian_eig(&matrix, tol)?;
        let min = clip_psd(eig.eigenvalues[0]);
        if min < -tol {
            return Err(Error::NotPsd(min));
        }
        Ok(DensityOperator(matrix))
    }

    pub(crate) fn from_matrix_unchecked(matrix: ComplexMatrix) -> Self {
        DensityOperator(matrix)
    }

    pub fn maximally_mixed(dim: usize) -> Result<Self> {
        check_dim(dim)?;
        Ok(DensityOperator(ComplexMatrix::identity(dim).scale(1.0 / dim as f64)))
    }

    /// Diagonal state from a probability vector.
    pub fn from_probabilities(probs: &[f64], tol: f64) -> Result<Self> {
        check_dim(probs.len())?;
        Self::new(ComplexMatrix::from_real_diag(probs), tol)
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.0
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.0
    }

    pub fn dim(&self) -> usize {
        self.0.dim
    }

    /// Eigenvalues ascending, with round-off negatives clipped to zero.
    pub fn spectrum(&self) -> Vec<f64> {
        hermitian_eig_unchecked(&self.0)
            .eigenvalues
            .into_iter()
            .map(clip_psd)
            .collect()
    }

    pub fn largest_eigenvalue(&self) -> f64 {
        *self.spectrum().last().expect("dim >= 1")
    }
}

fn clip_psd(x: f64) -> f64 {
    if (-PSD_CLIP..0.0).contains(&x) {
        0.0
    } else {
        x
    }
}

/// Eigenvalues (ascending) and matching orthonormal eigenvectors.
#[derive(Clone, Debug)]
pub struct EigenSystem {
    pub eigenvalues: Vec<f64>,
    pub eigenvectors: Vec<Vec<C64>>,
}

impl EigenSystem {
    /// `Σ_j λ_j v_j v_j^dag`
    pub fn reconstruct(&self) -> ComplexMatrix {
        let n = self.eigenvalues.len();
        let mut out = ComplexMatrix::zeros(n);
        for (lambda, v) in self.eigenvalues.iter().zip(&self.eigenvectors) {
            out = &out + &ComplexMatrix::outer(v, v).scale(*lambda);
        }
        out
    }

    /// Largest `|<v_j|v_k> - δ_jk|`.
    pub fn orthonormality_residual(&self) -> f64 {
        let mut worst = 0.0f64;
        for (j, vj) in self.eigenvectors.iter().enumerate() {
            for (k, vk) in self.eigenvectors.iter().enumerate() {
                let ip: C64 = vj.iter().zip(vk).map(|(a, b)| a.conj() * b).sum();
                let target = if j == k { 1.0 } else { 0.0 };
                worst = worst.max((ip - target).norm());
            }
        }
        worst
    }
}

/// Eigendecomposition of a Hermitian matrix by cyclic complex Jacobi rotations.
pub fn hermitian_eig(a: &ComplexMatrix, tol: f64) -> Result<EigenSystem> {
    let dev = a.hermitian_deviation();
    if dev > tol {
        return Err(Error::NotHermitian(dev));
    }
    Ok(hermitian_eig_unchecked(a))
}

pub(crate) fn hermitian_eig_unchecked(a: &ComplexMatrix) -> EigenSystem {
    let n = a.dim;
    // Work on the Hermitian part so tiny asymmetries do not bias the rotations.
    let mut m = ComplexMatrix::zeros(n);
    for i in 0..n {
        for j in 0..n {
            m[(i, j)] = (a[(i, j)] + a[(j, i)].conj()) * 0.5;
        }
    }
    let mut v = ComplexMatrix::identity(n);
    let scale = m.frobenius_norm().max(f64::MIN_POSITIVE);

    for _ in 0..MAX_JACOBI_SWEEPS {
        let off: f64 = (0..n)
            .flat_map(|p| (p + 1..n).map(move |q| (p, q)))
            .map(|(p, q)| m[(p, q)].norm_sqr())
            .sum();
        if off.sqrt() <= 1e-17 * scale {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                rotate(&mut m, &mut v, p, q);
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| m[(i, i)].re.total_cmp(&m[(j, j)].re));
    let eigenvalues = order.iter().map(|&i| m[(i, i)].re).collect();
    let eigenvectors = order
        .iter()
        .map(|&col| (0..n).map(|row| v[(row, col)]).collect())
        .collect();
    EigenSystem { eigenvalues, eigenvectors }
}

/// One Jacobi step zeroing `m[p][q]`: `m <- J^dag m J`, `v <- v J`.
fn rotate(m: &mut ComplexMatrix, v: &mut ComplexMatrix, p: usize, q: usize) {
    let z = m[(p, q)];
    let r = z.norm();
    if r == 0.0 {
        return;
    }
    let phase = (z / r).conj();
    let (a, b) = (m[(p, p)].re, m[(q, q)].re);
    let tau = (b - a) / (2.0 * r);
    let t = if tau >= 0.0 {
        1.0 / (tau + (1.0 + tau * tau).sqrt())
    } else {
        -1.0 / (-tau + (1.0 + tau * tau).sqrt())
    };
    let c = 1.0 / (1.0 + t * t).sqrt();
    let s = t * c;

    let j_pp = C64::new(c, 0.0);
    let j_pq = C64::new(s, 0.0);
    let j_qp = phase * (-s);
    let j_qq = phase * c;
    let n = m.dim;

    for k in 0..n {
        let (kp, kq) = (m[(k, p)], m[(k, q)]);
        m[(k, p)] = kp * j_pp + kq * j_qp;
        m[(k, q)] = kp * j_pq + kq * j_qq;
    }
    for k in 0..n {
        let (pk, qk) = (m[(p, k)], m[(q, k)]);
        m[(p, k)] = j_pp.conj() * pk + j_qp.conj() * qk;
        m[(q, k)] = j_pq.conj() * pk + j_qq.conj() * qk;
    }
    for k in 0..n {
        let (kp, kq) = (v[(k, p)], v[(k, q)]);
        v[(k, p)] = kp * j_pp + kq * j_qp;
        v[(k, q)] = kp * j_pq + kq * j_qq;
    }
    m[(p, q)] = C64::new(0.0, 0.0);
    m[(q, p)] = C64::new(0.0, 0.0);
    m[(p, p)].im = 0.0;
    m[(q, q)].im = 0.0;
}

/// `||A||_1 = Σ_j |λ_j|` for Hermitian `A`.
pub fn trace_norm(a: &ComplexMatrix) -> Result<f64> {
    let eig = hermitian_eig(a, DEFAULT_TOL)?;
    Ok(eig.eigenvalues.iter().map(|l| l.abs()).sum())
}

/// Projector onto the span of eigenvectors of `rho` with eigenvalue above `tol`.
pub fn support_projector(rho: &DensityOperator, tol: f64) -> ComplexMatrix {
    let eig = hermitian_eig_unchecked(rho.matrix());
    let mut p = ComplexMatrix::zeros(rho.dim());
    for (lambda, v) in eig.eigenvalues.iter().zip(&eig.eigenvectors) {
        if *lambda > tol {
            p = &p + &ComplexMatrix::outer(v, v);
        }
    }
    p
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sampling;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn eig_of_diagonal() {
        let a = ComplexMatrix::from_real_diag(&[1.0, -1.0]);
        let eig = hermitian_eig(&a, 1e-12).unwrap();
        assert_eq!(eig.eigenvalues, vec![-1.0, 1.0]);
        assert!((eig.eigenvectors[0][1].norm() - 1.0).abs() < 1e-15);
        assert!((eig.eigenvectors[1][0].norm() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn eig_of_rank_one_projector() {
        let a = ComplexMatrix::from_real_rows(&[&[0.5, 0.5], &[0.5, 0.5]]).unwrap();
        let eig = hermitian_eig(&a, 1e-12).unwrap();
        assert!(eig.eigenvalues[0].abs() < 1e-15);
        assert!((eig.eigenvalues[1] - 1.0).abs() < 1e-15);
        let v = &eig.eigenvectors[1];
        assert!(((v[0] * v[1].conj()).re - 0.5).abs() < 1e-15);
    }

    #[test]
    fn eig_reconstructs_random_hermitian() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..20 {
            let g = sampling::gaussian_matrix(4, &mut rng);
            let h = &g + &g.adjoint();
            let eig = hermitian_eig(&h, 1e-12).unwrap();
            assert!(frobenius(&eig.reconstruct(), &h) <= 1e-10);
            assert!(eig.orthonormality_residual() <= 1e-12);
            assert!(eig.eigenvalues.windows(2).all(|w| w[0] <= w[1]));
        }
    }

    #[test]
    fn eig_handles_complex_offdiagonal() {
        // Pauli Y
        let y = ComplexMatrix::from_rows(&[vec![c(0.0, 0.0), c(0.0, -1.0)], vec![c(0.0, 1.0), c(0.0, 0.0)]])
            .unwrap();
        let eig = hermitian_eig(&y, 1e-12).unwrap();
        assert!((eig.eigenvalues[0] + 1.0).abs() < 1e-15);
        assert!((eig.eigenvalues[1] - 1.0).abs() < 1e-15);
        assert!(frobenius(&eig.reconstruct(), &y) < 1e-14);
    }

    #[test]
    fn eig_rejects_non_hermitian() {
        let a = ComplexMatrix::from_real_rows(&[&[0.0, 1.0], &[0.0, 0.0]]).unwrap();
        assert!(matches!(hermitian_eig(&a, 1e-9), Err(Error::NotHermitian(_))));
        assert!(matches!(trace_norm(&a), Err(Error::NotHermitian(_))));
    }

    #[test]
    fn trace_norm_examples() {
        assert_eq!(trace_norm(&ComplexMatrix::zeros(3)).unwrap(), 0.0);
        let d = ComplexMatrix::from_real_diag(&[0.5, -0.5]);
        assert!((trace_norm(&d).unwrap() - 1.0).abs() < 1e-15);
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let rho = sampling::random_mixed_state(4, &mut rng);
        assert!((trace_norm(rho.matrix()).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn support_projector_examples() {
        let pure = PureState::basis(2, 0).unwrap().projector().unwrap();
        let p = support_projector(&pure, 1e-9);
        assert!(frobenius(&p, pure.matrix()) < 1e-14);

        let mixed = DensityOperator::maximally_mixed(4).unwrap();
        let p = support_projector(&mixed, 1e-9);
        assert!(frobenius(&p, &ComplexMatrix::identity(4)) < 1e-14);

        let rho = DensityOperator::from_probabilities(&[2.0 / 3.0, 1.0 / 3.0, 0.0, 0.0], 1e-12).unwrap();
        let p = support_projector(&rho, 1e-9);
        assert!(frobenius(&p, &ComplexMatrix::from_real_diag(&[1.0, 1.0, 0.0, 0.0])) < 1e-14);
    }

    #[test]
    fn frobenius_distance_examples() {
        let a = ComplexMatrix::from_real_rows(&[&[1.0, 2.0], &[3.0, 4.0]]).unwrap();
        assert_eq!(frobenius_distance(&a, &a).unwrap(), 0.0);
        let i2 = ComplexMatrix::identity(2);
        let sqrt2 = 2f64.sqrt();
        assert!((frobenius_distance(&i2, &ComplexMatrix::zeros(2)).unwrap() - sqrt2).abs() < 1e-15);
        let d = frobenius_distance(&ComplexMatrix::from_real_diag(&[1.0, 0.0]), &ComplexMatrix::from_real_diag(&[0.0, 1.0]))
            .unwrap();
        assert!((d - sqrt2).abs() < 1e-15);
        assert_eq!(
            frobenius_distance(&i2, &ComplexMatrix::identity(3)),
            Err(Error::DimMismatch(2, 3))
        );
    }

    #[test]
    fn density_operator_validation() {
        let not_psd = ComplexMatrix::from_real_diag(&[1.5, -0.5]);
        assert!(matches!(DensityOperator::new(not_psd, 1e-9), Err(Error::NotPsd(_))));
        let bad_trace = ComplexMatrix::from_real_diag(&[0.5, 0.4]);
        assert!(matches!(DensityOperator::new(bad_trace, 1e-9), Err(Error::BadTrace(_))));
        let skew = ComplexMatrix::from_real_rows(&[&[0.5, 0.1], &[0.0, 0.5]]).unwrap();
        assert!(matches!(DensityOperator::new(skew, 1e-9), Err(Error::NotHermitian(_))));
        // round-off negative eigenvalue is clipped
        let nearly = ComplexMatrix::from_real_diag(&[1.0 + 1e-13, -1e-13]);
        assert!(DensityOperator::new(nearly, 1e-9).is_ok());
    }

    #[test]
    fn matrix_json_layout() {
        let m = ComplexMatrix::from_rows(&[vec![c(1.0, 0.0), c(0.0, 2.0)], vec![c(0.0, -2.0), c(3.0, 0.0)]]).unwrap();
        let json = serde_json::to_string(&m).unwrap();
        assert_eq!(json, r#"{"dim":2,"data":[[1.0,0.0],[0.0,2.0],[0.0,-2.0],[3.0,0.0]]}"#);
        let back: ComplexMatrix = serde_json::from_str(&json).unwrap();
        assert_eq!(back, m);
        assert!(serde_json::from_str::<ComplexMatrix>(r#"{"dim":2,"data":[[1.0,0.0]]}"#).is_err());

        let s = PureState::basis(2, 1).unwrap();
        assert_eq!(serde_json::to_string(&s).unwrap(), r#"{"dim":2,"amplitudes":[[0.0,0.0],[1.0,0.0]]}"#);
        assert!(serde_json::from_str::<PureState>(r#"{"dim":3,"amplitudes":[[1.0,0.0]]}"#).is_err());
    }

    #[test]
    fn kron_of_identities() {
        let k = ComplexMatrix::identity(2).kron(&ComplexMatrix::identity(4));
        assert_eq!(k, ComplexMatrix::identity(8));
    }
}
