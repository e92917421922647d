//! Dense complex linear algebra for registers of at most four qubits.
//!
//! Qubit 0 is the leftmost tensor factor, i.e. the most significant bit of a
//! basis index, so `|j_0 j_1 ... j_{n-1}>` has index `sum j_k 2^(n-1-k)`.

use std::f64::consts::{FRAC_1_SQRT_2, PI, TAU};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64 as C64;

use crate::error::{invalid, Result};

/// Largest register the crate works with.
pub const MAX_QUBITS: usize = 4;

/// Entrywise tolerance for unitarity, hermiticity and normalization checks.
pub const LINALG_TOL: f64 = 1e-12;

const ZERO: C64 = C64::new(0.0, 0.0);
const ONE: C64 = C64::new(1.0, 0.0);
const I: C64 = C64::new(0.0, 1.0);

/// Reduce an angle into `[0, 2π)`.
pub fn normalize_angle(x: f64) -> f64 {
    let r = x.rem_euclid(TAU);
    // rem_euclid can round up to exactly TAU for tiny negative inputs
    if r >= TAU {
        0.0
    } else {
        r
    }
}

/// Index of the basis ket `|bits[0] bits[1] ...>`.
pub fn basis_index(bits: &[usize]) -> usize {
    bits.iter().fold(0, |acc, &b| (acc << 1) | (b & 1))
}

/// Bits of basis index `index` in an `n`-qubit register, qubit 0 first.
pub fn index_bits(index: usize, n: usize) -> Vec<usize> {
    (0..n).map(|k| (index >> (n - 1 - k)) & 1).collect()
}

/// A complex column vector.
#[derive(Clone, Debug, PartialEq)]
pub struct CVector {
    entries: Vec<C64>,
}

impl CVector {
    pub fn new(entries: Vec<C64>) -> Self {
        Self { entries }
    }

    pub fn zeros(dim: usize) -> Self {
        Self { entries: vec![ZERO; dim] }
    }

    /// Computational basis state `|index>` of dimension `dim`.
    pub fn basis(dim: usize, index: usize) -> Self {
        let mut v = Self::zeros(dim);
        v.entries[index] = ONE;
        v
    }

    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[C64] {
        &self.entries
    }

    pub fn entries_mut(&mut self) -> &mut [C64] {
        &mut self.entries
    }

    pub fn norm_sqr(&self) -> f64 {
        self.entries.iter().map(|z| z.norm_sqr()).sum()
    }

    pub fn is_normalized(&self) -> bool {
        (self.norm_sqr() - 1.0).abs() <= LINALG_TOL
    }

    /// `<self|other>`, conjugate-linear in `self`.
    pub fn inner(&self, other: &CVector) -> C64 {
        self.entries.iter().zip(&other.entries).map(|(a, b)| a.conj() * b).sum()
    }

    /// Outcome probabilities `|<j|self>|^2` in basis order.
    pub fn probabilities(&self) -> Vec<f64> {
        self.entries.iter().map(|z| z.norm_sqr()).collect()
    }

    pub fn max_abs_diff(&self, other: &CVector) -> f64 {
        assert_eq!(self.dim(), other.dim(), "vector dimension mismatch");
        self.entries.iter().zip(&other.entries).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max)
    }
}

/// A dense complex matrix stored row-major.
#[derive(Clone, PartialEq)]
pub struct CMatrix {
    rows: usize,
    cols: usize,
    data: Vec<C64>,
}

impl fmt::Debug for CMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "CMatrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            write!(f, "  ")?;
            for c in 0..self.cols {
                let z = self[(r, c)];
                write!(f, "{:+.4}{:+.4}i ", z.re, z.im)?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

impl CMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![ZERO; rows * cols] }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim, dim);
        for k in 0..dim {
            m.data[k * dim + k] = ONE;
        }
        m
    }

    /// Build from row-major entries. Panics if the length does not match.
    pub fn from_rows(rows: usize, cols: usize, data: Vec<C64>) -> Self {
        assert_eq!(data.len(), rows * cols, "entry count does not match shape");
        Self { rows, cols, data }
    }

    pub fn from_diagonal(diag: &[f64]) -> Self {
        let n = diag.len();
        let mut m = Self::zeros(n, n);
        for (k, &d) in diag.iter().enumerate() {
            m.data[k * n + k] = C64::new(d, 0.0);
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn data(&self) -> &[C64] {
        &self.data
    }

    pub fn adjoint(&self) -> Self {
        let mut out = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.data[c * self.rows + r] = self.data[r * self.cols + c].conj();
            }
        }
        out
    }

    pub fn transpose(&self) -> Self {
        let mut out = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.data[c * self.rows + r] = self.data[r * self.cols + c];
            }
        }
        out
    }

    pub fn scale(&self, z: C64) -> Self {
        Self { rows: self.rows, cols: self.cols, data: self.data.iter().map(|a| a * z).collect() }
    }

    pub fn apply(&self, v: &CVector) -> CVector {
        assert_eq!(self.cols, v.dim(), "matrix-vector dimension mismatch");
        let out = (0..self.rows)
            .map(|r| self.data[r * self.cols..(r + 1) * self.cols].iter().zip(v.entries()).map(|(a, b)| a * b).sum())
            .collect();
        CVector::new(out)
    }

    /// Kronecker product `self ⊗ other`.
    pub fn kron(&self, other: &CMatrix) -> CMatrix {
        let rows = self.rows * other.rows;
        let cols = self.cols * other.cols;
        let mut out = Self::zeros(rows, cols);
        for r1 in 0..self.rows {
            for c1 in 0..self.cols {
                let a = self[(r1, c1)];
                if a == ZERO {
                    continue;
                }
                for r2 in 0..other.rows {
                    for c2 in 0..other.cols {
                        out.data[(r1 * other.rows + r2) * cols + c1 * other.cols + c2] = a * other[(r2, c2)];
                    }
                }
            }
        }
        out
    }

    pub fn commutator(&self, other: &CMatrix) -> CMatrix {
        &(self * other) - &(other * self)
    }

    pub fn det2(&self) -> C64 {
        assert!(self.rows == 2 && self.cols == 2, "det2 needs a 2x2 matrix");
        self.data[0] * self.data[3] - self.data[1] * self.data[2]
    }

    /// Largest entrywise modulus of `self - other`.
    pub fn max_abs_diff(&self, other: &CMatrix) -> f64 {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "shape mismatch");
        self.data.iter().zip(&other.data).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max)
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn approx_eq(&self, other: &CMatrix, tol: f64) -> bool {
        self.rows == other.rows && self.cols == other.cols && self.max_abs_diff(other) <= tol
    }

    /// Residual of `M†M = I`, or infinity for non-square input.
    pub fn unitarity_residual(&self) -> f64 {
        if self.rows != self.cols {
            return f64::INFINITY;
        }
        (&self.adjoint() * self).max_abs_diff(&Self::identity(self.rows))
    }

    pub fn is_unitary(&self) -> bool {
        self.unitarity_residual() <= LINALG_TOL
    }

    pub fn is_hermitian(&self) -> bool {
        self.rows == self.cols && self.max_abs_diff(&self.adjoint()) <= LINALG_TOL
    }

    /// Diagonal entries, if every off-diagonal entry is exactly zero.
    pub fn as_real_diagonal(&self) -> Option<Vec<f64>> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let mut diag = Vec::with_capacity(n);
        for r in 0..n {
            for c in 0..n {
                let z = self.data[r * n + c];
                if r == c {
                    if z.im != 0.0 {
                        return None;
                    }
                    diag.push(z.re);
                } else if z != ZERO {
                    return None;
                }
            }
        }
        Some(diag)
    }
}

impl std::ops::Index<(usize, usize)> for CMatrix {
    type Output = C64;

    fn index(&self, (r, c): (usize, usize)) -> &C64 {
        &self.data[r * self.cols + c]
    }
}

impl std::ops::IndexMut<(usize, usize)> for CMatrix {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut C64 {
        &mut self.data[r * self.cols + c]
    }
}

impl Mul for &CMatrix {
    type Output = CMatrix;

    fn mul(self, rhs: &CMatrix) -> CMatrix {
        assert_eq!(self.cols, rhs.rows, "matrix product dimension mismatch");
        let mut out = CMatrix::zeros(self.rows, rhs.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.data[r * self.cols + k];
                if a == ZERO {
                    continue;
                }
                for c in 0..rhs.cols {
                    out.data[r * rhs.cols + c] += a * rhs.data[k * rhs.cols + c];
                }
            }
        }
        out
    }
}

impl Add for &CMatrix {
    type Output = CMatrix;

    fn add(self, rhs: &CMatrix) -> CMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "shape mismatch");
        CMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &CMatrix {
    type Output = CMatrix;

    fn sub(self, rhs: &CMatrix) -> CMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "shape mismatch");
        CMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Neg for &CMatrix {
    type Output = CMatrix;

    fn neg(self) -> CMatrix {
        self.scale(-ONE)
    }
}

pub fn pauli_x() -> CMatrix {
    CMatrix::from_rows(2, 2, vec![ZERO, ONE, ONE, ZERO])
}

/// Angles `(θ, α, β)` of a single-player SU(2) strategy.
///
/// `θ` must lie in `[0, π]`; `α` and `β` are reduced into `[0, 2π)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SU2Params {
    theta: f64,
    alpha: f64,
    beta: f64,
}

impl SU2Params {
    pub fn new(theta: f64, alpha: f64, beta: f64) -> Result<Self> {
        if !theta.is_finite() || !alpha.is_finite() || !beta.is_finite() {
            return invalid("SU(2) angles must be finite");
        }
        if !(0.0..=PI).contains(&theta) {
            return invalid(format!("theta = {theta} lies outside [0, pi]"));
        }
        Ok(Self { theta, alpha: normalize_angle(alpha), beta: normalize_angle(beta) })
    }

    pub fn identity() -> Self {
        Self { theta: 0.0, alpha: 0.0, beta: 0.0 }
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    /// Equality of θ and of α, β modulo 2π, within `tol`.
    pub fn approx_eq(&self, other: &SU2Params, tol: f64) -> bool {
        let circ = |a: f64, b: f64| {
            let d = normalize_angle(a - b);
            d.min(TAU - d) <= tol
        };
        (self.theta - other.theta).abs() <= tol && circ(self.alpha, other.alpha) && circ(self.beta, other.beta)
    }
}

impl fmt::Display for SU2Params {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "U({:.6}, {:.6}, {:.6})", self.theta, self.alpha, self.beta)
    }
}

/// `U(θ, α, β) = [[e^{iα}cos(θ/2), i e^{iβ}sin(θ/2)], [i e^{-iβ}sin(θ/2), e^{-iα}cos(θ/2)]]`.
pub fn su2(p: &SU2Params) -> CMatrix {
    let (s, c) = (p.theta / 2.0).sin_cos();
    let ea = C64::from_polar(1.0, p.alpha);
    let eb = C64::from_polar(1.0, p.beta);
    CMatrix::from_rows(2, 2, vec![ea * c, I * eb * s, I * eb.conj() * s, ea.conj() * c])
}

/// Kronecker product of `ms` in order, leftmost factor most significant.
pub fn tensor(ms: &[CMatrix]) -> Result<CMatrix> {
    let (first, rest) = match ms.split_first() {
        Some(split) => split,
        None => return invalid("tensor product of an empty list"),
    };
    Ok(rest.iter().fold(first.clone(), |acc, m| acc.kron(m)))
}

/// `tensor` of `n` copies of `m`.
pub fn tensor_power(m: &CMatrix, n: usize) -> Result<CMatrix> {
    tensor(&vec![m.clone(); n])
}

fn check_register(n: usize) -> Result<()> {
    if n == 0 || n > MAX_QUBITS {
        return invalid(format!("register size {n} outside 1..={MAX_QUBITS}"));
    }
    Ok(())
}

/// The maximally entangling gate `(1^{⊗n} + i σ_x^{⊗n}) / √2`.
pub fn entangler(n: usize) -> Result<CMatrix> {
    check_register(n)?;
    let dim = 1 << n;
    let mut j = CMatrix::zeros(dim, dim);
    let h = C64::new(FRAC_1_SQRT_2, 0.0);
    for k in 0..dim {
        // σ_x^{⊗n} flips every bit: |k> -> |!k>
        j[(k, k)] += h;
        j[(dim - 1 - k, k)] += I * h;
    }
    Ok(j)
}

/// A permutation `η` of qubit positions, stored as `perm[i] = η(i)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QubitPermutation {
    perm: Vec<usize>,
}

impl QubitPermutation {
    pub fn new(perm: Vec<usize>) -> Result<Self> {
        let n = perm.len();
        let mut seen = vec![false; n];
        for &p in &perm {
            if p >= n || seen[p] {
                return invalid(format!("{perm:?} is not a permutation of 0..{n}"));
            }
            seen[p] = true;
        }
        Ok(Self { perm })
    }

    pub fn identity(n: usize) -> Self {
        Self { perm: (0..n).collect() }
    }

    pub fn len(&self) -> usize {
        self.perm.len()
    }

    pub fn is_empty(&self) -> bool {
        self.perm.is_empty()
    }

    pub fn image(&self, i: usize) -> usize {
        self.perm[i]
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.perm
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.perm.len()];
        for (i, &p) in self.perm.iter().enumerate() {
            inv[p] = i;
        }
        Self { perm: inv }
    }

    /// `self ∘ other`, i.e. apply `other` first.
    pub fn compose(&self, other: &QubitPermutation) -> Self {
        assert_eq!(self.len(), other.len(), "permutation length mismatch");
        Self { perm: other.perm.iter().map(|&i| self.perm[i]).collect() }
    }
}

/// The permutation matrix `S_η` with `S_η |j> = |j'>`, `j'_{η(i)} = j_i`.
///
/// Conjugation moves the factor on qubit `i` to qubit `η(i)`:
/// `S_η (⊗ U_i) S_η† = ⊗ U_{η⁻¹(k)}`.
pub fn permutation_operator(q: &QubitPermutation, n: usize) -> Result<CMatrix> {
    check_register(n)?;
    if q.len() != n {
        return invalid(format!("permutation over {} positions for {n} qubits", q.len()));
    }
    let dim = 1 << n;
    let mut s = CMatrix::zeros(dim, dim);
    for j in 0..dim {
        let bits = index_bits(j, n);
        let mut moved = vec![0; n];
        for (i, &b) in bits.iter().enumerate() {
            moved[q.image(i)] = b;
        }
        s[(basis_index(&moved), j)] = ONE;
    }
    Ok(s)
}

/// `<ψ|M|ψ>` for a Hermitian observable `M`.
pub fn expectation(state: &CVector, obs: &CMatrix) -> Result<f64> {
    if obs.rows() != state.dim() || obs.cols() != state.dim() {
        return invalid(format!("observable is {}x{} but state has dimension {}", obs.rows(), obs.cols(), state.dim()));
    }
    if !obs.is_hermitian() {
        return invalid("observable is not Hermitian");
    }
    Ok(state.inner(&obs.apply(state)).re)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_params(rng: &mut impl Rng) -> SU2Params {
        SU2Params::new(rng.gen_range(0.0..=PI), rng.gen_range(0.0..TAU), rng.gen_range(0.0..TAU)).unwrap()
    }

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn su2_identity_and_pi_flip() {
        assert!(su2(&SU2Params::identity()).approx_eq(&CMatrix::identity(2), 1e-15));
        let flip = su2(&SU2Params::new(PI, 0.0, 0.0).unwrap());
        assert!(flip.approx_eq(&pauli_x().scale(I), 1e-15));
    }

    #[test]
    fn su2_is_special_unitary() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..1000 {
            let u = su2(&random_params(&mut rng));
            assert!(u.unitarity_residual() <= 1e-12);
            assert!((u.det2() - ONE).norm() <= 1e-12);
        }
    }

    #[test]
    fn full_flip_is_minus_i_sigma_x() {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        let x = pauli_x().scale(-I);
        for _ in 0..200 {
            let p = random_params(&mut rng);
            let flipped = SU2Params::new(PI - p.theta(), TAU - p.beta(), PI - p.alpha()).unwrap();
            assert!(su2(&flipped).approx_eq(&(&x * &su2(&p)), 1e-12));
        }
    }

    #[test]
    fn angles_are_normalized_and_theta_checked() {
        let p = SU2Params::new(1.0, -PI / 2.0, 5.0 * PI).unwrap();
        assert!((p.alpha() - 1.5 * PI).abs() < 1e-15);
        assert!((p.beta() - PI).abs() < 1e-14);
        assert_eq!(SU2Params::new(0.0, TAU, 0.0).unwrap().alpha(), 0.0);
        assert_eq!(normalize_angle(-1e-18), 0.0);
        assert!(SU2Params::new(-0.1, 0.0, 0.0).is_err());
        assert!(SU2Params::new(PI + 1e-9, 0.0, 0.0).is_err());
        assert!(SU2Params::new(f64::NAN, 0.0, 0.0).is_err());
    }

    #[test]
    fn tensor_basics() {
        let i4 = tensor(&[CMatrix::identity(2), CMatrix::identity(2)]).unwrap();
        assert_eq!(i4, CMatrix::identity(4));
        let xi = tensor(&[pauli_x(), CMatrix::identity(2)]).unwrap();
        assert_eq!(xi.apply(&CVector::basis(4, 0b00)), CVector::basis(4, 0b10));
        assert!(tensor(&[]).is_err());
    }

    #[test]
    fn tensor_is_associative() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..20 {
            let (a, b, cc) =
                (su2(&random_params(&mut rng)), su2(&random_params(&mut rng)), su2(&random_params(&mut rng)));
            let flat = tensor(&[a.clone(), b.clone(), cc.clone()]).unwrap();
            let nested = tensor(&[a, tensor(&[b, cc]).unwrap()]).unwrap();
            assert!(flat.approx_eq(&nested, 1e-15));
        }
    }

    #[test]
    fn entangler_on_ground_state() {
        let j = entangler(2).unwrap();
        let s = FRAC_1_SQRT_2;
        let expected = CVector::new(vec![c(s, 0.0), ZERO, ZERO, c(0.0, s)]);
        assert!(j.apply(&CVector::basis(4, 0)).max_abs_diff(&expected) < 1e-15);
        for n in 1..=4 {
            assert!(entangler(n).unwrap().is_unitary());
        }
        assert!(entangler(0).is_err());
        assert!(entangler(5).is_err());
    }

    #[test]
    fn entangler_commutes_with_outer_flips() {
        let j = entangler(3).unwrap();
        let x = pauli_x();
        let xix = tensor(&[x.clone(), CMatrix::identity(2), x.clone()]).unwrap();
        assert!(j.adjoint().commutator(&xix.scale(-ONE)).max_abs() < 1e-15);
        let xxx = tensor_power(&x, 3).unwrap();
        assert!(j.commutator(&xxx).max_abs() < 1e-15);
    }

    #[test]
    fn three_cycle_matches_outer_product_form() {
        // S = |000><000| + |001><010| + |010><100| + |011><110|
        //   + |100><001| + |101><011| + |110><101| + |111><111|
        let terms = [
            (0b000, 0b000),
            (0b001, 0b010),
            (0b010, 0b100),
            (0b011, 0b110),
            (0b100, 0b001),
            (0b101, 0b011),
            (0b110, 0b101),
            (0b111, 0b111),
        ];
        let mut expected = CMatrix::zeros(8, 8);
        for (ket, bra) in terms {
            expected[(ket, bra)] = ONE;
        }
        let eta = QubitPermutation::new(vec![1, 2, 0]).unwrap();
        assert_eq!(permutation_operator(&eta, 3).unwrap(), expected);
        assert_eq!(permutation_operator(&QubitPermutation::identity(3), 3).unwrap(), CMatrix::identity(8));
    }

    #[test]
    fn permutation_conjugation_reorders_factors() {
        let mut rng = ChaCha8Rng::seed_from_u64(10);
        let eta = QubitPermutation::new(vec![1, 2, 0]).unwrap();
        let inv = eta.inverse();
        let s = permutation_operator(&eta, 3).unwrap();
        for _ in 0..50 {
            let us: Vec<_> = (0..3).map(|_| su2(&random_params(&mut rng))).collect();
            let lhs = &(&s * &tensor(&us).unwrap()) * &s.transpose();
            let reordered: Vec<_> = (0..3).map(|k| us[inv.image(k)].clone()).collect();
            assert!(lhs.approx_eq(&tensor(&reordered).unwrap(), 1e-12));
        }
    }

    #[test]
    fn permutation_operators_compose() {
        let perms = [vec![1, 2, 0], vec![0, 2, 1], vec![2, 1, 0], vec![1, 0, 2]];
        for a in &perms {
            for b in &perms {
                let pa = QubitPermutation::new(a.clone()).unwrap();
                let pb = QubitPermutation::new(b.clone()).unwrap();
                let lhs = permutation_operator(&pa.compose(&pb), 3).unwrap();
                let rhs = &permutation_operator(&pa, 3).unwrap() * &permutation_operator(&pb, 3).unwrap();
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn bad_permutations_rejected() {
        assert!(QubitPermutation::new(vec![0, 0, 1]).is_err());
        assert!(QubitPermutation::new(vec![0, 3, 1]).is_err());
        assert!(permutation_operator(&QubitPermutation::identity(2), 3).is_err());
    }

    #[test]
    fn expectation_cases() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let mut v: Vec<C64> = (0..8).map(|_| c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))).collect();
        let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        v.iter_mut().for_each(|z| *z /= norm);
        let psi = CVector::new(v);
        assert!((expectation(&psi, &CMatrix::identity(8)).unwrap() - 1.0).abs() < 1e-12);

        let diag: Vec<f64> = (0..8).map(|_| rng.gen_range(-5.0..5.0)).collect();
        let direct: f64 = psi.probabilities().iter().zip(&diag).map(|(p, a)| p * a).sum();
        let got = expectation(&psi, &CMatrix::from_diagonal(&diag)).unwrap();
        assert!((got - direct).abs() < 1e-12);

        let m = CMatrix::from_diagonal(&[4.0, 1.0, 3.0, 2.0]);
        assert_eq!(expectation(&CVector::basis(4, 0), &m).unwrap(), 4.0);

        let mut non_herm = CMatrix::zeros(4, 4);
        non_herm[(0, 1)] = ONE;
        assert!(expectation(&CVector::basis(4, 0), &non_herm).is_err());
        assert!(expectation(&CVector::basis(2, 0), &m).is_err());
    }

    #[test]
    fn basis_index_round_trip() {
        for n in 1..=4 {
            for k in 0..(1 << n) {
                assert_eq!(basis_index(&index_bits(k, n)), k);
            }
        }
        assert_eq!(basis_index(&[1, 0, 0]), 4);
    }
}
