//! Finite q×q matrix images of the four operator families at α = p/q.
//!
//! With ω = e^{i2π/q}, F is the unitary DFT, C the cyclic shift and D the
//! clock matrix diag(1, ω, …, ω^{q-1}); G(k, y) = diag(cos 2π(y + kj/q)).
//! The position operator maps to ξ₁(x)·D and the rotation by α to C^p, so
//! every family member becomes a q×q matrix depending on (x, θ).

use std::f64::consts::TAU;
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{
    eig_hermitian, eig_unitary, expm_i_hermitian, ComplexMatrix, HermitianMatrix, UnitaryMatrix,
};

/// Reduced fraction p/q with 0 <= p < q (or exactly 0/1).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct RationalAlpha {
    p: u64,
    q: u64,
}

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

impl RationalAlpha {
    pub fn new(p: u64, q: u64) -> Result<Self> {
        if q == 0 {
            return Err(Error::InvalidAlpha("denominator must be positive".into()));
        }
        if p >= q && !(p == 0 && q == 1) {
            return Err(Error::InvalidAlpha(format!("{p}/{q} is not in [0, 1)")));
        }
        if gcd(p, q) != 1 {
            return Err(Error::NotCoprime { p, q });
        }
        Ok(RationalAlpha { p, q })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn dim(&self) -> usize {
        self.q as usize
    }

    pub fn value(&self) -> f64 {
        self.p as f64 / self.q as f64
    }
}

impl fmt::Display for RationalAlpha {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.p, self.q)
    }
}

impl FromStr for RationalAlpha {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let (p, q) = s
            .trim()
            .split_once('/')
            .ok_or_else(|| Error::InvalidAlpha(format!("expected p/q, got `{s}`")))?;
        let parse = |t: &str| {
            t.trim()
                .parse::<u64>()
                .map_err(|_| Error::InvalidAlpha(format!("expected p/q, got `{s}`")))
        };
        RationalAlpha::new(parse(p)?, parse(q)?)
    }
}

impl TryFrom<String> for RationalAlpha {
    type Error = Error;
    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl From<RationalAlpha> for String {
    fn from(a: RationalAlpha) -> String {
        a.to_string()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OperatorKind {
    /// Almost Mathieu (Harper) self-adjoint operator.
    H,
    /// Unitary Harper, exp(-iκH).
    UH,
    /// Kicked Harper.
    UKH,
    /// On-resonance double kicked rotor.
    UORDKR,
}

impl OperatorKind {
    pub const ALL: [OperatorKind; 4] = [
        OperatorKind::H,
        OperatorKind::UH,
        OperatorKind::UKH,
        OperatorKind::UORDKR,
    ];

    pub fn is_unitary(self) -> bool {
        self != OperatorKind::H
    }
}

impl fmt::Display for OperatorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            OperatorKind::H => "h",
            OperatorKind::UH => "uh",
            OperatorKind::UKH => "ukh",
            OperatorKind::UORDKR => "uordkr",
        })
    }
}

impl FromStr for OperatorKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "h" => Ok(OperatorKind::H),
            "uh" => Ok(OperatorKind::UH),
            "ukh" => Ok(OperatorKind::UKH),
            "uordkr" | "ordkr" => Ok(OperatorKind::UORDKR),
            other => Err(Error::InvalidParams(format!(
                "unknown operator kind `{other}`"
            ))),
        }
    }
}

/// Either a fixed phase θ ∈ [0, 1) or the union over all phases.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ThetaScope {
    Fixed(f64),
    Mother,
}

impl fmt::Display for ThetaScope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ThetaScope::Fixed(t) => write!(f, "{t}"),
            ThetaScope::Mother => f.write_str("mother"),
        }
    }
}

impl FromStr for ThetaScope {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        if s.eq_ignore_ascii_case("mother") {
            return Ok(ThetaScope::Mother);
        }
        let t: f64 = s.trim().parse().map_err(|_| {
            Error::InvalidParams(format!(
                "theta must be `mother` or a real number, got `{s}`"
            ))
        })?;
        if !t.is_finite() {
            return Err(Error::InvalidParams("theta must be finite".into()));
        }
        Ok(ThetaScope::Fixed(reduce_mod1(t)))
    }
}

/// Reduces a real number into [0, 1).
pub fn reduce_mod1(t: f64) -> f64 {
    let r = t.rem_euclid(1.0);
    if r >= 1.0 {
        0.0
    } else {
        r
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OperatorParams {
    pub kind: OperatorKind,
    pub kappa: f64,
    pub lambda: f64,
    pub alpha: RationalAlpha,
    pub theta: ThetaScope,
}

impl OperatorParams {
    pub fn new(
        kind: OperatorKind,
        kappa: f64,
        lambda: f64,
        alpha: RationalAlpha,
        theta: ThetaScope,
    ) -> Result<Self> {
        if !kappa.is_finite() || !lambda.is_finite() {
            return Err(Error::InvalidParams(
                "kappa and lambda must be finite".into(),
            ));
        }
        let theta = match theta {
            ThetaScope::Fixed(t) if !t.is_finite() => {
                return Err(Error::InvalidParams("theta must be finite".into()));
            }
            ThetaScope::Fixed(t) => ThetaScope::Fixed(reduce_mod1(t)),
            ThetaScope::Mother => ThetaScope::Mother,
        };
        let kappa = if kind == OperatorKind::H { 0.0 } else { kappa };
        Ok(OperatorParams {
            kind,
            kappa,
            lambda,
            alpha,
            theta,
        })
    }

    /// Same parameters with a different phase scope.
    pub fn with_theta(&self, theta: ThetaScope) -> Result<Self> {
        Self::new(self.kind, self.kappa, self.lambda, self.alpha, theta)
    }

    pub fn with_kind(&self, kind: OperatorKind) -> Result<Self> {
        Self::new(kind, self.kappa, self.lambda, self.alpha, self.theta)
    }

    pub fn q(&self) -> usize {
        self.alpha.dim()
    }

    fn fixed_theta(&self) -> Result<f64> {
        match self.theta {
            ThetaScope::Fixed(t) => Ok(t),
            ThetaScope::Mother => Err(Error::InvalidParams(
                "a single matrix needs a fixed theta; use the two-parameter sweep for mother spectra".into(),
            )),
        }
    }

    fn expect_kind(&self, kind: OperatorKind) -> Result<()> {
        if self.kind == kind {
            Ok(())
        } else {
            Err(Error::InvalidParams(format!(
                "expected kind {kind}, got {}",
                self.kind
            )))
        }
    }
}

/// ω^k for integer k, with the exponent reduced mod q before evaluation.
fn omega_pow(k: i64, q: usize) -> Complex64 {
    let r = k.rem_euclid(q as i64);
    Complex64::from_polar(1.0, TAU * r as f64 / q as f64)
}

/// cos 2π(y + kj/q) with kj reduced mod q.
fn cos_entry(k: i64, j: usize, y: f64, q: usize) -> f64 {
    let r = (k * j as i64).rem_euclid(q as i64);
    (TAU * (y + r as f64 / q as f64)).cos()
}

fn check_dim(q: usize) -> Result<()> {
    if q == 0 {
        Err(Error::InvalidDimension(q))
    } else {
        Ok(())
    }
}

/// F[j][k] = ω^{jk}/√q.
pub fn dft_matrix(q: usize) -> Result<UnitaryMatrix> {
    check_dim(q)?;
    let scale = 1.0 / (q as f64).sqrt();
    let f = ComplexMatrix::from_fn(q, |j, k| omega_pow((j * k) as i64, q) * scale)?;
    Ok(UnitaryMatrix::new_unchecked(f))
}

/// The cyclic shift C (C[j][j+1 mod q] = 1) and clock D = diag(ω^j).
pub fn clock_shift(q: usize) -> Result<(UnitaryMatrix, UnitaryMatrix)> {
    check_dim(q)?;
    let one = Complex64::new(1.0, 0.0);
    let zero = Complex64::new(0.0, 0.0);
    let c = ComplexMatrix::from_fn(q, |i, j| if j == (i + 1) % q { one } else { zero })?;
    let d = ComplexMatrix::from_fn(q, |i, j| if i == j { omega_pow(i as i64, q) } else { zero })?;
    Ok((
        UnitaryMatrix::new_unchecked(c),
        UnitaryMatrix::new_unchecked(d),
    ))
}

/// G(k, y) = diag(cos 2π(y + kj/q)), j = 0..q-1.
pub fn cos_diag(k: i64, y: f64, q: usize) -> Result<HermitianMatrix> {
    check_dim(q)?;
    if !y.is_finite() {
        return Err(Error::NonFinite);
    }
    let diag: Vec<Complex64> = (0..q)
        .map(|j| Complex64::new(cos_entry(k, j, y, q), 0.0))
        .collect();
    Ok(HermitianMatrix::symmetrized(ComplexMatrix::from_diagonal(
        &diag,
    )?))
}

/// Entries c[d] of the circulant F diag(g) F⁻¹, whose (j, k) entry is c[(j - k) mod q].
fn circulant_of_diag(g: &[Complex64]) -> Vec<Complex64> {
    let q = g.len();
    let inv_q = 1.0 / q as f64;
    (0..q)
        .map(|d| {
            g.iter()
                .enumerate()
                .map(|(m, &gm)| gm * omega_pow((d * m) as i64, q))
                .sum::<Complex64>()
                * inv_q
        })
        .collect()
}

/// 2·G(1, x) + 2λ·F G(p, θ) F⁻¹.
pub fn harper_hermitian(params: &OperatorParams, x: f64) -> Result<HermitianMatrix> {
    params.expect_kind(OperatorKind::H)?;
    let theta = params.fixed_theta()?;
    harper_matrix(params, x, theta)
}

fn harper_matrix(params: &OperatorParams, x: f64, theta: f64) -> Result<HermitianMatrix> {
    let q = params.q();
    let p = params.alpha.p() as i64;
    let x = reduce_mod1(x);
    let g: Vec<Complex64> = (0..q)
        .map(|j| Complex64::new(cos_entry(p, j, theta, q), 0.0))
        .collect();
    let circ = circulant_of_diag(&g);
    let lam2 = 2.0 * params.lambda;
    let m = ComplexMatrix::from_fn(q, |j, k| {
        let mut v = circ[(j + q - k) % q] * lam2;
        if j == k {
            v += 2.0 * cos_entry(1, j, x, q);
        }
        v
    })?;
    Ok(HermitianMatrix::symmetrized(m))
}

/// exp[-i2κ(G(1,x) + λ F G(p,θ) F⁻¹)] = exp(-iκ · harper_hermitian).
pub fn unitary_harper(params: &OperatorParams, x: f64) -> Result<UnitaryMatrix> {
    params.expect_kind(OperatorKind::UH)?;
    let theta = params.fixed_theta()?;
    expm_i_hermitian(&harper_matrix(params, x, theta)?, params.kappa)
}

/// exp[-i2κ G(1,x)] · F · exp[-i2κλ G(p,θ)] · F⁻¹, assembled from the two
/// diagonal exponentials and the circulant middle factor.
pub fn kicked_harper(params: &OperatorParams, x: f64) -> Result<UnitaryMatrix> {
    params.expect_kind(OperatorKind::UKH)?;
    let theta = params.fixed_theta()?;
    kicked_harper_matrix(params, x, theta)
}

fn kicked_harper_matrix(params: &OperatorParams, x: f64, theta: f64) -> Result<UnitaryMatrix> {
    let q = params.q();
    let p = params.alpha.p() as i64;
    let x = reduce_mod1(x);
    let kappa2 = 2.0 * params.kappa;
    let left: Vec<Complex64> = (0..q)
        .map(|j| Complex64::from_polar(1.0, -kappa2 * cos_entry(1, j, x, q)))
        .collect();
    let inner: Vec<Complex64> = (0..q)
        .map(|j| Complex64::from_polar(1.0, -kappa2 * params.lambda * cos_entry(p, j, theta, q)))
        .collect();
    let circ = circulant_of_diag(&inner);
    let m = ComplexMatrix::from_fn(q, |j, k| left[j] * circ[(j + q - k) % q])?;
    Ok(UnitaryMatrix::new_unchecked(m))
}

/// Analytic eigensystem of D C^p: eigenvalues ν_k = μ ω^{k-1}, eigenvector
/// matrix E (columns ordered by k) and φ with μ = e^{i2πφ}.
#[derive(Debug, Clone, PartialEq)]
pub struct DcpEigensystem {
    pub values: Vec<Complex64>,
    pub vectors: UnitaryMatrix,
    pub phi: f64,
}

pub fn dcp_eigensystem(alpha: RationalAlpha) -> Result<DcpEigensystem> {
    let p = alpha.p();
    let q = alpha.q();
    if gcd(p, q) != 1 {
        return Err(Error::NotCoprime { p, q });
    }
    let qu = q as usize;
    let odd = (p * (q - 1)) % 2 == 1;
    let phi = if odd { 1.0 / (2.0 * q as f64) } else { 0.0 };
    let values: Vec<Complex64> = (0..qu)
        .map(|k| Complex64::from_polar(1.0, TAU * (phi + k as f64 / q as f64)))
        .collect();

    // (D C^p u)_j = ω^j u_{j+p} = ν u_j, so u_{mp} = ν^m ω^{-p m(m-1)/2} u_0.
    // With ν = μ ω^k the phase of u_{mp} is 2π[(mk - p m(m-1)/2) mod q]/q + m·2πφ.
    let norm = 1.0 / (q as f64).sqrt();
    let mut e = ComplexMatrix::zeros(qu)?;
    let qi = q as i128;
    for k in 0..qu {
        for m in 0..qu {
            let mi = m as i128;
            let tri = (mi * (mi - 1) / 2).rem_euclid(qi);
            let expo = (mi * k as i128 - (p as i128) * tri).rem_euclid(qi);
            let angle = TAU * (expo as f64 / q as f64) + TAU * phi * m as f64;
            let row = ((m as u64 * p) % q) as usize;
            e[(row, k)] = Complex64::from_polar(norm, angle);
        }
    }
    Ok(DcpEigensystem {
        values,
        vectors: UnitaryMatrix::new_unchecked(e),
        phi,
    })
}

/// exp[-i2κ G(1,x)] · E · diag(e^{-i2κλ cos 2π(β + j/q)}) · E⁻¹ with β = x + θ + α/2 + φ.
pub fn ordkr(params: &OperatorParams, x: f64) -> Result<UnitaryMatrix> {
    params.expect_kind(OperatorKind::UORDKR)?;
    let theta = params.fixed_theta()?;
    let dcp = dcp_eigensystem(params.alpha)?;
    ordkr_matrix(params, &dcp, x, theta)
}

fn ordkr_matrix(
    params: &OperatorParams,
    dcp: &DcpEigensystem,
    x: f64,
    theta: f64,
) -> Result<UnitaryMatrix> {
    let q = params.q();
    let x = reduce_mod1(x);
    let kappa2 = 2.0 * params.kappa;
    let beta = x + theta + params.alpha.value() / 2.0 + dcp.phi;
    let left: Vec<Complex64> = (0..q)
        .map(|j| Complex64::from_polar(1.0, -kappa2 * cos_entry(1, j, x, q)))
        .collect();
    let mid: Vec<Complex64> = (0..q)
        .map(|j| {
            Complex64::from_polar(
                1.0,
                -kappa2 * params.lambda * (TAU * (beta + j as f64 / q as f64)).cos(),
            )
        })
        .collect();
    let e = dcp.vectors.matrix();
    let mut m = ComplexMatrix::zeros(q)?;
    for j in 0..q {
        let ej = e.row(j);
        for k in 0..q {
            let ek = e.row(k);
            let s: Complex64 = (0..q).map(|n| ej[n] * mid[n] * ek[n].conj()).sum();
            m[(j, k)] = left[j] * s;
        }
    }
    Ok(UnitaryMatrix::new_unchecked(m))
}

/// A matrix of either role, as produced for one (x, θ) sample.
#[derive(Debug, Clone)]
pub enum OperatorMatrix {
    Hermitian(HermitianMatrix),
    Unitary(UnitaryMatrix),
}

impl OperatorMatrix {
    /// Sorted eigenvalues (real values carry a zero imaginary part).
    pub fn eigenvalues(&self) -> Result<Vec<Complex64>> {
        Ok(match self {
            OperatorMatrix::Hermitian(h) => eig_hermitian(h, false)?.values,
            OperatorMatrix::Unitary(u) => eig_unitary(u, false)?.values,
        })
    }
}

/// Builds the matrix for any (x, θ) with per-family precomputation done once.
#[derive(Debug, Clone)]
pub struct MatrixBuilder {
    params: OperatorParams,
    dcp: Option<DcpEigensystem>,
}

impl MatrixBuilder {
    pub fn new(params: &OperatorParams) -> Result<Self> {
        let dcp = if params.kind == OperatorKind::UORDKR {
            Some(dcp_eigensystem(params.alpha)?)
        } else {
            None
        };
        Ok(MatrixBuilder {
            params: *params,
            dcp,
        })
    }

    pub fn build(&self, x: f64, theta: f64) -> Result<OperatorMatrix> {
        let theta = reduce_mod1(theta);
        let p = &self.params;
        Ok(match p.kind {
            OperatorKind::H => OperatorMatrix::Hermitian(harper_matrix(p, x, theta)?),
            OperatorKind::UH => {
                OperatorMatrix::Unitary(expm_i_hermitian(&harper_matrix(p, x, theta)?, p.kappa)?)
            }
            OperatorKind::UKH => OperatorMatrix::Unitary(kicked_harper_matrix(p, x, theta)?),
            OperatorKind::UORDKR => {
                let dcp = self.dcp.as_ref().expect("built for ordkr");
                OperatorMatrix::Unitary(ordkr_matrix(p, dcp, x, theta)?)
            }
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_1_SQRT_2, PI, SQRT_2};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn alpha(p: u64, q: u64) -> RationalAlpha {
        RationalAlpha::new(p, q).unwrap()
    }

    fn params(
        kind: OperatorKind,
        kappa: f64,
        lambda: f64,
        a: RationalAlpha,
        theta: f64,
    ) -> OperatorParams {
        OperatorParams::new(kind, kappa, lambda, a, ThetaScope::Fixed(theta)).unwrap()
    }

    fn max_diff(a: &ComplexMatrix, b: &ComplexMatrix) -> f64 {
        a.sub(b).unwrap().max_abs()
    }

    #[test]
    fn rational_alpha_validation() {
        assert!(RationalAlpha::new(0, 1).is_ok());
        assert!(matches!(
            RationalAlpha::new(4, 6),
            Err(Error::NotCoprime { p: 4, q: 6 })
        ));
        assert!(RationalAlpha::new(3, 2).is_err());
        assert!(RationalAlpha::new(1, 0).is_err());
        assert!(RationalAlpha::new(0, 5).is_err());
        assert_eq!("8/13".parse::<RationalAlpha>().unwrap(), alpha(8, 13));
        assert!("0.5".parse::<RationalAlpha>().is_err());
    }

    #[test]
    fn theta_parsing_and_reduction() {
        assert_eq!("mother".parse::<ThetaScope>().unwrap(), ThetaScope::Mother);
        assert_eq!(
            "1.25".parse::<ThetaScope>().unwrap(),
            ThetaScope::Fixed(0.25)
        );
        assert_eq!(
            "-0.25".parse::<ThetaScope>().unwrap(),
            ThetaScope::Fixed(0.75)
        );
        assert!("nan".parse::<ThetaScope>().is_err());
    }

    #[test]
    fn dft_small_cases() {
        let f1 = dft_matrix(1).unwrap();
        assert!((f1.matrix()[(0, 0)] - c(1.0, 0.0)).norm() < 1e-15);
        let f2 = dft_matrix(2).unwrap();
        let expected = ComplexMatrix::from_real_rows(&[
            vec![FRAC_1_SQRT_2, FRAC_1_SQRT_2],
            vec![FRAC_1_SQRT_2, -FRAC_1_SQRT_2],
        ])
        .unwrap();
        assert!(max_diff(f2.matrix(), &expected) < 1e-15);
        let f4 = dft_matrix(4).unwrap();
        assert!(f4.matrix().unitary_deviation() < 1e-14);
        assert!(matches!(dft_matrix(0), Err(Error::InvalidDimension(0))));
    }

    #[test]
    fn clock_shift_q2() {
        let (cm, dm) = clock_shift(2).unwrap();
        let c_exp = ComplexMatrix::from_real_rows(&[vec![0.0, 1.0], vec![1.0, 0.0]]).unwrap();
        let d_exp = ComplexMatrix::from_real_rows(&[vec![1.0, 0.0], vec![0.0, -1.0]]).unwrap();
        assert!(max_diff(cm.matrix(), &c_exp) < 1e-15);
        assert!(max_diff(dm.matrix(), &d_exp) < 1e-15);
    }

    #[test]
    fn cf_equals_fd_q3() {
        let (cm, dm) = clock_shift(3).unwrap();
        let f = dft_matrix(3).unwrap();
        let cf = cm.matrix() * f.matrix();
        let fd = f.matrix() * dm.matrix();
        assert!(max_diff(&cf, &fd) < 1e-14);
    }

    #[test]
    fn frame_relation_q5_p2() {
        let (cm, dm) = clock_shift(5).unwrap();
        let c2 = cm.matrix().pow(2);
        let lhs = &c2 * dm.matrix();
        let rhs = (dm.matrix() * &c2).scale(Complex64::from_polar(1.0, 4.0 * PI / 5.0));
        assert!(max_diff(&lhs, &rhs) < 1e-12);
    }

    #[test]
    fn cos_diag_cases() {
        let g = cos_diag(1, 0.0, 2).unwrap();
        assert!((g.matrix()[(0, 0)].re - 1.0).abs() < 1e-15);
        assert!((g.matrix()[(1, 1)].re + 1.0).abs() < 1e-15);
        let z = cos_diag(0, 0.25, 4).unwrap();
        assert!(z.matrix().max_abs() < 1e-15);
    }

    #[test]
    fn shift_conjugates_cos_diag() {
        let (cm, _) = clock_shift(3).unwrap();
        let g = cos_diag(1, 0.1, 3).unwrap();
        let lhs = &(cm.matrix() * g.matrix()) * cm.inverse().matrix();
        let rhs = cos_diag(1, 0.1 + 1.0 / 3.0, 3).unwrap();
        assert!(max_diff(&lhs, rhs.matrix()) < 1e-14);
    }

    #[test]
    fn harper_q2_hand_value() {
        let p = params(OperatorKind::H, 0.0, 1.0, alpha(1, 2), 0.0);
        let h = harper_hermitian(&p, 0.0).unwrap();
        let expected = ComplexMatrix::from_real_rows(&[vec![2.0, 2.0], vec![2.0, -2.0]]).unwrap();
        assert!(max_diff(h.matrix(), &expected) < 1e-14);
        let ev = eig_hermitian(&h, false).unwrap().real_values();
        assert!((ev[0] + 2.0 * SQRT_2).abs() < 1e-13 && (ev[1] - 2.0 * SQRT_2).abs() < 1e-13);
    }

    #[test]
    fn harper_lambda_zero_is_diagonal() {
        let p = params(OperatorKind::H, 0.0, 0.0, alpha(3, 7), 0.3);
        let h = harper_hermitian(&p, 0.11).unwrap();
        let g = cos_diag(1, 0.11, 7).unwrap().matrix().scale(c(2.0, 0.0));
        assert!(max_diff(h.matrix(), &g) < 1e-15);
    }

    #[test]
    fn harper_matches_literal_product() {
        let a = alpha(3, 7);
        let p = params(OperatorKind::H, 0.0, 0.7, a, 0.21);
        let h = harper_hermitian(&p, 0.05).unwrap();
        let f = dft_matrix(7).unwrap();
        let g1 = cos_diag(1, 0.05, 7).unwrap();
        let gp = cos_diag(3, 0.21, 7).unwrap();
        let lit = g1
            .matrix()
            .scale(c(2.0, 0.0))
            .add(&(&(f.matrix() * gp.matrix()) * f.inverse().matrix()).scale(c(1.4, 0.0)))
            .unwrap();
        assert!(max_diff(h.matrix(), &lit) < 1e-14);
    }

    #[test]
    fn wrong_kind_or_mother_rejected() {
        let p = params(OperatorKind::UKH, 1.0, 1.0, alpha(1, 2), 0.0);
        assert!(harper_hermitian(&p, 0.0).is_err());
        let m = OperatorParams::new(OperatorKind::UKH, 1.0, 1.0, alpha(1, 2), ThetaScope::Mother)
            .unwrap();
        assert!(kicked_harper(&m, 0.0).is_err());
    }

    #[test]
    fn kappa_zero_gives_identity() {
        let a = alpha(2, 5);
        let id = ComplexMatrix::identity(5).unwrap();
        let uh = unitary_harper(&params(OperatorKind::UH, 0.0, 1.0, a, 0.1), 0.2).unwrap();
        let ukh = kicked_harper(&params(OperatorKind::UKH, 0.0, 1.0, a, 0.1), 0.2).unwrap();
        let ord = ordkr(&params(OperatorKind::UORDKR, 0.0, 1.0, a, 0.1), 0.2).unwrap();
        for u in [uh, ukh, ord] {
            assert!(max_diff(u.matrix(), &id) < 1e-13);
        }
    }

    #[test]
    fn unitary_harper_q2_eigenvalues() {
        let u = unitary_harper(&params(OperatorKind::UH, 1.0, 1.0, alpha(1, 2), 0.0), 0.0).unwrap();
        let e = eig_unitary(&u, false).unwrap();
        assert!((e.values[0] - Complex64::from_polar(1.0, -2.0 * SQRT_2)).norm() < 1e-12);
        assert!((e.values[1] - Complex64::from_polar(1.0, 2.0 * SQRT_2)).norm() < 1e-12);
    }

    #[test]
    fn kicked_harper_one_by_one() {
        let (kappa, lambda, x, theta) = (0.7, 1.3, 0.2, 0.4);
        let u = kicked_harper(
            &params(OperatorKind::UKH, kappa, lambda, alpha(0, 1), theta),
            x,
        )
        .unwrap();
        let expected = Complex64::from_polar(1.0, -2.0 * kappa * (TAU * x).cos())
            * Complex64::from_polar(1.0, -2.0 * kappa * lambda * (TAU * theta).cos());
        assert!((u.matrix()[(0, 0)] - expected).norm() < 1e-15);
    }

    #[test]
    fn kicked_harper_q2_hand_product() {
        let u = kicked_harper(&params(OperatorKind::UKH, 0.5, 1.0, alpha(1, 2), 0.0), 0.0).unwrap();
        let d = ComplexMatrix::from_diagonal(&[
            Complex64::from_polar(1.0, -1.0),
            Complex64::from_polar(1.0, 1.0),
        ])
        .unwrap();
        let s = FRAC_1_SQRT_2;
        let f = ComplexMatrix::from_real_rows(&[vec![s, s], vec![s, -s]]).unwrap();
        let hand = &(&(&d * &f) * &d) * &f;
        assert!(max_diff(u.matrix(), &hand) < 1e-14);
    }

    #[test]
    fn dcp_q2_and_q3() {
        let e2 = dcp_eigensystem(alpha(1, 2)).unwrap();
        assert!((e2.values[0] - c(0.0, 1.0)).norm() < 1e-15);
        assert!((e2.values[1] - c(0.0, -1.0)).norm() < 1e-15);
        assert!((e2.phi - 0.25).abs() < 1e-15);
        let e3 = dcp_eigensystem(alpha(1, 3)).unwrap();
        assert_eq!(e3.phi, 0.0);
        for (k, v) in e3.values.iter().enumerate() {
            assert!((v - Complex64::from_polar(1.0, TAU * k as f64 / 3.0)).norm() < 1e-15);
        }
    }

    #[test]
    fn ordkr_lambda_zero_is_diagonal() {
        let q = 5;
        let (kappa, x) = (0.8, 0.07);
        let u = ordkr(
            &params(OperatorKind::UORDKR, kappa, 0.0, alpha(2, 5), 0.3),
            x,
        )
        .unwrap();
        let diag: Vec<Complex64> = (0..q)
            .map(|j| {
                Complex64::from_polar(1.0, -2.0 * kappa * (TAU * (x + j as f64 / q as f64)).cos())
            })
            .collect();
        assert!(max_diff(u.matrix(), &ComplexMatrix::from_diagonal(&diag).unwrap()) < 1e-13);
    }

    #[test]
    fn builder_matches_direct_constructors() {
        let a = alpha(3, 8);
        for kind in OperatorKind::ALL {
            let p = params(kind, 0.6, 1.1, a, 0.17);
            let b = MatrixBuilder::new(&p).unwrap();
            let built = b.build(0.03, 0.17).unwrap();
            let direct = match kind {
                OperatorKind::H => harper_hermitian(&p, 0.03).unwrap().into_inner(),
                OperatorKind::UH => unitary_harper(&p, 0.03).unwrap().into_inner(),
                OperatorKind::UKH => kicked_harper(&p, 0.03).unwrap().into_inner(),
                OperatorKind::UORDKR => ordkr(&p, 0.03).unwrap().into_inner(),
            };
            let m = match built {
                OperatorMatrix::Hermitian(h) => h.into_inner(),
                OperatorMatrix::Unitary(u) => u.into_inner(),
            };
            assert!(max_diff(&m, &direct) < 1e-15, "{kind}");
        }
    }
}
