//! Reed-Solomon codes `C_q(D, k)` and the generalized-RS scaling that links them to the code
//! whose parity-check matrix is the power matrix `H = [x_j^(i-1)]`.

use std::collections::HashSet;

use crate::algebra::{Matrix, Poly};
use crate::error::{Error, Result};
use crate::gf2m::{FieldContext, FieldElement};

/// `C_q(D, k)`: evaluations of all polynomials of degree below `k` on the ordered set `D`.
///
/// The order of `D` is significant: every vector and matrix indexes positions by it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RsCode {
    ctx: FieldContext,
    points: Vec<FieldElement>,
    k: usize,
}

impl RsCode {
    /// Requires distinct in-field points and `0 < k < n <= q`.
    pub fn new(ctx: FieldContext, points: Vec<FieldElement>, k: usize) -> Result<Self> {
        let n = points.len();
        let fits = ctx.size().is_none_or(|q| (n as u128) <= q);
        if k == 0 || k >= n || !fits {
            return Err(Error::InvalidCodeParameters { k, n, m: ctx.m() });
        }
        let mut seen = HashSet::with_capacity(n);
        for &x in &points {
            ctx.check(x)?;
            if !seen.insert(x) {
                return Err(Error::DuplicateEvaluationPoint(x));
            }
        }
        Ok(RsCode { ctx, points, k })
    }

    pub fn ctx(&self) -> &FieldContext {
        &self.ctx
    }

    pub fn points(&self) -> &[FieldElement] {
        &self.points
    }

    pub fn n(&self) -> usize {
        self.points.len()
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// Covering radius `n - k`.
    pub fn rho(&self) -> usize {
        self.n() - self.k
    }

    fn check_len(&self, v: &[FieldElement]) -> Result<()> {
        if v.len() == self.n() {
            Ok(())
        } else {
            Err(Error::DimensionMismatch(format!(
                "vector of length {} for a code of length {}",
                v.len(),
                self.n()
            )))
        }
    }

    pub fn encode(&self, message: &Poly) -> Result<Vec<FieldElement>> {
        if let Some(degree) = message.degree().filter(|&d| d >= self.k) {
            return Err(Error::MessageTooLong { degree, k: self.k });
        }
        Ok(self.evaluate(message))
    }

    fn evaluate(&self, p: &Poly) -> Vec<FieldElement> {
        self.points.iter().map(|&x| p.eval(&self.ctx, x)).collect()
    }

    /// `k × n`, `g_ij = x_j^(i-1)`.
    pub fn generator_matrix(&self) -> Matrix {
        Matrix::power(&self.ctx, &self.points, self.k)
    }

    /// `(n - k) × n` power matrix; the parity check of the scaled code, not of `C_q(D, k)`.
    pub fn syndrome_matrix(&self) -> Matrix {
        Matrix::power(&self.ctx, &self.points, self.rho())
    }

    /// `φ_j = 1 / D'(x_j)` with `D(X) = ∏ (X - x_j)`, in `O(n^2)`.
    ///
    /// Equals `∏_{β ∉ D} (x_j - β)` because `(X^q - X)' = 1` in characteristic 2.
    pub fn grs_scalers(&self) -> GrsScalers {
        let derivative = Poly::from_roots(&self.ctx, &self.points).derivative();
        let phis = self
            .points
            .iter()
            .map(|&x| {
                self.ctx
                    .inv(derivative.eval(&self.ctx, x))
                    .expect("distinct evaluation points are simple roots")
            })
            .collect();
        GrsScalers { phis }
    }

    /// `k × n` generator of the scaled code, `g'_ij = φ_j x_j^(i-1)`.
    pub fn scaled_generator_matrix(&self, scalers: &GrsScalers) -> Matrix {
        let g = self.generator_matrix();
        Matrix::from_fn(self.k, self.n(), |i, j| {
            self.ctx.mul(scalers.phis[j], g[(i, j)])
        })
    }

    /// `G' · H^T`; all zero exactly when `H` is a parity check of `φ(C_q(D, k))`.
    pub fn scaled_dual_product(&self, scalers: &GrsScalers) -> Result<Matrix> {
        if self.points.iter().any(|x| x.is_zero()) {
            return Err(Error::ZeroInEvaluationSet);
        }
        self.scaled_generator_matrix(scalers)
            .mul(&self.ctx, &self.syndrome_matrix().transpose())
    }

    /// Membership by interpolation through all `n` points.
    pub fn is_codeword(&self, v: &[FieldElement]) -> Result<bool> {
        self.check_len(v)?;
        let points: Vec<_> = self.points.iter().copied().zip(v.iter().copied()).collect();
        Ok(Poly::interpolate(&self.ctx, &points)?.degree_below(self.k))
    }

    /// Membership by the syndrome of the scaled vector: `H · φ(v)^T = 0`.
    pub fn is_codeword_by_syndrome(
        &self,
        v: &[FieldElement],
        scalers: &GrsScalers,
    ) -> Result<bool> {
        let scaled = scalers.apply(&self.ctx, v)?;
        Ok(self
            .syndrome_matrix()
            .mul_vec(&self.ctx, &scaled)?
            .iter()
            .all(|s| s.is_zero()))
    }

    /// The message polynomial of a codeword, if `v` is one.
    pub fn message_of(&self, v: &[FieldElement]) -> Result<Option<Poly>> {
        self.check_len(v)?;
        let points: Vec<_> = self.points.iter().copied().zip(v.iter().copied()).collect();
        let p = Poly::interpolate(&self.ctx, &points)?;
        Ok(p.degree_below(self.k).then_some(p))
    }
}

/// Nonzero column multipliers `φ_1, ..., φ_n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GrsScalers {
    phis: Vec<FieldElement>,
}

impl GrsScalers {
    pub fn new(phis: Vec<FieldElement>) -> Result<Self> {
        if phis.iter().any(|p| p.is_zero()) {
            return Err(Error::ZeroInverse);
        }
        Ok(GrsScalers { phis })
    }

    /// All-ones scalers of length `n`.
    pub fn identity(n: usize) -> Self {
        GrsScalers {
            phis: vec![FieldElement::ONE; n],
        }
    }

    pub fn phis(&self) -> &[FieldElement] {
        &self.phis
    }

    fn check_len(&self, v: &[FieldElement]) -> Result<()> {
        if v.len() == self.phis.len() {
            Ok(())
        } else {
            Err(Error::DimensionMismatch(format!(
                "vector of length {} against {} scalers",
                v.len(),
                self.phis.len()
            )))
        }
    }

    /// `φ(v) = (φ_1 v_1, ..., φ_n v_n)`.
    pub fn apply(&self, ctx: &FieldContext, v: &[FieldElement]) -> Result<Vec<FieldElement>> {
        self.check_len(v)?;
        Ok(v.iter()
            .zip(&self.phis)
            .map(|(&a, &p)| ctx.mul(a, p))
            .collect())
    }

    /// `φ^-1(v) = (v_1 / φ_1, ..., v_n / φ_n)`.
    pub fn apply_inv(&self, ctx: &FieldContext, v: &[FieldElement]) -> Result<Vec<FieldElement>> {
        self.check_len(v)?;
        v.iter()
            .zip(&self.phis)
            .map(|(&a, &p)| ctx.div(a, p))
            .collect()
    }
}

/// Number of differing coordinates.
pub fn hamming_distance(u: &[FieldElement], v: &[FieldElement]) -> Result<usize> {
    if u.len() != v.len() {
        return Err(Error::DimensionMismatch(format!(
            "lengths {} and {} differ",
            u.len(),
            v.len()
        )));
    }
    Ok(u.iter().zip(v).filter(|(a, b)| a != b).count())
}

pub fn weight(v: &[FieldElement]) -> usize {
    v.iter().filter(|x| !x.is_zero()).count()
}
