use std::fmt;

use crate::error::{Error, Result};
use crate::gf2m::{FieldContext, FieldElement};

/// Dense polynomial over GF(2^m); `coeffs[i]` is the coefficient of `X^i`.
///
/// The highest stored coefficient is always nonzero, so the zero polynomial has no coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    coeffs: Vec<FieldElement>,
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(&self.coeffs).finish()
    }
}

impl Poly {
    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn constant(c: FieldElement) -> Self {
        Self::from_coeffs(vec![c])
    }

    /// Trims trailing zero coefficients.
    pub fn from_coeffs(mut coeffs: Vec<FieldElement>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn coeffs(&self) -> &[FieldElement] {
        &self.coeffs
    }

    /// Coefficient of `X^i` (zero past the degree).
    pub fn coeff(&self, i: usize) -> FieldElement {
        self.coeffs.get(i).copied().unwrap_or(FieldElement::ZERO)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// True when the degree is below `bound` (the zero polynomial always qualifies).
    pub fn degree_below(&self, bound: usize) -> bool {
        self.coeffs.len() <= bound
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last() == Some(&FieldElement::ONE)
    }

    /// `∏ (X - r)` by incremental multiplication; the coefficients are the elementary symmetric
    /// functions of the roots.
    pub fn from_roots(ctx: &FieldContext, roots: &[FieldElement]) -> Self {
        let mut c = Vec::with_capacity(roots.len() + 1);
        c.push(FieldElement::ONE);
        for &r in roots {
            c.push(FieldElement::ZERO);
            for i in (1..c.len()).rev() {
                c[i] = c[i - 1] + ctx.mul(c[i], r);
            }
            c[0] = ctx.mul(c[0], r);
        }
        Self::from_coeffs(c)
    }

    /// Horner evaluation.
    pub fn eval(&self, ctx: &FieldContext, x: FieldElement) -> FieldElement {
        self.coeffs
            .iter()
            .rev()
            .fold(FieldElement::ZERO, |acc, &c| ctx.mul(acc, x) + c)
    }

    /// Formal derivative in characteristic 2: only odd-degree terms survive,
    /// `(Σ p_i X^i)' = Σ p_(2i+1) X^(2i)`.
    pub fn derivative(&self) -> Self {
        let c = (0..self.coeffs.len().saturating_sub(1))
            .map(|i| {
                if i % 2 == 0 {
                    self.coeffs[i + 1]
                } else {
                    FieldElement::ZERO
                }
            })
            .collect();
        Self::from_coeffs(c)
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::from_coeffs((0..n).map(|i| self.coeff(i) + other.coeff(i)).collect())
    }

    pub fn mul(&self, ctx: &FieldContext, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut c = vec![FieldElement::ZERO; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in other.coeffs.iter().enumerate() {
                c[i + j] += ctx.mul(a, b);
            }
        }
        Self::from_coeffs(c)
    }

    pub fn scale(&self, ctx: &FieldContext, s: FieldElement) -> Poly {
        Self::from_coeffs(self.coeffs.iter().map(|&c| ctx.mul(c, s)).collect())
    }

    /// The unique polynomial of degree below `points.len()` through every `(x, y)`.
    ///
    /// Barycentric form: with `L = ∏ (X - x_i)` and `w_i = 1 / ∏_{j≠i} (x_i - x_j)`, the
    /// interpolant is `Σ y_i w_i L / (X - x_i)`.
    pub fn interpolate(
        ctx: &FieldContext,
        points: &[(FieldElement, FieldElement)],
    ) -> Result<Poly> {
        let n = points.len();
        if n == 0 {
            return Ok(Poly::zero());
        }
        let xs: Vec<FieldElement> = points.iter().map(|p| p.0).collect();
        let full = Poly::from_roots(ctx, &xs);
        let mut acc = vec![FieldElement::ZERO; n];
        let mut quotient = vec![FieldElement::ZERO; n];
        for (i, &(xi, yi)) in points.iter().enumerate() {
            let mut denom = FieldElement::ONE;
            for (j, &xj) in xs.iter().enumerate() {
                if i != j {
                    let d = xi - xj;
                    if d.is_zero() {
                        return Err(Error::DuplicateAbscissa(xi));
                    }
                    denom = ctx.mul(denom, d);
                }
            }
            if yi.is_zero() {
                continue;
            }
            let scale = ctx.mul(yi, ctx.inv(denom)?);
            // synthetic division of L by (X - x_i)
            let l = full.coeffs();
            let mut carry = FieldElement::ZERO;
            for k in (0..n).rev() {
                carry = l[k + 1] + ctx.mul(carry, xi);
                quotient[k] = carry;
            }
            for k in 0..n {
                acc[k] += ctx.mul(quotient[k], scale);
            }
        }
        Ok(Self::from_coeffs(acc))
    }
}
