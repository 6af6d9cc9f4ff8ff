use crate::algebra::Matrix;
use crate::error::{Error, Result};
use crate::gf2m::{FieldContext, FieldElement};
use crate::reduction::syndrome_target;
use crate::rs_code::RsCode;

/// The `(w+1) × (w+1)` matrix whose first `w` columns are `(1, x, ..., x^w)^T` for `x` in `xs`
/// and whose last column is `(0, ..., 0, 1, γ)^T`.
pub fn matching_matrix(ctx: &FieldContext, xs: &[FieldElement], gamma: FieldElement) -> Matrix {
    let w = xs.len();
    let power = Matrix::power(ctx, xs, w + 1);
    let last = syndrome_target(w, gamma);
    Matrix::from_fn(
        w + 1,
        w + 1,
        |i, j| if j < w { power[(i, j)] } else { last[i] },
    )
}

/// `(γ + Σ xs) · ∏_{a<b} (x_a + x_b)`, the determinant of [`matching_matrix`].
pub fn det_closed_form(
    ctx: &FieldContext,
    xs: &[FieldElement],
    gamma: FieldElement,
) -> FieldElement {
    let mut det = gamma + xs.iter().copied().sum::<FieldElement>();
    for (a, &xa) in xs.iter().enumerate() {
        for &xb in &xs[a + 1..] {
            det = ctx.mul(det, xa + xb);
        }
    }
    det
}

/// Largest field order for [`scalers_by_definition`].
pub const DEFINITION_MAX_Q_LOG2: u32 = 20;

/// `φ_j = ∏_{β ∈ F_q \ D} (x_j - β)`, by walking the whole field.
pub fn scalers_by_definition(code: &RsCode) -> Result<Vec<FieldElement>> {
    let ctx = code.ctx();
    if ctx.m() > DEFINITION_MAX_Q_LOG2 {
        return Err(Error::BudgetExceeded {
            what: format!("direct product over GF(2^{})", ctx.m()),
        });
    }
    let q = 1u128 << ctx.m();
    let mut in_d = vec![false; q as usize];
    for x in code.points() {
        in_d[x.bits() as usize] = true;
    }
    Ok(code
        .points()
        .iter()
        .map(|&x| {
            (0..q)
                .filter(|&b| !in_d[b as usize])
                .fold(FieldElement::ONE, |acc, b| {
                    ctx.mul(acc, x - FieldElement::from_bits(b))
                })
        })
        .collect())
}
