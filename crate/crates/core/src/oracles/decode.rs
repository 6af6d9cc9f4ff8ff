use crate::algebra::Poly;
use crate::error::{Error, Result};
use crate::gf2m::FieldElement;
use crate::rs_code::RsCode;

/// A codeword within the requested radius.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decoded {
    pub codeword: Vec<FieldElement>,
    pub message: Poly,
    pub distance: usize,
    /// Zero-based positions where the codeword differs from the target.
    pub error_support: Vec<usize>,
}

impl Decoded {
    fn new(code: &RsCode, y: &[FieldElement], message: Poly) -> Self {
        let codeword = code.encode(&message).expect("message degree below k");
        let error_support: Vec<usize> = (0..y.len()).filter(|&i| codeword[i] != y[i]).collect();
        Decoded {
            distance: error_support.len(),
            codeword,
            message,
            error_support,
        }
    }
}

/// Calls `f` on every `size`-subset of `0..n` in lexicographic order until it returns `false`.
pub(crate) fn for_each_subset(n: usize, size: usize, mut f: impl FnMut(&[usize]) -> bool) {
    if size > n {
        return;
    }
    let mut idx: Vec<usize> = (0..size).collect();
    loop {
        if !f(&idx) {
            return;
        }
        let Some(i) = (0..size).rev().find(|&i| idx[i] != i + n - size) else {
            return;
        };
        idx[i] += 1;
        for j in i + 1..size {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

fn check_target(code: &RsCode, y: &[FieldElement]) -> Result<()> {
    if y.len() != code.n() {
        return Err(Error::DimensionMismatch(format!(
            "target of length {} for a code of length {}",
            y.len(),
            code.n()
        )));
    }
    y.iter().try_for_each(|&v| code.ctx().check(v))
}

/// Maximum-likelihood decoding within `radius` by agreement sets.
///
/// Every `(n - radius)`-subset `S` of positions is visited in lexicographic order; the
/// polynomial through the first `k` points of `S` is kept when it also passes through the rest
/// of `S`. The nearest such codeword is returned (ties go to the earliest `S`), so `None` proves
/// there is no codeword within `radius`.
pub fn ml_decode_bruteforce(
    code: &RsCode,
    y: &[FieldElement],
    radius: usize,
) -> Result<Option<Decoded>> {
    check_target(code, y)?;
    let (n, k) = (code.n(), code.k());
    if radius > n || n - radius < k {
        return Err(Error::RadiusTooLarge { radius, n, k });
    }
    let ctx = code.ctx();
    let pts = code.points();
    let mut best: Option<Decoded> = None;
    let mut failure = None;
    for_each_subset(n, n - radius, |s| {
        let base: Vec<_> = s[..k].iter().map(|&i| (pts[i], y[i])).collect();
        let p = match Poly::interpolate(ctx, &base) {
            Ok(p) => p,
            Err(e) => {
                failure = Some(e);
                return false;
            }
        };
        if s[k..].iter().all(|&i| p.eval(ctx, pts[i]) == y[i]) {
            let d = Decoded::new(code, y, p);
            if best.as_ref().is_none_or(|b| d.distance < b.distance) {
                best = Some(d);
            }
        }
        best.as_ref().is_none_or(|b| b.distance > 0)
    });
    match failure {
        Some(e) => Err(e),
        None => Ok(best),
    }
}

/// Largest `q^k` accepted by [`ml_decode_enumerate`].
pub const ENUMERATION_LIMIT_LOG2: u32 = 24;

/// Maximum-likelihood decoding within `radius` by listing all `q^k` codewords; only for
/// `q^k <= 2^24`. Ties go to the message that is least as a coefficient vector.
pub fn ml_decode_enumerate(
    code: &RsCode,
    y: &[FieldElement],
    radius: usize,
) -> Result<Option<Decoded>> {
    check_target(code, y)?;
    let ctx = code.ctx();
    let (m, k) = (ctx.m(), code.k());
    let bits = (m as u64) * (k as u64);
    if bits > ENUMERATION_LIMIT_LOG2 as u64 {
        return Err(Error::EnumerationTooLarge { m, k });
    }
    let mask = (1u128 << m) - 1;
    let mut best: Option<Decoded> = None;
    for index in 0u128..(1u128 << bits) {
        // coefficient 0 is the most significant digit, so the count runs in lexicographic order
        let coeffs: Vec<FieldElement> = (0..k)
            .map(|i| FieldElement::from_bits(index >> (m as usize * (k - 1 - i)) & mask))
            .collect();
        let d = Decoded::new(code, y, Poly::from_coeffs(coeffs));
        if d.distance <= radius && best.as_ref().is_none_or(|b| d.distance < b.distance) {
            let done = d.distance == 0;
            best = Some(d);
            if done {
                break;
            }
        }
    }
    Ok(best)
}

/// Distance from `y` to the code and whether `y` is a deep hole (distance `ρ = n - k`).
///
/// Decodes at radius `ρ - 1`; if nothing is found, the covering radius forces distance `ρ`.
pub fn classify_deep_hole(code: &RsCode, y: &[FieldElement]) -> Result<(usize, bool)> {
    let rho = code.rho();
    Ok(match ml_decode_bruteforce(code, y, rho - 1)? {
        Some(d) => (d.distance, false),
        None => (rho, true),
    })
}
