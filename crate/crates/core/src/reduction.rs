//! Conversions from THREE-DIMENSIONAL MATCHING to maximum-likelihood Reed-Solomon decoding.
//!
//! [`convert_std`] produces an instance `{m = 3t, D, k = |T| - (t+1), w = t, y}` whose code
//! depends on `T`; [`convert_prep`] produces one whose code `(m, D, k, w)` depends only on `t`
//! and whose target alone carries `T`. In both, `y` is zero outside its first `w + 1` positions
//! and `y_j = z_j / φ_j` there, where `z` solves `H z^T = (0, ..., 0, 1, γ)^T`.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::algebra::Matrix;
use crate::error::{Error, Result};
use crate::gf2m::{build_field, FieldContext, FieldElement, MAX_DEGREE};
use crate::rs_code::{GrsScalers, RsCode};

/// An ordered triple over `{1, ..., t}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(from = "[usize; 3]", into = "[usize; 3]")]
pub struct Triple {
    pub a: usize,
    pub b: usize,
    pub c: usize,
}

impl Triple {
    pub const fn new(a: usize, b: usize, c: usize) -> Self {
        Triple { a, b, c }
    }

    fn in_range(&self, t: usize) -> bool {
        [self.a, self.b, self.c]
            .iter()
            .all(|&v| (1..=t).contains(&v))
    }

    /// Differs from `other` in all three positions.
    pub fn disjoint(&self, other: &Triple) -> bool {
        self.a != other.a && self.b != other.b && self.c != other.c
    }

    /// Zero-based position in the lexicographic enumeration of `{1..t}^3`.
    pub fn universe_index(&self, t: usize) -> usize {
        ((self.a - 1) * t + (self.b - 1)) * t + (self.c - 1)
    }
}

impl From<[usize; 3]> for Triple {
    fn from([a, b, c]: [usize; 3]) -> Self {
        Triple { a, b, c }
    }
}

impl From<Triple> for [usize; 3] {
    fn from(t: Triple) -> Self {
        [t.a, t.b, t.c]
    }
}

impl fmt::Display for Triple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.a, self.b, self.c)
    }
}

/// All `t^3` triples in lexicographic order.
pub fn universe(t: usize) -> Vec<Triple> {
    let mut out = Vec::with_capacity(t * t * t);
    for a in 1..=t {
        for b in 1..=t {
            for c in 1..=t {
                out.push(Triple::new(a, b, c));
            }
        }
    }
    out
}

/// A 3-DM instance `{t, T}`; triples are distinct and kept sorted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ThreeDmInstance {
    t: usize,
    triples: Vec<Triple>,
}

impl ThreeDmInstance {
    /// Sorts the triples; rejects out-of-range and repeated ones.
    pub fn new(t: usize, triples: Vec<Triple>) -> Result<Self> {
        if t == 0 {
            return Err(Error::ZeroT);
        }
        let mut seen = BTreeSet::new();
        for tr in &triples {
            if !tr.in_range(t) {
                return Err(Error::TripleOutOfRange {
                    a: tr.a,
                    b: tr.b,
                    c: tr.c,
                    t,
                });
            }
            if !seen.insert(*tr) {
                return Err(Error::DuplicateTriple {
                    a: tr.a,
                    b: tr.b,
                    c: tr.c,
                });
            }
        }
        Ok(ThreeDmInstance {
            t,
            triples: seen.into_iter().collect(),
        })
    }

    pub fn t(&self) -> usize {
        self.t
    }

    pub fn triples(&self) -> &[Triple] {
        &self.triples
    }

    pub fn len(&self) -> usize {
        self.triples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.triples.is_empty()
    }

    /// `χ_j = 1` iff the `j`-th triple of the lexicographic universe is in `T`.
    pub fn characteristic_vector(&self) -> Vec<bool> {
        let mut chi = vec![false; self.t.pow(3)];
        for tr in &self.triples {
            chi[tr.universe_index(self.t)] = true;
        }
        chi
    }
}

/// Which conversion produced an instance.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    /// Code depends on `T`.
    Std,
    /// Code depends only on `t` (decoding with preprocessing).
    Prep,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Std => "std",
            Mode::Prep => "prep",
        })
    }
}

/// One decoding question: is there a codeword of `code` within distance `w` of `target`?
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MldRsInstance {
    code: RsCode,
    w: usize,
    target: Vec<FieldElement>,
}

impl MldRsInstance {
    pub fn new(code: RsCode, w: usize, target: Vec<FieldElement>) -> Result<Self> {
        if target.len() != code.n() {
            return Err(Error::DimensionMismatch(format!(
                "target of length {} for a code of length {}",
                target.len(),
                code.n()
            )));
        }
        for &y in &target {
            code.ctx().check(y)?;
        }
        Ok(MldRsInstance { code, w, target })
    }

    pub fn code(&self) -> &RsCode {
        &self.code
    }

    pub fn ctx(&self) -> &FieldContext {
        self.code.ctx()
    }

    pub fn w(&self) -> usize {
        self.w
    }

    pub fn target(&self) -> &[FieldElement] {
        &self.target
    }
}

/// Dense binary matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BitMatrix {
    rows: usize,
    cols: usize,
    bits: Vec<bool>,
}

impl BitMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        BitMatrix {
            rows,
            cols,
            bits: vec![false; rows * cols],
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        self.bits[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: bool) {
        self.bits[i * self.cols + j] = v;
    }

    /// Column `j` packed as a field element (row `i` = bit `i`); needs `rows <= 128`.
    pub fn column_bits(&self, j: usize) -> FieldElement {
        assert!(self.rows <= 128);
        let bits = (0..self.rows)
            .filter(|&i| self.get(i, j))
            .fold(0u128, |acc, i| acc | (1u128 << i));
        FieldElement::from_bits(bits)
    }

    /// Rows as `0`/`1` strings.
    pub fn row_strings(&self) -> Vec<String> {
        (0..self.rows)
            .map(|i| {
                (0..self.cols)
                    .map(|j| if self.get(i, j) { '1' } else { '0' })
                    .collect()
            })
            .collect()
    }

    pub fn from_row_strings(rows: &[String]) -> Result<Self> {
        let cols = rows.first().map_or(0, String::len);
        let mut m = BitMatrix::zeros(rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            if r.len() != cols {
                return Err(Error::Parse("ragged binary matrix".into()));
            }
            for (j, ch) in r.chars().enumerate() {
                match ch {
                    '0' => {}
                    '1' => m.set(i, j, true),
                    _ => return Err(Error::Parse(format!("bad binary digit {ch:?}"))),
                }
            }
        }
        Ok(m)
    }
}

/// Intermediates kept for certification.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReductionTrace {
    pub mode: Mode,
    pub gamma: FieldElement,
    /// `z_1, ..., z_(w+1)`.
    pub z: Vec<FieldElement>,
    pub scalers: GrsScalers,
    /// `(w+1) × n` power matrix.
    pub syndrome_matrix: Matrix,
    /// Prep mode only.
    pub w_matrix: Option<BitMatrix>,
    /// Prep mode only.
    pub chi: Option<Vec<bool>>,
}

/// `m, k, w, n` of a conversion.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Parameters {
    pub m: u32,
    pub k: usize,
    pub w: usize,
    pub n: usize,
}

pub fn std_parameters(t: usize, size: usize) -> Result<Parameters> {
    let m = 3 * t as u64;
    if m > MAX_DEGREE as u64 {
        return Err(Error::TTooLarge { t, m });
    }
    if size <= t + 1 {
        return Err(Error::InstanceTooSmall { t, size });
    }
    Ok(Parameters {
        m: m as u32,
        k: size - (t + 1),
        w: t,
        n: size,
    })
}

pub fn prep_parameters(t: usize) -> Result<Parameters> {
    if t == 0 {
        return Err(Error::ZeroT);
    }
    let t3 = (t as u64).checked_pow(3).unwrap_or(u64::MAX);
    let m = t3.saturating_add(t as u64).saturating_mul(3);
    if m > MAX_DEGREE as u64 {
        return Err(Error::TTooLarge { t, m });
    }
    let t3 = t3 as usize;
    Ok(Parameters {
        m: m as u32,
        k: 3 * t3 - (t + 1),
        w: t3 + t,
        n: 4 * t3,
    })
}

/// `(a, b, c) ↦ α^(a-1) + α^(t+b-1) + α^(2t+c-1)`.
pub fn encode_triple(ctx: &FieldContext, t: usize, triple: Triple) -> Result<FieldElement> {
    let required = 3 * t;
    if (ctx.m() as usize) < required {
        return Err(Error::FieldMismatch {
            m: ctx.m(),
            required: required as u32,
            t,
        });
    }
    if !triple.in_range(t) {
        return Err(Error::TripleOutOfRange {
            a: triple.a,
            b: triple.b,
            c: triple.c,
            t,
        });
    }
    Ok(triple_bits(t, triple))
}

fn triple_bits(t: usize, tr: Triple) -> FieldElement {
    FieldElement::basis((tr.a - 1) as u32)
        + FieldElement::basis((t + tr.b - 1) as u32)
        + FieldElement::basis((2 * t + tr.c - 1) as u32)
}

/// `Σ_{i<m} α^i`, the all-ones coordinate vector.
pub fn all_ones(m: u32) -> FieldElement {
    FieldElement::from_bits(crate::gf2m::mersenne(m))
}

/// `z_j = (γ + Σ_{i≠j} x_i) / ∏_{i≠j} (x_j + x_i)`: the unique solution of
/// `power_matrix(xs, w+1) · z^T = (0, ..., 0, 1, γ)^T`.
pub fn target_coefficients(
    ctx: &FieldContext,
    xs: &[FieldElement],
    gamma: FieldElement,
) -> Result<Vec<FieldElement>> {
    let total: FieldElement = xs.iter().copied().sum();
    xs.iter()
        .enumerate()
        .map(|(j, &xj)| {
            let numerator = gamma + total - xj;
            let mut denominator = FieldElement::ONE;
            for (i, &xi) in xs.iter().enumerate() {
                if i != j {
                    let d = xj - xi;
                    if d.is_zero() {
                        return Err(Error::DuplicateEvaluationPoint(xj));
                    }
                    denominator = ctx.mul(denominator, d);
                }
            }
            ctx.div(numerator, denominator)
        })
        .collect()
}

/// `(0, ..., 0, 1, γ)` of length `w + 1`.
pub fn syndrome_target(w: usize, gamma: FieldElement) -> Vec<FieldElement> {
    let mut s = vec![FieldElement::ZERO; w + 1];
    if w >= 1 {
        s[w - 1] = FieldElement::ONE;
    }
    s[w] = gamma;
    s
}

/// Shared Step C: `z` from the first `w + 1` points, then `y = φ^-1(z, 0, ..., 0)`.
fn finish(
    ctx: FieldContext,
    points: Vec<FieldElement>,
    params: Parameters,
    gamma: FieldElement,
    mode: Mode,
) -> Result<(MldRsInstance, ReductionTrace)> {
    let code = RsCode::new(ctx.clone(), points, params.k)?;
    let z = target_coefficients(&ctx, &code.points()[..params.w + 1], gamma)?;
    let scalers = code.grs_scalers();
    let mut padded = z.clone();
    padded.resize(params.n, FieldElement::ZERO);
    let target = scalers.apply_inv(&ctx, &padded)?;
    let syndrome_matrix = code.syndrome_matrix();
    let instance = MldRsInstance::new(code, params.w, target)?;
    Ok((
        instance,
        ReductionTrace {
            mode,
            gamma,
            z,
            scalers,
            syndrome_matrix,
            w_matrix: None,
            chi: None,
        },
    ))
}

/// The plain conversion: `m = 3t`, `k = |T| - (t+1)`, `w = t`, `D` = encoded triples in
/// sorted order, `γ` = all ones.
pub fn convert_std(inst: &ThreeDmInstance) -> Result<(MldRsInstance, ReductionTrace)> {
    let t = inst.t();
    let params = std_parameters(t, inst.len())?;
    let ctx = build_field(params.m)?;
    let points = inst
        .triples()
        .iter()
        .map(|&tr| encode_triple(&ctx, t, tr))
        .collect::<Result<Vec<_>>>()?;
    let gamma = all_ones(params.m);
    finish(ctx, points, params, gamma, Mode::Std)
}

/// Evaluation point `x_j` (`1 <= j <= 4t^3`) of the preprocessing code.
pub fn encode_point_prep(
    ctx: &FieldContext,
    t: usize,
    j: usize,
    ordered: &[Triple],
) -> Result<FieldElement> {
    let params = prep_parameters(t)?;
    if ctx.m() != params.m {
        return Err(Error::FieldMismatch {
            m: ctx.m(),
            required: params.m,
            t,
        });
    }
    let t3 = t.pow(3);
    if ordered.len() != t3 {
        return Err(Error::DimensionMismatch(format!(
            "{} ordered triples, expected {t3}",
            ordered.len()
        )));
    }
    if !(1..=4 * t3).contains(&j) {
        return Err(Error::IndexOutOfRange {
            index: j,
            max: 4 * t3,
        });
    }
    let base = 3 * t;
    let bit = |offset: usize| FieldElement::basis((base + offset - 1) as u32);
    Ok(if j <= t3 {
        triple_bits(t, ordered[j - 1]) + bit(j)
    } else if j <= 2 * t3 {
        bit(j - t3) + bit(j) + bit(j + t3)
    } else if j <= 3 * t3 {
        bit(j - t3) + bit(j)
    } else {
        bit(j - t3)
    })
}

/// Target syndrome element with bit layout `(1^(3t), χ, χ, 1^(t^3))`.
pub fn gamma_prep(ctx: &FieldContext, t: usize, chi: &[bool]) -> Result<FieldElement> {
    let params = prep_parameters(t)?;
    if ctx.m() != params.m {
        return Err(Error::FieldMismatch {
            m: ctx.m(),
            required: params.m,
            t,
        });
    }
    let t3 = t.pow(3);
    if chi.len() != t3 {
        return Err(Error::ChiLength {
            got: chi.len(),
            expected: t3,
        });
    }
    let mut bits = crate::gf2m::mersenne(3 * t as u32);
    for (j, &c) in chi.iter().enumerate() {
        if c {
            bits |= 1u128 << (3 * t + j);
            bits |= 1u128 << (3 * t + t3 + j);
        }
    }
    bits |= crate::gf2m::mersenne(t3 as u32) << (3 * t + 2 * t3);
    Ok(FieldElement::from_bits(bits))
}

/// The `3(t^3+t) × 4t^3` block matrix
/// `[[U, 0, 0, 0], [I, I, 0, 0], [0, I, I, 0], [0, I, I, I]]`, where column `j` of `U` holds the
/// triple-encoding bits of the `j`-th ordered triple.
pub fn build_w_matrix(t: usize, ordered: &[Triple]) -> BitMatrix {
    let t3 = t.pow(3);
    let mut w = BitMatrix::zeros(3 * t + 3 * t3, 4 * t3);
    for (j, tr) in ordered.iter().enumerate() {
        w.set(tr.a - 1, j, true);
        w.set(t + tr.b - 1, j, true);
        w.set(2 * t + tr.c - 1, j, true);
    }
    let r0 = 3 * t;
    // identity blocks: (row block, column block), zero-based
    for (rb, cb) in [(0, 0), (0, 1), (1, 1), (1, 2), (2, 1), (2, 2), (2, 3)] {
        for i in 0..t3 {
            w.set(r0 + rb * t3 + i, cb * t3 + i, true);
        }
    }
    w
}

/// The preprocessing conversion: `m = 3(t^3+t)`, `w = t^3 + t`, `k = 3t^3 - (t+1)`,
/// `n = 4t^3`; the code depends only on `t`.
pub fn convert_prep(inst: &ThreeDmInstance) -> Result<(MldRsInstance, ReductionTrace)> {
    let t = inst.t();
    let params = prep_parameters(t)?;
    let ctx = build_field(params.m)?;
    let ordered = universe(t);
    let points = (1..=params.n)
        .map(|j| encode_point_prep(&ctx, t, j, &ordered))
        .collect::<Result<Vec<_>>>()?;
    let chi = inst.characteristic_vector();
    let gamma = gamma_prep(&ctx, t, &chi)?;
    let (instance, mut trace) = finish(ctx, points, params, gamma, Mode::Prep)?;
    trace.w_matrix = Some(build_w_matrix(t, &ordered));
    trace.chi = Some(chi);
    Ok((instance, trace))
}

pub fn convert(inst: &ThreeDmInstance, mode: Mode) -> Result<(MldRsInstance, ReductionTrace)> {
    match mode {
        Mode::Std => convert_std(inst),
        Mode::Prep => convert_prep(inst),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tr(a: usize, b: usize, c: usize) -> Triple {
        Triple::new(a, b, c)
    }

    #[test]
    fn triple_encoding_examples() {
        let f = build_field(6).unwrap();
        let e = |b| FieldElement::from_bits(b);
        assert_eq!(encode_triple(&f, 2, tr(1, 1, 1)).unwrap(), e(0x15));
        assert_eq!(encode_triple(&f, 2, tr(2, 2, 2)).unwrap(), e(0x2a));
        assert_eq!(encode_triple(&f, 2, tr(1, 2, 1)).unwrap(), e(0x19));
        assert!(matches!(
            encode_triple(&f, 2, tr(3, 1, 1)),
            Err(Error::TripleOutOfRange { .. })
        ));
        let small = build_field(5).unwrap();
        assert!(matches!(
            encode_triple(&small, 2, tr(1, 1, 1)),
            Err(Error::FieldMismatch { .. })
        ));
    }

    #[test]
    fn instance_validation() {
        assert_eq!(ThreeDmInstance::new(0, vec![]), Err(Error::ZeroT));
        assert!(matches!(
            ThreeDmInstance::new(2, vec![tr(1, 1, 1), tr(1, 1, 1)]),
            Err(Error::DuplicateTriple { .. })
        ));
        let inst = ThreeDmInstance::new(2, vec![tr(2, 2, 2), tr(1, 1, 1)]).unwrap();
        assert_eq!(inst.triples(), &[tr(1, 1, 1), tr(2, 2, 2)]);
        assert_eq!(
            inst.characteristic_vector(),
            vec![true, false, false, false, false, false, false, true]
        );
    }

    #[test]
    fn std_parameters_examples() {
        let inst = ThreeDmInstance::new(
            2,
            vec![
                tr(1, 1, 1),
                tr(2, 2, 2),
                tr(1, 2, 1),
                tr(2, 1, 2),
                tr(1, 1, 2),
            ],
        )
        .unwrap();
        let (mld, trace) = convert_std(&inst).unwrap();
        assert_eq!(mld.ctx().m(), 6);
        assert_eq!((mld.code().k(), mld.w(), mld.code().n()), (2, 2, 5));
        assert_eq!(trace.gamma, FieldElement::from_bits(0x3f));
        assert_eq!(mld.code().generator_matrix().rows(), 2);
        assert_eq!(trace.syndrome_matrix.rows(), 3);
        assert!(mld.target()[3..].iter().all(|y| y.is_zero()));

        let small = ThreeDmInstance::new(2, vec![tr(1, 1, 1), tr(2, 2, 2), tr(1, 2, 1)]).unwrap();
        assert_eq!(
            convert_std(&small).unwrap_err(),
            Error::InstanceTooSmall { t: 2, size: 3 }
        );
    }

    #[test]
    fn prep_parameters_examples() {
        assert_eq!(
            prep_parameters(2).unwrap(),
            Parameters {
                m: 30,
                k: 21,
                w: 10,
                n: 32
            }
        );
        assert_eq!(
            prep_parameters(1).unwrap(),
            Parameters {
                m: 6,
                k: 1,
                w: 2,
                n: 4
            }
        );
        assert_eq!(prep_parameters(3).unwrap().m, 90);
        assert!(matches!(prep_parameters(4), Err(Error::TTooLarge { .. })));
    }

    #[test]
    fn prep_point_examples() {
        let f = build_field(30).unwrap();
        let u = universe(2);
        let bits = |v: &[u32]| FieldElement::from_bits(v.iter().fold(0, |a, &b| a | 1u128 << b));
        assert_eq!(
            encode_point_prep(&f, 2, 1, &u).unwrap(),
            bits(&[0, 2, 4, 6])
        );
        assert_eq!(encode_point_prep(&f, 2, 9, &u).unwrap(), bits(&[6, 14, 22]));
        assert_eq!(encode_point_prep(&f, 2, 25, &u).unwrap(), bits(&[22]));
        assert!(matches!(
            encode_point_prep(&f, 2, 33, &u),
            Err(Error::IndexOutOfRange { index: 33, max: 32 })
        ));
        assert!(matches!(
            encode_point_prep(&f, 2, 0, &u),
            Err(Error::IndexOutOfRange { .. })
        ));
    }

    #[test]
    fn gamma_prep_examples() {
        let f = build_field(30).unwrap();
        assert_eq!(
            gamma_prep(&f, 2, &[true; 8]).unwrap(),
            FieldElement::from_bits(0x3fff_ffff)
        );
        assert_eq!(
            gamma_prep(&f, 2, &[false; 8]).unwrap(),
            FieldElement::from_bits(0x3f | (0xff << 22))
        );
        assert_eq!(
            gamma_prep(&f, 2, &[false; 7]),
            Err(Error::ChiLength {
                got: 7,
                expected: 8
            })
        );
    }

    #[test]
    fn w_matrix_shape_and_weights() {
        let w = build_w_matrix(2, &universe(2));
        assert_eq!((w.rows(), w.cols()), (30, 32));
        for j in 0..32 {
            let weight = (0..30).filter(|&i| w.get(i, j)).count();
            assert_eq!(weight, 4 - j / 8);
        }
    }

    #[test]
    fn target_coefficients_vanishing_numerator() {
        let f = build_field(6).unwrap();
        let xs = [FieldElement::from_bits(5), FieldElement::from_bits(9)];
        let z = target_coefficients(&f, &xs, xs[1]).unwrap();
        assert!(z[0].is_zero());
        assert!(matches!(
            target_coefficients(&f, &[xs[0], xs[0]], xs[1]),
            Err(Error::DuplicateEvaluationPoint(_))
        ));
    }
}
