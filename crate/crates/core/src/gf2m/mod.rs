//! Arithmetic in GF(2^m), `1 <= m <= 128`, over the polynomial basis `{1, α, ..., α^(m-1)}`.
//!
//! Elements are bit vectors packed in a `u128` (bit `i` is the coefficient of `α^i`). A
//! [`FieldContext`] owns the defining modulus, which by default is the smallest primitive
//! irreducible binary polynomial of degree `m`, where candidates `X^m + low` are ordered by the
//! integer value of `low`.

mod factor;

use std::fmt;
use std::ops::{Add, AddAssign, Neg, Sub, SubAssign};
use std::str::FromStr;
use std::sync::Arc;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

pub use factor::{factor_mersenne, is_prime, mersenne, Factorization};

pub const MAX_DEGREE: u32 = 128;

/// Largest degree that gets exp/log tables.
const TABLE_MAX_DEGREE: u32 = 16;

/// An element of GF(2^m); bit `i` is the coefficient of `α^i`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct FieldElement(u128);

impl FieldElement {
    pub const ZERO: FieldElement = FieldElement(0);
    pub const ONE: FieldElement = FieldElement(1);

    pub const fn from_bits(bits: u128) -> Self {
        FieldElement(bits)
    }

    pub const fn bits(self) -> u128 {
        self.0
    }

    /// `α^i` for `i < m`, i.e. the single basis vector `i`.
    pub const fn basis(i: u32) -> Self {
        FieldElement(1u128 << i)
    }

    pub const fn is_zero(self) -> bool {
        self.0 == 0
    }

    /// Number of nonzero basis coordinates.
    pub const fn weight(self) -> u32 {
        self.0.count_ones()
    }

    pub const fn bit(self, i: u32) -> bool {
        (self.0 >> i) & 1 == 1
    }
}

// addition in characteristic 2 is XOR
#[allow(clippy::suspicious_arithmetic_impl)]
impl Add for FieldElement {
    type Output = FieldElement;
    #[inline]
    fn add(self, rhs: FieldElement) -> FieldElement {
        FieldElement(self.0 ^ rhs.0)
    }
}

#[allow(clippy::suspicious_op_assign_impl)]
impl AddAssign for FieldElement {
    #[inline]
    fn add_assign(&mut self, rhs: FieldElement) {
        self.0 ^= rhs.0;
    }
}

#[allow(clippy::suspicious_arithmetic_impl)]
impl Sub for FieldElement {
    type Output = FieldElement;
    #[inline]
    fn sub(self, rhs: FieldElement) -> FieldElement {
        FieldElement(self.0 ^ rhs.0)
    }
}

impl Neg for FieldElement {
    type Output = FieldElement;
    #[inline]
    fn neg(self) -> FieldElement {
        self
    }
}

#[allow(clippy::suspicious_op_assign_impl)]
impl SubAssign for FieldElement {
    #[inline]
    fn sub_assign(&mut self, rhs: FieldElement) {
        self.0 ^= rhs.0;
    }
}

impl std::iter::Sum for FieldElement {
    fn sum<I: Iterator<Item = FieldElement>>(iter: I) -> Self {
        iter.fold(FieldElement::ZERO, |a, b| a + b)
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:#x}", self.0)
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:#x}", self.0)
    }
}

impl fmt::LowerHex for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::LowerHex::fmt(&self.0, f)
    }
}

impl FromStr for FieldElement {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let digits = s
            .strip_prefix("0x")
            .ok_or_else(|| Error::Parse(format!("field element {s:?} lacks the 0x prefix")))?;
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_hexdigit()) {
            return Err(Error::Parse(format!(
                "field element {s:?} is not a hex integer"
            )));
        }
        u128::from_str_radix(digits, 16)
            .map(FieldElement)
            .map_err(|e| Error::Parse(format!("field element {s:?}: {e}")))
    }
}

impl Serialize for FieldElement {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for FieldElement {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Binary polynomial `X^m + low` used as a reduction modulus; need not be irreducible.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) struct BinaryModulus {
    m: u32,
    low: u128,
    mask: u128,
}

impl BinaryModulus {
    pub(crate) fn new(m: u32, low: u128) -> Self {
        let mask = mersenne(m);
        debug_assert!(low & !mask == 0);
        BinaryModulus { m, low, mask }
    }

    /// Shift-and-add product modulo `X^m + low`.
    #[inline]
    pub(crate) fn mul(&self, a: u128, b: u128) -> u128 {
        let top = 1u128 << (self.m - 1);
        let mut acc = 0u128;
        let nbits = 128 - b.leading_zeros();
        for i in (0..nbits).rev() {
            let carry = acc & top != 0;
            acc = (acc << 1) & self.mask;
            if carry {
                acc ^= self.low;
            }
            if (b >> i) & 1 == 1 {
                acc ^= a;
            }
        }
        acc
    }

    pub(crate) fn pow(&self, mut base: u128, mut exp: u128) -> u128 {
        let mut acc = 1u128;
        while exp != 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    /// Residue of `X`.
    fn x(&self) -> u128 {
        if self.m == 1 {
            self.low
        } else {
            2
        }
    }

    /// Ben-Or: irreducible iff `gcd(X^(2^i) - X, f) = 1` for `1 <= i <= m/2`.
    pub(crate) fn is_irreducible(&self) -> bool {
        if self.m == 1 {
            return true;
        }
        if self.low & 1 == 0 {
            return false;
        }
        let x = self.x();
        let mut r = x;
        for _ in 1..=self.m / 2 {
            r = self.mul(r, r);
            let s = r ^ x;
            if s == 0 || self.gcd_with(s) != 1 {
                return false;
            }
        }
        true
    }

    /// `gcd(X^m + low, s)` for nonzero `s` of degree below `m`.
    fn gcd_with(&self, s: u128) -> u128 {
        let ds = 127 - s.leading_zeros();
        if ds == 0 {
            return 1;
        }
        // X^m mod s
        let mut xm = 1u128;
        for _ in 0..self.m {
            xm <<= 1;
            if (xm >> ds) & 1 == 1 {
                xm ^= s;
            }
        }
        let r = xm ^ poly_rem(self.low, s);
        poly_gcd(s, r)
    }

    /// Order test: `X` has multiplicative order exactly `2^m - 1`.
    pub(crate) fn is_primitive_given(&self, factors: &Factorization) -> bool {
        let order = self.mask;
        let x = self.x();
        if x == 0 || self.pow(x, order) != 1 {
            return false;
        }
        factors.iter().all(|&(p, _)| self.pow(x, order / p) != 1)
    }
}

fn degree(a: u128) -> u32 {
    127 - a.leading_zeros()
}

fn poly_rem(mut a: u128, b: u128) -> u128 {
    let db = degree(b);
    while a != 0 && degree(a) >= db {
        a ^= b << (degree(a) - db);
    }
    a
}

fn poly_gcd(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        let r = poly_rem(a, b);
        a = b;
        b = r;
    }
    a
}

struct Tables {
    exp: Vec<u32>,
    log: Vec<u32>,
}

struct Inner {
    modulus: BinaryModulus,
    factorization: Factorization,
    tables: Option<Tables>,
}

/// GF(2^m) defined by a primitive irreducible modulus. Cheap to clone; immutable once built.
#[derive(Clone)]
pub struct FieldContext {
    inner: Arc<Inner>,
}

impl fmt::Debug for FieldContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FieldContext")
            .field("m", &self.m())
            .field("modulus", &self.modulus_hex())
            .finish()
    }
}

impl PartialEq for FieldContext {
    fn eq(&self, other: &Self) -> bool {
        self.inner.modulus == other.inner.modulus
    }
}

impl Eq for FieldContext {}

/// Builds GF(2^m) on the smallest primitive irreducible modulus of degree `m`.
pub fn build_field(m: u32) -> Result<FieldContext> {
    FieldContext::new(m)
}

fn check_degree(m: u32) -> Result<()> {
    if (1..=MAX_DEGREE).contains(&m) {
        Ok(())
    } else {
        Err(Error::DegreeOutOfRange(m))
    }
}

fn factor_or_budget(m: u32) -> Result<Factorization> {
    factor_mersenne(m).map_err(|cofactor| Error::FactoringBudget { m, cofactor })
}

impl FieldContext {
    /// See [`build_field`].
    pub fn new(m: u32) -> Result<Self> {
        check_degree(m)?;
        let factorization = factor_or_budget(m)?;
        let mut low: u128 = 1;
        loop {
            let candidate = BinaryModulus::new(m, low);
            if candidate.is_irreducible() && candidate.is_primitive_given(&factorization) {
                return Ok(Self::assemble(candidate, factorization));
            }
            // a primitive polynomial exists for every m, so this never runs off the end
            low += 2;
        }
    }

    /// Uses the given modulus `X^m + low`, which must be primitive and irreducible.
    pub fn with_modulus(m: u32, low: u128) -> Result<Self> {
        check_degree(m)?;
        let not_primitive = || Error::NotPrimitive {
            m,
            modulus: modulus_hex(m, low),
        };
        if low & !mersenne(m) != 0 {
            return Err(not_primitive());
        }
        let factorization = factor_or_budget(m)?;
        let modulus = BinaryModulus::new(m, low);
        if !(modulus.is_irreducible() && modulus.is_primitive_given(&factorization)) {
            return Err(not_primitive());
        }
        Ok(Self::assemble(modulus, factorization))
    }

    /// Parses a full modulus in hex (all `m + 1` bits) and validates it.
    pub fn from_modulus_hex(s: &str) -> Result<Self> {
        let (m, low) = parse_modulus_hex(s)?;
        Self::with_modulus(m, low)
    }

    fn assemble(modulus: BinaryModulus, factorization: Factorization) -> Self {
        let tables = (modulus.m <= TABLE_MAX_DEGREE).then(|| {
            let order = modulus.mask as usize;
            let mut exp = vec![0u32; 2 * order.max(1)];
            let mut log = vec![0u32; order + 1];
            let x = modulus.x();
            let mut cur = 1u128;
            for i in 0..order {
                exp[i] = cur as u32;
                exp[i + order] = cur as u32;
                log[cur as usize] = i as u32;
                cur = modulus.mul(cur, x);
            }
            Tables { exp, log }
        });
        FieldContext {
            inner: Arc::new(Inner {
                modulus,
                factorization,
                tables,
            }),
        }
    }

    pub fn m(&self) -> u32 {
        self.inner.modulus.m
    }

    /// `q - 1 = 2^m - 1`, the order of the multiplicative group.
    pub fn group_order(&self) -> u128 {
        self.inner.modulus.mask
    }

    /// `q = 2^m` when it fits in a `u128` (every m except 128).
    pub fn size(&self) -> Option<u128> {
        1u128.checked_shl(self.m())
    }

    /// Low `m` bits of the modulus (the `X^m` term is implicit).
    pub fn modulus_low(&self) -> u128 {
        self.inner.modulus.low
    }

    /// All `m + 1` modulus bits as lowercase `0x` hex.
    pub fn modulus_hex(&self) -> String {
        modulus_hex(self.m(), self.modulus_low())
    }

    /// Prime factorization of `2^m - 1` used for the primitivity certificate.
    pub fn factorization(&self) -> &Factorization {
        &self.inner.factorization
    }

    /// The residue of `X`; a generator of the multiplicative group.
    pub fn alpha(&self) -> FieldElement {
        FieldElement(self.inner.modulus.x())
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement::ZERO
    }

    pub fn one(&self) -> FieldElement {
        FieldElement::ONE
    }

    pub fn contains(&self, a: FieldElement) -> bool {
        a.0 & !self.inner.modulus.mask == 0
    }

    /// Validates that `bits` fits in `m` bits.
    pub fn element(&self, bits: u128) -> Result<FieldElement> {
        let e = FieldElement(bits);
        self.check(e)?;
        Ok(e)
    }

    pub fn check(&self, a: FieldElement) -> Result<()> {
        if self.contains(a) {
            Ok(())
        } else {
            Err(Error::ElementOutOfRange {
                element: a,
                m: self.m(),
            })
        }
    }

    /// Every element in increasing bit order; `m < 64` only.
    pub fn elements(&self) -> impl Iterator<Item = FieldElement> {
        assert!(
            self.m() < 64,
            "enumerating GF(2^{}) is not supported",
            self.m()
        );
        (0..=self.inner.modulus.mask).map(FieldElement)
    }

    pub fn add(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        a + b
    }

    /// Sum with validation of both operands.
    pub fn checked_add(&self, a: FieldElement, b: FieldElement) -> Result<FieldElement> {
        self.check(a)?;
        self.check(b)?;
        Ok(a + b)
    }

    #[inline]
    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        if a.is_zero() || b.is_zero() {
            return FieldElement::ZERO;
        }
        match &self.inner.tables {
            Some(t) => {
                let s = t.log[a.0 as usize] + t.log[b.0 as usize];
                FieldElement(t.exp[s as usize] as u128)
            }
            None => FieldElement(self.inner.modulus.mul(a.0, b.0)),
        }
    }

    /// Product computed by shift-and-add, bypassing any tables.
    pub fn mul_uncached(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        FieldElement(self.inner.modulus.mul(a.0, b.0))
    }

    pub fn square(&self, a: FieldElement) -> FieldElement {
        self.mul(a, a)
    }

    pub fn inv(&self, a: FieldElement) -> Result<FieldElement> {
        if a.is_zero() {
            return Err(Error::ZeroInverse);
        }
        Ok(match &self.inner.tables {
            Some(t) => {
                let order = self.inner.modulus.mask as u32;
                let l = t.log[a.0 as usize];
                FieldElement(t.exp[((order - l) % order.max(1)) as usize] as u128)
            }
            None => self.pow(a, self.inner.modulus.mask - 1),
        })
    }

    pub fn div(&self, a: FieldElement, b: FieldElement) -> Result<FieldElement> {
        Ok(self.mul(a, self.inv(b)?))
    }

    /// `a^e` with `0^0 = 1`.
    pub fn pow(&self, a: FieldElement, e: u128) -> FieldElement {
        if e == 0 {
            return FieldElement::ONE;
        }
        if a.is_zero() {
            return FieldElement::ZERO;
        }
        if let Some(t) = &self.inner.tables {
            let order = self.inner.modulus.mask;
            let l = t.log[a.0 as usize] as u128;
            let idx = mul_mod_small(l, e % order.max(1), order.max(1));
            return FieldElement(t.exp[idx as usize] as u128);
        }
        let mut acc = FieldElement::ONE;
        let mut base = a;
        let mut e = e;
        while e != 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// Re-derives the primitivity certificate from scratch.
    pub fn certify(&self) -> Certification {
        let modulus = self.inner.modulus;
        let m = modulus.m;
        let product_ok = self.factorization().iter().try_fold(1u128, |acc, &(p, e)| {
            (0..e).try_fold(acc, |a, _| a.checked_mul(p))
        }) == Some(mersenne(m));
        let factors_prime = self.factorization().iter().all(|&(p, _)| is_prime(p));
        let irreducible = modulus.is_irreducible();
        let order_full = self.pow(self.alpha(), self.group_order()) == FieldElement::ONE;
        let no_proper_order = self
            .factorization()
            .iter()
            .all(|&(p, _)| self.pow(self.alpha(), self.group_order() / p) != FieldElement::ONE);
        let canonical = (1..modulus.low).step_by(2).all(|low| {
            let cand = BinaryModulus::new(m, low);
            !(cand.is_irreducible() && cand.is_primitive_given(self.factorization()))
        });
        Certification {
            factorization_product: product_ok,
            factors_prime,
            irreducible,
            alpha_order_divides: order_full,
            alpha_order_exact: no_proper_order,
            canonical,
        }
    }
}

fn mul_mod_small(a: u128, b: u128, n: u128) -> u128 {
    // n < 2^16 here
    (a * b) % n
}

/// Outcome of re-checking a field's construction.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Certification {
    pub factorization_product: bool,
    pub factors_prime: bool,
    pub irreducible: bool,
    pub alpha_order_divides: bool,
    pub alpha_order_exact: bool,
    pub canonical: bool,
}

impl Certification {
    pub fn all_pass(&self) -> bool {
        self.factorization_product
            && self.factors_prime
            && self.irreducible
            && self.alpha_order_divides
            && self.alpha_order_exact
            && self.canonical
    }
}

/// Hex for the full modulus `X^m + low`.
pub fn modulus_hex(m: u32, low: u128) -> String {
    if m == 128 {
        format!("0x1{low:032x}")
    } else {
        format!("{:#x}", (1u128 << m) | low)
    }
}

/// Inverse of [`modulus_hex`]: returns `(m, low)`.
pub fn parse_modulus_hex(s: &str) -> Result<(u32, u128)> {
    let bad = || Error::Parse(format!("modulus {s:?} is not a 0x-prefixed hex polynomial"));
    let digits = s.strip_prefix("0x").ok_or_else(bad)?;
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_hexdigit()) {
        return Err(bad());
    }
    let digits = digits.trim_start_matches('0');
    if digits.len() > 32 {
        if digits.len() == 33 && digits.starts_with('1') {
            let low = u128::from_str_radix(&digits[1..], 16).map_err(|_| bad())?;
            return Ok((128, low));
        }
        return Err(Error::DegreeOutOfRange(u32::MAX));
    }
    let v = u128::from_str_radix(digits, 16).map_err(|_| bad())?;
    if v < 2 {
        return Err(Error::DegreeOutOfRange(0));
    }
    let m = degree(v);
    Ok((m, v ^ (1u128 << m)))
}
