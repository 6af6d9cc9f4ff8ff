//! Deterministic factorization of Mersenne numbers `2^m - 1`, `m <= 128`.
//!
//! `2^m - 1` is first split into cyclotomic values `Phi_d(2)` for `d | m`, each of which is then
//! factored by trial division up to 10^6, Brent's variant of Pollard rho with a fixed
//! polynomial/seed schedule, and Miller-Rabin with a fixed base set.

const TRIAL_LIMIT: u128 = 1_000_000;
const RHO_ITERATION_BUDGET: u64 = 1 << 26;
const RHO_MAX_CONSTANT: u128 = 64;

/// Proven deterministic for n < 3_317_044_064_679_887_385_961_981.
const MR_BASES_SMALL: [u128; 13] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41];
const MR_PROVEN_BOUND: u128 = 3_317_044_064_679_887_385_961_981;
const MR_BASES_LARGE: [u128; 20] = [
    2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71,
];

/// Prime factorization as sorted `(prime, multiplicity)` pairs.
pub type Factorization = Vec<(u128, u32)>;

/// Factors `2^m - 1`. Returns the unfactored cofactor on budget exhaustion.
pub fn factor_mersenne(m: u32) -> Result<Factorization, u128> {
    debug_assert!((1..=128).contains(&m));
    let divisors: Vec<u32> = (1..=m).filter(|d| m.is_multiple_of(*d)).collect();
    let mut cyclotomic: Vec<(u32, u128)> = Vec::with_capacity(divisors.len());
    for &d in &divisors {
        let mut value = mersenne(d);
        for &(e, phi) in &cyclotomic {
            if d % e == 0 {
                debug_assert_eq!(value % phi, 0);
                value /= phi;
            }
        }
        cyclotomic.push((d, value));
    }

    let mut primes: Vec<u128> = Vec::new();
    for (_, value) in cyclotomic {
        factor_into(value, &mut primes)?;
    }
    primes.sort_unstable();
    let mut out: Factorization = Vec::new();
    for p in primes {
        match out.last_mut() {
            Some((q, e)) if *q == p => *e += 1,
            _ => out.push((p, 1)),
        }
    }
    Ok(out)
}

/// `2^m - 1` for `m <= 128`.
pub fn mersenne(m: u32) -> u128 {
    if m == 128 {
        u128::MAX
    } else {
        (1u128 << m) - 1
    }
}

fn factor_into(mut n: u128, primes: &mut Vec<u128>) -> Result<(), u128> {
    if n <= 1 {
        return Ok(());
    }
    while n.is_multiple_of(2) {
        primes.push(2);
        n /= 2;
    }
    let mut p: u128 = 3;
    while p <= TRIAL_LIMIT && p * p <= n {
        while n.is_multiple_of(p) {
            primes.push(p);
            n /= p;
        }
        p += 2;
    }
    if n == 1 {
        return Ok(());
    }
    let mut stack = vec![n];
    while let Some(n) = stack.pop() {
        if n == 1 {
            continue;
        }
        if is_prime(n) {
            primes.push(n);
            continue;
        }
        let d = pollard_brent(n).ok_or(n)?;
        stack.push(d);
        stack.push(n / d);
    }
    Ok(())
}

fn add_mod(a: u128, b: u128, n: u128) -> u128 {
    // a, b < n
    if a >= n - b {
        a - (n - b)
    } else {
        a + b
    }
}

/// Modular multiplication for an odd or small modulus: native below 2^64, Montgomery form
/// (`R = 2^128`) above. Values in Montgomery form are only meaningful to the same instance.
enum ModRing {
    Native(u128),
    Montgomery { n: u128, neg_inv: u128, r2: u128 },
}

fn mul_wide(a: u128, b: u128) -> (u128, u128) {
    let mask = u64::MAX as u128;
    let (a0, a1) = (a & mask, a >> 64);
    let (b0, b1) = (b & mask, b >> 64);
    let lo = a0 * b0;
    let mid1 = a0 * b1;
    let mid2 = a1 * b0;
    let hi = a1 * b1;
    let (mid, mid_carry) = mid1.overflowing_add(mid2);
    let (lo, lo_carry) = lo.overflowing_add(mid << 64);
    let hi = hi + (mid >> 64) + ((mid_carry as u128) << 64) + lo_carry as u128;
    (hi, lo)
}

impl ModRing {
    fn new(n: u128) -> Self {
        if n <= u64::MAX as u128 || n.is_multiple_of(2) {
            return ModRing::Native(n);
        }
        // Newton iteration doubles the number of correct low bits each step
        let mut inv = n;
        for _ in 0..7 {
            inv = inv.wrapping_mul(2u128.wrapping_sub(n.wrapping_mul(inv)));
        }
        // R mod n, then 128 doublings give R^2 mod n
        let mut r2 = (u128::MAX % n + 1) % n;
        for _ in 0..128 {
            r2 = add_mod(r2, r2, n);
        }
        ModRing::Montgomery {
            n,
            neg_inv: inv.wrapping_neg(),
            r2,
        }
    }

    fn modulus(&self) -> u128 {
        match *self {
            ModRing::Native(n) | ModRing::Montgomery { n, .. } => n,
        }
    }

    fn mul(&self, a: u128, b: u128) -> u128 {
        match *self {
            ModRing::Native(n) => slow_mul_mod(a, b, n),
            ModRing::Montgomery { n, neg_inv, .. } => {
                let (hi, lo) = mul_wide(a, b);
                let m = lo.wrapping_mul(neg_inv);
                let (mhi, mlo) = mul_wide(m, n);
                let carry = lo.overflowing_add(mlo).1 as u128;
                let (sum, o1) = hi.overflowing_add(mhi);
                let (sum, o2) = sum.overflowing_add(carry);
                if o1 || o2 || sum >= n {
                    sum.wrapping_sub(n)
                } else {
                    sum
                }
            }
        }
    }

    fn enter(&self, a: u128) -> u128 {
        match *self {
            ModRing::Native(n) => a % n,
            ModRing::Montgomery { n, r2, .. } => self.mul(a % n, r2),
        }
    }

    fn leave(&self, a: u128) -> u128 {
        match self {
            ModRing::Native(_) => a,
            ModRing::Montgomery { .. } => self.mul(a, 1),
        }
    }
}

fn slow_mul_mod(a: u128, b: u128, n: u128) -> u128 {
    if n <= u64::MAX as u128 {
        return (a % n) * (b % n) % n;
    }
    let (mut a, mut b) = (a % n, b % n);
    let mut acc = 0u128;
    while b != 0 {
        if b & 1 == 1 {
            acc = add_mod(acc, a, n);
        }
        a = add_mod(a, a, n);
        b >>= 1;
    }
    acc
}

#[cfg(test)]
fn mul_mod(a: u128, b: u128, n: u128) -> u128 {
    let ring = ModRing::new(n);
    ring.leave(ring.mul(ring.enter(a), ring.enter(b)))
}

#[cfg(test)]
fn pow_mod(base: u128, exp: u128, n: u128) -> u128 {
    pow_in(&ModRing::new(n), base, exp)
}

fn pow_in(ring: &ModRing, base: u128, mut exp: u128) -> u128 {
    let mut acc = ring.enter(1 % ring.modulus());
    let mut base = ring.enter(base);
    while exp != 0 {
        if exp & 1 == 1 {
            acc = ring.mul(acc, base);
        }
        base = ring.mul(base, base);
        exp >>= 1;
    }
    ring.leave(acc)
}

fn gcd(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        let r = a % b;
        a = b;
        b = r;
    }
    a
}

/// Miller-Rabin with a fixed base set.
pub fn is_prime(n: u128) -> bool {
    if n < 2 {
        return false;
    }
    for p in MR_BASES_LARGE {
        if n == p {
            return true;
        }
        if n.is_multiple_of(p) {
            return false;
        }
    }
    let bases: &[u128] = if n < MR_PROVEN_BOUND {
        &MR_BASES_SMALL
    } else {
        &MR_BASES_LARGE
    };
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    let ring = ModRing::new(n);
    let minus_one = ring.enter(n - 1);
    'bases: for &a in bases {
        let mut x = ring.enter(pow_in(&ring, a, d));
        if ring.leave(x) == 1 || x == minus_one {
            continue;
        }
        for _ in 1..s {
            x = ring.mul(x, x);
            if x == minus_one {
                continue 'bases;
            }
        }
        return false;
    }
    true
}

/// Brent's cycle-finding rho with `f(x) = x^2 + c`, `x0 = 2`, `c = 1, 2, ...`.
fn pollard_brent(n: u128) -> Option<u128> {
    if n.is_multiple_of(2) {
        return Some(2);
    }
    const BATCH: u64 = 128;
    let mut spent = 0u64;
    // iterating in Montgomery form changes the map, not the gcds: R is a unit mod n
    let ring = ModRing::new(n);
    for c in 1..=RHO_MAX_CONSTANT {
        let f = |x: u128| add_mod(ring.mul(x, x), c % n, n);
        let (mut y, mut r, mut q) = (2u128, 1u64, 1u128);
        let (mut x, mut ys, mut g);
        loop {
            x = y;
            for _ in 0..r {
                y = f(y);
            }
            let mut k = 0u64;
            loop {
                ys = y;
                let steps = BATCH.min(r - k);
                for _ in 0..steps {
                    y = f(y);
                    let diff = x.abs_diff(y);
                    q = ring.mul(q, diff);
                }
                spent += steps;
                g = gcd(q, n);
                k += steps;
                if k >= r || g != 1 {
                    break;
                }
            }
            r *= 2;
            if g != 1 || spent > RHO_ITERATION_BUDGET {
                break;
            }
        }
        if g == n {
            // backtrack one step at a time from the saved point
            loop {
                ys = f(ys);
                let diff = x.abs_diff(ys);
                g = gcd(diff, n);
                if g != 1 {
                    break;
                }
            }
        }
        if g != 1 && g != n {
            return Some(g);
        }
        if spent > RHO_ITERATION_BUDGET {
            return None;
        }
    }
    None
}
