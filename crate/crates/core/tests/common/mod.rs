//! Reference arithmetic shared by the integration tests. Nothing here calls the library's
//! field arithmetic.

#![allow(dead_code)]

/// Carry-less product of `a` and `b` reduced modulo `X^m + low`, bit by bit.
pub fn mul_ref(a: u128, b: u128, m: u32, low: u128) -> u128 {
    let mut acc = 0u128;
    let mut a = a;
    for i in 0..m {
        if b >> i & 1 == 1 {
            acc ^= a;
        }
        let carry = a >> (m - 1) & 1 == 1;
        a = if m == 128 {
            a << 1
        } else {
            (a << 1) & ((1u128 << m) - 1)
        };
        if carry {
            a ^= low;
        }
    }
    acc
}

pub fn pow_ref(a: u128, mut e: u128, m: u32, low: u128) -> u128 {
    let (mut base, mut acc) = (a, 1u128);
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_ref(acc, base, m, low);
        }
        base = mul_ref(base, base, m, low);
        e >>= 1;
    }
    acc
}

/// Remainder of binary polynomial `a` modulo `b` (both as bit masks, `b != 0`).
pub fn gf2_rem(mut a: u128, b: u128) -> u128 {
    let db = 127 - b.leading_zeros();
    while a != 0 && 127 - a.leading_zeros() >= db {
        a ^= b << (127 - a.leading_zeros() - db);
    }
    a
}

/// Irreducibility of the binary polynomial `f` (degree <= 20) by trial division.
pub fn irreducible_by_trial(f: u128) -> bool {
    let d = 127 - f.leading_zeros();
    (2u128..1 << (d / 2 + 1)).all(|g| gf2_rem(f, g) != 0)
}

/// Multiplicative order of `X` modulo `X^m + low` by stepping through its powers.
pub fn order_of_x(m: u32, low: u128) -> u128 {
    let x = if m == 1 { low } else { 2 };
    let mut p = x;
    let mut k = 1u128;
    while p != 1 {
        p = mul_ref(p, x, m, low);
        k += 1;
        if k > 1 << m {
            return 0;
        }
    }
    k
}

/// The smallest primitive `X^m + low` by exhaustive search (small m only).
pub fn smallest_primitive_low(m: u32) -> u128 {
    (1u128..1 << m)
        .step_by(2)
        .find(|&low| {
            let f = 1u128 << m | low;
            irreducible_by_trial(f) && order_of_x(m, low) == (1 << m) - 1
        })
        .unwrap()
}

/// Determinant by cofactor expansion along the first row, with reference arithmetic.
pub fn det_cofactor(a: &[Vec<u128>], m: u32, low: u128) -> u128 {
    let n = a.len();
    if n == 0 {
        return 1;
    }
    if n == 1 {
        return a[0][0];
    }
    let mut det = 0;
    for j in 0..n {
        if a[0][j] == 0 {
            continue;
        }
        let minor: Vec<Vec<u128>> = a[1..]
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|&(c, _)| c != j)
                    .map(|(_, &v)| v)
                    .collect()
            })
            .collect();
        det ^= mul_ref(a[0][j], det_cofactor(&minor, m, low), m, low);
    }
    det
}
