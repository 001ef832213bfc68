//! Residue arithmetic in Z/m.
//!
//! Residues are stored as `u64` values in `[0, m)`. The modulus is bounded by
//! [`MAX_MODULUS`] so that a product of three residues fits in a `u64`.

/// Largest modulus accepted anywhere in the crate (2^20).
pub const MAX_MODULUS: u64 = 1 << 20;

#[inline]
pub fn add(a: u64, b: u64, m: u64) -> u64 {
    let s = a + b;
    if s >= m {
        s - m
    } else {
        s
    }
}

#[inline]
pub fn sub(a: u64, b: u64, m: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        a + m - b
    }
}

#[inline]
pub fn neg(a: u64, m: u64) -> u64 {
    if a == 0 {
        0
    } else {
        m - a
    }
}

#[inline]
pub fn mul(a: u64, b: u64, m: u64) -> u64 {
    (a * b) % m
}

/// Reduce a signed integer into `[0, m)`.
#[inline]
pub fn reduce_signed(a: i64, m: u64) -> u64 {
    a.rem_euclid(m as i64) as u64
}

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// Extended Euclid over the integers: returns `(g, s, t)` with `s*a + t*b = g = gcd(a, b)`.
pub fn xgcd(a: i64, b: i64) -> (i64, i64, i64) {
    let (mut old_r, mut r) = (a, b);
    let (mut old_s, mut s) = (1i64, 0i64);
    let (mut old_t, mut t) = (0i64, 1i64);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
        (old_t, t) = (t, old_t - q * t);
    }
    if old_r < 0 {
        (-old_r, -old_s, -old_t)
    } else {
        (old_r, old_s, old_t)
    }
}

/// Inverse of `a` modulo `m`, if `a` is a unit.
pub fn inverse(a: u64, m: u64) -> Option<u64> {
    if m == 1 {
        return Some(0);
    }
    let (g, s, _) = xgcd((a % m) as i64, m as i64);
    (g == 1).then(|| reduce_signed(s, m))
}

pub fn is_unit(a: u64, m: u64) -> bool {
    gcd(a % m, m) == 1
}

/// Returns a unit `u` with `u * a ≡ gcd(a, m) (mod m)`.
///
/// Multiplying a pivot by this unit puts it into the canonical form used by the
/// Howell normal form (a divisor of `m`).
pub fn normalizing_unit(a: u64, m: u64) -> u64 {
    let g = gcd(a % m, m);
    if g == 0 || g == m {
        return 1;
    }
    let m1 = m / g;
    let a1 = (a % m) / g;
    let u0 = inverse(a1 % m1, m1).unwrap_or(1);
    let mut u = if m1 == 1 { 1 } else { u0 };
    while !is_unit(u, m) {
        u += m1;
    }
    u % m
}

/// `m^n` as a `u128`, or `None` on overflow.
pub fn checked_pow(m: u64, n: usize) -> Option<u128> {
    let mut acc: u128 = 1;
    for _ in 0..n {
        acc = acc.checked_mul(m as u128)?;
    }
    Some(acc)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn xgcd_identity() {
        for a in 0..40i64 {
            for b in 0..40i64 {
                let (g, s, t) = xgcd(a, b);
                assert_eq!(s * a + t * b, g);
                assert_eq!(g as u64, gcd(a as u64, b as u64));
            }
        }
    }

    #[test]
    fn inverses_mod_12() {
        for a in 0..12 {
            match inverse(a, 12) {
                Some(b) => assert_eq!(a * b % 12, 1),
                None => assert_ne!(gcd(a, 12), 1),
            }
        }
    }

    #[test]
    fn normalizing_unit_hits_gcd() {
        for m in 2..60u64 {
            for a in 1..m {
                let u = normalizing_unit(a, m);
                assert!(is_unit(u, m), "m={m} a={a} u={u}");
                assert_eq!(u * a % m, gcd(a, m), "m={m} a={a}");
            }
        }
    }
}
