//! Prime-field arithmetic on `u64` values.
//!
//! Two users: Karp-Rabin hashing works over the Mersenne prime `2^61 - 1`
//! (fast reduction), and the Reed-Solomon codec works over a per-code prime
//! chosen just large enough for its position space, which keeps redundancy
//! sizes proportional to what the code actually needs.

/// The Mersenne prime `2^61 - 1`.
pub const M61: u64 = (1 << 61) - 1;

/// Reduce a 128-bit product modulo `2^61 - 1`.
#[inline]
pub fn m61_reduce(x: u128) -> u64 {
    let lo = (x & M61 as u128) as u64;
    let hi = (x >> 61) as u64;
    let mut r = lo.wrapping_add(hi);
    // hi < 2^67, so one more folding round suffices.
    r = (r & M61).wrapping_add(r >> 61);
    if r >= M61 {
        r -= M61;
    }
    r
}

#[inline]
pub fn m61_mul(a: u64, b: u64) -> u64 {
    m61_reduce(a as u128 * b as u128)
}

#[inline]
pub fn m61_add(a: u64, b: u64) -> u64 {
    let s = a + b;
    if s >= M61 {
        s - M61
    } else {
        s
    }
}

#[inline]
pub fn m61_sub(a: u64, b: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        a + M61 - b
    }
}

/// A prime field `F_p` for arbitrary `p < 2^62`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Fp {
    pub p: u64,
}

impl Fp {
    pub fn new(p: u64) -> Self {
        debug_assert!(is_prime_u64(p), "modulus must be prime");
        Self { p }
    }

    #[inline]
    pub fn add(&self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(&self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    #[inline]
    pub fn mul(&self, a: u64, b: u64) -> u64 {
        ((a as u128 * b as u128) % self.p as u128) as u64
    }

    pub fn pow(&self, mut base: u64, mut exp: u64) -> u64 {
        let mut acc = 1u64;
        base %= self.p;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    /// Multiplicative inverse; `a` must be nonzero.
    pub fn inv(&self, a: u64) -> u64 {
        debug_assert!(a % self.p != 0);
        self.pow(a, self.p - 2)
    }
}

fn mulmod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn powmod(mut a: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1u64 % m;
    a %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = mulmod(acc, a, m);
        }
        a = mulmod(a, a, m);
        e >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin for u64 (the standard 12-witness set).
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == p {
            return true;
        }
        if n % p == 0 {
            return false;
        }
    }
    let mut d = n - 1;
    let mut r = 0u32;
    while d % 2 == 0 {
        d /= 2;
        r += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = powmod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 0..r - 1 {
            x = mulmod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Smallest prime `>= n` (for `n < 2^62`).
pub fn prime_at_least(n: u64) -> u64 {
    let mut c = n.max(2);
    loop {
        if is_prime_u64(c) {
            return c;
        }
        c += 1;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn m61_arithmetic() {
        assert_eq!(m61_mul(M61 - 1, M61 - 1), 1); // (-1)^2
        assert_eq!(m61_add(M61 - 1, 1), 0);
        assert_eq!(m61_sub(0, 1), M61 - 1);
        let f = Fp::new(M61);
        for a in [1u64, 2, 12345, M61 - 1] {
            assert_eq!(f.mul(a, f.inv(a)), 1);
        }
    }

    #[test]
    fn primality() {
        assert!(is_prime_u64(M61));
        assert!(is_prime_u64(2));
        assert!(!is_prime_u64(1));
        assert!(!is_prime_u64((1 << 61) - 3));
        assert_eq!(prime_at_least(1000), 1009);
        assert_eq!(prime_at_least(1 << 20), (1 << 20) + 7);
    }

    #[test]
    fn fp_pow_matches_repeated_mul() {
        let f = Fp::new(1009);
        let mut acc = 1u64;
        for e in 0..50u64 {
            assert_eq!(f.pow(7, e), acc);
            acc = f.mul(acc, 7);
        }
    }
}
