//! Prime field arithmetic on single-word residues.

use crate::error::{Error, Result};

/// The prime field F_p. Values are residues in `[0, p)` stored as `u64`.
/// One modulus is fixed per session; all containers built from a given
/// `Fp` carry it along and refuse to mix with another modulus.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Fp {
    p: u64,
}

pub const DEFAULT_PRIME: u64 = 101;

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

impl Fp {
    /// Primality is checked once here; `p` must also fit comfortably in a
    /// word so that products never overflow `u64`.
    pub fn new(p: u64) -> Result<Self> {
        if p >= 1 << 31 {
            return Err(Error::DimensionMismatch(format!(
                "modulus {p} too large (must be < 2^31)"
            )));
        }
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(Fp { p })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn check_same(&self, other: &Fp) -> Result<()> {
        if self.p != other.p {
            return Err(Error::ModulusMismatch(self.p, other.p));
        }
        Ok(())
    }

    pub fn reduce_u64(&self, a: u64) -> u64 {
        a % self.p
    }

    pub fn reduce_i64(&self, a: i64) -> u64 {
        let p = self.p as i64;
        (((a % p) + p) % p) as u64
    }

    pub fn add(&self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    pub fn sub(&self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    pub fn neg(&self, a: u64) -> u64 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    pub fn mul(&self, a: u64, b: u64) -> u64 {
        (a * b) % self.p
    }

    /// Multiplicative inverse by extended Euclid.
    pub fn inv(&self, a: u64) -> Result<u64> {
        if a % self.p == 0 {
            return Err(Error::ZeroInverse(self.p));
        }
        let (mut r0, mut r1) = (self.p as i64, (a % self.p) as i64);
        let (mut s0, mut s1) = (0i64, 1i64);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (s0, s1) = (s1, s0 - q * s1);
        }
        debug_assert_eq!(r0, 1);
        Ok(self.reduce_i64(s0))
    }

    pub fn div(&self, a: u64, b: u64) -> Result<u64> {
        Ok(self.mul(a, self.inv(b)?))
    }

    pub fn pow(&self, mut base: u64, mut e: u64) -> u64 {
        let mut acc = 1u64;
        base %= self.p;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }
}
