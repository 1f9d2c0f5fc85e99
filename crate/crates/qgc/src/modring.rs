//! Exact arithmetic in the ring Z_n and its unit group.

use std::fmt;

use crate::error::{Error, Result};

/// Largest modulus accepted; keeps products of two canonical residues inside u64.
pub const MAX_MODULUS: u64 = 1 << 31;

/// A ring modulus n >= 2 with its primality cached at construction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Modulus {
    n: u64,
    prime: bool,
}

impl Modulus {
    pub fn new(n: u64) -> Result<Self> {
        if n < 2 || n > MAX_MODULUS {
            return Err(Error::ModulusOutOfRange(n));
        }
        Ok(Modulus {
            n,
            prime: trial_division_is_prime(n),
        })
    }

    #[inline]
    pub fn n(&self) -> u64 {
        self.n
    }

    #[inline]
    pub fn is_prime(&self) -> bool {
        self.prime
    }

    /// Canonical residue of an arbitrary unsigned value.
    #[inline]
    pub fn residue(&self, value: u64) -> Residue {
        Residue {
            value: value % self.n,
            modulus: *self,
        }
    }

    /// Canonical residue of a signed value.
    #[inline]
    pub fn residue_signed(&self, value: i64) -> Residue {
        let n = self.n as i64;
        Residue {
            value: (((value % n) + n) % n) as u64,
            modulus: *self,
        }
    }

    /// All residues 0..n, in order.
    pub fn elements(&self) -> impl Iterator<Item = Residue> + '_ {
        let m = *self;
        (0..self.n).map(move |v| Residue { value: v, modulus: m })
    }

    /// All unit residues, in order.
    pub fn units(&self) -> impl Iterator<Item = Residue> + '_ {
        self.elements().filter(|r| r.is_unit())
    }
}

impl fmt::Display for Modulus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Z_{}", self.n)
    }
}

/// An element of Z_n in canonical form, 0 <= value < n.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Residue {
    value: u64,
    modulus: Modulus,
}

impl Residue {
    #[inline]
    pub fn value(&self) -> u64 {
        self.value
    }

    #[inline]
    pub fn modulus(&self) -> Modulus {
        self.modulus
    }

    #[inline]
    fn same_modulus(&self, other: &Residue) -> Result<u64> {
        if self.modulus.n != other.modulus.n {
            return Err(Error::ModulusMismatch(self.modulus.n, other.modulus.n));
        }
        Ok(self.modulus.n)
    }

    #[inline]
    pub fn add(&self, other: &Residue) -> Result<Residue> {
        let n = self.same_modulus(other)?;
        let mut sum = self.value + other.value;
        if sum >= n {
            sum -= n;
        }
        Ok(Residue { value: sum, modulus: self.modulus })
    }

    #[inline]
    pub fn sub(&self, other: &Residue) -> Result<Residue> {
        let n = self.same_modulus(other)?;
        let value = if self.value >= other.value {
            self.value - other.value
        } else {
            n - other.value + self.value
        };
        Ok(Residue { value, modulus: self.modulus })
    }

    #[inline]
    pub fn mul(&self, other: &Residue) -> Result<Residue> {
        let n = self.same_modulus(other)?;
        Ok(Residue {
            value: (self.value * other.value) % n,
            modulus: self.modulus,
        })
    }

    #[inline]
    pub fn neg(&self) -> Residue {
        let value = if self.value == 0 { 0 } else { self.modulus.n - self.value };
        Residue { value, modulus: self.modulus }
    }

    /// Multiplicative inverse by extended Euclid; any unit in any Z_n.
    pub fn inv(&self) -> Result<Residue> {
        let n = self.modulus.n;
        let (g, s) = extended_gcd(self.value, n);
        if g != 1 {
            return Err(Error::NotAUnit { value: self.value, modulus: n });
        }
        let n_i = n as i128;
        let value = (((s % n_i) + n_i) % n_i) as u64;
        Ok(Residue { value, modulus: self.modulus })
    }

    #[inline]
    pub fn is_unit(&self) -> bool {
        gcd(self.value, self.modulus.n) == 1
    }

    #[inline]
    pub fn is_zero(&self) -> bool {
        self.value == 0
    }
}

impl fmt::Display for Residue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// Returns (gcd(a, n), s) with s*a == gcd (mod n).
fn extended_gcd(a: u64, n: u64) -> (u64, i128) {
    let (mut old_r, mut r) = (a as i128, n as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    (old_r as u64, old_s)
}

fn trial_division_is_prime(n: u64) -> bool {
    if n < 4 {
        return n >= 2;
    }
    if n % 2 == 0 {
        return false;
    }
    let mut d = 3;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(n: u64) -> Modulus {
        Modulus::new(n).unwrap()
    }

    #[test]
    fn modulus_bounds() {
        assert!(Modulus::new(0).is_err());
        assert!(Modulus::new(1).is_err());
        assert!(Modulus::new(2).is_ok());
        assert!(Modulus::new(MAX_MODULUS).is_ok());
        assert!(Modulus::new(MAX_MODULUS + 1).is_err());
    }

    #[test]
    fn primality_cached() {
        assert!(z(313).is_prime());
        assert!(z(2).is_prime());
        assert!(z(31).is_prime());
        assert!(!z(10).is_prime());
        assert!(!z(49).is_prime());
        assert!(!z(65536).is_prime());
        assert!(z(65537).is_prime());
    }

    #[test]
    fn add_golden() {
        let m = z(313);
        // 213*61 + 3*152 + 9 splits into 160 + 143 + 9 after reduction
        let sum = m.residue(160).add(&m.residue(143)).unwrap().add(&m.residue(9)).unwrap();
        assert_eq!(sum.value(), 312);
        let m5 = z(5);
        assert_eq!(m5.residue(0).add(&m5.residue(0)).unwrap().value(), 0);
        let m7 = z(7);
        assert_eq!(m7.residue(4).add(&m7.residue(6)).unwrap().value(), 3);
    }

    #[test]
    fn mul_golden() {
        let m = z(313);
        assert_eq!(m.residue(25).mul(&m.residue(37)).unwrap().value(), 299);
        assert_eq!(m.residue(1).mul(&m.residue(207)).unwrap().value(), 207);
        // feeds the orthogonal-system chain (152,312) -> (126,171)
        assert_eq!(m.residue(182).mul(&m.residue(152)).unwrap().value(), 120);
    }

    #[test]
    fn neg_golden() {
        let m = z(313);
        assert_eq!(m.residue(288).neg().value(), 25);
        assert_eq!(m.residue(0).neg().value(), 0);
        assert_eq!(m.residue(36).neg().value(), 277);
    }

    #[test]
    fn inv_golden() {
        let m = z(313);
        assert_eq!(m.residue(25).inv().unwrap().value(), 288);
        assert_eq!(m.residue(1).inv().unwrap().value(), 1);
        assert_eq!(m.residue(39).inv().unwrap().value(), 305);
        assert_eq!(m.residue(0).inv(), Err(Error::NotAUnit { value: 0, modulus: 313 }));
        let m10 = z(10);
        assert_eq!(m10.residue(4).inv(), Err(Error::NotAUnit { value: 4, modulus: 10 }));
        assert_eq!(m10.residue(7).inv().unwrap().value(), 3);
    }

    #[test]
    fn unit_detection() {
        let m = z(313);
        assert!(m.residue(62).is_unit());
        assert!(!m.residue(0).is_unit());
        let m10 = z(10);
        assert!(!m10.residue(5).is_unit());
        assert!(m10.residue(9).is_unit());
    }

    #[test]
    fn mismatched_moduli_rejected() {
        let a = z(5).residue(2);
        let b = z(7).residue(2);
        assert_eq!(a.add(&b), Err(Error::ModulusMismatch(5, 7)));
        assert_eq!(a.mul(&b), Err(Error::ModulusMismatch(5, 7)));
        assert_eq!(a.sub(&b), Err(Error::ModulusMismatch(5, 7)));
    }

    #[test]
    fn signed_reduction() {
        let m = z(313);
        assert_eq!(m.residue_signed(-1).value(), 312);
        assert_eq!(m.residue_signed(-313).value(), 0);
        assert_eq!(m.residue_signed(627).value(), 1);
    }

    #[test]
    fn units_times_inverse_is_one() {
        for n in [2u64, 5, 10, 11, 12, 313] {
            let m = z(n);
            for a in m.units() {
                assert_eq!(a.mul(&a.inv().unwrap()).unwrap().value(), 1, "a={a} mod {n}");
            }
        }
    }

    #[test]
    fn ring_laws_exhaustive_small() {
        for n in 2u64..=11 {
            let m = z(n);
            for a in m.elements() {
                assert_eq!(a.neg().neg(), a);
                for b in m.elements() {
                    assert_eq!(a.add(&b).unwrap(), b.add(&a).unwrap());
                    assert_eq!(a.mul(&b).unwrap(), b.mul(&a).unwrap());
                    assert_eq!(a.sub(&b).unwrap(), a.add(&b.neg()).unwrap());
                    for c in m.elements() {
                        assert_eq!(
                            a.add(&b).unwrap().add(&c).unwrap(),
                            a.add(&b.add(&c).unwrap()).unwrap()
                        );
                        assert_eq!(
                            a.mul(&b).unwrap().mul(&c).unwrap(),
                            a.mul(&b.mul(&c).unwrap()).unwrap()
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn multiplication_bijective_iff_unit() {
        for n in 2u64..=11 {
            let m = z(n);
            for a in m.elements() {
                let mut image: Vec<u64> = m.elements().map(|x| a.mul(&x).unwrap().value()).collect();
                image.sort_unstable();
                image.dedup();
                let bijective = image.len() as u64 == n;
                assert_eq!(bijective, a.is_unit(), "a={a} mod {n}");
            }
        }
    }
}
