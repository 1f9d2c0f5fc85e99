//! Orthogonal pairs of T-quasigroups acting on Z_n x Z_n.
//!
//! A pair (A, B) is orthogonal exactly when the coefficient determinant
//! phi_A*psi_B - psi_A*phi_B is a unit; the joint map (x, y) -> (A(x,y), B(x,y))
//! is then a bijection with a linear closed-form inverse.

use std::fmt;

use crate::error::{Error, Result};
use crate::modring::{Modulus, Residue};
use crate::quasigroup::{Parastrophe, TQuasigroup};

/// Ordered pair of residues over one modulus.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Pair {
    first: Residue,
    second: Residue,
}

impl Pair {
    pub fn new(first: Residue, second: Residue) -> Result<Self> {
        if first.modulus() != second.modulus() {
            return Err(Error::ModulusMismatch(first.modulus().n(), second.modulus().n()));
        }
        Ok(Pair { first, second })
    }

    pub fn from_values(modulus: Modulus, first: u64, second: u64) -> Self {
        Pair { first: modulus.residue(first), second: modulus.residue(second) }
    }

    #[inline]
    pub fn first(&self) -> Residue {
        self.first
    }

    #[inline]
    pub fn second(&self) -> Residue {
        self.second
    }

    #[inline]
    pub fn modulus(&self) -> Modulus {
        self.first.modulus()
    }

    pub fn values(&self) -> (u64, u64) {
        (self.first.value(), self.second.value())
    }
}

impl fmt::Display for Pair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.first.value(), self.second.value())
    }
}

/// Orthogonal system of two T-quasigroups with a cached closed-form inverse.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrthoPair {
    first: TQuasigroup,
    second: TQuasigroup,
    det: Residue,
    inv_first: TQuasigroup,
    inv_second: TQuasigroup,
}

impl OrthoPair {
    /// Builds the system and precomputes its inverse; fails with
    /// `NotOrthogonal` when the determinant is not a unit.
    pub fn new(first: TQuasigroup, second: TQuasigroup) -> Result<Self> {
        if first.modulus() != second.modulus() {
            return Err(Error::ModulusMismatch(first.modulus().n(), second.modulus().n()));
        }
        let det = first
            .phi()
            .mul(&second.psi())?
            .sub(&first.psi().mul(&second.phi())?)?;
        let det_inv = det.inv().map_err(|_| Error::NotOrthogonal {
            det: det.value(),
            modulus: det.modulus().n(),
        })?;

        // Solving a = phi1*x + psi1*y + c1, b = phi2*x + psi2*y + c2 for (x, y)
        // gives two linear maps in (a, b); their unit coefficients make each a
        // T-quasigroup in its own right.
        let e11 = second.psi().mul(&det_inv)?;
        let e12 = first.psi().mul(&det_inv)?.neg();
        let e21 = second.phi().mul(&det_inv)?.neg();
        let e22 = first.phi().mul(&det_inv)?;
        let f1 = e11.mul(&first.c())?.add(&e12.mul(&second.c())?)?.neg();
        let f2 = e21.mul(&first.c())?.add(&e22.mul(&second.c())?)?.neg();
        let inv_first = TQuasigroup::new(e11, e12, f1)?;
        let inv_second = TQuasigroup::new(e21, e22, f2)?;

        Ok(OrthoPair { first, second, det, inv_first, inv_second })
    }

    /// System (q, sigma-parastrophe of q); orthogonal for exactly the
    /// coefficient conditions tested by `TQuasigroup::ortho_to_parastrophe`.
    pub fn from_parastrophe(base: TQuasigroup, sigma: Parastrophe) -> Result<Self> {
        if sigma == Parastrophe::E {
            return Err(Error::SelfParastrophe);
        }
        Self::new(base, base.parastrophe(sigma))
    }

    #[inline]
    pub fn first(&self) -> &TQuasigroup {
        &self.first
    }

    #[inline]
    pub fn second(&self) -> &TQuasigroup {
        &self.second
    }

    #[inline]
    pub fn modulus(&self) -> Modulus {
        self.first.modulus()
    }

    pub fn det(&self) -> Residue {
        self.det
    }

    /// The two linear maps that send (A(x,y), B(x,y)) back to (x, y).
    pub fn inverse_system(&self) -> (&TQuasigroup, &TQuasigroup) {
        (&self.inv_first, &self.inv_second)
    }

    /// (x, y) -> (A(x, y), B(x, y)).
    pub fn forward(&self, p: Pair) -> Result<Pair> {
        let a = self.first.eval(p.first(), p.second())?;
        let b = self.second.eval(p.first(), p.second())?;
        Pair::new(a, b)
    }

    /// (a, b) -> the unique (x, y) with A(x,y) = a and B(x,y) = b.
    pub fn inverse(&self, p: Pair) -> Result<Pair> {
        let x = self.inv_first.eval(p.first(), p.second())?;
        let y = self.inv_second.eval(p.first(), p.second())?;
        Pair::new(x, y)
    }

    /// The joint map taken to a signed power; negative powers iterate the
    /// inverse map.
    pub fn iterate(&self, p: Pair, power: i64) -> Result<Pair> {
        let mut cur = p;
        for _ in 0..power.unsigned_abs() {
            cur = if power >= 0 { self.forward(cur)? } else { self.inverse(cur)? };
        }
        if power == 0 {
            self.forward(p)?;
        }
        Ok(cur)
    }

    /// Like `iterate` but returns every intermediate pair, in order.
    pub fn iterate_chain(&self, p: Pair, power: i64) -> Result<Vec<Pair>> {
        let mut chain = Vec::with_capacity(power.unsigned_abs() as usize);
        let mut cur = p;
        for _ in 0..power.unsigned_abs() {
            cur = if power >= 0 { self.forward(cur)? } else { self.inverse(cur)? };
            chain.push(cur);
        }
        if power == 0 {
            self.forward(p)?;
        }
        Ok(chain)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::modring::Modulus;
    use proptest::prelude::*;

    fn z(n: u64) -> Modulus {
        Modulus::new(n).unwrap()
    }

    fn q(n: u64, phi: u64, psi: u64, c: u64) -> TQuasigroup {
        TQuasigroup::from_values(z(n), phi, psi, c).unwrap()
    }

    fn f1() -> OrthoPair {
        OrthoPair::new(q(313, 7, 12, 13), q(313, 182, 287, 25)).unwrap()
    }

    fn f2() -> OrthoPair {
        OrthoPair::new(q(313, 79, 113, 23), q(313, 27, 277, 202)).unwrap()
    }

    fn f3() -> OrthoPair {
        OrthoPair::new(q(313, 81, 101, 99), q(313, 228, 134, 277)).unwrap()
    }

    #[test]
    fn determinant_golden() {
        assert_eq!(f1().det().value(), 138);
        assert_eq!(f2().det().value(), 52);
        assert_eq!(f3().det().value(), 33);
    }

    #[test]
    fn inverse_system_golden() {
        let (ia, ib) = (f1().inv_first, f1().inv_second);
        assert_eq!(ia.coefficients(), (86, 136, 177));
        assert_eq!(ib.coefficients(), (289, 25, 0));

        let (ia, ib) = (f2().inv_first, f2().inv_second);
        assert_eq!(ia.coefficients(), (216, 52, 178));
        assert_eq!(ib.coefficients(), (162, 152, 0));

        let (ia, ib) = (f3().inv_first, f3().inv_second);
        assert_eq!(ia.coefficients(), (42, 272, 0));
        assert_eq!(ib.coefficients(), (50, 287, 61));
    }

    #[test]
    fn forward_inverse_golden() {
        let m = z(313);
        let f = f1();
        let out = f.forward(Pair::from_values(m, 126, 171)).unwrap();
        assert_eq!(out.values(), (130, 44));
        assert_eq!(f.inverse(out).unwrap().values(), (126, 171));

        let f = f2();
        let chain = f.iterate_chain(Pair::from_values(m, 82, 140), 2).unwrap();
        let values: Vec<(u64, u64)> = chain.iter().map(Pair::values).collect();
        assert_eq!(values, vec![(98, 193), (152, 282)]);
        assert_eq!(
            f.iterate(Pair::from_values(m, 152, 282), -2).unwrap().values(),
            (82, 140)
        );
    }

    #[test]
    fn iterate_zero_is_identity() {
        let m = z(313);
        let p = Pair::from_values(m, 5, 9);
        assert_eq!(f3().iterate(p, 0).unwrap(), p);
    }

    #[test]
    fn rejects_degenerate_system() {
        assert_eq!(
            OrthoPair::new(q(5, 1, 1, 0), q(5, 1, 1, 1)),
            Err(Error::NotOrthogonal { det: 0, modulus: 5 })
        );
        // det = 2*2 - 2*2 = 0 for a quasigroup paired with its s12-parastrophe
        assert!(OrthoPair::from_parastrophe(q(5, 2, 2, 0), Parastrophe::S12).is_err());
        assert_eq!(
            OrthoPair::from_parastrophe(q(5, 2, 3, 0), Parastrophe::E),
            Err(Error::SelfParastrophe)
        );
        assert_eq!(
            OrthoPair::new(q(5, 1, 2, 0), q(7, 1, 2, 0)),
            Err(Error::ModulusMismatch(5, 7))
        );
    }

    #[test]
    fn parastrophe_pairs_match_predicate() {
        for n in [5u64, 7, 11] {
            let m = z(n);
            for phi in m.units() {
                for psi in m.units() {
                    let g = TQuasigroup::new(phi, psi, m.residue(1)).unwrap();
                    for sigma in Parastrophe::PROPER {
                        let predicted = g.ortho_to_parastrophe(sigma).unwrap();
                        let built = OrthoPair::from_parastrophe(g, sigma);
                        assert_eq!(built.is_ok(), predicted, "n={n} {g} {sigma}");
                    }
                }
            }
        }
    }

    #[test]
    fn joint_map_is_bijection_exhaustive() {
        for n in [5u64, 11] {
            let m = z(n);
            let f = OrthoPair::from_parastrophe(
                TQuasigroup::from_values(m, 2, 3, 1).unwrap(),
                Parastrophe::S13,
            )
            .unwrap();
            let mut seen = vec![false; (n * n) as usize];
            for x in m.elements() {
                for y in m.elements() {
                    let p = Pair::new(x, y).unwrap();
                    let out = f.forward(p).unwrap();
                    let idx = (out.first().value() * n + out.second().value()) as usize;
                    assert!(!seen[idx], "collision at {p}");
                    seen[idx] = true;
                    assert_eq!(f.inverse(out).unwrap(), p);
                }
            }
            assert!(seen.iter().all(|&s| s));
        }
    }

    fn arb_ortho_pair() -> impl Strategy<Value = OrthoPair> {
        (2u64..500, any::<[u64; 6]>()).prop_filter_map("needs orthogonal pair", |(n, w)| {
            let m = Modulus::new(n).ok()?;
            let units: Vec<Residue> = m.units().collect();
            let pick = |i: u64| units[(i % units.len() as u64) as usize];
            let a = TQuasigroup::new(pick(w[0]), pick(w[1]), m.residue(w[4])).ok()?;
            let b = TQuasigroup::new(pick(w[2]), pick(w[3]), m.residue(w[5])).ok()?;
            OrthoPair::new(a, b).ok()
        })
    }

    proptest! {
        #[test]
        fn prop_inverse_roundtrip(f in arb_ortho_pair(), xv in any::<u64>(), yv in any::<u64>(), k in -5i64..=5) {
            let m = f.modulus();
            let p = Pair::new(m.residue(xv), m.residue(yv)).unwrap();
            let out = f.forward(p).unwrap();
            prop_assert_eq!(f.inverse(out).unwrap(), p);
            let there = f.iterate(p, k).unwrap();
            prop_assert_eq!(f.iterate(there, -k).unwrap(), p);
        }
    }
}
