//! T-quasigroups over Z_n: x*y = phi*x + psi*y + c with phi, psi units.
//!
//! Covers evaluation, the six parastrophes in closed form, left/right/middle
//! translations with signed integer powers, divisions, and the linear
//! orthogonality predicates.

use std::fmt;

use crate::error::{Error, Result};
use crate::modring::{Modulus, Residue};

/// One of the six argument/result role permutations of a binary quasigroup.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Parastrophe {
    E,
    S12,
    S13,
    S23,
    S123,
    S132,
}

impl Parastrophe {
    pub const ALL: [Parastrophe; 6] = [
        Parastrophe::E,
        Parastrophe::S12,
        Parastrophe::S13,
        Parastrophe::S23,
        Parastrophe::S123,
        Parastrophe::S132,
    ];

    /// The five non-identity parastrophes.
    pub const PROPER: [Parastrophe; 5] = [
        Parastrophe::S12,
        Parastrophe::S13,
        Parastrophe::S23,
        Parastrophe::S123,
        Parastrophe::S132,
    ];

    pub fn label(&self) -> &'static str {
        match self {
            Parastrophe::E => "e",
            Parastrophe::S12 => "s12",
            Parastrophe::S13 => "s13",
            Parastrophe::S23 => "s23",
            Parastrophe::S123 => "s123",
            Parastrophe::S132 => "s132",
        }
    }
}

impl fmt::Display for Parastrophe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// Translation family: left L_a(x) = a*x, right R_a(x) = x*a,
/// middle P_a(x) = the y with x*y = a.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TranslationKind {
    Left,
    Right,
    Middle,
}

impl TranslationKind {
    pub const ALL: [TranslationKind; 3] = [
        TranslationKind::Left,
        TranslationKind::Right,
        TranslationKind::Middle,
    ];

    pub fn label(&self) -> &'static str {
        match self {
            TranslationKind::Left => "L",
            TranslationKind::Right => "R",
            TranslationKind::Middle => "P",
        }
    }
}

impl fmt::Display for TranslationKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// Linear quasigroup x*y = phi*x + psi*y + c over Z_n, phi and psi units.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct TQuasigroup {
    phi: Residue,
    psi: Residue,
    c: Residue,
}

impl TQuasigroup {
    pub fn new(phi: Residue, psi: Residue, c: Residue) -> Result<Self> {
        if phi.modulus() != psi.modulus() {
            return Err(Error::ModulusMismatch(phi.modulus().n(), psi.modulus().n()));
        }
        if phi.modulus() != c.modulus() {
            return Err(Error::ModulusMismatch(phi.modulus().n(), c.modulus().n()));
        }
        if !phi.is_unit() {
            return Err(Error::NotAUnit { value: phi.value(), modulus: phi.modulus().n() });
        }
        if !psi.is_unit() {
            return Err(Error::NotAUnit { value: psi.value(), modulus: psi.modulus().n() });
        }
        Ok(TQuasigroup { phi, psi, c })
    }

    /// Convenience constructor; values are reduced mod n first.
    pub fn from_values(modulus: Modulus, phi: u64, psi: u64, c: u64) -> Result<Self> {
        Self::new(modulus.residue(phi), modulus.residue(psi), modulus.residue(c))
    }

    #[inline]
    pub fn phi(&self) -> Residue {
        self.phi
    }

    #[inline]
    pub fn psi(&self) -> Residue {
        self.psi
    }

    #[inline]
    pub fn c(&self) -> Residue {
        self.c
    }

    #[inline]
    pub fn modulus(&self) -> Modulus {
        self.phi.modulus()
    }

    /// Coefficient triple (phi, psi, c) as plain values.
    pub fn coefficients(&self) -> (u64, u64, u64) {
        (self.phi.value(), self.psi.value(), self.c.value())
    }

    /// x*y = phi*x + psi*y + c.
    #[inline]
    pub fn eval(&self, x: Residue, y: Residue) -> Result<Residue> {
        let fx = self.phi.mul(&x)?;
        let fy = self.psi.mul(&y)?;
        fx.add(&fy)?.add(&self.c)
    }

    /// The sigma-parastrophe as another T-quasigroup, by the closed forms.
    pub fn parastrophe(&self, sigma: Parastrophe) -> TQuasigroup {
        let (phi, psi, c) = (self.phi, self.psi, self.c);
        match sigma {
            Parastrophe::E => *self,
            Parastrophe::S12 => TQuasigroup { phi: psi, psi: phi, c },
            Parastrophe::S13 => {
                let pi = phi.inv().expect("phi is a unit");
                TQuasigroup {
                    phi: pi,
                    psi: pi.mul(&psi).expect("same modulus").neg(),
                    c: pi.mul(&c).expect("same modulus").neg(),
                }
            }
            Parastrophe::S23 => {
                let qi = psi.inv().expect("psi is a unit");
                TQuasigroup {
                    phi: qi.mul(&phi).expect("same modulus").neg(),
                    psi: qi,
                    c: qi.mul(&c).expect("same modulus").neg(),
                }
            }
            Parastrophe::S123 => {
                let pi = phi.inv().expect("phi is a unit");
                TQuasigroup {
                    phi: pi.mul(&psi).expect("same modulus").neg(),
                    psi: pi,
                    c: pi.mul(&c).expect("same modulus").neg(),
                }
            }
            Parastrophe::S132 => {
                let qi = psi.inv().expect("psi is a unit");
                TQuasigroup {
                    phi: qi,
                    psi: qi.mul(&phi).expect("same modulus").neg(),
                    c: qi.mul(&c).expect("same modulus").neg(),
                }
            }
        }
    }

    /// The unique y with x*y = b.
    pub fn left_divide(&self, x: Residue, b: Residue) -> Result<Residue> {
        self.parastrophe(Parastrophe::S23).eval(x, b)
    }

    /// The unique x with x*y = b.
    pub fn right_divide(&self, b: Residue, y: Residue) -> Result<Residue> {
        self.parastrophe(Parastrophe::S13).eval(b, y)
    }

    /// Single application of the given translation with the given leader.
    pub fn translate(&self, kind: TranslationKind, leader: Residue, x: Residue) -> Result<Residue> {
        let (op, leader_first) = self.step_op(kind);
        if leader_first {
            op.eval(leader, x)
        } else {
            op.eval(x, leader)
        }
    }

    /// Translation taken to a signed integer power. Negative powers apply the
    /// inverse translation, realized by the matching parastrophe.
    pub fn translate_pow(
        &self,
        kind: TranslationKind,
        leader: Residue,
        power: i64,
        x: Residue,
    ) -> Result<Residue> {
        let (op, leader_first) = self.resolve(kind, power);
        let mut cur = x;
        for _ in 0..power.unsigned_abs() {
            cur = if leader_first {
                op.eval(leader, cur)?
            } else {
                op.eval(cur, leader)?
            };
        }
        if power == 0 {
            // still reject foreign residues
            op.eval(leader, x)?;
        }
        Ok(cur)
    }

    /// Like `translate_pow` but returns every intermediate value, in order.
    pub fn translate_chain(
        &self,
        kind: TranslationKind,
        leader: Residue,
        power: i64,
        x: Residue,
    ) -> Result<Vec<Residue>> {
        let (op, leader_first) = self.resolve(kind, power);
        let mut chain = Vec::with_capacity(power.unsigned_abs() as usize);
        let mut cur = x;
        for _ in 0..power.unsigned_abs() {
            cur = if leader_first {
                op.eval(leader, cur)?
            } else {
                op.eval(cur, leader)?
            };
            chain.push(cur);
        }
        if power == 0 {
            op.eval(leader, x)?;
        }
        Ok(chain)
    }

    /// Effective operation and argument order for one forward translation step.
    fn step_op(&self, kind: TranslationKind) -> (TQuasigroup, bool) {
        match kind {
            TranslationKind::Left => (*self, true),
            TranslationKind::Right => (*self, false),
            TranslationKind::Middle => (self.parastrophe(Parastrophe::S23), false),
        }
    }

    /// Parastrophe whose same-kind translation inverts this quasigroup's.
    fn inverse_base(&self, kind: TranslationKind) -> TQuasigroup {
        match kind {
            TranslationKind::Right => self.parastrophe(Parastrophe::S13),
            TranslationKind::Left => self.parastrophe(Parastrophe::S23),
            TranslationKind::Middle => self.parastrophe(Parastrophe::S12),
        }
    }

    fn resolve(&self, kind: TranslationKind, power: i64) -> (TQuasigroup, bool) {
        if power < 0 {
            self.inverse_base(kind).step_op(kind)
        } else {
            self.step_op(kind)
        }
    }

    /// Orthogonality to the given proper parastrophe, decided by unit tests
    /// on the coefficients. Works over any Z_n.
    pub fn ortho_to_parastrophe(&self, sigma: Parastrophe) -> Result<bool> {
        let one = self.modulus().residue(1);
        let (phi, psi) = (self.phi, self.psi);
        Ok(match sigma {
            Parastrophe::E => return Err(Error::SelfParastrophe),
            Parastrophe::S12 => {
                phi.sub(&psi)?.is_unit() && phi.add(&psi)?.is_unit()
            }
            Parastrophe::S13 => one.add(&phi)?.is_unit(),
            Parastrophe::S23 => one.add(&psi)?.is_unit(),
            Parastrophe::S123 => phi.add(&psi.mul(&psi)?)?.is_unit(),
            Parastrophe::S132 => phi.mul(&phi)?.add(&psi)?.is_unit(),
        })
    }

    /// The eight non-vanishing conditions on (k, m) = (phi, psi) over a prime
    /// modulus; when all hold the quasigroup is orthogonal to every parastrophe.
    pub fn ortho_criteria(&self) -> Result<OrthoCriteria> {
        let modulus = self.modulus();
        if !modulus.is_prime() {
            return Err(Error::CompositeModulus(modulus.n()));
        }
        let one = modulus.residue(1);
        let (k, m) = (self.phi, self.psi);
        Ok(OrthoCriteria {
            k_nonzero: !k.is_zero(),
            m_nonzero: !m.is_zero(),
            k_plus_m: !k.add(&m)?.is_zero(),
            k_minus_m: !k.sub(&m)?.is_zero(),
            k_plus_one: !k.add(&one)?.is_zero(),
            m_plus_one: !m.add(&one)?.is_zero(),
            k_sq_plus_m: !k.mul(&k)?.add(&m)?.is_zero(),
            k_plus_m_sq: !k.add(&m.mul(&m)?)?.is_zero(),
        })
    }

    /// Cayley table as CSV: header row of column labels, then one row per x.
    pub fn cayley_csv(&self) -> Result<String> {
        let n = self.modulus().n();
        if n > 101 {
            return Err(Error::ModulusTooLarge { n, limit: 101 });
        }
        let header: Vec<String> = (0..n).map(|y| y.to_string()).collect();
        let mut out = header.join(",");
        out.push('\n');
        for x in self.modulus().elements() {
            let row: Vec<String> = self
                .modulus()
                .elements()
                .map(|y| self.eval(x, y).expect("same modulus").value().to_string())
                .collect();
            out.push_str(&row.join(","));
            out.push('\n');
        }
        Ok(out)
    }
}

impl fmt::Display for TQuasigroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "x*y = {}*x + {}*y + {} (mod {})",
            self.phi.value(),
            self.psi.value(),
            self.c.value(),
            self.modulus().n()
        )
    }
}

/// Per-condition outcome of the prime-modulus orthogonality criteria.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OrthoCriteria {
    pub k_nonzero: bool,
    pub m_nonzero: bool,
    pub k_plus_m: bool,
    pub k_minus_m: bool,
    pub k_plus_one: bool,
    pub m_plus_one: bool,
    pub k_sq_plus_m: bool,
    pub k_plus_m_sq: bool,
}

impl OrthoCriteria {
    pub fn all_pass(&self) -> bool {
        self.k_nonzero
            && self.m_nonzero
            && self.k_plus_m
            && self.k_minus_m
            && self.k_plus_one
            && self.m_plus_one
            && self.k_sq_plus_m
            && self.k_plus_m_sq
    }

    /// (label, holds) pairs in spec order, for reports.
    pub fn entries(&self) -> [(&'static str, bool); 8] {
        [
            ("k", self.k_nonzero),
            ("m", self.m_nonzero),
            ("k+m", self.k_plus_m),
            ("k-m", self.k_minus_m),
            ("k+1", self.k_plus_one),
            ("m+1", self.m_plus_one),
            ("k^2+m", self.k_sq_plus_m),
            ("k+m^2", self.k_plus_m_sq),
        ]
    }
}
