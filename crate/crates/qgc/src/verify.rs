//! Brute-force oracles at small moduli: orthogonality by exhaustive solution
//! counting, cancellation-identity checks, the translation/parastrophe
//! equivalence grid, Latin-square and mediality scans, and a census of unit
//! pairs per modulus.

use crate::error::{Error, Result};
use crate::modring::Modulus;
use crate::quasigroup::{Parastrophe, TQuasigroup, TranslationKind};

/// Largest modulus accepted by the O(n^2) exhaustive routines.
pub const BRUTE_LIMIT: u64 = 101;
/// Largest modulus accepted by the heavier grid/census scans.
pub const SCAN_LIMIT: u64 = 31;

fn guard(n: u64, limit: u64) -> Result<()> {
    if n > limit {
        return Err(Error::ModulusTooLarge { n, limit });
    }
    Ok(())
}

/// True iff A(x,y)=a, B(x,y)=b has exactly one solution for every (a,b),
/// decided by enumerating the joint map and watching for collisions.
pub fn ortho_bruteforce(a: &TQuasigroup, b: &TQuasigroup) -> Result<bool> {
    if a.modulus() != b.modulus() {
        return Err(Error::ModulusMismatch(a.modulus().n(), b.modulus().n()));
    }
    let n = a.modulus().n();
    guard(n, BRUTE_LIMIT)?;
    let mut seen = vec![false; (n * n) as usize];
    for x in a.modulus().elements() {
        for y in a.modulus().elements() {
            let va = a.eval(x, y)?.value();
            let vb = b.eval(x, y)?.value();
            let idx = (va * n + vb) as usize;
            if seen[idx] {
                return Ok(false);
            }
            seen[idx] = true;
        }
    }
    Ok(true)
}

/// Exhaustively evaluates the cancellation identity tied to the given
/// parastrophe — e.g. for s13: zx·x = zy·y implies x = y. Equals
/// `ortho_bruteforce(q, q.parastrophe(sigma))` on every quasigroup.
pub fn cancellation_check(q: &TQuasigroup, sigma: Parastrophe) -> Result<bool> {
    let n = q.modulus().n();
    guard(n, BRUTE_LIMIT)?;
    if sigma == Parastrophe::E {
        return Err(Error::SelfParastrophe);
    }
    for z in q.modulus().elements() {
        let mut seen = vec![false; n as usize];
        for x in q.modulus().elements() {
            let image = match sigma {
                Parastrophe::E => unreachable!(),
                // (x\z)*x
                Parastrophe::S12 => q.eval(q.left_divide(x, z)?, x)?,
                // (z*x)*x
                Parastrophe::S13 => q.eval(q.eval(z, x)?, x)?,
                // x*(x*z)
                Parastrophe::S23 => q.eval(x, q.eval(x, z)?)?,
                // x*(z*x)
                Parastrophe::S123 => q.eval(x, q.eval(z, x)?)?,
                // (x*z)*x
                Parastrophe::S132 => q.eval(q.eval(x, z)?, x)?,
            };
            let idx = image.value() as usize;
            if seen[idx] {
                return Ok(false);
            }
            seen[idx] = true;
        }
    }
    Ok(true)
}

/// (kind, power) pairs naming the six basic translations R, L, P and their
/// inverses, in grid order.
const BASE: [(TranslationKind, i64); 6] = [
    (TranslationKind::Right, 1),
    (TranslationKind::Left, 1),
    (TranslationKind::Middle, 1),
    (TranslationKind::Right, -1),
    (TranslationKind::Left, -1),
    (TranslationKind::Middle, -1),
];

/// GRID[row][col]: the translation of q that equals the BASE[row] translation
/// of the col-th parastrophe of q (columns in `Parastrophe::ALL` order).
const GRID: [[(TranslationKind, i64); 6]; 6] = {
    use TranslationKind::{Left as L, Middle as P, Right as R};
    [
        [(R, 1), (L, 1), (R, -1), (P, 1), (P, -1), (L, -1)],
        [(L, 1), (R, 1), (P, -1), (L, -1), (R, -1), (P, 1)],
        [(P, 1), (P, -1), (L, -1), (R, 1), (L, 1), (R, -1)],
        [(R, -1), (L, -1), (R, 1), (P, -1), (P, 1), (L, 1)],
        [(L, -1), (R, -1), (P, 1), (L, 1), (R, 1), (P, -1)],
        [(P, -1), (P, 1), (L, 1), (R, -1), (L, -1), (R, 1)],
    ]
};

/// Verifies all 36 translation/parastrophe grid cells pointwise: every basic
/// translation of every parastrophe of q equals the grid's translation of q,
/// for every leader and argument.
pub fn translation_table_check(q: &TQuasigroup) -> Result<bool> {
    let n = q.modulus().n();
    guard(n, SCAN_LIMIT)?;
    for (col, sigma) in Parastrophe::ALL.iter().enumerate() {
        let pq = q.parastrophe(*sigma);
        for (row, &(base_kind, base_pow)) in BASE.iter().enumerate() {
            let (kind, pow) = GRID[row][col];
            for a in q.modulus().elements() {
                for x in q.modulus().elements() {
                    let lhs = pq.translate_pow(base_kind, a, base_pow, x)?;
                    let rhs = q.translate_pow(kind, a, pow, x)?;
                    if lhs != rhs {
                        return Ok(false);
                    }
                }
            }
        }
    }
    Ok(true)
}

/// Both rows and columns of the Cayley table are permutations.
pub fn latin_square_check(q: &TQuasigroup) -> Result<bool> {
    let n = q.modulus().n();
    guard(n, BRUTE_LIMIT)?;
    for a in q.modulus().elements() {
        let mut row = vec![false; n as usize];
        let mut col = vec![false; n as usize];
        for x in q.modulus().elements() {
            let r = q.eval(a, x)?.value() as usize;
            let c = q.eval(x, a)?.value() as usize;
            if row[r] || col[c] {
                return Ok(false);
            }
            row[r] = true;
            col[c] = true;
        }
    }
    Ok(true)
}

/// xy·uv = xu·yv for all x, y, u, v.
pub fn mediality_check(q: &TQuasigroup) -> Result<bool> {
    let n = q.modulus().n();
    guard(n, SCAN_LIMIT)?;
    let m = q.modulus();
    for x in m.elements() {
        for y in m.elements() {
            for u in m.elements() {
                for v in m.elements() {
                    let lhs = q.eval(q.eval(x, y)?, q.eval(u, v)?)?;
                    let rhs = q.eval(q.eval(x, u)?, q.eval(y, v)?)?;
                    if lhs != rhs {
                        return Ok(false);
                    }
                }
            }
        }
    }
    Ok(true)
}

/// Orthogonality to each proper parastrophe, by coefficient predicate and by
/// brute force.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct ParastropheFlags {
    pub s12: bool,
    pub s13: bool,
    pub s23: bool,
    pub s123: bool,
    pub s132: bool,
}

impl ParastropheFlags {
    pub fn all(&self) -> bool {
        self.s12 && self.s13 && self.s23 && self.s123 && self.s132
    }

    pub fn get(&self, sigma: Parastrophe) -> Option<bool> {
        match sigma {
            Parastrophe::E => None,
            Parastrophe::S12 => Some(self.s12),
            Parastrophe::S13 => Some(self.s13),
            Parastrophe::S23 => Some(self.s23),
            Parastrophe::S123 => Some(self.s123),
            Parastrophe::S132 => Some(self.s132),
        }
    }

    fn set(&mut self, sigma: Parastrophe, value: bool) {
        match sigma {
            Parastrophe::E => {}
            Parastrophe::S12 => self.s12 = value,
            Parastrophe::S13 => self.s13 = value,
            Parastrophe::S23 => self.s23 = value,
            Parastrophe::S123 => self.s123 = value,
            Parastrophe::S132 => self.s132 = value,
        }
    }
}

/// Side-by-side result of the coefficient predicate and the brute-force
/// oracle over all five proper parastrophes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OrthoReport {
    pub predicate: ParastropheFlags,
    pub bruteforce: ParastropheFlags,
    pub agreement: bool,
}

pub fn ortho_report(q: &TQuasigroup) -> Result<OrthoReport> {
    guard(q.modulus().n(), BRUTE_LIMIT)?;
    let mut predicate = ParastropheFlags::default();
    let mut bruteforce = ParastropheFlags::default();
    for sigma in Parastrophe::PROPER {
        predicate.set(sigma, q.ortho_to_parastrophe(sigma)?);
        bruteforce.set(sigma, ortho_bruteforce(q, &q.parastrophe(sigma))?);
    }
    Ok(OrthoReport { predicate, bruteforce, agreement: predicate == bruteforce })
}

/// One census line: unit pair (k, m) with c = 0.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CensusRow {
    pub k: u64,
    pub m: u64,
    pub report: OrthoReport,
    pub criteria_pass: bool,
}

/// Brute-force orthogonality census over all unit pairs of a prime modulus.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Census {
    pub modulus: u64,
    pub rows: Vec<CensusRow>,
}

impl Census {
    /// Quasigroups orthogonal to all five proper parastrophes.
    pub fn all_five_count(&self) -> usize {
        self.rows.iter().filter(|r| r.report.bruteforce.all()).count()
    }

    /// Quasigroups passing all eight coefficient conditions.
    pub fn criteria_pass_count(&self) -> usize {
        self.rows.iter().filter(|r| r.criteria_pass).count()
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("k,m,s12,s13,s23,s123,s132,corollary1_pass\n");
        for r in &self.rows {
            let b = |v: bool| if v { '1' } else { '0' };
            out.push_str(&format!(
                "{},{},{},{},{},{},{},{}\n",
                r.k,
                r.m,
                b(r.report.bruteforce.s12),
                b(r.report.bruteforce.s13),
                b(r.report.bruteforce.s23),
                b(r.report.bruteforce.s123),
                b(r.report.bruteforce.s132),
                b(r.criteria_pass),
            ));
        }
        out
    }
}

/// Enumerates every unit pair (k, m) with c = 0 over a prime modulus and
/// reports per-parastrophe orthogonality plus the eight-condition outcome.
pub fn census(modulus: Modulus) -> Result<Census> {
    if !modulus.is_prime() {
        return Err(Error::CompositeModulus(modulus.n()));
    }
    guard(modulus.n(), SCAN_LIMIT)?;
    let zero = modulus.residue(0);
    let mut rows = Vec::new();
    for k in modulus.units() {
        for m in modulus.units() {
            let q = TQuasigroup::new(k, m, zero)?;
            let report = ortho_report(&q)?;
            rows.push(CensusRow {
                k: k.value(),
                m: m.value(),
                report,
                criteria_pass: q.ortho_criteria()?.all_pass(),
            });
        }
    }
    Ok(Census { modulus: modulus.n(), rows })
}
