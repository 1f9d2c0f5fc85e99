//! Pairwise leader-chained stream cipher over Z_n.
//!
//! Each plaintext pair is pushed through two powered quasigroup translations
//! (leaders taken from the previous ciphertext pair) and then through a
//! powered orthogonal system. Step keys cycle for long texts. A degenerate
//! mode reproduces the classical single-quasigroup left-translation cipher.

use std::fmt;

use crate::error::{Error, Result};
use crate::modring::{Modulus, Residue};
use crate::orthosys::{OrthoPair, Pair};
use crate::quasigroup::{TQuasigroup, TranslationKind};

/// Chaining discipline: the full pair construction, or the classical
/// single-quasigroup left-translation chain (no pair mixing).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Generalized,
    Markovski,
}

impl Mode {
    pub fn label(&self) -> &'static str {
        match self {
            Mode::Generalized => "generalized",
            Mode::Markovski => "markovski",
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// A quasigroup together with the translation family it acts through.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TranslationSpec {
    quasigroup: TQuasigroup,
    kind: TranslationKind,
}

impl TranslationSpec {
    pub fn new(quasigroup: TQuasigroup, kind: TranslationKind) -> Self {
        TranslationSpec { quasigroup, kind }
    }

    #[inline]
    pub fn quasigroup(&self) -> &TQuasigroup {
        &self.quasigroup
    }

    #[inline]
    pub fn kind(&self) -> TranslationKind {
        self.kind
    }

    #[inline]
    pub fn modulus(&self) -> Modulus {
        self.quasigroup.modulus()
    }

    #[inline]
    fn apply(&self, leader: Residue, power: i64, x: Residue) -> Result<Residue> {
        self.quasigroup.translate_pow(self.kind, leader, power, x)
    }

    #[inline]
    fn chain(&self, leader: Residue, power: i64, x: Residue) -> Result<Vec<Residue>> {
        self.quasigroup.translate_chain(self.kind, leader, power, x)
    }
}

/// Key material consumed by one pair of symbols: two powered translations
/// and a powered orthogonal system.
#[derive(Debug, Clone, PartialEq)]
pub struct StepKey {
    g_odd: TranslationSpec,
    g_even: TranslationSpec,
    powers: [u32; 3],
    f: OrthoPair,
}

impl StepKey {
    pub fn new(
        g_odd: TranslationSpec,
        g_even: TranslationSpec,
        powers: [u32; 3],
        f: OrthoPair,
    ) -> Result<Self> {
        let n = g_odd.modulus();
        for other in [g_even.modulus(), f.modulus()] {
            if other != n {
                return Err(Error::ModulusMismatch(n.n(), other.n()));
            }
        }
        if powers.contains(&0) {
            return Err(Error::ZeroPower);
        }
        Ok(StepKey { g_odd, g_even, powers, f })
    }

    #[inline]
    pub fn g_odd(&self) -> &TranslationSpec {
        &self.g_odd
    }

    #[inline]
    pub fn g_even(&self) -> &TranslationSpec {
        &self.g_even
    }

    #[inline]
    pub fn powers(&self) -> [u32; 3] {
        self.powers
    }

    #[inline]
    pub fn f(&self) -> &OrthoPair {
        &self.f
    }

    #[inline]
    pub fn modulus(&self) -> Modulus {
        self.g_odd.modulus()
    }
}

/// Complete secret material: leaders, ordered step keys, and the mode.
#[derive(Debug, Clone, PartialEq)]
pub struct KeySchedule {
    modulus: Modulus,
    mode: Mode,
    leaders: [Residue; 2],
    steps: Vec<StepKey>,
}

impl KeySchedule {
    pub fn new(mode: Mode, leaders: (Residue, Residue), steps: Vec<StepKey>) -> Result<Self> {
        if steps.is_empty() {
            return Err(Error::EmptySchedule);
        }
        let modulus = steps[0].modulus();
        for step in &steps {
            if step.modulus() != modulus {
                return Err(Error::ModulusMismatch(modulus.n(), step.modulus().n()));
            }
        }
        for l in [leaders.0, leaders.1] {
            if l.modulus() != modulus {
                return Err(Error::ModulusMismatch(modulus.n(), l.modulus().n()));
            }
        }
        if mode == Mode::Markovski {
            let only_left_power_one = steps.len() == 1
                && steps[0].g_odd.kind == TranslationKind::Left
                && steps[0].g_even.kind == TranslationKind::Left
                && steps[0].g_odd.quasigroup == steps[0].g_even.quasigroup
                && steps[0].powers == [1, 1, 1];
            if !only_left_power_one {
                return Err(Error::MarkovskiShape);
            }
        }
        Ok(KeySchedule { modulus, mode, leaders: [leaders.0, leaders.1], steps })
    }

    #[inline]
    pub fn modulus(&self) -> Modulus {
        self.modulus
    }

    #[inline]
    pub fn mode(&self) -> Mode {
        self.mode
    }

    #[inline]
    pub fn leaders(&self) -> (Residue, Residue) {
        (self.leaders[0], self.leaders[1])
    }

    #[inline]
    pub fn steps(&self) -> &[StepKey] {
        &self.steps
    }

    /// True when no translation/mixing power is repeated anywhere in the
    /// schedule. Not a construction invariant (the degenerate mode repeats 1);
    /// key validation requires distinctness only within each step, while
    /// generation draws globally distinct powers.
    pub fn has_distinct_powers(&self) -> bool {
        let mut seen: Vec<u32> = self.steps.iter().flat_map(|s| s.powers).collect();
        seen.sort_unstable();
        seen.windows(2).all(|w| w[0] != w[1])
    }

    pub fn encrypt(&self, plain: &SymbolStream) -> Result<SymbolStream> {
        Ok(self.encrypt_impl::<false>(plain)?.0)
    }

    /// Encryption plus every intermediate translation and mixing value.
    pub fn encrypt_traced(&self, plain: &SymbolStream) -> Result<(SymbolStream, Trace)> {
        let (out, trace) = self.encrypt_impl::<true>(plain)?;
        Ok((out, trace))
    }

    pub fn decrypt(&self, cipher: &SymbolStream) -> Result<SymbolStream> {
        Ok(self.decrypt_impl::<false>(cipher)?.0)
    }

    /// Decryption plus every intermediate unmixing and translation value.
    pub fn decrypt_traced(&self, cipher: &SymbolStream) -> Result<(SymbolStream, Trace)> {
        let (out, trace) = self.decrypt_impl::<true>(cipher)?;
        Ok((out, trace))
    }

    fn check_stream(&self, stream: &SymbolStream) -> Result<()> {
        if stream.modulus() != self.modulus {
            return Err(Error::ModulusMismatch(self.modulus.n(), stream.modulus().n()));
        }
        if stream.len() % 2 != 0 {
            return Err(Error::OddLength(stream.len()));
        }
        Ok(())
    }

    fn encrypt_impl<const TRACED: bool>(
        &self,
        plain: &SymbolStream,
    ) -> Result<(SymbolStream, Trace)> {
        self.check_stream(plain)?;
        let symbols = plain.symbols();
        let mut out: Vec<Residue> = Vec::with_capacity(symbols.len());
        let mut trace = Trace { steps: Vec::new() };
        for i in 0..symbols.len() / 2 {
            let step = &self.steps[i % self.steps.len()];
            let [a1, a2, a3] = step.powers;
            let leader_odd = match (self.mode, i) {
                (_, 0) => self.leaders[0],
                // previous output pair feeds the next one
                (Mode::Generalized, _) => out[2 * i - 2],
                // classical chain: the immediately preceding output symbol
                (Mode::Markovski, _) => out[2 * i - 1],
            };
            let u_odd = symbols[2 * i];
            let u_even = symbols[2 * i + 1];

            let mut record = StepTrace::default();
            let v_odd = if TRACED {
                let chain = step.g_odd.chain(leader_odd, a1 as i64, u_odd)?;
                record.odd_chain = values_of(&chain);
                *chain.last().expect("power >= 1")
            } else {
                step.g_odd.apply(leader_odd, a1 as i64, u_odd)?
            };

            let leader_even = match self.mode {
                Mode::Generalized => {
                    if i == 0 {
                        self.leaders[1]
                    } else {
                        out[2 * i - 1]
                    }
                }
                Mode::Markovski => v_odd,
            };
            let v_even = if TRACED {
                let chain = step.g_even.chain(leader_even, a2 as i64, u_even)?;
                record.even_chain = values_of(&chain);
                *chain.last().expect("power >= 1")
            } else {
                step.g_even.apply(leader_even, a2 as i64, u_even)?
            };

            let (w_odd, w_even) = match self.mode {
                Mode::Generalized => {
                    let start = Pair::new(v_odd, v_even)?;
                    if TRACED {
                        let chain = step.f.iterate_chain(start, a3 as i64)?;
                        record.f_chain = chain.iter().map(Pair::values).collect();
                        let last = *chain.last().expect("power >= 1");
                        (last.first(), last.second())
                    } else {
                        let mixed = step.f.iterate(start, a3 as i64)?;
                        (mixed.first(), mixed.second())
                    }
                }
                Mode::Markovski => (v_odd, v_even),
            };
            out.push(w_odd);
            out.push(w_even);
            if TRACED {
                trace.steps.push(record);
            }
        }
        Ok((SymbolStream { modulus: self.modulus, symbols: out }, trace))
    }

    fn decrypt_impl<const TRACED: bool>(
        &self,
        cipher: &SymbolStream,
    ) -> Result<(SymbolStream, Trace)> {
        self.check_stream(cipher)?;
        let symbols = cipher.symbols();
        let mut out: Vec<Residue> = Vec::with_capacity(symbols.len());
        let mut trace = Trace { steps: Vec::new() };
        for i in 0..symbols.len() / 2 {
            let step = &self.steps[i % self.steps.len()];
            let [a1, a2, a3] = step.powers;
            let w_odd = symbols[2 * i];
            let w_even = symbols[2 * i + 1];

            let mut record = StepTrace::default();
            let (v_odd, v_even) = match self.mode {
                Mode::Generalized => {
                    let mixed = Pair::new(w_odd, w_even)?;
                    if TRACED {
                        let chain = step.f.iterate_chain(mixed, -(a3 as i64))?;
                        record.f_chain = chain.iter().map(Pair::values).collect();
                        let last = *chain.last().expect("power >= 1");
                        (last.first(), last.second())
                    } else {
                        let plainish = step.f.iterate(mixed, -(a3 as i64))?;
                        (plainish.first(), plainish.second())
                    }
                }
                Mode::Markovski => (w_odd, w_even),
            };

            // Leaders come straight from the ciphertext, which is what makes
            // decryption self-synchronizing.
            let leader_odd = match (self.mode, i) {
                (_, 0) => self.leaders[0],
                (Mode::Generalized, _) => symbols[2 * i - 2],
                (Mode::Markovski, _) => symbols[2 * i - 1],
            };
            let leader_even = match self.mode {
                Mode::Generalized => {
                    if i == 0 {
                        self.leaders[1]
                    } else {
                        symbols[2 * i - 1]
                    }
                }
                Mode::Markovski => w_odd,
            };
            let u_odd = if TRACED {
                let chain = step.g_odd.chain(leader_odd, -(a1 as i64), v_odd)?;
                record.odd_chain = values_of(&chain);
                *chain.last().expect("power >= 1")
            } else {
                step.g_odd.apply(leader_odd, -(a1 as i64), v_odd)?
            };
            let u_even = if TRACED {
                let chain = step.g_even.chain(leader_even, -(a2 as i64), v_even)?;
                record.even_chain = values_of(&chain);
                *chain.last().expect("power >= 1")
            } else {
                step.g_even.apply(leader_even, -(a2 as i64), v_even)?
            };
            out.push(u_odd);
            out.push(u_even);
            if TRACED {
                trace.steps.push(record);
            }
        }
        Ok((SymbolStream { modulus: self.modulus, symbols: out }, trace))
    }

    /// Classical chain v_1 = L_l(u_1), v_i = L_{v_{i-1}}(u_i). Works on any
    /// length, odd included; requires the degenerate mode.
    pub fn encrypt_markovski(&self, plain: &SymbolStream) -> Result<SymbolStream> {
        if self.mode != Mode::Markovski {
            return Err(Error::WrongMode);
        }
        if plain.modulus() != self.modulus {
            return Err(Error::ModulusMismatch(self.modulus.n(), plain.modulus().n()));
        }
        let g = &self.steps[0].g_odd;
        let mut leader = self.leaders[0];
        let mut out = Vec::with_capacity(plain.len());
        for &u in plain.symbols() {
            let v = g.apply(leader, 1, u)?;
            out.push(v);
            leader = v;
        }
        Ok(SymbolStream { modulus: self.modulus, symbols: out })
    }

    /// Inverse of `encrypt_markovski`; leaders are read from the ciphertext.
    pub fn decrypt_markovski(&self, cipher: &SymbolStream) -> Result<SymbolStream> {
        if self.mode != Mode::Markovski {
            return Err(Error::WrongMode);
        }
        if cipher.modulus() != self.modulus {
            return Err(Error::ModulusMismatch(self.modulus.n(), cipher.modulus().n()));
        }
        let g = &self.steps[0].g_odd;
        let mut leader = self.leaders[0];
        let mut out = Vec::with_capacity(cipher.len());
        for &v in cipher.symbols() {
            let u = g.apply(leader, -1, v)?;
            out.push(u);
            leader = v;
        }
        Ok(SymbolStream { modulus: self.modulus, symbols: out })
    }
}

fn values_of(chain: &[Residue]) -> Vec<u64> {
    chain.iter().map(Residue::value).collect()
}

/// A finite sequence of symbols over one modulus.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymbolStream {
    modulus: Modulus,
    symbols: Vec<Residue>,
}

impl SymbolStream {
    pub fn new(modulus: Modulus, symbols: Vec<Residue>) -> Result<Self> {
        for s in &symbols {
            if s.modulus() != modulus {
                return Err(Error::ModulusMismatch(modulus.n(), s.modulus().n()));
            }
        }
        Ok(SymbolStream { modulus, symbols })
    }

    /// Strict: values must already lie in 0..n.
    pub fn from_values(modulus: Modulus, values: &[u64]) -> Result<Self> {
        let mut symbols = Vec::with_capacity(values.len());
        for &v in values {
            if v >= modulus.n() {
                return Err(Error::SymbolOutOfRange { value: v, modulus: modulus.n() });
            }
            symbols.push(modulus.residue(v));
        }
        Ok(SymbolStream { modulus, symbols })
    }

    #[inline]
    pub fn modulus(&self) -> Modulus {
        self.modulus
    }

    #[inline]
    pub fn symbols(&self) -> &[Residue] {
        &self.symbols
    }

    pub fn values(&self) -> Vec<u64> {
        self.symbols.iter().map(Residue::value).collect()
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }
}

impl fmt::Display for SymbolStream {
    /// Renders as "56; 43; 105; …".
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for s in &self.symbols {
            if !first {
                f.write_str("; ")?;
            }
            write!(f, "{}", s.value())?;
            first = false;
        }
        Ok(())
    }
}

/// Intermediates of one processed pair: the two translation chains and the
/// successive mixed pairs, in application order.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct StepTrace {
    pub odd_chain: Vec<u64>,
    pub even_chain: Vec<u64>,
    pub f_chain: Vec<(u64, u64)>,
}

/// Per-pair intermediates for a whole stream.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Trace {
    pub steps: Vec<StepTrace>,
}
