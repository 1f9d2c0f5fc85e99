//! Built-in demonstration key and a fully checked end-to-end walkthrough.

use std::fmt::Write as _;

use crate::cipher::{KeySchedule, Mode, StepKey, StepTrace, SymbolStream, Trace, TranslationSpec};
use crate::clikit::keyfile::KeyFile;
use crate::modring::Modulus;
use crate::orthosys::OrthoPair;
use crate::quasigroup::{TQuasigroup, TranslationKind};

/// The built-in three-step demonstration key over Z_313.
pub fn demo_schedule() -> KeySchedule {
    let m = Modulus::new(313).unwrap();
    let q = |phi, psi, c| TQuasigroup::from_values(m, phi, psi, c).unwrap();
    let steps = vec![
        StepKey::new(
            TranslationSpec::new(q(25, 37, 11), TranslationKind::Right),
            TranslationSpec::new(q(75, 39, 100), TranslationKind::Left),
            [3, 1, 2],
            OrthoPair::new(q(7, 12, 13), q(182, 287, 25)).unwrap(),
        )
        .unwrap(),
        StepKey::new(
            TranslationSpec::new(q(127, 213, 19), TranslationKind::Left),
            TranslationSpec::new(q(151, 301, 199), TranslationKind::Right),
            [1, 3, 2],
            OrthoPair::new(q(79, 113, 23), q(27, 277, 202)).unwrap(),
        )
        .unwrap(),
        StepKey::new(
            TranslationSpec::new(q(213, 3, 9), TranslationKind::Right),
            TranslationSpec::new(q(303, 200, 99), TranslationKind::Left),
            [3, 2, 1],
            OrthoPair::new(q(81, 101, 99), q(228, 134, 277)).unwrap(),
        )
        .unwrap(),
    ];
    KeySchedule::new(Mode::Generalized, (m.residue(110), m.residue(210)), steps).unwrap()
}

pub fn demo_keyfile() -> KeyFile {
    KeyFile::from_schedule(&demo_schedule())
}

/// The plaintext the walkthrough runs on.
pub const DEMO_PLAINTEXT: [u64; 6] = [56, 43, 105, 59, 61, 19];
/// The ciphertext the walkthrough must produce.
pub const DEMO_CIPHERTEXT: [u64; 6] = [130, 44, 152, 282, 115, 118];

fn expected_encrypt_trace() -> Trace {
    Trace {
        steps: vec![
            StepTrace {
                odd_chain: vec![160, 256, 152],
                even_chain: vec![312],
                f_chain: vec![(126, 171), (130, 44)],
            },
            StepTrace {
                odd_chain: vec![82],
                even_chain: vec![129, 57, 140],
                f_chain: vec![(98, 193), (152, 282)],
            },
            StepTrace {
                odd_chain: vec![312, 252, 305],
                even_chain: vec![140, 239],
                f_chain: vec![(115, 118)],
            },
        ],
    }
}

fn expected_decrypt_trace() -> Trace {
    Trace {
        steps: vec![
            StepTrace {
                odd_chain: vec![256, 160, 56],
                even_chain: vec![43],
                f_chain: vec![(126, 171), (152, 312)],
            },
            StepTrace {
                odd_chain: vec![105],
                even_chain: vec![57, 129, 59],
                f_chain: vec![(98, 193), (82, 140)],
            },
            StepTrace {
                odd_chain: vec![252, 312, 61],
                even_chain: vec![140, 19],
                f_chain: vec![(305, 239)],
            },
        ],
    }
}

/// Transcript of the walkthrough plus whether every value matched.
#[derive(Debug, Clone)]
pub struct DemoReport {
    pub transcript: String,
    pub ok: bool,
}

fn chain_line(values: &[u64]) -> String {
    values.iter().map(u64::to_string).collect::<Vec<_>>().join(", ")
}

fn pair_line(pairs: &[(u64, u64)]) -> String {
    pairs
        .iter()
        .map(|(a, b)| format!("({a}, {b})"))
        .collect::<Vec<_>>()
        .join(", ")
}

/// Runs the built-in key over the fixed plaintext, printing every
/// intermediate translation and mixing value, and checks the whole transcript
/// against the expected numbers.
pub fn run_demo() -> DemoReport {
    let key = demo_schedule();
    let m = key.modulus();
    let plain = SymbolStream::from_values(m, &DEMO_PLAINTEXT).unwrap();

    let mut out = String::new();
    let mut mismatches: Vec<String> = Vec::new();

    writeln!(out, "leader-chained pair cipher walkthrough (modulus {})", m.n()).unwrap();
    writeln!(out).unwrap();
    let (l1, l2) = key.leaders();
    writeln!(out, "leaders: {}, {}", l1.value(), l2.value()).unwrap();
    for (i, step) in key.steps().iter().enumerate() {
        let [a1, a2, a3] = step.powers();
        writeln!(
            out,
            "step {} key: odd {:?} {}-kind ^{a1}; even {:?} {}-kind ^{a2}; mix {:?}/{:?} ^{a3}",
            i + 1,
            step.g_odd().quasigroup().coefficients(),
            step.g_odd().kind(),
            step.g_even().quasigroup().coefficients(),
            step.g_even().kind(),
            step.f().first().coefficients(),
            step.f().second().coefficients(),
        )
        .unwrap();
    }
    writeln!(out).unwrap();
    writeln!(out, "plaintext: {plain}").unwrap();
    writeln!(out).unwrap();

    let (cipher, enc_trace) = key.encrypt_traced(&plain).unwrap();
    for (i, s) in enc_trace.steps.iter().enumerate() {
        writeln!(
            out,
            "encrypt step {}: odd chain {} | even chain {} | mix chain {}",
            i + 1,
            chain_line(&s.odd_chain),
            chain_line(&s.even_chain),
            pair_line(&s.f_chain),
        )
        .unwrap();
    }
    writeln!(out).unwrap();

    let (back, dec_trace) = key.decrypt_traced(&cipher).unwrap();
    for (i, s) in dec_trace.steps.iter().enumerate() {
        writeln!(
            out,
            "decrypt step {}: unmix chain {} | odd chain {} | even chain {}",
            i + 1,
            pair_line(&s.f_chain),
            chain_line(&s.odd_chain),
            chain_line(&s.even_chain),
        )
        .unwrap();
    }
    writeln!(out).unwrap();

    if cipher.values() != DEMO_CIPHERTEXT {
        mismatches.push(format!("ciphertext came out as {cipher}"));
    }
    if back != plain {
        mismatches.push(format!("round trip came out as {back}"));
    }
    if enc_trace != expected_encrypt_trace() {
        mismatches.push("encryption intermediates deviate from the expected chains".into());
    }
    if dec_trace != expected_decrypt_trace() {
        mismatches.push("decryption intermediates deviate from the expected chains".into());
    }

    for msg in &mismatches {
        writeln!(out, "MISMATCH: {msg}").unwrap();
    }
    let ok = mismatches.is_empty();
    writeln!(out, "ciphertext: {cipher}").unwrap();
    writeln!(out, "recovered plaintext: {back}").unwrap();
    writeln!(out, "round trip: {}", if ok { "ok" } else { "FAILED" }).unwrap();

    DemoReport { transcript: out, ok }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn walkthrough_is_clean() {
        let report = run_demo();
        assert!(report.ok, "{}", report.transcript);
        assert!(report.transcript.contains("130; 44; 152; 282; 115; 118"));
        assert!(report.transcript.contains("56; 43; 105; 59; 61; 19"));
    }

    #[test]
    fn demo_key_golden_vector() {
        let key = demo_schedule();
        let plain = SymbolStream::from_values(key.modulus(), &DEMO_PLAINTEXT).unwrap();
        let cipher = key.encrypt(&plain).unwrap();
        assert_eq!(cipher.values(), DEMO_CIPHERTEXT);
        assert_eq!(key.decrypt(&cipher).unwrap(), plain);
    }

    #[test]
    fn demo_key_survives_serialization() {
        let file = demo_keyfile();
        let schedule = file.to_schedule().unwrap();
        let plain = SymbolStream::from_values(schedule.modulus(), &DEMO_PLAINTEXT).unwrap();
        assert_eq!(schedule.encrypt(&plain).unwrap().values(), DEMO_CIPHERTEXT);
    }
}
