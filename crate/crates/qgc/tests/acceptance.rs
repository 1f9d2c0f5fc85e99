//! Acceptance suite: ten end-to-end criteria, one pass/fail line each.
//! All tolerances and sample counts are pinned as constants below.

use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;

use qgc::clikit::{self, demo_schedule, Codec};
use qgc::verify::{cancellation_check, ortho_bruteforce, translation_table_check};
use qgc::{
    KeySchedule, Mode, Modulus, OrthoPair, Pair, Parastrophe, StepKey, SymbolStream, TQuasigroup,
    TranslationKind, TranslationSpec,
};

const GOLDEN_TIME_LIMIT: Duration = Duration::from_millis(1);
const ORACLE_TIME_LIMIT: Duration = Duration::from_secs(60);
const THROUGHPUT_TIME_LIMIT: Duration = Duration::from_secs(5);
const THROUGHPUT_BYTES: usize = 1 << 20;
const INVERSE_SAMPLES: usize = 1000;
const ROUNDTRIP_SCHEDULES: usize = 1000;
const ROUNDTRIP_MAX_LEN: usize = 10_000;
const MARKOVSKI_STREAMS: usize = 500;
const TABLE_SAMPLES_PER_MODULUS: usize = 200;

const PLAINTEXT: [u64; 6] = [56, 43, 105, 59, 61, 19];
const CIPHERTEXT: [u64; 6] = [130, 44, 152, 282, 115, 118];

fn verdict(number: u32, label: &str, ok: bool) {
    println!("{} criterion {number}: {label}", if ok { "PASS" } else { "FAIL" });
    assert!(ok, "criterion {number} ({label}) failed");
}

fn z(n: u64) -> Modulus {
    Modulus::new(n).unwrap()
}

fn q(n: u64, phi: u64, psi: u64, c: u64) -> TQuasigroup {
    TQuasigroup::from_values(z(n), phi, psi, c).unwrap()
}

#[test]
fn criterion_01_golden_vector() {
    let key = demo_schedule();
    let plain = SymbolStream::from_values(key.modulus(), &PLAINTEXT).unwrap();

    let started = Instant::now();
    let cipher = key.encrypt(&plain).unwrap();
    let back = key.decrypt(&cipher).unwrap();
    let elapsed = started.elapsed();

    let ok = cipher.values() == CIPHERTEXT && back == plain && elapsed < GOLDEN_TIME_LIMIT;
    verdict(1, "golden vector encrypts and inverts bit-exactly under 1 ms", ok);
}

#[test]
fn criterion_02_intermediate_trace() {
    let key = demo_schedule();
    let plain = SymbolStream::from_values(key.modulus(), &PLAINTEXT).unwrap();
    let (cipher, trace) = key.encrypt_traced(&plain).unwrap();

    let expected: [(&[u64], &[u64], &[(u64, u64)]); 3] = [
        (&[160, 256, 152], &[312], &[(126, 171), (130, 44)]),
        (&[82], &[129, 57, 140], &[(98, 193), (152, 282)]),
        (&[312, 252, 305], &[140, 239], &[(115, 118)]),
    ];
    let mut ok = cipher.values() == CIPHERTEXT && trace.steps.len() == expected.len();
    for (got, want) in trace.steps.iter().zip(expected.iter()) {
        ok &= got.odd_chain == want.0 && got.even_chain == want.1 && got.f_chain == want.2;
    }
    verdict(2, "trace reproduces every intermediate value bit-exactly", ok);
}

#[test]
fn criterion_03_parastrophe_constants() {
    let cases = [
        (q(313, 25, 37, 11), Parastrophe::S13, (288, 299, 275)),
        (q(313, 75, 39, 100), Parastrophe::S23, (287, 305, 174)),
        (q(313, 127, 213, 19), Parastrophe::S23, (67, 241, 116)),
        (q(313, 151, 301, 199), Parastrophe::S13, (199, 197, 150)),
        (q(313, 213, 3, 9), Parastrophe::S13, (241, 216, 22)),
        (q(313, 303, 200, 99), Parastrophe::S23, (47, 36, 192)),
    ];
    let ok = cases
        .iter()
        .all(|(g, sigma, want)| g.parastrophe(*sigma).coefficients() == *want);
    verdict(3, "all six derived operation triples match", ok);
}

#[test]
fn criterion_04_inverse_coefficients() {
    let m = z(313);
    // (system, printed inverse rows (ea, eb, f) for each output coordinate)
    let cases = [
        (
            OrthoPair::new(q(313, 7, 12, 13), q(313, 182, 287, 25)).unwrap(),
            [(86, 136, 177), (289, 25, 0)],
        ),
        (
            OrthoPair::new(q(313, 79, 113, 23), q(313, 27, 277, 202)).unwrap(),
            [(216, 52, 178), (162, 152, 0)],
        ),
        (
            OrthoPair::new(q(313, 81, 101, 99), q(313, 228, 134, 277)).unwrap(),
            [(42, 272, 0), (50, 287, 61)],
        ),
    ];
    let mut rng = ChaCha20Rng::seed_from_u64(4);
    let mut ok = true;
    for (system, rows) in &cases {
        for _ in 0..INVERSE_SAMPLES {
            let a = rng.gen_range(0..313u64);
            let b = rng.gen_range(0..313u64);
            let got = system.inverse(Pair::new(m.residue(a), m.residue(b)).unwrap()).unwrap();
            let by_formula = |(ea, eb, f): (u64, u64, u64)| (ea * a + eb * b + f) % 313;
            ok &= got.values() == (by_formula(rows[0]), by_formula(rows[1]));
        }
    }
    verdict(4, "closed-form inverses match the printed formulas on random pairs", ok);
}

#[test]
fn criterion_05_predicate_equals_oracles() {
    let started = Instant::now();
    let mut disagreements = 0u32;
    for n in [3u64, 5, 7, 11] {
        let m = z(n);
        for phi in m.units() {
            for psi in m.units() {
                for c in [0u64, 1] {
                    let g = TQuasigroup::new(phi, psi, m.residue(c)).unwrap();
                    for sigma in Parastrophe::PROPER {
                        let predicate = g.ortho_to_parastrophe(sigma).unwrap();
                        let brute = ortho_bruteforce(&g, &g.parastrophe(sigma)).unwrap();
                        let cancel = cancellation_check(&g, sigma).unwrap();
                        if predicate != brute || predicate != cancel {
                            disagreements += 1;
                        }
                    }
                }
            }
        }
    }
    let elapsed = started.elapsed();
    let ok = disagreements == 0 && elapsed < ORACLE_TIME_LIMIT;
    verdict(5, "coefficient predicate = brute force = cancellation identities", ok);
}

#[test]
fn criterion_06_criteria_soundness() {
    let mut passing = 0u32;
    let mut counterexamples = 0u32;
    for n in [5u64, 7, 11] {
        let m = z(n);
        for phi in m.units() {
            for psi in m.units() {
                for c in m.elements() {
                    let g = TQuasigroup::new(phi, psi, c).unwrap();
                    if !g.ortho_criteria().unwrap().all_pass() {
                        continue;
                    }
                    passing += 1;
                    for sigma in Parastrophe::PROPER {
                        if !ortho_bruteforce(&g, &g.parastrophe(sigma)).unwrap() {
                            counterexamples += 1;
                        }
                    }
                }
            }
        }
    }
    let ok = passing > 0 && counterexamples == 0;
    verdict(6, "every eight-condition pass is brute-force orthogonal to all five", ok);
}

#[test]
fn criterion_07_translation_table() {
    let mut rng = ChaCha20Rng::seed_from_u64(7);
    let mut failures = 0u32;
    for n in [5u64, 7, 11, 13] {
        let m = z(n);
        let units: Vec<u64> = m.units().map(|r| r.value()).collect();
        for _ in 0..TABLE_SAMPLES_PER_MODULUS {
            let phi = units[rng.gen_range(0..units.len())];
            let psi = units[rng.gen_range(0..units.len())];
            let c = rng.gen_range(0..n);
            if !translation_table_check(&q(n, phi, psi, c)).unwrap() {
                failures += 1;
            }
        }
    }
    verdict(7, "all 36 translation/parastrophe cells hold on random quasigroups", failures == 0);
}

/// Random schedule over Z_313 exercising all three translation kinds and
/// repeat-friendly powers (the cipher layer allows repeats).
fn random_schedule(rng: &mut ChaCha20Rng) -> KeySchedule {
    let m = z(313);
    let unit = |rng: &mut ChaCha20Rng| rng.gen_range(1..313u64);
    let kind = |rng: &mut ChaCha20Rng| match rng.gen_range(0..3u8) {
        0 => TranslationKind::Left,
        1 => TranslationKind::Right,
        _ => TranslationKind::Middle,
    };
    let quasigroup = |rng: &mut ChaCha20Rng| {
        TQuasigroup::from_values(m, unit(rng), unit(rng), rng.gen_range(0..313)).unwrap()
    };
    let system = |rng: &mut ChaCha20Rng| loop {
        if let Ok(f) = OrthoPair::new(quasigroup(rng), quasigroup(rng)) {
            return f;
        }
    };
    let steps = (0..rng.gen_range(1..=4usize))
        .map(|_| {
            StepKey::new(
                TranslationSpec::new(quasigroup(rng), kind(rng)),
                TranslationSpec::new(quasigroup(rng), kind(rng)),
                [rng.gen_range(1..=8), rng.gen_range(1..=8), rng.gen_range(1..=8)],
                system(rng),
            )
            .unwrap()
        })
        .collect();
    KeySchedule::new(
        Mode::Generalized,
        (m.residue(rng.gen_range(0..313)), m.residue(rng.gen_range(0..313))),
        steps,
    )
    .unwrap()
}

#[test]
fn criterion_08_roundtrip() {
    let mut rng = ChaCha20Rng::seed_from_u64(8);
    let m = z(313);
    let mut ok = true;

    for i in 0..ROUNDTRIP_SCHEDULES {
        let key = random_schedule(&mut rng);
        let len = if i % 100 == 0 { ROUNDTRIP_MAX_LEN } else { rng.gen_range(0..=300) * 2 };
        let values: Vec<u64> = (0..len).map(|_| rng.gen_range(0..313)).collect();
        let plain = SymbolStream::from_values(m, &values).unwrap();
        let cipher = key.encrypt(&plain).unwrap();
        ok &= key.decrypt(&cipher).unwrap() == plain;
    }

    // exhaustive over all length-4 streams at n=5 under one fixed schedule
    let m5 = z(5);
    let step = StepKey::new(
        TranslationSpec::new(q(5, 2, 3, 1), TranslationKind::Right),
        TranslationSpec::new(q(5, 3, 2, 4), TranslationKind::Middle),
        [1, 2, 3],
        OrthoPair::new(q(5, 1, 1, 0), q(5, 1, 4, 0)).unwrap(),
    )
    .unwrap();
    let key5 =
        KeySchedule::new(Mode::Generalized, (m5.residue(3), m5.residue(2)), vec![step]).unwrap();
    for idx in 0..5u64.pow(4) {
        let values = [idx % 5, (idx / 5) % 5, (idx / 25) % 5, (idx / 125) % 5];
        let plain = SymbolStream::from_values(m5, &values).unwrap();
        let cipher = key5.encrypt(&plain).unwrap();
        ok &= key5.decrypt(&cipher).unwrap() == plain;
    }

    verdict(8, "decrypt inverts encrypt on random schedules and exhaustively at n=5", ok);
}

#[test]
fn criterion_09_markovski_degeneration() {
    let file = clikit::keygen(9, 313, 1, Mode::Markovski).unwrap();
    let key = file.to_schedule().unwrap();
    let m = key.modulus();
    let mut rng = ChaCha20Rng::seed_from_u64(99);
    let mut ok = true;
    for _ in 0..MARKOVSKI_STREAMS {
        let len = rng.gen_range(0..=200usize) * 2;
        let values: Vec<u64> = (0..len).map(|_| rng.gen_range(0..313)).collect();
        let plain = SymbolStream::from_values(m, &values).unwrap();
        let dedicated = key.encrypt_markovski(&plain).unwrap();
        let general = key.encrypt(&plain).unwrap();
        ok &= dedicated == general;
        ok &= key.decrypt_markovski(&dedicated).unwrap() == plain;
    }
    verdict(9, "dedicated classical path equals the pair path on the degenerate key", ok);
}

#[test]
fn criterion_10_throughput() {
    let key = demo_schedule();
    let codec = Codec::new(key.modulus()).unwrap();
    let mut rng = ChaCha20Rng::seed_from_u64(10);
    let bytes: Vec<u8> = (0..THROUGHPUT_BYTES).map(|_| rng.gen()).collect();
    let plain = codec.encode(&bytes);

    let started = Instant::now();
    let cipher = key.encrypt(&plain).unwrap();
    let elapsed = started.elapsed();

    let ok = cipher.len() == plain.len() && elapsed < THROUGHPUT_TIME_LIMIT;
    verdict(10, "1 MiB encrypts in under 5 s", ok);
}
