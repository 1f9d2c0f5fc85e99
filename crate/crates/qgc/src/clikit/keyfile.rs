//! JSON key-file format: serialization, field-precise validation, and
//! deterministic key generation.

use std::fmt;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;
use serde::{Deserialize, Serialize};

use crate::cipher::{KeySchedule, Mode, StepKey, TranslationSpec};
use crate::error::{Error, Result};
use crate::modring::Modulus;
use crate::orthosys::OrthoPair;
use crate::quasigroup::{Parastrophe, TQuasigroup, TranslationKind};

/// On-disk key document. Structurally permissive; `validate` pins down the
/// semantic invariants and `to_schedule` refuses any file that fails one.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct KeyFile {
    pub version: u32,
    pub modulus: u64,
    pub mode: String,
    pub leaders: [u64; 2],
    pub steps: Vec<StepEntry>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StepEntry {
    pub g_odd: QuasigroupEntry,
    pub g_even: QuasigroupEntry,
    pub powers: [u32; 3],
    #[serde(rename = "F")]
    pub f: SystemEntry,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuasigroupEntry {
    pub phi: u64,
    pub psi: u64,
    pub c: u64,
    pub kind: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SystemEntry {
    pub first: ComponentEntry,
    pub second: ComponentEntry,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentEntry {
    pub phi: u64,
    pub psi: u64,
    pub c: u64,
}

pub fn parse_mode(s: &str) -> Option<Mode> {
    match s {
        "generalized" => Some(Mode::Generalized),
        "markovski" => Some(Mode::Markovski),
        _ => None,
    }
}

fn parse_kind(s: &str) -> Option<TranslationKind> {
    match s {
        "L" => Some(TranslationKind::Left),
        "R" => Some(TranslationKind::Right),
        "P" => Some(TranslationKind::Middle),
        _ => None,
    }
}

/// One validation check: where it looked, whether it held, and what it means.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Finding {
    pub path: String,
    pub ok: bool,
    pub message: String,
}

/// Pass/fail lines for every invariant of a key file.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ValidationReport {
    pub findings: Vec<Finding>,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.findings.iter().all(|f| f.ok)
    }

    pub fn first_failure(&self) -> Option<&Finding> {
        self.findings.iter().find(|f| !f.ok)
    }

    fn push(&mut self, path: impl Into<String>, ok: bool, message: impl Into<String>) {
        self.findings.push(Finding { path: path.into(), ok, message: message.into() });
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for finding in &self.findings {
            let tag = if finding.ok { "ok  " } else { "FAIL" };
            writeln!(f, "{tag} {}: {}", finding.path, finding.message)?;
        }
        Ok(())
    }
}

impl KeyFile {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("key file serializes");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<KeyFile> {
        serde_json::from_str(text).map_err(|e| Error::KeyFile(e.to_string()))
    }

    pub fn from_schedule(key: &KeySchedule) -> KeyFile {
        let quasigroup_entry = |spec: &TranslationSpec| {
            let (phi, psi, c) = spec.quasigroup().coefficients();
            QuasigroupEntry { phi, psi, c, kind: spec.kind().label().to_string() }
        };
        let component_entry = |q: &TQuasigroup| {
            let (phi, psi, c) = q.coefficients();
            ComponentEntry { phi, psi, c }
        };
        let steps = key
            .steps()
            .iter()
            .map(|s| StepEntry {
                g_odd: quasigroup_entry(s.g_odd()),
                g_even: quasigroup_entry(s.g_even()),
                powers: s.powers(),
                f: SystemEntry {
                    first: component_entry(s.f().first()),
                    second: component_entry(s.f().second()),
                },
            })
            .collect();
        let (l1, l2) = key.leaders();
        KeyFile {
            version: 1,
            modulus: key.modulus().n(),
            mode: key.mode().label().to_string(),
            leaders: [l1.value(), l2.value()],
            steps,
        }
    }

    /// Checks every invariant and reports each with the field path it lives at.
    pub fn validate(&self) -> ValidationReport {
        let mut report = ValidationReport::default();
        report.push("version", self.version == 1, "file version 1");
        let mode = parse_mode(&self.mode);
        report.push(
            "mode",
            mode.is_some(),
            "one of \"generalized\", \"markovski\"",
        );
        let modulus = match Modulus::new(self.modulus) {
            Ok(m) => {
                report.push("modulus", true, "2 <= n <= 2^31");
                m
            }
            Err(_) => {
                report.push("modulus", false, "2 <= n <= 2^31");
                return report; // nothing below is checkable without a modulus
            }
        };
        let n = modulus.n();

        for (i, l) in self.leaders.iter().enumerate() {
            report.push(format!("leaders[{i}]"), *l < n, format!("residue below {n}"));
        }

        report.push("steps", !self.steps.is_empty(), "at least one step");
        if self.steps.is_empty() {
            return report;
        }

        for (i, step) in self.steps.iter().enumerate() {
            for (name, g) in [("g_odd", &step.g_odd), ("g_even", &step.g_even)] {
                let base = format!("steps[{i}].{name}");
                let unit = |v: u64| v < n && modulus.residue(v).is_unit();
                report.push(format!("{base}.phi"), unit(g.phi), format!("unit modulo {n}"));
                report.push(format!("{base}.psi"), unit(g.psi), format!("unit modulo {n}"));
                report.push(format!("{base}.c"), g.c < n, format!("residue below {n}"));
                report.push(
                    format!("{base}.kind"),
                    parse_kind(&g.kind).is_some(),
                    "one of \"L\", \"R\", \"P\"",
                );
            }
            for (j, p) in step.powers.iter().enumerate() {
                report.push(format!("steps[{i}].powers[{j}]"), *p >= 1, "power >= 1");
            }
            if mode == Some(Mode::Generalized) {
                let distinct = step.powers[0] != step.powers[1]
                    && step.powers[0] != step.powers[2]
                    && step.powers[1] != step.powers[2];
                report.push(
                    format!("steps[{i}].powers"),
                    distinct,
                    "the three powers of a step pairwise distinct",
                );
            }

            let mut components_ok = true;
            for (name, comp) in [("first", &step.f.first), ("second", &step.f.second)] {
                let base = format!("steps[{i}].F.{name}");
                let unit = |v: u64| v < n && modulus.residue(v).is_unit();
                let phi_ok = unit(comp.phi);
                let psi_ok = unit(comp.psi);
                report.push(format!("{base}.phi"), phi_ok, format!("unit modulo {n}"));
                report.push(format!("{base}.psi"), psi_ok, format!("unit modulo {n}"));
                report.push(format!("{base}.c"), comp.c < n, format!("residue below {n}"));
                components_ok &= phi_ok && psi_ok && comp.c < n;
            }
            if components_ok {
                let first = TQuasigroup::from_values(
                    modulus,
                    step.f.first.phi,
                    step.f.first.psi,
                    step.f.first.c,
                )
                .expect("components validated");
                let second = TQuasigroup::from_values(
                    modulus,
                    step.f.second.phi,
                    step.f.second.psi,
                    step.f.second.c,
                )
                .expect("components validated");
                report.push(
                    format!("steps[{i}].F"),
                    OrthoPair::new(first, second).is_ok(),
                    "determinant is a unit (orthogonal system)",
                );
            }
        }

        if mode == Some(Mode::Markovski) {
            let shaped = self.steps.len() == 1
                && self.steps[0].g_odd.kind == "L"
                && self.steps[0].g_even.kind == "L"
                && self.steps[0].powers == [1, 1, 1]
                && (self.steps[0].g_odd.phi, self.steps[0].g_odd.psi, self.steps[0].g_odd.c)
                    == (self.steps[0].g_even.phi, self.steps[0].g_even.psi, self.steps[0].g_even.c);
            report.push(
                "steps",
                shaped,
                "degenerate mode: one step, one quasigroup, left translations, powers 1",
            );
        }

        report
    }

    /// Builds the runnable schedule, refusing files that fail validation.
    pub fn to_schedule(&self) -> Result<KeySchedule> {
        let report = self.validate();
        if let Some(failure) = report.first_failure() {
            return Err(Error::KeyFile(format!("{}: {}", failure.path, failure.message)));
        }
        let modulus = Modulus::new(self.modulus)?;
        let mode = parse_mode(&self.mode).expect("validated");
        let mut steps = Vec::with_capacity(self.steps.len());
        for step in &self.steps {
            let spec = |g: &QuasigroupEntry| -> Result<TranslationSpec> {
                Ok(TranslationSpec::new(
                    TQuasigroup::from_values(modulus, g.phi, g.psi, g.c)?,
                    parse_kind(&g.kind).expect("validated"),
                ))
            };
            let f = OrthoPair::new(
                TQuasigroup::from_values(modulus, step.f.first.phi, step.f.first.psi, step.f.first.c)?,
                TQuasigroup::from_values(
                    modulus,
                    step.f.second.phi,
                    step.f.second.psi,
                    step.f.second.c,
                )?,
            )?;
            steps.push(StepKey::new(spec(&step.g_odd)?, spec(&step.g_even)?, step.powers, f)?);
        }
        KeySchedule::new(
            mode,
            (modulus.residue(self.leaders[0]), modulus.residue(self.leaders[1])),
            steps,
        )
    }
}

const KEYGEN_ATTEMPTS: u32 = 100_000;
const POWER_POOL: u32 = 16;

fn sample_passing_quasigroup(rng: &mut ChaCha20Rng, modulus: Modulus) -> Result<TQuasigroup> {
    let n = modulus.n();
    for _ in 0..KEYGEN_ATTEMPTS {
        let q = TQuasigroup::from_values(
            modulus,
            rng.gen_range(1..n),
            rng.gen_range(1..n),
            rng.gen_range(0..n),
        )?;
        if q.ortho_criteria()?.all_pass() {
            return Ok(q);
        }
    }
    Err(Error::InfeasibleConstraints(format!(
        "no coefficient pair modulo {n} passes all eight conditions"
    )))
}

fn sample_system(rng: &mut ChaCha20Rng, modulus: Modulus) -> Result<OrthoPair> {
    let base = sample_passing_quasigroup(rng, modulus)?;
    let sigma = if rng.gen_bool(0.5) { Parastrophe::S13 } else { Parastrophe::S23 };
    OrthoPair::from_parastrophe(base, sigma)
}

/// Deterministic key generation: every quasigroup passes the eight-condition
/// check, every system is orthogonal, and all powers across the schedule are
/// pairwise distinct, drawn from 1..=16.
pub fn keygen(seed: u64, p: u64, steps: usize, mode: Mode) -> Result<KeyFile> {
    let modulus = Modulus::new(p)?;
    if !modulus.is_prime() {
        return Err(Error::CompositeModulus(p));
    }
    if steps == 0 {
        return Err(Error::InfeasibleConstraints("need at least one step".into()));
    }
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    let n = modulus.n();

    let entries = match mode {
        Mode::Markovski => {
            if steps != 1 {
                return Err(Error::InfeasibleConstraints(
                    "degenerate mode uses exactly one step".into(),
                ));
            }
            let g = sample_passing_quasigroup(&mut rng, modulus)?;
            let f = sample_system(&mut rng, modulus)?;
            let (phi, psi, c) = g.coefficients();
            let entry = QuasigroupEntry { phi, psi, c, kind: "L".into() };
            vec![StepEntry {
                g_odd: entry.clone(),
                g_even: entry,
                powers: [1, 1, 1],
                f: system_entry(&f),
            }]
        }
        Mode::Generalized => {
            let needed = steps * 3;
            if needed > POWER_POOL as usize {
                return Err(Error::InfeasibleConstraints(format!(
                    "{steps} steps need {needed} pairwise distinct powers from 1..={POWER_POOL}"
                )));
            }
            let mut pool: Vec<u32> = (1..=POWER_POOL).collect();
            pool.shuffle(&mut rng);
            let mut entries = Vec::with_capacity(steps);
            for i in 0..steps {
                let g_odd = sample_passing_quasigroup(&mut rng, modulus)?;
                let g_even = sample_passing_quasigroup(&mut rng, modulus)?;
                let kind = |rng: &mut ChaCha20Rng| if rng.gen_bool(0.5) { "L" } else { "R" };
                let kind_odd = kind(&mut rng).to_string();
                let kind_even = kind(&mut rng).to_string();
                let f = sample_system(&mut rng, modulus)?;
                let (phi, psi, c) = g_odd.coefficients();
                let odd = QuasigroupEntry { phi, psi, c, kind: kind_odd };
                let (phi, psi, c) = g_even.coefficients();
                let even = QuasigroupEntry { phi, psi, c, kind: kind_even };
                entries.push(StepEntry {
                    g_odd: odd,
                    g_even: even,
                    powers: [pool[3 * i], pool[3 * i + 1], pool[3 * i + 2]],
                    f: system_entry(&f),
                });
            }
            entries
        }
    };

    Ok(KeyFile {
        version: 1,
        modulus: n,
        mode: mode.label().to_string(),
        leaders: [rng.gen_range(0..n), rng.gen_range(0..n)],
        steps: entries,
    })
}

fn system_entry(f: &OrthoPair) -> SystemEntry {
    let comp = |q: &TQuasigroup| {
        let (phi, psi, c) = q.coefficients();
        ComponentEntry { phi, psi, c }
    };
    SystemEntry { first: comp(f.first()), second: comp(f.second()) }
}
