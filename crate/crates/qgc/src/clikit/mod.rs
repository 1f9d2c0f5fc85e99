//! Key-file format, byte/symbol codecs, and the built-in demo walkthrough.

pub mod codec;
pub mod demo;
pub mod keyfile;

pub use codec::{format_text, from_binary, parse_text, to_binary, Codec};
pub use demo::{demo_keyfile, demo_schedule, run_demo, DemoReport};
pub use keyfile::{keygen, parse_mode, Finding, KeyFile, ValidationReport};
