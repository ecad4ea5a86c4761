//! Deterministic byte-mutation sweep over the document parsers: whatever the
//! input, parsing returns a result instead of panicking, and accepted inputs
//! round-trip.

use ellreg::formats::{certificate_document, spec_document};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

const SPEC_SEED: &str = "\
n: 3
d: 3
kind: h01
p: 0 3/5 3/5
p: 3/5 0 3/5
p: 3/5 3/5 0
r: 1 1 1
theta: 2
attestations: superlinearity lower_bound
";

fn mutate(rng: &mut StdRng, base: &str) -> Vec<u8> {
    let mut bytes = base.as_bytes().to_vec();
    for _ in 0..rng.random_range(1..8) {
        match rng.random_range(0..4) {
            0 if !bytes.is_empty() => {
                let i = rng.random_range(0..bytes.len());
                bytes[i] = rng.random_range(0..=255);
            }
            1 if !bytes.is_empty() => {
                let i = rng.random_range(0..bytes.len());
                bytes.remove(i);
            }
            2 => {
                let i = rng.random_range(0..=bytes.len());
                bytes.insert(i, rng.random_range(0..=255));
            }
            _ if bytes.len() >= 2 => {
                let i = rng.random_range(0..bytes.len() - 1);
                bytes.swap(i, i + 1);
            }
            _ => {}
        }
    }
    bytes
}

#[test]
fn spec_parser_survives_mutations() {
    let mut rng = StdRng::seed_from_u64(0xF0);
    let mut accepted = 0usize;
    for _ in 0..20_000 {
        let bytes = mutate(&mut rng, SPEC_SEED);
        let Ok(text) = std::str::from_utf8(&bytes) else {
            continue;
        };
        if let Ok(parsed) = spec_document::parse(text) {
            accepted += 1;
            let rendered = spec_document::render(&parsed.spec, &parsed.attestations);
            assert_eq!(spec_document::parse(&rendered).unwrap(), parsed);
        }
    }
    // most mutations must be rejected, but a few survive (comment edits etc.)
    assert!(accepted < 20_000);
}

#[test]
fn certificate_parser_survives_mutations() {
    let parsed = spec_document::parse("n: 1\nd: 3\nkind: l1\np: 2\nr: 0\n").unwrap();
    let cert =
        ellreg::generate_certificate(&parsed.spec, &ellreg::CertifyConfig::default()).unwrap();
    let base = certificate_document::render(&cert);
    let mut rng = StdRng::seed_from_u64(0xF1);
    for _ in 0..20_000 {
        let bytes = mutate(&mut rng, &base);
        let Ok(text) = std::str::from_utf8(&bytes) else {
            continue;
        };
        if let Ok(c) = certificate_document::parse(text) {
            let rendered = certificate_document::render(&c);
            assert_eq!(certificate_document::parse(&rendered).unwrap(), c);
        }
    }
}

#[test]
fn rational_parser_survives_mutations() {
    let mut rng = StdRng::seed_from_u64(0xF2);
    for base in ["3/5", "-16105100000/7", "inf", "0"] {
        for _ in 0..5_000 {
            let bytes = mutate(&mut rng, base);
            if let Ok(text) = std::str::from_utf8(&bytes) {
                let _ = ellreg::Rational::parse(text);
                let _ = ellreg::ExtRational::parse(text);
            }
        }
    }
}
