#![no_main]

use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    let Ok(parsed) = ellreg::formats::spec_document::parse(text) else {
        return;
    };
    // serialization round-trips exactly
    let rendered = ellreg::formats::spec_document::render(&parsed.spec, &parsed.attestations);
    let reparsed = ellreg::formats::spec_document::parse(&rendered).expect("rendered form parses");
    assert_eq!(parsed, reparsed);
    // the digest is canonical and well-formed
    let digest = ellreg::formats::spec_document::digest_hex(&parsed.spec);
    assert_eq!(digest.len(), 64);
    assert_eq!(digest, ellreg::formats::spec_document::digest_hex(&reparsed.spec));
    // the analysis pipeline is total on parsed specs; keep the matrices small
    // so the principal-minor enumeration stays fast under the fuzzer
    if parsed.spec.n() <= 6 {
        let _ = ellreg::classify(&parsed.spec);
        let _ = ellreg::theorem_audit(&parsed.spec, &parsed.attestations);
    }
});
