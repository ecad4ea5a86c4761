#![no_main]

use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    let Ok(cert) = ellreg::formats::certificate_document::parse(text) else {
        return;
    };
    let rendered = ellreg::formats::certificate_document::render(&cert);
    let reparsed =
        ellreg::formats::certificate_document::parse(&rendered).expect("rendered form parses");
    assert_eq!(cert, reparsed);
});
