#![no_main]

use libfuzzer_sys::fuzz_target;
use num_integer::Integer;
use num_traits::One;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(q) = ellreg::Rational::parse(text) {
        // canonical invariants: positive denominator, fully reduced
        assert!(q.denom() > &num_bigint::BigInt::ZERO);
        assert!(q.numer().gcd(q.denom()).is_one());
        // display form re-parses to the same value
        let again = ellreg::Rational::parse(&q.to_string()).expect("display parses");
        assert_eq!(q, again);
    }
    let _ = ellreg::ExtRational::parse(text);
});
