#![no_main]

use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    // Accepted envelopes must survive an exact serialize/parse round-trip.
    if let Ok(op) = compop_core::io::matrix_from_json(text) {
        let again = compop_core::io::matrix_to_json(&op);
        let back = compop_core::io::matrix_from_json(&again).expect("round trip must parse");
        assert_eq!(back.size(), op.size());
        assert_eq!(back.symbol(), op.symbol());
        assert_eq!(back.entries(), op.entries());
    }
});
