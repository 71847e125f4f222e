#![no_main]

use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok((name, value)) = compop_core::io::parse_tol_spec(text) {
        assert!(!name.is_empty());
        assert!(value.is_finite() && value >= 0.0);
    }
});
