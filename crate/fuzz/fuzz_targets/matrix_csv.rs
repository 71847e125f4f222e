#![no_main]

use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok((n, entries)) = compop_core::io::matrix_from_csv(text) {
        assert_eq!(entries.len(), n * n);
        assert!(entries.iter().all(|c| c.re.is_finite() && c.im.is_finite()));
    }
});
