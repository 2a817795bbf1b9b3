#![no_main]

use libfuzzer_sys::fuzz_target;
use twistfold_cli::cli_frontend::parse_scenario;

fuzz_target!(|data: &[u8]| {
    let Ok(src) = std::str::from_utf8(data) else {
        return;
    };
    let _ = parse_scenario(src);
});
