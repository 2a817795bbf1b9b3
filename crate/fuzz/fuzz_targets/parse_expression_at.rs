#![no_main]

use libfuzzer_sys::fuzz_target;
use twistfold_cli::cli_frontend::parse_expression_at;

fuzz_target!(|data: &[u8]| {
    if data.len() < 2 {
        return;
    }
    let (line, col) = (data[0] as usize + 1, data[1] as usize + 1);
    let Ok(src) = std::str::from_utf8(&data[2..]) else {
        return;
    };
    let _ = parse_expression_at(src, line, col);
});
