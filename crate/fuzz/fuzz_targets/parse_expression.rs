#![no_main]

use libfuzzer_sys::fuzz_target;
use twistfold_cli::cli_frontend::{parse_expression, print};

fuzz_target!(|data: &[u8]| {
    let Ok(src) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(e) = parse_expression(src) {
        let text = print(&e);
        let back = parse_expression(&text).expect("printed expression reparses");
        assert_eq!(back, e);
    }
});
