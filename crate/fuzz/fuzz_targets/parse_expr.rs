#![no_main]
use libfuzzer_sys::fuzz_target;
use quadbundle::field::parse::parse_expr;

fuzz_target!(|data: &str| {
    let _ = parse_expr(data);
});
