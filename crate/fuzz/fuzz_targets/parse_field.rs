#![no_main]
use libfuzzer_sys::fuzz_target;
use quadbundle::field::parse::parse_field;

fuzz_target!(|data: &str| {
    let _ = parse_field(data);
});
