#![no_main]
use libfuzzer_sys::fuzz_target;
use quadbundle::field::parse::{parse_matrix, parse_vector};
use quadbundle::FieldTower;

fuzz_target!(|data: &str| {
    let k = FieldTower::rationals();
    let _ = parse_vector(data, &k);
    let _ = parse_matrix(data, &k);
});
