#![no_main]
use std::sync::OnceLock;

use libfuzzer_sys::fuzz_target;
use quadbundle::field::parse::{parse_elem, parse_field};
use quadbundle::FieldTower;

fn fields() -> &'static [FieldTower] {
    static FIELDS: OnceLock<Vec<FieldTower>> = OnceLock::new();
    FIELDS.get_or_init(|| {
        ["Q", "Fp:7", "Fun:Fp:5:t", "Ext:Q:5", "Dual:Fp:7", "Fun:Fun:Fp:5:x:y"]
            .iter()
            .map(|d| parse_field(d).unwrap())
            .collect()
    })
}

fuzz_target!(|data: &str| {
    for k in fields() {
        let _ = parse_elem(data, k);
    }
});
