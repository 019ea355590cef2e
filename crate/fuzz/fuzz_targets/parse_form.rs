#![no_main]
use libfuzzer_sys::fuzz_target;
use quadbundle::quadform::QuadForm;
use quadbundle::FieldTower;

fuzz_target!(|data: &str| {
    let _ = QuadForm::parse(data, None);
    let _ = QuadForm::parse(data, Some(&FieldTower::rationals()));
});
