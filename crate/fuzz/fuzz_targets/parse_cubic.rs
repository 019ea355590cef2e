#![no_main]
use libfuzzer_sys::fuzz_target;
use quadbundle::cubicbundle::CubicContainingPlane;
use quadbundle::FieldTower;

fuzz_target!(|data: &str| {
    let _ = CubicContainingPlane::parse(data, &FieldTower::rationals());
    if let Ok(k) = FieldTower::prime(7) {
        let _ = CubicContainingPlane::parse(data, &k);
    }
});
