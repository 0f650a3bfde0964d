//! Shared fixtures for the criterion benchmarks.

use std::sync::Arc;

use weylcert::ncalg::{parse_element, AlgebraElement, FamilyInstance};
use weylcert::polycore::{parse_poly, Domain, Poly};
use weylcert::rootsys::{RootSystem, TypeLabel};

pub fn katsura3_mod_32003() -> Vec<Poly> {
    let d = Domain::Mod(32003);
    [
        "v0 + 2*v1 + 2*v2 + 2*v3 - 1",
        "v0^2 + 2*v1^2 + 2*v2^2 + 2*v3^2 - v0",
        "2*v0*v1 + 2*v1*v2 + 2*v2*v3 - v1",
        "v1^2 + 2*v0*v2 + 2*v1*v3 - v2",
    ]
    .iter()
    .map(|s| parse_poly(s, 4, d).unwrap())
    .collect()
}

pub fn weyl_factors() -> (AlgebraElement, AlgebraElement) {
    let fam = FamilyInstance::weyl(2, 0, Domain::Rat);
    let a = parse_element(&fam, "3*x1^2*y1^3 + x2*y2 - 2*y1*y2^2 + 7").unwrap();
    let b = parse_element(&fam, "y1^4*x1^2 - x1*x2^3*y2 + 5*y2^3").unwrap();
    (a, b)
}

pub fn sl2_family() -> Arc<FamilyInstance> {
    let rs = RootSystem::build(TypeLabel::A, 1).unwrap();
    FamilyInstance::enveloping(rs, Domain::Rat).unwrap()
}
