//! Minimal free resolutions over a complete intersection: Betti numbers
//! grow polynomially, with the growth rate bounded by the number of
//! defining equations.

use std::sync::Arc;

use cihom::fp::Fp;
use cihom::module::PresentedModule;
use cihom::monomial::MonomialOrder;
use cihom::parse::parse_poly_list;
use cihom::poly::PolyRing;
use cihom::resolution::FreeResolution;
use cihom::ring::RingSpec;

fn ring_of(vars: &[&str], f: &[&str]) -> Arc<RingSpec> {
    let poly = PolyRing::new(
        Fp::new(101).unwrap(),
        vars.iter().map(|s| s.to_string()).collect(),
        MonomialOrder::Grevlex,
    )
    .unwrap();
    let fs = parse_poly_list(&poly, &f.join(", "), 1).unwrap();
    Arc::new(RingSpec::new(poly, fs).unwrap())
}

fn main() {
    for (label, ring) in [
        ("one quadric ", ring_of(&["x", "y"], &["x^2"])),
        ("two quadrics", ring_of(&["x", "y"], &["x^2", "y^2"])),
        ("three       ", ring_of(&["x", "y", "z"], &["x^2", "y^2", "z^2"])),
    ] {
        let k = PresentedModule::residue_field(ring.clone());
        let mut res = FreeResolution::new(&k).unwrap();
        res.extend_to(10).unwrap();
        println!("{label}: betti of k = {:?}", res.betti());
    }

    // Twists record the internal degrees of the generators at each step.
    let ring = ring_of(&["x", "y"], &["x^2", "y^2"]);
    let k = PresentedModule::residue_field(ring);
    let mut res = FreeResolution::new(&k).unwrap();
    res.extend_to(4).unwrap();
    for i in 0..=4 {
        println!("F_{i} twists {:?}", res.twists(i));
    }
}
