//! Depth and grade through vanishing of Ext, cross-checked against the
//! Koszul complex: depth(E) = min{ l : Ext^l(k, E) != 0 } and
//! grade(J, E) = min{ l : Ext^l(A/J, E) != 0 }.

use std::sync::Arc;

use cihom::ext::VanishingProbe;
use cihom::fp::Fp;
use cihom::koszul::koszul_depth;
use cihom::module::PresentedModule;
use cihom::monomial::MonomialOrder;
use cihom::parse::parse_poly_list;
use cihom::poly::PolyRing;
use cihom::ring::RingSpec;

fn main() {
    // A = F_101[x,y,z]/(x^2) has dimension two.
    let poly = PolyRing::new(
        Fp::new(101).unwrap(),
        vec!["x".into(), "y".into(), "z".into()],
        MonomialOrder::Grevlex,
    )
    .unwrap();
    let fs = parse_poly_list(&poly, "x^2", 1).unwrap();
    let ring = Arc::new(RingSpec::new(poly, fs).unwrap());

    let a = Arc::new(PresentedModule::ring_module(ring.clone()));
    let k = Arc::new(PresentedModule::residue_field(ring.clone()));
    let az = Arc::new(
        PresentedModule::quot_by_ideal(ring.clone(), &parse_poly_list(ring.poly(), "z", 1).unwrap())
            .unwrap(),
    );

    let probe = VanishingProbe::for_depth(&ring).unwrap();
    let vars = parse_poly_list(ring.poly(), "x, y, z", 1).unwrap();
    for (name, e) in [("A", &a), ("k", &k), ("A/(z)", &az)] {
        let via_ext = probe.min_index(e).unwrap().unwrap();
        let via_koszul = koszul_depth(e, &vars).unwrap();
        assert_eq!(via_ext, via_koszul);
        println!("depth {name} = {via_ext}");
    }

    // Grade against smaller ideals: J = (y, z) contains a length-two
    // regular sequence on A, but only length one inside (z).
    for j_src in ["z", "y, z"] {
        let j = parse_poly_list(ring.poly(), j_src, 1).unwrap();
        let probe = VanishingProbe::for_grade(&ring, &j).unwrap();
        let via_ext = probe.min_index(&a).unwrap().unwrap();
        assert_eq!(via_ext, koszul_depth(&a, &j).unwrap());
        println!("grade(({j_src}), A) = {via_ext}");
    }
}
