//! Computing Ext^i_A(M, D) as an honest presented module, with its
//! generators' internal degrees and its length, plus the induced operator
//! action that drops the cohomological index by two.

use std::sync::Arc;

use cihom::ext::ExtCalc;
use cihom::fp::Fp;
use cihom::module::PresentedModule;
use cihom::monomial::MonomialOrder;
use cihom::parse::parse_poly_list;
use cihom::poly::PolyRing;
use cihom::ring::RingSpec;

fn main() {
    let poly = PolyRing::new(
        Fp::new(101).unwrap(),
        vec!["x".into(), "y".into()],
        MonomialOrder::Grevlex,
    )
    .unwrap();
    let fs = parse_poly_list(&poly, "x^2, y^2", 1).unwrap();
    let ring = Arc::new(RingSpec::new(poly, fs).unwrap());
    let k = Arc::new(PresentedModule::residue_field(ring.clone()));

    let mut calc = ExtCalc::new(&k).unwrap();
    calc.ensure(7).unwrap();

    println!("Ext^i(k, k) over F_101[x,y]/(x^2, y^2):");
    for i in 0..=6 {
        let e = calc.ext(&k, i).unwrap();
        println!(
            "  i={i}: {} generators, twists {:?}, length {:?}",
            e.value.ngens(),
            e.value.gen_twists(),
            e.value.length().unwrap()
        );
    }

    // Ext into the ring sees only the socle: the ring is self-injective.
    let a = Arc::new(PresentedModule::ring_module(ring.clone()));
    for i in 0..=3 {
        let e = calc.ext(&a, i).unwrap();
        println!("Ext^{i}(k, A) has {} generators", e.value.ngens());
    }

    // The operator action is a map Ext^{i+2} -> Ext^i; over one quadric it
    // is the periodicity isomorphism.
    let t0 = calc.t_action(&k, 0, 2).unwrap();
    println!("t_0: Ext^4(k,k) -> Ext^2(k,k) with {} columns", t0.cols().len());
}
