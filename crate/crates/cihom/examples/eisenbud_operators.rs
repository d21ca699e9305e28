//! The cohomology operators of a complete intersection: lifting the
//! differential to the polynomial ring and squaring it factors exactly
//! through the defining equations, one operator per equation.

use std::sync::Arc;

use cihom::freemod::{FreeVector, ModuleOrder};
use cihom::fp::Fp;
use cihom::module::PresentedModule;
use cihom::monomial::MonomialOrder;
use cihom::parse::parse_poly_list;
use cihom::poly::PolyRing;
use cihom::resolution::FreeResolution;
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
    let order = ModuleOrder::Pot(ring.poly().order());

    let k = PresentedModule::residue_field(ring.clone());
    let mut res = FreeResolution::new(&k).unwrap();
    res.extend_to(6).unwrap();

    let ops = res.operators(1).unwrap();
    println!(
        "operators at step 1 map F_3 (rank {}) to F_1 (rank {})",
        res.rank(3),
        res.rank(1)
    );
    for (j, block) in ops.reduced.iter().enumerate() {
        println!("t_{j} columns:");
        for col in block {
            println!("  [{}]", col.format(ring.poly(), res.rank(1)));
        }
    }

    // The defining identity, verified column by column: applying the
    // lifted differential twice equals the f-weighted sum of the lifts.
    let polyring = ring.poly();
    for (g, col) in res.diff(3).iter().enumerate() {
        let square = res.apply_lift(2, col).unwrap();
        let mut sum = FreeVector::zero();
        for (j, fj) in ring.f().iter().enumerate() {
            sum = sum.add(
                polyring,
                &order,
                &ops.lifted[j][g].mul_poly(polyring, &order, fj).unwrap(),
            );
        }
        assert_eq!(sum, square);
    }
    println!("d~ d~ = f_0 t~_0 + f_1 t~_1 holds exactly on every column");
}
