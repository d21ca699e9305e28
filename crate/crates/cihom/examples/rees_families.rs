//! The three module families indexed by powers of an ideal: N/I^n N,
//! I^n N, and the graded pieces I^n N / I^{n+1} N. Over an Artinian ring
//! the families collapse after finitely many steps.

use std::sync::Arc;

use cihom::fp::Fp;
use cihom::module::{rees_graded_piece, rees_power, rees_quotient, PresentedModule};
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
    let m = parse_poly_list(ring.poly(), "x, y", 1).unwrap();
    let a = PresentedModule::ring_module(ring.clone());

    println!("families over A = F_101[x,y]/(x^2,y^2), N = A, I = (x,y):");
    println!("  n | len N/I^nN | len I^nN | len I^nN/I^(n+1)N");
    for n in 0..=4usize {
        let quot = rees_quotient(&ring, &m, &a, n).unwrap();
        let power = rees_power(&ring, &m, &a, n).unwrap();
        let piece = rees_graded_piece(&ring, &m, &a, n).unwrap();
        println!(
            "  {n} | {:>10} | {:>8} | {:>17}",
            quot.length().unwrap().unwrap(),
            power.length().unwrap().unwrap(),
            piece.length().unwrap().unwrap()
        );
    }

    // Minimal presentations: the n = 1 graded piece is m/m^2, a two
    // dimensional vector space sitting in internal degree one.
    let piece = rees_graded_piece(&ring, &m, &a, 1).unwrap().minimalize().unwrap();
    println!(
        "m/m^2 has {} generators with twists {:?}",
        piece.module.ngens(),
        piece.module.gen_twists()
    );
}
