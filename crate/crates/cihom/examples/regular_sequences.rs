//! Building quotient rings A = Q/(f_1..f_c): the constructor certifies
//! that the defining equations form a regular sequence and rejects
//! anything else, and every polynomial in the ideal (f) can be rewritten
//! exactly in terms of the f_j.

use cihom::fp::Fp;
use cihom::monomial::MonomialOrder;
use cihom::parse::{parse_poly_list, parse_polynomial};
use cihom::poly::PolyRing;
use cihom::ring::RingSpec;

fn quadric_ring(f: &str) -> Result<RingSpec, cihom::Error> {
    let poly = PolyRing::new(
        Fp::new(101).unwrap(),
        vec!["x".into(), "y".into(), "z".into()],
        MonomialOrder::Grevlex,
    )
    .unwrap();
    let fs = parse_poly_list(&poly, f, 1).unwrap();
    RingSpec::new(poly, fs)
}

fn main() {
    let ring = quadric_ring("x^2 + y*z, y^2").unwrap();
    println!("accepted: x^2 + y*z, y^2 is a regular sequence");

    // z*f_0 + x*f_1, handed over in expanded form.
    let p = parse_polynomial(ring.poly(), "z*x^2 + z*y*z + x*y^2", 1).unwrap();
    let qs = ring.express_in_f(&p).unwrap();
    for (j, q) in qs.iter().enumerate() {
        println!("  coefficient on f_{j}: {}", ring.poly().format(q));
    }

    for bad in ["x^2, x^2", "x*y, x^2", "x^2, 0"] {
        match quadric_ring(bad) {
            Ok(_) => println!("unexpectedly accepted {bad}"),
            Err(e) => println!("rejected {bad}: {e}"),
        }
    }
}
