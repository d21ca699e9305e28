//! Groebner bases over F_p: reduced bases, normal forms, and ideal
//! membership for plain polynomial ideals.

use cihom::freemod::{poly_to_vec, vec_to_poly, ModuleOrder};
use cihom::fp::Fp;
use cihom::groebner::{buchberger, nf};
use cihom::monomial::MonomialOrder;
use cihom::parse::{parse_poly_list, parse_polynomial};
use cihom::poly::PolyRing;

fn main() {
    let ring = PolyRing::new(
        Fp::new(101).unwrap(),
        vec!["x".into(), "y".into(), "z".into()],
        MonomialOrder::Grevlex,
    )
    .unwrap();
    let order = ModuleOrder::Pot(ring.order());

    // The twisted cubic: the reduced basis is independent of input order.
    let gens = parse_poly_list(&ring, "x*y - z^2, y^2 - x*z, x^2*z - y*z^2", 1).unwrap();
    let inputs: Vec<_> = gens.iter().map(|p| poly_to_vec(&ring, &order, p, 0)).collect();
    let basis = buchberger(&ring, &order, &inputs, false).unwrap().gens;

    println!("reduced basis:");
    for b in &basis {
        println!("  {}", ring.format(&vec_to_poly(&ring, b)));
    }

    for probe in ["x^2*z - y*z^2", "x^3 - x*y*z", "x + y"] {
        let p = parse_polynomial(&ring, probe, 1).unwrap();
        let v = poly_to_vec(&ring, &order, &p, 0);
        let r = nf(&ring, &order, &v, &basis).unwrap();
        if r.is_zero() {
            println!("{probe}  lies in the ideal");
        } else {
            println!("{probe}  has normal form {}", ring.format(&vec_to_poly(&ring, &r)));
        }
    }
}
