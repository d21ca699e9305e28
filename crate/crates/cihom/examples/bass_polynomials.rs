//! Bass numbers of Ext modules along a family grow polynomially: the
//! engine computes the grid, interpolates an exact bivariate polynomial
//! with rational coefficients, and verifies the finite-difference
//! recurrence implied by the family's generating function.

use std::sync::Arc;

use cihom::ext::{ExtCalc, VanishingProbe};
use cihom::fp::Fp;
use cihom::grid::{compute_grid_with, steps_needed, FamilyKind, GridJob, Quantity};
use cihom::module::PresentedModule;
use cihom::monomial::MonomialOrder;
use cihom::parse::parse_poly_list;
use cihom::poly::PolyRing;
use cihom::ring::RingSpec;
use cihom::series::{check_recurrence, fit_bivariate_polynomial, RecurrenceSpec, Region};

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
    calc.ensure(steps_needed(8, 0)).unwrap();
    let mut probe = VanishingProbe::for_depth(&ring).unwrap();
    probe.ensure(2).unwrap();

    for j in 0..=1usize {
        let job = GridJob {
            m: k.clone(),
            family: k.clone(),
            ideal: parse_poly_list(ring.poly(), "x, y", 1).unwrap(),
            kind: FamilyKind::Quot,
            quantity: Quantity::Bass(j),
            grade_ideal: None,
            t: 0,
            n_range: (1, 8),
            i_range: (1, 8),
        };
        let g = compute_grid_with(&job, 1, &calc, Some(&probe)).unwrap();

        let fit = fit_bivariate_polynomial(
            &g,
            Region::new((1, 5), (1, 5)).unwrap(),
            Region::new((6, 8), (6, 8)).unwrap(),
        )
        .unwrap();
        println!("mu_{j}(Ext^(2i)(k,k)) fits degree {:?}:", fit.degree);
        for ((a, b), c) in &fit.coefficients {
            println!("  n^{a} i^{b} coefficient {c}");
        }

        let check = check_recurrence(&g, RecurrenceSpec { c: 2, r: 2 }, (1, 1)).unwrap();
        println!("  recurrence holds from {:?}: {}", check.start, check.holds);
    }
}
