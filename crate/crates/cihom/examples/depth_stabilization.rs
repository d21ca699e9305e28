//! Depth of Ext^{2i+t}(M, N/I^nN) as a two-parameter grid: the values
//! become constant in the upper-right corner, and the detector finds the
//! onset and certifies a margin.

use std::sync::Arc;

use cihom::ext::{ExtCalc, VanishingProbe};
use cihom::fp::Fp;
use cihom::grid::{
    compute_grid_with, detect_stabilization, steps_needed, FamilyKind, GridJob, Quantity,
};
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
    let a = Arc::new(PresentedModule::ring_module(ring.clone()));

    let job = GridJob {
        m: k.clone(),
        family: a,
        ideal: parse_poly_list(ring.poly(), "x, y", 1).unwrap(),
        kind: FamilyKind::Quot,
        quantity: Quantity::Depth,
        grade_ideal: None,
        t: 0,
        n_range: (1, 6),
        i_range: (1, 6),
    };
    let mut calc = ExtCalc::new(&k).unwrap();
    calc.ensure(steps_needed(6, 0)).unwrap();
    let probe = VanishingProbe::for_depth(&ring).unwrap();
    let g = compute_grid_with(&job, 1, &calc, Some(&probe)).unwrap();

    println!("depth Ext^(2i)(k, A/m^n), rows n = 1..6, columns i = 1..6:");
    for n in 1..=6 {
        let row: Vec<String> = (1..=6).map(|i| g.get(n, i).to_string()).collect();
        println!("  n={n}: {}", row.join(" "));
    }

    let stab = detect_stabilization(&g, 3).unwrap();
    println!(
        "stable={} value={} onset={:?} margin={} infinite={}",
        stab.stable,
        stab.stable_value.unwrap(),
        stab.onset.unwrap(),
        stab.margin,
        stab.infinite
    );
}
