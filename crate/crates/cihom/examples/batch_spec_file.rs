//! Driving the engine from an experiment file, the same way the `cihom`
//! binary does: one ring per file, then ideals, modules, and a sequence
//! of command blocks that share the resolution cache.

use cihom::experiment::parse_spec;
use cihom::runner::{run_spec, RunOptions};

const FILE: &str = "\
# the product of two quadric hypersurfaces
ring p=101 vars=[x,y] order=grevlex
ci f=[x^2, y^2]

ideal I=[x, y]
module k gens=[0] rels=[[x],[y]]
module N gens=[0] rels=[]

cmd gb I=I
cmd resolve M=k upto=5
cmd ext M=k N=k i=2
cmd depth-grid M=k N=N I=I t=0 n=1..6 i=1..6 margin=3 out=depth.csv report=depth.json
cmd fit M=k N=k I=I j=1 t=0 n=1..8 i=1..8 fit=1..5,1..5 validate=6..8,6..8 report=fit.json
";

fn main() {
    let spec = parse_spec(FILE).unwrap();
    let dir = tempfile::tempdir().unwrap();
    let opts = RunOptions {
        threads: 2,
        only: None,
        out_dir: dir.path().to_path_buf(),
    };
    let outcome = run_spec(&spec, &opts).unwrap();
    for line in &outcome.lines {
        println!("{line}");
    }
    println!("exit code {}", outcome.exit_code());

    let report = std::fs::read_to_string(dir.path().join("depth.json")).unwrap();
    println!("--- depth.json ---\n{report}");
}
