// Twisted monomial actions: a twist that is a coboundary can be undone by a
// change of coordinates, a nonzero class cannot. Also runs the randomized
// comparison between the symbol action built from a 2-cochain and the
// 2-cocycle identity.

use std::sync::Arc;

use latcoh::glattice::{perm_lattice, trivial_lattice};
use latcoh::groups::{cyclic_group, Subgroup};
use latcoh::scenarios::sec0::sb_agreement;
use latcoh::twisted::{make_twisted, CoefficientGroup};

fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let c2 = cyclic_group(2)?;
    let a = CoefficientGroup::trivial(&c2, 0, vec![2])?;

    // Z with trivial action: φ_s = 1 is a nonzero class in H^1(C2, Z/2)
    let z = Arc::new(trivial_lattice(&c2, 1));
    let t = make_twisted(&z, &a, &[vec![vec![1]]])?;
    let (coeff, exps) = t.apply(1, &[0], &[1])?;
    println!("s(x) = {coeff:?}·x^{exps:?}; untwistable: {}", t.untwist()?.is_some());
    assert!(t.untwist()?.is_none());

    // Z[C2] is free, so every twist is a coboundary
    let free = Arc::new(perm_lattice(&Subgroup::trivial(&c2, "1"))?);
    let t = make_twisted(&free, &a, &[vec![vec![1], vec![1]]])?;
    let psi = t.untwist()?;
    println!("twist on Z[C2] untwisted by ψ = {psi:?}");
    assert!(psi.is_some());

    let summary = sb_agreement(7)?;
    println!("symbol action vs cocycle identity: {summary}");
    assert_eq!(summary["disagreements"].as_array().map(|d| d.len()), Some(0));
    Ok(())
}

#[allow(dead_code)]
fn main() {
    if let Err(e) = run_example() {
        eprintln!("{e}");
        std::process::exit(1);
    }
}
