// Extension classes and the four-term sequence
// 0 → H^1(H,M) → Ext^1(I,M) → H^2(G,M) → H^2(H,M).

use std::sync::Arc;

use latcoh::cohomology::{cohomology, extension_class, lemma04_d, DEFAULT_BUDGET};
use latcoh::glattice::{augmentation_sublattice, trivial_lattice, ShortExactSeq};
use latcoh::groups::{symmetric_group, Perm, Subgroup};

fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let s4 = symmetric_group(4)?;
    let h = Subgroup::new(&s4, vec![Perm::transposition(4, 0, 1), Perm::from_cycles(4, &[vec![0, 1, 2]])?], "S3")?;
    let (_, incl, aug) = augmentation_sublattice(&h)?;
    let ses = ShortExactSeq::new(incl, aug)?;
    let (hom, phi) = extension_class(&ses)?;
    let ext1 = cohomology(&hom, 1, DEFAULT_BUDGET)?;
    println!("Ext^1(Z, I) = {}, class of Z[S4/S3] is zero: {}", ext1.invariants(), ext1.is_zero(&phi)?);
    assert!(!ext1.is_zero(&phi)?);

    let z = Arc::new(trivial_lattice(&s4, 1));
    let r = lemma04_d(&h, &z, DEFAULT_BUDGET)?;
    println!(
        "M = Z: H^1(H) {:?}, Ext^1(I, M) {:?}, H^2(G) {:?}, H^2(H) {:?}, exact: {}",
        r.h1_h, r.ext1, r.h2_g, r.h2_h, r.exact()
    );
    assert!(r.exact());
    Ok(())
}

#[allow(dead_code)]
fn main() {
    if let Err(e) = run_example() {
        eprintln!("{e}");
        std::process::exit(1);
    }
}
