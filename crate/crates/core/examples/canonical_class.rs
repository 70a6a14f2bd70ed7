// The class δ(1) of 0 → I → Z[G/H] → Z → 0 for S_n ⊃ S_{n-1}: it
// generates H^1(G, I), has order [G:H] and dies on H.

use latcoh::cohomology::{canonical_class, cohomology, restrict_cochain, Complex, DEFAULT_BUDGET};
use latcoh::groups::{symmetric_group, Perm, Subgroup};
use std::sync::Arc;

fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    for n in 3..=4 {
        let g = symmetric_group(n)?;
        // the stabilizer of the last point
        let mut gens = vec![Perm::transposition(n, 0, 1)];
        if n > 3 {
            gens.push(Perm::from_cycles(n, &[(0..n - 1).collect()])?);
        }
        let h = Subgroup::new(&g, gens, "S_{n-1}")?;
        let cc = canonical_class(&h, DEFAULT_BUDGET)?;
        let i_on_h = Arc::new(cc.ses.sub().restrict(h.group())?);
        let h1_h = cohomology(&i_on_h, 1, DEFAULT_BUDGET)?;
        let res = restrict_cochain(cc.group.complex(), &Complex::new(&i_on_h), &h, 1, &cc.class.rep)?;
        println!(
            "S{n}: H^1(G, I) = {}, class order {}, restriction to H zero: {}",
            cc.group.invariants(),
            cc.class.order(),
            h1_h.is_zero(&res)?
        );
        assert_eq!(cc.class.order() as usize, h.index());
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    if let Err(e) = run_example() {
        eprintln!("{e}");
        std::process::exit(1);
    }
}
