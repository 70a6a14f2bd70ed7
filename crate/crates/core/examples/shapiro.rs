// H^n(W, Y_D) computed directly and through Shapiro's lemma over the block
// stabilizer H, with the cochain-level round trip on every generator.

use latcoh::cohomology::{cohomology, shapiro_forward, shapiro_inverse, Complex, DEFAULT_BUDGET};
use latcoh::glattice::weyl_lattices;

fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    for m in [2, 3] {
        let p = weyl_lattices(m)?;
        let ind = &p.yd_induction;
        for n in 1..=2 {
            let small = cohomology(ind.small(), n, DEFAULT_BUDGET)?;
            let direct = if m == 2 || n == 1 {
                Some(cohomology(&p.yd, n, DEFAULT_BUDGET)?)
            } else {
                None
            };
            let big = Complex::new(ind.big());
            for (k, e) in small.generators().iter().enumerate() {
                let f = shapiro_inverse(ind, n, e)?;
                assert!(big.is_cocycle(n, &f)?);
                let back = shapiro_forward(ind, n, &f)?;
                let diff: Vec<i64> = back.iter().zip(e).map(|(a, b)| a - b).collect();
                assert!(small.is_zero(&diff)?, "generator {k} does not come back");
            }
            println!(
                "m = {m}, n = {n}: H^n(H, M) = {}, direct H^n(W, Y_D) = {}",
                small.invariants(),
                direct.as_ref().map_or("skipped".to_string(), |d| d.invariants().to_string())
            );
            if let Some(d) = direct {
                assert_eq!(d.invariants(), small.invariants());
            }
        }
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
