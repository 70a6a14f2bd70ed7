// The named W(m)-lattices: ranks, the exact rows and columns of the 3×3
// diagram, and an explicit isomorphism Y_2/Y ≅ I_m.

use latcoh::glattice::weyl_lattices;
use latcoh::scenarios::sec1::y2_mod_y_iso;

fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    for m in [2, 3] {
        let p = weyl_lattices(m)?;
        println!(
            "m = {m}: rank Y' = {}, Y = {}, Y_D = {}, Y_O' = {}, I_m = {}",
            p.y_prime.rank(),
            p.y.rank(),
            p.yd.rank(),
            p.yo_prime.rank(),
            p.im.rank()
        );
        for (name, ok) in p.diagram.squares()? {
            println!("  square {name}: {}", if ok { "commutes" } else { "does not commute" });
            assert!(ok);
        }
        let iso = y2_mod_y_iso(&p)?;
        println!("  Y_2/Y → I_m:\n{}", iso.matrix().to_text());
        assert_eq!(p.y.rank(), 4 * m * m - (2 * m - 1));
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
