// Molien series and invariants of W(2) acting on U = Qv₁ ⊕ Qv₂, and a check
// that v₁² + v₂² and v₁²v₂² generate the invariant ring.

use latcoh::invariant_ring::{check_generation, invariants_of_degree, molien_dims, weyl_u, weyl_u_generators};

fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let u = weyl_u()?;
    let dims = molien_dims(&u, 8)?;
    println!("Molien coefficients: {dims:?}");
    for d in [2, 4, 6] {
        let basis: Vec<String> = invariants_of_degree(&u, d)?.iter().map(|p| p.to_string()).collect();
        println!("  degree {d}: {}", basis.join(", "));
    }
    let report = check_generation(&u, &weyl_u_generators(), 8)?;
    println!(
        "generate: {}, independent: {}, degree product {} = |W| {}",
        report.generates(),
        report.algebraically_independent,
        report.degree_product,
        report.group_order
    );
    assert_eq!(dims, vec![1, 0, 1, 0, 2, 0, 2, 0, 3]);
    assert!(report.generates() && report.algebraically_independent);
    Ok(())
}

#[allow(dead_code)]
fn main() {
    if let Err(e) = run_example() {
        eprintln!("{e}");
        std::process::exit(1);
    }
}
