// The hyperoctahedral group W(3) inside S_6, its block and point
// stabilizers, and the double cosets H\W/H.

use latcoh::groups::{conjugate_subgroup, double_cosets, intersection, weyl_group};

fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let w = weyl_group(3)?;
    println!("W(3): order {}, generators {:?}", w.w.order(), w.w.generators());
    for s in [&w.a, &w.sm, &w.h, &w.h1, w.h2()?] {
        println!("  {:<4} order {:>2}, index {:>2}, normal {}", s.name(), s.order(), s.index(), s.is_normal());
    }
    let reps = double_cosets(&w.h, &w.h)?;
    let shown: Vec<String> = reps.iter().map(|&r| w.w.element(r).to_string()).collect();
    println!("H\\W/H has {} double cosets, representatives {}", reps.len(), shown.join(", "));
    let g = w.g()?;
    let k = intersection(&w.h, &conjugate_subgroup(&w.h, g)?, "K")?;
    println!("g = {g}, K = H ∩ gHg⁻¹ has order {}", k.order());
    assert_eq!(w.w.order(), 48);
    assert_eq!(reps.len(), 2);
    assert_eq!(k.order(), 8);
    Ok(())
}

#[allow(dead_code)]
fn main() {
    if let Err(e) = run_example() {
        eprintln!("{e}");
        std::process::exit(1);
    }
}
