// Runs one named scenario (default `sec0.canonical`) and prints one line
// per check.

use latcoh::scenarios::{lookup, run, Params};

fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    // under the test harness argv holds test filters, so only known ids count
    let id = std::env::args()
        .nth(1)
        .filter(|a| a == "all" || lookup(a).is_ok())
        .unwrap_or_else(|| "sec0.canonical".to_string());
    let ids: Vec<String> = if id == "all" {
        latcoh::scenarios::scenario_ids().iter().map(|s| s.to_string()).collect()
    } else {
        vec![id]
    };
    for id in ids {
        let report = run(&id, &Params::default())?;
        for c in &report.checks {
            println!("{:<15} {:<15} {:>7}ms  {}", report.scenario, c.status.as_str(), c.millis, c.anchor);
            if std::env::var_os("SHOW_VALUES").is_some() {
                println!("    {}", c.values);
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
