use moore_kit::acceptance::{run, TITLES};
use moore_kit::par::ExecMode;

fn main() {
    let mut failed = Vec::new();
    for id in 1..=TITLES.len() as u8 {
        let start = std::time::Instant::now();
        let r = run(id, ExecMode::default());
        let verdict = if r.passed { "PASS" } else { "FAIL" };
        println!("criterion {:>2} {verdict}: {} ({}) [{:.1?}]", r.id, r.title, r.detail, start.elapsed());
        if !r.passed {
            failed.push(r.id);
        }
    }
    println!("acceptance: {} of {} criteria pass", TITLES.len() - failed.len(), TITLES.len());
    if !failed.is_empty() {
        eprintln!("criteria failed: {failed:?}");
        std::process::exit(1);
    }
}
