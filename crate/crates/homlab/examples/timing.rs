use homlab::verifier::run_check;
fn main() {
    let args: Vec<String> = std::env::args().skip(1).collect();
    for id in &args {
        match run_check(id, None) {
            Ok(report) => {
                let status = if report.passed() { "PASS" } else { "FAIL" };
                println!(
                    "{id}: {status} violations={} instances={} elapsed_ms={}",
                    report.violations.len(),
                    report.instances,
                    report.elapsed_ms
                );
                for v in report.violations.iter().take(2) {
                    println!("--- sample violation ---\n{v}");
                }
                for n in report.notes.iter().take(4) {
                    println!("note: {n}");
                }
            }
            Err(e) => println!("{id}: ERROR {e}"),
        }
    }
}
