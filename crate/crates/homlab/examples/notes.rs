use homlab::verifier::run_check;
fn main() {
    let report = run_check("thm6", None).unwrap();
    let mut found = 0;
    let mut not_found = 0;
    for n in &report.notes {
        if n.contains("not established") { not_found += 1; println!("{n}"); }
        else if n.contains("direct search") { found += 1; }
    }
    println!("direct-search poset witnesses: found={found} not_found={not_found}");
}
