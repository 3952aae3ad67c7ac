use aqc_core::fixtures::{bundled_tables, verify_table, RowOutcome};
fn main() {
    let t0 = std::time::Instant::now();
    let mut total = (0, 0, 0);
    for (name, text) in bundled_tables() {
        let results = verify_table(text, None).unwrap();
        let (mut pass, mut skip) = (0, 0);
        for (row, out) in &results {
            match out {
                RowOutcome::Pass { .. } => pass += 1,
                RowOutcome::Skipped { .. } => skip += 1,
                RowOutcome::Fail { detail } => {
                    println!("FAIL {name} line {}: {} | {detail}", row.line, row.expected);
                }
            }
        }
        total.0 += pass; total.1 += skip; total.2 += results.len() - pass - skip;
        println!("{name}: {pass} pass, {skip} skip, {} fail", results.len() - pass - skip);
    }
    println!("TOTAL: {} pass, {} skip, {} fail in {:?}", total.0, total.1, total.2, t0.elapsed());
}
