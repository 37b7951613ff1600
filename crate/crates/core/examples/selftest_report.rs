//! Runs the oracle checks and prints their deviations and timings.

fn main() -> ergokit::Result<()> {
    for o in ergokit::selftest::run(None)? {
        println!("{:<34} {:>10.3e} <= {:>8.1e}  {:>7.2}s  {}", o.name, o.deviation, o.tolerance, o.seconds, if o.passed() { "ok" } else { "FAIL" });
    }
    Ok(())
}
