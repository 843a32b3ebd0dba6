use handlebody::selftest;

fn main() {
    let mut failed = 0;
    for id in 1..=selftest::count() {
        let o = selftest::run(id);
        if !o.pass {
            failed += 1;
        }
        println!(
            "{} {:>2} {} ({:.2} s / {} s): {}",
            if o.pass { "PASS" } else { "FAIL" },
            o.id,
            o.name,
            o.elapsed.as_secs_f64(),
            o.budget.as_secs(),
            o.detail
        );
    }
    println!(
        "{} of {} criteria passed",
        selftest::count() - failed,
        selftest::count()
    );
}
