fn main() {
    let args: Vec<String> = std::env::args().collect();
    let names: Vec<&str> = if args.len() > 1 {
        args[1..].iter().map(|s| s.as_str()).collect()
    } else {
        planar::suites::SUITE_NAMES.to_vec()
    };
    for name in names {
        let rep = planar::suites::run_suite(name, 0).unwrap();
        println!("{:<14} pass={} ({} ms)", rep.name, rep.pass, rep.elapsed_ms);
        for item in &rep.items {
            println!(
                "    [{}] {}: {}",
                if item.pass { "ok" } else { "FAIL" },
                item.label,
                item.detail
            );
        }
    }
}
