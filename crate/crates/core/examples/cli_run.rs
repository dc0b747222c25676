//! Driving the command-line front end in-process.

use surplus_vc::cli;

fn main() {
    let petersen = "p td 10 15\n1 2\n1 5\n1 6\n2 3\n2 7\n3 4\n3 8\n4 5\n4 9\n5 10\n6 8\n6 9\n7 9\n7 10\n8 10\n";
    for args in [vec!["vc", "solve", "--k", "6"], vec!["vc", "solve", "--k", "5"], vec!["vc", "optimize", "--json"]] {
        let mut out = Vec::new();
        let code = cli::run(args.clone(), &mut petersen.as_bytes(), &mut out, &mut std::io::stderr());
        println!("$ {} → exit {code}\n{}", args[1..].join(" "), String::from_utf8_lossy(&out));
    }
}
