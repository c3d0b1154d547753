//! Drives the `vsbound` binary end to end, the same way a shell user
//! would. Requires the binary to be built (`cargo build -p vsbound`); when
//! run via `cargo run --example cli_tour` the binary is built alongside.

use std::process::Command;

fn main() {
    let bin = bin_path();
    println!("using binary {}", bin.display());

    let steps: &[&[&str]] = &[
        &[
            "mu",
            "--field",
            "p=5,e=1",
            "--vars",
            "x1,x2",
            "x1 + x1^3*x2",
        ],
        &["mu", "--field", "p=5,e=1", "--vars", "x1,x2", "x1^4 + x2^4"],
        &["verify", "--field", "p=3,e=1", "--map", "x1; x1^2*x2"],
        &["u-invariant", "--field", "p=2,e=1", "--map", "x1; x1*x2"],
        &["valueset", "--field", "p=2,e=1", "--map", "x1; x1*x2"],
        &[
            "sweep",
            "--q",
            "3..3",
            "--family",
            "polytope-sharp",
            "--a",
            "1..3",
        ],
        &[
            "variety-check",
            "--field",
            "p=3,e=1",
            "--vars",
            "x1,x2",
            "--map",
            "x1*x2",
        ],
    ];
    for args in steps {
        println!("\n$ vsbound {}", shell_join(args));
        let out = Command::new(&bin).args(*args).output().expect("run binary");
        print!("{}", String::from_utf8_lossy(&out.stdout));
        if !out.status.success() {
            eprint!("{}", String::from_utf8_lossy(&out.stderr));
            std::process::exit(out.status.code().unwrap_or(1));
        }
    }
}

fn bin_path() -> std::path::PathBuf {
    // target/{debug,release}/examples/cli_tour -> target/{profile}/vsbound
    let mut p = std::env::current_exe().expect("own path");
    p.pop();
    p.pop();
    p.push("vsbound");
    if !p.exists() {
        eprintln!(
            "binary not found at {}; run `cargo build -p vsbound` first",
            p.display()
        );
        std::process::exit(2);
    }
    p
}

fn shell_join(args: &[&str]) -> String {
    args.iter()
        .map(|a| {
            if a.contains(' ') || a.contains(';') {
                format!("{a:?}")
            } else {
                (*a).to_string()
            }
        })
        .collect::<Vec<_>>()
        .join(" ")
}
