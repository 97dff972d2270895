use std::process::Command;

use bolano_cli::{run, ExitCode};

fn call(args: &[&str]) -> (ExitCode, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("bolano").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (
        code,
        String::from_utf8(out).unwrap(),
        String::from_utf8(err).unwrap(),
    )
}

fn ok(args: &[&str]) -> String {
    let (code, out, err) = call(args);
    assert_eq!(code, ExitCode::Success, "{args:?}: {err}");
    out.trim_end().to_string()
}

fn code(args: &[&str]) -> ExitCode {
    call(args).0
}

#[test]
fn normal_order_command() {
    assert_eq!(ok(&["no", "b*bd*b"]), "b_{} + {b^\\dagger_{}} b_{}^{2}");
    assert_eq!(ok(&["no", "5"]), "5");
    assert_eq!(ok(&["--format", "plain", "no", "b*bd*b"]), "b + bd*b^2");
    assert_eq!(ok(&["no", "b*bd", "--format", "plain"]), "1 + bd*b");
    let record = ok(&["--format", "record", "no", "b*bd*b"]);
    let back = bolano_core::io::parse_normal_record(&record).unwrap();
    assert_eq!(back.len(), 2);
}

#[test]
fn worker_flags_do_not_change_output() {
    let expr = "(b_1 + bd_2)^3*(bd_1 + b_2)^2";
    let serial = ok(&["--no-parallel", "no", expr]);
    assert_eq!(
        ok(&["--workers", "3", "--min-summands", "1", "no", expr]),
        serial
    );
    assert_eq!(ok(&["--workers", "1", "no", expr]), serial);
    assert_eq!(code(&["--workers", "0", "no", expr]), ExitCode::Usage);
}

#[test]
fn commutator_command() {
    assert_eq!(ok(&["comm", "bd*b", "b"]), "- b_{}");
    assert_eq!(ok(&["comm", "b_1", "b_1"]), "0");
    assert_eq!(ok(&["comm", "b_1", "bd_2"]), "0");
    assert_eq!(
        ok(&["comm", "bd_1*bd_2", "b_1*b_2"]),
        "-1 - {b^\\dagger_{1}} b_{1} - {b^\\dagger_{2}} b_{2}"
    );
}

#[test]
fn lindblad_command() {
    let out = ok(&[
        "lme",
        "--ham",
        "hbar*omega_0*bd*b",
        "--observable",
        "b",
        "--keep-hbar",
    ]);
    assert!(
        out.ends_with("= - i \\omega_{0} {\\left\\langle b_{} \\right\\rangle}"),
        "{out}"
    );
    let out = ok(&["lme", "--ham", "hbar*omega_0*bd*b", "--observable", "bd*b"]);
    assert!(out.ends_with("= 0"), "{out}");

    let out = ok(&[
        "--format",
        "plain",
        "lme",
        "--ham",
        "Delta*(bd_1*b_1 + bd_2*b_2) + Omega*(b_1 + bd_1) + g*(exp(I*theta)*bd_1*b_2 + exp(-I*theta)*bd_2*b_1)",
        "--dissipator",
        "gamma;b_1",
        "--dissipator",
        "gamma;b_2",
        "--dissipator",
        "Gamma*exp(I*phi);b_2;b_1",
        "--dissipator",
        "Gamma*exp(-I*phi);b_1;b_2",
        "--observable",
        "b_2",
    ]);
    assert_eq!(
        out,
        "d<b_2>/dt = (-1/2*Gamma*exp(-I*phi) - I*g*exp(-I*theta))*<b_1> + (-1/2*gamma - I*Delta)*<b_2>"
    );
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(code(&["no", "b^x"]), ExitCode::Usage);
    assert_eq!(code(&["no", "b +"]), ExitCode::Usage);
    assert_eq!(code(&["comm", "b", "bd^-1"]), ExitCode::Usage);
    assert_eq!(
        code(&["lme", "--ham", "bd*b", "--observable", "0"]),
        ExitCode::Usage
    );
    for bad in ["gamma", "gamma;b;b;b", "b;b", "gamma;b +"] {
        assert_eq!(
            code(&[
                "lme",
                "--ham",
                "bd*b",
                "--dissipator",
                bad,
                "--observable",
                "b"
            ]),
            ExitCode::Usage,
            "{bad}"
        );
    }
    assert_eq!(code(&["frobnicate"]), ExitCode::Usage);
    assert_eq!(code(&["bench", "--ops", "0"]), ExitCode::Usage);
    let (c, _, err) = call(&["no", "b^x"]);
    assert_eq!(c, ExitCode::Usage);
    assert!(err.starts_with("error:"), "{err}");
}

#[test]
fn help_and_version_succeed() {
    assert!(ok(&["--help"]).contains("bench"));
    assert!(ok(&["--version"]).starts_with("bolano"));
}

#[test]
fn unwritable_output_exits_three() {
    let (c, _, err) = call(&[
        "bench",
        "--ops",
        "2",
        "--trials",
        "2",
        "--out",
        "/nonexistent-dir/x.csv",
    ]);
    assert_eq!(c, ExitCode::Io, "{err}");
}

#[test]
fn bench_output_is_reproducible() {
    let dir = std::env::temp_dir().join(format!("bolano-bench-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("a.csv");
    let path = path.to_str().unwrap();
    let args = [
        "bench", "--ops", "6", "--modes", "2", "--trials", "20", "--seed", "7", "--out", path,
    ];
    let summary = ok(&args);
    assert!(summary.starts_with("trials=20 median_ratio="), "{summary}");
    let strip = |text: String| -> Vec<String> {
        text.lines()
            .map(|l| {
                let mut f: Vec<&str> = l.split(',').collect();
                f.remove(5);
                f.join(",")
            })
            .collect()
    };
    let first = std::fs::read_to_string(path).unwrap();
    ok(&args);
    let second = std::fs::read_to_string(path).unwrap();
    assert_eq!(
        first.lines().next(),
        Some("seed,trial,n_ops,n_modes,algo,nanos,terms")
    );
    assert_eq!(first.lines().count(), 41);
    assert_eq!(strip(first), strip(second));
    std::fs::remove_dir_all(&dir).unwrap();

    let (c, out, err) = call(&[
        "--format", "record", "bench", "--ops", "3", "--trials", "2", "--algo", "baseline",
    ]);
    assert_eq!(c, ExitCode::Success);
    assert_eq!(out.lines().count(), 2);
    assert!(out
        .lines()
        .all(|l| l.contains("\"kind\":\"bench_record\"") && l.contains("\"algo\":\"baseline\"")));
    assert!(err.is_empty());
}

#[test]
fn binary_reports_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_bolano");
    let run = |args: &[&str]| Command::new(bin).args(args).output().unwrap();
    let o = run(&["no", "b*bd*b"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(
        String::from_utf8_lossy(&o.stdout).trim(),
        "b_{} + {b^\\dagger_{}} b_{}^{2}"
    );
    assert_eq!(run(&["no", "b^x"]).status.code(), Some(2));
    assert_eq!(
        run(&["bench", "--trials", "1", "--out", "/nonexistent-dir/x"])
            .status
            .code(),
        Some(3)
    );
}
