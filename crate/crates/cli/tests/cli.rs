use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use quadmod::Bundle;
use quadmod_cli::{run_command, Format, Options};

fn root() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../..")
}

fn bundle_path(name: &str) -> String {
    root().join("bundles").join(name).to_string_lossy().into_owned()
}

fn quadmod(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_quadmod"))
        .args(args)
        .env_remove("QUADMOD_MAX_COSETS")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn verify_valid_bundle_passes() {
    let o = quadmod(&["verify", &bundle_path("cyclic.json"), "quad4"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "QM1..QM4: pass\n");
}

#[test]
fn verify_nonabelian_top_with_trivial_omega_fails_qm4() {
    let o = quadmod(&["verify", &bundle_path("qm4_failure.json")]);
    assert_eq!(o.status.code(), Some(1));
    let text = stdout(&o);
    assert!(text.contains("QM4: FAIL"), "{text}");
    assert!(text.contains("!= [b,a] at ["), "{text}");
    for ok in ["QM1: pass", "QM2: pass", "QM3: pass"] {
        assert!(text.contains(ok), "{text}");
    }
}

#[test]
fn pullback_quad_along_non_mono_reports_kernel_element() {
    let o = quadmod(&["pullback-quad", &bundle_path("cyclic.json"), "quad2", "pi"]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(
        stdout(&o),
        "error: NotMonomorphism: not a monomorphism: kernel contains 2\n"
    );
}

#[test]
fn parse_errors_exit_2() {
    let dir = std::env::temp_dir().join(format!("quadmod-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let broken = dir.join("broken.json");
    std::fs::write(&broken, "{\n  \"version\": \"quadmod-bundle/1\",\n  \"objects\": {,}\n}").unwrap();
    let o = quadmod(&["verify", broken.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stdout(&o).contains("line 3, column 15"));

    let dangling = dir.join("dangling.json");
    std::fs::write(
        &dangling,
        r#"{"version": "quadmod-bundle/1", "objects": {"h": {"kind": "hom", "source": "G9", "target": "G9", "map": [0]}}}"#,
    )
    .unwrap();
    let o = quadmod(&["tensor", dangling.to_str().unwrap(), "h", "--format", "machine"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stdout(&o).contains("\"kind\": \"UnresolvedReference\""));

    let o = quadmod(&["homs", &bundle_path("abelian.json"), "Z12"]);
    assert_eq!(o.status.code(), Some(2));
    let o = quadmod(&["no-such-verb", &bundle_path("abelian.json")]);
    assert_eq!(o.status.code(), Some(2));
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn golden_bundles_are_canonical() {
    for name in ["abelian.json", "classify.json", "cyclic.json", "qm4_failure.json"] {
        let text = std::fs::read_to_string(bundle_path(name)).unwrap();
        let b = Bundle::parse(&text).unwrap();
        assert_eq!(b.to_canonical_string(), text, "{name}");
    }
}

#[test]
fn machine_reports_match_golden_files() {
    let cases: [(&str, &[&str]); 5] = [
        ("tensor_z2xz6.json", &["tensor", "abelian.json", "Z2xZ6"]),
        ("classify.json", &["classify", "classify.json"]),
        ("induce_quad_epi.json", &["induce-quad", "cyclic.json", "quad4", "pi"]),
        ("verify_qm4_failure.json", &["verify", "qm4_failure.json"]),
        ("pullback_quad_not_mono.json", &["pullback-quad", "cyclic.json", "quad2", "pi"]),
    ];
    for (golden, args) in cases {
        let text = std::fs::read_to_string(bundle_path(args[1])).unwrap();
        let bundle = Bundle::parse(&text).unwrap();
        let names: Vec<String> = args[2..].iter().map(|s| s.to_string()).collect();
        let out = run_command(args[0], &names, &bundle, &Options::default());
        let expected = std::fs::read_to_string(
            Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(golden),
        )
        .unwrap();
        assert_eq!(out.render(Format::Machine, true), expected, "{golden}");
    }
}

#[test]
fn repeated_runs_are_byte_identical() {
    let runs: [&[&str]; 4] = [
        &["induce-quad", "cyclic.json", "quad4", "phi", "--samples", "400", "--seed", "7"],
        &["induce-nil2", "cyclic.json", "conj4", "pi"],
        &["homs", "abelian.json", "Z12", "S3"],
        &["cokernel", "cyclic.json", "quad4", "quad4", "id4", "id4.c1", "id4.c2"],
    ];
    for args in runs {
        let mut full: Vec<String> = args.iter().map(|s| s.to_string()).collect();
        full[1] = bundle_path(args[1]);
        full.extend(["--format".to_string(), "machine".to_string()]);
        let refs: Vec<&str> = full.iter().map(String::as_str).collect();
        let a = quadmod(&refs);
        let b = quadmod(&refs);
        assert_eq!(a.status.code(), Some(0), "{}", stdout(&a));
        assert_eq!(a.stdout, b.stdout);
    }
}

#[test]
fn out_flag_writes_parseable_bundle() {
    let dir = std::env::temp_dir().join(format!("quadmod-cli-out-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let target = dir.join("induced.json");
    let o = quadmod(&[
        "induce-quad",
        &bundle_path("cyclic.json"),
        "quad4",
        "pi",
        "--out",
        target.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(!stdout(&o).contains("quadmod-bundle/1"));
    let b = Bundle::parse(&std::fs::read_to_string(&target).unwrap()).unwrap();
    let q = quadmod::verify_quadratic(b.quadratic("induced").unwrap()).unwrap();
    assert_eq!(q.c0().order(), 2);
    let o = quadmod(&["verify", target.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn every_verb_runs_on_the_sample_bundles() {
    let runs: [(&[&str], i32); 12] = [
        (&["verify", "cyclic.json"], 0),
        (&["classify", "classify.json"], 0),
        (&["from-nil2", "classify.json", "swap"], 0),
        (&["to-crossed-complex", "cyclic.json", "quad2"], 1),
        (&["pullback-nil2", "cyclic.json", "conj2", "point"], 0),
        (&["pullback-quad", "cyclic.json", "quad2", "point"], 0),
        (&["induce-nil2", "cyclic.json", "conj2", "incl", "--samples", "200"], 0),
        (&["induce-quad", "cyclic.json", "quad4", "pi"], 0),
        (&["cokernel", "cyclic.json", "quad4", "quad4", "id4", "id4.c1", "id4.c2"], 0),
        (&["tensor", "abelian.json", "S3"], 1),
        (&["homs", "abelian.json", "Z12", "S3"], 0),
        (&["adjunction-check", "cyclic.json", "id4", "quad4", "quad4"], 0),
    ];
    for (args, code) in runs {
        let mut full: Vec<String> = args.iter().map(|s| s.to_string()).collect();
        full[1] = bundle_path(args[1]);
        let refs: Vec<&str> = full.iter().map(String::as_str).collect();
        let o = quadmod(&refs);
        assert_eq!(o.status.code(), Some(code), "{args:?}: {}", stdout(&o));
    }
}
