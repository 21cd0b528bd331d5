use std::fs;
use std::path::{Path, PathBuf};
use std::process::Command;

use tempfile::TempDir;
use tsh_core::algebra::find_algebra_isomorphism;
use tsh_core::duality::{canonical_frame, complex_algebra};
use tsh_core::fixtures;
use tsh_core::frame::{enumerate_frames, find_isomorphism};
use tsh_core::io::{format_algebra, format_frame, parse_algebra, parse_frame, parse_model};

struct Run {
    status: i32,
    stdout: String,
    stderr: String,
}

fn tsh(args: &[&str]) -> Run {
    let out = Command::new(env!("CARGO_BIN_EXE_tsh"))
        .args(args)
        .output()
        .expect("binary runs");
    Run {
        status: out.status.code().expect("exited"),
        stdout: String::from_utf8(out.stdout).unwrap(),
        stderr: String::from_utf8(out.stderr).unwrap(),
    }
}

fn fixture(name: &str) -> String {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("fixtures")
        .join(name)
        .display()
        .to_string()
}

fn sample_proof() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../core/data/sample.proof")
}

#[test]
fn check_algebra_statuses() {
    let ok = tsh(&["check-algebra", &fixture("a3.alg")]);
    assert_eq!(ok.status, 0, "{}", ok.stderr);
    assert_eq!(
        fixtures::a3(),
        parse_algebra(&fs::read_to_string(fixture("a3.alg")).unwrap()).unwrap()
    );

    let broken = tsh(&[
        "--format",
        "records",
        "check-algebra",
        &fixture("a3-broken-t1.alg"),
    ]);
    assert_eq!(broken.status, 1);
    assert!(
        broken.stdout.lines().any(|l| l == "T1-G\t2"),
        "{}",
        broken.stdout
    );

    let malformed = tsh(&["check-algebra", &fixture("malformed.alg")]);
    assert_eq!(malformed.status, 2);
    assert!(
        malformed.stderr.contains("malformed.alg:3:10:"),
        "{}",
        malformed.stderr
    );

    let missing = tsh(&["check-algebra", "/nonexistent/file.alg"]);
    assert_eq!(missing.status, 2);
}

#[test]
fn check_frame_statuses() {
    assert_eq!(tsh(&["check-frame", &fixture("x2.frame")]).status, 0);
    let broken = tsh(&[
        "--format",
        "records",
        "check-frame",
        &fixture("x2-broken-k5.frame"),
    ]);
    assert_eq!(broken.status, 1);
    assert!(broken.stdout.starts_with("K5\t"));
}

#[test]
fn records_are_empty_exactly_on_success() {
    for (cmd, file) in [
        ("check-algebra", "a3.alg"),
        ("check-algebra", "a3-broken-t1.alg"),
        ("check-algebra", "diamond.alg"),
        ("check-frame", "x2.frame"),
        ("check-frame", "x2-broken-k5.frame"),
    ] {
        let run = tsh(&["--format", "records", cmd, &fixture(file)]);
        assert_eq!(run.status == 0, run.stdout.is_empty(), "{file}");
    }
}

#[test]
fn dualize_a3_and_x2() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("a3.frame");
    let run = tsh(&[
        "dualize",
        "--direction",
        "algebra-to-frame",
        "--output",
        out.to_str().unwrap(),
        &fixture("a3.alg"),
    ]);
    assert_eq!(run.status, 0, "{}", run.stderr);
    assert!(run.stdout.contains("# embedding h: no violations"));
    let frame = parse_frame(&fs::read_to_string(&out).unwrap()).unwrap();
    assert!(find_isomorphism(&frame, &fixtures::x2()).is_some());

    // without --output the structure and the commented report share stdout
    let run = tsh(&[
        "dualize",
        "--direction",
        "frame-to-algebra",
        &fixture("x2.frame"),
    ]);
    assert_eq!(run.status, 0, "{}", run.stderr);
    let algebra = parse_algebra(&run.stdout).unwrap();
    assert!(find_algebra_isomorphism(&algebra, &fixtures::a3()).is_some());
    assert!(run.stdout.contains("# embedding k: no violations"));

    let run = tsh(&[
        "dualize",
        "--direction",
        "frame-to-algebra",
        &fixture("x2-broken-k5.frame"),
    ]);
    assert_eq!(run.status, 1);
}

#[test]
fn emitted_structures_reparse_to_the_constructed_values() {
    let dir = TempDir::new().unwrap();
    for (name, w) in fixtures::algebra_corpus() {
        let input = dir.path().join(format!("{name}.alg"));
        fs::write(&input, format_algebra(&w)).unwrap();
        assert_eq!(
            parse_algebra(&fs::read_to_string(&input).unwrap()).unwrap(),
            w,
            "{name}"
        );
        let run = tsh(&[
            "dualize",
            "--direction",
            "algebra-to-frame",
            input.to_str().unwrap(),
        ]);
        assert_eq!(run.status, 0, "{name}: {}", run.stderr);
        assert_eq!(
            parse_frame(&run.stdout).unwrap(),
            canonical_frame(&w).unwrap().frame,
            "{name}"
        );
    }
    for (i, k) in enumerate_frames(2, false).into_iter().enumerate() {
        let input = dir.path().join(format!("{i}.frame"));
        fs::write(&input, format_frame(&k)).unwrap();
        let run = tsh(&[
            "dualize",
            "--direction",
            "frame-to-algebra",
            input.to_str().unwrap(),
        ]);
        assert_eq!(run.status, 0, "frame {i}: {}", run.stderr);
        assert_eq!(
            parse_algebra(&run.stdout).unwrap(),
            complex_algebra(&k).unwrap().algebra,
            "frame {i}"
        );
    }
}

#[test]
fn check_proof_statuses() {
    let sample = sample_proof();
    let run = tsh(&["check-proof", sample.to_str().unwrap()]);
    assert_eq!(run.status, 0, "{}{}", run.stdout, run.stderr);

    let dir = TempDir::new().unwrap();
    let perturbed = dir.path().join("perturbed.proof");
    let text = fs::read_to_string(&sample)
        .unwrap()
        .replace("mp 6 7", "mp 5 7");
    fs::write(&perturbed, text).unwrap();
    let run = tsh(&[
        "--format",
        "records",
        "check-proof",
        perturbed.to_str().unwrap(),
    ]);
    assert_eq!(run.status, 1);
    assert_eq!(run.stdout, "rejected\t8\n");

    let empty = dir.path().join("empty.proof");
    fs::write(&empty, "").unwrap();
    assert_eq!(tsh(&["check-proof", empty.to_str().unwrap()]).status, 0);

    let garbled = dir.path().join("garbled.proof");
    fs::write(&garbled, "1. p -> (q -> p) ; axiom\n2. p -> ; mp 1 1\n").unwrap();
    let run = tsh(&["check-proof", garbled.to_str().unwrap()]);
    assert_eq!(run.status, 2);
    assert!(run.stderr.contains("garbled.proof:2:"), "{}", run.stderr);
}

#[test]
fn validity_modes() {
    let run = tsh(&[
        "validity",
        "p -> G P p",
        "--mode",
        "frames",
        "--max-size",
        "2",
    ]);
    assert_eq!(run.status, 0, "{}", run.stderr);

    let dir = TempDir::new().unwrap();
    let out = dir.path().join("cm.model");
    let run = tsh(&[
        "validity",
        "G p -> p",
        "--mode",
        "countermodel",
        "--max-size",
        "2",
        "--output",
        out.to_str().unwrap(),
    ]);
    assert_eq!(run.status, 1);
    let model = parse_model(&fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(*model.frame(), fixtures::singleton_frame(false));

    let run = tsh(&[
        "validity",
        "p -> G P p",
        "--mode",
        "countermodel",
        "--max-size",
        "2",
    ]);
    assert_eq!(run.status, 0);
    assert_eq!(run.stdout, "no countermodel up to size 2\n");

    let algebra = format!("algebra:{}", fixture("a3.alg"));
    assert_eq!(tsh(&["validity", "p -> ~~p", "--mode", &algebra]).status, 0);
    let run = tsh(&[
        "--format", "records", "validity", "p | ~p", "--mode", &algebra,
    ]);
    assert_eq!(run.status, 1);
    assert_eq!(run.stdout, "refuted\t1\n");

    assert_eq!(tsh(&["validity", "p & (q", "--mode", "frames"]).status, 2);
}

#[test]
fn bounds_need_force() {
    assert_eq!(tsh(&["validity", "p", "--max-size", "5"]).status, 3);
    let wide = "p & q & r & s -> p";
    assert_eq!(tsh(&["validity", wide, "--max-size", "2"]).status, 3);
    assert_eq!(
        tsh(&["validity", wide, "--max-size", "2", "--force"]).status,
        0
    );
    assert_eq!(tsh(&["enumerate-frames", "--max-size", "5"]).status, 3);
}

#[test]
fn parse_prints_canonical_forms_and_random_formulas_are_seeded() {
    let run = tsh(&["parse", "p -> (q -> r)", "(p & q) & r", "F p"]);
    assert_eq!(run.status, 0);
    assert_eq!(run.stdout, "p -> q -> r\np & q & r\n~G ~p\n");
    assert_eq!(tsh(&["parse", "p ->"]).status, 2);

    let a = tsh(&["parse", "--random", "20", "--seed", "5"]);
    let b = tsh(&["parse", "--random", "20", "--seed", "5"]);
    let c = tsh(&["parse", "--random", "20", "--seed", "6"]);
    assert_eq!(a.stdout, b.stdout);
    assert_ne!(a.stdout, c.stdout);
    assert_eq!(a.stdout.lines().count(), 20);
    let args: Vec<&str> = ["parse"].into_iter().chain(a.stdout.lines()).collect();
    let again = tsh(&args);
    assert_eq!(again.stdout, a.stdout);
}

#[test]
fn enumerate_frames_counts() {
    for (size, labeled) in [(1, false), (2, false), (2, true)] {
        let size_arg = size.to_string();
        let mut args = vec![
            "--format",
            "records",
            "enumerate-frames",
            "--max-size",
            &size_arg,
        ];
        if labeled {
            args.push("--labeled");
        }
        let run = tsh(&args);
        assert_eq!(run.status, 0);
        assert_eq!(
            run.stdout,
            format!("count\t{}\n", enumerate_frames(size, !labeled).len())
        );
    }
    let run = tsh(&["enumerate-frames", "--max-size", "1"]);
    let frames: Vec<_> = run
        .stdout
        .split("# frame ")
        .skip(1)
        .map(|chunk| parse_frame(chunk.split_once('\n').unwrap().1.trim_end()).unwrap())
        .collect();
    assert_eq!(frames, enumerate_frames(1, true));
}
