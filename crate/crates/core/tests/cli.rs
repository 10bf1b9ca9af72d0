use std::io::Write;
use std::process::{Command, Output};

use nanophrase::decompose::ReducedClass;
use nanophrase::{parse_multiphrase, parse_phrase};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_nanophrase")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn temp_file(name: &str, body: &str) -> std::path::PathBuf {
    let dir = std::env::temp_dir().join(format!("nanophrase-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::File::create(&path).unwrap().write_all(body.as_bytes()).unwrap();
    path
}

#[test]
fn factor_prints_two_factors() {
    let t = temp_file("composite.hdt", "alpha: a b c d\ntau: a<->b c<->d\nS: (a,b,a) (c,d,c)\n");
    let o = run(&["factor", "-t", t.to_str().unwrap(), "--format", "lines"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert_eq!(out.lines().count(), 2);
    for line in out.lines() {
        let triple = line.split('\t').nth(2).unwrap();
        assert!(nanophrase::parse_triple(triple).unwrap().is_prime());
    }
}

#[test]
fn factor_names_known_primes() {
    let o = run(&["factor", "-t", "alpha: a b c; tau: b<->c; S: diagonal"]);
    let out = stdout(&o);
    assert!(out.contains("alpha_G") && out.contains("alpha_F"), "{out}");
}

#[test]
fn decide_contractible_letter() {
    let o = run(&["decide", "-t", "alpha_G", "-p", "A:a ; AA", "-p", "; _"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.starts_with("yes") && out.contains("H1"), "{out}");
}

#[test]
fn decide_exit_codes_follow_verdicts() {
    let no = run(&["decide", "-t", "alpha_G", "-p", "A:a ; A|A", "-p", "; _|_"]);
    assert_eq!(no.status.code(), Some(1));
    let red = run(&["decide", "-t", "alpha_F", "-p", "A:a B:a C:a ; ABCA|BC", "--reducible", "1", "--format", "lines"]);
    assert_eq!(red.status.code(), Some(1));
    assert!(stdout(&red).starts_with("verdict\tno"));
    let unknown = run(&[
        "decide", "-t", "alpha_G", "-p", "A:a B:a ; ABAB", "-p", "; _", "--rank-delta", "0", "--node-budget", "1",
    ]);
    assert_eq!(unknown.status.code(), Some(2), "{}", stdout(&unknown));
}

#[test]
fn invariants_linking_example() {
    let o = run(&["invariants", "-t", "alpha: a b c; tau:; S:", "-p", "A:a B:b C:c ; ABC|AC|B", "--which", "linking"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("[[1,a*c,b],[a*c,1,1],[b,1,1]]"));
}

#[test]
fn decompose_lines_round_trip() {
    let t = temp_file("two.hdt", "alpha: a b\nS: diagonal\n");
    let phrases = temp_file("words.txt", "# two nanowords\nA:a B:a C:a D:b E:b ; ABCBDCAEDE\n\nA:a B:a C:b D:b ; ACADDBBC\n");
    let o = run(&["decompose", "-t", t.to_str().unwrap(), "-p", phrases.to_str().unwrap(), "--format", "lines"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines.len(), 2);
    let (multi, theta) = lines[0].split_once('\t').unwrap();
    assert_eq!(theta, "1 2 1 2");
    assert_eq!(parse_multiphrase(multi).unwrap().to_string(), multi);
}

#[test]
fn reduce_prints_parseable_class() {
    let o = run(&["reduce", "-t", "alpha: a b; S:", "-p", "A:a B:b C:a ; ABBCAC", "--format", "lines"]);
    assert_eq!(o.status.code(), Some(0));
    let class = ReducedClass::parse(&stdout(&o)).unwrap();
    assert!(class.is_fully_certified());
    assert_eq!(class.serialize(), stdout(&o).trim_end());
}

#[test]
fn tabulate_guard_and_output() {
    let refused = run(&["tabulate", "-t", "alpha_G", "--max-rank", "6"]);
    assert_eq!(refused.status.code(), Some(3));
    let o = run(&["tabulate", "-t", "alpha_G", "--max-rank", "1", "--format", "lines"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert_eq!(out.lines().count(), 1, "{out}");
    let rep = out.split('\t').nth(1).unwrap();
    assert_eq!(parse_phrase(rep).unwrap().num_components(), 1);
}

#[test]
fn syntax_errors_point_at_the_offset() {
    let o = run(&["decide", "-t", "alpha_G", "-p", "A:a ; Aa", "-p", "; _"]);
    assert_eq!(o.status.code(), Some(3));
    let err = String::from_utf8(o.stderr).unwrap();
    assert!(err.contains("<phrase>:1:8"), "{err}");
    assert!(err.contains("        ^"), "{err}");
}

#[test]
fn missing_file_is_io_error() {
    let o = run(&["factor", "-t", "/nonexistent/triple.hdt"]);
    assert_eq!(o.status.code(), Some(4));
}

#[test]
fn usage_errors_are_not_unknown() {
    let o = run(&["decide", "-t", "alpha_G"]);
    assert_eq!(o.status.code(), Some(3));
}
