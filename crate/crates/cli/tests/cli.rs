use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_blossom-scale"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().unwrap()
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    fs::write(&p, text).unwrap();
    p.to_string_lossy().into_owned()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn solve_k2_prints_weight_and_edges() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "k2.txt", "p match 2 1\ne 1 2 7\n");
    let o = run(&["solve", &f]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "weight 7\nm 1 2 1\n");
}

#[test]
fn all_modes_agree_with_the_oracle() {
    let dir = tempfile::tempdir().unwrap();
    for seed in 0..6 {
        let g = run(&["gen", "--n", "6", "--m", "12", "--maxw", "40", "--fmax", "3", "--seed", &seed.to_string()]);
        let f = write(dir.path(), "g.txt", &stdout(&g));
        let want = run(&["oracle", &f]);
        for mode in ["auto", "scaling", "classic"] {
            let got = run(&["solve", &f, "--mode", mode]);
            assert_eq!(got.status.code(), want.status.code(), "seed {seed} mode {mode}");
            let first = |o: &Output| stdout(o).lines().next().map(str::to_string);
            assert_eq!(first(&got), first(&want), "seed {seed} mode {mode}");
        }
    }
}

#[test]
fn certificate_round_trip_and_tamper() {
    let dir = tempfile::tempdir().unwrap();
    let g = run(&["gen", "--n", "10", "--m", "30", "--maxw", "50", "--seed", "3"]);
    let mut text = stdout(&g);
    text = text.replacen("p match 10 30", "p match 10 35", 1);
    for v in (1..=10).step_by(2) {
        text.push_str(&format!("e {} {} 0\n", v, v + 1));
    }
    let f = write(dir.path(), "g.txt", &text);
    let cert = dir.path().join("g.cert");
    let c = cert.to_string_lossy().into_owned();
    let o = run(&["solve", &f, "--cert", &c]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let o = run(&["verify", &f, &c]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("ok"));

    let body = fs::read_to_string(&cert).unwrap();
    let tampered: String = body
        .lines()
        .map(|l| if l.starts_with("y 1 ") { "y 1 -1000".to_string() } else { l.to_string() })
        .collect::<Vec<_>>()
        .join("\n");
    let t = write(dir.path(), "bad.cert", &tampered);
    assert_eq!(run(&["verify", &f, &t]).status.code(), Some(3));
}

#[test]
fn gen_is_deterministic() {
    let a = run(&["gen", "--n", "9", "--m", "20", "--fmax", "3", "--seed", "1"]);
    let b = run(&["gen", "--n", "9", "--m", "20", "--fmax", "3", "--seed", "1"]);
    assert_eq!(a.stdout, b.stdout);
    assert!(stdout(&a).starts_with("p ffactor 9 20\n"));
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let odd = write(dir.path(), "odd.txt", "p match 3 3\ne 1 2 1\ne 2 3 1\ne 1 3 1\n");
    assert_eq!(run(&["solve", &odd]).status.code(), Some(2));
    let bad = write(dir.path(), "bad.txt", "p match 2 1\ne 1 9 1\n");
    assert_eq!(run(&["solve", &bad]).status.code(), Some(4));
    let dup = write(dir.path(), "dup.txt", "p ffactor 2 0\nd 1 1\nd 1 1\n");
    assert_eq!(run(&["solve", &dup]).status.code(), Some(4));
    let huge = write(dir.path(), "huge.txt", "p match 2 1\ne 1 2 4000000000000000000\n");
    assert_eq!(run(&["solve", &huge]).status.code(), Some(5));
}

#[test]
fn assert_bounds_from_flag_and_env() {
    let dir = tempfile::tempdir().unwrap();
    let g = run(&["gen", "--n", "12", "--m", "40", "--maxw", "1000", "--fmax", "2", "--seed", "5"]);
    let f = write(dir.path(), "g.txt", &stdout(&g));
    let plain = run(&["solve", &f]);
    let flag = run(&["solve", &f, "--assert-bounds"]);
    let env = bin().args(["solve", &f]).env("BLOSSOM_SCALE_ASSERTS", "1").output().unwrap();
    assert_eq!(plain.stdout, flag.stdout);
    assert_eq!(plain.stdout, env.stdout);
}

#[test]
fn trace_goes_to_stderr() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "p.txt", "p match 4 3\ne 1 2 3\ne 2 3 5\ne 3 4 3\n");
    let o = run(&["solve", &f, "--trace"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().next(), Some("weight 6"));
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("augment"), "{err}");
}

#[test]
fn bench_text_and_json() {
    let dir = tempfile::tempdir().unwrap();
    for seed in 0..3 {
        let g = run(&["gen", "--n", "8", "--m", "24", "--fmax", "2", "--seed", &seed.to_string()]);
        write(dir.path(), &format!("i{seed}.txt"), &stdout(&g));
    }
    let d = dir.path().to_string_lossy().into_owned();
    let o = run(&["bench", &d]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert_eq!(stdout(&o).lines().count(), 3);
    let o = run(&["bench", &d, "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let rows: Vec<serde_json::Value> = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(rows.len(), 3);
    assert_eq!(rows[0]["file"], "i0.txt");
}
