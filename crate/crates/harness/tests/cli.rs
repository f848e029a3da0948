use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output, Stdio};

fn rsat(args: &[&str], stdin: Option<&str>) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_rsat"))
        .args(args)
        .env("RSAT_THREADS", "2")
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    let input = stdin.unwrap_or("").to_string();
    let mut pipe = child.stdin.take().unwrap();
    std::thread::spawn(move || pipe.write_all(input.as_bytes()));
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn temp(name: &str, contents: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("rsat-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, contents).unwrap();
    path
}

#[test]
fn gen_pipes_into_solve_deterministically() {
    let args = ["gen", "--k", "2", "--n", "10", "--m", "20", "--v", "continuous", "--seed", "7"];
    let g1 = rsat(&args, None);
    assert_eq!(g1.status.code(), Some(0), "{}", stderr(&g1));
    assert_eq!(stdout(&g1), stdout(&rsat(&args, None)));
    let s1 = rsat(&["solve", "--stdin"], Some(&stdout(&g1)));
    let s2 = rsat(&["solve", "--stdin"], Some(&stdout(&g1)));
    assert_eq!(s1.status.code(), Some(0), "{}", stderr(&s1));
    let verdict = stdout(&s1);
    assert!(verdict.starts_with("SAT\nv 1=") || verdict == "UNSAT\n", "{verdict}");
    assert_eq!(verdict, stdout(&s2));
    let complete = rsat(&["solve", "--stdin", "--decider", "complete"], Some(&stdout(&g1)));
    assert_eq!(verdict.lines().next(), stdout(&complete).lines().next());
}

#[test]
fn innocuous_literal_is_a_parse_error() {
    let path = temp("innocuous.rsat", "p rsat 2 2 1 continuous\n1:le:1/3 2:ge:0/1\n");
    let o = rsat(&["solve", path.to_str().unwrap()], None);
    assert_eq!(o.status.code(), Some(2));
    let err = stderr(&o);
    assert!(err.contains("line 2") && err.contains("2:ge:0/1"), "{err}");
}

#[test]
fn usage_errors_exit_one() {
    assert_eq!(rsat(&["gen", "--k", "2"], None).status.code(), Some(1));
    assert_eq!(rsat(&["frobnicate"], None).status.code(), Some(1));
    assert_eq!(rsat(&["solve"], None).status.code(), Some(1));
    assert_eq!(
        rsat(&["gen", "--k", "3", "--n", "2", "--m", "1", "--v", "continuous"], None).status.code(),
        Some(1)
    );
    assert_eq!(rsat(&["--help"], None).status.code(), Some(0));
    assert_eq!(rsat(&["solve", "/nonexistent/file"], None).status.code(), Some(2));
}

#[test]
fn resource_limit_exits_three() {
    let f = rsat(&["gen", "--k", "3", "--n", "60", "--m", "255", "--v", "continuous", "--seed", "1"], None);
    let o = rsat(&["solve", "--stdin", "--budget", "1"], Some(&stdout(&f)));
    assert_eq!(o.status.code(), Some(3), "{}", stderr(&o));
}

#[test]
fn bounds_k3_reports_root_and_reference() {
    let o = rsat(&["bounds", "--k", "3", "--v", "2,200"], None);
    let out = stdout(&o);
    assert_eq!(o.status.code(), Some(0));
    assert!(out.contains("c = 36.0"), "{out}");
    assert!(out.contains("36.1"), "{out}");
    assert!(out.contains("from v = 124"), "{out}");
    let o = rsat(&["bounds", "--k", "2"], None);
    assert!(stdout(&o).contains("12.664"));
}

#[test]
fn certificates_round_trip_through_files() {
    // the unsat square over two variables, written by hand
    let formula = "c model F\np rsat 2 2 4 continuous\n2:le:1/4 1:ge:3/4\n1:le:1/4 2:ge:3/4\n2:le:1/4 1:le:1/4\n1:ge:3/4 2:ge:3/4\n";
    let fpath = temp("square.rsat", formula);
    let o = rsat(&["cert", "find", "--kind", "bicycle", fpath.to_str().unwrap()], None);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let cert = stdout(&o);
    assert!(cert.starts_with("cert bicycle "), "{cert}");
    let cpath = temp("square.cert", &cert);
    let v = rsat(&["cert", "verify", fpath.to_str().unwrap(), cpath.to_str().unwrap()], None);
    assert_eq!(stdout(&v), "VALID\n");

    let tampered = cert.replacen("1:ge:3/4", "1:ge:1/8", 1);
    let tpath = temp("tampered.cert", &tampered);
    let v = rsat(&["cert", "verify", fpath.to_str().unwrap(), tpath.to_str().unwrap()], None);
    assert_eq!(stdout(&v), "INVALID\n");

    let o = rsat(&["cert", "find", "--kind", "snake", fpath.to_str().unwrap()], None);
    assert_eq!(stdout(&o), "NONE\n");
}

#[test]
fn sweep_csv_is_reproducible() {
    let dir = std::env::temp_dir().join(format!("rsat-sweep-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let out = dir.join("a.csv");
    let args = [
        "sweep", "--k", "2", "--v", "finite:2,continuous", "--n", "40", "--c", "0.5,1.5,3", "--trials", "30",
        "--seed", "5", "--crossing", "0.5", "--out", out.to_str().unwrap(),
    ];
    let o = rsat(&args, None);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let a = std::fs::read_to_string(&out).unwrap();
    assert!(a.starts_with("k,v,n,m,c,trials,sat,p_hat,ci_lo,ci_hi,seed\n"));
    assert_eq!(a.lines().count(), 7);
    assert!(std::fs::read_to_string(dir.join("a.csv.limits.csv")).unwrap().starts_with("k,v,n,m,c,limited"));
    assert!(stderr(&o).contains("crossing v=finite:2 n=40"));

    let o = rsat(&args[..args.len() - 2], None);
    assert_eq!(stdout(&o), a);
}

#[test]
fn moments_prints_exact_value() {
    let o = rsat(&["moments", "--n", "2", "--m", "2", "--d", "2,0", "--samples", "2000"], None);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stdout(&o).starts_with("exact   3 = 3.000000\nbound   4 = 4.000000\n"));
}
