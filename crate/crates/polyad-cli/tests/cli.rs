use std::io::Write;
use std::process::{Command, Output, Stdio};

fn run(args: &[&str], stdin: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_polyad"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary runs");
    child.stdin.take().unwrap().write_all(stdin.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn example(name: &str) -> String {
    let o = run(&["example", name], "");
    assert!(o.status.success(), "example {name}");
    stdout(&o)
}

/// Ternary addition mod 3, optionally with one entry overwritten.
fn ternary_table(patch: Option<(usize, usize, usize, usize)>) -> String {
    let mut s = String::from("pgf 1\nkind table\narity 3\nsize 3\n");
    for a in 0..3 {
        for b in 0..3 {
            let row: Vec<String> = (0..3)
                .map(|c| match patch {
                    Some((x, y, z, v)) if (x, y, z) == (a, b, c) => v,
                    _ => (a + b + c) % 3,
                })
                .map(|v| v.to_string())
                .collect();
            s.push_str(&format!("row {}\n", row.join(" ")));
        }
    }
    s.push_str("end\n");
    s
}

#[test]
fn example_verifies() {
    let o = run(&["verify", "-"], &example("T3"));
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("verification: exhaustive"));
}

#[test]
fn rusakov_has_no_idempotents() {
    let o = run(&["idempotents", "-"], &example("Rusakov5"));
    assert_eq!(stdout(&o), "I(A) = {} (empty)\n");
}

#[test]
fn v6_subgroup_counts() {
    let out = stdout(&run(&["subgroups", "-"], &example("V6")));
    for line in
        ["12 subgroups", "order 6: 1 subgroup", "order 3: 2 subgroups", "order 2: 3 subgroups", "order 1: 6 subgroups"]
    {
        assert!(out.lines().any(|l| l == line), "missing {line:?} in\n{out}");
    }
}

#[test]
fn perturbed_table_fails_with_counterexample() {
    assert_eq!(run(&["verify", "-"], &ternary_table(None)).status.code(), Some(0));
    let o = run(&["verify", "-"], &ternary_table(Some((1, 2, 0, 2))));
    assert_eq!(o.status.code(), Some(1));
    let out = stdout(&o);
    assert!(out.starts_with("verification failed\nnot associative: on ("), "{out}");
}

#[test]
fn bad_input_exits_two() {
    let o = run(&["verify", "-"], "not a document");
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 1"));
    assert_eq!(run(&["example", "NoSuchGroup"], "").status.code(), Some(2));
    assert_eq!(run(&["verify", "/no/such/file.pgf"], "").status.code(), Some(2));
    let o = run(&["power", "-", "-e", "zz", "-s", "2"], &example("T3"));
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn output_is_byte_stable() {
    for args in [&["info", "-"][..], &["subgroups", "-"], &["classify", "-"], &["post-cover", "-"]] {
        let doc = example("D6_ternary");
        let a = run(args, &doc).stdout;
        let b = run(args, &doc).stdout;
        assert_eq!(a, b, "{args:?}");
    }
    assert_eq!(example("B3_5ary"), example("B3_5ary"));
}

#[test]
fn json_mode() {
    let o = run(&["--json", "verify", "-"], &example("T3"));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["group"], true);
    assert_eq!(v["verification"]["mode"], "exhaustive");
    let o = run(&["--json", "subgroups", "-"], &example("V6"));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["count"], 12);
    let o = run(&["--json", "verify", "-"], &ternary_table(Some((0, 0, 0, 1))));
    assert_eq!(o.status.code(), Some(1));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["exit_code"], 1);
}

/// The covering table encodes every n-ary product on the original labels,
/// so equal `post-cover` output means the rebuilt operation is the same.
#[test]
fn retract_round_trip_reproduces_the_operation() {
    for name in ["D6_ternary", "T3", "Rusakov5"] {
        let doc = example(name);
        for anchor in ["0", "1"] {
            let o = run(&["retract", "-", "-a", anchor], &doc);
            assert!(o.status.success(), "{name} at {anchor}");
            let rebuilt = stdout(&o);
            assert_eq!(
                stdout(&run(&["post-cover", "-"], &doc)),
                stdout(&run(&["post-cover", "-"], &rebuilt)),
                "{name} at {anchor}"
            );
        }
    }
}

#[test]
fn perm_group_and_product() {
    let p = stdout(&run(&["perm-group", "-q", "3", "-n", "3"], ""));
    let o = run(&["info", "-"], &p);
    assert!(stdout(&o).contains("size: 36"));
    let dir = std::env::temp_dir().join(format!("polyad-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let f = dir.join("t3.pgf");
    std::fs::write(&f, example("T3")).unwrap();
    let f = f.to_str().unwrap();
    let prod = stdout(&run(&["product", f, f], ""));
    let o = run(&["verify", "-"], &prod);
    assert!(stdout(&o).starts_with("size 9, arity 3"));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn axioms_audit_agrees() {
    let o = run(&["axioms", "--audit", "--max-k", "2", "--max-n", "3", "--random", "20"], "");
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("disagreements: 0"));
}

#[test]
fn solve_fills_the_hole() {
    let o = run(&["solve", "-", "--pattern", "1 _ 2", "--rhs", "0"], &ternary_table(None));
    assert_eq!(stdout(&o), "x = 0\n[1 0 2] = 0\n");
}
