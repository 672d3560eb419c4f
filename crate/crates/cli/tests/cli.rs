use std::io::Write;
use std::process::{Command, Output};

use janet_barcode::{
    is_complete_definition, CompletenessReport, JanetDecomposition, TermSet, Var, VariableOrdering,
};

const FOUR: &str = "x1^3, x2^3, x1^4*x2*x3, x3^2";
const TEN: &str = "x2*x3, x1^2, x3^2, x2^2, x1*x2, x1*x2*x4, x1^2*x4, x4*x3, x2^2*x4, x1^2*x3";
const SIX_ORDERS: &str = "x1, x1^2, x2, x1*x3";

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_janet-barcode"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

fn ord(min_to_max: &[usize]) -> VariableOrdering {
    VariableOrdering::from_min_to_max(min_to_max.iter().map(|&i| Var(i)).collect()).unwrap()
}

#[test]
fn render_ascii_matches_star_figure() {
    let o = run(&["render", "--terms", FOUR]);
    assert_eq!(code(&o), 0);
    let want = concat!(
        "   x1^3       x2^3       x1^4*x2*x3 x3^2\n",
        "x1 ──────────*──────────*──────────*──────────*\n",
        "x2 ────────── ──────────*──────────*──────────*\n",
        "x3 ───────────────────── ────────── ──────────*\n",
    );
    assert_eq!(stdout(&o), want);
    assert_eq!(stdout(&run(&["render", "--terms", FOUR])), want);
}

#[test]
fn render_final_ten_term_code() {
    let o = run(&["render", "--order", "x1<x2<x4<x3", "--terms", TEN]);
    assert_eq!(code(&o), 0);
    let text = stdout(&o);
    let rows: Vec<&str> = text.lines().collect();
    assert_eq!(rows.len(), 5);
    assert!(rows[4].starts_with("x3 "));
    // bottom row spans 6, 3 and 1 columns, only the last starred
    let bars: Vec<usize> = rows[4][3..]
        .split([' ', '*'])
        .filter(|s| !s.is_empty())
        .map(|s| s.chars().count())
        .collect();
    assert_eq!(bars, vec![6 * 9 - 1, 3 * 9 - 1, 8]);
    assert_eq!(rows[4].matches('*').count(), 1);
}

#[test]
fn render_singleton_and_svg() {
    let o = run(&["render", "--terms", "x1*x2^2*x3"]);
    let text = stdout(&o);
    assert_eq!(
        text.lines()
            .skip(1)
            .map(|l| l.matches('*').count())
            .sum::<usize>(),
        3
    );
    let svg = stdout(&run(&["render", "--format", "svg", "--terms", FOUR]));
    assert!(svg.starts_with("<svg") && svg.trim_end().ends_with("</svg>"));
    assert_eq!(svg.matches("<line").count(), 4 + 4 + 3);
    assert_eq!(svg.matches(">*<").count(), 8);
    let json = stdout(&run(&["render", "--format", "json", "--terms", FOUR]));
    let d: serde_json::Value = serde_json::from_str(&json).unwrap();
    assert_eq!(d["rows"].as_array().unwrap().len(), 3);
}

#[test]
fn check_complete_and_incomplete() {
    let o = run(&["check", "--verify", "--terms", "x1^2, x1*x2"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("x2 * (x1^2) -> x1*x2"));

    let o = run(&["check", "--verify", "--terms", FOUR]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).contains("first failure: x2 * (x1^3)"));

    let o = run(&["check", "--order", "x1<x2<x4<x3", "--terms", TEN]);
    assert_eq!(code(&o), 0);
}

#[test]
fn check_json_round_trips() {
    let o = run(&["check", "--format", "json", "--terms", FOUR]);
    let r: CompletenessReport = serde_json::from_str(&stdout(&o)).unwrap();
    let set: TermSet =
        serde_json::from_str(r#"{"n":3,"terms":[[3,0,0],[0,3,0],[4,1,1],[0,0,2]]}"#).unwrap();
    assert_eq!(
        r,
        is_complete_definition(&set, &VariableOrdering::identity(3)).unwrap()
    );
}

#[test]
fn parse_errors_exit_2() {
    let o = run(&["check", "--terms", "x0^2"]);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("line 1, column 2"));

    let mut f = tempfile::NamedTempFile::new().unwrap();
    writeln!(f, "# comment\nx1^2\n\nx1*x2 # trailing\nx1*z2").unwrap();
    let o = run(&["check", f.path().to_str().unwrap()]);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("line 5, column 4"), "{}", stderr(&o));

    assert_eq!(
        code(&run(&["check", "--terms", "x1, x2", "--order", "x1<x3"])),
        2
    );
    assert_eq!(code(&run(&["check", "/nonexistent/terms.txt"])), 2);
}

#[test]
fn file_input() {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    writeln!(f, "# {{x^2, xy}}\nx1^2\n1 1\n").unwrap();
    let o = run(&["check", f.path().to_str().unwrap()]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));

    let mut child = Command::new(env!("CARGO_BIN_EXE_janet-barcode"))
        .args(["check", "-"])
        .stdin(std::process::Stdio::piped())
        .stdout(std::process::Stdio::piped())
        .spawn()
        .unwrap();
    child
        .stdin
        .take()
        .unwrap()
        .write_all(b"x1^2\nx1*x2\n")
        .unwrap();
    let o = child.wait_with_output().unwrap();
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).starts_with("complete under x1<x2"));
}

#[test]
fn decompose_depends_on_ordering() {
    let a = run(&["decompose", "--terms", "x1, x2"]);
    let b = run(&["decompose", "--terms", "x1, x2", "--order", "x2<x1"]);
    assert_ne!(stdout(&a), stdout(&b));
    assert!(stdout(&b).contains("x1  mult {x1, x2}"));

    let o = run(&["decompose", "--format", "json", "--terms", FOUR]);
    let d: JanetDecomposition = serde_json::from_str(&stdout(&o)).unwrap();
    let t: janet_barcode::Term = serde_json::from_str("[4,1,1]").unwrap();
    assert_eq!(d.mult(&t).unwrap(), &[Var(0), Var(1)].into_iter().collect());

    let o = run(&["decompose", "--terms", "x1*x2*x3"]);
    assert!(stdout(&o).contains("mult {x1, x2, x3}  nonmult {}"));
}

#[test]
fn star_sets() {
    let o = run(&["star-set", "--terms", "1, x1, x2, x3"]);
    assert_eq!(stdout(&o), "x1^2\nx1*x2\nx2^2\nx1*x3\nx2*x3\nx3^2\n");
    let o = run(&["star-set", "--vars", "3", "--terms", "1"]);
    assert_eq!(stdout(&o), "x1\nx2\nx3\n");
    let o = run(&["star-set", "--terms", "1, x1", "--vars", "2"]);
    assert_eq!(stdout(&o), "x1^2\nx2\n");
    let o = run(&["star-set", "--terms", "x1, x1^2, x2*x3"]);
    assert_eq!(code(&o), 3);
    assert!(stderr(&o).contains("not an order ideal"));
}

#[test]
fn find_order_outcomes() {
    let o = run(&["find-order", "--terms", "x1*x2^3, x1^3*x2"]);
    assert_eq!(code(&o), 1);
    assert_eq!(stdout(&o), "none\n");

    let o = run(&["find-order", "--all", "--terms", TEN]);
    assert_eq!(code(&o), 0);
    let text = stdout(&o);
    assert!(text.contains("  x1<x2<x4<x3\n"));
    let found = text.lines().next().unwrap();
    assert!(text.contains(&format!("  {found}\n")));

    let o = run(&[
        "find-order",
        "--all",
        "--brute-force",
        "--terms",
        SIX_ORDERS,
    ]);
    let text = stdout(&o);
    assert!(text.starts_with("x3<x2<x1\n"));
    assert!(text.contains("  x3<x2<x1\n") && text.contains("  x1<x3<x2\n"));

    let o = run(&["find-order", "--trace", "--terms", SIX_ORDERS]);
    assert!(stdout(&o).contains("place x1"));
    assert!(stdout(&o).contains("found x3<x2<x1"));

    let o = run(&["find-order", "--all", "--cap", "2", "--terms", "x1, x2, x3"]);
    assert_eq!(code(&o), 4);
}

#[test]
fn find_order_json() {
    let o = run(&[
        "find-order",
        "--format",
        "json",
        "--all",
        "--trace",
        "--terms",
        SIX_ORDERS,
    ]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let found: VariableOrdering = serde_json::from_value(v["ordering"].clone()).unwrap();
    assert_eq!(found, ord(&[2, 1, 0]));
    let all: Vec<VariableOrdering> = serde_json::from_value(v["all"].clone()).unwrap();
    assert!(all.contains(&ord(&[0, 2, 1])));
    assert!(v["trace"].as_array().unwrap().len() > 2);
}

#[test]
fn gen_is_seeded() {
    let args = [
        "gen",
        "--vars",
        "3",
        "--count",
        "6",
        "--max-exp",
        "2",
        "--seed",
        "9",
    ];
    let a = stdout(&run(&args));
    assert_eq!(a, stdout(&run(&args)));
    assert_eq!(a.lines().count(), 6);
    let mut f = tempfile::NamedTempFile::new().unwrap();
    write!(f, "{a}").unwrap();
    let o = run(&["check", "--vars", "3", f.path().to_str().unwrap()]);
    assert!(code(&o) <= 1);

    let ideal = stdout(&run(&[
        "gen", "--vars", "2", "--count", "10", "--ideal", "--seed", "1",
    ]));
    let o = run(&[
        "star-set",
        "--vars",
        "2",
        "--terms",
        &ideal.lines().collect::<Vec<_>>().join(","),
    ]);
    assert_eq!(code(&o), 0);
}
