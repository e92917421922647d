use std::path::PathBuf;
use std::process::{Command, Output};

use qgame::ewl::{two_param_payoff_closed_form, PdPayoffs, TwoParam};

fn games() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../games")
}

fn game(name: &str) -> String {
    games().join(name).to_string_lossy().into_owned()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qgame")).args(args).env_remove("QGAME_SEED").output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

#[test]
fn iso_pd_pair() {
    let o = run(&["iso", &game("pd.game"), &game("pd_swapped.game")]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("strong isomorphisms: 2"));
    assert!(stdout(&o).contains("eta=[1->1 2->2] phi=[[0, 1] [1, 0]]"));
}

#[test]
fn iso_same_file_includes_identity() {
    let o = run(&["iso", &game("three_player.game"), &game("three_player.game")]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("eta=[1->1 2->2 3->3] phi=[[0, 1] [0, 1] [0, 1]]"));
    assert!(stdout(&o).contains("player 1: u' = 1 * u + 0"));
}

#[test]
fn iso_antidiagonal_pair_is_negative() {
    let o = run(&["iso", &game("antidiagonal.game"), &game("antidiagonal_swapped.game")]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("strong isomorphisms: none"));
}

#[test]
fn malformed_file_reports_line() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.game");
    std::fs::write(&path, "players: 2\nstrategies 1: a b\nstrategies 2: c d\npayoff (a,x): 1 2\n").unwrap();
    let o = run(&["iso", path.to_str().unwrap(), &game("pd.game")]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("line 4"), "{}", stderr(&o));
}

#[test]
fn missing_file_is_io_error() {
    let o = run(&["iso", "/nonexistent/a.game", &game("pd.game")]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn lift_verify_cases() {
    let o = run(&["lift-verify", &game("three_player.game"), &game("three_player_image.game"), "--samples", "100"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("lifted: 1->2:keep 2->3:flip 3->1:flip"));

    let o = run(&["lift-verify", &game("pd.game"), &game("pd_swapped.game"), "--samples", "50", "--spaces", "full"]);
    assert_eq!(o.status.code(), Some(0));

    // two-parameter strategies are not closed under the flip
    let o = run(&["lift-verify", &game("pd.game"), &game("pd_swapped.game"), "--samples", "50"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("space-escape"));

    let o = run(&["lift-verify", &game("antidiagonal.game"), &game("antidiagonal_swapped.game")]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("no strong isomorphism"));
}

#[test]
fn lift_verify_is_deterministic_and_echoes_seed() {
    let args = ["lift-verify", &game("pd.game"), &game("pd_swapped.game"), "--spaces", "full", "--samples", "30"];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(stdout(&a), stdout(&b));
    assert!(stdout(&a).contains("seed: 1\n"));

    let env = Command::new(env!("CARGO_BIN_EXE_qgame")).args(args).env("QGAME_SEED", "77").output().unwrap();
    assert!(stdout(&env).contains("seed: 77\n"));
    let mut with_flag: Vec<&str> = args.to_vec();
    with_flag.extend(["--seed", "5"]);
    let flag = Command::new(env!("CARGO_BIN_EXE_qgame")).args(&with_flag).env("QGAME_SEED", "77").output().unwrap();
    assert!(stdout(&flag).contains("seed: 5\n"));
}

#[test]
fn ne_classical_grid() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("ne.csv");
    let o = run(&["ne", &game("pd.game"), "--spaces", "one", "--grid", "2,1,1", "--csv", csv.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("equilibria: 1"));
    let text = std::fs::read_to_string(&csv).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "theta1,alpha1,beta1,theta2,alpha2,beta2,payoff1,payoff2,eps");
    assert_eq!(lines[1], "3.14159265358979,0,0,3.14159265358979,0,0,1,1,0");
    assert_eq!(lines.len(), 2);
}

#[test]
fn ne_pd_contains_quantum_equilibrium() {
    let o = run(&["ne", &game("pd.game")]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o)
        .contains("U(0.000000, 1.570796, 0.000000) x U(0.000000, 1.570796, 0.000000)  payoffs (3.000000, 3.000000)"));
}

#[test]
fn ne_swapped_pd_has_none() {
    let o = run(&["ne", &game("pd_swapped.game"), "--eps", "0.05"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("equilibria: 0"));
}

#[test]
fn ne_input_errors() {
    assert_eq!(run(&["ne", &game("pd.game"), "--spaces", "gamma"]).status.code(), Some(2));
    assert_eq!(run(&["ne", &game("pd.game"), "--grid", "1,3"]).status.code(), Some(2));
    assert_eq!(run(&["ne", &game("pd.game"), "--grid", "0,3"]).status.code(), Some(2));
    assert_eq!(run(&["ne", &game("pd.game"), "--spaces", "alpha,beta,one"]).status.code(), Some(2));
}

fn surface_rows(args: &[&str]) -> Vec<Vec<f64>> {
    let o = run(args);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let text = stdout(&o);
    assert!(!text.contains('\r'));
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("theta,alpha,payoff1,payoff2"));
    lines.map(|l| l.split(',').map(|x| x.parse().unwrap()).collect()).collect()
}

#[test]
fn surface_corners_match_closed_form() {
    let rows = surface_rows(&["surface", &game("pd_swapped.game"), "--grid", "3,3"]);
    assert_eq!(rows.len(), 9);
    let pd = PdPayoffs::new(5.0, 3.0, 1.0, 0.0);
    let opp = TwoParam::new(0.0, 0.0);
    for row in &rows {
        let (u1, u2) = two_param_payoff_closed_form(TwoParam::new(row[0], row[1]), opp, &pd);
        assert!((row[2] - u1).abs() < 1e-12 && (row[3] - u2).abs() < 1e-12, "{row:?}");
    }
    // hand evaluation: θ=0 puts all weight on |00> -> (S,T); θ=π on |10> -> (P,P)
    assert_eq!(rows[0], vec![0.0, 0.0, 0.0, 5.0]);
    assert_eq!(rows[8][2..], [1.0, 1.0]);
    assert!((rows[8][0] - std::f64::consts::PI).abs() < 1e-14);
}

#[test]
fn surface_row_counts() {
    assert_eq!(surface_rows(&["surface", &game("pd.game"), "--grid", "1,1"]).len(), 1);
    for (t, a) in [(2, 5), (4, 1), (7, 3)] {
        let spec = format!("{t},{a}");
        let rows =
            surface_rows(&["surface", &game("pd.game"), "--grid", &spec, "--player", "2", "--opponent", "1,2,3"]);
        assert_eq!(rows.len(), t * a);
    }
}

#[test]
fn surface_file_output_and_errors() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("s.csv");
    let o = run(&["surface", &game("pd.game"), "--grid", "3,3", "--csv", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let text = std::fs::read_to_string(&out).unwrap();
    assert_eq!(text.lines().count(), 10);
    assert!(text.ends_with('\n'));

    let bad = dir.path().join("missing").join("s.csv");
    assert_eq!(run(&["surface", &game("pd.game"), "--csv", bad.to_str().unwrap()]).status.code(), Some(3));
    assert_eq!(run(&["surface", &game("three_player.game")]).status.code(), Some(2));
    assert_eq!(run(&["surface", &game("pd.game"), "--player", "3"]).status.code(), Some(2));
    assert_eq!(run(&["surface", &game("pd.game"), "--opponent", "4,0"]).status.code(), Some(2));
}

#[test]
fn identities_pass() {
    let o = run(&["identities", "--samples", "50", "--seed", "3"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("seed: 3\n"));
    assert_eq!(text.matches("PASS: identity").count(), 6);
}
