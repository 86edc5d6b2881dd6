use std::path::PathBuf;
use std::process::{Command, Output};

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../data")
        .join(name)
}

fn gpq(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gpq"))
        .args(args)
        .env_remove("GPQ_STEP_CAP")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

#[test]
fn z2_ball_counts() {
    let o = gpq(&["ball", data("z2.gp").to_str().unwrap(), "--radius", "2"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o).trim(), "V=13 E=16 C=4 pi1=4");
}

#[test]
fn free_ball_is_a_tree() {
    let o = gpq(&["ball", data("f2.gp").to_str().unwrap(), "--radius", "3"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).trim().ends_with("pi1=0"), "{}", stdout(&o));
}

#[test]
fn kill_radius_on_z2() {
    let o = gpq(&[
        "ball",
        data("z2.gp").to_str().unwrap(),
        "--radius",
        "2",
        "--kill-radius",
        "3",
    ]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("kill_radius="), "{}", stdout(&o));
}

#[test]
fn d8_word_reduces() {
    let o = gpq(&[
        "rewrite",
        data("d8.gp").to_str().unwrap(),
        "--word",
        "adada",
    ]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o).lines().next(), Some("dad"));
}

#[test]
fn d8_system_is_certified() {
    let o = gpq(&[
        "rewrite",
        data("d8.gp").to_str().unwrap(),
        "--confluence",
        "--ball-witness",
        "2",
    ]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    assert!(stdout(&o).contains("ball witness: B(2) simply connected"));
}

#[test]
fn exit_codes() {
    let missing = gpq(&["ball", "/nonexistent/x.gp"]);
    assert_eq!(code(&missing), 2);
    let mismatch = gpq(&[
        "ball",
        data("bs12.gp").to_str().unwrap(),
        "--backend",
        "abelian",
    ]);
    assert_eq!(code(&mismatch), 3);
    let limit = gpq(&[
        "rewrite",
        data("expand.gp").to_str().unwrap(),
        "--word",
        "a",
    ]);
    assert_eq!(code(&limit), 4);
    let bad_flag = gpq(&["ball", data("z2.gp").to_str().unwrap(), "--radius", "x"]);
    assert_eq!(code(&bad_flag), 2);
}

#[test]
fn step_cap_from_environment() {
    let o = Command::new(env!("CARGO_BIN_EXE_gpq"))
        .args([
            "rewrite",
            data("expand.gp").to_str().unwrap(),
            "--word",
            "a",
        ])
        .env("GPQ_STEP_CAP", "5")
        .output()
        .unwrap();
    assert_eq!(code(&o), 4);
    let bad = Command::new(env!("CARGO_BIN_EXE_gpq"))
        .args(["grigorchuk", "verify", "--max-n", "0"])
        .env("GPQ_STEP_CAP", "lots")
        .output()
        .unwrap();
    assert_eq!(code(&bad), 2);
}

#[test]
fn verify_reports() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("v.json");
    let o = gpq(&[
        "grigorchuk",
        "verify",
        "--max-n",
        "2",
        "--json",
        path.to_str().unwrap(),
    ]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).starts_with("reports=64 equal=64 failed=0"));
    let v: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["exit"], 0);
    assert_eq!(v["payload"]["reports"].as_array().unwrap().len(), 64);

    let empty = gpq(&["grigorchuk", "verify", "--max-n", "0"]);
    assert_eq!(code(&empty), 0);
    assert!(stdout(&empty).starts_with("reports=0"));
}

#[test]
fn show_prints_power_form() {
    let o = gpq(&[
        "grigorchuk",
        "show",
        "--variant",
        "abd",
        "--family",
        "w",
        "--n",
        "1",
    ]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o).trim(), "(abdabd)^4");
    let bad = gpq(&["grigorchuk", "show", "--variant", "xyz"]);
    assert_eq!(code(&bad), 2);
}

#[test]
fn json_is_reproducible() {
    let dir = tempfile::tempdir().unwrap();
    let run = |name: &str| {
        let p = dir.path().join(name);
        let o = gpq(&[
            "ball",
            data("d8.gp").to_str().unwrap(),
            "--radius",
            "3",
            "--json",
            p.to_str().unwrap(),
        ]);
        assert_eq!(code(&o), 0);
        std::fs::read(p).unwrap()
    };
    assert_eq!(run("a.json"), run("b.json"));
}

#[test]
fn hnn_of_lysenok() {
    let o = gpq(&["hnn", data("lysenok.gp").to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    let text = stdout(&o);
    assert!(text.contains("gens a!, c!, d!, t;"), "{text}");
    assert_eq!(text.lines().filter(|l| l.starts_with("rel ")).count(), 8);
    assert!(text.contains("rel t d t' c;"));
}

#[test]
fn expand_lists_images() {
    let o = gpq(&[
        "expand",
        data("lysenok.gp").to_str().unwrap(),
        "--depth",
        "1",
    ]);
    assert_eq!(code(&o), 0);
    // three seeds plus their images under t
    assert_eq!(stdout(&o).lines().count(), 6);
}
