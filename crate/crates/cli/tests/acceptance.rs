//! CLI acceptance: byte-identical reports under a fixed seed, and the
//! exit-code contract (0 pass, 1 mathematical failure, 2 usage error).

use std::path::Path;
use std::process::Command;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_schottkylab"))
}

fn write(path: &Path, content: &str) {
    std::fs::write(path, content).unwrap();
}

#[test]
fn criterion_12_reports_are_byte_identical_under_fixed_seed() {
    let tmp = tempdir("determinism");
    let (out_a, out_b) = (tmp.join("a"), tmp.join("b"));
    for out in [&out_a, &out_b] {
        let status = bin()
            .args(["--seed", "42", "--out"])
            .arg(out)
            .args(["verify", "--suite", "all"])
            .status()
            .unwrap();
        assert!(status.success(), "verify --suite all must pass");
    }
    for name in
        ["report_all.json", "report_moebius.json", "report_schottky.json", "report_lemmas.json", "report_belyi.json"]
    {
        let a = std::fs::read(out_a.join(name)).unwrap();
        let b = std::fs::read(out_b.join(name)).unwrap();
        assert_eq!(a, b, "{name} differs between identical runs");
    }
    println!("PASS criterion 12: verify --suite all --seed 42 writes byte-identical reports");
}

#[test]
fn schottky_exit_codes() {
    let tmp = tempdir("schottky-exit");
    let good = tmp.join("good.json");
    write(
        &good,
        r#"{"genus":2,"pairings":[
            {"c":{"center":[-6.0,0.0],"radius":1.0},"c_prime":{"center":[-2.0,0.0],"radius":1.0},"theta":0.0},
            {"c":{"center":[2.0,0.0],"radius":1.0},"c_prime":{"center":[6.0,0.0],"radius":1.0},"theta":0.0}
        ]}"#,
    );
    let status = bin()
        .arg("--out")
        .arg(tmp.join("out-good"))
        .args(["--svg", "schottky", "--config"])
        .arg(&good)
        .status()
        .unwrap();
    assert_eq!(status.code(), Some(0));
    assert!(tmp.join("out-good/schottky.svg").exists());

    // overlapping circles: report written, exit 1, condition (i) named
    let overlap = tmp.join("overlap.json");
    write(
        &overlap,
        r#"{"genus":2,"pairings":[
            {"c":{"center":[-6.0,0.0],"radius":2.5},"c_prime":{"center":[-2.0,0.0],"radius":2.5},"theta":0.0},
            {"c":{"center":[2.0,0.0],"radius":2.5},"c_prime":{"center":[6.0,0.0],"radius":2.5},"theta":0.0}
        ]}"#,
    );
    let out_dir = tmp.join("out-overlap");
    let status =
        bin().arg("--out").arg(&out_dir).args(["schottky", "--config"]).arg(&overlap).status().unwrap();
    assert_eq!(status.code(), Some(1));
    let report = std::fs::read_to_string(out_dir.join("report_schottky.json")).unwrap();
    assert!(report.contains("disjoint"), "report must name the failing condition");
    assert!(report.contains("\"pass\": false"));

    // truncated JSON: usage error
    let bad = tmp.join("truncated.json");
    write(&bad, r#"{"genus":2,"pairings":["#);
    let status = bin()
        .arg("--out")
        .arg(tmp.join("out-bad"))
        .args(["schottky", "--config"])
        .arg(&bad)
        .status()
        .unwrap();
    assert_eq!(status.code(), Some(2));
    println!("PASS schottky exit codes 0/1/2");
}

#[test]
fn annulus_round_descriptor() {
    let tmp = tempdir("annulus");
    let descriptor = tmp.join("round.json");
    write(&descriptor, r#"{"round":{"r":23.1407}}"#);
    let out_dir = tmp.join("out");
    let output = bin()
        .arg("--out")
        .arg(&out_dir)
        .args(["annulus", "--descriptor"])
        .arg(&descriptor)
        .output()
        .unwrap();
    assert_eq!(output.status.code(), Some(0), "{}", String::from_utf8_lossy(&output.stderr));
    let report = std::fs::read_to_string(out_dir.join("report_annulus.json")).unwrap();
    // log(23.1407)/pi is 1 to five digits; the separating circle is the unit circle
    assert!(report.contains("separating circle found"));
    assert!(report.contains("mod(A_rho^d) = d * mod(A_rho)"), "orientation note present");

    // unknown suite name is a usage error
    let status = bin().args(["verify", "--suite", "nonsense"]).status().unwrap();
    assert_eq!(status.code(), Some(2));
    println!("PASS annulus descriptor run and usage-error exit");
}

#[test]
fn dessin_command_flows() {
    let tmp = tempdir("dessin");
    // trivial triple, one refinement: degree 6, genus 0
    let trivial = tmp.join("trivial.json");
    write(&trivial, r#"{"degree":1,"s1":[0],"sw":[0],"sw2":[0]}"#);
    let out_dir = tmp.join("out-trivial");
    let output = bin()
        .arg("--out")
        .arg(&out_dir)
        .args(["dessin", "--monodromy"])
        .arg(&trivial)
        .args(["--refine", "1"])
        .output()
        .unwrap();
    assert_eq!(output.status.code(), Some(0), "{}", String::from_utf8_lossy(&output.stderr));
    let report = std::fs::read_to_string(out_dir.join("report_dessin.json")).unwrap();
    assert!(report.contains("degree 6, genus 0"));

    // genus-2 triple with loop search
    let five = tmp.join("five.json");
    write(&five, r#"{"degree":5,"s1":[1,2,3,4,0],"sw":[1,2,3,4,0],"sw2":[3,4,0,1,2]}"#);
    let out_dir = tmp.join("out-five");
    let status = bin()
        .arg("--out")
        .arg(&out_dir)
        .args(["--refine-max", "2", "--svg", "dessin", "--monodromy"])
        .arg(&five)
        .arg("--find-loops")
        .status()
        .unwrap();
    assert_eq!(status.code(), Some(0));
    let loops = std::fs::read_to_string(out_dir.join("loops.json")).unwrap();
    let parsed: serde_json::Value = serde_json::from_str(&loops).unwrap();
    assert_eq!(parsed["loops"].as_array().unwrap().len(), 2);
    assert!(out_dir.join("dessin.svg").exists());

    // non-transitive triple: diagnosed failure, exit 1
    let split = tmp.join("split.json");
    write(&split, r#"{"degree":2,"s1":[0,1],"sw":[0,1],"sw2":[0,1]}"#);
    let out_dir = tmp.join("out-split");
    let status =
        bin().arg("--out").arg(&out_dir).args(["dessin", "--monodromy"]).arg(&split).status().unwrap();
    assert_eq!(status.code(), Some(1));
    let report = std::fs::read_to_string(out_dir.join("report_dessin.json")).unwrap();
    assert!(report.contains("not transitive"));
    println!("PASS dessin command flows");
}

fn tempdir(tag: &str) -> std::path::PathBuf {
    let dir = std::env::temp_dir().join(format!("schottkylab-test-{tag}-{}", std::process::id()));
    let _ = std::fs::remove_dir_all(&dir);
    std::fs::create_dir_all(&dir).unwrap();
    dir
}
