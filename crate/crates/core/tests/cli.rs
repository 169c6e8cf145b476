use std::process::{Command, Output};

fn braid3(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_braid3")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn classify_json_has_the_report_keys() {
    let o = braid3(&["classify", "-w", "a1 a2 a3", "--output", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    for key in [
        "word",
        "xu_form",
        "xu_length",
        "components",
        "chi",
        "iota",
        "genus",
        "verdict",
        "mirrored",
        "witness",
        "hfk_top",
        "alexander",
        "monic",
        "certificate",
    ] {
        assert!(v.get(key).is_some(), "missing {key}");
    }
    assert_eq!(v["verdict"], "NearlyFibred");
    assert_eq!(v["witness"], "a2 a1 a2 a3");
    assert_eq!(v["xu_form"]["P"], "a1 a2 a3");
}

#[test]
fn fibred_words_carry_a_certificate() {
    let o = braid3(&["certify", "-w", "a2 a1 a1", "--output", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["verdict"], "Fibred");
    assert_eq!(v["certificate"]["moves"].as_array().unwrap().len(), 1);
}

#[test]
fn artin_input_is_accepted() {
    let o = braid3(&["invariants", "-w", "s1 s2 s1 s2", "--output", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["genus"], 1);
    assert_eq!(v["alexander"], "t - 1 + t^-1");
}

#[test]
fn usage_and_parse_errors_exit_with_two() {
    let o = braid3(&["classify", "-w", "a1 b2"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("position 3"));
    assert_eq!(braid3(&["classify"]).status.code(), Some(2));
    assert_eq!(braid3(&["enumerate", "--max-len", "11"]).status.code(), Some(2));
    assert_eq!(braid3(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn csv_enumeration_with_dedup() {
    let o = braid3(&["enumerate", "--max-len", "2", "--dedup", "--output", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(
        lines[0],
        "word,length,xu,xu_length,components,chi,iota,genus,verdict,mirrored,witness,hfk_top,alexander,monic"
    );
    let rows: Vec<&str> = lines[1..].iter().copied().filter(|l| !l.starts_with('#')).collect();
    assert_eq!(rows.len(), 8);
    let alpha: Vec<&&str> = rows.iter().filter(|r| r.contains(",N=;k=1;P=,")).collect();
    assert_eq!(alpha.len(), 1);
    assert!(alpha[0].contains(",Fibred,"));
    assert!(lines.last().unwrap().contains("fibred_iff_monic=true"));
}

#[test]
fn enumeration_does_not_depend_on_thread_count() {
    let serial = braid3(&["enumerate", "--max-len", "4", "--output", "json"]);
    let parallel = braid3(&["enumerate", "--max-len", "4", "--output", "json", "--parallel", "3"]);
    assert_eq!(serial.status.code(), Some(0));
    assert_eq!(stdout(&serial), stdout(&parallel));
    let v: serde_json::Value = serde_json::from_str(&stdout(&serial)).unwrap();
    assert!(v["rows"].as_array().unwrap().len() > 100);
    assert!(v["summary"].is_object());
}

#[test]
fn output_file_is_written() {
    let path = std::env::temp_dir().join(format!("braid3-cli-{}.csv", std::process::id()));
    let o = braid3(&["enumerate", "--max-len", "1", "--output", "csv", "--out", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let text = std::fs::read_to_string(&path).unwrap();
    std::fs::remove_file(&path).ok();
    assert!(text.starts_with("word,"));
}

#[test]
fn selftest_passes() {
    let o = braid3(&["--selftest"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
}
