use std::process::{Command, Output};

fn qrsv(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qrsv"))
        .args(args)
        .env_remove("QRSV_ORDER")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn eval_dump() {
    let o = qrsv(&["eval", "q + q", "--order", "5"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "1 2\n# valid_through 5\n");
}

#[test]
fn unknown_check() {
    let o = qrsv(&["check", "nosuch"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("nosuch"));
}

#[test]
fn conj1_check() {
    let o = qrsv(&["check", "conj1", "--order", "100"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("PASS  conj1"));
}

#[test]
fn fractional_order_and_env() {
    let o = qrsv(&["check", "sprod", "--order", "75/2"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("order=75/2"));

    let o = Command::new(env!("CARGO_BIN_EXE_qrsv"))
        .args(["check", "rr1"])
        .env("QRSV_ORDER", "33")
        .output()
        .unwrap();
    assert!(stdout(&o).contains("order=33"));
    // the flag wins over the environment
    let o = Command::new(env!("CARGO_BIN_EXE_qrsv"))
        .args(["check", "rr1", "--order", "21"])
        .env("QRSV_ORDER", "33")
        .output()
        .unwrap();
    assert!(stdout(&o).contains("order=21"));
}

#[test]
fn json_reports() {
    let o = qrsv(&[
        "check-all",
        "--only",
        "rr1,rr2,wz",
        "--order",
        "40",
        "--format",
        "json",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let ids: Vec<_> = v
        .as_array()
        .unwrap()
        .iter()
        .map(|r| r["id"].as_str().unwrap())
        .collect();
    assert_eq!(ids, ["rr1", "rr2", "wz"]);
    for r in v.as_array().unwrap() {
        assert_eq!(r["status"], "pass");
        assert_eq!(r["order"], "40");
        assert!(r["window"].is_string() && r["millis"].is_u64());
    }
}

#[test]
fn text_and_json_agree() {
    let text = stdout(&qrsv(&[
        "check-all",
        "--only",
        "mid1,mid2,conj2",
        "--order",
        "50",
    ]));
    let json = stdout(&qrsv(&[
        "check-all",
        "--only",
        "mid1,mid2,conj2",
        "--order",
        "50",
        "--format",
        "json",
    ]));
    let v: serde_json::Value = serde_json::from_str(&json).unwrap();
    for r in v.as_array().unwrap() {
        let line = format!(
            "{}  {}",
            r["status"].as_str().unwrap().to_uppercase(),
            r["id"].as_str().unwrap()
        );
        assert!(text.contains(&line), "{line}");
    }
}

#[test]
fn nahm_command() {
    let o = qrsv(&["nahm", "--spec", "A=[[2]] B=[0]", "--order", "8"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(
        stdout(&o),
        "0 1\n1 1\n2 1\n3 1\n4 2\n5 2\n6 3\n7 3\n# valid_through 8\n"
    );
}

#[test]
fn list_and_usage() {
    let o = qrsv(&["list"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    for id in ["conj1", "w8", "kl2", "snd5"] {
        assert!(text.lines().any(|l| l.starts_with(id)), "{id}");
    }
    assert_eq!(qrsv(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(
        qrsv(&["eval", "q +", "--order", "5"]).status.code(),
        Some(2)
    );
    assert_eq!(qrsv(&["eval", "q", "--order", "-1"]).status.code(), Some(2));
}

#[test]
fn output_file() {
    let dir = std::env::temp_dir().join(format!("qrsv-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("out.txt");
    let o = qrsv(&[
        "eval",
        "2*q^3",
        "--order",
        "4",
        "--output",
        path.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(
        std::fs::read_to_string(&path).unwrap(),
        "3 2\n# valid_through 4\n"
    );
    std::fs::remove_dir_all(&dir).unwrap();
}
