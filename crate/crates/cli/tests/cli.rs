use assert_cmd::Command;

fn fredholm() -> Command {
    let mut cmd = Command::cargo_bin("fredholm").unwrap();
    cmd.env_remove("FREDHOLM_THREADS");
    cmd
}

fn stdout_of(args: &[&str]) -> String {
    let out = fredholm().args(args).output().unwrap();
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn rows(csv: &str) -> Vec<Vec<f64>> {
    csv.lines().skip(1).map(|l| l.split(',').map(|c| c.parse().unwrap()).collect()).collect()
}

#[test]
fn gap_probability_example() {
    let out =
        stdout_of(&["det", "--kernel", "sine", "--a", "0", "--b", "0.1", "--z", "-1", "--m", "5", "--rule", "gauss"]);
    let mut lines = out.lines();
    assert_eq!(lines.next(), Some("m,value,roundoff_bound"));
    let row: Vec<&str> = lines.next().unwrap().split(',').collect();
    assert_eq!(row[0], "5");
    assert_eq!(row[1], "0.900027271798259");
}

#[test]
fn one_point_gauss_rule() {
    let out = stdout_of(&["quad", "--rule", "gauss", "--a", "0", "--b", "1", "--m", "1"]);
    assert_eq!(out, "node,weight\n0.5,1\n");
}

#[test]
fn green_bench_converges_quadratically() {
    let out = stdout_of(&["green-bench", "--m-list", "4,8,16,32", "--method", "nystrom-gauss"]);
    let r = rows(&out);
    assert_eq!(r.len(), 4);
    for w in r.windows(2) {
        let ratio = w[0][2] / w[1][2];
        assert!((3.5..4.5).contains(&ratio), "ratio {ratio}");
    }
}

#[test]
fn unknown_kernel_is_a_usage_error() {
    let out = fredholm().args(["det", "--kernel", "bessel", "--a", "0", "--b", "1", "--m", "4"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    for name in ["sine", "airy", "green", "airy2:<t>", "airy1:<t>"] {
        assert!(err.contains(name), "{err}");
    }
}

#[test]
fn exit_codes() {
    // malformed argument list
    assert_eq!(fredholm().args(["det", "--kernel"]).output().unwrap().status.code(), Some(2));
    // domain error
    assert_eq!(fredholm().args(["e2", "--s-min", "-1", "--s-max", "-1"]).output().unwrap().status.code(), Some(2));
    // an under-resolved gap probability leaves [0, 1]
    let out = fredholm().args(["e2", "--s-min", "3", "--s-max", "3", "--m", "5"]).output().unwrap();
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8(out.stderr).unwrap().starts_with("fredholm: "));
    assert!(out.stdout.is_empty());
}

#[test]
fn json_mirrors_csv_fields() {
    let args = ["e2", "--s-min", "0", "--s-max", "1", "--step", "0.5"];
    let csv = stdout_of(&args);
    let mut json_args = args.to_vec();
    json_args.extend(["--format", "json"]);
    let json: serde_json::Value = serde_json::from_str(&stdout_of(&json_args)).unwrap();
    let arr = json.as_array().unwrap();
    let r = rows(&csv);
    assert_eq!(arr.len(), r.len());
    for (obj, row) in arr.iter().zip(&r) {
        let keys: Vec<&String> = obj.as_object().unwrap().keys().collect();
        assert_eq!(keys.len(), 3);
        assert_eq!(obj["param"].as_f64().unwrap(), row[0]);
        assert_eq!(obj["value"].as_f64().unwrap(), row[1]);
        assert_eq!(obj["est_error"].as_f64().unwrap(), row[2]);
    }
}

#[test]
fn output_is_deterministic_across_thread_counts() {
    let args = ["f2", "--s-min", "-4", "--s-max", "0", "--step", "0.5", "--m", "30"];
    let one = fredholm().args(args).args(["--threads", "1"]).output().unwrap();
    let four = fredholm().args(args).args(["--threads", "4"]).output().unwrap();
    let env = fredholm().args(args).env("FREDHOLM_THREADS", "3").args(["--threads", "1"]).output().unwrap();
    assert!(one.status.success());
    assert_eq!(one.stdout, four.stdout);
    assert_eq!(one.stdout, env.stdout);
    let study = ["study", "--kernel", "sine", "--a", "0", "--b", "2", "--m-list", "4,8,12,16"];
    assert_eq!(
        stdout_of(&study),
        String::from_utf8(fredholm().args(study).args(["--threads", "2"]).output().unwrap().stdout).unwrap()
    );
}

#[test]
fn bad_thread_settings_are_rejected() {
    let out = fredholm().args(["quad", "--m", "2"]).env("FREDHOLM_THREADS", "zero").output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(fredholm().args(["quad", "--m", "2", "--threads", "0"]).output().unwrap().status.code(), Some(2));
}

#[test]
fn output_file() {
    let dir = std::env::temp_dir().join(format!("fredholm-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("quad.csv");
    let out = fredholm().args(["quad", "--m", "2", "-o", path.to_str().unwrap()]).output().unwrap();
    assert!(out.status.success() && out.stdout.is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    assert_eq!(text.lines().count(), 3);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn negative_arguments_and_lists() {
    let out = stdout_of(&["joint", "--process", "airy2", "--t", "1", "--s1", "-1,0", "--s2", "-1", "--m", "16"]);
    let r = rows(&out);
    assert_eq!(r.len(), 2);
    assert!(r[0][3] < r[1][3]);
    let out = stdout_of(&["trunc-bound", "--s", "-8,-2", "--T-min", "8", "--T-max", "16", "--step", "8"]);
    assert_eq!(rows(&out).len(), 4);
    let out = stdout_of(&["det", "--kernel", "airy", "--a", "-2", "--b", "inf", "--m", "40"]);
    let v = rows(&out)[0][1];
    assert!((v - 0.413224142505122).abs() < 1e-12, "{v}");
}

#[test]
fn specfun_point() {
    let out = stdout_of(&["specfun", "--func", "airy", "--x", "0"]);
    assert_eq!(out, "x,ai,ai_prime\n0,0.35502805388781722,-0.25881940379280682\n");
}
