use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

fn bin(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hermite-lf")).args(args).output().unwrap()
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("hermite-lf-cli-{}-{name}", std::process::id()));
    let _ = fs::remove_dir_all(&dir);
    fs::create_dir_all(&dir).unwrap();
    dir
}

fn drop_last_column(text: &str) -> Vec<String> {
    text.lines().map(|l| l.rsplit_once(',').unwrap().0.to_string()).collect()
}

#[test]
fn list_exits_zero() {
    let o = bin(&["list"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(String::from_utf8(o.stdout).unwrap().lines().count(), 7);
}

#[test]
fn unknown_experiment_exits_one_with_catalog() {
    let o = bin(&["run", "no-such-thing"]);
    assert_eq!(o.status.code(), Some(1));
    let err = String::from_utf8(o.stderr).unwrap();
    assert!(err.contains("maxwell-tm-2d"), "{err}");
}

#[test]
fn configuration_errors_exit_one() {
    for args in [
        &["run", "standing-wave-1d", "--resolutions", ""][..],
        &["run", "standing-wave-1d", "--resolutions", "20,10,40"],
        &["run", "standing-wave-1d", "--final-time", "0"],
        &["run", "standing-wave-1d", "--variant", "bogus"],
        &["run", "standing-wave-1d", "--cfl", "3"],
        &["run", "acoustics-2d", "--variant", "modified"],
    ] {
        assert_eq!(bin(args).status.code(), Some(1), "{args:?}");
    }
}

#[test]
fn run_writes_csv_and_is_deterministic() {
    let args = |dir: &PathBuf| {
        vec![
            "run".to_string(),
            "standing-wave-1d".into(),
            "--m".into(),
            "1,2".into(),
            "--resolutions".into(),
            "10,20,40".into(),
            "--out".into(),
            dir.display().to_string(),
        ]
    };
    let (a, b) = (scratch("det-a"), scratch("det-b"));
    for d in [&a, &b] {
        let o = Command::new(env!("CARGO_BIN_EXE_hermite-lf")).args(args(d)).output().unwrap();
        assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    }
    let read = |d: &PathBuf, f: &str| fs::read_to_string(d.join(f)).unwrap();
    let errors = read(&a, "standing-wave-1d_errors.csv");
    assert!(errors.starts_with("experiment,variant,m,cfl,K,h,field,l2_error,steps,wall_seconds\n"));
    assert!(errors.ends_with('\n'));
    assert_eq!(errors.lines().count(), 1 + 2 * 3 * 2);
    assert_eq!(drop_last_column(&errors), drop_last_column(&read(&b, "standing-wave-1d_errors.csv")));
    let rates = read(&a, "standing-wave-1d_rates.csv");
    assert_eq!(rates, read(&b, "standing-wave-1d_rates.csv"));
    assert_eq!(rates.lines().count(), 3);
}

#[test]
fn two_resolutions_give_no_rate_rows() {
    let dir = scratch("two");
    let o = bin(&["run", "standing-wave-1d", "--m", "1", "--resolutions", "10,20", "--out", dir.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let rates = fs::read_to_string(dir.join("standing-wave-1d_rates.csv")).unwrap();
    assert_eq!(rates, "experiment,variant,m,cfl,rate,points_used\n");
}

#[test]
fn flags_override_the_config_file() {
    let dir = scratch("cfg");
    let file = dir.join("run.conf");
    fs::write(
        &file,
        format!(
            "# sweep\nexperiment = standing-wave-1d\nm = 0\nresolutions = 10, 20, 40\nout = {}\n",
            dir.display()
        ),
    )
    .unwrap();
    let o = bin(&["run", "--config", file.to_str().unwrap(), "--m", "3"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let errors = fs::read_to_string(dir.join("standing-wave-1d_errors.csv")).unwrap();
    assert!(errors.lines().skip(1).all(|l| l.split(',').nth(2) == Some("3")), "{errors}");
}

#[test]
fn conserve_writes_trace() {
    let dir = scratch("conserve");
    let o = bin(&["conserve", "--m", "0,3", "--steps", "20", "--out", dir.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let text = fs::read_to_string(dir.join("conservation.csv")).unwrap();
    assert_eq!(text.lines().count(), 1 + 2 * 3 * 21);
}

#[test]
fn dispersion_prints_one_row_per_pair() {
    let o = bin(&["dispersion", "--m", "0,1", "--lambda", "0.2,0.9"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(String::from_utf8(o.stdout).unwrap().lines().count(), 5);
}
