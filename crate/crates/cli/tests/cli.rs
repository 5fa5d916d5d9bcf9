use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pdmwell"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn parse_csv(text: &str) -> (Vec<String>, Vec<Vec<f64>>) {
    let mut lines = text.lines();
    let header = lines.next().unwrap().split(',').map(String::from).collect();
    let rows = lines
        .map(|l| l.split(',').map(|c| c.parse().unwrap()).collect())
        .collect();
    (header, rows)
}

#[test]
fn potential_csv_contract() {
    let o = run(&["potential", "--samples", "601"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(!text.contains('\r'));
    let (header, rows) = parse_csv(&text);
    assert_eq!(header, ["x", "v_eff"]);
    assert_eq!(rows.len(), 601);
    assert!((rows[0][0] - 1.002).abs() < 1e-15);
    assert!((rows[600][0] - 2.998).abs() < 1e-15);
    // The middle sample sits at x = 2, where the X1 potential is 19/6.
    assert_eq!(rows[300][0], 2.0);
    assert!((rows[300][1] - 19.0 / 6.0).abs() < 1e-14);
}

#[test]
fn float_format_is_fixed() {
    let text = stdout(&run(&["potential", "--samples", "5"]));
    for cell in text.lines().skip(1).flat_map(|l| l.split(',')) {
        let (mantissa, exp) = cell.split_once('e').expect("lowercase exponent");
        let digits = mantissa.trim_start_matches('-').replace('.', "");
        assert_eq!(digits.len(), 17, "{cell}");
        exp.parse::<i32>().unwrap();
    }
}

#[test]
fn output_is_byte_deterministic() {
    for args in [&["potential"][..], &["wavefunctions", "--format", "json"], &["spectrum", "--format", "csv"]] {
        assert_eq!(run(args).stdout, run(args).stdout);
    }
}

#[test]
fn wavefunction_csv_header_and_rows() {
    let o = run(&["wavefunctions", "--samples", "50"]);
    let (header, rows) = parse_csv(&stdout(&o));
    assert_eq!(header, ["x", "psi0", "psi1", "psi2"]);
    assert_eq!(rows.len(), 50);
}

#[test]
fn svg_is_single_rooted_with_exact_point_counts() {
    let o = run(&["wavefunctions", "--format", "svg", "--samples", "123"]);
    let svg = stdout(&o);
    assert_eq!(svg.matches("<svg").count(), 1);
    assert!(svg.trim_end().ends_with("</svg>"));
    assert!(!svg.contains("href"));
    let lines: Vec<_> = svg.lines().filter(|l| l.starts_with("<polyline")).collect();
    assert_eq!(lines.len(), 3);
    for (line, color) in lines.iter().zip(["black", "red", "green"]) {
        assert!(line.contains(&format!("stroke=\"{color}\"")));
        let pts = line.split("points=\"").nth(1).unwrap().trim_end_matches("\"/>");
        assert_eq!(pts.split(' ').count(), 123);
    }
    let pot = stdout(&run(&["potential", "--format", "svg"]));
    assert_eq!(pot.matches("<polyline").count(), 1);
    assert!(pot.contains("width=\"800\"") && pot.contains("height=\"600\""));
}

#[test]
fn out_flag_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("pot.csv");
    let o = run(&["potential", "--out", path.to_str().unwrap()]);
    assert!(o.status.success());
    assert!(o.stdout.is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    assert_eq!(text.lines().count(), 601);
}

#[test]
fn spectrum_table_prints_fractions() {
    let text = stdout(&run(&["spectrum"]));
    assert!(text.contains("3.25 (13/4)"));
    assert!(text.contains("(71/12)"));
    assert!(text.contains("9.25 (37/4)"));
}

#[test]
fn spectrum_type_iii_starts_at_minus_two() {
    let text = stdout(&run(&["spectrum", "--kind", "x2-iii", "--format", "csv"]));
    let first = text.lines().nth(1).unwrap();
    assert!(first.starts_with("-2,"), "{first}");
}

#[test]
fn spectrum_numeric_deviations_are_small() {
    let text = stdout(&run(&["spectrum", "--numeric", "--count", "6", "--format", "csv"]));
    let mut lines = text.lines();
    assert_eq!(lines.next().unwrap(), "n,energy,numeric,relative_deviation,estimated_error");
    for l in lines {
        let dev: f64 = l.split(',').nth(3).unwrap().parse().unwrap();
        assert!(dev < 1e-5, "{l}");
    }
}

#[test]
fn verify_exit_codes() {
    let ok = run(&["verify"]);
    assert_eq!(ok.status.code(), Some(0));
    let report: serde_json::Value = serde_json::from_slice(&ok.stdout).unwrap();
    assert_eq!(report["version"], "1");
    assert!(report["checks"].as_array().unwrap().len() >= 40);
    assert!(String::from_utf8_lossy(&ok.stderr).contains("0 failed"));

    let bad = run(&["verify", "--omega", "0.1", "--a", "1", "--b", "10"]);
    assert_eq!(bad.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&bad.stderr).contains("2·omega·a²·b > b−a"));

    let fault = run(&["verify", "--inject-fault", "c_bar"]);
    assert_eq!(fault.status.code(), Some(1));
}

#[test]
fn constraint_violations_exit_two_with_names() {
    let o = run(&["potential", "--kind", "x2-ii", "--omega", "2", "--a", "0.5", "--b", "2"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("omega·a·b > (b−a)/a"));
    let o = run(&["spectrum", "--omega", "-1"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("omega > 0"));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(run(&["spectrum", "--format", "svg"]).status.code(), Some(2));
    assert_eq!(run(&["wavefunctions", "--kind", "x2-i"]).status.code(), Some(2));
    assert_eq!(run(&["potential", "--samples", "1"]).status.code(), Some(2));
    assert_eq!(run(&["potential", "--kind", "x3"]).status.code(), Some(2));
    assert_eq!(run(&["verify", "--inject-fault", "nope"]).status.code(), Some(2));
}
