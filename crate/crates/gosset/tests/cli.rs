//! End-to-end checks of the command-line surface: output formats, cache
//! files, and the exit-code contract (0 pass, 1 verification failure,
//! 2 usage error).

use std::process::Command;

fn gosset() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_gosset"));
    c.env_remove("GOSSET_CACHE_DIR");
    c
}

#[test]
fn catalog_counts_and_cache_bytes() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().to_str().unwrap();
    let out = gosset()
        .args([
            "--cache-dir",
            cache,
            "catalog",
            "--kind",
            "lines",
            "--r",
            "8",
        ])
        .output()
        .unwrap();
    assert!(out.status.success());
    assert_eq!(String::from_utf8_lossy(&out.stdout), "count: 240\n");
    let path = dir.path().join("lines-r8.jsonl");
    let first = std::fs::read(&path).unwrap();

    // warm cache: same stdout, identical file bytes
    let out2 = gosset()
        .args([
            "--cache-dir",
            cache,
            "catalog",
            "--kind",
            "lines",
            "--r",
            "8",
        ])
        .output()
        .unwrap();
    assert!(out2.status.success());
    assert_eq!(String::from_utf8_lossy(&out2.stdout), "count: 240\n");
    assert_eq!(std::fs::read(&path).unwrap(), first);

    let out3 = gosset()
        .args([
            "--cache-dir",
            cache,
            "catalog",
            "--kind",
            "rulings",
            "--r",
            "7",
        ])
        .output()
        .unwrap();
    assert_eq!(String::from_utf8_lossy(&out3.stdout), "count: 126\n");

    // the file parses as a header plus one JSON class per line
    let text = std::fs::read_to_string(&path).unwrap();
    let mut lines = text.lines();
    let header: serde_json::Value = serde_json::from_str(lines.next().unwrap()).unwrap();
    assert_eq!(header["kind"], "lines");
    assert_eq!(header["r"], 8);
    assert_eq!(header["count"], 240);
    assert_eq!(lines.clone().count(), 240);
    let first_class: serde_json::Value = serde_json::from_str(lines.next().unwrap()).unwrap();
    assert_eq!(first_class["coeffs"].as_array().unwrap().len(), 9);
}

#[test]
fn cache_dir_env_is_honored() {
    let dir = tempfile::tempdir().unwrap();
    let out = gosset()
        .env("GOSSET_CACHE_DIR", dir.path())
        .args(["catalog", "--kind", "roots", "--r", "6"])
        .output()
        .unwrap();
    assert!(out.status.success());
    assert_eq!(String::from_utf8_lossy(&out.stdout), "count: 72\n");
    assert!(dir.path().join("roots-r6.jsonl").exists());
}

#[test]
fn corrupted_cache_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("lines-r6.jsonl");
    std::fs::write(
        &path,
        "{\"kind\":\"lines\",\"r\":6,\"count\":1}\n{\"r\":6,\"coeffs\":[9,0,0,0,0,0,0]}\n",
    )
    .unwrap();
    let out = gosset()
        .args([
            "--cache-dir",
            dir.path().to_str().unwrap(),
            "catalog",
            "--kind",
            "lines",
            "--r",
            "6",
        ])
        .output()
        .unwrap();
    assert!(!out.status.success());
}

#[test]
fn inscribed_centers_only_examples() {
    for (r, n, b, expect) in [
        (8usize, 3usize, 1i64, "17520"),
        (7, 3, 1, "1"),
        (8, 2, 2, "1"),
    ] {
        let out = gosset()
            .args([
                "inscribed",
                "--r",
                &r.to_string(),
                "--n",
                &n.to_string(),
                "--b",
                &b.to_string(),
                "--centers-only",
            ])
            .output()
            .unwrap();
        assert!(out.status.success());
        assert_eq!(
            String::from_utf8_lossy(&out.stdout).trim(),
            expect,
            "({r},{n},{b})"
        );
    }
}

#[test]
fn inscribed_streams_the_forced_matching() {
    let out = gosset()
        .args(["inscribed", "--r", "8", "--n", "1", "--b", "3"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let stdout = String::from_utf8_lossy(&out.stdout);
    assert_eq!(stdout.lines().count(), 120);
    let row: serde_json::Value = serde_json::from_str(stdout.lines().next().unwrap()).unwrap();
    assert_eq!(row["degree"], 3);
    assert_eq!(row["vertices"].as_array().unwrap().len(), 2);
    assert_eq!(row["center"]["r"], 8);
}

#[test]
fn classified_simplex_schema() {
    let out = gosset()
        .args([
            "inscribed",
            "--r",
            "8",
            "--n",
            "3",
            "--b",
            "1",
            "--classify",
            "--limit",
            "200",
        ])
        .output()
        .unwrap();
    assert!(out.status.success());
    let stdout = String::from_utf8_lossy(&out.stdout);
    let mut saw_cornered = false;
    let mut saw_uncornered = false;
    for line in stdout.lines() {
        let row: serde_json::Value = serde_json::from_str(line).unwrap();
        assert_eq!(row["vertices"].as_array().unwrap().len(), 4);
        assert_eq!(row["degree"], 1);
        match row["tag"].as_str().unwrap() {
            "corned" => unreachable!(),
            "cornered" => {
                saw_cornered = true;
                assert!(row["corner_line"].is_u64());
            }
            "uncornered" => {
                saw_uncornered = true;
                assert_eq!(row["companion"]["r"], 8);
                assert_eq!(row["companion"]["coeffs"].as_array().unwrap().len(), 9);
            }
            other => panic!("unexpected tag {other}"),
        }
    }
    assert!(
        saw_cornered && saw_uncornered,
        "limit 200 should show both classes"
    );
}

#[test]
fn infeasible_triple_is_a_usage_error() {
    let out = gosset()
        .args([
            "inscribed",
            "--r",
            "6",
            "--n",
            "3",
            "--b",
            "1",
            "--centers-only",
        ])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(
        err.contains("feasible"),
        "error should cite the feasibility table: {err}"
    );
}

#[test]
fn unknown_flags_exit_2() {
    let out = gosset()
        .args(["catalog", "--kind", "lines"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2)); // missing --r
    let out = gosset().args(["bogus"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn graph_stats() {
    let out = gosset()
        .args(["graph", "--r", "8", "--degree", "1"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let row: serde_json::Value =
        serde_json::from_str(String::from_utf8_lossy(&out.stdout).trim()).unwrap();
    assert_eq!(row["vertices"], 240);
    assert_eq!(row["edges"], 15120);
    assert_eq!(row["regular"], 126);
}

#[test]
fn steiner_json_schema_matches_the_interface() {
    let out = gosset()
        .args(["steiner", "--name", "SB3S6"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let row: serde_json::Value =
        serde_json::from_str(String::from_utf8_lossy(&out.stdout).trim()).unwrap();
    assert_eq!(row["name"], "SB3S6");
    assert_eq!(row["k"], 3);
    assert_eq!(row["c"], 1);
    assert_eq!(row["blocks"].as_array().unwrap().len(), 45);
    assert_eq!(
        row.as_object().unwrap().keys().collect::<Vec<_>>(),
        ["blocks", "c", "k", "name"]
    );
}

#[test]
fn export_subpolytope_csv() {
    let out = gosset()
        .args(["export", "--what", "subpolytopes", "--r", "6"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let csv = String::from_utf8_lossy(&out.stdout);
    let mut lines = csv.lines();
    assert_eq!(lines.next().unwrap(), "r,polytope,expected,computed,pass");
    let rows: Vec<&str> = lines.collect();
    assert_eq!(rows.len(), 7);
    assert!(rows.iter().all(|r| r.ends_with(",true")));
    assert!(rows.iter().any(|r| r == &"6,alpha_3,1080,1080,true"));
}

#[test]
fn fano_output_has_seven_blocks_per_line() {
    let out = gosset().args(["fano", "--sample", "2"]).output().unwrap();
    assert!(out.status.success());
    for line in String::from_utf8_lossy(&out.stdout).lines() {
        let row: serde_json::Value = serde_json::from_str(line).unwrap();
        assert_eq!(row["blocks"].as_array().unwrap().len(), 7);
        assert_eq!(row["lines"].as_array().unwrap().len(), 7);
        assert_eq!(row["corner_lines"].as_array().unwrap().len(), 7);
    }
}

#[test]
fn cubes_commands() {
    for (r, dim, verts) in [(7usize, 3usize, 8usize), (8, 3, 8), (8, 4, 16)] {
        let out = gosset()
            .args([
                "cubes",
                "--r",
                &r.to_string(),
                "--dim",
                &dim.to_string(),
                "--sample",
                "2",
            ])
            .output()
            .unwrap();
        assert!(out.status.success(), "cubes r={r} dim={dim}");
        for line in String::from_utf8_lossy(&out.stdout).lines() {
            let row: serde_json::Value = serde_json::from_str(line).unwrap();
            assert_eq!(row["dim"], dim);
            assert_eq!(row["vertices"].as_array().unwrap().len(), verts);
        }
    }
    let out = gosset()
        .args(["cubes", "--r", "8", "--dim", "5"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_exit_codes() {
    // steiner scope passes -> exit 0
    let out = gosset()
        .args(["verify", "--scope", "steiner", "--quiet"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    // tables restricted to r=6 pass -> exit 0
    let out = gosset()
        .args(["verify", "--scope", "tables", "--r", "6", "--quiet"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    // unknown scope -> usage error
    let out = gosset()
        .args(["verify", "--scope", "everything"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_tables_r8_reports_the_tabulated_a6_discrepancy() {
    // the one honest red cell: the tabulated A_6^8(1) center count (207360)
    // is the skew-7-line count; the enumeration gives 69120
    let out = gosset()
        .args(["verify", "--scope", "tables", "--r", "8", "--quiet"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    let stdout = String::from_utf8_lossy(&out.stdout);
    let mut failed: Vec<serde_json::Value> = Vec::new();
    for line in stdout.lines() {
        let row: serde_json::Value = serde_json::from_str(line).unwrap();
        if row["pass"] == false {
            failed.push(row);
        }
    }
    assert_eq!(failed.len(), 1, "exactly one failing check: {failed:?}");
    assert_eq!(failed[0]["name"], "centers/A6(1)/4_21");
    assert_eq!(failed[0]["expected"], "207360");
    assert_eq!(failed[0]["computed"], "69120");
}

#[test]
fn skew_command_counts() {
    let out = gosset()
        .args(["skew", "--r", "8", "--a", "8", "--limit", "3"])
        .output()
        .unwrap();
    assert!(out.status.success());
    assert_eq!(String::from_utf8_lossy(&out.stdout).lines().count(), 3);
    assert!(String::from_utf8_lossy(&out.stderr).contains("17280 skew 8-lines"));
}

#[test]
fn closed_stdout_pipe_is_not_an_error() {
    // streaming into a consumer that stops reading (e.g. `| head`) must not
    // turn into a failure exit
    use std::io::Read;
    use std::process::Stdio;
    let mut child = gosset()
        .args(["inscribed", "--r", "8", "--n", "2", "--b", "1"])
        .stdout(Stdio::piped())
        .stderr(Stdio::null())
        .spawn()
        .unwrap();
    let mut stdout = child.stdout.take().unwrap();
    let mut buf = [0u8; 512];
    let _ = stdout.read(&mut buf).unwrap();
    drop(stdout); // close the pipe mid-stream
    let status = child.wait().unwrap();
    assert_eq!(status.code(), Some(0));
}
