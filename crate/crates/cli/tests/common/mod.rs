//! Golden CLI cases shared by the golden test and the acceptance target.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::Command;

pub struct Case {
    pub name: &'static str,
    pub args: &'static [&'static str],
    pub env_seed: Option<&'static str>,
}

const fn case(name: &'static str, args: &'static [&'static str]) -> Case {
    Case { name, args, env_seed: None }
}

const fn seeded(name: &'static str, seed: &'static str, args: &'static [&'static str]) -> Case {
    Case { name, args, env_seed: Some(seed) }
}

/// `{out}` in an argument is replaced by a fresh output directory.
pub const CASES: &[Case] = &[
    case("index_per_mag", &["index", "--tau", "2,2", "--edge", "(1,2)-(2,1)"]),
    case("index_out_of_range", &["index", "--tau", "2,2", "--edge", "(1,1)-(3,1)"]),
    case("index_self_loop", &["index", "--tau", "2,2", "--edge", "(1,1)-(1,1)"]),
    case("index_family", &["index", "--family", "--p", "1", "--n0", "2", "--edge", "(4)-(1)"]),
    case("index_big", &["index", "--tau", "1000000,1000000,1000000", "--edge", "(3,1,4)-(999999,2,6)"]),
    case("edge_per_mag", &["edge", "--tau", "2,2", "--j", "4"]),
    case("edge_past_end", &["edge", "--tau", "2,2", "--j", "7"]),
    case("edge_family_sentinel", &["edge", "--family", "--p", "1", "--n0", "2", "--j", "0"]),
    case("edge_family", &["edge", "--family", "--p", "2", "--n0", "1", "--j", "20"]),
    case("edge_big", &["edge", "--tau", "1000000,1000000,1000000", "--j", "123456789012345678901234567890"]),
    case("encode", &["encode", "--mag", "two_edges.mag"]),
    case("encode_family", &["encode", "--mag", "two_edges.mag", "--family", "--n0", "1"]),
    case("decode", &["decode", "--tau", "2,2", "--bits", "101000"]),
    case("decode_bits_file", &["decode", "--tau", "2,2", "--bits-file", "chars.bits"]),
    case("decode_family", &["decode", "--tau", "3", "--bits", "100", "--family", "--n0", "2"]),
    case("decode_length_mismatch", &["decode", "--tau", "2,2", "--bits", "10"]),
    case("edgestring_encode", &["edgestring", "encode", "--mag", "two_edges.mag"]),
    case("edgestring_encode_compact", &["edgestring", "encode", "--mag", "two_edges.mag", "--compact"]),
    case("edgestring_encode_family", &["edgestring", "encode", "--mag", "two_edges.mag", "--family", "--n0", "1"]),
    case("edgestring_decode", &["edgestring", "decode", "--bits-file", "two_edges.es"]),
    case("edgestring_decode_compact", &["edgestring", "decode", "--bits-file", "two_edges_compact.es", "--compact"]),
    case("edgestring_decode_family", &["edgestring", "decode", "--bits-file", "two_edges_family.es", "--family", "--n0", "1"]),
    case("edgestring_decode_wrong_order", &["edgestring", "decode", "--bits-file", "rand_3x3.es", "--family", "--n0", "1"]),
    case("iso_to_graph", &["iso", "to-graph", "--mag", "rand_4x4.mag"]),
    case("iso_to_mag", &["iso", "to-mag", "--graph", "graph.txt", "--tau", "3,2"]),
    case("iso_to_mag_size_mismatch", &["iso", "to-mag", "--graph", "graph.txt", "--tau", "2,2"]),
    case("grow_seeded", &["grow", "--p", "2", "--n0", "2", "--s-max", "4", "--out", "{out}", "--seed", "17"]),
    case("grow_pattern", &["grow", "--p", "1", "--n0", "2", "--s-max", "5", "--out", "{out}", "--pattern", "110"]),
    case("grow_bits_file", &["grow", "--p", "1", "--n0", "1", "--s-max", "8", "--out", "{out}", "--bits-file", "source.bits"]),
    case("grow_bits_file_exhausted", &["grow", "--p", "1", "--n0", "1", "--s-max", "12", "--out", "{out}", "--bits-file", "source.bits"]),
    case("analyze_p3", &["analyze", "--mag", "p3.mag"]),
    case("analyze_c4", &["analyze", "--mag", "c4.mag"]),
    case("analyze_random", &["analyze", "--mag", "rand_4x4.mag", "--k", "3"]),
    case("estimate", &["estimate", "--mag", "rand_4x4.mag"]),
    case("estimate_family", &["estimate", "--mag", "two_edges.mag", "--family", "--n0", "1"]),
    case("t35_build", &["t35-build", "--bits", "101", "--seed", "1"]),
    case("t35_recover", &["t35-recover", "--bits-file", "t35_1101.es", "--expect", "1101"]),
    case("t35_recover_mismatch", &["t35-recover", "--bits-file", "t35_1101.es", "--expect", "1111"]),
    case("t35_recover_unwitnessed", &["t35-recover", "--bits-file", "empty_212.es"]),
    case("rand", &["rand", "--tau", "3,3", "--seed", "7"]),
    seeded("rand_env_seed", "7", &["rand", "--tau", "3,3"]),
    seeded("rand_flag_beats_env", "99", &["rand", "--tau", "3,3", "--seed", "7"]),
    case("rand_bad_density", &["rand", "--tau", "3", "--density", "1.5"]),
    case("usage_bad_tau", &["index", "--tau", "2,x", "--edge", "(1)-(2)"]),
    case("usage_bad_edge", &["index", "--tau", "2,2", "--edge", "(1,1)(1,2)"]),
    case("usage_missing_subcommand", &[]),
];

pub fn crate_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
}

pub fn fixtures() -> PathBuf {
    crate_dir().join("tests/fixtures")
}

pub fn golden_path(case: &Case) -> PathBuf {
    crate_dir().join("tests/golden").join(format!("{}.out", case.name))
}

/// Exit code, stdout and any files written, as one transcript. Stdout must be
/// empty on failure.
pub fn transcript(bin: &Path, case: &Case) -> String {
    let out_dir = tempfile::tempdir().expect("temp dir");
    let out = out_dir.path().join("family");
    let args: Vec<String> = case
        .args
        .iter()
        .map(|a| a.replace("{out}", &out.display().to_string()))
        .collect();
    let mut cmd = Command::new(bin);
    cmd.args(&args).current_dir(fixtures()).env_remove("MAGC_SEED");
    if let Some(seed) = case.env_seed {
        cmd.env("MAGC_SEED", seed);
    }
    let result = cmd.output().expect("run magc");
    let code = result.status.code().expect("exit code");
    let stdout = String::from_utf8(result.stdout).expect("utf-8 stdout");
    assert!(code == 0 || stdout.is_empty(), "{}: stdout written on error", case.name);
    assert!(code == 0 || !result.stderr.is_empty(), "{}: silent failure", case.name);
    let mut t = format!("exit={code}\n--- stdout\n{stdout}");
    if out.is_dir() {
        let mut names: Vec<_> = fs::read_dir(&out)
            .expect("read output dir")
            .map(|e| e.expect("dir entry").file_name().into_string().expect("utf-8 name"))
            .collect();
        names.sort();
        for name in names {
            let body = fs::read_to_string(out.join(&name)).expect("read output file");
            t.push_str(&format!("--- file {name}\n{body}"));
        }
    }
    t
}
