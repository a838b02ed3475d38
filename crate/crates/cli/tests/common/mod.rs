#![allow(dead_code)]

use std::path::PathBuf;
use std::process::Command;

pub const FIB: &str = r#"{"c":[1,1],"initial":[0,1]}"#;
const FAMILY: &str = r#"{"alpha":[1,1,1],"eps":[2,2,3]}"#;
const EXP_Z: &str = r#"{"terms":[{"a":{"coeffs":[1]},"gamma":1}]}"#;

pub struct Case {
    pub name: &'static str,
    pub args: &'static [&'static str],
    pub input: Option<&'static str>,
    pub code: i32,
}

const fn case(name: &'static str, args: &'static [&'static str], input: Option<&'static str>, code: i32) -> Case {
    Case { name, args, input, code }
}

pub const CASES: &[Case] = &[
    case("eval_fib_text", &["eval", "--index", "10", "--format", "text"], Some(FIB), 0),
    case("eval_fib", &["eval", "--index", "10"], Some(FIB), 0),
    case("eval_window", &["eval", "--window", "-5..5"], Some(FIB), 0),
    case("eval_far", &["eval", "--index", "20000", "--format", "text"], Some(r#"{"c":[2],"initial":[1]}"#), 0),
    case("eval_zero_cd", &["eval", "--index", "3"], Some(r#"{"c":[1,0],"initial":[0,1]}"#), 1),
    case("eval_malformed", &["eval", "--index", "3"], Some(r#"{"c":[1,"#), 2),
    case("eval_wrong_shape", &["eval", "--index", "3"], Some(r#"{"coefficients":[1]}"#), 2),
    case("eval_missing_index", &["eval"], Some(FIB), 2),
    case("unknown_subcommand", &["frobnicate"], None, 2),
    case("minorder", &["minorder"], Some(r#"{"c":[2,0,-1],"initial":[0,1,1]}"#), 0),
    case("closedform_to", &["closedform", "to"], Some(r#"{"c":[3,-2],"initial":[0,1]}"#), 0),
    case("closedform_to_double_root", &["closedform", "to"], Some(r#"{"c":[4,-4],"initial":[1,4]}"#), 0),
    case("closedform_to_gaussian", &["closedform", "to"], Some(r#"{"c":[0,-1],"initial":[1,0]}"#), 0),
    case("closedform_to_nonsplit", &["closedform", "to"], Some(FIB), 1),
    case(
        "closedform_to_roots_mismatch",
        &["closedform", "to"],
        Some(r#"{"c":[3,-2],"initial":[0,1],"roots":[{"gamma":1,"t":2}]}"#),
        1,
    ),
    case(
        "closedform_from",
        &["closedform", "from"],
        Some(r#"{"terms":[{"gamma":2,"t":2,"p":{"coeffs":[1,1]}},{"gamma":-1,"t":1,"p":{"coeffs":["1/2"]}}]}"#),
        0,
    ),
    case("genfun", &["genfun"], Some(FIB), 0),
    case("genfun_text", &["genfun", "--format", "text"], Some(FIB), 0),
    case(
        "partfrac",
        &["partfrac"],
        Some(r#"{"num":{"coeffs":[0,1]},"den":{"coeffs":[1,-3,2]},"roots":[{"gamma":1,"t":1},{"gamma":2,"t":1}]}"#),
        0,
    ),
    case(
        "partfrac_degree",
        &["partfrac"],
        Some(r#"{"num":{"coeffs":[0,0,1]},"den":{"coeffs":[1,-1]},"roots":[{"gamma":1,"t":1}]}"#),
        1,
    ),
    case("add", &["add"], Some(r#"{"s1":{"c":[2],"initial":[1]},"s2":{"c":[1,1],"initial":[0,1]}}"#), 0),
    case("mul", &["mul"], Some(r#"{"s1":{"c":[2],"initial":[1]},"s2":{"c":[3],"initial":[1]}}"#), 0),
    case(
        "mul_with_roots",
        &["mul"],
        Some(r#"{"s1":{"c":[2,-1],"initial":[0,1]},"s2":{"c":[0,-1],"initial":[1,0]},"roots1":[{"gamma":1,"t":2}]}"#),
        0,
    ),
    case("vandermonde_matrix", &["vandermonde", "matrix"], Some(r#"{"nodes":[{"gamma":0,"t":2},{"gamma":1,"t":1}]}"#), 0),
    case(
        "vandermonde_det",
        &["vandermonde", "det"],
        Some(r#"{"nodes":[{"gamma":1,"t":2},{"gamma":"i","t":1},{"gamma":-2,"t":2}]}"#),
        0,
    ),
    case(
        "vandermonde_duplicate",
        &["vandermonde", "det"],
        Some(r#"{"nodes":[{"gamma":1,"t":1},{"gamma":1,"t":2}]}"#),
        1,
    ),
    case(
        "interpolate_hermite",
        &["interpolate", "hermite"],
        Some(r#"{"nodes":[{"gamma":0,"t":2},{"gamma":1,"t":1}],"values":[[1,0],[2]]}"#),
        0,
    ),
    case(
        "interpolate_newton",
        &["interpolate", "newton"],
        Some(r#"{"nodes":[{"gamma":0,"t":2},{"gamma":1,"t":1}],"values":[[1,0],[2]]}"#),
        0,
    ),
    case(
        "interpolate_linear",
        &["interpolate", "linear"],
        Some(r#"{"nodes":[{"gamma":0,"t":2},{"gamma":1,"t":1}],"values":[[1,0],[2]]}"#),
        0,
    ),
    case(
        "contour_exp",
        &["contour", "--radius", "2", "--points", "256", "--bits", "128"],
        Some(r#"{"function":{"exppoly":{"terms":[{"a":{"coeffs":[1]},"gamma":1}]}},"nodes":[{"gamma":0,"t":1}],"z":"1/2"}"#),
        0,
    ),
    case(
        "contour_pole_inside",
        &["contour", "--bits", "64"],
        Some(r#"{"function":{"rational":{"num":{"coeffs":[1]},"den":{"coeffs":[-1,1]}}},"nodes":[{"gamma":0,"t":1}],"z":"1/2"}"#),
        1,
    ),
    case("nonhomog_from", &["nonhomog", "from"], Some(r#"{"b":[2],"forcing":[{"gamma":1,"t":1,"lambda":[1]}],"head":[0]}"#), 0),
    case(
        "nonhomog_to",
        &["nonhomog", "to"],
        Some(r#"{"sequence":{"c":[2,-1],"initial":[0,1]},"q":{"coeffs":[-1,1]},"r_roots":[{"gamma":1,"t":1}]}"#),
        0,
    ),
    case(
        "nonhomog_to_mismatch",
        &["nonhomog", "to"],
        Some(r#"{"sequence":{"c":[3,-2],"initial":[0,1]},"q":{"coeffs":[-3,1]},"r_roots":[{"gamma":1,"t":1}]}"#),
        1,
    ),
    case(
        "nonhomog_matrix",
        &["nonhomog", "matrix"],
        Some(r#"{"q":{"coeffs":[1]},"r_roots":[{"gamma":1,"t":1},{"gamma":2,"t":1}]}"#),
        0,
    ),
    case("exppoly_taylor", &["exppoly", "taylor", "--count", "6"], Some(EXP_Z), 0),
    case("exppoly_taylor_shift", &["exppoly", "taylor", "--z0", "1"], Some(EXP_Z), 1),
    case(
        "exppoly_order",
        &["exppoly", "order", "--cap", "8"],
        Some(r#"{"terms":[{"a":{"coeffs":[1,1]},"gamma":0},{"a":{"coeffs":[-1]},"gamma":1}]}"#),
        0,
    ),
    case(
        "exppoly_order_sinh",
        &["exppoly", "order", "--cap", "8"],
        Some(r#"{"terms":[{"a":{"coeffs":[1]},"gamma":1},{"a":{"coeffs":[-1]},"gamma":-1}]}"#),
        0,
    ),
    case("exppoly_order_zero", &["exppoly", "order"], Some(r#"{"terms":[]}"#), 1),
    case("exppoly_detcheck", &["exppoly", "detcheck"], Some(r#"{"nodes":[{"gamma":0,"t":3},{"gamma":2,"t":2}]}"#), 0),
    case("twisted_coeffs", &["twisted", "coeffs", "--index", "1"], Some(r#"{"alpha":[1,2],"eps":[3,5]}"#), 0),
    case("twisted_coeffs_window", &["twisted", "coeffs", "--window", "-2..2"], Some(r#"{"alpha":[1,1],"eps":[1,-1]}"#), 0),
    case("twisted_spec", &["twisted", "spec", "--h", "1"], Some(FAMILY), 0),
    case("twisted_spec_text", &["twisted", "spec", "--h", "2", "--format", "text"], Some(FAMILY), 0),
    case("twisted_duality", &["twisted", "duality", "--h", "1", "--window", "-3..3"], Some(FAMILY), 0),
    case("twisted_duality_zero_alpha", &["twisted", "duality", "--h", "1"], Some(r#"{"alpha":[0,1,1],"eps":[2,2,3]}"#), 1),
    case("twisted_zero_twist", &["twisted", "spec", "--h", "1"], Some(r#"{"alpha":[1,1],"eps":[0,1]}"#), 1),
    case("twisted_twoblock", &["twisted", "twoblock"], Some(r#"{"eps":2,"eta":3,"l":2,"d":4,"alpha":[1,1,1,1]}"#), 0),
    case("twisted_twoblock_equal", &["twisted", "twoblock"], Some(r#"{"eps":2,"eta":2,"l":1,"d":3,"alpha":[1,1,1]}"#), 1),
];

pub fn golden_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests").join("golden")
}

pub struct Run {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

pub fn run_cli(args: &[&str], input: Option<&str>) -> Run {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_recurkit"));
    cmd.args(args).env_remove("RECURKIT_PRECISION_BITS");
    if let Some(j) = input {
        cmd.args(["--json", j]);
    }
    let out = cmd.output().expect("spawn recurkit");
    Run {
        code: out.status.code().unwrap_or(-1),
        stdout: String::from_utf8(out.stdout).expect("utf-8 stdout"),
        stderr: String::from_utf8(out.stderr).expect("utf-8 stderr"),
    }
}

/// Runs a case against its `.out` / `.err` files, rewriting them instead
/// when `RECURKIT_UPDATE_GOLDEN` is set.
pub fn check_case(c: &Case) -> Result<(), String> {
    let r = run_cli(c.args, c.input);
    let dir = golden_dir();
    let (out_path, err_path) = (dir.join(format!("{}.out", c.name)), dir.join(format!("{}.err", c.name)));
    if std::env::var_os("RECURKIT_UPDATE_GOLDEN").is_some() {
        std::fs::write(&out_path, &r.stdout).map_err(|e| e.to_string())?;
        std::fs::write(&err_path, &r.stderr).map_err(|e| e.to_string())?;
    }
    if r.code != c.code {
        return Err(format!("{}: exit {} (expected {}), stderr {:?}", c.name, r.code, c.code, r.stderr));
    }
    let want_out = std::fs::read_to_string(&out_path).map_err(|e| format!("{}: {e}", out_path.display()))?;
    let want_err = std::fs::read_to_string(&err_path).map_err(|e| format!("{}: {e}", err_path.display()))?;
    if r.stdout != want_out {
        return Err(format!("{}: stdout differs from golden\n--- got\n{}\n--- want\n{}", c.name, r.stdout, want_out));
    }
    if r.stderr != want_err {
        return Err(format!("{}: stderr differs from golden\n--- got\n{}\n--- want\n{}", c.name, r.stderr, want_err));
    }
    Ok(())
}
