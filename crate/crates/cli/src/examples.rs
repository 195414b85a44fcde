//! Built-in regression examples run by the `paper-examples` subcommand.
//!
//! Each example invokes the command-line dispatch with `--json` and checks
//! the decoded report, so the table exercises parsing and rendering as well.

use serde_json::Value;

use crate::{run_with, Settings, DEFAULT_SEARCH_LIMIT};

/// Diagonal matrix diag(x, y, z) over F_7; its discriminant xyz is singular.
pub const DIAG_F7_JSON: &str =
    r#"{"field":{"Fp":7},"entries":[["x","0","0"],["0","y","0"],["0","0","z"]]}"#;

/// Weighted symmetric matrix over F_7 whose discriminant is x^3 + y^3 + z^3.
pub const FERMAT_F7_JSON: &str = r#"{"field":{"Fp":7},"weights":[1,0,-1],"twist":1,"entries":[["2*(x^2+y*z)*(x-y)-(x-y)^2*z-x^3-y^3-z^3","x^2+y*z","x-y"],["x^2+y*z","z","1"],["x-y","1","0"]]}"#;

/// Result of one regression example.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExampleOutcome {
    pub name: String,
    pub passed: bool,
    pub detail: Option<String>,
}

fn invoke(args: &[&str]) -> Result<Value, String> {
    let settings = Settings {
        search_limit: DEFAULT_SEARCH_LIMIT,
    };
    let argv = std::iter::once("phantom")
        .chain(args.iter().copied())
        .chain(std::iter::once("--json"));
    let out = run_with(argv, &settings);
    if out.code != 0 {
        return Err(format!("exit {}: {}", out.code, out.stderr.trim()));
    }
    serde_json::from_str(&out.stdout).map_err(|e| e.to_string())
}

fn check(
    name: String,
    args: &[&str],
    test: impl FnOnce(&Value) -> Result<(), String>,
) -> ExampleOutcome {
    let res = invoke(args).and_then(|v| test(&v));
    ExampleOutcome {
        passed: res.is_ok(),
        detail: res.err(),
        name,
    }
}

fn expect<T: PartialEq + std::fmt::Debug>(what: &str, got: T, want: T) -> Result<(), String> {
    if got == want {
        Ok(())
    } else {
        Err(format!("{what}: got {got:?}, expected {want:?}"))
    }
}

fn strings(v: &Value) -> Vec<String> {
    v.as_array()
        .map(|a| {
            a.iter()
                .filter_map(|x| x.as_str().map(str::to_string))
                .collect()
        })
        .unwrap_or_default()
}

fn gcd(a: u32, b: u32) -> u32 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn reduced(num: u32, den: u32) -> String {
    let g = gcd(num, den);
    format!("{}/{}", num / g, den / g)
}

/// Runs every built-in example.
pub fn builtin_examples() -> Vec<ExampleOutcome> {
    let mut out = Vec::new();

    for (r, s) in [(1u32, 2u32), (2, 3), (1, 4)] {
        for p in [2u64, 3, 5] {
            let g = r + s;
            let poly = format!("T^2-{}*T+{}", p.pow(r), p.pow(g));
            let q = p.pow(g).to_string();
            out.push(check(
                format!("simple class of {poly} over F_{q}"),
                &["ht-class", "--poly", &poly, "--q", &q],
                |v| {
                    expect("n", v["n"].as_u64(), Some(2))?;
                    expect("e", v["e"].as_u64(), Some(u64::from(g)))?;
                    expect("dimension", v["dim"].as_u64(), Some(u64::from(g)))?;
                    let mut slopes = strings(&v["slopes"]);
                    slopes.sort();
                    let mut want = vec![reduced(r, g), reduced(s, g)];
                    want.sort();
                    expect("slopes", slopes, want.clone())?;
                    let mut invs: Vec<String> = v["invariants"]
                        .as_array()
                        .map(|a| {
                            a.iter()
                                .filter_map(|l| l["inv"].as_str().map(str::to_string))
                                .collect()
                        })
                        .unwrap_or_default();
                    invs.sort();
                    expect("local invariants", invs, want)
                },
            ));
        }
    }

    for k in 1..=6u32 {
        let poly = format!("(T^2-2*T+8)^{k}");
        out.push(check(
            format!("phantom for {poly} over F_8"),
            &["phantom", "--poly", &poly, "--q", "8"],
            |v| expect("realizable", v["realizable"].as_bool(), Some(k % 3 == 0)),
        ));
    }

    out.push(check(
        "Newton polygon of T^2-T+5 over F_5".into(),
        &["newton", "--poly", "T^2-T+5", "--q", "5"],
        |v| {
            let slopes: Vec<String> = v["slopes"]
                .as_array()
                .into_iter()
                .flatten()
                .filter_map(|s| s[0].as_str().map(str::to_string))
                .collect();
            expect("slopes", slopes, vec!["0".to_string(), "1".to_string()])
        },
    ));

    out.push(check(
        "Newton over Hodge for the H^3 twist (T^2-16*T+512)^3 against (0,3,3,0)".into(),
        &[
            "compare",
            "--poly",
            "(T^2-16*T+512)^3",
            "--q",
            "8",
            "--h",
            "0,3,3,0",
        ],
        |v| {
            expect(
                "newton over hodge",
                v["newton_over_hodge"].as_bool(),
                Some(true),
            )?;
            expect("ordinary", v["ordinary"].as_bool(), Some(false))
        },
    ));

    out.push(check(
        "conic bundle over P2 with quintic discriminant".into(),
        &["prym", "--surface", "P2", "--delta-degree", "5", "--n", "0"],
        |v| {
            expect("genus", v["genus"].as_u64(), Some(6))?;
            expect("prym_dim", v["prym_dim"].as_u64(), Some(5))?;
            expect("middle_betti", v["middle_betti"].as_u64(), Some(10))
        },
    ));

    out.push(check(
        "conic bundle over P2 with cubic discriminant".into(),
        &["prym", "--surface", "P2", "--delta-degree", "3", "--n", "0"],
        |v| expect("middle_betti", v["middle_betti"].as_u64(), Some(0)),
    ));

    out.push(check(
        "diag(x,y,z) over F_7 is not ordinary".into(),
        &["quad-ordinary", "--input", DIAG_F7_JSON],
        |v| expect("ordinary", v["ordinary"].as_bool(), Some(false)),
    ));

    out.push(check(
        "Fermat cubic discriminant over F_7 is ordinary".into(),
        &["quad-ordinary", "--input", FERMAT_F7_JSON],
        |v| {
            expect("ordinary", v["ordinary"].as_bool(), Some(true))?;
            expect("certified", v["certified"].as_bool(), Some(true))
        },
    ));

    out
}
