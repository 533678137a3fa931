//! End-to-end checks of the binary and the file format.

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::process::{Command, Output};

use proptest::prelude::*;

use qforge_cli::dsl::PresentationFile;
use qforge_core::clifford::Hypotheses;
use qforge_core::scalar::{FieldKind, Scalar};
use qforge_core::tensor::Tensor;
use qforge_core::word::Word;

fn corpus(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("corpus")
        .join(name)
}

fn corpus_files() -> Vec<PathBuf> {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("corpus");
    let mut files: Vec<PathBuf> = std::fs::read_dir(dir)
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|e| e == "alg"))
        .collect();
    files.sort();
    files
}

fn qforge(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qforge"))
        .args(args)
        .output()
        .expect("binary runs")
}

#[test]
fn round_trip_identity_on_the_bundled_corpus() {
    for path in corpus_files() {
        let text = std::fs::read_to_string(&path).unwrap();
        let parsed =
            PresentationFile::parse(&text).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
        let printed = parsed.print();
        let reparsed = PresentationFile::parse(&printed).unwrap();
        assert_eq!(reparsed, parsed, "{}", path.display());
        assert_eq!(reparsed.print(), printed, "{}", path.display());
    }
}

#[test]
fn byte_identical_reports_across_runs() {
    let cases: Vec<Vec<&str>> = vec![
        vec!["check", "s2"],
        vec!["deform", "s2", "--theta", "std", "--json"],
        vec!["hilbert", "p2", "--maxdeg", "6", "--json"],
        vec!["verdict", "p2", "--central", "zsum", "--json"],
        vec!["clifford-space", "ext2", "--json"],
        vec!["overlap", "jordan", "--json"],
    ];
    let resolve = |tag: &str| -> String {
        let name = match tag {
            "s2" => "s2_dual.alg",
            "p2" => "polynomial2.alg",
            "ext2" => "exterior2.alg",
            "jordan" => "jordan_dual.alg",
            other => other,
        };
        corpus(name).to_string_lossy().into_owned()
    };
    for case in cases {
        let args: Vec<String> = case
            .iter()
            .map(|a| {
                if ["s2", "p2", "ext2", "jordan"].contains(a) {
                    resolve(a)
                } else {
                    a.to_string()
                }
            })
            .collect();
        let argrefs: Vec<&str> = args.iter().map(String::as_str).collect();
        let first = qforge(&argrefs);
        let second = qforge(&argrefs);
        assert!(first.status.success(), "{case:?}: {first:?}");
        assert_eq!(first.stdout, second.stdout, "{case:?}");
    }
}

#[test]
fn exit_codes_follow_the_contract() {
    let s2 = corpus("s2_dual.alg");
    let ok = qforge(&["hilbert", s2.to_str().unwrap()]);
    assert_eq!(ok.status.code(), Some(0));

    // Input errors exit 2.
    let jordan = corpus("jordan_dual.alg");
    let bad_theta = qforge(&["deform", jordan.to_str().unwrap(), "--theta", "bad"]);
    assert_eq!(bad_theta.status.code(), Some(2));
    let stderr = String::from_utf8_lossy(&bad_theta.stderr);
    assert!(stderr.contains("NotClifford"), "{stderr}");

    let ext2 = corpus("exterior2.alg");
    let lacks_i = qforge(&["knorrer", ext2.to_str().unwrap(), "--theta", "pp"]);
    assert_eq!(lacks_i.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&lacks_i.stderr).contains("FieldLacksI"));

    let missing = qforge(&["check", "/nonexistent/file.alg"]);
    assert_eq!(missing.status.code(), Some(2));

    let unknown_name = qforge(&["deform", ext2.to_str().unwrap(), "--theta", "nope"]);
    assert_eq!(unknown_name.status.code(), Some(2));

    let p3 = corpus("polynomial3.alg");
    let capped = qforge(&[
        "hilbert",
        p3.to_str().unwrap(),
        "--maxdeg",
        "14",
        "--resource-cap",
        "1000",
    ]);
    assert_eq!(capped.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&capped.stderr).contains("ResourceBound"));

    let bad_degree = qforge(&["center", ext2.to_str().unwrap(), "--degree", "3"]);
    assert_eq!(bad_degree.status.code(), Some(2));

    // A verdict whose dual side is not finite-dimensional fails honestly:
    // the element is verified central, but no vanishing component is found.
    let verdict = qforge(&["verdict", jordan.to_str().unwrap(), "--central", "w"]);
    assert_eq!(verdict.status.code(), Some(2));
    let stderr = String::from_utf8_lossy(&verdict.stderr);
    assert!(stderr.contains("NoTopDegree"), "{stderr}");
}

#[test]
fn resource_cap_environment_override() {
    let p3 = corpus("polynomial3.alg");
    let out = Command::new(env!("CARGO_BIN_EXE_qforge"))
        .args(["hilbert", p3.to_str().unwrap(), "--maxdeg", "14"])
        .env("QFORGE_RESOURCE_CAP", "1000")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("ResourceBound"));
}

#[test]
fn check_reports_named_vector_validity() {
    let jordan = corpus("jordan_dual.alg");
    let out = qforge(&["check", jordan.to_str().unwrap(), "--json"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let admissible = &v["result"]["clifford_vectors_admissible"];
    assert_eq!(admissible["bad"], false);
    assert_eq!(admissible["zero"], true);
    assert_eq!(v["result"]["central_elements_central"]["w"], true);
}

#[test]
fn gaussian_deformation_pipeline() {
    // θ with values ±i: the whole pipeline runs in exact ℚ(i) arithmetic.
    let path = corpus("exterior2_qi.alg");
    let semisimple = qforge(&[
        "semisimple",
        path.to_str().unwrap(),
        "--theta",
        "gauss",
        "--json",
    ]);
    assert!(semisimple.status.success());
    let v: serde_json::Value = serde_json::from_slice(&semisimple.stdout).unwrap();
    assert_eq!(v["result"]["semisimple"], true);
    assert_eq!(v["result"]["radical_dim"], 0);

    let frob = qforge(&[
        "frobenius",
        path.to_str().unwrap(),
        "--theta",
        "gauss",
        "--json",
    ]);
    assert!(frob.status.success());
    let v: serde_json::Value = serde_json::from_slice(&frob.stdout).unwrap();
    assert_eq!(v["result"]["rank"], 4);
    assert_eq!(v["result"]["form_parity"], 0);
}

#[test]
fn quantum_plane_center_command() {
    let qp = corpus("quantum_plane.alg");
    let out = qforge(&["center", qp.to_str().unwrap(), "--json"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["result"]["dim"], 2);
    let elements = v["result"]["elements"].as_array().unwrap();
    assert!(elements.contains(&serde_json::json!("x*x")));
    assert!(elements.contains(&serde_json::json!("y*y")));
}

#[test]
fn deform_report_matches_frozen_schema() {
    let s2 = corpus("s2_dual.alg");
    let out = qforge(&["deform", s2.to_str().unwrap(), "--theta", "std", "--json"]);
    assert!(out.status.success());
    let expected = std::fs::read(
        PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden/deform_s2_std.json"),
    )
    .expect("golden fixture present");
    assert_eq!(
        out.stdout, expected,
        "golden fixture drifted; inspect `qforge deform s2_dual.alg --theta std --json`"
    );
}

// Random canonical files round-trip through print ∘ parse.

fn arb_scalar(gauss: bool) -> impl Strategy<Value = Scalar> {
    let re = (-6i64..=6, 1i64..=4).prop_map(|(n, d)| (n, d));
    let im = if gauss {
        (-6i64..=6, 1i64..=4).boxed()
    } else {
        Just((0, 1)).boxed()
    };
    (re, im).prop_map(|((rn, rd), (in_, id))| {
        let real = Scalar::from_ratio(rn, rd);
        let imag = &Scalar::from_ratio(in_, id) * &Scalar::i();
        &real + &imag
    })
}

fn arb_file() -> impl Strategy<Value = PresentationFile> {
    (any::<bool>(), 1usize..=3).prop_flat_map(|(gauss, n_gens)| {
        let field = if gauss {
            FieldKind::GaussianRationals
        } else {
            FieldKind::Rationals
        };
        let n_words = n_gens * n_gens;
        let poly = proptest::collection::vec(arb_scalar(gauss), n_words)
            .prop_filter_map("nonzero degree-2 polynomial", move |coeffs| {
                let words = Word::all_of_length(n_gens, 2);
                let t = Tensor::from_terms(
                    field,
                    2,
                    words.into_iter().zip(coeffs).filter(|(_, c)| !c.is_zero()),
                )
                .unwrap();
                (!t.is_zero()).then_some(t)
            })
            .boxed();
        let relations = proptest::collection::vec(poly.clone(), 1..=3);
        (
            relations,
            proptest::collection::vec(poly, 0..=2),
            any::<[bool; 3]>(),
        )
            .prop_map(
                move |(relations, centrals, [koszul, as_regular, gldim_ge2])| {
                    let generators: Vec<String> = ["x", "y", "z"][..n_gens]
                        .iter()
                        .map(|s| s.to_string())
                        .collect();
                    let clifford_vectors: BTreeMap<String, Vec<Scalar>> =
                        BTreeMap::from([("t0".to_string(), vec![Scalar::zero(); relations.len()])]);
                    let central_elements: BTreeMap<String, Tensor> = centrals
                        .into_iter()
                        .enumerate()
                        .map(|(i, t)| (format!("c{i}"), t))
                        .collect();
                    PresentationFile {
                        field,
                        name: "random".to_string(),
                        generators,
                        relations,
                        clifford_vectors,
                        central_elements,
                        assertions: Hypotheses {
                            koszul,
                            as_regular,
                            gldim_ge2,
                        },
                    }
                },
            )
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn print_parse_round_trip_on_random_files(file in arb_file()) {
        let printed = file.print();
        let parsed = PresentationFile::parse(&printed)
            .map_err(|e| TestCaseError::fail(format!("{e}\n{printed}")))?;
        prop_assert_eq!(&parsed, &file);
        prop_assert_eq!(parsed.print(), printed);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    // The parser must reject garbage with a positioned error, never panic.
    #[test]
    fn parser_never_panics(text in "[ -~\n]{0,200}") {
        let _ = PresentationFile::parse(&text);
    }

    #[test]
    fn parser_never_panics_on_mutated_files(mutation in 0usize..400, byte in 0u8..128) {
        let base = "field Q\nalgebra a\ngenerators x, y\nrelations x*x; y*y; x*y + y*x\nclifford t: 1, 1, 0\ncentral c: x*x + y*y\nassert koszul\n";
        let mut bytes = base.as_bytes().to_vec();
        if !bytes.is_empty() {
            let at = mutation % bytes.len();
            bytes[at] = byte;
        }
        if let Ok(text) = String::from_utf8(bytes) {
            let _ = PresentationFile::parse(&text);
        }
    }
}
