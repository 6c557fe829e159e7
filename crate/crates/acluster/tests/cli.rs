use acluster::{run, EXIT_DOMAIN, EXIT_OK, EXIT_USAGE};

fn call(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("acluster").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

#[test]
fn shifted_projective_is_a_variable() {
    assert_eq!(call(&["var", "--preset", "kronecker", "--object", "TP:1"]), (EXIT_OK, "x1\n".into(), String::new()));
}

#[test]
fn kronecker_delta() {
    let (code, out, _) = call(&["delta", "--preset", "kronecker", "--n", "1"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(out, "(x1^2 + x2^2 + 1)/(x1*x2)\n");
    let (_, same, _) = call(&["var", "--preset", "kronecker", "--object", "delta:n=1"]);
    assert_eq!(same, out);
}

#[test]
fn tube_product_of_adjacent_simples() {
    let (code, out, _) = call(&["tube-mul", "--rank", "3", "--left", "1,1", "--right", "2,0,1"]);
    assert_eq!((code, out.as_str()), (EXIT_OK, "E[1;2] + 1\n"));
    let (code, checked, _) = call(&["tube-mul", "--rank", "3", "--left", "1,1", "--right", "2,0,1", "--ctx", "ann:3:1"]);
    assert_eq!((code, checked), (EXIT_OK, out));
    let (code, json, _) = call(&["--json", "tube-mul", "--rank", "3", "--left", "3,1", "--right", "1,0,1"]);
    assert_eq!(code, EXIT_OK);
    let v: serde_json::Value = serde_json::from_str(&json).unwrap();
    assert_eq!(v["case"], "j<=i (1)");
    assert_eq!(v["text"], "E[3;2] + 1");
}

#[test]
fn normal_form_flag() {
    let (code, out, _) = call(&["tube-mul", "--rank", "2", "--left", "1,2", "--right", "1,1,1", "--nf", "--ctx", "generic"]);
    assert_eq!(code, EXIT_OK);
    assert!(!out.contains('*') || out.lines().count() == 1, "{out}");
}

#[test]
fn exit_codes() {
    assert_eq!(call(&["--help"]).0, EXIT_OK);
    assert_eq!(call(&["frobnicate"]).0, EXIT_USAGE);
    assert_eq!(call(&["var", "--preset", "e8", "--object", "TP:1"]).0, EXIT_USAGE);
    assert_eq!(call(&["var", "--preset", "kronecker", "--object", "XX:1"]).0, EXIT_USAGE);
    let (code, _, err) = call(&["tube-mul", "--rank", "3", "--left", "1,2", "--right", "1,0,1"]);
    assert_eq!(code, EXIT_DOMAIN);
    assert!(err.contains("domain"), "{err}");
    assert_eq!(call(&["var", "--preset", "kronecker", "--object", "TP:3"]).0, EXIT_DOMAIN);
    assert_eq!(call(&["verify", "--criterion", "99"]).0, EXIT_USAGE);
}

#[test]
fn grassmannian_query() {
    let (code, out, _) = call(&["gr", "--preset", "kronecker", "--module", "delta:n=1", "--e", "1,1"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.starts_with("chi = 1\n"), "{out}");
    let (_, json, _) = call(&["--json", "gr", "--preset", "kronecker", "--module", "delta:n=1", "--e", "0,1"]);
    let v: serde_json::Value = serde_json::from_str(&json).unwrap();
    assert_eq!(v["chi"], 1);
}

#[test]
fn basis_and_expand() {
    let (code, out, _) = call(&["basis", "--preset", "kronecker", "--box", "-1:1"]);
    assert_eq!((code, out.as_str()), (EXIT_OK, "9 elements on box -1:1,-1:1, 0 vectors missing\n"));
    let (code, out, _) = call(&["--json", "expand", "--preset", "kronecker", "--input", "(delta:n=1)*(delta:n=1)"]);
    assert_eq!(code, EXIT_OK);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v[0]["coef"], 1);
    assert_eq!(v[0]["dim"], serde_json::json!([2, 2]));
    assert_eq!(v[0]["kind"], "delta-level");
}

#[test]
fn expand_reads_laurent_files() {
    let dir = std::env::temp_dir().join(format!("acluster-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let (code, json, _) = call(&["--json", "var", "--preset", "kronecker", "--object", "frieze:2,1"]);
    assert_eq!(code, EXIT_OK);
    let f = dir.join("p.json");
    std::fs::write(&f, &json).unwrap();
    let (code, out, err) = call(&["expand", "--preset", "kronecker", "--input", f.to_str().unwrap()]);
    std::fs::remove_dir_all(&dir).ok();
    assert_eq!(code, EXIT_OK, "{err}");
    assert_eq!(out.lines().count(), 1, "{out}");
    assert!(out.starts_with("1 (3,4) transjective-monomial frieze:2,1"), "{out}");
}

#[test]
fn frieze_and_determinism() {
    let args = ["--json", "frieze", "--preset", "d4", "--forward", "1", "--backward", "1"];
    let a = call(&args);
    assert_eq!(a.0, EXIT_OK);
    assert_eq!(a, call(&args));
    let v: serde_json::Value = serde_json::from_str(&a.1).unwrap();
    assert_eq!(v["entries"].as_array().unwrap().len(), 15);
}

#[test]
fn verify_single_criterion() {
    let (code, out, _) = call(&["verify", "--criterion", "6"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.starts_with("PASS  6 "), "{out}");
}
