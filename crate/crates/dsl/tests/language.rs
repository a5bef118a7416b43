mod common;

use funcat_dsl::parser::parse_syntax;
use funcat_dsl::{check, parse, print, run, RunOptions, Status};
use proptest::prelude::*;

#[test]
fn empty_file_is_an_empty_document() {
    assert!(parse("").unwrap().decls.is_empty());
    assert!(parse("\n# only a comment\n;;\n").unwrap().decls.is_empty());
}

#[test]
fn three_declarations_on_one_line() {
    let doc = parse("ring Z; module M over Z = coker [[2]]; task derive F=tensor(M) A=M n=1").unwrap();
    assert_eq!(doc.decls.len(), 3);
}

#[test]
fn unresolved_name_is_located() {
    let e = parse("ring Z\nmodule M over Q = free 1").unwrap_err();
    assert_eq!(e.len(), 1);
    assert_eq!(e[0].to_string(), "2:15: unresolved name `Q`");
}

#[test]
fn duplicate_and_misplaced_names() {
    let e = parse("ring Z\nring Z").unwrap_err();
    assert!(e[0].message.contains("already declared at 1:6"), "{}", e[0]);
    let e = parse("ring Z\nmodule M over Z = free 1\nmodule N over M = free 1").unwrap_err();
    assert!(e[0].message.contains("`M` is a module"), "{}", e[0]);
    let e = parse("ring Z\nmodule M over Z = free 1\ntask derive F=tensor(M) A=M n=1 n=2").unwrap_err();
    assert!(!e.is_empty());
}

fn check_errors(src: &str) -> Vec<funcat_dsl::Diagnostic> {
    match check(src) {
        Ok(_) => panic!("expected diagnostics for {:?}", src),
        Err(e) => e,
    }
}

#[test]
fn validators_run_on_check() {
    let e = check_errors("ring F = field 4");
    assert!(e[0].message.contains("prime"), "{}", e[0]);
    let e = check_errors("ring Z\nmodule A over Z = cyclic 2\nmodule B over Z = free 1\nmorphism f : A -> B = [[1]]");
    assert!(e[0].message.contains("relations"), "{}", e[0]);
    let e = check_errors("ring F = group 2 [[0, 1], [0, 1]]");
    assert_eq!(e[0].span.line, 1);
}

#[test]
fn tor_of_two_cyclic_groups() {
    let wb = check("ring Z; module M over Z = coker [[2]]; task derive F=tensor(M) A=M n=1").unwrap();
    let text = run(&wb, &RunOptions::default()).unwrap().to_text();
    assert!(text.contains("\nn=1: Z/2\n"), "{}", text);
}

#[test]
fn invariant_factors_render_in_order() {
    let wb = check("ring Z\nmodule M over Z = factors [2, 6]\ntask validate").unwrap();
    let text = run(&wb, &RunOptions::default()).unwrap().to_text();
    assert!(text.contains("Z/2 ⊕ Z/6"), "{}", text);
}

#[test]
fn verify_reports_the_case_count() {
    let wb = check("task verify suite=les cases=200 seed=42").unwrap();
    let r = run(&wb, &RunOptions::default()).unwrap();
    assert!(r.to_text().contains("200/200 pass"));
    assert!(r.passed());
}

#[test]
fn verify_needs_a_seed() {
    let wb = check("task verify suite=kernel cases=3").unwrap();
    let r = run(&wb, &RunOptions::default()).unwrap();
    assert_eq!(r.tasks[0].status, Status::Error);
    let r = run(&wb, &RunOptions { seed: Some(1), ..Default::default() }).unwrap();
    assert_eq!(r.tasks[0].status, Status::Pass);
}

#[test]
fn unknown_task_selector_is_an_error() {
    let wb = check("ring Z").unwrap();
    let opts = RunOptions { task: Some("nope".into()), ..Default::default() };
    assert!(run(&wb, &opts).is_err());
}

#[test]
fn fixtures_check_and_pass() {
    for (name, src) in common::fixtures() {
        let wb = check(&src).unwrap_or_else(|e| panic!("{}: {:?}", name, e));
        let r = run(&wb, &RunOptions { seed: Some(5), ..Default::default() }).unwrap();
        assert!(r.passed(), "{}:\n{}", name, r.to_text());
    }
}

#[test]
fn fixtures_round_trip() {
    for (name, src) in common::fixtures() {
        let doc = parse(&src).unwrap();
        let printed = print(&doc);
        assert_eq!(parse(&printed).unwrap(), doc, "{}", name);
        assert_eq!(print(&parse(&printed).unwrap()), printed, "{}", name);
    }
}

#[test]
fn reports_are_deterministic() {
    for (name, src) in common::fixtures() {
        assert_eq!(common::reports(&src, 11), common::reports(&src, 11), "{}", name);
    }
}

#[test]
fn fuzzed_inputs_never_panic() {
    assert_eq!(common::fuzz_panics(&common::fuzz_inputs(99, 1500)), 0);
}

fn name() -> impl Strategy<Value = String> {
    "[A-Za-z_][A-Za-z0-9_]{0,5}".prop_filter("not a keyword", |s| !matches!(s.as_str(), "over" | "standard"))
}

fn label() -> impl Strategy<Value = String> {
    prop_oneof![name(), (0u32..50).prop_map(|n| n.to_string()), "[*+. -]{1,3}".prop_map(|s| format!("\"{}\"", s))]
}

fn ints(max: usize) -> impl Strategy<Value = String> {
    prop::collection::vec(-20i64..20, 0..max).prop_map(|v| {
        let p: Vec<String> = v.iter().map(i64::to_string).collect();
        format!("[{}]", p.join(", "))
    })
}

fn matrix() -> impl Strategy<Value = String> {
    prop::collection::vec(ints(4), 0..4).prop_map(|rows| format!("[{}]", rows.join(",\n ")))
}

fn functor() -> impl Strategy<Value = String> {
    let leaf = prop_oneof![
        name(),
        name().prop_map(|m| format!("tensor({})", m)),
        (2u32..20).prop_map(|p| format!("reduce({})", p)),
        name().prop_map(|r| format!("augmentation( {} )", r)),
        (name(), name(), ints(4)).prop_map(|(a, b, v)| format!("quotient({}, {}, {})", a, b, v)),
    ];
    leaf.prop_recursive(3, 8, 2, |inner| (inner.clone(), inner).prop_map(|(g, f)| format!("compose({}, {})", g, f)))
}

fn decl() -> impl Strategy<Value = String> {
    prop_oneof![
        name().prop_map(|n| format!("ring {}", n)),
        (name(), 2u32..50).prop_map(|(n, p)| format!("ring {} = field {}", n, p)),
        (name(), ints(3)).prop_map(|(n, v)| format!("ring {} = abelian 2 {}", n, v)),
        (name(), matrix()).prop_map(|(n, m)| format!("ring {} = group 3 {}", n, m)),
        (name(), name(), matrix()).prop_map(|(n, r, m)| format!("module {} over {} = coker {}", n, r, m)),
        (name(), name(), 0u32..5).prop_map(|(n, r, k)| format!("module {} over {} = free {}", n, r, k)),
        (name(), name(), ints(3)).prop_map(|(n, r, v)| format!("module {} over {} = factors {}", n, r, v)),
        (name(), name(), name(), matrix()).prop_map(|(n, a, b, m)| format!("morphism {} : {} -> {} = {}", n, a, b, m)),
        (name(), name(), name()).prop_map(|(n, a, b)| format!("morphism {}: {}->{} = zero", n, a, b)),
        (name(), name()).prop_map(|(n, s)| format!("category {} = standard {}", n, s)),
        (name(), prop::collection::vec(label(), 0..4), prop::collection::vec((label(), label(), label()), 0..3)).prop_map(
            |(n, os, arrows)| {
                let mut s = format!("category {} = {{ objects {}", n, os.join(", "));
                if os.is_empty() {
                    s = format!("category {} = {{", n);
                }
                for (l, a, b) in arrows {
                    s.push_str(&format!("; arrow {} : {} -> {}", l, a, b));
                }
                s + " }"
            }
        ),
        (name(), name(), prop::collection::vec((label(), name()), 0..4)).prop_map(|(n, c, bs)| {
            let b: Vec<String> = bs.iter().map(|(k, v)| format!("{} = {}", k, v)).collect();
            format!("diagram {} over {} {{ {} }}", n, c, b.join("; "))
        }),
        (name(), functor()).prop_map(|(n, f)| format!("functor {} = {}", n, f)),
        (name(), name(), name()).prop_map(|(n, a, b)| format!("ses {} = ({}, {})", n, a, b)),
        (name(), name(), name(), functor(), 0u32..5).prop_map(|(t, a, s, f, n)| format!("task {} = les F={} S={} n={} A={}", t, f, s, n, a)),
        (name(), 0u32..9).prop_map(|(m, n)| format!("task homology complex=[{}, {}] n={}", m, m, n)),
        (0u64..1000).prop_map(|s| format!("task verify suite=les seed={}", s)),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn print_then_parse_is_the_identity(decls in prop::collection::vec(decl(), 0..8)) {
        let src = decls.join("\n");
        let doc = parse_syntax(&src).unwrap();
        let printed = print(&doc);
        prop_assert_eq!(parse_syntax(&printed).unwrap(), doc);
    }

    #[test]
    fn arbitrary_text_never_panics(src in "\\PC{0,120}") {
        let _ = parse(&src);
        let _ = check(&src);
    }
}
