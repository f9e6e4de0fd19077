//! The twelve acceptance criteria, one PASS/FAIL line each.

use std::path::PathBuf;
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use nestfold::check::{run_suite, Bounds, CheckReport};
use nestfold::corpus::{eval_named, folds, literal, program};
use nestfold::derive::{artifacts_for, derive_fold_spec};
use nestfold::emit::{agda, check_listing, emit_agda, recursive_indexes, EmitOptions, Fit};
use nestfold::interp::{AuditReport, Ground};
use nestfold::{load_program, Value};

const DERIVE_LIMIT: Duration = Duration::from_secs(1);
const MAP_LAW_LIMIT: Duration = Duration::from_secs(5 * 60);
const BETA_LAW_LIMIT: Duration = Duration::from_secs(2 * 60);

type Outcome = Result<String, String>;

fn ensure(ok: bool, msg: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn program_file(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../programs").join(format!("{name}.ndt"))
}

fn cli(args: &[&str]) -> Result<String, String> {
    let o = Command::new(env!("CARGO_BIN_EXE_nestfold")).args(args).output().map_err(|e| e.to_string())?;
    ensure(o.status.success(), format!("nestfold {args:?}: {}", String::from_utf8_lossy(&o.stderr)))?;
    Ok(String::from_utf8_lossy(&o.stdout).into_owned())
}

fn derivation_exactness() -> Outcome {
    let start = Instant::now();
    let src = std::fs::read_to_string(program_file("d")).map_err(|e| e.to_string())?;
    let prog = load_program(&src).map_err(|e| e.to_string())?;
    let direct = derive_fold_spec(&prog, "D").map_err(|e| e.to_string())?;
    let a = artifacts_for(&prog, folds().d.clone()).map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();

    let ctors: Vec<String> = a.index_type.ctors.iter().map(|c| format!("{}/{}", c.name, c.arity)).collect();
    ensure(ctors == ["VarA/0", "VarB/0", "IsD/2", "IsI/1"], format!("index constructors {ctors:?}"))?;
    let golden = include_str!("../../core/tests/golden/foldD.indexes.txt");
    let got = recursive_indexes(&a.fold_spec, &["bcons", "acons"]);
    ensure(got == golden, format!("indexes differ:\n{got}"))?;
    let direct_idx = recursive_indexes(&direct, &["dcons", "acons"]).replacen("dcons:", "bcons:", 1);
    ensure(direct_idx == golden, format!("direct derivation differs:\n{direct_idx}"))?;
    ensure(elapsed < DERIVE_LIMIT, format!("took {elapsed:?}"))?;

    let out = cli(&["derive", program_file("d").to_str().unwrap(), "--type", "D", "--direct"])?;
    ensure(out.contains("index type IndexD: VarA/0, VarB/0, IsD/2, IsI/1"), "cli summary lacks the index type")?;
    ensure(
        out.contains("IsD (IsD (IsI j) (IsI j)) (IsI i)")
            && out.contains("IsD (IsI (IsI (IsD j i))) (IsD (IsD j i) (IsD i j))"),
        "cli summary lacks the indexes",
    )?;
    Ok(format!("derived in {} ms", elapsed.as_millis()))
}

fn higher_order_specialization() -> Outcome {
    let start = Instant::now();
    let d = artifacts_for(program("d"), folds().d.clone()).map_err(|e| e.to_string())?;
    let text = emit_agda(program("d"), &d, &EmitOptions::all("D")).map_err(|e| e.to_string())?;
    check_listing(&text, include_str!("../../core/tests/golden/hfoldD.type.agda"), Fit::Prefix)?;
    for (prog, spec, want) in
        [("bush", &folds().b, "hfoldB"), ("term", &folds().t, "hfoldT"), ("terme", &folds().e, "hfoldE")]
    {
        let a = artifacts_for(program(prog), spec.clone()).map_err(|e| e.to_string())?;
        ensure(a.hofold.name == want, format!("{prog}: hofold is {}", a.hofold.name))?;
        ensure(!agda::hofold_def(&a.hofold).is_empty(), format!("{want} has no definition"))?;
    }
    let elapsed = start.elapsed();
    ensure(elapsed < DERIVE_LIMIT, format!("took {elapsed:?}"))?;
    Ok(format!("{} ms", elapsed.as_millis()))
}

fn value(s: &str) -> Value {
    nestfold::interp::parse_value(s).expect("value literal")
}

fn evaluation_results() -> Outcome {
    let num0 = literal("num0").ok_or("no num0")?;
    let three = eval_named("mapIncr", 3, std::slice::from_ref(&num0)).map_err(|e| e.to_string())?;
    ensure(three == value("Succ[Succ[Zero]]"), format!("mapIncr 3 gives {three}"))?;
    let two = eval_named("mapIncr", 2, &[num0]).map_err(|e| e.to_string())?;
    ensure(two == value("Succ[Succ[Succ[Zero]]]"), format!("mapIncr 2 gives {two}"))?;
    Ok("mapIncr 3 and mapIncr 2".into())
}

fn sharing_semantics() -> Outcome {
    let got = eval_named("redexE", 0, &[literal("redex1").ok_or("no redex1")?]).map_err(|e| e.to_string())?;
    let want = literal("term2").ok_or("no term2")?;
    ensure(got == want, format!("redexE redex1 = {got}"))?;
    Ok("redexE redex1 == term2".into())
}

fn reports<'a>(all: &'a [CheckReport], names: &[&str]) -> Result<Vec<&'a CheckReport>, String> {
    names.iter().map(|n| all.iter().find(|r| r.property == *n).ok_or(format!("no property {n}"))).collect()
}

fn laws(all: &[CheckReport], names: &[&str], limit: Option<Duration>) -> Outcome {
    let rs = reports(all, names)?;
    for r in &rs {
        ensure(r.passed(), r.summary())?;
        ensure(r.cases > 0, format!("{} checked nothing", r.property))?;
    }
    let ms: u64 = rs.iter().map(|r| r.elapsed_ms).sum();
    if let Some(limit) = limit {
        ensure(Duration::from_millis(ms) <= limit, format!("took {ms} ms"))?;
    }
    let cases: usize = rs.iter().map(|r| r.cases).sum();
    Ok(format!("{cases} cases, {ms} ms"))
}

fn bounds_are_pinned(b: &Bounds) -> Result<(), String> {
    ensure(b.bush_index == 3 && b.bush_size == 7, "Bush bounds")?;
    ensure(b.term_size == 8, "Term bounds")?;
    ensure(b.d_depth == 3 && b.d_size == 7, "D/I bounds")?;
    ensure(b.lemma_size == 6, "lemma bounds")?;
    ensure(b.alphabet.len() == 4, "alphabet")
}

/// Every leaf, left to right.
fn flatten(v: &Value, out: &mut Vec<u64>) {
    match v {
        Value::Ground(Ground::Nat(n)) => out.push(*n),
        Value::Ground(_) => {}
        Value::Con(_, kids) => kids.iter().for_each(|k| flatten(k, out)),
    }
}

fn spine_length(mut v: &Value) -> u64 {
    let mut n = 0;
    while let Value::Con(c, kids) = v {
        if c != "ConsB" {
            break;
        }
        n += 1;
        v = &kids[1];
    }
    n
}

fn numeric_spot_values() -> Outcome {
    let bush1 = literal("bush1").ok_or("no bush1")?;
    let mut leaves = Vec::new();
    flatten(&bush1, &mut leaves);
    let oracle: u64 = leaves.iter().sum();
    ensure(oracle == 34, format!("oracle sum {oracle}"))?;
    ensure(spine_length(&bush1) == 4, "oracle length")?;
    let want = Value::nat(oracle);
    for f in ["sumB", "sumAux"] {
        let got = eval_named(f, 0, std::slice::from_ref(&bush1)).map_err(|e| e.to_string())?;
        ensure(got == want, format!("{f} gives {got}"))?;
    }
    let len = eval_named("lengthB", 0, &[bush1]).map_err(|e| e.to_string())?;
    ensure(len == Value::nat(4), format!("lengthB gives {len}"))?;
    Ok("sumB = sumAux = 34, lengthB = 4".into())
}

fn termination_audit(all: &[CheckReport]) -> Outcome {
    let mut total = AuditReport::default();
    for r in all {
        total.merge(r.audit.clone());
    }
    ensure(total.calls > 0, "no recursive calls recorded")?;
    ensure(total.ok(), format!("{} violations, first {:?}", total.violations.len(), total.violations.first()))?;
    Ok(format!("{} calls, 0 violations", total.calls))
}

fn emission_goldens() -> Outcome {
    let bush = artifacts_for(program("bush"), folds().b.clone()).map_err(|e| e.to_string())?;
    let b = emit_agda(program("bush"), &bush, &EmitOptions::all("Bush")).map_err(|e| e.to_string())?;
    let d = artifacts_for(program("d"), folds().d.clone()).map_err(|e| e.to_string())?;
    let dt = emit_agda(program("d"), &d, &EmitOptions::all("D")).map_err(|e| e.to_string())?;
    let checks = [
        (&b, include_str!("../../core/tests/golden/foldB.agda"), Fit::Whole),
        (&b, include_str!("../../core/tests/golden/indB.type.agda"), Fit::Prefix),
        (&b, include_str!("../../core/tests/golden/BushN.agda"), Fit::Whole),
        (&b, include_str!("../../core/tests/golden/foldBN.agda"), Fit::Whole),
        (&b, include_str!("../../core/tests/golden/CNBush.agda"), Fit::Whole),
        (&dt, include_str!("../../core/tests/golden/foldD.type.agda"), Fit::Prefix),
        (&dt, include_str!("../../core/tests/golden/foldD.clauses.agda"), Fit::Within),
        (&dt, include_str!("../../core/tests/golden/hfoldD.type.agda"), Fit::Prefix),
    ];
    for (text, golden, fit) in checks {
        check_listing(text, golden, fit)?;
    }
    for (prog, spec) in [("bush", &folds().b), ("term", &folds().t), ("terme", &folds().e), ("d", &folds().d)] {
        let a = artifacts_for(program(prog), spec.clone()).map_err(|e| e.to_string())?;
        let ind = &a.induction_spec.name;
        let renamed: Vec<String> =
            agda::fold_clauses(spec, &spec.name).iter().map(|l| l.replace(&spec.name, ind)).collect();
        ensure(agda::fold_clauses(&a.induction_spec.fold, ind) == renamed, format!("{ind} clauses differ"))?;
    }
    Ok(format!("{} listings, 4 induction principles", checks.len()))
}

fn main() -> ExitCode {
    let bounds = Bounds::default();
    let suite_start = Instant::now();
    let suite = bounds_are_pinned(&bounds).and_then(|()| run_suite(&bounds).map_err(|e| e.to_string()));
    let suite_ms = suite_start.elapsed().as_millis();
    let with_suite = |f: &dyn Fn(&[CheckReport]) -> Outcome| -> Outcome {
        match &suite {
            Ok(all) => f(all),
            Err(e) => Err(e.clone()),
        }
    };

    let results: Vec<(&str, Outcome)> = vec![
        ("1 derivation exactness", derivation_exactness()),
        ("2 higher-order specialization", higher_order_specialization()),
        ("3 evaluation results", evaluation_results()),
        ("4 sharing semantics", sharing_semantics()),
        ("5 map laws", with_suite(&|a| laws(a, &["map_identity", "map_compose"], Some(MAP_LAW_LIMIT)))),
        (
            "6 Bush map and hfold equations",
            with_suite(&|a| {
                laws(a, &["add_map", "map_nil", "map_cons", "hfold_nil", "hfold_cons", "uniqueness_spotcheck"], None)
            }),
        ),
        (
            "7 beta laws",
            with_suite(&|a| {
                laws(
                    a,
                    &["beta_law_term", "beta_var_case", "beta_var_match", "beta_var_nomatch", "beta_law_terme"],
                    Some(BETA_LAW_LIMIT),
                )
            }),
        ),
        (
            "8 commutation lemmas",
            with_suite(&|a| laws(a, &["map_fuse", "map_subst_commute", "cvt_subst_commute"], None)),
        ),
        ("9 indexed round trip", with_suite(&|a| laws(a, &["roundtrip_indexed"], None))),
        ("10 numeric spot values", numeric_spot_values()),
        ("11 termination audit", with_suite(&|a| termination_audit(a))),
        ("12 emission goldens", emission_goldens()),
    ];

    let mut failed = 0;
    for (name, r) in &results {
        match r {
            Ok(detail) => println!("PASS {name}: {detail}"),
            Err(e) => {
                failed += 1;
                println!("FAIL {name}: {e}");
            }
        }
    }
    println!("{} of {} criteria pass (suite {suite_ms} ms)", results.len() - failed, results.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
