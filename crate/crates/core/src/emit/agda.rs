//! Agda rendering of derived artifacts.

use crate::derive::{
    render_interp_app, ArgKind, ChurchEncodingDecl, EquationArg, Family, FoldCase, FoldSpec, HOFoldSpec, IndexExpr,
    IndexTypeDecl, IndexedRep, IndexedRepDecl, InductionSpec, InterpretationFn, MapAction, MapSpec, RawType,
    SignatureStyle, Template,
};
use crate::syntax::{format_constructor, DataDecl, TypeExpr};

fn paren_if_spaced(s: String) -> String {
    if s.contains(' ') {
        format!("({s})")
    } else {
        s
    }
}

/// `{a b : Set}`, or nothing for a parameterless family.
fn param_group(params: &[String]) -> Option<String> {
    (!params.is_empty()).then(|| format!("{{{} : Set}}", params.join(" ")))
}

fn implicit_args(names: &[String]) -> Vec<String> {
    names.iter().map(|n| format!("{{{n}}}")).collect()
}

/// Parameters, then the motive, in the fold's own style.
fn header(style: SignatureStyle, params: &[String], motive: &str) -> String {
    let p = format!("{{p : {motive}}}");
    match (param_group(params), style) {
        (None, _) => format!("{p} ->"),
        (Some(g), SignatureStyle::Named) => format!("{g} {p} ->"),
        (Some(g), SignatureStyle::Positional) => format!("{g} -> {p} ->"),
    }
}

fn binder_group(vars: &[String], ty: &str, implicit: bool) -> Option<String> {
    if vars.is_empty() {
        None
    } else if implicit {
        Some(format!("{{{} : {ty}}}", vars.join(" ")))
    } else {
        Some(format!("({} : {ty})", vars.join(" ")))
    }
}

/// One signature per line, continuation lines aligned under the type.
fn layout(name: &str, lines: &[String]) -> String {
    let pad = " ".repeat(name.len() + 3);
    let mut out = format!("{name} : {}", lines[0]);
    for l in &lines[1..] {
        out.push('\n');
        out.push_str(&pad);
        out.push_str(l);
    }
    out
}

fn clause(lhs: String, rhs: String) -> String {
    if lhs.len() + rhs.len() > 76 {
        format!("{lhs} =\n  {rhs}")
    } else {
        format!("{lhs} = {rhs}")
    }
}

fn fresh(avoid: &[String], pool: &[&str], n: usize) -> Vec<String> {
    pool.iter().map(|s| s.to_string()).filter(|s| !avoid.contains(s)).take(n).collect()
}

/// Variable names for the arguments of an index constructor.
fn rule_vars(ix: &IndexTypeDecl, arity: usize) -> Vec<String> {
    let pool: &[&str] = if ix.name == "Nat" { &["n", "m", "k"] } else { &["i", "j", "k"] };
    (0..arity).map(|k| pool.get(k).map(|s| s.to_string()).unwrap_or_else(|| format!("i{k}"))).collect()
}

fn ctor_pattern(name: &str, vars: &[String]) -> String {
    if vars.is_empty() {
        name.to_string()
    } else {
        format!("({name} {})", vars.join(" "))
    }
}

pub fn data_decl(d: &DataDecl) -> String {
    let mut s = if d.params.is_empty() {
        format!("data {} : Set where", d.name)
    } else {
        format!("data {} ({} : Set) : Set where", d.name, d.params.join(" "))
    };
    for c in &d.constructors {
        s.push_str("\n  ");
        s.push_str(&format_constructor(c));
    }
    s
}

pub fn index_type_decl(ix: &IndexTypeDecl) -> String {
    let mut s = format!("data {} : Set where", ix.name);
    for c in &ix.ctors {
        s.push_str(&format!("\n  {} : ", c.name));
        for _ in 0..c.arity {
            s.push_str(&format!("{} -> ", ix.name));
        }
        s.push_str(&ix.name);
    }
    s
}

fn sets(n: usize) -> String {
    vec!["Set"; n + 1].join(" -> ")
}

/// `H : IndexD -> Set -> Set -> Set` and one equation per index
/// constructor. `motive` threads an extra type-constructor argument.
pub fn interpretation_def(h: &InterpretationFn, motive: Option<(&str, usize)>) -> String {
    let ix = &h.index_type;
    let mut extras: Vec<String> = Vec::new();
    let mut sig = format!("{} : {} -> ", h.name, ix.name);
    if let Some((p, arity)) = motive {
        sig.push_str(&format!("({}) -> ", sets(arity)));
        extras.push(p.to_string());
    }
    sig.push_str(&sets(h.params.len()));
    extras.extend(h.params.iter().cloned());
    let tail = extras.join(" ");
    let mut s = sig;
    for r in &h.rules {
        let arity = ix.ctor(&r.ctor).map(|c| c.arity).unwrap_or(0);
        let vars = rule_vars(ix, arity);
        let rhs = r.rhs.render(&|k| format!("({} {} {tail})", h.name, vars[k]));
        s.push_str(&format!("\n{} {} {tail} = {rhs}", h.name, ctor_pattern(&r.ctor, &vars)));
    }
    s
}

/// The family at `index` with its parameters renamed to `params`.
fn family_at(f: &Family, index: &IndexExpr, params: &[String]) -> String {
    match f {
        Family::Interpreted { interp, wrap } => {
            let inner = render_interp_app(&interp.name, index, params);
            match wrap {
                Some(w) => w.render(&|_| format!("({inner})")),
                None => inner,
            }
        }
        Family::Indexed(rep) => render_interp_app(&rep.name, index, params),
    }
}

fn index_group(spec: &FoldSpec, c: &FoldCase) -> Option<String> {
    let named = spec.style == SignatureStyle::Named;
    binder_group(&c.index_vars(), &spec.family.index_type().name, named)
}

fn wrap_case(spec: &FoldSpec, c: &FoldCase, parts: Vec<String>) -> String {
    let body = parts.join(" -> ");
    match spec.style {
        SignatureStyle::Named => format!("({} : {body})", c.name),
        SignatureStyle::Positional if parts.len() > 1 => format!("({body})"),
        SignatureStyle::Positional => body,
    }
}

fn case_type(spec: &FoldSpec, c: &FoldCase) -> String {
    let mut parts: Vec<String> = index_group(spec, c).into_iter().collect();
    for a in &c.args {
        parts.push(match &a.kind {
            ArgKind::Raw(r) => spec.family.render_raw(r),
            ArgKind::Recursive(i) => format!("p {}", i.to_atom_string()),
        });
    }
    parts.push(format!("p {}", c.index.to_atom_string()));
    wrap_case(spec, c, parts)
}

/// Signature of `spec` (or of a fold with its type) over `subject`.
fn fold_signature(spec: &FoldSpec, name: &str, subject: &str) -> String {
    let ix = &spec.family.index_type().name;
    let iv = &spec.index_var;
    let mut lines = vec![header(spec.style, spec.family.params(), &format!("{ix} -> Set"))];
    let index_arg = format!("({iv} : {ix}) ->");
    if spec.index_first {
        lines.push(index_arg.clone());
    }
    lines.extend(spec.cases.iter().map(|c| format!("{} ->", case_type(spec, c))));
    let tail = format!("{subject} -> p {iv}");
    lines.push(if spec.index_first { tail } else { format!("{index_arg} {tail}") });
    layout(name, &lines)
}

/// `f {a} {p} idx cases` or `f cases idx`, ready for a subject.
fn call_prefix(spec: &FoldSpec, name: &str, index: &str) -> String {
    let mut parts = vec![name.to_string()];
    if spec.style == SignatureStyle::Named {
        parts.extend(implicit_args(spec.family.params()));
        parts.push("{p}".into());
    }
    let cases = spec.case_names();
    if spec.index_first {
        parts.push(index.to_string());
        parts.extend(cases);
    } else {
        parts.extend(cases);
        parts.push(index.to_string());
    }
    parts.join(" ")
}

/// One clause per case; the name is a parameter so folds and induction
/// principles share the text.
pub fn fold_clauses(spec: &FoldSpec, name: &str) -> Vec<String> {
    spec.equations()
        .iter()
        .map(|eq| {
            let case = spec.case(&eq.case).expect("equations come from cases");
            let lhs = format!("{} {}", call_prefix(spec, name, &eq.index.to_atom_string()), eq.pattern.render(true));
            let mut rhs = vec![eq.case.clone()];
            if spec.style == SignatureStyle::Positional {
                rhs.extend(case.index_vars());
            }
            for a in &eq.rhs {
                rhs.push(match a {
                    EquationArg::Raw(b) => b.clone(),
                    EquationArg::Rec(i, b) => {
                        format!("({} {b})", call_prefix(spec, name, &i.to_atom_string()))
                    }
                });
            }
            clause(lhs, rhs.join(" "))
        })
        .collect()
}

pub fn fold_def(spec: &FoldSpec) -> String {
    let subject = spec.family.render_subject(&IndexExpr::var(&spec.index_var));
    let mut s = fold_signature(spec, &spec.name, &subject);
    for c in fold_clauses(spec, &spec.name) {
        s.push('\n');
        s.push_str(&c);
    }
    s
}

pub fn induction_signature(ind: &InductionSpec) -> String {
    let spec = &ind.fold;
    let f = &spec.family;
    let ix = &f.index_type().name;
    let iv = &spec.index_var;
    let motive = format!("({iv} : {ix}) -> {} -> Set", f.render_subject(&IndexExpr::var(iv)));
    let mut lines = vec![header(spec.style, f.params(), &motive)];
    let index_arg = format!("({iv} : {ix}) ->");
    if spec.index_first {
        lines.push(index_arg.clone());
    }
    for (ic, c) in ind.cases.iter().zip(&spec.cases) {
        let mut parts: Vec<String> = index_group(spec, c).into_iter().collect();
        parts.extend(ic.explicit.iter().map(|(b, r)| format!("({b} : {})", f.render_raw(r))));
        parts.extend(ic.hypotheses.iter().map(|(b, i)| format!("{{{b} : {}}}", f.render_subject(i))));
        parts.extend(ic.hypotheses.iter().map(|(b, i)| format!("p {} {b}", i.to_atom_string())));
        parts.push(format!("p {} {}", ic.conclusion_index.to_atom_string(), ic.conclusion.render(true)));
        lines.push(format!("{} ->", wrap_case(spec, c, parts)));
    }
    let sn = &spec.subject_name;
    let tail = format!("({sn} : {}) -> p {iv} {sn}", f.render_subject(&IndexExpr::var(iv)));
    lines.push(if spec.index_first { tail } else { format!("{index_arg} {tail}") });
    layout(&ind.name, &lines)
}

pub fn induction_def(ind: &InductionSpec) -> String {
    let mut s = induction_signature(ind);
    for c in fold_clauses(&ind.fold, &ind.name) {
        s.push('\n');
        s.push_str(&c);
    }
    s
}

/// A fold argument built from a case template, eta-reduced when the
/// template just applies a head to the case's binders.
fn case_impl(spec: &FoldSpec, c: &FoldCase, t: &Template) -> String {
    let binders: Vec<Template> = c.args.iter().map(|a| Template::Slot(a.binder.clone())).collect();
    let mut params = if spec.style == SignatureStyle::Positional { c.index_vars() } else { Vec::new() };
    let body = match t {
        Template::Ctor(h, xs) | Template::Call(h, xs) if *xs == binders => h.clone(),
        _ => {
            params.extend(c.args.iter().map(|a| a.binder.clone()));
            t.render(false)
        }
    };
    if params.is_empty() {
        paren_if_spaced(body)
    } else {
        format!("(\\ {} -> {body})", params.join(" "))
    }
}

fn fold_call(spec: &FoldSpec, motive: &str, impls: Vec<String>, index: &str, subject: &str) -> String {
    let mut parts = vec![spec.name.clone()];
    parts.extend(implicit_args(spec.family.params()));
    parts.push(format!("{{{motive}}}"));
    if spec.index_first {
        parts.push(index.to_string());
        parts.extend(impls);
    } else {
        parts.extend(impls);
        parts.push(index.to_string());
    }
    parts.push(subject.to_string());
    parts.join(" ")
}

fn map_template(t: &Template, raw: &[(String, String)]) -> Template {
    match t {
        Template::Slot(s) => match raw.iter().find(|(b, _)| b == s) {
            Some((_, f)) => Template::Call(f.clone(), vec![t.clone()]),
            None => t.clone(),
        },
        Template::Ctor(c, xs) => Template::Ctor(c.clone(), xs.iter().map(|x| map_template(x, raw)).collect()),
        Template::Call(c, xs) => Template::Call(c.clone(), xs.iter().map(|x| map_template(x, raw)).collect()),
    }
}

/// `None` when some case carries an interpreted raw argument, which would
/// need a map of its own.
pub fn map_def(m: &MapSpec) -> Option<String> {
    let spec = &m.fold;
    let f = &spec.family;
    let params = f.params().to_vec();
    let targets = fresh(&params, &["b", "c", "d", "e", "q", "r", "s", "t"], params.len());
    let fns = fresh(&[], &["f", "g", "h", "k"], params.len());
    let fn_of = |p: &str| fns[params.iter().position(|q| q == p).expect("family parameter")].clone();
    let ix = &f.index_type().name;
    let iv = &spec.index_var;
    let idx = IndexExpr::var(iv);
    let mut all = params.clone();
    all.extend(targets.iter().cloned());
    let mut sig = format!("{} -> ({iv} : {ix}) -> ", param_group(&all).expect("nonempty"));
    for (p, q) in params.iter().zip(&targets) {
        sig.push_str(&format!("({p} -> {q}) -> "));
    }
    sig.push_str(&format!("{} -> {}", family_at(f, &idx, &params), family_at(f, &idx, &targets)));
    let mut impls = Vec::new();
    for (c, (_, action)) in spec.cases.iter().zip(&m.actions) {
        let t = match action {
            MapAction::ApplyLeaf(p) => Template::Call(fn_of(p), vec![Template::Slot(c.args[0].binder.clone())]),
            MapAction::Rebuild => {
                let mut raw = Vec::new();
                for a in &c.args {
                    match &a.kind {
                        ArgKind::Raw(RawType::Param(p)) => raw.push((a.binder.clone(), fn_of(p))),
                        ArgKind::Raw(RawType::Interp(_)) => return None,
                        ArgKind::Recursive(_) => {}
                    }
                }
                map_template(&Template::of_pattern(&c.pattern), &raw)
            }
        };
        impls.push(case_impl(spec, c, &t));
    }
    let motive = format!("\\ {iv} -> {}", family_at(f, &idx, &targets));
    let mut lhs = vec![m.name.clone()];
    lhs.extend(implicit_args(&all));
    lhs.push(iv.clone());
    lhs.extend(fns.iter().cloned());
    lhs.push("l".into());
    let body = fold_call(spec, &motive, impls, iv, "l");
    Some(format!("{} : {sig}\n{}", m.name, clause(lhs.join(" "), body)))
}

/// Whether the abstracted interpretation itself takes the motive.
fn hp_takes_motive(h: &HOFoldSpec) -> bool {
    h.hp.interpretation().name != h.base.family.interpretation().name
}

fn hp_app(h: &HOFoldSpec, index: &IndexExpr) -> String {
    let interp = h.hp.interpretation();
    let mut inner = format!("{} {}", interp.name, index.to_atom_string());
    if hp_takes_motive(h) {
        inner.push(' ');
        inner.push_str(&h.motive_var);
    }
    for p in &interp.params {
        inner.push(' ');
        inner.push_str(p);
    }
    match &h.hp {
        Family::Interpreted { wrap: Some(w), .. } => w.render(&|_| format!("({inner})")),
        _ => inner,
    }
}

fn rename_vars(t: &TypeExpr, from: &[String], to: &[String]) -> TypeExpr {
    let sub = from.iter().cloned().zip(to.iter().map(|v| TypeExpr::Var(v.clone()))).collect();
    t.substitute(&sub)
}

pub fn hofold_signature(h: &HOFoldSpec) -> String {
    let spec = &h.base;
    let arity = h.root_params.len();
    let mut lines = vec![header(spec.style, &h.root_params, &sets(arity))];
    let mut avoid = h.root_params.clone();
    avoid.push(h.motive_var.clone());
    let local = match spec.style {
        SignatureStyle::Named => h.root_params.clone(),
        SignatureStyle::Positional => fresh(&avoid, &["b", "c", "d", "e", "q", "r"], arity),
    };
    for a in &h.args {
        let mut parts: Vec<String> = param_group(&local).into_iter().collect();
        for t in &a.arg_types {
            let t = rename_vars(t, &h.root_params, &local);
            parts.push(if matches!(t, TypeExpr::Arrow(..)) { format!("({t})") } else { t.to_string() });
        }
        parts.push(rename_vars(&a.result, &h.root_params, &local).to_string());
        let body = parts.join(" -> ");
        lines.push(match spec.style {
            SignatureStyle::Named => format!("({} : {body}) ->", a.name),
            SignatureStyle::Positional => format!("({body}) ->"),
        });
    }
    let self_ty = TypeExpr::App(h.root.clone(), h.root_params.iter().map(|p| TypeExpr::Var(p.clone())).collect());
    let motive_ty =
        TypeExpr::App(h.motive_var.clone(), h.root_params.iter().map(|p| TypeExpr::Var(p.clone())).collect());
    lines.push(format!("{self_ty} -> {motive_ty}"));
    layout(&h.name, &lines)
}

pub fn hofold_def(h: &HOFoldSpec) -> String {
    let spec = &h.base;
    let iv = &spec.index_var;
    let mut s = String::new();
    if hp_takes_motive(h) {
        s.push_str(&interpretation_def(h.hp.interpretation(), Some((&h.motive_var, h.root_params.len()))));
        s.push_str("\n\n");
    }
    s.push_str(&hofold_signature(h));
    let impls =
        spec.cases.iter().map(|c| case_impl(spec, c, h.recipe_for(&c.name).expect("recipe per case"))).collect();
    let motive = format!("\\ {iv} -> {}", hp_app(h, &IndexExpr::var(iv)));
    let mut lhs = vec![h.name.clone()];
    lhs.extend(implicit_args(&h.root_params));
    lhs.push(format!("{{{}}}", h.motive_var));
    lhs.extend(h.args.iter().map(|a| a.name.clone()));
    lhs.push(spec.subject_name.clone());
    let body = fold_call(spec, &motive, impls, &h.start_index.to_atom_string(), &spec.subject_name);
    s.push('\n');
    s.push_str(&clause(lhs.join(" "), body));
    s
}

pub fn rep_decl(r: &IndexedRepDecl) -> String {
    let ix = &r.index_type.name;
    let mut s = format!("data {} : {ix} -> {} where", r.name, sets(r.params.len()));
    for c in &r.ctors {
        let mut parts: Vec<String> = param_group(&r.params).into_iter().collect();
        parts.extend(binder_group(&c.index_vars(), ix, true));
        for a in &c.args {
            parts.push(match &a.kind {
                ArgKind::Raw(RawType::Param(p)) => p.clone(),
                ArgKind::Raw(RawType::Interp(i)) => {
                    render_interp_app(&r.source_interp.name, i, &r.source_interp.params)
                }
                ArgKind::Recursive(i) => render_interp_app(&r.name, i, &r.params),
            });
        }
        parts.push(render_interp_app(&r.name, &c.index, &r.params));
        s.push_str(&format!("\n  {} : {}", c.name, parts.join(" -> ")));
    }
    s
}

fn conversion(name: &str, spec: &FoldSpec, target: &Family, templates: &[(String, Template)]) -> String {
    let f = &spec.family;
    let params = f.params().to_vec();
    let ix = &f.index_type().name;
    let iv = &spec.index_var;
    let idx = IndexExpr::var(iv);
    let sig = format!(
        "{name} : {} -> ({iv} : {ix}) -> {} -> {}",
        param_group(&params).expect("nonempty"),
        f.render_subject(&idx),
        target.render_subject(&idx)
    );
    let impls = spec
        .cases
        .iter()
        .map(|c| {
            let t = templates.iter().find(|(k, _)| *k == c.name).map(|(_, t)| t).expect("template per case");
            case_impl(spec, c, t)
        })
        .collect();
    let motive = format!("\\ {iv} -> {}", target.render_subject(&idx));
    let mut lhs = vec![name.to_string()];
    lhs.extend(implicit_args(&params));
    lhs.push(iv.clone());
    lhs.push("s".into());
    format!("{sig}\n{}", clause(lhs.join(" "), fold_call(spec, &motive, impls, iv, "s")))
}

pub fn indexed_rep_def(source: &FoldSpec, r: &IndexedRep) -> String {
    [
        rep_decl(&r.decl),
        fold_def(&r.fold),
        conversion("to", source, &r.fold.family, &r.conversions.to),
        conversion("from", &r.fold, &source.family, &r.conversions.from),
    ]
    .join("\n\n")
}

pub const CHURCH_CAVEAT: &str =
    "-- Church encodings are impredicative: Agda accepts them only with the unsafe --type-in-type flag.";

pub fn church_def(c: &ChurchEncodingDecl) -> String {
    let spec = &c.fold;
    let f = &spec.family;
    let params = f.params().to_vec();
    let ix = &f.index_type().name;
    let iv = &spec.index_var;
    let idx = IndexExpr::var(iv);
    let app = |i: &IndexExpr| render_interp_app(&c.name, i, &params);
    let named = spec.style == SignatureStyle::Named;

    let mut lines = vec![format!("{{p : {ix} -> Set}} ->")];
    for case in &spec.cases {
        lines.push(format!("{} ->", case_type(spec, case)));
    }
    let last = lines.pop().expect("some case");
    lines.push(format!("{last} p {iv}"));
    let mut s = format!("{} : {ix} -> {}\n{} {iv} {} =", c.name, sets(params.len()), c.name, params.join(" "));
    let pad = " ".repeat(c.name.len() + params.iter().map(|p| p.len() + 1).sum::<usize>() + iv.len() + 4);
    for (k, l) in lines.iter().enumerate() {
        if k == 0 {
            s.push(' ');
        } else {
            s.push('\n');
            s.push_str(&pad);
        }
        s.push_str(l);
    }

    let cases = spec.case_names().join(" ");
    for ((cname, _), case) in c.ctors.iter().zip(&spec.cases) {
        let mut parts: Vec<String> = param_group(&params).into_iter().collect();
        parts.extend(binder_group(&case.index_vars(), ix, named));
        for a in &case.args {
            parts.push(match &a.kind {
                ArgKind::Raw(r) => f.render_raw(r),
                ArgKind::Recursive(i) => app(i),
            });
        }
        parts.push(app(&case.index));
        let mut lhs = vec![cname.clone()];
        let mut rhs = vec![case.name.clone()];
        if !named {
            lhs.extend(case.index_vars());
            rhs.extend(case.index_vars());
        }
        for a in &case.args {
            lhs.push(a.binder.clone());
            rhs.push(match &a.kind {
                ArgKind::Raw(_) => a.binder.clone(),
                ArgKind::Recursive(_) => format!("({} {cases})", a.binder),
            });
        }
        s.push_str(&format!(
            "\n\n{cname} : {}\n{} = \\ {cases} -> {}",
            parts.join(" -> "),
            lhs.join(" "),
            rhs.join(" ")
        ));
    }

    let mut avoid = params.clone();
    avoid.extend(spec.case_names());
    let b = fresh(&avoid, &["b", "c", "e", "s", "t", "w"], 1).remove(0);
    s.push_str("\n\n");
    s.push_str(&fold_signature(spec, &c.cfold_name, &app(&idx)));
    s.push_str(&format!("\n{} {b} = {b} {cases}", call_prefix(spec, &c.cfold_name, iv)));
    s
}
