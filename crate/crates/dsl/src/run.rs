//! Task execution. Tasks run in parallel; the report keeps document order.

use rayon::prelude::*;

use funcat_core::bifunctor::{ladder, ladder_switched, BiLadder, Tensor};
use funcat_core::functor::{Exponent, FunctorSpec};
use funcat_core::homology::{
    all_homology, comparison_iso, derived_all, diagram_les_components, les_of_ses, Complex, Les,
};
use funcat_core::spectral::{ss_componentwise, GrothendieckSS};
use funcat_core::{grothendieck_ss, AbelianCategory, Diagram, DiagramCat, ModCat, ModMor, Module, Ring};

use crate::eval::{SeqMorValue, SeqValue, TaskEntry, Workbench};
use crate::report::{Report, Table, TaskReport};
use crate::resolve::{TaskSpec, Variable};

#[derive(Clone, Debug)]
pub struct RunOptions {
    /// Run only this task.
    pub task: Option<String>,
    /// Degree used by tasks that do not give `n`.
    pub max_degree: usize,
    /// Seed for `verify` tasks that do not give one.
    pub seed: Option<u64>,
}

impl Default for RunOptions {
    fn default() -> Self {
        RunOptions {
            task: None,
            max_degree: 3,
            seed: None,
        }
    }
}

/// Runs the selected tasks. Fails only if the selected task does not exist.
pub fn run(wb: &Workbench, opts: &RunOptions) -> Result<Report, String> {
    let selected: Vec<&TaskEntry> = match &opts.task {
        None => wb.tasks.iter().collect(),
        Some(name) => {
            let t: Vec<_> = wb.tasks.iter().filter(|t| t.name == *name).collect();
            if t.is_empty() {
                return Err(format!("no task named `{}`", name));
            }
            t
        }
    };
    let tasks = selected.par_iter().map(|t| run_task(wb, t, opts)).collect();
    Ok(Report { tasks })
}

fn run_task(wb: &Workbench, t: &TaskEntry, opts: &RunOptions) -> TaskReport {
    let report = TaskReport::new(&t.name, t.kind.name());
    let degree = |n: Option<usize>| n.unwrap_or(opts.max_degree);
    let res = match &t.spec {
        TaskSpec::Validate => Ok(validate(wb, report)),
        TaskSpec::Homology { maps } => homology(wb, report, maps.iter().map(|m| m.text.as_str()).collect()),
        TaskSpec::Derive { functor, object, n } => wb
            .functor(functor, t.span)
            .map_err(|d| d.message)
            .and_then(|f| derive(wb, report, &f, &object.text, degree(*n))),
        TaskSpec::Les { functor, ses, n } => wb
            .functor(functor, t.span)
            .map_err(|d| d.message)
            .and_then(|f| les(wb, report, &f, &ses.text, degree(*n))),
        TaskSpec::Ladder {
            sesmor,
            map,
            variable,
            n,
        } => bi_ladder(wb, report, &sesmor.text, &map.text, *variable, degree(*n)),
        TaskSpec::Ss { f, g, object, n } => wb
            .functor(f, t.span)
            .and_then(|f| Ok((f, wb.functor(g, t.span)?)))
            .map_err(|d| d.message)
            .and_then(|(f, g)| spectral(wb, report, &f, &g, &object.text, degree(*n))),
        TaskSpec::Verify { suite, cases, seed } => match seed.or(opts.seed) {
            None => Err("verify tasks need a seed (`seed=` or --seed)".into()),
            Some(s) => Ok(verify(report, *suite, cases.unwrap_or(suite.default_cases()), s)),
        },
    };
    match res {
        Ok(r) => r.finish(),
        Err(e) => TaskReport::new(&t.name, t.kind.name()).error(e),
    }
}

type TResult = Result<TaskReport, String>;

fn err(e: funcat_core::Error) -> String {
    e.to_string()
}

pub fn describe_ring(r: &Ring) -> String {
    match r.as_algebra() {
        None => "Z".into(),
        Some(a) if a.dim() == 1 => format!("F{}", a.prime()),
        Some(a) => format!("F{}-algebra of dimension {}", a.prime(), a.dim()),
    }
}

pub fn describe_diagram(d: &Diagram<ModCat>) -> String {
    d.index()
        .objects()
        .iter()
        .zip(d.objects())
        .map(|(l, m)| format!("{}: {}", l, m.describe()))
        .collect::<Vec<_>>()
        .join(", ")
}

fn describe_map<C: AbelianCategory>(cat: &C, f: &C::Mor) -> Result<String, funcat_core::Error> {
    if cat.is_zero(f) {
        return Ok("zero".into());
    }
    Ok(match (cat.is_mono(f)?, cat.is_epi(f)?) {
        (true, true) => "iso",
        (true, false) => "mono",
        (false, true) => "epi",
        (false, false) => "neither mono nor epi",
    }
    .into())
}

fn validate(wb: &Workbench, mut r: TaskReport) -> TaskReport {
    let mut t = Table::new("declarations", &["name", "kind", "value"]);
    for (name, kw) in &wb.order {
        let value = match *kw {
            "ring" => describe_ring(&wb.rings[name]),
            "module" => wb.modules[name].module.describe(),
            "morphism" => {
                let f = &wb.morphisms[name];
                describe_map(&ModCat::new(f.source().ring()), f).unwrap_or_else(err)
            }
            "category" => {
                let c = &wb.categories[name];
                format!("{} objects, {} morphisms", c.num_objects(), c.num_morphisms())
            }
            "diagram" => describe_diagram(&wb.diagrams[name].diagram),
            "diagmor" => {
                let (cat, f) = &wb.diagmors[name];
                describe_map(cat, f).unwrap_or_else(err)
            }
            "functor" => {
                let f = &wb.functors[name];
                format!("{} -> {}", describe_ring(&f.source_ring()), describe_ring(&f.target_ring()))
            }
            "ses" => "exact".into(),
            "sesmor" => "commutes".into(),
            _ => String::new(),
        };
        t.row(vec![name.clone(), kw.to_string(), value]);
    }
    r.tables.push(t);
    r.check("declarations valid", true);
    r
}

fn homology_table<C: AbelianCategory>(
    cat: &C,
    maps: Vec<C::Mor>,
    describe: impl Fn(&C::Obj) -> String,
) -> Result<Table, String> {
    for w in maps.windows(2) {
        if cat.target(&w[0]) != cat.source(&w[1]) {
            return Err("consecutive maps do not compose".into());
        }
    }
    let k = maps.len();
    let mut objects: Vec<C::Obj> = maps.iter().map(|f| cat.source(f)).collect();
    objects.push(cat.target(&maps[k - 1]));
    objects.reverse();
    let diffs: Vec<C::Mor> = maps.into_iter().rev().collect();
    let c = Complex::new(cat, objects, diffs).map_err(err)?;
    let hs = all_homology(cat, &c).map_err(err)?;
    let mut t = Table::new("homology", &["position", "object", "homology"]);
    for pos in 0..=k {
        let j = k - pos;
        t.row(vec![pos.to_string(), describe(c.object(j)), describe(&hs[j].object)]);
    }
    Ok(t)
}

fn homology(wb: &Workbench, mut r: TaskReport, names: Vec<&str>) -> TResult {
    let table = if wb.morphisms.contains_key(names[0]) {
        let maps: Vec<ModMor> = names.iter().map(|n| wb.morphisms[*n].clone()).collect();
        let ring = maps[0].source().ring();
        if maps.iter().any(|f| f.source().ring() != ring) {
            return Err("maps are over different rings".into());
        }
        homology_table(&ModCat::new(ring), maps, Module::describe)?
    } else {
        let cat = wb.diagmors[names[0]].0.clone();
        let mut maps = Vec::new();
        for n in &names {
            let (c, f) = &wb.diagmors[*n];
            if c.index() != cat.index() || c.base().ring() != cat.base().ring() {
                return Err("maps live in different diagram categories".into());
            }
            maps.push(f.clone());
        }
        homology_table(&cat, maps, describe_diagram)?
    };
    r.tables.push(table);
    Ok(r)
}

fn derive(wb: &Workbench, mut r: TaskReport, f: &FunctorSpec, object: &str, n: usize) -> TResult {
    let mut t = Table::new("derived functors", &["n", "value"]);
    if let Some(m) = wb.modules.get(object) {
        for (k, h) in derived_all(f, &m.module, n).map_err(err)?.iter().enumerate() {
            t.row(vec![k.to_string(), h.object.describe()]);
        }
    } else {
        let d = &wb.diagrams[object].diagram;
        for k in 0..=n {
            let c = comparison_iso(f, d, k).map_err(err)?;
            t.row(vec![k.to_string(), describe_diagram(&c.diagram_side)]);
            r.check(format!("comparison iso n={}", k), c.is_iso());
            r.check(format!("comparison natural n={}", k), c.is_natural());
        }
    }
    r.tables.push(t);
    Ok(r)
}

fn les_table<C: AbelianCategory>(title: &str, les: &Les<C>, describe: impl Fn(&C::Obj) -> String) -> Table {
    let mut t = Table::new(title, &["n", "L", "M", "N"]);
    for k in 0..=les.n_max {
        t.row(vec![
            k.to_string(),
            describe(les.object(0, k)),
            describe(les.object(1, k)),
            describe(les.object(2, k)),
        ]);
    }
    t
}

fn les(wb: &Workbench, mut r: TaskReport, f: &FunctorSpec, name: &str, n: usize) -> TResult {
    match &wb.sequences[name] {
        SeqValue::Module(s) => {
            let (les, _) = les_of_ses(f, s, n).map_err(err)?;
            r.tables.push(les_table("long exact sequence", &les, Module::describe));
            let cat = ModCat::new(f.target_ring());
            for (pos, ok) in les.check(&cat).map_err(err)?.positions {
                r.check(format!("exact at {}", pos), ok);
            }
        }
        SeqValue::Diagram(cat, s) => {
            let ef = Exponent::new(f.clone(), cat.index().clone());
            let (les, _) = les_of_ses(&ef, s, n).map_err(err)?;
            r.tables.push(les_table("long exact sequence", &les, describe_diagram));
            let dst: DiagramCat<ModCat> = DiagramCat::with_index(ModCat::new(f.target_ring()), cat.index().clone());
            for (pos, ok) in les.check(&dst).map_err(err)?.positions {
                r.check(format!("exact at {}", pos), ok);
            }
            for (what, ok) in diagram_les_components(&dst, &les).map_err(err)? {
                r.check(what, ok);
            }
        }
    }
    Ok(r)
}

fn bi_ladder(wb: &Workbench, mut r: TaskReport, sesmor: &str, map: &str, variable: Variable, n: usize) -> TResult {
    let SeqMorValue::Module(x) = &wb.seqmors[sesmor] else {
        return Err("ladder tasks take a morphism of module sequences".into());
    };
    let g = &wb.morphisms[map];
    let ring = x.l.source().ring();
    if g.source().ring() != ring {
        return Err("the sequences and the map are over different rings".into());
    }
    let t = Tensor::new(ring).map_err(err)?;
    let lad: BiLadder<ModCat> = match variable {
        Variable::First => ladder(&t, x, g, n),
        Variable::Second => ladder_switched(&t, x, g, n),
    }
    .map_err(err)?;
    r.tables.push(les_table("top row", &lad.top, Module::describe));
    r.tables.push(les_table("bottom row", &lad.bottom, Module::describe));
    r.check("top row exact", lad.result.top.all_exact());
    r.check("bottom row exact", lad.result.bottom.all_exact());
    let total = lad.result.squares.len();
    let good = lad.result.squares.iter().filter(|(_, ok)| *ok).count();
    r.check(format!("squares commute ({}/{})", good, total), good == total);
    if !lad.degreewise_exact.is_empty() {
        r.check("rows exact in each degree", lad.degreewise_exact.iter().all(|b| *b));
    }
    Ok(r)
}

fn grid_table(title: String, grid: &[Vec<usize>], n: usize) -> Table {
    let mut cols = vec!["q".to_string()];
    cols.extend((0..=n).map(|p| format!("p={}", p)));
    let mut t = Table {
        title,
        columns: cols,
        rows: Vec::new(),
    };
    for q in 0..=n {
        let mut row = vec![q.to_string()];
        for p in 0..=n {
            let cell = if p + q <= n {
                grid.get(p).and_then(|c| c.get(q)).map_or("0".into(), |d| d.to_string())
            } else {
                ".".into()
            };
            row.push(cell);
        }
        t.row(row);
    }
    t
}

fn ss_tables(r: &mut TaskReport, prefix: &str, g: &GrothendieckSS) {
    let n = g.n_max();
    let ss = &g.ss;
    r.tables.push(grid_table(format!("{}E2", prefix), ss.e2(), n));
    r.tables.push(grid_table(format!("{}E-infinity", prefix), &ss.e_inf, n));
    let mut ab = Table::new(format!("{}abutment", prefix), &["n", "dim"]);
    for (k, d) in ss.abutment.iter().enumerate() {
        ab.row(vec![k.to_string(), d.to_string()]);
    }
    r.tables.push(ab);
    let mut info = Table::new(format!("{}pages", prefix), &["property", "value"]);
    info.row(vec!["degenerates at E2".into(), if ss.degenerates_at_e2() { "yes" } else { "no" }.into()]);
    info.row(vec!["stable from page".into(), ss.stable_from.to_string()]);
    r.tables.push(info);
    r.check(format!("{}acyclic hypothesis", prefix), g.hypothesis.passed());
    r.check(format!("{}pages consistent", prefix), ss.pages_consistent);
    r.check(format!("{}converges", prefix), ss.converges);
    r.check(format!("{}E2 matches derived functors", prefix), g.e2_matches());
    r.check(format!("{}abutment matches derived functors", prefix), g.abutment_matches());
}

fn spectral(wb: &Workbench, mut r: TaskReport, f: &FunctorSpec, g: &FunctorSpec, object: &str, n: usize) -> TResult {
    if let Some(m) = wb.modules.get(object) {
        let res = grothendieck_ss(f, g, &m.module, n).map_err(err)?;
        ss_tables(&mut r, "", &res);
    } else {
        let d = &wb.diagrams[object].diagram;
        let res = ss_componentwise(f, g, d, n).map_err(err)?;
        for (label, comp) in res.index.objects().iter().zip(&res.components) {
            ss_tables(&mut r, &format!("{}: ", label), comp);
        }
        for nat in &res.naturality {
            let m = &nat.morphism;
            r.check(format!("{}: map of double complexes", m), nat.chain_map);
            r.check(format!("{}: E2 squares commute", m), nat.e2_squares);
            r.check(format!("{}: E2 maps match derived functors", m), nat.e2_ranks);
            r.check(format!("{}: abutment maps match derived functors", m), nat.abutment_ranks);
            r.check(format!("{}: filtration preserved", m), nat.filtration);
        }
    }
    Ok(r)
}

fn verify(mut r: TaskReport, suite: funcat_core::Suite, cases: usize, seed: u64) -> TaskReport {
    let rep = suite.run(seed, cases);
    let mut t = Table::new("result", &["suite", "seed", "cases", "result"]);
    t.row(vec![
        suite.name().into(),
        seed.to_string(),
        rep.cases.to_string(),
        format!("{}/{} pass", rep.passed, rep.cases),
    ]);
    r.tables.push(t);
    if !rep.tallies.is_empty() {
        let mut t = Table::new("outcomes", &["outcome", "count"]);
        for (k, v) in &rep.tallies {
            t.row(vec![k.clone(), v.to_string()]);
        }
        r.tables.push(t);
    }
    if !rep.failures.is_empty() {
        let mut t = Table::new("failures", &["case", "reason"]);
        for (k, why) in rep.failures.iter().take(10) {
            t.row(vec![k.to_string(), why.clone()]);
        }
        r.tables.push(t);
    }
    r.check("all cases pass", rep.ok());
    r
}

/// A report for a single suite run outside any document task.
pub fn verify_suite(suite: funcat_core::Suite, cases: usize, seed: u64) -> Report {
    let r = verify(TaskReport::new(suite.name(), "verify"), suite, cases, seed).finish();
    Report { tasks: vec![r] }
}
