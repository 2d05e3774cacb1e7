//! One line per acceptance criterion. Exits non-zero on any unexpected
//! failure, and also when a known failure starts passing.

use std::path::Path;
use std::time::Instant;

use pmvroot::cli::run_command;
use pmvroot::grid::group_grid;
use pmvroot::ideals::{enumerate_ideals, is_maximal, is_normal, is_prime, is_representable, quotient_algebra};
use pmvroot::search::counterexample_search;
use pmvroot::spec::parse_spec;
use pmvroot::sqrt::{
    candidate_sqrt, classify, closed_form_sqrt, find_sqrt, hperfect_sqrt, hroot0_exact, hroot0_membership, is_strict,
    r_orbit, reconstruct_sqrt, replay_suite, run_property_suite, same_on, verify_sqrt, HalfMap, Kind, SqrtForm,
    SqrtSearch, SqrtWitness,
};
use pmvroot::{q, Algebra, Budget, Element, Evidence, GroupDescriptor, GroupElement, Rational, Status};

type Outcome = Vec<String>;

/// Failures that are expected, by criterion, with the reason printed.
const KNOWN: &[(usize, &[&str], &str)] = &[
    (
        4,
        &["EQ85 on Γ(ℚ⁴ cocycle,(1,0,0,0))"],
        "r(x)⊙r(y) ≤ r(x⊙y) fails on the cocycle algebra; the closed form needs u/2 to commute past x and y",
    ),
    (
        5,
        &["P32-8 on Γ(ℚ⁴ cocycle,(1,0,0,0))", "P32-10 on Γ(ℚ⁴ cocycle,(1,0,0,0))"],
        "the arrow bounds and r(x⊙y) ≤ (r(x)⊙r(y))∨r(0) fail on the cocycle algebra",
    ),
];

fn spec(name: &str) -> Algebra {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("specs").join(format!("{name}.spec"));
    parse_spec(&std::fs::read_to_string(&path).unwrap()).unwrap().into_algebra()
}

fn g(v: Vec<Rational>) -> Element {
    Element::Group(GroupElement::new(v))
}

fn root(m: &Algebra, budget: &Budget) -> Option<SqrtWitness> {
    find_sqrt(m, budget).ok()?.into_root()
}

fn expect(out: &mut Outcome, ok: bool, what: impl FnOnce() -> String) {
    if !ok {
        out.push(what());
    }
}

fn finite_family() -> Vec<Algebra> {
    let mut base: Vec<Algebra> = (0..=8).map(Algebra::mv_chain).collect();
    base.extend((1..=3).map(Algebra::boolean));
    let mut all = base.clone();
    for i in 0..base.len() {
        for j in i..base.len() {
            all.push(Algebra::product(vec![base[i].clone(), base[j].clone()]));
        }
    }
    all
}

fn infinite_family() -> Vec<Algebra> {
    vec![spec("ratchain"), spec("cocycle"), spec("lexpair")]
}

fn axioms(budget: &Budget) -> Outcome {
    let mut out = Vec::new();
    for m in finite_family() {
        let rep = m.check_axioms(budget);
        expect(&mut out, rep.status == Status::Pass, || format!("{m}: {rep}"));
    }
    for m in infinite_family() {
        let rep = m.check_axioms(budget);
        expect(&mut out, rep.status == Status::SampledPass && rep.points >= 512, || format!("{m}: {rep}"));
    }
    out
}

fn chains(budget: &Budget) -> Outcome {
    let mut out = Vec::new();
    for n in 0..=8u64 {
        let m = Algebra::mv_chain(n);
        match candidate_sqrt(&m, budget).unwrap() {
            SqrtSearch::Root(w) => expect(&mut out, n <= 1 && *w.form() == SqrtForm::Identity, || format!("{m} has {w}")),
            SqrtSearch::NoRoot(no) => {
                let sq1 = no.report.as_ref().and_then(|r| r.counterexample.as_ref()).is_some_and(|c| c.check == "Sq1");
                expect(&mut out, n >= 2 && sq1, || format!("{m}: {}", no.reason));
            }
        }
    }
    out
}

fn closed_form(budget: &Budget) -> Outcome {
    let mut out = Vec::new();
    let halves = [g(vec![q(1, 2)]), g(vec![q(1, 2), q(0, 1), q(0, 1), q(0, 1)])];
    for (m, half) in [spec("ratchain"), spec("cocycle")].iter().zip(halves) {
        let w = closed_form_sqrt(m, budget).unwrap();
        let rep = verify_sqrt(m, &w, budget, false).unwrap();
        expect(&mut out, rep.passed(), || format!("{m}: {rep}"));
        expect(&mut out, w.apply(m, &m.zero()).unwrap() == half, || format!("{m}: r(0) ≠ {half}"));
        expect(&mut out, is_strict(m, &w).unwrap(), || format!("{m}: not strict"));
    }
    out
}

fn cocycle_regression(budget: &Budget) -> Outcome {
    let mut out = Vec::new();
    let d = GroupDescriptor::CocycleQ4;
    let grid = group_grid(&d, 512, budget.seed);
    let noncommuting =
        grid.iter().take(32).any(|x| grid.iter().take(32).any(|y| d.add(x, y).unwrap() != d.add(y, x).unwrap()));
    expect(&mut out, noncommuting, || "no non-commuting pair on the grid".into());
    let halving = grid.iter().all(|x| d.halve(x).unwrap().is_some_and(|h| d.add(&h, &h).unwrap() == *x));
    expect(&mut out, grid.len() == 512 && halving, || "halving is not total with h+h = x".into());
    let half_u = d.halve(&GroupElement::from_ints(&[1, 0, 0, 0])).unwrap().unwrap();
    let central = d.is_central(&half_u).unwrap();
    expect(&mut out, central.holds && central.evidence == Evidence::ClosedForm, || format!("u/2 central: {central}"));
    let m = spec("cocycle");
    let w = root(&m, budget).unwrap();
    let rep = run_property_suite("EQ85", &m, Some(&w), budget).unwrap();
    if !rep.passed() {
        let ce = rep.counterexample.as_ref().unwrap();
        let replays = replay_suite("EQ85", &m, &w, budget, ce).unwrap() == Some(true);
        expect(&mut out, replays, || "EQ85 counterexample does not replay".into());
        out.push(format!("EQ85 on {m}"));
    }
    out
}

fn suites(budget: &Budget) -> Outcome {
    let mut names: Vec<String> = (1..=11).map(|i| format!("P32-{i}")).collect();
    names.extend(["P71-viii", "NS1", "POW", "L861"].map(String::from));
    let mut algebras: Vec<Algebra> = vec![
        Algebra::mv_chain(0),
        Algebra::mv_chain(1),
        Algebra::boolean(2),
        Algebra::boolean(3),
        Algebra::product(vec![Algebra::mv_chain(1), Algebra::boolean(2)]),
    ];
    algebras.extend(infinite_family());
    let mut out = Vec::new();
    for m in &algebras {
        let w = root(m, budget).unwrap();
        for name in &names {
            let rep = run_property_suite(name, m, Some(&w), budget).unwrap();
            let want = if m.is_finite() { Status::Pass } else { Status::SampledPass };
            if rep.status == want {
                continue;
            }
            let replays = rep
                .counterexample
                .as_ref()
                .is_some_and(|ce| replay_suite(name, m, &w, budget, ce).unwrap() == Some(true));
            if !replays {
                out.push(format!("{name} on {m}: counterexample does not replay"));
            }
            out.push(format!("{name} on {m}"));
        }
    }
    out
}

fn mixed(budget: &Budget) -> Outcome {
    let mut out = Vec::new();
    let m = spec("mixed-product");
    let w = root(&m, budget).unwrap();
    let c = classify(&m, &w, budget).unwrap();
    let v = Element::Tuple(vec![g(vec![q(1, 1)]), g(vec![q(0, 1)])]);
    expect(&mut out, c.kind == Kind::Mixed && c.v == v && c.w == v, || format!("{}", c.summary(&m)));
    if let Some(p) = &c.boolean_part {
        let pts = p.algebra.domain(budget).points;
        let all_boolean = pts.iter().all(|x| p.algebra.is_boolean(x).unwrap());
        expect(&mut out, all_boolean, || "[0,v] has a non-Boolean element".into());
    } else {
        out.push("no Boolean part".into());
    }
    match &c.strict_part {
        Some(p) => expect(&mut out, is_strict(&p.algebra, &p.root).unwrap(), || "[0,v⁻] is not strict".into()),
        None => out.push("no strict part".into()),
    }
    let Algebra::Product(fs) = &m else { unreachable!() };
    let u_minus_w: Vec<Element> = fs.iter().zip(m.one().tuple().unwrap().iter().zip(v.tuple().unwrap())).map(|(f, (u, w))| {
        let Algebra::Gamma(gr) = f else { unreachable!() };
        let d = gr.descriptor();
        let diff = d.add(u.group().unwrap(), &d.neg(w.group().unwrap()).unwrap()).unwrap();
        Element::Group(d.halve(&diff).unwrap().unwrap_or(diff))
    }).collect();
    let r0 = w.apply(&m, &m.zero()).unwrap();
    let want = Element::Tuple(vec![g(vec![q(0, 1)]), g(vec![q(1, 2)])]);
    expect(&mut out, r0 == want && Element::Tuple(u_minus_w) == want, || format!("r(0) = {r0}"));
    out
}

fn round_trip(budget: &Budget) -> Outcome {
    let mut out = Vec::new();
    for name in ["boolean2", "ratchain", "cocycle", "lexpair", "mixed-product", "five-factor"] {
        let m = spec(name);
        let w = root(&m, budget).unwrap();
        let b = m.minus(&w.apply(&m, &m.zero()).unwrap());
        match reconstruct_sqrt(&m, &b, HalfMap::FromRoot(Box::new(w.clone())), budget) {
            Ok(rebuilt) => {
                let diff = same_on(&m, &w, &rebuilt, budget).unwrap();
                expect(&mut out, diff.is_none(), || format!("{name}: differs at {}", diff.unwrap()));
            }
            Err(e) => out.push(format!("{name}: {e}")),
        }
    }
    let m = spec("chain4");
    let b = Element::Group(GroupElement::from_ints(&[3]));
    match reconstruct_sqrt(&m, &b, HalfMap::Search, budget) {
        Ok(_) => out.push("Γ(ℤ,4) reconstruction accepted".into()),
        Err(e) => expect(&mut out, !e.condition.is_empty() && !e.witness.is_empty(), || format!("{e}")),
    }
    out
}

fn orbits(budget: &Budget) -> Outcome {
    let mut out = Vec::new();
    for (name, dims) in [("ratchain", 1), ("lexpair", 2)] {
        let m = spec(name);
        let w = root(&m, budget).unwrap();
        let orbit = r_orbit(&m, &w, 10).unwrap();
        let want: Vec<Element> = (1..=10)
            .map(|k| {
                let p = 1i64 << k;
                let mut c = vec![q(p - 1, p)];
                c.resize(dims, q(0, 1));
                g(c)
            })
            .collect();
        expect(&mut out, orbit == want, || format!("{name}: orbit {orbit:?}"));
    }
    out
}

fn hperfect(budget: &Budget) -> Outcome {
    let mut out = Vec::new();
    let m = spec("lexpair");
    let w = hperfect_sqrt(&m, budget).unwrap();
    let at = |x: Element| w.apply(&m, &x).unwrap();
    expect(&mut out, at(g(vec![q(0, 1), q(0, 1)])) == g(vec![q(1, 2), q(0, 1)]), || "r((0,0)) ≠ (1/2,0)".into());
    let gd = GroupDescriptor::rat(1, pmvroot::OrderKind::Lex);
    for y in group_grid(&gd, budget.points, budget.seed) {
        let gy = y.coords()[0].clone();
        let got = at(g(vec![q(1, 2), gy.clone()]));
        let want = g(vec![q(3, 4), gy.half()]);
        expect(&mut out, got == want, || format!("r((1/2,{gy})) = {got}"));
    }
    let sample = Budget { points: 256, pair_points: 256, ..*budget }.depth(8);
    for x in m.domain(&sample).points.iter().take(256) {
        let a = hroot0_membership(&m, &w, x, 8).unwrap();
        let b = hroot0_exact(&m, x).unwrap();
        expect(&mut out, a == b, || format!("H-root0 disagrees at {x}"));
    }
    out
}

fn ideals(_: &Budget) -> Outcome {
    let mut out = Vec::new();
    let m = Algebra::product(vec![Algebra::mv_chain(1), Algebra::mv_chain(1)]);
    let all = enumerate_ideals(&m, 16, None).unwrap();
    let count = |f: &dyn Fn(&[Element]) -> bool| all.iter().filter(|i| f(i.members())).count();
    let primes = count(&|s| is_prime(&m, s).unwrap());
    let maximal = count(&|s| is_maximal(&m, s).unwrap());
    let normal = count(&|s| is_normal(&m, s).unwrap());
    expect(&mut out, (all.len(), primes, maximal, normal) == (4, 2, 2, 4), || {
        format!("{} ideals, {primes} prime, {maximal} maximal, {normal} normal", all.len())
    });
    let z = |n: i64| Element::Group(GroupElement::from_ints(&[n]));
    let ideal = [Element::Tuple(vec![z(0), z(0)]), Element::Tuple(vec![z(0), z(1)])];
    let quo = quotient_algebra(&m, &ideal).unwrap();
    let els = quo.elements().unwrap();
    let boolean = els.len() == 2 && els.iter().all(|x| quo.is_boolean(x).unwrap());
    expect(&mut out, boolean, || format!("quotient has {} elements", els.len()));
    for name in ["chain4", "boolean2"] {
        expect(&mut out, is_representable(&spec(name)).unwrap(), || format!("{name} is not representable"));
    }
    out
}

fn search(_: &Budget) -> Outcome {
    let mut out = Vec::new();
    let first = counterexample_search("Sq1-solvability", 5).unwrap();
    let second = counterexample_search("Sq1-solvability", 5).unwrap();
    expect(&mut out, first.is_some() && first == second, || "search is not repeatable".into());
    if let Some(v) = &first {
        expect(&mut out, v.description == "Γ(ℤ,4)", || format!("found {}", v.description));
    }
    let runs: Vec<_> = ["0", "1", "12345"]
        .iter()
        .map(|s| run_command(&["counterexample", "--property", "Sq1-solvability", "--max-size", "5", "--seed", s]))
        .collect();
    let same = runs.iter().all(|r| r == &runs[0] && r.code == 1);
    expect(&mut out, same, || "CLI output depends on the seed".into());
    out
}

fn main() {
    let budget = Budget::default();
    let criteria: [(&str, fn(&Budget) -> Outcome); 11] = [
        ("axioms on finite chains, cubes, products and sampled carriers", axioms),
        ("square-root decision on Γ(ℤ,n), n ≤ 8", chains),
        ("closed form (x+u)/2 on Γ(ℚ,1) and the cocycle algebra", closed_form),
        ("cocycle regression: non-commutativity, halving, central u/2, EQ85", cocycle_regression),
        ("P32-1..11, P71-viii, NS1, POW, L861 suites", suites),
        ("mixed classification of Γ(ℤ,1)×Γ(ℚ,1)", mixed),
        ("reconstruction round trip and Γ(ℤ,4) rejection", round_trip),
        ("orbit law on Γ(ℚ,1) and Γ(ℚ lex ℚ,(1,0))", orbits),
        ("H-perfect root and H-root0 membership", hperfect),
        ("ideals of Γ(ℤ,1)×Γ(ℤ,1), quotient, representability", ideals),
        ("counterexample search determinism", search),
    ];
    let start = Instant::now();
    let mut unexpected = 0;
    for (i, (title, run)) in criteria.iter().enumerate() {
        let n = i + 1;
        let t = Instant::now();
        let fails = run(&budget);
        let secs = t.elapsed().as_secs_f64();
        let known = KNOWN.iter().find(|k| k.0 == n);
        if fails.is_empty() {
            println!("criterion {n:>2}: PASS  {title} ({secs:.1}s)");
            if known.is_some() {
                println!("             a known failure no longer occurs");
                unexpected += 1;
            }
            continue;
        }
        println!("criterion {n:>2}: FAIL  {title} ({secs:.1}s)");
        for f in &fails {
            println!("             {f}");
        }
        match known {
            Some((_, expected, why)) if fails.iter().map(String::as_str).eq(expected.iter().copied()) => {
                println!("             known: {why}");
            }
            _ => unexpected += 1,
        }
    }
    println!("total {:.1}s", start.elapsed().as_secs_f64());
    if unexpected > 0 {
        std::process::exit(1);
    }
}
