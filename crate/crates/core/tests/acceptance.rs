//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any criterion fails.
//!
//! Run with `cargo test --test acceptance`.

mod common;

use std::cmp::Ordering;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::Command;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::*;
use wuritt::charset::{
    characteristic_set, initial_product, is_characteristic_set, prove_geometric, well_ordering_split, zero_decompose,
    DecomposeOptions, Limits,
};
use wuritt::coeff::{Coeff, Field};
use wuritt::error::Error;
use wuritt::io::parse_system_with_field;
use wuritt::poly::{Polynomial, RankKey, VarOrder};
use wuritt::pseudo::{check_identity, check_set_identity, pseudo_divide, set_pseudo_divide, set_remainder};
use wuritt::triset::{basic_set, normalize_primitive, TriangularSet};
use wuritt::zeroset::{PointSet, ZeroOracle};

const QQ: Field = Field::Rationals;
const SEED: u64 = 0x5eed_2024;

const PREM_PAIRS: usize = 1000;
const SETPREM_CASES: usize = 500;
const BASIC_SET_LISTS: usize = 200;
const DESCENT_CASES: usize = 200;
const MIN_CORPUS: usize = 20;
const MIN_PROVE_CORPUS: usize = 3;

/// Wall-clock budgets. Zero tolerance applies to every algebraic check.
const BUDGET_PREM: Duration = Duration::from_secs(10);
const BUDGET_SETPREM: Duration = Duration::from_secs(10);
const BUDGET_BASIC_SET: Duration = Duration::from_secs(30);
const BUDGET_DESCENT: Duration = Duration::from_secs(10);
const BUDGET_CHARSET: Duration = Duration::from_secs(60);
const BUDGET_EQ1: Duration = Duration::from_secs(60);
const BUDGET_EQ2: Duration = Duration::from_secs(120);

type Outcome = Result<String, String>;
type Criterion = (&'static str, Option<Duration>, fn() -> Outcome);
type RunOutput = (Option<i32>, Vec<u8>, Vec<u8>);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn ok<T>(r: wuritt::Result<T>, ctx: &str) -> Result<T, String> {
    r.map_err(|e| format!("{ctx}: {e}"))
}

fn main() {
    let criteria: Vec<Criterion> = vec![
        ("pseudo-division certificates", Some(BUDGET_PREM), c1_pseudo_division),
        ("set pseudo-division certificates", Some(BUDGET_SETPREM), c2_set_pseudo_division),
        ("rank and initial example", None, c3_rank_example),
        ("basic-set minimality", Some(BUDGET_BASIC_SET), c4_basic_set_minimality),
        ("basic-set descent", Some(BUDGET_DESCENT), c5_descent),
        ("characteristic-set contract", Some(BUDGET_CHARSET), c6_charset_contract),
        ("well-ordering split", Some(BUDGET_EQ1), c7_well_ordering),
        ("zero decomposition", Some(BUDGET_EQ2), c8_zero_decomposition),
        ("degenerate inputs", None, c9_degenerate),
        ("CLI determinism", None, c10_determinism),
        ("geometric proofs", None, c11_geometry),
    ];
    let mut failures = 0;
    for (i, (name, budget, f)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let outcome = match catch_unwind(AssertUnwindSafe(f)) {
            Ok(r) => r,
            Err(p) => Err(format!(
                "panicked: {}",
                p.downcast_ref::<String>()
                    .cloned()
                    .or(p.downcast_ref::<&str>().map(|s| s.to_string()))
                    .unwrap_or_default()
            )),
        };
        let elapsed = start.elapsed();
        let outcome = match (outcome, budget) {
            (Ok(_), Some(b)) if elapsed > b => Err(format!("took {elapsed:.2?}, budget {b:?}")),
            (o, _) => o,
        };
        match outcome {
            Ok(detail) => println!("criterion {:>2} {name}: PASS ({detail}; {elapsed:.2?})", i + 1),
            Err(why) => {
                failures += 1;
                println!("criterion {:>2} {name}: FAIL ({why}; {elapsed:.2?})", i + 1);
            }
        }
    }
    if failures > 0 {
        println!("{failures} criterion/criteria failed");
        std::process::exit(1);
    }
}

fn c1_pseudo_division() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let fields = [QQ, gf(5)];
    for case in 0..PREM_PAIRS {
        let field = fields[case % 2];
        let o = order(rng.gen_range(1..=3));
        let g = random_poly(&mut rng, field, &o, 4, 6);
        let f = random_nonzero(&mut rng, field, &o, 3, 6);
        let res = ok(pseudo_divide(&g, &f), "pseudo_divide")?;
        let ctx = || format!("case {case}: g = {g}, f = {f}");
        ensure(prem_identity_holds(&g, &f, &res), || format!("{}: identity fails", ctx()))?;
        ensure(check_identity(&g, &f, &res), || format!("{}: library identity check disagrees", ctx()))?;
        ensure(naive_reduced(&res.remainder, &f) || f.is_nonzero_constant() && res.remainder.is_zero(), || {
            format!("{}: remainder {} not reduced", ctx(), res.remainder)
        })?;
        let bound = match naive_rank(&f) {
            (Some(m), d) => (Naive::from_poly(&g).degree_in(m) as i64 - d as i64 + 1).max(0),
            (None, _) => 0,
        };
        ensure(res.exponent as i64 <= bound, || format!("{}: exponent {} above bound {bound}", ctx(), res.exponent))?;
    }
    Ok(format!("{PREM_PAIRS} pairs over QQ and GF 5"))
}

/// Random polynomial whose main variable is exactly `v`.
fn random_with_main_var(rng: &mut ChaCha8Rng, field: Field, o: &VarOrder, v: usize) -> Polynomial {
    let sub = VarOrder::new(o.names()[..=v].iter().map(String::as_str)).unwrap();
    loop {
        let body = random_poly(rng, field, &sub, 3, 3);
        let lead_deg = rng.gen_range(1..=3);
        let init = random_nonzero(rng, field, &sub, 2, 2);
        let terms = body.terms().chain(init.terms()).enumerate().map(|(i, (m, c))| {
            let mut e = m.exponents().to_vec();
            if i >= body.num_terms() {
                e[v] = lead_deg + 1;
            }
            e.resize(o.len(), 0);
            (e, c.clone())
        });
        let p = Polynomial::from_terms(field, o, terms.collect::<Vec<_>>()).unwrap();
        if p.main_variable() == Some(v) {
            return p;
        }
    }
}

fn c2_set_pseudo_division() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 2);
    let fields = [QQ, gf(5)];
    for case in 0..SETPREM_CASES {
        let field = fields[case % 2];
        let o = order(rng.gen_range(1..=3));
        let vars: Vec<usize> = (0..o.len()).filter(|_| rng.gen_bool(0.7)).collect();
        let members: Vec<_> = vars.iter().map(|&v| random_with_main_var(&mut rng, field, &o, v)).collect();
        let set = ok(TriangularSet::new(members), "triangular set")?;
        let g = random_poly(&mut rng, field, &o, 4, 4);
        let res = ok(set_pseudo_divide(&g, &set), "set_pseudo_divide")?;
        let ctx = || format!("case {case}: g = {g}, set = {set}");
        ensure(set_identity_holds(&g, &set, &res), || format!("{}: identity fails", ctx()))?;
        ensure(check_set_identity(&g, &set, &res), || format!("{}: library identity check disagrees", ctx()))?;
        ensure(set.members().iter().all(|s| naive_reduced(&res.remainder, s)), || {
            format!("{}: remainder {} not reduced", ctx(), res.remainder)
        })?;
    }
    Ok(format!("{SETPREM_CASES} cases, up to 3 members"))
}

fn c3_rank_example() -> Outcome {
    let o = order(2);
    let p = poly("5*x*y^2 + x^3*y", QQ, &o);
    let q = poly("y^2 + x^2*y", QQ, &o);
    let r = poly("x^5", QQ, &o);
    ensure(ok(r.rank_cmp(&p), "rank")? == Ordering::Less, || "r is not below p".into())?;
    ensure(ok(p.rank_cmp(&q), "rank")? == Ordering::Equal, || "p and q differ in rank".into())?;
    ensure(p.initial() == poly("5*x", QQ, &o), || format!("initial of p is {}", p.initial()))?;
    ensure(q.initial() == poly("1", QQ, &o), || format!("initial of q is {}", q.initial()))?;
    ensure(r.initial() == poly("1", QQ, &o), || format!("initial of r is {}", r.initial()))?;
    ensure(naive_rank(&r) < naive_rank(&p) && naive_rank(&p) == naive_rank(&q), || "naive ranks disagree".into())?;
    Ok("r below p, p equivalent to q, initials 5x, 1, 1".into())
}

/// `a` is a nonzero constant multiple of `b`.
fn scalar_multiple(a: &Polynomial, b: &Polynomial) -> bool {
    let (Some(ca), Some(cb)) = (a.leading_coeff(), b.leading_coeff()) else {
        return a.is_zero() && b.is_zero();
    };
    let ratio = ca.checked_mul(&cb.inv().unwrap()).unwrap();
    Naive::from_poly(&b.scale(&ratio)).same_as(&Naive::from_poly(a))
}

fn c4_basic_set_minimality() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 4);
    let field = gf(5);
    for case in 0..BASIC_SET_LISTS {
        let o = order(rng.gen_range(1..=3));
        let n = rng.gen_range(1..=6);
        let mut ps: Vec<_> = (0..n).map(|_| random_poly(&mut rng, field, &o, 3, 3)).collect();
        if ps.iter().all(Polynomial::is_zero) {
            ps[0] = random_nonzero(&mut rng, field, &o, 3, 3);
        }
        let bs = ok(basic_set(&ps), "basic_set")?;
        let listing = || ps.iter().map(|p| p.to_string()).collect::<Vec<_>>().join("; ");
        ensure(naive_is_ascending(bs.members()), || format!("case {case}: {bs} not ascending"))?;
        ensure(bs.members().iter().all(|m| ps.iter().any(|p| scalar_multiple(m, p))), || {
            format!("case {case}: {bs} not drawn from [{}]", listing())
        })?;
        let got: Vec<_> = bs.members().iter().map(naive_rank).collect();
        let nonzero: Vec<_> = ps.iter().filter(|p| !p.is_zero()).cloned().collect();
        for mask in 1u32..(1 << nonzero.len()) {
            let mut sub: Vec<_> =
                (0..nonzero.len()).filter(|i| mask & (1 << i) != 0).map(|i| nonzero[i].clone()).collect();
            sub.sort_by_key(naive_rank);
            if !naive_is_ascending(&sub) {
                continue;
            }
            let ranks: Vec<_> = sub.iter().map(naive_rank).collect();
            ensure(naive_sequence_cmp(&got, &ranks) != Ordering::Greater, || {
                format!("case {case}: {bs} beaten by ascending subset of [{}]", listing())
            })?;
        }
    }
    Ok(format!("{BASIC_SET_LISTS} lists over GF 5, exhaustive subsets"))
}

fn c5_descent() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 5);
    let fields = [gf(5), gf(7), QQ];
    let mut done = 0;
    let mut case = 0;
    while done < DESCENT_CASES {
        case += 1;
        let field = fields[case % 3];
        let o = order(rng.gen_range(1..=3));
        let list: Vec<_> = (0..rng.gen_range(1..=4)).map(|_| random_nonzero(&mut rng, field, &o, 3, 3)).collect();
        let bs = ok(basic_set(&list), "basic_set")?;
        let g = random_nonzero(&mut rng, field, &o, 3, 3);
        let r = ok(set_remainder(&g, &bs), "set_remainder")?;
        if r.is_zero() {
            continue;
        }
        ensure(bs.members().iter().all(|m| naive_reduced(&r, m)), || format!("case {case}: {r} not reduced"))?;
        let mut extended = list.clone();
        extended.push(r.clone());
        let bs2 = ok(basic_set(&extended), "basic_set")?;
        let a: Vec<_> = bs.members().iter().map(naive_rank).collect();
        let b: Vec<_> = bs2.members().iter().map(naive_rank).collect();
        ensure(naive_sequence_cmp(&b, &a) == Ordering::Less, || {
            format!("case {case}: {bs2} does not descend from {bs} after adding {r}")
        })?;
        ensure(ok(bs2.tri_compare(&bs), "tri_compare")? == Ordering::Less, || {
            format!("case {case}: library comparison disagrees")
        })?;
        done += 1;
    }
    Ok(format!("{DESCENT_CASES} strict descents over GF 5, GF 7, QQ"))
}

fn oracle_for(sys: &wuritt::io::SystemFile) -> Result<ZeroOracle, String> {
    ok(ZeroOracle::new(sys.field, &sys.order), "oracle")
}

fn no_disagreements(oracle: &ZeroOracle, ps: &[Polynomial], name: &str) -> Result<(), String> {
    let n = ok(oracle.evaluator_disagreements(ps), "evaluator")?;
    ensure(n == 0, || format!("{name}: evaluators disagree at {n} point(s)"))
}

fn corpus() -> Result<Vec<(String, std::path::PathBuf, wuritt::io::SystemFile)>, String> {
    let c = systems();
    ensure(c.len() >= MIN_CORPUS, || format!("corpus has {} systems, need {MIN_CORPUS}", c.len()))?;
    ensure(c.iter().all(|(_, _, s)| !s.field.is_rational() && s.order.len() <= 3), || {
        "corpus must be over prime fields with at most 3 variables".into()
    })?;
    Ok(c)
}

fn c6_charset_contract() -> Outcome {
    let corpus = corpus()?;
    let mut checked = 0;
    for (name, _, sys) in &corpus {
        let (cs, trace) = ok(characteristic_set(&sys.polys, &Limits::default()), name)?;
        for p in &sys.polys {
            let res = ok(set_pseudo_divide(p, &cs), name)?;
            ensure(res.remainder.is_zero() && set_identity_holds(p, &cs, &res), || {
                format!("{name}: {p} has remainder {} against {cs}", res.remainder)
            })?;
        }
        let oracle = oracle_for(sys)?;
        let zp = ok(oracle.vanishing_set(&sys.polys), name)?;
        let zc = ok(oracle.vanishing_set(cs.members()), name)?;
        ensure(zp.is_subset(&zc), || {
            format!("{name}: zero {:?} of the system missing from CS", zp.first_difference(&zc))
        })?;
        let verdict = ok(is_characteristic_set(&cs, &sys.polys, Some(&oracle)), name)?;
        ensure(verdict.holds(), || format!("{name}: library verdict {verdict:?}"))?;
        for w in trace.iterations.windows(2) {
            let a: Vec<_> = w[0].basic_set.members().iter().map(naive_rank).collect();
            let b: Vec<_> = w[1].basic_set.members().iter().map(naive_rank).collect();
            ensure(naive_sequence_cmp(&b, &a) == Ordering::Less, || format!("{name}: trace does not descend"))?;
        }
        let mut all = sys.polys.clone();
        all.extend(cs.members().iter().cloned());
        no_disagreements(&oracle, &all, name)?;
        checked += 1;
    }
    Ok(format!("{checked} systems"))
}

fn c7_well_ordering() -> Outcome {
    let corpus = corpus()?;
    for (name, _, sys) in &corpus {
        let (cs, _) = ok(characteristic_set(&sys.polys, &Limits::default()), name)?;
        let oracle = oracle_for(sys)?;
        let check = ok(oracle.check_well_ordering(&sys.polys, &cs), name)?;
        ensure(check.holds, || format!("{name}: fails at {:?}", check.counterexample))?;

        // Rebuild the right-hand side from the split, one branch at a time.
        let split = ok(well_ordering_split(&sys.polys, &cs, false), name)?;
        let ip = initial_product(&cs, sys.field, &sys.order);
        let mut rhs = ok(oracle.quasi_vanishing_set(&cs, &ip), name)?;
        for b in &split.branches {
            rhs = rhs.union(&ok(oracle.vanishing_set(&b.system), name)?);
            no_disagreements(&oracle, &b.system, name)?;
        }
        let lhs = ok(oracle.vanishing_set(&sys.polys), name)?;
        ensure(lhs == rhs, || {
            format!("{name}: sides differ at {:?}", lhs.first_difference(&rhs).or(rhs.first_difference(&lhs)))
        })?;
    }
    Ok(format!("{} systems, exact point-set equality", corpus.len()))
}

fn components_union(
    oracle: &ZeroOracle,
    zd: &wuritt::charset::ZeroDecomposition,
    name: &str,
) -> Result<PointSet, String> {
    let mut acc = PointSet::default();
    for c in &zd.components {
        acc = acc.union(&ok(oracle.quasi_vanishing_set(&c.triangular_set, &c.initial_product), name)?);
    }
    Ok(acc)
}

fn c8_zero_decomposition() -> Outcome {
    let corpus = corpus()?;
    let mut components = 0;
    for (name, _, sys) in &corpus {
        let oracle = oracle_for(sys)?;
        let lhs = ok(oracle.vanishing_set(&sys.polys), name)?;
        let mut unions = Vec::new();
        for prune in [true, false] {
            let opts = DecomposeOptions { prune, limits: Limits::default() };
            let zd = ok(zero_decompose(&sys.polys, &opts), name)?;
            let check = ok(oracle.check_decomposition(&sys.polys, &zd), name)?;
            ensure(check.holds, || format!("{name} (prune {prune}): fails at {:?}", check.counterexample))?;
            let rhs = components_union(&oracle, &zd, name)?;
            ensure(rhs == lhs, || format!("{name} (prune {prune}): recomputed union differs"))?;
            for c in &zd.components {
                for p in &sys.polys {
                    let r = ok(set_remainder(p, &c.triangular_set), name)?;
                    ensure(r.is_zero(), || format!("{name}: {p} leaves {r} against {}", c.triangular_set))?;
                }
                no_disagreements(&oracle, c.triangular_set.members(), name)?;
            }
            if prune {
                components += zd.components.len();
            }
            unions.push(rhs);
        }
        ensure(unions[0] == unions[1], || format!("{name}: pruned and unpruned point sets differ"))?;
    }
    Ok(format!("{} systems, {components} pruned components", corpus.len()))
}

fn c9_degenerate() -> Outcome {
    let o = order(2);
    let f5 = gf(5);
    let zero = Polynomial::zero(QQ, &o);
    let three = poly("3", QQ, &o);
    let g = poly("x^2*y + 3*x - 1", QQ, &o);
    let x = poly("x", QQ, &o);
    let mut checks = 0;
    let mut check = |cond: bool, what: &str| -> Result<(), String> {
        checks += 1;
        ensure(cond, || what.to_string())
    };

    let r = ok(pseudo_divide(&g, &zero), "divide by 0")?;
    check(r.exponent == 0 && r.quotient.is_zero() && r.remainder == g, "division by 0 returns (0, 0, g)")?;
    check(check_identity(&g, &zero, &r), "division by 0 satisfies the identity")?;
    let r = ok(pseudo_divide(&g, &three), "divide by 3")?;
    check(
        r.exponent == 0 && r.remainder.is_zero() && r.quotient == g.scale(&Coeff::from_i64(QQ, 3).inv().unwrap()),
        "division by a constant scales",
    )?;
    check(prem_identity_holds(&g, &three, &r), "constant division identity")?;
    let r = ok(pseudo_divide(&zero, &g), "divide 0")?;
    check(r.exponent == 0 && r.quotient.is_zero() && r.remainder.is_zero(), "0 divided by anything is (0, 0, 0)")?;
    let r = ok(pseudo_divide(&x, &g), "already reduced")?;
    check(r.exponent == 0 && r.quotient.is_zero() && r.remainder == x, "reduced dividend passes through")?;

    check(
        zero.initial().is_zero() && zero.main_degree() == 0 && zero.rank() == RankKey::BOTTOM,
        "zero polynomial conventions",
    )?;
    check(three.initial() == poly("1", QQ, &o) && three.rank() == RankKey::BOTTOM, "constant conventions")?;
    check(!x.reduced_to(&three) && zero.reduced_to(&three) && three.reduced_to(&x), "reduction conventions")?;

    check(TriangularSet::new(vec![zero.clone()]).is_err(), "zero member rejected")?;
    let cx = ok(TriangularSet::new(vec![three.clone(), x.clone()]), "constant then x")?;
    check(cx.is_contradictory() && !cx.is_ascending(), "a leading constant is allowed but never ascending")?;
    check(TriangularSet::new(vec![x.clone(), three.clone()]).is_err(), "constant after a variable rejected")?;
    let c3 = ok(TriangularSet::new(vec![three.clone()]), "constant set")?;
    check(c3.is_contradictory() && c3.is_ascending() && c3.initials_reduced(), "constant singleton")?;
    let r = ok(set_pseudo_divide(&g, &c3), "constant set division")?;
    check(r.remainder.is_zero() && set_identity_holds(&g, &c3, &r), "constant-leading set reduces to 0")?;
    let empty = ok(TriangularSet::new(vec![]), "empty set")?;
    let r = ok(set_pseudo_divide(&g, &empty), "empty set division")?;
    check(r.remainder == g && r.exponents.is_empty() && r.quotients.is_empty(), "empty set leaves g")?;

    check(matches!(basic_set(&[]), Err(Error::NoNonzeroPolynomial)), "empty basic set input")?;
    check(
        matches!(basic_set(&[zero.clone(), zero.clone()]), Err(Error::NoNonzeroPolynomial)),
        "all-zero basic set input",
    )?;
    let bs = ok(basic_set(&[poly("5", QQ, &o), x.clone(), poly("y", QQ, &o)]), "basic set")?;
    check(bs.members() == [poly("5", QQ, &o)], "constant blocks the basic set")?;

    let (cs, _) = ok(characteristic_set(std::slice::from_ref(&three), &Limits::default()), "charset {3}")?;
    check(cs.is_contradictory() && cs.len() == 1, "{3} has a contradictory characteristic set")?;
    let (cs, _) = ok(characteristic_set(&[zero.clone(), poly("x - y", QQ, &o)], &Limits::default()), "charset")?;
    check(cs.members() == [poly("y - x", QQ, &o)], "zero members are ignored")?;
    let (cs, _) = ok(characteristic_set(std::slice::from_ref(&g), &Limits::default()), "single")?;
    check(cs.members() == [normalize_primitive(&g)], "single polynomial is its own characteristic set")?;
    check(characteristic_set(std::slice::from_ref(&zero), &Limits::default()).is_err(), "all-zero charset input")?;

    let zd = ok(zero_decompose(std::slice::from_ref(&three), &DecomposeOptions::default()), "zdecomp {3}")?;
    check(zd.components.len() == 1 && zd.components[0].is_contradictory(), "{3} decomposes to one contradictory set")?;
    let proof = ok(prove_geometric(std::slice::from_ref(&three), &poly("1", QQ, &o), &Limits::default()), "prove")?;
    check(proof.proved_generically, "anything follows from a contradiction")?;

    let oracle = ok(ZeroOracle::new(f5, &o), "oracle")?;
    let one5 = Polynomial::one(f5, &o);
    check(ok(oracle.vanishing_set(&[]), "vanish")?.len() == 25, "empty system vanishes everywhere")?;
    check(ok(oracle.vanishing_set(std::slice::from_ref(&one5)), "vanish")?.is_empty(), "{1} has no zeros")?;
    let set5 = ok(TriangularSet::new(vec![poly("x^2 - 1", f5, &o)]), "set")?;
    check(
        ok(oracle.quasi_vanishing_set(&set5, &Polynomial::zero(f5, &o)), "quasi")?.is_empty(),
        "ip = 0 removes every point",
    )?;
    check(
        ok(
            oracle.check_decomposition(
                std::slice::from_ref(&one5),
                &ok(zero_decompose(std::slice::from_ref(&one5), &DecomposeOptions::default()), "zd")?,
            ),
            "eq2",
        )?
        .holds,
        "{1} satisfies the decomposition identity",
    )?;
    check(matches!(ZeroOracle::new(QQ, &o), Err(Error::Unsupported(_))), "no enumeration over QQ")?;
    check(Field::prime(4).is_err() && Field::prime(1).is_err(), "non-prime moduli rejected")?;
    check(g.try_add(&poly("x", f5, &o)).is_err(), "field mismatch reported")?;
    Ok(format!("{checks} conventions"))
}

fn c10_determinism() -> Outcome {
    let bin = env!("CARGO_BIN_EXE_wuritt");
    let run = |args: &[String]| -> Result<RunOutput, String> {
        let out = Command::new(bin).args(args).output().map_err(|e| e.to_string())?;
        Ok((out.status.code(), out.stdout, out.stderr))
    };
    let mut invocations = 0;
    let mut all: Vec<(std::path::PathBuf, Vec<Vec<String>>)> = Vec::new();
    for (_, path, sys) in systems() {
        let prime = sys.field.modulus().unwrap().to_string();
        let last = sys.polys.len().max(1).to_string();
        let cmds: Vec<Vec<&str>> = vec![
            vec!["prem", "--dividend", &last, "--divisor", "1"],
            vec!["setprem", "--dividend", "1"],
            vec!["basicset"],
            vec!["charset", "--trace"],
            vec!["zdecomp"],
            vec!["zdecomp", "--no-prune"],
            vec!["verify", "--prime", &prime],
            vec!["prove"],
        ];
        let owned = cmds.into_iter().map(|c| c.into_iter().map(String::from).collect()).collect();
        all.push((path, owned));
    }
    for (_, path, _) in prove_systems() {
        all.push((path, vec![vec!["prove".into()], vec!["charset".into()], vec!["zdecomp".into()]]));
    }
    for (path, cmds) in &all {
        for cmd in cmds {
            let mut args = vec!["--json".to_string()];
            args.extend(cmd.iter().cloned());
            args.push(path.to_string_lossy().into_owned());
            let a = run(&args)?;
            let b = run(&args)?;
            invocations += 2;
            ensure(a == b, || format!("{} {}: outputs differ", path.display(), cmd.join(" ")))?;
            ensure(a.0 != Some(3), || format!("{} {}: internal error", path.display(), cmd.join(" ")))?;
            if a.0 == Some(0) {
                ensure(serde_json::from_slice::<serde_json::Value>(&a.1).is_ok(), || {
                    format!("{} {}: stdout is not JSON", path.display(), cmd.join(" "))
                })?;
            }
        }
    }
    Ok(format!("{invocations} binary runs, byte-identical pairs"))
}

fn c11_geometry() -> Outcome {
    let corpus = prove_systems();
    ensure(corpus.len() >= MIN_PROVE_CORPUS, || format!("prove corpus has {} systems", corpus.len()))?;
    let mut cross_checked = 0;
    for (name, path, sys) in &corpus {
        let concl = sys.conclusion.as_ref().ok_or_else(|| format!("{name}: no conclusion"))?;
        let proof = ok(prove_geometric(&sys.polys, concl, &Limits::default()), name)?;
        ensure(proof.proved_generically, || format!("{name}: not proved, remainder {}", proof.witness.remainder))?;
        ensure(set_identity_holds(concl, &proof.characteristic_set, &proof.witness), || {
            format!("{name}: witness invalid")
        })?;

        let perturbed = concl + &Polynomial::one(sys.field, &sys.order);
        let bad = ok(prove_geometric(&sys.polys, &perturbed, &Limits::default()), name)?;
        ensure(!bad.proved_generically, || format!("{name}: perturbed conclusion proved"))?;
        ensure(set_identity_holds(&perturbed, &bad.characteristic_set, &bad.witness), || {
            format!("{name}: perturbed witness invalid")
        })?;

        // Over GF 5 the conclusion must vanish wherever the hypotheses do and
        // no nondegeneracy condition does.
        let text = std::fs::read_to_string(path).map_err(|e| e.to_string())?;
        let Ok(sys5) = parse_system_with_field(&text, Some(gf(5))) else { continue };
        let concl5 = sys5.conclusion.clone().unwrap();
        let proof5 = ok(prove_geometric(&sys5.polys, &concl5, &Limits::default()), name)?;
        if !proof5.proved_generically {
            continue;
        }
        let oracle = oracle_for(&sys5)?;
        let zeros = ok(oracle.vanishing_set(&sys5.polys), name)?;
        for pt in zeros.iter() {
            let mut nondegenerate = true;
            for c in &proof5.nondegeneracy_conditions {
                if ok(oracle.is_common_zero(std::slice::from_ref(c), pt), name)? {
                    nondegenerate = false;
                }
            }
            if nondegenerate {
                ensure(ok(oracle.is_common_zero(std::slice::from_ref(&concl5), pt), name)?, || {
                    format!("{name}: conclusion fails at {pt:?} over GF 5")
                })?;
            }
        }
        cross_checked += 1;
    }
    Ok(format!("{} systems proved, perturbations rejected, {cross_checked} cross-checked over GF 5", corpus.len()))
}
