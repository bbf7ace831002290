//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits with
//! a non-zero status if any criterion fails. Random inputs come from a fixed
//! seed so every run checks the same instances.

use std::collections::BTreeSet;
use std::process::Command;
use std::time::{Duration, Instant};

use num_integer::Integer;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use qzeta::groups::GroupAction;
use qzeta::monodromy::{yomdin_charpoly, yomdin_milnor};
use qzeta::rat::{int, rat, Rat};
use qzeta::resolution::{
    hj_resolve, hj_stratification, tetra_stratification, tetra_top_closed_form, yomdin_stratification,
    yomdin_top_closed_form, YomdinParams,
};
use qzeta::strata_file::{parse_strata, print_strata, StrataFile};
use qzeta::symring::{ChiEnv, Monomial, MotPoly, TopZeta};
use qzeta::tetra::{TetraGroup, TetraParams};
use qzeta::zetacore::{
    gor_measure_origin, jet_count_oracle, local_monomial_zeta, orb_measure_origin, s_g_sum, stratified_zeta,
    veys_det_713, SmallPolicy,
};

const SEED: u64 = 0x5eed_2024;

type Outcome = Result<String, String>;

/// Name, check and time limit in seconds.
type Criterion = (&'static str, fn() -> Outcome, u64);

fn random_rat(rng: &mut StdRng, lo: i64, hi: i64) -> Rat {
    rat(rng.gen_range(lo..=hi), rng.gen_range(1..=6))
}

fn cyc(d: u64, a: &[i64]) -> GroupAction {
    GroupAction::cyclic(d, a.to_vec()).unwrap()
}

/// `L^{b} T^{-a}` for the exponent `a s + b` of `L`.
fn l_affine(a: Rat, b: Rat) -> MotPoly {
    MotPoly::monomial(1, Monomial::lt(b, -a))
}

fn criterion_1() -> Outcome {
    let mut rng = StdRng::seed_from_u64(SEED);
    let g = cyc(7, &[1, 3]);
    // The seven exponent pairs (i, 3i mod 7) of 1/7(1,3).
    let pairs: Vec<(i64, i64)> = (0..7).map(|i| (i, (3 * i) % 7)).collect();
    for _ in 0..10 {
        let [n1, n2, nu1, nu2] = [0; 4].map(|_| random_rat(&mut rng, 0, 20));
        let expect = pairs.iter().fold(MotPoly::zero(), |acc, &(x, y)| {
            let e = |a: &Rat, b: &Rat| (int(x) * a + int(y) * b) / int(7);
            &acc + &l_affine(e(&n1, &n2), e(&nu1, &nu2))
        });
        let got = s_g_sum(&g, &[n1.clone(), n2.clone()], &[nu1.clone(), nu2.clone()]);
        if got != expect {
            return Err(format!("mismatch at N = ({n1}, {n2}), nu = ({nu1}, {nu2})"));
        }
    }
    Ok("10 random substitutions".into())
}

fn criterion_2() -> Outcome {
    let mut rng = StdRng::seed_from_u64(SEED + 2);
    let g = cyc(7, &[1, 3]);
    for _ in 0..25 {
        let [n1, n2, nu1, nu2] = [0; 4].map(|_| random_rat(&mut rng, 0, 20));
        if veys_det_713(&n1, &n2, &nu1, &nu2) != s_g_sum(&g, &[n1.clone(), n2.clone()], &[nu1.clone(), nu2.clone()]) {
            return Err(format!("determinant differs at N = ({n1}, {n2}), nu = ({nu1}, {nu2})"));
        }
    }
    Ok("25 random inputs".into())
}

fn criterion_3() -> Outcome {
    let c = hj_resolve(7, 1, 3).map_err(|e| e.to_string())?;
    if c.kappa != [3, 2, 2] || c.coeffs != [(1, 3), (3, 2), (5, 1)] {
        return Err(format!("kappa = {:?}, coeffs = {:?}", c.kappa, c.coeffs));
    }
    Ok("kappa = (3,2,2), coeffs = (1,3),(3,2),(5,1)".into())
}

fn criterion_4() -> Outcome {
    let mut rng = StdRng::seed_from_u64(SEED + 4);
    let mut done = 0;
    while done < 200 {
        let d = rng.gen_range(2..=40u64);
        let a = rng.gen_range(1..d as i64);
        let b = rng.gen_range(1..d as i64);
        if a.gcd(&(d as i64)) != 1 || b.gcd(&(d as i64)) != 1 {
            continue;
        }
        let n = [int(rng.gen_range(0..=3)), int(rng.gen_range(0..=3))];
        let nu = [int(rng.gen_range(1..=3)), int(rng.gen_range(1..=3))];
        let chain = hj_resolve(d, a, b).map_err(|e| e.to_string())?;
        let s = hj_stratification(&chain, &n[0], &n[1], &nu[0], &nu[1]).map_err(|e| e.to_string())?;
        let via_hj = stratified_zeta(&s, SmallPolicy::Require).map_err(|e| e.to_string())?;
        let direct = local_monomial_zeta(&cyc(d, &[a, b]), &n, &nu, SmallPolicy::Require).map_err(|e| e.to_string())?;
        if !via_hj.equal(&direct) {
            return Err(format!("1/{d}({a},{b}) with N = {n:?}, nu = {nu:?}"));
        }
        done += 1;
    }
    Ok("200 random coprime (d,a,b), d <= 40".into())
}

fn random_small_group(rng: &mut StdRng) -> Option<GroupAction> {
    let n = rng.gen_range(1..=4usize);
    let gens = rng.gen_range(1..=2usize);
    let orders: Vec<u64> = (0..gens).map(|_| rng.gen_range(2..=12)).collect();
    let rows: Vec<Vec<i64>> = orders
        .iter()
        .map(|&d| (0..n).map(|_| rng.gen_range(0..d as i64)).collect())
        .collect();
    let total: u64 = orders.iter().product();
    if total > 200 {
        return None;
    }
    let g = GroupAction::new(orders, rows).ok()?;
    (g.order() <= 60 && g.order() > 1 && g.is_small()).then_some(g)
}

fn criterion_5() -> Outcome {
    let mut rng = StdRng::seed_from_u64(SEED + 5);
    let mut done = 0;
    let mut orders = BTreeSet::new();
    while done < 100 {
        let Some(g) = random_small_group(&mut rng) else { continue };
        let n = g.dimension();
        let nv: Vec<Rat> = (0..n).map(|_| random_rat(&mut rng, 0, 6)).collect();
        let nuv: Vec<Rat> = (0..n).map(|_| random_rat(&mut rng, 1, 6)).collect();
        let z = local_monomial_zeta(&g, &nv, &nuv, SmallPolicy::Require).map_err(|e| e.to_string())?;
        let top = z.euler(&ChiEnv::new()).map_err(|e| e.to_string())?;
        let expect = TopZeta::from_terms(vec![(
            int(g.order() as i64),
            nv.iter().cloned().zip(nuv.iter().cloned()).collect(),
        )]);
        if top != expect {
            return Err(format!("group {g}: got {top}, expected {expect}"));
        }
        orders.insert(g.order());
        done += 1;
    }
    Ok(format!("100 random small groups, {} distinct orders up to {}", orders.len(), orders.last().unwrap()))
}

fn criterion_6() -> Outcome {
    let target = &MotPoly::l_pow(int(-2)) + &MotPoly::l_pow(int(-1));
    let g2 = gor_measure_origin(&cyc(2, &[1, 1]));
    let g4 = gor_measure_origin(&cyc(4, &[1, 2]));
    if g2 != target || g4 != target {
        return Err(format!("Gorenstein measures {g2} and {g4}"));
    }
    let orb = orb_measure_origin(&cyc(4, &[1, 2]));
    let expect = [int(-2), rat(-3, 4), rat(-3, 2), rat(-5, 4)]
        .into_iter()
        .fold(MotPoly::zero(), |acc, e| &acc + &MotPoly::l_pow(e));
    if orb != expect {
        return Err(format!("orbifold measure {orb}"));
    }
    Ok(format!("Gorenstein {target}; orbifold {orb}"))
}

/// Necessary conditions for a degree `m` plane curve to carry the cusp
/// `x^q + y^p`: multiplicity `min(p, q) <= m` and delta invariant at most the
/// arithmetic genus.
fn realizable(m: i64, p: i64, q: i64) -> bool {
    p.min(q) <= m && (p - 1) * (q - 1) <= (m - 1) * (m - 2)
}

fn criterion_7() -> Outcome {
    let mut instances = 0;
    let mut failures: Vec<String> = Vec::new();
    let (mut bad_degree, mut bad_poly, mut bad_top, mut bad_pole) = (0, 0, 0, 0);
    let mut unchecked_a1 = 0;
    let mut realizable_failures = 0;
    for m in 2..=6 {
        for k in 1..=4 {
            for (p, q) in [(2, 3), (3, 4), (2, 5)] {
                for a in 1..=3 {
                    instances += 1;
                    let y = YomdinParams::new(m, k, p, q, a).map_err(|e| e.to_string())?;
                    let c = yomdin_charpoly(&y);
                    let tag = format!("(m,k,p,q,a) = ({m},{k},{p},{q},{a})");
                    let before = failures.len();
                    if c.degree() != yomdin_milnor(&y) {
                        bad_degree += 1;
                        failures.push(format!("{tag}: degree {} != {}", c.degree(), yomdin_milnor(&y)));
                    }
                    let negative: Vec<_> = c.phi_multiplicities().into_iter().filter(|(_, e)| *e < 0).collect();
                    if !negative.is_empty() {
                        bad_poly += 1;
                        failures.push(format!("{tag}: negative Phi multiplicities {negative:?}"));
                    }
                    let g = yomdin_stratification(&y).map_err(|e| e.to_string())?;
                    let z = stratified_zeta(&g.strata, SmallPolicy::Require).map_err(|e| e.to_string())?;
                    let top = z.euler(&g.chi).map_err(|e| e.to_string())?;
                    if top != yomdin_top_closed_form(&y) {
                        bad_top += 1;
                        failures.push(format!("{tag}: topological zeta differs from the closed form"));
                    }
                    let poles = y.listed_poles();
                    let ok = poles.iter().all(|s| c.is_eigenvalue_pole(s));
                    if a == 1 {
                        unchecked_a1 += usize::from(!ok);
                    } else if !ok {
                        bad_pole += 1;
                        let which: Vec<String> =
                            poles.iter().filter(|s| !c.is_eigenvalue_pole(s)).map(|s| s.to_string()).collect();
                        failures.push(format!("{tag}: pole(s) {} give no eigenvalue", which.join(", ")));
                    }
                    if failures.len() > before && realizable(m, p, q) {
                        realizable_failures += 1;
                        let last = failures.pop().unwrap();
                        failures.insert(0, format!("{last} [realizable]"));
                    }
                }
            }
        }
    }
    let summary = format!(
        "{instances} instances; degree failures {bad_degree}, non-polynomial {bad_poly}, \
         closed-form mismatches {bad_top}, pole checks failed {bad_pole} \
         (a = 1 instances without eigenvalue, not asserted: {unchecked_a1}); \
         failing instances whose cusp fits on a degree m curve: {realizable_failures}"
    );
    if failures.is_empty() {
        Ok(summary)
    } else {
        let shown: Vec<String> = failures.iter().take(8).cloned().collect();
        Err(format!("{summary}\n      first failures:\n        {}", shown.join("\n        ")))
    }
}

fn criterion_8() -> Outcome {
    let mut count = 0;
    let data = [(int(1), int(1)), (int(2), int(3)), (rat(1, 2), rat(5, 3))];
    for d in 1..=15u64 {
        for q in 0..d.max(1) {
            let Ok(t) = TetraParams::new(d, q) else { continue };
            if !t.is_small() {
                continue;
            }
            let g = TetraGroup::build(d, q).map_err(|e| e.to_string())?;
            if g.order() as u64 != 3 * d * d {
                return Err(format!("|G_{{{d},{q}}}| = {}", g.order()));
            }
            let expect = (d * d + 8 * t.beta) / 3;
            if g.conjugacy_count() as u64 != expect {
                return Err(format!("G_{{{d},{q}}} has {} classes, expected {expect}", g.conjugacy_count()));
            }
            for (n, nu) in &data {
                let gen = tetra_stratification(&t, n, nu).map_err(|e| e.to_string())?;
                let z = stratified_zeta(&gen.strata, SmallPolicy::Require).map_err(|e| e.to_string())?;
                let top = z.euler(&gen.chi).map_err(|e| e.to_string())?;
                if top != tetra_top_closed_form(&t, n, nu) {
                    return Err(format!("G_{{{d},{q}}}, N = {n}, nu = {nu}: got {top}"));
                }
            }
            count += 1;
        }
    }
    Ok(format!("{count} small (d,q) with d <= 15, three (N, nu) each"))
}

fn criterion_9() -> Outcome {
    let mut checked = 0;
    let env = Default::default();
    let vectors: Vec<Vec<u64>> = vec![vec![1], vec![2], vec![1, 1], vec![1, 2], vec![2, 1], vec![2, 2]];
    for nv in &vectors {
        let n = nv.len();
        let ns: Vec<Rat> = nv.iter().map(|&x| int(x as i64)).collect();
        let z = local_monomial_zeta(&GroupAction::trivial(n), &ns, &vec![int(1); n], SmallPolicy::Require)
            .map_err(|e| e.to_string())?;
        let series = z.series(&int(3)).map_err(|e| e.to_string())?;
        for p in [2u64, 3] {
            for j in 0..=3u32 {
                let brute = jet_count_oracle(nv, p, j).map_err(|e| e.to_string())?;
                let c = series
                    .coefficient_of_t(&int(j as i64))
                    .eval_l(&int(p as i64), &env)
                    .map_err(|e| e.to_string())?;
                if brute != c {
                    return Err(format!("N = {nv:?}, p = {p}, j = {j}: oracle {brute}, series {c}"));
                }
                checked += 1;
            }
        }
    }
    Ok(format!("{checked} (N, p, j) cases"))
}

fn run_cli(args: &[&str]) -> Result<Vec<u8>, String> {
    let out = Command::new(env!("CARGO_BIN_EXE_qzeta")).args(args).output().map_err(|e| e.to_string())?;
    if !out.status.success() {
        return Err(format!("qzeta {}: {}", args.join(" "), String::from_utf8_lossy(&out.stderr)));
    }
    Ok(out.stdout)
}

fn criterion_10() -> Outcome {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let cases: Vec<Vec<&str>> = vec![
        vec!["monomial", "--group", "(7;1,3)", "--N", "1,1/2", "--nu", "1,2"],
        vec!["monomial", "--group", "(3,3;1,2,0;0,1,2)", "--N", "1,2,0", "--nu", "1,1,1"],
        vec!["hj", "--d", "7", "--a", "1", "--b", "3", "--N", "1,1", "--nu", "1,1"],
        vec!["hj", "--d", "23", "--a", "5", "--b", "7", "--N", "2,3", "--nu", "1,2"],
        vec!["yomdin", "--m", "3", "--k", "2", "--p", "3", "--q", "4", "--a", "2"],
        vec!["tetra", "--d", "7", "--q", "3"],
        vec!["tetra", "--d", "9", "--q", "2", "--N", "2/3", "--nu", "1"],
    ];
    for (i, case) in cases.iter().enumerate() {
        let path = dir.path().join(format!("case{i}.strata"));
        let p = path.to_str().unwrap();
        let mut args = case.clone();
        args.extend(["--euler", "--emit-strata", p]);
        let out1 = run_cli(&args)?;
        let file1 = std::fs::read(&path).map_err(|e| e.to_string())?;
        let out2 = run_cli(&args)?;
        let file2 = std::fs::read(&path).map_err(|e| e.to_string())?;
        if out1 != out2 || file1 != file2 {
            return Err(format!("{}: output differs between runs", case.join(" ")));
        }
        let text = String::from_utf8(file1).map_err(|e| e.to_string())?;
        let parsed: StrataFile = parse_strata(&text).map_err(|e| format!("{}: {e}", case.join(" ")))?;
        if print_strata(&parsed) != text {
            return Err(format!("{}: emitted file is not canonical", case.join(" ")));
        }
        if parse_strata(&print_strata(&parsed)).map_err(|e| e.to_string())? != parsed {
            return Err(format!("{}: reparse differs", case.join(" ")));
        }
        // Re-running from the file must give the same zeta and topological zeta.
        let replay = run_cli(&["strata", p, "--euler"])?;
        let strip = |b: &[u8]| -> String {
            String::from_utf8_lossy(b)
                .lines()
                .filter(|l| !l.starts_with("notice:") && !l.starts_with("warning:"))
                .take(2)
                .collect::<Vec<_>>()
                .join("\n")
        };
        if strip(&out1) != strip(&replay) {
            return Err(format!("{}: zeta from the emitted file differs", case.join(" ")));
        }
    }
    // Library-level equality for the generated stratifications.
    let y = YomdinParams::new(3, 2, 3, 4, 2).unwrap();
    let g = yomdin_stratification(&y).map_err(|e| e.to_string())?;
    let f = StrataFile::from_generated(&g);
    let back = parse_strata(&print_strata(&f)).map_err(|e| e.to_string())?;
    if back != f {
        return Err("yomdin stratification does not round-trip".into());
    }
    let a = stratified_zeta(&back.strata, SmallPolicy::Require).map_err(|e| e.to_string())?;
    let b = stratified_zeta(&g.strata, SmallPolicy::Require).map_err(|e| e.to_string())?;
    if a != b {
        return Err("yomdin zeta differs after round-trip".into());
    }
    Ok(format!("{} command lines, two runs each", cases.len()))
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("S_G fidelity for 1/7(1,3)", criterion_1, 1),
        ("Veys determinant equals S_G", criterion_2, 1),
        ("Hirzebruch-Jung data of 1/7(1,3)", criterion_3, 1),
        ("HJ-stratified zeta equals quotient zeta", criterion_4, 60),
        ("Euler specialization of the quotient zeta", criterion_5, 30),
        ("Gorenstein and orbifold measures", criterion_6, 1),
        ("Yomdin sweep", criterion_7, 60),
        ("tetrahedral quotients", criterion_8, 120),
        ("jet counting oracle", criterion_9, 60),
        ("CLI strata round-trip and determinism", criterion_10, 10),
    ];
    let mut failed = Vec::new();
    for (i, (name, f, limit)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = f();
        let elapsed = start.elapsed();
        let over = elapsed > Duration::from_secs(*limit);
        let (status, detail) = match (&result, over) {
            (Ok(d), false) => ("PASS", d.clone()),
            (Ok(d), true) => ("FAIL", format!("{d}; exceeded the time limit")),
            (Err(e), _) => ("FAIL", e.clone()),
        };
        println!(
            "criterion {:>2} [{status}] {name} ({:.3} s, limit {limit} s): {detail}",
            i + 1,
            elapsed.as_secs_f64()
        );
        if status == "FAIL" {
            failed.push(i + 1);
        }
    }
    if failed.is_empty() {
        println!("acceptance: all 10 criteria pass");
    } else {
        println!("acceptance: failing criteria {failed:?}");
        std::process::exit(1);
    }
}
