//! Acceptance suite. Runs every criterion, prints one PASS/FAIL line each,
//! and exits nonzero if any fails. All comparisons are exact.

use std::path::Path;
use std::process::Command;

use ckbundle_cli::{CompareReport, InvariantReport, Render, SeSearchReport};
use ckbundle_core::ck::{bowen_franks, edge_dilation, k0, k1};
use ckbundle_core::gln::{random_nonnegative, random_word};
use ckbundle_core::sft::{
    se_obstruction, search_se_witness, trace_sequence, verify_elementary_sse, verify_se_witness,
};
use ckbundle_core::{BigInt, FgAbelianGroup, IntMatrix, SeWitness, TorusBundle};
use num_traits::Signed;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Check = Result<String, String>;
type Criterion = (&'static str, fn() -> Check);

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn m(rows: &[&[i64]]) -> IntMatrix {
    IntMatrix::from_rows(rows.iter().map(|r| r.iter().copied())).unwrap()
}

fn a2() -> IntMatrix {
    m(&[&[5, 2], &[2, 1]])
}

fn a3() -> IntMatrix {
    m(&[&[5, 1], &[4, 1]])
}

fn group(s: &str) -> FgAbelianGroup {
    s.parse().unwrap()
}

fn rng(criterion: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(0x5eed_0000 + criterion)
}

fn random_gl<R: Rng>(rng: &mut R) -> IntMatrix {
    let n = rng.gen_range(2..=4);
    let len = rng.gen_range(0..=10);
    random_word(n, len, rng).0
}

fn conjugate_randomly<R: Rng>(a: &IntMatrix, rng: &mut R) -> IntMatrix {
    let (b, b_inv) = random_word(a.rows(), rng.gen_range(1..=8), rng);
    &(&b * a) * &b_inv
}

fn c1_unipotent_family() -> Check {
    for n in 1..=10i64 {
        let a = m(&[&[1, n], &[0, 1]]);
        let bundle = TorusBundle::new(a.clone()).map_err(|e| e.to_string())?;
        let want_k0 = FgAbelianGroup::from_cyclic_orders(1, [BigInt::from(n)]);
        let want_h1 = FgAbelianGroup::from_cyclic_orders(2, [BigInt::from(n)]);
        let got_k0 = k0(&a).unwrap();
        ensure!(got_k0 == want_k0, "n={n}: k0 = {got_k0}, want {want_k0}");
        ensure!(
            bundle.h1() == want_h1,
            "n={n}: h1 = {}, want {want_h1}",
            bundle.h1()
        );
        let text = if n == 1 {
            "Z".to_string()
        } else {
            format!("Z + Z_{n}")
        };
        ensure!(got_k0.to_string() == text, "n={n}: k0 renders as {got_k0}");
    }
    Ok("n = 1..10".into())
}

fn c2_k_theory_of_a2_a3() -> Check {
    for (name, a, want) in [("A2", a2(), "Z_2 + Z_2"), ("A3", a3(), "Z_4")] {
        let g = k0(&a).unwrap();
        ensure!(g == group(want), "k0({name}) = {g}, want {want}");
        ensure!(
            k1(&a).unwrap().is_trivial(),
            "k1({name}) = {}",
            k1(&a).unwrap()
        );
        let det = a.transpose().identity_minus().unwrap().det().unwrap();
        ensure!(det == BigInt::from(-4), "det(I - {name}^t) = {det}");
    }
    Ok("k0 = Z_2 + Z_2 and Z_4, k1 = 0".into())
}

fn c3_alexander_polynomial() -> Check {
    let want: Vec<BigInt> = [1, -6, 1].into_iter().map(BigInt::from).collect();
    for (name, a) in [("A2", a2()), ("A3", a3())] {
        let p = TorusBundle::new(a).unwrap().alexander_polynomial();
        ensure!(p.coeffs() == want.as_slice(), "{name}: {p}");
        ensure!(p.to_string() == "t^2 - 6t + 1", "{name} renders as {p}");
    }
    Ok("t^2 - 6t + 1 for both".into())
}

fn write_matrix(dir: &Path, name: &str, a: &IntMatrix) -> std::path::PathBuf {
    let path = dir.join(name);
    std::fs::write(&path, a.to_string()).unwrap();
    path
}

fn compare_binary(a: &Path, b: &Path) -> (i32, CompareReport) {
    let out = Command::new(env!("CARGO_BIN_EXE_ckbundle"))
        .args(["--format", "json", "compare", "--depth", "4"])
        .arg(a)
        .arg(b)
        .output()
        .expect("binary runs");
    let report = serde_json::from_slice(&out.stdout).expect("json report");
    (out.status.code().unwrap_or(-1), report)
}

fn c4_compare_verdicts() -> Check {
    let dir = tempfile::tempdir().unwrap();
    let pa = write_matrix(dir.path(), "a2.txt", &a2());
    let pb = write_matrix(dir.path(), "a3.txt", &a3());
    let (code, r) = compare_binary(&pa, &pb);
    ensure!(code == 1, "compare A2 A3 exited {code}");
    ensure!(r.verdict == "Distinct", "verdict {}", r.verdict);
    ensure!(
        r.invariant.as_deref() == Some("K0"),
        "separated by {:?}",
        r.invariant
    );
    ensure!(r.witness == "K0: Z_2 + Z_2 vs Z_4", "witness {}", r.witness);

    let mut rng = rng(4);
    let trials = 25;
    for t in 0..trials {
        let (b, b_inv) = random_word(2, rng.gen_range(1..=3), &mut rng);
        let target = &(&b * &a2()) * &b_inv;
        let pt = write_matrix(dir.path(), &format!("conj{t}.txt"), &target);
        let (code, r) = compare_binary(&pa, &pt);
        ensure!(
            code == 0,
            "trial {t}: {target:?} exited {code} ({})",
            r.witness
        );
        let u = r.certificate.ok_or("no certificate")?;
        ensure!(
            u.det().unwrap().abs() == BigInt::from(1),
            "certificate not unimodular"
        );
        ensure!(&u * &a2() == &target * &u, "certificate fails U A = A' U");
    }
    Ok(format!(
        "exit 1 for (A2, A3); exit 0 with verified certificate on {trials} conjugates"
    ))
}

fn c5_homology_matches_k_theory() -> Check {
    let mut rng = rng(5);
    let trials = 600;
    for t in 0..trials {
        let a = random_gl(&mut rng);
        let r = InvariantReport::new(&a).map_err(|e| e.to_string())?;
        ensure!(
            r.theorem1_check == Some(true),
            "trial {t}: check fails on {a:?}"
        );
        let c =
            InvariantReport::new(&conjugate_randomly(&a, &mut rng)).map_err(|e| e.to_string())?;
        ensure!(
            (&c.h1, &c.k0, &c.k1, &c.alexander) == (&r.h1, &r.k0, &r.k1, &r.alexander),
            "trial {t}: invariants of {a:?} move under conjugation"
        );
        ensure!(
            c.h1.is_some() && c.alexander.is_some(),
            "trial {t}: bundle fields missing"
        );
    }
    Ok(format!("{trials} random GL_n(Z), n in 2..=4"))
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

fn c6_smith_normal_form() -> Check {
    let mut rng = rng(6);
    let small = 1200;
    for _ in 0..small {
        let e: Vec<i64> = (0..4).map(|_| rng.gen_range(-30..=30)).collect();
        let a = m(&[&e[0..2], &e[2..4]]);
        let d = a.smith().diagonal();
        let d1 = e.iter().fold(0, |g, &x| gcd(g, x));
        let det = (e[0] * e[3] - e[1] * e[2]).abs();
        ensure!(d[0] == BigInt::from(d1), "{e:?}: d1 = {}, gcd = {d1}", d[0]);
        ensure!(
            &d[0] * &d[1] == BigInt::from(det),
            "{e:?}: d1 d2 = {}, |det| = {det}",
            &d[0] * &d[1]
        );
    }
    let general = 300;
    for _ in 0..general {
        let (rows, cols) = (rng.gen_range(1..=6), rng.gen_range(1..=6));
        let a = IntMatrix::from_fn(rows, cols, |_, _| BigInt::from(rng.gen_range(-9..=9)));
        let snf = a.smith();
        let (u, d, v) = (snf.u(), snf.d(), snf.v());
        ensure!(&(u * &a) * v == *d, "U A V != D for {a:?}");
        ensure!(
            u.det().unwrap().abs() == BigInt::from(1),
            "U not unimodular"
        );
        ensure!(
            v.det().unwrap().abs() == BigInt::from(1),
            "V not unimodular"
        );
        for i in 0..rows {
            for j in 0..cols {
                ensure!(i == j || d.get(i, j) == &BigInt::from(0), "D not diagonal");
            }
        }
        let diag = snf.diagonal();
        for w in diag.windows(2) {
            ensure!(
                !w[0].is_negative() && !w[1].is_negative(),
                "negative diagonal {diag:?}"
            );
            let divides = if w[0] == BigInt::from(0) {
                w[1] == BigInt::from(0)
            } else {
                (&w[1] % &w[0]) == BigInt::from(0)
            };
            ensure!(divides, "divisor chain broken: {diag:?}");
        }
    }
    Ok(format!(
        "{small} 2x2 against the gcd oracle, {general} up to 6x6"
    ))
}

fn c7_shift_equivalence() -> Check {
    let mut rng = rng(7);
    let selfs = 250;
    for _ in 0..selfs {
        let n = rng.gen_range(1..=4);
        let a = random_nonnegative(n, n, 5, &mut rng);
        let w = SeWitness::new(a.clone(), IntMatrix::identity(n), 1);
        ensure!(
            verify_se_witness(&a, &a, &w).unwrap(),
            "self witness rejected for {a:?}"
        );
    }
    let pairs = 250;
    for _ in 0..pairs {
        let (p, q) = (rng.gen_range(1..=4), rng.gen_range(1..=4));
        let r = random_nonnegative(p, q, 5, &mut rng);
        let s = random_nonnegative(q, p, 5, &mut rng);
        let (a, b) = (&r * &s, &s * &r);
        ensure!(
            verify_elementary_sse(&a, &b, &r, &s).unwrap(),
            "pair not verified"
        );
        ensure!(
            bowen_franks(&a).unwrap() == bowen_franks(&b).unwrap(),
            "BF differs for R={r:?} S={s:?}"
        );
        ensure!(
            trace_sequence(&a, 5).unwrap() == trace_sequence(&b, 5).unwrap(),
            "traces differ for R={r:?} S={s:?}"
        );
    }
    let found = search_se_witness(&a2(), &a3(), 3, 6).unwrap();
    ensure!(found.is_none(), "search found {found:?}");
    let o = se_obstruction(&a2(), &a3())
        .unwrap()
        .ok_or("no obstruction")?;
    ensure!(o.to_string() == "K0: Z_2 + Z_2 vs Z_4", "obstruction {o}");
    let report = SeSearchReport::new(&a2(), &a3(), 3, 6).map_err(|e| e.to_string())?;
    ensure!(
        report.definitive && report.witness.is_none(),
        "report {report:?}"
    );
    Ok(format!(
        "{selfs} self witnesses, {pairs} elementary pairs, (A2, A3) obstructed by {o}"
    ))
}

fn c8_edge_dilation() -> Check {
    let d = edge_dilation(&m(&[&[2]])).unwrap();
    ensure!(d == m(&[&[1, 1], &[1, 1]]), "dilation of [[2]] = {d:?}");
    let mut rng = rng(8);
    let trials = 150;
    let mut done = 0;
    while done < trials {
        let n = rng.gen_range(1..=3);
        let a = random_nonnegative(n, n, 3, &mut rng);
        let degenerate = (0..n).any(|i| {
            a.row(i).iter().all(|x| *x == BigInt::from(0))
                || a.column(i).iter().all(|x| *x == BigInt::from(0))
        });
        if degenerate {
            continue;
        }
        let d = edge_dilation(&a).unwrap();
        ensure!(d.is_zero_one(), "dilation of {a:?} is not 0/1");
        ensure!(
            bowen_franks(&a).unwrap() == bowen_franks(&d).unwrap(),
            "BF moves for {a:?}"
        );
        ensure!(
            trace_sequence(&a, 5).unwrap() == trace_sequence(&d, 5).unwrap(),
            "traces move for {a:?}"
        );
        done += 1;
    }
    Ok(format!("[[2]] and {trials} random matrices"))
}

fn c9_functoriality() -> Check {
    let mut rng = rng(9);
    let trials = 250;
    for t in 0..trials {
        let a = random_gl(&mut rng);
        let n = a.rows();
        let (b1, b1_inv) = random_word(n, rng.gen_range(0..=6), &mut rng);
        let (b2, b2_inv) = random_word(n, rng.gen_range(0..=6), &mut rng);
        let one = &(&(&b2 * &b1) * &a) * &(&b1_inv * &b2_inv);
        let two = &(&b2 * &(&(&b1 * &a) * &b1_inv)) * &b2_inv;
        ensure!(
            one == two,
            "trial {t}: one and two steps disagree as matrices"
        );
        let base = InvariantReport::new(&a).map_err(|e| e.to_string())?;
        for (label, c) in [("one step", one), ("two steps", two)] {
            let r = InvariantReport::new(&c).map_err(|e| e.to_string())?;
            let same = r.det == base.det
                && r.trace == base.trace
                && r.k0 == base.k0
                && r.k1 == base.k1
                && r.bowen_franks == base.bowen_franks
                && r.h1 == base.h1
                && r.alexander == base.alexander
                && r.normalized_k0 == base.normalized_k0
                && r.theorem1_check == base.theorem1_check;
            ensure!(
                same,
                "trial {t}, {label}: {}\nvs\n{}",
                r.text(),
                base.text()
            );
        }
    }
    Ok(format!("{trials} triples"))
}

fn main() {
    let criteria: [Criterion; 9] = [
        ("unipotent family k0 and h1", c1_unipotent_family),
        ("K-theory of A2 and A3", c2_k_theory_of_a2_a3),
        ("Alexander polynomial", c3_alexander_polynomial),
        ("compare verdicts and exit codes", c4_compare_verdicts),
        ("homology matches K-theory", c5_homology_matches_k_theory),
        ("Smith normal form oracle", c6_smith_normal_form),
        ("shift equivalence machinery", c7_shift_equivalence),
        ("edge dilation", c8_edge_dilation),
        ("functoriality", c9_functoriality),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(detail) => println!("PASS criterion {}: {name} ({detail})", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL criterion {}: {name}: {why}", i + 1);
            }
        }
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
