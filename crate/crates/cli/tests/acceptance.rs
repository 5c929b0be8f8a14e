//! Acceptance run: one line per criterion with its verdict and timing.

use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde_json::Value;

use origami_core::constructions::{cyclic, direct_product, two_group, TwoGroupFamily};
use origami_core::descriptor::GroupDesc;
use origami_core::numtheory::{primes_up_to, smallest_prime_in_progression};
use origami_core::origami::one_cylinder;
use origami_core::search::enumerate::{enumerate_regular, EnumLimits};
use origami_core::search::{t_of_g, verify_appendix_b, BoundStatus, Candidate};
use origami_core::sl2::{build_generating_pair, closure_order, commutator, mat_order, psl_family_genus, psl_group};
use origami_core::Stratum;

/// Criteria expected to fail, with the reason printed next to the verdict.
const KNOWN_FAILURES: [(u32, &str); 1] = [(
    10,
    "the stated order 2^(2α−1) for Aut of the dihedral and dicyclic groups of order 2^α \
     is off by a factor of 4; the count is 2^(2α−3) (Q8 aside)",
)];

type Check = Result<String, String>;

/// Id, name, time budget in seconds, check.
type Criterion = (u32, &'static str, u64, fn() -> Check);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn cli_json(args: &[&str]) -> Result<Value, String> {
    let out = Command::new(env!("CARGO_BIN_EXE_origami"))
        .args(args)
        .args(["--output", "json"])
        .output()
        .map_err(|e| e.to_string())?;
    if !out.status.success() {
        return Err(format!("{args:?} exited with {}", out.status));
    }
    serde_json::from_slice(&out.stdout).map_err(|e| e.to_string())
}

fn sophie_germain() -> Check {
    for (p, t) in [(5u64, 55u64), (11, 253), (23, 1081), (29, 1711)] {
        let g = p * p + 1;
        let v = cli_json(&["t-of-g", &g.to_string()])?;
        ensure(v["status"] == "exact" && v["t"] == t && v["m"] == 2 * p, || {
            format!("g = {g}: {v}")
        })?;
        let desc: GroupDesc = v["witness"]
            .as_str()
            .unwrap_or_default()
            .parse()
            .map_err(|e| format!("{e}"))?;
        ensure(
            matches!(desc, GroupDesc::Semidirect(s) if s.m == 2 * p + 1 && s.n == p),
            || format!("g = {g}: witness {desc}"),
        )?;
        let b = t_of_g(g, 0).map_err(|e| e.to_string())?;
        ensure(b.stratum() == Stratum::uniform(2 * p, p).unwrap(), || {
            format!("g = {g}: {}", b.stratum())
        })?;
        ensure(b.verify_lower_bound() == Ok(Some(true)), || {
            format!("g = {g}: witness does not verify")
        })?;
    }
    Ok("t = 55, 253, 1081, 1711 exact with Z/(2p+1) ⋊ Z/p witnesses".into())
}

fn psl_rows() -> Check {
    for (g, p, t) in [(276u64, 11u64, 660u64), (456, 13, 1092)] {
        let v = cli_json(&["t-of-g", &g.to_string()])?;
        ensure(
            v["status"] == "exact" && v["t"] == t && v["witness"] == format!("psl({p})"),
            || format!("g = {g}: {v}"),
        )?;
        let b = t_of_g(g, 0).map_err(|e| e.to_string())?;
        ensure(b.verify_lower_bound() == Ok(Some(true)), || {
            format!("g = {g}: witness does not verify")
        })?;
        let order = psl_group(p).map_err(|e| e.to_string())?.order() as u64;
        ensure(order == t, || format!("|PSL(2,{p})| = {order}"))?;
        let (a, bm) = build_generating_pair(p, 12).map_err(|e| e.to_string())?;
        let sl = closure_order(p, &a, &bm, 101).map_err(|e| e.to_string())?;
        ensure(sl == 2 * t, || format!("|SL(2,{p})| = {sl}"))?;
    }
    Ok("t(276) = 660 via PSL(2,11), t(456) = 1092 via PSL(2,13); closures 660, 1092".into())
}

fn infinity_families() -> Check {
    let mut cases = Vec::new();
    let ps: Vec<u64> = primes_up_to(199).into_iter().filter(|&p| p >= 5).collect();
    cases.extend(ps.iter().map(|&p| (p + 1, 2 * p)));
    let small: Vec<u64> = ps.iter().copied().filter(|&p| p <= 31).collect();
    for (i, &p) in small.iter().enumerate() {
        cases.extend(small[i + 1..].iter().map(|&q| (p * q + 1, 2 * p * q)));
    }
    cases.extend([7u64, 13, 17].map(|p| (p * p + 1, 2 * p * p)));
    for &(g, t) in &cases {
        let b = t_of_g(g, 0).map_err(|e| e.to_string())?;
        ensure(
            b.status == BoundStatus::Exact && b.lower == t && b.m == Candidate::Infinity,
            || format!("g = {g}: {:?} {} m = {}", b.status, b.lower, b.m),
        )?;
    }
    Ok(format!("{} genera with t(g) = 2(g − 1) exact", cases.len()))
}

fn progressions() -> Check {
    let expect: [(u64, u64, &[u64]); 2] = [
        (5, 72, &[11, 13, 59, 61]),
        (11, 720, &[23, 167, 263, 313, 407, 457, 553, 697]),
    ];
    let mut five = Vec::new();
    for (m, modulus, residues) in expect {
        let v = cli_json(&["progression", &m.to_string()])?;
        let got: Vec<u64> = v["residues"]
            .as_array()
            .into_iter()
            .flatten()
            .filter_map(Value::as_u64)
            .collect();
        ensure(v["modulus"] == modulus && got == residues, || format!("m = {m}: {v}"))?;
        if m == 5 {
            five = got;
        }
    }
    let mut hits = 0;
    for p in primes_up_to(100_000) {
        if five.contains(&(p % 72)) {
            let num = p * p - 1;
            ensure(num % 24 == 0, || format!("p = {p}: 24 ∤ p² − 1"))?;
            let z = num / 24;
            ensure(z % 2 == 1 && z % 3 != 0, || format!("p = {p}: z = {z}"))?;
            hits += 1;
        }
    }
    Ok(format!("residue sets match; {hits} primes ≤ 10^5 checked for m = 5"))
}

fn psl_genera() -> Check {
    let rows: [(u64, u64, u128, u128); 7] = [
        (5, 11, 276, 660),
        (11, 23, 2784, 6072),
        (17, 37, 11952, 25308),
        (23, 47, 24864, 51888),
        (29, 59, 49620, 102660),
        (41, 83, 139524, 285852),
        (53, 107, 300564, 612468),
    ];
    for (m, p, g, n) in rows {
        let q = smallest_prime_in_progression(m).map_err(|e| e.to_string())?;
        let pp = q as u128;
        let (gg, nn) = (psl_family_genus(m, q, 1), pp * (pp * pp - 1) / 2);
        ensure((q, gg, nn) == (p, g, n), || {
            format!("m = {m}: p = {q}, g = {gg}, n = {nn}")
        })?;
    }
    Ok("7 rows match".into())
}

fn appendix_b() -> Check {
    let r = verify_appendix_b(99, 24).map_err(|e| e.to_string())?;
    ensure(r.pairs == 49 * 24, || format!("{} pairs", r.pairs))?;
    ensure(r.disagreements.is_empty(), || {
        format!("disagreements {:?}", r.disagreements)
    })?;
    ensure(r.bad_witnesses.is_empty(), || {
        format!("bad witnesses {:?}", r.bad_witnesses)
    })?;
    Ok(format!("{} pairs, {} with witnesses, all agree", r.pairs, r.exists))
}

fn sl2_pairs() -> Check {
    let cases: Vec<(u64, u64)> = primes_up_to(101)
        .into_iter()
        .filter(|&p| p >= 17)
        .flat_map(|p| {
            (6..=14u64)
                .filter(move |d| p % d == 1 || p % d == d - 1)
                .map(move |d| (p, d))
        })
        .collect();
    let failures: Vec<String> = cases
        .par_iter()
        .filter_map(|&(p, d)| {
            let check = || -> Result<bool, String> {
                let (a, b) = build_generating_pair(p, d).map_err(|e| e.to_string())?;
                let c = mat_order(&commutator(&a, &b).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
                let n = closure_order(p, &a, &b, 101).map_err(|e| e.to_string())?;
                Ok(c == d && n == p * (p * p - 1))
            };
            match check() {
                Ok(true) => None,
                Ok(false) => Some(format!("({p}, {d})")),
                Err(e) => Some(format!("({p}, {d}): {e}")),
            }
        })
        .collect();
    ensure(failures.is_empty(), || format!("failed {failures:?}"))?;
    Ok(format!(
        "{} pairs (p, d) generate SL(2, p) with ord([A, B]) = d",
        cases.len()
    ))
}

fn enumerator() -> Check {
    let per_n: Vec<(u64, Vec<Stratum>)> = (1..=33u64)
        .into_par_iter()
        .map(|n| -> Result<(u64, Vec<Stratum>), String> {
            let ws = enumerate_regular(n as usize, EnumLimits::default()).map_err(|e| e.to_string())?;
            for w in &ws {
                let total = w.stratum.total_order();
                ensure(
                    w.origami.is_regular() && w.origami.degree() as u64 == n && total + 2 == 2 * w.genus,
                    || format!("n = {n}: {}", w.origami),
                )?;
            }
            Ok((n, ws.into_iter().map(|w| w.stratum).collect()))
        })
        .collect::<Result<_, _>>()?;
    let has = |n: u64, s: &Stratum| per_n[(n - 1) as usize].1.contains(s);
    for g in 2..=12u64 {
        let found = has(2 * g, &Stratum::uniform(g - 1, 2).unwrap());
        ensure(found == (g % 2 == 1), || format!("H({}^2): found = {found}", g - 1))?;
    }
    for l in 1..=11u64 {
        let found = has(3 * l, &Stratum::uniform(2, l).unwrap());
        ensure(found == (l % 2 == 0 || l % 9 == 0), || {
            format!("H(2^{l}): found = {found}")
        })?;
    }
    let total: usize = per_n.iter().map(|(_, s)| s.len()).sum();
    Ok(format!("{total} witnesses for n ≤ 33, both existence rules hold"))
}

fn one_cylinders() -> Check {
    for g in 2..=50u64 {
        let o = one_cylinder(g).map_err(|e| e.to_string())?;
        ensure(o.stratum() == Stratum::uniform(1, 2 * g - 2).unwrap(), || {
            format!("g = {g}: {}", o.stratum())
        })?;
        let t = o.translation_group();
        let n = 2 * g - 2;
        let cyclic_t = t.order() as u64 == n && (0..t.order()).any(|a| t.element_order(a) == n);
        ensure(cyclic_t, || {
            format!("g = {g}: translation group of order {}", t.order())
        })?;
        if g == 3 {
            ensure(t.is_isomorphic(&cyclic(4), 64) == Ok(true), || "g = 3: not Z/4".into())?;
        }
    }
    Ok("g = 2..50 in H(1^(2g−2)) with cyclic translation group of order 2(g − 1)".into())
}

/// Closed forms as stated for the 2-groups with a cyclic subgroup of index two.
fn stated_aut_order(fam: TwoGroupFamily, alpha: u32) -> u64 {
    match (fam, alpha) {
        (TwoGroupFamily::Cyclic, a) => 1 << (a - 1),
        (TwoGroupFamily::CyclicTimesZ2, 2) => 6,
        (TwoGroupFamily::CyclicTimesZ2, a) => 1 << a,
        (TwoGroupFamily::Dicyclic, 3) => 24,
        (TwoGroupFamily::Dihedral | TwoGroupFamily::Dicyclic, a) => 1 << (2 * a - 1),
        (TwoGroupFamily::SemiDihedral, a) => 1 << (2 * a - 4),
        (TwoGroupFamily::Modular, a) => 1 << a,
    }
}

fn automorphisms() -> Check {
    let v4 = direct_product(&cyclic(2), &cyclic(2));
    let q8 = two_group(TwoGroupFamily::Dicyclic, 3).map_err(|e| e.to_string())?;
    let (a_v4, a_q8) = (v4.automorphism_count(64), q8.automorphism_count(64));
    ensure(a_v4 == Ok(6) && a_q8 == Ok(24), || {
        format!("|Aut(V4)| = {a_v4:?}, |Aut(Q8)| = {a_q8:?}")
    })?;
    let mut checked = 0;
    let mut off = Vec::new();
    for fam in TwoGroupFamily::ALL {
        for alpha in fam.min_alpha().max(2)..=6 {
            let g = two_group(fam, alpha).map_err(|e| e.to_string())?;
            let count = g.automorphism_count(64).map_err(|e| e.to_string())?;
            checked += 1;
            if count != stated_aut_order(fam, alpha) {
                off.push(format!(
                    "{fam}({}): {count} vs {}",
                    1u64 << alpha,
                    stated_aut_order(fam, alpha)
                ));
            }
        }
    }
    ensure(off.is_empty(), || {
        format!("{} of {checked} differ: {}", off.len(), off.join(", "))
    })?;
    Ok(format!("{checked} groups match, V4 = 6, Q8 = 24"))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        (1, "sophie germain exact values", 5, sophie_germain),
        (2, "psl rows", 30, psl_rows),
        (3, "infinite families", 60, infinity_families),
        (4, "crt progressions", 5, progressions),
        (5, "psl genus table", 10, psl_genera),
        (6, "semidirect criterion", 300, appendix_b),
        (7, "sl(2, p) pairs", 600, sl2_pairs),
        (8, "enumerator cross-checks", 900, enumerator),
        (9, "one-cylinder family", 5, one_cylinders),
        (10, "automorphism counts", 120, automorphisms),
    ];
    let mut unexpected = Vec::new();
    for (id, name, budget, check) in criteria {
        let start = Instant::now();
        let result = check();
        let elapsed = start.elapsed();
        let result = match result {
            Ok(d) if elapsed > Duration::from_secs(budget) => Err(format!("{d}; over the {budget} s budget")),
            r => r,
        };
        let known = KNOWN_FAILURES.iter().find(|(k, _)| *k == id).map(|(_, why)| *why);
        let (verdict, detail) = match &result {
            Ok(d) => ("PASS", d.clone()),
            Err(e) => ("FAIL", e.clone()),
        };
        println!(
            "criterion {id:>2} {verdict} {:>8.2}s / {budget}s  {name}: {detail}",
            elapsed.as_secs_f64()
        );
        if result.is_err() {
            match known {
                Some(why) => println!("             known discrepancy: {why}"),
                None => unexpected.push(id),
            }
        }
    }
    if unexpected.is_empty() {
        println!("acceptance: no unexpected failures");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: unexpected failures {unexpected:?}");
        ExitCode::FAILURE
    }
}
