//! Existence of regular origamis in a given stratum.

use std::collections::HashMap;
use std::fmt;

use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};

use crate::descriptor::{Coord, GroupDesc, Witness};
use crate::error::Error;
use crate::numtheory::{is_prime, prime_divisors, primes_up_to, semidirect_exists, valuation, SemidirectSpec};
use crate::origami::regular_origami;
use crate::sl2::{build_generating_pair, commutator, psl_order, Mat2};
use crate::stratum::Stratum;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Exists,
    NotExists,
    Unknown,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Exists => "exists",
            Status::NotExists => "not_exists",
            Status::Unknown => "unknown",
        })
    }
}

/// Why a stratum has no regular origami.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Reason {
    /// Regular origamis have all zeros of the same order.
    NonUniform,
    /// `H(2^ℓ)` with `ℓ` odd needs `9 | ℓ`.
    H2NotDivisibleBy9,
    /// `H(k^2)` with `k` odd: the genus is even.
    GEven,
    /// `H(k^(2q))`, `k` odd, `q > 3` prime.
    KOddL2qQGt3,
    /// `H(k^6)`, `k` odd, the prime-factor condition on `(k+1)/2` or
    /// `(k+1)/4` fails.
    KOddL6Criterion,
    /// `H(k^q)`, `k` even, `q` prime: some prime of `k+1` is not `1 mod q`.
    KEvenQPrimeFactors,
    /// `H(2g−2)`.
    MinimalStratum,
    /// `m = 2^α − 1` with `g ∉ G(1)`.
    MersenneM,
    /// `m = 1`, `g − 1` neither even nor divisible by 3.
    CitedG1,
    /// The exhaustive enumerator found no regular origami in the stratum.
    ExhaustiveSearch,
}

impl Reason {
    pub fn tag(self) -> &'static str {
        match self {
            Reason::NonUniform => "non_uniform",
            Reason::H2NotDivisibleBy9 => "h2_l_odd_not_div_9",
            Reason::GEven => "g_even",
            Reason::KOddL2qQGt3 => "k_odd_l_2q_q_gt_3",
            Reason::KOddL6Criterion => "k_odd_l_6_criterion",
            Reason::KEvenQPrimeFactors => "k_even_l_q_prime_factors",
            Reason::MinimalStratum => "minimal_stratum",
            Reason::MersenneM => "m_2alpha_minus_1",
            Reason::CitedG1 => "cited_g1",
            Reason::ExhaustiveSearch => "exhaustive_search",
        }
    }
}

impl fmt::Display for Reason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl Serialize for Reason {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(self.tag())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verdict {
    pub stratum: Stratum,
    pub status: Status,
    pub witness: Option<Witness>,
    pub reason: Option<Reason>,
}

impl Verdict {
    pub(crate) fn exists(stratum: Stratum, w: Witness) -> Self {
        Verdict {
            stratum,
            status: Status::Exists,
            witness: Some(w),
            reason: None,
        }
    }

    pub(crate) fn not_exists(stratum: Stratum, r: Reason) -> Self {
        Verdict {
            stratum,
            status: Status::NotExists,
            witness: None,
            reason: Some(r),
        }
    }

    pub(crate) fn unknown(stratum: Stratum) -> Self {
        Verdict {
            stratum,
            status: Status::Unknown,
            witness: None,
            reason: None,
        }
    }

    /// Materializes the witness and checks that its regular origami lies in
    /// the queried stratum. `Ok(false)` when there is no witness.
    pub fn check_witness(&self) -> Result<bool, Error> {
        let Some(w) = &self.witness else { return Ok(false) };
        let (g, x, y) = w.materialize()?;
        Ok(regular_origami(&g, x, y)?.stratum() == self.stratum)
    }
}

impl Serialize for Verdict {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(None)?;
        map.serialize_entry("stratum", &self.stratum)?;
        map.serialize_entry("status", &self.status)?;
        if let Some(w) = &self.witness {
            map.serialize_entry("witness", &w.group)?;
            map.serialize_entry("generators", &w.generators)?;
        }
        if let Some(r) = &self.reason {
            map.serialize_entry("reason", r)?;
        }
        map.end()
    }
}

/// Decides whether the stratum contains a regular origami.
pub fn decide(stratum: &Stratum) -> Result<Verdict, Error> {
    if stratum.is_empty() {
        return Err(Error::EmptyStratum);
    }
    let Some((k, l)) = stratum.as_uniform() else {
        return Ok(Verdict::not_exists(stratum.clone(), Reason::NonUniform));
    };
    if stratum.total_order() % 2 != 0 {
        return Err(Error::StratumParse(format!("total order of {stratum} is odd")));
    }
    let mut memo = HashMap::new();
    Ok(decide_uniform(k, l, &mut memo))
}

fn all_primes_one_mod(n: u64, q: u64) -> bool {
    prime_divisors(n).into_iter().all(|p| p % q == 1)
}

fn decide_uniform(k: u64, l: u64, memo: &mut HashMap<(u64, u64), Verdict>) -> Verdict {
    if let Some(v) = memo.get(&(k, l)) {
        return v.clone();
    }
    let v = decide_uncached(k, l, memo);
    memo.insert((k, l), v.clone());
    v
}

fn decide_uncached(k: u64, l: u64, memo: &mut HashMap<(u64, u64), Verdict>) -> Verdict {
    let stratum = Stratum::uniform(k, l).expect("kℓ is even");
    let exists = |w: Witness| Verdict::exists(stratum.clone(), w);
    let no = |r: Reason| Verdict::not_exists(stratum.clone(), r);

    // Dihedral group of order 2(k+1), lifted by Z/(ℓ/2).
    if k % 2 == 0 && l % 2 == 0 {
        let base = Witness::semidirect(SemidirectSpec { m: k + 1, n: 2, d: k });
        if let Ok(w) = base.extend(l / 2) {
            return exists(w);
        }
    }
    if l == 4 {
        let m = 2 * (k + 1);
        return exists(Witness::semidirect(SemidirectSpec { m, n: 2, d: m - 1 }));
    }
    if k == 2 && l % 2 == 1 {
        if l % 9 != 0 {
            return no(Reason::H2NotDivisibleBy9);
        }
        let alpha = valuation(l, 3);
        let three = 3u64.pow(alpha);
        let base = Witness::semidirect(SemidirectSpec {
            m: three,
            n: 3,
            d: three / 3 + 1,
        });
        return match base.extend(l / three) {
            Ok(w) => exists(w),
            Err(_) => Verdict::unknown(stratum),
        };
    }
    if l == 2 && k % 2 == 1 {
        return no(Reason::GEven);
    }
    if k % 2 == 1 && l % 2 == 0 && is_prime(l / 2) && l / 2 > 2 {
        let q = l / 2;
        if q > 3 {
            return no(Reason::KOddL2qQGt3);
        }
        if k % 4 == 1 {
            let lambda = (k + 1) / 2;
            if all_primes_one_mod(lambda, 3) {
                return exists(Witness {
                    group: GroupDesc::Klein(lambda),
                    generators: [
                        Coord::Tuple(vec![
                            Coord::Tuple(vec![Coord::Int(1), Coord::Int(1), Coord::Int(0)]),
                            Coord::Int(0),
                        ]),
                        Coord::Tuple(vec![
                            Coord::Tuple(vec![Coord::Int(0), Coord::Int(0), Coord::Int(1)]),
                            Coord::Int(1),
                        ]),
                    ],
                });
            }
        } else {
            let lambda = (k + 1) / 4;
            if all_primes_one_mod(lambda, 3) {
                return exists(Witness {
                    group: GroupDesc::Q8w(lambda),
                    generators: [
                        Coord::Tuple(vec![Coord::pair(1, 1), Coord::Int(0)]),
                        Coord::Tuple(vec![Coord::pair(0, 3), Coord::Int(1)]),
                    ],
                });
            }
        }
        return no(Reason::KOddL6Criterion);
    }
    if k % 2 == 0 && l % 2 == 1 && is_prime(l) {
        return match semidirect_exists(k + 1, l) {
            Ok(Some(spec)) if all_primes_one_mod(k + 1, l) => exists(Witness::semidirect(spec)),
            _ => no(Reason::KEvenQPrimeFactors),
        };
    }
    if l == 1 {
        return no(Reason::MinimalStratum);
    }
    let u = k + 1;
    if u.is_power_of_two() && u >= 4 && l % 4 == 2 && (l * (u - 1)) % 3 != 0 {
        return no(Reason::MersenneM);
    }
    if u % 2 == 1 {
        if let Ok(Some(spec)) = semidirect_exists(u, l) {
            return exists(Witness::semidirect(spec));
        }
    }
    if let Some(w) = psl_rule(k, l) {
        return exists(w);
    }
    for s in crate::numtheory::divisors(l).into_iter().rev().skip(1) {
        if (k * s) % 2 != 0 {
            continue;
        }
        let base = decide_uniform(k, s, memo);
        if let Some(w) = base.witness {
            if let Ok(lifted) = w.extend(l / s) {
                return exists(lifted);
            }
        }
    }
    Verdict::unknown(stratum)
}

/// `PSL(2, p) × Z/j` with commutator of order `k + 1`, when
/// `(k + 1)ℓ = j·|PSL(2, p)|` and `p ≡ ±1 (mod 2(k + 1))`.
fn psl_rule(k: u64, l: u64) -> Option<Witness> {
    if k < 2 {
        return None;
    }
    let n = (k as u128 + 1) * l as u128;
    let d = 2 * (k + 1);
    let mut bound = 11u64;
    while (bound as u128).pow(3) / 2 <= n {
        bound += 1;
    }
    for p in primes_up_to(bound).into_iter().filter(|&p| p >= 11) {
        let order = p as u128 * (p as u128 * p as u128 - 1) / 2;
        if n % order != 0 || (p % d != 1 && p % d != d - 1) {
            continue;
        }
        let Ok((a, b)) = build_generating_pair(p, d) else {
            continue;
        };
        let Ok(c) = commutator(&a, &b) else { continue };
        if psl_order(&c).ok() != Some(k + 1) {
            continue;
        }
        let coord = |m: &Mat2| {
            Coord::Tuple(vec![
                Coord::pair(m.a as i64, m.b as i64),
                Coord::pair(m.c as i64, m.d as i64),
            ])
        };
        let base = Witness {
            group: GroupDesc::Psl(p),
            generators: [coord(&a), coord(&b)],
        };
        if let Ok(w) = base.extend((n / order) as u64) {
            return Some(w);
        }
    }
    None
}
