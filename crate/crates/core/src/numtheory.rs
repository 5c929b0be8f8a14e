//! Elementary number theory: factoring, CRT, residue systems, sums of two
//! squares and the cyclic-by-cyclic existence criterion.

use serde::Serialize;

use crate::error::NumError;

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

pub fn lcm(a: u64, b: u64) -> u64 {
    if a == 0 || b == 0 {
        0
    } else {
        a / gcd(a, b) * b
    }
}

pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn pow_mod(mut base: u64, mut e: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut acc = 1u64;
    base %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        e >>= 1;
    }
    acc
}

/// Inverse of `a` modulo `m`, if it exists.
pub fn inv_mod(a: u64, m: u64) -> Option<u64> {
    let (mut old_r, mut r) = (a as i128 % m as i128, m as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    if old_r != 1 {
        return if m == 1 { Some(0) } else { None };
    }
    Some(old_s.rem_euclid(m as i128) as u64)
}

/// Prime factors with multiplicity, ascending, by trial division.
pub fn factorize(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2u64;
    while p * p <= n {
        while n % p == 0 {
            out.push(p);
            n /= p;
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// `(p, exponent)` pairs, ascending in `p`.
pub fn factor_powers(n: u64) -> Vec<(u64, u32)> {
    let mut out: Vec<(u64, u32)> = Vec::new();
    for p in factorize(n) {
        match out.last_mut() {
            Some((q, e)) if *q == p => *e += 1,
            _ => out.push((p, 1)),
        }
    }
    out
}

pub fn prime_divisors(n: u64) -> Vec<u64> {
    factor_powers(n).into_iter().map(|(p, _)| p).collect()
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

pub fn primes_up_to(n: u64) -> Vec<u64> {
    if n < 2 {
        return Vec::new();
    }
    let n = n as usize;
    let mut sieve = vec![true; n + 1];
    sieve[0] = false;
    sieve[1] = false;
    let mut i = 2;
    while i * i <= n {
        if sieve[i] {
            for j in (i * i..=n).step_by(i) {
                sieve[j] = false;
            }
        }
        i += 1;
    }
    (0..=n).filter(|&i| sieve[i]).map(|i| i as u64).collect()
}

/// Divisors in ascending order.
pub fn divisors(n: u64) -> Vec<u64> {
    let mut out = vec![1u64];
    for (p, e) in factor_powers(n) {
        let len = out.len();
        let mut pk = 1;
        for _ in 0..e {
            pk *= p;
            for i in 0..len {
                out.push(out[i] * pk);
            }
        }
    }
    out.sort_unstable();
    out
}

/// p-adic valuation.
pub fn valuation(mut n: u64, p: u64) -> u32 {
    let mut v = 0;
    while n != 0 && n % p == 0 {
        n /= p;
        v += 1;
    }
    v
}

/// Multiplicative order of `a` modulo `m`, or `None` when `gcd(a, m) > 1`.
pub fn mult_order(a: u64, m: u64) -> Option<u64> {
    if m == 1 {
        return Some(1);
    }
    if gcd(a % m, m) != 1 {
        return None;
    }
    let mut x = a % m;
    let mut k = 1;
    while x != 1 {
        x = mul_mod(x, a, m);
        k += 1;
    }
    Some(k)
}

/// Solves a system of congruences `x ≡ r (mod m)`, returning the residue and
/// the lcm of the moduli.
pub fn crt_solve(congruences: &[(u64, u64)]) -> Result<(u64, u64), NumError> {
    let mut r: i128 = 0;
    let mut m: i128 = 1;
    for &(ri, mi) in congruences {
        if mi == 0 {
            return Err(NumError::PreconditionViolated("zero modulus".into()));
        }
        let mi = mi as i128;
        let ri = ri as i128 % mi;
        let g = gcd(m as u64, mi as u64) as i128;
        let diff = ri - r;
        if diff.rem_euclid(g) != 0 {
            return Err(NumError::Incompatible);
        }
        let step = mi / g;
        let inv = inv_mod(((m / g) % step) as u64, step as u64).expect("coprime after dividing gcd") as i128;
        let t = (diff / g).rem_euclid(step) * inv % step;
        r += m * t;
        m *= step;
        r = r.rem_euclid(m);
    }
    Ok((r as u64, m as u64))
}

/// Square root modulo an odd prime, if `a` is a square.
pub fn sqrt_mod(a: u64, p: u64) -> Option<u64> {
    let a = a % p;
    if a == 0 {
        return Some(0);
    }
    if p == 2 {
        return Some(a);
    }
    if pow_mod(a, (p - 1) / 2, p) != 1 {
        return None;
    }
    let (mut q, mut s) = (p - 1, 0u32);
    while q % 2 == 0 {
        q /= 2;
        s += 1;
    }
    let z = (2..p).find(|&z| pow_mod(z, (p - 1) / 2, p) == p - 1)?;
    let mut m = s;
    let mut c = pow_mod(z, q, p);
    let mut t = pow_mod(a, q, p);
    let mut r = pow_mod(a, (q + 1) / 2, p);
    while t != 1 {
        let mut i = 0;
        let mut tt = t;
        while tt != 1 {
            tt = mul_mod(tt, tt, p);
            i += 1;
        }
        let b = pow_mod(c, 1 << (m - i - 1), p);
        m = i;
        c = mul_mod(b, b, p);
        t = mul_mod(t, c, p);
        r = mul_mod(r, b, p);
    }
    Some(r)
}

/// `(s, t)` with `s² + t²` in a given class.
pub type SquarePair = (u64, u64);

/// Two representations `a ≡ s² + t² (mod p)` with `s, t` nonzero and the
/// second pair's squares disjoint from the first pair's. Pairs are found in
/// the order of ascending `t`, then ascending `s`.
pub fn sum_two_squares(p: u64, a: u64) -> Result<(SquarePair, SquarePair), NumError> {
    if p < 17 || !is_prime(p) {
        return Err(NumError::PreconditionViolated(format!(
            "sum_two_squares needs a prime p >= 17, got {p}"
        )));
    }
    let a = a % p;
    let mut first: Option<(u64, u64)> = None;
    for t in 1..p {
        let rest = (a + p - mul_mod(t, t, p)) % p;
        let Some(root) = sqrt_mod(rest, p) else { continue };
        if root == 0 {
            continue;
        }
        let roots = [root.min(p - root), root.max(p - root)];
        for s in roots {
            match first {
                None => first = Some((s, t)),
                Some((s1, t1)) => {
                    let used = [mul_mod(s1, s1, p), mul_mod(t1, t1, p)];
                    let sq = [mul_mod(s, s, p), mul_mod(t, t, p)];
                    if sq.iter().all(|x| !used.contains(x)) {
                        return Ok(((s1, t1), (s, t)));
                    }
                }
            }
        }
    }
    Err(NumError::PreconditionViolated(format!(
        "no two disjoint representations of {a} mod {p}"
    )))
}

/// A finite set of residues modulo `modulus`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ResidueSystem {
    pub m: u64,
    pub modulus: u64,
    pub residues: Vec<u64>,
}

fn check_progression_m(m: u64) -> Result<(), NumError> {
    if m < 5 || !is_prime(m) || m % 3 != 2 {
        Err(NumError::InvalidM(m))
    } else {
        Ok(())
    }
}

/// Odd primes below `m` that constrain the progression (for `m = 11` the
/// prime 7 is not needed).
fn progression_primes(m: u64) -> Vec<u64> {
    primes_up_to(m - 1)
        .into_iter()
        .filter(|&q| q != 2 && !(m == 11 && q == 7))
        .collect()
}

/// `4 (m + 1) Q` where `Q` is the product of the constraining primes.
pub fn progression_modulus(m: u64) -> Result<u128, NumError> {
    check_progression_m(m)?;
    Ok(progression_primes(m)
        .into_iter()
        .fold(4 * (m as u128 + 1), |acc, q| acc * q as u128))
}

/// Membership of `p` in the residue system attached to `m`: `p ≡ ±1
/// (mod 2(m+1))`, `p` prime to the modulus, and `z = (p² − 1) / (4(m+1))` an
/// integer prime to 2 and to every constraining prime.
pub fn progression_contains(m: u64, p: u64) -> Result<bool, NumError> {
    check_progression_m(m)?;
    let two_m1 = 2 * (m + 1);
    if p % two_m1 != 1 && p % two_m1 != two_m1 - 1 {
        return Ok(false);
    }
    let qs = progression_primes(m);
    if p % 2 == 0 || qs.iter().any(|&q| p % q == 0) {
        return Ok(false);
    }
    let num = p as u128 * p as u128 - 1;
    let den = 4 * (m as u128 + 1);
    if num % den != 0 {
        return Ok(false);
    }
    let z = num / den;
    Ok(z % 2 == 1 && qs.iter().all(|&q| z % q as u128 != 0))
}

/// The residue system of admissible primes for `m`, assembled by CRT from
/// its prime-power components. Fails with `BudgetExceeded` when more than
/// `max_residues` residues would be produced.
pub fn progression_for_m(m: u64, max_residues: usize) -> Result<ResidueSystem, NumError> {
    check_progression_m(m)?;
    let modulus = progression_modulus(m)?;
    if modulus > u64::MAX as u128 {
        return Err(NumError::BudgetExceeded(modulus));
    }
    let alpha = valuation(m + 1, 2);
    let qs = progression_primes(m);
    let mut residues = Vec::new();
    for sign in [1i64, -1] {
        let mut comps: Vec<(u64, Vec<u64>)> = Vec::new();
        let two = 1u64 << (alpha + 2);
        comps.push((
            two,
            vec![((1u64 << (alpha + 1)) as i64 + sign).rem_euclid(two as i64) as u64],
        ));
        for &q in &qs {
            let beta = valuation(m + 1, q);
            if beta == 0 {
                comps.push((q, (2..q - 1).collect()));
            } else {
                let qb = q.pow(beta);
                let qb1 = qb * q;
                let classes = (1..q)
                    .map(|l| ((l * qb) as i64 + sign).rem_euclid(qb1 as i64) as u64)
                    .collect();
                comps.push((qb1, classes));
            }
        }
        let count: u128 = comps.iter().map(|(_, c)| c.len() as u128).product();
        if count * 2 > max_residues as u128 {
            return Err(NumError::BudgetExceeded(count * 2));
        }
        let mut partial: Vec<(u64, u64)> = vec![(0, 1)];
        for (md, classes) in &comps {
            let mut next = Vec::with_capacity(partial.len() * classes.len());
            for &(r, mm) in &partial {
                for &c in classes {
                    next.push(crt_solve(&[(r, mm), (c, *md)])?);
                }
            }
            partial = next;
        }
        residues.extend(partial.into_iter().map(|(r, _)| r));
    }
    residues.sort_unstable();
    residues.dedup();
    Ok(ResidueSystem {
        m,
        modulus: modulus as u64,
        residues,
    })
}

/// Smallest prime lying in the residue system for `m`.
pub fn smallest_prime_in_progression(m: u64) -> Result<u64, NumError> {
    check_progression_m(m)?;
    let step = 2 * (m + 1);
    let mut base = 0u64;
    loop {
        for p in [base.saturating_sub(1), base + 1] {
            if p > 1 && is_prime(p) && progression_contains(m, p)? {
                return Ok(p);
            }
        }
        base += step;
    }
}

/// Parameters of `Z/m ⋊_d Z/n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct SemidirectSpec {
    pub m: u64,
    pub n: u64,
    pub d: u64,
}

/// Decides whether some `Z/m ⋊_d Z/n` of order `uℓ` has derived subgroup of
/// order `u`, and builds one. `u` must be odd and at least 3.
///
/// The criterion: every `p^α ‖ u` has `p ≡ 1 (mod q)` for some prime `q | ℓ`,
/// or `p^(α+1) | ℓ`. Primes of the first kind use the smallest such `q`.
pub fn semidirect_exists(u: u64, l: u64) -> Result<Option<SemidirectSpec>, NumError> {
    if u < 3 || u % 2 == 0 || l == 0 {
        return Err(NumError::PreconditionViolated(format!(
            "semidirect_exists needs odd u >= 3 and l >= 1, got ({u}, {l})"
        )));
    }
    let lq = prime_divisors(l);
    let mut m = 1u64;
    let mut n = l;
    let mut congruences = Vec::new();
    for (p, alpha) in factor_powers(u) {
        let pa = p.pow(alpha);
        if let Some(&q) = lq.iter().find(|&&q| p % q == 1) {
            let d = (2..pa)
                .find(|&d| pow_mod(d, q, pa) == 1)
                .expect("cyclic unit group has elements of every order dividing p - 1");
            m *= pa;
            congruences.push((d, pa));
        } else if l % (pa * p) == 0 {
            let gamma = valuation(l, p);
            let pg = p.pow(gamma);
            m *= pg;
            n = n / pg * pa;
            congruences.push((1 + p.pow(gamma - alpha), pg));
        } else {
            return Ok(None);
        }
    }
    let (d, _) = crt_solve(&congruences)?;
    let spec = SemidirectSpec { m, n, d };
    if m as u128 * n as u128 != u as u128 * l as u128 || pow_mod(d, n, m) != 1 || gcd(d + m - 1, m) != m / u {
        return Err(NumError::InternalAssertion(format!(
            "bad witness {spec:?} for ({u}, {l})"
        )));
    }
    Ok(Some(spec))
}

/// Exhaustive search over all `(m, n, d)` with `mn = uℓ`.
pub fn semidirect_exists_brute(u: u64, l: u64) -> Option<SemidirectSpec> {
    let total = u * l;
    for m in divisors(total) {
        if m % u != 0 {
            continue;
        }
        let n = total / m;
        for d in 2..m {
            if gcd(d - 1, m) == m / u && pow_mod(d, n, m) == 1 {
                return Some(SemidirectSpec { m, n, d });
            }
        }
    }
    None
}
