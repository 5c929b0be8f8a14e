//! 2×2 matrices over `F_p`, generating pairs of `SL(2, p)` and the
//! `PSL(2, p) × Z/k` witness family.

use std::fmt;
use std::str::FromStr;

use crate::error::{NumError, Sl2Error};
use crate::group::FiniteGroup;
use crate::numtheory::{factorize, inv_mod, is_prime, mul_mod, mult_order, progression_contains, sum_two_squares};
use crate::origami::extend_by_cyclic;
use crate::perm::Perm;

/// Largest prime for which `closure_order` enumerates `SL(2, p)`.
pub const DEFAULT_CLOSURE_CAP: u64 = 101;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Mat2 {
    pub p: u64,
    pub a: u64,
    pub b: u64,
    pub c: u64,
    pub d: u64,
}

fn red(x: i64, p: u64) -> u64 {
    x.rem_euclid(p as i64) as u64
}

impl Mat2 {
    pub fn new(p: u64, a: i64, b: i64, c: i64, d: i64) -> Self {
        Mat2 {
            p,
            a: red(a, p),
            b: red(b, p),
            c: red(c, p),
            d: red(d, p),
        }
    }

    pub fn identity(p: u64) -> Self {
        Mat2::new(p, 1, 0, 0, 1)
    }

    pub fn diag(p: u64, x: u64, y: u64) -> Self {
        Mat2::new(p, x as i64, 0, 0, y as i64)
    }

    pub fn trace(&self) -> u64 {
        (self.a + self.d) % self.p
    }

    pub fn det(&self) -> u64 {
        let p = self.p;
        (mul_mod(self.a, self.d, p) + p - mul_mod(self.b, self.c, p)) % p
    }

    pub fn is_special(&self) -> bool {
        self.det() == 1 % self.p
    }

    pub fn neg(&self) -> Self {
        let p = self.p;
        Mat2 {
            p,
            a: (p - self.a) % p,
            b: (p - self.b) % p,
            c: (p - self.c) % p,
            d: (p - self.d) % p,
        }
    }

    pub fn is_scalar_identity(&self) -> bool {
        *self == Mat2::identity(self.p) || *self == Mat2::identity(self.p).neg()
    }

    pub fn mul(&self, o: &Mat2) -> Result<Mat2, Sl2Error> {
        if self.p != o.p {
            return Err(Sl2Error::ModulusMismatch);
        }
        Ok(self.mul_unchecked(o))
    }

    fn mul_unchecked(&self, o: &Mat2) -> Mat2 {
        let p = self.p;
        let f = |x: u64, y: u64, z: u64, w: u64| (mul_mod(x, y, p) + mul_mod(z, w, p)) % p;
        Mat2 {
            p,
            a: f(self.a, o.a, self.b, o.c),
            b: f(self.a, o.b, self.b, o.d),
            c: f(self.c, o.a, self.d, o.c),
            d: f(self.c, o.b, self.d, o.d),
        }
    }

    pub fn inverse(&self) -> Result<Mat2, Sl2Error> {
        let p = self.p;
        let di = inv_mod(self.det(), p).ok_or(Sl2Error::NotSpecialLinear)?;
        Ok(Mat2 {
            p,
            a: mul_mod(self.d, di, p),
            b: mul_mod((p - self.b) % p, di, p),
            c: mul_mod((p - self.c) % p, di, p),
            d: mul_mod(self.a, di, p),
        })
    }

    pub fn pow(&self, mut e: u64) -> Mat2 {
        let mut acc = Mat2::identity(self.p);
        let mut base = *self;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_unchecked(&base);
            }
            base = base.mul_unchecked(&base);
            e >>= 1;
        }
        acc
    }

    fn code(&self) -> usize {
        let p = self.p as usize;
        ((self.a as usize * p + self.b as usize) * p + self.c as usize) * p + self.d as usize
    }
}

impl fmt::Display for Mat2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{},{}],[{},{}]]@{}", self.a, self.b, self.c, self.d, self.p)
    }
}

impl FromStr for Mat2 {
    type Err = Sl2Error;

    fn from_str(s: &str) -> Result<Self, Sl2Error> {
        let bad = || Sl2Error::Parse(s.to_string());
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let (body, p) = compact.split_once('@').ok_or_else(bad)?;
        let p: u64 = p.parse().map_err(|_| bad())?;
        let nums: Vec<i64> = body
            .split(['[', ']', ','])
            .filter(|x| !x.is_empty())
            .map(|x| x.parse().map_err(|_| bad()))
            .collect::<Result<_, _>>()?;
        if nums.len() != 4 || p < 2 {
            return Err(bad());
        }
        Ok(Mat2::new(p, nums[0], nums[1], nums[2], nums[3]))
    }
}

/// Multiplicative order, capped at `p(p² − 1)`.
pub fn mat_order(m: &Mat2) -> Result<u64, Sl2Error> {
    let cap = m.p * (m.p * m.p - 1);
    let id = Mat2::identity(m.p);
    let mut x = *m;
    let mut k = 1;
    while x != id {
        if k >= cap {
            return Err(Sl2Error::NotSpecialLinear);
        }
        x = x.mul_unchecked(m);
        k += 1;
    }
    Ok(k)
}

/// Order of the image of `m` in `PSL(2, p)`.
pub fn psl_order(m: &Mat2) -> Result<u64, Sl2Error> {
    let full = mat_order(m)?;
    Ok(if full % 2 == 0 && m.pow(full / 2) == Mat2::identity(m.p).neg() {
        full / 2
    } else {
        full
    })
}

/// `[A, B] = A B A⁻¹ B⁻¹`.
pub fn commutator(a: &Mat2, b: &Mat2) -> Result<Mat2, Sl2Error> {
    let ab = a.mul(b)?;
    ab.mul(&a.inverse()?)?.mul(&b.inverse()?)
}

/// An element of order `d` in `SL(2, p)`: `diag(λ, λ⁻¹)` with `λ` the least
/// element of order `d` when `p ≡ 1 (mod d)`, otherwise the companion matrix
/// `[[t, −1], [1, 0]]` with the least suitable `t` when `p ≡ −1 (mod d)`.
pub fn order_d_element(p: u64, d: u64) -> Result<Mat2, Sl2Error> {
    if !is_prime(p) || d < 3 {
        return Err(Sl2Error::PreconditionViolated(format!(
            "need prime p and d >= 3, got ({p}, {d})"
        )));
    }
    if p % d == 1 {
        let lam = (2..p)
            .find(|&l| mult_order(l, p) == Some(d))
            .ok_or_else(|| Sl2Error::InternalAssertion("no element of order d".into()))?;
        let inv = inv_mod(lam, p).expect("nonzero mod p");
        Ok(Mat2::diag(p, lam, inv))
    } else if p % d == d - 1 {
        (0..p)
            .map(|t| Mat2::new(p, t as i64, -1, 1, 0))
            .find(|m| mat_order(m).ok() == Some(d))
            .ok_or_else(|| Sl2Error::InternalAssertion("no companion matrix of order d".into()))
    } else {
        Err(Sl2Error::PreconditionViolated(format!("p = {p} is not ±1 mod {d}")))
    }
}

fn check_pair(p: u64, a: &Mat2, b: &Mat2) -> Result<(), Sl2Error> {
    if a.p != p || b.p != p {
        return Err(Sl2Error::ModulusMismatch);
    }
    if !a.is_special() || !b.is_special() {
        return Err(Sl2Error::NotSpecialLinear);
    }
    Ok(())
}

/// Generation test for `SL(2, p)`: at least two of `tr A`, `tr B`, `tr AB`
/// nonzero, `tr [A, B] ≠ 2`, and `⟨A, B⟩` not inside one of the exceptional
/// subgroups (preimages of `A4`, `S4`, `A5`, at most 120 elements). A
/// commutator of order below 6 is rejected outright; order 6 alone does not
/// exclude the binary octahedral group, so that case is settled by a
/// closure bounded at 120 elements.
pub fn mw_generates(p: u64, a: &Mat2, b: &Mat2) -> Result<bool, Sl2Error> {
    if p < 11 || !is_prime(p) {
        return Err(Sl2Error::PreconditionViolated(format!("need prime p >= 11, got {p}")));
    }
    check_pair(p, a, b)?;
    let k = commutator(a, b)?;
    let ord = mat_order(&k)?;
    if ord < 6 {
        return Err(Sl2Error::OrderTooSmall(ord));
    }
    let nonzero = [a.trace(), b.trace(), a.mul(b)?.trace()]
        .iter()
        .filter(|&&t| t != 0)
        .count();
    Ok(nonzero >= 2 && k.trace() != 2 % p && !small_closure(a, b, EXCEPTIONAL_BOUND))
}

const EXCEPTIONAL_BOUND: usize = 120;

/// Whether `⟨A, B⟩` has at most `bound` elements.
fn small_closure(a: &Mat2, b: &Mat2, bound: usize) -> bool {
    let mut seen = std::collections::HashSet::new();
    let id = Mat2::identity(a.p);
    seen.insert(id);
    let mut queue = vec![id];
    let mut i = 0;
    while i < queue.len() {
        for g in [a, b] {
            let y = queue[i].mul_unchecked(g);
            if seen.insert(y) {
                if seen.len() > bound {
                    return false;
                }
                queue.push(y);
            }
        }
        i += 1;
    }
    true
}

/// Order of `⟨A, B⟩ ≤ SL(2, p)` by breadth-first closure.
pub fn closure_order(p: u64, a: &Mat2, b: &Mat2, cap: u64) -> Result<u64, Sl2Error> {
    if p > cap {
        return Err(Sl2Error::TooLarge { p, cap });
    }
    check_pair(p, a, b)?;
    let size = (p as usize).pow(4);
    let mut seen = vec![0u64; size / 64 + 1];
    let mark = |seen: &mut Vec<u64>, i: usize| -> bool {
        let (w, bit) = (i / 64, 1u64 << (i % 64));
        let fresh = seen[w] & bit == 0;
        seen[w] |= bit;
        fresh
    };
    let id = Mat2::identity(p);
    mark(&mut seen, id.code());
    let mut queue = vec![id];
    let mut i = 0;
    while i < queue.len() {
        let x = queue[i];
        for g in [a, b] {
            let y = x.mul_unchecked(g);
            if mark(&mut seen, y.code()) {
                queue.push(y);
            }
        }
        i += 1;
    }
    Ok(queue.len() as u64)
}

/// A pair `(A, B)` generating `SL(2, p)` with `[A, B]` of order `d`, and
/// `B = [[0, −1], [1, 0]]`. Needs `p > 13`, `d ≥ 6`, `p ≡ ±1 (mod d)`; the
/// pairs for `p ∈ {11, 13}` with `d = 12` are fixed matrices.
pub fn build_generating_pair(p: u64, d: u64) -> Result<(Mat2, Mat2), Sl2Error> {
    let bmat = Mat2::new(p, 0, -1, 1, 0);
    if d == 12 && (p == 11 || p == 13) {
        let a = if p == 11 {
            Mat2::new(p, 1, 2, 0, 1)
        } else {
            Mat2::new(p, 2, 4, 0, 7)
        };
        return Ok((a, bmat));
    }
    if p <= 13 || !is_prime(p) || d < 6 || (p % d != 1 && p % d != d - 1) {
        return Err(Sl2Error::PreconditionViolated(format!(
            "need prime p > 13, d >= 6, p ≡ ±1 mod d; got ({p}, {d})"
        )));
    }
    let m = order_d_element(p, d)?;
    let x = m.trace();
    let inv2 = inv_mod(2, p).expect("p odd");
    let (r1, r2) = sum_two_squares(p, (mul_mod(x, x, p) + p - 4) % p)?;
    let (big_s, t) = [r1, r2]
        .into_iter()
        .find(|&(_, t)| t != x && t != (p - x) % p)
        .ok_or_else(|| Sl2Error::InternalAssertion("both representations have t = ±x".into()))?;
    let s = mul_mod(big_s, inv2, p);
    let u = mul_mod((x + t) % p, inv2, p);
    let u_inv = inv_mod(u, p).ok_or_else(|| Sl2Error::InternalAssertion("u = 0".into()))?;
    let (q1, q2) = sum_two_squares(p, u)?;
    for (a, c) in [q1, q2] {
        let a_inv = inv_mod(a, p).expect("nonzero");
        for eps in [1u64, p - 1] {
            let num = (p - c + mul_mod(eps, mul_mod(a, s, p), p)) % p;
            let b = mul_mod(num, u_inv, p);
            let dd = mul_mod((1 + mul_mod(b, c, p)) % p, a_inv, p);
            if (a + dd) % p != 0 && (b + p - c) % p != 0 {
                let amat = Mat2 { p, a, b, c, d: dd };
                if mw_generates(p, &amat, &bmat)? {
                    verify_pair(p, d, &amat, &bmat)?;
                    return Ok((amat, bmat));
                }
            }
        }
    }
    Err(Sl2Error::InternalAssertion(format!(
        "no choice of representation and sign generates SL(2, {p}) for d = {d}"
    )))
}

fn verify_pair(p: u64, d: u64, a: &Mat2, b: &Mat2) -> Result<(), Sl2Error> {
    let fail = |what: &str| Sl2Error::InternalAssertion(format!("{what} for p = {p}, d = {d}, A = {a}"));
    if !a.is_special() {
        return Err(fail("det A != 1"));
    }
    if mat_order(&commutator(a, b)?)? != d {
        return Err(fail("commutator order differs"));
    }
    if !mw_generates(p, a, b)? {
        return Err(fail("trace conditions fail"));
    }
    Ok(())
}

/// The permutation of `P¹(F_p)` induced by `m`; the point at infinity is `p`.
pub fn psl_perm(m: &Mat2) -> Perm {
    let p = m.p;
    let n = p as usize + 1;
    let image = |z: usize| -> usize {
        if z == p as usize {
            return if m.c == 0 {
                p as usize
            } else {
                mul_mod(m.a, inv_mod(m.c, p).expect("nonzero"), p) as usize
            };
        }
        let z = z as u64;
        let den = (mul_mod(m.c, z, p) + m.d) % p;
        if den == 0 {
            p as usize
        } else {
            let num = (mul_mod(m.a, z, p) + m.b) % p;
            mul_mod(num, inv_mod(den, p).expect("nonzero"), p) as usize
        }
    };
    Perm::from_fn(n, image).expect("Möbius maps are bijective")
}

/// `PSL(2, p)` acting on the projective line, generated by
/// `[[1, 1], [0, 1]]` and `[[0, −1], [1, 0]]`.
pub fn psl_group(p: u64) -> Result<FiniteGroup, Sl2Error> {
    if !is_prime(p) || p < 5 {
        return Err(Sl2Error::PreconditionViolated(format!(
            "psl needs a prime p >= 5, got {p}"
        )));
    }
    let order = (p * (p * p - 1) / 2) as usize;
    let t = psl_perm(&Mat2::new(p, 1, 1, 0, 1));
    let s = psl_perm(&Mat2::new(p, 0, -1, 1, 0));
    Ok(FiniteGroup::closure_from_generators(
        format!("psl({p})"),
        &[t, s],
        order,
    )?)
}

/// A member of the `PSL(2, p) × Z/k` family together with its genus.
#[derive(Clone, Debug)]
pub struct PslWitness {
    pub m: u64,
    pub p: u64,
    pub k: u64,
    pub genus: u64,
    pub matrices: (Mat2, Mat2),
    pub group: FiniteGroup,
    pub x: usize,
    pub y: usize,
}

/// Genus of the regular origami of `PSL(2, p) × Z/k` with commutator order
/// `m + 1`: `k·m·p(p² − 1) / (4(m + 1)) + 1`.
pub fn psl_family_genus(m: u64, p: u64, k: u64) -> u128 {
    let p = p as u128;
    k as u128 * m as u128 * p * (p * p - 1) / (4 * (m as u128 + 1)) + 1
}

pub fn psl_family(m: u64, p: u64, k: u64) -> Result<PslWitness, Sl2Error> {
    if !progression_contains(m, p)? || !is_prime(p) {
        return Err(Sl2Error::PreconditionViolated(format!(
            "p = {p} is not admissible for m = {m}"
        )));
    }
    if k == 0 || factorize(k).iter().any(|&q| q < m) {
        return Err(Sl2Error::PreconditionViolated(format!(
            "k = {k} has a prime factor below m = {m}"
        )));
    }
    let (a, b) = build_generating_pair(p, 2 * (m + 1))?;
    let g = psl_group(p)?;
    let xa = g.perm_index(&psl_perm(&a)).expect("A lies in PSL");
    let yb = g.perm_index(&psl_perm(&b)).expect("B lies in PSL");
    let (group, x, y) = if k > 1 {
        extend_by_cyclic(&g, xa, yb, k)?
    } else {
        (g, xa, yb)
    };
    let genus = u64::try_from(psl_family_genus(m, p, k))
        .map_err(|_| Sl2Error::Num(NumError::PreconditionViolated("genus overflows".into())))?;
    Ok(PslWitness {
        m,
        p,
        k,
        genus,
        matrices: (a, b),
        group,
        x,
        y,
    })
}
