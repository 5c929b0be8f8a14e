//! Cyclic, product and metacyclic groups, the 2-group families, and the two
//! order-3 extensions used as witnesses for `H(k^6)`.

use std::fmt;

use crate::error::ConstructionError;
use crate::group::{FiniteGroup, Repr};
use crate::numtheory::{gcd, inv_mod, pow_mod, SemidirectSpec};

pub fn cyclic(n: u64) -> FiniteGroup {
    assert!(n >= 1, "cyclic group of order 0");
    FiniteGroup::from_repr(
        format!("c({n})"),
        Repr::Metacyclic {
            k: n,
            l: 1,
            r: 0,
            dpow: vec![1 % n],
            dinvpow: vec![1 % n],
        },
    )
}

/// `G × H` with `(a, b)` at index `a·|H| + b`.
pub fn direct_product(g: &FiniteGroup, h: &FiniteGroup) -> FiniteGroup {
    FiniteGroup::from_repr(
        format!("dp({},{})", g.label(), h.label()),
        Repr::Product {
            left: g.clone(),
            right: h.clone(),
        },
    )
}

/// `⟨x, y | x^k, y^l = x^r, y x y^-1 = x^d⟩`, with `x^a y^b` at `a·l + b`.
pub fn metacyclic(label: impl Into<String>, k: u64, l: u64, d: u64, r: u64) -> Result<FiniteGroup, ConstructionError> {
    let d = d % k;
    let r = r % k;
    let invalid = ConstructionError::InvalidAction { m: k, n: l, d };
    if k == 0 || l == 0 || gcd(d, k) != 1 || pow_mod(d, l, k) != 1 % k {
        return Err(invalid);
    }
    if (r as u128 * ((d + k - 1) % k) as u128) % k as u128 != 0 {
        return Err(invalid);
    }
    let dinv = inv_mod(d, k).ok_or(invalid)?;
    let dpow = (0..l).map(|b| pow_mod(d, b, k)).collect();
    let dinvpow = (0..l).map(|b| pow_mod(dinv, b, k)).collect();
    Ok(FiniteGroup::from_repr(
        label,
        Repr::Metacyclic { k, l, r, dpow, dinvpow },
    ))
}

/// `Z/m ⋊_d Z/n` with `(a1,b1)(a2,b2) = (a1 + d^b1 a2, b1 + b2)`.
pub fn semidirect_cyclic(spec: SemidirectSpec) -> Result<FiniteGroup, ConstructionError> {
    let SemidirectSpec { m, n, d } = spec;
    if m == 0 || n == 0 {
        return Err(ConstructionError::InvalidAction { m, n, d });
    }
    metacyclic(format!("sd({m},{n},{})", d % m), m, n, d, 0)
}

/// Dicyclic group of order `order` (a multiple of 4).
pub fn dicyclic(order: u64) -> Result<FiniteGroup, ConstructionError> {
    if order < 4 || order % 4 != 0 {
        return Err(ConstructionError::OutOfRange {
            family: "dicyclic",
            alpha: order as u32,
        });
    }
    let k = order / 2;
    metacyclic(format!("dic({order})"), k, 2, k - 1, order / 4)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TwoGroupFamily {
    Cyclic,
    CyclicTimesZ2,
    Modular,
    Dihedral,
    SemiDihedral,
    Dicyclic,
}

impl TwoGroupFamily {
    pub const ALL: [TwoGroupFamily; 6] = [
        TwoGroupFamily::Cyclic,
        TwoGroupFamily::CyclicTimesZ2,
        TwoGroupFamily::Modular,
        TwoGroupFamily::Dihedral,
        TwoGroupFamily::SemiDihedral,
        TwoGroupFamily::Dicyclic,
    ];

    pub fn min_alpha(self) -> u32 {
        match self {
            TwoGroupFamily::Cyclic => 1,
            TwoGroupFamily::CyclicTimesZ2 => 2,
            TwoGroupFamily::Modular | TwoGroupFamily::Dihedral | TwoGroupFamily::Dicyclic => 3,
            TwoGroupFamily::SemiDihedral => 4,
        }
    }

    fn name(self) -> &'static str {
        match self {
            TwoGroupFamily::Cyclic => "cyclic",
            TwoGroupFamily::CyclicTimesZ2 => "cyclic_times_z2",
            TwoGroupFamily::Modular => "modular",
            TwoGroupFamily::Dihedral => "dihedral",
            TwoGroupFamily::SemiDihedral => "semidihedral",
            TwoGroupFamily::Dicyclic => "dicyclic",
        }
    }
}

impl fmt::Display for TwoGroupFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// The 2-group of order `2^alpha` in the given family.
pub fn two_group(family: TwoGroupFamily, alpha: u32) -> Result<FiniteGroup, ConstructionError> {
    if alpha < family.min_alpha() || alpha > 40 {
        return Err(ConstructionError::OutOfRange {
            family: family.name(),
            alpha,
        });
    }
    let half = 1u64 << (alpha - 1);
    let sd = |d: u64| semidirect_cyclic(SemidirectSpec { m: half, n: 2, d });
    match family {
        TwoGroupFamily::Cyclic => Ok(cyclic(1 << alpha)),
        TwoGroupFamily::CyclicTimesZ2 => Ok(direct_product(&cyclic(half), &cyclic(2))),
        TwoGroupFamily::Modular => sd(half / 2 + 1),
        TwoGroupFamily::Dihedral => sd(half - 1),
        TwoGroupFamily::SemiDihedral => sd(half / 2 - 1),
        TwoGroupFamily::Dicyclic => dicyclic(1 << alpha),
    }
}

/// The multiplier `r` of the order-3 action on `Z/λ`: the least `r` in
/// `2..λ` with `r³ ≡ 1` and `gcd(r − 1, λ) = 1`. For `λ = 1` the action is
/// trivial and `r = 0`.
pub fn klein_multiplier(lambda: u64) -> Result<u64, ConstructionError> {
    if lambda == 0 {
        return Err(ConstructionError::NoSuchAction(0));
    }
    if lambda == 1 {
        return Ok(0);
    }
    (2..lambda)
        .find(|&r| pow_mod(r, 3, lambda) == 1 && gcd(r - 1, lambda) == 1)
        .ok_or(ConstructionError::NoSuchAction(lambda))
}

fn extension3(
    label: String,
    lambda: u64,
    r: u64,
    core: usize,
    lmul: Vec<u8>,
    linv: Vec<u8>,
    theta1: Vec<u8>,
) -> FiniteGroup {
    let theta2: Vec<u8> = theta1.iter().map(|&q| theta1[q as usize]).collect();
    let theta0: Vec<u8> = (0..core as u8).collect();
    FiniteGroup::from_repr(
        label,
        Repr::Extension3 {
            lambda,
            rpow: [1 % lambda, r % lambda, (r * r) % lambda],
            core,
            lmul,
            linv,
            theta: [theta0, theta1, theta2],
        },
    )
}

fn check_witness(g: &FiniteGroup, x: usize, y: usize, commutator_order: u64) -> Result<(), ConstructionError> {
    if g.subgroup_generated(&[x, y]).order() != g.order() || g.element_order(g.commutator(x, y)) != commutator_order {
        return Err(ConstructionError::Group(crate::error::GroupError::AxiomViolated(
            format!("{} generators fail their check", g.label()),
        )));
    }
    Ok(())
}

/// `(Z/λ × Z/2 × Z/2) ⋊ Z/3` with generators `x = ((1,1,0),0)`,
/// `y = ((0,0,1),1)`; `[x, y]` has order `2λ`.
pub fn klein_witness(lambda: u64) -> Result<(FiniteGroup, usize, usize), ConstructionError> {
    let r = klein_multiplier(lambda)?;
    // (u, v) stored as u*2 + v; addition is xor.
    let lmul = (0..16u8).map(|i| (i / 4) ^ (i % 4)).collect();
    let linv = (0..4u8).collect();
    let theta1 = (0..4u8)
        .map(|q| {
            let (u, v) = (q / 2, q % 2);
            ((u ^ v) * 2) + u
        })
        .collect();
    let g = extension3(format!("klein({lambda})"), lambda, r, 4, lmul, linv, theta1);
    let x = ((1 % lambda as usize) * 4 + 2) * 3;
    let y = 4;
    check_witness(&g, x, y, 2 * lambda)?;
    Ok((g, x, y))
}

/// Quaternion units `±1, ±i, ±j, ±k` stored as `sign*4 + unit`.
pub mod quaternion {
    pub const ONE: u8 = 0;
    pub const I: u8 = 1;
    pub const J: u8 = 2;
    pub const K: u8 = 3;
    pub const MINUS_ONE: u8 = 4;

    pub fn mul(a: u8, b: u8) -> u8 {
        // unit products as (sign, unit)
        const T: [[(u8, u8); 4]; 4] = [
            [(0, 0), (0, 1), (0, 2), (0, 3)],
            [(0, 1), (1, 0), (0, 3), (1, 2)],
            [(0, 2), (1, 3), (1, 0), (0, 1)],
            [(0, 3), (0, 2), (1, 1), (1, 0)],
        ];
        let (s, u) = T[(a % 4) as usize][(b % 4) as usize];
        ((s ^ (a / 4) ^ (b / 4)) * 4) + u
    }

    pub fn inv(a: u8) -> u8 {
        (0..8).find(|&b| mul(a, b) == ONE).expect("Q8 is a group")
    }

    /// `i ↦ −j, j ↦ k, k ↦ −i`.
    pub fn theta(a: u8) -> u8 {
        const T: [(u8, u8); 4] = [(0, 0), (1, 2), (0, 3), (1, 1)];
        let (s, u) = T[(a % 4) as usize];
        ((s ^ (a / 4)) * 4) + u
    }
}

/// `(Z/λ × Q8) ⋊ Z/3` with generators `x = ((1,i),0)`, `y = ((0,k),1)`;
/// `[x, y]` has order `4λ`.
pub fn q8_witness(lambda: u64) -> Result<(FiniteGroup, usize, usize), ConstructionError> {
    let r = klein_multiplier(lambda)?;
    let lmul = (0..64u8).map(|i| quaternion::mul(i / 8, i % 8)).collect();
    let linv = (0..8u8).map(quaternion::inv).collect();
    let theta1 = (0..8u8).map(quaternion::theta).collect();
    let g = extension3(format!("q8w({lambda})"), lambda, r, 8, lmul, linv, theta1);
    let x = ((1 % lambda as usize) * 8 + quaternion::I as usize) * 3;
    let y = quaternion::K as usize * 3 + 1;
    check_witness(&g, x, y, 4 * lambda)?;
    Ok((g, x, y))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn d6_and_invalid_action() {
        let g = semidirect_cyclic(SemidirectSpec { m: 3, n: 2, d: 2 }).unwrap();
        assert_eq!(g.order(), 6);
        assert!(!g.is_abelian());
        assert_eq!(
            semidirect_cyclic(SemidirectSpec { m: 4, n: 2, d: 2 }).unwrap_err(),
            ConstructionError::InvalidAction { m: 4, n: 2, d: 2 }
        );
    }

    #[test]
    fn sd_11_5_3() {
        let g = semidirect_cyclic(SemidirectSpec { m: 11, n: 5, d: 3 }).unwrap();
        assert_eq!(g.order(), 55);
        assert_eq!(g.derived_subgroup().order(), 11);
        assert_eq!(g.label(), "sd(11,5,3)");
    }

    #[test]
    #[allow(clippy::identity_op, clippy::erasing_op)]
    fn product_indexing() {
        let g = direct_product(&cyclic(3), &cyclic(4));
        assert_eq!(g.order(), 12);
        assert_eq!(g.mul(1 * 4 + 3, 2 * 4 + 2), 0 * 4 + 1);
    }

    #[test]
    fn dicyclic_is_q8_at_8() {
        let q = two_group(TwoGroupFamily::Dicyclic, 3).unwrap();
        q.check_axioms().unwrap();
        assert_eq!(q.automorphism_count(64).unwrap(), 24);
        assert_eq!(q.derived_subgroup().order(), 2);
    }

    #[test]
    fn out_of_range() {
        assert!(matches!(
            two_group(TwoGroupFamily::SemiDihedral, 3),
            Err(ConstructionError::OutOfRange { .. })
        ));
    }

    #[test]
    fn klein_examples() {
        assert_eq!(klein_multiplier(7).unwrap(), 2);
        assert_eq!(klein_multiplier(5), Err(ConstructionError::NoSuchAction(5)));
        let (g, _, _) = klein_witness(7).unwrap();
        assert_eq!(g.order(), 84);
        g.to_table().check_axioms().unwrap();
        let (a4, _, _) = klein_witness(1).unwrap();
        assert_eq!(a4.order(), 12);
    }

    #[test]
    fn q8w_one_is_sl23() {
        let (g, x, y) = q8_witness(1).unwrap();
        assert_eq!(g.order(), 24);
        g.check_axioms().unwrap();
        assert_eq!(g.element_order(g.commutator(x, y)), 4);
    }
}
