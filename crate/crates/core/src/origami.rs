//! Square-tiled surfaces given by a pair of permutations.

use std::fmt;
use std::str::FromStr;

use crate::constructions::{cyclic, direct_product};
use crate::error::OrigamiError;
use crate::group::FiniteGroup;
use crate::numtheory::{crt_solve, factor_powers, gcd};
use crate::perm::Perm;
use crate::stratum::Stratum;

/// A connected origami: `sigma_h` moves each square to its right
/// neighbour, `sigma_v` to the one above.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Origami {
    sigma_h: Perm,
    sigma_v: Perm,
}

impl Origami {
    pub fn new(sigma_h: Perm, sigma_v: Perm) -> Result<Self, OrigamiError> {
        if sigma_h.degree() != sigma_v.degree() {
            return Err(crate::error::GroupError::DegreeMismatch {
                left: sigma_h.degree(),
                right: sigma_v.degree(),
            }
            .into());
        }
        let o = Origami { sigma_h, sigma_v };
        if !o.is_connected() {
            return Err(OrigamiError::NotConnected);
        }
        Ok(o)
    }

    pub fn degree(&self) -> usize {
        self.sigma_h.degree()
    }

    pub fn sigma_h(&self) -> &Perm {
        &self.sigma_h
    }

    pub fn sigma_v(&self) -> &Perm {
        &self.sigma_v
    }

    fn is_connected(&self) -> bool {
        let n = self.degree();
        if n == 0 {
            return false;
        }
        let mut seen = vec![false; n];
        seen[0] = true;
        let mut stack = vec![0];
        let mut count = 1;
        while let Some(i) = stack.pop() {
            for j in [self.sigma_h.apply(i), self.sigma_v.apply(i)] {
                if !seen[j] {
                    seen[j] = true;
                    count += 1;
                    stack.push(j);
                }
            }
        }
        count == n
    }

    /// `σ_h σ_v σ_h⁻¹ σ_v⁻¹`, the monodromy around the corners.
    pub fn commutator(&self) -> Perm {
        let hi = self.sigma_h.inverse();
        let vi = self.sigma_v.inverse();
        self.sigma_h
            .compose_unchecked(&self.sigma_v)
            .compose_unchecked(&hi)
            .compose_unchecked(&vi)
    }

    pub fn stratum(&self) -> Stratum {
        Stratum::from_cycle_type(&self.commutator().cycle_type())
    }

    /// From `2 − 2g = #cycles(K) − n`.
    pub fn genus(&self) -> u64 {
        let cycles = self.commutator().cycles().len() as u64;
        (self.degree() as u64 + 2 - cycles) / 2
    }

    /// The translation of the surface sending square 0 to `target`, if any.
    pub fn translation_to(&self, target: usize) -> Option<Perm> {
        let n = self.degree();
        let mut f = vec![u32::MAX; n];
        let mut used = vec![false; n];
        f[0] = target as u32;
        used[target] = true;
        let mut stack = vec![0usize];
        while let Some(p) = stack.pop() {
            let fp = f[p] as usize;
            for s in [&self.sigma_h, &self.sigma_v] {
                let q = s.apply(p);
                let fq = s.apply(fp) as u32;
                if f[q] == u32::MAX {
                    if used[fq as usize] {
                        return None;
                    }
                    used[fq as usize] = true;
                    f[q] = fq;
                    stack.push(q);
                } else if f[q] != fq {
                    return None;
                }
            }
        }
        Perm::from_images(f).ok()
    }

    pub fn translation_count(&self) -> usize {
        (0..self.degree()).filter(|&j| self.translation_to(j).is_some()).count()
    }

    /// The centralizer of the monodromy group, as a permutation group.
    pub fn translation_group(&self) -> FiniteGroup {
        let elems: Vec<Perm> = (0..self.degree()).filter_map(|j| self.translation_to(j)).collect();
        FiniteGroup::from_perm_elements("translations", elems).expect("centralizer is a group")
    }

    /// Monodromy group `⟨σ_h, σ_v⟩`.
    pub fn monodromy_group(&self, budget: usize) -> Result<FiniteGroup, OrigamiError> {
        Ok(FiniteGroup::closure_from_generators(
            "monodromy",
            &[self.sigma_h.clone(), self.sigma_v.clone()],
            budget,
        )?)
    }

    /// An origami is regular when its monodromy group acts regularly, i.e.
    /// when every square can be moved to every other by a translation.
    pub fn is_regular(&self) -> bool {
        self.translation_count() == self.degree()
    }
}

impl fmt::Display for Origami {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{};{};{}", self.degree(), self.sigma_h, self.sigma_v)
    }
}

impl FromStr for Origami {
    type Err = OrigamiError;

    fn from_str(s: &str) -> Result<Self, OrigamiError> {
        let bad = || OrigamiError::Parse(s.to_string());
        let mut parts = s.trim().split(';');
        let n: usize = parts.next().ok_or_else(bad)?.trim().parse().map_err(|_| bad())?;
        let mut perm = || -> Result<Perm, OrigamiError> {
            let images: Vec<u32> = parts
                .next()
                .ok_or_else(bad)?
                .split(',')
                .map(|x| x.trim().parse::<u32>().map_err(|_| bad()))
                .collect::<Result<_, _>>()?;
            if images.len() != n {
                return Err(bad());
            }
            Ok(Perm::from_images(images)?)
        };
        let h = perm()?;
        let v = perm()?;
        Origami::new(h, v)
    }
}

/// The regular origami of `(G, x, y)`: squares are the elements of `G`, with
/// `σ_h(g) = g·x` and `σ_v(g) = g·y`.
pub fn regular_origami(g: &FiniteGroup, x: usize, y: usize) -> Result<Origami, OrigamiError> {
    g.check_element(x)?;
    g.check_element(y)?;
    if g.subgroup_generated(&[x, y]).order() != g.order() {
        return Err(OrigamiError::NotGenerating);
    }
    let n = g.order();
    let h = Perm::from_fn(n, |a| g.mul(a, x))?;
    let v = Perm::from_fn(n, |a| g.mul(a, y))?;
    Origami::new(h, v)
}

/// The one-cylinder origami of genus `g` with `4g − 4` squares and
/// `2g − 2` translations.
pub fn one_cylinder(genus: u64) -> Result<Origami, OrigamiError> {
    if genus < 2 {
        return Err(OrigamiError::InvalidGenus(genus));
    }
    let d = (4 * genus - 4) as usize;
    let shift = (2 * genus - 2) as usize;
    let h = Perm::from_fn(d, |i| (i + 1) % d)?;
    let v = Perm::from_fn(d, |i| if i % 2 == 0 { (i + shift) % d } else { i })?;
    Origami::new(h, v)
}

/// Splits `Z/k ≅ Z/t × Z/s` with `t` prime to `alpha` and `s` prime to
/// `beta`, and returns the elements of `Z/k` matching `(1, 0)` and `(0, 1)`.
pub fn cyclic_split(k: u64, alpha: u64, beta: u64) -> Result<(u64, u64), OrigamiError> {
    let bad = gcd(k, gcd(alpha, beta));
    if bad != 1 {
        return Err(OrigamiError::CoprimalityViolated(bad));
    }
    let (mut t, mut s) = (1u64, 1u64);
    for (p, e) in factor_powers(k) {
        if alpha % p != 0 {
            t *= p.pow(e);
        } else {
            s *= p.pow(e);
        }
    }
    let e_t = crt_solve(&[(1 % t, t), (0, s)]).expect("coprime moduli").0;
    let e_s = crt_solve(&[(0, t), (1 % s, s)]).expect("coprime moduli").0;
    Ok((e_t, e_s))
}

/// Lifts a generating pair of `G` to `G × Z/k`; the stratum `H(m^s)` of
/// `(G, x, y)` becomes `H(m^(ks))`.
pub fn extend_by_cyclic(
    g: &FiniteGroup,
    x: usize,
    y: usize,
    k: u64,
) -> Result<(FiniteGroup, usize, usize), OrigamiError> {
    g.check_element(x)?;
    g.check_element(y)?;
    let (e_t, e_s) = cyclic_split(k, g.element_order(x), g.element_order(y))?;
    let h = direct_product(g, &cyclic(k));
    let kk = k as usize;
    Ok((h, x * kk + e_t as usize, y * kk + e_s as usize))
}
