//! Finite groups with dense element indices.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Arc;

use crate::error::GroupError;
use crate::perm::Perm;

const NONE: usize = usize::MAX;

/// A finite group whose elements are the indices `0..order`.
#[derive(Clone)]
pub struct FiniteGroup {
    label: String,
    repr: Arc<Repr>,
}

pub(crate) enum Repr {
    Table {
        order: usize,
        table: Vec<u32>,
        inverse: Vec<u32>,
        identity: usize,
    },
    Perms {
        elems: Vec<Perm>,
        index: HashMap<Perm, u32>,
        inverse: Vec<u32>,
        identity: usize,
    },
    /// `(a, b)` is stored at `a * |right| + b`.
    Product { left: FiniteGroup, right: FiniteGroup },
    /// `x^a y^b` stored at `a * l + b`, with `x^k = 1`, `y^l = x^r`, `y x y^-1 = x^d`.
    Metacyclic {
        k: u64,
        l: u64,
        r: u64,
        dpow: Vec<u64>,
        dinvpow: Vec<u64>,
    },
    /// `(Z/λ × L) ⋊ Z/3` with `L` a small table group; `((a, q), c)` stored at
    /// `(a * |L| + q) * 3 + c`.
    Extension3 {
        lambda: u64,
        rpow: [u64; 3],
        core: usize,
        lmul: Vec<u8>,
        linv: Vec<u8>,
        theta: [Vec<u8>; 3],
    },
}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FiniteGroup({}, order {})", self.label, self.order())
    }
}

impl FiniteGroup {
    pub(crate) fn from_repr(label: impl Into<String>, repr: Repr) -> Self {
        FiniteGroup {
            label: label.into(),
            repr: Arc::new(repr),
        }
    }

    pub(crate) fn repr(&self) -> &Repr {
        &self.repr
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    pub fn order(&self) -> usize {
        match &*self.repr {
            Repr::Table { order, .. } => *order,
            Repr::Perms { elems, .. } => elems.len(),
            Repr::Product { left, right } => left.order() * right.order(),
            Repr::Metacyclic { k, l, .. } => (k * l) as usize,
            Repr::Extension3 { lambda, core, .. } => *lambda as usize * core * 3,
        }
    }

    pub fn identity(&self) -> usize {
        match &*self.repr {
            Repr::Table { identity, .. } | Repr::Perms { identity, .. } => *identity,
            Repr::Product { left, right } => left.identity() * right.order() + right.identity(),
            Repr::Metacyclic { .. } | Repr::Extension3 { .. } => 0,
        }
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        match &*self.repr {
            Repr::Table { order, table, .. } => table[a * order + b] as usize,
            Repr::Perms { elems, index, .. } => {
                let p = elems[a].compose_unchecked(&elems[b]);
                index[&p] as usize
            }
            Repr::Product { left, right } => {
                let n = right.order();
                left.mul(a / n, b / n) * n + right.mul(a % n, b % n)
            }
            Repr::Metacyclic { k, l, r, dpow, .. } => {
                let (a1, b1) = ((a as u64) / l, (a as u64) % l);
                let (a2, b2) = ((b as u64) / l, (b as u64) % l);
                let carry = if b1 + b2 >= *l { *r } else { 0 };
                let na = (a1 + dpow[b1 as usize] * a2 + carry) % k;
                (na * l + (b1 + b2) % l) as usize
            }
            Repr::Extension3 {
                lambda,
                rpow,
                core,
                lmul,
                theta,
                ..
            } => {
                let (n1, c1) = (a / 3, a % 3);
                let (n2, c2) = (b / 3, b % 3);
                let (a1, q1) = (n1 / core, n1 % core);
                let (a2, q2) = (n2 / core, n2 % core);
                let na = (a1 as u64 + rpow[c1] * a2 as u64) % lambda;
                let nq = lmul[q1 * core + theta[c1][q2] as usize] as usize;
                ((na as usize * core + nq) * 3) + (c1 + c2) % 3
            }
        }
    }

    pub fn inv(&self, a: usize) -> usize {
        match &*self.repr {
            Repr::Table { inverse, .. } | Repr::Perms { inverse, .. } => inverse[a] as usize,
            Repr::Product { left, right } => {
                let n = right.order();
                left.inv(a / n) * n + right.inv(a % n)
            }
            Repr::Metacyclic { k, l, r, dinvpow, .. } => {
                let (a0, b0) = ((a as u64) / l, (a as u64) % l);
                if b0 == 0 {
                    (((k - a0) % k) * l) as usize
                } else {
                    let s = (a0 + r) % k;
                    let na = ((k - s) % k) * dinvpow[b0 as usize] % k;
                    (na * l + (l - b0)) as usize
                }
            }
            Repr::Extension3 {
                lambda,
                rpow,
                core,
                linv,
                theta,
                ..
            } => {
                let (n, c) = (a / 3, a % 3);
                let (a0, q0) = (n / core, n % core);
                let back = (3 - c) % 3;
                let na = rpow[back] * ((lambda - a0 as u64) % lambda) % lambda;
                let nq = theta[back][linv[q0] as usize] as usize;
                (na as usize * core + nq) * 3 + back
            }
        }
    }

    pub fn pow(&self, a: usize, mut e: u64) -> usize {
        let mut base = a;
        let mut acc = self.identity();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    pub fn check_element(&self, a: usize) -> Result<(), GroupError> {
        if a < self.order() {
            Ok(())
        } else {
            Err(GroupError::ElementOutOfRange(a))
        }
    }

    /// The permutation stored for `a`, when the group is a permutation group.
    pub fn perm(&self, a: usize) -> Option<&Perm> {
        match &*self.repr {
            Repr::Perms { elems, .. } => elems.get(a),
            _ => None,
        }
    }

    pub fn perm_index(&self, p: &Perm) -> Option<usize> {
        match &*self.repr {
            Repr::Perms { index, .. } => index.get(p).map(|&i| i as usize),
            _ => None,
        }
    }

    /// Builds a group from a full Cayley table, checking every axiom.
    pub fn from_table(label: impl Into<String>, rows: &[Vec<usize>]) -> Result<Self, GroupError> {
        let n = rows.len();
        if n == 0 {
            return Err(GroupError::AxiomViolated("empty table".into()));
        }
        let mut table = Vec::with_capacity(n * n);
        for row in rows {
            if row.len() != n {
                return Err(GroupError::AxiomViolated("table is not square".into()));
            }
            for &x in row {
                if x >= n {
                    return Err(GroupError::ElementOutOfRange(x));
                }
                table.push(x as u32);
            }
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|a| table[e * n + a] as usize == a && table[a * n + e] as usize == a))
            .ok_or_else(|| GroupError::AxiomViolated("no identity".into()))?;
        let mut inverse = vec![0u32; n];
        for a in 0..n {
            let b = (0..n)
                .find(|&b| table[a * n + b] as usize == identity)
                .ok_or_else(|| GroupError::AxiomViolated(format!("{a} has no inverse")))?;
            inverse[a] = b as u32;
        }
        let g = FiniteGroup::from_repr(
            label,
            Repr::Table {
                order: n,
                table,
                inverse,
                identity,
            },
        );
        g.check_axioms()?;
        Ok(g)
    }

    /// Materializes the Cayley table.
    pub fn to_table(&self) -> FiniteGroup {
        let n = self.order();
        let mut table = Vec::with_capacity(n * n);
        for a in 0..n {
            for b in 0..n {
                table.push(self.mul(a, b) as u32);
            }
        }
        let inverse = (0..n).map(|a| self.inv(a) as u32).collect();
        FiniteGroup::from_repr(
            self.label.clone(),
            Repr::Table {
                order: n,
                table,
                inverse,
                identity: self.identity(),
            },
        )
    }

    /// Exhaustive check of closure, associativity, identity and inverses.
    pub fn check_axioms(&self) -> Result<(), GroupError> {
        let n = self.order();
        let e = self.identity();
        for a in 0..n {
            if self.mul(a, e) != a || self.mul(e, a) != a {
                return Err(GroupError::AxiomViolated(format!("identity fails at {a}")));
            }
            let ai = self.inv(a);
            if ai >= n || self.mul(a, ai) != e || self.mul(ai, a) != e {
                return Err(GroupError::AxiomViolated(format!("inverse fails at {a}")));
            }
        }
        for a in 0..n {
            for b in 0..n {
                let ab = self.mul(a, b);
                if ab >= n {
                    return Err(GroupError::AxiomViolated("product out of range".into()));
                }
                for c in 0..n {
                    if self.mul(ab, c) != self.mul(a, self.mul(b, c)) {
                        return Err(GroupError::AxiomViolated(format!(
                            "associativity fails at ({a}, {b}, {c})"
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn element_order(&self, a: usize) -> u64 {
        let e = self.identity();
        let mut x = a;
        let mut k = 1;
        while x != e {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    /// `[a, b] = a b a^-1 b^-1`.
    pub fn commutator(&self, a: usize, b: usize) -> usize {
        let ab = self.mul(a, b);
        let ba = self.mul(b, a);
        self.mul(ab, self.inv(ba))
    }

    pub fn is_abelian(&self) -> bool {
        let gens = self.generating_set();
        gens.iter()
            .all(|&a| gens.iter().all(|&b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Element order → number of elements of that order.
    pub fn order_spectrum(&self) -> BTreeMap<u64, usize> {
        let mut spec = BTreeMap::new();
        for a in 0..self.order() {
            *spec.entry(self.element_order(a)).or_insert(0) += 1;
        }
        spec
    }

    pub fn subgroup_generated(&self, gens: &[usize]) -> Subgroup {
        let n = self.order();
        let mut mask = vec![false; n];
        let e = self.identity();
        mask[e] = true;
        let mut members = vec![e];
        let mut i = 0;
        while i < members.len() {
            let x = members[i];
            for &s in gens {
                let y = self.mul(x, s);
                if !mask[y] {
                    mask[y] = true;
                    members.push(y);
                }
            }
            i += 1;
        }
        members.sort_unstable();
        Subgroup { members, mask }
    }

    /// Lowest-index greedy generating set.
    pub fn generating_set(&self) -> Vec<usize> {
        let n = self.order();
        let mut gens = Vec::new();
        let mut sub = self.subgroup_generated(&gens);
        for a in 0..n {
            if sub.order() == n {
                break;
            }
            if !sub.contains(a) {
                gens.push(a);
                sub = self.subgroup_generated(&gens);
            }
        }
        gens
    }

    /// Greedy generating set: each step adds the element enlarging the
    /// generated subgroup most, lowest index on ties.
    pub fn small_generating_set(&self) -> Vec<usize> {
        let n = self.order();
        let mut gens: Vec<usize> = Vec::new();
        let mut sub = self.subgroup_generated(&gens);
        while sub.order() < n {
            let mut best: Option<(usize, Subgroup)> = None;
            for a in 0..n {
                if sub.contains(a) {
                    continue;
                }
                gens.push(a);
                let cand = self.subgroup_generated(&gens);
                gens.pop();
                if best.as_ref().is_none_or(|(_, b)| cand.order() > b.order()) {
                    let full = cand.order() == n;
                    best = Some((a, cand));
                    if full {
                        break;
                    }
                }
            }
            let (a, s) = best.expect("proper subgroup has a missing element");
            gens.push(a);
            sub = s;
        }
        gens
    }

    /// Normal closure of the commutators of a generating set.
    pub fn derived_subgroup(&self) -> Subgroup {
        let gens = self.generating_set();
        let e = self.identity();
        let mut normal_gens: Vec<usize> = Vec::new();
        for &a in &gens {
            for &b in &gens {
                let c = self.commutator(a, b);
                if c != e && !normal_gens.contains(&c) {
                    normal_gens.push(c);
                }
            }
        }
        loop {
            let sub = self.subgroup_generated(&normal_gens);
            let mut added = false;
            let snapshot = normal_gens.clone();
            for &h in &snapshot {
                for &s in &gens {
                    let conj = self.mul(self.mul(s, h), self.inv(s));
                    if !sub.contains(conj) && !normal_gens.contains(&conj) {
                        normal_gens.push(conj);
                        added = true;
                    }
                }
            }
            if !added {
                return sub;
            }
        }
    }

    pub fn center(&self) -> Subgroup {
        let gens = self.generating_set();
        let n = self.order();
        let mask: Vec<bool> = (0..n)
            .map(|z| gens.iter().all(|&g| self.mul(z, g) == self.mul(g, z)))
            .collect();
        let members = (0..n).filter(|&z| mask[z]).collect();
        Subgroup { members, mask }
    }

    /// `|Aut(G)|` by backtracking over images of a greedy generating set.
    pub fn automorphism_count(&self, bound: usize) -> Result<u64, GroupError> {
        if self.order() > bound {
            return Err(GroupError::TooLarge {
                order: self.order(),
                bound,
            });
        }
        let mut count = 0u64;
        search_homs(self, self, &mut |_| {
            count += 1;
            true
        });
        Ok(count)
    }

    /// Isomorphism test by order spectrum and then generator-image search.
    pub fn is_isomorphic(&self, other: &FiniteGroup, bound: usize) -> Result<bool, GroupError> {
        if self.order() != other.order() {
            return Ok(false);
        }
        if self.order() > bound {
            return Err(GroupError::TooLarge {
                order: self.order(),
                bound,
            });
        }
        if self.order_spectrum() != other.order_spectrum() {
            return Ok(false);
        }
        let mut found = false;
        search_homs(self, other, &mut |_| {
            found = true;
            false
        });
        Ok(found)
    }

    /// Closes a set of permutations under composition, numbering elements in
    /// breadth-first discovery order with the identity at 0.
    pub fn closure_from_generators(
        label: impl Into<String>,
        gens: &[Perm],
        budget: usize,
    ) -> Result<FiniteGroup, GroupError> {
        let first = gens.first().ok_or(GroupError::EmptyGenerators)?;
        let deg = first.degree();
        for g in gens {
            if g.degree() != deg {
                return Err(GroupError::DegreeMismatch {
                    left: deg,
                    right: g.degree(),
                });
            }
        }
        let id = Perm::identity(deg);
        let mut index: HashMap<Perm, u32> = HashMap::new();
        index.insert(id.clone(), 0);
        let mut elems = vec![id];
        let mut i = 0;
        while i < elems.len() {
            for g in gens {
                let p = elems[i].compose_unchecked(g);
                if !index.contains_key(&p) {
                    if elems.len() >= budget {
                        return Err(GroupError::BudgetExceeded(budget));
                    }
                    index.insert(p.clone(), elems.len() as u32);
                    elems.push(p);
                }
            }
            i += 1;
        }
        Ok(Self::assemble_perms(label.into(), elems, index))
    }

    /// Wraps a list of permutations already known to form a group.
    pub fn from_perm_elements(label: impl Into<String>, elems: Vec<Perm>) -> Result<FiniteGroup, GroupError> {
        let index: HashMap<Perm, u32> = elems.iter().enumerate().map(|(i, p)| (p.clone(), i as u32)).collect();
        if index.len() != elems.len() {
            return Err(GroupError::AxiomViolated("repeated element".into()));
        }
        for p in &elems {
            if !index.contains_key(&p.inverse()) {
                return Err(GroupError::AxiomViolated("not closed under inverse".into()));
            }
        }
        let deg = elems.first().ok_or(GroupError::EmptyGenerators)?.degree();
        if !index.contains_key(&Perm::identity(deg)) {
            return Err(GroupError::AxiomViolated("identity missing".into()));
        }
        Ok(Self::assemble_perms(label.into(), elems, index))
    }

    fn assemble_perms(label: String, elems: Vec<Perm>, index: HashMap<Perm, u32>) -> FiniteGroup {
        let inverse = elems.iter().map(|p| index[&p.inverse()]).collect();
        let identity = index[&Perm::identity(elems[0].degree())] as usize;
        FiniteGroup::from_repr(
            label,
            Repr::Perms {
                elems,
                index,
                inverse,
                identity,
            },
        )
    }
}

/// A subgroup given by its member set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subgroup {
    members: Vec<usize>,
    mask: Vec<bool>,
}

impl Subgroup {
    pub fn order(&self) -> usize {
        self.members.len()
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn contains(&self, a: usize) -> bool {
        self.mask.get(a).copied().unwrap_or(false)
    }

    pub fn is_normal_in(&self, g: &FiniteGroup) -> bool {
        g.generating_set().iter().all(|&s| {
            let si = g.inv(s);
            self.members.iter().all(|&h| self.contains(g.mul(g.mul(s, h), si)))
        })
    }
}

/// Extends `gens[i] ↦ imgs[i]` along the subgroup the generators span.
/// Returns `None` if the assignment is not an injective homomorphism there.
fn extend_hom(g: &FiniteGroup, h: &FiniteGroup, gens: &[usize], imgs: &[usize]) -> Option<Vec<usize>> {
    let mut map = vec![NONE; g.order()];
    let mut used = vec![false; h.order()];
    let e = g.identity();
    map[e] = h.identity();
    used[h.identity()] = true;
    let mut queue = vec![e];
    let mut i = 0;
    while i < queue.len() {
        let x = queue[i];
        let fx = map[x];
        for (&s, &t) in gens.iter().zip(imgs) {
            let y = g.mul(x, s);
            let z = h.mul(fx, t);
            if map[y] == NONE {
                if used[z] {
                    return None;
                }
                map[y] = z;
                used[z] = true;
                queue.push(y);
            } else if map[y] != z {
                return None;
            }
        }
        i += 1;
    }
    Some(map)
}

/// Visits every isomorphism `g → h` (as a full map); the visitor returns
/// `false` to stop.
fn search_homs(g: &FiniteGroup, h: &FiniteGroup, visit: &mut dyn FnMut(&[usize]) -> bool) {
    if g.order() != h.order() {
        return;
    }
    let gens = g.small_generating_set();
    let horders: Vec<u64> = (0..h.order()).map(|a| h.element_order(a)).collect();
    let cands: Vec<Vec<usize>> = gens
        .iter()
        .map(|&s| {
            let o = g.element_order(s);
            (0..h.order()).filter(|&a| horders[a] == o).collect()
        })
        .collect();
    let mut imgs = Vec::with_capacity(gens.len());
    backtrack(g, h, &gens, &cands, &mut imgs, visit);
}

fn backtrack(
    g: &FiniteGroup,
    h: &FiniteGroup,
    gens: &[usize],
    cands: &[Vec<usize>],
    imgs: &mut Vec<usize>,
    visit: &mut dyn FnMut(&[usize]) -> bool,
) -> bool {
    let level = imgs.len();
    if level == gens.len() {
        if let Some(map) = extend_hom(g, h, gens, imgs) {
            if map.iter().all(|&x| x != NONE) {
                return visit(&map);
            }
        }
        return true;
    }
    for &c in &cands[level] {
        imgs.push(c);
        let ok = level + 1 == gens.len() || extend_hom(g, h, &gens[..=level], imgs).is_some();
        let keep_going = if ok {
            backtrack(g, h, gens, cands, imgs, visit)
        } else {
            true
        };
        imgs.pop();
        if !keep_going {
            return false;
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s3() -> FiniteGroup {
        let a = Perm::from_images(vec![1, 2, 0]).unwrap();
        let b = Perm::from_images(vec![1, 0, 2]).unwrap();
        FiniteGroup::closure_from_generators("S3", &[a, b], 100).unwrap()
    }

    #[test]
    fn closure_of_s3() {
        let g = s3();
        assert_eq!(g.order(), 6);
        assert_eq!(g.identity(), 0);
        g.check_axioms().unwrap();
        assert_eq!(g.derived_subgroup().order(), 3);
        assert_eq!(g.center().order(), 1);
        assert_eq!(g.automorphism_count(64).unwrap(), 6);
    }

    #[test]
    fn closure_budget() {
        let a = Perm::from_images(vec![1, 2, 3, 4, 0]).unwrap();
        assert_eq!(
            FiniteGroup::closure_from_generators("c5", &[a], 4).unwrap_err(),
            GroupError::BudgetExceeded(4)
        );
    }

    #[test]
    fn closure_degree_mismatch() {
        let a = Perm::identity(2);
        let b = Perm::identity(3);
        assert!(matches!(
            FiniteGroup::closure_from_generators("x", &[a, b], 10),
            Err(GroupError::DegreeMismatch { .. })
        ));
    }

    #[test]
    fn table_round_trip() {
        let g = s3();
        let t = g.to_table();
        let rows: Vec<Vec<usize>> = (0..6).map(|a| (0..6).map(|b| t.mul(a, b)).collect()).collect();
        let back = FiniteGroup::from_table("S3", &rows).unwrap();
        assert!(back.is_isomorphic(&g, 64).unwrap());
    }

    #[test]
    fn bad_table_rejected() {
        let rows = vec![vec![0, 1], vec![1, 1]];
        assert!(FiniteGroup::from_table("bad", &rows).is_err());
    }

    #[test]
    fn small_generating_set_of_s3() {
        assert_eq!(s3().small_generating_set().len(), 2);
    }
}
