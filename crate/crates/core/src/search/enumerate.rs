//! Exhaustive enumeration of regular origamis with a given number of squares.
//!
//! A regular origami with `n` squares is the Schreier graph of a normal
//! subgroup of index `n` in the free group on `h, v`. Coset tables are
//! built in standard form (new points appear at the first undefined entry),
//! so every normal subgroup is produced exactly once. Normality is enforced
//! during the search: for each point `i` the label-preserving graph map
//! `φ_i` with `φ_i(0) = i` is propagated, and any clash prunes the branch.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::Error;
use crate::group::FiniteGroup;
use crate::origami::Origami;
use crate::perm::Perm;
use crate::stratum::Stratum;

const UNDEF: u8 = u8::MAX;
const COLS: usize = 4;

/// Search limits.
#[derive(Clone, Copy, Debug)]
pub struct EnumLimits {
    pub max_n: usize,
    /// Depth at which the search tree is split across workers.
    pub split_depth: usize,
}

impl Default for EnumLimits {
    fn default() -> Self {
        EnumLimits {
            max_n: 36,
            split_depth: 6,
        }
    }
}

/// One regular origami per isomorphism class of group and commutator order.
#[derive(Clone, Debug, Serialize)]
pub struct EnumWitness {
    #[serde(serialize_with = "crate::search::enumerate::display")]
    pub origami: Origami,
    pub group_order: usize,
    pub stratum: Stratum,
    pub genus: u64,
    /// Isomorphism invariants of the group, used for sorting and display.
    pub group: String,
}

pub(crate) fn display<T: std::fmt::Display, S: serde::Serializer>(v: &T, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(v)
}

#[derive(Clone)]
struct State {
    n: usize,
    next: usize,
    table: Vec<[u8; COLS]>,
    phi: Vec<u8>,
    phi_inv: Vec<u8>,
}

/// Columns are `h, h⁻¹, v, v⁻¹`; `c ^ 1` is the inverse column.
impl State {
    fn new(n: usize) -> Self {
        let mut s = State {
            n,
            next: 1,
            table: vec![[UNDEF; COLS]; n],
            phi: vec![UNDEF; n * n],
            phi_inv: vec![UNDEF; n * n],
        };
        s.phi[0] = 0;
        s.phi_inv[0] = 0;
        s
    }

    fn phi(&self, i: usize, p: usize) -> u8 {
        self.phi[i * self.n + p]
    }

    fn first_undefined(&self) -> Option<(usize, usize)> {
        (0..self.next)
            .flat_map(|p| (0..COLS).map(move |c| (p, c)))
            .find(|&(p, c)| self.table[p][c] == UNDEF)
    }

    /// Sets `T[a][c] = b` and `T[b][c^1] = a`, then propagates. Returns
    /// `false` on a contradiction.
    fn define(&mut self, a: usize, c: usize, b: usize) -> bool {
        let mut work = Vec::new();
        if !self.set_edge(a, c, b, &mut work) {
            return false;
        }
        if b + 1 > self.next {
            self.next = b + 1;
            if !self.set_phi(b, 0, b, &mut work) {
                return false;
            }
        }
        self.propagate(work)
    }

    fn set_edge(&mut self, a: usize, c: usize, b: usize, work: &mut Vec<Fact>) -> bool {
        let cur = self.table[a][c];
        let back = self.table[b][c ^ 1];
        if cur != UNDEF || back != UNDEF {
            return cur == b as u8 && back == a as u8;
        }
        self.table[a][c] = b as u8;
        self.table[b][c ^ 1] = a as u8;
        work.push(Fact::Edge(a, c));
        work.push(Fact::Edge(b, c ^ 1));
        true
    }

    fn set_phi(&mut self, i: usize, p: usize, a: usize, work: &mut Vec<Fact>) -> bool {
        let idx = i * self.n;
        let cur = self.phi[idx + p];
        if cur != UNDEF {
            return cur == a as u8;
        }
        if self.phi_inv[idx + a] != UNDEF {
            return false;
        }
        self.phi[idx + p] = a as u8;
        self.phi_inv[idx + a] = p as u8;
        work.push(Fact::Phi(i, p));
        true
    }

    /// `φ_i(p) = a` is known and `T[p][c] = q`: forces `φ_i(q) = T[a][c]`.
    fn constrain(&mut self, i: usize, p: usize, c: usize, work: &mut Vec<Fact>) -> bool {
        let a = self.phi(i, p);
        let q = self.table[p][c];
        if a == UNDEF || q == UNDEF {
            return true;
        }
        let r = self.table[a as usize][c];
        let s = self.phi(i, q as usize);
        match (r != UNDEF, s != UNDEF) {
            (true, true) => r == s,
            (true, false) => self.set_phi(i, q as usize, r as usize, work),
            (false, true) => self.set_edge(a as usize, c, s as usize, work),
            (false, false) => true,
        }
    }

    fn propagate(&mut self, mut work: Vec<Fact>) -> bool {
        while let Some(f) = work.pop() {
            match f {
                Fact::Phi(i, p) => {
                    for c in 0..COLS {
                        if !self.constrain(i, p, c, &mut work) {
                            return false;
                        }
                    }
                }
                Fact::Edge(a, c) => {
                    for i in 1..self.next {
                        // Edges leaving a preimage of `a` under φ_i.
                        let p = self.phi_inv[i * self.n + a];
                        if p != UNDEF && !self.constrain(i, p as usize, c, &mut work) {
                            return false;
                        }
                        if !self.constrain(i, a, c, &mut work) {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }

    fn children(&self) -> Vec<State> {
        let Some((p, c)) = self.first_undefined() else {
            return Vec::new();
        };
        let mut out = Vec::new();
        let limit = if self.next < self.n { self.next + 1 } else { self.next };
        for b in 0..limit {
            if b < self.next && self.table[b][c ^ 1] != UNDEF {
                continue;
            }
            let mut s = self.clone();
            if s.define(p, c, b) {
                out.push(s);
            }
        }
        out
    }

    fn is_complete(&self) -> bool {
        self.next == self.n && self.first_undefined().is_none()
    }

    fn origami(&self) -> Origami {
        let col =
            |c: usize| Perm::from_images(self.table.iter().map(|r| r[c] as u32).collect()).expect("complete table");
        Origami::new(col(0), col(2)).expect("coset tables are connected")
    }
}

#[derive(Clone, Copy)]
enum Fact {
    Phi(usize, usize),
    Edge(usize, usize),
}

fn dfs(s: State, out: &mut Vec<Origami>) {
    if s.is_complete() {
        out.push(s.origami());
        return;
    }
    for child in s.children() {
        dfs(child, out);
    }
}

/// All regular origamis with `n` squares up to relabeling, one per normal
/// subgroup of index `n` in the free group of rank two.
pub fn regular_tables(n: usize, limits: EnumLimits) -> Result<Vec<Origami>, Error> {
    if n == 0 || n > limits.max_n || n > UNDEF as usize {
        return Err(Error::BudgetExceeded(format!(
            "enumeration needs 1 ≤ n ≤ {}, got {n}",
            limits.max_n.min(UNDEF as usize)
        )));
    }
    let mut frontier = vec![State::new(n)];
    let mut done = Vec::new();
    for _ in 0..limits.split_depth {
        let mut next = Vec::new();
        for s in frontier {
            if s.is_complete() {
                done.push(s.origami());
            } else {
                next.extend(s.children());
            }
        }
        frontier = next;
    }
    let rest: Vec<Vec<Origami>> = frontier
        .into_par_iter()
        .map(|s| {
            let mut out = Vec::new();
            dfs(s, &mut out);
            out
        })
        .collect();
    done.extend(rest.into_iter().flatten());
    Ok(done)
}

/// Cheap isomorphism invariants: order statistics, derived subgroup and
/// center orders.
pub fn group_signature(g: &FiniteGroup) -> String {
    let spectrum: Vec<String> = g.order_spectrum().iter().map(|(o, c)| format!("{o}^{c}")).collect();
    format!(
        "n{}[{}] d{} z{}",
        g.order(),
        spectrum.join(","),
        g.derived_subgroup().order(),
        g.center().order()
    )
}

/// Regular origamis with `n` squares, one per isomorphism class of the
/// translation group and commutator order, sorted by stratum and group.
pub fn enumerate_regular(n: usize, limits: EnumLimits) -> Result<Vec<EnumWitness>, Error> {
    let tables = regular_tables(n, limits)?;
    let described: Vec<(Origami, FiniteGroup, Stratum, String)> = tables
        .into_par_iter()
        .map(|o| {
            let g = o.translation_group();
            let s = o.stratum();
            let sig = group_signature(&g);
            (o, g, s, sig)
        })
        .collect();
    let mut buckets: BTreeMap<(Stratum, String), Vec<(Origami, FiniteGroup)>> = BTreeMap::new();
    for (o, g, s, sig) in described {
        buckets.entry((s, sig)).or_default().push((o, g));
    }
    let groups: Vec<Vec<EnumWitness>> = buckets
        .into_par_iter()
        .map(|((stratum, sig), members)| {
            let mut reps: Vec<(Origami, FiniteGroup)> = Vec::new();
            for (o, g) in members {
                let seen = reps
                    .iter()
                    .any(|(_, r)| r.is_isomorphic(&g, usize::MAX).unwrap_or(false));
                if !seen {
                    reps.push((o, g));
                }
            }
            reps.into_iter()
                .enumerate()
                .map(|(i, (o, _))| EnumWitness {
                    genus: o.genus(),
                    origami: o,
                    group_order: n,
                    stratum: stratum.clone(),
                    group: if i == 0 {
                        sig.clone()
                    } else {
                        format!("{sig} #{}", i + 1)
                    },
                })
                .collect()
        })
        .collect();
    Ok(groups.into_iter().flatten().collect())
}
