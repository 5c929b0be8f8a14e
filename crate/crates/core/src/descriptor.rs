//! Textual group descriptors and generator coordinates.
//!
//! Grammar: `c(n)`, `sd(m,n,d)`, `dp(A,B)`, `dic(n)`, `klein(λ)`,
//! `q8w(λ)`, `psl(p)`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize, Serializer};

use crate::constructions::{cyclic, dicyclic, direct_product, klein_witness, q8_witness, semidirect_cyclic};
use crate::error::{ConstructionError, Error};
use crate::group::{FiniteGroup, Repr};
use crate::numtheory::{gcd, lcm, SemidirectSpec};
use crate::origami::cyclic_split;
use crate::sl2::{psl_group, psl_order, psl_perm, Mat2};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum GroupDesc {
    Cyclic(u64),
    Product(Box<GroupDesc>, Box<GroupDesc>),
    Semidirect(SemidirectSpec),
    Dicyclic(u64),
    Klein(u64),
    Q8w(u64),
    Psl(u64),
}

/// Element coordinates in a descriptor's natural coordinates: an integer
/// for `c(n)`, `[a, b]` for `x^a y^b` in `sd` and `dic`, `[g, h]` for
/// products, `[[a, u, v], c]` for `klein`, `[[a, q], c]` for `q8w` (with `q`
/// the quaternion unit index `sign*4 + {1,i,j,k}`), `[[a, b], [c, d]]` for
/// `psl`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Coord {
    Int(i64),
    Tuple(Vec<Coord>),
}

impl Coord {
    pub fn pair(a: i64, b: i64) -> Coord {
        Coord::Tuple(vec![Coord::Int(a), Coord::Int(b)])
    }
}

impl fmt::Display for Coord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&serde_json::to_string(self).map_err(|_| fmt::Error)?)
    }
}

impl GroupDesc {
    pub fn sd(m: u64, n: u64, d: u64) -> GroupDesc {
        GroupDesc::Semidirect(SemidirectSpec { m, n, d: d % m })
    }

    pub fn dp(a: GroupDesc, b: GroupDesc) -> GroupDesc {
        GroupDesc::Product(Box::new(a), Box::new(b))
    }

    pub fn order(&self) -> u128 {
        match self {
            GroupDesc::Cyclic(n) | GroupDesc::Dicyclic(n) => *n as u128,
            GroupDesc::Product(a, b) => a.order() * b.order(),
            GroupDesc::Semidirect(s) => s.m as u128 * s.n as u128,
            GroupDesc::Klein(l) => 12 * *l as u128,
            GroupDesc::Q8w(l) => 24 * *l as u128,
            GroupDesc::Psl(p) => {
                let p = *p as u128;
                p * (p * p - 1) / 2
            }
        }
    }

    pub fn materialize(&self) -> Result<FiniteGroup, ConstructionError> {
        match self {
            GroupDesc::Cyclic(n) => {
                if *n == 0 {
                    return Err(ConstructionError::Parse("c(0)".into()));
                }
                Ok(cyclic(*n))
            }
            GroupDesc::Product(a, b) => Ok(direct_product(&a.materialize()?, &b.materialize()?)),
            GroupDesc::Semidirect(s) => semidirect_cyclic(*s),
            GroupDesc::Dicyclic(n) => dicyclic(*n),
            GroupDesc::Klein(l) => Ok(klein_witness(*l)?.0),
            GroupDesc::Q8w(l) => Ok(q8_witness(*l)?.0),
            GroupDesc::Psl(p) => psl_group(*p).map_err(|e| ConstructionError::Sl2(Box::new(e))),
        }
    }

    fn bad(&self, c: &Coord) -> ConstructionError {
        ConstructionError::BadCoordinate {
            group: self.to_string(),
            coord: c.to_string(),
        }
    }

    fn ints<'a>(&self, c: &'a Coord, len: usize) -> Result<Vec<&'a Coord>, ConstructionError> {
        match c {
            Coord::Tuple(v) if v.len() == len => Ok(v.iter().collect()),
            _ => Err(self.bad(c)),
        }
    }

    fn int(&self, c: &Coord, modulus: u64) -> Result<usize, ConstructionError> {
        match c {
            Coord::Int(x) => Ok(x.rem_euclid(modulus as i64) as usize),
            _ => Err(self.bad(c)),
        }
    }

    /// Index of the element with coordinates `c` in `g = self.materialize()`.
    pub fn element(&self, g: &FiniteGroup, c: &Coord) -> Result<usize, ConstructionError> {
        match self {
            GroupDesc::Cyclic(n) => self.int(c, *n),
            GroupDesc::Product(a, b) => {
                let parts = self.ints(c, 2)?;
                let Repr::Product { left, right } = g.repr() else {
                    return Err(self.bad(c));
                };
                Ok(a.element(left, parts[0])? * right.order() + b.element(right, parts[1])?)
            }
            GroupDesc::Semidirect(s) => {
                let v = self.ints(c, 2)?;
                Ok(self.int(v[0], s.m)? * s.n as usize + self.int(v[1], s.n)?)
            }
            GroupDesc::Dicyclic(n) => {
                let v = self.ints(c, 2)?;
                Ok(self.int(v[0], n / 2)? * 2 + self.int(v[1], 2)?)
            }
            GroupDesc::Klein(l) => {
                let v = self.ints(c, 2)?;
                let core = self.ints(v[0], 3)?;
                let q = self.int(core[1], 2)? * 2 + self.int(core[2], 2)?;
                Ok((self.int(core[0], *l)? * 4 + q) * 3 + self.int(v[1], 3)?)
            }
            GroupDesc::Q8w(l) => {
                let v = self.ints(c, 2)?;
                let core = self.ints(v[0], 2)?;
                Ok((self.int(core[0], *l)? * 8 + self.int(core[1], 8)?) * 3 + self.int(v[1], 3)?)
            }
            GroupDesc::Psl(p) => {
                let m = self.matrix(*p, c)?;
                g.perm_index(&psl_perm(&m)).ok_or_else(|| self.bad(c))
            }
        }
    }

    fn matrix(&self, p: u64, c: &Coord) -> Result<Mat2, ConstructionError> {
        let rows = self.ints(c, 2)?;
        let mut e = Vec::new();
        for r in rows {
            for x in self.ints(r, 2)? {
                match x {
                    Coord::Int(v) => e.push(*v),
                    _ => return Err(self.bad(c)),
                }
            }
        }
        let m = Mat2::new(p, e[0], e[1], e[2], e[3]);
        if !m.is_special() {
            return Err(self.bad(c));
        }
        Ok(m)
    }

    /// Order of the element with coordinates `c`, without building a
    /// permutation group for `psl` factors.
    pub fn element_order(&self, c: &Coord) -> Result<u64, ConstructionError> {
        match self {
            GroupDesc::Cyclic(n) => {
                let a = self.int(c, *n)? as u64;
                Ok(n / gcd(a, *n))
            }
            GroupDesc::Product(a, b) => {
                let parts = self.ints(c, 2)?;
                Ok(lcm(a.element_order(parts[0])?, b.element_order(parts[1])?))
            }
            GroupDesc::Psl(p) => {
                let m = self.matrix(*p, c)?;
                psl_order(&m).map_err(|e| ConstructionError::Sl2(Box::new(e)))
            }
            _ => {
                let g = self.materialize()?;
                Ok(g.element_order(self.element(&g, c)?))
            }
        }
    }
}

impl fmt::Display for GroupDesc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupDesc::Cyclic(n) => write!(f, "c({n})"),
            GroupDesc::Product(a, b) => write!(f, "dp({a},{b})"),
            GroupDesc::Semidirect(s) => write!(f, "sd({},{},{})", s.m, s.n, s.d),
            GroupDesc::Dicyclic(n) => write!(f, "dic({n})"),
            GroupDesc::Klein(l) => write!(f, "klein({l})"),
            GroupDesc::Q8w(l) => write!(f, "q8w({l})"),
            GroupDesc::Psl(p) => write!(f, "psl({p})"),
        }
    }
}

impl Serialize for GroupDesc {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn err(&self) -> ConstructionError {
        ConstructionError::Parse(String::from_utf8_lossy(self.src).into_owned())
    }

    fn eat(&mut self, c: u8) -> Result<(), ConstructionError> {
        if self.src.get(self.pos) == Some(&c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.err())
        }
    }

    fn int(&mut self) -> Result<i64, ConstructionError> {
        let start = self.pos;
        if self.src.get(self.pos) == Some(&b'-') {
            self.pos += 1;
        }
        while self.src.get(self.pos).is_some_and(u8::is_ascii_digit) {
            self.pos += 1;
        }
        std::str::from_utf8(&self.src[start..self.pos])
            .ok()
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| self.err())
    }

    fn uint(&mut self) -> Result<u64, ConstructionError> {
        let v = self.int()?;
        if v <= 0 {
            return Err(self.err());
        }
        Ok(v as u64)
    }

    fn desc(&mut self) -> Result<GroupDesc, ConstructionError> {
        let start = self.pos;
        while self.src.get(self.pos).is_some_and(u8::is_ascii_alphanumeric) {
            self.pos += 1;
        }
        let name = std::str::from_utf8(&self.src[start..self.pos])
            .map_err(|_| self.err())?
            .to_string();
        self.eat(b'(')?;
        let d = match name.as_str() {
            "c" => GroupDesc::Cyclic(self.uint()?),
            "dic" => GroupDesc::Dicyclic(self.uint()?),
            "klein" => GroupDesc::Klein(self.uint()?),
            "q8w" => GroupDesc::Q8w(self.uint()?),
            "psl" => GroupDesc::Psl(self.uint()?),
            "sd" => {
                let m = self.uint()?;
                self.eat(b',')?;
                let n = self.uint()?;
                self.eat(b',')?;
                let d = self.int()?.rem_euclid(m as i64) as u64;
                GroupDesc::sd(m, n, d)
            }
            "dp" => {
                let a = self.desc()?;
                self.eat(b',')?;
                let b = self.desc()?;
                GroupDesc::dp(a, b)
            }
            _ => return Err(self.err()),
        };
        self.eat(b')')?;
        Ok(d)
    }
}

impl FromStr for GroupDesc {
    type Err = ConstructionError;

    fn from_str(s: &str) -> Result<Self, ConstructionError> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let mut p = Parser {
            src: compact.as_bytes(),
            pos: 0,
        };
        let d = p.desc()?;
        if p.pos != compact.len() {
            return Err(p.err());
        }
        Ok(d)
    }
}

/// A group descriptor with a generating pair in coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Witness {
    pub group: GroupDesc,
    pub generators: [Coord; 2],
}

impl Witness {
    /// `(x, y) = ((1, 0), (0, 1))` in `Z/m ⋊_d Z/n`.
    pub fn semidirect(spec: SemidirectSpec) -> Witness {
        Witness {
            group: GroupDesc::Semidirect(spec),
            generators: [Coord::pair(1, 0), Coord::pair(0, 1)],
        }
    }

    pub fn materialize(&self) -> Result<(FiniteGroup, usize, usize), Error> {
        let g = self.group.materialize()?;
        let x = self.group.element(&g, &self.generators[0])?;
        let y = self.group.element(&g, &self.generators[1])?;
        Ok((g, x, y))
    }

    pub fn generator_orders(&self) -> Result<(u64, u64), Error> {
        Ok((
            self.group.element_order(&self.generators[0])?,
            self.group.element_order(&self.generators[1])?,
        ))
    }

    /// The lift to `G × Z/t` with the split of `Z/t` chosen so that the
    /// generators stay a generating pair.
    pub fn extend(&self, t: u64) -> Result<Witness, Error> {
        if t == 1 {
            return Ok(self.clone());
        }
        let (alpha, beta) = self.generator_orders()?;
        let (e_t, e_s) = cyclic_split(t, alpha, beta)?;
        let [x, y] = self.generators.clone();
        Ok(Witness {
            group: GroupDesc::dp(self.group.clone(), GroupDesc::Cyclic(t)),
            generators: [
                Coord::Tuple(vec![x, Coord::Int(e_t as i64)]),
                Coord::Tuple(vec![y, Coord::Int(e_s as i64)]),
            ],
        })
    }
}
