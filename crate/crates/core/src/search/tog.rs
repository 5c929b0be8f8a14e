//! The maximal number of translations `t(g)` of a genus-`g` translation
//! surface.

use std::fmt;

use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};

use crate::descriptor::Witness;
use crate::error::Error;
use crate::numtheory::divisors;
use crate::oracle::{decide, Reason, Status, Verdict};
use crate::origami::{one_cylinder, regular_origami, Origami};
use crate::search::enumerate::{enumerate_regular, EnumLimits};
use crate::stratum::Stratum;

/// A candidate singularity order; `Infinity` stands for surfaces that are
/// not regular origamis.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Candidate {
    M(u64),
    Infinity,
}

impl fmt::Display for Candidate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Candidate::M(m) => write!(f, "{m}"),
            Candidate::Infinity => f.write_str("inf"),
        }
    }
}

impl Serialize for Candidate {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Candidate::M(m) => s.serialize_u64(*m),
            Candidate::Infinity => s.serialize_str("inf"),
        }
    }
}

/// Divisors `m` of `2(g − 1)` with `3 ∤ m` and `4 ∤ m`, ascending, then `∞`.
pub fn candidate_ms(g: u64) -> Result<Vec<Candidate>, Error> {
    if g < 2 {
        return Err(Error::InvalidGenus(g));
    }
    let mut out: Vec<Candidate> = divisors(2 * (g - 1))
        .into_iter()
        .filter(|m| m % 3 != 0 && m % 4 != 0)
        .map(Candidate::M)
        .collect();
    out.push(Candidate::Infinity);
    Ok(out)
}

/// Translation count of a regular origami of genus `g` in `H(m^(2(g−1)/m))`.
pub fn t_candidate(g: u64, c: Candidate) -> u64 {
    match c {
        Candidate::M(m) => (m + 1) * (2 * (g - 1) / m),
        Candidate::Infinity => 2 * (g - 1),
    }
}

/// What realizes the lower bound.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LowerWitness {
    Group(Witness),
    Enumerated(Origami),
    OneCylinder,
    /// Regular origamis in `H(1^(2g−2))` exist by the classification of
    /// `G(1)`, but no construction is attached.
    CitedG1,
}

impl fmt::Display for LowerWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LowerWitness::Group(w) => write!(f, "{}", w.group),
            LowerWitness::Enumerated(o) => write!(f, "{o}"),
            LowerWitness::OneCylinder => f.write_str("one_cylinder"),
            LowerWitness::CitedG1 => f.write_str("cited_g1"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundStatus {
    Exact,
    Interval,
}

/// A verdict for one candidate `m` scanned before the lower bound was found.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Blocking {
    pub m: u64,
    pub t: u64,
    pub verdict: Verdict,
}

impl Serialize for Blocking {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(None)?;
        map.serialize_entry("m", &self.m)?;
        map.serialize_entry("t", &self.t)?;
        map.serialize_entry("stratum", &self.verdict.stratum)?;
        map.serialize_entry("status", &self.verdict.status)?;
        if let Some(r) = &self.verdict.reason {
            map.serialize_entry("reason", r)?;
        }
        map.end()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TransBound {
    pub g: u64,
    pub lower: u64,
    pub m: Candidate,
    pub witness: LowerWitness,
    pub upper: u64,
    pub status: BoundStatus,
    pub blocking: Vec<Blocking>,
}

impl TransBound {
    /// The stratum of the lower-bound witness.
    pub fn stratum(&self) -> Stratum {
        match self.m {
            Candidate::M(m) => Stratum::uniform(m, 2 * (self.g - 1) / m).expect("even total"),
            Candidate::Infinity => one_cylinder(self.g).expect("g ≥ 2").stratum(),
        }
    }

    /// Materializes the witness and checks its genus and translation count.
    /// `None` when the witness is cited rather than constructed.
    pub fn verify_lower_bound(&self) -> Result<Option<bool>, Error> {
        let o = match &self.witness {
            LowerWitness::Group(w) => {
                let (g, x, y) = w.materialize()?;
                regular_origami(&g, x, y)?
            }
            LowerWitness::Enumerated(o) => o.clone(),
            LowerWitness::OneCylinder => one_cylinder(self.g)?,
            LowerWitness::CitedG1 => return Ok(None),
        };
        Ok(Some(
            o.genus() == self.g && o.translation_count() as u64 == self.lower && o.stratum() == self.stratum(),
        ))
    }
}

impl Serialize for TransBound {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(None)?;
        map.serialize_entry("g", &self.g)?;
        map.serialize_entry("status", &self.status)?;
        match self.status {
            BoundStatus::Exact => map.serialize_entry("t", &self.lower)?,
            BoundStatus::Interval => {
                map.serialize_entry("lower", &self.lower)?;
                map.serialize_entry("upper", &self.upper)?;
            }
        }
        map.serialize_entry("m", &self.m)?;
        map.serialize_entry("witness", &self.witness.to_string())?;
        if self.status == BoundStatus::Interval {
            let open: Vec<&Blocking> = self
                .blocking
                .iter()
                .filter(|b| b.verdict.status == Status::Unknown)
                .collect();
            map.serialize_entry("blocking", &open)?;
        }
        map.end()
    }
}

fn verdict_for(g: u64, m: u64) -> Result<Verdict, Error> {
    let l = 2 * (g - 1) / m;
    if m > 1 {
        return decide(&Stratum::uniform(m, l)?);
    }
    let v = decide(&Stratum::uniform(1, l)?)?;
    if (g - 1) % 2 == 0 || (g - 1) % 3 == 0 {
        Ok(Verdict {
            status: Status::Exists,
            reason: None,
            ..v
        })
    } else {
        Ok(Verdict::not_exists(v.stratum, Reason::CitedG1))
    }
}

/// Settles an unknown stratum by exhaustive enumeration.
fn resolve(v: Verdict, t: u64) -> Result<(Verdict, Option<Origami>), Error> {
    let found = enumerate_regular(t as usize, EnumLimits::default())?
        .into_iter()
        .find(|w| w.stratum == v.stratum);
    Ok(match found {
        Some(w) => (
            Verdict {
                status: Status::Exists,
                ..v
            },
            Some(w.origami),
        ),
        None => (Verdict::not_exists(v.stratum, Reason::ExhaustiveSearch), None),
    })
}

/// Scans the candidate `m` ascending. The first realizable `m` gives the
/// lower bound; an undecided `m` before it leaves an interval. Undecided
/// strata whose group order is at most `budget` go to the enumerator.
pub fn t_of_g(g: u64, budget: usize) -> Result<TransBound, Error> {
    let mut blocking = Vec::new();
    let mut upper = None;
    for c in candidate_ms(g)? {
        let t = t_candidate(g, c);
        let Candidate::M(m) = c else {
            return Ok(TransBound {
                g,
                lower: t,
                m: c,
                witness: LowerWitness::OneCylinder,
                upper: upper.unwrap_or(t),
                status: if upper.is_some() {
                    BoundStatus::Interval
                } else {
                    BoundStatus::Exact
                },
                blocking,
            });
        };
        let mut v = verdict_for(g, m)?;
        let mut enumerated = None;
        if v.status == Status::Unknown && t as usize <= budget.min(EnumLimits::default().max_n) {
            (v, enumerated) = resolve(v, t)?;
        }
        match v.status {
            Status::Exists => {
                let witness = match (enumerated, v.witness) {
                    (Some(o), _) => LowerWitness::Enumerated(o),
                    (None, Some(w)) => LowerWitness::Group(w),
                    (None, None) => LowerWitness::CitedG1,
                };
                return Ok(TransBound {
                    g,
                    lower: t,
                    m: c,
                    witness,
                    upper: upper.unwrap_or(t),
                    status: if upper.is_some() {
                        BoundStatus::Interval
                    } else {
                        BoundStatus::Exact
                    },
                    blocking,
                });
            }
            Status::Unknown => {
                upper.get_or_insert(t);
                blocking.push(Blocking { m, t, verdict: v });
            }
            Status::NotExists => blocking.push(Blocking { m, t, verdict: v }),
        }
    }
    unreachable!("the candidate list ends with infinity")
}
