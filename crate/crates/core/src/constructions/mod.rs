//! The classical intersection systems, built as graphs.
//!
//! Three families, uniform shape: vertices are combinatorial objects in a
//! fixed canonical order, an edge joins two objects whose "intersection" is
//! too small to be admissible, and two standard group generators act on the
//! vertices.  Transitivity of that action is certified at build time, so
//! every successfully built system is vertex-transitive.
//!
//! * subsets: k-element subsets of {1..n}, edge iff |A ∩ B| < t
//! * subspaces: k-dimensional subspaces of GF(q)^n, edge iff dim(A ∩ B) < t
//! * permutations: all of S_n, edge iff the two permutations agree on
//!   fewer than t points

mod permutations;
mod subsets;
mod subspaces;

pub use subspaces::SubspaceBasis;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{SystemGraph, DEFAULT_VERTEX_CAP};
use crate::group::GeneratorSet;

/// A constructed graph together with the generators that certify its
/// vertex-transitivity.
#[derive(Clone, Debug)]
pub struct BuiltSystem {
    pub graph: SystemGraph,
    pub generators: GeneratorSet,
}

/// Which system to build, with its parameters.  Serializes as the `meta`
/// block of the JSON interchange format and parses from the command-line
/// descriptor syntax, e.g. `subsets:n=5,k=2,t=1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SystemDescriptor {
    Subsets { n: u32, k: u32, t: u32 },
    Subspaces { n: u32, k: u32, q: u32, t: u32 },
    #[serde(rename = "perms")]
    Perms { n: u32, t: u32 },
}

impl SystemDescriptor {
    pub fn validate(&self) -> Result<()> {
        match *self {
            SystemDescriptor::Subsets { n, k, t } => {
                if !(1 <= t && t <= k && k <= n) {
                    return Err(Error::InvalidParameters(format!(
                        "subsets need 1 <= t <= k <= n, got n={n}, k={k}, t={t}"
                    )));
                }
                if n > 128 {
                    return Err(Error::InvalidParameters(format!(
                        "subset ground sets beyond 128 elements are not supported (n={n})"
                    )));
                }
                Ok(())
            }
            SystemDescriptor::Subspaces { n, k, q, t } => {
                if !(1 <= t && t <= k && k <= n) {
                    return Err(Error::InvalidParameters(format!(
                        "subspaces need 1 <= t <= k <= n, got n={n}, k={k}, t={t}"
                    )));
                }
                crate::gf::check_prime(q)
            }
            SystemDescriptor::Perms { n, t } => {
                if !(1 <= t && t <= n) {
                    return Err(Error::InvalidParameters(format!(
                        "permutations need 1 <= t <= n, got n={n}, t={t}"
                    )));
                }
                Ok(())
            }
        }
    }

    pub fn build(&self) -> Result<BuiltSystem> {
        self.build_with_cap(DEFAULT_VERTEX_CAP)
    }

    pub fn build_with_cap(&self, cap: usize) -> Result<BuiltSystem> {
        self.validate()?;
        match *self {
            SystemDescriptor::Subsets { n, k, t } => subsets::build(n, k, t, cap),
            SystemDescriptor::Subspaces { n, k, q, t } => subspaces::build(n, k, q, t, cap),
            SystemDescriptor::Perms { n, t } => permutations::build(n, t, cap),
        }
    }
}

impl fmt::Display for SystemDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            SystemDescriptor::Subsets { n, k, t } => write!(f, "subsets:n={n},k={k},t={t}"),
            SystemDescriptor::Subspaces { n, k, q, t } => {
                write!(f, "subspaces:n={n},k={k},q={q},t={t}")
            }
            SystemDescriptor::Perms { n, t } => write!(f, "perms:n={n},t={t}"),
        }
    }
}

impl FromStr for SystemDescriptor {
    type Err = Error;

    /// Parses `kind:key=value,...`, e.g. `subspaces:n=4,k=2,q=2,t=1`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = |msg: &str| Error::InvalidParameters(format!("descriptor '{s}': {msg}"));
        let (kind, rest) = s.split_once(':').ok_or_else(|| bad("expected kind:params"))?;
        let mut n = None;
        let mut k = None;
        let mut q = None;
        let mut t = None;
        for part in rest.split(',') {
            let (key, value) = part
                .split_once('=')
                .ok_or_else(|| bad("expected key=value pairs"))?;
            let value: u32 = value
                .trim()
                .parse()
                .map_err(|_| bad(&format!("'{value}' is not a number")))?;
            let slot = match key.trim() {
                "n" => &mut n,
                "k" => &mut k,
                "q" => &mut q,
                "t" => &mut t,
                other => return Err(bad(&format!("unknown key '{other}'"))),
            };
            if slot.replace(value).is_some() {
                return Err(bad(&format!("key '{}' given twice", key.trim())));
            }
        }
        let need = |slot: Option<u32>, name: &str| slot.ok_or_else(|| bad(&format!("missing {name}")));
        let none = |slot: Option<u32>, name: &str| match slot {
            None => Ok(()),
            Some(_) => Err(bad(&format!("key '{name}' does not apply"))),
        };
        let d = match kind.trim() {
            "subsets" => {
                none(q, "q")?;
                SystemDescriptor::Subsets {
                    n: need(n, "n")?,
                    k: need(k, "k")?,
                    t: need(t, "t")?,
                }
            }
            "subspaces" => SystemDescriptor::Subspaces {
                n: need(n, "n")?,
                k: need(k, "k")?,
                q: need(q, "q")?,
                t: need(t, "t")?,
            },
            "perms" => {
                none(q, "q")?;
                none(k, "k")?;
                SystemDescriptor::Perms {
                    n: need(n, "n")?,
                    t: need(t, "t")?,
                }
            }
            other => return Err(bad(&format!("unknown kind '{other}'"))),
        };
        d.validate()?;
        Ok(d)
    }
}

pub fn build_subset_system(n: u32, k: u32, t: u32) -> Result<BuiltSystem> {
    SystemDescriptor::Subsets { n, k, t }.build()
}

pub fn build_subspace_system(n: u32, k: u32, q: u32, t: u32) -> Result<BuiltSystem> {
    SystemDescriptor::Subspaces { n, k, q, t }.build()
}

pub fn build_permutation_system(n: u32, t: u32) -> Result<BuiltSystem> {
    SystemDescriptor::Perms { n, t }.build()
}

/// Exact binomial coefficient, error on overflow.
pub fn binomial(n: u32, k: u32) -> Result<u128> {
    if k > n {
        return Ok(0);
    }
    let k = k.min(n - k) as usize;
    // Pascal row additions: intermediates never exceed entries of the final
    // row, so anything that fits in u128 computes without spurious overflow.
    let mut row = vec![0u128; k + 1];
    row[0] = 1;
    for _ in 0..n {
        for j in (1..=k).rev() {
            row[j] = row[j]
                .checked_add(row[j - 1])
                .ok_or(Error::Overflow("binomial coefficient"))?;
        }
    }
    Ok(row[k])
}

pub fn factorial(n: u32) -> Result<u128> {
    let mut acc: u128 = 1;
    for i in 2..=n as u128 {
        acc = acc.checked_mul(i).ok_or(Error::Overflow("factorial"))?;
    }
    Ok(acc)
}

/// Exact Gaussian binomial: the number of k-dimensional subspaces of an
/// n-dimensional space over GF(q).  Computed by the q-Pascal recurrence
/// [n,k] = [n-1,k-1] + q^k [n-1,k], so every intermediate value is a
/// partial count and overflow is detected rather than silently wrapped.
pub fn gaussian_binomial(n: u32, k: u32, q: u32) -> Result<u128> {
    if k > n {
        return Ok(0);
    }
    let overflow = || Error::Overflow("gaussian binomial");
    let k = k.min(n - k);
    // row[j] = [m, j] for the current m.
    let mut row: Vec<u128> = vec![0; k as usize + 1];
    row[0] = 1;
    for m in 1..=n {
        let top = (k.min(m)) as usize;
        for j in (1..=top).rev() {
            let mut qj: u128 = 1;
            for _ in 0..j {
                qj = qj.checked_mul(q as u128).ok_or_else(overflow)?;
            }
            let scaled = row[j].checked_mul(qj).ok_or_else(overflow)?;
            row[j] = row[j - 1].checked_add(scaled).ok_or_else(overflow)?;
        }
    }
    Ok(row[k as usize])
}

/// The classical closed-form value for the independence number of a system,
/// with a validity verdict: `valid` means the formula is a proven exact
/// value for these parameters, otherwise it is only a candidate (a lower
/// bound from the obvious family, conjectured or out of proven range).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlphaPrediction {
    pub value: u128,
    pub valid: bool,
    pub condition: String,
}

pub fn predicted_alpha(d: &SystemDescriptor) -> Result<AlphaPrediction> {
    d.validate()?;
    match *d {
        SystemDescriptor::Subsets { n, k, t } => {
            // Fixing t elements leaves C(n-t, k-t) supersets; exact for n
            // beyond the classical threshold.
            let value = binomial(n - t, k - t)?;
            let valid = n as u64 >= (k as u64 - t as u64 + 1) * (t as u64 + 1);
            Ok(AlphaPrediction {
                value,
                valid,
                condition: format!(
                    "exact when n >= (k-t+1)(t+1); here n={n} vs {}",
                    (k - t + 1) * (t + 1)
                ),
            })
        }
        SystemDescriptor::Subspaces { n, k, q, t } => {
            if t == 1 {
                let value = gaussian_binomial(n - 1, k - 1, q)?;
                let valid = 2 * k < n || n % k == 0;
                Ok(AlphaPrediction {
                    value,
                    valid,
                    condition: format!("exact when 2k < n or k divides n; here n={n}, k={k}"),
                })
            } else {
                let fix_t = gaussian_binomial(n - t, k - t, q)?;
                let inside = gaussian_binomial(2 * k - t, k, q)?;
                let value = fix_t.max(inside);
                let valid = n >= 2 * k - t;
                Ok(AlphaPrediction {
                    value,
                    valid,
                    condition: format!("exact when n >= 2k-t; here n={n} vs {}", 2 * k - t),
                })
            }
        }
        SystemDescriptor::Perms { n, t } => {
            let value = factorial(n - t)?;
            if t == 1 {
                Ok(AlphaPrediction {
                    value,
                    valid: true,
                    condition: "exact for every n".to_string(),
                })
            } else {
                Ok(AlphaPrediction {
                    value,
                    valid: false,
                    condition: "conjectural for t >= 2".to_string(),
                })
            }
        }
    }
}
