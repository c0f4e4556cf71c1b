use serde::{Deserialize, Serialize};

use super::{check_prime, root_order, MubBasis, MubSet, StateVector};
use crate::error::{Error, Result};
use crate::exactfield::Cyclotomic;

/// Serialised basis: `exponents[x][k]` is e with scaled entry ω^e, or null.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BasisJson {
    pub index: usize,
    pub label: String,
    pub exponents: Vec<Vec<Option<u32>>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MubSetJson {
    pub dim: u32,
    /// Entries are powers of a primitive root of this order.
    pub root_order: u32,
    pub bases: Vec<BasisJson>,
}

fn basis_label(j: usize) -> String {
    match j {
        0 => "computational".to_string(),
        1 => "H_1 (Fourier)".to_string(),
        j => format!("H_{j}"),
    }
}

impl From<&MubSet> for MubSetJson {
    fn from(set: &MubSet) -> Self {
        let du = set.dim() as usize;
        let bases = set
            .bases()
            .iter()
            .map(|b| BasisJson {
                index: b.index(),
                label: basis_label(b.index()),
                exponents: (0..du)
                    .map(|x| (0..du).map(|k| b.exponent(x, k)).collect())
                    .collect(),
            })
            .collect();
        MubSetJson {
            dim: set.dim(),
            root_order: set.order(),
            bases,
        }
    }
}

impl MubSetJson {
    pub fn into_mub_set(self) -> Result<MubSet> {
        let d = self.dim;
        check_prime(d)?;
        if self.root_order != root_order(d) {
            return Err(Error::Parse(format!(
                "root order {} does not match dimension {d}",
                self.root_order
            )));
        }
        let du = d as usize;
        if self.bases.len() != du + 1 {
            return Err(Error::Parse(format!("expected {} bases, found {}", du + 1, self.bases.len())));
        }
        let mut bases = Vec::with_capacity(du + 1);
        for (pos, b) in self.bases.into_iter().enumerate() {
            if b.index != pos {
                return Err(Error::Parse(format!("basis {pos} is labelled {}", b.index)));
            }
            if b.exponents.len() != du || b.exponents.iter().any(|r| r.len() != du) {
                return Err(Error::Parse(format!("basis {pos} is not {du}×{du}")));
            }
            if pos == 0 {
                let identity = (0..du).all(|x| (0..du).all(|k| b.exponents[x][k] == (x == k).then_some(0)));
                if !identity {
                    return Err(Error::Parse("basis 0 must be the identity".into()));
                }
                bases.push(MubBasis {
                    dim: d,
                    index: 0,
                    exps: Vec::new(),
                });
            } else {
                let exps = b
                    .exponents
                    .into_iter()
                    .map(|row| {
                        row.into_iter()
                            .map(|e| match e {
                                Some(e) if e < self.root_order => Ok(e),
                                _ => Err(Error::Parse(format!("basis {pos}: bad entry {e:?}"))),
                            })
                            .collect::<Result<Vec<u32>>>()
                    })
                    .collect::<Result<Vec<_>>>()?;
                bases.push(MubBasis {
                    dim: d,
                    index: pos,
                    exps,
                });
            }
        }
        Ok(MubSet { dim: d, bases })
    }
}

/// Serialised state: each entry is the list of power-basis coordinates as
/// "num/den" strings.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StateJson {
    pub dim: u32,
    pub entries: Vec<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
}

impl From<&StateVector> for StateJson {
    fn from(psi: &StateVector) -> Self {
        StateJson {
            dim: psi.dim(),
            entries: psi.entries().iter().map(Cyclotomic::to_strings).collect(),
            label: psi.label.clone(),
        }
    }
}

impl StateJson {
    pub fn into_state(self) -> Result<StateVector> {
        check_prime(self.dim)?;
        if self.entries.is_empty() {
            return Err(Error::Parse("state has no entries".into()));
        }
        if self.entries.len() != self.dim as usize {
            return Err(Error::Parse(format!(
                "state of dimension {} has {} entries",
                self.dim,
                self.entries.len()
            )));
        }
        let order = root_order(self.dim);
        let entries = self
            .entries
            .iter()
            .enumerate()
            .map(|(x, e)| {
                Cyclotomic::from_strings(order, e)
                    .map_err(|err| Error::Parse(format!("entry {x}: {err}")))
            })
            .collect::<Result<Vec<_>>>()?;
        let mut psi = StateVector::new(self.dim, entries)?;
        psi.label = self.label;
        psi.require_nonzero()?;
        Ok(psi)
    }
}
