use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use super::{smith_normal_form, IntMatrix};

/// Finitely generated abelian group `Z^rank ⊕ Z/d_1 ⊕ … ⊕ Z/d_k` with
/// `1 < d_1 | d_2 | … | d_k`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AbelianGroup {
    pub free_rank: usize,
    pub torsion: Vec<BigInt>,
}

impl AbelianGroup {
    pub fn trivial() -> Self {
        Self::free(0)
    }

    pub fn free(rank: usize) -> Self {
        AbelianGroup {
            free_rank: rank,
            torsion: Vec::new(),
        }
    }

    /// Builds from invariant factors; units are dropped, the rest must form
    /// a divisibility chain.
    pub fn new(free_rank: usize, factors: impl IntoIterator<Item = BigInt>) -> Self {
        let torsion: Vec<BigInt> = factors.into_iter().filter(|d| !d.is_one()).collect();
        debug_assert!(torsion.iter().all(|d| *d > BigInt::one()));
        debug_assert!(torsion.windows(2).all(|w| (&w[1] % &w[0]) == BigInt::from(0)));
        AbelianGroup { free_rank, torsion }
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    pub fn torsion_u64(&self) -> Vec<Option<u64>> {
        self.torsion.iter().map(|d| d.to_u64()).collect()
    }
}

/// Kernel of the linear map given by `m` (acting on column vectors); always
/// free, of rank `#cols - rank(m)`.
pub fn kernel_group(m: &IntMatrix) -> AbelianGroup {
    let s = smith_normal_form(m);
    AbelianGroup::free(m.cols() - s.rank())
}

/// `Z^rows / im(m)`.
pub fn cokernel_group(m: &IntMatrix) -> AbelianGroup {
    let s = smith_normal_form(m);
    let factors = s.invariant_factors();
    AbelianGroup::new(m.rows() - factors.len(), factors)
}

impl fmt::Display for AbelianGroup {
    /// `0`, `Z`, `Z^2`, `Z/2`, `Z + Z/2 + Z/6`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        parts.extend(self.torsion.iter().map(|d| format!("Z/{d}")));
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

impl Serialize for AbelianGroup {
    /// `{"rank": r, "torsion": [d1, ...]}`; factors beyond `u64` are strings.
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let torsion: Vec<serde_json::Value> = self
            .torsion
            .iter()
            .map(|d| match d.to_u64() {
                Some(x) => serde_json::Value::from(x),
                None => serde_json::Value::from(d.to_string()),
            })
            .collect();
        let mut st = s.serialize_struct("AbelianGroup", 2)?;
        st.serialize_field("rank", &self.free_rank)?;
        st.serialize_field("torsion", &torsion)?;
        st.end()
    }
}
