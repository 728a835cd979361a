//! 2-cyclotomic cosets modulo `2^m - 1` and the doubling-count tables built
//! on top of them.

use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CosetError {
    #[error("coset table needs 2 <= m <= 24, got {0}")]
    MOutOfRange(u32),
    #[error("epsilon table needs 1 <= t <= 24, got {0}")]
    TOutOfRange(u32),
    #[error("{j} is not a coset leader modulo 2^{m}-1")]
    NotLeader { j: u64, m: u32 },
    #[error("coset of {j} has size {size}, expected the full size {m}")]
    NotFullSize { j: u64, size: usize, m: u32 },
}

/// One cyclotomic coset. Members are listed in doubling order from the leader.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Coset {
    pub leader: u32,
    pub members: Vec<u32>,
    /// Number of even members.
    pub rho: u32,
    /// `(m * rho / size) mod 2`.
    pub v: bool,
}

impl Coset {
    pub fn size(&self) -> usize {
        self.members.len()
    }
}

impl Serialize for Coset {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Record<'a> {
            leader: u32,
            size: usize,
            members: &'a [u32],
            rho: u32,
            v: u8,
        }
        Record {
            leader: self.leader,
            size: self.size(),
            members: &self.members,
            rho: self.rho,
            v: u8::from(self.v),
        }
        .serialize(serializer)
    }
}

/// All cosets of `Z_n`, `n = 2^m - 1`, in ascending leader order.
#[derive(Debug, Clone)]
pub struct CosetTable {
    m: u32,
    n: u32,
    cosets: Vec<Coset>,
    /// residue -> index into `cosets`
    index: Vec<u32>,
}

impl CosetTable {
    pub fn build(m: u32) -> Result<Self, CosetError> {
        if !(2..=24).contains(&m) {
            return Err(CosetError::MOutOfRange(m));
        }
        let n = (1u32 << m) - 1;
        let mut index = vec![u32::MAX; n as usize];
        let mut cosets = Vec::new();
        for j in 0..n {
            if index[j as usize] != u32::MAX {
                continue;
            }
            let id = cosets.len() as u32;
            let mut members = Vec::new();
            let mut c = j;
            loop {
                index[c as usize] = id;
                members.push(c);
                c = ((u64::from(c) * 2) % u64::from(n)) as u32;
                if c == j {
                    break;
                }
            }
            let rho = members.iter().filter(|&&c| c % 2 == 0).count() as u32;
            let size = members.len() as u32;
            let v = ((m * rho) / size) % 2 == 1;
            cosets.push(Coset {
                leader: j,
                members,
                rho,
                v,
            });
        }
        Ok(CosetTable { m, n, cosets, index })
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn cosets(&self) -> &[Coset] {
        &self.cosets
    }

    pub fn leaders(&self) -> impl Iterator<Item = u32> + '_ {
        self.cosets.iter().map(|c| c.leader)
    }

    pub fn len(&self) -> usize {
        self.cosets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cosets.is_empty()
    }

    /// Coset containing `j` (any integer, reduced mod n).
    pub fn coset_of(&self, j: i64) -> &Coset {
        &self.cosets[self.index[self.reduce(j)] as usize]
    }

    pub fn leader_of(&self, j: i64) -> u32 {
        self.coset_of(j).leader
    }

    pub fn size_of(&self, j: i64) -> usize {
        self.coset_of(j).size()
    }

    /// Coset whose leader is exactly `leader`.
    pub fn get(&self, leader: u32) -> Option<&Coset> {
        let c = self.cosets.get(*self.index.get(leader as usize)? as usize)?;
        (c.leader == leader).then_some(c)
    }

    pub fn same_coset(&self, a: i64, b: i64) -> bool {
        self.index[self.reduce(a)] == self.index[self.reduce(b)]
    }

    fn reduce(&self, j: i64) -> usize {
        j.rem_euclid(i64::from(self.n)) as usize
    }

    /// Number of odd and even members of the full-size coset led by `j`,
    /// which equal `(wt(j), m - wt(j))`.
    pub fn odd_even_split(&self, j: u32) -> Result<(u32, u32), CosetError> {
        let c = self.get(j).ok_or(CosetError::NotLeader {
            j: u64::from(j),
            m: self.m,
        })?;
        if c.size() != self.m as usize {
            return Err(CosetError::NotFullSize {
                j: u64::from(j),
                size: c.size(),
                m: self.m,
            });
        }
        let w = weight2(u64::from(j));
        Ok((w, self.m - w))
    }
}

/// Binary weight (population count).
pub fn weight2(j: u64) -> u32 {
    j.count_ones()
}

/// Doubling counts for odd `a <= T = 2^t - 1`.
///
/// `epsilon(a)` is the number of `i >= 0` with `2^i a <= T`; `kappa(a)` is its
/// parity and `B_a = {2^i a : i < epsilon(a)}`. The sets `B_a` partition
/// `{1, ..., T}`.
#[derive(Debug, Clone)]
pub struct EpsilonTable {
    t: u32,
    /// indexed by `(a - 1) / 2`
    epsilon: Vec<u8>,
}

impl EpsilonTable {
    pub fn build(t: u32) -> Result<Self, CosetError> {
        if !(1..=24).contains(&t) {
            return Err(CosetError::TOutOfRange(t));
        }
        let big_t = (1u64 << t) - 1;
        let epsilon = (1..=big_t)
            .step_by(2)
            .map(|a| {
                let mut count = 0u8;
                let mut x = a;
                while x <= big_t {
                    count += 1;
                    x <<= 1;
                }
                count
            })
            .collect();
        Ok(EpsilonTable { t, epsilon })
    }

    pub fn t(&self) -> u32 {
        self.t
    }

    /// `T = 2^t - 1`.
    pub fn big_t(&self) -> u64 {
        (1u64 << self.t) - 1
    }

    /// Odd values `1, 3, ..., T`.
    pub fn odd_values(&self) -> impl Iterator<Item = u64> {
        (1..=self.big_t()).step_by(2)
    }

    /// # Panics
    /// If `a` is even or larger than `T`.
    pub fn epsilon(&self, a: u64) -> u32 {
        assert!(
            a % 2 == 1 && a <= self.big_t(),
            "epsilon({a}) undefined for t = {}",
            self.t
        );
        u32::from(self.epsilon[(a / 2) as usize])
    }

    pub fn kappa(&self, a: u64) -> bool {
        self.epsilon(a) % 2 == 1
    }

    pub fn b_set(&self, a: u64) -> Vec<u64> {
        (0..self.epsilon(a)).map(|i| a << i).collect()
    }

    /// Odd `a <= T` with `kappa(a) = 1`.
    pub fn kappa_selected(&self) -> impl Iterator<Item = u64> + '_ {
        self.odd_values().filter(|&a| self.kappa(a))
    }

    /// `N_t`, the number of odd `a` with odd `epsilon(a)`.
    pub fn count_odd_epsilon(&self) -> u64 {
        self.epsilon.iter().filter(|&&e| e % 2 == 1).count() as u64
    }
}

/// `N_t` by direct enumeration.
pub fn count_odd_epsilon(t: u32) -> Result<u64, CosetError> {
    Ok(EpsilonTable::build(t)?.count_odd_epsilon())
}

/// Closed form `(2^t + (-1)^(t-1)) / 3` for `t >= 2`, and 1 for `t = 1`.
pub fn odd_epsilon_closed_form(t: u32) -> u64 {
    if t <= 1 {
        return 1;
    }
    let p = 1i64 << t;
    let sign = if t % 2 == 1 { 1 } else { -1 };
    ((p + sign) / 3) as u64
}
