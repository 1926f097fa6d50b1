//! Tournaments on `n` labeled vertices, stored as a full bit matrix.
//!
//! Row `v` of the out-matrix is the out-neighborhood of `v`; the in-matrix
//! (its transpose) is kept alongside so in-neighborhoods and reversal are
//! free.

use num_bigint::BigUint;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bitset::{BitSet, Word};
use crate::error::{Error, Result};

/// 0-based vertex label.
pub type VertexId = usize;

/// A set of vertices of one tournament.
pub type VertexSet<W> = BitSet<W>;

/// Number of unordered pairs, `n(n-1)/2`.
#[inline]
pub const fn pair_count(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

/// Unordered pairs `(i, j)`, `i < j`, in lexicographic order.
pub fn pairs(n: usize) -> impl Iterator<Item = (usize, usize)> {
    (0..n).flat_map(move |i| (i + 1..n).map(move |j| (i, j)))
}

/// Position of a tournament in the enumeration of all tournaments on `n`
/// vertices. Bit `k` of `code` orients the `k`-th lexicographic pair
/// `(i, j)`: set means `i -> j`, clear means `j -> i`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct InstanceIndex {
    pub n: usize,
    pub code: BigUint,
}

impl InstanceIndex {
    pub fn new(n: usize, code: impl Into<BigUint>) -> Self {
        InstanceIndex { n, code: code.into() }
    }

    /// Number of tournaments on `n` labeled vertices.
    pub fn space_size(n: usize) -> BigUint {
        BigUint::one() << pair_count(n)
    }

    /// Hex digits needed for the pair bits: `ceil(C(n,2) / 4)`.
    pub fn hex_width(n: usize) -> usize {
        pair_count(n).div_ceil(4)
    }

    /// Zero-padded lowercase hex, most significant digit first.
    pub fn to_hex(&self) -> String {
        let width = Self::hex_width(self.n);
        if width == 0 {
            return String::new();
        }
        format!("{:0>width$}", self.code.to_str_radix(16), width = width)
    }

    pub fn from_hex(n: usize, digits: &str) -> Result<Self> {
        let width = Self::hex_width(n);
        if digits.len() != width {
            return Err(Error::Parse {
                line: 2,
                msg: format!("bad hex length: expected {width} digits, found {}", digits.len()),
            });
        }
        let code = if width == 0 {
            BigUint::zero()
        } else {
            BigUint::parse_bytes(digits.as_bytes(), 16).ok_or_else(|| Error::Parse {
                line: 2,
                msg: format!("invalid hex digits {digits:?}"),
            })?
        };
        if code >= Self::space_size(n) {
            return Err(Error::CodeOutOfRange { n });
        }
        Ok(InstanceIndex { n, code })
    }

    pub fn as_u64(&self) -> Option<u64> {
        u64::try_from(&self.code).ok()
    }
}

/// Instance generators.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Model {
    /// Each pair, in lexicographic order, oriented `i -> j` by one fair bit
    /// from ChaCha8 seeded through `SeedableRng::seed_from_u64(seed)`.
    Uniform { seed: u64 },
    /// `i -> j` whenever `i < j`.
    Transitive,
    /// Odd `n` only: `i` beats `i+1, ..., i+(n-1)/2` modulo `n`.
    Rotational,
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Tournament<W: Word> {
    out: Vec<BitSet<W>>,
    inc: Vec<BitSet<W>>,
}

impl<W: Word> std::fmt::Debug for Tournament<W> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Tournament(n={}, hex:{})", self.n(), self.to_index().to_hex())
    }
}

impl<W: Word> Tournament<W> {
    /// Builds from out-rows known to satisfy the tournament invariants.
    fn from_out_rows(out: Vec<BitSet<W>>) -> Self {
        let n = out.len();
        let mut inc = vec![BitSet::new(n); n];
        for (i, row) in out.iter().enumerate() {
            for j in row {
                inc[j].insert(i);
            }
        }
        let t = Tournament { out, inc };
        debug_assert!(t.check_invariants().is_ok());
        t
    }

    /// Orients pairs with a closure called once per `i < j`, in order.
    fn from_pair_fn(n: usize, mut forward: impl FnMut(usize, usize) -> bool) -> Self {
        let mut out = vec![BitSet::new(n); n];
        for (i, j) in pairs(n) {
            if forward(i, j) {
                out[i].insert(j);
            } else {
                out[j].insert(i);
            }
        }
        Self::from_out_rows(out)
    }

    /// Validates an `n x n` orientation matrix, `adj[i][j]` meaning `i -> j`.
    pub fn build<R: AsRef<[bool]>>(n: usize, adj: &[R]) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptyTournament);
        }
        if adj.len() != n {
            return Err(Error::Shape { expected: n, found: format!("{} rows", adj.len()) });
        }
        if let Some((r, row)) = adj.iter().enumerate().find(|(_, row)| row.as_ref().len() != n) {
            return Err(Error::Shape {
                expected: n,
                found: format!("row {r} of length {}", row.as_ref().len()),
            });
        }
        let at = |i: usize, j: usize| adj[i].as_ref()[j];
        if let Some(i) = (0..n).find(|&i| at(i, i)) {
            return Err(Error::SelfLoop(i));
        }
        for (i, j) in pairs(n) {
            match (at(i, j), at(j, i)) {
                (true, true) => return Err(Error::DoubleOrientation(i, j)),
                (false, false) => return Err(Error::MissingOrientation(i, j)),
                _ => {}
            }
        }
        Ok(Self::from_pair_fn(n, at))
    }

    /// Fast path of [`Tournament::from_index`] for `C(n,2) <= 64`.
    pub fn from_code(n: usize, code: u64) -> Result<Self> {
        let m = pair_count(n);
        if n == 0 {
            return Err(Error::EmptyTournament);
        }
        if m > 64 || (m < 64 && code >> m != 0) {
            return Err(Error::CodeOutOfRange { n });
        }
        let mut k = 0;
        Ok(Self::from_pair_fn(n, |_, _| {
            let b = code >> k & 1 == 1;
            k += 1;
            b
        }))
    }

    pub fn from_index(idx: &InstanceIndex) -> Result<Self> {
        if idx.n == 0 {
            return Err(Error::EmptyTournament);
        }
        if idx.code.bits() > pair_count(idx.n) as u64 {
            return Err(Error::CodeOutOfRange { n: idx.n });
        }
        let mut k = 0u64;
        Ok(Self::from_pair_fn(idx.n, |_, _| {
            let b = idx.code.bit(k);
            k += 1;
            b
        }))
    }

    pub fn to_index(&self) -> InstanceIndex {
        let n = self.n();
        let mut code = BigUint::zero();
        for (k, (i, j)) in pairs(n).enumerate() {
            if self.has_edge(i, j) {
                code.set_bit(k as u64, true);
            }
        }
        InstanceIndex { n, code }
    }

    /// `None` when the code does not fit in 64 bits.
    pub fn to_code(&self) -> Option<u64> {
        if pair_count(self.n()) > 64 {
            return None;
        }
        let mut code = 0u64;
        for (k, (i, j)) in pairs(self.n()).enumerate() {
            code |= (self.has_edge(i, j) as u64) << k;
        }
        Some(code)
    }

    pub fn generate(n: usize, model: Model) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptyTournament);
        }
        Ok(match model {
            Model::Uniform { seed } => {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                Self::from_pair_fn(n, |_, _| rng.gen::<bool>())
            }
            Model::Transitive => Self::transitive(n),
            Model::Rotational => {
                if n.is_multiple_of(2) {
                    return Err(Error::EvenRotational(n));
                }
                Self::from_pair_fn(n, |i, j| j - i <= (n - 1) / 2)
            }
        })
    }

    pub fn transitive(n: usize) -> Self {
        assert!(n >= 1, "tournaments need at least one vertex");
        Self::from_pair_fn(n, |_, _| true)
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.out.len()
    }

    #[inline]
    pub fn has_edge(&self, from: VertexId, to: VertexId) -> bool {
        self.out[from].contains(to)
    }

    /// Panicking accessor for the out-neighborhood row of `v`.
    #[inline]
    pub fn out_row(&self, v: VertexId) -> &VertexSet<W> {
        &self.out[v]
    }

    /// Panicking accessor for the in-neighborhood row of `v`.
    #[inline]
    pub fn in_row(&self, v: VertexId) -> &VertexSet<W> {
        &self.inc[v]
    }

    pub fn check_vertex(&self, v: VertexId) -> Result<()> {
        if v < self.n() {
            Ok(())
        } else {
            Err(Error::VertexOutOfRange { vertex: v, n: self.n() })
        }
    }

    pub fn out_neighbors(&self, v: VertexId) -> Result<&VertexSet<W>> {
        self.check_vertex(v)?;
        Ok(&self.out[v])
    }

    pub fn in_neighbors(&self, v: VertexId) -> Result<&VertexSet<W>> {
        self.check_vertex(v)?;
        Ok(&self.inc[v])
    }

    pub fn out_degree(&self, v: VertexId) -> usize {
        self.out[v].len()
    }

    pub fn in_degree(&self, v: VertexId) -> usize {
        self.inc[v].len()
    }

    pub fn out_degrees(&self) -> Vec<usize> {
        (0..self.n()).map(|v| self.out_degree(v)).collect()
    }

    pub fn max_out_degree_vertices(&self) -> VertexSet<W> {
        let degrees = self.out_degrees();
        let max = degrees.iter().copied().max().unwrap_or(0);
        BitSet::from_members(self.n(), (0..self.n()).filter(|&v| degrees[v] == max))
    }

    pub fn reverse(&self) -> Self {
        Tournament { out: self.inc.clone(), inc: self.out.clone() }
    }

    /// Induced sub-tournament on `keep`. The returned map sends each new
    /// index to its original label, in ascending order.
    pub fn restrict(&self, keep: &VertexSet<W>) -> Result<(Self, Vec<VertexId>)> {
        if keep.universe() != self.n() {
            return Err(Error::SizeMismatch(self.n(), keep.universe()));
        }
        let labels: Vec<VertexId> = keep.iter().collect();
        if labels.is_empty() {
            return Err(Error::EmptyRestriction);
        }
        let m = labels.len();
        let mut out = vec![BitSet::new(m); m];
        for (a, &u) in labels.iter().enumerate() {
            for (b, &v) in labels.iter().enumerate() {
                if self.has_edge(u, v) {
                    out[a].insert(b);
                }
            }
        }
        Ok((Self::from_out_rows(out), labels))
    }

    pub fn to_matrix(&self) -> Vec<Vec<bool>> {
        let n = self.n();
        (0..n).map(|i| (0..n).map(|j| self.has_edge(i, j)).collect()).collect()
    }

    /// Re-checks the orientation invariants; panics if the cached in-rows
    /// disagree with the out-rows.
    pub fn check_invariants(&self) -> Result<()> {
        let n = self.n();
        if n == 0 {
            return Err(Error::EmptyTournament);
        }
        for i in 0..n {
            if self.out[i].contains(i) {
                return Err(Error::SelfLoop(i));
            }
        }
        for (i, j) in pairs(n) {
            match (self.has_edge(i, j), self.has_edge(j, i)) {
                (true, true) => return Err(Error::DoubleOrientation(i, j)),
                (false, false) => return Err(Error::MissingOrientation(i, j)),
                _ => {}
            }
        }
        for i in 0..n {
            for j in 0..n {
                assert_eq!(
                    self.out[i].contains(j),
                    self.inc[j].contains(i),
                    "in-rows out of sync with out-rows at ({i},{j})"
                );
            }
        }
        Ok(())
    }
}

pub(crate) fn same_size<W: Word>(a: &Tournament<W>, b: &Tournament<W>) -> Result<usize> {
    if a.n() == b.n() {
        Ok(a.n())
    } else {
        Err(Error::SizeMismatch(a.n(), b.n()))
    }
}
