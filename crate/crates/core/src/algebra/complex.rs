use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive};
use serde::ser::{SerializeMap, SerializeSeq};
use serde::{Serialize, Serializer};

use super::snf::smith_normal_form;
use super::{Matrix, Ring};
use crate::error::{Error, Result};

/// A bounded chain complex of finitely generated free modules.
///
/// Degrees run over `lo..lo + ranks.len()`; `d(n)` maps degree `n` to `n − 1`
/// and is a `rank(n−1) × rank(n)` matrix. Zero ranks at either end are
/// trimmed, so equal complexes compare equal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainComplex {
    ring: Ring,
    lo: i64,
    ranks: Vec<usize>,
    // diffs[k] = d(lo + k)
    diffs: Vec<Matrix>,
}

impl ChainComplex {
    /// Checks shapes and `d² = 0`.
    pub fn new(ring: Ring, lo: i64, ranks: Vec<usize>, diffs: Vec<Matrix>) -> Result<Self> {
        if ranks.len() != diffs.len() {
            return Err(Error::Shape(format!(
                "{} ranks but {} differentials",
                ranks.len(),
                diffs.len()
            )));
        }
        for (k, d) in diffs.iter().enumerate() {
            let below = if k == 0 { 0 } else { ranks[k - 1] };
            if d.shape() != (below, ranks[k]) {
                return Err(Error::Shape(format!(
                    "d at degree {} is {:?}, expected {:?}",
                    lo + k as i64,
                    d.shape(),
                    (below, ranks[k])
                )));
            }
            if d.ring() != ring {
                return Err(Error::RingMismatch(ring.to_string(), d.ring().to_string()));
            }
        }
        let c = Self {
            ring,
            lo,
            ranks,
            diffs,
        }
        .trimmed();
        c.check_squares_to_zero()?;
        Ok(c)
    }

    /// Build from a degree → rank table and a degree → differential table
    /// (missing differentials are zero).
    pub fn from_maps(
        ring: Ring,
        ranks: &BTreeMap<i64, usize>,
        diffs: BTreeMap<i64, Matrix>,
    ) -> Result<Self> {
        let (Some(&lo), Some(&hi)) = (ranks.keys().next(), ranks.keys().next_back()) else {
            return Ok(Self::zero(ring));
        };
        let rank = |n: i64| ranks.get(&n).copied().unwrap_or(0);
        let mut diffs = diffs;
        let mut list = Vec::new();
        let mut rank_list = Vec::new();
        for n in lo..=hi {
            rank_list.push(rank(n));
            let below = if n == lo { 0 } else { rank(n - 1) };
            list.push(
                diffs
                    .remove(&n)
                    .unwrap_or_else(|| Matrix::zeros(ring, below, rank(n))),
            );
        }
        Self::new(ring, lo, rank_list, list)
    }

    pub fn zero(ring: Ring) -> Self {
        Self {
            ring,
            lo: 0,
            ranks: Vec::new(),
            diffs: Vec::new(),
        }
    }

    fn trimmed(mut self) -> Self {
        while self.ranks.last() == Some(&0) {
            self.ranks.pop();
            self.diffs.pop();
        }
        let lead = self.ranks.iter().take_while(|&&r| r == 0).count();
        if lead == self.ranks.len() {
            return Self::zero(self.ring);
        }
        if lead > 0 {
            self.ranks.drain(..lead);
            self.diffs.drain(..lead);
            self.lo += lead as i64;
            // the new lowest differential maps into the zero module
            let r = self.ranks[0];
            self.diffs[0] = Matrix::zeros(self.ring, 0, r);
        }
        self
    }

    fn check_squares_to_zero(&self) -> Result<()> {
        for k in 1..self.diffs.len() {
            if !self.diffs[k - 1].mul(&self.diffs[k]).is_zero() {
                return Err(Error::NotAComplex(self.lo + k as i64));
            }
        }
        Ok(())
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn is_zero(&self) -> bool {
        self.ranks.is_empty()
    }

    /// Lowest degree with nonzero rank (0 for the zero complex).
    pub fn lo(&self) -> i64 {
        self.lo
    }

    /// Highest degree with nonzero rank (`lo − 1` for the zero complex).
    pub fn hi(&self) -> i64 {
        self.lo + self.ranks.len() as i64 - 1
    }

    pub fn degrees(&self) -> std::ops::RangeInclusive<i64> {
        self.lo..=self.hi()
    }

    pub fn rank(&self, n: i64) -> usize {
        self.index(n).map_or(0, |k| self.ranks[k])
    }

    /// Ranks over `lo..=hi`.
    pub fn ranks(&self) -> &[usize] {
        &self.ranks
    }

    /// `{degree: rank}` over the support.
    pub fn rank_table(&self) -> BTreeMap<i64, usize> {
        self.degrees().map(|n| (n, self.rank(n))).collect()
    }

    fn index(&self, n: i64) -> Option<usize> {
        let k = n - self.lo;
        (k >= 0 && (k as usize) < self.ranks.len()).then_some(k as usize)
    }

    /// `d(n) : C_n → C_{n−1}` (a zero matrix outside the support).
    pub fn d(&self, n: i64) -> Matrix {
        match self.index(n) {
            Some(k) => self.diffs[k].clone(),
            _ => Matrix::zeros(self.ring, self.rank(n - 1), self.rank(n)),
        }
    }

    /// `{"ring", "ranks": {degree: rank}, "differentials": [{"degree", "matrix"}]}`,
    /// listing only the nonzero differentials.
    pub fn to_json(&self) -> serde_json::Value {
        let ranks: serde_json::Map<String, serde_json::Value> = self
            .degrees()
            .map(|n| (n.to_string(), self.rank(n).into()))
            .collect();
        let diffs: Vec<serde_json::Value> = self
            .degrees()
            .filter(|&n| !self.d(n).is_zero())
            .map(|n| serde_json::json!({"degree": n, "matrix": self.d(n).to_json()}))
            .collect();
        serde_json::json!({"ring": self.ring, "ranks": ranks, "differentials": diffs})
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.degrees()
            .map(|n| if n.rem_euclid(2) == 0 { 1 } else { -1 } * self.rank(n) as i64)
            .sum()
    }

    /// `C[k]_n = C_{n−k}`, differentials unchanged.
    pub fn regrade(&self, k: i64) -> ChainComplex {
        let mut c = self.clone();
        if !c.is_zero() {
            c.lo += k;
        }
        c
    }

    pub fn direct_sum(&self, other: &ChainComplex) -> Result<ChainComplex> {
        if self.ring != other.ring {
            return Err(Error::RingMismatch(
                self.ring.to_string(),
                other.ring.to_string(),
            ));
        }
        if self.is_zero() {
            return Ok(other.clone());
        }
        if other.is_zero() {
            return Ok(self.clone());
        }
        let lo = self.lo.min(other.lo);
        let hi = self.hi().max(other.hi());
        let mut ranks = Vec::new();
        let mut diffs = Vec::new();
        for n in lo..=hi {
            let (a, b) = (self.rank(n), other.rank(n));
            ranks.push(a + b);
            let mut d = Matrix::zeros(self.ring, self.rank(n - 1) + other.rank(n - 1), a + b);
            if n > lo {
                d.add_block(0, 0, &self.d(n));
                d.add_block(self.rank(n - 1), a, &other.d(n));
            }
            diffs.push(d);
        }
        ChainComplex::new(self.ring, lo, ranks, diffs)
    }

    /// True when every homology group vanishes.
    pub fn is_acyclic(&self) -> Result<bool> {
        Ok(homology(self)?.is_zero())
    }
}

/// A degreewise family of matrices `f_n : C_n → D_n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainMap {
    pub source: ChainComplex,
    pub target: ChainComplex,
    components: BTreeMap<i64, Matrix>,
}

impl ChainMap {
    /// Checks shapes and `d f = f d`.
    pub fn new(
        source: ChainComplex,
        target: ChainComplex,
        components: BTreeMap<i64, Matrix>,
    ) -> Result<Self> {
        if source.ring != target.ring {
            return Err(Error::RingMismatch(
                source.ring.to_string(),
                target.ring.to_string(),
            ));
        }
        let map = Self {
            source,
            target,
            components,
        };
        for (&n, f) in &map.components {
            if f.shape() != (map.target.rank(n), map.source.rank(n)) {
                return Err(Error::Shape(format!(
                    "chain map component at degree {n} is {:?}",
                    f.shape()
                )));
            }
        }
        let lo = map.source.lo.min(map.target.lo);
        let hi = map.source.hi().max(map.target.hi()) + 1;
        for n in lo..=hi {
            if map.target.d(n).mul(&map.component(n)) != map.component(n - 1).mul(&map.source.d(n))
            {
                return Err(Error::Shape(format!("not a chain map at degree {n}")));
            }
        }
        Ok(map)
    }

    pub fn identity(c: &ChainComplex) -> Self {
        let components = c
            .degrees()
            .map(|n| (n, Matrix::identity(c.ring, c.rank(n))))
            .collect();
        Self {
            source: c.clone(),
            target: c.clone(),
            components,
        }
    }

    pub fn component(&self, n: i64) -> Matrix {
        self.components.get(&n).cloned().unwrap_or_else(|| {
            Matrix::zeros(self.source.ring, self.target.rank(n), self.source.rank(n))
        })
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &ChainMap) -> Result<ChainMap> {
        if self.target != other.source {
            return Err(Error::Incompatible("chain maps are not composable".into()));
        }
        let degrees = self.source.degrees();
        let components = degrees
            .map(|n| (n, other.component(n).mul(&self.component(n))))
            .collect();
        ChainMap::new(self.source.clone(), other.target.clone(), components)
    }

    /// `cone(f)_n = D_n ⊕ C_{n−1}`, `d = [[d_D, f], [0, −d_C]]`.
    pub fn mapping_cone(&self) -> Result<ChainComplex> {
        let (c, dd) = (&self.source, &self.target);
        let ring = c.ring;
        let mut ranks = BTreeMap::new();
        let mut diffs = BTreeMap::new();
        if c.is_zero() && dd.is_zero() {
            return Ok(ChainComplex::zero(ring));
        }
        let mut ends = Vec::new();
        if !dd.is_zero() {
            ends.extend([dd.lo, dd.hi()]);
        }
        if !c.is_zero() {
            ends.extend([c.lo + 1, c.hi() + 1]);
        }
        let (lo, hi) = (
            ends.iter().copied().min().unwrap(),
            ends.iter().copied().max().unwrap(),
        );
        for n in lo..=hi {
            ranks.insert(n, dd.rank(n) + c.rank(n - 1));
            let mut d = Matrix::zeros(
                ring,
                dd.rank(n - 1) + c.rank(n - 2),
                dd.rank(n) + c.rank(n - 1),
            );
            d.add_block(0, 0, &dd.d(n));
            d.add_block(0, dd.rank(n), &self.component(n - 1));
            d.add_block(dd.rank(n - 1), dd.rank(n), &c.d(n - 1).neg());
            diffs.insert(n, d);
        }
        ChainComplex::from_maps(ring, &ranks, diffs)
    }

    /// Quasi-isomorphism test: the mapping cone is acyclic.
    pub fn is_quasi_isomorphism(&self) -> Result<bool> {
        self.mapping_cone()?.is_acyclic()
    }
}

/// Homology in one degree: free rank plus torsion coefficients `t₁ | t₂ | …`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomologyGroup {
    pub degree: i64,
    pub free_rank: usize,
    pub torsion: Vec<BigInt>,
}

impl HomologyGroup {
    pub fn is_zero(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    /// Exactly `ℤ^r` (or `F^r` over a field), no torsion.
    pub fn is_free_of_rank(&self, r: usize) -> bool {
        self.free_rank == r && self.torsion.is_empty()
    }
}

impl fmt::Display for HomologyGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        parts.extend(self.torsion.iter().map(|t| format!("Z/{t}")));
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

struct Torsion<'a>(&'a [BigInt]);

impl Serialize for Torsion<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.0.len()))?;
        for t in self.0 {
            match t.to_u64() {
                Some(v) => seq.serialize_element(&v)?,
                None => seq.serialize_element(&t.to_string())?,
            }
        }
        seq.end()
    }
}

impl Serialize for HomologyGroup {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut m = s.serialize_map(Some(3))?;
        m.serialize_entry("degree", &self.degree)?;
        m.serialize_entry("free_rank", &self.free_rank)?;
        m.serialize_entry("torsion", &Torsion(&self.torsion))?;
        m.end()
    }
}

/// Homology of a complex, one entry per degree of its support.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GradedGroup {
    pub ring: Ring,
    pub groups: Vec<HomologyGroup>,
}

impl GradedGroup {
    pub fn at(&self, n: i64) -> HomologyGroup {
        self.groups
            .iter()
            .find(|g| g.degree == n)
            .cloned()
            .unwrap_or(HomologyGroup {
                degree: n,
                free_rank: 0,
                torsion: Vec::new(),
            })
    }

    pub fn is_zero(&self) -> bool {
        self.groups.iter().all(HomologyGroup::is_zero)
    }

    /// The nonzero groups.
    pub fn nonzero(&self) -> Vec<&HomologyGroup> {
        self.groups.iter().filter(|g| !g.is_zero()).collect()
    }

    /// Same ring and the same nonzero groups in every degree.
    pub fn is_isomorphic(&self, other: &GradedGroup) -> bool {
        self.ring == other.ring && self.nonzero() == other.nonzero()
    }

    /// `Some(n)` when the only nonzero group is `ℤ` (rank one, no torsion)
    /// in degree `n`.
    pub fn concentrated_z(&self) -> Option<i64> {
        match self.nonzero().as_slice() {
            [g] if g.is_free_of_rank(1) => Some(g.degree),
            _ => None,
        }
    }

    /// Relabel degree `n` as `n + k`.
    pub fn shifted(&self, k: i64) -> GradedGroup {
        let groups = self
            .groups
            .iter()
            .map(|g| HomologyGroup {
                degree: g.degree + k,
                ..g.clone()
            })
            .collect();
        GradedGroup {
            ring: self.ring,
            groups,
        }
    }

    /// Relabel degree `n` as `−n` (chain grading of a cochain complex and back).
    pub fn negated(&self) -> GradedGroup {
        let mut groups: Vec<HomologyGroup> = self
            .groups
            .iter()
            .map(|g| HomologyGroup {
                degree: -g.degree,
                ..g.clone()
            })
            .collect();
        groups.sort_by_key(|g| g.degree);
        GradedGroup {
            ring: self.ring,
            groups,
        }
    }

    /// Free graded group with the given `(degree, rank)` pairs.
    pub fn free(ring: Ring, ranks: &[(i64, usize)]) -> GradedGroup {
        let mut groups: Vec<HomologyGroup> = ranks
            .iter()
            .map(|&(degree, free_rank)| HomologyGroup {
                degree,
                free_rank,
                torsion: Vec::new(),
            })
            .collect();
        groups.sort_by_key(|g| g.degree);
        GradedGroup { ring, groups }
    }
}

impl fmt::Display for GradedGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let nz = self.nonzero();
        if nz.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = nz.iter().map(|g| format!("H{} = {g}", g.degree)).collect();
        write!(f, "{}", parts.join(", "))
    }
}

/// Rank of a scalar matrix and, over ℤ, its invariant factors.
fn rank_and_factors(m: &Matrix) -> (usize, Vec<BigInt>) {
    if m.rows() == 0 || m.cols() == 0 || m.is_zero() {
        return (0, Vec::new());
    }
    match m.ring() {
        Ring::Integers => {
            let f = smith_normal_form(m).invariant_factors();
            (f.len(), f)
        }
        _ => (m.rank(), Vec::new()),
    }
}

/// Homology over ℤ (Smith normal form) or a prime field (rank–nullity).
pub fn homology(c: &ChainComplex) -> Result<GradedGroup> {
    c.ring.ensure_scalar()?;
    let mut out = Vec::new();
    let mut below = rank_and_factors(&c.d(c.lo));
    for n in c.degrees() {
        let above = rank_and_factors(&c.d(n + 1));
        let free_rank = c.rank(n) - below.0 - above.0;
        let torsion = above
            .1
            .iter()
            .filter(|t| !t.abs().is_one())
            .cloned()
            .collect();
        out.push(HomologyGroup {
            degree: n,
            free_rank,
            torsion,
        });
        below = above;
    }
    Ok(GradedGroup {
        ring: c.ring,
        groups: out,
    })
}

/// `C^{−*}`: degree `n` is `(C_{−n})*`, with `d_n = (d_{1−n})*` (involution-transpose).
pub fn dualize_complex(c: &ChainComplex) -> ChainComplex {
    if c.is_zero() {
        return c.clone();
    }
    let lo = -c.hi();
    let ranks: Vec<usize> = (lo..=-c.lo).map(|n| c.rank(-n)).collect();
    let diffs = (lo..=-c.lo)
        .map(|n| {
            if n == lo {
                Matrix::zeros(c.ring, 0, c.rank(-n))
            } else {
                c.d(1 - n).involution_transpose()
            }
        })
        .collect();
    ChainComplex::new(c.ring, lo, ranks, diffs).expect("dual of a complex is a complex")
}

/// `Hom(C, D)_n = ⊕_{q−p=n} Hom(C_p, D_q)`, `d f = d_D f + (−1)^q f d_C`.
///
/// The basis of `Hom(C_p, D_q)` is the matrix units `(j, i)` (row of `D_q`,
/// column of `C_p`) in row-major order; blocks are ordered by ascending `p`.
pub fn hom_complex(c: &ChainComplex, d: &ChainComplex) -> Result<ChainComplex> {
    if c.ring != d.ring {
        return Err(Error::RingMismatch(c.ring.to_string(), d.ring.to_string()));
    }
    let ring = c.ring;
    if c.is_zero() || d.is_zero() {
        return Ok(ChainComplex::zero(ring));
    }
    let lo = d.lo - c.hi();
    let hi = d.hi() - c.lo;
    // offsets[n] : p ↦ offset of the Hom(C_p, D_{p+n}) block
    let layout = |n: i64| -> (Vec<(i64, usize)>, usize) {
        let mut blocks = Vec::new();
        let mut total = 0;
        for p in c.degrees() {
            blocks.push((p, total));
            total += c.rank(p) * d.rank(p + n);
        }
        (blocks, total)
    };
    let mut ranks = BTreeMap::new();
    let mut diffs = BTreeMap::new();
    for n in lo..=hi {
        let (src_blocks, src_total) = layout(n);
        let (dst_blocks, dst_total) = layout(n - 1);
        ranks.insert(n, src_total);
        let dst_offset = |p: i64| dst_blocks.iter().find(|b| b.0 == p).map(|b| b.1);
        let mut m = Matrix::zeros(ring, dst_total, src_total);
        for &(p, off) in &src_blocks {
            let q = p + n;
            let (cp, dq) = (c.rank(p), d.rank(q));
            // d_D ∘ f lands in Hom(C_p, D_{q−1})
            if let Some(doff) = dst_offset(p) {
                let dd = d.d(q);
                for k in 0..d.rank(q - 1) {
                    for j in 0..dq {
                        if dd.is_entry_zero(k, j) {
                            continue;
                        }
                        for i in 0..cp {
                            m.add_entry(doff + k * cp + i, off + j * cp + i, dd.entry(k, j));
                        }
                    }
                }
            }
            // (−1)^q f ∘ d_C lands in Hom(C_{p+1}, D_q)
            if let Some(doff) = dst_offset(p + 1) {
                let dc = c.d(p + 1);
                let sign = if q.rem_euclid(2) == 0 {
                    dc.clone()
                } else {
                    dc.neg()
                };
                let cp1 = c.rank(p + 1);
                for i in 0..cp {
                    for i2 in 0..cp1 {
                        if sign.is_entry_zero(i, i2) {
                            continue;
                        }
                        for j in 0..dq {
                            m.add_entry(doff + j * cp1 + i2, off + j * cp + i, sign.entry(i, i2));
                        }
                    }
                }
            }
        }
        diffs.insert(n, m);
    }
    ChainComplex::from_maps(ring, &ranks, diffs)
}
