//! Measurable-set descriptors on the circle and on circular line models.

use std::f64::consts::PI;

use crate::error::{Error, Result};

/// Where a [`RegionSet`] lives.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Domain {
    /// Angles in `[−π, π)`.
    Circle,
    /// Coordinates in `[0, length)`, identified periodically.
    Line { length: f64 },
}

impl Domain {
    pub fn period(&self) -> f64 {
        match self {
            Domain::Circle => 2.0 * PI,
            Domain::Line { length } => *length,
        }
    }

    pub fn lower(&self) -> f64 {
        match self {
            Domain::Circle => -PI,
            Domain::Line { .. } => 0.0,
        }
    }

    pub fn upper(&self) -> f64 {
        self.lower() + self.period()
    }

    /// Reduces `x` into `[lower, upper)`.
    pub fn wrap(&self, x: f64) -> f64 {
        let p = self.period();
        let lo = self.lower();
        let mut y = lo + (x - lo).rem_euclid(p);
        if y >= lo + p || (lo + p - y) <= SNAP * p {
            y = lo;
        }
        y
    }

    fn validate(&self) -> Result<()> {
        match self {
            Domain::Circle => Ok(()),
            Domain::Line { length } if length.is_finite() && *length > 0.0 => Ok(()),
            Domain::Line { length } => {
                Err(Error::InvalidArgument(format!("line length must be positive, got {length}")))
            }
        }
    }
}

/// Relative snapping threshold for endpoints that land on the period seam.
const SNAP: f64 = 1e-13;

/// Finite union of half-open intervals `[a, b)`, normalized into the domain's
/// fundamental interval, sorted, and pairwise disjoint.
#[derive(Clone, Debug, PartialEq)]
pub struct RegionSet {
    domain: Domain,
    cells: Vec<(f64, f64)>,
}

impl RegionSet {
    /// Builds a region from arbitrary intervals `[a, b)` with `a ≤ b`. Intervals
    /// are reduced modulo the period, split at the seam, and merged.
    pub fn new(domain: Domain, intervals: &[(f64, f64)]) -> Result<Self> {
        domain.validate()?;
        let p = domain.period();
        let lo = domain.lower();
        let hi = domain.upper();
        let mut pieces = Vec::new();
        for &(a, b) in intervals {
            if !a.is_finite() || !b.is_finite() || b < a {
                return Err(Error::InvalidArgument(format!("bad interval [{a}, {b})")));
            }
            let len = b - a;
            if len >= p * (1.0 - SNAP) {
                pieces.push((lo, hi));
                continue;
            }
            if len <= SNAP * p {
                continue;
            }
            let start = domain.wrap(a);
            let end = start + len;
            if end <= hi + SNAP * p {
                pieces.push((start, end.min(hi)));
            } else {
                pieces.push((start, hi));
                pieces.push((lo, end - p));
            }
        }
        Ok(Self { domain, cells: merge(pieces, SNAP * p) })
    }

    pub fn empty(domain: Domain) -> Self {
        Self { domain, cells: Vec::new() }
    }

    pub fn full(domain: Domain) -> Self {
        Self { domain, cells: vec![(domain.lower(), domain.upper())] }
    }

    /// Arc `[a, b)` on the circle.
    pub fn arc(a: f64, b: f64) -> Result<Self> {
        Self::new(Domain::Circle, &[(a, b)])
    }

    pub fn interval(domain: Domain, a: f64, b: f64) -> Result<Self> {
        Self::new(domain, &[(a, b)])
    }

    /// `k` equal consecutive cells starting at the domain's lower end.
    pub fn equal_partition(domain: Domain, k: usize) -> Result<Vec<Self>> {
        domain.validate()?;
        if k == 0 {
            return Err(Error::InvalidArgument("partition needs at least one cell".into()));
        }
        let w = domain.period() / k as f64;
        let lo = domain.lower();
        Ok((0..k)
            .map(|j| {
                let a = lo + j as f64 * w;
                let b = if j + 1 == k { domain.upper() } else { lo + (j + 1) as f64 * w };
                Self { domain, cells: vec![(a, b)] }
            })
            .collect())
    }

    pub fn domain(&self) -> Domain {
        self.domain
    }

    pub fn cells(&self) -> &[(f64, f64)] {
        &self.cells
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn measure(&self) -> f64 {
        self.cells.iter().map(|(a, b)| b - a).sum()
    }

    pub fn contains(&self, x: f64) -> bool {
        let y = self.domain.wrap(x);
        self.cells.iter().any(|&(a, b)| y >= a && y < b)
    }

    /// Rotation (circle) or translation (line) by `t`.
    pub fn translate(&self, t: f64) -> Self {
        let shifted: Vec<_> = self.cells.iter().map(|&(a, b)| (a + t, b + t)).collect();
        Self::new(self.domain, &shifted).expect("translation of a valid region")
    }

    pub fn union(&self, other: &Self) -> Result<Self> {
        self.require_same_domain(other)?;
        let mut all = self.cells.clone();
        all.extend_from_slice(&other.cells);
        Self::new(self.domain, &all)
    }

    pub fn intersection_measure(&self, a: f64, b: f64) -> f64 {
        self.cells.iter().map(|&(x, y)| (y.min(b) - x.max(a)).max(0.0)).sum()
    }

    pub fn is_disjoint(&self, other: &Self) -> bool {
        self.cells.iter().all(|&(a, b)| other.intersection_measure(a, b) <= SNAP * self.domain.period())
    }

    fn require_same_domain(&self, other: &Self) -> Result<()> {
        if self.domain == other.domain {
            Ok(())
        } else {
            Err(Error::InvalidPartition("regions live on different domains".into()))
        }
    }

    /// Representative point: the midpoint of the longest contiguous piece,
    /// where pieces touching across the seam count as one.
    pub fn representative(&self) -> Option<f64> {
        let first = *self.cells.first()?;
        let last = *self.cells.last()?;
        let p = self.domain.period();
        let mut pieces: Vec<(f64, f64)> = self.cells.clone();
        if pieces.len() > 1
            && (first.0 - self.domain.lower()).abs() <= SNAP * p
            && (self.domain.upper() - last.1).abs() <= SNAP * p
        {
            pieces.pop();
            pieces[0] = (last.0, first.1 + p);
        }
        let (a, b) = pieces
            .into_iter()
            .max_by(|x, y| (x.1 - x.0).total_cmp(&(y.1 - y.0)))
            .expect("non-empty");
        Some(self.domain.wrap(0.5 * (a + b)))
    }

    /// Indices `j` of the grid cells `[j·h, (j+1)·h)` making up the region,
    /// for a domain split into `count` cells. Fails if an endpoint is not a
    /// grid point.
    pub fn aligned_cells(&self, count: usize) -> Result<Vec<usize>> {
        let p = self.domain.period();
        let lo = self.domain.lower();
        let h = p / count as f64;
        let mut out = Vec::new();
        for &(a, b) in &self.cells {
            let ja = grid_index(a - lo, h).ok_or_else(|| misaligned(a, h))?;
            let jb = grid_index(b - lo, h).ok_or_else(|| misaligned(b, h))?;
            out.extend(ja..jb.min(count));
        }
        out.sort_unstable();
        out.dedup();
        Ok(out)
    }

    /// Fraction of each grid cell `[j·h, (j+1)·h)` covered by the region.
    pub fn coverage(&self, count: usize) -> Vec<f64> {
        let p = self.domain.period();
        let lo = self.domain.lower();
        let h = p / count as f64;
        (0..count)
            .map(|j| {
                let a = lo + j as f64 * h;
                (self.intersection_measure(a, a + h) / h).clamp(0.0, 1.0)
            })
            .collect()
    }
}

fn misaligned(x: f64, h: f64) -> Error {
    Error::Misaligned(format!("endpoint {x} is not a multiple of the cell width {h}"))
}

/// `Some(j)` if `x ≈ j·h`.
pub(crate) fn grid_index(x: f64, h: f64) -> Option<usize> {
    let r = x / h;
    let j = r.round();
    ((r - j).abs() <= 1e-9 && j >= 0.0).then_some(j as usize)
}

/// `Some(j)` if `x ≈ j·h` for a signed integer `j`.
pub(crate) fn signed_grid_index(x: f64, h: f64) -> Option<i64> {
    let r = x / h;
    let j = r.round();
    ((r - j).abs() <= 1e-9).then_some(j as i64)
}

fn merge(mut pieces: Vec<(f64, f64)>, eps: f64) -> Vec<(f64, f64)> {
    pieces.sort_by(|a, b| a.0.total_cmp(&b.0));
    let mut out: Vec<(f64, f64)> = Vec::with_capacity(pieces.len());
    for (a, b) in pieces {
        match out.last_mut() {
            Some(last) if a <= last.1 + eps => last.1 = last.1.max(b),
            _ => out.push((a, b)),
        }
    }
    out
}
