//! The index set `I_m` and its evaluation points `ζ^J`.

use std::fmt;

use crate::cyclotomic::CycloNum;
use crate::symfunc::PointTuple;

/// A strictly increasing tuple `j_1 < … < j_m` of (half-)integers, stored
/// doubled so that every entry is an integer.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IndexTuple {
    doubled: Vec<i64>,
}

impl IndexTuple {
    pub fn from_doubled(doubled: Vec<i64>) -> Self {
        IndexTuple { doubled }
    }

    /// The entries `2 j_k`.
    pub fn doubled(&self) -> &[i64] {
        &self.doubled
    }

    pub fn len(&self) -> usize {
        self.doubled.len()
    }

    pub fn is_empty(&self) -> bool {
        self.doubled.is_empty()
    }

    /// No two entries differ by `m` modulo `2m`.
    pub fn is_antipodal_free(&self, m: u32) -> bool {
        let (m2, m4) = (2 * m as i64, 4 * m as i64);
        self.doubled.iter().enumerate().all(|(k, a)| {
            self.doubled[k + 1..]
                .iter()
                .all(|b| (b - a).rem_euclid(m4) != m2)
        })
    }
}

impl fmt::Debug for IndexTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .doubled
            .iter()
            .map(|&t| {
                if t % 2 == 0 {
                    (t / 2).to_string()
                } else {
                    format!("{t}/2")
                }
            })
            .collect();
        write!(f, "({})", parts.join(", "))
    }
}

/// An index tuple together with the point `ζ^J` in `Q(ω)`, `ω = ζ_{4m}`.
#[derive(Clone, Debug)]
pub struct EvalPoint {
    pub source: IndexTuple,
    pub point: PointTuple<CycloNum>,
}

/// The doubled admissible range: `2m` consecutive values of `j`.
pub fn index_range(m: u32) -> Vec<i64> {
    let m = m as i64;
    let (lo, hi) = if m % 2 == 1 {
        let r = (m - 1) / 2;
        (-2 * r, 6 * r + 2)
    } else {
        let r = m / 2;
        (-2 * r + 1, 6 * r - 1)
    };
    (lo..=hi).step_by(2).collect()
}

/// The `2^m` members of `I_m`, one representative from each antipodal
/// pair, in lexicographic order.
pub fn index_tuples(m: u32) -> Vec<IndexTuple> {
    assert!((1..32).contains(&m), "index sets are built for 1 <= m < 32");
    let range = index_range(m);
    let (low, high) = range.split_at(m as usize);
    let mut out: Vec<IndexTuple> = (0u64..1 << m)
        .map(|mask| {
            let mut t: Vec<i64> = (0..m as usize)
                .map(|i| if mask >> i & 1 == 1 { high[i] } else { low[i] })
                .collect();
            t.sort_unstable();
            IndexTuple::from_doubled(t)
        })
        .collect();
    out.sort();
    out
}

pub fn eval_points(m: u32) -> Vec<EvalPoint> {
    let order = 4 * m;
    index_tuples(m)
        .into_iter()
        .map(|source| {
            let point = PointTuple::new(
                source
                    .doubled()
                    .iter()
                    .map(|&t| CycloNum::root_of_unity(order, t))
                    .collect(),
            );
            EvalPoint { source, point }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn m_one() {
        let pts = eval_points(1);
        let src: Vec<_> = pts.iter().map(|p| p.source.doubled().to_vec()).collect();
        assert_eq!(src, vec![vec![0], vec![2]]);
        assert_eq!(pts[0].point.values()[0], CycloNum::from_integer(4, 1));
        assert_eq!(pts[1].point.values()[0], CycloNum::from_integer(4, -1));
    }

    #[test]
    fn ranges() {
        assert_eq!(index_range(2), vec![-1, 1, 3, 5]);
        assert_eq!(index_range(3), vec![-2, 0, 2, 4, 6, 8]);
        for m in 1..10 {
            assert_eq!(index_range(m).len(), 2 * m as usize);
        }
    }

    #[test]
    fn counts_and_antipodality() {
        for m in 1..=8 {
            let ts = index_tuples(m);
            assert_eq!(ts.len(), 1 << m);
            assert!(ts.iter().all(|t| t.is_antipodal_free(m)));
        }
    }

    #[test]
    fn debug_shows_half_integers() {
        assert_eq!(format!("{:?}", index_tuples(2)[0]), "(-1/2, 1/2)");
    }
}
