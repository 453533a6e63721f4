//! The three GHW bounds (Singleton type, Plotkin-like, Griesmer-like) and
//! the MDS-rank flags for a computed hierarchy. All arithmetic is exact
//! integer arithmetic; the Singleton sandwich is a theorem, so a violation
//! is a hard error signalling an upstream bug.

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundRow {
    pub r: u32,
    pub d_r: u64,
    pub singleton_upper: u64,
    pub plotkin_like: u64,
    pub griesmer_like: u64,
    pub meets_plotkin: bool,
    pub meets_griesmer: bool,
    pub is_r_mds: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundReport {
    pub rows: Vec<BoundRow>,
    /// ranks r with d_r = n - k + r
    pub mds_ranks: Vec<u32>,
    /// true for the k = 0 code (empty defining set)
    pub degenerate: bool,
}

impl BoundReport {
    pub fn all_meet_both_bounds(&self) -> bool {
        self.rows.iter().all(|row| row.meets_plotkin && row.meets_griesmer)
    }
}

/// floor(n (p^r - 1) p^{k-r} / (p^k - 1))
fn plotkin_like(n: u64, k: u32, p: u64, r: u32) -> u64 {
    let num = n as u128 * ((p as u128).pow(r) - 1) * (p as u128).pow(k - r);
    let den = (p as u128).pow(k) - 1;
    (num / den) as u64
}

/// sum_{i=0}^{r-1} ceil(d_1 / p^i)
fn griesmer_like(d1: u64, p: u64, r: u32) -> u64 {
    (0..r)
        .map(|i| {
            let pi = p.pow(i);
            d1.div_ceil(pi)
        })
        .sum()
}

/// Evaluate all three bounds against a hierarchy d_1 .. d_k (or a prefix).
pub fn evaluate_bounds(n: u64, k: u32, p: u64, hierarchy: &[u64]) -> Result<BoundReport> {
    if k == 0 {
        if !hierarchy.is_empty() {
            return Err(Error::BoundViolation(
                "degenerate code cannot carry a hierarchy".into(),
            ));
        }
        return Ok(BoundReport {
            rows: Vec::new(),
            mds_ranks: Vec::new(),
            degenerate: true,
        });
    }
    if hierarchy.len() > k as usize {
        return Err(Error::BoundViolation(format!(
            "hierarchy has {} entries for a dimension-{k} code",
            hierarchy.len()
        )));
    }
    let d1 = hierarchy.first().copied().unwrap_or(0);
    let mut rows = Vec::new();
    let mut mds_ranks = Vec::new();
    let mut prev: Option<u64> = None;
    for (idx, &d_r) in hierarchy.iter().enumerate() {
        let r = idx as u32 + 1;
        if let Some(p) = prev {
            if d_r <= p {
                return Err(Error::BoundViolation(format!(
                    "hierarchy not strictly increasing at r = {r}"
                )));
            }
        }
        prev = Some(d_r);
        let singleton_upper = n - k as u64 + r as u64;
        if d_r < r as u64 || d_r > singleton_upper {
            return Err(Error::BoundViolation(format!(
                "d_{r} = {d_r} outside Singleton sandwich [{r}, {singleton_upper}]"
            )));
        }
        let plotkin = plotkin_like(n, k, p, r);
        let griesmer = griesmer_like(d1, p, r);
        if d_r > plotkin {
            return Err(Error::BoundViolation(format!(
                "d_{r} = {d_r} exceeds Plotkin-like bound {plotkin}"
            )));
        }
        if d_r < griesmer {
            return Err(Error::BoundViolation(format!(
                "d_{r} = {d_r} below Griesmer-like bound {griesmer}"
            )));
        }
        let is_r_mds = d_r == singleton_upper;
        if is_r_mds {
            mds_ranks.push(r);
        }
        rows.push(BoundRow {
            r,
            d_r,
            singleton_upper,
            plotkin_like: plotkin,
            griesmer_like: griesmer,
            meets_plotkin: d_r == plotkin,
            meets_griesmer: d_r == griesmer,
            is_r_mds,
        });
    }
    Ok(BoundReport {
        rows,
        mds_ranks,
        degenerate: false,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bounds_8_2_over_f3() {
        // [8,2] over F_3 with hierarchy (6,8): 2-MDS, both bounds met at
        // every rank
        let report = evaluate_bounds(8, 2, 3, &[6, 8]).unwrap();
        assert_eq!(report.mds_ranks, vec![2]);
        assert!(report.all_meet_both_bounds());
        assert_eq!(report.rows[0].plotkin_like, 6);
        assert_eq!(report.rows[0].griesmer_like, 6);
        assert_eq!(report.rows[1].singleton_upper, 8);
    }

    #[test]
    fn bounds_4_2_over_f3() {
        // [4,2] over F_3 with hierarchy (2,4): d_2 meets the Plotkin-like
        // bound, floor(4*8*1/8) = 4
        let report = evaluate_bounds(4, 2, 3, &[2, 4]).unwrap();
        assert_eq!(report.mds_ranks, vec![2]);
        assert!(report.rows[1].meets_plotkin);
        assert_eq!(report.rows[1].plotkin_like, 4);
    }

    #[test]
    fn bounds_242_5_over_f3() {
        let hierarchy = [162u64, 216, 234, 240, 242];
        let report = evaluate_bounds(242, 5, 3, &hierarchy).unwrap();
        assert_eq!(report.mds_ranks, vec![5]);
        assert!(report.all_meet_both_bounds());
    }

    #[test]
    fn bounds_364_6_pattern() {
        // special family: Griesmer-like equality for r <= s, Plotkin-like
        // equality at r = m
        let hierarchy = [234u64, 312, 338, 356, 362, 364];
        let report = evaluate_bounds(364, 6, 3, &hierarchy).unwrap();
        assert_eq!(report.mds_ranks, vec![6]);
        for row in &report.rows[..3] {
            assert!(row.meets_griesmer, "r = {}", row.r);
        }
        assert!(report.rows[5].meets_plotkin);
    }

    #[test]
    fn degenerate_code() {
        let report = evaluate_bounds(0, 0, 5, &[]).unwrap();
        assert!(report.degenerate);
        assert!(report.rows.is_empty());
        assert!(evaluate_bounds(0, 0, 5, &[1]).is_err());
    }

    #[test]
    fn violations_are_hard_errors() {
        assert!(matches!(
            evaluate_bounds(8, 2, 3, &[6, 6]),
            Err(Error::BoundViolation(_))
        ));
        assert!(matches!(
            evaluate_bounds(8, 2, 3, &[9]),
            Err(Error::BoundViolation(_))
        ));
        // too many entries for the dimension
        assert!(matches!(
            evaluate_bounds(8, 2, 3, &[2, 4, 6]),
            Err(Error::BoundViolation(_))
        ));
    }
}
