//! Bessel functions of the first kind and their positive zeros.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

const SERIES_LIMIT: f64 = 12.0;
const ZERO_TOL: f64 = 1e-13;

/// `J_n(x)` for `x >= 0`: ascending series below 12, normalized backward recurrence above.
pub fn bessel_j(n: usize, x: f64) -> f64 {
    if x < SERIES_LIMIT {
        series(n, x)
    } else {
        miller(n, x)
    }
}

fn series(n: usize, x: f64) -> f64 {
    let h = x / 2.0;
    let mut term = 1.0;
    for i in 1..=n {
        term *= h / i as f64;
    }
    let q = -h * h;
    let mut sum = term;
    for m in 1..200 {
        term *= q / (m as f64 * (m + n) as f64);
        sum += term;
        if term.abs() < 1e-17 * sum.abs().max(1e-300) && m as f64 > h {
            break;
        }
    }
    sum
}

/// Miller's algorithm, normalized by `J_0 + 2 sum J_{2k} = 1`.
fn miller(n: usize, x: f64) -> f64 {
    let start = 2 * ((n.max(x as usize) + 40 + (x.sqrt() * 10.0) as usize) / 2);
    let (mut next, mut cur) = (0.0f64, 1e-300f64);
    let mut norm = 0.0;
    let mut want = 0.0;
    for k in (0..=start).rev() {
        // cur = J_k (unnormalized), next = J_{k+1}
        if k == n {
            want = cur;
        }
        if k % 2 == 0 {
            norm += if k == 0 { cur } else { 2.0 * cur };
        }
        if k == 0 {
            break;
        }
        let prev = 2.0 * k as f64 / x * cur - next;
        next = cur;
        cur = prev;
        if cur.abs() > 1e250 {
            next *= 1e-250;
            cur *= 1e-250;
            norm *= 1e-250;
            want *= 1e-250;
        }
    }
    want / norm
}

/// `s[j][n - 1]`: the `n`-th positive zero of `J_j`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BesselZeroTable {
    pub n_max: usize,
    pub j_max: usize,
    pub zeros: Vec<Vec<f64>>,
}

impl BesselZeroTable {
    pub fn get(&self, n: usize, j: usize) -> f64 {
        self.zeros[j][n - 1]
    }

    /// Monotonicity, interlacing, spacing and lower bounds.
    pub fn check(&self) -> Result<()> {
        for j in 0..=self.j_max {
            let col = &self.zeros[j];
            if col[0] <= 2.0 * ((j + 1) as f64).sqrt() {
                return Err(Error::Bracketing { order: j, index: 1 });
            }
            for n in 1..col.len() {
                if col[n] <= col[n - 1] || (j >= 1 && col[n] - col[n - 1] <= std::f64::consts::PI) {
                    return Err(Error::Bracketing {
                        order: j,
                        index: n + 1,
                    });
                }
            }
            if j < self.j_max {
                let nxt = &self.zeros[j + 1];
                for n in 0..col.len() {
                    // s_{n,j} < s_{n,j+1} < s_{n+1,j}
                    if !(col[n] < nxt[n]) || (n + 1 < col.len() && !(nxt[n] < col[n + 1])) {
                        return Err(Error::Bracketing {
                            order: j + 1,
                            index: n + 1,
                        });
                    }
                }
            }
        }
        Ok(())
    }
}

fn refine(j: usize, mut lo: f64, mut hi: f64) -> f64 {
    let mut flo = bessel_j(j, lo);
    while hi - lo > ZERO_TOL * hi {
        let mid = 0.5 * (lo + hi);
        let fm = bessel_j(j, mid);
        if fm == 0.0 {
            return mid;
        }
        if (fm > 0.0) == (flo > 0.0) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// First `n_max` positive zeros of `J_j`, `0 <= j <= j_max`, by sign-change scanning and bisection.
pub fn bessel_zeros(n_max: usize, j_max: usize) -> Result<BesselZeroTable> {
    if n_max == 0 || n_max.saturating_mul(j_max + 1) > 1_000_000 {
        return Err(Error::InvalidArgument(
            "need 1 <= n_max and n_max (j_max + 1) <= 10^6".into(),
        ));
    }
    let step = 0.1;
    let mut zeros = Vec::with_capacity(j_max + 1);
    for j in 0..=j_max {
        // all zeros exceed j, and consecutive zeros are more than 2 apart
        let mut col = Vec::with_capacity(n_max);
        let mut x = (j as f64).max(step);
        let mut fx = bessel_j(j, x);
        let limit = j as f64 + 10.0 + 4.0 * n_max as f64;
        while col.len() < n_max {
            let y = x + step;
            if y > limit {
                return Err(Error::Bracketing {
                    order: j,
                    index: col.len() + 1,
                });
            }
            let fy = bessel_j(j, y);
            if fy == 0.0 {
                col.push(y);
                x = y + step / 2.0;
                fx = bessel_j(j, x);
                continue;
            }
            if (fx > 0.0) != (fy > 0.0) {
                col.push(refine(j, x, y));
            }
            x = y;
            fx = fy;
        }
        zeros.push(col);
    }
    let t = BesselZeroTable {
        n_max,
        j_max,
        zeros,
    };
    t.check()?;
    Ok(t)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn values_agree_across_methods() {
        for n in 0..8 {
            for x in [9.0, 11.5, 11.99] {
                assert!((series(n, x) - miller(n, x)).abs() < 1e-11, "n={n} x={x}");
            }
        }
        assert!((bessel_j(0, 0.0) - 1.0).abs() < 1e-15);
        assert_eq!(bessel_j(3, 0.0), 0.0);
    }

    #[test]
    fn known_zeros() {
        let t = bessel_zeros(3, 2).unwrap();
        assert!((t.get(1, 0) - 2.404_825_557_695_773).abs() < 1e-10);
        assert!((t.get(2, 0) - 5.520_078_110_286_311).abs() < 1e-10);
        assert!((t.get(1, 1) - 3.831_705_970_207_512).abs() < 1e-10);
        assert!((t.get(1, 2) - 5.135_622_301_840_683).abs() < 1e-10);
    }

    #[test]
    fn rejects_bad_sizes() {
        assert!(bessel_zeros(0, 3).is_err());
        assert!(bessel_zeros(1_000_001, 0).is_err());
    }
}
