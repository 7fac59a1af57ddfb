use crate::error::{Error, Result};

/// Presence/absence counts over sentence pairs for one (S, T) pair.
///
/// `a`: S and T both present (and the pairing survived filtering),
/// `b`: S without T, `c`: T without S, `d`: neither.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct ContingencyTable {
    pub a: u64,
    pub b: u64,
    pub c: u64,
    pub d: u64,
}

impl ContingencyTable {
    pub fn new(a: u64, b: u64, c: u64, d: u64) -> Self {
        ContingencyTable { a, b, c, d }
    }

    pub fn total(&self) -> u64 {
        self.a + self.b + self.c + self.d
    }

    /// Cells in row-major order with their row and column margins.
    fn cells(&self) -> [(u64, u64, u64); 4] {
        let (r1, r2) = (self.a + self.b, self.c + self.d);
        let (c1, c2) = (self.a + self.c, self.b + self.d);
        [
            (self.a, r1, c1),
            (self.b, r1, c2),
            (self.c, r2, c1),
            (self.d, r2, c2),
        ]
    }
}

/// Binomial log-likelihood ratio `G² = 2 Σ O ln(O/E)` of a 2×2 table.
///
/// Zero when any margin is zero. Each cell is evaluated as
/// `E·φ(x)` with `x = (O−E)/E` and `φ(x) = (1+x)ln(1+x) − x ≥ 0`, which equals
/// `O ln(O/E) − O + E` and stays accurate near independence; the added
/// `E − O` terms cancel over the table.
pub fn g2(table: &ContingencyTable) -> Result<f64> {
    let n = table.total();
    if n == 0 {
        return Err(Error::EmptyTable);
    }
    if table.a + table.b == 0
        || table.c + table.d == 0
        || table.a + table.c == 0
        || table.b + table.d == 0
    {
        return Ok(0.0);
    }
    let mut sum = 0.0;
    for (observed, row, col) in table.cells() {
        // (O − E)/E = (O·n − row·col)/(row·col), exact in integers.
        let expected_scaled = row as i128 * col as i128;
        let deviation = observed as i128 * n as i128 - expected_scaled;
        let x = deviation as f64 / expected_scaled as f64;
        let expected = expected_scaled as f64 / n as f64;
        sum += expected * excess(x);
    }
    Ok((2.0 * sum).max(0.0))
}

/// G² carrying the direction of association: negative when S and T occur
/// together less often than independence predicts.
pub fn signed_g2(table: &ContingencyTable) -> Result<f64> {
    let magnitude = g2(table)?;
    let (row, col) = (table.a + table.b, table.a + table.c);
    let below = (table.a as u128) * (table.total() as u128) < (row as u128) * (col as u128);
    Ok(if below { -magnitude } else { magnitude })
}

/// `(1+x)ln(1+x) − x` for `x ≥ −1`, with `0·ln 0 = 0`.
fn excess(x: f64) -> f64 {
    if x.abs() < 0.05 {
        // Σ_{k≥2} (−1)^k x^k / (k(k−1)); 24 terms reach full precision.
        let mut term = x * x;
        let mut sum = 0.0;
        for k in 2..26 {
            let kf = k as f64;
            sum += term / (kf * (kf - 1.0));
            term *= -x;
        }
        sum
    } else if x <= -1.0 {
        1.0
    } else {
        (1.0 + x) * x.ln_1p() - x
    }
}
