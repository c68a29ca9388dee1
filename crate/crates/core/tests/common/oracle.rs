//! Direct transcriptions of the metric formulas, written against plain
//! `Vec<Vec<u8>>` grids so that nothing is shared with the library.

pub type Grid = Vec<Vec<u8>>;

/// H = sum_i P(m_i) * log2(1 / P(m_i)) over symbols that occur.
pub fn entropy(img: &Grid) -> f64 {
    let mut occurrences = vec![0usize; 256];
    let mut total = 0usize;
    for row in img {
        for &v in row {
            occurrences[v as usize] += 1;
            total += 1;
        }
    }
    let mut h = 0.0;
    for &count in &occurrences {
        if count > 0 {
            let p = count as f64 / total as f64;
            h += p * (1.0 / p).log2();
        }
    }
    h
}

fn expectation(v: &[f64]) -> f64 {
    let mut s = 0.0;
    for x in v {
        s += x;
    }
    s / v.len() as f64
}

fn variance(v: &[f64]) -> f64 {
    let e = expectation(v);
    let mut s = 0.0;
    for x in v {
        s += (x - e) * (x - e);
    }
    s / v.len() as f64
}

fn covariance(x: &[f64], y: &[f64]) -> f64 {
    let (ex, ey) = (expectation(x), expectation(y));
    let mut s = 0.0;
    for i in 0..x.len() {
        s += (x[i] - ex) * (y[i] - ey);
    }
    s / x.len() as f64
}

/// r = cov(x, y) / (sqrt(D(x)) * sqrt(D(y)))
pub fn correlation(x: &[u8], y: &[u8]) -> f64 {
    let x: Vec<f64> = x.iter().map(|&v| v as f64).collect();
    let y: Vec<f64> = y.iter().map(|&v| v as f64).collect();
    covariance(&x, &y) / (variance(&x).sqrt() * variance(&y).sqrt())
}

pub fn npcr(c1: &Grid, c2: &Grid) -> f64 {
    let (m, n) = (c1.len(), c1[0].len());
    let mut sum = 0.0;
    for i in 0..m {
        for j in 0..n {
            let d = if c1[i][j] != c2[i][j] { 1.0 } else { 0.0 };
            sum += d;
        }
    }
    sum / (m * n) as f64 * 100.0
}

pub fn uaci(c1: &Grid, c2: &Grid) -> f64 {
    let (m, n) = (c1.len(), c1[0].len());
    let mut sum = 0.0;
    for i in 0..m {
        for j in 0..n {
            sum += (c1[i][j] as f64 - c2[i][j] as f64).abs() / 255.0 * 100.0;
        }
    }
    sum / (m * n) as f64
}

pub fn mae(c1: &Grid, c2: &Grid) -> f64 {
    let (m, n) = (c1.len(), c1[0].len());
    let mut sum = 0.0;
    for i in 0..m {
        for j in 0..n {
            sum += (c1[i][j] as f64 - c2[i][j] as f64).abs();
        }
    }
    sum / (m * n) as f64
}
