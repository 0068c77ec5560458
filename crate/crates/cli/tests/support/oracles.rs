//! Slow, direct reimplementations used as references for the fast code.
//! Nothing here calls into the library's metric code.

#![allow(dead_code)]

use std::f64::consts::PI;

/// Every monotone warping path from (0, 0) to (n-1, m-1), as cell lists.
pub fn warping_paths(n: usize, m: usize) -> Vec<Vec<(usize, usize)>> {
    fn walk(i: usize, j: usize, n: usize, m: usize, path: &mut Vec<(usize, usize)>, out: &mut Vec<Vec<(usize, usize)>>) {
        path.push((i, j));
        if i == n - 1 && j == m - 1 {
            out.push(path.clone());
        } else {
            if i + 1 < n {
                walk(i + 1, j, n, m, path, out);
            }
            if j + 1 < m {
                walk(i, j + 1, n, m, path, out);
            }
            if i + 1 < n && j + 1 < m {
                walk(i + 1, j + 1, n, m, path, out);
            }
        }
        path.pop();
    }
    let mut out = Vec::new();
    walk(0, 0, n, m, &mut Vec::new(), &mut out);
    out
}

/// DTW similarity `1 / (1 + D / L)` by trying every path. Ties on cost go
/// to the shortest path.
pub fn dtw_exhaustive(a: &[f64], b: &[f64], paths: &[Vec<(usize, usize)>]) -> f64 {
    let mut best = (f64::INFINITY, usize::MAX);
    for path in paths {
        let cost: f64 = path.iter().map(|&(i, j)| (a[i] - b[j]).abs()).sum();
        if cost < best.0 || (cost == best.0 && path.len() < best.1) {
            best = (cost, path.len());
        }
    }
    1.0 / (1.0 + best.0 / best.1 as f64)
}

fn is_subsequence<T: PartialEq>(needle: &[&T], hay: &[T]) -> bool {
    let mut it = hay.iter();
    needle.iter().all(|x| it.any(|y| y == *x))
}

/// Longest common subsequence length by checking every subsequence of `a`.
pub fn lcs_brute_force<T: PartialEq>(a: &[T], b: &[T]) -> usize {
    assert!(a.len() < 20);
    let mut best = 0;
    for mask in 0u32..(1 << a.len()) {
        let picked: Vec<&T> = (0..a.len()).filter(|i| mask & (1 << i) != 0).map(|i| &a[i]).collect();
        if picked.len() > best && is_subsequence(&picked, b) {
            best = picked.len();
        }
    }
    best
}

/// Wagner-Fischer with the whole table kept.
pub fn levenshtein_table(a: &str, b: &str) -> usize {
    let a: Vec<char> = a.chars().collect();
    let b: Vec<char> = b.chars().collect();
    let mut d = vec![vec![0usize; b.len() + 1]; a.len() + 1];
    for (i, row) in d.iter_mut().enumerate() {
        row[0] = i;
    }
    for j in 0..=b.len() {
        d[0][j] = j;
    }
    for i in 1..=a.len() {
        for j in 1..=b.len() {
            let sub = d[i - 1][j - 1] + usize::from(a[i - 1] != b[j - 1]);
            d[i][j] = sub.min(d[i - 1][j] + 1).min(d[i][j - 1] + 1);
        }
    }
    d[a.len()][b.len()]
}

/// Luma on the 0..=255 scale from interleaved 8-bit samples.
pub fn luma(samples: &[u8], channels: usize) -> Vec<f64> {
    samples
        .chunks_exact(channels)
        .map(|px| match px {
            [g] => f64::from(*g),
            [r, g, b] => 0.299 * f64::from(*r) + 0.587 * f64::from(*g) + 0.114 * f64::from(*b),
            _ => unreachable!(),
        })
        .collect()
}

/// Mean SSIM with an explicit 11x11 Gaussian weight grid (sigma 1.5) laid
/// over every fully contained window position.
pub fn ssim_sliding(x: &[f64], y: &[f64], width: usize, height: usize) -> f64 {
    const K: usize = 11;
    let g: Vec<f64> = (0..K).map(|i| (-((i as f64 - 5.0).powi(2)) / 4.5).exp()).collect();
    let mut weights = vec![0.0; K * K];
    for r in 0..K {
        for c in 0..K {
            weights[r * K + c] = g[r] * g[c];
        }
    }
    let total: f64 = weights.iter().sum();
    weights.iter_mut().for_each(|w| *w /= total);
    let (c1, c2) = ((0.01f64 * 255.0).powi(2), (0.03f64 * 255.0).powi(2));
    let mut sum = 0.0;
    let mut count = 0;
    for top in 0..=height - K {
        for left in 0..=width - K {
            let (mut mx, mut my, mut sxx, mut syy, mut sxy) = (0.0, 0.0, 0.0, 0.0, 0.0);
            for r in 0..K {
                for c in 0..K {
                    let w = weights[r * K + c];
                    let p = (top + r) * width + left + c;
                    mx += w * x[p];
                    my += w * y[p];
                    sxx += w * x[p] * x[p];
                    syy += w * y[p] * y[p];
                    sxy += w * x[p] * y[p];
                }
            }
            let (vx, vy, cov) = (sxx - mx * mx, syy - my * my, sxy - mx * my);
            sum += ((2.0 * mx * my + c1) * (2.0 * cov + c2)) / ((mx * mx + my * my + c1) * (vx + vy + c2));
            count += 1;
        }
    }
    sum / count as f64
}

/// One-sided magnitude spectrum of each 1024-sample frame (hop 512,
/// periodic Hann), by direct evaluation of the DFT sum.
pub fn spectrogram_dft(samples: &[f64]) -> Vec<Vec<f64>> {
    const N: usize = 1024;
    const HOP: usize = 512;
    let frames = if samples.is_empty() {
        0
    } else if samples.len() < N {
        1
    } else {
        1 + (samples.len() - N) / HOP
    };
    let window: Vec<f64> = (0..N).map(|n| (PI * n as f64 / N as f64).sin().powi(2)).collect();
    // Twiddles indexed by (k * n) mod N keep the sum accurate.
    let cos: Vec<f64> = (0..N).map(|t| (2.0 * PI * t as f64 / N as f64).cos()).collect();
    let sin: Vec<f64> = (0..N).map(|t| (2.0 * PI * t as f64 / N as f64).sin()).collect();
    (0..frames)
        .map(|f| {
            let x: Vec<f64> = (0..N)
                .map(|n| samples.get(f * HOP + n).copied().unwrap_or(0.0) * window[n])
                .collect();
            (0..=N / 2)
                .map(|k| {
                    let (mut re, mut im) = (0.0, 0.0);
                    for (n, v) in x.iter().enumerate() {
                        let t = (k * n) % N;
                        re += v * cos[t];
                        im -= v * sin[t];
                    }
                    re.hypot(im)
                })
                .collect()
        })
        .collect()
}

/// `1 / (1 + mean |ln(1 + a) - ln(1 + b)|)` over the common frames.
pub fn spectral_score(a: &[Vec<f64>], b: &[Vec<f64>]) -> f64 {
    let frames = a.len().min(b.len());
    let mut total = 0.0;
    let mut n = 0;
    for f in 0..frames {
        for (x, y) in a[f].iter().zip(&b[f]) {
            total += ((1.0 + x).ln() - (1.0 + y).ln()).abs();
            n += 1;
        }
    }
    1.0 / (1.0 + total / n as f64)
}
