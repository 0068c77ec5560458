//! Character-level similarities on raw strings.

use crate::align::edit_distance;

/// `1 - levenshtein / max(len)` over Unicode scalar values.
pub fn levenshtein_score(candidate: &str, reference: &str) -> f64 {
    let a: Vec<char> = candidate.chars().collect();
    let b: Vec<char> = reference.chars().collect();
    let longest = a.len().max(b.len());
    if longest == 0 {
        return 1.0;
    }
    1.0 - edit_distance(&a, &b) as f64 / longest as f64
}

/// Longest common contiguous block of `a[alo..ahi]` and `b[blo..bhi]` as
/// `(start in a, start in b, length)`. Ties go to the smallest start in `a`,
/// then the smallest start in `b`.
fn longest_block(a: &[char], b: &[char], (alo, ahi): (usize, usize), (blo, bhi): (usize, usize)) -> (usize, usize, usize) {
    let width = bhi - blo;
    let mut prev = vec![0usize; width + 1];
    let mut cur = vec![0usize; width + 1];
    let (mut best_i, mut best_j, mut best_len) = (alo, blo, 0);
    for i in alo..ahi {
        for j in 0..width {
            cur[j + 1] = if a[i] == b[blo + j] { prev[j] + 1 } else { 0 };
            let k = cur[j + 1];
            if k > best_len {
                best_len = k;
                best_i = i + 1 - k;
                best_j = blo + j + 1 - k;
            }
        }
        std::mem::swap(&mut prev, &mut cur);
    }
    (best_i, best_j, best_len)
}

/// Total characters matched by recursive longest-block decomposition.
pub fn matched_characters(a: &[char], b: &[char]) -> usize {
    let mut matched = 0;
    let mut pending = vec![((0, a.len()), (0, b.len()))];
    while let Some(((alo, ahi), (blo, bhi))) = pending.pop() {
        if alo >= ahi || blo >= bhi {
            continue;
        }
        let (i, j, k) = longest_block(a, b, (alo, ahi), (blo, bhi));
        if k == 0 {
            continue;
        }
        matched += k;
        pending.push(((alo, i), (blo, j)));
        pending.push(((i + k, ahi), (j + k, bhi)));
    }
    matched
}

/// Ratcliff/Obershelp ratio `2M / (|a| + |b|)`, without junk heuristics.
pub fn sequence_matcher_score(candidate: &str, reference: &str) -> f64 {
    let a: Vec<char> = candidate.chars().collect();
    let b: Vec<char> = reference.chars().collect();
    let total = a.len() + b.len();
    if total == 0 {
        return 1.0;
    }
    2.0 * matched_characters(&a, &b) as f64 / total as f64
}
