//! Permutations of `0..m` indexed by lexicographic (Lehmer) rank.

pub fn factorial(m: usize) -> usize {
    (1..=m).product()
}

/// Lexicographic rank of a permutation of `0..perm.len()`.
pub fn rank(perm: &[usize]) -> usize {
    let m = perm.len();
    let mut r = 0;
    for a in 0..m {
        let smaller_later = perm[a + 1..].iter().filter(|&&x| x < perm[a]).count();
        r = r * (m - a) + smaller_later;
    }
    r
}

/// Inverse of [`rank`].
pub fn unrank(m: usize, mut r: usize) -> Vec<usize> {
    let mut pool: Vec<usize> = (0..m).collect();
    let mut digits = vec![0; m];
    for a in (0..m).rev() {
        let base = m - a;
        digits[a] = r % base;
        r /= base;
    }
    digits.into_iter().map(|d| pool.remove(d)).collect()
}

/// `+1` for even permutations, `-1` for odd ones.
pub fn sign(perm: &[usize]) -> f64 {
    let mut inversions = 0;
    for a in 0..perm.len() {
        for b in a + 1..perm.len() {
            if perm[a] > perm[b] {
                inversions += 1;
            }
        }
    }
    if inversions % 2 == 0 {
        1.0
    } else {
        -1.0
    }
}

/// Every permutation of `0..m` in rank order.
pub fn all(m: usize) -> Vec<Vec<usize>> {
    (0..factorial(m)).map(|r| unrank(m, r)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_and_unrank_are_inverse() {
        for m in 0..6 {
            let perms = all(m);
            assert_eq!(perms.len(), factorial(m));
            for (r, p) in perms.iter().enumerate() {
                assert_eq!(rank(p), r);
            }
            for w in perms.windows(2) {
                assert!(w[0] < w[1]);
            }
        }
    }

    #[test]
    fn signs() {
        assert_eq!(sign(&[0, 1, 2]), 1.0);
        assert_eq!(sign(&[1, 0, 2]), -1.0);
        assert_eq!(sign(&[1, 2, 0]), 1.0);
    }
}
