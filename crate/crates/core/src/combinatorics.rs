//! Binomial coefficients and combination unranking.

/// `C(n, k)` as `u64`, or `None` on overflow.
pub fn binomial_u64(n: u64, k: u64) -> Option<u64> {
    if k > n {
        return Some(0);
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        // acc * (n - i) / (i + 1) stays integral at every step
        acc = acc * u128::from(n - i) / u128::from(i + 1);
        if acc > u128::from(u64::MAX) {
            return None;
        }
    }
    Some(acc as u64)
}

/// `C(n, k)` as a float; exact for every value below 2^53.
pub fn binomial_f64(n: u64, k: u64) -> f64 {
    if k > n {
        return 0.0;
    }
    let k = k.min(n - k);
    let mut acc = 1.0f64;
    for i in 0..k {
        acc = acc * (n - i) as f64 / (i + 1) as f64;
    }
    acc.round()
}

/// The `rank`-th `k`-subset of `0..n` in lexicographic order.
pub fn unrank_combination(n: usize, k: usize, mut rank: u64) -> Vec<usize> {
    let mut out = Vec::with_capacity(k);
    let mut next = 0usize;
    for slot in 0..k {
        let remaining = (k - slot - 1) as u64;
        loop {
            let with_next = binomial_u64((n - next - 1) as u64, remaining)
                .expect("unranking only called on representable counts");
            if rank < with_next {
                break;
            }
            rank -= with_next;
            next += 1;
        }
        out.push(next);
        next += 1;
    }
    out
}

/// All `k`-subsets of `0..n` in lexicographic order.
pub fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut cur: Vec<usize> = (0..k).collect();
    loop {
        out.push(cur.clone());
        // rightmost slot that can still advance
        let mut i = k;
        while i > 0 && cur[i - 1] == n - k + i - 1 {
            i -= 1;
        }
        if i == 0 {
            return out;
        }
        cur[i - 1] += 1;
        for j in i..k {
            cur[j] = cur[j - 1] + 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_binomials() {
        assert_eq!(binomial_u64(5, 3), Some(10));
        assert_eq!(binomial_u64(50, 3), Some(19600));
        assert_eq!(binomial_u64(4, 7), Some(0));
        assert_eq!(binomial_u64(400, 4), Some(1_050_739_900));
        assert_eq!(binomial_f64(30, 2), 435.0);
    }

    #[test]
    fn overflow_is_reported() {
        assert_eq!(binomial_u64(10_000, 10), None);
        assert!(binomial_u64(67, 33).is_some());
        assert!(binomial_u64(70, 35).is_none());
    }

    #[test]
    fn unranking_matches_enumeration() {
        for (n, k) in [(5, 3), (7, 2), (6, 6), (8, 4), (4, 1)] {
            let all = combinations(n, k);
            assert_eq!(all.len() as u64, binomial_u64(n as u64, k as u64).unwrap());
            for (rank, c) in all.iter().enumerate() {
                assert_eq!(&unrank_combination(n, k, rank as u64), c);
            }
        }
    }
}
