//! Standard integer sequences used as cross-checks.

/// `C(n, k)`; zero when `k > n`. Panics if the value exceeds `u64`.
pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * u128::from(n - i) / u128::from(i + 1);
    }
    u64::try_from(acc).expect("binomial coefficient fits in u64")
}

/// Derangement numbers: `D_0 = 1`, `D_1 = 0`, `D_n = (n-1)(D_{n-1} + D_{n-2})`.
pub fn derangements(n: u64) -> u64 {
    let (mut prev, mut cur) = (1u64, 0u64);
    if n == 0 {
        return prev;
    }
    for m in 2..=n {
        let next = (m - 1) * (cur + prev);
        prev = cur;
        cur = next;
    }
    cur
}

/// `C(2n, n) / (n + 1)`.
pub fn catalan(n: u64) -> u64 {
    binomial(2 * n, n) / (n + 1)
}

/// Number of integer partitions of `k`, by the usual coin-change table.
pub fn partition_count(k: usize) -> u64 {
    let mut ways = vec![0u64; k + 1];
    ways[0] = 1;
    for part in 1..=k {
        for total in part..=k {
            ways[total] += ways[total - part];
        }
    }
    ways[k]
}

pub fn factorial(n: u64) -> u64 {
    (1..=n).product()
}
