//! Small exact-integer helpers shared by the tensor and uniformization code.

/// Largest order for which factorials are tabulated. `20!` is the largest
/// factorial that is exactly representable in both `u64` and `f64`.
pub const MAX_ORDER: usize = 20;

const FACTORIALS: [u64; MAX_ORDER + 1] = {
    let mut table = [1u64; MAX_ORDER + 1];
    let mut i = 1;
    while i <= MAX_ORDER {
        table[i] = table[i - 1] * i as u64;
        i += 1;
    }
    table
};

/// `k!` as an exact float. Panics for `k > MAX_ORDER`; callers guard the order first.
#[inline]
pub fn factorial(k: usize) -> f64 {
    FACTORIALS[k] as f64
}

#[inline]
pub fn factorial_u64(k: usize) -> u64 {
    FACTORIALS[k]
}

/// Binomial coefficient `C(n, k)`, computed multiplicatively.
pub fn binomial(n: usize, k: usize) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u64 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u64 / (i + 1) as u64;
    }
    acc
}

/// Multinomial coefficient `total! / prod(parts!)` where `total = sum(parts)`.
pub fn multinomial(parts: &[u32]) -> u64 {
    let total: usize = parts.iter().map(|&p| p as usize).sum();
    let denom: u64 = parts.iter().map(|&p| factorial_u64(p as usize)).product();
    factorial_u64(total) / denom
}

/// Calls `f` once for every `k`-subset of `0..n`, in lexicographic order.
pub fn for_each_combination(n: usize, k: usize, mut f: impl FnMut(&[usize])) {
    if k > n {
        return;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        f(&idx);
        let mut i = k;
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            if idx[i] != i + n - k {
                break;
            }
            if i == 0 {
                return;
            }
        }
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// Calls `f` once for every composition of `total` into `parts` positive
/// integers, in lexicographic order.
pub fn for_each_composition(total: usize, parts: usize, mut f: impl FnMut(&[u32])) {
    if parts == 0 || total < parts {
        return;
    }
    let mut buf = vec![0u32; parts];
    fn rec(buf: &mut [u32], pos: usize, remaining: usize, f: &mut dyn FnMut(&[u32])) {
        let slots_left = buf.len() - pos;
        if slots_left == 1 {
            buf[pos] = remaining as u32;
            f(buf);
            return;
        }
        for v in 1..=remaining - (slots_left - 1) {
            buf[pos] = v as u32;
            rec(buf, pos + 1, remaining - v, f);
        }
    }
    rec(&mut buf, 0, total, &mut f);
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn factorial_table() {
        assert_eq!(factorial_u64(0), 1);
        assert_eq!(factorial_u64(5), 120);
        assert_eq!(factorial_u64(20), 2_432_902_008_176_640_000);
        assert_eq!(factorial(20) as u64, factorial_u64(20));
    }

    #[test]
    fn binomials_match_pascal() {
        for n in 0..15 {
            for k in 0..=n {
                let expected = if k == 0 || k == n {
                    1
                } else {
                    binomial(n - 1, k - 1) + binomial(n - 1, k)
                };
                assert_eq!(binomial(n, k), expected, "C({n},{k})");
            }
        }
        assert_eq!(binomial(3, 5), 0);
    }

    #[test]
    fn combinations_are_counted() {
        let mut seen = Vec::new();
        for_each_combination(5, 3, |c| seen.push(c.to_vec()));
        assert_eq!(seen.len(), 10);
        assert_eq!(seen[0], vec![0, 1, 2]);
        assert_eq!(seen[9], vec![2, 3, 4]);
        let mut count = 0;
        for_each_combination(4, 4, |_| count += 1);
        assert_eq!(count, 1);
        for_each_combination(3, 0, |c| assert!(c.is_empty()));
    }

    #[test]
    fn compositions_of_three_into_two() {
        let mut seen = Vec::new();
        for_each_composition(3, 2, |c| seen.push(c.to_vec()));
        assert_eq!(seen, vec![vec![1, 2], vec![2, 1]]);
        let mut count = 0;
        for_each_composition(6, 3, |_| count += 1);
        assert_eq!(count as u64, binomial(5, 2));
    }

    #[test]
    fn multinomials() {
        assert_eq!(multinomial(&[1, 2]), 3);
        assert_eq!(multinomial(&[1, 1, 1]), 6);
        assert_eq!(multinomial(&[2, 2]), 6);
    }
}
