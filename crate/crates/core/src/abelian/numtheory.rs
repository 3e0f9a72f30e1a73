//! Elementary number theory on machine integers.

use num_integer::Integer;

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Prime factorization as `(p, e)` pairs with increasing `p`. `1` factors as
/// the empty list.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    assert!(n > 0, "cannot factor 0");
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            let mut e = 0;
            while n.is_multiple_of(p) {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn prime_divisors(n: u64) -> Vec<u64> {
    factorize(n).into_iter().map(|(p, _)| p).collect()
}

/// Positive divisors in increasing order.
pub fn divisors(n: u64) -> Vec<u64> {
    let mut out = vec![1];
    for (p, e) in factorize(n) {
        let len = out.len();
        let mut pk = 1;
        for _ in 0..e {
            pk *= p;
            for i in 0..len {
                out.push(out[i] * pk);
            }
        }
    }
    out.sort_unstable();
    out
}

/// Euler's function: the number of `1 ≤ a ≤ n` with `gcd(a, n) = 1`.
pub fn euler_phi(n: u64) -> u64 {
    factorize(n)
        .into_iter()
        .fold(1, |acc, (p, e)| acc * (p - 1) * p.pow(e - 1))
}

/// Order of `x^k` when `x` has order `n`: `n / gcd(n, k)`.
pub fn power_order(n: u64, k: u64) -> u64 {
    n / n.gcd(&k)
}

/// Largest power of `p` dividing `n`, as `(p^a, a)`.
pub fn p_part(n: u64, p: u64) -> (u64, u32) {
    let mut q = 1;
    let mut a = 0;
    let mut m = n;
    while m.is_multiple_of(p) {
        m /= p;
        q *= p;
        a += 1;
    }
    (q, a)
}

/// `Some((p, m))` when `q = p^m` with `p` prime and `m ≥ 1`.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let f = factorize(q);
    (f.len() == 1).then(|| f[0])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn phi_by_definition() {
        for n in 1..=200u64 {
            let direct = (1..=n).filter(|a| a.gcd(&n) == 1).count() as u64;
            assert_eq!(euler_phi(n), direct, "n = {n}");
        }
    }

    #[test]
    fn factorization_and_divisors() {
        assert_eq!(factorize(216), vec![(2, 3), (3, 3)]);
        assert!(factorize(1).is_empty());
        assert_eq!(divisors(30), vec![1, 2, 3, 5, 6, 10, 15, 30]);
        assert_eq!(prime_power(27), Some((3, 3)));
        assert_eq!(prime_power(12), None);
        assert_eq!(p_part(48, 2), (16, 4));
    }

    #[test]
    fn power_order_matches_powering() {
        // x^8 in C_12 = 8·k mod 12
        let direct = (1..=12).find(|k| (8 * k) % 12 == 0).unwrap();
        assert_eq!(power_order(12, 8), direct);
        assert_eq!(power_order(12, 8), 3);
    }
}
