//! Arithmetic and linear algebra over a prime field `F_p`, `p < 2^31`.

pub(crate) fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1 % p;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    r
}

pub(crate) fn inv_mod(a: u64, p: u64) -> u64 {
    debug_assert!(!a.is_multiple_of(p));
    pow_mod(a, p - 2, p)
}

pub(crate) fn is_prime(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Smallest prime `p ≡ 1 (mod e)` with `p > 2·sqrt(n)`.
pub(crate) fn dixon_prime(e: u64, n: u64) -> u64 {
    let mut p = e + 1;
    loop {
        if is_prime(p) && p * p > 4 * n {
            return p;
        }
        p += e;
    }
}

pub(crate) fn primitive_root(p: u64) -> u64 {
    let factors = prime_factors(p - 1);
    (1..p)
        .find(|&g| factors.iter().all(|&q| pow_mod(g, (p - 1) / q, p) != 1))
        .expect("every prime field has a primitive root")
}

/// Basis of the right null space `{x : A x = 0}` of a `rows × cols` matrix.
pub(crate) fn nullspace(a: &[Vec<u64>], cols: usize, p: u64) -> Vec<Vec<u64>> {
    let mut m: Vec<Vec<u64>> = a.to_vec();
    let mut pivot_cols = Vec::new();
    let mut row = 0;
    for col in 0..cols {
        let Some(piv) = (row..m.len()).find(|&r| m[r][col] != 0) else {
            continue;
        };
        m.swap(row, piv);
        let inv = inv_mod(m[row][col], p);
        for v in m[row].iter_mut() {
            *v = *v * inv % p;
        }
        for r in 0..m.len() {
            if r != row && m[r][col] != 0 {
                let f = m[r][col];
                for c in 0..cols {
                    m[r][c] = (m[r][c] + p - f * m[row][c] % p) % p;
                }
            }
        }
        pivot_cols.push(col);
        row += 1;
        if row == m.len() {
            break;
        }
    }
    let free: Vec<usize> = (0..cols).filter(|c| !pivot_cols.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut x = vec![0u64; cols];
            x[f] = 1;
            for (r, &pc) in pivot_cols.iter().enumerate() {
                x[pc] = (p - m[r][f]) % p;
            }
            x
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primes_and_roots() {
        assert_eq!(dixon_prime(1, 1), 3);
        assert_eq!(dixon_prime(4, 64), 17);
        assert_eq!(dixon_prime(6, 6), 7);
        let g = primitive_root(17);
        let powers: std::collections::HashSet<u64> = (0..16).map(|k| pow_mod(g, k, 17)).collect();
        assert_eq!(powers.len(), 16);
        assert_eq!(inv_mod(3, 7), 5);
    }

    #[test]
    fn null_space() {
        // x + y = 0, over F_5, in 3 unknowns: two-dimensional kernel
        let ns = nullspace(&[vec![1, 1, 0]], 3, 5);
        assert_eq!(ns.len(), 2);
        for x in ns {
            assert_eq!((x[0] + x[1]) % 5, 0);
        }
        assert!(nullspace(&[vec![1, 0], vec![0, 1]], 2, 5).is_empty());
    }
}
