//! Polynomials over the prime field F_p and the residue field F_q = F_p[x]/(m).
//!
//! Coefficient vectors are stored low degree first. `p` is assumed to be small
//! enough that products of two residues fit in a `u64`.

pub(crate) type Poly = Vec<u64>;

pub(crate) fn trim(a: &mut Poly) {
    while a.last() == Some(&0) {
        a.pop();
    }
}

fn degree(a: &[u64]) -> Option<usize> {
    a.iter().rposition(|&c| c != 0)
}

pub(crate) fn inv_mod(a: u64, p: u64) -> u64 {
    // Fermat; p is prime.
    pow_mod(a, p - 2, p)
}

pub(crate) fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        exp >>= 1;
    }
    acc
}

pub(crate) fn sub(a: &[u64], b: &[u64], p: u64) -> Poly {
    let n = a.len().max(b.len());
    let mut out: Poly = (0..n)
        .map(|i| {
            let x = a.get(i).copied().unwrap_or(0);
            let y = b.get(i).copied().unwrap_or(0);
            (x + p - y) % p
        })
        .collect();
    trim(&mut out);
    out
}

pub(crate) fn mul(a: &[u64], b: &[u64], p: u64) -> Poly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x * y) % p;
        }
    }
    trim(&mut out);
    out
}

/// Remainder of `a` modulo `m` (m nonzero).
pub(crate) fn rem(a: &[u64], m: &[u64], p: u64) -> Poly {
    let mut r: Poly = a.to_vec();
    trim(&mut r);
    let dm = degree(m).expect("modulus must be nonzero");
    let lead_inv = inv_mod(m[dm], p);
    while let Some(dr) = degree(&r) {
        if dr < dm {
            break;
        }
        let factor = r[dr] * lead_inv % p;
        let off = dr - dm;
        for (i, &c) in m[..=dm].iter().enumerate() {
            r[off + i] = (r[off + i] + p - factor * c % p) % p;
        }
        trim(&mut r);
    }
    r
}

pub(crate) fn gcd(a: &[u64], b: &[u64], p: u64) -> Poly {
    let mut x: Poly = a.to_vec();
    let mut y: Poly = b.to_vec();
    trim(&mut x);
    trim(&mut y);
    while !y.is_empty() {
        let r = rem(&x, &y, p);
        x = y;
        y = r;
    }
    // make monic
    if let Some(d) = degree(&x) {
        let inv = inv_mod(x[d], p);
        for c in &mut x {
            *c = *c * inv % p;
        }
    }
    x
}

pub(crate) fn mulmod(a: &[u64], b: &[u64], m: &[u64], p: u64) -> Poly {
    rem(&mul(a, b, p), m, p)
}

pub(crate) fn powmod(a: &[u64], mut exp: u128, m: &[u64], p: u64) -> Poly {
    let mut acc: Poly = rem(&[1], m, p);
    let mut base = rem(a, m, p);
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mulmod(&acc, &base, m, p);
        }
        base = mulmod(&base, &base, m, p);
        exp >>= 1;
    }
    acc
}

/// Ben-Or irreducibility test: a monic `m` of degree f is irreducible iff
/// gcd(x^{p^i} - x, m) = 1 for all 1 <= i <= f/2.
pub(crate) fn is_irreducible(m: &[u64], p: u64) -> bool {
    let Some(f) = degree(m) else { return false };
    if f == 0 {
        return false;
    }
    if f == 1 {
        return true;
    }
    let x: Poly = vec![0, 1];
    let mut frob = x.clone();
    for _ in 1..=f / 2 {
        frob = powmod(&frob, p as u128, m, p);
        let g = gcd(&sub(&frob, &x, p), m, p);
        if degree(&g) != Some(0) {
            return false;
        }
    }
    true
}

/// Lexicographically smallest monic irreducible polynomial of degree `f`,
/// comparing the tuple (c_0, ..., c_{f-1}) with c_0 most significant.
pub(crate) fn smallest_irreducible(p: u64, f: usize) -> Poly {
    let count = (p as u128).pow(f as u32);
    for k in 0..count {
        let mut m = tuple_from_rank(k, p, f);
        m.push(1);
        if is_irreducible(&m, p) {
            return m;
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

/// The `k`-th coefficient tuple of length `f` in lexicographic order with
/// c_0 most significant.
pub(crate) fn tuple_from_rank(mut k: u128, p: u64, f: usize) -> Vec<u64> {
    let mut out = vec![0u64; f];
    for slot in out.iter_mut().rev() {
        *slot = (k % p as u128) as u64;
        k /= p as u128;
    }
    out
}

pub(crate) fn prime_factors(mut n: u128) -> Vec<u128> {
    let mut out = Vec::new();
    let mut d = 2u128;
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

/// Smallest generator of F_q^x in the same lexicographic order as
/// [`smallest_irreducible`]. Returned as a length-f coefficient vector.
pub(crate) fn smallest_generator(p: u64, f: usize, m: &[u64]) -> Vec<u64> {
    let q = (p as u128).pow(f as u32);
    let order = q - 1;
    let factors = prime_factors(order);
    for k in 1..q {
        let g = tuple_from_rank(k, p, f);
        if g.iter().all(|&c| c == 0) {
            continue;
        }
        let is_gen = factors.iter().all(|&r| powmod(&g, order / r, m, p) != vec![1]);
        if is_gen {
            return g;
        }
    }
    // q = 2: the only unit is 1
    let mut one = vec![0u64; f];
    one[0] = 1;
    one
}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quadratic_over_f2_is_unique() {
        let irreducibles: Vec<Poly> = (0..4)
            .map(|k| {
                let mut m = tuple_from_rank(k, 2, 2);
                m.push(1);
                m
            })
            .filter(|m| is_irreducible(m, 2))
            .collect();
        assert_eq!(irreducibles, vec![vec![1, 1, 1]]);
    }

    #[test]
    fn irreducibility_matches_root_search_for_small_degrees() {
        // degree <= 3: irreducible iff no root in F_p
        for p in [2u64, 3, 5, 7] {
            for f in 2..=3usize {
                for k in 0..(p as u128).pow(f as u32) {
                    let mut m = tuple_from_rank(k, p, f);
                    m.push(1);
                    let has_root = (0..p).any(|x| m.iter().rev().fold(0u64, |acc, &c| (acc * x + c) % p) == 0);
                    assert_eq!(is_irreducible(&m, p), !has_root, "p={p} m={m:?}");
                }
            }
        }
    }

    #[test]
    fn quartic_reducible_without_roots() {
        // (x^2+x+1)^2 = x^4 + x^2 + 1 over F_2 has no root but is reducible
        assert!(!is_irreducible(&[1, 0, 1, 0, 1], 2));
        assert!(is_irreducible(&[1, 1, 0, 0, 1], 2));
    }

    #[test]
    fn generators() {
        assert_eq!(smallest_generator(5, 1, &[0, 1]), vec![2]);
        assert_eq!(smallest_generator(7, 1, &[0, 1]), vec![3]);
        assert_eq!(smallest_generator(2, 2, &[1, 1, 1]), vec![0, 1]);
        assert_eq!(smallest_generator(2, 1, &[0, 1]), vec![1]);
    }

    #[test]
    fn primes() {
        let ps: Vec<u64> = (0..30).filter(|&n| is_prime(n)).collect();
        assert_eq!(ps, vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29]);
    }
}
