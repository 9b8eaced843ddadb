//! Small finite fields GF(p^k), table driven.
//!
//! Elements are encoded as integers `0..q` whose base-`p` digits are the
//! coefficients of a polynomial modulo a fixed irreducible of degree `k`.

#[derive(Debug, Clone)]
pub struct Field {
    pub p: usize,
    pub k: usize,
    pub q: usize,
    add: Vec<usize>,
    mul: Vec<usize>,
    neg: Vec<usize>,
    inv: Vec<usize>,
    /// A generator of the multiplicative group.
    pub alpha: usize,
}

/// `Some((p, k))` when `q = p^k` with `p` prime and `k ≥ 1`.
pub fn prime_power(q: usize) -> Option<(usize, usize)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|d| q % d == 0)?;
    let (mut m, mut k) = (q, 0);
    while m % p == 0 {
        m /= p;
        k += 1;
    }
    (m == 1).then_some((p, k))
}

pub fn is_prime(n: usize) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| n % d != 0)
}

pub fn smallest_prime_factor(n: usize) -> usize {
    (2..).take_while(|d| d * d <= n).find(|d| n % d == 0).unwrap_or(n)
}

fn digits(mut x: usize, p: usize, k: usize) -> Vec<usize> {
    (0..k)
        .map(|_| {
            let d = x % p;
            x /= p;
            d
        })
        .collect()
}

fn undigits(d: &[usize], p: usize) -> usize {
    d.iter().rev().fold(0, |acc, &c| acc * p + c)
}

/// Product of two polynomials reduced by the monic `modulus` (low degree first, length k+1).
fn poly_mulmod(a: &[usize], b: &[usize], modulus: &[usize], p: usize) -> Vec<usize> {
    let k = modulus.len() - 1;
    let mut prod = vec![0; 2 * k];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x * y) % p;
        }
    }
    for deg in (k..prod.len()).rev() {
        let c = prod[deg];
        if c != 0 {
            for (i, &m) in modulus.iter().enumerate() {
                let idx = deg - k + i;
                prod[idx] = (prod[idx] + p - c * m % p) % p;
            }
        }
    }
    prod.truncate(k);
    prod
}

impl Field {
    pub fn new(q: usize) -> Option<Field> {
        let (p, k) = prime_power(q)?;
        // monic irreducible: x^k + c, found by checking it has no zero divisors
        let modulus = (0..p.pow(k as u32))
            .map(|c| {
                let mut m = digits(c, p, k);
                m.push(1);
                m
            })
            .find(|m| {
                (1..q).all(|a| {
                    let da = digits(a, p, k);
                    (1..q).all(|b| poly_mulmod(&da, &digits(b, p, k), m, p).iter().any(|&c| c != 0))
                })
            })?;
        let mut add = vec![0; q * q];
        let mut mul = vec![0; q * q];
        for a in 0..q {
            let da = digits(a, p, k);
            for b in 0..q {
                let db = digits(b, p, k);
                let s: Vec<usize> = da.iter().zip(&db).map(|(x, y)| (x + y) % p).collect();
                add[a * q + b] = undigits(&s, p);
                mul[a * q + b] = undigits(&poly_mulmod(&da, &db, &modulus, p), p);
            }
        }
        let neg = (0..q).map(|a| (0..q).find(|&b| add[a * q + b] == 0).unwrap()).collect();
        let inv = (0..q).map(|a| if a == 0 { 0 } else { (1..q).find(|&b| mul[a * q + b] == 1).unwrap() }).collect();
        let mut f = Field { p, k, q, add, mul, neg, inv, alpha: 0 };
        f.alpha = (2..q).chain([1]).find(|&a| f.mult_order(a) == q - 1)?;
        Some(f)
    }

    #[inline]
    pub fn add(&self, a: usize, b: usize) -> usize {
        self.add[a * self.q + b]
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.q + b]
    }

    #[inline]
    pub fn neg(&self, a: usize) -> usize {
        self.neg[a]
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        assert!(a != 0, "inverse of zero");
        self.inv[a]
    }

    pub fn sub(&self, a: usize, b: usize) -> usize {
        self.add(a, self.neg(b))
    }

    pub fn pow(&self, a: usize, e: usize) -> usize {
        (0..e).fold(1, |acc, _| self.mul(acc, a))
    }

    pub fn mult_order(&self, a: usize) -> usize {
        if a == 0 {
            return 0;
        }
        let mut x = a;
        let mut k = 1;
        while x != 1 {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    pub fn frobenius(&self, a: usize) -> usize {
        self.pow(a, self.p)
    }
}
