//! Arithmetic in GF(p^k) on coordinate vectors over the polynomial basis
//! `1, w, ..., w^(k-1)`, where `w` is a root of the lexicographically least
//! monic irreducible polynomial of degree `k` over F_p.

#[derive(Clone, Debug)]
pub(crate) struct GfData {
    pub p: u64,
    pub k: usize,
    /// Monic modulus, low degree first, length `k + 1`.
    pub modulus: Vec<u64>,
}

fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

impl GfData {
    pub fn new(p: u64, k: usize) -> Self {
        let modulus = if k == 1 {
            vec![0, 1]
        } else {
            find_irreducible(p, k)
        };
        GfData { p, k, modulus }
    }

    pub fn order(&self) -> Option<u128> {
        (self.p as u128).checked_pow(self.k as u32)
    }

    pub fn add(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        a.iter().zip(b).map(|(x, y)| (x + y) % self.p).collect()
    }

    pub fn neg(&self, a: &[u64]) -> Vec<u64> {
        a.iter().map(|x| (self.p - x) % self.p).collect()
    }

    pub fn mul(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        let p = self.p;
        let k = self.k;
        let mut prod = vec![0u64; 2 * k - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                prod[i + j] = (prod[i + j] + mulmod(x, y, p)) % p;
            }
        }
        reduce(&mut prod, &self.modulus, p);
        prod.truncate(k);
        prod
    }

    pub fn pow(&self, a: &[u64], mut e: u128) -> Vec<u64> {
        let mut result = self.one();
        let mut base = a.to_vec();
        while e > 0 {
            if e & 1 == 1 {
                result = self.mul(&result, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        result
    }

    pub fn one(&self) -> Vec<u64> {
        let mut v = vec![0; self.k];
        v[0] = 1;
        v
    }

    pub fn inverse(&self, a: &[u64]) -> Option<Vec<u64>> {
        if a.iter().all(|&x| x == 0) {
            return None;
        }
        let order = self.order()?;
        Some(self.pow(a, order - 2))
    }

    /// `a ↦ a^(p^e)`, with `e` taken modulo `k`.
    pub fn frobenius(&self, a: &[u64], e: i64) -> Vec<u64> {
        let e = e.rem_euclid(self.k as i64) as u32;
        let mut out = a.to_vec();
        for _ in 0..e {
            out = self.pow(&out, self.p as u128);
        }
        out
    }
}

/// Reduces `poly` (low degree first) modulo a monic `modulus` in place.
fn reduce(poly: &mut [u64], modulus: &[u64], p: u64) {
    let k = modulus.len() - 1;
    for d in (k..poly.len()).rev() {
        let c = poly[d];
        if c == 0 {
            continue;
        }
        for (i, &m) in modulus.iter().enumerate() {
            let idx = d - k + i;
            poly[idx] = (poly[idx] + p - mulmod(c, m, p)) % p;
        }
    }
}

fn poly_rem_is_zero(num: &[u64], den: &[u64], p: u64) -> bool {
    let mut rem = num.to_vec();
    reduce(&mut rem, den, p);
    rem[..den.len() - 1].iter().all(|&c| c == 0)
}

/// Enumerates monic polynomials of degree `deg` over F_p in lexicographic order
/// of their coefficient vectors (low degree first, most significant last).
fn monic_polys(p: u64, deg: usize) -> impl Iterator<Item = Vec<u64>> {
    let count = p.pow(deg as u32);
    (0..count).map(move |mut idx| {
        let mut coeffs = Vec::with_capacity(deg + 1);
        for _ in 0..deg {
            coeffs.push(idx % p);
            idx /= p;
        }
        coeffs.push(1);
        coeffs
    })
}

fn find_irreducible(p: u64, k: usize) -> Vec<u64> {
    monic_polys(p, k)
        .find(|cand| {
            (1..=k / 2).all(|d| monic_polys(p, d).all(|fac| !poly_rem_is_zero(cand, &fac, p)))
        })
        .expect("an irreducible polynomial of every degree exists over a prime field")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gf4_uses_w2_plus_w_plus_1() {
        let gf = GfData::new(2, 2);
        assert_eq!(gf.modulus, vec![1, 1, 1]);
        let w = vec![0, 1];
        // w^2 = w + 1
        assert_eq!(gf.mul(&w, &w), vec![1, 1]);
        assert_eq!(gf.frobenius(&w, 1), vec![1, 1]);
        assert_eq!(gf.frobenius(&w, 2), w);
    }

    #[test]
    fn every_nonzero_element_is_invertible() {
        for (p, k) in [(2, 3), (3, 2), (5, 2), (2, 4)] {
            let gf = GfData::new(p, k);
            for idx in 1..gf.order().unwrap() as u64 {
                let mut a = Vec::new();
                let mut t = idx;
                for _ in 0..k {
                    a.push(t % p);
                    t /= p;
                }
                let inv = gf.inverse(&a).unwrap();
                assert_eq!(gf.mul(&a, &inv), gf.one(), "p={p} k={k} a={a:?}");
            }
        }
    }
}
