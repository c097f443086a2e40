//! Zassenhaus factorization of squarefree primitive polynomials in Z[x].
//!
//! Dense coefficient vectors, lowest degree first. Arithmetic modulo a small
//! prime uses machine words; Hensel lifting works modulo `p^(2^k)` in BigInt.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub(crate) type ZPoly = Vec<BigInt>;
type FpPoly = Vec<u64>;

fn trim<T: Zero>(v: &mut Vec<T>) {
    while v.len() > 1 && v.last().map_or(false, |c| c.is_zero()) {
        v.pop();
    }
}

fn deg<T>(v: &[T]) -> usize {
    v.len() - 1
}

#[derive(Clone, Copy)]
struct Fp {
    p: u64,
}

impl Fp {
    fn mul(self, a: u64, b: u64) -> u64 {
        ((a as u128 * b as u128) % self.p as u128) as u64
    }

    fn add(self, a: u64, b: u64) -> u64 {
        (a + b) % self.p
    }

    fn sub(self, a: u64, b: u64) -> u64 {
        (a + self.p - b) % self.p
    }

    fn pow(self, mut a: u64, mut e: u64) -> u64 {
        let mut r = 1;
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul(r, a);
            }
            a = self.mul(a, a);
            e >>= 1;
        }
        r
    }

    fn inv(self, a: u64) -> u64 {
        self.pow(a, self.p - 2)
    }

    fn reduce(self, f: &ZPoly) -> FpPoly {
        let p = BigInt::from(self.p);
        let mut v: FpPoly = f
            .iter()
            .map(|c| {
                let r = c.mod_floor(&p);
                r.to_u64_digits().1.first().copied().unwrap_or(0)
            })
            .collect();
        trim(&mut v);
        v
    }

    fn is_zero(a: &FpPoly) -> bool {
        a.len() == 1 && a[0] == 0
    }

    fn mul_poly(self, a: &FpPoly, b: &FpPoly) -> FpPoly {
        let mut out = vec![0u64; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                out[i + j] = self.add(out[i + j], self.mul(x, y));
            }
        }
        trim(&mut out);
        out
    }

    fn sub_poly(self, a: &FpPoly, b: &FpPoly) -> FpPoly {
        let n = a.len().max(b.len());
        let mut out: FpPoly = (0..n)
            .map(|i| self.sub(*a.get(i).unwrap_or(&0), *b.get(i).unwrap_or(&0)))
            .collect();
        trim(&mut out);
        out
    }

    fn divrem(self, a: &FpPoly, b: &FpPoly) -> (FpPoly, FpPoly) {
        let db = deg(b);
        let inv = self.inv(b[db]);
        let mut r = a.clone();
        if a.len() < b.len() {
            return (vec![0], r);
        }
        let mut q = vec![0u64; a.len() - db];
        for k in (0..q.len()).rev() {
            let c = self.mul(r[k + db], inv);
            q[k] = c;
            if c != 0 {
                for (j, &y) in b.iter().enumerate() {
                    r[k + j] = self.sub(r[k + j], self.mul(c, y));
                }
            }
        }
        r.truncate(db.max(1));
        trim(&mut r);
        trim(&mut q);
        (q, r)
    }

    fn monic(self, a: &FpPoly) -> FpPoly {
        let inv = self.inv(a[deg(a)]);
        a.iter().map(|&c| self.mul(c, inv)).collect()
    }

    fn gcd(self, a: &FpPoly, b: &FpPoly) -> FpPoly {
        let (mut a, mut b) = (a.clone(), b.clone());
        while !Fp::is_zero(&b) {
            let r = self.divrem(&a, &b).1;
            a = b;
            b = r;
        }
        self.monic(&a)
    }

    /// `(g, s, t)` with `s a + t b = g` monic.
    fn ext_gcd(self, a: &FpPoly, b: &FpPoly) -> (FpPoly, FpPoly, FpPoly) {
        let (mut r0, mut r1) = (a.clone(), b.clone());
        let (mut s0, mut s1) = (vec![1u64], vec![0u64]);
        let (mut t0, mut t1) = (vec![0u64], vec![1u64]);
        while !Fp::is_zero(&r1) {
            let (q, r) = self.divrem(&r0, &r1);
            r0 = std::mem::replace(&mut r1, r);
            let s = self.sub_poly(&s0, &self.mul_poly(&q, &s1));
            s0 = std::mem::replace(&mut s1, s);
            let t = self.sub_poly(&t0, &self.mul_poly(&q, &t1));
            t0 = std::mem::replace(&mut t1, t);
        }
        let inv = self.inv(r0[deg(&r0)]);
        let scale = |v: &FpPoly| -> FpPoly { v.iter().map(|&c| self.mul(c, inv)).collect() };
        (scale(&r0), scale(&s0), scale(&t0))
    }

    fn derivative(self, a: &FpPoly) -> FpPoly {
        if a.len() == 1 {
            return vec![0];
        }
        let mut out: FpPoly = (1..a.len())
            .map(|i| self.mul(a[i], i as u64 % self.p))
            .collect();
        trim(&mut out);
        out
    }

    fn powmod(self, base: &FpPoly, exp: &BigUint, m: &FpPoly) -> FpPoly {
        let mut result = vec![1u64];
        let base = self.divrem(base, m).1;
        for i in (0..exp.bits()).rev() {
            result = self.divrem(&self.mul_poly(&result, &result), m).1;
            if exp.bit(i) {
                result = self.divrem(&self.mul_poly(&result, &base), m).1;
            }
        }
        result
    }

    /// Distinct-degree factorization of a monic squarefree polynomial.
    fn ddf(self, f: &FpPoly) -> Vec<(FpPoly, usize)> {
        let mut out = Vec::new();
        let mut f = f.clone();
        let x = vec![0, 1];
        let p = BigUint::from(self.p);
        let mut h = x.clone();
        let mut d = 1;
        while 2 * d <= deg(&f) {
            h = self.powmod(&h, &p, &f);
            let g = self.gcd(&self.sub_poly(&h, &x), &f);
            if deg(&g) > 0 {
                f = self.divrem(&f, &g).0;
                h = self.divrem(&h, &f).1;
                out.push((g, d));
            }
            d += 1;
        }
        if deg(&f) > 0 {
            let n = deg(&f);
            out.push((f, n));
        }
        out
    }

    /// Cantor–Zassenhaus equal-degree splitting.
    fn edf(self, f: &FpPoly, d: usize, rng: &mut ChaCha8Rng, out: &mut Vec<FpPoly>) {
        let n = deg(f);
        if n == d {
            out.push(self.monic(f));
            return;
        }
        let e = (BigUint::from(self.p).pow(d as u32) - 1u32) / 2u32;
        loop {
            let mut a: FpPoly = (0..n).map(|_| rng.gen_range(0..self.p)).collect();
            trim(&mut a);
            if deg(&a) == 0 {
                continue;
            }
            let b = self.powmod(&a, &e, f);
            let g = self.gcd(&self.sub_poly(&b, &vec![1]), f);
            if deg(&g) > 0 && deg(&g) < n {
                let h = self.divrem(f, &g).0;
                self.edf(&g, d, rng, out);
                self.edf(&h, d, rng, out);
                return;
            }
        }
    }

    fn factor(self, f: &FpPoly) -> Vec<FpPoly> {
        let mut rng = ChaCha8Rng::seed_from_u64(0xfac7 ^ self.p);
        let mut out = Vec::new();
        for (g, d) in self.ddf(&self.monic(f)) {
            self.edf(&g, d, &mut rng, &mut out);
        }
        out
    }
}

fn is_prime(n: u64) -> bool {
    n >= 2 && (2..).take_while(|k| k * k <= n).all(|k| n % k != 0)
}

/// Smallest prime >= 31 keeping `f` squarefree of the same degree.
fn choose_prime(f: &ZPoly) -> u64 {
    let mut p = 31;
    loop {
        if is_prime(p) {
            let fp = Fp { p };
            let r = fp.reduce(f);
            if r.len() == f.len() {
                let g = fp.gcd(&r, &fp.derivative(&r));
                if deg(&g) == 0 {
                    return p;
                }
            }
        }
        p += 1;
    }
}

// ---- arithmetic modulo a big modulus ----

fn zmod(v: &[BigInt], m: &BigInt) -> ZPoly {
    let mut out: ZPoly = v.iter().map(|c| c.mod_floor(m)).collect();
    if out.is_empty() {
        out.push(BigInt::zero());
    }
    trim(&mut out);
    out
}

fn zmul(a: &[BigInt], b: &[BigInt]) -> ZPoly {
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(&mut out);
    out
}

fn zadd(a: &[BigInt], b: &[BigInt]) -> ZPoly {
    let n = a.len().max(b.len());
    let z = BigInt::zero();
    let mut out: ZPoly = (0..n)
        .map(|i| a.get(i).unwrap_or(&z) + b.get(i).unwrap_or(&z))
        .collect();
    trim(&mut out);
    out
}

fn zsub(a: &[BigInt], b: &[BigInt]) -> ZPoly {
    let n = a.len().max(b.len());
    let z = BigInt::zero();
    let mut out: ZPoly = (0..n)
        .map(|i| a.get(i).unwrap_or(&z) - b.get(i).unwrap_or(&z))
        .collect();
    trim(&mut out);
    out
}

/// Division by a monic `h` modulo `m`.
fn zdivrem_monic(a: &[BigInt], h: &[BigInt], m: &BigInt) -> (ZPoly, ZPoly) {
    let dh = deg(h);
    let mut r = zmod(a, m);
    if r.len() < h.len() {
        return (vec![BigInt::zero()], r);
    }
    let mut q = vec![BigInt::zero(); r.len() - dh];
    for k in (0..q.len()).rev() {
        let c = r[k + dh].clone();
        if c.is_zero() {
            continue;
        }
        for (j, y) in h.iter().enumerate() {
            r[k + j] = (&r[k + j] - &c * y).mod_floor(m);
        }
        q[k] = c;
    }
    r.truncate(dh.max(1));
    trim(&mut r);
    trim(&mut q);
    (q, r)
}

fn lift_fp(v: &FpPoly) -> ZPoly {
    v.iter().map(|&c| BigInt::from(c)).collect()
}

/// One quadratic Hensel step: from `f = g h`, `s g + t h = 1` modulo `m`
/// to the same relations modulo `m^2`. `h` stays monic.
fn hensel_step(
    f: &ZPoly,
    g: &ZPoly,
    h: &ZPoly,
    s: &ZPoly,
    t: &ZPoly,
    m: &BigInt,
) -> (ZPoly, ZPoly, ZPoly, ZPoly) {
    let m2 = m * m;
    let e = zmod(&zsub(f, &zmul(g, h)), &m2);
    let (q, r) = zdivrem_monic(&zmul(s, &e), h, &m2);
    let g1 = zmod(&zadd(&zadd(g, &zmul(t, &e)), &zmul(&q, g)), &m2);
    let h1 = zmod(&zadd(h, &r), &m2);
    let b = zmod(
        &zsub(&zadd(&zmul(s, &g1), &zmul(t, &h1)), &[BigInt::one()]),
        &m2,
    );
    let (c, d) = zdivrem_monic(&zmul(s, &b), &h1, &m2);
    let s1 = zmod(&zsub(s, &d), &m2);
    let t1 = zmod(&zsub(&zsub(t, &zmul(t, &b)), &zmul(&c, &g1)), &m2);
    (g1, h1, s1, t1)
}

/// Lifts `f = lc * prod(factors) mod p` to monic factors modulo `p^(2^k)`,
/// the first power not below `bound`.
fn lift_all(f: &ZPoly, factors: &[FpPoly], fp: Fp, bound: &BigInt) -> Vec<ZPoly> {
    let p = BigInt::from(fp.p);
    let lc = f[deg(f)].clone();
    if factors.len() == 1 {
        let mut m = p.clone();
        while &m < bound {
            m = &m * &m;
        }
        let inv = lc.extended_gcd(&m).x.mod_floor(&m);
        return vec![zmod(&f.iter().map(|c| c * &inv).collect::<Vec<_>>(), &m)];
    }
    let k = factors.len() / 2;
    let (left, right) = factors.split_at(k);
    let lc_p = lc
        .mod_floor(&p)
        .to_u64_digits()
        .1
        .first()
        .copied()
        .unwrap_or(0);
    let mut g0 = vec![lc_p];
    for x in left {
        g0 = fp.mul_poly(&g0, x);
    }
    let mut h0 = vec![1u64];
    for x in right {
        h0 = fp.mul_poly(&h0, x);
    }
    let (_, s0, t0) = fp.ext_gcd(&g0, &h0);
    let (mut g, mut h, mut s, mut t) = (lift_fp(&g0), lift_fp(&h0), lift_fp(&s0), lift_fp(&t0));
    let mut m = p;
    while &m < bound {
        (g, h, s, t) = hensel_step(f, &g, &h, &s, &t, &m);
        m = &m * &m;
    }
    let mut out = lift_all(&g, left, fp, bound);
    out.extend(lift_all(&h, right, fp, bound));
    out
}

fn symmetric(v: &[BigInt], m: &BigInt) -> ZPoly {
    let half: BigInt = m >> 1;
    let mut out: ZPoly = v
        .iter()
        .map(|c| {
            let r = c.mod_floor(m);
            if r > half {
                r - m
            } else {
                r
            }
        })
        .collect();
    trim(&mut out);
    out
}

pub(crate) fn primitive(v: &[BigInt]) -> ZPoly {
    let mut g = BigInt::zero();
    for c in v {
        g = g.gcd(c);
    }
    if g.is_zero() {
        return v.to_vec();
    }
    if v[deg(v)].is_negative() {
        g = -g;
    }
    v.iter().map(|c| c / &g).collect()
}

/// Exact quotient in Z[x], or `None` when `g` does not divide `f`.
pub(crate) fn divide_exact(f: &[BigInt], g: &[BigInt]) -> Option<ZPoly> {
    let dg = deg(g);
    if f.len() < g.len() {
        return None;
    }
    let mut r = f.to_vec();
    let mut q = vec![BigInt::zero(); f.len() - dg];
    for k in (0..q.len()).rev() {
        let (c, rem) = r[k + dg].div_rem(&g[dg]);
        if !rem.is_zero() {
            return None;
        }
        if c.is_zero() {
            continue;
        }
        for (j, y) in g.iter().enumerate() {
            r[k + j] -= &c * y;
        }
        q[k] = c;
    }
    if r.iter().any(|c| !c.is_zero()) {
        return None;
    }
    trim(&mut q);
    Some(q)
}

fn combinations(n: usize, k: usize) -> impl Iterator<Item = Vec<usize>> {
    let mut idx: Vec<usize> = (0..k).collect();
    let mut done = k > n;
    std::iter::from_fn(move || {
        if done {
            return None;
        }
        let out = idx.clone();
        // advance
        let mut i = k;
        loop {
            if i == 0 {
                done = true;
                break;
            }
            i -= 1;
            if idx[i] < n - k + i {
                idx[i] += 1;
                for j in i + 1..k {
                    idx[j] = idx[j - 1] + 1;
                }
                break;
            }
        }
        Some(out)
    })
}

/// Irreducible factors of a squarefree primitive `f` with positive leading
/// coefficient and `f(0) != 0`.
pub(crate) fn factor_squarefree(f: &ZPoly) -> Vec<ZPoly> {
    let n = deg(f);
    if n <= 1 {
        return vec![f.clone()];
    }
    let p = choose_prime(f);
    let fp = Fp { p };
    let modular = fp.factor(&fp.reduce(f));
    if modular.len() == 1 {
        return vec![f.clone()];
    }
    // coefficient bound for factors, times the leading coefficient
    let norm2: BigInt = f.iter().map(|c| c * c).sum::<BigInt>().sqrt() + 1;
    let lc_abs = f[n].abs();
    let bound: BigInt = BigInt::from(4) * &lc_abs * (BigInt::one() << n) * norm2;
    let lifted = lift_all(f, &modular, fp, &bound);
    let mut m = BigInt::from(p);
    while m < bound {
        m = &m * &m;
    }
    recombine(f.clone(), lifted, &m)
}

fn recombine(mut f: ZPoly, mut lifted: Vec<ZPoly>, m: &BigInt) -> Vec<ZPoly> {
    let mut out = Vec::new();
    let mut s = 1;
    'outer: while 2 * s <= lifted.len() {
        let lc = f[deg(&f)].clone();
        for subset in combinations(lifted.len(), s) {
            // constant-term filter before the full product
            let c0 = subset
                .iter()
                .fold(lc.clone(), |acc, &i| (acc * &lifted[i][0]).mod_floor(m));
            let c0 = symmetric(&[c0], m)[0].clone();
            if c0.is_zero() || !(&lc * &f[0]).is_multiple_of(&c0) {
                continue;
            }
            let mut g = vec![lc.clone()];
            for &i in &subset {
                g = zmod(&zmul(&g, &lifted[i]), m);
            }
            let g = primitive(&symmetric(&g, m));
            if let Some(q) = divide_exact(&f, &g) {
                out.push(g);
                f = q;
                let mut keep = Vec::with_capacity(lifted.len() - s);
                for (i, x) in lifted.into_iter().enumerate() {
                    if !subset.contains(&i) {
                        keep.push(x);
                    }
                }
                lifted = keep;
                continue 'outer;
            }
        }
        s += 1;
    }
    if deg(&f) > 0 {
        out.push(primitive(&f));
    }
    out
}
