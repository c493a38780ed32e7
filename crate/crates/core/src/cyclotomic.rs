//! Exact arithmetic in cyclotomic fields Q(zeta_n).
//!
//! An element is stored as a rational coefficient vector in the power
//! basis 1, z, ..., z^(phi(n)-1) of Q[x]/(Phi_n(x)), together with its
//! conductor n.  Arithmetic never rounds; conductors are raised to a
//! common multiple on demand and canonically reduced on request.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::sync::Mutex;
use thiserror::Error;

pub type Rat = BigRational;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CycError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("element of conductor {found} does not fit pinned conductor {pinned}")]
    ConductorTooSmall { pinned: u64, found: u64 },
}

pub fn rat_int(n: i64) -> Rat {
    BigRational::from_integer(BigInt::from(n))
}

pub fn rat(n: i64, d: i64) -> Rat {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Euler phi.
pub fn euler_phi(n: u64) -> u64 {
    let mut result = n;
    let mut m = n;
    let mut p = 2;
    while p * p <= m {
        if m % p == 0 {
            while m % p == 0 {
                m /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if m > 1 {
        result -= result / m;
    }
    result
}

fn divisors(n: u64) -> Vec<u64> {
    let mut ds = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n % d == 0 {
            ds.push(d);
            if d != n / d {
                ds.push(n / d);
            }
        }
        d += 1;
    }
    ds.sort_unstable();
    ds
}

/// Exact division of integer polynomials (assumes divisor monic and division exact).
fn poly_div_exact(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    let mut rem = num.to_vec();
    let dn = den.len() - 1;
    let mut quot = vec![BigInt::zero(); rem.len() - dn];
    for i in (0..quot.len()).rev() {
        let c = rem[i + dn].clone();
        if c.is_zero() {
            continue;
        }
        quot[i] = c.clone();
        for (k, dk) in den.iter().enumerate() {
            let t = &c * dk;
            rem[i + k] -= t;
        }
    }
    debug_assert!(rem.iter().all(|c| c.is_zero()));
    quot
}

/// A cyclotomic number: rational coefficients in the power basis of
/// Q(zeta_conductor).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Cyclotomic {
    conductor: u64,
    /// length = phi(conductor); coeffs[i] multiplies zeta^i
    coeffs: Vec<Rat>,
}

impl Cyclotomic {
    pub fn zero() -> Self {
        Cyclotomic {
            conductor: 1,
            coeffs: vec![Rat::zero()],
        }
    }

    pub fn one() -> Self {
        Cyclotomic {
            conductor: 1,
            coeffs: vec![Rat::one()],
        }
    }

    pub fn from_rat(r: Rat) -> Self {
        Cyclotomic {
            conductor: 1,
            coeffs: vec![r],
        }
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rat(rat_int(n))
    }

    /// zeta_n^k
    pub fn root_of_unity(n: u64, k: i64) -> Self {
        let mut kk = k % n as i64;
        if kk < 0 {
            kk += n as i64;
        }
        let mut c = Cyclotomic {
            conductor: n,
            coeffs: vec![Rat::zero(); euler_phi(n) as usize],
        };
        c.add_power(kk as u64, Rat::one());
        c.reduce_conductor()
    }

    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn is_one(&self) -> bool {
        self.is_rational() && self.coeffs[0].is_one()
    }

    pub fn is_rational(&self) -> bool {
        self.coeffs.iter().skip(1).all(|c| c.is_zero())
    }

    pub fn as_rational(&self) -> Option<Rat> {
        if self.is_rational() {
            Some(self.coeffs[0].clone())
        } else {
            None
        }
    }

    pub fn is_integer(&self) -> bool {
        match self.as_rational() {
            Some(r) => r.denom().is_one() || r.numer().is_zero(),
            None => false,
        }
    }

    /// Add c * zeta^e (e arbitrary, reduced mod conductor then mod Phi).
    fn add_power(&mut self, e: u64, c: Rat) {
        let n = self.conductor;
        let phi = self.coeffs.len() as u64;
        let e = e % n;
        if e < phi {
            self.coeffs[e as usize] += c;
            return;
        }
        // reduce zeta^e modulo Phi_n: zeta^phi = -(Phi_n - x^phi) evaluated...
        // simplest: polynomial remainder of x^e by Phi_n
        let phi_n = phi_table(n);
        // x^e mod Phi: iterative reduction
        let mut poly = vec![Rat::zero(); (e + 1) as usize];
        poly[e as usize] = c;
        let red = poly_mod_phi(&poly, &phi_n);
        for (i, r) in red.into_iter().enumerate() {
            self.coeffs[i] += r;
        }
    }

    /// Lift to conductor m (self.conductor must divide m).
    pub fn lift_to(&self, m: u64) -> Cyclotomic {
        debug_assert_eq!(m % self.conductor, 0);
        if m == self.conductor {
            return self.clone();
        }
        let scale = m / self.conductor;
        let phi_m = phi_table(m);
        let mut poly = vec![Rat::zero(); ((self.coeffs.len() as u64 - 1) * scale + 1) as usize];
        for (i, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                poly[i * scale as usize] = c.clone();
            }
        }
        let red = poly_mod_phi(&poly, &phi_m);
        let mut coeffs = vec![Rat::zero(); euler_phi(m) as usize];
        for (i, r) in red.into_iter().enumerate() {
            coeffs[i] = r;
        }
        Cyclotomic {
            conductor: m,
            coeffs,
        }
    }

    fn matched(&self, other: &Cyclotomic) -> (Cyclotomic, Cyclotomic) {
        let m = num_integer::lcm(self.conductor, other.conductor);
        (self.lift_to(m), other.lift_to(m))
    }

    pub fn add(&self, other: &Cyclotomic) -> Cyclotomic {
        let (mut a, b) = self.matched(other);
        for (x, y) in a.coeffs.iter_mut().zip(b.coeffs.iter()) {
            *x += y;
        }
        a.reduce_conductor()
    }

    pub fn sub(&self, other: &Cyclotomic) -> Cyclotomic {
        let (mut a, b) = self.matched(other);
        for (x, y) in a.coeffs.iter_mut().zip(b.coeffs.iter()) {
            *x -= y;
        }
        a.reduce_conductor()
    }

    pub fn neg(&self) -> Cyclotomic {
        let mut a = self.clone();
        for c in a.coeffs.iter_mut() {
            *c = -c.clone();
        }
        a
    }

    pub fn mul(&self, other: &Cyclotomic) -> Cyclotomic {
        if self.is_zero() || other.is_zero() {
            return Cyclotomic::zero();
        }
        if self.is_rational() {
            let r = self.coeffs[0].clone();
            let mut b = other.clone();
            for c in b.coeffs.iter_mut() {
                *c *= &r;
            }
            return b.reduce_conductor();
        }
        if other.is_rational() {
            return other.mul(self);
        }
        let (a, b) = self.matched(other);
        let n = a.conductor;
        let la = a.coeffs.len();
        let lb = b.coeffs.len();
        let mut prod = vec![Rat::zero(); la + lb - 1];
        for i in 0..la {
            if a.coeffs[i].is_zero() {
                continue;
            }
            for j in 0..lb {
                if b.coeffs[j].is_zero() {
                    continue;
                }
                prod[i + j] += &a.coeffs[i] * &b.coeffs[j];
            }
        }
        let red = poly_mod_phi(&prod, &phi_table(n));
        let mut coeffs = vec![Rat::zero(); euler_phi(n) as usize];
        for (i, r) in red.into_iter().enumerate() {
            coeffs[i] = r;
        }
        (Cyclotomic {
            conductor: n,
            coeffs,
        })
        .reduce_conductor()
    }

    pub fn scale(&self, r: &Rat) -> Cyclotomic {
        let mut a = self.clone();
        for c in a.coeffs.iter_mut() {
            *c *= r;
        }
        a
    }

    /// Multiplicative inverse via the extended Euclidean algorithm in
    /// Q[x]/(Phi_n); Phi_n is irreducible over Q so any nonzero element
    /// is invertible.
    pub fn inv(&self) -> Result<Cyclotomic, CycError> {
        if self.is_zero() {
            return Err(CycError::DivisionByZero);
        }
        if let Some(r) = self.as_rational() {
            return Ok(Cyclotomic::from_rat(r.recip()));
        }
        let n = self.conductor;
        let phi_n: Vec<Rat> = phi_table(n)
            .iter()
            .map(|c| Rat::from_integer(c.clone()))
            .collect();
        // extended gcd of (self as poly, Phi_n)
        let (g, s, _) = poly_ext_gcd(&self.coeffs, &phi_n);
        // g is a nonzero constant
        debug_assert!(g.len() == 1 && !g[0].is_zero());
        let ginv = g[0].recip();
        let red = poly_mod_phi(&s, &phi_table(n));
        let mut coeffs = vec![Rat::zero(); euler_phi(n) as usize];
        for (i, r) in red.into_iter().enumerate() {
            coeffs[i] = r * &ginv;
        }
        Ok((Cyclotomic {
            conductor: n,
            coeffs,
        })
        .reduce_conductor())
    }

    /// Galois automorphism zeta -> zeta^a, gcd(a, conductor) = 1.
    pub fn galois(&self, a: u64) -> Cyclotomic {
        let n = self.conductor;
        debug_assert_eq!(num_integer::gcd(a, n), 1);
        let mut out = Cyclotomic {
            conductor: n,
            coeffs: vec![Rat::zero(); self.coeffs.len()],
        };
        for (i, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                out.add_power((i as u64 * a) % n, c.clone());
            }
        }
        out.reduce_conductor()
    }

    /// Complex conjugation (zeta -> zeta^{-1}).
    pub fn conj(&self) -> Cyclotomic {
        if self.conductor == 1 {
            return self.clone();
        }
        self.galois(self.conductor - 1)
    }

    /// Canonical form: the smallest conductor in which the element lives.
    pub fn reduce_conductor(mut self) -> Cyclotomic {
        loop {
            if self.conductor == 1 {
                return self;
            }
            if self.is_zero() {
                self.conductor = 1;
                self.coeffs = vec![Rat::zero()];
                return self;
            }
            let n = self.conductor;
            let mut reduced = false;
            for p in crate::group::prime_divisors(n) {
                let m = n / p;
                if m == 0 {
                    continue;
                }
                // element lies in Q(zeta_m) iff it is fixed by the Galois
                // automorphisms generating Gal(Q(zeta_n)/Q(zeta_m))
                if m >= 1 && self.descends_to(m) {
                    self = self.rewrite_in(m);
                    reduced = true;
                    break;
                }
            }
            if !reduced {
                return self;
            }
        }
    }

    fn descends_to(&self, m: u64) -> bool {
        let n = self.conductor;
        if n % m != 0 {
            return false;
        }
        // check fixed by all sigma_a with a = 1 mod m, gcd(a,n) = 1
        for a in 1..n {
            if a % m == 1 % m && num_integer::gcd(a, n) == 1 && a != 1 {
                if self.galois_raw(a) != *self {
                    return false;
                }
            }
        }
        true
    }

    fn galois_raw(&self, a: u64) -> Cyclotomic {
        let n = self.conductor;
        let mut out = Cyclotomic {
            conductor: n,
            coeffs: vec![Rat::zero(); self.coeffs.len()],
        };
        for (i, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                out.add_power((i as u64 * a) % n, c.clone());
            }
        }
        out
    }

    /// Rewrite in Q(zeta_m) for m | n, assuming the element descends.
    fn rewrite_in(&self, m: u64) -> Cyclotomic {
        let n = self.conductor;
        let scale = n / m;
        let phi_m = euler_phi(m) as usize;
        // Solve: sum_j x_j * lift(zeta_m^j) = self, x over Q.
        // lift(zeta_m^j) = zeta_n^(j*scale) reduced mod Phi_n.
        let dim = self.coeffs.len();
        let mut cols: Vec<Vec<Rat>> = Vec::with_capacity(phi_m);
        for j in 0..phi_m {
            let mut e = Cyclotomic {
                conductor: n,
                coeffs: vec![Rat::zero(); dim],
            };
            e.add_power((j as u64 * scale) % n, Rat::one());
            cols.push(e.coeffs);
        }
        let sol = solve_rational(&cols, &self.coeffs).expect("descends_to verified");
        Cyclotomic {
            conductor: m,
            coeffs: sol,
        }
    }

    /// Deterministic total order: by conductor, then lexicographic on
    /// coefficients.
    pub fn canonical_cmp(&self, other: &Cyclotomic) -> Ordering {
        let (a, b) = self.matched(other);
        for (x, y) in a.coeffs.iter().zip(b.coeffs.iter()) {
            match x.cmp(y) {
                Ordering::Equal => continue,
                o => return o,
            }
        }
        Ordering::Equal
    }

    /// p-adic valuation of a rational cyclotomic integer-combination test:
    /// true when all coefficient denominators are prime to p.
    pub fn denominators_prime_to(&self, p: u64) -> bool {
        let pb = BigInt::from(p);
        self.coeffs
            .iter()
            .all(|c| !(c.denom() % &pb).is_zero() || c.numer().is_zero())
    }

    /// True when all coefficients are integers.
    pub fn is_integral(&self) -> bool {
        self.coeffs
            .iter()
            .all(|c| c.denom().is_one() || c.numer().is_zero())
    }
}

impl PartialOrd for Cyclotomic {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.canonical_cmp(other))
    }
}

impl fmt::Debug for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut terms = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let t = if i == 0 {
                format!("{c}")
            } else if c.is_one() {
                format!("z{}^{i}", self.conductor)
            } else {
                format!("{c}*z{}^{i}", self.conductor)
            };
            terms.push(t);
        }
        write!(f, "{}", terms.join(" + "))
    }
}

fn phi_table(n: u64) -> Vec<BigInt> {
    static CACHE: Mutex<Option<HashMap<u64, Vec<BigInt>>>> = Mutex::new(None);
    {
        let guard = CACHE.lock().unwrap();
        if let Some(cache) = guard.as_ref() {
            if let Some(p) = cache.get(&n) {
                return p.clone();
            }
        }
    }
    let result = compute_phi(n);
    let mut guard = CACHE.lock().unwrap();
    guard
        .get_or_insert_with(HashMap::new)
        .insert(n, result.clone());
    result
}

fn compute_phi(n: u64) -> Vec<BigInt> {
    if n == 1 {
        return vec![BigInt::from(-1), BigInt::one()];
    }
    let mut num = vec![BigInt::zero(); (n + 1) as usize];
    num[0] = BigInt::from(-1);
    num[n as usize] = BigInt::one();
    let mut quot = num;
    for d in divisors(n) {
        if d == n {
            continue;
        }
        let pd = phi_table(d);
        quot = poly_div_exact(&quot, &pd);
    }
    quot
}

/// Remainder of a rational polynomial modulo the (monic, integral) Phi.
fn poly_mod_phi(poly: &[Rat], phi: &[BigInt]) -> Vec<Rat> {
    let d = phi.len() - 1;
    let mut rem: Vec<Rat> = poly.to_vec();
    while rem.len() > d {
        let top = rem.len() - 1;
        let c = rem[top].clone();
        if !c.is_zero() {
            for (k, pk) in phi.iter().enumerate() {
                let delta = &c * Rat::from_integer(pk.clone());
                let idx = top - d + k;
                rem[idx] -= delta;
            }
        }
        rem.pop();
    }
    while rem.len() < d {
        rem.push(Rat::zero());
    }
    rem
}

fn poly_trim(v: &mut Vec<Rat>) {
    while v.len() > 1 && v.last().map(|c| c.is_zero()).unwrap_or(false) {
        v.pop();
    }
}

fn poly_divmod(a: &[Rat], b: &[Rat]) -> (Vec<Rat>, Vec<Rat>) {
    let mut rem = a.to_vec();
    poly_trim(&mut rem);
    let mut bb = b.to_vec();
    poly_trim(&mut bb);
    let db = bb.len() - 1;
    let lead = bb[db].clone();
    if rem.len() <= db {
        return (vec![Rat::zero()], rem);
    }
    let mut quot = vec![Rat::zero(); rem.len() - db];
    for i in (0..quot.len()).rev() {
        let c = &rem[i + db] / &lead;
        if c.is_zero() {
            continue;
        }
        quot[i] = c.clone();
        for (k, bk) in bb.iter().enumerate() {
            let t = &c * bk;
            rem[i + k] -= t;
        }
    }
    poly_trim(&mut rem);
    (quot, rem)
}

/// Extended gcd for rational polynomials: returns (g, s, t) with
/// s*a + t*b = g.
fn poly_ext_gcd(a: &[Rat], b: &[Rat]) -> (Vec<Rat>, Vec<Rat>, Vec<Rat>) {
    let mut r0 = a.to_vec();
    let mut r1 = b.to_vec();
    poly_trim(&mut r0);
    poly_trim(&mut r1);
    let mut s0 = vec![Rat::one()];
    let mut s1 = vec![Rat::zero()];
    let mut t0 = vec![Rat::zero()];
    let mut t1 = vec![Rat::one()];
    while !(r1.len() == 1 && r1[0].is_zero()) {
        let (q, r) = poly_divmod(&r0, &r1);
        let new_s = poly_sub(&s0, &poly_mul(&q, &s1));
        let new_t = poly_sub(&t0, &poly_mul(&q, &t1));
        r0 = r1;
        r1 = r;
        s0 = s1;
        s1 = new_s;
        t0 = t1;
        t1 = new_t;
    }
    (r0, s0, t0)
}

fn poly_mul(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    let mut out = vec![Rat::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    poly_trim(&mut out);
    out
}

fn poly_sub(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    let mut out = vec![Rat::zero(); a.len().max(b.len())];
    for (i, x) in a.iter().enumerate() {
        out[i] += x;
    }
    for (i, y) in b.iter().enumerate() {
        out[i] -= y;
    }
    poly_trim(&mut out);
    out
}

/// Solve sum_j x_j cols[j] = target over Q by Gaussian elimination.
/// Returns None if inconsistent.
pub fn solve_rational(cols: &[Vec<Rat>], target: &[Rat]) -> Option<Vec<Rat>> {
    let rows = target.len();
    let ncols = cols.len();
    let mut aug: Vec<Vec<Rat>> = (0..rows)
        .map(|r| {
            let mut row: Vec<Rat> = cols.iter().map(|c| c[r].clone()).collect();
            row.push(target[r].clone());
            row
        })
        .collect();
    let mut pivot_cols = Vec::new();
    let mut prow = 0usize;
    for pc in 0..ncols {
        let mut sel = None;
        for r in prow..rows {
            if !aug[r][pc].is_zero() {
                sel = Some(r);
                break;
            }
        }
        let Some(sel) = sel else { continue };
        aug.swap(prow, sel);
        let inv = aug[prow][pc].recip();
        for c in pc..=ncols {
            aug[prow][c] = &aug[prow][c] * &inv;
        }
        for r in 0..rows {
            if r != prow && !aug[r][pc].is_zero() {
                let f = aug[r][pc].clone();
                for c in pc..=ncols {
                    let t = &f * &aug[prow][c];
                    aug[r][c] -= t;
                }
            }
        }
        pivot_cols.push(pc);
        prow += 1;
        if prow == rows {
            break;
        }
    }
    // consistency
    for r in prow..rows {
        if !aug[r][ncols].is_zero() {
            return None;
        }
    }
    let mut sol = vec![Rat::zero(); ncols];
    for (i, &pc) in pivot_cols.iter().enumerate() {
        sol[pc] = aug[i][ncols].clone();
    }
    Some(sol)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclotomic_polynomials() {
        assert_eq!(phi_table(1), vec![BigInt::from(-1), BigInt::from(1)]);
        assert_eq!(phi_table(2), vec![BigInt::from(1), BigInt::from(1)]);
        assert_eq!(
            phi_table(3),
            vec![BigInt::from(1), BigInt::from(1), BigInt::from(1)]
        );
        assert_eq!(
            phi_table(6),
            vec![BigInt::from(1), BigInt::from(-1), BigInt::from(1)]
        );
        assert_eq!(phi_table(5).len(), 5);
        assert_eq!(phi_table(12).len(), 5); // x^4 - x^2 + 1
    }

    #[test]
    fn roots_of_unity_relations() {
        let z3 = Cyclotomic::root_of_unity(3, 1);
        let z3sq = z3.mul(&z3);
        assert_eq!(z3sq, Cyclotomic::root_of_unity(3, 2));
        // 1 + z + z^2 = 0
        let s = Cyclotomic::one().add(&z3).add(&z3sq);
        assert!(s.is_zero());
        // z3^3 = 1
        assert!(z3.mul(&z3).mul(&z3).is_one());
    }

    #[test]
    fn mixed_conductor_arithmetic() {
        let z4 = Cyclotomic::root_of_unity(4, 1);
        let z3 = Cyclotomic::root_of_unity(3, 1);
        let p = z4.mul(&z3);
        assert_eq!(p, Cyclotomic::root_of_unity(12, 7));
        // conductor reduction: z12^4 = z3
        let z12_4 = Cyclotomic::root_of_unity(12, 4);
        assert_eq!(z12_4.conductor(), 3);
        assert_eq!(z12_4, z3);
    }

    #[test]
    fn inverses() {
        let z5 = Cyclotomic::root_of_unity(5, 1);
        let x = z5.add(&Cyclotomic::from_int(2));
        let xi = x.inv().unwrap();
        assert!(x.mul(&xi).is_one());
        assert_eq!(Cyclotomic::from_int(0).inv(), Err(CycError::DivisionByZero));
        // rational inverse
        assert_eq!(
            Cyclotomic::from_rat(rat(3, 4)).inv().unwrap(),
            Cyclotomic::from_rat(rat(4, 3))
        );
    }

    #[test]
    fn conjugation_and_galois() {
        let z8 = Cyclotomic::root_of_unity(8, 1);
        assert_eq!(z8.conj(), Cyclotomic::root_of_unity(8, 7));
        // sqrt(2) = z8 + z8^-1 is fixed by conjugation
        let sqrt2 = z8.add(&z8.conj());
        assert_eq!(sqrt2.conj(), sqrt2);
        assert_eq!(sqrt2.mul(&sqrt2), Cyclotomic::from_int(2));
    }

    #[test]
    fn conductor_reduction_of_sums() {
        // z5 + z5^2 + z5^3 + z5^4 = -1 reduces to conductor 1
        let mut s = Cyclotomic::zero();
        for k in 1..5 {
            s = s.add(&Cyclotomic::root_of_unity(5, k));
        }
        assert_eq!(s, Cyclotomic::from_int(-1));
        assert_eq!(s.conductor(), 1);
    }

    #[test]
    fn integrality_checks() {
        assert!(Cyclotomic::from_int(5).is_integral());
        assert!(!Cyclotomic::from_rat(rat(1, 3)).is_integral());
        assert!(Cyclotomic::root_of_unity(7, 3).is_integral());
        assert!(Cyclotomic::from_rat(rat(1, 3)).denominators_prime_to(5));
        assert!(!Cyclotomic::from_rat(rat(1, 3)).denominators_prime_to(3));
    }
}
