//! Truncated p-adic arithmetic: the residue ring Z/p^k, the quotient
//! ring (Z/p^k)[x]/(Phi_e(x)) used for character-coordinate lattices,
//! and Howell normal forms for submodules of free Z/p^k-modules.
//!
//! Everything here is a ring-homomorphic image of exact integer
//! arithmetic: computing over Z and reducing agrees with computing mod
//! p^k throughout.

use crate::cyclotomic::{euler_phi, Cyclotomic};
use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Zero};
use std::sync::Arc;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ZmodError {
    #[error("element {0} is not invertible mod p^k")]
    NotInvertible(String),
    #[error("denominator divisible by p = {0}; value does not reduce mod p^k")]
    BadDenominator(u64),
    #[error("conductor {found} does not divide the ring conductor {ring}")]
    ConductorMismatch { ring: u64, found: u64 },
}

/// Context for Z/p^k.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ZCtx {
    pub p: u64,
    pub k: u32,
    pub modulus: BigUint,
}

impl ZCtx {
    pub fn new(p: u64, k: u32) -> Arc<ZCtx> {
        Arc::new(ZCtx {
            p,
            k,
            modulus: BigUint::from(p).pow(k),
        })
    }

    pub fn reduce_int(&self, x: &BigInt) -> BigUint {
        let m = BigInt::from_biguint(Sign::Plus, self.modulus.clone());
        let r = x.mod_floor(&m);
        r.to_biguint().expect("non-negative after mod_floor")
    }

    pub fn reduce_u(&self, x: &BigUint) -> BigUint {
        x % &self.modulus
    }

    pub fn add(&self, a: &BigUint, b: &BigUint) -> BigUint {
        (a + b) % &self.modulus
    }

    pub fn sub(&self, a: &BigUint, b: &BigUint) -> BigUint {
        ((a + &self.modulus) - (b % &self.modulus)) % &self.modulus
    }

    pub fn neg(&self, a: &BigUint) -> BigUint {
        let a = a % &self.modulus;
        if a.is_zero() {
            BigUint::zero()
        } else {
            &self.modulus - a
        }
    }

    pub fn mul(&self, a: &BigUint, b: &BigUint) -> BigUint {
        (a * b) % &self.modulus
    }

    /// p-adic valuation of a residue, capped at k for 0.
    pub fn val(&self, a: &BigUint) -> u32 {
        if a.is_zero() {
            return self.k;
        }
        let p = BigUint::from(self.p);
        let mut v = 0u32;
        let mut x = a.clone();
        while (&x % &p).is_zero() {
            x /= &p;
            v += 1;
        }
        v
    }

    /// Unit part: a / p^val(a).
    pub fn unit_part(&self, a: &BigUint) -> BigUint {
        if a.is_zero() {
            return BigUint::one();
        }
        let p = BigUint::from(self.p);
        let mut x = a.clone();
        while (&x % &p).is_zero() {
            x /= &p;
        }
        x
    }

    /// Inverse of a unit (extended Euclid); errors when p | a.
    pub fn inv(&self, a: &BigUint) -> Result<BigUint, ZmodError> {
        let a_int = BigInt::from_biguint(Sign::Plus, a % &self.modulus);
        let m_int = BigInt::from_biguint(Sign::Plus, self.modulus.clone());
        let eg = a_int.extended_gcd(&m_int);
        if !eg.gcd.is_one() {
            return Err(ZmodError::NotInvertible(a.to_string()));
        }
        Ok(self.reduce_int(&eg.x))
    }

    /// Reduce an exact rational; errors when the denominator is divisible
    /// by p.
    pub fn reduce_rat(&self, r: &num_rational::BigRational) -> Result<BigUint, ZmodError> {
        if r.numer().is_zero() {
            return Ok(BigUint::zero());
        }
        let den = r.denom().to_biguint().expect("positive denominator");
        let dinv = self
            .inv(&(&den % &self.modulus))
            .map_err(|_| ZmodError::BadDenominator(self.p))?;
        Ok(self.mul(&self.reduce_int(r.numer()), &dinv))
    }

    /// Centered integer lift in (-p^k/2, p^k/2].
    pub fn lift_centered(&self, a: &BigUint) -> BigInt {
        let half = &self.modulus / 2u32;
        let a = a % &self.modulus;
        if a > half {
            BigInt::from_biguint(Sign::Plus, a)
                - BigInt::from_biguint(Sign::Plus, self.modulus.clone())
        } else {
            BigInt::from_biguint(Sign::Plus, a)
        }
    }
}

// ---------------------------------------------------------------------------
// (Z/p^k)[x]/(Phi_e)
// ---------------------------------------------------------------------------

/// The quotient ring (Z/p^k)[x] / (Phi_e(x)); character coordinates of
/// center elements live here.
#[derive(Debug, Clone)]
pub struct CycModCtx {
    pub z: Arc<ZCtx>,
    pub e: u64,
    pub dim: usize,
    /// Phi_e coefficients mod p^k, below the leading (monic) term
    phi: Vec<BigUint>,
}

impl CycModCtx {
    pub fn new(z: Arc<ZCtx>, e: u64) -> Arc<CycModCtx> {
        let dim = euler_phi(e) as usize;
        let phi_int = phi_coeffs(e);
        let phi = phi_int.iter().take(dim).map(|c| z.reduce_int(c)).collect();
        Arc::new(CycModCtx { z, e, dim, phi })
    }

    pub fn zero(&self) -> Vec<BigUint> {
        vec![BigUint::zero(); self.dim]
    }

    pub fn one(&self) -> Vec<BigUint> {
        let mut v = self.zero();
        v[0] = BigUint::one();
        v
    }

    pub fn is_zero(&self, a: &[BigUint]) -> bool {
        a.iter().all(|c| c.is_zero())
    }

    pub fn add(&self, a: &[BigUint], b: &[BigUint]) -> Vec<BigUint> {
        a.iter().zip(b).map(|(x, y)| self.z.add(x, y)).collect()
    }

    pub fn sub(&self, a: &[BigUint], b: &[BigUint]) -> Vec<BigUint> {
        a.iter().zip(b).map(|(x, y)| self.z.sub(x, y)).collect()
    }

    pub fn neg(&self, a: &[BigUint]) -> Vec<BigUint> {
        a.iter().map(|x| self.z.neg(x)).collect()
    }

    pub fn scale(&self, a: &[BigUint], c: &BigUint) -> Vec<BigUint> {
        a.iter().map(|x| self.z.mul(x, c)).collect()
    }

    pub fn mul(&self, a: &[BigUint], b: &[BigUint]) -> Vec<BigUint> {
        let mut prod = vec![BigUint::zero(); 2 * self.dim];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if y.is_zero() {
                    continue;
                }
                let t = self.z.mul(x, y);
                prod[i + j] = self.z.add(&prod[i + j], &t);
            }
        }
        for top in (self.dim..prod.len()).rev() {
            let c = prod[top].clone();
            if c.is_zero() {
                continue;
            }
            prod[top] = BigUint::zero();
            for (k, pk) in self.phi.iter().enumerate() {
                let t = self.z.mul(&c, pk);
                let idx = top - self.dim + k;
                prod[idx] = self.z.sub(&prod[idx], &t);
            }
        }
        prod.truncate(self.dim);
        prod
    }

    /// Reduce an exact cyclotomic number; its (minimal) conductor must
    /// divide e and coefficient denominators must be prime to p.
    pub fn reduce_cyclotomic(&self, c: &Cyclotomic) -> Result<Vec<BigUint>, ZmodError> {
        let c = c.clone().reduce_conductor();
        if self.e % c.conductor() != 0 {
            return Err(ZmodError::ConductorMismatch {
                ring: self.e,
                found: c.conductor(),
            });
        }
        let lifted = c.lift_to(self.e);
        let mut out = self.zero();
        for (i, r) in lifted.coeffs().iter().enumerate() {
            out[i] = self.z.reduce_rat(r)?;
        }
        Ok(out)
    }

    /// Inverse, solving a*x = 1 as a Z/p^k-linear system.
    pub fn inv(&self, a: &[BigUint]) -> Result<Vec<BigUint>, ZmodError> {
        let n = self.dim;
        let mut cols = Vec::with_capacity(n);
        let mut cur = a.to_vec();
        for _ in 0..n {
            cols.push(cur.clone());
            cur = self.mul_by_x(&cur);
        }
        let target = self.one();
        solve_lin(&self.z, &cols, &target).ok_or_else(|| ZmodError::NotInvertible(format!("{a:?}")))
    }

    fn mul_by_x(&self, a: &[BigUint]) -> Vec<BigUint> {
        let n = self.dim;
        let mut shifted = vec![BigUint::zero(); n + 1];
        for (i, c) in a.iter().enumerate() {
            shifted[i + 1] = c.clone();
        }
        let top = shifted[n].clone();
        if !top.is_zero() {
            for (k, pk) in self.phi.iter().enumerate() {
                let t = self.z.mul(&top, pk);
                shifted[k] = self.z.sub(&shifted[k], &t);
            }
        }
        shifted.truncate(n);
        shifted
    }
}

/// Integer coefficients of Phi_e (low degree first, monic).
pub fn phi_coeffs(e: u64) -> Vec<BigInt> {
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
    fn phi_rec(n: u64, cache: &mut std::collections::HashMap<u64, Vec<BigInt>>) -> Vec<BigInt> {
        if let Some(p) = cache.get(&n) {
            return p.clone();
        }
        let result = if n == 1 {
            vec![BigInt::from(-1), BigInt::one()]
        } else {
            let mut quot = vec![BigInt::zero(); (n + 1) as usize];
            quot[0] = BigInt::from(-1);
            quot[n as usize] = BigInt::one();
            for d in divisors(n) {
                if d == n {
                    continue;
                }
                let pd = phi_rec(d, cache);
                quot = int_poly_div_exact(&quot, &pd);
            }
            quot
        };
        cache.insert(n, result.clone());
        result
    }
    let mut cache = std::collections::HashMap::new();
    phi_rec(e, &mut cache)
}

fn int_poly_div_exact(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
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

/// Solve sum_j x_j cols[j] = target over Z/p^k.  Returns one solution if
/// any exists.
pub fn solve_lin(z: &ZCtx, cols: &[Vec<BigUint>], target: &[BigUint]) -> Option<Vec<BigUint>> {
    let ncols = cols.len();
    let nrows = target.len();
    let mut rows: Vec<Vec<BigUint>> = Vec::with_capacity(ncols);
    for (j, col) in cols.iter().enumerate() {
        let mut r = col.clone();
        r.extend(vec![BigUint::zero(); ncols]);
        r[nrows + j] = BigUint::one();
        rows.push(r);
    }
    let h = HowellForm::new(z.clone(), nrows + ncols, rows);
    let mut v: Vec<BigUint> = target.to_vec();
    v.extend(vec![BigUint::zero(); ncols]);
    for row in &h.rows {
        let Some(pc) = leading(&row.data) else {
            continue;
        };
        if pc >= nrows {
            continue;
        }
        if v[pc].is_zero() {
            continue;
        }
        let pv = z.val(&row.data[pc]);
        let cv = z.val(&v[pc]);
        if cv < pv {
            return None;
        }
        let q = {
            let unit = z.unit_part(&v[pc]);
            let pdiff = BigUint::from(z.p).pow(cv - pv);
            let pivu = z.unit_part(&row.data[pc]);
            z.mul(&z.mul(&unit, &z.inv(&pivu).ok()?), &pdiff)
        };
        for i in 0..v.len() {
            let t = z.mul(&q, &row.data[i]);
            v[i] = z.sub(&v[i], &t);
        }
    }
    if v[..nrows].iter().all(|x| x.is_zero()) {
        Some((0..ncols).map(|j| z.neg(&v[nrows + j])).collect())
    } else {
        None
    }
}

fn leading(v: &[BigUint]) -> Option<usize> {
    v.iter().position(|x| !x.is_zero())
}

// ---------------------------------------------------------------------------
// Howell normal form
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HowellRow {
    pub data: Vec<BigUint>,
}

/// Canonical Howell form of a submodule of (Z/p^k)^n.  Two submodules are
/// equal iff their Howell forms are identical; membership is decidable by
/// greedy reduction against the pivots.
#[derive(Debug, Clone)]
pub struct HowellForm {
    pub z: ZCtx,
    pub n: usize,
    pub rows: Vec<HowellRow>,
}

impl PartialEq for HowellForm {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.rows == other.rows && self.z == other.z
    }
}

impl HowellForm {
    pub fn new(z: ZCtx, n: usize, generators: Vec<Vec<BigUint>>) -> HowellForm {
        let mut work: Vec<Vec<BigUint>> = generators
            .into_iter()
            .map(|mut v| {
                for x in v.iter_mut() {
                    *x = z.reduce_u(x);
                }
                v
            })
            .filter(|v| v.iter().any(|x| !x.is_zero()))
            .collect();
        let mut finished: Vec<Vec<BigUint>> = Vec::new();
        for col in 0..n {
            let mut at_col: Vec<Vec<BigUint>> = Vec::new();
            let mut rest: Vec<Vec<BigUint>> = Vec::new();
            for v in work.into_iter() {
                match leading(&v) {
                    Some(c) if c == col => at_col.push(v),
                    Some(_) => rest.push(v),
                    None => {}
                }
            }
            work = rest;
            if at_col.is_empty() {
                continue;
            }
            let piv_idx = at_col
                .iter()
                .enumerate()
                .min_by_key(|(_, v)| z.val(&v[col]))
                .map(|(i, _)| i)
                .unwrap();
            let mut pivot = at_col.swap_remove(piv_idx);
            let v = z.val(&pivot[col]);
            let uinv = z.inv(&z.unit_part(&pivot[col])).expect("unit part");
            for x in pivot.iter_mut() {
                *x = z.mul(x, &uinv);
            }
            for mut r in at_col.into_iter() {
                let rv = z.val(&r[col]);
                debug_assert!(rv >= v);
                let q = z.mul(&z.unit_part(&r[col]), &BigUint::from(z.p).pow(rv - v));
                for i in 0..n {
                    let t = z.mul(&q, &pivot[i]);
                    r[i] = z.sub(&r[i], &t);
                }
                if r.iter().any(|x| !x.is_zero()) {
                    work.push(r);
                }
            }
            if v > 0 {
                let shadow_mult = BigUint::from(z.p).pow(z.k - v);
                let shadow: Vec<BigUint> = pivot.iter().map(|x| z.mul(x, &shadow_mult)).collect();
                if shadow.iter().any(|x| !x.is_zero()) {
                    work.push(shadow);
                }
            }
            finished.push(pivot);
        }
        // canonical reduction of entries above each pivot, in increasing
        // pivot-column order: each step only touches columns right of its
        // pivot, so earlier normalisations stay intact
        for i in 0..finished.len() {
            let pc = leading(&finished[i]).unwrap();
            let pval = z.val(&finished[i][pc]);
            let pmod = BigUint::from(z.p).pow(pval);
            for j in 0..i {
                let cur = finished[j][pc].clone();
                let q = &cur / &pmod;
                if q.is_zero() {
                    continue;
                }
                for cidx in 0..n {
                    let t = z.mul(&q, &finished[i][cidx]);
                    finished[j][cidx] = z.sub(&finished[j][cidx], &t);
                }
            }
        }
        HowellForm {
            z,
            n,
            rows: finished
                .into_iter()
                .map(|data| HowellRow { data })
                .collect(),
        }
    }

    pub fn contains(&self, v: &[BigUint]) -> bool {
        let z = &self.z;
        let mut v: Vec<BigUint> = v.iter().map(|x| z.reduce_u(x)).collect();
        for row in &self.rows {
            let pc = leading(&row.data).unwrap();
            if v[pc].is_zero() {
                continue;
            }
            let pv = z.val(&row.data[pc]);
            let cv = z.val(&v[pc]);
            if cv < pv {
                return false;
            }
            let q = z.mul(&z.unit_part(&v[pc]), &BigUint::from(z.p).pow(cv - pv));
            for i in 0..self.n {
                let t = z.mul(&q, &row.data[i]);
                v[i] = z.sub(&v[i], &t);
            }
        }
        v.iter().all(|x| x.is_zero())
    }

    pub fn contains_all(&self, other: &HowellForm) -> bool {
        other.rows.iter().all(|r| self.contains(&r.data))
    }

    pub fn is_zero(&self) -> bool {
        self.rows.is_empty()
    }

    /// Regenerate at lower precision (k' <= k).
    pub fn reduce_precision(&self, z2: ZCtx) -> HowellForm {
        assert!(z2.k <= self.z.k && z2.p == self.z.p);
        let gens = self
            .rows
            .iter()
            .map(|r| r.data.iter().map(|x| z2.reduce_u(x)).collect())
            .collect();
        HowellForm::new(z2, self.n, gens)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    fn b(x: u64) -> BigUint {
        BigUint::from(x)
    }

    #[test]
    fn zmod_basics() {
        let z = ZCtx::new(3, 4); // mod 81
        assert_eq!(z.add(&b(80), &b(2)), b(1));
        assert_eq!(z.val(&b(54)), 3); // 54 = 2 * 27
        assert_eq!(z.unit_part(&b(54)), b(2));
        assert_eq!(z.mul(&z.inv(&b(2)).unwrap(), &b(2)), b(1));
        assert!(z.inv(&b(3)).is_err());
        let r = BigRational::new(BigInt::from(1), BigInt::from(2));
        let half = z.reduce_rat(&r).unwrap();
        assert_eq!(z.mul(&half, &b(2)), b(1));
        assert!(z
            .reduce_rat(&BigRational::new(BigInt::from(1), BigInt::from(3)))
            .is_err());
        assert_eq!(z.lift_centered(&b(80)), BigInt::from(-1));
    }

    #[test]
    fn howell_canonical_and_membership() {
        let z = ZCtx::new(3, 3); // mod 27
        let h = HowellForm::new((*z).clone(), 2, vec![vec![b(3), b(1)], vec![b(0), b(9)]]);
        assert!(h.contains(&[b(3), b(1)]));
        assert!(h.contains(&[b(6), b(2)]));
        assert!(h.contains(&[b(0), b(9)]));
        assert!(h.contains(&[b(3), b(10)]));
        assert!(!h.contains(&[b(1), b(0)]));
        assert!(h.contains(&[b(9), b(3)]));

        // generator presentation must not matter
        let h2 = HowellForm::new(
            (*z).clone(),
            2,
            vec![vec![b(0), b(9)], vec![b(6), b(2)], vec![b(3), b(10)]],
        );
        assert_eq!(h, h2);
    }

    #[test]
    fn howell_detects_containment() {
        let z = ZCtx::new(3, 4);
        let big = HowellForm::new((*z).clone(), 1, vec![vec![b(3)]]);
        let small = HowellForm::new((*z).clone(), 1, vec![vec![b(9)]]);
        assert!(big.contains_all(&small));
        assert!(!small.contains_all(&big));
    }

    #[test]
    fn howell_precision_reduction() {
        let z40 = ZCtx::new(3, 8);
        let z20 = ZCtx::new(3, 4);
        let gens = vec![vec![BigUint::from(3u32), BigUint::from(7u32)]];
        let h40 = HowellForm::new((*z40).clone(), 2, gens.clone());
        let h20a = h40.reduce_precision((*z20).clone());
        let h20b = HowellForm::new(
            (*z20).clone(),
            2,
            gens.iter()
                .map(|v| v.iter().map(|x| z20.reduce_u(x)).collect())
                .collect(),
        );
        assert_eq!(h20a, h20b);
    }

    #[test]
    fn cyc_mod_ring() {
        let z = ZCtx::new(3, 20);
        let r = CycModCtx::new(z.clone(), 6); // Phi_6 = x^2 - x + 1
        assert_eq!(r.dim, 2);
        let x = vec![b(0), b(1)]; // zeta_6
        let mut acc = r.one();
        for _ in 0..6 {
            acc = r.mul(&acc, &x);
        }
        assert_eq!(acc, r.one());
        let xi = r.inv(&x).unwrap();
        assert_eq!(r.mul(&x, &xi), r.one());
        let z6 = Cyclotomic::root_of_unity(6, 1);
        assert_eq!(r.reduce_cyclotomic(&z6).unwrap(), x);
        let z3 = Cyclotomic::root_of_unity(3, 1);
        assert_eq!(r.reduce_cyclotomic(&z3).unwrap(), r.mul(&x, &x));
        assert!(r
            .reduce_cyclotomic(&Cyclotomic::root_of_unity(4, 1))
            .is_err());
    }

    #[test]
    fn solve_linear_systems() {
        let z = ZCtx::new(3, 3);
        let sol = solve_lin(&z, &[vec![b(2)], vec![b(3)]], &[b(1)]).unwrap();
        let got = z.add(&z.mul(&sol[0], &b(2)), &z.mul(&sol[1], &b(3)));
        assert_eq!(got, b(1));
        assert!(solve_lin(&z, &[vec![b(3)]], &[b(1)]).is_none());
        let s = solve_lin(&z, &[vec![b(3)]], &[b(6)]).unwrap();
        assert_eq!(z.mul(&s[0], &b(3)), b(6));
    }
}
