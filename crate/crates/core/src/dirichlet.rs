//! Dirichlet characters with exact cyclotomic values, Kronecker symbols,
//! and the generalised Bernoulli evaluation of L(0, chi) for odd
//! primitive characters.

use crate::cyclotomic::{rat, Cyclotomic};
use num_integer::Integer;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum DirichletError {
    #[error("value list length {got} != modulus {modulus}")]
    WrongLength { modulus: u64, got: usize },
    #[error("character is not multiplicative at ({a}, {b})")]
    NotMultiplicative { a: u64, b: u64 },
    #[error("chi(1) != 1")]
    NotNormalised,
    #[error("nonzero value at non-unit {0}")]
    NonUnitValue(u64),
    #[error("zero value at unit {0}")]
    UnitValueZero(u64),
    #[error("character is even; L(0, chi) evaluation requires an odd character")]
    EvenCharacter,
    #[error("character mod {modulus} is imprimitive (conductor {conductor})")]
    Imprimitive { modulus: u64, conductor: u64 },
    #[error("{0} is not a valid discriminant input")]
    BadDiscriminant(i64),
    #[error("{0} is not an odd prime")]
    NotOddPrime(u64),
}

/// A Dirichlet character mod f with exact cyclotomic values
/// (`values[a]` is chi(a), zero off the unit group).
#[derive(Debug, Clone, PartialEq)]
pub struct DirichletCharacter {
    pub modulus: u64,
    pub values: Vec<Cyclotomic>,
}

impl DirichletCharacter {
    pub fn new(modulus: u64, values: Vec<Cyclotomic>) -> Result<Self, DirichletError> {
        if values.len() != modulus as usize {
            return Err(DirichletError::WrongLength {
                modulus,
                got: values.len(),
            });
        }
        let chi = DirichletCharacter { modulus, values };
        chi.validate()?;
        Ok(chi)
    }

    fn validate(&self) -> Result<(), DirichletError> {
        let f = self.modulus;
        for a in 0..f {
            let unit = if a == 0 { f == 1 } else { f.gcd(&a) == 1 };
            let v = &self.values[a as usize];
            if unit && v.is_zero() {
                return Err(DirichletError::UnitValueZero(a));
            }
            if !unit && !v.is_zero() {
                return Err(DirichletError::NonUnitValue(a));
            }
        }
        if f > 1 && !self.values[1].is_one() {
            return Err(DirichletError::NotNormalised);
        }
        for a in 1..f {
            if f.gcd(&a) != 1 {
                continue;
            }
            for b in a..f {
                if f.gcd(&b) != 1 {
                    continue;
                }
                let ab = (a * b) % f;
                let lhs = self.values[a as usize].mul(&self.values[b as usize]);
                if lhs != self.values[ab as usize] {
                    return Err(DirichletError::NotMultiplicative { a, b });
                }
            }
        }
        Ok(())
    }

    pub fn value(&self, a: u64) -> &Cyclotomic {
        &self.values[(a % self.modulus.max(1)) as usize]
    }

    /// chi(-1) = -1.
    pub fn is_odd(&self) -> bool {
        if self.modulus <= 2 {
            return false;
        }
        self.values[(self.modulus - 1) as usize] == Cyclotomic::from_int(-1)
    }

    /// Smallest f' | f through which the character factors.
    pub fn conductor(&self) -> u64 {
        let f = self.modulus;
        let mut divisors: Vec<u64> = (1..=f).filter(|d| f % d == 0).collect();
        divisors.sort_unstable();
        'outer: for &fp in &divisors {
            for a in 1..f {
                if f.gcd(&a) != 1 {
                    continue;
                }
                for b in 1..f {
                    if f.gcd(&b) != 1 || a % fp != b % fp {
                        continue;
                    }
                    if self.values[a as usize] != self.values[b as usize] {
                        continue 'outer;
                    }
                }
            }
            return fp;
        }
        f
    }

    pub fn is_primitive(&self) -> bool {
        self.conductor() == self.modulus
    }

    /// The quadratic character attached to a fundamental discriminant,
    /// via the Kronecker symbol.
    pub fn kronecker(d: i64) -> Result<Self, DirichletError> {
        if d == 0 || d == 1 {
            return Err(DirichletError::BadDiscriminant(d));
        }
        let f = d.unsigned_abs();
        let values = (0..f)
            .map(|a| Cyclotomic::from_int(kronecker_symbol(d, a as i64)))
            .collect();
        DirichletCharacter::new(f, values)
    }

    /// The Teichmuller character mod an odd prime p: values in mu_{p-1},
    /// pinned by a fixed primitive root so that the value at a reduces to
    /// a mod p under the corresponding residue map.
    pub fn teichmuller(p: u64) -> Result<Self, DirichletError> {
        if p < 3 || !crate::group::is_prime(p) {
            return Err(DirichletError::NotOddPrime(p));
        }
        let g = crate::group::primitive_root(p);
        let mut dlog = vec![0u64; p as usize];
        let mut cur = 1u64;
        for k in 0..(p - 1) {
            dlog[cur as usize] = k;
            cur = cur * g % p;
        }
        let values = (0..p)
            .map(|a| {
                if a == 0 {
                    Cyclotomic::zero()
                } else {
                    Cyclotomic::root_of_unity(p - 1, dlog[a as usize] as i64)
                }
            })
            .collect();
        DirichletCharacter::new(p, values)
    }
}

/// L(0, chi) = -B_{1,chi} = -(1/f) sum_{a=1}^{f} chi(a) a, for odd
/// primitive chi.
pub fn bernoulli_l0(chi: &DirichletCharacter) -> Result<Cyclotomic, DirichletError> {
    if !chi.is_odd() {
        return Err(DirichletError::EvenCharacter);
    }
    let cond = chi.conductor();
    if cond != chi.modulus {
        return Err(DirichletError::Imprimitive {
            modulus: chi.modulus,
            conductor: cond,
        });
    }
    let f = chi.modulus;
    let mut acc = Cyclotomic::zero();
    for a in 1..=f {
        let v = chi.value(a % f);
        if !v.is_zero() {
            acc = acc.add(&v.scale(&rat(a as i64, 1)));
        }
    }
    Ok(acc.scale(&rat(-1, f as i64)))
}

/// Kronecker symbol (d | n), extending the Jacobi symbol.
pub fn kronecker_symbol(d: i64, n: i64) -> i64 {
    if n == 0 {
        return if d == 1 || d == -1 { 1 } else { 0 };
    }
    let mut result = 1i64;
    let mut n = n;
    if n < 0 {
        n = -n;
        if d < 0 {
            result = -result;
        }
    }
    while n % 2 == 0 {
        n /= 2;
        if d % 2 == 0 {
            return 0;
        }
        let dm8 = d.rem_euclid(8);
        if dm8 == 3 || dm8 == 5 {
            result = -result;
        }
    }
    if n == 1 {
        return result;
    }
    result * jacobi_symbol(d, n as u64)
}

/// Jacobi symbol (a | n) for odd n > 0.
fn jacobi_symbol(a: i64, n: u64) -> i64 {
    let mut a = a.rem_euclid(n as i64) as u64;
    let mut n = n;
    let mut result = 1i64;
    while a != 0 {
        while a % 2 == 0 {
            a /= 2;
            let nm8 = n % 8;
            if nm8 == 3 || nm8 == 5 {
                result = -result;
            }
        }
        std::mem::swap(&mut a, &mut n);
        if a % 4 == 3 && n % 4 == 3 {
            result = -result;
        }
        a %= n;
    }
    if n == 1 {
        result
    } else {
        0
    }
}

/// Number of roots of unity in Q(sqrt(d)) for d < 0.
pub fn quadratic_w(d: i64) -> u64 {
    match d {
        -3 => 6,
        -4 => 4,
        _ => 2,
    }
}
