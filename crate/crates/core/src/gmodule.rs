//! Finite abelian groups with G-action, given by invariant factors and
//! action matrices for the group generators.  These carry the ray-class
//! and class-group data the conjecture checks act on.

use crate::group::{ElemId, FiniteGroup};
use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GModuleError {
    #[error("invariant factors must each divide the next")]
    BadInvariants,
    #[error("need one action matrix per group generator, got {got}, expected {expected}")]
    WrongActionCount { got: usize, expected: usize },
    #[error("action matrix {0} has wrong shape")]
    BadShape(usize),
    #[error(
        "action matrices do not satisfy the group relations (generator {gen}, element {elem})"
    )]
    NotAnAction { gen: usize, elem: ElemId },
    #[error("action matrix {0} is not invertible on the module")]
    NotInvertible(usize),
    #[error("matrix row {row} is incompatible with the invariant factors")]
    NotWellDefined { row: usize },
}

/// A finite abelian group Z/d_1 x ... x Z/d_s (d_1 | d_2 | ... | d_s)
/// with a left action of a finite group, stored as one matrix per group
/// element (column-vector convention: (A v)_i = sum_j A_ij v_j mod d_i).
#[derive(Debug, Clone)]
pub struct GModule {
    pub invariants: Vec<BigUint>,
    /// action matrix per element id of the parent group
    pub action: Vec<Vec<Vec<BigUint>>>,
    pub label: Option<String>,
}

/// JSON shape for module ingestion.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GModuleInput {
    pub invariants: Vec<u64>,
    /// one matrix (rows of integers) per group generator
    pub generator_actions: Vec<Vec<Vec<i64>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
}

impl GModule {
    pub fn rank(&self) -> usize {
        self.invariants.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.invariants.is_empty()
    }

    /// Exponent of the underlying abelian group (largest invariant).
    pub fn exponent(&self) -> BigUint {
        self.invariants.last().cloned().unwrap_or_else(BigUint::one)
    }

    /// Build from input, verifying well-definedness, the group relations,
    /// and invertibility of the generator actions.
    pub fn from_input(g: &FiniteGroup, input: &GModuleInput) -> Result<GModule, GModuleError> {
        let invariants: Vec<BigUint> = input.invariants.iter().map(|&d| BigUint::from(d)).collect();
        for w in invariants.windows(2) {
            if !(&w[1] % &w[0]).is_zero() {
                return Err(GModuleError::BadInvariants);
            }
        }
        if invariants.iter().any(|d| d <= &BigUint::one()) {
            return Err(GModuleError::BadInvariants);
        }
        let gen_ids = g.generator_ids();
        if input.generator_actions.len() != gen_ids.len() {
            return Err(GModuleError::WrongActionCount {
                got: input.generator_actions.len(),
                expected: gen_ids.len(),
            });
        }
        let s = invariants.len();
        let mut gen_mats = Vec::new();
        for (gi, rows) in input.generator_actions.iter().enumerate() {
            if rows.len() != s || rows.iter().any(|r| r.len() != s) {
                return Err(GModuleError::BadShape(gi));
            }
            let m: Vec<Vec<BigUint>> = rows
                .iter()
                .enumerate()
                .map(|(i, r)| {
                    r.iter()
                        .map(|&x| reduce_mod(&BigInt::from(x), &invariants[i]))
                        .collect()
                })
                .collect();
            check_well_defined(&m, &invariants)
                .map_err(|row| GModuleError::NotWellDefined { row })?;
            gen_mats.push(m);
        }
        // propagate to all elements along BFS words
        let mut action: Vec<Option<Vec<Vec<BigUint>>>> = vec![None; g.order()];
        action[0] = Some(identity_matrix(&invariants));
        // elements in BFS order have their parents defined earlier
        for e in 0..g.order() {
            if action[e].is_some() {
                continue;
            }
            let word = g.generator_word(e);
            // word: leftmost applied last; e = gen[w0] * gen[w1] * ... * id
            let mut m = identity_matrix(&invariants);
            for &gi in word.iter().rev() {
                m = mat_mul(&gen_mats[gi], &m, &invariants);
            }
            action[e] = Some(m);
        }
        let action: Vec<_> = action.into_iter().map(|m| m.unwrap()).collect();
        let module = GModule {
            invariants,
            action,
            label: input.label.clone(),
        };
        // verify the homomorphism property: A_{g} A_{h} = A_{gh} for
        // generators g against all h
        for (gi, &gid) in gen_ids.iter().enumerate() {
            for h in 0..g.order() {
                let lhs = mat_mul(&module.action[gid], &module.action[h], &module.invariants);
                let rhs = &module.action[g.mul(gid, h)];
                if &lhs != rhs {
                    return Err(GModuleError::NotAnAction { gen: gi, elem: h });
                }
            }
            // invertibility: A_g A_{g^{-1}} = 1
            let inv = &module.action[g.inv(gid)];
            if mat_mul(&module.action[gid], inv, &module.invariants)
                != identity_matrix(&module.invariants)
            {
                return Err(GModuleError::NotInvertible(gi));
            }
        }
        Ok(module)
    }

    /// Trivial module (0).
    pub fn zero(g: &FiniteGroup) -> GModule {
        let _ = g;
        GModule {
            invariants: vec![],
            action: vec![],
            label: Some("0".into()),
        }
    }

    /// Apply the action of a group element to a vector.
    pub fn act(&self, e: ElemId, v: &[BigUint]) -> Vec<BigUint> {
        if self.is_trivial() {
            return vec![];
        }
        mat_apply(&self.action[e], v, &self.invariants)
    }

    /// Apply an integer linear combination sum_g c_g g to a vector.
    pub fn act_linear(&self, coeffs: &[(ElemId, BigInt)], v: &[BigUint]) -> Vec<BigUint> {
        let s = self.rank();
        let mut acc = vec![BigUint::zero(); s];
        for (e, c) in coeffs {
            if c.is_zero() {
                continue;
            }
            let av = self.act(*e, v);
            for i in 0..s {
                let term = reduce_mod(&(BigInt::from(av[i].clone()) * c), &self.invariants[i]);
                acc[i] = (&acc[i] + &term) % &self.invariants[i];
            }
        }
        acc
    }

    /// All elements of the module (for exhaustive annihilation checks on
    /// small modules use the standard generators instead; annihilation of
    /// generators suffices for module annihilation by linearity of the
    /// central action).
    pub fn standard_generators(&self) -> Vec<Vec<BigUint>> {
        (0..self.rank())
            .map(|i| {
                let mut v = vec![BigUint::zero(); self.rank()];
                v[i] = BigUint::one();
                v
            })
            .collect()
    }

    /// True when j acts as -1.
    pub fn j_acts_as_minus_one(&self, j: ElemId) -> bool {
        if self.is_trivial() {
            return true;
        }
        let m = &self.action[j];
        for i in 0..self.rank() {
            for jj in 0..self.rank() {
                let expect = if i == jj {
                    (&self.invariants[i] - BigUint::one()) % &self.invariants[i]
                } else {
                    BigUint::zero()
                };
                if m[i][jj] != expect {
                    return false;
                }
            }
        }
        true
    }

    /// p-part of the module: p-parts of the invariant factors with the
    /// same action matrices reduced accordingly (rows with trivial p-part
    /// are dropped).
    pub fn p_part(&self, p: u64) -> GModule {
        let pb = BigUint::from(p);
        let mut keep = Vec::new();
        let mut new_inv = Vec::new();
        for (i, d) in self.invariants.iter().enumerate() {
            let mut pp = BigUint::one();
            let mut m = d.clone();
            while (&m % &pb).is_zero() {
                pp *= &pb;
                m /= &pb;
            }
            if pp > BigUint::one() {
                keep.push(i);
                new_inv.push(pp);
            }
        }
        // CRT is functorial: the induced map on p-parts is entrywise
        // reduction mod p^{v_i}
        let action = self
            .action
            .iter()
            .map(|mat| {
                keep.iter()
                    .enumerate()
                    .map(|(ni, &i)| keep.iter().map(|&jj| &mat[i][jj] % &new_inv[ni]).collect())
                    .collect()
            })
            .collect();
        GModule {
            invariants: new_inv,
            action,
            label: self.label.clone(),
        }
    }

    /// Pontryagin dual with the contragredient action
    /// (g f)(m) = f(g^{-1} m): entries c_ij = d_i A'_{ji} / d_j for
    /// A' = action of g^{-1} (always integral).
    pub fn dual(&self, g: &FiniteGroup) -> GModule {
        let s = self.rank();
        let action = (0..self.action.len())
            .map(|e| {
                let ainv = &self.action[g.inv(e)];
                (0..s)
                    .map(|i| {
                        (0..s)
                            .map(|j| {
                                let num = &self.invariants[i] * &ainv[j][i];
                                let q = &num / &self.invariants[j];
                                debug_assert!((num % &self.invariants[j]).is_zero());
                                q % &self.invariants[i]
                            })
                            .collect()
                    })
                    .collect()
            })
            .collect();
        GModule {
            invariants: self.invariants.clone(),
            action,
            label: self.label.as_ref().map(|l| format!("{l}^dual")),
        }
    }

    /// Verify an explicit surjection M -> M' given on standard generators
    /// (columns = images of M's generators in M' coordinates): it must be
    /// well defined, G-equivariant, and onto.
    pub fn verify_surjection(
        &self,
        other: &GModule,
        g: &FiniteGroup,
        images: &[Vec<BigUint>],
    ) -> bool {
        if images.len() != self.rank() {
            return false;
        }
        // well defined: d_i * image_i = 0 in M'
        for (i, im) in images.iter().enumerate() {
            for (t, coord) in im.iter().enumerate() {
                if !((&self.invariants[i] * coord) % &other.invariants[t]).is_zero() {
                    return false;
                }
            }
        }
        // equivariance on group generators: phi(g m_i) = g phi(m_i)
        for &gid in &g.generator_ids() {
            for i in 0..self.rank() {
                let gm = self.act(gid, &self.standard_generators()[i]);
                // phi(gm): linear combination of images
                let mut lhs = vec![BigUint::zero(); other.rank()];
                for (jj, c) in gm.iter().enumerate() {
                    for t in 0..other.rank() {
                        lhs[t] = (&lhs[t] + c * &images[jj][t]) % &other.invariants[t];
                    }
                }
                let rhs = other.act(gid, &images[i]);
                if lhs != rhs {
                    return false;
                }
            }
        }
        // onto: the images generate M' as an abelian group mod the
        // invariant lattice; check by Smith-style enumeration for small
        // modules, or Howell over each prime power (here: brute-force
        // closure for desk-scale modules)
        let mut seen = std::collections::BTreeSet::new();
        let zero = vec![BigUint::zero(); other.rank()];
        seen.insert(zero.clone());
        let mut frontier = vec![zero];
        while let Some(v) = frontier.pop() {
            for im in images {
                let mut w = v.clone();
                for t in 0..other.rank() {
                    w[t] = (&w[t] + &im[t]) % &other.invariants[t];
                }
                if seen.insert(w.clone()) {
                    frontier.push(w);
                }
            }
        }
        let size: BigUint = other.invariants.iter().product();
        BigUint::from(seen.len()) == size
    }

    /// Module order.
    pub fn order(&self) -> BigUint {
        self.invariants.iter().product()
    }
}

fn reduce_mod(x: &BigInt, d: &BigUint) -> BigUint {
    let d_int = BigInt::from(d.clone());
    let r = x.mod_floor(&d_int);
    r.to_biguint().expect("non-negative")
}

fn identity_matrix(invariants: &[BigUint]) -> Vec<Vec<BigUint>> {
    let s = invariants.len();
    (0..s)
        .map(|i| {
            (0..s)
                .map(|j| {
                    if i == j {
                        BigUint::one() % &invariants[i]
                    } else {
                        BigUint::zero()
                    }
                })
                .collect()
        })
        .collect()
}

fn mat_mul(a: &[Vec<BigUint>], b: &[Vec<BigUint>], invariants: &[BigUint]) -> Vec<Vec<BigUint>> {
    let s = invariants.len();
    (0..s)
        .map(|i| {
            (0..s)
                .map(|j| {
                    let mut acc = BigUint::zero();
                    for t in 0..s {
                        acc += &a[i][t] * &b[t][j];
                    }
                    acc % &invariants[i]
                })
                .collect()
        })
        .collect()
}

fn mat_apply(a: &[Vec<BigUint>], v: &[BigUint], invariants: &[BigUint]) -> Vec<BigUint> {
    let s = invariants.len();
    (0..s)
        .map(|i| {
            let mut acc = BigUint::zero();
            for t in 0..s {
                acc += &a[i][t] * &v[t];
            }
            acc % &invariants[i]
        })
        .collect()
}

/// Well-definedness of an action matrix on mixed cyclic factors:
/// A_ij * d_j = 0 mod d_i, i.e. (d_i / gcd(d_i, d_j)) | A_ij.
fn check_well_defined(m: &[Vec<BigUint>], invariants: &[BigUint]) -> Result<(), usize> {
    for (i, row) in m.iter().enumerate() {
        for (j, a) in row.iter().enumerate() {
            let need = &invariants[i] / invariants[i].gcd(&invariants[j]);
            if !(a % &need).is_zero() {
                return Err(i);
            }
        }
    }
    Ok(())
}
