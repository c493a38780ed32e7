//! Exact group-ring arithmetic over cyclotomic fields and over Z/p^k,
//! centers in both the class-sum and the per-character coordinates, the
//! sharp anti-involution, linear-character twists, minus quotients,
//! reduced norms and generalised adjoints.
//!
//! Reduced norms are computed blockwise from the character table alone:
//! the trace of H^m on the chi-block is sum_i chi((H^m)_{ii}), Newton's
//! identities turn these power sums into the characteristic polynomial
//! of the block, whose constant term is the block determinant.  The
//! generalised adjoint is the matching Cayley-Hamilton polynomial in H,
//! cut by the central idempotent e(chi), so no explicit matrix
//! representation is ever constructed.

use crate::chartab::{Character, CharacterTable};
use crate::cyclotomic::{rat, Cyclotomic, Rat};
use crate::group::{ElemId, FiniteGroup, SubgroupHandle};
use crate::zmodp::{ZCtx, ZmodError};
use num_bigint::BigUint;
use num_traits::Zero;
use std::sync::Arc;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum RingError {
    #[error("coefficient field too small: computation needs conductor {needed}, ring pinned to {pinned}")]
    CoefficientFieldTooSmall { pinned: u64, needed: u64 },
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("minus quotient requires an odd prime, got p = 2")]
    MinusNeedsOddPrime,
    #[error(transparent)]
    Zmod(#[from] ZmodError),
    #[error("dimension mismatch")]
    DimensionMismatch,
}

/// The rational/cyclotomic group algebra K[G] with its character data.
#[derive(Debug, Clone)]
pub struct QGRing {
    pub group: Arc<FiniteGroup>,
    pub table: Arc<CharacterTable>,
    /// when set, computations whose values need a larger cyclotomic field
    /// fail instead of silently enlarging
    pub pinned_conductor: Option<u64>,
}

impl QGRing {
    pub fn new(group: Arc<FiniteGroup>, table: Arc<CharacterTable>) -> QGRing {
        QGRing {
            group,
            table,
            pinned_conductor: None,
        }
    }

    pub fn order(&self) -> usize {
        self.group.order()
    }

    pub fn zero(&self) -> QGElem {
        QGElem {
            coeffs: vec![Cyclotomic::zero(); self.order()],
        }
    }

    pub fn one(&self) -> QGElem {
        let mut x = self.zero();
        x.coeffs[0] = Cyclotomic::one();
        x
    }

    pub fn basis(&self, e: ElemId) -> QGElem {
        let mut x = self.zero();
        x.coeffs[e] = Cyclotomic::one();
        x
    }

    pub fn from_terms(&self, terms: &[(ElemId, Cyclotomic)]) -> QGElem {
        let mut x = self.zero();
        for (e, c) in terms {
            x.coeffs[*e] = x.coeffs[*e].add(c);
        }
        x
    }

    pub fn add(&self, a: &QGElem, b: &QGElem) -> QGElem {
        QGElem {
            coeffs: a
                .coeffs
                .iter()
                .zip(&b.coeffs)
                .map(|(x, y)| x.add(y))
                .collect(),
        }
    }

    pub fn sub(&self, a: &QGElem, b: &QGElem) -> QGElem {
        QGElem {
            coeffs: a
                .coeffs
                .iter()
                .zip(&b.coeffs)
                .map(|(x, y)| x.sub(y))
                .collect(),
        }
    }

    pub fn neg(&self, a: &QGElem) -> QGElem {
        QGElem {
            coeffs: a.coeffs.iter().map(|x| x.neg()).collect(),
        }
    }

    pub fn scale(&self, a: &QGElem, c: &Cyclotomic) -> QGElem {
        QGElem {
            coeffs: a.coeffs.iter().map(|x| x.mul(c)).collect(),
        }
    }

    pub fn mul(&self, a: &QGElem, b: &QGElem) -> QGElem {
        let g = &self.group;
        let mut out = self.zero();
        for (i, ci) in a.coeffs.iter().enumerate() {
            if ci.is_zero() {
                continue;
            }
            for (j, cj) in b.coeffs.iter().enumerate() {
                if cj.is_zero() {
                    continue;
                }
                let k = g.mul(i, j);
                out.coeffs[k] = out.coeffs[k].add(&ci.mul(cj));
            }
        }
        out
    }

    /// The anti-involution induced by g -> g^{-1}.
    pub fn sharp(&self, a: &QGElem) -> QGElem {
        let g = &self.group;
        let mut out = self.zero();
        for (i, c) in a.coeffs.iter().enumerate() {
            if !c.is_zero() {
                out.coeffs[g.inv(i)] = c.clone();
            }
        }
        out
    }

    /// Twist by a linear character: sum c_g g -> sum eps(g) c_g g.
    pub fn twist(&self, a: &QGElem, eps: &Character) -> QGElem {
        let g = &self.group;
        QGElem {
            coeffs: a
                .coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| {
                    if c.is_zero() {
                        Cyclotomic::zero()
                    } else {
                        c.mul(&eps.values[g.class_of(i)])
                    }
                })
                .collect(),
        }
    }

    /// Extend a character linearly: chi(sum c_g g) = sum c_g chi(g).
    pub fn char_trace(&self, chi: &Character, a: &QGElem) -> Cyclotomic {
        let g = &self.group;
        let mut acc = Cyclotomic::zero();
        for (i, c) in a.coeffs.iter().enumerate() {
            if !c.is_zero() {
                acc = acc.add(&c.mul(&chi.values[g.class_of(i)]));
            }
        }
        acc
    }

    /// Central primitive idempotent e(chi) = chi(1)/|G| sum chi(g^{-1}) g.
    pub fn central_idempotent(&self, chi: &Character) -> QGElem {
        let g = &self.group;
        let n = self.order();
        let scale = chi.degree().scale(&rat(1, n as i64));
        let mut out = self.zero();
        for e in 0..n {
            out.coeffs[e] = scale.mul(&chi.values[g.class_of(g.inv(e))]);
        }
        out
    }

    /// Trace idempotent e_N = |N|^{-1} sum_{n in N} n of a normal subgroup.
    pub fn trace_idempotent(&self, n: &SubgroupHandle) -> QGElem {
        let mut out = self.zero();
        let c = rat(1, n.order() as i64);
        for &m in &n.members {
            out.coeffs[m] = Cyclotomic::from_rat(c.clone());
        }
        out
    }

    /// e_N = sum of e(chi) over characters with N inside the kernel.
    pub fn trace_idempotent_character_side(&self, n: &SubgroupHandle) -> QGElem {
        let g = &self.group;
        let mut acc = self.zero();
        for chi in &self.table.chars {
            let ker = chi.kernel(g);
            if n.members.iter().all(|m| ker.contains(m)) {
                acc = self.add(&acc, &self.central_idempotent(chi));
            }
        }
        acc
    }

    fn element_conductor(&self, a: &QGElem) -> u64 {
        a.coeffs.iter().fold(1u64, |m, c| {
            num_integer::lcm(m, c.clone().reduce_conductor().conductor())
        })
    }

    fn check_pinned(&self, m: &QGMatrix) -> Result<(), RingError> {
        if let Some(pinned) = self.pinned_conductor {
            let mut needed = self.table.conductor;
            for row in &m.entries {
                for x in row {
                    needed = num_integer::lcm(needed, self.element_conductor(x));
                }
            }
            if pinned % needed != 0 {
                return Err(RingError::CoefficientFieldTooSmall { pinned, needed });
            }
        }
        Ok(())
    }

    // -- matrices --------------------------------------------------------

    pub fn mat_identity(&self, b: usize) -> QGMatrix {
        QGMatrix {
            entries: (0..b)
                .map(|i| {
                    (0..b)
                        .map(|j| if i == j { self.one() } else { self.zero() })
                        .collect()
                })
                .collect(),
        }
    }

    pub fn mat_mul(&self, a: &QGMatrix, b: &QGMatrix) -> QGMatrix {
        let n = a.rows();
        let m = b.cols();
        let inner = a.cols();
        assert_eq!(inner, b.rows());
        let entries = (0..n)
            .map(|i| {
                (0..m)
                    .map(|j| {
                        let mut acc = self.zero();
                        for t in 0..inner {
                            acc = self.add(&acc, &self.mul(&a.entries[i][t], &b.entries[t][j]));
                        }
                        acc
                    })
                    .collect()
            })
            .collect();
        QGMatrix { entries }
    }

    pub fn mat_scale_elem(&self, a: &QGMatrix, x: &QGElem) -> QGMatrix {
        QGMatrix {
            entries: a
                .entries
                .iter()
                .map(|row| row.iter().map(|v| self.mul(x, v)).collect())
                .collect(),
        }
    }

    pub fn mat_add(&self, a: &QGMatrix, b: &QGMatrix) -> QGMatrix {
        QGMatrix {
            entries: a
                .entries
                .iter()
                .zip(&b.entries)
                .map(|(ra, rb)| ra.iter().zip(rb).map(|(x, y)| self.add(x, y)).collect())
                .collect(),
        }
    }

    /// Transpose combined with entrywise sharp, so (AB)^sharp = B^sharp A^sharp.
    pub fn mat_sharp(&self, a: &QGMatrix) -> QGMatrix {
        let n = a.rows();
        let m = a.cols();
        QGMatrix {
            entries: (0..m)
                .map(|j| (0..n).map(|i| self.sharp(&a.entries[i][j])).collect())
                .collect(),
        }
    }

    /// Reduced norm of a square matrix over K[G]: per character chi, the
    /// determinant of the chi-block of H.
    pub fn reduced_norm(&self, h: &QGMatrix) -> Result<CenterElement, RingError> {
        if h.rows() != h.cols() {
            return Err(RingError::NotSquare {
                rows: h.rows(),
                cols: h.cols(),
            });
        }
        self.check_pinned(h)?;
        let b = h.rows();
        let degrees = self.table.degrees();
        let max_n = degrees.iter().map(|d| d * b).max().unwrap_or(0);
        let mut powers: Vec<QGMatrix> = Vec::with_capacity(max_n);
        if max_n > 0 {
            powers.push(h.clone());
            for _ in 1..max_n {
                powers.push(self.mat_mul(powers.last().unwrap(), h));
            }
        }
        let mut values = Vec::with_capacity(self.table.chars.len());
        for chi in &self.table.chars {
            let n = chi.degree_usize() * b;
            let es = self.block_elementary_symmetric(chi, &powers, b, n);
            values.push(es[n].clone());
        }
        Ok(CenterElement { values })
    }

    /// Elementary symmetric functions e_0..e_n of the chi-block of H from
    /// trace power sums; `powers[m-1]` must hold H^m.
    fn block_elementary_symmetric(
        &self,
        chi: &Character,
        powers: &[QGMatrix],
        b: usize,
        n: usize,
    ) -> Vec<Cyclotomic> {
        let mut psums = Vec::with_capacity(n + 1);
        psums.push(Cyclotomic::from_int((chi.degree_usize() * b) as i64));
        for m in 1..=n {
            let hm = &powers[m - 1];
            let mut tr = Cyclotomic::zero();
            for i in 0..b {
                tr = tr.add(&self.char_trace(chi, &hm.entries[i][i]));
            }
            psums.push(tr);
        }
        // Newton: k e_k = sum_{i=1}^{k} (-1)^{i-1} e_{k-i} p_i
        let mut es = vec![Cyclotomic::one()];
        for k in 1..=n {
            let mut acc = Cyclotomic::zero();
            for i in 1..=k {
                let term = es[k - i].mul(&psums[i]);
                if i % 2 == 1 {
                    acc = acc.add(&term);
                } else {
                    acc = acc.sub(&term);
                }
            }
            es.push(acc.scale(&rat(1, k as i64)));
        }
        es
    }

    /// Generalised adjoint: H* with H*H = HH* = nr(H) 1.  Blockwise the
    /// classical adjugate:
    ///   H* = sum_chi e(chi) (-1)^(n_chi + 1) q_chi(H),
    /// with q_chi(t) = (p_chi(t) - p_chi(0))/t for the block
    /// characteristic polynomial p_chi; valid for singular H too.
    pub fn generalized_adjoint(&self, h: &QGMatrix) -> Result<QGMatrix, RingError> {
        if h.rows() != h.cols() {
            return Err(RingError::NotSquare {
                rows: h.rows(),
                cols: h.cols(),
            });
        }
        self.check_pinned(h)?;
        let b = h.rows();
        let degrees = self.table.degrees();
        let max_n = degrees.iter().map(|d| d * b).max().unwrap_or(1);
        // powers[m] = H^m, m = 0..max_n
        let mut powers: Vec<QGMatrix> = vec![self.mat_identity(b)];
        for _ in 1..=max_n {
            powers.push(self.mat_mul(powers.last().unwrap(), h));
        }
        let mut out = QGMatrix {
            entries: vec![vec![self.zero(); b]; b],
        };
        for chi in &self.table.chars {
            let n = chi.degree_usize() * b;
            let pos_powers: Vec<QGMatrix> = (1..=n).map(|m| powers[m].clone()).collect();
            let es = self.block_elementary_symmetric(chi, &pos_powers, b, n);
            // q(H) = sum_{k=0}^{n-1} (-1)^k e_k H^{n-1-k}
            let mut q = QGMatrix {
                entries: vec![vec![self.zero(); b]; b],
            };
            for k in 0..n {
                let hpow = &powers[n - 1 - k];
                let coef = if k % 2 == 0 {
                    es[k].clone()
                } else {
                    es[k].neg()
                };
                if coef.is_zero() {
                    continue;
                }
                let term = QGMatrix {
                    entries: hpow
                        .entries
                        .iter()
                        .map(|row| {
                            row.iter()
                                .map(|x| QGElem {
                                    coeffs: x.coeffs.iter().map(|c| c.mul(&coef)).collect(),
                                })
                                .collect()
                        })
                        .collect(),
                };
                q = self.mat_add(&q, &term);
            }
            // (-1)^(n+1): negate when n is even
            let e_chi = self.central_idempotent(chi);
            let mut cut = self.mat_scale_elem(&q, &e_chi);
            if n % 2 == 0 {
                cut = QGMatrix {
                    entries: cut
                        .entries
                        .iter()
                        .map(|row| row.iter().map(|x| self.neg(x)).collect())
                        .collect(),
                };
            }
            out = self.mat_add(&out, &cut);
        }
        Ok(out)
    }

    // -- center coordinates ------------------------------------------------

    /// Center element from class-sum coordinates.
    pub fn center_from_class_sums(&self, coords: &[Cyclotomic]) -> CenterElement {
        let g = &self.group;
        let values = self
            .table
            .chars
            .iter()
            .map(|chi| {
                let dinv = chi.degree().inv().expect("positive degree");
                let mut acc = Cyclotomic::zero();
                for (c, cls) in g.conjugacy_classes().iter().enumerate() {
                    if coords[c].is_zero() {
                        continue;
                    }
                    let omega = chi.values[c].scale(&rat(cls.size() as i64, 1)).mul(&dinv);
                    acc = acc.add(&coords[c].mul(&omega));
                }
                acc
            })
            .collect();
        CenterElement { values }
    }

    /// Class-sum coordinates of a center element:
    /// coeff(C) = (1/|G|) sum_chi chi(1) v_chi chi(g_C^{-1}).
    pub fn center_to_class_sums(&self, z: &CenterElement) -> Vec<Cyclotomic> {
        let g = &self.group;
        let n = self.order() as i64;
        (0..g.num_classes())
            .map(|c| {
                let cinv = g.inverse_class(c);
                let mut acc = Cyclotomic::zero();
                for (chi, v) in self.table.chars.iter().zip(&z.values) {
                    if v.is_zero() {
                        continue;
                    }
                    acc = acc.add(&v.mul(chi.degree()).mul(&chi.values[cinv]));
                }
                acc.scale(&rat(1, n))
            })
            .collect()
    }

    /// A central group-ring element from a center element.
    pub fn center_to_element(&self, z: &CenterElement) -> QGElem {
        let coords = self.center_to_class_sums(z);
        let g = &self.group;
        let mut out = self.zero();
        for (c, cls) in g.conjugacy_classes().iter().enumerate() {
            for &m in &cls.members {
                out.coeffs[m] = coords[c].clone();
            }
        }
        out
    }

    /// Character coordinates of a central group-ring element.
    pub fn element_to_center(&self, x: &QGElem) -> CenterElement {
        let g = &self.group;
        let coords: Vec<Cyclotomic> = g
            .conjugacy_classes()
            .iter()
            .map(|c| x.coeffs[c.representative].clone())
            .collect();
        self.center_from_class_sums(&coords)
    }

    pub fn reduced_norm_elem(&self, x: &QGElem) -> Result<CenterElement, RingError> {
        self.reduced_norm(&QGMatrix {
            entries: vec![vec![x.clone()]],
        })
    }

    /// nr of the scalar c: component c^(chi(1)).
    pub fn reduced_norm_scalar(&self, c: &Rat) -> CenterElement {
        let values = self
            .table
            .chars
            .iter()
            .map(|chi| {
                let mut acc = Cyclotomic::one();
                for _ in 0..chi.degree_usize() {
                    acc = acc.scale(c);
                }
                acc
            })
            .collect();
        CenterElement { values }
    }
}

/// Element of K[G] with exact cyclotomic coefficients, dense by element id.
#[derive(Debug, Clone, PartialEq)]
pub struct QGElem {
    pub coeffs: Vec<Cyclotomic>,
}

impl QGElem {
    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_integral())
    }

    pub fn is_p_integral(&self, p: u64) -> bool {
        self.coeffs.iter().all(|c| c.denominators_prime_to(p))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct QGMatrix {
    pub entries: Vec<Vec<QGElem>>,
}

impl QGMatrix {
    pub fn rows(&self) -> usize {
        self.entries.len()
    }
    pub fn cols(&self) -> usize {
        if self.entries.is_empty() {
            0
        } else {
            self.entries[0].len()
        }
    }
    pub fn is_integral(&self) -> bool {
        self.entries.iter().flatten().all(|x| x.is_integral())
    }
    pub fn is_p_integral(&self, p: u64) -> bool {
        self.entries.iter().flatten().all(|x| x.is_p_integral(p))
    }
}

/// Center element in per-character coordinates (table order).
#[derive(Debug, Clone, PartialEq)]
pub struct CenterElement {
    pub values: Vec<Cyclotomic>,
}

impl CenterElement {
    pub fn one(r: usize) -> CenterElement {
        CenterElement {
            values: vec![Cyclotomic::one(); r],
        }
    }

    pub fn zero(r: usize) -> CenterElement {
        CenterElement {
            values: vec![Cyclotomic::zero(); r],
        }
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|v| v.is_zero())
    }

    pub fn mul(&self, other: &CenterElement) -> CenterElement {
        CenterElement {
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(a, b)| a.mul(b))
                .collect(),
        }
    }

    pub fn add(&self, other: &CenterElement) -> CenterElement {
        CenterElement {
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(a, b)| a.add(b))
                .collect(),
        }
    }

    pub fn neg(&self) -> CenterElement {
        CenterElement {
            values: self.values.iter().map(|v| v.neg()).collect(),
        }
    }

    pub fn scale(&self, r: &Rat) -> CenterElement {
        CenterElement {
            values: self.values.iter().map(|v| v.scale(r)).collect(),
        }
    }

    /// The sharp anti-involution permutes character coordinates by the
    /// contragredient.
    pub fn sharp(&self, ring: &QGRing) -> CenterElement {
        let g = &ring.group;
        let values = (0..ring.table.chars.len())
            .map(|i| self.values[ring.table.contragredient_index(g, i)].clone())
            .collect();
        CenterElement { values }
    }

    pub fn is_regular(&self) -> bool {
        self.values.iter().all(|v| !v.is_zero())
    }

    pub fn inv(&self) -> Option<CenterElement> {
        let mut values = Vec::with_capacity(self.values.len());
        for v in &self.values {
            values.push(v.inv().ok()?);
        }
        Some(CenterElement { values })
    }
}

// ---------------------------------------------------------------------------
// Group-ring element JSON
// ---------------------------------------------------------------------------

/// Wire shape for group-ring elements:
/// ring descriptor (group input plus coefficient ring tag) and a sparse
/// term list.  Coefficient strings are rational coefficient vectors in
/// the power basis for "cyclotomic(n)", or single residues for
/// "zmod(p,k)".
#[derive(Debug, serde::Serialize, serde::Deserialize)]
pub struct GroupRingElementJson {
    pub ring: RingDescriptorJson,
    pub terms: Vec<TermJson>,
}

#[derive(Debug, serde::Serialize, serde::Deserialize)]
pub struct RingDescriptorJson {
    pub group: crate::group::GroupInput,
    pub coeff: String,
}

#[derive(Debug, serde::Serialize, serde::Deserialize)]
pub struct TermJson {
    pub g: String,
    pub c: Vec<String>,
}

impl QGRing {
    pub fn export_element(&self, x: &QGElem, conductor: u64) -> GroupRingElementJson {
        let g = &self.group;
        let terms = x
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(e, c)| {
                let lifted = c.lift_to(conductor);
                TermJson {
                    g: g.element(e).cycle_string(),
                    c: lifted.coeffs().iter().map(|r| r.to_string()).collect(),
                }
            })
            .collect();
        GroupRingElementJson {
            ring: RingDescriptorJson {
                group: crate::group::GroupInput {
                    degree: g.degree(),
                    generators: g.generators().iter().map(|p| p.cycle_string()).collect(),
                    j: None,
                },
                coeff: format!("cyclotomic({conductor})"),
            },
            terms,
        }
    }

    pub fn import_element(&self, json: &GroupRingElementJson) -> Result<QGElem, RingError> {
        let g = &self.group;
        let conductor: u64 = json
            .ring
            .coeff
            .strip_prefix("cyclotomic(")
            .and_then(|s| s.strip_suffix(')'))
            .and_then(|s| s.parse().ok())
            .ok_or(RingError::DimensionMismatch)?;
        let phi = crate::cyclotomic::euler_phi(conductor) as usize;
        let mut out = self.zero();
        for t in &json.terms {
            let perm = crate::perm::Perm::parse(&t.g, g.degree())
                .map_err(|_| RingError::DimensionMismatch)?;
            let e = g.id_of(&perm).ok_or(RingError::DimensionMismatch)?;
            if t.c.len() != phi {
                return Err(RingError::DimensionMismatch);
            }
            let mut val = Cyclotomic::zero();
            for (i, cs) in t.c.iter().enumerate() {
                let r = crate::extension::parse_rational(cs).ok_or(RingError::DimensionMismatch)?;
                val = val.add(&Cyclotomic::root_of_unity(conductor, i as i64).scale(&r));
            }
            out.coeffs[e] = out.coeffs[e].add(&val);
        }
        Ok(out)
    }
}

impl ZpGRing {
    pub fn export_element(&self, x: &ZpGElem) -> GroupRingElementJson {
        let g = &self.group;
        GroupRingElementJson {
            ring: RingDescriptorJson {
                group: crate::group::GroupInput {
                    degree: g.degree(),
                    generators: g.generators().iter().map(|p| p.cycle_string()).collect(),
                    j: None,
                },
                coeff: format!("zmod({},{})", self.z.p, self.z.k),
            },
            terms: x
                .coeffs
                .iter()
                .enumerate()
                .filter(|(_, c)| !num_traits::Zero::is_zero(*c))
                .map(|(e, c)| TermJson {
                    g: g.element(e).cycle_string(),
                    c: vec![c.to_string()],
                })
                .collect(),
        }
    }

    pub fn import_element(&self, json: &GroupRingElementJson) -> Result<ZpGElem, RingError> {
        let g = &self.group;
        let mut out = self.zero();
        for t in &json.terms {
            let perm = crate::perm::Perm::parse(&t.g, g.degree())
                .map_err(|_| RingError::DimensionMismatch)?;
            let e = g.id_of(&perm).ok_or(RingError::DimensionMismatch)?;
            let c: BigUint =
                t.c.first()
                    .and_then(|s| s.parse().ok())
                    .ok_or(RingError::DimensionMismatch)?;
            out.coeffs[e] = self.z.add(&out.coeffs[e], &c);
        }
        Ok(out)
    }
}

// ---------------------------------------------------------------------------
// Z/p^k group rings
// ---------------------------------------------------------------------------

/// The truncated p-adic group ring (Z/p^k)[G].
#[derive(Debug, Clone)]
pub struct ZpGRing {
    pub group: Arc<FiniteGroup>,
    pub z: Arc<ZCtx>,
}

impl ZpGRing {
    pub fn new(group: Arc<FiniteGroup>, z: Arc<ZCtx>) -> ZpGRing {
        ZpGRing { group, z }
    }

    pub fn zero(&self) -> ZpGElem {
        ZpGElem {
            coeffs: vec![BigUint::zero(); self.group.order()],
        }
    }

    pub fn one(&self) -> ZpGElem {
        let mut x = self.zero();
        x.coeffs[0] = BigUint::from(1u32);
        x
    }

    pub fn basis(&self, e: ElemId) -> ZpGElem {
        let mut x = self.zero();
        x.coeffs[e] = BigUint::from(1u32);
        x
    }

    pub fn add(&self, a: &ZpGElem, b: &ZpGElem) -> ZpGElem {
        ZpGElem {
            coeffs: a
                .coeffs
                .iter()
                .zip(&b.coeffs)
                .map(|(x, y)| self.z.add(x, y))
                .collect(),
        }
    }

    pub fn sub(&self, a: &ZpGElem, b: &ZpGElem) -> ZpGElem {
        ZpGElem {
            coeffs: a
                .coeffs
                .iter()
                .zip(&b.coeffs)
                .map(|(x, y)| self.z.sub(x, y))
                .collect(),
        }
    }

    pub fn mul(&self, a: &ZpGElem, b: &ZpGElem) -> ZpGElem {
        let g = &self.group;
        let mut out = self.zero();
        for (i, ci) in a.coeffs.iter().enumerate() {
            if ci.is_zero() {
                continue;
            }
            for (j, cj) in b.coeffs.iter().enumerate() {
                if cj.is_zero() {
                    continue;
                }
                let k = g.mul(i, j);
                let t = self.z.mul(ci, cj);
                out.coeffs[k] = self.z.add(&out.coeffs[k], &t);
            }
        }
        out
    }

    pub fn scale(&self, a: &ZpGElem, c: &BigUint) -> ZpGElem {
        ZpGElem {
            coeffs: a.coeffs.iter().map(|x| self.z.mul(x, c)).collect(),
        }
    }

    pub fn sharp(&self, a: &ZpGElem) -> ZpGElem {
        let g = &self.group;
        let mut out = self.zero();
        for (i, c) in a.coeffs.iter().enumerate() {
            if !c.is_zero() {
                out.coeffs[g.inv(i)] = c.clone();
            }
        }
        out
    }

    /// Reduce an exact element (coefficients must be rational with
    /// denominators prime to p).
    pub fn reduce_exact(&self, a: &QGElem) -> Result<ZpGElem, RingError> {
        let coeffs = a
            .coeffs
            .iter()
            .map(|c| {
                let r = c.as_rational().ok_or(ZmodError::BadDenominator(self.z.p))?;
                Ok(self.z.reduce_rat(&r)?)
            })
            .collect::<Result<_, RingError>>()?;
        Ok(ZpGElem { coeffs })
    }

    /// Exact lift with centered representatives.
    pub fn lift(&self, a: &ZpGElem) -> QGElem {
        QGElem {
            coeffs: a
                .coeffs
                .iter()
                .map(|c| Cyclotomic::from_rat(Rat::from_integer(self.z.lift_centered(c))))
                .collect(),
        }
    }

    /// Projection to the minus quotient (Z/p^k)[G]/(1+j), represented by
    /// the canonical idempotent section x (1-j)/2.  Requires p odd.
    pub fn minus_project(&self, a: &ZpGElem, j: ElemId) -> Result<ZpGElem, RingError> {
        if self.z.p == 2 {
            return Err(RingError::MinusNeedsOddPrime);
        }
        let half = self.z.inv(&BigUint::from(2u32))?;
        let mut out = self.zero();
        let g = &self.group;
        for (i, c) in a.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let t = self.z.mul(c, &half);
            out.coeffs[i] = self.z.add(&out.coeffs[i], &t);
            let ij = g.mul(i, j);
            out.coeffs[ij] = self.z.sub(&out.coeffs[ij], &t);
        }
        Ok(out)
    }
}

/// Element of (Z/p^k)[G], dense by element id.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ZpGElem {
    pub coeffs: Vec<BigUint>,
}

impl ZpGElem {
    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }
}
