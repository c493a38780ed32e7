//! Non-commutative Fitting invariants of finitely presented modules over
//! truncated p-adic group rings, denominator-ideal certificates, and the
//! annihilation theorem as an executable check.
//!
//! A Fitting invariant is carried as (i) the exact reduced norms of the
//! maximal square submatrices of the presentation and (ii) the Howell
//! form of the center-lattice they generate, in per-character
//! coordinates over (Z/p^k)[x]/(Phi_e).  Class-sum coordinates of such
//! norms have denominators dividing |G|, so lattice arithmetic runs at
//! an internal precision k + v_p(|G|) and results are reported at k.
//! nr(A)-equivalence is handled by a bounded search over norms of
//! trivial units, reporting equal / contained / undecided-at-bound.

use crate::chartab::Parity;
use crate::cyclotomic::Cyclotomic;
use crate::gmodule::GModule;
use crate::group::{ElemId, FiniteGroup};
use crate::ring::{CenterElement, QGMatrix, QGRing, RingError, ZpGElem, ZpGRing};
use crate::zmodp::{CycModCtx, HowellForm, ZCtx, ZmodError};
use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use std::sync::Arc;
use thiserror::Error;

pub const DEFAULT_UNIT_BOUND: usize = 6;
pub const PRECISION_CAP: u32 = 64;

#[derive(Debug, Error)]
pub enum FittError {
    #[error(transparent)]
    Ring(#[from] RingError),
    #[error(transparent)]
    Zmod(#[from] ZmodError),
    #[error("presentation has {count} maximal square submatrices, above the bound {bound}")]
    TooManySubmatrices { count: usize, bound: usize },
    #[error(
        "two-term complexes need quadratic presentations with regular norms on the ambient support"
    )]
    NotRegular,
    #[error("minus ambient requires j to act as -1 on the module")]
    NotMinusModule,
    #[error("precision p^{k} cannot resolve module exponent {exponent} (cap {cap})")]
    PrecisionTooSmall { k: u32, exponent: String, cap: u32 },
    #[error("empty presentation (b = 0)")]
    EmptyPresentation,
}

/// The ambient for Fitting lattices: either the full truncated group ring
/// (Z/p^k)[G] or its minus quotient by (1+j).
pub struct FittingAmbient {
    pub ring: QGRing,
    pub zring: ZpGRing,
    /// internal-precision context (k + v_p(|G|))
    pub z_int: Arc<ZCtx>,
    pub rmod: Arc<CycModCtx>,
    /// character indices carried by this ambient (all, or the odd ones)
    pub supported: Vec<usize>,
    pub j: Option<ElemId>,
    pub k_report: u32,
    /// per class, per supported character: omega_chi(class sum) in rmod
    multipliers: Vec<Vec<Vec<BigUint>>>,
}

impl FittingAmbient {
    pub fn full(ring: QGRing, p: u64, k: u32) -> Result<FittingAmbient, FittError> {
        let supported = (0..ring.table.chars.len()).collect();
        Self::build(ring, p, k, supported, None)
    }

    /// Minus ambient over Z_p[G]/(1+j); keeps the odd characters.
    pub fn minus(ring: QGRing, j: ElemId, p: u64, k: u32) -> Result<FittingAmbient, FittError> {
        if p == 2 {
            return Err(FittError::Ring(RingError::MinusNeedsOddPrime));
        }
        let supported: Vec<usize> = {
            let g = &ring.group;
            ring.table
                .chars
                .iter()
                .enumerate()
                .filter(|(_, c)| matches!(crate::chartab::parity(g, c, j), Ok(Parity::Odd)))
                .map(|(i, _)| i)
                .collect()
        };
        Self::build(ring, p, k, supported, Some(j))
    }

    fn build(
        ring: QGRing,
        p: u64,
        k: u32,
        supported: Vec<usize>,
        j: Option<ElemId>,
    ) -> Result<FittingAmbient, FittError> {
        let c = crate::group::v_p(ring.group.order() as u64, p);
        let k_int = k + c;
        let z_int = ZCtx::new(p, k_int);
        let zring = ZpGRing::new(ring.group.clone(), ZCtx::new(p, k));
        let rmod = CycModCtx::new(z_int.clone(), ring.table.conductor);
        let mut multipliers = Vec::with_capacity(ring.group.num_classes());
        for (ci, cls) in ring.group.conjugacy_classes().iter().enumerate() {
            let mut per_char = Vec::with_capacity(supported.len());
            for &si in &supported {
                let chi = &ring.table.chars[si];
                // |C| chi(g_C) / chi(1): an algebraic integer
                let omega = chi.values[ci]
                    .scale(&crate::cyclotomic::rat(cls.size() as i64, 1))
                    .mul(&chi.degree().inv().expect("positive degree"));
                per_char.push(rmod.reduce_cyclotomic(&omega)?);
            }
            multipliers.push(per_char);
        }
        Ok(FittingAmbient {
            ring,
            zring,
            z_int,
            rmod,
            supported,
            j,
            k_report: k,
            multipliers,
        })
    }

    pub fn flat_dim(&self) -> usize {
        self.supported.len() * self.rmod.dim
    }

    /// Flatten the supported character coordinates of an exact center
    /// element into the lattice coordinate space.
    pub fn reduce_center(&self, z: &CenterElement) -> Result<Vec<BigUint>, ZmodError> {
        let mut out = Vec::with_capacity(self.flat_dim());
        for &si in &self.supported {
            out.extend(self.rmod.reduce_cyclotomic(&z.values[si])?);
        }
        Ok(out)
    }

    /// The Howell form of the zeta(A)-span of exact generators.
    pub fn lattice_from_exact(&self, gens: &[CenterElement]) -> Result<HowellForm, ZmodError> {
        let mut rows = Vec::new();
        for gen in gens {
            let base = self.reduce_center(gen)?;
            for mults in &self.multipliers {
                let mut row = Vec::with_capacity(self.flat_dim());
                for (t, m) in mults.iter().enumerate() {
                    let seg = &base[t * self.rmod.dim..(t + 1) * self.rmod.dim];
                    row.extend(self.rmod.mul(seg, m));
                }
                rows.push(row);
            }
        }
        Ok(HowellForm::new(
            (*self.z_int).clone(),
            self.flat_dim(),
            rows,
        ))
    }

    /// Norms of trivial units +-g, closed under multiplication up to the
    /// word bound; the unit candidates for nr(A)-equivalence searches.
    pub fn trivial_unit_norms(&self, bound: usize) -> Vec<CenterElement> {
        let g = &self.ring.group;
        let r = self.ring.table.chars.len();
        let mut base = Vec::new();
        base.push(CenterElement {
            values: self
                .ring
                .table
                .chars
                .iter()
                .map(|c| {
                    if c.degree_usize() % 2 == 1 {
                        Cyclotomic::from_int(-1)
                    } else {
                        Cyclotomic::one()
                    }
                })
                .collect(),
        });
        for e in 0..g.order() {
            let nr = self
                .ring
                .reduced_norm_elem(&self.ring.basis(e))
                .expect("norm of group element");
            base.push(nr);
        }
        let key = |c: &CenterElement| -> String {
            c.values
                .iter()
                .map(|v| format!("{v}"))
                .collect::<Vec<_>>()
                .join("|")
        };
        let mut seen: std::collections::BTreeMap<String, CenterElement> =
            std::collections::BTreeMap::new();
        let one = CenterElement::one(r);
        seen.insert(key(&one), one);
        for b in &base {
            seen.insert(key(b), b.clone());
        }
        for _ in 0..bound {
            let cur: Vec<CenterElement> = seen.values().cloned().collect();
            let before = seen.len();
            for a in &cur {
                for b in &base {
                    let p = a.mul(b);
                    seen.insert(key(&p), p);
                }
            }
            if seen.len() == before {
                break;
            }
        }
        seen.into_values().collect()
    }
}

/// A Fitting invariant: exact submatrix norms plus the Howell lattice of
/// their zeta(A)-span, with an optional formal denominator (from
/// two-term complexes).
pub struct FittingInvariant {
    pub zero_class: bool,
    pub exact_generators: Vec<CenterElement>,
    pub lattice: HowellForm,
    pub denominator: Option<CenterElement>,
    /// true when the presentation was quadratic (a = b), where the
    /// invariant equals Fitt^max; otherwise it is a lower bound
    pub quadratic: bool,
}

pub type ZpGMat = Vec<Vec<ZpGElem>>;

const SUBMATRIX_BOUND: usize = 5000;

/// Fitting invariant of a presentation matrix (a rows of relations, b
/// columns = module generators).
pub fn fitting_of_presentation(
    amb: &FittingAmbient,
    h: &ZpGMat,
) -> Result<FittingInvariant, FittError> {
    let a = h.len();
    let b = if a == 0 { 0 } else { h[0].len() };
    if b == 0 {
        return Err(FittError::EmptyPresentation);
    }
    if a < b {
        return Ok(FittingInvariant {
            zero_class: true,
            exact_generators: vec![],
            lattice: HowellForm::new((*amb.z_int).clone(), amb.flat_dim(), vec![]),
            denominator: None,
            quadratic: false,
        });
    }
    let combos = combinations(a, b);
    if combos.len() > SUBMATRIX_BOUND {
        return Err(FittError::TooManySubmatrices {
            count: combos.len(),
            bound: SUBMATRIX_BOUND,
        });
    }
    let mut exact_generators = Vec::with_capacity(combos.len());
    for rows in combos {
        let sub = QGMatrix {
            entries: rows
                .iter()
                .map(|&i| h[i].iter().map(|x| amb.zring.lift(x)).collect())
                .collect(),
        };
        exact_generators.push(amb.ring.reduced_norm(&sub)?);
    }
    let lattice = amb.lattice_from_exact(&exact_generators)?;
    Ok(FittingInvariant {
        zero_class: false,
        exact_generators,
        lattice,
        denominator: None,
        quadratic: a == b,
    })
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k > n {
        return vec![];
    }
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..k).collect();
    loop {
        out.push(cur.clone());
        // advance to the next combination
        let mut i = k;
        let mut found = false;
        while i > 0 {
            i -= 1;
            if cur[i] != i + n - k {
                found = true;
                break;
            }
        }
        if !found {
            return out;
        }
        cur[i] += 1;
        for j in (i + 1)..k {
            cur[j] = cur[j - 1] + 1;
        }
    }
}

/// Fitt(M (+) M') from the two invariants: products of generators.  For
/// quadratic presentations this equals the invariant of the
/// block-diagonal presentation exactly.
pub fn fitting_product(
    amb: &FittingAmbient,
    a: &FittingInvariant,
    b: &FittingInvariant,
) -> Result<FittingInvariant, FittError> {
    if a.zero_class || b.zero_class {
        return Ok(FittingInvariant {
            zero_class: true,
            exact_generators: vec![],
            lattice: HowellForm::new((*amb.z_int).clone(), amb.flat_dim(), vec![]),
            denominator: None,
            quadratic: false,
        });
    }
    let mut exact_generators = Vec::new();
    for x in &a.exact_generators {
        for y in &b.exact_generators {
            exact_generators.push(x.mul(y));
        }
    }
    let lattice = amb.lattice_from_exact(&exact_generators)?;
    let denominator = match (&a.denominator, &b.denominator) {
        (None, None) => None,
        (Some(d), None) | (None, Some(d)) => Some(d.clone()),
        (Some(d1), Some(d2)) => Some(d1.mul(d2)),
    };
    Ok(FittingInvariant {
        zero_class: false,
        exact_generators,
        lattice,
        denominator,
        quadratic: a.quadratic && b.quadratic,
    })
}

/// Fitting invariant of a two-term complex A -> B of modules with
/// quadratic presentations: Fitt(B) scaled by the formal inverse of
/// Fitt(A), kept as a fraction lattice.
pub fn fitting_of_two_term_complex(
    amb: &FittingAmbient,
    fitt_a: &FittingInvariant,
    fitt_b: &FittingInvariant,
) -> Result<FittingInvariant, FittError> {
    if !fitt_a.quadratic || !fitt_b.quadratic {
        return Err(FittError::NotRegular);
    }
    let d = match fitt_a.exact_generators.as_slice() {
        [g] => g.clone(),
        _ => return Err(FittError::NotRegular),
    };
    for &si in &amb.supported {
        if d.values[si].is_zero() {
            return Err(FittError::NotRegular);
        }
    }
    let denominator = match &fitt_b.denominator {
        None => d.clone(),
        Some(d2) => d.mul(d2),
    };
    Ok(FittingInvariant {
        zero_class: false,
        exact_generators: fitt_b.exact_generators.clone(),
        lattice: clone_lattice(&fitt_b.lattice),
        denominator: Some(denominator),
        quadratic: true,
    })
}

fn clone_lattice(h: &HowellForm) -> HowellForm {
    HowellForm {
        z: h.z.clone(),
        n: h.n,
        rows: h.rows.clone(),
    }
}

/// Equality of (possibly fractional) invariants by exact
/// cross-multiplication of denominators.
pub fn fraction_equal(
    amb: &FittingAmbient,
    a: &FittingInvariant,
    b: &FittingInvariant,
) -> Result<bool, FittError> {
    let one = CenterElement::one(amb.ring.table.chars.len());
    let da = a.denominator.clone().unwrap_or_else(|| one.clone());
    let db = b.denominator.clone().unwrap_or(one);
    let ga: Vec<CenterElement> = a.exact_generators.iter().map(|g| g.mul(&db)).collect();
    let gb: Vec<CenterElement> = b.exact_generators.iter().map(|g| g.mul(&da)).collect();
    let la = amb.lattice_from_exact(&ga)?;
    let lb = amb.lattice_from_exact(&gb)?;
    Ok(la == lb)
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub enum Containment {
    Equal { unit: String },
    Contained { unit: String },
    UndecidedAtBound { bound: usize },
}

/// nr(A)-containment check of [src] in [dst], searching norms of trivial
/// units up to the word bound.
pub fn containment(
    amb: &FittingAmbient,
    src: &FittingInvariant,
    dst: &FittingInvariant,
    unit_bound: usize,
) -> Result<Containment, FittError> {
    if src.zero_class {
        return Ok(Containment::Equal { unit: "1".into() });
    }
    let units = amb.trivial_unit_norms(unit_bound);
    let mut contained: Option<String> = None;
    for u in &units {
        let scaled: Vec<CenterElement> = dst.exact_generators.iter().map(|g| g.mul(u)).collect();
        let lat = amb.lattice_from_exact(&scaled)?;
        if lat == src.lattice {
            return Ok(Containment::Equal {
                unit: describe_center(u),
            });
        }
        if contained.is_none() && lat.contains_all(&src.lattice) {
            contained = Some(describe_center(u));
        }
    }
    match contained {
        Some(unit) => Ok(Containment::Contained { unit }),
        None => Ok(Containment::UndecidedAtBound { bound: unit_bound }),
    }
}

pub fn describe_center(u: &CenterElement) -> String {
    u.values
        .iter()
        .map(|v| format!("{v}"))
        .collect::<Vec<_>>()
        .join(", ")
}

/// Cut by a central idempotent given as the set of character indices it
/// supports: components off the support are zeroed.  When the idempotent
/// is integral (lies in the ambient order) this equals the invariant of
/// the cut module.
pub fn idempotent_cut(
    amb: &FittingAmbient,
    f: &FittingInvariant,
    support: &[usize],
) -> Result<FittingInvariant, FittError> {
    let cut = |z: &CenterElement| -> CenterElement {
        CenterElement {
            values: z
                .values
                .iter()
                .enumerate()
                .map(|(i, v)| {
                    if support.contains(&i) {
                        v.clone()
                    } else {
                        Cyclotomic::zero()
                    }
                })
                .collect(),
        }
    };
    let exact_generators: Vec<CenterElement> = f.exact_generators.iter().map(&cut).collect();
    let lattice = amb.lattice_from_exact(&exact_generators)?;
    Ok(FittingInvariant {
        zero_class: f.zero_class,
        exact_generators,
        lattice,
        denominator: f.denominator.as_ref().map(&cut),
        quadratic: f.quadratic,
    })
}

#[derive(Debug, Serialize, Deserialize)]
pub struct SurjectionMonotonicity {
    pub surjective: bool,
    pub containment: Containment,
}

/// Lemma-style monotonicity under surjections: verify the supplied map
/// M ->> M' (well defined, equivariant, onto), then check that the
/// source invariant is nr-contained in the target one, reporting the
/// unit witness.
pub fn fitting_surjection_monotone(
    amb: &FittingAmbient,
    source_module: &GModule,
    target_module: &GModule,
    images: &[Vec<BigUint>],
    fitt_source: &FittingInvariant,
    fitt_target: &FittingInvariant,
    unit_bound: usize,
) -> Result<SurjectionMonotonicity, FittError> {
    let surjective = source_module.verify_surjection(target_module, &amb.ring.group, images);
    if !surjective {
        return Ok(SurjectionMonotonicity {
            surjective: false,
            containment: Containment::UndecidedAtBound { bound: 0 },
        });
    }
    let containment = containment(amb, fitt_source, fitt_target, unit_bound)?;
    Ok(SurjectionMonotonicity {
        surjective: true,
        containment,
    })
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub enum MembershipVerdict {
    Member,
    NonMember { reason: String },
}

/// Membership of an exact center element in the lattice (at internal
/// precision).  Fractional invariants clear the denominator first.
pub fn lattice_membership(
    amb: &FittingAmbient,
    f: &FittingInvariant,
    z: &CenterElement,
) -> MembershipVerdict {
    let z = match &f.denominator {
        None => z.clone(),
        Some(d) => z.mul(d),
    };
    match amb.reduce_center(&z) {
        Ok(v) => {
            if f.lattice.contains(&v) {
                MembershipVerdict::Member
            } else {
                MembershipVerdict::NonMember {
                    reason: "not in the lattice at the working precision".into(),
                }
            }
        }
        Err(e) => MembershipVerdict::NonMember {
            reason: format!("does not reduce into the lattice ambient: {e}"),
        },
    }
}

// ---------------------------------------------------------------------------
// Derived presentations of G-modules
// ---------------------------------------------------------------------------

/// Derive a presentation of a finite p-group module over the ambient
/// ring: map a free module onto the standard generators and compute the
/// relation kernel by Howell elimination over Z/p^k.  For the minus
/// ambient the module must have j acting as -1.
pub fn derive_presentation(amb: &FittingAmbient, module: &GModule) -> Result<ZpGMat, FittError> {
    let g = &amb.ring.group;
    let zc = &amb.zring.z;
    let exponent = module.exponent();
    if !(zc.modulus.clone() % &exponent).is_zero() {
        return Err(FittError::PrecisionTooSmall {
            k: zc.k,
            exponent: exponent.to_string(),
            cap: PRECISION_CAP,
        });
    }
    if let Some(j) = amb.j {
        if !module.j_acts_as_minus_one(j) {
            return Err(FittError::NotMinusModule);
        }
    }
    let basis: Vec<ElemId> = match amb.j {
        None => (0..g.order()).collect(),
        Some(j) => {
            // one representative per pair {g, gj}
            let mut reps = Vec::new();
            let mut used = vec![false; g.order()];
            for e in 0..g.order() {
                if used[e] {
                    continue;
                }
                used[e] = true;
                used[g.mul(e, j)] = true;
                reps.push(e);
            }
            reps
        }
    };
    let b = module.rank();
    if b == 0 {
        return Ok(vec![vec![amb.zring.one()]]);
    }
    let s = module.rank();
    let d = basis.len();
    let scale: Vec<BigUint> = module
        .invariants
        .iter()
        .map(|di| zc.modulus.clone() / di)
        .collect();
    let gens = module.standard_generators();
    let tail = b * d;
    let mut rows: Vec<Vec<BigUint>> = Vec::with_capacity(tail);
    for i in 0..b {
        for (bi, &beta) in basis.iter().enumerate() {
            // on a minus module the idempotent section acts as the bare
            // group element
            let image = module.act(beta, &gens[i]);
            let mut row: Vec<BigUint> = (0..s)
                .map(|t| zc.mul(&scale[t], &zc.reduce_u(&image[t])))
                .collect();
            row.extend(vec![BigUint::zero(); tail]);
            row[s + i * d + bi] = BigUint::one();
            rows.push(row);
        }
    }
    let h = HowellForm::new((**zc).clone(), s + tail, rows);
    let mut pres: ZpGMat = Vec::new();
    for row in &h.rows {
        if row.data[..s].iter().all(|x| x.is_zero()) {
            let mut rel: Vec<ZpGElem> = Vec::with_capacity(b);
            for i in 0..b {
                let mut elem = amb.zring.zero();
                for (bi, &beta) in basis.iter().enumerate() {
                    let c = &row.data[s + i * d + bi];
                    if c.is_zero() {
                        continue;
                    }
                    let term = match amb.j {
                        None => amb.zring.scale(&amb.zring.basis(beta), c),
                        Some(j) => {
                            let sec = amb
                                .zring
                                .minus_project(&amb.zring.basis(beta), j)
                                .expect("odd p");
                            amb.zring.scale(&sec, c)
                        }
                    };
                    elem = amb.zring.add(&elem, &term);
                }
                rel.push(elem);
            }
            pres.push(rel);
        }
    }
    Ok(pres)
}

// ---------------------------------------------------------------------------
// Annihilation (the executable annihilation theorem)
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub enum AnnihilationVerdict {
    Pass {
        generators_tested: usize,
    },
    /// x * f failed to land in the p-integral center
    NotCentral {
        witness: String,
    },
    Fail {
        witness: String,
    },
}

/// Check that x * f annihilates the module for every exact lattice
/// generator f; annihilation of the generators extends to the whole
/// zeta(A)-span by linearity of the action.
pub fn annihilation_check(
    amb: &FittingAmbient,
    x: &CenterElement,
    fitt: &FittingInvariant,
    module: &GModule,
) -> AnnihilationVerdict {
    let ring = &amb.ring;
    let g = &ring.group;
    let p = amb.zring.z.p;
    let mut tested = 0usize;
    for f in &fitt.exact_generators {
        let z = x.mul(f);
        let coords = ring.center_to_class_sums(&z);
        let mut coeffs: Vec<(ElemId, BigInt)> = Vec::new();
        for (ci, cls) in g.conjugacy_classes().iter().enumerate() {
            let c = coords[ci].clone().reduce_conductor();
            let Some(r) = c.as_rational() else {
                return AnnihilationVerdict::NotCentral {
                    witness: format!("class-sum coefficient {c} is irrational"),
                };
            };
            if !c.denominators_prime_to(p) {
                return AnnihilationVerdict::NotCentral {
                    witness: format!(
                        "class-sum coefficient {r} has denominator divisible by p = {p}"
                    ),
                };
            }
            if r.numer().is_zero() {
                continue;
            }
            let exponent = module.exponent();
            let den = r.denom().to_biguint().expect("positive");
            let Some(dinv) = modinv(&(den % &exponent), &exponent) else {
                return AnnihilationVerdict::NotCentral {
                    witness: format!("denominator of {r} not invertible mod module exponent"),
                };
            };
            let num = BigInt::from(dinv) * r.numer();
            for &m in &cls.members {
                coeffs.push((m, num.clone()));
            }
        }
        for gen in module.standard_generators() {
            let image = module.act_linear(&coeffs, &gen);
            if image.iter().any(|c| !c.is_zero()) {
                return AnnihilationVerdict::Fail {
                    witness: format!(
                        "generator image {image:?} nonzero under x*f with f = ({})",
                        describe_center(f)
                    ),
                };
            }
        }
        tested += 1;
    }
    AnnihilationVerdict::Pass {
        generators_tested: tested,
    }
}

fn modinv(a: &BigUint, m: &BigUint) -> Option<BigUint> {
    use num_integer::Integer;
    let a = BigInt::from(a.clone());
    let m_int = BigInt::from(m.clone());
    let eg = a.extended_gcd(&m_int);
    if eg.gcd.is_one() {
        Some(eg.x.mod_floor(&m_int).to_biguint().unwrap())
    } else {
        None
    }
}

// ---------------------------------------------------------------------------
// Denominator ideals
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Dichotomy {
    /// H_p(G) = zeta(Z_p[G]): p does not divide |G'|
    FullCenter,
    Proper,
}

/// H_p(G) = zeta(Z_p[G]) iff p does not divide the order of the
/// commutator subgroup.
pub fn denominator_dichotomy(g: &FiniteGroup, p: u64) -> Dichotomy {
    let d = g.commutator_subgroup();
    if d.order() as u64 % p == 0 {
        Dichotomy::Proper
    } else {
        Dichotomy::FullCenter
    }
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub enum HVerdict {
    /// granted by the full-center dichotomy, no sampling needed
    AutoFullCenter,
    MemberVerifiedOnSample {
        matrices_tested: usize,
    },
    NonMember {
        witness: String,
    },
}

/// Certificate for membership of a central element in the denominator
/// ideal: candidate plus verdict over the tested matrices.
#[derive(Debug)]
pub struct DenominatorCertificate {
    pub candidate: CenterElement,
    pub verdict: HVerdict,
}

/// Check x H* integral over the sample matrices (p-integrality of every
/// entry).  A failure is a definitive non-membership witness; success is
/// reported as verified-on-sample only.
pub fn check_denominator_certificate(
    ring: &QGRing,
    p: u64,
    x: &CenterElement,
    samples: &[QGMatrix],
) -> Result<DenominatorCertificate, FittError> {
    let xe = ring.center_to_element(x);
    if !xe.is_p_integral(p) {
        return Ok(DenominatorCertificate {
            candidate: x.clone(),
            verdict: HVerdict::NonMember {
                witness: "candidate is not p-integral in the center".into(),
            },
        });
    }
    if denominator_dichotomy(&ring.group, p) == Dichotomy::FullCenter {
        return Ok(DenominatorCertificate {
            candidate: x.clone(),
            verdict: HVerdict::AutoFullCenter,
        });
    }
    let mut tested = 0usize;
    for h in samples {
        let adj = ring.generalized_adjoint(h)?;
        let xadj = ring.mat_scale_elem(&adj, &xe);
        if !xadj.is_p_integral(p) {
            return Ok(DenominatorCertificate {
                candidate: x.clone(),
                verdict: HVerdict::NonMember {
                    witness: format!(
                        "x H* has a p-denominator for a {}x{} sample matrix",
                        h.rows(),
                        h.cols()
                    ),
                },
            });
        }
        tested += 1;
    }
    Ok(DenominatorCertificate {
        candidate: x.clone(),
        verdict: HVerdict::MemberVerifiedOnSample {
            matrices_tested: tested,
        },
    })
}

/// Deterministic sample matrices up to n_max = max chi(1): group-element
/// combinations with small coefficients, from a fixed xorshift stream.
pub fn sample_matrices(ring: &QGRing, count_per_size: usize) -> Vec<QGMatrix> {
    let n_max = ring.table.degrees().into_iter().max().unwrap_or(1);
    let g_order = ring.order();
    let mut out = Vec::new();
    let mut state = 0x9e3779b97f4a7c15u64;
    let mut next = move || {
        state ^= state << 13;
        state ^= state >> 7;
        state ^= state << 17;
        state
    };
    for n in 1..=n_max {
        for _ in 0..count_per_size {
            let entries: Vec<Vec<crate::ring::QGElem>> = (0..n)
                .map(|_| {
                    (0..n)
                        .map(|_| {
                            let mut x = ring.zero();
                            for _ in 0..2 {
                                let e = (next() as usize) % g_order;
                                let c = (next() % 5) as i64 - 2;
                                x = ring
                                    .add(&x, &ring.scale(&ring.basis(e), &Cyclotomic::from_int(c)));
                            }
                            x
                        })
                        .collect()
                })
                .collect();
            out.push(QGMatrix { entries });
        }
    }
    out
}

/// Sampled sub-lattice of I(A): reduced norms of sample matrices.
pub fn sample_nr_lattice(
    ring: &QGRing,
    count_per_size: usize,
) -> Result<Vec<CenterElement>, FittError> {
    let mut out = Vec::new();
    for h in sample_matrices(ring, count_per_size) {
        out.push(ring.reduced_norm(&h)?);
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// Certificates (JSON)
// ---------------------------------------------------------------------------

#[derive(Debug, Serialize, Deserialize)]
pub struct FittingCertificateJson {
    pub precision: u32,
    pub internal_precision: u32,
    pub conductor: u64,
    pub supported_characters: Vec<usize>,
    pub generators: Vec<Vec<String>>,
    pub denominator: Option<Vec<String>>,
    pub lattice_rows: Vec<Vec<String>>,
    pub quadratic: bool,
    pub zero_class: bool,
}

pub fn export_certificate(amb: &FittingAmbient, f: &FittingInvariant) -> FittingCertificateJson {
    let report = f
        .lattice
        .reduce_precision((*ZCtx::new(amb.zring.z.p, amb.k_report)).clone());
    FittingCertificateJson {
        precision: amb.k_report,
        internal_precision: amb.z_int.k,
        conductor: amb.rmod.e,
        supported_characters: amb.supported.clone(),
        generators: f
            .exact_generators
            .iter()
            .map(|g| g.values.iter().map(|v| format!("{v}")).collect())
            .collect(),
        denominator: f
            .denominator
            .as_ref()
            .map(|d| d.values.iter().map(|v| format!("{v}")).collect()),
        lattice_rows: report
            .rows
            .iter()
            .map(|r| r.data.iter().map(|x| x.to_string()).collect())
            .collect(),
        quadratic: f.quadratic,
        zero_class: f.zero_class,
    }
}
