//! Exact Artin L-values at s = 0 for the supported character classes,
//! Euler and smoothing factors, and assembly of the Stickelberger
//! elements theta_S^T and their p-adic counterparts as center elements.
//!
//! Per character chi the assembled component is
//! delta_T(0, chi) * L_S(0, contragredient of chi); even components
//! vanish (order-of-vanishing rules for CM data), odd ones are evaluated
//! natively through generalised Bernoulli numbers when Dirichlet data is
//! supplied, or taken from ingested certificates.

use crate::chartab::{parity, Character, Parity};
use crate::cyclotomic::{rat, Cyclotomic};
use crate::dirichlet::{bernoulli_l0, DirichletError};
use crate::extension::{ExtensionDatum, LValueSource, PlaceDatum};
use crate::fitting::{FittError, FittingAmbient};
use crate::group::is_prime;
use crate::ring::{CenterElement, QGRing};
use num_integer::Integer;
use num_traits::One;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum LvalError {
    #[error("missing L-value for character {fingerprint} (degree {degree}); supply a Dirichlet source or an exact certificate")]
    MissingLValue { fingerprint: String, degree: usize },
    #[error("L-value source for {fingerprint} is inconsistent with the place data at {place}: character value {expected} != Dirichlet value {got}")]
    InconsistentDirichlet {
        fingerprint: String,
        place: String,
        expected: String,
        got: String,
    },
    #[error("Dirichlet sources apply to linear characters over base field Q; {fingerprint} has degree {degree}")]
    DirichletNotApplicable { fingerprint: String, degree: usize },
    #[error(transparent)]
    Dirichlet(#[from] DirichletError),
    #[error("inconsistent inertia/Frobenius data at place {0}: fixed-space dimension is not a non-negative integer")]
    BadInertia(String),
    #[error("assembled Stickelberger element has an irrational class-sum coefficient; input data is inconsistent")]
    NotRational,
    #[error("p = {0} is not an odd prime")]
    BadPrime(u64),
    #[error("no place above p = {0} is listed in S; the p-adic element needs S containing the p-adic places")]
    MissingPPlace(u64),
    #[error("the p-adic/complex L-value identity at s = 0 is only available natively for monomial plus parts; supply p-adic certificates for the odd characters")]
    NonMonomialNeedsCertificates,
    #[error("ring error: {0}")]
    Ring(#[from] crate::ring::RingError),
    #[error("character table error: {0}")]
    Char(#[from] crate::chartab::CharError),
    #[error("group error: {0}")]
    Group(#[from] crate::group::GroupError),
    #[error("fitting error: {0}")]
    Fitt(String),
}

impl From<FittError> for LvalError {
    fn from(e: FittError) -> Self {
        LvalError::Fitt(e.to_string())
    }
}

/// Which Euler factor: the S-truncation factor det(1 - phi^{-1} | V^I)
/// (q = 1) or the T-smoothing factor det(1 - N(v) phi^{-1} | V^I).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EulerShift {
    Truncation,
    Smoothing,
}

/// det(1 - q phi_w^{-1} | V_chi^{I_w}) via power sums of the averaged
/// character and Newton's identities; degree = dim V^I.
pub fn euler_factor_at_zero(
    ring: &QGRing,
    chi: &Character,
    place: &PlaceDatum,
    shift: EulerShift,
) -> Result<Cyclotomic, LvalError> {
    let g = &ring.group;
    let inertia = &place.inertia;
    // power sums of M = phi^{-1} restricted to V^I:
    // t_m = (1/|I|) sum_tau chi(phi^{-m} tau)
    let avg = |m: i64| -> Cyclotomic {
        let phi_m = g.pow(g.inv(place.frobenius), m);
        let mut acc = Cyclotomic::zero();
        for &tau in &inertia.members {
            acc = acc.add(&chi.values[g.class_of(g.mul(phi_m, tau))]);
        }
        acc.scale(&rat(1, inertia.order() as i64))
    };
    let t0 = avg(0);
    let d = match t0.as_rational() {
        Some(r) if r.denom().is_one() && r.numer() >= &num_bigint::BigInt::from(0) => {
            let s: u64 = r.numer().to_string().parse().unwrap_or(u64::MAX);
            s as usize
        }
        _ => return Err(LvalError::BadInertia(place.label.clone())),
    };
    if d == 0 {
        return Ok(Cyclotomic::one());
    }
    let psums: Vec<Cyclotomic> = (1..=d as i64).map(avg).collect();
    // Newton: k e_k = sum_{i=1}^{k} (-1)^{i-1} e_{k-i} p_i
    let mut es = vec![Cyclotomic::one()];
    for k in 1..=d {
        let mut acc = Cyclotomic::zero();
        for i in 1..=k {
            let term = es[k - i].mul(&psums[i - 1]);
            if i % 2 == 1 {
                acc = acc.add(&term);
            } else {
                acc = acc.sub(&term);
            }
        }
        es.push(acc.scale(&rat(1, k as i64)));
    }
    // det(1 - q M) = sum_k (-q)^k e_k
    let q = match shift {
        EulerShift::Truncation => 1i64,
        EulerShift::Smoothing => place.norm as i64,
    };
    let mut value = Cyclotomic::zero();
    let mut qpow = rat(1, 1);
    for (k, e) in es.iter().enumerate() {
        let signed = if k % 2 == 0 {
            e.scale(&qpow)
        } else {
            e.scale(&qpow).neg()
        };
        value = value.add(&signed);
        qpow *= rat(q, 1);
    }
    Ok(value)
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ComponentReport {
    pub fingerprint: String,
    pub degree: usize,
    pub parity: Parity,
    /// how the L-value was obtained
    pub provenance: String,
    pub delta_t: String,
    pub l_value_s_truncated: String,
    pub component: String,
}

#[derive(Debug)]
pub struct StickelbergerResult {
    pub theta: CenterElement,
    /// rational class-sum coordinates (asserted rational during assembly)
    pub class_sums: Vec<Cyclotomic>,
    pub components: Vec<ComponentReport>,
}

/// Assemble theta_S^T; with `use_t = false` the plain theta_S.
pub fn stickelberger(
    datum: &ExtensionDatum,
    use_t: bool,
) -> Result<StickelbergerResult, LvalError> {
    let ring = &datum.ring;
    let g = &ring.group;
    let table = datum.table();
    let mut values = Vec::with_capacity(table.chars.len());
    let mut components = Vec::new();
    for chi in &table.chars {
        let chk = chi.contragredient(g);
        let par = parity(g, chi, datum.j.elem)?;
        let fp = chk.fingerprint();
        if par == Parity::Even {
            // even components vanish at s = 0 for CM data with S
            // containing the archimedean places
            values.push(Cyclotomic::zero());
            components.push(ComponentReport {
                fingerprint: chi.fingerprint(),
                degree: chi.degree_usize(),
                parity: par,
                provenance: "even-character vanishing".into(),
                delta_t: "1".into(),
                l_value_s_truncated: "0".into(),
                component: "0".into(),
            });
            continue;
        }
        // odd: primitive L-value of the contragredient
        let (l_primitive, provenance) = match datum.lvalues.get(&fp) {
            Some(LValueSource::Dirichlet(dchi)) => {
                if !chk.is_linear() || !datum.base_is_q {
                    return Err(LvalError::DirichletNotApplicable {
                        fingerprint: fp,
                        degree: chk.degree_usize(),
                    });
                }
                validate_dirichlet_against_places(datum, &chk, dchi, &fp)?;
                (
                    bernoulli_l0(dchi)?,
                    "computed (generalised Bernoulli)".to_string(),
                )
            }
            Some(LValueSource::Exact {
                value,
                source,
                source_hash,
            }) => (
                value.clone(),
                format!("ingested ({source}, hash {source_hash})"),
            ),
            Some(LValueSource::PAdic { .. }) | None => {
                return Err(LvalError::MissingLValue {
                    fingerprint: fp,
                    degree: chk.degree_usize(),
                });
            }
        };
        // S-truncation Euler factors on the contragredient
        let mut l_s = l_primitive;
        for place in datum.s_places() {
            let f = euler_factor_at_zero(ring, &chk, place, EulerShift::Truncation)?;
            l_s = l_s.mul(&f);
        }
        // T-smoothing on chi itself
        let mut delta = Cyclotomic::one();
        if use_t {
            for place in datum.t_places() {
                let f = euler_factor_at_zero(ring, chi, place, EulerShift::Smoothing)?;
                delta = delta.mul(&f);
            }
        }
        let comp = delta.mul(&l_s);
        components.push(ComponentReport {
            fingerprint: chi.fingerprint(),
            degree: chi.degree_usize(),
            parity: par,
            provenance,
            delta_t: format!("{delta}"),
            l_value_s_truncated: format!("{l_s}"),
            component: format!("{comp}"),
        });
        values.push(comp);
    }
    let theta = CenterElement { values };
    let class_sums = ring.center_to_class_sums(&theta);
    // Galois-equivariance: rational class-sum coordinates
    for c in &class_sums {
        if c.clone().reduce_conductor().as_rational().is_none() {
            return Err(LvalError::NotRational);
        }
    }
    Ok(StickelbergerResult {
        theta,
        class_sums,
        components,
    })
}

fn validate_dirichlet_against_places(
    datum: &ExtensionDatum,
    chk: &Character,
    dchi: &crate::dirichlet::DirichletCharacter,
    fp: &str,
) -> Result<(), LvalError> {
    let g = &datum.group;
    for place in &datum.places {
        if place.inertia.order() > 1 {
            continue; // ramified for the extension; no Frobenius comparison
        }
        if place.norm.gcd(&dchi.modulus) != 1 {
            continue;
        }
        // unramified linear character: value at Frobenius must match the
        // Dirichlet value at the norm
        let ker = chk.kernel(g);
        if !place.inertia.members.iter().all(|m| ker.contains(m)) {
            continue;
        }
        let expected = &chk.values[g.class_of(place.frobenius)];
        let got = dchi.value(place.norm % dchi.modulus);
        if expected != got {
            return Err(LvalError::InconsistentDirichlet {
                fingerprint: fp.to_string(),
                place: place.label.clone(),
                expected: format!("{expected}"),
                got: format!("{got}"),
            });
        }
    }
    Ok(())
}

#[derive(Debug)]
pub struct PadicStickelbergerResult {
    pub theta: CenterElement,
    pub provenance: String,
    pub components: Vec<ComponentReport>,
}

/// theta_{p,S}^T: equal to theta_S^T when the plus part G/<j> is
/// monomial (identity path); otherwise assembled from ingested p-adic
/// certificates, one per odd character.
pub fn p_adic_stickelberger(
    datum: &ExtensionDatum,
    p: u64,
    subgroup_bound: usize,
) -> Result<PadicStickelbergerResult, LvalError> {
    if p < 3 || !is_prime(p) {
        return Err(LvalError::BadPrime(p));
    }
    if !datum
        .places
        .iter()
        .any(|pl| pl.in_s && pl.residue_char == p)
    {
        return Err(LvalError::MissingPPlace(p));
    }
    // plus part G+ = G / <j>
    let g = &datum.group;
    let jsub = g.subgroup(&[datum.j.elem]);
    let (gplus, _proj) = g.quotient(&jsub)?;
    let tplus = crate::chartab::character_table(&gplus)?;
    let monom = crate::chartab::is_monomial(&gplus, &tplus, subgroup_bound)?;
    if monom.monomial {
        let complex = stickelberger(datum, true)?;
        return Ok(PadicStickelbergerResult {
            theta: complex.theta,
            provenance: "identity with the complex element (monomial plus part)".into(),
            components: complex.components,
        });
    }
    // certificate path
    let ring = &datum.ring;
    let table = datum.table();
    let mut values = Vec::with_capacity(table.chars.len());
    let mut components = Vec::new();
    for chi in &table.chars {
        let par = parity(g, chi, datum.j.elem)?;
        if par == Parity::Even {
            values.push(Cyclotomic::zero());
            continue;
        }
        let chk = chi.contragredient(g);
        let fp = chk.fingerprint();
        let Some(LValueSource::PAdic {
            value,
            source,
            source_hash,
            p: cert_p,
        }) = datum.lvalues.get(&fp)
        else {
            return Err(LvalError::NonMonomialNeedsCertificates);
        };
        if *cert_p != p {
            return Err(LvalError::NonMonomialNeedsCertificates);
        }
        let mut delta = Cyclotomic::one();
        for place in datum.t_places() {
            delta = delta.mul(&euler_factor_at_zero(
                ring,
                chi,
                place,
                EulerShift::Smoothing,
            )?);
        }
        let comp = delta.mul(value);
        components.push(ComponentReport {
            fingerprint: chi.fingerprint(),
            degree: chi.degree_usize(),
            parity: par,
            provenance: format!("ingested p-adic ({source}, hash {source_hash})"),
            delta_t: format!("{delta}"),
            l_value_s_truncated: format!("{value}"),
            component: format!("{comp}"),
        });
        values.push(comp);
    }
    Ok(PadicStickelbergerResult {
        theta: CenterElement { values },
        provenance: "assembled from ingested p-adic certificates".into(),
        components,
    })
}

// ---------------------------------------------------------------------------
// Integrality reporting
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Serialize, Deserialize)]
pub enum IntegralityLattice {
    /// coefficients in Z (element of Z[G])
    IntegralGroupRing,
    /// coefficients p-integral
    PIntegral { p: u64 },
    /// membership in the sampled nr-sublattice of I(G) at p, precision k
    NrSample {
        p: u64,
        k: u32,
        count_per_size: usize,
    },
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct IntegralityReport {
    pub lattice: IntegralityLattice,
    pub pass: bool,
    pub detail: Vec<String>,
}

pub fn integrality_report(
    ring: &QGRing,
    theta: &CenterElement,
    lattice: &IntegralityLattice,
) -> Result<IntegralityReport, LvalError> {
    let coords = ring.center_to_class_sums(theta);
    match lattice {
        IntegralityLattice::IntegralGroupRing => {
            let mut detail = Vec::new();
            let mut pass = true;
            for (ci, c) in coords.iter().enumerate() {
                let c = c.clone().reduce_conductor();
                if !c.is_integral() {
                    pass = false;
                    detail.push(format!("class {ci}: coefficient {c} is not an integer"));
                }
            }
            if pass {
                detail.push("all class-sum coefficients are integers".into());
            }
            Ok(IntegralityReport {
                lattice: lattice.clone(),
                pass,
                detail,
            })
        }
        IntegralityLattice::PIntegral { p } => {
            let mut detail = Vec::new();
            let mut pass = true;
            for (ci, c) in coords.iter().enumerate() {
                if !c.denominators_prime_to(*p) {
                    pass = false;
                    detail.push(format!(
                        "class {ci}: coefficient has denominator divisible by {p}"
                    ));
                }
            }
            if pass {
                detail.push(format!("all class-sum coefficients are {p}-integral"));
            }
            Ok(IntegralityReport {
                lattice: lattice.clone(),
                pass,
                detail,
            })
        }
        IntegralityLattice::NrSample {
            p,
            k,
            count_per_size,
        } => {
            let amb = FittingAmbient::full(ring.clone(), *p, *k)?;
            let gens = crate::fitting::sample_nr_lattice(ring, *count_per_size)?;
            let lat = amb.lattice_from_exact(&gens).map_err(FittError::from)?;
            match amb.reduce_center(theta) {
                Ok(v) => {
                    let pass = lat.contains(&v);
                    Ok(IntegralityReport {
                        lattice: lattice.clone(),
                        pass,
                        detail: vec![format!(
                            "membership in the nr-sample sublattice over {} generators",
                            gens.len()
                        )],
                    })
                }
                Err(e) => Ok(IntegralityReport {
                    lattice: lattice.clone(),
                    pass: false,
                    detail: vec![format!("element does not reduce mod p^k: {e}")],
                }),
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::extension::{ExtensionInput, LValueInput};
    use crate::group::symmetric;
    use std::sync::Arc;

    pub fn qzeta3_datum() -> ExtensionDatum {
        let mut input: ExtensionInput = serde_json::from_str(
            r#"{
            "name": "qzeta3",
            "group": {"degree": 2, "generators": ["(1 2)"], "j": "(1 2)"},
            "base_field": "Q",
            "mu_order": 6,
            "infinite_places": 1,
            "places": [
                {"label": "3", "norm": 3, "frobenius": "()", "inertia": ["(1 2)"], "in_s": true},
                {"label": "5", "norm": 5, "frobenius": "(1 2)", "in_t": true}
            ]
        }"#,
        )
        .unwrap();
        let datum0 = ExtensionDatum::resolve(&input).unwrap();
        let odd = datum0
            .table()
            .chars
            .iter()
            .find(|c| c.values[1] == Cyclotomic::from_int(-1))
            .unwrap();
        input.lvalues.insert(
            odd.fingerprint(),
            LValueInput::Kronecker { discriminant: -3 },
        );
        ExtensionDatum::resolve(&input).unwrap()
    }

    pub fn qsqrt23_datum(with_t: bool) -> ExtensionDatum {
        let places = if with_t {
            r#"[
                {"label": "23", "norm": 23, "frobenius": "()", "inertia": ["(1 2)"], "in_s": true},
                {"label": "3", "norm": 3, "frobenius": "()", "in_t": true}
            ]"#
        } else {
            r#"[
                {"label": "23", "norm": 23, "frobenius": "()", "inertia": ["(1 2)"], "in_s": true}
            ]"#
        };
        let json = format!(
            r#"{{
            "name": "qsqrt-23",
            "group": {{"degree": 2, "generators": ["(1 2)"], "j": "(1 2)"}},
            "base_field": "Q",
            "mu_order": 2,
            "infinite_places": 1,
            "places": {places}
        }}"#
        );
        let mut input: ExtensionInput = serde_json::from_str(&json).unwrap();
        let datum0 = ExtensionDatum::resolve(&input).unwrap();
        let odd = datum0
            .table()
            .chars
            .iter()
            .find(|c| c.values[1] == Cyclotomic::from_int(-1))
            .unwrap();
        input.lvalues.insert(
            odd.fingerprint(),
            LValueInput::Kronecker { discriminant: -23 },
        );
        ExtensionDatum::resolve(&input).unwrap()
    }

    #[test]
    fn euler_factor_examples() {
        // trivial character, q = 5, trivial inertia: 1 - 5 = -4
        let datum = qzeta3_datum();
        let ring = &datum.ring;
        let table = datum.table();
        let triv = &table.chars[table.trivial_index()];
        let t_place = datum.t_places()[0].clone();
        let f = euler_factor_at_zero(ring, triv, &t_place, EulerShift::Smoothing).unwrap();
        assert_eq!(f, Cyclotomic::from_int(-4));
        // fully ramified place: V^I = 0, factor 1 (odd character at 3)
        let odd = table
            .chars
            .iter()
            .find(|c| c.values[1] == Cyclotomic::from_int(-1))
            .unwrap();
        let s_place = datum.s_places()[0].clone();
        let f2 = euler_factor_at_zero(ring, odd, &s_place, EulerShift::Truncation).unwrap();
        assert!(f2.is_one());
    }

    #[test]
    fn euler_factor_s3_two_dimensional() {
        // 2-dim character of S3, Frobenius a 3-cycle, q = 2:
        // (1 - 2 z3)(1 - 2 z3^2) = 7
        let g = Arc::new(symmetric(3));
        let t = crate::chartab::character_table(&g).unwrap();
        let ring = QGRing::new(g.clone(), Arc::new(t));
        let two = ring
            .table
            .chars
            .iter()
            .find(|c| c.degree_usize() == 2)
            .unwrap();
        let c3 = g
            .id_of(&crate::perm::Perm::parse("(1 2 3)", 3).unwrap())
            .unwrap();
        let place = PlaceDatum {
            label: "2".into(),
            norm: 2,
            residue_char: 2,
            frobenius: c3,
            inertia: g.trivial_subgroup(),
            in_s: false,
            in_t: true,
        };
        let f = euler_factor_at_zero(&ring, two, &place, EulerShift::Smoothing).unwrap();
        assert_eq!(f, Cyclotomic::from_int(7));
    }

    #[test]
    fn stickelberger_qzeta3() {
        // theta_S^T(Q(zeta_3)/Q, S = {oo, 3}, T = {5}) = 1 - j
        let datum = qzeta3_datum();
        let res = stickelberger(&datum, true).unwrap();
        let elem = datum.ring.center_to_element(&res.theta);
        let expect = datum.ring.sub(&datum.ring.one(), &datum.ring.basis(1));
        assert_eq!(elem, expect);
        // integrality: in Z[C2]
        let report = integrality_report(
            &datum.ring,
            &res.theta,
            &IntegralityLattice::IntegralGroupRing,
        )
        .unwrap();
        assert!(report.pass);
    }

    #[test]
    fn stickelberger_qsqrt23() {
        // theta_S = (3/2)(1 - j): fails Z[G]-integrality
        let datum = qsqrt23_datum(false);
        let res = stickelberger(&datum, false).unwrap();
        let coeffs = &res.class_sums;
        assert_eq!(coeffs[0], Cyclotomic::from_rat(rat(3, 2)));
        assert_eq!(coeffs[1], Cyclotomic::from_rat(rat(-3, 2)));
        let report = integrality_report(
            &datum.ring,
            &res.theta,
            &IntegralityLattice::IntegralGroupRing,
        )
        .unwrap();
        assert!(!report.pass);
        // with T = {3}: theta_S^T = -3(1 - j), integral
        let datum_t = qsqrt23_datum(true);
        let res_t = stickelberger(&datum_t, true).unwrap();
        let elem = datum_t.ring.center_to_element(&res_t.theta);
        let minus3 = datum_t.ring.scale(
            &datum_t
                .ring
                .sub(&datum_t.ring.one(), &datum_t.ring.basis(1)),
            &Cyclotomic::from_int(-3),
        );
        assert_eq!(elem, minus3);
        let report_t = integrality_report(
            &datum_t.ring,
            &res_t.theta,
            &IntegralityLattice::IntegralGroupRing,
        )
        .unwrap();
        assert!(report_t.pass);
    }

    #[test]
    fn p_adic_identity_path() {
        // C2 has trivial plus part (monomial): identity path applies.
        // Need a p-place in S: use Q(sqrt(-23)) with p = 23? 23 is odd
        // and in S; p = 23 is prime.
        let datum = qsqrt23_datum(true);
        let res = p_adic_stickelberger(&datum, 23, 100).unwrap();
        let complex = stickelberger(&datum, true).unwrap();
        assert_eq!(res.theta, complex.theta);
        assert!(res.provenance.contains("identity"));
        // missing p-place
        assert!(matches!(
            p_adic_stickelberger(&datum, 5, 100),
            Err(LvalError::MissingPPlace(5))
        ));
    }

    #[test]
    fn missing_lvalue_is_actionable() {
        let mut input: ExtensionInput = serde_json::from_str(
            r#"{
            "name": "no-lvalue",
            "group": {"degree": 2, "generators": ["(1 2)"], "j": "(1 2)"},
            "base_field": "Q",
            "mu_order": 2,
            "infinite_places": 1,
            "places": [
                {"label": "23", "norm": 23, "frobenius": "()", "inertia": ["(1 2)"], "in_s": true}
            ]
        }"#,
        )
        .unwrap();
        input.lvalues.clear();
        let datum = ExtensionDatum::resolve(&input).unwrap();
        assert!(matches!(
            stickelberger(&datum, false),
            Err(LvalError::MissingLValue { .. })
        ));
    }

    #[test]
    fn inconsistent_dirichlet_rejected() {
        // wire chi_{-3} onto the qsqrt23 data: Frobenius values disagree
        // at the split prime 3... use a T-place with norm 5 instead
        let mut input: ExtensionInput = serde_json::from_str(
            r#"{
            "name": "bad",
            "group": {"degree": 2, "generators": ["(1 2)"], "j": "(1 2)"},
            "base_field": "Q",
            "mu_order": 6,
            "infinite_places": 1,
            "places": [
                {"label": "3", "norm": 3, "frobenius": "()", "inertia": ["(1 2)"], "in_s": true},
                {"label": "7", "norm": 7, "frobenius": "(1 2)", "in_t": true}
            ]
        }"#,
        )
        .unwrap();
        // chi_{-3}(7) = chi(1) = 1, but the declared Frobenius at 7 is j
        // with character value -1: inconsistent
        let datum0 = ExtensionDatum::resolve(&input).unwrap();
        let odd = datum0
            .table()
            .chars
            .iter()
            .find(|c| c.values[1] == Cyclotomic::from_int(-1))
            .unwrap();
        input.lvalues.insert(
            odd.fingerprint(),
            LValueInput::Kronecker { discriminant: -3 },
        );
        let datum = ExtensionDatum::resolve(&input).unwrap();
        assert!(matches!(
            stickelberger(&datum, true),
            Err(LvalError::InconsistentDirichlet { .. })
        ));
    }

    #[test]
    fn non_monomial_plus_part_needs_certificates() {
        // G = SL(2,3) x C2 with j the C2 factor: plus part SL(2,3) is
        // not monomial, so without p-adic certificates the assembly must
        // refuse with an actionable error
        let sl = crate::group::sl2_3();
        let g = crate::group::direct_product(&sl, &crate::group::cyclic(2));
        let jperm = "(9 10)";
        let gens: Vec<String> = g.generators().iter().map(|p| p.cycle_string()).collect();
        let input = ExtensionInput {
            name: "sl23-cm".into(),
            group: crate::group::GroupInput {
                degree: g.degree(),
                generators: gens,
                j: Some(jperm.into()),
            },
            base_field: "Q".into(),
            mu_order: 2,
            infinite_places: 1,
            places: vec![crate::extension::PlaceInput {
                label: "5".into(),
                norm: 5,
                frobenius: "()".into(),
                inertia: vec![],
                in_s: true,
                in_t: false,
            }],
            lvalues: Default::default(),
            class_group: None,
            ray_class_minus: None,
            assumptions: vec![],
        };
        let datum = ExtensionDatum::resolve(&input).unwrap();
        match p_adic_stickelberger(&datum, 5, 300) {
            Err(LvalError::NonMonomialNeedsCertificates) => {}
            other => panic!("expected certificate error, got {other:?}"),
        }
    }

    #[test]
    fn totally_real_gives_zero() {
        // totally real field: complex conjugation is the identity, all
        // characters are even, and the element vanishes outright
        let input: ExtensionInput = serde_json::from_str(
            r#"{
            "name": "real-quadratic",
            "group": {"degree": 2, "generators": ["(1 2)"], "j": "()"},
            "base_field": "Q",
            "mu_order": 2,
            "infinite_places": 2,
            "places": [
                {"label": "5", "norm": 5, "frobenius": "()", "inertia": ["(1 2)"], "in_s": true}
            ]
        }"#,
        )
        .unwrap();
        let datum = ExtensionDatum::resolve(&input).unwrap();
        let res = stickelberger(&datum, false).unwrap();
        assert!(res.theta.is_zero());
        assert!(res.class_sums.iter().all(|c| c.is_zero()));
        // even components of a CM datum vanish as well
        let datum = qzeta3_datum();
        let res = stickelberger(&datum, true).unwrap();
        let table = datum.table();
        let triv = table.trivial_index();
        assert!(res.theta.values[triv].is_zero());
    }
}
