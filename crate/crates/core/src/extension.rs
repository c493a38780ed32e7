//! The arithmetic input bundle for a CM-extension: group with complex
//! conjugation, place data (norms, Frobenius lifts, inertia), roots of
//! unity, L-value sources keyed by character fingerprint, class-group
//! modules, and free-form assumption records.
//!
//! JSON is validated up front; every violation is reported with a
//! pointer-style path to the offending field.

use crate::chartab::{character_table, CharacterTable};
use crate::cyclotomic::{Cyclotomic, Rat};
use crate::dirichlet::DirichletCharacter;
use crate::gmodule::{GModule, GModuleInput};
use crate::group::{is_prime, CentralInvolution, ElemId, FiniteGroup, GroupInput, SubgroupHandle};
use crate::perm::Perm;
use crate::ring::QGRing;
use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::str::FromStr;
use std::sync::Arc;

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PlaceInput {
    pub label: String,
    pub norm: u64,
    pub frobenius: String,
    #[serde(default)]
    pub inertia: Vec<String>,
    #[serde(default)]
    pub in_s: bool,
    #[serde(default)]
    pub in_t: bool,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "type")]
pub enum LValueInput {
    /// quadratic character of a fundamental discriminant; value computed
    /// natively
    #[serde(rename = "kronecker")]
    Kronecker { discriminant: i64 },
    /// explicit character values chi(a) = zeta_order^(exponents[a]);
    /// null marks non-units
    #[serde(rename = "dirichlet")]
    Dirichlet {
        modulus: u64,
        order: u64,
        exponents: Vec<Option<i64>>,
    },
    /// ingested exact complex L-value at 0 (primitive L-function)
    #[serde(rename = "value")]
    Value {
        conductor: u64,
        coeffs: Vec<String>,
        source: String,
    },
    /// ingested p-adic L-value certificate L_p(0, contragredient * omega)
    #[serde(rename = "p_adic_value")]
    PAdicValue {
        conductor: u64,
        coeffs: Vec<String>,
        source: String,
        p: u64,
    },
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ExtensionInput {
    pub name: String,
    pub group: GroupInput,
    /// "Q" enables the native Dirichlet L-value path and the
    /// automatic-abelianity rules of the classifier
    pub base_field: String,
    pub mu_order: u64,
    pub infinite_places: usize,
    pub places: Vec<PlaceInput>,
    #[serde(default)]
    pub lvalues: BTreeMap<String, LValueInput>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub class_group: Option<GModuleInput>,
    /// the minus part of the T-ray class group at the working prime
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ray_class_minus: Option<GModuleInput>,
    #[serde(default)]
    pub assumptions: Vec<String>,
}

/// A validated, resolved extension datum.
#[derive(Debug)]
pub struct ExtensionDatum {
    pub name: String,
    pub group: Arc<FiniteGroup>,
    pub j: CentralInvolution,
    pub ring: QGRing,
    pub base_is_q: bool,
    pub mu_order: u64,
    pub infinite_places: usize,
    pub places: Vec<PlaceDatum>,
    pub lvalues: BTreeMap<String, LValueSource>,
    pub class_group: Option<GModule>,
    pub ray_class_minus: Option<GModule>,
    pub assumptions: Vec<String>,
}

#[derive(Debug, Clone)]
pub struct PlaceDatum {
    pub label: String,
    pub norm: u64,
    pub residue_char: u64,
    pub frobenius: ElemId,
    pub inertia: SubgroupHandle,
    pub in_s: bool,
    pub in_t: bool,
}

#[derive(Debug, Clone)]
pub enum LValueSource {
    Dirichlet(DirichletCharacter),
    Exact {
        value: Cyclotomic,
        source: String,
        source_hash: String,
    },
    PAdic {
        value: Cyclotomic,
        source: String,
        source_hash: String,
        p: u64,
    },
}

fn fnv_hex(s: &str) -> String {
    let mut h = 0xcbf29ce484222325u64;
    for b in s.as_bytes() {
        h ^= *b as u64;
        h = h.wrapping_mul(0x100000001b3);
    }
    format!("{h:016x}")
}

fn residue_char_of(norm: u64) -> Option<u64> {
    if norm < 2 {
        return None;
    }
    let mut p = 2u64;
    while p * p <= norm {
        if norm % p == 0 {
            let mut n = norm;
            while n % p == 0 {
                n /= p;
            }
            return if n == 1 { Some(p) } else { None };
        }
        p += 1;
    }
    Some(norm)
}

fn parse_cyclotomic(
    conductor: u64,
    coeffs: &[String],
    path: &str,
    errors: &mut Vec<String>,
) -> Cyclotomic {
    let phi = crate::cyclotomic::euler_phi(conductor) as usize;
    if coeffs.len() != phi {
        errors.push(format!(
            "{path}/coeffs: expected phi({conductor}) = {phi} coefficients, got {}",
            coeffs.len()
        ));
        return Cyclotomic::zero();
    }
    let mut acc = Cyclotomic::zero();
    for (i, s) in coeffs.iter().enumerate() {
        let r = match parse_rational(s) {
            Some(r) => r,
            None => {
                errors.push(format!("{path}/coeffs/{i}: not a rational: \"{s}\""));
                continue;
            }
        };
        let term = Cyclotomic::root_of_unity(conductor, i as i64).scale(&r);
        acc = acc.add(&term);
    }
    acc
}

pub fn parse_rational(s: &str) -> Option<Rat> {
    let s = s.trim();
    if let Some((n, d)) = s.split_once('/') {
        let num = BigInt::from_str(n.trim()).ok()?;
        let den = BigInt::from_str(d.trim()).ok()?;
        if den == BigInt::from(0) {
            return None;
        }
        Some(Rat::new(num, den))
    } else {
        Some(Rat::from_integer(BigInt::from_str(s).ok()?))
    }
}

impl ExtensionDatum {
    /// Validate and resolve an input bundle; all schema violations are
    /// collected with pointer paths before any computation.
    pub fn resolve(input: &ExtensionInput) -> Result<ExtensionDatum, Vec<String>> {
        let mut errors = Vec::new();
        if input.group.j.is_none() {
            errors.push("/group/j: CM data requires the central involution j".into());
        }
        let parsed = FiniteGroup::from_input(&input.group);
        let (group, j) = match parsed {
            Ok((g, j)) => (Arc::new(g), j),
            Err(e) => {
                errors.push(format!("/group: {e}"));
                return Err(errors);
            }
        };
        let j = match j {
            Some(j) => j,
            None => {
                return Err(errors);
            }
        };
        let table = match character_table(&group) {
            Ok(t) => Arc::new(t),
            Err(e) => {
                errors.push(format!("/group: character table failed: {e}"));
                return Err(errors);
            }
        };
        let ring = QGRing::new(group.clone(), table.clone());
        if input.mu_order == 0 || input.mu_order % 2 != 0 {
            errors.push(format!(
                "/mu_order: a CM-field has an even number of roots of unity, got {}",
                input.mu_order
            ));
        }
        if input.infinite_places == 0 {
            errors.push("/infinite_places: at least one archimedean place".into());
        }
        let mut places = Vec::new();
        for (i, p) in input.places.iter().enumerate() {
            let path = format!("/places/{i}");
            let Some(residue_char) = residue_char_of(p.norm) else {
                errors.push(format!("{path}/norm: {} is not a prime power >= 2", p.norm));
                continue;
            };
            let frobenius = match Perm::parse(&p.frobenius, group.degree()) {
                Ok(perm) => match group.id_of(&perm) {
                    Some(id) => id,
                    None => {
                        errors.push(format!(
                            "{path}/frobenius: permutation is not a group element"
                        ));
                        continue;
                    }
                },
                Err(e) => {
                    errors.push(format!("{path}/frobenius: {e}"));
                    continue;
                }
            };
            let mut inertia_gens = Vec::new();
            let mut bad = false;
            for (k, s) in p.inertia.iter().enumerate() {
                match Perm::parse(s, group.degree())
                    .ok()
                    .and_then(|q| group.id_of(&q))
                {
                    Some(id) => inertia_gens.push(id),
                    None => {
                        errors.push(format!("{path}/inertia/{k}: not a group element: \"{s}\""));
                        bad = true;
                    }
                }
            }
            if bad {
                continue;
            }
            let inertia = group.subgroup(&inertia_gens);
            // Frobenius must normalise the inertia subgroup
            let normalises = inertia
                .members
                .iter()
                .all(|&m| inertia.contains(group.conjugate(frobenius, m)));
            if !normalises {
                errors.push(format!(
                    "{path}: frobenius does not normalise the inertia subgroup"
                ));
            }
            if p.in_s && p.in_t {
                errors.push(format!("{path}: place flagged in both S and T"));
            }
            if p.in_t && inertia.order() > 1 {
                errors.push(format!(
                    "{path}: T-places must be unramified (trivial inertia)"
                ));
            }
            places.push(PlaceDatum {
                label: p.label.clone(),
                norm: p.norm,
                residue_char,
                frobenius,
                inertia,
                in_s: p.in_s,
                in_t: p.in_t,
            });
        }
        // L-value sources
        let mut lvalues = BTreeMap::new();
        for (key, lv) in &input.lvalues {
            let path = format!("/lvalues/{key}");
            match lv {
                LValueInput::Kronecker { discriminant } => {
                    match DirichletCharacter::kronecker(*discriminant) {
                        Ok(chi) => {
                            lvalues.insert(key.clone(), LValueSource::Dirichlet(chi));
                        }
                        Err(e) => errors.push(format!("{path}/discriminant: {e}")),
                    }
                }
                LValueInput::Dirichlet {
                    modulus,
                    order,
                    exponents,
                } => {
                    if exponents.len() != *modulus as usize {
                        errors.push(format!(
                            "{path}/exponents: length {} != modulus {modulus}",
                            exponents.len()
                        ));
                        continue;
                    }
                    let values: Vec<Cyclotomic> = exponents
                        .iter()
                        .map(|e| match e {
                            None => Cyclotomic::zero(),
                            Some(k) => Cyclotomic::root_of_unity(*order, *k),
                        })
                        .collect();
                    match DirichletCharacter::new(*modulus, values) {
                        Ok(chi) => {
                            lvalues.insert(key.clone(), LValueSource::Dirichlet(chi));
                        }
                        Err(e) => errors.push(format!("{path}: {e}")),
                    }
                }
                LValueInput::Value {
                    conductor,
                    coeffs,
                    source,
                } => {
                    let value = parse_cyclotomic(*conductor, coeffs, &path, &mut errors);
                    lvalues.insert(
                        key.clone(),
                        LValueSource::Exact {
                            value,
                            source: source.clone(),
                            source_hash: fnv_hex(source),
                        },
                    );
                }
                LValueInput::PAdicValue {
                    conductor,
                    coeffs,
                    source,
                    p,
                } => {
                    if !is_prime(*p) {
                        errors.push(format!("{path}/p: {p} is not prime"));
                    }
                    let value = parse_cyclotomic(*conductor, coeffs, &path, &mut errors);
                    lvalues.insert(
                        key.clone(),
                        LValueSource::PAdic {
                            value,
                            source: source.clone(),
                            source_hash: fnv_hex(source),
                            p: *p,
                        },
                    );
                }
            }
        }
        let class_group = match &input.class_group {
            None => None,
            Some(m) => match GModule::from_input(&group, m) {
                Ok(module) => Some(module),
                Err(e) => {
                    errors.push(format!("/class_group: {e}"));
                    None
                }
            },
        };
        let ray_class_minus = match &input.ray_class_minus {
            None => None,
            Some(m) => match GModule::from_input(&group, m) {
                Ok(module) => Some(module),
                Err(e) => {
                    errors.push(format!("/ray_class_minus: {e}"));
                    None
                }
            },
        };
        let j = match group.central_involution(j.elem) {
            Ok(j) => j,
            Err(e) => {
                errors.push(format!("/group/j: {e}"));
                return Err(errors);
            }
        };
        if !errors.is_empty() {
            return Err(errors);
        }
        Ok(ExtensionDatum {
            name: input.name.clone(),
            group,
            j,
            ring,
            base_is_q: input.base_field == "Q",
            mu_order: input.mu_order,
            infinite_places: input.infinite_places,
            places,
            lvalues,
            class_group,
            ray_class_minus,
            assumptions: input.assumptions.clone(),
        })
    }

    pub fn table(&self) -> &CharacterTable {
        &self.ring.table
    }

    pub fn s_places(&self) -> Vec<&PlaceDatum> {
        self.places.iter().filter(|p| p.in_s).collect()
    }

    pub fn t_places(&self) -> Vec<&PlaceDatum> {
        self.places.iter().filter(|p| p.in_t).collect()
    }

    /// |S| including the archimedean places.
    pub fn s_size(&self) -> usize {
        self.s_places().len() + self.infinite_places
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn qzeta3_json() -> ExtensionInput {
        serde_json::from_str(
            r#"{
            "name": "qzeta3",
            "group": {"degree": 2, "generators": ["(1 2)"], "j": "(1 2)"},
            "base_field": "Q",
            "mu_order": 6,
            "infinite_places": 1,
            "places": [
                {"label": "3", "norm": 3, "frobenius": "()", "inertia": ["(1 2)"], "in_s": true},
                {"label": "5", "norm": 5, "frobenius": "(1 2)", "in_t": true}
            ],
            "lvalues": {},
            "assumptions": []
        }"#,
        )
        .unwrap()
    }

    #[test]
    fn resolve_valid_input() {
        let mut input = qzeta3_json();
        // key the odd character's L-value by its fingerprint
        let datum = ExtensionDatum::resolve(&input).unwrap();
        let odd = datum
            .table()
            .chars
            .iter()
            .find(|c| c.values[1] == Cyclotomic::from_int(-1))
            .unwrap();
        let fp = odd.fingerprint();
        input
            .lvalues
            .insert(fp.clone(), LValueInput::Kronecker { discriminant: -3 });
        let datum = ExtensionDatum::resolve(&input).unwrap();
        assert_eq!(datum.s_size(), 2);
        assert_eq!(datum.t_places().len(), 1);
        assert!(matches!(
            datum.lvalues.get(&fp),
            Some(LValueSource::Dirichlet(_))
        ));
    }

    #[test]
    fn pointer_paths_on_errors() {
        let mut input = qzeta3_json();
        input.places[0].norm = 12; // not a prime power
        input.places[1].frobenius = "(1 3)".into(); // parse error
        input.mu_order = 5; // odd
        let errs = ExtensionDatum::resolve(&input).unwrap_err();
        assert!(errs.iter().any(|e| e.starts_with("/places/0/norm")));
        assert!(errs.iter().any(|e| e.starts_with("/places/1/frobenius")));
        assert!(errs.iter().any(|e| e.starts_with("/mu_order")));
    }

    #[test]
    fn t_place_with_inertia_rejected() {
        let mut input = qzeta3_json();
        input.places[1].inertia = vec!["(1 2)".into()];
        let errs = ExtensionDatum::resolve(&input).unwrap_err();
        assert!(errs
            .iter()
            .any(|e| e.contains("T-places must be unramified")));
    }

    #[test]
    fn missing_j_rejected() {
        let mut input = qzeta3_json();
        input.group.j = None;
        let errs = ExtensionDatum::resolve(&input).unwrap_err();
        assert!(errs.iter().any(|e| e.starts_with("/group/j")));
    }

    #[test]
    fn rational_parsing() {
        assert_eq!(parse_rational("3/4"), Some(crate::cyclotomic::rat(3, 4)));
        assert_eq!(parse_rational("-2"), Some(crate::cyclotomic::rat(-2, 1)));
        assert!(parse_rational("x").is_none());
        assert!(parse_rational("1/0").is_none());
    }
}
