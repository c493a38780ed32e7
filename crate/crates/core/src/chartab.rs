//! Exact complex character tables of finite groups.
//!
//! Tables are computed by Burnside's class-algebra eigenvector method,
//! run modulo a prime l = 1 (mod exp(G)) with l > 2|G| for speed, then
//! lifted to exact cyclotomic values via root-of-unity multiplicities
//! and re-verified exactly (row and column orthogonality, degree sum).
//!
//! Also provides the character operations the rest of the crate needs:
//! contragredients, parity against a central involution, induction /
//! inflation / restriction, monomiality with verified witnesses,
//! defect-zero tests.

use crate::cyclotomic::{rat, Cyclotomic, Rat};
use crate::group::{self, ElemId, FiniteGroup, GroupError, SubgroupHandle};
use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use std::collections::HashMap;
use std::str::FromStr;
use thiserror::Error;

pub const DEFAULT_CLASS_BOUND: usize = 64;

#[derive(Debug, Error)]
pub enum CharError {
    #[error("class count {0} exceeds bound {1}")]
    ClassBoundExceeded(usize, usize),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error("modular splitting failed to separate all characters")]
    SplitFailed,
    #[error("exact verification failed: {0}")]
    VerificationFailed(String),
    #[error("character is not irreducible: {0}")]
    NotIrreducible(String),
    #[error("import error: {0}")]
    Import(String),
}

/// An exact class function; for irreducibles, `values[c]` is the value on
/// conjugacy class `c` in the parent group's class order.
#[derive(Debug, Clone, PartialEq)]
pub struct Character {
    pub values: Vec<Cyclotomic>,
}

impl Character {
    pub fn degree(&self) -> &Cyclotomic {
        &self.values[0]
    }

    pub fn degree_usize(&self) -> usize {
        let r = self.values[0].as_rational().expect("degree is an integer");
        assert!(r.denom().is_one());
        r.numer()
            .to_string()
            .parse::<usize>()
            .expect("small degree")
    }

    /// Value on an element, via the class map.
    pub fn value_on(&self, g: &FiniteGroup, e: ElemId) -> &Cyclotomic {
        &self.values[g.class_of(e)]
    }

    pub fn is_linear(&self) -> bool {
        self.values[0].is_one()
    }

    /// chi_check(g) = chi(g^{-1}).
    pub fn contragredient(&self, g: &FiniteGroup) -> Character {
        let values = (0..g.num_classes())
            .map(|c| self.values[g.inverse_class(c)].clone())
            .collect();
        Character { values }
    }

    /// Kernel of the character: elements with chi(g) = chi(1).
    pub fn kernel(&self, g: &FiniteGroup) -> Vec<ElemId> {
        (0..g.order())
            .filter(|&e| self.values[g.class_of(e)] == self.values[0])
            .collect()
    }

    /// Canonical fingerprint string, stable across runs; used to key
    /// ingested per-character data.
    pub fn fingerprint(&self) -> String {
        let mut s = String::new();
        for v in &self.values {
            let v = v.clone().reduce_conductor();
            s.push_str(&format!("c{};", v.conductor()));
            for c in v.coeffs() {
                s.push_str(&format!("{c},"));
            }
            s.push('|');
        }
        format!("{:016x}", fnv64(s.as_bytes()))
    }
}

fn fnv64(bytes: &[u8]) -> u64 {
    let mut h = 0xcbf29ce484222325u64;
    for &b in bytes {
        h ^= b as u64;
        h = h.wrapping_mul(0x100000001b3);
    }
    h
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Parity {
    Even,
    Odd,
}

/// The full set of irreducible characters of a group, sorted by
/// (degree, lexicographic value vector).
#[derive(Debug, Clone)]
pub struct CharacterTable {
    pub chars: Vec<Character>,
    pub conductor: u64,
}

impl CharacterTable {
    pub fn num_chars(&self) -> usize {
        self.chars.len()
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.chars.iter().map(|c| c.degree_usize()).collect()
    }

    /// Index of the trivial character.
    pub fn trivial_index(&self) -> usize {
        self.chars
            .iter()
            .position(|c| c.values.iter().all(|v| v.is_one()))
            .expect("trivial character present")
    }

    /// Index of the contragredient of character `i`.
    pub fn contragredient_index(&self, g: &FiniteGroup, i: usize) -> usize {
        let cg = self.chars[i].contragredient(g);
        self.chars
            .iter()
            .position(|c| *c == cg)
            .expect("table closed under contragredient")
    }
}

/// Exact inner product of class functions.
pub fn inner_product(g: &FiniteGroup, a: &Character, b: &Character) -> Cyclotomic {
    let mut acc = Cyclotomic::zero();
    for (c, cls) in g.conjugacy_classes().iter().enumerate() {
        let term = a.values[c]
            .mul(&b.values[g.inverse_class(c)])
            .scale(&rat(cls.size() as i64, 1));
        acc = acc.add(&term);
    }
    acc.scale(&rat(1, g.order() as i64))
}

/// chi(j) = +-chi(1) for irreducible chi and central involution j.
pub fn parity(g: &FiniteGroup, chi: &Character, j: ElemId) -> Result<Parity, CharError> {
    let vj = &chi.values[g.class_of(j)];
    if *vj == *chi.degree() {
        Ok(Parity::Even)
    } else if *vj == chi.degree().neg() {
        Ok(Parity::Odd)
    } else {
        Err(CharError::NotIrreducible(
            "chi(j) != +-chi(1); input is not an irreducible character".into(),
        ))
    }
}

/// v_p(chi(1)) = v_p(|G|).
pub fn defect_zero(g: &FiniteGroup, chi: &Character, p: u64) -> bool {
    group::v_p(chi.degree_usize() as u64, p) == group::v_p(g.order() as u64, p)
}

// ---------------------------------------------------------------------------
// Table computation
// ---------------------------------------------------------------------------

pub fn character_table(g: &FiniteGroup) -> Result<CharacterTable, CharError> {
    character_table_bounded(g, DEFAULT_CLASS_BOUND)
}

pub fn character_table_bounded(
    g: &FiniteGroup,
    class_bound: usize,
) -> Result<CharacterTable, CharError> {
    let r = g.num_classes();
    if r > class_bound {
        return Err(CharError::ClassBoundExceeded(r, class_bound));
    }
    let e = g.exponent();
    let l = find_modulus(e, 2 * g.order() as u64 + 1);
    let f = Fp::new(l);
    // class algebra structure constants: a[i][j][k]
    let classes = g.conjugacy_classes();
    let mut a = vec![vec![vec![0u64; r]; r]; r];
    for i in 0..r {
        for &x in &classes[i].members {
            let xi = g.inv(x);
            for (k, ck) in classes.iter().enumerate() {
                let y = g.mul(xi, ck.representative);
                a[i][g.class_of(y)][k] += 1;
            }
        }
    }
    // class matrices A_i with (A_i)[j][k] = a[i][j][k]; the central
    // character vectors (w(C_k))_k are the common eigenvectors.
    let mut spaces: Vec<Vec<Vec<u64>>> = vec![identity_basis(r)];
    for mat in a.iter().skip(1) {
        if spaces.iter().all(|s| s.len() == 1) {
            break;
        }
        let candidates = charpoly_roots(&f, mat);
        let mut next = Vec::new();
        for basis in &spaces {
            if basis.len() == 1 {
                next.push(basis.clone());
                continue;
            }
            let rest = restrict_matrix(&f, mat, basis);
            let mut covered = 0usize;
            for &lam in &candidates {
                let ker = eigen_kernel(&f, &rest, lam);
                if ker.is_empty() {
                    continue;
                }
                covered += ker.len();
                let lifted: Vec<Vec<u64>> = ker
                    .iter()
                    .map(|kv| {
                        let mut v = vec![0u64; r];
                        for (t, &coef) in kv.iter().enumerate() {
                            for c in 0..r {
                                v[c] = f.add(v[c], f.mul(coef, basis[t][c]));
                            }
                        }
                        v
                    })
                    .collect();
                next.push(row_reduce(&f, lifted));
            }
            if covered != basis.len() {
                return Err(CharError::SplitFailed);
            }
        }
        spaces = next;
    }
    if spaces.len() != r || spaces.iter().any(|s| s.len() != 1) {
        return Err(CharError::SplitFailed);
    }
    // fixed generator of the e-th roots of unity in F_l
    let z = root_of_unity_mod(&f, e);
    let mut chars = Vec::with_capacity(r);
    for s in &spaces {
        let v = &s[0];
        if v[0] == 0 {
            return Err(CharError::SplitFailed);
        }
        let v0inv = f.inv(v[0]);
        let omega: Vec<u64> = v.iter().map(|&x| f.mul(x, v0inv)).collect();
        // degree from second orthogonality with itself:
        // |G| / chi(1)^2 = sum_j omega_j * omega_{j*} / |C_j|
        let mut srec = 0u64;
        for j in 0..r {
            let jinv = g.inverse_class(j);
            let t = f.mul(omega[j], omega[jinv]);
            srec = f.add(srec, f.mul(t, f.inv(classes[j].size() as u64 % l)));
        }
        let dsq = f.mul(g.order() as u64 % l, f.inv(srec));
        let mut deg = 0u64;
        let max_d = (g.order() as f64).sqrt() as u64 + 1;
        for d in 1..=max_d {
            if f.mul(d % l, d % l) == dsq {
                deg = d;
                break;
            }
        }
        if deg == 0 {
            return Err(CharError::SplitFailed);
        }
        // modular character values
        let chi_bar: Vec<u64> = (0..r)
            .map(|j| {
                f.mul(
                    deg % l,
                    f.mul(omega[j], f.inv(classes[j].size() as u64 % l)),
                )
            })
            .collect();
        // lift each value via root-of-unity multiplicities
        let mut values = Vec::with_capacity(r);
        for j in 0..r {
            let d_j = g.elem_order(classes[j].representative);
            let mut val = Cyclotomic::zero();
            let dinv = f.inv(d_j % l);
            for s_exp in 0..d_j {
                // mu_s = (1/d) sum_m chi(g^m) zeta_d^{-s m}
                let mut mu = 0u64;
                for m in 0..d_j {
                    let cls = g.power_class(j, m as i64);
                    let texp = (e / d_j * s_exp * m) % e;
                    mu = f.add(mu, f.mul(chi_bar[cls], f.pow(z, (e - texp) % e)));
                }
                mu = f.mul(mu, dinv);
                if mu == 0 {
                    continue;
                }
                if mu > deg {
                    return Err(CharError::VerificationFailed(format!(
                        "eigenvalue multiplicity {mu} exceeds degree {deg}"
                    )));
                }
                let zeta = Cyclotomic::root_of_unity(e, (e / d_j * s_exp) as i64);
                val = val.add(&zeta.scale(&rat(mu as i64, 1)));
            }
            values.push(val);
        }
        chars.push(Character { values });
    }
    chars.sort_by(|x, y| {
        let dx = x.degree_usize();
        let dy = y.degree_usize();
        dx.cmp(&dy).then_with(|| {
            for (a, b) in x.values.iter().zip(y.values.iter()) {
                match a.canonical_cmp(b) {
                    std::cmp::Ordering::Equal => continue,
                    o => return o,
                }
            }
            std::cmp::Ordering::Equal
        })
    });
    let table = CharacterTable {
        chars,
        conductor: e,
    };
    verify_table(g, &table)?;
    Ok(table)
}

/// Exact orthogonality verification of a computed table.
pub fn verify_table(g: &FiniteGroup, table: &CharacterTable) -> Result<(), CharError> {
    let r = g.num_classes();
    if table.chars.len() != r {
        return Err(CharError::VerificationFailed(format!(
            "{} characters for {} classes",
            table.chars.len(),
            r
        )));
    }
    // sum of squared degrees
    let mut s = 0usize;
    for c in &table.chars {
        let d = c.degree_usize();
        s += d * d;
    }
    if s != g.order() {
        return Err(CharError::VerificationFailed(format!(
            "sum of squared degrees {s} != |G| = {}",
            g.order()
        )));
    }
    // row orthogonality
    for (i, a) in table.chars.iter().enumerate() {
        for (j, b) in table.chars.iter().enumerate() {
            let ip = inner_product(g, a, b);
            let expect = if i == j {
                Cyclotomic::one()
            } else {
                Cyclotomic::zero()
            };
            if ip != expect {
                return Err(CharError::VerificationFailed(format!(
                    "<chi_{i}, chi_{j}> = {ip}"
                )));
            }
        }
    }
    // column orthogonality
    for ci in 0..r {
        for cj in 0..r {
            let mut acc = Cyclotomic::zero();
            for ch in &table.chars {
                acc = acc.add(&ch.values[ci].mul(&ch.values[g.inverse_class(cj)]));
            }
            let expect = if ci == cj {
                Cyclotomic::from_int((g.order() / g.conjugacy_classes()[ci].size()) as i64)
            } else {
                Cyclotomic::zero()
            };
            if acc != expect {
                return Err(CharError::VerificationFailed(format!(
                    "column orthogonality failed at ({ci},{cj})"
                )));
            }
        }
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// Induction / inflation / restriction
// ---------------------------------------------------------------------------

/// A subgroup realised as its own `FiniteGroup` together with both
/// element-id translations.
pub struct SubgroupContext {
    pub sub: FiniteGroup,
    pub to_parent: Vec<ElemId>,
    pub from_parent: HashMap<ElemId, ElemId>,
}

impl SubgroupContext {
    pub fn new(parent: &FiniteGroup, h: &SubgroupHandle) -> Self {
        let (sub, to_parent) = parent.subgroup_as_group(h);
        let from_parent = to_parent.iter().enumerate().map(|(s, &p)| (p, s)).collect();
        SubgroupContext {
            sub,
            to_parent,
            from_parent,
        }
    }
}

/// Induced class function: ind_U^G(lambda)(g) =
/// (1/|U|) sum_{x in G, x^{-1} g x in U} lambda(x^{-1} g x).
pub fn induce(g: &FiniteGroup, u: &SubgroupContext, lambda: &Character) -> Character {
    let mut values = Vec::with_capacity(g.num_classes());
    for cls in g.conjugacy_classes() {
        let rep = cls.representative;
        let mut acc = Cyclotomic::zero();
        for x in 0..g.order() {
            let c = g.conjugate(g.inv(x), rep);
            if let Some(&s) = u.from_parent.get(&c) {
                acc = acc.add(&lambda.values[u.sub.class_of(s)]);
            }
        }
        values.push(acc.scale(&rat(1, u.sub.order() as i64)));
    }
    Character { values }
}

/// Inflation along a quotient projection `proj: G -> Q` (as id map).
pub fn inflate(g: &FiniteGroup, q: &FiniteGroup, proj: &[ElemId], phi: &Character) -> Character {
    let values = g
        .conjugacy_classes()
        .iter()
        .map(|c| phi.values[q.class_of(proj[c.representative])].clone())
        .collect();
    Character { values }
}

/// Restriction of a class function on G to a subgroup context.
pub fn restrict(g: &FiniteGroup, u: &SubgroupContext, chi: &Character) -> Character {
    let values = u
        .sub
        .conjugacy_classes()
        .iter()
        .map(|c| chi.values[g.class_of(u.to_parent[c.representative])].clone())
        .collect();
    Character { values }
}

// ---------------------------------------------------------------------------
// Monomiality
// ---------------------------------------------------------------------------

#[derive(Debug, Clone)]
pub struct MonomialWitness {
    /// index into the character table
    pub char_index: usize,
    /// generators of the inducing subgroup (parent ids); the full group
    /// for linear characters
    pub subgroup_generators: Vec<ElemId>,
    /// values of the inducing linear character on the subgroup's classes
    pub lambda_values: Vec<Cyclotomic>,
}

#[derive(Debug)]
pub struct MonomialityReport {
    pub monomial: bool,
    pub witnesses: Vec<MonomialWitness>,
    /// for a non-monomial group, indices of characters with no witness
    pub failures: Vec<usize>,
}

/// Search induction witnesses (subgroup, linear character) for every
/// irreducible.  Exhaustive over subgroups up to conjugacy; honest but
/// exponential, guarded by `subgroup_bound` on |G|.
pub fn is_monomial(
    g: &FiniteGroup,
    table: &CharacterTable,
    subgroup_bound: usize,
) -> Result<MonomialityReport, CharError> {
    let mut witnesses = Vec::new();
    let mut failures = Vec::new();
    let nonlinear: Vec<usize> = (0..table.chars.len())
        .filter(|&i| !table.chars[i].is_linear())
        .collect();
    for i in 0..table.chars.len() {
        if table.chars[i].is_linear() {
            witnesses.push(MonomialWitness {
                char_index: i,
                subgroup_generators: g.generator_ids(),
                lambda_values: table.chars[i].values.clone(),
            });
        }
    }
    if nonlinear.is_empty() {
        return Ok(MonomialityReport {
            monomial: true,
            witnesses,
            failures,
        });
    }
    let subs = g.all_subgroups(subgroup_bound)?;
    let reps = conjugacy_representatives(g, subs);
    let mut cache: HashMap<Vec<ElemId>, (SubgroupContext, CharacterTable)> = HashMap::new();
    for &i in &nonlinear {
        let chi = &table.chars[i];
        let d = chi.degree_usize();
        let mut found = false;
        'subs: for h in reps.iter().filter(|h| h.index == d) {
            if !cache.contains_key(&h.members) {
                let ctx = SubgroupContext::new(g, h);
                let t = character_table(&ctx.sub)?;
                cache.insert(h.members.clone(), (ctx, t));
            }
            let (ctx, t) = cache.get(&h.members).unwrap();
            for lam in t.chars.iter().filter(|c| c.is_linear()) {
                let ind = induce(g, ctx, lam);
                if ind == *chi {
                    witnesses.push(MonomialWitness {
                        char_index: i,
                        subgroup_generators: h.members.clone(),
                        lambda_values: lam.values.clone(),
                    });
                    found = true;
                    break 'subs;
                }
            }
        }
        if !found {
            failures.push(i);
        }
    }
    Ok(MonomialityReport {
        monomial: failures.is_empty(),
        witnesses,
        failures,
    })
}

/// Re-verify a monomial witness by recomputation.
pub fn verify_witness(
    g: &FiniteGroup,
    table: &CharacterTable,
    w: &MonomialWitness,
) -> Result<bool, CharError> {
    let chi = &table.chars[w.char_index];
    if chi.is_linear() {
        return Ok(true);
    }
    let h = g.subgroup(&w.subgroup_generators);
    let ctx = SubgroupContext::new(g, &h);
    let lam = Character {
        values: w.lambda_values.clone(),
    };
    Ok(induce(g, &ctx, &lam) == *chi)
}

fn conjugacy_representatives(g: &FiniteGroup, subs: Vec<SubgroupHandle>) -> Vec<SubgroupHandle> {
    let mut seen: Vec<Vec<ElemId>> = Vec::new();
    let mut reps = Vec::new();
    for h in subs {
        if seen.contains(&h.members) {
            continue;
        }
        for x in 0..g.order() {
            let mut conj: Vec<ElemId> = h.members.iter().map(|&m| g.conjugate(x, m)).collect();
            conj.sort_unstable();
            if !seen.contains(&conj) {
                seen.push(conj);
            }
        }
        reps.push(h);
    }
    reps
}

// ---------------------------------------------------------------------------
// JSON export / import
// ---------------------------------------------------------------------------

#[derive(Debug, Serialize, Deserialize)]
pub struct CharacterTableJson {
    pub group_order: usize,
    pub conductor: u64,
    pub class_labels: Vec<String>,
    pub class_sizes: Vec<usize>,
    pub characters: Vec<CharacterJson>,
}

/// One character: degree plus, per class, the integer coefficient vector
/// of the value in the power basis of the table conductor (decimal
/// strings, bit-exact round trip).
#[derive(Debug, Serialize, Deserialize)]
pub struct CharacterJson {
    pub degree: usize,
    pub values: Vec<Vec<String>>,
}

pub fn export_table(g: &FiniteGroup, table: &CharacterTable) -> CharacterTableJson {
    let e = table.conductor;
    let characters = table
        .chars
        .iter()
        .map(|c| CharacterJson {
            degree: c.degree_usize(),
            values: c
                .values
                .iter()
                .map(|v| {
                    let lifted = v.lift_to(e);
                    lifted
                        .coeffs()
                        .iter()
                        .map(|r| {
                            assert!(r.denom().is_one() || r.numer().is_zero());
                            r.numer().to_string()
                        })
                        .collect()
                })
                .collect(),
        })
        .collect();
    CharacterTableJson {
        group_order: g.order(),
        conductor: e,
        class_labels: g
            .conjugacy_classes()
            .iter()
            .map(|c| g.element(c.representative).cycle_string())
            .collect(),
        class_sizes: g.conjugacy_classes().iter().map(|c| c.size()).collect(),
        characters,
    }
}

pub fn import_table(json: &CharacterTableJson) -> Result<CharacterTable, CharError> {
    let e = json.conductor;
    let phi = crate::cyclotomic::euler_phi(e) as usize;
    let mut chars = Vec::new();
    for cj in &json.characters {
        let mut values = Vec::new();
        for v in &cj.values {
            if v.len() != phi {
                return Err(CharError::Import(format!(
                    "coefficient vector length {} != phi({e}) = {phi}",
                    v.len()
                )));
            }
            let mut acc = Cyclotomic::zero();
            for (i, s) in v.iter().enumerate() {
                let n = BigInt::from_str(s)
                    .map_err(|_| CharError::Import(format!("bad integer \"{s}\"")))?;
                if n.is_zero() {
                    continue;
                }
                let term = Cyclotomic::root_of_unity(e, i as i64).scale(&Rat::from_integer(n));
                acc = acc.add(&term);
            }
            values.push(acc);
        }
        chars.push(Character { values });
    }
    Ok(CharacterTable {
        chars,
        conductor: e,
    })
}

// ---------------------------------------------------------------------------
// Arithmetic mod the Dixon prime
// ---------------------------------------------------------------------------

struct Fp {
    l: u64,
}

impl Fp {
    fn new(l: u64) -> Self {
        Fp { l }
    }
    fn add(&self, a: u64, b: u64) -> u64 {
        (a + b) % self.l
    }
    fn sub(&self, a: u64, b: u64) -> u64 {
        (a + self.l - b % self.l) % self.l
    }
    fn mul(&self, a: u64, b: u64) -> u64 {
        ((a as u128 * b as u128) % self.l as u128) as u64
    }
    fn pow(&self, mut b: u64, mut e: u64) -> u64 {
        let mut r = 1u64;
        b %= self.l;
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul(r, b);
            }
            b = self.mul(b, b);
            e >>= 1;
        }
        r
    }
    fn inv(&self, a: u64) -> u64 {
        self.pow(a, self.l - 2)
    }
}

fn find_modulus(e: u64, min: u64) -> u64 {
    let mut l = ((min / e) + 1) * e + 1;
    loop {
        if group::is_prime(l) {
            return l;
        }
        l += e;
    }
}

fn root_of_unity_mod(f: &Fp, e: u64) -> u64 {
    let g = primitive_root_mod(f.l);
    f.pow(g, (f.l - 1) / e)
}

fn primitive_root_mod(l: u64) -> u64 {
    let factors = group::prime_divisors(l - 1);
    let f = Fp::new(l);
    'outer: for g in 2..l {
        for &q in &factors {
            if f.pow(g, (l - 1) / q) == 1 {
                continue 'outer;
            }
        }
        return g;
    }
    unreachable!("primitive root exists")
}

fn identity_basis(r: usize) -> Vec<Vec<u64>> {
    (0..r)
        .map(|i| {
            let mut v = vec![0u64; r];
            v[i] = 1;
            v
        })
        .collect()
}

/// Matrix of the action of `mat` on the subspace spanned by `basis`
/// (basis assumed row-reduced): column t holds the coordinates of
/// mat * basis[t].
fn restrict_matrix(f: &Fp, mat: &[Vec<u64>], basis: &[Vec<u64>]) -> Vec<Vec<u64>> {
    let d = basis.len();
    let r = basis[0].len();
    let mut rest = vec![vec![0u64; d]; d];
    for (t, b) in basis.iter().enumerate() {
        let mut w = vec![0u64; r];
        for (row, wr) in w.iter_mut().enumerate() {
            let mut acc = 0u64;
            for c in 0..r {
                if mat[row][c] != 0 && b[c] != 0 {
                    acc = f.add(acc, f.mul(mat[row][c] % f.l, b[c]));
                }
            }
            *wr = acc;
        }
        let coords = express_in_basis(f, basis, &w).expect("invariant subspace");
        for s in 0..d {
            rest[s][t] = coords[s];
        }
    }
    rest
}

fn express_in_basis(f: &Fp, basis: &[Vec<u64>], w: &[u64]) -> Option<Vec<u64>> {
    let mut w = w.to_vec();
    let mut coords = vec![0u64; basis.len()];
    for (s, b) in basis.iter().enumerate() {
        let pivot = b.iter().position(|&x| x != 0)?;
        let c = f.mul(w[pivot], f.inv(b[pivot]));
        coords[s] = c;
        if c != 0 {
            for k in 0..w.len() {
                w[k] = f.sub(w[k], f.mul(c, b[k]));
            }
        }
    }
    if w.iter().all(|&x| x == 0) {
        Some(coords)
    } else {
        None
    }
}

fn row_reduce(f: &Fp, mut rows: Vec<Vec<u64>>) -> Vec<Vec<u64>> {
    let ncols = rows[0].len();
    let mut out: Vec<Vec<u64>> = Vec::new();
    for col in 0..ncols {
        let Some(pos) = rows.iter().position(|r| r[col] != 0) else {
            continue;
        };
        let mut pivot = rows.swap_remove(pos);
        let inv = f.inv(pivot[col]);
        for x in pivot.iter_mut() {
            *x = f.mul(*x, inv);
        }
        for r in rows.iter_mut() {
            if r[col] != 0 {
                let c = r[col];
                for k in 0..ncols {
                    r[k] = f.sub(r[k], f.mul(c, pivot[k]));
                }
            }
        }
        for r in out.iter_mut() {
            if r[col] != 0 {
                let c = r[col];
                for k in 0..ncols {
                    r[k] = f.sub(r[k], f.mul(c, pivot[k]));
                }
            }
        }
        out.push(pivot);
        if rows.is_empty() {
            break;
        }
    }
    out
}

/// Roots (in F_l) of the characteristic polynomial of an integer matrix.
fn charpoly_roots(f: &Fp, mat: &[Vec<u64>]) -> Vec<u64> {
    let n = mat.len();
    let m: Vec<Vec<u64>> = mat
        .iter()
        .map(|row| row.iter().map(|&x| x % f.l).collect())
        .collect();
    let cp = charpoly(f, &m);
    let mut roots = Vec::new();
    for x in 0..f.l {
        let mut acc = 0u64;
        for c in cp.iter().rev() {
            acc = f.add(f.mul(acc, x), *c);
        }
        if acc == 0 {
            roots.push(x);
            if roots.len() == n {
                break;
            }
        }
    }
    roots
}

/// Characteristic polynomial det(xI - M) over F_l via the Hessenberg
/// method; coefficients low-degree first.
fn charpoly(f: &Fp, mat: &[Vec<u64>]) -> Vec<u64> {
    let n = mat.len();
    let mut h: Vec<Vec<u64>> = mat.to_vec();
    for col in 0..n.saturating_sub(2) {
        let mut piv = None;
        for row in (col + 1)..n {
            if h[row][col] != 0 {
                piv = Some(row);
                break;
            }
        }
        let Some(piv) = piv else { continue };
        if piv != col + 1 {
            h.swap(piv, col + 1);
            for row in h.iter_mut() {
                row.swap(piv, col + 1);
            }
        }
        let inv = f.inv(h[col + 1][col]);
        for row in (col + 2)..n {
            if h[row][col] != 0 {
                let c = f.mul(h[row][col], inv);
                for k in 0..n {
                    let t = f.mul(c, h[col + 1][k]);
                    h[row][k] = f.sub(h[row][k], t);
                }
                for k in 0..n {
                    let t = f.mul(c, h[k][row]);
                    h[k][col + 1] = f.add(h[k][col + 1], t);
                }
            }
        }
    }
    // charpoly of the Hessenberg form via leading principal minors
    let mut polys: Vec<Vec<u64>> = vec![vec![1]];
    for k in 1..=n {
        let prev = polys[k - 1].clone();
        let mut p = vec![0u64; prev.len() + 1];
        for (i, &c) in prev.iter().enumerate() {
            p[i + 1] = f.add(p[i + 1], c);
            p[i] = f.sub(p[i], f.mul(h[k - 1][k - 1] % f.l, c));
        }
        let mut prod = 1u64;
        for i in 1..k {
            prod = f.mul(prod, h[k - i][k - i - 1]);
            if prod == 0 {
                break;
            }
            let coef = f.mul(h[k - 1 - i][k - 1], prod);
            if coef != 0 {
                let q = polys[k - 1 - i].clone();
                for (idx, &c) in q.iter().enumerate() {
                    p[idx] = f.sub(p[idx], f.mul(coef, c));
                }
            }
        }
        polys.push(p);
    }
    polys.pop().unwrap()
}

fn eigen_kernel(f: &Fp, rest: &[Vec<u64>], lam: u64) -> Vec<Vec<u64>> {
    let d = rest.len();
    let mut m: Vec<Vec<u64>> = rest.to_vec();
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = f.sub(row[i], lam);
    }
    let mut pivots: Vec<Option<usize>> = vec![None; d];
    let mut rank_rows: Vec<Vec<u64>> = Vec::new();
    for col in 0..d {
        let mut sel = None;
        for (ri, row) in m.iter().enumerate() {
            if row[col] != 0 && row[..col].iter().all(|&x| x == 0) {
                sel = Some(ri);
                break;
            }
        }
        let Some(sel) = sel else { continue };
        let row = m.remove(sel);
        let inv = f.inv(row[col]);
        let row: Vec<u64> = row.iter().map(|&x| f.mul(x, inv)).collect();
        for r in m.iter_mut() {
            if r[col] != 0 {
                let c = r[col];
                for k in 0..d {
                    r[k] = f.sub(r[k], f.mul(c, row[k]));
                }
            }
        }
        for r in rank_rows.iter_mut() {
            if r[col] != 0 {
                let c = r[col];
                for k in 0..d {
                    r[k] = f.sub(r[k], f.mul(c, row[k]));
                }
            }
        }
        pivots[col] = Some(rank_rows.len());
        rank_rows.push(row);
    }
    let mut kernel = Vec::new();
    for free in 0..d {
        if pivots[free].is_some() {
            continue;
        }
        let mut v = vec![0u64; d];
        v[free] = 1;
        for col in 0..d {
            if let Some(pi) = pivots[col] {
                v[col] = f.sub(0, rank_rows[pi][free]);
            }
        }
        kernel.push(v);
    }
    kernel
}
