//! Finite permutation groups with the structural queries the rest of the
//! crate needs: conjugacy classes, centre, commutator subgroup, normal
//! subgroups, Sylow subgroups, Frobenius structure, quotients.
//!
//! Groups are generated from permutation generators and fully enumerated
//! (the default order bound is 2000), so all algorithms here are
//! definitional rather than clever.

use crate::perm::{Perm, PermError};
use num_integer::Integer;
use serde::{Deserialize, Serialize};
use std::collections::{BTreeSet, HashMap};
use std::sync::Arc;
use thiserror::Error;

pub const DEFAULT_ORDER_BOUND: usize = 2000;

#[derive(Debug, Error)]
pub enum GroupError {
    #[error(transparent)]
    Perm(#[from] PermError),
    #[error("group order exceeds bound {0}")]
    OrderBoundExceeded(usize),
    #[error("generators have inconsistent degrees")]
    DegreeMismatch,
    #[error("element {0} does not normalise the subgroup / is not in the group")]
    BadElement(String),
    #[error("subgroup is not normal")]
    NotNormal,
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("designated central involution is invalid: {0}")]
    BadInvolution(String),
}

/// Id of a group element within the enumeration order of its parent group.
pub type ElemId = usize;

/// A finite permutation group, fully enumerated at construction.
///
/// Element 0 is always the identity.  The multiplication table, inverse
/// table, conjugacy classes and generator words are cached; all methods
/// on a constructed group are pure and the value is safe to share.
#[derive(Debug, Clone)]
pub struct FiniteGroup {
    degree: usize,
    generators: Vec<Perm>,
    elements: Vec<Perm>,
    index: HashMap<Perm, ElemId>,
    mul: Vec<Vec<u16>>,
    inv: Vec<u16>,
    /// For each element, (parent element, generator index) along a BFS word;
    /// identity has no entry.
    word: Vec<Option<(ElemId, usize)>>,
    classes: Vec<ConjClass>,
    class_of: Vec<u16>,
}

#[derive(Debug, Clone)]
pub struct ConjClass {
    pub representative: ElemId,
    pub members: Vec<ElemId>,
}

impl ConjClass {
    pub fn size(&self) -> usize {
        self.members.len()
    }
}

/// A subgroup given by generators, carried with its full member set.
#[derive(Debug, Clone)]
pub struct SubgroupHandle {
    pub generators: Vec<ElemId>,
    pub members: Vec<ElemId>,
    pub is_normal: bool,
    pub index: usize,
}

impl SubgroupHandle {
    pub fn order(&self) -> usize {
        self.members.len()
    }

    pub fn contains(&self, e: ElemId) -> bool {
        self.members.binary_search(&e).is_ok()
    }
}

/// The designated central involution `j` (complex conjugation in the
/// Galois-theoretic inputs).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CentralInvolution {
    pub elem: ElemId,
}

/// Input shape for group JSON files.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GroupInput {
    pub degree: usize,
    pub generators: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub j: Option<String>,
}

impl FiniteGroup {
    /// Generate the group from permutation generators, with the default
    /// order bound.
    pub fn generate(generators: Vec<Perm>) -> Result<Self, GroupError> {
        Self::generate_bounded(generators, DEFAULT_ORDER_BOUND)
    }

    pub fn generate_bounded(mut generators: Vec<Perm>, bound: usize) -> Result<Self, GroupError> {
        if generators.is_empty() {
            generators.push(Perm::identity(1));
        }
        let degree = generators[0].degree();
        if generators.iter().any(|g| g.degree() != degree) {
            return Err(GroupError::DegreeMismatch);
        }
        // BFS enumeration; identity first.
        let mut elements = vec![Perm::identity(degree)];
        let mut index: HashMap<Perm, ElemId> = HashMap::new();
        index.insert(elements[0].clone(), 0);
        let mut word: Vec<Option<(ElemId, usize)>> = vec![None];
        let mut frontier = 0usize;
        while frontier < elements.len() {
            let cur = elements[frontier].clone();
            for (gi, g) in generators.iter().enumerate() {
                let next = g.compose(&cur);
                if !index.contains_key(&next) {
                    if elements.len() >= bound {
                        return Err(GroupError::OrderBoundExceeded(bound));
                    }
                    index.insert(next.clone(), elements.len());
                    elements.push(next);
                    word.push(Some((frontier, gi)));
                }
            }
            frontier += 1;
        }
        let n = elements.len();
        let mut mul = vec![vec![0u16; n]; n];
        for i in 0..n {
            for j in 0..n {
                let p = elements[i].compose(&elements[j]);
                mul[i][j] = index[&p] as u16;
            }
        }
        let mut inv = vec![0u16; n];
        for i in 0..n {
            inv[i] = index[&elements[i].inverse()] as u16;
        }
        let (classes, class_of) = Self::compute_classes(n, &mul, &inv);
        Ok(FiniteGroup {
            degree,
            generators,
            elements,
            index,
            mul,
            inv,
            word,
            classes,
            class_of,
        })
    }

    pub fn from_input(input: &GroupInput) -> Result<(Self, Option<CentralInvolution>), GroupError> {
        Self::from_input_bounded(input, DEFAULT_ORDER_BOUND)
    }

    pub fn from_input_bounded(
        input: &GroupInput,
        bound: usize,
    ) -> Result<(Self, Option<CentralInvolution>), GroupError> {
        let gens = input
            .generators
            .iter()
            .map(|s| Perm::parse(s, input.degree))
            .collect::<Result<Vec<_>, _>>()?;
        let j_perm = input
            .j
            .as_ref()
            .map(|s| Perm::parse(s, input.degree))
            .transpose()?;
        let mut group = Self::generate_bounded(gens.clone(), bound)?;
        if let Some(p) = &j_perm {
            // only extend the generating set when j is not already reached
            if !group.index.contains_key(p) {
                let mut all = gens;
                all.push(p.clone());
                group = Self::generate_bounded(all, bound)?;
            }
        }
        let j = match j_perm {
            Some(p) => Some(group.central_involution(group.index[&p])?),
            None => None,
        };
        Ok((group, j))
    }

    fn compute_classes(n: usize, mul: &[Vec<u16>], inv: &[u16]) -> (Vec<ConjClass>, Vec<u16>) {
        let mut class_of = vec![u16::MAX; n];
        let mut classes = Vec::new();
        for e in 0..n {
            if class_of[e] != u16::MAX {
                continue;
            }
            let cid = classes.len() as u16;
            let mut members = BTreeSet::new();
            for g in 0..n {
                // g e g^{-1}
                let c = mul[mul[g][e] as usize][inv[g] as usize] as usize;
                members.insert(c);
            }
            for &m in &members {
                class_of[m] = cid;
            }
            let members: Vec<ElemId> = members.into_iter().collect();
            classes.push(ConjClass {
                representative: members[0],
                members,
            });
        }
        // Identity class first, then by (size, minimal member).
        let mut order: Vec<usize> = (0..classes.len()).collect();
        order.sort_by_key(|&i| {
            let c = &classes[i];
            (c.members[0] != 0, c.size(), c.members[0])
        });
        let mut renum = vec![0u16; classes.len()];
        for (new, &old) in order.iter().enumerate() {
            renum[old] = new as u16;
        }
        for v in class_of.iter_mut() {
            *v = renum[*v as usize];
        }
        let mut sorted = Vec::with_capacity(classes.len());
        for &old in &order {
            sorted.push(classes[old].clone());
        }
        (sorted, class_of)
    }

    // ---- basic queries -------------------------------------------------

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Perm] {
        &self.generators
    }

    pub fn generator_ids(&self) -> Vec<ElemId> {
        self.generators.iter().map(|g| self.index[g]).collect()
    }

    pub fn element(&self, id: ElemId) -> &Perm {
        &self.elements[id]
    }

    pub fn id_of(&self, p: &Perm) -> Option<ElemId> {
        self.index.get(p).copied()
    }

    pub fn mul(&self, a: ElemId, b: ElemId) -> ElemId {
        self.mul[a][b] as usize
    }

    pub fn inv(&self, a: ElemId) -> ElemId {
        self.inv[a] as usize
    }

    pub fn conjugate(&self, g: ElemId, x: ElemId) -> ElemId {
        self.mul(self.mul(g, x), self.inv(g))
    }

    pub fn elem_order(&self, a: ElemId) -> u64 {
        let mut o = 1u64;
        let mut cur = a;
        while cur != 0 {
            cur = self.mul(cur, a);
            o += 1;
        }
        o
    }

    pub fn pow(&self, a: ElemId, e: i64) -> ElemId {
        let o = self.elem_order(a) as i64;
        let mut e = e % o;
        if e < 0 {
            e += o;
        }
        let mut acc = 0;
        for _ in 0..e {
            acc = self.mul(acc, a);
        }
        acc
    }

    pub fn exponent(&self) -> u64 {
        (0..self.order()).fold(1u64, |m, e| m.lcm(&self.elem_order(e)))
    }

    pub fn is_abelian(&self) -> bool {
        self.classes.len() == self.order()
    }

    /// Express an element as a word in the generators (indices into
    /// `generators()`), leftmost factor applied last.
    pub fn generator_word(&self, mut e: ElemId) -> Vec<usize> {
        let mut w = Vec::new();
        while let Some((parent, gi)) = self.word[e] {
            w.push(gi);
            e = parent;
        }
        w
    }

    // ---- conjugacy classes ----------------------------------------------

    pub fn conjugacy_classes(&self) -> &[ConjClass] {
        &self.classes
    }

    pub fn num_classes(&self) -> usize {
        self.classes.len()
    }

    pub fn class_of(&self, e: ElemId) -> usize {
        self.class_of[e] as usize
    }

    /// Class index of the inverses of class `c`.
    pub fn inverse_class(&self, c: usize) -> usize {
        self.class_of(self.inv(self.classes[c].representative))
    }

    /// Class index of `rep^m` for the representative of class `c`.
    pub fn power_class(&self, c: usize, m: i64) -> usize {
        self.class_of(self.pow(self.classes[c].representative, m))
    }

    // ---- subgroups -------------------------------------------------------

    /// Closure of a set of elements; result is sorted.
    pub fn closure(&self, gens: &[ElemId]) -> Vec<ElemId> {
        let mut members = BTreeSet::new();
        members.insert(0usize);
        let mut stack: Vec<ElemId> = vec![0];
        while let Some(x) = stack.pop() {
            for &g in gens {
                let y = self.mul(g, x);
                if members.insert(y) {
                    stack.push(y);
                }
            }
        }
        members.into_iter().collect()
    }

    pub fn subgroup(&self, gens: &[ElemId]) -> SubgroupHandle {
        let members = self.closure(gens);
        let is_normal = self.is_normal_set(&members);
        SubgroupHandle {
            generators: gens.to_vec(),
            members: members.clone(),
            is_normal,
            index: self.order() / members.len(),
        }
    }

    pub fn trivial_subgroup(&self) -> SubgroupHandle {
        self.subgroup(&[])
    }

    pub fn full_subgroup(&self) -> SubgroupHandle {
        self.subgroup(&self.generator_ids())
    }

    fn is_normal_set(&self, members: &[ElemId]) -> bool {
        let set: BTreeSet<ElemId> = members.iter().copied().collect();
        for &g in &self.generator_ids() {
            for &m in members {
                if !set.contains(&self.conjugate(g, m)) {
                    return false;
                }
            }
        }
        true
    }

    pub fn centre(&self) -> SubgroupHandle {
        let gens = self.generator_ids();
        let members: Vec<ElemId> = (0..self.order())
            .filter(|&z| gens.iter().all(|&g| self.mul(z, g) == self.mul(g, z)))
            .collect();
        SubgroupHandle {
            generators: members.clone(),
            members,
            is_normal: true,
            index: 0, // filled below
        }
        .with_index(self.order())
    }

    /// Commutator subgroup: closure of all commutators [g,h] = g h g^{-1} h^{-1}.
    pub fn commutator_subgroup(&self) -> SubgroupHandle {
        let mut comms = BTreeSet::new();
        for g in 0..self.order() {
            for h in 0..self.order() {
                let c = self.mul(self.mul(g, h), self.mul(self.inv(g), self.inv(h)));
                comms.insert(c);
            }
        }
        let gens: Vec<ElemId> = comms.into_iter().collect();
        let members = self.closure(&gens);
        SubgroupHandle {
            generators: gens,
            members: members.clone(),
            is_normal: true,
            index: self.order() / members.len(),
        }
    }

    /// All normal subgroups, as joins of normal closures of single
    /// conjugacy classes.  Includes the trivial and full subgroups.
    pub fn normal_subgroups(&self) -> Vec<SubgroupHandle> {
        let mut sets: BTreeSet<Vec<ElemId>> = BTreeSet::new();
        sets.insert(vec![0]);
        for c in self.conjugacy_classes() {
            sets.insert(self.closure(&c.members));
        }
        // close under joins
        loop {
            let cur: Vec<Vec<ElemId>> = sets.iter().cloned().collect();
            let mut added = false;
            for a in &cur {
                for b in &cur {
                    let mut gens = a.clone();
                    gens.extend_from_slice(b);
                    let j = self.closure(&gens);
                    if sets.insert(j) {
                        added = true;
                    }
                }
            }
            if !added {
                break;
            }
        }
        sets.into_iter()
            .map(|members| SubgroupHandle {
                generators: members.clone(),
                members: members.clone(),
                is_normal: true,
                index: self.order() / members.len(),
            })
            .collect()
    }

    /// All subgroups by bottom-up closure.  Exponential in the worst case;
    /// intended for the desk-scale corpus (guarded by `bound` on |G|).
    pub fn all_subgroups(&self, bound: usize) -> Result<Vec<SubgroupHandle>, GroupError> {
        if self.order() > bound {
            return Err(GroupError::OrderBoundExceeded(bound));
        }
        let mut sets: BTreeSet<Vec<ElemId>> = BTreeSet::new();
        sets.insert(vec![0]);
        for e in 1..self.order() {
            sets.insert(self.closure(&[e]));
        }
        let mut worklist: Vec<Vec<ElemId>> = sets.iter().cloned().collect();
        while let Some(s) = worklist.pop() {
            for e in 1..self.order() {
                if s.binary_search(&e).is_ok() {
                    continue;
                }
                let mut gens = s.clone();
                gens.push(e);
                let t = self.closure(&gens);
                if sets.insert(t.clone()) {
                    worklist.push(t);
                }
            }
        }
        Ok(sets
            .into_iter()
            .map(|members| {
                let is_normal = self.is_normal_set(&members);
                SubgroupHandle {
                    generators: members.clone(),
                    members: members.clone(),
                    is_normal,
                    index: self.order() / members.len(),
                }
            })
            .collect())
    }

    /// A Sylow p-subgroup, built by extending a p-subgroup inside its
    /// normaliser until the full p-part of |G| is reached.
    pub fn sylow_subgroup(&self, p: u64) -> Result<SubgroupHandle, GroupError> {
        if p < 2 || !is_prime(p) {
            return Err(GroupError::NotPrime(p));
        }
        let mut target = 1usize;
        let mut n = self.order();
        while n as u64 % p == 0 {
            target *= p as usize;
            n /= p as usize;
        }
        let mut members: Vec<ElemId> = vec![0];
        let mut gens: Vec<ElemId> = Vec::new();
        while members.len() < target {
            // normaliser of current P
            let set: BTreeSet<ElemId> = members.iter().copied().collect();
            let normaliser: Vec<ElemId> = (0..self.order())
                .filter(|&g| members.iter().all(|&m| set.contains(&self.conjugate(g, m))))
                .collect();
            let mut extended = false;
            for &y in &normaliser {
                if set.contains(&y) {
                    continue;
                }
                let o = self.elem_order(y);
                if !is_p_power(o, p) {
                    // use the p-part of y instead
                    continue;
                }
                let mut g2 = gens.clone();
                g2.push(y);
                let closed = self.closure(&g2);
                if is_p_power(closed.len() as u64, p) {
                    gens = g2;
                    members = closed;
                    extended = true;
                    break;
                }
            }
            if !extended {
                // try p-parts of normaliser elements
                let mut found = false;
                for &y in &normaliser {
                    if set.contains(&y) {
                        continue;
                    }
                    let o = self.elem_order(y);
                    let mut m = o;
                    while m % p == 0 {
                        m /= p;
                    }
                    let yp = self.pow(y, m as i64);
                    if yp != 0 && !set.contains(&yp) {
                        let mut g2 = gens.clone();
                        g2.push(yp);
                        let closed = self.closure(&g2);
                        if is_p_power(closed.len() as u64, p) {
                            gens = g2;
                            members = closed;
                            found = true;
                            break;
                        }
                    }
                }
                if !found {
                    break;
                }
            }
        }
        debug_assert_eq!(members.len(), target);
        Ok(SubgroupHandle {
            generators: gens,
            members: members.clone(),
            is_normal: self.is_normal_set(&members),
            index: self.order() / members.len(),
        })
    }

    // ---- quotients -------------------------------------------------------

    /// Quotient G/N by a normal subgroup, as a permutation group acting
    /// regularly on the cosets, together with the projection map
    /// (element id in G -> element id in G/N).
    pub fn quotient(&self, n: &SubgroupHandle) -> Result<(FiniteGroup, Vec<ElemId>), GroupError> {
        if !n.is_normal || !self.is_normal_set(&n.members) {
            return Err(GroupError::NotNormal);
        }
        let order = self.order();
        // coset of each element: minimal member id of gN
        let mut coset_of = vec![usize::MAX; order];
        let mut coset_reps: Vec<ElemId> = Vec::new();
        for g in 0..order {
            if coset_of[g] != usize::MAX {
                continue;
            }
            let cid = coset_reps.len();
            let mut min_member = usize::MAX;
            let members: Vec<ElemId> = n.members.iter().map(|&m| self.mul(g, m)).collect();
            for &x in &members {
                min_member = min_member.min(x);
            }
            for &x in &members {
                coset_of[x] = cid;
            }
            coset_reps.push(min_member);
        }
        // identity coset must be index 0 (g = 0 handled first)
        let k = coset_reps.len();
        // regular action of quotient on cosets: generator images
        let mut qgens = Vec::new();
        for &g in &self.generator_ids() {
            let images: Vec<u16> = (0..k)
                .map(|c| coset_of[self.mul(g, coset_reps[c])] as u16)
                .collect();
            qgens.push(Perm::from_images(images)?);
        }
        let q = FiniteGroup::generate_bounded(qgens.clone(), self.order())?;
        // projection: element -> its coset's permutation in q
        let mut proj = vec![0usize; order];
        for g in 0..order {
            let images: Vec<u16> = (0..k)
                .map(|c| coset_of[self.mul(g, coset_reps[c])] as u16)
                .collect();
            let p = Perm::from_images(images)?;
            proj[g] = q
                .id_of(&p)
                .ok_or_else(|| GroupError::BadElement(format!("coset image of {g}")))?;
        }
        Ok((q, proj))
    }

    // ---- structure classifiers -------------------------------------------

    /// Frobenius structure (kernel, complement), if `G` is a Frobenius
    /// group.  Detection: for each normal subgroup `N` with
    /// gcd(|N|, [G:N]) = 1, search for a complement `H` of order [G:N]
    /// with trivial intersection, then verify `H ∩ gHg^{-1} = 1` for all
    /// g outside H.  The kernel returned is the unique Frobenius kernel.
    pub fn frobenius_structure(&self) -> Option<(SubgroupHandle, SubgroupHandle)> {
        let order = self.order();
        for n in self.normal_subgroups() {
            let no = n.order();
            if no <= 1 || no >= order {
                continue;
            }
            let m = order / no;
            if gcd(no as u64, m as u64) != 1 {
                continue;
            }
            if let Some(h) = self.complement_of_order(&n, m) {
                if self.is_frobenius_complement(&h) && self.is_nilpotent_on(&n.members) {
                    return Some((n, h));
                }
            }
        }
        None
    }

    /// Definitional Frobenius test: some proper non-trivial subgroup H
    /// satisfies H ∩ gHg⁻¹ = 1 off H.  Exhaustive over all subgroups.
    pub fn is_frobenius_bruteforce(&self, subgroup_bound: usize) -> Result<bool, GroupError> {
        for h in self.all_subgroups(subgroup_bound)? {
            if h.order() > 1 && h.order() < self.order() && self.is_frobenius_complement(&h) {
                return Ok(true);
            }
        }
        Ok(false)
    }

    pub fn is_frobenius_complement(&self, h: &SubgroupHandle) -> bool {
        if h.order() <= 1 || h.order() >= self.order() {
            return false;
        }
        let hset: BTreeSet<ElemId> = h.members.iter().copied().collect();
        for g in 0..self.order() {
            if hset.contains(&g) {
                continue;
            }
            let mut inter = 0usize;
            for &x in &h.members {
                if hset.contains(&self.conjugate(g, x)) {
                    inter += 1;
                }
            }
            if inter > 1 {
                return false;
            }
        }
        true
    }

    /// Search for a subgroup of order `m` intersecting `n` trivially,
    /// generated by elements of order dividing `m`.
    fn complement_of_order(&self, n: &SubgroupHandle, m: usize) -> Option<SubgroupHandle> {
        let candidates: Vec<ElemId> = (1..self.order())
            .filter(|&e| m as u64 % self.elem_order(e) == 0)
            .collect();
        let nset: BTreeSet<ElemId> = n.members.iter().copied().collect();
        let mut seen: BTreeSet<Vec<ElemId>> = BTreeSet::new();
        let mut work: Vec<Vec<ElemId>> = Vec::new();
        for &c in &candidates {
            let s = self.closure(&[c]);
            if s.iter().all(|x| *x == 0 || !nset.contains(x)) && m % s.len() == 0 {
                if s.len() == m {
                    return Some(self.subgroup(&[c]));
                }
                if seen.insert(s.clone()) {
                    work.push(s);
                }
            }
        }
        while let Some(s) = work.pop() {
            for &c in &candidates {
                if s.binary_search(&c).is_ok() {
                    continue;
                }
                let mut gens = s.clone();
                gens.push(c);
                let t = self.closure(&gens);
                if t.len() > m || m % t.len() != 0 {
                    continue;
                }
                if !t.iter().all(|x| *x == 0 || !nset.contains(x)) {
                    continue;
                }
                if t.len() == m {
                    return Some(SubgroupHandle {
                        generators: t.clone(),
                        members: t.clone(),
                        is_normal: self.is_normal_set(&t),
                        index: self.order() / m,
                    });
                }
                if seen.insert(t.clone()) {
                    work.push(t);
                }
            }
        }
        None
    }

    /// Nilpotency of the subgroup on the given member set: every Sylow
    /// subgroup of it is normal in it.
    fn is_nilpotent_on(&self, members: &[ElemId]) -> bool {
        let order = members.len() as u64;
        let set: BTreeSet<ElemId> = members.iter().copied().collect();
        for p in prime_divisors(order) {
            // p-part elements of the subgroup
            let pelems: Vec<ElemId> = members
                .iter()
                .copied()
                .filter(|&e| e != 0 && is_p_power(self.elem_order(e), p))
                .collect();
            let psub = self.closure(&pelems);
            // closure of all p-elements must itself be a p-group (then it is
            // the unique, hence normal, Sylow p-subgroup)
            if !is_p_power(psub.len() as u64, p) {
                return false;
            }
            if !psub.iter().all(|e| set.contains(e)) {
                return false;
            }
        }
        true
    }

    /// Central involution handle for a given element.
    pub fn central_involution(&self, j: ElemId) -> Result<CentralInvolution, GroupError> {
        if self.mul(j, j) != 0 {
            return Err(GroupError::BadInvolution("j^2 != 1".into()));
        }
        for g in 0..self.order() {
            if self.mul(j, g) != self.mul(g, j) {
                return Err(GroupError::BadInvolution(format!(
                    "j does not commute with {}",
                    self.element(g)
                )));
            }
        }
        Ok(CentralInvolution { elem: j })
    }

    /// Invariant fingerprint used for human-readable isomorphism labels:
    /// (order, sorted class sizes).  Character degrees are appended by the
    /// character-table layer where available.
    pub fn fingerprint(&self) -> (usize, Vec<usize>) {
        let mut sizes: Vec<usize> = self.classes.iter().map(|c| c.size()).collect();
        sizes.sort_unstable();
        (self.order(), sizes)
    }

    /// Coarse name guess from the fingerprint, for display only.
    pub fn fingerprint_label(&self) -> String {
        let (o, sizes) = self.fingerprint();
        let known: &[(&str, usize, &[usize])] = &[
            ("C1", 1, &[1]),
            ("C2", 2, &[1, 1]),
            ("C3", 3, &[1, 1, 1]),
            ("S3", 6, &[1, 2, 3]),
            ("C6", 6, &[1, 1, 1, 1, 1, 1]),
            ("D4 or Q8", 8, &[1, 1, 2, 2, 2]),
            ("A4", 12, &[1, 3, 4, 4]),
            ("C7:C3", 21, &[1, 3, 3, 7, 7]),
            ("S4", 24, &[1, 3, 6, 6, 8]),
            ("SL(2,3)", 24, &[1, 1, 4, 4, 4, 4, 6]),
        ];
        for (name, ord, cs) in known {
            if o == *ord && sizes.as_slice() == *cs {
                return format!("~{name}"); // fingerprint match, not an isomorphism proof
            }
        }
        format!("order {o}, class sizes {sizes:?}")
    }

    /// Restrict this group to a subgroup, returning a fresh `FiniteGroup`
    /// generated by the subgroup's members (acting on the same points),
    /// plus the map from new element ids to ids in `self`.
    pub fn subgroup_as_group(&self, h: &SubgroupHandle) -> (FiniteGroup, Vec<ElemId>) {
        let gens: Vec<Perm> = if h.members.len() == 1 {
            vec![Perm::identity(self.degree)]
        } else {
            h.members
                .iter()
                .filter(|&&m| m != 0)
                .map(|&m| self.elements[m].clone())
                .collect()
        };
        let g = FiniteGroup::generate_bounded(gens, h.members.len().max(1))
            .expect("subgroup closure fits");
        let map = (0..g.order()).map(|i| self.index[g.element(i)]).collect();
        (g, map)
    }
}

trait WithIndex {
    fn with_index(self, group_order: usize) -> Self;
}

impl WithIndex for SubgroupHandle {
    fn with_index(mut self, group_order: usize) -> Self {
        self.index = group_order / self.members.len();
        self
    }
}

// ---- small number theory helpers ------------------------------------------

pub fn gcd(a: u64, b: u64) -> u64 {
    a.gcd(&b)
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

pub fn is_p_power(mut n: u64, p: u64) -> bool {
    if n == 0 {
        return false;
    }
    while n % p == 0 {
        n /= p;
    }
    n == 1
}

pub fn prime_divisors(mut n: u64) -> Vec<u64> {
    let mut ps = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            ps.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        ps.push(n);
    }
    ps
}

pub fn v_p(mut n: u64, p: u64) -> u32 {
    let mut v = 0;
    while n > 0 && n % p == 0 {
        n /= p;
        v += 1;
    }
    v
}

// ---- standard constructions -------------------------------------------

/// Symmetric group S_n on n points.
pub fn symmetric(n: usize) -> FiniteGroup {
    let gens = if n <= 1 {
        vec![Perm::identity(n.max(1))]
    } else {
        vec![
            Perm::parse("(1 2)", n).unwrap(),
            Perm::parse(
                &format!(
                    "({})",
                    (1..=n).map(|i| i.to_string()).collect::<Vec<_>>().join(" ")
                ),
                n,
            )
            .unwrap(),
        ]
    };
    FiniteGroup::generate(gens).unwrap()
}

/// Alternating group A_n.
pub fn alternating(n: usize) -> FiniteGroup {
    assert!(n >= 3);
    let mut gens = Vec::new();
    for i in 3..=n {
        gens.push(Perm::parse(&format!("(1 2 {i})"), n).unwrap());
    }
    FiniteGroup::generate(gens).unwrap()
}

/// Cyclic group C_n as the n-cycle.
pub fn cyclic(n: usize) -> FiniteGroup {
    if n == 1 {
        return FiniteGroup::generate(vec![Perm::identity(1)]).unwrap();
    }
    let cyc = format!(
        "({})",
        (1..=n).map(|i| i.to_string()).collect::<Vec<_>>().join(" ")
    );
    FiniteGroup::generate(vec![Perm::parse(&cyc, n).unwrap()]).unwrap()
}

/// Dihedral group of order 2n acting on n points.
pub fn dihedral(n: usize) -> FiniteGroup {
    let rot = format!(
        "({})",
        (1..=n).map(|i| i.to_string()).collect::<Vec<_>>().join(" ")
    );
    let mut pairs = Vec::new();
    for i in 2..=n {
        let jj = n + 2 - i;
        if i < jj {
            pairs.push(format!("({i} {jj})"));
        }
    }
    let refl = pairs.join("");
    FiniteGroup::generate(vec![
        Perm::parse(&rot, n).unwrap(),
        Perm::parse(if refl.is_empty() { "()" } else { &refl }, n).unwrap(),
    ])
    .unwrap()
}

/// Quaternion group Q_8 via its regular representation.
pub fn quaternion8() -> FiniteGroup {
    // elements 1,-1,i,-i,j,-j,k,-k as indices 0..8
    // multiplication table built from the standard relations
    let names = ["1", "-1", "i", "-i", "j", "-j", "k", "-k"];
    let mulq = |a: usize, b: usize| -> usize {
        // decompose index: sign = index&1, unit = index>>1 (0:1,1:i,2:j,3:k)
        let (sa, ua) = (a & 1, a >> 1);
        let (sb, ub) = (b & 1, b >> 1);
        // unit multiplication with sign: table over {1,i,j,k}
        let (s, u) = match (ua, ub) {
            (0, x) => (0, x),
            (x, 0) => (0, x),
            (1, 1) => (1, 0), // i*i = -1
            (2, 2) => (1, 0),
            (3, 3) => (1, 0),
            (1, 2) => (0, 3), // i*j = k
            (2, 1) => (1, 3), // j*i = -k
            (2, 3) => (0, 1), // j*k = i
            (3, 2) => (1, 1),
            (3, 1) => (0, 2), // k*i = j
            (1, 3) => (1, 2),
            _ => unreachable!(),
        };
        (u << 1) | (s ^ sa ^ sb)
    };
    let _ = names;
    // regular representation: g acts on indices by left multiplication
    let gens = [2usize, 4usize] // i and j
        .iter()
        .map(|&g| Perm::from_images((0..8).map(|x| mulq(g, x) as u16).collect()).unwrap())
        .collect();
    FiniteGroup::generate(gens).unwrap()
}

/// Klein four-group inside S_4 (double transpositions).
pub fn klein4() -> FiniteGroup {
    FiniteGroup::generate(vec![
        Perm::parse("(1 2)(3 4)", 4).unwrap(),
        Perm::parse("(1 3)(2 4)", 4).unwrap(),
    ])
    .unwrap()
}

/// The affine group Aff(q) = F_q ⋊ F_q^× for prime q, acting on F_q.
pub fn affine_prime(q: usize) -> FiniteGroup {
    assert!(is_prime(q as u64));
    let add = Perm::from_images((0..q).map(|x| ((x + 1) % q) as u16).collect()).unwrap();
    let g = primitive_root(q as u64) as usize;
    let mulp = Perm::from_images((0..q).map(|x| ((x * g) % q) as u16).collect()).unwrap();
    FiniteGroup::generate(vec![add, mulp]).unwrap()
}

/// C_q ⋊ C_p with C_p acting faithfully (requires p | q-1), on q points.
pub fn metacyclic(q: usize, p: usize) -> FiniteGroup {
    assert!(is_prime(q as u64) && is_prime(p as u64) && (q - 1) % p == 0);
    let add = Perm::from_images((0..q).map(|x| ((x + 1) % q) as u16).collect()).unwrap();
    let g = primitive_root(q as u64);
    // element of order p in F_q^*
    let a = mod_pow(g, (q as u64 - 1) / p as u64, q as u64) as usize;
    let act = Perm::from_images((0..q).map(|x| ((x * a) % q) as u16).collect()).unwrap();
    FiniteGroup::generate(vec![add, act]).unwrap()
}

/// SL(2,3) acting on the 8 non-zero vectors of F_3^2.
pub fn sl2_3() -> FiniteGroup {
    let vecs: Vec<(u8, u8)> = (0..3u8)
        .flat_map(|x| (0..3u8).map(move |y| (x, y)))
        .filter(|&(x, y)| x != 0 || y != 0)
        .collect();
    let idx = |v: (u8, u8)| vecs.iter().position(|&w| w == v).unwrap();
    let apply = |m: [[u8; 2]; 2], v: (u8, u8)| -> (u8, u8) {
        (
            (m[0][0] * v.0 + m[0][1] * v.1) % 3,
            (m[1][0] * v.0 + m[1][1] * v.1) % 3,
        )
    };
    let to_perm = |m: [[u8; 2]; 2]| {
        Perm::from_images(vecs.iter().map(|&v| idx(apply(m, v)) as u16).collect()).unwrap()
    };
    // generators of SL(2,3): [[1,1],[0,1]] and [[0,2],[1,0]] (det = 1 mod 3)
    FiniteGroup::generate(vec![to_perm([[1, 1], [0, 1]]), to_perm([[0, 2], [1, 0]])]).unwrap()
}

/// Direct product acting on the disjoint union of the point sets.
pub fn direct_product(a: &FiniteGroup, b: &FiniteGroup) -> FiniteGroup {
    let da = a.degree();
    let db = b.degree();
    let mut gens = Vec::new();
    for g in a.generators() {
        let mut im: Vec<u16> = (0..(da + db) as u16).collect();
        for i in 0..da {
            im[i] = g.apply(i) as u16;
        }
        gens.push(Perm::from_images(im).unwrap());
    }
    for g in b.generators() {
        let mut im: Vec<u16> = (0..(da + db) as u16).collect();
        for i in 0..db {
            im[da + i] = (da + g.apply(i)) as u16;
        }
        gens.push(Perm::from_images(im).unwrap());
    }
    FiniteGroup::generate_bounded(gens, a.order() * b.order()).unwrap()
}

pub fn mod_pow(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1u64;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    r
}

pub fn primitive_root(p: u64) -> u64 {
    let factors = prime_divisors(p - 1);
    'outer: for g in 2..p {
        for &f in &factors {
            if mod_pow(g, (p - 1) / f, p) == 1 {
                continue 'outer;
            }
        }
        return g;
    }
    1
}

/// The affine group Aff(q) = F_q x| F_q^* for a prime power q in
/// {4, 8, 9} (primes go through `affine_prime`), acting on the q field
/// elements.  The field is realised as F_p[x]/(m) for a fixed
/// irreducible m.
pub fn affine_prime_power(q: usize) -> FiniteGroup {
    let (p, modulus): (u64, &[u64]) = match q {
        4 => (2, &[1, 1, 1]),    // x^2 + x + 1
        8 => (2, &[1, 1, 0, 1]), // x^3 + x + 1
        9 => (3, &[1, 0, 1]),    // x^2 + 1
        _ => {
            assert!(is_prime(q as u64), "unsupported prime power {q}");
            return affine_prime(q);
        }
    };
    let n = modulus.len() - 1;
    // field elements as base-p digit vectors
    let elems: Vec<Vec<u64>> = (0..q).map(|i| digits(i as u64, p, n)).collect();
    let idx = |v: &Vec<u64>| -> usize {
        let mut acc = 0u64;
        for d in v.iter().rev() {
            acc = acc * p + d;
        }
        acc as usize
    };
    let add = |a: &Vec<u64>, b: &Vec<u64>| -> Vec<u64> {
        a.iter().zip(b).map(|(x, y)| (x + y) % p).collect()
    };
    let mul = |a: &Vec<u64>, b: &Vec<u64>| -> Vec<u64> {
        let mut prod = vec![0u64; 2 * n - 1];
        for (i, x) in a.iter().enumerate() {
            for (j, y) in b.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x * y) % p;
            }
        }
        for top in (n..prod.len()).rev() {
            let c = prod[top];
            if c == 0 {
                continue;
            }
            prod[top] = 0;
            for (k, &mk) in modulus.iter().enumerate().take(n) {
                let t = (c * mk) % p;
                prod[top - n + k] = (prod[top - n + k] + p - t) % p;
            }
        }
        prod.truncate(n);
        prod
    };
    // a multiplicative generator (the unit group is cyclic of order q-1)
    let one = {
        let mut v = vec![0u64; n];
        v[0] = 1;
        v
    };
    let generator = elems
        .iter()
        .skip(1)
        .find(|a| {
            let mut cur = (*a).clone();
            let mut ord = 1usize;
            while cur != one {
                cur = mul(&cur, a);
                ord += 1;
            }
            ord == q - 1
        })
        .expect("cyclic unit group")
        .clone();
    let translation =
        Perm::from_images(elems.iter().map(|v| idx(&add(v, &one)) as u16).collect()).unwrap();
    let scaling = Perm::from_images(
        elems
            .iter()
            .map(|v| idx(&mul(v, &generator)) as u16)
            .collect(),
    )
    .unwrap();
    FiniteGroup::generate(vec![translation, scaling]).unwrap()
}

fn digits(mut x: u64, p: u64, n: usize) -> Vec<u64> {
    let mut out = Vec::with_capacity(n);
    for _ in 0..n {
        out.push(x % p);
        x /= p;
    }
    out
}

/// Shared handle used across modules.
pub type GroupRef = Arc<FiniteGroup>;
