//! Semidirect products `Z_N ⋊ H` with `H` a subgroup of the units mod N,
//! representations induced from characters of `Z_N`, and structural
//! predicates deciding spark deficiency or full spark.
//!
//! The representation induced from the character `χ_ξ(x) = ζ_N^{ξx}` acts on
//! `l²(H) ≅ C^{|H|}` by
//!
//! ```text
//! π_ξ(x, s) f(h) = ζ_N^{ξ · h⁻¹ · x} f(s⁻¹ h)
//! ```
//!
//! Coordinates follow a fixed enumeration `h_0 = 1, h_1, …` of `H`: powers of
//! the smallest generator when `H` is cyclic, sorted order otherwise. With
//! generator `a`, `π(0, a)` is the cyclic shift `(f_0, …, f_{d-1}) ↦
//! (f_{d-1}, f_0, …, f_{d-2})`.

use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exactalg::{CycPolynomial, Cyclotomic, ExactMatrix};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupError {
    #[error("invalid subgroup of Z_{modulus}^x: {reason}")]
    InvalidSubgroup { modulus: u64, reason: String },
    #[error("element ({x}, {a}) is not in Z_{n} ⋊ H")]
    NotInGroup { x: u64, a: u64, n: u64 },
}

/// A subgroup `H` of the unit group of `Z_N`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct UnitSubgroup {
    modulus: u64,
    elements: Vec<u64>,
}

impl UnitSubgroup {
    /// Validates coprimality, membership of 1, and closure. Elements are
    /// reduced mod N, sorted, and deduplicated.
    pub fn new(modulus: u64, elements: &[u64]) -> Result<Self, GroupError> {
        let invalid = |reason: String| GroupError::InvalidSubgroup { modulus, reason };
        if modulus < 2 {
            return Err(invalid("modulus must be at least 2".into()));
        }
        let mut els: Vec<u64> = elements.iter().map(|&e| e % modulus).collect();
        els.sort_unstable();
        els.dedup();
        if let Some(&bad) = els.iter().find(|&&e| e.gcd(&modulus) != 1) {
            return Err(invalid(format!("{bad} is not coprime to {modulus}")));
        }
        if els.binary_search(&1).is_err() {
            return Err(invalid("1 is missing".into()));
        }
        for &a in &els {
            for &b in &els {
                let p = a * b % modulus;
                if els.binary_search(&p).is_err() {
                    return Err(invalid(format!("{a}·{b} = {p} is not in the set")));
                }
            }
        }
        Ok(UnitSubgroup {
            modulus,
            elements: els,
        })
    }

    /// Subgroup generated by the given units.
    pub fn generated_by(modulus: u64, generators: &[u64]) -> Result<Self, GroupError> {
        let mut els = vec![1u64];
        let mut frontier = vec![1u64];
        while let Some(x) = frontier.pop() {
            for &g in generators {
                if g.gcd(&modulus) != 1 {
                    return Err(GroupError::InvalidSubgroup {
                        modulus,
                        reason: format!("{g} is not coprime to {modulus}"),
                    });
                }
                let y = x * (g % modulus) % modulus;
                if !els.contains(&y) {
                    els.push(y);
                    frontier.push(y);
                }
            }
        }
        Self::new(modulus, &els)
    }

    /// The full unit group `Z_N^×`.
    pub fn units(modulus: u64) -> Result<Self, GroupError> {
        let els: Vec<u64> = (1..modulus).filter(|a| a.gcd(&modulus) == 1).collect();
        Self::new(modulus, &els)
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn elements(&self) -> &[u64] {
        &self.elements
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, a: u64) -> bool {
        self.elements.binary_search(&a).is_ok()
    }

    pub fn is_trivial(&self) -> bool {
        self.elements.len() == 1
    }

    /// Multiplicative order of `a` mod N.
    pub fn element_order(&self, a: u64) -> usize {
        let mut x = a % self.modulus;
        let mut k = 1;
        while x != 1 {
            x = x * a % self.modulus;
            k += 1;
        }
        k
    }

    /// Smallest generator when the subgroup is cyclic.
    pub fn generator(&self) -> Option<u64> {
        self.elements
            .iter()
            .copied()
            .find(|&a| self.element_order(a) == self.order())
    }

    pub fn is_cyclic(&self) -> bool {
        self.generator().is_some()
    }

    pub fn inverse(&self, a: u64) -> u64 {
        mod_inverse(a, self.modulus)
    }

    /// Fixed coordinate order: powers of the smallest generator for cyclic
    /// subgroups, ascending order otherwise. Always starts with 1.
    pub fn enumeration(&self) -> Vec<u64> {
        match self.generator() {
            Some(g) => {
                let mut out = Vec::with_capacity(self.order());
                let mut x = 1u64;
                for _ in 0..self.order() {
                    out.push(x);
                    x = x * g % self.modulus;
                }
                out
            }
            None => self.elements.clone(),
        }
    }
}

/// Inverse of a unit mod n.
pub fn mod_inverse(a: u64, n: u64) -> u64 {
    let e = (a as i128).extended_gcd(&(n as i128));
    assert_eq!(e.gcd, 1, "{a} is not a unit mod {n}");
    e.x.rem_euclid(n as i128) as u64
}

/// Smallest prime divisor of n ≥ 2.
pub fn smallest_prime_factor(n: u64) -> u64 {
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            return p;
        }
        p += 1;
    }
    n
}

pub fn is_prime(n: u64) -> bool {
    n >= 2 && smallest_prime_factor(n) == n
}

/// `Some((p, k))` when `n = p^k` with p prime.
pub fn prime_power(n: u64) -> Option<(u64, u32)> {
    if n < 2 {
        return None;
    }
    let p = smallest_prime_factor(n);
    let mut m = n;
    let mut k = 0;
    while m.is_multiple_of(p) {
        m /= p;
        k += 1;
    }
    (m == 1).then_some((p, k))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GroupElement {
    pub x: u64,
    pub a: u64,
}

impl GroupElement {
    pub const fn new(x: u64, a: u64) -> Self {
        GroupElement { x, a }
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.x, self.a)
    }
}

/// `Z_N ⋊ H` with law `(x,a)(y,b) = (x + a·y, a·b)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SemidirectGroup {
    n: u64,
    h: UnitSubgroup,
}

impl SemidirectGroup {
    pub fn new(h: UnitSubgroup) -> Self {
        SemidirectGroup { n: h.modulus(), h }
    }

    /// Convenience constructor from the modulus and the subgroup elements.
    pub fn from_parts(n: u64, subgroup: &[u64]) -> Result<Self, GroupError> {
        Ok(Self::new(UnitSubgroup::new(n, subgroup)?))
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn subgroup(&self) -> &UnitSubgroup {
        &self.h
    }

    pub fn order(&self) -> usize {
        self.n as usize * self.h.order()
    }

    pub fn identity(&self) -> GroupElement {
        GroupElement::new(0, 1)
    }

    pub fn contains(&self, g: GroupElement) -> bool {
        g.x < self.n && self.h.contains(g.a)
    }

    fn check(&self, g: GroupElement) -> Result<(), GroupError> {
        if self.contains(g) {
            Ok(())
        } else {
            Err(GroupError::NotInGroup {
                x: g.x,
                a: g.a,
                n: self.n,
            })
        }
    }

    pub fn multiply(&self, g: GroupElement, h: GroupElement) -> Result<GroupElement, GroupError> {
        self.check(g)?;
        self.check(h)?;
        Ok(GroupElement::new(
            (g.x + g.a * h.x) % self.n,
            g.a * h.a % self.n,
        ))
    }

    /// `(x,a)⁻¹ = (−a⁻¹x, a⁻¹)`.
    pub fn inverse(&self, g: GroupElement) -> Result<GroupElement, GroupError> {
        self.check(g)?;
        let ainv = self.h.inverse(g.a);
        let x = (self.n - ainv * g.x % self.n) % self.n;
        Ok(GroupElement::new(x, ainv))
    }

    /// All elements ordered as `(x, h_k)` with x major and `h_k` following
    /// the subgroup enumeration; this is the orbit frame's column order.
    pub fn elements(&self) -> Vec<GroupElement> {
        let hs = self.h.enumeration();
        (0..self.n)
            .flat_map(|x| hs.iter().map(move |&a| GroupElement::new(x, a)))
            .collect()
    }

    /// Center: `(x, 1)` with `(b − 1)·x ≡ 0` for every `b ∈ H`. Elements with
    /// `a ≠ 1` never commute with `(1, 1)`.
    pub fn center(&self) -> Vec<GroupElement> {
        (0..self.n)
            .filter(|&x| {
                self.h
                    .elements()
                    .iter()
                    .all(|&b| ((b + self.n - 1) % self.n * x).is_multiple_of(self.n))
            })
            .map(|x| GroupElement::new(x, 1))
            .collect()
    }

    /// `{h ∈ H : h·m ≡ m (mod N)}`, the stabilizer of the character `χ_m`.
    pub fn character_stabilizer(&self, m: u64) -> UnitSubgroup {
        let m = m % self.n;
        let els: Vec<u64> = self
            .h
            .elements()
            .iter()
            .copied()
            .filter(|&h| h * m % self.n == m)
            .collect();
        UnitSubgroup::new(self.n, &els).expect("a stabilizer is a subgroup")
    }
}

/// Representation of `Z_N ⋊ H` induced from the character `χ_ξ` of `Z_N`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InducedRep {
    group: SemidirectGroup,
    xi: u64,
    h_enumeration: Vec<u64>,
    irreducible: bool,
}

/// Builds the induced representation; `ξ` with a nontrivial stabilizer gives
/// a reducible representation flagged as such.
pub fn induced_rep(group: &SemidirectGroup, xi: u64) -> InducedRep {
    let xi = xi % group.n();
    InducedRep {
        h_enumeration: group.subgroup().enumeration(),
        irreducible: group.character_stabilizer(xi).is_trivial(),
        group: group.clone(),
        xi,
    }
}

impl InducedRep {
    pub fn group(&self) -> &SemidirectGroup {
        &self.group
    }

    pub fn xi(&self) -> u64 {
        self.xi
    }

    pub fn dim(&self) -> usize {
        self.h_enumeration.len()
    }

    pub fn h_enumeration(&self) -> &[u64] {
        &self.h_enumeration
    }

    pub fn is_irreducible(&self) -> bool {
        self.irreducible
    }

    pub fn n(&self) -> u64 {
        self.group.n()
    }

    /// Exponents `e_j` with `π(x,1) = diag(ζ_N^{e_j})`, `e_j = ξ·h_j⁻¹·x mod N`.
    pub fn diagonal_exponents(&self, x: u64) -> Vec<u64> {
        let n = self.n();
        self.h_enumeration
            .iter()
            .map(|&h| self.xi * self.group.subgroup().inverse(h) % n * (x % n) % n)
            .collect()
    }

    /// The `d × N` matrix whose column x is the diagonal of `π(x, 1)`.
    pub fn diagonal_matrix(&self) -> ExactMatrix {
        let n = self.n() as u32;
        let cols: Vec<Vec<u64>> = (0..self.n()).map(|x| self.diagonal_exponents(x)).collect();
        ExactMatrix::from_fn(self.dim(), self.n() as usize, |j, x| {
            CycPolynomial::constant(Cyclotomic::root_of_unity(n, cols[x][j] as i64))
        })
        .expect("uniform order")
    }

    /// Index map of `π(0,s)`: coordinate j of `π(0,s)f` is `f[perm[j]]`,
    /// where `h_{perm[j]} = s⁻¹ h_j`.
    pub fn shift_permutation(&self, s: u64) -> Vec<usize> {
        let n = self.n();
        let sinv = self.group.subgroup().inverse(s);
        self.h_enumeration
            .iter()
            .map(|&h| {
                let target = sinv * h % n;
                self.h_enumeration
                    .iter()
                    .position(|&k| k == target)
                    .expect("H is closed")
            })
            .collect()
    }

    /// `π(x, s) = π(x, 1) · π(0, s)` as an exact matrix over `Q(ζ_N)`.
    pub fn matrix(&self, g: GroupElement) -> Result<ExactMatrix, GroupError> {
        self.group.check(g)?;
        let n = self.n() as u32;
        let d = self.dim();
        let exps = self.diagonal_exponents(g.x);
        let perm = self.shift_permutation(g.a);
        let m = ExactMatrix::from_fn(d, d, |j, i| {
            if perm[j] == i {
                CycPolynomial::constant(Cyclotomic::root_of_unity(n, exps[j] as i64))
            } else {
                CycPolynomial::zero(n)
            }
        })
        .expect("square construction");
        Ok(m)
    }

    /// Kernel is trivial iff `gcd(ξ, N) = 1`: `π(x,s) = I` forces `s = 1`
    /// (the shift part is the regular representation of H) and then
    /// `ξ·h⁻¹·x ≡ 0` for all h, i.e. `ξx ≡ 0`.
    pub fn is_faithful(&self) -> bool {
        self.xi.gcd(&self.n()) == 1
    }
}

pub fn rep_matrix(rep: &InducedRep, g: GroupElement) -> Result<ExactMatrix, GroupError> {
    rep.matrix(g)
}

pub fn rep_is_faithful(rep: &InducedRep) -> bool {
    rep.is_faithful()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Deficient,
    FullSpark,
    FullSparkConstructible,
    Unknown,
}

/// The rule that decided a [`DeficiencyVerdict`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DeficiencyRule {
    /// `|H| = 1`: the representation is a character.
    OneDimensional,
    /// N prime: every irreducible representation is full spark.
    PrimeModulus,
    /// `gcd(ξ, N) > 1`: nontrivial kernel.
    NonFaithful,
    /// `|H| ≥ p` for the smallest prime p dividing composite N.
    SubgroupAtLeastSmallestPrime,
    /// H is not cyclic.
    NonCyclicSubgroup,
    /// `N = p^k`, `|H| < p`, elements of H pairwise incongruent mod p.
    PrimePowerIncongruent,
    NoRuleApplies,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DeficiencyVerdict {
    pub verdict: Verdict,
    pub rule: DeficiencyRule,
    pub reason: String,
}

/// Rule cascade deciding whether orbits of `π_ξ` can be full spark.
pub fn deficiency_verdict(group: &SemidirectGroup, xi: u64) -> DeficiencyVerdict {
    let n = group.n();
    let xi = xi % n;
    let h = group.subgroup();
    let order = h.order() as u64;
    let out = |verdict, rule, reason: String| DeficiencyVerdict {
        verdict,
        rule,
        reason,
    };
    if order == 1 {
        return out(
            Verdict::FullSpark,
            DeficiencyRule::OneDimensional,
            "H is trivial, so the representation is a character and every nonzero orbit vector is a basis of C^1".into(),
        );
    }
    if is_prime(n) && xi != 0 {
        return out(
            Verdict::FullSpark,
            DeficiencyRule::PrimeModulus,
            format!("N = {n} is prime: every irreducible representation of Z_N ⋊ H has full spark orbits"),
        );
    }
    let g = xi.gcd(&n);
    if g > 1 {
        return out(
            Verdict::Deficient,
            DeficiencyRule::NonFaithful,
            format!("gcd(ξ, N) = {g} > 1: (N/{g}, 1) acts trivially, so two orbit vectors coincide"),
        );
    }
    let p = smallest_prime_factor(n);
    if order >= p {
        return out(
            Verdict::Deficient,
            DeficiencyRule::SubgroupAtLeastSmallestPrime,
            format!(
                "|H| = {order} ≥ {p}, the smallest prime factor of N = {n}: ξ·H misses the residue class 0 mod {p} and cannot be uniformly distributed"
            ),
        );
    }
    if !h.is_cyclic() {
        return out(
            Verdict::Deficient,
            DeficiencyRule::NonCyclicSubgroup,
            "H is not cyclic, so reduction mod some prime factor of N is not injective on H".into(),
        );
    }
    if let Some((p, _)) = prime_power(n) {
        let mut residues: Vec<u64> = h.elements().iter().map(|a| a % p).collect();
        residues.sort_unstable();
        residues.dedup();
        if order < p && residues.len() == h.order() {
            return out(
                Verdict::FullSparkConstructible,
                DeficiencyRule::PrimePowerIncongruent,
                format!(
                    "N = {n} is a power of {p}, |H| = {order} < {p} and H has distinct residues mod {p}: every minor of the diagonal matrix is nonzero"
                ),
            );
        }
    }
    out(
        Verdict::Unknown,
        DeficiencyRule::NoRuleApplies,
        "no structural rule decides this representation".into(),
    )
}

/// True (deficient) when some eigenvalue repeats and the generator's order is
/// at least the dimension.
pub fn repeated_eigenvalue_deficiency(diag_exponents: &[u64], order: u64, dim: usize) -> bool {
    if order < dim as u64 {
        return false;
    }
    let mut e: Vec<u64> = diag_exponents.iter().map(|x| x % order.max(1)).collect();
    e.sort_unstable();
    e.windows(2).any(|w| w[0] == w[1])
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(x: u64, a: u64) -> GroupElement {
        GroupElement::new(x, a)
    }

    fn z5z4() -> SemidirectGroup {
        SemidirectGroup::from_parts(5, &[1, 2, 3, 4]).unwrap()
    }

    #[test]
    fn subgroup_validation() {
        assert!(UnitSubgroup::new(6, &[1, 5]).is_ok());
        assert!(UnitSubgroup::new(6, &[1, 2]).is_err());
        assert!(UnitSubgroup::new(7, &[1, 2]).is_err()); // not closed
        assert!(UnitSubgroup::new(7, &[2, 4]).is_err()); // no 1
        assert_eq!(UnitSubgroup::generated_by(7, &[2]).unwrap().elements(), &[1, 2, 4]);
        assert_eq!(UnitSubgroup::units(8).unwrap().elements(), &[1, 3, 5, 7]);
    }

    #[test]
    fn enumeration_uses_smallest_generator() {
        let h = UnitSubgroup::units(5).unwrap();
        assert_eq!(h.generator(), Some(2));
        assert_eq!(h.enumeration(), vec![1, 2, 4, 3]);
        let k = UnitSubgroup::units(8).unwrap();
        assert!(!k.is_cyclic());
        assert_eq!(k.enumeration(), vec![1, 3, 5, 7]);
    }

    #[test]
    fn multiplication_examples() {
        let grp = z5z4();
        assert_eq!(grp.multiply(g(0, 1), g(3, 2)).unwrap(), g(3, 2));
        assert_eq!(grp.multiply(g(1, 3), g(2, 3)).unwrap(), g(2, 4));
        assert_eq!(grp.multiply(g(1, 3), g(3, 2)).unwrap(), g(0, 1));
        assert!(grp.multiply(g(5, 1), g(0, 1)).is_err());
        assert!(grp.multiply(g(0, 0), g(0, 1)).is_err());
    }

    #[test]
    fn inverse_examples() {
        let grp = z5z4();
        assert_eq!(grp.inverse(g(0, 1)).unwrap(), g(0, 1));
        assert_eq!(grp.inverse(g(1, 3)).unwrap(), g(3, 2));
        let z6 = SemidirectGroup::from_parts(6, &[1, 5]).unwrap();
        // oracle: exhaustive search for the element multiplying to the identity
        let target = z6
            .elements()
            .into_iter()
            .find(|&h| z6.multiply(g(2, 5), h).unwrap() == z6.identity())
            .unwrap();
        assert_eq!(z6.inverse(g(2, 5)).unwrap(), target);
        assert_eq!(target, g(2, 5));
    }

    fn brute_center(grp: &SemidirectGroup) -> Vec<GroupElement> {
        let all = grp.elements();
        let mut c: Vec<GroupElement> = all
            .iter()
            .copied()
            .filter(|&z| {
                all.iter()
                    .all(|&y| grp.multiply(z, y).unwrap() == grp.multiply(y, z).unwrap())
            })
            .collect();
        c.sort();
        c
    }

    #[test]
    fn center_examples() {
        assert_eq!(SemidirectGroup::from_parts(5, &[1, 2, 3, 4]).unwrap().center(), vec![g(0, 1)]);
        assert_eq!(
            SemidirectGroup::from_parts(6, &[1, 5]).unwrap().center(),
            vec![g(0, 1), g(3, 1)]
        );
        assert_eq!(
            SemidirectGroup::from_parts(8, &[1, 5]).unwrap().center(),
            vec![g(0, 1), g(2, 1), g(4, 1), g(6, 1)]
        );
    }

    #[test]
    fn center_matches_brute_force() {
        for n in 2..=20u64 {
            let units = UnitSubgroup::units(n).unwrap();
            for &a in units.elements() {
                let h = UnitSubgroup::generated_by(n, &[a]).unwrap();
                let grp = SemidirectGroup::new(h);
                if grp.order() > 100 {
                    continue;
                }
                let mut c = grp.center();
                c.sort();
                assert_eq!(c, brute_center(&grp), "Z_{n} ⋊ <{a}>");
            }
        }
    }

    #[test]
    fn stabilizers() {
        let grp = z5z4();
        assert_eq!(grp.character_stabilizer(0).elements(), &[1, 2, 3, 4]);
        assert_eq!(grp.character_stabilizer(1).elements(), &[1]);
        let z8 = SemidirectGroup::from_parts(8, &[1, 3, 5, 7]).unwrap();
        assert_eq!(z8.character_stabilizer(2).elements(), &[1, 5]);
    }

    #[test]
    fn induced_rep_flags() {
        let r = induced_rep(&z5z4(), 1);
        assert_eq!(r.dim(), 4);
        assert!(r.is_irreducible());
        let z6 = SemidirectGroup::from_parts(6, &[1, 5]).unwrap();
        let r6 = induced_rep(&z6, 1);
        assert_eq!(r6.dim(), 2);
        assert!(r6.is_irreducible());
        let z8 = SemidirectGroup::from_parts(8, &[1, 3, 5, 7]).unwrap();
        assert!(!induced_rep(&z8, 2).is_irreducible());
    }

    #[test]
    fn rep_matrices_of_the_z5_example() {
        let r = induced_rep(&z5z4(), 1);
        assert_eq!(r.matrix(g(0, 1)).unwrap(), ExactMatrix::identity(4, 5));
        // π(0, a) with a = 2 is the cyclic shift (f0..f3) ↦ (f3, f0, f1, f2)
        let t = r.matrix(g(0, 2)).unwrap();
        for j in 0..4 {
            for i in 0..4 {
                let expect = if i == (j + 3) % 4 { 1 } else { 0 };
                assert_eq!(t.get(j, i), &CycPolynomial::from_integer(5, expect), "T[{j}][{i}]");
            }
        }
        assert_eq!(r.diagonal_exponents(1), vec![1, 3, 4, 2]);
        let d = r.matrix(g(1, 1)).unwrap();
        for (j, e) in [1, 3, 4, 2].into_iter().enumerate() {
            assert_eq!(d.get(j, j), &CycPolynomial::constant(Cyclotomic::root_of_unity(5, e)));
        }
    }

    #[test]
    fn homomorphism_on_all_pairs() {
        for (n, hs, xi) in [
            (5u64, vec![1u64, 2, 3, 4], 1u64),
            (6, vec![1, 5], 1),
            (7, vec![1, 2, 4], 3),
            (8, vec![1, 3, 5, 7], 1),
            (9, vec![1, 8], 2),
        ] {
            let grp = SemidirectGroup::from_parts(n, &hs).unwrap();
            let rep = induced_rep(&grp, xi);
            let els = grp.elements();
            let mats: Vec<ExactMatrix> = els.iter().map(|&e| rep.matrix(e).unwrap()).collect();
            for (i, &a) in els.iter().enumerate() {
                for (j, &b) in els.iter().enumerate() {
                    let ab = grp.multiply(a, b).unwrap();
                    let k = els.iter().position(|&e| e == ab).unwrap();
                    assert_eq!(mats[i].checked_mul(&mats[j]).unwrap(), mats[k], "{a}·{b} in Z_{n}");
                }
            }
        }
    }

    fn brute_faithful(rep: &InducedRep) -> bool {
        let id = ExactMatrix::identity(rep.dim(), rep.n() as u32);
        rep.group()
            .elements()
            .into_iter()
            .filter(|&e| rep.matrix(e).unwrap() == id)
            .count()
            == 1
    }

    #[test]
    fn faithfulness() {
        let r = induced_rep(&z5z4(), 1);
        assert!(rep_is_faithful(&r));
        let z6 = SemidirectGroup::from_parts(6, &[1, 5]).unwrap();
        assert!(!induced_rep(&z6, 2).is_faithful());
        assert!(induced_rep(&z6, 1).is_faithful());
        for n in 2..=12u64 {
            let h = UnitSubgroup::units(n).unwrap();
            let grp = SemidirectGroup::new(h);
            if grp.order() > 100 {
                continue;
            }
            for xi in 0..n {
                let rep = induced_rep(&grp, xi);
                assert_eq!(rep.is_faithful(), brute_faithful(&rep), "Z_{n}, ξ={xi}");
            }
        }
    }

    #[test]
    fn verdict_examples() {
        let v = deficiency_verdict(&z5z4(), 1);
        assert_eq!((v.verdict, v.rule), (Verdict::FullSpark, DeficiencyRule::PrimeModulus));
        let z6 = SemidirectGroup::from_parts(6, &[1, 5]).unwrap();
        let v = deficiency_verdict(&z6, 1);
        assert_eq!(
            (v.verdict, v.rule),
            (Verdict::Deficient, DeficiencyRule::SubgroupAtLeastSmallestPrime)
        );
        let v = deficiency_verdict(&z6, 2);
        assert_eq!(v.rule, DeficiencyRule::NonFaithful);
        let z9 = SemidirectGroup::from_parts(9, &[1, 8]).unwrap();
        let v = deficiency_verdict(&z9, 1);
        assert_eq!(
            (v.verdict, v.rule),
            (Verdict::FullSparkConstructible, DeficiencyRule::PrimePowerIncongruent)
        );
        // Z_15^x ⊇ {1, 4, 11, 14} ≅ Z_2 × Z_2, |H| = 4 ≥ 3 fires first
        let z15 = SemidirectGroup::from_parts(15, &[1, 4, 11, 14]).unwrap();
        assert_eq!(deficiency_verdict(&z15, 1).rule, DeficiencyRule::SubgroupAtLeastSmallestPrime);
        let z35 = SemidirectGroup::from_parts(35, &[1, 6, 29, 34]).unwrap();
        assert!(!z35.subgroup().is_cyclic());
        assert_eq!(deficiency_verdict(&z35, 1).rule, DeficiencyRule::NonCyclicSubgroup);
        let trivial = SemidirectGroup::from_parts(6, &[1]).unwrap();
        assert_eq!(deficiency_verdict(&trivial, 2).verdict, Verdict::FullSpark);
    }

    #[test]
    fn repeated_eigenvalues() {
        assert!(!repeated_eigenvalue_deficiency(&[1, 3, 4, 2], 5, 4));
        assert!(repeated_eigenvalue_deficiency(&[1, 1, 2, 3], 5, 4));
        assert!(!repeated_eigenvalue_deficiency(&[1, 1], 2, 4));
    }
}
