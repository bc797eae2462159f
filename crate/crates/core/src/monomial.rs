//! Invariant monomials, the G-basis `B(G)`, the L-space `L(G)` and the
//! special representations.
//!
//! Speciality is decided three ways that share no code path:
//!
//! 1. no monomial of character `i` lies in `B(G) \ L(G)`,
//! 2. the weight-`i` semi-invariants need exactly two module generators,
//! 3. the multiplication map `(Ω²)^G ⊗ (O ⊗ V_i)^G -> (Ω² ⊗ V_i)^G` is
//!    surjective, checked on monomial generators by divisor factorisation.
//!
//! All scans run in the box `[0, r]^2`: `x^r` and `y^r` are invariant, so
//! every minimal invariant and every element of `B(G)` lies inside it.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::{CharIndex, GroupParams};

/// The monomial `x^m y^n`.
///
/// Ordered graded-lexicographically: total degree first, then larger
/// `x`-exponent first, so `x^2 < xy < y^2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Monomial {
    pub m: u32,
    pub n: u32,
}

impl Monomial {
    pub const ONE: Monomial = Monomial { m: 0, n: 0 };

    pub const fn new(m: u32, n: u32) -> Self {
        Monomial { m, n }
    }

    pub const fn x(m: u32) -> Self {
        Monomial { m, n: 0 }
    }

    pub const fn y(n: u32) -> Self {
        Monomial { m: 0, n }
    }

    pub fn degree(&self) -> u32 {
        self.m + self.n
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.m <= other.m && self.n <= other.n
    }

    pub fn is_pure_power(&self) -> bool {
        self.m == 0 || self.n == 0
    }

    pub fn exponents(&self) -> [u32; 2] {
        [self.m, self.n]
    }

    /// All monomials dividing `self`, including `1` and `self`.
    pub fn divisors(&self) -> impl Iterator<Item = Monomial> + '_ {
        (0..=self.m).flat_map(move |m| (0..=self.n).map(move |n| Monomial { m, n }))
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| other.m.cmp(&self.m))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn var(f: &mut fmt::Formatter<'_>, v: char, e: u32) -> fmt::Result {
            match e {
                0 => Ok(()),
                1 => write!(f, "{v}"),
                _ => write!(f, "{v}^{e}"),
            }
        }
        if self.m == 0 && self.n == 0 {
            return write!(f, "1");
        }
        var(f, 'x', self.m)?;
        var(f, 'y', self.n)
    }
}

/// A finite set of monomials in graded-lex order.
pub type MonomialSet = BTreeSet<Monomial>;

/// Keeps only the divisibility-minimal elements.
pub fn minimalize<'a>(monomials: impl IntoIterator<Item = &'a Monomial>) -> MonomialSet {
    let all: Vec<Monomial> = monomials.into_iter().copied().collect();
    all.iter()
        .filter(|u| !all.iter().any(|v| v != *u && v.divides(u)))
        .copied()
        .collect()
}

pub fn format_set(set: &MonomialSet) -> String {
    let parts: Vec<String> = set.iter().map(|m| m.to_string()).collect();
    format!("({})", parts.join(", "))
}

/// Outcome of the Theorem-A style speciality test.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpecialReport {
    pub specials: BTreeSet<CharIndex>,
    /// `(x^i, y^{j_i})` with `a j_i ≡ i mod r`.
    pub generator_pairs: BTreeMap<CharIndex, (Monomial, Monomial)>,
    /// Graded-lex least monomial of character `i` in `B(G) \ L(G)`.
    pub nonspecials: BTreeMap<CharIndex, Monomial>,
}

impl SpecialReport {
    pub fn is_special(&self, i: CharIndex) -> bool {
        self.specials.contains(&i)
    }
}

/// Monomial data of one group, computed once and read-only afterwards.
#[derive(Clone, Debug)]
pub struct Lattice {
    group: GroupParams,
    invariants: MonomialSet,
    basis: MonomialSet,
}

impl Lattice {
    pub fn new(group: GroupParams) -> Self {
        let invariants = scan_invariant_generators(group);
        let basis = scan_g_basis(group, &invariants);
        Lattice {
            group,
            invariants,
            basis,
        }
    }

    pub fn group(&self) -> GroupParams {
        self.group
    }

    pub fn invariant_generators(&self) -> &MonomialSet {
        &self.invariants
    }

    pub fn g_basis(&self) -> &MonomialSet {
        &self.basis
    }

    pub fn l_space(&self) -> MonomialSet {
        l_space(self.group)
    }

    pub fn in_l_space(&self, mono: &Monomial) -> bool {
        mono.is_pure_power() && mono.m < self.group.order() && mono.n < self.group.order()
    }

    /// `B(G) \ L(G)`.
    pub fn basis_excess(&self) -> MonomialSet {
        self.basis
            .iter()
            .filter(|u| !self.in_l_space(u))
            .copied()
            .collect()
    }

    /// Minimal generators of the weight-`i` semi-invariants over the
    /// invariant ring, i.e. `B(G)` restricted to character `i`.
    pub fn module_generators(&self, i: CharIndex) -> MonomialSet {
        let i = self.group.char_index(i.0 as i64);
        self.basis
            .iter()
            .filter(|u| self.group.character(u.m, u.n) == i)
            .copied()
            .collect()
    }

    /// The unique `j` in `[1, r)` with `a j ≡ i mod r`.
    pub fn y_partner(&self, i: CharIndex) -> u32 {
        let (r, a) = (self.group.order() as u64, self.group.exponent() as u64);
        (0..self.group.order())
            .find(|&j| (a * j as u64) % r == i.0 as u64 % r)
            .expect("a is a unit mod r")
    }

    pub fn special_reps(&self) -> SpecialReport {
        let excess = self.basis_excess();
        let mut report = SpecialReport {
            specials: BTreeSet::new(),
            generator_pairs: BTreeMap::new(),
            nonspecials: BTreeMap::new(),
        };
        for i in self.group.nontrivial_characters() {
            // `excess` iterates in graded-lex order, so the first hit is the least witness.
            let witness = excess
                .iter()
                .find(|u| self.group.character(u.m, u.n) == i);
            match witness {
                Some(w) => {
                    report.nonspecials.insert(i, *w);
                }
                None => {
                    report.specials.insert(i);
                    report
                        .generator_pairs
                        .insert(i, (Monomial::x(i.0), Monomial::y(self.y_partner(i))));
                }
            }
        }
        report
    }

    /// Speciality via surjectivity of `Φ_i` on monomials: every generator
    /// `t` of the target (character `i - a - 1`) must factor as `f * (t/f)`
    /// with `f` of character `i`; then `t/f` has the character of the
    /// generator of `(Ω²)^G`.
    pub fn surjectivity_oracle(&self, i: CharIndex) -> Result<bool> {
        let g = self.group;
        let i = g.char_index(i.0 as i64);
        if i.is_trivial() {
            return Err(Error::TrivialIndex);
        }
        let target = g.char_index(i.0 as i64 - g.exponent() as i64 - 1);
        Ok(self
            .module_generators(target)
            .iter()
            .all(|t| t.divisors().any(|f| g.character(f.m, f.n) == i)))
    }
}

fn scan_invariant_generators(g: GroupParams) -> MonomialSet {
    let r = g.order();
    let candidates: Vec<Monomial> = (0..=r)
        .flat_map(|m| (0..=r).map(move |n| Monomial::new(m, n)))
        .filter(|u| *u != Monomial::ONE && g.character(u.m, u.n).is_trivial())
        .collect();
    minimalize(&candidates)
}

fn scan_g_basis(g: GroupParams, invariants: &MonomialSet) -> MonomialSet {
    let r = g.order();
    let basis: MonomialSet = (0..=r)
        .flat_map(|m| (0..=r).map(move |n| Monomial::new(m, n)))
        .filter(|u| !invariants.iter().any(|v| v.divides(u)))
        .collect();
    assert!(
        basis.iter().all(|u| u.m < r && u.n < r),
        "B(G) escapes the scan box"
    );
    basis
}

pub fn invariant_generators(g: GroupParams) -> MonomialSet {
    scan_invariant_generators(g)
}

pub fn g_basis(g: GroupParams) -> MonomialSet {
    Lattice::new(g).basis
}

/// `{1, x, ..., x^{r-1}, y, ..., y^{r-1}}`.
pub fn l_space(g: GroupParams) -> MonomialSet {
    let r = g.order();
    (0..r)
        .map(Monomial::x)
        .chain((1..r).map(Monomial::y))
        .collect()
}

pub fn special_reps(g: GroupParams) -> SpecialReport {
    Lattice::new(g).special_reps()
}

pub fn module_generators(g: GroupParams, i: CharIndex) -> MonomialSet {
    Lattice::new(g).module_generators(i)
}

pub fn surjectivity_oracle(g: GroupParams, i: CharIndex) -> Result<bool> {
    Lattice::new(g).surjectivity_oracle(i)
}
