//! Groups of order `2n` with a cyclic subgroup `<α>` of index 2.
//!
//! Every such group has a presentation
//! `<α, τ | α^n = 1, ατ = τα^r, τ² = c>` with `c = 1` (type A),
//! `c = α^{n/2}` (type B) or `c = α^m` (type C), where `n = 2^s m`, `m` odd.
//! Elements are stored in normal form `τ^a α^x` at index `a·n + x`.

use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::{Element, FiniteGroup, Subgroup};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum PresentationType {
    A,
    B,
    C,
}

impl fmt::Display for PresentationType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Self::A => "A",
            Self::B => "B",
            Self::C => "C",
        };
        f.write_str(s)
    }
}

impl FromStr for PresentationType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "A" | "a" => Ok(Self::A),
            "B" | "b" => Ok(Self::B),
            "C" | "c" => Ok(Self::C),
            other => Err(Error::Parse(format!("unknown presentation type {other:?}"))),
        }
    }
}

/// Isomorphism type of the Sylow 2-subgroup.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum TwoGroupKind {
    Cyclic,
    AbelianNoncyclic,
    Dihedral,
    GeneralizedQuaternion,
    SemiDihedral,
    OrdinaryMetacyclic,
}

/// Classification datum `(s, m, r, type)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Index2Params {
    pub s: u32,
    pub m: usize,
    pub r: usize,
    pub ptype: PresentationType,
}

/// Two-adic valuation, with `ν₂(0) = ∞`.
fn nu2(x: usize) -> u32 {
    if x == 0 {
        u32::MAX
    } else {
        x.trailing_zeros()
    }
}

pub fn is_prime(p: usize) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

impl Index2Params {
    pub fn new(s: u32, m: usize, r: usize, ptype: PresentationType) -> Self {
        Self { s, m, r, ptype }
    }

    pub fn two_power(&self) -> usize {
        1usize << self.s
    }

    /// `n = 2^s m`, the order of `<α>`.
    pub fn n(&self) -> usize {
        self.two_power() * self.m
    }

    pub fn order(&self) -> usize {
        2 * self.n()
    }

    /// `n⁻ = gcd(r-1, n)`.
    pub fn n_minus(&self) -> usize {
        (self.r - 1).gcd(&self.n())
    }

    /// `n⁺ = n / n⁻`.
    pub fn n_plus(&self) -> usize {
        self.n() / self.n_minus()
    }

    pub fn m_minus(&self) -> usize {
        (self.r - 1).gcd(&self.m)
    }

    pub fn m_plus(&self) -> usize {
        (self.r + 1).gcd(&self.m)
    }

    /// `ρ(P)`: the residue of `r` modulo `2^s`, taken in `[1, 2^s]`.
    pub fn rho(&self) -> usize {
        (self.r - 1) % self.two_power() + 1
    }

    pub fn is_abelian(&self) -> bool {
        self.r == 1
    }

    /// Exponent `c` with `τ² = α^c`.
    pub fn tau_square_exponent(&self) -> usize {
        match self.ptype {
            PresentationType::A => 0,
            PresentationType::B => self.n() / 2,
            PresentationType::C => self.m % self.n(),
        }
    }

    /// Checks every parameter invariant and returns the Sylow 2-subgroup type.
    pub fn validate(&self) -> Result<TwoGroupKind> {
        let bad = |msg: String| Err(Error::InvalidParams(msg));
        if self.m == 0 || self.m.is_multiple_of(2) {
            return bad(format!("m = {} must be odd and positive", self.m));
        }
        if self.s > 24 {
            return bad(format!("s = {} is too large", self.s));
        }
        let n = self.n();
        if self.r < 1 || self.r > n {
            return bad(format!("r = {} outside [1, n] = [1, {n}]", self.r));
        }
        if (self.r * self.r) % self.m != 1 % self.m {
            return bad(format!("r² ≢ 1 mod m (r = {}, m = {})", self.r, self.m));
        }
        if self.ptype == PresentationType::B && self.s == 0 {
            return bad("type B needs s ≥ 1".into());
        }
        let kind = self.kind_from_rho()?;
        self.check_two_adic_table()?;
        if !(self.r + 1).is_multiple_of(self.n_plus()) {
            return bad(format!("n⁺ = {} does not divide r + 1 = {}", self.n_plus(), self.r + 1));
        }
        let (mp, mm) = (self.m_plus(), self.m_minus());
        if mp * mm != self.m || mp.gcd(&mm) != 1 {
            return bad(format!("m = {} does not split as m⁺m⁻ = {mp}·{mm}", self.m));
        }
        Ok(kind)
    }

    fn kind_from_rho(&self) -> Result<TwoGroupKind> {
        use PresentationType::*;
        use TwoGroupKind::*;
        let s = self.s;
        let rho = self.rho();
        let q = self.two_power();
        let err = |msg: String| Err(Error::InvalidParams(msg));
        if rho == 1 {
            return match (self.ptype, s) {
                (A, 0) => Ok(Cyclic),
                (A, _) => Ok(AbelianNoncyclic),
                (C, _) => Ok(Cyclic),
                (B, 1) => Ok(Cyclic),
                (B, _) => err(format!("type B with r ≡ 1 mod 2^s needs s = 1 (s = {s})")),
            };
        }
        if s >= 2 && rho == q - 1 {
            return match self.ptype {
                A => Ok(Dihedral),
                B => Ok(GeneralizedQuaternion),
                C => err("type C needs r ≡ 1 mod 2^s".into()),
            };
        }
        if s >= 3 && (rho == q / 2 - 1 || rho == q / 2 + 1) {
            return match self.ptype {
                A if rho == q / 2 - 1 => Ok(SemiDihedral),
                A => Ok(OrdinaryMetacyclic),
                other => err(format!("ρ = {rho} with s = {s} only occurs for type A, not {other}")),
            };
        }
        err(format!(
            "r mod 2^s = {rho} is not ρ(P) of any Sylow 2-subgroup type (s = {s})"
        ))
    }

    /// The two-adic constraints on `r ∓ 1` attached to each value of `ρ(P)`.
    fn check_two_adic_table(&self) -> Result<()> {
        let s = self.s;
        let q = self.two_power();
        let rho = self.rho();
        let (lo, hi) = (nu2(self.r - 1), nu2(self.r + 1));
        let ok = if rho == 1 && s <= 1 {
            lo >= s && hi >= s
        } else if rho == 1 {
            lo >= s && hi == 1
        } else if rho == q - 1 {
            lo == 1 && hi >= s
        } else if rho == q / 2 - 1 {
            lo == 1 && hi == s - 1
        } else if rho == q / 2 + 1 {
            lo == s - 1 && hi == 1
        } else {
            false
        };
        if ok {
            Ok(())
        } else {
            Err(Error::InvalidParams(format!(
                "two-adic table violated: ν₂(r-1) = {lo}, ν₂(r+1) = {hi}, ρ = {rho}, s = {s}"
            )))
        }
    }

    /// A conventional name such as `D8`, `Q12` or `C2xC4`.
    pub fn display_name(&self) -> String {
        let order = self.order();
        let n = self.n();
        let kind = self.kind_from_rho().ok();
        if self.r == 1 {
            return match kind {
                Some(TwoGroupKind::AbelianNoncyclic) => format!("C2xC{n}"),
                _ => format!("C{order}"),
            };
        }
        if self.r == n - 1 {
            return match (self.ptype, n) {
                (PresentationType::A, 3) => "S3".into(),
                (PresentationType::A, _) => format!("D{order}"),
                _ => format!("Q{order}"),
            };
        }
        match kind {
            Some(TwoGroupKind::SemiDihedral) if self.m == 1 => format!("SD{order}"),
            Some(TwoGroupKind::OrdinaryMetacyclic) if self.m == 1 => format!("M{order}"),
            _ => format!("G{order}(s={},m={},r={},{})", self.s, self.m, self.r, self.ptype),
        }
    }

    pub fn info(&self) -> Result<Index2Info> {
        let kind = self.validate()?;
        Ok(Index2Info {
            params: *self,
            name: self.display_name(),
            order: self.order(),
            n: self.n(),
            n_plus: self.n_plus(),
            n_minus: self.n_minus(),
            m_plus: self.m_plus(),
            m_minus: self.m_minus(),
            rho: self.rho(),
            kind,
        })
    }
}

impl fmt::Display for Index2Params {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(s={}, m={}, r={}, {})", self.s, self.m, self.r, self.ptype)
    }
}

/// Parameters plus every derived invariant, as emitted by the catalog.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Index2Info {
    #[serde(flatten)]
    pub params: Index2Params,
    pub name: String,
    pub order: usize,
    pub n: usize,
    pub n_plus: usize,
    pub n_minus: usize,
    pub m_plus: usize,
    pub m_minus: usize,
    pub rho: usize,
    pub kind: TwoGroupKind,
}

/// A constructed group together with its classification datum.
#[derive(Clone, Debug)]
pub struct Index2Group {
    params: Index2Params,
    kind: TwoGroupKind,
    group: FiniteGroup,
}

fn label(n: usize, idx: usize) -> String {
    let (a, x) = (idx / n, idx % n);
    let alpha = match x {
        0 => String::new(),
        1 => "a".to_string(),
        _ => format!("a^{x}"),
    };
    match (a, alpha.is_empty()) {
        (0, true) => "1".into(),
        (0, false) => alpha,
        (_, true) => "t".into(),
        (_, false) => format!("t*{alpha}"),
    }
}

/// Builds the group on normal forms `τ^a α^x` using
/// `(τ^a α^x)(τ^b α^y) = τ^{a+b} α^{x r^b + y}` and the type's `τ²` rule.
pub fn build_group(params: Index2Params) -> Result<Index2Group> {
    let kind = params.validate()?;
    let n = params.n();
    let order = 2 * n;
    let r = params.r % n;
    let c = params.tau_square_exponent();
    let mut table = vec![0; order * order];
    for g in 0..order {
        let (a, x) = (g / n, g % n);
        for h in 0..order {
            let (b, y) = (h / n, h % n);
            let twisted = if b == 1 { x * r % n } else { x };
            let mut exp = (twisted + y) % n;
            let mut t = a + b;
            if t == 2 {
                t = 0;
                exp = (exp + c) % n;
            }
            table[g * order + h] = t * n + exp;
        }
    }
    let labels = (0..order).map(|i| label(n, i)).collect();
    let group = FiniteGroup::from_table(order, table, Some(labels))
        .map_err(|e| Error::InvalidParams(format!("presentation does not define a group: {e}")))?;
    Ok(Index2Group { params, kind, group })
}

impl Index2Group {
    pub fn params(&self) -> &Index2Params {
        &self.params
    }

    pub fn kind(&self) -> TwoGroupKind {
        self.kind
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn n(&self) -> usize {
        self.params.n()
    }

    /// `α^x`, exponent taken modulo `n`.
    pub fn alpha_pow(&self, x: i64) -> Element {
        x.rem_euclid(self.n() as i64) as Element
    }

    /// `τα^x`, exponent taken modulo `n`.
    pub fn tau_alpha(&self, x: i64) -> Element {
        self.n() + self.alpha_pow(x)
    }

    pub fn tau(&self) -> Element {
        self.n()
    }

    /// Exponent data `(a, x)` of the normal form `τ^a α^x`.
    pub fn normal_form(&self, g: Element) -> (usize, usize) {
        (g / self.n(), g % self.n())
    }

    pub fn in_alpha_subgroup(&self, g: Element) -> bool {
        g < self.n()
    }

    /// `<α^k>` as a subgroup.
    pub fn alpha_power_subgroup(&self, k: usize) -> Subgroup {
        let g = &self.group;
        g.generated_subgroup(&g.set_of([self.alpha_pow(k as i64)]))
            .expect("nonempty generator set")
    }

    pub fn name(&self) -> String {
        self.params.display_name()
    }
}

/// One parameter set per isomorphism class of groups of order at most `max_order`.
///
/// Overlapping presentations are emitted once: a cyclic Sylow subgroup is
/// written as type A when `s = 0`, type B when `s = 1` and type C otherwise;
/// type B with `s ≥ 2` is reserved for generalized quaternion Sylow subgroups.
pub fn enumerate_groups(max_order: usize) -> Vec<Index2Params> {
    use PresentationType::*;
    use TwoGroupKind::*;
    let mut out = Vec::new();
    let mut s = 0u32;
    while (2usize << s) <= max_order {
        let q = 1usize << s;
        let mut m = 1;
        while 2 * q * m <= max_order {
            let n = q * m;
            let mut classes: Vec<(TwoGroupKind, usize, PresentationType)> = vec![(
                Cyclic,
                1,
                match s {
                    0 => A,
                    1 => B,
                    _ => C,
                },
            )];
            if s >= 1 {
                classes.push((AbelianNoncyclic, 1, A));
            }
            if s >= 2 {
                classes.push((Dihedral, q - 1, A));
                classes.push((GeneralizedQuaternion, q - 1, B));
            }
            if s >= 3 {
                classes.push((SemiDihedral, q / 2 - 1, A));
                classes.push((OrdinaryMetacyclic, q / 2 + 1, A));
            }
            for (_, rho, ptype) in classes {
                for r in 1..=n {
                    if (r - 1) % q + 1 == rho && (r * r) % m == 1 % m {
                        out.push(Index2Params::new(s, m, r, ptype));
                    }
                }
            }
            m += 2;
        }
        s += 1;
    }
    out.sort_by_key(|p| (p.order(), p.kind_from_rho().ok(), p.r));
    out
}

/// `G'` and `Z(G)` from their closed forms, cross-checked against direct computation.
#[derive(Clone, Debug)]
pub struct StructuralInvariants {
    pub commutator: Subgroup,
    pub center: Subgroup,
    pub commutator_order: usize,
    pub center_order: usize,
}

pub fn structural_invariants(g: &Index2Group) -> Result<StructuralInvariants> {
    let p = g.params;
    let grp = &g.group;
    let commutator = g.alpha_power_subgroup(p.n_minus());
    let via_r = g.alpha_power_subgroup(p.r - 1);
    let center = if p.is_abelian() {
        grp.whole()
    } else {
        g.alpha_power_subgroup(p.n_plus())
    };
    let direct_commutator = grp.commutator_subgroup();
    let direct_center = grp.center();
    if commutator != direct_commutator || via_r != direct_commutator {
        return Err(Error::Mismatch(format!(
            "G' formula {:?} differs from closure {:?} for {p}",
            commutator.elements(),
            direct_commutator.elements()
        )));
    }
    if center != direct_center {
        return Err(Error::Mismatch(format!(
            "Z(G) formula {:?} differs from filter {:?} for {p}",
            center.elements(),
            direct_center.elements()
        )));
    }
    if !p.is_abelian() && (commutator.order() != p.n_plus() || center.order() != p.n_minus()) {
        return Err(Error::Mismatch(format!("|G'| or |Z(G)| disagrees with n⁺, n⁻ for {p}")));
    }
    Ok(StructuralInvariants {
        commutator_order: commutator.order(),
        center_order: center.order(),
        commutator,
        center,
    })
}

/// `C_G(τ) = <α^{n⁺}, τ> ≅ C₂ × C_{n⁻}` when the Sylow 2-subgroup is neither cyclic nor dicyclic.
pub fn centralizer_of_tau(g: &Index2Group) -> Result<Subgroup> {
    if matches!(g.kind, TwoGroupKind::Cyclic | TwoGroupKind::GeneralizedQuaternion) {
        return Err(Error::Precondition(format!(
            "Sylow 2-subgroup of {} is {:?}",
            g.name(),
            g.kind
        )));
    }
    let p = g.params;
    let grp = &g.group;
    let formula = grp.generated_subgroup(&grp.set_of([g.alpha_pow(p.n_plus() as i64), g.tau()]))?;
    let direct = grp.centralizer(&grp.set_of([g.tau()]))?;
    if formula != direct {
        return Err(Error::Mismatch(format!(
            "C_G(τ) formula {:?} differs from filter {:?} for {p}",
            formula.elements(),
            direct.elements()
        )));
    }
    if formula.order() != 2 * p.n_minus() {
        return Err(Error::Mismatch(format!("|C_G(τ)| = {} ≠ 2n⁻", formula.order())));
    }
    let members = formula.elements();
    let abelian = members
        .iter()
        .all(|&x| members.iter().all(|&y| grp.mul(x, y) == grp.mul(y, x)));
    let cyclic = members.iter().any(|&x| grp.element_order(x) == formula.order());
    if !abelian || cyclic {
        return Err(Error::Mismatch(format!(
            "C_G(τ) should be abelian and non-cyclic (abelian = {abelian}, cyclic = {cyclic})"
        )));
    }
    Ok(formula)
}

/// `H = <α^{n⁺/q}, τ>` for a prime `q | n⁺`, together with `H'`.
#[derive(Clone, Debug)]
pub struct ReductionSubgroup {
    pub subgroup: Subgroup,
    pub commutator_order: usize,
}

pub fn reduction_subgroup(g: &Index2Group, q: usize) -> Result<ReductionSubgroup> {
    let p = g.params;
    if p.is_abelian() {
        return Err(Error::Precondition(
            "reduction needs a non-abelian group (r ≠ 1)".into(),
        ));
    }
    if !is_prime(q) || !p.n_plus().is_multiple_of(q) {
        return Err(Error::Precondition(format!(
            "{q} is not a prime divisor of n⁺ = {}",
            p.n_plus()
        )));
    }
    let grp = &g.group;
    let gen = g.alpha_pow((p.n_plus() / q) as i64);
    let h = grp.generated_subgroup(&grp.set_of([gen, g.tau()]))?;
    if h.order() != 2 * p.n_minus() * q {
        return Err(Error::Mismatch(format!("|H| = {} ≠ 2n⁻q", h.order())));
    }
    if 2 * grp.element_order(gen) != h.order() {
        return Err(Error::Mismatch("<α^{n⁺/q}> is not of index 2 in H".into()));
    }
    let (local, _) = grp.induced_group(&h);
    let commutator_order = local.commutator_subgroup().order();
    if commutator_order != q {
        return Err(Error::Mismatch(format!("|H'| = {commutator_order} ≠ {q}")));
    }
    Ok(ReductionSubgroup {
        subgroup: h,
        commutator_order,
    })
}
