//! Verdicts on Legendrian surgeries between lens spaces.
//!
//! Each rule answers within an explicit [`Scope`]: knot versus link, and
//! which contact structures sit at either end. A rule only says
//! [`Verdict::Possible`] when it can name a concrete surgery; when no
//! obstruction applies the answer is [`Verdict::Inconclusive`].

use std::fmt;

use crate::arith::{gcd, is_prime, legendre, mod_inverse, mul_mod, neg_continued_fraction, SquareTable};
use crate::{Error, LensSpace, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Verdict {
    Obstructed,
    Possible,
    Inconclusive,
    Inapplicable,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Obstructed => "Obstructed",
            Verdict::Possible => "Possible",
            Verdict::Inconclusive => "Inconclusive",
            Verdict::Inapplicable => "Inapplicable",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Components {
    Exactly(u64),
    Any,
}

impl Components {
    pub const KNOT: Components = Components::Exactly(1);
}

impl fmt::Display for Components {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Components::Exactly(1) => f.write_str("knot"),
            Components::Exactly(n) => write!(f, "{n}-component link"),
            Components::Any => f.write_str("link"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ContactKind {
    Tight,
    UniversallyTight,
    Overtwisted,
    /// The same contact structure as the source.
    SameAsSource,
    Any,
}

impl fmt::Display for ContactKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ContactKind::Tight => "tight",
            ContactKind::UniversallyTight => "universally tight",
            ContactKind::Overtwisted => "overtwisted",
            ContactKind::SameAsSource => "same as source",
            ContactKind::Any => "any",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Scope {
    pub components: Components,
    pub source: ContactKind,
    pub target: ContactKind,
}

impl Scope {
    pub fn tight(components: Components) -> Self {
        Scope {
            components,
            source: ContactKind::Tight,
            target: ContactKind::Tight,
        }
    }
}

impl fmt::Display for Scope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}; source {}; target {}", self.components, self.source, self.target)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Rule {
    /// Heegaard Floer vanishing via the surgery triangle.
    Hflo,
    /// Same criterion restated for prime `p2`.
    HfloPrimeForm,
    /// `b2` accounting against the classification of Stein fillings.
    SteinFillings,
    /// Planar open book bound on filling `b2`, and non-integrality of
    /// cosmetic surgeries.
    SelfSurgery,
    /// Maximal Thurston-Bennequin number of the only torus knot with the
    /// required integral surgery.
    TorusKnotTb,
    /// Thurston-Bennequin numbers of non-loose unknots.
    UnknotTb,
    /// Witness: the target's plumbing chain extends the source's.
    ChainExtension,
}

impl Rule {
    pub fn id(&self) -> &'static str {
        match self {
            Rule::Hflo => "hflo",
            Rule::HfloPrimeForm => "hflo-prime",
            Rule::SteinFillings => "stein-fillings",
            Rule::SelfSurgery => "self-surgery",
            Rule::TorusKnotTb => "tb-torus",
            Rule::UnknotTb => "tb-unknot",
            Rule::ChainExtension => "chain-extension",
        }
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ObstructionVerdict {
    pub verdict: Verdict,
    pub rule: Rule,
    pub scope: Scope,
    /// Exact arithmetic trace behind the verdict.
    pub details: String,
    /// Surgery realizing a `Possible` verdict.
    pub witness: Option<String>,
}

impl ObstructionVerdict {
    fn new(verdict: Verdict, rule: Rule, scope: Scope, details: impl Into<String>) -> Self {
        ObstructionVerdict {
            verdict,
            rule,
            scope,
            details: details.into(),
            witness: None,
        }
    }

    fn possible(rule: Rule, scope: Scope, details: impl Into<String>, witness: String) -> Self {
        ObstructionVerdict {
            witness: Some(witness),
            ..Self::new(Verdict::Possible, rule, scope, details)
        }
    }
}

fn sq_word(is_square: bool) -> &'static str {
    if is_square {
        "square"
    } else {
        "non-square"
    }
}

/// `|-a + k p2|`, the order of `H1` of the `l + k m` surgery.
pub fn surgery_homology_order(a: i64, p2: i64, k: i64) -> u128 {
    (-(a as i128) + (k as i128) * (p2 as i128)).unsigned_abs()
}

/// Sign of the integer `a` with `a m + p2 l` bounding in the knot
/// complement: `-p1` when only `-p1 q2` is a square mod `p2`, `+p1` when only
/// `p1 q2` is, `None` when residues cannot decide.
pub fn determine_a_sign(l1: &LensSpace, l2: &LensSpace) -> Option<i64> {
    let table = SquareTable::new(l2.p()).ok()?;
    determine_a_sign_with(&table, l1, l2)
}

fn determine_a_sign_with(table: &SquareTable, l1: &LensSpace, l2: &LensSpace) -> Option<i64> {
    let (p1, p2, q2) = (l1.p(), l2.p(), l2.q());
    let neg = table.contains(-mul_mod(p1, q2, p2));
    let pos = table.contains(mul_mod(p1, q2, p2));
    match (neg, pos) {
        (true, false) => Some(-p1),
        (false, true) => Some(p1),
        _ => None,
    }
}

/// The homology condition of the triangle lemma,
/// `|H1(Y_{l+m})| = |H1(Y_l)| + |H1(Y)|` with `|a| = p1`.
pub fn triangle_lspace_check(p1: i64, p2: i64, a: i64) -> bool {
    debug_assert_eq!(a.abs(), p1);
    surgery_homology_order(a, p2, 1) == (a as i128).unsigned_abs() + p2 as u128
}

pub fn hflo(l1: &LensSpace, l2: &LensSpace) -> ObstructionVerdict {
    match SquareTable::new(l2.p()) {
        Ok(table) => hflo_with(&table, l1, l2),
        Err(_) => ObstructionVerdict::new(
            Verdict::Inapplicable,
            Rule::Hflo,
            Scope::tight(Components::KNOT),
            "criterion needs p1, p2 >= 2",
        ),
    }
}

/// [`hflo`] with a precomputed table of squares mod `p2`.
pub fn hflo_with(table: &SquareTable, l1: &LensSpace, l2: &LensSpace) -> ObstructionVerdict {
    let scope = Scope::tight(Components::KNOT);
    let (p1, p2, q2) = (l1.p(), l2.p(), l2.q());
    if p1 < 2 || p2 < 2 {
        return ObstructionVerdict::new(
            Verdict::Inapplicable,
            Rule::Hflo,
            scope,
            "criterion needs p1, p2 >= 2",
        );
    }
    debug_assert_eq!(table.modulus(), p2);
    let g = gcd(p1, p2);
    if g != 1 {
        return ObstructionVerdict::new(
            Verdict::Inapplicable,
            Rule::Hflo,
            scope,
            format!("gcd({p1},{p2}) = {g}"),
        );
    }
    let r = (-mul_mod(p1, q2, p2)).rem_euclid(p2);
    let minus_one = p2 - 1;
    let r_sq = table.contains(r);
    let m_sq = table.contains(-1);
    let mut details = format!(
        "gcd({p1},{p2}) = 1; -p1*q2 = -{p1}*{q2} = {r} mod {p2} is a {}; -1 = {minus_one} mod {p2} is a {}",
        sq_word(r_sq),
        sq_word(m_sq)
    );
    if r_sq && !m_sq {
        let a = determine_a_sign_with(table, l1, l2).expect("sign decided when -1 is a non-square");
        let q_inv = mod_inverse(q2, p2).expect("q2 is a unit");
        details.push_str(&format!(
            "; a = {a}; self-linking a = {} = k^2*q' with q' = {q_inv}; |H1(Y_l)| = {}, |H1(Y)| = {p2}, |H1(Y_(l+m))| = {} = {} + {p2}; map vanishes",
            a.rem_euclid(p2),
            a.abs(),
            surgery_homology_order(a, p2, 1),
            a.abs()
        ));
        ObstructionVerdict::new(Verdict::Obstructed, Rule::Hflo, scope, details)
    } else {
        ObstructionVerdict::new(Verdict::Inconclusive, Rule::Hflo, scope, details)
    }
}

/// The criterion for prime `p2`: `p2 = 3 mod 4` and exactly one of `p1`,
/// `q2` is a square.
pub fn hflo_prime_form(l1: &LensSpace, l2: &LensSpace) -> Result<ObstructionVerdict> {
    let (p1, p2, q2) = (l1.p(), l2.p(), l2.q());
    if !is_prime(p2) {
        return Err(Error::NotPrime(p2));
    }
    let scope = Scope::tight(Components::KNOT);
    if p1 < 2 || gcd(p1, p2) != 1 {
        return Ok(ObstructionVerdict::new(
            Verdict::Inapplicable,
            Rule::HfloPrimeForm,
            scope,
            format!("needs p1 >= 2 coprime to {p2}"),
        ));
    }
    // every unit mod 2 is a square
    let is_square = |a: i64| p2 == 2 || legendre(a, p2) == Ok(1);
    let (p1_sq, q2_sq) = (is_square(p1), is_square(q2));
    let details = format!(
        "{p2} = {} mod 4; p1 = {} mod {p2} is a {}; q2 = {q2} is a {}",
        p2 % 4,
        p1 % p2,
        sq_word(p1_sq),
        sq_word(q2_sq)
    );
    let verdict = if p2 % 4 == 3 && (p1_sq != q2_sq) {
        Verdict::Obstructed
    } else {
        Verdict::Inconclusive
    };
    Ok(ObstructionVerdict::new(verdict, Rule::HfloPrimeForm, scope, details))
}

fn is_lp1(l: &LensSpace) -> bool {
    !l.is_sphere() && l.q() == 1
}

fn is_lpp1(l: &LensSpace) -> bool {
    !l.is_sphere() && l.q() == l.p() - 1
}

/// Second Betti numbers of the Stein fillings of the standard tight
/// structure, for the families where the classification is explicit.
pub fn filling_b2_multiset(l: &LensSpace) -> Option<Vec<u64>> {
    if l.is_sphere() {
        Some(vec![0])
    } else if l.q() == 1 && l.p() == 4 {
        Some(vec![0, 1])
    } else if l.q() == 1 {
        Some(vec![1])
    } else if is_lpp1(l) {
        Some(vec![(l.p() - 1) as u64])
    } else {
        None
    }
}

/// Verdict from Stein filling classifications: a filling of `l1` plus the
/// surgery handles is a filling of `l2`.
pub fn stein_cobordism_verdict(
    l1: &LensSpace,
    l2: &LensSpace,
    components: Components,
) -> ObstructionVerdict {
    let rule = Rule::SteinFillings;
    let scope = Scope::tight(components);
    if l2.is_sphere() {
        return ObstructionVerdict::new(
            Verdict::Obstructed,
            rule,
            scope,
            "tight S^3 has the unique filling D^4 with b2 = 0; a filling plus n >= 1 handles has b2 >= 1",
        );
    }
    if is_lp1(l2) {
        let p = l2.p();
        let scope = Scope {
            target: ContactKind::UniversallyTight,
            ..scope
        };
        let multiset = filling_b2_multiset(l2).expect("L(p,1) is tabulated");
        if !l1.is_sphere() {
            return ObstructionVerdict::new(
                Verdict::Obstructed,
                rule,
                scope,
                format!("fillings of universally tight {l2} have b2 in {multiset:?} and are reached only from S^3 by a knot; source is {l1}"),
            );
        }
        return match components {
            Components::Exactly(1) | Components::Any => ObstructionVerdict::possible(
                rule,
                scope,
                format!("D^4 plus one handle gives D_(-{p}) with b2 = 1"),
                format!(
                    "Legendrian surgery on the unknot with tb = {}, rot = {} in (S^3, xi_std)",
                    1 - p,
                    p - 2
                ),
            ),
            Components::Exactly(n) => ObstructionVerdict::new(
                Verdict::Obstructed,
                rule,
                scope,
                format!("D^4 plus {n} handles has b2 = {n}, not in {multiset:?}"),
            ),
        };
    }
    if is_lpp1(l2) && (l1.is_sphere() || is_lpp1(l1)) {
        let (m, n) = (l1.p(), l2.p());
        let need = n - m;
        let detail = |k: String| {
            format!(
                "unique fillings: b2({l1}) = {}, b2({l2}) = {}; handles needed = {} - {} = {need}; requested {k}",
                m - 1,
                n - 1,
                n - 1,
                m - 1
            )
        };
        let witness = || {
            format!(
                "extend the chain of {} tb = -1 unknots by {need} more Legendrian unknot(s) with tb = -1, rot = 0",
                m - 1
            )
        };
        return match components {
            Components::Exactly(k) if need >= 1 && k == need as u64 => {
                ObstructionVerdict::possible(rule, scope, detail(k.to_string()), witness())
            }
            Components::Exactly(k) => ObstructionVerdict::new(
                Verdict::Obstructed,
                rule,
                scope,
                detail(k.to_string()),
            ),
            Components::Any if need >= 1 => {
                ObstructionVerdict::possible(rule, scope, detail("any".into()), witness())
            }
            Components::Any => {
                ObstructionVerdict::new(Verdict::Obstructed, rule, scope, detail("any".into()))
            }
        };
    }
    match filling_b2_multiset(l2) {
        Some(targets) => {
            // remaining tabulated targets: L(p,p-1) from a source whose fillings are not tabulated
            let min_handles = match components {
                Components::Exactly(k) => k,
                Components::Any => 1,
            };
            let max_target = *targets.iter().max().expect("nonempty multiset");
            if min_handles > max_target {
                ObstructionVerdict::new(
                    Verdict::Obstructed,
                    rule,
                    scope,
                    format!("fillings of {l2} have b2 in {targets:?}; {min_handles} handles already exceed that"),
                )
            } else {
                ObstructionVerdict::new(
                    Verdict::Inconclusive,
                    rule,
                    scope,
                    format!("fillings of {l2} have b2 in {targets:?}; fillings of {l1} not tabulated"),
                )
            }
        }
        None => ObstructionVerdict::new(
            Verdict::Inconclusive,
            rule,
            scope,
            format!("fillings of {l2} are finite but not tabulated"),
        ),
    }
}

/// A tight lens space is never obtained from itself: by a knot because
/// cosmetic lens space surgeries are not integral, by a link because its
/// fillings have bounded `b2`.
pub fn self_surgery_verdict(
    l1: &LensSpace,
    l2: &LensSpace,
    components: Components,
) -> ObstructionVerdict {
    let rule = Rule::SelfSurgery;
    if !l1.homeo_same_oriented(l2) {
        return ObstructionVerdict::new(
            Verdict::Inapplicable,
            rule,
            Scope::tight(components),
            format!("{l1} and {l2} are not orientation-preserving homeomorphic"),
        );
    }
    match components {
        Components::Exactly(1) => {
            let (partner, integral) = l2.cosmetic_partner();
            debug_assert!(!integral);
            ObstructionVerdict::new(
                Verdict::Obstructed,
                rule,
                Scope::tight(components),
                format!("a knot surgery {l1} -> {l2} would be cosmetic; the only cosmetic surgeries reglue to {partner} and are never integral"),
            )
        }
        _ => ObstructionVerdict::new(
            Verdict::Obstructed,
            rule,
            Scope {
                target: ContactKind::SameAsSource,
                ..Scope::tight(components)
            },
            format!("{l2} is Stein fillable with a planar open book, so filling b2 is bounded; self-surgery would make it unbounded"),
        ),
    }
}

/// `pq - p - q`, the maximal Thurston-Bennequin number of the positive
/// `(p, q)` torus knot.
pub fn torus_knot_tb_max(p: i64, q: i64) -> Result<i64> {
    if p < 2 || q < 2 || gcd(p, q) != 1 {
        return Err(Error::InvalidTorusKnot { p, q });
    }
    Ok(p * q - p - q)
}

/// Tight `S^3` and tight `-L(4n+3, 4)` are not related by a single
/// Legendrian surgery in either direction, nor is tight `S^3` reached from
/// an overtwisted `-L(4n+3, 4)`.
pub fn l4n3_verdict(n: i64) -> Result<ObstructionVerdict> {
    if n < 1 {
        return Err(Error::InvalidArgument(format!("n must be >= 1, got {n}")));
    }
    let p = 4 * n + 3;
    let tb_max = torus_knot_tb_max(2 * n + 1, 2)?;
    let required = p + 1;
    let target = LensSpace::new(p, 4)?.orientation_reverse();
    Ok(ObstructionVerdict::new(
        Verdict::Obstructed,
        Rule::TorusKnotTb,
        Scope {
            components: Components::KNOT,
            source: ContactKind::Any,
            target: ContactKind::Tight,
        },
        format!(
            "-L({p},4) = {target} arises from S^3 only by {p}-surgery on T(2,{}); Legendrian surgery needs tb - 1 = {p}, so required tb = {required} > tb_max = {tb_max}; covers S^3 -> -L({p},4), -L({p},4) -> S^3 tight, and overtwisted -L({p},4) -> tight S^3",
            2 * n + 1
        ),
    ))
}

/// Non-loose unknots in the overtwisted `S^3` have `(tb, rot) = (n, ±(n-1))`, `n > 0`.
pub fn nonloose_unknot_exists(tb: i64, rot: i64) -> bool {
    tb > 0 && rot.abs() == tb - 1
}

/// Surgeries on a Legendrian unknot producing the tight `L(p, 1)`, from the
/// tight and from the overtwisted `S^3`.
pub fn unknot_surgery_verdicts(p: i64) -> Result<Vec<ObstructionVerdict>> {
    if p < 2 {
        return Err(Error::InvalidArgument(format!("p must be >= 2, got {p}")));
    }
    let tight = Scope::tight(Components::KNOT);
    let ot = Scope {
        source: ContactKind::Overtwisted,
        ..tight
    };
    let required_tb = 1 - p;
    let from_tight = ObstructionVerdict::possible(
        Rule::UnknotTb,
        tight,
        format!("Legendrian surgery framing tb - 1 = -{p} needs tb = {required_tb} <= -1"),
        format!("unknot with tb = {required_tb}, rot = {} in (S^3, xi_std)", if p == 2 { 0 } else { p - 2 }),
    );
    let from_ot = if p > 2 {
        ObstructionVerdict::new(
            Verdict::Obstructed,
            Rule::UnknotTb,
            ot,
            format!("needs a non-loose unknot with tb = {required_tb} < 0, but non-loose unknots have tb > 0"),
        )
    } else {
        debug_assert!(nonloose_unknot_exists(3, 2));
        ObstructionVerdict::possible(
            Rule::UnknotTb,
            ot,
            "the only surgeries on S^3 giving RP^3 are ±2 on the unknot; tb - 1 = +2 gives tb = 3",
            "non-loose unknot with tb = 3, rot = ±2 in the overtwisted S^3 with d3 = 1/2".into(),
        )
    };
    Ok(vec![from_tight, from_ot])
}

fn chains(l: &LensSpace) -> Vec<Vec<i64>> {
    if l.is_sphere() {
        return vec![Vec::new()];
    }
    let (partner, _) = l.cosmetic_partner();
    let mut out: Vec<Vec<i64>> = [*l, partner]
        .iter()
        .map(|x| {
            neg_continued_fraction(&x.p(), &x.q())
                .expect("validated lens parameters")
                .coeffs()
                .to_vec()
        })
        .collect();
    out.dedup();
    out
}

/// `Possible` when some chain presentation of `l2` is a chain presentation
/// of `l1` followed by further unknots: Legendrian surgery on those unknots,
/// drawn on top of any tight `l1`, gives a tight `l2`. `None` otherwise.
pub fn chain_extension_verdict(
    l1: &LensSpace,
    l2: &LensSpace,
    components: Components,
) -> Option<ObstructionVerdict> {
    for c1 in chains(l1) {
        for c2 in chains(l2) {
            if c2.len() <= c1.len() || !c2.starts_with(&c1) {
                continue;
            }
            let extra = &c2[c1.len()..];
            if let Components::Exactly(k) = components {
                if k != extra.len() as u64 {
                    continue;
                }
            }
            let fmt = |c: &[i64]| {
                let v: Vec<String> = c.iter().map(|a| a.to_string()).collect();
                format!("[{}]", v.join(", "))
            };
            let tbs: Vec<String> = extra.iter().map(|a| (a + 1).to_string()).collect();
            return Some(ObstructionVerdict::possible(
                Rule::ChainExtension,
                Scope::tight(components),
                format!("chain of {l2} {} extends chain of {l1} {}", fmt(&c2), fmt(&c1)),
                format!(
                    "Legendrian surgery on {} more unknot(s) continuing the chain, tb = {}",
                    extra.len(),
                    tbs.join(", ")
                ),
            ));
        }
    }
    None
}

fn l4n3_index(l: &LensSpace) -> Option<i64> {
    let p = l.p();
    if p >= 7 && p % 4 == 3 {
        let minus = LensSpace::new(p, 4).ok()?.orientation_reverse();
        if l.homeo_same_oriented(&minus) {
            return Some((p - 3) / 4);
        }
    }
    None
}

/// All rules bearing on a Legendrian surgery `l1 -> l2` between tight
/// structures, with their combined verdict.
#[derive(Debug, Clone)]
pub struct SurgeryReport {
    pub source: LensSpace,
    pub target: LensSpace,
    pub components: Components,
    pub verdicts: Vec<ObstructionVerdict>,
}

impl SurgeryReport {
    /// Obstructed if any rule obstructs, Possible if any rule exhibits a
    /// surgery, Inconclusive otherwise.
    pub fn combined(&self) -> Verdict {
        let has = |v: Verdict| self.verdicts.iter().any(|x| x.verdict == v);
        if has(Verdict::Obstructed) {
            Verdict::Obstructed
        } else if has(Verdict::Possible) {
            Verdict::Possible
        } else {
            Verdict::Inconclusive
        }
    }

    /// Whether two rules disagree (one obstructs, another exhibits a surgery).
    pub fn is_contradictory(&self) -> bool {
        let has = |v: Verdict| self.verdicts.iter().any(|x| x.verdict == v);
        has(Verdict::Obstructed) && has(Verdict::Possible)
    }
}

pub fn knot_report(l1: &LensSpace, l2: &LensSpace) -> SurgeryReport {
    let table = SquareTable::new(l2.p()).ok();
    knot_report_with(table.as_ref(), l1, l2)
}

pub(crate) fn knot_report_with(
    table: Option<&SquareTable>,
    l1: &LensSpace,
    l2: &LensSpace,
) -> SurgeryReport {
    let mut verdicts = vec![match table {
        Some(t) => hflo_with(t, l1, l2),
        None => hflo(l1, l2),
    }];
    if l2.p() >= 2 && is_prime(l2.p()) {
        verdicts.push(hflo_prime_form(l1, l2).expect("p2 is prime"));
    }
    verdicts.push(stein_cobordism_verdict(l1, l2, Components::KNOT));
    if l1.homeo_same_oriented(l2) {
        verdicts.push(self_surgery_verdict(l1, l2, Components::KNOT));
    }
    let l4n3 = match (l1.is_sphere(), l2.is_sphere()) {
        (true, false) => l4n3_index(l2),
        (false, true) => l4n3_index(l1),
        _ => None,
    };
    if let Some(n) = l4n3 {
        verdicts.push(l4n3_verdict(n).expect("n >= 1"));
    }
    verdicts.extend(chain_extension_verdict(l1, l2, Components::KNOT));
    SurgeryReport {
        source: *l1,
        target: *l2,
        components: Components::KNOT,
        verdicts,
    }
}

pub fn link_report(l1: &LensSpace, l2: &LensSpace) -> SurgeryReport {
    let mut verdicts = vec![ObstructionVerdict::new(
        Verdict::Inapplicable,
        Rule::Hflo,
        Scope::tight(Components::Any),
        "the Heegaard Floer criterion covers single knots only",
    )];
    verdicts.push(stein_cobordism_verdict(l1, l2, Components::Any));
    if l1.homeo_same_oriented(l2) {
        verdicts.push(self_surgery_verdict(l1, l2, Components::Any));
    }
    verdicts.extend(chain_extension_verdict(l1, l2, Components::Any));
    SurgeryReport {
        source: *l1,
        target: *l2,
        components: Components::Any,
        verdicts,
    }
}

/// One CSV row of a sweep.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SweepRow {
    pub p1: i64,
    pub q1: i64,
    pub p2: i64,
    pub q2: i64,
    pub rule: Rule,
    pub verdict: Verdict,
    pub trace: String,
}

pub fn lens_spaces_up_to(p_max: i64) -> Vec<LensSpace> {
    (2..=p_max)
        .flat_map(|p| (1..p).filter_map(move |q| LensSpace::new(p, q).ok()))
        .collect()
}

/// Knot-scope reports for every ordered pair of lens spaces with
/// `2 <= p <= p_max`, ordered by `(p1, q1, p2, q2)`.
pub fn sweep_reports(p_max: i64) -> Vec<SurgeryReport> {
    use rayon::prelude::*;
    let spaces = lens_spaces_up_to(p_max);
    let tables: Vec<Option<SquareTable>> = (0..=p_max.max(1)).map(|p| SquareTable::new(p).ok()).collect();
    let mut reports: Vec<SurgeryReport> = spaces
        .par_iter()
        .flat_map_iter(|l1| {
            let tables = &tables;
            spaces
                .iter()
                .map(move |l2| knot_report_with(tables[l2.p() as usize].as_ref(), l1, l2))
        })
        .collect();
    reports.sort_by_key(|r| (r.source, r.target));
    reports
}

pub fn sweep_rows(p_max: i64) -> Vec<SweepRow> {
    rows_of(sweep_reports(p_max))
}

/// Flattens reports into one row per rule, keeping report order.
pub fn rows_of(reports: Vec<SurgeryReport>) -> Vec<SweepRow> {
    reports
        .into_iter()
        .flat_map(|r| {
            let (l1, l2) = (r.source, r.target);
            r.verdicts.into_iter().map(move |v| SweepRow {
                p1: l1.p(),
                q1: l1.q(),
                p2: l2.p(),
                q2: l2.q(),
                rule: v.rule,
                verdict: v.verdict,
                trace: v.details,
            })
        })
        .collect()
}
