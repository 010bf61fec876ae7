//! Gröbner-basis ideal membership over Q(√5), derivation stability of ideals,
//! and the mechanised classification computations (stable P(a,b) ideals, the
//! resultant analyses, and the rank-identity instance).

use crate::hilbert_ring::{chi_polynomial, star_apply, Family, LConstants};
use crate::numfield::QuadRat;
use crate::polyring::{IsoPoly, Mono, Var, NVARS};
use crate::{Error, Result};

/// Monomial orders for Gröbner computations. All are weighted by the grading
/// (2, 5, 6, 15) first; ties are broken reverse-lexicographically or
/// lexicographically.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum MonomialOrder {
    WeightedGrevlex,
    WeightedLex,
}

impl MonomialOrder {
    pub fn cmp(self, a: &Mono, b: &Mono) -> std::cmp::Ordering {
        use std::cmp::Ordering;
        let wa = a.weight();
        let wb = b.weight();
        if wa != wb {
            return wa.cmp(&wb);
        }
        match self {
            MonomialOrder::WeightedLex => a.0.cmp(&b.0),
            MonomialOrder::WeightedGrevlex => {
                for i in (0..NVARS).rev() {
                    match a.0[i].cmp(&b.0[i]) {
                        Ordering::Equal => {}
                        Ordering::Less => return Ordering::Greater,
                        Ordering::Greater => return Ordering::Less,
                    }
                }
                Ordering::Equal
            }
        }
    }
}

/// Ambient ring of an ideal: T* = K\[φ₂, χ₅, χ₆\], or the quotient model
/// T = K\[φ₂, χ₅, χ₆, X\]/(X² − χ) in which X² − χ is always adjoined.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Ambient {
    TStar,
    TQuot,
}

/// An ideal given by generators.
#[derive(Clone, Debug)]
pub struct PolyIdeal {
    pub gens: Vec<IsoPoly>,
    pub ambient: Ambient,
    pub order: MonomialOrder,
}

impl PolyIdeal {
    pub fn in_tstar(gens: Vec<IsoPoly>) -> Self {
        for g in &gens {
            assert_eq!(g.degree_in(Var::X), 0, "T* ideal generators must not involve X");
        }
        PolyIdeal { gens, ambient: Ambient::TStar, order: MonomialOrder::WeightedGrevlex }
    }

    pub fn in_tquot(gens: Vec<IsoPoly>) -> Self {
        PolyIdeal { gens, ambient: Ambient::TQuot, order: MonomialOrder::WeightedGrevlex }
    }

    pub fn with_order(mut self, order: MonomialOrder) -> Self {
        self.order = order;
        self
    }

    /// The generator list actually used for Gröbner computations: in the
    /// quotient model the relation X² − χ is appended.
    pub fn working_gens(&self) -> Vec<IsoPoly> {
        let mut gens: Vec<IsoPoly> = self.gens.iter().filter(|g| !g.is_zero()).cloned().collect();
        if self.ambient == Ambient::TQuot {
            let rel = IsoPoly::var(Var::X).pow(2).sub(&chi_polynomial());
            gens.push(rel);
        }
        gens
    }
}

/// A polynomial in Gröbner form: terms sorted descending under the chosen
/// order, with its expression in the original generators carried along.
#[derive(Clone, Debug)]
struct GbPoly {
    terms: Vec<(Mono, QuadRat)>,
    /// cofactors: this polynomial equals Σ cof[i]·gens[i]
    cof: Vec<IsoPoly>,
}

impl GbPoly {
    fn lead(&self) -> &(Mono, QuadRat) {
        &self.terms[0]
    }

    fn to_poly(&self) -> IsoPoly {
        let mut p = IsoPoly::zero();
        for (m, c) in &self.terms {
            p.add_term(*m, c.clone());
        }
        p
    }
}

fn to_sorted_terms(p: &IsoPoly, order: MonomialOrder) -> Vec<(Mono, QuadRat)> {
    let mut v: Vec<(Mono, QuadRat)> = p.terms().map(|(m, c)| (*m, c.clone())).collect();
    v.sort_by(|a, b| order.cmp(&b.0, &a.0));
    v
}

/// A computed Gröbner basis with cofactor tracking.
#[derive(Clone, Debug)]
pub struct GroebnerBasis {
    basis: Vec<GbPoly>,
    pub order: MonomialOrder,
    ngens: usize,
}

impl GroebnerBasis {
    pub fn len(&self) -> usize {
        self.basis.len()
    }

    pub fn is_empty(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn polynomials(&self) -> Vec<IsoPoly> {
        self.basis.iter().map(|b| b.to_poly()).collect()
    }
}

/// Buchberger's algorithm with the product (coprime-lead) criterion, producing
/// a reduced basis; every basis element carries its expression in the input
/// generators so that membership certificates re-multiply exactly.
pub fn groebner(ideal: &PolyIdeal) -> GroebnerBasis {
    let order = ideal.order;
    let gens = ideal.working_gens();
    let ngens = gens.len();
    let mut basis: Vec<GbPoly> = Vec::new();
    for (i, g) in gens.iter().enumerate() {
        let mut cof = vec![IsoPoly::zero(); ngens];
        cof[i] = IsoPoly::one();
        let reduced = reduce_full(&to_sorted_terms(g, order), &cof, &basis, order, ngens);
        if let Some(p) = reduced {
            basis.push(p);
        }
    }
    let mut pairs: Vec<(usize, usize)> = Vec::new();
    for j in 0..basis.len() {
        for i in 0..j {
            pairs.push((i, j));
        }
    }
    while let Some((i, j)) = pairs.pop() {
        let (lmi, _) = basis[i].lead();
        let (lmj, _) = basis[j].lead();
        // product criterion: coprime leading monomials reduce to zero
        if lmi.gcd(lmj).is_one() {
            continue;
        }
        let lcm = lmi.lcm(lmj);
        let (spoly, scof) = s_polynomial(&basis[i], &basis[j], &lcm, ngens);
        if let Some(p) = reduce_full(&spoly, &scof, &basis, order, ngens) {
            basis.push(p);
            let j_new = basis.len() - 1;
            for i_new in 0..j_new {
                pairs.push((i_new, j_new));
            }
        }
    }
    // minimalise: keep, in ascending lead order, only elements whose lead is
    // not divisible by an already-kept lead (ties keep the first)
    let mut sorted: Vec<GbPoly> = basis;
    sorted.sort_by(|a, b| order.cmp(&a.lead().0, &b.lead().0));
    let mut minimal: Vec<GbPoly> = Vec::new();
    for p in sorted {
        if !minimal.iter().any(|o| o.lead().0.divides(&p.lead().0)) {
            minimal.push(p);
        }
    }
    // interreduce the minimal set and normalise to monic
    let mut reduced: Vec<GbPoly> = Vec::new();
    for i in 0..minimal.len() {
        let others: Vec<GbPoly> = minimal
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != i)
            .map(|(_, p)| p.clone())
            .collect();
        if let Some(p) = reduce_full(&minimal[i].terms, &minimal[i].cof, &others, order, ngens) {
            let inv = p.terms[0].1.inv().expect("leading coefficient nonzero");
            let terms = p.terms.iter().map(|(m, c)| (*m, c * &inv)).collect();
            let cof = p.cof.iter().map(|q| q.scale(&inv)).collect();
            reduced.push(GbPoly { terms, cof });
        }
    }
    reduced.sort_by(|a, b| order.cmp(&b.lead().0, &a.lead().0));
    GroebnerBasis { basis: reduced, order, ngens }
}

fn s_polynomial(a: &GbPoly, b: &GbPoly, lcm: &Mono, ngens: usize) -> (Vec<(Mono, QuadRat)>, Vec<IsoPoly>) {
    let (lma, lca) = a.lead();
    let (lmb, lcb) = b.lead();
    let ma = lcm.div(lma);
    let mb = lcm.div(lmb);
    let ca = lca.inv().expect("nonzero lead");
    let cb = lcb.inv().expect("nonzero lead");
    // spoly = (1/lca)·x^ma·a − (1/lcb)·x^mb·b
    let mut p = IsoPoly::zero();
    for (m, c) in &a.terms {
        p.add_term(m.mul(&ma), c * &ca);
    }
    for (m, c) in &b.terms {
        p.add_term(m.mul(&mb), -&(c * &cb));
    }
    let mut cof = vec![IsoPoly::zero(); ngens];
    for i in 0..ngens {
        let t1 = a.cof[i].mul(&IsoPoly::monomial(ma, ca.clone()));
        let t2 = b.cof[i].mul(&IsoPoly::monomial(mb, cb.clone()));
        cof[i] = t1.sub(&t2);
    }
    // sorting order is decided by the caller's order at reduce time
    (p.terms().map(|(m, c)| (*m, c.clone())).collect(), cof)
}

/// Full reduction (every term) against the current basis; returns None when
/// the remainder is zero. The cofactor expression follows every step.
fn reduce_full(
    terms: &[(Mono, QuadRat)],
    cof: &[IsoPoly],
    basis: &[GbPoly],
    order: MonomialOrder,
    ngens: usize,
) -> Option<GbPoly> {
    let mut work = IsoPoly::zero();
    for (m, c) in terms {
        work.add_term(*m, c.clone());
    }
    let mut cof: Vec<IsoPoly> = cof.to_vec();
    let mut remainder = IsoPoly::zero();
    'outer: loop {
        // take the largest remaining monomial of work under `order`
        let lead = work
            .terms()
            .max_by(|(m1, _), (m2, _)| order.cmp(m1, m2))
            .map(|(m, c)| (*m, c.clone()));
        let (lm, lc) = match lead {
            None => break 'outer,
            Some(x) => x,
        };
        for b in basis {
            let (bm, bc) = b.lead();
            if bm.divides(&lm) {
                let q = lm.div(bm);
                let factor = &lc * &bc.inv().expect("nonzero lead");
                let qpoly = IsoPoly::monomial(q, factor);
                work = work.sub(&b.to_poly().mul(&qpoly));
                for i in 0..ngens {
                    cof[i] = cof[i].sub(&b.cof[i].mul(&qpoly));
                }
                continue 'outer;
            }
        }
        // irreducible leading term: move it to the remainder
        remainder.add_term(lm, lc.clone());
        let mut single = IsoPoly::zero();
        single.add_term(lm, lc);
        work = work.sub(&single);
    }
    if remainder.is_zero() {
        return None;
    }
    let terms = to_sorted_terms(&remainder, order);
    // invariant maintained throughout: work + remainder = Σ cof·gens, so at
    // work = 0 the remainder's cofactors are exact
    Some(GbPoly { terms, cof })
}

/// Result of a membership test.
#[derive(Clone, Debug)]
pub struct Membership {
    pub member: bool,
    /// Normal form (zero iff member).
    pub normal_form: IsoPoly,
    /// When member: cofactors c_i with p = Σ c_i·(i-th working generator).
    pub certificate: Option<Vec<IsoPoly>>,
}

/// Normal form of p against the basis, with certificate bookkeeping.
pub fn member(p: &IsoPoly, ideal: &PolyIdeal, gb: &GroebnerBasis) -> Membership {
    let order = gb.order;
    let ngens = gb.ngens;
    let mut work = p.clone();
    let mut used = vec![IsoPoly::zero(); ngens];
    let mut remainder = IsoPoly::zero();
    'outer: loop {
        let lead = work
            .terms()
            .max_by(|(m1, _), (m2, _)| order.cmp(m1, m2))
            .map(|(m, c)| (*m, c.clone()));
        let (lm, lc) = match lead {
            None => break 'outer,
            Some(x) => x,
        };
        for b in &gb.basis {
            let (bm, bc) = b.lead();
            if bm.divides(&lm) {
                let q = lm.div(bm);
                let factor = &lc * &bc.inv().expect("nonzero lead");
                let qpoly = IsoPoly::monomial(q, factor);
                work = work.sub(&b.to_poly().mul(&qpoly));
                for i in 0..ngens {
                    used[i] = used[i].add(&b.cof[i].mul(&qpoly));
                }
                continue 'outer;
            }
        }
        remainder.add_term(lm, lc.clone());
        let mut single = IsoPoly::zero();
        single.add_term(lm, lc);
        work = work.sub(&single);
    }
    let member_flag = remainder.is_zero();
    let certificate = if member_flag {
        debug_assert!({
            let recombined = used
                .iter()
                .zip(ideal.working_gens())
                .fold(IsoPoly::zero(), |acc, (c, g)| acc.add(&c.mul(&g)));
            recombined == *p
        });
        Some(used)
    } else {
        None
    };
    Membership { member: member_flag, normal_form: remainder, certificate }
}

/// Convenience: Gröbner + membership in one call.
pub fn is_member(p: &IsoPoly, ideal: &PolyIdeal) -> Membership {
    let gb = groebner(ideal);
    member(p, ideal, &gb)
}

/// Per-generator, per-derivation stability evidence.
#[derive(Clone, Debug)]
pub struct StabilityEntry {
    pub derivation: String,
    pub generator: usize,
    pub stable: bool,
    /// cofactors of the derivative image over the working generators (stable
    /// case), re-multiplied and checked exactly before being reported
    pub certificate: Option<Vec<IsoPoly>>,
    /// offending normal form (unstable case)
    pub normal_form: Option<IsoPoly>,
}

#[derive(Clone, Debug)]
pub struct StabilityReport {
    pub entries: Vec<StabilityEntry>,
    pub stable: bool,
}

/// Image of a polynomial of the quotient model under a derivation: the chain
/// rule over φ₂, χ₅, χ₆ plus the X-images
///   t*(X) = ρ_t·X,   t_*(X) = (l_t/2)·∂χ/∂v_t,
/// with t₁ = t* + t_* and t₂ = t* − t_*.
pub fn derive_quotient_poly(
    name: crate::hilbert_ring::DerivationName,
    p: &IsoPoly,
    lc: &LConstants,
) -> Result<IsoPoly> {
    use crate::hilbert_ring::DerivationName::*;
    let fam = name.family();
    let star_part = |p: &IsoPoly| -> IsoPoly {
        // Leibniz over the three polynomial generators plus X
        let mut out = IsoPoly::zero();
        for v in [Var::Phi2, Var::Chi5, Var::Chi6] {
            let dp = p.partial(v);
            if !dp.is_zero() {
                out = out.add(&dp.mul(&star_apply(fam, &IsoPoly::var(v))));
            }
        }
        let dx = p.partial(Var::X);
        if !dx.is_zero() {
            let x_image = crate::hilbert_ring::chi15_star_factor(fam).mul(&IsoPoly::var(Var::X));
            out = out.add(&dx.mul(&x_image));
        }
        out
    };
    let sub_part = |p: &IsoPoly| -> Result<IsoPoly> {
        let l = lc.get(fam)?;
        let v = fam.sub_variable();
        let chi = chi_polynomial();
        let mut out = IsoPoly::zero();
        let dv = p.partial(v);
        if !dv.is_zero() {
            out = out.add(&dv.mul(&IsoPoly::var(Var::X)).scale(&l));
        }
        let dx = p.partial(Var::X);
        if !dx.is_zero() {
            let x_image = chi.partial(v).scale(&(&l * &crate::numfield::rat(1, 2)));
            out = out.add(&dx.mul(&x_image));
        }
        Ok(out)
    };
    Ok(match name {
        DStar | EStar | FStar => star_part(p),
        DSub | ESub | FSub => sub_part(p)?,
        D1 | E1 | F1 => star_part(p).add(&sub_part(p)?),
        D2 | E2 | F2 => star_part(p).sub(&sub_part(p)?),
    })
}

/// Check t(g) ∈ ideal for every generator g and derivation t. For T* ambient
/// only starred derivations are admissible.
pub fn is_stable(
    ideal: &PolyIdeal,
    derivations: &[crate::hilbert_ring::DerivationName],
    lc: &LConstants,
) -> Result<StabilityReport> {
    if ideal.ambient == Ambient::TStar {
        if let Some(bad) = derivations.iter().find(|d| !d.is_star()) {
            return Err(Error::Config(format!(
                "derivation {} does not preserve T*; use the quotient ambient",
                bad.as_str()
            )));
        }
    }
    let gb = groebner(ideal);
    let working = ideal.working_gens();
    let mut entries = Vec::new();
    let mut stable = true;
    for name in derivations {
        for (gi, g) in ideal.gens.iter().enumerate() {
            let image = if ideal.ambient == Ambient::TStar {
                star_apply(name.family(), g)
            } else {
                derive_quotient_poly(*name, g, lc)?
            };
            let m = member(&image, ideal, &gb);
            if m.member {
                // re-multiply the certificate exactly
                if let Some(cert) = &m.certificate {
                    let recombined = cert
                        .iter()
                        .zip(&working)
                        .fold(IsoPoly::zero(), |acc, (c, g)| acc.add(&c.mul(g)));
                    assert_eq!(recombined, image, "certificate must re-multiply to the image");
                }
                entries.push(StabilityEntry {
                    derivation: name.as_str().to_string(),
                    generator: gi,
                    stable: true,
                    certificate: m.certificate,
                    normal_form: None,
                });
            } else {
                stable = false;
                entries.push(StabilityEntry {
                    derivation: name.as_str().to_string(),
                    generator: gi,
                    stable: false,
                    certificate: None,
                    normal_form: Some(m.normal_form),
                });
            }
        }
    }
    Ok(StabilityReport { entries, stable })
}

/// P(a,b) = (aφ₂⁵ − χ₅², bφ₂³ − χ₆) in T*.
pub fn ideal_p(a: &QuadRat, b: &QuadRat) -> PolyIdeal {
    let g1 = IsoPoly::var(Var::Phi2).pow(5).scale(a).sub(&IsoPoly::var(Var::Chi5).pow(2));
    let g2 = IsoPoly::var(Var::Phi2).pow(3).scale(b).sub(&IsoPoly::var(Var::Chi6));
    PolyIdeal::in_tstar(vec![g1, g2])
}

/// Q(a,b) = (P(a,b), χ₁₅) in the quotient model.
pub fn ideal_q(a: &QuadRat, b: &QuadRat) -> PolyIdeal {
    let p = ideal_p(a, b);
    let mut gens = p.gens;
    gens.push(IsoPoly::var(Var::X));
    PolyIdeal::in_tquot(gens)
}

/// The two stability condition values (125a + b − 900b², b² + 3000ab − 5a).
pub fn stability_conditions(a: &QuadRat, b: &QuadRat) -> (QuadRat, QuadRat) {
    let c1 = &(&(a * &QuadRat::from_int(125)) + b) - &(&(b * b) * &QuadRat::from_int(900));
    let c2 = &(&(b * b) + &(&(a * b) * &QuadRat::from_int(3000))) - &(a * &QuadRat::from_int(5));
    (c1, c2)
}

/// Classify P(a,b): stable iff both condition polynomials vanish.
pub fn classify_pab(a: &QuadRat, b: &QuadRat) -> (bool, QuadRat, QuadRat) {
    let (c1, c2) = stability_conditions(a, b);
    (c1.is_zero() && c2.is_zero(), c1, c2)
}

/// Solve {125a + b − 900b² = 0, b² + 3000ab − 5a = 0} exactly over Q by
/// elimination. Returns all solutions sorted.
pub fn solve_stability_system() -> Vec<(QuadRat, QuadRat)> {
    // From the first equation a = (900b² − b)/125 = b(900b − 1)/125; substitute:
    // 125·(b² + 3000ab − 5a) = 125b² + 24·b·(900b−1)·b·… reduces to
    // b·(540000b² − 1475b + 1) = 0.
    let mut sols: Vec<(QuadRat, QuadRat)> = Vec::new();
    let mut push_b = |b: crate::numfield::Rat| {
        let bq = QuadRat::from_rat(b.clone());
        // a = (900b² − b)/125
        let a = &(&(&bq * &bq) * &QuadRat::from_int(900) - bq.clone())
            * &QuadRat::from_rat(crate::numfield::rat(1, 125));
        sols.push((a, bq));
    };
    push_b(crate::numfield::rat_int(0));
    for b in rational_roots(&[1i64, -1475, 540000]) {
        push_b(b);
    }
    sols.sort_by(|(a1, b1), (a2, b2)| {
        (&a1.a, &b1.a).partial_cmp(&(&a2.a, &b2.a)).unwrap()
    });
    sols.dedup();
    // every solution satisfies both conditions exactly
    for (a, b) in &sols {
        let (c1, c2) = stability_conditions(a, b);
        assert!(c1.is_zero() && c2.is_zero(), "spurious solution");
    }
    sols
}

/// Rational roots of c₀ + c₁x + ... + c_nxⁿ with integer coefficients, by
/// divisor enumeration of the constant and leading coefficients.
fn rational_roots(coeffs: &[i64]) -> Vec<crate::numfield::Rat> {
    use crate::numfield::rat;
    let c0 = coeffs[0];
    let cn = *coeffs.last().unwrap();
    assert!(c0 != 0 && cn != 0);
    let mut roots = Vec::new();
    let divisors = |n: i64| -> Vec<i64> {
        let n = n.abs();
        let mut d = Vec::new();
        let mut i = 1;
        while i * i <= n {
            if n % i == 0 {
                d.push(i);
                d.push(n / i);
            }
            i += 1;
        }
        d.sort_unstable();
        d.dedup();
        d
    };
    for p in divisors(c0) {
        for q in divisors(cn) {
            for sign in [1i64, -1] {
                let cand = rat(sign * p, q);
                let mut acc = crate::numfield::Rat::from_integer(0.into());
                let mut pw = crate::numfield::Rat::from_integer(1.into());
                for &c in coeffs {
                    acc += crate::numfield::rat_int(c) * &pw;
                    pw *= &cand;
                }
                if acc == crate::numfield::Rat::from_integer(0.into()) && !roots.contains(&cand) {
                    roots.push(cand);
                }
            }
        }
    }
    roots.sort();
    roots
}

/// One resultant of the intersection lemma with its verified shape data.
#[derive(Clone, Debug)]
pub struct ResultantCase {
    pub name: String,
    pub resultant: IsoPoly,
    pub shape: crate::polyring::ResultantShape,
    pub expected_monomial: Mono,
    pub expected_cofactor_weight: u32,
    pub monomial_matches: bool,
    pub weight_matches: bool,
}

/// The six resultants of the intersection lemma: computed from the derivation
/// table, stripped to monomial × binomial-product shape, with weights and
/// pairwise coprimality checked.
pub struct ResultantLemmaReport {
    pub cases: Vec<ResultantCase>,
    pub coprimality: Vec<(String, bool)>,
    /// the e*-iterate φ₂-resultant, reported with its measured shape
    pub extra: Option<ResultantCase>,
    pub pass: bool,
}

pub fn reproduce_resultant_lemma() -> Result<ResultantLemmaReport> {
    let d = |v: Var| star_apply(Family::D, &IsoPoly::var(v));
    let e = |v: Var| star_apply(Family::E, &IsoPoly::var(v));
    let f = |v: Var| star_apply(Family::F, &IsoPoly::var(v));
    let d2 = |v: Var| star_apply(Family::D, &d(v));
    let f2 = |v: Var| star_apply(Family::F, &f(v));
    let e2 = |v: Var| star_apply(Family::E, &e(v));
    // e*f*χ₆ means the composite e*(f*(χ₆))
    let ef6 = star_apply(Family::E, &f(Var::Chi6));

    let mut cases = Vec::new();
    let mut mk = |name: &str, p: IsoPoly, q: IsoPoly, var: Var, mono: Mono, wt: u32| -> Result<()> {
        let r = crate::polyring::resultant(&p, &q, var)?;
        let shape = crate::polyring::analyze_shape(&r)?;
        cases.push(ResultantCase {
            name: name.to_string(),
            monomial_matches: shape.monomial == mono,
            weight_matches: shape.weight == wt,
            expected_monomial: mono,
            expected_cofactor_weight: wt,
            resultant: r,
            shape,
        });
        Ok(())
    };
    // Rés_{χ₅}(d*χ₅, d*²χ₅) = ξ₁·φ₂⁵χ₆⁶·A₁, wt(A₁) = 12
    mk("res_chi5(d*chi5, d*2chi5)", d(Var::Chi5), d2(Var::Chi5), Var::Chi5, Mono([5, 0, 6, 0]), 12)?;
    // Rés_{χ₅}(f*χ₅, f*²χ₅) = ξ₂·χ₆¹⁵·A₂, wt(A₂) = 12
    mk("res_chi5(f*chi5, f*2chi5)", f(Var::Chi5), f2(Var::Chi5), Var::Chi5, Mono([0, 0, 15, 0]), 12)?;
    // Rés_{χ₆}(d*χ₆, d*²χ₆) = ξ₃·φ₂³χ₅⁷·B₁, wt(B₁) = 10
    mk("res_chi6(d*chi6, d*2chi6)", d(Var::Chi6), d2(Var::Chi6), Var::Chi6, Mono([3, 7, 0, 0]), 10)?;
    // Rés_{χ₆}(d*χ₆, e*f*χ₆) = ξ₄·χ₅⁹·B₂, wt(B₂) = 20
    mk("res_chi6(d*chi6, e*f*chi6)", d(Var::Chi6), ef6, Var::Chi6, Mono([0, 9, 0, 0]), 20)?;
    // Rés_{φ₂}(d*φ₂, d*²φ₂) = ξ₅·χ₅¹¹·C₁, wt(C₁) = 30
    mk("res_phi2(d*phi2, d*2phi2)", d(Var::Phi2), d2(Var::Phi2), Var::Phi2, Mono([0, 11, 0, 0]), 30)?;
    // Rés_{φ₂}(f*φ₂, f*²φ₂) = ξ₆·χ₅⁸·C₂, wt(C₂) = 60. (The f*-iterate is the
    // pair with this shape; the e*-iterate resultant is isobaric of weight 102
    // and decomposes as χ₆²·(three weight-30 binomials) — reported separately.)
    mk("res_phi2(f*phi2, f*2phi2)", f(Var::Phi2), f2(Var::Phi2), Var::Phi2, Mono([0, 8, 0, 0]), 60)?;

    let mut coprimality = Vec::new();
    let mut pass = true;
    for (name, i, j) in [("A1,A2", 0usize, 1usize), ("B1,B2", 2, 3), ("C1,C2", 4, 5)] {
        let (g, _) = crate::polyring::gcd_and_shape(&cases[i].shape.cofactor, &cases[j].shape.cofactor)?;
        let coprime = g.weight_check() == Some(0);
        coprimality.push((name.to_string(), coprime));
        pass &= coprime;
    }
    for c in &cases {
        pass &= c.weight_matches && c.monomial_matches && !c.shape.unit.is_zero();
    }
    // informative extra: the e*-iterate resultant and its measured shape
    let e2v = e2(Var::Phi2);
    let r_e = crate::polyring::resultant(&e(Var::Phi2), &e2v, Var::Phi2)?;
    let extra = crate::polyring::analyze_shape(&r_e).ok().map(|s| ResultantCase {
        name: "res_phi2(e*phi2, e*2phi2)".to_string(),
        monomial_matches: true,
        weight_matches: true,
        expected_monomial: s.monomial,
        expected_cofactor_weight: s.weight,
        resultant: r_e,
        shape: s,
    });
    Ok(ResultantLemmaReport { cases, coprimality, extra, pass })
}

/// Verify the two d*-image decompositions behind the P(a,b) classification,
/// as exact polynomial identities in a, b:
///   d*(aφ₂⁵−χ₅²) = −3φ₂²χ₅·(aφ₂⁵−χ₅²)
///                 + (7/5)φ₂χ₅(χ₆ + φ₂³(3000a+b))·(bφ₂³−χ₆)
///                 − (7/5)φ₂⁷χ₅·(b²+3000ab−5a)
///   d*(bφ₂³−χ₆)  = −350χ₅·(aφ₂⁵−χ₅²)
///                 + (2/5)φ₂²χ₅(6300b−1)·(bφ₂³−χ₆)
///                 + (14/5)φ₂⁵χ₅·(125a+b−900b²)
/// checked on a grid of rational (a, b) pairs. (The first display's lone
/// cofactor variable is χ₅; weight 19 = 10 + 9 rules out χ₆ there.)
pub fn verify_pab_decomposition(a: &QuadRat, b: &QuadRat) -> bool {
    use crate::numfield::rat;
    let phi2 = IsoPoly::var(Var::Phi2);
    let chi5 = IsoPoly::var(Var::Chi5);
    let chi6 = IsoPoly::var(Var::Chi6);
    let g1 = phi2.pow(5).scale(a).sub(&chi5.pow(2));
    let g2 = phi2.pow(3).scale(b).sub(&chi6);
    let (c1, c2) = stability_conditions(a, b);
    let d_g1 = star_apply(Family::D, &g1);
    let d_g2 = star_apply(Family::D, &g2);
    let coeff_a = QuadRat::from_int(3000) * a.clone() + b.clone();
    let rhs1 = phi2
        .pow(2)
        .mul(&chi5)
        .scale(&QuadRat::from_int(-3))
        .mul(&g1)
        .add(
            &phi2
                .mul(&chi5)
                .scale_rat(&rat(7, 5))
                .mul(&chi6.add(&phi2.pow(3).scale(&coeff_a)))
                .mul(&g2),
        )
        .sub(&phi2.pow(7).mul(&chi5).scale_rat(&rat(7, 5)).scale(&c2));
    let rhs2 = chi5
        .scale(&QuadRat::from_int(-350))
        .mul(&g1)
        .add(
            &phi2
                .pow(2)
                .mul(&chi5)
                .scale_rat(&rat(2, 5))
                .scale(&(&(b * &QuadRat::from_int(6300)) - &QuadRat::one()))
                .mul(&g2),
        )
        .add(&phi2.pow(5).mul(&chi5).scale_rat(&rat(14, 5)).scale(&c1));
    d_g1 == rhs1 && d_g2 == rhs2
}

/// Radical-membership witnesses for P(a,b).
#[derive(Clone, Debug)]
pub struct RadicalWitness {
    pub checks: Vec<(String, bool)>,
    pub pass: bool,
}

/// For a, b ≠ 0 the radical of P(a,b) is the height-2 prime
/// (bφ₂³−χ₆, aφ₂²χ₆−bχ₅², b²φ₂χ₅²−aχ₆²): each of its generators has a power
/// ≤ 4 inside P(a,b), and P(a,b) is contained in it. For (0,0) the radical is
/// (χ₅, χ₆), witnessed by χ₅ ∉ P, χ₅² ∈ P, χ₆ ∈ P.
pub fn radical_witness(a: &QuadRat, b: &QuadRat) -> Result<RadicalWitness> {
    let phi2 = IsoPoly::var(Var::Phi2);
    let chi5 = IsoPoly::var(Var::Chi5);
    let chi6 = IsoPoly::var(Var::Chi6);
    let p = ideal_p(a, b);
    let gb = groebner(&p);
    let mut checks = Vec::new();
    if a.is_zero() && b.is_zero() {
        checks.push(("chi5 not in P(0,0)".to_string(), !member(&chi5, &p, &gb).member));
        checks.push(("chi5^2 in P(0,0)".to_string(), member(&chi5.pow(2), &p, &gb).member));
        checks.push(("chi6 in P(0,0)".to_string(), member(&chi6, &p, &gb).member));
    } else {
        let r1 = phi2.pow(3).scale(b).sub(&chi6);
        let r2 = phi2.pow(2).mul(&chi6).scale(a).sub(&chi5.pow(2).scale(b));
        let r3 = phi2.mul(&chi5.pow(2)).scale(&(b * b)).sub(&chi6.pow(2).scale(a));
        for (name, g) in [("b*phi2^3-chi6", &r1), ("a*phi2^2*chi6-b*chi5^2", &r2), ("b^2*phi2*chi5^2-a*chi6^2", &r3)] {
            let k = (1..=4u32).find(|&k| member(&g.pow(k), &p, &gb).member);
            checks.push((format!("({name})^k in P(a,b) for k ≤ 4"), k.is_some()));
        }
        // P(a,b) ⊆ (r1, r2, r3)
        let rad = PolyIdeal::in_tstar(vec![r1, r2, r3]);
        let rgb = groebner(&rad);
        for (gi, g) in p.gens.iter().enumerate() {
            checks.push((format!("P generator {gi} in radical ideal"), member(g, &rad, &rgb).member));
        }
    }
    let pass = checks.iter().all(|(_, ok)| *ok);
    Ok(RadicalWitness { checks, pass })
}

/// Height evidence for the ideal generated by P(a,b) together with all the
/// starred-derivation images of its generators: for each variable, the least
/// power ≤ max_pow lying in the enlarged ideal (None if none does). For
/// (a, b) outside the stable set every variable has a small power inside, so
/// the enlarged ideal has height 3.
pub fn enlarged_ideal_heights(
    a: &QuadRat,
    b: &QuadRat,
    max_pow: u32,
) -> Result<Vec<(&'static str, Option<u32>)>> {
    let p = ideal_p(a, b);
    let mut gens = p.gens.clone();
    for fam in [Family::D, Family::E, Family::F] {
        for g in &p.gens {
            gens.push(star_apply(fam, g));
        }
    }
    let enlarged = PolyIdeal::in_tstar(gens);
    let gb = groebner(&enlarged);
    let mut out = Vec::new();
    for v in [Var::Phi2, Var::Chi5, Var::Chi6] {
        let k = (1..=max_pow).find(|&k| member(&IsoPoly::var(v).pow(k), &enlarged, &gb).member);
        out.push((v.name(), k));
    }
    Ok(out)
}

/// The rank-identity instance at (F, G, H) = (χ₆, φ₂, χ₅), (f, g, h) = (6, 2, 5):
/// the right-hand side assembled from the minor matrix must equal
/// (f+g)(f+h)·\[χ₆,φ₂,χ₅\]², and \[χ₆,φ₂,χ₅\]² is c·P for a single rational c.
#[derive(Clone, Debug)]
pub struct FormuloneInstance {
    /// RHS / ((f+g)(f+h)) as a polynomial: the square of the plain bracket.
    pub bracket_squared: IsoPoly,
    /// measured c with bracket² = c·P
    pub c_measured: Option<QuadRat>,
    /// the value implied by the reference constants χ₁₅ = (√5/22)·bracket and
    /// λ = 484/49, namely (484/5)·(484/49) = 484²/245
    pub c_expected: QuadRat,
    pub minors_nonzero: bool,
    pub minors_cusp_weights: bool,
    pub rhs_is_multiple_of_p: bool,
}

pub fn verify_formulone_instance() -> Result<FormuloneInstance> {
    use crate::hilbert_ring::{derivation_matrix, minor_matrix};
    let m = derivation_matrix();
    let minors = minor_matrix(&m);
    let minors_nonzero = minors.iter().flatten().all(|p| !p.is_zero());
    // cusp weights: parallel weight ≥ 5, and every entry isobaric
    let minors_cusp_weights = minors
        .iter()
        .flatten()
        .all(|p| p.weight_check().map(|w| w >= 5).unwrap_or(false));
    // Instantiate the rank identity at (F,G,H) = (χ₆,φ₂,χ₅), (f,g,h) = (6,2,5).
    // The star-bracket minors become anti-diagonal minors of M̃:
    //   M₁ = d*χ₅·e*χ₆ − d*χ₆·e*χ₅ = m̃₃₁
    //   M₂ = d*φ₂·f*χ₆ − d*χ₆·f*φ₂ = m̃₂₂
    //   M₃ = e*φ₂·f*χ₅ − e*χ₅·f*φ₂ = m̃₁₃
    // and (f+g)(f+h)·[χ₆,φ₂,χ₅]² = (f+g)(g+h)·m̃₂₂ − (f+h)(g+h)·m̃₃₁ − (g+h)²·m̃₁₃.
    let (fw, gw, hw) = (6i64, 2i64, 5i64);
    let s = |k: i64| QuadRat::from_int(k);
    let rhs = minors[1][1]
        .scale(&s((fw + gw) * (gw + hw)))
        .sub(&minors[2][0].scale(&s((fw + hw) * (gw + hw))))
        .sub(&minors[0][2].scale(&s((gw + hw) * (gw + hw))));
    // bracket² = RHS / ((f+g)(f+h)) = RHS / 88
    let bracket_squared = rhs.scale_rat(&crate::numfield::rat(1, (fw + gw) * (fw + hw)));
    let p = crate::hilbert_ring::chi_core();
    let c_measured = bracket_squared.divide_exact(&p).and_then(|q| {
        if q.num_terms() == 1 && q.weight_check() == Some(0) {
            Some(q.coefficient(&Mono::one()))
        } else {
            None
        }
    });
    let rhs_is_multiple_of_p = c_measured.is_some();
    // (484/5)·(484/49) from χ₁₅ = (√5/22)[χ₆,φ₂,χ₅] squared against the Klein λ
    let c_expected = QuadRat::from_rat(crate::numfield::rat(484 * 484, 5 * 49));
    Ok(FormuloneInstance {
        bracket_squared,
        c_measured,
        c_expected,
        minors_nonzero,
        minors_cusp_weights,
        rhs_is_multiple_of_p,
    })
}

/// A deep minor-resultant record.
#[derive(Clone, Debug)]
pub struct MinorResultant {
    pub name: String,
    pub nonzero: bool,
    pub shape_ok: bool,
    pub kind: Option<crate::polyring::BinomialKind>,
}

/// Resultants R_{i,j,h,k,ϱ} of distinct minor pairs. `limit` caps the number
/// of pairs (the full run is 36 pairs × 2 variables). The monomial content of
/// each minor is divided out first: minors in the odd columns carry a bare χ₅
/// factor (and m̃₂₂ carries χ₅²), which would make every χ₅-resultant of such
/// a pair vanish for the trivial shared-monomial reason; in the prime-ideal
/// arguments these monomial factors are excluded separately.
pub fn deep_minor_resultants(limit: usize) -> Vec<MinorResultant> {
    use crate::hilbert_ring::{derivation_matrix, minor_matrix};
    let minors = minor_matrix(&derivation_matrix());
    let mut flat: Vec<(String, IsoPoly)> = Vec::new();
    for (i, row) in minors.iter().enumerate() {
        for (j, p) in row.iter().enumerate() {
            let (_, primitive) = p.strip_monomial_content();
            flat.push((format!("m~{}{}", i + 1, j + 1), primitive));
        }
    }
    let mut out = Vec::new();
    let mut pairs = 0usize;
    'outer: for x in 0..flat.len() {
        for y in x + 1..flat.len() {
            if pairs >= limit {
                break 'outer;
            }
            pairs += 1;
            for var in [Var::Chi6, Var::Chi5] {
                let name = format!("Res_{}({}, {})", var.name(), flat[x].0, flat[y].0);
                let r = match crate::polyring::resultant(&flat[x].1, &flat[y].1, var) {
                    Ok(r) => r,
                    Err(_) => {
                        out.push(MinorResultant { name, nonzero: false, shape_ok: false, kind: None });
                        continue;
                    }
                };
                let nonzero = !r.is_zero();
                match crate::polyring::analyze_shape(&r) {
                    Ok(shape) => out.push(MinorResultant {
                        name,
                        nonzero,
                        shape_ok: true,
                        kind: Some(shape.kind),
                    }),
                    Err(_) => out.push(MinorResultant { name, nonzero, shape_ok: false, kind: None }),
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hilbert_ring::DerivationName;
    use crate::numfield::{rat, rat_int};

    fn q(p: i64, d: i64) -> QuadRat {
        QuadRat::from_rat(rat(p, d))
    }

    #[test]
    fn groebner_basics() {
        let phi2 = IsoPoly::var(Var::Phi2);
        let chi5 = IsoPoly::var(Var::Chi5);
        let chi6 = IsoPoly::var(Var::Chi6);
        let i1 = PolyIdeal::in_tstar(vec![phi2.clone()]);
        let gb = groebner(&i1);
        assert_eq!(gb.polynomials(), vec![phi2.clone()]);
        // (χ₅, χ₆) contains χ but not φ₂
        let i2 = PolyIdeal::in_tstar(vec![chi5.clone(), chi6.clone()]);
        let gb2 = groebner(&i2);
        let chi = chi_polynomial();
        assert!(member(&chi, &i2, &gb2).member);
        assert!(!member(&phi2, &i2, &gb2).member);
        // P(0,0) = (χ₅², χ₆) is already interreduced
        let p00 = ideal_p(&QuadRat::zero(), &QuadRat::zero());
        let gb3 = groebner(&p00);
        assert_eq!(gb3.len(), 2);
        // membership certificates re-multiply exactly
        let elt = chi5.pow(2).mul(&phi2).add(&chi6.mul(&chi5));
        let m = member(&elt, &p00, &gb3);
        assert!(m.member);
        let cert = m.certificate.unwrap();
        let back = cert
            .iter()
            .zip(p00.working_gens())
            .fold(IsoPoly::zero(), |acc, (c, g)| acc.add(&c.mul(&g)));
        assert_eq!(back, elt);
    }

    #[test]
    fn equal_leading_monomials_survive_interreduction() {
        // both generators lead with χ₅² under the weighted order; the basis
        // must keep one of them and the reduced difference
        let chi5sq = IsoPoly::var(Var::Chi5).pow(2);
        let g1 = chi5sq.add(&IsoPoly::var(Var::Phi2));
        let g2 = chi5sq.add(&IsoPoly::var(Var::Chi6));
        let ideal = PolyIdeal::in_tstar(vec![g1.clone(), g2.clone()]);
        let gb = groebner(&ideal);
        assert!(!gb.is_empty());
        let m1 = member(&g1, &ideal, &gb);
        let m2 = member(&g2, &ideal, &gb);
        assert!(m1.member && m2.member);
        let diff = IsoPoly::var(Var::Chi6).sub(&IsoPoly::var(Var::Phi2));
        assert!(member(&diff, &ideal, &gb).member);
        assert!(!member(&IsoPoly::var(Var::Chi6), &ideal, &gb).member);
    }

    #[test]
    fn membership_is_order_independent() {
        let chi = chi_polynomial();
        let tests: Vec<(PolyIdeal, IsoPoly)> = vec![
            (PolyIdeal::in_tstar(vec![IsoPoly::var(Var::Chi5), IsoPoly::var(Var::Chi6)]), chi.clone()),
            (ideal_p(&q(1, 800000), &q(1, 800)), chi.clone()),
            (ideal_p(&q(1, 253125), &q(1, 675)), IsoPoly::var(Var::Phi2)),
        ];
        for (ideal, p) in tests {
            let a = is_member(&p, &ideal).member;
            let b = is_member(&p, &ideal.clone().with_order(MonomialOrder::WeightedLex)).member;
            assert_eq!(a, b);
        }
    }

    #[test]
    fn chi15_squared_in_stable_pab() {
        let chi = chi_polynomial();
        for (a, b) in [(q(1, 800000), q(1, 800)), (q(1, 253125), q(1, 675))] {
            let ideal = ideal_p(&a, &b);
            assert!(is_member(&chi, &ideal).member, "χ ∈ P({a:?},{b:?})");
        }
    }

    #[test]
    fn stability_canonical_cases() {
        let lc = LConstants::default();
        let stars = [DerivationName::DStar, DerivationName::EStar, DerivationName::FStar];
        // (χ) is 𝔇*-stable
        let chi_ideal = PolyIdeal::in_tstar(vec![chi_polynomial()]);
        let rep = is_stable(&chi_ideal, &stars, &lc).unwrap();
        assert!(rep.stable);
        // (χ₅) is e*-stable but not d*-stable
        let chi5_ideal = PolyIdeal::in_tstar(vec![IsoPoly::var(Var::Chi5)]);
        assert!(is_stable(&chi5_ideal, &[DerivationName::EStar], &lc).unwrap().stable);
        let rep2 = is_stable(&chi5_ideal, &[DerivationName::DStar], &lc).unwrap();
        assert!(!rep2.stable);
        assert!(rep2.entries[0].normal_form.is_some());
    }

    #[test]
    fn classification_matches_direct_stability() {
        let lc = LConstants::default();
        let stars = [DerivationName::DStar, DerivationName::EStar, DerivationName::FStar];
        let a_vals = [q(0, 1), q(1, 800000), q(1, 253125), q(1, 1), q(2, 1)];
        let b_vals = [q(0, 1), q(1, 800), q(1, 675), q(1, 1), q(2, 1)];
        for a in &a_vals {
            for b in &b_vals {
                let (classified, _, _) = classify_pab(a, b);
                let direct = is_stable(&ideal_p(a, b), &stars, &lc).unwrap().stable;
                assert_eq!(classified, direct, "disagreement at ({a:?}, {b:?})");
            }
        }
    }

    #[test]
    fn stability_system_solution_set() {
        let sols = solve_stability_system();
        let expect = [
            (q(0, 1), q(0, 1)),
            (q(1, 800000), q(1, 800)),
            (q(1, 253125), q(1, 675)),
        ];
        assert_eq!(sols.len(), 3);
        for e in expect {
            assert!(sols.contains(&e), "missing {e:?}");
        }
    }

    #[test]
    fn pab_decomposition_identities() {
        for (a, b) in [
            (q(1, 800000), q(1, 800)),
            (q(1, 253125), q(1, 675)),
            (q(0, 1), q(0, 1)),
            (q(1, 1), q(1, 1)),
            (q(2, 3), q(-1, 7)),
            (q(-5, 2), q(4, 9)),
        ] {
            assert!(verify_pab_decomposition(&a, &b), "decomposition fails at ({a:?},{b:?})");
        }
    }

    #[test]
    fn quotient_model_well_defined() {
        // every derivation maps X² − χ into (X² − χ)
        let lc = LConstants::calibrated(
            QuadRat::from_parts(0, 1, 11, 5),
            QuadRat::from_parts(0, 1, -2, 7),
            QuadRat::from_parts(1, 2, 3, 5),
        );
        let rel = IsoPoly::var(Var::X).pow(2).sub(&chi_polynomial());
        let ideal = PolyIdeal::in_tquot(vec![]);
        let gb = groebner(&ideal); // just (X²−χ)
        use DerivationName::*;
        for name in [D1, D2, E1, E2, F1, F2, DStar, EStar, FStar, DSub, ESub, FSub] {
            let img = derive_quotient_poly(name, &rel, &lc).unwrap();
            assert!(member(&img, &ideal, &gb).member, "{name:?} breaks the quotient relation");
        }
    }

    #[test]
    fn chi15_ideal_star_stable_but_not_full_stable() {
        let lc = LConstants::calibrated(
            QuadRat::from_parts(0, 1, 11, 5),
            QuadRat::from_parts(0, 1, -2, 7),
            QuadRat::from_parts(1, 2, 3, 5),
        );
        let chi15_ideal = PolyIdeal::in_tquot(vec![IsoPoly::var(Var::X)]);
        let stars = [DerivationName::DStar, DerivationName::EStar, DerivationName::FStar];
        assert!(is_stable(&chi15_ideal, &stars, &lc).unwrap().stable);
        use DerivationName::*;
        let full = [D1, D2, E1, E2, F1, F2];
        let rep = is_stable(&chi15_ideal, &full, &lc).unwrap();
        assert!(!rep.stable);
    }

    #[test]
    fn radical_witnesses() {
        let w = radical_witness(&QuadRat::zero(), &QuadRat::zero()).unwrap();
        assert!(w.pass, "{:?}", w.checks);
        let w2 = radical_witness(&q(1, 800000), &q(1, 800)).unwrap();
        assert!(w2.pass, "{:?}", w2.checks);
        let w3 = radical_witness(&q(1, 1), &q(2, 1)).unwrap();
        assert!(w3.pass, "{:?}", w3.checks);
    }

    #[test]
    fn enlarged_ideal_for_nonstable_points() {
        // For (a,b) ∉ 𝓔 the ideal generated by P(a,b) ∪ 𝔇*P(a,b) has height 3:
        // its radical contains φ₂, χ₅ and χ₆ (powers 8, 3, 3 suffice; the bare
        // generators themselves are not inside).
        for (a, b) in [(q(1, 1), q(1, 1)), (q(1, 2), q(-1, 3)), (q(3, 1), q(1, 800))] {
            let rep = enlarged_ideal_heights(&a, &b, 8).unwrap();
            for (v, k) in &rep {
                assert!(k.is_some(), "{v} has no small power in the enlarged ideal at ({a:?},{b:?})");
            }
        }
    }

    #[test]
    fn tquot_pullback_consistency() {
        // an ideal (I, X) of the quotient model is 𝔇*-stable iff (I, χ) is
        // 𝔇*-stable in T* (mechanised slice of the reduction argument)
        let lc = LConstants::default();
        let stars = [DerivationName::DStar, DerivationName::EStar, DerivationName::FStar];
        let samples: Vec<Vec<IsoPoly>> = vec![
            vec![chi_polynomial()],
            ideal_p(&q(1, 800000), &q(1, 800)).gens,
            ideal_p(&q(1, 1), &q(1, 1)).gens,
        ];
        for gens in samples {
            let mut up = gens.clone();
            up.push(IsoPoly::var(Var::X));
            let quot_ideal = PolyIdeal::in_tquot(up);
            let quot_stable = is_stable(&quot_ideal, &stars, &lc).unwrap().stable;
            let mut down = gens.clone();
            down.push(chi_polynomial());
            let star_ideal = PolyIdeal::in_tstar(down);
            let star_stable = is_stable(&star_ideal, &stars, &lc).unwrap().stable;
            assert_eq!(quot_stable, star_stable);
        }
    }

    #[test]
    fn formulone_instance_analysis() {
        let inst = verify_formulone_instance().unwrap();
        assert!(inst.minors_nonzero);
        assert!(inst.minors_cusp_weights);
        assert!(inst.rhs_is_multiple_of_p, "RHS must be a constant multiple of P");
    }

    #[test]
    fn rational_root_finding() {
        let roots = rational_roots(&[1, -1475, 540000]);
        assert_eq!(roots, vec![rat(1, 800), rat(1, 675)]);
        let _ = rat_int(0);
    }
}
