//! Sparse polynomials over Q(√5) in the generators φ₂, χ₅, χ₆ and an optional
//! fourth symbol X standing for χ₁₅, graded by the isobaric weight
//! wt = 2e₂ + 5e₅ + 6e₆ + 15e_X.
//!
//! Besides ring arithmetic this module provides formal partial derivatives,
//! Sylvester resultants by Bareiss fraction-free elimination, and the
//! weight-forced reduction of two-variable isobaric polynomials to univariate
//! form (the only factor analysis the classification arguments need).

use crate::numfield::{QuadRat, Rat};
use crate::{Error, Result};
use num_traits::{Signed, Zero};
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

pub const NVARS: usize = 4;

/// Generator weights (φ₂, χ₅, χ₆, X).
pub const VAR_WEIGHTS: [u32; NVARS] = [2, 5, 6, 15];

pub const VAR_NAMES: [&str; NVARS] = ["phi2", "chi5", "chi6", "X"];

/// One of the ring generators, as a polynomial variable.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Var {
    Phi2,
    Chi5,
    Chi6,
    X,
}

impl Var {
    pub fn index(self) -> usize {
        match self {
            Var::Phi2 => 0,
            Var::Chi5 => 1,
            Var::Chi6 => 2,
            Var::X => 3,
        }
    }

    pub fn weight(self) -> u32 {
        VAR_WEIGHTS[self.index()]
    }

    pub fn name(self) -> &'static str {
        VAR_NAMES[self.index()]
    }

    pub fn from_index(i: usize) -> Var {
        [Var::Phi2, Var::Chi5, Var::Chi6, Var::X][i]
    }
}

/// Exponent vector of a monomial.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Mono(pub [u16; NVARS]);

impl Mono {
    pub fn one() -> Self {
        Mono([0; NVARS])
    }

    pub fn var(v: Var, e: u16) -> Self {
        let mut m = [0; NVARS];
        m[v.index()] = e;
        Mono(m)
    }

    pub fn weight(&self) -> u32 {
        self.0.iter().zip(VAR_WEIGHTS).map(|(&e, w)| e as u32 * w).sum()
    }

    pub fn exp(&self, v: Var) -> u16 {
        self.0[v.index()]
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Mono) -> Mono {
        let mut m = self.0;
        for i in 0..NVARS {
            m[i] += other.0[i];
        }
        Mono(m)
    }

    pub fn divides(&self, other: &Mono) -> bool {
        self.0.iter().zip(other.0).all(|(&a, b)| a <= b)
    }

    pub fn div(&self, other: &Mono) -> Mono {
        let mut m = self.0;
        for i in 0..NVARS {
            m[i] -= other.0[i];
        }
        Mono(m)
    }

    pub fn lcm(&self, other: &Mono) -> Mono {
        let mut m = self.0;
        for i in 0..NVARS {
            m[i] = m[i].max(other.0[i]);
        }
        Mono(m)
    }

    pub fn gcd(&self, other: &Mono) -> Mono {
        let mut m = self.0;
        for i in 0..NVARS {
            m[i] = m[i].min(other.0[i]);
        }
        Mono(m)
    }
}

impl PartialOrd for Mono {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Canonical storage order: graded by weight, then lexicographic. This is a
/// monomial order (multiplicative), which exact division relies on.
impl Ord for Mono {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.weight(), self.0).cmp(&(other.weight(), other.0))
    }
}

impl fmt::Debug for Mono {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        let mut first = true;
        for i in 0..NVARS {
            if self.0[i] > 0 {
                if !first {
                    write!(f, "*")?;
                }
                first = false;
                if self.0[i] == 1 {
                    write!(f, "{}", VAR_NAMES[i])?;
                } else {
                    write!(f, "{}^{}", VAR_NAMES[i], self.0[i])?;
                }
            }
        }
        Ok(())
    }
}

/// Sparse polynomial over Q(√5); no zero coefficients are stored.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct IsoPoly {
    terms: BTreeMap<Mono, QuadRat>,
}

impl IsoPoly {
    pub fn zero() -> Self {
        IsoPoly::default()
    }

    pub fn one() -> Self {
        IsoPoly::constant(QuadRat::one())
    }

    pub fn constant(c: QuadRat) -> Self {
        let mut p = IsoPoly::default();
        p.add_term(Mono::one(), c);
        p
    }

    pub fn var(v: Var) -> Self {
        let mut p = IsoPoly::default();
        p.add_term(Mono::var(v, 1), QuadRat::one());
        p
    }

    pub fn monomial(m: Mono, c: QuadRat) -> Self {
        let mut p = IsoPoly::default();
        p.add_term(m, c);
        p
    }

    /// Convenience: c · φ₂^a χ₅^b χ₆^c2 with a rational coefficient.
    pub fn term(c: Rat, e2: u16, e5: u16, e6: u16) -> Self {
        Self::monomial(Mono([e2, e5, e6, 0]), QuadRat::from_rat(c))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Mono, &QuadRat)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Mono) -> QuadRat {
        self.terms.get(m).cloned().unwrap_or_else(QuadRat::zero)
    }

    pub fn add_term(&mut self, m: Mono, c: QuadRat) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                let sum = &*o.get() + &c;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn add(&self, other: &IsoPoly) -> IsoPoly {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(*m, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &IsoPoly) -> IsoPoly {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(*m, -c);
        }
        out
    }

    pub fn neg(&self) -> IsoPoly {
        IsoPoly { terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect() }
    }

    pub fn scale(&self, c: &QuadRat) -> IsoPoly {
        if c.is_zero() {
            return IsoPoly::zero();
        }
        IsoPoly { terms: self.terms.iter().map(|(m, k)| (*m, k * c)).collect() }
    }

    pub fn scale_rat(&self, c: &Rat) -> IsoPoly {
        self.scale(&QuadRat::from_rat(c.clone()))
    }

    pub fn mul(&self, other: &IsoPoly) -> IsoPoly {
        let mut out = IsoPoly::default();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        out
    }

    pub fn pow(&self, e: u32) -> IsoPoly {
        let mut out = IsoPoly::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                out = out.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        out
    }

    /// The common weight of all terms, or None if the polynomial is not
    /// isobaric. The zero polynomial is isobaric of every weight; we report
    /// Some(0) for it.
    pub fn weight_check(&self) -> Option<u32> {
        let mut it = self.terms.keys();
        let w = match it.next() {
            None => return Some(0),
            Some(m) => m.weight(),
        };
        if it.all(|m| m.weight() == w) {
            Some(w)
        } else {
            None
        }
    }

    pub fn is_isobaric(&self) -> bool {
        self.weight_check().is_some()
    }

    /// Formal partial derivative.
    pub fn partial(&self, v: Var) -> IsoPoly {
        let i = v.index();
        let mut out = IsoPoly::default();
        for (m, c) in &self.terms {
            let e = m.0[i];
            if e > 0 {
                let mut m2 = m.0;
                m2[i] -= 1;
                out.add_term(Mono(m2), c * &QuadRat::from_int(e as i64));
            }
        }
        out
    }

    /// Substitute χ₅ ↦ −χ₅ (the involution ς on T*).
    pub fn flip_chi5(&self) -> IsoPoly {
        IsoPoly {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (*m, if m.exp(Var::Chi5) % 2 == 1 { -c } else { c.clone() }))
                .collect(),
        }
    }

    pub fn degree_in(&self, v: Var) -> u16 {
        self.terms.keys().map(|m| m.exp(v)).max().unwrap_or(0)
    }

    /// Coefficients of the polynomial viewed as univariate in `v`, ascending;
    /// the coefficients do not involve `v`.
    pub fn univariate_in(&self, v: Var) -> Vec<IsoPoly> {
        let d = self.degree_in(v) as usize;
        let mut out = vec![IsoPoly::zero(); d + 1];
        let i = v.index();
        for (m, c) in &self.terms {
            let e = m.0[i] as usize;
            let mut m2 = m.0;
            m2[i] = 0;
            out[e].add_term(Mono(m2), c.clone());
        }
        out
    }

    /// Leading term under the canonical storage order.
    pub fn leading(&self) -> Option<(&Mono, &QuadRat)> {
        self.terms.iter().next_back()
    }

    /// Exact division; None if `divisor` does not divide `self`.
    pub fn divide_exact(&self, divisor: &IsoPoly) -> Option<IsoPoly> {
        let (dm, dc) = divisor.leading()?;
        let dm = *dm;
        let dc = dc.clone();
        let mut rem = self.clone();
        let mut quot = IsoPoly::default();
        while let Some((rm, rc)) = rem.leading() {
            if !dm.divides(rm) {
                return None;
            }
            let qm = rm.div(&dm);
            let qc = rc / &dc;
            quot.add_term(qm, qc.clone());
            let piece = divisor.mul(&IsoPoly::monomial(qm, qc));
            rem = rem.sub(&piece);
        }
        Some(quot)
    }

    /// Componentwise monomial gcd of all terms (the monomial content).
    pub fn monomial_content(&self) -> Mono {
        let mut it = self.terms.keys();
        let mut g = match it.next() {
            None => return Mono::one(),
            Some(m) => *m,
        };
        for m in it {
            g = g.gcd(m);
        }
        g
    }

    /// Divide out the monomial content; returns (content, primitive part).
    pub fn strip_monomial_content(&self) -> (Mono, IsoPoly) {
        let g = self.monomial_content();
        if g.is_one() {
            return (g, self.clone());
        }
        let stripped = IsoPoly { terms: self.terms.iter().map(|(m, c)| (m.div(&g), c.clone())).collect() };
        (g, stripped)
    }

    /// Variables that actually occur.
    pub fn support_vars(&self) -> Vec<Var> {
        (0..NVARS)
            .filter(|&i| self.terms.keys().any(|m| m.0[i] > 0))
            .map(Var::from_index)
            .collect()
    }

    /// Substitute exact values for all four variables.
    pub fn eval(&self, vals: &[QuadRat; NVARS]) -> QuadRat {
        let mut acc = QuadRat::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for i in 0..NVARS {
                for _ in 0..m.0[i] {
                    t = &t * &vals[i];
                }
            }
            acc += &t;
        }
        acc
    }
}

/// Resultant of p and q with respect to `var`: the determinant of the
/// Sylvester matrix with p's coefficient rows on top, computed by Bareiss
/// fraction-free elimination over the remaining-variable polynomial ring.
pub fn resultant(p: &IsoPoly, q: &IsoPoly, var: Var) -> Result<IsoPoly> {
    let m = p.degree_in(var) as usize;
    let n = q.degree_in(var) as usize;
    if m == 0 || n == 0 {
        return Err(Error::ResultantDegreeZero);
    }
    let pc = p.univariate_in(var);
    let qc = q.univariate_in(var);
    let dim = m + n;
    let mut mat = vec![vec![IsoPoly::zero(); dim]; dim];
    for (i, row) in mat.iter_mut().take(n).enumerate() {
        for (j, c) in pc.iter().rev().enumerate() {
            row[i + j] = c.clone();
        }
    }
    for (i, row) in mat.iter_mut().skip(n).enumerate() {
        for (j, c) in qc.iter().rev().enumerate() {
            row[i + j] = c.clone();
        }
    }
    Ok(bareiss_determinant(mat))
}

/// Fraction-free determinant. Exact divisions by the previous pivot are
/// guaranteed by the Bareiss identity.
pub fn bareiss_determinant(mut m: Vec<Vec<IsoPoly>>) -> IsoPoly {
    let dim = m.len();
    if dim == 0 {
        return IsoPoly::one();
    }
    let mut sign = 1i32;
    let mut prev = IsoPoly::one();
    for k in 0..dim - 1 {
        if m[k][k].is_zero() {
            let swap = (k + 1..dim).find(|&i| !m[i][k].is_zero());
            match swap {
                Some(i) => {
                    m.swap(k, i);
                    sign = -sign;
                }
                None => return IsoPoly::zero(),
            }
        }
        for i in k + 1..dim {
            for j in k + 1..dim {
                let t = m[k][k].mul(&m[i][j]).sub(&m[i][k].mul(&m[k][j]));
                m[i][j] = t
                    .divide_exact(&prev)
                    .expect("Bareiss pivot division must be exact");
            }
            m[i][k] = IsoPoly::zero();
        }
        prev = m[k][k].clone();
    }
    let det = m[dim - 1][dim - 1].clone();
    if sign < 0 {
        det.neg()
    } else {
        det
    }
}

/// Plain expansion-by-minors determinant; test oracle for small dimensions.
pub fn determinant_by_minors(m: &[Vec<IsoPoly>]) -> IsoPoly {
    let dim = m.len();
    if dim == 0 {
        return IsoPoly::one();
    }
    if dim == 1 {
        return m[0][0].clone();
    }
    let mut acc = IsoPoly::zero();
    for j in 0..dim {
        if m[0][j].is_zero() {
            continue;
        }
        let minor: Vec<Vec<IsoPoly>> = m[1..]
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|(c, _)| *c != j)
                    .map(|(_, p)| p.clone())
                    .collect()
            })
            .collect();
        let cof = m[0][j].mul(&determinant_by_minors(&minor));
        if j % 2 == 0 {
            acc = acc.add(&cof);
        } else {
            acc = acc.sub(&cof);
        }
    }
    acc
}

/// The binomial families forced by weight on two-variable isobaric cofactors.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum BinomialKind {
    /// a·φ₂³ − χ₆ (weight 6)
    Phi2CubeMinusChi6,
    /// b·φ₂⁵ − χ₅² (weight 10)
    Phi2FifthMinusChi5Sq,
    /// d·χ₅⁶ − χ₆⁵ (weight 30)
    Chi5SixthMinusChi6Fifth,
}

impl BinomialKind {
    fn for_vars(v: Var, w: Var) -> Option<(BinomialKind, u16, u16)> {
        // returns (kind, exponent step of v, exponent step of w)
        match (v, w) {
            (Var::Phi2, Var::Chi6) => Some((BinomialKind::Phi2CubeMinusChi6, 3, 1)),
            (Var::Phi2, Var::Chi5) => Some((BinomialKind::Phi2FifthMinusChi5Sq, 5, 2)),
            (Var::Chi5, Var::Chi6) => Some((BinomialKind::Chi5SixthMinusChi6Fifth, 6, 5)),
            _ => None,
        }
    }

    pub fn weight(self) -> u32 {
        match self {
            BinomialKind::Phi2CubeMinusChi6 => 6,
            BinomialKind::Phi2FifthMinusChi5Sq => 10,
            BinomialKind::Chi5SixthMinusChi6Fifth => 30,
        }
    }

    pub fn describe(self) -> &'static str {
        match self {
            BinomialKind::Phi2CubeMinusChi6 => "a*phi2^3-chi6",
            BinomialKind::Phi2FifthMinusChi5Sq => "b*phi2^5-chi5^2",
            BinomialKind::Chi5SixthMinusChi6Fifth => "d*chi5^6-chi6^5",
        }
    }
}

/// Monomial-times-binomial-product decomposition of a two-variable isobaric
/// polynomial: poly = unit · monomial · cofactor with the cofactor a product
/// of binomials of the stated kind, normalised so that its pure-second-variable
/// term has coefficient (−1)^deg.
#[derive(Clone, Debug)]
pub struct ResultantShape {
    pub unit: QuadRat,
    pub monomial: Mono,
    pub kind: BinomialKind,
    pub cofactor: IsoPoly,
    pub weight: u32,
    /// The cofactor as a univariate polynomial in u = w^{dw}/v^{dv}, ascending.
    pub upoly: Vec<QuadRat>,
}

/// Reduce an isobaric polynomial in exactly two of {φ₂, χ₅, χ₆} to the
/// shape above. Errors if the polynomial does not fit the weight-forced form.
pub fn analyze_shape(p: &IsoPoly) -> Result<ResultantShape> {
    if p.is_zero() {
        return Err(Error::UnexpectedFactorShape("zero polynomial".into()));
    }
    if p.weight_check().is_none() {
        return Err(Error::UnexpectedFactorShape("not isobaric".into()));
    }
    let (content, stripped) = p.strip_monomial_content();
    let vars = stripped.support_vars();
    if vars.len() > 2 || vars.iter().any(|v| *v == Var::X) {
        return Err(Error::UnexpectedFactorShape(format!(
            "cofactor involves variables {:?}",
            vars
        )));
    }
    if vars.is_empty() {
        // pure monomial: degenerate shape with empty cofactor product
        let unit = stripped.coefficient(&Mono::one());
        return Ok(ResultantShape {
            unit,
            monomial: content,
            kind: BinomialKind::Phi2CubeMinusChi6,
            cofactor: IsoPoly::one(),
            weight: 0,
            upoly: vec![QuadRat::one()],
        });
    }
    let (v, w) = ordered_pair(&vars);
    let (kind, dv, dw) = BinomialKind::for_vars(v, w).ok_or_else(|| {
        Error::UnexpectedFactorShape(format!("no binomial family for ({:?},{:?})", v, w))
    })?;
    let wt = stripped.weight_check().unwrap();
    if wt % kind.weight() != 0 {
        return Err(Error::UnexpectedFactorShape(format!(
            "cofactor weight {} not a multiple of binomial weight {}",
            wt,
            kind.weight()
        )));
    }
    let deg = (wt / kind.weight()) as usize;
    let mut upoly = vec![QuadRat::zero(); deg + 1];
    for (m, c) in stripped.terms() {
        let ew = m.exp(w);
        let ev = m.exp(v);
        if ew % dw != 0 {
            return Err(Error::UnexpectedFactorShape(format!(
                "{:?}-exponent {} not a multiple of {}",
                w, ew, dw
            )));
        }
        let k = (ew / dw) as usize;
        if k > deg || ev != ((deg - k) as u16) * dv {
            return Err(Error::UnexpectedFactorShape(format!(
                "term {:?} off the weight line",
                m
            )));
        }
        upoly[k] = c.clone();
    }
    if upoly[0].is_zero() || upoly[deg].is_zero() {
        return Err(Error::UnexpectedFactorShape(
            "cofactor not coprime to a variable".into(),
        ));
    }
    // normalise: the product ∏(a_s v^dv − w^dw) has u-leading coefficient (−1)^deg
    let target = if deg % 2 == 0 { QuadRat::one() } else { -QuadRat::one() };
    let unit = &upoly[deg] / &target;
    let inv = unit.inv().expect("leading coefficient nonzero");
    for c in &mut upoly {
        *c = &*c * &inv;
    }
    let mut cof = IsoPoly::zero();
    for (k, c) in upoly.iter().enumerate() {
        let mut mono = [0u16; NVARS];
        mono[v.index()] = ((deg - k) as u16) * dv;
        mono[w.index()] = (k as u16) * dw;
        cof.add_term(Mono(mono), c.clone());
    }
    Ok(ResultantShape { unit, monomial: content, kind, cofactor: cof, weight: wt, upoly })
}

fn ordered_pair(vars: &[Var]) -> (Var, Var) {
    if vars.len() == 1 {
        // single variable: pair it with the canonical partner for its family
        return match vars[0] {
            Var::Phi2 => (Var::Phi2, Var::Chi6),
            Var::Chi5 => (Var::Phi2, Var::Chi5),
            Var::Chi6 => (Var::Phi2, Var::Chi6),
            Var::X => unreachable!(),
        };
    }
    let mut v = vars[0];
    let mut w = vars[1];
    if v.index() > w.index() {
        std::mem::swap(&mut v, &mut w);
    }
    (v, w)
}

/// gcd of two isobaric two-variable polynomials via the univariate reduction,
/// together with their shape decompositions.
pub fn gcd_and_shape(p: &IsoPoly, q: &IsoPoly) -> Result<(IsoPoly, (ResultantShape, ResultantShape))> {
    let sp = analyze_shape(p)?;
    let sq = analyze_shape(q)?;
    if sp.kind != sq.kind && sp.weight != 0 && sq.weight != 0 {
        return Err(Error::UnexpectedFactorShape(
            "operands reduce to different binomial families".into(),
        ));
    }
    let g = unipoly_gcd(&sp.upoly, &sq.upoly);
    // lift the monic univariate gcd back to an isobaric polynomial
    let (v, w, dv, dw) = match sp.kind {
        BinomialKind::Phi2CubeMinusChi6 => (Var::Phi2, Var::Chi6, 3u16, 1u16),
        BinomialKind::Phi2FifthMinusChi5Sq => (Var::Phi2, Var::Chi5, 5, 2),
        BinomialKind::Chi5SixthMinusChi6Fifth => (Var::Chi5, Var::Chi6, 6, 5),
    };
    let deg = g.len() - 1;
    let mut lifted = IsoPoly::zero();
    for (k, c) in g.iter().enumerate() {
        let mut mono = [0u16; NVARS];
        mono[v.index()] = ((deg - k) as u16) * dv;
        mono[w.index()] = (k as u16) * dw;
        lifted.add_term(Mono(mono), c.clone());
    }
    Ok((lifted, (sp, sq)))
}

/// Monic gcd of univariate polynomials over K, ascending coefficients.
pub fn unipoly_gcd(a: &[QuadRat], b: &[QuadRat]) -> Vec<QuadRat> {
    fn trim(mut v: Vec<QuadRat>) -> Vec<QuadRat> {
        while v.len() > 1 && v.last().map(QuadRat::is_zero).unwrap_or(false) {
            v.pop();
        }
        v
    }
    fn rem(a: &[QuadRat], b: &[QuadRat]) -> Vec<QuadRat> {
        let mut r = a.to_vec();
        let db = b.len() - 1;
        let lead = b[db].clone();
        while r.len() > db && !(r.len() == 1 && r[0].is_zero()) {
            let dr = r.len() - 1;
            let q = &r[dr] / &lead;
            for i in 0..=db {
                let t = &q * &b[i];
                r[dr - db + i] = &r[dr - db + i] - &t;
            }
            r = trim(r);
            if r.iter().all(QuadRat::is_zero) {
                return vec![QuadRat::zero()];
            }
        }
        r
    }
    let mut x = trim(a.to_vec());
    let mut y = trim(b.to_vec());
    if x.iter().all(QuadRat::is_zero) {
        return monic(y);
    }
    if y.iter().all(QuadRat::is_zero) {
        return monic(x);
    }
    while !(y.len() == 1 && y[0].is_zero()) {
        let r = rem(&x, &y);
        x = y;
        y = r;
    }
    monic(x)
}

fn monic(mut v: Vec<QuadRat>) -> Vec<QuadRat> {
    if let Some(last) = v.last().cloned() {
        if !last.is_zero() && last != QuadRat::one() {
            let inv = last.inv().unwrap();
            for c in &mut v {
                *c = &*c * &inv;
            }
        }
    }
    v
}

impl fmt::Display for IsoPoly {
    /// Canonical text form, highest-weight terms first:
    /// `coeff*phi2^a*chi5^b*chi6^c*X^d` with compound coefficients in
    /// parentheses. Round-trips through [`IsoPoly::from_str`].
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in self.terms.iter().rev() {
            let (coeff_str, negated) = coeff_text(c);
            if first {
                if negated {
                    write!(f, "-")?;
                }
                first = false;
            } else if negated {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if m.is_one() {
                write!(f, "{}", coeff_str)?;
            } else if coeff_str == "1" {
                write!(f, "{:?}", m)?;
            } else {
                write!(f, "{}*{:?}", coeff_str, m)?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for IsoPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

/// Printable coefficient with its sign pulled out when purely rational or
/// purely √5-rational; compound coefficients go in parentheses unsigned.
fn coeff_text(c: &QuadRat) -> (String, bool) {
    if c.b.is_zero() {
        if c.a.is_negative() {
            return (format!("{}", &QuadRat::from_rat(-c.a.clone())), true);
        }
        return (format!("{}", c), false);
    }
    if c.a.is_zero() {
        if c.b.is_negative() {
            return (format!("{}", &QuadRat::new(Rat::zero(), -c.b.clone())), true);
        }
        return (format!("{}", c), false);
    }
    (format!("({})", c), false)
}

impl FromStr for IsoPoly {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s: String = s.chars().filter(|ch| !ch.is_whitespace()).collect();
        if s.is_empty() {
            return Err(Error::Parse("empty polynomial".into()));
        }
        if s == "0" {
            return Ok(IsoPoly::zero());
        }
        // split on top-level + and - (not inside parentheses, not after '^'
        // or '/' or '*', not a leading sign)
        let bytes = s.as_bytes();
        let mut depth = 0usize;
        let mut cuts = vec![0usize];
        for (i, &ch) in bytes.iter().enumerate() {
            match ch {
                b'(' => depth += 1,
                b')' => depth -= 1,
                b'+' | b'-' if depth == 0 && i > 0 => {
                    let prev = bytes[i - 1];
                    if prev != b'/' && prev != b'*' && prev != b'^' && prev != b'+' && prev != b'-' {
                        cuts.push(i);
                    }
                }
                _ => {}
            }
        }
        cuts.push(s.len());
        let mut out = IsoPoly::zero();
        for w in cuts.windows(2) {
            let term = &s[w[0]..w[1]];
            let (m, c) = parse_term(term)?;
            out.add_term(m, c);
        }
        Ok(out)
    }
}

fn parse_term(term: &str) -> Result<(Mono, QuadRat)> {
    let (negate, body) = match term.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, term.strip_prefix('+').unwrap_or(term)),
    };
    let mut coeff = QuadRat::one();
    let mut mono = [0u16; NVARS];
    // split on '*' at paren depth 0
    let bytes = body.as_bytes();
    let mut depth = 0usize;
    let mut start = 0usize;
    let mut factors = Vec::new();
    for (i, &ch) in bytes.iter().enumerate() {
        match ch {
            b'(' => depth += 1,
            b')' => depth -= 1,
            b'*' if depth == 0 => {
                factors.push(&body[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    factors.push(&body[start..]);
    // re-join coefficient pieces like ["1/2", "s5"] printed without parens
    let mut i = 0;
    while i < factors.len() {
        let f = factors[i];
        if f.is_empty() {
            return Err(Error::Parse(format!("empty factor in {term:?}")));
        }
        if let Some(inner) = f.strip_prefix('(') {
            let inner = inner
                .strip_suffix(')')
                .ok_or_else(|| Error::Parse(format!("unbalanced parens in {term:?}")))?;
            coeff = &coeff * &inner.parse::<QuadRat>()?;
        } else if f == "s5" {
            coeff = &coeff * &QuadRat::sqrt5();
        } else if f.chars().next().unwrap().is_ascii_digit() || f.starts_with('-') {
            // a rational, possibly followed by "*s5" which appears as its own factor
            if i + 1 < factors.len() && factors[i + 1] == "s5" {
                let mut q: QuadRat = f.parse()?;
                q = &q * &QuadRat::sqrt5();
                coeff = &coeff * &q;
                i += 1;
            } else {
                coeff = &coeff * &f.parse::<QuadRat>()?;
            }
        } else {
            // variable power
            let (name, exp) = match f.split_once('^') {
                Some((n, e)) => {
                    let e: u16 = e
                        .parse()
                        .map_err(|_| Error::Parse(format!("bad exponent in {f:?}")))?;
                    (n, e)
                }
                None => (f, 1),
            };
            let vi = VAR_NAMES
                .iter()
                .position(|&n| n == name)
                .ok_or_else(|| Error::Parse(format!("unknown variable {name:?}")))?;
            mono[vi] += exp;
        }
        i += 1;
    }
    if negate {
        coeff = -coeff;
    }
    Ok((Mono(mono), coeff))
}
