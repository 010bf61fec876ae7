//! A free differential-polynomial algebra in three form symbols F, G, H with
//! two commuting formal derivations D₁, D₂ capped at second order, and the
//! weights f, g, h carried as polynomial indeterminates.
//!
//! This is where the universal bracket identities are proved: an identity
//! verified here holds for all triples of forms of all parallel weights at
//! once, because the algebra is free.

use crate::numfield::{rat_int, Rat};
use crate::{Error, Result};
use num_traits::{One, Zero};
use std::collections::BTreeMap;
use std::fmt;

/// Jet components of one form symbol: the value and its formal partials up to
/// order two (D₁D₂ = D₂D₁ is built into the alphabet).
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Jet {
    Val = 0,
    D1 = 1,
    D2 = 2,
    D11 = 3,
    D12 = 4,
    D22 = 5,
}

/// The three form symbols.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Form {
    F = 0,
    G = 1,
    H = 2,
}

/// Variable layout: 18 jet symbols, then the weight indeterminates f, g, h.
pub const NSYM: usize = 21;
const WF: usize = 18;
const WG: usize = 19;
const WH: usize = 20;

fn jet_var(form: Form, jet: Jet) -> usize {
    form as usize * 6 + jet as usize
}

fn var_name(i: usize) -> String {
    if i < 18 {
        let form = ["F", "G", "H"][i / 6];
        let jet = ["", "_1", "_2", "_11", "_12", "_22"][i % 6];
        format!("{form}{jet}")
    } else {
        ["f", "g", "h"][i - 18].to_string()
    }
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FMono([u8; NSYM]);

impl FMono {
    fn one() -> Self {
        FMono([0; NSYM])
    }

    fn var(i: usize) -> Self {
        let mut m = [0; NSYM];
        m[i] = 1;
        FMono(m)
    }

    fn mul(&self, o: &FMono) -> FMono {
        let mut m = self.0;
        for i in 0..NSYM {
            m[i] += o.0[i];
        }
        FMono(m)
    }
}

/// Element of the free algebra: a Q-polynomial in the 18 jet symbols and the
/// three weight indeterminates.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct FreeExpr {
    terms: BTreeMap<FMono, Rat>,
}

impl FreeExpr {
    pub fn zero() -> Self {
        FreeExpr::default()
    }

    pub fn one() -> Self {
        FreeExpr::constant(Rat::one())
    }

    pub fn constant(c: Rat) -> Self {
        let mut e = FreeExpr::default();
        e.add_term(FMono::one(), c);
        e
    }

    pub fn symbol(form: Form, jet: Jet) -> Self {
        let mut e = FreeExpr::default();
        e.add_term(FMono::var(jet_var(form, jet)), Rat::one());
        e
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    fn add_term(&mut self, m: FMono, c: Rat) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                let s = o.get() + &c;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn add(&self, o: &FreeExpr) -> FreeExpr {
        let mut out = self.clone();
        for (m, c) in &o.terms {
            out.add_term(*m, c.clone());
        }
        out
    }

    pub fn sub(&self, o: &FreeExpr) -> FreeExpr {
        let mut out = self.clone();
        for (m, c) in &o.terms {
            out.add_term(*m, -c.clone());
        }
        out
    }

    pub fn neg(&self) -> FreeExpr {
        FreeExpr { terms: self.terms.iter().map(|(m, c)| (*m, -c.clone())).collect() }
    }

    pub fn mul(&self, o: &FreeExpr) -> FreeExpr {
        let mut out = FreeExpr::default();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &o.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        out
    }

    pub fn scale(&self, c: &Rat) -> FreeExpr {
        if c.is_zero() {
            return FreeExpr::zero();
        }
        FreeExpr { terms: self.terms.iter().map(|(m, k)| (*m, k * c)).collect() }
    }

    /// Formal derivation D_axis (axis ∈ {1, 2}); errors if a third-order
    /// partial would be needed.
    pub fn derive(&self, axis: u8) -> Result<FreeExpr> {
        let mut out = FreeExpr::default();
        for (m, c) in &self.terms {
            for i in 0..18 {
                let e = m.0[i];
                if e == 0 {
                    continue;
                }
                let jet = i % 6;
                let bumped = bump_jet(jet, axis).ok_or(Error::DerivationOrderExceeded)?;
                let mut m2 = m.0;
                m2[i] -= 1;
                m2[i - jet + bumped] += 1;
                out.add_term(FMono(m2), c * &rat_int(e as i64));
            }
        }
        Ok(out)
    }

    /// Exact evaluation at a full assignment of the 21 variables.
    pub fn eval(&self, vals: &[Rat; NSYM]) -> Rat {
        let mut acc = Rat::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for i in 0..NSYM {
                for _ in 0..m.0[i] {
                    t *= &vals[i];
                }
            }
            acc += t;
        }
        acc
    }

    /// Substitute numeric weights (f, g, h), keeping the jet symbols formal.
    pub fn substitute_weights(&self, f: &Rat, g: &Rat, h: &Rat) -> FreeExpr {
        let mut out = FreeExpr::default();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (w, val) in [(WF, f), (WG, g), (WH, h)] {
                for _ in 0..m.0[w] {
                    t *= val;
                }
            }
            let mut m2 = m.0;
            m2[WF] = 0;
            m2[WG] = 0;
            m2[WH] = 0;
            out.add_term(FMono(m2), t);
        }
        out
    }

    /// Substitute F ↦ 1 and all partials of F ↦ 0.
    pub fn set_f_constant(&self) -> FreeExpr {
        let mut out = FreeExpr::default();
        for (m, c) in &self.terms {
            if (1..6).any(|j| m.0[j] > 0) {
                continue;
            }
            let mut m2 = m.0;
            m2[0] = 0;
            out.add_term(FMono(m2), c.clone());
        }
        out
    }
}

fn bump_jet(jet: usize, axis: u8) -> Option<usize> {
    match (jet, axis) {
        (0, 1) => Some(1),
        (0, 2) => Some(2),
        (1, 1) => Some(3),
        (1, 2) => Some(4),
        (2, 1) => Some(4),
        (2, 2) => Some(5),
        _ => None,
    }
}

impl fmt::Display for FreeExpr {
    fn fmt(&self, fm: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(fm, "0");
        }
        let mut first = true;
        for (m, c) in self.terms.iter().rev() {
            if !first {
                write!(fm, " + ")?;
            }
            first = false;
            write!(fm, "{}", c)?;
            for i in 0..NSYM {
                if m.0[i] > 0 {
                    if m.0[i] == 1 {
                        write!(fm, "*{}", var_name(i))?;
                    } else {
                        write!(fm, "*{}^{}", var_name(i), m.0[i])?;
                    }
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for FreeExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

/// An affine-linear expression c + af + bg + ch in the weight indeterminates;
/// the weight of every object this module manipulates has this shape.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct LinForm {
    pub c: i64,
    pub f: i64,
    pub g: i64,
    pub h: i64,
}

impl LinForm {
    pub const ZERO: LinForm = LinForm { c: 0, f: 0, g: 0, h: 0 };
    pub const F: LinForm = LinForm { c: 0, f: 1, g: 0, h: 0 };
    pub const G: LinForm = LinForm { c: 0, f: 0, g: 1, h: 0 };
    pub const H: LinForm = LinForm { c: 0, f: 0, g: 0, h: 1 };

    pub fn constant(c: i64) -> LinForm {
        LinForm { c, f: 0, g: 0, h: 0 }
    }

    pub fn add(self, o: LinForm) -> LinForm {
        LinForm { c: self.c + o.c, f: self.f + o.f, g: self.g + o.g, h: self.h + o.h }
    }

    pub fn to_expr(self) -> FreeExpr {
        let mut e = FreeExpr::constant(rat_int(self.c));
        for (coef, var) in [(self.f, WF), (self.g, WG), (self.h, WH)] {
            if coef != 0 {
                e.add_term(FMono::var(var), rat_int(coef));
            }
        }
        e
    }
}

/// Weight vector (w₁, w₂) of a bihomogeneous expression.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct WeightVector(pub LinForm, pub LinForm);

impl WeightVector {
    pub fn parallel(w: LinForm) -> Self {
        WeightVector(w, w)
    }

    pub fn axis(&self, axis: u8) -> LinForm {
        if axis == 1 {
            self.0
        } else {
            self.1
        }
    }

    pub fn add(&self, o: &WeightVector) -> WeightVector {
        WeightVector(self.0.add(o.0), self.1.add(o.1))
    }

    pub fn bump(&self, axis: u8, by: i64) -> WeightVector {
        let mut w = *self;
        if axis == 1 {
            w.0 = w.0.add(LinForm::constant(by));
        } else {
            w.1 = w.1.add(LinForm::constant(by));
        }
        w
    }
}

/// A free-algebra element together with its weight vector.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Weighted {
    pub expr: FreeExpr,
    pub weight: WeightVector,
}

/// The generator F, G or H with its symbolic parallel weight.
pub fn generator(form: Form) -> Weighted {
    let w = match form {
        Form::F => LinForm::F,
        Form::G => LinForm::G,
        Form::H => LinForm::H,
    };
    Weighted { expr: FreeExpr::symbol(form, Jet::Val), weight: WeightVector::parallel(w) }
}

/// \[A, B\]_{1_axis} = a_axis·A·D_axis(B) − b_axis·B·D_axis(A); the output
/// weight is the sum of the input weights plus 2 on the chosen axis.
pub fn free_bracket1(a: &Weighted, b: &Weighted, axis: u8) -> Result<Weighted> {
    let da = a.expr.derive(axis)?;
    let db = b.expr.derive(axis)?;
    let wa = a.weight.axis(axis).to_expr();
    let wb = b.weight.axis(axis).to_expr();
    let expr = wa.mul(&a.expr).mul(&db).sub(&wb.mul(&b.expr).mul(&da));
    Ok(Weighted { expr, weight: a.weight.add(&b.weight).bump(axis, 2) })
}

/// The plain triple bracket
/// \[F, G, H\] = ((g+h)/2)·det[\[fF, gG, hH\], \[D₁F, D₁G, D₁H\], \[D₂F, D₂G, D₂H\]]
/// for parallel-weight inputs.
pub fn free_triple(a: &Weighted, b: &Weighted, c: &Weighted) -> Result<Weighted> {
    for x in [a, b, c] {
        if x.weight.0 != x.weight.1 {
            return Err(Error::WeightMismatch("triple bracket needs parallel weights".into()));
        }
    }
    let top: Vec<FreeExpr> = [a, b, c].iter().map(|x| x.weight.0.to_expr().mul(&x.expr)).collect();
    let d1: Vec<FreeExpr> = [a, b, c]
        .iter()
        .map(|x| x.expr.derive(1))
        .collect::<Result<_>>()?;
    let d2: Vec<FreeExpr> = [a, b, c]
        .iter()
        .map(|x| x.expr.derive(2))
        .collect::<Result<_>>()?;
    let det = det3(&top, &d1, &d2);
    let scale = b.weight.0.add(c.weight.0).to_expr().scale(&crate::numfield::rat(1, 2));
    let w = a.weight.0.add(b.weight.0).add(c.weight.0).add(LinForm::constant(2));
    Ok(Weighted { expr: scale.mul(&det), weight: WeightVector::parallel(w) })
}

/// The symmetrised star bracket
/// \[A, B, C\]* = ½([A, \[B,C\]_{1₂}]_{1₁} + [A, \[B,C\]_{1₁}]_{1₂}).
pub fn free_triple_star(a: &Weighted, b: &Weighted, c: &Weighted) -> Result<Weighted> {
    let inner2 = free_bracket1(b, c, 2)?;
    let inner1 = free_bracket1(b, c, 1)?;
    let n1 = free_bracket1(a, &inner2, 1)?;
    let n2 = free_bracket1(a, &inner1, 2)?;
    let expr = n1.expr.add(&n2.expr).scale(&crate::numfield::rat(1, 2));
    let w = a.weight.0.add(b.weight.0).add(c.weight.0).add(LinForm::constant(2));
    Ok(Weighted { expr, weight: WeightVector::parallel(w) })
}

fn det3(r0: &[FreeExpr], r1: &[FreeExpr], r2: &[FreeExpr]) -> FreeExpr {
    let m = |i: usize, j: usize, k: usize, l: usize| r1[i].mul(&r2[j]).sub(&r1[k].mul(&r2[l]));
    r0[0]
        .mul(&m(1, 2, 2, 1))
        .sub(&r0[1].mul(&m(0, 2, 2, 0)))
        .add(&r0[2].mul(&m(0, 1, 1, 0)))
}

/// Residual of the triple-bracket identity, identically zero:
/// \[F,G,H\] − ½([F,\[G,H\]_{1₂}]_{1₁} − [F,\[G,H\]_{1₁}]_{1₂}).
pub fn triplo_residual() -> Result<FreeExpr> {
    let f = generator(Form::F);
    let g = generator(Form::G);
    let h = generator(Form::H);
    let plain = free_triple(&f, &g, &h)?;
    let inner2 = free_bracket1(&g, &h, 2)?;
    let inner1 = free_bracket1(&g, &h, 1)?;
    let n1 = free_bracket1(&f, &inner2, 1)?;
    let n2 = free_bracket1(&f, &inner1, 2)?;
    let nested = n1.expr.sub(&n2.expr).scale(&crate::numfield::rat(1, 2));
    Ok(plain.expr.sub(&nested))
}

/// The rank identity: with the star-bracket matrix
/// N = (\[A, B, C\]*) over rows (B,C) ∈ {(G,H), (F,G), (F,H)} and columns
/// A ∈ {F, G, H}, and the anti-diagonal 2×2 minors
///   M₁ = \[F,G,H\]*\[H,F,G\]* − \[H,G,H\]*\[F,F,G\]*   (rows (G,H),(F,G); cols F,H)
///   M₂ = \[F,G,H\]*\[G,F,H\]* − \[G,G,H\]*\[F,F,H\]*   (rows (G,H),(F,H); cols F,G)
///   M₃ = \[G,F,G\]*\[H,F,H\]* − \[H,F,G\]*\[G,F,H\]*   (rows (F,G),(F,H); cols G,H)
/// the square of the plain bracket satisfies, identically in all jets and all
/// weights,
///
///   (f+g)(f+h)·\[F,G,H\]² = (f+g)(g+h)·M₂ − (f+h)(g+h)·M₁ − (g+h)²·M₃.
///
/// Returns the residual LHS − RHS, which is identically zero.
pub fn formulone_residual() -> Result<FreeExpr> {
    let f = generator(Form::F);
    let g = generator(Form::G);
    let h = generator(Form::H);
    let star =
        |a: &Weighted, b: &Weighted, c: &Weighted| -> Result<FreeExpr> { Ok(free_triple_star(a, b, c)?.expr) };
    let plain = free_triple(&f, &g, &h)?.expr;
    let fg = LinForm::F.add(LinForm::G).to_expr();
    let fh = LinForm::F.add(LinForm::H).to_expr();
    let gh = LinForm::G.add(LinForm::H).to_expr();
    let lhs = fg.mul(&fh).mul(&plain.mul(&plain));
    let fgh = star(&f, &g, &h)?;
    let hfg = star(&h, &f, &g)?;
    let hgh = star(&h, &g, &h)?;
    let ffg = star(&f, &f, &g)?;
    let gfh = star(&g, &f, &h)?;
    let ggh = star(&g, &g, &h)?;
    let ffh = star(&f, &f, &h)?;
    let gfg = star(&g, &f, &g)?;
    let hfh = star(&h, &f, &h)?;
    let m1 = fgh.mul(&hfg).sub(&hgh.mul(&ffg));
    let m2 = fgh.mul(&gfh).sub(&ggh.mul(&ffh));
    let m3 = gfg.mul(&hfh).sub(&hfg.mul(&gfh));
    let rhs = fg.mul(&gh).mul(&m2).sub(&fh.mul(&gh).mul(&m1)).sub(&gh.mul(&gh).mul(&m3));
    Ok(lhs.sub(&rhs))
}

/// Report from the identity verifier: the residual in canonical text form,
/// empty residual printing as "IDENTITY VERIFIED".
pub fn residual_report(name: &str, residual: &FreeExpr) -> String {
    if residual.is_zero() {
        format!("{name}: IDENTITY VERIFIED")
    } else {
        format!("{name}: NONZERO RESIDUAL {residual}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numfield::rat;

    #[test]
    fn derivations_commute_and_leibniz() {
        let f = generator(Form::F).expr;
        let g = generator(Form::G).expr;
        let prod = f.mul(&g);
        // Leibniz
        let d1 = prod.derive(1).unwrap();
        let expect = f.derive(1).unwrap().mul(&g).add(&f.mul(&g.derive(1).unwrap()));
        assert_eq!(d1, expect);
        // commutation on order-0 expressions
        let e = f.mul(&g).add(&FreeExpr::symbol(Form::H, Jet::Val).mul(&f));
        let a = e.derive(1).unwrap().derive(2).unwrap();
        let b = e.derive(2).unwrap().derive(1).unwrap();
        assert_eq!(a, b);
        // order cap
        let third = FreeExpr::symbol(Form::F, Jet::D11).derive(1);
        assert!(third.is_err());
    }

    #[test]
    fn bracket1_antisymmetry_and_weight() {
        let f = generator(Form::F);
        let g = generator(Form::G);
        let ff = free_bracket1(&f, &f, 1).unwrap();
        assert!(ff.expr.is_zero());
        let fg = free_bracket1(&f, &g, 1).unwrap();
        let gf = free_bracket1(&g, &f, 1).unwrap();
        assert!(fg.expr.add(&gf.expr).is_zero());
        assert_eq!(fg.weight, WeightVector(
            LinForm { c: 2, f: 1, g: 1, h: 0 },
            LinForm { c: 0, f: 1, g: 1, h: 0 },
        ));
        // the defining display on axis 2
        let fg2 = free_bracket1(&f, &g, 2).unwrap();
        let expect = LinForm::F
            .to_expr()
            .mul(&f.expr)
            .mul(&g.expr.derive(2).unwrap())
            .sub(&LinForm::G.to_expr().mul(&g.expr).mul(&f.expr.derive(2).unwrap()));
        assert_eq!(fg2.expr, expect);
    }

    #[test]
    fn triple_bracket_alternates() {
        let f = generator(Form::F);
        let g = generator(Form::G);
        let t = free_triple(&f, &g, &g).unwrap();
        assert!(t.expr.is_zero());
        // weight lands in f+g+h+2
        let h = generator(Form::H);
        let t2 = free_triple(&f, &g, &h).unwrap();
        assert_eq!(t2.weight.0, LinForm { c: 2, f: 1, g: 1, h: 1 });
        assert_eq!(t2.weight.0, t2.weight.1);
        let s = free_triple_star(&f, &g, &h).unwrap();
        assert_eq!(s.weight.0, LinForm { c: 2, f: 1, g: 1, h: 1 });
    }

    #[test]
    fn triplo_identity() {
        assert!(triplo_residual().unwrap().is_zero());
    }

    #[test]
    fn formulone_identity() {
        assert!(formulone_residual().unwrap().is_zero());
    }

    #[test]
    fn formulone_specialization() {
        // f=6, g=2, h=5 (the instance used downstream)
        let r = formulone_residual().unwrap().substitute_weights(&rat_int(6), &rat_int(2), &rat_int(5));
        assert!(r.is_zero());
    }

    /// Brute-force numeric oracle: substitute small integers for all 18 jet
    /// symbols and the weights; both sides of each identity must agree
    /// exactly as rationals.
    #[test]
    fn numeric_substitution_oracle() {
        let tri = triplo_residual().unwrap();
        let form = formulone_residual().unwrap();
        // a deterministic spread of assignments in [−5, 5]
        let mut seed = 37i64;
        for _ in 0..12 {
            let mut vals: [Rat; NSYM] = std::array::from_fn(|_| Rat::zero());
            for v in vals.iter_mut() {
                seed = (seed * 1103515245 + 12345) % 2147483648;
                *v = rat_int((seed % 11) - 5);
            }
            assert!(tri.eval(&vals).is_zero());
            assert!(form.eval(&vals).is_zero());
        }
    }

    /// Independent oracle for the rank identity: solve for LHS =
    /// (f+g)(f+h)\[F,G,H\]² as a combination of the 9 minors of the star-bracket
    /// matrix with weight-monomial coefficients, by exact linear algebra over
    /// the full symbolic expansion, and check the solution is the implemented
    /// combination: (f+g)(g+h)·M₂ − (f+h)(g+h)·M₁ − (g+h)²·M₃.
    #[test]
    fn solve_formulone_combination() {
        let f = generator(Form::F);
        let g = generator(Form::G);
        let h = generator(Form::H);
        let cols = [&f, &g, &h];
        let col_names = ["F", "G", "H"];
        let rows = [(&g, &h), (&f, &g), (&f, &h)];
        let row_names = ["(G,H)", "(F,G)", "(F,H)"];
        let mut nmat: Vec<Vec<FreeExpr>> = Vec::new();
        for (b, c) in rows {
            let mut row = Vec::new();
            for a in cols {
                row.push(free_triple_star(a, b, c).unwrap().expr);
            }
            nmat.push(row);
        }
        // the 9 minors
        let mut minors: Vec<(String, FreeExpr)> = Vec::new();
        let pairs = [(0usize, 1usize), (0, 2), (1, 2)];
        for &(r1, r2) in &pairs {
            for &(c1, c2) in &pairs {
                let m = nmat[r1][c1]
                    .mul(&nmat[r2][c2])
                    .sub(&nmat[r1][c2].mul(&nmat[r2][c1]));
                minors.push((
                    format!(
                        "minor(rows {}{}, cols {}{})",
                        row_names[r1], row_names[r2], col_names[c1], col_names[c2]
                    ),
                    m,
                ));
            }
        }
        // weight monomials of degree ≤ 2
        let mut wmonos: Vec<(String, FreeExpr)> = vec![("1".into(), FreeExpr::one())];
        let wvars = [("f", LinForm::F), ("g", LinForm::G), ("h", LinForm::H)];
        for (n1, l1) in wvars {
            wmonos.push((n1.to_string(), l1.to_expr()));
            for (n2, l2) in wvars {
                if n1 <= n2 {
                    wmonos.push((format!("{n1}{n2}"), l1.to_expr().mul(&l2.to_expr())));
                }
            }
        }
        // unknowns: coefficient of (wmono × minor)
        let mut basis: Vec<(String, FreeExpr)> = Vec::new();
        for (mn, me) in &minors {
            for (wn, we) in &wmonos {
                basis.push((format!("{wn}·{mn}"), we.mul(me)));
            }
        }
        let plain = free_triple(&f, &g, &h).unwrap().expr;
        let lhs = LinForm::F
            .add(LinForm::G)
            .to_expr()
            .mul(&LinForm::F.add(LinForm::H).to_expr())
            .mul(&plain.mul(&plain));
        // collect all monomials
        use std::collections::BTreeMap;
        let mut mono_index: BTreeMap<FMono, usize> = BTreeMap::new();
        let mut note = |e: &FreeExpr, map: &mut BTreeMap<FMono, usize>| {
            for m in e.terms.keys() {
                let next = map.len();
                map.entry(*m).or_insert(next);
            }
        };
        note(&lhs, &mut mono_index);
        for (_, e) in &basis {
            note(e, &mut mono_index);
        }
        let nrows = mono_index.len();
        let ncols = basis.len();
        let mut mat = vec![vec![Rat::zero(); ncols + 1]; nrows];
        for (j, (_, e)) in basis.iter().enumerate() {
            for (m, c) in &e.terms {
                mat[mono_index[m]][j] = c.clone();
            }
        }
        for (m, c) in &lhs.terms {
            mat[mono_index[m]][ncols] = c.clone();
        }
        // Gaussian elimination
        let mut pivot_of_col: Vec<Option<usize>> = vec![None; ncols];
        let mut r = 0usize;
        for c in 0..ncols {
            if let Some(pr) = (r..nrows).find(|&i| !mat[i][c].is_zero()) {
                mat.swap(r, pr);
                let inv = mat[r][c].recip();
                for v in mat[r].iter_mut() {
                    *v *= &inv;
                }
                for i in 0..nrows {
                    if i != r && !mat[i][c].is_zero() {
                        let factor = mat[i][c].clone();
                        for k in c..=ncols {
                            let t = &factor * &mat[r][k];
                            mat[i][k] -= t;
                        }
                    }
                }
                pivot_of_col[c] = Some(r);
                r += 1;
            }
        }
        let consistent = mat.iter().skip(r).all(|row| row[ncols].is_zero());
        assert!(consistent, "LHS is not in the span of the weighted minors");
        let mut found: Vec<(String, Rat)> = Vec::new();
        for (c, piv) in pivot_of_col.iter().enumerate() {
            if let Some(pr) = piv {
                let v = &mat[*pr][ncols];
                if !v.is_zero() {
                    found.push((basis[c].0.clone(), v.clone()));
                }
            }
        }
        // the solution factors as (f+g)(g+h)·M₂ − (f+h)(g+h)·M₁ − (g+h)²·M₃:
        // M₁ has rows (G,H),(F,G) and cols F,H; M₂ rows (G,H),(F,H), cols F,G;
        // M₃ rows (F,G),(F,H), cols G,H.
        let expect: Vec<(&str, i64)> = vec![
            ("fg·minor(rows (G,H)(F,G), cols FH)", -1),
            ("fh·minor(rows (G,H)(F,G), cols FH)", -1),
            ("gh·minor(rows (G,H)(F,G), cols FH)", -1),
            ("hh·minor(rows (G,H)(F,G), cols FH)", -1),
            ("fg·minor(rows (G,H)(F,H), cols FG)", 1),
            ("fh·minor(rows (G,H)(F,H), cols FG)", 1),
            ("gg·minor(rows (G,H)(F,H), cols FG)", 1),
            ("gh·minor(rows (G,H)(F,H), cols FG)", 1),
            ("gg·minor(rows (F,G)(F,H), cols GH)", -1),
            ("gh·minor(rows (F,G)(F,H), cols GH)", -2),
            ("hh·minor(rows (F,G)(F,H), cols GH)", -1),
        ];
        assert_eq!(found.len(), expect.len());
        for (name, coeff) in expect {
            assert!(
                found.iter().any(|(n, v)| n == name && *v == rat_int(coeff)),
                "missing term {coeff} × [{name}] in the solved combination"
            );
        }
    }

    /// With F set to the constant 1 (all partials zero) the star bracket
    /// collapses to ½·f·(D₁\[G,H\]_{1₂} + D₂\[G,H\]_{1₁}); with f = 0 it vanishes.
    #[test]
    fn star_bracket_constant_first_argument() {
        let f = generator(Form::F);
        let g = generator(Form::G);
        let h = generator(Form::H);
        let star = free_triple_star(&f, &g, &h).unwrap().expr.set_f_constant();
        let inner2 = free_bracket1(&g, &h, 2).unwrap().expr;
        let inner1 = free_bracket1(&g, &h, 1).unwrap().expr;
        let expect = LinForm::F
            .to_expr()
            .mul(&inner2.derive(1).unwrap().add(&inner1.derive(2).unwrap()))
            .scale(&rat(1, 2));
        assert_eq!(star, expect);
        // f = 0 kills it
        assert!(star.substitute_weights(&rat_int(0), &rat_int(2), &rat_int(5)).is_zero());
    }
}
