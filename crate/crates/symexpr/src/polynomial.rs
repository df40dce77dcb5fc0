use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::{Chart, Error, Monomial, Rational};

/// Multivariate polynomial with rational coefficients on a fixed chart.
/// Zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Polynomial {
    chart: Chart,
    terms: BTreeMap<Monomial, Rational>,
}

impl Polynomial {
    pub fn zero(chart: &Chart) -> Polynomial {
        Polynomial {
            chart: chart.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(chart: &Chart, c: Rational) -> Polynomial {
        let mut p = Polynomial::zero(chart);
        if !c.is_zero() {
            p.terms.insert(Monomial::constant(chart.dim()), c);
        }
        p
    }

    pub fn one(chart: &Chart) -> Polynomial {
        Polynomial::constant(chart, Rational::one())
    }

    pub fn coordinate(chart: &Chart, i: usize) -> Result<Polynomial, Error> {
        if i >= chart.dim() {
            return Err(Error::IndexOutOfRange {
                index: i,
                dim: chart.dim(),
            });
        }
        let mut p = Polynomial::zero(chart);
        p.terms
            .insert(Monomial::coordinate(chart.dim(), i), Rational::one());
        Ok(p)
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial, Rational)>>(
        chart: &Chart,
        terms: I,
    ) -> Polynomial {
        let mut p = Polynomial::zero(chart);
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn chart(&self) -> &Chart {
        &self.chart
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .iter()
                .next()
                .map(|(m, c)| m.is_constant() && c.is_one())
                .unwrap_or(false)
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.leading_monomial().is_constant())
    }

    /// Constant value when the polynomial has no variable terms.
    pub fn as_constant(&self) -> Option<Rational> {
        if self.terms.is_empty() {
            return Some(Rational::zero());
        }
        if self.is_constant() {
            return self.terms.values().next().cloned();
        }
        None
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.total_degree()).max()
    }

    pub fn degree_in(&self, i: usize) -> u32 {
        self.terms.keys().map(|m| m.degree_in(i)).max().unwrap_or(0)
    }

    /// Largest monomial in graded-lex order. Panics on the zero polynomial.
    pub fn leading_monomial(&self) -> &Monomial {
        self.terms.keys().next_back().expect("zero polynomial")
    }

    pub fn leading_coefficient(&self) -> Rational {
        self.terms
            .values()
            .next_back()
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        for (m, c) in other.terms.iter() {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> Polynomial {
        Polynomial {
            chart: self.chart.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }

    pub fn sub(&self, other: &Polynomial) -> Polynomial {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        let mut out = Polynomial::zero(&self.chart);
        for (ma, ca) in self.terms.iter() {
            for (mb, cb) in other.terms.iter() {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }

    pub fn scale(&self, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(&self.chart);
        }
        Polynomial {
            chart: self.chart.clone(),
            terms: self.terms.iter().map(|(m, k)| (m.clone(), k * c)).collect(),
        }
    }

    pub fn pow(&self, n: u32) -> Polynomial {
        let mut out = Polynomial::one(&self.chart);
        for _ in 0..n {
            out = out.mul(self);
        }
        out
    }

    pub fn partial(&self, i: usize) -> Result<Polynomial, Error> {
        if i >= self.chart.dim() {
            return Err(Error::IndexOutOfRange {
                index: i,
                dim: self.chart.dim(),
            });
        }
        let mut out = Polynomial::zero(&self.chart);
        for (m, c) in self.terms.iter() {
            let e = m.degree_in(i);
            if e > 0 {
                out.add_term(m.with_exponent(i, e - 1), c * Rational::from_integer(e.into()));
            }
        }
        Ok(out)
    }

    pub fn eval_exact(&self, values: &[Rational]) -> Rational {
        let mut acc = Rational::zero();
        for (m, c) in self.terms.iter() {
            let mut t = c.clone();
            for (i, &e) in m.exponents().iter().enumerate() {
                for _ in 0..e {
                    t *= &values[i];
                }
            }
            acc += t;
        }
        acc
    }

    pub fn eval_f64(&self, values: &[f64]) -> f64 {
        let mut acc = 0.0;
        for (m, c) in self.terms.iter() {
            let mut t = rational_to_f64(c);
            for (i, &e) in m.exponents().iter().enumerate() {
                t *= values[i].powi(e as i32);
            }
            acc += t;
        }
        acc
    }

    /// Exact multivariate division; `None` when `other` does not divide `self`.
    pub fn div_exact(&self, other: &Polynomial) -> Option<Polynomial> {
        assert!(!other.is_zero(), "division by zero polynomial");
        let mut rem = self.clone();
        let mut quo = Polynomial::zero(&self.chart);
        let lead_m = other.leading_monomial().clone();
        let lead_c = other.leading_coefficient();
        while !rem.is_zero() {
            let m = rem.leading_monomial().clone();
            let c = rem.leading_coefficient();
            let q = m.div(&lead_m)?;
            let qc = c / &lead_c;
            quo.add_term(q.clone(), qc.clone());
            // rem -= (qc * q) * other
            for (mo, co) in other.terms.iter() {
                rem.add_term(q.mul(mo), -(co * &qc));
            }
        }
        Some(quo)
    }

    /// Monic-normalized greatest common divisor (leading coefficient 1).
    pub fn gcd(&self, other: &Polynomial) -> Polynomial {
        if self.is_zero() {
            return monic(other);
        }
        if other.is_zero() {
            return monic(self);
        }
        if self.is_constant() || other.is_constant() {
            return Polynomial::one(self.chart());
        }
        let a = integer_primitive(self);
        let b = integer_primitive(other);
        monic(&gcd_zz(&a, &b))
    }

    /// Substitute one polynomial per coordinate.
    pub fn substitute_poly(&self, args: &[Polynomial], target: &Chart) -> Polynomial {
        let mut acc = Polynomial::zero(target);
        for (m, c) in self.terms.iter() {
            let mut t = Polynomial::constant(target, c.clone());
            for (i, &e) in m.exponents().iter().enumerate() {
                for _ in 0..e {
                    t = t.mul(&args[i]);
                }
            }
            acc = acc.add(&t);
        }
        acc
    }
}

pub(crate) fn rational_to_f64(c: &Rational) -> f64 {
    // Good enough for the magnitudes appearing here; falls back to a string
    // round-trip only for huge numerators.
    num_traits::ToPrimitive::to_f64(c).unwrap_or(f64::NAN)
}

fn monic(p: &Polynomial) -> Polynomial {
    if p.is_zero() {
        return p.clone();
    }
    let lc = p.leading_coefficient();
    p.scale(&lc.recip())
}

/// Clear denominators and the integer content; normalize the leading sign.
fn integer_primitive(p: &Polynomial) -> Polynomial {
    use num_bigint::BigInt;
    use num_integer::Integer;
    let mut denom_lcm = BigInt::from(1);
    for (_, c) in p.terms() {
        denom_lcm = denom_lcm.lcm(c.denom());
    }
    let mut numer_gcd = BigInt::from(0);
    for (_, c) in p.terms() {
        let scaled = c.numer() * (&denom_lcm / c.denom());
        numer_gcd = numer_gcd.gcd(&scaled);
    }
    if numer_gcd.is_zero() {
        return p.clone();
    }
    let factor = Rational::new(denom_lcm, numer_gcd);
    let scaled = p.scale(&factor);
    if scaled.leading_coefficient().is_negative() {
        scaled.neg()
    } else {
        scaled
    }
}

/// gcd of primitive integer polynomials (result primitive, positive leading sign).
fn gcd_zz(a: &Polynomial, b: &Polynomial) -> Polynomial {
    if a == b {
        return a.clone();
    }
    if a.is_constant() || b.is_constant() {
        // Inputs are primitive, so a constant operand forces a trivial gcd.
        return Polynomial::one(a.chart());
    }
    if a.num_terms() == 1 || b.num_terms() == 1 {
        return monomial_gcd(a, b);
    }
    let dim = a.chart().dim();
    // Prefer a variable both operands use, with the shortest expected chain.
    let mut var: Option<usize> = None;
    let mut best = u32::MAX;
    for i in 0..dim {
        let (da, db) = (a.degree_in(i), b.degree_in(i));
        if da > 0 && db > 0 && da.min(db) < best {
            best = da.min(db);
            var = Some(i);
        }
    }
    let var = match var {
        Some(v) => v,
        None => {
            // No shared variable: reduce the operand with a private variable
            // to its content with respect to that variable.
            let v = (0..dim).find(|&i| a.degree_in(i) > 0).expect("nonconstant");
            if b.degree_in(v) == 0 {
                let ua = to_univariate(a, v);
                let ca = content(&ua, a.chart());
                return gcd_zz(&integer_primitive(&ca), b);
            }
            let ub = to_univariate(b, v);
            let cb = content(&ub, b.chart());
            return gcd_zz(a, &integer_primitive(&cb));
        }
    };
    let ua = to_univariate(a, var);
    let ub = to_univariate(b, var);
    let ca = content(&ua, a.chart());
    let cb = content(&ub, b.chart());
    let pa: Vec<Polynomial> = ua
        .iter()
        .map(|c| c.div_exact(&ca).expect("content divides"))
        .collect();
    let pb: Vec<Polynomial> = ub
        .iter()
        .map(|c| c.div_exact(&cb).expect("content divides"))
        .collect();
    let cont_gcd = gcd_zz(&integer_primitive(&ca), &integer_primitive(&cb));
    let prs = subresultant_prs(pa, pb, a.chart());
    let pp_gcd = match uni_degree(&prs) {
        None | Some(0) => Polynomial::one(a.chart()),
        Some(_) => {
            let c = content(&prs, a.chart());
            let parts: Vec<Polynomial> = prs
                .iter()
                .map(|k| k.div_exact(&c).expect("content divides"))
                .collect();
            from_univariate(&parts, var, a.chart())
        }
    };
    integer_primitive(&pp_gcd.mul(&cont_gcd))
}

/// gcd when at least one operand is a single term.
fn monomial_gcd(a: &Polynomial, b: &Polynomial) -> Polynomial {
    let dim = a.chart().dim();
    let mut exps = vec![u32::MAX; dim];
    for p in [a, b] {
        for (m, _) in p.terms() {
            for (i, &e) in m.exponents().iter().enumerate() {
                exps[i] = exps[i].min(e);
            }
        }
    }
    Polynomial::from_terms(
        a.chart(),
        [(
            Monomial::from_exponents(exps),
            Rational::one(),
        )],
    )
}

/// Coefficients of `p` viewed as univariate in `var`, index = degree.
fn to_univariate(p: &Polynomial, var: usize) -> Vec<Polynomial> {
    let deg = p.degree_in(var) as usize;
    let mut coeffs = vec![Polynomial::zero(p.chart()); deg + 1];
    for (m, c) in p.terms() {
        let e = m.degree_in(var) as usize;
        let rest = m.with_exponent(var, 0);
        coeffs[e] = coeffs[e].add(&Polynomial::from_terms(p.chart(), [(rest, c.clone())]));
    }
    coeffs
}

fn from_univariate(coeffs: &[Polynomial], var: usize, chart: &Chart) -> Polynomial {
    let x = Polynomial::coordinate(chart, var).expect("valid index");
    let mut acc = Polynomial::zero(chart);
    let mut xn = Polynomial::one(chart);
    for c in coeffs {
        acc = acc.add(&c.mul(&xn));
        xn = xn.mul(&x);
    }
    acc
}

fn content(coeffs: &[Polynomial], chart: &Chart) -> Polynomial {
    let mut g = Polynomial::zero(chart);
    for c in coeffs {
        g = if g.is_zero() { c.clone() } else if c.is_zero() { g } else { gcd_zz(&integer_primitive(&g), &integer_primitive(c)) };
        if g.is_one() {
            break;
        }
    }
    monic(&g)
}

fn uni_degree(u: &[Polynomial]) -> Option<usize> {
    u.iter().rposition(|c| !c.is_zero())
}

fn uni_trim(mut u: Vec<Polynomial>) -> Vec<Polynomial> {
    while u.last().map(|c| c.is_zero()).unwrap_or(false) {
        u.pop();
    }
    u
}

/// Pseudo-remainder `lc(b)^(deg a - deg b + 1) * a  mod  b` over the
/// coefficient ring, computed without fractions.
fn pseudo_rem(a: &[Polynomial], b: &[Polynomial], chart: &Chart) -> Vec<Polynomial> {
    let db = uni_degree(b).expect("nonzero divisor");
    let da = match uni_degree(a) {
        Some(d) => d,
        None => return Vec::new(),
    };
    let lb = b[db].clone();
    let mut r: Vec<Polynomial> = a.to_vec();
    let mut scale_left = da - db + 1;
    loop {
        let dr = match uni_degree(&r) {
            Some(d) => d,
            None => break,
        };
        if dr < db {
            break;
        }
        let lr = r[dr].clone();
        let mut new_r = vec![Polynomial::zero(chart); dr + 1];
        for (i, c) in r.iter().enumerate() {
            new_r[i] = c.mul(&lb);
        }
        for (i, c) in b.iter().enumerate() {
            let idx = i + dr - db;
            new_r[idx] = new_r[idx].sub(&c.mul(&lr));
        }
        r = uni_trim(new_r);
        scale_left -= 1;
    }
    if !r.is_empty() {
        for _ in 0..scale_left {
            for c in r.iter_mut() {
                *c = c.mul(&lb);
            }
        }
    }
    r
}

/// Subresultant polynomial remainder sequence; returns the last nonzero
/// remainder (the gcd up to content). Known similarity factors are divided
/// out exactly at every step, which keeps coefficient growth polynomial.
fn subresultant_prs(a: Vec<Polynomial>, b: Vec<Polynomial>, chart: &Chart) -> Vec<Polynomial> {
    let (mut f, mut g) = if uni_degree(&a) >= uni_degree(&b) {
        (a, b)
    } else {
        (b, a)
    };
    if uni_degree(&g).is_none() {
        return f;
    }
    let minus_one = Polynomial::constant(chart, -Rational::one());
    let mut psi = minus_one.clone();
    let mut delta = uni_degree(&f).unwrap() - uni_degree(&g).unwrap();
    let mut beta = if delta % 2 == 0 {
        minus_one.clone()
    } else {
        Polynomial::one(chart)
    };
    loop {
        let rem = pseudo_rem(&f, &g, chart);
        if uni_degree(&rem).is_none() {
            return g;
        }
        let rem: Vec<Polynomial> = rem
            .iter()
            .map(|c| c.div_exact(&beta).expect("subresultant factor divides"))
            .collect();
        let lg = g[uni_degree(&g).unwrap()].clone();
        // psi_{i+1} = (-lc g)^delta / psi^(delta-1)
        let neg_lg = lg.neg();
        psi = match delta {
            0 => psi,
            1 => neg_lg.clone(),
            d => neg_lg
                .pow(d as u32)
                .div_exact(&psi.pow(d as u32 - 1))
                .expect("psi recurrence is exact"),
        };
        let new_delta = uni_degree(&g).unwrap() - uni_degree(&rem).unwrap();
        beta = neg_lg.mul(&psi.pow(new_delta as u32));
        delta = new_delta;
        f = g;
        g = rem;
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        // Descending graded-lex for stable, conventional output.
        for (m, c) in self.terms.iter().rev() {
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
                first = false;
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mut factors: Vec<String> = Vec::new();
            if !mag.is_one() || m.is_constant() {
                factors.push(format_rational(&mag));
            }
            for (i, &e) in m.exponents().iter().enumerate() {
                if e == 1 {
                    factors.push(self.chart.coord_name(i).to_string());
                } else if e > 1 {
                    factors.push(format!("{}^{}", self.chart.coord_name(i), e));
                }
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

pub(crate) fn format_rational(c: &Rational) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}
