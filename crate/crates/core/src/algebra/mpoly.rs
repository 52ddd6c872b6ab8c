//! Sparse multivariate polynomials over K with a small Buchberger
//! implementation, used to decide whether plane curves are smooth.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use super::field::{BaseField, FieldElem};

/// Exponent vector ordered by graded reverse lexicographic order.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Mono(pub Vec<u32>);

impl Mono {
    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    fn divides(&self, o: &Mono) -> bool {
        self.0.iter().zip(&o.0).all(|(a, b)| a <= b)
    }

    fn lcm(&self, o: &Mono) -> Mono {
        Mono(self.0.iter().zip(&o.0).map(|(a, b)| *a.max(b)).collect())
    }

    fn div(&self, o: &Mono) -> Mono {
        Mono(self.0.iter().zip(&o.0).map(|(a, b)| a - b).collect())
    }

    fn mul(&self, o: &Mono) -> Mono {
        Mono(self.0.iter().zip(&o.0).map(|(a, b)| a + b).collect())
    }

    fn coprime(&self, o: &Mono) -> bool {
        self.0.iter().zip(&o.0).all(|(a, b)| *a == 0 || *b == 0)
    }
}

impl PartialOrd for Mono {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

impl Ord for Mono {
    fn cmp(&self, o: &Self) -> Ordering {
        self.degree().cmp(&o.degree()).then_with(|| {
            for (a, b) in self.0.iter().zip(&o.0).rev() {
                match a.cmp(b) {
                    Ordering::Equal => continue,
                    other => return other.reverse(),
                }
            }
            Ordering::Equal
        })
    }
}

#[derive(Clone, PartialEq, Eq)]
pub struct MPoly {
    field: BaseField,
    nvars: usize,
    terms: BTreeMap<Mono, FieldElem>,
}

impl MPoly {
    pub fn zero(field: BaseField, nvars: usize) -> Self {
        MPoly {
            field,
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn term(c: FieldElem, exps: &[u32]) -> Self {
        let mut p = MPoly::zero(c.field(), exps.len());
        p.add_term(Mono(exps.to_vec()), c);
        p
    }

    pub fn var(field: BaseField, nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        MPoly::term(field.one(), &e)
    }

    pub fn constant(c: FieldElem, nvars: usize) -> Self {
        MPoly::term(c, &vec![0; nvars])
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Mono, &FieldElem)> {
        self.terms.iter()
    }

    pub fn add_term(&mut self, m: Mono, c: FieldElem) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(m.clone()).or_insert_with(|| c.zero_like());
        *e = &*e + &c;
        if e.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.degree()).max()
    }

    fn lead(&self) -> Option<(&Mono, &FieldElem)> {
        self.terms.iter().next_back()
    }

    pub fn add(&self, o: &MPoly) -> MPoly {
        let mut r = self.clone();
        for (m, c) in &o.terms {
            r.add_term(m.clone(), c.clone());
        }
        r
    }

    pub fn sub(&self, o: &MPoly) -> MPoly {
        self.add(&o.scale(&-self.field.one()))
    }

    pub fn scale(&self, k: &FieldElem) -> MPoly {
        let mut r = MPoly::zero(self.field, self.nvars);
        for (m, c) in &self.terms {
            r.add_term(m.clone(), c * k);
        }
        r
    }

    fn mul_term(&self, m: &Mono, k: &FieldElem) -> MPoly {
        let mut r = MPoly::zero(self.field, self.nvars);
        for (mm, c) in &self.terms {
            r.add_term(mm.mul(m), c * k);
        }
        r
    }

    pub fn mul(&self, o: &MPoly) -> MPoly {
        let mut r = MPoly::zero(self.field, self.nvars);
        for (m, c) in &o.terms {
            r = r.add(&self.mul_term(m, c));
        }
        r
    }

    pub fn pow(&self, e: u32) -> MPoly {
        let mut acc = MPoly::constant(self.field.one(), self.nvars);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn derivative(&self, i: usize) -> MPoly {
        let mut r = MPoly::zero(self.field, self.nvars);
        for (m, c) in &self.terms {
            if m.0[i] == 0 {
                continue;
            }
            let mut e = m.0.clone();
            e[i] -= 1;
            r.add_term(Mono(e), c * &self.field.from_i64(m.0[i] as i64));
        }
        r
    }

    /// Adds a variable in position `nvars` making every term of degree `d`.
    pub fn homogenize(&self, d: u32) -> MPoly {
        let mut r = MPoly::zero(self.field, self.nvars + 1);
        for (m, c) in &self.terms {
            let mut e = m.0.clone();
            e.push(d - m.degree());
            r.add_term(Mono(e), c.clone());
        }
        r
    }

    /// Sets variable `i` to 1 and drops it.
    pub fn dehomogenize(&self, i: usize) -> MPoly {
        let mut r = MPoly::zero(self.field, self.nvars - 1);
        for (m, c) in &self.terms {
            let mut e = m.0.clone();
            e.remove(i);
            r.add_term(Mono(e), c.clone());
        }
        r
    }

    pub fn eval(&self, pt: &[FieldElem]) -> FieldElem {
        let mut acc = self.field.zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (x, &e) in pt.iter().zip(&m.0) {
                t = &t * &x.pow(e as u64);
            }
            acc = &acc + &t;
        }
        acc
    }

    fn monic(&self) -> MPoly {
        match self.lead() {
            Some((_, c)) => self.scale(&c.inv().unwrap()),
            None => self.clone(),
        }
    }

    /// Full reduction modulo `basis`.
    fn reduce(&self, basis: &[MPoly]) -> MPoly {
        let mut p = self.clone();
        let mut r = MPoly::zero(self.field, self.nvars);
        while let Some((m, c)) = p.lead().map(|(m, c)| (m.clone(), c.clone())) {
            let div = basis
                .iter()
                .find(|g| g.lead().is_some_and(|(lm, _)| lm.divides(&m)));
            match div {
                Some(g) => {
                    let (lm, lc) = g.lead().unwrap();
                    let q = m.div(lm);
                    let k = &c / lc;
                    p = p.sub(&g.mul_term(&q, &k));
                }
                None => {
                    r.add_term(m.clone(), c);
                    p.terms.remove(&m);
                }
            }
        }
        r
    }

    fn spoly(&self, o: &MPoly) -> MPoly {
        let (a, ac) = self.lead().unwrap();
        let (b, bc) = o.lead().unwrap();
        let l = a.lcm(b);
        let one = self.field.one();
        self.mul_term(&l.div(a), &(&one / ac))
            .sub(&o.mul_term(&l.div(b), &(&one / bc)))
    }
}

/// Reduced Gröbner basis (grevlex) of the ideal generated by `gens`.
pub fn groebner(gens: &[MPoly]) -> Vec<MPoly> {
    let mut g: Vec<MPoly> = gens
        .iter()
        .filter(|p| !p.is_zero())
        .map(|p| p.monic())
        .collect();
    let mut pairs: Vec<(usize, usize)> = Vec::new();
    for j in 0..g.len() {
        for i in 0..j {
            pairs.push((i, j));
        }
    }
    while let Some((i, j)) = pairs.pop() {
        let (li, _) = g[i].lead().unwrap();
        let (lj, _) = g[j].lead().unwrap();
        if li.coprime(lj) {
            continue;
        }
        let s = g[i].spoly(&g[j]).reduce(&g);
        if s.is_zero() {
            continue;
        }
        let s = s.monic();
        if s.total_degree() == Some(0) {
            return vec![s];
        }
        let k = g.len();
        g.push(s);
        for i in 0..k {
            pairs.push((i, k));
        }
    }
    // minimalize and reduce
    let mut min: Vec<MPoly> = Vec::new();
    for (i, p) in g.iter().enumerate() {
        let lm = p.lead().unwrap().0;
        let redundant = g.iter().enumerate().any(|(j, q)| {
            let lq = q.lead().unwrap().0;
            j != i && lq.divides(lm) && (lq != lm || j < i)
        });
        if !redundant {
            min.push(p.clone());
        }
    }
    let mut out = Vec::new();
    for i in 0..min.len() {
        let others: Vec<MPoly> = min
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != i)
            .map(|(_, p)| p.clone())
            .collect();
        let lead = min[i].lead().map(|(m, c)| (m.clone(), c.clone())).unwrap();
        let mut tail = min[i].clone();
        tail.terms.remove(&lead.0);
        let mut r = tail.reduce(&others);
        r.add_term(lead.0, lead.1);
        out.push(r.monic());
    }
    out.sort_by(|a, b| a.lead().unwrap().0.cmp(b.lead().unwrap().0));
    out
}

/// Whether `gens` generate the unit ideal.
pub fn is_unit_ideal(gens: &[MPoly]) -> bool {
    groebner(gens).iter().any(|p| p.total_degree() == Some(0))
}

/// Whether the projective closure of the affine curve `f(X, Y) = 0` of
/// degree `deg` is smooth over the algebraic closure: `F, F_X, F_Y, F_Z`
/// must have no common zero on any of the three standard charts.
pub fn is_smooth_plane_curve(f: &MPoly, deg: u32) -> bool {
    let h = f.homogenize(deg);
    let gens: Vec<MPoly> = vec![h.clone(), h.derivative(0), h.derivative(1), h.derivative(2)];
    (0..3).all(|i| {
        let g: Vec<MPoly> = gens.iter().map(|p| p.dehomogenize(i)).collect();
        is_unit_ideal(&g)
    })
}

impl fmt::Display for MPoly {
    /// Terms by decreasing monomial order, variables named `x, y, z, w`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let names = ["x", "y", "z", "w"];
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            let vars: Vec<String> =
                m.0.iter()
                    .enumerate()
                    .filter(|(_, &e)| e > 0)
                    .map(|(i, &e)| {
                        let v = names.get(i).copied().unwrap_or("v");
                        if e == 1 {
                            v.to_string()
                        } else {
                            format!("{v}^{e}")
                        }
                    })
                    .collect();
            let mut coef = c.to_string();
            let neg = coef.starts_with('-');
            if neg {
                coef.remove(0);
            }
            match (k, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if vars.is_empty() {
                write!(f, "{coef}")?;
            } else {
                if coef != "1" {
                    if coef.contains('/') {
                        write!(f, "({coef})*")?
                    } else {
                        write!(f, "{coef}*")?
                    }
                }
                write!(f, "{}", vars.join("*"))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
