//! Polynomial rings modulo triangular monic relations.
//!
//! Every relation has the form `x_i^k = r` where `r` has `x_i`-degree below
//! `k` and only involves generators `x_j` with `j <= i`. Rewriting with such
//! rules terminates and gives unique normal forms, so no Gröbner machinery is
//! needed. All generators sit in degree one and monomials above the ring's
//! dimension vanish.

use std::collections::BTreeMap;
use std::fmt;

use crate::bundles::GradedRing;
use crate::error::{domain, Error, Result};
use crate::param::ParamPoly;

/// Element of a [`QuotientRing`]; exponent vectors index the generators.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct QElem {
    terms: BTreeMap<Vec<u32>, ParamPoly>,
}

impl QElem {
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &ParamPoly)> {
        self.terms.iter()
    }

    fn add_term(&mut self, m: Vec<u32>, c: ParamPoly) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(m.clone()).or_default();
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn map_coeffs(&self, f: impl Fn(&ParamPoly) -> ParamPoly) -> Self {
        let mut out = Self::default();
        for (m, c) in &self.terms {
            out.add_term(m.clone(), f(c));
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq)]
struct Rule {
    power: u32,
    rhs: QElem,
}

#[derive(Debug, Clone, PartialEq)]
pub struct QuotientRing {
    names: Vec<String>,
    rules: Vec<Option<Rule>>,
    dim: usize,
}

impl QuotientRing {
    /// Free polynomial ring on the named generators, truncated above `dim`.
    pub fn new(names: &[&str], dim: usize) -> Self {
        Self {
            names: names.iter().map(|s| s.to_string()).collect(),
            rules: vec![None; names.len()],
            dim,
        }
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn rename(&mut self, i: usize, name: &str) {
        self.names[i] = name.to_string();
    }

    pub fn ngens(&self) -> usize {
        self.names.len()
    }

    pub fn index_of(&self, name: &str) -> Result<usize> {
        self.names
            .iter()
            .position(|n| n == name)
            .ok_or_else(|| Error::Parse(format!("unknown generator {name}")))
    }

    /// Adds `gen^power = rhs`.
    pub fn with_rule(mut self, gen: usize, power: u32, rhs: QElem) -> Result<Self> {
        if gen >= self.ngens() || power == 0 {
            return Err(domain(format!("bad rule for generator {gen} with power {power}")));
        }
        for m in rhs.terms.keys() {
            if m.len() != self.ngens() || m[gen] >= power || m[gen + 1..].iter().any(|&e| e > 0) {
                return Err(domain(format!(
                    "rule for {} is not triangular: right side contains {}",
                    self.names[gen],
                    self.monomial_name(m)
                )));
            }
        }
        self.rules[gen] = Some(Rule { power, rhs });
        Ok(self)
    }

    /// Appends a free generator and sets a new total dimension; its relation
    /// is added afterwards with [`QuotientRing::with_rule`].
    pub fn extend(&self, name: &str, dim: usize) -> Self {
        let mut names = self.names.clone();
        names.push(name.to_string());
        let mut rules: Vec<Option<Rule>> = self
            .rules
            .iter()
            .map(|r| {
                r.as_ref().map(|r| Rule {
                    power: r.power,
                    rhs: pad(&r.rhs, 1),
                })
            })
            .collect();
        rules.push(None);
        Self { names, rules, dim }
    }

    /// Image of an element of a ring this one was extended from.
    pub fn embed(&self, x: &QElem) -> QElem {
        let extra = self.ngens() - x.terms.keys().next().map_or(self.ngens(), Vec::len);
        pad(x, extra)
    }

    pub fn gen(&self, i: usize) -> QElem {
        let mut m = vec![0; self.ngens()];
        m[i] = 1;
        self.monomial(&m, ParamPoly::one())
    }

    pub fn named(&self, name: &str) -> Result<QElem> {
        Ok(self.gen(self.index_of(name)?))
    }

    pub fn monomial(&self, exps: &[u32], c: ParamPoly) -> QElem {
        let mut x = QElem::default();
        x.add_term(exps.to_vec(), c);
        self.normal_form(&x)
    }

    pub fn constant(&self, c: ParamPoly) -> QElem {
        self.monomial(&vec![0; self.ngens()], c)
    }

    /// Coefficient of a normal-form monomial.
    pub fn coeff(&self, x: &QElem, exps: &[u32]) -> ParamPoly {
        x.terms.get(exps).cloned().unwrap_or_default()
    }

    pub fn normal_form(&self, x: &QElem) -> QElem {
        let mut out = QElem::default();
        let mut work: Vec<(Vec<u32>, ParamPoly)> =
            x.terms.iter().map(|(m, c)| (m.clone(), c.clone())).collect();
        while let Some((m, c)) = work.pop() {
            if m.iter().sum::<u32>() as usize > self.dim {
                continue;
            }
            let hit = (0..self.ngens()).rev().find_map(|i| {
                self.rules[i]
                    .as_ref()
                    .filter(|r| m[i] >= r.power)
                    .map(|r| (i, r))
            });
            match hit {
                None => out.add_term(m, c),
                Some((i, rule)) => {
                    let mut base = m.clone();
                    base[i] -= rule.power;
                    for (r, rc) in &rule.rhs.terms {
                        let next: Vec<u32> = base.iter().zip(r).map(|(a, b)| a + b).collect();
                        work.push((next, &c * rc));
                    }
                }
            }
        }
        out
    }

    /// Ring map sending generator `i` of `self` to `images[i]` in `target`.
    pub fn map_to(&self, x: &QElem, images: &[QElem], target: &QuotientRing) -> Result<QElem> {
        if images.len() != self.ngens() {
            return Err(domain("ring map needs one image per generator"));
        }
        let mut out = target.zero();
        for (m, c) in &x.terms {
            let mut term = target.constant(c.clone());
            for (i, &e) in m.iter().enumerate() {
                term = target.mul(&term, &target.pow(&images[i], e as usize));
            }
            out = target.add(&out, &term);
        }
        Ok(out)
    }

    fn monomial_name(&self, m: &[u32]) -> String {
        let mut s = String::new();
        for (name, &e) in self.names.iter().zip(m) {
            match e {
                0 => {}
                1 => s.push_str(name),
                _ => s.push_str(&format!("{name}^{e}")),
            }
        }
        s
    }

    /// Human-readable form, highest total degree first.
    pub fn display(&self, x: &QElem) -> String {
        struct Shown<'a>(&'a QuotientRing, &'a QElem);
        impl fmt::Display for Shown<'_> {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                let (ring, x) = (self.0, self.1);
                if x.is_zero() {
                    return write!(f, "0");
                }
                let mut keys: Vec<&Vec<u32>> = x.terms.keys().collect();
                keys.sort_by(|a, b| {
                    let da: u32 = a.iter().sum();
                    let db: u32 = b.iter().sum();
                    db.cmp(&da).then(b.cmp(a))
                });
                for (i, m) in keys.into_iter().enumerate() {
                    crate::schubert::write_term(f, &x.terms[m], &ring.monomial_name(m), i == 0)?;
                }
                Ok(())
            }
        }
        Shown(self, x).to_string()
    }
}

fn pad(x: &QElem, extra: usize) -> QElem {
    let mut out = QElem::default();
    for (m, c) in &x.terms {
        let mut m = m.clone();
        m.extend(std::iter::repeat(0).take(extra));
        out.add_term(m, c.clone());
    }
    out
}

impl GradedRing for QuotientRing {
    type Elem = QElem;

    fn dim(&self) -> usize {
        self.dim
    }
    fn zero(&self) -> QElem {
        QElem::default()
    }
    fn one(&self) -> QElem {
        self.constant(ParamPoly::one())
    }
    fn add(&self, a: &QElem, b: &QElem) -> QElem {
        let mut out = a.clone();
        for (m, c) in &b.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
    fn mul(&self, a: &QElem, b: &QElem) -> QElem {
        let mut raw = QElem::default();
        for (m1, c1) in &a.terms {
            for (m2, c2) in &b.terms {
                let m: Vec<u32> = m1.iter().zip(m2).map(|(x, y)| x + y).collect();
                raw.add_term(m, c1 * c2);
            }
        }
        self.normal_form(&raw)
    }
    fn scale(&self, a: &QElem, c: &ParamPoly) -> QElem {
        a.map_coeffs(|v| v * c)
    }
    fn is_zero(&self, a: &QElem) -> bool {
        a.is_zero()
    }
}
