//! Buchberger's algorithm with a reduction-step budget, and implicitization
//! by block elimination.

use std::cmp::Ordering;
use std::collections::BTreeMap;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::poly::{Monomial, MonomialOrder, MultiPoly};
use crate::rational::Q;

pub const DEFAULT_BUDGET: u64 = 100_000;
pub const DEFAULT_VAR_CAP: usize = 12;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GroebnerConfig {
    /// Maximum number of elementary reduction steps.
    pub budget: u64,
    /// Maximum number of variables accepted.
    pub var_cap: usize,
}

impl Default for GroebnerConfig {
    fn default() -> Self {
        GroebnerConfig { budget: DEFAULT_BUDGET, var_cap: DEFAULT_VAR_CAP }
    }
}

#[derive(Clone, Debug)]
pub struct GroebnerBasis {
    pub order: MonomialOrder,
    /// Reduced basis, primitive integer coefficients, sorted by decreasing
    /// leading monomial.
    pub polys: Vec<MultiPoly>,
    /// Reduction steps spent.
    pub steps: u64,
}

#[derive(Clone)]
struct Key {
    m: Monomial,
    order: MonomialOrder,
}

impl PartialEq for Key {
    fn eq(&self, other: &Self) -> bool {
        self.m == other.m
    }
}
impl Eq for Key {}
impl PartialOrd for Key {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Key {
    fn cmp(&self, other: &Self) -> Ordering {
        self.order.cmp(&self.m, &other.m)
    }
}

/// Working polynomial: terms sorted by the active order, leading term last.
struct Work {
    terms: BTreeMap<Key, Q>,
    order: MonomialOrder,
}

impl Work {
    fn from_poly(p: &MultiPoly, order: MonomialOrder) -> Self {
        let terms = p
            .terms()
            .map(|(m, c)| (Key { m: m.clone(), order }, c.clone()))
            .collect();
        Work { terms, order }
    }

    fn add_scaled(&mut self, g: &[(Monomial, Q)], shift: &Monomial, c: &Q) {
        for (m, x) in g {
            let key = Key { m: m.mul(shift), order: self.order };
            let v = x * c;
            match self.terms.entry(key) {
                std::collections::btree_map::Entry::Vacant(e) => {
                    e.insert(v);
                }
                std::collections::btree_map::Entry::Occupied(mut e) => {
                    *e.get_mut() += v;
                    if e.get().is_zero() {
                        e.remove();
                    }
                }
            }
        }
    }
}

struct Reducer {
    order: MonomialOrder,
    /// Basis elements as sorted term lists, leading term first.
    basis: Vec<Vec<(Monomial, Q)>>,
    steps: u64,
    budget: u64,
}

impl Reducer {
    fn step(&mut self) -> Result<()> {
        self.steps += 1;
        if self.steps > self.budget {
            return Err(Error::Diverged { budget: self.budget });
        }
        Ok(())
    }

    /// Full normal form of `p` with respect to basis elements in `active`.
    fn reduce(&mut self, p: &MultiPoly, active: &[usize]) -> Result<MultiPoly> {
        let mut work = Work::from_poly(p, self.order);
        let mut remainder = MultiPoly::zero();
        while let Some((key, c)) = work.terms.pop_last() {
            let divisor = active
                .iter()
                .copied()
                .find(|&i| self.basis[i][0].0.divides(&key.m));
            match divisor {
                Some(i) => {
                    self.step()?;
                    let g = &self.basis[i];
                    let shift = g[0].0.quotient_of(&key.m);
                    let factor = -(&c / &g[0].1);
                    work.add_scaled(&g[1..], &shift, &factor);
                }
                None => remainder.add_term(key.m, c),
            }
        }
        Ok(remainder)
    }
}

fn sorted(p: &MultiPoly, order: MonomialOrder) -> Vec<(Monomial, Q)> {
    p.sorted_terms(order)
}

fn s_polynomial(f: &[(Monomial, Q)], g: &[(Monomial, Q)]) -> MultiPoly {
    let lcm = f[0].0.lcm(&g[0].0);
    let a = MultiPoly::from_terms(f.iter().cloned()).mul_term(&f[0].0.quotient_of(&lcm), &f[0].1.recip());
    let b = MultiPoly::from_terms(g.iter().cloned()).mul_term(&g[0].0.quotient_of(&lcm), &g[0].1.recip());
    &a - &b
}

/// Reduced Gröbner basis of the ideal generated by `gens`.
pub fn buchberger(gens: &[MultiPoly], order: MonomialOrder, config: GroebnerConfig) -> Result<GroebnerBasis> {
    let nvars = gens.iter().map(MultiPoly::support_len).max().unwrap_or(0);
    if nvars > config.var_cap {
        return Err(Error::TooManyVariables { nvars, cap: config.var_cap });
    }
    let mut red = Reducer { order, basis: Vec::new(), steps: 0, budget: config.budget };
    let mut alive: Vec<usize> = Vec::new();
    let mut pairs: Vec<(usize, usize)> = Vec::new();

    let add = |red: &mut Reducer, alive: &mut Vec<usize>, pairs: &mut Vec<(usize, usize)>, p: MultiPoly| {
        let p = p.primitive(order);
        let idx = red.basis.len();
        red.basis.push(sorted(&p, order));
        for &j in alive.iter() {
            pairs.push((j, idx));
        }
        alive.push(idx);
    };

    for g in gens {
        let r = red.reduce(g, &alive)?;
        if !r.is_zero() {
            add(&mut red, &mut alive, &mut pairs, r);
        }
    }

    while !pairs.is_empty() {
        // pick the pair with the smallest lcm
        let (pos, _) = pairs
            .iter()
            .enumerate()
            .min_by(|(_, a), (_, b)| {
                let la = red.basis[a.0][0].0.lcm(&red.basis[a.1][0].0);
                let lb = red.basis[b.0][0].0.lcm(&red.basis[b.1][0].0);
                order.cmp(&la, &lb)
            })
            .expect("nonempty");
        let (i, j) = pairs.swap_remove(pos);
        let (li, lj) = (&red.basis[i][0].0, &red.basis[j][0].0);
        if li.is_coprime(lj) {
            continue;
        }
        let lcm = li.lcm(lj);
        let pending = |a: usize, b: usize| pairs.iter().any(|&(x, y)| (x, y) == (a.min(b), a.max(b)));
        let chain = alive.iter().any(|&k| {
            k != i && k != j && red.basis[k][0].0.divides(&lcm) && !pending(i, k) && !pending(j, k)
        });
        if chain {
            continue;
        }
        let s = s_polynomial(&red.basis[i], &red.basis[j]);
        let r = red.reduce(&s, &alive)?;
        if !r.is_zero() {
            add(&mut red, &mut alive, &mut pairs, r);
        }
    }

    // minimize
    let mut minimal: Vec<usize> = Vec::new();
    for &i in &alive {
        let lm = &red.basis[i][0].0;
        let redundant = alive.iter().any(|&k| {
            k != i && {
                let lk = &red.basis[k][0].0;
                lk.divides(lm) && (lk != lm || k < i)
            }
        });
        if !redundant {
            minimal.push(i);
        }
    }
    // inter-reduce
    let mut polys = Vec::with_capacity(minimal.len());
    for &i in &minimal {
        let others: Vec<usize> = minimal.iter().copied().filter(|&k| k != i).collect();
        let p = MultiPoly::from_terms(red.basis[i].iter().cloned());
        let lead = MultiPoly::term(red.basis[i][0].0.clone(), red.basis[i][0].1.clone());
        let tail = red.reduce(&(&p - &lead), &others)?;
        polys.push((&lead + &tail).primitive(order));
    }
    polys.sort_by(|a, b| {
        let la = a.leading_term(order).map(|t| t.0.clone()).unwrap_or_default();
        let lb = b.leading_term(order).map(|t| t.0.clone()).unwrap_or_default();
        order.cmp(&lb, &la)
    });
    Ok(GroebnerBasis { order, polys, steps: red.steps })
}

impl GroebnerBasis {
    pub fn normal_form(&self, p: &MultiPoly) -> MultiPoly {
        let mut red = Reducer {
            order: self.order,
            basis: self.polys.iter().map(|g| sorted(g, self.order)).collect(),
            steps: 0,
            budget: u64::MAX,
        };
        let all: Vec<usize> = (0..self.polys.len()).collect();
        red.reduce(p, &all).expect("unbounded budget")
    }

    pub fn contains(&self, p: &MultiPoly) -> bool {
        self.normal_form(p).is_zero()
    }

    /// Buchberger's criterion: every S-polynomial has zero normal form.
    pub fn satisfies_criterion(&self) -> bool {
        let lists: Vec<Vec<(Monomial, Q)>> = self.polys.iter().map(|g| sorted(g, self.order)).collect();
        (0..lists.len()).all(|i| (i + 1..lists.len()).all(|j| self.contains(&s_polynomial(&lists[i], &lists[j]))))
    }

    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.polys
            .iter()
            .filter_map(|g| g.leading_term(self.order).map(|t| t.0.clone()))
            .collect()
    }
}

/// All monomials of total degree exactly `degree` in variables `0..nvars`.
pub fn monomials_of_degree(nvars: usize, degree: u32) -> Vec<Monomial> {
    fn rec(nvars: usize, i: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if i + 1 == nvars {
            cur[i] = left;
            out.push(Monomial::new(cur.clone()));
            cur[i] = 0;
            return;
        }
        for e in (0..=left).rev() {
            cur[i] = e;
            rec(nvars, i + 1, left - e, cur, out);
        }
        cur[i] = 0;
    }
    if nvars == 0 {
        return if degree == 0 { vec![Monomial::one()] } else { Vec::new() };
    }
    let mut out = Vec::new();
    rec(nvars, 0, degree, &mut vec![0; nvars], &mut out);
    out
}

/// Number of monomials of degree `degree` (in `nvars` variables) lying in
/// the monomial ideal generated by `leading`. For a graded order this is the
/// dimension of the degree-`degree` part of a homogeneous ideal.
pub fn leading_ideal_count(leading: &[Monomial], nvars: usize, degree: u32) -> usize {
    monomials_of_degree(nvars, degree)
        .iter()
        .filter(|m| leading.iter().any(|l| l.divides(m)))
        .count()
}

#[derive(Clone, Debug)]
pub struct Implicitization {
    pub targets: Vec<String>,
    /// Relations among the targets, with target `i` as variable `i`.
    pub relations: Vec<MultiPoly>,
    pub steps: u64,
}

/// Relations among the coordinate polynomials `param` (in variables
/// `0..source_vars`), computed by eliminating the source variables from
/// `y_i - f_i`.
pub fn implicitize(source_vars: usize, param: &[(String, MultiPoly)], config: GroebnerConfig) -> Result<Implicitization> {
    if let Some((name, _)) = param.iter().find(|(_, f)| f.support_len() > source_vars) {
        return Err(crate::error::invalid(format!("coordinate {name} uses more than {source_vars} source variables")));
    }
    let gens: Vec<MultiPoly> = param
        .iter()
        .enumerate()
        .map(|(i, (_, f))| &MultiPoly::var(source_vars + i) - f)
        .collect();
    let order = MonomialOrder::Elimination { block: source_vars };
    let basis = buchberger(&gens, order, config)?;
    let relations = basis
        .polys
        .iter()
        .filter(|g| !g.involves_block(source_vars))
        .map(|g| g.rename(|i| i - source_vars).primitive(MonomialOrder::Grevlex))
        .collect();
    Ok(Implicitization {
        targets: param.iter().map(|(n, _)| n.clone()).collect(),
        relations,
        steps: basis.steps,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;

    fn x(i: usize) -> MultiPoly {
        MultiPoly::var(i)
    }

    #[test]
    fn single_variable() {
        let gb = buchberger(&[x(0)], MonomialOrder::Grevlex, GroebnerConfig::default()).unwrap();
        assert_eq!(gb.polys, vec![x(0)]);
    }

    #[test]
    fn monomial_ideal() {
        let gens = [&x(0) * &x(0), &x(0) * &x(1)];
        let gb = buchberger(&gens, MonomialOrder::Grevlex, GroebnerConfig::default()).unwrap();
        let lms = gb.leading_monomials();
        assert_eq!(lms, vec![Monomial::new(vec![2]), Monomial::new(vec![1, 1])]);
        assert!(gb.satisfies_criterion());
    }

    #[test]
    fn toy_closure() {
        let gens = [&(&x(0) * &x(0)) - &x(1), &(&x(1) * &x(1)) - &x(0)];
        let gb = buchberger(&gens, MonomialOrder::Grevlex, GroebnerConfig::default()).unwrap();
        assert!(gb.satisfies_criterion());
        for g in &gens {
            assert!(gb.contains(g));
        }
    }

    #[test]
    fn twisted_line() {
        let param = vec![("a".to_string(), x(0)), ("b".to_string(), &x(0) * &x(0))];
        let imp = implicitize(1, &param, GroebnerConfig::default()).unwrap();
        // b - a^2 in target variables (a = 0, b = 1), up to sign
        let expected = &x(1) - &(&x(0) * &x(0));
        assert_eq!(imp.relations.len(), 1);
        let r = &imp.relations[0];
        assert!(*r == expected || *r == -expected.clone());
    }

    #[test]
    fn budget_and_cap() {
        // leading monomials x0^2 and x0*x1 share x0, so at least one S-polynomial is reduced
        let gens = [&(&x(0) * &x(0)) - &x(1), &(&x(0) * &x(1)) - &MultiPoly::one()];
        let zero = GroebnerConfig { budget: 0, ..Default::default() };
        assert!(matches!(buchberger(&gens, MonomialOrder::Grevlex, zero), Err(Error::Diverged { budget: 0 })));
        let capped = GroebnerConfig { var_cap: 1, ..Default::default() };
        assert!(matches!(
            buchberger(&gens, MonomialOrder::Grevlex, capped),
            Err(Error::TooManyVariables { nvars: 2, cap: 1 })
        ));
    }

    #[test]
    fn degree_monomials() {
        assert_eq!(monomials_of_degree(3, 2).len(), 6);
        assert_eq!(monomials_of_degree(1, 4), vec![Monomial::new(vec![4])]);
        assert_eq!(leading_ideal_count(&[Monomial::var(0)], 2, 2), 2);
    }
}
