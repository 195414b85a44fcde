//! Buchberger's algorithm in graded reverse lexicographic order, with a cap
//! on the number of S-pair reductions.

use std::cmp::Ordering;

use crate::multipoly::{Monomial, MultiPoly};
use crate::scalar::Field;
use crate::ArithError;

pub fn grevlex(a: &[u32], b: &[u32]) -> Ordering {
    let da: u32 = a.iter().sum();
    let db: u32 = b.iter().sum();
    da.cmp(&db).then_with(|| {
        for (x, y) in a.iter().zip(b).rev() {
            if x != y {
                return y.cmp(x);
            }
        }
        Ordering::Equal
    })
}

fn leading<F: Field>(p: &MultiPoly<F>) -> Option<(Monomial, F)> {
    p.terms()
        .max_by(|a, b| grevlex(a.0, b.0))
        .map(|(e, c)| (e.clone(), c.clone()))
}

fn divides(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

fn lcm(a: &[u32], b: &[u32]) -> Monomial {
    a.iter().zip(b).map(|(x, y)| *x.max(y)).collect()
}

fn monic<F: Field>(p: &MultiPoly<F>) -> MultiPoly<F> {
    match leading(p) {
        Some((_, c)) => p.scale(&c.inverse().expect("nonzero leading coefficient")),
        None => p.clone(),
    }
}

/// Full reduction of `p` modulo `basis`.
fn reduce<F: Field>(p: &MultiPoly<F>, basis: &[MultiPoly<F>]) -> MultiPoly<F> {
    let n = p.nvars();
    let leads: Vec<(Monomial, F)> = basis.iter().map(|g| leading(g).expect("nonzero")).collect();
    let mut rem = MultiPoly::zero(n);
    let mut rest = p.clone();
    while let Some((e, c)) = leading(&rest) {
        match leads.iter().position(|(le, _)| divides(le, &e)) {
            Some(i) => {
                let (le, lc) = &leads[i];
                let shift: Monomial = e.iter().zip(le).map(|(a, b)| a - b).collect();
                let factor = MultiPoly::monomial(c / lc.clone(), shift);
                rest = &rest - &(&factor * &basis[i]);
            }
            None => {
                let t = MultiPoly::monomial(c, e);
                rest = &rest - &t;
                rem = &rem + &t;
            }
        }
    }
    rem
}

fn s_poly<F: Field>(f: &MultiPoly<F>, g: &MultiPoly<F>) -> MultiPoly<F> {
    let (ef, cf) = leading(f).expect("nonzero");
    let (eg, cg) = leading(g).expect("nonzero");
    let l = lcm(&ef, &eg);
    let mf: Monomial = l.iter().zip(&ef).map(|(a, b)| a - b).collect();
    let mg: Monomial = l.iter().zip(&eg).map(|(a, b)| a - b).collect();
    let a = &MultiPoly::monomial(cf.inverse().expect("nonzero"), mf) * f;
    let b = &MultiPoly::monomial(cg.inverse().expect("nonzero"), mg) * g;
    &a - &b
}

/// Reduced Groebner basis of the ideal generated by `gens`.
///
/// Fails with `SearchBoundExceeded` after `max_reductions` S-polynomial reductions.
pub fn groebner_basis<F: Field>(
    gens: &[MultiPoly<F>],
    max_reductions: usize,
) -> Result<Vec<MultiPoly<F>>, ArithError> {
    let mut basis: Vec<MultiPoly<F>> = gens.iter().filter(|g| !g.is_zero()).map(monic).collect();
    let mut pairs: Vec<(usize, usize)> = Vec::new();
    for j in 0..basis.len() {
        for i in 0..j {
            pairs.push((i, j));
        }
    }
    let mut steps = 0;
    while let Some((i, j)) = pairs.pop() {
        let (ei, _) = leading(&basis[i]).expect("nonzero");
        let (ej, _) = leading(&basis[j]).expect("nonzero");
        // coprime leading monomials: the S-polynomial reduces to zero
        if ei.iter().zip(&ej).all(|(a, b)| *a == 0 || *b == 0) {
            continue;
        }
        steps += 1;
        if steps > max_reductions {
            return Err(ArithError::SearchBoundExceeded(format!(
                "Groebner basis needs more than {max_reductions} S-pair reductions"
            )));
        }
        let r = reduce(&s_poly(&basis[i], &basis[j]), &basis);
        if r.is_zero() {
            continue;
        }
        let r = monic(&r);
        let is_unit = leading(&r).is_some_and(|(e, _)| e.iter().all(|&k| k == 0));
        basis.push(r);
        if is_unit {
            return Ok(vec![basis.pop().expect("just pushed")]);
        }
        let k = basis.len() - 1;
        for i in 0..k {
            pairs.push((i, k));
        }
    }
    Ok(interreduce(basis))
}

fn interreduce<F: Field>(basis: Vec<MultiPoly<F>>) -> Vec<MultiPoly<F>> {
    // drop elements whose leading monomial is divisible by another one
    let leads: Vec<Monomial> = basis
        .iter()
        .map(|g| leading(g).expect("nonzero").0)
        .collect();
    let mut keep: Vec<MultiPoly<F>> = Vec::new();
    let mut kept_leads: Vec<Monomial> = Vec::new();
    for (i, g) in basis.iter().enumerate() {
        let redundant = leads
            .iter()
            .enumerate()
            .any(|(j, lj)| j != i && divides(lj, &leads[i]) && (lj != &leads[i] || j < i));
        if !redundant {
            keep.push(g.clone());
            kept_leads.push(leads[i].clone());
        }
    }
    let mut out: Vec<MultiPoly<F>> = (0..keep.len())
        .map(|i| {
            let others: Vec<MultiPoly<F>> = keep
                .iter()
                .enumerate()
                .filter(|(j, _)| *j != i)
                .map(|(_, g)| g.clone())
                .collect();
            let (lead_e, lead_c) = leading(&keep[i]).expect("nonzero");
            let tail = &keep[i] - &MultiPoly::monomial(lead_c.clone(), lead_e.clone());
            let reduced_tail = if others.is_empty() {
                tail
            } else {
                reduce(&tail, &others)
            };
            monic(&(&MultiPoly::monomial(lead_c, lead_e) + &reduced_tail))
        })
        .collect();
    out.sort_by(|a, b| {
        grevlex(
            &leading(a).expect("nonzero").0,
            &leading(b).expect("nonzero").0,
        )
    });
    out
}

/// Whether the ideal generated by `gens` is the whole ring.
pub fn is_unit_ideal<F: Field>(
    gens: &[MultiPoly<F>],
    max_reductions: usize,
) -> Result<bool, ArithError> {
    let gb = groebner_basis(gens, max_reductions)?;
    Ok(gb
        .iter()
        .any(|g| leading(g).is_some_and(|(e, _)| e.iter().all(|&k| k == 0))))
}
