//! Simple isogeny classes from Weil polynomials, and the phantom decision.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use phantom_arith::{factor_over_q, factor_over_qp, rat, rat_int, QPoly, Rational};

use crate::weil::{
    hodge_polygon, is_ordinary_polygon, is_weil_polynomial, newton_over_hodge, newton_polygon,
    tate_twist, HodgeNumbers, PrimePower,
};
use crate::{CoreError, Result};

/// A place of `Q(pi)`: one of the p-adic factors, or a real place.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Place {
    Padic(usize),
    Infinity(usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalInvariant {
    pub place: Place,
    pub invariant: Rational,
    pub local_degree: usize,
}

/// The simple isogeny class attached to an irreducible q-Weil polynomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimpleIsogenyClass {
    pub m: QPoly,
    pub q: PrimePower,
    pub n: usize,
    /// Normalized slope of every root, ascending, with multiplicity.
    pub slopes: Vec<Rational>,
    pub local_invariants: Vec<LocalInvariant>,
    /// Index of the endomorphism algebra (lcm of invariant denominators).
    pub e: u64,
    /// Dimension of the abelian variety.
    pub d: u64,
}

impl SimpleIsogenyClass {
    /// `2d/n`, the exponent of `m` in the Frobenius characteristic polynomial.
    pub fn frobenius_exponent(&self) -> u64 {
        2 * self.d / self.n as u64
    }
}

fn frac(x: &Rational) -> Rational {
    x - Rational::from_integer(x.floor().to_integer())
}

/// Whether the roots of the irreducible Weil polynomial `m` are real; returns their count.
fn real_roots(m: &QPoly, q: &PrimePower) -> usize {
    let qr = q.q_rational();
    match m.deg() {
        1 => 1,
        2 if m.coeff(1).is_zero() && m.coeff(0) == -qr => 2,
        _ => 0,
    }
}

pub fn simple_class_from_weil(m: &QPoly, q: &PrimePower) -> Result<SimpleIsogenyClass> {
    let fac = factor_over_q(m)?;
    if !fac.is_irreducible() || !m.is_monic() {
        return Err(CoreError::NotIrreducible);
    }
    let cert = is_weil_polynomial(m, q)?;
    if !cert.is_weil {
        return Err(CoreError::NotWeil(format!(
            "{m}: {}",
            cert.factors[0].reason
        )));
    }
    let n = m.deg();
    let a = rat_int(q.a as i64);
    let mut slopes = Vec::new();
    let mut local_invariants = Vec::new();
    for (i, v) in factor_over_qp(m, q.p)?.into_iter().enumerate() {
        let s = &v.valuation / &a;
        let inv = frac(&(&s * rat_int(v.degree as i64)));
        slopes.extend(std::iter::repeat_n(s, v.degree));
        local_invariants.push(LocalInvariant {
            place: Place::Padic(i),
            invariant: inv,
            local_degree: v.degree,
        });
    }
    for i in 0..real_roots(m, q) {
        local_invariants.push(LocalInvariant {
            place: Place::Infinity(i),
            invariant: rat(1, 2),
            local_degree: 1,
        });
    }
    slopes.sort();
    let e = local_invariants
        .iter()
        .fold(BigInt::from(1), |acc, li| acc.lcm(li.invariant.denom()))
        .to_u64()
        .expect("index fits in u64");
    let d = n as u64 * e / 2;
    Ok(SimpleIsogenyClass {
        m: m.clone(),
        q: q.clone(),
        n,
        slopes,
        local_invariants,
        e,
        d,
    })
}

/// `m^(2d/n)`, of degree `2d`.
pub fn frobenius_charpoly(c: &SimpleIsogenyClass) -> QPoly {
    c.m.pow(c.frobenius_exponent() as u32)
}

/// Factor `f = prod m^e` and attach the simple class of every factor.
pub fn decompose_representation(
    f: &QPoly,
    q: &PrimePower,
) -> Result<Vec<(SimpleIsogenyClass, u32)>> {
    let cert = is_weil_polynomial(f, q)?;
    if !cert.is_weil {
        let bad = cert
            .factors
            .iter()
            .find(|v| !v.ok)
            .expect("a failing factor");
        return Err(CoreError::NotWeil(format!(
            "{}: {}",
            bad.factor, bad.reason
        )));
    }
    cert.factors
        .iter()
        .map(|v| Ok((simple_class_from_weil(&v.factor, q)?, v.multiplicity)))
        .collect()
}

/// Per-factor outcome of the divisibility test.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PhantomFactor {
    pub class: SimpleIsogenyClass,
    /// Multiplicity `e_pi` of `m` in the input.
    pub multiplicity: u32,
    /// The divisor `2d/n` the multiplicity must be a multiple of.
    pub required: u64,
    pub ok: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PhantomDecision {
    pub realizable: bool,
    pub factors: Vec<PhantomFactor>,
    /// Multiplicity of each simple class in an abelian variety with exactly this
    /// Frobenius characteristic polynomial.
    pub witness: Option<Vec<(SimpleIsogenyClass, u64)>>,
    pub minimal_containing: Vec<(SimpleIsogenyClass, u64)>,
}

impl PhantomDecision {
    /// Frobenius characteristic polynomial of a decomposition.
    pub fn charpoly_of(decomp: &[(SimpleIsogenyClass, u64)]) -> QPoly {
        decomp.iter().fold(QPoly::one(), |acc, (c, k)| {
            &acc * &frobenius_charpoly(c).pow(*k as u32)
        })
    }
}

/// Multiplicities used for `minimal_containing`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum ContainingConvention {
    /// `ceil(e_pi n / 2d)` copies: the smallest abelian variety whose H^1 contains the input.
    #[default]
    Ceiling,
    /// `e_pi` copies of each simple class.
    Copies,
}

pub fn phantom_exists(f: &QPoly, q: &PrimePower) -> Result<PhantomDecision> {
    phantom_exists_with(f, q, ContainingConvention::Ceiling)
}

pub fn phantom_exists_with(
    f: &QPoly,
    q: &PrimePower,
    conv: ContainingConvention,
) -> Result<PhantomDecision> {
    let decomp = decompose_representation(f, q)?;
    let mut factors = Vec::new();
    let mut witness = Vec::new();
    let mut containing = Vec::new();
    for (class, mult) in decomp {
        let required = class.frobenius_exponent();
        let m = mult as u64;
        let ok = m.is_multiple_of(required);
        if ok {
            witness.push((class.clone(), m / required));
        }
        let copies = match conv {
            ContainingConvention::Ceiling => m.div_ceil(required),
            ContainingConvention::Copies => m,
        };
        containing.push((class.clone(), copies));
        factors.push(PhantomFactor {
            class,
            multiplicity: mult,
            required,
            ok,
        });
    }
    let realizable = factors.iter().all(|f| f.ok);
    Ok(PhantomDecision {
        realizable,
        factors,
        witness: realizable.then_some(witness),
        minimal_containing: containing,
    })
}

/// Realizability of a coniveau-`n` piece `H^{2n+1}` under ordinarity.
///
/// `f` is the characteristic polynomial of Frobenius on `H^{2n+1}` (untwisted)
/// and `h` its Hodge numbers; `n = (r - 1) / 2`.
pub fn ordinary_phantom(f: &QPoly, q: &PrimePower, h: &HodgeNumbers) -> Result<PhantomDecision> {
    if h.r.is_multiple_of(2) {
        return Err(CoreError::InvalidHodge(format!(
            "degree {} is not odd",
            h.r
        )));
    }
    let n = ((h.r - 1) / 2) as i64;
    let np = newton_polygon(f, q)?;
    let hp = hodge_polygon(h);
    if !newton_over_hodge(&np, &hp)? {
        return Err(CoreError::NewtonBelowHodge);
    }
    if !is_ordinary_polygon(&np, &hp)? {
        return Err(CoreError::NotOrdinary);
    }
    let g = tate_twist(f, n, q)?;
    if !g.is_integral() {
        return Err(CoreError::NotEffective(g.to_string()));
    }
    let decision = phantom_exists(&g, q)?;
    debug_assert!(
        decision.realizable,
        "ordinary weight-one data is always realizable"
    );
    Ok(decision)
}

/// Sum of all local invariants (including real places), reduced mod 1.
pub fn invariant_sum(c: &SimpleIsogenyClass) -> Rational {
    let s: Rational = c
        .local_invariants
        .iter()
        .map(|li| li.invariant.clone())
        .sum();
    frac(&s)
}
