//! Jacobson radical and primitive idempotents.
//!
//! The radical comes from Dickson's trace-form criterion, which is exact in
//! characteristic 0 and in characteristic `p > dim`. Idempotents are split off
//! by the Fitting decomposition of single elements: for `x` in a corner `fEf`
//! with an eigenvalue `λ ∈ k`, the element `y = x - λf` is either nilpotent or
//! yields a nontrivial idempotent inside `k[y]`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::Table;
use crate::error::{Error, Result};
use crate::field::{Field, Scalar};
use crate::linalg::{self, Matrix, Subspace, Vector};

const SPLIT_SEED: u64 = 0x5e17_1d3a;
const SPLIT_ATTEMPTS: usize = 96;

pub fn radical(t: &Table) -> Result<Subspace> {
    let f = t.field();
    let d = t.dim();
    if !f.supports_trace_radical(d) {
        return Err(Error::FieldTooSmall(d));
    }
    // tr(L_{b_k})
    let traces: Vec<Scalar> = (0..d)
        .map(|k| {
            let mut s = f.zero();
            for i in 0..d {
                for (j, c) in t.basis_product(k, i) {
                    if *j == i {
                        s = &s + c;
                    }
                }
            }
            s
        })
        .collect();
    let mut g = Matrix::zeros(f, d, d);
    for i in 0..d {
        for j in 0..d {
            let mut s = f.zero();
            for (k, c) in t.basis_product(i, j) {
                s = &s + &(c * &traces[*k]);
            }
            g.set(j, i, s);
        }
    }
    let rad = Subspace::span(f, d, &g.kernel());
    let mut power = rad.clone();
    for _ in 0..=d {
        if power.is_zero() {
            return Ok(rad);
        }
        power = t.product_space(&power, &rad);
    }
    Err(Error::Internal("trace radical is not nilpotent".into()))
}

/// `true` if `fEf / rad(fEf)` is one-dimensional.
pub fn is_local(t: &Table, rad: &Subspace, f: &[Scalar]) -> bool {
    let full = Subspace::full(t.field(), t.dim());
    let corner = t.sandwich(f, &full, f);
    let r = t.sandwich(f, rad, f);
    corner.dim() == r.dim() + 1
}

/// Primitive orthogonal idempotents summing to 1, grouped by isomorphism of
/// the projectives they cut out.
#[derive(Clone, Debug)]
pub struct IdempotentClasses {
    pub idempotents: Vec<Vector>,
    pub classes: Vec<Vec<usize>>,
    /// `(i, j, u, v)` with `u ∈ e_i E e_j`, `v ∈ e_j E e_i`, `uv = e_i`, `vu = e_j`.
    pub witnesses: Vec<(usize, usize, Vector, Vector)>,
}

pub fn decompose_identity(t: &Table) -> Result<IdempotentClasses> {
    let rad = radical(t)?;
    let mut rng = ChaCha8Rng::seed_from_u64(SPLIT_SEED);
    let mut idempotents = Vec::new();
    if !linalg::is_zero_vector(t.unit()) {
        split(t, &rad, t.unit().clone(), &mut idempotents, &mut rng)?;
    }
    let n = idempotents.len();
    let mut class_of: Vec<Option<usize>> = vec![None; n];
    let mut classes: Vec<Vec<usize>> = Vec::new();
    let mut witnesses = Vec::new();
    for i in 0..n {
        if class_of[i].is_some() {
            continue;
        }
        let c = classes.len();
        class_of[i] = Some(c);
        let mut members = vec![i];
        for j in i + 1..n {
            if class_of[j].is_some() {
                continue;
            }
            if let Some((u, v)) = iso_witness(t, &rad, &idempotents[i], &idempotents[j]) {
                class_of[j] = Some(c);
                members.push(j);
                witnesses.push((i, j, u, v));
            }
        }
        classes.push(members);
    }
    Ok(IdempotentClasses { idempotents, classes, witnesses })
}

fn corner_basis(t: &Table, e: &[Scalar], f: &[Scalar]) -> Vec<Vector> {
    let full = Subspace::full(t.field(), t.dim());
    t.sandwich(e, &full, f).basis().to_vec()
}

/// `u ∈ eEf`, `v ∈ fEe` with `uv = e`, `vu = f`, if `e` and `f` are isomorphic.
fn iso_witness(t: &Table, rad: &Subspace, e: &[Scalar], f: &[Scalar]) -> Option<(Vector, Vector)> {
    let ef = corner_basis(t, e, f);
    let fe = corner_basis(t, f, e);
    let full = Subspace::full(t.field(), t.dim());
    let ee = t.sandwich(e, &full, e);
    for u in &ef {
        for v in &fe {
            let uv = t.mul(u, v);
            if rad.contains(&uv) {
                continue;
            }
            // uv is a unit of the local ring eEe; rescale v by its inverse.
            let s = t.left_divide_within(&uv, e, &ee)?;
            let v2 = t.mul(v, &s);
            debug_assert_eq!(t.mul(u, &v2), e.to_vec());
            return Some((u.clone(), v2));
        }
    }
    None
}

fn split(
    t: &Table,
    rad: &Subspace,
    f: Vector,
    out: &mut Vec<Vector>,
    rng: &mut ChaCha8Rng,
) -> Result<()> {
    if is_local(t, rad, &f) {
        out.push(f);
        return Ok(());
    }
    let full = Subspace::full(t.field(), t.dim());
    let corner = t.sandwich(&f, &full, &f);
    let basis = corner.basis().to_vec();
    let field = t.field();
    let n = basis.len();
    let mut candidates: Vec<Vector> = basis.clone();
    for i in 0..n {
        for j in i + 1..n {
            let mut v = basis[i].clone();
            linalg::axpy(&mut v, &field.from_i64(2), &basis[j]);
            candidates.push(v);
        }
    }
    let mut attempt = 0;
    loop {
        let x = if attempt < candidates.len() {
            candidates[attempt].clone()
        } else if attempt < candidates.len() + SPLIT_ATTEMPTS {
            let coeffs: Vec<Scalar> = (0..n)
                .map(|_| match field {
                    Field::Prime(_) => field.random(rng),
                    Field::Rational => field.from_i64(rng.gen_range(-3..=3)),
                })
                .collect();
            linalg::combine(field, t.dim(), &coeffs, &basis)
        } else {
            return Err(Error::NonSplit(
                "no element with an eigenvalue in the ground field splits a corner".into(),
            ));
        };
        attempt += 1;
        if let Some(e) = fitting_idempotent(t, &f, &x) {
            let rest = linalg::sub_vectors(&f, &e);
            split(t, rad, e, out, rng)?;
            split(t, rad, rest, out, rng)?;
            return Ok(());
        }
    }
}

/// Minimal polynomial of `x` in the corner ring with unit `f`, as
/// coefficients `[c_0, ..., c_{k-1}, 1]`.
fn min_poly(t: &Table, f: &[Scalar], x: &[Scalar]) -> Vec<Scalar> {
    let field = t.field();
    let mut powers = vec![f.to_vec()];
    loop {
        let next = t.mul(powers.last().unwrap(), x);
        let m = Matrix::from_columns(field, t.dim(), &powers);
        if let Some(c) = m.solve_vec(&next) {
            let mut poly: Vec<Scalar> = c.iter().map(|a| -a).collect();
            poly.push(field.one());
            return poly;
        }
        powers.push(next);
    }
}

fn fitting_idempotent(t: &Table, f: &[Scalar], x: &[Scalar]) -> Option<Vector> {
    let field = t.field();
    let poly = min_poly(t, f, x);
    let k = poly.len() - 1;
    if k < 2 {
        return None;
    }
    for lambda in roots(&poly) {
        let y = linalg::sub_vectors(x, &linalg::scale_vector(f, &lambda));
        let mut z = f.to_vec();
        for _ in 0..k {
            z = t.mul(&z, &y);
        }
        if linalg::is_zero_vector(&z) {
            continue;
        }
        // w ∈ span{z, z², ..., z^k} with w z = z is the idempotent of the
        // invertible Fitting component.
        let mut powers = vec![z.clone()];
        for _ in 1..k {
            powers.push(t.mul(powers.last().unwrap(), &z));
        }
        let cols: Vec<Vector> = powers.iter().map(|p| t.mul(p, &z)).collect();
        let m = Matrix::from_columns(field, t.dim(), &cols);
        let c = m.solve_vec(&z)?;
        let w = linalg::combine(field, t.dim(), &c, &powers);
        if w == f || linalg::is_zero_vector(&w) || t.mul(&w, &w) != w {
            continue;
        }
        return Some(w);
    }
    None
}

/// Roots in the ground field of a polynomial given low degree first.
pub(crate) fn roots(poly: &[Scalar]) -> Vec<Scalar> {
    let Some(first) = poly.first() else { return Vec::new() };
    match first.field() {
        Field::Prime(p) => {
            let c: Vec<u64> = poly
                .iter()
                .map(|s| match s {
                    Scalar::Fp { value, .. } => *value as u64,
                    Scalar::Q(_) => unreachable!(),
                })
                .collect();
            roots_fp(&c, p as u64)
                .into_iter()
                .map(|r| Scalar::Fp { value: r as u32, p })
                .collect()
        }
        Field::Rational => {
            let c: Vec<BigRational> = poly
                .iter()
                .map(|s| match s {
                    Scalar::Q(q) => q.clone(),
                    Scalar::Fp { .. } => unreachable!(),
                })
                .collect();
            roots_q(&c).into_iter().map(Scalar::Q).collect()
        }
    }
}

mod fp {
    pub type Poly = Vec<u64>;

    pub fn trim(mut a: Poly) -> Poly {
        while a.last() == Some(&0) {
            a.pop();
        }
        a
    }

    pub fn inv(a: u64, p: u64) -> u64 {
        let mut r = 1u64;
        let mut b = a % p;
        let mut e = p - 2;
        while e > 0 {
            if e & 1 == 1 {
                r = r * b % p;
            }
            b = b * b % p;
            e >>= 1;
        }
        r
    }

    pub fn rem(a: &Poly, m: &Poly, p: u64) -> Poly {
        let mut r = trim(a.clone());
        let dm = m.len() - 1;
        let lead_inv = inv(m[dm], p);
        while r.len() > dm {
            let dr = r.len() - 1;
            let q = r[dr] * lead_inv % p;
            for i in 0..=dm {
                let idx = dr - dm + i;
                r[idx] = (r[idx] + p - q * m[i] % p) % p;
            }
            r = trim(r);
        }
        r
    }

    pub fn div(a: &Poly, m: &Poly, p: u64) -> Poly {
        let mut r = trim(a.clone());
        let dm = m.len() - 1;
        if r.len() <= dm {
            return Vec::new();
        }
        let lead_inv = inv(m[dm], p);
        let mut q = vec![0u64; r.len() - dm];
        while r.len() > dm {
            let dr = r.len() - 1;
            let c = r[dr] * lead_inv % p;
            q[dr - dm] = c;
            for i in 0..=dm {
                let idx = dr - dm + i;
                r[idx] = (r[idx] + p - c * m[i] % p) % p;
            }
            r = trim(r);
        }
        trim(q)
    }

    pub fn mul_mod(a: &Poly, b: &Poly, m: &Poly, p: u64) -> Poly {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![0u64; a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            for (j, y) in b.iter().enumerate() {
                out[i + j] = (out[i + j] + x * y) % p;
            }
        }
        rem(&out, m, p)
    }

    pub fn pow_mod(base: &Poly, mut e: u64, m: &Poly, p: u64) -> Poly {
        let mut r = rem(&vec![1], m, p);
        let mut b = rem(base, m, p);
        while e > 0 {
            if e & 1 == 1 {
                r = mul_mod(&r, &b, m, p);
            }
            b = mul_mod(&b, &b, m, p);
            e >>= 1;
        }
        r
    }

    pub fn gcd(a: &Poly, b: &Poly, p: u64) -> Poly {
        let mut a = trim(a.clone());
        let mut b = trim(b.clone());
        while !b.is_empty() {
            let r = rem(&a, &b, p);
            a = b;
            b = r;
        }
        if let Some(&l) = a.last() {
            let li = inv(l, p);
            for c in a.iter_mut() {
                *c = *c * li % p;
            }
        }
        a
    }

    pub fn sub(a: &[u64], b: &[u64], p: u64) -> Poly {
        let n = a.len().max(b.len());
        let out = (0..n)
            .map(|i| {
                let x = a.get(i).copied().unwrap_or(0);
                let y = b.get(i).copied().unwrap_or(0);
                (x + p - y) % p
            })
            .collect();
        trim(out)
    }

    pub fn eval(a: &Poly, x: u64, p: u64) -> u64 {
        a.iter().rev().fold(0, |acc, c| (acc * x + c) % p)
    }
}

fn roots_fp(c: &[u64], p: u64) -> Vec<u64> {
    let poly = fp::trim(c.to_vec());
    if poly.len() < 2 {
        return Vec::new();
    }
    if p <= 4096 {
        return (0..p).filter(|&x| fp::eval(&poly, x, p) == 0).collect();
    }
    // Product of the distinct linear factors: gcd(poly, t^p - t).
    let tp = fp::pow_mod(&vec![0, 1], p, &poly, p);
    let g = fp::gcd(&poly, &fp::sub(&tp, &[0, 1], p), p);
    let mut out = Vec::new();
    split_linear(&g, p, &mut out);
    out.sort_unstable();
    out
}

/// Equal-degree splitting of a product of distinct linear factors.
fn split_linear(g: &fp::Poly, p: u64, out: &mut Vec<u64>) {
    let d = g.len().saturating_sub(1);
    if d == 0 {
        return;
    }
    if d == 1 {
        out.push((p - g[0] * fp::inv(g[1], p) % p) % p);
        return;
    }
    for delta in 0..p {
        let h = fp::pow_mod(&vec![delta, 1], (p - 1) / 2, g, p);
        let h = fp::gcd(g, &fp::sub(&h, &[1], p), p);
        let dh = h.len().saturating_sub(1);
        if dh > 0 && dh < d {
            let rest = fp::div(g, &h, p);
            split_linear(&h, p, out);
            split_linear(&rest, p, out);
            return;
        }
    }
}

fn roots_q(c: &[BigRational]) -> Vec<BigRational> {
    let mut poly: Vec<BigRational> = c.to_vec();
    while poly.last().is_some_and(|x| x.is_zero()) {
        poly.pop();
    }
    let mut out = Vec::new();
    if poly.len() < 2 {
        return out;
    }
    if poly[0].is_zero() {
        out.push(BigRational::zero());
        while poly.first().is_some_and(|x| x.is_zero()) {
            poly.remove(0);
        }
    }
    if poly.len() < 2 {
        return out;
    }
    let lcm = poly.iter().fold(BigInt::one(), |acc, q| num_integer::Integer::lcm(&acc, q.denom()));
    let ints: Vec<BigInt> = poly.iter().map(|q| (q * BigRational::from_integer(lcm.clone())).to_integer()).collect();
    let (Some(a0), Some(an)) = (ints[0].abs().to_u64(), ints.last().unwrap().abs().to_u64()) else {
        return out;
    };
    const LIMIT: u64 = 1 << 40;
    if a0 > LIMIT || an > LIMIT {
        return out;
    }
    let eval = |x: &BigRational| -> bool {
        let mut acc = BigRational::zero();
        for coef in poly.iter().rev() {
            acc = acc * x + coef;
        }
        acc.is_zero()
    };
    for num in divisors(a0) {
        for den in divisors(an) {
            for sign in [1i64, -1] {
                let x = BigRational::new(BigInt::from(num) * sign, BigInt::from(den));
                if !out.contains(&x) && eval(&x) {
                    out.push(x);
                }
            }
        }
    }
    out
}

fn divisors(n: u64) -> Vec<u64> {
    let mut v = Vec::new();
    let mut d = 1u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            v.push(d);
            if d * d != n {
                v.push(n / d);
            }
        }
        d += 1;
    }
    v.sort_unstable();
    v
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::tests::matrix_units;

    #[test]
    fn fp_roots_match_brute_force() {
        let p = 32003u64;
        // (t - 3)(t - 5)(t^2 + 1); t^2 + 1 is irreducible since 32003 ≡ 3 mod 4
        let f = Field::Prime(p as u32);
        let lin = |r: i64| vec![f.from_i64(-r), f.one()];
        let mul = |a: &[Scalar], b: &[Scalar]| {
            let mut out = vec![f.zero(); a.len() + b.len() - 1];
            for (i, x) in a.iter().enumerate() {
                for (j, y) in b.iter().enumerate() {
                    out[i + j] = &out[i + j] + &(x * y);
                }
            }
            out
        };
        let quad = vec![f.one(), f.zero(), f.one()];
        let poly = mul(&mul(&lin(3), &lin(5)), &quad);
        let r = roots(&poly);
        let brute: Vec<Scalar> = (0..p as i64)
            .map(|x| f.from_i64(x))
            .filter(|x| {
                let mut acc = f.zero();
                for c in poly.iter().rev() {
                    acc = &(&acc * x) + c;
                }
                acc.is_zero()
            })
            .collect();
        assert_eq!(r, brute);
    }

    #[test]
    fn rational_roots() {
        let q = Field::Rational;
        // 2t^2 - 3t + 1 = (2t - 1)(t - 1)
        let poly = vec![q.from_i64(1), q.from_i64(-3), q.from_i64(2)];
        let mut r = roots(&poly);
        r.sort_by_key(|s| s.to_string());
        assert_eq!(r, vec![q.from_i64(1), q.from_ratio(1, 2).unwrap()]);
    }

    #[test]
    fn matrix_algebra_has_two_isomorphic_idempotents() {
        for f in [Field::Prime(32003), Field::Rational] {
            let (t, _) = Table::from_matrices(f, 2, &matrix_units(f)).unwrap();
            let d = decompose_identity(&t).unwrap();
            assert_eq!(d.idempotents.len(), 2);
            assert_eq!(d.classes.len(), 1);
            let (i, j, u, v) = &d.witnesses[0];
            assert_eq!(&t.mul(u, v), &d.idempotents[*i]);
            assert_eq!(&t.mul(v, u), &d.idempotents[*j]);
        }
    }

    #[test]
    fn small_field_is_rejected() {
        let f = Field::Prime(3);
        let (t, _) = Table::from_matrices(f, 2, &matrix_units(f)).unwrap();
        assert_eq!(radical(&t), Err(Error::FieldTooSmall(4)));
    }
}
