//! Prime-power fields GF(p^r) with elements encoded as integers.
//!
//! Element `v` stands for the polynomial whose coefficient `i` is the base-`p`
//! digit `i` of `v`, reduced modulo the field's monic irreducible. Products go
//! through exp/log tables over a primitive element; sums are digit-wise (XOR in
//! characteristic 2, Zech logarithms in odd-characteristic extension fields).

use std::collections::HashMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::{Arc, Mutex};

use once_cell::sync::Lazy;

use crate::error::{Error, Result};
use crate::limits::MAX_FIELD_ORDER;
use crate::matrix::FMat;

const NONE: u32 = u32::MAX;

struct FieldInner {
    p: u32,
    r: u32,
    q: u32,
    modulus: Vec<u32>,
    primitive: u32,
    exp: Vec<u32>,
    log: Vec<u32>,
    zech: Vec<u32>,
}

/// A finite field F_{p^r}. Cheap to clone; instances are cached per `(p, r)`.
#[derive(Clone)]
pub struct FieldSpec(Arc<FieldInner>);

static CACHE: Lazy<Mutex<HashMap<(u32, u32), FieldSpec>>> = Lazy::new(|| Mutex::new(HashMap::new()));

/// Builds (or fetches from the cache) the field of order `p^r`.
///
/// The modulus is the smallest monic irreducible of degree `r` when
/// coefficient vectors are compared from the constant term upwards.
pub fn field_construct(p: u64, r: u32) -> Result<FieldSpec> {
    if r < 1 {
        return Err(Error::InvalidField(format!("extension degree {r} < 1")));
    }
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let order = (p as u128).checked_pow(r).unwrap_or(u128::MAX);
    if order > MAX_FIELD_ORDER as u128 {
        return Err(Error::FieldTooLarge { order, bound: MAX_FIELD_ORDER });
    }
    let key = (p as u32, r);
    let mut cache = CACHE.lock().unwrap_or_else(|e| e.into_inner());
    if let Some(f) = cache.get(&key) {
        return Ok(f.clone());
    }
    let f = FieldSpec(Arc::new(FieldInner::build(p as u32, r)));
    cache.insert(key, f.clone());
    Ok(f)
}

/// Field of order `q`, which must be a prime power.
pub fn field_of_order(q: u64) -> Result<FieldSpec> {
    let (p, r) = prime_power(q).ok_or_else(|| Error::InvalidField(format!("{q} is not a prime power")))?;
    field_construct(p, r)
}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

pub(crate) fn prime_power(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|d| q.is_multiple_of(*d))?;
    let (mut rest, mut r) = (q, 0);
    while rest % p == 0 {
        rest /= p;
        r += 1;
    }
    (rest == 1).then_some((p, r))
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Coefficients of the `idx`-th vector in low-to-high lexicographic order:
/// the constant coefficient is the most significant.
fn lex_coeffs(idx: u32, p: u32, r: u32) -> Vec<u32> {
    let mut c = vec![0; r as usize];
    let mut v = idx;
    for j in (0..r as usize).rev() {
        c[j] = v % p;
        v /= p;
    }
    c
}

fn encode(c: &[u32], p: u32) -> u32 {
    c.iter().rev().fold(0, |acc, &d| acc * p + d)
}

fn decode(mut v: u32, p: u32, r: u32) -> Vec<u32> {
    let mut c = vec![0; r as usize];
    for d in c.iter_mut() {
        *d = v % p;
        v /= p;
    }
    c
}

// Dense polynomials over F_p, low-to-high, used only while building tables.
mod poly {
    pub fn trim(a: &mut Vec<u32>) {
        while a.last() == Some(&0) {
            a.pop();
        }
    }

    fn inv_mod(a: u32, p: u32) -> u32 {
        let mut r = 1u64;
        let (mut b, mut e) = (a as u64, p as u64 - 2);
        while e > 0 {
            if e & 1 == 1 {
                r = r * b % p as u64;
            }
            b = b * b % p as u64;
            e >>= 1;
        }
        r as u32
    }

    pub fn rem(a: &[u32], f: &[u32], p: u32) -> Vec<u32> {
        let mut a = a.to_vec();
        trim(&mut a);
        let mut f = f.to_vec();
        trim(&mut f);
        let df = f.len() - 1;
        let lead_inv = inv_mod(f[df], p);
        while a.len() > df {
            let da = a.len() - 1;
            let c = (a[da] as u64 * lead_inv as u64 % p as u64) as u32;
            for (i, &fi) in f.iter().enumerate() {
                let k = da - df + i;
                a[k] = ((a[k] as u64 + (p - c) as u64 * fi as u64) % p as u64) as u32;
            }
            trim(&mut a);
        }
        a
    }

    pub fn mul_mod(a: &[u32], b: &[u32], f: &[u32], p: u32) -> Vec<u32> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![0u64; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            for (j, &y) in b.iter().enumerate() {
                out[i + j] = (out[i + j] + x as u64 * y as u64) % p as u64;
            }
        }
        rem(&out.into_iter().map(|v| v as u32).collect::<Vec<_>>(), f, p)
    }

    pub fn pow_mod(a: &[u32], mut e: u64, f: &[u32], p: u32) -> Vec<u32> {
        let mut result = vec![1];
        let mut base = rem(a, f, p);
        while e > 0 {
            if e & 1 == 1 {
                result = mul_mod(&result, &base, f, p);
            }
            base = mul_mod(&base, &base, f, p);
            e >>= 1;
        }
        result
    }

    pub fn gcd(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
        let mut a = a.to_vec();
        let mut b = b.to_vec();
        trim(&mut a);
        trim(&mut b);
        while !b.is_empty() {
            let r = rem(&a, &b, p);
            a = b;
            b = r;
        }
        a
    }

    /// Ben-Or test: no factor of degree ≤ deg(f)/2.
    pub fn is_irreducible(f: &[u32], p: u32) -> bool {
        let r = f.len() - 1;
        if r <= 1 {
            return r == 1;
        }
        let x = vec![0, 1];
        let mut h = x.clone();
        for _ in 0..r / 2 {
            h = pow_mod(&h, p as u64, f, p);
            let mut d = h.clone();
            d.resize(d.len().max(2), 0);
            d[1] = (d[1] + p - 1) % p;
            trim(&mut d);
            if d.is_empty() {
                return false;
            }
            if gcd(f, &d, p).len() > 1 {
                return false;
            }
        }
        true
    }
}

impl FieldInner {
    fn build(p: u32, r: u32) -> Self {
        let q = p.pow(r);
        let modulus = (0..q)
            .map(|idx| {
                let mut f = lex_coeffs(idx, p, r);
                f.push(1);
                f
            })
            .find(|f| poly::is_irreducible(f, p))
            .expect("an irreducible polynomial of every degree exists");

        let n = q - 1;
        let factors = prime_factors(n as u64);
        let primitive = if q == 2 {
            1
        } else {
            (2..q)
                .find(|&g| {
                    let gd = decode(g, p, r);
                    factors.iter().all(|&l| {
                        let v = poly::pow_mod(&gd, n as u64 / l, &modulus, p);
                        v != [1]
                    })
                })
                .expect("multiplicative group is cyclic")
        };

        let gd = decode(primitive, p, r);
        let mut exp = vec![0u32; 2 * n as usize];
        let mut log = vec![NONE; q as usize];
        let mut cur = vec![0u32; r as usize];
        cur[0] = 1;
        for i in 0..n as usize {
            let v = encode(&cur, p);
            exp[i] = v;
            exp[i + n as usize] = v;
            log[v as usize] = i as u32;
            cur = mul_digits(&cur, &gd, &modulus, p);
        }

        let mut inner = FieldInner { p, r, q, modulus, primitive, exp, log, zech: Vec::new() };
        if p != 2 && r > 1 {
            let mut zech = vec![NONE; n as usize];
            for (i, z) in zech.iter_mut().enumerate() {
                let s = inner.add_digits(1, inner.exp[i]);
                if s != 0 {
                    *z = inner.log[s as usize];
                }
            }
            inner.zech = zech;
        }
        inner
    }

    fn add_digits(&self, a: u32, b: u32) -> u32 {
        let (mut a, mut b, mut out, mut scale) = (a, b, 0, 1);
        while a > 0 || b > 0 {
            out += ((a % self.p + b % self.p) % self.p) * scale;
            a /= self.p;
            b /= self.p;
            scale *= self.p;
        }
        out
    }
}

/// `a * g mod f` on digit vectors, linear in the number of terms of `g`.
fn mul_digits(a: &[u32], g: &[u32], f: &[u32], p: u32) -> Vec<u32> {
    let r = a.len();
    let mut res = vec![0u32; r];
    let mut t = a.to_vec();
    for (j, &gj) in g.iter().enumerate() {
        if gj != 0 {
            for i in 0..r {
                res[i] = (res[i] + gj * t[i]) % p;
            }
        }
        if j + 1 < g.len() {
            let top = t[r - 1];
            for i in (1..r).rev() {
                t[i] = t[i - 1];
            }
            t[0] = 0;
            if top != 0 {
                for i in 0..r {
                    t[i] = (t[i] + (p - top) * f[i]) % p;
                }
            }
        }
    }
    res
}

impl FieldSpec {
    pub fn p(&self) -> u32 {
        self.0.p
    }

    pub fn r(&self) -> u32 {
        self.0.r
    }

    /// The field order `q = p^r`.
    pub fn order(&self) -> u32 {
        self.0.q
    }

    /// Monic modulus, coefficients low-to-high (length r + 1).
    pub fn modulus(&self) -> &[u32] {
        &self.0.modulus
    }

    pub fn primitive_element(&self) -> u32 {
        self.0.primitive
    }

    pub fn is_prime_field(&self) -> bool {
        self.0.r == 1
    }

    /// Short name such as `F4`.
    pub fn name(&self) -> String {
        format!("F{}", self.0.q)
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        let f = &*self.0;
        if f.p == 2 {
            a ^ b
        } else if f.r == 1 {
            let s = a + b;
            if s >= f.p {
                s - f.p
            } else {
                s
            }
        } else if a == 0 {
            b
        } else if b == 0 {
            a
        } else {
            let n = f.q - 1;
            let (la, lb) = (f.log[a as usize], f.log[b as usize]);
            let d = if lb >= la { lb - la } else { lb + n - la };
            match f.zech[d as usize] {
                NONE => 0,
                z => f.exp[(la + z) as usize],
            }
        }
    }

    #[inline]
    pub fn neg(&self, a: u32) -> u32 {
        let f = &*self.0;
        if f.p == 2 || a == 0 {
            a
        } else if f.r == 1 {
            f.p - a
        } else {
            f.exp[(f.log[a as usize] + (f.q - 1) / 2) as usize]
        }
    }

    #[inline]
    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        if a == 0 || b == 0 {
            return 0;
        }
        let f = &*self.0;
        f.exp[(f.log[a as usize] + f.log[b as usize]) as usize]
    }

    pub fn inv(&self, a: u32) -> Result<u32> {
        if a == 0 {
            return Err(Error::ZeroInverse);
        }
        let f = &*self.0;
        let n = f.q - 1;
        Ok(f.exp[((n - f.log[a as usize]) % n) as usize])
    }

    pub fn div(&self, a: u32, b: u32) -> Result<u32> {
        Ok(self.mul(a, self.inv(b)?))
    }

    pub fn pow(&self, a: u32, e: u64) -> u32 {
        if e == 0 {
            return 1;
        }
        if a == 0 {
            return 0;
        }
        let f = &*self.0;
        let n = (f.q - 1) as u64;
        f.exp[((f.log[a as usize] as u64 * (e % n)) % n) as usize]
    }

    /// Image of an integer in the prime subfield.
    pub fn from_int(&self, v: i64) -> u32 {
        v.rem_euclid(self.0.p as i64) as u32
    }

    /// Coefficient vector (low-to-high, length r) of an element.
    pub fn coeffs(&self, a: u32) -> Vec<u32> {
        decode(a, self.0.p, self.0.r)
    }

    pub fn from_coeffs(&self, c: &[u32]) -> Result<u32> {
        if c.len() > self.0.r as usize || c.iter().any(|&d| d >= self.0.p) {
            return Err(Error::InvalidElement(format!("{c:?} is not a coefficient vector of {}", self.name())));
        }
        Ok(encode(c, self.0.p))
    }

    pub fn contains(&self, a: u32) -> bool {
        a < self.0.q
    }

    pub fn element(&self, value: u32) -> Result<FEl> {
        if !self.contains(value) {
            return Err(Error::InvalidElement(format!("{value} is not an element of {}", self.name())));
        }
        Ok(FEl { field: self.clone(), value })
    }

    /// Canonical rendering, e.g. `F4:[1,1]` for x + 1.
    pub fn render(&self, a: u32) -> String {
        format!("{}:{}", self.name(), self.render_coeffs(a))
    }

    pub(crate) fn render_coeffs(&self, a: u32) -> String {
        let c: Vec<String> = self.coeffs(a).iter().map(u32::to_string).collect();
        format!("[{}]", c.join(","))
    }

    pub(crate) fn parse_coeffs(&self, s: &str) -> Result<u32> {
        let inner = s
            .strip_prefix('[')
            .and_then(|t| t.strip_suffix(']'))
            .ok_or_else(|| Error::InvalidElement(format!("expected [c0,...], got {s:?}")))?;
        let c = inner
            .split(',')
            .map(|t| t.trim().parse::<u32>())
            .collect::<std::result::Result<Vec<_>, _>>()
            .map_err(|_| Error::InvalidElement(format!("bad coefficient list {s:?}")))?;
        if c.len() != self.0.r as usize {
            return Err(Error::InvalidElement(format!("{s:?} needs {} coefficients", self.0.r)));
        }
        self.from_coeffs(&c)
    }

    /// Parses a rendering such as `F4:[1,1]`.
    pub fn parse_element(s: &str) -> Result<FEl> {
        let (name, coeffs) =
            s.split_once(':').ok_or_else(|| Error::InvalidElement(format!("expected F<q>:[...], got {s:?}")))?;
        let field = parse_field_name(name)?;
        let value = field.parse_coeffs(coeffs)?;
        field.element(value)
    }
}

/// Parses `F<q>` into a field.
pub fn parse_field_name(s: &str) -> Result<FieldSpec> {
    let q: u64 = s
        .strip_prefix('F')
        .and_then(|t| t.parse().ok())
        .ok_or_else(|| Error::InvalidField(format!("expected F<q>, got {s:?}")))?;
    field_of_order(q)
}

impl PartialEq for FieldSpec {
    fn eq(&self, other: &Self) -> bool {
        self.0.p == other.0.p && self.0.r == other.0.r
    }
}

impl Eq for FieldSpec {}

impl Hash for FieldSpec {
    fn hash<H: Hasher>(&self, state: &mut H) {
        (self.0.p, self.0.r).hash(state);
    }
}

impl fmt::Debug for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}(modulus {:?})", self.name(), self.0.modulus)
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

/// A field element tagged with its field.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FEl {
    field: FieldSpec,
    value: u32,
}

impl FEl {
    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn value(&self) -> u32 {
        self.value
    }

    pub fn coeffs(&self) -> Vec<u32> {
        self.field.coeffs(self.value)
    }

    pub fn is_zero(&self) -> bool {
        self.value == 0
    }
}

impl fmt::Debug for FEl {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.field.render(self.value))
    }
}

impl fmt::Display for FEl {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.field.render(self.value))
    }
}

fn same_field(a: &FEl, b: &FEl) -> Result<()> {
    if a.field != b.field {
        return Err(Error::FieldMismatch { left: a.field.name(), right: b.field.name() });
    }
    Ok(())
}

pub fn ff_add(a: &FEl, b: &FEl) -> Result<FEl> {
    same_field(a, b)?;
    Ok(FEl { field: a.field.clone(), value: a.field.add(a.value, b.value) })
}

pub fn ff_sub(a: &FEl, b: &FEl) -> Result<FEl> {
    same_field(a, b)?;
    Ok(FEl { field: a.field.clone(), value: a.field.sub(a.value, b.value) })
}

pub fn ff_mul(a: &FEl, b: &FEl) -> Result<FEl> {
    same_field(a, b)?;
    Ok(FEl { field: a.field.clone(), value: a.field.mul(a.value, b.value) })
}

pub fn ff_neg(a: &FEl) -> FEl {
    FEl { field: a.field.clone(), value: a.field.neg(a.value) }
}

pub fn ff_inv(a: &FEl) -> Result<FEl> {
    Ok(FEl { field: a.field.clone(), value: a.field.inv(a.value)? })
}

/// A degree-`z` extension F_q ⊇ F_d together with an embedding of F_d.
#[derive(Clone)]
pub struct ExtensionSpec {
    base: FieldSpec,
    big: FieldSpec,
    z: u32,
    embed_image: u32,
    embed_table: Vec<u32>,
    // Inverse of the F_p-coordinate matrix of the basis {embed(x^i) * y^j}.
    coord_inv: FMat,
}

/// Builds F_{d^z} and embeds `base` by sending x to the smallest root of its
/// modulus (constant coordinate most significant). `z = 1` gives the identity.
pub fn extend_field(base: &FieldSpec, z: u32) -> Result<ExtensionSpec> {
    if z < 1 {
        return Err(Error::InvalidField(format!("extension degree {z} < 1")));
    }
    let r = base.r();
    let rz = r.checked_mul(z).ok_or_else(|| Error::InvalidField("degree overflow".into()))?;
    let big = field_construct(base.p() as u64, rz)?;
    let p = base.p();

    let eval = |x: u32| base.modulus().iter().rev().fold(0u32, |acc, &c| big.add(big.mul(acc, x), c));
    let embed_image = if z == 1 && r > 1 {
        p
    } else {
        (0..big.order())
            .map(|i| encode(&lex_coeffs(i, p, rz), p))
            .find(|&x| eval(x) == 0)
            .ok_or_else(|| Error::InvalidField("no root of the base modulus in the extension".into()))?
    };

    let embed_table: Vec<u32> = (0..base.order())
        .map(|a| {
            let c = base.coeffs(a);
            c.iter().rev().fold(0u32, |acc, &ci| big.add(big.mul(acc, embed_image), ci))
        })
        .collect();

    let prime = field_construct(p as u64, 1)?;
    let n = rz as usize;
    let y = if rz > 1 { p } else { 1 };
    let mut basis = FMat::zeros(&prime, n, n);
    for j in 0..z as usize {
        let yj = big.pow(y, j as u64);
        for i in 0..r as usize {
            let e = big.mul(big.pow(embed_image, i as u64), yj);
            for (row, c) in big.coeffs(e).into_iter().enumerate() {
                basis.put(row, j * r as usize + i, c);
            }
        }
    }
    let coord_inv = basis.inverse()?;
    Ok(ExtensionSpec { base: base.clone(), big, z, embed_image, embed_table, coord_inv })
}

impl ExtensionSpec {
    pub fn base(&self) -> &FieldSpec {
        &self.base
    }

    pub fn big(&self) -> &FieldSpec {
        &self.big
    }

    pub fn z(&self) -> u32 {
        self.z
    }

    pub fn embed_image(&self) -> u32 {
        self.embed_image
    }

    #[inline]
    pub fn embed_raw(&self, a: u32) -> u32 {
        self.embed_table[a as usize]
    }

    /// Coordinates of `b` over the embedded base field in the basis {1, y, ..., y^(z-1)},
    /// where y is the generator x of the big field's polynomial representation.
    pub fn expand_raw(&self, b: u32) -> Vec<u32> {
        let p = self.base.p();
        let r = self.base.r() as usize;
        let v = self.big.coeffs(b);
        let prime = self.coord_inv.field();
        let c: Vec<u32> = (0..v.len())
            .map(|row| (0..v.len()).fold(0, |acc, k| prime.add(acc, prime.mul(self.coord_inv.at(row, k), v[k]))))
            .collect();
        c.chunks(r).map(|chunk| encode(chunk, p)).collect()
    }

    /// Inverse of `expand_raw`.
    pub fn compose_raw(&self, coords: &[u32]) -> u32 {
        let y = if self.big.r() > 1 { self.big.p() } else { 1 };
        coords
            .iter()
            .enumerate()
            .fold(0, |acc, (j, &c)| self.big.add(acc, self.big.mul(self.embed_raw(c), self.big.pow(y, j as u64))))
    }

    pub fn embed(&self, a: &FEl) -> Result<FEl> {
        if a.field != self.base {
            return Err(Error::FieldMismatch { left: a.field.name(), right: self.base.name() });
        }
        self.big.element(self.embed_raw(a.value))
    }

    pub fn expand(&self, b: &FEl) -> Result<Vec<FEl>> {
        if b.field != self.big {
            return Err(Error::FieldMismatch { left: b.field.name(), right: self.big.name() });
        }
        self.expand_raw(b.value).into_iter().map(|c| self.base.element(c)).collect()
    }
}

impl PartialEq for ExtensionSpec {
    fn eq(&self, other: &Self) -> bool {
        self.base == other.base && self.z == other.z && self.embed_image == other.embed_image
    }
}

impl Eq for ExtensionSpec {}

impl fmt::Debug for ExtensionSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} -> {} (z = {}, x -> {})", self.base, self.big, self.z, self.big.render(self.embed_image))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn all_fields() -> Vec<FieldSpec> {
        [(2, 1), (3, 1), (5, 1), (7, 1), (2, 2), (2, 3), (3, 2), (2, 4), (5, 2), (3, 3), (2, 6), (7, 2)]
            .iter()
            .map(|&(p, r)| field_construct(p, r).unwrap())
            .collect()
    }

    #[test]
    fn moduli_are_lexicographically_first() {
        assert_eq!(field_construct(2, 1).unwrap().modulus(), &[0, 1]);
        assert_eq!(field_construct(2, 2).unwrap().modulus(), &[1, 1, 1]);
        assert_eq!(field_construct(2, 3).unwrap().modulus(), &[1, 0, 1, 1]);
        assert_eq!(field_construct(3, 2).unwrap().modulus(), &[1, 0, 1]);
    }

    #[test]
    fn small_examples() {
        let f2 = field_construct(2, 1).unwrap();
        assert_eq!(f2.add(1, 1), 0);
        let f4 = field_construct(2, 2).unwrap();
        let x = f4.from_coeffs(&[0, 1]).unwrap();
        assert_eq!(f4.coeffs(f4.mul(x, x)), vec![1, 1]);
        assert_eq!(f4.render(f4.mul(x, x)), "F4:[1,1]");
        let f5 = field_construct(5, 1).unwrap();
        assert_eq!(f5.inv(2).unwrap(), 3);
        assert_eq!(f5.inv(0), Err(Error::ZeroInverse));
    }

    #[test]
    fn construction_errors() {
        assert_eq!(field_construct(4, 1).unwrap_err(), Error::NotPrime(4));
        assert!(matches!(field_construct(2, 0), Err(Error::InvalidField(_))));
        assert!(matches!(field_construct(2, 21), Err(Error::FieldTooLarge { .. })));
        assert!(field_construct(2, 20).is_ok());
    }

    #[test]
    fn fel_ops_check_fields() {
        let f2 = field_construct(2, 1).unwrap();
        let f3 = field_construct(3, 1).unwrap();
        let a = f2.element(1).unwrap();
        let b = f3.element(1).unwrap();
        assert!(matches!(ff_add(&a, &b), Err(Error::FieldMismatch { .. })));
        assert_eq!(ff_add(&a, &a).unwrap().value(), 0);
        assert_eq!(ff_inv(&f2.element(0).unwrap()), Err(Error::ZeroInverse));
        let e = FieldSpec::parse_element("F4:[1,1]").unwrap();
        assert_eq!(e.to_string(), "F4:[1,1]");
    }

    // Naive polynomial multiplication as an independent reference for the tables.
    fn reference_mul(f: &FieldSpec, a: u32, b: u32) -> u32 {
        let p = f.p() as u64;
        let (ca, cb) = (f.coeffs(a), f.coeffs(b));
        let mut prod = vec![0u64; ca.len() + cb.len()];
        for (i, &x) in ca.iter().enumerate() {
            for (j, &y) in cb.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x as u64 * y as u64) % p;
            }
        }
        let m = f.modulus();
        let r = f.r() as usize;
        for k in (r..prod.len()).rev() {
            let c = prod[k];
            if c != 0 {
                for (i, &mi) in m.iter().enumerate() {
                    let idx = k - r + i;
                    prod[idx] = (prod[idx] + (p - c) * mi as u64) % p;
                }
            }
        }
        let c: Vec<u32> = prod[..r].iter().map(|&v| v as u32).collect();
        f.from_coeffs(&c).unwrap()
    }

    #[test]
    fn axioms_exhaustive_small_fields() {
        for f in all_fields().into_iter().filter(|f| f.order() <= 64) {
            let q = f.order();
            for a in 0..q {
                assert_eq!(f.add(a, 0), a);
                assert_eq!(f.add(a, f.neg(a)), 0);
                assert_eq!(f.mul(a, 1), a);
                if a != 0 {
                    assert_eq!(f.mul(a, f.inv(a).unwrap()), 1);
                    assert_eq!(f.pow(a, (q - 1) as u64), 1);
                }
                for b in 0..q {
                    assert_eq!(f.add(a, b), f.add(b, a));
                    assert_eq!(f.mul(a, b), f.mul(b, a));
                    assert_eq!(f.mul(a, b), reference_mul(&f, a, b), "{f} {a} {b}");
                    let digits: Vec<u32> = f.coeffs(a).iter().zip(f.coeffs(b)).map(|(x, y)| (x + y) % f.p()).collect();
                    assert_eq!(f.add(a, b), f.from_coeffs(&digits).unwrap());
                }
            }
            for a in 0..q {
                for b in 0..q {
                    for c in 0..q.min(16) {
                        assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
                        assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
                        assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                    }
                }
            }
        }
    }

    #[test]
    fn primitive_generates_group() {
        for f in all_fields() {
            let g = f.primitive_element();
            let mut seen = std::collections::HashSet::new();
            let mut x = 1;
            for _ in 0..f.order() - 1 {
                seen.insert(x);
                x = f.mul(x, g);
            }
            assert_eq!(seen.len() as u32, f.order() - 1);
        }
    }

    #[test]
    fn extension_examples() {
        let f2 = field_construct(2, 1).unwrap();
        let e = extend_field(&f2, 3).unwrap();
        assert_eq!(e.big().order(), 8);
        assert_eq!(e.embed_raw(0), 0);
        assert_eq!(e.embed_raw(1), 1);
        assert_eq!(e.expand_raw(0), vec![0, 0, 0]);

        let f4 = field_construct(2, 2).unwrap();
        let e = extend_field(&f4, 2).unwrap();
        let big = e.big();
        let b = e.embed_image();
        assert_eq!(big.add(big.add(big.mul(b, b), b), 1), 0);

        let f3 = field_construct(3, 1).unwrap();
        let e = extend_field(&f3, 1).unwrap();
        assert_eq!(e.big(), &f3);
        for a in 0..3 {
            assert_eq!(e.embed_raw(a), a);
            assert_eq!(e.expand_raw(a), vec![a]);
        }
        let e = extend_field(&f4, 1).unwrap();
        for a in 0..4 {
            assert_eq!(e.embed_raw(a), a);
        }
    }

    #[test]
    fn embedding_and_coordinates_exhaustive() {
        for (p, r, z) in [(2, 1, 3), (2, 2, 2), (2, 1, 6), (3, 1, 2), (2, 2, 3), (3, 1, 3), (2, 3, 2), (5, 1, 2)] {
            let base = field_construct(p, r).unwrap();
            let e = extend_field(&base, z).unwrap();
            let big = e.big().clone();
            let d = base.order();
            let mut images = std::collections::HashSet::new();
            for a in 0..d {
                images.insert(e.embed_raw(a));
                let mut unit = vec![0; z as usize];
                unit[0] = a;
                assert_eq!(e.expand_raw(e.embed_raw(a)), unit);
                for b in 0..d {
                    assert_eq!(e.embed_raw(base.add(a, b)), big.add(e.embed_raw(a), e.embed_raw(b)));
                    assert_eq!(e.embed_raw(base.mul(a, b)), big.mul(e.embed_raw(a), e.embed_raw(b)));
                }
            }
            assert_eq!(images.len() as u32, d);
            assert_eq!(e.embed_raw(1), 1);

            let mut seen = std::collections::HashSet::new();
            for u in 0..big.order() {
                let cu = e.expand_raw(u);
                assert_eq!(e.compose_raw(&cu), u);
                seen.insert(cu.clone());
                for v in (0..big.order()).step_by(((big.order() / 16) as usize).max(1)) {
                    let cv = e.expand_raw(v);
                    let sum: Vec<u32> = cu.iter().zip(&cv).map(|(&a, &b)| base.add(a, b)).collect();
                    assert_eq!(e.expand_raw(big.add(u, v)), sum);
                }
                for a in 0..d {
                    let scaled: Vec<u32> = cu.iter().map(|&c| base.mul(a, c)).collect();
                    assert_eq!(e.expand_raw(big.mul(e.embed_raw(a), u)), scaled);
                }
            }
            assert_eq!(seen.len() as u32, big.order());
        }
    }

    #[test]
    fn large_field_random_triples() {
        use rand::{Rng, SeedableRng};
        for (p, r) in [(2, 16), (3, 9), (2, 20), (1021, 1)] {
            let f = field_construct(p, r).unwrap();
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
            for _ in 0..10_000 {
                let (a, b, c) = (rng.gen_range(0..f.order()), rng.gen_range(0..f.order()), rng.gen_range(0..f.order()));
                assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
                assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
                assert_eq!(f.mul(a, b), reference_mul(&f, a, b));
                if a != 0 {
                    assert_eq!(f.mul(a, f.inv(a).unwrap()), 1);
                }
            }
        }
    }
}
