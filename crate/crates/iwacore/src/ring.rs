//! Arithmetic in the truncated Iwasawa algebra `Λ_{N,M} = (Z/p^N)[X]/(X^M)`.
//!
//! Elements are stored as canonical coefficient vectors of length `M` with
//! entries in `[0, p^N)`. The coefficient ring is fixed to the unramified
//! case `O = Z_p`, so the uniformizer is `p` itself.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::Error;

/// Default size bound for cofactor determinants.
pub const DET_SIZE_BOUND: usize = 8;

/// Working parameters of the truncated algebra.
///
/// `p` is an odd prime, coefficients live in `Z/p^N`, series are truncated at
/// `X^M`, and `u0` is the image in `1 + pZ` of the chosen topological
/// generator of `Γ` (used by twist substitutions).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct RingParams {
    p: u64,
    precision_p: u32,
    precision_x: usize,
    u0: u64,
    pn: u64, // p^N, cached
}

fn is_odd_prime(p: u64) -> bool {
    if p < 3 || p % 2 == 0 {
        return false;
    }
    let mut d = 3;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

impl RingParams {
    /// Create parameters with the default generator image `u0 = 1 + p`.
    pub fn new(p: u64, precision_p: u32, precision_x: usize) -> Result<Self, Error> {
        Self::with_u0(p, precision_p, precision_x, 1 + p)
    }

    pub fn with_u0(p: u64, precision_p: u32, precision_x: usize, u0: u64) -> Result<Self, Error> {
        if !is_odd_prime(p) || precision_p < 1 || precision_x < 2 {
            return Err(Error::BadParams);
        }
        // Keep p^N small enough that coefficient products fit comfortably in u64.
        let mut pn: u64 = 1;
        for _ in 0..precision_p {
            pn = pn.checked_mul(p).ok_or(Error::BadParams)?;
            if pn > 1 << 31 {
                return Err(Error::BadParams);
            }
        }
        let u0 = u0 % pn;
        if u0 % p != 1 {
            return Err(Error::BadParams);
        }
        Ok(RingParams {
            p,
            precision_p,
            precision_x,
            u0,
            pn,
        })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    /// The p-adic precision exponent `N`.
    pub fn precision_p(&self) -> u32 {
        self.precision_p
    }

    /// The X-adic truncation degree `M`.
    pub fn precision_x(&self) -> usize {
        self.precision_x
    }

    pub fn u0(&self) -> u64 {
        self.u0
    }

    /// `p^N`, the coefficient modulus.
    pub fn modulus(&self) -> u64 {
        self.pn
    }

    /// `p^n`, erroring out when it does not fit in the X-window semantics.
    pub fn pow_p(&self, n: u32) -> u64 {
        self.p.pow(n)
    }

    fn reduce_i64(&self, c: i64) -> u64 {
        let m = self.pn as i64;
        (((c % m) + m) % m) as u64
    }
}

/// An element of `Λ_{N,M}` in canonical form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IwasawaSeries {
    params: RingParams,
    coeffs: Vec<u64>, // length M, entries in [0, p^N)
}

/// p-adic valuation of a residue mod `p^N`, capped at `N`.
fn val_p(mut c: u64, p: u64, cap: u32) -> u32 {
    if c == 0 {
        return cap;
    }
    let mut v = 0;
    while v < cap && c % p == 0 {
        c /= p;
        v += 1;
    }
    v
}

/// Inverse of `a` modulo `m` (requires `gcd(a, m) = 1`).
fn mod_inverse(a: u64, m: u64) -> u64 {
    let (mut t, mut new_t): (i128, i128) = (0, 1);
    let (mut r, mut new_r): (i128, i128) = (m as i128, (a % m) as i128);
    while new_r != 0 {
        let q = r / new_r;
        (t, new_t) = (new_t, t - q * new_t);
        (r, new_r) = (new_r, r - q * new_r);
    }
    debug_assert_eq!(r, 1, "element is not a unit");
    (((t % m as i128) + m as i128) % m as i128) as u64
}

// Raw helpers on coefficient slices; all entries assumed reduced mod `pn`.

fn raw_mul(a: &[u64], b: &[u64], pn: u64, out_len: usize) -> Vec<u64> {
    let mut out = vec![0u64; out_len];
    for (i, &ai) in a.iter().enumerate() {
        if ai == 0 || i >= out_len {
            continue;
        }
        let top = out_len - i;
        for (j, &bj) in b.iter().take(top).enumerate() {
            if bj == 0 {
                continue;
            }
            let acc = (ai as u128 * bj as u128 + out[i + j] as u128) % pn as u128;
            out[i + j] = acc as u64;
        }
    }
    out
}

/// Inverse of a unit (constant term coprime to p) in `(Z/pn)[X]/(X^len)`.
fn raw_invert(a: &[u64], pn: u64, p: u64, len: usize) -> Vec<u64> {
    debug_assert!(a[0] % p != 0);
    let inv0 = mod_inverse(a[0], pn);
    let mut out = vec![0u64; len];
    out[0] = inv0;
    for j in 1..len {
        // b_j = -inv0 * sum_{k=1..=j} a_k b_{j-k}
        let mut acc: u128 = 0;
        for k in 1..=j.min(a.len() - 1) {
            acc = (acc + a[k] as u128 * out[j - k] as u128) % pn as u128;
        }
        let s = (acc % pn as u128) as u64;
        out[j] = (inv0 as u128 * ((pn - s) % pn) as u128 % pn as u128) as u64;
    }
    out
}

impl IwasawaSeries {
    /// Build a series from little-endian coefficients, reducing and
    /// truncating to canonical form.
    pub fn from_coeffs(params: RingParams, coeffs: &[i64]) -> Self {
        let m = params.precision_x;
        let mut c = vec![0u64; m];
        for (i, &x) in coeffs.iter().take(m).enumerate() {
            c[i] = params.reduce_i64(x);
        }
        IwasawaSeries { params, coeffs: c }
    }

    pub fn zero(params: RingParams) -> Self {
        IwasawaSeries {
            params,
            coeffs: vec![0; params.precision_x],
        }
    }

    pub fn one(params: RingParams) -> Self {
        Self::constant(params, 1)
    }

    pub fn constant(params: RingParams, c: i64) -> Self {
        let mut s = Self::zero(params);
        s.coeffs[0] = params.reduce_i64(c);
        s
    }

    /// `c · X^k`.
    pub fn monomial(params: RingParams, k: usize, c: i64) -> Self {
        let mut s = Self::zero(params);
        if k < params.precision_x {
            s.coeffs[k] = params.reduce_i64(c);
        }
        s
    }

    pub fn params(&self) -> &RingParams {
        &self.params
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn coeff(&self, j: usize) -> u64 {
        self.coeffs.get(j).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    /// Degree of the canonical polynomial representative, if nonzero.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.iter().rposition(|&c| c != 0)
    }

    fn check_params(&self, other: &Self) -> Result<(), Error> {
        if self.params == other.params {
            Ok(())
        } else {
            Err(Error::ParamMismatch)
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self, Error> {
        self.check_params(other)?;
        let pn = self.params.pn;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(&a, &b)| (a + b) % pn)
            .collect();
        Ok(IwasawaSeries {
            params: self.params,
            coeffs,
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self, Error> {
        self.check_params(other)?;
        let pn = self.params.pn;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(&a, &b)| (a + pn - b) % pn)
            .collect();
        Ok(IwasawaSeries {
            params: self.params,
            coeffs,
        })
    }

    pub fn mul(&self, other: &Self) -> Result<Self, Error> {
        self.check_params(other)?;
        let coeffs = raw_mul(
            &self.coeffs,
            &other.coeffs,
            self.params.pn,
            self.params.precision_x,
        );
        Ok(IwasawaSeries {
            params: self.params,
            coeffs,
        })
    }

    pub fn neg(&self) -> Self {
        let pn = self.params.pn;
        IwasawaSeries {
            params: self.params,
            coeffs: self.coeffs.iter().map(|&a| (pn - a) % pn).collect(),
        }
    }

    pub fn scale(&self, c: i64) -> Self {
        let pn = self.params.pn;
        let c = self.params.reduce_i64(c);
        IwasawaSeries {
            params: self.params,
            coeffs: self
                .coeffs
                .iter()
                .map(|&a| (a as u128 * c as u128 % pn as u128) as u64)
                .collect(),
        }
    }

    /// Mod-p reduction of the canonical representative, as little-endian
    /// coefficients in `[0, p)`.
    pub fn reduce_mod_p(&self) -> Vec<u64> {
        let p = self.params.p;
        self.coeffs.iter().map(|&c| c % p).collect()
    }

    /// `(μ, λ)` of the principal ideal `(f)`: `μ` is the minimal p-adic
    /// valuation over the coefficients and `λ` the least index attaining it.
    pub fn invariants(&self) -> Result<(u32, usize), Error> {
        let n = self.params.precision_p;
        let p = self.params.p;
        let mut mu = n;
        let mut lambda = None;
        for (j, &c) in self.coeffs.iter().enumerate() {
            let v = val_p(c, p, n);
            if v < mu {
                mu = v;
                lambda = Some(j);
            }
        }
        match lambda {
            Some(l) => Ok((mu, l)),
            None => Err(Error::PrecisionExhausted),
        }
    }

    /// Whether `f` is a distinguished polynomial, returning its degree.
    ///
    /// Distinguished means: monic of some degree `d` (with zero coefficients
    /// above `d`) and all lower coefficients divisible by `p`.
    pub fn distinguished_degree(&self) -> Option<usize> {
        let d = self.degree()?;
        if self.coeffs[d] != 1 {
            return None;
        }
        let p = self.params.p;
        if self.coeffs[..d].iter().all(|&c| c % p == 0) {
            Some(d)
        } else {
            None
        }
    }

    /// The substitution `X ↦ u0^i (1+X) − 1`, i.e. twisting by `χ^i`,
    /// applied to the canonical representative and truncated.
    ///
    /// Coefficients of index `j ≤ M − N` are independent of the choice of
    /// representative since `u0^i − 1 ≡ 0 (mod p)`.
    pub fn twist(&self, i: i64) -> Self {
        let pn = self.params.pn;
        let u = pow_unit(self.params.u0, i, pn);
        let a = (u + pn - 1) % pn; // u0^i - 1
        let m = self.params.precision_x;
        // Horner evaluation at a + uX.
        let mut out = vec![0u64; m];
        for &c in self.coeffs.iter().rev() {
            // out = out * (a + uX) + c
            let mut next = vec![0u64; m];
            for j in (0..m).rev() {
                if out[j] == 0 {
                    continue;
                }
                next[j] = (next[j] as u128 + out[j] as u128 * a as u128) as u64 % pn;
                if j + 1 < m {
                    next[j + 1] = (next[j + 1] as u128 + out[j] as u128 * u as u128) as u64 % pn;
                }
            }
            next[0] = (next[0] + c) % pn;
            out = next;
        }
        IwasawaSeries {
            params: self.params,
            coeffs: out,
        }
    }
}

/// `u^i mod pn` for a unit `u`, with negative exponents via inversion.
fn pow_unit(u: u64, i: i64, pn: u64) -> u64 {
    let base = if i < 0 { mod_inverse(u, pn) } else { u };
    let mut e = i.unsigned_abs();
    let mut acc: u64 = 1;
    let mut b = base;
    while e > 0 {
        if e & 1 == 1 {
            acc = (acc as u128 * b as u128 % pn as u128) as u64;
        }
        b = (b as u128 * b as u128 % pn as u128) as u64;
        e >>= 1;
    }
    acc
}

/// `ω_n = (1+X)^{p^n} − 1`, truncated. Errors when `p^n ≥ M` since the
/// leading term would be lost.
pub fn omega(params: RingParams, n: u32) -> Result<IwasawaSeries, Error> {
    let e = params.pow_p(n);
    if e as usize >= params.precision_x {
        return Err(Error::PrecisionExhausted);
    }
    // Binomial coefficients C(p^n, k) mod p^N, built incrementally over Z.
    // p^n <= M <= a few thousand, so build rows iteratively instead.
    let m = params.precision_x;
    let pn = params.pn;
    let mut row = vec![0u64; m]; // (1+X)^0
    row[0] = 1;
    for _ in 0..e {
        // multiply by (1+X)
        let mut next = vec![0u64; m];
        for j in 0..m {
            let mut acc = row[j] as u128;
            if j > 0 {
                acc += row[j - 1] as u128;
            }
            next[j] = (acc % pn as u128) as u64;
        }
        row = next;
    }
    row[0] = (row[0] + pn - 1) % pn;
    Ok(IwasawaSeries {
        params,
        coeffs: row,
    })
}

/// Result of Weierstrass preparation: `f = p^μ · unit · distinguished`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeierstrassData {
    pub mu: u32,
    pub degree: usize,
    pub distinguished: IwasawaSeries,
    pub unit: IwasawaSeries,
}

/// Weierstrass division: `f = q·g + r` with `deg r < d`, where `g` has
/// `μ(g) = 0` and `λ`-degree `d`.
///
/// The computation runs at X-precision `M + d` on the canonical
/// representatives, so the identity holds on all `M` retained coefficients.
pub fn weierstrass_divide(
    f: &IwasawaSeries,
    g: &IwasawaSeries,
) -> Result<(IwasawaSeries, IwasawaSeries), Error> {
    if f.params != g.params {
        return Err(Error::ParamMismatch);
    }
    let params = f.params;
    let (mu_g, d) = g.invariants()?;
    if mu_g > 0 {
        return Err(Error::NotDivisible);
    }
    if d >= params.precision_x {
        return Err(Error::PrecisionExhausted);
    }
    // Extended X-precision: the shift-down step corrupts the top d
    // coefficients per pass, and the corruption descends by d while gaining
    // a factor p each pass. Padding by d·(N+2) keeps everything below X^M
    // exact after N+1 passes.
    let m_ext = params.precision_x + d * (params.precision_p as usize + 2);
    let pn = params.pn;

    let mut fe = f.coeffs.clone();
    fe.resize(m_ext, 0);
    let mut ge = g.coeffs.clone();
    ge.resize(m_ext, 0);

    // g = low + X^d * u with u a unit of the extended ring.
    let low = &ge[..d];
    let u: Vec<u64> = ge[d..].to_vec();
    let u_inv = raw_invert(&u, pn, params.p, m_ext);

    // Fixed point of q ↦ u^{-1} · shift_d(f − q·low); low ≡ 0 (mod p), so
    // each pass gains one power of p.
    let shift_d = |s: &[u64]| -> Vec<u64> {
        let mut t = s[d..].to_vec();
        t.resize(m_ext, 0);
        t
    };
    let mut q = raw_mul(&u_inv, &shift_d(&fe), pn, m_ext);
    for _ in 0..params.precision_p {
        let ql = raw_mul(&q, low, pn, m_ext);
        let diff: Vec<u64> = fe.iter().zip(&ql).map(|(&a, &b)| (a + pn - b) % pn).collect();
        q = raw_mul(&u_inv, &shift_d(&diff), pn, m_ext);
    }

    // r = low-degree part of f − q·low.
    let ql = raw_mul(&q, low, pn, m_ext);
    let mut r = vec![0u64; params.precision_x];
    for j in 0..d {
        r[j] = (fe[j] + pn - ql[j]) % pn;
    }

    q.truncate(params.precision_x);
    Ok((
        IwasawaSeries { params, coeffs: q },
        IwasawaSeries { params, coeffs: r },
    ))
}

/// Weierstrass preparation: factor `f = p^μ · u · F` with `F` distinguished
/// of degree `λ(f)` and `u` a unit.
///
/// When `μ > 0` the factors `u` and `F` are determined (and returned as
/// canonical representatives) modulo `p^{N−μ}`; the recomposition identity
/// still holds exactly modulo `(p^N, X^M)`.
pub fn weierstrass_prepare(f: &IwasawaSeries) -> Result<WeierstrassData, Error> {
    let params = f.params;
    let (mu, d) = f.invariants()?;
    // Strip p^mu; coefficients are then known mod p^{N-mu}.
    let n_red = params.precision_p - mu;
    let red = RingParams::with_u0(params.p, n_red, params.precision_x, params.u0 % params.p.pow(n_red))?;
    let p_mu = params.p.pow(mu);
    let stripped: Vec<i64> = f.coeffs.iter().map(|&c| (c / p_mu) as i64).collect();
    let f1 = IwasawaSeries::from_coeffs(red, &stripped);

    // Divide X^d by f1: X^d = q·f1 + r with q a unit, so F = X^d − r = q·f1.
    let xd = IwasawaSeries::monomial(red, d, 1);
    let (q, r) = weierstrass_divide(&xd, &f1)?;
    let dist = xd.sub(&r)?;
    debug_assert!(dist.distinguished_degree() == Some(d));
    let unit = {
        let q_inv = raw_invert(&q.coeffs, red.pn, red.p, red.precision_x);
        IwasawaSeries {
            params: red,
            coeffs: q_inv,
        }
    };

    // Lift the canonical representatives back to precision N.
    let lift = |s: &IwasawaSeries| -> IwasawaSeries {
        let cs: Vec<i64> = s.coeffs.iter().map(|&c| c as i64).collect();
        IwasawaSeries::from_coeffs(params, &cs)
    };
    Ok(WeierstrassData {
        mu,
        degree: d,
        distinguished: lift(&dist),
        unit: lift(&unit),
    })
}

impl WeierstrassData {
    /// `p^μ · unit · distinguished`, for recomposition checks.
    pub fn recompose(&self) -> Result<IwasawaSeries, Error> {
        let params = *self.distinguished.params();
        let p_mu = params.p().checked_pow(self.mu).unwrap_or(0) % params.modulus().max(1);
        let prod = self.unit.mul(&self.distinguished)?;
        Ok(prod.scale(p_mu as i64))
    }
}

/// Determinant of a square matrix over `Λ_{N,M}` by expansion over column
/// subsets (dynamic programming, `O(2^n · n)` ring multiplications).
///
/// Matrices larger than [`DET_SIZE_BOUND`] are rejected: `Λ_{N,M}` has zero
/// divisors, which rules out fraction-free elimination.
pub fn det(matrix: &[Vec<IwasawaSeries>]) -> Result<IwasawaSeries, Error> {
    let n = matrix.len();
    if n > DET_SIZE_BOUND {
        return Err(Error::SizeExceeded);
    }
    if n == 0 {
        return Err(Error::NotSquare);
    }
    let params = *matrix[0][0].params();
    for row in matrix {
        if row.len() != n {
            return Err(Error::NotSquare);
        }
        for e in row {
            if *e.params() != params {
                return Err(Error::ParamMismatch);
            }
        }
    }
    // minors[mask] = det of rows 0..k over the column set `mask` (k = popcount).
    let mut minors = vec![IwasawaSeries::zero(params); 1 << n];
    minors[0] = IwasawaSeries::one(params);
    for mask in 1usize..1 << n {
        let k = mask.count_ones() as usize; // current row index + 1
        let mut acc = IwasawaSeries::zero(params);
        // expansion along row k−1: sign of column position t is (−1)^{k−1+t}
        let mut sign = if (k - 1) % 2 == 0 { 1i64 } else { -1 };
        for j in 0..n {
            if mask & (1 << j) == 0 {
                continue;
            }
            let sub = mask & !(1 << j);
            let term = matrix[k - 1][j].mul(&minors[sub])?;
            acc = if sign > 0 {
                acc.add(&term)?
            } else {
                acc.sub(&term)?
            };
            sign = -sign;
        }
        minors[mask] = acc;
    }
    Ok(minors[(1 << n) - 1].clone())
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn params34() -> RingParams {
        RingParams::new(3, 4, 8).unwrap()
    }

    fn s(p: RingParams, c: &[i64]) -> IwasawaSeries {
        IwasawaSeries::from_coeffs(p, c)
    }

    #[test]
    fn ring_mul_expands() {
        let p = params34();
        let a = s(p, &[3, 1]);
        let b = s(p, &[1, 1]);
        assert_eq!(a.mul(&b).unwrap(), s(p, &[3, 4, 1]));
    }

    #[test]
    fn mul_by_one_is_identity() {
        let p = params34();
        let a = s(p, &[5, 7, 2, 80]);
        assert_eq!(a.mul(&IwasawaSeries::one(p)).unwrap(), a);
    }

    #[test]
    fn truncation_at_xm() {
        let p = params34();
        let x = IwasawaSeries::monomial(p, 1, 1);
        let top = IwasawaSeries::monomial(p, 7, 1);
        assert!(x.mul(&top).unwrap().is_zero());
    }

    #[test]
    fn param_mismatch_rejected() {
        let a = IwasawaSeries::one(params34());
        let b = IwasawaSeries::one(RingParams::new(3, 4, 9).unwrap());
        assert_eq!(a.add(&b), Err(Error::ParamMismatch));
    }

    #[test]
    fn omega_small_cases() {
        let p = params34();
        let w0 = omega(p, 0).unwrap();
        assert_eq!(w0, s(p, &[0, 1]));
        let w1 = omega(p, 1).unwrap();
        assert_eq!(w1, s(p, &[0, 3, 3, 1]));
        // distinguishedness: ω_1 − X^3 ≡ 0 mod 3
        let diff = w1.sub(&IwasawaSeries::monomial(p, 3, 1)).unwrap();
        assert!(diff.coeffs().iter().all(|&c| c % 3 == 0));
    }

    #[test]
    fn omega_precision_exhausted() {
        let p = params34();
        assert_eq!(omega(p, 2), Err(Error::PrecisionExhausted)); // 9 >= 8
    }

    #[test]
    fn invariants_examples() {
        let p = params34();
        assert_eq!(s(p, &[9, 3]).invariants().unwrap(), (1, 1));
        // det [[X,3],[3,X]] = X^2 - 9
        assert_eq!(s(p, &[-9, 0, 1]).invariants().unwrap(), (0, 2));
        assert_eq!(IwasawaSeries::zero(p).invariants(), Err(Error::PrecisionExhausted));
        // p^N * anything is zero at precision
        assert_eq!(s(p, &[81, 162]).invariants(), Err(Error::PrecisionExhausted));
    }

    #[test]
    fn divide_examples() {
        let p = params34();
        let f = s(p, &[3, 4, 1]);
        let g = s(p, &[3, 1]);
        let (q, r) = weierstrass_divide(&f, &g).unwrap();
        assert_eq!(q, s(p, &[1, 1]));
        assert!(r.is_zero());

        let (q, r) = weierstrass_divide(&g, &g).unwrap();
        assert_eq!(q, IwasawaSeries::one(p));
        assert!(r.is_zero());

        // recomposition oracle for f = 1
        let f = IwasawaSeries::one(p);
        let (q, r) = weierstrass_divide(&f, &g).unwrap();
        let back = q.mul(&g).unwrap().add(&r).unwrap();
        assert_eq!(back, f);
        assert!(r.degree().map_or(true, |d| d < 1));
    }

    #[test]
    fn divide_requires_mu_zero() {
        let p = params34();
        let f = s(p, &[1, 1]);
        let g = s(p, &[3, 6]); // mu = 1
        assert_eq!(weierstrass_divide(&f, &g).err(), Some(Error::NotDivisible));
    }

    #[test]
    fn prepare_examples() {
        let p = params34();
        let w = weierstrass_prepare(&s(p, &[3, 4, 1])).unwrap();
        assert_eq!(w.mu, 0);
        assert_eq!(w.distinguished, s(p, &[3, 1]));
        assert_eq!(w.unit, s(p, &[1, 1]));

        let w = weierstrass_prepare(&s(p, &[3, 3])).unwrap();
        assert_eq!(w.mu, 1);
        assert_eq!(w.degree, 0);
        assert_eq!(w.distinguished.coeff(0), 1);
        assert_eq!(w.recompose().unwrap(), s(p, &[3, 3]));

        let w = weierstrass_prepare(&s(p, &[3, 1])).unwrap();
        assert_eq!(w.mu, 0);
        assert_eq!(w.distinguished, s(p, &[3, 1]));
        assert_eq!(w.unit, IwasawaSeries::one(p));
    }

    #[test]
    fn twist_examples() {
        let p = params34();
        let x = IwasawaSeries::monomial(p, 1, 1);
        assert_eq!(x.twist(1), s(p, &[3, 4])); // u0 = 4
        assert_eq!(x.twist(0), x);
    }

    #[test]
    fn twist_inverse_on_certified_window() {
        let p = params34();
        let f = s(p, &[2, 5, 1, 7, 3, 1, 1, 2]);
        let back = f.twist(2).twist(-2);
        let window = p.precision_x() - p.precision_p() as usize;
        assert_eq!(&back.coeffs()[..=window], &f.coeffs()[..=window]);
    }

    #[test]
    fn det_examples() {
        let p = params34();
        let x = IwasawaSeries::monomial(p, 1, 1);
        let three = IwasawaSeries::constant(p, 3);
        let zero = IwasawaSeries::zero(p);
        let m = vec![vec![x.clone(), zero.clone()], vec![zero.clone(), three.clone()]];
        // diag(X+3, 3): use X+3 in the corner
        let xp3 = s(p, &[3, 1]);
        let m1 = vec![vec![xp3, zero.clone()], vec![zero.clone(), three.clone()]];
        assert_eq!(det(&m1).unwrap(), s(p, &[9, 3]));
        let m2 = vec![vec![x.clone(), three.clone()], vec![three.clone(), x.clone()]];
        assert_eq!(det(&m2).unwrap(), s(p, &[-9, 0, 1]));
        let id = vec![
            vec![IwasawaSeries::one(p), zero.clone()],
            vec![zero.clone(), IwasawaSeries::one(p)],
        ];
        assert_eq!(det(&id).unwrap(), IwasawaSeries::one(p));
        let _ = m;
    }

    #[test]
    fn det_size_bound() {
        let p = params34();
        let row = vec![IwasawaSeries::one(p); 9];
        let m = vec![row; 9];
        assert_eq!(det(&m).err(), Some(Error::SizeExceeded));
    }
}
