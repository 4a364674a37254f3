//! Finitely presented `Λ`-modules and their invariants.
//!
//! A module is `M = Λ^g / (Λ-span of relation vectors)`. Invariants come by
//! two independent routes: the characteristic generator (determinant of a
//! square presentation) and coinvariant growth counts over `F_p`.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use rand_core::RngCore;

use crate::error::Error;
use crate::fp::{self, FpMatrix, DIM_BUDGET};
use crate::ring::{det, IwasawaSeries, RingParams, DET_SIZE_BOUND};

fn is_zero_bigint(b: &BigInt) -> bool {
    b.sign() == num_bigint::Sign::NoSign
}

/// Provenance flag: `Certified` only when produced by a certifying
/// constructor, `Unknown` otherwise.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Flag {
    Certified,
    Unknown,
}

impl Flag {
    fn and(self, other: Flag) -> Flag {
        if self == Flag::Certified && other == Flag::Certified {
            Flag::Certified
        } else {
            Flag::Unknown
        }
    }

    pub fn is_certified(self) -> bool {
        self == Flag::Certified
    }
}

/// A finitely presented `Λ`-module with provenance flags.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PresentedModule {
    params: RingParams,
    generators: usize,
    /// Each relation is a length-`g` vector of series.
    relations: Vec<Vec<IwasawaSeries>>,
    pub no_finite_submodule: Flag,
    pub elementary_iso: Flag,
}

/// An invariant value together with its certification status.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Reported {
    Certified(u64),
    /// Best available value; for the growth route this is the stabilized
    /// intercept, which may exceed the true invariant by a finite-submodule
    /// defect (or, for `μ`, is only a lower bound).
    Uncertified(u64),
}

impl Reported {
    pub fn value(&self) -> u64 {
        match *self {
            Reported::Certified(v) | Reported::Uncertified(v) => v,
        }
    }

    pub fn is_certified(&self) -> bool {
        matches!(self, Reported::Certified(_))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    CharGenerator,
    Growth,
}

/// Output contract of both invariant routes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InvariantReport {
    pub rank: usize,
    pub mu: Reported,
    pub lambda: Reported,
    pub method: Method,
    pub precision_ok: bool,
}

impl InvariantReport {
    /// Whether the route concluded `μ = 0`.
    pub fn mu_is_zero(&self) -> bool {
        self.mu.value() == 0 && self.mu.is_certified()
    }
}

/// Sequence `(n, e_n)` with `e_n = e((M/p)_{Γ_n})`, plus the stabilized
/// slope `(e_{n+1} − e_n)/(p^{n+1} − p^n)` when it is integral and constant
/// over the last two steps.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GrowthTrace {
    pub p: u64,
    pub entries: Vec<(u32, usize)>,
    pub slope: Option<u64>,
}

/// Result of minor-rank estimation on the relation matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RankEstimate {
    pub rank: usize,
    /// False when some larger minor vanishes only at working precision.
    pub certified: bool,
}

impl PresentedModule {
    /// General constructor; flags start out `Unknown`.
    pub fn new(
        params: RingParams,
        generators: usize,
        relations: Vec<Vec<IwasawaSeries>>,
    ) -> Result<Self, Error> {
        for rel in &relations {
            if rel.len() != generators {
                return Err(Error::ParamMismatch);
            }
            for s in rel {
                if *s.params() != params {
                    return Err(Error::ParamMismatch);
                }
            }
        }
        Ok(PresentedModule {
            params,
            generators,
            relations,
            no_finite_submodule: Flag::Unknown,
            elementary_iso: Flag::Unknown,
        })
    }

    /// The zero module.
    pub fn zero(params: RingParams) -> Self {
        PresentedModule {
            params,
            generators: 0,
            relations: Vec::new(),
            no_finite_submodule: Flag::Certified,
            elementary_iso: Flag::Certified,
        }
    }

    /// The canonical elementary module
    /// `Λ^r ⊕ ⊕_i Λ/p^{a_i} ⊕ ⊕_j Λ/(F_j)`, with certified flags.
    pub fn elementary(
        params: RingParams,
        free_rank: usize,
        p_powers: &[u32],
        distinguished: &[IwasawaSeries],
    ) -> Result<Self, Error> {
        for f in distinguished {
            if f.distinguished_degree().is_none() {
                return Err(Error::NotDistinguished);
            }
            if *f.params() != params {
                return Err(Error::ParamMismatch);
            }
        }
        if p_powers.iter().any(|&a| a == 0) {
            return Err(Error::BadParams);
        }
        let g = free_rank + p_powers.len() + distinguished.len();
        let mut relations = Vec::new();
        for (i, &a) in p_powers.iter().enumerate() {
            let mut rel = vec![IwasawaSeries::zero(params); g];
            let pa = (params.p() as i64).pow(a.min(params.precision_p()));
            rel[free_rank + i] = IwasawaSeries::constant(params, pa);
            relations.push(rel);
        }
        for (j, f) in distinguished.iter().enumerate() {
            let mut rel = vec![IwasawaSeries::zero(params); g];
            rel[free_rank + p_powers.len() + j] = f.clone();
            relations.push(rel);
        }
        Ok(PresentedModule {
            params,
            generators: g,
            relations,
            no_finite_submodule: Flag::Certified,
            elementary_iso: Flag::Certified,
        })
    }

    pub fn params(&self) -> &RingParams {
        &self.params
    }

    pub fn generators(&self) -> usize {
        self.generators
    }

    pub fn relations(&self) -> &[Vec<IwasawaSeries>] {
        &self.relations
    }

    /// Block direct sum; flags are the conjunction of the inputs' flags.
    pub fn direct_sum(&self, other: &Self) -> Result<Self, Error> {
        if self.params != other.params {
            return Err(Error::ParamMismatch);
        }
        let g = self.generators + other.generators;
        let zero = IwasawaSeries::zero(self.params);
        let mut relations = Vec::new();
        for rel in &self.relations {
            let mut v = rel.clone();
            v.resize(g, zero.clone());
            relations.push(v);
        }
        for rel in &other.relations {
            let mut v = vec![zero.clone(); self.generators];
            v.extend(rel.iter().cloned());
            relations.push(v);
        }
        Ok(PresentedModule {
            params: self.params,
            generators: g,
            relations,
            no_finite_submodule: self.no_finite_submodule.and(other.no_finite_submodule),
            elementary_iso: self.elementary_iso.and(other.elementary_iso),
        })
    }

    /// `e((M/p)_{Γ_n})`, computed as the cokernel dimension of the assembled
    /// multiplication matrix over `F_p[X]/(X^{p^n})`.
    ///
    /// Mod `p`, the ideal `(ω_n, p)` equals `(X^{p^n}, p)`, so the
    /// coinvariant quotient is exactly `F_p[X]/(X^{p^n})` per generator.
    pub fn coinvariant_exponent(&self, n: u32) -> Result<usize, Error> {
        let p = self.params.p();
        let m = p.checked_pow(n).ok_or(Error::DimensionBudgetExceeded)? as usize;
        let rows = self.generators * m;
        let cols = self.relations.len() * m;
        if rows > DIM_BUDGET || cols > DIM_BUDGET {
            return Err(Error::DimensionBudgetExceeded);
        }
        if self.generators == 0 {
            return Ok(0);
        }
        if self.relations.is_empty() {
            return Ok(rows);
        }
        let mut big = FpMatrix::zeros(p, rows, cols);
        for (k, rel) in self.relations.iter().enumerate() {
            for (l, s) in rel.iter().enumerate() {
                let fbar = s.reduce_mod_p();
                if fbar.iter().all(|&c| c == 0) {
                    continue;
                }
                let block = fp::mult_matrix_dim(p, &fbar, m)?;
                big.set_block(l * m, k * m, &block);
            }
        }
        Ok(big.cokernel_dim())
    }

    /// Growth trace for `n = 0..=n_max`.
    pub fn growth_trace(&self, n_max: u32) -> Result<GrowthTrace, Error> {
        let p = self.params.p();
        let mut entries = Vec::new();
        for n in 0..=n_max {
            entries.push((n, self.coinvariant_exponent(n)?));
        }
        let slope = stabilized_slope(p, &entries);
        Ok(GrowthTrace {
            p,
            entries,
            slope,
        })
    }

    /// `Λ`-rank estimated as `g` minus the largest `k` with a nonzero
    /// `k × k` minor of the relation matrix.
    ///
    /// The estimate is flagged uncertified when some `(k+1)`-minor vanishes
    /// at working precision but its exact canonical-lift determinant over
    /// `Z[X]` does not.
    pub fn rank_estimate(&self) -> Result<RankEstimate, Error> {
        let g = self.generators;
        let nrel = self.relations.len();
        if g > DET_SIZE_BOUND || nrel > DET_SIZE_BOUND {
            return Err(Error::SizeExceeded);
        }
        let max_k = g.min(nrel);
        let mut found = 0usize;
        'outer: for k in (1..=max_k).rev() {
            for rows in subsets(g, k) {
                for cols in subsets(nrel, k) {
                    let m = self.submatrix(&rows, &cols);
                    if !det(&m)?.is_zero() {
                        found = k;
                        break 'outer;
                    }
                }
            }
        }
        let mut certified = true;
        if found < max_k {
            // Every (found+1)-minor vanished at precision; check whether any
            // of them is nonzero as an exact integer polynomial.
            let k = found + 1;
            'exact: for rows in subsets(g, k) {
                for cols in subsets(nrel, k) {
                    let m = self.exact_submatrix(&rows, &cols);
                    let d = exact_det(&m);
                    if !d.iter().all(is_zero_bigint) {
                        certified = false;
                        break 'exact;
                    }
                }
            }
        }
        Ok(RankEstimate {
            rank: g - found,
            certified,
        })
    }

    fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Vec<Vec<IwasawaSeries>> {
        rows.iter()
            .map(|&i| cols.iter().map(|&j| self.relations[j][i].clone()).collect())
            .collect()
    }

    fn exact_submatrix(&self, rows: &[usize], cols: &[usize]) -> Vec<Vec<Vec<BigInt>>> {
        rows.iter()
            .map(|&i| {
                cols.iter()
                    .map(|&j| {
                        self.relations[j][i]
                            .coeffs()
                            .iter()
                            .map(|&c| BigInt::from(c))
                            .collect()
                    })
                    .collect()
            })
            .collect()
    }

    /// Invariants via the characteristic generator: determinant of a square
    /// presentation of a torsion module.
    pub fn char_invariants(&self) -> Result<InvariantReport, Error> {
        if self.generators == 0 {
            return Ok(InvariantReport {
                rank: 0,
                mu: Reported::Certified(0),
                lambda: Reported::Certified(0),
                method: Method::CharGenerator,
                precision_ok: true,
            });
        }
        if self.relations.len() != self.generators {
            return Err(Error::NotSquare);
        }
        let mat: Vec<Vec<IwasawaSeries>> = (0..self.generators)
            .map(|i| (0..self.generators).map(|j| self.relations[j][i].clone()).collect())
            .collect();
        let d = det(&mat)?;
        let (mu, lambda) = d.invariants()?;
        Ok(InvariantReport {
            rank: 0,
            mu: Reported::Certified(mu as u64),
            lambda: Reported::Certified(lambda as u64),
            method: Method::CharGenerator,
            precision_ok: true,
        })
    }

    /// Default growth window: the trace stabilizes once `p^n ≥ max deg F_j`,
    /// which is reached well inside these windows at desk scale.
    pub fn default_window(&self) -> u32 {
        match self.params.p() {
            3 => 4,
            5 => 3,
            _ => {
                let mut n = 0;
                let mut pw = 1u64;
                while pw * self.params.p() <= 512 && n < 4 {
                    pw *= self.params.p();
                    n += 1;
                }
                n.max(2)
            }
        }
    }

    /// Invariants via coinvariant growth.
    ///
    /// `μ = 0` exactly when the stabilized slope equals the rank estimate;
    /// otherwise `μ` is reported uncertified with the block-count lower
    /// bound `slope − r`. The `λ` value is the stabilized intercept relative
    /// to the measured slope, certified only under a certified elementary
    /// isomorphism (otherwise it may exceed `λ` by a finite defect).
    pub fn invariants_via_growth(&self) -> Result<InvariantReport, Error> {
        if self.generators == 0 {
            return Ok(InvariantReport {
                rank: 0,
                mu: Reported::Certified(0),
                lambda: Reported::Certified(0),
                method: Method::Growth,
                precision_ok: true,
            });
        }
        let est = self.rank_estimate()?;
        let r = est.rank as u64;
        let trace = self.growth_trace(self.default_window())?;
        let slope = trace.slope.ok_or(Error::Unstable)?;
        let p = self.params.p();
        // intercepts relative to the measured slope, over the last two levels
        let last = &trace.entries[trace.entries.len() - 2..];
        let ic = |&(n, e): &(u32, usize)| e as i64 - (slope * p.pow(n)) as i64;
        let (i0, i1) = (ic(&last[0]), ic(&last[1]));
        if i0 != i1 || i1 < 0 {
            return Err(Error::Unstable);
        }
        let mu = if slope == r {
            Reported::Certified(0)
        } else {
            Reported::Uncertified(slope.saturating_sub(r).max(1))
        };
        let lambda = if self.elementary_iso.is_certified() {
            Reported::Certified(i1 as u64)
        } else {
            Reported::Uncertified(i1 as u64)
        };
        Ok(InvariantReport {
            rank: est.rank,
            mu,
            lambda,
            method: Method::Growth,
            precision_ok: est.certified,
        })
    }

    /// The twist `M(i)`: the substitution `X ↦ u0^i(1+X) − 1` applied
    /// entrywise to the relation matrix. Twisting is an equivalence, so
    /// flags are preserved.
    pub fn twist(&self, i: i64) -> Self {
        let relations = self
            .relations
            .iter()
            .map(|rel| rel.iter().map(|s| s.twist(i)).collect())
            .collect();
        PresentedModule {
            params: self.params,
            generators: self.generators,
            relations,
            no_finite_submodule: self.no_finite_submodule,
            elementary_iso: self.elementary_iso,
        }
    }

    /// A module `M'` with the same mod-p presentation: the relation matrix
    /// plus `p` times a seeded random matrix. `M'/p ≅ M/p` since cokernels
    /// commute with reduction.
    pub fn mod_p_isomorphic_perturbation(&self, rng: &mut impl RngCore) -> Self {
        let pn = self.params.modulus();
        let p = self.params.p();
        let relations = self
            .relations
            .iter()
            .map(|rel| {
                rel.iter()
                    .map(|s| {
                        let noise: Vec<i64> = (0..self.params.precision_x())
                            .map(|_| (p * (rng.next_u64() % (pn / p))) as i64)
                            .collect();
                        s.add(&IwasawaSeries::from_coeffs(self.params, &noise)).unwrap()
                    })
                    .collect()
            })
            .collect();
        PresentedModule {
            params: self.params,
            generators: self.generators,
            relations,
            no_finite_submodule: Flag::Unknown,
            elementary_iso: Flag::Unknown,
        }
    }

    /// Conjugate the presentation by seeded invertible row and column
    /// operations over `Λ`. The module is unchanged up to isomorphism, so
    /// flags are preserved.
    pub fn randomize_presentation(&self, rng: &mut impl RngCore, steps: usize) -> Self {
        let mut m = self.clone();
        let g = m.generators;
        let nrel = m.relations.len();
        if g == 0 || nrel == 0 {
            return m;
        }
        for _ in 0..steps {
            match rng.next_u64() % 3 {
                0 if g >= 2 => {
                    // row op: generator basis change e_i ↦ e_i − s·e_j,
                    // i.e. coordinate i picks up s times coordinate j.
                    let i = (rng.next_u64() as usize) % g;
                    let mut j = (rng.next_u64() as usize) % g;
                    if i == j {
                        j = (j + 1) % g;
                    }
                    let s = small_series(self.params, rng);
                    for rel in &mut m.relations {
                        let add = s.mul(&rel[j]).unwrap();
                        rel[i] = rel[i].add(&add).unwrap();
                    }
                }
                1 if nrel >= 2 => {
                    // column op: relation k += s · relation l
                    let k = (rng.next_u64() as usize) % nrel;
                    let mut l = (rng.next_u64() as usize) % nrel;
                    if k == l {
                        l = (l + 1) % nrel;
                    }
                    let s = small_series(self.params, rng);
                    let src = m.relations[l].clone();
                    for (e, t) in m.relations[k].iter_mut().zip(&src) {
                        *e = e.add(&s.mul(t).unwrap()).unwrap();
                    }
                }
                _ => {
                    // unit-scale a relation
                    let k = (rng.next_u64() as usize) % nrel;
                    let u = unit_series(self.params, rng);
                    for e in &mut m.relations[k] {
                        *e = e.mul(&u).unwrap();
                    }
                }
            }
        }
        m
    }

    /// Whether two presentations reduce to the same matrix mod `p`.
    pub fn congruent_mod_p(&self, other: &Self) -> bool {
        self.generators == other.generators
            && self.relations.len() == other.relations.len()
            && self.params.p() == other.params.p()
            && self
                .relations
                .iter()
                .zip(&other.relations)
                .all(|(a, b)| {
                    a.iter()
                        .zip(b)
                        .all(|(x, y)| x.reduce_mod_p() == y.reduce_mod_p())
                })
    }
}

/// Block upper-triangular extension `B` of torsion `A` by `C`:
/// relations `[[R_A, S], [0, R_C]]` with coupling block `S`. When `A` is
/// torsion with nonzero determinant this presents a short exact sequence
/// `0 → A → B → C → 0`.
pub fn block_extension(
    a: &PresentedModule,
    c: &PresentedModule,
    coupling: &[Vec<IwasawaSeries>],
) -> Result<PresentedModule, Error> {
    if a.params != c.params {
        return Err(Error::ParamMismatch);
    }
    if coupling.len() != c.relations.len() {
        return Err(Error::ParamMismatch);
    }
    let g = a.generators + c.generators;
    let zero = IwasawaSeries::zero(a.params);
    let mut relations = Vec::new();
    for rel in &a.relations {
        let mut v = rel.clone();
        v.resize(g, zero.clone());
        relations.push(v);
    }
    for (rel, s) in c.relations.iter().zip(coupling) {
        if s.len() != a.generators {
            return Err(Error::ParamMismatch);
        }
        let mut v = s.clone();
        v.extend(rel.iter().cloned());
        relations.push(v);
    }
    PresentedModule::new(a.params, g, relations)
}

fn stabilized_slope(p: u64, entries: &[(u32, usize)]) -> Option<u64> {
    if entries.len() < 3 {
        return None;
    }
    let k = entries.len();
    let step = |a: &(u32, usize), b: &(u32, usize)| -> Option<u64> {
        let de = (b.1 - a.1) as u64;
        let dp = p.pow(b.0) - p.pow(a.0);
        if de % dp == 0 {
            Some(de / dp)
        } else {
            None
        }
    };
    let s1 = step(&entries[k - 3], &entries[k - 2])?;
    let s2 = step(&entries[k - 2], &entries[k - 1])?;
    if s1 == s2 {
        Some(s2)
    } else {
        None
    }
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

fn small_series(params: RingParams, rng: &mut impl RngCore) -> IwasawaSeries {
    let coeffs: Vec<i64> = (0..3).map(|_| (rng.next_u64() % params.p()) as i64).collect();
    IwasawaSeries::from_coeffs(params, &coeffs)
}

fn unit_series(params: RingParams, rng: &mut impl RngCore) -> IwasawaSeries {
    let p = params.p();
    let mut coeffs: Vec<i64> = (0..3).map(|_| (rng.next_u64() % p) as i64).collect();
    coeffs[0] = 1 + (rng.next_u64() % (p - 1)) as i64; // unit constant term
    IwasawaSeries::from_coeffs(params, &coeffs)
}

/// Exact determinant of a matrix of integer polynomials (canonical lifts),
/// by the same column-subset expansion as the truncated-ring determinant.
fn exact_det(matrix: &[Vec<Vec<BigInt>>]) -> Vec<BigInt> {
    let n = matrix.len();
    let zero: Vec<BigInt> = Vec::new();
    let one = vec![BigInt::from(1)];
    let mut minors = vec![zero; 1 << n];
    minors[0] = one;
    for mask in 1usize..1 << n {
        let k = mask.count_ones() as usize;
        let mut acc: Vec<BigInt> = Vec::new();
        // expansion along row k−1: sign of column position t is (−1)^{k−1+t}
        let mut sign = if (k - 1) % 2 == 0 { 1i32 } else { -1 };
        for j in 0..n {
            if mask & (1 << j) == 0 {
                continue;
            }
            let sub = mask & !(1 << j);
            let term = zpoly_mul(&matrix[k - 1][j], &minors[sub]);
            acc = zpoly_add(&acc, &term, sign);
            sign = -sign;
        }
        minors[mask] = acc;
    }
    minors.swap_remove((1 << n) - 1)
}

fn zpoly_mul(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::from(0); a.len() + b.len() - 1];
    for (i, ai) in a.iter().enumerate() {
        if is_zero_bigint(ai) {
            continue;
        }
        for (j, bj) in b.iter().enumerate() {
            if is_zero_bigint(bj) {
                continue;
            }
            out[i + j] += ai * bj;
        }
    }
    out
}

fn zpoly_add(a: &[BigInt], b: &[BigInt], sign: i32) -> Vec<BigInt> {
    let len = a.len().max(b.len());
    let mut out = vec![BigInt::from(0); len];
    for (i, v) in a.iter().enumerate() {
        out[i] += v;
    }
    for (i, v) in b.iter().enumerate() {
        if sign > 0 {
            out[i] += v;
        } else {
            out[i] -= v;
        }
    }
    out
}
