//! The exact calculus of f-vector changes under bistellar moves.
//!
//! For a move index `i` on an (n-1)-dimensional complex, the face counts
//! change by the closed-form column
//!
//! ```text
//! r[k][i] = binom(n - i, k - i) - binom(i + 1, n - k),   0 <= k, i <= n-1
//! ```
//!
//! Stacking these columns and imposing that a local summand formula
//! `psi(f) = b_{-1} + sum b_k f_k` be invariant under every move pins the
//! per-index gradients `H_i` down to a single scale; combining them with
//! the Dehn-Sommerville relations and the move-count accounting below
//! recovers `psi` uniquely up to that scale, and it always lands on a
//! multiple of the local Euler-characteristic formula. Everything in this
//! module is exact rational arithmetic; no floating point appears.

// indexed loops here mirror the matrix subscripts in the comments above
#![allow(clippy::needless_range_loop)]

use crate::complex::FVector;
use crate::rat::{binom, rat, rat_int, rat_str, Rat};
use num::{One, Signed, Zero};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CalcError {
    #[error("index pair (k={k}, i={i}) out of range for n={n}")]
    IndexOutOfRange { n: usize, k: usize, i: usize },
    #[error("f-vector has {got} entries, expected {expected}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("prefix does not extend to a valid f-vector")]
    InconsistentPrefix,
    #[error("f-vector does not satisfy the sphere relations")]
    NotASphereFVector,
    #[error("derived formula is not proportional to the Euler formula")]
    NotProportional,
}

/// Change of `f_k` under an `i`-move on an (n-1)-dimensional complex,
/// with the convention that out-of-range binomials vanish.
pub fn r_coeff(n: usize, k: usize, i: usize) -> Result<i64, CalcError> {
    if k >= n || i >= n {
        return Err(CalcError::IndexOutOfRange { n, k, i });
    }
    let (n, k, i) = (n as i64, k as i64, i as i64);
    Ok(binom(n - i, k - i) - binom(i + 1, n - k))
}

/// The full column of f-vector changes for one move index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MoveDelta {
    pub n: usize,
    pub i: usize,
    entries: Vec<i64>,
}

impl MoveDelta {
    pub fn column(n: usize, i: usize) -> Result<Self, CalcError> {
        if i >= n {
            return Err(CalcError::IndexOutOfRange { n, k: 0, i });
        }
        let entries = (0..n)
            .map(|k| r_coeff(n, k, i).expect("k and i in range"))
            .collect();
        Ok(MoveDelta { n, i, entries })
    }

    pub fn entries(&self) -> &[i64] {
        &self.entries
    }
}

/// Applies an `i`-move to an f-vector: `f + r[.][i]`.
pub fn beta(n: usize, f: &FVector, i: usize) -> Result<FVector, CalcError> {
    if f.len() != n {
        return Err(CalcError::LengthMismatch {
            expected: n,
            got: f.len(),
        });
    }
    let col = MoveDelta::column(n, i)?;
    Ok(FVector::from_entries(
        f.entries()
            .iter()
            .zip(col.entries())
            .map(|(a, d)| a + d)
            .collect(),
    ))
}

/// The f-vector of the boundary of the n-simplex: `f_k = binom(n+1, k+1)`.
pub fn f_delta(n: usize) -> FVector {
    FVector::from_entries(
        (0..n)
            .map(|k| binom(n as i64 + 1, k as i64 + 1))
            .collect(),
    )
}

/// An affine expression `constant + sum coeffs[k] * f_k` over the prefix
/// entries `f_0 .. f_{floor(n/2)-1}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AffineForm {
    pub constant: Rat,
    pub coeffs: Vec<Rat>,
}

impl AffineForm {
    pub fn eval(&self, prefix: &[i64]) -> Rat {
        assert_eq!(prefix.len(), self.coeffs.len());
        self.coeffs
            .iter()
            .zip(prefix)
            .fold(self.constant, |acc, (c, &f)| acc + *c * rat_int(f))
    }

    pub fn render(&self, lhs: &str) -> String {
        let mut s = format!("{lhs} =");
        let mut wrote = false;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            let term = if mag.is_one() {
                format!("f_{k}")
            } else {
                format!("{}*f_{k}", rat_str(&mag))
            };
            if !wrote {
                s.push_str(if c.is_negative() { " -" } else { " " });
            } else {
                s.push_str(if c.is_negative() { " - " } else { " + " });
            }
            s.push_str(&term);
            wrote = true;
        }
        if !self.constant.is_zero() || !wrote {
            if !wrote {
                s.push_str(&format!(" {}", rat_str(&self.constant)));
            } else if self.constant.is_negative() {
                s.push_str(&format!(" - {}", rat_str(&self.constant.abs())));
            } else {
                s.push_str(&format!(" + {}", rat_str(&self.constant)));
            }
        }
        s
    }
}

/// h-vector of an (n-1)-dimensional complex from its f-vector prefix:
/// `h_j = sum_{i<=j} (-1)^{j-i} binom(n-i, j-i) f_{i-1}`. Only the first
/// `j` prefix entries enter `h_j`, which is what makes completion work.
fn h_from_prefix(n: usize, prefix: &[i64], j: usize) -> i64 {
    let n_i = n as i64;
    let mut acc = 0i64;
    for i in 0..=j as i64 {
        let f_im1 = if i == 0 { 1 } else { prefix[i as usize - 1] };
        let sign = if (j as i64 - i) % 2 == 0 { 1 } else { -1 };
        acc += sign * binom(n_i - i, j as i64 - i) * f_im1;
    }
    acc
}

/// Completes a half f-vector of a sphere using h-vector symmetry
/// `h_j = h_{n-j}`: computes `h_0 .. h_{floor(n/2)}` from the prefix,
/// mirrors, and converts back via `f_{m-1} = sum_j binom(n-j, m-j) h_j`.
pub fn ds_complete(n: usize, prefix: &[i64]) -> Result<FVector, CalcError> {
    assert!(n >= 2, "sphere relations start at n = 2");
    let half = n / 2;
    if prefix.len() != half {
        return Err(CalcError::LengthMismatch {
            expected: half,
            got: prefix.len(),
        });
    }
    let mut h = vec![0i64; n + 1];
    for j in 0..=half {
        h[j] = h_from_prefix(n, prefix, j);
    }
    for j in 0..=half {
        h[n - j] = h[j];
    }
    let n_i = n as i64;
    let mut full = Vec::with_capacity(n);
    for m in 1..=n as i64 {
        let f: i64 = (0..=m)
            .map(|j| binom(n_i - j, m - j) * h[j as usize])
            .sum();
        if f < 0 {
            return Err(CalcError::InconsistentPrefix);
        }
        full.push(f);
    }
    if full[..half] != *prefix {
        return Err(CalcError::InconsistentPrefix);
    }
    Ok(FVector::from_entries(full))
}

/// Each entry `f_m` for `m >= floor(n/2)` as an affine form in the prefix,
/// obtained by running the completion symbolically.
pub fn ds_relations(n: usize) -> Vec<AffineForm> {
    assert!(n >= 2);
    let half = n / 2;
    // symbolic h_j: affine in the prefix coordinates
    let sym_h = |j: usize| -> AffineForm {
        let n_i = n as i64;
        let mut constant = rat_int(0);
        let mut coeffs = vec![rat_int(0); half];
        for i in 0..=j as i64 {
            let sign = if (j as i64 - i) % 2 == 0 { 1 } else { -1 };
            let c = rat_int(sign * binom(n_i - i, j as i64 - i));
            if i == 0 {
                constant += c;
            } else {
                coeffs[i as usize - 1] += c;
            }
        }
        AffineForm { constant, coeffs }
    };
    let h: Vec<AffineForm> = (0..=half).map(sym_h).collect();
    // h_j = h_{n-j} extends the computed half across the whole range
    let full_h: Vec<AffineForm> = (0..=n)
        .map(|j| if j <= half { h[j].clone() } else { h[n - j].clone() })
        .collect();
    let n_i = n as i64;
    (half..n)
        .map(|m| {
            let m_i = m as i64 + 1;
            let mut constant = rat_int(0);
            let mut coeffs = vec![rat_int(0); half];
            for j in 0..=m_i {
                let w = rat_int(binom(n_i - j, m_i - j));
                let hj = &full_h[j as usize];
                constant += w * hj.constant;
                for (c, hc) in coeffs.iter_mut().zip(&hj.coeffs) {
                    *c += w * *hc;
                }
            }
            AffineForm { constant, coeffs }
        })
        .collect()
}

/// The per-index invariance gradients `H_{-1} .. H_n`, normalised to
/// `H_{-1} = 1`. The recurrence `(n - i + 1) H_i + (i + 1) H_{i-1} = 0`
/// fixes every value up to scale; the symmetry `H_i = -H_{n-1-i}` and the
/// vanishing at `2i = n - 1` are then consistency constraints. When they
/// conflict (every odd `n`) the only solution is zero and the spectrum is
/// flagged degenerate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HSpectrum {
    pub n: usize,
    values: Vec<Rat>,
    pub degenerate: bool,
}

impl HSpectrum {
    /// `H_i` for `-1 <= i <= n`.
    pub fn h(&self, i: i32) -> Rat {
        self.values[(i + 1) as usize]
    }

    pub fn values(&self) -> &[Rat] {
        &self.values
    }
}

pub fn h_values(n: usize) -> HSpectrum {
    assert!(n >= 2);
    // candidate spectrum with the scale H_{-1} left at 1
    let mut vals = vec![Rat::one(); n + 2];
    for i in 0..n as i64 {
        let prev = vals[i as usize];
        vals[i as usize + 1] = -rat(i + 1, n as i64 - i + 1) * prev;
    }
    vals[n + 1] = -Rat::one();
    // intersect with the symmetry and vanishing constraints
    let mut degenerate = false;
    for i in 0..n as i32 {
        if vals[(i + 1) as usize] != -vals[(n as i32 - 1 - i + 1) as usize] {
            degenerate = true;
        }
        if 2 * i == n as i32 - 1 && !vals[(i + 1) as usize].is_zero() {
            degenerate = true;
        }
    }
    if degenerate {
        vals = vec![Rat::zero(); n + 2];
    }
    HSpectrum {
        n,
        values: vals,
        degenerate,
    }
}

/// Pairwise move-count differences `x_i = m_i - m_{n-1-i}` for a flip
/// sequence taking the boundary of the n-simplex to a sphere with the
/// given f-vector. Within the prefix range the delta matrix is lower
/// unitriangular, so forward substitution solves it exactly in integers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MoveCountDifference {
    pub n: usize,
    pub entries: Vec<i64>,
}

pub fn move_counts(n: usize, f: &FVector) -> Result<MoveCountDifference, CalcError> {
    assert!(n >= 2);
    if f.len() != n {
        return Err(CalcError::LengthMismatch {
            expected: n,
            got: f.len(),
        });
    }
    let half = n / 2;
    let completed =
        ds_complete(n, &f.entries()[..half]).map_err(|_| CalcError::NotASphereFVector)?;
    if &completed != f {
        return Err(CalcError::NotASphereFVector);
    }
    let delta = f_delta(n);
    let mut x = vec![0i64; half];
    for k in 0..half {
        let mut rhs = f.entries()[k] - delta.entries()[k];
        for (i, xi) in x.iter().enumerate().take(k) {
            rhs -= xi * r_coeff(n, k, i).expect("in range");
        }
        debug_assert_eq!(r_coeff(n, k, k).unwrap(), 1, "unitriangular diagonal");
        x[k] = rhs;
    }
    Ok(MoveCountDifference { n, entries: x })
}

/// Exact inverse of the prefix block of the move-delta matrix, so that
/// `x_i = sum_k c[i][k] (f_k - binom(n+1, k+1))`.
pub fn c_matrix(n: usize) -> Vec<Vec<i64>> {
    assert!(n >= 2);
    let half = n / 2;
    let r: Vec<Vec<i64>> = (0..half)
        .map(|k| (0..half).map(|i| r_coeff(n, k, i).expect("in range")).collect())
        .collect();
    // invert a lower unitriangular integer matrix by forward substitution;
    // row i of the inverse gives x_i = sum_k c[i][k] rhs_k
    let mut c = vec![vec![0i64; half]; half];
    for col in 0..half {
        c[col][col] = 1;
        for row in col + 1..half {
            let mut acc = 0i64;
            for mid in col..row {
                acc += r[row][mid] * c[mid][col];
            }
            c[row][col] = -acc;
        }
    }
    c
}

/// The move-count differences as symbolic affine forms in the prefix:
/// `x_i = sum_k c[i][k] f_k - sum_k c[i][k] binom(n+1, k+1)`.
pub fn move_count_forms(n: usize) -> Vec<AffineForm> {
    let half = n / 2;
    let c = c_matrix(n);
    let delta = f_delta(n);
    (0..half)
        .map(|i| {
            let coeffs: Vec<Rat> = (0..half).map(|k| rat_int(c[i][k])).collect();
            let constant = -(0..half)
                .map(|k| rat_int(c[i][k] * delta.entries()[k]))
                .fold(Rat::zero(), |a, b| a + b);
            AffineForm { constant, coeffs }
        })
        .collect()
}

/// An affine formula `psi(f) = b_{-1} + sum_{k} b_k f_k` evaluated on
/// f-vectors of (n-1)-dimensional complexes (so on vertex links of an
/// n-manifold). A reduced formula has `b_k = 0` for `k >= floor(n/2)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LocalFormula {
    pub n: usize,
    coeffs: Vec<Rat>, // index 0 holds b_{-1}
}

impl LocalFormula {
    pub fn new(n: usize, coeffs_from_minus_one: Vec<Rat>) -> Self {
        assert_eq!(coeffs_from_minus_one.len(), n + 1);
        LocalFormula {
            n,
            coeffs: coeffs_from_minus_one,
        }
    }

    pub fn zero(n: usize) -> Self {
        LocalFormula {
            n,
            coeffs: vec![Rat::zero(); n + 1],
        }
    }

    /// Coefficient `b_k` for `-1 <= k <= n-1`.
    pub fn b(&self, k: i32) -> Rat {
        self.coeffs[(k + 1) as usize]
    }

    pub fn coeffs_from_minus_one(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn eval(&self, f: &FVector) -> Rat {
        assert_eq!(
            f.len(),
            self.n,
            "formula for links of an {}-manifold applied to a {}-entry f-vector",
            self.n,
            f.len()
        );
        let mut acc = self.coeffs[0];
        for (k, c) in self.coeffs[1..].iter().enumerate() {
            acc += *c * rat_int(f.entries()[k]);
        }
        acc
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Rat::is_zero)
    }

    pub fn is_reduced(&self) -> bool {
        self.coeffs[1 + self.n / 2..].iter().all(Rat::is_zero)
    }

    /// Substitutes the sphere relations for every entry past the prefix,
    /// leaving an equivalent formula supported on `f_{-1} .. f_{half-1}`.
    pub fn reduce(&self) -> LocalFormula {
        let half = self.n / 2;
        let relations = ds_relations(self.n);
        let mut coeffs = self.coeffs.clone();
        for m in half..self.n {
            let b = coeffs[m + 1];
            if b.is_zero() {
                continue;
            }
            let rel = &relations[m - half];
            coeffs[0] += b * rel.constant;
            for k in 0..half {
                coeffs[k + 1] += b * rel.coeffs[k];
            }
            coeffs[m + 1] = Rat::zero();
        }
        LocalFormula {
            n: self.n,
            coeffs,
        }
    }

    pub fn scale(&self, by: Rat) -> LocalFormula {
        LocalFormula {
            n: self.n,
            coeffs: self.coeffs.iter().map(|c| *c * by).collect(),
        }
    }

    pub fn render(&self) -> String {
        let mut terms = Vec::new();
        if !self.coeffs[0].is_zero() {
            terms.push(rat_str(&self.coeffs[0]));
        }
        for (k, c) in self.coeffs[1..].iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            terms.push(format!("{}*f_{k}", rat_str(c)));
        }
        if terms.is_empty() {
            "0".into()
        } else {
            terms.join(" + ").replace("+ -", "- ")
        }
    }
}

/// Runs the derivation pipeline: gradients, move-count inversion, and
/// reconstruction of the unique invariant formula with `psi(f_delta) = 1`.
/// For degenerate (odd) `n` the only invariant formula is zero.
pub fn derive_psi(n: usize) -> LocalFormula {
    assert!(n >= 2);
    let spectrum = h_values(n);
    if spectrum.degenerate {
        return LocalFormula::zero(n);
    }
    let half = n / 2;
    let c = c_matrix(n);
    let delta = f_delta(n);
    let mut coeffs = vec![Rat::zero(); n + 1];
    coeffs[0] = Rat::one();
    for i in 0..half {
        let h = spectrum.h(i as i32);
        for k in 0..half {
            let w = h * rat_int(c[i][k]);
            coeffs[k + 1] += w;
            coeffs[0] -= w * rat_int(delta.entries()[k]);
        }
    }
    LocalFormula { n, coeffs }
}

/// The local Euler-characteristic formula
/// `psi(f) = 1 + sum_k (-1)^{k+1} f_k / (k + 2)`, optionally reduced
/// modulo the sphere relations.
pub fn euler_psi(n: usize, reduced: bool) -> LocalFormula {
    assert!(n >= 2);
    let mut coeffs = vec![Rat::one()];
    for k in 0..n as i64 {
        let sign = if k % 2 == 0 { -1 } else { 1 };
        coeffs.push(rat(sign, k + 2));
    }
    let full = LocalFormula { n, coeffs };
    if reduced {
        full.reduce()
    } else {
        full
    }
}

/// Outcome of comparing the derived formula against the Euler formula.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Proportionality {
    /// Both reduced formulas are nonzero and `derived = lambda * euler`.
    Lambda(Rat),
    /// Both reduced formulas vanish identically (odd `n`).
    BothZero,
}

pub fn proportionality(n: usize) -> Result<Proportionality, CalcError> {
    let derived = derive_psi(n);
    let euler = euler_psi(n, true);
    match (derived.is_zero(), euler.is_zero()) {
        (true, true) => Ok(Proportionality::BothZero),
        (true, false) | (false, true) => Err(CalcError::NotProportional),
        (false, false) => {
            let pivot = euler
                .coeffs_from_minus_one()
                .iter()
                .position(|c| !c.is_zero())
                .expect("nonzero formula has a pivot");
            let lambda =
                derived.coeffs_from_minus_one()[pivot] / euler.coeffs_from_minus_one()[pivot];
            if euler.scale(lambda) == derived {
                Ok(Proportionality::Lambda(lambda))
            } else {
                Err(CalcError::NotProportional)
            }
        }
    }
}

/// The globalisation of a local formula: summing `psi` over all vertex
/// links of an n-manifold gives `sum_k b_k (k + 2) f_{k+1}(M)` because
/// each (k+1)-face of the manifold is counted once per incident vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GlobalFormula {
    pub n: usize,
    /// Coefficients of `f_0(M) .. f_n(M)`.
    pub coeffs: Vec<Rat>,
}

impl GlobalFormula {
    pub fn eval(&self, f: &FVector) -> Rat {
        assert_eq!(f.len(), self.n + 1);
        self.coeffs
            .iter()
            .zip(f.entries())
            .fold(Rat::zero(), |acc, (c, &v)| acc + *c * rat_int(v))
    }
}

pub fn globalize(n: usize, psi: &LocalFormula) -> GlobalFormula {
    assert_eq!(psi.n, n);
    let coeffs = (-1..n as i32)
        .map(|k| psi.b(k) * rat_int(k as i64 + 2))
        .collect();
    GlobalFormula { n, coeffs }
}
