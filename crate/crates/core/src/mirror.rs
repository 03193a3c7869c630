//! Genus-zero generating functions for split zero loci in `P^n`.
//!
//! All J-type series use the reduced convention: the `exp(tH/ℏ)` prefactor is
//! stripped and the divisor variable is absorbed into `q`. Under this
//! convention the pushforward identity `i_*(J_Y) = J_E` holds coefficient by
//! coefficient.

use crate::coh::{ctop_split, hl_linear_inverse, CohClass, HLaurent};
use crate::error::{Error, Result};
use crate::rational::{self, int, Rational};
use crate::series::{
    exp_divisor_over_hbar, exp_scalar_over_hbar, qs_mul, scalar_revert, QSeries, ScalarSeries,
};
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

/// An ambient `P^n`, a split bundle `⊕ O(l_i)` on it, and a truncation order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeometrySpec {
    pub ambient_dim: usize,
    pub bundle_degrees: Vec<u32>,
    pub trunc_order: usize,
}

impl GeometrySpec {
    pub fn new(ambient_dim: usize, bundle_degrees: Vec<u32>, trunc_order: usize) -> Result<Self> {
        let spec = GeometrySpec {
            ambient_dim,
            bundle_degrees,
            trunc_order,
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn quintic(trunc_order: usize) -> Self {
        GeometrySpec {
            ambient_dim: 4,
            bundle_degrees: vec![5],
            trunc_order,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.ambient_dim < 1 {
            return Err(Error::InvalidGeometry("ambient dimension must be >= 1".into()));
        }
        if self.bundle_degrees.contains(&0) {
            return Err(Error::InvalidGeometry("bundle degrees must be positive".into()));
        }
        if self.bundle_degrees.len() > self.ambient_dim {
            return Err(Error::InvalidGeometry(format!(
                "rank {} exceeds ambient dimension {}",
                self.rank(),
                self.ambient_dim
            )));
        }
        if self.degree_sum() > self.ambient_dim as u64 + 1 {
            return Err(Error::InvalidGeometry(format!(
                "sum of degrees {} exceeds n + 1 = {}; zero locus is of general type",
                self.degree_sum(),
                self.ambient_dim + 1
            )));
        }
        Ok(())
    }

    pub fn rank(&self) -> usize {
        self.bundle_degrees.len()
    }

    pub fn degree_sum(&self) -> u64 {
        self.bundle_degrees.iter().map(|&l| l as u64).sum()
    }

    /// `n + 1 − Σ l_i`: zero for Calabi–Yau zero loci.
    pub fn fano_index(&self) -> u64 {
        self.ambient_dim as u64 + 1 - self.degree_sum()
    }

    pub fn ctop(&self) -> CohClass {
        ctop_split(&self.bundle_degrees, self.ambient_dim).0
    }

    fn ctop_scalar(&self) -> Rational {
        int(self.bundle_degrees.iter().map(|&l| l as i64).product())
    }

    pub fn is_quintic(&self) -> bool {
        self.ambient_dim == 4 && self.bundle_degrees == [5]
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FormTag {
    ReducedJ,
    CappedI,
    NormalizedJe,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JSeries {
    pub payload: QSeries,
    pub form: FormTag,
}

impl JSeries {
    /// The J-form contract: `q⁰` coefficient equals `leading` and no `ℏ^{-1}`
    /// (or non-negative, for `d ≥ 1`) powers of ℏ appear.
    pub fn check_j_form(&self, leading: &CohClass) -> Result<()> {
        let s = &self.payload;
        if s.coeff(0) != &HLaurent::from_class(leading.clone()) {
            return Err(Error::ContractViolation(format!(
                "q^0 coefficient is {}, expected {leading}",
                s.coeff(0)
            )));
        }
        s.assert_no_positive_hbar()?;
        for d in 0..=s.order() {
            let c = s.coeff(d);
            if !c.coeff(-1).is_zero() {
                return Err(Error::ContractViolation(format!(
                    "q^{d} has a nonzero hbar^-1 part {}",
                    c.coeff(-1)
                )));
            }
            if d > 0 && !c.coeff(0).is_zero() {
                return Err(Error::ContractViolation(format!(
                    "q^{d} has a nonzero hbar^0 part {}",
                    c.coeff(0)
                )));
            }
        }
        Ok(())
    }
}

/// `∏_{m=1..d} (H + mℏ)^{-(n+1)}`.
fn projective_denominator(n: usize, d: usize) -> HLaurent {
    let mut acc = HLaurent::one(n);
    for m in 1..=d as i64 {
        let inv = hl_linear_inverse(1, m, n).expect("m >= 1");
        for _ in 0..=n {
            acc = &acc * &inv;
        }
    }
    acc
}

/// Reduced J-function of `P^n`: `Σ_d q^d ∏_{m=1..d} (H + mℏ)^{-(n+1)}`.
pub fn j_projective(n: usize, order: usize) -> JSeries {
    let payload = QSeries::from_coeffs(n, order, (0..=order).map(|d| projective_denominator(n, d)))
        .expect("dimensions agree");
    JSeries {
        payload,
        form: FormTag::ReducedJ,
    }
}

/// The hypergeometric ratio without the `c_top(E)` cap:
/// `Σ_d q^d ∏_i ∏_{m=1..l_i d} (l_i H + mℏ) / ∏_{m=1..d} (H + mℏ)^{n+1}`.
pub fn i_function_uncapped(spec: &GeometrySpec) -> Result<QSeries> {
    spec.validate()?;
    let n = spec.ambient_dim;
    let mut coeffs = Vec::with_capacity(spec.trunc_order + 1);
    for d in 0..=spec.trunc_order {
        let mut num = HLaurent::one(n);
        for &l in &spec.bundle_degrees {
            for m in 1..=(l as i64) * d as i64 {
                num = &num * &HLaurent::linear(n, l as i64, m);
            }
        }
        coeffs.push(&num * &projective_denominator(n, d));
    }
    QSeries::from_coeffs(n, spec.trunc_order, coeffs)
}

/// The capped hypergeometric series `c_top(E) ∪ I`.
pub fn i_function(spec: &GeometrySpec) -> Result<JSeries> {
    let payload = i_function_uncapped(spec)?.mul_class(&spec.ctop())?;
    Ok(JSeries {
        payload,
        form: FormTag::CappedI,
    })
}

/// Output of [`normalize`]: the normalized series and the scalar data of the
/// change of variables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Normalization {
    pub je: JSeries,
    /// `f = g_1/F`, so that the mirror coordinate is `Q = q·exp(f(q))`.
    pub mirror_map_f: ScalarSeries,
    /// `g_0`, the scalar `ℏ^{-1}` part of the uncapped series.
    pub shift_g0: ScalarSeries,
    /// `F`, the `ℏ⁰` part of the uncapped series.
    pub unit_f: ScalarSeries,
}

impl Normalization {
    /// `Q(q) = q·exp(f(q))`.
    pub fn mirror_coordinate(&self) -> Result<ScalarSeries> {
        let d = self.mirror_map_f.order();
        Ok(ScalarSeries::q(d).mul(&self.mirror_map_f.exp()?))
    }

    /// `q(Q)`, the inverse of [`Normalization::mirror_coordinate`].
    pub fn inverse_mirror_coordinate(&self) -> Result<ScalarSeries> {
        scalar_revert(&self.mirror_coordinate()?)
    }

    pub fn is_trivial(&self) -> bool {
        let d = self.unit_f.order();
        self.unit_f == ScalarSeries::one(d) && self.shift_g0.is_zero() && self.mirror_map_f.is_zero()
    }
}

/// Brings a capped hypergeometric series into J-form.
///
/// Writing the uncapped series as `F + ℏ^{-1}(g_0 + g_1 H) + O(ℏ^{-2})`, the
/// result is `c_top(E) · [I/F · exp(−(g_0 + g_1 H)/(F ℏ))](q(Q))` with
/// `Q = q·exp(g_1/F)`. The cap commutes with every step, so the work is done on
/// the capped payload directly, reading `F, g_0, g_1` off the `H^r` and
/// `H^{r+1}` coefficients.
pub fn normalize(input: &JSeries, spec: &GeometrySpec) -> Result<Normalization> {
    spec.validate()?;
    if input.form == FormTag::ReducedJ {
        return Err(Error::InvalidInput("normalize expects a capped I or J_E series".into()));
    }
    let series = &input.payload;
    let n = spec.ambient_dim;
    if series.ambient_dim() != n {
        return Err(Error::DimensionMismatch {
            left: n,
            right: series.ambient_dim(),
        });
    }
    let order = series.order();
    let r = spec.rank();
    let cap = spec.ctop_scalar().recip();

    let unit_f = series.component(0, r).scale(&cap);
    let shift_g0 = series.component(-1, r).scale(&cap);
    // H^{r+1} vanishes when r = n; g_1 then acts trivially on the capped series.
    let g1 = if r < n {
        series.component(-1, r + 1).scale(&cap)
    } else {
        ScalarSeries::zero(order)
    };
    if unit_f.coeff(0) != Rational::one() {
        return Err(Error::ContractViolation(format!(
            "leading coefficient F(0) = {}, expected 1",
            rational::to_string(&unit_f.coeff(0))
        )));
    }
    if !shift_g0.coeff(0).is_zero() || !g1.coeff(0).is_zero() {
        return Err(Error::ContractViolation("hbar^-1 part has a q^0 term".into()));
    }

    let f_inv = unit_f.inverse()?;
    let g0_over_f = shift_g0.mul(&f_inv);
    let mirror_map_f = g1.mul(&f_inv);

    let mut out = series.mul_scalar(&f_inv)?;
    out = qs_mul(&out, &exp_scalar_over_hbar(&g0_over_f.scale(&-Rational::one()), n)?)?;
    out = qs_mul(&out, &exp_divisor_over_hbar(&mirror_map_f.scale(&-Rational::one()), n)?)?;

    let norm = Normalization {
        je: JSeries {
            payload: out,
            form: FormTag::NormalizedJe,
        },
        mirror_map_f,
        shift_g0,
        unit_f,
    };
    let payload = if norm.mirror_map_f.is_zero() {
        norm.je.payload.clone()
    } else {
        norm.je.payload.substitute(&norm.inverse_mirror_coordinate()?)?
    };
    let je = JSeries {
        payload,
        form: FormTag::NormalizedJe,
    };
    je.check_j_form(&spec.ctop())?;
    Ok(Normalization { je, ..norm })
}

/// A rational curve `Y ≅ P¹` embedded in `P²` with degree `e ∈ {1, 2}`:
/// a line or a conic, the zero locus of a section of `O(e)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EmbeddingModel {
    Line,
    Conic,
}

impl EmbeddingModel {
    pub fn degree(self) -> u32 {
        match self {
            EmbeddingModel::Line => 1,
            EmbeddingModel::Conic => 2,
        }
    }

    pub fn ambient_dim(self) -> usize {
        2
    }

    pub fn geometry(self, order: usize) -> GeometrySpec {
        GeometrySpec {
            ambient_dim: 2,
            bundle_degrees: vec![self.degree()],
            trunc_order: order,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            EmbeddingModel::Line => "line",
            EmbeddingModel::Conic => "conic",
        }
    }
}

/// `i_*` on classes of `Y ≅ P¹`: with `ω` the point class and `i^*H = eω`,
/// the projection formula gives `i_*(ω^j) = e^{1−j} H^{j+1}`.
fn push_class(e: u32, c: &CohClass) -> CohClass {
    let e = int(e as i64);
    let pushed_one = c.coeff(0) * &e;
    let pushed_point = c.coeff(1);
    CohClass::from_coeffs(2, [Rational::zero(), pushed_one, pushed_point])
}

/// Applies `i_*` to a reduced J-series of `Y ≅ P¹`, sending `q^β ↦ q^{eβ}`.
/// The result is truncated at `order` in the ambient Novikov variable.
pub fn pushforward(model: EmbeddingModel, jy: &JSeries, order: usize) -> Result<QSeries> {
    let s = &jy.payload;
    if s.ambient_dim() != 1 {
        return Err(Error::ModelMismatch(format!(
            "J_Y must live on P^1, got ambient dimension {}",
            s.ambient_dim()
        )));
    }
    let e = model.degree() as usize;
    if s.order() < order / e {
        return Err(Error::ModelMismatch(format!(
            "J_Y known to q^{} but q^{} needed for ambient order {order}",
            s.order(),
            order / e
        )));
    }
    let mut out = QSeries::zero(2, order);
    let mut coeffs: Vec<HLaurent> = out.coeffs().to_vec();
    for beta in 0..=order / e {
        coeffs[beta * e] = s.coeff(beta).map_classes(2, |c| push_class(model.degree(), c));
    }
    out = QSeries::from_coeffs(2, order, coeffs)?;
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Mismatch {
    pub d: usize,
    pub hbar_exp: i64,
    pub h_power: usize,
    #[serde(with = "rational::serde_str")]
    pub lhs: Rational,
    #[serde(with = "rational::serde_str")]
    pub rhs: Rational,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum VerificationStatus {
    Verified,
    Mismatch,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub model: EmbeddingModel,
    pub order: usize,
    pub status: VerificationStatus,
    pub mismatches: Vec<Mismatch>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.status == VerificationStatus::Verified
    }

    pub fn first_mismatch(&self) -> Option<&Mismatch> {
        self.mismatches.first()
    }
}

/// Entry-by-entry comparison of two series over the same ambient space.
pub fn compare_series(lhs: &QSeries, rhs: &QSeries) -> Vec<Mismatch> {
    use std::collections::BTreeMap;
    let mut table: BTreeMap<(usize, i64, usize), (Rational, Rational)> = BTreeMap::new();
    for (d, k, p, v) in lhs.entries() {
        table.entry((d, k, p)).or_insert_with(|| (Rational::zero(), Rational::zero())).0 = v;
    }
    for (d, k, p, v) in rhs.entries() {
        table.entry((d, k, p)).or_insert_with(|| (Rational::zero(), Rational::zero())).1 = v;
    }
    table
        .into_iter()
        .filter(|(_, (a, b))| a != b)
        .map(|((d, hbar_exp, h_power), (lhs, rhs))| Mismatch {
            d,
            hbar_exp,
            h_power,
            lhs,
            rhs,
        })
        .collect()
}

/// Checks `i_*(J_Y) = J_E` through `q^order` for a rational curve in `P²`.
///
/// The left side pushes forward the closed-form J of `P¹`; the right side
/// normalizes the hypergeometric series of `O(e)` on `P²`.
pub fn verify_mirror_identity(model: EmbeddingModel, order: usize) -> Result<VerificationReport> {
    let e = model.degree() as usize;
    let jy = j_projective(1, order / e);
    let lhs = pushforward(model, &jy, order)?;
    let spec = model.geometry(order);
    let rhs = normalize(&i_function(&spec)?, &spec)?.je.payload;
    let mismatches = compare_series(&lhs, &rhs);
    Ok(VerificationReport {
        model,
        order,
        status: if mismatches.is_empty() {
            VerificationStatus::Verified
        } else {
            VerificationStatus::Mismatch
        },
        mismatches,
    })
}

/// Expected dimension of `M̄_{g,k}(P^n, d)`: `(n−3)(1−g) + k + (n+1)d`.
pub fn expected_dim(n: usize, g: u32, npts: usize, d: usize) -> Result<i64> {
    if g > 0 {
        return Err(Error::UnsupportedGenus(g));
    }
    Ok((n as i64 - 3) + npts as i64 + (n as i64 + 1) * d as i64)
}

/// Rank of `E_d` (`Σ (l_i d + 1)`), or of `E'_d` (`Σ l_i d`) when `pointed`.
pub fn ed_rank(spec: &GeometrySpec, d: usize, pointed: bool) -> i64 {
    spec.bundle_degrees
        .iter()
        .map(|&l| l as i64 * d as i64 + if pointed { 0 } else { 1 })
        .sum()
}

/// For the `q^d` coefficient of a capped J_E series, every nonzero entry
/// `H^p ℏ^{-k}` satisfies `p − k = r + n − 2 − (vdim − rank E'_d)` where
/// `vdim = expected_dim(n, 0, 1, d)`: the cycle
/// `c_top(E'_d) ∩ [M̄_{0,1}]` pushed down with `c^j/ℏ^{j+2}` lands in
/// codimension `n − dim + j`, and the cap adds `r`.
pub fn degree_constraint(spec: &GeometrySpec, d: usize) -> i64 {
    let n = spec.ambient_dim;
    let vdim = expected_dim(n, 0, 1, d).expect("genus zero");
    spec.rank() as i64 + n as i64 - 2 - (vdim - ed_rank(spec, d, true))
}

/// Returns every entry of `je` that breaks [`degree_constraint`].
pub fn degree_violations(je: &QSeries, spec: &GeometrySpec) -> Vec<(usize, i64, usize)> {
    je.entries()
        .into_iter()
        .filter(|&(d, k, p, _)| p as i64 + k != degree_constraint(spec, d))
        .map(|(d, k, p, _)| (d, k, p))
        .collect()
}
