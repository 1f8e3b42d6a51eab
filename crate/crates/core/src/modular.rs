//! Finite-dimensional Tomita–Takesaki machinery.
//!
//! The standard carrier is the Hilbert–Schmidt space of `d×d` matrices,
//! vectorized row-major (`X_{ij}` sits at index `i·d + j`). Antilinear maps
//! are stored as a linear matrix `M` acting after entrywise conjugation:
//! `Y ↦ M·conj(Y)`.

use nalgebra::DVector;

use crate::error::{Error, Result};
use crate::operator::{c, funcalc, funcalc_re, require_density, HermitianSpectrum, Operator, C64, DEFAULT_TOL};

/// Largest matrix dimension accepted by [`build_modular`] (carrier `d²`).
pub const MAX_MODULAR_DIM: usize = 16;
/// Largest condition number of the state accepted by [`build_modular`].
pub const MAX_CONDITION: f64 = 1e12;

/// Row-major vectorization of a square matrix.
pub fn vectorize(x: &Operator) -> DVector<C64> {
    let (r, cols) = x.shape();
    DVector::from_fn(r * cols, |k, _| x.get(k / cols, k % cols))
}

/// Inverse of [`vectorize`] for a `d×d` matrix.
pub fn unvectorize(v: &DVector<C64>, d: usize) -> Operator {
    Operator::from_fn(d, d, |i, j| v[i * d + j])
}

/// Left multiplication `X ↦ AX` on the carrier.
pub fn left_multiplication(a: &Operator) -> Operator {
    a.kron(&Operator::identity(a.rows()))
}

/// Right multiplication `X ↦ XB` on the carrier.
pub fn right_multiplication(b: &Operator) -> Operator {
    Operator::identity(b.rows()).kron(&b.transpose())
}

/// Antilinear map `Y ↦ M·conj(Y)`.
#[derive(Clone, Debug)]
pub struct AntiLinear {
    pub matrix: Operator,
}

impl AntiLinear {
    pub fn apply(&self, v: &DVector<C64>) -> DVector<C64> {
        self.matrix.apply(&v.map(|z| z.conj()))
    }

    /// Linear matrix of the square of the map: `M·conj(M)`.
    pub fn square(&self) -> Operator {
        &self.matrix * &self.matrix.conj()
    }
}

/// Trace-like functional `τ(A) = tr(AW)` given by a positive weight `W`.
#[derive(Clone, Debug)]
pub struct TraceWeight {
    weight: Operator,
    beta: Option<f64>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct TraceAxiomReport {
    /// `max |τ(cA) − cτ(A)|`.
    pub homogeneity: f64,
    /// `max |τ(A+B) − τ(A) − τ(B)|` over positive pairs.
    pub additivity: f64,
    /// `max |τ(A*A) − τ(AA*)|`.
    pub cyclicity: f64,
    /// The weight is a multiple of the identity, so cyclicity must be exact.
    pub tracial_weight: bool,
    /// The check runs on finitely many matrices; semifiniteness and
    /// normality cannot be exhibited in finite dimension.
    pub finite_model_only: bool,
}

impl TraceWeight {
    pub fn new(weight: Operator) -> Result<Self> {
        let d = weight.require_square()?;
        let spectrum = HermitianSpectrum::new(&weight, DEFAULT_TOL)?;
        let scale = spectrum.max().abs().max(1.0);
        if spectrum.min() < -DEFAULT_TOL * scale {
            return Err(Error::NotPositive { min_eigenvalue: spectrum.min() });
        }
        debug_assert_eq!(weight.rows(), d);
        Ok(Self { weight: weight.hermitian_part(), beta: None })
    }

    /// Weight `e^{−βH}` for a Hermitian `H`.
    pub fn thermal(h: &Operator, beta: f64) -> Result<Self> {
        let w = funcalc_re(h, |x| (-beta * x).exp())?;
        let mut tw = Self::new(w)?;
        tw.beta = Some(beta);
        Ok(tw)
    }

    pub fn weight(&self) -> &Operator {
        &self.weight
    }

    pub fn beta(&self) -> Option<f64> {
        self.beta
    }

    pub fn dim(&self) -> usize {
        self.weight.rows()
    }

    pub fn tau(&self, a: &Operator) -> Result<C64> {
        a.checked_mul(&self.weight)?.trace()
    }

    /// `⟨A, B⟩_τ = τ(B*A)`.
    pub fn inner(&self, a: &Operator, b: &Operator) -> Result<C64> {
        self.tau(&b.adjoint().checked_mul(a)?)
    }

    pub fn axiom_report(&self, samples: &[Operator], scalar: f64) -> Result<TraceAxiomReport> {
        let mut homogeneity: f64 = 0.0;
        let mut additivity: f64 = 0.0;
        let mut cyclicity: f64 = 0.0;
        let positives: Vec<Operator> = samples.iter().map(|a| &a.adjoint() * a).collect();
        for a in samples {
            let lhs = self.tau(&a.scale_re(scalar))?;
            homogeneity = homogeneity.max((lhs - self.tau(a)? * scalar).norm());
            let aa = self.tau(&(&a.adjoint() * a))?;
            let a_a = self.tau(&(a * &a.adjoint()))?;
            cyclicity = cyclicity.max((aa - a_a).norm());
        }
        for (i, p) in positives.iter().enumerate() {
            for q in &positives[i..] {
                let r = self.tau(&(p + q))? - self.tau(p)? - self.tau(q)?;
                additivity = additivity.max(r.norm());
            }
        }
        let d = self.dim();
        let mean = self.weight.trace()?.re / d as f64;
        let tracial_weight = (&self.weight - &Operator::identity(d).scale_re(mean)).norm()
            <= DEFAULT_TOL * mean.abs().max(1.0);
        Ok(TraceAxiomReport {
            homogeneity,
            additivity,
            cyclicity,
            tracial_weight,
            finite_model_only: true,
        })
    }
}

/// GNS representation of the unital *-algebra generated by a list of
/// matrices, for the state `ω(A) = tr(TA)`.
#[derive(Clone, Debug)]
pub struct GnsRep {
    generators: Vec<Operator>,
    state: Operator,
    /// HS-orthonormal spanning set `B_a` of the generated algebra.
    span: Vec<Operator>,
    /// Columns `c_k`: the quotient basis is `e_k = Σ_a c_{ak} q(B_a)`.
    coefficients: Vec<DVector<C64>>,
    gram_eigenvalues: Vec<f64>,
    omega: DVector<C64>,
}

/// Null-space threshold relative to the largest Gram eigenvalue.
pub const GNS_NULL_THRESHOLD: f64 = 1e-10;

impl GnsRep {
    pub fn generators(&self) -> &[Operator] {
        &self.generators
    }

    /// Dimension of the generated algebra.
    pub fn algebra_dim(&self) -> usize {
        self.span.len()
    }

    /// Dimension of the GNS space `H_ω`.
    pub fn dim(&self) -> usize {
        self.coefficients.len()
    }

    /// `ω` is faithful iff the null ideal is trivial.
    pub fn faithful(&self) -> bool {
        self.dim() == self.algebra_dim()
    }

    pub fn gram_eigenvalues(&self) -> &[f64] {
        &self.gram_eigenvalues
    }

    /// The cyclic vector `Ω = q(I)` in the quotient basis.
    pub fn omega(&self) -> &DVector<C64> {
        &self.omega
    }

    pub fn state_value(&self, a: &Operator) -> Result<C64> {
        self.state.checked_mul(a)?.trace()
    }

    /// Coordinates of `q(A)` in the quotient basis.
    pub fn vector(&self, a: &Operator) -> Result<DVector<C64>> {
        let values = self
            .span
            .iter()
            .map(|b| self.state_value(&b.adjoint().checked_mul(a)?))
            .collect::<Result<Vec<_>>>()?;
        Ok(DVector::from_fn(self.dim(), |k, _| {
            self.coefficients[k]
                .iter()
                .zip(&values)
                .map(|(cb, v)| cb.conj() * v)
                .sum()
        }))
    }

    /// `π(A)` in the quotient basis.
    pub fn represent(&self, a: &Operator) -> Result<Operator> {
        let n = self.span.len();
        let mut w = vec![C64::new(0.0, 0.0); n * n];
        for (b, bb) in self.span.iter().enumerate() {
            let left = bb.adjoint().checked_mul(a)?;
            for (ai, ba) in self.span.iter().enumerate() {
                w[b * n + ai] = self.state_value(&left.checked_mul(ba)?)?;
            }
        }
        let k = self.dim();
        Ok(Operator::from_fn(k, k, |row, col| {
            let (ck, cl) = (&self.coefficients[row], &self.coefficients[col]);
            let mut s = C64::new(0.0, 0.0);
            for b in 0..n {
                for ai in 0..n {
                    s += cl[ai] * ck[b].conj() * w[b * n + ai];
                }
            }
            s
        }))
    }

    /// `|ω(A) − ⟨π(A)Ω, Ω⟩|`.
    pub fn state_residual(&self, a: &Operator) -> Result<f64> {
        let pa = self.represent(a)?;
        let lhs = self.state_value(a)?;
        let rhs = self.omega.dotc(&pa.apply(&self.omega));
        Ok((lhs - rhs).norm())
    }

    /// `|⟨q(A), q(B)⟩ − ω(B*A)|`.
    pub fn inner_residual(&self, a: &Operator, b: &Operator) -> Result<f64> {
        let (qa, qb) = (self.vector(a)?, self.vector(b)?);
        let lhs = qb.dotc(&qa);
        let rhs = self.state_value(&b.adjoint().checked_mul(a)?)?;
        Ok((lhs - rhs).norm())
    }
}

/// HS-orthonormal basis of the unital *-algebra generated by `generators`.
pub fn algebra_span(generators: &[Operator], d: usize) -> Result<Vec<Operator>> {
    let mut basis: Vec<Operator> = Vec::new();
    let push = |x: &Operator, basis: &mut Vec<Operator>| -> Result<bool> {
        let mut r = x.clone();
        for _ in 0..2 {
            for b in basis.iter() {
                let p = crate::operator::hs_inner(&r, b)?;
                r = &r - &b.scale(p);
            }
        }
        let n = r.frobenius_norm();
        if n > 1e-9 * x.frobenius_norm().max(1.0) {
            basis.push(r.scale_re(1.0 / n));
            Ok(true)
        } else {
            Ok(false)
        }
    };
    push(&Operator::identity(d), &mut basis)?;
    for g in generators {
        if g.shape() != (d, d) {
            return Err(Error::ShapeMismatch(format!("generator of shape {:?} on C^{d}", g.shape())));
        }
        push(g, &mut basis)?;
        push(&g.adjoint(), &mut basis)?;
    }
    let mut frontier = 0;
    while frontier < basis.len() && basis.len() < d * d {
        let grown = basis.len();
        for i in 0..grown {
            for j in frontier.min(i)..grown {
                let (a, b) = (basis[i].clone(), basis[j].clone());
                push(&(&a * &b), &mut basis)?;
                push(&(&b * &a), &mut basis)?;
            }
        }
        if basis.len() == grown {
            break;
        }
        frontier = grown;
    }
    Ok(basis)
}

pub fn build_gns(generators: &[Operator], t: &Operator) -> Result<GnsRep> {
    let d = t.require_square()?;
    require_density(t, DEFAULT_TOL)?;
    let span = algebra_span(generators, d)?;
    let n = span.len();
    let state = t.hermitian_part();
    let omega_of = |x: &Operator| -> C64 { (&state * x).trace().expect("square") };
    let gram = Operator::from_fn(n, n, |b, a| omega_of(&(&span[b].adjoint() * &span[a])));
    let spectrum = HermitianSpectrum::new(&gram, 1e-8)?;
    let top = spectrum.max().max(0.0);
    let v = spectrum.eigenvectors.as_matrix();
    let mut coefficients = Vec::new();
    for (k, &lambda) in spectrum.eigenvalues.iter().enumerate() {
        if lambda > GNS_NULL_THRESHOLD * top {
            let s = 1.0 / lambda.sqrt();
            coefficients.push(DVector::from_fn(n, |a, _| v[(a, k)] * s));
        }
    }
    let mut rep = GnsRep {
        generators: generators.to_vec(),
        state,
        span,
        coefficients,
        gram_eigenvalues: spectrum.eigenvalues.clone(),
        omega: DVector::zeros(0),
    };
    rep.omega = rep.vector(&Operator::identity(d))?;
    Ok(rep)
}

#[derive(Clone, Debug, PartialEq)]
pub struct ModularDiagnostics {
    /// `max_{kl} ‖Δ(E_kl) − T E_kl T^{−1}‖` over matrix units.
    pub delta_closed_form: f64,
    /// `max_{kl} ‖J(E_kl) − E_lk‖`.
    pub j_closed_form: f64,
    /// `max_{kl} ‖S(E_kl) − J Δ^{1/2}(E_kl)‖`.
    pub polar: f64,
    /// `‖J² − I‖`.
    pub j_involution: f64,
    /// `max_{kl} ‖S(E_kl Ω) − E_lk Ω‖`.
    pub s_defining: f64,
}

/// Modular objects of the vector `Ω = T^{1/2}` on the Hilbert–Schmidt carrier.
#[derive(Clone, Debug)]
pub struct ModularTriple {
    d: usize,
    state: Operator,
    omega: Operator,
    s: AntiLinear,
    j: AntiLinear,
    delta: Operator,
    delta_spectrum: HermitianSpectrum,
    condition: f64,
    diagnostics: ModularDiagnostics,
}

pub fn build_modular(t: &Operator) -> Result<ModularTriple> {
    let d = t.require_square()?;
    if d > MAX_MODULAR_DIM {
        return Err(Error::Guard(format!("d = {d} exceeds the carrier cap {MAX_MODULAR_DIM}")));
    }
    let spectrum = require_density(t, DEFAULT_TOL)?;
    if spectrum.min() <= 0.0 {
        return Err(Error::Singular);
    }
    let condition = spectrum.max() / spectrum.min();
    if condition > MAX_CONDITION {
        return Err(Error::IllConditioned { cond: condition, limit: MAX_CONDITION });
    }
    let omega = spectrum.apply(|x| c(x.sqrt()))?;
    let omega_inv = spectrum.apply(|x| c(1.0 / x.sqrt()))?;
    let n = d * d;

    // S(Y) = Ω^{−1} Y* Ω, i.e. Z ↦ Ω^{−1} Z^T Ω applied to Z = conj(Y).
    let m_s = Operator::from_fn(n, n, |row, col| {
        let (i, j) = (row / d, row % d);
        let (k, l) = (col / d, col % d);
        omega_inv.get(i, l) * omega.get(k, j)
    });
    let delta = (&m_s.adjoint() * &m_s).conj().hermitian_part();
    let delta_spectrum = HermitianSpectrum::new(&delta, DEFAULT_TOL)?;
    if delta_spectrum.min() <= 0.0 {
        return Err(Error::Singular);
    }
    let delta_inv_half = delta_spectrum.apply(|x| c(1.0 / x.sqrt()))?;
    let s = AntiLinear { matrix: m_s };
    let j = AntiLinear { matrix: &s.matrix * &delta_inv_half.conj() };

    let mut triple = ModularTriple {
        d,
        state: t.hermitian_part(),
        omega,
        s,
        j,
        delta,
        delta_spectrum,
        condition,
        diagnostics: ModularDiagnostics {
            delta_closed_form: 0.0,
            j_closed_form: 0.0,
            polar: 0.0,
            j_involution: 0.0,
            s_defining: 0.0,
        },
    };
    triple.diagnostics = triple.compute_diagnostics(&spectrum)?;
    Ok(triple)
}

impl ModularTriple {
    fn compute_diagnostics(&self, spectrum: &HermitianSpectrum) -> Result<ModularDiagnostics> {
        let d = self.d;
        let t_inv = spectrum.apply(|x| c(1.0 / x))?;
        let sqrt_delta = self.delta_power_re(0.5)?;
        let mut diag = ModularDiagnostics {
            delta_closed_form: 0.0,
            j_closed_form: 0.0,
            polar: 0.0,
            j_involution: (&self.j.square() - &Operator::identity(d * d)).norm(),
            s_defining: 0.0,
        };
        for k in 0..d {
            for l in 0..d {
                let e = Operator::from_fn(d, d, |i, j| c(if i == k && j == l { 1.0 } else { 0.0 }));
                let v = vectorize(&e);
                let de = unvectorize(&self.delta.apply(&v), d);
                let want = &(&self.state * &e) * &t_inv;
                diag.delta_closed_form = diag.delta_closed_form.max((&de - &want).norm());
                let je = unvectorize(&self.j.apply(&v), d);
                diag.j_closed_form = diag.j_closed_form.max((&je - &e.adjoint()).norm());
                let sx = self.s.apply(&v);
                let jdx = self.j.apply(&sqrt_delta.apply(&v));
                diag.polar = diag.polar.max((sx - jdx).norm());
                let s_on = unvectorize(&self.s.apply(&vectorize(&(&e * &self.omega))), d);
                let s_want = &e.adjoint() * &self.omega;
                diag.s_defining = diag.s_defining.max((&s_on - &s_want).norm());
            }
        }
        Ok(diag)
    }

    pub fn dim(&self) -> usize {
        self.d
    }

    pub fn state(&self) -> &Operator {
        &self.state
    }

    /// `Ω = T^{1/2}` as a matrix.
    pub fn omega(&self) -> &Operator {
        &self.omega
    }

    pub fn s(&self) -> &AntiLinear {
        &self.s
    }

    pub fn j(&self) -> &AntiLinear {
        &self.j
    }

    pub fn delta(&self) -> &Operator {
        &self.delta
    }

    pub fn delta_spectrum(&self) -> &HermitianSpectrum {
        &self.delta_spectrum
    }

    /// `log Δ`; the modular Hamiltonian is its negative.
    pub fn log_delta(&self) -> Operator {
        self.delta_spectrum.apply(|x| c(x.ln())).expect("Δ is positive")
    }

    pub fn min_eigenvalue(&self) -> f64 {
        self.delta_spectrum.min()
    }

    /// Condition number of the state `T`.
    pub fn condition(&self) -> f64 {
        self.condition
    }

    pub fn diagnostics(&self) -> &ModularDiagnostics {
        &self.diagnostics
    }

    /// `Δ^{p}` for real `p`.
    pub fn delta_power_re(&self, p: f64) -> Result<Operator> {
        self.delta_spectrum.apply(|x| c(x.powf(p)))
    }

    /// `Δ^{is}`.
    pub fn delta_it(&self, s: f64) -> Operator {
        self.delta_spectrum
            .apply(|x| C64::from_polar(1.0, s * x.ln()))
            .expect("Δ is positive")
    }

    pub fn apply_s(&self, x: &Operator) -> Operator {
        unvectorize(&self.s.apply(&vectorize(x)), self.d)
    }

    pub fn apply_j(&self, x: &Operator) -> Operator {
        unvectorize(&self.j.apply(&vectorize(x)), self.d)
    }

    /// `Δ^{p}` applied to a matrix on the carrier.
    pub fn apply_delta_power(&self, p: f64, x: &Operator) -> Result<Operator> {
        Ok(unvectorize(&self.delta_power_re(p)?.apply(&vectorize(x)), self.d))
    }

    /// `σ_t(A) = Δ^{−it} A Δ^{it}` for an operator on the carrier.
    pub fn flow(&self, t: f64, a: &Operator) -> Result<Operator> {
        let n = self.d * self.d;
        if a.shape() != (n, n) {
            return Err(Error::ShapeMismatch(format!("carrier operator must be {n}x{n}")));
        }
        if t == 0.0 {
            return Ok(a.clone());
        }
        Ok(&(&self.delta_it(-t) * a) * &self.delta_it(t))
    }

    /// Left multiplication by `A`, as a carrier operator.
    pub fn left(&self, a: &Operator) -> Result<Operator> {
        if a.shape() != (self.d, self.d) {
            return Err(Error::ShapeMismatch(format!("algebra element must be {0}x{0}", self.d)));
        }
        Ok(left_multiplication(a))
    }

    /// The algebra element `σ_t(L_A)(I)`, i.e. `T^{−it} A T^{it}`.
    pub fn flow_element(&self, t: f64, a: &Operator) -> Result<Operator> {
        let flowed = self.flow(t, &self.left(a)?)?;
        Ok(unvectorize(&flowed.apply(&vectorize(&Operator::identity(self.d))), self.d))
    }
}

/// `σ_t` applied to a carrier operator, or to an algebra element through
/// left multiplication (the result then has the same shape as the input).
pub fn modular_flow(m: &ModularTriple, t: f64, a: &Operator) -> Result<Operator> {
    if a.shape() == (m.d, m.d) {
        m.flow_element(t, a)
    } else {
        m.flow(t, a)
    }
}

/// Inverse of an invertible positive operator through its spectrum.
fn positive_inverse(t: &Operator) -> Result<Operator> {
    let s = HermitianSpectrum::new(t, DEFAULT_TOL)?;
    if s.min() <= 0.0 {
        return Err(Error::Singular);
    }
    s.apply(|x| c(1.0 / x))
}

/// `|tr(TAB) − tr(TB·TAT^{−1})|`.
pub fn kms_residual(t: &Operator, a: &Operator, b: &Operator) -> Result<f64> {
    require_density(t, DEFAULT_TOL)?;
    let t_inv = positive_inverse(t)?;
    let lhs = t.checked_mul(a)?.checked_mul(b)?.trace()?;
    let ta = t.checked_mul(a)?;
    // TAT^{−1} = A exactly when A and T commute in floating point.
    let rotated = if ta == a.checked_mul(t)? { a.clone() } else { ta.checked_mul(&t_inv)? };
    let rhs = t.checked_mul(b)?.checked_mul(&rotated)?.trace()?;
    Ok((lhs - rhs).norm())
}

#[derive(Clone, Debug, PartialEq)]
pub struct ModtimeReport {
    /// `(t, max over pairs of |⟨U_tA, U_tB⟩_τ − ⟨A, B⟩_τ|)`.
    pub unitarity: Vec<(f64, f64)>,
    /// `max ‖U_{t'}(U_t A) − U_{t+t'} A‖` over consecutive `(t, t')`.
    pub group_law: f64,
}

impl ModtimeReport {
    pub fn max_unitarity(&self) -> f64 {
        self.unitarity.iter().map(|p| p.1).fold(0.0, f64::max)
    }
}

/// Checks that `A ↦ T^{it} A T^{−it}` is unitary for `⟨A, B⟩_τ = tr(B*AW)`.
pub fn modtime_unitarity(
    w: &TraceWeight,
    t: &Operator,
    ts: &[f64],
    samples: &[(Operator, Operator)],
) -> Result<ModtimeReport> {
    let d = t.require_square()?;
    if d != w.dim() {
        return Err(Error::ShapeMismatch("weight and T differ in size".into()));
    }
    let spectrum = HermitianSpectrum::new(t, DEFAULT_TOL)?;
    if spectrum.min() <= 0.0 {
        return Err(Error::NotPositive { min_eigenvalue: spectrum.min() });
    }
    let u = |s: f64| spectrum.apply(|x| C64::from_polar(1.0, s * x.ln())).expect("T > 0");
    let conj = |s: f64, a: &Operator| -> Operator {
        if s == 0.0 {
            a.clone()
        } else {
            &(&u(s) * a) * &u(-s)
        }
    };
    let mut unitarity = Vec::with_capacity(ts.len());
    for &s in ts {
        let mut worst: f64 = 0.0;
        for (a, b) in samples {
            let lhs = w.inner(&conj(s, a), &conj(s, b))?;
            let rhs = w.inner(a, b)?;
            worst = worst.max((lhs - rhs).norm());
        }
        unitarity.push((s, worst));
    }
    let mut group_law: f64 = 0.0;
    for pair in ts.windows(2) {
        for (a, _) in samples {
            let two = conj(pair[1], &conj(pair[0], a));
            let one = conj(pair[0] + pair[1], a);
            group_law = group_law.max((&two - &one).norm());
        }
    }
    Ok(ModtimeReport { unitarity, group_law })
}

/// `‖JΔ^{1/2}(AT^{1/2}) − A*T^{1/2}‖` using the triple of `T`.
pub fn lemma_modular_residual(m: &ModularTriple, a: &Operator) -> Result<f64> {
    let x = a.checked_mul(&m.omega)?;
    let lhs = m.apply_j(&m.apply_delta_power(0.5, &x)?);
    let rhs = &a.adjoint() * &m.omega;
    Ok((&lhs - &rhs).norm())
}

/// `‖Δ^{1/2}(AΩ) − ΩA‖`.
pub fn half_delta_residual(m: &ModularTriple, a: &Operator) -> Result<f64> {
    let x = a.checked_mul(&m.omega)?;
    let lhs = m.apply_delta_power(0.5, &x)?;
    Ok((&lhs - &(&m.omega * a)).norm())
}

/// Numerical rank of `A ↦ AΩ` on the carrier; `d²` iff `Ω` is cyclic and
/// separating for the full matrix algebra.
pub fn cyclic_rank(omega: &Operator, tol: f64) -> usize {
    let s = right_multiplication(omega).singular_values();
    let top = s.first().copied().unwrap_or(0.0);
    s.iter().filter(|&&x| x > tol * top).count()
}

/// Shorthand for `e^{itH}` used by the checkers.
pub fn unitary_group(h: &Operator, t: f64) -> Result<Operator> {
    funcalc(h, |x| C64::from_polar(1.0, t * x))
}
