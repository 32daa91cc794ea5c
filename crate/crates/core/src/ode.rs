//! Dormand–Prince 5(4) with step-size control and the fourth-order continuous
//! extension of Hairer, Nørsett & Wanner. States are fixed-size arrays.

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum OdeError {
    #[error("step size underflow at t = {t} (h = {h:e})")]
    StepUnderflow { t: f64, h: f64 },
    #[error("exceeded {max_steps} steps at t = {t}")]
    MaxStepsExceeded { max_steps: usize, t: f64 },
    #[error("non-finite state at t = {t}")]
    NonFinite { t: f64 },
}

#[derive(Debug, Clone, Copy)]
pub struct Tolerances {
    pub rel: f64,
    pub abs: f64,
    pub max_steps: usize,
}

const C2: f64 = 1.0 / 5.0;
const C3: f64 = 3.0 / 10.0;
const C4: f64 = 4.0 / 5.0;
const C5: f64 = 8.0 / 9.0;

const A21: f64 = 1.0 / 5.0;
const A31: f64 = 3.0 / 40.0;
const A32: f64 = 9.0 / 40.0;
const A41: f64 = 44.0 / 45.0;
const A42: f64 = -56.0 / 15.0;
const A43: f64 = 32.0 / 9.0;
const A51: f64 = 19372.0 / 6561.0;
const A52: f64 = -25360.0 / 2187.0;
const A53: f64 = 64448.0 / 6561.0;
const A54: f64 = -212.0 / 729.0;
const A61: f64 = 9017.0 / 3168.0;
const A62: f64 = -355.0 / 33.0;
const A63: f64 = 46732.0 / 5247.0;
const A64: f64 = 49.0 / 176.0;
const A65: f64 = -5103.0 / 18656.0;
const A71: f64 = 35.0 / 384.0;
const A73: f64 = 500.0 / 1113.0;
const A74: f64 = 125.0 / 192.0;
const A75: f64 = -2187.0 / 6784.0;
const A76: f64 = 11.0 / 84.0;

const E1: f64 = 71.0 / 57600.0;
const E3: f64 = -71.0 / 16695.0;
const E4: f64 = 71.0 / 1920.0;
const E5: f64 = -17253.0 / 339200.0;
const E6: f64 = 22.0 / 525.0;
const E7: f64 = -1.0 / 40.0;

const D1: f64 = -12715105075.0 / 11282082432.0;
const D3: f64 = 87487479700.0 / 32700410799.0;
const D4: f64 = -10690763975.0 / 1880347072.0;
const D5: f64 = 701980252875.0 / 199316789632.0;
const D6: f64 = -1453857185.0 / 822651844.0;
const D7: f64 = 69997945.0 / 29380423.0;

/// One accepted step and its interpolant on `[t0, t0 + h]`.
#[derive(Debug, Clone, Copy)]
pub struct DenseStep<const D: usize> {
    pub t0: f64,
    pub h: f64,
    pub y0: [f64; D],
    pub y1: [f64; D],
    rcont: [[f64; D]; 5],
}

impl<const D: usize> DenseStep<D> {
    pub fn t1(&self) -> f64 {
        self.t0 + self.h
    }

    /// Interpolated state at `t` (meant for `t` inside the step).
    pub fn at(&self, t: f64) -> [f64; D] {
        let s = (t - self.t0) / self.h;
        let s1 = 1.0 - s;
        let [r1, r2, r3, r4, r5] = &self.rcont;
        std::array::from_fn(|i| r1[i] + s * (r2[i] + s1 * (r3[i] + s * (r4[i] + s1 * r5[i]))))
    }
}

/// What the observer wants after seeing a step.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Flow {
    Continue,
    Stop,
}

#[derive(Debug, Clone, Copy)]
pub struct Outcome<const D: usize> {
    pub t: f64,
    pub y: [f64; D],
    pub steps: usize,
    pub rejected: usize,
    pub stopped_early: bool,
}

fn axpy<const D: usize>(y: &[f64; D], h: f64, terms: &[(f64, &[f64; D])]) -> [f64; D] {
    std::array::from_fn(|i| y[i] + h * terms.iter().map(|(c, k)| c * k[i]).sum::<f64>())
}

/// Integrates `y' = rhs(t, y)` from `t0` to `t_end` (either direction).
///
/// `observer` sees every accepted step with its dense interpolant and may stop
/// the integration; the returned state is then the end of that step.
pub fn integrate<const D: usize, F, O>(
    mut rhs: F,
    t0: f64,
    y0: [f64; D],
    t_end: f64,
    tol: Tolerances,
    mut observer: O,
) -> Result<Outcome<D>, OdeError>
where
    F: FnMut(f64, &[f64; D]) -> [f64; D],
    O: FnMut(&DenseStep<D>) -> Flow,
{
    let span = t_end - t0;
    let dir = if span >= 0.0 { 1.0 } else { -1.0 };
    let mut t = t0;
    let mut y = y0;
    let mut out = Outcome { t, y, steps: 0, rejected: 0, stopped_early: false };
    if span == 0.0 {
        return Ok(out);
    }

    let mut k1 = rhs(t, &y);
    let mut h = dir * initial_step(&mut rhs, t, &y, &k1, span.abs(), tol);
    let mut attempts = 0usize;
    let mut last_rejected = false;

    loop {
        if attempts >= tol.max_steps {
            return Err(OdeError::MaxStepsExceeded { max_steps: tol.max_steps, t });
        }
        attempts += 1;
        let remaining = t_end - t;
        let last = h.abs() >= remaining.abs() * (1.0 - 1e-12);
        if last {
            h = remaining;
        }
        if h.abs() <= 1e-14 * t.abs().max(span.abs()) {
            return Err(OdeError::StepUnderflow { t, h });
        }

        let k2 = rhs(t + C2 * h, &axpy(&y, h, &[(A21, &k1)]));
        let k3 = rhs(t + C3 * h, &axpy(&y, h, &[(A31, &k1), (A32, &k2)]));
        let k4 = rhs(t + C4 * h, &axpy(&y, h, &[(A41, &k1), (A42, &k2), (A43, &k3)]));
        let k5 = rhs(t + C5 * h, &axpy(&y, h, &[(A51, &k1), (A52, &k2), (A53, &k3), (A54, &k4)]));
        let k6 = rhs(t + h, &axpy(&y, h, &[(A61, &k1), (A62, &k2), (A63, &k3), (A64, &k4), (A65, &k5)]));
        let y1 = axpy(&y, h, &[(A71, &k1), (A73, &k3), (A74, &k4), (A75, &k5), (A76, &k6)]);
        let k7 = rhs(t + h, &y1);

        let mut err_sq = 0.0;
        for i in 0..D {
            let e = h * (E1 * k1[i] + E3 * k3[i] + E4 * k4[i] + E5 * k5[i] + E6 * k6[i] + E7 * k7[i]);
            let scale = tol.abs + tol.rel * y[i].abs().max(y1[i].abs());
            err_sq += (e / scale).powi(2);
        }
        let err = (err_sq / D as f64).sqrt();
        if !err.is_finite() || y1.iter().any(|v| !v.is_finite()) {
            if h.abs() < 1e-14 * span.abs() {
                return Err(OdeError::NonFinite { t });
            }
            h *= 0.1;
            out.rejected += 1;
            last_rejected = true;
            continue;
        }

        if err <= 1.0 {
            let rcont2: [f64; D] = std::array::from_fn(|i| y1[i] - y[i]);
            let rcont3: [f64; D] = std::array::from_fn(|i| h * k1[i] - rcont2[i]);
            let rcont4: [f64; D] = std::array::from_fn(|i| rcont2[i] - h * k7[i] - rcont3[i]);
            let rcont5: [f64; D] = std::array::from_fn(|i| {
                h * (D1 * k1[i] + D3 * k3[i] + D4 * k4[i] + D5 * k5[i] + D6 * k6[i] + D7 * k7[i])
            });
            let step = DenseStep { t0: t, h, y0: y, y1, rcont: [y, rcont2, rcont3, rcont4, rcont5] };
            t = if last { t_end } else { t + h };
            y = y1;
            k1 = k7;
            out.steps += 1;
            out.t = t;
            out.y = y;
            if observer(&step) == Flow::Stop {
                out.stopped_early = true;
                return Ok(out);
            }
            if last {
                return Ok(out);
            }
            let mut fac = 0.9 * err.max(1e-10).powf(-0.2);
            fac = fac.clamp(0.2, 10.0);
            if last_rejected {
                fac = fac.min(1.0);
            }
            last_rejected = false;
            h *= fac;
        } else {
            out.rejected += 1;
            last_rejected = true;
            h *= (0.9 * err.powf(-0.2)).max(0.2);
        }
    }
}

fn initial_step<const D: usize, F>(rhs: &mut F, t: f64, y: &[f64; D], f0: &[f64; D], span: f64, tol: Tolerances) -> f64
where
    F: FnMut(f64, &[f64; D]) -> [f64; D],
{
    let norm = |v: &[f64; D]| {
        let s: f64 = (0..D).map(|i| (v[i] / (tol.abs + tol.rel * y[i].abs())).powi(2)).sum();
        (s / D as f64).sqrt()
    };
    let d0 = norm(y);
    let d1 = norm(f0);
    let h0 = if d0 < 1e-5 || d1 < 1e-5 { 1e-6 } else { 0.01 * d0 / d1 };
    let h0 = h0.min(span);
    let y1: [f64; D] = std::array::from_fn(|i| y[i] + h0 * f0[i]);
    let f1 = rhs(t + h0, &y1);
    let diff: [f64; D] = std::array::from_fn(|i| f1[i] - f0[i]);
    let d2 = norm(&diff) / h0;
    let h1 = if d1.max(d2) <= 1e-15 { (h0 * 1e-3).max(1e-6) } else { (0.01 / d1.max(d2)).powf(0.2) };
    (100.0 * h0).min(h1).min(span)
}
