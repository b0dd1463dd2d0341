//! Dormand-Prince 5(4) with adaptive step size for autonomous systems.

use crate::scalar::Real;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OdeOptions<T> {
    pub rtol: T,
    pub atol: T,
    pub max_steps: usize,
    /// Initial step; chosen automatically when `None`.
    pub h0: Option<T>,
}

impl<T: Real> Default for OdeOptions<T> {
    fn default() -> Self {
        OdeOptions {
            rtol: T::lit(1e-10),
            atol: T::lit(1e-12),
            max_steps: 200_000,
            h0: None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Control {
    Continue,
    Stop,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OdeStatus {
    /// Reached the requested end time.
    Finished,
    /// The step callback asked to stop.
    Stopped,
    StepLimit,
    StepUnderflow,
    NonFinite,
}

const A: [[f64; 6]; 7] = [
    [0.0; 6],
    [0.2, 0.0, 0.0, 0.0, 0.0, 0.0],
    [3.0 / 40.0, 9.0 / 40.0, 0.0, 0.0, 0.0, 0.0],
    [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0, 0.0, 0.0, 0.0],
    [19372.0 / 6561.0, -25360.0 / 2187.0, 64448.0 / 6561.0, -212.0 / 729.0, 0.0, 0.0],
    [9017.0 / 3168.0, -355.0 / 33.0, 46732.0 / 5247.0, 49.0 / 176.0, -5103.0 / 18656.0, 0.0],
    [35.0 / 384.0, 0.0, 500.0 / 1113.0, 125.0 / 192.0, -2187.0 / 6784.0, 11.0 / 84.0],
];
// difference between the fifth and fourth order weights
const E: [f64; 7] = [
    71.0 / 57600.0,
    0.0,
    -71.0 / 16695.0,
    71.0 / 1920.0,
    -17253.0 / 339200.0,
    22.0 / 525.0,
    -1.0 / 40.0,
];

fn rms<T: Real, const N: usize>(v: &[T; N], sk: &[T; N]) -> T {
    let s: T = (0..N).map(|i| (v[i] / sk[i]).powi(2)).sum();
    (s / T::lit(N as f64)).sqrt()
}

fn initial_step<T: Real, const N: usize>(
    f: &impl Fn(&[T; N]) -> [T; N],
    y0: &[T; N],
    f0: &[T; N],
    opts: &OdeOptions<T>,
) -> T {
    let sk: [T; N] = std::array::from_fn(|i| opts.atol + opts.rtol * y0[i].abs());
    let d0 = rms(y0, &sk);
    let d1 = rms(f0, &sk);
    let tiny = T::lit(1e-5);
    let h0 = if d0 < tiny || d1 < tiny {
        T::lit(1e-6)
    } else {
        T::lit(0.01) * d0 / d1
    };
    let y1: [T; N] = std::array::from_fn(|i| y0[i] + h0 * f0[i]);
    let f1 = f(&y1);
    let diff: [T; N] = std::array::from_fn(|i| f1[i] - f0[i]);
    let d2 = rms(&diff, &sk) / h0;
    let m = d1.max(d2);
    let h1 = if m <= T::lit(1e-15) {
        (h0 * T::lit(1e-3)).max(T::lit(1e-6))
    } else {
        (T::lit(0.01) / m).powf(T::lit(0.2))
    };
    (T::lit(100.0) * h0).min(h1)
}

/// Integrates `y' = f(y)` from `t = 0` to `t_end > 0`.
///
/// `on_step(t, y)` runs after every accepted step; the last step is clipped to land on `t_end`.
pub fn dopri5<T: Real, const N: usize>(
    f: impl Fn(&[T; N]) -> [T; N],
    y0: [T; N],
    t_end: T,
    opts: &OdeOptions<T>,
    mut on_step: impl FnMut(T, &[T; N]) -> Control,
) -> OdeStatus {
    let eps = T::epsilon();
    let rtol = opts.rtol.max(T::lit(100.0) * eps);
    let atol = opts.atol.max(T::min_positive_value());
    let lit = |v: f64| T::lit(v);
    let mut y = y0;
    let mut k: [[T; N]; 7] = [[T::zero(); N]; 7];
    k[0] = f(&y);
    let mut t = T::zero();
    let mut h = opts.h0.unwrap_or_else(|| initial_step(&f, &y, &k[0], opts));
    let mut rejected = false;
    let mut steps = 0usize;
    while t < t_end {
        if steps >= opts.max_steps {
            return OdeStatus::StepLimit;
        }
        steps += 1;
        let last = t + h >= t_end;
        if last {
            h = t_end - t;
        }
        if h <= lit(16.0) * eps * t.abs().max(T::one()) {
            return OdeStatus::StepUnderflow;
        }
        for s in 1..7 {
            let ys: [T; N] = std::array::from_fn(|i| {
                let mut acc = y[i];
                for (r, kr) in k.iter().enumerate().take(s) {
                    if A[s][r] != 0.0 {
                        acc += h * lit(A[s][r]) * kr[i];
                    }
                }
                acc
            });
            k[s] = f(&ys);
        }
        // the seventh stage is evaluated at the fifth order solution
        let y_new: [T; N] = std::array::from_fn(|i| {
            let mut acc = y[i];
            for r in 0..6 {
                if A[6][r] != 0.0 {
                    acc += h * lit(A[6][r]) * k[r][i];
                }
            }
            acc
        });
        let err_vec: [T; N] = std::array::from_fn(|i| {
            let mut acc = T::zero();
            for r in 0..7 {
                if E[r] != 0.0 {
                    acc += lit(E[r]) * k[r][i];
                }
            }
            h * acc
        });
        let sk: [T; N] = std::array::from_fn(|i| atol + rtol * y[i].abs().max(y_new[i].abs()));
        let err = rms(&err_vec, &sk);
        if !err.is_finite() || y_new.iter().any(|v| !v.is_finite()) {
            if h <= lit(16.0) * eps * t.abs().max(T::one()) {
                return OdeStatus::NonFinite;
            }
            h *= lit(0.25);
            rejected = true;
            continue;
        }
        if err <= T::one() {
            t = if last { t_end } else { t + h };
            y = y_new;
            k[0] = k[6];
            let fac_max = if rejected { T::one() } else { lit(10.0) };
            let fac = if err == T::zero() {
                fac_max
            } else {
                (lit(0.9) * err.powf(lit(-0.2))).min(fac_max).max(lit(0.2))
            };
            h *= fac;
            rejected = false;
            if on_step(t, &y) == Control::Stop {
                return OdeStatus::Stopped;
            }
        } else {
            h *= (lit(0.9) * err.powf(lit(-0.2))).max(lit(0.2));
            rejected = true;
        }
    }
    OdeStatus::Finished
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exponential_decay() {
        let mut last = (0.0, [1.0f64]);
        let st = dopri5(|y: &[f64; 1]| [-y[0]], [1.0], 3.0, &OdeOptions::default(), |t, y| {
            last = (t, *y);
            Control::Continue
        });
        assert_eq!(st, OdeStatus::Finished);
        assert_eq!(last.0, 3.0);
        assert!((last.1[0] - (-3.0f64).exp()).abs() < 1e-10);
    }

    #[test]
    fn oscillator_conserves_energy() {
        let mut end = [0.0f64; 2];
        dopri5(|y: &[f64; 2]| [y[1], -y[0]], [1.0, 0.0], 20.0, &OdeOptions::default(), |_, y| {
            end = *y;
            Control::Continue
        });
        assert!((end[0] - 20.0f64.cos()).abs() < 1e-8);
        assert!((end[0].powi(2) + end[1].powi(2) - 1.0).abs() < 1e-9);
    }

    #[test]
    fn single_precision() {
        let mut end = [0.0f32];
        let opts = OdeOptions::<f32> {
            rtol: 1e-5,
            atol: 1e-7,
            ..OdeOptions::default()
        };
        dopri5(|y: &[f32; 1]| [-2.0 * y[0]], [1.0f32], 1.0, &opts, |_, y| {
            end = *y;
            Control::Continue
        });
        assert!((end[0] - (-2.0f32).exp()).abs() < 1e-4);
    }

    #[test]
    fn callback_stops_and_step_limit() {
        let mut n = 0;
        let st = dopri5(|y: &[f64; 1]| [y[0]], [1.0], 10.0, &OdeOptions::default(), |_, _| {
            n += 1;
            if n == 3 {
                Control::Stop
            } else {
                Control::Continue
            }
        });
        assert_eq!(st, OdeStatus::Stopped);
        let opts = OdeOptions { max_steps: 2, ..OdeOptions::default() };
        let st = dopri5(|y: &[f64; 1]| [y[0]], [1.0], 10.0, &opts, |_, _| Control::Continue);
        assert_eq!(st, OdeStatus::StepLimit);
    }
}
