//! Adaptive Simpson quadrature with interval bisection.

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SimpsonOptions {
    pub abs_tol: f64,
    pub max_depth: u32,
}

impl Default for SimpsonOptions {
    fn default() -> Self {
        SimpsonOptions {
            abs_tol: 1e-9,
            max_depth: 40,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Integral {
    pub value: f64,
    pub evaluations: usize,
    /// False if some subinterval hit `max_depth` before meeting its tolerance.
    pub converged: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, thiserror::Error)]
#[error("integrand is not finite at x = {at}")]
pub struct NonFiniteIntegrand {
    pub at: f64,
}

struct State<F> {
    f: F,
    evaluations: usize,
    converged: bool,
    max_depth: u32,
}

impl<F: FnMut(f64) -> f64> State<F> {
    fn eval(&mut self, x: f64) -> Result<f64, NonFiniteIntegrand> {
        self.evaluations += 1;
        let y = (self.f)(x);
        if y.is_finite() {
            Ok(y)
        } else {
            Err(NonFiniteIntegrand { at: x })
        }
    }

    #[allow(clippy::too_many_arguments)]
    fn recurse(
        &mut self,
        a: f64,
        b: f64,
        fa: f64,
        fm: f64,
        fb: f64,
        whole: f64,
        tol: f64,
        depth: u32,
    ) -> Result<f64, NonFiniteIntegrand> {
        let m = 0.5 * (a + b);
        let lm = 0.5 * (a + m);
        let rm = 0.5 * (m + b);
        let flm = self.eval(lm)?;
        let frm = self.eval(rm)?;
        let h = (b - a) / 12.0;
        let left = h * (fa + 4.0 * flm + fm);
        let right = h * (fm + 4.0 * frm + fb);
        let delta = left + right - whole;
        // the second test stops refinement once `tol` is below roundoff
        if delta.abs() <= 15.0 * tol || delta.abs() <= 64.0 * f64::EPSILON * (left.abs() + right.abs()) {
            return Ok(left + right + delta / 15.0);
        }
        if depth >= self.max_depth {
            self.converged = false;
            return Ok(left + right + delta / 15.0);
        }
        Ok(self.recurse(a, m, fa, flm, fm, left, 0.5 * tol, depth + 1)?
            + self.recurse(m, b, fm, frm, fb, right, 0.5 * tol, depth + 1)?)
    }
}

/// Integrates `f` over `[a, b]` (either orientation).
pub fn adaptive_simpson<F: FnMut(f64) -> f64>(
    f: F,
    a: f64,
    b: f64,
    opts: SimpsonOptions,
) -> Result<Integral, NonFiniteIntegrand> {
    let mut st = State {
        f,
        evaluations: 0,
        converged: true,
        max_depth: opts.max_depth,
    };
    if a == b {
        return Ok(Integral {
            value: 0.0,
            evaluations: 0,
            converged: true,
        });
    }
    let (lo, hi, sign) = if a < b { (a, b, 1.0) } else { (b, a, -1.0) };
    let fa = st.eval(lo)?;
    let fm = st.eval(0.5 * (lo + hi))?;
    let fb = st.eval(hi)?;
    let whole = (hi - lo) / 6.0 * (fa + 4.0 * fm + fb);
    let value = st.recurse(lo, hi, fa, fm, fb, whole, opts.abs_tol, 0)?;
    Ok(Integral {
        value: sign * value,
        evaluations: st.evaluations,
        converged: st.converged,
    })
}
