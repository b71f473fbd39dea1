use super::{Case, ExpansionParams, SolutionError};

/// General solution of `G'' + B G' + C G + A C = 0` for `B^2 - 4C != 0`.
///
/// For `Omega > 0`: `G = k2 e^{r+ z} + k1 e^{r- z} - A`, `r+- = (-B +- sqrt(Omega))/2`.
/// For `Omega < 0`: `G = e^{-B z/2} (k1 cos psi + k2 sin psi) - A`,
/// `psi = z sqrt(-Omega)/2`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SlodeSolution {
    pub params: ExpansionParams,
    pub case: Case,
    sqrt_abs_omega: f64,
}

pub fn slode_solution(params: &ExpansionParams) -> Result<SlodeSolution, SolutionError> {
    let case = params.case()?;
    Ok(SlodeSolution {
        params: *params,
        case,
        sqrt_abs_omega: params.omega().abs().sqrt(),
    })
}

impl SlodeSolution {
    /// `(G + A, G', G'')` at `zeta`, each differentiated from the closed form.
    fn homogeneous(&self, zeta: f64) -> (f64, f64, f64) {
        let p = &self.params;
        let s = self.sqrt_abs_omega;
        match self.case {
            Case::OmegaPositive => {
                let rp = 0.5 * (-p.b + s);
                let rm = 0.5 * (-p.b - s);
                let ep = p.k2 * (rp * zeta).exp();
                let em = p.k1 * (rm * zeta).exp();
                (ep + em, rp * ep + rm * em, rp * rp * ep + rm * rm * em)
            }
            Case::OmegaNegative => {
                let psi = 0.5 * s * zeta;
                let (sn, cs) = psi.sin_cos();
                let decay = (-0.5 * p.b * zeta).exp();
                let h = p.k1 * cs + p.k2 * sn;
                let dh = p.k2 * cs - p.k1 * sn;
                let hb = 0.5 * p.b;
                let hs = 0.5 * s;
                (
                    decay * h,
                    decay * (-hb * h + hs * dh),
                    decay * ((hb * hb - hs * hs) * h - 2.0 * hb * hs * dh),
                )
            }
        }
    }

    pub fn g(&self, zeta: f64) -> f64 {
        self.homogeneous(zeta).0 - self.params.a
    }

    pub fn g_prime(&self, zeta: f64) -> f64 {
        self.homogeneous(zeta).1
    }

    pub fn g_second(&self, zeta: f64) -> f64 {
        self.homogeneous(zeta).2
    }

    /// `dY/dzeta` by the quotient rule on the closed-form `G, G', G''`.
    pub fn y_prime(&self, zeta: f64) -> f64 {
        let (h, dg, d2g) = self.homogeneous(zeta);
        let den = dg + h;
        (d2g * den - dg * (d2g + dg)) / (den * den)
    }

    /// `Y = G'/(G' + G + A)`.
    pub fn y(&self, zeta: f64) -> f64 {
        let (h, dg, _) = self.homogeneous(zeta);
        dg / (dg + h)
    }
}
