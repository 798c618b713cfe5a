//! Displays transcribed as printed, kept out of every production path.
//! Several are known to be wrong; see [`super::ERRATA`].

#![allow(clippy::all)]

fn lambda(t: f64) -> f64 {
    1.0 - t * t + (1.0 + t * t) * t.ln()
}

pub fn lemma1_a(r: f64, t: f64) -> f64 {
    let (r2, t2, lr, lt) = (r * r, t * t, r.ln(), t.ln());
    2.0 * r2 * (-1.0 - 2.0 * t2 + 3.0 * t2 * t2) * lr
        + (1.0 - r2) * (3.0 * (r2 - t2) * (-1.0 + t2) + 2.0 * (1.0 + 3.0 * r2) * t2 * lt)
}

pub fn lemma1_b(r: f64, t: f64) -> f64 {
    let (r2, t2, lr, lt) = (r * r, t * t, r.ln(), t.ln());
    -2.0 * r2 * (-3.0 + 2.0 * t2 + t2 * t2) * lr
        + (r2 - 1.0) * (3.0 * (r2 - t2) * (-1.0 + t2) + 2.0 * (3.0 * r2 + t2 * t2) * lt)
}

pub fn lemma1_c(r: f64, t: f64) -> f64 {
    let (r2, t2, lr, lt) = (r * r, t * t, r.ln(), t.ln());
    (-1.0 + t2) * (3.0 * (-1.0 + r2) * (-r2 + t2) + 2.0 * r2 * (1.0 + 3.0 * t2) * lr)
        + 2.0 * (1.0 + 2.0 * r2 - 3.0 * r2 * r2) * t2 * lt
}

pub fn lemma1_d(r: f64, t: f64) -> f64 {
    let (r2, t2, lr, lt) = (r * r, t * t, r.ln(), t.ln());
    2.0 * (r2 * r2 - t2) * (t2 - 1.0) * lr
        + (1.0 - r2) * ((r2 - t2) * (-1.0 + t2) + 2.0 * (r2 - 1.0) * t2 * lt)
}

pub fn lemma1_e(t: f64) -> f64 {
    lambda(t)
}

pub fn a_prime(r: f64, t: f64) -> f64 {
    let (r2, t2, lr, lt) = (r * r, t * t, r.ln(), t.ln());
    (2.0 * r2 * (3.0 - 2.0 * t2 - t2 * t2) * lr
        + (r2 - 1.0) * (3.0 * (r2 - t2) * (-1.0 + t2) + 2.0 * (3.0 * r2 + t2 * t2) * lt))
        / (4.0 * r2 * (-1.0 + t2) * lambda(t))
}

pub fn b_prime(r: f64, t: f64) -> f64 {
    let (r2, t2, lr, lt) = (r * r, t * t, r.ln(), t.ln());
    (2.0 * r2 * (3.0 * t2 * t2 - 2.0 * t2 - 1.0) * lr
        + (1.0 - r2) * (3.0 * (r2 - t2) * (-1.0 + t2) + 2.0 * (1.0 + 3.0 * r2) * t2 * lt))
        / (4.0 * r2 * t * (-1.0 + t2) * lambda(t))
}

pub fn u_prime(r: f64, t: f64) -> f64 {
    let (r2, t2, lr, lt) = (r * r, t * t, r.ln(), t.ln());
    ((1.0 + 3.0 * r2) * (r2 - t2) * (t2 - 1.0) + 2.0 * r2 * (1.0 - t2).powi(2) * lr
        - 2.0 * (3.0 * r2 * r2 - t2 * t2 - r2 * (1.0 + t2 * t2)) * lt)
        / (4.0 * r2 * (-1.0 + t2) * lambda(t))
}

pub fn v_prime(r: f64, t: f64) -> f64 {
    let (r2, t2, lr, lt) = (r * r, t * t, r.ln(), t.ln());
    (2.0 * r2 * (1.0 - t2).powi(2) * lr
        + (1.0 - r2) * ((-1.0 + t2) * (3.0 * r2 + t2) + 2.0 * (1.0 + 3.0 * r2) * t2 * lt))
        / (4.0 * r2 * (-1.0 + t2) * lambda(t))
}

/// `d/dr (-A'/B')`.
pub fn ratio_a_slope(r: f64, t: f64) -> f64 {
    let (r2, t2, lr, lt) = (r * r, t * t, r.ln(), t.ln());
    let num = 2.0 * (r2 * r2 - t2) * (-1.0 + t2) * lr
        - (-1.0 + r2) * ((r2 - t2) * (-1.0 + t2) + 2.0 * (-1.0 + r2) * t2 * lt);
    let den = 2.0 * r2 * (1.0 + 2.0 * t2 - 3.0 * t2 * t2) * lr
        + (-1.0 + r2) * (3.0 * (r2 - t2) * (-1.0 + t2) + 2.0 * (1.0 + 3.0 * r2) * t2 * lt);
    12.0 * r * t * (-1.0 + t2) * lambda(t) * num / (den * den)
}

pub fn h0(r: f64, t: f64) -> f64 {
    let (r2, t2, lr, lt) = (r * r, t * t, r.ln(), t.ln());
    let den = 4.0 * r * (2.0 - 2.0 * t2 + lt + 3.0 * t2 * t2 * lt);
    (1.0 - t2) * (3.0 * t2 + 3.0 * (3.0 - t2) * r2 - r2 * r2) / den
        + ((6.0 * t2 * t2 + 6.0 * (1.0 + t2 * t2) * r2 - 2.0 * r2 * r2) * lt
            + 6.0 * (1.0 - t2).powi(2) * r2 * lr)
            / den
}

pub fn phi(t: f64) -> f64 {
    let tau = 0.5 * (1.0 + t);
    (1.0 - t * t) * (9.0 + 30.0 * t + 9.0 * t * t + 8.0 * (1.0 + t).powi(2) * tau.ln())
        - 2.0 * t * (9.0 + 18.0 * t + 17.0 * t * t + 4.0 * t.powi(3)) * t.ln()
}

pub fn k(kappa: f64) -> f64 {
    let k2 = kappa * kappa;
    -2.0 - 4.0 * kappa
        + 6.0 * k2
        + (-1.0 - 2.0 * kappa + 3.0 * k2) * kappa.ln()
        + (1.0 - 2.0 * kappa - 3.0 * k2) * (kappa * (-1.0 + 3.0 * kappa) / (1.0 + kappa)).ln()
}

/// Printed with `s` where `η` is meant; transcribed with `η`.
pub fn l(kappa: f64) -> f64 {
    let eta = kappa * (3.0 * kappa - 1.0) / (1.0 + kappa);
    (1.0 + 3.0 * kappa) * (kappa - eta) * (-1.0 + eta) - kappa * (-1.0 + eta).powi(2) * kappa.ln()
        + (kappa - 3.0 * kappa * kappa + eta * eta + kappa * eta * eta) * eta.ln()
}

/// Right-hand side of the printed factorization of `L`.
pub fn l_factored(kappa: f64) -> f64 {
    kappa * (-1.0 - 2.0 * kappa + 3.0 * kappa * kappa) / (1.0 + kappa).powi(2) * k(kappa)
}

/// Printed closed form of `U' - V'`.
pub fn uv_difference(r: f64, t: f64) -> f64 {
    let (r2, t2) = (r * r, t * t);
    (-3.0 * r2 * r2 + t2 + r2 * (1.0 + t2)) / (2.0 * r2 * (-1.0 + t2))
}
