//! Oracles that share no code path with the library.

#![allow(dead_code)]

const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

/// Exponential integral `E1(z)` for `z > 0`: power series below 1, Lentz continued
/// fraction above.
pub fn e1(z: f64) -> f64 {
    assert!(z > 0.0);
    if z <= 1.0 {
        e1_series(z)
    } else {
        scaled_e1_fraction(z) * (-z).exp()
    }
}

fn e1_series(z: f64) -> f64 {
    {
        let mut sum = 0.0;
        let mut term = 1.0;
        for k in 1..200 {
            term *= -z / k as f64;
            let add = -term / k as f64;
            sum += add;
            if add.abs() < 1e-18 * sum.abs() {
                break;
            }
        }
        -EULER_GAMMA - z.ln() + sum
    }
}

/// `exp(z) E1(z)` for `z > 1`.
fn scaled_e1_fraction(z: f64) -> f64 {
    {
        // E1(z) = exp(-z) / (z + 1 - 1/(z + 3 - 4/(z + 5 - ...)))
        let tiny = 1e-300;
        let mut b = z + 1.0;
        let mut c = 1.0 / tiny;
        let mut d = 1.0 / b;
        let mut h = d;
        for i in 1..500 {
            let a = -((i * i) as f64);
            b += 2.0;
            d = 1.0 / (a * d + b);
            c = b + a / c;
            let delta = c * d;
            h *= delta;
            if (delta - 1.0).abs() < 1e-16 {
                break;
            }
        }
        h
    }
}

/// `integral of exp(-x) / (1 + delta x)` through the exponential integral.
pub fn tail_integral_e1(delta: f64) -> f64 {
    let z = 1.0 / delta;
    let scaled = if z <= 1.0 { z.exp() * e1_series(z) } else { scaled_e1_fraction(z) };
    scaled / delta
}

/// Midpoint-rule moments of the normalized density over `[0, l]^2`:
/// `(E[X], E[Y], E[XY])` at unit rates.
pub fn riemann_moments(delta: f64, l: f64, cells: usize) -> (f64, f64, f64) {
    let h = l / cells as f64;
    let (mut mass, mut mx, mut my, mut mxy) = (0.0, 0.0, 0.0, 0.0);
    for i in 0..cells {
        let x = (i as f64 + 0.5) * h;
        for j in 0..cells {
            let y = (j as f64 + 0.5) * h;
            let f = (-(x + y + delta * x * y)).exp();
            mass += f;
            mx += x * f;
            my += y * f;
            mxy += x * y * f;
        }
    }
    (mx / mass, my / mass, mxy / mass)
}
