//! Real roots of low-degree real polynomials.

/// Evaluates a polynomial given highest degree first.
pub fn eval(coeffs: &[f64], x: f64) -> f64 {
    coeffs.iter().fold(0.0, |acc, &c| acc * x + c)
}

fn derivative(coeffs: &[f64]) -> Vec<f64> {
    let deg = coeffs.len() - 1;
    coeffs[..deg]
        .iter()
        .enumerate()
        .map(|(k, &c)| c * (deg - k) as f64)
        .collect()
}

fn trim(coeffs: &[f64]) -> &[f64] {
    let scale = coeffs.iter().fold(0.0_f64, |m, c| m.max(c.abs()));
    if scale == 0.0 {
        return &[];
    }
    let first = coeffs
        .iter()
        .position(|c| c.abs() > 1e-14 * scale)
        .unwrap_or(coeffs.len());
    &coeffs[first..]
}

fn bisect(p: &[f64], mut lo: f64, mut hi: f64) -> f64 {
    let mut flo = eval(p, lo);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let fm = eval(p, mid);
        if fm == 0.0 {
            return mid;
        }
        if (fm < 0.0) == (flo < 0.0) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Sorted real roots, highest-degree coefficient first. Roots of even
/// multiplicity are reported once when the polynomial touches zero at a
/// critical point within round-off.
pub fn real_roots(coeffs: &[f64]) -> Vec<f64> {
    let p = trim(coeffs);
    match p.len() {
        0 | 1 => Vec::new(),
        2 => vec![-p[1] / p[0]],
        3 => {
            let (a, b, c) = (p[0], p[1], p[2]);
            let disc = b * b - 4.0 * a * c;
            if disc < 0.0 {
                return Vec::new();
            }
            let sq = disc.sqrt();
            let q = -0.5 * (b + sq.copysign(b));
            let mut r = if q == 0.0 { vec![0.0] } else { vec![q / a, c / q] };
            r.sort_by(f64::total_cmp);
            r.dedup();
            r
        }
        _ => {
            let bound = 1.0 + p[1..].iter().fold(0.0_f64, |m, c| m.max((c / p[0]).abs()));
            let scale = p.iter().fold(0.0_f64, |m, c| m.max(c.abs()));
            let mut knots = vec![-bound];
            knots.extend(real_roots(&derivative(p)).into_iter().filter(|x| x.abs() < bound));
            knots.push(bound);
            let mut roots: Vec<f64> = Vec::new();
            for w in knots.windows(2) {
                let (lo, hi) = (w[0], w[1]);
                let (flo, fhi) = (eval(p, lo), eval(p, hi));
                if flo == 0.0 {
                    roots.push(lo);
                } else if (flo < 0.0) != (fhi < 0.0) && fhi != 0.0 {
                    roots.push(bisect(p, lo, hi));
                }
            }
            if eval(p, bound) == 0.0 {
                roots.push(bound);
            }
            // Touching roots at critical points.
            for &k in &knots[1..knots.len() - 1] {
                if eval(p, k).abs() <= 1e-13 * scale * (1.0 + k.abs()).powi(p.len() as i32 - 1)
                    && !roots.iter().any(|r| (r - k).abs() <= 1e-9 * (1.0 + k.abs()))
                {
                    roots.push(k);
                }
            }
            roots.sort_by(f64::total_cmp);
            roots.dedup_by(|a, b| (*a - *b).abs() <= 1e-12 * (1.0 + b.abs()));
            roots
        }
    }
}
