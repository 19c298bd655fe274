//! Adaptive quadrature and the monotone parameter↔arc-length table.

/// Adaptive Simpson on [a, b] with absolute tolerance `tol`.
pub fn adaptive_simpson(f: &dyn Fn(f64) -> f64, a: f64, b: f64, tol: f64) -> f64 {
    fn simpson(fa: f64, fm: f64, fb: f64, a: f64, b: f64) -> f64 {
        (b - a) / 6.0 * (fa + 4.0 * fm + fb)
    }
    fn rec(
        f: &dyn Fn(f64) -> f64,
        a: f64,
        b: f64,
        fa: f64,
        fm: f64,
        fb: f64,
        whole: f64,
        tol: f64,
        depth: u32,
    ) -> f64 {
        let m = 0.5 * (a + b);
        let lm = 0.5 * (a + m);
        let rm = 0.5 * (m + b);
        let flm = f(lm);
        let frm = f(rm);
        let left = simpson(fa, flm, fm, a, m);
        let right = simpson(fm, frm, fb, m, b);
        let delta = left + right - whole;
        if depth == 0 || delta.abs() <= 15.0 * tol {
            return left + right + delta / 15.0;
        }
        rec(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1)
            + rec(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1)
    }
    let m = 0.5 * (a + b);
    let (fa, fm, fb) = (f(a), f(m), f(b));
    rec(f, a, b, fa, fm, fb, simpson(fa, fm, fb, a, b), tol, 48)
}

/// Cumulative integral table of a positive integrand (a speed), supporting
/// fast monotone inversion.
#[derive(Debug, Clone)]
pub struct ArcTable {
    pub ts: Vec<f64>,
    pub ss: Vec<f64>,
    pub total: f64,
}

impl ArcTable {
    /// Build over [t0, t1] with `n` base segments; each segment is integrated
    /// adaptively to `tol / n` so the accumulated error stays near `tol`.
    pub fn build(speed: &dyn Fn(f64) -> f64, t0: f64, t1: f64, n: usize, tol: f64) -> ArcTable {
        let n = n.max(8);
        let mut ts = Vec::with_capacity(n + 1);
        let mut ss = Vec::with_capacity(n + 1);
        let h = (t1 - t0) / n as f64;
        let mut acc = 0.0;
        ts.push(t0);
        ss.push(0.0);
        for i in 0..n {
            let a = t0 + i as f64 * h;
            let b = if i + 1 == n { t1 } else { t0 + (i + 1) as f64 * h };
            acc += adaptive_simpson(speed, a, b, tol / n as f64);
            ts.push(b);
            ss.push(acc);
        }
        ArcTable { ts, ss, total: acc }
    }

    /// s(t) for t inside the domain.
    pub fn forward(&self, speed: &dyn Fn(f64) -> f64, t: f64) -> f64 {
        let i = match self.ts.binary_search_by(|x| x.partial_cmp(&t).unwrap()) {
            Ok(i) => return self.ss[i],
            Err(i) => i.saturating_sub(1).min(self.ts.len() - 2),
        };
        self.ss[i] + adaptive_simpson(speed, self.ts[i], t, 1e-14 * (1.0 + self.total))
    }

    /// t(s): locate the bracketing segment, then Newton with bisection
    /// safeguarding down to `tol_t` on the parameter.
    pub fn invert(&self, speed: &dyn Fn(f64) -> f64, s: f64, tol_t: f64) -> f64 {
        let s = s.clamp(0.0, self.total);
        let i = match self.ss.binary_search_by(|x| x.partial_cmp(&s).unwrap()) {
            Ok(i) => return self.ts[i],
            Err(i) => i.saturating_sub(1).min(self.ss.len() - 2),
        };
        let (mut lo, mut hi) = (self.ts[i], self.ts[i + 1]);
        let target = s - self.ss[i];
        let seg_tol = 1e-15 * (1.0 + self.total);
        // F(t) = integral from ts[i] to t of speed, increasing
        let mut t = lo + (hi - lo) * (target / (self.ss[i + 1] - self.ss[i])).clamp(0.0, 1.0);
        for _ in 0..60 {
            let ft = adaptive_simpson(speed, self.ts[i], t, seg_tol) - target;
            if ft > 0.0 {
                hi = t;
            } else {
                lo = t;
            }
            let dt = ft / speed(t);
            let mut next = t - dt;
            if !(lo..=hi).contains(&next) {
                next = 0.5 * (lo + hi);
            }
            if (next - t).abs() <= tol_t {
                return next;
            }
            t = next;
        }
        t
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn simpson_exact_on_cubics() {
        let v = adaptive_simpson(&|x| x * x * x - 2.0 * x + 1.0, -1.0, 3.0, 1e-12);
        assert!((v - (81.0 / 4.0 - 1.0 / 4.0 - (9.0 - 1.0) + 4.0)).abs() < 1e-10);
    }

    #[test]
    fn table_inverts_to_high_accuracy() {
        // speed of (cos t, sin 2t)-style wobble, strictly positive
        let speed = |t: f64| 1.5 + (2.0 * t).sin() * 0.4;
        let table = ArcTable::build(&speed, 0.0, 3.0, 64, 1e-12);
        for k in 0..=20 {
            let s = table.total * k as f64 / 20.0;
            let t = table.invert(&speed, s, 1e-13);
            let s_back = table.forward(&speed, t);
            assert!((s_back - s).abs() < 1e-10, "s={s} roundtrip {s_back}");
        }
    }
}
