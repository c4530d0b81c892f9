//! Derivative-free Nelder-Mead minimization.

#[derive(Clone, Debug, PartialEq)]
pub struct Minimum {
    pub x: Vec<f64>,
    pub value: f64,
    pub iterations: usize,
    pub evaluations: usize,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct NelderMead {
    pub max_iterations: usize,
    /// Stop as soon as the best value drops to this level.
    pub target: f64,
    /// Edge length of the initial simplex.
    pub step: f64,
    /// Stop when the simplex spread in value and position falls below this.
    pub x_tol: f64,
}

impl Default for NelderMead {
    fn default() -> Self {
        NelderMead {
            max_iterations: 2000,
            target: f64::NEG_INFINITY,
            step: 0.5,
            x_tol: 1e-12,
        }
    }
}

impl NelderMead {
    pub fn minimize<F>(&self, mut f: F, x0: &[f64]) -> Minimum
    where
        F: FnMut(&[f64]) -> f64,
    {
        let dim = x0.len();
        let mut evaluations = 0usize;
        let mut eval = |x: &[f64]| {
            evaluations += 1;
            let v = f(x);
            if v.is_nan() {
                f64::INFINITY
            } else {
                v
            }
        };
        if dim == 0 {
            let value = eval(x0);
            return Minimum {
                x: Vec::new(),
                value,
                iterations: 0,
                evaluations: 1,
            };
        }

        let mut simplex: Vec<(Vec<f64>, f64)> = Vec::with_capacity(dim + 1);
        simplex.push((x0.to_vec(), eval(x0)));
        for d in 0..dim {
            let mut x = x0.to_vec();
            x[d] += self.step;
            let v = eval(&x);
            simplex.push((x, v));
        }

        let mut iterations = 0;
        while iterations < self.max_iterations {
            simplex.sort_by(|a, b| a.1.total_cmp(&b.1));
            if simplex[0].1 <= self.target {
                break;
            }
            let spread = simplex[dim].1 - simplex[0].1;
            let diameter = simplex[1..]
                .iter()
                .flat_map(|(x, _)| x.iter().zip(&simplex[0].0).map(|(a, b)| (a - b).abs()))
                .fold(0.0, f64::max);
            if diameter <= self.x_tol && spread <= self.x_tol {
                break;
            }
            iterations += 1;

            let mut centroid = vec![0.0; dim];
            for (x, _) in &simplex[..dim] {
                for (c, xi) in centroid.iter_mut().zip(x) {
                    *c += xi / dim as f64;
                }
            }
            let toward = |t: f64, worst: &[f64]| -> Vec<f64> {
                centroid.iter().zip(worst).map(|(c, w)| c + t * (w - c)).collect()
            };
            let worst = simplex[dim].0.clone();
            let reflected = toward(-1.0, &worst);
            let fr = eval(&reflected);
            if fr < simplex[0].1 {
                let expanded = toward(-2.0, &worst);
                let fe = eval(&expanded);
                simplex[dim] = if fe < fr { (expanded, fe) } else { (reflected, fr) };
                continue;
            }
            if fr < simplex[dim - 1].1 {
                simplex[dim] = (reflected, fr);
                continue;
            }
            let (contracted, fc) = if fr < simplex[dim].1 {
                let c = toward(-0.5, &worst);
                let v = eval(&c);
                (c, v)
            } else {
                let c = toward(0.5, &worst);
                let v = eval(&c);
                (c, v)
            };
            if fc < simplex[dim].1.min(fr) {
                simplex[dim] = (contracted, fc);
                continue;
            }
            let best = simplex[0].0.clone();
            for (x, v) in simplex[1..].iter_mut() {
                for (xi, bi) in x.iter_mut().zip(&best) {
                    *xi = bi + 0.5 * (*xi - bi);
                }
                *v = eval(x);
            }
        }
        simplex.sort_by(|a, b| a.1.total_cmp(&b.1));
        let (x, value) = simplex.swap_remove(0);
        Minimum {
            x,
            value,
            iterations,
            evaluations,
        }
    }
}
