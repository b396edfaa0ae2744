use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::hypercore::DisjointSet;
use crate::tensor::{FlatteningMatrix, UniformTensor};

use super::{EigenSolution, SolverOptions, SpectralError, Start};

pub(crate) fn start_vector(n: usize, start: Start) -> Vec<f64> {
    let mut x: Vec<f64> = match start {
        Start::Uniform => vec![1.0; n],
        Start::Random { seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            (0..n).map(|_| rng.gen_range(0.1..1.0)).collect()
        }
    };
    l1_normalize(&mut x);
    x
}

fn l1_normalize(x: &mut [f64]) {
    let s: f64 = x.iter().map(|v| v.abs()).sum();
    if s > 0.0 {
        x.iter_mut().for_each(|v| *v /= s);
    }
}

/// Lower and upper eigenvalue bounds from the componentwise ratios
/// `y_i / x_i^q - shift`.
fn ratio_bounds(y: &[f64], x: &[f64], q: usize, shift: f64) -> (f64, f64) {
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for (&yi, &xi) in y.iter().zip(x) {
        let r = yi / xi.powi(q as i32) - shift;
        lo = lo.min(r);
        hi = hi.max(r);
    }
    (lo, hi)
}

fn component_count(t: &UniformTensor) -> usize {
    let mut dsu = DisjointSet::new(t.dim());
    let mut merges = 0;
    for e in t.entries() {
        for &v in &e.nodes[1..] {
            if dsu.union(e.nodes[0] as usize, v as usize) {
                merges += 1;
            }
        }
    }
    t.dim() - merges
}

/// Generic shifted iteration `y = step(x) + shift * x^[q]`,
/// `x <- y^[1/q] / |y^[1/q]|_1`, stopped on the relative spread of the ratio
/// bounds. The returned vector is the iterate at which the bounds were taken.
fn iterate(
    n: usize,
    q: usize,
    opts: &SolverOptions,
    mut step: impl FnMut(&[f64], &mut [f64]),
) -> EigenSolution {
    let mut x = start_vector(n, opts.start);
    let mut y = vec![0.0; n];
    let mut best: Option<EigenSolution> = None;
    for it in 1..=opts.max_iter {
        step(&x, &mut y);
        let (lo, hi) = ratio_bounds(&y, &x, q, 0.0);
        // y currently holds T x^{m-1}; add the shift term
        for (yi, &xi) in y.iter_mut().zip(&x) {
            *yi += opts.shift * xi.powi(q as i32);
        }
        let lambda = 0.5 * (lo + hi);
        let spread = if hi > 0.0 { (hi - lo) / hi } else { f64::INFINITY };
        if spread <= opts.tol {
            return finish(x, lambda, spread, it, true, q, &mut step);
        }
        if it == opts.max_iter {
            best = Some(finish(x.clone(), lambda, spread, it, false, q, &mut step));
            break;
        }
        for (xi, &yi) in x.iter_mut().zip(&y) {
            *xi = root(yi, q);
        }
        l1_normalize(&mut x);
    }
    best.expect("max_iter is at least one")
}

fn root(v: f64, q: usize) -> f64 {
    match q {
        1 => v,
        2 => v.sqrt(),
        _ => v.powf(1.0 / q as f64),
    }
}

fn finish(
    x: Vec<f64>,
    lambda: f64,
    spread: f64,
    iterations: usize,
    converged: bool,
    q: usize,
    step: &mut impl FnMut(&[f64], &mut [f64]),
) -> EigenSolution {
    let mut y = vec![0.0; x.len()];
    step(&x, &mut y);
    let residual = y
        .iter()
        .zip(&x)
        .map(|(&yi, &xi)| (yi - lambda * xi.powi(q as i32)).abs())
        .fold(0.0, f64::max)
        / lambda.abs().max(f64::MIN_POSITIVE);
    EigenSolution {
        vector: x,
        eigenvalue: lambda,
        residual,
        spread,
        iterations,
        converged,
    }
}

/// Perron eigenpair of a weakly irreducible nonnegative symmetric tensor by
/// shifted power iteration.
///
/// With the default [`RootExponent::OrderMinusOne`](super::RootExponent) the
/// result solves `T c^{m-1} = lambda c^[m-1]`; with `Order` it solves
/// `T c^{m-1} = lambda c^[m]` at `|c|_1 = 1`.
pub fn h_eigen_power(t: &UniformTensor, opts: &SolverOptions) -> Result<EigenSolution, SpectralError> {
    opts.validate()?;
    if t.is_empty() {
        return Err(crate::tensor::TensorError::Empty.into());
    }
    if !t.is_weakly_irreducible() {
        return Err(SpectralError::NotWeaklyIrreducible);
    }
    let q = opts.root.exponent(t.order());
    let sol = iterate(t.dim(), q, opts, |x, y| t.apply_into(x, y));
    if sol.converged {
        Ok(sol)
    } else {
        Err(SpectralError::NotConverged(Box::new(sol)))
    }
}

/// Perron eigenpair `A c = lambda c` of an order-2 tensor by the (shifted)
/// matrix power method on its explicit adjacency matrix.
pub fn eigenvector_centrality(
    t: &UniformTensor,
    opts: &SolverOptions,
) -> Result<EigenSolution, SpectralError> {
    opts.validate()?;
    if t.order() != 2 {
        return Err(SpectralError::WrongOrder { expected: "2".into() });
    }
    if t.is_empty() {
        return Err(crate::tensor::TensorError::Empty.into());
    }
    let components = component_count(t);
    if components > 1 {
        return Err(SpectralError::Disconnected { components });
    }
    let a: FlatteningMatrix = t.flattening_matrix();
    let sol = iterate(t.dim(), 1, opts, |x, y| {
        for (i, yi) in y.iter_mut().enumerate() {
            *yi = a.row(i).iter().map(|&(j, v)| v * x[j]).sum();
        }
    });
    if sol.converged {
        Ok(sol)
    } else {
        Err(SpectralError::NotConverged(Box::new(sol)))
    }
}
