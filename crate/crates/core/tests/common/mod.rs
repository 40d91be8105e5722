#![allow(dead_code)]

use macwt::channels::{InputFactorization, MacWiretapKernel};
use macwt::info::FiniteDist;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_simplex(rng: &mut ChaCha8Rng, n: usize) -> Vec<f64> {
    let raw: Vec<f64> = (0..n).map(|_| rng.random::<f64>() + 1e-3).collect();
    let total: f64 = raw.iter().sum();
    raw.into_iter().map(|x| x / total).collect()
}

pub fn random_kernel(rng: &mut ChaCha8Rng, sizes: [usize; 4]) -> MacWiretapKernel {
    let [n1, n2, ny, nz] = sizes;
    let mut t = Vec::new();
    for _ in 0..n1 * n2 {
        t.extend(random_simplex(rng, ny * nz));
    }
    MacWiretapKernel::new(sizes, t).unwrap()
}

pub fn random_input(rng: &mut ChaCha8Rng, nu: usize, n1: usize, n2: usize) -> InputFactorization {
    let d = |rng: &mut ChaCha8Rng, n| FiniteDist::new(random_simplex(rng, n)).unwrap();
    let p_u = d(rng, nu);
    let x1 = (0..nu).map(|_| d(rng, n1)).collect();
    let x2 = (0..nu).map(|_| d(rng, n2)).collect();
    InputFactorization::new(p_u, x1, x2).unwrap()
}

/// Five information quantities plus `H(Y|Z)` from explicit nested sums over
/// `p(u, x1, x2, y, z)`, using conditional probabilities directly.
#[allow(clippy::needless_range_loop)]
pub fn brute_force_quantities(k: &MacWiretapKernel, input: &InputFactorization) -> [f64; 6] {
    let [n1, n2, ny, nz] = k.sizes();
    let nu = input.u_size();
    let p = |u: usize, x1: usize, x2: usize, y: usize, z: usize| {
        input.p_u().prob(u) * input.p_x1_given_u()[u].prob(x1) * input.p_x2_given_u()[u].prob(x2) * k.prob(x1, x2, y, z)
    };
    let mut full = vec![vec![vec![vec![vec![0.0; nz]; ny]; n2]; n1]; nu];
    for u in 0..nu {
        for x1 in 0..n1 {
            for x2 in 0..n2 {
                for y in 0..ny {
                    for z in 0..nz {
                        full[u][x1][x2][y][z] = p(u, x1, x2, y, z);
                    }
                }
            }
        }
    }
    let sum = |f: &dyn Fn(usize, usize, usize, usize, usize) -> bool| {
        let mut s = 0.0;
        for u in 0..nu {
            for x1 in 0..n1 {
                for x2 in 0..n2 {
                    for y in 0..ny {
                        for z in 0..nz {
                            if f(u, x1, x2, y, z) {
                                s += full[u][x1][x2][y][z];
                            }
                        }
                    }
                }
            }
        }
        s
    };
    let (mut a, mut b, mut c, mut d, mut e, mut hyz) = (0.0, 0.0, 0.0, 0.0, 0.0, 0.0);
    for u in 0..nu {
        for x1 in 0..n1 {
            for x2 in 0..n2 {
                for y in 0..ny {
                    for z in 0..nz {
                        let pj = full[u][x1][x2][y][z];
                        if pj <= 0.0 {
                            continue;
                        }
                        let p_y_ux1x2 = sum(&|uu, a1, a2, yy, _| uu == u && a1 == x1 && a2 == x2 && yy == y)
                            / sum(&|uu, a1, a2, _, _| uu == u && a1 == x1 && a2 == x2);
                        let p_y_ux2 = sum(&|uu, _, a2, yy, _| uu == u && a2 == x2 && yy == y)
                            / sum(&|uu, _, a2, _, _| uu == u && a2 == x2);
                        let p_y_ux1 = sum(&|uu, a1, _, yy, _| uu == u && a1 == x1 && yy == y)
                            / sum(&|uu, a1, _, _, _| uu == u && a1 == x1);
                        let p_y_x1x2 = sum(&|_, a1, a2, yy, _| a1 == x1 && a2 == x2 && yy == y)
                            / sum(&|_, a1, a2, _, _| a1 == x1 && a2 == x2);
                        let p_y = sum(&|_, _, _, yy, _| yy == y);
                        let p_z_x1x2 = sum(&|_, a1, a2, _, zz| a1 == x1 && a2 == x2 && zz == z)
                            / sum(&|_, a1, a2, _, _| a1 == x1 && a2 == x2);
                        let p_z = sum(&|_, _, _, _, zz| zz == z);
                        let p_yz = sum(&|_, _, _, yy, zz| yy == y && zz == z);
                        let p_x1x2yz = sum(&|_, a1, a2, yy, zz| a1 == x1 && a2 == x2 && yy == y && zz == z);
                        let p_x1x2z = sum(&|_, a1, a2, _, zz| a1 == x1 && a2 == x2 && zz == z);
                        a += pj * (p_y_ux1x2 / p_y_ux2).log2();
                        b += pj * (p_y_ux1x2 / p_y_ux1).log2();
                        c += pj * (p_y_x1x2 / p_y).log2();
                        d += pj * (p_z_x1x2 / p_z).log2();
                        e -= pj * (p_x1x2yz / p_x1x2z).log2();
                        hyz -= pj * (p_yz / p_z).log2();
                    }
                }
            }
        }
    }
    [a, b, c, d, e, hyz]
}
