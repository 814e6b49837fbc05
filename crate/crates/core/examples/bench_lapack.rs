//! Rough single-core timings for the LAPACK kernels the verifier leans on.

use ndarray::Array2;
use ndarray_linalg::cholesky::{CholeskyFactorized, FactorizeC, SolveC};
use ndarray_linalg::{c64, Eigh, EigValsh, JobSvd, SVDDC, UPLO};
use std::time::Instant;

fn main() {
    let n = std::env::args()
        .nth(1)
        .and_then(|s| s.parse::<usize>().ok())
        .unwrap_or(1024);
    let which = std::env::args().nth(2).unwrap_or_else(|| "all".into());

    let mut seed = 0x9e3779b97f4a7c15u64;
    let mut next = move || {
        seed ^= seed << 13;
        seed ^= seed >> 7;
        seed ^= seed << 17;
        (seed as f64 / u64::MAX as f64) - 0.5
    };

    let a = Array2::from_shape_fn((n + 64, n), |_| c64::new(next(), next()));

    let t = Instant::now();
    let ac = a.mapv(|z| z.conj());
    let h = ac.t().dot(&a);
    println!("zgemm A^H A ({} x {}): {:.2?}", n + 64, n, t.elapsed());
    drop(ac);

    let t = Instant::now();
    let ar = a.mapv(|z| z.re);
    let hr = ar.t().dot(&ar);
    println!("dgemm B^T B ({} x {}): {:.2?}", n + 64, n, t.elapsed());
    drop(ar);

    let t = Instant::now();
    let f: CholeskyFactorized<_> = h.factorizec(UPLO::Lower).unwrap();
    println!("zpotrf (n={}): {:.2?}", n, t.elapsed());

    let b = Array2::from_shape_fn((n, 4), |_| c64::new(next(), next()));
    let t = Instant::now();
    for j in 0..4 {
        let col = b.column(j).to_owned();
        let _x = f.solvec(&col).unwrap();
    }
    println!("4 x zpotrs (n={}): {:.2?}", n, t.elapsed());

    let t = Instant::now();
    let _fr = hr.factorizec(UPLO::Lower).unwrap();
    println!("dpotrf (n={}): {:.2?}", n, t.elapsed());

    if which == "all" {
        let t = Instant::now();
        let vals = h.eigvalsh(UPLO::Lower).unwrap();
        println!(
            "zheev values-only (n={}): {:.2?} (lambda_max {:.3e})",
            n,
            t.elapsed(),
            vals[n - 1]
        );

        let t = Instant::now();
        let (vals, _vecs) = h.eigh(UPLO::Lower).unwrap();
        println!(
            "zheev values+vectors (n={}): {:.2?} (lambda_max {:.3e})",
            n,
            t.elapsed(),
            vals[n - 1]
        );

        if n <= 2100 {
            let t = Instant::now();
            let (_u, s, _vt) = a.svddc(JobSvd::Some).unwrap();
            println!(
                "zgesdd ({} x {}): {:.2?} (sigma_max {:.3e})",
                n + 64,
                n,
                t.elapsed(),
                s[0]
            );
        }
    }
}
