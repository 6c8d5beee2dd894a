use std::time::Instant;

use serde::{Deserialize, Serialize};

use super::ortho::orthogonality_error;
use super::rules::ParamRule;
use crate::baselines::{Algorithm, AlgorithmId};
use crate::error::Result;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BenchParams {
    pub a: f64,
    pub alpha: f64,
    pub beta: f64,
}

/// One `(algorithm, N)` cell; `mean_seconds` averages the repeats.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchRecord {
    pub algorithm: AlgorithmId,
    pub gsop: bool,
    pub n: usize,
    pub params: BenchParams,
    pub repeats: usize,
    pub mean_seconds: f64,
    pub ortho_error: Option<f64>,
    /// Set when a run failed or the budget stopped the repeats.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

/// Times full-order generation. Repeats run sequentially; once the summed time
/// exceeds `budget_s` the remaining repeats of that cell are skipped.
pub fn bench(
    alg: &Algorithm,
    sizes: &[usize],
    rule: &ParamRule,
    repeats: usize,
    budget_s: f64,
) -> Result<Vec<BenchRecord>> {
    let repeats = repeats.max(1);
    let mut out = Vec::with_capacity(sizes.len());
    for &n in sizes {
        let p = rule.params(n)?;
        let (a, alpha, beta) = rule.triple(n);
        let params = BenchParams { a, alpha, beta };
        let mut total = 0.0;
        let mut done = 0;
        let mut last = None;
        let mut note = None;
        while done < repeats {
            let start = Instant::now();
            let res = alg.generate(&p, n - 1);
            total += start.elapsed().as_secs_f64();
            done += 1;
            match res {
                Ok(m) => last = Some(m),
                Err(e) => {
                    note = Some(e.to_string());
                    break;
                }
            }
            if total > budget_s && done < repeats {
                note = Some(format!(
                    "time budget of {budget_s} s exceeded after {done} repeats"
                ));
                break;
            }
        }
        out.push(BenchRecord {
            algorithm: alg.id,
            gsop: alg.gsop_post,
            n,
            params,
            repeats: done,
            mean_seconds: (total / done as f64).max(f64::MIN_POSITIVE),
            ortho_error: last.as_ref().map(orthogonality_error),
            note,
        });
    }
    Ok(out)
}
