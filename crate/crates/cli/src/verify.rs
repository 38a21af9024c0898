//! The `verify` command: closed-form discord, classical correlation, and
//! concurrence against the brute-force machinery on a (t, eta) grid.

use crate::{CliError, VerifyArgs};
use dimer::correlations::{classical_correlation, concurrence, discord};
use dimer::model::gibbs_xstate;
use dimer::oracle::{
    classical_correlation_numeric, concurrence_general, discord_numeric, gibbs_general,
    DensityMatrix4,
};
use dimer::{DimerParams, ThermalPoint};
use rayon::prelude::*;

struct PointCheck {
    t: f64,
    eta: f64,
    dq: f64,
    dc: f64,
    dconc: f64,
}

pub fn run(args: VerifyArgs) -> Result<(), CliError> {
    if args.tolerance <= 0.0 || args.tolerance.is_nan() {
        return Err(CliError::Usage(format!(
            "tolerance must be positive, got {}",
            args.tolerance
        )));
    }
    if args.grid_n < 16 {
        return Err(CliError::Usage("grid-n must be at least 16".into()));
    }

    let mut grid = Vec::new();
    for &t in &args.t_list {
        for &eta in &args.eta_list {
            grid.push((t, eta));
        }
    }

    let checks: Result<Vec<PointCheck>, CliError> = grid
        .par_iter()
        .map(|&(t, eta)| {
            let params = DimerParams::new(args.delta, eta)?;
            let tp = ThermalPoint::from_reduced_temperature(t)?;
            let state = gibbs_xstate(&params, tp)?;
            // At T = 0 the analytic state feeds the oracle directly.
            let rho = if tp.is_zero_temperature() {
                DensityMatrix4::from_xstate(&state)
            } else {
                gibbs_general(&params, tp)?
            };
            let q_closed = discord(&state);
            let c_closed = classical_correlation(&state);
            let q_num = discord_numeric(&rho, args.grid_n, args.refine_iters);
            let c_num = classical_correlation_numeric(&rho, args.grid_n, args.refine_iters);
            let conc_num = concurrence_general(&rho);
            Ok(PointCheck {
                t,
                eta,
                dq: (q_closed - q_num).abs(),
                dc: (c_closed - c_num).abs(),
                dconc: (concurrence(&state) - conc_num).abs(),
            })
        })
        .collect();
    let checks = checks?;

    let mut failures = 0usize;
    let (mut worst_q, mut worst_c, mut worst_conc) = (0.0f64, 0.0f64, 0.0f64);
    println!("delta = {}, tolerance = {:.1e}, grid {} x {}", args.delta, args.tolerance, args.t_list.len(), args.eta_list.len());
    println!("{:>8} {:>8} {:>12} {:>12} {:>12}  status", "t", "eta", "|dQ|", "|dC|", "|dconc|");
    for c in &checks {
        let ok = c.dq <= args.tolerance && c.dc <= args.tolerance && c.dconc <= args.tolerance;
        if !ok {
            failures += 1;
        }
        worst_q = worst_q.max(c.dq);
        worst_c = worst_c.max(c.dc);
        worst_conc = worst_conc.max(c.dconc);
        println!(
            "{:>8} {:>8} {:>12.3e} {:>12.3e} {:>12.3e}  {}",
            c.t,
            c.eta,
            c.dq,
            c.dc,
            c.dconc,
            if ok { "ok" } else { "FAIL" }
        );
    }
    println!(
        "worst |dQ| = {worst_q:.3e}, |dC| = {worst_c:.3e}, |dconc| = {worst_conc:.3e} over {} points",
        checks.len()
    );

    if failures > 0 {
        return Err(CliError::Verification(format!(
            "{failures} of {} grid points exceed tolerance {:.1e}",
            checks.len(),
            args.tolerance
        )));
    }
    println!("verify: PASS");
    Ok(())
}
