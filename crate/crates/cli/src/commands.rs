//! One function per subcommand, each producing a table.

use crate::table::Table;
use crate::{
    param_map, ClassicalArgs, CliError, Command, GramArgs, Grid, LimitArgs, Output, ShootArgs,
    SpectrumArgs, StatesArgs, VeffArgs,
};
use nlosc::classical::{analytic_1d, frequency_for_amplitude, integrate_1d, integrate_planar};
use nlosc::oracle::{ho_wavefunction, limit_compare, seed_bracket, shoot_eigenvalue};
use nlosc::radial::{
    effective_potential, effective_potential_mass_form, eval_state, gram_matrix, normalized_state,
    weight, LAMBDA_SWITCH,
};
use nlosc::spectrum::{bound_state_count, energy_dimless, spectrum_table};
use nlosc::{domain, Error, Params};
use serde_json::{Map, Value};

type Dispatched<'a> = (Table, Map<String, Value>, &'a Output);

pub(crate) fn dispatch(command: &Command) -> Result<Dispatched<'_>, CliError> {
    match command {
        Command::Spectrum(a) => Ok((
            spectrum(a)?,
            param_map(&[
                ("Lambda", a.lambda.into()),
                ("L", a.l.into()),
                ("n_max", a.n_max.into()),
            ]),
            &a.output,
        )),
        Command::States(a) => {
            let grid = a
                .grid
                .unwrap_or_else(|| default_grid(0.01, domain(a.lambda).upper, 10.0));
            let params = param_map(&[
                ("Lambda", a.lambda.into()),
                ("L", a.l.into()),
                ("n", a.n.into()),
                ("grid", grid_json(&grid)),
            ]);
            Ok((states(a, &grid)?, params, &a.output))
        }
        Command::Gram(a) => Ok((
            gram(a)?,
            param_map(&[
                ("Lambda", a.lambda.into()),
                ("L", a.l.into()),
                ("n_max", a.n_max.into()),
            ]),
            &a.output,
        )),
        Command::Shoot(a) => {
            let params = param_map(&[
                ("Lambda", a.lambda.into()),
                ("L", a.l.into()),
                ("n", a.n.into()),
                ("n_max", a.n_max.into()),
            ]);
            Ok((shoot(a)?, params, &a.output))
        }
        Command::Limit(a) => {
            let params = param_map(&[
                ("Lambda", a.lambda.into()),
                ("L", a.l.into()),
                ("n", a.n.into()),
                ("n_max", a.n_max.into()),
            ]);
            Ok((limit(a)?, params, &a.output))
        }
        Command::Classical(a) => classical(a),
        Command::Veff(a) => {
            let p = Params::new(a.mass, a.alpha, a.lambda, a.hbar)?;
            let edge = (a.lambda < 0.0).then(|| 1.0 / (-a.lambda).sqrt());
            let grid = a.grid.unwrap_or_else(|| default_grid(0.05, edge, 5.0));
            let params = param_map(&[
                ("lambda", a.lambda.into()),
                ("L", a.l.into()),
                ("alpha", a.alpha.into()),
                ("mass", a.mass.into()),
                ("hbar", a.hbar.into()),
                ("grid", grid_json(&grid)),
            ]);
            Ok((veff(a, &p, &grid)?, params, &a.output))
        }
    }
}

/// 200 points from `min` to the finite edge minus 1e-9, or to `far`.
fn default_grid(min: f64, edge: Option<f64>, far: f64) -> Grid {
    Grid {
        min,
        max: edge.map_or(far, |e| e - 1e-9),
        points: 200,
    }
}

fn grid_json(g: &Grid) -> Value {
    Value::from(vec![
        Value::from(g.min),
        Value::from(g.max),
        Value::from(g.points),
    ])
}

fn spectrum(a: &SpectrumArgs) -> Result<Table, CliError> {
    if bound_state_count(&a.lambda, a.l).is_empty() {
        return Err(Error::NoBoundStates {
            l: a.l,
            lambda: a.lambda,
        }
        .into());
    }
    let mut t = Table::new(vec!["n", "L", "Lambda", "e", "admissible"]);
    for row in spectrum_table(a.lambda, a.l, a.n_max) {
        t.push(vec![
            row.qn.n.into(),
            row.qn.l.into(),
            row.big_lambda.into(),
            row.e.into(),
            row.admissible.into(),
        ]);
    }
    Ok(t)
}

fn states(a: &StatesArgs, grid: &Grid) -> Result<Table, CliError> {
    let mut t = Table::new(vec!["y", "R", "weight"]);
    // below the switch the closed form degenerates into the oscillator states
    if a.lambda.abs() <= LAMBDA_SWITCH {
        let ho = ho_wavefunction::<f64>(a.n, a.l);
        for y in grid.values() {
            t.push(vec![
                y.into(),
                ho.eval(y).into(),
                weight(y, a.lambda)?.into(),
            ]);
        }
        return Ok(t);
    }
    let state = normalized_state(a.n, a.l, a.lambda)?;
    for y in grid.values() {
        t.push(vec![
            y.into(),
            eval_state(&state, y)?.into(),
            weight(y, a.lambda)?.into(),
        ]);
    }
    Ok(t)
}

fn gram(a: &GramArgs) -> Result<Table, CliError> {
    let g = gram_matrix(a.l, a.lambda, a.n_max)?;
    let mut t = Table::new(vec!["m", "n", "value"]);
    for m in 0..g.size {
        for n in 0..g.size {
            t.push(vec![m.into(), n.into(), g.get(m, n).into()]);
        }
    }
    Ok(t)
}

fn shoot(a: &ShootArgs) -> Result<Table, CliError> {
    let ks: Vec<usize> = match a.n {
        Some(k) => vec![k],
        None => (0..bound_state_count(&a.lambda, a.l).truncate(a.n_max)).collect(),
    };
    if ks.is_empty() {
        return Err(Error::NoBoundStates {
            l: a.l,
            lambda: a.lambda,
        }
        .into());
    }
    let mut t = Table::new(vec![
        "n",
        "L",
        "Lambda",
        "e_shoot",
        "e_closed",
        "nodes",
        "iterations",
        "terminal_mismatch",
    ]);
    for k in ks {
        let r = shoot_eigenvalue(a.lambda, a.l, k, seed_bracket(a.lambda, a.l, k))?;
        t.push(vec![
            k.into(),
            a.l.into(),
            a.lambda.into(),
            r.e_numeric.into(),
            energy_dimless(k, a.l, a.lambda).into(),
            r.nodes.into(),
            r.iterations.into(),
            r.terminal_mismatch.into(),
        ]);
    }
    Ok(t)
}

fn limit(a: &LimitArgs) -> Result<Table, CliError> {
    let ns: Vec<usize> = match a.n {
        Some(n) => vec![n],
        None => (0..=a.n_max).collect(),
    };
    let mut t = Table::new(vec!["n", "L", "Lambda", "deviation"]);
    for n in ns {
        t.push(vec![
            n.into(),
            a.l.into(),
            a.lambda.into(),
            limit_compare(n, a.l, a.lambda)?.into(),
        ]);
    }
    Ok(t)
}

fn classical(a: &ClassicalArgs) -> Result<Dispatched<'_>, CliError> {
    let p = Params::new(a.mass, a.alpha, a.lambda, 1.0)?;
    let omega = frequency_for_amplitude(a.amplitude, &p)?;
    let exact = analytic_1d(a.amplitude, omega, std::f64::consts::FRAC_PI_2, &p)?;
    let t_end = a.t_end.unwrap_or(10.0 * exact.period());
    let params = param_map(&[
        ("lambda", a.lambda.into()),
        ("alpha", a.alpha.into()),
        ("mass", a.mass.into()),
        ("amplitude", a.amplitude.into()),
        ("ang_mom", a.ang_mom.into()),
        ("t_end", t_end.into()),
        ("tol", a.tol.into()),
    ]);
    let table = match a.ang_mom {
        None => {
            let traj = integrate_1d(a.amplitude, 0.0, &p, t_end, a.tol)?;
            let mut t = Table::new(vec!["t", "x", "v", "x_exact", "energy"]);
            for (s, h) in traj.samples.iter().zip(&traj.energy) {
                t.push(vec![
                    s.t.into(),
                    s.x.into(),
                    s.v.into(),
                    exact.position(s.t).into(),
                    (*h).into(),
                ]);
            }
            t
        }
        Some(c) => {
            let traj = integrate_planar(a.amplitude, 0.0, c, &p, t_end, a.tol)?;
            let mut t = Table::new(vec![
                "t", "r", "rdot", "theta", "thetadot", "energy", "ang_mom",
            ]);
            for ((s, h), l) in traj
                .samples
                .iter()
                .zip(&traj.energy)
                .zip(&traj.angular_momentum)
            {
                t.push(vec![
                    s.t.into(),
                    s.r.into(),
                    s.rdot.into(),
                    s.theta.into(),
                    s.thetadot.into(),
                    (*h).into(),
                    (*l).into(),
                ]);
            }
            t
        }
    };
    Ok((table, params, &a.output))
}

fn veff(a: &VeffArgs, p: &Params, grid: &Grid) -> Result<Table, CliError> {
    let mut t = Table::new(vec!["r", "V_eff", "V_eff_mass_form"]);
    for r in grid.values() {
        t.push(vec![
            r.into(),
            effective_potential(r, p, a.l)?.into(),
            effective_potential_mass_form(r, p, a.l)?.into(),
        ]);
    }
    Ok(t)
}
