use std::io::Write;

use anyhow::{anyhow, bail};
use esd_core::deathclock::DEFAULT_SWEEP_POINTS;
use esd_core::{
    concurrence, eq5_max_deviation, find_t_a, find_t_b, find_t_end, linspace, sweep_tsw,
    trajectory, von_neumann_entropy, Error, Fate, Piecewise, Schedule64, SweepCurve64, XState64,
};

use crate::config::{GridSpec, Scenario};

const DEFAULT_EVOLVE_GRID: GridSpec = GridSpec {
    start: 0.0,
    stop: 1.2,
    count: 121,
};

/// 12 significant digits, scientific, never `-0`.
pub fn num(v: f64) -> String {
    format!("{:.11e}", v + 0.0)
}

fn grid_points(g: &GridSpec) -> Vec<f64> {
    linspace(g.start, g.stop, g.count)
}

pub fn evolve(sc: &Scenario, out: &mut dyn Write) -> anyhow::Result<()> {
    let grid = grid_points(&sc.grid.unwrap_or(DEFAULT_EVOLVE_GRID));
    let pw = Piecewise::new(&sc.initial, &sc.schedule)?;
    let traj = trajectory(&sc.initial, &sc.schedule, &grid).map_err(|e| match e {
        Error::Domain(msg) => anyhow!("grid: {msg}"),
        e => e.into(),
    })?;
    writeln!(
        out,
        "tau,a,b,c,d,z_inner,z_corner,negativity,concurrence,entropy"
    )?;
    for (tau, neg) in traj {
        let s = pw.state_at(tau)?;
        let m = s.to_density_matrix();
        let cols = [
            tau,
            s.a(),
            s.b(),
            s.c(),
            s.d(),
            s.z_inner(),
            s.z_corner(),
            neg.value(),
            concurrence(&m)?.value(),
            von_neumann_entropy(&m)?.value(),
        ];
        let row: Vec<String> = cols.iter().map(|&v| num(v)).collect();
        writeln!(out, "{}", row.join(","))?;
    }
    Ok(())
}

fn unswitched_end(sc: &Scenario) -> anyhow::Result<Fate<f64>> {
    Ok(find_t_end(&sc.initial, &Schedule64::empty(), sc.tol)?.fate)
}

/// Sweep grid: explicit, or `DEFAULT_SWEEP_POINTS` points on `[0, t0)`.
fn sweep_grid(sc: &Scenario, t0: Option<f64>) -> anyhow::Result<Vec<f64>> {
    match sc.grid {
        Some(g) => {
            if g.count < 2 {
                bail!("grid: sweeps need count >= 2, got {}", g.count);
            }
            Ok(grid_points(&g))
        }
        None => {
            let stop = t0.unwrap_or(DEFAULT_EVOLVE_GRID.stop);
            let mut g = linspace(0.0, stop, DEFAULT_SWEEP_POINTS + 1);
            g.pop();
            Ok(g)
        }
    }
}

fn run_sweep(sc: &Scenario) -> anyhow::Result<SweepCurve64> {
    let sw = sc
        .switch
        .to_switch()
        .ok_or_else(|| anyhow!("switch: sweeps need a switch kind (both, alice or bob)"))?;
    let t0 = match unswitched_end(sc)? {
        Fate::FiniteEnd(t) => Some(t),
        _ => None,
    };
    let grid = sweep_grid(sc, t0)?;
    sweep_tsw(&sc.initial, sw, &grid, sc.tol).map_err(|e| match e {
        Error::Domain(msg) => anyhow!("grid: {msg}"),
        e => e.into(),
    })
}

fn opt(v: Option<f64>) -> String {
    v.map(num).unwrap_or_else(|| "none".into())
}

pub fn sweep(sc: &Scenario, out: &mut dyn Write) -> anyhow::Result<()> {
    let curve = run_sweep(sc)?;
    writeln!(out, "tau_sw,fate_code,tau_end")?;
    for row in &curve.rows {
        let end = row.report.tau_end().map(num).unwrap_or_default();
        writeln!(
            out,
            "{},{},{}",
            num(row.tau_sw),
            row.report.fate.code(),
            end
        )?;
    }
    writeln!(out, "# switch={}", sc.switch.name())?;
    writeln!(out, "# t_a={}", opt(curve.t_a))?;
    writeln!(out, "# t_b={}", opt(curve.t_b))?;
    writeln!(out, "# minimum_tau_sw={}", opt(curve.minimum.map(|m| m.0)))?;
    writeln!(out, "# minimum_tau_end={}", opt(curve.minimum.map(|m| m.1)))?;
    if curve.switch.is_single_sided() {
        // the analytic single-sided curve only describes the standard initial state
        let dev = if sc.initial == XState64::with_excited_admixture() {
            num(eq5_max_deviation(&curve)?)
        } else {
            "n/a".into()
        };
        writeln!(out, "# eq5_max_deviation={dev}")?;
    }
    Ok(())
}

pub fn critical(sc: &Scenario, out: &mut dyn Write) -> anyhow::Result<()> {
    let fate = unswitched_end(sc)?;
    let t_a = find_t_a(&sc.initial).ok();
    let t_b = match sc.switch.to_switch() {
        Some(sw) => match find_t_b(&sc.initial, sw, sc.tol) {
            Ok(t) => Some(t),
            Err(Error::NoBracket { .. }) => None,
            Err(e) => return Err(e.into()),
        },
        None => None,
    };
    let minimum = match (fate, sc.switch.to_switch()) {
        (Fate::FiniteEnd(_), Some(_)) => run_sweep(sc)?.minimum,
        _ => None,
    };

    writeln!(out, "quantity,status,tau,t")?;
    let mut line = |name: &str, status: &str, tau: Option<f64>| -> std::io::Result<()> {
        let (a, b) = match tau {
            Some(t) => (num(t), num(sc.damping.to_physical(t))),
            None => (String::new(), String::new()),
        };
        writeln!(out, "{name},{status},{a},{b}")
    };
    match fate {
        Fate::FiniteEnd(t) => line("t_0", "finite", Some(t))?,
        Fate::Averted => line("t_0", "averted", None)?,
        Fate::NeverEntangled => line("t_0", "never", None)?,
    }
    for (name, v) in [
        ("t_a", t_a),
        ("t_b", t_b),
        ("t_1", minimum.map(|m| m.0)),
        ("t_min_end", minimum.map(|m| m.1)),
    ] {
        line(name, if v.is_some() { "finite" } else { "none" }, v)?;
    }
    writeln!(out, "# gamma={}", num(sc.damping.rate()))?;
    writeln!(out, "# switch={}", sc.switch.name())?;
    Ok(())
}
