//! Scenario configuration: JSON file, CLI overrides, and validation into a
//! resolved [`Scenario`].

use std::path::PathBuf;
use std::str::FromStr;

use anyhow::{anyhow, bail, Context};
use esd_core::{Damping64, Schedule64, ScheduledOp, Switch, XState64};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InitialState {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
    #[serde(default)]
    pub z_inner: f64,
    #[serde(default)]
    pub z_corner: f64,
}

impl Default for InitialState {
    fn default() -> Self {
        Self {
            a: 1.0,
            b: 1.0,
            c: 1.0,
            d: 0.0,
            z_inner: 1.0,
            z_corner: 0.0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TimeUnit {
    /// Dimensionless `τ = Γt`.
    #[default]
    Tau,
    Physical,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum SwitchKind {
    #[default]
    Both,
    Alice,
    Bob,
    None,
}

impl SwitchKind {
    pub fn to_switch(self) -> Option<Switch> {
        match self {
            SwitchKind::Both => Some(Switch::Both),
            SwitchKind::Alice => Some(Switch::Alice),
            SwitchKind::Bob => Some(Switch::Bob),
            SwitchKind::None => None,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            SwitchKind::Both => "both",
            SwitchKind::Alice => "alice",
            SwitchKind::Bob => "bob",
            SwitchKind::None => "none",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScheduleEntry {
    pub time: f64,
    pub switch: SwitchKind,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridSpec {
    pub start: f64,
    pub stop: f64,
    pub count: usize,
}

impl FromStr for GridSpec {
    type Err = anyhow::Error;

    /// `START:STOP:COUNT`.
    fn from_str(s: &str) -> anyhow::Result<Self> {
        let parts: Vec<&str> = s.split(':').collect();
        let [start, stop, count] = parts.as_slice() else {
            bail!("grid: expected START:STOP:COUNT, got `{s}`");
        };
        Ok(Self {
            start: start
                .trim()
                .parse()
                .with_context(|| format!("grid: bad start `{start}`"))?,
            stop: stop
                .trim()
                .parse()
                .with_context(|| format!("grid: bad stop `{stop}`"))?,
            count: count
                .trim()
                .parse()
                .with_context(|| format!("grid: bad count `{count}`"))?,
        })
    }
}

fn default_gamma() -> f64 {
    1.0
}

fn default_tol() -> f64 {
    esd_core::deathclock::DEFAULT_TOL
}

/// Everything a command needs. Serialized as one JSON document.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioConfig {
    #[serde(default)]
    pub initial: InitialState,
    #[serde(default = "default_gamma")]
    pub gamma: f64,
    #[serde(default)]
    pub time_unit: TimeUnit,
    /// Switch events for `evolve`.
    #[serde(default)]
    pub schedule: Vec<ScheduleEntry>,
    /// Switch kind for `sweep` and `critical`.
    #[serde(default)]
    pub switch: SwitchKind,
    #[serde(default)]
    pub grid: Option<GridSpec>,
    #[serde(default = "default_tol")]
    pub tol: f64,
    #[serde(default)]
    pub output: Option<PathBuf>,
}

impl Default for ScenarioConfig {
    fn default() -> Self {
        Self {
            initial: InitialState::default(),
            gamma: default_gamma(),
            time_unit: TimeUnit::default(),
            schedule: Vec::new(),
            switch: SwitchKind::default(),
            grid: None,
            tol: default_tol(),
            output: None,
        }
    }
}

/// Command-line values that take precedence over the config file.
#[derive(Debug, Clone, Default)]
pub struct Overrides {
    pub out: Option<PathBuf>,
    pub switch: Option<SwitchKind>,
    pub t_sw: Option<f64>,
    pub grid: Option<GridSpec>,
    pub tol: Option<f64>,
    pub gamma: Option<f64>,
}

impl ScenarioConfig {
    pub fn from_json(text: &str) -> anyhow::Result<Self> {
        serde_json::from_str(text).map_err(|e| anyhow!("config: {e}"))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("config serializes")
    }

    /// `--switch K --t-sw T` replaces the schedule with one event; `--switch`
    /// alone sets the sweep kind.
    pub fn apply_overrides(&mut self, o: &Overrides) {
        if let Some(out) = &o.out {
            self.output = Some(out.clone());
        }
        if let Some(sw) = o.switch {
            self.switch = sw;
        }
        if let Some(t) = o.t_sw {
            self.schedule = match self.switch {
                SwitchKind::None => Vec::new(),
                sw => vec![ScheduleEntry {
                    time: t,
                    switch: sw,
                }],
            };
        } else if o.switch == Some(SwitchKind::None) {
            self.schedule.clear();
        }
        if let Some(g) = o.grid {
            self.grid = Some(g);
        }
        if let Some(t) = o.tol {
            self.tol = t;
        }
        if let Some(g) = o.gamma {
            self.gamma = g;
        }
    }

    pub fn resolve(&self) -> anyhow::Result<Scenario> {
        let i = self.initial;
        let initial = XState64::new(i.a, i.b, i.c, i.d, i.z_inner, i.z_corner)
            .map_err(|e| anyhow!("initial: {e}"))?;
        let damping = Damping64::new(self.gamma).map_err(|e| anyhow!("gamma: {e}"))?;
        if !(self.tol > 0.0 && self.tol.is_finite()) {
            bail!("tol: must be positive and finite, got {}", self.tol);
        }
        let to_tau = |t: f64| match self.time_unit {
            TimeUnit::Tau => t,
            TimeUnit::Physical => damping.to_tau(t),
        };
        let events = self
            .schedule
            .iter()
            .filter_map(|e| e.switch.to_switch().map(|sw| (e.time, sw)))
            .map(|(t, sw)| ScheduledOp {
                tau: to_tau(t),
                op: sw.into(),
            })
            .collect();
        let schedule = Schedule64::new(events).map_err(|e| anyhow!("schedule: {e}"))?;
        let grid = match self.grid {
            Some(g) => {
                if !(g.start.is_finite() && g.stop.is_finite()) || g.count == 0 {
                    bail!("grid: start/stop must be finite and count >= 1");
                }
                Some(GridSpec {
                    start: to_tau(g.start),
                    stop: to_tau(g.stop),
                    count: g.count,
                })
            }
            None => None,
        };
        Ok(Scenario {
            initial,
            damping,
            schedule,
            switch: self.switch,
            grid,
            tol: self.tol,
        })
    }
}

/// Validated scenario with all times in `τ`.
#[derive(Debug, Clone)]
pub struct Scenario {
    pub initial: XState64,
    pub damping: Damping64,
    pub schedule: Schedule64,
    pub switch: SwitchKind,
    pub grid: Option<GridSpec>,
    pub tol: f64,
}
