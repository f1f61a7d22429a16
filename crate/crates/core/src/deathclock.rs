//! Piecewise evolution under a switch schedule and location of the finite
//! end of entanglement.
//!
//! Between events an X state evolves in closed form, so on each segment the
//! separability discriminant `D = a·d − z²` (or `b·c − w²` for corner
//! coherence) is `x² q(x)` with `x = γ²` measured from the segment start and
//! `q` a quadratic. The `x²` factor only vanishes at `τ → ∞`; all sign
//! analysis runs on `q`.

use rayon::prelude::*;

use crate::channel::{evolve_kraus, evolve_xstate_at};
use crate::error::{Error, Result};
use crate::intervention::{apply, apply_xstate, Schedule, Switch};
use crate::qstate::{negativity_xstate, DensityMatrix4, MeasureValue, XShape, XState};
use crate::roots::{bisect, bisect_predicate, check_tol, golden_min};
use crate::scalar::Real;

/// Default bisection tolerance in `τ`.
pub const DEFAULT_TOL: f64 = 1e-10;
/// Default number of switch times in a sweep.
pub const DEFAULT_SWEEP_POINTS: usize = 400;
/// Subintervals per segment for the discriminant sign scan.
pub const SCAN_INTERVALS: usize = 10_000;
/// Upper switch time used by [`find_t_b`] when the unswitched state never dies.
pub const SWITCH_HORIZON: f64 = 30.0;

/// Separability discriminant; negative iff the state is entangled.
pub fn discriminant<T: Real>(s: &XState<T>) -> Result<T> {
    match s.shape() {
        XShape::Diagonal | XShape::Inner => Ok(s.a() * s.d() - s.z_inner() * s.z_inner()),
        XShape::Corner => Ok(s.b() * s.c() - s.z_corner() * s.z_corner()),
        XShape::Both => Err(Error::UnsupportedShape("both coherence slots are nonzero")),
    }
}

/// `q(x) = q0 + q1 x + q2 x²` such that `D = x² q(x)` on one segment.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReducedDiscriminant<T: Real> {
    pub q0: T,
    pub q1: T,
    pub q2: T,
}

impl<T: Real> ReducedDiscriminant<T> {
    pub fn for_segment(start: &XState<T>) -> Result<Self> {
        let (a, b, c, s) = (
            start.a(),
            start.b(),
            start.c(),
            start.a() + start.a() + start.b() + start.c(),
        );
        let q0 = match start.shape() {
            XShape::Diagonal | XShape::Inner => T::lit(3.0) * a - start.z_inner() * start.z_inner(),
            XShape::Corner => (b + a) * (c + a) - start.z_corner() * start.z_corner(),
            XShape::Both => {
                return Err(Error::UnsupportedShape("both coherence slots are nonzero"))
            }
        };
        Ok(Self {
            q0,
            q1: -a * s,
            q2: a * a,
        })
    }

    pub fn eval(&self, x: T) -> T {
        self.q0 + x * (self.q1 + x * self.q2)
    }

    /// Sign of `q` on `(0, ε)`; `true` means negative (entangled as `τ → ∞`).
    pub fn entangled_asymptotically(&self) -> bool {
        [self.q0, self.q1, self.q2]
            .into_iter()
            .find(|v| !v.is_zero())
            .is_some_and(|v| v < T::zero())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
struct Segment<T: Real> {
    start: T,
    state: XState<T>,
}

/// Closed-form evolution through a schedule of bit-flip switches.
#[derive(Debug, Clone, PartialEq)]
pub struct Piecewise<T: Real> {
    segments: Vec<Segment<T>>,
}

impl<T: Real> Piecewise<T> {
    pub fn new(s0: &XState<T>, schedule: &Schedule<T>) -> Result<Self> {
        s0.validate()?;
        let mut segments = vec![Segment {
            start: T::zero(),
            state: *s0,
        }];
        for ev in schedule.events() {
            let sw = ev.op.as_switch().ok_or(Error::UnsupportedShape(
                "X-state evolution needs bit-flip switches",
            ))?;
            let last = segments.last().expect("nonempty");
            let before = evolve_xstate_at(&last.state, (last.start - ev.tau).exp());
            let after = apply_xstate(&before, sw);
            if ev.tau == last.start {
                // switch at τ = 0
                segments.pop();
            }
            segments.push(Segment {
                start: ev.tau,
                state: after,
            });
        }
        Ok(Self { segments })
    }

    fn segment_index(&self, tau: T) -> usize {
        self.segments
            .partition_point(|s| s.start <= tau)
            .saturating_sub(1)
    }

    /// State at `τ`; at an event time this is the post-switch state.
    pub fn state_at(&self, tau: T) -> Result<XState<T>> {
        if !(tau >= T::zero() && tau.is_finite()) {
            return Err(Error::NegativeTime(tau.as_f64()));
        }
        let seg = &self.segments[self.segment_index(tau)];
        Ok(evolve_xstate_at(&seg.state, (seg.start - tau).exp()))
    }

    pub fn breakpoints(&self) -> impl Iterator<Item = T> + '_ {
        self.segments.iter().map(|s| s.start)
    }
}

/// Negativity sampled on `grid` under `schedule`.
pub fn trajectory<T: Real>(
    s0: &XState<T>,
    schedule: &Schedule<T>,
    grid: &[T],
) -> Result<Vec<(T, MeasureValue<T>)>> {
    check_grid(grid)?;
    let pw = Piecewise::new(s0, schedule)?;
    grid.iter()
        .map(|&tau| {
            let s = pw.state_at(tau)?;
            Ok((tau, negativity_xstate(&s)?))
        })
        .collect()
}

/// Density-matrix route through a schedule: Kraus evolution between events
/// and full conjugation at them. Accepts general local unitaries.
pub fn evolve_density_scheduled<T: Real>(
    m0: &DensityMatrix4<T>,
    schedule: &Schedule<T>,
    tau: T,
) -> Result<DensityMatrix4<T>> {
    if !(tau >= T::zero() && tau.is_finite()) {
        return Err(Error::NegativeTime(tau.as_f64()));
    }
    let mut m = *m0;
    let mut now = T::zero();
    for ev in schedule.events().iter().take_while(|ev| ev.tau <= tau) {
        m = evolve_kraus(&m, ev.tau - now)?;
        m = apply(&m, &ev.op);
        now = ev.tau;
    }
    evolve_kraus(&m, tau - now)
}

fn check_grid<T: Real>(grid: &[T]) -> Result<()> {
    for (i, &t) in grid.iter().enumerate() {
        if !(t >= T::zero() && t.is_finite()) {
            return Err(Error::Domain(format!(
                "grid point {i} = {t} is not a finite time >= 0"
            )));
        }
        if i > 0 && !(t > grid[i - 1]) {
            return Err(Error::Domain(format!(
                "grid is not increasing at index {i}"
            )));
        }
    }
    Ok(())
}

/// What happens to the entanglement.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Fate<T: Real> {
    /// Entanglement ends at this `τ` and never returns.
    FiniteEnd(T),
    /// Entangled at every finite time.
    Averted,
    NeverEntangled,
}

impl<T: Real> Fate<T> {
    /// Integer code used in tabular output.
    pub fn code(&self) -> u8 {
        match self {
            Fate::FiniteEnd(_) => 0,
            Fate::Averted => 1,
            Fate::NeverEntangled => 2,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DeathReport<T: Real> {
    pub fate: Fate<T>,
    /// Discriminant at the end time for `FiniteEnd`, the asymptotic reduced
    /// value `q(0⁺)` for `Averted`, the initial discriminant otherwise.
    pub witness: T,
}

impl<T: Real> DeathReport<T> {
    pub fn tau_end(&self) -> Option<T> {
        match self.fate {
            Fate::FiniteEnd(t) => Some(t),
            _ => None,
        }
    }

    pub fn is_averted(&self) -> bool {
        matches!(self.fate, Fate::Averted)
    }
}

/// Death crossing bracketed on one segment: `q(x_neg) < 0 ≤ q(x_sep)`,
/// `x_neg > x_sep ≥ 0`.
#[derive(Debug, Clone, Copy)]
struct Crossing<T> {
    segment: usize,
    x_neg: T,
    x_sep: T,
}

/// Locates the last transition of the discriminant from negative to
/// non-negative, provided it stays non-negative afterwards.
pub fn find_t_end<T: Real>(
    s0: &XState<T>,
    schedule: &Schedule<T>,
    tol: T,
) -> Result<DeathReport<T>> {
    check_tol(tol)?;
    let pw = Piecewise::new(s0, schedule)?;
    let nseg = pw.segments.len();
    let polys = pw
        .segments
        .iter()
        .map(|s| ReducedDiscriminant::for_segment(&s.state))
        .collect::<Result<Vec<_>>>()?;

    let n = T::from_usize(SCAN_INTERVALS).expect("scan count fits scalar");
    let mut prev: Option<(usize, T, bool)> = None;
    let mut last_death: Option<Crossing<T>> = None;
    let mut entangled_anywhere = false;
    let mut initially_entangled = false;

    for (k, q) in polys.iter().enumerate() {
        let x_end = match pw.segments.get(k + 1) {
            Some(next) => (pw.segments[k].start - next.start).exp(),
            None => T::zero(),
        };
        let last_segment = k + 1 == nseg;
        let first_j = usize::from(k > 0);
        for j in first_j..=SCAN_INTERVALS {
            let x = if j == SCAN_INTERVALS {
                x_end
            } else {
                T::one() - T::from_usize(j).expect("index fits scalar") / n * (T::one() - x_end)
            };
            let neg = if last_segment && j == SCAN_INTERVALS {
                q.entangled_asymptotically()
            } else {
                q.eval(x) < T::zero()
            };
            if k == 0 && j <= 1 && neg {
                initially_entangled = true;
            }
            entangled_anywhere |= neg;
            if let Some((pk, px, pneg)) = prev {
                if pneg && !neg {
                    // previous point on an earlier segment means the crossing is at the boundary
                    let (x_neg, segment) = if pk == k { (px, k) } else { (T::one(), k) };
                    last_death = Some(Crossing {
                        segment,
                        x_neg,
                        x_sep: x,
                    });
                }
            }
            prev = Some((k, x, neg));
        }
    }

    if !initially_entangled && !entangled_anywhere {
        return Ok(DeathReport {
            fate: Fate::NeverEntangled,
            witness: discriminant(s0)?,
        });
    }
    let final_poly = polys[nseg - 1];
    if final_poly.entangled_asymptotically() {
        return Ok(DeathReport {
            fate: Fate::Averted,
            witness: final_poly.q0,
        });
    }
    let crossing = last_death.ok_or(Error::Numerical("entangled state without a located end"))?;
    let tau_end = refine_crossing(&pw, &polys, crossing, tol)?;
    Ok(DeathReport {
        fate: Fate::FiniteEnd(tau_end),
        witness: discriminant(&pw.state_at(tau_end)?)?,
    })
}

fn refine_crossing<T: Real>(
    pw: &Piecewise<T>,
    polys: &[ReducedDiscriminant<T>],
    c: Crossing<T>,
    tol: T,
) -> Result<T> {
    let q = polys[c.segment];
    let start = pw.segments[c.segment].start;
    if q.eval(c.x_neg) >= T::zero() {
        // sign flipped exactly at the segment boundary
        return Ok(start - c.x_neg.ln());
    }
    let mut x_sep = c.x_sep;
    if x_sep.is_zero() {
        // root below the last scan point: walk toward x = 0 until q turns non-negative
        x_sep = c.x_neg;
        let half = T::lit(0.5);
        let mut steps = 0;
        while q.eval(x_sep) < T::zero() {
            x_sep = x_sep * half;
            steps += 1;
            if steps > 2000 || x_sep.is_zero() {
                return Err(Error::Numerical("could not bracket a late sign change"));
            }
        }
    }
    let lo = start - c.x_neg.ln();
    let hi = start - x_sep.ln();
    bisect(lo, hi, tol, |tau| q.eval((start - tau).exp()))
}

/// Time at which `a(τ) = d(τ)`, the instant where a double switch is a no-op
/// for `b = c` states.
pub fn find_t_a<T: Real>(s0: &XState<T>) -> Result<T> {
    s0.validate()?;
    let gap0 = s0.a() - s0.d();
    if gap0.is_zero() {
        return Ok(T::zero());
    }
    // a − d = S·γ² − 3 decreases monotonically in τ
    if gap0 < T::zero() {
        return Err(Error::NoCrossing("a(τ) stays below d(τ)"));
    }
    let gap = |tau: T| {
        let s = evolve_xstate_at(s0, (-tau).exp());
        s.a() - s.d()
    };
    let mut hi = T::one();
    while gap(hi) >= T::zero() {
        hi = hi + hi;
        if hi > T::lit(1e3) {
            return Err(Error::NoCrossing("a(τ) − d(τ) does not change sign"));
        }
    }
    bisect(T::zero(), hi, T::lit(1e-13), |tau| -gap(tau))
}

/// Critical switch time separating averted death (earlier switches) from a
/// finite end (later switches).
///
/// The bracket is `[0, t0]` with `t0` the end time without switching, or
/// `[0, SWITCH_HORIZON]` if that run never dies. A single-sided switch never
/// averts the end for the standard initial state, which shows up as
/// [`Error::NoBracket`].
pub fn find_t_b<T: Real>(s0: &XState<T>, switch: Switch, tol: T) -> Result<T> {
    check_tol(tol)?;
    let hi = match find_t_end(s0, &Schedule::empty(), tol)?.fate {
        Fate::FiniteEnd(t) => t,
        _ => T::lit(SWITCH_HORIZON),
    };
    let averted = |tau: T| -> Result<bool> {
        let sched = Schedule::single(tau, switch)?;
        Ok(find_t_end(s0, &sched, tol)?.is_averted())
    };
    let (lo, hi) = bisect_predicate(T::zero(), hi, tol, averted)?;
    Ok(lo + (hi - lo) * T::lit(0.5))
}

/// `y(x) = (3 − √(9 − 24x + 20x²)) / (2(2 − x))`, with `x = e^{−τ_sw}` and
/// `y = e^{−τ_end}` for a single-sided switch on the standard initial state.
pub fn eq5_curve<T: Real>(x: T) -> Result<T> {
    if !(x > T::zero() && x <= T::one()) {
        return Err(Error::Domain(format!("x = {x} outside (0, 1]")));
    }
    let lit = T::lit;
    let radicand = lit(9.0) - lit(24.0) * x + lit(20.0) * x * x;
    Ok((lit(3.0) - radicand.sqrt()) / (lit(2.0) * (lit(2.0) - x)))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepRow<T: Real> {
    pub tau_sw: T,
    pub report: DeathReport<T>,
}

/// `t_end` as a function of switch time, with the refined critical points.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepCurve<T: Real> {
    pub switch: Switch,
    pub rows: Vec<SweepRow<T>>,
    /// Switch time where `a = d`, if the state has one.
    pub t_a: Option<T>,
    /// Averted/finite threshold, if any.
    pub t_b: Option<T>,
    /// `(τ_sw, t_end)` at the smallest finite end time, refined by
    /// golden-section search around the best grid point.
    pub minimum: Option<(T, T)>,
}

impl<T: Real> SweepCurve<T> {
    /// `(τ_sw, t_end)` pairs for rows that end in finite time.
    pub fn finite_points(&self) -> impl Iterator<Item = (T, T)> + '_ {
        self.rows
            .iter()
            .filter_map(|r| r.report.tau_end().map(|t| (r.tau_sw, t)))
    }
}

/// Runs `find_t_end` with a single `switch` at every grid time.
///
/// Rows are computed in parallel and returned in grid order. The grid must
/// lie in `[0, t0)` when the unswitched state dies at `t0`.
pub fn sweep_tsw<T: Real>(
    s0: &XState<T>,
    switch: Switch,
    grid: &[T],
    tol: T,
) -> Result<SweepCurve<T>> {
    check_tol(tol)?;
    check_grid(grid)?;
    if grid.is_empty() {
        return Err(Error::Domain("empty sweep grid".into()));
    }
    if let Fate::FiniteEnd(t0) = find_t_end(s0, &Schedule::empty(), tol)?.fate {
        if let Some(bad) = grid.iter().find(|&&t| t >= t0) {
            return Err(Error::Domain(format!(
                "switch time {bad} is not before the unswitched end {t0}"
            )));
        }
    }

    let end_after = |tau_sw: T| -> Result<DeathReport<T>> {
        find_t_end(s0, &Schedule::single(tau_sw, switch)?, tol)
    };
    let rows = grid
        .par_iter()
        .map(|&tau_sw| {
            Ok(SweepRow {
                tau_sw,
                report: end_after(tau_sw)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;

    let t_a = find_t_a(s0).ok();
    let t_b = match find_t_b(s0, switch, tol) {
        Ok(t) => Some(t),
        Err(Error::NoBracket { .. }) => None,
        Err(e) => return Err(e),
    };

    let best = rows
        .iter()
        .enumerate()
        .filter_map(|(i, r)| r.report.tau_end().map(|t| (i, t)))
        .min_by(|x, y| x.1.partial_cmp(&y.1).expect("finite end times"));
    let minimum = match best {
        None => None,
        Some((i, t)) if rows.len() < 3 => Some((rows[i].tau_sw, t)),
        Some((i, _)) => {
            let lo = rows[i.saturating_sub(1)].tau_sw;
            let hi = rows[(i + 1).min(rows.len() - 1)].tau_sw;
            let refined = golden_min(lo, hi, T::lit(1e-9).max(tol), |tau_sw| {
                Ok(end_after(tau_sw)?.tau_end().unwrap_or_else(T::infinity))
            })?;
            Some(refined)
        }
    };

    Ok(SweepCurve {
        switch,
        rows,
        t_a,
        t_b,
        minimum,
    })
}

/// Largest `|t_end − (−ln y(e^{−τ_sw}))|` over the finite rows of a sweep.
pub fn eq5_max_deviation<T: Real>(curve: &SweepCurve<T>) -> Result<T> {
    curve
        .finite_points()
        .try_fold(T::zero(), |acc, (tau_sw, t_end)| {
            let predicted = -eq5_curve((-tau_sw).exp())?.ln();
            Ok(acc.max((t_end - predicted).abs()))
        })
}

/// Evenly spaced grid with `count` points on `[start, stop]`.
pub fn linspace<T: Real>(start: T, stop: T, count: usize) -> Vec<T> {
    match count {
        0 => Vec::new(),
        1 => vec![start],
        _ => {
            let step = (stop - start) / T::from_usize(count - 1).expect("count fits scalar");
            (0..count)
                .map(|i| {
                    if i + 1 == count {
                        stop
                    } else {
                        start + step * T::from_usize(i).expect("index fits scalar")
                    }
                })
                .collect()
        }
    }
}
