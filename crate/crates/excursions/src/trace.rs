use std::fmt;
use std::io::Write;

use hyperbolic::{half_plane_dist, BoundaryPoint, Complex64, MoebiusMap};
use schottky::{Letter, SchottkyGroup};
use symbolic::{endpoint_in_cusp_frame, Block, BlockIter, SequenceSpec, Tail};

use crate::error::ExcursionError;
use crate::formulas::Excursion;
use crate::geodesic::Geodesic;

/// Relative tolerance for code endpoints in the cusp frame.
const TARGET_TOL: f64 = 1e-13;
const TARGET_MAX_BLOCKS: usize = 400;
/// Give up on a propagated boundary target once its error exceeds this.
const BOUNDARY_ERR_MAX: f64 = 1e-8;

/// What the ray is aimed at.
#[derive(Debug, Clone, PartialEq)]
pub enum RayTarget {
    /// The limit point of a code. The target is recomputed from the remaining
    /// code after every crossing, so it never loses precision.
    Code(SequenceSpec),
    /// A boundary point, pulled back through each crossing.
    Boundary(BoundaryPoint),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Region {
    /// Below the horocycle of level k.
    W,
    /// Inside the cusp of level k.
    Cusp,
}

impl fmt::Display for Region {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Region::W => "W",
            Region::Cusp => "cusp",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Termination {
    /// Reached the requested total length.
    Horizon,
    /// The ray left through a free side of the domain.
    EscapedToFunnel,
    /// The pulled-back boundary target is no longer accurate.
    PrecisionExhausted,
    /// The side crossed disagrees with the next letter of the code.
    CodeMismatch { expected: Letter, found: Option<Letter> },
    /// The finite code ran out.
    CodeExhausted,
}

/// One crossing of the domain: from the entry point to the side where the ray
/// leaves, in renormalized coordinates.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RayStep {
    pub geodesic: Geodesic,
    pub s_start: f64,
    pub s_end: f64,
    /// Arclength time at the start of the step.
    pub start_time: f64,
    /// Side crossed at the end; `None` for the last, truncated step.
    pub letter: Option<Letter>,
}

/// A ledger row: the part of one step lying in a single region.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LedgerRow {
    pub index: usize,
    pub step: usize,
    /// Letter crossed at the end of this row, on the last row of a step.
    pub letter: Option<Letter>,
    pub length: f64,
    pub region: Region,
    /// Time at the end of the row.
    pub cumulative: f64,
    pub s_start: f64,
    pub s_end: f64,
    /// Closest approach to the base point; in the renormalized picture this is
    /// the distance in the quotient surface.
    pub min_base_distance: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RayTrace {
    /// Base point in the cusp frame.
    pub base_point: Complex64,
    pub target: RayTarget,
    pub horizon: f64,
    pub level: f64,
    pub steps: Vec<RayStep>,
    pub ledger: Vec<LedgerRow>,
    pub termination: Termination,
    /// The ray ended on a vertical line heading into the cusp for good.
    pub cusp_forever: bool,
}

/// The Dirichlet domain of the base point in the cusp frame: the strip
/// |Re z| < 1/2 minus the two half-discs of h and h^-1.
#[derive(Debug, Clone)]
struct CuspDomain {
    /// (letter, center, radius, interval) for h and h^-1.
    discs: [(Letter, f64, f64); 2],
    inverse_maps: [MoebiusMap; 2],
}

impl CuspDomain {
    fn new(group: &SchottkyGroup) -> Self {
        let frame = group.cusp_frame();
        let disc = |l: Letter| {
            let (a, b) = group.region(l).endpoints();
            let real = |t: f64| match frame.angle_to_half_plane(t) {
                BoundaryPoint::Real(x) => x,
                _ => unreachable!("h regions avoid the cusp"),
            };
            let (x, y) = (real(a), real(b));
            (l, (x + y) / 2.0, (x - y).abs() / 2.0)
        };
        Self {
            discs: [disc(Letter::H), disc(Letter::HInv)],
            inverse_maps: [group.generator_in_cusp_frame(Letter::HInv), group.generator_in_cusp_frame(Letter::H)],
        }
    }

    /// The region D(g) whose boundary interval holds `x`.
    fn side_of(&self, x: Option<f64>) -> Option<Letter> {
        let Some(x) = x else { return None };
        if x >= 0.5 {
            return Some(Letter::P);
        }
        if x <= -0.5 {
            return Some(Letter::PInv);
        }
        self.discs.iter().find(|(_, c, r)| (x - c).abs() < *r).map(|d| d.0)
    }

    fn exit_point(&self, g: &Geodesic, letter: Letter) -> Option<Complex64> {
        match letter {
            Letter::P => g.meet_line(0.5),
            Letter::PInv => g.meet_line(-0.5),
            _ => {
                let (_, c, r) = self.discs[if letter == Letter::H { 0 } else { 1 }];
                g.meet_circle(c, r)
            }
        }
    }

    /// Apply the inverse of the crossed generator.
    fn renormalize(&self, z: Complex64, letter: Letter) -> Complex64 {
        match letter {
            Letter::P => Complex64::new(z.re - 1.0, z.im),
            Letter::PInv => Complex64::new(z.re + 1.0, z.im),
            Letter::H => self.inverse_maps[0].apply_complex(z),
            Letter::HInv => self.inverse_maps[1].apply_complex(z),
        }
    }

    fn renormalize_boundary(&self, x: Option<f64>, letter: Letter) -> Option<f64> {
        let m = match letter {
            Letter::P => return x.map(|x| x - 1.0),
            Letter::PInv => return x.map(|x| x + 1.0),
            Letter::H => self.inverse_maps[0],
            Letter::HInv => self.inverse_maps[1],
        };
        let [a, b, c, d] = m.entries();
        match x {
            None => Some(a / c),
            Some(x) => Some((a * x + b) / (c * x + d)),
        }
    }

    fn derivative(&self, x: f64, letter: Letter) -> f64 {
        match letter {
            Letter::P | Letter::PInv => 1.0,
            _ => {
                let [_, _, c, d] = self.inverse_maps[if letter == Letter::H { 0 } else { 1 }].entries();
                1.0 / (c * x + d).powi(2)
            }
        }
    }
}

/// Position in an infinite code: the rest of the current block, then the
/// remaining blocks, then the tail.
#[derive(Debug, Clone)]
struct CodeCursor {
    head: Option<Block>,
    rest: BlockIter,
    tail: Tail,
}

impl CodeCursor {
    fn new(spec: &SequenceSpec) -> Self {
        let mut rest = spec.blocks();
        Self { head: rest.next(), rest, tail: spec.tail() }
    }

    fn next_letter(&self) -> Option<Letter> {
        match (self.head, self.tail) {
            (Some(b), _) => Some(b.letter()),
            (None, Tail::Constant(l)) => Some(l),
            _ => None,
        }
    }

    fn advance(&mut self) {
        if let Some(b) = &mut self.head {
            b.exp -= b.exp.signum();
            if b.exp == 0 {
                self.head = self.rest.next();
            }
        }
    }

    fn target(&self, group: &SchottkyGroup) -> Option<f64> {
        let blocks = self.head.into_iter().chain(self.rest.clone());
        endpoint_in_cusp_frame(blocks, self.tail, group, TARGET_TOL, TARGET_MAX_BLOCKS).x
    }
}

enum Aim {
    Code(CodeCursor),
    Boundary { x: Option<f64>, err: f64 },
}

/// Follow the geodesic ray from the base point towards the target for total
/// length `horizon`, cutting it at each side of the domain and splitting the
/// time between the cusp of level `level` and its complement.
pub fn trace_ray(
    group: &SchottkyGroup,
    target: &RayTarget,
    horizon: f64,
    level: f64,
) -> Result<RayTrace, ExcursionError> {
    if !(horizon > 0.0) || !horizon.is_finite() {
        return Err(ExcursionError::BadHorizon(horizon));
    }
    if !(level > 0.0) || !level.is_finite() {
        return Err(ExcursionError::BadLevel(level));
    }
    let frame = group.cusp_frame();
    let domain = CuspDomain::new(group);
    let base = frame.disc_to_half_plane(Complex64::new(0.0, 0.0));
    let mut aim = match target {
        RayTarget::Code(spec) => {
            if spec.tail() == Tail::End {
                return Err(ExcursionError::FiniteCode);
            }
            Aim::Code(CodeCursor::new(spec))
        }
        RayTarget::Boundary(p) => {
            let x = match p {
                BoundaryPoint::Angle(t) => frame.angle_to_half_plane(*t),
                other => *other,
            };
            let x = match x {
                BoundaryPoint::Real(x) => Some(x),
                _ => None,
            };
            Aim::Boundary { x, err: x.map_or(0.0, |x| 4.0 * f64::EPSILON * (1.0 + x.abs())) }
        }
    };

    let mut trace = RayTrace {
        base_point: base,
        target: target.clone(),
        horizon,
        level,
        steps: Vec::new(),
        ledger: Vec::new(),
        termination: Termination::Horizon,
        cusp_forever: false,
    };
    let mut z = base;
    let mut time = 0.0;
    loop {
        let (x, expected) = match &aim {
            Aim::Code(c) => {
                let Some(expected) = c.next_letter() else {
                    trace.termination = Termination::CodeExhausted;
                    break;
                };
                (c.target(group), Some(expected))
            }
            Aim::Boundary { x, err } => {
                if *err > BOUNDARY_ERR_MAX {
                    trace.termination = Termination::PrecisionExhausted;
                    break;
                }
                (*x, None)
            }
        };
        let g = Geodesic::towards(z, x);
        let s_start = g.param(z);
        let side = domain.side_of(x);
        if let Some(e) = expected {
            // the constant p tail aims straight up: no side is ever crossed
            if x.is_some() && side != Some(e) {
                trace.termination = Termination::CodeMismatch { expected: e, found: side };
                break;
            }
        }
        let exit = side.and_then(|l| domain.exit_point(&g, l).map(|w| (l, w)));
        if x.is_some() && side.is_some() && exit.is_none() {
            trace.termination = Termination::PrecisionExhausted;
            break;
        }
        let (mut s_end, mut letter) = match exit {
            Some((l, w)) => (g.param(w).max(s_start), Some(l)),
            None => (f64::INFINITY, None),
        };
        let mut done = false;
        if time + (s_end - s_start) >= horizon {
            s_end = s_start + (horizon - time);
            letter = None;
            done = true;
        }
        let step = trace.steps.len();
        trace.steps.push(RayStep { geodesic: g, s_start, s_end, start_time: time, letter });
        push_rows(&mut trace, &g, step, s_start, s_end, time, letter, base);
        time += s_end - s_start;
        if done {
            trace.termination =
                if x.is_some() && side.is_none() { Termination::EscapedToFunnel } else { Termination::Horizon };
            trace.cusp_forever = x.is_none() && g.point(s_end).im > level;
            break;
        }
        let Some(l) = letter else {
            trace.termination = Termination::EscapedToFunnel;
            break;
        };
        let w = g.point(s_end);
        z = domain.renormalize(w, l);
        match &mut aim {
            Aim::Code(c) => c.advance(),
            Aim::Boundary { x, err } => {
                let d = x.map_or(1.0, |x| domain.derivative(x, l).abs());
                let nx = domain.renormalize_boundary(*x, l);
                *err = *err * d + 4.0 * f64::EPSILON * (1.0 + nx.map_or(0.0, f64::abs));
                *x = nx;
            }
        }
    }
    Ok(trace)
}

#[allow(clippy::too_many_arguments)]
fn push_rows(
    trace: &mut RayTrace,
    g: &Geodesic,
    step: usize,
    s_start: f64,
    s_end: f64,
    time: f64,
    letter: Option<Letter>,
    base: Complex64,
) {
    let (lo, hi) = g.above(trace.level);
    let cuts = [
        (s_start, s_end.min(lo).max(s_start), Region::W),
        (s_start.max(lo), s_end.min(hi), Region::Cusp),
        (s_start.max(hi), s_end, Region::W),
    ];
    let first = trace.ledger.len();
    let mut t = time;
    for (a, b, region) in cuts {
        if b > a {
            t += b - a;
            trace.ledger.push(LedgerRow {
                index: trace.ledger.len(),
                step,
                letter: None,
                length: b - a,
                region,
                cumulative: t,
                s_start: a,
                s_end: b,
                min_base_distance: g.min_distance(base, a, b),
            });
        }
    }
    if trace.ledger.len() == first {
        // zero-length step, e.g. through a corner: keep it for the letter
        let region = if g.point(s_start).im > trace.level { Region::Cusp } else { Region::W };
        trace.ledger.push(LedgerRow {
            index: first,
            step,
            letter: None,
            length: 0.0,
            region,
            cumulative: time,
            s_start,
            s_end: s_start,
            min_base_distance: half_plane_dist(base, g.point(s_start)),
        });
    }
    trace.ledger.last_mut().unwrap().letter = letter;
}

impl RayTrace {
    /// The cutting sequence.
    pub fn letters(&self) -> Vec<Letter> {
        self.steps.iter().filter_map(|s| s.letter).collect()
    }

    pub fn total_time(&self) -> f64 {
        self.ledger.iter().map(|r| r.length).sum()
    }

    pub fn time_in(&self, region: Region) -> f64 {
        self.ledger.iter().filter(|r| r.region == region).map(|r| r.length).sum()
    }

    /// Fraction of [0, t] spent in W, for t up to the traced time.
    pub fn w_fraction_until(&self, t: f64) -> f64 {
        if !(t > 0.0) {
            return 1.0;
        }
        let mut w = 0.0;
        for r in &self.ledger {
            let start = r.cumulative - r.length;
            if start >= t {
                break;
            }
            if r.region == Region::W {
                w += r.cumulative.min(t) - start;
            }
        }
        w / t.min(self.total_time()).max(f64::MIN_POSITIVE)
    }

    /// Maximal runs of cusp rows, excluding a run cut off by the horizon.
    pub fn excursions(&self) -> Vec<Excursion> {
        let mut out = Vec::new();
        let mut i = 0;
        while i < self.ledger.len() {
            if self.ledger[i].region != Region::Cusp {
                i += 1;
                continue;
            }
            let start = i;
            let mut length = 0.0;
            let mut displacement = 0.0;
            while i < self.ledger.len() && self.ledger[i].region == Region::Cusp {
                let r = &self.ledger[i];
                let g = &self.steps[r.step].geodesic;
                length += r.length;
                if r.length > 0.0 {
                    displacement += g.point(r.s_end).re - g.point(r.s_start).re;
                }
                i += 1;
            }
            if i == self.ledger.len() {
                break;
            }
            let entry = self.ledger[start].cumulative - self.ledger[start].length;
            let displacement = displacement.abs();
            out.push(Excursion {
                entry_time: entry,
                exit_time: entry + length,
                winding: displacement.floor() as u64,
                level: self.level,
                length,
                displacement,
            });
        }
        out
    }

    /// Start times of the W rows that come within `radius` of the base point.
    pub fn radial_returns(&self, radius: f64) -> Vec<f64> {
        self.ledger
            .iter()
            .filter(|r| r.region == Region::W && r.length > 0.0 && r.min_base_distance <= radius)
            .map(|r| r.cumulative - r.length)
            .fold(Vec::new(), |mut out: Vec<f64>, t| {
                // rows shorter than the time resolution would repeat a time
                if out.last().is_none_or(|&last| t > last) {
                    out.push(t);
                }
                out
            })
    }

    /// Points where the ray crosses the sides of h and h^-1.
    pub fn h_crossings(&self) -> Vec<Complex64> {
        self.steps
            .iter()
            .filter(|s| matches!(s.letter, Some(Letter::H) | Some(Letter::HInv)))
            .map(|s| s.geodesic.point(s.s_end))
            .collect()
    }

    /// Diameter of the traced part of W, over row endpoints in renormalized
    /// coordinates. Thinned to at most `max_points` points.
    pub fn w_diameter(&self, max_points: usize) -> f64 {
        let mut pts: Vec<Complex64> = Vec::new();
        for r in self.ledger.iter().filter(|r| r.region == Region::W) {
            let g = &self.steps[r.step].geodesic;
            pts.push(g.point(r.s_start));
            pts.push(g.point(r.s_end));
        }
        let stride = pts.len().div_ceil(max_points.max(1)).max(1);
        let pts: Vec<Complex64> = pts.into_iter().step_by(stride).collect();
        let mut best: f64 = 0.0;
        for (i, a) in pts.iter().enumerate() {
            for b in &pts[i + 1..] {
                best = best.max(half_plane_dist(*a, *b));
            }
        }
        best
    }

    /// Ledger as CSV: segment index, letter, length, region tag, cumulative time.
    pub fn write_ledger_csv<W: Write>(&self, out: W) -> Result<(), ExcursionError> {
        let err = |e: csv::Error| ExcursionError::Csv(e.to_string());
        let mut w = csv::Writer::from_writer(out);
        w.write_record(["index", "letter", "length", "region", "cumulative"]).map_err(err)?;
        for r in &self.ledger {
            let letter = r.letter.map(|l| l.to_string()).unwrap_or_default();
            w.write_record([
                r.index.to_string(),
                letter,
                format!("{:.12}", r.length),
                r.region.to_string(),
                format!("{:.12}", r.cumulative),
            ])
            .map_err(err)?;
        }
        w.flush().map_err(|e| ExcursionError::Csv(e.to_string()))
    }
}

/// l_W / (l_W + l_cusp) over the whole trace.
pub fn time_average(trace: &RayTrace) -> f64 {
    let total = trace.total_time();
    if total > 0.0 {
        trace.time_in(Region::W) / total
    } else {
        1.0
    }
}

/// Time averages over [0, t] for each t in the grid, from a single trace.
pub fn time_average_grid(trace: &RayTrace, grid: &[f64]) -> Vec<(f64, f64)> {
    grid.iter().map(|&t| (t, trace.w_fraction_until(t))).collect()
}
