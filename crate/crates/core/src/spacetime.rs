//! Exact-rational Minkowski kernel: relativized times, observed orderings,
//! witness verification and normalization, plus the explicit constructions
//! (the 1-D two-observer pair, the simplex of `n+1` events realizing all of
//! `S_{n+1}`, and the axis construction realizing any four orderings).
//!
//! Only the time ordering of events matters, so the kernel never applies a
//! full Lorentz boost: observer `j` ranks events by `t - v.w`, which is the
//! true observed time up to the positive factor `gamma`.

use std::fmt;
use std::str::FromStr;

use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::perm::{parse_permset_at, PermSet, Permutation};
use crate::rational::{dot, format_rational, int, norm_sq, parse_rational, rat, Rat};

#[derive(Debug, Error)]
pub enum SpacetimeError {
    #[error("dimension mismatch: event has {event} spatial coordinates, velocity {velocity}")]
    DimensionMismatch { event: usize, velocity: usize },
    #[error("degenerate ordering: events {j} and {k} have equal relativized time")]
    DegenerateOrdering { j: usize, k: usize },
    #[error("axis construction supports at most d+1 = {max} orderings, got {got}; use the realizer for larger sets")]
    TooManyOrderings { max: usize, got: usize },
    #[error("axis speeds must lie strictly between 0 and 1")]
    BadAxisSpeed,
    #[error("normalization factor must be positive")]
    BadScale,
    #[error("witness parse error at line {line}: {what}")]
    WitnessParse { line: usize, what: String },
}

/// A spacetime point with exact rational coordinates, `c = 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Event {
    pub t: Rat,
    pub x: Vec<Rat>,
}

impl Event {
    pub fn new(t: Rat, x: Vec<Rat>) -> Self {
        Event { t, x }
    }

    pub fn dim(&self) -> usize {
        self.x.len()
    }
}

/// A frame velocity relative to the rest frame. Speeds at or above 1 are
/// representable; they are only rejected by [`verify_witness`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Velocity(pub Vec<Rat>);

impl Velocity {
    pub fn zero(dim: usize) -> Self {
        Velocity(vec![Rat::zero(); dim])
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn speed_squared(&self) -> Rat {
        norm_sq(&self.0)
    }

    pub fn is_subluminal(&self) -> bool {
        self.speed_squared() < Rat::one()
    }
}

/// Events, one velocity per observer (aligned with the sorted members of
/// `claim`), and the orderings the observers are claimed to see.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub events: Vec<Event>,
    pub velocities: Vec<Velocity>,
    pub claim: PermSet,
}

/// Why a witness failed verification.
#[derive(Debug, Error)]
pub enum WitnessViolation {
    #[error("witness has {velocities} velocities but claims {orderings} orderings")]
    ObserverCountMismatch { velocities: usize, orderings: usize },
    #[error("witness has {events} events but the claim orders {n}")]
    EventCountMismatch { events: usize, n: usize },
    #[error("observer {observer}: {source}")]
    Degenerate {
        observer: usize,
        source: SpacetimeError,
    },
    #[error("observer {observer} sees {saw} but claims {claimed}")]
    WrongOrder {
        observer: usize,
        saw: Permutation,
        claimed: Permutation,
    },
    #[error("observer {observer} has speed squared {speed_sq} >= 1")]
    Superluminal { observer: usize, speed_sq: String },
}

/// `t - v.w`, the observer's clock up to the positive Lorentz factor.
pub fn relativized_time(e: &Event, v: &Velocity) -> Result<Rat, SpacetimeError> {
    if e.dim() != v.dim() {
        return Err(SpacetimeError::DimensionMismatch {
            event: e.dim(),
            velocity: v.dim(),
        });
    }
    Ok(&e.t - dot(&v.0, &e.x))
}

/// The permutation `sigma` with `time(E_sigma(1)) < ... < time(E_sigma(n))`.
/// Ties are hard errors: they mean the velocity sits on a separating
/// hyperplane and no strict ordering exists.
pub fn observed_order(events: &[Event], v: &Velocity) -> Result<Permutation, SpacetimeError> {
    let times: Vec<Rat> = events
        .iter()
        .map(|e| relativized_time(e, v))
        .collect::<Result<_, _>>()?;
    let mut order: Vec<usize> = (1..=events.len()).collect();
    order.sort_by(|&a, &b| times[a - 1].cmp(&times[b - 1]));
    for w in order.windows(2) {
        if times[w[0] - 1] == times[w[1] - 1] {
            return Err(SpacetimeError::DegenerateOrdering { j: w[0], k: w[1] });
        }
    }
    Ok(Permutation::from_one_line(order.iter().map(|&i| i as u8).collect())
        .expect("sorted indices form a permutation"))
}

/// True iff every observer sees exactly the claimed ordering and every speed
/// is below light speed.
pub fn verify_witness(w: &Witness) -> bool {
    verify_witness_detailed(w).is_ok()
}

pub fn verify_witness_detailed(w: &Witness) -> Result<(), WitnessViolation> {
    if w.velocities.len() != w.claim.len() {
        return Err(WitnessViolation::ObserverCountMismatch {
            velocities: w.velocities.len(),
            orderings: w.claim.len(),
        });
    }
    if w.events.len() != w.claim.n() {
        return Err(WitnessViolation::EventCountMismatch {
            events: w.events.len(),
            n: w.claim.n(),
        });
    }
    for (i, v) in w.velocities.iter().enumerate() {
        if !v.is_subluminal() {
            return Err(WitnessViolation::Superluminal {
                observer: i,
                speed_sq: format_rational(&v.speed_squared()),
            });
        }
        let saw = observed_order(&w.events, v)
            .map_err(|source| WitnessViolation::Degenerate { observer: i, source })?;
        let claimed = &w.claim.members()[i];
        if saw != *claimed {
            return Err(WitnessViolation::WrongOrder {
                observer: i,
                saw,
                claimed: claimed.clone(),
            });
        }
    }
    Ok(())
}

/// Scales velocities by `1/N` and spatial coordinates by `N`; every
/// relativized time, and hence every observed ordering, is unchanged.
pub fn normalize_witness(w: &Witness, scale: &Rat) -> Result<Witness, SpacetimeError> {
    if !scale.is_positive() {
        return Err(SpacetimeError::BadScale);
    }
    Ok(Witness {
        events: w
            .events
            .iter()
            .map(|e| Event::new(e.t.clone(), e.x.iter().map(|c| c * scale).collect()))
            .collect(),
        velocities: w
            .velocities
            .iter()
            .map(|v| Velocity(v.0.iter().map(|c| c / scale).collect()))
            .collect(),
        claim: w.claim.clone(),
    })
}

/// Smallest power of two exceeding the fastest speed in the witness.
pub fn auto_scale(w: &Witness) -> Rat {
    let max_sq = w
        .velocities
        .iter()
        .map(Velocity::speed_squared)
        .max()
        .unwrap_or_else(Rat::zero);
    let mut p = Rat::one();
    while &p * &p <= max_sq {
        p *= int(2);
    }
    p
}

/// [`normalize_witness`] with the automatic power-of-two scale; afterwards
/// every speed is strictly below 1.
pub fn auto_normalize(w: &Witness) -> (Witness, Rat) {
    let n = auto_scale(w);
    let scaled = normalize_witness(w, &n).expect("auto scale is positive");
    (scaled, n)
}

/// Events on a line realizing `{identity, sigma}` for observers at rest and
/// at `v = 1/2`: `t_i = i`, `x_i = 2(i - sigma^{-1}(i))`. For the identity
/// the two observers coincide on a single claimed ordering.
pub fn build_1d_pair_witness(sigma: &Permutation) -> Witness {
    let n = sigma.n();
    let inv = sigma.inverse();
    let events = (1..=n)
        .map(|i| {
            Event::new(
                int(i as i64),
                vec![int(2 * (i as i64 - inv.apply(i) as i64))],
            )
        })
        .collect();
    let (members, velocities) = if sigma.is_identity() {
        (vec![sigma.clone()], vec![Velocity::zero(1)])
    } else {
        (
            vec![Permutation::identity(n), sigma.clone()],
            vec![Velocity::zero(1), Velocity(vec![rat(1, 2)])],
        )
    };
    Witness {
        events,
        velocities,
        claim: PermSet::new(members).expect("distinct members"),
    }
}

/// Realizes any canonical set of up to `d+1` orderings with observer `j`
/// moving along axis `j`: event `i` sits at `(i - pi_j^{-1}(i)) / v_j` in
/// coordinate `j - 1`, so observer `j` clocks event `i` at `pi_j^{-1}(i)`.
pub fn build_axis_witness(q: &PermSet, speeds: &[Rat]) -> Result<Witness, SpacetimeError> {
    let d = speeds.len();
    if q.len() > d + 1 {
        return Err(SpacetimeError::TooManyOrderings {
            max: d + 1,
            got: q.len(),
        });
    }
    if speeds
        .iter()
        .any(|s| !s.is_positive() || *s >= Rat::one())
    {
        return Err(SpacetimeError::BadAxisSpeed);
    }
    let n = q.n();
    let movers: Vec<Permutation> = q.members()[1..].iter().map(Permutation::inverse).collect();
    let events = (1..=n)
        .map(|i| {
            let x = (0..d)
                .map(|j| match movers.get(j) {
                    Some(inv) => {
                        int(i as i64 - inv.apply(i) as i64) / &speeds[j]
                    }
                    None => Rat::zero(),
                })
                .collect();
            Event::new(int(i as i64), x)
        })
        .collect();
    let mut velocities = vec![Velocity::zero(d)];
    for j in 0..q.len() - 1 {
        let mut v = vec![Rat::zero(); d];
        v[j] = speeds[j].clone();
        velocities.push(Velocity(v));
    }
    Ok(Witness {
        events,
        velocities,
        claim: q.clone(),
    })
}

/// The simplex construction: `n+1` events in `n` spatial dimensions such
/// that every ordering in `S_{n+1}` is observed by some frame.
pub struct SimplexConstruction {
    /// `2 n^3`, the spatial scale that brings every raw velocity below light
    /// speed.
    pub scale: Rat,
    events_scaled: Vec<Event>,
    n: usize,
}

impl SimplexConstruction {
    /// Event 1 at the origin, event `i >= 2` on basis vector `e_{i-1}`
    /// (scaled), with `t_i = i`.
    pub fn new(n: usize) -> Self {
        let scale = int(2 * (n as i64).pow(3));
        let events_scaled = (1..=n + 1)
            .map(|i| {
                let mut x = vec![Rat::zero(); n];
                if i >= 2 {
                    x[i - 2] = scale.clone();
                }
                Event::new(int(i as i64), x)
            })
            .collect();
        SimplexConstruction {
            scale,
            events_scaled,
            n,
        }
    }

    pub fn events(&self) -> &[Event] {
        &self.events_scaled
    }

    /// The unscaled velocity whose ordering is `sigma`: component `i` is
    /// `i + sigma^{-1}(1) - sigma^{-1}(i+1)`.
    pub fn raw_velocity(&self, sigma: &Permutation) -> Velocity {
        let inv = sigma.inverse();
        Velocity(
            (1..=self.n)
                .map(|i| int(i as i64 + inv.apply(1) as i64 - inv.apply(i + 1) as i64))
                .collect(),
        )
    }

    /// The raw velocity divided by the scale; subluminal for every `sigma`.
    pub fn velocity(&self, sigma: &Permutation) -> Velocity {
        let raw = self.raw_velocity(sigma);
        Velocity(raw.0.into_iter().map(|c| c / &self.scale).collect())
    }

    /// A witness claiming every ordering of the given set at once.
    pub fn witness(&self, claim: &PermSet) -> Witness {
        Witness {
            events: self.events_scaled.clone(),
            velocities: claim.members().iter().map(|m| self.velocity(m)).collect(),
            claim: claim.clone(),
        }
    }
}

pub fn build_simplex_witness(n: usize) -> SimplexConstruction {
    SimplexConstruction::new(n)
}

// ---------------------------------------------------------------------------
// Witness text document

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let dim = self.events.first().map_or(0, Event::dim);
        writeln!(f, "witness v1")?;
        writeln!(f, "dimension {dim}")?;
        writeln!(f, "events {}", self.events.len())?;
        for e in &self.events {
            write!(f, "{}", format_rational(&e.t))?;
            for c in &e.x {
                write!(f, " {}", format_rational(c))?;
            }
            writeln!(f)?;
        }
        writeln!(f, "velocities {}", self.velocities.len())?;
        for v in &self.velocities {
            let mut first = true;
            for c in &v.0 {
                if !first {
                    write!(f, " ")?;
                }
                write!(f, "{}", format_rational(c))?;
                first = false;
            }
            writeln!(f)?;
        }
        writeln!(f, "claim {}", self.claim)
    }
}

impl FromStr for Witness {
    type Err = SpacetimeError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut lines = s.lines().enumerate();
        let mut next_line = |expect: &str| -> Result<(usize, String), SpacetimeError> {
            for (i, raw) in lines.by_ref() {
                let t = raw.trim();
                if !t.is_empty() {
                    return Ok((i + 1, t.to_string()));
                }
            }
            Err(SpacetimeError::WitnessParse {
                line: 0,
                what: format!("unexpected end of document, expected {expect}"),
            })
        };
        let fail = |line: usize, what: String| SpacetimeError::WitnessParse { line, what };

        let (ln, header) = next_line("header")?;
        if header != "witness v1" {
            return Err(fail(ln, format!("bad header {header:?}")));
        }
        let (ln, dim_line) = next_line("dimension")?;
        let dim: usize = dim_line
            .strip_prefix("dimension ")
            .and_then(|v| v.parse().ok())
            .ok_or_else(|| fail(ln, "expected `dimension <d>`".into()))?;
        let (ln, ev_line) = next_line("events")?;
        let n_events: usize = ev_line
            .strip_prefix("events ")
            .and_then(|v| v.parse().ok())
            .ok_or_else(|| fail(ln, "expected `events <n>`".into()))?;
        let mut events = Vec::with_capacity(n_events);
        for _ in 0..n_events {
            let (ln, row) = next_line("event row")?;
            let vals: Vec<Rat> = row
                .split_whitespace()
                .map(parse_rational)
                .collect::<Result<_, _>>()
                .map_err(|e| fail(ln, e.to_string()))?;
            if vals.len() != dim + 1 {
                return Err(fail(ln, format!("expected {} values", dim + 1)));
            }
            let mut it = vals.into_iter();
            let t = it.next().expect("len checked");
            events.push(Event::new(t, it.collect()));
        }
        let (ln, vel_line) = next_line("velocities")?;
        let n_vel: usize = vel_line
            .strip_prefix("velocities ")
            .and_then(|v| v.parse().ok())
            .ok_or_else(|| fail(ln, "expected `velocities <k>`".into()))?;
        let mut velocities = Vec::with_capacity(n_vel);
        for _ in 0..n_vel {
            let (ln, row) = next_line("velocity row")?;
            let vals: Vec<Rat> = row
                .split_whitespace()
                .map(parse_rational)
                .collect::<Result<_, _>>()
                .map_err(|e| fail(ln, e.to_string()))?;
            if vals.len() != dim {
                return Err(fail(ln, format!("expected {dim} values")));
            }
            velocities.push(Velocity(vals));
        }
        let (ln, claim_line) = next_line("claim")?;
        let body = claim_line
            .strip_prefix("claim ")
            .ok_or_else(|| fail(ln, "expected `claim {{...}}`".into()))?;
        let (claim, _) =
            parse_permset_at(body, 0).map_err(|e| fail(ln, e.to_string()))?;
        Ok(Witness {
            events,
            velocities,
            claim,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::{all_permutations, perm};

    #[test]
    fn relativized_time_examples() {
        let e = Event::new(int(3), vec![int(1), int(2)]);
        assert_eq!(
            relativized_time(&e, &Velocity::zero(2)).unwrap(),
            int(3)
        );
        let e = Event::new(int(2), vec![int(1), int(0), int(0)]);
        let v = Velocity(vec![rat(1, 2), int(0), int(0)]);
        assert_eq!(relativized_time(&e, &v).unwrap(), rat(3, 2));
        assert!(relativized_time(&e, &Velocity::zero(2)).is_err());
    }

    #[test]
    fn relativized_time_pair_construction_identity() {
        // with x_i = 2(i - sigma(i)) and v = 1/2 the clock reads sigma(i)
        let sigma = perm(&[2, 3, 1]);
        for i in 1..=3usize {
            let e = Event::new(
                int(i as i64),
                vec![int(2 * (i as i64 - sigma.apply(i) as i64))],
            );
            let v = Velocity(vec![rat(1, 2)]);
            assert_eq!(
                relativized_time(&e, &v).unwrap(),
                int(sigma.apply(i) as i64)
            );
        }
    }

    #[test]
    fn observed_order_examples() {
        let events: Vec<Event> = (1..=4)
            .map(|i| Event::new(int(i), vec![int(i % 2)]))
            .collect();
        assert_eq!(
            observed_order(&events, &Velocity::zero(1)).unwrap(),
            Permutation::identity(4)
        );
        // v chosen on the separating hyperplane of events 1 and 2:
        // t2 - t1 = v (x2 - x1) with x = (1, 0) gives v = -1
        let tie = Velocity(vec![int(-1)]);
        assert!(matches!(
            observed_order(&events[..2], &tie),
            Err(SpacetimeError::DegenerateOrdering { .. })
        ));
    }

    #[test]
    fn pair_witness_all_sigma_s5() {
        for sigma in all_permutations(5) {
            let w = build_1d_pair_witness(&sigma);
            assert!(verify_witness(&w), "sigma {sigma}");
        }
    }

    #[test]
    fn pair_witness_identity_case() {
        let w = build_1d_pair_witness(&Permutation::identity(4));
        assert!(w.events.iter().all(|e| e.x[0].is_zero()));
        assert!(verify_witness(&w));
        // the moving observer also sees the identity
        let moving = Velocity(vec![rat(1, 2)]);
        assert_eq!(
            observed_order(&w.events, &moving).unwrap(),
            Permutation::identity(4)
        );
    }

    #[test]
    fn pair_witness_moving_clock_reads_inverse() {
        let sigma = perm(&[3, 1, 4, 2, 5]);
        let w = build_1d_pair_witness(&sigma);
        let inv = sigma.inverse();
        let moving = &w.velocities[1];
        for i in 1..=5usize {
            assert_eq!(
                relativized_time(&w.events[i - 1], moving).unwrap(),
                int(inv.apply(i) as i64)
            );
        }
    }

    #[test]
    fn axis_witness_examples() {
        let q: PermSet = "{(1,2,3),(1,3,2),(2,1,3),(3,1,2)}".parse().unwrap();
        let speeds = vec![rat(1, 2), rat(1, 2), rat(1, 2)];
        let w = build_axis_witness(&q, &speeds).unwrap();
        assert!(verify_witness(&w));

        let single = PermSet::new(vec![Permutation::identity(4)]).unwrap();
        let w = build_axis_witness(&single, &speeds).unwrap();
        assert!(w.events.iter().all(|e| e.x.iter().all(Rat::is_zero)));
        assert!(verify_witness(&w));

        let five: PermSet =
            "{(1,2,3,4,5),(2,1,3,4,5),(1,3,2,4,5),(1,2,4,3,5),(1,2,3,5,4)}"
                .parse()
                .unwrap();
        assert!(matches!(
            build_axis_witness(&five, &speeds),
            Err(SpacetimeError::TooManyOrderings { .. })
        ));
        assert!(build_axis_witness(&q, &[int(1), int(1), int(1)]).is_err());
    }

    #[test]
    fn simplex_n3_realizes_all_of_s4() {
        let s = build_simplex_witness(3);
        let all = PermSet::new(all_permutations(4)).unwrap();
        let w = s.witness(&all);
        assert_eq!(w.velocities.len(), 24);
        assert!(verify_witness(&w));
        // raw squared speed peaks at the full reversal
        let max_sq = all
            .members()
            .iter()
            .map(|m| s.raw_velocity(m).speed_squared())
            .max()
            .unwrap();
        assert_eq!(max_sq, int(56));
        assert_eq!(
            s.raw_velocity(&Permutation::reversal(4)).speed_squared(),
            int(56)
        );
        assert_eq!(
            s.raw_velocity(&Permutation::identity(4)),
            Velocity(vec![int(0), int(0), int(0)])
        );
    }

    #[test]
    fn normalize_preserves_orders() {
        let s = build_simplex_witness(3);
        let all = PermSet::new(all_permutations(4)).unwrap();
        let w = s.witness(&all);
        let scaled = normalize_witness(&w, &rat(7, 3)).unwrap();
        for (a, b) in w.velocities.iter().zip(&scaled.velocities) {
            assert_eq!(
                observed_order(&w.events, a).unwrap(),
                observed_order(&scaled.events, b).unwrap()
            );
        }
        let same = normalize_witness(&w, &Rat::one()).unwrap();
        assert_eq!(w, same);
        assert!(normalize_witness(&w, &int(0)).is_err());
    }

    #[test]
    fn raw_simplex_normalizes_at_eight() {
        // unscaled events + raw velocities, rescaled by the automatic
        // power of two, become subluminal at N = 8
        let s = build_simplex_witness(3);
        let unscaled_events: Vec<Event> = (1..=4usize)
            .map(|i| {
                let mut x = vec![Rat::zero(); 3];
                if i >= 2 {
                    x[i - 2] = Rat::one();
                }
                Event::new(int(i as i64), x)
            })
            .collect();
        let all = PermSet::new(all_permutations(4)).unwrap();
        let raw = Witness {
            events: unscaled_events,
            velocities: all.members().iter().map(|m| s.raw_velocity(m)).collect(),
            claim: all,
        };
        let (scaled, n) = auto_normalize(&raw);
        assert_eq!(n, int(8));
        assert!(scaled.velocities.iter().all(Velocity::is_subluminal));
        assert!(verify_witness(&scaled));
    }

    #[test]
    fn witness_document_roundtrip() {
        let s = build_simplex_witness(2);
        let all = PermSet::new(all_permutations(3)).unwrap();
        let w = s.witness(&all);
        let text = w.to_string();
        let back: Witness = text.parse().unwrap();
        assert_eq!(w, back);
        assert_eq!(back.to_string(), text);
        assert!(verify_witness(&back));
    }

    #[test]
    fn witness_document_rejects_garbage() {
        assert!("witness v2\n".parse::<Witness>().is_err());
        let s = "witness v1\ndimension 1\nevents 1\n0/1 0/1 0/1\nvelocities 0\nclaim {(1)}\n";
        assert!(s.parse::<Witness>().is_err());
    }
}
