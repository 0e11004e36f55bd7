"""Tap-set calculus: difference schemes, repeated-equation counting and
sampling-schedule construction.

The central device is the integer-label timeline: after a cumulative shift s
the register content at tap positions {l_1..l_n} is the integer set
{l_1+s, .., l_n+s}, so a keystream bit reuses an already-seen state bit
exactly when the shifted set intersects the union of all earlier sets. Two
independent counting routes are provided and kept in agreement by tests:

* direct set computation (ground truth, :func:`repetition_profile`),
* the scheme-of-differences method (:func:`repeated_count_constant`,
  :func:`repeated_count_variable`).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence


class NoOverdefinedSystemError(RuntimeError):
    """Sampling hit its cap without producing an overdefined system."""


@dataclass(frozen=True)
class TapSet:
    """Ordered tap positions l_1 < ... < l_n on a register of length L."""

    positions: tuple[int, ...]
    register_length: int

    def __post_init__(self):
        pos = tuple(self.positions)
        if not pos:
            raise ValueError("need at least one tap")
        if any(p < 1 for p in pos):
            raise ValueError("tap positions are 1-based")
        if any(a >= b for a, b in zip(pos, pos[1:])):
            raise ValueError("tap positions must be strictly increasing")
        if pos[-1] > self.register_length:
            raise ValueError("tap position beyond register length")
        object.__setattr__(self, "positions", pos)

    @property
    def n(self) -> int:
        return len(self.positions)

    @property
    def span(self) -> int:
        """l_n - l_1, the largest shift at which overlaps can occur."""
        return self.positions[-1] - self.positions[0]

    @classmethod
    def from_differences(
        cls, diffs: Sequence[int], register_length: int, start: int = 1
    ) -> "TapSet":
        """Taps at cumulative sums of ``diffs`` beginning at ``start``."""
        positions = [start]
        for d in diffs:
            positions.append(positions[-1] + d)
        return cls(tuple(positions), register_length)


@dataclass(frozen=True)
class DifferenceScheme:
    """Triangular table of all tap differences l_{j+k} - l_j.

    Row k (1-based) holds l_{j+k} - l_j for j = 1..n-k; row 1 is the set of
    consecutive differences D.
    """

    consecutive: tuple[int, ...]
    table: tuple[tuple[int, ...], ...]

    @classmethod
    def from_differences(cls, diffs: Sequence[int]) -> "DifferenceScheme":
        d = tuple(diffs)
        rows = []
        for k in range(1, len(d) + 1):
            rows.append(tuple(sum(d[j:j + k]) for j in range(len(d) - k + 1)))
        return cls(d, tuple(rows))

    def entries(self) -> tuple[int, ...]:
        return tuple(v for row in self.table for v in row)


@dataclass(frozen=True)
class SamplingSchedule:
    """Concrete sampling distances with a mode tag."""

    steps: tuple[int, ...]
    mode: str = "custom"  # constant | greedy | cyclic | custom

    def __post_init__(self):
        steps = tuple(self.steps)
        if any(s < 1 for s in steps):
            raise ValueError("sampling distances must be >= 1")
        if self.mode == "constant" and len(set(steps)) > 1:
            raise ValueError("constant mode requires equal steps")
        if self.mode not in ("constant", "greedy", "cyclic", "custom"):
            raise ValueError(f"unknown schedule mode {self.mode!r}")
        object.__setattr__(self, "steps", steps)


@dataclass(frozen=True)
class RankStop:
    """Stop at the minimal sample count c with n*c - R > L."""

    cap_factor: int = 4


@dataclass(frozen=True)
class SampleStop:
    """Stop after exactly ``samples`` observed outputs."""

    samples: int

    def __post_init__(self):
        if self.samples < 1:
            raise ValueError("need at least one sample")


Stop = RankStop | SampleStop | None


@dataclass(frozen=True)
class RepetitionProfile:
    """Per-sample repeated-bit counts for a sampling run.

    ``q[j]`` is the number of bits of sample j+2 already seen in samples
    1..j+1 (the first sample never repeats anything), ``repeated_sets`` holds
    the matching integer labels when they were materialized, and ``k`` is the
    constant-mode shift horizon floor((l_n-l_1)/sigma).
    """

    q: tuple[int, ...]
    samples: int
    total: int
    n: int
    register_length: int
    mode: str
    steps: tuple[int, ...]
    sigma: int | None = None
    k: int | None = None
    repeated_sets: tuple[frozenset, ...] | None = None

    @property
    def distinct_equations(self) -> int:
        return self.n * self.samples - self.total

    def is_overdefined(self) -> bool:
        return self.distinct_equations > self.register_length

    def to_dict(self) -> dict:
        return {
            "mode": self.mode,
            "steps": list(self.steps),
            "sigma": self.sigma,
            "q": list(self.q),
            "repeated_sets": None
            if self.repeated_sets is None
            else [sorted(s) for s in self.repeated_sets],
            "R": self.total,
            "c": self.samples,
            "k": self.k,
            "n": self.n,
            "L": self.register_length,
        }


def consecutive_differences(taps: TapSet) -> tuple[int, ...]:
    """d_j = l_{j+1} - l_j; empty for a single tap."""
    pos = taps.positions
    return tuple(pos[j + 1] - pos[j] for j in range(len(pos) - 1))


def difference_scheme(taps: TapSet) -> DifferenceScheme:
    return DifferenceScheme.from_differences(consecutive_differences(taps))


def _label_mask(positions: Iterable[int]) -> int:
    mask = 0
    for p in positions:
        mask |= 1 << (p - 1)
    return mask


def _labels(mask: int) -> frozenset[int]:
    out = set()
    while mask:
        low = mask & -mask
        out.add(low.bit_length())
        mask ^= low
    return frozenset(out)


def _run_steps(
    taps: TapSet,
    step_iter: Iterator[int],
    stop: Stop,
    mode: str,
    sigma: int | None = None,
    k: int | None = None,
    materialize_sets: bool = True,
) -> RepetitionProfile:
    """Direct integer-label sampling loop shared by the profile builders."""
    n = taps.n
    L = taps.register_length
    taps_mask = _label_mask(taps.positions)
    union = taps_mask
    shift = 0
    q: list[int] = []
    sets: list[frozenset] = []
    steps: list[int] = []
    total = 0
    c = 1
    cap = stop.cap_factor * L if isinstance(stop, RankStop) else None

    def done() -> bool:
        if isinstance(stop, RankStop):
            return n * c - total > L
        if isinstance(stop, SampleStop):
            return c >= stop.samples
        return False

    while not done():
        try:
            step = next(step_iter)
        except StopIteration:
            if stop is None:
                break
            raise NoOverdefinedSystemError(
                "schedule exhausted before the stop condition was met"
            ) from None
        if not 1 <= step <= L:
            raise ValueError("sampling distances must lie in 1..L")
        shift += step
        state = taps_mask << shift
        inter = state & union
        q.append(inter.bit_count())
        if materialize_sets:
            sets.append(_labels(inter))
        total += q[-1]
        union |= state
        steps.append(step)
        c += 1
        if cap is not None and c > cap:
            raise NoOverdefinedSystemError(
                f"no overdefined system within {cap} samples"
            )
    return RepetitionProfile(
        q=tuple(q),
        samples=c,
        total=total,
        n=n,
        register_length=L,
        mode=mode,
        steps=tuple(steps),
        sigma=sigma,
        k=k,
        repeated_sets=tuple(sets) if materialize_sets else None,
    )


def repetition_profile(
    taps: TapSet,
    schedule: SamplingSchedule | Sequence[int],
    stop: Stop = None,
    materialize_sets: bool = True,
) -> RepetitionProfile:
    """Ground-truth profile by direct set intersections on the label timeline.

    With ``stop=None`` the whole schedule is consumed; a RankStop returns the
    minimal sample count c with n*c - R > L and raises
    :class:`NoOverdefinedSystemError` if the schedule or the cap runs out
    first.
    """
    if isinstance(schedule, SamplingSchedule):
        steps, mode = schedule.steps, schedule.mode
    else:
        steps, mode = tuple(schedule), "custom"
    sigma = steps[0] if mode == "constant" and steps else None
    k = taps.span // sigma if sigma else None
    return _run_steps(
        taps, iter(steps), stop, mode, sigma=sigma, k=k,
        materialize_sets=materialize_sets,
    )


def constant_profile(
    taps: TapSet, sigma: int, stop: Stop = RankStop()
) -> RepetitionProfile:
    """Constant-distance profile via the cumulative intersection recursion.

    Builds I_i = I_{i-1} union (I_0 ^ (I_0 + i*sigma)) up to the horizon
    k = floor((l_n - l_1)/sigma) and extends with the steady value r_k, so it
    is cheap for any sample count. Agrees with :func:`repetition_profile` on
    the equivalent constant schedule (tested property).
    """
    L = taps.register_length
    if not 1 <= sigma <= L:
        raise ValueError("sigma must lie in 1..L")
    n = taps.n
    taps_mask = _label_mask(taps.positions)
    k = taps.span // sigma
    r: list[int] = []
    acc = 0
    for i in range(1, k + 1):
        acc |= taps_mask & (taps_mask << (i * sigma))
        r.append(acc.bit_count())
    r_k = r[-1] if r else 0

    def r_at(i: int) -> int:  # 1-based
        return r[i - 1] if i <= k else r_k

    if isinstance(stop, SampleStop):
        c = stop.samples
    elif isinstance(stop, RankStop):
        cap = stop.cap_factor * L
        c = 1
        total = 0
        while n * c - total <= L:
            total += r_at(c)
            c += 1
            if c > cap:
                raise NoOverdefinedSystemError(
                    f"no overdefined system within {cap} samples at sigma={sigma}"
                )
    else:
        raise ValueError("constant_profile needs a RankStop or SampleStop")
    q = tuple(r_at(i) for i in range(1, c))
    return RepetitionProfile(
        q=q,
        samples=c,
        total=sum(q),
        n=n,
        register_length=L,
        mode="constant",
        steps=(sigma,) * (c - 1),
        sigma=sigma,
        k=k,
        repeated_sets=None,
    )


def repeated_count_constant(diffs: Sequence[int], sigma: int, c: int) -> int:
    """Repeated-equation count for constant sampling, by the difference scheme.

    Each column i of the scheme contributes c - P/sigma for its first partial
    sum P divisible by sigma (the same source bit repeating every sample once
    its first partner is in range); later divisible sums in the column are the
    same bit again and are not counted.
    """
    if sigma < 1 or c < 1:
        raise ValueError("need sigma >= 1 and c >= 1")
    d = tuple(diffs)
    total = 0
    for i in range(len(d)):
        partial = 0
        for m in range(i, len(d)):
            partial += d[m]
            if partial % sigma == 0:
                h = partial // sigma
                if h <= c - 1:
                    total += c - h
                break
    return total


def scheme_q_sequence(diffs: Sequence[int], steps: Sequence[int]) -> list[int]:
    """Per-sample repeated-bit counts from the difference scheme.

    At sample j+1 the candidate lookback distances are the suffix sums of
    (s_1..s_j); column r of the scheme contributes one bit when any of its
    partial sums matches any lookback distance (one bit per column per
    sample, however many matchings occur).
    """
    d = tuple(diffs)
    prefix = [0]
    for s in steps:
        prefix.append(prefix[-1] + s)
    q: list[int] = []
    for j in range(1, len(steps) + 1):
        lookback = {prefix[j] - prefix[i] for i in range(j)}
        count = 0
        for r in range(len(d)):
            partial = 0
            for m in range(r, len(d)):
                partial += d[m]
                if partial in lookback:
                    count += 1
                    break
        q.append(count)
    return q


def repeated_count_variable(diffs: Sequence[int], steps: Sequence[int]) -> int:
    """Total repeated equations for a variable schedule, by the scheme method."""
    return sum(scheme_q_sequence(diffs, steps))


def greedy_schedule(
    taps: TapSet,
    stop: Stop = RankStop(),
    overshoot: int = 1,
) -> tuple[SamplingSchedule, RepetitionProfile]:
    """Adaptive schedule maximizing each sample's repeated-bit count.

    Every step picks the smallest sigma in 1..L whose shifted tap set meets
    the union of all earlier samples in the most labels. Under a RankStop the
    run keeps ``overshoot`` additional samples after the system first becomes
    overdefined (the reference runs of this mode include one such sample);
    pass overshoot=0 for the minimal schedule.
    """
    n = taps.n
    L = taps.register_length
    taps_mask = _label_mask(taps.positions)
    union = taps_mask
    shift = 0
    q: list[int] = []
    sets: list[frozenset] = []
    steps: list[int] = []
    total = 0
    c = 1
    remaining_overshoot = overshoot
    cap = stop.cap_factor * L if isinstance(stop, RankStop) else None

    def done() -> bool:
        nonlocal remaining_overshoot
        if isinstance(stop, RankStop):
            if n * c - total > L:
                if remaining_overshoot <= 0:
                    return True
                remaining_overshoot -= 1
            return False
        if isinstance(stop, SampleStop):
            return c >= stop.samples
        raise ValueError("greedy_schedule needs a RankStop or SampleStop")

    while not done():
        best_count = -1
        best_sigma = 1
        for sigma in range(1, L + 1):
            count = (union & (taps_mask << (shift + sigma))).bit_count()
            if count > best_count:
                best_count = count
                best_sigma = sigma
        shift += best_sigma
        state = taps_mask << shift
        inter = state & union
        q.append(inter.bit_count())
        sets.append(_labels(inter))
        total += q[-1]
        union |= state
        steps.append(best_sigma)
        c += 1
        if cap is not None and c > cap:
            raise NoOverdefinedSystemError(f"no overdefined system within {cap} samples")
    schedule = SamplingSchedule(tuple(steps), "greedy")
    profile = RepetitionProfile(
        q=tuple(q),
        samples=c,
        total=total,
        n=n,
        register_length=L,
        mode="greedy",
        steps=tuple(steps),
        repeated_sets=tuple(sets),
    )
    return schedule, profile


def cyclic_schedule(
    taps: TapSet, stop: Stop = RankStop()
) -> tuple[SamplingSchedule, RepetitionProfile]:
    """Schedule cycling through the consecutive tap differences.

    Sampling distances follow d_1, .., d_{n-1}, d_1, .. indefinitely, which
    guarantees q_{i+p(n-1)} >= i repeated equations per position in the cycle.
    """
    if taps.n < 2:
        raise ValueError("cyclic schedule needs at least two taps")
    if stop is None:
        raise ValueError("cyclic_schedule needs a RankStop or SampleStop")
    d = consecutive_differences(taps)

    def steps() -> Iterator[int]:
        while True:
            yield from d

    profile = _run_steps(taps, steps(), stop, "cyclic")
    return SamplingSchedule(profile.steps, "cyclic"), profile


def lambda_order(taps: TapSet) -> int:
    """max over shifts of |I_0 ^ (I_0 + sigma)|: the worst single-shift overlap."""
    if taps.n < 2:
        return 0
    counts: dict[int, int] = {}
    pos = taps.positions
    for i in range(len(pos)):
        for j in range(i + 1, len(pos)):
            diff = pos[j] - pos[i]
            counts[diff] = counts.get(diff, 0) + 1
    return max(counts.values())


def is_fpds(taps: TapSet) -> bool:
    """True iff all pairwise tap differences are distinct."""
    entries = difference_scheme(taps).entries()
    return len(entries) == len(set(entries))


def hybrid_window_profile(
    families: Sequence[tuple[str, TapSet]],
    steps: Sequence[int],
    model: str = "per-register",
) -> RepetitionProfile:
    """Repeated-bit profile for tap sets living on several registers.

    ``per-register`` counts intersections within each register's own timeline
    and sums them; ``merged`` drops the register tags, collapses duplicate
    labels and counts on a single timeline.
    """
    if model == "merged":
        merged = sorted({p for _, ts in families for p in ts.positions})
        L = max(ts.register_length for _, ts in families)
        merged_taps = TapSet(tuple(merged), L)
        prof = repetition_profile(merged_taps, steps)
        return RepetitionProfile(
            q=prof.q,
            samples=prof.samples,
            total=prof.total,
            n=sum(ts.n for _, ts in families),
            register_length=L,
            mode="custom",
            steps=prof.steps,
            repeated_sets=prof.repeated_sets,
        )
    if model != "per-register":
        raise ValueError("model must be 'per-register' or 'merged'")
    profiles = [(tag, repetition_profile(ts, steps)) for tag, ts in families]
    nsteps = len(tuple(steps))
    q = tuple(
        sum(prof.q[j] for _, prof in profiles) for j in range(nsteps)
    )
    sets = tuple(
        frozenset(
            (tag, label)
            for tag, prof in profiles
            for label in prof.repeated_sets[j]
        )
        for j in range(nsteps)
    )
    return RepetitionProfile(
        q=q,
        samples=nsteps + 1,
        total=sum(q),
        n=sum(ts.n for _, ts in families),
        register_length=max(ts.register_length for _, ts in families),
        mode="custom",
        steps=tuple(steps),
        repeated_sets=sets,
    )
