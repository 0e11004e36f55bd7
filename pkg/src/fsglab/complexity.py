"""Attack-cost arithmetic in log2 space.

Every estimator returns a :class:`ComplexityEstimate` whose total decomposes
as first-sample exponent + per-sample exponents + solver term, with the
clamping convention that a sample whose repeated bits already pin the
preimage contributes factor 1 (exponent 0), never a negative power.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

from .sampling import (
    NoOverdefinedSystemError,
    RankStop,
    RepetitionProfile,
    Stop,
    TapSet,
    constant_profile,
)

DEFAULT_SOLVER_EXPONENT = 3.0
GAUSS_OMEGA = 2.807


@dataclass(frozen=True)
class ComplexityEstimate:
    """log2 attack cost with its exponent breakdown."""

    log2_total: float
    first_sample_exponent: float
    per_sample_exponents: tuple[float, ...]
    solver_log2: float
    samples_used: int
    R_used: int | None
    sigma_or_schedule: str

    @property
    def candidate_log2(self) -> float:
        """log2 of the number of candidate systems (total minus solver term)."""
        return self.log2_total - self.solver_log2

    def exact_candidate_count(self) -> int:
        """Exact integer candidate count; requires integral exponents."""
        exps = (self.first_sample_exponent, *self.per_sample_exponents)
        if any(e != int(e) for e in exps):
            raise ValueError("candidate count is only exact for integer exponents")
        return 1 << int(sum(int(e) for e in exps))

    def to_dict(self) -> dict:
        return {
            "log2_total": self.log2_total,
            "first_sample_exponent": self.first_sample_exponent,
            "per_sample_exponents": list(self.per_sample_exponents),
            "solver_log2": self.solver_log2,
            "samples_used": self.samples_used,
            "R_used": self.R_used,
            "sigma_or_schedule": self.sigma_or_schedule,
        }


@dataclass(frozen=True)
class NfsrCostParams:
    """Parameters of the low-degree-system solve for nonlinear registers."""

    r: int
    e: int
    omega: float = GAUSS_OMEGA

    def __post_init__(self):
        if self.r < 1 or self.e < 1:
            raise ValueError("degrees r and e must be >= 1")
        if not 2 < self.omega <= 3:
            raise ValueError("omega must lie in (2, 3]")


@dataclass(frozen=True)
class WindowCostEstimate:
    """Window-attack cost plus its memory and data budgets (in bits)."""

    estimate: ComplexityEstimate
    memory_bits: int
    data_bits: int


def _clamped(n: int, m: int, q: Sequence[int]) -> tuple[int, ...]:
    return tuple(max(0, n - m - qj) for qj in q)


def fsga_cost(n: int, m: int, L: int, solver_exponent: float = DEFAULT_SOLVER_EXPONENT) -> ComplexityEstimate:
    """Baseline guessing cost 2^((n-m)c) * L^3 with c = ceil(L/n) samples."""
    if not 1 <= m < n:
        raise ValueError("need 1 <= m < n")
    if L < n:
        raise ValueError("register must be at least as long as the tap count")
    c = math.ceil(L / n)
    solver = solver_exponent * math.log2(L)
    per_sample = ((n - m),) * (c - 1)
    return ComplexityEstimate(
        log2_total=(n - m) * c + solver,
        first_sample_exponent=n - m,
        per_sample_exponents=per_sample,
        solver_log2=solver,
        samples_used=c,
        R_used=0,
        sigma_or_schedule="fsga",
    )


def _profile_cost(
    profile: RepetitionProfile,
    n: int,
    m: int,
    L: int,
    solver_exponent: float,
    label: str,
) -> ComplexityEstimate:
    if not 1 <= m <= n:
        raise ValueError("need 1 <= m <= n")
    if n * profile.samples - profile.total <= L:
        raise ValueError(
            "profile is not overdefined (n*c - R must exceed L); "
            "sample with a rank stop first"
        )
    per_sample = _clamped(n, m, profile.q)
    solver = solver_exponent * math.log2(L)
    return ComplexityEstimate(
        log2_total=(n - m) + sum(per_sample) + solver,
        first_sample_exponent=n - m,
        per_sample_exponents=per_sample,
        solver_log2=solver,
        samples_used=profile.samples,
        R_used=profile.total,
        sigma_or_schedule=label,
    )


def gfsga_constant_cost(
    profile: RepetitionProfile,
    n: int,
    m: int,
    L: int,
    solver_exponent: float = DEFAULT_SOLVER_EXPONENT,
) -> ComplexityEstimate:
    """Constant-distance attack cost from a repetition profile."""
    label = f"sigma={profile.sigma}" if profile.sigma is not None else "constant"
    return _profile_cost(profile, n, m, L, solver_exponent, label)


def gfsga_variable_cost(
    profile: RepetitionProfile,
    n: int,
    m: int,
    L: int,
    solver_exponent: float = DEFAULT_SOLVER_EXPONENT,
) -> ComplexityEstimate:
    """Variable-distance attack cost; same clamped product over the q_j."""
    return _profile_cost(profile, n, m, L, solver_exponent, profile.mode)


def optimal_constant_sigma(
    taps: TapSet,
    n: int,
    m: int,
    L: int,
    solver_exponent: float = DEFAULT_SOLVER_EXPONENT,
    stop: Stop = RankStop(),
    workers: int = 1,
) -> tuple[int, ComplexityEstimate]:
    """Sweep sigma over 1..L and return the cheapest constant-mode attack.

    Distances that never produce an overdefined system are skipped; exact
    cost ties resolve to the smallest sigma.
    """
    candidates = _sigma_sweep(taps, n, m, L, solver_exponent, stop, workers)
    if not candidates:
        raise NoOverdefinedSystemError("no sigma in 1..L yields an overdefined system")
    best_cost, best_sigma, best_est = min(candidates)
    return best_sigma, best_est


def _sigma_sweep(taps, n, m, L, solver_exponent, stop, workers):
    sigmas = range(1, L + 1)
    if workers and workers > 1:
        from concurrent.futures import ProcessPoolExecutor

        chunks = [list(sigmas)[i::workers] for i in range(workers)]
        out = []
        with ProcessPoolExecutor(max_workers=workers) as pool:
            futs = [
                pool.submit(_sweep_chunk, taps, chunk, n, m, L, solver_exponent, stop)
                for chunk in chunks
            ]
            for fut in futs:
                out.extend(fut.result())
        return out
    return _sweep_chunk(taps, list(sigmas), n, m, L, solver_exponent, stop)


def _sweep_chunk(taps, sigmas, n, m, L, solver_exponent, stop):
    out = []
    for sigma in sigmas:
        try:
            profile = constant_profile(taps, sigma, stop=stop)
        except NoOverdefinedSystemError:
            continue
        est = gfsga_constant_cost(profile, n, m, L, solver_exponent)
        out.append((est.log2_total, sigma, est))
    return out


def nfsr_gfsga_cost(
    profile: RepetitionProfile,
    n: int,
    m: int,
    L: int,
    params: NfsrCostParams,
) -> ComplexityEstimate:
    """Attack cost against a nonlinear register: the solver term grows to
    omega * log2(sum_{i<=e*r} C(L, i)) because the system is low-degree, not
    linear."""
    if params.e * params.r > L:
        raise ValueError("e*r must not exceed L")
    if not 1 <= m <= n:
        raise ValueError("need 1 <= m <= n")
    per_sample = _clamped(n, m, profile.q)
    dim = sum(math.comb(L, i) for i in range(params.e * params.r + 1))
    solver = params.omega * math.log2(dim)
    return ComplexityEstimate(
        log2_total=(n - m) + sum(per_sample) + solver,
        first_sample_exponent=n - m,
        per_sample_exponents=per_sample,
        solver_log2=solver,
        samples_used=profile.samples,
        R_used=profile.total,
        sigma_or_schedule=f"nfsr:{profile.mode}",
    )


def internal_state_recovery_cost(
    profile: RepetitionProfile,
    n: int,
    m: int,
    L: int,
    recovered_bits: int,
) -> WindowCostEstimate:
    """Cost of the sampling-window internal-state recovery.

    ``profile`` must cover the distance-1 window (p-1 samples, p-2 steps);
    ``recovered_bits`` is R_p, the count of distinct state bits read inside
    the window. The final term is the residual guess of L - R_p bits, and the
    memory/data budgets follow the preimage-space bookkeeping.
    """
    if recovered_bits > L:
        raise ValueError("cannot recover more bits than the register holds")
    window = profile.samples  # p - 1
    if window * n <= L:
        raise ValueError("window too short: need (p-1)*n > L")
    per_sample = _clamped(n, m, profile.q)
    tail = L - recovered_bits
    est = ComplexityEstimate(
        log2_total=(n - m) + sum(per_sample) + tail,
        first_sample_exponent=n - m,
        per_sample_exponents=per_sample,
        solver_log2=tail,
        samples_used=window,
        R_used=profile.total,
        sigma_or_schedule="window:sigma=1",
    )
    memory_bits = window * n * (1 << (n - 1)) + L
    data_bits = window + L
    return WindowCostEstimate(est, memory_bits, data_bits)


def restricted_annihilator_cost(
    sizes: Sequence[float],
    counts: Sequence[int],
    L: int,
    omega: float = GAUSS_OMEGA,
) -> ComplexityEstimate:
    """Cost product over user-supplied restricted preimage-space sizes.

    Pure arithmetic: sum(count_i * log2(size_i)) + omega * log2(L). The sizes
    come from an external annihilator analysis; nothing here derives them.
    """
    if len(sizes) != len(counts):
        raise ValueError("sizes and counts must align")
    if any(s <= 0 for s in sizes) or any(c < 1 for c in counts):
        raise ValueError("sizes must be positive and counts >= 1")
    flat = [math.log2(s) for s, c in zip(sizes, counts) for _ in range(c)]
    solver = omega * math.log2(L)
    return ComplexityEstimate(
        log2_total=sum(flat) + solver,
        first_sample_exponent=flat[0],
        per_sample_exponents=tuple(flat[1:]),
        solver_log2=solver,
        samples_used=sum(counts),
        R_used=None,
        sigma_or_schedule="restricted-annihilator",
    )
