"""Scenario configuration: a JSON document describing generator, analysis,
attack and report settings. Tap positions are 1-based everywhere."""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass
from .registers import (
    FilterSpec,
    GeneratorSpec,
    HybridSpec,
    HybridTaps,
    LfsrSpec,
    NfsrSpec,
)
from .sampling import RankStop, SampleStop, Stop, TapSet


class ConfigError(ValueError):
    """Configuration file is missing fields or internally inconsistent."""


@dataclass(frozen=True)
class FilterConfig:
    n: int
    m: int
    source: str | None  # "hex" | "random" | None (analysis only)
    hex_table: str | None
    seed: int | None

    def build(self, fallback_seed: int = 0) -> FilterSpec:
        if self.source == "hex":
            if not self.hex_table:
                raise ConfigError("filter.source=hex needs filter.hex")
            return FilterSpec.from_hex(self.n, self.m, self.hex_table)
        if self.source == "random":
            seed = self.seed if self.seed is not None else fallback_seed
            return FilterSpec.uniform_random(self.n, self.m, seed)
        raise ConfigError("filter table required: set filter.source to hex or random")


@dataclass(frozen=True)
class GeneratorConfig:
    kind: str  # lfsr | nfsr | hybrid
    register: LfsrSpec | NfsrSpec | HybridSpec
    taps: TapSet | HybridTaps
    filter: FilterConfig

    @property
    def tap_count(self) -> int:
        if isinstance(self.taps, HybridTaps):
            return self.taps.total
        return self.taps.n

    @property
    def total_length(self) -> int:
        if isinstance(self.register, HybridSpec):
            return self.register.lfsr.length + self.register.nfsr.length
        return self.register.length

    def build_generator(self, fallback_seed: int = 0) -> GeneratorSpec:
        return GeneratorSpec(self.register, self.taps, self.filter.build(fallback_seed))


@dataclass(frozen=True)
class AnalysisConfig:
    mode: str  # constant | greedy | cyclic | custom
    sigma: int | None
    schedule: tuple[int, ...] | None
    solver_exponent: float
    m_calibration: bool
    stop: Stop


@dataclass(frozen=True)
class AttackConfig:
    keystream: str | None
    window_model: str
    workers: int


@dataclass(frozen=True)
class OptimizeConfig:
    differences: tuple[int, ...] | None
    budget: int
    chunk_size: int
    retries: int


@dataclass(frozen=True)
class ScenarioConfig:
    generator: GeneratorConfig
    analysis: AnalysisConfig
    attack: AttackConfig
    optimize: OptimizeConfig
    report_format: str
    raw: dict

    def sha256(self) -> str:
        return hashlib.sha256(
            json.dumps(self.raw, sort_keys=True).encode()
        ).hexdigest()


def _require(obj: dict, key: str, context: str):
    if key not in obj:
        raise ConfigError(f"missing {context}.{key}")
    return obj[key]


def _positions(values, context: str) -> tuple[int, ...]:
    if not isinstance(values, list) or not all(isinstance(v, int) for v in values):
        raise ConfigError(f"{context} must be a list of integers")
    return tuple(values)


def _parse_anf(obj: dict, length: int, context: str) -> NfsrSpec:
    constant = int(obj.get("constant", 0))
    monomials = obj.get("monomials", [])
    if not isinstance(monomials, list):
        raise ConfigError(f"{context}.monomials must be a list of position lists")
    return NfsrSpec(
        length, constant, tuple(frozenset(_positions(m, context)) for m in monomials)
    )


def _parse_generator(obj: dict) -> GeneratorConfig:
    kind = _require(obj, "kind", "generator")
    filt = obj.get("filter", {})
    fcfg = FilterConfig(
        n=int(_require(filt, "n", "generator.filter")),
        m=int(_require(filt, "m", "generator.filter")),
        source=filt.get("source"),
        hex_table=filt.get("hex"),
        seed=filt.get("seed"),
    )
    if kind == "hybrid":
        lf = _require(obj, "lfsr", "generator")
        nf = _require(obj, "nfsr", "generator")
        lfsr = LfsrSpec(
            int(_require(lf, "length", "generator.lfsr")),
            frozenset(_positions(_require(lf, "feedback", "generator.lfsr"), "feedback")),
        )
        nfsr = _parse_anf(
            _require(nf, "anf", "generator.nfsr"),
            int(_require(nf, "length", "generator.nfsr")),
            "generator.nfsr.anf",
        )
        register: LfsrSpec | NfsrSpec | HybridSpec = HybridSpec(
            lfsr, nfsr, bool(obj.get("coupling", True))
        )
        taps_obj = _require(obj, "taps", "generator")
        if not isinstance(taps_obj, dict):
            raise ConfigError("hybrid generator.taps must map register to positions")
        taps: TapSet | HybridTaps = HybridTaps(
            lfsr=TapSet(_positions(_require(taps_obj, "lfsr", "taps"), "taps.lfsr"), lfsr.length),
            nfsr=TapSet(_positions(_require(taps_obj, "nfsr", "taps"), "taps.nfsr"), nfsr.length),
        )
    else:
        length = int(_require(obj, "length", "generator"))
        if kind == "lfsr":
            register = LfsrSpec(
                length,
                frozenset(_positions(_require(obj, "feedback", "generator"), "feedback")),
            )
        elif kind == "nfsr":
            register = _parse_anf(_require(obj, "anf", "generator"), length, "generator.anf")
        else:
            raise ConfigError(f"unknown generator kind {kind!r}")
        taps = TapSet(_positions(_require(obj, "taps", "generator"), "taps"), length)
    cfg = GeneratorConfig(kind, register, taps, fcfg)
    if fcfg.n != cfg.tap_count:
        raise ConfigError(
            f"filter.n={fcfg.n} must equal the tap count {cfg.tap_count}"
        )
    if not 1 <= fcfg.m <= fcfg.n:
        raise ConfigError("need 1 <= filter.m <= filter.n")
    return cfg


def _parse_stop(obj, context: str) -> Stop:
    if obj is None:
        return RankStop()
    if isinstance(obj, dict):
        if "samples" in obj:
            return SampleStop(int(obj["samples"]))
        if obj.get("rank", True):
            return RankStop()
    raise ConfigError(f"{context}.stop must be {{'rank': true}} or {{'samples': c}}")


def _parse_analysis(obj: dict, gen: GeneratorConfig) -> AnalysisConfig:
    mode = obj.get("mode", "constant")
    if mode not in ("constant", "greedy", "cyclic", "custom"):
        raise ConfigError(f"unknown analysis mode {mode!r}")
    sigma = obj.get("sigma")
    schedule = obj.get("schedule")
    if mode == "custom":
        if not schedule:
            raise ConfigError("custom mode needs analysis.schedule")
        schedule = _positions(schedule, "analysis.schedule")
        limit = (
            gen.register.length
            if not isinstance(gen.register, HybridSpec)
            else min(gen.register.lfsr.length, gen.register.nfsr.length)
        )
        if any(not 1 <= s <= limit for s in schedule):
            raise ConfigError("schedule steps must lie in 1..L")
    stop_default = None if mode == "custom" else RankStop()
    stop = _parse_stop(obj["stop"], "analysis") if "stop" in obj else stop_default
    return AnalysisConfig(
        mode=mode,
        sigma=None if sigma is None else int(sigma),
        schedule=None if schedule is None else tuple(schedule),
        solver_exponent=float(obj.get("solver_exponent", 3.0)),
        m_calibration=bool(obj.get("m_calibration", False)),
        stop=stop,
    )


def parse_config(raw: dict) -> ScenarioConfig:
    if not isinstance(raw, dict):
        raise ConfigError("config root must be an object")
    gen = _parse_generator(_require(raw, "generator", "config"))
    analysis = _parse_analysis(raw.get("analysis", {}), gen)
    attack_obj = raw.get("attack", {})
    window_model = attack_obj.get("window_model", "per-register")
    if window_model not in ("per-register", "merged"):
        raise ConfigError("attack.window_model must be per-register or merged")
    attack = AttackConfig(
        keystream=attack_obj.get("keystream"),
        window_model=window_model,
        workers=int(attack_obj.get("workers", 1)),
    )
    opt_obj = raw.get("optimize", {})
    differences = opt_obj.get("differences")
    optimize = OptimizeConfig(
        differences=None if differences is None else tuple(_positions(differences, "optimize.differences")),
        budget=int(opt_obj.get("budget", 12)),
        chunk_size=int(opt_obj.get("chunk_size", 5)),
        retries=int(opt_obj.get("retries", 6)),
    )
    fmt = raw.get("report", {}).get("format", "table")
    if fmt not in ("table", "structured"):
        raise ConfigError("report.format must be table or structured")
    return ScenarioConfig(gen, analysis, attack, optimize, fmt, raw)


def load_config(path) -> ScenarioConfig:
    try:
        with open(path) as fh:
            raw = json.load(fh)
    except FileNotFoundError:
        raise ConfigError(f"config file not found: {path}") from None
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config is not valid JSON: {exc}") from None
    return parse_config(raw)
