"""Report assembly and rendering for the command-line surface.

Structured output is canonical JSON (sorted keys); identical configs and
seeds produce byte-identical documents apart from the ``timing`` block.
Log2 costs are rendered with two decimals in table form while the structured
form carries full precision.
"""

from __future__ import annotations

import json
import platform
import sys
from dataclasses import dataclass, field

from . import __version__


@dataclass
class Report:
    command: str
    payload: dict
    provenance: dict
    timing: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "command": self.command,
            "payload": self.payload,
            "provenance": self.provenance,
            "timing": self.timing,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=2)


def make_provenance(config_sha256: str | None, seed: int | None) -> dict:
    return {
        "config_sha256": config_sha256,
        "seed": seed,
        "package_version": __version__,
        "python_version": platform.python_version(),
    }


def _fmt(value) -> str:
    if isinstance(value, float):
        return f"{value:.2f}"
    if isinstance(value, list):
        return "[" + ", ".join(_fmt(v) for v in value) + "]"
    return str(value)


def _render_rows(rows: list[dict], out: list[str]) -> None:
    if not rows:
        return
    headers = ["cell", "reference", "computed", "delta"]
    table = [
        [str(r.get("cell", "")), _fmt(r.get("reference", "")), _fmt(r.get("computed", "")),
         "" if r.get("delta") is None else _fmt(r["delta"])]
        for r in rows
    ]
    widths = [max(len(h), *(len(row[i]) for row in table)) for i, h in enumerate(headers)]
    out.append("  ".join(h.ljust(w) for h, w in zip(headers, widths)))
    out.append("  ".join("-" * w for w in widths))
    for row in table:
        out.append("  ".join(c.ljust(w) for c, w in zip(row, widths)))


def _render_profile(profile: dict, out: list[str]) -> None:
    out.append(
        f"mode={profile['mode']} samples={profile['c']} repeats={profile['R']}"
        + (f" k={profile['k']}" if profile.get("k") is not None else "")
    )
    out.append(f"steps: {profile['steps']}")
    out.append(f"q:     {profile['q']}")
    if profile.get("repeated_sets"):
        for i, labels in enumerate(profile["repeated_sets"], 1):
            out.append(f"  sample {i + 1}: repeats {labels}")


def _render_estimate(est: dict, out: list[str]) -> None:
    out.append(
        f"log2 cost = {est['log2_total']:.2f} "
        f"(first {est['first_sample_exponent']:.2f}, "
        f"samples {sum(est['per_sample_exponents']):.2f}, "
        f"solver {est['solver_log2']:.2f}; c={est['samples_used']})"
    )
    out.append(f"per-sample exponents: {est['per_sample_exponents']}")


def render_table(report: Report) -> str:
    out: list[str] = [f"== {report.command} =="]
    payload = report.payload
    if "title" in payload:
        out.append(payload["title"])
    if "profile" in payload and payload["profile"]:
        _render_profile(payload["profile"], out)
    if "estimate" in payload and payload["estimate"]:
        _render_estimate(payload["estimate"], out)
    if "rows" in payload:
        _render_rows(payload["rows"], out)
    for key in ("differences", "ordering", "optimal_sigma"):
        if key in payload:
            out.append(f"{key}: {payload[key]}")
    if "scorecard" in payload and payload["scorecard"]:
        sc = payload["scorecard"]
        out.append(
            "scorecard: taps={taps} lambda={lam} fpds={fpds} sigma*={sig} "
            "constant={c:.2f} greedy={g:.2f} cyclic={y}".format(
                taps=sc["taps"],
                lam=sc["lambda"],
                fpds=sc["fpds"],
                sig=sc["optimal_sigma"],
                c=sc["constant_log2"],
                g=sc["greedy_log2"],
                y="-" if sc["cyclic_log2"] is None else f"{sc['cyclic_log2']:.2f}",
            )
        )
    if "trace" in payload and payload["trace"]:
        out.append("search trace:")
        for stage in payload["trace"]:
            out.append(
                f"  stage {stage['stage']}: chunk={stage['chunk']} tried={stage['candidates_tried']}"
                f" rejected={stage['rejections']} sigma*={stage['optimal_sigma']}"
                f" cost={stage['cost_log2']:.2f}"
            )
    for key in ("recovered_state", "systems_solved", "candidates_pruned"):
        if key in payload:
            out.append(f"{key}: {payload[key]}")
    if "window" in payload and payload["window"]:
        w = payload["window"]
        out.append(
            f"window: length={w['window_length']} recovered={w['recovered_bit_count']}"
            f" remaining={w['remaining_guess']}"
        )
    if "calibration" in payload and payload["calibration"]:
        out.append(f"calibration best m: {payload['calibration']['best_m']}")
    for note in payload.get("notes", []):
        out.append(f"note: {note}")
    if report.timing:
        parts = ", ".join(f"{k}={v:.3f}s" for k, v in report.timing.items())
        out.append(f"timing: {parts}")
    return "\n".join(out)


def emit(report: Report, fmt: str, out_path: str | None) -> None:
    text = report.to_json() if fmt == "structured" else render_table(report)
    if out_path:
        with open(out_path, "w") as fh:
            fh.write(text + "\n")
    else:
        sys.stdout.write(text + "\n")
