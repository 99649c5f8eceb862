"""Parameter sweeps and deterministic table rendering.

Row order is fixed: schemes in the order requested, then p ascending, then
mu ascending.  Floats are rendered with 12 significant digits, so identical
invocations produce byte-identical output.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from .errors import ParameterError
from .fidelity import FidelityResult, ThresholdPoint, evaluate, threshold_mu

CSV_HEADER = "model,scheme,mu,p,fidelity_numeric,fidelity_closed_form,abs_diff,failure_prob"
THRESHOLD_CSV_HEADER = "model,scheme,p,mu_star,branch,regions"


def fmt_float(x: float) -> str:
    return format(float(x), ".12g")


def _fmt_optional(x: float | None) -> str:
    return "" if x is None else fmt_float(x)


def _json_float(x: float | None) -> float | None:
    return None if x is None else float(fmt_float(x))


def parse_range(text: str) -> tuple[float, ...]:
    """Parse 'min:max:steps' into an inclusive uniform grid."""
    parts = text.split(":")
    if len(parts) != 3:
        raise ParameterError(f"range must look like min:max:steps, got {text!r}")
    try:
        lo, hi = float(parts[0]), float(parts[1])
        steps = int(parts[2])
    except ValueError as exc:
        raise ParameterError(f"could not parse range {text!r}: {exc}") from None
    if steps < 1:
        raise ParameterError(f"steps must be >= 1, got {steps}")
    if not (0.0 <= lo <= 1.0 and 0.0 <= hi <= 1.0):
        raise ParameterError(f"range endpoints must lie in [0, 1], got {text!r}")
    if steps == 1:
        return (lo,)
    return tuple(float(v) for v in np.linspace(lo, hi, steps))


@dataclass(frozen=True)
class SweepSpec:
    """One fidelity-sweep request."""

    model: int
    schemes: tuple[str, ...]
    p_values: tuple[float, ...]
    mu_values: tuple[float, ...]
    flavor: str | None = None
    output_format: str = "csv"
    output_path: str | None = None

    def __post_init__(self) -> None:
        if not self.schemes:
            raise ParameterError("at least one scheme is required")
        if not self.p_values or not self.mu_values:
            raise ParameterError("at least one p and one mu value are required")
        for name, values in (("p", self.p_values), ("mu", self.mu_values)):
            for v in values:
                if not 0.0 <= v <= 1.0:
                    raise ParameterError(f"{name} value {v} outside [0, 1]")
        if self.output_format not in ("csv", "json"):
            raise ParameterError(f"format must be 'csv' or 'json', got {self.output_format!r}")


def run_sweep(spec: SweepSpec) -> list[FidelityResult]:
    results = []
    for scheme in spec.schemes:
        for p in spec.p_values:
            for mu in spec.mu_values:
                results.append(evaluate(scheme, spec.model, mu, p, spec.flavor))
    return results


def render_fidelity_csv(results: list[FidelityResult]) -> str:
    lines = [CSV_HEADER]
    for r in results:
        diff = None if r.f_closed_form is None else abs(r.f_numeric - r.f_closed_form)
        lines.append(
            ",".join(
                (
                    str(r.model),
                    r.scheme,
                    fmt_float(r.mu),
                    fmt_float(r.p),
                    fmt_float(r.f_numeric),
                    _fmt_optional(r.f_closed_form),
                    _fmt_optional(diff),
                    fmt_float(r.failure_prob),
                )
            )
        )
    return "\n".join(lines) + "\n"


def render_fidelity_json(results: list[FidelityResult]) -> str:
    rows = []
    for r in results:
        diff = None if r.f_closed_form is None else abs(r.f_numeric - r.f_closed_form)
        rows.append(
            {
                "model": r.model,
                "scheme": r.scheme,
                "mu": _json_float(r.mu),
                "p": _json_float(r.p),
                "fidelity_numeric": _json_float(r.f_numeric),
                "fidelity_closed_form": _json_float(r.f_closed_form),
                "abs_diff": _json_float(diff),
                "failure_prob": _json_float(r.failure_prob),
            }
        )
    return json.dumps(rows, indent=2) + "\n"


def render_fidelity(results: list[FidelityResult], output_format: str) -> str:
    if output_format == "json":
        return render_fidelity_json(results)
    return render_fidelity_csv(results)


@dataclass(frozen=True)
class ThresholdRow:
    model: int
    scheme: str
    point: ThresholdPoint


def run_threshold(
    model: int,
    schemes: tuple[str, ...],
    p_values: tuple[float, ...],
    flavor: str | None = None,
) -> list[ThresholdRow]:
    rows = []
    for scheme in schemes:
        for p in p_values:
            rows.append(ThresholdRow(model, scheme, threshold_mu(scheme, model, p, flavor)))
    return rows


def _regions_text(point: ThresholdPoint) -> str:
    return ";".join(f"{fmt_float(lo)}:{fmt_float(hi)}" for lo, hi in point.regions)


def render_threshold_csv(rows: list[ThresholdRow]) -> str:
    lines = [THRESHOLD_CSV_HEADER]
    for row in rows:
        pt = row.point
        lines.append(
            ",".join(
                (
                    str(row.model),
                    row.scheme,
                    fmt_float(pt.p),
                    _fmt_optional(pt.mu_star),
                    pt.branch,
                    _regions_text(pt),
                )
            )
        )
    return "\n".join(lines) + "\n"


def render_threshold_json(rows: list[ThresholdRow]) -> str:
    payload = []
    for row in rows:
        pt = row.point
        payload.append(
            {
                "model": row.model,
                "scheme": row.scheme,
                "p": _json_float(pt.p),
                "mu_star": _json_float(pt.mu_star),
                "branch": pt.branch,
                "regions": [[_json_float(lo), _json_float(hi)] for lo, hi in pt.regions],
            }
        )
    return json.dumps(payload, indent=2) + "\n"


def render_threshold(rows: list[ThresholdRow], output_format: str) -> str:
    if output_format == "json":
        return render_threshold_json(rows)
    return render_threshold_csv(rows)
