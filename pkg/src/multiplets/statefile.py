"""JSON state-file format: parse and emit StateVectors losslessly.

The schema is
    {"n": 2, "flavor": "exact" | "numeric",
     "amplitudes": [{"config": "ud", "amp": ...}, ...]}
where configs are u/d strings with particle 1 first, exact amplitudes are
signed-radical dicts and numeric ones are {"re": x, "im": y}. Emission
sorts configs descending (all-up first) so output is byte-stable, and
parsing rejects non-normalized data rather than renormalizing.
"""

from __future__ import annotations

import json

from .coupling import StateVector, config_from_string, config_to_string
from .exactnum import SignedRadical

__all__ = ["StateFileError", "parse_state_file", "emit_state_file"]


class StateFileError(ValueError):
    """The bytes do not describe a valid state file."""


def parse_state_file(data: bytes | str) -> StateVector:
    if isinstance(data, bytes):
        data = data.decode("utf-8")
    try:
        doc = json.loads(data)
    except json.JSONDecodeError as exc:
        raise StateFileError(f"not valid JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise StateFileError("state file must be a JSON object")
    try:
        n = int(doc["n"])
        flavor = doc["flavor"]
        entries = doc["amplitudes"]
    except (KeyError, TypeError, ValueError) as exc:
        raise StateFileError(f"missing or malformed field: {exc}") from exc
    if flavor not in ("exact", "numeric"):
        raise StateFileError(f"flavor must be 'exact' or 'numeric', got {flavor!r}")
    if not isinstance(entries, list) or not entries:
        raise StateFileError("amplitudes must be a non-empty list")

    amplitudes: dict[int, object] = {}
    for entry in entries:
        if not isinstance(entry, dict) or set(entry) != {"config", "amp"}:
            raise StateFileError(f"bad amplitude entry {entry!r}")
        config_str = entry["config"]
        if not isinstance(config_str, str) or len(config_str) != n:
            raise StateFileError(f"config {config_str!r} must be {n} characters")
        try:
            config = config_from_string(config_str)
        except ValueError as exc:
            raise StateFileError(str(exc)) from exc
        if config in amplitudes:
            raise StateFileError(f"duplicate configuration {config_str!r}")
        amplitudes[config] = _parse_amp(entry["amp"], flavor)

    try:
        if flavor == "exact":
            return StateVector.exact_state(n, amplitudes)
        return StateVector.numeric_state(n, amplitudes)
    except (TypeError, ValueError) as exc:
        raise StateFileError(str(exc)) from exc


def _parse_amp(raw: object, flavor: str) -> object:
    if flavor == "exact":
        if not isinstance(raw, dict):
            raise StateFileError(f"exact amplitude must be an object, got {raw!r}")
        try:
            return SignedRadical.from_json_dict(raw)
        except ValueError as exc:
            raise StateFileError(str(exc)) from exc
    if not isinstance(raw, dict) or set(raw) != {"re", "im"}:
        raise StateFileError(f"numeric amplitude must be {{re, im}}, got {raw!r}")
    try:
        return complex(float(raw["re"]), float(raw["im"]))
    except (TypeError, ValueError) as exc:
        raise StateFileError(f"bad numeric amplitude {raw!r}") from exc


def emit_state_file(state: StateVector) -> bytes:
    entries = []
    for config, amp in state.items():
        if state.exact:
            amp_json = amp.to_json_dict()
        else:
            amp_json = {"re": amp.real, "im": amp.imag}
        entries.append({"config": config_to_string(config, state.n), "amp": amp_json})
    doc = {
        "n": state.n,
        "flavor": "exact" if state.exact else "numeric",
        "amplitudes": entries,
    }
    return (json.dumps(doc, indent=2) + "\n").encode("utf-8")
