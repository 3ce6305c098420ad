"""Table emitters and the verification / measurement report builders.

Tables come in three formats: plain text, JSON and a LaTeX eqnarray that
mirrors the usual ket-equation layout with up/down arrows. All output is
deterministic: rows follow the multiplet enumeration order and amplitude
terms are sorted by descending configuration (all-up first).
"""

from __future__ import annotations

import json
import os
from fractions import Fraction

from .coupling import (
    CoupledLabel,
    CouplingTree,
    StateVector,
    config_to_string,
    enumerate_multiplets,
    expand,
    full_basis,
)
from .exactnum import SignedRadical
from .measures import (
    MeasurementBasis,
    classify_three_qubit,
    maximal_connectedness,
    measure_branches,
    meyer_wallach_q,
    persistency,
)
from .operators import commuting_set, verify_eigenstate

__all__ = [
    "default_tolerance",
    "emit_table",
    "emit_state_row",
    "emit_recoupling",
    "run_verify",
    "run_measures",
]

TOLERANCE_ENV_VAR = "MULTIPLETS_TOL"


def default_tolerance() -> float:
    """Default verification tolerance, overridable via MULTIPLETS_TOL."""
    raw = os.environ.get(TOLERANCE_ENV_VAR)
    return float(raw) if raw else 1e-12


# --------------------------------------------------------------------------
# Amplitude and label formatting


def _amp_text(amp: SignedRadical) -> str:
    if amp.sign == 0:
        return "0"
    sign = "-" if amp.sign < 0 else "+"
    if amp.is_rational():
        return sign + str(abs(amp.as_rational()))
    return f"{sign}sqrt({amp.radicand})"


def _frac_latex(value) -> str:
    if value.denominator == 1:
        return str(value.numerator)
    return rf"\tfrac{{{value.numerator}}}{{{value.denominator}}}"


def _amp_latex(amp: SignedRadical) -> str:
    if amp.sign == 0:
        return "0"
    sign = "-" if amp.sign < 0 else "+"
    if amp.is_rational():
        return sign + _frac_latex(abs(amp.as_rational()))
    return sign + rf"\sqrt{{{_frac_latex(amp.radicand)}}}"


def _ket_latex(config: int, n: int) -> str:
    arrows = "".join(
        r"\uparrow" if ch == "u" else r"\downarrow"
        for ch in config_to_string(config, n)
    )
    return rf"\left|{arrows}\right\rangle"


def _name_latex(name: str) -> str:
    if name.startswith("S") and len(name) > 1:
        return rf"S_{{{name[1:]}}}"
    return name


def _label_latex(label: CoupledLabel) -> str:
    parts = []
    for name, value in label.quantum_numbers().items():
        frac = _frac_latex(Fraction(value))
        parts.append(_name_latex(name) + r"{=}" + frac)
    sep = r",\;"
    return r"\left|" + sep.join(parts) + r"\right\rangle"


def _row_terms(state: StateVector) -> list[tuple[int, SignedRadical]]:
    return state.items()


# --------------------------------------------------------------------------
# Table emission


def emit_table(tree: CouplingTree, fmt: str = "text") -> bytes:
    """All coupled states of a tree, one row per multiplet member."""
    basis = full_basis(tree)
    if fmt == "json":
        rows = [_row_json(label, state) for label, state in basis]
        doc = {"tree": tree.spec(), "rows": rows}
        return (json.dumps(doc, indent=2) + "\n").encode("utf-8")
    if fmt == "latex":
        lines = [r"\begin{eqnarray}"]
        for label, state in basis:
            terms = "".join(
                f"{_amp_latex(amp)}\\,{_ket_latex(config, state.n)}"
                for config, amp in _row_terms(state)
            ).lstrip("+")
            lines.append(rf"{_label_latex(label)} &=& {terms}\\")
        lines[-1] = lines[-1][:-2]
        lines.append(r"\end{eqnarray}")
        return ("\n".join(lines) + "\n").encode("utf-8")
    if fmt == "text":
        lines = [f"# coupled basis of tree {tree.spec()}"]
        for label, state in basis:
            terms = "  ".join(
                f"{_amp_text(amp)}|{config_to_string(config, state.n)}>"
                for config, amp in _row_terms(state)
            )
            lines.append(f"{label}  :  {terms}")
        return ("\n".join(lines) + "\n").encode("utf-8")
    raise ValueError(f"unknown table format {fmt!r}")


def _row_json(label: CoupledLabel, state: StateVector) -> dict:
    return {
        "label": label.quantum_numbers(),
        "amplitudes": [
            {
                "config": config_to_string(config, state.n),
                "amp": amp.to_json_dict(),
            }
            for config, amp in _row_terms(state)
        ],
    }


def emit_state_row(label: CoupledLabel, fmt: str = "text") -> bytes:
    """One expanded coupled state in any of the table formats."""
    state = expand(label)
    if fmt == "json":
        return (json.dumps(_row_json(label, state), indent=2) + "\n").encode("utf-8")
    if fmt == "latex":
        terms = "".join(
            f"{_amp_latex(amp)}\\,{_ket_latex(config, state.n)}"
            for config, amp in _row_terms(state)
        ).lstrip("+")
        return (rf"{_label_latex(label)} = {terms}" + "\n").encode("utf-8")
    if fmt == "text":
        terms = "  ".join(
            f"{_amp_text(amp)}|{config_to_string(config, state.n)}>"
            for config, amp in _row_terms(state)
        )
        return (f"{label}  :  {terms}\n").encode("utf-8")
    raise ValueError(f"unknown format {fmt!r}")


def emit_recoupling(coefficients: dict[CoupledLabel, float]) -> bytes:
    rows = [
        {"label": label.quantum_numbers(), "coefficient": coeff}
        for label, coeff in coefficients.items()
    ]
    return (json.dumps({"coefficients": rows}, indent=2) + "\n").encode("utf-8")


# --------------------------------------------------------------------------
# Verification and measurement reports


def run_verify(tree: CouplingTree, tol: float | None = None) -> dict:
    """Check every coupled state against the tree's full commuting set.

    Each label is verified as an eigenstate of every internal-node
    Casimir and the total z projection, with eigenvalues read off the
    label. Returns a JSON-ready report with per-check residuals.
    """
    if tree.n > 10:
        raise ValueError("verification supports at most 10 particles")
    if tol is None:
        tol = default_tolerance()
    members = commuting_set(tree)
    results = []
    all_ok = True
    for label in enumerate_multiplets(tree):
        state = expand(label).to_array()
        checks = []
        for member in members:
            expected = member.eigenvalue_of(label)
            ok, residual = verify_eigenstate(member.operator, state, expected, tol)
            all_ok = all_ok and ok
            checks.append({
                "operator": member.name,
                "eigenvalue": expected,
                "residual": residual,
                "pass": ok,
            })
        results.append({"label": label.quantum_numbers(), "checks": checks})
    return {"tree": tree.spec(), "tol": tol, "pass": all_ok, "results": results}


def _witness_json(witness) -> list | None:
    if witness is None:
        return None
    return [[site, basis.value] for site, basis in witness]


def run_measures(state: StateVector, name: str | None = None,
                 z_branches: bool = False) -> dict:
    """Entanglement report: Q, persistency, connectedness, pair detail.

    With ``z_branches`` (meant for 4-qubit states) the report also
    classifies the 3-qubit branches of a Z measurement on each site.
    """
    report: dict = {
        "name": name,
        "n": state.n,
        "q": meyer_wallach_q(state),
        "persistency": persistency(state),
    }
    if state.n >= 3:
        connected, pairs = maximal_connectedness(state)
        report["maximally_connected"] = connected
        report["pairs"] = [
            {
                "pair": list(r.pair),
                "connected": r.connected,
                "witness": _witness_json(r.witness),
            }
            for r in pairs
        ]
    if z_branches:
        branch_rows = []
        for site in range(1, state.n + 1):
            branches = []
            for branch in measure_branches(state, site, MeasurementBasis.Z):
                entry = {
                    "outcome": branch.outcome,
                    "probability": branch.probability,
                }
                if branch.state.n == 3:
                    entry["class"] = classify_three_qubit(branch.state).value
                branches.append(entry)
            branch_rows.append({"site": site, "branches": branches})
        report["z_branches"] = branch_rows
    return report
