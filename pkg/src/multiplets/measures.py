"""Entanglement diagnostics for multiqubit pure states.

Covers reduced density matrices, the Meyer-Wallach global measure in its
single-site linear-entropy form, Wootters concurrence, the residual
three-tangle, projective measurement branching over the three Pauli
bases, persistency of entanglement and pairwise connectedness searches.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .coupling import StateVector

__all__ = [
    "MeasurementBasis",
    "ThreeQubitClass",
    "DensityMatrix",
    "MeasurementBranch",
    "PairReport",
    "partial_trace",
    "meyer_wallach_q",
    "concurrence",
    "three_tangle",
    "classify_three_qubit",
    "measure_branches",
    "persistency",
    "is_pair_connectable",
    "maximal_connectedness",
]

# Default tolerance knobs. "Pure"/"product" means reduced purity within
# PURITY_TOL of 1; a Bell pair means concurrence within BELL_TOL of 1.
PURITY_TOL = 1e-9
BELL_TOL = 1e-9
PROB_CUTOFF = 1e-12

_DM_TOL = 1e-12


class MeasurementBasis(enum.Enum):
    """Single-qubit projective bases along the three Pauli directions."""

    Z = "z"
    X = "x"
    Y = "y"

    def vectors(self) -> tuple[tuple[str, np.ndarray], ...]:
        """Outcome labels and eigenvectors in the up-first basis."""
        s = 1 / np.sqrt(2)
        if self is MeasurementBasis.Z:
            return (("u", np.array([1.0, 0.0], dtype=complex)),
                    ("d", np.array([0.0, 1.0], dtype=complex)))
        if self is MeasurementBasis.X:
            return (("+", np.array([s, s], dtype=complex)),
                    ("-", np.array([s, -s], dtype=complex)))
        return (("+i", np.array([s, 1j * s], dtype=complex)),
                ("-i", np.array([s, -1j * s], dtype=complex)))


class ThreeQubitClass(enum.Enum):
    PRODUCT = "product"
    BISEPARABLE = "biseparable"
    W = "W"
    GHZ = "GHZ"


@dataclass(frozen=True, eq=False)
class DensityMatrix:
    """A validated density matrix: Hermitian, unit trace, positive."""

    matrix: np.ndarray

    def __post_init__(self) -> None:
        m = np.asarray(self.matrix, dtype=complex)
        object.__setattr__(self, "matrix", m)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise ValueError("density matrix must be square")
        if np.max(np.abs(m - m.conj().T)) > _DM_TOL:
            raise ValueError("density matrix is not Hermitian")
        if abs(np.trace(m).real - 1.0) > _DM_TOL:
            raise ValueError(f"density matrix trace is {np.trace(m)!r}, expected 1")
        if np.linalg.eigvalsh(m).min() < -_DM_TOL:
            raise ValueError("density matrix has a negative eigenvalue")

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    def purity(self) -> float:
        return float(np.real(np.trace(self.matrix @ self.matrix)))


def _as_array(psi: StateVector | np.ndarray) -> tuple[np.ndarray, int]:
    if isinstance(psi, StateVector):
        return psi.to_array(), psi.n
    arr = np.asarray(psi, dtype=complex).ravel()
    n = int(arr.size).bit_length() - 1
    if 1 << n != arr.size:
        raise ValueError(f"array length {arr.size} is not a power of two")
    return arr, n


def _reduced(arr: np.ndarray, n: int, keep: Sequence[int]) -> np.ndarray:
    """Reduced density matrix on the kept particles (ascending order)."""
    keep0 = [k - 1 for k in keep]
    rest0 = [k for k in range(n) if k not in keep0]
    t = arr.reshape([2] * n).transpose(keep0 + rest0)
    m = t.reshape(1 << len(keep0), -1)
    return m @ m.conj().T


def partial_trace(psi: StateVector | np.ndarray, keep: Iterable[int]) -> DensityMatrix:
    """Trace out everything except the given particles (1-based indices)."""
    arr, n = _as_array(psi)
    keep = sorted(set(keep))
    if not keep or len(keep) >= n:
        raise ValueError("keep must be a non-empty proper subset of the particles")
    if keep[0] < 1 or keep[-1] > n:
        raise ValueError(f"kept particles {keep} out of range for n={n}")
    return DensityMatrix(_reduced(arr, n, keep))


def _site_purities(arr: np.ndarray, n: int) -> list[float]:
    out = []
    for k in range(n):
        rho = _reduced(arr, n, [k + 1])
        out.append(float(np.real(np.trace(rho @ rho))))
    return out


def meyer_wallach_q(psi: StateVector | np.ndarray) -> float:
    """Global entanglement Q = 2 (1 - mean single-site reduced purity).

    Zero exactly for product states and 1 when every qubit is maximally
    mixed.
    """
    arr, n = _as_array(psi)
    purities = _site_purities(arr, n)
    return 2.0 * (1.0 - sum(purities) / n)


_SY_SY = np.array([
    [0, 0, 0, -1],
    [0, 0, 1, 0],
    [0, 1, 0, 0],
    [-1, 0, 0, 0],
], dtype=complex)


def concurrence(rho: DensityMatrix | np.ndarray) -> float:
    """Wootters concurrence of a two-qubit density matrix."""
    m = rho.matrix if isinstance(rho, DensityMatrix) else np.asarray(rho, dtype=complex)
    if m.shape != (4, 4):
        raise ValueError("concurrence needs a 4x4 two-qubit density matrix")
    rho_tilde = _SY_SY @ m.conj() @ _SY_SY
    eigvals = np.linalg.eigvals(m @ rho_tilde)
    lams = np.sort(np.sqrt(np.abs(np.real(eigvals))))[::-1]
    return float(max(0.0, lams[0] - lams[1] - lams[2] - lams[3]))


def _pure_pair_concurrence(vec: np.ndarray) -> float:
    """Concurrence 2|ad - bc| of a normalized pure two-qubit state."""
    return float(2.0 * abs(vec[0] * vec[3] - vec[1] * vec[2]))


def three_tangle(psi: StateVector | np.ndarray) -> float:
    """Residual tangle tau = C^2(1|23) - C^2(12) - C^2(13).

    The one-versus-rest term for a pure state is 4 det(rho_1); the pair
    terms use Wootters concurrence on the reduced two-qubit states. The
    monogamy inequality makes the difference non-negative up to rounding,
    and tiny negative noise is clamped to zero.
    """
    arr, n = _as_array(psi)
    if n != 3:
        raise ValueError(f"three_tangle needs exactly 3 qubits, got {n}")
    rho1 = _reduced(arr, 3, [1])
    c2_one_rest = float(np.real(4.0 * np.linalg.det(rho1)))
    c12 = concurrence(_reduced(arr, 3, [1, 2]))
    c13 = concurrence(_reduced(arr, 3, [1, 3]))
    return max(0.0, c2_one_rest - c12 ** 2 - c13 ** 2)


def classify_three_qubit(psi: StateVector | np.ndarray,
                         purity_tol: float = PURITY_TOL,
                         tangle_tol: float = 1e-9) -> ThreeQubitClass:
    """Sort a pure 3-qubit state into product, biseparable, W or GHZ.

    All three sites pure means product; exactly one pure site means
    biseparable; otherwise the residual tangle separates GHZ (positive)
    from W (zero).
    """
    arr, n = _as_array(psi)
    if n != 3:
        raise ValueError(f"classification needs exactly 3 qubits, got {n}")
    pure_sites = [p >= 1.0 - purity_tol for p in _site_purities(arr, 3)]
    if all(pure_sites):
        return ThreeQubitClass.PRODUCT
    if sum(pure_sites) == 1:
        return ThreeQubitClass.BISEPARABLE
    if three_tangle(arr) > tangle_tol:
        return ThreeQubitClass.GHZ
    return ThreeQubitClass.W


@dataclass(frozen=True)
class MeasurementBranch:
    probability: float
    outcome: str
    state: StateVector


def _contract(arr: np.ndarray, n: int, sites: Sequence[int],
              vectors: Sequence[np.ndarray]) -> np.ndarray:
    """Project the given sites onto outcome vectors; unnormalized result.

    Contracting higher axes first keeps the remaining axis numbers valid;
    the surviving axes stay in particle order.
    """
    t = arr.reshape([2] * n)
    for site, vec in sorted(zip(sites, vectors), key=lambda sv: -sv[0]):
        t = np.tensordot(t, vec.conj(), axes=([site - 1], [0]))
    return t.ravel()


def measure_branches(psi: StateVector | np.ndarray, site: int,
                     basis: MeasurementBasis,
                     prob_cutoff: float = PROB_CUTOFF) -> list[MeasurementBranch]:
    """Born-rule branches of one single-site projective measurement.

    Post-states are renormalized on the remaining particles (original
    order); branches with probability below the cutoff are dropped.
    """
    arr, n = _as_array(psi)
    if not 1 <= site <= n:
        raise ValueError(f"site {site} out of range for {n} particles")
    if n < 2:
        raise ValueError("measuring the only particle leaves no state behind")
    branches = []
    for outcome, vec in basis.vectors():
        sub = _contract(arr, n, [site], [vec])
        prob = float(np.real(np.vdot(sub, sub)))
        if prob < prob_cutoff:
            continue
        branches.append(MeasurementBranch(
            probability=prob,
            outcome=outcome,
            state=StateVector.from_array(sub / np.sqrt(prob)),
        ))
    return branches


def _is_fully_product(arr: np.ndarray, n: int, purity_tol: float) -> bool:
    if n <= 1:
        return True
    return all(p >= 1.0 - purity_tol for p in _site_purities(arr, n))


def _sorted_bases(bases: Iterable[MeasurementBasis]) -> tuple[MeasurementBasis, ...]:
    order = {MeasurementBasis.Z: 0, MeasurementBasis.X: 1, MeasurementBasis.Y: 2}
    unique = sorted(set(bases), key=order.__getitem__)
    if not unique:
        raise ValueError("need at least one measurement basis")
    return tuple(unique)


def _assignment_disentangles(arr: np.ndarray, n: int, sites: Sequence[int],
                             assignment: Sequence[MeasurementBasis],
                             purity_tol: float, prob_cutoff: float) -> bool:
    """True when every outcome branch of the assignment is fully product."""
    outcome_sets = [basis.vectors() for basis in assignment]
    for combo in itertools.product(*outcome_sets):
        vectors = [vec for _, vec in combo]
        sub = _contract(arr, n, sites, vectors)
        prob = float(np.real(np.vdot(sub, sub)))
        if prob < prob_cutoff:
            continue
        if not _is_fully_product(sub / np.sqrt(prob), n - len(sites), purity_tol):
            return False
    return True


def persistency(psi: StateVector | np.ndarray,
                bases: Iterable[MeasurementBasis] = tuple(MeasurementBasis),
                k_max: int | None = None, *,
                purity_tol: float = PURITY_TOL,
                prob_cutoff: float = PROB_CUTOFF) -> int | None:
    """Minimum number of single-site Pauli measurements that always
    leave a fully product state.

    Searches sites and basis assignments non-adaptively: one assignment
    must make every nonzero-probability outcome branch product. Returns 0
    for product states and None when no k <= k_max works. Restricting to
    the Pauli bases makes this an upper bound on the unrestricted notion.
    """
    arr, n = _as_array(psi)
    if n > 6:
        raise ValueError("persistency search is exponential; n <= 6 only")
    if k_max is None:
        k_max = n
    if _is_fully_product(arr, n, purity_tol):
        return 0
    basis_choices = _sorted_bases(bases)
    for k in range(1, min(k_max, n) + 1):
        for sites in itertools.combinations(range(1, n + 1), k):
            for assignment in itertools.product(basis_choices, repeat=k):
                if _assignment_disentangles(arr, n, sites, assignment,
                                            purity_tol, prob_cutoff):
                    return k
    return None


def is_pair_connectable(psi: StateVector | np.ndarray, i: int, j: int,
                        bases: Iterable[MeasurementBasis] = tuple(MeasurementBasis), *,
                        bell_tol: float = BELL_TOL,
                        prob_cutoff: float = PROB_CUTOFF,
                        ) -> tuple[bool, tuple[tuple[int, MeasurementBasis], ...] | None]:
    """Can measuring all other sites always project (i, j) onto a Bell pair?

    Tries every Pauli basis assignment on the complement; a witness
    assignment must give concurrence within ``bell_tol`` of 1 on every
    nonzero-probability branch. Returns (verdict, witness or None); the
    search order makes the witness deterministic.
    """
    arr, n = _as_array(psi)
    if i == j or not (1 <= i <= n and 1 <= j <= n):
        raise ValueError(f"bad pair ({i}, {j}) for {n} particles")
    if n - 2 < 1:
        raise ValueError("need at least one particle outside the pair")
    others = [k for k in range(1, n + 1) if k not in (i, j)]
    basis_choices = _sorted_bases(bases)
    for assignment in itertools.product(basis_choices, repeat=len(others)):
        outcome_sets = [basis.vectors() for basis in assignment]
        ok = True
        for combo in itertools.product(*outcome_sets):
            vectors = [vec for _, vec in combo]
            sub = _contract(arr, n, others, vectors)
            prob = float(np.real(np.vdot(sub, sub)))
            if prob < prob_cutoff:
                continue
            if _pure_pair_concurrence(sub / np.sqrt(prob)) < 1.0 - bell_tol:
                ok = False
                break
        if ok:
            return True, tuple(zip(others, assignment))
    return False, None


@dataclass(frozen=True)
class PairReport:
    pair: tuple[int, int]
    connected: bool
    witness: tuple[tuple[int, MeasurementBasis], ...] | None


def maximal_connectedness(psi: StateVector | np.ndarray,
                          bases: Iterable[MeasurementBasis] = tuple(MeasurementBasis),
                          ) -> tuple[bool, list[PairReport]]:
    """Whether every unordered pair is connectable, with per-pair detail."""
    arr, n = _as_array(psi)
    if n > 6:
        raise ValueError("connectedness search is exponential; n <= 6 only")
    reports = []
    for i, j in itertools.combinations(range(1, n + 1), 2):
        connected, witness = is_pair_connectable(arr, i, j, bases)
        reports.append(PairReport((i, j), connected, witness))
    return all(r.connected for r in reports), reports
