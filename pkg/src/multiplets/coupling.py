"""Clebsch-Gordan coefficients and coupled bases over coupling trees.

Angular momenta are tracked as doubled integers (``two_j``, ``two_m``) so
half-integer spins stay exact. Coefficients follow the Condon-Shortley
phase convention and are evaluated with Racah's factorial sum over exact
rationals, so every amplitude is a :class:`~multiplets.exactnum.SignedRadical`.
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Mapping, Union

import numpy as np

from .exactnum import SignedRadical

__all__ = [
    "Spin",
    "SpinProjection",
    "HALF",
    "projections",
    "triangle_ok",
    "allowed_couplings",
    "cg",
    "Leaf",
    "Node",
    "CouplingTree",
    "all_coupling_trees",
    "CoupledLabel",
    "StateVector",
    "dense_index",
    "config_to_string",
    "config_from_string",
    "enumerate_multiplets",
    "expand",
    "full_basis",
    "recouple",
]


def _two_of(value) -> int:
    """Doubled integer for a spin-like value given as int, Fraction or str."""
    doubled = 2 * Fraction(value)
    if doubled.denominator != 1:
        raise ValueError(f"{value!r} is not a half-integer")
    return int(doubled)


@dataclass(frozen=True, order=True)
class Spin:
    """A spin quantum number j, stored as two_j = 2j."""

    two_j: int

    def __post_init__(self) -> None:
        if self.two_j < 0:
            raise ValueError(f"two_j must be >= 0, got {self.two_j}")

    @classmethod
    def of(cls, value) -> "Spin":
        return cls(_two_of(value))

    @property
    def j(self) -> Fraction:
        return Fraction(self.two_j, 2)

    def casimir_eigenvalue(self) -> Fraction:
        """j(j+1), the squared-spin eigenvalue with hbar = 1."""
        return Fraction(self.two_j * (self.two_j + 2), 4)

    def __str__(self) -> str:
        return str(self.j)


@dataclass(frozen=True, order=True)
class SpinProjection:
    """A magnetic quantum number m, stored as two_m = 2m."""

    two_m: int

    @classmethod
    def of(cls, value) -> "SpinProjection":
        return cls(_two_of(value))

    @property
    def m(self) -> Fraction:
        return Fraction(self.two_m, 2)

    def __str__(self) -> str:
        return str(self.m)


HALF = Spin(1)


def _check_jm(j: Spin, m: SpinProjection) -> None:
    if abs(m.two_m) > j.two_j or (m.two_m - j.two_j) % 2 != 0:
        raise ValueError(f"projection m={m} is invalid for spin j={j}")


def projections(j: Spin) -> list[SpinProjection]:
    """All projections of j, descending (m = j, j-1, ..., -j)."""
    return [SpinProjection(two_m) for two_m in range(j.two_j, -j.two_j - 1, -2)]


def triangle_ok(j1: Spin, j2: Spin, j: Spin) -> bool:
    """Triangle rule |j1-j2| <= j <= j1+j2 with matching parity."""
    return (
        abs(j1.two_j - j2.two_j) <= j.two_j <= j1.two_j + j2.two_j
        and (j1.two_j + j2.two_j + j.two_j) % 2 == 0
    )


def allowed_couplings(j1: Spin, j2: Spin) -> list[Spin]:
    """All total spins j1 and j2 can couple to, descending."""
    hi = j1.two_j + j2.two_j
    lo = abs(j1.two_j - j2.two_j)
    return [Spin(two_j) for two_j in range(hi, lo - 1, -2)]


def _fact2(doubled: int) -> int:
    """(doubled/2)! for an even, non-negative doubled integer."""
    if doubled < 0 or doubled % 2:
        raise ValueError(f"factorial argument {doubled}/2 is not a natural number")
    return math.factorial(doubled // 2)


@functools.lru_cache(maxsize=None)
def _cg_doubled(tj1: int, tm1: int, tj2: int, tm2: int, tj: int, tm: int) -> SignedRadical:
    if tm != tm1 + tm2:
        return SignedRadical.zero()
    if not triangle_ok(Spin(tj1), Spin(tj2), Spin(tj)):
        return SignedRadical.zero()

    # Racah's closed form: a square-rooted rational prefactor times a
    # signed rational sum, so the result is a single signed radical.
    prefactor = (
        Fraction(tj + 1)
        * _fact2(tj1 + tj2 - tj)
        * _fact2(tj1 - tj2 + tj)
        * _fact2(-tj1 + tj2 + tj)
        / _fact2(tj1 + tj2 + tj + 2)
        * _fact2(tj + tm)
        * _fact2(tj - tm)
        * _fact2(tj1 - tm1)
        * _fact2(tj1 + tm1)
        * _fact2(tj2 - tm2)
        * _fact2(tj2 + tm2)
    )

    k_min = max(0, -(tj - tj2 + tm1) // 2, -(tj - tj1 - tm2) // 2)
    k_max = min((tj1 + tj2 - tj) // 2, (tj1 - tm1) // 2, (tj2 + tm2) // 2)
    total = Fraction(0)
    for k in range(k_min, k_max + 1):
        denom = (
            math.factorial(k)
            * _fact2(tj1 + tj2 - tj - 2 * k)
            * _fact2(tj1 - tm1 - 2 * k)
            * _fact2(tj2 + tm2 - 2 * k)
            * _fact2(tj - tj2 + tm1 + 2 * k)
            * _fact2(tj - tj1 - tm2 + 2 * k)
        )
        total += Fraction(-1 if k % 2 else 1, denom)
    if total == 0:
        return SignedRadical.zero()
    sign = 1 if total > 0 else -1
    return SignedRadical(sign, total * total * prefactor)


def cg(j1: Spin, m1: SpinProjection, j2: Spin, m2: SpinProjection,
       j: Spin, m: SpinProjection) -> SignedRadical:
    """Condon-Shortley Clebsch-Gordan coefficient <j1 m1 j2 m2|j m>.

    Zero when m != m1 + m2 or the triangle rule fails; raises ValueError
    for malformed quantum numbers (parity or range).
    """
    _check_jm(j1, m1)
    _check_jm(j2, m2)
    _check_jm(j, m)
    return _cg_doubled(j1.two_j, m1.two_m, j2.two_j, m2.two_m, j.two_j, m.two_m)


# --------------------------------------------------------------------------
# Coupling trees


@dataclass(frozen=True)
class Leaf:
    """One particle; ``index`` is 1-based."""

    index: int
    spin: Spin = HALF


@dataclass(frozen=True)
class Node:
    """Coupling of the two child subtrees."""

    left: "TreeNode"
    right: "TreeNode"


TreeNode = Union[Leaf, Node]


def _walk_leaves(node: TreeNode) -> Iterator[Leaf]:
    if isinstance(node, Leaf):
        yield node
    else:
        yield from _walk_leaves(node.left)
        yield from _walk_leaves(node.right)


def _walk_internal(node: TreeNode) -> Iterator[Node]:
    """Internal nodes in postorder; the root comes last."""
    if isinstance(node, Node):
        yield from _walk_internal(node.left)
        yield from _walk_internal(node.right)
        yield node


@dataclass(frozen=True)
class CouplingTree:
    """A binary coupling order over particles 1..n."""

    root: TreeNode

    def __post_init__(self) -> None:
        indices = [leaf.index for leaf in _walk_leaves(self.root)]
        if sorted(indices) != list(range(1, len(indices) + 1)):
            raise ValueError(
                f"leaf indices must be a permutation of 1..n, got {indices}"
            )

    @property
    def n(self) -> int:
        return len(self.particles())

    def particles(self) -> tuple[int, ...]:
        """Leaf indices in leaf order (left to right)."""
        return tuple(leaf.index for leaf in _walk_leaves(self.root))

    def leaves(self) -> tuple[Leaf, ...]:
        return tuple(_walk_leaves(self.root))

    def internal_nodes(self) -> tuple[Node, ...]:
        return tuple(_walk_internal(self.root))

    def node_particles(self, node: TreeNode) -> tuple[int, ...]:
        return tuple(leaf.index for leaf in _walk_leaves(node))

    def node_names(self) -> tuple[str, ...]:
        """One name per internal node, postorder; the root is plain "S"."""
        names = []
        for node in self.internal_nodes():
            if node is self.root:
                names.append("S")
            else:
                idx = sorted(self.node_particles(node))
                sep = "," if any(i > 9 for i in idx) else ""
                names.append("S" + sep.join(str(i) for i in idx))
        return tuple(names)

    @classmethod
    def parse(cls, spec: str, leaf_spin: Spin = HALF) -> "CouplingTree":
        """Parse a nested-parentheses tree spec such as "((1 2) (3 4))".

        Whitespace is optional except between adjacent indices.
        """
        tokens = _tokenize(spec)
        node, pos = _parse_node(tokens, 0, leaf_spin)
        if pos != len(tokens):
            raise ValueError(f"trailing input in tree spec {spec!r}")
        return cls(node)

    def spec(self) -> str:
        """Canonical tree spec string; parses back to an equal tree."""
        def fmt(node: TreeNode) -> str:
            if isinstance(node, Leaf):
                return str(node.index)
            return f"({fmt(node.left)} {fmt(node.right)})"
        return fmt(self.root)

    def __str__(self) -> str:
        return self.spec()


def _tokenize(spec: str) -> list:
    tokens: list = []
    i = 0
    while i < len(spec):
        ch = spec[i]
        if ch.isspace():
            i += 1
        elif ch in "()":
            tokens.append(ch)
            i += 1
        elif ch.isdigit():
            j = i
            while j < len(spec) and spec[j].isdigit():
                j += 1
            tokens.append(int(spec[i:j]))
            i = j
        else:
            raise ValueError(f"unexpected character {ch!r} in tree spec")
    return tokens


def _parse_node(tokens: list, pos: int, leaf_spin: Spin) -> tuple[TreeNode, int]:
    if pos >= len(tokens):
        raise ValueError("unexpected end of tree spec")
    tok = tokens[pos]
    if isinstance(tok, int):
        return Leaf(tok, leaf_spin), pos + 1
    if tok != "(":
        raise ValueError(f"expected '(' or index, got {tok!r}")
    left, pos = _parse_node(tokens, pos + 1, leaf_spin)
    right, pos = _parse_node(tokens, pos, leaf_spin)
    if pos >= len(tokens) or tokens[pos] != ")":
        raise ValueError("expected ')' closing a coupling pair")
    return Node(left, right), pos + 1


def all_coupling_trees(particles: tuple[int, ...] | list[int],
                       leaf_spin: Spin = HALF) -> list[CouplingTree]:
    """Every binary coupling order over the given particles, deterministically.

    Mirror-image duplicates are avoided by always keeping the smallest
    particle in the left subtree; there are (2n-3)!! trees for n particles.
    """
    particles = tuple(sorted(particles))

    def build(items: tuple[int, ...]) -> list[TreeNode]:
        if len(items) == 1:
            return [Leaf(items[0], leaf_spin)]
        head, rest = items[0], items[1:]
        out: list[TreeNode] = []
        for mask in range(1 << len(rest)):
            left_items = (head,) + tuple(
                rest[i] for i in range(len(rest)) if mask >> i & 1
            )
            right_items = tuple(rest[i] for i in range(len(rest)) if not mask >> i & 1)
            if not right_items:
                continue
            for left in build(left_items):
                for right in build(right_items):
                    out.append(Node(left, right))
        return out

    return [CouplingTree(root) for root in build(particles)]


# --------------------------------------------------------------------------
# Labels and state vectors


@dataclass(frozen=True)
class CoupledLabel:
    """One multiplet member: a tree, its intermediate spins and total m.

    ``intermediates`` holds the coupled spin at each internal node in
    postorder, so the last entry is the total spin S.
    """

    tree: CouplingTree
    intermediates: tuple[Spin, ...]
    total_m: SpinProjection

    def __post_init__(self) -> None:
        nodes = self.tree.internal_nodes()
        if len(self.intermediates) != len(nodes):
            raise ValueError(
                f"need {len(nodes)} intermediate spins, got {len(self.intermediates)}"
            )
        spin_of = self.node_spins()
        for node in nodes:
            if not triangle_ok(spin_of[node.left], spin_of[node.right], spin_of[node]):
                raise ValueError(
                    f"triangle rule fails at node over {self.tree.node_particles(node)}"
                )
        _check_jm(self.total_spin, self.total_m)

    @property
    def total_spin(self) -> Spin:
        return self.intermediates[-1]

    def node_spins(self) -> dict[TreeNode, Spin]:
        """Spin at every tree node (leaves included). Distinct particle
        sets make structurally distinct nodes, so value keys are safe."""
        spin_of: dict[TreeNode, Spin] = {leaf: leaf.spin for leaf in self.tree.leaves()}
        for node, spin in zip(self.tree.internal_nodes(), self.intermediates):
            spin_of[node] = spin
        return spin_of

    def quantum_numbers(self) -> dict[str, str]:
        """Printable label, e.g. {"S12": "1", "S34": "1", "S": "2", "m": "0"}."""
        out = {
            name: str(spin)
            for name, spin in zip(self.tree.node_names(), self.intermediates)
        }
        out["m"] = str(self.total_m)
        return out

    def __str__(self) -> str:
        return " ".join(f"{k}={v}" for k, v in self.quantum_numbers().items())


def dense_index(config: int, n: int) -> int:
    """Dense-array position of a configuration (all-up sorts first).

    Configurations use bit = 1 for an up spin with particle 1 as the most
    significant bit; dense arrays order the basis up-first, so the map is
    the bit complement (and is its own inverse).
    """
    return (1 << n) - 1 - config


def config_to_string(config: int, n: int) -> str:
    """Configuration as a u/d string, particle 1 first."""
    return "".join("u" if config >> (n - k) & 1 else "d" for k in range(1, n + 1))


def config_from_string(s: str) -> int:
    config = 0
    for ch in s:
        config <<= 1
        if ch == "u":
            config |= 1
        elif ch != "d":
            raise ValueError(f"configuration {s!r} must use only 'u' and 'd'")
    return config


_NORM_TOL = 1e-12


@dataclass(frozen=True)
class StateVector:
    """An n-qubit pure state, either exact (SignedRadical) or numeric.

    Amplitudes are keyed by configuration integers: bit = 1 means the
    particle is up and particle 1 is the most significant bit. Zero
    amplitudes are never stored and the norm is validated on construction.
    """

    n: int
    amplitudes: Mapping[int, object]
    exact: bool

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError("a state needs at least one particle")
        if not self.amplitudes:
            raise ValueError("a state needs at least one amplitude")
        dim = 1 << self.n
        cleaned: dict[int, object] = {}
        if self.exact:
            norm2 = Fraction(0)
            for config, amp in self.amplitudes.items():
                self._check_config(config, dim)
                if not isinstance(amp, SignedRadical):
                    raise TypeError("exact amplitudes must be SignedRadical")
                if amp.sign == 0:
                    continue
                cleaned[config] = amp
                norm2 += amp.squared()
            if norm2 != 1:
                raise ValueError(f"exact state has norm^2 = {norm2}, expected 1")
        else:
            norm2 = 0.0
            for config, amp in self.amplitudes.items():
                self._check_config(config, dim)
                value = complex(amp)
                if value == 0:
                    continue
                cleaned[config] = value
                norm2 += abs(value) ** 2
            if abs(norm2 - 1.0) > _NORM_TOL:
                raise ValueError(f"numeric state has norm^2 = {norm2!r}, expected 1")
        object.__setattr__(self, "amplitudes", cleaned)

    @staticmethod
    def _check_config(config: int, dim: int) -> None:
        if not isinstance(config, int) or not 0 <= config < dim:
            raise ValueError(f"configuration {config!r} out of range")

    @classmethod
    def exact_state(cls, n: int, amplitudes: Mapping[int, SignedRadical]) -> "StateVector":
        return cls(n, dict(amplitudes), exact=True)

    @classmethod
    def numeric_state(cls, n: int, amplitudes: Mapping[int, complex]) -> "StateVector":
        return cls(n, dict(amplitudes), exact=False)

    @classmethod
    def from_array(cls, array: np.ndarray, cutoff: float = 1e-15) -> "StateVector":
        """Numeric state from a dense array in up-first basis order."""
        array = np.asarray(array).ravel()
        n = int(array.size).bit_length() - 1
        if 1 << n != array.size:
            raise ValueError(f"array length {array.size} is not a power of two")
        amps = {
            dense_index(i, n): complex(a)
            for i, a in enumerate(array)
            if abs(a) > cutoff
        }
        return cls.numeric_state(n, amps)

    def items(self) -> list[tuple[int, object]]:
        """Amplitudes sorted by descending configuration (all-up first)."""
        return sorted(self.amplitudes.items(), key=lambda kv: -kv[0])

    def to_numeric(self) -> "StateVector":
        if not self.exact:
            return self
        return StateVector.numeric_state(
            self.n, {c: complex(a.to_float()) for c, a in self.amplitudes.items()}
        )

    def to_array(self) -> np.ndarray:
        """Dense complex array in up-first basis order."""
        arr = np.zeros(1 << self.n, dtype=complex)
        for config, amp in self.amplitudes.items():
            value = amp.to_float() if self.exact else amp
            arr[dense_index(config, self.n)] = value
        return arr

    def inner(self, other: "StateVector") -> complex:
        """<self|other> evaluated numerically."""
        if self.n != other.n:
            raise ValueError("particle counts differ")
        return complex(np.vdot(self.to_array(), other.to_array()))

    def norm_squared(self) -> Fraction | float:
        if self.exact:
            return sum((a.squared() for a in self.amplitudes.values()), Fraction(0))
        return sum(abs(a) ** 2 for a in self.amplitudes.values())

    def config_string(self, config: int) -> str:
        return config_to_string(config, self.n)


# --------------------------------------------------------------------------
# Multiplet enumeration and expansion


def _assignments(node: TreeNode) -> Iterator[tuple[Spin, tuple[Spin, ...]]]:
    """(subtree spin, intermediate spins postorder), spins descending."""
    if isinstance(node, Leaf):
        yield node.spin, ()
        return
    for left_spin, left_inter in _assignments(node.left):
        for right_spin, right_inter in _assignments(node.right):
            for total in allowed_couplings(left_spin, right_spin):
                yield total, left_inter + right_inter + (total,)


def enumerate_multiplets(tree: CouplingTree) -> list[CoupledLabel]:
    """Every multiplet member of the tree in deterministic order.

    Intermediate-spin assignments come out with earlier (postorder-left)
    spins descending first, and each multiplet fans out over descending m.
    The labels always count the full product-space dimension.
    """
    labels = []
    for total, intermediates in _assignments(tree.root):
        for m in projections(total):
            labels.append(CoupledLabel(tree, intermediates, m))
    return labels


def _expand_node(node: TreeNode, spin_of: dict[TreeNode, Spin],
                 two_m: int) -> dict[tuple, SignedRadical]:
    """Expansion keyed by sorted (particle, two_m) tuples.

    Leaf projections determine every intermediate projection, so each key
    is reached exactly once and amplitudes stay single CG products.
    """
    if isinstance(node, Leaf):
        return {((node.index, two_m),): SignedRadical.one()}
    j_left, j_right = spin_of[node.left], spin_of[node.right]
    j_node = spin_of[node]
    out: dict[tuple, SignedRadical] = {}
    for two_ml in range(-j_left.two_j, j_left.two_j + 1, 2):
        two_mr = two_m - two_ml
        if abs(two_mr) > j_right.two_j:
            continue
        coeff = _cg_doubled(j_left.two_j, two_ml, j_right.two_j, two_mr,
                            j_node.two_j, two_m)
        if not coeff:
            continue
        left = _expand_node(node.left, spin_of, two_ml)
        right = _expand_node(node.right, spin_of, two_mr)
        for key_l, amp_l in left.items():
            for key_r, amp_r in right.items():
                out[tuple(sorted(key_l + key_r))] = coeff * amp_l * amp_r
    return out


def expand(label: CoupledLabel) -> StateVector:
    """Exact product-basis expansion of one coupled state."""
    tree = label.tree
    if any(leaf.spin != HALF for leaf in tree.leaves()):
        raise ValueError("expansion into the qubit basis needs spin-1/2 leaves")
    n = tree.n
    spin_of = label.node_spins()
    amps: dict[int, SignedRadical] = {}
    for key, amp in _expand_node(tree.root, spin_of, label.total_m.two_m).items():
        config = 0
        for index, two_m in key:
            if two_m > 0:
                config |= 1 << (n - index)
        amps[config] = amp
    return StateVector.exact_state(n, amps)


def full_basis(tree: CouplingTree) -> list[tuple[CoupledLabel, StateVector]]:
    """All 2**n coupled states of a tree, expanded exactly."""
    return [(label, expand(label)) for label in enumerate_multiplets(tree)]


def recouple(label: CoupledLabel, target: CouplingTree,
             cutoff: float = 1e-12) -> dict[CoupledLabel, float]:
    """Coefficients of a coupled state in another tree's coupled basis.

    Computed as inner products of the exact expansions, evaluated in
    floats; coefficients below ``cutoff`` are dropped. Only target labels
    with the same total S and m can appear.
    """
    if set(label.tree.particles()) != set(target.particles()):
        raise ValueError("trees must couple the same particles")
    source = expand(label).to_array()
    out: dict[CoupledLabel, float] = {}
    for target_label in enumerate_multiplets(target):
        if (target_label.total_spin != label.total_spin
                or target_label.total_m != label.total_m):
            continue
        coeff = float(np.real(np.vdot(expand(target_label).to_array(), source)))
        if abs(coeff) > cutoff:
            out[target_label] = coeff
    return out
