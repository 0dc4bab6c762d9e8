"""
The Lawvere theory of commutative monoids: free ℕ-modules ℕ^k with chosen bases
and ℕ-matrices between them, with the tangent structure M ↦ A ⊗ M.

A ⊗ M has basis {nonzero monomials of A} × {basis of M}, monomial-major, in the
order of `WeilAlgebra.basis()`; with that order act_obj(A⊗A′, M) and
act_obj(A′, act_obj(A, M)) carry literally the same basis.
"""

import logging
import numbers
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Sequence, Tuple

import numpy as np

from ...core.config import Settings
from ...core.errors import AlgorithmError, InputError
from ...schemas.reports import Certificate
from ..sampling import ENGINE_BOUNDS, random_matrix
from ..weil.algebra import Element, WeilAlgebra, WeilMorphism, evaluate, format_monomial
from ..weil.limits import Cone, Square, certify_tables, solve_lift

logger = logging.getLogger(__name__)

MAX_SAMPLE_RANK = 2


@dataclass(frozen=True)
class NModObject:
    """ℕ^rank; labels are for display only and do not take part in equality."""

    rank: int
    labels: Tuple[str, ...] = field(default=(), compare=False)

    def __post_init__(self):
        if isinstance(self.rank, bool) or not isinstance(self.rank, int) or self.rank < 0:
            raise InputError(f"rank must be a natural number, got {self.rank!r}")
        labels = tuple(self.labels) or tuple(f"e{b}" for b in range(1, self.rank + 1))
        if len(labels) != self.rank:
            raise InputError(f"{len(labels)} labels given for rank {self.rank}")
        object.__setattr__(self, "labels", labels)

    def __str__(self) -> str:
        return f"N^{self.rank}"


def as_matrix(rows: Any, shape: Tuple[int, int]) -> np.ndarray:
    """Object array of Python ints with the given shape; rejects anything but natural numbers."""
    matrix = np.zeros(shape, dtype=object)
    try:
        source = np.asarray(rows, dtype=object).reshape(shape) if shape[0] * shape[1] else None
    except ValueError as exc:
        raise InputError(f"matrix does not have shape {shape[0]}x{shape[1]}") from exc
    if source is not None:
        for r in range(shape[0]):
            for c in range(shape[1]):
                value = source[r, c]
                if isinstance(value, (bool, np.bool_)) or not isinstance(value, numbers.Integral):
                    raise InputError(f"matrix entries must be natural numbers, got {value!r}")
                value = int(value)
                if value < 0:
                    raise InputError(f"matrix entries must be natural numbers, got {value}")
                matrix[r, c] = value
    return matrix


def matmul(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    if a.shape[1] == 0:
        return np.zeros((a.shape[0], b.shape[1]), dtype=object)
    return a.dot(b)


@dataclass(frozen=True, eq=False)
class NModMorphism:
    """An ℕ-linear map; rows index the target basis, columns the source basis."""

    source: NModObject
    target: NModObject
    matrix: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "matrix", as_matrix(self.matrix, (self.target.rank, self.source.rank)))

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], source_rank: Optional[int] = None) -> "NModMorphism":
        rows = [list(row) for row in rows]
        cols = len(rows[0]) if rows else (source_rank or 0)
        if any(len(row) != cols for row in rows):
            raise InputError("matrix rows have different lengths")
        return cls(NModObject(cols), NModObject(len(rows)), np.array(rows, dtype=object).reshape(len(rows), cols))

    def rows(self) -> List[List[int]]:
        return [[int(v) for v in row] for row in self.matrix]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, NModMorphism):
            return NotImplemented
        return (
            self.source == other.source
            and self.target == other.target
            and bool(np.array_equal(self.matrix, other.matrix))
        )

    def __hash__(self) -> int:
        return hash((self.source.rank, self.target.rank, tuple(self.matrix.flatten().tolist())))

    def __str__(self) -> str:
        return f"{self.source} -> {self.target} {self.rows()}"


def _basis_index(algebra: WeilAlgebra) -> Dict[Tuple[int, ...], int]:
    return {mono: i for i, mono in enumerate(algebra.basis())}


def _is_unit_column(column: np.ndarray) -> Optional[int]:
    """Row of the single 1 in a column, -1 for a zero column, None otherwise."""
    nonzero = [r for r, v in enumerate(column) if v != 0]
    if not nonzero:
        return -1
    if len(nonzero) == 1 and column[nonzero[0]] == 1:
        return nonzero[0]
    return None


class NModCategory:
    """ℕ^• with direct sums as products."""

    name = "nmod"

    def __init__(self, bounds: Optional[Settings] = None, max_rank: int = MAX_SAMPLE_RANK):
        self.bounds = bounds or ENGINE_BOUNDS
        self.max_rank = max_rank

    # category

    def compose(self, g: NModMorphism, f: NModMorphism) -> NModMorphism:
        if f.target != g.source:
            raise InputError(f"compose: {f.target} is not {g.source}")
        return NModMorphism(f.source, g.target, matmul(g.matrix, f.matrix))

    def identity(self, obj: NModObject) -> NModMorphism:
        matrix = np.zeros((obj.rank, obj.rank), dtype=object)
        for i in range(obj.rank):
            matrix[i, i] = 1
        return NModMorphism(obj, obj, matrix)

    def source(self, f: NModMorphism) -> NModObject:
        return f.source

    def target(self, f: NModMorphism) -> NModObject:
        return f.target

    def describe_object(self, obj: NModObject) -> str:
        return str(obj)

    def encode_morphism(self, f: NModMorphism) -> List[List[int]]:
        return f.rows()

    def sample_object(self, rng: np.random.Generator) -> NModObject:
        return NModObject(int(rng.integers(0, self.max_rank + 1)))

    def sample_morphism(self, rng: np.random.Generator, source: NModObject, target: NModObject) -> NModMorphism:
        return NModMorphism(source, target, random_matrix(rng, target.rank, source.rank, self.bounds))

    # cartesian structure

    def terminal(self) -> NModObject:
        return NModObject(0)

    def product(self, x: NModObject, y: NModObject) -> NModObject:
        return NModObject(x.rank + y.rank, x.labels + y.labels)

    def projections(self, x: NModObject, y: NModObject) -> Tuple[NModMorphism, NModMorphism]:
        both = self.product(x, y)
        first = np.zeros((x.rank, both.rank), dtype=object)
        second = np.zeros((y.rank, both.rank), dtype=object)
        for i in range(x.rank):
            first[i, i] = 1
        for j in range(y.rank):
            second[j, x.rank + j] = 1
        return NModMorphism(both, x, first), NModMorphism(both, y, second)

    def pair(self, f: NModMorphism, g: NModMorphism) -> NModMorphism:
        if f.source != g.source:
            raise InputError("pair: the two maps have different sources")
        stacked = np.concatenate([f.matrix, g.matrix], axis=0)
        return NModMorphism(f.source, self.product(f.target, g.target), stacked)

    def bang(self, x: NModObject) -> NModMorphism:
        return self.zero(x, self.terminal())

    def product_mor(self, f: NModMorphism, g: NModMorphism) -> NModMorphism:
        source = self.product(f.source, g.source)
        target = self.product(f.target, g.target)
        matrix = np.zeros((target.rank, source.rank), dtype=object)
        matrix[: f.target.rank, : f.source.rank] = f.matrix
        matrix[f.target.rank :, f.source.rank :] = g.matrix
        return NModMorphism(source, target, matrix)

    def inverse(self, f: NModMorphism) -> NModMorphism:
        """Only permutation matrices are invertible over ℕ; their inverse is the transpose."""
        if f.source.rank != f.target.rank:
            raise InputError(f"{f.source} and {f.target} have different ranks, no inverse")
        for column in f.matrix.T:
            if _is_unit_column(column) in (None, -1):
                raise InputError("matrix is not a permutation matrix, no inverse over N")
        for row in f.matrix:
            if sum(row) != 1:
                raise InputError("matrix is not a permutation matrix, no inverse over N")
        return NModMorphism(f.target, f.source, f.matrix.T.copy())

    def add(self, f: NModMorphism, g: NModMorphism) -> NModMorphism:
        if f.source != g.source or f.target != g.target:
            raise InputError("add: maps have different endpoints")
        return NModMorphism(f.source, f.target, f.matrix + g.matrix)

    def zero(self, source: NModObject, target: NModObject) -> NModMorphism:
        return NModMorphism(source, target, np.zeros((target.rank, source.rank), dtype=object))

    # pullback hooks

    def _table(self, f: NModMorphism) -> Tuple[Dict[int, Optional[int]], List[str]]:
        table: Dict[int, Optional[int]] = {}
        bad = []
        for c, column in enumerate(f.matrix.T):
            row = _is_unit_column(column)
            if row is None:
                table[c] = None
                bad.append(f"column {c} is not a basis vector")
            else:
                table[c] = None if row == -1 else row
        return table, bad

    def certify(self, square: Square[NModMorphism]) -> Certificate:
        top_table, top_bad = self._table(square.top)
        left_table, left_bad = self._table(square.left)
        bad = top_bad + left_bad
        injectivity = certify_tables(top_table, left_table, lambda c: f"e{c + 1}")
        commutes = self.compose(square.right, square.top) == self.compose(square.bottom, square.left)
        offending = [f"not a basis map: {entry}" for entry in bad] + injectivity
        if not commutes:
            offending.append("right∘top != bottom∘left")
        return Certificate(
            commutes=commutes, monomial_maps=not bad, jointly_injective=not injectivity, offending=offending
        )

    def sample_cone(self, rng: np.random.Generator, square: Square[NModMorphism]) -> Cone[NModMorphism]:
        corner = square.top.source
        apex = NModObject(int(rng.integers(0, self.max_rank + 2)))
        psi = NModMorphism(apex, corner, random_matrix(rng, corner.rank, apex.rank, self.bounds))
        return Cone(apex, self.compose(square.top, psi), self.compose(square.left, psi), witness=psi)

    def lift(self, square: Square[NModMorphism], cone: Cone[NModMorphism]) -> NModMorphism:
        if self.compose(square.right, cone.leg_right) != self.compose(square.bottom, cone.leg_bottom):
            raise InputError(f"cone does not commute over {square.label}")
        top_table, _ = self._table(square.top)
        left_table, _ = self._table(square.left)
        corner = square.top.source
        matrix = np.zeros((corner.rank, cone.apex.rank), dtype=object)
        for c in range(cone.apex.rank):
            right = {r: v for r, v in enumerate(cone.leg_right.matrix[:, c]) if v}
            bottom = {r: v for r, v in enumerate(cone.leg_bottom.matrix[:, c]) if v}
            for r, v in solve_lift(top_table, left_table, right, bottom).items():
                matrix[r, c] = v
        psi = NModMorphism(cone.apex, corner, matrix)
        if self.compose(square.top, psi) != cone.leg_right or self.compose(square.left, psi) != cone.leg_bottom:
            raise AlgorithmError(f"lift over {square.label} does not reproduce the cone legs")
        return psi


class NModAction:
    """act_obj(A, M) = A ⊗ M with the monomial basis of A."""

    name = "nmod"

    def __init__(self, category: Optional[NModCategory] = None):
        self.category = category or NModCategory()

    def act_obj(self, algebra: WeilAlgebra, obj: NModObject) -> NModObject:
        labels = tuple(
            label if not mono else f"{format_monomial(mono)}.{label}"
            for mono in algebra.basis()
            for label in obj.labels
        )
        return NModObject(len(algebra.basis()) * obj.rank, labels)

    def act_mor(self, phi: WeilMorphism, obj: NModObject) -> NModMorphism:
        """Substitution u ↦ φ(u) on monomials, 1 ↦ 1, repeated on every basis vector of M."""
        k = obj.rank
        source_basis = phi.source.basis()
        target_index = _basis_index(phi.target)
        matrix = np.zeros((len(target_index) * k, len(source_basis) * k), dtype=object)
        for u, mono in enumerate(source_basis):
            if not mono:
                image = {(): 1}
            else:
                image = evaluate(phi, Element._trusted(phi.source, {mono: 1})).support
            for v_mono, coef in image.items():
                v = target_index[v_mono]
                for b in range(k):
                    matrix[v * k + b, u * k + b] += coef
        return NModMorphism(self.act_obj(phi.source, obj), self.act_obj(phi.target, obj), matrix)

    def act_fun(self, algebra: WeilAlgebra, f: NModMorphism) -> NModMorphism:
        """One copy of f per monomial of A, block diagonal."""
        copies = len(algebra.basis())
        m, n = f.source.rank, f.target.rank
        matrix = np.zeros((copies * n, copies * m), dtype=object)
        for u in range(copies):
            matrix[u * n : (u + 1) * n, u * m : (u + 1) * m] = f.matrix
        return NModMorphism(self.act_obj(algebra, f.source), self.act_obj(algebra, f.target), matrix)


def nmod_action() -> NModAction:
    return NModAction()

