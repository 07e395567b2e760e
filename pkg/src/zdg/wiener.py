"""Shortest-path distances and the Wiener index.

All quantities here are integers and stay integers: closed forms are
evaluated exactly and halved only after checking the numerator is even.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .graph import AdjacencyMatrix
from .zmod import ClassStructure, PCubed, PSquaredQ, require_prime

UNREACHABLE = -1


class DisconnectedGraphError(ValueError):
    def __init__(self, unreachable_pairs: int):
        super().__init__(f"graph is disconnected: {unreachable_pairs} unreachable pairs")
        self.unreachable_pairs = unreachable_pairs


class FormulaIntegralityError(ArithmeticError):
    pass


class StructureViolationError(RuntimeError):
    """Members of two classes are not all at the same distance."""


class IncompleteTableError(KeyError):
    pass


@dataclass(frozen=True, eq=False)
class DistanceMatrix:
    dist: np.ndarray  # int, UNREACHABLE where no path exists
    labels: tuple[int, ...]

    @property
    def order(self) -> int:
        return len(self.labels)

    @property
    def diameter(self) -> int:
        finite = self.dist[self.dist != UNREACHABLE]
        return int(finite.max()) if finite.size else 0

    def unreachable_pairs(self) -> int:
        return int(np.count_nonzero(np.triu(self.dist == UNREACHABLE, k=1)))


def bfs_distances(A: AdjacencyMatrix) -> DistanceMatrix:
    """Breadth-first search from every vertex at once, loops ignored.

    Row i of ``frontier`` holds the vertices first reached from i at the
    current level; one matrix product expands all frontiers by one edge.
    """
    E = A.edge_matrix().astype(np.float32)
    N = A.order
    dist = np.full((N, N), UNREACHABLE, dtype=np.int64)
    np.fill_diagonal(dist, 0)
    reached = np.eye(N, dtype=bool)
    frontier = reached.copy()
    level = 0
    while frontier.any():
        level += 1
        frontier = ((frontier.astype(np.float32) @ E) > 0) & ~reached
        dist[frontier] = level
        reached |= frontier
    return DistanceMatrix(dist, A.labels)


def wiener_index(D: DistanceMatrix) -> int:
    missing = D.unreachable_pairs()
    if missing:
        raise DisconnectedGraphError(missing)
    return int(np.triu(D.dist, k=1).sum())


def _halve(numerator: int, what: str) -> int:
    if numerator % 2:
        raise FormulaIntegralityError(f"{what}: odd numerator {numerator}")
    return numerator // 2


def wiener_closed_p3(p: int) -> int:
    require_prime(p)
    return _halve((p - 1) * (2 * p**3 - 3 * p - 2), f"p^3 Wiener form at p={p}")


def wiener_paper_p2q(p: int, q: int) -> int:
    """The p^2 q Wiener closed form exactly as printed (known to disagree with BFS)."""
    if p == q:
        raise ValueError("p and q must be distinct")
    require_prime(p, q)
    bracket = p**2 * (2 * p**2 - 4 * p - 1) + p * (
        4 * p**2 * q + 2 * p * q**2 - 8 * p * q - 2 * q + 5
    ) + 2
    return _halve(bracket, f"printed p^2 q Wiener form at (p, q) = ({p}, {q})")


ClassTable = dict[tuple[int, int], int]


def class_distance_table(
    cs: ClassStructure, A: AdjacencyMatrix, D: DistanceMatrix | None = None
) -> ClassTable:
    """Common distance between the members of each ordered pair of classes.

    Keys are (divisor_i, divisor_j). The intra-class entry is the distance
    between distinct members and is absent for singleton classes.
    """
    D = bfs_distances(A) if D is None else D
    if D.unreachable_pairs():
        raise DisconnectedGraphError(D.unreachable_pairs())
    off = cs.offsets()
    table: ClassTable = {}
    for i, ci in enumerate(cs.classes):
        for j, cj in enumerate(cs.classes):
            blk = D.dist[off[i] : off[i + 1], off[j] : off[j + 1]]
            if i == j:
                if ci.size < 2:
                    continue
                blk = blk[~np.eye(ci.size, dtype=bool)]
            vals = np.unique(blk)
            if vals.size != 1:
                raise StructureViolationError(
                    f"Z_{cs.n}: classes {ci.divisor} and {cj.divisor} "
                    f"have member distances {vals.tolist()}"
                )
            table[ci.divisor, cj.divisor] = int(vals[0])
    return table


def wiener_from_class_table(cs: ClassStructure, table: ClassTable) -> int:
    total = 0
    for i, ci in enumerate(cs.classes):
        if ci.size >= 2:
            if (ci.divisor, ci.divisor) not in table:
                raise IncompleteTableError((ci.divisor, ci.divisor))
            total += ci.size * (ci.size - 1) // 2 * table[ci.divisor, ci.divisor]
        for cj in cs.classes[i + 1 :]:
            key = (ci.divisor, cj.divisor)
            if key not in table:
                raise IncompleteTableError(key)
            total += ci.size * cj.size * table[key]
    return total


@dataclass(frozen=True)
class FormulaCheck:
    formula_id: str
    value: int | None
    matched: bool
    note: str | None = None


@dataclass(frozen=True)
class WienerReport:
    n: int
    brute_force: int | None
    unreachable_pairs: int
    diameter: int
    closed_forms: tuple[FormulaCheck, ...]
    class_distance_table: ClassTable = field(default_factory=dict)


def wiener_report(cs: ClassStructure, A: AdjacencyMatrix) -> WienerReport:
    D = bfs_distances(A)
    missing = D.unreachable_pairs()
    if missing:
        return WienerReport(cs.n, None, missing, D.diameter, ())
    brute = wiener_index(D)
    table = class_distance_table(cs, A, D)
    checks = [FormulaCheck("class-table", v := wiener_from_class_table(cs, table), v == brute)]
    match cs.modulus.form:
        case PCubed(p):
            v = wiener_closed_p3(p)
            checks.append(FormulaCheck("thm5.1", v, v == brute))
        case PSquaredQ(p, q):
            try:
                v = wiener_paper_p2q(p, q)
                checks.append(FormulaCheck("thm5.2-printed", v, v == brute))
            except FormulaIntegralityError as exc:
                checks.append(FormulaCheck("thm5.2-printed", None, False, str(exc)))
    return WienerReport(cs.n, brute, 0, D.diameter, tuple(checks), table)
