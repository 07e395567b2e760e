"""Adjacency matrices of zero-divisor graphs in canonical block order."""

from __future__ import annotations

import enum
import io
import math
from dataclasses import dataclass

import numpy as np

from .zmod import ClassStructure, FactoredModulus, PCubed, PSquaredQ

DEFAULT_DENSE_CAP = 5000


class Convention(enum.Enum):
    """Diagonal convention: PAPER puts 1 at x when x*x = 0 (mod n)."""

    PAPER = "paper"
    SIMPLE = "simple"


class DomainError(ValueError):
    pass


class SizeCapError(ValueError):
    pass


class BlockSpecError(ValueError):
    pass


class Block(enum.Enum):
    ZERO = 0
    ONES = 1


def adjacency_oracle(x: int, y: int, m: FactoredModulus) -> bool:
    n = m.n
    for v in (x, y):
        if not 0 < v < n or math.gcd(v, n) == 1:
            raise DomainError(f"{v} is not a nonzero zero divisor of Z_{n}")
    return (x * y) % n == 0


@dataclass(frozen=True, eq=False)
class AdjacencyMatrix:
    n: int
    entries: np.ndarray  # uint8, read-only
    labels: tuple[int, ...]
    convention: Convention

    @property
    def order(self) -> int:
        return len(self.labels)

    def edge_matrix(self) -> np.ndarray:
        """Loop-free 0/1 matrix."""
        e = self.entries.copy()
        np.fill_diagonal(e, 0)
        return e


def build_adjacency(
    cs: ClassStructure,
    convention: Convention = Convention.PAPER,
    dense_cap: int = DEFAULT_DENSE_CAP,
) -> AdjacencyMatrix:
    N = cs.total_vertices
    if N > dense_cap:
        raise SizeCapError(
            f"Z_{cs.n} has {N} vertices, above the dense cap of {dense_cap}; "
            "use the class-reduced spectrum instead"
        )
    labels = np.array(cs.labels(), dtype=np.int64)
    # n | x*y  <=>  (n / gcd(x, n)) | y ; avoids int64 overflow of x*y
    cofactor = cs.n // np.gcd(labels, cs.n)
    entries = (labels[None, :] % cofactor[:, None] == 0).astype(np.uint8)
    if convention is Convention.SIMPLE:
        np.fill_diagonal(entries, 0)
    entries.setflags(write=False)
    return AdjacencyMatrix(cs.n, entries, tuple(int(v) for v in labels), convention)


@dataclass(frozen=True)
class BlockSpec:
    class_sizes: tuple[int, ...]
    blocks: tuple[tuple[Block, ...], ...]
    diagonal: tuple[Block, ...]  # per class, used under Convention.PAPER

    @classmethod
    def for_form(cls, m: FactoredModulus) -> BlockSpec:
        Z, O = Block.ZERO, Block.ONES
        match m.form:
            case PCubed(p):
                return cls((p * p - p, p - 1), ((Z, O), (O, O)), (Z, O))
            case PSquaredQ(p, q):
                pattern = (
                    (Z, Z, O, Z),
                    (Z, Z, Z, O),
                    (O, Z, O, O),
                    (Z, O, O, Z),
                )
                sizes = ((p - 1) * (q - 1), p * (p - 1), p - 1, q - 1)
                return cls(sizes, pattern, (Z, Z, O, Z))
        raise BlockSpecError(f"no block pattern is known for n={m.n}")

    @classmethod
    def from_classes(cls, cs: ClassStructure) -> BlockSpec:
        """Pattern predicted by gcd labels: classes d, e are joined iff n | d*e."""
        n = cs.n
        ds = cs.divisors
        blocks = tuple(
            tuple(Block.ONES if (d * e) % n == 0 else Block.ZERO for e in ds) for d in ds
        )
        diag = tuple(Block.ONES if c.looped else Block.ZERO for c in cs.classes)
        return cls(tuple(cs.sizes), blocks, diag)


def check_block_form(A: AdjacencyMatrix, spec: BlockSpec) -> bool:
    """True iff every block of ``A`` is uniformly what ``spec`` prescribes."""
    if sum(spec.class_sizes) != A.order:
        raise BlockSpecError(
            f"block sizes sum to {sum(spec.class_sizes)}, matrix order is {A.order}"
        )
    off = np.concatenate([[0], np.cumsum(spec.class_sizes)])
    k = len(spec.class_sizes)
    E = A.entries
    for i in range(k):
        for j in range(k):
            blk = E[off[i] : off[i + 1], off[j] : off[j + 1]]
            want = spec.blocks[i][j].value
            if i != j:
                if blk.size and not np.all(blk == want):
                    return False
                continue
            s = spec.class_sizes[i]
            offdiag = blk[~np.eye(s, dtype=bool)]
            if offdiag.size and not np.all(offdiag == want):
                return False
            d = spec.diagonal[i].value if A.convention is Convention.PAPER else 0
            if not np.all(np.diagonal(blk) == d):
                return False
    return True


def export(A: AdjacencyMatrix, fmt: str) -> bytes:
    if fmt == "csv":
        buf = io.StringIO()
        buf.write(",".join(map(str, A.labels)) + "\n")
        for row in A.entries:
            buf.write(",".join("1" if v else "0" for v in row) + "\n")
        return buf.getvalue().encode()
    if fmt == "dot":
        lines = [f"graph Z{A.n} {{"]
        lines += [f"  {v};" for v in A.labels]
        E = A.entries
        for i, j in zip(*np.nonzero(np.triu(E, k=1 if A.convention is Convention.SIMPLE else 0))):
            lines.append(f"  {A.labels[i]} -- {A.labels[j]};")
        lines.append("}")
        return ("\n".join(lines) + "\n").encode()
    raise ValueError(f"unknown export format {fmt!r}; expected 'dot' or 'csv'")
