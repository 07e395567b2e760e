"""Shared oracles. Everything here avoids the package's own code paths."""

import math
from pathlib import Path

import networkx as nx
import numpy as np
import pytest

FIXTURES = Path(__file__).parent / "fixtures"


def primes_upto(k):
    return [p for p in range(2, k + 1) if all(p % d for d in range(2, math.isqrt(p) + 1))]


def brute_zero_divisors(n):
    return [x for x in range(1, n) if any((x * y) % n == 0 for y in range(1, n))]


def brute_totient(n):
    return sum(1 for x in range(1, n + 1) if math.gcd(x, n) == 1)


def nx_graph(labels, n):
    g = nx.Graph()
    g.add_nodes_from(labels)
    g.add_edges_from(
        (x, y) for i, x in enumerate(labels) for y in labels[i + 1 :] if (x * y) % n == 0
    )
    return g


def nx_wiener(n):
    labels = brute_zero_divisors(n)
    return int(nx.wiener_index(nx_graph(labels, n)))


def lapack_eigs(m):
    return np.linalg.eigvalsh(np.asarray(m, dtype=float))


P2Q_UNDER_2000 = sorted(
    (p, q)
    for p in primes_upto(50)
    for q in primes_upto(2000)
    if p != q and p * p * q <= 2000
)


@pytest.fixture
def z27_fixture_bytes():
    return (FIXTURES / "z27_rearranged.csv").read_bytes()
