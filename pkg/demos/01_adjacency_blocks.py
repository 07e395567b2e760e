"""
Adjacency matrices in block form
================================

Vertices of the zero-divisor graph of Z_n fall into classes by gcd(x, n).
Listing the classes one after another turns the adjacency matrix into
constant blocks.
"""

import numpy as np

from zdg import Convention, build_adjacency, class_partition, factorize
from zdg.graph import BlockSpec, check_block_form, export

# Z_27: the six multiples of 3 that are not multiples of 9, then 9 and 18
cs = class_partition(factorize(27))
for c in cs.classes:
    print(f"gcd {c.divisor}: {c.size} vertices, looped={c.looped}")

A = build_adjacency(cs)
print(A.labels)
print(A.entries)

# 6x6 zero block, everything else ones (with 1 on the diagonal for 9 and 18)
print("block form holds:", check_block_form(A, BlockSpec.for_form(cs.modulus)))

# without the nilpotent loops the diagonal is all zeros
S = build_adjacency(cs, Convention.SIMPLE)
print("loops removed:", int(np.trace(A.entries)), "->", int(np.trace(S.entries)))

# the same matrix as CSV and as a Graphviz graph
print(export(A, "csv").decode())
print(export(build_adjacency(class_partition(factorize(8))), "dot").decode())
