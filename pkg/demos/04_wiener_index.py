"""
Wiener index
============

BFS from every vertex gives the exact distance matrix. Because members of
two gcd classes are all at one common distance, a small class table is
enough to rebuild the total.
"""

from zdg import build_adjacency, class_partition, factorize
from zdg.wiener import (
    bfs_distances,
    class_distance_table,
    wiener_closed_p3,
    wiener_from_class_table,
    wiener_index,
    wiener_paper_p2q,
)

for p in (2, 3, 5, 7):
    A = build_adjacency(class_partition(factorize(p**3)))
    print(f"Z_{p**3}: BFS {wiener_index(bfs_distances(A))}, closed form {wiener_closed_p3(p)}")

cs = class_partition(factorize(12))
A = build_adjacency(cs)
table = class_distance_table(cs, A)
for (d, e), dist in table.items():
    print(f"  classes {d}, {e}: distance {dist}")
print("from table:", wiener_from_class_table(cs, table))
print("BFS:       ", wiener_index(bfs_distances(A)))
print("printed p^2 q formula:", wiener_paper_p2q(2, 3))
