"""Integer witness staircase for a unitary pattern given by its edge list.

Independent of the C++ code: classes come from union-find over the edges,
values from a longest-path layering of the strict-inequality DAG.
Usage: witness_from_edges.py EDGES.json NROWS
"""
import json
import sys
from collections import defaultdict
from functools import lru_cache


def main():
    edges = json.load(open(sys.argv[1]))
    nrows = int(sys.argv[2])
    verts = [(k, j) for k in range(1, nrows + 1) for j in range(1, k + 1)]
    parent = {v: v for v in verts}

    def find(v):
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    for a, b in edges:
        parent[find(tuple(a))] = find(tuple(b))

    # a > b relations between nearest neighbours (weak), strict when classes differ
    greater = defaultdict(set)
    for k in range(1, nrows):
        for j in range(1, k + 1):
            lo = (k, j)
            for up, sense in (((k + 1, j), 1), ((k + 1, j + 1), -1)):
                a, b = (up, lo) if sense == 1 else (lo, up)
                if find(a) != find(b):
                    greater[find(a)].add(find(b))
    for j in range(1, nrows):
        a, b = (nrows, j), (nrows, j + 1)
        if find(a) != find(b):
            greater[find(a)].add(find(b))

    @lru_cache(None)
    def height(c):
        return max((height(d) + 1 for d in greater[c]), default=0)

    rows = []
    for k in range(1, nrows + 1):
        rows.append([str(height(find((k, j)))) for j in range(1, k + 1)])
    print(json.dumps({"flavor": "unitary", "rows": rows}))


main()
