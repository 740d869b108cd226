"""Facet counts of the gallery prismatoids with floating-point Qhull.

Independent of the exact kernel: simplicial facets reported by Qhull are
merged by their (rounded, normalized) hyperplane equations, and the
width is the breadth-first distance between the facets with normals
+e_d and -e_d in the ridge graph.  Prints: file, points, facets, width.
Usage: python3 gallery_hulls.py FILE.ext ...
"""
import sys
from fractions import Fraction

import numpy as np
from scipy.spatial import ConvexHull


def read_vfile(path):
    rows, inside = [], False
    for line in open(path):
        line = line.strip()
        if line == "begin":
            inside = True
            continue
        if line == "end":
            break
        if inside and not line.endswith("rational"):
            rows.append([float(Fraction(t)) for t in line.split()[1:]])
    return np.array(rows)


def facets(points):
    hull = ConvexHull(points, qhull_options="Qt")
    eqs = {}
    for eq in hull.equations:
        eq = eq / np.linalg.norm(eq[:-1])
        eqs.setdefault(tuple(np.round(eq, 7)), eq)
    out = []
    for eq in eqs.values():
        out.append((eq, frozenset(np.nonzero(np.abs(points @ eq[:-1] + eq[-1]) < 1e-6)[0])))
    return out


def width(points, fs):
    """Dual-graph distance between the facets with normals +e_d and -e_d."""
    d = points.shape[1]
    top = [i for i, (eq, _) in enumerate(fs) if abs(eq[d - 1] - 1) < 1e-9]
    bottom = [i for i, (eq, _) in enumerate(fs) if abs(eq[d - 1] + 1) < 1e-9]
    adj = {i: [] for i in range(len(fs))}
    for i in range(len(fs)):
        for j in range(i + 1, len(fs)):
            common = sorted(fs[i][1] & fs[j][1])
            if len(common) >= d - 1:
                diffs = points[common[1:]] - points[common[0]]
                if np.linalg.matrix_rank(diffs, tol=1e-9) == d - 2:
                    adj[i].append(j)
                    adj[j].append(i)
    dist = {top[0]: 0}
    queue = [top[0]]
    for v in queue:
        for w in adj[v]:
            if w not in dist:
                dist[w] = dist[v] + 1
                queue.append(w)
    return dist[bottom[0]]


for path in sys.argv[1:]:
    pts = read_vfile(path)
    fs = facets(pts)
    print(path, len(pts), len(fs), width(pts, fs))
