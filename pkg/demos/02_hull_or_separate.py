"""Either the origin is a convex combination of the columns, or a hyperplane separates them.

Run with ``python3 demos/02_hull_or_separate.py``.
"""
import numpy as np

from farkas_balance import PointMatrix, caratheodory_reduce, origin_in_hull

# Two opposite points: the midpoint is the witness.
out = origin_in_hull(PointMatrix([[1.0, -1.0]]))
print("opposite pair ->", out.witness.entries)

# Three points with positive first coordinate lie in a common half-space.
out = origin_in_hull(PointMatrix([[1, 1, 1], [0, 1, -1]]))
print("half-space    -> w =", out.witness.w, "margin", out.witness.margin)

# A dense combination of 20 points in R^4 shrinks to at most 5 of them.
rng = np.random.default_rng(1)
X = rng.normal(size=(4, 20))
v = rng.random(20)
v /= v.sum()
X -= (X @ v)[:, None]
M = PointMatrix(X)
sparse = caratheodory_reduce(M, v)
print(f"dense weights on 20 columns -> {len(sparse)} columns, residual {sparse.residual:.1e}")
print("kept columns:", sparse.labels)

# The solver returns the sparse witness directly.
out = origin_in_hull(M)
print("solver witness uses", len(out.witness), "columns;", "in hull:", out.in_hull)
