"""Random Tukey depth on a small planar cloud.

Compares the random approximation with the exact planar depth and with
Mahalanobis depth, and shows how the approximation tightens as more
directions are used.
"""
import numpy as np

from rtdepth import (exact_tukey_depth_2d, fit_elliptical, mahalanobis_depth,
                     random_tukey_depth_all, sample_sphere)

rng = np.random.default_rng(7)
X = rng.standard_normal((40, 2)) @ np.array([[2.0, 0.0], [0.8, 0.5]])

exact = np.array([exact_tukey_depth_2d(x, X) for x in X])
maha = mahalanobis_depth(X, fit_elliptical(X))

# the random depth can only overestimate: each direction is one halfplane
# out of all the ones the exact depth minimizes over
dirs = sample_sphere(2, 200, seed=1)
for k in (2, 5, 10, 50, 200):
    rt = random_tukey_depth_all(X, dirs.first(k))
    gap = rt - exact
    print(f"k={k:3d}  mean excess {gap.mean():.4f}  max excess {gap.max():.4f}"
          f"  never below exact: {bool(np.all(gap >= 0))}")

deepest = np.argsort(-exact)[:5]
print("\nfive deepest points (exact, random k=50, Mahalanobis)")
rt50 = random_tukey_depth_all(X, dirs.first(50))
for i in deepest:
    print(f"  {X[i].round(2)}  {exact[i]:.3f}  {rt50[i]:.3f}  {maha[i]:.3f}")

# depth of points that are not in the sample
grid = np.array([[0.0, 0.0], [2.0, 1.0], [6.0, 0.0]])
print("\nout-of-sample depths:", random_tukey_depth_all(X, dirs.first(50), points=grid))
