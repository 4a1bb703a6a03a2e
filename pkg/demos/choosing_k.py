"""How many random directions are enough?

For a sample from an elliptical law the Mahalanobis depth orders points
the same way as the Tukey depth. The Spearman correlation between the
random Tukey depth with k directions and the Mahalanobis depth therefore
rises with k until the random depth starts to resolve features that the
elliptical fit cannot see. The first k where the curve drops is taken as
the working number of directions.
"""
import numpy as np

from rtdepth import estimate_k0, fit_elliptical, resemblance_curve, run_calibration

rng = np.random.default_rng(3)
X = rng.standard_normal((250, 4))
curve = resemblance_curve(X, fit_elliptical(X), kmax=30, seed=11)
print("resemblance r_k for k = 1..30:")
print(np.round(curve.r, 3))
k0 = estimate_k0(curve.r)
print(f"first decrease at k = {k0.k} (truncated: {k0.truncated})")

# the Monte Carlo summary over many samples, as the calibrate-k command runs it
for dist, p, n in [("gaussian", 2, 100), ("gaussian", 4, 250), ("cauchy", 2, 100)]:
    s = run_calibration(dist, p, n, replications=300, seed=5)
    print(f"{dist:8s} p={p} n={n}: mean k0 {s.mean_k0:.2f}, 95th percentile {s.pct95_k0}")

# cells with n <= p have a singular covariance and are reported as degenerate
print("p=25, n=25 degenerate:", run_calibration("gaussian", 25, 25, 10).degenerate)
