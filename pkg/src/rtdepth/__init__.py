"""Random Tukey depth: halfspace depth over a few random projections.

The random Tukey depth of a point is the smallest univariate halfspace
depth of its projections on ``k`` random directions. The package also
provides a Monte Carlo procedure for choosing ``k``, depth-rank tests for
equal scale, and depth-based classification of curves.
"""

__version__ = "0.1.0"

from .directions import DirectionSet, make_rng, sample_half_sphere, sample_sphere
from .depth import (
    DegenerateDispersionError,
    d1,
    exact_tukey_depth_2d,
    mahalanobis_depth,
    project,
    random_tukey_depth,
    random_tukey_depth_all,
)
from .estimators import (
    EllipticalFit,
    coordinate_median,
    determinant,
    fit_elliptical,
    robust_scatter,
    sample_covariance,
    sample_mean,
)
from .calibration import (
    estimate_k0,
    resemblance_curve,
    run_calibration,
    run_covariance_determinant_study,
    spearman_rho,
)
from .homogeneity import (
    ScaleScenario,
    center_sample,
    kruskal_wallis_scale_test,
    rank_with_ties,
    run_scale_power_study,
    wilcoxon_scale_test,
)
from .functional import (
    ClassifierSpec,
    Curve,
    CurveSample,
    classify,
    functional_direction,
    functional_random_tukey,
    l2_inner,
    loocv_error,
    trimmed_mean,
)
