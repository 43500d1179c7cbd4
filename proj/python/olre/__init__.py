"""Online kernel likelihood-ratio estimation.

Streaming estimator driven by functional stochastic gradient descent on the
Pearson objective, an offline RULSIF baseline with cross-validation, analytic
synthetic benchmarks, and trial/aggregation helpers. The heavy lifting lives
in the compiled extension ``olre._core``.
"""

from ._core import (
    AggregateReport,
    CvCell,
    CvPlan,
    CvResult,
    Dictionary,
    KernelSpec,
    MethodConfig,
    MethodKind,
    NumericalError,
    ObservationPair,
    OlreConfig,
    OnlineEstimator,
    Rng,
    RulsifModel,
    Scenario,
    ScenarioSpec,
    Schedule,
    TestSet,
    TrialReport,
    WeightedExpansion,
    aggregate,
    build_h_matrices,
    cross_validate,
    density_p,
    density_q,
    estimate_pe_divergence,
    fit,
    gram,
    gram_cross,
    instantaneous_loss,
    instantaneous_loss_gradient,
    kernel_eval,
    l2_error,
    make_test_set,
    pe_score,
    random_dictionary,
    run_stream,
    run_trial,
    sample_pair,
    scenario_spec,
    schedule,
    t0_theory_bound,
    true_ratio,
)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
