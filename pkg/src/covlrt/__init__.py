"""Modified likelihood-ratio tests for equality of two high-dimensional covariance matrices."""

import sys as _sys

from .calibration import (
    GAUSSIAN,
    CenteringParams,
    DesignRatios,
    KurtosisPair,
    centering,
    centering_full,
    centering_lite,
    make_ratios,
    psi,
    scalar_l,
    scalar_u,
    scalar_v,
)
from .comparators import ComparatorResult, clx_test, li_chen_test
from .density import limiting_density, quadrature_centering, support
from .estimators import CLXTest, KurtosisEstimator, LiChenTest, ModifiedLRT
from .exceptions import (
    CalibrationError,
    CovLRTError,
    DegenerateSampleError,
    DimensionsAssumptionError,
    OracleError,
    ScenarioFailure,
    SingularLeaveOneOutError,
    SingularPooledError,
    SpectrumIntegrityError,
)
from .io import ObservationMatrix, PriceSeriesTable, ReportDocument, ingest_csv, log_returns
from .kurtosis import KurtosisEstimate, estimate_delta, estimate_delta_lowdim, estimate_pair
from .linalg import CovarianceMatrix, TrimmedSpectrum, beta_spectrum, sample_beta_spectrum, sample_covariance
from .simulation import (
    ScenarioConfig,
    ScenarioReport,
    calibration_surface,
    generate_population,
    null_distribution_sample,
    reproduce_table,
    run_scenario,
)
from .statistics import TestResult, lite_statistic, lrt_statistic, run_test

__version__ = "0.1.0"

__all__ = sorted(name for name, obj in globals().items()
                 if not name.startswith("_") and not isinstance(obj, type(_sys)))
