"""Adaptive symbolic aggregation of time series.

Pipeline: z-normalize, compress to a (length, increment) tuple chain under a
pointwise tolerance, cluster the tuples into a short frequency-ordered
alphabet, and reconstruct with the error pinned to zero at both ends. SAX and
1d-SAX baselines, four distance measures, a substring-frequency anomaly
scorer, and a comparison harness with performance profiles are included.
"""

from .baselines import (
    OneDSaxConfig,
    SaxConfig,
    gaussian_breakpoints,
    onedsax_reconstruct,
    onedsax_symbolize,
    sax_reconstruct,
    sax_symbolize,
)
from .compression import (
    CompressionConfig,
    Piece,
    PieceSequence,
    chain_points,
    compress,
    compression_error_bound,
    evaluate_chain,
)
from .digitization import (
    ClusterModel,
    DigitizationConfig,
    SymbolicSeries,
    cluster_1d,
    cluster_2d,
    compute_tol_s,
    digitize,
    digitize_joint,
    from_sidecar,
    optimal_1d_partition,
    read_sidecar,
    scale_tuples,
    to_sidecar,
    write_sidecar,
)
from .distances import DISTANCE_KINDS, distance, dtw, euclid
from .harness import (
    ErrorMatrix,
    Excluded,
    ExperimentConfig,
    IngestError,
    ProfileCurve,
    ingest,
    performance_profiles,
    profile_from_entries,
    run_comparison,
    select_tolerance,
)
from .preprocessing import Normalized, denormalize, difference, normalize
from .reconstruction import (
    QuantizedPieces,
    bridge_errors,
    inverse_compress,
    inverse_digitize,
    quantize_lengths,
    quantize_pieces,
    reconstruct,
)
from .tarzan import AnomalyScoreSeries, FrequencyIndex, adapted_score, expected_frequency, tarzan_scores

__version__ = "0.1.0"
