from .trials import (
    BALANCES,
    BOWL_SIZES,
    FRAME_RATE_HZ,
    ORIENTATIONS,
    STRATEGIES,
    WEIGHT_NAMES,
    WEIGHTS_G,
    LoadResult,
    Trial,
    TrialMeta,
    load_trial,
    load_trials,
    read_sequence_csv,
    save_trial,
    write_sequence_csv,
)
from .preprocess import (
    CENTER_STRIDE,
    DEFAULT_HOLD_FRAMES,
    DEFAULT_SPEED_THRESHOLD,
    SEQUENCE_LENGTH,
    ClusterView,
    MotionSequence,
    NormStats,
    apply_zscore,
    bowl_speeds,
    centered_indices,
    cluster_columns,
    cluster_split,
    fit_normalizer,
    invert_zscore,
    resample_centered,
    resample_uniform,
    trim_to_motion,
    uniform_indices,
)
from .archive import load_sequences, save_sequences
