from .networks import (
    CriticSpec,
    GeneratorSpec,
    build_critic,
    build_generator,
    toy_critic_spec,
    toy_generator_spec,
    validate_wgan_critic,
)
from .conditioning import (
    CONDITION_CLASSES,
    N_CONDITIONS,
    ConditionLabel,
    condition_channels,
    condition_concat,
    onehot_batch,
)
from .losses import (
    gan_objective,
    generator_logloss,
    gradient_penalty,
    interpolate,
    wasserstein_estimate,
    wasserstein_losses,
)
from .training import (
    GanHistory,
    GanTrainSpec,
    generate_sequences,
    sample_generator,
    save_gan,
    train_gan,
)
from .diagnostics import (
    assign_modes,
    first_stationary_epoch,
    mode_collapsed,
    mode_fractions,
    pairwise_distance_stats,
    window_stationary,
)
