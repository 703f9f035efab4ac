from .network import (
    BRANCH_WIDTHS,
    HierarchicalClassifier,
    HierarchicalNetSpec,
    parameter_count,
)
from .tasks import (
    DEFAULT_VALIDATION,
    STRATEGY_CLASSES,
    TASKS,
    WEIGHT_CLASSES,
    TaskSpec,
    balance_classes,
    cluster_views,
    filter_for_task,
    labels_of,
    stack_views,
    validation_split,
)
from .training import TrainReport, evaluate, predict_logits, train_classifier
