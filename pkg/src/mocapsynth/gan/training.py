"""Adversarial training loops.

Two regimes share one entry point. The Wasserstein regime runs a fixed
number of critic updates (default 15, each on a fresh real batch and a
fresh fake batch) per generator update, with the gradient penalty added
to the critic loss. The classic regime alternates single
discriminator/generator steps with one-sided label smoothing. Both are
bit-deterministic under a seed: every random draw comes from a stream
derived with an explicit label, and batch order is a plain shuffled
walk over the data.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field

import numpy as np

from ..errors import ContractError, DataError, LabelError, NumericalError, ShapeError, StateError
from ..nn import Adam, Tensor, concat, no_grad, tmean
from ..nn.checkpoint import save_model
from ..seeding import derive_rng
from .conditioning import N_CONDITIONS, onehot_batch
from .losses import (
    gan_objective,
    generator_logloss,
    gradient_penalty,
    wasserstein_estimate,
    wasserstein_losses,
)
from .networks import (
    CriticSpec,
    GeneratorSpec,
    build_critic,
    build_generator,
    validate_wgan_critic,
)

KINDS = ("dcgan", "wgan_gp", "cond_wgan_gp")

# lr, beta1, beta2
ADAM_DEFAULTS = {
    "dcgan": (2e-4, 0.5, 0.999),
    "wgan_gp": (1e-4, 0.0, 0.9),
    "cond_wgan_gp": (1e-4, 0.0, 0.9),
}


@dataclass(frozen=True)
class GanTrainSpec:
    kind: str = "wgan_gp"
    epochs: int = 10
    batch: int = 64
    critic_steps: int = 15
    gp_lambda: float = 10.0
    real_label: float = 0.9
    lr: float | None = None
    beta1: float | None = None
    beta2: float | None = None
    seed: int = 0

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ContractError(f"unknown training kind {self.kind!r}; expected one of {KINDS}")
        if self.epochs < 1 or self.batch < 1 or self.critic_steps < 1:
            raise ContractError("epochs, batch and critic_steps must be positive")
        if self.gp_lambda < 0:
            raise ContractError("gp_lambda must be nonnegative")
        if not 0.0 < self.real_label <= 1.0:
            raise ContractError("real_label must sit in (0, 1]")

    @property
    def conditional(self) -> bool:
        return self.kind == "cond_wgan_gp"

    @property
    def wasserstein(self) -> bool:
        return self.kind in ("wgan_gp", "cond_wgan_gp")

    def adam_settings(self) -> tuple[float, float, float]:
        lr0, b10, b20 = ADAM_DEFAULTS[self.kind]
        return (
            self.lr if self.lr is not None else lr0,
            self.beta1 if self.beta1 is not None else b10,
            self.beta2 if self.beta2 is not None else b20,
        )

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "epochs": self.epochs,
            "batch": self.batch,
            "critic_steps": self.critic_steps,
            "gp_lambda": self.gp_lambda,
            "real_label": self.real_label,
            "lr": self.lr,
            "beta1": self.beta1,
            "beta2": self.beta2,
            "seed": self.seed,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "GanTrainSpec":
        return cls(**d)


@dataclass
class GanHistory:
    """Per-generator-step loss traces plus update counters."""

    kind: str
    w_estimate: list[float] = field(default_factory=list)
    critic_loss: list[float] = field(default_factory=list)
    penalty: list[float] = field(default_factory=list)
    gen_loss: list[float] = field(default_factory=list)
    d_loss: list[float] = field(default_factory=list)
    critic_counts: list[int] = field(default_factory=list)
    epoch_ends: list[int] = field(default_factory=list)
    critic_updates: int = 0
    gen_updates: int = 0

    @property
    def n_steps(self) -> int:
        return self.gen_updates

    def epoch_means(self, series: str) -> list[float]:
        values = getattr(self, series)
        means, start = [], 0
        for end in self.epoch_ends:
            if end > start:
                means.append(float(np.mean(values[start:end])))
            start = end
        return means

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "w_estimate": self.w_estimate,
            "critic_loss": self.critic_loss,
            "penalty": self.penalty,
            "gen_loss": self.gen_loss,
            "d_loss": self.d_loss,
            "critic_counts": self.critic_counts,
            "epoch_ends": self.epoch_ends,
            "critic_updates": self.critic_updates,
            "gen_updates": self.gen_updates,
        }


def _as_array(data, labels):
    """Accept a raw (n, T, C) array or a list of normalized sequences."""
    if isinstance(data, np.ndarray):
        if data.ndim != 3:
            raise ShapeError(f"training data must be (n, steps, channels), got {data.shape}")
        return data.astype(float), labels
    seqs = list(data)
    if not seqs:
        raise DataError("no training sequences")
    for s in seqs:
        if not s.normalized:
            raise StateError("train on z-scored sequences; fit and apply a normalizer first")
    stacked = np.stack([s.data for s in seqs])
    return stacked, labels


def _check_shapes(spec: GanTrainSpec, data, gen_spec, critic_spec):
    n, t, c = data.shape
    if gen_spec.out_steps != t or gen_spec.out_channels != c:
        raise ShapeError(
            f"generator emits {gen_spec.out_steps}x{gen_spec.out_channels}, data is {t}x{c}"
        )
    if critic_spec.in_steps != t or critic_spec.in_channels != c:
        raise ShapeError(
            f"critic expects {critic_spec.in_steps}x{critic_spec.in_channels}, data is {t}x{c}"
        )
    want_cond = N_CONDITIONS if spec.conditional else 0
    if gen_spec.cond_dim != want_cond or critic_spec.cond_channels != want_cond:
        raise ContractError(
            f"{spec.kind} needs cond_dim={want_cond} and cond_channels={want_cond}"
        )
    if n < spec.batch:
        raise DataError(f"{n} sequences cannot fill one batch of {spec.batch}")


def _finite(value: float, what: str, step: int) -> float:
    if not np.isfinite(value):
        raise NumericalError(f"non-finite {what} at generator step {step}")
    return float(value)


class _Run:
    """Shared state for one training run."""

    def __init__(self, spec, data, labels, gen_spec, critic_spec):
        self.spec = spec
        self.data = data
        self.labels = labels
        self.onehots = None
        if spec.conditional:
            if labels is None:
                raise LabelError("conditional training needs a condition label per sequence")
            labels = np.asarray(labels)
            if labels.shape != (data.shape[0],):
                raise LabelError(f"expected {data.shape[0]} labels, got shape {labels.shape}")
            self.labels = labels
            self.onehots = onehot_batch(labels)

        self.generator = build_generator(gen_spec, seed=spec.seed)
        self.critic = build_critic(critic_spec, seed=spec.seed)
        lr, b1, b2 = spec.adam_settings()
        self.gen_opt = Adam(self.generator.parameters(), lr=lr, beta1=b1, beta2=b2)
        self.critic_opt = Adam(self.critic.parameters(), lr=lr, beta1=b1, beta2=b2)
        self.noise_dim = gen_spec.noise_dim

        self.shuffle_rng = derive_rng(spec.seed, "gan", "shuffle")
        self.noise_rng = derive_rng(spec.seed, "gan", "noise")
        self.gp_rng = derive_rng(spec.seed, "gan", "gp")
        self.label_rng = derive_rng(spec.seed, "gan", "labels")
        self.history = GanHistory(kind=spec.kind)

    def sample_noise(self, n: int) -> np.ndarray:
        return self.noise_rng.standard_normal((n, self.noise_dim))

    def gen_input(self, z: np.ndarray, hot: np.ndarray | None) -> np.ndarray:
        if hot is None:
            return z
        return np.concatenate([z, hot], axis=1)

    def critic_score(self, x: Tensor, hot: np.ndarray | None) -> Tensor:
        if hot is not None:
            block = np.broadcast_to(hot[:, None, :], (x.shape[0], x.shape[1], hot.shape[1]))
            x = concat([x, Tensor(np.ascontiguousarray(block))], axis=2)
        return self.critic(x, training=True)

    def generate(self, n: int, hot: np.ndarray | None, with_grad: bool) -> Tensor:
        z = Tensor(self.gen_input(self.sample_noise(n), hot))
        if with_grad:
            return self.generator(z, training=True)
        with no_grad():
            return self.generator(z, training=True)

    def batches(self):
        """Disjoint shuffled full batches; the remainder is dropped."""
        perm = self.shuffle_rng.permutation(self.data.shape[0])
        b = self.spec.batch
        for start in range(0, len(perm) - b + 1, b):
            yield perm[start : start + b]


def _critic_update(run: _Run, idx: np.ndarray, step: int) -> tuple[float, float, float]:
    spec = run.spec
    real = run.data[idx]
    hot = run.onehots[idx] if run.onehots is not None else None
    fake = run.generate(len(idx), hot, with_grad=False).data

    run.critic_opt.zero_grad()
    c_real = run.critic_score(Tensor(real), hot)
    c_fake = run.critic_score(Tensor(fake), hot)
    core, _ = wasserstein_losses(c_real, c_fake)
    if spec.gp_lambda > 0.0:
        penalty = gradient_penalty(
            lambda x: run.critic_score(x, hot), real, fake, run.gp_rng
        )
        loss = core + penalty * spec.gp_lambda
        pen_value = float(penalty.data)
    else:
        loss = core
        pen_value = 0.0
    # check before backward so a diverged run names its step
    loss_value = _finite(float(loss.data), "critic loss", step)
    pen_value = _finite(pen_value, "gradient penalty", step)
    estimate = _finite(wasserstein_estimate(c_real.data, c_fake.data), "distance estimate", step)
    loss.backward()
    run.critic_opt.step()
    run.history.critic_updates += 1
    return loss_value, pen_value, estimate


def _generator_update(run: _Run, step: int) -> float:
    spec = run.spec
    hot = None
    if run.onehots is not None:
        picks = run.label_rng.integers(0, run.data.shape[0], size=spec.batch)
        hot = run.onehots[picks]
    fake = run.generate(spec.batch, hot, with_grad=True)
    c_fake = run.critic_score(fake, hot)
    gen_loss = -tmean(c_fake.reshape((c_fake.shape[0],)))
    value = _finite(float(gen_loss.data), "generator loss", step)
    run.gen_opt.zero_grad()
    run.critic_opt.zero_grad()
    gen_loss.backward()
    run.gen_opt.step()
    run.history.gen_updates += 1
    return value


def _train_wasserstein(run: _Run):
    spec = run.spec
    for _epoch in range(spec.epochs):
        group: list[np.ndarray] = []
        for idx in run.batches():
            group.append(idx)
            if len(group) < spec.critic_steps:
                continue
            step = run.history.gen_updates
            last = (0.0, 0.0, 0.0)
            for bidx in group:
                last = _critic_update(run, bidx, step)
            gen_loss = _generator_update(run, step)
            h = run.history
            h.critic_loss.append(last[0])
            h.penalty.append(last[1])
            h.w_estimate.append(last[2])
            h.gen_loss.append(gen_loss)
            h.critic_counts.append(len(group))
            group = []
        run.history.epoch_ends.append(run.history.gen_updates)


def _train_dcgan(run: _Run):
    spec = run.spec
    for _epoch in range(spec.epochs):
        for idx in run.batches():
            step = run.history.gen_updates
            real = run.data[idx]
            fake = run.generate(len(idx), None, with_grad=False).data

            run.critic_opt.zero_grad()
            d_real = run.critic(Tensor(real), training=True)
            d_fake = run.critic(Tensor(fake), training=True)
            d_loss, _ = gan_objective(d_real, d_fake, real_label=spec.real_label)
            d_value = _finite(float(d_loss.data), "discriminator loss", step)
            d_loss.backward()
            run.critic_opt.step()

            fake2 = run.generate(len(idx), None, with_grad=True)
            g_loss = generator_logloss(run.critic(fake2, training=True))
            g_value = _finite(float(g_loss.data), "generator loss", step)
            run.gen_opt.zero_grad()
            run.critic_opt.zero_grad()
            g_loss.backward()
            run.gen_opt.step()

            h = run.history
            h.d_loss.append(d_value)
            h.gen_loss.append(g_value)
            h.critic_counts.append(1)
            h.critic_updates += 1
            h.gen_updates += 1
        run.history.epoch_ends.append(run.history.gen_updates)


def train_gan(
    spec: GanTrainSpec,
    data,
    labels=None,
    gen_spec: GeneratorSpec | None = None,
    critic_spec: CriticSpec | None = None,
    checkpoint_dir=None,
):
    """Train a generator/critic pair; returns (generator, critic, history).

    data is either a (n, steps, channels) array or a list of normalized
    MotionSequence. labels (condition indices, 0..5) are required for
    the conditional kind and ignored otherwise.
    """
    data, labels = _as_array(data, labels)
    cond = N_CONDITIONS if spec.conditional else 0
    if gen_spec is None:
        gen_spec = GeneratorSpec(cond_dim=cond)
    if critic_spec is None:
        head = "sigmoid" if spec.kind == "dcgan" else "linear"
        critic_spec = CriticSpec(cond_channels=cond, head=head)
    _check_shapes(spec, data, gen_spec, critic_spec)
    if spec.wasserstein:
        validate_wgan_critic(critic_spec)
    elif critic_spec.head != "sigmoid":
        raise ContractError("dcgan needs a sigmoid discriminator head")

    run = _Run(spec, data, labels, gen_spec, critic_spec)
    if spec.wasserstein:
        _train_wasserstein(run)
    else:
        _train_dcgan(run)

    if checkpoint_dir is not None:
        save_gan(checkpoint_dir, run.generator, run.critic, gen_spec, critic_spec, spec)
    return run.generator, run.critic, run.history


def save_gan(directory, generator, critic, gen_spec, critic_spec, train_spec, extra=None):
    """Write generator.model and critic.model checkpoints (atomic)."""
    os.makedirs(directory, exist_ok=True)
    meta = {"train": train_spec.to_dict()}
    if extra:
        meta.update(extra)
    gpath = os.path.join(directory, "generator.model")
    cpath = os.path.join(directory, "critic.model")
    save_model(gpath, generator, {**meta, "role": "generator", "spec": gen_spec.to_dict()})
    save_model(cpath, critic, {**meta, "role": "critic", "spec": critic_spec.to_dict()})
    return gpath, cpath


def sample_generator(
    generator,
    gen_spec: GeneratorSpec,
    n: int,
    seed: int = 0,
    condition: int | None = None,
) -> np.ndarray:
    """Draw n sequences from a trained generator (normalized space)."""
    rng = derive_rng(seed, "sample")
    z = rng.standard_normal((n, gen_spec.noise_dim))
    if gen_spec.cond_dim:
        if condition is None:
            raise LabelError("conditional generator needs a condition index")
        hot = onehot_batch(np.full(n, condition, dtype=int))
        z = np.concatenate([z, hot], axis=1)
    elif condition is not None:
        raise ContractError("unconditional generator cannot honor a condition")
    with no_grad():
        out = generator(Tensor(z), training=False)
    return out.data.copy()


def generate_sequences(
    generator,
    gen_spec: GeneratorSpec,
    stats,
    n: int,
    seed: int = 0,
    condition: int | None = None,
) -> list:
    """Sample and denormalize: n world-space 32x48 motion sequences."""
    from ..dataset.preprocess import MotionSequence, invert_zscore

    raw = sample_generator(generator, gen_spec, n, seed=seed, condition=condition)
    out = []
    for i in range(n):
        seq = MotionSequence(raw[i], normalized=True, name=f"generated{i:04d}")
        out.append(invert_zscore(seq, stats))
    return out
