"""End-to-end exercises of the command line front end.

Shared module-scoped fixtures run each pipeline stage once; individual
tests assert on exit codes, artifact contents, and the resolved-config
snapshots.
"""

import json
from pathlib import Path

import numpy as np
import pytest

from mocapsynth.cli import main
from mocapsynth.dataset import load_sequences, read_sequence_csv, write_sequence_csv
from mocapsynth.dataset.synthetic import make_trial
from mocapsynth.dataset.trials import TrialMeta, save_trial
from mocapsynth.seeding import derive_rng

WEIGHTS = (640, 1140, 1640)


@pytest.fixture(scope="module")
def corpus_dir(tmp_path_factory):
    directory = tmp_path_factory.mktemp("corpus")
    for i in range(12):
        meta = TrialMeta(
            participant=f"p{i % 3:02d}",
            bowl_size="medium",
            weight_g=WEIGHTS[i % 3],
            balance=("balanced", "unbalanced")[i % 2],
            orientation="facing",
            strategy="ABC"[i % 3],
            frame_rate=119.88,
        )
        save_trial(directory, make_trial(f"t{i:03d}", meta, derive_rng(99, "cli", i), carry=120))
    return directory


@pytest.fixture(scope="module")
def archive(corpus_dir, tmp_path_factory):
    out = tmp_path_factory.mktemp("ingest")
    assert main(["ingest", "--input", str(corpus_dir), "--out", str(out), "--seed", "1"]) == 0
    return out / "sequences.bin"


@pytest.fixture(scope="module")
def augmented(archive, tmp_path_factory):
    out = tmp_path_factory.mktemp("augment")
    rc = main(["augment", "--input", str(archive), "--out", str(out), "--factor", "3", "--seed", "1"])
    assert rc == 0
    return out / "sequences.bin"


@pytest.fixture(scope="module")
def gan_dir(augmented, tmp_path_factory):
    out = tmp_path_factory.mktemp("gan")
    rc = main([
        "train-gan", "--input", str(augmented), "--out", str(out),
        "--kind", "wgan-gp", "--epochs", "1", "--batch", "4",
        "--critic-steps", "2", "--seed", "5",
    ])
    assert rc == 0
    return out


@pytest.fixture(scope="module")
def cond_gan_dir(augmented, tmp_path_factory):
    out = tmp_path_factory.mktemp("cgan")
    rc = main([
        "train-gan", "--input", str(augmented), "--out", str(out),
        "--kind", "cond-wgan-gp", "--epochs", "1", "--batch", "4",
        "--critic-steps", "2", "--seed", "5",
    ])
    assert rc == 0
    return out


def test_no_arguments_is_usage_error(capsys):
    assert main([]) == 2
    assert "usage" in capsys.readouterr().err


def test_unknown_subcommand_is_usage_error(capsys):
    assert main(["frobnicate"]) == 2
    capsys.readouterr()


def test_missing_required_flag_is_usage_error(capsys):
    assert main(["ingest"]) == 2
    assert "--input is required" in capsys.readouterr().err


def test_nonexistent_input_is_runtime_error(tmp_path, capsys):
    rc = main(["ingest", "--input", str(tmp_path / "nope"), "--out", str(tmp_path / "o")])
    assert rc == 1
    capsys.readouterr()


def test_ingest_writes_archive_and_snapshot(archive):
    sequences, stats, extra = load_sequences(archive)
    assert len(sequences) == 12
    assert all(s.data.shape == (32, 48) for s in sequences)
    assert all(not s.normalized for s in sequences)
    assert stats is None
    assert extra["skipped_missing_c7"] == 0
    snapshot = json.loads((archive.parent / "resolved-config.json").read_text())
    assert snapshot["subcommand"] == "ingest"
    assert snapshot["seed"] == 1
    assert snapshot["resample"] == "centered"


def test_stats_table_matches_corpus(corpus_dir, capsys):
    assert main(["stats", "--input", str(corpus_dir)]) == 0
    out = capsys.readouterr().out
    assert "records: 12" in out
    for name in ("heavy", "heavier", "heaviest"):
        assert f"{name}: 4" in out
    assert "balanced: 6" in out
    assert "participants: 3" in out


def test_stats_json_on_archive(archive, tmp_path, capsys):
    assert main(["stats", "--input", str(archive), "--out", str(tmp_path)]) == 0
    capsys.readouterr()
    doc = json.loads((tmp_path / "stats.json").read_text())
    assert doc["records"] == 12
    assert doc["weight"] == {"heavy": 4, "heavier": 4, "heaviest": 4}
    assert doc["strategy"] == {"A": 4, "B": 4, "C": 4}


def test_augment_expands_and_keeps_labels(augmented):
    sequences, _, extra = load_sequences(augmented)
    assert len(sequences) == 36
    assert all(s.meta is not None for s in sequences)
    assert "augment" in extra


def test_config_file_precedence(archive, tmp_path, capsys):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"factor": 5}))

    out_a = tmp_path / "a"
    rc = main(["augment", "--input", str(archive), "--out", str(out_a), "--config", str(cfg)])
    assert rc == 0
    assert len(load_sequences(out_a / "sequences.bin")[0]) == 60

    # explicit flag wins over the config file
    out_b = tmp_path / "b"
    rc = main(["augment", "--input", str(archive), "--out", str(out_b),
               "--config", str(cfg), "--factor", "2"])
    assert rc == 0
    assert len(load_sequences(out_b / "sequences.bin")[0]) == 24
    snapshot = json.loads((out_b / "resolved-config.json").read_text())
    assert snapshot["factor"] == 2
    capsys.readouterr()


def test_config_file_errors(archive, tmp_path, capsys):
    missing = tmp_path / "missing.json"
    rc = main(["augment", "--input", str(archive), "--out", str(tmp_path / "x"),
               "--config", str(missing)])
    assert rc == 2

    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    rc = main(["augment", "--input", str(archive), "--out", str(tmp_path / "y"),
               "--config", str(bad)])
    assert rc == 2

    unknown = tmp_path / "unknown.json"
    unknown.write_text(json.dumps({"fctor": 5}))
    rc = main(["augment", "--input", str(archive), "--out", str(tmp_path / "z"),
               "--config", str(unknown)])
    assert rc == 2
    assert "fctor" in capsys.readouterr().err


def test_train_and_eval_classifier(archive, tmp_path, capsys):
    clf = tmp_path / "clf"
    rc = main([
        "train-classifier", "--input", str(archive), "--out", str(clf),
        "--task", "weight", "--epochs", "3", "--batch", "4",
        "--val-size", "2", "--augment-factor", "3", "--seed", "2",
    ])
    assert rc == 0
    for name in ("classifier.model", "norm-stats.bin", "report.json", "curves.csv"):
        assert (clf / name).exists()
    report = json.loads((clf / "report.json").read_text())
    assert len(report["train_loss"]) == 3
    assert report["n_parameters"] > 0
    lines = (clf / "curves.csv").read_text().splitlines()
    assert lines[0] == "epoch,train_loss,train_acc,val_loss,val_acc"
    assert len(lines) == 4

    ev = tmp_path / "ev"
    rc = main(["eval-classifier", "--input", str(archive),
               "--model", str(clf / "classifier.model"), "--out", str(ev)])
    assert rc == 0
    doc = json.loads((ev / "eval.json").read_text())
    assert doc["task"] == "weight"
    assert 0.0 <= doc["accuracy"] <= 1.0
    confusion = np.array(doc["confusion"])
    assert confusion.shape == (2, 2)
    assert confusion.sum() == 8  # four heavy + four heaviest in the corpus
    capsys.readouterr()


def test_train_gan_artifacts(gan_dir):
    for name in ("generator.model", "critic.model", "norm-stats.bin", "history.json"):
        assert (gan_dir / name).exists()
    history = json.loads((gan_dir / "history.json").read_text())
    assert history["gen_updates"] == 4
    assert history["critic_updates"] == 8
    assert all(np.isfinite(history["w_estimate"]))


def test_generate_writes_sequences(gan_dir, tmp_path, capsys):
    out = tmp_path / "gen"
    rc = main(["generate", "--model", str(gan_dir / "generator.model"),
               "--out", str(out), "--count", "2", "--render", "--seed", "7"])
    assert rc == 0
    capsys.readouterr()
    for i in range(2):
        csv = out / f"generated{i:04d}.csv"
        assert csv.exists()
        coords = read_sequence_csv(csv)
        assert coords.shape == (32, 48)
        assert np.isfinite(coords).all()
        assert (out / f"generated{i:04d}.jsonl").exists()


def test_generate_is_seed_deterministic(gan_dir, tmp_path, capsys):
    outs = []
    for run in ("r1", "r2"):
        out = tmp_path / run
        rc = main(["generate", "--model", str(gan_dir / "generator.model"),
                   "--out", str(out), "--count", "1", "--seed", "7"])
        assert rc == 0
        outs.append((out / "generated0000.csv").read_bytes())
    assert outs[0] == outs[1]

    other = tmp_path / "r3"
    rc = main(["generate", "--model", str(gan_dir / "generator.model"),
               "--out", str(other), "--count", "1", "--seed", "8"])
    assert rc == 0
    assert (other / "generated0000.csv").read_bytes() != outs[0]
    capsys.readouterr()


def test_conditional_generate_label_flow(cond_gan_dir, gan_dir, tmp_path, capsys):
    model = str(cond_gan_dir / "generator.model")
    out = tmp_path / "ok"
    rc = main(["generate", "--model", model, "--out", str(out), "--count", "1",
               "--label", "weight=heaviest,balance=unbalanced", "--seed", "3"])
    assert rc == 0
    assert (out / "generated0000.csv").exists()

    # conditional generator without a label is a data error, not a crash
    rc = main(["generate", "--model", model, "--out", str(tmp_path / "a"), "--count", "1"])
    assert rc == 1

    # labels on an unconditional generator are refused
    rc = main(["generate", "--model", str(gan_dir / "generator.model"),
               "--out", str(tmp_path / "b"), "--count", "1",
               "--label", "weight=heavy,balance=balanced"])
    assert rc == 1

    rc = main(["generate", "--model", model, "--out", str(tmp_path / "c"),
               "--count", "1", "--label", "heaviest"])
    assert rc == 2
    capsys.readouterr()


def test_render_archive_jsonl(archive, tmp_path, capsys):
    out = tmp_path / "rend"
    rc = main(["render", "--input", str(archive), "--out", str(out), "--format", "jsonl"])
    assert rc == 0
    files = sorted(p.name for p in out.glob("*.jsonl"))
    assert len(files) == 12
    assert files[0] == "t000.jsonl"
    capsys.readouterr()


def test_render_bare_csv_svg(archive, tmp_path, capsys):
    sequences, _, _ = load_sequences(archive)
    csv = tmp_path / "solo.csv"
    write_sequence_csv(sequences[0].data, csv)
    out = tmp_path / "svg"
    rc = main(["render", "--input", str(csv), "--out", str(out), "--format", "svg_ortho"])
    assert rc == 0
    capsys.readouterr()
    frames = sorted((out / "solo").glob("frame_*.svg"))
    assert len(frames) == 32
    assert frames[0].name == "frame_000.svg"
    text = frames[0].read_text()
    assert text.startswith("<?xml")
