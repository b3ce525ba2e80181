import numpy as np
import pytest

import mixer


def config(sizes, **overrides):
    c = mixer.PipelineConfig()
    c.embedding_sizes = list(sizes)
    for key, value in overrides.items():
        setattr(c, key, value)
    return c


def test_descriptor_length_and_determinism():
    rng = np.random.default_rng(7)
    image = rng.random((16, 16, 3))
    cfg = config([39, 109])
    assert cfg.descriptor_length() == 600
    first = mixer.describe(image, cfg)
    second = mixer.describe(image, cfg)
    assert first.shape == (600,)
    assert np.all(np.isfinite(first))
    assert np.array_equal(first, second)


def test_grayscale_matches_single_channel_stack():
    rng = np.random.default_rng(11)
    flat = rng.random((12, 12))
    cfg = config([9])
    assert np.array_equal(mixer.describe(flat, cfg), mixer.describe(flat[:, :, None], cfg))


def test_lcg_against_reference():
    for length in (6, 100):
        a, b, c = length + 2, length + 3, length * length
        expected, v = [], length + 1
        for _ in range(length):
            expected.append(v)
            v = (a * v + b) % c
        assert mixer.lcg_sequence(length).tolist() == expected


def test_standardized_tensor_moments():
    values = mixer.standardized_tensor([40, 10])
    assert values.shape == (400,)
    assert abs(values.mean()) < 1e-9
    assert abs(values.std(ddof=1) - 1.0) < 1e-9


def test_patch_matrix_layout():
    channel = np.arange(30, dtype=float).reshape(5, 6)
    patches = mixer.extract_patch_matrix(channel, 3)
    assert patches.shape == (9, 30)
    # the center entry of every patch column is the pixel the patch sits on
    assert np.array_equal(patches[4], channel.ravel())
    padded = mixer.pad_replicate(channel, 3)
    assert padded.shape == (7, 8)
    assert padded[0, 0] == channel[0, 0]


def test_feature_roundtrip(tmp_path):
    table = mixer.FeatureTable()
    table.values = np.array([[1.0, 2.0], [3.0, 4.0], [5.0, 6.0]])
    table.labels = [0, 1, 1]
    table.class_names = ["bark", "fabric"]
    table.config = config([9, 19], gamma_direct=0.5)
    table.dataset_name = "toy"
    path = tmp_path / "toy.mixf"
    mixer.write_features(table, path)
    loaded = mixer.read_features(path)
    assert np.array_equal(loaded.values, table.values)
    assert list(loaded.labels) == [0, 1, 1]
    assert loaded.class_names == ["bark", "fabric"]
    assert loaded.config.gamma_direct == 0.5
    assert loaded.config.embedding_sizes == [9, 19]


def test_corpus_end_to_end(tmp_path):
    root = tmp_path / "corpus"
    mixer.generate_corpus(root, samples_per_class=4, size=16)
    table = mixer.describe_corpus(root, config([9, 19]), jobs=2, dataset_name="synthetic")
    assert table.values.shape == (16, 120)
    assert len(table.class_names) == 4
    accuracy = mixer.loo_accuracy(table.values, table.labels, jobs=2)
    assert 0.0 <= accuracy <= 1.0
    again = mixer.describe_corpus(root, config([9, 19]), jobs=1)
    assert np.array_equal(table.values, again.values)


def test_validation_errors():
    with pytest.raises(ValueError):
        mixer.describe(np.zeros((8, 8)), config([]))
    with pytest.raises(ValueError):
        config([9], patch_side=4).validate()
