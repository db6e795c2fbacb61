import numpy as np
import pytest

from lidbounds.attack import (
    AttackModel,
    accuracy,
    attack_direction,
    cross_entropy,
    input_gradient,
    load_directions,
    save_directions,
    train_surrogate,
)
from lidbounds.datasets import Dataset
from lidbounds.errors import FormatError, ZeroGradientError
from lidbounds.knn import knn_member


@pytest.fixture(scope="module")
def blobs():
    rng = np.random.default_rng(0)
    pts = np.concatenate([rng.normal(-3, 0.5, (100, 2)), rng.normal(3, 0.5, (100, 2))])
    return Dataset(pts, np.repeat([0, 1], 100))


@pytest.fixture(scope="module")
def mnist_model(mnist_1000):
    return train_surrogate(mnist_1000, epochs=20, seed=0)


def test_separable_blobs(blobs):
    assert accuracy(train_surrogate(blobs, epochs=10, seed=1), blobs) >= 0.99


def test_mnist_accuracy_floor(mnist_1000, mnist_model):
    assert accuracy(mnist_model, mnist_1000) >= 0.85


def test_deterministic(blobs):
    a = train_surrogate(blobs, epochs=3, seed=5)
    b = train_surrogate(blobs, epochs=3, seed=5)
    assert a.weights.tobytes() == b.weights.tobytes()
    assert a.bias.tobytes() == b.bias.tobytes()


def test_needs_labels():
    with pytest.raises(ValueError):
        train_surrogate(Dataset(np.zeros((4, 2))))


def test_needs_two_classes():
    with pytest.raises(ValueError):
        train_surrogate(Dataset(np.zeros((4, 2)), [1, 1, 1, 1]))


def test_input_gradient_finite_difference(mnist_model, mnist_1000, rng):
    a = mnist_1000.points[3]
    label = int(mnist_1000.labels[3])
    grad = input_gradient(mnist_model, a, label)
    for j in rng.choice(784, 10, replace=False):
        e = np.zeros(784)
        e[j] = 1e-6
        fd = (cross_entropy(mnist_model, a + e, label) - cross_entropy(mnist_model, a - e, label)) / 2e-6
        assert grad[j] == pytest.approx(fd, rel=1e-4, abs=1e-7)


def test_one_dim_sign():
    # binary logistic in softmax form: logit gap w*x with w > 0 favors class 1
    model = AttackModel(np.array([[0.0], [2.0]]), np.zeros(2))
    np.testing.assert_array_equal(attack_direction(model, np.array([0.3]), 0), [1.0])


def test_unit_norm(mnist_model, mnist_1000):
    for i in range(20):
        v = attack_direction(mnist_model, mnist_1000.points[i], int(mnist_1000.labels[i]))
        assert np.linalg.norm(v) == pytest.approx(1.0, abs=1e-12)


def test_direction_increases_loss(mnist_model, mnist_1000):
    data = mnist_1000
    increased = 0
    for i in range(100):
        a, label = data.points[i], int(data.labels[i])
        x = knn_member(data, i, 50).r_max
        step = a + 1e-3 * x * attack_direction(mnist_model, a, label)
        increased += cross_entropy(mnist_model, step, label) > cross_entropy(mnist_model, a, label)
    assert increased >= 95


def test_zero_gradient():
    model = AttackModel(np.zeros((2, 3)), np.zeros(2))
    with pytest.raises(ZeroGradientError):
        attack_direction(model, np.ones(3), 0)


def test_direction_file_round_trip(tmp_path, rng):
    dirs = rng.normal(size=(4, 5))
    dirs /= np.linalg.norm(dirs, axis=1, keepdims=True)
    save_directions(dirs, tmp_path / "dirs.csv")
    np.testing.assert_allclose(load_directions(tmp_path / "dirs.csv", d=5), dirs, rtol=1e-15)


def test_direction_file_rejects_non_unit(tmp_path):
    (tmp_path / "d.csv").write_text("1,1\n")
    with pytest.raises(FormatError):
        load_directions(tmp_path / "d.csv")


def test_direction_file_dimension(tmp_path):
    (tmp_path / "d.csv").write_text("1,0\n")
    with pytest.raises(FormatError):
        load_directions(tmp_path / "d.csv", d=3)
