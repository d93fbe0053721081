import numpy as np
import pytest

from edchrom.reconstruct import minmod, weno5_left, weno5_right


class TestWeno5Left:
    def test_constant(self):
        assert weno5_left([1.0, 1.0, 1.0, 1.0, 1.0]) == pytest.approx(1.0, abs=1e-15)

    def test_linear_exact(self):
        # cell averages of f(x)=x on unit cells centered at -2..2; face value 0.5
        assert weno5_left([-2.0, -1.0, 0.0, 1.0, 2.0]) == pytest.approx(0.5, rel=1e-14)

    def test_smooth_convergence_order(self):
        # cell averages of sin on refining grids; face error should be O(h^5)
        errs = []
        for m in (16, 32, 64):
            h = 1.0 / m
            edges = np.arange(-3, 4) * h
            averages = np.diff(-np.cos(edges)) / h  # exact means over the 6 cells
            val = weno5_left(averages[1:6])  # center cell [0, h], face at h
            errs.append(abs(val - np.sin(edges[4])))
        order1 = np.log2(errs[0] / errs[1])
        order2 = np.log2(errs[1] / errs[2])
        assert order1 >= 4.8
        assert order2 >= 4.8

    def test_scale_equivariance(self, rng):
        for _ in range(1000):
            x = rng.normal(0.0, 1.0, 5)
            k = rng.choice([-5.0, -1.0, 0.5, 3.0, 1e4, 1e-4])
            assert weno5_left(k * x) == pytest.approx(k * weno5_left(x), rel=1e-13, abs=1e-300)

    def test_shift_equivariance(self, rng):
        for _ in range(200):
            x = rng.normal(0.0, 1.0, 5)
            c = rng.uniform(-10.0, 10.0)
            assert weno5_left(x + c) == pytest.approx(weno5_left(x) + c, rel=1e-12, abs=1e-12)


class TestWeno5Right:
    def test_constant(self):
        assert weno5_right([2.0] * 5) == pytest.approx(2.0, abs=1e-15)

    def test_mirror_identity(self, rng):
        for _ in range(100):
            x = rng.normal(0.0, 2.0, 5)
            assert weno5_right(x) == weno5_left(x[::-1])

    def test_linear_exact(self):
        assert weno5_right([2.0, 1.0, 0.0, -1.0, -2.0]) == pytest.approx(0.5, rel=1e-14)


class TestMinmod:
    @pytest.mark.parametrize("a,b,expected", [
        (1.0, 2.0, 1.0),
        (-1.0, 2.0, 0.0),
        (-3.0, -2.0, -2.0),
        (0.0, 5.0, 0.0),
        (2.0, 2.0, 2.0),
    ])
    def test_values(self, a, b, expected):
        assert minmod(a, b) == expected

    def test_vectorized(self):
        a = np.array([1.0, -1.0, -3.0])
        b = np.array([2.0, 2.0, -2.0])
        assert minmod(a, b) == pytest.approx([1.0, 0.0, -2.0])
