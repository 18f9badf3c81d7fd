import numpy as np
import pytest

from tvkit import NormKind, OperatorPath, SampledPath

ALL_NORMS = (NormKind.euclidean, NormKind.supremum, NormKind.l1)


def random_path(rng, n=None, d=1, norm=NormKind.euclidean, scale=1.0):
    """Random sampled path with strictly increasing times on [0, ~n]."""
    if n is None:
        n = int(rng.integers(2, 13))
    times = np.cumsum(rng.uniform(0.1, 1.0, n))
    values = rng.normal(0.0, scale, size=(n, d))
    return SampledPath(times, values, norm)


def random_pair_shared_times(rng, n=None, d=1, norm=NormKind.euclidean):
    """Two paths on one grid, for additive-structure properties."""
    if n is None:
        n = int(rng.integers(2, 13))
    times = np.cumsum(rng.uniform(0.1, 1.0, n))
    f = SampledPath(times, rng.normal(size=(n, d)), norm)
    h = SampledPath(times, rng.normal(size=(n, d)), norm)
    return f, h


def random_step_pair(rng, nf=None, ng=None, d=1, norm=NormKind.euclidean):
    """Operator/vector step pair on [0, 1] with disjoint interior jumps.

    Both paths carry samples at 0 and 1 and hold their last drawn value at
    t = 1, so the shared endpoint is never a jump of either.
    """
    if nf is None:
        nf = int(rng.integers(1, 9))
    if ng is None:
        ng = int(rng.integers(1, 9))
    tf = np.concatenate(([0.0], np.sort(rng.uniform(0.02, 0.98, nf)), [1.0]))
    fv = rng.normal(size=(nf + 1, d, d))
    fv = np.concatenate((fv, fv[-1:]))
    tg = np.concatenate(([0.0], np.sort(rng.uniform(0.02, 0.98, ng)), [1.0]))
    gv = rng.normal(size=(ng + 1, d))
    gv = np.concatenate((gv, gv[-1:]))
    return OperatorPath(tf, fv, norm), SampledPath(tg, gv, norm)


@pytest.fixture
def rng():
    return np.random.default_rng(20240817)
