"""Shared test helpers: random corpora, independent oracles, reorientation."""

from __future__ import annotations

import math
import random

import pytest

from properk import CoxeterMatrix, IntMatrix, OrbitComplex
from properk.coxeter import INFINITY, build_davis_orbit_complex


def random_int_matrix(rng: random.Random, max_dim: int = 6, bound: int = 5) -> IntMatrix:
    rows = rng.randint(0, max_dim)
    cols = rng.randint(0, max_dim)
    return IntMatrix.from_rows(
        [[rng.randint(-bound, bound) for _ in range(cols)] for _ in range(rows)], cols=cols)


def random_right_angled(rng: random.Random, size: int, p_commute: float = 0.4) -> CoxeterMatrix:
    rows = [[INFINITY] * size for _ in range(size)]
    for i in range(size):
        rows[i][i] = 1
        for j in range(i + 1, size):
            label = 2 if rng.random() < p_commute else INFINITY
            rows[i][j] = rows[j][i] = label
    return CoxeterMatrix.from_rows(rows)


def right_angled_corpus(count: int = 50, seed: int = 20240601) -> list[CoxeterMatrix]:
    """Deterministic corpus of right-angled matrices on <= 6 generators.

    Matrices whose Davis model would be disproportionately large are
    resampled, to keep the exact-arithmetic suite at desk scale.
    """
    rng = random.Random(seed)
    out: list[CoxeterMatrix] = []
    while len(out) < count:
        size = rng.randint(2, 6)
        matrix = random_right_angled(rng, size)
        davis = build_davis_orbit_complex(matrix)
        if sum(davis.counts()) > 900:
            continue
        out.append(matrix)
    return out


@pytest.fixture(scope="session")
def ra_corpus() -> list[CoxeterMatrix]:
    return right_angled_corpus()


def reorient(complex_: OrbitComplex, rng: random.Random) -> OrbitComplex:
    """Flip the orientation of a random set of cells.

    Reorienting a cell negates both its boundary column and its row in the
    next boundary matrix, so the result is again a valid quotient CW
    structure with the same cohomology.
    """
    signs = [[rng.choice((1, -1)) for _ in layer] for layer in complex_.cells]
    new_incidence = []
    for p, matrix in enumerate(complex_.incidence):
        rows = matrix.to_rows()
        for j in range(matrix.rows):
            for k in range(matrix.cols):
                rows[j][k] *= signs[p][j] * signs[p + 1][k]
        new_incidence.append(IntMatrix.from_rows(rows, cols=matrix.cols))
    return OrbitComplex(complex_.cells, tuple(new_incidence), complex_.descriptors)


def gram_positive_definite(matrix: CoxeterMatrix, subset: tuple[int, ...]) -> bool:
    """Floating-point finiteness oracle: W_J is finite iff the cosine Gram
    matrix (1 on the diagonal, -cos(pi/m_ij) off it) is positive definite.

    Infinite labels give -cos(pi/oo) = -1.  Checked through leading
    principal minors with a 1e-9 tolerance; only trustworthy for the small
    labels used in tests.
    """
    n = len(subset)
    if n == 0:
        return True
    g = [[0.0] * n for _ in range(n)]
    for a in range(n):
        for b in range(n):
            if a == b:
                g[a][b] = 1.0
            else:
                m = matrix.m(subset[a], subset[b])
                g[a][b] = -1.0 if m == INFINITY else -math.cos(math.pi / m)
    # Leading principal minors by Gaussian elimination.
    work = [row[:] for row in g]
    for k in range(n):
        if work[k][k] <= 1e-9:
            return False
        for i in range(k + 1, n):
            f = work[i][k] / work[k][k]
            for j in range(k, n):
                work[i][j] -= f * work[k][j]
    return True


def cw_homology(boundaries: list[IntMatrix], counts: list[int]):
    """Integral cellular homology of a finite CW complex.

    ``boundaries[p]`` maps (p+1)-chains to p-chains.  Returns a list of
    (rank, torsion tuple) per degree; an independent route used to check
    contractibility proxies.
    """
    from properk.abelian import AbGroup, invariant_factors

    out = []
    for p in range(len(counts)):
        d_in = boundaries[p] if p < len(boundaries) else IntMatrix.zero(counts[p], 0)
        d_out = boundaries[p - 1] if p >= 1 else IntMatrix.zero(0, counts[p])
        factors_in = invariant_factors(d_in)
        rank_out = len(invariant_factors(d_out))
        rank = counts[p] - rank_out - len(factors_in)
        out.append(AbGroup.from_divisors(rank, [d for d in factors_in if d > 1]))
    return out
