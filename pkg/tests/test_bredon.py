import random

from properk.abelian import AbGroup, cohomology, tensor_mod2, uct_verify
from properk.bredon import CoefficientFunctor, assemble_cochain, bredon_cohomology
from properk.coxeter import (
    CoxeterMatrix,
    build_bestvina_orbit_complex,
    build_davis_orbit_complex,
)
from properk.orbit import AmalgamSpec, build_amalgam_orbit_complex
from conftest import reorient


def test_sl2z_k0_cochain_literal():
    # R(Z6) + R(Z4) -> R(Z2), blocks phi_{3,2} and -phi_{2,2}
    x = build_amalgam_orbit_complex(AmalgamSpec(r=(2,), m=(3, 2)))
    c = assemble_cochain(x, CoefficientFunctor.k(0))
    assert c.free_ranks == (10, 2)
    assert c.free_d[0].to_rows() == [
        [1, 0, 1, 0, 1, 0, -1, 0, -1, 0],
        [0, 1, 0, 1, 0, 1, 0, -1, 0, -1],
    ]


def test_path_family_k0_cochain_blocks():
    # (Z^3)^n -> (Z^2)^{n-1} sending (x_1..x_n) to (f(x_2)-f(x_1), ...)
    # with f(a, b, c) = (a+c, b+c).
    n = 3
    x = build_bestvina_orbit_complex(CoxeterMatrix.path_family(n))
    c = assemble_cochain(x, CoefficientFunctor.k(0))
    assert c.free_ranks == (3 * n, 2 * (n - 1))
    f = [[1, 0, 1], [0, 1, 1]]
    zero = [[0, 0, 0], [0, 0, 0]]

    def hcat(*blocks):
        return [sum((b[r] for b in blocks), []) for r in range(2)]

    expected = hcat([[-v for v in row] for row in f], f, zero) + hcat(zero, [[-v for v in row] for row in f], f)
    assert c.free_d[0].to_rows() == expected


def test_k1_is_the_zero_functor():
    x = build_amalgam_orbit_complex(AmalgamSpec(r=(2,), m=(3, 2)))
    c = assemble_cochain(x, CoefficientFunctor.k(1))
    assert c.free_ranks == (0, 0)
    assert c.tor2_ranks == (0, 0)
    assert bredon_cohomology(x, CoefficientFunctor.k(1)) == (AbGroup.zero(), AbGroup.zero())


def test_sl2z_bredon_cohomology():
    x = build_amalgam_orbit_complex(AmalgamSpec(r=(2,), m=(3, 2)))
    assert bredon_cohomology(x, CoefficientFunctor.k(0)) == (AbGroup.free(8), AbGroup.zero())


def test_polygon_bredon_cohomology():
    n = 5
    x = build_bestvina_orbit_complex(CoxeterMatrix.polygon_family(n))
    h = bredon_cohomology(x, CoefficientFunctor.k(0))
    assert h == (AbGroup.free(n + 3), AbGroup.free(1), AbGroup.zero())


def test_pentagon_bredon_cohomology():
    rows = [[0] * 5 for _ in range(5)]
    for i in range(5):
        rows[i][i] = 1
        rows[i][(i + 1) % 5] = rows[(i + 1) % 5][i] = 2
    x = build_bestvina_orbit_complex(CoxeterMatrix.from_rows(rows))
    h = bredon_cohomology(x, CoefficientFunctor.k(0))
    assert h == (AbGroup.free(11), AbGroup.zero(), AbGroup.zero())


def test_right_angled_ko_rows_are_mod2_reductions(ra_corpus):
    # In KO degrees 1 and 2 the cochain complex is the mod-2 reduction of
    # the K^0 one; cohomology must match the tensor route degreewise.
    for matrix in ra_corpus[:8]:
        x = build_bestvina_orbit_complex(matrix)
        k0 = assemble_cochain(x, CoefficientFunctor.k(0))
        reduced = tensor_mod2(k0)
        for n in (1, 2):
            ko = bredon_cohomology(x, CoefficientFunctor.ko(n))
            via_tensor = tuple(cohomology(reduced, p) for p in range(reduced.length + 1))
            assert ko == via_tensor, matrix.entries


def test_uct_holds_on_produced_complexes(ra_corpus):
    x = build_amalgam_orbit_complex(AmalgamSpec(r=(3,), m=(2, 2)))
    assert uct_verify(assemble_cochain(x, CoefficientFunctor.k(0)))
    for matrix in ra_corpus[:8]:
        for builder in (build_bestvina_orbit_complex, build_davis_orbit_complex):
            c = assemble_cochain(builder(matrix), CoefficientFunctor.k(0))
            assert uct_verify(c)


def test_odd_edge_amalgams_have_no_degree_one_cohomology():
    rng = random.Random(11)
    for _ in range(12):
        k = rng.randint(1, 3)
        spec = AmalgamSpec(
            r=tuple(rng.choice((1, 3, 5)) for _ in range(k)),
            m=tuple(rng.choice((2, 3, 4)) for _ in range(k + 1)))
        x = build_amalgam_orbit_complex(spec)
        for n in range(8):
            h = bredon_cohomology(x, CoefficientFunctor.ko(n))
            assert h[1].is_zero, (spec, n)
        h = bredon_cohomology(x, CoefficientFunctor.k(0))
        assert h[1].is_zero, spec


def test_even_edge_amalgam_k_theory_still_fine():
    # K^0 needs no parity hypothesis
    x = build_amalgam_orbit_complex(AmalgamSpec(r=(2, 4), m=(3, 2, 2)))
    h = bredon_cohomology(x, CoefficientFunctor.k(0))
    sigma = (3 * 2) + (2 * 2 * 4) + (2 * 4) - (2 + 4)
    assert h == (AbGroup.free(sigma), AbGroup.zero())


def test_cohomology_invariant_under_reorientation(ra_corpus):
    rng = random.Random(12)
    cases = [build_amalgam_orbit_complex(AmalgamSpec(r=(3,), m=(3, 2))),
             build_bestvina_orbit_complex(CoxeterMatrix.polygon_family(3)),
             build_bestvina_orbit_complex(ra_corpus[0])]
    for x in cases:
        base_k = bredon_cohomology(x, CoefficientFunctor.k(0))
        base_ko = bredon_cohomology(x, CoefficientFunctor.ko(1))
        for _ in range(4):
            flipped = reorient(x, rng)
            assert bredon_cohomology(flipped, CoefficientFunctor.k(0)) == base_k
            assert bredon_cohomology(flipped, CoefficientFunctor.ko(1)) == base_ko


def test_ko_cochain_cross_blocks_vanish_in_scope():
    for x in (build_amalgam_orbit_complex(AmalgamSpec(r=(3,), m=(3, 4))),
              build_bestvina_orbit_complex(CoxeterMatrix.polygon_family(4))):
        for n in range(8):
            c = assemble_cochain(x, CoefficientFunctor.ko(n))
            assert all(xb.is_zero() for xb in c.cross_d)
