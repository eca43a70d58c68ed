"""Representation-ring bases, restriction matrices, and K/KO orbit coefficients.

Complex representation rings R(G) are free abelian on the irreducible
characters; KO coefficients at a point come out of Segal's decomposition

    KO_G^{-n}(pt) ≅ KO^{-n}(pt) ⊗ R(G;R) ⊕ K^{-n}(pt) ⊗ R(G;C)
                    ⊕ KSp^{-n}(pt) ⊗ R(G;H)

over the irreducible real representations grouped by endomorphism field.
No group in the catalogue has a quaternionic irreducible, so the KSp column
never contributes here; it is kept in the tables so the mechanism states the
whole decomposition.

Fixed basis orders (tests rely on the literal matrices):
  * R(Z/m): characters chi_j ordered by exponent j = 0..m-1 (chi_0 trivial);
  * R((Z/2)^k): characters ordered by the coordinate subset on which they are
    the sign character, as a binary counter (empty set first);
  * R(D_m), m odd: trivial, sign, then the 2-dimensional rho_1..rho_{(m-1)/2}.
Real bases list the R-type generators first, then the C-type ones (pairs of
conjugate characters), each block in the complex order.
"""

from __future__ import annotations

from dataclasses import dataclass

from .abelian import IntMatrix, Mod2Matrix
from .groups import (
    CYCLIC,
    CYCLIC_IN_CYCLIC,
    DIHEDRAL_ODD,
    ELEM2,
    ELEM2_SUBSET,
    REFLECTION_IN_DIHEDRAL,
    ROTATION_IN_DIHEDRAL,
    TRIVIAL,
    TRIVIAL_IN_ANYTHING,
    GroupClass,
    InclusionDescriptor,
    UnsupportedRestrictionError,
)

# Point coefficients for n = 0..7: (free rank, Z/2 rank).
KO_POINT = ((1, 0), (0, 1), (0, 1), (0, 0), (1, 0), (0, 0), (0, 0), (0, 0))
KU_POINT = ((1, 0), (0, 0))
KSP_POINT = ((1, 0), (0, 0), (0, 0), (0, 0), (1, 0), (0, 1), (0, 1), (0, 0))


def k0_rank(g: GroupClass) -> int:
    """Number of irreducible complex representations = rank of R(G)."""
    if g.kind == TRIVIAL:
        return 1
    if g.kind == CYCLIC:
        return g.param
    if g.kind == ELEM2:
        return 2 ** g.param
    return (g.param + 3) // 2


def complex_irrep_labels(g: GroupClass) -> tuple[str, ...]:
    if g.kind == TRIVIAL:
        return ("chi0",)
    if g.kind == CYCLIC:
        return tuple(f"chi{j}" for j in range(g.param))
    if g.kind == ELEM2:
        return tuple(f"e{mask}" for mask in range(2 ** g.param))
    return ("triv", "sgn") + tuple(f"rho{l}" for l in range(1, (g.param - 1) // 2 + 1))


def complex_irrep_dims(g: GroupClass) -> tuple[int, ...]:
    if g.kind == DIHEDRAL_ODD:
        return (1, 1) + (2,) * ((g.param - 1) // 2)
    return (1,) * k0_rank(g)


def restriction_k0(incl: InclusionDescriptor) -> IntMatrix:
    """Matrix of R(big) -> R(sub) in the fixed complex bases.

    Shape is rank R(sub) x rank R(big); column j lists the decomposition of
    the restricted j-th irreducible of the big group.
    """
    if incl.kind == CYCLIC_IN_CYCLIC:
        r, m = incl.extra
        rows = [[1 if j % r == t else 0 for j in range(m * r)] for t in range(r)]
        return IntMatrix.from_rows(rows, cols=m * r)
    if incl.kind == TRIVIAL_IN_ANYTHING:
        return IntMatrix.from_rows([list(complex_irrep_dims(incl.big))],
                                   cols=k0_rank(incl.big))
    if incl.kind == ELEM2_SUBSET:
        sub_k = len(incl.extra)
        big_k = _elem2_rank(incl.big)
        rows = [[0] * (2 ** big_k) for _ in range(2 ** sub_k)]
        for mask in range(2 ** big_k):
            t = 0
            for i, coord in enumerate(incl.extra):
                if (mask >> coord) & 1:
                    t |= 1 << i
            rows[t][mask] = 1
        return IntMatrix.from_rows(rows, cols=2 ** big_k)
    if incl.kind == REFLECTION_IN_DIHEDRAL:
        m = incl.extra[0]
        two_dims = (m - 1) // 2
        # trivial -> trivial, sign -> sign, each rho -> trivial + sign
        # (a reflection acts on rho with eigenvalues +1 and -1).
        return IntMatrix.from_rows([[1, 0] + [1] * two_dims,
                                    [0, 1] + [1] * two_dims], cols=2 + two_dims)
    if incl.kind == ROTATION_IN_DIHEDRAL:
        m = incl.extra[0]
        two_dims = (m - 1) // 2
        rows = [[0] * (2 + two_dims) for _ in range(m)]
        rows[0][0] = 1  # trivial -> chi_0
        rows[0][1] = 1  # sign is trivial on rotations
        for l in range(1, two_dims + 1):
            rows[l][1 + l] = 1
            rows[m - l][1 + l] += 1  # rho_l -> chi_l + chi_{m-l}
        return IntMatrix.from_rows(rows, cols=2 + two_dims)
    raise UnsupportedRestrictionError(f"unsupported inclusion kind {incl.kind!r}")


def _elem2_rank(g: GroupClass) -> int:
    from .groups import elem2_exponent

    k = elem2_exponent(g)
    if k is None:
        raise UnsupportedRestrictionError(f"{g} is not an elementary abelian 2-group")
    return k


# ---------------------------------------------------------------------------
# Real structure


@dataclass(frozen=True)
class RealTypeCounts:
    """Counts of irreducible real representations by endomorphism field."""

    n_r: int
    n_c: int
    n_h: int


def real_structure(g: GroupClass) -> tuple[tuple[str, tuple[int, ...]], ...]:
    """Irreducible real representations as groupings of complex irrep indices.

    Each item is ("R", (i,)) for a real-type irreducible whose
    complexification is the complex irrep i, or ("C", (i, j)) for a
    complex-type one, the underlying real form of the conjugate pair
    {chi_i, chi_j}.  Order: all R-type generators, then the C-type pairs.
    """
    if g.kind == TRIVIAL:
        return (("R", (0,)),)
    if g.kind == CYCLIC:
        s = g.param
        gens = [("R", (0,))]
        if s % 2 == 0:
            gens.append(("R", (s // 2,)))
        for j in range(1, (s + 1) // 2 if s % 2 else s // 2):
            gens.append(("C", (j, s - j)))
        return tuple(gens)
    if g.kind == ELEM2:
        return tuple(("R", (mask,)) for mask in range(2 ** g.param))
    # Odd dihedral groups are totally orthogonal.
    return tuple(("R", (i,)) for i in range(k0_rank(g)))


def real_type_counts(g: GroupClass) -> RealTypeCounts:
    gens = real_structure(g)
    n_r = sum(1 for kind, _ in gens if kind == "R")
    n_c = sum(1 for kind, _ in gens if kind == "C")
    return RealTypeCounts(n_r, n_c, 0)


def real_irrep_labels(g: GroupClass) -> tuple[str, ...]:
    complex_labels = complex_irrep_labels(g)
    out = []
    for kind, members in real_structure(g):
        if kind == "R":
            out.append(complex_labels[members[0]])
        else:
            out.append("+".join(complex_labels[i] for i in members))
    return tuple(out)


def real_restriction(incl: InclusionDescriptor) -> IntMatrix:
    """Matrix of RO(big) -> RO(sub) in the fixed real bases.

    Entries are multiplicities of real irreducibles in the restriction of a
    real irreducible, derived from the complex restriction matrix: for a
    real generator V with complexification ⊕ chi_i and a target W grouping
    complex irreps {chi_w...}, the multiplicity is read off one complex
    member of W (summing over the members of V).
    """
    mc = restriction_k0(incl)
    sub_gens = real_structure(incl.sub)
    big_gens = real_structure(incl.big)
    rows = []
    for _, w_members in sub_gens:
        w = w_members[0]
        row = []
        for _, v_members in big_gens:
            row.append(sum(mc.entry(w, v) for v in v_members))
        rows.append(row)
    return IntMatrix.from_rows(rows, cols=len(big_gens))


# ---------------------------------------------------------------------------
# KO coefficients at orbits


@dataclass(frozen=True)
class KOCoefficient:
    """Value of KO^{-n} at an orbit: a free part and an elementary 2-part."""

    free_rank: int
    tor2_rank: int
    free_labels: tuple[str, ...]
    tor2_labels: tuple[str, ...]


def ko_point(g: GroupClass, n: int) -> KOCoefficient:
    """KO^{-n}_G(pt) through the Segal decomposition, n taken mod 8."""
    n %= 8
    labels = real_irrep_labels(g)
    gens = real_structure(g)
    free_labels: list[str] = []
    tor2_labels: list[str] = []
    for (kind, _), label in zip(gens, labels):
        if kind == "R":
            pt_free, pt_tor = KO_POINT[n]
        elif kind == "C":
            pt_free, pt_tor = KU_POINT[n % 2]
        else:
            pt_free, pt_tor = KSP_POINT[n]
        free_labels.extend([label] * pt_free)
        tor2_labels.extend([label] * pt_tor)
    return KOCoefficient(len(free_labels), len(tor2_labels),
                         tuple(free_labels), tuple(tor2_labels))


def _real_indices_by_type(g: GroupClass) -> tuple[list[int], list[int]]:
    gens = real_structure(g)
    r_idx = [i for i, (kind, _) in enumerate(gens) if kind == "R"]
    c_idx = [i for i, (kind, _) in enumerate(gens) if kind == "C"]
    return r_idx, c_idx


def restriction_ko(incl: InclusionDescriptor, n: int) -> tuple[IntMatrix, Mod2Matrix, Mod2Matrix]:
    """Blocks (free, torsion, cross) of KO^{-n}(big orbit) -> KO^{-n}(sub orbit).

    The free and torsion blocks are submatrices of the real restriction
    matrix selected by type bookkeeping:

      n ≡ 0, 4: free block = the full real restriction (R and C generators
                both carry a Z at the point level); no torsion.
      n ≡ 1:    torsion block = R-to-R part mod 2; no free part.
      n ≡ 2:    free block = C-to-C part; torsion block = R-to-R part mod 2.
      n ≡ 6:    free block = C-to-C part; no torsion.
      n ≡ 3,5,7: everything vanishes.

    Components of a restricted C-type generator landing on R-type generators
    of the subgroup always come with even multiplicity when the subgroup has
    odd order, so the free-to-torsion cross block is zero for every
    supported descriptor; a descriptor that would need a nonzero cross block
    is rejected rather than guessed at.  Cyclic subgroups of even order are
    rejected outright for n ≡ 1, 2 (their sign representation makes the
    torsion block underdetermined).
    """
    n %= 8
    sub, big = incl.sub, incl.big
    if n in (1, 2) and incl.kind == CYCLIC_IN_CYCLIC and incl.extra[0] % 2 == 0:
        raise UnsupportedRestrictionError(
            f"KO^{-n} restriction for an even-order cyclic subgroup Z{incl.extra[0]} "
            "is not determined by the supported theory; odd edge orders only")
    big_pt = ko_point(big, n)
    if n in (3, 5, 7):
        return (IntMatrix.zero(0, 0), Mod2Matrix.zero(0, 0), Mod2Matrix.zero(0, 0))
    m_real = real_restriction(incl)
    sub_r, sub_c = _real_indices_by_type(sub)
    big_r, big_c = _real_indices_by_type(big)
    if n in (0, 4):
        free = m_real
        tor = Mod2Matrix.zero(0, 0)
        cross = Mod2Matrix.zero(0, big_pt.free_rank)
        return free, tor, cross
    if n == 6:
        free = IntMatrix.from_rows(
            [[m_real.entry(i, j) for j in big_c] for i in sub_c], cols=len(big_c))
        return free, Mod2Matrix.zero(0, 0), Mod2Matrix.zero(0, big_pt.free_rank)
    # n in (1, 2)
    tor = Mod2Matrix.from_rows(
        [[m_real.entry(i, j) % 2 for j in big_r] for i in sub_r], cols=len(big_r))
    if n == 1:
        return IntMatrix.zero(0, 0), tor, Mod2Matrix.zero(tor.rows, 0)
    # n == 2: the free block is C-to-C; a C generator of the big group may
    # also restrict onto R generators of the subgroup, which would be a
    # free-to-torsion cross term mod 2.  For odd-order subgroups that
    # multiplicity is always even; reject anything else.
    free = IntMatrix.from_rows(
        [[m_real.entry(i, j) for j in big_c] for i in sub_c], cols=len(big_c))
    cross_rows = [[m_real.entry(i, j) % 2 for j in big_c] for i in sub_r]
    cross = Mod2Matrix.from_rows(cross_rows, cols=len(big_c))
    if not cross.is_zero():
        raise UnsupportedRestrictionError(
            f"KO^{-n} restriction along {incl} needs a nonzero free-to-torsion "
            "cross term, which is outside the supported theory")
    return free, tor, cross
