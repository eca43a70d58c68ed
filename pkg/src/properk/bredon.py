"""Bredon cochain complexes of orbit complexes with K/KO orbit coefficients.

The degree-p cochain group is the direct sum, over the p-cells, of the
coefficient value at the cell's stabilizer; the differential block from a
p-cell j into a (p+1)-cell k is the signed incidence integer times the
restriction matrix along the recorded inclusion, exactly the transpose
shape of the cellular boundary.
"""

from __future__ import annotations

from dataclasses import dataclass

from .abelian import AbGroup, IntMatrix, Mod2Matrix, SplitCochainComplex, cohomology
from .groups import GroupClass, InclusionDescriptor
from .orbit import OrbitComplex
from .reprings import k0_rank, ko_point, restriction_k0, restriction_ko


@dataclass(frozen=True)
class CoefficientFunctor:
    """K^{-n} or KO^{-n} as a coefficient system on orbits.

    ``theory`` is "k" (period 2) or "ko" (period 8); ``n`` means the
    nonpositive degree -n, reduced mod the period.  K in odd degrees is the
    zero functor (K^1 of any orbit vanishes), represented explicitly so the
    graded interface stays total.
    """

    theory: str
    n: int

    def __post_init__(self):
        if self.theory not in ("k", "ko"):
            raise ValueError("theory must be 'k' or 'ko'")
        object.__setattr__(self, "n", self.n % self.period)

    @classmethod
    def k(cls, n: int = 0) -> "CoefficientFunctor":
        return cls("k", n % 2)

    @classmethod
    def ko(cls, n: int) -> "CoefficientFunctor":
        return cls("ko", n % 8)

    @property
    def period(self) -> int:
        return 2 if self.theory == "k" else 8

    @property
    def is_zero_functor(self) -> bool:
        return self.theory == "k" and self.n % 2 == 1

    def value(self, g: GroupClass) -> tuple[int, int]:
        """(free rank, Z/2 rank) of the functor at the orbit G/H."""
        if self.theory == "k":
            return (0, 0) if self.is_zero_functor else (k0_rank(g), 0)
        pt = ko_point(g, self.n)
        return (pt.free_rank, pt.tor2_rank)

    def restriction(self, incl: InclusionDescriptor) -> tuple[IntMatrix, Mod2Matrix, Mod2Matrix]:
        if self.theory == "k":
            if self.is_zero_functor:
                return (IntMatrix.zero(0, 0), Mod2Matrix.zero(0, 0), Mod2Matrix.zero(0, 0))
            free = restriction_k0(incl)
            return (free, Mod2Matrix.zero(0, 0), Mod2Matrix.zero(0, free.cols))
        return restriction_ko(incl, self.n)


def assemble_cochain(complex_: OrbitComplex, functor: CoefficientFunctor) -> SplitCochainComplex:
    """Bredon cochain complex of an orbit complex, in split (Z ⊕ Z/2) form.

    Cell ordering fixes the block layout, so assembled matrices are
    reproducible literals.
    """
    free_ranks = []
    tor_ranks = []
    offsets = []  # per dim: (free offsets, torsion offsets) per cell
    for cells in complex_.cells:
        f_off, t_off = [], []
        f_total = t_total = 0
        for cell in cells:
            f, t = functor.value(cell.stabilizer)
            f_off.append((f_total, f))
            t_off.append((t_total, t))
            f_total += f
            t_total += t
        free_ranks.append(f_total)
        tor_ranks.append(t_total)
        offsets.append((f_off, t_off))

    free_d, tor_d, cross_d = [], [], []
    for p in range(complex_.dim):
        nf_src, nf_tgt = free_ranks[p], free_ranks[p + 1]
        nt_src, nt_tgt = tor_ranks[p], tor_ranks[p + 1]
        f_rows = [[0] * nf_src for _ in range(nf_tgt)]
        t_rows = [[0] * nt_src for _ in range(nt_tgt)]
        x_rows = [[0] * nf_src for _ in range(nt_tgt)]
        matrix = complex_.incidence[p]
        for (j, k), incl in complex_.descriptors[p].items():
            alpha = matrix.entry(j, k)
            r_free, r_tor, r_cross = functor.restriction(incl)
            fo_src, fn_src = offsets[p][0][j]
            to_src, tn_src = offsets[p][1][j]
            fo_tgt, fn_tgt = offsets[p + 1][0][k]
            to_tgt, tn_tgt = offsets[p + 1][1][k]
            if (r_free.rows, r_free.cols) != (fn_tgt, fn_src):
                raise ValueError("free restriction block has inconsistent shape")
            for a in range(fn_tgt):
                row = f_rows[fo_tgt + a]
                for b in range(fn_src):
                    row[fo_src + b] += alpha * r_free.entry(a, b)
            if alpha % 2:
                for a in range(tn_tgt):
                    row = t_rows[to_tgt + a]
                    for b in range(tn_src):
                        row[to_src + b] ^= r_tor.entry(a, b)
                for a in range(tn_tgt):
                    row = x_rows[to_tgt + a]
                    for b in range(fn_src):
                        row[fo_src + b] ^= r_cross.entry(a, b)
        free_d.append(IntMatrix.from_rows(f_rows, cols=nf_src))
        tor_d.append(Mod2Matrix.from_rows(t_rows, cols=nt_src))
        cross_d.append(Mod2Matrix.from_rows(x_rows, cols=nf_src))
    return SplitCochainComplex(tuple(free_ranks), tuple(tor_ranks),
                               tuple(free_d), tuple(tor_d), tuple(cross_d))


def bredon_cohomology(complex_: OrbitComplex, functor: CoefficientFunctor) -> tuple[AbGroup, ...]:
    """Graded Bredon cohomology of the orbit complex, degrees 0..dim."""
    cochain = assemble_cochain(complex_, functor)
    return tuple(cohomology(cochain, p) for p in range(cochain.length + 1))
