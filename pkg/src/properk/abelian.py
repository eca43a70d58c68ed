"""Exact linear algebra over Z and GF(2), and normal forms of f.g. abelian groups.

Everything runs on plain Python integers: Smith normal form intermediates can
blow up far past machine words even on small inputs, so no fixed-width or
floating arithmetic appears anywhere on the computation path.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence


class ChainComplexError(ValueError):
    """Matrices fed as a (co)chain complex fail shape checks or d∘d = 0."""


# ---------------------------------------------------------------------------
# Integer matrices


@dataclass(frozen=True)
class IntMatrix:
    """Immutable integer matrix, entries in row-major order.

    Zero rows or columns are legal; a matrix with 0 rows or 0 columns is the
    zero map from/to the zero group.
    """

    rows: int
    cols: int
    entries: tuple[int, ...]

    def __post_init__(self):
        if self.rows < 0 or self.cols < 0:
            raise ValueError("matrix dimensions must be nonnegative")
        if len(self.entries) != self.rows * self.cols:
            raise ValueError("entry count does not match dimensions")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], cols: int | None = None) -> "IntMatrix":
        r = len(rows)
        if r == 0:
            return cls(0, 0 if cols is None else cols, ())
        c = len(rows[0])
        if any(len(row) != c for row in rows):
            raise ValueError("ragged rows")
        return cls(r, c, tuple(int(x) for row in rows for x in row))

    @classmethod
    def zero(cls, rows: int, cols: int) -> "IntMatrix":
        return cls(rows, cols, (0,) * (rows * cols))

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls(n, n, tuple(1 if i == j else 0 for i in range(n) for j in range(n)))

    def entry(self, i: int, j: int) -> int:
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> tuple[int, ...]:
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def to_rows(self) -> list[list[int]]:
        return [list(self.row(i)) for i in range(self.rows)]

    def transpose(self) -> "IntMatrix":
        return IntMatrix(self.cols, self.rows,
                         tuple(self.entry(i, j) for j in range(self.cols) for i in range(self.rows)))

    def is_zero(self) -> bool:
        return not any(self.entries)

    def __mul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.rows:
            raise ValueError("dimension mismatch in matrix product")
        out = [[0] * other.cols for _ in range(self.rows)]
        for i in range(self.rows):
            row_i = self.row(i)
            out_i = out[i]
            for k, a in enumerate(row_i):
                if a:
                    row_k = other.row(k)
                    for j, b in enumerate(row_k):
                        if b:
                            out_i[j] += a * b
        return IntMatrix.from_rows(out, cols=other.cols)

    def mod2(self) -> "Mod2Matrix":
        bits = []
        for i in range(self.rows):
            m = 0
            for j, x in enumerate(self.row(i)):
                if x & 1:
                    m |= 1 << j
            bits.append(m)
        return Mod2Matrix(self.rows, self.cols, tuple(bits))


def determinant(m: IntMatrix) -> int:
    """Exact determinant by fraction-free (Bareiss) elimination."""
    if m.rows != m.cols:
        raise ValueError("determinant of a non-square matrix")
    n = m.rows
    if n == 0:
        return 1
    a = m.to_rows()
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k]:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            a[i][k] = 0
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


# ---------------------------------------------------------------------------
# Smith normal form

def _swap_rows(a, u, i, j):
    a[i], a[j] = a[j], a[i]
    u[i], u[j] = u[j], u[i]


def _swap_cols(a, v, i, j):
    for row in a:
        row[i], row[j] = row[j], row[i]
    for row in v:
        row[i], row[j] = row[j], row[i]


def _find_pivot(a, t, rows, cols):
    # Minimal nonzero absolute value; ties broken by (row, col) lexicographic
    # order.  Row-major scanning with strict improvement keeps the lex-first
    # entry among equals.
    best = None
    where = None
    for i in range(t, rows):
        row = a[i]
        for j in range(t, cols):
            x = row[j]
            if x:
                x = -x if x < 0 else x
                if best is None or x < best:
                    best, where = x, (i, j)
                    if best == 1:
                        return where
    return where


def smith_normal_form(m: IntMatrix) -> tuple[IntMatrix, IntMatrix, IntMatrix]:
    """Return (U, D, V) with U·m·V = D.

    U and V are unimodular; D is diagonal with nonnegative entries forming a
    divisibility chain d1 | d2 | ... .  Classical row/column reduction,
    pivoting on a minimal-absolute-value entry with a deterministic
    (row, col) tie-break, so the factorization is reproducible.
    """
    rows, cols = m.rows, m.cols
    a = m.to_rows()
    u = IntMatrix.identity(rows).to_rows()
    v = IntMatrix.identity(cols).to_rows()

    t = 0
    while t < min(rows, cols):
        where = _find_pivot(a, t, rows, cols)
        if where is None:
            break
        _swap_rows(a, u, t, where[0])
        _swap_cols(a, v, t, where[1])
        while True:
            if a[t][t] < 0:
                a[t] = [-x for x in a[t]]
                u[t] = [-x for x in u[t]]
            d = a[t][t]
            # Clear column t by row operations; nonzero remainders shrink the
            # pivot candidates, so the loop terminates.
            dirty = False
            for i in range(t + 1, rows):
                if a[i][t]:
                    q = a[i][t] // d
                    if q:
                        a[i] = [x - q * y for x, y in zip(a[i], a[t])]
                        u[i] = [x - q * y for x, y in zip(u[i], u[t])]
                    if a[i][t]:
                        dirty = True
            if dirty:
                where = _find_pivot(a, t, rows, cols)
                _swap_rows(a, u, t, where[0])
                _swap_cols(a, v, t, where[1])
                continue
            # Clear row t by column operations.
            for j in range(t + 1, cols):
                if a[t][j]:
                    q = a[t][j] // d
                    if q:
                        for row in a:
                            row[j] -= q * row[t]
                        for row in v:
                            row[j] -= q * row[t]
                    if a[t][j]:
                        dirty = True
            if dirty:
                where = _find_pivot(a, t, rows, cols)
                _swap_rows(a, u, t, where[0])
                _swap_cols(a, v, t, where[1])
                continue
            # Divisibility sweep: the pivot must divide the rest of the block.
            bad = None
            for i in range(t + 1, rows):
                row = a[i]
                for j in range(t + 1, cols):
                    if row[j] % d:
                        bad = i
                        break
                if bad is not None:
                    break
            if bad is None:
                break
            a[t] = [x + y for x, y in zip(a[t], a[bad])]
            u[t] = [x + y for x, y in zip(u[t], u[bad])]
        t += 1

    return (IntMatrix.from_rows(u, cols=rows),
            IntMatrix.from_rows(a, cols=cols),
            IntMatrix.from_rows(v, cols=cols))


def invariant_factors(m: IntMatrix) -> tuple[int, ...]:
    """Nonzero diagonal of the Smith form of ``m``, without the transforms.

    Fast path: entries of absolute value 1 are eliminated sparsely first
    (each such step splits off an invariant factor 1); the small residual is
    finished by dense reduction.
    """
    # Sparse rows as {col: value}.
    sparse = []
    for i in range(m.rows):
        row = {j: x for j, x in enumerate(m.row(i)) if x}
        if row:
            sparse.append(row)
    ones = 0
    col_rows: dict[int, set[int]] = {}
    for ridx, row in enumerate(sparse):
        for j in row:
            col_rows.setdefault(j, set()).add(ridx)
    alive = set(range(len(sparse)))
    while True:
        pivot = None
        for ridx in alive:
            for j, x in sparse[ridx].items():
                if x == 1 or x == -1:
                    pivot = (ridx, j, x)
                    break
            if pivot:
                break
        if pivot is None:
            break
        ridx, j, x = pivot
        prow = sparse[ridx]
        for sidx in list(col_rows.get(j, ())):
            if sidx == ridx or sidx not in alive:
                continue
            srow = sparse[sidx]
            c = srow[j] * x  # srow -= c * prow, using x*x == 1
            for k, pv in prow.items():
                nv = srow.get(k, 0) - c * pv
                if nv:
                    srow[k] = nv
                    col_rows.setdefault(k, set()).add(sidx)
                else:
                    srow.pop(k, None)
                    col_rows.get(k, set()).discard(sidx)
        for k in prow:
            col_rows.get(k, set()).discard(ridx)
        alive.discard(ridx)
        ones += 1
    # Dense residual.
    live_rows = [sparse[i] for i in sorted(alive) if sparse[i]]
    if not live_rows:
        return (1,) * ones
    live_cols = sorted({j for row in live_rows for j in row})
    colpos = {j: k for k, j in enumerate(live_cols)}
    dense = IntMatrix.from_rows(
        [[row.get(j, 0) for j in live_cols] for row in live_rows], cols=len(live_cols))
    _, d, _ = smith_normal_form(dense)
    rest = tuple(d.entry(i, i) for i in range(min(d.rows, d.cols)) if d.entry(i, i))
    return (1,) * ones + rest


def rank(m: IntMatrix) -> int:
    return len(invariant_factors(m))


def kernel_basis(m: IntMatrix) -> list[tuple[int, ...]]:
    """Basis of the integer kernel lattice of ``m`` (a saturated sublattice)."""
    _, d, v = smith_normal_form(m)
    r = sum(1 for i in range(min(d.rows, d.cols)) if d.entry(i, i))
    return [tuple(v.entry(i, j) for i in range(m.cols)) for j in range(r, m.cols)]


# ---------------------------------------------------------------------------
# GF(2) matrices


@dataclass(frozen=True)
class Mod2Matrix:
    """Matrix over the field with two elements; each row stored as a bitmask."""

    rows: int
    cols: int
    bits: tuple[int, ...]

    def __post_init__(self):
        if self.rows < 0 or self.cols < 0:
            raise ValueError("matrix dimensions must be nonnegative")
        if len(self.bits) != self.rows:
            raise ValueError("row count does not match bit rows")
        mask = (1 << self.cols) - 1
        if any(b & ~mask for b in self.bits):
            raise ValueError("row bits exceed column count")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], cols: int | None = None) -> "Mod2Matrix":
        r = len(rows)
        if r == 0:
            return cls(0, 0 if cols is None else cols, ())
        c = len(rows[0])
        bits = []
        for row in rows:
            if len(row) != c:
                raise ValueError("ragged rows")
            m = 0
            for j, x in enumerate(row):
                if x & 1:
                    m |= 1 << j
            bits.append(m)
        return cls(r, c, tuple(bits))

    @classmethod
    def zero(cls, rows: int, cols: int) -> "Mod2Matrix":
        return cls(rows, cols, (0,) * rows)

    def entry(self, i: int, j: int) -> int:
        return (self.bits[i] >> j) & 1

    def to_rows(self) -> list[list[int]]:
        return [[self.entry(i, j) for j in range(self.cols)] for i in range(self.rows)]

    def is_zero(self) -> bool:
        return not any(self.bits)

    def __mul__(self, other: "Mod2Matrix") -> "Mod2Matrix":
        if self.cols != other.rows:
            raise ValueError("dimension mismatch in matrix product")
        out = []
        for i in range(self.rows):
            acc = 0
            b = self.bits[i]
            while b:
                k = (b & -b).bit_length() - 1
                acc ^= other.bits[k]
                b &= b - 1
            out.append(acc)
        return Mod2Matrix(self.rows, other.cols, tuple(out))

    def rank2(self) -> int:
        rows = [b for b in self.bits if b]
        r = 0
        pivots: list[int] = []
        for b in rows:
            for p in pivots:
                low = p & -p
                if b & low:
                    b ^= p
            if b:
                pivots.append(b)
                r += 1
        return r


# ---------------------------------------------------------------------------
# Finitely generated abelian groups in normal form


def _factorize(n: int) -> dict[int, int]:
    out: dict[int, int] = {}
    p = 2
    while p * p <= n:
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
        p += 1 if p == 2 else 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


@dataclass(frozen=True)
class AbGroup:
    """A finitely generated abelian group Z^rank ⊕ Z/d1 ⊕ ... ⊕ Z/dt.

    The torsion coefficients form a divisor chain d1 | d2 | ... with every
    di >= 2, so (rank, torsion) is a canonical form: two values are equal
    iff the groups are isomorphic.
    """

    rank: int
    torsion: tuple[int, ...] = ()

    def __post_init__(self):
        if self.rank < 0:
            raise ValueError("rank must be nonnegative")
        prev = 1
        for d in self.torsion:
            if d < 2:
                raise ValueError("torsion coefficients must be >= 2")
            if d % prev:
                raise ValueError("torsion coefficients must form a divisor chain")
            prev = d

    @classmethod
    def zero(cls) -> "AbGroup":
        return cls(0, ())

    @classmethod
    def free(cls, rank: int) -> "AbGroup":
        return cls(rank, ())

    @classmethod
    def elementary_2(cls, k: int) -> "AbGroup":
        return cls(0, (2,) * k)

    @classmethod
    def from_divisors(cls, rank: int, divisors: Iterable[int]) -> "AbGroup":
        """Normal form of Z^rank ⊕ ⊕ Z/d for an arbitrary multiset of d >= 1."""
        primary: dict[int, list[int]] = {}
        for d in divisors:
            if d < 1:
                raise ValueError("divisors must be positive")
            for p, e in _factorize(d).items():
                primary.setdefault(p, []).append(e)
        if not primary:
            return cls(rank, ())
        t = max(len(v) for v in primary.values())
        chain = [1] * t
        for p, exps in primary.items():
            exps.sort(reverse=True)
            for i, e in enumerate(exps):
                chain[t - 1 - i] *= p ** e
        return cls(rank, tuple(d for d in chain if d > 1))

    @property
    def is_zero(self) -> bool:
        return self.rank == 0 and not self.torsion

    def direct_sum(self, *others: "AbGroup") -> "AbGroup":
        rank = self.rank + sum(g.rank for g in others)
        divisors = list(self.torsion)
        for g in others:
            divisors.extend(g.torsion)
        return AbGroup.from_divisors(rank, divisors)

    def is_free(self) -> bool:
        return not self.torsion

    def torsion_order(self) -> int:
        n = 1
        for d in self.torsion:
            n *= d
        return n

    def tensor_z2_dim(self) -> int:
        """dim over GF(2) of G ⊗ Z/2."""
        return self.rank + sum(1 for d in self.torsion if d % 2 == 0)

    def tor_z2_dim(self) -> int:
        """dim over GF(2) of Tor(G, Z/2)."""
        return sum(1 for d in self.torsion if d % 2 == 0)

    def __str__(self) -> str:
        parts = []
        if self.rank == 1:
            parts.append("Z")
        elif self.rank > 1:
            parts.append(f"Z^{self.rank}")
        parts.extend(f"Z/{d}" for d in self.torsion)
        return " (+) ".join(parts) if parts else "0"

    def to_json(self) -> dict:
        return {"rank": self.rank, "torsion": list(self.torsion)}

    @classmethod
    def from_json(cls, data: dict) -> "AbGroup":
        return cls(int(data["rank"]), tuple(int(d) for d in data["torsion"]))


# ---------------------------------------------------------------------------
# Lattices: integer spans, membership, quotients


class Lattice:
    """Sublattice of Z^n kept as a row-echelon basis (pivot columns increase)."""

    def __init__(self, ambient_dim: int):
        self.n = ambient_dim
        self.basis: list[list[int]] = []
        self.pivots: list[int] = []

    def add(self, vec: Sequence[int]) -> None:
        v = list(vec)
        if len(v) != self.n:
            raise ValueError("vector length does not match ambient dimension")
        i = 0
        while True:
            j = next((k for k, x in enumerate(v) if x), None)
            if j is None:
                return
            while i < len(self.pivots) and self.pivots[i] < j:
                i += 1
            if i == len(self.pivots) or self.pivots[i] > j:
                if v[j] < 0:
                    v = [-x for x in v]
                self.basis.insert(i, v)
                self.pivots.insert(i, j)
                return
            row = self.basis[i]
            a, b = row[j], v[j]
            if b % a == 0:
                q = b // a
                v = [x - q * y for x, y in zip(v, row)]
            else:
                g, s, t = _xgcd(a, b)
                # Replace the basis row by a gcd combination, reduce v by it.
                new_row = [s * x + t * y for x, y in zip(row, v)]
                v = [(-(b // g)) * x + (a // g) * y for x, y in zip(row, v)]
                self.basis[i] = new_row

    def coordinates(self, vec: Sequence[int]) -> list[int]:
        """Coefficients of ``vec`` in the basis; raises if not a member."""
        v = list(vec)
        coeffs = [0] * len(self.basis)
        for i, (row, j) in enumerate(zip(self.basis, self.pivots)):
            if v[j] % row[j]:
                raise ValueError("vector is not in the lattice")
            q = v[j] // row[j]
            coeffs[i] = q
            if q:
                v = [x - q * y for x, y in zip(v, row)]
        if any(v):
            raise ValueError("vector is not in the lattice")
        return coeffs


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        a, x0, y0 = -a, -x0, -y0
    return a, x0, y0


def quotient_group(numerator_gens: Sequence[Sequence[int]],
                   denominator_gens: Sequence[Sequence[int]],
                   ambient_dim: int) -> AbGroup:
    """Normal form of span(numerator)/span(denominator) inside Z^ambient.

    The denominator span must be contained in the numerator span.
    """
    lat = Lattice(ambient_dim)
    for g in numerator_gens:
        lat.add(g)
    s = len(lat.basis)
    if s == 0:
        return AbGroup.zero()
    cols = [lat.coordinates(g) for g in denominator_gens]
    if not cols:
        return AbGroup.free(s)
    rel = IntMatrix.from_rows([[col[i] for col in cols] for i in range(s)], cols=len(cols))
    factors = invariant_factors(rel)
    return AbGroup.from_divisors(s - len(factors), [d for d in factors if d > 1])


# ---------------------------------------------------------------------------
# Split cochain complexes


@dataclass(frozen=True)
class SplitCochainComplex:
    """Cochain complex whose degree-p group is Z^{n_p} ⊕ (Z/2)^{t_p}.

    The differential d_p: degree p -> p+1 is carried in blocks:

        F_p : Z^{n_p}     -> Z^{n_{p+1}}      integer block
        T_p : (Z/2)^{t_p} -> (Z/2)^{t_{p+1}}  torsion block
        X_p : Z^{n_p}     -> (Z/2)^{t_{p+1}}  free-to-torsion cross block

    Torsion-to-free components cannot be expressed at all: coefficient
    systems that would need one are out of scope and must be rejected by the
    caller instead of silently miscomputed.  Construction validates the
    composability of shapes, F∘F = 0, T∘T = 0 and the cross compatibility
    T_{p+1}·X_p + X_{p+1}·(F_p mod 2) = 0.
    """

    free_ranks: tuple[int, ...]
    tor2_ranks: tuple[int, ...]
    free_d: tuple[IntMatrix, ...]
    tor_d: tuple[Mod2Matrix, ...]
    cross_d: tuple[Mod2Matrix, ...]

    def __post_init__(self):
        n = len(self.free_ranks)
        if n == 0 or len(self.tor2_ranks) != n:
            raise ChainComplexError("rank lists must be nonempty and equal length")
        if any(r < 0 for r in self.free_ranks + self.tor2_ranks):
            raise ChainComplexError("ranks must be nonnegative")
        if not (len(self.free_d) == len(self.tor_d) == len(self.cross_d) == n - 1):
            raise ChainComplexError("need exactly one differential per adjacent degree pair")
        for p in range(n - 1):
            f, t, x = self.free_d[p], self.tor_d[p], self.cross_d[p]
            if (f.rows, f.cols) != (self.free_ranks[p + 1], self.free_ranks[p]):
                raise ChainComplexError(f"free differential at degree {p} has wrong shape")
            if (t.rows, t.cols) != (self.tor2_ranks[p + 1], self.tor2_ranks[p]):
                raise ChainComplexError(f"torsion differential at degree {p} has wrong shape")
            if (x.rows, x.cols) != (self.tor2_ranks[p + 1], self.free_ranks[p]):
                raise ChainComplexError(f"cross differential at degree {p} has wrong shape")
        for p in range(n - 2):
            if not (self.free_d[p + 1] * self.free_d[p]).is_zero():
                raise ChainComplexError(f"free differentials do not compose to zero at degree {p}")
            if not (self.tor_d[p + 1] * self.tor_d[p]).is_zero():
                raise ChainComplexError(f"torsion differentials do not compose to zero at degree {p}")
            lhs = self.tor_d[p + 1] * self.cross_d[p]
            rhs = self.cross_d[p + 1] * self.free_d[p].mod2()
            if tuple(a ^ b for a, b in zip(lhs.bits, rhs.bits)) != (0,) * lhs.rows:
                raise ChainComplexError(f"cross compatibility fails at degree {p}")

    @classmethod
    def integral(cls, free_ranks: Sequence[int], diffs: Sequence[IntMatrix]) -> "SplitCochainComplex":
        """Pure integral complex (no torsion summands)."""
        n = len(free_ranks)
        return cls(tuple(free_ranks), (0,) * n, tuple(diffs),
                   tuple(Mod2Matrix.zero(0, 0) for _ in diffs),
                   tuple(Mod2Matrix.zero(0, free_ranks[p]) for p in range(n - 1)))

    @property
    def length(self) -> int:
        """Top degree."""
        return len(self.free_ranks) - 1

    def is_pure_integral(self) -> bool:
        return all(t == 0 for t in self.tor2_ranks)

    def _free(self, p: int) -> IntMatrix:
        if 0 <= p < self.length:
            return self.free_d[p]
        src = self.free_ranks[p] if 0 <= p <= self.length else 0
        tgt = self.free_ranks[p + 1] if 0 <= p + 1 <= self.length else 0
        return IntMatrix.zero(tgt, src)

    def _tor(self, p: int) -> Mod2Matrix:
        if 0 <= p < self.length:
            return self.tor_d[p]
        src = self.tor2_ranks[p] if 0 <= p <= self.length else 0
        tgt = self.tor2_ranks[p + 1] if 0 <= p + 1 <= self.length else 0
        return Mod2Matrix.zero(tgt, src)

    def _cross(self, p: int) -> Mod2Matrix:
        if 0 <= p < self.length:
            return self.cross_d[p]
        src = self.free_ranks[p] if 0 <= p <= self.length else 0
        tgt = self.tor2_ranks[p + 1] if 0 <= p + 1 <= self.length else 0
        return Mod2Matrix.zero(tgt, src)


def cohomology(complex_: SplitCochainComplex, p: int) -> AbGroup:
    """ker(d_p)/im(d_{p-1}) of a split cochain complex, in normal form.

    With vanishing cross blocks this is the direct sum of the integral
    cohomology of the free block and the mod-2 cohomology of the torsion
    block; otherwise the degree is computed as a quotient of solution
    lattices for the mixed Z ⊕ Z/2 groups.
    """
    if not (0 <= p <= complex_.length):
        raise ValueError(f"degree {p} outside 0..{complex_.length}")
    if complex_._cross(p).is_zero() and complex_._cross(p - 1).is_zero():
        f_cur, f_prev = complex_._free(p), complex_._free(p - 1)
        prev_factors = invariant_factors(f_prev)
        free_rank = complex_.free_ranks[p] - len(invariant_factors(f_cur)) - len(prev_factors)
        divisors = [d for d in prev_factors if d > 1]
        t_cur, t_prev = complex_._tor(p), complex_._tor(p - 1)
        tor_dim = complex_.tor2_ranks[p] - t_cur.rank2() - t_prev.rank2()
        return AbGroup.from_divisors(free_rank, divisors + [2] * tor_dim)
    return _cohomology_with_cross(complex_, p)


def _cohomology_with_cross(complex_: SplitCochainComplex, p: int) -> AbGroup:
    n_p = complex_.free_ranks[p] if p <= complex_.length else 0
    t_p = complex_.tor2_ranks[p] if p <= complex_.length else 0
    f, t, x = complex_._free(p), complex_._tor(p), complex_._cross(p)
    n_next, t_next = f.rows, t.rows
    # Solutions of d_p(v) = 0 in Z^{n_p} ⊕ Z^{t_p} with the torsion part
    # read mod 2: stack the exact integer equations F·x = 0 with the
    # congruences X·x + T·y ≡ 0 (mod 2) via slack variables.
    stacked = []
    for i in range(n_next):
        stacked.append(list(f.row(i)) + [0] * (t_p + t_next))
    for i in range(t_next):
        row = [x.entry(i, j) for j in range(n_p)]
        row += [t.entry(i, j) for j in range(t_p)]
        row += [2 if k == i else 0 for k in range(t_next)]
        stacked.append(row)
    kernel = kernel_basis(IntMatrix.from_rows(stacked, cols=n_p + t_p + t_next))
    numerator = [vec[:n_p + t_p] for vec in kernel]
    # Relations: image of d_{p-1} (integer lift) plus 2·(torsion coordinates).
    f_prev, t_prev, x_prev = complex_._free(p - 1), complex_._tor(p - 1), complex_._cross(p - 1)
    denominator = []
    for j in range(f_prev.cols):
        denominator.append(tuple(f_prev.entry(i, j) for i in range(n_p))
                           + tuple(x_prev.entry(i, j) for i in range(t_p)))
    for j in range(t_prev.cols):
        denominator.append((0,) * n_p + tuple(t_prev.entry(i, j) for i in range(t_p)))
    for k in range(t_p):
        denominator.append(tuple(2 if i == n_p + k else 0 for i in range(n_p + t_p)))
    return quotient_group(numerator, denominator, n_p + t_p)


def tensor_mod2(complex_: SplitCochainComplex) -> SplitCochainComplex:
    """Reduce a pure integral complex mod 2: torsion ranks take over."""
    if not complex_.is_pure_integral():
        raise ChainComplexError("tensor_mod2 requires a pure integral complex")
    n = len(complex_.free_ranks)
    return SplitCochainComplex(
        (0,) * n,
        complex_.free_ranks,
        tuple(IntMatrix.zero(0, 0) for _ in range(n - 1)),
        tuple(f.mod2() for f in complex_.free_d),
        tuple(Mod2Matrix.zero(complex_.free_ranks[p + 1], 0) for p in range(n - 1)),
    )


def uct_verify(complex_: SplitCochainComplex) -> bool:
    """Check the universal coefficient sequence for the mod-2 reduction.

    For a cochain complex C of free abelian groups, in every degree p

        dim H^p(C ⊗ Z/2) = dim(H^p(C) ⊗ Z/2) + dim Tor(H^{p+1}(C), Z/2),

    the usual UCT for the chain complex obtained by negating degrees.
    """
    if not complex_.is_pure_integral():
        raise ChainComplexError("uct_verify requires a pure integral complex")
    reduced = tensor_mod2(complex_)
    integral = [cohomology(complex_, p) for p in range(complex_.length + 1)]
    integral.append(AbGroup.zero())
    for p in range(complex_.length + 1):
        lhs = cohomology(reduced, p).torsion.count(2)
        rhs = integral[p].tensor_z2_dim() + integral[p + 1].tor_z2_dim()
        if lhs != rhs:
            return False
    return True
