"""Coxeter groups: spherical subsets, Davis and Bestvina models of the
classifying space for proper actions, and their quotient cell structures.

Finiteness of a standard parabolic W_J is decided by the classification of
connected finite-type Coxeter diagrams (A_n, B_n, D_n, E6, E7, E8, F4, H3,
H4, I2(m)); a subset is spherical iff its induced diagram is a disjoint
union of diagrams from that list.  The Gram-matrix positive-definiteness
criterion is kept in the test suite as an independent floating-point
cross-check, never on the exact path.
"""

from __future__ import annotations

from dataclasses import dataclass

from .abelian import IntMatrix
from .groups import (
    GroupClass,
    InclusionDescriptor,
    dihedral_odd,
    elem2,
    elem2_exponent,
    elem2_subset,
    reflection_in_dihedral,
    trivial_in,
)
from .orbit import Cell, OrbitComplex

INFINITY = 0  # Coxeter matrix entries use 0 to encode the label infinity.


class UnsupportedStabilizerError(ValueError):
    """A spherical subgroup outside the supported stabilizer catalogue."""

    def __init__(self, subset: tuple[int, ...], reason: str):
        self.subset = subset
        names = "{" + ", ".join(f"s{i}" for i in subset) + "}"
        super().__init__(f"unsupported stabilizer for spherical subset {names}: {reason}")


@dataclass(frozen=True)
class CoxeterMatrix:
    """Symmetric Coxeter matrix; diagonal 1, off-diagonal >= 2 or 0 (= infinity)."""

    size: int
    entries: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if self.size < 0 or len(self.entries) != self.size:
            raise ValueError("matrix size mismatch")
        for i, row in enumerate(self.entries):
            if len(row) != self.size:
                raise ValueError("matrix must be square")
            if row[i] != 1:
                raise ValueError("diagonal entries must be 1")
            for j, x in enumerate(row):
                if i != j and x != INFINITY and x < 2:
                    raise ValueError("off-diagonal entries must be >= 2 or 0 for infinity")
                if x != self.entries[j][i]:
                    raise ValueError("matrix must be symmetric")

    def m(self, i: int, j: int) -> int:
        return self.entries[i][j]

    def is_right_angled(self) -> bool:
        return all(self.entries[i][j] in (2, INFINITY)
                   for i in range(self.size) for j in range(i + 1, self.size))

    @classmethod
    def from_rows(cls, rows) -> "CoxeterMatrix":
        return cls(len(rows), tuple(tuple(int(x) for x in row) for row in rows))

    @classmethod
    def from_json(cls, data: dict) -> "CoxeterMatrix":
        size = int(data["size"])
        rows = data["m"]
        if len(rows) != size:
            raise ValueError("matrix row count does not match declared size")
        return cls.from_rows(rows)

    def to_json(self) -> dict:
        return {"size": self.size, "m": [list(row) for row in self.entries]}

    @classmethod
    def path_family(cls, n: int) -> "CoxeterMatrix":
        """n+1 generators; consecutive ones braid (label 3), the rest commute
        at infinity."""
        if n < 1:
            raise ValueError("the path family needs n >= 1")
        size = n + 1
        rows = [[INFINITY] * size for _ in range(size)]
        for i in range(size):
            rows[i][i] = 1
        for i in range(size - 1):
            rows[i][i + 1] = rows[i + 1][i] = 3
        return cls.from_rows(rows)

    @classmethod
    def polygon_family(cls, n: int) -> "CoxeterMatrix":
        """The path family closed up with one extra label 3 between s_0 and s_n."""
        if n < 2:
            raise ValueError("the polygon family needs n >= 2")
        base = cls.path_family(n)
        rows = [list(row) for row in base.entries]
        rows[0][n] = rows[n][0] = 3
        return cls.from_rows(rows)

    def detect_family(self) -> tuple[str, int] | None:
        """Recognize the path / polygon families structurally.

        The subgraph of label-3 edges must be a Hamiltonian path (resp.
        cycle) on the generators and every other off-diagonal label must be
        infinity.  Returns ("path", n) or ("polygon", n) with n+1 = size.
        """
        size = self.size
        if size < 2:
            return None
        threes = []
        for i in range(size):
            for j in range(i + 1, size):
                if self.entries[i][j] == 3:
                    threes.append((i, j))
                elif self.entries[i][j] != INFINITY:
                    return None
        degree = [0] * size
        for i, j in threes:
            degree[i] += 1
            degree[j] += 1
        if not _connected_on(size, threes):
            return None
        if len(threes) == size - 1 and all(d <= 2 for d in degree):
            return ("path", size - 1)
        if size >= 3 and len(threes) == size and all(d == 2 for d in degree):
            return ("polygon", size - 1)
        return None


def _connected_on(size: int, edges: list[tuple[int, int]]) -> bool:
    if size == 0:
        return True
    adj: dict[int, list[int]] = {}
    for i, j in edges:
        adj.setdefault(i, []).append(j)
        adj.setdefault(j, []).append(i)
    seen = {0}
    stack = [0]
    while stack:
        v = stack.pop()
        for w in adj.get(v, ()):
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return len(seen) == size


# ---------------------------------------------------------------------------
# Finite-type classification


def _components(matrix: CoxeterMatrix, subset: tuple[int, ...]) -> list[list[int]]:
    """Connected components of the induced diagram (edges where m >= 3 or m = oo)."""
    remaining = set(subset)
    comps = []
    while remaining:
        start = min(remaining)
        comp = {start}
        stack = [start]
        while stack:
            v = stack.pop()
            for w in list(remaining - comp):
                if matrix.m(v, w) != 2:
                    comp.add(w)
                    stack.append(w)
        comps.append(sorted(comp))
        remaining -= comp
    return comps


def _connected_component_is_finite(matrix: CoxeterMatrix, comp: list[int]) -> bool:
    """Is the connected diagram on ``comp`` of finite type?"""
    n = len(comp)
    edges = []
    for a in range(n):
        for b in range(a + 1, n):
            label = matrix.m(comp[a], comp[b])
            if label == INFINITY:
                return False
            if label >= 3:
                edges.append((a, b, label))
    if n == 1:
        return True
    if n == 2:
        return True  # I2(m) for any finite m
    # Finite-type diagrams on >= 3 nodes are trees.
    if len(edges) != n - 1:
        return False
    degree = [0] * n
    adj: dict[int, list[int]] = {i: [] for i in range(n)}
    for a, b, _ in edges:
        degree[a] += 1
        degree[b] += 1
        adj[a].append(b)
        adj[b].append(a)
    if max(degree) >= 4:
        return False
    branch_nodes = [i for i in range(n) if degree[i] == 3]
    high = sorted(label for _, _, label in edges if label > 3)
    if len(branch_nodes) >= 2:
        return False
    if branch_nodes:
        if high:
            return False  # D/E diagrams are simply laced
        # Branch lengths from the unique degree-3 node.
        lengths = sorted(_branch_length(adj, branch_nodes[0], first) for first in adj[branch_nodes[0]])
        a, b, c = lengths
        if a == b == 1:
            return True  # D_n
        return (a, b) == (1, 2) and c in (2, 3, 4)  # E6, E7, E8
    # A path: read the labels from one end.
    end = next(i for i in range(n) if degree[i] == 1)
    order = [end]
    prev = None
    while len(order) < n:
        nxt = next(x for x in adj[order[-1]] if x != prev)
        prev = order[-1]
        order.append(nxt)
    labels = [matrix.m(comp[order[i]], comp[order[i + 1]]) for i in range(n - 1)]
    if not high:
        return True  # A_n
    if len(high) > 1:
        return False
    if high[0] == 4:
        if labels[0] == 4 or labels[-1] == 4:
            return True  # B_n
        return n == 4 and labels == [3, 4, 3]  # F4
    if high[0] == 5:
        return n in (3, 4) and (labels[0] == 5 or labels[-1] == 5)  # H3, H4
    return False  # labels >= 6 are finite only in rank 2


def _branch_length(adj: dict[int, list[int]], center: int, first: int) -> int:
    length = 1
    prev, cur = center, first
    while len(adj[cur]) == 2:
        nxt = next(x for x in adj[cur] if x != prev)
        prev, cur = cur, nxt
        length += 1
    return length


def is_spherical(matrix: CoxeterMatrix, subset: tuple[int, ...]) -> bool:
    return all(_connected_component_is_finite(matrix, comp)
               for comp in _components(matrix, subset))


@dataclass(frozen=True)
class SphericalPoset:
    """All spherical subsets of the generating set, ordered by inclusion.

    Members are kept in a deterministic order (by size, then
    lexicographically), which downstream constructions use as the canonical
    cell ordering.
    """

    members: tuple[tuple[int, ...], ...]

    def __len__(self) -> int:
        return len(self.members)

    def __contains__(self, subset) -> bool:
        return tuple(sorted(subset)) in set(self.members)

    def index(self, subset: tuple[int, ...]) -> int:
        return self.members.index(tuple(sorted(subset)))

    def strict_supersets(self, subset: tuple[int, ...]) -> list[tuple[int, ...]]:
        s = set(subset)
        return [m for m in self.members if s < set(m)]


def enumerate_spherical_subsets(matrix: CoxeterMatrix) -> SphericalPoset:
    """All J with W_J finite, pruned by downward closure.

    A subset can only be spherical if all its maximal proper subsets are, so
    candidates are grown by size.
    """
    spherical: set[tuple[int, ...]] = {()}
    by_size: list[list[tuple[int, ...]]] = [[()]]
    for size in range(1, matrix.size + 1):
        layer = []
        if size == 1:
            candidates = [(i,) for i in range(matrix.size)]
        else:
            candidates = []
            seen = set()
            for smaller in by_size[size - 1]:
                top = smaller[-1] if smaller else -1
                for extra in range(top + 1, matrix.size):
                    cand = smaller + (extra,)
                    if cand in seen:
                        continue
                    seen.add(cand)
                    if all(tuple(x for x in cand if x != drop) in spherical for drop in cand):
                        candidates.append(cand)
        for cand in candidates:
            if is_spherical(matrix, cand):
                layer.append(cand)
                spherical.add(cand)
        if not layer:
            break
        by_size.append(layer)
    members = sorted(spherical, key=lambda s: (len(s), s))
    return SphericalPoset(tuple(members))


def group_class_of(matrix: CoxeterMatrix, subset: tuple[int, ...]) -> GroupClass:
    """The GroupClass of the finite parabolic W_J, or an explicit refusal.

    Supported: products of A_1 factors ((Z/2)^k after canonicalization) and a
    single odd-label I2(m) factor on its own (the dihedral group D_m).
    Everything else in the finite-type catalogue (A_{>=3}, B, D, E, F, H,
    even-label I2, and any product mixing a dihedral with more factors) has
    no representation-ring support and is refused by name.
    """
    comps = _components(matrix, subset)
    if all(len(c) == 1 for c in comps):
        return elem2(len(subset))
    if len(comps) == 1 and len(comps[0]) == 2:
        label = matrix.m(comps[0][0], comps[0][1])
        if label != INFINITY and label % 2 == 1:
            return dihedral_odd(label)
        raise UnsupportedStabilizerError(
            tuple(subset), f"dihedral group of order {2 * label} (even rotation order)")
    big = max(comps, key=len)
    if len(big) == 2 and len(comps) > 1:
        raise UnsupportedStabilizerError(
            tuple(subset), "product of a dihedral factor with further generators")
    raise UnsupportedStabilizerError(
        tuple(subset),
        f"irreducible factor of rank {len(big)} on {{{', '.join(f's{i}' for i in big)}}}")


def parabolic_inclusion(matrix: CoxeterMatrix, sub: tuple[int, ...],
                        big: tuple[int, ...]) -> InclusionDescriptor:
    """Descriptor for W_sub <= W_big, sub ⊆ big, both supported."""
    if not set(sub) <= set(big):
        raise ValueError("parabolic inclusion needs sub ⊆ big")
    sub_class = group_class_of(matrix, sub)
    big_class = group_class_of(matrix, big)
    if sub_class.kind == "trivial":
        return trivial_in(big_class)
    big_k = elem2_exponent(big_class)
    if big_k is not None:
        ordered = sorted(big)
        injection = tuple(ordered.index(s) for s in sorted(sub))
        return elem2_subset(len(sub), big_k, injection)
    # big is an odd dihedral: the only proper supported parabolic is a
    # single reflection.
    if len(sub) == 1:
        return reflection_in_dihedral(big_class.param)
    raise UnsupportedStabilizerError(
        tuple(sub), f"no supported inclusion of {sub_class} into {big_class}")


# ---------------------------------------------------------------------------
# Davis model: the order complex of the spherical poset


def _chains(poset: SphericalPoset) -> list[list[tuple[tuple[int, ...], ...]]]:
    """Strictly increasing chains, grouped by length-1 (= cell dimension)."""
    members = poset.members
    below: dict[tuple[int, ...], list[tuple[int, ...]]] = {
        m: [o for o in members if set(o) < set(m)] for m in members
    }
    per_dim: list[list[tuple[tuple[int, ...], ...]]] = [[(m,) for m in members]]
    while True:
        longer = []
        for chain in per_dim[-1]:
            for smaller in below[chain[0]]:
                longer.append((smaller,) + chain)
        if not longer:
            break
        longer.sort()
        per_dim.append(longer)
    return per_dim


def _chain_label(chain: tuple[tuple[int, ...], ...]) -> str:
    def one(j):
        return "{" + ",".join(f"s{i}" for i in j) + "}"

    return "<".join(one(j) for j in chain)


def build_davis_orbit_complex(matrix: CoxeterMatrix) -> OrbitComplex:
    """Order complex of the spherical poset, with chain stabilizers.

    A p-cell is a chain J_0 < ... < J_p; its stabilizer is W_{J_0}.  Faces
    drop one entry with the usual alternating sign; dropping the minimum
    changes the stabilizer along W_{J_0} <= W_{J_1}, every other face keeps
    it.
    """
    poset = enumerate_spherical_subsets(matrix)
    per_dim = _chains(poset)
    cells = []
    stab_cache: dict[tuple[int, ...], GroupClass] = {}

    def stab(j: tuple[int, ...]) -> GroupClass:
        if j not in stab_cache:
            stab_cache[j] = group_class_of(matrix, j)
        return stab_cache[j]

    for chains in per_dim:
        cells.append(tuple(Cell(_chain_label(c), stab(c[0])) for c in chains))
    incidence = []
    descriptors = []
    for p in range(len(per_dim) - 1):
        index_of = {chain: i for i, chain in enumerate(per_dim[p])}
        rows = [[0] * len(per_dim[p + 1]) for _ in range(len(per_dim[p]))]
        descs: dict[tuple[int, int], InclusionDescriptor] = {}
        for k, chain in enumerate(per_dim[p + 1]):
            for drop in range(len(chain)):
                face = chain[:drop] + chain[drop + 1:]
                j = index_of[face]
                rows[j][k] += (-1) ** drop
                if rows[j][k]:
                    descs[(j, k)] = parabolic_inclusion(matrix, chain[0], face[0])
                else:
                    descs.pop((j, k), None)
        incidence.append(IntMatrix.from_rows(rows, cols=len(per_dim[p + 1])))
        descriptors.append(descs)
    return OrbitComplex(tuple(cells), tuple(incidence), tuple(descriptors))


# ---------------------------------------------------------------------------
# Bestvina panel complex


@dataclass(frozen=True)
class PanelCell:
    """Cell of a panel complex: minimal panel label and signed boundary."""

    label: tuple[int, ...]
    boundary: tuple[tuple[int, int], ...]  # (index into the cells one dimension down, coefficient)


@dataclass(frozen=True)
class PanelComplex:
    """Regular CW complex whose cells carry spherical-subset panel labels.

    The panel B_J is the subcomplex of cells whose label contains J; panels
    shrink as J grows, every panel is contractible by construction, and the
    stabilizer of a cell in the basic construction is W_{label}.
    """

    cells: tuple[tuple[PanelCell, ...], ...]

    @property
    def dim(self) -> int:
        return len(self.cells) - 1

    def counts(self) -> tuple[int, ...]:
        return tuple(len(c) for c in self.cells)

    def boundary_matrix(self, p: int) -> IntMatrix:
        """Boundary from (p+1)-cells to p-cells."""
        rows = [[0] * len(self.cells[p + 1]) for _ in range(len(self.cells[p]))]
        for k, cell in enumerate(self.cells[p + 1]):
            for j, coeff in cell.boundary:
                rows[j][k] += coeff
        return IntMatrix.from_rows(rows, cols=len(self.cells[p + 1]))


class _PanelBuilder:
    def __init__(self):
        self.cells: list[list[dict]] = [[]]

    def add(self, dim: int, label: tuple[int, ...], boundary: list[tuple[int, int]]) -> int:
        while len(self.cells) <= dim:
            self.cells.append([])
        self.cells[dim].append({"label": label, "boundary": tuple(boundary)})
        return len(self.cells[dim]) - 1

    def freeze(self) -> PanelComplex:
        return PanelComplex(tuple(
            tuple(PanelCell(c["label"], c["boundary"]) for c in layer)
            for layer in self.cells))


def build_bestvina_complex(matrix: CoxeterMatrix) -> PanelComplex:
    """Recursive panel complex over the spherical poset.

    Processing subsets J by decreasing size, B_J must be a compact
    contractible complex containing U = union of the B_I for I > J:

      * no I > J: B_J is a new vertex;
      * U a single vertex or a tree: B_J = U, nothing new;
      * U two isolated vertices: join them by one new edge;
      * U a single closed edge cycle: fill it with one new 2-cell;
      * anything else: cone, with a fresh apex vertex.

    The first four cases reproduce the minimal complexes of the worked
    families (paths of braid-linked generators, and their polygon closures);
    the cone fallback is deliberately conservative and can exceed the
    minimal dimension without hurting correctness, since the basic
    construction only needs contractible panels.
    """
    poset = enumerate_spherical_subsets(matrix)
    builder = _PanelBuilder()
    for j_set in sorted(poset.members, key=lambda s: (-len(s), s)):
        up = set(map(tuple, poset.strict_supersets(j_set)))
        cell_idx = _collect_cells(builder, up)
        n_vertices = len(cell_idx[0])
        n_edges = len(cell_idx[1]) if len(cell_idx) > 1 else 0
        higher = sum(len(layer) for layer in cell_idx[2:])
        if n_vertices == 0:
            builder.add(0, j_set, [])
            continue
        if higher == 0 and _is_tree(builder, cell_idx):
            continue  # contractible already; B_J = U
        if higher == 0 and n_edges == 0 and n_vertices == 2:
            a, b = cell_idx[0]
            builder.add(1, j_set, [(max(a, b), 1), (min(a, b), -1)])
            continue
        cycle = _as_single_cycle(builder, cell_idx) if higher == 0 else None
        if cycle is not None:
            builder.add(2, j_set, cycle)
            continue
        _cone(builder, j_set, cell_idx)
    return builder.freeze()


def _collect_cells(builder: _PanelBuilder, up: set[tuple[int, ...]]) -> list[list[int]]:
    """Indices, per dimension, of the cells lying in the union of panels B_I, I in up.

    A cell created while processing label L lies in B_I exactly when I ⊆ L.
    """
    out = []
    for layer in builder.cells:
        out.append([i for i, c in enumerate(layer)
                    if any(set(i_set) <= set(c["label"]) for i_set in up)])
    while out and not out[-1]:
        out.pop()
    return out or [[]]


def _is_tree(builder: _PanelBuilder, cell_idx: list[list[int]]) -> bool:
    vertices = cell_idx[0]
    edges = cell_idx[1] if len(cell_idx) > 1 else []
    if len(edges) != len(vertices) - 1:
        return False
    parent = {v: v for v in vertices}

    def find(v):
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    for e in edges:
        endpoints = [j for j, _ in builder.cells[1][e]["boundary"]]
        a, b = find(endpoints[0]), find(endpoints[1])
        if a == b:
            return False
        parent[a] = b
    return True


def _as_single_cycle(builder: _PanelBuilder, cell_idx: list[list[int]]) -> list[tuple[int, int]] | None:
    """If the 1-complex is one closed cycle, return 2-cell boundary coefficients.

    The cycle is traversed once, starting at its smallest vertex toward its
    smallest neighbor; each edge contributes +1 when crossed from tail to
    head (the stored boundary being head - tail) and -1 otherwise.
    """
    vertices = cell_idx[0]
    edges = cell_idx[1] if len(cell_idx) > 1 else []
    if not vertices or len(edges) != len(vertices):
        return None
    incident: dict[int, list[int]] = {v: [] for v in vertices}
    ends = {}
    for e in edges:
        bd = builder.cells[1][e]["boundary"]
        head = next(j for j, c in bd if c == 1)
        tail = next(j for j, c in bd if c == -1)
        if head not in incident or tail not in incident:
            return None
        incident[head].append(e)
        incident[tail].append(e)
        ends[e] = (tail, head)
    if any(len(es) != 2 for es in incident.values()):
        return None
    start = min(vertices)
    coeffs = []
    visited_edges = set()
    v = start
    prev_edge = None
    while True:
        candidates = [e for e in incident[v] if e != prev_edge]
        e = min(candidates) if prev_edge is None else candidates[0]
        if e in visited_edges:
            return None
        visited_edges.add(e)
        tail, head = ends[e]
        coeffs.append((e, 1 if v == tail else -1))
        v = head if v == tail else tail
        prev_edge = e
        if v == start:
            break
    if len(visited_edges) != len(edges):
        return None  # more than one cycle component
    return coeffs


def _cone(builder: _PanelBuilder, j_set: tuple[int, ...], cell_idx: list[list[int]]) -> None:
    """Cone over the collected subcomplex with a fresh apex labeled J.

    Chain-level cone: for a vertex v, ∂(a*v) = v - a; in higher dimensions
    ∂(a*c) = c - a*(∂c).
    """
    apex = builder.add(0, j_set, [])
    cone_of: dict[tuple[int, int], int] = {}
    for dim, layer in enumerate(cell_idx):
        for c in layer:
            if dim == 0:
                idx = builder.add(1, j_set, [(c, 1), (apex, -1)])
            else:
                boundary = [(c, 1)]
                for face, coeff in builder.cells[dim][c]["boundary"]:
                    boundary.append((cone_of[(dim - 1, face)], -coeff))
                idx = builder.add(dim + 1, j_set, boundary)
            cone_of[(dim, c)] = idx


def orbit_complex_from_panel(matrix: CoxeterMatrix, panel: PanelComplex) -> OrbitComplex:
    """Quotient structure of the basic construction over a panel complex.

    Cells and incidence numbers are those of the panel complex itself; the
    stabilizer of a cell is W of its minimal panel label, and every face
    relation is witnessed by the parabolic inclusion of the labels (labels
    only grow along faces).
    """

    def one(j):
        return "{" + ",".join(f"s{i}" for i in j) + "}"

    stab_cache: dict[tuple[int, ...], GroupClass] = {}

    def stab(j: tuple[int, ...]) -> GroupClass:
        if j not in stab_cache:
            stab_cache[j] = group_class_of(matrix, j)
        return stab_cache[j]

    cells = tuple(
        tuple(Cell(f"B{one(c.label)}#{i}", stab(c.label)) for i, c in enumerate(layer))
        for layer in panel.cells)
    incidence = []
    descriptors = []
    for p in range(panel.dim):
        incidence.append(panel.boundary_matrix(p))
        descs: dict[tuple[int, int], InclusionDescriptor] = {}
        for k, cell in enumerate(panel.cells[p + 1]):
            seen: dict[int, int] = {}
            for j, coeff in cell.boundary:
                seen[j] = seen.get(j, 0) + coeff
            for j, coeff in seen.items():
                if coeff:
                    face = panel.cells[p][j]
                    descs[(j, k)] = parabolic_inclusion(matrix, cell.label, face.label)
        descriptors.append(descs)
    return OrbitComplex(cells, tuple(incidence), tuple(descriptors))


def build_bestvina_orbit_complex(matrix: CoxeterMatrix) -> OrbitComplex:
    return orbit_complex_from_panel(matrix, build_bestvina_complex(matrix))
