"""Quotient cell structures of proper G-CW models, and Bass-Serre path models.

An OrbitComplex records, per dimension, the orbit cells with their
stabilizer classes, the signed incidence integers of the quotient CW
structure, and one inclusion descriptor per nonzero incidence witnessing
that the stabilizer of the higher cell embeds in the stabilizer of the face.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .abelian import IntMatrix
from .groups import GroupClass, InclusionDescriptor, cyclic, cyclic_in_cyclic


class OrbitComplexError(ValueError):
    """Cell data that is not a valid quotient CW structure."""


@dataclass(frozen=True)
class Cell:
    label: str
    stabilizer: GroupClass


@dataclass(frozen=True)
class OrbitComplex:
    """Cells per dimension, incidence integers, and inclusion witnesses.

    ``incidence[p]`` is the boundary matrix from (p+1)-cells to p-cells:
    entry (j, k) is the signed coefficient of p-cell j in the boundary of
    (p+1)-cell k.  ``descriptors[p]`` maps (j, k) with a nonzero coefficient
    to the inclusion stab(k-th (p+1)-cell) <= stab(j-th p-cell).
    """

    cells: tuple[tuple[Cell, ...], ...]
    incidence: tuple[IntMatrix, ...]
    descriptors: tuple[dict[tuple[int, int], InclusionDescriptor], ...] = field(hash=False)

    def __post_init__(self):
        dims = len(self.cells)
        if dims == 0:
            raise OrbitComplexError("a complex needs at least dimension 0")
        if len(self.incidence) != dims - 1 or len(self.descriptors) != dims - 1:
            raise OrbitComplexError("need one incidence matrix per adjacent dimension pair")
        for p, matrix in enumerate(self.incidence):
            if (matrix.rows, matrix.cols) != (len(self.cells[p]), len(self.cells[p + 1])):
                raise OrbitComplexError(f"incidence matrix at dimension {p} has wrong shape")
            for j in range(matrix.rows):
                for k in range(matrix.cols):
                    has_desc = (j, k) in self.descriptors[p]
                    if bool(matrix.entry(j, k)) != has_desc:
                        raise OrbitComplexError(
                            f"descriptor bookkeeping mismatch at dim {p}, cell pair ({j}, {k})")
            for (j, k), desc in self.descriptors[p].items():
                if desc.sub != self.cells[p + 1][k].stabilizer:
                    raise OrbitComplexError(
                        f"descriptor at dim {p} ({j},{k}) does not start at the higher cell's stabilizer")
                if desc.big != self.cells[p][j].stabilizer:
                    raise OrbitComplexError(
                        f"descriptor at dim {p} ({j},{k}) does not land in the face's stabilizer")
        for p in range(dims - 2):
            if not (self.incidence[p] * self.incidence[p + 1]).is_zero():
                raise OrbitComplexError(f"boundary does not square to zero at dimension {p}")

    @property
    def dim(self) -> int:
        return len(self.cells) - 1

    def counts(self) -> tuple[int, ...]:
        return tuple(len(c) for c in self.cells)

    def to_json(self) -> list[dict]:
        out = []
        for p, cells in enumerate(self.cells):
            entry: dict = {
                "dim": p,
                "cells": [{"label": c.label, "stabilizer": c.stabilizer.to_json()} for c in cells],
            }
            if p < self.dim:
                entry["incidence"] = self.incidence[p].to_rows()
                entry["descriptors"] = [
                    {"row": j, "col": k, "descriptor": d.to_json()}
                    for (j, k), d in sorted(self.descriptors[p].items())
                ]
            out.append(entry)
        return out

    @classmethod
    def from_json(cls, data: list[dict]) -> "OrbitComplex":
        cells = []
        incidence = []
        descriptors = []
        for p, entry in enumerate(sorted(data, key=lambda e: e["dim"])):
            if entry["dim"] != p:
                raise OrbitComplexError("dimensions must be contiguous from 0")
            cells.append(tuple(Cell(c["label"], GroupClass.from_json(c["stabilizer"]))
                               for c in entry["cells"]))
        for p, entry in enumerate(sorted(data, key=lambda e: e["dim"])):
            if p == len(data) - 1:
                break
            rows = entry.get("incidence", [])
            incidence.append(IntMatrix.from_rows(
                [list(map(int, row)) for row in rows], cols=len(cells[p + 1])))
            descriptors.append({
                (int(d["row"]), int(d["col"])): InclusionDescriptor.from_json(d["descriptor"])
                for d in entry.get("descriptors", [])
            })
        return cls(tuple(cells), tuple(incidence), tuple(descriptors))


# ---------------------------------------------------------------------------
# Amalgamated products of finite cyclic groups


@dataclass(frozen=True)
class AmalgamSpec:
    """Z_{r1·m0} *_{Z_r1} Z_{r1·r2·m1} *_{Z_r2} ... *_{Z_rk} Z_{rk·mk}.

    Vertex group i (i = 0..k) is cyclic of order m_i·r_i·r_{i+1} with the
    boundary convention r_0 = r_{k+1} = 1; edge group i (i = 1..k) is cyclic
    of order r_i.  Every m_i must exceed 1, otherwise that factor could be
    absorbed into its neighbors.
    """

    r: tuple[int, ...]
    m: tuple[int, ...]

    def __post_init__(self):
        if len(self.m) != len(self.r) + 1:
            raise ValueError("need one more vertex parameter than edge parameters")
        if any(ri < 1 for ri in self.r):
            raise ValueError("edge parameters must be positive")
        if any(mi < 2 for mi in self.m):
            raise ValueError("every m_i must be at least 2")

    @property
    def k(self) -> int:
        return len(self.r)

    def r_padded(self, i: int) -> int:
        """r_i with the convention r_0 = r_{k+1} = 1."""
        if i == 0 or i == self.k + 1:
            return 1
        return self.r[i - 1]

    def vertex_order(self, i: int) -> int:
        return self.m[i] * self.r_padded(i) * self.r_padded(i + 1)

    def edge_order(self, i: int) -> int:
        return self.r[i - 1]

    def describe(self) -> str:
        parts = [f"Z{self.vertex_order(0)}"]
        for i in range(1, self.k + 1):
            parts.append(f"*_Z{self.edge_order(i)}")
            parts.append(f"Z{self.vertex_order(i)}")
        return " ".join(parts)

    def to_json(self) -> dict:
        return {"r": list(self.r), "m": list(self.m)}

    @classmethod
    def from_json(cls, data: dict) -> "AmalgamSpec":
        return cls(tuple(int(x) for x in data["r"]), tuple(int(x) for x in data["m"]))


def build_amalgam_orbit_complex(spec: AmalgamSpec) -> OrbitComplex:
    """Quotient of the Bass-Serre tree: a path of k+1 vertices and k edges.

    Edge i joins vertices i-1 and i; its boundary is v_{i-1} - v_i, so the
    vertex-(i-1) block of the assembled Bredon differential carries the
    positive sign.
    """
    vertices = tuple(
        Cell(f"v{i}", cyclic(spec.vertex_order(i))) for i in range(spec.k + 1))
    edges = tuple(
        Cell(f"e{i}", cyclic(spec.edge_order(i))) for i in range(1, spec.k + 1))
    rows = [[0] * spec.k for _ in range(spec.k + 1)]
    descriptors: dict[tuple[int, int], InclusionDescriptor] = {}
    for i in range(1, spec.k + 1):
        col = i - 1
        r = spec.edge_order(i)
        rows[i - 1][col] = 1
        descriptors[(i - 1, col)] = cyclic_in_cyclic(r, spec.vertex_order(i - 1) // r)
        rows[i][col] = -1
        descriptors[(i, col)] = cyclic_in_cyclic(r, spec.vertex_order(i) // r)
    if spec.k == 0:
        return OrbitComplex((vertices,), (), ())
    return OrbitComplex((vertices, edges),
                        (IntMatrix.from_rows(rows, cols=spec.k),),
                        (descriptors,))


@dataclass(frozen=True)
class TreeBall:
    """Finite ball of the Bass-Serre tree: typed, stabilizer-labeled graph."""

    vertices: tuple[tuple[int, int, int], ...]  # (type, stabilizer order, depth)
    edges: tuple[tuple[int, int, int, int], ...]  # (endpoint, endpoint, type, stabilizer order)

    def degree(self, v: int) -> int:
        return sum(1 for a, b, _, _ in self.edges if v in (a, b))

    def is_tree(self) -> bool:
        return len(self.edges) == len(self.vertices) - 1 and self._connected()

    def _connected(self) -> bool:
        if not self.vertices:
            return True
        seen = {0}
        frontier = [0]
        adj: dict[int, list[int]] = {}
        for a, b, _, _ in self.edges:
            adj.setdefault(a, []).append(b)
            adj.setdefault(b, []).append(a)
        while frontier:
            v = frontier.pop()
            for w in adj.get(v, ()):
                if w not in seen:
                    seen.add(w)
                    frontier.append(w)
        return len(seen) == len(self.vertices)


def expand_tree(spec: AmalgamSpec, radius: int, max_vertices: int = 10_000) -> TreeBall:
    """Ball of the Bass-Serre tree around the type-0 base vertex.

    A vertex of type i has one incident edge per coset of the adjacent edge
    stabilizer: order(vertex stabilizer)/order(edge stabilizer) edges of
    type t for each adjacent edge type t in {i, i+1}.  The tree is infinite;
    this expander exists for property tests and figures, so it carries a
    hard vertex budget.
    """
    if radius < 0:
        raise ValueError("radius must be nonnegative")
    vertices: list[tuple[int, int, int]] = [(0, spec.vertex_order(0), 0)]
    edges: list[tuple[int, int, int, int]] = []
    frontier = [(0, 0, None)]  # (vertex index, type, incoming edge type)
    for depth in range(radius):
        next_frontier = []
        for v_idx, v_type, in_type in frontier:
            for e_type in (v_type, v_type + 1):
                if not 1 <= e_type <= spec.k:
                    continue
                count = spec.vertex_order(v_type) // spec.edge_order(e_type)
                if e_type == in_type:
                    count -= 1  # one slot is taken by the edge toward the root
                w_type = e_type - 1 if e_type == v_type else e_type
                for _ in range(count):
                    w_idx = len(vertices)
                    if w_idx >= max_vertices:
                        raise OrbitComplexError(
                            f"tree ball exceeds the budget of {max_vertices} vertices; "
                            "reduce the radius")
                    vertices.append((w_type, spec.vertex_order(w_type), depth + 1))
                    edges.append((v_idx, w_idx, e_type, spec.edge_order(e_type)))
                    next_frontier.append((w_idx, w_type, e_type))
        frontier = next_frontier
    return TreeBall(tuple(vertices), tuple(edges))
