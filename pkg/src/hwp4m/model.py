"""Shared data layer: vertex labelling, cycles, factors, edge spaces, JSON codec.

Vertex labelling
----------------
Graphs built from m parts of 4 vertices use the flat id

    id = 4 * part + layer,        layer in 0..3,  part in 0..n_parts-1.

Blown-up intermediate graphs with 2 layers per part use id = 2 * part + layer.
Plain graphs (complete graphs on outer points) use ids 0..n-1 directly.

Canonical cycle form
--------------------
A cycle is stored as a tuple rotated so its minimum vertex comes first and
oriented so the second entry is smaller than the last.  This makes cycle
equality, sorting and byte-identical serialization trivial.

Solution interchange format
---------------------------
A solution document is a JSON object with keys ``v``, ``m``, ``r``, ``s``,
``one_factor`` (sorted list of [u, v] pairs with u < v) and ``factors``
(list of objects {"cycle_length": L, "cycles": [[...], ...]} with cycles
canonicalized and sorted).  ``one_factor`` is omitted for odd-order
factorizations and for block documents without a removed matching.
Encoding is deterministic: same object, same bytes.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from itertools import combinations

Edge = tuple[int, int]
Cycle = tuple[int, ...]


# ============================================================
# flat id helpers
# ============================================================

def make_vid(layer: int, part: int, layers_per_part: int = 4) -> int:
    return layers_per_part * part + layer


def layer_of(vid: int, layers_per_part: int = 4) -> int:
    return vid % layers_per_part

def part_of(vid: int, layers_per_part: int = 4) -> int:
    return vid // layers_per_part


def normalize_edge(u: int, v: int) -> Edge:
    if u == v:
        raise ValueError(f"loop edge at vertex {u}")
    return (u, v) if u < v else (v, u)


def canonicalize_cycle(vertices) -> Cycle:
    """Rotate so the minimum vertex is first, orient so second < last."""
    seq = list(vertices)
    if len(seq) < 3:
        raise ValueError("cycle needs at least 3 vertices")
    if len(set(seq)) != len(seq):
        raise ValueError(f"duplicate vertex in cycle {seq}")
    k = seq.index(min(seq))
    rot = seq[k:] + seq[:k]
    if rot[1] > rot[-1]:
        rot = [rot[0]] + rot[:0:-1]
    return tuple(rot)


def cycle_edges(cycle) -> list[Edge]:
    n = len(cycle)
    return [normalize_edge(cycle[i], cycle[(i + 1) % n]) for i in range(n)]


# ============================================================
# factors and solutions
# ============================================================

@dataclass(frozen=True)
class TwoFactor:
    """A set of disjoint cycles meant to span vertices 0..n-1.

    ``cycle_length`` is the declared uniform length; the verifier recomputes
    lengths rather than trusting it.  Invariants (spanning, disjointness) are
    *not* enforced here so that the verifier can report on malformed data.
    """

    cycles: tuple[Cycle, ...]
    n: int
    cycle_length: int | None = None

    def edges(self) -> list[Edge]:
        out: list[Edge] = []
        for c in self.cycles:
            out.extend(cycle_edges(c))
        return out


def two_factor(cycles, n: int, cycle_length: int | None = None) -> TwoFactor:
    canon = tuple(sorted(canonicalize_cycle(c) for c in cycles))
    return TwoFactor(cycles=canon, n=n, cycle_length=cycle_length)


@dataclass(frozen=True)
class OneFactor:
    """A perfect matching, stored as a sorted tuple of normalized edges."""

    edges: tuple[Edge, ...]


def one_factor(edges) -> OneFactor:
    return OneFactor(edges=tuple(sorted(normalize_edge(u, v) for u, v in edges)))


@dataclass(frozen=True)
class Solution:
    """A 2-factorization of K_v (v odd) or K_v minus ``one_factor`` (v even).

    ``factors`` holds r factors of 4-cycles followed by s factors of m-cycles
    in constructed solutions; the verifier does not rely on the order.
    ``m``/``r``/``s`` may be None for bare imported factor lists.
    """

    v: int
    factors: tuple[TwoFactor, ...]
    m: int | None = None
    r: int | None = None
    s: int | None = None
    one_factor: OneFactor | None = None


# ============================================================
# edge-space descriptors
# ============================================================

@dataclass(frozen=True)
class EdgeSpace:
    """Ambient edge set of a named graph family, with closed-form counts.

    kinds:
      complete(v)        K_v
      blowup4(m)         C_m[4], the cycle of m parts blown up by 4
      blowup2(m)         C_m[2]
      switch(m)          (C_m[4] - I) + m*K_4 with the standard removed
                         matching I = {(0,i)(2,i+1)} u {(3,i)(1,i+1)}
      equipartite(a, b)  complete equipartite K_{a:b}, b parts of size a
      explicit(n, edges) literal edge list (used for imports and tests)
    """

    kind: str
    params: tuple = ()
    _edges: tuple[Edge, ...] = field(default=(), repr=False)

    @property
    def vertex_count(self) -> int:
        if self.kind == "complete":
            return self.params[0]
        if self.kind in ("blowup4", "switch"):
            return 4 * self.params[0]
        if self.kind == "blowup2":
            return 2 * self.params[0]
        if self.kind == "equipartite":
            a, b = self.params
            return a * b
        if self.kind == "explicit":
            return self.params[0]
        raise ValueError(f"unknown edge space kind {self.kind!r}")

    def edge_count(self) -> int:
        if self.kind == "complete":
            v = self.params[0]
            return v * (v - 1) // 2
        if self.kind == "blowup4":
            return 16 * self.params[0]
        if self.kind == "blowup2":
            return 4 * self.params[0]
        if self.kind == "switch":
            return 20 * self.params[0]
        if self.kind == "equipartite":
            a, b = self.params
            return a * a * b * (b - 1) // 2
        if self.kind == "explicit":
            return len(self._edges)
        raise ValueError(f"unknown edge space kind {self.kind!r}")

    def edges(self) -> list[Edge]:
        if self.kind == "complete":
            return [tuple(e) for e in combinations(range(self.params[0]), 2)]
        if self.kind == "blowup4":
            return _blowup_edges(self.params[0], 4)
        if self.kind == "blowup2":
            return _blowup_edges(self.params[0], 2)
        if self.kind == "switch":
            m = self.params[0]
            removed = set(switch_matching_edges(m))
            out = [e for e in _blowup_edges(m, 4) if e not in removed]
            for p in range(m):
                out.extend(
                    normalize_edge(4 * p + a, 4 * p + b)
                    for a, b in combinations(range(4), 2)
                )
            return out
        if self.kind == "equipartite":
            a, b = self.params
            return [
                (u, v)
                for u, v in combinations(range(a * b), 2)
                if u // a != v // a
            ]
        if self.kind == "explicit":
            return list(self._edges)
        raise ValueError(f"unknown edge space kind {self.kind!r}")

    def adjacency(self) -> list[set[int]]:
        adj: list[set[int]] = [set() for _ in range(self.vertex_count)]
        for u, v in self.edges():
            adj[u].add(v)
            adj[v].add(u)
        return adj


def _blowup_edges(m: int, w: int) -> list[Edge]:
    # Parts around a cycle; for m = 3 the three part pairs are still distinct.
    if m < 3:
        raise ValueError("blow-up needs at least 3 parts")
    out = []
    for i in range(m):
        j = (i + 1) % m
        for a in range(w):
            for b in range(w):
                out.append(normalize_edge(w * i + a, w * j + b))
    return out


def switch_matching_edges(m: int) -> list[Edge]:
    """The removed matching of the switch construction, inside C_m[4]."""
    out = []
    for i in range(m):
        j = (i + 1) % m
        out.append(normalize_edge(4 * i + 0, 4 * j + 2))
        out.append(normalize_edge(4 * i + 3, 4 * j + 1))
    return sorted(out)


def complete_graph(v: int) -> EdgeSpace:
    return EdgeSpace("complete", (v,))

def cycle_blowup4(m: int) -> EdgeSpace:
    return EdgeSpace("blowup4", (m,))

def cycle_blowup2(m: int) -> EdgeSpace:
    return EdgeSpace("blowup2", (m,))

def switch_graph(m: int) -> EdgeSpace:
    return EdgeSpace("switch", (m,))

def equipartite_graph(a: int, b: int) -> EdgeSpace:
    return EdgeSpace("equipartite", (a, b))

def complete_bipartite_44() -> EdgeSpace:
    return EdgeSpace("equipartite", (4, 2))

def explicit_graph(n: int, edges) -> EdgeSpace:
    norm = tuple(sorted(normalize_edge(u, v) for u, v in edges))
    return EdgeSpace("explicit", (n,), _edges=norm)


# ============================================================
# JSON codec
# ============================================================

class DecodeError(ValueError):
    """Structural violation in a solution document; ``code`` names it."""

    def __init__(self, code: str, detail: str = ""):
        self.code = code
        super().__init__(f"{code}: {detail}" if detail else code)


def solution_to_doc(sol: Solution) -> dict:
    factors = []
    for f in sol.factors:
        if f.cycle_length is not None:
            length = f.cycle_length
        else:
            lengths = {len(c) for c in f.cycles}
            if len(lengths) != 1:
                raise ValueError("cannot annotate a non-uniform factor")
            length = lengths.pop()
        factors.append(
            {
                "cycle_length": length,
                "cycles": [list(c) for c in sorted(f.cycles)],
            }
        )
    doc: dict = {"v": sol.v, "factors": factors}
    for key in ("m", "r", "s"):
        val = getattr(sol, key)
        if val is not None:
            doc[key] = val
    if sol.one_factor is not None:
        doc["one_factor"] = [list(e) for e in sol.one_factor.edges]
    return doc


def doc_to_solution(doc: dict) -> Solution:
    if not isinstance(doc, dict):
        raise DecodeError("MalformedDocument", "top level is not an object")
    for key in ("v", "factors"):
        if key not in doc:
            raise DecodeError("MalformedDocument", f"missing key {key!r}")
    v = doc["v"]
    if not isinstance(v, int) or v < 1:
        raise DecodeError("MalformedDocument", "v must be a positive integer")
    raw_factors = doc["factors"]
    if not isinstance(raw_factors, list):
        raise DecodeError("MalformedDocument", "factors must be a list")

    factors = []
    for idx, entry in enumerate(raw_factors):
        if not isinstance(entry, dict) or "cycles" not in entry:
            raise DecodeError("MalformedDocument", f"factor {idx} has no cycles")
        cycles = []
        for cyc in entry["cycles"]:
            if not isinstance(cyc, list) or len(cyc) < 3:
                raise DecodeError("CycleTooShort", f"factor {idx}: {cyc!r}")
            if any(not isinstance(u, int) or u < 0 or u >= v for u in cyc):
                raise DecodeError("VertexOutOfRange", f"factor {idx}: {cyc!r}")
            if len(set(cyc)) != len(cyc):
                raise DecodeError("DuplicateVertex", f"factor {idx}: {cyc!r}")
            cycles.append(canonicalize_cycle(cyc))
        length = entry.get("cycle_length")
        if length is not None and not isinstance(length, int):
            raise DecodeError("MalformedDocument", f"factor {idx}: bad cycle_length")
        factors.append(TwoFactor(cycles=tuple(sorted(cycles)), n=v, cycle_length=length))

    r, s, m = doc.get("r"), doc.get("s"), doc.get("m")
    for name, val in (("r", r), ("s", s), ("m", m)):
        if val is not None and (not isinstance(val, int) or val < 0):
            raise DecodeError("MalformedDocument", f"{name} must be a nonnegative integer")
    if r is not None and s is not None and r + s != len(factors):
        raise DecodeError(
            "FactorCountMismatch",
            f"r+s = {r + s} but document has {len(factors)} factors",
        )

    matching = None
    if "one_factor" in doc:
        raw = doc["one_factor"]
        if not isinstance(raw, list):
            raise DecodeError("MalformedDocument", "one_factor must be a list")
        edges = []
        for pair in raw:
            if not isinstance(pair, list) or len(pair) != 2:
                raise DecodeError("MalformedDocument", f"bad matching edge {pair!r}")
            u, w = pair
            if not all(isinstance(x, int) and 0 <= x < v for x in (u, w)):
                raise DecodeError("VertexOutOfRange", f"matching edge {pair!r}")
            if u == w:
                raise DecodeError("MalformedDocument", f"loop matching edge {pair!r}")
            edges.append((u, w))
        matching = one_factor(edges)

    return Solution(v=v, factors=tuple(factors), m=m, r=r, s=s, one_factor=matching)


def encode_solution(sol: Solution) -> bytes:
    doc = solution_to_doc(sol)
    return (json.dumps(doc, sort_keys=True, separators=(",", ":")) + "\n").encode("ascii")


def decode_solution(data: bytes | str) -> Solution:
    try:
        doc = json.loads(data)
    except json.JSONDecodeError as exc:
        raise DecodeError("MalformedDocument", str(exc)) from exc
    return doc_to_solution(doc)
