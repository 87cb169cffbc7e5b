"""Weighted multigraphs with deletion, contraction and component decomposition.

Vertices carry weights in N^k under componentwise addition (k = weight_dim,
fixed per graph).  Loops and parallel edges are allowed everywhere; graphs
are immutable values, so every operation returns a new graph.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

from .errors import ContractLoopError, InputError


@dataclass(frozen=True)
class Weight:
    """Vertex weight: a fixed-length vector of non-negative integers."""

    coords: tuple[int, ...]

    def __post_init__(self):
        if not isinstance(self.coords, tuple):
            object.__setattr__(self, "coords", tuple(self.coords))
        if len(self.coords) < 1:
            raise InputError("weight must have at least one coordinate")
        for c in self.coords:
            if not isinstance(c, int) or c < 0:
                raise InputError(f"weight coordinates must be non-negative integers, got {self.coords}")

    def __add__(self, other: "Weight") -> "Weight":
        if len(self.coords) != len(other.coords):
            raise InputError("cannot add weights of different dimensions")
        return Weight(tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __len__(self) -> int:
        return len(self.coords)


@dataclass(frozen=True)
class ComponentDecomposition:
    """Connected components of a spanning subgraph, with per-component weight sums.

    blocks[i] is a sorted tuple of vertex ids; weights[i] the sum of their
    weights.  Blocks are sorted by smallest member so the decomposition is
    a canonical value.
    """

    blocks: tuple[tuple[str, ...], ...]
    weights: tuple[Weight, ...]

    @property
    def b0(self) -> int:
        return len(self.blocks)


class WeightedGraph:
    """Finite multigraph with integer-vector vertex weights.

    vertices: sequence of (vertex_id, Weight); edges: sequence of
    (edge_id, (end_a, end_b)).  Ids must be unique, endpoints must exist;
    equal endpoints make a loop.
    """

    __slots__ = ("weight_dim", "vertices", "edges", "_vindex", "_eindex")

    def __init__(self, weight_dim, vertices, edges):
        if weight_dim < 1:
            raise InputError("weight_dim must be >= 1")
        vs = []
        vindex = {}
        for vid, w in vertices:
            if not isinstance(w, Weight):
                w = Weight(tuple(w))
            if vid in vindex:
                raise InputError(f"duplicate vertex id {vid!r}")
            if len(w) != weight_dim:
                raise InputError(f"weight of {vid!r} has dimension {len(w)}, expected {weight_dim}")
            vindex[vid] = w
            vs.append((vid, w))
        es = []
        eindex = {}
        for eid, ends in edges:
            a, b = ends
            if eid in eindex:
                raise InputError(f"duplicate edge id {eid!r}")
            if a not in vindex or b not in vindex:
                raise InputError(f"edge {eid!r} references unknown vertex")
            eindex[eid] = (a, b)
            es.append((eid, (a, b)))
        self.weight_dim = weight_dim
        self.vertices = tuple(vs)
        self.edges = tuple(es)
        self._vindex = vindex
        self._eindex = eindex

    # -- lookups -------------------------------------------------------

    def weight_of(self, vid: str) -> Weight:
        try:
            return self._vindex[vid]
        except KeyError:
            raise InputError(f"unknown vertex id {vid!r}") from None

    def ends_of(self, eid: str) -> tuple[str, str]:
        try:
            return self._eindex[eid]
        except KeyError:
            raise InputError(f"unknown edge id {eid!r}") from None

    def has_edge(self, eid: str) -> bool:
        return eid in self._eindex

    def is_loop(self, eid: str) -> bool:
        a, b = self.ends_of(eid)
        return a == b

    def edge_ids(self) -> list[str]:
        return sorted(self._eindex)

    def vertex_ids(self) -> list[str]:
        return sorted(self._vindex)

    @property
    def n_vertices(self) -> int:
        return len(self.vertices)

    @property
    def n_edges(self) -> int:
        return len(self.edges)

    def __eq__(self, other) -> bool:
        if not isinstance(other, WeightedGraph):
            return NotImplemented
        return canonical_encoding(self) == canonical_encoding(other)

    def __hash__(self) -> int:
        return hash(canonical_encoding(self))

    def __repr__(self) -> str:
        return f"WeightedGraph({self.n_vertices} vertices, {self.n_edges} edges, dim {self.weight_dim})"

    # -- minor operations ----------------------------------------------

    def delete_edge(self, eid: str) -> "WeightedGraph":
        """Remove edge eid; vertices and weights are untouched."""
        self.ends_of(eid)
        return WeightedGraph(
            self.weight_dim,
            self.vertices,
            [(e, ends) for e, ends in self.edges if e != eid],
        )

    def contract_edge(self, eid: str) -> "WeightedGraph":
        """Merge the endpoints of non-loop eid into one vertex, adding weights.

        The merged vertex keeps the lexicographically smaller id.  Other
        edges are re-attached; parallel edges and new loops are kept.
        """
        a, b = self.ends_of(eid)
        if a == b:
            raise ContractLoopError(f"edge {eid!r} is a loop; apply the loop rule instead of contracting")
        keep, gone = (a, b) if a < b else (b, a)
        merged = self._vindex[a] + self._vindex[b]
        vertices = [(vid, merged if vid == keep else w) for vid, w in self.vertices if vid != gone]
        edges = []
        for e, (x, y) in self.edges:
            if e == eid:
                continue
            nx = keep if x == gone else x
            ny = keep if y == gone else y
            edges.append((e, (nx, ny)))
        return WeightedGraph(self.weight_dim, vertices, edges)

    def double_edge(self, eid: str, new_eid: str) -> "WeightedGraph":
        """Add a new edge new_eid parallel to eid."""
        ends = self.ends_of(eid)
        if new_eid in self._eindex:
            raise InputError(f"edge id {new_eid!r} already exists")
        return WeightedGraph(self.weight_dim, self.vertices, list(self.edges) + [(new_eid, ends)])

    def components(self, edge_subset) -> ComponentDecomposition:
        """Decompose the spanning subgraph with edge set edge_subset (union-find)."""
        subset = list(edge_subset)
        for e in subset:
            if e not in self._eindex:
                raise InputError(f"unknown edge id {e!r} in subset")
        parent = {vid: vid for vid, _ in self.vertices}

        def find(x):
            root = x
            while parent[root] != root:
                root = parent[root]
            while parent[x] != root:
                parent[x], x = root, parent[x]
            return root

        for e in subset:
            a, b = self._eindex[e]
            ra, rb = find(a), find(b)
            if ra != rb:
                parent[rb] = ra
        blocks: dict[str, list[str]] = {}
        for vid, _ in self.vertices:
            blocks.setdefault(find(vid), []).append(vid)
        ordered = sorted((tuple(sorted(members)) for members in blocks.values()), key=lambda t: t[0])
        weights = []
        for block in ordered:
            w = self._vindex[block[0]]
            for vid in block[1:]:
                w = w + self._vindex[vid]
            weights.append(w)
        return ComponentDecomposition(tuple(ordered), tuple(weights))

    def is_connected(self) -> bool:
        return self.n_vertices <= 1 or self.components(self._eindex).b0 == 1

    def is_tree(self) -> bool:
        return self.n_edges == self.n_vertices - 1 and self.is_connected()


def canonical_encoding(g: WeightedGraph):
    """Hashable exact-form key: sorted weighted vertices + sorted edges with endpoints.

    Two graphs reached along different deletion/contraction orders from the
    same parent encode identically (ids are preserved, merged vertices take
    the smaller id), which is what the memo tables key on.
    """
    return (
        g.weight_dim,
        tuple(sorted((vid, w.coords) for vid, w in g.vertices)),
        tuple(sorted((eid, tuple(sorted(ends))) for eid, ends in g.edges)),
    )


# -- graph families -----------------------------------------------------


def _unit_weights(n: int, weights, dim: int = 1):
    if weights is None:
        return [Weight((1,) * dim) for _ in range(n)]
    ws = [w if isinstance(w, Weight) else Weight(tuple(w) if not isinstance(w, int) else (w,)) for w in weights]
    if len(ws) != n:
        raise InputError(f"expected {n} weights, got {len(ws)}")
    return ws


def line_graph(n: int, weights=None) -> WeightedGraph:
    """Path v1-v2-...-vn with edges e1..e(n-1), labeled left to right."""
    if n < 1:
        raise InputError("line graph needs n >= 1")
    ws = _unit_weights(n, weights)
    dim = len(ws[0])
    vertices = [(f"v{i+1}", ws[i]) for i in range(n)]
    edges = [(f"e{i}", (f"v{i}", f"v{i+1}")) for i in range(1, n)]
    return WeightedGraph(dim, vertices, edges)


def cycle_graph(n: int, weights=None) -> WeightedGraph:
    """Polygon on n vertices: path edges e1..e(n-1) plus closing edge en (vn-v1).

    n=1 is a single vertex with a loop e1.
    """
    if n < 1:
        raise InputError("cycle graph needs n >= 1")
    ws = _unit_weights(n, weights)
    dim = len(ws[0])
    vertices = [(f"v{i+1}", ws[i]) for i in range(n)]
    edges = [(f"e{i}", (f"v{i}", f"v{i+1}")) for i in range(1, n)]
    edges.append((f"e{n}", (f"v{n}", "v1")))
    return WeightedGraph(dim, vertices, edges)


def banana_graph(m: int, c1: int = 1, c2: int = 2) -> WeightedGraph:
    """Two vertices with weights (c1,) and (c2,) joined by m+1 parallel edges.

    c1 != c2, both positive, so x_{c1}, x_{c2} and x_{c1+c2} stay three
    distinct variables and the ambient dimension is m+4.
    """
    if m < 0:
        raise InputError("banana index m must be >= 0")
    if c1 <= 0 or c2 <= 0 or c1 == c2:
        raise InputError("banana weights must be positive and distinct")
    vertices = [("v1", Weight((c1,))), ("v2", Weight((c2,)))]
    edges = [(f"e{i+1}", ("v1", "v2")) for i in range(m + 1)]
    return WeightedGraph(1, vertices, edges)


def full_binary_tree(depth: int, leaf_weights=None, internal_weight: int = 1) -> WeightedGraph:
    """Complete binary tree with 2**depth leaves, ids breadth-first from the root.

    depth counts edge levels: depth 0 is a single vertex (one leaf, no
    internal nodes).  Vertex vj (j >= 2) hangs from v(j//2) via edge e(j-1).
    leaf_weights, if given, are single integers listed left to right.
    """
    if depth < 0:
        raise InputError("depth must be >= 0")
    n_total = 2 ** (depth + 1) - 1
    n_leaves = 2 ** depth
    first_leaf = n_total - n_leaves + 1
    if leaf_weights is None:
        leaf_weights = [1] * n_leaves
    if len(leaf_weights) != n_leaves:
        raise InputError(f"expected {n_leaves} leaf weights, got {len(leaf_weights)}")
    vertices = []
    for j in range(1, n_total + 1):
        if j >= first_leaf:
            w = leaf_weights[j - first_leaf]
        else:
            w = internal_weight
        vertices.append((f"v{j}", Weight((w,))))
    edges = [(f"e{j-1}", (f"v{j//2}", f"v{j}")) for j in range(2, n_total + 1)]
    return WeightedGraph(1, vertices, edges)


def one_plus_1_over_n_tree(n: int, internal_nodes: int, leaf_weights=None,
                           internal_weight: int = 1) -> WeightedGraph:
    """Caterpillar representative of the (1+1/n)-ary family.

    Internal nodes form a spine v1->v2->...->vI rooted at v1; exactly
    ceil(I/n) of them branch (spine positions 1, n+1, 2n+1, ...), each
    carrying one extra leaf child; the spine ends in a leaf.  Leaf count is
    ceil(I/n) + 1.  There are many non-isomorphic trees with these counts;
    this evenly-spaced one is the canonical choice here.
    """
    if n < 1 or internal_nodes < 1:
        raise InputError("need n >= 1 and internal_nodes >= 1")
    spine = internal_nodes
    branching = {k * n + 1 for k in range(math.ceil(spine / n))}
    n_leaves = len(branching) + 1
    if leaf_weights is None:
        leaf_weights = [1] * n_leaves
    if len(leaf_weights) != n_leaves:
        raise InputError(f"expected {n_leaves} leaf weights, got {len(leaf_weights)}")
    vertices = [(f"v{i}", Weight((internal_weight,))) for i in range(1, spine + 1)]
    edges = [(f"e{i-1}", (f"v{i-1}", f"v{i}")) for i in range(2, spine + 1)]
    next_id = spine + 1
    leaf_iter = iter(leaf_weights)
    # spine tail leaf first, then one leaf per branching node in spine order
    attach = [spine] + sorted(branching)
    for host in attach:
        vid = f"v{next_id}"
        vertices.append((vid, Weight((next(leaf_iter),))))
        edges.append((f"e{next_id-1}", (f"v{host}", vid)))
        next_id += 1
    return WeightedGraph(1, vertices, edges)


def build_family(family: str, **kwargs) -> WeightedGraph:
    """Dispatch to a named family builder: line, cycle, banana, full_binary_tree, one_plus_1_over_n_tree."""
    builders = {
        "line": line_graph,
        "cycle": cycle_graph,
        "banana": banana_graph,
        "full_binary_tree": full_binary_tree,
        "one_plus_1_over_n_tree": one_plus_1_over_n_tree,
    }
    try:
        builder = builders[family]
    except KeyError:
        raise InputError(f"unknown family {family!r}; expected one of {sorted(builders)}") from None
    return builder(**kwargs)


# -- JSON wire format ----------------------------------------------------


def graph_to_dict(g: WeightedGraph) -> dict:
    return {
        "weight_dim": g.weight_dim,
        "vertices": [{"id": vid, "weight": list(w.coords)} for vid, w in sorted(g.vertices)],
        "edges": [{"id": eid, "ends": list(ends)} for eid, ends in sorted(g.edges)],
    }


def graph_from_dict(d: dict) -> WeightedGraph:
    try:
        dim = d["weight_dim"]
        vertices = [(v["id"], Weight(tuple(v["weight"]))) for v in d["vertices"]]
        edges = [(e["id"], (e["ends"][0], e["ends"][1])) for e in d["edges"]]
    except (KeyError, TypeError, IndexError) as exc:
        raise InputError(f"malformed graph JSON: {exc}") from None
    return WeightedGraph(dim, vertices, edges)


def graph_to_json(g: WeightedGraph) -> str:
    """Byte-stable serialization: sorted ids, sorted keys, compact separators."""
    return json.dumps(graph_to_dict(g), sort_keys=True, separators=(",", ":"))


def graph_from_json(text: str) -> WeightedGraph:
    try:
        d = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"invalid JSON: {exc}") from None
    return graph_from_dict(d)
