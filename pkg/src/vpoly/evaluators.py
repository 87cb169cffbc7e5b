"""Point evaluation without full expansion.

eval_generic recurses with memoized scalar deletion/contraction and is the
oracle the structured evaluators are tested against: the quadratic
line-graph dynamic program, the cubic polygon reduction, and a
pseudo-polynomial tree DP indexed by accumulated component weight.  On top
of the tree DP sits the half-partition gadget: a weighted full binary tree
plus a 0/1 point whose value is positive exactly when the input multiset
splits into two halves of equal sum.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import CapExceededError, EvaluationError, InputError
from .graph_model import Weight, WeightedGraph, canonical_encoding, full_binary_tree
from .multipoly import Assignment, xvar_key
from .vpolynomial import DEFAULT_EDGE_CAP

GENERIC_EDGE_CAP = 30
TREE_WEIGHT_CAP = 10 ** 6


@dataclass
class OpCounter:
    """Tracks ring multiplications performed by an evaluator."""

    mul: int = 0


class _Ring:
    """Arithmetic in the assignment's ring with optional mult counting."""

    __slots__ = ("a", "p", "counter")

    def __init__(self, a: Assignment, counter: OpCounter | None = None):
        self.a = a
        self.p = a.ring[1] if isinstance(a.ring, tuple) else None
        self.counter = counter

    def zero(self):
        return self.a.coerced(0)

    def one(self):
        return self.a.coerced(1)

    def t(self, edge_id):
        return self.a.coerced(self.a.t_value(edge_id))

    def x(self, coords):
        return self.a.coerced(self.a.x_value(coords))

    def add(self, u, v):
        return (u + v) % self.p if self.p else u + v

    def mul(self, u, v):
        if self.counter is not None:
            self.counter.mul += 1
        return (u * v) % self.p if self.p else u * v


def _check_float(a: Assignment, value):
    if a.ring == "float" and not math.isfinite(value):
        raise EvaluationError("non-finite result in float evaluation")
    return value


# -- generic scalar recursion ---------------------------------------------


def eval_generic(g: WeightedGraph, a: Assignment, max_edges: int = GENERIC_EDGE_CAP):
    """Memoized scalar deletion/contraction; equals evaluating the full
    expansion wherever that expansion is feasible."""
    if g.n_edges > max_edges:
        raise CapExceededError(f"eval_generic capped at {max_edges} edges, got {g.n_edges}")
    r = _Ring(a)
    memo: dict = {}

    def rec(h: WeightedGraph):
        if h.n_edges == 0:
            out = r.one()
            for _, w in h.vertices:
                out = r.mul(out, r.x(w.coords))
            return out
        key = canonical_encoding(h)
        hit = memo.get(key)
        if hit is not None:
            return hit
        e = h.edge_ids()[0]
        te = r.t(e)
        if h.is_loop(e):
            out = r.mul(r.add(te, r.one()), rec(h.delete_edge(e)))
        else:
            out = r.add(rec(h.delete_edge(e)), r.mul(te, rec(h.contract_edge(e))))
        memo[key] = out
        return out

    return _check_float(a, rec(g))


# -- line and polygon DPs ----------------------------------------------------


def _normalize_weights(n, weights):
    out = []
    for w in weights:
        if isinstance(w, Weight):
            out.append(w)
        elif isinstance(w, int):
            out.append(Weight((w,)))
        else:
            out.append(Weight(tuple(w)))
    if len(out) != n:
        raise InputError(f"expected {n} weights, got {len(out)}")
    return out


def eval_line(n: int, weights, a: Assignment, counter: OpCounter | None = None):
    """Quadratic DP for the path v1..vn with edges e1..e(n-1).

    A component spanning vertices i..j contributes x[sum of their weights]
    times the product of t over its internal edges e_i..e_(j-1); summing
    over the first component and recursing backward gives V_j in n-j steps.
    """
    if n < 1:
        raise InputError("line graph needs n >= 1")
    ws = _normalize_weights(n, weights)
    r = _Ring(a, counter)
    v_next = [r.zero()] * (n + 2)
    v_next[n + 1] = r.one()
    for j in range(n, 0, -1):
        acc = r.zero()
        tprod = r.one()
        csum = ws[j - 1]
        for i in range(j, n + 1):
            if i > j:
                tprod = r.mul(tprod, r.t(f"e{i-1}"))
                csum = csum + ws[i - 1]
            chi = r.mul(tprod, r.x(csum.coords))
            acc = r.add(acc, r.mul(chi, v_next[i + 1]))
        v_next[j] = acc
    return _check_float(a, v_next[1])


def eval_cycle(n: int, weights, a: Assignment, counter: OpCounter | None = None):
    """Cubic reduction for the polygon: deleting the closing edge leaves a
    line, contracting it leaves the next smaller polygon with merged end
    weights; a single loop remains at the bottom."""
    if n < 1:
        raise InputError("cycle graph needs n >= 1")
    ws = _normalize_weights(n, weights)
    r = _Ring(a, counter)
    result = r.zero()
    prefix = r.one()
    cur = list(ws)
    for k in range(n, 1, -1):
        result = r.add(result, r.mul(prefix, eval_line(k, cur, a, counter)))
        prefix = r.mul(prefix, r.t(f"e{k}"))
        cur = [cur[0] + cur[k - 1]] + cur[1:k - 1]
    loop_val = r.mul(r.add(r.t("e1"), r.one()), r.x(cur[0].coords))
    result = r.add(result, r.mul(prefix, loop_val))
    return _check_float(a, result)


def as_line(g: WeightedGraph):
    """Check g is the canonical line family; return (n, weights)."""
    n = g.n_vertices
    if g.vertex_ids() != sorted(f"v{i}" for i in range(1, n + 1)):
        raise InputError("not a canonical line graph: vertex ids must be v1..vn")
    expected = {f"e{i}": {f"v{i}", f"v{i+1}"} for i in range(1, n)}
    actual = {eid: set(ends) for eid, ends in g.edges}
    if actual != expected:
        raise InputError("not a canonical line graph: edges must be e_i = (v_i, v_i+1)")
    return n, [g.weight_of(f"v{i}") for i in range(1, n + 1)]


def as_cycle(g: WeightedGraph):
    """Check g is the canonical polygon family; return (n, weights)."""
    n = g.n_vertices
    if g.vertex_ids() != sorted(f"v{i}" for i in range(1, n + 1)):
        raise InputError("not a canonical cycle graph: vertex ids must be v1..vn")
    expected = {f"e{i}": {f"v{i}", f"v{i+1}"} for i in range(1, n)}
    expected[f"e{n}"] = {f"v{n}", "v1"}
    actual = {eid: set(ends) for eid, ends in g.edges}
    if actual != expected:
        raise InputError("not a canonical cycle graph")
    return n, [g.weight_of(f"v{i}") for i in range(1, n + 1)]


# -- tree DP ----------------------------------------------------------------


def _rooted_children(g: WeightedGraph, root: str):
    """Children lists (child, edge_id) of a tree rooted at root, plus a
    post-order vertex list."""
    adj: dict[str, list] = {vid: [] for vid, _ in g.vertices}
    for eid, (u, v) in g.edges:
        adj[u].append((v, eid))
        adj[v].append((u, eid))
    children: dict[str, list] = {vid: [] for vid, _ in g.vertices}
    order = []
    stack = [(root, None)]
    seen = {root}
    while stack:
        v, _ = stack[-1]
        advanced = False
        for u, eid in adj[v]:
            if u not in seen:
                seen.add(u)
                children[v].append((u, eid))
                stack.append((u, eid))
                advanced = True
                break
        if not advanced:
            order.append(v)
            stack.pop()
    return children, order


def eval_tree(g: WeightedGraph, a: Assignment, root: str | None = None):
    """Pseudo-polynomial DP over states (node, weight of the open component
    containing it).

    Each child edge is either included (multiply by t, merge weights) or
    excluded (close the child component against its x value); the root
    component closes last.  Weights must be one-dimensional; the state
    space is #nodes x total weight.
    """
    if g.weight_dim != 1:
        raise InputError("tree DP requires weight_dim = 1")
    if not g.is_tree():
        raise InputError("input is not a tree")
    total = sum(w.coords[0] for _, w in g.vertices)
    if total > TREE_WEIGHT_CAP:
        raise CapExceededError(f"total weight {total} exceeds tree DP cap {TREE_WEIGHT_CAP}")
    if root is None:
        root = g.vertex_ids()[0]
    elif root not in set(g.vertex_ids()):
        raise InputError(f"unknown root {root!r}")
    r = _Ring(a)
    children, order = _rooted_children(g, root)
    dp: dict[str, dict[int, object]] = {}
    for v in order:
        table = {g.weight_of(v).coords[0]: r.one()}
        for child, eid in children[v]:
            ctab = dp.pop(child)
            closed = r.zero()
            for wc, cval in ctab.items():
                closed = r.add(closed, r.mul(cval, r.x((wc,))))
            te = r.t(eid)
            merged: dict[int, object] = {}
            for wv, val in table.items():
                merged[wv] = r.mul(val, closed)
            for wv, val in table.items():
                vt = r.mul(val, te)
                for wc, cval in ctab.items():
                    key = wv + wc
                    inc = r.mul(vt, cval)
                    merged[key] = r.add(merged[key], inc) if key in merged else inc
            table = merged
        dp[v] = table
    result = r.zero()
    for w, val in dp[root].items():
        result = r.add(result, r.mul(val, r.x((w,))))
    return _check_float(a, result)


# -- half-partition gadget -----------------------------------------------------


@dataclass
class GadgetInstance:
    """A weighted rooted tree plus the 0/1 point used by the half-partition
    reduction."""

    tree: WeightedGraph
    root: str
    point: Assignment
    source_set: tuple[int, ...]
    target: int
    internal_weight: int

    @property
    def tree_size(self) -> int:
        return self.tree.n_vertices


def _validate_source_set(S):
    items = list(S)
    for s in items:
        if not isinstance(s, int) or s <= 0:
            raise InputError(f"source set must contain positive integers, got {s!r}")
    return items


def _gadget_point(S, internal_weight: int, target: int, n_internal: int) -> Assignment:
    values = {}
    for s in set(S):
        values[xvar_key((s,))] = 1
    values[xvar_key((0,))] = 1
    for m in range(1, n_internal + 1):
        values[xvar_key((m * internal_weight + target,))] = 1
    return Assignment("int", values, default_t=1, default_x=0)


def build_partition_gadget(S) -> GadgetInstance:
    """Full binary tree instance deciding whether S splits into equal halves.

    The first |S| leaves carry the elements, spare leaves carry 0, internal
    nodes carry 3M/2 (M = sum of S, required even); the point sets every t
    to 1 and x to 1 exactly on the element weights, on 0, and on
    m*(3M/2) + M/2 for m up to the internal node count.
    """
    items = _validate_source_set(S)
    if len(items) < 2:
        raise InputError("gadget needs at least 2 elements")
    M = sum(items)
    if M % 2:
        raise InputError(f"total {M} is odd; no half-partition can exist")
    depth = max(1, math.ceil(math.log2(len(items))))
    n_leaves = 2 ** depth
    internal_weight = (3 * M) // 2
    target = M // 2
    leaf_weights = items + [0] * (n_leaves - len(items))
    tree = full_binary_tree(depth, leaf_weights, internal_weight)
    n_internal = n_leaves - 1
    point = _gadget_point(items, internal_weight, target, n_internal)
    return GadgetInstance(tree, "v1", point, tuple(sorted(items)), target, internal_weight)


def build_partition_gadget_general(S, host: WeightedGraph, root: str = "v1") -> GadgetInstance:
    """Apply the gadget weighting and point to an arbitrary rooted host tree."""
    items = _validate_source_set(S)
    if len(items) < 2:
        raise InputError("gadget needs at least 2 elements")
    M = sum(items)
    if M % 2:
        raise InputError(f"total {M} is odd; no half-partition can exist")
    if not host.is_tree():
        raise InputError("host must be a tree")
    children, _ = _rooted_children(host, root)
    leaves = sorted(v for v, kids in children.items() if not kids)
    if len(leaves) < len(items):
        raise InputError(f"host has {len(leaves)} leaves, need at least {len(items)}")
    internal_weight = (3 * M) // 2
    target = M // 2
    assigned = dict(zip(leaves, items))
    vertices = []
    for vid, _ in host.vertices:
        if vid in assigned:
            w = assigned[vid]
        elif not children[vid]:
            w = 0
        else:
            w = internal_weight
        vertices.append((vid, Weight((w,))))
    tree = WeightedGraph(1, vertices, host.edges)
    n_internal = host.n_vertices - len(leaves)
    point = _gadget_point(items, internal_weight, target, n_internal)
    return GadgetInstance(tree, root, point, tuple(sorted(items)), target, internal_weight)


def subset_sum_half_oracle(S) -> bool:
    """Independent bitset subset-sum check for an equal split."""
    items = _validate_source_set(S)
    M = sum(items)
    if M % 2:
        return False
    bits = 1
    for s in items:
        bits |= bits << s
    return bool((bits >> (M // 2)) & 1)


def decide_half_partition(S) -> bool:
    """True iff S splits into two parts of equal sum, decided by evaluating
    the gadget tree (odd totals and singletons short-circuit to False)."""
    items = _validate_source_set(S)
    if not items:
        return True
    M = sum(items)
    if M % 2 or len(items) == 1:
        return False
    inst = build_partition_gadget(items)
    return eval_tree(inst.tree, inst.point, root=inst.root) > 0


# -- physical partition function -------------------------------------------------


def _as_map(spec, keys, what):
    if isinstance(spec, dict):
        missing = [k for k in keys if k not in spec]
        if missing:
            raise InputError(f"missing {what} for {missing}")
        return {k: float(spec[k]) for k in keys}
    return {k: float(spec) for k in keys}


def physical_partition_function(g: WeightedGraph, beta: float, J, M,
                                max_edges: int = DEFAULT_EDGE_CAP) -> float:
    """Statistical partition function with couplings J per edge and field M
    per vertex: a float sum over edge subsets with per-component factors
    sum_v exp(-beta*M_v) and per-edge factors exp(-beta*J_e) - 1.

    J and M may be dicts keyed by id or uniform scalars.
    """
    if g.n_edges > max_edges:
        raise CapExceededError(f"physical sum capped at {max_edges} edges, got {g.n_edges}")
    eids = g.edge_ids()
    vids = [vid for vid, _ in g.vertices]
    jmap = _as_map(J, eids, "coupling")
    mmap = _as_map(M, vids, "field")
    try:
        tvals = [math.exp(-beta * jmap[e]) - 1.0 for e in eids]
        boltz = {vid: math.exp(-beta * mmap[vid]) for vid in vids}
    except OverflowError:
        raise EvaluationError("Boltzmann factor overflow") from None
    vidx = {vid: i for i, vid in enumerate(vids)}
    ends = [(vidx[a], vidx[b]) for a, b in (g.ends_of(e) for e in eids)]
    n = len(vids)
    m = len(eids)
    parent = list(range(n))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    total = 0.0
    for mask in range(1 << m):
        for i in range(n):
            parent[i] = i
        tfact = 1.0
        for j in range(m):
            if mask >> j & 1:
                tfact *= tvals[j]
                ra, rb = find(ends[j][0]), find(ends[j][1])
                if ra != rb:
                    parent[rb] = ra
        comp_x: dict[int, float] = {}
        for i in range(n):
            r_ = find(i)
            comp_x[r_] = comp_x.get(r_, 0.0) + boltz[vids[i]]
        term = tfact
        for xval in comp_x.values():
            term *= xval
        total += term
        if not math.isfinite(total):
            raise EvaluationError("non-finite intermediate in partition function")
    return total


def physical_via_symbolic(g: WeightedGraph, beta: float, J, M,
                          max_edges: int = DEFAULT_EDGE_CAP) -> float:
    """Cross-check route: re-weight vertices with unit basis vectors, expand
    the polynomial once, then substitute the thermodynamic point."""
    from .multipoly import evaluate, xvar_key
    from .vpolynomial import fk_polynomial

    vids = [vid for vid, _ in g.vertices]
    n = len(vids)
    unit = lambda i: tuple(1 if k == i else 0 for k in range(n))
    reweighted = WeightedGraph(n, [(vid, Weight(unit(i))) for i, vid in enumerate(vids)], g.edges)
    poly = fk_polynomial(reweighted, max_edges)
    jmap = _as_map(J, g.edge_ids(), "coupling")
    mmap = _as_map(M, vids, "field")
    values = {}
    try:
        for vk in poly.variables():
            if vk.kind == "t":
                values[vk] = math.exp(-beta * jmap[vk.key]) - 1.0
            else:
                values[vk] = sum(math.exp(-beta * mmap[vids[i]]) for i, c in enumerate(vk.key) if c)
    except OverflowError:
        raise EvaluationError("Boltzmann factor overflow") from None
    return evaluate(poly, Assignment("float", values))
