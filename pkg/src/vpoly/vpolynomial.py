"""The two independent constructions of a graph's partition-function polynomial.

fk_polynomial expands the sum over all edge subsets directly (one monomial
per subset, coefficient 1); dc_polynomial recurses with the
deletion/contraction/loop rules.  They must agree on every graph; the test
suite leans on that pair as a dual route.
"""

from __future__ import annotations

from .errors import CapExceededError, InputError
from .graph_model import WeightedGraph
from .multipoly import MultiPoly, tvar_key, xvar_key

DEFAULT_EDGE_CAP = 20


def _check_cap(g: WeightedGraph, max_edges: int):
    if g.n_edges > max_edges:
        raise CapExceededError(
            f"graph has {g.n_edges} edges; full expansion capped at {max_edges} "
            f"(2^{g.n_edges} terms)")


def _xpart(weight_list) -> tuple:
    """Sorted x-factors with merged exponents from a list of weight tuples."""
    ws = sorted(weight_list)
    out = []
    i = 0
    n = len(ws)
    while i < n:
        j = i + 1
        while j < n and ws[j] == ws[i]:
            j += 1
        out.append((xvar_key(ws[i]), j - i))
        i = j
    return tuple(out)


def fk_polynomial(g: WeightedGraph, max_edges: int = DEFAULT_EDGE_CAP) -> MultiPoly:
    """Sum over edge subsets A of prod x[component weight] * prod_{e in A} t[e]."""
    _check_cap(g, max_edges)
    n = g.n_vertices
    vidx = {vid: i for i, (vid, _) in enumerate(g.vertices)}
    coords = [w.coords for _, w in g.vertices]
    eids = g.edge_ids()
    ends = [(vidx[a], vidx[b]) for a, b in (g.ends_of(e) for e in eids)]
    tpairs = [(tvar_key(e), 1) for e in eids]
    m = len(eids)
    terms: dict = {}
    parent = list(range(n))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for mask in range(1 << m):
        for i in range(n):
            parent[i] = i
        tpart = []
        for j in range(m):
            if mask >> j & 1:
                tpart.append(tpairs[j])
                ra, rb = find(ends[j][0]), find(ends[j][1])
                if ra != rb:
                    parent[rb] = ra
        sums: dict[int, tuple] = {}
        for i in range(n):
            r = find(i)
            w = sums.get(r)
            sums[r] = coords[i] if w is None else tuple(a + b for a, b in zip(w, coords[i]))
        # edge ids are enumerated in sorted order, so tpart is already canonical
        mono = tuple(tpart) + _xpart(list(sums.values()))
        terms[mono] = terms.get(mono, 0) + 1
    return MultiPoly._from_terms(terms)


def _times_tvar(tk, terms: dict) -> dict:
    """Multiply a term dict by a t-variable that occurs in none of its
    monomials: insert the factor at its sorted position, no collisions."""
    sk = tk.sort_key()
    pair = (tk, 1)
    out = {}
    for mono, c in terms.items():
        i = 0
        n = len(mono)
        while i < n and mono[i][0].sort_key() < sk:
            i += 1
        out[mono[:i] + (pair,) + mono[i:]] = c
    return out


def dc_polynomial(g: WeightedGraph, max_edges: int = DEFAULT_EDGE_CAP,
                  pick=None, _memo=None) -> MultiPoly:
    """Recursive construction: delete/contract on non-loops, the (t+1) loop
    rule, and the product of x[weight] over isolated vertices at the base.

    pick, if given, chooses the edge to split on from the sorted edge id
    list (used to test order independence); default takes the first.
    Subgraph results are memoized per call, keyed by the exact encoding
    (ids and weights preserved, merged vertices named by the smaller id),
    so repeated minors along different orders are shared.  The recursion
    runs on compact tuple states, and because the split variable t_e never
    occurs in either branch, each step is a disjoint dict union.
    """
    _check_cap(g, max_edges)
    memo = {} if _memo is None else _memo
    if pick is None:
        pick = lambda eids: eids[0]

    # state: (sorted (vid, coords) tuples, (eid, lo, hi) tuples sorted by eid)
    vs0 = tuple(sorted((vid, w.coords) for vid, w in g.vertices))
    es0 = tuple(sorted((eid, *sorted(ends)) for eid, ends in g.edges))

    def rec(vs, es, depth):
        if depth > 10 * max_edges + 64:
            raise CapExceededError("deletion-contraction recursion depth cap exceeded")
        if not es:
            return MultiPoly._from_terms({_xpart([c for _, c in vs]): 1})
        key = (vs, es)
        hit = memo.get(key)
        if hit is not None:
            return hit
        eid = pick([e[0] for e in es])
        pos = next(i for i, e in enumerate(es) if e[0] == eid)
        _, a, b = es[pos]
        es_del = es[:pos] + es[pos + 1:]
        tk = tvar_key(eid)
        if a == b:
            sub = rec(vs, es_del, depth + 1).terms
            out_terms = dict(sub)
            out_terms.update(_times_tvar(tk, sub))
        else:
            # contract: merged vertex keeps the smaller id a, weights add
            wa = wb = None
            nvs = []
            for vid, c in vs:
                if vid == a:
                    wa = c
                elif vid == b:
                    wb = c
                else:
                    nvs.append((vid, c))
            nvs.append((a, tuple(p + q for p, q in zip(wa, wb))))
            nvs.sort()
            nes = []
            for eid2, x, y in es_del:
                if x == b:
                    x = a
                if y == b:
                    y = a
                nes.append((eid2, x, y) if x <= y else (eid2, y, x))
            out_terms = dict(rec(vs, es_del, depth + 1).terms)
            out_terms.update(_times_tvar(tk, rec(tuple(nvs), tuple(nes), depth + 1).terms))
        out = MultiPoly._from_terms(out_terms)
        memo[key] = out
        return out

    return rec(vs0, es0, 0)


def doubled_edge_polynomial(g: WeightedGraph, e: str, f: str,
                            max_edges: int = DEFAULT_EDGE_CAP) -> MultiPoly:
    """Polynomial of the graph with e doubled by a new parallel edge f,
    assembled as V(delete e) + (t_e + t_f + t_e*t_f) * V(contract e).

    Equals fk_polynomial(g.double_edge(e, f)); symmetric under swapping
    e and f.
    """
    ends = g.ends_of(e)
    if ends[0] == ends[1]:
        raise InputError(f"edge {e!r} is a loop; the doubling identity needs a non-loop edge")
    te, tf = MultiPoly.tvar(e), MultiPoly.tvar(f)
    coupling = te + tf + te * tf
    return fk_polynomial(g.delete_edge(e), max_edges) + \
        coupling * fk_polynomial(g.contract_edge(e), max_edges)
