"""Exact sparse polynomials over Z in edge variables t[e] and weight variables x[s].

Monomials are sorted (VarKey, exponent) tuples; coefficients are arbitrary
precision Python ints.  The canonical term order is graded-lex on the
VarKey order (all t-keys before all x-keys), which fixes the text and JSON
forms used by the fixtures.
"""

from __future__ import annotations

import json
import math
import re
from fractions import Fraction

from .errors import EvaluationError, InputError


class VarKey:
    """A variable: kind 't' keyed by an edge id, kind 'x' keyed by a weight
    vector.  All t-keys sort before all x-keys; instances are interned via
    tvar_key / xvar_key, and hash and sort key are precomputed (these sit
    on the hot path of the subset expansion)."""

    __slots__ = ("kind", "key", "_sk", "_hash")

    def __init__(self, kind: str, key):
        if kind == "t":
            if not isinstance(key, str):
                raise InputError("t-variable key must be an edge id string")
            sk = (0, key)
        elif kind == "x":
            if not isinstance(key, tuple) or not all(isinstance(c, int) for c in key):
                raise InputError("x-variable key must be a tuple of ints")
            sk = (1, key)
        else:
            raise InputError(f"unknown variable kind {kind!r}")
        self.kind = kind
        self.key = key
        self._sk = sk
        self._hash = hash(sk)

    def sort_key(self):
        return self._sk

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, VarKey):
            return NotImplemented
        return self._sk == other._sk

    def __hash__(self):
        return self._hash

    def __lt__(self, other: "VarKey") -> bool:
        return self._sk < other._sk

    def render(self) -> str:
        if self.kind == "t":
            return f"t[{self.key}]"
        return "x[" + ",".join(str(c) for c in self.key) + "]"

    def __repr__(self):
        return f"VarKey({self.kind!r}, {self.key!r})"


_TCACHE: dict = {}
_XCACHE: dict = {}


def tvar_key(edge_id: str) -> VarKey:
    vk = _TCACHE.get(edge_id)
    if vk is None:
        vk = _TCACHE[edge_id] = VarKey("t", edge_id)
    return vk


def xvar_key(coords) -> VarKey:
    if isinstance(coords, int):
        coords = (coords,)
    elif not isinstance(coords, tuple):
        coords = tuple(coords)
    vk = _XCACHE.get(coords)
    if vk is None:
        vk = _XCACHE[coords] = VarKey("x", coords)
    return vk


def _monomial_sort_key(mono):
    degree = sum(e for _, e in mono)
    return (degree, tuple((vk.sort_key(), e) for vk, e in mono))


def _mul_monomials(m1, m2):
    # merge-join of two sorted (VarKey, exp) tuples
    out = []
    i = j = 0
    while i < len(m1) and j < len(m2):
        k1, e1 = m1[i]
        k2, e2 = m2[j]
        if k1 == k2:
            out.append((k1, e1 + e2))
            i += 1
            j += 1
        elif k1 < k2:
            out.append((k1, e1))
            i += 1
        else:
            out.append((k2, e2))
            j += 1
    out.extend(m1[i:])
    out.extend(m2[j:])
    return tuple(out)


class MultiPoly:
    """Sparse polynomial: dict from canonical monomial to nonzero int coefficient."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms = dict(terms) if terms else {}

    # -- constructors ----------------------------------------------------

    @staticmethod
    def _from_terms(terms: dict) -> "MultiPoly":
        # internal: adopt the dict without copying (hot construction paths)
        p = MultiPoly.__new__(MultiPoly)
        p.terms = terms
        return p

    @staticmethod
    def zero() -> "MultiPoly":
        return MultiPoly()

    @staticmethod
    def const(c: int) -> "MultiPoly":
        return MultiPoly({(): c}) if c else MultiPoly()

    @staticmethod
    def one() -> "MultiPoly":
        return MultiPoly.const(1)

    @staticmethod
    def var(vk: VarKey) -> "MultiPoly":
        return MultiPoly({((vk, 1),): 1})

    @staticmethod
    def tvar(edge_id: str) -> "MultiPoly":
        return MultiPoly.var(tvar_key(edge_id))

    @staticmethod
    def xvar(coords) -> "MultiPoly":
        return MultiPoly.var(xvar_key(coords))

    @staticmethod
    def monomial(vars_and_exps, coeff: int = 1) -> "MultiPoly":
        """Build coeff * prod v^e from an iterable of (VarKey, exp)."""
        if coeff == 0:
            return MultiPoly()
        merged: dict[VarKey, int] = {}
        for vk, e in vars_and_exps:
            if e < 0:
                raise InputError("exponents must be non-negative")
            if e:
                merged[vk] = merged.get(vk, 0) + e
        mono = tuple(sorted(merged.items(), key=lambda p: p[0].sort_key()))
        return MultiPoly({mono: coeff})

    # -- ring operations ---------------------------------------------------

    def __add__(self, other):
        other = _coerce(other)
        out = dict(self.terms)
        for mono, c in other.terms.items():
            nc = out.get(mono, 0) + c
            if nc:
                out[mono] = nc
            else:
                out.pop(mono, None)
        return MultiPoly(out)

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly({m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-_coerce(other))

    def __rsub__(self, other):
        return _coerce(other) + (-self)

    def __mul__(self, other):
        other = _coerce(other)
        out: dict = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                mono = _mul_monomials(m1, m2)
                nc = out.get(mono, 0) + c1 * c2
                if nc:
                    out[mono] = nc
                else:
                    out.pop(mono, None)
        return MultiPoly(out)

    __rmul__ = __mul__

    def scale(self, c: int) -> "MultiPoly":
        if c == 0:
            return MultiPoly()
        return MultiPoly({m: c * k for m, k in self.terms.items()})

    def __pow__(self, n: int) -> "MultiPoly":
        if n < 0:
            raise InputError("negative power")
        result = MultiPoly.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base if n > 1 else base
            n >>= 1
        return result

    def __eq__(self, other) -> bool:
        if not isinstance(other, MultiPoly):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def is_zero(self) -> bool:
        return not self.terms

    def __len__(self) -> int:
        return len(self.terms)

    # -- structure ---------------------------------------------------------

    def variables(self) -> list[VarKey]:
        """Sorted list of variables with a nonzero occurrence (the ambient space)."""
        seen = {vk for mono in self.terms for vk, _ in mono}
        return sorted(seen, key=lambda v: v.sort_key())

    def degree_in(self, vk: VarKey) -> int:
        deg = 0
        for mono in self.terms:
            for k, e in mono:
                if k == vk and e > deg:
                    deg = e
        return deg

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda kv: _monomial_sort_key(kv[0]))

    # -- rendering -----------------------------------------------------------

    def render(self) -> str:
        """Canonical text: graded-lex term order, '*' products, '^' powers."""
        if not self.terms:
            return "0"
        parts = []
        for mono, coeff in self.sorted_terms():
            factors = []
            for vk, e in mono:
                factors.append(vk.render() if e == 1 else f"{vk.render()}^{e}")
            mag = abs(coeff)
            if not factors:
                body = str(mag)
            elif mag == 1:
                body = "*".join(factors)
            else:
                body = str(mag) + "*" + "*".join(factors)
            parts.append((coeff < 0, body))
        out = []
        for i, (neg, body) in enumerate(parts):
            if i == 0:
                out.append(("-" if neg else "") + body)
            else:
                out.append((" - " if neg else " + ") + body)
        return "".join(out)

    def __repr__(self):
        return f"MultiPoly({self.render()})"

    # -- JSON wire format -----------------------------------------------------

    def to_dict(self) -> dict:
        terms = []
        for mono, coeff in self.sorted_terms():
            vars_ = []
            for vk, e in mono:
                key = vk.key if vk.kind == "t" else list(vk.key)
                vars_.append({"kind": vk.kind, "key": key, "exp": e})
            terms.append({"coeff": str(coeff), "vars": vars_})
        return {"terms": terms}

    @staticmethod
    def from_dict(d: dict) -> "MultiPoly":
        try:
            out = MultiPoly()
            for term in d["terms"]:
                coeff = int(term["coeff"])
                vars_ = [(VarKey(v["kind"], v["key"] if v["kind"] == "t" else tuple(v["key"])), v["exp"])
                         for v in term["vars"]]
                out = out + MultiPoly.monomial(vars_, coeff)
            return out
        except (KeyError, TypeError, ValueError) as exc:
            raise InputError(f"malformed polynomial JSON: {exc}") from None

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, separators=(",", ":"))

    @staticmethod
    def from_json(text: str) -> "MultiPoly":
        try:
            return MultiPoly.from_dict(json.loads(text))
        except json.JSONDecodeError as exc:
            raise InputError(f"invalid JSON: {exc}") from None


def _coerce(v) -> MultiPoly:
    if isinstance(v, MultiPoly):
        return v
    if isinstance(v, int):
        return MultiPoly.const(v)
    raise InputError(f"cannot coerce {type(v).__name__} into a polynomial")


def variables_of(p: MultiPoly) -> list[VarKey]:
    return p.variables()


# -- canonical text parsing ---------------------------------------------------

_FACTOR_RE = re.compile(r"^(t\[(?P<t>[^\]]+)\]|x\[(?P<x>-?\d+(,-?\d+)*)\])(\^(?P<exp>\d+))?$")


def parse_poly(text: str) -> MultiPoly:
    """Inverse of render() on canonical output."""
    text = text.strip()
    if text == "0":
        return MultiPoly.zero()
    # normalize to explicitly signed terms, then split
    chunks = re.split(r" ([+-]) ", text)
    signed = [("+" , chunks[0])]
    for i in range(1, len(chunks), 2):
        signed.append((chunks[i], chunks[i + 1]))
    out = MultiPoly.zero()
    for sign, chunk in signed:
        chunk = chunk.strip()
        neg = sign == "-"
        if chunk.startswith("-"):
            neg = not neg
            chunk = chunk[1:]
        coeff = 1
        vars_ = []
        for factor in chunk.split("*"):
            factor = factor.strip()
            if factor.isdigit():
                coeff *= int(factor)
                continue
            m = _FACTOR_RE.match(factor)
            if not m:
                raise InputError(f"cannot parse polynomial factor {factor!r}")
            exp = int(m.group("exp")) if m.group("exp") else 1
            if m.group("t") is not None:
                vars_.append((tvar_key(m.group("t")), exp))
            else:
                coords = tuple(int(c) for c in m.group("x").split(","))
                vars_.append((xvar_key(coords), exp))
        out = out + MultiPoly.monomial(vars_, -coeff if neg else coeff)
    return out


# -- evaluation ----------------------------------------------------------------

_RINGS = ("int", "rational", "float")


class Assignment:
    """A point: ring tag plus per-variable values with family defaults.

    ring is one of 'int', 'rational', 'float' or ('fp', p).  Lookups fall
    back to default_t / default_x (both 0 unless overridden).
    """

    __slots__ = ("ring", "values", "default_t", "default_x")

    def __init__(self, ring="int", values=None, default_t=0, default_x=0):
        if isinstance(ring, (tuple, list)):
            tag, p = ring
            if tag != "fp":
                raise InputError(f"unknown ring {ring!r}")
            if not is_prime(p):
                raise InputError(f"{p} is not prime")
            ring = ("fp", p)
        elif ring not in _RINGS:
            raise InputError(f"unknown ring {ring!r}")
        self.ring = ring
        self.values = dict(values) if values else {}
        self.default_t = default_t
        self.default_x = default_x

    def value_of(self, vk: VarKey):
        if vk in self.values:
            return self.values[vk]
        return self.default_t if vk.kind == "t" else self.default_x

    def t_value(self, edge_id: str):
        return self.value_of(tvar_key(edge_id))

    def x_value(self, coords):
        return self.value_of(xvar_key(coords))

    def coerced(self, v):
        """Bring a raw value into the assignment's ring."""
        if isinstance(self.ring, tuple):
            return int(v) % self.ring[1]
        if self.ring == "int":
            return int(v)
        if self.ring == "rational":
            return v if isinstance(v, Fraction) else Fraction(v)
        return float(v)

    # -- wire format ------------------------------------------------------

    def to_dict(self) -> dict:
        t = {}
        x = {}
        for vk, v in self.values.items():
            if vk.kind == "t":
                t[vk.key] = _scalar_out(v)
            else:
                x[",".join(str(c) for c in vk.key)] = _scalar_out(v)
        ring = {"fp": self.ring[1]} if isinstance(self.ring, tuple) else self.ring
        return {"ring": ring, "t": t, "x": x,
                "default_t": _scalar_out(self.default_t),
                "default_x": _scalar_out(self.default_x)}

    @staticmethod
    def from_dict(d: dict) -> "Assignment":
        ring = d.get("ring", "int")
        if isinstance(ring, dict):
            ring = ("fp", ring["fp"])
        values = {}
        for eid, v in d.get("t", {}).items():
            values[tvar_key(eid)] = _scalar_in(v)
        for key, v in d.get("x", {}).items():
            coords = tuple(int(c) for c in str(key).split(","))
            values[xvar_key(coords)] = _scalar_in(v)
        return Assignment(ring, values,
                          _scalar_in(d.get("default_t", 0)),
                          _scalar_in(d.get("default_x", 0)))


def _scalar_out(v):
    if isinstance(v, Fraction):
        return str(v)
    return v


def _scalar_in(v):
    if isinstance(v, str):
        return Fraction(v)
    return v


def is_prime(p) -> bool:
    if not isinstance(p, int) or p < 2:
        return False
    if p < 4:
        return True
    if p % 2 == 0:
        return False
    for d in range(3, math.isqrt(p) + 1, 2):
        if p % d == 0:
            return False
    return True


def evaluate(p: MultiPoly, a: Assignment):
    """Substitute every variable and reduce in the assignment's ring.

    F_p reduces mod p at every step; float evaluation raises
    EvaluationError on a non-finite intermediate instead of returning inf.
    """
    if isinstance(a.ring, tuple):
        prime = a.ring[1]
        total = 0
        for mono, coeff in p.terms.items():
            term = coeff % prime
            for vk, e in mono:
                if term == 0:
                    break
                term = (term * pow(a.coerced(a.value_of(vk)), e, prime)) % prime
            total = (total + term) % prime
        return total

    total = a.coerced(0)
    is_float = a.ring == "float"
    try:
        for mono, coeff in p.terms.items():
            term = a.coerced(coeff)
            for vk, e in mono:
                term = term * a.coerced(a.value_of(vk)) ** e
            total = total + term
            if is_float and not math.isfinite(total):
                raise EvaluationError("non-finite intermediate in float evaluation")
    except OverflowError:
        raise EvaluationError("float overflow in evaluation") from None
    return total
