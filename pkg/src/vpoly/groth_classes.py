"""Integer polynomials in the torus class T for banana-graph hypersurface
complements.

T is the class of the multiplicative group (affine line class minus 1);
substituting T -> -2 gives the compactly-supported Euler characteristic,
T -> p-1 the predicted F_p point count of the complement.  The parallel-edge
recursion c_m = (2T+1) c_{m-1} - T(T+1) c_{m-2} starts from the one-edge and
two-edge classes and has the closed form -(1+T) T^(m+1) + T (T+1)^(m+3);
without field the comparison class is T^m + (T-1)(T+1)^(m+1).
"""

from __future__ import annotations

from .errors import InputError


class TorusPoly:
    """Dense integer polynomial in T, trailing zeros trimmed."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        cs = list(coeffs)
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs = tuple(cs)

    @staticmethod
    def const(c: int) -> "TorusPoly":
        return TorusPoly((c,))

    @staticmethod
    def t_power(n: int, coeff: int = 1) -> "TorusPoly":
        return TorusPoly((0,) * n + (coeff,))

    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __add__(self, other):
        other = _coerce(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return TorusPoly(
            (self.coeffs[i] if i < len(self.coeffs) else 0)
            + (other.coeffs[i] if i < len(other.coeffs) else 0)
            for i in range(n))

    __radd__ = __add__

    def __neg__(self):
        return TorusPoly(-c for c in self.coeffs)

    def __sub__(self, other):
        return self + (-_coerce(other))

    def __rsub__(self, other):
        return _coerce(other) + (-self)

    def __mul__(self, other):
        other = _coerce(other)
        if self.is_zero() or other.is_zero():
            return TorusPoly()
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return TorusPoly(out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "TorusPoly":
        if n < 0:
            raise InputError("negative power")
        result = TorusPoly.const(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __eq__(self, other):
        if not isinstance(other, TorusPoly):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def at(self, value: int) -> int:
        """Substitution T -> value (a ring homomorphism to Z)."""
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * value + c
        return acc

    def render(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for d in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[d]
            if not c:
                continue
            mag = abs(c)
            if d == 0:
                body = str(mag)
            elif d == 1:
                body = "T" if mag == 1 else f"{mag}*T"
            else:
                body = f"T^{d}" if mag == 1 else f"{mag}*T^{d}"
            parts.append((c < 0, body))
        out = []
        for i, (neg, body) in enumerate(parts):
            if i == 0:
                out.append(("-" if neg else "") + body)
            else:
                out.append((" - " if neg else " + ") + body)
        return "".join(out)

    def __repr__(self):
        return f"TorusPoly({self.render()})"


def _coerce(v) -> TorusPoly:
    if isinstance(v, TorusPoly):
        return v
    if isinstance(v, int):
        return TorusPoly.const(v)
    raise InputError(f"cannot coerce {type(v).__name__} into a torus polynomial")


T = TorusPoly((0, 1))


def banana_base(i: int) -> TorusPoly:
    """Complement class for one edge (i=0) or two parallel edges (i=1)."""
    if i == 0:
        return (T + 1) * T ** 2 + (T + 1) ** 2 * T ** 2
    if i == 1:
        return (T + 1) ** 2 * T ** 2 + (T + 1) ** 2 * T ** 3 + T * (T + 1) * (T ** 2 + T + 1)
    raise InputError(f"base index must be 0 or 1, got {i}")


def banana_recursion(m: int) -> TorusPoly:
    """Iterate c_k = (2T+1) c_(k-1) - T(T+1) c_(k-2) up from the base classes."""
    if m < 0:
        raise InputError("banana index must be >= 0")
    prev, cur = banana_base(0), banana_base(1)
    if m == 0:
        return prev
    two_t_plus_1 = 2 * T + 1
    t_t_plus_1 = T * (T + 1)
    for _ in range(m - 1):
        prev, cur = cur, two_t_plus_1 * cur - t_t_plus_1 * prev
    return cur


def banana_closed(m: int) -> TorusPoly:
    """Closed form -(1+T) T^(m+1) + T (T+1)^(m+3)."""
    if m < 0:
        raise InputError("banana index must be >= 0")
    return -(1 + T) * T ** (m + 1) + T * (T + 1) ** (m + 3)


def closed_from_bases(b0: TorusPoly, b1: TorusPoly, m: int) -> TorusPoly:
    """m-th term of the parallel-edge recursion with anchors b0, b1:
    A T^m + B (T+1)^m with A = (T+1) b0 - b1 and B = b1 - T b0."""
    if m < 0:
        raise InputError("index must be >= 0")
    a = (T + 1) * b0 - b1
    b = b1 - T * b0
    return a * T ** m + b * (T + 1) ** m


def no_field_banana(m: int) -> TorusPoly:
    """Comparison class without magnetic field: T^m + (T-1)(T+1)^(m+1)."""
    if m < 0:
        raise InputError("banana index must be >= 0")
    return T ** m + (T - 1) * (T + 1) ** (m + 1)


def euler_char_c(c: TorusPoly) -> int:
    """Euler characteristic with compact support: substitute T -> -2."""
    return c.at(-2)


def class_to_count(c: TorusPoly, prime: int) -> int:
    """Predicted F_p point count of the complement: substitute T -> p - 1."""
    if prime < 2:
        raise InputError("prime must be >= 2")
    return c.at(prime - 1)
