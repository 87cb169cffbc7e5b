"""Zero counts of hypersurfaces over prime fields and interpolation verdicts.

count_zeros enumerates F_p tuples through the compiled kernels in
_kernels; when some variable occurs with degree 1 the linear-elimination
method walks only the co-assignment space, which is what makes the
six-variable fixtures tractable at p up to 19.  countability_test fits the
counting function through exact rational Lagrange interpolation and checks
it against held-out primes.  Prime-power fields beyond r=1 are out of
scope, so every verdict is finite-sample evidence, never proof.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from ._kernels import count_linear_strata, count_zero_tuples, resolve_workers
from .errors import CapExceededError, InputError
from .multipoly import MultiPoly, VarKey, is_prime, tvar_key

DEFAULT_BUDGET = 200_000_000

CAVEAT = ("verdict is evidence from a finite sample of primes at first powers only; "
          "a polynomial fit is not a proof of polynomial countability")


@dataclass
class CountReport:
    prime: int
    ambient_dim: int
    zeros: int
    method: str

    def to_dict(self) -> dict:
        return {"prime": self.prime, "ambient_dim": self.ambient_dim,
                "zeros": str(self.zeros), "method": self.method}


@dataclass
class CountabilityReport:
    degree_bound: int
    fit_primes: list[int]
    fit_coefficients: list[int] | None
    validation_primes: list[int]
    residuals: dict[int, Fraction]
    verdict: str
    caveat: str = CAVEAT

    def to_dict(self) -> dict:
        return {
            "degree_bound": self.degree_bound,
            "fit_primes": self.fit_primes,
            "fit_coefficients": None if self.fit_coefficients is None
            else [str(c) for c in self.fit_coefficients],
            "validation_primes": self.validation_primes,
            "residuals": {str(q): str(r) for q, r in self.residuals.items()},
            "verdict": self.verdict,
            "caveat": self.caveat,
        }


def _reduced_terms(poly: MultiPoly, prime: int) -> dict:
    out = {}
    for mono, c in poly.terms.items():
        cm = c % prime
        if cm:
            out[mono] = cm
    return out


def _compile_terms(terms: dict, var_order: list[VarKey]):
    index = {v: i for i, v in enumerate(var_order)}
    exps = np.zeros((len(terms), max(len(var_order), 1)), dtype=np.int64)
    coeffs = np.empty(len(terms), dtype=np.int64)
    for row, (mono, c) in enumerate(terms.items()):
        coeffs[row] = c
        for vk, e in mono:
            exps[row, index[vk]] = e
    return exps, coeffs


def _check_budget(evals: int, budget: int):
    if evals > budget:
        raise CapExceededError(
            f"{evals} field evaluations exceed the counting budget of {budget}; "
            f"raise the budget to force this")


def count_zeros(poly: MultiPoly, ambient, prime: int, method: str = "auto",
                budget: int = DEFAULT_BUDGET, workers: int | None = None,
                backend: str | None = None) -> CountReport:
    """Exact number of tuples in F_p^len(ambient) where poly vanishes.

    method 'brute' enumerates the whole space; 'elim' requires a variable
    of degree 1 and counts per co-assignment; 'auto' prefers elimination
    when available.  Variables in ambient that the reduced polynomial does
    not use scale the count by a power of p instead of being enumerated.
    """
    if not is_prime(prime):
        raise InputError(f"{prime!r} is not a prime")
    if method not in ("auto", "brute", "elim"):
        raise InputError(f"unknown method {method!r}")
    ambient = list(ambient)
    if len(set(ambient)) != len(ambient):
        raise InputError("ambient variable list contains duplicates")
    aset = set(ambient)
    outside = [v for v in poly.variables() if v not in aset]
    if outside:
        raise InputError(f"polynomial uses variables outside the ambient space: {outside}")
    workers = resolve_workers(workers)
    k = len(ambient)

    reduced = _reduced_terms(poly, prime)
    if not reduced:
        return CountReport(prime, k, prime ** k, "brute")

    used_set = {vk for mono in reduced for vk, _ in mono}
    used = [v for v in ambient if v in used_set]
    extra = k - len(used)

    pivots = []
    if method in ("auto", "elim"):
        degree = {v: 0 for v in used}
        for mono in reduced:
            for vk, e in mono:
                if e > degree[vk]:
                    degree[vk] = e
        pivots = [v for v in used if degree[v] == 1]
        if method == "elim" and not pivots:
            raise InputError("no variable occurs with degree 1; linear elimination does not apply")

    if pivots:
        pivot = pivots[0]
        cterms, rterms = {}, {}
        for mono, c in reduced.items():
            stripped = tuple((vk, e) for vk, e in mono if vk != pivot)
            if len(stripped) < len(mono):
                cterms[stripped] = c
            else:
                rterms[mono] = c
        rem = [v for v in used if v != pivot]
        _check_budget(prime ** len(rem), budget)
        cexps, ccoeffs = _compile_terms(cterms, rem)
        rexps, rcoeffs = _compile_terms(rterms, rem)
        zeros = count_linear_strata(cexps, ccoeffs, rexps, rcoeffs, prime, len(rem),
                                    workers, backend)
        return CountReport(prime, k, zeros * prime ** extra, "linear-elimination")

    _check_budget(prime ** len(used), budget)
    exps, coeffs = _compile_terms(reduced, used)
    zeros = count_zero_tuples(exps, coeffs, prime, len(used), workers, backend)
    return CountReport(prime, k, zeros * prime ** extra, "brute")


def curve_f_poly() -> MultiPoly:
    """The plane curve in two edge variables whose counts obstruct a linear
    counting function: t1^2 + t2^2 + t1*t2 + t1^2*t2 + t1*t2^2."""
    t1, t2 = MultiPoly.tvar("e1"), MultiPoly.tvar("e2")
    return t1 ** 2 + t2 ** 2 + t1 * t2 + t1 ** 2 * t2 + t1 * t2 ** 2


def count_curve_f(prime: int, **kwargs) -> int:
    """Zeros of the obstruction curve in F_p^2."""
    f = curve_f_poly()
    return count_zeros(f, [tvar_key("e1"), tvar_key("e2")], prime, **kwargs).zeros


# -- interpolation ------------------------------------------------------------


def _lagrange(points: list[tuple[int, int]]) -> list[Fraction]:
    """Exact interpolating polynomial through integer points, coefficients
    low to high, trailing zeros trimmed."""
    n = len(points)
    coeffs = [Fraction(0)] * n
    for i, (xi, yi) in enumerate(points):
        num = [Fraction(1)]
        den = Fraction(1)
        for j, (xj, _) in enumerate(points):
            if j == i:
                continue
            nxt = [Fraction(0)] * (len(num) + 1)
            for d, c in enumerate(num):
                nxt[d + 1] += c
                nxt[d] -= c * xj
            num = nxt
            den *= xi - xj
        scale = Fraction(yi) / den
        for d, c in enumerate(num):
            coeffs[d] += c * scale
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    return coeffs


def _poly_at(coeffs: list[Fraction], x: int) -> Fraction:
    acc = Fraction(0)
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


def countability_test(poly: MultiPoly, fit_primes, validation_primes,
                      degree_bound: int | None = None, budget: int = DEFAULT_BUDGET,
                      workers: int | None = None, backend: str | None = None,
                      method: str = "auto") -> CountabilityReport:
    """Fit the zero-counting function on fit_primes, validate on held-out
    primes; polynomial_fit needs integer coefficients within the degree
    bound and zero residual at every validation prime."""
    fit_primes = list(fit_primes)
    validation_primes = list(validation_primes)
    for q in fit_primes + validation_primes:
        if not is_prime(q):
            raise InputError(f"{q!r} is not a prime")
    if len(set(fit_primes)) != len(fit_primes):
        raise InputError("fit primes must be distinct")
    ambient = poly.variables()
    if degree_bound is None:
        degree_bound = len(ambient)
    if len(fit_primes) < degree_bound + 1:
        raise InputError(
            f"need at least {degree_bound + 1} fit primes for degree bound {degree_bound}, "
            f"got {len(fit_primes)}")

    counts = {}
    for q in fit_primes + validation_primes:
        counts[q] = count_zeros(poly, ambient, q, method=method, budget=budget,
                                workers=workers, backend=backend).zeros

    coeffs = _lagrange([(q, counts[q]) for q in fit_primes])
    residuals = {q: Fraction(counts[q]) - _poly_at(coeffs, q) for q in validation_primes}
    integral = all(c.denominator == 1 for c in coeffs)
    within_bound = len(coeffs) - 1 <= degree_bound if coeffs else True
    fit_ok = integral and within_bound and all(r == 0 for r in residuals.values())
    return CountabilityReport(
        degree_bound=degree_bound,
        fit_primes=fit_primes,
        fit_coefficients=[int(c) for c in coeffs] if integral and within_bound else None,
        validation_primes=validation_primes,
        residuals=residuals,
        verdict="polynomial_fit" if fit_ok else "non_polynomial_evidence",
    )
