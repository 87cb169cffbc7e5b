"""Hot loops for finite-field point counting.

Two interchangeable backends: numba @njit kernels (default when numba
imports) and a chunked pure-numpy path.  VPOLY_BACKEND=numpy or
VPOLY_BACKEND=numba forces the choice per process; benchmarks/bench_count.py
compares the two.  The assignment space is walked in fixed-size chunks so
results are bit-identical for any worker count.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from .errors import InputError

CHUNK = 1 << 17

_numba_kernels = None


def numba_available() -> bool:
    try:
        import numba  # noqa: F401
        return True
    except ImportError:
        return False


def resolve_backend(backend: str | None = None) -> str:
    choice = backend or os.environ.get("VPOLY_BACKEND", "").strip().lower() or None
    if choice is None:
        return "numba" if numba_available() else "numpy"
    if choice == "numpy":
        return "numpy"
    if choice == "numba":
        if not numba_available():
            raise InputError("VPOLY_BACKEND=numba but numba is not importable")
        return "numba"
    raise InputError(f"unknown backend {choice!r}; expected 'numba' or 'numpy'")


def resolve_workers(workers: int | None = None) -> int:
    if workers is None:
        raw = os.environ.get("VPOLY_WORKERS", "1")
        try:
            workers = int(raw)
        except ValueError:
            raise InputError(f"VPOLY_WORKERS must be an integer, got {raw!r}") from None
    if workers < 1:
        raise InputError("worker count must be >= 1")
    return workers


def pow_table(p: int, max_exp: int) -> np.ndarray:
    """tbl[v, e] = v**e mod p for v in F_p, e <= max_exp."""
    tbl = np.empty((p, max_exp + 1), dtype=np.int64)
    for v in range(p):
        acc = 1
        for e in range(max_exp + 1):
            tbl[v, e] = acc
            acc = (acc * v) % p
    return tbl


# -- numba backend ----------------------------------------------------------


def _load_numba():
    global _numba_kernels
    if _numba_kernels is not None:
        return _numba_kernels
    from numba import njit

    @njit(cache=True, nogil=True)
    def brute_chunk(exps, coeffs, tbl, p, n_vars, start, stop):
        count = 0
        digits = np.zeros(max(n_vars, 1), np.int64)
        for idx in range(start, stop):
            rem = idx
            for j in range(n_vars):
                digits[j] = rem % p
                rem //= p
            acc = 0
            for t in range(coeffs.shape[0]):
                term = coeffs[t]
                for j in range(n_vars):
                    e = exps[t, j]
                    if e != 0:
                        term = (term * tbl[digits[j], e]) % p
                        if term == 0:
                            break
                acc = (acc + term) % p
            if acc == 0:
                count += 1
        return count

    @njit(cache=True, nogil=True)
    def elim_chunk(cexps, ccoeffs, rexps, rcoeffs, tbl, p, n_vars, start, stop):
        count = 0
        digits = np.zeros(max(n_vars, 1), np.int64)
        for idx in range(start, stop):
            rem = idx
            for j in range(n_vars):
                digits[j] = rem % p
                rem //= p
            c = 0
            for t in range(ccoeffs.shape[0]):
                term = ccoeffs[t]
                for j in range(n_vars):
                    e = cexps[t, j]
                    if e != 0:
                        term = (term * tbl[digits[j], e]) % p
                        if term == 0:
                            break
                c = (c + term) % p
            if c != 0:
                count += 1
            else:
                r = 0
                for t in range(rcoeffs.shape[0]):
                    term = rcoeffs[t]
                    for j in range(n_vars):
                        e = rexps[t, j]
                        if e != 0:
                            term = (term * tbl[digits[j], e]) % p
                            if term == 0:
                                break
                    r = (r + term) % p
                if r == 0:
                    count += p
        return count

    _numba_kernels = (brute_chunk, elim_chunk)
    return _numba_kernels


# -- numpy backend ----------------------------------------------------------


def _digits_np(start: int, stop: int, p: int, n_vars: int) -> np.ndarray:
    idx = np.arange(start, stop, dtype=np.int64)
    digits = np.empty((max(n_vars, 1), idx.shape[0]), dtype=np.int64)
    rem = idx
    for j in range(n_vars):
        digits[j] = rem % p
        rem = rem // p
    return digits


def _eval_np(exps, coeffs, tbl, p, digits, width) -> np.ndarray:
    acc = np.zeros(width, dtype=np.int64)
    for t in range(coeffs.shape[0]):
        term = np.full(width, coeffs[t], dtype=np.int64)
        for j in range(exps.shape[1]):
            e = exps[t, j]
            if e:
                term = term * tbl[digits[j], e] % p
        acc += term
        acc %= p
    return acc


def _brute_chunk_np(exps, coeffs, tbl, p, n_vars, start, stop):
    digits = _digits_np(start, stop, p, n_vars)
    acc = _eval_np(exps, coeffs, tbl, p, digits, stop - start)
    return int((acc == 0).sum())


def _elim_chunk_np(cexps, ccoeffs, rexps, rcoeffs, tbl, p, n_vars, start, stop):
    digits = _digits_np(start, stop, p, n_vars)
    c = _eval_np(cexps, ccoeffs, tbl, p, digits, stop - start)
    nonzero = int((c != 0).sum())
    free = (c == 0)
    r = _eval_np(rexps, rcoeffs, tbl, p, digits, stop - start)
    return nonzero + p * int((free & (r == 0)).sum())


# -- chunked drivers ----------------------------------------------------------


def _run_chunks(fn, args, space: int, workers: int) -> int:
    ranges = [(s, min(s + CHUNK, space)) for s in range(0, space, CHUNK)] or [(0, 0)]
    if workers == 1 or len(ranges) == 1:
        return sum(fn(*args, s, t) for s, t in ranges)
    with ThreadPoolExecutor(max_workers=workers) as pool:
        futures = [pool.submit(fn, *args, s, t) for s, t in ranges]
        return sum(f.result() for f in futures)


def count_zero_tuples(exps: np.ndarray, coeffs: np.ndarray, p: int, n_vars: int,
                      workers: int = 1, backend: str | None = None) -> int:
    """Number of tuples in F_p^n_vars at which the compiled polynomial vanishes."""
    space = p ** n_vars
    max_exp = int(exps.max()) if exps.size else 0
    tbl = pow_table(p, max_exp)
    if resolve_backend(backend) == "numba":
        fn = _load_numba()[0]
    else:
        fn = _brute_chunk_np
    return _run_chunks(fn, (exps, coeffs, tbl, p, n_vars), space, workers)


def count_linear_strata(cexps, ccoeffs, rexps, rcoeffs, p: int, n_vars: int,
                        workers: int = 1, backend: str | None = None) -> int:
    """Per co-assignment of the non-pivot variables: 1 zero when the pivot
    coefficient is nonzero, p when coefficient and remainder both vanish."""
    space = p ** n_vars
    max_exp = 0
    for arr in (cexps, rexps):
        if arr.size:
            max_exp = max(max_exp, int(arr.max()))
    tbl = pow_table(p, max_exp)
    if resolve_backend(backend) == "numba":
        fn = _load_numba()[1]
    else:
        fn = _elim_chunk_np
    return _run_chunks(fn, (cexps, ccoeffs, rexps, rcoeffs, tbl, p, n_vars), space, workers)
