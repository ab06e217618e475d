"""Fused per-window iteration kernels.

Two interchangeable implementations of the matching-pursuit loop that
dominates runtime: a numba @njit kernel and a vectorized pure-numpy twin.
The active backend is chosen by the XFSE_BACKEND environment variable
("numba" or "numpy"; default numba when importable) and can be overridden
programmatically with set_backend(). Both paths follow the identical
selection and update rules, so results agree to floating-point noise.
"""

from __future__ import annotations

import os

import numpy as np

try:
    from numba import njit

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - exercised only without numba
    HAVE_NUMBA = False

    def njit(*args, **kwargs):
        def wrap(func):
            return func

        if args and callable(args[0]):
            return args[0]
        return wrap


__all__ = [
    "HAVE_NUMBA",
    "TIE_TOL",
    "available_backends",
    "get_backend",
    "set_backend",
    "argmax_bin",
    "iterate_numpy",
    "iterate_numba",
    "iterate",
]

# Bins whose selection metric is within this relative distance of the
# maximum are treated as tied and resolved by the deterministic rule
# (lowest folded radial frequency, then row-major position). Conjugate
# partners of a real signal are mathematical ties that differ only by
# floating-point noise; without the band the pick would be fp-arbitrary.
TIE_TOL = 1e-9

_backend: str | None = None


def available_backends() -> tuple[str, ...]:
    return ("numba", "numpy") if HAVE_NUMBA else ("numpy",)


def get_backend() -> str:
    """Resolve the active backend (env XFSE_BACKEND, else numba if present)."""
    if _backend is not None:
        return _backend
    env = os.environ.get("XFSE_BACKEND", "").strip().lower()
    if env in ("numba", "numpy"):
        if env == "numba" and not HAVE_NUMBA:
            raise RuntimeError("XFSE_BACKEND=numba requested but numba is not importable")
        return env
    return "numba" if HAVE_NUMBA else "numpy"


def set_backend(name: str | None) -> None:
    """Force a backend ("numba"/"numpy"), or None to fall back to the env."""
    global _backend
    if name is not None and name not in available_backends():
        raise ValueError(f"unknown backend {name!r}; available: {available_backends()}")
    _backend = name


def argmax_bin(Rw: np.ndarray, H2: np.ndarray, fold2: np.ndarray, tie_tol: float = TIE_TOL):
    """Pick the bin maximizing |Rw|^2 * H^2 with deterministic tie handling.

    Returns (u, v, metric at the chosen bin).
    """
    metric = (Rw.real * Rw.real + Rw.imag * Rw.imag) * H2
    flat = metric.ravel()
    mx = float(flat.max())
    thr = mx * (1.0 - tie_tol)
    cand = np.flatnonzero(flat >= thr)
    if cand.size == 1:
        idx = int(cand[0])
    else:
        f = fold2.ravel()[cand]
        idx = int(cand[np.lexsort((cand, f))[0]])
    u, v = divmod(idx, Rw.shape[1])
    return u, v, float(flat[idx])


def _apply_update(Rw, c, W, u, v, dc, gamma, gamma_on_residual, MN):
    c[u, v] += gamma * dc
    step = gamma * dc if gamma_on_residual else dc
    Rw -= (step / MN) * np.roll(W, (u, v), axis=(0, 1))


def iterate_numpy(
    Rw: np.ndarray,
    c: np.ndarray,
    W: np.ndarray,
    H: np.ndarray,
    fold2: np.ndarray,
    gamma: float,
    max_iter: int,
    w00: float,
    de_floor: float,
    pair: bool,
    gamma_on_residual: bool,
    tie_tol: float = TIE_TOL,
) -> int:
    """Pure-numpy iteration loop; mutates Rw and c in place.

    One iteration adds one basis function to the model. When pair is set,
    a selected bin and its conjugate partner are updated together (counting
    as two iterations), which keeps the coefficient grid conjugate
    symmetric and hence the synthesized model exactly real. A pair is only
    started when at least two iterations remain in the budget.

    Returns the number of iterations performed.
    """
    M, N = Rw.shape
    MN = M * N
    H2 = H * H
    it = 0
    while it < max_iter:
        u, v, metric = argmax_bin(Rw, H2, fold2, tie_tol)
        if metric / w00 <= de_floor:
            break
        self_conj = (2 * u) % M == 0 and (2 * v) % N == 0
        if pair and not self_conj and max_iter - it < 2:
            break
        dc = (MN * H[u, v] / w00) * Rw[u, v]
        _apply_update(Rw, c, W, u, v, dc, gamma, gamma_on_residual, MN)
        it += 1
        if pair and not self_conj:
            _apply_update(Rw, c, W, (M - u) % M, (N - v) % N, np.conj(dc), gamma, gamma_on_residual, MN)
            it += 1
    return it


@njit(cache=True, nogil=True)
def _iterate_jit(Rw, c, W, H, H2, fold2, gamma, max_iter, w00, de_floor, pair, gamma_on_residual, tie_tol):
    M, N = Rw.shape
    MN = M * N
    it = 0
    while it < max_iter:
        # pass 1: raw maximum of the selection metric
        mx = -1.0
        for k in range(M):
            for l in range(N):
                z = Rw[k, l]
                m = (z.real * z.real + z.imag * z.imag) * H2[k, l]
                if m > mx:
                    mx = m
        # pass 2: among near-ties, lowest folded radius then first position
        thr = mx * (1.0 - tie_tol)
        bu = 0
        bv = 0
        bf = np.inf
        bm = -1.0
        for k in range(M):
            for l in range(N):
                z = Rw[k, l]
                m = (z.real * z.real + z.imag * z.imag) * H2[k, l]
                if m >= thr and fold2[k, l] < bf:
                    bu = k
                    bv = l
                    bf = fold2[k, l]
                    bm = m
        if bm / w00 <= de_floor:
            break
        self_conj = (2 * bu) % M == 0 and (2 * bv) % N == 0
        if pair and not self_conj and max_iter - it < 2:
            break
        dc = (MN * H[bu, bv] / w00) * Rw[bu, bv]
        c[bu, bv] += gamma * dc
        if gamma_on_residual:
            coef = gamma * dc / MN
        else:
            coef = dc / MN
        for k in range(M):
            ks = k - bu
            if ks < 0:
                ks += M
            ls = -bv
            if ls < 0:
                ls += N
            for l in range(N):
                Rw[k, l] -= coef * W[ks, ls]
                ls += 1
                if ls == N:
                    ls = 0
        it += 1
        if pair and not self_conj:
            pu = M - bu
            if pu == M:
                pu = 0
            pv = N - bv
            if pv == N:
                pv = 0
            dcp = np.conj(dc)
            c[pu, pv] += gamma * dcp
            if gamma_on_residual:
                coefp = gamma * dcp / MN
            else:
                coefp = dcp / MN
            for k in range(M):
                ks = k - pu
                if ks < 0:
                    ks += M
                ls = -pv
                if ls < 0:
                    ls += N
                for l in range(N):
                    Rw[k, l] -= coefp * W[ks, ls]
                    ls += 1
                    if ls == N:
                        ls = 0
            it += 1
    return it


def iterate_numba(Rw, c, W, H, fold2, gamma, max_iter, w00, de_floor, pair, gamma_on_residual, tie_tol=TIE_TOL) -> int:
    """Numba-compiled twin of iterate_numpy; mutates Rw and c in place."""
    if not HAVE_NUMBA:
        raise RuntimeError("numba backend requested but numba is not importable")
    return int(
        _iterate_jit(
            Rw,
            c,
            W,
            H,
            H * H,
            fold2,
            float(gamma),
            int(max_iter),
            float(w00),
            float(de_floor),
            bool(pair),
            bool(gamma_on_residual),
            float(tie_tol),
        )
    )


def iterate(Rw, c, W, H, fold2, gamma, max_iter, w00, de_floor, pair, gamma_on_residual, backend: str | None = None) -> int:
    """Dispatch the fused loop to the active backend."""
    name = backend if backend is not None else get_backend()
    if name == "numba":
        return iterate_numba(Rw, c, W, H, fold2, gamma, max_iter, w00, de_floor, pair, gamma_on_residual)
    if name == "numpy":
        return iterate_numpy(Rw, c, W, H, fold2, gamma, max_iter, w00, de_floor, pair, gamma_on_residual)
    raise ValueError(f"unknown backend {name!r}")
