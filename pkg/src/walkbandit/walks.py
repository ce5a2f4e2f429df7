"""Lazy random walk and three-state coined quantum walk on the N-cycle.

Both walks live on the cycle with vertices ``0 .. N-1`` and arithmetic
modulo N, so ``(N-1)+1 == 0`` and ``0-1 == N-1``.  The quantum walker
carries a three-dimensional internal state; the basis order is fixed
once here and every matrix in the package conforms to it:

    index 0 -> anti-clockwise component (moves x -> x-1 on shift)
    index 1 -> staying component        (x -> x)
    index 2 -> clockwise component      (x -> x+1)

Array conventions
-----------------
- random-walk distribution: float64 array of shape (N,), entries >= 0
  summing to 1
- random-walk transition field: float64 array of shape (N,) with
  ``0 <= q(x) <= 1/2`` (stay probability ``1 - 2 q(x)``)
- coin field: float64 array of shape (N,) of angles in radians
- quantum state: complex128 array of shape (N, 3); squared norms summed
  over all vertices equal 1

Evolution uses the local three-term recurrences (O(N) per step); the
dense-operator forms live in :mod:`walkbandit.oracles` and exist only to
verify these engines.  States are never renormalized during evolution:
norm drift would indicate a bug and is asserted by the test suite, not
corrected.
"""

from __future__ import annotations

import numpy as np
from numba import njit

__all__ = [
    "coin_matrix",
    "coin_split",
    "rw_step",
    "rw_evolve",
    "rw_point_distribution",
    "qw_initial_state",
    "qw_step",
    "qw_evolve",
    "qw_point_distribution",
    "measurement_distribution",
    "sample_position",
    "displacement_stddev",
]

_SQRT2 = np.sqrt(2.0)


def coin_matrix(theta: float) -> np.ndarray:
    """Return the 3x3 coin matrix for mixing angle ``theta``.

    The matrix has diagonal ``(-(1+cos t)/2, cos t, -(1+cos t)/2)``,
    anti-diagonal corners ``(1-cos t)/2`` and ``sin t / sqrt(2)`` in the
    four remaining off-diagonal slots.  It is real orthogonal for every
    angle, and reduces to the Grover diffusion matrix at
    ``cos theta = -1/3``.

    Parameters
    ----------
    theta:
        Mixing angle in radians.  Must be finite.

    Returns
    -------
    numpy.ndarray
        Complex128 unitary of shape (3, 3) with zero imaginary part.
    """
    c = np.cos(theta)
    s = np.sin(theta) / _SQRT2
    dm = -(1.0 + c) / 2.0
    dp = (1.0 - c) / 2.0
    return np.array(
        [[dm, s, dp],
         [s, c, s],
         [dp, s, dm]],
        dtype=np.complex128,
    )


def coin_split(coin: np.ndarray) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Decompose a coin into its per-direction transition weights.

    Returns matrices ``(P, Q, R)`` where ``P`` keeps only the
    anti-clockwise row (index 0) of ``coin``, ``Q`` only the clockwise
    row (index 2) and ``R`` only the staying row (index 1); all other
    rows are zero.  ``P + Q + R == coin`` exactly.
    """
    coin = np.asarray(coin)
    if coin.shape != (3, 3):
        raise ValueError(f"coin must have shape (3, 3), got {coin.shape}")
    p = np.zeros_like(coin)
    q = np.zeros_like(coin)
    r = np.zeros_like(coin)
    p[0] = coin[0]
    r[1] = coin[1]
    q[2] = coin[2]
    return p, q, r


@njit(cache=True)
def _rw_kernel(nu, q, steps):
    n = nu.shape[0]
    cur = nu.copy()
    nxt = np.empty_like(cur)
    for _ in range(steps):
        for x in range(n):
            up = (x + 1) % n
            dn = (x - 1 + n) % n
            nxt[x] = q[up] * cur[up] + (1.0 - 2.0 * q[x]) * cur[x] + q[dn] * cur[dn]
        cur, nxt = nxt, cur
    return cur


@njit(cache=True)
def _qw_kernel(psi, theta, steps):
    n = psi.shape[0]
    cos_t = np.cos(theta)
    hs = np.sin(theta) / _SQRT2
    dm = -(1.0 + cos_t) / 2.0
    dp = (1.0 - cos_t) / 2.0
    cur = psi.copy()
    nxt = np.empty_like(cur)
    for _ in range(steps):
        for x in range(n):
            a0 = cur[x, 0]
            a1 = cur[x, 1]
            a2 = cur[x, 2]
            # coin at x, then shift: row 0 moves to x-1, row 2 to x+1
            nxt[(x - 1 + n) % n, 0] = dm[x] * a0 + hs[x] * a1 + dp[x] * a2
            nxt[x, 1] = hs[x] * a0 + cos_t[x] * a1 + hs[x] * a2
            nxt[(x + 1) % n, 2] = dp[x] * a0 + hs[x] * a1 + dm[x] * a2
        cur, nxt = nxt, cur
    return cur


@njit(cache=True)
def _qw_point_dist_kernel(s, theta, steps):
    n = theta.shape[0]
    psi = np.zeros((n, 3), dtype=np.complex128)
    psi[s, 1] = 1.0
    out = _qw_kernel(psi, theta, steps)
    dist = np.empty(n, dtype=np.float64)
    for x in range(n):
        dist[x] = (out[x, 0].real ** 2 + out[x, 0].imag ** 2
                   + out[x, 1].real ** 2 + out[x, 1].imag ** 2
                   + out[x, 2].real ** 2 + out[x, 2].imag ** 2)
    return dist


@njit(cache=True)
def _rw_point_dist_kernel(s, q, steps):
    n = q.shape[0]
    nu = np.zeros(n, dtype=np.float64)
    nu[s] = 1.0
    return _rw_kernel(nu, q, steps)


@njit(cache=True)
def _inverse_cdf_kernel(dist, u):
    # ascending-index inverse CDF; the last bucket absorbs rounding residue
    n = dist.shape[0]
    acc = 0.0
    for x in range(n):
        acc += dist[x]
        if u < acc:
            return x
    return n - 1


def _check_lengths(a: np.ndarray, b: np.ndarray, what: str) -> None:
    if a.shape[0] != b.shape[0]:
        raise ValueError(
            f"length mismatch: {what} has {a.shape[0]} vertices, field has {b.shape[0]}"
        )


def rw_step(nu: np.ndarray, q: np.ndarray) -> np.ndarray:
    """Advance a random-walk distribution by one lazy step.

    ``nu'(x) = q(x+1) nu(x+1) + (1 - 2 q(x)) nu(x) + q(x-1) nu(x-1)``
    with indices modulo N.  Mass and nonnegativity are preserved by the
    recurrence itself; no renormalization is applied.

    Raises
    ------
    ValueError
        If ``nu`` and ``q`` have different lengths.
    """
    nu = np.ascontiguousarray(nu, dtype=np.float64)
    q = np.ascontiguousarray(q, dtype=np.float64)
    _check_lengths(nu, q, "distribution")
    return _rw_kernel(nu, q, 1)


def rw_evolve(nu: np.ndarray, q: np.ndarray, steps: int) -> np.ndarray:
    """Apply :func:`rw_step` ``steps`` times (single fused kernel call)."""
    nu = np.ascontiguousarray(nu, dtype=np.float64)
    q = np.ascontiguousarray(q, dtype=np.float64)
    _check_lengths(nu, q, "distribution")
    if steps < 0:
        raise ValueError("steps must be >= 0")
    return _rw_kernel(nu, q, steps)


def rw_point_distribution(s: int, q: np.ndarray, steps: int) -> np.ndarray:
    """Distribution after ``steps`` lazy steps from a point mass at ``s``."""
    q = np.ascontiguousarray(q, dtype=np.float64)
    n = q.shape[0]
    if not 0 <= s < n:
        raise ValueError(f"start vertex {s} out of range [0, {n})")
    if steps < 0:
        raise ValueError("steps must be >= 0")
    return _rw_point_dist_kernel(s, q, steps)


def qw_initial_state(s: int, n: int) -> np.ndarray:
    """Point-mass quantum state at vertex ``s`` with staying internal state.

    Parameters
    ----------
    s:
        Start vertex, ``0 <= s < n``.
    n:
        Number of cycle vertices, at least 3.

    Returns
    -------
    numpy.ndarray
        Complex128 array of shape (n, 3); entry ``[s, 1]`` is 1, all
        others 0.
    """
    if n < 3:
        raise ValueError(f"cycle needs at least 3 vertices, got {n}")
    if not 0 <= s < n:
        raise ValueError(f"start vertex {s} out of range [0, {n})")
    psi = np.zeros((n, 3), dtype=np.complex128)
    psi[s, 1] = 1.0
    return psi


def qw_step(psi: np.ndarray, theta: np.ndarray) -> np.ndarray:
    """Advance a quantum state by one coined-walk step.

    Applies the site-dependent coin at every vertex, then the
    coin-conditioned shift:

    ``psi'(x) = P(x+1) psi(x+1) + R(x) psi(x) + Q(x-1) psi(x-1)``

    where ``P/R/Q`` are the row projections of :func:`coin_matrix` at
    each site (see :func:`coin_split`).  One call applies the full
    unitary once; norm is preserved up to roundoff.

    Raises
    ------
    ValueError
        If the state and coin field have different lengths.
    """
    psi = np.ascontiguousarray(psi, dtype=np.complex128)
    theta = np.ascontiguousarray(theta, dtype=np.float64)
    if psi.ndim != 2 or psi.shape[1] != 3:
        raise ValueError(f"state must have shape (N, 3), got {psi.shape}")
    _check_lengths(psi, theta, "state")
    return _qw_kernel(psi, theta, 1)


def qw_evolve(psi: np.ndarray, theta: np.ndarray, steps: int) -> np.ndarray:
    """Apply :func:`qw_step` ``steps`` times (single fused kernel call)."""
    psi = np.ascontiguousarray(psi, dtype=np.complex128)
    theta = np.ascontiguousarray(theta, dtype=np.float64)
    if psi.ndim != 2 or psi.shape[1] != 3:
        raise ValueError(f"state must have shape (N, 3), got {psi.shape}")
    _check_lengths(psi, theta, "state")
    if steps < 0:
        raise ValueError("steps must be >= 0")
    return _qw_kernel(psi, theta, steps)


def qw_point_distribution(s: int, theta: np.ndarray, steps: int) -> np.ndarray:
    """Measurement distribution after ``steps`` walk steps from
    ``qw_initial_state(s, len(theta))``.

    Equivalent to ``measurement_distribution(qw_evolve(...))`` but fused
    into one kernel call; this is the hot path of the bandit agents.
    """
    theta = np.ascontiguousarray(theta, dtype=np.float64)
    n = theta.shape[0]
    if not 0 <= s < n:
        raise ValueError(f"start vertex {s} out of range [0, {n})")
    if steps < 0:
        raise ValueError("steps must be >= 0")
    return _qw_point_dist_kernel(s, theta, steps)


def measurement_distribution(psi: np.ndarray) -> np.ndarray:
    """Born-rule position distribution of a quantum state.

    ``mu(x)`` is the squared norm of the three-component amplitude
    vector at vertex ``x``; for a normalized state the result sums to 1.
    """
    psi = np.asarray(psi)
    return (psi.real ** 2 + psi.imag ** 2).sum(axis=1)


def sample_position(dist: np.ndarray, rng) -> int:
    """Draw one vertex from a position distribution.

    Inverse-CDF sampling scanning ascending vertex index; consumes
    exactly one uniform variate from ``rng`` (anything exposing
    ``random() -> float in [0, 1)``).  The final bucket absorbs any
    rounding residue, so sampling is total for normalized input.
    """
    dist = np.ascontiguousarray(dist, dtype=np.float64)
    return int(_inverse_cdf_kernel(dist, rng.random()))


def displacement_stddev(dist: np.ndarray, s: int) -> float:
    """Standard deviation of signed displacement from vertex ``s``.

    Displacements take the representative in ``(-N/2, N/2]``.  The
    distribution must be supported strictly inside the half-cycle around
    ``s``; on an even cycle, support at the antipode ``s + N/2`` makes
    the sign of that displacement ambiguous and raises ``ValueError``.
    """
    dist = np.asarray(dist, dtype=np.float64)
    n = dist.shape[0]
    if not 0 <= s < n:
        raise ValueError(f"center vertex {s} out of range [0, {n})")
    if n % 2 == 0 and dist[(s + n // 2) % n] > 0.0:
        raise ValueError(
            f"support touches the antipode of {s}; displacement sign is ambiguous"
        )
    raw = (np.arange(n) - s) % n
    d = np.where(2 * raw > n, raw - n, raw).astype(np.float64)
    mean = float(np.dot(d, dist))
    var = float(np.dot(d * d, dist)) - mean * mean
    return float(np.sqrt(max(var, 0.0)))
