"""Slow, obviously-correct reference implementations of both walks.

The fast engines in :mod:`walkbandit.walks` use local three-term
recurrences.  Here the same dynamics are built as explicit dense
operators - a 3N x 3N unitary for the quantum walk and an N x N
column-stochastic matrix for the random walk - and applied by plain
matrix-vector products.  The two routes share nothing but the defining
formulas, so agreement to near machine precision is strong evidence that
both are right.

These oracles ship with the library (not only the test suite) so the
command line can expose a ``verify`` mode.

Flattened index order for the dense unitary is vertex-major,
internal-state-minor: component ``e`` of vertex ``x`` sits at
``3 * x + e``, matching the (N, 3) state layout of the fast engine.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .walks import coin_matrix, coin_split, qw_evolve, rw_evolve

__all__ = [
    "build_dense_unitary",
    "dense_evolve",
    "build_transition_matrix",
    "rw_matrix_power",
    "EquivalenceReport",
    "run_equivalence_suite",
    "QW_EQUIVALENCE_TOL",
    "RW_EQUIVALENCE_TOL",
    "UNITARITY_TOL",
]

QW_EQUIVALENCE_TOL = 1e-12
RW_EQUIVALENCE_TOL = 1e-12
UNITARITY_TOL = 1e-10


def build_dense_unitary(theta: np.ndarray) -> np.ndarray:
    """Assemble the one-step evolution operator as a dense matrix.

    Block-tridiagonal with wraparound corners: for each vertex ``x`` the
    coin ``C(x)`` is split into row projections ``(P, Q, R)`` and placed
    so that block ``(x-1, x)`` is ``P(x)``, ``(x, x)`` is ``R(x)`` and
    ``(x+1, x)`` is ``Q(x)``, indices modulo N.

    Parameters
    ----------
    theta:
        Coin angles, one per vertex; at least 3 vertices.

    Returns
    -------
    numpy.ndarray
        Complex128 unitary of shape (3N, 3N).
    """
    theta = np.asarray(theta, dtype=np.float64)
    n = theta.shape[0]
    if n < 3:
        raise ValueError(f"cycle needs at least 3 vertices, got {n}")
    u = np.zeros((3 * n, 3 * n), dtype=np.complex128)
    for x in range(n):
        p, q, r = coin_split(coin_matrix(theta[x]))
        up = (x + 1) % n
        dn = (x - 1) % n
        u[3 * dn:3 * dn + 3, 3 * x:3 * x + 3] += p
        u[3 * x:3 * x + 3, 3 * x:3 * x + 3] += r
        u[3 * up:3 * up + 3, 3 * x:3 * x + 3] += q
    return u


def dense_evolve(psi: np.ndarray, unitary: np.ndarray, steps: int) -> np.ndarray:
    """Evolve a state by repeated dense matrix-vector products.

    ``steps = 0`` returns a copy of the input.  The state is flattened
    vertex-major, multiplied ``steps`` times by ``unitary`` and reshaped
    back to (N, 3).
    """
    psi = np.asarray(psi, dtype=np.complex128)
    if psi.ndim != 2 or psi.shape[1] != 3:
        raise ValueError(f"state must have shape (N, 3), got {psi.shape}")
    if unitary.shape != (psi.shape[0] * 3, psi.shape[0] * 3):
        raise ValueError(
            f"operator shape {unitary.shape} does not match state shape {psi.shape}"
        )
    if steps < 0:
        raise ValueError("steps must be >= 0")
    vec = psi.reshape(-1).copy()
    for _ in range(steps):
        vec = unitary @ vec
    return vec.reshape(psi.shape)


def build_transition_matrix(q: np.ndarray) -> np.ndarray:
    """N x N transition matrix of the lazy walk; column x holds the
    outgoing probabilities of vertex x."""
    q = np.asarray(q, dtype=np.float64)
    n = q.shape[0]
    if n < 3:
        raise ValueError(f"cycle needs at least 3 vertices, got {n}")
    m = np.zeros((n, n))
    for x in range(n):
        m[(x + 1) % n, x] += q[x]
        m[(x - 1) % n, x] += q[x]
        m[x, x] += 1.0 - 2.0 * q[x]
    return m


def rw_matrix_power(q: np.ndarray, nu0: np.ndarray, steps: int) -> np.ndarray:
    """Evolve a distribution by repeated transition-matrix products."""
    nu0 = np.asarray(nu0, dtype=np.float64)
    m = build_transition_matrix(q)
    if nu0.shape[0] != m.shape[0]:
        raise ValueError(
            f"length mismatch: distribution has {nu0.shape[0]} vertices, field has {m.shape[0]}"
        )
    if steps < 0:
        raise ValueError("steps must be >= 0")
    nu = nu0.copy()
    for _ in range(steps):
        nu = m @ nu
    return nu


@dataclass(frozen=True)
class EquivalenceReport:
    """Outcome of the engine-vs-oracle verification sweep."""

    cases: int
    max_qw_error: float
    max_rw_error: float
    max_unitarity_error: float

    @property
    def passed(self) -> bool:
        return (
            self.max_qw_error < QW_EQUIVALENCE_TOL
            and self.max_rw_error < RW_EQUIVALENCE_TOL
            and self.max_unitarity_error < UNITARITY_TOL
        )

    def summary(self) -> str:
        status = "ok" if self.passed else "FAILED"
        return (
            f"equivalence: {self.cases} cases, "
            f"max |QW amplitude error| = {self.max_qw_error:.3e} (tol {QW_EQUIVALENCE_TOL:.0e}), "
            f"max |RW probability error| = {self.max_rw_error:.3e} (tol {RW_EQUIVALENCE_TOL:.0e}), "
            f"max unitarity defect = {self.max_unitarity_error:.3e} (tol {UNITARITY_TOL:.0e}) "
            f"-> {status}"
        )


def run_equivalence_suite(
    n_values=range(3, 9),
    step_values=range(1, 21),
    fields_per_case: int = 50,
    seed: int = 20240,
) -> EquivalenceReport:
    """Cross-check the fast engines against the dense oracles.

    For every cycle size in ``n_values`` and step count in
    ``step_values``, draws ``fields_per_case`` random coin fields
    (angles uniform in [0, 2pi)) and random transition fields (uniform
    in [0, 1/2]), evolves a random start vertex through both routes and
    records the worst absolute discrepancy, plus the worst unitarity
    defect of the assembled dense operators.
    """
    rng = np.random.default_rng(seed)
    max_qw = 0.0
    max_rw = 0.0
    max_unit = 0.0
    cases = 0
    for n in n_values:
        eye = np.eye(3 * n)
        for _ in range(fields_per_case):
            theta = rng.uniform(0.0, 2.0 * np.pi, size=n)
            q = rng.uniform(0.0, 0.5, size=n)
            s = int(rng.integers(n))
            unitary = build_dense_unitary(theta)
            max_unit = max(
                max_unit,
                float(np.abs(unitary.conj().T @ unitary - eye).max()),
            )
            psi0 = np.zeros((n, 3), dtype=np.complex128)
            psi0[s, 1] = 1.0
            nu0 = np.zeros(n)
            nu0[s] = 1.0
            for steps in step_values:
                fast_psi = qw_evolve(psi0, theta, steps)
                slow_psi = dense_evolve(psi0, unitary, steps)
                max_qw = max(max_qw, float(np.abs(fast_psi - slow_psi).max()))
                fast_nu = rw_evolve(nu0, q, steps)
                slow_nu = rw_matrix_power(q, nu0, steps)
                max_rw = max(max_rw, float(np.abs(fast_nu - slow_nu).max()))
                cases += 1
    return EquivalenceReport(
        cases=cases,
        max_qw_error=max_qw,
        max_rw_error=max_rw,
        max_unitarity_error=max_unit,
    )
