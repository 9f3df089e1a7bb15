"""Dense bounded-variable primal simplex.

Rows are turned into equalities with one logical (slack) variable each,
``A x + s = b``; the slack bounds encode the row sense. Phase 1 minimizes
the sum of bound violations of the basic variables, so a cold start from
the slack basis and a warm start from any stored basis share one code path.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field

import numpy as np

from .errors import NumericalError

log = logging.getLogger(__name__)

FEAS_TOL = 1e-7
OPT_TOL = 1e-7
PIVOT_TOL = 1e-9
REFACTOR_EVERY = 50

LE, GE, EQ = "<=", ">=", "="


@dataclass
class LpProblem:
    """maximize ``c @ x`` s.t. ``A x (sense) b``, ``lb <= x <= ub``."""

    c: np.ndarray
    A: np.ndarray
    sense: list[str]
    b: np.ndarray
    lb: np.ndarray
    ub: np.ndarray

    def __post_init__(self):
        self.c = np.asarray(self.c, dtype=float)
        n = self.c.shape[0]
        self.A = np.asarray(self.A, dtype=float).reshape(-1, n)
        self.b = np.asarray(self.b, dtype=float).reshape(-1)
        self.lb = np.asarray(self.lb, dtype=float).reshape(-1)
        self.ub = np.asarray(self.ub, dtype=float).reshape(-1)
        self.sense = list(self.sense)
        m = self.A.shape[0]
        if self.b.shape[0] != m or len(self.sense) != m:
            raise ValueError("row data has inconsistent lengths")
        if self.lb.shape[0] != n or self.ub.shape[0] != n:
            raise ValueError("bound vectors have wrong length")
        if not (np.all(np.isfinite(self.lb)) and np.all(np.isfinite(self.ub))):
            raise ValueError("column bounds must be finite")
        if np.any(self.lb > self.ub):
            raise ValueError("lower bound exceeds upper bound")
        bad = set(self.sense) - {LE, GE, EQ}
        if bad:
            raise ValueError(f"unknown row senses {bad}")

    @property
    def num_rows(self) -> int:
        return self.A.shape[0]

    @property
    def num_cols(self) -> int:
        return self.c.shape[0]


@dataclass(frozen=True)
class Basis:
    """Basic variable per row plus the nonbasic variables sitting at their upper bound.

    Variable ``j < num_cols`` is structural; ``num_cols + i`` is the slack of row ``i``.
    """

    num_cols: int
    basic: tuple[int, ...]
    at_upper: frozenset[int] = frozenset()


@dataclass
class LpSolution:
    status: str  # optimal | infeasible | error
    value: float = float("nan")
    x: np.ndarray = field(default_factory=lambda: np.zeros(0))
    basis: Basis | None = None
    iterations: int = 0
    message: str = ""

    @property
    def optimal(self) -> bool:
        return self.status == "optimal"


def _extend_basis(warm: Basis, n: int, m: int) -> tuple[list[int], set[int]] | None:
    """Map a stored basis onto a problem with possibly more rows."""
    if warm.num_cols != n:
        return None
    old_m = len(warm.basic)
    if old_m > m:
        return None
    basic = list(warm.basic) + [n + i for i in range(old_m, m)]
    at_upper = set(warm.at_upper)
    if len(set(basic)) != m or any(not 0 <= j < n + m for j in basic):
        return None
    return basic, at_upper - set(basic)


def solve_lp(p: LpProblem, warm: Basis | None = None, *, max_iter: int | None = None) -> LpSolution:
    """Solve ``p`` with the bounded primal simplex, optionally from ``warm``."""
    n, m = p.num_cols, p.num_rows
    if m == 0:
        x = np.where(p.c > 0, p.ub, p.lb)
        return LpSolution("optimal", float(p.c @ x), x, Basis(n, ()), 0)
    try:
        return _Simplex(p, warm, max_iter).run()
    except NumericalError as exc:
        log.warning("simplex failed: %s", exc)
        return LpSolution("error", message=str(exc))


class _Simplex:
    """Working state of one solve.

    Columns ``0..n-1`` are structural and ``n..n+m-1`` are slacks. The slack
    block of ``[A | I]`` is never stored; products with it are done by indexing.
    """

    def __init__(self, p: LpProblem, warm: Basis | None, max_iter: int | None):
        n, m = p.num_cols, p.num_rows
        self.p = p
        self.n, self.m = n, m
        self.A = p.A
        slack_lb = np.where(np.array([s == GE for s in p.sense]), -np.inf, 0.0)
        slack_ub = np.where(np.array([s == LE for s in p.sense]), np.inf, 0.0)
        self.lb = np.concatenate([p.lb, slack_lb])
        self.ub = np.concatenate([p.ub, slack_ub])
        self.cost = np.concatenate([p.c, np.zeros(m)])
        self.max_iter = max_iter if max_iter is not None else 50 * (n + m) + 1000
        self.basic = None
        if warm is not None:
            ext = _extend_basis(warm, n, m)
            if ext is not None:
                self.basic, at_upper = ext
                try:
                    self._set_nonbasic(at_upper)
                    self._refactor()
                except NumericalError:
                    self.basic = None
        if self.basic is None:
            self.basic = [n + i for i in range(m)]
            self._set_nonbasic(set())
            self.Binv = np.eye(m)

    def _set_nonbasic(self, at_upper: set[int]) -> None:
        total = self.n + self.m
        self.is_basic = np.zeros(total, dtype=bool)
        self.is_basic[self.basic] = True
        self.upper = np.zeros(total, dtype=bool)
        for j in at_upper:
            if np.isfinite(self.ub[j]):
                self.upper[j] = True
        # logicals with no finite lower bound rest at their upper bound
        self.upper |= ~np.isfinite(self.lb)
        self.upper &= ~self.is_basic

    def _refactor(self) -> None:
        """Invert the basis through its structural block.

        With basic slacks on rows ``S`` and basic structurals ``J`` on the
        remaining rows ``T``, only ``A[T, J]`` (at most n by n) needs inverting.
        """
        n, m = self.n, self.m
        basic = np.asarray(self.basic)
        J = basic[basic < n]
        S = basic[basic >= n] - n
        T = np.setdiff1d(np.arange(m), S)
        if len(T) != len(J):
            raise NumericalError("singular basis")
        try:
            inv_T = np.linalg.inv(self.A[np.ix_(T, J)]) if len(J) else np.zeros((0, 0))
        except np.linalg.LinAlgError:
            raise NumericalError("singular basis") from None
        # rows of Binv follow the order of self.basic
        Binv = np.zeros((m, m))
        pos = {int(j): k for k, j in enumerate(basic)}
        rows_J = [pos[int(j)] for j in J]
        rows_S = [pos[int(i) + n] for i in S]
        Binv[np.ix_(rows_J, T)] = inv_T
        Binv[np.ix_(rows_S, T)] = -self.A[np.ix_(S, J)] @ inv_T
        Binv[rows_S, S] = 1.0
        if not np.all(np.isfinite(Binv)):
            raise NumericalError("non-finite basis inverse")
        self.Binv = Binv

    def _nonbasic_values(self) -> np.ndarray:
        xn = np.where(self.upper, self.ub, self.lb)
        xn[self.is_basic] = 0.0
        return xn

    def _column(self, q: int) -> np.ndarray:
        """``Binv @ [A | I][:, q]``."""
        if q < self.n:
            return self.Binv @ self.A[:, q]
        return self.Binv[:, q - self.n].copy()

    def _ratio_test(self, rate, xb, lbB, ubB, below, above, t_flip, bland):
        """Leaving row and whether it leaves at its upper bound; -1 means a bound flip."""
        idx = np.flatnonzero(np.abs(rate) > PIVOT_TOL)
        if idx.size == 0:
            return -1, False, t_flip
        r, xi = rate[idx], xb[idx]
        lo, hi = lbB[idx], ubB[idx]
        bl, ab = below[idx], above[idx]
        ok = ~bl & ~ab
        with np.errstate(invalid="ignore", divide="ignore"):
            t = np.full(idx.size, np.inf)
            to_up = np.zeros(idx.size, dtype=bool)
            sel = bl & (r > 0)
            t[sel] = (lo[sel] - xi[sel]) / r[sel]
            sel = ab & (r < 0)
            t[sel] = (xi[sel] - hi[sel]) / -r[sel]
            to_up[sel] = True
            sel = ok & (r > 0) & np.isfinite(hi)
            t[sel] = np.maximum(hi[sel] - xi[sel], 0.0) / r[sel]
            to_up[sel] = True
            sel = ok & (r < 0) & np.isfinite(lo)
            t[sel] = np.maximum(xi[sel] - lo[sel], 0.0) / -r[sel]
        t_min = t.min()
        if not t_min < t_flip - 1e-12:
            return -1, False, t_flip
        tied = np.flatnonzero(t <= t_min + 1e-12)
        if bland:
            k = tied[np.argmin(np.asarray(self.basic)[idx[tied]])]
        else:
            k = tied[np.argmax(np.abs(r[tied]))]
        return int(idx[k]), bool(to_up[k]), float(t[k])

    def run(self) -> LpSolution:
        n, m = self.n, self.m
        A = self.A
        lb, ub = self.lb, self.ub
        movable = (ub - lb) > 0
        degenerate = 0
        bland = False
        bland_after = 3 * (n + m)
        since_refactor = 0
        it = 0
        while True:
            xn = self._nonbasic_values()
            basic = np.asarray(self.basic)
            xb = self.Binv @ (self.p.b - A @ xn[:n] - xn[n:])
            lbB, ubB = lb[basic], ub[basic]
            below = xb < lbB - FEAS_TOL
            above = xb > ubB + FEAS_TOL
            phase1 = bool(below.any() or above.any())
            if phase1:
                cB = below.astype(float) - above.astype(float)
                cN = np.zeros(n + m)
            else:
                cB = self.cost[basic]
                cN = self.cost
            y = cB @ self.Binv
            d = cN - np.concatenate([y @ A, y])
            d[self.is_basic] = 0.0
            inc = (~self.upper) & movable & (d > OPT_TOL) & ~self.is_basic
            dec = self.upper & movable & (d < -OPT_TOL) & ~self.is_basic
            cand = inc | dec
            if not cand.any():
                if phase1:
                    return LpSolution("infeasible", iterations=it)
                x = xn.copy()
                x[basic] = xb
                xs = np.clip(x[:n], self.p.lb, self.p.ub)
                at_upper = frozenset(int(j) for j in np.flatnonzero(self.upper))
                return LpSolution(
                    "optimal", float(self.p.c @ xs), xs,
                    Basis(n, tuple(int(j) for j in self.basic), at_upper), it,
                )
            if it >= self.max_iter:
                raise NumericalError(f"iteration limit {self.max_iter} reached")
            it += 1
            if bland:
                q = int(np.flatnonzero(cand)[0])
            else:
                score = np.where(cand, np.abs(d), -1.0)
                q = int(np.argmax(score))
            direction = 1.0 if inc[q] else -1.0
            alpha = self._column(q)
            rate = -direction * alpha

            leave, leave_to_upper, t_max = self._ratio_test(
                rate, xb, lbB, ubB, below, above, ub[q] - lb[q], bland)
            if not np.isfinite(t_max):
                raise NumericalError("unbounded ray in a bounded problem")

            if t_max <= 1e-12:
                degenerate += 1
                if degenerate > bland_after and not bland:
                    log.debug("switching to Bland's rule after %d degenerate pivots", degenerate)
                    bland = True
            else:
                degenerate = 0

            if leave < 0:
                # bound flip of the entering variable
                self.upper[q] = not self.upper[q]
                continue
            out = self.basic[leave]
            self.basic[leave] = q
            self.is_basic[q] = True
            self.upper[q] = False
            self.is_basic[out] = False
            self.upper[out] = leave_to_upper if np.isfinite(ub[out]) else False
            if not np.isfinite(lb[out]):
                self.upper[out] = True
            since_refactor += 1
            if since_refactor >= REFACTOR_EVERY:
                self._refactor()
                since_refactor = 0
            else:
                piv = alpha[leave]
                if abs(piv) < PIVOT_TOL:
                    self._refactor()
                    since_refactor = 0
                    continue
                row = self.Binv[leave] / piv
                self.Binv -= np.outer(alpha, row)
                self.Binv[leave] = row
