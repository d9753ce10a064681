"""Exact certification of sparse recovery conditions on small instances.

Provides exhaustive computation of restricted isometry constants (plain and
row-subset variants), exact and falsification checks of the weighted null
space property and its phaseless counterpart, and brute-force weighted-l1
minimization oracles that ground-truth uniqueness of recovery.

Exactness notes.  The null space property is an open (strict) condition, so
verdicts are margin based: a computed worst-case slack of at most 0 is a
failure, a slack inside ``(0, TOL.nsp_margin_band]`` is reported
indeterminate (the strict inequality cannot be certified in floating point),
and anything above the band certifiably holds.  Margins are reported for
unit-l2-normalized kernel vectors.

The brute-force oracles enumerate basic solutions (candidates supported on
at most ``min(m, N)`` columns), which contains every vertex of the optimal
face.  Rank-deficient column subsets are skipped and flagged, so results on
inputs far from general position should be read with care.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from itertools import combinations

import numpy as np

from .linalg import TOL, as_matrix, eig_sym, kernel_basis
from .model import weighted_l1

_TWO_PI = 2.0 * math.pi
_QUARTERS = np.array([0.0, 0.5 * math.pi, math.pi, 1.5 * math.pi])


class CapExceededError(RuntimeError):
    """An enumeration size cap was exceeded; ``cap`` names the violated limit."""

    def __init__(self, cap: str, detail: str = ""):
        self.cap = cap
        super().__init__(f"{cap} exceeded" + (f": {detail}" if detail else ""))


@dataclass(frozen=True)
class RipReport:
    """Isometry constants with the supports/row subsets attaining them."""

    order: int
    delta: float | None = None
    theta_minus: float | None = None
    theta_plus: float | None = None
    delta_support: tuple[int, ...] | None = None
    lower_support: tuple[int, ...] | None = None
    lower_rows: tuple[int, ...] | None = None
    upper_support: tuple[int, ...] | None = None
    enumerated: int = 0


@dataclass(frozen=True)
class NspWitness:
    """Kernel vector and support violating the weighted null space inequality."""

    kernel_vector: np.ndarray
    support: tuple[int, ...]


@dataclass(frozen=True)
class PhaselessWitness:
    """Pair (u, v) and row split violating the phaseless null space inequality."""

    u: np.ndarray
    v: np.ndarray
    rows: tuple[int, ...]


@dataclass(frozen=True)
class NspVerdict:
    status: str  # "holds-exact" | "fails" | "indeterminate"
    margin: float
    witness: NspWitness | PhaselessWitness | None = None
    enumerated: int = 0


@dataclass
class L1MinResult:
    """Minimizer set of a brute-force weighted-l1 program.

    ``minimizers`` is empty when the program is infeasible (``value`` is then
    None).  ``degenerate`` reports that some rank-deficient column subset was
    skipped during enumeration.
    """

    minimizers: list = field(default_factory=list)
    value: float | None = None
    degenerate: bool = False


def nsp_slack(h: np.ndarray, support, w: np.ndarray) -> float:
    """Weighted l1 mass off ``support`` minus the mass on it; negative or zero
    slack violates the null space inequality."""
    h = np.asarray(h, dtype=float)
    w = np.asarray(w, dtype=float)
    mask = np.zeros(h.size, dtype=bool)
    mask[list(support)] = True
    wh = w * np.abs(h)
    return float(wh[~mask].sum() - wh[mask].sum())


def phaseless_slack(u: np.ndarray, v: np.ndarray, w: np.ndarray) -> float:
    """``||u - v||_{1,w} - ||u + v||_{1,w}``; nonpositive slack is a violation."""
    return weighted_l1(np.asarray(u) - np.asarray(v), w) - weighted_l1(
        np.asarray(u) + np.asarray(v), w
    )


def canonical_sign(z: np.ndarray) -> np.ndarray:
    """Flip sign so the first significantly nonzero coordinate is positive."""
    z = np.asarray(z, dtype=float)
    scale = np.abs(z).max() if z.size else 0.0
    if scale == 0.0:
        return z
    for zi in z:
        if abs(zi) > 1e-12 * scale:
            return -z if zi < 0 else z
    return z


# ---------------------------------------------------------------------------
# Restricted isometry constants
# ---------------------------------------------------------------------------


def rip_constant(a, k: int, support_cap: int = 2_000_000) -> RipReport:
    """Exact isometry constant of order ``k`` by exhaustive support enumeration.

    ``delta = max over |T| = k of max |eig(A_T^T A_T - I)|``.  Refuses (no
    sampling fallback) when ``C(N, k)`` exceeds ``support_cap``.
    """
    a = as_matrix(a)
    n = a.shape[1]
    if not 1 <= k <= n:
        raise ValueError(f"need 1 <= k <= {n}, got k={k}")
    count = math.comb(n, k)
    if count > support_cap:
        raise CapExceededError("support enumeration cap", f"C({n},{k})={count} > {support_cap}")
    best = -1.0
    best_t: tuple[int, ...] = ()
    for t in combinations(range(n), k):
        cols = a[:, t]
        lam = eig_sym(cols.T @ cols).eigenvalues
        dev = float(np.abs(lam - 1.0).max())
        if dev > best:
            best, best_t = dev, t
    return RipReport(order=k, delta=best, delta_support=best_t, enumerated=count)


def srip_bounds(
    a,
    k: int,
    row_cap: int = 14,
    support_cap: int = 2_000_000,
) -> RipReport:
    """Exact two-sided isometry bounds over half-size row subsets.

    ``theta_minus`` is the worst lower bound over row subsets of size
    ``ceil(m/2)`` (dropping rows only shrinks ``||A_I x||``, so the minimum
    over all subsets with at least m/2 rows is attained at the smallest
    allowed size); ``theta_plus`` is attained with all rows kept.
    """
    a = as_matrix(a)
    m, n = a.shape
    if not 1 <= k <= n:
        raise ValueError(f"need 1 <= k <= {n}, got k={k}")
    if m > row_cap:
        raise CapExceededError("row subset cap", f"m={m} > {row_cap}")
    n_supports = math.comb(n, k)
    if n_supports > support_cap:
        raise CapExceededError("support enumeration cap", f"C({n},{k})={n_supports}")
    half = (m + 1) // 2
    supports = list(combinations(range(n), k))

    theta_plus = -math.inf
    upper_t: tuple[int, ...] = ()
    for t in supports:
        cols = a[:, t]
        lam_max = float(eig_sym(cols.T @ cols).eigenvalues[0])
        if lam_max > theta_plus:
            theta_plus, upper_t = lam_max, t

    theta_minus = math.inf
    lower_t: tuple[int, ...] = ()
    lower_rows: tuple[int, ...] = ()
    subsets = list(combinations(range(m), half))
    for rows in subsets:
        sub = a[list(rows), :]
        for t in supports:
            cols = sub[:, t]
            lam_min = float(eig_sym(cols.T @ cols).eigenvalues[-1])
            if lam_min < theta_minus:
                theta_minus, lower_t, lower_rows = lam_min, t, rows
    return RipReport(
        order=k,
        theta_minus=theta_minus,
        theta_plus=theta_plus,
        lower_support=lower_t,
        lower_rows=lower_rows,
        upper_support=upper_t,
        enumerated=n_supports * (len(subsets) + 1),
    )


# ---------------------------------------------------------------------------
# Piecewise-trigonometric minimization over the unit circle
# ---------------------------------------------------------------------------
#
# Both exact null-space checks reduce to minimizing
#     g(phi) = sum_j coef_j |xs_j cos(phi) + ys_j sin(phi)|
# over the circle.  Between consecutive zeros of the terms the sign pattern
# is constant and g is a single sinusoid a cos(phi) + b sin(phi), so the
# minimum over each closed arc is attained at an endpoint or at the interior
# stationary angle.  Evaluating those candidates is exact up to roundoff.


def _breakpoints(xs: np.ndarray, ys: np.ndarray, extra=()) -> np.ndarray:
    """Sorted angles in [0, 2pi) where some term ``xs_j cos + ys_j sin`` vanishes."""
    angles = list(extra)
    for xj, yj in zip(xs, ys):
        if math.hypot(xj, yj) <= TOL.struct_zero:
            continue
        base = math.atan2(yj, xj) + 0.5 * math.pi
        angles.append(base % _TWO_PI)
        angles.append((base + math.pi) % _TWO_PI)
    if not angles:
        return np.empty(0)
    angles = np.sort(np.asarray(angles, dtype=float))
    keep = [angles[0]]
    for phi in angles[1:]:
        if phi - keep[-1] > 1e-12:
            keep.append(phi)
    if keep[0] + _TWO_PI - keep[-1] <= 1e-12 and len(keep) > 1:
        keep.pop()
    return np.asarray(keep)


def _circle_min(coef, xs, ys, angles, point_ok=None, arc_ok: bool = True):
    """Minimize ``sum coef |xs cos + ys sin|`` over candidate angles and arcs.

    ``point_ok(phi)`` filters breakpoint candidates; ``arc_ok`` gates interior
    candidates.  Returns ``(min_value, argmin_phi, n_candidates)``; the value
    is None when every candidate was filtered out.
    """

    def g(phi: float) -> float:
        return float(np.sum(coef * np.abs(xs * math.cos(phi) + ys * math.sin(phi))))

    best = math.inf
    best_phi = None
    n_cand = 0

    for phi in angles:
        if point_ok is not None and not point_ok(phi):
            continue
        val = g(phi)
        n_cand += 1
        if val < best:
            best, best_phi = val, phi

    if arc_ok:
        if len(angles) == 0:
            arcs = [(0.0, _TWO_PI)]
        else:
            arcs = [(angles[i], angles[i + 1]) for i in range(len(angles) - 1)]
            arcs.append((angles[-1], angles[0] + _TWO_PI))
        for lo, hi in arcs:
            if hi - lo <= 1e-12:
                continue
            mid = 0.5 * (lo + hi)
            sgn = np.sign(xs * math.cos(mid) + ys * math.sin(mid))
            aa = float(np.sum(coef * sgn * xs))
            bb = float(np.sum(coef * sgn * ys))
            if aa == 0.0 and bb == 0.0:
                # g is constant on this arc; sample its interior once
                val = g(mid)
                n_cand += 1
                if val < best:
                    best, best_phi = val, mid
                continue
            star = math.atan2(-bb, -aa) % _TWO_PI
            for cand in (star, star + _TWO_PI):
                if lo + 1e-12 < cand < hi - 1e-12:
                    val = g(cand)
                    n_cand += 1
                    if val < best:
                        best, best_phi = val, cand % _TWO_PI
    if n_cand == 0:
        return None, None, 0
    return best, best_phi, n_cand


# ---------------------------------------------------------------------------
# Weighted null space property
# ---------------------------------------------------------------------------


def _classify(margin: float, witness, enumerated: int) -> NspVerdict:
    if margin <= 0.0:
        return NspVerdict("fails", margin, witness, enumerated)
    if margin <= TOL.nsp_margin_band:
        return NspVerdict("indeterminate", margin, witness, enumerated)
    return NspVerdict("holds-exact", margin, None, enumerated)


def _worst_support(h: np.ndarray, w: np.ndarray, k: int) -> tuple[int, ...]:
    order = np.argsort(-(w * np.abs(h)), kind="stable")
    return tuple(sorted(int(i) for i in order[:k]))


def _nsp_exact_dim1(h0: np.ndarray, k: int, w: np.ndarray) -> NspVerdict:
    h = h0 / np.linalg.norm(h0)
    support = _worst_support(h, w, k)
    margin = nsp_slack(h, support, w)
    return _classify(margin, NspWitness(h, support), 1)


def _nsp_exact_dim2(kernel: np.ndarray, k: int, w: np.ndarray) -> NspVerdict:
    n = kernel.shape[0]
    h1, h2 = kernel[:, 0], kernel[:, 1]
    angles = _breakpoints(h1, h2)
    best = math.inf
    best_phi = 0.0
    best_t: tuple[int, ...] = ()
    total = 0
    for t in combinations(range(n), k):
        coef = w.copy()
        coef[list(t)] = -coef[list(t)]
        val, phi, n_cand = _circle_min(coef, h1, h2, angles)
        total += n_cand
        if val is not None and val < best:
            best, best_phi, best_t = val, phi, t
    h = math.cos(best_phi) * h1 + math.sin(best_phi) * h2
    return _classify(best, NspWitness(h, best_t), total)


def _nsp_falsify(
    kernel: np.ndarray, k: int, w: np.ndarray, rng: np.random.Generator, samples: int
) -> NspVerdict:
    dim = kernel.shape[1]
    best = math.inf
    best_h = None
    best_t: tuple[int, ...] = ()
    evals = 0
    for _ in range(samples):
        c = rng.standard_normal(dim)
        c /= np.linalg.norm(c)
        h = kernel @ c
        for _ in range(50):
            t = _worst_support(h, w, k)
            slack = nsp_slack(h, t, w)
            evals += 1
            if slack < best:
                best, best_h, best_t = slack, h.copy(), t
            # frozen-sign linear model of the slack, minimized on the sphere
            coef = w.copy()
            coef[list(t)] = -coef[list(t)]
            grad = kernel.T @ (coef * np.sign(h))
            gn = np.linalg.norm(grad)
            if gn <= 1e-14:
                break
            h_new = kernel @ (-grad / gn)
            t_new = _worst_support(h_new, w, k)
            if nsp_slack(h_new, t_new, w) >= slack - 1e-15:
                break
            h = h_new
    witness = NspWitness(best_h, best_t) if best_h is not None else None
    if best <= 0.0:
        return NspVerdict("fails", best, witness, evals)
    return NspVerdict("indeterminate", best, None, evals)


def weighted_nsp_check(
    a,
    k: int,
    w,
    mode: str = "exact",
    rng: np.random.Generator | None = None,
    samples: int = 200,
) -> NspVerdict:
    """Check the weighted null space property of order ``k`` for ``a``.

    Exact mode handles kernel dimensions up to 2 (dimension 0 holds
    vacuously; dimensions 1 and 2 are minimized in closed form over the
    kernel sphere and all supports) and refuses beyond that.  Falsify mode
    searches for violations by random kernel sampling with sign-pattern
    descent; it can return "fails" or "indeterminate" but never certifies.
    """
    a = as_matrix(a)
    n = a.shape[1]
    w = np.asarray(w, dtype=float)
    if w.shape != (n,):
        raise ValueError("weight vector length must match the column count")
    if not 1 <= k <= n:
        raise ValueError(f"need 1 <= k <= {n}, got k={k}")
    kernel = kernel_basis(a)
    dim = kernel.shape[1]
    if mode == "exact":
        if dim == 0:
            return NspVerdict("holds-exact", math.inf, None, 0)
        if dim == 1:
            return _nsp_exact_dim1(kernel[:, 0], k, w)
        if dim == 2:
            return _nsp_exact_dim2(kernel, k, w)
        raise CapExceededError(
            "exact kernel dimension cap",
            f"kernel dimension {dim} > 2; use mode='falsify'",
        )
    if mode == "falsify":
        if dim == 0:
            return NspVerdict("indeterminate", math.inf, None, 0)
        return _nsp_falsify(kernel, k, w, rng or np.random.default_rng(0), samples)
    raise ValueError(f"unknown mode {mode!r}")


# ---------------------------------------------------------------------------
# Phaseless weighted null space property
# ---------------------------------------------------------------------------


def _row_split(a: np.ndarray, rows: tuple[int, ...]) -> tuple[np.ndarray, np.ndarray]:
    m = a.shape[0]
    mask = np.zeros(m, dtype=bool)
    mask[list(rows)] = True
    return a[mask, :], a[~mask, :]


def _phaseless_pair(u0, v0, k, w):
    """Exact minimum slack for one-dimensional kernels on either row block.

    Pairs (u, v) = (cos phi u0, sin phi v0) cover all candidates up to joint
    positive scaling.  Angles with cos phi = 0 or sin phi = 0 make u or v
    zero and are excluded as constraints; the sparsity filter keeps only
    angles where u + v has at most k nonzero coordinates.  Support can drop
    below the generic count only at term breakpoints, so arcs are feasible
    or not as a whole.  Returns (min_slack, argmin_phi, n_candidates).
    """
    n = u0.size
    active = np.flatnonzero(np.maximum(np.abs(u0), np.abs(v0)) > TOL.struct_zero)
    n_active = active.size
    arc_feasible = n_active <= k

    # slack terms: |q_i| with weight +w_i, |p_i| with weight -w_i,
    # where p = u0 cos + v0 sin and q = u0 cos - v0 sin
    xs = np.concatenate([u0, u0])
    ys = np.concatenate([-v0, v0])
    coef = np.concatenate([w, -w])

    angles = _breakpoints(xs, ys, extra=_QUARTERS)

    def support_at(phi: float) -> int:
        p = u0[active] * math.cos(phi) + v0[active] * math.sin(phi)
        return int(np.sum(np.abs(p) > TOL.struct_zero))

    def excluded(phi: float) -> bool:
        phi = phi % _TWO_PI
        d = np.abs(phi - np.concatenate([_QUARTERS, [_TWO_PI]]))
        return bool(d.min() <= 1e-9)

    def point_ok(phi: float) -> bool:
        return not excluded(phi) and support_at(phi) <= k

    return _circle_min(coef, xs, ys, angles, point_ok=point_ok, arc_ok=arc_feasible)


def phaseless_nsp_check(
    a,
    k: int,
    w,
    mode: str = "exact",
    require_nonzero_v: bool = True,
    row_cap: int = 12,
    rng: np.random.Generator | None = None,
    draws: int = 5,
) -> NspVerdict:
    """Check the phaseless weighted null space property of order ``k``.

    For every split of the rows into (S, complement), every pair of nonzero
    kernel vectors u of the S-block and v of the complement block with
    ``u + v`` k-sparse must satisfy the strict weighted inequality
    ``||u + v||_{1,w} < ||u - v||_{1,w}``.  Splits where either kernel is
    trivial impose no constraint.  Exact mode requires both kernels to be
    one-dimensional whenever both are nontrivial and refuses otherwise.

    ``require_nonzero_v=False`` switches to the looser reading in which only
    u must be nonzero; pairs (u, 0) then violate the strict inequality
    outright whenever u is k-sparse (only checked for one-dimensional
    kernels).
    """
    a = as_matrix(a)
    m, n = a.shape
    w = np.asarray(w, dtype=float)
    if w.shape != (n,):
        raise ValueError("weight vector length must match the column count")
    if not 1 <= k <= n:
        raise ValueError(f"need 1 <= k <= {n}, got k={k}")
    if m > row_cap:
        raise CapExceededError("row split cap", f"m={m} > {row_cap}")
    if mode == "falsify":
        return _phaseless_falsify(a, k, w, rng or np.random.default_rng(0), draws)
    if mode != "exact":
        raise ValueError(f"unknown mode {mode!r}")

    best = math.inf
    best_witness: PhaselessWitness | None = None
    total = 0
    for mask_bits in range(1 << max(m - 1, 0)):
        rows = tuple(i + 1 for i in range(m - 1) if mask_bits >> i & 1)
        a_s, a_c = _row_split(a, rows)
        ker_s = kernel_basis(a_s) if a_s.shape[0] else np.eye(n)
        ker_c = kernel_basis(a_c) if a_c.shape[0] else np.eye(n)
        dims = (ker_s.shape[1], ker_c.shape[1])

        if not require_nonzero_v:
            comp = tuple(i for i in range(m) if i not in rows)
            for ker, u_rows in ((ker_s, rows), (ker_c, comp)):
                if ker.shape[1] == 1:
                    u0 = ker[:, 0] / np.linalg.norm(ker[:, 0])
                    if np.sum(np.abs(u0) > TOL.struct_zero) <= k:
                        witness = PhaselessWitness(u0, np.zeros(n), u_rows)
                        return NspVerdict("fails", 0.0, witness, total + 1)

        if dims[0] == 0 or dims[1] == 0:
            continue
        if dims != (1, 1):
            raise CapExceededError(
                "exact kernel pair cap",
                f"row split {rows} has kernel dimensions {dims}; use mode='falsify'",
            )
        u0 = ker_s[:, 0] / np.linalg.norm(ker_s[:, 0])
        v0 = ker_c[:, 0] / np.linalg.norm(ker_c[:, 0])
        val, phi, n_cand = _phaseless_pair(u0, v0, k, w)
        total += n_cand
        if val is not None and val < best:
            best = val
            best_witness = PhaselessWitness(
                math.cos(phi) * u0, math.sin(phi) * v0, rows
            )
    if best_witness is None:
        return NspVerdict("holds-exact", math.inf, None, total)
    return _classify(best, best_witness, total)


def _phaseless_falsify(
    a: np.ndarray, k: int, w: np.ndarray, rng: np.random.Generator, draws: int
) -> NspVerdict:
    m, n = a.shape
    best = math.inf
    best_witness: PhaselessWitness | None = None
    evals = 0
    supports = list(combinations(range(n), k))
    for mask_bits in range(1 << max(m - 1, 0)):
        rows = tuple(i + 1 for i in range(m - 1) if mask_bits >> i & 1)
        a_s, a_c = _row_split(a, rows)
        ker_s = kernel_basis(a_s) if a_s.shape[0] else np.eye(n)
        ker_c = kernel_basis(a_c) if a_c.shape[0] else np.eye(n)
        du, dv = ker_s.shape[1], ker_c.shape[1]
        if du == 0 or dv == 0:
            continue
        stacked = np.hstack([ker_s, ker_c])
        for t in supports:
            off = np.setdiff1d(np.arange(n), t)
            coeff_space = kernel_basis(stacked[off, :]) if off.size else np.eye(du + dv)
            if coeff_space.shape[1] == 0:
                continue
            for _ in range(draws):
                c = coeff_space @ rng.standard_normal(coeff_space.shape[1])
                u = ker_s @ c[:du]
                v = ker_c @ c[du:]
                nu, nv = np.linalg.norm(u), np.linalg.norm(v)
                if nu <= 1e-10 or nv <= 1e-10:
                    continue
                scale = math.hypot(nu, nv)
                u, v = u / scale, v / scale
                slack = phaseless_slack(u, v, w)
                evals += 1
                if slack < best:
                    best = slack
                    best_witness = PhaselessWitness(u, v, rows)
    if evals and best <= 0.0:
        return NspVerdict("fails", best, best_witness, evals)
    return NspVerdict("indeterminate", best if evals else math.inf, None, evals)


# ---------------------------------------------------------------------------
# Brute-force weighted l1 oracles
# ---------------------------------------------------------------------------


class ExhaustiveL1Oracle:
    """Vertex enumeration for ``min ||z||_{1,w} subject to A z = y``.

    Factorizations for all full-column-rank supports are precomputed once,
    so repeated solves against the same matrix are cheap.
    """

    def __init__(self, a, dim_cap: int = 12):
        a = as_matrix(a)
        self.a = a
        self.m, self.n = a.shape
        if self.n > dim_cap:
            raise CapExceededError("oracle dimension cap", f"N={self.n} > {dim_cap}")
        self.degenerate = False
        self._supports: list[tuple[tuple[int, ...], np.ndarray, np.ndarray]] = []
        for size in range(1, min(self.m, self.n) + 1):
            for t in combinations(range(self.n), size):
                cols = a[:, t]
                sing = np.linalg.svd(cols, compute_uv=False)
                if sing[-1] <= 1e-10 * max(sing[0], 1e-300):
                    self.degenerate = True
                    continue
                self._supports.append((t, np.linalg.pinv(cols), cols))

    def solve(self, y, w) -> L1MinResult:
        y = np.asarray(y, dtype=float)
        w = np.asarray(w, dtype=float)
        yn = float(np.linalg.norm(y))
        if yn <= 1e-12:
            return L1MinResult([np.zeros(self.n)], 0.0, self.degenerate)
        feas_tol = TOL.oracle_feasibility * (1.0 + yn)
        candidates: list[tuple[float, np.ndarray]] = []
        for t, pinv, cols in self._supports:
            zt = pinv @ y
            if np.linalg.norm(cols @ zt - y) > feas_tol:
                continue
            z = np.zeros(self.n)
            z[list(t)] = zt
            candidates.append((weighted_l1(z, w), z))
        if not candidates:
            return L1MinResult([], None, self.degenerate)
        vmin = min(c for c, _ in candidates)
        tie = vmin + TOL.oracle_value_tie * (1.0 + abs(vmin))
        kept = [z for c, z in candidates if c <= tie]
        return L1MinResult(_dedupe(kept), vmin, self.degenerate)


def _dedupe(vectors: list[np.ndarray]) -> list[np.ndarray]:
    ordered = sorted(vectors, key=lambda z: tuple(np.round(z, 9)))
    unique: list[np.ndarray] = []
    for z in ordered:
        scale = 1.0 + max((np.abs(u).max() for u in unique), default=0.0)
        if not any(np.abs(z - u).max() <= 1e-7 * scale for u in unique):
            unique.append(z)
    return unique


def brute_force_weighted_l1(a, y, w) -> L1MinResult:
    """Exact minimizer set of ``min ||z||_{1,w} s.t. A z = y`` on small instances."""
    return ExhaustiveL1Oracle(a).solve(y, w)


def brute_force_phaseless(a, b_abs, w, row_cap: int = 14) -> L1MinResult:
    """Exact minimizer set of ``min ||z||_{1,w} s.t. |A z| = b_abs``, up to sign.

    Enumerates sign patterns on the measurements (one per antipodal pair),
    solves each linear program via the exhaustive oracle, and returns the
    union of global minimizers with canonical sign (each returned vector
    stands for the pair +-z).
    """
    a = as_matrix(a)
    m = a.shape[0]
    if m > row_cap:
        raise CapExceededError("sign pattern cap", f"m={m} > {row_cap}")
    b_abs = np.asarray(b_abs, dtype=float)
    oracle = ExhaustiveL1Oracle(a)
    if float(np.linalg.norm(b_abs)) <= 1e-12:
        return L1MinResult([np.zeros(a.shape[1])], 0.0, oracle.degenerate)
    collected: list[tuple[float, np.ndarray]] = []
    for bits in range(1 << max(m - 1, 0)):
        sigma = np.ones(m)
        for i in range(m - 1):
            if bits >> i & 1:
                sigma[i + 1] = -1.0
        res = oracle.solve(sigma * b_abs, w)
        if res.value is None:
            continue
        collected.extend((res.value, z) for z in res.minimizers)
    if not collected:
        return L1MinResult([], None, oracle.degenerate)
    vmin = min(c for c, _ in collected)
    tie = vmin + TOL.oracle_value_tie * (1.0 + abs(vmin))
    kept = [canonical_sign(z) for c, z in collected if c <= tie]
    return L1MinResult(_dedupe(kept), vmin, oracle.degenerate)


def recovers_uniquely(result: L1MinResult, x, up_to_sign: bool = False) -> bool:
    """True when the oracle returned exactly the planted signal (or its sign pair)."""
    x = np.asarray(x, dtype=float)
    if result.value is None or len(result.minimizers) != 1:
        return False
    target = canonical_sign(x) if up_to_sign else x
    z = result.minimizers[0]
    return bool(np.abs(z - target).max() <= 1e-6 * (1.0 + np.abs(x).max()))
