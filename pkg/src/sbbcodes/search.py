"""Reflection-symmetric weight-4 candidate enumeration, screening and evaluation.

Window semantics: a generator fits window ``W`` when the exponents of its
whole support (all three components together) span at most ``W`` in each
coordinate.  First generators are normalized to ``f1 = 1`` and listed in
one orientation of the sublattice swap; second generators are listed
modulo translation with the support's minimum exponents at zero.
"""

from __future__ import annotations

import json
from collections.abc import Iterable, Iterator, Sequence
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace
from itertools import combinations

import numba
import numpy as np

from .commute import (
    CommMatrix,
    KernelStabilizers,
    commutation_matrix,
    det2,
    kernel_stabilizers,
    left_kernel_generator,
    plane_kernel_generator,
)
from .distance import DEFAULT_MAX_SUBSETS, DressedDistance, combine_distances, min_weight_excluding, torus_anchors
from .gf2e import field_ctx
from .laurent import ONE, ZERO, LaurentPoly, parse
from .pauli import GaugeSpec, Triple, pauli_weight, reflected_pairing
from .torus import TorusCode, TwistedTorus, monomial_reduce, torus_kernel_excess

SCREEN_DEGREE = 16
SCREEN_POINTS = 3


def default_tori(max_n: int = 200, lo: int = 3, hi: int = 9) -> tuple[TwistedTorus, ...]:
    return tuple(
        TwistedTorus(m, ell, q)
        for m in range(lo, hi + 1)
        for ell in range(lo, hi + 1)
        if 3 * m * ell <= max_n
        for q in range(m)
    )


@dataclass(frozen=True)
class SearchConfig:
    window: int = 3
    tori: tuple[TwistedTorus, ...] = field(default_factory=default_tori)
    distance_budget: int = 8
    threads: int = 1
    min_k: int = 1
    min_d: int = 3
    max_subsets: int | None = DEFAULT_MAX_SUBSETS
    first_generators: tuple[str, ...] = ()

    def __post_init__(self):
        if self.window < 0:
            raise ValueError("window must be nonnegative")
        if not self.tori:
            raise ValueError("torus list is empty")

    def first_filter(self) -> set[str] | None:
        """Normalized keys of the allowed first generators, or ``None`` for all."""
        if not self.first_generators:
            return None
        out = set()
        for text in self.first_generators:
            parts = [parse(c) for c in text.split(",")]
            if len(parts) != 3:
                raise ValueError(f"first generator needs three components, got {text!r}")
            out.add(triple_key(normalize_first(tuple(parts))))  # type: ignore[arg-type]
        return out


# ---------------------------------------------------------------------------
# Enumeration


def _box_ok(points: Iterable[tuple[int, int]], window: int) -> bool:
    pts = list(points)
    aa = [p[0] for p in pts]
    bb = [p[1] for p in pts]
    return max(aa) - min(aa) <= window and max(bb) - min(bb) <= window


def _rho_term(t: tuple[int, int]) -> tuple[int, int]:
    return (-t[1], -t[0])


def rho_symmetric_pairs(cells: Sequence[tuple[int, int]]) -> list[frozenset]:
    """Weight-2 ``u`` with ``rho(u) = u`` built from the given exponents."""
    cellset = set(cells)
    out: set[frozenset] = set()
    fixed = [c for c in cells if _rho_term(c) == c]
    for c in cells:
        r = _rho_term(c)
        if r != c and r in cellset:
            out.add(frozenset((c, r)))
    for c1, c2 in combinations(fixed, 2):
        out.add(frozenset((c1, c2)))
    return sorted(out, key=sorted)


def enumerate_first_generators(cfg: SearchConfig | int) -> Iterator[Triple]:
    """Normal forms ``(1, g, h)`` of a weight-4 first generator with vanishing mixed term.

    Case (i) has ``g = 0`` and ``wt(h) = 3``; case (ii) has a monomial ``g``
    and ``h = u g`` with ``rho(u) = u`` of weight 2.  The swapped
    orientations are covered by the simultaneous swap of both generators.
    """
    W = cfg.window if isinstance(cfg, SearchConfig) else int(cfg)
    cells = [(a, b) for a in range(-W, W + 1) for b in range(-W, W + 1)]
    for h in combinations(cells, 3):
        if _box_ok([(0, 0), *h], W):
            yield (ONE, ZERO, LaurentPoly(h))
    rel = [(a, b) for a in range(-2 * W, 2 * W + 1) for b in range(-2 * W, 2 * W + 1)]
    us = rho_symmetric_pairs(rel)
    for g in cells:
        for u in us:
            h = [(g[0] + a, g[1] + b) for a, b in sorted(u)]
            if _box_ok([(0, 0), g, *h], W):
                yield (ONE, LaurentPoly([g]), LaurentPoly(h))


def enumerate_second_generators(cfg: SearchConfig | int) -> Iterator[Triple]:
    """All weight-4 triples in the window, one per translation class."""
    W = cfg.window if isinstance(cfg, SearchConfig) else int(cfg)
    sites = [(s, a, b) for s in range(3) for a in range(W + 1) for b in range(W + 1)]
    for supp in combinations(sites, 4):
        if min(p[1] for p in supp) or min(p[2] for p in supp):
            continue
        comps: list[list[tuple[int, int]]] = [[], [], []]
        for s, a, b in supp:
            comps[s].append((a, b))
        yield tuple(LaurentPoly(c) for c in comps)  # type: ignore[misc]


def triple_support(w: Triple) -> list[tuple[int, int, int]]:
    return sorted((s, a, b) for s, p in enumerate(w) for a, b in p.terms)


def normalize_second(w: Triple) -> Triple:
    pts = [t for p in w for t in p.terms]
    a0 = min(t[0] for t in pts)
    b0 = min(t[1] for t in pts)
    return tuple(p.shift(-a0, -b0) for p in w)  # type: ignore[return-value]


def normalize_first(w: Triple) -> Triple:
    f1 = w[0]
    if not f1.is_monomial():
        raise ValueError("first generator needs a monomial f1 to normalize")
    inv = f1.inverse_monomial()
    return tuple(inv * p for p in w)  # type: ignore[return-value]


def canonical_pair(w1: Triple, w2: Triple) -> tuple[Triple, Triple]:
    """Representative of ``(w1, w2)`` modulo translations and the simultaneous swap."""
    opts = []
    for a, b in ((w1, w2), ((w1[0], w1[2], w1[1]), (w2[0], w2[2], w2[1]))):
        a = normalize_first(a)
        b = normalize_second(b)
        opts.append((spec_key(a, b), a, b))
    # Prefer the orientation the enumerator emits (g monomial or g = 0).
    emitted = [o for o in opts if not o[1][1] or (o[1][1].is_monomial() and o[1][2].weight != 1)]
    _, a, b = min(emitted or opts, key=lambda o: o[0])
    return a, b


def triple_key(w: Triple) -> str:
    return ", ".join(str(p) for p in w)


def spec_key(w1: Triple, w2: Triple) -> str:
    return " ; ".join(triple_key(w) for w in (w1, w2))


def bar_pair(w1: Triple, w2: Triple) -> tuple[Triple, Triple]:
    """Image under ``x -> 1/x, y -> 1/y``, renormalized.

    Inversion preserves every twisted-torus lattice, so both pairs give
    isomorphic codes on each torus.
    """
    b1 = tuple(p.bar() for p in w1)
    b2 = tuple(p.bar() for p in w2)
    return normalize_first(b1), normalize_second(b2)  # type: ignore[arg-type]


# ---------------------------------------------------------------------------
# Screening


@dataclass(frozen=True)
class ScreenResult:
    accepted: bool
    matrix: CommMatrix
    reason: str = ""
    det: LaurentPoly = ZERO


def screen_candidate(w1: Triple, w2: Triple) -> ScreenResult:
    """Keep the pair iff ``det M = 0`` and both stabilizers are nonzero."""
    spec = GaugeSpec(w1, w2)
    M = commutation_matrix(spec)
    det = det2(M)
    if det:
        return ScreenResult(False, M, "nonzero determinant", det)
    if M.is_zero():
        return ScreenResult(False, M, "degenerate: abelian gauge group")
    stabs = kernel_stabilizers(M, spec)
    if stabs.is_degenerate():
        return ScreenResult(False, M, "degenerate: stabilizer weight 0 after cancellation")
    return ScreenResult(True, M)


def missing_sublattice(stabs: KernelStabilizers) -> bool:
    """True when a stabilizer has an identically zero component.

    Every gauge generator has even weight, so under ``x = y = 1`` each gauge
    operator maps to an even-parity vector and no single-qubit operator is
    ever a gauge element.  If ``S_Z`` never touches sublattice ``s``, a
    single-qubit X there is a nontrivial dressed logical on every torus
    (and symmetrically for ``S_X``), so the candidate only yields ``d = 1``.
    """
    return any(not p for p in stabs.sx.xblock) or any(not p for p in stabs.sz.zblock)


def vanishes_on_torus(p: LaurentPoly, t: TwistedTorus) -> bool:
    cells: set[tuple[int, int]] = set()
    for a, b in p.terms:
        cells ^= {monomial_reduce(a, b, t)}
    return not cells


def weight_one_logical(stabs: KernelStabilizers, t: TwistedTorus) -> bool:
    """Whether the torus code has a weight-1 dressed logical operator."""
    return any(vanishes_on_torus(p, t) for p in (*stabs.sx.xblock, *stabs.sz.zblock))


class _PointTables:
    """Log/antilog tables with zero handled through out-of-range sentinels."""

    def __init__(self, e: int = SCREEN_DEGREE):
        ctx = field_ctx(e)
        self.ctx = ctx
        order = ctx.order
        self.order = order
        self.exp2 = np.zeros(4 * order + 2, dtype=np.int64)
        self.exp2[: 2 * order] = np.concatenate([ctx.exp, ctx.exp])
        self.log = ctx.log.copy()
        self.log[0] = 2 * order  # any sum involving it lands in the zero region


def _values(polys: list[LaurentPoly], la: int, lb: int, tables: _PointTables) -> np.ndarray:
    exp, order = tables.ctx.exp, tables.order
    out = np.zeros(len(polys), dtype=np.int64)
    for i, p in enumerate(polys):
        acc = 0
        for a, b in p.terms:
            acc ^= int(exp[(la * a + lb * b) % order])
        out[i] = acc
    return out


@numba.njit(cache=True)
def _screen_kernel(v1, v2, exp2, log):
    """Pairs ``(i, j)`` whose determinant vanishes at every sample point.

    ``v1[p, i]`` holds ``(g1, h1)`` at the two reflected points and
    ``v2[p, j]`` holds ``(f2, h2, g2)`` at both points plus ``d``.
    """
    npts, n1 = v1.shape[0], v1.shape[1]
    n2 = v2.shape[1]
    cap = 1 << 16
    out = np.empty((cap, 2), dtype=np.int64)
    cnt = 0
    for i in range(n1):
        for j in range(n2):
            ok = True
            for p in range(npts):
                g1q2, h1q2, g1q1, h1q1 = v1[p, i, 0], v1[p, i, 1], v1[p, i, 2], v1[p, i, 3]
                f2q1, h2q1, g2q1 = v2[p, j, 0], v2[p, j, 1], v2[p, j, 2]
                f2q2, h2q2, g2q2, dval = v2[p, j, 3], v2[p, j, 4], v2[p, j, 5], v2[p, j, 6]
                b = f2q1 ^ exp2[log[g1q2] + log[h2q1]] ^ exp2[log[h1q2] + log[g2q1]]
                c = f2q2 ^ exp2[log[g1q1] + log[h2q2]] ^ exp2[log[h1q1] + log[g2q2]]
                if dval != exp2[log[b] + log[c]]:
                    ok = False
                    break
            if ok:
                if cnt == out.shape[0]:
                    bigger = np.empty((2 * out.shape[0], 2), dtype=np.int64)
                    bigger[:cnt] = out[:cnt]
                    out = bigger
                out[cnt, 0] = i
                out[cnt, 1] = j
                cnt += 1
    return out[:cnt]


def _sample_points(tables: _PointTables, npts: int, seed: int = 2024) -> list[tuple[int, int]]:
    rng = np.random.default_rng(seed)
    return [(int(rng.integers(1, tables.order)), int(rng.integers(1, tables.order))) for _ in range(npts)]


def screen_all(
    firsts: Sequence[Triple], seconds: Sequence[Triple], npts: int = SCREEN_POINTS
) -> list[tuple[int, int]]:
    """Indices of pairs with ``det M = 0``, decided exactly.

    A compiled pass evaluates the determinant ``d + b * rho(b)`` at fixed
    random points of GF(2^16); the few survivors are confirmed with exact
    polynomial arithmetic.
    """
    tables = _PointTables()
    pts = _sample_points(tables, npts)
    v1 = np.zeros((npts, len(firsts), 4), dtype=np.int64)
    v2 = np.zeros((npts, len(seconds), 7), dtype=np.int64)
    g1s = [w[1] for w in firsts]
    h1s = [w[2] for w in firsts]
    f2s, g2s, h2s = ([w[k] for w in seconds] for k in range(3))
    d2s = None
    for p, (la, lb) in enumerate(pts):
        q1 = (lb, la)  # swapped point
        q2 = (-la, -lb)  # inverted point
        v1[p, :, 0] = _values(g1s, *q2, tables)
        v1[p, :, 1] = _values(h1s, *q2, tables)
        v1[p, :, 2] = _values(g1s, *q1, tables)
        v1[p, :, 3] = _values(h1s, *q1, tables)
        vals = [_values(ps, *q, tables) for q in (q1, q2) for ps in (f2s, h2s, g2s)]
        for k, arr in enumerate(vals):
            v2[p, :, k] = arr
        if d2s is None:
            d2s = [reflected_pairing(w, w) for w in seconds]
        v2[p, :, 6] = _values(d2s, la, lb, tables)
    hits = _screen_kernel(v1, v2, tables.exp2, tables.log)
    exact = []
    for i, j in hits:
        spec = GaugeSpec(firsts[int(i)], seconds[int(j)])
        if not det2(commutation_matrix(spec)):
            exact.append((int(i), int(j)))
    return exact


# ---------------------------------------------------------------------------
# Evaluation


@dataclass(frozen=True)
class CodeReport:
    spec: str
    torus: TwistedTorus
    n: int
    k: int
    d: int | None
    d_x: int | None
    d_z: int | None
    s: int
    r: int
    stabilizer_weights: tuple[int, int]
    certified: bool
    d_lower: int
    nonlocal_: bool = False
    excess: tuple[int, int] = (0, 0)

    @property
    def d_sort(self) -> int:
        return self.d if self.d is not None else self.d_lower

    def sort_key(self):
        return (self.n, -self.k, -self.d_sort, self.spec, str(self.torus))

    @property
    def kd_over_n(self) -> float | None:
        return None if self.d is None else self.k * self.d / self.n

    @property
    def kd2_over_n(self) -> float | None:
        return None if self.d is None else self.k * self.d**2 / self.n

    def as_dict(self) -> dict:
        return {
            "spec": self.spec,
            "torus": [self.torus.m, self.torus.ell, self.torus.q],
            "n": self.n,
            "k": self.k,
            "d": self.d,
            "d_x": self.d_x,
            "d_z": self.d_z,
            "d_lower": self.d_lower,
            "s": self.s,
            "r": self.r,
            "stabilizer_weights": list(self.stabilizer_weights),
            "certified": self.certified,
            "tags": ["nonlocal"] if self.nonlocal_ else [],
            "excess": list(self.excess),
        }

    def to_json(self) -> str:
        return json.dumps(self.as_dict(), sort_keys=True)

    @property
    def label(self) -> str:
        d = self.d if self.d is not None else f">={self.d_lower}"
        return f"[[{self.n},{self.k},{d}]]"


def kernel_excess(M: CommMatrix, t: TwistedTorus) -> tuple[int, int]:
    """Torus kernel excess of the left and right kernels."""
    left = torus_kernel_excess(M.transpose(), left_kernel_generator(M), t)
    right = torus_kernel_excess(M, plane_kernel_generator(M), t)
    return left, right


def evaluate_on_torus(
    spec: GaugeSpec,
    M: CommMatrix,
    stabs: KernelStabilizers,
    t: TwistedTorus,
    distance_budget: int = 8,
    min_k: int = 1,
    min_d: int = 3,
    max_subsets: int | None = DEFAULT_MAX_SUBSETS,
    key: str | None = None,
) -> CodeReport | None:
    """Counts and dressed distance on one torus; ``None`` when below the thresholds.

    ``d_Z`` is only searched up to ``d_X``, so a report may carry
    ``d_z = None`` with ``d`` still exact.
    """
    if min_d >= 2 and weight_one_logical(stabs, t):
        return None
    code = TorusCode(spec, t, stabs)
    counts = code.counts
    if counts.k < min_k or counts.k == 0:
        return None
    excess = (0, 0)
    if not counts.consistent():
        excess = kernel_excess(M, t)
    anchors = torus_anchors(t)
    rx = min_weight_excluding(code.h_sz, code.h_gx, anchors, distance_budget, max_subsets)
    if rx.d is not None and rx.d < min_d:
        return None
    z_cap = distance_budget if rx.d is None else min(distance_budget, rx.d)
    rz = min_weight_excluding(code.h_sx, code.h_gz, anchors, z_cap, max_subsets)
    if rz.d is not None and rz.d < min_d:
        return None
    dd = DressedDistance(combine_distances(rx, rz), rx, rz)
    lower = min(rx.lower_bound, rz.lower_bound)
    if dd.d is None and lower < min_d:
        return None
    return CodeReport(
        spec=key if key is not None else spec_key(spec.w1, spec.w2),
        torus=t,
        n=counts.n,
        k=counts.k,
        d=dd.d,
        d_x=dd.d_x,
        d_z=dd.d_z,
        s=counts.s,
        r=counts.r,
        stabilizer_weights=(pauli_weight(stabs.sx), pauli_weight(stabs.sz)),
        certified=dd.d is not None,
        d_lower=dd.d if dd.d is not None else lower,
        nonlocal_=any(excess) or not counts.consistent(),
        excess=excess,
    )


def evaluate_candidate(
    M: CommMatrix | None,
    w1: Triple,
    w2: Triple,
    tori: Sequence[TwistedTorus],
    distance_budget: int = 8,
    min_k: int = 1,
    min_d: int = 3,
    max_subsets: int | None = DEFAULT_MAX_SUBSETS,
) -> list[CodeReport]:
    spec = GaugeSpec(w1, w2)
    M = M if M is not None else commutation_matrix(spec)
    stabs = kernel_stabilizers(M, spec)
    key = spec_key(w1, w2)
    out = []
    for t in tori:
        rep = evaluate_on_torus(spec, M, stabs, t, distance_budget, min_k, min_d, max_subsets, key)
        if rep is not None:
            out.append(rep)
    return out


def _evaluate_job(args) -> list[CodeReport]:
    w1, w2, aliases, tori, budget, min_k, min_d, max_subsets = args
    reports = evaluate_candidate(None, w1, w2, tori, budget, min_k, min_d, max_subsets)
    return [replace(r, spec=a) for r in reports for a in aliases]


@dataclass
class SearchStats:
    n_first: int = 0
    n_second: int = 0
    n_det_zero: int = 0
    n_degenerate: int = 0
    n_missing_sublattice: int = 0
    n_candidates: int = 0
    n_evaluated: int = 0

    def as_dict(self) -> dict[str, int]:
        return dict(self.__dict__)


@dataclass
class SearchResult:
    reports: list[CodeReport]
    stats: SearchStats

    def lines(self) -> list[str]:
        return [r.to_json() for r in self.reports]


@dataclass(frozen=True)
class Candidate:
    w1: Triple
    w2: Triple
    aliases: tuple[str, ...]

    @property
    def key(self) -> str:
        return spec_key(self.w1, self.w2)


def candidate_pairs(cfg: SearchConfig) -> tuple[list[Candidate], SearchStats]:
    """Screened candidates grouped into inversion orbits.

    Pairs with ``det M = 0`` are confirmed exactly; degenerate pairs and
    pairs whose stabilizers miss a sublattice (only ``d = 1`` codes) are
    dropped.  Each remaining orbit ``{pair, bar(pair)}`` is evaluated once
    and reported under every member's key.
    """
    allowed = cfg.first_filter()
    firsts = [w for w in enumerate_first_generators(cfg) if allowed is None or triple_key(w) in allowed]
    seconds = list(enumerate_second_generators(cfg))
    stats = SearchStats(n_first=len(firsts), n_second=len(seconds))
    prune = cfg.min_d >= 2
    # With g1 = 0 the g-component of S_X is g2 itself.
    groups = [
        ([w for w in firsts if w[1]], seconds),
        ([w for w in firsts if not w[1]], [w for w in seconds if w[1]] if prune else seconds),
    ]
    orbits: dict[str, list[tuple[Triple, Triple]]] = {}
    for fs, ss in groups:
        if not fs or not ss:
            continue
        for i, j in screen_all(fs, ss):
            stats.n_det_zero += 1
            w1, w2 = fs[i], ss[j]
            res = screen_candidate(w1, w2)
            if not res.accepted:
                stats.n_degenerate += 1
                continue
            if prune and missing_sublattice(kernel_stabilizers(res.matrix, GaugeSpec(w1, w2))):
                stats.n_missing_sublattice += 1
                continue
            stats.n_candidates += 1
            pair = (w1, w2)
            mirror = bar_pair(w1, w2)
            rep = min(spec_key(*pair), spec_key(*mirror))
            orbits.setdefault(rep, []).append(pair)
    out = []
    for rep in sorted(orbits):
        members = sorted(orbits[rep], key=lambda p: spec_key(*p))
        w1, w2 = members[0]
        out.append(Candidate(w1, w2, tuple(sorted({spec_key(*p) for p in members}))))
    stats.n_evaluated = len(out)
    return out, stats


def run_search(cfg: SearchConfig) -> SearchResult:
    candidates, stats = candidate_pairs(cfg)
    jobs = [
        (c.w1, c.w2, c.aliases, cfg.tori, cfg.distance_budget, cfg.min_k, cfg.min_d, cfg.max_subsets)
        for c in candidates
    ]
    if cfg.threads > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=cfg.threads) as pool:
            chunks = list(pool.map(_evaluate_job, jobs, chunksize=max(1, len(jobs) // (8 * cfg.threads))))
    else:
        chunks = [_evaluate_job(j) for j in jobs]
    reports = sorted((r for chunk in chunks for r in chunk), key=CodeReport.sort_key)
    return SearchResult(reports, stats)


# ---------------------------------------------------------------------------
# Summary table

SUMMARY_HEADER = ("code", "torus", "kd/n", "kd^2/n", "w(S_X)", "w(S_Z)", "spec")


def summary_row(r: CodeReport) -> tuple[str, ...]:
    kd = "-" if r.kd_over_n is None else f"{r.kd_over_n:.3f}"
    kd2 = "-" if r.kd2_over_n is None else f"{r.kd2_over_n:.2f}"
    return (r.label, f"({r.torus})", kd, kd2, str(r.stabilizer_weights[0]), str(r.stabilizer_weights[1]), r.spec)


def format_summary(reports: Iterable[CodeReport]) -> str:
    rows = [SUMMARY_HEADER, *(summary_row(r) for r in reports)]
    widths = [max(len(row[i]) for row in rows) for i in range(len(SUMMARY_HEADER) - 1)]
    lines = []
    for row in rows:
        cells = [c.ljust(w) for c, w in zip(row, widths)]
        lines.append("  ".join([*cells, row[-1]]))
    return "\n".join(lines) + "\n"
