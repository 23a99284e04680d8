"""Limiting moment formulas for unscaled sample covariance matrices.

Every k-th limiting moment is a sum over the special symmetric words of
length 2k: a word with b letters and r+1 even generating vertices contributes
y^r times a product over its letters, where the factor of a letter with
multiplicity s is a constant C_s, lam for the sparse family, or a
two-variable integral of g_s over the generating-vertex variables.

Combinatorial sums (constant, sparse, sandwich, Carleman) are evaluated in
exact rational arithmetic; quadrature paths use floats.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from numbers import Real
from typing import Callable, Mapping, Sequence

import numpy as np

from .circuits import slot_classes
from .hypergraphs import enumerate_ss_words
from .partitions import (
    Word,
    enumerate_partitions,
    has_even_blocks,
    is_non_crossing,
    narayana,
    word_statistics,
)

GridFunction = Callable[[float, float], float] | np.ndarray


@dataclass(frozen=True)
class MomentReport:
    """A limiting moment with its per-word additive breakdown."""

    k: int
    value: Fraction | float
    breakdown: dict[str, Fraction | float]
    error_estimate: float | None = None


@dataclass(frozen=True)
class LetterEdge:
    even_class: int
    odd_class: int
    multiplicity: int
    child: int  # generating vertex introduced by this letter
    parent: int  # pre-existing endpoint


@dataclass(frozen=True)
class WordStructure:
    word: Word
    r: int
    edges: tuple[LetterEdge, ...]


@lru_cache(maxsize=None)
def word_structure(word: Word) -> WordStructure:
    """Generating-vertex layout of a special symmetric word.

    Letter j's first occurrence joins a fresh class j to an earlier one, so
    the b edges over the b+1 classes always form a tree rooted at class 0.
    """
    cls = slot_classes(word)
    m = word.length
    counts = Counter(word.letters)
    stats = word_statistics(word)
    edges = []
    for j, pos in enumerate(stats.first_positions, start=1):
        even_slot = (pos - 1) if pos % 2 else (pos % m)
        odd_slot = pos if pos % 2 else pos - 1
        even_class, odd_class = cls[even_slot], cls[odd_slot]
        parent = odd_class if even_class == j else even_class
        edges.append(LetterEdge(even_class, odd_class, counts[j], j, parent))
    return WordStructure(word, stats.r_plus_1 - 1, tuple(edges))


def even_sequence(values: Sequence[Real]) -> dict[int, Fraction]:
    """[c2, c4, c6, ...] -> {2: c2, 4: c4, 6: c6, ...} (odd orders are zero)."""
    return {2 * (i + 1): Fraction(v) for i, v in enumerate(values)}


def _lookup(c: Mapping[int, Real], size: int) -> Fraction:
    try:
        return Fraction(c[size])
    except KeyError:
        raise ValueError(f"no value supplied for even moment order {size}") from None


def mp_moment(k: int, y: Real) -> Fraction:
    """k-th moment of the Marchenko-Pastur limit with ratio y: the Narayana
    polynomial sum_r C(k,r) C(k-1,r) / (r+1) * y^r."""
    if k < 1:
        raise ValueError("k must be >= 1")
    y = Fraction(y)
    return sum(narayana(k, r) * y**r for r in range(k))


def moment_constant(k: int, y: Real, c: Mapping[int, Real]) -> MomentReport:
    """Limiting moment when the n-scaled entry moments converge to constants:
    sum over special symmetric words of y^r * prod_letters C_multiplicity."""
    y = Fraction(y)
    breakdown: dict[str, Fraction] = {}
    for word in enumerate_ss_words(k):
        st = word_structure(word)
        term = y**st.r
        for edge in st.edges:
            term *= _lookup(c, edge.multiplicity)
        breakdown[word.text] = term
    return MomentReport(k, sum(breakdown.values(), Fraction(0)), breakdown)


def moment_sparse(k: int, y: Real, lam: Real) -> MomentReport:
    """Sparse Bernoulli-type limit: every letter contributes lam, giving
    sum over special symmetric words of y^r * lam^b."""
    if not lam > 0:
        raise ValueError("lam must be positive")
    constants = {2 * j: Fraction(lam) for j in range(1, k + 1)}
    return moment_constant(k, y, constants)


@lru_cache(maxsize=None)
def _even_block_counts(m: int) -> tuple[dict[int, int], dict[int, int]]:
    """Counts of even-block partitions of {1..m} by block count, for the
    non-crossing subclass and the full class."""
    nce: Counter = Counter()
    full: Counter = Counter()
    for p in enumerate_partitions(m):
        if not has_even_blocks(p):
            continue
        b = len(p.blocks)
        full[b] += 1
        if is_non_crossing(p):
            nce[b] += 1
    return dict(nce), dict(full)


def poisson_sandwich(k: int, y: Real, lam: Real) -> tuple[Fraction, Fraction]:
    """Lower and upper bounds for the sparse moment, from the symmetrized
    free-Poisson and Poisson partition sums.

    y <= 1: ( sum_{non-crossing even} (lam*y)^b , sum_{even} lam^b );
    y > 1:  ( sum_{non-crossing even} lam^b     , sum_{even} (lam*y)^b ).
    """
    y, lam = Fraction(y), Fraction(lam)
    if not (lam > 0 and y > 0 and k >= 1):
        raise ValueError("need lam > 0, y > 0, k >= 1")
    nce, full = _even_block_counts(2 * k)
    lower_base = lam * y if y <= 1 else lam
    upper_base = lam if y <= 1 else lam * y
    lower = sum((count * lower_base**b for b, count in sorted(nce.items())), Fraction(0))
    upper = sum((count * upper_base**b for b, count in sorted(full.items())), Fraction(0))
    return lower, upper


def _sample_grid_function(g: GridFunction, grid: int) -> np.ndarray:
    if isinstance(g, np.ndarray):
        if g.shape != (grid, grid):
            raise ValueError(f"grid-sampled array has shape {g.shape}, expected {(grid, grid)}")
        return np.asarray(g, dtype=float)
    xs = (np.arange(grid) + 0.5) / grid
    try:
        out = np.asarray(g(xs[:, None], xs[None, :]), dtype=float)
        if out.shape == (grid, grid):
            return out
    except Exception:
        pass
    return np.array([[float(g(x, u)) for u in xs] for x in xs])


def _coarsen(samples: np.ndarray) -> np.ndarray:
    # 2x2 block means: midpoint samples of the piecewise-constant interpolant
    g = samples.shape[0] // 2
    return samples.reshape(g, 2, g, 2).mean(axis=(1, 3))


def _grid_moment_value(
    k: int, y: float, samples: Mapping[int, np.ndarray], grid: int
) -> tuple[float, dict[str, float]]:
    breakdown: dict[str, float] = {}
    for word in enumerate_ss_words(k):
        st = word_structure(word)
        messages: dict[int, np.ndarray] = {cls: np.ones(grid) for cls in range(len(st.edges) + 1)}
        # eliminate leaf variables in reverse introduction order; each step is
        # a G x G quadrature, so a word costs O(b G^2) instead of O(G^(b+1))
        for edge in reversed(st.edges):
            factor = samples[edge.multiplicity]
            child_msg = messages.pop(edge.child)
            if edge.child == edge.even_class:
                contrib = (factor * child_msg[:, None]).mean(axis=0)
            else:
                contrib = (factor * child_msg[None, :]).mean(axis=1)
            messages[edge.parent] = messages[edge.parent] * contrib
        root = messages.pop(0)
        breakdown[word.text] = y**st.r * float(root.mean())
    return sum(breakdown.values()), breakdown


def _needed_sizes(k: int) -> set[int]:
    return {edge.multiplicity for word in enumerate_ss_words(k) for edge in word_structure(word).edges}


def moment_grid(
    k: int, y: Real, g: Mapping[int, GridFunction], grid: int = 64
) -> MomentReport:
    """Limiting moment for grid-sampled moment functions g_{2m} on [0,1]^2.

    Each word contributes y^r times the integral over its b+1 generating
    variables of prod_letters g_multiplicity(x_even, u_odd), evaluated by the
    midpoint rule with tree elimination.  The error estimate is the change
    from re-evaluating at half resolution.
    """
    if grid < 2:
        raise ValueError("grid resolution must be at least 2")
    yf = float(Fraction(y))
    sizes = _needed_sizes(k)
    missing = sorted(s for s in sizes if s not in g)
    if missing:
        raise ValueError(f"no grid function supplied for even moment order {missing[0]}")
    hi = {s: _sample_grid_function(g[s], grid) for s in sizes}
    value, breakdown = _grid_moment_value(k, yf, hi, grid)
    error = None
    half = grid // 2
    if half >= 2:
        if grid % 2 == 0:
            lo = {
                s: (_coarsen(hi[s]) if isinstance(g[s], np.ndarray) else _sample_grid_function(g[s], half))
                for s in sizes
            }
            coarse, _ = _grid_moment_value(k, yf, lo, half)
            error = abs(value - coarse)
        elif not any(isinstance(g[s], np.ndarray) for s in sizes):
            lo = {s: _sample_grid_function(g[s], half) for s in sizes}
            coarse, _ = _grid_moment_value(k, yf, lo, half)
            error = abs(value - coarse)
    return MomentReport(k, value, breakdown, error)


def moment_profile(
    k: int,
    y: Real,
    sigma: GridFunction,
    c: Mapping[int, Real],
    grid: int = 64,
) -> MomentReport:
    """Variance-profile limit: the letter factor of multiplicity s is
    sigma(x, u)^s * C_s, so this is moment_grid with derived g functions."""
    sizes = _needed_sizes(k)
    constants = {s: float(_lookup(c, s)) for s in sizes}
    if isinstance(sigma, np.ndarray):
        g: dict[int, GridFunction] = {s: sigma**s * constants[s] for s in sizes}
    else:
        def make(s: int) -> Callable[[float, float], float]:
            return lambda x, u: np.asarray(sigma(x, u), dtype=float) ** s * constants[s]

        g = {s: make(s) for s in sizes}
    return moment_grid(k, y, g, grid)


@dataclass(frozen=True)
class CarlemanDiagnostic:
    """Partition-sum moment bounds alpha_{2k} and the running Carleman sums."""

    alphas: tuple[Fraction, ...]
    partial_sums: tuple[float, ...]


def carleman_diagnostic(M: Mapping[int, Real], K: int) -> CarlemanDiagnostic:
    """Compute alpha_{2k} = sum over partitions of {1..2k} of the product of
    M_{block size} (odd orders vanish), and the partial sums of
    alpha_{2k}^(-1/(2k)) whose divergence the Carleman condition asserts.

    Uses the block-of-the-first-element recurrence
    alpha_m = sum_j C(m-1, j-1) M_j alpha_{m-j}, which is the partition sum
    evaluated without enumeration; exhaustive enumeration agrees for small m
    but is unusable at the K ~ 20 scale this diagnostic targets.
    """
    if K < 1:
        raise ValueError("K must be >= 1")
    bounds = {size: Fraction(value) for size, value in M.items()}
    if any(size % 2 and value for size, value in bounds.items()):
        raise ValueError("odd-order bounds must be zero")
    if any(value < 0 for value in bounds.values()):
        raise ValueError("bounds must be non-negative")
    alpha = [Fraction(1)]
    for m in range(1, 2 * K + 1):
        alpha.append(
            sum(
                (
                    math.comb(m - 1, j - 1) * bounds.get(j, Fraction(0)) * alpha[m - j]
                    for j in range(2, m + 1, 2)
                ),
                Fraction(0),
            )
        )
    alphas = tuple(alpha[2 * j] for j in range(1, K + 1))
    partials = []
    running = 0.0
    for j, a in enumerate(alphas, start=1):
        running += float(a) ** (-1.0 / (2 * j)) if a > 0 else math.inf
        partials.append(running)
    return CarlemanDiagnostic(alphas, tuple(partials))


def unbounded_support_bound(
    m: int, t: int, f: Callable[[float], float] | np.ndarray, grid: int = 256
) -> Fraction:
    """Lower bound (mt)! / (t! (m!)^t) * integral of f_{2m}(x)^t dx for the
    moment of order k = m*t; f is the partial integral of g_{2m} in its
    second argument.  The combinatorial prefactor is kept exact."""
    if m < 1 or t < 1:
        raise ValueError("m and t must be >= 1")
    prefactor = math.factorial(m * t) // (math.factorial(t) * math.factorial(m) ** t)
    if isinstance(f, np.ndarray):
        if f.shape != (grid,):
            raise ValueError(f"sampled f has shape {f.shape}, expected {(grid,)}")
        values = np.asarray(f, dtype=float)
    else:
        xs = (np.arange(grid) + 0.5) / grid
        values = np.asarray([float(f(x)) for x in xs])
    integral = float(np.mean(values**t))
    return Fraction(prefactor) * Fraction(integral)
