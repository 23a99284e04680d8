"""Matrix ensemble samplers, S = X X^T spectra, and experiment aggregation.

Sampling is reproducible: replicate r of a run draws from a Philox
counter-based generator keyed by SeedSequence(seed, spawn_key=(r,)), and
entries are filled row-major, so results do not depend on scheduling.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Callable, Mapping, Sequence

import numpy as np

from .partitions import SizeLimitError

DEFAULT_SEED = 1729
MAX_MOMENT_ORDER = 8

FAMILIES = (
    "iid_standardized",
    "sparse_bernoulli",
    "triangular_iid",
    "heavy_tail_stable",
    "variance_profile",
    "dt_triangular",
)

NAMED_PROFILES = ("fig1_quadratic", "fig2_sine", "upper_triangle")


class ContractViolation(RuntimeError):
    """A numerical post-condition (symmetry, PSD floor, moment consistency) failed."""


@dataclass(frozen=True)
class EnsembleConfig:
    family: str
    p: int
    n: int
    lam: float | None = None
    c_seq: Mapping[int, float] | None = None
    alpha: float | None = None
    B: float | None = None
    profile: str | Callable | np.ndarray | None = None
    base_family: str = "sparse_bernoulli"
    t_n: float | str | None = None
    seed: int = DEFAULT_SEED
    replicates: int = 1

    def __post_init__(self) -> None:
        if self.family not in FAMILIES:
            raise ValueError(f"unknown family {self.family!r}; expected one of {FAMILIES}")
        if self.p < 1 or self.n < 1 or self.replicates < 1:
            raise ValueError("p, n and replicates must be >= 1")
        if self.family in ("sparse_bernoulli",) and not self.lam:
            raise ValueError("sparse_bernoulli requires lam > 0")
        if self.family == "triangular_iid" and not (self.c_seq and self.c_seq.get(2)):
            raise ValueError("triangular_iid requires a target sequence with order 2")
        if self.family == "heavy_tail_stable":
            if self.alpha is None or not 0 < self.alpha < 2:
                raise ValueError("heavy_tail_stable requires alpha in (0, 2)")
            if not self.B or self.B <= 0:
                raise ValueError("heavy_tail_stable requires a truncation multiple B > 0")
        if self.family == "variance_profile":
            if self.profile is None:
                raise ValueError("variance_profile requires a profile")
            if self.base_family not in ("sparse_bernoulli", "iid_standardized"):
                raise ValueError("variance_profile base must be sparse_bernoulli or iid_standardized")
            if self.base_family == "sparse_bernoulli" and not self.lam:
                raise ValueError("sparse_bernoulli base requires lam > 0")


def resolve_truncation(t_n: float | str | None, n: int) -> float:
    """Truncation level: a number, the rule "n^{-1/3}", or None/"inf" for none."""
    if t_n is None:
        return math.inf
    if isinstance(t_n, str):
        text = t_n.strip()
        if text in ("inf", "infinity"):
            return math.inf
        if text.replace(" ", "") in ("n^{-1/3}", "n^-1/3", "n**(-1/3)"):
            return float(n) ** (-1.0 / 3.0)
        raise ValueError(f"unknown truncation rule {t_n!r}")
    value = float(t_n)
    if value <= 0:
        raise ValueError("truncation level must be positive")
    return value


def _rng(seed: int, replicate: int) -> np.random.Generator:
    return np.random.Generator(
        np.random.Philox(np.random.SeedSequence(entropy=seed, spawn_key=(replicate,)))
    )


def triangular_two_point(c_seq: Mapping[int, float], n: int) -> tuple[float, float]:
    """Fit x = +-a with probability lam_t/(2n) each (0 otherwise) so that
    n E[x^2] = C_2 and, when C_4 is supplied, n E[x^4] = C_4."""
    c2 = float(c_seq[2])
    if c2 <= 0:
        raise ValueError("C_2 must be positive")
    c4 = float(c_seq.get(4, 0.0))
    if c4 > 0:
        a = math.sqrt(c4 / c2)
        lam_t = c2 * c2 / c4
    else:
        a, lam_t = 1.0, c2
    if lam_t / n > 1:
        raise ValueError(f"two-point weight lam_t/n = {lam_t / n:.3g} exceeds 1; n too small")
    return a, lam_t


def achieved_triangular_sequence(c_seq: Mapping[int, float], n: int, orders: Sequence[int]) -> dict[int, float]:
    """n E[x^{2k}] actually realized by the fitted two-point law."""
    a, lam_t = triangular_two_point(c_seq, n)
    return {order: lam_t * a**order for order in orders}


def _stable_symmetric(rng: np.random.Generator, alpha: float, shape: tuple[int, int]) -> np.ndarray:
    # Chambers-Mallows-Stuck transform, symmetric case
    U = rng.uniform(-math.pi / 2, math.pi / 2, shape)
    E = rng.exponential(1.0, shape)
    if alpha == 1.0:
        return np.tan(U)
    return (np.sin(alpha * U) / np.cos(U) ** (1.0 / alpha)) * (
        np.cos((1.0 - alpha) * U) / E
    ) ** ((1.0 - alpha) / alpha)


def profile_matrix(cfg: EnsembleConfig) -> np.ndarray:
    """The p x n entry-scaling matrix of a variance profile."""
    p, n = cfg.p, cfg.n
    i = np.arange(1, p + 1, dtype=float)[:, None]
    j = np.arange(1, n + 1, dtype=float)[None, :]
    prof = cfg.profile
    if isinstance(prof, str):
        if prof == "fig1_quadratic":
            return (i + j) ** 2 / (2.0 * n * n)
        if prof == "fig2_sine":
            return np.sin(np.pi * (i + j) / (2.0 * n))
        if prof == "upper_triangle":
            return (i / p <= j / n).astype(float)
        raise ValueError(f"unknown named profile {prof!r}; expected one of {NAMED_PROFILES}")
    if isinstance(prof, np.ndarray):
        if prof.shape != (p, n):
            raise ValueError(f"profile array has shape {prof.shape}, expected {(p, n)}")
        return np.asarray(prof, dtype=float)
    out = np.asarray(prof(i / p, j / n), dtype=float)
    if out.shape != (p, n):
        out = np.array([[float(prof(ii / p, jj / n)) for jj in range(1, n + 1)] for ii in range(1, p + 1)])
    return out


def _raw_entries(cfg: EnsembleConfig, rng: np.random.Generator) -> np.ndarray:
    p, n = cfg.p, cfg.n
    family = cfg.family
    if family == "iid_standardized":
        return rng.standard_normal((p, n)) / math.sqrt(n)
    if family == "sparse_bernoulli":
        return (rng.random((p, n)) < cfg.lam / n).astype(float)
    if family == "triangular_iid":
        a, lam_t = triangular_two_point(cfg.c_seq, n)
        u = rng.random((p, n))
        prob = lam_t / n
        return a * (u < prob / 2) - a * ((u >= prob / 2) & (u < prob))
    if family == "heavy_tail_stable":
        a_p = float(p) ** (1.0 / cfg.alpha)  # Pareto-tail surrogate for the stable quantile
        return _stable_symmetric(rng, cfg.alpha, (p, n)) / a_p
    if family == "dt_triangular":
        mask = profile_matrix(
            EnsembleConfig("variance_profile", p, n, lam=1.0, profile="upper_triangle")
        )
        return rng.standard_normal((p, n)) / math.sqrt(n) * mask
    if family == "variance_profile":
        base = EnsembleConfig(cfg.base_family, p, n, lam=cfg.lam, seed=cfg.seed)
        return _raw_entries(base, rng) * profile_matrix(cfg)
    raise ValueError(f"unknown family {family!r}")


def _effective_truncation(cfg: EnsembleConfig) -> float:
    if cfg.family == "heavy_tail_stable" and cfg.t_n is None:
        return float(cfg.B)
    return resolve_truncation(cfg.t_n, cfg.n)


def sample_matrix(cfg: EnsembleConfig, replicate: int) -> np.ndarray:
    """Draw the p x n entry matrix for one replicate, truncation applied."""
    raw = _raw_entries(cfg, _rng(cfg.seed, replicate))
    level = _effective_truncation(cfg)
    if math.isinf(level):
        return raw
    return raw * (np.abs(raw) <= level)


def entry_second_moment(cfg: EnsembleConfig) -> np.ndarray | None:
    """Per-entry E[y^2] of the truncated law, when it has a closed form."""
    p, n = cfg.p, cfg.n
    level = _effective_truncation(cfg)
    if cfg.family == "sparse_bernoulli":
        value = cfg.lam / n if level >= 1 else 0.0
        return np.full((p, n), value)
    if cfg.family == "triangular_iid":
        a, lam_t = triangular_two_point(cfg.c_seq, n)
        value = lam_t / n * a * a if a <= level else 0.0
        return np.full((p, n), value)
    if cfg.family == "iid_standardized":
        if math.isinf(level):
            return np.full((p, n), 1.0 / n)
        c = level * math.sqrt(n)
        phi = math.exp(-c * c / 2) / math.sqrt(2 * math.pi)
        tail = (1 - math.erf(c / math.sqrt(2))) / 2
        return np.full((p, n), (1.0 - 2 * c * phi - 2 * tail) / n)
    if cfg.family in ("dt_triangular", "variance_profile"):
        if cfg.family == "dt_triangular":
            mask = profile_matrix(
                EnsembleConfig("variance_profile", p, n, lam=1.0, profile="upper_triangle")
            )
            base = EnsembleConfig("iid_standardized", p, n, t_n=cfg.t_n, seed=cfg.seed)
        else:
            mask = profile_matrix(cfg)
            base = EnsembleConfig(cfg.base_family, p, n, lam=cfg.lam, t_n=cfg.t_n, seed=cfg.seed)
        inner = entry_second_moment(base)
        # truncating the profile-scaled entry has no simple closed form
        if inner is None or not math.isinf(level):
            return None
        return mask**2 * inner
    return None  # heavy tails: centered diagnostic falls back to pooled mean


def empirical_moments(S: np.ndarray, K: int) -> tuple[float, ...]:
    """(1/p) Tr(S^k) for k = 1..K by repeated dense multiplication."""
    if K < 1:
        raise ValueError("K must be >= 1")
    if K > MAX_MOMENT_ORDER:
        raise SizeLimitError(f"moment order {K} exceeds the cost guard {MAX_MOMENT_ORDER}")
    p = S.shape[0]
    moments = []
    power = S.copy()
    for _ in range(K):
        moments.append(float(np.trace(power)) / p)
        power = power @ S
    return tuple(moments)


def eigenvalues(S: np.ndarray, spot_checks: int = 5, rng: np.random.Generator | None = None) -> np.ndarray:
    """Nondecreasing eigenvalues of a symmetric matrix, with eigenpair
    residuals spot-checked against ||S v - w v|| <= 1e-7 ||S||."""
    S = np.asarray(S, dtype=float)
    if S.ndim != 2 or S.shape[0] != S.shape[1]:
        raise ValueError("S must be square")
    if not np.allclose(S, S.T, atol=1e-10, rtol=0.0):
        raise ValueError("S is not symmetric within 1e-10")
    w, v = np.linalg.eigh(S)
    scale = max(abs(w[0]), abs(w[-1]), 1e-300)
    rng = rng or np.random.default_rng(0)
    for idx in rng.choice(len(w), size=min(spot_checks, len(w)), replace=False):
        residual = np.linalg.norm(S @ v[:, idx] - w[idx] * v[:, idx])
        if residual > 1e-7 * scale:
            raise ContractViolation(
                f"eigenpair {idx} residual {residual:.3e} exceeds 1e-7 * ||S|| = {1e-7 * scale:.3e}"
            )
    return w


@dataclass(frozen=True)
class SpectralSample:
    replicate_id: int
    seed_used: tuple[int, int]
    eigenvalues: np.ndarray
    empirical_moments: tuple[float, ...]
    truncation_mass: float
    second_moment_gap: float | None


@dataclass(frozen=True)
class ExperimentReport:
    config: EnsembleConfig
    K: int
    samples: tuple[SpectralSample, ...]
    moment_mean: np.ndarray
    moment_stderr: np.ndarray
    hist_edges: np.ndarray
    hist_counts: np.ndarray
    achieved_sequence: dict[int, float] | None = None

    def pooled_eigenvalues(self) -> np.ndarray:
        return np.concatenate([s.eigenvalues for s in self.samples])


def _one_replicate(cfg: EnsembleConfig, replicate: int, K: int) -> SpectralSample:
    rng = _rng(cfg.seed, replicate)
    raw = _raw_entries(cfg, rng)
    level = _effective_truncation(cfg)
    if math.isinf(level):
        truncated = raw
        mass = 0.0
    else:
        keep = np.abs(raw) <= level
        truncated = raw * keep
        mass = float((raw[~keep] ** 2).sum()) / cfg.n
    S = truncated @ truncated.T
    eigs = eigenvalues(S, rng=rng)
    scale = max(1.0, float(eigs[-1]))
    if eigs[0] < -1e-9 * scale:
        raise ContractViolation(f"eigenvalue {eigs[0]:.3e} below the PSD floor")
    moments = empirical_moments(S, K)
    for k, m in enumerate(moments, start=1):
        power_sum = float((eigs**k).sum()) / cfg.p
        if abs(m - power_sum) > 1e-8 * max(1.0, abs(m)):
            raise ContractViolation(
                f"trace moment k={k} ({m!r}) disagrees with eigenvalue power sum ({power_sum!r})"
            )
    expected_sq = entry_second_moment(cfg)
    gap = None
    if expected_sq is not None:
        gap = float((truncated**2).sum() - expected_sq.sum()) / cfg.p
    return SpectralSample(replicate, (cfg.seed, replicate), eigs, moments, mass, gap)


def run_experiment(
    cfg: EnsembleConfig,
    K: int,
    workers: int = 1,
    bins: str | int | Sequence[float] = "fd",
) -> ExperimentReport:
    """Sample all replicates, aggregate spectral moments and the pooled
    eigenvalue histogram (Freedman-Diaconis bins unless overridden)."""
    replicates = range(cfg.replicates)
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            samples = tuple(pool.map(lambda r: _one_replicate(cfg, r, K), replicates))
    else:
        samples = tuple(_one_replicate(cfg, r, K) for r in replicates)

    matrix = np.array([s.empirical_moments for s in samples])
    mean = matrix.mean(axis=0)
    if len(samples) > 1:
        stderr = matrix.std(axis=0, ddof=1) / math.sqrt(len(samples))
    else:
        stderr = np.zeros(K)
    pooled = np.concatenate([s.eigenvalues for s in samples])
    counts, edges = np.histogram(pooled, bins=bins)

    achieved = None
    if cfg.family == "triangular_iid":
        achieved = achieved_triangular_sequence(cfg.c_seq, cfg.n, [2 * j for j in range(1, K + 1)])

    # centered diagnostic for families without a closed-form E[y^2]
    if samples and samples[0].second_moment_gap is None:
        sums = np.array([(s.eigenvalues.sum()) for s in samples])  # tr S = sum y^2
        center = sums.mean()
        samples = tuple(
            SpectralSample(
                s.replicate_id,
                s.seed_used,
                s.eigenvalues,
                s.empirical_moments,
                s.truncation_mass,
                float((sums[i] - center) / cfg.p),
            )
            for i, s in enumerate(samples)
        )

    return ExperimentReport(cfg, K, samples, mean, stderr, edges, counts, achieved)
