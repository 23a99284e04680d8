"""Command-line entry point: classification, counting, censuses, moment
evaluation, simulation, hypergraph tables, and the cross-module verify suite.

All floating-point output is printed with 17 significant digits so that
regression runs are bit-stable; every verb is deterministic given its
configuration, including seeds.
"""

from __future__ import annotations

import argparse
import itertools
import json

import os
import sys
import time
from fractions import Fraction
from pathlib import Path

import numpy as np

from . import circuits, ensembles, hypergraphs, moments, partitions
from .ensembles import ContractViolation, EnsembleConfig
from .partitions import Partition, SizeLimitError, Word

EXIT_CONFIG = 2
EXIT_SIZE_LIMIT = 3
EXIT_CONTRACT = 4

class ConfigError(ValueError):
    pass

def fmt(x) -> str:
    if isinstance(x, Fraction):
        x = float(x)
    if isinstance(x, float):
        return format(x, ".17g")
    return str(x)

def _out_dir(args) -> Path:
    out = Path(args.out or os.environ.get("COVMOMENTS_OUT", "."))
    out.mkdir(parents=True, exist_ok=True)
    return out

def _write_csv(path: Path, header: list[str], rows: list[list]) -> None:
    with open(path, "w") as fh:
        fh.write(",".join(header) + "\n")
        for row in rows:
            fh.write(",".join(fmt(v) for v in row) + "\n")

def _parse_k_range(text: str) -> list[int]:
    if ".." in text:
        lo, hi = text.split("..", 1)
        ks = list(range(int(lo), int(hi) + 1))
    else:
        ks = [int(text)]
    if not ks or ks[0] < 1:
        raise ConfigError(f"bad k range {text!r}")
    return ks

def _parse_constants(text: str) -> dict[int, Fraction]:
    out = {}
    for item in text.split(","):
        key, _, value = item.partition("=")
        if not _:
            raise ConfigError(f"bad constant entry {item!r}; expected like 2=1,4=0.5")
        out[int(key)] = Fraction(value)
    return out

# ---------------------------------------------------------------- classify

def run_classify(args) -> int:
    try:
        blocks = json.loads(args.blocks)
        partition = Partition.from_blocks(blocks)
    except (json.JSONDecodeError, TypeError, ValueError) as exc:
        raise ConfigError(f"bad --blocks value: {exc}") from exc
    cls = partitions.classify(partition)
    payload = {
        "blocks": partition.as_lists(),
        "word": partition.to_word().text,
        "is_pair": cls.is_pair,
        "is_even_blocks": cls.is_even_blocks,
        "is_non_crossing": cls.is_non_crossing,
        "is_special_symmetric": cls.is_special_symmetric,
        "b": cls.b,
        "r_plus_1": cls.r_plus_1,
    }
    if args.format == "csv":
        keys = list(payload)
        print(",".join(keys))
        print(",".join(str(payload[k]).lower() if isinstance(payload[k], bool) else str(payload[k]) for k in keys))
    else:
        print(json.dumps(payload))
    return 0

# ---------------------------------------------------------------- count

def run_count(args) -> int:
    k = args.k
    table = partitions.count_ss(
        k, by=("blocks", "even_generating"), pair_only=args.pair_only, cap=args.cap
    )
    rows = [[k, b, r, count] for (b, r), count in sorted(table.items())]
    out = _out_dir(args) / "counts.csv"
    _write_csv(out, ["k", "b", "r_plus_1", "count"], rows)
    total = sum(table.values())
    print(f"count: {total} special symmetric partitions of {{1..{2 * k}}}"
          f"{' (pair-matched only)' if args.pair_only else ''} -> {out}")
    return 0

# ---------------------------------------------------------------- census

def run_census(args) -> int:
    word = Word.from_text(args.word)
    results = []
    if args.link in ("S", "both"):
        fn = circuits.census_s_exhaustive if args.exhaustive else circuits.census_s
        results.append(fn(word, args.p, args.n, budget=args.budget))
    if args.link in ("wigner", "both"):
        N = max(args.p, args.n)
        fn = circuits.census_w_exhaustive if args.exhaustive else circuits.census_w
        results.append(fn(word, N, budget=args.budget))
    rows = [
        [r.word, r.link, r.p, r.n, r.exact_count,
         "" if r.predicted_count is None else r.predicted_count]
        for r in results
    ]
    out = _out_dir(args) / "census.csv"
    _write_csv(out, ["word", "link", "p", "n", "exact", "predicted"], rows)
    for r in results:
        predicted = "none" if r.predicted_count is None else str(r.predicted_count)
        print(f"census: word={r.word} link={r.link} p={r.p} n={r.n} "
              f"exact={r.exact_count} predicted={predicted}")
    return 0

# ---------------------------------------------------------------- moments

def _load_grid_csv(path: str) -> np.ndarray:
    return np.loadtxt(path, delimiter=",", dtype=float, ndmin=2)

def run_moments(args) -> int:
    ks = _parse_k_range(args.k)
    y = Fraction(args.y)
    source = None
    reports: dict[int, moments.MomentReport | None] = {}
    values: dict[int, Fraction | float] = {}
    sandwich_rows = {}

    if args.mp:
        source = "mp"
        for k in ks:
            values[k] = moments.mp_moment(k, y)
            reports[k] = None
    elif args.sparse:
        if args.lam is None:
            raise ConfigError("--sparse requires --lam")
        source = "sparse"
        lam = Fraction(args.lam)
        for k in ks:
            report = moments.moment_sparse(k, y, lam)
            reports[k], values[k] = report, report.value
            if args.sandwich:
                sandwich_rows[k] = moments.poisson_sandwich(k, y, lam)
    elif args.constant and not args.profile_csv:
        source = "constant"
        constants = _parse_constants(args.constant)
        for k in ks:
            report = moments.moment_constant(k, y, constants)
            reports[k], values[k] = report, report.value
    elif args.profile_csv:
        if not args.constant:
            raise ConfigError("--profile-csv requires --constant for the base sequence")
        source = "profile"
        sigma = _load_grid_csv(args.profile_csv)
        if sigma.shape != (args.grid, args.grid):
            raise ConfigError(f"profile grid has shape {sigma.shape}, expected {(args.grid, args.grid)}")
        constants = _parse_constants(args.constant)
        for k in ks:
            report = moments.moment_profile(k, y, sigma, constants, grid=args.grid)
            reports[k], values[k] = report, report.value
    elif args.g:
        source = "grid"
        g = {}
        for item in args.g:
            key, _, path = item.partition("=")
            if not _:
                raise ConfigError(f"bad --g entry {item!r}; expected like 2=g2.csv")
            g[int(key)] = _load_grid_csv(path)
        for k in ks:
            report = moments.moment_grid(k, y, g, grid=args.grid)
            reports[k], values[k] = report, report.value
    else:
        raise ConfigError("choose a source: --mp, --sparse, --constant, --profile-csv or --g")

    header = ["k", "value"] + (["lower", "upper"] if sandwich_rows else [])
    rows = []
    for k in ks:
        row = [k, values[k]]
        if sandwich_rows:
            row += list(sandwich_rows[k])
        rows.append(row)
    out = _out_dir(args) / "moments.csv"
    _write_csv(out, header, rows)

    payload = {"source": source, "y": fmt(y), "moments": {}}
    for k in ks:
        entry = {"value": fmt(values[k])}
        report = reports[k]
        if report is not None:
            entry["breakdown"] = {w: fmt(v) for w, v in report.breakdown.items()}
            if report.error_estimate is not None:
                entry["error_estimate"] = fmt(report.error_estimate)
        payload["moments"][str(k)] = entry
    with open(_out_dir(args) / "moments.json", "w") as fh:
        json.dump(payload, fh, indent=1)

    print(f"moments: source={source} y={fmt(y)} k={args.k} -> {out}")
    return 0

# ---------------------------------------------------------------- simulate

def _coerce_scalar(text: str):
    text = text.strip().strip('"').strip("'")
    lowered = text.lower()
    if lowered in ("true", "false"):
        return lowered == "true"
    for cast in (int, float):
        try:
            return cast(text)
        except ValueError:
            continue
    return text

def load_config(path: str) -> dict:
    """Flat key = value files with optional [sections], or a JSON object."""
    raw = Path(path).read_text()
    if path.endswith(".json") or raw.lstrip().startswith("{"):
        try:
            data = json.loads(raw)
        except json.JSONDecodeError as exc:
            raise ConfigError(f"bad JSON config {path}: {exc}") from exc
        if not isinstance(data, dict):
            raise ConfigError("config must be a JSON object")
        return data
    out: dict = {}
    for lineno, line in enumerate(raw.splitlines(), start=1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("[") and line.endswith("]"):
            continue  # sections are organizational only
        key, sep, value = line.partition("=")
        if not sep:
            raise ConfigError(f"{path}:{lineno}: expected key = value, got {line!r}")
        out[key.strip()] = _coerce_scalar(value)
    return out

def config_to_ensemble(data: dict, seed_override: int | None = None) -> tuple[EnsembleConfig, dict]:
    known = {
        "family", "p", "n", "lam", "alpha", "B", "t_n", "seed", "replicates",
        "profile", "base_family", "c2", "c4", "K", "workers", "bins",
    }
    unknown = set(data) - known
    if unknown:
        raise ConfigError(f"unknown config keys: {sorted(unknown)}")
    for required in ("family", "p", "n"):
        if required not in data:
            raise ConfigError(f"config is missing {required!r}")
    c_seq = None
    if "c2" in data or "c4" in data:
        c_seq = {2: float(data.get("c2", 0.0))}
        if "c4" in data:
            c_seq[4] = float(data["c4"])
    try:
        cfg = EnsembleConfig(
            family=str(data["family"]),
            p=int(data["p"]),
            n=int(data["n"]),
            lam=float(data["lam"]) if "lam" in data else None,
            c_seq=c_seq,
            alpha=float(data["alpha"]) if "alpha" in data else None,
            B=float(data["B"]) if "B" in data else None,
            profile=data.get("profile"),
            base_family=str(data.get("base_family", "sparse_bernoulli")),
            t_n=data.get("t_n"),
            seed=int(seed_override if seed_override is not None else data.get("seed", ensembles.DEFAULT_SEED)),
            replicates=int(data.get("replicates", 1)),
        )
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc
    extras = {
        "K": int(data.get("K", 4)),
        "workers": int(data.get("workers", 1)),
        "bins": data.get("bins", "fd"),
    }
    return cfg, extras

GNUPLOT_TEMPLATE = """\
set datafile separator ","
set style fill solid 0.6
set xlabel "eigenvalue"
set ylabel "count"
plot "{csv}" every ::1 using (($1+$2)/2):3:($2-$1) with boxes notitle
"""

def run_simulate(args) -> int:
    data = load_config(args.config)
    cfg, extras = config_to_ensemble(data, seed_override=args.seed)
    workers = args.workers or extras["workers"]
    report = ensembles.run_experiment(cfg, extras["K"], workers=workers, bins=extras["bins"])
    out = _out_dir(args)

    _write_csv(
        out / "moments.csv",
        ["k", "mean", "stderr"],
        [[k + 1, report.moment_mean[k], report.moment_stderr[k]] for k in range(extras["K"])],
    )
    _write_csv(
        out / "hist.csv",
        ["left_edge", "right_edge", "count"],
        [
            [report.hist_edges[i], report.hist_edges[i + 1], int(report.hist_counts[i])]
            for i in range(len(report.hist_counts))
        ],
    )
    _write_csv(
        out / "diag.csv",
        ["replicate", "truncation_mass", "second_moment_gap"],
        [
            [s.replicate_id, s.truncation_mass,
             "" if s.second_moment_gap is None else s.second_moment_gap]
            for s in report.samples
        ],
    )
    if args.gnuplot:
        (out / "hist.gp").write_text(GNUPLOT_TEMPLATE.format(csv=out / "hist.csv"))
    if report.achieved_sequence:
        achieved = ", ".join(f"{k}:{fmt(v)}" for k, v in sorted(report.achieved_sequence.items()))
        print(f"simulate: achieved n*E[x^order] = {{{achieved}}}")
    print(
        f"simulate: family={cfg.family} p={cfg.p} n={cfg.n} replicates={cfg.replicates} "
        f"seed={cfg.seed} -> {out}/moments.csv,hist.csv,diag.csv"
    )
    return 0

# ---------------------------------------------------------------- hypergraph

def run_hypergraph(args) -> int:
    if args.word:
        word = Word.from_text(args.word)
        h = hypergraphs.word_to_hypergraph(word)
        payload = {
            "word": word.text,
            "sigma": h.sigma.as_lists(),
            "tau": h.tau.as_lists(),
            "acyclic": hypergraphs.is_acyclic(h),
            "incidence": {str(e): sorted(vs) for e, vs in sorted(h.incidence().items())},
        }
        print(json.dumps(payload))
        return 0
    k = args.k
    table = hypergraphs.count_noiry_classes(k)
    rows = [
        [k, key.a, key.l, "|".join(map(str, key.sizes)), count]
        for key, count in sorted(table.items(), key=lambda kv: (kv[0].a, kv[0].l, kv[0].sizes))
    ]
    out = _out_dir(args) / "counts.csv"
    _write_csv(out, ["k", "a", "l", "multiset", "count"], rows)
    print(f"hypergraph: {sum(table.values())} special symmetric words of length {2 * k} "
          f"in {len(table)} classes -> {out}")
    return 0

# ---------------------------------------------------------------- verify

def _check_ss_examples():
    member = Partition.from_blocks([[1, 2, 5, 6], [3, 4, 7, 8]])
    non_member = Partition.from_blocks([[1, 2, 6, 7], [3, 4, 5, 8]])
    ok = partitions.is_special_symmetric(member) and not partitions.is_special_symmetric(non_member)
    return ok, "both reference partitions of {1..8} classify as stated"

def _check_nc2(max_k):
    for k in range(1, min(max_k, 5) + 1):
        ss_pairs, nc_pairs = set(), set()
        for p in partitions.enumerate_pair_partitions(2 * k):
            if partitions.is_special_symmetric(p):
                ss_pairs.add(p.blocks)
            if partitions.is_non_crossing(p):
                nc_pairs.add(p.blocks)
        if ss_pairs != nc_pairs or len(nc_pairs) != partitions.catalan(k):
            return False, f"failed at k={k}"
    return True, f"pair censuses match Catalan numbers up to k={min(max_k, 5)}"

def _check_narayana(max_k):
    top = min(max_k, 6)
    for k in range(1, top + 1):
        table = partitions.count_ss(k, "even_generating", pair_only=True)
        for r in range(k):
            if table.get(r + 1, 0) != partitions.narayana(k, r):
                return False, f"failed at k={k}, r={r}"
    return True, f"pair-matched counts equal Narayana numbers up to k={top}"

def _check_census_product_law(max_k):
    top = min(2 * max_k, 6)
    for m in range(2, top + 1, 2):
        for p in partitions.enumerate_partitions(m):
            word = p.to_word()
            ss = partitions.is_special_symmetric(p)
            for pp, nn in itertools.product((1, 2, 3), (1, 2, 3)):
                result = circuits.census_s(word, pp, nn)
                if ss and result.exact_count != result.predicted_count:
                    return False, f"SS word {word.text} ({pp},{nn})"
            if not ss:
                b = word.distinct_letters
                ratios = [circuits.census_s(word, N, N).exact_count / N ** (b + 1) for N in (2, 3, 4)]
                if not (ratios[0] >= ratios[1] >= ratios[2] and ratios[2] < 1):
                    return False, f"non-SS word {word.text} ratios {ratios}"
    return True, f"exact counts p^(r+1) n^(b-r) for all words of length <= {top}"

def _check_containment(max_k):
    top = min(2 * max_k, 4)
    for m in range(2, top + 1, 2):
        for p in partitions.enumerate_partitions(m):
            for pp, nn in itertools.product((1, 2, 3), (1, 2, 3)):
                if not circuits.verify_containment(p.to_word(), pp, nn):
                    return False, f"word {p.to_word().text}"
    return True, f"covariance circuits embed in Wigner circuits, lengths <= {top}"

def _check_mp_reduction(max_k):
    constants = {2 * j: Fraction(int(j == 1)) for j in range(1, min(max_k, 6) + 1)}
    for k in range(1, min(max_k, 6) + 1):
        for y in (Fraction(1, 2), Fraction(2)):
            if moments.moment_constant(k, y, constants).value != moments.mp_moment(k, y):
                return False, f"k={k}, y={y}"
    return True, f"constant-sequence reduction equals the Narayana polynomial up to k={min(max_k, 6)}"

def _check_sandwich(max_k):
    top = min(max_k, 4)
    for k in range(1, top + 1):
        for lam in (Fraction(1, 2), Fraction(1), Fraction(2)):
            for y in (Fraction(1, 2), Fraction(2)):
                lower, upper = moments.poisson_sandwich(k, y, lam)
                beta = moments.moment_sparse(k, y, lam).value
                if not (lower <= beta <= upper):
                    return False, f"containment failed at k={k}, lam={lam}, y={y}"
                if k >= 2 and not (lower < beta < upper):
                    return False, f"strictness failed at k={k}, lam={lam}, y={y}"
    return True, f"bounds contain the sparse moments (strictly for 2 <= k <= {top})"

def _check_hypergraph(max_k):
    top = min(max_k, 4)
    for k in range(1, top + 1):
        ss = list(hypergraphs.enumerate_ss_words(k))
        by_b: dict[int, int] = {}
        for word in ss:
            h = hypergraphs.word_to_hypergraph(word)
            if hypergraphs.hypergraph_to_word(h) != word:
                return False, f"round trip failed for {word.text}"
            by_b[word.distinct_letters] = by_b.get(word.distinct_letters, 0) + 1
        if hypergraphs.count_acyclic_pairs(k) != by_b:
            return False, f"count identity failed at k={k}"
    return True, f"round trips and acyclic-pair counts agree up to 2k={2 * top}"

def _check_noiry(max_k):
    top = min(max_k, 4)
    for k in range(1, top + 1):
        total = sum(hypergraphs.count_noiry_classes(k).values())
        census = partitions.count_ss(k)["total"]
        if total != census:
            return False, f"k={k}: classes {total} vs census {census}"
    return True, f"class totals equal the special symmetric census up to 2k={2 * top}"

def _check_grid(max_k):
    constants = {2: Fraction(1), 4: Fraction(1, 4), 6: Fraction(2)}
    g = {s: np.full((16, 16), float(v)) for s, v in constants.items()}
    for k in range(1, min(max_k, 3) + 1):
        grid_value = moments.moment_grid(k, Fraction(1, 2), g, grid=16).value
        exact = float(moments.moment_constant(k, Fraction(1, 2), constants).value)
        if abs(grid_value - exact) > 1e-10:
            return False, f"constant integrand mismatch at k={k}"
    xs = (np.arange(128) + 0.5) / 128
    product = moments.moment_grid(1, 1, {2: np.outer(xs, xs)}, grid=128).value
    if abs(product - 0.25) > 1e-6:
        return False, f"xy integral {product}"
    return True, "quadrature reproduces constant sums to 1e-10 and the xy integral to 1e-6"

def _check_unbounded(max_k):
    g = {2 * j: (np.ones((16, 16)) if j == 1 else np.zeros((16, 16))) for j in range(1, 5)}
    for t in range(1, min(max_k, 4) + 1):
        bound = float(moments.unbounded_support_bound(1, t, np.ones(64), grid=64))
        for y in (0.5, 1.0):
            if bound > moments.moment_grid(t, y, g, grid=16).value + 1e-12:
                return False, f"bound exceeds moment at t={t}, y={y}"
    return True, "factorial lower bounds stay below the quadrature moments"

def _check_simulation():
    cfg = EnsembleConfig("sparse_bernoulli", 30, 60, lam=2.0, seed=ensembles.DEFAULT_SEED, replicates=3)
    first = ensembles.run_experiment(cfg, 3)
    second = ensembles.run_experiment(cfg, 3)
    if not np.array_equal(first.moment_mean, second.moment_mean):
        return False, "rerun differed"
    for sample in first.samples:
        if sample.eigenvalues[0] < -1e-9:
            return False, "PSD floor violated"
        power = float(np.mean(sample.eigenvalues))
        if abs(sample.empirical_moments[0] - power) > 1e-8 * max(1.0, abs(power)):
            return False, "trace/eigenvalue mismatch"
    return True, "deterministic rerun, PSD floor and trace consistency hold"

VERIFY_CHECKS = [
    ("ss-definition-examples", lambda mk: _check_ss_examples()),
    ("nc2-catalan", _check_nc2),
    ("narayana-pair-census", _check_narayana),
    ("census-exact-counts", _check_census_product_law),
    ("wigner-containment", _check_containment),
    ("mp-constant-reduction", _check_mp_reduction),
    ("sparse-sandwich", _check_sandwich),
    ("hypergraph-roundtrip", _check_hypergraph),
    ("noiry-class-totals", _check_noiry),
    ("grid-quadrature", _check_grid),
    ("unbounded-support-bound", _check_unbounded),
    ("simulation-contracts", lambda mk: _check_simulation()),
]

def run_verify(args) -> int:
    results = []
    all_ok = True
    for name, check in VERIFY_CHECKS:
        start = time.perf_counter()
        try:
            ok, detail = check(args.max_k)
        except Exception as exc:  # a crash is a failure, not an abort
            ok, detail = False, f"{type(exc).__name__}: {exc}"
        seconds = time.perf_counter() - start
        results.append({"name": name, "passed": bool(ok), "seconds": round(seconds, 3), "detail": detail})
        all_ok &= ok
        print(f"{'PASS' if ok else 'FAIL'}  {name:28s} {seconds:7.2f}s  {detail}")
    report = {"max_k": args.max_k, "all_passed": all_ok, "checks": results}
    out = _out_dir(args) / "verify_report.json"
    with open(out, "w") as fh:
        json.dump(report, fh, indent=1)
    print(f"verify: {'all checks passed' if all_ok else 'FAILURES PRESENT'} -> {out}")
    return 0 if all_ok else EXIT_CONTRACT

# ---------------------------------------------------------------- main

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="covmoments",
        description="Limiting spectral moments of sample covariance matrices "
        "via special symmetric partitions, with censuses and simulation.",
    )
    parser.add_argument("--out", help="output directory (default $COVMOMENTS_OUT or .)")
    sub = parser.add_subparsers(dest="verb", required=True)

    c = sub.add_parser("classify", help="classify a partition given as JSON blocks")
    c.add_argument("blocks", help='e.g. "[[1,2,5,6],[3,4,7,8]]"')
    c.add_argument("--format", choices=("json", "csv"), default="json")
    c.set_defaults(fn=run_classify)

    c = sub.add_parser("count", help="count special symmetric partitions of {1..2k}")
    c.add_argument("--k", type=int, required=True)
    c.add_argument("--pair-only", action="store_true")
    c.add_argument("--cap", type=int, default=None)
    c.set_defaults(fn=run_count)

    c = sub.add_parser("census", help="count circuits compatible with a word")
    c.add_argument("--word", required=True)
    c.add_argument("--p", type=int, required=True)
    c.add_argument("--n", type=int, required=True)
    c.add_argument("--link", choices=("S", "wigner", "both"), default="S")
    c.add_argument("--exhaustive", action="store_true", help="full tuple search instead of propagation")
    c.add_argument("--budget", type=int, default=None)
    c.set_defaults(fn=run_census)

    c = sub.add_parser("moments", help="evaluate limiting moment formulas")
    c.add_argument("--k", required=True, help="single k or a range like 1..6")
    c.add_argument("--y", default="1", help="aspect ratio limit p/n")
    c.add_argument("--mp", action="store_true", help="Marchenko-Pastur moments")
    c.add_argument("--sparse", action="store_true", help="sparse family; needs --lam")
    c.add_argument("--lam", default=None)
    c.add_argument("--sandwich", action="store_true", help="append Poisson sandwich bounds")
    c.add_argument("--constant", default=None, help='constant sequence like "2=1,4=0.5"')
    c.add_argument("--profile-csv", default=None, help="variance profile sampled on the grid")
    c.add_argument("--g", action="append", default=[], help='grid function like 2=g2.csv (repeatable)')
    c.add_argument("--grid", type=int, default=64)
    c.set_defaults(fn=run_moments)

    c = sub.add_parser("simulate", help="sample an ensemble and emit spectra")
    c.add_argument("--config", required=True, help="flat key=value or JSON config file")
    c.add_argument("--seed", type=int, default=None, help="override the config seed")
    c.add_argument("--workers", type=int, default=None)
    c.add_argument("--gnuplot", action="store_true", help="emit a histogram plot script")
    c.set_defaults(fn=run_simulate)

    c = sub.add_parser("hypergraph", help="word <-> hypergraph tools and class tables")
    group = c.add_mutually_exclusive_group(required=True)
    group.add_argument("--word", default=None)
    group.add_argument("--k", type=int, default=None, help="emit class counts for length 2k")
    c.set_defaults(fn=run_hypergraph)

    c = sub.add_parser("verify", help="run the cross-module identity suite")
    c.add_argument("--max-k", type=int, default=3)
    c.set_defaults(fn=run_verify)

    return parser

def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except SizeLimitError as exc:
        print(f"size limit: {exc}", file=sys.stderr)
        return EXIT_SIZE_LIMIT
    except ContractViolation as exc:
        print(f"numerical contract violated: {exc}", file=sys.stderr)
        return EXIT_CONTRACT
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG

if __name__ == "__main__":
    sys.exit(main())
