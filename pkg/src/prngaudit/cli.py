"""Command-line surface: reproducible experiments with machine-readable output.

Exit codes: 0 = pass/success, 1 = statistical fail, 2 = usage/config error.
All commands are deterministic given their flags (bench timings aside).
"""

from __future__ import annotations

import argparse
import json
import statistics
import sys
import time
from dataclasses import dataclass, field

from . import battery, equidist
from .engines import TransformWrapper, make
from .errors import PrngAuditError

# published default: reruns of the shipped experiments are bit-reproducible
DEFAULT_MASTER_SEED = 0xD1CE5EED

CSV_SCHEMA_VERSION = 1

FIGURE_ALGOS = ("aes128ctr", "xoroshiro128plusplus", "xorshift128plus", "well512a")

EXIT_PASS = 0
EXIT_FAIL = 1
EXIT_USAGE = 2


@dataclass
class ExperimentConfig:
    """Resolved parameters of one command invocation."""

    command: str
    algorithm: str | None = None
    master_seed: int = DEFAULT_MASTER_SEED
    params: dict = field(default_factory=dict)
    out: str | None = None
    threads: int = 1


def _emit(text: str, out: str | None) -> None:
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _make_generator(config: ExperimentConfig, transform: str | None = None):
    g = make(config.algorithm, config.master_seed)
    if transform and transform != "identity":
        if transform.startswith("low:"):
            g = TransformWrapper(g, "lowest_k_bits", k=int(transform[4:]))
        elif transform in ("bit-reverse", "bit_reverse"):
            g = TransformWrapper(g, "bit_reverse")
        else:
            raise PrngAuditError(f"unknown transform {transform!r}")
    return g


# ---------------------------------------------------------------------------
# commands


def cmd_gen(config: ExperimentConfig) -> int:
    """Dump raw output words as little-endian bytes, no framing."""
    n_bytes = config.params["bytes"]
    g = _make_generator(config, config.params.get("transform"))
    bytes_per_word = g.word_width // 8
    n_words = (n_bytes + bytes_per_word - 1) // bytes_per_word
    words = g.words(n_words)
    if g.word_width == 64:
        raw = words.astype("<u8").tobytes()
    elif g.word_width == 32:
        raw = words.astype("<u4").tobytes()
    elif g.word_width == 16:
        raw = words.astype("<u2").tobytes()
    else:
        raw = words.astype("u1").tobytes()
    raw = raw[:n_bytes]
    if config.out:
        with open(config.out, "wb") as fh:
            fh.write(raw)
    else:
        sys.stdout.buffer.write(raw)
        sys.stdout.buffer.flush()
    return EXIT_PASS


def figure_csv(hist: battery.Histogram, counts: list[int]) -> str:
    """Per-sample counts plus a summary row; header schema,sample,value."""
    lines = ["schema,sample,value"]
    for i, c in enumerate(counts):
        lines.append(f"{CSV_SCHEMA_VERSION},{i},{c}")
    lines.append(f"{CSV_SCHEMA_VERSION},summary,{hist.mean} {hist.variance}")
    return "\n".join(lines) + "\n"


def parse_figure_csv(text: str) -> tuple[list[int], float, float]:
    """Inverse of figure_csv: (per-sample values, mean, variance)."""
    rows = text.strip().splitlines()
    if not rows or rows[0] != "schema,sample,value":
        raise PrngAuditError("not a figure CSV: bad header")
    values: list[int] = []
    mean = variance = float("nan")
    for ln in rows[1:]:
        schema, sample, value = ln.split(",", 2)
        if int(schema) != CSV_SCHEMA_VERSION:
            raise PrngAuditError(f"unsupported CSV schema {schema}")
        if sample == "summary":
            m, v = value.split()
            mean, variance = float(m), float(v)
        else:
            values.append(int(value))
    return values, mean, variance


def cmd_figures(config: ExperimentConfig) -> int:
    """Odd-coefficient distribution experiment; one CSV per generator."""
    import os

    mode = battery.FillMode.parse(config.params["mode"])
    n = config.params["n"]
    samples = config.params["samples"]
    out_dir = config.params["out_dir"]
    os.makedirs(out_dir, exist_ok=True)
    for algo in config.params["algos"]:
        g = make(algo, config.master_seed)
        counts = battery.charpoly_parity_counts(
            g, n=n, samples=samples, mode=mode, jobs=config.threads
        )
        hist = battery.Histogram.from_values(counts)
        path = os.path.join(out_dir, f"fig_{mode.value}_{algo}.csv")
        with open(path, "w") as fh:
            fh.write(figure_csv(hist, counts))
        print(f"{algo}: mean={hist.mean:.2f} variance={hist.variance:.2f} -> {path}")
    return EXIT_PASS


_TEST_NAMES = ("binary-rank", "linear-complexity", "collision", "gap", "birthday-spacings", "hamming-weight")


def cmd_test(config: ExperimentConfig) -> int:
    """Run one battery test and emit its TestReport as JSON."""
    name = config.params["test"]
    g = _make_generator(config, config.params.get("transform"))
    p = config.params
    if name == "binary-rank":
        report = battery.binary_rank_test(
            g, L=p["side"], samples=p["samples"], mode=battery.FillMode.parse(p["mode"])
        )
    elif name == "linear-complexity":
        report = battery.linear_complexity_test(g, bit_index=p["bit"], n_bits=p["n_bits"])
    elif name == "collision":
        report = battery.collision_test(g, block_bits=p["block_bits"], n_blocks=p["blocks"])
    elif name == "gap":
        report = battery.gap_test(
            g, alpha=p["lo"], beta=p["hi"], max_gap=p["max_gap"], n_gaps=p["gaps"]
        )
    elif name == "birthday-spacings":
        report = battery.birthday_spacings_test(g, d=p["bits"], n_points=p["points"])
    elif name == "hamming-weight":
        report = battery.hamming_weight_screen(g, budget_bytes=p["budget_bytes"])
    else:
        raise PrngAuditError(f"unknown test {name!r}")
    _emit(report.to_json() + "\n", config.out)
    if config.params.get("exit_zero"):
        return EXIT_PASS
    return EXIT_PASS if report.passed(config.params.get("alpha", 1e-4)) else EXIT_FAIL


def cmd_equidist(config: ExperimentConfig) -> int:
    """Full equidistribution score of a linear generator, as JSON."""
    g = make(config.algorithm, config.master_seed)
    score = equidist.equidistribution_score(g)
    _emit(score.to_json() + "\n", config.out)
    return EXIT_PASS


def cmd_escape(config: ExperimentConfig) -> int:
    """Escape-from-zeroland per probed bit position, as CSV."""
    from .engines import splitmix_at

    g = make(config.algorithm, config.master_seed)
    positions = config.params["positions"]
    if positions >= g.state_bits:
        probe = list(range(g.state_bits))
    else:
        # deterministic distinct sample of bit positions
        probe = []
        seen = set()
        k = 0
        while len(probe) < positions:
            b = splitmix_at(config.master_seed ^ 0xE5CA9E, k) % g.state_bits
            k += 1
            if b not in seen:
                seen.add(b)
                probe.append(b)
    lines = ["schema,sample,value"]
    results = []
    for b in probe:
        t = battery.escape_from_zeroland(g, b)
        results.append(-1 if t is None else t)
        lines.append(f"{CSV_SCHEMA_VERSION},{b},{results[-1]}")
    finite = [r for r in results if r >= 0]
    med = statistics.median(finite) if finite else -1
    lines.append(f"{CSV_SCHEMA_VERSION},median,{med}")
    _emit("\n".join(lines) + "\n", config.out)
    return EXIT_PASS


def cmd_bench(config: ExperimentConfig) -> int:
    """Nanoseconds per output word over a measurement window."""
    g = _make_generator(config)
    warmup = config.params["warmup_words"]
    words = config.params["words"]
    g.words(warmup)
    checksum = 0
    t0 = time.perf_counter_ns()
    remaining = words
    while remaining > 0:
        chunk = min(remaining, 4_000_000)
        w = g.words(chunk)
        checksum ^= int(w[-1])
        remaining -= chunk
    elapsed = time.perf_counter_ns() - t0
    doc = {
        "generator": g.name,
        "ns_per_word": elapsed / words,
        "words": words,
        "checksum": checksum,
    }
    _emit(json.dumps(doc, indent=2, sort_keys=True) + "\n", config.out)
    return EXIT_PASS


# ---------------------------------------------------------------------------
# argument parsing


def _build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="prngaudit",
        description="PRNG quality audit: generators, statistical battery, equidistribution.",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    def add_common(p, algo_required=True):
        p.add_argument("--algo", required=algo_required, help="generator name")
        p.add_argument("--seed", type=lambda s: int(s, 0), default=DEFAULT_MASTER_SEED)
        p.add_argument("--out", default=None, help="output path (default stdout)")

    p = sub.add_parser("gen", help="dump raw little-endian output bytes")
    add_common(p)
    p.add_argument("--bytes", type=int, required=True)
    p.add_argument("--transform", default="identity", help="identity | bit-reverse | low:K")

    p = sub.add_parser("figures", help="odd-coefficient distribution CSVs")
    p.add_argument("--mode", default="raw", choices=["raw", "float", "nonuniform"])
    p.add_argument("--n", type=int, default=1024)
    p.add_argument("--samples", type=int, default=1000)
    p.add_argument("--algos", default=",".join(FIGURE_ALGOS))
    p.add_argument("--seed", type=lambda s: int(s, 0), default=DEFAULT_MASTER_SEED)
    p.add_argument("--threads", type=int, default=1)
    p.add_argument("--out-dir", required=True)

    p = sub.add_parser("test", help="run one battery test")
    p.add_argument("test", choices=_TEST_NAMES)
    add_common(p)
    p.add_argument("--transform", default="identity")
    p.add_argument("--alpha", type=float, default=1e-4, help="fail threshold on p-value")
    p.add_argument("--exit-zero", action="store_true", help="always exit 0 on completed run")
    p.add_argument("--side", type=int, default=1024, help="binary-rank matrix side")
    p.add_argument("--samples", type=int, default=100)
    p.add_argument("--mode", default="raw", choices=["raw", "float", "nonuniform"])
    p.add_argument("--bit", type=int, default=0)
    p.add_argument("--n", dest="n_bits", type=int, default=2048, help="linear-complexity bits")
    p.add_argument("--block-bits", type=int, default=16)
    p.add_argument("--blocks", type=int, default=4096)
    p.add_argument("--lo", type=float, default=0.0, help="gap interval lower bound")
    p.add_argument("--hi", type=float, default=0.5, help="gap interval upper bound")
    p.add_argument("--max-gap", type=int, default=16)
    p.add_argument("--gaps", type=int, default=10000)
    p.add_argument("--bits", type=int, default=30, help="birthday-spacings point bits")
    p.add_argument("--points", type=int, default=4096)
    p.add_argument("--budget-bytes", type=int, default=1 << 30)

    p = sub.add_parser("equidist", help="equidistribution score (linear generators)")
    add_common(p)

    p = sub.add_parser("escape", help="escape-from-zeroland per bit position")
    add_common(p)
    p.add_argument("--positions", type=int, default=100)

    p = sub.add_parser("bench", help="output speed measurement")
    add_common(p)
    p.add_argument("--warmup-words", type=int, default=1_000_000)
    p.add_argument("--words", type=int, default=10_000_000)

    return ap


def _config_from_args(args: argparse.Namespace) -> ExperimentConfig:
    params = {k: v for k, v in vars(args).items() if k not in ("command", "algo", "seed", "out", "threads")}
    if args.command == "figures":
        params["algos"] = [a for a in args.algos.split(",") if a]
        params["out_dir"] = params.pop("out_dir")
    return ExperimentConfig(
        command=args.command,
        algorithm=getattr(args, "algo", None),
        master_seed=args.seed,
        params=params,
        out=getattr(args, "out", None),
        threads=getattr(args, "threads", 1),
    )


_DISPATCH = {
    "gen": cmd_gen,
    "figures": cmd_figures,
    "test": cmd_test,
    "equidist": cmd_equidist,
    "escape": cmd_escape,
    "bench": cmd_bench,
}


def main(argv: list[str] | None = None) -> int:
    ap = _build_parser()
    args = ap.parse_args(argv)
    config = _config_from_args(args)
    try:
        return _DISPATCH[config.command](config)
    except PrngAuditError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
