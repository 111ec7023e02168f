"""Command-line interface: ``aalpha analyze | generate | paper-examples``.

Exit codes: 0 success, 1 a reference fixture failed, 2 unreadable or
malformed input, 3 a request that does not define a state (edgeless graph,
alpha outside ``(0, 1]``, impossible dimensions).
"""

from __future__ import annotations

import argparse
import sys
import time
from pathlib import Path

from aalpha.criteria import linear_grid
from aalpha.fixtures import FIXTURES, run_fixture
from aalpha.graph import DimensionError, GraphError, GraphFamily, generate_family, read_graph, serialize_graph
from aalpha.report import analyze, to_csv, to_json, to_text
from aalpha.spectral import PSD_TOL
from aalpha.state import StateError

EXIT_OK = 0
EXIT_FIXTURE_FAILED = 1
EXIT_INPUT = 2
EXIT_INVALID_STATE = 3


def parse_sweep(spec: str) -> tuple[float, ...]:
    """``start:end:count``, both ends included."""
    parts = spec.split(":")
    if len(parts) != 3:
        raise argparse.ArgumentTypeError(f"sweep must look like start:end:count, got {spec!r}")
    try:
        start, stop, count = float(parts[0]), float(parts[1]), int(parts[2])
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad sweep spec {spec!r}") from None
    if count < 1 or (count > 1 and stop <= start):
        raise argparse.ArgumentTypeError("sweep needs count >= 1 and end > start")
    return linear_grid(start, stop, count)


def _positive_int(s: str) -> int:
    v = int(s)
    if v < 1:
        raise argparse.ArgumentTypeError("expected a positive integer")
    return v


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="aalpha", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    a = sub.add_parser("analyze", help="run every criterion on a graph file")
    a.add_argument("file", type=Path)
    mode = a.add_mutually_exclusive_group()
    mode.add_argument("--alpha", type=float, help="single mixing parameter")
    mode.add_argument("--sweep", type=parse_sweep, help="start:end:count (default 0.01:1.0:100)")
    a.add_argument("--d1", type=_positive_int, help="override the header's first dimension")
    a.add_argument("--d2", type=_positive_int, help="override the header's second dimension")
    a.add_argument("--format", choices=("json", "csv", "text"), default="json")
    a.add_argument("--tol", type=float, default=PSD_TOL, help="PSD tolerance on eigenvalues")
    a.add_argument("--refine", action="store_true", help="bisect interval boundaries to 1e-4")

    g = sub.add_parser("generate", help="write a graph from a standard family")
    g.add_argument("family", choices=("complete", "path", "cycle", "random"))
    g.add_argument("n", type=int)
    g.add_argument("d1", type=int)
    g.add_argument("d2", type=int)
    g.add_argument("--seed", type=int, default=None)
    g.add_argument("--density", type=float, default=0.5)
    g.add_argument("--out", type=Path, help="output file (default: standard output)")

    e = sub.add_parser("paper-examples", help="check the reference graphs against published values")
    e.add_argument("--only", choices=sorted(FIXTURES), help="run a single fixture")
    e.add_argument("-v", "--verbose", action="store_true", help="show every check")
    return p


def _err(msg: str) -> None:
    print(f"aalpha: error: {msg}", file=sys.stderr)


def cmd_analyze(args) -> int:
    try:
        g = read_graph(args.file)
    except OSError as exc:
        _err(f"{args.file}: {exc.strerror or exc}")
        return EXIT_INPUT
    except GraphError as exc:
        _err(f"{args.file}: {exc}")
        return EXIT_INPUT
    if args.tol < 0:
        _err("--tol must be non-negative")
        return EXIT_INPUT
    if args.alpha is not None:
        alphas = (args.alpha,)
    else:
        alphas = args.sweep or linear_grid(0.01, 1.0, 100)
    try:
        if args.d1 is not None or args.d2 is not None:
            g = g.with_dims(args.d1 or g.d1, args.d2 or g.d2)
        if args.alpha is not None and not 0 < args.alpha <= 1:
            raise StateError(f"alpha = {args.alpha} is outside (0, 1]")
        report = analyze(g, alphas, graph_id=args.file.stem, tol=args.tol, refine=args.refine)
    except (StateError, DimensionError) as exc:
        _err(str(exc))
        return EXIT_INVALID_STATE
    except ValueError as exc:
        _err(str(exc))
        return EXIT_INPUT
    render = {"json": to_json, "csv": to_csv, "text": to_text}[args.format]
    sys.stdout.write(render(report))
    return EXIT_OK


def cmd_generate(args) -> int:
    try:
        fam = GraphFamily(args.family, args.n, seed=args.seed, density=args.density)
        g = generate_family(fam, args.d1, args.d2)
    except ValueError as exc:
        _err(str(exc))
        return EXIT_INPUT
    comment = f"{args.family} n={args.n}"
    if args.family == "random":
        comment += f" seed={args.seed} density={args.density}"
    text = serialize_graph(g, comment=comment)
    if args.out is None:
        sys.stdout.write(text)
    else:
        try:
            args.out.write_text(text, encoding="utf-8")
        except OSError as exc:
            _err(f"{args.out}: {exc.strerror or exc}")
            return EXIT_INPUT
    return EXIT_OK


def cmd_paper_examples(args) -> int:
    names = [args.only] if args.only else list(FIXTURES)
    failed = 0
    for name in names:
        t0 = time.perf_counter()
        checks = run_fixture(name)
        dt = time.perf_counter() - t0
        ok = all(c.passed for c in checks)
        failed += not ok
        print(f"{'PASS' if ok else 'FAIL'}  {name:<14} {len(checks)} checks  {dt:.2f}s  {FIXTURES[name].description}")
        for c in checks:
            if args.verbose or not c.passed:
                print(f"      {'ok ' if c.passed else 'BAD'} {c.label}" + (f": {c.detail}" if c.detail else ""))
    print(f"{len(names) - failed}/{len(names)} fixtures passed")
    return EXIT_OK if failed == 0 else EXIT_FIXTURE_FAILED


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    handler = {"analyze": cmd_analyze, "generate": cmd_generate, "paper-examples": cmd_paper_examples}
    return handler[args.command](args)


if __name__ == "__main__":
    sys.exit(main())
