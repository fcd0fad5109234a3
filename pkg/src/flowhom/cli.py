"""
flowhom CLI - path homology and cyclomatic complexity of control flow graphs.

Commands:
  analyze    = Betti numbers, nu and their divergence for one digraph file
  generate   = write a corpus (skeleton, goto, tower, suspension) plus manifest
  enumerate  = outdegree-2 family and 2FG progenitors on n vertices
  verify     = run a verification suite (paper, oracle, series)
  histogram  = (nu, beta1) counts over many digraph files, as CSV

Exit codes: 0 ok, 1 unreadable or empty input, 2 usage or config,
3 path limit hit (partial output written), 4 a verification claim failed.
"""

import argparse
import json
import logging
import sys
from concurrent.futures import ThreadPoolExecutor
from functools import partial
from pathlib import Path

from flowhom import __version__
from flowhom.constants import (
    DEFAULT_GOTO_LINES,
    DEFAULT_GOTOS,
    DEFAULT_PRODUCTIONS,
    DOT_SUFFIX,
    EDGE_LIST_SUFFIX,
    ENUMERATE_MIN_N,
    EXIT_CLAIM_FAILED,
    EXIT_OK,
    EXIT_PARSE,
    EXIT_TRUNCATED,
    EXIT_USAGE,
    MANIFEST_FILE,
    SKELETON_SUFFIX,
    SUMMARY_FILE,
)
from flowhom.errors import ConfigError, FlowhomError, GraphParseError, PathLimitExceeded

LOG_FORMAT = "%(levelname)s %(name)s: %(message)s"


def die(message: str, code: int):
    print(f"error: {message}", file=sys.stderr)
    sys.exit(code)


def configure_logging(verbosity: int) -> None:
    """-v for INFO, -vv for DEBUG; handlers are replaced on every call."""
    logger = logging.getLogger("flowhom")
    for handler in list(logger.handlers):
        logger.removeHandler(handler)
    handler = logging.StreamHandler(sys.stderr)
    handler.setFormatter(logging.Formatter(LOG_FORMAT))
    logger.addHandler(handler)
    logger.setLevel(logging.DEBUG if verbosity >= 2 else logging.INFO if verbosity == 1 else logging.WARNING)


def run_config(args):
    """Settings file plus flag overrides; config problems exit 2."""
    from flowhom.config import RunConfig, load_settings

    try:
        settings = load_settings(Path(args.config) if args.config else None)
        rc = RunConfig.from_args(args, settings)
    except ConfigError as e:
        die(str(e), EXIT_USAGE)
    return rc


def load_digraph(path: str, fmt: str | None, allow_loops: bool):
    from flowhom.parse import loop_transform, read_graph_file

    try:
        parsed = read_graph_file(Path(path), fmt, allow_loops)
        d = loop_transform(parsed) if allow_loops else parsed.to_digraph()
    except OSError as e:
        die(f"cannot read {path}: {e.strerror or e}", EXIT_PARSE)
    except GraphParseError as e:
        die(f"{path}: {e}", EXIT_PARSE)
    if d.is_empty:
        die(f"{path}: empty digraph", EXIT_PARSE)
    return d


def format_report(data: dict) -> str:
    lines = [
        f"graph:       {data['graph_id']}",
        f"vertices:    {data['vertices']}",
        f"arcs:        {data['arcs']}",
        f"cyclomatic:  {data['cyclomatic']}",
        f"betti:       ({','.join(str(b) for b in data['betti'])})",
        f"reduced:     ({','.join(str(b) for b in data['reduced_betti'])})",
        f"omega dims:  ({','.join(str(b) for b in data['omega_dims'])})",
        f"divergence:  {'n/a' if data['divergence'] is None else data['divergence']}",
    ]
    if not data["complete"]:
        lines.append(f"note: Omega_{data['p_max'] + 1} is nonzero; higher Betti numbers not computed")
    if data.get("truncated"):
        lines.append("note: path limit reached; profile is partial")
    for cycle in data.get("h1_generators", []):
        terms = " + ".join(f"{coef}*({u},{v})" for (u, v), coef in cycle)
        lines.append(f"h1 cycle:    {terms}")
    return "\n".join(lines)


def partial_report(graph_id: str, d, exc: PathLimitExceeded) -> dict:
    from flowhom.metrics import cyclomatic

    profile = exc.partial
    data = {
        "graph_id": graph_id,
        "vertices": d.n_vertices,
        "arcs": d.n_arcs,
        "cyclomatic": cyclomatic(d),
        "truncated": True,
    }
    if profile is None:
        data.update(betti=[], reduced_betti=[], p_max=-1, complete=False, omega_dims=[], divergence=None)
    else:
        data.update(profile.to_dict())
        data["divergence"] = data["cyclomatic"] - profile.reduced[1] if profile.p_max >= 1 else None
    return data


def cmd_analyze(args):
    """Betti numbers and cyclomatic complexity of one digraph."""
    from flowhom.fs import atomic_write
    from flowhom.metrics import compare
    from flowhom.paths import PathComplex

    rc = run_config(args)
    d = load_digraph(args.input, args.format, args.allow_loops)
    graph_id = Path(args.input).name
    field = rc.field
    try:
        report = compare(
            d, rc.settings.p_max, graph_id, field, rc.settings.path_limit, generators=args.generators
        )
    except PathLimitExceeded as e:
        data = partial_report(graph_id, d, e)
        print(json.dumps(data, indent=2) if args.json else format_report(data))
        die(str(e), EXIT_TRUNCATED)

    if args.dump_matrices:
        out = Path(args.dump_matrices)
        pc = PathComplex(d, field, rc.settings.path_limit)
        for p in range(rc.settings.p_max + 2):
            atomic_write(out / f"boundary_{p}.txt", pc.boundary(p).triplets())

    data = report.to_dict()
    print(json.dumps(data, indent=2) if args.json else format_report(data))
    return EXIT_OK


def _parse_layers(text: str) -> list[int]:
    try:
        layers = [int(part) for part in text.split(",")]
    except ValueError:
        die(f"--layers must be comma-separated integers, got '{text}'", EXIT_USAGE)
    if not layers or any(n < 1 for n in layers):
        die(f"--layers needs positive sizes, got '{text}'", EXIT_USAGE)
    return layers


def _manifest_row(file: str, kind: str, report, extra: dict) -> dict:
    profile = report.reduced_betti
    return {
        "file": file,
        "kind": kind,
        **extra,
        "vertices": report.vertices,
        "arcs": report.arcs,
        "betti": list(profile.values),
        "reduced_betti": list(profile.reduced),
        "beta1": report.beta1,
        "complete": profile.complete,
        "cyclomatic": report.cyclomatic,
    }


def _analyze_skeleton(make, settings, field, seed):
    from flowhom.metrics import compare

    sk = make(seed)
    return sk, compare(sk.cfg, settings.p_max, f"seed {seed}", field, settings.path_limit)


def cmd_generate(args):
    """Write a corpus of digraphs and a manifest.jsonl describing them."""
    from flowhom.config import SEED_LIMIT
    from flowhom.corpus.skeleton import format_skeleton, gen_goto_skeleton, gen_structured_skeleton
    from flowhom.digraph import k_partite_tower, suspension, two_cycle
    from flowhom.errors import SkeletonError
    from flowhom.fs import atomic_write, write_jsonl
    from flowhom.metrics import compare
    from flowhom.parse import to_dot, to_edge_list

    rc = run_config(args)
    settings = rc.settings
    field = rc.field
    out = rc.output_path
    suffix = DOT_SUFFIX if args.format == "dot" else EDGE_LIST_SUFFIX
    render = to_dot if args.format == "dot" else to_edge_list
    rows = []

    def emit(stem, d, kind, report, extra):
        atomic_write(out / f"{stem}{suffix}", render(d))
        rows.append(_manifest_row(f"{stem}{suffix}", kind, report, extra))

    try:
        if args.kind in ("skeleton", "goto"):
            if args.count < 1:
                die(f"--count must be positive, got {args.count}", EXIT_USAGE)
            if args.kind == "skeleton":
                make = partial(gen_structured_skeleton, n_productions=args.productions)
            else:
                make = partial(gen_goto_skeleton, n_gotos=args.gotos, n_lines=args.lines)
            make(rc.seed or 0)  # parameter errors surface before the pool starts
            base = rc.seed or 0
            seeds = [(base + i) % SEED_LIMIT for i in range(args.count)]
            job = partial(_analyze_skeleton, make, settings, field)
            with ThreadPoolExecutor(max_workers=settings.workers) as pool:
                results = list(pool.map(job, seeds))
            for sk, report in results:
                stem = f"{args.kind}-{sk.seed}"
                atomic_write(out / f"{stem}{SKELETON_SUFFIX}", format_skeleton(sk))
                emit(stem, sk.cfg, args.kind, report, sk.manifest_fields())

        elif args.kind == "tower":
            layers = _parse_layers(args.layers)
            d = k_partite_tower(layers)
            p_max = max(settings.p_max, len(layers))
            report = compare(d, p_max, "tower", field, settings.path_limit)
            emit(f"tower-{'-'.join(map(str, layers))}", d, "tower", report, {"layers": layers})

        else:
            if args.k < 1:
                die(f"--k must be >= 1, got {args.k}", EXIT_USAGE)
            if args.base == "twocycle":
                base_graph, base_name = two_cycle(), "twocycle"
            else:
                base_graph, base_name = load_digraph(args.base, None, False), Path(args.base).stem
            d = suspension(base_graph, args.k)
            p_max = max(settings.p_max, args.k + 2)
            report = compare(d, p_max, "suspension", field, settings.path_limit)
            emit(f"suspension-{base_name}-k{args.k}", d, "suspension", report, {"base": base_name, "k": args.k})
    except SkeletonError as e:
        die(str(e), EXIT_USAGE)
    except PathLimitExceeded as e:
        die(str(e), EXIT_TRUNCATED)

    count = write_jsonl(out / MANIFEST_FILE, rows)
    print(f"wrote {count} digraph(s) to {out}")
    return EXIT_OK


def cmd_enumerate(args):
    """Enumerate the outdegree-2 family on n vertices and its progenitors."""
    from flowhom.corpus.progenitor import enumerate_outdeg2_family, progenitor_pairs
    from flowhom.fs import atomic_write, dumps, write_json
    from flowhom.homology import betti
    from flowhom.parse import to_edge_list

    rc = run_config(args)
    settings = rc.settings
    if not ENUMERATE_MIN_N <= args.n <= settings.enumerate_max_n:
        die(
            f"--n must lie in {ENUMERATE_MIN_N}..{settings.enumerate_max_n} "
            f"(raise enumerate_max_n in the config for larger n), got {args.n}",
            EXIT_USAGE,
        )
    if args.filter == "beta2-positive" and settings.p_max < 2:
        die("--filter beta2-positive needs --pmax >= 2", EXIT_USAGE)

    field = rc.field
    family = enumerate_outdeg2_family(args.n, settings.enumerate_max_n)
    progenitors = 0
    records = []
    kept = []
    try:
        for index, d in enumerate(family, start=1):
            pairs = progenitor_pairs(d)
            progenitors += bool(pairs)
            if args.filter == "beta2-positive" and not pairs:
                continue
            profile = betti(d, settings.p_max, field, settings.path_limit)
            if args.filter == "beta2-positive" and profile.reduced[2] == 0:
                continue
            records.append({
                "id": f"n{args.n}-{index}",
                **d.to_dict(),
                "valid_pairs": [list(p) for p in pairs],
                **profile.to_dict(),
            })
            kept.append(d)
    except PathLimitExceeded as e:
        die(str(e), EXIT_TRUNCATED)

    summary = {
        "n": args.n,
        "total": len(family),
        "progenitors": progenitors,
        "filter": args.filter,
        "filtered": len(records),
        "records": records,
    }
    if args.out:
        out = Path(args.out)
        for rec, d in zip(records, kept):
            rec["file"] = f"{rec['id']}{EDGE_LIST_SUFFIX}"
            atomic_write(out / rec["file"], to_edge_list(d))
        write_json(out / SUMMARY_FILE, summary)
    print(dumps(summary), end="")
    return EXIT_OK


def cmd_verify(args):
    """Run a verification suite; any failed claim exits 4."""
    from flowhom.verify import run_suite

    rc = run_config(args)
    report = run_suite(args.suite, rc.settings, args.full, rc.seed or 0)
    for claim in report.claims:
        status = "PASS" if claim.passed else "FAIL"
        print(f"{status} {claim.name}: {claim.message}")
    passed = len(report.claims) - len(report.failed)
    print(f"{report.suite}: {passed}/{len(report.claims)} claims passed")
    if not report.passed:
        sys.exit(EXIT_CLAIM_FAILED)
    return EXIT_OK


def cmd_histogram(args):
    """(nu, beta1, count) CSV over digraph files."""
    from flowhom.metrics import compare, corpus_histogram, histogram_csv

    rc = run_config(args)
    field = rc.field
    reports = []
    for path in args.files:
        d = load_digraph(path, args.format, args.allow_loops)
        try:
            reports.append(compare(d, rc.settings.p_max, Path(path).name, field, rc.settings.path_limit))
        except PathLimitExceeded as e:
            die(f"{path}: {e}", EXIT_TRUNCATED)
    print(histogram_csv(corpus_histogram(reports)), end="")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="flowhom",
        description="Path homology and cyclomatic complexity of control flow graphs",
        epilog="nu = |A| - |V| + c | divergence = nu - beta~_1",
    )
    parser.add_argument("--version", "-V", action="version", version=f"flowhom {__version__}")
    parser.add_argument("--verbose", "-v", action="count", default=0,
                        help="Log progress to stderr (-vv for debug)")
    parser.add_argument("--config", help="Settings file (default: ./flowhom.json when present)")
    subparsers = parser.add_subparsers(dest="command", required=True)

    # Options shared by every command that computes homology
    compute = argparse.ArgumentParser(add_help=False)
    compute.add_argument("--pmax", type=int, help="Highest dimension to report (default 3)")
    compute.add_argument("--field", choices=["rational", "prime"], help="Coefficient field")
    compute.add_argument("--prime", type=int, help="Prime for --field prime")
    compute.add_argument("--path-limit", type=int, help="Cap on allowed p-paths per dimension")

    graph_input = argparse.ArgumentParser(add_help=False)
    graph_input.add_argument("--format", choices=["edge-list", "dot"],
                             help="Input format (default: by suffix, .dot or edge list)")
    graph_input.add_argument("--allow-loops", action="store_true",
                             help="Rewrite self-loops as 2-cycles through fresh vertices")

    # analyze
    analyze_parser = subparsers.add_parser(
        "analyze",
        parents=[compute, graph_input],
        help="Betti numbers and cyclomatic complexity of one digraph",
    )
    analyze_parser.add_argument("input", help="Edge list or DOT file")
    analyze_parser.add_argument("--generators", action="store_true",
                                help="Report H~_1 cycle representatives and their support")
    analyze_parser.add_argument("--json", action="store_true", help="Emit the report as JSON")
    analyze_parser.add_argument("--dump-matrices", metavar="DIR",
                                help="Write boundary matrices as sparse triplets")
    analyze_parser.set_defaults(func=cmd_analyze)

    # generate
    generate_parser = subparsers.add_parser(
        "generate",
        parents=[compute],
        help="Write a digraph corpus with a manifest",
    )
    generate_parser.add_argument("kind", choices=["skeleton", "goto", "tower", "suspension"])
    generate_parser.add_argument("--out", required=True, help="Output directory")
    generate_parser.add_argument("--count", type=int, default=1, help="Skeletons to generate")
    generate_parser.add_argument("--seed", type=int, help="First seed (default 0)")
    generate_parser.add_argument("--productions", type=int, default=DEFAULT_PRODUCTIONS,
                                 help="Productions per structured skeleton")
    generate_parser.add_argument("--gotos", type=int, default=DEFAULT_GOTOS, help="Gotos per skeleton")
    generate_parser.add_argument("--lines", type=int, default=DEFAULT_GOTO_LINES, help="Lines per goto skeleton")
    generate_parser.add_argument("--layers", default="2,2,2", help="Tower layer sizes, e.g. 2,3,2")
    generate_parser.add_argument("--base", default="twocycle", help="'twocycle' or a digraph file")
    generate_parser.add_argument("--k", type=int, default=1, help="Suspension steps")
    generate_parser.add_argument("--format", choices=["edge-list", "dot"], default="edge-list",
                                 help="Output digraph format")
    generate_parser.add_argument("--workers", type=int, help="Worker threads")
    generate_parser.set_defaults(func=cmd_generate)

    # enumerate
    enumerate_parser = subparsers.add_parser(
        "enumerate",
        parents=[compute],
        help="Outdegree-2 family and 2FG progenitors on n vertices",
    )
    enumerate_parser.add_argument("--n", type=int, required=True, help="Number of vertices")
    enumerate_parser.add_argument("--filter", choices=["beta2-positive"],
                                  help="Keep only progenitors with beta~_2 > 0")
    enumerate_parser.add_argument("--out", help="Directory for digraph files and summary.json")
    enumerate_parser.set_defaults(func=cmd_enumerate)

    # verify
    verify_parser = subparsers.add_parser(
        "verify",
        parents=[compute],
        help="Check known results",
    )
    verify_parser.add_argument("--suite", choices=["paper", "oracle", "series"], required=True)
    verify_parser.add_argument("--full", action="store_true", help="Include the slow claims")
    verify_parser.add_argument("--seed", type=int, help="Seed for sampled claims (default 0)")
    verify_parser.set_defaults(func=cmd_verify)

    # histogram
    histogram_parser = subparsers.add_parser(
        "histogram",
        parents=[compute, graph_input],
        help="(nu, beta1) counts over digraph files as CSV",
    )
    histogram_parser.add_argument("files", nargs="+", help="Digraph files")
    histogram_parser.set_defaults(func=cmd_histogram)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    configure_logging(args.verbose)
    try:
        return args.func(args) or EXIT_OK
    except ConfigError as e:
        die(str(e), EXIT_USAGE)
    except FlowhomError as e:
        die(str(e), EXIT_PARSE)


if __name__ == "__main__":
    sys.exit(main())
