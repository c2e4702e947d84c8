import argparse
import json
import logging
import sys
from functools import singledispatch
from pathlib import Path
from typing import Any
from typing import Dict
from typing import List
from typing import Optional
from typing import Type

from importlib_metadata import PackageNotFoundError
from importlib_metadata import version

import ncgroups
from ncgroups.catalog import build_atlas
from ncgroups.catalog import build_catalog
from ncgroups.catalog import emit_atlas
from ncgroups.centralizers import centralizer_set
from ncgroups.centralizers import classification_targets
from ncgroups.centralizers import classify_by_count
from ncgroups.exceptions import NcgroupsException
from ncgroups.isoclinism import Isoclinism
from ncgroups.isoclinism import check_isoclinism
from ncgroups.isoclinism import witness_to_json
from ncgroups.isomorphism import identify
from ncgroups.noncommuting import build_graph
from ncgroups.noncommuting import export_dimacs
from ncgroups.noncommuting import omega_or_bounds
from ncgroups.settings import load_settings
from ncgroups.settings import override_settings
from ncgroups.specs import realize_text
from ncgroups.types import ClaimStatus
from ncgroups.types import Settings
from ncgroups.types import VerifyReport
from ncgroups.verify import CLAIMS
from ncgroups.verify import verify

DEFAULT_CATALOG_ORDER = 32

EXIT_OK = 0
EXIT_UNVERIFIED = 1
EXIT_ERROR = 2


def get_version() -> str:
    try:
        return version(ncgroups.__name__)
    except PackageNotFoundError:
        return "not-found"


class NcgroupsNamespace(argparse.Namespace):
    command: Optional[str] = None
    format: str = "text"
    out: Optional[Path] = None
    time_budget: Optional[float] = None
    max_order: Optional[int] = None
    config: Optional[Path] = None
    jobs: Optional[int] = None
    verbose: int = 0


class SpecNamespace(NcgroupsNamespace):
    spec: str


class OmegaNamespace(SpecNamespace):
    pass


class CentNamespace(SpecNamespace):
    pass


class IdentifyNamespace(SpecNamespace):
    pass


class ExportGraphNamespace(SpecNamespace):
    reduced: bool = False


class IsoclinicNamespace(NcgroupsNamespace):
    first: str
    second: str
    witness: Optional[Path] = None


class AtlasNamespace(NcgroupsNamespace):
    pass


class VerifyNamespace(NcgroupsNamespace):
    claims: Optional[List[str]] = None


NAMESPACES: Dict[str, Type[NcgroupsNamespace]] = {
    "omega": OmegaNamespace,
    "cent": CentNamespace,
    "identify": IdentifyNamespace,
    "export-graph": ExportGraphNamespace,
    "isoclinic": IsoclinicNamespace,
    "atlas": AtlasNamespace,
    "verify": VerifyNamespace,
}


def _global_options() -> argparse.ArgumentParser:
    # SUPPRESS keeps a flag given before the sub-command from being reset after it
    options = argparse.ArgumentParser(add_help=False)
    options.add_argument(
        "--format",
        choices=["text", "json", "csv"],
        default=argparse.SUPPRESS,
        help="Output format (csv is accepted by atlas only; default: text)",
    )
    options.add_argument(
        "--out",
        "-o",
        type=Path,
        default=argparse.SUPPRESS,
        help="Write the output to this file instead of stdout",
    )
    options.add_argument(
        "--time-budget",
        type=float,
        default=argparse.SUPPRESS,
        help="Seconds allowed per clique search",
    )
    options.add_argument(
        "--max-order",
        type=int,
        default=argparse.SUPPRESS,
        help="Catalog bound for atlas/verify, group order cap otherwise",
    )
    options.add_argument(
        "--config",
        "-c",
        type=Path,
        default=argparse.SUPPRESS,
        help="Path to a YAML settings file",
    )
    options.add_argument(
        "--jobs",
        "-j",
        type=int,
        default=argparse.SUPPRESS,
        help="Worker processes for catalog invariants",
    )
    options.add_argument(
        "--verbose",
        "-v",
        action="count",
        default=argparse.SUPPRESS,
        help="Log progress to stderr (repeat for debug output)",
    )
    return options


def build_parser() -> argparse.ArgumentParser:
    options = _global_options()
    parser = argparse.ArgumentParser(ncgroups.__name__, parents=[options])
    parser.add_argument(
        "--version",
        action="version",
        version=f"%(prog)s {get_version()}",
    )

    subparsers = parser.add_subparsers(title="Sub-commands", dest="command")
    spec_help = "Group spec, e.g. A5, 'D8 x C2', 'perm:(1 2 3);(1 2)'"

    omega_parser = subparsers.add_parser(
        "omega", parents=[options], help="Clique number of the non-commuting graph"
    )
    omega_parser.add_argument("spec", help=spec_help)

    cent_parser = subparsers.add_parser(
        "cent", parents=[options], help="Count the distinct element centralizers"
    )
    cent_parser.add_argument("spec", help=spec_help)

    identify_parser = subparsers.add_parser(
        "identify",
        parents=[options],
        help="Match a group against the classified central quotient types",
    )
    identify_parser.add_argument("spec", help=spec_help)

    isoclinic_parser = subparsers.add_parser(
        "isoclinic", parents=[options], help="Decide whether two groups are isoclinic"
    )
    isoclinic_parser.add_argument("first", help=spec_help)
    isoclinic_parser.add_argument("second", help=spec_help)
    isoclinic_parser.add_argument(
        "--witness", type=Path, help="Write the isoclinism witness JSON to this file"
    )

    subparsers.add_parser(
        "atlas", parents=[options], help="Invariants of every catalog group"
    )

    verify_parser = subparsers.add_parser(
        "verify", parents=[options], help="Check the claims over the catalog"
    )
    verify_parser.add_argument(
        "--claims",
        nargs="+",
        choices=list(CLAIMS),
        help="Claims to check (default: all)",
    )

    export_parser = subparsers.add_parser(
        "export-graph",
        parents=[options],
        help="Write the non-commuting graph in DIMACS edge format",
    )
    export_parser.add_argument("spec", help=spec_help)
    export_parser.add_argument(
        "--reduced",
        action="store_true",
        help="Keep one vertex per distinct centralizer",
    )

    return parser


def build_settings(args: NcgroupsNamespace, catalog: bool = False) -> Settings:
    settings = load_settings(args.config)
    return override_settings(
        settings,
        time_budget=args.time_budget,
        jobs=args.jobs,
        max_order=None if catalog else args.max_order,
    )


def _write(args: NcgroupsNamespace, text: str) -> None:
    if args.out is None:
        sys.stdout.write(text)
    else:
        with open(args.out, "w", encoding="utf-8") as f:
            f.write(text)


def _write_json(args: NcgroupsNamespace, payload: Any) -> None:
    _write(args, json.dumps(payload, sort_keys=True, indent=2) + "\n")


@singledispatch
def command(args: NcgroupsNamespace, parser: argparse.ArgumentParser) -> int:
    if args.format == "csv" and args.command != "atlas":
        parser.error("--format csv is only supported by the atlas command")
    if args.command in NAMESPACES:
        return command(NAMESPACES[args.command](**vars(args)), parser)

    parser.print_help()
    return EXIT_OK


@command.register
def _omega_command(args: OmegaNamespace, parser: argparse.ArgumentParser) -> int:
    settings = build_settings(args)
    G = realize_text(args.spec, settings)
    result = omega_or_bounds(G, settings)
    witness = result.witness.labels(G)
    if args.format == "json":
        _write_json(
            args,
            {
                "group": G.name,
                "omega": result.size,
                "exact": result.exact,
                "upper_bound": result.upper_bound,
                "witness": witness,
                "witness_indices": list(result.witness.elements),
            },
        )
    elif result.exact:
        _write(args, f"{result.size}\nwitness: {' '.join(witness)}\n")
    else:
        _write(
            args,
            f"{result.size} <= omega <= {result.upper_bound} (time budget exceeded)\n"
            f"best clique: {' '.join(witness)}\n",
        )
    return EXIT_OK if result.exact else EXIT_UNVERIFIED


@command.register
def _cent_command(args: CentNamespace, parser: argparse.ArgumentParser) -> int:
    settings = build_settings(args)
    G = realize_text(args.spec, settings)
    centralizers = centralizer_set(G)
    report = classify_by_count(G, settings)
    if args.format == "json":
        _write_json(
            args,
            {
                "group": G.name,
                "centralizer_count": centralizers.count,
                "centralizer_orders": centralizers.orders,
                "central_quotient": report.central_quotient,
                "classification": report.verdict.value,
            },
        )
    else:
        orders = " ".join(str(order) for order in centralizers.orders)
        _write(
            args,
            f"{centralizers.count}\n"
            f"centralizer orders: {orders}\n"
            f"classification: {report.verdict.value}\n",
        )
    return EXIT_OK


@command.register
def _identify_command(args: IdentifyNamespace, parser: argparse.ArgumentParser) -> int:
    settings = build_settings(args)
    G = realize_text(args.spec, settings)
    name = identify(G, classification_targets(), settings) or "unknown"
    if args.format == "json":
        _write_json(args, {"group": G.name, "identified_as": name})
    else:
        _write(args, f"{name}\n")
    return EXIT_OK


@command.register
def _isoclinic_command(
    args: IsoclinicNamespace, parser: argparse.ArgumentParser
) -> int:
    settings = build_settings(args)
    G = realize_text(args.first, settings)
    H = realize_text(args.second, settings)
    outcome, witness = check_isoclinism(G, H, settings)
    verdict = {
        Isoclinism.ISOCLINIC: "YES",
        Isoclinism.NOT_ISOCLINIC: "NO",
        Isoclinism.INDETERMINATE: "UNDECIDED",
    }[outcome]

    if args.witness is not None and witness is not None:
        with open(args.witness, "w", encoding="utf-8") as f:
            json.dump(witness_to_json(witness), f, sort_keys=True, indent=2)
            f.write("\n")

    if args.format == "json":
        _write_json(
            args,
            {
                "first": G.name,
                "second": H.name,
                "isoclinic": verdict,
                "witness": witness_to_json(witness) if witness else None,
            },
        )
    else:
        _write(args, f"{verdict}\n")
    return EXIT_UNVERIFIED if outcome is Isoclinism.INDETERMINATE else EXIT_OK


@command.register
def _atlas_command(args: AtlasNamespace, parser: argparse.ArgumentParser) -> int:
    settings = build_settings(args, catalog=True)
    catalog = build_catalog(args.max_order or DEFAULT_CATALOG_ORDER, settings)
    records = build_atlas(catalog, settings)
    fmt = "json" if args.format == "json" else "csv"
    if args.out is None:
        emit_atlas(records, fmt, sys.stdout)
    else:
        with open(args.out, "w", encoding="utf-8", newline="") as f:
            emit_atlas(records, fmt, f)
    return EXIT_OK


def format_report(report: VerifyReport) -> str:
    lines = [
        f"catalog up to order {report.max_order}: {report.catalog_size} groups",
    ]
    for claim in report.claims:
        lines.append(
            f"{claim.claim}: {claim.status.value} "
            f"(population {claim.population}, passed {claim.passed}, "
            f"failed {claim.failed}, indeterminate {claim.indeterminate})"
        )
        lines.append(f"  {claim.description}")
        for counterexample in claim.counterexamples:
            values = json.dumps(dict(counterexample.values), sort_keys=True)
            lines.append(f"  counterexample {counterexample.group}: {values}")
        lines.extend(f"  note: {note}" for note in claim.notes)
    overall = ClaimStatus.PASS if report.passed else ClaimStatus.FAIL
    lines.append(f"overall: {overall.value}")
    return "\n".join(lines) + "\n"


@command.register
def _verify_command(args: VerifyNamespace, parser: argparse.ArgumentParser) -> int:
    settings = build_settings(args, catalog=True)
    report = verify(args.max_order or DEFAULT_CATALOG_ORDER, args.claims, settings)
    if args.format == "json":
        _write_json(args, report.to_dict())
    else:
        _write(args, format_report(report))
    return EXIT_OK if report.passed else EXIT_UNVERIFIED


@command.register
def _export_graph_command(
    args: ExportGraphNamespace, parser: argparse.ArgumentParser
) -> int:
    G = realize_text(args.spec, build_settings(args))
    graph = build_graph(G)
    _write(args, export_dimacs(graph.reduced() if args.reduced else graph))
    return EXIT_OK


def configure_logging(verbosity: int) -> None:
    level = {0: logging.WARNING, 1: logging.INFO}.get(verbosity, logging.DEBUG)
    logging.basicConfig(
        level=level, format="%(asctime)s %(levelname)s %(name)s: %(message)s"
    )


def main() -> None:
    parser = build_parser()
    args = parser.parse_args(namespace=NcgroupsNamespace())
    configure_logging(args.verbose)
    try:
        code = command(args, parser)
    except (NcgroupsException, ValueError, OSError) as e:
        message = str(e).splitlines()[0] if str(e) else type(e).__name__
        print(f"{parser.prog}: error: {message}", file=sys.stderr)
        code = EXIT_ERROR
    sys.exit(code)
