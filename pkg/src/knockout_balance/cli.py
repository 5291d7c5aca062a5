"""Command-line front end.

Exit codes: 0 success, 1 validation or domain failure, 2 usage or I/O error.
"""

from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path

from . import axioms as ax
from .balance import (
    TOP_FIVE,
    AllZeroError,
    Clubs,
    Countries,
    TwoGroups,
    UnknownEntityError,
    Window,
    WindowTooLongError,
    WithinCountry,
    balance_series,
    full_window,
    rank_entities,
    share_series,
)
from .data import (
    Dataset,
    DatasetSyntaxError,
    DatasetValidationError,
    UnknownSchemeError,
    embedded_dataset,
    load_dataset,
    parse_scheme,
    validate_dataset,
)
from .indices import IndexKind
from .plotting import SeriesFormatError, read_series_csv, render_svg, write_ranking_csv, write_series_csv

ENV_DATASET = "KB_DATASET"
SCOPES = ("clubs", "countries", "top5-vs-rest", "within-country")


class UsageError(Exception):
    pass


class DomainError(Exception):
    pass


def _dataset_path(args) -> str | None:
    return getattr(args, "data", None) or os.environ.get(ENV_DATASET) or None


def _load(args, strict: bool = True) -> Dataset:
    path = _dataset_path(args)
    if path is None:
        return embedded_dataset()
    try:
        return load_dataset(path, strict=strict)
    except OSError as exc:
        raise UsageError(f"cannot read dataset {path}: {exc.strerror or exc}") from None
    except DatasetSyntaxError as exc:
        raise UsageError(f"{path}: {exc}") from None
    except DatasetValidationError as exc:
        raise DomainError(f"{path} fails validation: {exc}") from None


def _scheme(args):
    try:
        return parse_scheme(args.weights)
    except (UnknownSchemeError, ValueError) as exc:
        raise UsageError(str(exc.args[0] if exc.args else exc)) from None


def _group(args) -> frozenset[str]:
    if not args.group:
        return TOP_FIVE
    return frozenset(c.strip() for c in args.group.split(",") if c.strip())


def _scope(args, scope_name: str, country: str | None = None):
    if scope_name == "clubs":
        return Clubs()
    if scope_name == "countries":
        return Countries()
    if scope_name == "top5-vs-rest":
        return TwoGroups(_group(args))
    if country is None:
        raise UsageError("--country is required with --scope within-country")
    return WithinCountry(country)


def _warn_combination(kind: IndexKind, scheme_name: str) -> None:
    if kind is IndexKind.EUCLIDEAN and scheme_name == "W1":
        print("warning: Euclidean index with W1 lets a few top finishes dominate (squares of 16 vs 1)",
              file=sys.stderr)
    if kind is IndexKind.RECTANGLE and scheme_name in ("W3", "W4"):
        print("note: rectangle index under W3/W4 often reduces to counting round-of-16 qualifications",
              file=sys.stderr)


def _emit(text: str, output: str | None) -> None:
    if output:
        try:
            Path(output).write_text(text, encoding="utf-8", newline="\n")
        except OSError as exc:
            raise UsageError(f"cannot write {output}: {exc.strerror or exc}") from None
    else:
        sys.stdout.write(text)


def cmd_validate(args) -> int:
    path = args.path or _dataset_path(args)
    if path is None:
        d = embedded_dataset()
        source = "embedded dataset"
    else:
        try:
            d = load_dataset(path, strict=False)
        except OSError as exc:
            raise UsageError(f"cannot read {path}: {exc.strerror or exc}") from None
        except DatasetSyntaxError as exc:
            raise UsageError(f"{path}: {exc}") from None
        source = path
    issues = validate_dataset(d)
    for issue in issues:
        print(issue.message)
    if issues:
        print(f"{source}: {len(issues)} problem(s)", file=sys.stderr)
        return 1
    print(f"{source}: OK ({len(d)} records, {len(d.seasons)} seasons, {len(d.clubs)} clubs, "
          f"{len(d.countries)} countries)")
    return 0


def cmd_rank(args) -> int:
    d = _load(args)
    scheme = _scheme(args)
    kind = IndexKind(args.index)
    if args.entity and args.scope:
        raise UsageError("use either --entity or --scope, not both")
    scope_name = args.scope or {"club": "clubs", "country": "countries"}[args.entity or "club"]
    scope = _scope(args, scope_name, args.country)
    full = full_window(d)
    first = full.first_season if args.first_season is None else args.first_season
    length = args.window_len or (full.last_season - first + 1)
    window = Window(first, length)
    if any(s not in d.seasons for s in window.seasons):
        raise UsageError(f"window {window} is not covered by the data ({d.seasons[0]}-{d.seasons[-1]})")
    _warn_combination(kind, scheme.name)
    try:
        ranking = rank_entities(d, scope, kind, scheme, window)
    except UnknownEntityError as exc:
        raise UsageError(f"unknown entity {exc.args[0]}") from None
    if args.top:
        ranking = ranking.top(args.top)
    _emit(write_ranking_csv(ranking), args.output)
    return 0


def cmd_share(args) -> int:
    d = _load(args)
    scheme = _scheme(args)
    kind = IndexKind(args.index)
    scope = _scope(args, args.scope, args.country)
    _warn_combination(kind, scheme.name)
    rows = []
    try:
        for entity in args.entity:
            rows.extend((y, entity, v) for y, v in share_series(d, scope, entity, kind, scheme, args.window_len))
    except UnknownEntityError as exc:
        raise UsageError(str(exc.args[0])) from None
    except WindowTooLongError as exc:
        raise UsageError(str(exc)) from None
    _emit(write_series_csv(rows), args.output)
    return 0


def cmd_hhi(args) -> int:
    d = _load(args)
    scheme = _scheme(args)
    kind = IndexKind(args.index)
    _warn_combination(kind, scheme.name)
    if args.scope == "within-country":
        if not args.country:
            raise UsageError("--country is required with --scope within-country")
        targets = [(c, WithinCountry(c)) for c in args.country]
    else:
        if args.country:
            raise UsageError("--country only applies to --scope within-country")
        targets = [(args.scope, _scope(args, args.scope))]
    rows = []
    try:
        for label, scope in targets:
            series = balance_series(d, scope, kind, scheme, args.window_len)
            rows.extend((y, label, v) for y, v in series.points)
    except UnknownEntityError as exc:
        raise UsageError(f"unknown country {exc.args[0]}") from None
    except WindowTooLongError as exc:
        raise UsageError(str(exc)) from None
    _emit(write_series_csv(rows), args.output)
    return 0


def cmd_axioms(args) -> int:
    result = ax.run_battery(trials=args.trials, seed=args.seed)
    matrix = ax.property_matrix(result)
    kinds = list(result.violations)
    width = max(len(a.value) for a in ax.Axiom) + 2
    print(f"property battery: {args.trials} trials, seed {args.seed}")
    print("property".ljust(width) + "".join(k.value.rjust(12) for k in kinds))
    for axiom in ax.Axiom:
        cells = []
        for k in kinds:
            mark = "ok" if matrix[k][axiom] else f"x({result.violations[k][axiom]})"
            cells.append(mark.rjust(12))
        print(axiom.value.ljust(width) + "".join(cells))
    print()
    print("ok = no violation found; x(n) = n violations in the battery (or a fixture counterexample)")
    repair = all(ax.sqrt_n_repair_holds(n, v) for n in range(1, 9) for v in (0.5, 1, 2, 3.25, 7))
    print(f"Euclidean times sqrt(n) restores uniform citation: {'yes' if repair else 'NO'}")

    print("\nrectangle counterexamples:")
    for axiom, verdict in ax.fixture_verdicts(IndexKind.RECTANGLE).items():
        w = verdict.witness or {}
        values = ", ".join(f"{k}={v:g}" for k, v in w.items() if k.startswith("f("))
        print(f"  {axiom.value}: {'satisfied' if verdict.satisfied else 'violated'} ({values})")

    ok = ax.matches_expected_pattern(matrix) and repair
    print(f"\nEuclidean/rectangle pattern {'matches' if ok else 'DOES NOT match'} the reference table")
    return 0 if ok else 1


def cmd_plot(args) -> int:
    try:
        text = Path(args.input).read_text(encoding="utf-8")
    except OSError as exc:
        raise UsageError(f"cannot read {args.input}: {exc.strerror or exc}") from None
    try:
        rows = read_series_csv(text)
    except SeriesFormatError as exc:
        raise UsageError(f"{args.input}: {exc}") from None
    _emit(render_svg(rows, title=args.title, ylabel=args.ylabel), args.output)
    return 0


def _add_analysis_flags(p: argparse.ArgumentParser, window_default: int | None) -> None:
    p.add_argument("--index", choices=[k.value for k in IndexKind], default="euclidean")
    p.add_argument("--weights", default="W2", help="W1..W4, or w:a,b,c,d,e for W,F,SF,QF,R16")
    p.add_argument("--group", help="comma-separated countries forming the first group (default: top five)")
    p.add_argument("--window-len", type=int, default=window_default)
    p.add_argument("--output", "-o", help="write here instead of stdout")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--data", help=f"dataset CSV (default: ${ENV_DATASET} or the embedded data)")

    parser = argparse.ArgumentParser(
        prog="kb", description="Bibliometric performance and competitive balance indices for knockout tournaments."
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", parents=[common], help="check a dataset's bracket structure")
    p.add_argument("path", nargs="?")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("rank", parents=[common], help="rank clubs or countries over one window")
    p.add_argument("--entity", choices=("club", "country"))
    p.add_argument("--scope", choices=SCOPES)
    p.add_argument("--country")
    p.add_argument("--first-season", type=int)
    p.add_argument("--top", type=int)
    _add_analysis_flags(p, None)
    p.set_defaults(func=cmd_rank)

    p = sub.add_parser("share", parents=[common], help="share series of entities over rolling windows")
    p.add_argument("--scope", choices=SCOPES, default="clubs")
    p.add_argument("--entity", action="append", required=True, help="entity name; repeatable")
    p.add_argument("--country")
    _add_analysis_flags(p, 5)
    p.set_defaults(func=cmd_share)

    p = sub.add_parser("hhi", parents=[common], help="HHI series over rolling windows")
    p.add_argument("--scope", choices=SCOPES, default="clubs")
    p.add_argument("--country", action="append", help="country for within-country scope; repeatable")
    _add_analysis_flags(p, 5)
    p.set_defaults(func=cmd_hhi)

    p = sub.add_parser("axioms", help="run the property battery and the counterexamples")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--trials", type=int, default=10_000)
    p.set_defaults(func=cmd_axioms)

    p = sub.add_parser("plot", help="render a series CSV as an SVG line chart")
    p.add_argument("input")
    p.add_argument("--output", "-o", required=True)
    p.add_argument("--title", default="")
    p.add_argument("--ylabel", default="value")
    p.set_defaults(func=cmd_plot)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code in (0, None) else 2
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (DomainError, AllZeroError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
