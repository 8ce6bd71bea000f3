"""Command-line front end: ``psikit {score,ingest,simulate,audit,reproduce}``."""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from psikit import datasets, properties, reproduce
from psikit.contingency import ContingencyTable, base_rate, bias_score, format_outcomes, from_outcomes, load_outcomes
from psikit.errors import PsikitError, UndefinedBiasError
from psikit.ingestion import TIE_POLICIES, DirectionalRule, directionalize, load_series
from psikit.scores import LONG_NAMES, ScoreSet, score_all
from psikit.simulate import TrialConfig, run_trials

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_ERROR = 2


def _add_global(parser: argparse.ArgumentParser, suppress: bool) -> None:
    default = (lambda v: argparse.SUPPRESS) if suppress else (lambda v: v)
    parser.add_argument("--json", action="store_true", default=default(False), help="machine-readable output")
    parser.add_argument("--decimals", type=int, default=default(3), metavar="K",
                        help="decimals for printed scores (default 3)")
    parser.add_argument("--output", type=Path, default=default(None), metavar="PATH",
                        help="write output to PATH (a directory for 'reproduce')")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="psikit", description="Skill verification for binary forecasts.")
    _add_global(parser, suppress=False)
    common = argparse.ArgumentParser(add_help=False)
    _add_global(common, suppress=True)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("score", parents=[common], help="score one contingency table")
    p.add_argument("counts", nargs="*", type=int, metavar="N", help="a b c d")
    p.add_argument("--file", type=Path, help="outcome stream: one 'predicted,observed' pair per line")

    p = sub.add_parser("ingest", parents=[common], help="directionalize a forecast/actual series and score it")
    p.add_argument("series", nargs="?", type=Path, help="series file (default: bundled GDP data)")
    p.add_argument("--tie-policy", choices=TIE_POLICIES, default="down")
    p.add_argument("--outcomes", type=Path, help="also write the Up/Down outcome stream here")

    p = sub.add_parser("simulate", parents=[common], help="score random forecasters")
    p.add_argument("--trials", type=int, default=30)
    p.add_argument("--generator", choices=("bernoulli", "cell-uniform"), default="bernoulli")
    p.add_argument("--max", type=int, default=1000, dest="max_count", help="cell-uniform: largest cell count")
    p.add_argument("--n", type=int, default=400, help="bernoulli: periods per table")
    p.add_argument("--pf", type=float, default=0.5, help="bernoulli: P(forecast yes)")
    p.add_argument("--po", type=float, default=0.5, help="bernoulli: P(event)")
    p.add_argument("--seed", type=int, required=True)

    p = sub.add_parser("audit", parents=[common], help="property matrix for selected measures")
    p.add_argument("--measures", default="all", help="comma-separated names, or 'all'")
    p.add_argument("--trials", type=int, default=1000)
    p.add_argument("--seed", type=int, default=0)

    p = sub.add_parser("reproduce", parents=[common], help="regenerate a published table and diff it")
    p.add_argument("target", help=", ".join(reproduce.TARGETS))
    p.add_argument("--trials", type=int, default=1000, help="audit_matrix: sampled tables per probe")
    p.add_argument("--seed", type=int, default=0, help="audit_matrix: seed")
    return parser


def _emit(text: str, output: Path | None) -> None:
    if output is None:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")
    else:
        output.write_text(text if text.endswith("\n") else text + "\n", encoding="utf-8")


def _scores_text(table: ContingencyTable, scores: ScoreSet, decimals: int) -> str:
    lines = [f"a={table.a} b={table.b} c={table.c} d={table.d} n={table.n}"]
    try:
        bias = f"{bias_score(table):.{decimals}f}"
    except UndefinedBiasError:
        bias = "undefined"
    lines.append(f"base rate {base_rate(table):.{decimals}f}, bias score {bias}")
    for name, sv in scores.items():
        flag = "  (degenerate: no-skill value)" if sv.degenerate else ""
        lines.append(f"{name.upper():<5} {sv.format(decimals):>{decimals + 3}}  {LONG_NAMES[name]}{flag}")
    return "\n".join(lines)


def cmd_score(args) -> int:
    if args.file is not None:
        if args.counts:
            raise PsikitError("give either four counts or --file, not both")
        table = from_outcomes(load_outcomes(args.file))
    elif len(args.counts) == 4:
        table = ContingencyTable(*args.counts)
    else:
        raise PsikitError("score needs four counts (a b c d) or --file")
    scores = score_all(table)
    if args.json:
        text = json.dumps({"table": table.to_dict(), "scores": scores.to_dict(args.decimals)})
    else:
        text = _scores_text(table, scores, args.decimals)
    _emit(text, args.output)
    return EXIT_OK


def cmd_ingest(args) -> int:
    records = load_series(args.series or datasets.gdp_series_path())
    result = directionalize(records, DirectionalRule(tie_policy=args.tie_policy))
    scores = score_all(result.table)
    if args.outcomes is not None:
        args.outcomes.write_text(format_outcomes(result.outcomes))
    if args.json:
        text = json.dumps({"table": result.table.to_dict(), "metadata": result.metadata(),
                           "scores": scores.to_dict(args.decimals)})
    else:
        text = (f"{len(result.outcomes)} forecasts; tie policy {args.tie_policy}; ties hit: "
                f"forecast {result.forecast_ties}, actual {result.actual_ties}\n"
                + _scores_text(result.table, scores, args.decimals))
    _emit(text, args.output)
    return EXIT_OK


def cmd_simulate(args) -> int:
    try:
        config = TrialConfig(trials=args.trials, generator=args.generator.replace("-", "_"), seed=args.seed,
                             n=args.n, p_forecast=args.pf, p_observed=args.po, max_count=args.max_count)
    except ValueError as exc:
        raise PsikitError(str(exc)) from None
    batch = run_trials(config)
    if args.json:
        text = batch.to_json(args.decimals)
    else:
        text = batch.to_csv(args.decimals)
        if args.trials > 1:
            text += "std_error,,,,,," + ",".join(
                f"{batch.std_errors[m]:.{args.decimals + 2}f}" for m in batch.std_errors) + "\n"
    _emit(text, args.output)
    return EXIT_OK


def cmd_audit(args) -> int:
    try:
        measures = properties.resolve_measures(args.measures.split(","))
    except KeyError as exc:
        raise PsikitError(exc.args[0]) from None
    reports = properties.audit_matrix(measures, trials=args.trials, seed=args.seed)
    text = properties.reports_to_json(reports) if args.json else properties.render_matrix(reports)
    _emit(text, args.output)
    return EXIT_OK


def cmd_reproduce(args) -> int:
    try:
        target = reproduce.normalize_target(args.target)
    except KeyError as exc:
        raise PsikitError(exc.args[0]) from None
    report = reproduce.run(target, output_dir=args.output if target == "figure1" else None,
                           decimals=args.decimals, trials=args.trials, seed=args.seed)
    if args.output is not None and target != "figure1":
        args.output.mkdir(parents=True, exist_ok=True)
        path = args.output / f"{target}.csv"
        path.write_text(report.to_csv(args.decimals))
        report.files.append(path)
    text = json.dumps(report.to_dict(args.decimals)) if args.json else report.summary(args.decimals)
    sys.stdout.write(text + "\n")
    return EXIT_OK if report.passed else EXIT_FAIL


COMMANDS = {
    "score": cmd_score,
    "ingest": cmd_ingest,
    "simulate": cmd_simulate,
    "audit": cmd_audit,
    "reproduce": cmd_reproduce,
}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except (PsikitError, OSError) as exc:
        print(f"psikit {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
