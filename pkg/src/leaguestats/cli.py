"""``leaguestats`` command line.

Exit status: 0 on success, 1 on a data error (the library exception name is
printed), 2 on a usage error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from pathlib import Path
from typing import Optional, Sequence

from .corpus import (
    DESCRIPTORS,
    Corpus,
    Descriptor,
    format_number,
    load_corpus,
    load_default_corpus,
    validate_season_label,
)
from .density import descriptor_density, nonoverlap_table, overlap_pct
from .errors import LeagueStatsError
from .inequality import (
    inequality_report,
    inequality_series,
    lorenz,
    reports_to_json,
    series_to_csv,
)
from .multivariate import correlation_matrix, pca
from .ranking import rerank_all
from .report import RANK_COLUMNS, reproduce, rerank_csv
from .svg import emit_svg, lorenz_svg, season_svg

COMMANDS = ("rerank", "inequality", "overlap", "correlation", "pca", "reproduce")


class UsageError(Exception):
    def __init__(self, flag: str, message: str):
        super().__init__(f"{flag}: {message}")


def _parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--season", help="season label such as 2009/10 (default: all seasons)")
    common.add_argument("--descriptor", help="ratio, player_spend, foreign_spend, profit, expenditure or points")
    common.add_argument("--pair", help="two descriptors separated by a comma, e.g. foreign_spend,profit")
    common.add_argument("--input", help="directory of epl_YYYY_YY.csv files (default: embedded corpus)")
    common.add_argument("--format", choices=("csv", "json", "svg"), default="csv")
    common.add_argument("--out", help="output file (reproduce: output directory)")
    common.add_argument("--allow-partial", action="store_true", help="accept seasons without profit/expenditure")

    p = argparse.ArgumentParser(prog="leaguestats", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        sub.add_parser(name, parents=[common])
    return p


def _corpus(args) -> Corpus:
    if args.input:
        if not Path(args.input).is_dir():
            raise UsageError("--input", f"not a directory: {args.input}")
        return load_corpus(args.input, allow_partial=args.allow_partial)
    return load_default_corpus(allow_partial=args.allow_partial)


def _descriptor(text: Optional[str], flag: str = "--descriptor") -> Optional[Descriptor]:
    if text is None:
        return None
    try:
        return Descriptor.parse(text)
    except ValueError:
        raise UsageError(flag, f"unknown descriptor {text!r}") from None


def _pair(text: Optional[str]) -> Optional[tuple[Descriptor, Descriptor]]:
    if text is None:
        return None
    parts = [s.strip() for s in text.split(",")]
    if len(parts) != 2:
        raise UsageError("--pair", "expected two descriptors separated by a comma")
    a, b = (_descriptor(s, "--pair") for s in parts)
    if a is b:
        raise UsageError("--pair", "the two descriptors must differ")
    return a, b


def _select(corpus: Corpus, season: Optional[str]) -> Corpus:
    if season is None:
        return corpus.complete() if any(not t.partial for t in corpus) else corpus
    if season not in corpus:
        raise UsageError("--season", f"unknown season {season!r}")
    return Corpus((corpus[season],))


def _rows_csv(header: Sequence[str], rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([format_number(v) if isinstance(v, float) else v for v in row])
    return buf.getvalue()


def _cmd_rerank(args, corpus: Corpus) -> str:
    if args.format == "csv":
        if len(corpus) == 1:
            return rerank_csv(corpus.seasons[0])
        parts = []
        for i, t in enumerate(corpus):
            lines = rerank_csv(t).splitlines()
            if i == 0:
                parts.append("season," + lines[0])
            parts += [f"{t.season},{line}" for line in lines[1:]]
        return "\n".join(parts) + "\n"
    if args.format == "json":
        out = {
            t.season: {
                "teams": t.teams,
                "ranks": {d.value: list(r) for d, r in rerank_all(t).ranks.items()},
            }
            for t in corpus
        }
        return json.dumps(out, indent=2) + "\n"
    if len(corpus) != 1:
        raise UsageError("--season", "svg output needs a single season")
    t = corpus.seasons[0]
    ranks = rerank_all(t)
    series = {d.label: [(float(i + 1), float(r)) for i, r in enumerate(ranks[d])] for d in RANK_COLUMNS}
    series["official"] = [(float(i), float(i)) for i in range(1, 21)]
    return emit_svg(series, title=f"Re-ranked positions {t.season}")


def _cmd_inequality(args, corpus: Corpus) -> str:
    d = _descriptor(args.descriptor)
    if d is not None and len(corpus) == 1 and args.format in ("csv", "svg"):
        t = corpus.seasons[0]
        curve = lorenz(t.column(d))
        if args.format == "csv":
            return curve.to_csv()
        return lorenz_svg({t.season: curve}, f"Lorenz curve: {d.label} {t.season}")
    descs = DESCRIPTORS if d is None else (d,)
    if args.format == "json":
        return reports_to_json([inequality_report(t, descs) for t in corpus])
    series = {x: inequality_series(corpus, x) for x in descs}
    if args.format == "csv":
        return series_to_csv(series)
    return season_svg({x.label: [e.gini for e in s] for x, s in series.items()}, corpus.labels, "Gini index")


def _cmd_overlap(args, corpus: Corpus) -> str:
    pair = _pair(args.pair)
    d = _descriptor(args.descriptor)
    if pair is not None:
        a, b = pair
        vals = [overlap_pct(t, a, b) for t in corpus]
        if args.format == "csv":
            return _rows_csv(["season", "percent"], zip(corpus.labels, vals))
        if args.format == "json":
            return json.dumps({"pair": [a.value, b.value], "percent": dict(zip(corpus.labels, vals))}, indent=2) + "\n"
        return season_svg({f"{a.label} v {b.label}": vals}, corpus.labels, "Overlap (%)")
    if d is not None:
        if len(corpus) != 1:
            raise UsageError("--season", "a density needs a single season")
        est = descriptor_density(corpus.seasons[0], d)
        if args.format == "csv":
            return est.to_csv()
        if args.format == "json":
            return json.dumps(
                {"season": est.season, "descriptor": d.value, "bandwidth": est.bandwidth,
                 "x": est.grid.tolist(), "f": est.density.tolist()},
                indent=2,
            ) + "\n"
        return emit_svg({d.label: list(zip(est.grid.tolist(), est.density.tolist()))}, title=f"Density {est.season}")
    nov = nonoverlap_table(corpus)
    if args.format == "csv":
        return nov.to_csv()
    if args.format == "json":
        return json.dumps(nov.to_dict(), indent=2) + "\n"
    return season_svg({f"Pts v {x.label}": nov.values[:, j].tolist() for j, x in enumerate(DESCRIPTORS)}, corpus.labels, "Non-overlap")


def _cmd_correlation(args, corpus: Corpus) -> str:
    corr = correlation_matrix(corpus)
    d = _descriptor(args.descriptor)
    if d is not None:
        s = corr.series(d)
        if args.format == "csv":
            return _rows_csv(["season", d.value], s.entries)
        if args.format == "json":
            return json.dumps({"descriptor": d.value, "entries": dict(s.entries)}, indent=2) + "\n"
        return season_svg({d.label: [r for _, r in s.entries]}, corr.seasons, "Correlation with points")
    if args.format == "csv":
        return corr.to_csv()
    if args.format == "json":
        return json.dumps(corr.to_dict(), indent=2) + "\n"
    return season_svg({x.label: corr.values[:, j].tolist() for j, x in enumerate(DESCRIPTORS)}, corr.seasons, "Correlation with points")


def _cmd_pca(args, corpus: Corpus) -> str:
    results = [pca(t) for t in corpus]
    if args.format == "json":
        payload = results[0].to_dict() if len(results) == 1 else [r.to_dict() for r in results]
        return json.dumps(payload, indent=2) + "\n"
    if args.format == "svg":
        return season_svg(
            {"PC1 explained": [float(r.explained[0]) for r in results]}, corpus.labels, "PC1 explained variance"
        )
    if len(results) == 1:
        return results[0].to_csv()
    parts = []
    for i, r in enumerate(results):
        lines = r.to_csv().splitlines()
        if i == 0:
            parts.append("season," + lines[0])
        parts += [f"{r.season},{line}" for line in lines[1:]]
    return "\n".join(parts) + "\n"


HANDLERS = {
    "rerank": _cmd_rerank,
    "inequality": _cmd_inequality,
    "overlap": _cmd_overlap,
    "correlation": _cmd_correlation,
    "pca": _cmd_pca,
}


def run(argv: Optional[Sequence[str]] = None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = _parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        if args.season is not None and args.command != "reproduce":
            try:
                validate_season_label(args.season)
            except ValueError as exc:
                raise UsageError("--season", str(exc)) from None
        _descriptor(args.descriptor)
        _pair(args.pair)
        corpus = _corpus(args)
        if args.command == "reproduce":
            res = reproduce(corpus, args.out or "reproduce_out")
            stdout.write(res.summary())
            stdout.write(f"wrote {len(res.files)} files in {res.seconds:.2f}s\n")
            return 0 if res.passed else 1
        text = HANDLERS[args.command](args, _select(corpus, args.season))
    except UsageError as exc:
        stderr.write(f"leaguestats {args.command}: error: {exc}\n")
        return 2
    except LeagueStatsError as exc:
        stderr.write(f"{type(exc).__name__}: {exc}\n")
        return 1
    except (OSError, KeyError) as exc:
        stderr.write(f"{type(exc).__name__}: {exc}\n")
        return 1
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
    else:
        stdout.write(text)
    return 0


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
