"""Command-line front end.

Exit codes: 0 success, 1 verification found violations, 2 parse or
configuration error, 3 precondition violation.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from dataclasses import asdict, dataclass
from typing import Optional

from . import __version__
from .dataset import DATASET_ENV, DatasetError, default_dataset_path, load_dataset
from .permutations import AnClassLabel, CycleType, is_prime, prime_power_decomposition
from .spectra import PreconditionError, analyze, spectrum_on_Pn, spectrum_on_Wn

EXIT_OK, EXIT_VIOLATION, EXIT_USAGE, EXIT_PRECONDITION = 0, 1, 2, 3
SUITES = ("tables", "corollaries", "bounds", "wagner", "lemma33e", "generation", "oracles", "kronecker")
FORMATS = ("json", "csv", "text")


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    n_cap_irrep: int = 10
    n_cap_oracle: int = 12
    dataset_path: str = ""
    output_format: str = "json"
    seed: int = 0

    def validate(self) -> "RunConfig":
        if not 5 <= self.n_cap_irrep <= 12:
            raise UsageError(f"n_cap_irrep={self.n_cap_irrep} outside 5..12")
        if not 5 <= self.n_cap_oracle <= 12:
            raise UsageError(f"n_cap_oracle={self.n_cap_oracle} outside 5..12")
        if self.output_format not in FORMATS:
            raise UsageError(f"output_format must be one of {', '.join(FORMATS)}")
        return self


def load_config(path: Optional[str]) -> RunConfig:
    """Read key = value lines; '#' starts a comment."""
    cfg = RunConfig()
    if not path:
        return cfg
    try:
        with open(path, encoding="utf-8") as fh:
            lines = fh.read().splitlines()
    except OSError as exc:
        raise UsageError(f"cannot read config {path}: {exc}") from exc
    types = {k: type(v) for k, v in asdict(cfg).items()}
    for num, raw in enumerate(lines, 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise UsageError(f"{path}:{num}: expected key = value")
        key, value = (x.strip() for x in line.split("=", 1))
        value = value.strip("\"'")
        if key not in types:
            raise UsageError(f"{path}:{num}: unknown key {key!r}")
        try:
            setattr(cfg, key, types[key](value))
        except ValueError as exc:
            raise UsageError(f"{path}:{num}: bad value for {key}: {value!r}") from exc
    return cfg


def _resolve_config(args) -> RunConfig:
    cfg = load_config(args.config)
    if os.environ.get(DATASET_ENV):
        cfg.dataset_path = os.environ[DATASET_ENV]
    for key in ("n_cap_irrep", "n_cap_oracle", "dataset_path", "seed"):
        value = getattr(args, key, None)
        if value is not None:
            setattr(cfg, key, value)
    if args.format is not None:
        cfg.output_format = args.format
    if not cfg.dataset_path:
        cfg.dataset_path = default_dataset_path()
    return cfg.validate()


def _envelope(command: str, cfg: RunConfig, body: dict) -> dict:
    return {
        "schema": 1,
        "command": command,
        "version": __version__,
        "seed": cfg.seed,
        "config": {"n_cap_irrep": cfg.n_cap_irrep, "n_cap_oracle": cfg.n_cap_oracle},
        **body,
    }


# ---------------------------------------------------------------------------
# Rendering


def _render(doc: dict, fmt: str, rows: list[dict], text_lines: list[str]) -> str:
    if fmt == "json":
        return json.dumps(doc, indent=2, ensure_ascii=False) + "\n"
    if fmt == "csv":
        buf = io.StringIO()
        fields = list(rows[0]) if rows else ["empty"]
        writer = csv.DictWriter(buf, fieldnames=fields, lineterminator="\n", extrasaction="ignore")
        writer.writeheader()
        for r in rows:
            writer.writerow({k: (json.dumps(v, ensure_ascii=False) if isinstance(v, (dict, list)) else v)
                             for k, v in r.items()})
        return buf.getvalue()
    return "\n".join(text_lines) + "\n"


def _emit(text: str, out: Optional[str]) -> None:
    if out:
        with open(out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


# ---------------------------------------------------------------------------
# Commands


def _parse_class(text: str, n: int):
    t = text.strip()
    tag = None
    if t and t[-1] in "AB" and t[:-1].rstrip().endswith("]"):
        t, tag = t[:-1], t[-1]
    try:
        ct = CycleType.parse(t, n)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    if ct.n != n:
        raise UsageError(f"cycle type {ct} has degree {ct.n}, not {n}")
    return ct, tag


def cmd_spectrum(args, cfg: RunConfig):
    ct, tag = _parse_class(args.ct, args.n)
    notes = []
    if args.module == "irrep":
        from .characters import AnCharacter, PartitionLabel, irrep_spectrum

        if not args.rep:
            raise UsageError("--module irrep needs --rep")
        rep_text = args.rep.strip()
        split = rep_text[-1] if rep_text[-1] in "+-" else None
        try:
            lam = PartitionLabel.parse(rep_text.rstrip("+-").replace("(", "[").replace(")", "]"))
        except ValueError as exc:
            raise UsageError(str(exc)) from exc
        if lam.n != args.n:
            raise UsageError(f"partition {lam} is not a partition of {args.n}")
        if args.group == "An":
            if not ct.is_even:
                raise PreconditionError(f"{ct} is odd, so it is not in A_{args.n}")
            try:
                chi = AnCharacter(lam, split)
                cls = AnClassLabel(ct, tag)
            except ValueError as exc:
                raise UsageError(str(exc)) from exc
        else:
            if split or tag:
                raise UsageError("split labels only make sense with --group An")
            chi, cls = lam, ct
        if args.ell:
            raise PreconditionError("irreducible spectra are computed in characteristic 0 only")
        if ct.order > 1 and prime_power_decomposition(ct.order) is None:
            raise PreconditionError(f"{ct} has order {ct.order}, which is not a prime power")
        spec = irrep_spectrum(chi, cls)
        provenance = "character"
        label = f"{chi} at {cls}"
    else:
        if tag:
            raise UsageError("class tags A/B apply to --module irrep --group An only")
        if args.module == "Pn":
            spec = spectrum_on_Pn(ct, args.ell)
        else:
            spec = spectrum_on_Wn(ct, args.ell, sign_twist=args.module == "Wn-")
        provenance = "formula"
        label = f"{ct} on {args.module}"
    report = analyze(spec)
    if ct.is_identity():
        notes.append("central element: the identity acts as a scalar")
    body = {"input": {"n": args.n, "ct": str(ct), "ell": args.ell, "module": args.module, "rep": args.rep},
            "spectrum": spec.to_json(), "report": report.to_json(), "notes": notes, "provenance": provenance}
    doc = _envelope("spectrum", cfg, body)
    rows = [{"root": k, "multiplicity": v, "provenance": provenance} for k, v in spec.to_json()["mult"].items()]
    text = [f"{label}: {spec}", f"verdict {report.verdict}, deg {report.deg}, max multiplicity {report.max_mult}"
            + (f", e = {report.to_json()['e']}" if report.exceptional is not None else "")] + notes
    return doc, rows, text, EXIT_OK


def cmd_classify(args, cfg: RunConfig):
    from .classifier import SEARCH_MAX_DEGREE, SEARCH_MIN_DEGREE, search_almost_cyclic

    if not is_prime(args.p):
        raise UsageError(f"p={args.p} is not prime")
    if not SEARCH_MIN_DEGREE <= args.n <= SEARCH_MAX_DEGREE:
        raise PreconditionError(f"n={args.n} outside the search range {SEARCH_MIN_DEGREE}..{SEARCH_MAX_DEGREE}")
    hits = search_almost_cyclic(args.n, args.group, args.p)
    if args.non_subnatural:
        hits = [h for h in hits if not h.subnatural]
    items = [h.to_json() for h in hits]
    doc = _envelope("classify", cfg, {"input": {"n": args.n, "group": args.group, "p": args.p}, "hits": items})
    rows = [{"rep": h["rep"], "class": h["class"], "dim": h["dim"], "order": h["order"], "subnatural": h["subnatural"],
             "verdict": h["report"]["verdict"], "deg": h["report"]["deg"], "e": h["report"]["e"] or "-",
             "m": h["report"]["max_mult"], "provenance": h["provenance"]} for h in items]
    text = [f"{r['rep']:>14} {r['class']:<12} dim {r['dim']:>3} deg {r['deg']:>2} e {r['e']:<3} m {r['m']}"
            + ("  subnatural" if r["subnatural"] else "") for r in rows] or ["no hits"]
    return doc, rows, text, EXIT_OK


def _run_suite(suite: str, args, cfg: RunConfig):
    from . import classifier as cl

    if suite in ("tables", "corollaries"):
        try:
            dataset = load_dataset(cfg.dataset_path)
        except DatasetError as exc:
            raise UsageError(str(exc)) from exc
    if suite == "tables":
        cache = cl._HitCache()
        report = cl.verify_table_rows(dataset, cache)
        report.merge(cl.verify_table_completeness(dataset, n_max=cfg.n_cap_irrep, cache=cache))
        report.merge(cl.verify_dataset_consistency(dataset))
        return [report]
    if suite == "corollaries":
        report = cl.verify_corollaries(dataset)
        report.merge(cl.verify_corollaries(dataset, include_trivial_centre=True))
        return [report]
    if suite == "bounds":
        cache = cl._HitCache()
        report = cl.verify_bounds(cl.all_hits(n_max=cfg.n_cap_irrep, cache=cache))
        report.merge(cl.verify_emptiness([n for n in (11, 12) if n > cfg.n_cap_irrep], cache=cache))
        return [report]
    if suite == "wagner":
        try:
            return [cl.verify_wagner_ee2(args.n_max)]
        except ValueError as exc:
            raise PreconditionError(str(exc)) from exc
    if suite == "lemma33e":
        return list(cl.verify_w_module(5, cfg.n_cap_oracle))
    if suite == "generation":
        return [cl.verify_generation()]
    if suite == "oracles":
        return [cl.verify_irrep_oracles(7, cfg.n_cap_oracle)]
    if suite == "kronecker":
        return [cl.verify_kronecker(cfg.seed, args.random_count)]
    raise UsageError(f"unknown suite {suite!r}")


def cmd_verify(args, cfg: RunConfig):
    suites = SUITES if args.suite == "all" else (args.suite,)
    reports = []
    for s in suites:
        reports.extend(_run_suite(s, args, cfg))
    ok = all(r.ok for r in reports)
    doc = _envelope("verify", cfg, {"suite": args.suite, "ok": ok, "reports": [r.to_json() for r in reports]})
    rows = [{"suite": r.suite, "check": c["check"], "status": c["status"], "provenance": c.get("provenance"),
             "details": {k: v for k, v in c.items() if k not in ("check", "status", "provenance")}}
            for r in reports for c in r.checks]
    text = []
    for r in reports:
        text.append(f"[{r.suite}] {'ok' if r.ok else 'VIOLATIONS'} {r.counts()}")
        for c in r.checks:
            if c["status"] in ("fail", "note"):
                text.append(f"  {c['status']}: {c['check']}")
    return doc, rows, text, EXIT_OK if ok else EXIT_VIOLATION


def cmd_table(args, cfg: RunConfig):
    from .characters import character_table_json

    if not 1 <= args.n <= cfg.n_cap_irrep:
        raise PreconditionError(f"n={args.n} outside 1..{cfg.n_cap_irrep}")
    table = character_table_json(args.n, args.group)
    doc = _envelope("table", cfg, {"table": table, "provenance": "character"})
    rows = [{"character": chi, "class": cls, "value": json.dumps(v)} for chi, vals in table["rows"].items()
            for cls, v in vals.items()]
    text = [f"{chi}: " + " ".join(f"{cls}={v}" for cls, v in vals.items()) for chi, vals in table["rows"].items()]
    return doc, rows, text, EXIT_OK


def cmd_dataset(args, cfg: RunConfig):
    try:
        rows_ = load_dataset(cfg.dataset_path)
    except DatasetError as exc:
        raise UsageError(str(exc)) from exc
    if args.table:
        rows_ = [r for r in rows_ if r.source_table == args.table]
    items = [r.to_json() for r in rows_]
    doc = _envelope("dataset", cfg, {"rows": items, "provenance": "dataset"})
    text = [f"{r['source_table']} {r['group_label']:<14} {r['ell_condition']:<8} dim {r['dim']} c {r['cover_c']} "
            f"o(g) {r['o_g']} deg {r['deg']} e {r['e']} m {r['max_mult']} [{r['scope']}]" for r in items]
    return doc, items, text, EXIT_OK


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=FORMATS, default=None)
    common.add_argument("--out", default=None, help="write output to this file instead of stdout")
    common.add_argument("--config", default=None, help="key = value configuration file")
    common.add_argument("--dataset", dest="dataset_path", default=None)
    common.add_argument("--seed", type=int, default=None)
    common.add_argument("--n-cap-irrep", dest="n_cap_irrep", type=int, default=None)
    common.add_argument("--n-cap-oracle", dest="n_cap_oracle", type=int, default=None)

    parser = argparse.ArgumentParser(prog="almostcyclic", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("spectrum", parents=[common], help="eigenvalue multiplicities of one element")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--ct", required=True, help='cycle type such as "[4,2,1^3]"; append A or B for split A_n classes')
    p.add_argument("--ell", type=int, default=0)
    p.add_argument("--module", choices=("Pn", "Wn", "Wn-", "irrep"), default="Wn")
    p.add_argument("--rep", default=None, help='partition such as "(3,1,1)+" for --module irrep')
    p.add_argument("--group", choices=("Sn", "An"), default="Sn")
    p.set_defaults(func=cmd_spectrum)

    p = sub.add_parser("classify", parents=[common], help="almost-cyclic pairs for one degree and prime")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--group", choices=("Sn", "An"), required=True)
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--non-subnatural", action="store_true", help="omit subnatural characters")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("verify", parents=[common], help="run a verification suite")
    p.add_argument("--suite", choices=SUITES + ("all",), required=True)
    p.add_argument("--n-max", type=int, default=10_000, help="upper end for the wagner suite")
    p.add_argument("--random-count", type=int, default=10_000, help="random pairs for the kronecker suite")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("table", parents=[common], help="export a character table")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--group", choices=("Sn", "An"), default="Sn")
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("dataset", parents=[common], help="export the bundled table rows")
    p.add_argument("--table", choices=("1.1", "1.2", "2.1", "2.2"), default=None)
    p.set_defaults(func=cmd_dataset)
    return parser


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else EXIT_OK
    try:
        cfg = _resolve_config(args)
        doc, rows, text, code = args.func(args, cfg)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except PreconditionError as exc:
        print(f"precondition violated: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    _emit(_render(doc, cfg.output_format, rows, text), args.out)
    return code


if __name__ == "__main__":
    sys.exit(main())
