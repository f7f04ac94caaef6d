"""Command-line front end.

    parahopf verify SPEC          bialgebroid and para-Hopf axioms
    parahopf cocyclic SPEC        cocyclic identities up to --max-level
    parahopf cohomology SPEC      HH and HC dimension tables (finite instances)
    parahopf haar SPEC            Haar system and contracting homotopy
    parahopf export SPEC --out D  sparse triplet matrices / basis labels
    parahopf list                 bundled specs

SPEC is a path or the name of a bundled spec.  Exit codes: 0 every check
passed, 1 some mathematical check failed, 2 bad input.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import __version__
from .axioms import check_para_antipode, verify_all
from .cocyclic import CocyclicModule, engine_agreement, verify_cocyclic
from .cohomology import CohomologyError, compute_cohomology, haar_homotopy
from .instances import InstanceError, instance_summary
from .reports import FAIL, CheckReport, format_key
from .rtensor import NORMAL_FORM, QUOTIENT, TensorError, TensorTower, permutation_map, verify_well_defined
from .specfile import SpecError, bundled_specs, load_instance

REPORT_SCHEMA = 1
DEFAULT_MAX_LEVEL = 4
HIGH_LEVEL = 5
WITNESS_WIDTH = 150


class InputError(Exception):
    pass


def resolve_spec(name: str) -> Path:
    p = Path(name)
    if p.exists():
        return p
    bundled = bundled_specs()
    stem = p.stem if p.suffix == ".json" else name
    if stem in bundled:
        return bundled[stem]
    raise InputError(f"no such spec file or bundled spec: {name!r}")


def _engines(inst, requested: str):
    """Primary engine and optional second engine for cross-checks."""
    has_nf = inst.backend is not None
    if requested == QUOTIENT:
        if not inst.finite:
            raise InputError(f"{inst.name} is infinite; the quotient engine needs a finite instance")
        return QUOTIENT, None
    if requested == NORMAL_FORM:
        if not has_nf:
            raise InputError(f"{inst.name} has no normal-form backend")
        return NORMAL_FORM, None
    if inst.finite:
        return QUOTIENT, (NORMAL_FORM if has_nf else None)
    return NORMAL_FORM, None


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------

def cmd_verify(inst, spec, args):
    primary, second = _engines(inst, args.engine)
    window = args.window or spec.windows.verify
    tower = TensorTower(inst, primary)
    reports = [verify_all(inst, tower, window, spec.windows.closure_length)]
    if second:
        other = TensorTower(inst, second)
        rep = check_para_antipode(inst, other, window, spec.windows.closure_length)
        rep.name = f"para-antipode[{second}]"
        reports.append(rep)
    for cm in spec.candidate_maps:
        sp = tower[cm.level]
        rep, _ = verify_well_defined(sp, sp, permutation_map(cm.permutation), cm.name, spec.windows.relation)
        reports.append(CheckReport.combine(f"candidate-map[{cm.name}]", [rep]))
    return reports, {"engine": primary, "window": window}


def cmd_cocyclic(inst, spec, args):
    primary, second = _engines(inst, args.engine)
    window = args.window or spec.windows.verify
    mod = CocyclicModule(inst, primary, spec.windows.relation)
    reports = [verify_cocyclic(inst, args.max_level, window=window, module=mod)]
    if second:
        reports.append(engine_agreement(inst, args.max_level))
    return reports, {"engine": primary, "window": window, "max_level": args.max_level}


def cmd_cohomology(inst, spec, args):
    if not inst.finite:
        raise InputError(
            f"{inst.name} is infinite-dimensional: no dimension tables; run `parahopf haar` for the "
            "homotopy-certified conclusions"
        )
    primary, second = _engines(inst, args.engine)
    cert, coh = compute_cohomology(inst, args.max_level, primary)
    reports = [cert]
    extra = {"engine": primary, "max_level": args.max_level}
    if coh is not None:
        reports.extend(coh.checks)
        extra["cohomology"] = coh.to_dict()
        if second:
            cert2, coh2 = compute_cohomology(inst, args.max_level, second)
            rep = CheckReport("engines-agree-on-dimensions")
            if coh2 is None or (coh2.hh, coh2.hc) != (coh.hh, coh.hc):
                rep.status = FAIL
                rep.witness = {"quotient": str((coh.hh, coh.hc)),
                               "normal_form": str((coh2.hh, coh2.hc)) if coh2 else "uncertified"}
            reports.append(rep)
    return reports, extra


def cmd_haar(inst, spec, args):
    if inst.haar_map is None:
        raise InputError(f"{inst.name} declares no Haar functional")
    primary, _ = _engines(inst, args.engine)
    window = args.window or spec.windows.verify
    mod = CocyclicModule(inst, primary, spec.windows.relation)
    rep, concl = haar_homotopy(inst, n_max=args.max_level, window=window, module=mod)
    extra = {"engine": primary, "window": window, "max_level": args.max_level}
    if concl is not None:
        extra["conclusions"] = concl
    return [rep], extra


def cmd_export(inst, spec, args):
    if not inst.finite:
        raise InputError(f"{inst.name} is infinite-dimensional; only finite instances can be exported")
    primary, _ = _engines(inst, args.engine)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    mod = CocyclicModule(inst, primary, spec.windows.relation)
    written = []
    for n in range(args.max_level + 1):
        sp = mod.tower[n]
        path = out / f"basis_{n}.txt"
        lines = [f"# parahopf basis v1: {inst.name} level {n} dim {sp.dim}"]
        lines += [f"{i}\t{format_key(k)}" for i, k in enumerate(sp.basis)]
        path.write_text("\n".join(lines) + "\n", encoding="utf-8")
        written.append(path.name)
    if args.what == "matrices":
        ops = []
        for n in range(args.max_level + 1):
            if n + 1 <= args.max_level:
                ops += [(f"delta_{n}_{i}", mod.coface(n, i)) for i in range(n + 2)]
            ops += [(f"sigma_{n}_{i}", mod.codegeneracy(n, i)) for i in range(n)]
            if n >= 1:
                ops.append((f"tau_{n}", mod.tau(n)))
        for fname, op in ops:
            trip = op.triplets()
            lines = [
                "# parahopf sparse triplet v1",
                f"# operator {op.name} level {op.source.level} -> {op.target.level}",
                f"# certified {'yes' if op.certified else 'no'}",
                f"# rows {op.target.dim} cols {op.source.dim} nnz {len(trip)}",
            ]
            lines += [f"{i} {j} {c}" for i, j, c in trip]
            (out / f"{fname}.txt").write_text("\n".join(lines) + "\n", encoding="utf-8")
            written.append(f"{fname}.txt")
    rep = CheckReport.combine("export", [mod.wd_reports[k] for k in sorted(mod.wd_reports)])
    return [rep], {"engine": primary, "directory": str(out), "files": written}


COMMANDS = {
    "verify": cmd_verify,
    "cocyclic": cmd_cocyclic,
    "cohomology": cmd_cohomology,
    "haar": cmd_haar,
    "export": cmd_export,
}


# ---------------------------------------------------------------------------
# output
# ---------------------------------------------------------------------------

def one_line(witness) -> str:
    if not witness:
        return ""
    text = "; ".join(f"{k}={v}" for k, v in witness.items())
    text = " ".join(text.split())
    return text if len(text) <= WITNESS_WIDTH else text[: WITNESS_WIDTH - 3] + "..."


def render_table(summary, reports, extra) -> str:
    lines = [
        f"instance {summary['name']} ({summary['kind']}, field {summary['field']}, "
        f"dim H {summary['dim_H'] or 'inf'}, dim R {summary['dim_R'] or 'inf'})"
    ]
    rows = []

    def walk(rep, depth):
        note = one_line(rep.witness) if rep.status == FAIL else (rep.detail or "")
        if rep.window and rep.status != FAIL:
            note = (note + "  " if note else "") + f"[window: {rep.window}]"
        rows.append(("  " * depth + rep.name, rep.status, note))
        if depth < 1 or rep.status == FAIL:
            for s in rep.subchecks:
                walk(s, depth + 1)

    for r in reports:
        walk(r, 0)
    width = max(len(r[0]) for r in rows) + 2
    lines.append(f"{'CHECK':<{width}}{'STATUS':<16}DETAIL")
    for name, status, note in rows:
        lines.append(f"{name:<{width}}{status:<16}{note}".rstrip())
    coh = extra.get("cohomology")
    if coh:
        degrees = sorted(coh["hh"], key=int)
        lines.append("")
        lines.append("degree " + " ".join(f"{d:>4}" for d in degrees))
        lines.append("dim    " + " ".join(f"{coh['level_dims'][d]:>4}" for d in degrees))
        lines.append("HH     " + " ".join(f"{coh['hh'][d]:>4}" for d in degrees))
        lines.append("HC     " + " ".join(f"{coh['hc'][d]:>4}" for d in degrees))
        lines.append(f"HH^0 basis: {', '.join(coh['hh0_basis']) or '0'}")
    concl = extra.get("conclusions")
    if concl:
        lines.append("")
        lines.append(f"certified conclusions ({concl['kind']}):")
        for key in ("HH", "HC"):
            lines.append(f"  {key}: " + ", ".join(f"{key}^{d} {v if isinstance(v, str) else '= ' + str(v)}"
                                                   for d, v in concl[key].items()))
        if "note" in concl:
            lines.append(f"  {concl['note']}")
    if "files" in extra:
        lines.append(f"wrote {len(extra['files'])} files to {extra['directory']}")
    verdict = "FAIL" if any(r.status == FAIL for r in reports) else "PASS"
    lines.append(f"verdict: {verdict}")
    return "\n".join(lines)


def json_report(command, summary, reports, extra) -> dict:
    failed = any(r.status == FAIL for r in reports)
    return {
        "schema_version": REPORT_SCHEMA,
        "command": command,
        "instance": summary,
        "parameters": {k: v for k, v in extra.items() if k in ("engine", "window", "max_level")},
        "verdict": "fail" if failed else "pass",
        "checks": {r.name: r.to_dict() for r in reports},
        **{k: v for k, v in extra.items() if k in ("cohomology", "conclusions", "files")},
    }


def dumps(data) -> str:
    return json.dumps(data, indent=2, sort_keys=True, ensure_ascii=False) + "\n"


# ---------------------------------------------------------------------------
# entry point
# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="parahopf", description="Verify para-Hopf algebroids and compute HH/HC exactly.")
    p.add_argument("--version", action="version", version=f"parahopf {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, levels=True):
        sp.add_argument("spec", help="spec file or bundled spec name")
        sp.add_argument("--json", metavar="PATH", help="also write the machine-readable report here")
        sp.add_argument("--engine", choices=[QUOTIENT, NORMAL_FORM, "both"], default="both")
        sp.add_argument("--field", help="override the scalar field: rational, formal-q, cyclotomic:N")
        sp.add_argument("--window", type=_positive, help="label window for infinite instances (default 3)")
        if levels:
            sp.add_argument("--max-level", type=_nonneg, default=DEFAULT_MAX_LEVEL)
            sp.add_argument("--allow-high-level", action="store_true",
                            help=f"permit --max-level >= {HIGH_LEVEL} (cost grows exponentially)")

    common(sub.add_parser("verify", help="bialgebroid and para-Hopf axioms"), levels=False)
    common(sub.add_parser("cocyclic", help="cosimplicial and cyclic identities"))
    common(sub.add_parser("cohomology", help="HH and HC dimension tables"))
    common(sub.add_parser("haar", help="Haar system and contracting homotopy"))
    ex = sub.add_parser("export", help="export basis labels or operator matrices")
    common(ex)
    ex.add_argument("--what", choices=["matrices", "basis"], default="matrices")
    ex.add_argument("--out", required=True, help="output directory")
    sub.add_parser("list", help="list bundled specs")
    return p


def _positive(text):
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError("must be positive")
    return v


def _nonneg(text):
    v = int(text)
    if v < 0:
        raise argparse.ArgumentTypeError("must be non-negative")
    return v


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return 2 if e.code else 0
    if args.command == "list":
        for name, path in bundled_specs().items():
            desc = json.loads(path.read_text(encoding="utf-8")).get("description", "")
            print(f"{name:<24}{desc}")
        return 0
    try:
        if getattr(args, "max_level", 0) >= HIGH_LEVEL and not args.allow_high_level:
            raise InputError(f"--max-level {args.max_level} needs --allow-high-level (cost warning)")
        spec, inst = load_instance(resolve_spec(args.spec), args.field)
        reports, extra = COMMANDS[args.command](inst, spec, args)
    except (InputError, SpecError, InstanceError, TensorError, CohomologyError) as e:
        print(f"parahopf: error: {e}", file=sys.stderr)
        return 2
    summary = instance_summary(inst)
    print(render_table(summary, reports, extra))
    if args.json:
        try:
            Path(args.json).write_text(dumps(json_report(args.command, summary, reports, extra)), encoding="utf-8")
        except OSError as e:
            print(f"parahopf: error: cannot write report: {e}", file=sys.stderr)
            return 2
    return 1 if any(r.status == FAIL for r in reports) else 0


if __name__ == "__main__":
    sys.exit(main())
