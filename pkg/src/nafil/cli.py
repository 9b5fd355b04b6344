"""Command-line interface: ``nafil <command> ...``.

Exit status is 0 on success, 2 for bad input (unreadable tables, bad
subsets, unknown ids, usage errors) and 1 for anything unexpected.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Optional, Sequence

from .catalog import CATALOG, catalog_get
from .errors import BadElement, InputError, LoopError
from .products import block_product, decompose, direct_product, format_mphi, parse_mphi
from .quotient import (
    are_isomorphic,
    ascending_central_series,
    coset,
    coset_partition,
    is_normal,
    nuclei,
)
from .report import analyze, format_report, load_table
from .search import CONSTRAINTS, STRATEGIES, SearchSpec, enumerate_loops
from .subsystems import subsystems
from .table import format_grid, format_table


def _subset(text: str) -> frozenset[int]:
    try:
        vals = [int(v) for v in text.replace(" ", "").split(",") if v]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None
    if not vals:
        raise argparse.ArgumentTypeError("subset is empty")
    return frozenset(vals)


def _fmt(s) -> str:
    return "{" + ",".join(map(str, sorted(s))) + "}"


class _Out:
    def __init__(self, args, stdout):
        self.json = args.json
        self.quiet = args.quiet
        self.stdout = stdout

    def emit(self, text: str, data) -> None:
        """Print ``data`` as JSON or ``text`` as-is (unless quiet)."""
        if self.json:
            self.stdout.write(json.dumps(data, indent=2) + "\n")
        elif not self.quiet:
            self.stdout.write(text if text.endswith("\n") else text + "\n")

    def data(self, text: str, data) -> None:
        """Like :meth:`emit`, but machine-readable text survives ``--quiet``."""
        if self.json:
            self.stdout.write(json.dumps(data, indent=2) + "\n")
        else:
            self.stdout.write(text if text.endswith("\n") else text + "\n")


def _check_subset(t, H):
    for x in H:
        if not 1 <= x <= t.n:
            raise BadElement(x, t.n)
    return H


# -- commands ---------------------------------------------------------------------------


def cmd_analyze(args, out: _Out, stdin) -> int:
    r = analyze(args.src, stdin)
    out.emit(format_report(r), r.as_dict())
    return 0


def cmd_subsystems(args, out, stdin) -> int:
    t = load_table(args.src, stdin)
    rep = subsystems(t)
    lines = [f"lagrangian class: {rep.lagrangian_class.text}"]
    for s in rep.subsystems:
        flag = " (trivial)" if s.trivial else " (improper)" if s.improper else ""
        div = "divisor" if s.is_divisor else "non-divisor"
        lines.append(f"order {s.order}: {_fmt(s.elements)}  {s.label}, {div}{flag}")
    out.emit("\n".join(lines), rep.as_dict())
    return 0


def cmd_cosets(args, out, stdin) -> int:
    t = load_table(args.src, stdin)
    H = _check_subset(t, args.subset)
    if args.rep is not None:
        c = coset(t, H, args.rep, args.side)
        out.emit(_fmt(c), {"subsystem": sorted(H), "rep": args.rep, "side": args.side, "coset": sorted(c)})
        return 0
    cp = coset_partition(t, H)
    lines = ["cells: " + " ".join(_fmt(c) for c in cp.cells),
             f"partition: {'yes' if cp.partitions else 'no'}",
             f"left cosets equal right cosets: {'yes' if cp.left_equals_right else 'no'}"]
    out.emit("\n".join(lines), cp.as_dict())
    return 0


def cmd_normal(args, out, stdin) -> int:
    t = load_table(args.src, stdin)
    H = _check_subset(t, args.subset)
    ok, fs = is_normal(t, H)
    if ok:
        text = f"normal; cells " + " ".join(_fmt(c) for c in fs.cells)
    elif not fs.partitions:
        text = "not normal; cosets do not partition the loop"
    elif fs.witness is not None:
        text = f"not normal; witness {fs.witness.pretty()}"
    else:
        text = "not normal; induced cell table is not a loop"
    out.emit(text, fs.as_dict())
    return 0


def cmd_factor(args, out, stdin) -> int:
    t = load_table(args.src, stdin)
    H = _check_subset(t, args.subset)
    ok, fs = is_normal(t, H)
    if not ok:
        raise InputError(f"{_fmt(H)} is not normal; no factor system")
    ft = fs.table.with_name(f"{t.name or 'table'}/{_fmt(H)}")
    cells = "".join(f"# B{i} = {_fmt(c)}\n" for i, c in enumerate(fs.cells, 1))
    out.data(cells + format_table(ft), fs.as_dict())
    return 0


def cmd_center(args, out, stdin) -> int:
    t = load_table(args.src, stdin)
    z = nuclei(t).center
    out.emit(_fmt(z), {"center": sorted(z)})
    return 0


def cmd_nuclei(args, out, stdin) -> int:
    t = load_table(args.src, stdin)
    r = nuclei(t)
    text = "\n".join(f"{k}: {_fmt(getattr(r, k))}" for k in ("left", "middle", "right", "nucleus", "center"))
    out.emit(text, r.as_dict())
    return 0


def cmd_series(args, out, stdin) -> int:
    t = load_table(args.src, stdin)
    s = ascending_central_series(t)
    out.emit(" <= ".join(_fmt(z) for z in s), {"series": [sorted(z) for z in s]})
    return 0


def cmd_iso(args, out, stdin) -> int:
    a = load_table(args.a, stdin)
    b = load_table(args.b, stdin)
    f = are_isomorphic(a, b)
    if f is None:
        out.emit("not isomorphic", {"isomorphic": False, "map": None})
    else:
        text = "isomorphic: " + " ".join(f"{x}->{y}" for x, y in sorted(f.items()))
        out.emit(text, {"isomorphic": True, "map": {str(x): y for x, y in sorted(f.items())}})
    return 0


def cmd_product(args, out, stdin) -> int:
    if args.direct:
        e = load_table(args.direct[0], stdin)
        c = load_table(args.direct[1], stdin)
        t = direct_product(e, c)
    else:
        if args.block == "-":
            text = stdin.read()
        else:
            try:
                with open(args.block, encoding="utf-8") as fh:
                    text = fh.read()
            except OSError as exc:
                raise InputError(f"cannot read {args.block}: {exc.strerror or exc}") from None
        t = block_product(parse_mphi(text))
    out.data(format_table(t), {"order": t.n, "name": t.name, "table": [list(r) for r in t.entries]})
    return 0


def cmd_decompose(args, out, stdin) -> int:
    t = load_table(args.src, stdin)
    H = _check_subset(t, args.subset)
    d = decompose(t, H)
    header = (f"# decomposition of {t.name or 'table'} over {_fmt(H)}: k={d.k} m={d.m} "
              f"{d.phi_type.value}{' mono-phi' if d.is_mono_phi else ''}\n"
              + "".join(f"# B{i} = {_fmt(c)}\n" for i, c in enumerate(d.cells, 1))
              + "# relabeling: " + " ".join(f"{x}->{h}" for x, h in sorted(d.relabeling.items())) + "\n")
    out.data(header + format_mphi(d.multiphi), d.as_dict())
    return 0


def cmd_search(args, out, stdin) -> int:
    cons = {c for c in CONSTRAINTS if getattr(args, c)}
    spec = SearchSpec(
        order=args.order,
        constraints=frozenset(cons),
        mode="emit" if args.emit else "count",
        job_count=args.jobs,
        strategy=args.strategy,
        emit_dir=args.emit,
    )
    r = enumerate_loops(spec)
    text = (f"order {r.order} [{', '.join(sorted(r.constraints)) or 'loops'}]: "
            f"{r.count_up_to_isomorphism} up to isomorphism "
            f"({r.leaves} reduced tables, {r.wall_time:.2f}s)")
    if args.emit:
        text += f"\nwrote {r.count_up_to_isomorphism} tables to {args.emit}"
    out.emit(text, r.as_dict())
    return 0


def cmd_catalog(args, out, stdin) -> int:
    if args.action == "list":
        text = "\n".join(f"{e.id:14} n={e.table.n:<3} {e.source}" for e in CATALOG.values())
        data = [{"id": e.id, "order": e.table.n, "source": e.source} for e in CATALOG.values()]
        out.emit(text, data)
        return 0
    if not args.id:
        raise InputError("catalog show needs an id")
    e = catalog_get(args.id)
    text = f"# {e.source}\n" + format_table(e.table, name=e.id)
    if not args.quiet:
        text += "\n" + format_grid(e.table)
    out.data(text, {"id": e.id, "source": e.source, "notes": dict(e.notes),
                    "table": [list(r) for r in e.table.entries]})
    return 0


# -- parser -------------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", default=argparse.SUPPRESS, help="structured JSON output")
    common.add_argument("--quiet", action="store_true", default=argparse.SUPPRESS, help="suppress informational text")

    p = argparse.ArgumentParser(prog="nafil", description="Analyse finite loops given as Cayley tables.")
    p.add_argument("--json", action="store_true", help="structured JSON output")
    p.add_argument("--quiet", action="store_true", help="suppress informational text")
    sub = p.add_subparsers(dest="command", required=True, metavar="command")

    src_help = "table source: a .tbl path, catalog:<id>, or - for stdin"

    def add(name, func, help):
        sp = sub.add_parser(name, parents=[common], help=help)
        sp.set_defaults(func=func)
        return sp

    for name, func, help in (
        ("analyze", cmd_analyze, "full structural report"),
        ("subsystems", cmd_subsystems, "subloop lattice and Lagrangian class"),
        ("center", cmd_center, "center of a loop"),
        ("nuclei", cmd_nuclei, "left, middle and right nuclei"),
        ("series", cmd_series, "ascending central series"),
    ):
        add(name, func, help).add_argument("src", help=src_help)

    for name, func, help in (
        ("cosets", cmd_cosets, "cosets of a subloop"),
        ("normal", cmd_normal, "normality test with witness"),
        ("factor", cmd_factor, "factor table over a normal subloop"),
        ("decompose", cmd_decompose, "write a loop as a block product (.mphi)"),
    ):
        sp = add(name, func, help)
        sp.add_argument("src", help=src_help)
        sp.add_argument("--subset", type=_subset, required=True, help="comma-separated elements, e.g. 1,2,3,4")
        if name == "cosets":
            sp.add_argument("--rep", type=int, help="single coset of this representative")
            sp.add_argument("--side", choices=("left", "right"), default="left")

    sp = add("iso", cmd_iso, "isomorphism test")
    sp.add_argument("a", help=src_help)
    sp.add_argument("b", help=src_help)

    sp = add("product", cmd_product, "direct or block product")
    g = sp.add_mutually_exclusive_group(required=True)
    g.add_argument("--direct", nargs=2, metavar=("E", "C"), help="direct product of two table sources")
    g.add_argument("--block", metavar="MPHI", help="block product of a .mphi file (- for stdin)")

    sp = add("search", cmd_search, "census of small loops up to isomorphism")
    sp.add_argument("--order", type=int, required=True)
    for c in CONSTRAINTS:
        sp.add_argument(f"--{c}", action="store_true", help=f"only {c} loops")
    mode = sp.add_mutually_exclusive_group()
    mode.add_argument("--count", action="store_true", help="count only (default)")
    mode.add_argument("--emit", metavar="DIR", help="write representatives and a manifest to DIR")
    sp.add_argument("--jobs", type=int, default=1)
    sp.add_argument("--strategy", choices=STRATEGIES, default="row-major")

    sp = add("catalog", cmd_catalog, "built-in tables")
    sp.add_argument("action", choices=("list", "show"))
    sp.add_argument("id", nargs="?")
    return p


def main(argv: Optional[Sequence[str]] = None, stdin=None, stdout=None, stderr=None) -> int:
    stdin = stdin or sys.stdin
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    try:
        return args.func(args, _Out(args, stdout), stdin)
    except InputError as exc:
        stderr.write(f"nafil: error: {exc}\n")
        return 2
    except LoopError as exc:
        stderr.write(f"nafil: internal error: {exc}\n")
        return 1
    except BrokenPipeError:
        return 0
    except Exception as exc:  # noqa: BLE001 - last-resort guard for the exit status contract
        stderr.write(f"nafil: internal error: {type(exc).__name__}: {exc}\n")
        return 1


def run_cli(argv: Optional[Sequence[str]] = None) -> int:
    return main(argv)


if __name__ == "__main__":
    sys.exit(main())
