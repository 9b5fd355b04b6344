"""Whole-table analysis and table sources (paths, ``catalog:<id>``, ``-``)."""

from __future__ import annotations

import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional, TextIO

from .catalog import get_table
from .errors import InputError, NotNormal
from .products import decompose
from .quotient import ascending_central_series, is_normal, nuclei
from .subsystems import SubsystemReport, subsystems
from .table import (
    AxiomProfile,
    CayleyTable,
    ElementIdentityInfo,
    axiom_profile,
    identity_info,
    inverse_map,
    parse_table,
)

SCHEMA_VERSION = 1


def load_table(src: str | CayleyTable, stdin: Optional[TextIO] = None) -> CayleyTable:
    """Resolve a table source: a table, ``catalog:<id>``, ``-`` for stdin, or a file path."""
    if isinstance(src, CayleyTable):
        return src
    if src.startswith("catalog:"):
        return get_table(src[len("catalog:"):])
    if src == "-":
        return parse_table((stdin or sys.stdin).read(), name="stdin")
    path = Path(src)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise InputError(f"cannot read {src}: {exc.strerror or exc}") from None
    return parse_table(text, name=path.stem)


@dataclass(frozen=True)
class DecompositionSummary:
    subsystem: frozenset[int]
    k: int
    m: int
    phi_type: str
    is_mono_phi: bool

    def as_dict(self) -> dict:
        return {
            "subsystem": sorted(self.subsystem),
            "k": self.k,
            "m": self.m,
            "phi_type": self.phi_type,
            "is_mono_phi": self.is_mono_phi,
        }


@dataclass(frozen=True)
class AnalysisReport:
    name: Optional[str]
    order: int
    profile: AxiomProfile
    identity: ElementIdentityInfo
    inverses: Optional[dict[int, int]]
    subsystems: Optional[SubsystemReport] = None
    # sorted element tuple -> normal?
    normality: dict[tuple[int, ...], bool] = field(default_factory=dict)
    nuclei: Optional[object] = None
    simple: Optional[bool] = None
    plain: Optional[bool] = None
    central_series: Optional[list[frozenset[int]]] = None
    decompositions: tuple[DecompositionSummary, ...] = ()

    @property
    def center(self) -> Optional[frozenset[int]]:
        return self.nuclei.center if self.nuclei else None

    @property
    def lagrangian_class(self):
        return self.subsystems.lagrangian_class if self.subsystems else None

    @property
    def normal_subsystems(self) -> list[frozenset[int]]:
        return [frozenset(k) for k, v in self.normality.items() if v]

    def as_dict(self) -> dict:
        sub = self.subsystems
        return {
            "schema": SCHEMA_VERSION,
            "name": self.name,
            "order": self.order,
            "profile": self.profile.as_dict(),
            "identity": {
                "left": sorted(self.identity.left_identities),
                "right": sorted(self.identity.right_identities),
                "two_sided": self.identity.two_sided_identity,
            },
            "inverses": {str(k): v for k, v in self.inverses.items()} if self.inverses else None,
            "subsystems": sub.as_dict() if sub else None,
            "lagrangian_class": sub.lagrangian_class.value if sub else None,
            "normality": [{"subsystem": list(k), "normal": v} for k, v in self.normality.items()],
            "nuclei": self.nuclei.as_dict() if self.nuclei else None,
            "center": sorted(self.center) if self.center is not None else None,
            "simple": self.simple,
            "plain": self.plain,
            "central_series": [sorted(z) for z in self.central_series] if self.central_series else None,
            "decompositions": [d.as_dict() for d in self.decompositions],
        }


def analyze(src: str | CayleyTable, stdin: Optional[TextIO] = None) -> AnalysisReport:
    t = load_table(src, stdin)
    prof = axiom_profile(t)
    info = identity_info(t)
    if not prof.is_loop:
        return AnalysisReport(t.name, t.n, prof, info, None)
    sub = subsystems(t)
    normality = {}
    decs = []
    for s in sub.nontrivial:
        ok, _ = is_normal(t, s.elements)
        normality[tuple(sorted(s.elements))] = ok
        if ok:
            d = decompose(t, s.elements)
            decs.append(DecompositionSummary(s.elements, d.k, d.m, d.phi_type.value, d.is_mono_phi))
    nuc = nuclei(t)
    simple = plain = series = None
    inverses = None
    if prof.is_invertible_loop:
        inverses = inverse_map(t)
        simple = not any(normality.values())
        plain = not sub.nontrivial
        try:
            series = ascending_central_series(t)
        except NotNormal:
            series = None
    return AnalysisReport(
        name=t.name,
        order=t.n,
        profile=prof,
        identity=info,
        inverses=inverses,
        subsystems=sub,
        normality=normality,
        nuclei=nuc,
        simple=simple,
        plain=plain,
        central_series=series,
        decompositions=tuple(decs),
    )


def _set(s) -> str:
    return "{" + ",".join(map(str, sorted(s))) + "}"


def format_report(r: AnalysisReport) -> str:
    lines = [f"table: {r.name or '(unnamed)'}  order {r.order}"]
    p = r.profile
    lines.append(f"type: {p.label}")
    lines.append(f"abelian: {'yes' if p.abelian else 'no'}")
    if p.witness_a6:
        a, b, c = p.witness_a6
        lines.append(f"non-associative: ({a}*{b})*{c} != {a}*({b}*{c})")
    ident = r.identity.two_sided_identity
    lines.append(f"identity: {ident if ident is not None else 'none'}")
    if r.subsystems is None:
        return "\n".join(lines) + "\n"
    sub = r.subsystems
    lines.insert(1, f"summary: {p.name}, {sub.lagrangian_class.text}")
    lines.append(f"lagrangian class: {sub.lagrangian_class.text}")
    nt = sub.nontrivial
    lines.append(f"non-trivial subsystems: {len(nt)}")
    for s in nt:
        tags = [s.label, "divisor" if s.is_divisor else "non-divisor"]
        normal = r.normality.get(tuple(sorted(s.elements)))
        if normal is not None:
            tags.append("normal" if normal else "not normal")
        lines.append(f"  order {s.order}: {_set(s.elements)}  ({', '.join(tags)})")
    n = r.nuclei
    lines.append(f"nucleus: {_set(n.nucleus)}  center: {_set(n.center)}")
    if r.simple is not None:
        lines.append(f"simple: {'yes' if r.simple else 'no'}  plain: {'yes' if r.plain else 'no'}")
    if r.central_series:
        lines.append("ascending central series: " + " <= ".join(_set(z) for z in r.central_series))
    for d in r.decompositions:
        mono = ", mono-phi" if d.is_mono_phi else ""
        lines.append(f"decomposition over {_set(d.subsystem)}: k={d.k}, m={d.m}, {d.phi_type}{mono}")
    return "\n".join(lines) + "\n"
