"""Campaign orchestration: run selected checks against a group selection and
emit a machine-readable report with per-check verdicts and witnesses."""

from __future__ import annotations

import json
import time
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from . import __version__
from .groups import (
    FiniteGroup,
    certify_structure,
    closure,
    involution_localization,
    localization_subgroup_words,
    standard_claims,
    standard_generators,
    standard_group,
)
from .linalg import MonomialMatrix
from .variety import (
    QuadricSystem,
    build_quadrics,
    check_freeness,
    check_ideal_invariance,
    draw_specializations,
    genericity_screen,
    singular_orbit,
    verify_odp,
)

CHECK_IDS = ("groups", "invariance", "orbit", "freeness")
GROUP_CHOICES = ("G", "G1", "G2", "all", "custom")
VERDICTS = ("pass", "fail", "inconclusive")


def _render_triple(y) -> str:
    return ",".join(str(Fraction(c)) for c in y)


@dataclass(frozen=True)
class VerificationConfig:
    """Everything a campaign needs; the report echoes it back verbatim so a
    reader can reproduce the run."""

    checks: tuple[str, ...]
    group: str = "all"
    y_triples: tuple[tuple[Fraction, Fraction, Fraction], ...] = ()
    specializations: int = 3
    seed: int = 0
    scope: str = "involutions"
    output_path: str | None = None
    custom_group_path: str | None = None
    custom_quadrics_path: str | None = None
    canonical: bool = False

    def __post_init__(self):
        bad = [c for c in self.checks if c not in CHECK_IDS]
        if bad:
            raise ValueError(f"unknown check ids {bad}; expected among {CHECK_IDS}")
        if self.group not in GROUP_CHOICES:
            raise ValueError(f"group must be one of {GROUP_CHOICES}, not {self.group!r}")
        if self.group == "custom" and not self.custom_group_path:
            raise ValueError("group 'custom' needs a custom group file")
        if self.scope not in ("involutions", "all"):
            raise ValueError(f"scope must be 'involutions' or 'all', not {self.scope!r}")
        if not self.y_triples and self.specializations < 1:
            raise ValueError("need at least one specialization when no explicit triples given")
        for y in self.y_triples:
            if len(y) != 3:
                raise ValueError(f"parameter triple needs 3 entries, got {y!r}")

    def to_dict(self) -> dict:
        return {
            "checks": list(self.checks),
            "group": self.group,
            "y": [_render_triple(y) for y in self.y_triples],
            "specializations": self.specializations,
            "seed": self.seed,
            "scope": self.scope,
            "custom_group": self.custom_group_path,
            "custom_quadrics": self.custom_quadrics_path,
            "canonical": self.canonical,
        }


@dataclass(frozen=True)
class CheckRecord:
    check_id: str
    target: str
    verdict: str
    witnesses: tuple[str, ...] = ()
    timing: float = 0.0

    def __post_init__(self):
        if self.verdict not in VERDICTS:
            raise ValueError(f"verdict must be one of {VERDICTS}, not {self.verdict!r}")

    def to_dict(self, canonical: bool = False) -> dict:
        return {
            "id": self.check_id,
            "target": self.target,
            "verdict": self.verdict,
            "witnesses": list(self.witnesses),
            "timing": 0.0 if canonical else round(self.timing, 6),
        }


@dataclass(frozen=True)
class VerificationReport:
    version: str
    config: VerificationConfig
    checks: tuple[CheckRecord, ...]

    @property
    def overall(self) -> str:
        # fail dominates inconclusive dominates pass; empty list is a pass
        verdicts = {r.verdict for r in self.checks}
        if "fail" in verdicts:
            return "fail"
        if "inconclusive" in verdicts:
            return "inconclusive"
        return "pass"

    @property
    def exit_code(self) -> int:
        return {"pass": 0, "fail": 1, "inconclusive": 2}[self.overall]

    def to_dict(self) -> dict:
        return {
            "version": self.version,
            "config": self.config.to_dict(),
            "checks": [r.to_dict(canonical=self.config.canonical) for r in self.checks],
            "overall": self.overall,
        }


def render_report(report: VerificationReport, format: str = "json") -> str:
    if format == "json":
        return json.dumps(report.to_dict(), indent=2) + "\n"
    if format == "text":
        lines = [f"verification report (tool version {report.version})"]
        lines.append(f"{'check':<12} {'target':<34} {'verdict':<13} {'time':>9}")
        lines.append("-" * 70)
        for r in report.checks:
            lines.append(f"{r.check_id:<12} {r.target:<34} {r.verdict:<13} {r.timing:>8.2f}s")
            for w in r.witnesses:
                lines.append(f"    {w}")
        lines.append("-" * 70)
        lines.append(f"overall: {report.overall}")
        return "\n".join(lines) + "\n"
    raise ValueError(f"format must be 'json' or 'text', not {format!r}")


def write_report(report: VerificationReport, path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(render_report(report, "json"))


# -- custom input files -------------------------------------------------------


@dataclass(frozen=True)
class GroupSelection:
    """One group to run checks against, with its certification claims and
    named generator matrices."""

    label: str
    group: FiniteGroup
    claims: tuple[dict, ...]
    generator_names: tuple[str, ...]
    generator_matrices: tuple[MonomialMatrix, ...]
    localization_words: tuple[str, ...] | None


def load_custom_group(path: str) -> GroupSelection:
    """Read a group description: generator matrices plus optional claims.

    Expected shape: {"name": str?, "generators": [{"name": str?, "perm": [..],
    "phases": [..], "N": int}, ..], "claims": [..]?, "localization": [word, ..]?}.
    Claim records follow the same tagged format the built-in groups use;
    spectrum values arrive with string keys (JSON) and are coerced to int.
    """
    with open(path, "r", encoding="utf-8") as fh:
        data = json.load(fh)
    raw_gens = data.get("generators")
    if not raw_gens:
        raise ValueError(f"{path}: no generators")
    names = []
    matrices = []
    for i, rec in enumerate(raw_gens):
        names.append(str(rec.get("name", f"g{i}")))
        matrices.append(MonomialMatrix.from_dict(rec))
    if len(set(names)) != len(names):
        raise ValueError(f"{path}: duplicate generator names")
    claims = []
    for claim in data.get("claims", ()):
        claim = dict(claim)
        if claim.get("type") in ("spectrum", "spectrum_of_subgroup"):
            claim["value"] = {int(k): int(v) for k, v in claim["value"].items()}
        claims.append(claim)
    words = data.get("localization")
    group = closure(matrices, projective=True, names=tuple(names))
    return GroupSelection(
        label=str(data.get("name", "custom")),
        group=group,
        claims=tuple(claims),
        generator_names=tuple(names),
        generator_matrices=tuple(matrices),
        localization_words=tuple(words) if words else None,
    )


def load_custom_quadrics(path: str) -> QuadricSystem:
    with open(path, "r", encoding="utf-8") as fh:
        data = json.load(fh)
    if isinstance(data, dict):
        data = data.get("quadrics", data)
    return QuadricSystem.from_records(data)


def _standard_selection(name: str) -> GroupSelection:
    gen_names, gen_mats = standard_generators(name)
    return GroupSelection(
        label=name,
        group=standard_group(name),
        claims=tuple(standard_claims(name)),
        generator_names=gen_names,
        generator_matrices=gen_mats,
        localization_words=localization_subgroup_words(name),
    )


def resolve_selections(config: VerificationConfig) -> list[GroupSelection]:
    if config.group == "custom":
        return [load_custom_group(config.custom_group_path)]
    if config.group == "all":
        return [_standard_selection(n) for n in ("G", "G1", "G2")]
    return [_standard_selection(config.group)]


def resolve_system(config: VerificationConfig) -> QuadricSystem:
    if config.custom_quadrics_path:
        return load_custom_quadrics(config.custom_quadrics_path)
    return build_quadrics()


# -- the individual checks ----------------------------------------------------


def _groups_records(selections: Sequence[GroupSelection]) -> list[CheckRecord]:
    # the involution containment target is always the first standard group
    ambient = standard_group("G")
    records = []
    for sel in selections:
        start = time.perf_counter()
        witnesses = []
        cert = certify_structure(sel.group, sel.claims)
        for result in cert.claim_results:
            if not result.ok:
                detail = f": {result.witness}" if result.witness else ""
                witnesses.append(f"claim {result.claim.get('type')} failed{detail}")
        ok = cert.all_ok
        if sel.localization_words is not None:
            loc = involution_localization(sel.group, sel.localization_words, ambient)
            if not loc.ok:
                ok = False
                for text in (loc.outside_subgroup_witness, loc.outside_ambient_witness):
                    if text:
                        witnesses.append(text)
        records.append(
            CheckRecord(
                check_id="groups",
                target=sel.label,
                verdict="pass" if ok else "fail",
                witnesses=tuple(witnesses),
                timing=time.perf_counter() - start,
            )
        )
    return records


def _invariance_records(
    selections: Sequence[GroupSelection], system: QuadricSystem
) -> list[CheckRecord]:
    # one record per distinct generator; shared generators (t) run once
    seen: set[str] = set()
    records = []
    for sel in selections:
        for name, matrix in zip(sel.generator_names, sel.generator_matrices):
            if name in seen:
                continue
            seen.add(name)
            start = time.perf_counter()
            result = check_ideal_invariance(matrix, system)
            witnesses = ()
            if not result.ok:
                witnesses = (f"uncancelled monomial {result.witness_text()}",)
            records.append(
                CheckRecord(
                    check_id="invariance",
                    target=name,
                    verdict="pass" if result.ok else "fail",
                    witnesses=witnesses,
                    timing=time.perf_counter() - start,
                )
            )
    return records


def _orbit_records(
    selections: Sequence[GroupSelection],
    system: QuadricSystem,
    triples: Sequence[tuple[Fraction, Fraction, Fraction]],
    screened_out: dict,
) -> list[CheckRecord]:
    records = []
    for sel in selections:
        for y in triples:
            target = f"{sel.label} @ ({_render_triple(y)})"
            start = time.perf_counter()
            reasons = screened_out.get(y)
            if reasons is not None:
                records.append(
                    CheckRecord(
                        check_id="orbit",
                        target=target,
                        verdict="inconclusive",
                        witnesses=tuple(f"screen: {r}" for r in reasons),
                        timing=time.perf_counter() - start,
                    )
                )
                continue
            witnesses = []
            orbit = singular_orbit(system, sel.group, y)
            if len(orbit) != sel.group.order:
                witnesses.append(
                    f"{len(orbit)} distinct orbit points, expected {sel.group.order}"
                )
            for point in orbit:
                cert = verify_odp(point.coordinates, system, y)
                if not cert.passes:
                    witnesses.append(
                        f"point {point.render()}: on_variety={cert.on_variety} "
                        f"jacobian_rank={cert.jacobian_rank} "
                        f"hessian_rank={cert.hessian_restricted_rank}"
                    )
                    break
            records.append(
                CheckRecord(
                    check_id="orbit",
                    target=target,
                    verdict="pass" if not witnesses else "fail",
                    witnesses=tuple(witnesses),
                    timing=time.perf_counter() - start,
                )
            )
    return records


def _freeness_records(
    selections: Sequence[GroupSelection],
    system: QuadricSystem,
    triples: Sequence[tuple[Fraction, Fraction, Fraction]],
    scope: str,
    seed: int,
) -> list[CheckRecord]:
    records = []
    cache: dict = {}  # shared across groups: they overlap in involutions
    for sel in selections:
        start = time.perf_counter()
        report = check_freeness(
            sel.group,
            system,
            triples,
            scope=scope,
            group_name=sel.label,
            cache=cache,
            witness_seed=seed,
        )
        witnesses = []
        for spec_outcome in report.specializations:
            label = _render_triple(spec_outcome.y)
            if spec_outcome.status == "inconclusive":
                witnesses.append(f"({label}) inconclusive: {spec_outcome.reason}")
                continue
            for element in spec_outcome.elements:
                for comp in element.components:
                    if comp.verdict == "fixed-point":
                        coords = ", ".join(comp.witness)
                        witnesses.append(
                            f"({label}) element {element.element} "
                            f"eigenvalue {comp.eigenvalue}: fixed point ({coords})"
                        )
                    elif comp.verdict == "fixed-locus-no-witness":
                        witnesses.append(
                            f"({label}) element {element.element} "
                            f"eigenvalue {comp.eigenvalue}: nonempty fixed locus, "
                            "no rational witness found"
                        )
        verdict = {
            "free": "pass",
            "fixed-point-found": "fail",
            "inconclusive": "inconclusive",
        }[report.verdict]
        records.append(
            CheckRecord(
                check_id="freeness",
                target=f"{sel.label}[{scope}]",
                verdict=verdict,
                witnesses=tuple(witnesses),
                timing=time.perf_counter() - start,
            )
        )
    return records


# -- the orchestrator ---------------------------------------------------------


def _resolve_triples(
    config: VerificationConfig, system: QuadricSystem, screen_group: FiniteGroup
) -> tuple[list, dict]:
    """Explicit triples are screened but kept (a failing one becomes an
    inconclusive record downstream, never a silent skip); with no explicit
    triples, seeded drawing only returns screened ones."""
    if config.y_triples:
        triples = [tuple(Fraction(c) for c in y) for y in config.y_triples]
        screened_out = {}
        for y in triples:
            result = genericity_screen(y, system, screen_group)
            if not result.ok:
                screened_out[y] = result.reasons
        return triples, screened_out
    drawn = draw_specializations(config.specializations, config.seed, system, screen_group)
    return drawn, {}


def run(config: VerificationConfig) -> VerificationReport:
    """Execute the selected checks in dependency order and assemble the
    report.  Raises on unreadable input files; the CLI maps that to exit 2."""
    selected = [c for c in CHECK_IDS if c in config.checks]
    selections = resolve_selections(config)
    system = resolve_system(config)
    records: list[CheckRecord] = []
    triples: list | None = None
    screened_out: dict = {}
    for check in selected:
        if check == "groups":
            records.extend(_groups_records(selections))
        elif check == "invariance":
            records.extend(_invariance_records(selections, system))
        else:
            if triples is None:
                triples, screened_out = _resolve_triples(config, system, selections[0].group)
            if check == "orbit":
                records.extend(_orbit_records(selections, system, triples, screened_out))
            else:
                # screened-out explicit triples reach check_freeness, whose own
                # screen marks the specialization inconclusive
                records.extend(
                    _freeness_records(selections, system, triples, config.scope, config.seed)
                )
    report = VerificationReport(version=__version__, config=config, checks=tuple(records))
    if config.output_path:
        write_report(report, config.output_path)
    return report
