"""Corpus-level defect summaries and their text, CSV, JSON and figure renderings."""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field, fields
from pathlib import Path
from typing import Iterable

from .generator import GenerationResult
from .model import DefectCategory, PerformanceAspect, Severity
from .verifier import VerificationReport

# Row labels reproduce the published evaluation table verbatim.
UNDER_SPECIFIED_LABELS = {
    PerformanceAspect.RESOURCE_CONSTRAINT: "Under-specified Resource constraints",
    PerformanceAspect.CAPACITY: "Under-specified Capacity",
    PerformanceAspect.TIME_BEHAVIOR: "Under-specified Time-behavior",
    PerformanceAspect.SPEED_THROUGHPUT: "Under-specified throughput",
    PerformanceAspect.EFFICIENCY: "Under-specified Efficiency",
}
ASPECT_ROW_ORDER = tuple(UNDER_SPECIFIED_LABELS)


def _zero_by_aspect() -> dict[PerformanceAspect, int]:
    return {a: 0 for a in ASPECT_ROW_ORDER}


@dataclass(frozen=True)
class CorpusSummary:
    documents: int = 0
    requirements: int = 0
    not_quantifiable: int = 0
    not_quantified: int = 0
    under_specified_total: int = 0
    under_specified_by_aspect: dict = field(default_factory=_zero_by_aspect)
    environments_generated: int = 0

    def __add__(self, other: "CorpusSummary") -> "CorpusSummary":
        values = {}
        for f in fields(self):
            if f.name == "under_specified_by_aspect":
                values[f.name] = {
                    a: self.under_specified_by_aspect.get(a, 0) + other.under_specified_by_aspect.get(a, 0)
                    for a in ASPECT_ROW_ORDER
                }
            else:
                values[f.name] = getattr(self, f.name) + getattr(other, f.name)
        return CorpusSummary(**values)

    def rows(self, extras: bool = True) -> list[tuple[str, int]]:
        rows = [
            ("Not-quantified Requirements", self.not_quantified),
            ("Under-specified Parameters", self.under_specified_total),
        ]
        rows += [(UNDER_SPECIFIED_LABELS[a], self.under_specified_by_aspect[a]) for a in ASPECT_ROW_ORDER]
        if not extras:
            return rows
        rows += [
            ("Not-quantifiable Requirements", self.not_quantifiable),
            ("Documents", self.documents),
            ("Requirements", self.requirements),
            ("Test environments", self.environments_generated),
        ]
        return rows

    def to_dict(self) -> dict:
        return {
            "documents": self.documents,
            "requirements": self.requirements,
            "not_quantifiable": self.not_quantifiable,
            "not_quantified": self.not_quantified,
            "under_specified_total": self.under_specified_total,
            "under_specified_by_aspect": {a.value: self.under_specified_by_aspect[a] for a in ASPECT_ROW_ORDER},
            "environments_generated": self.environments_generated,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "CorpusSummary":
        by_aspect = {PerformanceAspect(k): v for k, v in data["under_specified_by_aspect"].items()}
        return cls(**{**data, "under_specified_by_aspect": {a: by_aspect.get(a, 0) for a in ASPECT_ROW_ORDER}})


def summarize(reports: Iterable[VerificationReport], generations: Iterable[GenerationResult]) -> CorpusSummary:
    reports = list(reports)
    by_aspect = _zero_by_aspect()
    not_quantifiable = not_quantified = requirements = 0
    for report in reports:
        requirements += len({p.requirement_id for m in report.merged_models for p in m.parameters})
        for d in report.defects:
            if d.category is DefectCategory.NOT_QUANTIFIABLE:
                not_quantifiable += 1
            elif d.category is DefectCategory.NOT_QUANTIFIED:
                not_quantified += 1
            elif d.category is DefectCategory.UNDER_SPECIFIED_PARAMETER:
                by_aspect[d.aspect] += 1
    return CorpusSummary(
        documents=len(reports),
        requirements=requirements,
        not_quantifiable=not_quantifiable,
        not_quantified=not_quantified,
        under_specified_total=sum(by_aspect.values()),
        under_specified_by_aspect=by_aspect,
        environments_generated=sum(len(g.environments) for g in generations),
    )


def render_table(summary: CorpusSummary, extras: bool = True) -> str:
    rows = [("Defect", "Quantity")] + [(label, str(n)) for label, n in summary.rows(extras)]
    width = max(len(label) for label, _ in rows)
    qwidth = max(len(q) for _, q in rows)
    rule = "-" * (width + 2 + qwidth)
    lines = [f"{rows[0][0]:<{width}}  {rows[0][1]:>{qwidth}}", rule]
    lines += [f"{label:<{width}}  {q:>{qwidth}}" for label, q in rows[1:]]
    return "\n".join(lines) + "\n"


def render_csv(summary: CorpusSummary) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["Defect", "Quantity"])
    writer.writerows(summary.rows())
    return buf.getvalue()


def render_json(summary: CorpusSummary) -> str:
    return json.dumps(summary.to_dict(), indent=2) + "\n"


def render_report(report: VerificationReport) -> str:
    """Human-readable verification report: defect lines then the count table."""
    lines = [f"models checked: {report.models_checked}"]
    for e in report.parse_errors:
        lines.append(f"PARSE    {e}")
    for d in report.defects:
        where = d.model_id or "-"
        aspect = d.aspect.value if d.aspect else "-"
        tag = "BLOCK" if d.severity is Severity.BLOCKING else "WARN "
        lines.append(f"{tag}  {d.category.value:<24} {aspect:<20} {where:<10} {d.message}")
    lines.append("")
    return "\n".join(lines) + render_table(summarize([report], []), extras=False)


def render_figure(summary: CorpusSummary, path) -> Path:
    """Bar charts of quantification and under-specification counts, saved to ``path``."""
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt
    from matplotlib.ticker import MaxNLocator

    path = Path(path)
    fig, (left, right) = plt.subplots(1, 2, figsize=(10, 4), gridspec_kw={"width_ratios": [2, 5]})
    quant = left.bar(
        ["Not-quantifiable", "Not-quantified"],
        [summary.not_quantifiable, summary.not_quantified],
        color=["#8c564b", "#d62728"],
    )
    left.bar_label(quant)
    left.set_ylabel("Requirements")
    left.set_title("Quantification")
    labels = [UNDER_SPECIFIED_LABELS[a].replace("Under-specified ", "") for a in ASPECT_ROW_ORDER]
    counts = [summary.under_specified_by_aspect[a] for a in ASPECT_ROW_ORDER]
    bars = right.bar(labels, counts, color="#1f77b4")
    right.bar_label(bars)
    right.set_ylabel("Models")
    right.set_title(f"Under-specified parameters (total {summary.under_specified_total})")
    right.tick_params(axis="x", labelrotation=20)
    for ax in (left, right):
        ax.yaxis.set_major_locator(MaxNLocator(integer=True))
        ax.spines["top"].set_visible(False)
        ax.spines["right"].set_visible(False)
    fig.tight_layout()
    fig.savefig(path, dpi=120, metadata={"Software": None})
    plt.close(fig)
    return path
