"""Reading performance requirements models from CSV, and aspect suggestions.

CSV layout, one row per (object, parameter) pair::

    model_id,object,condition,aspect,requirement_id,description,value,unit,comparator,quantifiable

``object`` may list several objects separated by commas (quote the field).
All rows sharing a ``model_id`` form one model; its object list is the
ordered union of the row objects.
"""

from __future__ import annotations

import csv
import io
import re
from dataclasses import dataclass
from decimal import Decimal
from fractions import Fraction
from importlib import resources
from pathlib import Path
from typing import Iterable, Optional

from .model import (
    COMPARATORS,
    PerformanceAspect,
    PerformanceModel,
    PerformanceParameter,
    ParameterRole,
    normalize_name,
    split_objects,
)
from .taxonomy import classify_role

COLUMNS = (
    "model_id",
    "object",
    "condition",
    "aspect",
    "requirement_id",
    "description",
    "value",
    "unit",
    "comparator",
    "quantifiable",
)
REQUIRED_COLUMNS = ("model_id", "object", "aspect", "requirement_id", "description")

INFEASIBLE = "infeasible"
MALFORMED = "malformed"

_COMPARATOR_ALIASES = {"≤": "<=", "≥": ">=", "=": "==", "=<": "<=", "=>": ">="}
_TRUE = {"true", "yes", "y", "1"}
_FALSE = {"false", "no", "n", "0"}


class ModelFileError(ValueError):
    """The whole file is unusable (empty, or header lacks required columns)."""


@dataclass(frozen=True)
class ParseError:
    line: int
    message: str
    kind: str = MALFORMED
    requirement_id: Optional[str] = None
    aspect_text: Optional[str] = None

    def __str__(self):
        return f"line {self.line}: {self.message}"


def default_comparator(aspect: PerformanceAspect, description: str) -> tuple[str, str]:
    """Comparator to use when a quantified row leaves it blank, with the rule that fired."""
    if aspect is PerformanceAspect.CAPACITY:
        if "at least" in description.lower():
            return ">=", "default:capacity-at-least"
        return "<=", "default:capacity"
    if aspect is PerformanceAspect.SPEED_THROUGHPUT:
        return ">=", "default:speed_throughput"
    return "<=", f"default:{aspect.value}"


def _parse_bool(text: str) -> bool:
    t = text.strip().lower()
    if not t or t in _TRUE:
        return True
    if t in _FALSE:
        return False
    raise ValueError(f"quantifiable must be true or false, got {text!r}")


def _parse_value(text: str) -> Optional[Fraction]:
    t = text.strip()
    if not t:
        return None
    try:
        return Fraction(t)
    except (ValueError, ZeroDivisionError):
        raise ValueError(f"value {text!r} is not a number") from None


def _parse_comparator(text: str) -> Optional[str]:
    t = text.strip()
    if not t:
        return None
    t = _COMPARATOR_ALIASES.get(t, t)
    if t not in COMPARATORS:
        raise ValueError(f"comparator must be one of {', '.join(COMPARATORS)}, got {text!r}")
    return t


class _ModelBuilder:
    def __init__(self, model_id: str, condition: str):
        self.model_id = model_id
        self.condition = condition
        self.objects: list[str] = []
        self.params: list[PerformanceParameter] = []
        self.counts: dict[str, int] = {}

    def next_id(self, requirement_id: str) -> str:
        return f"{requirement_id}.{self.counts.get(requirement_id, 0) + 1}"

    def add(self, param: PerformanceParameter, targets):
        self.counts[param.requirement_id] = self.counts.get(param.requirement_id, 0) + 1
        self.params.append(param)
        self.add_objects(targets)

    def add_objects(self, names):
        seen = {normalize_name(o) for o in self.objects}
        for name in names:
            if normalize_name(name) not in seen:
                self.objects.append(name)
                seen.add(normalize_name(name))

    def build(self) -> PerformanceModel:
        return PerformanceModel(
            model_id=self.model_id,
            object=", ".join(self.objects),
            condition=self.condition,
            independent=[p for p in self.params if classify_role(p.aspect) is ParameterRole.INDEPENDENT],
            dependent=[p for p in self.params if classify_role(p.aspect) is ParameterRole.DEPENDENT],
        )


def parse_models(csv_text: str) -> tuple[list[PerformanceModel], list[ParseError]]:
    """Parse model CSV text into models, collecting row-level errors.

    Bad rows are reported and skipped. Raises :class:`ModelFileError` for
    an empty file or a header missing required columns.
    """
    text = csv_text.lstrip("\ufeff")
    if not text.strip():
        raise ModelFileError("model file is empty")
    reader = csv.DictReader(io.StringIO(text, newline=""))
    header = [h.strip() for h in reader.fieldnames or []]
    missing = [c for c in REQUIRED_COLUMNS if c not in header]
    if missing:
        raise ModelFileError(f"header is missing required columns: {', '.join(missing)}")
    reader.fieldnames = header

    builders: dict[str, _ModelBuilder] = {}
    errors: list[ParseError] = []
    line = reader.line_num
    for raw in reader:
        start, line = line + 1, reader.line_num
        row = {k: (v or "").strip() for k, v in raw.items() if k is not None}
        if not any(row.values()):
            continue
        rid = row.get("requirement_id") or None
        try:
            aspect = PerformanceAspect.parse(row.get("aspect", ""))
        except ValueError as exc:
            errors.append(ParseError(start, f"requirement {rid}: {exc}", INFEASIBLE, rid, row.get("aspect")))
            continue
        try:
            model_id = row.get("model_id", "")
            targets = split_objects(row.get("object", ""))
            if not model_id:
                raise ValueError("model_id is empty")
            if not targets:
                raise ValueError("object is empty")
            if not rid:
                raise ValueError("requirement_id is empty")
            condition = row.get("condition", "")
            builder = builders.get(model_id)
            if builder is not None and normalize_name(builder.condition) != normalize_name(condition):
                raise ValueError(
                    f"condition {condition!r} differs from {builder.condition!r} used earlier by model {model_id}"
                )
            description = row.get("description", "")
            value = _parse_value(row.get("value", ""))
            comparator = _parse_comparator(row.get("comparator", ""))
            source = "explicit"
            if value is not None and comparator is None:
                comparator, source = default_comparator(aspect, description)
            if builder is None:
                builder = _ModelBuilder(model_id, condition)
            param = PerformanceParameter(
                id=builder.next_id(rid),
                requirement_id=rid,
                aspect=aspect,
                description=description,
                value=value,
                unit=row.get("unit") or None,
                comparator=comparator,
                quantifiable=_parse_bool(row.get("quantifiable", "")),
                target=", ".join(targets),
                comparator_source=source,
            )
        except ValueError as exc:
            errors.append(ParseError(start, f"requirement {rid}: {exc}", MALFORMED, rid))
            continue
        builders[model_id] = builder
        builder.add(param, targets)

    return [b.build() for b in builders.values()], errors


def load_models(path) -> tuple[list[PerformanceModel], list[ParseError]]:
    return parse_models(Path(path).read_text(encoding="utf-8"))


def format_value(value: Optional[Fraction]) -> str:
    if value is None:
        return ""
    if value.denominator == 1:
        return str(value.numerator)
    d = value.denominator
    for prime in (2, 5):
        while d % prime == 0:
            d //= prime
    if d != 1:
        return str(value)
    return format(Decimal(value.numerator) / Decimal(value.denominator), "f")


def _row_order(model: PerformanceModel) -> list[PerformanceParameter]:
    # Interleave the role lists so objects first appear in model.objects order.
    order = [normalize_name(o) for o in model.objects]
    seen: set[str] = set()
    heads = [list(model.independent), list(model.dependent)]
    out: list[PerformanceParameter] = []

    def fits(p):
        new = [t for t in dict.fromkeys(normalize_name(t) for t in p.targets) if t not in seen]
        return new == [o for o in order if o not in seen][: len(new)]

    while heads[0] or heads[1]:
        pick = next((h for h in heads if h and fits(h[0])), None)
        if pick is None:
            pick = heads[0] if heads[0] else heads[1]
        p = pick.pop(0)
        seen.update(normalize_name(t) for t in p.targets)
        out.append(p)
    return out


def dump_models(models: Iterable[PerformanceModel]) -> str:
    """Serialize models back to the CSV layout accepted by :func:`parse_models`."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(COLUMNS)
    for model in models:
        for p in _row_order(model):
            writer.writerow(
                [
                    model.model_id,
                    p.target or model.object,
                    model.condition,
                    p.aspect.value,
                    p.requirement_id,
                    p.description,
                    format_value(p.value),
                    p.unit or "",
                    p.comparator or "",
                    "true" if p.quantifiable else "false",
                ]
            )
    return buf.getvalue()


@dataclass(frozen=True)
class AspectSuggestion:
    aspect: PerformanceAspect
    score: int
    matched_terms: tuple[str, ...]


def _term_pattern(term: str) -> re.Pattern:
    body = r"\s+".join(re.escape(word) for word in term.split())
    return re.compile(rf"(?<!\w){body}(?!\w)", re.IGNORECASE)


class Lexicon:
    """Per-aspect keyword lists used by :func:`suggest_aspects`."""

    def __init__(self, entries: Iterable[tuple[PerformanceAspect, str]]):
        self.entries = tuple(entries)
        self._patterns = [(aspect, term, _term_pattern(term)) for aspect, term in self.entries]

    @classmethod
    def parse(cls, text: str) -> "Lexicon":
        entries = []
        for n, line in enumerate(text.splitlines(), 1):
            if not line.strip() or line.lstrip().startswith("#"):
                continue
            aspect_id, sep, term = line.partition("\t")
            if not sep or not term.strip():
                raise ValueError(f"lexicon line {n}: expected 'aspect_id<TAB>term'")
            entries.append((PerformanceAspect(aspect_id.strip()), term.strip()))
        return cls(entries)

    @classmethod
    def load(cls, path=None) -> "Lexicon":
        if path is None:
            text = resources.files("perfreq").joinpath("data/lexicon.tsv").read_text(encoding="utf-8")
        else:
            text = Path(path).read_text(encoding="utf-8")
        return cls.parse(text)

    def matches(self, sentence: str) -> dict[PerformanceAspect, list[str]]:
        found: dict[PerformanceAspect, list[str]] = {}
        for aspect, term, pattern in self._patterns:
            if pattern.search(sentence):
                terms = found.setdefault(aspect, [])
                if term not in terms:
                    terms.append(term)
        return found


_default_lexicon: Optional[Lexicon] = None


def default_lexicon() -> Lexicon:
    global _default_lexicon
    if _default_lexicon is None:
        _default_lexicon = Lexicon.load()
    return _default_lexicon


def suggest_aspects(sentence: str, lexicon: Optional[Lexicon] = None) -> list[AspectSuggestion]:
    """Rank aspects by how many lexicon terms the sentence contains.

    This only suggests a coding; the analyst decides.
    """
    lexicon = lexicon or default_lexicon()
    found = lexicon.matches(sentence)
    suggestions = [AspectSuggestion(a, len(terms), tuple(terms)) for a, terms in found.items()]
    suggestions.sort(key=lambda s: (-s.score, s.aspect.value))
    return suggestions
