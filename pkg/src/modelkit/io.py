"""File formats and reports.

Categories are JSON with one morphism or composition triple per line so that
errors can point at a line.  Graphs and semi-simplicial sets use the plain
text formats of their modules.
"""
from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field
from pathlib import Path

from .fincat import CategoryError, FinCategory, validate_category
from .graphs.graph import Graph, GraphError
from .lifting import MorphismClass
from .modelstruct import ModelStructureSpec
from .semisimp import SemiSimplicialSet, SssError


class LoadError(ValueError):
    def __init__(self, message: str, line: int | None = None, path: str | None = None):
        where = ""
        if path:
            where += f"{path}:"
        if line is not None:
            where += f"{line}:"
        super().__init__(f"{where} {message}" if where else message)
        self.line = line
        self.path = path


def text_hash(text: str) -> str:
    return hashlib.sha256(text.encode()).hexdigest()[:16]


# ---------------------------------------------------------------------------
# categories


def dump_category(C: FinCategory) -> str:
    d = C.to_dict()
    lines = ["{", f'  "name": {json.dumps(d["name"], ensure_ascii=False)},',
             f'  "objects": {json.dumps(d["objects"], ensure_ascii=False)},', '  "morphisms": [']
    lines += [f"    {json.dumps(m, ensure_ascii=False)}," for m in d["morphisms"]]
    lines[-1] = lines[-1].rstrip(",")
    lines += ["  ],", f'  "identities": {json.dumps(d["identities"])},', '  "compose": [']
    lines += [f"    {json.dumps(t)}," for t in d["compose"]]
    if d["compose"]:
        lines[-1] = lines[-1].rstrip(",")
    lines += ["  ]", "}"]
    return "\n".join(lines) + "\n"


def _item_lines(text: str, key: str) -> list[int]:
    """Line numbers where each top-level item of the array under ``key`` starts."""
    start = text.find(f'"{key}"')
    if start < 0:
        return []
    i = text.index("[", start)
    line = text.count("\n", 0, i) + 1
    depth, out, in_str, esc, expect = 0, [], False, False, False
    for ch in text[i:]:
        if ch == "\n":
            line += 1
        if in_str:
            if esc:
                esc = False
            elif ch == "\\":
                esc = True
            elif ch == '"':
                in_str = False
            continue
        if ch in " \t\r\n":
            continue
        if depth == 1 and expect and ch != "]":
            out.append(line)
            expect = False
        if ch == '"':
            in_str = True
        elif ch in "[{":
            depth += 1
            if depth == 1:
                expect = True
        elif ch in "]}":
            depth -= 1
            if depth == 0:
                break
        elif ch == "," and depth == 1:
            expect = True
    return out


def load_category(text: str, path: str | None = None) -> FinCategory:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise LoadError(e.msg, e.lineno, path) from None
    if not isinstance(data, dict):
        raise LoadError("expected a JSON object", 1, path)
    for key in ("objects", "morphisms", "identities", "compose"):
        if key not in data:
            raise LoadError(f"missing key {key!r}", 1, path)
    objects = data["objects"]
    names = []
    lines = _item_lines(text, "morphisms")
    for k, entry in enumerate(data["morphisms"]):
        line = lines[k] if k < len(lines) else None
        if not (isinstance(entry, list) and len(entry) == 3):
            raise LoadError("a morphism is [name, source, target]", line, path)
        for end in entry[1:]:
            if not _resolves(objects, end):
                raise LoadError(f"unknown object {end!r}", line, path)
        names.append(str(entry[0]))
    lines = _item_lines(text, "compose")
    for k, entry in enumerate(data["compose"]):
        line = lines[k] if k < len(lines) else None
        if not (isinstance(entry, list) and len(entry) == 3):
            raise LoadError("a composition entry is [g, f, g∘f]", line, path)
        for ref in entry:
            if not _resolves(names, ref):
                raise LoadError(f"unknown morphism {ref!r}", line, path)
    try:
        C = FinCategory.from_dict(data)
    except (CategoryError, KeyError, IndexError, TypeError, ValueError) as e:
        raise LoadError(str(e), None, path) from None
    report = validate_category(C)
    if not report.ok:
        raise LoadError(f"not a category: {report.violations[0]}", None, path)
    return C


def _resolves(names, ref) -> bool:
    if isinstance(ref, bool):
        return False
    if isinstance(ref, int):
        return 0 <= ref < len(names)
    return str(ref) in [str(n) for n in names]


# ---------------------------------------------------------------------------
# graphs, semi-simplicial sets, structures


def load_graph(text: str, path: str | None = None) -> Graph:
    try:
        return Graph.from_text(text, name=Path(path).stem if path else "")
    except GraphError as e:
        raise LoadError(str(e), None, path) from None


def load_sss(text: str, path: str | None = None) -> SemiSimplicialSet:
    try:
        return SemiSimplicialSet.from_text(text)
    except SssError as e:
        raise LoadError(str(e), None, path) from None


def dump_structure(M: ModelStructureSpec) -> str:
    return json.dumps(M.to_dict(), indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def load_structure(text: str, C: FinCategory, path: str | None = None) -> ModelStructureSpec:
    try:
        data = json.loads(text)
        return ModelStructureSpec.from_dict(data, C)
    except json.JSONDecodeError as e:
        raise LoadError(e.msg, e.lineno, path) from None
    except (ValueError, KeyError) as e:
        raise LoadError(str(e), None, path) from None


def dump_class(S: MorphismClass) -> str:
    return json.dumps(S.to_dict(), sort_keys=True) + "\n"


# ---------------------------------------------------------------------------
# reports


@dataclass
class Report:
    """Outcome of one command: named checks, free-form detail lines, and the
    hashes of every input it read."""

    command: str
    inputs: dict[str, str] = field(default_factory=dict)
    checks: list[tuple[str, bool]] = field(default_factory=list)
    details: list[str] = field(default_factory=list)
    witness: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(ok for _, ok in self.checks)

    def check(self, name: str, ok: bool) -> bool:
        self.checks.append((name, bool(ok)))
        return ok

    def to_text(self) -> str:
        out = [f"command: {self.command}"]
        out += [f"input {k}: {v}" for k, v in sorted(self.inputs.items())]
        out += self.details
        out += [f"{'PASS' if ok else 'FAIL'} {name}" for name, ok in self.checks]
        if self.witness:
            out.append("witness:")
            out += [f"  {w}" for w in self.witness]
        out.append(f"verdict: {'PASS' if self.passed else 'FAIL'}")
        return "\n".join(out) + "\n"

    def to_structured(self) -> str:
        return json.dumps({
            "command": self.command,
            "inputs": dict(sorted(self.inputs.items())),
            "checks": [[n, ok] for n, ok in self.checks],
            "details": self.details,
            "witness": self.witness,
            "verdict": "PASS" if self.passed else "FAIL",
        }, indent=2, ensure_ascii=False) + "\n"

    @classmethod
    def from_structured(cls, text: str) -> Report:
        d = json.loads(text)
        return cls(d["command"], dict(d["inputs"]), [(n, bool(ok)) for n, ok in d["checks"]],
                   list(d["details"]), list(d["witness"]))

    def render(self, fmt: str) -> str:
        if fmt == "text":
            return self.to_text()
        if fmt == "structured":
            return self.to_structured()
        raise ValueError(f"unknown format {fmt!r}")
