"""Quivers, relations and the algebra text format."""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from .linalg import Field, FieldError


class AlgebraFileError(ValueError):
    """Input error in an algebra file; carries the 1-based line number."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        self.message = message
        super().__init__(f"line {line}: {message}" if line is not None else message)


@dataclass(frozen=True)
class Arrow:
    name: str
    source: int
    target: int


class Quiver:
    """Finite quiver with ordered vertices and arrows.

    Vertices are referred to internally by their position in ``labels``.
    """

    def __init__(self, labels, arrows):
        self.labels = tuple(str(v) for v in labels)
        if len(set(self.labels)) != len(self.labels):
            raise AlgebraFileError("duplicate vertex label")
        self.index = {v: i for i, v in enumerate(self.labels)}
        arr = []
        seen = set()
        for a in arrows:
            if not isinstance(a, Arrow):
                name, s, t = a
                a = Arrow(str(name), self._vertex(s), self._vertex(t))
            if a.name in seen:
                raise AlgebraFileError(f"duplicate arrow name {a.name!r}")
            seen.add(a.name)
            arr.append(a)
        self.arrows = tuple(arr)
        self.arrow_index = {a.name: i for i, a in enumerate(self.arrows)}

    def _vertex(self, v) -> int:
        if isinstance(v, int) and not isinstance(v, bool) and str(v) not in self.index:
            if 0 <= v < len(self.labels):
                return v
        key = str(v)
        if key not in self.index:
            raise AlgebraFileError(f"unknown vertex {key!r}")
        return self.index[key]

    @property
    def n(self) -> int:
        return len(self.labels)

    def out_arrows(self, x: int):
        return [i for i, a in enumerate(self.arrows) if a.source == x]

    def in_arrows(self, x: int):
        return [i for i, a in enumerate(self.arrows) if a.target == x]

    def word_source(self, word) -> int:
        return self.arrows[word[0]].source

    def word_target(self, word) -> int:
        return self.arrows[word[-1]].target

    def is_path(self, word) -> bool:
        return all(self.arrows[a].target == self.arrows[b].source for a, b in zip(word, word[1:]))

    def word_label(self, word) -> str:
        return ".".join(self.arrows[a].name for a in word)

    def components(self):
        """Connected components of the underlying graph, as sorted vertex lists."""
        parent = list(range(self.n))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for a in self.arrows:
            ra, rb = find(a.source), find(a.target)
            if ra != rb:
                parent[max(ra, rb)] = min(ra, rb)
        groups = {}
        for v in range(self.n):
            groups.setdefault(find(v), []).append(v)
        return [groups[k] for k in sorted(groups)]

    def opposite(self) -> "Quiver":
        return Quiver(self.labels, [Arrow(a.name, a.target, a.source) for a in self.arrows])

    def __repr__(self):
        return f"Quiver({len(self.labels)} vertices, {len(self.arrows)} arrows)"


@dataclass(frozen=True)
class Relation:
    """Linear combination of parallel paths; paths are tuples of arrow indices."""

    terms: tuple  # ((coeff, word), ...)

    def source(self, q: Quiver) -> int:
        return q.word_source(self.terms[0][1])

    def target(self, q: Quiver) -> int:
        return q.word_target(self.terms[0][1])

    def min_length(self) -> int:
        return min(len(w) for _, w in self.terms)

    def reversed(self) -> "Relation":
        return Relation(tuple((c, tuple(reversed(w))) for c, w in self.terms))


def check_relation(q: Quiver, rel: Relation, line=None):
    if not rel.terms:
        raise AlgebraFileError("empty relation", line)
    ends = set()
    for c, w in rel.terms:
        if c == 0:
            raise AlgebraFileError("zero coefficient in relation", line)
        if len(w) < 2:
            raise AlgebraFileError("relation paths must have length >= 2", line)
        if not q.is_path(w):
            raise AlgebraFileError(f"{q.word_label(w)} is not a path", line)
        ends.add((q.word_source(w), q.word_target(w)))
    if len(ends) != 1:
        raise AlgebraFileError("relation terms are not parallel", line)


def rad2_relations(q: Quiver, field: Field):
    """One monomial relation per length-2 path, in arrow order."""
    one = field.one()
    rels = []
    for i, a in enumerate(q.arrows):
        for j, b in enumerate(q.arrows):
            if a.target == b.source:
                rels.append(Relation(((one, (i, j)),)))
    return rels


_TERM = re.compile(r"^\s*(?:([+-]?\s*\d+(?:/\d+)?)\s*\*)?\s*([A-Za-z_][\w']*(?:\.[A-Za-z_][\w']*)*)\s*$")
_NAME = re.compile(r"^[A-Za-z0-9_][\w'\-]*$")


def _split_terms(body: str):
    # split on + and on binary - while keeping the sign with the coefficient
    out = []
    cur = ""
    for ch in body:
        if ch in "+-" and cur.strip() and not cur.rstrip().endswith("*"):
            out.append(cur)
            cur = "-" if ch == "-" else ""
        else:
            cur += ch
    if cur.strip():
        out.append(cur)
    return out


def _parse_term(text: str, q: Quiver, field: Field, line: int):
    text = text.strip()
    sign = 1
    # allow a bare sign before an implicit coefficient: "-b.a"
    if text.startswith("-") and "*" not in text:
        sign, text = -1, text[1:]
    m = _TERM.match(text)
    if not m:
        raise AlgebraFileError(f"cannot parse relation term {text!r}", line)
    coeff_txt, path_txt = m.groups()
    try:
        c = Fraction(coeff_txt.replace(" ", "")) if coeff_txt else Fraction(1)
    except (ValueError, ZeroDivisionError):
        raise AlgebraFileError(f"bad coefficient {coeff_txt!r}", line)
    c *= sign
    if c == 0:
        raise AlgebraFileError("zero coefficient in relation", line)
    word = []
    for name in path_txt.split("."):
        if name not in q.arrow_index:
            raise AlgebraFileError(f"unknown arrow {name!r}", line)
        word.append(q.arrow_index[name])
    try:
        cf = field.scalar(c)
    except FieldError as e:
        raise AlgebraFileError(str(e), line)
    if cf == 0:
        raise AlgebraFileError("coefficient vanishes in the field", line)
    return cf, tuple(word)


def parse_spec(text: str):
    """Parse an algebra file into (Quiver, relations, Field)."""
    field = None
    labels: list[str] = []
    arrows = []
    rel_lines = []
    q = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        head, _, rest = line.partition(" ")
        rest = rest.strip()
        if head == "field":
            if field is not None:
                raise AlgebraFileError("field declared twice", lineno)
            parts = rest.split()
            try:
                if parts == ["Q"]:
                    field = Field()
                elif len(parts) == 2 and parts[0] == "F" and parts[1].isdigit():
                    field = Field(int(parts[1]))
                else:
                    raise AlgebraFileError(f"bad field descriptor {rest!r}", lineno)
            except FieldError as e:
                raise AlgebraFileError(str(e), lineno)
        elif head == "vertex":
            if arrows:
                raise AlgebraFileError("vertices must be declared before arrows", lineno)
            names = rest.split()
            if not names:
                raise AlgebraFileError("vertex line without labels", lineno)
            for v in names:
                if not _NAME.match(v):
                    raise AlgebraFileError(f"bad vertex label {v!r}", lineno)
                if v in labels:
                    raise AlgebraFileError(f"duplicate vertex {v!r}", lineno)
                labels.append(v)
        elif head == "arrow":
            parts = rest.split()
            if len(parts) != 3:
                raise AlgebraFileError("arrow line needs: name source target", lineno)
            name, s, t = parts
            if not re.match(r"^[A-Za-z_][\w']*$", name):
                raise AlgebraFileError(f"bad arrow name {name!r}", lineno)
            for v in (s, t):
                if v not in labels:
                    raise AlgebraFileError(f"unknown vertex {v!r}", lineno)
            if any(a[0] == name for a in arrows):
                raise AlgebraFileError(f"duplicate arrow {name!r}", lineno)
            arrows.append((name, s, t))
        elif head == "rel":
            rel_lines.append((lineno, rest))
        else:
            raise AlgebraFileError(f"unknown directive {head!r}", lineno)
    if field is None:
        field = Field()
    if not labels:
        raise AlgebraFileError("no vertices declared")
    q = Quiver(labels, arrows)
    relations = []
    for lineno, body in rel_lines:
        if body == "rad2":
            relations.extend(rad2_relations(q, field))
            continue
        if not body:
            raise AlgebraFileError("empty relation", lineno)
        terms = [_parse_term(t, q, field, lineno) for t in _split_terms(body)]
        merged: dict = {}
        for c, w in terms:
            merged[w] = merged.get(w, field.zero()) + c
        terms = tuple((c, w) for w, c in merged.items() if c != 0)
        rel = Relation(terms)
        check_relation(q, rel, lineno)
        relations.append(rel)
    return q, relations, field


def format_relation(q: Quiver, rel: Relation, field: Field) -> str:
    parts = []
    for c, w in rel.terms:
        parts.append(f"{field.fmt(c)}*{q.word_label(w)}")
    return " + ".join(parts)


def format_spec(q: Quiver, relations, field: Field, comment: str | None = None) -> str:
    lines = []
    if comment:
        lines.extend(f"# {c}" for c in comment.splitlines())
    lines.append(field.header())
    lines.append("vertex " + " ".join(q.labels))
    for a in q.arrows:
        lines.append(f"arrow {a.name} {q.labels[a.source]} {q.labels[a.target]}")
    for r in relations:
        lines.append("rel " + format_relation(q, r, field))
    return "\n".join(lines) + "\n"
