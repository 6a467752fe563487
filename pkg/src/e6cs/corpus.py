"""Reader for the block-structured text files used for the embedded operator
tables and the golden corpus.

Format::

    # free comment
    [B:P_200000] appendixB_poly
    # paper-verbatim: <original text when the entry is a documented correction>
    let A = <expression>
    z1^2 - 2 z3/(1 + k)
      - 10 k z6/((1 + k)(1 + 4 k))

A header ``[id] source`` opens an entry. ``let`` lines bind auxiliary
constants visible in the payload; the remaining lines are joined into the
payload. Entry ids must be unique within a file set.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from pathlib import Path

_HEADER = re.compile(r"^\[(?P<id>[^\]]+)\]\s*(?P<source>\S+)?\s*$")


class CorpusError(ValueError):
    pass


@dataclass
class Entry:
    id: str
    source: str
    payload: str
    lets: list = field(default_factory=list)
    verbatim: list = field(default_factory=list)
    notes: list = field(default_factory=list)
    path: str = ""
    line: int = 0

    @property
    def is_correction(self) -> bool:
        return bool(self.verbatim)


def parse_corpus_text(text: str, path: str = "<string>") -> list:
    entries: list[Entry] = []
    cur = None
    body: list[str] = []

    def close():
        if cur is not None:
            cur.payload = " ".join(body).strip()
            if not cur.payload:
                raise CorpusError(f"{path}:{cur.line}: entry {cur.id!r} has no payload")
            entries.append(cur)

    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line:
            continue
        m = _HEADER.match(line)
        if m:
            close()
            cur = Entry(m.group("id"), m.group("source") or "", "", path=path, line=lineno)
            body = []
            continue
        if line.startswith("#"):
            if cur is not None:
                c = line[1:].strip()
                if c.startswith("paper-verbatim:"):
                    cur.verbatim.append(c[len("paper-verbatim:"):].strip())
                else:
                    cur.notes.append(c)
            continue
        if cur is None:
            raise CorpusError(f"{path}:{lineno}: content before the first entry header")
        if line.startswith("let "):
            name, sep, expr = line[4:].partition("=")
            if not sep:
                raise CorpusError(f"{path}:{lineno}: malformed let binding")
            cur.lets.append((name.strip(), expr.strip()))
            continue
        body.append(line)
    close()
    seen = set()
    for e in entries:
        if e.id in seen:
            raise CorpusError(f"{path}: duplicate entry id {e.id!r}")
        seen.add(e.id)
    return entries


def read_corpus_file(path) -> list:
    p = Path(path)
    try:
        text = p.read_text(encoding="utf-8")
    except OSError as exc:
        raise CorpusError(f"cannot read {p}: {exc}") from None
    return parse_corpus_text(text, str(p))


def data_path(*parts) -> Path:
    return Path(__file__).resolve().parent.joinpath("data", *parts)


def read_corpus_dir(directory) -> list:
    d = Path(directory)
    if not d.is_dir():
        raise CorpusError(f"corpus directory {d} does not exist")
    files = sorted(d.glob("*.txt"))
    if not files:
        raise CorpusError(f"corpus directory {d} contains no .txt files")
    entries = []
    for f in files:
        entries.extend(read_corpus_file(f))
    seen = set()
    for e in entries:
        if e.id in seen:
            raise CorpusError(f"duplicate entry id {e.id!r} across corpus files")
        seen.add(e.id)
    if not entries:
        raise CorpusError(f"corpus directory {d} has no entries")
    return entries


def entry_env(entry: Entry, base=None) -> dict:
    """Evaluate the entry's let bindings (in order) into a name -> value map."""
    from .textio import parse_kappa

    env = dict(base or {})
    for name, expr in entry.lets:
        env[name] = parse_kappa(expr, env)
    return env
