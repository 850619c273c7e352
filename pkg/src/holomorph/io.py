"""Reading and writing Cayley-table (.ctab) and permutation-group (.pgrp) files.

.ctab: first line ``n``, then ``n`` rows of ``n`` whitespace-separated
1-based indices; element 1 is the identity.

.pgrp::

    # comment
    name <label>
    degree <n>
    gen <n 1-based images>
    ...
    end
"""

from __future__ import annotations

from pathlib import Path

import numpy as np

from .errors import ParseError
from .groups import FiniteGroup, from_multiplication_table, from_permutation_generators, table_of


def read_ctab(path: str | Path, label: str | None = None) -> FiniteGroup:
    path = Path(path)
    lines = [ln for ln in path.read_text().splitlines() if ln.strip() and not ln.lstrip().startswith("#")]
    if not lines:
        raise ParseError(f"{path}: empty file")
    try:
        n = int(lines[0].split()[0])
        rows = [[int(tok) for tok in ln.split()] for ln in lines[1:]]
    except ValueError as exc:
        raise ParseError(f"{path}: non-integer token") from exc
    if len(rows) != n or any(len(r) != n for r in rows):
        raise ParseError(f"{path}: expected {n} rows of {n} entries")
    table = np.asarray(rows, dtype=np.int64) - 1
    if (table[0] != np.arange(n)).any() or (table[:, 0] != np.arange(n)).any():
        raise ParseError(f"{path}: element 1 must be the identity")
    return from_multiplication_table(table, label or path.stem)


def write_ctab(G: FiniteGroup, path: str | Path) -> None:
    t = np.asarray(table_of(G), dtype=np.int64) + 1
    with open(path, "w") as fh:
        fh.write(f"{G.order}\n")
        for row in t:
            fh.write(" ".join(map(str, row)) + "\n")


def parse_pgrp(text: str, source: str = "<pgrp>") -> tuple[str, int, list[list[int]]]:
    name, degree, gens, ended = None, None, [], False
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if ended:
            raise ParseError(f"{source}:{lineno}: content after 'end'")
        key, _, rest = line.partition(" ")
        if key == "name":
            name = rest.strip()
        elif key == "degree":
            try:
                degree = int(rest)
            except ValueError as exc:
                raise ParseError(f"{source}:{lineno}: bad degree") from exc
        elif key == "gen":
            if degree is None:
                raise ParseError(f"{source}:{lineno}: 'gen' before 'degree'")
            try:
                imgs = [int(t) - 1 for t in rest.split()]
            except ValueError as exc:
                raise ParseError(f"{source}:{lineno}: non-integer image") from exc
            if sorted(imgs) != list(range(degree)):
                raise ParseError(f"{source}:{lineno}: generator is not a permutation of 1..{degree}")
            gens.append(imgs)
        elif key == "end":
            ended = True
        else:
            raise ParseError(f"{source}:{lineno}: unknown keyword {key!r}")
    if degree is None or not ended:
        raise ParseError(f"{source}: missing 'degree' or 'end'")
    if not gens:
        raise ParseError(f"{source}: at least one 'gen' line is required")
    return name or Path(source).stem, degree, gens


def read_pgrp(path: str | Path, *, cap: int | None = None) -> FiniteGroup:
    path = Path(path)
    name, degree, gens = parse_pgrp(path.read_text(), str(path))
    kwargs = {} if cap is None else {"cap": cap}
    return from_permutation_generators(degree, gens, label=name, **kwargs)


def format_pgrp(name: str, degree: int, gens) -> str:
    lines = [f"name {name}", f"degree {degree}"]
    for g in gens:
        lines.append("gen " + " ".join(str(int(v) + 1) for v in g))
    lines.append("end")
    return "\n".join(lines) + "\n"


def write_pgrp(name: str, degree: int, gens, path: str | Path) -> None:
    Path(path).write_text(format_pgrp(name, degree, gens))
