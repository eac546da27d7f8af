"""Plain-text and JSON serialization for finite modules.

The text format is line-based:

    module <name> over A | A(<n>)
    gen <id> <degree>
    sq <k> <id> = <id> [+ <id>]*

Blank lines and lines starting with '#' are ignored.  Omitted sq lines mean
the action is zero; serialization writes gens in basis order and sq lines
with k ascending, sources in basis order, nonzero rows only, so files
round-trip byte for byte.  Polynomial modules for the unstable layer use

    polymodule <name>
    polygen <name> <degree> real | complex
    rel <factor> [<factor>]*       (factor: name or name^e)

The JSON mirror carries the same data with sorted keys.
"""

from __future__ import annotations

import json
import re
from pathlib import Path

from steen.gf2 import bits
from steen.milnor import Algebra, an, full_a
from steen.module import FiniteModule

__all__ = [
    "load",
    "parse",
    "parse_json",
    "save",
    "serialize",
    "serialize_json",
]

_ALGEBRA_RE = re.compile(r"^A(\((\d+)\))?$")


def _algebra_token(algebra: Algebra) -> str:
    return algebra.name


def _parse_algebra(token: str, where: str) -> Algebra:
    match = _ALGEBRA_RE.match(token)
    if not match:
        raise ValueError(f"{where}: bad algebra {token!r}")
    return full_a() if match.group(2) is None else an(int(match.group(2)))


def serialize(M) -> str:
    from steen.unstable import PolyModule

    if isinstance(M, PolyModule):
        lines = [f"polymodule {M.name}"]
        for g, d, flavor in M.generators:
            lines.append(f"polygen {g} {d} {flavor}")
        for rel in M.relations:
            factors = " ".join(
                g if e == 1 else f"{g}^{e}"
                for (g, _, _), e in zip(M.generators, rel)
                if e
            )
            lines.append(f"rel {factors}")
        return "\n".join(lines) + "\n"
    lines = [f"module {M.name} over {_algebra_token(M.algebra)}"]
    for g, d in zip(M.gens, M.degrees):
        lines.append(f"gen {g} {d}")
    for k in sorted(M.tables):
        table = M.tables[k]
        for i in range(M.dim):
            if table[i]:
                targets = " + ".join(M.gens[j] for j in bits(table[i]))
                lines.append(f"sq {k} {M.gens[i]} = {targets}")
    return "\n".join(lines) + "\n"


def parse(text: str):
    """Parse the text format; returns a FiniteModule or a PolyModule."""
    lines = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if line and not line.startswith("#"):
            lines.append((lineno, line.split()))
    if not lines:
        raise ValueError("empty module file")
    if lines[0][1][0] == "polymodule":
        return _parse_poly(lines)
    return _parse_finite(lines)


def _parse_finite(lines: list[tuple[int, list[str]]]) -> FiniteModule:
    lineno, head = lines[0]
    if len(head) != 4 or head[0] != "module" or head[2] != "over":
        raise ValueError(f"line {lineno}: expected 'module <name> over <algebra>'")
    name = head[1]
    algebra = _parse_algebra(head[3], f"line {lineno}")
    gens: list[str] = []
    degrees: list[int] = []
    index: dict[str, int] = {}
    actions: list[tuple[int, int, str, list[str]]] = []
    for lineno, tokens in lines[1:]:
        if tokens[0] == "gen":
            if len(tokens) != 3:
                raise ValueError(f"line {lineno}: expected 'gen <id> <degree>'")
            if tokens[1] in index:
                raise ValueError(f"line {lineno}: duplicate id {tokens[1]}")
            index[tokens[1]] = len(gens)
            gens.append(tokens[1])
            degrees.append(int(tokens[2]))
        elif tokens[0] == "sq":
            if len(tokens) < 5 or tokens[3] != "=":
                raise ValueError(f"line {lineno}: expected 'sq <k> <id> = <targets>'")
            targets = tokens[4::2]
            if tokens[5::2] != ["+"] * (len(targets) - 1):
                raise ValueError(f"line {lineno}: targets must be joined with '+'")
            actions.append((lineno, int(tokens[1]), tokens[2], targets))
        else:
            raise ValueError(f"line {lineno}: unknown directive {tokens[0]!r}")
    tables: dict[int, list[int]] = {}
    for lineno, k, src, targets in actions:
        if src not in index:
            raise ValueError(f"line {lineno}: unknown id {src}")
        row = 0
        for t in targets:
            if t not in index:
                raise ValueError(f"line {lineno}: unknown id {t}")
            row ^= 1 << index[t]
        table = tables.setdefault(k, [0] * len(gens))
        if table[index[src]]:
            raise ValueError(f"line {lineno}: repeated sq {k} {src}")
        table[index[src]] = row
    return FiniteModule(
        name,
        algebra,
        tuple(gens),
        tuple(degrees),
        {k: tuple(rows) for k, rows in tables.items()},
    )


def _parse_poly(lines: list[tuple[int, list[str]]]):
    from steen.unstable import PolyModule

    lineno, head = lines[0]
    if len(head) != 2:
        raise ValueError(f"line {lineno}: expected 'polymodule <name>'")
    name = head[1]
    gens: list[tuple[str, int, str]] = []
    known: set[str] = set()
    relations: list[tuple[int, ...]] = []
    factor_re = re.compile(r"^([A-Za-z][A-Za-z0-9]*)(\^(\d+))?$")
    for lineno, tokens in lines[1:]:
        if tokens[0] == "polygen":
            if len(tokens) != 4 or tokens[3] not in ("real", "complex"):
                raise ValueError(
                    f"line {lineno}: expected 'polygen <name> <degree> real|complex'"
                )
            gens.append((tokens[1], int(tokens[2]), tokens[3]))
            known.add(tokens[1])
        elif tokens[0] == "rel":
            if len(tokens) < 2:
                raise ValueError(f"line {lineno}: expected 'rel <factor>...'")
            exponents = [0] * len(gens)
            for factor in tokens[1:]:
                match = factor_re.match(factor)
                if not match or match.group(1) not in known:
                    raise ValueError(f"line {lineno}: bad factor {factor!r}")
                which = next(
                    i for i, (g, _, _) in enumerate(gens) if g == match.group(1)
                )
                exponents[which] += int(match.group(3) or 1)
            relations.append(tuple(exponents))
        else:
            raise ValueError(f"line {lineno}: unknown directive {tokens[0]!r}")
    return PolyModule(name, tuple(gens), tuple(relations))


def serialize_json(M: FiniteModule) -> str:
    payload = {
        "module": M.name,
        "algebra": _algebra_token(M.algebra),
        "gens": [[g, d] for g, d in zip(M.gens, M.degrees)],
        "sq": {
            str(k): {
                M.gens[i]: [M.gens[j] for j in bits(M.tables[k][i])]
                for i in range(M.dim)
                if M.tables[k][i]
            }
            for k in sorted(M.tables)
        },
    }
    return json.dumps(payload, indent=2, sort_keys=True) + "\n"


def parse_json(text: str) -> FiniteModule:
    payload = json.loads(text)
    gens = tuple(g for g, _ in payload["gens"])
    degrees = tuple(int(d) for _, d in payload["gens"])
    index = {g: i for i, g in enumerate(gens)}
    tables: dict[int, tuple[int, ...]] = {}
    for k, rows in payload["sq"].items():
        table = [0] * len(gens)
        for src, targets in rows.items():
            for t in targets:
                table[index[src]] ^= 1 << index[t]
        tables[int(k)] = tuple(table)
    return FiniteModule(
        payload["module"],
        _parse_algebra(payload["algebra"], "json"),
        gens,
        degrees,
        tables,
    )


def save(M: FiniteModule, path: str | Path) -> None:
    path = Path(path)
    text = serialize_json(M) if path.suffix == ".json" else serialize(M)
    path.write_text(text)


def load(path: str | Path):
    path = Path(path)
    text = path.read_text()
    if path.suffix == ".json":
        return parse_json(text)
    return parse(text)
