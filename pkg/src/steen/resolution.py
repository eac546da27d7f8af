"""Minimal free resolutions, Ext charts, and chart rendering."""

from __future__ import annotations

from dataclasses import dataclass, field

from steen.gf2 import Echelon, bits, kernel
from steen.milnor import (
    Algebra,
    Element,
    Monomial,
    enumerate_basis,
    full_a,
    milnor_product,
    mono_str,
    sq,
)
from steen.module import FiniteModule, restrict

__all__ = [
    "ExtChart",
    "Resolution",
    "S_MAX_LIMIT",
    "T_MAX_LIMIT",
    "dump_resolution",
    "emit_chart",
    "ext_chart",
    "minimal_resolution",
    "resolution_checks",
]

S_MAX_LIMIT = 16
T_MAX_LIMIT = 40

# free-module entries: target generator index -> element of the algebra
Entry = dict[int, Element]


@dataclass
class Resolution:
    """A minimal free resolution, stage -1 being the module itself."""

    algebra: Algebra
    module: FiniteModule
    s_max: int
    t_max: int
    degrees: list[list[int]] = field(default_factory=list)
    values: list[int] = field(default_factory=list)
    diffs: list[list[Entry]] = field(default_factory=list)

    def rank(self, s: int, t: int) -> int:
        if not 0 <= s < len(self.degrees):
            return 0
        return self.degrees[s].count(t)

    def dot(self, s: int, j: int) -> tuple[int, int, int]:
        """Chart coordinates (s, t, index among same-bidegree generators)."""
        t = self.degrees[s][j]
        return s, t, self.degrees[s][:j].count(t)

    def __repr__(self) -> str:
        sizes = ", ".join(str(len(d)) for d in self.degrees)
        return f"<resolution of {self.module.name}, stage sizes [{sizes}]>"


def _mono_times(m: Monomial, e: Element, cap: int) -> frozenset[Monomial]:
    if not m:
        return e.monomials
    return milnor_product(sq(*m), e, cap=cap).monomials


def minimal_resolution(
    algebra: Algebra, M: FiniteModule, s_max: int, t_max: int
) -> Resolution:
    """Resolve M by free modules over the algebra, through stage s_max."""
    if not 0 <= s_max <= S_MAX_LIMIT:
        raise ValueError(f"s_max must be between 0 and {S_MAX_LIMIT}")
    if not 0 <= t_max <= T_MAX_LIMIT:
        raise ValueError(f"t_max must be between 0 and {T_MAX_LIMIT}")
    if algebra.n is not None and M.algebra.n is None:
        M = restrict(M, algebra)
    elif algebra.n != M.algebra.n:
        raise ValueError(f"{M.name} is not a module over {algebra.name}")
    if not M.validated:
        problems = M.validate()
        if problems:
            raise ValueError(problems[0])
    if algebra.n is None:
        # a finite horizon keeps full-A basis enumeration bounded; minimal
        # generators in degree t only depend on lower degrees, so this is
        # exact inside the window
        algebra = full_a(t_max + max(M.top, 0))
    cap = algebra.cap

    res = Resolution(algebra, M, s_max, t_max)

    # stage 0: unit vectors spanning M modulo the positive-degree action
    degrees0: list[int] = []
    values0: list[int] = []
    for t in sorted({d for d in M.degrees if d <= t_max}):
        image = Echelon()
        for lower in sorted({d for d in M.degrees if d < t}):
            for m in enumerate_basis(algebra, t - lower):
                for i in range(M.dim):
                    if M.degrees[i] == lower:
                        image.add(M.act_mono(m, 1 << i))
        for i in range(M.dim):
            if M.degrees[i] == t and image.add(1 << i)[0]:
                degrees0.append(t)
                values0.append(1 << i)
    res.degrees.append(degrees0)
    res.values = values0
    res.diffs.append([])

    for s in range(1, s_max + 1):
        prev = res.degrees[s - 1]
        if not prev:
            res.degrees.append([])
            res.diffs.append([])
            continue
        degrees_s: list[int] = []
        diffs_s: list[Entry] = []
        for t in range(min(prev), t_max + 1):
            cols: list[tuple[int, Monomial]] = []
            vecs: list[int] = []
            if s == 1:
                for j, tj in enumerate(prev):
                    if tj > t:
                        continue
                    for m in enumerate_basis(algebra, t - tj):
                        cols.append((j, m))
                        vecs.append(M.act_mono(m, res.values[j]))
            else:
                older = res.degrees[s - 2]
                pos: dict[tuple[int, Monomial], int] = {}
                for j2, tj2 in enumerate(older):
                    if tj2 > t:
                        continue
                    for m in enumerate_basis(algebra, t - tj2):
                        pos[(j2, m)] = len(pos)
                for j, tj in enumerate(prev):
                    if tj > t:
                        continue
                    for m in enumerate_basis(algebra, t - tj):
                        cols.append((j, m))
                        vec = 0
                        for j2, e in res.diffs[s - 1][j].items():
                            for mm in _mono_times(m, e, cap):
                                vec ^= 1 << pos[(j2, mm)]
                        vecs.append(vec)
            combos = kernel(vecs)
            if not combos:
                continue
            colpos = {c: i for i, c in enumerate(cols)}
            span = Echelon()
            for a, ta in enumerate(degrees_s):
                for x in enumerate_basis(algebra, t - ta):
                    vec = 0
                    for j, e in diffs_s[a].items():
                        for mm in _mono_times(x, e, cap):
                            vec ^= 1 << colpos[(j, mm)]
                    span.add(vec)
            for combo in combos:
                residual = span.add(combo)[0]
                if residual:
                    entry: Entry = {}
                    for c in bits(residual):
                        j, m = cols[c]
                        entry[j] = entry.get(j, Element()) + Element([m])
                    degrees_s.append(t)
                    diffs_s.append(entry)
        res.degrees.append(degrees_s)
        res.diffs.append(diffs_s)
    return res


def resolution_checks(R: Resolution) -> list[str]:
    """Verify d*d = 0 and minimality; empty list means the resolution is valid."""
    problems = []
    for s in range(1, len(R.degrees)):
        for a, entry in enumerate(R.diffs[s]):
            for j, e in entry.items():
                if () in e.monomials:
                    problems.append(f"d {s} g{s}_{a}: unit coefficient on g{s-1}_{j}")
        if s == 1:
            for a, entry in enumerate(R.diffs[1]):
                vec = 0
                for j, e in entry.items():
                    vec ^= R.module.act(e, R.values[j])
                if vec:
                    problems.append(f"d0 d1 g1_{a} is nonzero in {R.module.name}")
        else:
            for a, entry in enumerate(R.diffs[s]):
                acc: dict[int, Element] = {}
                for j, e in entry.items():
                    for j2, e2 in R.diffs[s - 1][j].items():
                        prod = milnor_product(e, e2, cap=R.algebra.cap)
                        acc[j2] = acc.get(j2, Element()) + prod
                for j2, total in acc.items():
                    if total:
                        problems.append(f"d{s-1} d{s} g{s}_{a} hits g{s-2}_{j2}")
    return problems


@dataclass
class ExtChart:
    """Ext ranks by bidegree plus h_i multiplication lines between dots."""

    ranks: dict[tuple[int, int], int]
    h_lines: list[tuple[int, tuple[int, int, int], tuple[int, int, int]]]
    range: tuple[int, int]


def ext_chart(R: Resolution) -> ExtChart:
    ranks: dict[tuple[int, int], int] = {}
    for s, degs in enumerate(R.degrees):
        for t in degs:
            ranks[(s, t)] = ranks.get((s, t), 0) + 1
    lines = []
    for s in range(1, len(R.degrees)):
        for a, entry in enumerate(R.diffs[s]):
            for j, e in entry.items():
                for i in range(4):
                    if ((1 << i),) in e.monomials:
                        lines.append((i, R.dot(s - 1, j), R.dot(s, a)))
    lines.sort()
    return ExtChart(ranks, lines, (R.s_max, R.t_max))


def _cell(rank: int) -> str:
    if rank == 0:
        return "."
    return str(rank) if rank < 10 else "+"


def _chart_text(C: ExtChart) -> str:
    s_max, t_max = C.range
    stem_max = max(t_max - s_max, 0)
    header = "   " + "".join(f"{stem:>4}" for stem in range(stem_max + 1))
    lines = [header]
    if C.ranks:
        for s in range(s_max, -1, -1):
            row = "".join(
                f"{_cell(C.ranks.get((s, s + stem), 0)):>4}"
                for stem in range(stem_max + 1)
            )
            lines.append(f"{s:>3}" + row)
    return "\n".join(lines) + "\n"


def _dot_xy(dot: tuple[int, int, int]) -> tuple[int, int]:
    s, t, idx = dot
    return 20 * (t - s) + 6 * idx, -20 * s


def _chart_svg(C: ExtChart) -> str:
    s_max, t_max = C.range
    stem_max = max(t_max - s_max, 0)
    x0, y0 = -10, -20 * s_max - 10
    width, height = 20 * stem_max + 30, 20 * s_max + 20
    out = [
        '<svg xmlns="http://www.w3.org/2000/svg" '
        f'viewBox="{x0} {y0} {width} {height}">',
        '<g stroke="black" fill="black">',
    ]
    for i, src, dst in C.h_lines:
        (x1, y1), (x2, y2) = _dot_xy(src), _dot_xy(dst)
        out.append(f'<line x1="{x1}" y1="{y1}" x2="{x2}" y2="{y2}"/>')
    dots = sorted(
        (s, t, idx)
        for (s, t), rank in C.ranks.items()
        for idx in range(rank)
    )
    for dot in dots:
        x, y = _dot_xy(dot)
        out.append(f'<circle cx="{x}" cy="{y}" r="3"/>')
    out.append("</g>")
    out.append("</svg>")
    return "\n".join(out) + "\n"


def emit_chart(C: ExtChart, format: str = "text") -> bytes:
    if format == "text":
        return _chart_text(C).encode()
    if format == "svg":
        return _chart_svg(C).encode()
    raise ValueError(f"unknown chart format {format!r}")


def dump_resolution(R: Resolution) -> str:
    """Differentials as text, one line per generator."""
    lines = []
    for j, value in enumerate(R.values):
        targets = " + ".join(R.module.gens[i] for i in bits(value))
        lines.append(f"d 0 g0_{j} = {targets}")
    for s in range(1, len(R.degrees)):
        for a, entry in enumerate(R.diffs[s]):
            terms = [
                f"{mono_str(m)} g{s-1}_{j}"
                for j in sorted(entry)
                for m in sorted(entry[j].monomials)
            ]
            lines.append(f"d {s} g{s}_{a} = " + " + ".join(terms))
    return "\n".join(lines) + "\n" if lines else ""
