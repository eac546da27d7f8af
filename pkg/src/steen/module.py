"""Finite modules over A(n) or a degree-capped piece of the whole algebra.

A module stores named basis elements with degrees and action tables for the
single squares Sq^k of its algebra up to the module span.  Actions of
arbitrary Milnor basis elements are computed by expanding over the generators
Sq(2^e), so the tables for composite k can always be audited against an
independent route.  Modules produced by doubling carry a Verschiebung hook
(vsource) and act through their base module, which also gives them honest
actions of operations outside their own subalgebra.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import product as iproduct

from steen.gf2 import Echelon, bits
from steen.milnor import (
    DEGREE_CAP,
    Algebra,
    Element,
    Monomial,
    antipode,
    enumerate_basis,
    generator_expansion,
    milnor_product,
    mono_degree,
    mono_str,
    normalize,
    sq,
    verschiebung_monomial,
)

__all__ = [
    "FiniteModule",
    "ModuleMap",
    "complete_tables",
    "coaction",
    "cyclic_quotient",
    "double",
    "dualize",
    "extension_enumerate",
    "find_isomorphism",
    "restrict",
    "shift",
    "tensor",
    "trivial_module",
]

_ID_FORBIDDEN = set("+=# \t\n")


class FiniteModule:
    """A finite-dimensional graded module with GF(2) bitset action tables."""

    def __init__(
        self,
        name: str,
        algebra: Algebra,
        gens: tuple[str, ...],
        degrees: tuple[int, ...],
        tables: dict[int, tuple[int, ...]],
        vsource: tuple[FiniteModule, int] | None = None,
    ) -> None:
        gens = tuple(gens)
        degrees = tuple(degrees)
        if len(gens) != len(degrees):
            raise ValueError(f"{name}: {len(gens)} ids vs {len(degrees)} degrees")
        if len(set(gens)) != len(gens):
            raise ValueError(f"{name}: duplicate basis ids")
        for g in gens:
            if not g or _ID_FORBIDDEN & set(g):
                raise ValueError(f"{name}: bad basis id {g!r}")
        dim = len(gens)
        clean: dict[int, tuple[int, ...]] = {}
        for k, table in sorted(tables.items()):
            table = tuple(table)
            if len(table) != dim:
                raise ValueError(f"{name}: Sq^{k} table has {len(table)} rows, dim {dim}")
            if not algebra.contains((k,)):
                raise ValueError(f"{name}: Sq^{k} is not in {algebra.name}")
            for i, row in enumerate(table):
                if row < 0 or row >> dim:
                    raise ValueError(f"{name}: Sq^{k} row {i} out of range")
                for j in bits(row):
                    if degrees[j] != degrees[i] + k:
                        raise ValueError(
                            f"{name}: Sq^{k} {gens[i]} hits {gens[j]} of wrong degree"
                        )
            if any(table):
                clean[k] = table
        self.name = name
        self.algebra = algebra
        self.gens = gens
        self.degrees = degrees
        self.tables = clean
        self.vsource = vsource
        self.validated = False
        self._zeros = (0,) * dim
        self._cache: dict[tuple[Monomial, int], int] = {}

    # -- basic geometry --

    @property
    def dim(self) -> int:
        return len(self.gens)

    @property
    def bottom(self) -> int:
        return min(self.degrees) if self.degrees else 0

    @property
    def top(self) -> int:
        return max(self.degrees) if self.degrees else 0

    @property
    def span(self) -> int:
        return self.top - self.bottom

    def dims(self) -> dict[int, int]:
        out: dict[int, int] = {}
        for d in self.degrees:
            out[d] = out.get(d, 0) + 1
        return dict(sorted(out.items()))

    def basis_at(self, d: int) -> tuple[int, ...]:
        return tuple(i for i, deg in enumerate(self.degrees) if deg == d)

    def algebra_ks(self) -> list[int]:
        """The k with Sq^k in the algebra and 1 <= k <= span."""
        return [k for k in range(1, self.span + 1) if self.algebra.contains((k,))]

    def table(self, k: int) -> tuple[int, ...]:
        return self.tables.get(k, self._zeros)

    def ids_of(self, vec: int) -> list[str]:
        return [self.gens[i] for i in bits(vec)]

    def __repr__(self) -> str:
        return f"<module {self.name} over {self.algebra.name}, dim {self.dim}>"

    # -- action --

    def act_mono(self, mono: Monomial, vec: int) -> int:
        mono = normalize(mono)
        if not mono or not vec:
            return vec
        out = 0
        for i in bits(vec):
            out ^= self._act_basis(mono, i)
        return out

    def act(self, a: Element, vec: int) -> int:
        out = 0
        for m in a.monomials:
            out ^= self.act_mono(m, vec)
        return out

    def _act_basis(self, mono: Monomial, i: int) -> int:
        key = (mono, i)
        cached = self._cache.get(key)
        if cached is not None:
            return cached
        d = mono_degree(mono)
        if self.degrees[i] + d > self.top:
            result = 0
        elif self.vsource is not None:
            base, k = self.vsource
            vm = verschiebung_monomial(k, mono)
            result = 0 if vm is None else base._act_basis(vm, i)
        else:
            if not self.algebra.contains(mono):
                raise ValueError(
                    f"{mono_str(mono)} is not in {self.algebra.name}; "
                    f"cannot act on {self.name}"
                )
            if len(mono) == 1:
                result = self._apply_table(mono[0], 1 << i)
            else:
                result = 0
                for e, rest in generator_expansion(mono, self.algebra):
                    below = self._act_basis(rest, i) if rest else (1 << i)
                    result ^= self._apply_table(1 << e, below)
        self._cache[key] = result
        return result

    def _apply_table(self, k: int, vec: int) -> int:
        table = self.table(k)
        out = 0
        for j in bits(vec):
            out ^= table[j]
        return out

    # -- validation --

    def validate(self) -> list[str]:
        """Check the module against its definition; empty list means valid."""
        problems: list[str] = []
        if self.vsource is not None:
            problems.extend(self._validate_doubled())
        else:
            problems.extend(self._validate_tables())
            problems.extend(self._validate_associativity())
        if not problems:
            self.validated = True
        return problems

    def _validate_doubled(self) -> list[str]:
        base, k = self.vsource
        problems = [f"{self.name}: base {base.name}: {p}" for p in base.validate()]
        if self.gens != base.gens:
            problems.append(f"{self.name}: ids differ from base {base.name}")
        if self.degrees != tuple(d << k for d in base.degrees):
            problems.append(f"{self.name}: degrees are not 2^{k} times the base")
        # every stored table must agree with the Verschiebung route
        mask = (1 << k) - 1
        for kk in self.algebra_ks():
            expected_rows = []
            for i in range(self.dim):
                if kk & mask:
                    expected_rows.append(0)
                else:
                    expected_rows.append(base._act_basis((kk >> k,), i))
            if tuple(expected_rows) != self.table(kk):
                problems.append(f"{self.name}: Sq^{kk} table disagrees with doubling")
        return problems

    def _validate_tables(self) -> list[str]:
        # composite single squares must match their generator expansion
        problems = []
        for k in self.algebra_ks():
            if k & (k - 1) == 0:
                continue
            expansion = generator_expansion((k,), self.algebra)
            for i in range(self.dim):
                if self.degrees[i] + k > self.top:
                    continue
                via = 0
                for e, rest in expansion:
                    below = self._act_basis(rest, i) if rest else (1 << i)
                    via ^= self._apply_table(1 << e, below)
                if via != self.table(k)[i]:
                    problems.append(
                        f"{self.name}: Sq^{k} on {self.gens[i]} is "
                        f"{self.ids_of(self.table(k)[i])} but the generator "
                        f"expansion gives {self.ids_of(via)}"
                    )
        return problems

    def _validate_associativity(self) -> list[str]:
        problems = []
        span = self.span
        cap = max(DEGREE_CAP, 2 * span)
        for da in range(1, span):
            for a in enumerate_basis(self.algebra, da):
                for db in range(1, span - da + 1):
                    for b in enumerate_basis(self.algebra, db):
                        ab = milnor_product(sq(*a), sq(*b), cap=cap)
                        for i in range(self.dim):
                            if self.degrees[i] + da + db > self.top:
                                continue
                            rhs = self.act_mono(a, self._act_basis(b, i))
                            lhs = self.act(ab, 1 << i)
                            if lhs != rhs:
                                problems.append(
                                    f"{self.name}: ({mono_str(a)}*{mono_str(b)})"
                                    f"{self.gens[i]} = {self.ids_of(lhs)} but acting "
                                    f"in two steps gives {self.ids_of(rhs)}"
                                )
        return problems


def trivial_module(algebra: Algebra, name: str = "F2", gen: str = "u") -> FiniteModule:
    return FiniteModule(name, algebra, (gen,), (0,), {})


# -- constructions -------------------------------------------------------------


def shift(M: FiniteModule, m: int, name: str | None = None) -> FiniteModule:
    """Shift all degrees up by m (tables unchanged)."""
    return FiniteModule(
        name or f"{M.name}[{m}]",
        M.algebra,
        M.gens,
        tuple(d + m for d in M.degrees),
        dict(M.tables),
    )


def dualize(M: FiniteModule, name: str | None = None) -> FiniteModule:
    """The dual module: (Sq^k f)(x) = f(chi(Sq^k) x); degrees are negated.

    Dual basis ids carry a trailing mark.  Doubled modules dualize through
    their base, since conjugation commutes with the Verschiebung.
    """
    name = name or f"D({M.name})"
    if M.vsource is not None:
        base, k = M.vsource
        return double(dualize(base), k, name=name)
    tables: dict[int, list[int]] = {}
    for k in M.algebra_ks():
        chi = antipode(sq(k), cap=max(DEGREE_CAP, M.span))
        rows = [0] * M.dim
        for j in range(M.dim):
            for i in bits(M.act(chi, 1 << j)):
                rows[i] |= 1 << j
        tables[k] = rows
    return FiniteModule(
        name,
        M.algebra,
        tuple(f"{g}'" for g in M.gens),
        tuple(-d for d in M.degrees),
        {k: tuple(rows) for k, rows in tables.items()},
    )


def double(M: FiniteModule, k: int, name: str | None = None) -> FiniteModule:
    """Degree-doubling along the k-fold Verschiebung: Sq^{2^k j} acts as Sq^j did.

    Over A(n) the result is an A(n+k)-module; over the whole algebra it stays
    one.  The result remembers its base, so arbitrary operations act through
    v^(k) even beyond the stated subalgebra.
    """
    if k < 0:
        raise ValueError("doubling exponent must be non-negative")
    if k == 0:
        return M
    if M.algebra.n is not None:
        target = Algebra(n=M.algebra.n + k)
    else:
        target = M.algebra
    tables = {kk << k: table for kk, table in M.tables.items()}
    return FiniteModule(
        name or f"{M.name}^({k})",
        target,
        M.gens,
        tuple(d << k for d in M.degrees),
        tables,
        vsource=(M, k),
    )


def restrict(M: FiniteModule, algebra: Algebra, name: str | None = None) -> FiniteModule:
    """Restrict along a subalgebra inclusion, keeping only its tables."""
    span = M.span
    for k in range(1, span + 1):
        if algebra.contains((k,)) and not M.algebra.contains((k,)):
            raise ValueError(f"{algebra.name} is not inside {M.algebra.name}")
    tables = {
        k: M.table(k)
        for k in range(1, span + 1)
        if algebra.contains((k,)) and any(M.table(k))
    }
    return FiniteModule(
        name or f"{M.name}|{algebra.name}",
        algebra,
        M.gens,
        M.degrees,
        tables,
    )


def tensor(M: FiniteModule, N: FiniteModule, name: str | None = None) -> FiniteModule:
    """Tensor product with the Cartan action Sq^k = sum Sq^a (x) Sq^{k-a}."""
    if M.algebra != N.algebra:
        raise ValueError(f"tensor over different algebras: {M.algebra} vs {N.algebra}")
    gens = tuple(f"{g}{h}" for g in M.gens for h in N.gens)
    degrees = tuple(dm + dn for dm in M.degrees for dn in N.degrees)
    dim_n = N.dim
    span = (max(degrees) - min(degrees)) if degrees else 0
    tables: dict[int, list[int]] = {}
    for k in range(1, span + 1):
        if not M.algebra.contains((k,)):
            continue
        rows = [0] * (M.dim * dim_n)
        for i in range(M.dim):
            for j in range(dim_n):
                out = 0
                for a in range(k + 1):
                    left = (1 << i) if a == 0 else M.table(a)[i]
                    right = (1 << j) if a == k else N.table(k - a)[j]
                    for p in bits(left):
                        for q in bits(right):
                            out ^= 1 << (p * dim_n + q)
                rows[i * dim_n + j] = out
        tables[k] = rows
    return FiniteModule(
        name or f"{M.name}(x){N.name}",
        M.algebra,
        gens,
        degrees,
        {k: tuple(rows) for k, rows in tables.items()},
    )


def coaction(M: FiniteModule, i: int) -> list[tuple[Monomial, int]]:
    """Dual-side coaction of basis element i: pairs (xi-monomial, basis index).

    The coefficient of xi^R (x) x_j in psi(x_i) is the coefficient of x_i in
    Sq(R) x_j, so the list enumerates exactly the monomial actions hitting i.
    """
    out: list[tuple[Monomial, int]] = []
    for j in range(M.dim):
        gap = M.degrees[i] - M.degrees[j]
        if gap < 0:
            continue
        if gap == 0:
            if j == i:
                out.append(((), j))
            continue
        for m in enumerate_basis(M.algebra, gap):
            if (M._act_basis(m, j) >> i) & 1:
                out.append((m, j))
    return sorted(out, key=lambda pair: (pair[1], pair[0]))


# -- quotients and extensions ---------------------------------------------------


def cyclic_quotient(
    algebra: Algebra, relations: list[Element], name: str
) -> FiniteModule:
    """The cyclic module algebra / (left ideal generated by the relations)."""
    if algebra.n is None:
        raise ValueError("cyclic quotients are built over a finite subalgebra")
    for rel in relations:
        if not rel:
            raise ValueError(f"{name}: zero relation")
        if not algebra.contains_element(rel):
            raise ValueError(f"{name}: relation {rel} is not in {algebra.name}")
        rel.degree  # raises when inhomogeneous
    top = algebra.top_degree
    ideal: dict[int, Echelon] = {}
    index: dict[int, dict[Monomial, int]] = {}
    for d in range(top + 1):
        basis = enumerate_basis(algebra, d)
        index[d] = {m: c for c, m in enumerate(basis)}
        ech = Echelon()
        for rel in relations:
            dr = rel.degree
            if dr > d:
                continue
            for b in enumerate_basis(algebra, d - dr):
                image = milnor_product(sq(*b), rel, cap=max(DEGREE_CAP, top))
                vec = 0
                for t in image.monomials:
                    vec ^= 1 << index[d][t]
                ech.add(vec)
        ideal[d] = ech

    reps: list[tuple[int, Monomial]] = []  # (degree, representative monomial)
    for d in range(top + 1):
        pivot_cols = set(ideal[d].pivots())
        for c, m in enumerate(enumerate_basis(algebra, d)):
            if c not in pivot_cols:
                reps.append((d, m))
    degrees = tuple(d for d, _ in reps)
    ids = []
    seen: dict[int, int] = {}
    for d, _ in reps:
        count = seen.get(d, 0)
        seen[d] = count + 1
        suffix = "" if count == 0 else chr(ord("a") + count - 1)
        ids.append(f"x{d}{suffix}")

    positions = {(d, m): i for i, (d, m) in enumerate(reps)}

    def reduce_to_classes(d: int, vec: int) -> int:
        vec, _ = ideal[d].reduce(vec)
        out = 0
        basis = enumerate_basis(algebra, d)
        for c in bits(vec):
            out |= 1 << positions[(d, basis[c])]
        return out

    span = max(degrees) if degrees else 0
    tables: dict[int, list[int]] = {}
    for k in range(1, span + 1):
        if not algebra.contains((k,)):
            continue
        rows = [0] * len(reps)
        for i, (d, m) in enumerate(reps):
            if d + k > span:
                continue
            image = milnor_product(sq(k), sq(*m), cap=max(DEGREE_CAP, top))
            vec = 0
            for t in image.monomials:
                vec ^= 1 << index[d + k][t]
            rows[i] = reduce_to_classes(d + k, vec)
        if any(rows):
            tables[k] = rows
    return FiniteModule(name, algebra, tuple(ids), degrees, {k: tuple(r) for k, r in tables.items()})


def _route_through_tables(
    algebra: Algebra,
    degrees: tuple[int, ...],
    tables: dict[int, tuple[int, ...]],
    top: int,
    mono: Monomial,
    i: int,
) -> int:
    """Expansion-route action using only the given tables (completion helper)."""
    d = mono_degree(mono)
    if degrees[i] + d > top:
        return 0
    if len(mono) == 1 and mono[0] & (mono[0] - 1) == 0:
        table = tables.get(mono[0])
        return table[i] if table else 0
    out = 0
    for e, rest in generator_expansion(mono, algebra):
        below = (
            _route_through_tables(algebra, degrees, tables, top, rest, i)
            if rest
            else (1 << i)
        )
        table = tables.get(1 << e)
        if table:
            for j in bits(below):
                out ^= table[j]
    return out


def complete_tables(
    name: str,
    algebra: Algebra,
    gens: tuple[str, ...],
    degrees: tuple[int, ...],
    two_power_tables: dict[int, tuple[int, ...]],
    vsource: tuple[FiniteModule, int] | None = None,
) -> FiniteModule:
    """Build a module from tables for the generators Sq(2^e) alone.

    Tables for composite k are derived through the generator expansion, so a
    hand-entered diagram only ever specifies the 2-power edges.
    """
    for k in two_power_tables:
        if k & (k - 1):
            raise ValueError(f"{name}: Sq^{k} is not a generator table")
    span = (max(degrees) - min(degrees)) if degrees else 0
    top = max(degrees) if degrees else 0
    tables = dict(two_power_tables)
    for k in range(1, span + 1):
        if k & (k - 1) == 0 or not algebra.contains((k,)):
            continue
        rows = tuple(
            _route_through_tables(algebra, tuple(degrees), tables, top, (k,), i)
            for i in range(len(gens))
        )
        if any(rows):
            tables[k] = rows
    return FiniteModule(
        name, algebra, gens, degrees, {k: t for k, t in tables.items() if any(t)}, vsource
    )


def extension_enumerate(M: FiniteModule, target: Algebra) -> list[FiniteModule]:
    """All ways to extend M's action to the larger algebra, up to table choice.

    Only the new generator tables Sq(2^e) are free; composite squares follow
    from them.  Candidates are filtered by a full validate, and returned in
    the deterministic order of their bit patterns.
    """
    span = M.span
    for k in range(1, span + 1):
        if M.algebra.contains((k,)) and not target.contains((k,)):
            raise ValueError(f"{target.name} does not contain {M.algebra.name}")
    new_es = [
        e
        for e in range(span.bit_length())
        if (1 << e) <= span
        and target.contains(((1 << e),))
        and not M.algebra.contains(((1 << e),))
    ]
    slots: list[tuple[int, int, tuple[int, ...]]] = []  # (k, source index, targets)
    for e in new_es:
        k = 1 << e
        for i in range(M.dim):
            targets = M.basis_at(M.degrees[i] + k)
            if targets:
                slots.append((k, i, targets))
    total_bits = sum(len(t) for _, _, t in slots)
    out: list[FiniteModule] = []
    for pattern in range(1 << total_bits):
        new_tables: dict[int, list[int]] = {1 << e: [0] * M.dim for e in new_es}
        pos = 0
        for k, i, targets in slots:
            for j in targets:
                if (pattern >> pos) & 1:
                    new_tables[k][i] |= 1 << j
                pos += 1
        two_powers = {
            k: M.table(k) for k in M.algebra_ks() if k & (k - 1) == 0 and any(M.table(k))
        }
        for k, rows in new_tables.items():
            if any(rows):
                two_powers[k] = tuple(rows)
        candidate = complete_tables(
            f"{M.name}~{pattern}", target, M.gens, M.degrees, two_powers
        )
        if not candidate.validate():
            out.append(candidate)
    return out


# -- isomorphism search ----------------------------------------------------------


@dataclass(frozen=True)
class ModuleMap:
    """A degreewise-linear map stored as global target bitsets per source index."""

    source: FiniteModule
    target: FiniteModule
    rows: tuple[int, ...]

    def apply(self, vec: int) -> int:
        out = 0
        for i in bits(vec):
            out ^= self.rows[i]
        return out

    def is_isomorphism(self) -> bool:
        if self.source.dims() != self.target.dims():
            return False
        ech = Echelon()
        for row in self.rows:
            if ech.add(row)[0] == 0:
                return False
        return True

    def commutes_with(self, k: int) -> bool:
        for i in range(self.source.dim):
            if self.apply(self.source.table(k)[i]) != self.target._apply_table(
                k, self.rows[i]
            ):
                return False
        return True


@lru_cache(maxsize=None)
def _invertible_matrices(n: int) -> tuple[tuple[int, ...], ...]:
    """All invertible n x n GF(2) matrices as row tuples, ascending."""
    if n == 0:
        return ((),)
    out = []
    for rows in iproduct(range(1, 1 << n), repeat=n):
        ech = Echelon()
        ok = True
        for r in rows:
            if ech.add(r)[0] == 0:
                ok = False
                break
        if ok:
            out.append(rows)
    return tuple(out)


def find_isomorphism(M: FiniteModule, N: FiniteModule) -> ModuleMap | None:
    """Search for a degreewise iso commuting with the generator actions.

    On validated modules, commuting with every Sq(2^e) table forces full
    equivariance, since all other actions expand over the generators.
    """
    if M.algebra != N.algebra:
        raise ValueError(
            f"isomorphism search across algebras: {M.algebra} vs {N.algebra}"
        )
    if M.dims() != N.dims():
        return None
    degrees = sorted(M.dims())
    local_m = {d: M.basis_at(d) for d in degrees}
    local_n = {d: N.basis_at(d) for d in degrees}
    span = M.span
    ks = [k for k in (1 << e for e in range(span.bit_length())) if k <= span and M.algebra.contains((k,))]
    assignment: dict[int, tuple[int, ...]] = {}  # degree -> local matrix rows

    def global_row(d: int, p: int) -> int:
        # image of M's p-th basis vector at degree d, as a global N bitset
        out = 0
        row = assignment[d][p]
        for c in bits(row):
            out |= 1 << local_n[d][c]
        return out

    def image_of(vec: int) -> int | None:
        out = 0
        for i in bits(vec):
            d = M.degrees[i]
            if d not in assignment:
                return None
            out ^= global_row(d, local_m[d].index(i))
        return out

    def consistent(d: int) -> bool:
        for k in ks:
            source_deg = d - k
            if source_deg not in assignment:
                continue
            for p, i in enumerate(local_m[source_deg]):
                lhs = image_of(M.table(k)[i])
                rhs = N._apply_table(k, global_row(source_deg, p))
                if lhs is None or lhs != rhs:
                    return False
        return True

    def search(pos: int) -> bool:
        if pos == len(degrees):
            return True
        d = degrees[pos]
        for matrix in _invertible_matrices(len(local_m[d])):
            assignment[d] = matrix
            if consistent(d) and search(pos + 1):
                return True
        del assignment[d]
        return False

    if not search(0):
        return None
    rows = [0] * M.dim
    for d in degrees:
        for p, i in enumerate(local_m[d]):
            rows[i] = global_row(d, p)
    return ModuleMap(M, N, tuple(rows))
