"""Exact equivalence-class counts for linear codes.

Codes are subspaces of F_q^n stored in reduced row echelon form.  Two
independent counting routes are provided:

* ``census_burnside`` averages fixed-point counts over the whole group.
  Permutation groups are summed per cycle type; monomial and semilinear
  groups are summed element by element using the permutation each group
  element induces on the list of subspaces (vectorised with numpy).
* ``census_orbits`` walks orbits by closure under a small generating set.
"""

from __future__ import annotations

import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field as dc_field
from functools import lru_cache
from itertools import combinations, product
from math import factorial
from typing import Iterator

import numpy as np

from .combinatorics import group_order, normalize_kind, qbinom, sum_qbinom
from .field import FieldSpec, primitive_element

ENUMERATION_CEILING = 10**7
WORK_CEILING = 10**9


class CeilingExceeded(RuntimeError):
    """A configured enumeration or work budget would be exceeded."""


Basis = tuple[tuple[int, ...], ...]


@dataclass(frozen=True, eq=False)
class Subspace:
    field: FieldSpec = dc_field(repr=False)
    n: int
    basis: Basis

    @property
    def k(self) -> int:
        return len(self.basis)

    def __eq__(self, other):
        return (
            isinstance(other, Subspace)
            and self.n == other.n
            and self.basis == other.basis
            and self.field == other.field
        )

    def __hash__(self):
        return hash((self.n, self.basis))


def rref(f: FieldSpec, rows, n: int) -> Basis:
    """Reduced row echelon form of the row space, zero rows dropped."""
    add, mul, neg, inv = f.add_table, f.mul_table, f.neg_table, f.inv_table
    m = [list(r) for r in rows]
    for r in m:
        if len(r) != n:
            raise ValueError(f"row {r} does not have length {n}")
    rank = 0
    for c in range(n):
        if rank == len(m):
            break
        piv = next((i for i in range(rank, len(m)) if m[i][c]), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        prow = m[rank]
        s = prow[c]
        if s != 1:
            srow = mul[inv[s]]
            prow = m[rank] = [srow[x] for x in prow]
        for i in range(len(m)):
            if i != rank and m[i][c]:
                arow = mul[neg[m[i][c]]]
                m[i] = [add[x][arow[y]] for x, y in zip(m[i], prow)]
        rank += 1
    return tuple(tuple(r) for r in m[:rank])


def canonicalize(f: FieldSpec, rows, n: int | None = None) -> Subspace:
    rows = [tuple(r) for r in rows]
    if n is None:
        if not rows:
            raise ValueError("n is required for an empty generating set")
        n = len(rows[0])
    return Subspace(f, n, rref(f, rows, n))


def enumerate_grassmannian(
    f: FieldSpec, n: int, k: int, ceiling: int = ENUMERATION_CEILING
) -> Iterator[Subspace]:
    """Every k-dimensional subspace of F_q^n, once each, in RREF.

    Order: pivot sets lexicographically, then free entries in
    ``itertools.product`` order.
    """
    if not 0 <= k <= n:
        raise ValueError(f"need 0 <= k <= n, got k={k}, n={n}")
    size = qbinom(n, k, f.q)
    if size > ceiling:
        raise CeilingExceeded(f"|G({k},{n})| = {size} over enumeration ceiling {ceiling}")
    for pivots in combinations(range(n), k):
        pivset = set(pivots)
        free = [(i, j) for i, pc in enumerate(pivots) for j in range(pc + 1, n) if j not in pivset]
        template = [[0] * n for _ in range(k)]
        for i, pc in enumerate(pivots):
            template[i][pc] = 1
        for values in product(range(f.q), repeat=len(free)):
            rows = [row[:] for row in template]
            for (i, j), v in zip(free, values):
                rows[i][j] = v
            yield Subspace(f, n, tuple(tuple(r) for r in rows))


def enumerate_projective(f: FieldSpec, n: int, ceiling: int = ENUMERATION_CEILING) -> Iterator[Subspace]:
    """All subspaces of F_q^n, by increasing dimension."""
    size = sum_qbinom(n, f.q)
    if size > ceiling:
        raise CeilingExceeded(f"|G({n})| = {size} over enumeration ceiling {ceiling}")
    for k in range(n + 1):
        yield from enumerate_grassmannian(f, n, k, ceiling)


# -- group elements ---------------------------------------------------------

@dataclass(frozen=True)
class GroupElement:
    """x -> P D sigma(x): Frobenius power, then coordinate scaling, then
    the coordinate permutation sending position i to ``perm[i]``."""

    kind: str
    perm: tuple[int, ...]
    scale: tuple[int, ...]
    frob_exp: int = 0

    def __post_init__(self):
        object.__setattr__(self, "kind", normalize_kind(self.kind))
        n = len(self.perm)
        if sorted(self.perm) != list(range(n)):
            raise ValueError(f"{self.perm} is not a permutation")
        if len(self.scale) != n or 0 in self.scale:
            raise ValueError("scale must be n nonzero field elements")
        if self.kind == "permutation" and (any(s != 1 for s in self.scale) or self.frob_exp):
            raise ValueError("permutation elements have unit scale and no Frobenius")
        if self.kind == "monomial" and self.frob_exp:
            raise ValueError("monomial elements have no Frobenius part")

    @property
    def n(self) -> int:
        return len(self.perm)

    @classmethod
    def identity(cls, kind: str, n: int) -> "GroupElement":
        return cls(kind, tuple(range(n)), (1,) * n, 0)

    @classmethod
    def permutation(cls, perm, kind: str = "permutation") -> "GroupElement":
        perm = tuple(perm)
        return cls(kind, perm, (1,) * len(perm), 0)

    @classmethod
    def diagonal(cls, scale, kind: str = "monomial") -> "GroupElement":
        scale = tuple(scale)
        return cls(kind, tuple(range(len(scale))), scale, 0)

    def descriptor(self) -> str:
        s = f"perm={list(self.perm)}"
        if self.kind != "permutation":
            s += f" scale={list(self.scale)}"
        if self.kind == "semilinear":
            s += f" frob={self.frob_exp}"
        return s


_RANK = {"permutation": 0, "monomial": 1, "semilinear": 2}


def compose(f: FieldSpec, g: GroupElement, h: GroupElement) -> GroupElement:
    """The element acting as g after h."""
    if g.n != h.n:
        raise ValueError("dimension mismatch")
    frob = f.frob_table[g.frob_exp]
    mul = f.mul_table
    scale = tuple(mul[g.scale[h.perm[i]]][frob[h.scale[i]]] for i in range(g.n))
    perm = tuple(g.perm[h.perm[i]] for i in range(g.n))
    kind = max(g.kind, h.kind, key=_RANK.__getitem__)
    return GroupElement(kind, perm, scale, (g.frob_exp + h.frob_exp) % f.h)


def inverse(f: FieldSpec, g: GroupElement) -> GroupElement:
    n = g.n
    e = (-g.frob_exp) % f.h
    frob = f.frob_table[e]
    inv_perm = [0] * n
    for i, j in enumerate(g.perm):
        inv_perm[j] = i
    # D^-1 P^-1 = P^-1 D~ with D~[perm[i]] = 1/D[i]
    moved = [0] * n
    for i in range(n):
        moved[g.perm[i]] = f.inv_table[g.scale[i]]
    return GroupElement(g.kind, tuple(inv_perm), tuple(frob[s] for s in moved), e)


def apply_vector(f: FieldSpec, g: GroupElement, x) -> tuple[int, ...]:
    frob = f.frob_table[g.frob_exp]
    mul = f.mul_table
    out = [0] * g.n
    for i, xi in enumerate(x):
        out[g.perm[i]] = mul[g.scale[i]][frob[xi]]
    return tuple(out)


def act(f: FieldSpec, g: GroupElement, V: Subspace) -> Subspace:
    if g.n != V.n:
        raise ValueError("group element and subspace live in different dimensions")
    rows = [apply_vector(f, g, row) for row in V.basis]
    return Subspace(f, V.n, rref(f, rows, V.n))


def fixed_count(
    g: GroupElement, f: FieldSpec, n: int, k: int, ceiling: int = ENUMERATION_CEILING
) -> int:
    """|Fix(g, G(k, n))| by scanning the whole Grassmannian."""
    return sum(1 for V in enumerate_grassmannian(f, n, k, ceiling) if act(f, g, V) == V)


# -- conjugacy classes of S_n -------------------------------------------------

def partitions(n: int, largest: int | None = None) -> Iterator[tuple[int, ...]]:
    if largest is None:
        largest = n
    if n == 0:
        yield ()
        return
    for first in range(min(n, largest), 0, -1):
        for rest in partitions(n - first, first):
            yield (first,) + rest


def cycle_type_representative(shape: tuple[int, ...]) -> tuple[int, ...]:
    perm = []
    start = 0
    for length in shape:
        perm.extend(start + (i + 1) % length for i in range(length))
        start += length
    return tuple(perm)


def cycle_class_size(shape: tuple[int, ...]) -> int:
    n = sum(shape)
    denom = 1
    for length in set(shape):
        mult = shape.count(length)
        denom *= length**mult * factorial(mult)
    return factorial(n) // denom


# -- results ----------------------------------------------------------------

@dataclass
class CensusResult:
    kind: str
    n: int
    k: int | str
    q: int
    count: int
    method: str
    group_order: int
    fix_sum: int | None = None
    fix_profile: dict[str, int] | None = None
    elapsed: float = 0.0

    def __post_init__(self):
        if self.fix_sum is not None and self.fix_sum % self.group_order:
            raise ArithmeticError("Burnside sum not divisible by group order")


class SubspaceTable:
    """Indexed list of the subspaces a group acts on."""

    def __init__(self, f: FieldSpec, n: int, k: int | None, ceiling: int = ENUMERATION_CEILING):
        self.field, self.n, self.k = f, n, k
        if k is None:
            self.items = list(enumerate_projective(f, n, ceiling))
        else:
            self.items = list(enumerate_grassmannian(f, n, k, ceiling))
        self.index = {V.basis: i for i, V in enumerate(self.items)}

    def __len__(self):
        return len(self.items)

    def induced(self, g: GroupElement) -> np.ndarray:
        """pi with items[pi[i]] == act(g, items[i])."""
        f, n = self.field, self.n
        out = np.empty(len(self.items), dtype=np.int32)
        for i, V in enumerate(self.items):
            rows = [apply_vector(f, g, row) for row in V.basis]
            out[i] = self.index[rref(f, rows, n)]
        return out


@lru_cache(maxsize=64)
def _table(f: FieldSpec, n: int, k: int | None, ceiling: int) -> SubspaceTable:
    return SubspaceTable(f, n, k, ceiling)


def _check_work(kind, f, n, size, work_ceiling):
    order = group_order(kind, n, f)
    if order * size > work_ceiling:
        raise CeilingExceeded(
            f"|G| * |X| = {order} * {size} over work ceiling {work_ceiling}"
        )
    return order


def _acted_size(f, n, k):
    return sum_qbinom(n, f.q) if k is None else qbinom(n, k, f.q)


def _perm_sum(table, n, keep_profile):
    total, profile = 0, {} if keep_profile else None
    for shape in partitions(n):
        pi = table.induced(GroupElement.permutation(cycle_type_representative(shape)))
        fixed = int(np.count_nonzero(pi == np.arange(len(table))))
        total += cycle_class_size(shape) * fixed
        if profile is not None:
            profile["cycle_type=" + "+".join(map(str, shape))] = fixed
    return total, profile


def _all_permutation_images(table, n) -> tuple[list[tuple[int, ...]], np.ndarray]:
    """Induced permutations of every coordinate permutation, via BFS on
    adjacent transpositions (each new one is a single composition)."""
    size = len(table)
    gens = []
    for i in range(n - 1):
        t = list(range(n))
        t[i], t[i + 1] = i + 1, i
        gens.append((tuple(t), table.induced(GroupElement.permutation(t))))
    ident = tuple(range(n))
    seen = {ident: np.arange(size, dtype=np.int32)}
    frontier = [ident]
    while frontier:
        nxt = []
        for p in frontier:
            pi = seen[p]
            for t, tpi in gens:
                tp = tuple(t[p[i]] for i in range(n))
                if tp not in seen:
                    seen[tp] = tpi[pi]
                    nxt.append(tp)
        frontier = nxt
    perms = sorted(seen)
    return perms, np.stack([seen[p] for p in perms])


def _scaled_sum(kind, table, n, workers, keep_profile):
    f = table.field
    size = len(table)
    ident = np.arange(size, dtype=np.int32)
    alpha = primitive_element(f)
    perms, stack = _all_permutation_images(table, n)

    # powers[i][e]: coordinate i scaled by alpha**e
    powers = []
    for i in range(n):
        sc = [1] * n
        sc[i] = alpha
        step = table.induced(GroupElement.diagonal(sc))
        row = [ident]
        for _ in range(f.q - 2):
            row.append(step[row[-1]])
        powers.append(row)
    frob_pows = [ident]
    if kind == "semilinear" and f.h > 1:
        step = table.induced(GroupElement("semilinear", tuple(range(n)), (1,) * n, 1))
        for _ in range(f.h - 1):
            frob_pows.append(step[frob_pows[-1]])

    alpha_pow = [1]
    for _ in range(f.q - 2):
        alpha_pow.append(f.mul_table[alpha_pow[-1]][alpha])

    units = [(e, exps) for e in range(len(frob_pows)) for exps in product(range(f.q - 1), repeat=n)]

    def work(chunk):
        total, profile = 0, {} if keep_profile else None
        for e, exps in chunk:
            pi = frob_pows[e]
            for i, x in enumerate(exps):
                if x:
                    pi = powers[i][x][pi]
            fixed = np.count_nonzero(stack[:, pi] == ident, axis=1)
            total += int(fixed.sum())
            if profile is not None:
                scale = [alpha_pow[x] for x in exps]
                for p, c in zip(perms, fixed.tolist()):
                    profile[GroupElement(kind, p, tuple(scale), e).descriptor()] = c
        return total, profile

    if workers <= 1:
        total, profile = work(units)
        return total, (dict(sorted(profile.items())) if profile is not None else None)
    nchunks = min(len(units), workers * 4)
    chunks = [units[i::nchunks] for i in range(nchunks)]
    total, profile = 0, {} if keep_profile else None
    with ThreadPoolExecutor(max_workers=workers) as pool:
        for t, prof in pool.map(work, chunks):
            total += t
            if profile is not None:
                profile.update(prof)
    if profile is not None:
        profile = dict(sorted(profile.items()))
    return total, profile


def burnside_fix_sum(
    kind: str,
    f: FieldSpec,
    n: int,
    k: int | None,
    *,
    workers: int = 1,
    keep_profile: bool = False,
    work_ceiling: int = WORK_CEILING,
    ceiling: int = ENUMERATION_CEILING,
) -> tuple[int, int, dict | None]:
    """(sum over g of |Fix(g, X)|, |G|, profile) with X = G(k, n) or G(n)."""
    kind = normalize_kind(kind)
    if n < 1:
        raise ValueError("n must be >= 1")
    order = _check_work(kind, f, n, _acted_size(f, n, k), work_ceiling)
    table = _table(f, n, k, ceiling)
    if kind == "permutation":
        total, profile = _perm_sum(table, n, keep_profile)
    else:
        total, profile = _scaled_sum(kind, table, n, workers, keep_profile)
    return total, order, profile


def census_burnside(kind, f: FieldSpec, n: int, k: int | None, **opts) -> CensusResult:
    t0 = time.perf_counter()
    total, order, profile = burnside_fix_sum(kind, f, n, k, **opts)
    count, rem = divmod(total, order)
    if rem:
        raise ArithmeticError(f"fixed-point sum {total} not divisible by |G| = {order}")
    return CensusResult(
        normalize_kind(kind), n, "all" if k is None else k, f.q, count, "burnside",
        order, total, profile, time.perf_counter() - t0,
    )


def generators(kind: str, f: FieldSpec, n: int) -> list[GroupElement]:
    """Adjacent transpositions, one coordinate scaling by a primitive
    element, and the Frobenius map, as the group requires."""
    kind = normalize_kind(kind)
    gens = []
    for i in range(n - 1):
        t = list(range(n))
        t[i], t[i + 1] = i + 1, i
        gens.append(GroupElement.permutation(t, kind))
    if kind != "permutation" and f.q > 2:
        sc = [1] * n
        sc[0] = primitive_element(f)
        gens.append(GroupElement(kind, tuple(range(n)), tuple(sc), 0))
    if kind == "semilinear" and f.h > 1:
        gens.append(GroupElement(kind, tuple(range(n)), (1,) * n, 1))
    return gens


def orbits(kind, f: FieldSpec, n: int, k: int | None, ceiling: int = ENUMERATION_CEILING):
    """Orbits as lists of subspaces, each found by breadth-first closure."""
    gens = generators(kind, f, n)
    space = enumerate_projective(f, n, ceiling) if k is None else enumerate_grassmannian(f, n, k, ceiling)
    seen: set[Basis] = set()
    out = []
    for V in space:
        if V.basis in seen:
            continue
        seen.add(V.basis)
        orbit, frontier = [V], [V]
        while frontier:
            nxt = []
            for W in frontier:
                for g in gens:
                    U = act(f, g, W)
                    if U.basis not in seen:
                        seen.add(U.basis)
                        orbit.append(U)
                        nxt.append(U)
            frontier = nxt
        out.append(orbit)
    return out


def census_orbits(
    kind, f: FieldSpec, n: int, k: int | None,
    *, work_ceiling: int = WORK_CEILING, ceiling: int = ENUMERATION_CEILING, **_ignored,
) -> CensusResult:
    kind = normalize_kind(kind)
    if n < 1:
        raise ValueError("n must be >= 1")
    t0 = time.perf_counter()
    order = _check_work(kind, f, n, _acted_size(f, n, k), work_ceiling)
    count = len(orbits(kind, f, n, k, ceiling))
    return CensusResult(
        kind, n, "all" if k is None else k, f.q, count, "orbits", order,
        elapsed=time.perf_counter() - t0,
    )


class MethodDisagreement(AssertionError):
    pass


def census(kind, f: FieldSpec, n: int, k: int | None, method: str = "burnside", **opts) -> CensusResult:
    if method == "burnside":
        return census_burnside(kind, f, n, k, **opts)
    if method == "orbits":
        return census_orbits(kind, f, n, k, **opts)
    if method == "both":
        b = census_burnside(kind, f, n, k, **opts)
        o = census_orbits(kind, f, n, k, **opts)
        if b.count != o.count:
            raise MethodDisagreement(f"burnside {b.count} != orbits {o.count}")
        b.method = "both"
        b.elapsed += o.elapsed
        return b
    raise ValueError(f"unknown method {method!r}")


def census_all_dims(kind, f: FieldSpec, n: int, method: str = "burnside", **opts) -> CensusResult:
    """Classes on the whole projective space G(n), counted directly."""
    return census(kind, f, n, None, method, **opts)


def kernel_size(kind: str, f: FieldSpec, n: int) -> int:
    """Elements counted as acting trivially: the identity for permutation
    groups, the q-1 scalar matrices otherwise (for semilinear groups only
    the scalars without a Frobenius part)."""
    return 1 if normalize_kind(kind) == "permutation" else f.q - 1


def fix_sum_excess(kind, f: FieldSpec, n: int, k: int, **opts) -> int:
    """sum of |Fix(g, G(k,n))| over g outside the scalar kernel."""
    total, _, _ = burnside_fix_sum(kind, f, n, k, **opts)
    return total - kernel_size(kind, f, n) * qbinom(n, k, f.q)
