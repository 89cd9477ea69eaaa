"""Finite groups as explicit multiplication tables.

Elements are integers ``0..n-1`` with the identity always at index 0.
The table is a row-major numpy array: ``table[i, j]`` is the index of the
product of element ``i`` by element ``j`` (in that order). Groups are
immutable after construction; every structural query is a pure read.
"""

from __future__ import annotations

import itertools
import json
import math
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .errors import (
    BudgetExceededError,
    InvalidParameterError,
    NoSuchGroupError,
    NotNormalError,
)
from .rng import XorShiftStream

ORDER_CAP = 5040
FULL_ASSOC_CAP = 256
SAMPLED_ASSOC_TRIALS = 10**6
_ASSOC_SAMPLE_SEED = 0x5EED


class FiniteGroup:
    """A finite group given by its full multiplication table."""

    def __init__(self, table: np.ndarray, labels: list[str], name: str = "G"):
        table = np.ascontiguousarray(np.asarray(table, dtype=np.uint16))
        self.table = table
        self.order = int(table.shape[0])
        self.labels = list(labels)
        self.name = name
        _validate_table(table, self.labels)
        self.inverse = _inverse_vector(table)
        self.table.setflags(write=False)
        self.inverse.setflags(write=False)

    @property
    def identity(self) -> int:
        return 0

    def mul(self, a: int, b: int) -> int:
        return int(self.table[a, b])

    def inv(self, a: int) -> int:
        return int(self.inverse[a])

    def power(self, g: int, e: int) -> int:
        """g**e by repeated squaring; negative e goes through the inverse."""
        if not 0 <= g < self.order:
            raise InvalidParameterError(f"element index {g} out of range")
        if e < 0:
            g, e = self.inv(g), -e
        acc, base = 0, g
        while e:
            if e & 1:
                acc = self.mul(acc, base)
            base = self.mul(base, base)
            e >>= 1
        return acc

    def elements(self) -> range:
        return range(self.order)

    def is_abelian(self) -> bool:
        return bool(np.array_equal(self.table, self.table.T))

    def __repr__(self) -> str:
        return f"FiniteGroup({self.name}, order={self.order})"

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, FiniteGroup)
            and self.order == other.order
            and np.array_equal(self.table, other.table)
        )

    def __hash__(self) -> int:
        return hash((self.order, self.table.tobytes()))

    # -- persistence ---------------------------------------------------

    def to_doc(self) -> dict:
        """JSON-ready document; flat row-major table."""
        return {
            "name": self.name,
            "order": self.order,
            "table": [int(v) for v in self.table.reshape(-1)],
            "labels": list(self.labels),
        }

    @classmethod
    def from_doc(cls, doc: dict) -> "FiniteGroup":
        try:
            order = int(doc["order"])
            flat = doc["table"]
            labels = list(doc["labels"])
            name = str(doc.get("name", "G"))
        except (KeyError, TypeError) as exc:
            raise InvalidParameterError(f"malformed group document: {exc}") from exc
        if order < 1 or len(flat) != order * order:
            raise InvalidParameterError("group table size does not match order")
        table = np.asarray(flat, dtype=np.int64).reshape(order, order)
        if table.min() < 0 or table.max() >= order:
            raise InvalidParameterError("group table entry out of range")
        return cls(table.astype(np.uint16), labels, name)

    def save(self, path: str | Path) -> None:
        Path(path).write_text(json.dumps(self.to_doc()))

    @classmethod
    def load(cls, path: str | Path) -> "FiniteGroup":
        return cls.from_doc(json.loads(Path(path).read_text()))


def _validate_table(table: np.ndarray, labels: list[str]) -> None:
    n = table.shape[0]
    if table.ndim != 2 or table.shape != (n, n) or n < 1:
        raise InvalidParameterError("multiplication table must be square and nonempty")
    if len(labels) != n:
        raise InvalidParameterError("label count must equal group order")
    ident = np.arange(n, dtype=table.dtype)
    # Latin square: every row and column is a permutation of 0..n-1.
    if not np.array_equal(np.sort(table, axis=1), np.broadcast_to(ident, (n, n))):
        raise InvalidParameterError("table rows are not permutations")
    if not np.array_equal(np.sort(table, axis=0), np.broadcast_to(ident[:, None], (n, n))):
        raise InvalidParameterError("table columns are not permutations")
    if not (np.array_equal(table[0], ident) and np.array_equal(table[:, 0], ident)):
        raise InvalidParameterError("element 0 is not a two-sided identity")
    if n <= FULL_ASSOC_CAP:
        # (ab)c == a(bc) for all triples, fully vectorized.
        if not np.array_equal(table[table, :], table[:, table]):
            raise InvalidParameterError("table is not associative")
    else:
        stream = XorShiftStream(_ASSOC_SAMPLE_SEED)
        triples = stream.integers(3 * SAMPLED_ASSOC_TRIALS, n).reshape(3, -1)
        a, b, c = triples
        if not np.array_equal(table[table[a, b], c], table[a, table[b, c]]):
            raise InvalidParameterError("table failed sampled associativity check")


def _inverse_vector(table: np.ndarray) -> np.ndarray:
    n = table.shape[0]
    rows, cols = np.nonzero(table == 0)
    inv = np.empty(n, dtype=np.uint16)
    inv[rows] = cols
    # Latin square + identity gives unique left/right inverses; they must agree.
    if not np.all(table[inv, np.arange(n)] == 0):
        raise InvalidParameterError("left and right inverses disagree")
    return inv


@dataclass(frozen=True)
class Subgroup:
    """A subgroup of ``parent`` given by a sorted tuple of member indices."""

    parent: FiniteGroup
    members: tuple[int, ...]

    def __post_init__(self):
        members = tuple(sorted(set(int(m) for m in self.members)))
        object.__setattr__(self, "members", members)
        n = self.parent.order
        m = np.array(members, dtype=np.int64)
        if members[0] != 0:
            raise InvalidParameterError("subgroup must contain the identity")
        if m.max() >= n:
            raise InvalidParameterError("subgroup member index out of range")
        if not np.all(np.isin(self.parent.inverse[m], m)):
            raise InvalidParameterError("subgroup not closed under inversion")
        if not np.all(np.isin(self.parent.table[np.ix_(m, m)], m)):
            raise InvalidParameterError("subgroup not closed under products")
        if n % len(members) != 0:
            raise InvalidParameterError("subgroup size does not divide group order")

    def __len__(self) -> int:
        return len(self.members)

    def __contains__(self, g: int) -> bool:
        return g in set(self.members)

    def is_normal(self) -> bool:
        """Full conjugation check; never sampled."""
        table = self.parent.table
        inv = self.parent.inverse
        m = np.array(self.members, dtype=np.int64)
        conj = table[table[:, m], inv[:, None].astype(np.int64)]
        return bool(np.all(np.isin(conj, m)))

    def as_group(self, name: str | None = None) -> tuple[FiniteGroup, dict[int, int]]:
        """Re-index members as a standalone group.

        Returns the group plus the map from parent element index to the new
        local index. Member 0 is the identity and sorts first, so the local
        identity lands at index 0 as required.
        """
        m = np.array(self.members, dtype=np.int64)
        sub_table = self.parent.table[np.ix_(m, m)]
        table = np.searchsorted(m, sub_table).astype(np.uint16)
        labels = [self.parent.labels[i] for i in self.members]
        local = {int(par): loc for loc, par in enumerate(self.members)}
        group = FiniteGroup(table, labels, name or f"{self.parent.name}-sub{len(m)}")
        return group, local


@dataclass
class CentralSeries:
    """Ascending central series together with the nilpotence verdict."""

    terms: list[Subgroup]
    nilpotent: bool
    nilpotency_class: int | None


@dataclass
class RootCountTable:
    """Counts of solutions of x**l = identity, one entry per divisor l."""

    order: int
    counts: dict[int, int] = field(default_factory=dict)

    def __getitem__(self, l: int) -> int:
        return self.counts[l]

    def items(self):
        return self.counts.items()


# -- constructors ------------------------------------------------------


def _check_cap(order: int, what: str) -> None:
    if order > ORDER_CAP:
        raise BudgetExceededError(
            f"{what} of order {order} exceeds the table cap ({ORDER_CAP})"
        )


def build_cyclic(n: int) -> FiniteGroup:
    """Additive group of residues modulo n."""
    if n < 1:
        raise InvalidParameterError("cyclic group order must be >= 1")
    _check_cap(n, "cyclic group")
    idx = np.arange(n, dtype=np.int64)
    table = np.mod(idx[:, None] + idx[None, :], n)
    return FiniteGroup(table, [str(i) for i in range(n)], f"Z{n}")


def build_dihedral(l: int) -> FiniteGroup:
    """Dihedral group of order 2l: rotations first, then reflections.

    Index a (0..l-1) is the rotation r^a; index l+a is the reflection r^a*f,
    with r^l = f^2 = 1 and f*r = r^-1*f.
    """
    if l < 1:
        raise InvalidParameterError("dihedral parameter must be >= 1")
    _check_cap(2 * l, "dihedral group")
    a = np.arange(l, dtype=np.int64)
    rot_rot = np.mod(a[:, None] + a[None, :], l)
    rot_ref = rot_rot + l
    ref_rot = np.mod(a[:, None] - a[None, :], l) + l
    ref_ref = np.mod(a[:, None] - a[None, :], l)
    table = np.block([[rot_rot, rot_ref], [ref_rot, ref_ref]])
    labels = ["e"] + [f"r^{k}" for k in range(1, l)]
    labels += ["f"] + [f"r^{k}f" for k in range(1, l)]
    return FiniteGroup(table, labels, f"D{l}")


def _perm_rank_rows(perms: np.ndarray, fact: list[int]) -> np.ndarray:
    """Lexicographic rank of each one-line permutation row."""
    l = perms.shape[-1]
    rank = np.zeros(perms.shape[:-1], dtype=np.int64)
    for t in range(l - 1):
        smaller_later = np.zeros(perms.shape[:-1], dtype=np.int64)
        for u in range(t + 1, l):
            smaller_later += perms[..., u] < perms[..., t]
        rank += smaller_later * fact[l - 1 - t]
    return rank


def build_symmetric(l: int) -> FiniteGroup:
    """Symmetric group on l letters, elements in lexicographic one-line order.

    Product convention: (sigma * tau)(x) = sigma(tau(x)), i.e. the right
    factor acts first.
    """
    if l < 1:
        raise InvalidParameterError("symmetric group degree must be >= 1")
    if l > 7:
        raise BudgetExceededError("symmetric group degree capped at 7")
    perms = np.array(list(itertools.permutations(range(l))), dtype=np.int8)
    m = len(perms)
    fact = [math.factorial(i) for i in range(l)]
    table = np.empty((m, m), dtype=np.uint16)
    block = max(1, (1 << 22) // max(1, m * l))
    for start in range(0, m, block):
        chunk = perms[start : start + block]
        composed = chunk[:, perms]  # [i, j, x] = chunk[i][perms[j][x]]
        table[start : start + block] = _perm_rank_rows(composed, fact)
    labels = ["".join(str(int(v)) for v in p) for p in perms]
    return FiniteGroup(table, labels, f"S{l}")


def build_direct_product(g1: FiniteGroup, g2: FiniteGroup) -> FiniteGroup:
    """Componentwise product; pair (a, b) gets index a*|G2| + b."""
    order = g1.order * g2.order
    _check_cap(order, "direct product")
    m = g2.order
    t1 = g1.table.astype(np.int64)
    t2 = g2.table.astype(np.int64)
    left = np.repeat(np.repeat(t1, m, axis=0), m, axis=1) * m
    right = np.tile(t2, (g1.order, g1.order))
    labels = [f"({la},{lb})" for la in g1.labels for lb in g2.labels]
    return FiniteGroup(left + right, labels, f"{g1.name}x{g2.name}")


def _is_odd_prime(p: int) -> bool:
    if p < 3 or p % 2 == 0:
        return False
    return all(p % d for d in range(3, int(math.isqrt(p)) + 1, 2))


def build_pq_group(p: int, q: int) -> FiniteGroup:
    """The non-abelian group of order p*q (odd primes, p < q, q = 1 mod p).

    Generators x, y with x^q = y^p = 1 and y*x = x^u*y, where u is the
    smallest integer in [2, q-1] with u^p = 1 (mod q). Element index
    a*p + b stands for x^a * y^b.
    """
    if not (_is_odd_prime(p) and _is_odd_prime(q)) or p >= q:
        raise InvalidParameterError("need odd primes p < q")
    if q % p != 1:
        raise NoSuchGroupError(
            f"no non-abelian group of order {p}*{q}: {q} is not 1 mod {p}"
        )
    _check_cap(p * q, "pq group")
    u = next(u for u in range(2, q) if pow(u, p, q) == 1)
    n = p * q
    a_of = np.arange(n, dtype=np.int64) // p
    b_of = np.arange(n, dtype=np.int64) % p
    u_pow = np.array([pow(u, int(b), q) for b in range(p)], dtype=np.int64)
    # (x^a1 y^b1)(x^a2 y^b2) = x^(a1 + a2*u^b1 mod q) y^(b1+b2 mod p)
    a_res = np.mod(a_of[:, None] + a_of[None, :] * u_pow[b_of][:, None], q)
    b_res = np.mod(b_of[:, None] + b_of[None, :], p)
    table = a_res * p + b_res

    def lab(a, b):
        if a == 0 and b == 0:
            return "e"
        xa = "" if a == 0 else ("x" if a == 1 else f"x^{a}")
        yb = "" if b == 0 else ("y" if b == 1 else f"y^{b}")
        return xa + yb

    labels = [lab(int(a_of[i]), int(b_of[i])) for i in range(n)]
    return FiniteGroup(table, labels, f"G{n}(p={p},q={q})")


# -- structural queries ------------------------------------------------


def element_order(group: FiniteGroup, g: int) -> int:
    """Smallest m >= 1 with g**m = identity."""
    if not 0 <= g < group.order:
        raise InvalidParameterError(f"element index {g} out of range")
    m, x = 1, g
    while x != 0:
        x = group.mul(x, g)
        m += 1
    return m


def element_orders(group: FiniteGroup) -> np.ndarray:
    orders = np.empty(group.order, dtype=np.int64)
    for g in group.elements():
        orders[g] = element_order(group, g)
    return orders


def center(group: FiniteGroup) -> Subgroup:
    """Elements commuting with everything: row g equals column g."""
    central = np.all(group.table == group.table.T, axis=1)
    return Subgroup(group, tuple(int(i) for i in np.nonzero(central)[0]))


def subgroup_generated(group: FiniteGroup, seeds) -> Subgroup:
    """Closure of the seed set under products (and hence inversion)."""
    seeds = [int(s) for s in seeds]
    for s in seeds:
        if not 0 <= s < group.order:
            raise InvalidParameterError(f"seed index {s} out of range")
    members = {0}
    frontier = [0]
    gens = set(seeds) | {int(group.inverse[s]) for s in seeds}
    while frontier:
        a = frontier.pop()
        for g in gens:
            prod = group.mul(a, g)
            if prod not in members:
                members.add(prod)
                frontier.append(prod)
    return Subgroup(group, tuple(sorted(members)))


def quotient(
    group: FiniteGroup, sub: Subgroup
) -> tuple[FiniteGroup, np.ndarray, list[int]]:
    """Quotient by a normal subgroup.

    Returns ``(Q, coset_map, reps)`` where ``coset_map[g]`` is the coset
    index of g and ``reps[c]`` is the smallest parent element in coset c.
    Coset 0 is the subgroup itself.
    """
    if sub.parent is not group:
        raise InvalidParameterError("subgroup belongs to a different group")
    if not sub.is_normal():
        raise NotNormalError("subgroup is not normal; quotient undefined")
    n = group.order
    coset_map = np.full(n, -1, dtype=np.int64)
    reps: list[int] = []
    for g in range(n):
        if coset_map[g] >= 0:
            continue
        c = len(reps)
        reps.append(g)
        for h in sub.members:
            coset_map[group.mul(g, h)] = c
    t = len(reps)
    table = np.empty((t, t), dtype=np.uint16)
    for c1, r1 in enumerate(reps):
        row = group.table[r1, reps]
        table[c1] = coset_map[row]
    labels = [f"[{group.labels[r]}]" for r in reps]
    q = FiniteGroup(table, labels, f"{group.name}/H{len(sub)}")
    return q, coset_map, reps


def upper_central_series(group: FiniteGroup) -> CentralSeries:
    """Iterated centers: Z_{i+1} is the preimage of the center of G/Z_i."""
    terms = [Subgroup(group, (0,))]
    while True:
        current = terms[-1]
        if len(current) == group.order:
            break
        q, coset_map, _ = quotient(group, current)
        central_cosets = set(center(q).members)
        lifted = tuple(
            int(g) for g in group.elements() if int(coset_map[g]) in central_cosets
        )
        if len(lifted) == len(current):
            break
        terms.append(Subgroup(group, lifted))
    nilpotent = len(terms[-1]) == group.order
    cls = len(terms) - 1 if nilpotent else None
    return CentralSeries(terms, nilpotent, cls)


def divisors(n: int) -> list[int]:
    small = [d for d in range(1, int(math.isqrt(n)) + 1) if n % d == 0]
    large = [n // d for d in reversed(small) if d * d != n]
    return small + large


def root_counts(group: FiniteGroup) -> RootCountTable:
    """R_l = #{x : x^l = identity} for every divisor l of the order.

    x^l = 1 exactly when the order of x divides l, so one pass over
    element orders covers all divisors.
    """
    orders = element_orders(group)
    counts = {}
    for l in divisors(group.order):
        counts[l] = int(np.count_nonzero(l % orders == 0))
    return RootCountTable(group.order, counts)
