"""q^2-cyclotomic cosets modulo n and the -q residue map on defining sets."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from math import gcd
from typing import Iterable, Iterator


class CosetError(ValueError):
    pass


@dataclass(frozen=True)
class CosetContext:
    n: int
    q: int

    def __post_init__(self):
        if self.n < 2:
            raise CosetError(f"length n must be >= 2, got {self.n}")
        if gcd(self.n, self.q) != 1:
            raise CosetError(f"gcd(n={self.n}, q={self.q}) != 1")

    @property
    def multiplier(self) -> int:
        return (self.q * self.q) % self.n


@dataclass(frozen=True)
class DefiningSet:
    """A union of q^2-cyclotomic cosets, stored as sorted residues in [0, n-1].

    Closure under multiplication by q^2 is checked on construction.
    """

    context: CosetContext
    residues: tuple[int, ...]

    def __post_init__(self):
        n = self.context.n
        res = tuple(sorted(set(self.residues)))
        if res and (res[0] < 0 or res[-1] >= n):
            raise CosetError(f"residues must lie in [0, {n - 1}]")
        object.__setattr__(self, "residues", res)
        mult = self.context.multiplier
        members = set(res)
        if not {(r * mult) % n for r in res} <= members:
            r = next(r for r in res if (r * mult) % n not in members)
            raise CosetError(f"set is not closed under multiplication by q^2: {r} -> {(r * mult) % n}")

    @classmethod
    def _trusted(cls, context: CosetContext, members) -> DefiningSet:
        # Callers guarantee closure (set algebra on closed sets, -q images).
        obj = object.__new__(cls)
        object.__setattr__(obj, "context", context)
        object.__setattr__(obj, "residues", tuple(sorted(members)))
        return obj

    @classmethod
    def from_integers(cls, context: CosetContext, values: Iterable[int]) -> DefiningSet:
        """Reduce arbitrary integers mod n (negative indices allowed)."""
        return cls(context, tuple({v % context.n for v in values}))

    @classmethod
    def empty(cls, context: CosetContext) -> DefiningSet:
        return cls(context, ())

    @property
    def n(self) -> int:
        return self.context.n

    @property
    def q(self) -> int:
        return self.context.q

    def __len__(self) -> int:
        return len(self.residues)

    def __iter__(self) -> Iterator[int]:
        return iter(self.residues)

    def __contains__(self, r: int) -> bool:
        return r % self.n in self.as_set()

    def as_set(self) -> frozenset[int]:
        return self._members

    @cached_property
    def _members(self) -> frozenset[int]:
        return frozenset(self.residues)

    def _same(self, other: DefiningSet):
        if other.context != self.context:
            raise CosetError("defining sets belong to different contexts")

    def __or__(self, other: DefiningSet) -> DefiningSet:
        self._same(other)
        return DefiningSet._trusted(self.context, self.as_set() | other.as_set())

    def __and__(self, other: DefiningSet) -> DefiningSet:
        self._same(other)
        return DefiningSet._trusted(self.context, self.as_set() & other.as_set())

    def __sub__(self, other: DefiningSet) -> DefiningSet:
        self._same(other)
        return DefiningSet._trusted(self.context, self.as_set() - other.as_set())

    def symmetric_view(self) -> list[int]:
        """Residues mapped into (-n/2, n/2], sorted."""
        n = self.n
        return sorted(r - n if r > n // 2 else r for r in self.residues)


@dataclass(frozen=True)
class Decomposition:
    t_ss: DefiningSet
    t_as: DefiningSet


def _orbit(i: int, ctx: CosetContext) -> tuple[int, ...]:
    orbit = [i]
    x = (i * ctx.multiplier) % ctx.n
    while x != i:
        orbit.append(x)
        x = (x * ctx.multiplier) % ctx.n
    return tuple(sorted(orbit))


def cyclotomic_coset(i: int, ctx: CosetContext) -> DefiningSet:
    if not 0 <= i < ctx.n:
        raise CosetError(f"residue {i} out of range [0, {ctx.n - 1}]")
    return DefiningSet(ctx, _orbit(i, ctx))


def coset_partition(ctx: CosetContext) -> list[DefiningSet]:
    """All cosets modulo n, ordered by least representative."""
    seen = set()
    cosets = []
    for i in range(ctx.n):
        if i in seen:
            continue
        orbit = _orbit(i, ctx)
        seen.update(orbit)
        cosets.append(DefiningSet(ctx, orbit))
    return cosets


def coset_union(ctx: CosetContext, representatives: Iterable[int]) -> DefiningSet:
    """Union of C_i over the given (possibly negative) representatives."""
    members: set[int] = set()
    for i in representatives:
        if i % ctx.n not in members:
            members.update(_orbit(i % ctx.n, ctx))
    return DefiningSet._trusted(ctx, members)


def neg_q_image(S: DefiningSet) -> DefiningSet:
    """{-q s mod n : s in S}."""
    n, q = S.n, S.q
    return DefiningSet._trusted(S.context, {(-q * s) % n for s in S.residues})


def decompose_defining_set(T: DefiningSet) -> Decomposition:
    t_ss = neg_q_image(T) & T
    return Decomposition(t_ss=t_ss, t_as=T - t_ss)


def max_consecutive_run(T: DefiningSet) -> int:
    """Longest run of circularly consecutive residues in T (n for the full set)."""
    n = T.n
    if len(T) == n:
        return n
    if not T.residues:
        return 0
    members = T.as_set()
    best = 0
    for r in T.residues:
        if (r - 1) % n in members:
            continue  # not the start of a run
        length = 1
        while (r + length) % n in members:
            length += 1
        best = max(best, length)
    return best
