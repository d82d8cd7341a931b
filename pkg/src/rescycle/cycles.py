"""Combinatorial cycle oracle for monomial ideals.

Everything here works on exponent vectors only, so it is independent of the
residue-current machinery it is used to check.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations, product
from math import prod
from typing import Dict, FrozenSet, Iterable, List, Sequence, Tuple

from .symalg import Poly, Scalar, is_conj, var_of

Exps = Tuple[int, ...]


def divides(a: Sequence[int], b: Sequence[int]) -> bool:
    return all(x <= y for x, y in zip(a, b))


def minimalize(gens: Iterable[Exps]) -> Tuple[Exps, ...]:
    gs = sorted(set(tuple(g) for g in gens), key=lambda g: (sum(g), g))
    out: List[Exps] = []
    for g in gs:
        if not any(divides(h, g) for h in out):
            out.append(g)
    return tuple(sorted(out))


@dataclass(frozen=True)
class MonomialIdeal:
    variables: Tuple[str, ...]
    gens: Tuple[Exps, ...]

    def __init__(self, variables: Sequence[str], gens: Iterable[Sequence[int]]):
        variables = tuple(variables)
        gens = [tuple(g) for g in gens]
        for g in gens:
            if len(g) != len(variables) or any(e < 0 for e in g):
                raise ValueError(f"bad exponent vector {g}")
        object.__setattr__(self, "variables", variables)
        object.__setattr__(self, "gens", minimalize(gens))

    @classmethod
    def from_polys(cls, variables: Sequence[str], polys: Iterable[Poly]) -> "MonomialIdeal":
        gens = []
        for p in polys:
            if not p.is_monomial():
                raise ValueError(f"non-monomial generator {p.to_str(variables)}")
            (m, _), = p.terms.items()
            e = [0] * len(variables)
            for g, k in m:
                if is_conj(g):
                    raise ValueError("ideal generators must be holomorphic")
                e[var_of(g)] = k
            gens.append(tuple(e))
        return cls(variables, gens)

    @property
    def nvars(self) -> int:
        return len(self.variables)

    def contains(self, exps: Sequence[int]) -> bool:
        return any(divides(g, exps) for g in self.gens)

    def gen_polys(self) -> List[Poly]:
        return [Poly.from_exponents(g) for g in self.gens]

    def localize(self, prime: Iterable[int]) -> Tuple[Tuple[int, ...], Tuple[Exps, ...]]:
        """Invert the variables off ``prime``: returns (prime vars, gens in them)."""
        pv = tuple(sorted(prime))
        return pv, minimalize(tuple(g[i] for i in pv) for g in self.gens)

    def __str__(self):
        return "(" + ", ".join(Poly.from_exponents(g).to_str(self.variables) for g in self.gens) + ")"


def _check_proper(J: MonomialIdeal):
    if not J.gens:
        raise ValueError("zero ideal has no minimal primes here")
    if any(not any(g) for g in J.gens):
        raise ValueError("unit ideal")


def minimal_primes(J: MonomialIdeal) -> List[FrozenSet[int]]:
    """Minimal transversals of the generator supports, smallest first."""
    _check_proper(J)
    supports = [frozenset(i for i, e in enumerate(g) if e) for g in J.gens]
    universe = sorted(frozenset().union(*supports))
    found: List[FrozenSet[int]] = []
    for size in range(1, len(universe) + 1):
        for cand in combinations(universe, size):
            s = frozenset(cand)
            if any(f <= s for f in found):
                continue
            if all(s & sup for sup in supports):
                found.append(s)
    return sorted(found, key=lambda s: (len(s), sorted(s)))


def _standard_count(gens: Sequence[Exps], npv: int) -> int:
    """Number of monomials outside an Artinian monomial ideal (box enumeration)."""
    bounds = []
    for i in range(npv):
        pure = [g[i] for g in gens if all(g[j] == 0 for j in range(npv) if j != i) and g[i] > 0]
        if not pure:
            raise ValueError("localized ideal is not primary to the maximal ideal")
        bounds.append(min(pure))
    count = 0
    for e in product(*(range(b) for b in bounds)):
        if not any(divides(g, e) for g in gens):
            count += 1
    return count


def multiplicity_along(J: MonomialIdeal, P: Iterable[int]) -> int:
    P = frozenset(P)
    if P not in minimal_primes(J):
        raise ValueError("not a minimal prime; use length_along for embedded primes")
    pv, gens = J.localize(P)
    return _standard_count(gens, len(pv))


def length_along(J: MonomialIdeal, P: Iterable[int]) -> int:
    """Length of ``(J : m^inf) / J`` for ``P`` the maximal ideal."""
    P = frozenset(P)
    if P != frozenset(range(J.nvars)) or J.nvars > 3:
        raise ValueError("length_along supports only the maximal ideal in <= 3 variables")
    _check_proper(J)
    n = J.nvars
    top = [max(g[i] for g in J.gens) for i in range(n)]

    def in_saturation(u):
        # u*x_i^N in J for large N  <=>  some generator divides u off coordinate i
        return all(any(all(g[j] <= u[j] for j in range(n) if j != i) for g in J.gens) for i in range(n))

    count = 0
    for u in product(*(range(t + 2) for t in top)):
        if J.contains(u) or not in_saturation(u):
            continue
        if any(u[i] == top[i] + 1 for i in range(n)):
            raise ValueError("saturation quotient has infinite length")
        count += 1
    return count


@dataclass
class Cycle:
    """Formal combination of coordinate subspaces ``V(S)``."""

    masses: Dict[FrozenSet[int], Scalar] = field(default_factory=dict)

    def __post_init__(self):
        self.masses = {frozenset(k): v for k, v in self.masses.items() if v}

    @classmethod
    def point(cls, S: Iterable[int], mass=1) -> "Cycle":
        if not isinstance(mass, Scalar):
            mass = Scalar(mass)
        return cls({frozenset(S): mass})

    def __add__(self, other: "Cycle") -> "Cycle":
        d = dict(self.masses)
        for k, v in other.masses.items():
            d[k] = d[k] + v if k in d else v
        return Cycle(d)

    def __sub__(self, other: "Cycle") -> "Cycle":
        return self + other.scale(Scalar(-1))

    def scale(self, s) -> "Cycle":
        if not isinstance(s, Scalar):
            s = Scalar(s)
        return Cycle({k: v * s for k, v in self.masses.items()})

    def is_zero(self) -> bool:
        return not self.masses

    def __eq__(self, other):
        return isinstance(other, Cycle) and cycle_equal(self, other)

    def to_str(self, names: Sequence[str] | None = None) -> str:
        if not self.masses:
            return "0"
        parts = []
        for S in sorted(self.masses, key=lambda s: (len(s), sorted(s))):
            m = self.masses[S]
            label = "[" + "=".join(names[i] if names else f"z{i + 1}" for i in sorted(S)) + "=0]"
            if m == Scalar(1):
                parts.append(label)
            else:
                ms = str(m)
                if m.rat < 0 and m.tpi == 0 and parts:
                    parts.append(f"- {str(-m)}*{label}" if -m != Scalar(1) else f"- {label}")
                    continue
                parts.append(f"{ms}*{label}")
        s = parts[0]
        for p in parts[1:]:
            s += (" " + p) if p.startswith("- ") else f" + {p}"
        return s

    def __str__(self):
        return self.to_str()

    def to_json(self, names: Sequence[str] | None = None):
        out = []
        for S in sorted(self.masses, key=lambda s: (len(s), sorted(s))):
            out.append({
                "subspace": [names[i] if names else i for i in sorted(S)],
                "mass": self.masses[S].to_json(),
            })
        return out


def cycle_equal(a: Cycle, b: Cycle) -> bool:
    return a.masses == b.masses


def fundamental_cycle(J: MonomialIdeal) -> Cycle:
    out = Cycle()
    for P in minimal_primes(J):
        out = out + Cycle.point(P, multiplicity_along(J, P))
    return out


def ci_oracle_mass(exponents: Sequence[int]) -> int:
    """Rectangle staircase count for pure powers."""
    return prod(exponents)
