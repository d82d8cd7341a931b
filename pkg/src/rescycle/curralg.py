"""Formal residue and principal-value currents.

A term is ``coef * omega ^ pv ^ res_1 ^ ... ^ res_r`` where ``omega`` is a
basis form (``dbar`` generators before ``d`` generators), ``pv`` is a product
of principal values ``1/z_i^a`` and each ``res`` factor is ``dbar(1/z_i^a)``.
Residue factors are odd; principal values are even and commute with
everything.  Normal form keeps residue factors sorted by variable index.

Rewriting rules applied to every term:

* R1 ``z^k * pv(1/z^a)`` lowers the pv exponent or cancels it.
* R2 ``z^k * res(1/z^a)`` lowers the residue exponent, zero when ``k >= a``.
* R3 ``bar(z) * res(1/z^a) = 0``.
* R4 ``dbar(z) ^ res(1/z^a) = 0``.
* R5 odd factors are reordered with sign.
* R6 smooth coefficients are multiplied and gcd-normalized.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Dict, FrozenSet, Iterable, List, Sequence, Tuple

from .cycles import Cycle
from .errors import FragmentError, RestrictionUndecidable
from .symalg import (
    ONE,
    Form,
    FormKey,
    Poly,
    RatFun,
    Scalar,
    conj,
    dz,
    dzbar,
    exterior_d,
    holo,
    is_conj,
    key_str,
    merge_sign,
    mono_mul,
    sort_sign,
    var_of,
)

PV = Tuple[Tuple[int, int], ...]
Res = Tuple[Tuple[int, int], ...]
TermKey = Tuple[int, FormKey, PV, Res]  # (tpi, form, pv, res)


@dataclass(frozen=True)
class Opaque:
    """A current known only through its bidegree and support.

    Used for correction terms that are never computed explicitly; the only
    thing one can do with them is kill them by the dimension principle.
    """

    name: str
    q: int
    support: FrozenSet[int]

    def codim(self) -> int:
        return len(self.support)


def _res_sign_sort(res: Sequence[Tuple[int, int]]) -> Tuple[int, Res]:
    vs = [v for v, _ in res]
    if len(set(vs)) != len(vs):
        dup = next(v for v in vs if vs.count(v) > 1)
        raise FragmentError(f"product of two residue factors in variable {dup}")
    sign, _ = sort_sign(vs)
    return sign, tuple(sorted(res))


def _add_into(acc: Dict[TermKey, RatFun], key: TermKey, c: RatFun):
    if key in acc:
        v = acc[key] + c
        if v.is_zero():
            del acc[key]
        else:
            acc[key] = v
    elif not c.is_zero():
        acc[key] = c


def _normalize_term(acc: Dict[TermKey, RatFun], tpi: int, coef: RatFun, key: FormKey,
                    pv: Dict[int, int], res: Sequence[Tuple[int, int]]):
    """Rewrite one raw term to normal form and add it to ``acc``."""
    if coef.is_zero():
        return
    sign, res = _res_sign_sort(res)
    res_vars = {v for v, _ in res}
    clash = res_vars & set(pv)
    if clash:
        raise FragmentError(f"principal value times residue in variable {min(clash)}")
    # R4
    if any(kind == 0 and i in res_vars for kind, i in key):
        return
    if sign < 0:
        coef = -coef
    if not res_vars and not pv:
        _add_into(acc, (tpi, key, (), ()), coef)
        return
    bad = {var_of(g) for g in coef.den.gens()} & (res_vars | set(pv))
    if bad:
        raise FragmentError(f"smooth factor singular along residue/pv variable {min(bad)}")
    split_gens = [holo(v) for v in res_vars] + [conj(v) for v in res_vars] + [holo(v) for v in pv]
    resd = dict(res)
    for mono, part in coef.num.split_by(split_gens).items():
        md = dict(mono)
        new_res = []
        dead = False
        for v, e in res:
            if md.get(conj(v), 0):  # R3
                dead = True
                break
            k = md.get(holo(v), 0)
            if k >= e:  # R2
                dead = True
                break
            new_res.append((v, e - k))
        if dead:
            continue
        new_pv = []
        leftover = []
        for v, e in sorted(pv.items()):
            k = md.get(holo(v), 0)
            if k < e:
                new_pv.append((v, e - k))
            elif k > e:
                leftover.append((holo(v), k - e))
        c = part
        if leftover:
            c = c * Poly.monomial(tuple(sorted(leftover)))
        _add_into(acc, (tpi, key, tuple(new_pv), tuple(new_res)), RatFun(c, coef.den))
    del resd


class CurrentSum:
    """Finite sum of formal current terms in normal form."""

    __slots__ = ("terms", "opaque")

    def __init__(self, terms: Dict[TermKey, RatFun] | None = None, opaque: Iterable[Opaque] = ()):
        self.terms: Dict[TermKey, RatFun] = terms or {}
        self.opaque: Tuple[Opaque, ...] = tuple(opaque)

    # constructors
    @classmethod
    def build(cls, coef=1, form: FormKey = (), pv: Dict[int, int] | None = None,
              res: Sequence[Tuple[int, int]] = (), tpi: int = 0) -> "CurrentSum":
        if isinstance(coef, Poly):
            coef = RatFun(coef, ONE, _normalized=True)
        elif not isinstance(coef, RatFun):
            coef = RatFun(coef)
        sign, key = sort_sign(form)
        if not sign:
            return cls()
        if sign < 0:
            coef = -coef
        acc: Dict[TermKey, RatFun] = {}
        _normalize_term(acc, tpi, coef, key, dict(pv or {}), list(res))
        return cls(acc)

    @classmethod
    def from_form(cls, f: Form) -> "CurrentSum":
        acc: Dict[TermKey, RatFun] = {}
        for k, c in f.terms.items():
            acc[(0, k, (), ())] = c
        return cls(acc)

    @classmethod
    def lift(cls, x) -> "CurrentSum":
        if isinstance(x, CurrentSum):
            return x
        if isinstance(x, Form):
            return cls.from_form(x)
        if isinstance(x, Poly):
            x = RatFun(x, ONE, _normalized=True)
        elif not isinstance(x, RatFun):
            x = RatFun(x)
        return cls({(0, (), (), ()): x} if not x.is_zero() else {})

    @classmethod
    def res_atom(cls, var: int, exp: int = 1) -> "CurrentSum":
        return cls({(0, (), (), ((var, exp),)): RatFun(1)})

    @classmethod
    def pv_atom(cls, var: int, exp: int = 1) -> "CurrentSum":
        return cls({(0, (), ((var, exp),), ()): RatFun(1)})

    @classmethod
    def opaque_term(cls, name: str, q: int, support: Iterable[int]) -> "CurrentSum":
        return cls({}, (Opaque(name, q, frozenset(support)),))

    # queries
    def is_zero(self) -> bool:
        return not self.terms and not self.opaque

    def __bool__(self):
        return not self.is_zero()

    def degrees(self) -> set:
        return {len(k[1]) + len(k[3]) for k in self.terms}

    def degree(self) -> int | None:
        ds = self.degrees()
        if not ds:
            return None
        if len(ds) > 1:
            raise ValueError("current is not homogeneous")
        return next(iter(ds))

    def is_smooth(self) -> bool:
        return not self.opaque and all(not k[2] and not k[3] for k in self.terms)

    def to_form(self) -> Form:
        if not self.is_smooth() or any(k[0] for k in self.terms):
            raise ValueError("current is not a smooth form")
        return Form({k[1]: c for k, c in self.terms.items()})

    def __len__(self):
        return len(self.terms) + len(self.opaque)

    # algebra
    def __add__(self, other):
        other = CurrentSum.lift(other)
        acc = dict(self.terms)
        for k, c in other.terms.items():
            _add_into(acc, k, c)
        return CurrentSum(acc, self.opaque + other.opaque)

    __radd__ = __add__

    def __neg__(self):
        return CurrentSum({k: -c for k, c in self.terms.items()},
                          tuple(Opaque("-" + o.name, o.q, o.support) for o in self.opaque))

    def __sub__(self, other):
        return self + (-CurrentSum.lift(other))

    def __rsub__(self, other):
        return CurrentSum.lift(other) - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self.scale_rat(other)
        return current_mul(self, other)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale_rat(other)
        return current_mul(other, self)

    def __xor__(self, other):
        return current_mul(self, other)

    def __rxor__(self, other):
        return current_mul(other, self)

    def scale_rat(self, c) -> "CurrentSum":
        c = Fraction(c)
        if not c:
            return CurrentSum()
        return CurrentSum({k: v * c for k, v in self.terms.items()}, self.opaque)

    def scale(self, s) -> "CurrentSum":
        if not isinstance(s, Scalar):
            s = Scalar(s)
        if not s:
            return CurrentSum()
        return CurrentSum({(k[0] + s.tpi,) + k[1:]: v * s.rat for k, v in self.terms.items()}, self.opaque)

    def __eq__(self, other):
        try:
            other = CurrentSum.lift(other)
        except (TypeError, ValueError):
            return NotImplemented
        return self.terms == other.terms and sorted(map(repr, self.opaque)) == sorted(map(repr, other.opaque))

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def map_terms(self, fn) -> "CurrentSum":
        """Apply ``fn(key, coef) -> CurrentSum`` to every term and sum."""
        out = CurrentSum({}, self.opaque)
        for k, c in self.terms.items():
            out = out + fn(k, c)
        return out

    # printing
    def to_str(self, names=None) -> str:
        if self.is_zero():
            return "0"
        parts = []
        for k in sorted(self.terms, key=repr):
            parts.append(term_str(k, self.terms[k], names))
        for o in self.opaque:
            parts.append(f"<{o.name}: (0,{o.q}), supp codim {o.codim()}>")
        return " + ".join(parts)

    def __repr__(self):
        return f"CurrentSum({self.to_str()})"

    __str__ = to_str


def term_str(key: TermKey, c: RatFun, names=None) -> str:
    tpi, form, pv, res = key
    nm = (lambda i: names[i]) if names else (lambda i: f"z{i + 1}")
    cs = c.to_str(names)
    factors = []
    if form:
        factors.append(key_str(form, names))
    for v, e in pv:
        factors.append(f"pv(1/{nm(v)}" + (f"^{e})" if e > 1 else ")"))
    for v, e in res:
        factors.append(f"res(1/{nm(v)}" + (f"^{e})" if e > 1 else ")"))
    head = []
    if tpi:
        head.append(f"(2*pi*i)^{tpi}" if tpi > 0 else f"(2*pi*i)^({tpi})")
    if factors:
        head.append("^".join(factors))
    if not head:
        return cs
    body = "*".join(head)
    if c == RatFun(1):
        return body
    if c == RatFun(-1):
        return "-" + body
    if len(c.num) > 1 or not c.is_poly():
        cs = f"({cs})"
    return cs + "*" + body


def _mul_terms(acc, ka: TermKey, ca: RatFun, kb: TermKey, cb: RatFun):
    tpa, fa, pva, resa = ka
    tpb, fb, pvb, resb = kb
    sign, key = merge_sign(fa, fb)
    if not sign:
        return
    if len(resa) * len(fb) % 2:
        sign = -sign
    pv = dict(pva)
    for v, e in pvb:
        pv[v] = pv.get(v, 0) + e
    coef = ca * cb
    if sign < 0:
        coef = -coef
    _normalize_term(acc, tpa + tpb, coef, key, pv, list(resa) + list(resb))


def current_mul(a, b) -> CurrentSum:
    """Product ``a ^ b`` in normal form."""
    a = CurrentSum.lift(a)
    b = CurrentSum.lift(b)
    acc: Dict[TermKey, RatFun] = {}
    for ka, ca in a.terms.items():
        for kb, cb in b.terms.items():
            _mul_terms(acc, ka, ca, kb, cb)
    opaque = list(_opaque_product(a, b))
    return CurrentSum(acc, opaque)


def _opaque_product(a: CurrentSum, b: CurrentSum):
    # support of a product lies in the support of its opaque factor
    for o in a.opaque:
        for kb in b.terms:
            yield Opaque(o.name + "*", o.q + _q_of_key(kb), o.support)
        for ob in b.opaque:
            yield Opaque(o.name + "*" + ob.name, o.q + ob.q, o.support | ob.support)
    for o in b.opaque:
        for ka in a.terms:
            yield Opaque("*" + o.name, o.q + _q_of_key(ka), o.support)


def _q_of_key(key: TermKey) -> int:
    return len(key[3]) + sum(1 for kind, _ in key[1] if kind == 0)


def dbar(c) -> CurrentSum:
    """Graded derivation; turns principal values into residues."""
    c = CurrentSum.lift(c)
    acc: Dict[TermKey, RatFun] = {}
    for (tpi, form, pv, res), coef in c.terms.items():
        _, anti = exterior_d(Form({form: coef}))
        for k2, c2 in anti.terms.items():
            _normalize_term(acc, tpi, c2, k2, dict(pv), list(res))
        sign = -1 if len(form) % 2 else 1
        for v, e in pv:
            rest = {u: f for u, f in pv if u != v}
            cc = coef if sign > 0 else -coef
            _normalize_term(acc, tpi, cc, form, rest, [(v, e)] + list(res))
    opaque = [Opaque("dbar " + o.name, o.q + 1, o.support) for o in c.opaque]
    return CurrentSum(acc, opaque)


def ch_product_entry(powers: Sequence[Tuple[int, int]]) -> CurrentSum:
    """``dbar(1/z_{ip}^{ap}) ^ ... ^ dbar(1/z_{i1}^{a1})`` for ``powers = [(i1,a1),...]``."""
    vs = [v for v, _ in powers]
    if len(set(vs)) != len(vs):
        raise FragmentError("Coleff-Herrera product needs distinct variables")
    return CurrentSum.build(res=list(reversed(powers)))


def ch_product(powers: Sequence[Tuple[int, int]]):
    """Hom(level 0, level p) matrix of the Koszul residue current."""
    from .superhom import SuperMatrix

    p = len(powers)
    return SuperMatrix([[ch_product_entry(powers)]], src=0, tgt=p)


# -- supports, restriction, dimension principle ---------------------------------

def _transversals(sets: Sequence[FrozenSet[int]]) -> List[FrozenSet[int]]:
    universe = sorted(frozenset().union(*sets)) if sets else []
    found: List[FrozenSet[int]] = []
    for size in range(0, len(universe) + 1):
        for cand in combinations(universe, size):
            s = frozenset(cand)
            if any(f <= s for f in found):
                continue
            if all(s & t for t in sets):
                found.append(s)
    return found


def zero_set_components(den: Poly) -> List[FrozenSet[int]] | None:
    """Coordinate-subspace components ``V(T)`` of ``{den = 0}``.

    Handles monomials and positive combinations of products of ``|z_i|^2``
    powers.  Returns ``None`` when the shape is not recognized.
    """
    if den.is_const():
        return []
    if den.is_monomial():
        (m, _), = den.terms.items()
        return [frozenset([v]) for v in sorted({var_of(g) for g, _ in m})]
    supports = []
    for m, c in den.terms.items():
        if c <= 0:
            return None
        md = dict(m)
        vs = {var_of(g) for g in md}
        if any(md.get(holo(v), 0) != md.get(conj(v), 0) for v in vs):
            return None
        if not vs:
            return []  # positive constant term: never zero
        supports.append(frozenset(vs))
    return _transversals(supports)


def singular_support(key: TermKey, coef: RatFun) -> List[FrozenSet[int]] | None:
    comps = zero_set_components(coef.den)
    if comps is None:
        return None
    return comps + [frozenset([v]) for v, _ in key[2]]


def restrict(W: Iterable[int] | Sequence[Iterable[int]], c) -> CurrentSum:
    """``1_W c`` for ``W`` a coordinate subspace ``V(S)`` or a union of them.

    Pass a set of variable indices for ``V(S)``, or a list of such sets for a
    union.
    """
    c = CurrentSum.lift(c)
    W = list(W)
    comps = [frozenset(s) for s in W] if W and not isinstance(W[0], int) else [frozenset(W)]
    acc: Dict[TermKey, RatFun] = {}
    for key, coef in c.terms.items():
        if any(_restrict_term(S, key, coef) for S in comps):
            acc[key] = coef
    opaque = []
    for o in c.opaque:
        if any(S <= o.support for S in comps):
            opaque.append(o)
        else:
            opaque.append(Opaque("1_W " + o.name, o.q, frozenset().union(*(o.support | S for S in comps))))
    return CurrentSum(acc, opaque)


def _restrict_term(S: FrozenSet[int], key: TermKey, coef: RatFun) -> bool:
    """True if the term survives restriction to ``V(S)``, False if it dies."""
    res_vars = frozenset(v for v, _ in key[3])
    if S <= res_vars:
        return True
    # codim(W cap V(res)) = |S u res| > |res| here, so the residue part dies and
    # what is left is supported on W cap V(res) cap sing-supp(smooth)
    q = _q_of_key(key)
    sing = singular_support(key, coef)
    if sing is None:
        raise RestrictionUndecidable("restriction undecidable in fragment: unrecognized denominator")
    for T in sing:
        if len(S | res_vars | T) <= q:
            raise RestrictionUndecidable(
                f"restriction undecidable in fragment: support codim {len(S | res_vars | T)} <= q = {q}")
    return False


def dimension_principle_reduce(c) -> CurrentSum:
    """Drop every term supported in codimension larger than its (0,q) degree."""
    c = CurrentSum.lift(c)
    acc = {k: v for k, v in c.terms.items() if len(k[3]) <= _q_of_key(k)}
    return CurrentSum(acc, [o for o in c.opaque if o.codim() <= o.q])


# -- cycles ------------------------------------------------------------------------

def normalize_to_cycle(c) -> Tuple[Cycle, CurrentSum]:
    """Match terms against ``dbar(1/z_sp)^...^dbar(1/z_s1)^dz_s1^...^dz_sp = (2 pi i)^p [V(S)]``."""
    c = CurrentSum.lift(c)
    cycle = Cycle()
    rest: Dict[TermKey, RatFun] = {}
    for key, coef in c.terms.items():
        tpi, form, pv, res = key
        S = [v for v, _ in res]
        ok = (
            not pv
            and all(e == 1 for _, e in res)
            and form == tuple(dz(v) for v in S)
            and coef.is_const()
        )
        if not ok:
            rest[key] = coef
            continue
        p = len(S)
        # dz_S ^ res_asc = (-1)^{p^2} res_asc ^ dz_S, res_asc = (-1)^{p(p-1)/2} res_desc
        sign = -1 if (p * p + p * (p - 1) // 2) % 2 else 1
        mass = Scalar(coef.num.const_value() * sign, tpi + p)
        cycle = cycle + Cycle.point(S, mass)
    return cycle, CurrentSum(rest, c.opaque)


# -- randomized rule schedules (used by the confluence checks) ----------------------

def normalize_with_schedule(coef: Poly, form: Sequence, pv: Dict[int, int], res: Sequence[Tuple[int, int]],
                            rng: random.Random) -> CurrentSum:
    """Normal form reached by applying single-step rules in a random order.

    Each step moves one holomorphic/conjugate factor or one form generator
    into the singular part (or reorders one adjacent residue pair); the
    result is then handed to the ordinary normalizer.  Confluence means the
    answer never depends on ``rng``.
    """
    coef_terms = list(coef.terms.items())
    out = CurrentSum()
    for mono, cval in coef_terms:
        factors = [(g, 1) for g, e in mono for _ in range(e)]
        rng.shuffle(factors)
        cur_form = list(form)
        cur_pv = dict(pv)
        cur_res = list(res)
        sign = 1
        dead = False
        leftover = []
        steps = factors[:]
        # random adjacent transpositions of residue factors first (R5)
        for _ in range(rng.randint(0, 3)):
            if len(cur_res) > 1:
                i = rng.randrange(len(cur_res) - 1)
                cur_res[i], cur_res[i + 1] = cur_res[i + 1], cur_res[i]
                sign = -sign
        for g, _ in steps:
            v = var_of(g)
            rd = dict(cur_res)
            if v in rd:
                if is_conj(g):  # R3
                    dead = True
                    break
                e = rd[v]
                if e == 1:  # R2
                    dead = True
                    break
                cur_res = [(u, f - 1) if u == v else (u, f) for u, f in cur_res]
            elif v in cur_pv and not is_conj(g):
                e = cur_pv[v]
                if e == 1:
                    del cur_pv[v]
                else:
                    cur_pv[v] = e - 1
            else:
                leftover.append((g, 1))
        if dead:
            continue
        m = ()
        for g, e in leftover:
            m = mono_mul(m, ((g, e),))
        piece = CurrentSum.build(Poly.monomial(m, cval * sign), tuple(cur_form), cur_pv, cur_res)
        out = out + piece
    return out


def random_term(rng: random.Random, nvars: int = 3, maxexp: int = 4):
    """Random raw term inside the fragment, for property tests."""
    vs = list(range(nvars))
    rng.shuffle(vs)
    nres = rng.randint(0, min(2, nvars))
    res = [(v, rng.randint(1, maxexp)) for v in vs[:nres]]
    npv = rng.randint(0, nvars - nres)
    pv = {v: rng.randint(1, maxexp) for v in vs[nres:nres + npv]}
    coef = Poly()
    for _ in range(rng.randint(1, 3)):
        m = ()
        for v in range(nvars):
            k = rng.randint(0, maxexp)
            if k:
                m = mono_mul(m, ((holo(v), k),))
            if rng.random() < 0.2:
                m = mono_mul(m, ((conj(v), 1),))
        coef = coef + Poly.monomial(m, rng.randint(-3, 3) or 1)
    gens = [dz(v) for v in range(nvars)] + [dzbar(v) for v in range(nvars)]
    form = rng.sample(gens, rng.randint(0, 2))
    return coef, form, pv, res
