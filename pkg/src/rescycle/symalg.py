"""Exact polynomials, rational functions and differential forms.

Variables are indexed ``0..N-1``.  Every variable ``z_i`` comes with a formal
conjugate ``bar(z_i)``; internally ``z_i`` is generator ``2*i`` and its
conjugate is generator ``2*i + 1``.  The two are independent commuting
indeterminates.  All coefficients are :class:`fractions.Fraction`.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from itertools import chain
from typing import Dict, Iterable, Iterator, Mapping, Sequence, Tuple

Monomial = Tuple[Tuple[int, int], ...]

ONE_MONO: Monomial = ()


def holo(i: int) -> int:
    return 2 * i


def conj(i: int) -> int:
    return 2 * i + 1


def var_of(gen: int) -> int:
    return gen >> 1


def is_conj(gen: int) -> bool:
    return bool(gen & 1)


def gen_name(gen: int, names: Sequence[str] | None = None) -> str:
    i = var_of(gen)
    base = names[i] if names is not None and i < len(names) else f"z{i + 1}"
    return f"bar({base})" if is_conj(gen) else base


def mono_mul(a: Monomial, b: Monomial) -> Monomial:
    if not a:
        return b
    if not b:
        return a
    d = dict(a)
    for g, e in b:
        d[g] = d.get(g, 0) + e
    return tuple(sorted(d.items()))


def mono_div(a: Monomial, b: Monomial) -> Monomial | None:
    """Return ``a / b`` or ``None`` when ``b`` does not divide ``a``."""
    d = dict(a)
    for g, e in b:
        r = d.get(g, 0) - e
        if r < 0:
            return None
        if r:
            d[g] = r
        else:
            del d[g]
    return tuple(sorted(d.items()))


def mono_degree(m: Monomial) -> int:
    return sum(e for _, e in m)


def mono_key(m: Monomial):
    # graded lexicographic, smaller generator index is the "larger" variable
    return (mono_degree(m), tuple((-g, e) for g, e in m))


def mono_str(m: Monomial, names: Sequence[str] | None = None) -> str:
    parts = []
    for g, e in m:
        s = gen_name(g, names)
        parts.append(s if e == 1 else f"{s}^{e}")
    return "*".join(parts)


class Scalar:
    """Rational number times an integer power of the formal unit ``2*pi*i``."""

    __slots__ = ("rat", "tpi")

    def __init__(self, rat=0, tpi: int = 0):
        rat = Fraction(rat)
        self.rat = rat
        self.tpi = tpi if rat else 0

    def __mul__(self, other):
        if not isinstance(other, Scalar):
            other = Scalar(other)
        return Scalar(self.rat * other.rat, self.tpi + other.tpi)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if not isinstance(other, Scalar):
            other = Scalar(other)
        if not other.rat:
            raise ZeroDivisionError("scalar division by zero")
        return Scalar(self.rat / other.rat, self.tpi - other.tpi)

    def __add__(self, other):
        if not isinstance(other, Scalar):
            other = Scalar(other)
        if not self.rat:
            return other
        if not other.rat:
            return self
        if self.tpi != other.tpi:
            raise ValueError("cannot add scalars with different powers of 2*pi*i")
        return Scalar(self.rat + other.rat, self.tpi)

    def __neg__(self):
        return Scalar(-self.rat, self.tpi)

    def __sub__(self, other):
        return self + (-other if isinstance(other, Scalar) else Scalar(-Fraction(other)))

    def __eq__(self, other):
        if not isinstance(other, Scalar):
            other = Scalar(other)
        return self.rat == other.rat and self.tpi == other.tpi

    def __hash__(self):
        return hash((self.rat, self.tpi))

    def __bool__(self):
        return bool(self.rat)

    def __repr__(self):
        return f"Scalar({self})"

    def __str__(self):
        r = str(self.rat)
        if not self.tpi:
            return r
        unit = "(2*pi*i)" if self.tpi == 1 else f"(2*pi*i)^{self.tpi}"
        if self.rat == 1:
            return unit
        if self.rat == -1:
            return "-" + unit
        return f"{r}*{unit}"

    def to_json(self):
        return {"rat": str(self.rat), "tpi": self.tpi}

    @classmethod
    def from_json(cls, d):
        return cls(Fraction(d["rat"]), d["tpi"])


class Poly:
    """Sparse multivariate polynomial with rational coefficients."""

    __slots__ = ("terms", "_hash")

    def __init__(self, terms: Mapping[Monomial, Fraction] | None = None, *, _clean=False):
        if terms is None:
            self.terms: Dict[Monomial, Fraction] = {}
        elif _clean:
            self.terms = dict(terms)
        else:
            self.terms = {m: Fraction(c) for m, c in terms.items() if c}
        self._hash = None

    # construction helpers
    @classmethod
    def const(cls, c) -> "Poly":
        c = Fraction(c)
        return cls({ONE_MONO: c}, _clean=True) if c else cls()

    @classmethod
    def gen(cls, g: int, e: int = 1) -> "Poly":
        return cls({((g, e),) if e else ONE_MONO: Fraction(1)}, _clean=True)

    @classmethod
    def var(cls, i: int, e: int = 1) -> "Poly":
        return cls.gen(holo(i), e)

    @classmethod
    def cvar(cls, i: int, e: int = 1) -> "Poly":
        return cls.gen(conj(i), e)

    @classmethod
    def monomial(cls, m: Monomial, c=1) -> "Poly":
        return cls({m: Fraction(c)}) if c else cls()

    @classmethod
    def from_exponents(cls, exps: Sequence[int], c=1) -> "Poly":
        """Holomorphic monomial ``c * z^exps``."""
        m = tuple((holo(i), e) for i, e in enumerate(exps) if e)
        return cls.monomial(m, c)

    # queries
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def is_const(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and ONE_MONO in self.terms)

    def const_value(self) -> Fraction:
        if not self.is_const():
            raise ValueError("polynomial is not constant")
        return self.terms.get(ONE_MONO, Fraction(0))

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def gens(self) -> set:
        return {g for m in self.terms for g, _ in m}

    def variables(self) -> set:
        return {var_of(g) for g in self.gens()}

    def is_holomorphic(self) -> bool:
        return not any(is_conj(g) for g in self.gens())

    def total_degree(self) -> int:
        return max((mono_degree(m) for m in self.terms), default=-1)

    def leading(self) -> Tuple[Monomial, Fraction]:
        m = max(self.terms, key=mono_key)
        return m, self.terms[m]

    def __iter__(self) -> Iterator[Tuple[Monomial, Fraction]]:
        return iter(self.terms.items())

    def __len__(self):
        return len(self.terms)

    # arithmetic
    def __add__(self, other):
        if not isinstance(other, Poly):
            other = Poly.const(other)
        if not other.terms:
            return self
        if not self.terms:
            return other
        d = dict(self.terms)
        for m, c in other.terms.items():
            v = d.get(m, 0) + c
            if v:
                d[m] = v
            else:
                d.pop(m, None)
        return Poly(d, _clean=True)

    __radd__ = __add__

    def __neg__(self):
        return Poly({m: -c for m, c in self.terms.items()}, _clean=True)

    def __sub__(self, other):
        if not isinstance(other, Poly):
            other = Poly.const(other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, Poly):
            if not isinstance(other, (int, Fraction)):
                return NotImplemented
            c = Fraction(other)
            if not c:
                return Poly()
            return Poly({m: v * c for m, v in self.terms.items()}, _clean=True)
        if not self.terms or not other.terms:
            return Poly()
        d: Dict[Monomial, Fraction] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = mono_mul(m1, m2)
                d[m] = d.get(m, 0) + c1 * c2
        return Poly(d)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power of a polynomial")
        result = Poly.const(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __eq__(self, other):
        if not isinstance(other, Poly):
            try:
                other = Poly.const(other)
            except (TypeError, ValueError):
                return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    def diff(self, g: int) -> "Poly":
        d: Dict[Monomial, Fraction] = {}
        for m, c in self.terms.items():
            e = dict(m).get(g, 0)
            if not e:
                continue
            nm = tuple((h, f - 1 if h == g else f) for h, f in m if not (h == g and f == 1))
            d[nm] = d.get(nm, 0) + c * e
        return Poly(d)

    def div_monomial(self, m: Monomial) -> "Poly | None":
        d = {}
        for mm, c in self.terms.items():
            q = mono_div(mm, m)
            if q is None:
                return None
            d[q] = c
        return Poly(d, _clean=True)

    def monomial_content(self) -> Monomial:
        """Largest monomial dividing every term."""
        if not self.terms:
            return ONE_MONO
        it = iter(self.terms)
        cur = dict(next(it))
        for m in it:
            md = dict(m)
            cur = {g: min(e, md[g]) for g, e in cur.items() if g in md}
            if not cur:
                break
        return tuple(sorted(cur.items()))

    def split_by(self, gens: Iterable[int]) -> Dict[Monomial, "Poly"]:
        """Group terms by their exponents in ``gens``: ``self = sum m * coeff[m]``."""
        gs = set(gens)
        out: Dict[Monomial, Dict[Monomial, Fraction]] = {}
        for m, c in self.terms.items():
            a = tuple((g, e) for g, e in m if g in gs)
            b = tuple((g, e) for g, e in m if g not in gs)
            out.setdefault(a, {})[b] = c
        return {a: Poly(t, _clean=True) for a, t in out.items()}

    def evaluate(self, point: Mapping[int, Fraction]) -> Fraction:
        """Substitute generator values; all generators must be given."""
        total = Fraction(0)
        for m, c in self.terms.items():
            v = c
            for g, e in m:
                v *= point[g] ** e
            total += v
        return total

    def substitute_one(self, gens: Iterable[int]) -> "Poly":
        """Set every generator in ``gens`` to 1."""
        gs = set(gens)
        d: Dict[Monomial, Fraction] = {}
        for m, c in self.terms.items():
            nm = tuple((g, e) for g, e in m if g not in gs)
            d[nm] = d.get(nm, 0) + c
        return Poly(d)

    def to_str(self, names: Sequence[str] | None = None) -> str:
        if not self.terms:
            return "0"
        out = []
        for m in sorted(self.terms, key=mono_key, reverse=True):
            c = self.terms[m]
            ms = mono_str(m, names)
            sign = "-" if c < 0 else "+"
            a = abs(c)
            if not ms:
                body = str(a)
            elif a == 1:
                body = ms
            else:
                body = f"{a}*{ms}"
            out.append((sign, body))
        s = ("-" if out[0][0] == "-" else "") + out[0][1]
        for sign, body in out[1:]:
            s += f" {sign} {body}"
        return s

    def __repr__(self):
        return f"Poly({self.to_str()})"

    __str__ = to_str


ZERO = Poly()
ONE = Poly.const(1)


@lru_cache(maxsize=64)
def _sympy_ring(ngens: int):
    from sympy import QQ
    from sympy.polys.rings import ring

    R, *_ = ring(",".join(f"g{i}" for i in range(ngens)), QQ)
    return R


def _to_sympy(p: Poly, order: Sequence[int]):
    R = _sympy_ring(len(order))
    pos = {g: i for i, g in enumerate(order)}
    d = {}
    for m, c in p.terms.items():
        e = [0] * len(order)
        for g, k in m:
            e[pos[g]] = k
        d[tuple(e)] = R.domain.convert(c)
    return R.from_dict(d)


def _from_sympy(q, order: Sequence[int]) -> Poly:
    d = {}
    for e, c in q.items():
        m = tuple((order[i], k) for i, k in enumerate(e) if k)
        d[m] = Fraction(int(c.numerator), int(c.denominator))
    return Poly(d)


def poly_gcd_cofactors(a: Poly, b: Poly) -> Tuple[Poly, Poly, Poly]:
    """Return ``(g, a/g, b/g)`` with ``g`` a gcd of ``a`` and ``b``."""
    order = sorted(a.gens() | b.gens())
    if not order:
        return ONE, a, b
    h, ca, cb = _to_sympy(a, order).cofactors(_to_sympy(b, order))
    return _from_sympy(h, order), _from_sympy(ca, order), _from_sympy(cb, order)


def poly_exact_div(a: Poly, b: Poly) -> Poly | None:
    """``a / b`` if ``b`` divides ``a`` exactly, else ``None``."""
    if b.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    if b.is_const():
        return a * (1 / b.const_value())
    if b.is_monomial():
        (m, c), = b.terms.items()
        q = a.div_monomial(m)
        return None if q is None else q * (1 / c)
    order = sorted(a.gens() | b.gens())
    q, r = _to_sympy(a, order).div(_to_sympy(b, order))
    if r:
        return None
    return _from_sympy(q, order)


class RatFun:
    """Quotient of polynomials, kept gcd-reduced with monic denominator."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=None, *, _normalized=False):
        if not isinstance(num, Poly):
            num = Poly.const(num)
        if den is None:
            den = ONE
        elif not isinstance(den, Poly):
            den = Poly.const(den)
        if den.is_zero():
            raise ZeroDivisionError("rational function with zero denominator")
        if not _normalized:
            num, den = _normalize_pair(num, den)
        self.num = num
        self.den = den

    def is_zero(self):
        return self.num.is_zero()

    def __bool__(self):
        return not self.num.is_zero()

    def is_poly(self):
        return self.den == ONE

    def is_const(self):
        return self.den == ONE and self.num.is_const()

    def gens(self):
        return self.num.gens() | self.den.gens()

    def __add__(self, other):
        if not isinstance(other, RatFun):
            other = RatFun(other)
        if other.num.is_zero():
            return self
        if self.num.is_zero():
            return other
        if self.den == other.den:
            if self.den == ONE:
                return RatFun(self.num + other.num, ONE, _normalized=True)
            return RatFun(self.num + other.num, self.den)
        return RatFun(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return RatFun(-self.num, self.den, _normalized=True)

    def __sub__(self, other):
        if not isinstance(other, RatFun):
            other = RatFun(other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, RatFun):
            if isinstance(other, Poly):
                other = RatFun(other, ONE, _normalized=True)
            elif not isinstance(other, (int, Fraction)):
                return NotImplemented
            else:
                c = Fraction(other)
                return RatFun(self.num * c, self.den, _normalized=True)
        if self.den == ONE and other.den == ONE:
            return RatFun(self.num * other.num, ONE, _normalized=True)
        return RatFun(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if not isinstance(other, RatFun):
            other = RatFun(other)
        if other.num.is_zero():
            raise ZeroDivisionError("rational function division by zero")
        return RatFun(self.num * other.den, self.den * other.num)

    def __eq__(self, other):
        if not isinstance(other, RatFun):
            try:
                other = RatFun(other)
            except (TypeError, ValueError):
                return NotImplemented
        return self.num * other.den == other.num * self.den

    def __hash__(self):
        return hash((self.num, self.den))

    def diff(self, g: int) -> "RatFun":
        if self.den == ONE:
            return RatFun(self.num.diff(g), ONE, _normalized=True)
        dd = self.den.diff(g)
        if dd.is_zero():
            return RatFun(self.num.diff(g), self.den)
        return RatFun(self.num.diff(g) * self.den - self.num * dd, self.den * self.den)

    def to_str(self, names=None) -> str:
        if self.den == ONE:
            return self.num.to_str(names)
        n = self.num.to_str(names)
        if len(self.num) > 1:
            n = f"({n})"
        d = self.den.to_str(names)
        if len(self.den) > 1 or not self.den.is_monomial():
            d = f"({d})"
        return f"{n}/{d}"

    def __repr__(self):
        return f"RatFun({self.to_str()})"

    __str__ = to_str


def _normalize_pair(num: Poly, den: Poly) -> Tuple[Poly, Poly]:
    if num.is_zero():
        return ZERO, ONE
    if den.is_const():
        c = den.const_value()
        return (num if c == 1 else num * (1 / c)), ONE
    if den.is_monomial():
        common = mono_intersect(num.monomial_content(), next(iter(den.terms)))
        if common:
            num = num.div_monomial(common)
            den = den.div_monomial(common)
    else:
        g, num, den = poly_gcd_cofactors(num, den)
    if den.is_const():
        c = den.const_value()
        return num * (1 / c), ONE
    _, lc = den.leading()
    if lc != 1:
        num = num * (1 / lc)
        den = den * (1 / lc)
    return num, den


def mono_intersect(a: Monomial, b: Monomial) -> Monomial:
    bd = dict(b)
    return tuple((g, min(e, bd[g])) for g, e in a if g in bd)


def ratfun_normalize(r: RatFun) -> RatFun:
    """Canonical gcd-reduced representative of ``r``."""
    return RatFun(r.num, r.den)


def poly_mul(a: Poly, b: Poly) -> Poly:
    return a * b


# Differential forms.  A basis element is a sorted tuple of form generators;
# generator (0, i) is dbar(z_i) and (1, i) is d(z_i), so conjugate
# differentials sort first.
FormKey = Tuple[Tuple[int, int], ...]


def dz(i: int) -> Tuple[int, int]:
    return (1, i)


def dzbar(i: int) -> Tuple[int, int]:
    return (0, i)


def sort_sign(seq: Sequence) -> Tuple[int, tuple]:
    """Sign of the permutation sorting ``seq`` and the sorted tuple.

    Returns sign 0 when ``seq`` has a repeated element.
    """
    s = list(seq)
    n = len(s)
    sign = 1
    for i in range(1, n):
        j = i
        while j > 0 and s[j - 1] > s[j]:
            s[j - 1], s[j] = s[j], s[j - 1]
            sign = -sign
            j -= 1
    for i in range(1, n):
        if s[i] == s[i - 1]:
            return 0, ()
    return sign, tuple(s)


def merge_sign(a: FormKey, b: FormKey) -> Tuple[int, FormKey]:
    """Sign and key of ``a ^ b`` for sorted keys ``a`` and ``b``."""
    if not a:
        return 1, b
    if not b:
        return 1, a
    sa = set(a)
    if any(x in sa for x in b):
        return 0, ()
    # count inversions between the two sorted runs
    inv = 0
    j = 0
    for x in a:
        while j < len(b) and b[j] < x:
            j += 1
        inv += j
    return (-1 if inv & 1 else 1), tuple(sorted(a + b))


def key_str(key: FormKey, names=None) -> str:
    parts = []
    for kind, i in key:
        nm = names[i] if names is not None and i < len(names) else f"z{i + 1}"
        parts.append(f"d({nm})" if kind else f"dbar({nm})")
    return "^".join(parts)


class Form:
    """Differential form with :class:`RatFun` coefficients."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[FormKey, RatFun] | None = None):
        self.terms: Dict[FormKey, RatFun] = {}
        if terms:
            for k, c in terms.items():
                if not isinstance(c, RatFun):
                    c = RatFun(c) if not isinstance(c, Poly) else RatFun(c, ONE, _normalized=True)
                if not c.is_zero():
                    self.terms[k] = c

    @classmethod
    def scalar(cls, f) -> "Form":
        if isinstance(f, Poly):
            f = RatFun(f, ONE, _normalized=True)
        return cls({(): f})

    @classmethod
    def gen(cls, g: Tuple[int, int], coeff=1) -> "Form":
        return cls({(g,): coeff})

    @classmethod
    def basis(cls, gens: Sequence[Tuple[int, int]], coeff=1) -> "Form":
        sign, key = sort_sign(gens)
        if not sign:
            return cls()
        c = coeff if isinstance(coeff, (Poly, RatFun)) else Fraction(coeff)
        return cls({key: -c if sign < 0 else c})

    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def degrees(self) -> set:
        return {len(k) for k in self.terms}

    def degree(self) -> int | None:
        """Common total degree, ``None`` for the zero form."""
        ds = self.degrees()
        if not ds:
            return None
        if len(ds) > 1:
            raise ValueError("form is not homogeneous")
        return next(iter(ds))

    def bidegree(self, key: FormKey) -> Tuple[int, int]:
        p = sum(1 for kind, _ in key if kind)
        return p, len(key) - p

    def __add__(self, other):
        if not isinstance(other, Form):
            other = Form.scalar(RatFun(other) if not isinstance(other, (Poly, RatFun)) else other)
        d = dict(self.terms)
        for k, c in other.terms.items():
            v = d[k] + c if k in d else c
            if v.is_zero():
                d.pop(k, None)
            else:
                d[k] = v
        out = Form()
        out.terms = d
        return out

    __radd__ = __add__

    def __neg__(self):
        out = Form()
        out.terms = {k: -c for k, c in self.terms.items()}
        return out

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        """Wedge product; scalars and polynomials act by multiplication."""
        if not isinstance(other, Form):
            if isinstance(other, Poly):
                other = RatFun(other, ONE, _normalized=True)
            elif isinstance(other, (int, Fraction)):
                other = RatFun(other)
            elif not isinstance(other, RatFun):
                return NotImplemented
            if other.is_zero():
                return Form()
            out = Form()
            out.terms = {k: c * other for k, c in self.terms.items()}
            out.terms = {k: c for k, c in out.terms.items() if not c.is_zero()}
            return out
        return wedge(self, other)

    def __rmul__(self, other):
        if not isinstance(other, (Poly, RatFun, int, Fraction)):
            return NotImplemented
        return self * other

    def __xor__(self, other):
        return wedge(self, other)

    def __eq__(self, other):
        if not isinstance(other, Form):
            if isinstance(other, (int, Fraction, Poly, RatFun)):
                other = Form.scalar(other if isinstance(other, (Poly, RatFun)) else RatFun(other))
            else:
                return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def coefficient(self, key: FormKey) -> RatFun:
        return self.terms.get(key, RatFun(0))

    def gens(self):
        return set(chain.from_iterable(c.gens() for c in self.terms.values()))

    def map_coeffs(self, fn) -> "Form":
        return Form({k: fn(c) for k, c in self.terms.items()})

    def to_str(self, names=None) -> str:
        if not self.terms:
            return "0"
        parts = []
        for k in sorted(self.terms):
            c = self.terms[k]
            ks = key_str(k, names)
            cs = c.to_str(names)
            if not ks:
                parts.append(cs)
            elif c == RatFun(1):
                parts.append(ks)
            elif c == RatFun(-1):
                parts.append("-" + ks)
            else:
                if len(c.num) > 1 and c.den == ONE:
                    cs = f"({cs})"
                parts.append(f"{cs}*{ks}")
        return " + ".join(parts).replace("+ -", "- ")

    def __repr__(self):
        return f"Form({self.to_str()})"

    __str__ = to_str


def wedge(a: Form, b: Form) -> Form:
    """Graded-commutative product of forms."""
    d: Dict[FormKey, RatFun] = {}
    for ka, ca in a.terms.items():
        for kb, cb in b.terms.items():
            sign, k = merge_sign(ka, kb)
            if not sign:
                continue
            c = ca * cb
            if sign < 0:
                c = -c
            d[k] = d[k] + c if k in d else c
    out = Form()
    out.terms = {k: c for k, c in d.items() if not c.is_zero()}
    return out


def exterior_d(f: Form) -> Tuple[Form, Form]:
    """Split ``d f`` into its holomorphic and antiholomorphic parts."""
    hol = Form()
    anti = Form()
    for key, c in f.terms.items():
        base = Form()
        base.terms = {key: c}
        for g in sorted(c.gens()):
            dc = c.diff(g)
            if dc.is_zero():
                continue
            i = var_of(g)
            piece = wedge(Form({(dzbar(i) if is_conj(g) else dz(i),): dc}), Form({key: RatFun(1)}))
            if is_conj(g):
                anti = anti + piece
            else:
                hol = hol + piece
    return hol, anti


def d(f: Form) -> Form:
    h, a = exterior_d(f)
    return h + a


def dbar_form(f: Form) -> Form:
    return exterior_d(f)[1]
