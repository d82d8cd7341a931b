"""Super-sign matrix algebra, free complexes and chain maps.

Complexes are stored as lists of polynomial matrices ``phi_1..phi_nu`` with
``phi_k : E_k -> E_{k-1}``; a matrix is a list of rows.  Form- and
current-valued maps are :class:`SuperMatrix` objects that also remember
their source and target levels, which fixes their endomorphism parity.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, product
from math import comb, factorial
from typing import Dict, List, Sequence, Tuple

from .errors import ComplexError, LiftError, UnsupportedCase
from .linsolve import rank, solve_sparse
from .symalg import ONE, ZERO, Form, Poly, RatFun, d, holo, var_of

PolyMatrix = List[List[Poly]]


# -- plain polynomial matrices ---------------------------------------------------

def zeros(r: int, c: int) -> PolyMatrix:
    return [[ZERO] * c for _ in range(r)]


def identity(n: int) -> PolyMatrix:
    return [[ONE if i == j else ZERO for j in range(n)] for i in range(n)]


def pmatmul(a: PolyMatrix, b: PolyMatrix) -> PolyMatrix:
    if not a or not b:
        rows = len(a)
        cols = len(b[0]) if b else 0
        return zeros(rows, cols)
    n = len(b)
    if any(len(row) != n for row in a):
        raise ValueError("shape mismatch in matrix product")
    cols = len(b[0])
    out = zeros(len(a), cols)
    for i, row in enumerate(a):
        for k, x in enumerate(row):
            if x.is_zero():
                continue
            bk = b[k]
            for j in range(cols):
                y = bk[j]
                if not y.is_zero():
                    out[i][j] = out[i][j] + x * y
    return out


def padd(a: PolyMatrix, b: PolyMatrix) -> PolyMatrix:
    return [[x + y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def pscale(a: PolyMatrix, s) -> PolyMatrix:
    return [[x * s for x in row] for row in a]


def is_zero_matrix(a) -> bool:
    return all(x.is_zero() for row in a for x in row)


def shape(a) -> Tuple[int, int]:
    return len(a), (len(a[0]) if a else 0)


def pmat_str(a: PolyMatrix, names=None) -> str:
    return "[" + "; ".join(", ".join(x.to_str(names) for x in row) for row in a) + "]"


# -- super matrices ------------------------------------------------------------------

def _entry_degree(x) -> int | None:
    if isinstance(x, (Poly, RatFun)):
        return None if x.is_zero() else 0
    return x.degree()


def _lift_entry(x):
    if isinstance(x, Poly):
        return Form.scalar(x)
    if isinstance(x, RatFun):
        return Form.scalar(x)
    return x


class SuperMatrix:
    """Form- or current-valued block ``E_src -> E_tgt`` with parity bookkeeping."""

    __slots__ = ("entries", "src", "tgt", "deg_f")

    def __init__(self, entries, src: int, tgt: int, deg_f: int | None = None):
        self.entries = [[_lift_entry(x) for x in row] for row in entries]
        self.src = src
        self.tgt = tgt
        degs = {_entry_degree(x) for row in self.entries for x in row} - {None}
        if len(degs) > 1:
            raise ValueError("SuperMatrix entries must have a common form degree")
        found = next(iter(degs)) if degs else None
        if deg_f is None:
            deg_f = found if found is not None else 0
        elif found is not None and found != deg_f:
            raise ValueError(f"declared form degree {deg_f} but entries have degree {found}")
        self.deg_f = deg_f

    @classmethod
    def from_poly(cls, m: PolyMatrix, src: int, tgt: int) -> "SuperMatrix":
        return cls(m, src, tgt, 0)

    @property
    def deg_e(self) -> int:
        return (self.src + self.tgt) % 2

    @property
    def deg(self) -> int:
        return (self.deg_e + self.deg_f) % 2

    @property
    def shape(self):
        return shape(self.entries)

    def is_zero(self) -> bool:
        return all(x.is_zero() for row in self.entries for x in row)

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def __add__(self, other: "SuperMatrix") -> "SuperMatrix":
        if (self.src, self.tgt) != (other.src, other.tgt) or self.shape != other.shape:
            raise ValueError("cannot add super matrices of different type")
        return SuperMatrix([[x + y for x, y in zip(ra, rb)] for ra, rb in zip(self.entries, other.entries)],
                           self.src, self.tgt)

    def __neg__(self):
        return SuperMatrix([[-x for x in row] for row in self.entries], self.src, self.tgt, self.deg_f)

    def __sub__(self, other):
        return self + (-other)

    def __eq__(self, other):
        if not isinstance(other, SuperMatrix):
            return NotImplemented
        return (self.src, self.tgt) == (other.src, other.tgt) and self.shape == other.shape and all(
            x == y for ra, rb in zip(self.entries, other.entries) for x, y in zip(ra, rb))

    def map(self, fn) -> "SuperMatrix":
        return SuperMatrix([[fn(x) for x in row] for row in self.entries], self.src, self.tgt)

    def to_str(self, names=None) -> str:
        return "[" + "; ".join(", ".join(x.to_str(names) for x in row) for row in self.entries) + "]"

    def __repr__(self):
        return f"SuperMatrix({self.src}->{self.tgt}, {self.to_str()})"


def matmul(beta: SuperMatrix, gamma: SuperMatrix, *, src=None, tgt=None):
    """Ordinary matrix product of entries (wedge), no super sign."""
    rb, cb = beta.shape
    rg, cg = gamma.shape
    if cb != rg:
        raise ValueError(f"shape mismatch {beta.shape} x {gamma.shape}")
    out = []
    for i in range(rb):
        row = []
        for j in range(cg):
            acc = None
            for k in range(cb):
                x, y = beta.entries[i][k], gamma.entries[k][j]
                if x.is_zero() or y.is_zero():
                    continue
                t = x * y
                acc = t if acc is None else acc + t
            row.append(acc if acc is not None else Form())
        out.append(row)
    return SuperMatrix(out, gamma.src if src is None else src, beta.tgt if tgt is None else tgt,
                       beta.deg_f + gamma.deg_f)


def super_mul(beta: SuperMatrix, gamma: SuperMatrix) -> SuperMatrix:
    """``{beta gamma} = (-1)^(deg_e beta * deg_f gamma) {beta}{gamma}``."""
    if beta.src != gamma.tgt:
        raise ValueError(f"level mismatch: {beta.src} != {gamma.tgt}")
    out = matmul(beta, gamma)
    if beta.deg_e * gamma.deg_f % 2:
        out = -out
    return out


def super_trace(g: SuperMatrix):
    r, c = g.shape
    if r != c or g.src != g.tgt:
        raise ValueError("trace of a non-square block")
    acc = Form()
    for i in range(r):
        acc = g.entries[i][i] + acc if not isinstance(acc, Form) or not isinstance(g.entries[i][i], Form) \
            else acc + g.entries[i][i]
    return acc


def trace_sign(beta: SuperMatrix, gamma: SuperMatrix) -> int:
    """Sign in ``tr(beta gamma) = sign * tr(gamma beta)``."""
    e = beta.deg * gamma.deg_f + gamma.deg_e * beta.deg_f
    return -1 if e % 2 else 1


def sign_constant(p: int) -> int:
    """``C_p = (-1)^(p(p-1)/2 + p^2)``."""
    return -1 if (p * (p - 1) // 2 + p * p) % 2 else 1


# -- complexes -------------------------------------------------------------------------

@dataclass
class FreeComplex:
    ranks: List[int]
    diffs: List[PolyMatrix]  # diffs[k-1] = phi_k
    name: str = ""

    def __post_init__(self):
        if len(self.diffs) != len(self.ranks) - 1:
            raise ValueError("need one differential per positive level")
        for k, m in enumerate(self.diffs, start=1):
            r, c = shape(m) if m else (self.ranks[k - 1], 0)
            if r != self.ranks[k - 1] or (m and c != self.ranks[k]):
                raise ValueError(f"phi_{k} has shape {r}x{c}, expected {self.ranks[k - 1]}x{self.ranks[k]}")

    @property
    def length(self) -> int:
        return len(self.diffs)

    def phi(self, k: int) -> PolyMatrix:
        if 1 <= k <= self.length:
            return self.diffs[k - 1]
        rows = self.ranks[k - 1] if 0 <= k - 1 < len(self.ranks) else 0
        cols = self.ranks[k] if 0 <= k < len(self.ranks) else 0
        return zeros(rows, cols)

    def rank(self, k: int) -> int:
        return self.ranks[k] if 0 <= k < len(self.ranks) else 0

    def super_phi(self, k: int) -> SuperMatrix:
        return SuperMatrix.from_poly(self.phi(k), k, k - 1)

    def variables(self) -> set:
        return {var_of(g) for m in self.diffs for row in m for x in row for g in x.gens()}

    def to_str(self, names=None) -> str:
        return " ; ".join(f"phi_{k}={pmat_str(m, names)}" for k, m in enumerate(self.diffs, start=1))


@dataclass
class ChainMap:
    """Maps ``a_k : F_k -> E_k``."""

    maps: List[PolyMatrix]
    source: FreeComplex = field(repr=False)
    target: FreeComplex = field(repr=False)

    def __getitem__(self, k: int) -> PolyMatrix:
        if k < len(self.maps):
            return self.maps[k]
        return zeros(self.target.rank(k), self.source.rank(k))

    def super(self, k: int) -> SuperMatrix:
        return SuperMatrix.from_poly(self[k], k, k)

    def check(self) -> None:
        """Raise unless ``phi_k a_k = a_{k-1} psi_k`` for all ``k``."""
        top = max(self.source.length, self.target.length)
        for k in range(1, top + 1):
            lhs = pmatmul(self.target.phi(k), self[k]) if self.target.rank(k) else zeros(
                self.target.rank(k - 1), self.source.rank(k))
            rhs = pmatmul(self[k - 1], self.source.phi(k)) if self.source.rank(k) else zeros(
                self.target.rank(k - 1), self.source.rank(k))
            if not all(x == y for ra, rb in zip(lhs, rhs) for x, y in zip(ra, rb)):
                raise ComplexError(k, "chain map identity phi a = a psi fails")

    def is_valid(self) -> bool:
        try:
            self.check()
            return True
        except ComplexError:
            return False


def koszul_blocks(elements: Sequence[PolyMatrix], m: int) -> FreeComplex:
    """Koszul complex of commuting ``m x m`` matrices over ``O^m``.

    ``e_I -> sum_i (-1)^(i-1) x_{I_i} e_{I minus I_i}`` with ``x`` acting blockwise.
    """
    p = len(elements)
    bases = [list(combinations(range(p), k)) for k in range(p + 1)]
    diffs = []
    for k in range(1, p + 1):
        src, tgt = bases[k], bases[k - 1]
        pos = {I: n for n, I in enumerate(tgt)}
        mat = zeros(len(tgt) * m, len(src) * m)
        for col, I in enumerate(src):
            for t, i in enumerate(I):
                J = I[:t] + I[t + 1:]
                row = pos[J]
                block = elements[i]
                sgn = -1 if t % 2 else 1
                for a in range(m):
                    for b in range(m):
                        x = block[a][b]
                        if not x.is_zero():
                            mat[row * m + a][col * m + b] = x if sgn > 0 else -x
        diffs.append(mat)
    return FreeComplex([comb(p, k) * m for k in range(p + 1)], diffs)


def koszul_complex(f: Sequence[Poly], N: int | None = None) -> FreeComplex:
    if not f:
        raise ValueError("Koszul complex needs at least one element")
    K = koszul_blocks([[[x]] for x in f], 1)
    K.name = "Koszul"
    return K


def staircase_resolution(gens: Sequence[Tuple[int, int]], xvar: int = 0, yvar: int = 1) -> FreeComplex:
    """Minimal resolution of a monomial ideal in two variables.

    ``gens`` are exponent pairs ``(a_i, b_i)`` of ``x^a y^b`` with strictly
    increasing ``a`` and strictly decreasing ``b``.
    """
    gs = [tuple(g) for g in gens]
    if not gs:
        raise ValueError("empty generator list")
    for (a1, b1), (a2, b2) in zip(gs, gs[1:]):
        if a1 >= a2:
            raise ValueError("generators must be sorted by increasing x-exponent")
        if b1 <= b2:
            raise ValueError("generators are not minimal")
    x = lambda e: Poly.var(xvar, e)  # noqa: E731
    y = lambda e: Poly.var(yvar, e)  # noqa: E731
    r = len(gs)
    phi1 = [[x(a) * y(b) for a, b in gs]]
    phi2 = zeros(r, r - 1)
    for i in range(r - 1):
        (a1, b1), (a2, b2) = gs[i], gs[i + 1]
        phi2[i][i] = -x(a2 - a1)
        phi2[i + 1][i] = y(b1 - b2)
    if r == 1:
        return FreeComplex([1, 1], [phi1], "staircase")
    return FreeComplex([1, r, r - 1], [phi1, phi2], "staircase")


def verify_complex(E: FreeComplex, seed: int = 0, retries: int = 5, variables: Sequence[int] | None = None):
    """Check ``phi phi = 0`` exactly and generic pointwise exactness."""
    for k in range(1, E.length):
        if not is_zero_matrix(pmatmul(E.phi(k), E.phi(k + 1))):
            raise ComplexError(k, "phi_k phi_{k+1} != 0")
    rng = random.Random(seed)
    vs = sorted(set(variables or ()) | E.variables())
    last = None
    for _ in range(retries):
        pt = {}
        for v in vs:
            pt[holo(v)] = Fraction(rng.randint(-50, 50) or 1, rng.randint(1, 9))
        ranks = [0]
        for k in range(1, E.length + 1):
            ranks.append(rank([[x.evaluate(pt) for x in row] for row in E.phi(k)]))
        ranks.append(0)
        bad = [k for k in range(E.length + 1) if E.rank(k) != ranks[k] + ranks[k + 1]]
        if not bad:
            return {"phi_phi_zero": True, "generic_ranks": ranks[1:-1]}
        last = bad[0]
    raise ComplexError(last, "not generically exact (rank condition fails)")


# -- chain map lifting -------------------------------------------------------------------

def _monomials_upto(vs: Sequence[int], deg: int):
    out = []
    for e in product(range(deg + 1), repeat=len(vs)):
        if sum(e) <= deg:
            out.append(tuple((holo(v), k) for v, k in zip(vs, e) if k))
    return out


def _solve_level(phi: PolyMatrix, rhs: PolyMatrix, vs: Sequence[int], bound: int) -> PolyMatrix | None:
    """Find ``X`` with ``phi X = rhs`` and entries of degree ``<= bound``."""
    nrow, ncol = shape(phi)
    mons = _monomials_upto(vs, bound)
    idx = {(s, mo): n for n, (s, mo) in enumerate(product(range(ncol), mons))}
    X = zeros(ncol, len(rhs[0]) if rhs else 0)
    for j in range(len(X[0]) if X else 0):
        eqs: Dict[Tuple[int, tuple], Dict[int, Fraction]] = {}
        for r in range(nrow):
            for s in range(ncol):
                for pm, pc in phi[r][s].terms.items():
                    for mo in mons:
                        key = (r, tuple(sorted(_mm(pm, mo))))
                        eqs.setdefault(key, {})
                        col = idx[(s, mo)]
                        eqs[key][col] = eqs[key].get(col, 0) + pc
        b = {}
        for r in range(nrow):
            for mo, c in rhs[r][j].terms.items():
                b[(r, mo)] = c
                eqs.setdefault((r, mo), {})
        keys = sorted(eqs, key=repr)
        sol = solve_sparse([eqs[k] for k in keys], [b.get(k, 0) for k in keys])
        if sol is None:
            return None
        for (s, mo), n in idx.items():
            v = sol.get(n)
            if v:
                X[s][j] = X[s][j] + Poly.monomial(mo, v)
    return X


def _mm(a, b):
    d_ = dict(a)
    for g, e in b:
        d_[g] = d_.get(g, 0) + e
    return d_.items()


def _max_deg(m: PolyMatrix) -> int:
    return max((x.total_degree() for row in m for x in row), default=0)


def lift_chain_map(F: FreeComplex, E: FreeComplex, a0: PolyMatrix, bound: int | None = None,
                   retries: int = 4) -> ChainMap:
    """Extend ``a0 : F_0 -> E_0`` to a chain map ``F -> E``."""
    if shape(a0) != (E.rank(0), F.rank(0)):
        raise ValueError("a0 has the wrong shape")
    vs = sorted(F.variables() | E.variables() | {var_of(g) for row in a0 for x in row for g in x.gens()})
    maps = [a0]
    top = max(F.length, E.length)
    for k in range(1, top + 1):
        rhs = pmatmul(maps[k - 1], F.phi(k)) if F.rank(k) else zeros(E.rank(k - 1), 0)
        if E.rank(k) == 0:
            if not is_zero_matrix(rhs):
                raise LiftError(k, bound or 0)
            maps.append(zeros(0, F.rank(k)))
            continue
        if F.rank(k) == 0:
            maps.append(zeros(E.rank(k), 0))
            continue
        b = bound if bound is not None else _max_deg(rhs) + _max_deg(E.phi(k))
        X = None
        for _ in range(retries + 1):
            X = _solve_level(E.phi(k), rhs, vs, b)
            if X is not None:
                break
            b *= 2
        if X is None:
            raise LiftError(k, b // 2)
        maps.append(X)
    cm = ChainMap(maps, F, E)
    cm.check()
    return cm


# -- connections -----------------------------------------------------------------------

def dphi(phi: SuperMatrix | PolyMatrix, k: int | None = None) -> SuperMatrix:
    """Entrywise exterior derivative in the trivial frame."""
    if isinstance(phi, SuperMatrix):
        src, tgt = phi.src, phi.tgt
        entries = phi.entries
    else:
        if k is None:
            raise ValueError("level needed for a plain matrix")
        src, tgt = k, k - 1
        entries = [[Form.scalar(x) for x in row] for row in phi]
    out = []
    for row in entries:
        r = []
        for x in row:
            if not isinstance(x, Form):
                raise ValueError("dphi needs form-valued entries")
            if x.degrees() - {0}:
                raise ValueError("dphi needs entries of form degree 0")
            r.append(d(x))
        out.append(r)
    return SuperMatrix(out, src, tgt, 1)


def dphi_product(E: FreeComplex, k: int) -> SuperMatrix:
    """``D phi_1 ... D phi_k`` as a ``k -> 0`` block."""
    if k > E.length:
        raise ValueError("level beyond the length of the complex")
    n0 = E.rank(0)
    acc = SuperMatrix([[Form.scalar(ONE) if i == j else Form() for j in range(n0)] for i in range(n0)], 0, 0, 0)
    for j in range(1, k + 1):
        acc = super_mul(acc, dphi(E.phi(j), j))
    return acc


def shift_identity_holds(E: FreeComplex, l: int) -> bool:
    """``phi_l D phi_{l+1} = D phi_l phi_{l+1}`` in the super algebra."""
    lhs = super_mul(E.super_phi(l), dphi(E.phi(l + 1), l + 1))
    rhs = super_mul(dphi(E.phi(l), l), E.super_phi(l + 1))
    return lhs == rhs


# -- universal resolution ---------------------------------------------------------------

@dataclass
class UniversalData:
    prime: Tuple[int, ...]          # W = V(z_i : i in prime), in this order
    basis: List[Tuple[int, ...]]    # exponent tuples alpha^1..alpha^m over prime vars
    multmats: List[PolyMatrix]      # multiplication by [z_i], constant 0/1 matrices
    K: FreeComplex
    L: FreeComplex                  # Koszul of the pure powers
    c: ChainMap
    beta: Tuple[int, ...]

    @property
    def m(self) -> int:
        return len(self.basis)

    @property
    def p(self) -> int:
        return len(self.prime)

    def btilde(self) -> PolyMatrix:
        """``sum_{gamma <= beta-1} z^(beta-gamma-1) M^gamma`` as an ``m x m`` matrix."""
        out = identity(self.m)
        for i, v in enumerate(self.prime):
            out = pmatmul(out, _btilde_factor(self.multmats[i], v, self.beta[i], self.m))
        return out

    def unit_vector(self) -> int:
        return self.basis.index(tuple(0 for _ in self.prime))


def _btilde_factor(M: PolyMatrix, v: int, b: int, m: int) -> PolyMatrix:
    out = zeros(m, m)
    Mg = identity(m)
    for g in range(b):
        out = padd(out, pscale(Mg, Poly.var(v, b - g - 1)))
        Mg = pmatmul(Mg, M)
    return out


def standard_basis(gens: Sequence[Tuple[int, ...]], p: int) -> List[Tuple[int, ...]]:
    """Monomials outside the ideal, grown from 1 by multiplying by variables."""
    def inside(e):
        return any(all(g[i] <= e[i] for i in range(p)) for g in gens)

    start = tuple([0] * p)
    if inside(start):
        return []
    seen = {start}
    frontier = [start]
    while frontier:
        nxt = []
        for e in frontier:
            for i in range(p):
                f = e[:i] + (e[i] + 1,) + e[i + 1:]
                if f not in seen and not inside(f):
                    seen.add(f)
                    nxt.append(f)
        frontier = nxt
        if len(seen) > 100000:
            raise UnsupportedCase("localized ideal is not Artinian")
    return sorted(seen, key=lambda e: (-sum(e), tuple(-x for x in e)))


def universal_resolution(ideal_gens: Sequence[Tuple[int, ...]], prime: Sequence[int]) -> UniversalData:
    """Koszul complex over ``A`` of ``z_i - [z_i]`` and the comparison map ``c``.

    ``ideal_gens`` are exponent vectors over all variables, ``prime`` the
    variable indices cutting out ``W``.
    """
    from .cycles import MonomialIdeal, minimal_primes  # combinatorics only

    nv = len(ideal_gens[0])
    J = MonomialIdeal([f"v{i}" for i in range(nv)], ideal_gens)
    P = tuple(sorted(prime))
    if frozenset(P) not in minimal_primes(J):
        raise UnsupportedCase("W is not a minimal prime of the ideal")
    p = len(P)
    loc = [tuple(g[i] for i in P) for g in J.gens]
    basis = standard_basis(loc, p)
    m = len(basis)
    pos = {e: n for n, e in enumerate(basis)}
    beta = []
    for i in range(p):
        b = 1
        while any(all(g[j] <= (b if j == i else 0) for j in range(p)) for g in loc) is False:
            b += 1
        beta.append(b)
    multmats = []
    for i in range(p):
        M = zeros(m, m)
        for col, e in enumerate(basis):
            f = e[:i] + (e[i] + 1,) + e[i + 1:]
            if f in pos:
                M[pos[f]][col] = ONE
        multmats.append(M)
    elements = []
    for i, v in enumerate(P):
        X = [[(Poly.var(v) if a == b else ZERO) - multmats[i][a][b] for b in range(m)] for a in range(m)]
        elements.append(X)
    K = koszul_blocks(elements, m)
    K.name = "universal"
    L = koszul_complex([Poly.var(v, b) for v, b in zip(P, beta)])
    # c_k(eps_I) = prod_{i in I} c_1-factor applied to [1], placed in block e_I
    unit = pos[tuple([0] * p)]
    factors = [_btilde_factor(multmats[i], v, beta[i], m) for i, v in enumerate(P)]
    maps = []
    for k in range(p + 1):
        subsets = list(combinations(range(p), k))
        mat = zeros(len(subsets) * m, len(subsets))
        for n, I in enumerate(subsets):
            vec = identity(m)
            for i in I:
                vec = pmatmul(vec, factors[i])
            for a in range(m):
                mat[n * m + a][n] = vec[a][unit]
        maps.append(mat)
    c = ChainMap(maps, L, K)
    c.check()
    return UniversalData(P, basis, multmats, K, L, c, tuple(beta))


def form_dz(vs: Sequence[int]) -> Form:
    from .symalg import dz
    return Form.basis([dz(v) for v in vs])


def expected_trace_B(U: UniversalData) -> Form:
    """``p! m z^(beta-1) dz_1 ^ ... ^ dz_p``."""
    mono = Poly.monomial(tuple((holo(v), b - 1) for v, b in zip(U.prime, U.beta) if b > 1))
    return form_dz(U.prime) * (mono * (factorial(U.p) * U.m))


def trace_B(U: UniversalData) -> Form:
    Dp = dphi_product(U.K, U.p)
    B = super_mul(Dp, SuperMatrix.from_poly(U.btilde(), 0, U.p))
    return super_trace(B)


def is_strictly_upper(M: PolyMatrix) -> bool:
    return all(M[i][j].is_zero() for i in range(len(M)) for j in range(len(M)) if j <= i)


def relation_holds(U: UniversalData, gamma: Tuple[int, ...]) -> bool:
    """``z^gamma z^(alpha^j)`` only involves ``alpha^i`` with ``i < j`` (``i <= j`` if gamma = 0)."""
    M = identity(U.m)
    for i, g in enumerate(gamma):
        for _ in range(g):
            M = pmatmul(M, U.multmats[i])
    strict = any(gamma)
    for j in range(U.m):
        for i in range(U.m):
            if not M[i][j].is_zero() and (i > j or (strict and i == j)):
                return False
    return True
