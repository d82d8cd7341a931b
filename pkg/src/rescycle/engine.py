"""End-to-end verification pipelines.

Every pipeline computes a current of the form
``sum_k 1/((2 pi i)^k k!) tr(D phi_1 ... D phi_k R_k)``, normalizes it to a
cycle and compares it with the combinatorial oracle in :mod:`.cycles`.
"""
from __future__ import annotations

import re
import time
from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial
from typing import Dict, List, Sequence, Tuple

from .curralg import CurrentSum, ch_product, dimension_principle_reduce, normalize_to_cycle, restrict
from .cycles import (
    Cycle,
    MonomialIdeal,
    cycle_equal,
    fundamental_cycle,
    length_along,
    minimal_primes,
    multiplicity_along,
)
from .errors import ComplexError, NotCohenMacaulayCompatible, UnsupportedCase
from .superhom import (
    ChainMap,
    FreeComplex,
    SuperMatrix,
    dphi_product,
    expected_trace_B,
    koszul_complex,
    lift_chain_map,
    pmat_str,
    pmatmul,
    staircase_resolution,
    super_mul,
    super_trace,
    trace_B,
    universal_resolution,
    verify_complex,
)
from .parse import parse_current, parse_poly
from .symalg import ONE, Form, Poly, RatFun, Scalar, holo, poly_exact_div, var_of

MODES = ("auto", "ci", "cm", "universal", "nonpure", "demo")


@dataclass
class Options:
    lift_bound: int | None = None
    seed: int = 0
    emit_intermediates: bool = False


@dataclass
class Case:
    variables: List[str]
    ideal: MonomialIdeal
    mode: str = "auto"
    resolution: FreeComplex | None = None
    ci_tuple: List[Poly] | None = None
    currents: Dict[int, List[List[CurrentSum]]] = field(default_factory=dict)
    prime: List[int] | None = None
    options: Options = field(default_factory=Options)
    name: str = ""
    raw: dict = field(default_factory=dict, repr=False)

    def __post_init__(self):
        if self.mode not in MODES:
            raise UnsupportedCase(f"unknown mode {self.mode!r}")
        if len(self.variables) != self.ideal.nvars:
            raise ValueError("ideal and variable list disagree")


@dataclass
class Report:
    name: str
    mode: str
    variables: List[str]
    computed: Cycle
    oracle: Cycle
    remainder: CurrentSum = field(default_factory=CurrentSum)
    checks: Dict[str, bool] = field(default_factory=dict)
    intermediates: Dict[str, str] = field(default_factory=dict)
    timings: Dict[str, float] = field(default_factory=dict)
    notes: List[str] = field(default_factory=list)
    extras: Dict[str, object] = field(default_factory=dict)
    identity: str = ""

    @property
    def match(self) -> bool:
        return cycle_equal(self.computed, self.oracle) and self.remainder.is_zero() and all(self.checks.values())

    def differences(self) -> List[Tuple[frozenset, Scalar, Scalar]]:
        """Components whose computed and oracle masses differ."""
        out = []
        keys = set(self.computed.masses) | set(self.oracle.masses)
        for S in sorted(keys, key=lambda s: (len(s), sorted(s))):
            got = self.computed.masses.get(S, Scalar(0))
            want = self.oracle.masses.get(S, Scalar(0))
            if got != want:
                out.append((S, got, want))
        return out

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "mode": self.mode,
            "identity": self.identity,
            "computed": self.computed.to_json(self.variables),
            "oracle": self.oracle.to_json(self.variables),
            "match": self.match,
            "remainder": self.remainder.to_str(self.variables),
            "checks": dict(self.checks),
            "intermediates": dict(self.intermediates),
            "timings": {k: round(v, 6) for k, v in self.timings.items()},
            "notes": list(self.notes),
            "extras": {k: _jsonable(v) for k, v in self.extras.items()},
        }


def _jsonable(v):
    if isinstance(v, Scalar):
        return v.to_json()
    if isinstance(v, Fraction):
        return str(v)
    if isinstance(v, (list, tuple)):
        return [_jsonable(x) for x in v]
    return v


class _Timer:
    def __init__(self, report_timings: Dict[str, float], label: str):
        self.t = report_timings
        self.label = label

    def __enter__(self):
        self.start = time.perf_counter()

    def __exit__(self, *exc):
        self.t[self.label] = self.t.get(self.label, 0.0) + time.perf_counter() - self.start


def default_names(n: int) -> List[str]:
    if n <= 3:
        return ["x", "y", "z"][:n]
    return [f"z{i + 1}" for i in range(n)]


def pure_power(f: Poly) -> Tuple[int, int] | None:
    """``(variable, exponent)`` if ``f`` is ``z_i^a`` with unit coefficient."""
    if not f.is_monomial():
        return None
    (m, c), = f.terms.items()
    if c != 1 or len(m) != 1:
        return None
    g, e = m[0]
    if g != holo(var_of(g)):
        return None
    return var_of(g), e


def _ci_powers(f: Sequence[Poly]) -> List[Tuple[int, int]]:
    powers = []
    for x in f:
        pp = pure_power(x)
        if pp is None:
            raise UnsupportedCase(f"unsupported CI tuple: {x} is not a pure power of a variable")
        powers.append(pp)
    vs = [v for v, _ in powers]
    if len(set(vs)) != len(vs):
        raise UnsupportedCase("unsupported CI tuple: repeated variable")
    return powers


def trace_current(E: FreeComplex, R: SuperMatrix, k: int) -> CurrentSum:
    """``1/((2 pi i)^k k!) tr(D phi_1 ... D phi_k R)`` for ``R : E_0 -> E_k``."""
    Dp = dphi_product(E, k)
    tr = super_trace(super_mul(Dp, R))
    return CurrentSum.lift(tr).scale(Scalar(Fraction(1, factorial(k)), -k))


def _identity_text(k_levels: Sequence[int]) -> str:
    def prod(k):
        return "Dphi_1" if k == 1 else "Dphi_1 Dphi_2" if k == 2 else f"Dphi_1...Dphi_{k}"

    parts = [f"1/((2*pi*i)^{k} {k}!) tr({prod(k)} R_{k})" for k in k_levels]
    return " + ".join(parts) + " = [Z]"


# -- complete intersections --------------------------------------------------------------

def verify_trace(E: FreeComplex, R: SuperMatrix, oracle: Cycle, variables: Sequence[str],
                 name: str = "", mode: str = "ci") -> Report:
    """Compare ``1/((2 pi i)^p p!) tr(D phi_1 ... D phi_p R)`` with ``oracle``."""
    p = R.tgt
    timings: Dict[str, float] = {}
    with _Timer(timings, "trace"):
        S = trace_current(E, R, p)
    with _Timer(timings, "normalize"):
        computed, rest = normalize_to_cycle(S)
    return Report(
        name or mode, mode, list(variables), computed, oracle, rest,
        intermediates={
            "Dphi_product": dphi_product(E, p).to_str(variables),
            "R_p": R.to_str(variables),
            "trace": S.to_str(variables),
        },
        timings=timings,
        identity=_identity_text([p]),
    )


def verify_ci(f: Sequence[Poly], variables: Sequence[str] | None = None, name: str = "") -> Report:
    powers = _ci_powers(f)
    nv = max(v for v, _ in powers) + 1
    variables = list(variables) if variables else default_names(nv)
    E = koszul_complex(list(f))
    R = ch_product(powers)
    return verify_trace(E, R, fundamental_cycle(_ci_ideal(variables, powers)), variables, name)


def _ci_ideal(variables, powers) -> MonomialIdeal:
    gens = []
    for v, e in powers:
        g = [0] * len(variables)
        g[v] = e
        gens.append(g)
    return MonomialIdeal(variables, gens)


# -- Cohen-Macaulay comparison ---------------------------------------------------------------

def _codim(J: MonomialIdeal) -> int:
    return min(len(P) for P in minimal_primes(J))


def default_ci_tuple(J: MonomialIdeal) -> List[Poly]:
    primes = minimal_primes(J)
    if len(primes) != 1:
        raise UnsupportedCase("unsupported CI tuple: ideal has several minimal primes")
    out = []
    for v in sorted(primes[0]):
        pure = [g[v] for g in J.gens if g[v] and all(e == 0 for i, e in enumerate(g) if i != v)]
        if not pure:
            raise UnsupportedCase("unsupported CI tuple: no pure power of "
                                  f"{J.variables[v]} among the generators")
        out.append(Poly.var(v, min(pure)))
    return out


def default_resolution(J: MonomialIdeal) -> FreeComplex:
    if J.nvars != 2:
        raise UnsupportedCase("no built-in resolution for this ideal; supply one")
    if len(J.gens) == 1:
        return FreeComplex([1, 1], [[[Poly.from_exponents(J.gens[0])]]], "principal")
    return staircase_resolution(sorted(J.gens))


def verify_cm(J: MonomialIdeal, E: FreeComplex | None = None, f: Sequence[Poly] | None = None,
              lift_bound: int | None = None, seed: int = 0, name: str = "") -> Report:
    timings: Dict[str, float] = {}
    variables = list(J.variables)
    E = E if E is not None else default_resolution(J)
    f = list(f) if f is not None else default_ci_tuple(J)
    powers = _ci_powers(f)
    for v, e in powers:
        g = [0] * J.nvars
        g[v] = e
        if not J.contains(g):
            raise UnsupportedCase(f"unsupported CI tuple: {J.variables[v]}^{e} is not in the ideal")
    p = len(powers)
    if _codim(J) != p:
        raise UnsupportedCase("unsupported CI tuple: its length differs from the codimension")
    if E.rank(0) != 1:
        raise UnsupportedCase("resolution must have rank one at level 0")
    if E.length != p:
        raise NotCohenMacaulayCompatible(
            f"not Cohen-Macaulay-compatible: resolution has length {E.length}, codimension is {p}")
    oracle = fundamental_cycle(J)
    with _Timer(timings, "complex"):
        try:
            verify_complex(E, seed=seed)
        except ComplexError as e:
            return Report(name or "cm", "cm", variables, Cycle(), oracle, checks={"resolution": False},
                          notes=[f"supplied resolution rejected at {e}"], timings=timings,
                          identity=_identity_text([p]))
        F = koszul_complex(f)
    with _Timer(timings, "lift"):
        a = lift_chain_map(F, E, [[ONE]], lift_bound)
    with _Timer(timings, "trace"):
        RE = super_mul(a.super(p), ch_product(powers))
        S = trace_current(E, RE, p)
    with _Timer(timings, "normalize"):
        computed, rest = normalize_to_cycle(S)
    inter = {f"a_{k}": pmat_str(a[k], variables) for k in range(p + 1)}
    inter["R^E_p"] = RE.to_str(variables)
    inter["Dphi_product"] = dphi_product(E, p).to_str(variables)
    return Report(name or "cm", "cm", variables, computed, oracle, rest, intermediates=inter, timings=timings,
                  notes=["R^E_p a_0 = a_p R^F_p with a_0 = 1"], identity=_identity_text([p]))


# -- universal resolution ----------------------------------------------------------------------

def universal_current(U) -> CurrentSum:
    """Normalized trace for the universal resolution of a localized ideal."""
    m, p = U.m, U.p
    u = U.unit_vector()
    col = pmatmul(U.btilde(), [[ONE if i == u else Poly() for _ in range(1)] for i in range(m)])
    columns = []
    for alpha in U.basis:
        v = col
        for i, a in enumerate(alpha):
            for _ in range(a):
                v = pmatmul(U.multmats[i], v)
        columns.append([r[0] for r in v])
    ch = ch_product(list(zip(U.prime, U.beta)))[0, 0]
    RK = SuperMatrix([[ch * columns[j][i] for j in range(m)] for i in range(m)], 0, p, p)
    return trace_current(U.K, RK, p)


def verify_universal(J: MonomialIdeal, W: Sequence[int], name: str = "") -> Report:
    timings: Dict[str, float] = {}
    variables = list(J.variables)
    with _Timer(timings, "build"):
        U = universal_resolution(J.gens, list(W))
    with _Timer(timings, "trace_B"):
        trB = trace_B(U)
        ok_B = trB == expected_trace_B(U)
    with _Timer(timings, "trace"):
        S = universal_current(U)
    with _Timer(timings, "normalize"):
        computed, rest = normalize_to_cycle(S)
    oracle = Cycle.point(W, multiplicity_along(J, W))
    return Report(
        name or "universal", "universal", variables, computed, oracle, rest,
        checks={"trace_B": ok_B, "chain_map": U.c.is_valid()},
        intermediates={
            "basis": ", ".join("[" + (Poly.from_exponents(_full(U, a, J.nvars)).to_str(variables)) + "]"
                               for a in U.basis),
            "beta": str(U.beta),
            "tr_B": trB.to_str(variables),
            "trace": S.to_str(variables),
        },
        extras={"m": U.m, "beta": list(U.beta)},
        timings=timings,
        identity=_identity_text([U.p]),
    )


def _full(U, alpha, n):
    e = [0] * n
    for v, a in zip(U.prime, alpha):
        e[v] = a
    return e


def verify_components(J: MonomialIdeal, name: str = "") -> Report:
    """Universal-resolution check summed over all minimal primes."""
    computed, oracle, rest = Cycle(), Cycle(), CurrentSum()
    checks, timings, inter = {}, {}, {}
    for P in minimal_primes(J):
        r = verify_universal(J, sorted(P))
        label = "=".join(J.variables[i] for i in sorted(P))
        computed = computed + r.computed
        oracle = oracle + r.oracle
        rest = rest + r.remainder
        for k, v in r.checks.items():
            checks[f"{k}[{label}]"] = v
        for k, v in r.timings.items():
            timings[k] = timings.get(k, 0.0) + v
        for k, v in r.intermediates.items():
            inter[f"{k}[{label}]"] = v
    full = fundamental_cycle(J)
    checks["oracle_sum"] = cycle_equal(oracle, full)
    return Report(name or "universal", "universal", list(J.variables), computed, full, rest,
                  checks=checks, intermediates=inter, timings=timings,
                  identity="sum over W of 1/((2*pi*i)^p p!) tr(Dphi_1...Dphi_p R^K_p) = [Z]")


# -- non-pure dimension ----------------------------------------------------------------------

NONPURE_CURRENTS = {
    1: [["bar(x)/(x*bar(x) + y*bar(y)) * res(1/z)"],
        ["bar(y)/(x*bar(x) + y*bar(y)) * res(1/z)"]],
    2: [["pv(1/z) * res(1/y) ^ res(1/x)"
         " + delbar(-bar(y)/(x*bar(x) + y*bar(y))) * bar(x)/(x*bar(x) + y*bar(y)) * res(1/z)"
         " + delbar(bar(x)/(x*bar(x) + y*bar(y))) * bar(y)/(x*bar(x) + y*bar(y)) * res(1/z)"]],
}
NONPURE_RESOLUTION = [[["x*z", "y*z"]], [["-y"], ["x"]]]


def nonpure_builtin(variables: Sequence[str] = ("x", "y", "z"), order: Sequence[str] = ("x", "y", "z")):
    """Resolution and residue current of ``(xz, yz)``.

    ``order`` names the case variables playing the roles of x, y, z.
    """
    sub = _renamer(order)
    mats = [[[parse_poly(sub(s), variables) for s in row] for row in m] for m in NONPURE_RESOLUTION]
    E = FreeComplex([1, 2, 1], mats, "nonpure")
    currents = {k: [[parse_current(sub(s), variables) for s in row] for row in m]
                for k, m in NONPURE_CURRENTS.items()}
    return E, currents


def components_by_codim(J: MonomialIdeal) -> Dict[int, List[frozenset]]:
    out: Dict[int, List[frozenset]] = {}
    for P in minimal_primes(J):
        out.setdefault(len(P), []).append(P)
    return out


def verify_nonpure(J: MonomialIdeal, E: FreeComplex, currents: Dict[int, List[List[CurrentSum]]],
                   seed: int = 0, name: str = "") -> Report:
    variables = list(J.variables)
    timings: Dict[str, float] = {}
    if E.rank(0) != 1:
        raise UnsupportedCase("resolution must have rank one at level 0")
    comps = components_by_codim(J)
    with _Timer(timings, "complex"):
        try:
            verify_complex(E, seed=seed)
        except ComplexError as e:
            return Report(name or "nonpure", "nonpure", variables, Cycle(), fundamental_cycle(J),
                          checks={"resolution": False}, notes=[f"supplied resolution rejected at {e}"],
                          timings=timings, identity=_identity_text(sorted(comps)))
    total = CurrentSum()
    inter: Dict[str, str] = {}
    levels = sorted(comps)
    for k in levels:
        if k not in currents:
            raise UnsupportedCase(f"no residue current supplied at level {k}")
        Rk = currents[k]
        if len(Rk) != E.rank(k) or any(len(row) != 1 for row in Rk):
            raise UnsupportedCase(f"current at level {k} must be a {E.rank(k)}x1 matrix")
        with _Timer(timings, "restrict"):
            Rres = [[restrict([sorted(P) for P in comps[k]], c) for c in row] for row in Rk]
        with _Timer(timings, "trace"):
            term = trace_current(E, SuperMatrix(Rres, 0, k, k), k)
        inter[f"R_[{k}]"] = "; ".join(c.to_str(variables) for row in Rres for c in row)
        inter[f"term_{k}"] = term.to_str(variables)
        total = total + term
    with _Timer(timings, "normalize"):
        computed, rest = normalize_to_cycle(total)
    return Report(name or "nonpure", "nonpure", variables, computed, fundamental_cycle(J), rest,
                  intermediates=inter, timings=timings, identity=_identity_text(levels))


MU = ("delbar(-bar(y)/(x*bar(x) + y*bar(y))) * bar(x)/(x*bar(x) + y*bar(y)) * res(1/z)"
      " + delbar(bar(x)/(x*bar(x) + y*bar(y))) * bar(y)/(x*bar(x) + y*bar(y)) * res(1/z)")


def _renamer(order: Sequence[str]):
    rename = dict(zip("xyz", order))
    return lambda src: re.sub(r"\b([xyz])\b", lambda mm: rename[mm.group(1)], src)


def restriction_facts(variables: Sequence[str] = ("x", "y", "z"),
                      order: Sequence[str] = ("x", "y", "z")) -> Dict[str, bool]:
    """The two vanishing statements used for ``(xz, yz)`` at the point component."""
    sub = _renamer(order)
    W = [variables.index(order[0]), variables.index(order[1])]
    mu = parse_current(sub(MU), variables)
    label = f"1_{{{order[0]}={order[1]}=0}}"
    return {
        f"{label} res(1/{order[2]}) = 0": restrict(W, parse_current(sub("res(1/z)"), variables)).is_zero(),
        f"{label} mu = 0": (not mu.is_zero()) and restrict(W, mu).is_zero(),
    }


# -- embedded prime example ------------------------------------------------------------------

def embedded_data(k: int, l: int, m: int):
    if not (1 <= m < k and l >= 1):
        raise UnsupportedCase("parameters must satisfy 1 <= m < k and l >= 1")
    x, y = 0, 1
    E = staircase_resolution([(0, k), (l, m)])
    F = koszul_complex([Poly.var(y), Poly.var(x)])
    a0 = [[Poly.var(x, l - 1) * Poly.var(y, k - 1)]]
    closed = [a0, [[Poly.var(x, l - 1), Poly()], [Poly(), Poly.var(y, k - m - 1)]], [[ONE]]]
    return E, F, a0, closed


def demo_embedded(k: int, l: int, m: int, lift_bound: int | None = None, seed: int = 0) -> Report:
    variables = ["x", "y"]
    timings: Dict[str, float] = {}
    E, F, a0, closed = embedded_data(k, l, m)
    J = MonomialIdeal(variables, [(0, k), (l, m)])
    checks: Dict[str, bool] = {}
    notes: List[str] = []
    with _Timer(timings, "complex"):
        verify_complex(E, seed=seed)
    with _Timer(timings, "lift"):
        a = lift_chain_map(F, E, a0, lift_bound)
    checks["closed_form_chain_map"] = ChainMap(closed, F, E).is_valid()
    # correction term of bidegree (0,1) supported at the origin
    M2 = CurrentSum.opaque_term("M_2", 1, [0, 1])
    checks["M_2 killed by dimension principle"] = dimension_principle_reduce(M2).is_zero()
    notes.append("M_2 has bidegree (0,1) and support {x=y=0} of codimension 2, so it vanishes")
    with _Timer(timings, "trace"):
        Dp = dphi_product(E, 2)
        RF = ch_product([(1, 1), (0, 1)])
        currents = []
        for name, a2 in (("lifted", a[2]), ("closed form", closed[2])):
            # D phi_1 D phi_2 = c * a_0 dx^dy, and R^E_2 a_0 = a_2 R^F_2
            form = Dp[0, 0]
            (key, coef), = form.terms.items()
            q = poly_exact_div(coef.num, a0[0][0])
            if q is None or not coef.is_poly():
                raise UnsupportedCase("D phi product is not a multiple of a_0")
            Dred = SuperMatrix([[Form({key: RatFun(q)})]], 2, 0, 2)
            cur = super_trace(super_mul(Dred, super_mul(SuperMatrix.from_poly(a2, 2, 2), RF)))
            currents.append((name, CurrentSum.lift(cur)))
    with _Timer(timings, "normalize"):
        point, rest = normalize_to_cycle(currents[0][1])
    checks["lift independence"] = currents[0][1] == currents[1][1]
    coefficient = point.masses.get(frozenset([0, 1]), Scalar(0))
    expected_coef = Scalar(l * (2 * k - m), 2)
    checks["coefficient"] = coefficient == expected_coef and len(point.masses) == 1
    length = length_along(J, [0, 1])
    checks["length"] = length == l * (k - m)
    u = verify_universal(J, [1])
    checks.update({f"universal {kk}": vv for kk, vv in u.checks.items()})
    inter = {
        "Dphi_product": Dp.to_str(variables),
        "a_1": pmat_str(a[1], variables),
        "a_2": pmat_str(a[2], variables),
        "Dphi_product R^E_2": currents[0][1].to_str(variables),
    }
    return Report(f"ex-embedded k={k} l={l} m={m}", "demo", variables, u.computed, u.oracle,
                  rest + u.remainder, checks=checks, intermediates=inter, timings=timings, notes=notes,
                  extras={"coefficient": coefficient, "expected_coefficient": expected_coef,
                          "length": length, "expected_length": l * (k - m),
                          "point_current": point.to_str(variables)},
                  identity="Dphi_1 Dphi_2 R^E_2 = (2*pi*i)^2 l(2k-m)[0]; 1/(2*pi*i) tr(Dphi_1 R_1) = m[y=0]")


def demo_nonpure(seed: int = 0) -> Report:
    variables = ["x", "y", "z"]
    J = MonomialIdeal(variables, [(1, 0, 1), (0, 1, 1)])
    E, currents = nonpure_builtin(variables)
    r = verify_nonpure(J, E, currents, seed=seed, name="ex-nonpure")
    r.checks.update(restriction_facts())
    return r


# -- dispatch ---------------------------------------------------------------------------------

def _is_nonpure_example(J: MonomialIdeal) -> Tuple[int, int, int] | None:
    """Variable indices ``(x, y, z)`` if ``J = (xz, yz)`` up to renaming."""
    if J.nvars != 3 or len(J.gens) != 2:
        return None
    for zi in range(3):
        others = [i for i in range(3) if i != zi]
        want = set()
        for o in others:
            g = [0, 0, 0]
            g[o] = 1
            g[zi] = 1
            want.add(tuple(g))
        if set(J.gens) == want:
            return others[0], others[1], zi
    return None


def _embedded_params(J: MonomialIdeal) -> Tuple[int, int, int] | None:
    if J.nvars != 2 or len(J.gens) != 2:
        return None
    g1, g2 = sorted(J.gens)
    if g1[0] == 0 and g2[0] >= 1 and g2[1] >= 1 and g1[1] > g2[1]:
        return g1[1], g2[0], g2[1]
    return None


def run_case(case: Case) -> Report:
    J = case.ideal
    o = case.options
    mode = case.mode
    name = case.name
    if mode == "auto":
        gens = J.gen_polys()
        if all(pure_power(g) for g in gens) and len({pure_power(g)[0] for g in gens}) == len(gens):
            mode = "ci"
        elif case.currents:
            mode = "nonpure"
        elif case.resolution is not None:
            mode = "cm"
        else:
            mode = "universal"
    if mode == "ci":
        f = case.ci_tuple or J.gen_polys()
        r = verify_ci(f, case.variables, name)
        r.oracle = fundamental_cycle(J)
        return r
    if mode == "cm":
        return verify_cm(J, case.resolution, case.ci_tuple, o.lift_bound, o.seed, name)
    if mode == "universal":
        if case.prime is not None:
            return verify_universal(J, case.prime, name)
        return verify_components(J, name)
    if mode == "nonpure":
        if case.currents:
            if case.resolution is None:
                raise UnsupportedCase("injected currents need a resolution")
            return verify_nonpure(J, case.resolution, case.currents, o.seed, name)
        xyz = _is_nonpure_example(J)
        if xyz is not None:
            order = [case.variables[i] for i in xyz]
            E, currents = nonpure_builtin(case.variables, order)
            r = verify_nonpure(J, E, currents, o.seed, name or "ex-nonpure")
            r.checks.update(restriction_facts(case.variables, order))
            return r
        gens = J.gen_polys()
        if all(pure_power(g) for g in gens):
            powers = _ci_powers(gens)
            E = koszul_complex(gens)
            R = ch_product(powers)
            return verify_nonpure(J, E, {len(powers): [[R[0, 0]]]}, o.seed, name)
        raise UnsupportedCase("non-pure mode needs injected residue currents for this ideal")
    if mode == "demo":
        params = _embedded_params(J)
        if params is not None:
            r = demo_embedded(*params, lift_bound=o.lift_bound, seed=o.seed)
            r.name = name or r.name
            return r
        if _is_nonpure_example(J) is not None:
            case.mode = "nonpure"
            try:
                return run_case(case)
            finally:
                case.mode = "demo"
        raise UnsupportedCase("demo mode knows only (y^k, x^l y^m) and (xz, yz)")
    raise UnsupportedCase(f"unknown mode {mode!r}")

