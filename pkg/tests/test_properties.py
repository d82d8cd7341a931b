import random

from hypothesis import given, settings
from hypothesis import strategies as st

from rescycle.curralg import CurrentSum, ch_product, dbar, normalize_with_schedule, random_term
from rescycle.cycles import MonomialIdeal
from rescycle.superhom import (
    ChainMap,
    SuperMatrix,
    dphi,
    dphi_product,
    koszul_complex,
    lift_chain_map,
    matmul,
    shift_identity_holds,
    sign_constant,
    staircase_resolution,
    super_mul,
    super_trace,
    trace_sign,
)
from rescycle.symalg import Form, Poly, RatFun, d, dbar_form, dz, dzbar, wedge

from oracles import c_p, cycle_sign

SETTINGS = settings(max_examples=60, derandomize=True, deadline=None)
NV = 3

monomials = st.tuples(*[st.integers(0, 3) for _ in range(2 * NV)])


@st.composite
def polys(draw, conj=True):
    p = Poly()
    for e in draw(st.lists(monomials, min_size=0, max_size=4)):
        m = tuple((g, k) for g, k in enumerate(e) if k and (conj or g % 2 == 0))
        p = p + Poly.monomial(m, draw(st.integers(-4, 4)))
    return p


@st.composite
def forms(draw, deg=None):
    gens = [dz(i) for i in range(NV)] + [dzbar(i) for i in range(NV)]
    k = draw(st.integers(0, 2)) if deg is None else deg
    f = Form()
    for _ in range(draw(st.integers(1, 3))):
        key = draw(st.permutations(gens))[:k]
        num = draw(polys())
        den = draw(st.sampled_from([Poly.const(1), Poly.var(0) * Poly.cvar(0) + Poly.var(1) * Poly.cvar(1) + 1]))
        f = f + Form.basis(key, RatFun(num, den))
    return f


@SETTINGS
@given(polys(), polys(), polys())
def test_poly_ring_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a * b == b * a
    assert (a - a).is_zero()


@SETTINGS
@given(polys(), polys())
def test_ratfun_normalization_idempotent(a, b):
    if b.is_zero():
        return
    r = RatFun(a, b)
    assert RatFun(r.num, r.den) == r
    assert (r * RatFun(b, 1) - RatFun(a, 1)).is_zero()


@settings(max_examples=25, derandomize=True, deadline=None)
@given(forms())
def test_d_squared_zero(f):
    assert d(d(f)).is_zero()
    assert dbar_form(dbar_form(f)).is_zero()


@SETTINGS
@given(forms(), forms())
def test_wedge_graded_commutative(a, b):
    da, db = a.degree(), b.degree()
    if da is None or db is None:
        return
    lhs = wedge(a, b)
    rhs = wedge(b, a)
    assert lhs == (rhs if (da * db) % 2 == 0 else -rhs)


@SETTINGS
@given(st.integers(0, 10**6))
def test_current_dbar_squared_zero(seed):
    rng = random.Random(seed)
    coef, form, pv, res = random_term(rng, NV, 3)
    c = CurrentSum.build(coef, tuple(form), pv, res)
    assert dbar(dbar(c)).is_zero()


@SETTINGS
@given(st.integers(0, 10**6))
def test_rewriting_confluence(seed):
    rng = random.Random(seed)
    coef, form, pv, res = random_term(rng, NV, 4)
    ref = CurrentSum.build(coef, tuple(form), pv, res)
    for _ in range(4):
        assert normalize_with_schedule(coef, form, pv, res, rng) == ref


@SETTINGS
@given(st.lists(st.integers(1, 4), min_size=1, max_size=3), st.lists(st.integers(0, 5), min_size=3, max_size=3))
def test_duality_annihilator(exps, g):
    powers = list(enumerate(exps))
    R = ch_product(powers)[0, 0]
    mono = Poly.from_exponents(g[:len(exps)])
    J = MonomialIdeal(["x", "y", "z"][:len(exps)], [[e if j == i else 0 for j in range(len(exps))]
                                                    for i, e in enumerate(exps)])
    assert (mono * R).is_zero() == J.contains(g[:len(exps)])


@SETTINGS
@given(st.lists(st.integers(1, 3), min_size=1, max_size=4))
def test_c_p_sign_identity(exps):
    p = len(exps)
    assert sign_constant(p) == c_p(p) == cycle_sign(p)
    powers = list(enumerate(exps))
    K = koszul_complex([Poly.var(v, e) for v, e in powers])
    R = ch_product(powers)
    sup = super_trace(super_mul(dphi_product(K, p), R))
    acc = dphi(K.phi(1), 1)
    for j in range(2, p + 1):
        acc = matmul(acc, dphi(K.phi(j), j))
    plain = super_trace(matmul(acc, R, src=0, tgt=0))
    assert sup == (plain if c_p(p) > 0 else -plain)


@SETTINGS
@given(st.integers(0, 2), st.integers(0, 2), st.integers(0, 3), st.integers(0, 3), st.integers(0, 10**6))
def test_graded_trace_cyclicity(fb, fc, s, t, seed):
    rng = random.Random(seed)

    def rf(deg):
        gens = [dz(i) for i in range(NV)] + [dzbar(i) for i in range(NV)]
        return Form.basis(rng.sample(gens, deg), RatFun(Poly.var(rng.randrange(NV), rng.randint(0, 2))
                                                        * rng.randint(-2, 2)))

    B = SuperMatrix([[rf(fb) for _ in range(2)] for _ in range(3)], t, s, fb)
    C = SuperMatrix([[rf(fc) for _ in range(3)] for _ in range(2)], s, t, fc)
    lhs = super_trace(super_mul(B, C))
    rhs = super_trace(super_mul(C, B))
    assert lhs == (rhs if trace_sign(B, C) > 0 else -rhs)


staircases = st.lists(st.tuples(st.integers(0, 6), st.integers(0, 6)), min_size=1, max_size=5)


def _staircase(pairs):
    gens = MonomialIdeal(["x", "y"], pairs).gens
    return sorted(gens)


@SETTINGS
@given(staircases)
def test_shift_identity(pairs):
    gens = _staircase(pairs)
    if any(g == (0, 0) for g in gens):
        return
    E = staircase_resolution(gens)
    for l in range(1, E.length):
        assert shift_identity_holds(E, l)


@settings(max_examples=25, derandomize=True, deadline=None)
@given(staircases, st.sampled_from([None, 8]))
def test_lifted_chain_maps_commute(pairs, bound):
    gens = _staircase(pairs + [(6, 0), (0, 6)])
    if gens[0][0] != 0 or gens[-1][1] != 0:
        return
    E = staircase_resolution(gens)
    a, b = gens[-1][0], gens[0][1]
    F = koszul_complex([Poly.var(0, a), Poly.var(1, b)])
    cm = lift_chain_map(F, E, [[Poly.const(1)]], bound=bound)
    assert isinstance(cm, ChainMap) and cm.is_valid()
