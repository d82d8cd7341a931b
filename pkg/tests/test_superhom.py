import random

import pytest

from rescycle.cycles import MonomialIdeal
from rescycle.errors import ComplexError, LiftError
from rescycle.superhom import (
    ChainMap,
    FreeComplex,
    SuperMatrix,
    dphi,
    dphi_product,
    expected_trace_B,
    identity,
    is_strictly_upper,
    koszul_complex,
    lift_chain_map,
    matmul,
    relation_holds,
    shift_identity_holds,
    sign_constant,
    staircase_resolution,
    super_mul,
    super_trace,
    trace_B,
    trace_sign,
    universal_resolution,
    verify_complex,
)
from rescycle.symalg import ONE, Form, Poly, RatFun, dz

from oracles import c_p, koszul_dphi_coefficient

X, Y, Z = Poly.var(0), Poly.var(1), Poly.var(2)
NAMES = ["x", "y", "z"]


def dform(*vs):
    return Form.basis([dz(v) for v in vs])


def test_koszul_examples():
    K = koszul_complex([Y, X])
    assert K.phi(1) == [[Y, X]]
    assert K.phi(2) == [[-X], [Y]]
    assert koszul_complex([Z]).phi(1) == [[Z]]
    K = koszul_complex([Poly.var(0, 2), Poly.var(1, 3)])
    assert K.phi(2) == [[-Poly.var(1, 3)], [Poly.var(0, 2)]]
    assert K.ranks == [1, 2, 1]


def test_koszul_three_is_complex():
    K = koszul_complex([X, Y, Z])
    assert K.ranks == [1, 3, 3, 1]
    assert verify_complex(K)["generic_ranks"] == [1, 2, 1]


def test_staircase_examples():
    k, l, m = 4, 2, 1
    E = staircase_resolution([(0, k), (l, m)])
    assert E.phi(1) == [[Poly.var(1, k), Poly.var(0, l) * Poly.var(1, m)]]
    assert E.phi(2) == [[-Poly.var(0, l)], [Poly.var(1, k - m)]]
    E = staircase_resolution([(0, 1), (1, 0)])
    assert E.phi(2) == [[-X], [Y]]
    E = staircase_resolution([(0, 3), (1, 1), (2, 0)])
    assert E.phi(2) == [[-X, Poly()], [Y**2, -X], [Poly(), Y]]
    verify_complex(E)


def test_staircase_rejects_bad_input():
    with pytest.raises(ValueError):
        staircase_resolution([(0, 2), (1, 2)])
    with pytest.raises(ValueError):
        staircase_resolution([(1, 2), (0, 3)])


def test_verify_complex_failure():
    E = FreeComplex([1, 1, 1], [[[X]], [[X]]])
    with pytest.raises(ComplexError) as e:
        verify_complex(E)
    assert e.value.level == 1


def test_verify_complex_rank_failure():
    # phi phi = 0 but not exact in the middle
    E = FreeComplex([1, 1, 1], [[[X]], [[Poly()]]])
    with pytest.raises(ComplexError):
        verify_complex(E)


def test_dphi_examples():
    phi1 = SuperMatrix.from_poly([[X * Z, Y * Z]], 1, 0)
    D = dphi(phi1)
    assert D.entries == [[Form({(dz(0),): Z, (dz(2),): X}), Form({(dz(1),): Z, (dz(2),): Y})]]
    assert D.deg_f == 1 and D.deg_e == 1 and D.deg == 0
    assert dphi([[Z]], 1).entries == [[dform(2)]]
    k, l, m = 3, 2, 1
    D2 = dphi(staircase_resolution([(0, k), (l, m)]).phi(2), 2)
    assert D2.entries == [[dform(0) * (-l * X)], [dform(1) * ((k - m) * Y)]]


def test_dphi_product_koszul_matches_jacobian():
    cases = [(["x**2", "y**3"], 2), (["x*y", "y**2 + x"], 2), (["x", "y", "z"], 3), (["x**2*z", "y + x", "z**3"], 3)]
    for fs, n in cases:
        vs = NAMES[:n]
        D = dphi_product(koszul_complex([_sympy_to_poly(s) for s in fs]), len(fs))
        (key, got), = D[0, 0].terms.items()
        assert key == tuple(dz(i) for i in range(n))
        assert _poly_equal(got.num, koszul_dphi_coefficient(fs, vs), vs)


def _poly_equal(p, expr, vs):
    import sympy

    syms = sympy.symbols(vs)
    s = sum(sympy.Rational(c.numerator, c.denominator) *
            sympy.Mul(*[syms[g // 2] ** e for g, e in m]) for m, c in p.terms.items())
    return sympy.expand(s - expr) == 0


def _sympy_to_poly(s):
    from rescycle.parse import parse_poly

    return parse_poly(s.replace("**", "^"), NAMES)


def test_dphi_product_example_embedded():
    for k, l, m in [(3, 2, 1), (2, 1, 1), (4, 3, 2)]:
        D = dphi_product(staircase_resolution([(0, k), (l, m)]), 2)
        want = -l * (2 * k - m) * Poly.var(0, l - 1) * Poly.var(1, k - 1)
        assert D.entries == [[dform(0, 1) * want]]


def test_dphi_product_single_level():
    assert dphi_product(FreeComplex([1, 1], [[[Z]]]), 1).entries == [[dform(2)]]


def test_super_mul_shape_and_level_errors():
    a = SuperMatrix.from_poly([[X, Y]], 1, 0)
    with pytest.raises(ValueError, match="shape"):
        super_mul(a, SuperMatrix.from_poly([[X]], 0, 1))
    with pytest.raises(ValueError, match="level"):
        super_mul(a, SuperMatrix.from_poly([[X], [Y]], 0, 2))
    with pytest.raises(ValueError):
        super_trace(a)


def test_trace_of_identity():
    m = 4
    assert super_trace(SuperMatrix.from_poly(identity(m), 0, 0)) == Form.scalar(Poly.const(m))


def test_sign_constant():
    assert [sign_constant(p) for p in range(1, 6)] == [c_p(p) for p in range(1, 6)]


def _random_form(rng, deg, nv=3):
    gens = [dz(i) for i in range(nv)]
    f = Form()
    for _ in range(2):
        key = rng.sample(gens, deg)
        coef = Poly.var(rng.randrange(nv), rng.randint(0, 2)) * rng.randint(-2, 2)
        f = f + Form.basis(key, RatFun(coef))
    return f


def test_graded_trace_cyclicity_random():
    rng = random.Random(3)
    for _ in range(30):
        fb, fc = rng.randint(0, 2), rng.randint(0, 1)
        s, t = rng.randint(0, 3), rng.randint(0, 3)
        B = SuperMatrix([[_random_form(rng, fb) for _ in range(3)] for _ in range(2)], t, s, fb)
        C = SuperMatrix([[_random_form(rng, fc) for _ in range(2)] for _ in range(3)], s, t, fc)
        lhs = super_trace(super_mul(B, C))
        rhs = super_trace(super_mul(C, B))
        sign = trace_sign(B, C)
        assert lhs == (rhs if sign > 0 else -rhs)


def test_shift_identity_built_complexes():
    for E in (koszul_complex([X, Y, Z]), staircase_resolution([(0, 3), (1, 1), (2, 0)]),
              koszul_complex([X**2, Y * X + Y**3])):
        for l in range(1, E.length):
            assert shift_identity_holds(E, l)


def test_lift_embedded_example():
    k, l, m = 3, 2, 1
    E = staircase_resolution([(0, k), (l, m)])
    F = koszul_complex([Y, X])
    a0 = [[Poly.var(0, l - 1) * Poly.var(1, k - 1)]]
    a = lift_chain_map(F, E, a0)
    a.check()
    closed = [a0, [[Poly.var(0, l - 1), Poly()], [Poly(), Poly.var(1, k - m - 1)]], [[ONE]]]
    assert ChainMap(closed, F, E).is_valid()


def test_lift_identity_and_ci_to_staircase():
    E = staircase_resolution([(0, 3), (1, 1), (2, 0)])
    a = lift_chain_map(E, E, [[ONE]])
    a.check()
    F = koszul_complex([Poly.var(0, 2), Poly.var(1, 3)])
    lift_chain_map(F, E, [[ONE]], bound=3).check()


def test_lift_failure_names_level():
    # a0 = 1 from Koszul(x) into Koszul(x^2): x * 1 is not in (x^2)
    F = koszul_complex([X])
    E = koszul_complex([X**2])
    with pytest.raises(LiftError) as e:
        lift_chain_map(F, E, [[ONE]], bound=2, retries=1)
    assert e.value.level == 1
    assert "lift-failed" in str(e.value)


def test_universal_examples():
    U = universal_resolution([(0, 3), (1, 2)], [1])
    assert U.basis == [(1,), (0,)]
    assert U.multmats == [[[Poly(), ONE], [Poly(), Poly()]]]
    assert U.beta == (2,)
    assert trace_B(U) == Form({(dz(1),): 2 * Y})
    U = universal_resolution([(5,)], [0])
    assert U.basis == [(4,), (3,), (2,), (1,), (0,)] and U.beta == (5,)
    U = universal_resolution([(1, 0, 1), (0, 1, 1)], [2])
    assert U.basis == [(0,)] and U.multmats == [[[Poly()]]] and U.beta == (1,)


def test_universal_structure_random():
    rng = random.Random(11)
    done = 0
    while done < 15:
        n = rng.randint(2, 3)
        gens = [tuple(rng.randint(0, 3) for _ in range(n)) for _ in range(rng.randint(1, 4))]
        if any(not any(g) for g in gens):
            continue
        J = MonomialIdeal(["a", "b", "c"][:n], gens)
        from rescycle.cycles import minimal_primes

        for P in minimal_primes(J):
            if len(P) > 2:
                continue
            U = universal_resolution(J.gens, sorted(P))
            if U.m > 8:
                continue
            U.c.check()
            verify_complex(U.K)
            assert all(is_strictly_upper(M) for M in U.multmats)
            assert relation_holds(U, tuple(0 for _ in U.prime))
            for i in range(U.p):
                assert relation_holds(U, tuple(1 if j == i else 0 for j in range(U.p)))
            assert trace_B(U) == expected_trace_B(U)
            done += 1


def test_universal_rejects_non_minimal_prime():
    from rescycle.errors import UnsupportedCase

    with pytest.raises(UnsupportedCase):
        universal_resolution([(1, 0, 1), (0, 1, 1)], [0, 1, 2])


def test_c_p_sign_coherence_koszul():
    # super-algebra product versus plain matrix product
    from rescycle.curralg import ch_product

    rng = random.Random(5)
    for p in range(1, 5):
        powers = [(i, rng.randint(1, 3)) for i in range(p)]
        K = koszul_complex([Poly.var(v, a) for v, a in powers])
        R = ch_product(powers)
        sup = dphi_product(K, p)
        sup = super_trace(super_mul(sup, R))
        plain = _plain_product(K, p, R)
        assert sup == (plain if c_p(p) > 0 else -plain)


def _plain_product(K, p, R):
    acc = dphi(K.phi(1), 1)
    for j in range(2, p + 1):
        acc = matmul(acc, dphi(K.phi(j), j))
    return super_trace(matmul(acc, R, src=0, tgt=0))
