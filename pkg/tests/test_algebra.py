import pytest

from klec.algebra import (
    FieldElem,
    Poly,
    artin_schreier_poly,
    build_field,
    divisors,
    enumerate_irreducibles,
    is_irreducible,
    is_squarefree,
    mobius,
    necklace_count,
    places_P,
    quadratic_character,
    relative_trace,
)
from klec.errors import (
    BudgetExceeded,
    EvenCharacteristic,
    NonPrimeCharacteristic,
    NotASubfield,
    ReducibleModulus,
)


def test_build_field_prime_convention(F3):
    assert F3.modulus == (0, 1)
    assert F3.q == 3


def test_build_field_canonical_f9_modulus(F9):
    # the code-least monic irreducible quadratic over F_3, found by root test
    cands = []
    for c0 in range(3):
        for c1 in range(3):
            if all((x * x + c1 * x + c0) % 3 != 0 for x in range(3)):
                cands.append((c0, c1, 1))
    assert F9.modulus == min(cands, key=lambda m: m[0] + 3 * m[1])
    assert F9.modulus == (1, 0, 1)


def test_build_field_rejections():
    with pytest.raises(EvenCharacteristic):
        build_field(2, 1)
    with pytest.raises(NonPrimeCharacteristic):
        build_field(9, 1)
    with pytest.raises(ReducibleModulus):
        build_field(3, 2, [0, 0, 1])  # X^2 is reducible
    with pytest.raises(ReducibleModulus):
        build_field(3, 2, [2, 0, 1])  # X^2 + 2 = (X-1)(X+1)


def test_custom_modulus_accepted():
    F = build_field(3, 2, [2, 2, 1])
    assert F.q == 9
    assert all(F.pow(c, 9) == c for c in range(9))


@pytest.mark.parametrize("p,f", [(3, 1), (3, 2), (3, 4), (3, 8), (5, 1), (5, 2), (7, 1)])
def test_fermat_on_full_enumeration(p, f):
    F = build_field(p, f)
    assert all(F.pow(c, F.q) == c for c in range(F.q))


def test_quadratic_character_values(F3, F5):
    assert quadratic_character(F3.zero()) == 0
    assert quadratic_character(F3.elem(2)) == -1  # squares of F_3 are {0, 1}
    assert quadratic_character(F5.elem(4)) == 1  # 2^2 = 4


@pytest.mark.parametrize("p,f", [(3, 1), (3, 2), (5, 1), (7, 1), (3, 4)])
def test_quadratic_character_multiplicative_and_power_formula(p, f):
    F = build_field(p, f)
    lam = [quadratic_character(F.elem(c)) for c in range(F.q)]
    for a in range(1, F.q):
        # the power-formula definition
        power = F.pow(a, (F.q - 1) // 2)
        assert lam[a] == (1 if power == 1 else -1)
        for b in range(1, F.q):
            assert lam[F.mul(a, b)] == lam[a] * lam[b]


def test_relative_trace(F3, F9):
    x = F3.elem(2)
    assert relative_trace(x, F3) == x
    emb, _ = F9.embedding_from(F3)
    y = F9.elem(emb[2])  # subfield element: trace doubles it
    assert relative_trace(y, F3) == F3.elem(2) * 2
    # trace of the modulus root equals minus its linear coefficient
    root = next(e for e in F9.elements() if (e * e + 1).code == 0)
    direct = root + root**3
    assert relative_trace(root, F3).code == direct.code == (-F9.modulus[1]) % 3


def test_relative_trace_not_a_subfield(F9):
    F27 = build_field(3, 3)
    with pytest.raises(NotASubfield):
        relative_trace(F27.elem(5), F9.elem(1).field)


def test_enumerate_irreducibles_linear(F3):
    polys = enumerate_irreducibles(F3, 1)
    assert [p.serialize() for p in polys] == [[0, 1], [1, 1], [2, 1]]


@pytest.mark.parametrize(
    "p,f,dmax",
    [(3, 1, 8), (5, 1, 6), (7, 1, 5), (3, 2, 4)],
)
def test_enumerate_irreducibles_counts(p, f, dmax):
    F = build_field(p, f)
    for d in range(1, dmax + 1):
        polys = enumerate_irreducibles(F, d)
        assert len(polys) == necklace_count(F.q, d)
        assert len({tuple(P.coeffs) for P in polys}) == len(polys)


def test_enumerated_polys_are_irreducible(F3, F5):
    for F, d in [(F3, 2), (F3, 3), (F5, 2)]:
        for P in enumerate_irreducibles(F, d):
            assert is_irreducible(P)


def test_necklace_values():
    assert necklace_count(3, 2) == 3
    assert necklace_count(3, 4) == 18
    assert mobius(1) == 1 and mobius(6) == 1 and mobius(4) == 0 and mobius(2) == -1
    assert divisors(12) == [1, 2, 3, 4, 6, 12]


def test_places_level_one(F3):
    ps = places_P(F3, 1)
    assert ps.count == 2
    data = [(v.poly.serialize(), v.beta.code) for v in ps.places]
    assert data == [([1, 1], 2), ([2, 1], 1)]


def test_places_counts(F3):
    assert places_P(F3, 2).count == 5
    ps4 = places_P(F3, 4)
    assert ps4.count == 23
    assert ps4.degree_sum() == 80


@pytest.mark.parametrize("p,f,a", [(3, 1, 6), (5, 1, 3), (7, 1, 2), (3, 2, 2)])
def test_places_degree_sum_partition(p, f, a):
    F = build_field(p, f)
    ps = places_P(F, a)
    assert ps.degree_sum() == F.q**a - 1
    # every place polynomial has the stated root
    for v in ps.places:
        assert v.poly.evaluate(v.beta).code == 0
        assert v.beta.code != 0


def test_places_budget_guard(F3):
    with pytest.raises(BudgetExceeded):
        places_P(F3, 20)


def test_squarefree_examples(F3):
    wp = artin_schreier_poly(F3, 1)
    assert is_squarefree(wp * wp - Poly.constant(F3, 1))  # wp^2 - 4 with gamma = 1
    assert not is_squarefree(Poly(F3, (0, 0, 1)))  # t^2
    assert is_squarefree(Poly(F3, (1, 0, 1)))  # t^2 + 1


def test_poly_division_and_gcd(F5):
    a = Poly(F5, (1, 2, 0, 3, 1))
    b = Poly(F5, (2, 1, 1))
    q, r = divmod(a, b)
    assert q * b + r == a
    assert r.degree() < b.degree()
    g = (a * b).gcd(b)
    assert g == b.monic()


def test_poly_evaluate_with_embedding(F3, F9):
    P = Poly(F3, (1, 2, 1))  # 1 + 2t + t^2
    x = F9.elem(5)
    direct = F9.elem(F9.add(F9.add(1, F9.mul(2, x.code)), F9.mul(x.code, x.code)))
    assert P.evaluate(x) == direct


def test_artin_schreier_poly_shape(F3):
    wp = artin_schreier_poly(F3, 2)
    assert wp.degree() == 9
    assert wp.coeffs[1] == 2 and wp.coeffs[9] == 1
    assert sum(1 for c in wp.coeffs if c) == 2
