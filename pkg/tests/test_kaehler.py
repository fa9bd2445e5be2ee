import random

import pytest

from tordiff.algebra import make_algebra, morphism
from tordiff.errors import DegenerateHyperplane, DegreeOutOfRange, IllDefinedMap, MethodInapplicable, NotADomain
from tordiff.field import CoeffField
from tordiff.gb import FreeElem, Ideal
from tordiff.kaehler import (
    FPModule,
    SemilinearMap,
    annihilator,
    determinant,
    exterior_power,
    generic_rank,
    hyperplane_criterion,
    is_torsion,
    minimal_presentation,
    omega_presentation,
    prune,
    pullback,
    relation_matrix,
    semilinear_image_membership,
    semilinear_injectivity,
    torsion_submodule,
    universal_d,
)
from tordiff.poly import format_poly
from tordiff.selfcheck import random_poly

F2, F3, Q = CoeffField(2), CoeffField(3), CoeffField(0)


def whitney():
    return make_algebra(F2, ["x", "y", "z"], ["y^2 - x*z^2"], "image of F2[u^2, u*z, z]")


def test_omega_presentation_is_jacobian():
    M = omega_presentation(whitney())
    assert M.labels == ("dx", "dy", "dz")
    assert [M.format(r) for r in M.relations] == ["z^2 * dx"]
    C = make_algebra(Q, ["x", "y"], ["y^2 - x^3"])
    assert [omega_presentation(C).format(r) for r in omega_presentation(C).relations] == ["-3*x^2 * dx + 2*y * dy"]


def test_format_element_signs_and_parentheses():
    A = make_algebra(Q, ["x", "y"])
    M = omega_presentation(A)
    v = M.element({"dx": "-2/3*x", "dy": "x + y"})
    assert M.format(v) == "-2/3*x * dx + (x + y) * dy"
    assert M.format(M.zero()) == "0"


def test_universal_d_leibniz_in_quotient():
    A = whitney()
    M = omega_presentation(A)
    rng = random.Random(5)
    for _ in range(20):
        f, g = random_poly(A.ring, rng), random_poly(A.ring, rng)
        assert M.equal(universal_d(A, f * g, M), universal_d(A, f, M) * g + universal_d(A, g, M) * f)
    # the relation itself differentiates to zero
    assert M.is_zero(universal_d(A, "y^2 - x*z^2", M))


def test_exterior_powers():
    A = whitney()
    M2 = omega_presentation(A, 2)
    assert M2.labels == ("dx∧dy", "dx∧dz", "dy∧dz")
    assert sorted(M2.format(r) for r in M2.relations) == ["z^2 * dx∧dy", "z^2 * dx∧dz"]
    M3 = omega_presentation(A, 3)
    assert M3.labels == ("dx∧dy∧dz",)
    with pytest.raises(DegreeOutOfRange):
        exterior_power(omega_presentation(A), 4)


def test_prune_removes_unit_relations():
    S = make_algebra(F2, ["x", "y", "z"], ["z^2 + z*x - y"])
    M = omega_presentation(S)
    P = prune(M)
    assert P.module.is_free and P.module.rank == 2
    assert minimal_presentation(M).labels == ("dx", "dz")
    dy = P.images[M.labels.index("dy")]
    assert P.module.format(dy) == "z * dx + x * dz"


def test_determinant_laplace():
    A = make_algebra(Q, ["x", "y"])
    rows = [[A("x"), A("1"), A("0")], [A("y"), A("x"), A("1")], [A("1"), A("0"), A("y")]]
    assert determinant(rows, A.reduce) == A("x^2*y - y^2 + 1")


def test_pullback_matrix_and_functoriality():
    A = whitney()
    U = make_algebra(F2, ["u", "z"])
    pi = morphism(A, U, ["u^2", "u*z", "z"])
    d = pullback(pi)
    assert d.describe() == ["dx -> 0", "dy -> z * du + u * dz", "dz -> dz"]
    L = make_algebra(F2, ["t"])
    g = morphism(U, L, ["t", "t^2"])
    composite = pullback(pi.then(g))
    assert composite.equals(d.then(pullback(g)))


def test_pullback_on_wedges():
    X = make_algebra(F3, ["x", "y"])
    S = make_algebra(F3, ["x", "z"])
    f = morphism(X, S, ["x", "z^3 + z*x"])
    d2 = pullback(f, 2)
    # dx∧dy -> dx∧(z dx + x dz) = x dx∧dz
    assert d2.describe() == ["dx∧dy -> x * dx∧dz"]


def test_ill_defined_semilinear_map_rejected():
    A = whitney()
    U = make_algebra(F2, ["u", "z"])
    pi = morphism(A, U, ["u^2", "u*z", "z"])
    src, tgt = omega_presentation(A), omega_presentation(U)
    with pytest.raises(IllDefinedMap):
        SemilinearMap(pi, src, tgt, [tgt.gen("du"), tgt.zero(), tgt.zero()])


def test_whitney_torsion():
    A = whitney()
    M = omega_presentation(A)
    T = torsion_submodule(M)
    assert T.describe() == ["z^2 * dx = 0"]
    assert T.rank == 2 and format_poly(T.fitting_minor) == "z^2"
    g = T.generators[0]
    assert g.verify(M)
    assert is_torsion(M.gen("dx"), M) == A("z^2")
    assert is_torsion(M.gen("dy"), M) is None
    assert annihilator(M.gen("dx"), M).equals(Ideal(A.ring, [A.ring("z^2"), A.ring("y^2 - x*z^2")]))


def test_torsion_needs_domain():
    M = omega_presentation(make_algebra(F2, ["x", "y", "z"], ["y^2 - x*z^2"]))
    with pytest.raises(NotADomain):
        torsion_submodule(M)


def test_cusp_torsion_over_q():
    C = make_algebra(Q, ["x", "y"], ["y^2 - x^3"], "image of Q[t^2, t^3]")
    M = omega_presentation(C)
    T = torsion_submodule(M)
    assert len(T.generators) == 1
    ref = M.element({"dx": "-3*y", "dy": "2*x"})
    assert T.contains(ref) and is_torsion(ref, M) is not None
    # the printed generator spans the same line as 2x dy - 3y dx
    gen = T.generators[0].element
    assert T.contains(gen) and not T.contains(M.gen("dx"))


def test_polynomial_ring_is_torsion_free():
    for p in (0, 2, 3):
        M = omega_presentation(make_algebra(CoeffField(p), ["x", "y"]))
        assert torsion_submodule(M).is_zero


def test_generic_rank_of_relation_matrix():
    A = whitney()
    M = omega_presentation(A)
    assert generic_rank(relation_matrix(M), A) == 1


def test_hyperplane_criterion_on_whitney():
    A = whitney()
    T = torsion_submodule(omega_presentation(A))
    v = hyperplane_criterion(A, "x - z", T, h_domain_note="cusp y^2 = z^3 in char 2")
    assert v.passed
    assert v.describe() == ["dx -> dz, annihilator (z^2) on both sides"]
    with pytest.raises(DegenerateHyperplane):
        hyperplane_criterion(A, "y^2 - x*z^2", T)
    with pytest.raises(NotADomain):
        hyperplane_criterion(A, "x", T)


def _sdh_dpi(p, n):
    X = make_algebra(CoeffField(p), ["x", "y"])
    S = make_algebra(CoeffField(p), ["x", "z"])
    f = morphism(X, S, ["x", f"z^{p} + z*x^{n}"])
    return pullback(f)


@pytest.mark.parametrize("p,n", [(2, 1), (3, 2), (5, 4)])
def test_injectivity_certificate(p, n):
    d = _sdh_dpi(p, n)
    v = semilinear_injectivity(d)
    assert v.status == "pass" and v.certificate.verify()
    assert format_poly(v.certificate.minor) == (f"x^{n}" if n > 1 else "x")


def test_injectivity_fails_on_zero_column():
    X = make_algebra(F2, ["x", "y"])
    S = make_algebra(F2, ["u", "y"])
    v = semilinear_injectivity(pullback(morphism(X, S, ["u^2", "y"])))
    assert v.status == "fail" and v.note == "dx maps to 0"


@pytest.mark.parametrize("p,n", [(2, 2), (3, 3)])
def test_triangular_non_membership(p, n):
    X = make_algebra(CoeffField(p), ["x", "y"])
    S = make_algebra(CoeffField(p), ["x", "z"])
    f = morphism(X, S, ["x", f"z^{p} + z*x^{n}"])
    d = pullback(f)
    # omega = n z x^{n-2} dx + x^{n-1} dz satisfies x * omega = d(y)
    omega = d.target.element({"dx": f"{n}*z*x^{n - 2}", "dz": f"x^{n - 1}"})
    assert d.target.equal(omega * d.target.ring("x"), d.apply(d.source.gen("dy")))
    verdict = semilinear_image_membership(d, omega)
    assert verdict.status == "non_member" and verdict.verify(d, omega)
    x = d.target.ring("x")
    assert f"({format_poly(x ** (n - 1))}) / ({format_poly(x ** n)})" in str(verdict.proof)


def test_triangular_membership_and_ansatz_agree():
    d = _sdh_dpi(3, 1)
    target = d.apply(d.source.element({"dx": "x*y", "dy": "1 + x"}))
    tri = semilinear_image_membership(d, target)
    assert tri.status == "member" and tri.verify(d, target)
    ans = semilinear_image_membership(d, target, "bounded_ansatz", 2)
    assert ans.status == "member" and ans.verify(d, target)
    miss = semilinear_image_membership(d, d.target.gen("dz"), "bounded_ansatz", 2)
    assert miss.status == "unknown"


def test_triangular_inapplicable_over_quotient():
    A = whitney()
    M = omega_presentation(A)
    ident = morphism(A, A, ["x", "y", "z"])
    with pytest.raises(MethodInapplicable):
        semilinear_image_membership(SemilinearMap(ident, M, M, [M.gen(i) for i in range(3)]), M.gen(0))


def test_module_rank_mismatch():
    A = make_algebra(F2, ["x"])
    M = FPModule(A, ["e"], [FreeElem([A("x^2")])])
    with pytest.raises(Exception):
        M.element([A("1"), A("1")])
