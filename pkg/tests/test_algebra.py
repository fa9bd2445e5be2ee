import pytest

from tordiff.algebra import (
    DomainFlag,
    are_inverse,
    domain_by_embedding,
    domain_by_simplification,
    identity,
    is_nonzerodivisor,
    kernel_is_trivial,
    make_algebra,
    morphism,
    morphism_kernel,
    nilpotent_variable,
    quotient_by_ideal,
    reduced_candidate_verify,
    simplify_presentation,
    subalgebra_membership,
    tensor_product,
    zerodivisor_witness,
)
from tordiff.errors import CandidateRejected, IllDefinedMorphism, NotADomain
from tordiff.field import CoeffField
from tordiff.gb import Ideal

F2, F3, Q = CoeffField(2), CoeffField(3), CoeffField(0)


def whitney():
    return make_algebra(F2, ["x", "y", "z"], ["y^2 - x*z^2"])


def test_quotient_equality_and_reduction():
    A = whitney()
    assert A.equal("y^2", "x*z^2")
    assert A.is_zero("y^3 - x*y*z^2")
    assert not A.is_zero("y")


def test_domain_flags():
    assert make_algebra(F2, ["x"]).known_domain
    A = whitney()
    assert A.domain is DomainFlag.UNKNOWN and not A.known_domain
    with pytest.raises(NotADomain):
        A.require_domain()
    with pytest.raises(ValueError):
        A.with_domain("")
    assert A.with_domain("checked elsewhere").known_domain


def test_morphism_verification():
    A = whitney()
    U = make_algebra(F2, ["u", "z"])
    pi = morphism(A, U, ["u^2", "u*z", "z"])
    assert pi.verified
    assert pi.apply("y") == U("u*z")
    with pytest.raises(IllDefinedMorphism):
        morphism(A, U, ["u", "u*z", "z"])


def test_composition_and_identity():
    A = make_algebra(Q, ["x", "y"])
    B = make_algebra(Q, ["s", "t"])
    f = morphism(A, B, ["s + t", "s*t"])
    g = morphism(B, A, ["x^2", "y"])
    fg = f.then(g)
    assert fg.apply("x") == A("x^2 + y")
    assert identity(A).then(f).equals(f)


def test_kernel_of_whitney_normalization_is_zero():
    A = whitney()
    U = make_algebra(F2, ["u", "z"])
    pi = morphism(A, U, ["u^2", "u*z", "z"])
    assert kernel_is_trivial(pi)
    A0 = make_algebra(F2, ["x", "y", "z"])
    K = morphism_kernel(morphism(A0, U, ["u^2", "u*z", "z"]))
    assert K.equals(Ideal(K.ring, [K.ring("y^2 - x*z^2")]))


def test_kernel_of_twisted_cubic_param():
    P3 = make_algebra(Q, ["x", "y", "z"])
    T = make_algebra(Q, ["t"])
    K = morphism_kernel(morphism(P3, T, ["t", "t^2", "t^3"]))
    S = K.ring
    assert K.equals(Ideal(S, [S("y - x^2"), S("z - x*y")]))


def test_simplify_presentation_gives_inverse_maps():
    S = make_algebra(F3, ["x", "y", "z"], ["z^3 + z*x - y"])
    s = simplify_presentation(S)
    assert s.algebra.is_polynomial_ring and s.algebra.names == ("x", "z")
    assert s.eliminated == ["y"]
    assert are_inverse(s.forward, s.backward)


def test_domain_provers():
    S = make_algebra(F3, ["x", "y", "z"], ["z^3 + z*x - y"])
    assert domain_by_simplification(S).known_domain
    C = make_algebra(Q, ["x", "y"], ["y^2 - x^3"])
    assert domain_by_simplification(C) is None
    L = make_algebra(Q, ["t"])
    proved = domain_by_embedding(C, morphism(C, L, ["t^2", "t^3"]))
    assert proved.known_domain and "embeds" in proved.provenance
    # a map with a kernel proves nothing
    N = make_algebra(Q, ["x", "y"], ["x*y"])
    assert domain_by_embedding(N, morphism(N, L, ["t", "0"])) is None


def test_tensor_product_fibre_product():
    # F2[x,z]/(z^2+zx-y) ⊗_{F2[x,y]} F2[x,z]/(...) keeps both z's
    X = make_algebra(F2, ["x", "y"])
    S = make_algebra(F2, ["x", "y", "z"], ["z^2 + z*x - y"])
    pi = morphism(X, S, ["x", "y"])
    tp = tensor_product(S, S, pi, pi)
    P = tp.algebra
    assert set(P.names) == {"x", "z_1", "z_2"}
    assert len(P.ideal.gens) == 1
    assert tp.left.then(identity(P)).apply("z") == P("z_1")
    # both composites agree on the base
    for v in X.names:
        assert P.equal(pi.then(tp.left).apply(v), pi.then(tp.right).apply(v))


def test_tensor_product_with_closed_point_strips_suffix():
    X = make_algebra(F2, ["x", "y"])
    S = make_algebra(F2, ["x", "y", "z"], ["z^2 + z*x - y"])
    Z = make_algebra(F2, ["y"])
    pi = morphism(X, S, ["x", "y"])
    iota = morphism(X, Z, ["0", "y"])
    tp = tensor_product(S, Z, pi, iota)
    assert tp.algebra.names == ("z",) and tp.algebra.is_polynomial_ring


def test_quotient_and_zerodivisors():
    A = make_algebra(Q, ["x", "y"], ["x^2", "x*y"])
    w = zerodivisor_witness(A, "y")
    assert w is not None and A.is_zero(A("y") * w) and not A.is_zero(w)
    assert not is_nonzerodivisor(A, "x")
    B, surj = quotient_by_ideal(A, ["x"])
    assert surj.apply("x") == B.reduce(B.ring("x")) and B.is_zero("x")
    assert is_nonzerodivisor(whitney(), "z")
    with pytest.raises(ValueError):
        zerodivisor_witness(A, "x^2")


def test_nilpotent_variable():
    assert nilpotent_variable(make_algebra(F2, ["x", "y"], ["x^2", "x*y"])) == "x"
    assert nilpotent_variable(whitney()) is None


def test_subalgebra_membership():
    A = make_algebra(F2, ["x", "y", "z"])
    U = make_algebra(F2, ["u", "z"])
    phi = morphism(A, U, ["u^2", "u*z", "z"])
    pre = subalgebra_membership("u^3*z + z^2", phi)
    assert pre is not None and phi.apply(pre) == U("u^3*z + z^2")
    assert subalgebra_membership("u", phi) is None


def test_reduced_candidate():
    A = make_algebra(F2, ["x", "y"], ["x^2"])
    B, verdict = reduced_candidate_verify(A, ["x"])
    assert verdict.passed and B.known_domain
    with pytest.raises(CandidateRejected) as e:
        reduced_candidate_verify(A, ["y"])
    assert e.value.condition == "containment"
    with pytest.raises(CandidateRejected) as e:
        reduced_candidate_verify(A, ["x", "y"])
    assert e.value.condition == "radical"
    C = make_algebra(Q, ["x", "y"], ["(y^2 - x^3)^2"])
    with pytest.raises(CandidateRejected) as e:
        reduced_candidate_verify(C, ["y^2 - x^3"])
    assert e.value.condition == "domain"
    B, _ = reduced_candidate_verify(C, ["y^2 - x^3"], domain_note="cusp, irreducible")
    assert B.provenance == "cusp, irreducible"
