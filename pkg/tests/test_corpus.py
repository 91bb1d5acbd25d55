import pytest

from lowrank.corpus import REGISTRY, build, corpus_names, glued_degree
from lowrank.degree import algebra_degree_with_method, geometric_degree
from lowrank.errors import LowRankError
from lowrank.exceptional import recognize_exceptional
from lowrank.involution import find_standard_involution
from lowrank.rank3 import iso_test, normalize_rank3, orbit_invariant
from lowrank.rings import ZZ, PrimeField


def _pipeline_vector(B):
    out = {"rank": B.rank, "commutative": B.is_commutative}
    deg, method = algebra_degree_with_method(B)
    out["degree"] = deg
    out["gdeg"] = geometric_degree(B)
    inv = find_standard_involution(B)
    out["has_involution"] = inv is not None
    if inv is not None:
        out["involution_trivial"] = inv.is_trivial
    out["exceptional"] = bool(recognize_exceptional(B))
    if B.rank == 3 and inv is not None:
        form = normalize_rank3(B, inv)
        out["orbit_generator"] = orbit_invariant(B.ring, form.u, form.v).generator
    return out


@pytest.mark.parametrize("name", corpus_names())
def test_expected_vectors(name):
    """The keystone regression: every entry's expected property vector is
    reproduced exactly by the analysis pipeline."""
    entry = REGISTRY[name]
    B = build(name)
    got = _pipeline_vector(B)
    for key, want in entry.expected.items():
        assert got[key] == want, f"{name}.{key}: got {got[key]}, want {want}"


def test_upper_tri_isomorphic_to_nc10():
    assert iso_test(build("nc_uv", ZZ, ["1", "0"]), build("upper_tri")) is not None


def test_glued_degree_points():
    F5 = PrimeField(5)
    flat = glued_degree(F5, 1, 0)
    assert flat.is_commutative
    i = flat.basis_element(1)
    i3 = flat.mul(flat.mul(i, i), i)
    assert i3 == flat.one()  # i^3 = b^2 i + a^3 = 1 at (a, b) = (1, 0)
    steep = glued_degree(F5, 0, 1)
    assert not steep.is_commutative
    assert find_standard_involution(steep) is not None
    with pytest.raises(LowRankError):
        glued_degree(F5, 1, 1)  # needs a b = 0


def test_named_families():
    assert build("boolean_4").rank == 4
    assert build("fp_product_3_3").rank == 3
    with pytest.raises(LowRankError):
        build("nope")


def test_parameterized_build():
    B = build("nc_uv", ZZ, ["4", "6"])
    form = normalize_rank3(B, find_standard_involution(B))
    assert orbit_invariant(ZZ, form.u, form.v).generator == 2
    Bz = build("zp2_dual", params=["3"])
    assert Bz.ring.descriptor() == {"kind": "Zmod", "p": 3, "k": 2}
