from adams3 import comodule, hopf
from adams3.comodule import (
    check_axioms,
    cotensor_condition,
    cotensor_induced,
    dualize,
    homology_of_tmf,
    suspend,
    tmf_ses,
    trivial_comodule,
    verify_dual_associativity,
)


def enumerate_b_degrees(cap):
    """Oracle: degrees of B-monomials by brute-force exponent enumeration."""
    gens = [12, 16, 52]  # zeta1^3, zeta2, zeta3 within cap 56; taubar3 is 53
    degs = {0: 1}
    for g in gens:
        new = dict(degs)
        for d, n in degs.items():
            e = 1
            while d + e * g <= cap:
                new[d + e * g] = new.get(d + e * g, 0) + n
                e += 1
        degs = new
    for g in [53]:  # taubar3 exterior
        new = dict(degs)
        for d, n in degs.items():
            if d + g <= cap:
                new[d + g] = new.get(d + g, 0) + n
        degs = new
    return degs


def test_trivial_comodules():
    for name in ("gamma", "e_tau2", "a1"):
        alg = hopf.algebra(name, 40)
        t = trivial_comodule(alg)
        assert t.basis == (("1", 0),)
        assert check_axioms(t).ok


def test_b_low_degrees():
    b = cotensor_induced(20)
    # nothing in positive degree below |zeta1^3| = 12
    for d in range(1, 12):
        assert b.basis_in_degree(d) == []
    assert b.basis_in_degree(12) == ["zeta1^3"]
    assert b.basis_in_degree(16) == ["zeta2"]


def test_b_dimensions_against_enumeration_oracle():
    cap = 56
    b = cotensor_induced(cap)
    oracle = enumerate_b_degrees(cap)
    for d in range(cap + 1):
        assert len(b.basis_in_degree(d)) == oracle.get(d, 0), f"degree {d}"


def test_b_axioms_and_cotensor():
    b = cotensor_induced(56)
    assert check_axioms(b).ok
    assert cotensor_condition(b).ok


def test_htmf_basis_is_b_tensor_eb4():
    h = homology_of_tmf(56)
    b = cotensor_induced(56)
    for d in range(57):
        expected = len(b.basis_in_degree(d)) + len(b.basis_in_degree(d - 8)) if d >= 8 else len(
            b.basis_in_degree(d)
        )
        assert len(h.basis_in_degree(d)) == expected


def test_htmf_b4_primitive():
    h = homology_of_tmf(30)
    assert h.coaction["b4"] == [(h.algebra.unit_mono, "b4", 1)]


def test_htmf_twisted_coaction_of_zeta1cubed():
    h = homology_of_tmf(30)
    alg = h.algebra
    terms = {(alg.monomial_name(m), t): c for m, t, c in h.coaction["zeta1^3"]}
    assert terms == {("zeta1^3", "1"): 1, ("zeta1", "b4"): 2, ("1", "zeta1^3"): 1}


def test_htmf_zeta2_coaction_contains_milnor_terms():
    h = homology_of_tmf(30)
    alg = h.algebra
    terms = {(alg.monomial_name(m), t): c for m, t, c in h.coaction["zeta2"]}
    # A* Milnor terms survive, plus the forced b4 correction
    assert terms[("zeta1", "zeta1^3")] == 1
    assert terms[("zeta2", "1")] == 1
    assert terms[("1", "zeta2")] == 1
    assert terms[("zeta1^2", "b4")] == 1


def test_htmf_axioms_pass_to_cap():
    assert check_axioms(homology_of_tmf(56)).ok


def test_corrupted_coaction_fails_with_witness():
    h = homology_of_tmf(30)
    bad_coaction = dict(h.coaction)
    alg = h.algebra
    bad_coaction["zeta1^3"] = [t for t in bad_coaction["zeta1^3"] if t[1] != "b4"]
    bad = comodule.Comodule(alg, "bad", h.basis, bad_coaction, h.degree_cap)
    rep = check_axioms(bad)
    assert not rep.ok
    assert "zeta" in rep.witness


def test_suspension():
    b = cotensor_induced(20)
    s = suspend(b, 8)
    assert s.basis[0] == ("1", 8)
    assert suspend(s, 8).basis[0] == ("1", 16)
    assert suspend(b, 0) is b
    # coaction unchanged
    assert s.coaction == b.coaction


def test_ses_structure():
    ses = tmf_ses(48)  # verify_ses runs inside
    assert ses.sub.basis[0] == ("1", 8)
    assert ses.quotient.basis[0] == ("1", 0)


def test_dualize_trivial():
    t = trivial_comodule(hopf.algebra("gamma", 30))
    d = dualize(t)
    assert d.basis == (("1", 0),)
    assert d.action == {}


def test_dualize_b_associativity():
    d = dualize(cotensor_induced(44))
    assert verify_dual_associativity(d, 40) > 0


def test_dual_htmf_connecting_block_nonzero():
    # the b4-column of the dual action must link the two B-copies (nontrivial extension)
    h = homology_of_tmf(30)
    d = dualize(h)
    alg = h.algebra
    z1 = alg.gen_mono("zeta", 1)
    assert any(n == "zeta1^3" for n, _ in d.act(z1, "b4"))


def test_dual_htmf_untwisted_has_no_connecting_block():
    h = homology_of_tmf(30, twisted=False)
    d = dualize(h)
    z1 = h.algebra.gen_mono("zeta", 1)
    assert not any(n == "zeta1^3" for n, _ in d.act(z1, "b4"))


def test_dump_round_trip_fields():
    b = cotensor_induced(20)
    doc = b.dump()
    assert doc["algebra"] == "dual_steenrod_truncated"
    assert doc["cap"] == 20
    assert {e["name"] for e in doc["basis"]} == {n for n, _ in b.basis}
    assert doc["coaction"][0]["element"] == "1"
