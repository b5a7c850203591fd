from __future__ import annotations

import json
from fractions import Fraction

import pytest

from kkw.jets import (
    JetError,
    JJet,
    connection_jet,
    identities_hold,
    identity_jet,
    identity_report,
    jet_scalars,
    load_jet_file,
    matmul,
    random_jjet,
    transpose,
    trivial_jet,
)

SEEDS = range(5)


@pytest.mark.parametrize("profile", ["diagonal", "conjugated"])
@pytest.mark.parametrize("n", [6, 8, 10])
def test_random_jets_satisfy_identities(n, profile):
    for seed in SEEDS:
        jet = random_jjet(n, seed, profile)
        assert not jet.violations()
        assert identities_hold(jet), identity_report(jet)


def test_random_jets_are_deterministic():
    assert random_jjet(8, 3, "conjugated").to_json() == random_jjet(8, 3, "conjugated").to_json()
    assert random_jjet(8, 3, "conjugated").to_json() != random_jjet(8, 4, "conjugated").to_json()


def test_conjugated_matrix_is_orthogonal_involution():
    jet = random_jjet(8, 1, "conjugated")
    A = jet.A
    assert A == transpose(A)
    I = matmul(A, A)
    assert all(I[r][c] == (1 if r == c else 0) for r in range(8) for c in range(8))


@pytest.mark.parametrize("n", [6, 8, 10, 12])
def test_mean_curvature(n):
    hp = Fraction(3, 7)
    assert connection_jet(hp, n).mean_curvature() == -Fraction(n - 1, 2) * hp


def test_scalar_identities_on_random_jet():
    s = jet_scalars(random_jjet(10, 2, "conjugated"))
    assert s.P_na == 1 and s.P_ta == 9
    assert s.G_ni == 0 and s.G_in == -s.G and s.G_full == s.G
    assert s.S_a + s.S_b == 0 and s.S_full == s.S_a


def test_identity_and_trivial_jets():
    s = jet_scalars(identity_jet(6))
    assert s.P_tt == 5 and s.P_tn == 0 and s.T == 5 and s.G == 0
    t = trivial_jet(6)
    assert t.hprime == 0 and all(not any(any(r) for r in m) for m in t.DA)


def test_invalid_jet_rejected():
    jet = identity_jet(6)
    bad = jet.to_json()
    bad["A"][0][1] = "1"
    with pytest.raises(JetError):
        JJet.from_json(bad)


def test_json_roundtrip_and_file(tmp_path):
    jets = [random_jjet(6, 0), identity_jet(8, Fraction(1, 2))]
    path = tmp_path / "jets.json"
    path.write_text(json.dumps([j.to_json() for j in jets]))
    back = load_jet_file(path)
    assert [j.to_json() for j in back] == [j.to_json() for j in jets]


def test_malformed_file_reports_location(tmp_path):
    path = tmp_path / "bad.json"
    path.write_text('{\n  "n": 6,\n  "A": [1, 2\n}')
    with pytest.raises(JetError, match=r"line 4 column 1"):
        load_jet_file(path)


def test_shape_errors(tmp_path):
    obj = identity_jet(6).to_json()
    obj["DA"] = obj["DA"][:3]
    with pytest.raises(JetError, match="DA must be"):
        JJet.from_json(obj)
    del obj["hprime"]
    with pytest.raises(JetError, match="missing field"):
        JJet.from_json(obj)
