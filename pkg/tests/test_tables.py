import pytest

from qaffine.roots import A1_1, C2_2
from qaffine.tables import FAMILIES, defining_relations, family, instances
from qaffine.verify import _zero

KINDS = [A1_1, C2_2]


def test_defining_relations_with_and_without_reversed_forms():
    full = defining_relations(A1_1)
    plain = defining_relations(A1_1, derived=False)
    assert len(full) - len(plain) == 4
    assert all("reversed" in r.family for r in full if r not in plain)


def test_every_family_is_described_and_tagged():
    for name, fam in FAMILIES.items():
        assert fam.name == name and fam.description and fam.tags
        assert list(fam.domain(2)), name


def test_domains_respect_the_bound():
    for fam in FAMILIES.values():
        small = list(fam.domain(1))
        assert all(abs(v) <= 1 for p in small for v in p.values() if isinstance(v, int))
        assert all(p in list(fam.domain(2)) for p in small)


@pytest.mark.parametrize("kind", KINDS, ids=lambda k: k.key)
def test_relations_are_weight_homogeneous(kind):
    for rel in instances(kind, 2):
        weights = rel.lhs.weights() | rel.rhs.weights()
        assert len(weights) <= 1, rel.label


def test_labels_carry_parameters():
    rel = family("plus-chain-odd").build(A1_1, n=1, m=2)
    assert rel.label == "plus-chain-odd(n=1,m=2)"


def test_unknown_family():
    with pytest.raises(KeyError):
        family("no-such-family")


@pytest.mark.parametrize("kind", KINDS, ids=lambda k: k.key)
def test_a_wrong_right_hand_side_is_rejected(kind):
    # the zero test must not be vacuous: flipping a nonzero right-hand side fails
    checked = 0
    for rel in instances(kind, 1):
        if rel.rhs.is_zero():
            continue
        assert _zero(rel.lhs - rel.rhs) is True, rel.label
        assert _zero(rel.lhs + rel.rhs) is not True, rel.label
        checked += 1
    assert checked > 10
