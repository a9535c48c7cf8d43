import json
from fractions import Fraction

import pytest

from pbwlie.errors import DeskScaleExceeded
from pbwlie.freeassoc import NcPolynomial
from pbwlie.pbwmaps import TensorPolynomial, m_eval, symmetrize
from pbwlie.verify import (depolarize, magnus_representability_suite, pbw_basic_suite,
                           pbw_symmetric_suite, polarize, primitive_multisets, strip_timing)


def _witness(rep, cid):
    return next(c for c in rep["checks"] if c["id"] == cid)["witness"]


def test_symmetric_suite_examples():
    rep = pbw_symmetric_suite(2, 3)
    assert rep["pass"]
    assert _witness(rep, "sym-inj X1.X2")["rank"] == 2
    assert _witness(rep, "sym-inj X1^2.X2")["spanning_set"] == 3


def test_suites_cover_enough_grades():
    assert sum(1 for c in pbw_symmetric_suite(2, 4)["checks"] if c["id"].startswith("sym-inj")) >= 6
    assert sum(1 for c in pbw_basic_suite(2, 4)["checks"] if c["id"].startswith("basic-inj")) >= 6
    assert magnus_representability_suite(2, 5)["n_checks"] >= 8


def test_basic_suite_counts():
    rep = pbw_basic_suite(2, 3)
    assert rep["pass"]
    deg2 = [c["witness"] for c in rep["checks"] if c["id"].startswith("basic-inj")
            and sum(int(p.split("^")[1]) if "^" in p else 1 for p in c["witness"]["grade"].split(".")) == 2]
    assert sum(w["rank"] for w in deg2) == 4


def test_representability_examples():
    rep = magnus_representability_suite(3, 3)
    assert rep["pass"]
    assert _witness(rep, "repr X1.X2.X3")["primitive_words"] == 2
    assert _witness(rep, "repr X1.X2")["primitive_words"] == 1


def test_polarization_round_trip():
    md = ((1, 2),)
    t = symmetrize(TensorPolynomial.word((1,), (1,)))
    pol, back = polarize(t, md)
    assert not pol.is_zero()
    assert set(x for tw in pol for f in tw for x in f) == {2, 3}
    assert depolarize(pol, back) == t
    assert m_eval(pol) == NcPolynomial({(2, 3): 1, (3, 2): 1}).scale(Fraction(1, 2))


def test_primitive_multisets_are_nonincreasing_and_complete():
    from pbwlie.wordbasis import words_of_grade
    md = ((1, 2), (2, 2))
    assert len(primitive_multisets(md)) == len(words_of_grade(md))


def test_reports_deterministic():
    a = strip_timing(pbw_symmetric_suite(2, 3, seed=3, workers=4))
    b = strip_timing(pbw_symmetric_suite(2, 3, seed=3, workers=1))
    assert json.dumps(a) == json.dumps(b)


def test_desk_caps():
    with pytest.raises(DeskScaleExceeded):
        pbw_symmetric_suite(4, 2)
    with pytest.raises(DeskScaleExceeded):
        pbw_basic_suite(2, 5)
