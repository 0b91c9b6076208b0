import pytest

from foliation_barcode.cone import (MAX_N, BudgetExceeded, ConeInstance, check_cone_lemma,
                                    set_partitions, verify_instance)


def test_set_partitions_are_bell_numbers():
    assert [sum(1 for _ in set_partitions(n)) for n in range(7)] == [1, 1, 2, 5, 15, 52, 203]


def test_neighbours_wrap():
    inst = ConeInstance(3, (0, 0, 0), (0, 1, 2))
    assert inst.neighbours(0) == (2, 0)
    assert inst.neighbours(2) == (1, 2)


def test_single_cone():
    assert check_cone_lemma(1).counterexample is None


def test_no_counterexample_up_to_four():
    report = check_cone_lemma(4)
    assert report.counterexample is None
    assert report.examined == 1 + 4 + 25 + 225
    assert 0 < report.admissible < report.examined


def test_hypothesis_violation_is_excluded():
    # omega splits the unstable cones in two, so every stable cone borders label 0;
    # alpha gives cone 0 a label no other adjacent cone shares
    inst = ConeInstance(4, (0, 1, 1, 1), (0, 0, 1, 1))
    assert inst.adjacent(0) == [0, 2]
    assert not inst.satisfies_hypothesis()
    assert verify_instance(inst) is None


def test_admissible_instance_counts():
    inst = ConeInstance(4, (0, 0, 0, 0), (0, 0, 1, 1))
    assert inst.satisfies_hypothesis()
    assert inst.image_count() == 3
    assert verify_instance(inst) is True


def test_budget():
    with pytest.raises(BudgetExceeded):
        check_cone_lemma(MAX_N + 1)
    with pytest.raises(ValueError):
        check_cone_lemma(0)


def test_bad_lengths():
    with pytest.raises(ValueError):
        ConeInstance(2, (0,), (0, 0))
