import pytest

import subalign as sa


def test_subspace_canonicalization():
    v = sa.Subspace([[2, 4], [1, 2]], 2)
    assert v.dim == 1
    assert v.basis() == [["1", "2"]]
    assert v == sa.Subspace([["1", "2"]], 2)


def test_sum_intersect_dimension_formula():
    a = sa.Subspace([[1, 0, 0], [0, 1, 0]], 3)
    b = sa.Subspace([[0, 1, 0], [0, 0, 1]], 3)
    meet = sa.intersect(a, b)
    assert meet == sa.Subspace.coordinate([2], 3)
    assert sa.sum(a, b).dim + meet.dim == a.dim + b.dim


def test_floats_are_rejected():
    with pytest.raises(ValueError):
        sa.Subspace([[1.5, 0]], 2)


def test_alignment_width():
    v = sa.Subspace([[1, 1]], 2)
    m = sa.DiagMap([1, 2])
    report = sa.alignment_width(v, m)
    assert report["width"] == 1
    assert sa.extend(v, m).dim == 2
    assert sa.contract(v, m).dim == 0


def test_orthogonal_scheme_verifies():
    inst = sa.ChannelInstance.sample(4, 8, seed=7)
    scheme = sa.build_orthogonal_scheme(4, 8, 1, 2)
    report = sa.verify_decoding(inst, scheme)
    assert report["feasible"] is True
    assert report["dof"] == "1"
    assert report["eps"] == "1/2"
    assert all(check["pass"] for check in sa.check_width_requirement(inst, scheme))


def test_bounds_spot_value():
    table = sa.eval_bounds(4, 4)
    assert table["thm1"]["exact"] is True
    assert table["thm1"]["lo"] == "21/11"
    assert sa.eval_bounds(3, 1)["eq1"]["lo"] == "1"


def test_sparsity_values():
    v = sa.Subspace([[1, 0, 0], [0, 1, 1]], 3)
    assert sa.n_sparsity(v, 1, 3)["value"] == 1
    assert sa.n_sparsity(v, 2, 3)["value"] == 3
    assert sa.n_sparsity(v, 3, 3)["value"] == "inf"


def test_instance_round_trip():
    inst = sa.ChannelInstance.sample(3, 2, bits=8, seed=7)
    again = sa.ChannelInstance.from_dict(inst.to_dict())
    assert again.to_dict() == inst.to_dict()


def test_random_search_finds_small_scheme():
    inst = sa.ChannelInstance.sample(3, 3, seed=5)
    result = sa.random_search(inst, 1, restarts=16, seed=5)
    assert result["scheme"] is not None
    assert sa.verify_decoding(inst, result["scheme"])["feasible"] is True


def test_cli_entry_point():
    code, out, err = sa.run_command(["bounds", "--k", "3", "--l", "2"])
    assert code == 0
    assert '"lo": "6/5"' in out
