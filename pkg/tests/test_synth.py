from fractions import Fraction

import pytest

from jdmgraph.errors import InfeasibleSpec
from jdmgraph.model import derive_degree_vector, edge_count, edge_mean, is_graphical
from jdmgraph.synth import SynthSpec, generate_synthetic


def _cross_cells(jdm, spec):
    return {(k, l): jdm[(k, l)] for k in spec.k_degrees for l in spec.l_degrees if (k, l) in jdm}


def test_default_cells_cover_one_to_twenty():
    spec = SynthSpec()
    jdm = generate_synthetic(spec)
    cells = _cross_cells(jdm, spec)
    assert sorted(cells.values()) == list(range(1, 21))
    # row-major assignment
    assert cells[(20, 25)] == 1 and cells[(20, 28)] == 4 and cells[(24, 28)] == 20


def test_default_means_are_multiples_of_a_twentieth():
    spec = SynthSpec()
    jdm = generate_synthetic(spec)
    means = {edge_mean(jdm, k, l) for k, l in _cross_cells(jdm, spec)}
    assert means == {Fraction(i, 20) for i in range(1, 21)}


def test_default_is_graphical_with_integer_counts():
    jdm = generate_synthetic()
    assert is_graphical(jdm)
    dv = derive_degree_vector(jdm)
    assert all(dv[k] == 4 for k in range(20, 25))
    assert all(dv[l] == 5 for l in range(25, 29))
    assert (edge_count(jdm), dv.vertex_count, len(jdm)) == (760, 590, 29)


def test_fill_counts_non_negative():
    for fill in ("degree1", "dense"):
        jdm = generate_synthetic(SynthSpec(fill=fill))
        assert all(c > 0 for c in jdm.values())


def test_dense_fill():
    spec = SynthSpec(fill="dense")
    jdm = generate_synthetic(spec)
    assert is_graphical(jdm)
    assert sorted(_cross_cells(jdm, spec).values()) == list(range(1, 21))
    assert (edge_count(jdm), derive_degree_vector(jdm).vertex_count, len(jdm)) == (487, 44, 45)


@pytest.mark.parametrize("spec", [
    SynthSpec(k_degrees=(20, 21), l_degrees=(25, 26)),
    SynthSpec(k_count=3),
    SynthSpec(k_degrees=(20, 21, 22, 23, 25)),
    SynthSpec(fill="sparse"),
    SynthSpec(k_degrees=(2, 3, 4, 5, 6), l_degrees=(7, 8, 9, 10)),
])
def test_invalid_specs(spec):
    with pytest.raises(InfeasibleSpec):
        generate_synthetic(spec)
