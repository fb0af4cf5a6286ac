"""Generator library invariant: every example validates end to end."""
import pytest

from nervekit import (
    ExampleSpec,
    build_example,
    validate_relative,
    validate_simplicial_category,
    validate_sset,
)

NAMES = (
    "bg:z2",
    "bg:z3",
    "bg:z4",
    "discrete:poset01",
    "discrete:poset012",
    "discrete:antichain3",
    "poset:a<b,b<c",
    "poset:0<1,0<2",
    "two-object-interval",
)


@pytest.mark.parametrize("name", NAMES)
def test_every_generator_validates(name):
    R = build_example(name, max_dim=2)
    assert validate_relative(R).ok
    assert validate_simplicial_category(R.cat).ok
    for H in R.cat.homs.values():
        assert validate_sset(H).ok


def test_group_hom_counts():
    for m in (2, 3):
        R = build_example(f"bg:z{m}", max_dim=2)
        assert R.cat.hom("x", "x").counts() == (1, m, m * m)


def test_example_spec_dataclass():
    spec = ExampleSpec("bg:z2", max_dim=3)
    R = spec.build()
    assert R.cat.D == 3


def test_poset_parser_shapes():
    R = build_example("poset:p<q", max_dim=1)
    assert set(R.cat.objects) == {"p", "q"}
    lone = build_example("poset:a", max_dim=1)
    assert lone.cat.objects == ["a"]
    with pytest.raises(ValueError):
        build_example("poset:", max_dim=1)
