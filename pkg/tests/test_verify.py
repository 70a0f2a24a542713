import pytest

from secantplanes import verify


@pytest.mark.parametrize("suite", ["series", "hypergeom", "examples", "moduli"])
def test_suite_passes(suite):
    results = verify.run(suite)
    assert results and all(r.passed for r in results), [r.to_record() for r in results if not r.passed]


def test_oracle_modes_select_checks():
    names = {r.name for r in verify.run("oracle", verify.Bounds(d_max=3, mode="fixed"))}
    assert names == {"fixed", "block_recursion"}


def test_unknown_suite():
    with pytest.raises(ValueError):
        verify.run("everything")


def test_record_shape():
    rec = verify.run("series")[0].to_record()
    assert set(rec) == {"suite", "name", "pass", "seconds", "detail"}
