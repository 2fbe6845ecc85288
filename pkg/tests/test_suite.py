import json

import numpy as np
import pytest

from star_src.entity.config_entity import GridSpec, SuiteConfig
from star_src.exception import SuiteConfigError, UnknownCheckError
from star_src.harness import REGISTRY, format_summary, run_suite
from star_src.harness.suite import check_rng

GEOMETRY = ["symmetric_space_axioms", "group_axioms", "midpoint_consistency"]


def _config(**values):
    return SuiteConfig.from_dict({"samples": 200, **values})


def test_empty_suite_is_ok(example):
    report = run_suite(example, _config(checks=[]))
    assert report.ok and report.checks == []
    assert "no checks configured" in format_summary(report)


def test_unknown_check(example):
    with pytest.raises(UnknownCheckError):
        run_suite(example, _config(checks=["validate", "no_such_check"]))


def test_geometry_checks_pass(example):
    report = run_suite(example, _config(checks=["validate"] + GEOMETRY))
    assert [c.name for c in report.checks] == ["validate"] + GEOMETRY
    assert report.ok, format_summary(report)


def test_seeded_runs_repeat(skewed_4d):
    first = run_suite(skewed_4d, _config(checks=GEOMETRY, seed=3))
    second = run_suite(skewed_4d, _config(checks=GEOMETRY, seed=3))
    alone = run_suite(skewed_4d, _config(checks=["group_axioms"], seed=3))
    assert [c.residual for c in first.checks] == [c.residual for c in second.checks]
    assert alone.checks[0].residual == first.checks[1].residual


def test_check_rng_depends_on_name_and_seed():
    def draw(seed, name):
        return check_rng(seed, name).uniform(size=4)

    np.testing.assert_array_equal(draw(1, "a"), draw(1, "a"))
    assert not np.array_equal(draw(1, "a"), draw(1, "b"))
    assert not np.array_equal(draw(1, "a"), draw(2, "a"))


def test_broken_structure_skips_dependent_checks(singular_structure):
    report = run_suite(singular_structure, _config(checks=["validate", "group_axioms"]))
    validate, group = report.checks
    assert validate.status == "fail" and validate.residual >= 1
    assert group.status == "skipped"
    assert not report.ok


def test_product_checks_wait_for_intertwiner(example):
    config = _config(checks=["intertwiner_roundtrip", "involution"], grid={"points_per_axis": 64, "extent": 8.0},
                     oversample=2, tolerances={"intertwiner_roundtrip": 1e-30})
    report = run_suite(example, config)
    roundtrip, involution = report.checks
    assert roundtrip.status == "fail"
    assert involution.status == "skipped"
    payload = json.loads(report.to_json())
    assert payload["checks"][1]["residual"] is None
    assert payload["seed"] == config.seed


def test_fixture_reaching_the_boundary_skips_the_product_check(example):
    # unit-width Gaussians on [-2, 2)^2 are far from negligible on the outermost samples
    config = _config(checks=["weyl_paths", "path_equivalence"], oracle_grid={"points_per_axis": 16, "extent": 2.0})
    report = run_suite(example, config)
    for result in report.checks:
        assert result.status == "skipped" and not result.passed
        assert "boundary" in result.details
    assert report.ok
    assert "(0/2 passed)" in format_summary(report)


def test_interior_fixtures_pass_the_boundary_gate(example):
    report = run_suite(example, _config(checks=["weyl_paths"]))
    assert report.checks[0].passed, format_summary(report)


def test_report_write(example, tmp_path):
    report = run_suite(example, _config(checks=["validate"]))
    path = tmp_path / "report.json"
    report.write(str(path))
    payload = json.loads(path.read_text())
    assert payload["structure"] == "example-2d"
    assert payload["checks"][0]["status"] == "pass"


def test_config_rejects_unknown_keys():
    with pytest.raises(SuiteConfigError):
        SuiteConfig.from_dict({"grids": {}})


def test_config_missing_file(tmp_path):
    with pytest.raises(SuiteConfigError):
        SuiteConfig.from_yaml(str(tmp_path / "absent.yaml"))


def test_default_config_and_overrides():
    config = SuiteConfig.from_yaml(seed=7, hbar_list=[0.3])
    assert sorted(config.checks) == sorted(REGISTRY)
    assert config.seed == 7 and config.hbar_list == (0.3,)
    assert config.grid == GridSpec(128, 8.0)
    assert config.oracle_grid == GridSpec(64, 8.0)
    assert config.tolerances["associativity"] == 1e-3


@pytest.mark.slow
def test_acceptance_suite(example):
    report = run_suite(example, SuiteConfig.from_yaml())
    assert report.ok, format_summary(report)
