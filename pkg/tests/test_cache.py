import os

import pytest
from pydantic import ValidationError

import services.verify.suite as suite_module
from services.app_service import PipelineService
from services.group_action import PermutationGroup
from utils.config import RunConfig
from utils.database import ArtifactCache, content_key


def test_content_key_is_canonical() -> None:
    assert content_key({"n": 5, "kind": "partition"}) == content_key({"kind": "partition", "n": 5})
    assert content_key(["lattice", "partition", 5]) != content_key(["lattice", "partition", 6])
    assert len(content_key([])) == 64


def test_artifact_cache_round_trip(tmp_path) -> None:
    cache = ArtifactCache(str(tmp_path))
    assert cache.get("lattice", ["partition", 5]) is None
    cache.put("lattice", ["partition", 5], {"elements": ["{1}|{2,3}"]})
    cache.put("lattice", ["partition", 5], {"elements": ["{1,2}|{3}"]})
    assert cache.get("lattice", ["partition", 5]) == {"elements": ["{1,2}|{3}"]}
    assert cache.count() == 1
    assert cache.count("homology") == 0
    assert cache.clear() == 1
    assert cache.get("lattice", ["partition", 5]) is None
    cache.close()


def test_pipeline_reuses_cached_artifacts(tmp_path, monkeypatch) -> None:
    config = RunConfig(cache_dir=str(tmp_path))
    first = PipelineService(config)
    poset = first.lattice("partition", 5)
    report = first.homology("partition", 5, PermutationGroup.cyclic(5), ["Z"])
    assert first.cache.count("lattice") == 1
    assert first.cache.count("quotient") == 1
    first.close()

    def fail(n):
        raise AssertionError("lattice was rebuilt instead of read from the cache")

    monkeypatch.setattr(suite_module, "build_reduced_partition_lattice", fail)
    second = PipelineService(config)
    cached = second.lattice("partition", 5)
    assert cached.elements == poset.elements
    assert cached.up_masks == poset.up_masks
    assert second.homology("partition", 5, PermutationGroup.cyclic(5), ["Z"]) == report
    second.close()


def test_pipeline_without_cache(tmp_path) -> None:
    service = PipelineService(RunConfig(cache_dir=str(tmp_path / "unused"), use_cache=False))
    assert service.cache is None
    assert len(service.lattice("subset", 4)) == 14
    assert not (tmp_path / "unused").exists()


def test_run_config_from_environment(tmp_path, monkeypatch) -> None:
    monkeypatch.setenv("NERVELAB_CACHE_DIR", str(tmp_path / "env-cache"))
    monkeypatch.setenv("NERVELAB_MAX_SIMPLICES", "1234")
    config = RunConfig.load(env_file=str(tmp_path / "missing.env"))
    assert config.cache_dir == str(tmp_path / "env-cache")
    assert config.max_simplices == 1234

    config = RunConfig.load(env_file=str(tmp_path / "missing.env"), max_simplices=99, time_budget_s=None)
    assert config.max_simplices == 99
    assert config.time_budget_s is None


def test_run_config_reads_dotenv(tmp_path, monkeypatch) -> None:
    monkeypatch.delenv("NERVELAB_MAX_GROUP_ORDER", raising=False)
    env_file = tmp_path / ".env"
    env_file.write_text("NERVELAB_MAX_GROUP_ORDER=77\n")
    try:
        assert RunConfig.load(env_file=str(env_file)).max_group_order == 77
    finally:
        os.environ.pop("NERVELAB_MAX_GROUP_ORDER", None)


def test_run_config_validation() -> None:
    with pytest.raises(ValidationError):
        RunConfig(max_simplices=0)
    with pytest.raises(ValidationError):
        RunConfig(time_budget_s=-1)
    with pytest.raises(ValidationError):
        RunConfig(log_level="chatty")
    assert RunConfig(log_level="debug").log_level == "DEBUG"
