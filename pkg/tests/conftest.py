import pytest

from vcert.certificate import run_pipeline


@pytest.fixture(scope="session")
def pipelines():
    """Both conventions of the certificate pipeline, computed once per session."""
    return {mode: run_pipeline(mode, threads=1) for mode in ("closed-form", "engine")}
