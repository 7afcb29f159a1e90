import io
import math

import pytest

from magbound import PhysicalParams, derive_scales
from magbound.cli import main


@pytest.fixture(scope="session")
def natural():
    params = PhysicalParams.natural(lam=2.0 * math.pi)
    return params, derive_scales(params)


class CliRun:
    def __init__(self, code: int, out: str, err: str):
        self.code = code
        self.out = out
        self.err = err


def run_cli(*argv: str) -> CliRun:
    out, err = io.StringIO(), io.StringIO()
    try:
        code = main(list(argv), stdout=out, stderr=err)
    except SystemExit as exc:  # argparse-level failures
        code = exc.code if isinstance(exc.code, int) else 2
    return CliRun(code, out.getvalue(), err.getvalue())


@pytest.fixture
def cli():
    return run_cli
