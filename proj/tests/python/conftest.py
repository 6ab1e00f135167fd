import os
import sys

import pytest

MODULE_DIR = os.environ.get("CUTPOINT_MODULE_DIR")
if MODULE_DIR and MODULE_DIR not in sys.path:
    sys.path.insert(0, MODULE_DIR)


@pytest.fixture(scope="session")
def cli():
    path = os.environ.get("CUTPOINT_CLI")
    if not path or not os.path.exists(path):
        pytest.skip("CUTPOINT_CLI not set")
    return path


@pytest.fixture(scope="session")
def data_dir():
    path = os.environ.get("CUTPOINT_DATA_DIR")
    if not path or not os.path.isdir(path):
        pytest.skip("CUTPOINT_DATA_DIR not set")
    return path
