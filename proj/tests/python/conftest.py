import json
import os
import pathlib
import shutil

import pytest

ROOT = pathlib.Path(__file__).resolve().parents[2]


@pytest.fixture(scope="session")
def cli():
    path = os.environ.get("ABBA_CLI") or shutil.which("abba") or str(ROOT / "build" / "abba")
    if not pathlib.Path(path).exists():
        pytest.skip("abba executable not built")
    return path


@pytest.fixture(scope="session")
def schemas():
    from referencing import Registry, Resource

    directory = pathlib.Path(os.environ.get("ABBA_SCHEMAS", ROOT / "docs" / "schemas"))
    loaded = {p.name: json.loads(p.read_text()) for p in directory.glob("*.schema.json")}
    registry = Registry().with_resources(
        (doc["$id"], Resource.from_contents(doc)) for doc in loaded.values()
    )
    return loaded, registry
