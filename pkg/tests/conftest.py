import hashlib
import json
import threading
from functools import partial
from http.server import SimpleHTTPRequestHandler, ThreadingHTTPServer
from pathlib import Path

import pytest

from rooflinekit.datafile import Dataset, save_dataset
from rooflinekit.model import Ceiling, KernelTrial, MachineProfile

REPO_ROOT = Path(__file__).resolve().parent.parent
SAMPLES = REPO_ROOT / "samples"
GOLDEN = Path(__file__).resolve().parent / "golden"


@pytest.fixture
def toy_profile() -> MachineProfile:
    """The hand-computable 2x2 fixture used throughout: ridges 0.25/0.5/2/4."""
    return MachineProfile(
        name="toy",
        compute_ceilings=[Ceiling("FMA", "compute", 160.0), Ceiling("NoFMA", "compute", 80.0)],
        bandwidth_ceilings=[Ceiling("L1", "bandwidth", 320.0), Ceiling("DRAM", "bandwidth", 40.0)],
        metadata={"compiler": "gcc", "arch": "x86_64"},
    )


@pytest.fixture
def stencil_trial() -> KernelTrial:
    return KernelTrial("stencil", arithmetic_intensity=2.0, achieved_gflops=40.0)


@pytest.fixture
def toy_dataset(toy_profile, stencil_trial) -> Dataset:
    return Dataset(
        machine=toy_profile,
        trials=[stencil_trial],
        provenance={"created": "2026-06-15T10:30:00Z", "source": "test fixture"},
    )


@pytest.fixture
def toy_sample_path() -> Path:
    return SAMPLES / "toy.roofline.json"


@pytest.fixture
def mini_sample_path() -> Path:
    return SAMPLES / "mini.roofline.json"


def make_dataset_obj(**overrides) -> dict:
    """A valid dataset document as a plain dict, patchable per test."""
    obj = {
        "schema_version": "1.0",
        "machine": {
            "name": "toy",
            "metadata": {"compiler": "gcc"},
            "gflops": [{"name": "FMA", "value": 160}, {"name": "NoFMA", "value": 80}],
            "gbytes": [{"name": "L1", "value": 320}, {"name": "DRAM", "value": 40}],
        },
        "kernels": [{"name": "stencil", "ai": 2, "gflops": 40, "metadata": {}}],
        "provenance": {"created": "2026-06-15T10:30:00Z", "source": "unit test"},
    }
    obj.update(overrides)
    return obj


def dataset_bytes(**overrides) -> bytes:
    return json.dumps(make_dataset_obj(**overrides)).encode("utf-8")


class _QuietHandler(SimpleHTTPRequestHandler):
    def log_message(self, *args):
        pass


class FixtureRepo:
    """A directory of dataset files plus index.json, served over local HTTP."""

    def __init__(self, root: Path):
        self.root = root
        self.root.mkdir(parents=True, exist_ok=True)
        self.entries = []
        self.transfers = 0  # requests served via the counting fetcher
        self._server = None

    def add_dataset(self, entry_id: str, dataset, tags=()):
        data = save_dataset(dataset)
        filename = f"{entry_id}.roofline.json"
        (self.root / filename).write_bytes(data)
        self.entries.append({
            "id": entry_id,
            "url": filename,
            "sha256": hashlib.sha256(data).hexdigest(),
            "machine_name": dataset.machine.name,
            "created": dataset.provenance.get("created", ""),
            "tags": list(tags),
        })
        self.write_index()

    def write_index(self):
        (self.root / "index.json").write_text(
            json.dumps({"repo_version": "1.0", "entries": self.entries}))

    def tamper(self, entry_id: str):
        path = self.root / f"{entry_id}.roofline.json"
        path.write_bytes(path.read_bytes() + b" ")

    def start(self) -> str:
        handler = partial(_QuietHandler, directory=str(self.root))
        self._server = ThreadingHTTPServer(("127.0.0.1", 0), handler)
        threading.Thread(target=self._server.serve_forever, daemon=True).start()
        host, port = self._server.server_address
        return f"http://{host}:{port}"

    def stop(self):
        if self._server is not None:
            self._server.shutdown()
            self._server.server_close()
            self._server = None

    def counting_fetch(self, url: str) -> bytes:
        from rooflinekit.repo import http_fetch
        self.transfers += 1
        return http_fetch(url)
