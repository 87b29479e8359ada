"""On-disk dataset store: one canonical .roofline.json file per dataset id.

Ids are server-assigned 8-char lowercase hex.  Writes go to a temp file and
are renamed into place, so concurrent readers never observe a half-written
dataset; a single writer at a time is assumed.
"""

import os
from pathlib import Path
import re
import secrets
import tempfile
from typing import Optional

from .datafile import DATASET_SUFFIX, Dataset, find_duplicates, load_dataset, save_dataset
from .errors import NotFoundError

_ID_RE = re.compile(r"^[0-9a-f]{8}$")


class DatasetStore:
    def __init__(self, data_dir: "str | os.PathLike"):
        self.data_dir = Path(data_dir)
        self.data_dir.mkdir(parents=True, exist_ok=True)

    def _path(self, dataset_id: str) -> Path:
        # the id pattern is the only path component callers control; anything
        # else (slashes, dots, traversal) is simply an unknown id
        if not _ID_RE.match(dataset_id):
            raise NotFoundError(dataset_id)
        return self.data_dir / f"{dataset_id}{DATASET_SUFFIX}"

    def ids(self) -> list[str]:
        found = []
        for entry in self.data_dir.iterdir():
            if entry.name.endswith(DATASET_SUFFIX):
                stem = entry.name[: -len(DATASET_SUFFIX)]
                if _ID_RE.match(stem):
                    found.append(stem)
        return sorted(found)

    def raw(self, dataset_id: str) -> bytes:
        """Canonical bytes as written by save_dataset."""
        path = self._path(dataset_id)
        if not path.exists():
            raise NotFoundError(dataset_id)
        return path.read_bytes()

    def load(self, dataset_id: str) -> Dataset:
        return load_dataset(self.raw(dataset_id))

    def items(self) -> list[tuple[str, Dataset]]:
        return [(ds_id, self.load(ds_id)) for ds_id in self.ids()]

    def duplicates_of(self, dataset: Dataset) -> list[str]:
        return find_duplicates(dataset, self.items())

    def add(self, dataset: Dataset) -> tuple[str, list[str]]:
        """Store a dataset under a fresh id.

        Returns (id, duplicate ids).  Duplicates are flagged, not rejected:
        the store keeps every import and leaves dedup decisions to the user.
        """
        duplicates = self.duplicates_of(dataset)
        while True:
            dataset_id = secrets.token_hex(4)
            path = self._path(dataset_id)
            if not path.exists():
                break
        _atomic_write(path, save_dataset(dataset))
        return dataset_id, duplicates

    def delete(self, dataset_id: str) -> None:
        path = self._path(dataset_id)
        if not path.exists():
            raise NotFoundError(dataset_id)
        path.unlink()


def _atomic_write(path: Path, data: bytes) -> None:
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=".tmp-", suffix=path.suffix)
    try:
        with os.fdopen(fd, "wb") as handle:
            handle.write(data)
        os.replace(tmp, path)
    except BaseException:
        try:
            os.unlink(tmp)
        except OSError:
            pass
        raise


def summarize(dataset_id: str, dataset: Dataset) -> dict:
    """The /machines listing row for one dataset."""
    return {
        "id": dataset_id,
        "machine_name": dataset.machine.name,
        "created": dataset.provenance.get("created", ""),
        "n_trials": len(dataset.trials),
        "fingerprint": dataset.fingerprint,
    }


def default_data_dir() -> Path:
    env = os.environ.get("ROOFLINE_DATA_DIR")
    if env:
        return Path(env)
    return Path.home() / ".local" / "share" / "roofline"


def resolve_data_dir(arg: Optional[str]) -> Path:
    return Path(arg) if arg else default_data_dir()
