"""Remote dataset repositories: a static index.json plus dataset files.

Any plain HTTP server can host a repository:

    <base_url>/index.json          repository index (see RepositoryIndex)
    <base_url>/<whatever>.json     dataset files, addressed by index entry URLs

Pulled datasets land in a local cache keyed by entry id, verified against
the index's SHA-256 before and after install.  Cached entries stay usable
with the network gone.
"""

from dataclasses import dataclass, field
import hashlib
import json
import os
from pathlib import Path
import re
import tempfile
from typing import Callable, Optional
from urllib.parse import urljoin

import requests

from .datafile import DATASET_SUFFIX, load_dataset
from .errors import (IntegrityError, NotFoundError, RemoteError, RooflineError,
                     TransportError, ValidationError)

REPO_VERSION = "1.0"

_SHA256_RE = re.compile(r"^[0-9a-f]{64}$")

# fetch(url) -> bytes; injectable so tests can count or fail transfers
Fetch = Callable[[str], bytes]


def http_fetch(url: str, timeout: float = 30.0) -> bytes:
    try:
        response = requests.get(url, timeout=timeout)
    except requests.RequestException as e:
        raise TransportError(f"GET {url} failed: {e}") from e
    if response.status_code != 200:
        raise RemoteError(f"GET {url} returned {response.status_code}",
                          status=response.status_code)
    return response.content


@dataclass(frozen=True)
class RepoEntry:
    id: str
    url: str
    sha256: str
    machine_name: str = ""
    created: str = ""
    tags: tuple[str, ...] = ()


@dataclass(frozen=True)
class RepositoryIndex:
    repo_version: str = REPO_VERSION
    entries: tuple[RepoEntry, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "entries", tuple(self.entries))
        seen = set()
        for entry in self.entries:
            if entry.id in seen:
                raise ValidationError(f"duplicate entry id {entry.id!r}", "entries")
            seen.add(entry.id)
            if not _SHA256_RE.match(entry.sha256):
                raise ValidationError(f"malformed sha256 for entry {entry.id!r}",
                                      "entries")

    def entry(self, entry_id: str) -> RepoEntry:
        for e in self.entries:
            if e.id == entry_id:
                return e
        raise NotFoundError(entry_id)


def _parse_index(data: bytes, base_url: str) -> RepositoryIndex:
    try:
        doc = json.loads(data.decode("utf-8"))
    except (UnicodeDecodeError, json.JSONDecodeError) as e:
        raise ValidationError(f"index.json is not valid JSON: {e}", "index") from None
    if not isinstance(doc, dict):
        raise ValidationError("must be a JSON object", "index")
    version = doc.get("repo_version")
    if version != REPO_VERSION:
        raise ValidationError(f"unsupported repo_version {version!r}", "repo_version")
    raw_entries = doc.get("entries")
    if not isinstance(raw_entries, list):
        raise ValidationError("must be an array", "entries")
    entries = []
    for i, item in enumerate(raw_entries):
        path = f"entries[{i}]"
        if not isinstance(item, dict):
            raise ValidationError("must be an object", path)
        for key in ("id", "url", "sha256"):
            if not isinstance(item.get(key), str) or not item[key]:
                raise ValidationError(f"missing or invalid {key!r}", path)
        tags = item.get("tags", [])
        if not isinstance(tags, list) or not all(isinstance(t, str) for t in tags):
            raise ValidationError("tags must be an array of text", path)
        entries.append(RepoEntry(
            id=item["id"],
            url=urljoin(base_url.rstrip("/") + "/", item["url"]),
            sha256=item["sha256"].lower(),
            machine_name=item.get("machine_name", ""),
            created=item.get("created", ""),
            tags=tuple(tags),
        ))
    return RepositoryIndex(repo_version=version, entries=tuple(entries))


def fetch_index(base_url: str, fetch: Optional[Fetch] = None) -> RepositoryIndex:
    """GET <base_url>/index.json and validate it."""
    fetch = fetch or http_fetch
    url = base_url.rstrip("/") + "/index.json"
    return _parse_index(fetch(url), base_url)


def default_cache_dir() -> Path:
    env = os.environ.get("ROOFLINE_CACHE_DIR")
    if env:
        return Path(env)
    return Path.home() / ".cache" / "roofline"


def _cache_path(cache_dir: "str | os.PathLike", entry_id: str) -> Path:
    return Path(cache_dir) / f"{entry_id}{DATASET_SUFFIX}"


def _matches(path: Path, sha256: str) -> bool:
    if not path.exists():
        return False
    return hashlib.sha256(path.read_bytes()).hexdigest() == sha256


def pull(index: RepositoryIndex, entry_id: str, cache_dir: "str | os.PathLike",
         fetch: Optional[Fetch] = None) -> str:
    """Download one entry into the cache unless a verified copy is already there.

    Returns the local path.  The checksum is verified before install; a
    mismatch raises IntegrityError and leaves the cache untouched.  A cached
    file failing verification (tampered on disk) is re-downloaded.
    """
    fetch = fetch or http_fetch
    entry = index.entry(entry_id)
    cache_dir = Path(cache_dir)
    dest = _cache_path(cache_dir, entry_id)
    if _matches(dest, entry.sha256):
        return str(dest)

    data = fetch(entry.url)
    digest = hashlib.sha256(data).hexdigest()
    if digest != entry.sha256:
        raise IntegrityError(
            f"checksum mismatch for {entry_id!r}: index says {entry.sha256}, got {digest}")
    load_dataset(data)  # never install a file that does not parse as a dataset

    cache_dir.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=cache_dir, prefix=f".tmp-{entry_id}-", suffix=".json")
    try:
        with os.fdopen(fd, "wb") as handle:
            handle.write(data)
        # atomic: concurrent pulls of the same id race on the rename and both
        # end up observing a complete, verified file
        os.replace(tmp, dest)
    except BaseException:
        try:
            os.unlink(tmp)
        except OSError:
            pass
        raise
    return str(dest)


def list_remote(index: RepositoryIndex, tag_filter: Optional[str] = None) -> list[RepoEntry]:
    """Entries carrying the exact tag, or all of them; index order preserved."""
    if tag_filter is None:
        return list(index.entries)
    return [e for e in index.entries if tag_filter in e.tags]


@dataclass
class SyncReport:
    pulled: list[str] = field(default_factory=list)
    cached: list[str] = field(default_factory=list)
    errors: list[dict] = field(default_factory=list)


def sync(index: RepositoryIndex, cache_dir: "str | os.PathLike",
         fetch: Optional[Fetch] = None) -> SyncReport:
    """Pull every index entry; per-entry failures are reported, not fatal."""
    report = SyncReport()
    for entry in index.entries:
        if _matches(_cache_path(cache_dir, entry.id), entry.sha256):
            report.cached.append(entry.id)
            continue
        try:
            pull(index, entry.id, cache_dir, fetch=fetch)
        except RooflineError as e:
            report.errors.append({"id": entry.id, "message": str(e)})
        else:
            report.pulled.append(entry.id)
    return report
