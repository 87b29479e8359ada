"""The .roofline.json dataset format: load, validate, canonicalize, fingerprint.

Layout (all known keys; unknown top-level keys survive a round-trip):

    {
      "schema_version": "1.0",
      "machine": {
        "name": "...",
        "metadata": {"key": "value"},
        "gflops": [{"name": "FMA", "value": 160}, ...],   # compute ceilings
        "gbytes": [{"name": "DRAM", "value": 40}, ...]    # bandwidth ceilings
      },
      "kernels": [{"name": "...", "ai": 2, "gflops": 40, "metadata": {}}, ...],
      "provenance": {"created": "2026-06-15T10:30:00Z", "source": "..."}
    }

Canonical serialization: UTF-8, keys sorted, no insignificant whitespace,
numbers in shortest round-trip form (integral doubles printed as integers).
The fingerprint is a SHA-256 over the canonical machine characterization
only (name + ceilings), so re-benchmarked uploads of the same machine
collide on purpose while provenance edits and extra kernel runs do not.
"""

from dataclasses import dataclass, field
from datetime import datetime, timedelta
import hashlib
import json
import math
from typing import Iterable, Mapping, Optional, Sequence

from .errors import ParseError, ValidationError, VersionError
from .model import BANDWIDTH, COMPUTE, Ceiling, KernelTrial, MachineProfile

SCHEMA_VERSION = "1.0"
DATASET_SUFFIX = ".roofline.json"

_TOP_LEVEL_KEYS = {"schema_version", "machine", "kernels", "provenance"}


# ---------------------------------------------------------------------------
# canonical JSON

def _canonical_value(value, path: str):
    if isinstance(value, bool) or value is None or isinstance(value, (str, int)):
        return value
    if isinstance(value, float):
        if not math.isfinite(value):
            raise ValidationError("non-finite numbers are not representable", path)
        # 160.0 and 160 must serialize identically for fingerprint stability
        if value.is_integer() and abs(value) <= 2.0 ** 53:
            return int(value)
        return value
    if isinstance(value, Mapping):
        return {str(k): _canonical_value(v, f"{path}.{k}") for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_canonical_value(v, f"{path}[{i}]") for i, v in enumerate(value)]
    raise ValidationError(f"unsupported value type {type(value).__name__}", path)


def canonical_json(obj) -> bytes:
    """Deterministic UTF-8 JSON: sorted keys, compact, normalized numbers."""
    normalized = _canonical_value(obj, "document")
    return json.dumps(normalized, sort_keys=True, separators=(",", ":"),
                      ensure_ascii=False, allow_nan=False).encode("utf-8")


# ---------------------------------------------------------------------------
# dataset type

def _check_provenance(provenance: Mapping, path: str = "provenance") -> dict:
    if not isinstance(provenance, Mapping):
        raise ValidationError("must be an object", path)
    for key, value in provenance.items():
        if not isinstance(value, str):
            raise ValidationError("must be text", f"{path}.{key}")
    for key in ("created", "source"):
        if key not in provenance:
            raise ValidationError(f"missing required key {key!r}", path)
    created = provenance["created"]
    iso = created[:-1] + "+00:00" if created.endswith("Z") else created
    try:
        stamp = datetime.fromisoformat(iso)
    except ValueError:
        raise ValidationError("must be an ISO-8601 UTC timestamp", f"{path}.created") from None
    if stamp.utcoffset() != timedelta(0):
        raise ValidationError("timestamp must be UTC (Z or +00:00)", f"{path}.created")
    return dict(provenance)


@dataclass(frozen=True)
class Dataset:
    """One machine profile, its kernel trials, and provenance metadata."""

    machine: MachineProfile
    trials: Sequence[KernelTrial] = ()
    provenance: Mapping[str, str] = field(default_factory=dict)
    schema_version: str = SCHEMA_VERSION
    extras: Mapping[str, object] = field(default_factory=dict)

    def __post_init__(self):
        if self.schema_version != SCHEMA_VERSION:
            raise VersionError(
                f"unsupported schema_version {self.schema_version!r}; supported: {SCHEMA_VERSION}")
        object.__setattr__(self, "trials", tuple(self.trials))
        object.__setattr__(self, "provenance", _check_provenance(self.provenance))
        extras = dict(self.extras)
        clash = _TOP_LEVEL_KEYS.intersection(extras)
        if clash:
            raise ValidationError(f"extras may not shadow reserved keys {sorted(clash)}")
        object.__setattr__(self, "extras", extras)

    @property
    def fingerprint(self) -> str:
        return fingerprint(self)


def _dataset_obj(dataset: Dataset) -> dict:
    machine = dataset.machine
    return {
        "schema_version": dataset.schema_version,
        "machine": {
            "name": machine.name,
            "metadata": dict(machine.metadata),
            "gflops": [{"name": c.name, "value": c.value} for c in machine.compute_ceilings],
            "gbytes": [{"name": c.name, "value": c.value} for c in machine.bandwidth_ceilings],
        },
        "kernels": [
            {"name": t.name, "ai": t.arithmetic_intensity, "gflops": t.achieved_gflops,
             "metadata": dict(t.metadata)}
            for t in dataset.trials
        ],
        "provenance": dict(dataset.provenance),
        **dataset.extras,
    }


def save_dataset(dataset: Dataset) -> bytes:
    """Canonical serialization; load_dataset inverts it exactly."""
    return canonical_json(_dataset_obj(dataset))


def fingerprint(dataset: Dataset) -> str:
    """SHA-256 hex over machine name + ceilings; trials and provenance excluded."""
    machine = dataset.machine
    payload = {
        "name": machine.name,
        "gflops": [{"name": c.name, "value": c.value} for c in machine.compute_ceilings],
        "gbytes": [{"name": c.name, "value": c.value} for c in machine.bandwidth_ceilings],
    }
    return hashlib.sha256(canonical_json(payload)).hexdigest()


# ---------------------------------------------------------------------------
# parsing / validation

def _expect_object(value, path: str) -> Mapping:
    if not isinstance(value, Mapping):
        raise ValidationError("must be an object", path)
    return value


def _expect_text(value, path: str, nonempty: bool = True) -> str:
    if not isinstance(value, str):
        raise ValidationError("must be text", path)
    if nonempty and not value:
        raise ValidationError("must be non-empty", path)
    return value


def _expect_positive_number(value, path: str) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ValidationError("must be a number", path)
    v = float(value)
    if not math.isfinite(v):
        raise ValidationError("must be finite", path)
    if v <= 0.0:
        raise ValidationError("must be > 0", path)
    return v


def _expect_metadata(obj: Mapping, path: str) -> dict:
    metadata = obj.get("metadata", {})
    meta_path = f"{path}.metadata"
    if not isinstance(metadata, Mapping):
        raise ValidationError("must be an object", meta_path)
    for key, value in metadata.items():
        if not isinstance(value, str):
            raise ValidationError("must be text", f"{meta_path}.{key}")
    return dict(metadata)


def _reject_unknown_keys(obj: Mapping, allowed: set, path: str) -> None:
    for key in obj:
        if key not in allowed:
            raise ValidationError("unknown key", f"{path}.{key}")


def _parse_ceilings(machine: Mapping, key: str, kind: str) -> list[Ceiling]:
    path = f"machine.{key}"
    if key not in machine:
        raise ValidationError("missing required key", path)
    raw = machine[key]
    if not isinstance(raw, list):
        raise ValidationError("must be an array", path)
    if not raw:
        raise ValidationError("must contain at least one ceiling", path)
    ceilings = []
    seen = set()
    for i, item in enumerate(raw):
        item_path = f"{path}[{i}]"
        obj = _expect_object(item, item_path)
        _reject_unknown_keys(obj, {"name", "value"}, item_path)
        if "name" not in obj:
            raise ValidationError("missing required key", f"{item_path}.name")
        if "value" not in obj:
            raise ValidationError("missing required key", f"{item_path}.value")
        name = _expect_text(obj["name"], f"{item_path}.name")
        value = _expect_positive_number(obj["value"], f"{item_path}.value")
        if name in seen:
            raise ValidationError(f"duplicate ceiling name {name!r}", path)
        seen.add(name)
        ceilings.append(Ceiling(name=name, kind=kind, value=value))
    return ceilings


def _parse_machine(doc: Mapping) -> MachineProfile:
    if "machine" not in doc:
        raise ValidationError("missing required section", "machine")
    machine = _expect_object(doc["machine"], "machine")
    _reject_unknown_keys(machine, {"name", "metadata", "gflops", "gbytes"}, "machine")
    if "name" not in machine:
        raise ValidationError("missing required key", "machine.name")
    return MachineProfile(
        name=_expect_text(machine["name"], "machine.name"),
        compute_ceilings=_parse_ceilings(machine, "gflops", COMPUTE),
        bandwidth_ceilings=_parse_ceilings(machine, "gbytes", BANDWIDTH),
        metadata=_expect_metadata(machine, "machine"),
    )


def _parse_trials(doc: Mapping) -> list[KernelTrial]:
    raw = doc.get("kernels", [])
    if not isinstance(raw, list):
        raise ValidationError("must be an array", "kernels")
    trials = []
    for i, item in enumerate(raw):
        path = f"kernels[{i}]"
        obj = _expect_object(item, path)
        _reject_unknown_keys(obj, {"name", "ai", "gflops", "metadata"}, path)
        for key in ("name", "ai", "gflops"):
            if key not in obj:
                raise ValidationError("missing required key", f"{path}.{key}")
        trials.append(KernelTrial(
            name=_expect_text(obj["name"], f"{path}.name"),
            arithmetic_intensity=_expect_positive_number(obj["ai"], f"{path}.ai"),
            achieved_gflops=_expect_positive_number(obj["gflops"], f"{path}.gflops"),
            metadata=_expect_metadata(obj, path),
        ))
    return trials


def load_dataset(data: "bytes | str") -> Dataset:
    """Parse and validate a dataset document.

    Raises ParseError (with byte offset) on malformed JSON, ValidationError
    (naming the JSON path) on invariant violations, VersionError on an
    unrecognized schema_version.
    """
    if isinstance(data, (bytes, bytearray)):
        try:
            text = bytes(data).decode("utf-8")
        except UnicodeDecodeError as e:
            raise ParseError(f"invalid UTF-8 at byte offset {e.start}",
                             byte_offset=e.start) from None
    else:
        text = data
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        offset = len(text[:e.pos].encode("utf-8"))
        raise ParseError(f"malformed JSON at byte offset {offset}: {e.msg}",
                         byte_offset=offset) from None

    if not isinstance(doc, Mapping):
        raise ValidationError("must be a JSON object", "document")
    if "schema_version" not in doc:
        raise ValidationError("missing required key", "schema_version")
    version = _expect_text(doc["schema_version"], "schema_version")
    if version != SCHEMA_VERSION:
        raise VersionError(f"unsupported schema_version {version!r}; supported: {SCHEMA_VERSION}")

    machine = _parse_machine(doc)
    trials = _parse_trials(doc)
    if "provenance" not in doc:
        raise ValidationError("missing required section", "provenance")
    provenance = _check_provenance(_expect_object(doc["provenance"], "provenance"))
    extras = {k: v for k, v in doc.items() if k not in _TOP_LEVEL_KEYS}
    return Dataset(machine=machine, trials=trials, provenance=provenance,
                   schema_version=version, extras=extras)


# ---------------------------------------------------------------------------
# store-level helpers

def find_duplicates(incoming: Dataset,
                    store: Iterable[tuple[str, Dataset]]) -> list[str]:
    """Ids of stored datasets whose machine fingerprint equals the incoming one."""
    want = incoming.fingerprint
    return [ds_id for ds_id, ds in store if ds.fingerprint == want]


def search(store: Iterable[tuple[str, Dataset]],
           query: Sequence[tuple[str, str]] = (),
           name_substring: Optional[str] = None) -> list[str]:
    """Ids of datasets matching every (key, value) constraint and name substring.

    A constraint matches when the key maps to exactly that value in either
    the machine metadata or the provenance.  The name match is a
    case-insensitive substring of the machine name.  Empty query matches all.
    """
    needle = (name_substring or "").lower()
    matches = []
    for ds_id, ds in store:
        meta = ds.machine.metadata
        prov = ds.provenance
        if not all(meta.get(k) == v or prov.get(k) == v for k, v in query):
            continue
        if needle and needle not in ds.machine.name.lower():
            continue
        matches.append(ds_id)
    return matches
