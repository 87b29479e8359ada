import pytest

from rooflinekit.datafile import load_dataset, save_dataset
from rooflinekit.errors import NotFoundError
from rooflinekit.store import DatasetStore, summarize


@pytest.fixture
def store(tmp_path):
    return DatasetStore(tmp_path / "data")


def test_add_and_load_round_trip(store, toy_dataset):
    ds_id, duplicates = store.add(toy_dataset)
    assert duplicates == []
    assert len(ds_id) == 8
    assert store.load(ds_id) == toy_dataset
    assert store.raw(ds_id) == save_dataset(toy_dataset)


def test_ids_sorted_and_stable(store, toy_dataset):
    added = sorted(store.add(toy_dataset)[0] for _ in range(5))
    assert store.ids() == added


def test_duplicate_import_flagged_not_rejected(store, toy_dataset):
    first, _ = store.add(toy_dataset)
    second, duplicates = store.add(toy_dataset)
    assert duplicates == [first]
    assert second != first
    assert len(store.ids()) == 2


def test_unknown_id(store):
    with pytest.raises(NotFoundError):
        store.load("deadbeef")


def test_path_traversal_is_just_an_unknown_id(store, toy_dataset, tmp_path):
    secret = tmp_path / "secret.roofline.json"
    secret.write_bytes(save_dataset(toy_dataset))
    for evil in ("../secret", "..%2Fsecret", "a/b", ".", "A1B2C3D4", "x" * 200):
        with pytest.raises(NotFoundError):
            store.raw(evil)


def test_foreign_files_are_ignored_by_listing(store, toy_dataset):
    ds_id, _ = store.add(toy_dataset)
    (store.data_dir / "notes.txt").write_text("not a dataset")
    (store.data_dir / "broken.roofline.json").write_text("{}")  # bad stem, not 8-hex
    assert store.ids() == [ds_id]


def test_summarize(store, toy_dataset):
    ds_id, _ = store.add(toy_dataset)
    row = summarize(ds_id, store.load(ds_id))
    assert row == {
        "id": ds_id,
        "machine_name": "toy",
        "created": "2026-06-15T10:30:00Z",
        "n_trials": 1,
        "fingerprint": toy_dataset.fingerprint,
    }


def test_no_partial_files_after_add(store, toy_dataset):
    store.add(toy_dataset)
    leftovers = [p.name for p in store.data_dir.iterdir() if p.name.startswith(".tmp-")]
    assert leftovers == []


def test_stored_bytes_are_canonical(store, toy_sample_path):
    ds = load_dataset(toy_sample_path.read_bytes())
    ds_id, _ = store.add(ds)
    raw = store.raw(ds_id)
    assert raw == save_dataset(load_dataset(raw))
