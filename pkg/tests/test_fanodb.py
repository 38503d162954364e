import json

import pytest

from torquiv import contraction_list, contraction_maps, full_str_exc_coll, quiver_of_sections, smooth_fano
from torquiv import fanodb, lattice
from torquiv.errors import NoCollection, NonCommuting, NoSuchEdge, UnknownKey


def test_known_entries():
    assert smooth_fano(2, 0).deg == ((1, 1, 1),)
    assert smooth_fano(2, 4).n_rays == 6
    assert smooth_fano(2, 4).name == "dP6"
    assert len(full_str_exc_coll(2, 4)) == 6
    assert len(full_str_exc_coll(3, 1)) == 6


def test_unknown_key():
    with pytest.raises(UnknownKey):
        smooth_fano(2, 99)
    with pytest.raises(KeyError):
        smooth_fano(5, 0)


def test_contraction_list():
    assert contraction_list(2) == [(4, 3), (3, 2), (3, 1), (2, 0)]
    assert contraction_list(3) == [(1, 0)]
    assert contraction_list(4) == []


def test_edge_maps_commute():
    m = contraction_maps((2, 4), (2, 3))
    Xs, Xt = smooth_fano(2, 4), smooth_fano(2, 3)
    assert m.character_map == lattice.identity(2)
    assert lattice.matmul(Xt.deg, m.divisor_map, 6) == lattice.matmul(m.picard_map, Xs.deg, 6)


def test_composite_path():
    direct = contraction_maps((2, 4), (2, 0))
    steps = [((2, 4), (2, 3)), ((2, 3), (2, 2)), ((2, 2), (2, 0))]
    P = lattice.identity(4)
    for s, t in steps:
        P = lattice.matmul(contraction_maps(s, t).picard_map, P, 4)
    assert direct.picard_map == P


def test_missing_edge():
    with pytest.raises(NoSuchEdge):
        contraction_maps((2, 0), (2, 4))
    with pytest.raises(NoSuchEdge):
        contraction_maps((2, 0), (3, 0))


def test_chain_images(dp6):
    Q = quiver_of_sections(dp6, full_str_exc_coll(2, 4))
    maps = contraction_maps((2, 4), (2, 0))
    image = fanodb.image_collection(Q.vertices, maps)
    assert sorted(image) == [(0,), (1,), (2,)]
    assert fanodb.do_higher_self_exts_vanish_chain(Q, [4, 3, 2, 0])
    with pytest.raises(ValueError):
        fanodb.do_higher_self_exts_vanish_chain(Q, [3, 2, 0])


def test_records_roundtrip(tmp_path):
    db = fanodb.default_database()
    path = tmp_path / "db.json"
    path.write_text(json.dumps(db.to_records()))
    db2 = fanodb.load_database(str(path))
    assert db2.to_records() == db.to_records()


def test_env_var(tmp_path, monkeypatch):
    records = [r for r in fanodb.default_database().to_records() if r["key"] == [2, 0]]
    records[0].pop("collection")
    path = tmp_path / "small.json"
    path.write_text(json.dumps(records))
    monkeypatch.setenv(fanodb.ENV_VAR, str(path))
    db = fanodb.default_database()
    assert list(db.entries) == [(2, 0)]
    with pytest.raises(NoCollection):
        db.full_str_exc_coll(2, 0)
    monkeypatch.delenv(fanodb.ENV_VAR)
    assert len(fanodb.default_database().entries) == 10


def test_bad_collection_fails_self_test(tmp_path):
    records = [r for r in fanodb.default_database().to_records() if r["key"] == [2, 0]]
    records[0]["collection"] = [[0], [3]]
    path = tmp_path / "bad.json"
    path.write_text(json.dumps(records))
    with pytest.raises(AssertionError):
        fanodb.load_database(str(path))
    fanodb.load_database(str(path), self_test=False)


def test_noncommuting_square_detected():
    Xs, Xt = smooth_fano(2, 4), smooth_fano(2, 3)
    good = contraction_maps((2, 4), (2, 3))
    broken = fanodb.ContractionMaps(good.character_map, good.divisor_map, [row[:] for row in good.picard_map])
    broken.picard_map[0][0] += 1
    with pytest.raises(NonCommuting):
        fanodb.check_square(Xs, Xt, broken)


def test_edge_moving_a_ray_rejected():
    records = fanodb.default_database().to_records()
    for r in records:
        if r["key"] == [2, 2]:
            r["contractions"][0]["ray_matching"] = [0, 1, 3]
    with pytest.raises(ValueError):
        fanodb.FanoDatabase(records)


def test_dp6_collection_pushes_to_stored_collections(dp6):
    Q = quiver_of_sections(dp6, full_str_exc_coll(2, 4))
    for t in (3, 2, 0):
        image = fanodb.image_collection(Q.vertices, contraction_maps((2, 4), (2, t)))
        assert sorted(image) == sorted(full_str_exc_coll(2, t))
    assert len(fanodb.image_collection(Q.vertices, contraction_maps((2, 4), (2, 3)))) == 5
