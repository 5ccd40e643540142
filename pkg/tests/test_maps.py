import pytest

from fourcolor import fixtures
from fourcolor.errors import MapError
from fourcolor.maps import (
    PlanarMap,
    coloring_from_json,
    coloring_to_json,
    cubify,
    dual,
    map_from_json,
    map_to_json,
    uncubify,
    validate_map,
)


def test_tetrahedron_valid():
    report = validate_map(fixtures.tetrahedron())
    assert report.ok, report.problems


def test_square_pyramid_valid():
    m = fixtures.square_pyramid()
    assert validate_map(m).ok
    assert len(m.vertices) == 5
    assert m.num_edges == 8
    assert len(m.faces) == 5


def test_corpus_all_valid():
    for name, build in fixtures.CORPUS.items():
        report = validate_map(build())
        assert report.ok, (name, report.problems)


def test_unshared_edge_reported():
    # One triangle plus an unrelated digon: edge a-b etc. appear once.
    m = PlanarMap.from_walks({"f": ["a", "b", "c"], "g": ["a", "b"]})
    report = validate_map(m)
    assert not report.ok
    assert any("edge" in p for p in report.problems)


def test_euler_violation_reported():
    m = PlanarMap.from_walks(
        {"f": ["a", "b", "c"], "g": ["a", "c", "b"], "h": ["a", "b", "c"], "i": ["a", "c", "b"]}
    )
    report = validate_map(m)
    assert not report.ok
    assert any("Euler" in p for p in report.problems)


def test_repeated_vertex_rejected():
    m = PlanarMap.from_walks({"f": ["a", "b", "a", "c"], "g": ["a", "b", "c"]})
    report = validate_map(m)
    assert not report.ok


def test_dual_tetrahedron_complete():
    d = dual(fixtures.tetrahedron())
    assert len(d.nodes) == 4
    assert len(d.edges) == 6  # K4


def test_dual_digon():
    d = dual(fixtures.digon_sphere())
    assert set(map(tuple, (sorted(e) for e in d.edges))) == {("north", "south")}


def test_dual_square_pyramid():
    d = dual(fixtures.square_pyramid())
    assert sorted(d.neighbors("base")) == ["s0", "s1", "s2", "s3"]
    assert "s2" in d.neighbors("s1") and "s0" in d.neighbors("s1")
    assert "s2" not in d.neighbors("s0")


def test_cubify_identity_on_tetrahedron():
    m = fixtures.tetrahedron()
    cm, record = cubify(m)
    assert cm.faces == m.faces
    assert not record.added_faces


def test_cubify_square_pyramid_counts():
    cm, record = cubify(fixtures.square_pyramid())
    assert len(cm.vertices) == 8
    assert cm.num_edges == 12
    assert len(cm.faces) == 6
    assert len(record.added_faces) == 1
    (cover,) = record.added_faces
    assert len(cm.faces[cover][0]) == 4
    assert validate_map(cm).ok
    assert max(cm.degrees().values()) == 3


def test_cubify_octahedron():
    cm, record = cubify(fixtures.octahedron())
    assert len(record.added_faces) == 6
    assert all(len(cm.faces[f][0]) == 4 for f in record.added_faces)
    assert validate_map(cm).ok
    assert set(cm.degrees().values()) == {3}


def test_cubify_rejects_low_degree():
    with pytest.raises(MapError, match="degree below 3"):
        cubify(fixtures.digon_sphere())


def test_uncubify_roundtrip():
    m = fixtures.square_pyramid()
    cm, record = cubify(m)
    from fourcolor.oracle import four_color_bruteforce

    coloring = four_color_bruteforce(dual(cm))
    assert coloring is not None
    restored = uncubify(coloring, record)
    assert set(restored) == set(m.faces)
    d = dual(m)
    for e in d.edges:
        a, b = sorted(e)
        assert restored[a] != restored[b]


def test_uncubify_missing_face_errors():
    _, record = cubify(fixtures.square_pyramid())
    with pytest.raises(MapError, match="missing"):
        uncubify({"base": 0}, record)


def test_uncubify_empty_record_identity():
    m = fixtures.tetrahedron()
    _, record = cubify(m)
    coloring = {f: i for i, f in enumerate(m.face_ids)}
    assert uncubify(coloring, record) == coloring


def test_json_roundtrip():
    for build in fixtures.CORPUS.values():
        m = build()
        assert map_from_json(map_to_json(m)) == m


def test_coloring_json_roundtrip():
    c = {"f0": 0, "f1": 3}
    assert coloring_from_json(coloring_to_json(c)) == c


def test_malformed_json_raises():
    with pytest.raises(MapError):
        map_from_json("{not json")
    with pytest.raises(MapError):
        map_from_json('{"nofaces": 1}')


def test_smooth_degree_two_removes_subdivision():
    from fourcolor.maps import smooth_degree_two

    # tetrahedron with the edge a-b subdivided by m
    m = PlanarMap.from_walks(
        {
            "f0": ("a", "m", "b", "c"),
            "f1": ("a", "d", "b", "m"),
            "f2": ("b", "d", "c"),
            "f3": ("a", "c", "d"),
        }
    )
    assert validate_map(m).ok
    out = smooth_degree_two(m)
    assert "m" not in out.degrees()
    assert out == fixtures.tetrahedron()
    assert validate_map(out).ok


def test_smooth_degree_two_keeps_digon_sphere():
    from fourcolor.maps import smooth_degree_two

    m = fixtures.digon_sphere()
    assert smooth_degree_two(m) == m
