import pytest

from fourcolor.boundary import attach, match_face_to_arc, seed_boundary
from fourcolor.errors import MapError, ScaleLimitError
from fourcolor.fixtures import CORPUS, island_map, nested_island_map, tetrahedron
from fourcolor.harness import generate_map
from fourcolor.maps import PlanarMap, cubify, smooth_degree_two, validate_map
from fourcolor.oracle import primitive_set_reference
from fourcolor.pipeline import (
    color_map,
    color_with_islands,
    verify_coloring,
)
from fourcolor.schemes import seed_primitive_set, update_on_attach


@pytest.mark.parametrize("name", sorted(CORPUS))
def test_corpus_colors_properly(name):
    run = color_with_islands(CORPUS[name]())
    assert run.verified, run.violations
    assert not run.used_fallback


def test_tetrahedron_needs_four_colors():
    run = color_map(tetrahedron())
    # dual is complete on 4 faces
    assert len(set(run.coloring.values())) == 4


def test_digon_two_colors():
    m = CORPUS["digon"]()
    run = color_map(m)
    assert sorted(run.coloring.values()) == [0, 1]
    assert run.trace == []


def test_verify_coloring_flags_clash():
    m = tetrahedron()
    bad = {fid: 0 for fid in m.faces}
    ok, violations = verify_coloring(m, bad)
    assert not ok
    assert any("share color" in v for v in violations)


def test_verify_coloring_missing_face():
    m = tetrahedron()
    with pytest.raises(MapError):
        verify_coloring(m, {})


def test_determinism():
    m = CORPUS["cube"]()
    r1 = color_map(m)
    r2 = color_map(m)
    assert r1.coloring == r2.coloring
    assert r1.trace == r2.trace


def test_trace_replays_through_boundary_engine():
    m = CORPUS["cube"]()
    run = color_map(m)
    c, _ = cubify(smooth_degree_two(m))
    seed = sorted(c.faces)[0]
    state = seed_boundary(c, seed)
    pset = seed_primitive_set(state.k, seed, 0)
    for op in run.trace:
        arc = state.intervals[op.interval_index].arc if state.k > 1 else state.boundary
        chain = match_face_to_arc(c.faces[op.face_id][0], arc)
        state = attach(state, op.interval_index, op.n, region_id=op.face_id, new_chain=chain)
        pset = update_on_attach(pset, op.interval_index, op.n, region_id=op.face_id)
        # the incrementally maintained set stays honest against the oracle
        ref = primitive_set_reference(state, fixed_colors={seed: 0})
        assert ref.schemes == pset.schemes
    assert state.k == 1
    assert len(state.faces) == len(c.faces) - 1


def test_islands_fixture():
    run = color_with_islands(island_map())
    assert run.verified
    # sea face and each island face differ
    m = island_map()
    ok, violations = verify_coloring(m, run.coloring)
    assert ok, violations


def test_nested_islands():
    run = color_with_islands(nested_island_map())
    assert run.verified


def test_island_free_map_matches_color_map():
    m = CORPUS["square_pyramid"]()
    a = color_with_islands(m)
    b = color_map(m)
    assert a.coloring == b.coloring
    assert a.trace == b.trace


def test_generated_maps_color():
    for s in range(5):
        m = generate_map(face_count=12, rng_seed=s)
        assert validate_map(m).ok
        run = color_map(m)
        assert run.verified, run.violations


def test_generator_rejects_tiny_request():
    with pytest.raises(ValueError):
        generate_map(face_count=3)


def _pyramid(n):
    base = tuple(f"b{i}" for i in range(n))
    faces = {"base": base}
    for i in range(n):
        faces[f"s{i}"] = (base[i], base[(i + 1) % n], "apex")
    return PlanarMap.from_walks(faces)


def test_scale_cap():
    m = _pyramid(39)  # cubification of the apex pushes past the face cap
    assert validate_map(m).ok
    with pytest.raises(ScaleLimitError):
        color_map(m)


def test_pyramid_within_cap():
    m = _pyramid(8)
    run = color_map(m)
    assert run.verified, run.violations


def test_run_json_roundtrip_fields():
    run = color_map(tetrahedron())
    obj = run.to_json_obj()
    assert set(obj) == {
        "faces",
        "coloring",
        "trace",
        "used_fallback",
        "claim_violations",
        "verified",
        "violations",
        "seconds",
    }
    assert obj["used_fallback"] is False
