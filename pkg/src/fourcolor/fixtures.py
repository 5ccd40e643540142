"""Hand-built corpus maps used by tests, the acceptance suite, and docs."""

from .maps import PlanarMap


def digon_sphere() -> PlanarMap:
    """Two faces separated by a 2-cycle."""
    return PlanarMap.from_walks({"north": ["a", "b"], "south": ["a", "b"]})


def tetrahedron() -> PlanarMap:
    return PlanarMap.from_walks(
        {
            "f0": ["a", "b", "c"],
            "f1": ["a", "d", "b"],
            "f2": ["b", "d", "c"],
            "f3": ["a", "c", "d"],
        }
    )


def cube_surface() -> PlanarMap:
    """The six quadrilateral faces of a cube."""
    return PlanarMap.from_walks(
        {
            "bottom": ["a", "b", "c", "d"],
            "top": ["e", "h", "g", "f"],
            "front": ["a", "e", "f", "b"],
            "right": ["b", "f", "g", "c"],
            "back": ["c", "g", "h", "d"],
            "left": ["d", "h", "e", "a"],
        }
    )


def square_pyramid() -> PlanarMap:
    """Four triangles around a degree-4 apex plus a square base."""
    return PlanarMap.from_walks(
        {
            "base": ["a", "d", "c", "b"],
            "s0": ["a", "b", "p"],
            "s1": ["b", "c", "p"],
            "s2": ["c", "d", "p"],
            "s3": ["d", "a", "p"],
        }
    )


def octahedron() -> PlanarMap:
    """Eight triangles; every vertex has degree 4."""
    return PlanarMap.from_walks(
        {
            "f0": ["u", "a", "b"],
            "f1": ["u", "b", "c"],
            "f2": ["u", "c", "d"],
            "f3": ["u", "d", "a"],
            "f4": ["w", "b", "a"],
            "f5": ["w", "c", "b"],
            "f6": ["w", "d", "c"],
            "f7": ["w", "a", "d"],
        }
    )


def island_map() -> PlanarMap:
    """A 3-face mainland and a 3-face island separated by a sea face.

    The sea has two coastlines, so it carries two walks; removing it from the
    dual disconnects mainland from island.
    """
    return PlanarMap.from_walks(
        {
            "m0": ["a", "b", "d"],
            "m1": ["b", "c", "d"],
            "m2": ["c", "a", "d"],
            "i0": ["x", "y", "w"],
            "i1": ["y", "z", "w"],
            "i2": ["z", "x", "w"],
            "sea": [["a", "c", "b"], ["x", "z", "y"]],
        }
    )


def nested_island_map() -> PlanarMap:
    """Two nesting levels: an island face that itself contains an island."""
    return PlanarMap.from_walks(
        {
            "m0": ["a", "b", "d"],
            "m1": ["b", "c", "d"],
            "m2": ["c", "a", "d"],
            # Outer island; face i0 is the inner sea.
            "i0": [["x", "y", "w"], ["p", "r", "q"]],
            "i1": ["y", "z", "w"],
            "i2": ["z", "x", "w"],
            "sea": [["a", "c", "b"], ["x", "z", "y"]],
            # Inner island inside i0.
            "j0": ["p", "q", "s"],
            "j1": ["q", "r", "s"],
            "j2": ["r", "p", "s"],
        }
    )


CORPUS = {
    "digon": digon_sphere,
    "tetrahedron": tetrahedron,
    "cube": cube_surface,
    "square_pyramid": square_pyramid,
    "octahedron": octahedron,
    "island": island_map,
    "nested_island": nested_island_map,
}
