import math

import numpy as np
import pytest

from qcspec.errors import DegenerateTriangleError, InvalidParameterError
from qcspec.maps import Ellipse, Epicycloid, Identity, RosePetal, jacobian
from qcspec.mesh import Mesh, pushforward_mesh, rectangle_mesh, unit_disc_mesh


def test_disc_mesh_counts():
    m = unit_disc_mesh(2)
    assert m.num_vertices == 19  # 1 + 6 + 12
    assert m.num_triangles == 24
    for rings in (2, 3, 5, 8):
        m = unit_disc_mesh(rings)
        assert m.num_vertices == 1 + 3 * rings * (rings + 1)
        assert m.num_triangles == 6 * rings * rings
        assert int(m.boundary.sum()) == 6 * rings


def test_disc_mesh_orientation_and_manifoldness():
    m = unit_disc_mesh(6)
    assert np.all(m.signed_areas() > 0)
    counts = m.edge_counts()
    assert set(counts.values()) <= {1, 2}
    assert sum(1 for c in counts.values() if c == 1) == 6 * 6
    m.validate()


def test_disc_mesh_area_is_inscribed_polygon_area():
    # the union of triangles is the regular 6m-gon: area 3m sin(pi/(3m))
    for rings in (2, 4, 8, 16):
        m = unit_disc_mesh(rings)
        polygon = 3 * rings * math.sin(math.pi / (3 * rings))
        assert m.total_area() == pytest.approx(polygon, abs=1e-12)
        assert m.total_area() < math.pi


def test_disc_mesh_area_increases_with_refinement():
    areas = [unit_disc_mesh(r).total_area() for r in (2, 4, 8, 16, 32)]
    assert all(a1 < a2 for a1, a2 in zip(areas, areas[1:]))


def test_disc_mesh_rejects_small_rings():
    with pytest.raises(InvalidParameterError):
        unit_disc_mesh(1)


def test_rectangle_mesh():
    m = rectangle_mesh(1.0, 1.0, 2, 2)
    assert m.num_vertices == 9
    assert m.num_triangles == 8
    assert m.total_area() == pytest.approx(1.0, abs=1e-15)
    assert int(m.boundary.sum()) == 8  # 2 (nx + ny)
    m.validate()
    m = rectangle_mesh(2.5, 0.5, 5, 3)
    assert m.total_area() == pytest.approx(1.25, abs=1e-12)
    assert int(m.boundary.sum()) == 2 * (5 + 3)
    with pytest.raises(InvalidParameterError):
        rectangle_mesh(-1.0, 1.0, 2, 2)
    with pytest.raises(InvalidParameterError):
        rectangle_mesh(1.0, 1.0, 1, 2)


def test_pushforward_identity_is_noop():
    m = unit_disc_mesh(4)
    p = pushforward_mesh(m, Identity())
    assert np.allclose(p.vertices, m.vertices)
    assert np.array_equal(p.triangles, m.triangles)
    assert np.array_equal(p.boundary, m.boundary)


def test_pushforward_ellipse_preserves_polygon_area():
    # the ellipse map is linear with unit determinant, so areas are exact
    m = unit_disc_mesh(8)
    p = pushforward_mesh(m, Ellipse(a=0.5))
    assert p.total_area() == pytest.approx(m.total_area(), rel=1e-13)


def test_pushforward_rose_petal_area_converges():
    a = 0.9
    target = math.pi * a * a / 2
    areas = [pushforward_mesh(unit_disc_mesh(r), RosePetal(a=a)).total_area() for r in (8, 16, 32)]
    errors = [abs(x - target) for x in areas]
    assert errors[2] < errors[1] < errors[0]
    assert errors[2] < 4 * target / 32**2


def test_pushforward_preserves_structure():
    m = unit_disc_mesh(6)
    p = pushforward_mesh(m, Epicycloid(A=0.2, B=0.05, n=3))
    assert p.num_vertices == m.num_vertices
    assert p.num_triangles == m.num_triangles
    assert int(p.boundary.sum()) == int(m.boundary.sum())
    p.validate()


@pytest.mark.parametrize("family", [RosePetal(a=0.9), Epicycloid(A=0.2, B=0.05, n=3)], ids=str)
def test_pushforward_area_matches_jacobian_quadrature(family):
    # image polygon area ~ sum of J(centroid) * source triangle area, to O(h^2)
    diffs = []
    for rings in (16, 32):
        m = unit_disc_mesh(rings)
        p = pushforward_mesh(m, family)
        cent = m.vertices[m.triangles].mean(axis=1)
        quad = float(np.sum(jacobian(family, cent[:, 0] + 1j * cent[:, 1]) * m.signed_areas()))
        diffs.append(abs(p.total_area() - quad))
    assert diffs[0] < 1e-3
    assert diffs[1] < diffs[0] / 3


def test_pushforward_rejects_degenerate_image():
    verts = np.array([[0.0, 0.0], [1.0, 0.0], [1.0, 0.0]])
    tris = np.array([[0, 1, 2]])
    flags = np.array([True, True, True])
    broken = Mesh(vertices=verts, triangles=tris, boundary=flags)
    with pytest.raises(DegenerateTriangleError):
        pushforward_mesh(broken, Identity())


def test_validate_flags_mismatch():
    m = unit_disc_mesh(3)
    m.boundary[0] = True  # center is not on the rim
    with pytest.raises(InvalidParameterError):
        m.validate()


def test_text_roundtrip(tmp_path):
    m = pushforward_mesh(unit_disc_mesh(5), RosePetal(a=0.7))
    path = tmp_path / "mesh.txt"
    m.save_text(path)
    back = Mesh.from_text(path.read_text())
    assert np.array_equal(back.vertices, m.vertices)
    assert np.array_equal(back.triangles, m.triangles)
    assert np.array_equal(back.boundary, m.boundary)
    first = path.read_text().splitlines()[0]
    assert first == f"{m.num_vertices} {m.num_triangles}"
