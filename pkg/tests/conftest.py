import numpy as np
import pytest

from app import create_app
from app.config import TestingConfig
from app.models.settings import ApproximationSettings
from app.services.bodies.analytic import Ball, Box
from app.services.bodies.polytope_body import PolytopeBody, random_polytope
from app.services.geom.hull import convex_hull


@pytest.fixture
def app(tmp_path, monkeypatch):
    # Logy testů nepatří do adresáře projektu
    monkeypatch.setenv("CAPCOVER_LOG_DIR", str(tmp_path / "logs"))
    for key in ("CAPCOVER_THREADS", "CAPCOVER_BETA", "CAPCOVER_SIGMA", "CAPCOVER_POLAR_C", "CAPCOVER_STRICT"):
        monkeypatch.delenv(key, raising=False)

    app = create_app("testing")

    with app.app_context():
        yield app


@pytest.fixture
def client(app):
    return app.test_client()


@pytest.fixture
def runner(app):
    return app.test_cli_runner()


@pytest.fixture
def settings():
    """Malé rozpočty vzorkování stejné jako TestingConfig."""
    return ApproximationSettings.from_mapping(
        {key: getattr(TestingConfig, key) for key in dir(TestingConfig) if key.startswith("CAPCOVER_")}
    )


@pytest.fixture
def square():
    return convex_hull(np.array([[-1.0, -1.0], [1.0, -1.0], [1.0, 1.0], [-1.0, 1.0]]))


@pytest.fixture
def cube():
    corners = np.array([[x, y, z] for x in (-1.0, 1.0) for y in (-1.0, 1.0) for z in (-1.0, 1.0)])
    return convex_hull(corners)


@pytest.fixture
def disk():
    return Ball(1.0, dim=2, body_id="disk")


@pytest.fixture
def ball3():
    return Ball(1.0, dim=3, body_id="ball3")


@pytest.fixture
def cube_body(cube):
    return PolytopeBody(cube, "cube")


@pytest.fixture
def square_body(square):
    return PolytopeBody(square, "square")


@pytest.fixture
def box2():
    return Box([1.0, 1.0], body_id="box2")


@pytest.fixture
def random_body():
    return random_polytope(30, 3, seed=1, body_id="random30")
