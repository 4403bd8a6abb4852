from __future__ import annotations

import pytest

import polyiamond_bound as pb


@pytest.fixture(scope="session")
def geometry():
    return pb.default_geometry()


@pytest.fixture(scope="session")
def t_tri12():
    return pb.count_fixed(12, pb.TRIANGLE)


@pytest.fixture(scope="session")
def t_hex14():
    return pb.count_fixed(14, pb.HEX)


@pytest.fixture(scope="session")
def marked12(geometry):
    return {i: pb.count_marked(geometry[i], 12) for i in ("g", "h", "k", "g'")}


@pytest.fixture(scope="session")
def hat1000():
    return pb.hat_sequences(1000)
