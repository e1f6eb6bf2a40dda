from __future__ import annotations

import sys
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


@pytest.fixture(scope="session", autouse=True)
def warm_kernels():
    """Trigger JIT compilation once so timed checks measure the algorithms."""
    from subwl.generators import circulant
    from subwl.gnnak import bundle_for, forward
    from subwl.oracles import count_all, graph_properties
    from subwl.wl import subgraph_wl, wl1

    g = circulant(6, [1])
    wl1(g)
    subgraph_wl(g, 1)
    subgraph_wl(g, 1, hash_mode="exact")
    forward(g, bundle_for([g]), mode="ak+")
    count_all(g)
    graph_properties(g)


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in mod.RESULTS.values():
        terminalreporter.write_line(line)
