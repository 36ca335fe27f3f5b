import numpy as np
import pytest

from cogmap.maps import build_map
from cogmap.synthetic import random_map


@pytest.fixture
def chain_map():
    """quality of system specifications -> comprehension -> ses."""
    return build_map("chain", {
        ("quality_of_system_specifications", "comprehension_of_software_specifications"): 2,
        ("comprehension_of_software_specifications", "ses"): 3,
    })


def random_maps(n, root_seed=0, size_range=(8, 12)):
    return [random_map(np.random.default_rng([root_seed, i]), f"r{i:04d}", size_range)
            for i in range(n)]
