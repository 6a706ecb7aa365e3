import functools
import os
from pathlib import Path

from hypothesis import settings

from virtres.toricdata import Fan, diagonal_embedding, embedding, product_fan, projective_space
from virtres.virtualver import run_pipeline

settings.register_profile("default", deadline=None, max_examples=50)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

DATA = Path(__file__).resolve().parent.parent / "data"


def p112_fan():
    return Fan(2, [(1, 1), (-1, 1), (0, -1)], [[0, 1], [1, 2], [0, 2]])


def torsion_fan():
    """Cl = Z + Z/3: its diagonal has a pushout group with torsion."""
    return Fan(2, [(2, -1), (-1, 2), (-1, -1)], [[0, 1], [1, 2], [0, 2]])


def battery():
    P1 = projective_space(1)
    return {
        "P1": diagonal_embedding(P1),
        "P2": diagonal_embedding(projective_space(2)),
        "P1xP1": diagonal_embedding(product_fan(P1, P1)),
        "P112": diagonal_embedding(p112_fan()),
        "veronese": embedding(projective_space(2), 1, [[1, 2]]),
    }


@functools.lru_cache(maxsize=None)
def pipeline(name, oracle_bound=6):
    e = battery()[name] if name in battery() else diagonal_embedding(projective_space(int(name[1:])))
    return run_pipeline(e, oracle_bound=oracle_bound)
