import json
import os

from fibtree.core import (
    LN_GOLDEN,
    admissible_patterns,
    entropy,
    entropy_empirical,
    full_spec,
    golden_mean_spec,
    spec_from_patterns,
    spec_from_vertex_matrices,
)
from fibtree.schemas import CnnTemplate
from fibtree.utils import logger, setup_logging

MAX_HEIGHT = 20


def convergence_table(spec, name: str):
    """两个有限高度估计量随 n 逼近精确熵的过程"""
    exact = entropy(spec).value
    logger.info(f"[{name}] exact entropy {exact:.10f} (ln g = {LN_GOLDEN:.10f})")

    rows = []
    for n in range(3, MAX_HEIGHT + 1):
        first, second = entropy_empirical(spec, n)
        rows.append({"n": n, "first": first, "second": second})
        if n % 4 == 0:
            logger.info(
                f"[{name}] n={n:2d}: {first:.8f} ({first - exact:+.2e}), "
                f"{second:.8f} ({second - exact:+.2e})"
            )
    return {"name": name, "exact": exact, "rows": rows}


def main():
    setup_logging()

    specs = {
        "golden-mean": golden_mean_spec(),
        "full-2": full_spec(2),
        # 三符号顶点约束：A1 非对称、A2 含零列
        "vertex-3": spec_from_vertex_matrices(
            ["1", "2", "3"],
            [[1, 1, 0], [0, 1, 1], [1, 0, 1]],
            [[0, 1, 1], [1, 1, 0], [1, 1, 1]],
        ),
        "cnn-[3,2]": spec_from_patterns(
            admissible_patterns(CnnTemplate(a=2, a1=-1, a2=2, z=1))
        ),
    }

    results = [convergence_table(spec, name) for name, spec in specs.items()]

    os.makedirs("data/convergence", exist_ok=True)
    path = "data/convergence/entropy_convergence.json"
    with open(path, "w", encoding="utf-8") as f:
        json.dump(results, f, indent=2, ensure_ascii=False)
    logger.info(f"Saved {len(results)} convergence tables to {path}")


if __name__ == "__main__":
    main()
