import itertools
import json
import os
from collections import Counter

from fibtree.core import (
    dichotomy_entropy,
    ordering_of,
    realizable,
    region_census,
)
from fibtree.schemas import LocalPatternSet, RegionIndex
from fibtree.utils import logger, setup_logging


def pattern_set_of(triples) -> LocalPatternSet:
    return LocalPatternSet.from_children(
        frozenset((c1, c2) for s, c1, c2 in triples if s > 0),
        frozenset((c1, c2) for s, c1, c2 in triples if s < 0),
    )


def save_census(summary, filename: str):
    """保存统计结果到 data/census"""
    os.makedirs("data/census", exist_ok=True)
    path = f"data/census/{filename}"
    with open(path, "w", encoding="utf-8") as f:
        json.dump(summary, f, indent=2, ensure_ascii=False)
    logger.info(f"Saved census to {path}")


def main():
    setup_logging()

    span, step = (-6.0, 6.0), 0.125
    all_families = set()
    summary = []

    # 8 种符号/大小排序，各取一个代表
    for s1, s2 in itertools.product((1, -1), repeat=2):
        for m1, m2 in ((1.0, 2.0), (2.0, 1.0)):
            a1, a2 = s1 * m1, s2 * m2
            census = region_census(a1, a2, span, span, step)

            unrealizable = 0
            for families in census.values():
                all_families |= families
                unrealizable += sum(not realizable(pattern_set_of(t)).realizable for t in families)

            positive = [
                pq for pq in census if dichotomy_entropy(RegionIndex(p=pq[0], q=pq[1])) > 0
            ]
            logger.info(
                f"[a1={a1:+}, a2={a2:+}] ordering {ordering_of(a1, a2)}: "
                f"{len(census)} regions, {sum(map(len, census.values()))} families, "
                f"{len(positive)} regions with positive entropy, {unrealizable} unrealizable"
            )
            summary.append(
                {
                    "a1": a1,
                    "a2": a2,
                    "regions": [list(pq) for pq in census],
                    "families_per_region": {f"{p},{q}": len(f) for (p, q), f in census.items()},
                    "positive_entropy_regions": [list(pq) for pq in positive],
                }
            )

    sizes = Counter(len(t) for t in all_families)
    logger.info(f"Distinct pattern-set families over all orderings: {len(all_families)}")
    logger.info(f"Family size distribution: {dict(sorted(sizes.items()))}")
    save_census(
        {"orderings": summary, "distinct_families": len(all_families)}, "region_census.json"
    )


if __name__ == "__main__":
    main()
