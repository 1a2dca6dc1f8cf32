"""
Fibonacci-Cayley 格点 Σ_A 及两个独立的暴力着色计数器。

Σ_A 由黄金分割图 (邻接矩阵 [[1,1],[1,0]]) 上的有限游走组成，即不含因子 "22" 的 {1,2} 词。
两个计数器只用于校验闭式递推，不用于生产计数。
"""

import itertools
from typing import List, Optional

import networkx as nx

from ..configs import env_config
from ..schemas import LatticeSlice, MarkovFibSpec, NodeWord, RootType
from ..utils import logger
from ._errors import DepthCap, InvalidLetter, InvalidRootColor, WorkCap


def is_valid_node(word: str) -> bool:
    """word 是否为 Σ_A 中的节点 (不含因子 22)"""
    for letter in word:
        if letter not in ("1", "2"):
            raise InvalidLetter(letter, word)
    return "22" not in word


def _check_depth(n: int, depth_cap: Optional[int]) -> int:
    cap = depth_cap if depth_cap is not None else env_config.depth_cap
    if n > cap:
        logger.warning(f"Requested height {n} exceeds depth cap {cap}")
        raise DepthCap(n, cap)
    return cap


def _check_root_color(spec: MarkovFibSpec, root_color: int) -> None:
    if not 0 <= root_color < spec.k:
        raise InvalidRootColor(root_color, spec.k)


def _children(absolute: str) -> List[str]:
    """绝对地址的孩子方向：总有 1，只有不以 2 结尾时才有 2"""
    return ["1"] if absolute.endswith("2") else ["1", "2"]


def level_nodes(n: int, depth_cap: Optional[int] = None) -> List[NodeWord]:
    """长度恰为 n 的全部合法节点，按字典序"""
    if n < 0:
        raise ValueError(f"level must be nonnegative, got {n}")
    _check_depth(n, depth_cap)

    level = [""]
    for _ in range(n):
        level = [w + d for w in level for d in _children(w)]
    return sorted(level)


def node_degree(word: NodeWord, root_type: RootType = RootType.EPSILON) -> int:
    """节点在无限格点中的孩子个数"""
    return len(_children(RootType(root_type).context + word))


def support(
    root_type: RootType, n: int, depth_cap: Optional[int] = None
) -> LatticeSlice:
    """
    高度为 n 的 n-block 支撑。

    Epsilon:    Δ_{n-1} ∩ Σ_A
    TwoRooted:  {y : 2y ∈ Σ_A, |y| <= n-1}，根只有方向 1 的孩子
    """
    if n < 1:
        raise ValueError(f"slice height must be >= 1, got {n}")
    root_type = RootType(root_type)
    _check_depth(n, depth_cap)

    context = root_type.context
    nodes: List[NodeWord] = [""]
    frontier = [""]
    for _ in range(n - 1):
        frontier = [w + d for w in frontier for d in _children(context + w)]
        nodes.extend(frontier)

    return LatticeSlice(
        root_type=root_type,
        height=n,
        nodes=tuple(sorted(nodes, key=lambda w: (len(w), w))),
    )


def slice_levels(
    root_type: RootType, n: int, depth_cap: Optional[int] = None
) -> List[List[NodeWord]]:
    return support(root_type, n, depth_cap).levels()


def slice_tree(
    root_type: RootType, n: int, depth_cap: Optional[int] = None
) -> nx.DiGraph:
    """把切片物化成有向树，边属性 direction 为孩子方向 (1 或 2)"""
    sl = support(root_type, n, depth_cap)
    tree = nx.DiGraph()
    tree.add_node("")
    for w in sl.nodes:
        if w:
            tree.add_edge(w[:-1], w, direction=int(w[-1]))
    return tree


# =========================================================================
# 暴力计数器 (Oracles)
# =========================================================================


def enumerate_colorings_naive(
    spec: MarkovFibSpec,
    root_type: RootType,
    n: int,
    root_color: int,
    work_cap: Optional[int] = None,
) -> int:
    """
    穷举切片上所有着色并逐一检查约束：度为 2 的内部节点看 T，度为 1 的看 D。
    """
    _check_root_color(spec, root_color)
    sl = support(root_type, n)
    k = spec.k
    cap = work_cap if work_cap is not None else env_config.work_cap
    candidates = k ** len(sl)
    if candidates > cap:
        logger.warning(f"Naive enumeration needs {candidates} candidates (cap {cap})")
        raise WorkCap(candidates, cap)

    index = {w: i for i, w in enumerate(sl.nodes)}
    members = set(sl.nodes)

    # 每个内部节点的约束：(父, 孩子1, 孩子2 或 None)
    checks = []
    for w in sl.nodes:
        c1 = w + "1"
        if c1 not in members:
            continue
        c2 = w + "2"
        checks.append((index[w], index[c1], index[c2] if c2 in members else None))

    triples, pairs = spec.triples, spec.pairs
    count = 0
    for rest in itertools.product(range(k), repeat=len(sl) - 1):
        colors = (root_color, *rest)
        ok = True
        for p, c1, c2 in checks:
            if c2 is None:
                if (colors[p], colors[c1]) not in pairs:
                    ok = False
                    break
            elif (colors[p], colors[c1], colors[c2]) not in triples:
                ok = False
                break
        if ok:
            count += 1
    return count


def count_colorings_dp(
    spec: MarkovFibSpec,
    root_type: RootType,
    n: int,
    root_color: int,
    depth_cap: Optional[int] = None,
) -> int:
    """
    在物化的切片树上自底向上动态规划计数，与 shift_core 的闭式递推相互独立。
    """
    _check_root_color(spec, root_color)
    tree = slice_tree(root_type, n, depth_cap)
    k = spec.k

    by_parent2 = [[] for _ in range(k)]
    for i, j1, j2 in spec.triples:
        by_parent2[i].append((j1, j2))
    by_parent1 = [[] for _ in range(k)]
    for i, j in spec.pairs:
        by_parent1[i].append(j)

    counts = {}
    for node in nx.dfs_postorder_nodes(tree, source=""):
        kids = {tree.edges[node, c]["direction"]: c for c in tree.successors(node)}
        if not kids:
            counts[node] = [1] * k
        elif 2 in kids:
            left, right = counts[kids[1]], counts[kids[2]]
            counts[node] = [sum(left[j1] * right[j2] for j1, j2 in by_parent2[c]) for c in range(k)]
        else:
            only = counts[kids[1]]
            counts[node] = [sum(only[j] for j in by_parent1[c]) for c in range(k)]
        # 子树结果用完即丢，避免深切片占用过多内存
        for c in kids.values():
            del counts[c]

    return counts[""][root_color]
