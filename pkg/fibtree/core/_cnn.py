"""
Fibonacci 格点上最近邻 CNN 的 mosaic 图样：容许局部图样、线性可分性、区域划分、
熵的二分律与临界 W 曲线、相图扫描。

平衡点方程 x_w = a·y_w + a1·y_{w1} + a2·y_{w2} + z，mosaic 解要求 |x_w| > 1：
    y_w = +1  ⇔  a - 1 + z > -(a1·y_{w1} + a2·y_{w2})
    y_w = -1  ⇔  a - 1 - z >  a1·y_{w1} + a2·y_{w2}
"""

import csv
import functools
import math
from pathlib import Path
from typing import Dict, FrozenSet, List, Mapping, Optional, Tuple

from tqdm import tqdm

from ..configs import env_config
from ..schemas import (
    V2,
    CnnTemplate,
    Degree1Discrepancy,
    LocalPatternSet,
    MarkovFibSpec,
    NodeWord,
    PhaseDiagram,
    PhaseDiagramRow,
    Provenance,
    Realizability,
    RegionIndex,
    RootType,
    SeparationWitness,
    SkippedCell,
)
from ..utils import logger
from ._entropy import LN_GOLDEN, entropy
from ._errors import EmptyShift, OnBoundary, RouteDisagreement
from ._fib_lattice import is_valid_node, node_degree
from ._shift_core import raw_spec, viability_prune

ChildPair = Tuple[int, int]
SignTriple = Tuple[int, int, int]

CNN_ALPHABET: Tuple[str, str] = ("+", "-")
ROUTE_TOL = 1e-10

# 覆盖单位正方形四个顶点全部可分情形的法向量族
_CANDIDATE_NORMALS: Tuple[Tuple[int, int], ...] = (
    (1, 0), (-1, 0), (0, 1), (0, -1),
    (1, 1), (1, -1), (-1, 1), (-1, -1),
    (1, 2), (1, -2), (-1, 2), (-1, -2),
    (2, 1), (2, -1), (-2, 1), (-2, -1),
)


def output_function(s: float) -> float:
    """f(s) = ½(|s+1| - |s-1|)"""
    return 0.5 * (abs(s + 1) - abs(s - 1))


def _sign_index(s: int) -> int:
    return 0 if s > 0 else 1


def _term(coef: int, name: str) -> str:
    return f"{'+' if coef > 0 else '-'}{name}"


def _line_name(parent: int, v: ChildPair) -> str:
    """边界线 a-1±z = ±a1±a2 的文字标识"""
    if parent > 0:
        rhs = _term(-v[0], "a1") + _term(-v[1], "a2")
        lhs = "a-1+z"
    else:
        rhs = _term(v[0], "a1") + _term(v[1], "a2")
        lhs = "a-1-z"
    return f"{lhs} = {rhs.lstrip('+')}"


# =========================================================================
# 容许图样与区域 (Admissible patterns / regions)
# =========================================================================


def admissible_patterns(t: CnnTemplate, tol: Optional[float] = None) -> LocalPatternSet:
    """
    B₊ = {(+; v) : a-1+z > -(a1·v1 + a2·v2)}，B₋ = {(-; v) : a-1-z > a1·v1 + a2·v2}。
    参数落在 10 条边界线之一 (容差 tol) 上时抛出 OnBoundary。
    """
    tol = tol if tol is not None else env_config.boundary_tol
    up, down = t.a - 1 + t.z, t.a - 1 - t.z

    plus, minus = set(), set()
    for v in V2:
        s = t.a1 * v[0] + t.a2 * v[1]
        gap_plus, gap_minus = up + s, down - s
        if abs(gap_plus) <= tol:
            raise OnBoundary(_line_name(1, v), gap_plus)
        if abs(gap_minus) <= tol:
            raise OnBoundary(_line_name(-1, v), gap_minus)
        if gap_plus > 0:
            plus.add(v)
        if gap_minus > 0:
            minus.add(v)

    return LocalPatternSet.from_children(frozenset(plus), frozenset(minus))


def region_index(t: CnnTemplate, tol: Optional[float] = None) -> RegionIndex:
    return admissible_patterns(t, tol).region


def ordering_of(a1: float, a2: float) -> Tuple[int, int, bool]:
    """(a1, a2) 所属的 8 种符号/大小排序之一"""
    return (1 if a1 >= 0 else -1, 1 if a2 >= 0 else -1, abs(a1) > abs(a2))


# =========================================================================
# 线性可分性与可实现性 (Separation / realizability)
# =========================================================================


def is_linearly_separable(
    U: FrozenSet[ChildPair] | set,
) -> Tuple[bool, Optional[SeparationWitness]]:
    """
    是否存在 g(v) = c·v + c0 在 U 上为正、在补集上为负。∅ 与 V² 视为不可分。
    """
    U = frozenset(U)
    complement = [v for v in V2 if v not in U]
    if not U or not complement:
        return False, None

    for c1, c2 in _CANDIDATE_NORMALS:
        lo = min(c1 * v1 + c2 * v2 for v1, v2 in U)
        hi = max(c1 * v1 + c2 * v2 for v1, v2 in complement)
        if hi < lo:
            return True, SeparationWitness(c1=c1, c2=c2, offset=-(lo + hi) / 2)
    return False, None


def realizable(B: LocalPatternSet) -> Realizability:
    """
    (Inv1) -B̃₊ ⊆ B̃₋ 且 B̃₋ 可分；或 (Inv2) -B̃₋ ⊆ B̃₊ 且 B̃₊ 可分。
    """
    plus, minus = B.plus_children, B.minus_children

    def negate(S: FrozenSet[ChildPair]) -> FrozenSet[ChildPair]:
        return frozenset((-v1, -v2) for v1, v2 in S)

    if negate(plus) <= minus and is_linearly_separable(minus)[0]:
        return Realizability(realizable=True, condition="Inv1")
    if negate(minus) <= plus and is_linearly_separable(plus)[0]:
        return Realizability(realizable=True, condition="Inv2")
    return Realizability(realizable=False)


# =========================================================================
# 图样集合 -> 树移位 (Pattern set to tree-shift)
# =========================================================================


def _raw_pattern_spec(B: LocalPatternSet) -> MarkovFibSpec:
    triples = {
        (_sign_index(p), _sign_index(c1), _sign_index(c2)) for p, c1, c2 in B.triples()
    }
    return raw_spec(
        CNN_ALPHABET, triples, Provenance(kind="patterns", alphabet=CNN_ALPHABET)
    )


def spec_from_patterns(B: LocalPatternSet) -> MarkovFibSpec:
    """字母表 {+, -}，T 即 B；D 按完整二叉树可行性的限制语义导出，随后剪枝"""
    return viability_prune(_raw_pattern_spec(B))[0]


@functools.lru_cache(maxsize=512)
def _machinery_entropy(triples: FrozenSet[SignTriple]) -> float:
    B = LocalPatternSet.from_children(
        frozenset((c1, c2) for p, c1, c2 in triples if p > 0),
        frozenset((c1, c2) for p, c1, c2 in triples if p < 0),
    )
    try:
        return entropy(spec_from_patterns(B)).value
    except EmptyShift:
        return 0.0


def dichotomy_entropy(region: RegionIndex) -> float:
    """min{p,q} = 0 或 max{p,q} = 1 时熵为 0，否则为 ln g"""
    if min(region.p, region.q) == 0 or max(region.p, region.q) == 1:
        return 0.0
    return LN_GOLDEN


def cnn_entropy_routes(t: CnnTemplate, tol: Optional[float] = None) -> Tuple[float, float]:
    """(公式路线, 通用机制路线)"""
    B = admissible_patterns(t, tol)
    return dichotomy_entropy(B.region), _machinery_entropy(B.triples())


def cnn_entropy(t: CnnTemplate, tol: Optional[float] = None) -> float:
    """
    输出空间的拓扑熵。返回通用机制 (entropy ∘ spec_from_patterns) 的结果，
    并要求与二分律公式一致。
    """
    formula, machinery = cnn_entropy_routes(t, tol)
    if abs(formula - machinery) > ROUTE_TOL:
        logger.error(f"Entropy routes disagree for {t.as_tuple()}: {formula} vs {machinery}")
        raise RouteDisagreement(formula, machinery, t.as_tuple())
    return machinery


def critical_a(a1: float, a2: float, z: float) -> float:
    """临界曲线 a - 1 = ||z| - m| - M，m / M 为 |a1|, |a2| 的较小 / 较大者"""
    m, big = sorted((abs(a1), abs(a2)))
    return 1 + abs(abs(z) - m) - big


# =========================================================================
# 相图 (Phase diagram)
# =========================================================================


def _grid(lo: float, hi: float, step: float) -> List[float]:
    if step <= 0:
        raise ValueError(f"step must be positive, got {step}")
    if hi < lo:
        raise ValueError(f"range [{lo}, {hi}] is not well ordered")
    count = math.floor((hi - lo) / step + 1e-12)
    return [lo + i * step for i in range(count + 1)]


def phase_diagram(
    a1: float,
    a2: float,
    a_range: Tuple[float, float],
    z_range: Tuple[float, float],
    step: float,
    tol: Optional[float] = None,
    show_progress: bool = False,
) -> PhaseDiagram:
    """
    在 (a, z) 网格上逐格计算区域与熵。z 为外层、a 为内层；落在边界线上的格点跳过并记录。
    """
    a_values = _grid(*a_range, step)
    z_values = _grid(*z_range, step)

    diagram = PhaseDiagram(a1=a1, a2=a2)
    for z in tqdm(z_values, desc="phase diagram", disable=not show_progress):
        crit = critical_a(a1, a2, z)
        for a in a_values:
            t = CnnTemplate(a=a, a1=a1, a2=a2, z=z)
            try:
                region = region_index(t, tol)
                h = cnn_entropy(t, tol)
            except OnBoundary as e:
                logger.debug(f"Skipping boundary cell a={a}, z={z} on {e.line}")
                diagram.skipped.append(SkippedCell(a=a, z=z, line=e.line))
                continue
            diagram.rows.append(
                PhaseDiagramRow(
                    a=a, z=z, p=region.p, q=region.q, entropy=h, critical_distance=a - crit
                )
            )

    logger.info(
        f"Phase diagram: {len(diagram.rows)} cells, {len(diagram.regions())} regions, "
        f"{len(diagram.skipped)} boundary cells skipped"
    )
    return diagram


def region_census(
    a1: float,
    a2: float,
    a_range: Tuple[float, float],
    z_range: Tuple[float, float],
    step: float,
    tol: Optional[float] = None,
) -> Dict[Tuple[int, int], FrozenSet[FrozenSet[SignTriple]]]:
    """网格上实现的 (p, q) 以及每个区域对应的图样集合族"""
    families: Dict[Tuple[int, int], set] = {}
    for z in _grid(*z_range, step):
        for a in _grid(*a_range, step):
            try:
                B = admissible_patterns(CnnTemplate(a=a, a1=a1, a2=a2, z=z), tol)
            except OnBoundary:
                continue
            families.setdefault(B.region.as_tuple(), set()).add(B.triples())
    return {pq: frozenset(fams) for pq, fams in sorted(families.items())}


CSV_COLUMNS = ("a", "z", "p", "q", "entropy_nats", "critical_distance")


def _fmt(x: float) -> str:
    return format(x, ".12g")


def write_phase_csv(diagram: PhaseDiagram, path: str | Path) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="") as f:
        writer = csv.writer(f, lineterminator="\n")
        writer.writerow(CSV_COLUMNS)
        for r in diagram.rows:
            writer.writerow(
                [_fmt(r.a), _fmt(r.z), r.p, r.q, _fmt(r.entropy), _fmt(r.critical_distance)]
            )
    logger.info(f"Wrote {len(diagram.rows)} rows to {path}")
    return path


# =========================================================================
# Mosaic 图样校验 (Mosaic verification)
# =========================================================================


def _intrinsic_degree1(t: CnnTemplate, parent: int, child: int) -> bool:
    """度为 1 的节点只有 a1 一项反馈"""
    if parent > 0:
        return t.a - 1 + t.z > -t.a1 * child
    return t.a - 1 - t.z > t.a1 * child


def _restriction_degree1(B: LocalPatternSet) -> FrozenSet[Tuple[int, int]]:
    pairs = _raw_pattern_spec(B).pairs
    signs = (1, -1)
    return frozenset((signs[i], signs[j]) for i, j in pairs)


def degree1_discrepancies(
    t: CnnTemplate, tol: Optional[float] = None
) -> List[Degree1Discrepancy]:
    """限制语义与内禀不等式在度为 1 的节点上给出不同结论的 (父, 子) 组合"""
    allowed = _restriction_degree1(admissible_patterns(t, tol))
    out = []
    for parent in (1, -1):
        for child in (1, -1):
            restriction = (parent, child) in allowed
            intrinsic = _intrinsic_degree1(t, parent, child)
            if restriction != intrinsic:
                out.append(
                    Degree1Discrepancy(
                        parent=parent, child=child, restriction=restriction, intrinsic=intrinsic
                    )
                )
    return out


def verify_mosaic_pattern(
    t: CnnTemplate,
    pattern: Mapping[NodeWord, int],
    intrinsic_degree1: bool = False,
    tol: Optional[float] = None,
) -> Tuple[bool, List[NodeWord]]:
    """
    检查 Epsilon 切片上的 ±1 着色是否为 mosaic 图样。只检查孩子全部落在 pattern 中的节点：
    度为 2 的节点用 B，度为 1 的节点默认用导出关系 D (intrinsic_degree1=True 时改用内禀不等式)。
    返回 (是否通过, 违反约束的节点)。
    """
    for word, value in pattern.items():
        is_valid_node(word)
        if value not in (1, -1):
            raise ValueError(f"node {word!r} has output {value}, expected +1 or -1")

    B = admissible_patterns(t, tol)
    triples = B.triples()
    pairs = _restriction_degree1(B)

    violated: List[NodeWord] = []
    for word in sorted(pattern, key=lambda w: (len(w), w)):
        if not is_valid_node(word):
            violated.append(word)
            continue
        parent = pattern[word]
        if node_degree(word, RootType.EPSILON) == 2:
            kids = (word + "1", word + "2")
            if not all(k in pattern for k in kids):
                continue
            if (parent, pattern[kids[0]], pattern[kids[1]]) not in triples:
                violated.append(word)
        else:
            kid = word + "1"
            if kid not in pattern:
                continue
            child = pattern[kid]
            ok = (
                _intrinsic_degree1(t, parent, child)
                if intrinsic_degree1
                else (parent, child) in pairs
            )
            if not ok:
                violated.append(word)

    return not violated, violated

