"""
约束规格与 γ 计数的精确非线性递推。

规范形式是三元组集合 T ⊆ A³；顶点矩阵对 (A1, A2) 只是其中一种构造方式。
度为 1 的关系 D 总由 T 投影得到：缺失的方向 2 孩子必须能放一个可行的填充符号。
"""

from typing import Dict, Iterator, List, Optional, Sequence, Set, Tuple

import numpy as np

from ..schemas import GammaTable, MarkovFibSpec, PruneReport, Provenance
from ..utils import logger
from ._errors import BadMatrix, EmptyShift

Triple = Tuple[int, int, int]
Pair = Tuple[int, int]


# =========================================================================
# 可行性 (Viability)
# =========================================================================


def full_binary_viable(triples: Set[Triple] | frozenset, k: int) -> Set[int]:
    """
    能在完整二叉树上无限延伸的符号：W(i) ⇔ ∃(i;j1,j2)∈T, W(j1) ∧ W(j2) 的最大不动点。
    """
    viable = set(range(k))
    while True:
        nxt = {i for i, j1, j2 in triples if j1 in viable and j2 in viable}
        if nxt == viable:
            return viable
        viable = nxt


def derive_degree1(triples: Set[Triple] | frozenset, viable_deg2: Set[int]) -> frozenset:
    """D = {(i, j1) : ∃ j2 可行填充, (i; j1, j2) ∈ T}"""
    return frozenset((i, j1) for i, j1, j2 in triples if j2 in viable_deg2)


def viability_prune(spec: MarkovFibSpec) -> Tuple[MarkovFibSpec, PruneReport]:
    """
    删除不能在 Fibonacci 格点上无限延伸的符号。

    V2(i) ⇔ ∃(i;j1,j2)∈T, V2(j1) ∧ V1(j2)
    V1(i) ⇔ ∃(i,j)∈D, V2(j)
    取最大不动点，删去涉及不可行符号的三元组与二元组，并重新编号。幂等。
    """
    k = spec.k
    v2, v1 = set(range(k)), set(range(k))
    while True:
        n2 = {i for i, j1, j2 in spec.triples if j1 in v2 and j2 in v1}
        n1 = {i for i, j in spec.pairs if j in v2}
        if n2 == v2 and n1 == v1:
            break
        v2, v1 = n2, n1

    survivors = sorted(v2 | v1)
    removed = tuple(spec.alphabet[i] for i in range(k) if i not in v2 | v1)
    if not survivors:
        logger.warning(f"Empty shift: every symbol of {spec.alphabet} was pruned")
        raise EmptyShift(spec.removed + removed)

    if removed:
        logger.info(f"Viability pruning removed symbols: {', '.join(removed)}")

    remap = {old: new for new, old in enumerate(survivors)}
    triples = frozenset(
        (remap[i], remap[j1], remap[j2])
        for i, j1, j2 in spec.triples
        if i in v2 and j1 in v2 and j2 in v1
    )
    pairs = frozenset(
        (remap[i], remap[j]) for i, j in spec.pairs if i in v1 and j in v2
    )
    pruned = MarkovFibSpec(
        alphabet=tuple(spec.alphabet[i] for i in survivors),
        triples=triples,
        pairs=pairs,
        provenance=spec.provenance,
        removed=spec.removed + removed,
        pruned=True,
    )
    return pruned, PruneReport(removed=removed)


def _ensure_pruned(spec: MarkovFibSpec) -> MarkovFibSpec:
    if spec.pruned:
        return spec
    return viability_prune(spec)[0]


# =========================================================================
# 构造器 (Constructors)
# =========================================================================


def raw_spec(
    alphabet: Sequence[str],
    triples: Set[Triple] | frozenset,
    provenance: Optional[Provenance] = None,
) -> MarkovFibSpec:
    """由下标三元组构造未剪枝的规格，D 由 T 投影得到"""
    k = len(alphabet)
    triples = frozenset(triples)
    pairs = derive_degree1(triples, full_binary_viable(triples, k))
    return MarkovFibSpec(
        alphabet=tuple(alphabet),
        triples=triples,
        pairs=pairs,
        provenance=provenance or Provenance(kind="raw", alphabet=tuple(alphabet)),
    )


def spec_from_triples(
    alphabet: Sequence[str],
    triples: Sequence[Sequence[str]],
    kind: str = "raw",
) -> MarkovFibSpec:
    """由标签三元组 [parent, child1, child2] 构造并剪枝"""
    index: Dict[str, int] = {label: i for i, label in enumerate(alphabet)}
    try:
        idx = {(index[p], index[c1], index[c2]) for p, c1, c2 in triples}
    except KeyError as e:
        raise BadMatrix(f"triple label {e.args[0]!r} is not in the alphabet") from e
    spec = raw_spec(alphabet, idx, Provenance(kind=kind, alphabet=tuple(alphabet)))
    return viability_prune(spec)[0]


def _as_binary_matrix(m, k: int, name: str) -> np.ndarray:
    arr = np.asarray(m)
    if arr.ndim != 2 or arr.shape != (k, k):
        raise BadMatrix(f"{name} has shape {arr.shape}, expected ({k}, {k})")
    if not np.isin(arr, (0, 1)).all():
        raise BadMatrix(f"{name} entries must be 0 or 1")
    return arr.astype(np.int64)


def spec_from_vertex_matrices(alphabet: Sequence[str], A1, A2) -> MarkovFibSpec:
    """
    顶点树移位：T = {(i; j1, j2) : A1(i,j1) = 1 且 A2(i,j2) = 1}，随后剪枝。
    """
    k = len(alphabet)
    a1 = _as_binary_matrix(A1, k, "A1")
    a2 = _as_binary_matrix(A2, k, "A2")

    triples = {
        (i, j1, j2)
        for i in range(k)
        for j1 in np.flatnonzero(a1[i]).tolist()
        for j2 in np.flatnonzero(a2[i]).tolist()
    }
    provenance = Provenance(
        kind="vertex",
        alphabet=tuple(alphabet),
        a1=tuple(tuple(int(x) for x in row) for row in a1),
        a2=tuple(tuple(int(x) for x in row) for row in a2),
    )
    return viability_prune(raw_spec(alphabet, triples, provenance))[0]


def golden_mean_spec() -> MarkovFibSpec:
    """A1 = A2 = [[1,1],[1,0]]，熵为 ln g 的回归样例"""
    golden = [[1, 1], [1, 0]]
    return spec_from_vertex_matrices(["1", "2"], golden, golden)


def full_spec(k: int = 2) -> MarkovFibSpec:
    ones = np.ones((k, k), dtype=np.int64)
    return spec_from_vertex_matrices([str(i + 1) for i in range(k)], ones, ones)


def identity_spec(k: int = 2) -> MarkovFibSpec:
    eye = np.eye(k, dtype=np.int64)
    return spec_from_vertex_matrices([str(i + 1) for i in range(k)], eye, eye)


# =========================================================================
# γ 递推 (Nonlinear recursion)
# =========================================================================


def iter_gamma(
    spec: MarkovFibSpec, saturate: Optional[int] = None
) -> Iterator[Tuple[List[int], List[int]]]:
    """
    逐高度产出 (γ_Eps[·][n], γ_Two[·][n])，n = 1, 2, ...

    saturate 给定时每个值截断为 min(γ, saturate)；截断到 2 仍能精确区分 0 / 1 / >=2。

    γ_Eps[i][n] = Σ_{(i;j1,j2)∈T} γ_Eps[j1][n-1] · γ_Two[j2][n-1]
    γ_Two[i][n] = Σ_{(i,j)∈D} γ_Eps[j][n-1]
    """
    spec = _ensure_pruned(spec)
    k = spec.k
    by_parent2: List[List[Pair]] = [[] for _ in range(k)]
    for i, j1, j2 in spec.sorted_triples():
        by_parent2[i].append((j1, j2))
    by_parent1: List[List[int]] = [[] for _ in range(k)]
    for i, j in spec.sorted_pairs():
        by_parent1[i].append(j)

    eps, two = [1] * k, [1] * k
    while True:
        yield eps, two
        eps, two = (
            [sum(eps[j1] * two[j2] for j1, j2 in by_parent2[i]) for i in range(k)],
            [sum(eps[j] for j in by_parent1[i]) for i in range(k)],
        )
        if saturate is not None:
            eps = [min(x, saturate) for x in eps]
            two = [min(x, saturate) for x in two]


def gamma_sequence(spec: MarkovFibSpec, N: int) -> GammaTable:
    """高度 1..N 的精确计数表 (两种根类型)"""
    if N < 1:
        raise ValueError(f"max height must be >= 1, got {N}")
    spec = _ensure_pruned(spec)

    eps_cols, two_cols = [], []
    for n, (eps, two) in enumerate(iter_gamma(spec), start=1):
        eps_cols.append(eps)
        two_cols.append(two)
        if n == N:
            break

    return GammaTable(
        alphabet=spec.alphabet,
        height=N,
        eps=tuple(tuple(col[i] for col in eps_cols) for i in range(spec.k)),
        two=tuple(tuple(col[i] for col in two_cols) for i in range(spec.k)),
    )


def recurrence_coefficients(spec: MarkovFibSpec) -> np.ndarray:
    """c[i, j1, j3] = |{j2 : (i; j1, j2) ∈ T 且 (j2, j3) ∈ D}|"""
    spec = _ensure_pruned(spec)
    k = spec.k
    succ: List[List[int]] = [[] for _ in range(k)]
    for j2, j3 in spec.pairs:
        succ[j2].append(j3)

    c = np.zeros((k, k, k), dtype=np.int64)
    for i, j1, j2 in spec.triples:
        for j3 in succ[j2]:
            c[i, j1, j3] += 1
    return c


def gamma_two_step(spec: MarkovFibSpec, N: int) -> List[Tuple[int, ...]]:
    """
    用递推表示 γ_{i;n} = Σ c[i,j1,j3] γ_{j1;n-1} γ_{j3;n-2} 计算 ε 型计数 (n = 1..N)。
    前两层取自 gamma_sequence，之后只用系数张量。
    """
    spec = _ensure_pruned(spec)
    k = spec.k
    c = recurrence_coefficients(spec)
    terms = [
        [(j1, j3, int(c[i, j1, j3])) for j1 in range(k) for j3 in range(k) if c[i, j1, j3]]
        for i in range(k)
    ]

    head = gamma_sequence(spec, min(N, 2))
    cols = [head.column(n) for n in range(1, min(N, 2) + 1)]
    while len(cols) < N:
        prev, prev2 = cols[-1], cols[-2]
        cols.append(
            tuple(sum(m * prev[j1] * prev2[j3] for j1, j3, m in terms[i]) for i in range(k))
        )
    return cols
