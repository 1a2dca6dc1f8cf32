"""
熵的计算：essential 符号分类、简单子系统枚举、邻接矩阵与谱半径。

h(X) = max over simple subsystems of ln ρ(M)，inessential 符号对应的行列删去。
"""

import itertools
import math
from typing import List, Optional, Tuple

import networkx as nx
import numpy as np

from ..configs import env_config
from ..schemas import EntropyResult, MarkovFibSpec, SimpleSubsystem, SymbolClassification
from ..utils import logger
from ._errors import BadMatrix, DegenerateLogs, EnumerationCap, NonConvergence
from ._shift_core import _ensure_pruned, gamma_sequence, iter_gamma, recurrence_coefficients

GOLDEN = (1 + math.sqrt(5)) / 2
LN_GOLDEN = math.log(GOLDEN)


# =========================================================================
# 符号分类 (Essential / Inessential)
# =========================================================================


def classify_symbols(spec: MarkovFibSpec) -> SymbolClassification:
    """
    S_n = {i : γ_Eps[i][n] = 1} 随 n 单调不增；连续三层相同即稳定，稳定集合为 inessential。
    """
    spec = _ensure_pruned(spec)

    history: List[frozenset] = []
    for n, (eps, _) in enumerate(iter_gamma(spec, saturate=2), start=1):
        history.append(frozenset(i for i, g in enumerate(eps) if g == 1))
        if n >= 3 and history[-1] == history[-2] == history[-3]:
            break

    stable = history[-1]
    result = SymbolClassification(
        alphabet=spec.alphabet,
        essential=tuple(i for i in range(spec.k) if i not in stable),
        inessential=tuple(sorted(stable)),
        dead=spec.removed,
        stable_height=len(history),
    )
    logger.debug(
        f"Classified {spec.k} symbols at height {result.stable_height}: "
        f"{len(result.essential)} essential, {len(result.inessential)} inessential"
    )
    return result


# =========================================================================
# 简单子系统 (Simple subsystems)
# =========================================================================


def _candidate_pairs(
    coeffs: np.ndarray, i: int, essential: frozenset
) -> List[Tuple[int, int]]:
    """
    符号 i 的候选 (j1, j3)：系数为正且两者都是 essential 的项；
    若不存在，则取 essential 成员最多的那些项。
    """
    k = coeffs.shape[0]
    positive = [(j1, j3) for j1 in range(k) for j3 in range(k) if coeffs[i, j1, j3] > 0]
    if not positive:
        return []
    score = {pair: (pair[0] in essential) + (pair[1] in essential) for pair in positive}
    best = max(score.values())
    return [pair for pair in positive if score[pair] == best]


def enumerate_simple_subsystems(
    spec: MarkovFibSpec,
    classification: Optional[SymbolClassification] = None,
    max_subsystems: Optional[int] = None,
) -> List[SimpleSubsystem]:
    """按确定顺序列出全部简单子系统；没有 essential 符号时返回空列表"""
    spec = _ensure_pruned(spec)
    classification = classification or classify_symbols(spec)
    essential = classification.essential
    if not essential:
        return []

    coeffs = recurrence_coefficients(spec)
    ess_set = frozenset(essential)
    candidates = [_candidate_pairs(coeffs, i, ess_set) for i in essential]

    count = math.prod(len(c) for c in candidates)
    cap = max_subsystems if max_subsystems is not None else env_config.max_subsystems
    if count > cap:
        logger.warning(f"{count} simple subsystems exceed the enumeration cap {cap}")
        raise EnumerationCap(count, cap)

    logger.debug(f"Enumerating {count} simple subsystems over {len(essential)} symbols")
    return [
        SimpleSubsystem(symbols=essential, choice=combo)
        for combo in itertools.product(*candidates)
    ]


def adjacency_matrix(subsystem: SimpleSubsystem, k: Optional[int] = None) -> np.ndarray:
    """
    θ_n = M θ_{n-1}，θ_n = (ln γ_{1;n}, ln γ_{1;n-1}, ln γ_{2;n}, ln γ_{2;n-1}, ...)。

    不在 subsystem.symbols 中的 (inessential) 符号其 ln γ = 0，对应列直接省略。
    """
    size = len(subsystem.symbols)
    if k is not None and k != size:
        raise ValueError(f"subsystem has {size} essential symbols, got k'={k}")

    pos = {sym: idx for idx, sym in enumerate(subsystem.symbols)}
    M = np.zeros((2 * size, 2 * size), dtype=np.int64)
    for idx, (j1, j3) in enumerate(subsystem.choice):
        if j1 in pos:
            M[2 * idx, 2 * pos[j1]] += 1
        if j3 in pos:
            M[2 * idx, 2 * pos[j3] + 1] += 1
        M[2 * idx + 1, 2 * idx] = 1
    return M


# =========================================================================
# 谱半径 (Spectral radius)
# =========================================================================


def _shifted_power_iteration(block: np.ndarray, tol: float, max_iter: int) -> float:
    """
    不可约非负矩阵 B 的谱半径：对 B + I (本原) 做幂迭代，最大范数归一化。
    以 Collatz–Wielandt 区间 [min (Ax)_i/x_i, max (Ax)_i/x_i] 的宽度判断收敛，
    返回夹在区间内的 Rayleigh 商。
    """
    shifted = block + np.eye(block.shape[0])
    x = np.ones(block.shape[0])
    lower = upper = 0.0
    for _ in range(max_iter):
        y = shifted @ x
        ratios = y / x
        lower, upper = float(ratios.min()), float(ratios.max())
        if upper - lower <= tol:
            rayleigh = float(x @ y) / float(x @ x)
            return min(max(rayleigh, lower), upper) - 1.0
        x = y / y.max()

    raise NonConvergence(lower - 1.0, upper - 1.0, max_iter)


def spectral_radius(
    M,
    tol: Optional[float] = None,
    max_iter: Optional[int] = None,
) -> float:
    """
    非负方阵的谱半径。先按强连通分量分块 (ρ(M) 等于各对角块谱半径的最大值)，
    每个不可约块用平移幂迭代求 Perron 根。零矩阵返回 0。
    """
    A = np.asarray(M, dtype=float)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise BadMatrix(f"spectral radius needs a square matrix, got shape {A.shape}")
    if (A < 0).any():
        raise BadMatrix("spectral radius is only defined here for nonnegative matrices")
    if A.shape[0] == 0:
        return 0.0

    tol = tol if tol is not None else env_config.spectral_tol
    max_iter = max_iter if max_iter is not None else env_config.spectral_max_iter

    graph = nx.from_numpy_array(A, create_using=nx.DiGraph)
    rho = 0.0
    for component in nx.strongly_connected_components(graph):
        idx = sorted(component)
        if len(idx) == 1:
            # 平凡分量：只有自环时贡献其权重
            rho = max(rho, float(A[idx[0], idx[0]]))
            continue
        block = A[np.ix_(idx, idx)]
        rho = max(rho, _shifted_power_iteration(block, tol, max_iter))
    return rho


def perron_vector_check(M, g: float = GOLDEN) -> float:
    """
    v 在当前层坐标取 g、在移位坐标取 1，返回 max |(M v - g v)_i|。
    每行恰好一个 n-1 项和一个 n-2 项时该值为 0 (g² = g + 1)。
    """
    A = np.asarray(M, dtype=float)
    v = np.ones(A.shape[0])
    v[0::2] = g
    return float(np.abs(A @ v - g * v).max()) if A.size else 0.0


# =========================================================================
# 熵 (Entropy)
# =========================================================================


def evaluate_subsystems(
    spec: MarkovFibSpec,
    classification: Optional[SymbolClassification] = None,
    max_subsystems: Optional[int] = None,
) -> List[Tuple[SimpleSubsystem, float]]:
    """每个简单子系统及其邻接矩阵的谱半径，按枚举顺序"""
    spec = _ensure_pruned(spec)
    classification = classification or classify_symbols(spec)
    subsystems = enumerate_simple_subsystems(spec, classification, max_subsystems)
    return [(sub, spectral_radius(adjacency_matrix(sub))) for sub in subsystems]


def entropy(spec: MarkovFibSpec, max_subsystems: Optional[int] = None) -> EntropyResult:
    """
    拓扑熵 (自然对数单位)。没有 essential 符号时为 0；否则取所有简单子系统
    ln ρ(M) 的最大值，并以枚举顺序中第一个达到最大值的子系统为见证。
    """
    spec = _ensure_pruned(spec)
    classification = classify_symbols(spec)
    if not classification.essential:
        return EntropyResult(
            value=0.0, witness=None, spectral_radius=1.0, classification=classification
        )

    evaluations = evaluate_subsystems(spec, classification, max_subsystems)
    witness, best = evaluations[0]
    for sub, rho in evaluations[1:]:
        # 容差内的并列保留先出现者
        if rho > best + 1e-12:
            witness, best = sub, rho

    return EntropyResult(
        value=math.log(max(best, 1.0)),
        witness=witness,
        spectral_radius=best,
        classification=classification,
        subsystem_count=len(evaluations),
    )


def entropy_empirical(spec: MarkovFibSpec, n: int) -> Tuple[float, float]:
    """
    有限高度的两个估计量：(ln ln γ_n / n, ln Σ_i ln γ_{i;n} / n)，γ_n = Σ_i γ_{i;n}。
    """
    if n < 3:
        raise ValueError(f"empirical entropy needs n >= 3, got {n}")
    spec = _ensure_pruned(spec)
    column = gamma_sequence(spec, n).column(n)
    if all(g <= 1 for g in column):
        raise DegenerateLogs(n)

    total = sum(column)
    log_sum = sum(math.log(g) for g in column if g >= 1)
    return math.log(math.log(total)) / n, math.log(log_sum) / n
