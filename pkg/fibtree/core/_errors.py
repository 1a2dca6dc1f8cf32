"""
异常体系

所有异常都继承 FibTreeError，并携带结构化字段。InputError / ResourceCap 两个分类基类
供 CLI 映射退出码（2 = 输入错误，4 = 资源上限）。
"""

from typing import Optional, Sequence, Tuple


class FibTreeError(Exception):
    """fibtree 所有异常的根类"""


class InputError(FibTreeError):
    """输入不合法：CLI 退出码 2"""


class ResourceCap(FibTreeError):
    """超出配置的计算上限：CLI 退出码 4"""


# =========================================================================
# fib_lattice
# =========================================================================
class InvalidLetter(InputError):
    def __init__(self, letter: str, word: str):
        self.letter = letter
        self.word = word
        super().__init__(f"letter {letter!r} in word {word!r} is not one of '1', '2'")


class InvalidRootColor(InputError):
    def __init__(self, color: int, k: int):
        self.color = color
        self.k = k
        super().__init__(f"root color {color} is outside the alphabet of size {k}")


class DepthCap(ResourceCap):
    def __init__(self, requested: int, cap: int):
        self.requested = requested
        self.cap = cap
        super().__init__(f"height {requested} exceeds the depth cap {cap}")


class WorkCap(ResourceCap):
    def __init__(self, candidates: int, cap: int):
        self.candidates = candidates
        self.cap = cap
        super().__init__(
            f"naive enumeration needs {candidates} candidates, work cap is {cap}"
        )


# =========================================================================
# shift_core
# =========================================================================
class BadMatrix(InputError):
    def __init__(self, reason: str):
        self.reason = reason
        super().__init__(f"bad constraint matrix: {reason}")


class EmptyShift(InputError):
    def __init__(self, removed: Sequence[str] = ()):
        self.removed = tuple(removed)
        super().__init__(
            f"no symbol survives viability pruning (removed: {', '.join(self.removed) or '-'})"
        )


# =========================================================================
# entropy
# =========================================================================
class EnumerationCap(ResourceCap):
    def __init__(self, count: int, cap: int):
        self.count = count
        self.cap = cap
        super().__init__(
            f"{count} simple subsystems exceed the enumeration cap {cap}; "
            "raise FIBTREE_MAX_SUBSYSTEMS to enumerate them all"
        )


class NonConvergence(ResourceCap):
    def __init__(self, lower: float, upper: float, iterations: int):
        self.lower = lower
        self.upper = upper
        self.iterations = iterations
        super().__init__(
            f"power iteration did not converge after {iterations} steps, "
            f"last bracket [{lower!r}, {upper!r}]"
        )


class DegenerateLogs(InputError):
    def __init__(self, height: int):
        self.height = height
        super().__init__(f"all gamma values at height {height} are <= 1, logs undefined")


# =========================================================================
# cnn
# =========================================================================
class OnBoundary(InputError):
    def __init__(self, line: str, gap: float):
        self.line = line
        self.gap = gap
        super().__init__(f"parameters lie on boundary line {line} (gap {gap:.3g})")


class RouteDisagreement(FibTreeError):
    def __init__(self, formula: float, machinery: float, template: Optional[Tuple] = None):
        self.formula = formula
        self.machinery = machinery
        self.template = template
        super().__init__(
            f"entropy routes disagree for {template}: formula {formula!r}, machinery {machinery!r}"
        )


# =========================================================================
# cli
# =========================================================================
class SpecDocumentError(InputError):
    def __init__(self, message: str, location: str = ""):
        self.location = location
        prefix = f"{location}: " if location else ""
        super().__init__(f"{prefix}{message}")
