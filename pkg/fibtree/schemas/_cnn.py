import math
from typing import FrozenSet, List, Literal, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

Sign = Literal[1, -1]
ChildPair = Tuple[int, int]

# V^2 的固定顺序
V2: Tuple[ChildPair, ...] = ((1, 1), (1, -1), (-1, 1), (-1, -1))


def sign_str(s: int) -> str:
    return "+" if s > 0 else "-"


class CnnTemplate(BaseModel):
    """最近邻 CNN 模板：自反馈 a，孩子反馈 a1 / a2，阈值 z"""

    model_config = ConfigDict(frozen=True)

    a: float
    a1: float
    a2: float
    z: float

    @field_validator("a", "a1", "a2", "z")
    @classmethod
    def finite(cls, v: float) -> float:
        if not math.isfinite(v):
            raise ValueError("template parameters must be finite")
        return v

    def as_tuple(self) -> Tuple[float, float, float, float]:
        return (self.a, self.a1, self.a2, self.z)


class LocalPattern(BaseModel):
    """局部图样 (u_ε; u_1, u_2)"""

    model_config = ConfigDict(frozen=True)

    parent: Sign
    child1: Sign
    child2: Sign

    @property
    def children(self) -> ChildPair:
        return (self.child1, self.child2)

    def __str__(self) -> str:
        return f"({sign_str(self.parent)}; {sign_str(self.child1)}, {sign_str(self.child2)})"


class RegionIndex(BaseModel):
    model_config = ConfigDict(frozen=True)

    p: int = Field(..., ge=0, le=4)
    q: int = Field(..., ge=0, le=4)

    def as_tuple(self) -> Tuple[int, int]:
        return (self.p, self.q)

    def __str__(self) -> str:
        return f"[{self.p}, {self.q}]"


class LocalPatternSet(BaseModel):
    model_config = ConfigDict(frozen=True)

    b_plus: FrozenSet[LocalPattern] = frozenset()
    b_minus: FrozenSet[LocalPattern] = frozenset()

    @model_validator(mode="after")
    def check_parents(self) -> "LocalPatternSet":
        if any(u.parent != 1 for u in self.b_plus):
            raise ValueError("B_plus may only hold patterns with parent +1")
        if any(u.parent != -1 for u in self.b_minus):
            raise ValueError("B_minus may only hold patterns with parent -1")
        return self

    @classmethod
    def from_children(cls, plus: FrozenSet[ChildPair], minus: FrozenSet[ChildPair]):
        return cls(
            b_plus=frozenset(LocalPattern(parent=1, child1=c1, child2=c2) for c1, c2 in plus),
            b_minus=frozenset(
                LocalPattern(parent=-1, child1=c1, child2=c2) for c1, c2 in minus
            ),
        )

    @property
    def plus_children(self) -> FrozenSet[ChildPair]:
        """B̃₊：父节点为 + 的孩子对投影"""
        return frozenset(u.children for u in self.b_plus)

    @property
    def minus_children(self) -> FrozenSet[ChildPair]:
        return frozenset(u.children for u in self.b_minus)

    @property
    def region(self) -> RegionIndex:
        return RegionIndex(p=len(self.b_plus), q=len(self.b_minus))

    def patterns(self) -> List[LocalPattern]:
        """按 V^2 的固定顺序列出，+ 父节点在前"""
        order = {v: i for i, v in enumerate(V2)}
        plus = sorted(self.b_plus, key=lambda u: order[u.children])
        minus = sorted(self.b_minus, key=lambda u: order[u.children])
        return plus + minus

    def triples(self) -> FrozenSet[Tuple[int, int, int]]:
        return frozenset((u.parent, u.child1, u.child2) for u in self.b_plus | self.b_minus)


class SeparationWitness(BaseModel):
    """分离泛函 g(v) = c1·v1 + c2·v2 + offset"""

    model_config = ConfigDict(frozen=True)

    c1: float
    c2: float
    offset: float


class Realizability(BaseModel):
    model_config = ConfigDict(frozen=True)

    realizable: bool
    condition: Optional[Literal["Inv1", "Inv2"]] = None


class Degree1Discrepancy(BaseModel):
    """度为 1 的节点上限制语义与内禀不等式的比较结果"""

    model_config = ConfigDict(frozen=True)

    parent: Sign
    child: Sign
    restriction: bool
    intrinsic: bool


class PhaseDiagramRow(BaseModel):
    model_config = ConfigDict(frozen=True)

    a: float
    z: float
    p: int
    q: int
    entropy: float
    critical_distance: float


class SkippedCell(BaseModel):
    model_config = ConfigDict(frozen=True)

    a: float
    z: float
    line: str


class PhaseDiagram(BaseModel):
    a1: float
    a2: float
    rows: List[PhaseDiagramRow] = Field(default_factory=list)
    skipped: List[SkippedCell] = Field(default_factory=list)

    def regions(self) -> List[Tuple[int, int]]:
        return sorted({(r.p, r.q) for r in self.rows})
