from enum import Enum
from typing import Dict, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field, model_validator


class SymbolClass(str, Enum):
    DEAD = "dead"  # 被可行性剪枝删除
    INESSENTIAL = "inessential"  # 所有高度 γ = 1
    ESSENTIAL = "essential"  # 某个高度 γ >= 2


class SymbolClassification(BaseModel):
    """
    符号分类。essential / inessential 为剪枝后字母表的下标，dead 为被删除的标签。
    """

    model_config = ConfigDict(frozen=True)

    alphabet: Tuple[str, ...]
    essential: Tuple[int, ...] = ()
    inessential: Tuple[int, ...] = ()
    dead: Tuple[str, ...] = ()
    # S_n 连续三次不变时的高度
    stable_height: int = 0

    @model_validator(mode="after")
    def check_partition(self) -> "SymbolClassification":
        seen = set(self.essential) | set(self.inessential)
        if len(seen) != len(self.essential) + len(self.inessential) or seen != set(
            range(len(self.alphabet))
        ):
            raise ValueError("essential and inessential must partition the alphabet")
        return self

    def classes(self) -> Dict[str, SymbolClass]:
        """标签 -> 类别，按字母表顺序，被删除的符号排在最后"""
        out: Dict[str, SymbolClass] = {}
        for i, label in enumerate(self.alphabet):
            out[label] = (
                SymbolClass.ESSENTIAL if i in self.essential else SymbolClass.INESSENTIAL
            )
        for label in self.dead:
            out[label] = SymbolClass.DEAD
        return out


class SimpleSubsystem(BaseModel):
    """
    简单递推子系统：每个 essential 符号 i 只保留一项 γ_{i;n} = γ_{j1;n-1} · γ_{j3;n-2}。
    symbols 同时给出邻接矩阵中的坐标顺序。
    """

    model_config = ConfigDict(frozen=True)

    symbols: Tuple[int, ...]
    choice: Tuple[Tuple[int, int], ...]

    @model_validator(mode="after")
    def one_choice_per_symbol(self) -> "SimpleSubsystem":
        if len(self.symbols) != len(self.choice):
            raise ValueError("exactly one (j1, j3) choice per essential symbol")
        return self

    def describe(self, alphabet: Tuple[str, ...]) -> str:
        return ", ".join(
            f"{alphabet[i]} -> ({alphabet[j1]}, {alphabet[j3]})"
            for i, (j1, j3) in zip(self.symbols, self.choice, strict=True)
        )


class EntropyResult(BaseModel):
    model_config = ConfigDict(frozen=True)

    # 自然对数单位
    value: float = Field(..., ge=0.0)
    witness: Optional[SimpleSubsystem] = None
    spectral_radius: float
    classification: SymbolClassification
    subsystem_count: int = 0
