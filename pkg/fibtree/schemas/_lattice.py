from enum import Enum
from typing import List, Tuple

from pydantic import BaseModel, ConfigDict, Field

# 节点地址：{1, 2} 上的有限词，空串表示根 ε
NodeWord = str


class RootType(str, Enum):
    """n-block 的两种支撑形状"""

    EPSILON = "eps"  # 根有两个孩子 (方向 1 与方向 2)
    TWO_ROOTED = "two"  # 根的地址以 2 结尾，只有方向 1 的孩子

    @property
    def context(self) -> str:
        """把相对地址还原成绝对地址时需要在前面补的字母"""
        return "2" if self is RootType.TWO_ROOTED else ""


class LatticeSlice(BaseModel):
    """
    Fibonacci 格点的有限截断：以根为原点的相对地址集合，按 (长度, 字典序) 排序。
    """

    model_config = ConfigDict(frozen=True)

    root_type: RootType
    height: int = Field(..., ge=1)
    nodes: Tuple[NodeWord, ...]

    def __len__(self) -> int:
        return len(self.nodes)

    def __contains__(self, word: object) -> bool:
        return word in set(self.nodes)

    def levels(self) -> List[List[NodeWord]]:
        """按深度分组的节点"""
        grouped: List[List[NodeWord]] = [[] for _ in range(self.height)]
        for w in self.nodes:
            grouped[len(w)].append(w)
        return grouped

    def absolute(self, word: NodeWord) -> str:
        """补上根的上下文字母后的绝对地址"""
        return self.root_type.context + word
