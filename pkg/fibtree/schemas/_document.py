import hashlib
import json
from typing import Any, Dict, List, Optional

from pydantic import BaseModel, ConfigDict, Field, model_validator

from ._spec import MarkovFibSpec


class SpecDocument(BaseModel):
    """
    约束文件 (JSON)：

        {"alphabet": ["1", "2"], "A1": [[1, 1], [1, 0]], "A2": [[1, 1], [1, 0]]}
        {"alphabet": ["a", "b"], "triples": [["a", "a", "b"], ["b", "a", "a"]]}

    A1/A2 与 triples 二选一；metadata 为可选的字符串字典。
    """

    model_config = ConfigDict(populate_by_name=True, extra="forbid")

    alphabet: List[str] = Field(..., min_length=1)
    A1: Optional[List[List[int]]] = None
    A2: Optional[List[List[int]]] = None
    triples: Optional[List[List[str]]] = None
    metadata: Dict[str, str] = Field(default_factory=dict)

    @model_validator(mode="after")
    def check_form(self) -> "SpecDocument":
        if len(set(self.alphabet)) != len(self.alphabet):
            raise ValueError("alphabet labels must be unique")

        has_matrices = self.A1 is not None or self.A2 is not None
        if has_matrices == (self.triples is not None):
            raise ValueError("give exactly one of {A1 + A2} or {triples}")

        k = len(self.alphabet)
        if has_matrices:
            for name, m in (("A1", self.A1), ("A2", self.A2)):
                if m is None:
                    raise ValueError(f"{name} is missing (A1 and A2 come together)")
                if len(m) != k or any(len(row) != k for row in m):
                    raise ValueError(f"{name} must be {k}x{k} to match the alphabet")
                if any(x not in (0, 1) for row in m for x in row):
                    raise ValueError(f"{name} entries must be 0 or 1")
        else:
            labels = set(self.alphabet)
            for t in self.triples:
                if len(t) != 3:
                    raise ValueError(f"triple {t} must be [parent, child1, child2]")
                unknown = [s for s in t if s not in labels]
                if unknown:
                    raise ValueError(f"triple {t} uses labels outside the alphabet: {unknown}")
        return self

    @property
    def is_vertex(self) -> bool:
        return self.A1 is not None

    def canonical(self) -> Dict[str, Any]:
        """规范化内容：三元组排序去重，矩阵原样保留"""
        doc: Dict[str, Any] = {"alphabet": list(self.alphabet)}
        if self.is_vertex:
            doc["A1"] = self.A1
            doc["A2"] = self.A2
        else:
            doc["triples"] = sorted({tuple(t) for t in self.triples})
        if self.metadata:
            doc["metadata"] = dict(sorted(self.metadata.items()))
        return doc

    def digest(self) -> str:
        raw_str = json.dumps(self.canonical(), sort_keys=True, ensure_ascii=False)
        return hashlib.md5(raw_str.encode()).hexdigest()

    @classmethod
    def from_spec(cls, spec: MarkovFibSpec) -> "SpecDocument":
        """
        由内部约束写回文档。顶点矩阵来源写回原始矩阵 (重新解析后剪枝结果一致)，
        其余来源写剪枝后的三元组。
        """
        prov = spec.provenance
        if prov.kind == "vertex" and prov.a1 is not None:
            return cls(
                alphabet=list(prov.alphabet),
                A1=[list(r) for r in prov.a1],
                A2=[list(r) for r in prov.a2],
            )
        return cls(
            alphabet=list(spec.alphabet),
            triples=[list(t) for t in spec.labelled_triples()],
        )


class RunReport(BaseModel):
    """
    CLI 报告。除 wall_time 外，同样的输入必须产生字节级相同的输出。
    """

    command: str
    spec_digest: Optional[str] = None
    results: Dict[str, Any] = Field(default_factory=dict)
    version: str
    wall_time: float = 0.0
