"""
共享 fixture：回归用的三种 k = 2 约束、两个 4x4 邻接矩阵，以及写约束文件的工具。
"""

import json

import numpy as np
import pytest

from fibtree.core import full_spec, golden_mean_spec, identity_spec

GOLDEN_MATRIX = [[1, 1], [1, 0]]


@pytest.fixture
def golden():
    return golden_mean_spec()


@pytest.fixture
def full2():
    return full_spec(2)


@pytest.fixture
def identity2():
    return identity_spec(2)


@pytest.fixture
def shift_block_matrix():
    """子系统 {1 -> (1, 1), 2 -> (1, 2)} 的邻接矩阵"""
    return np.array([[1, 1, 0, 0], [1, 0, 0, 0], [1, 0, 0, 1], [0, 0, 1, 0]])


@pytest.fixture
def shared_parent_matrix():
    """子系统 {1 -> (1, 1), 2 -> (1, 1)} 的邻接矩阵"""
    return np.array([[1, 1, 0, 0], [1, 0, 0, 0], [1, 1, 0, 0], [0, 0, 1, 0]])


@pytest.fixture
def write_spec(tmp_path):
    """把 dict 写成 JSON 约束文件，返回路径"""

    def _write(doc, name="spec.json"):
        path = tmp_path / name
        path.write_text(json.dumps(doc), encoding="utf-8")
        return path

    return _write


@pytest.fixture
def golden_doc():
    return {"alphabet": ["1", "2"], "A1": GOLDEN_MATRIX, "A2": GOLDEN_MATRIX}
