"""
fibtree：Fibonacci-Cayley 树上有限型树移位的精确计数、拓扑熵计算，以及树上细胞神经网络参数空间的熵分类。
"""

__version__ = "0.1.0"
