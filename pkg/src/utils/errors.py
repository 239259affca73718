#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
异常类型
Error Types
"""

from typing import Any, Optional


class SkeletalError(Exception):
    """工具包异常基类"""


class DimensionMismatchError(SkeletalError, ValueError):
    """点集维数不一致"""


class FormatError(SkeletalError, ValueError):
    """文本文件格式错误"""


class BudgetExceededError(SkeletalError, RuntimeError):
    """超出点数或节点预算"""

    def __init__(self, message: str, partial: Optional[Any] = None):
        """
        Args:
            message: 错误描述
            partial: 预算耗尽时的部分结果（不保证最优）
        """
        super().__init__(message)
        self.partial = partial
