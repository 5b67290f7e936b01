"""自由概率变换演算：矩序列、变换、卷积."""

from src.free.models import CumulantKind, CumulantSeq, MomentSeq, TransformError

__all__ = ["CumulantKind", "CumulantSeq", "MomentSeq", "TransformError"]
