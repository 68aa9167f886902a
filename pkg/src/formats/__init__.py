"""
文件格式模块 - surface / tilting JSON 文件与内置示例
"""
from src.formats.schema import FIELD_DEFINITIONS, FORMAT_VERSION, GROUP_ORDER, GROUP_LABELS
from src.formats.library import EXAMPLES, named_arc, resolve_object
from src.formats.loader import load_surface, load_tilting

__all__ = [
    "FIELD_DEFINITIONS",
    "FORMAT_VERSION",
    "GROUP_ORDER",
    "GROUP_LABELS",
    "EXAMPLES",
    "named_arc",
    "resolve_object",
    "load_surface",
    "load_tilting",
]
