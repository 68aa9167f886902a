"""
文件字段定义 - surface / tilting JSON 文件
字段名与嵌套结构固定，"format" 为版本号
"""
from typing import Any, Dict, List, Mapping

from src.errors import SchemaError

FORMAT_VERSION = 1

# type: "int" | "point" | "arc" | "object" | "list"; "items" describes list entries
FIELD_DEFINITIONS: Dict[str, Dict[str, Any]] = {
    "format": {
        "group": "header",
        "type": "int",
        "required": False,
        "message": "文件格式版本",
        "default": FORMAT_VERSION,
    },
    "surface": {
        "group": "surface",
        "type": "object",
        "required": True,
        "message": "曲面：累积点个数",
        "fields": {
            "acc": {"type": "int", "required": True, "message": "累积点个数 r (>= 1)"},
        },
    },
    "fountains": {
        "group": "tilting",
        "type": "list",
        "required": True,
        "message": "每个累积点一个 fountain",
        "items": {
            "acc": {"type": "int", "required": True, "message": "累积点编号"},
            "base": {"type": "point", "required": True, "message": "base 点，如 p0:0"},
            "left_from": {"type": "int", "required": True, "message": "左尾起点 j"},
            "right_to": {"type": "int", "required": True, "message": "右尾终点 j"},
        },
    },
    "extra_arcs": {
        "group": "tilting",
        "type": "list",
        "required": False,
        "message": "额外的普通弧，如 p0:0-p0:3",
        "items": "arc",
        "default": [],
    },
}

GROUP_ORDER = ["header", "surface", "tilting"]

GROUP_LABELS = {
    "header": "文件头",
    "surface": "曲面",
    "tilting": "cluster-tilting 数据",
}


def fields_of(group: str) -> List[str]:
    return [name for name, defn in FIELD_DEFINITIONS.items() if defn["group"] in GROUP_ORDER[: GROUP_ORDER.index(group) + 1]]


def _check_int(value: Any, path: str) -> int:
    # bool is an int subclass; reject it explicitly
    if isinstance(value, bool) or not isinstance(value, int):
        raise SchemaError(f"expected an integer, got {value!r}", path)
    return value


def _check_str(value: Any, path: str) -> str:
    if not isinstance(value, str):
        raise SchemaError(f"expected a string literal, got {value!r}", path)
    return value


def _check_fields(data: Any, fields: Mapping[str, Dict[str, Any]], path: str) -> None:
    if not isinstance(data, dict):
        raise SchemaError(f"expected an object, got {type(data).__name__}", path)
    for key in data:
        if key not in fields:
            raise SchemaError(f"unknown field {key!r}", f"{path}.{key}")
    for name, defn in fields.items():
        here = f"{path}.{name}"
        if name not in data:
            if defn.get("required"):
                raise SchemaError("missing required field", here)
            continue
        value = data[name]
        kind = defn["type"]
        if kind == "int":
            _check_int(value, here)
        elif kind in ("point", "arc"):
            _check_str(value, here)
        elif kind == "object":
            _check_fields(value, defn["fields"], here)
        elif kind == "list":
            if not isinstance(value, list):
                raise SchemaError(f"expected a list, got {type(value).__name__}", here)
            items = defn["items"]
            for i, item in enumerate(value):
                if isinstance(items, dict):
                    _check_fields(item, items, f"{here}[{i}]")
                else:
                    _check_str(item, f"{here}[{i}]")


def check_document(data: Any, group: str) -> Dict[str, Any]:
    """
    Check a parsed JSON document against the field table.

    Args:
        data: Parsed JSON
        group: "surface" for surface files, "tilting" for tilting files

    Returns:
        The document with defaults filled in

    Raises:
        SchemaError: shape mismatch, with the JSON path of the offending field
    """
    names = fields_of(group)
    _check_fields(data, {n: FIELD_DEFINITIONS[n] for n in names}, "$")
    version = data.get("format", FORMAT_VERSION)
    if version != FORMAT_VERSION:
        raise SchemaError(f"unsupported format version {version} (expected {FORMAT_VERSION})", "$.format")
    out = dict(data)
    for name in names:
        if name not in out and "default" in FIELD_DEFINITIONS[name]:
            out[name] = FIELD_DEFINITIONS[name]["default"]
    return out
