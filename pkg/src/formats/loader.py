"""
Surface and tilting spec files (JSON, ``"format": 1``).

    {"format": 1,
     "surface": {"acc": 1},
     "fountains": [{"acc": 0, "base": "p0:0", "left_from": 2, "right_to": -2}],
     "extra_arcs": []}

Surface files carry only ``format`` and ``surface``; a tilting file is also a
valid surface file.
"""
import json
import logging
from typing import Any, Dict, Union

from src.errors import ArgumentError, SchemaError
from src.formats.library import EXAMPLES
from src.formats.schema import check_document
from src.surface.model import SurfaceSpec, check_point, parse_arc, parse_point
from src.tilting.spec import FountainSpec, TiltingSpec
from src.utils.file_manager import get_file_manager

logger = logging.getLogger(__name__)


def _read(source: Union[str, Dict[str, Any]]) -> Dict[str, Any]:
    if isinstance(source, dict):
        return source
    text = get_file_manager().read_text(source)
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise SchemaError(f"not valid JSON: {e.msg} (line {e.lineno})")


def _surface(data: Dict[str, Any]) -> SurfaceSpec:
    try:
        return SurfaceSpec(data["surface"]["acc"])
    except ArgumentError as e:
        raise SchemaError(str(e), "$.surface.acc")


def surface_from_dict(data: Dict[str, Any]) -> SurfaceSpec:
    group = "tilting" if isinstance(data, dict) and "fountains" in data else "surface"
    return _surface(check_document(data, group))


def tilting_from_dict(data: Dict[str, Any]) -> TiltingSpec:
    """
    Build a TiltingSpec from a parsed document.

    Raises:
        SchemaError: shape errors, bad literals or out-of-range indices
    """
    doc = check_document(data, "tilting")
    surface = _surface(doc)

    fountains = []
    for i, f in enumerate(doc["fountains"]):
        path = f"$.fountains[{i}]"
        if not 0 <= f["acc"] < surface.r:
            raise SchemaError(f"accumulation point {f['acc']} does not exist (r={surface.r})", f"{path}.acc")
        try:
            base = parse_point(f["base"])
            check_point(surface, base)
        except ArgumentError as e:
            raise SchemaError(str(e), f"{path}.base")
        fountains.append(FountainSpec(f["acc"], base, f["left_from"], f["right_to"]))

    extras = []
    for i, text in enumerate(doc["extra_arcs"]):
        try:
            extras.append(parse_arc(surface, text))
        except ArgumentError as e:
            raise SchemaError(str(e), f"$.extra_arcs[{i}]")

    t = TiltingSpec(surface, tuple(fountains), tuple(extras))
    logger.debug("loaded tilting spec: r=%d, %d extra arc(s)", surface.r, len(extras))
    return t


def load_surface(source: Union[str, Dict[str, Any]]) -> SurfaceSpec:
    """
    Load a surface file, a tilting file or a built-in example name.

    Raises:
        SchemaError: malformed file
        FileNotFoundError: no such file
    """
    if isinstance(source, str) and source in EXAMPLES:
        return EXAMPLES[source]().surface
    return surface_from_dict(_read(source))


def load_tilting(source: Union[str, Dict[str, Any]]) -> TiltingSpec:
    """
    Load a tilting file or a built-in example name (``example1``, ``example3``).

    Raises:
        SchemaError: malformed file
        FileNotFoundError: no such file
    """
    if isinstance(source, str) and source in EXAMPLES:
        return EXAMPLES[source]()
    return tilting_from_dict(_read(source))
